//! Problem files: a complex and a subgroup of `(Z/2)^m`, as JSON.
//!
//! ```json
//! {"m": 4, "facets": [[1,2],[2,3],[3,4],[1,4]], "group_generators": ["1111","1100"]}
//! ```
//!
//! Vertices are 1-indexed. In a generator string the `k`-th character
//! (from the left) is vertex `k`, and `'1'` means that coordinate is
//! negated.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::torus::{GroupElement, Subtorus};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default)]
    pub group_generators: Vec<String>,
}

/// A validated problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub file: ProblemFile,
    pub complex: SimplicialComplex,
    pub generators: Vec<GroupElement>,
    pub group: Subtorus,
}

impl Problem {
    pub fn new(complex: SimplicialComplex, generators: Vec<GroupElement>) -> Result<Problem> {
        let group = Subtorus::from_generators(complex.num_vertices(), &generators)?;
        let file = ProblemFile {
            m: complex.num_vertices(),
            facets: complex.facets().iter().map(|f| f.to_vec()).collect(),
            group_generators: generators.iter().map(|g| g.to_string()).collect(),
        };
        Ok(Problem {
            file,
            complex,
            generators,
            group,
        })
    }

    /// Facets reduced and sorted, generators kept in input order.
    pub fn canonical(&self) -> ProblemFile {
        ProblemFile {
            m: self.file.m,
            facets: self.complex.facets().iter().map(|f| f.to_vec()).collect(),
            group_generators: self.file.group_generators.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.canonical()).expect("problem files always serialize")
    }
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| Error::MalformedInput {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    validate(file)
}

pub fn validate(file: ProblemFile) -> Result<Problem> {
    let m = file.m;
    if !(1..=MAX_VERTICES).contains(&m) {
        return Err(Error::VertexCount(m).at("m"));
    }
    let mut facets = Vec::with_capacity(file.facets.len());
    for (k, facet) in file.facets.iter().enumerate() {
        let loc = || format!("facets[{k}]");
        let mut set = VertexSet::EMPTY;
        for &v in facet {
            if !(1..=m).contains(&v) {
                return Err(Error::VertexOutOfRange { vertex: v, m }.at(loc()));
            }
            if set.contains(v) {
                return Err(Error::MalformedInput {
                    location: loc(),
                    message: format!("vertex {v} repeated"),
                });
            }
            set = set.with(v);
        }
        facets.push(set);
    }
    let complex = SimplicialComplex::new(m, facets).map_err(|e| e.at("facets"))?;

    let mut generators = Vec::with_capacity(file.group_generators.len());
    for (k, text) in file.group_generators.iter().enumerate() {
        let loc = format!("group_generators[{k}]");
        let width = text.chars().count();
        if width != m {
            return Err(Error::WidthMismatch {
                expected: m,
                found: width,
            }
            .at(loc));
        }
        generators.push(GroupElement::parse(text).map_err(|e| e.at(loc))?);
    }
    let group = Subtorus::from_generators(m, &generators)?;
    Ok(Problem {
        file,
        complex,
        generators,
        group,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let p = parse_problem(r#"{"m":3, "facets":[[1,2],[2,3],[1,3]], "group_generators":["111"]}"#)
            .unwrap();
        assert_eq!(p.complex, SimplicialComplex::boundary_simplex(3));
        assert_eq!(p.group, Subtorus::diagonal(3).unwrap());

        let p = parse_problem(
            r#"{"m":4, "facets":[[1,2],[2,3],[3,4],[1,4]], "group_generators":["1111","1100"]}"#,
        )
        .unwrap();
        assert_eq!(p.group.rank(), 2);
        assert_eq!(p.complex.delta_number(), crate::ExtendedNat::Finite(1));
    }

    #[test]
    fn reports_locations() {
        let e = parse_problem(r#"{"m":3, "facets":[[1,2],[2,3],[1,3]], "group_generators":["11"]}"#)
            .unwrap_err();
        assert_eq!(e.root(), &Error::WidthMismatch { expected: 3, found: 2 });
        assert!(e.to_string().contains("group_generators[0]"));

        let e = parse_problem(r#"{"m":3, "facets":[[1,2]]}"#).unwrap_err();
        assert_eq!(e.root(), &Error::GhostVertex(3));

        let e = parse_problem(r#"{"m":3, "facets":[[1,2],[3,4]]}"#).unwrap_err();
        assert_eq!(e.root(), &Error::VertexOutOfRange { vertex: 4, m: 3 });
        assert!(e.to_string().contains("facets[1]"));

        let e = parse_problem("{\"m\":3,\n \"facets\": [[1,2],}").unwrap_err();
        match e {
            Error::MalformedInput { location, .. } => assert!(location.starts_with("line 2")),
            other => panic!("unexpected {other:?}"),
        }

        let e = parse_problem(r#"{"m":2, "facets":[[1],[2]], "extra": 1}"#).unwrap_err();
        assert!(matches!(e, Error::MalformedInput { .. }));
        let e = parse_problem(r#"{"m":2, "facets":[[1,1],[2]]}"#).unwrap_err();
        assert!(matches!(e, Error::MalformedInput { .. }));
        let e = parse_problem(r#"{"m":2, "facets":[[1],[2]], "group_generators":["1a"]}"#)
            .unwrap_err();
        assert!(matches!(e.root(), Error::MalformedInput { .. }));
    }

    proptest! {
        #[test]
        fn canonical_round_trip(
            m in 1usize..8,
            raw in prop::collection::vec(1u64..256, 1..6),
            gens in prop::collection::vec(0u64..256, 0..3),
        ) {
            let ground = VertexSet::full(m);
            let mut facets: Vec<_> =
                raw.iter().map(|b| VertexSet::from_bits(*b) & ground).collect();
            facets.extend((1..=m).map(VertexSet::singleton));
            let k = SimplicialComplex::new(m, facets).unwrap();
            let gens: Vec<_> = gens
                .iter()
                .map(|b| GroupElement::from_support(m, VertexSet::from_bits(*b) & ground).unwrap())
                .collect();
            let p = Problem::new(k, gens).unwrap();
            let text = p.to_json();
            let back = parse_problem(&text).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(back.to_json(), text);
        }
    }
}
