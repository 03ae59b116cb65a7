pub mod collapse;
pub mod complex;
pub mod error;
pub mod exhaustive;
pub mod gf2;
pub mod invariants;
pub mod oracle;
pub mod problem;
pub mod report;
pub mod torus;
pub mod vertex_set;

pub use complex::{Relabeling, SimplicialComplex};
pub use error::{Error, Result};
pub use vertex_set::{ExtendedNat, VertexSet, MAX_VERTICES};
pub use torus::{GroupElement, Subtorus};
pub use collapse::{CollapseCertificate, CollapseStep, FaceComplex, SearchOutcome};
