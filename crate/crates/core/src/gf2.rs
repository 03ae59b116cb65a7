//! Rank of sparse GF(2) matrices by column reduction.
//!
//! Columns are lists of row indices. Small matrices are packed into `u64`
//! words and reduced densely; large ones are reduced as sorted index lists
//! so memory stays proportional to the fill. Both pivot on the lowest row
//! index, so elimination order is deterministic.

/// Dense path is used while `rows * cols` stays under this many bits.
const DENSE_LIMIT_BITS: usize = 1 << 28;

/// Rank over GF(2) of the `nrows × columns.len()` matrix whose column `c`
/// has ones at `columns[c]`. Repeated row indices cancel in pairs.
pub fn rank(nrows: usize, columns: &[Vec<usize>]) -> usize {
    if nrows.saturating_mul(columns.len()) <= DENSE_LIMIT_BITS {
        rank_packed(nrows, columns)
    } else {
        rank_sparse(nrows, columns)
    }
}

pub fn rank_packed(nrows: usize, columns: &[Vec<usize>]) -> usize {
    let words = nrows.div_ceil(64);
    // pivot_of[row] = index into `reduced` of the column whose lowest bit is `row`
    let mut pivot_of: Vec<Option<usize>> = vec![None; nrows];
    let mut reduced: Vec<Vec<u64>> = Vec::new();
    for col in columns {
        let mut v = vec![0u64; words];
        for &r in col {
            v[r / 64] ^= 1 << (r % 64);
        }
        while let Some(low) = lowest_bit(&v) {
            match pivot_of[low] {
                Some(p) => {
                    for (a, b) in v.iter_mut().zip(&reduced[p]) {
                        *a ^= *b;
                    }
                }
                None => {
                    pivot_of[low] = Some(reduced.len());
                    reduced.push(v);
                    break;
                }
            }
        }
    }
    reduced.len()
}

fn lowest_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

pub fn rank_sparse(nrows: usize, columns: &[Vec<usize>]) -> usize {
    let mut pivot_of: Vec<Option<usize>> = vec![None; nrows];
    let mut reduced: Vec<Vec<usize>> = Vec::new();
    for col in columns {
        let mut v = col.clone();
        v.sort_unstable();
        v = cancel_pairs(v);
        while let Some(&low) = v.first() {
            match pivot_of[low] {
                Some(p) => v = symmetric_difference(&v, &reduced[p]),
                None => {
                    pivot_of[low] = Some(reduced.len());
                    reduced.push(v);
                    break;
                }
            }
        }
    }
    reduced.len()
}

fn cancel_pairs(sorted: Vec<usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(sorted.len());
    for r in sorted {
        if out.last() == Some(&r) {
            out.pop();
        } else {
            out.push(r);
        }
    }
    out
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
