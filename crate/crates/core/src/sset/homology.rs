//! Integral homology of the normalized chain complex.

use serde::Serialize;

use super::{FinSSet, Simplex};
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^rank ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbGroup {
    pub rank: usize,
    /// elementary divisors greater than one, ascending, each dividing the next
    pub torsion: Vec<u64>,
}

impl AbGroup {
    pub fn zero() -> Self {
        AbGroup { rank: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        AbGroup { rank, torsion: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Matrix of the normalized boundary `C_d -> C_{d-1}`, rows indexed by
/// `(d-1)`-cells, columns by `d`-cells.
pub fn boundary_matrix(x: &FinSSet, d: usize) -> Vec<Vec<i64>> {
    let rows = if d == 0 { 0 } else { x.num_cells(d - 1) };
    let mut m = vec![vec![0i64; x.num_cells(d)]; rows];
    if d == 0 {
        return m;
    }
    for c in x.cells(d) {
        let s = Simplex::nondegenerate(c);
        for i in 0..=d {
            let f = x.face(s, i);
            if !f.is_degenerate() {
                m[f.base().idx][c.idx] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    m
}

/// Diagonal of the Smith normal form: the nonzero invariant factors.
pub fn smith_diagonal(m: &[Vec<i64>]) -> Vec<u64> {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for i in t..rows {
                        a[i][j] -= q * a[i][t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if !dirty {
                // enforce divisibility of the remaining block
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest remainder into the pivot
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].unsigned_abs() as u64);
        t += 1;
    }
    diag
}

/// `H_0 … H_top` of the normalized chain complex.
pub fn homology(x: &FinSSet, top: usize) -> Result<Vec<AbGroup>> {
    if x.is_empty() {
        return Ok(vec![AbGroup::zero(); top + 1]);
    }
    if top + 1 > x.trunc_dim() {
        return Err(Error::Precondition(format!(
            "homology up to degree {top} needs truncation at least {}, have {}",
            top + 1,
            x.trunc_dim()
        )));
    }
    let diags: Vec<Vec<u64>> = (0..=top + 1).map(|d| smith_diagonal(&boundary_matrix(x, d))).collect();
    Ok((0..=top)
        .map(|n| {
            let rank_out = diags[n].len();
            let rank_in = diags[n + 1].len();
            let rank = x.num_cells(n) - rank_out - rank_in;
            let torsion = diags[n + 1].iter().copied().filter(|&v| v > 1).collect();
            AbGroup { rank, torsion }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(smith_diagonal(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_diagonal(&[vec![2, 4], vec![4, 8]]), vec![2]);
        assert!(smith_diagonal(&[vec![0, 0]]).is_empty());
    }

    #[test]
    fn circle_and_disk() {
        let b = FinSSet::boundary(2, 2);
        assert_eq!(homology(&b, 1).unwrap(), vec![AbGroup::free(1), AbGroup::free(1)]);
        let d = FinSSet::standard(2, 2);
        assert_eq!(homology(&d, 1).unwrap(), vec![AbGroup::free(1), AbGroup::zero()]);
        assert!(homology(&d, 2).is_err());
    }
}
