use std::collections::HashSet;

use super::{FinSSet, Simplex};
#[cfg(test)]
use super::Cell;
use crate::report::ValidationReport;

fn well_formed(x: &FinSSet, s: &Simplex) -> bool {
    let base = s.base();
    if x.cell_checked(base).is_none() || base.dim > s.dim() {
        return false;
    }
    let mask = s.mask() as u32;
    mask >> s.dim() == 0 && mask.count_ones() as usize == s.dim() - base.dim
}

/// Check every structural invariant of a finite simplicial set.
///
/// References are checked first; the simplicial identities are only
/// evaluated once every face entry points at an existing cell.
pub fn validate(x: &FinSSet) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let mut names = HashSet::new();
    for c in x.all_cells() {
        let data = x.cell(c);
        if !names.insert(data.name.as_str()) {
            rep.push("unique ids", &data.name, "id used twice");
        }
        let expected = if c.dim == 0 { 0 } else { c.dim + 1 };
        if data.faces.len() != expected {
            rep.push(
                "face count",
                &data.name,
                format!("{} faces listed, expected {expected}", data.faces.len()),
            );
            continue;
        }
        for (i, f) in data.faces.iter().enumerate() {
            if f.dim() + 1 != c.dim {
                rep.push("face dimension", &data.name, format!("d_{i} has dimension {}", f.dim()));
            } else if !well_formed(x, f) {
                let b = f.base();
                rep.push(
                    "face reference",
                    &data.name,
                    format!("d_{i} references missing simplex (dim {}, index {})", b.dim, b.idx),
                );
            }
        }
    }
    if !rep.is_valid() {
        return rep;
    }
    for d in 2..=x.trunc_dim() {
        for c in x.cells(d) {
            let s = Simplex::nondegenerate(c);
            for j in 1..=d {
                for i in 0..j {
                    let lhs = x.face(x.face(s, j), i);
                    let rhs = x.face(x.face(s, i), j - 1);
                    if lhs != rhs {
                        rep.push(
                            format!("d_{i} d_{j} = d_{} d_{i}", j - 1),
                            x.cell_name(c),
                            format!("{} vs {}", x.expr(lhs), x.expr(rhs)),
                        );
                    }
                }
            }
        }
    }
    rep
}

/// Exhaustive check of all simplicial identities on every simplex of
/// dimension at most `top`, degenerate ones included.
pub fn check_identities_exhaustive(x: &FinSSet, top: usize) -> ValidationReport {
    let mut rep = ValidationReport::default();
    for d in 0..=top.min(x.trunc_dim()) {
        for s in x.simplices(d) {
            let name = x.expr(s);
            for j in 0..=d {
                for i in 0..j {
                    if d >= 2 && x.face(x.face(s, j), i) != x.face(x.face(s, i), j - 1) {
                        rep.push("d_i d_j = d_{j-1} d_i", &name, format!("i={i} j={j}"));
                    }
                }
            }
            if d < top.min(x.trunc_dim()) {
                for j in 0..=d {
                    let sj = s.degeneracy(j);
                    for i in 0..=d + 1 {
                        let lhs = x.face(sj, i);
                        let rhs = if i < j {
                            x.face(s, i).degeneracy(j - 1)
                        } else if i == j || i == j + 1 {
                            s
                        } else {
                            x.face(s, i - 1).degeneracy(j)
                        };
                        if lhs != rhs {
                            rep.push("face/degeneracy interchange", &name, format!("d_{i} s_{j}"));
                        }
                    }
                    for i in 0..=j {
                        if s.degeneracy(j).degeneracy(i) != s.degeneracy(i).degeneracy(j + 1) {
                            rep.push("s_i s_j = s_{j+1} s_i", &name, format!("i={i} j={j}"));
                        }
                    }
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::CellData;

    #[test]
    fn standard_objects_validate() {
        for n in 0..4 {
            assert!(validate(&FinSSet::standard(n, 4)).is_valid());
            assert!(validate(&FinSSet::boundary(n + 1, 3)).is_valid());
        }
        assert!(check_identities_exhaustive(&FinSSet::standard(2, 4), 4).is_valid());
    }

    #[test]
    fn missing_vertex_is_reported() {
        let v = |n: &str| CellData { name: n.into(), faces: vec![] };
        let bogus = Simplex::raw(0, Cell { dim: 0, idx: 7 }, 0);
        let a = Simplex::nondegenerate(Cell { dim: 0, idx: 0 });
        let cells = vec![vec![v("a")], vec![CellData { name: "e".into(), faces: vec![bogus, a] }]];
        let x = FinSSet::from_cells_unchecked(1, None, cells);
        let rep = validate(&x);
        assert!(!rep.is_valid());
        assert_eq!(rep.violations[0].law, "face reference");
        assert_eq!(rep.violations[0].witness, "e");
    }
}
