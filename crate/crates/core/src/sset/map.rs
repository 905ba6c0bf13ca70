use std::collections::HashSet;
use std::hash::Hash;
use std::sync::Arc;

use super::{Built, Cell, FinSSet, Simplex};
use crate::error::{Error, Result};

/// A simplicial map, stored by the images of nondegenerate cells.
#[derive(Clone, Debug)]
pub struct SMap {
    src: Arc<FinSSet>,
    tgt: Arc<FinSSet>,
    images: Vec<Vec<Simplex>>,
}

impl PartialEq for SMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && (Arc::ptr_eq(&self.src, &other.src) || self.src == other.src)
            && (Arc::ptr_eq(&self.tgt, &other.tgt) || self.tgt == other.tgt)
    }
}

impl SMap {
    /// Build and check that faces are preserved on every cell.
    pub fn new(src: Arc<FinSSet>, tgt: Arc<FinSSet>, images: Vec<Vec<Simplex>>) -> Result<SMap> {
        let m = SMap::new_unchecked(src, tgt, images);
        m.check()?;
        Ok(m)
    }

    pub fn new_unchecked(src: Arc<FinSSet>, tgt: Arc<FinSSet>, mut images: Vec<Vec<Simplex>>) -> SMap {
        images.resize_with(src.trunc_dim() + 1, Vec::new);
        SMap { src, tgt, images }
    }

    /// Build from a function on all simplices given by keys of two
    /// normalized models.
    pub fn from_keys<K1, K2>(
        src: &Built<K1>,
        tgt: &Built<K2>,
        src_arc: Arc<FinSSet>,
        tgt_arc: Arc<FinSSet>,
        f: impl Fn(usize, &K1) -> K2,
    ) -> SMap
    where
        K1: Clone + Eq + Hash,
        K2: Clone + Eq + Hash,
    {
        let images = (0..=src.sset.trunc_dim())
            .map(|d| src.cell_keys[d].iter().map(|k| tgt.lookup(d, &f(d, k))).collect())
            .collect();
        SMap::new_unchecked(src_arc, tgt_arc, images)
    }

    pub fn identity(x: Arc<FinSSet>) -> SMap {
        let images = (0..=x.trunc_dim())
            .map(|d| x.cells(d).map(Simplex::nondegenerate).collect())
            .collect();
        SMap { src: x.clone(), tgt: x, images }
    }

    /// The map sending every simplex to the degenerate simplex on `v`.
    pub fn constant(src: Arc<FinSSet>, tgt: Arc<FinSSet>, v: Simplex) -> SMap {
        assert_eq!(v.dim(), 0);
        let images = (0..=src.trunc_dim())
            .map(|d| src.cells(d).map(|_| v.degenerate_by(&super::Mono::constant(d, 0))).collect())
            .collect();
        SMap { src, tgt, images }
    }

    pub fn src(&self) -> &Arc<FinSSet> {
        &self.src
    }

    pub fn tgt(&self) -> &Arc<FinSSet> {
        &self.tgt
    }

    pub fn image_of_cell(&self, c: Cell) -> Simplex {
        self.images[c.dim][c.idx]
    }

    pub fn images(&self) -> &[Vec<Simplex>] {
        &self.images
    }

    pub fn apply(&self, x: Simplex) -> Simplex {
        self.images[x.base().dim][x.base().idx].degenerate_by(&x.surjection())
    }

    pub fn check(&self) -> Result<()> {
        if self.src.trunc_dim() != self.tgt.trunc_dim() {
            return Err(Error::Truncation(self.src.trunc_dim(), self.tgt.trunc_dim()));
        }
        for d in 0..=self.src.trunc_dim() {
            if self.images[d].len() != self.src.num_cells(d) {
                return Err(Error::InvalidMap(format!("degree {d}: wrong number of images")));
            }
            for c in self.src.cells(d) {
                let y = self.images[d][c.idx];
                if y.dim() != d || self.tgt.cell_checked(y.base()).is_none() {
                    return Err(Error::InvalidMap(format!(
                        "image of {} is not a {d}-simplex of the target",
                        self.src.cell_name(c)
                    )));
                }
                let x = Simplex::nondegenerate(c);
                for i in (0..=d).filter(|_| d > 0) {
                    let lhs = self.apply(self.src.face(x, i));
                    let rhs = self.tgt.face(y, i);
                    if lhs != rhs {
                        return Err(Error::InvalidMap(format!(
                            "d_{i} not preserved on {}: {} vs {}",
                            self.src.cell_name(c),
                            self.tgt.expr(lhs),
                            self.tgt.expr(rhs)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SMap) -> SMap {
        let images = self
            .images
            .iter()
            .map(|v| v.iter().map(|&y| other.apply(y)).collect())
            .collect();
        SMap { src: self.src.clone(), tgt: other.tgt.clone(), images }
    }

    pub fn same_images(&self, other: &SMap) -> bool {
        self.images == other.images
    }

    /// Injective in every degree: nondegenerate cells go injectively to
    /// nondegenerate cells.
    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.images.iter().flatten().all(|y| !y.is_degenerate() && seen.insert(y.base()))
    }

    pub fn is_surjective(&self) -> bool {
        let hit: HashSet<Cell> =
            self.images.iter().flatten().filter(|y| !y.is_degenerate()).map(|y| y.base()).collect();
        self.tgt.all_cells().all(|c| hit.contains(&c))
    }

    pub fn is_iso(&self) -> bool {
        self.src.trunc_dim() == self.tgt.trunc_dim() && self.is_injective() && self.is_surjective()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<SMap> {
        if !self.is_iso() {
            return None;
        }
        let mut images: Vec<Vec<Simplex>> = (0..=self.tgt.trunc_dim())
            .map(|d| vec![Simplex::nondegenerate(Cell { dim: d, idx: 0 }); self.tgt.num_cells(d)])
            .collect();
        for c in self.src.all_cells() {
            let y = self.images[c.dim][c.idx].base();
            images[y.dim][y.idx] = Simplex::nondegenerate(c);
        }
        Some(SMap { src: self.tgt.clone(), tgt: self.src.clone(), images })
    }

    /// Restrict to new (shared) source/target objects with identical cells,
    /// e.g. after re-wrapping in another `Arc`.
    pub fn with_objects(&self, src: Arc<FinSSet>, tgt: Arc<FinSSet>) -> SMap {
        SMap { src, tgt, images: self.images.clone() }
    }

    /// Human-readable assignment table.
    pub fn table(&self) -> Vec<(String, String)> {
        self.src
            .all_cells()
            .map(|c| (self.src.cell_name(c).to_string(), self.tgt.expr(self.image_of_cell(c))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_composition() {
        let d2 = Arc::new(FinSSet::standard(2, 2));
        let id = SMap::identity(d2.clone());
        assert!(id.check().is_ok());
        assert!(id.is_iso());
        assert!(id.then(&id).same_images(&id));
        let pt = Arc::new(FinSSet::point(2));
        let c = SMap::constant(d2.clone(), pt.clone(), pt.vertex(0));
        assert!(c.check().is_ok());
        assert!(!c.is_injective());
        assert!(c.is_surjective());
    }

    #[test]
    fn face_violation_detected() {
        let d1 = Arc::new(FinSSet::standard(1, 1));
        let b = Arc::new(FinSSet::boundary(1, 1));
        // send the edge of Δ[1] into ∂Δ[1]: impossible, use a degenerate vertex
        let v0 = b.vertex(0);
        let images = vec![vec![b.vertex(0), b.vertex(1)], vec![v0.degeneracy(0)]];
        assert!(SMap::new(d1, b, images).is_err());
    }
}
