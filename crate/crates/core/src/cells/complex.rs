use crate::error::{Error, Result};
use crate::icat::{is_nerve_by_adjoint, nerve, nerve_built, nerve_map, unit_verdict, InternalCat, NerveVerdict};
use crate::sspace::{pushout_space, SSMap, SimpSpace};

use super::{attach, empty_category, AttachmentSpec};

/// A finite cell complex built by single attachments, kept on both sides:
/// the internal category and the simplicial space of iterated pushouts,
/// joined by the comparison `X -> N(C)`.
#[derive(Clone, Debug)]
pub struct CellComplex {
    pub cat: InternalCat,
    pub steps: Vec<AttachmentSpec>,
    pub space: SimpSpace,
    /// `X -> N(cat)`
    pub unit: SSMap,
}

impl CellComplex {
    pub fn empty(outer_dim: usize, trunc_dim: usize) -> CellComplex {
        CellComplex::from_category(empty_category(trunc_dim), outer_dim)
    }

    /// Start from `C` with `X = N(C)`.
    pub fn from_category(cat: InternalCat, outer_dim: usize) -> CellComplex {
        let space = nerve(&cat, outer_dim);
        let unit = SSMap::identity(&space);
        CellComplex { cat, steps: Vec::new(), space, unit }
    }

    pub fn outer_dim(&self) -> usize {
        self.space.outer_dim()
    }

    /// Attach a cell on both sides: `C ⊔_{K×[n]} L×[n]` and
    /// `X ⊔_{N(K×[n])} N(L×[n])`.
    pub fn attach(&mut self, spec: AttachmentSpec) -> Result<()> {
        let mm = self.outer_dim();
        let a = attach(&self.cat, &spec)?;
        let nc = nerve_built(&self.cat, mm);
        let nk = nerve_built(&a.k_cell, mm);
        let nl = nerve_built(&a.l_cell, mm);
        let nd = nerve_built(&a.cat, mm);
        let inv_levels = self
            .unit
            .levels
            .iter()
            .map(|f| f.inverse().ok_or_else(|| Error::Invalid("complex is not identified with a nerve".into())))
            .collect::<Result<Vec<_>>>()?;
        let inv = SSMap::new_unchecked(self.unit.tgt.clone(), self.space.clone(), inv_levels);
        let glue = nerve_map(&a.attaching, &nk, &nc).then(&inv);
        let po = pushout_space(&glue, &nerve_map(&a.cell_incl, &nk, &nl))?;
        let unit = po.copair(&self.unit.then(&nerve_map(&a.from_c, &nc, &nd)), &nerve_map(&a.from_cell, &nl, &nd))?;
        self.space = po.space.clone();
        self.unit = SSMap::new_unchecked(self.space.clone(), nd.space.clone(), unit.levels);
        self.cat = a.cat;
        self.steps.push(spec);
        Ok(())
    }

    /// The nerve test with `S` read off from the colimit structure.
    pub fn is_nerve(&self) -> NerveVerdict {
        unit_verdict(&self.unit, &self.cat)
    }
}

/// Is `X -> N(S(X))` an isomorphism, with `S` computed by presentation?
pub fn is_nerve(x: &SimpSpace, budget: u64) -> NerveVerdict {
    is_nerve_by_adjoint(x, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::random_complex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_complexes_are_nerves_both_ways() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let cx = random_complex(&mut rng, 3, 3, 1, 6).unwrap();
            assert!(matches!(cx.is_nerve(), NerveVerdict::Yes(_)));
            assert!(matches!(is_nerve(&cx.space, 100_000), NerveVerdict::Yes(_)));
        }
    }
}
