use crate::error::{Error, Result};
use crate::sset::search::{count, HomProblem, SearchOptions};
use crate::sset::ops::{pushout, Pushout};
use crate::sset::SMap;

use super::SimpSpace;

/// A map of simplicial spaces: one map per level.
#[derive(Clone, Debug)]
pub struct SSMap {
    pub src: SimpSpace,
    pub tgt: SimpSpace,
    pub levels: Vec<SMap>,
}

impl SSMap {
    pub fn new(src: SimpSpace, tgt: SimpSpace, levels: Vec<SMap>) -> Result<Self> {
        let m = SSMap::new_unchecked(src, tgt, levels);
        m.check()?;
        Ok(m)
    }

    pub fn new_unchecked(src: SimpSpace, tgt: SimpSpace, levels: Vec<SMap>) -> Self {
        SSMap { src, tgt, levels }
    }

    pub fn identity(x: &SimpSpace) -> Self {
        let levels = x.levels().iter().map(|l| SMap::identity(l.clone())).collect();
        SSMap { src: x.clone(), tgt: x.clone(), levels }
    }

    pub fn level(&self, m: usize) -> &SMap {
        &self.levels[m]
    }

    /// Levelwise maps that commute with every outer operator.
    pub fn check(&self) -> Result<()> {
        let mm = self.src.outer_dim();
        if self.tgt.outer_dim() != mm || self.levels.len() != mm + 1 {
            return Err(Error::InvalidMap("outer truncations differ".into()));
        }
        for (m, f) in self.levels.iter().enumerate() {
            f.check().map_err(|e| Error::InvalidMap(format!("level {m}: {e}")))?;
        }
        for m in 1..=mm {
            for i in 0..=m {
                let a = self.src.face(m, i).then(&self.levels[m - 1]);
                let b = self.levels[m].then(self.tgt.face(m, i));
                if !a.same_images(&b) {
                    return Err(Error::InvalidMap(format!("not natural for d_{i} on level {m}")));
                }
            }
        }
        for m in 0..mm {
            for j in 0..=m {
                let a = self.src.degeneracy(m, j).then(&self.levels[m + 1]);
                let b = self.levels[m].then(self.tgt.degeneracy(m, j));
                if !a.same_images(&b) {
                    return Err(Error::InvalidMap(format!("not natural for s_{j} on level {m}")));
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SSMap) -> SSMap {
        let levels = self.levels.iter().zip(&other.levels).map(|(a, b)| a.then(b)).collect();
        SSMap { src: self.src.clone(), tgt: other.tgt.clone(), levels }
    }

    pub fn is_iso(&self) -> bool {
        self.levels.iter().all(|l| l.is_iso())
    }
}

/// The search problem whose solutions are the maps `X -> Y` (over the
/// common outer truncation).
pub fn sspace_hom_problem(x: &SimpSpace, y: &SimpSpace) -> HomProblem {
    let mm = x.outer_dim().min(y.outer_dim());
    let mut p = HomProblem::new();
    for m in 0..=mm {
        let v = p.add_node(x.level(m).clone(), y.level(m).clone());
        // lower levels first: faces and degeneracies then prune each level above
        p.priority[v] = m as i64;
    }
    for m in 1..=mm {
        for i in 0..=m {
            p.add_edge(m, m - 1, x.face(m, i).clone(), y.face(m, i).clone());
        }
    }
    for m in 0..mm {
        for j in 0..=m {
            p.add_edge(m, m + 1, x.degeneracy(m, j).clone(), y.degeneracy(m, j).clone());
        }
    }
    p
}

/// `|Hom(X, Y)|`, or `None` if the budget ran out.
pub fn count_sspace_maps(x: &SimpSpace, y: &SimpSpace, budget: u64) -> Option<u64> {
    count(&sspace_hom_problem(x, y), SearchOptions { budget, iso: false })
}

/// A pushout of simplicial spaces with its two legs.
#[derive(Clone, Debug)]
pub struct SpacePushout {
    pub space: SimpSpace,
    pub i1: SSMap,
    pub i2: SSMap,
    levels: Vec<Pushout>,
}

impl SpacePushout {
    /// The map out of the pushout induced by a cocone.
    pub fn copair(&self, u1: &SSMap, u2: &SSMap) -> Result<SSMap> {
        let levels = self
            .levels
            .iter()
            .enumerate()
            .map(|(m, po)| po.copair(&u1.levels[m], &u2.levels[m]))
            .collect::<Result<Vec<_>>>()?;
        Ok(SSMap::new_unchecked(self.space.clone(), u1.tgt.clone(), levels))
    }
}

/// Levelwise pushout of `B <- A -> C`.
pub fn pushout_space(f: &SSMap, g: &SSMap) -> Result<SpacePushout> {
    let mm = f.src.outer_dim();
    let levels: Vec<Pushout> =
        (0..=mm).map(|m| pushout(&f.levels[m], &g.levels[m])).collect::<Result<_>>()?;
    let objs: Vec<_> = levels.iter().map(|p| p.obj.clone()).collect();
    let induced = |m: usize, to: usize, a: &SMap, b: &SMap| -> Result<SMap> {
        levels[m].copair(&a.then(&levels[to].i1), &b.then(&levels[to].i2))
    };
    let mut faces = vec![Vec::new()];
    for m in 1..=mm {
        faces.push(
            (0..=m)
                .map(|i| induced(m, m - 1, f.tgt.face(m, i), g.tgt.face(m, i)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let mut degens = Vec::new();
    for m in 0..mm {
        degens.push(
            (0..=m)
                .map(|j| induced(m, m + 1, f.tgt.degeneracy(m, j), g.tgt.degeneracy(m, j)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    degens.push(Vec::new());
    let space = SimpSpace::from_parts(objs, faces, degens)?;
    let i1 = SSMap::new_unchecked(f.tgt.clone(), space.clone(), levels.iter().map(|p| p.i1.clone()).collect());
    let i2 = SSMap::new_unchecked(g.tgt.clone(), space.clone(), levels.iter().map(|p| p.i2.clone()).collect());
    Ok(SpacePushout { space, i1, i2, levels })
}
