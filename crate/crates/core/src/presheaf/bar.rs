//! Two-sided bar constructions `B_q(F, C, G) = F ×_P Ar^{×_P q} ×_P G`.
//!
//! Faces are indexed from the `G` end: `d_0` lets the last arrow act on
//! the `G` coordinate and `d_q` lets the first arrow act on `F`. With
//! `G = Ar` the extra degeneracy appends an identity on the `G` side and
//! satisfies `d_0 ∘ s_{-1} = id`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::icat::InternalCat;
use crate::report::ValidationReport;
use crate::sset::{Built, FinSSet, SMap, Simplex};
use crate::sspace::{build_space, diagonal, BisimplicialModel, SimpSpace};

use super::{Presheaf, Variance};

struct BarModel<'a> {
    c: &'a InternalCat,
    f: &'a Presheaf,
    g: &'a Presheaf,
}

impl BarModel<'_> {
    /// Objects `a_0, …, a_q` of a key `[x, g_1, …, g_q, y]`.
    fn vertex(&self, k: &[Simplex], p: usize) -> Simplex {
        if p == 0 {
            self.f.projection.apply(k[0])
        } else {
            self.c.target(k[p])
        }
    }
}

impl BisimplicialModel for BarModel<'_> {
    type Key = Vec<Simplex>;

    fn keys(&self, m: usize, d: usize) -> Vec<Vec<Simplex>> {
        let mut by_src: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
        for g in self.c.ar.simplices(d) {
            by_src.entry(self.c.source(g)).or_default().push(g);
        }
        let mut by_base: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
        for y in self.g.carrier.simplices(d) {
            by_base.entry(self.g.projection.apply(y)).or_default().push(y);
        }
        let mut chains: Vec<(Vec<Simplex>, Simplex)> =
            self.f.carrier.simplices(d).into_iter().map(|x| (vec![x], self.f.projection.apply(x))).collect();
        for _ in 0..m {
            let mut next = Vec::new();
            for (k, end) in &chains {
                for &g in by_src.get(end).map(Vec::as_slice).unwrap_or(&[]) {
                    let mut k2 = k.clone();
                    k2.push(g);
                    next.push((k2, self.c.target(g)));
                }
            }
            chains = next;
        }
        let mut out = Vec::new();
        for (k, end) in chains {
            for &y in by_base.get(&end).map(Vec::as_slice).unwrap_or(&[]) {
                let mut k2 = k.clone();
                k2.push(y);
                out.push(k2);
            }
        }
        out
    }

    fn inner_face(&self, _m: usize, _d: usize, i: usize, k: &Vec<Simplex>) -> Vec<Simplex> {
        let last = k.len() - 1;
        k.iter()
            .enumerate()
            .map(|(p, &s)| {
                if p == 0 {
                    self.f.carrier.face(s, i)
                } else if p == last {
                    self.g.carrier.face(s, i)
                } else {
                    self.c.ar.face(s, i)
                }
            })
            .collect()
    }

    fn inner_degeneracy(&self, _m: usize, _d: usize, j: usize, k: &Vec<Simplex>) -> Vec<Simplex> {
        k.iter().map(|s| s.degeneracy(j)).collect()
    }

    fn outer_face(&self, m: usize, _d: usize, i: usize, k: &Vec<Simplex>) -> Vec<Simplex> {
        let p = m - i;
        let mut out = k.clone();
        if p == 0 {
            let x = self.f.act(k[0], k[1]).expect("composable bar chain");
            out.splice(0..=1, [x]);
        } else if p == m {
            let y = self.g.act(k[m + 1], k[m]).expect("composable bar chain");
            out.splice(m..=m + 1, [y]);
        } else {
            let h = self.c.compose(k[p], k[p + 1]).expect("composable bar chain");
            out.splice(p..=p + 1, [h]);
        }
        out
    }

    fn outer_degeneracy(&self, m: usize, _d: usize, j: usize, k: &Vec<Simplex>) -> Vec<Simplex> {
        let p = m - j;
        let mut out = k.clone();
        out.insert(p + 1, self.c.identity(self.vertex(k, p)));
        out
    }

    fn name(&self, _m: usize, k: &Vec<Simplex>) -> String {
        let last = k.len() - 1;
        k.iter()
            .enumerate()
            .map(|(p, &s)| {
                if p == 0 {
                    self.f.carrier.expr(s)
                } else if p == last {
                    self.g.carrier.expr(s)
                } else {
                    self.c.ar.expr(s)
                }
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// A bar construction with its keyed levels.
pub struct BarObject {
    pub space: SimpSpace,
    /// `G = Ar`: the resolution of `F`, with augmentation and extra
    /// degeneracy
    pub one_sided: bool,
    levels: Vec<Built<Vec<Simplex>>>,
    c: InternalCat,
    f: Presheaf,
}

/// `B(F, C, G)` up to outer level `outer_dim`; `F` must be a right module
/// and `G` a left module. Without `G` this is the one-sided resolution
/// with `G = Ar` acting by precomposition.
pub fn bar_resolution(c: &InternalCat, f: &Presheaf, g: Option<&Presheaf>, outer_dim: usize) -> Result<BarObject> {
    if f.variance != Variance::Right {
        return Err(Error::Precondition("the bar construction needs a right module on the left".into()));
    }
    let arrows;
    let g = match g {
        Some(g) => g,
        None => {
            arrows = Presheaf::arrows(c, Variance::Left)?;
            &arrows
        }
    };
    if g.variance != Variance::Left {
        return Err(Error::Precondition("the bar construction needs a left module on the right".into()));
    }
    let built = build_space(&BarModel { c, f, g }, outer_dim, c.trunc_dim());
    Ok(BarObject { space: built.space, one_sided: g.carrier == c.ar && g.projection == c.s, levels: built.levels, c: c.clone(), f: f.clone() })
}

impl BarObject {
    pub fn outer_dim(&self) -> usize {
        self.space.outer_dim()
    }

    /// The diagonal simplicial set.
    pub fn realization(&self) -> FinSSet {
        diagonal(&self.space)
    }

    fn require_one_sided(&self) -> Result<()> {
        if self.one_sided {
            Ok(())
        } else {
            Err(Error::Precondition("only the one-sided bar has an augmentation".into()))
        }
    }

    fn carrier_keys(&self) -> Built<Simplex> {
        Built::<Simplex>::identity(&self.f.carrier)
    }

    /// `ε : B_0 -> F`, `(x, h) ↦ x·h`.
    pub fn augmentation(&self) -> Result<SMap> {
        self.require_one_sided()?;
        let f = &self.f;
        Ok(SMap::from_keys(&self.levels[0], &self.carrier_keys(), self.space.level(0).clone(), f.carrier.clone(), |_, k| {
            f.act(k[0], k[1]).expect("composable")
        }))
    }

    /// `s_{-1} : F -> B_0`, `x ↦ (x, id)`.
    pub fn extra_degeneracy_base(&self) -> Result<SMap> {
        self.require_one_sided()?;
        let (c, f) = (&self.c, &self.f);
        Ok(SMap::from_keys(&self.carrier_keys(), &self.levels[0], f.carrier.clone(), self.space.level(0).clone(), |_, &x| {
            vec![x, c.identity(f.projection.apply(x))]
        }))
    }

    /// `s_{-1} : B_m -> B_{m+1}`, appending an identity on the free end.
    pub fn extra_degeneracy(&self, m: usize) -> Result<SMap> {
        self.require_one_sided()?;
        if m >= self.outer_dim() {
            return Err(Error::Precondition(format!("level {} is not built", m + 1)));
        }
        let c = &self.c;
        Ok(SMap::from_keys(
            &self.levels[m],
            &self.levels[m + 1],
            self.space.level(m).clone(),
            self.space.level(m + 1).clone(),
            |_, k| {
                let mut out = k.clone();
                out.push(c.identity(c.target(*k.last().unwrap())));
                out
            },
        ))
    }

    /// Every identity of an augmented simplicial object with extra
    /// degeneracy, as exact equalities of maps, at all built levels.
    pub fn check_extra_degeneracy(&self) -> Result<ValidationReport> {
        let mut rep = ValidationReport::default();
        let eps = self.augmentation()?;
        let s_base = self.extra_degeneracy_base()?;
        let id_f = SMap::identity(self.f.carrier.clone());
        let mut expect = |law: String, lhs: SMap, rhs: SMap| {
            if !lhs.same_images(&rhs) {
                rep.push(law, "", "maps differ");
            }
        };
        expect("ε s_{-1} = id".into(), s_base.then(&eps), id_f.clone());
        if self.outer_dim() >= 1 {
            let x = &self.space;
            expect("ε d_0 = ε d_1".into(), x.face(1, 0).then(&eps), x.face(1, 1).then(&eps));
        }
        let top = self.outer_dim();
        let extras: Vec<SMap> = (0..top).map(|m| self.extra_degeneracy(m)).collect::<Result<_>>()?;
        for m in 0..top {
            let s = &extras[m];
            let x = &self.space;
            expect(format!("d_0 s_{{-1}} = id on B_{m}"), s.then(x.face(m + 1, 0)), SMap::identity(x.level(m).clone()));
            if m == 0 {
                expect("d_1 s_{-1} = s_{-1} ε on B_0".into(), s.then(x.face(1, 1)), eps.then(&s_base));
            } else {
                for i in 0..=m {
                    expect(
                        format!("d_{} s_{{-1}} = s_{{-1}} d_{i} on B_{m}", i + 1),
                        s.then(x.face(m + 1, i + 1)),
                        x.face(m, i).then(&extras[m - 1]),
                    );
                }
            }
            if m + 2 <= top {
                expect(
                    format!("s_0 s_{{-1}} = s_{{-1}} s_{{-1}} on B_{m}"),
                    s.then(x.degeneracy(m + 1, 0)),
                    s.then(&extras[m + 1]),
                );
                for j in 0..=m {
                    expect(
                        format!("s_{} s_{{-1}} = s_{{-1}} s_{j} on B_{m}", j + 1),
                        s.then(x.degeneracy(m + 1, j + 1)),
                        x.degeneracy(m, j).then(&extras[m + 1]),
                    );
                }
            }
        }
        // the base case: s_{-1} on F followed by s_0
        if top >= 1 {
            expect("s_0 s_{-1} = s_{-1} s_{-1} on F".into(), s_base.then(self.space.degeneracy(0, 0)), s_base.then(&extras[0]));
        }
        Ok(rep)
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.space.levels().iter().map(|l| l.total_cells()).collect()
    }

    pub fn level(&self, m: usize) -> &Arc<FinSSet> {
        self.space.level(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icat::FinCat;
    use crate::sset::homology::{homology, AbGroup};
    use crate::sspace::validate_space;

    #[test]
    fn level_zero_is_elements_times_arrows() {
        let c = FinCat::chain(1).to_icat(2);
        let t = Presheaf::terminal(&c, Variance::Right).unwrap();
        let b = bar_resolution(&c, &t, None, 3).unwrap();
        // pairs (x, h) with s(h) = x: every arrow once
        assert_eq!(b.level(0).num_cells(0), c.ar.num_cells(0));
        assert!(validate_space(&b.space).is_valid());
        assert!(b.check_extra_degeneracy().unwrap().is_valid());
    }

    #[test]
    fn realization_of_terminal_resolution_is_contractible() {
        let c = FinCat::chain(1).to_icat(3);
        let t = Presheaf::terminal(&c, Variance::Right).unwrap();
        let b = bar_resolution(&c, &t, None, 3).unwrap();
        let h = homology(&b.realization(), 2).unwrap();
        // F = Ob([1]) is two points
        assert_eq!(h[0], AbGroup::free(2));
        assert!(h[1].is_zero() && h[2].is_zero());
    }
}
