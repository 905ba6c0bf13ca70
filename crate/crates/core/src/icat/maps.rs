use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sset::kan::{kan_fibration_probe, kan_probe, HornWitness, ProbeResult};
use crate::sset::search::{search, HomProblem, SearchOptions, SearchStatus};
use crate::sset::{build, simplex_map, FinSSet, Mono, SMap, Simplex, SimplicialModel};
use crate::sspace::{homotopy_cartesian_probe, segal_square};

use super::{discrete, nerve, product_built, BuiltCat, InternalCat};

/// A map of internal categories, on objects and on arrows.
#[derive(Clone, Debug, PartialEq)]
pub struct ICatMap {
    pub ob: SMap,
    pub ar: SMap,
}

impl ICatMap {
    pub fn identity(c: &InternalCat) -> ICatMap {
        ICatMap { ob: SMap::identity(c.ob.clone()), ar: SMap::identity(c.ar.clone()) }
    }

    /// `other ∘ self`
    pub fn then(&self, other: &ICatMap) -> ICatMap {
        ICatMap { ob: self.ob.then(&other.ob), ar: self.ar.then(&other.ar) }
    }

    /// Check that every structure square commutes.
    pub fn check(&self, c: &InternalCat, d: &InternalCat) -> Result<()> {
        self.ob.check()?;
        self.ar.check()?;
        let bad = |what: &str| Err(Error::InvalidMap(format!("does not commute with {what}")));
        if !c.s.then(&self.ob).same_images(&self.ar.then(&d.s)) {
            return bad("source");
        }
        if !c.t.then(&self.ob).same_images(&self.ar.then(&d.t)) {
            return bad("target");
        }
        if !c.e.then(&self.ar).same_images(&self.ob.then(&d.e)) {
            return bad("unit");
        }
        for p in c.pairs.obj.all_cells() {
            let ps = Simplex::nondegenerate(p);
            let (f, g) = c.pairs.split(ps);
            let lhs = self.ar.apply(c.m.apply(ps));
            if d.compose(self.ar.apply(f), self.ar.apply(g)) != Some(lhs) {
                return bad("composition");
            }
        }
        Ok(())
    }

    pub fn is_iso(&self) -> bool {
        self.ob.is_iso() && self.ar.is_iso()
    }
}

/// Search problem for internal functors `C -> D`; node 0 is objects,
/// node 1 arrows, node 2 composable pairs.
pub fn icat_hom_problem(c: &InternalCat, d: &InternalCat) -> HomProblem {
    let mut p = HomProblem::new();
    let ob = p.add_node(c.ob.clone(), d.ob.clone());
    let ar = p.add_node(c.ar.clone(), d.ar.clone());
    let pr = p.add_node(c.pairs.obj.clone(), d.pairs.obj.clone());
    p.priority = vec![0, 1, 2];
    p.add_edge(ar, ob, c.s.clone(), d.s.clone());
    p.add_edge(ar, ob, c.t.clone(), d.t.clone());
    p.add_edge(ob, ar, c.e.clone(), d.e.clone());
    p.add_edge(pr, ar, c.pairs.p1.clone(), d.pairs.p1.clone());
    p.add_edge(pr, ar, c.pairs.p2.clone(), d.pairs.p2.clone());
    p.add_edge(pr, ar, c.m.clone(), d.m.clone());
    p
}

fn enumerate(c: &InternalCat, d: &InternalCat, budget: u64, mut visit: impl FnMut(ICatMap)) -> bool {
    let p = icat_hom_problem(c, d);
    let status = search(&p, SearchOptions { budget, iso: false }, |a| {
        visit(ICatMap {
            ob: SMap::new_unchecked(c.ob.clone(), d.ob.clone(), a[0].clone()),
            ar: SMap::new_unchecked(c.ar.clone(), d.ar.clone(), a[1].clone()),
        });
        true
    });
    status != SearchStatus::Exhausted
}

/// All internal functors; `None` on budget exhaustion.
pub fn all_icat_maps(c: &InternalCat, d: &InternalCat, budget: u64) -> Option<Vec<ICatMap>> {
    let mut out = Vec::new();
    enumerate(c, d, budget, |m| out.push(m)).then_some(out)
}

pub fn count_icat_maps(c: &InternalCat, d: &InternalCat, budget: u64) -> Option<u64> {
    let mut n = 0;
    enumerate(c, d, budget, |_| n += 1).then_some(n)
}

/// `Map(C, D)` truncated at `k`, with a flag for budget exhaustion.
#[derive(Clone, Debug)]
pub struct MappingSpace {
    pub space: FinSSet,
    /// true if some level was cut short by the budget
    pub partial: bool,
}

type MapKey = (Vec<Vec<Simplex>>, Vec<Vec<Simplex>>);

struct MapModel {
    levels: Vec<Vec<MapKey>>,
    /// `faces[n][i] : C × Δ[n-1] -> C × Δ[n]`
    faces: Vec<Vec<ICatMap>>,
    /// `degens[n][j] : C × Δ[n+1] -> C × Δ[n]`
    degens: Vec<Vec<ICatMap>>,
    tgt: InternalCat,
    /// products `C × Δ[n]`
    sources: Vec<InternalCat>,
}

impl MapModel {
    fn precompose(&self, pre: &ICatMap, to_level: usize, key: &MapKey) -> MapKey {
        let src = &self.sources[to_level];
        let f = ICatMap {
            ob: SMap::new_unchecked(src.ob.clone(), self.tgt.ob.clone(), key.0.clone()),
            ar: SMap::new_unchecked(src.ar.clone(), self.tgt.ar.clone(), key.1.clone()),
        };
        let g = pre.then(&f);
        (g.ob.images().to_vec(), g.ar.images().to_vec())
    }
}

impl SimplicialModel for MapModel {
    type Key = MapKey;
    fn simplices(&self, d: usize) -> Vec<MapKey> {
        self.levels[d].clone()
    }
    fn face(&self, d: usize, i: usize, k: &MapKey) -> MapKey {
        self.precompose(&self.faces[d][i], d, k)
    }
    fn degeneracy(&self, d: usize, j: usize, k: &MapKey) -> MapKey {
        self.precompose(&self.degens[d][j], d, k)
    }
    fn name(&self, k: &MapKey) -> String {
        let ob: Vec<String> = k.0.iter().flatten().map(|&s| self.tgt.ob.expr(s)).collect();
        let ar: Vec<String> = k.1.iter().flatten().map(|&s| self.tgt.ar.expr(s)).collect();
        format!("[{}|{}]", ob.join(","), ar.join(","))
    }
}

type ProdCat = BuiltCat<(Simplex, Simplex), (Simplex, Simplex)>;

/// `C × θ : C × Δ[m] -> C × Δ[n]`.
fn times_operator(a: &ProdCat, b: &ProdCat, theta: &Mono, n: usize) -> ICatMap {
    let th = simplex_map(theta, n, a.cat.trunc_dim());
    let ob = SMap::from_keys(&a.ob_keys, &b.ob_keys, a.cat.ob.clone(), b.cat.ob.clone(), |_, k| (k.0, th.apply(k.1)));
    let ar = SMap::from_keys(&a.ar_keys, &b.ar_keys, a.cat.ar.clone(), b.cat.ar.clone(), |_, k| (k.0, th.apply(k.1)));
    ICatMap { ob, ar }
}

/// `Map(C, D)_n = Hom(C × Δ[n], D)` for `n ≤ k`, operators by
/// precomposition.
pub fn icat_mapping_space(c: &InternalCat, d: &InternalCat, k: usize, budget: u64) -> Result<MappingSpace> {
    if k > crate::sset::MAX_DIM {
        return Err(Error::Precondition("truncation too large".into()));
    }
    let dd = c.trunc_dim();
    let prods: Vec<ProdCat> = (0..=k)
        .into_par_iter()
        .map(|n| product_built(c, &discrete(Arc::new(FinSSet::standard(n, dd)))))
        .collect();
    let results: Vec<(Vec<MapKey>, bool)> = prods
        .par_iter()
        .map(|src| {
            let mut keys = Vec::new();
            let complete =
                enumerate(&src.cat, d, budget, |m| keys.push((m.ob.images().to_vec(), m.ar.images().to_vec())));
            (keys, !complete)
        })
        .collect();
    let partial = results.iter().any(|r| r.1);
    let levels: Vec<Vec<MapKey>> = results.into_iter().map(|r| r.0).collect();
    let faces = (0..=k)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n).map(|i| times_operator(&prods[n - 1], &prods[n], &Mono::coface(n, i), n)).collect()
        })
        .collect();
    let degens = (0..=k)
        .map(|n| {
            if n == k {
                return Vec::new();
            }
            (0..=n).map(|j| times_operator(&prods[n + 1], &prods[n], &Mono::codegeneracy(n, j), n)).collect()
        })
        .collect();
    let model = MapModel {
        levels,
        faces,
        degens,
        tgt: d.clone(),
        sources: prods.iter().map(|p| p.cat.clone()).collect(),
    };
    Ok(MappingSpace { space: build(&model, k).sset, partial })
}

/// Outcome of the strongly-Segal probe.
#[derive(Clone, Debug, Serialize)]
pub struct StronglySegalReport {
    pub pass: bool,
    pub probe_dim: usize,
    /// first failing check, with its horn
    pub failure: Option<(String, HornWitness)>,
    /// verdicts of the Segal squares of the nerve, when probed
    pub segal_squares: Vec<String>,
}

/// Kan-probe `Ob`, and the fibration probe on `s` and `t`; on success also
/// probe the Segal squares of the nerve.
pub fn strongly_segal_check(c: &InternalCat, probe_dim: usize, hom_bound: usize, budget: u64) -> Result<StronglySegalReport> {
    let n = probe_dim.min(c.trunc_dim());
    let checks: [(&str, ProbeResult); 3] = [
        ("Ob", kan_probe(&c.ob, n)),
        ("s", kan_fibration_probe(&c.s, n)),
        ("t", kan_fibration_probe(&c.t, n)),
    ];
    for (name, r) in checks {
        if let ProbeResult::Fail(w) = r {
            return Ok(StronglySegalReport { pass: false, probe_dim: n, failure: Some((name.into(), w)), segal_squares: vec![] });
        }
    }
    let outer = 3;
    let x = nerve(c, outer);
    let mut verdicts = Vec::new();
    let mut pass = true;
    for m in 1..outer {
        let sq = segal_square(&x, m)?;
        let p = homotopy_cartesian_probe(&sq, n, hom_bound, budget)?;
        if !p.certificate.as_ref().is_some_and(|c| c.is_proof()) {
            pass = false;
        }
        verdicts.push(format!("n={m}: {}", p.verdict()));
    }
    Ok(StronglySegalReport { pass, probe_dim: n, failure: None, segal_squares: verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icat::{interval_monoid, FinCat};
    use crate::sset::search::DEFAULT_BUDGET;

    #[test]
    fn functors_between_intervals() {
        let c = FinCat::chain(1).to_icat(1);
        assert_eq!(count_icat_maps(&c, &c, DEFAULT_BUDGET), Some(3));
        let ms = icat_mapping_space(&c, &c, 1, DEFAULT_BUDGET).unwrap();
        assert!(!ms.partial);
        assert_eq!(ms.space.num_cells(0), 3);
        // Δ[1] enters through the inner direction, where [1] is constant
        assert_eq!(ms.space.num_cells(1), 0);
    }

    #[test]
    fn maps_from_a_point() {
        let pt = FinCat::chain(0).to_icat(1);
        let d = FinCat::chaotic(3).to_icat(1);
        let ms = icat_mapping_space(&pt, &d, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(ms.space.num_cells(0), d.ob.num_cells(0));
    }

    #[test]
    fn product_law_on_counts() {
        let c = FinCat::chain(1).to_icat(1);
        let d1 = FinCat::chain(2).to_icat(1);
        let d2 = FinCat::chaotic(2).to_icat(1);
        let prod = crate::icat::product(&d1, &d2);
        let a = icat_mapping_space(&c, &prod, 1, DEFAULT_BUDGET).unwrap().space;
        let b1 = icat_mapping_space(&c, &d1, 1, DEFAULT_BUDGET).unwrap().space;
        let b2 = icat_mapping_space(&c, &d2, 1, DEFAULT_BUDGET).unwrap().space;
        for k in 0..=1 {
            assert_eq!(a.count_simplices(k), b1.count_simplices(k) * b2.count_simplices(k));
        }
    }

    #[test]
    fn strongly_segal_probe() {
        let r = strongly_segal_check(&FinCat::chain(2).to_icat(2), 2, 1, DEFAULT_BUDGET).unwrap();
        assert!(r.pass, "{r:?}");
        let r = strongly_segal_check(&interval_monoid(2), 2, 1, DEFAULT_BUDGET).unwrap();
        assert!(!r.pass);
        let (which, w) = r.failure.unwrap();
        assert_eq!(which, "s");
        assert_eq!(w.m, 2);
    }
}
