//! Simplicial spaces: truncated bisimplicial sets stored as a list of
//! levels `X_0 … X_M` with outer face and degeneracy maps.

mod cartesian;
mod ho;
mod maps;

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::sset::ops::{coproduct, quotient_by_pairs, subcomplex};
use crate::sset::{build, validate, Built, FinSSet, Mono, SMap, Simplex, SimplicialModel};

pub use cartesian::{homotopy_cartesian_probe, segal_square, CartesianProbe, Square};
pub use ho::{
    completeness_check, dk_check, ho_category, hoequiv, mapping_fiber, pi0_mod_equiv, DkReport, FiberCheck, HoCat, HoEquiv,
    Verdict,
};
pub use maps::{count_sspace_maps, pushout_space, sspace_hom_problem, SSMap, SpacePushout};

#[derive(Clone, Debug, PartialEq)]
pub struct SimpSpace {
    levels: Vec<Arc<FinSSet>>,
    /// `faces[m][i] : X_m -> X_{m-1}`
    faces: Vec<Vec<SMap>>,
    /// `degens[m][j] : X_m -> X_{m+1}`
    degens: Vec<Vec<SMap>>,
}

/// A simplicial space presented by explicit bisimplices. Keys of level `m`
/// and inner degree `d` must be closed under all operators.
pub trait BisimplicialModel {
    type Key: Clone + Eq + Hash + Ord;
    fn keys(&self, m: usize, d: usize) -> Vec<Self::Key>;
    fn inner_face(&self, m: usize, d: usize, i: usize, k: &Self::Key) -> Self::Key;
    fn inner_degeneracy(&self, m: usize, d: usize, j: usize, k: &Self::Key) -> Self::Key;
    fn outer_face(&self, m: usize, d: usize, i: usize, k: &Self::Key) -> Self::Key;
    fn outer_degeneracy(&self, m: usize, d: usize, j: usize, k: &Self::Key) -> Self::Key;
    fn name(&self, m: usize, k: &Self::Key) -> String;
}

struct LevelModel<'a, B: BisimplicialModel> {
    model: &'a B,
    m: usize,
}

impl<B: BisimplicialModel> SimplicialModel for LevelModel<'_, B> {
    type Key = B::Key;
    fn simplices(&self, d: usize) -> Vec<B::Key> {
        self.model.keys(self.m, d)
    }
    fn face(&self, d: usize, i: usize, k: &B::Key) -> B::Key {
        self.model.inner_face(self.m, d, i, k)
    }
    fn degeneracy(&self, d: usize, j: usize, k: &B::Key) -> B::Key {
        self.model.inner_degeneracy(self.m, d, j, k)
    }
    fn name(&self, k: &B::Key) -> String {
        self.model.name(self.m, k)
    }
}

/// Result of normalizing a bisimplicial model.
pub struct BuiltSpace<K> {
    pub space: SimpSpace,
    pub levels: Vec<Built<K>>,
}

/// Normalize a model with outer levels `0..=outer_dim` and inner
/// truncation `trunc_dim`.
pub fn build_space<B: BisimplicialModel>(model: &B, outer_dim: usize, trunc_dim: usize) -> BuiltSpace<B::Key> {
    let levels: Vec<Built<B::Key>> =
        (0..=outer_dim).map(|m| build(&LevelModel { model, m }, trunc_dim)).collect();
    let arcs: Vec<Arc<FinSSet>> = levels.iter().map(|b| Arc::new(b.sset.clone())).collect();
    let mut faces = vec![Vec::new()];
    let mut degens = Vec::new();
    for m in 1..=outer_dim {
        faces.push(
            (0..=m)
                .map(|i| {
                    SMap::from_keys(&levels[m], &levels[m - 1], arcs[m].clone(), arcs[m - 1].clone(), |d, k| {
                        model.outer_face(m, d, i, k)
                    })
                })
                .collect(),
        );
    }
    for m in 0..outer_dim {
        degens.push(
            (0..=m)
                .map(|j| {
                    SMap::from_keys(&levels[m], &levels[m + 1], arcs[m].clone(), arcs[m + 1].clone(), |d, k| {
                        model.outer_degeneracy(m, d, j, k)
                    })
                })
                .collect(),
        );
    }
    degens.push(Vec::new());
    BuiltSpace { space: SimpSpace { levels: arcs, faces, degens }, levels }
}

impl SimpSpace {
    pub fn from_parts(levels: Vec<Arc<FinSSet>>, faces: Vec<Vec<SMap>>, degens: Vec<Vec<SMap>>) -> Result<Self> {
        let m = levels.len();
        if m == 0 {
            return Err(Error::Invalid("a simplicial space needs level 0".into()));
        }
        let mut faces = faces;
        let mut degens = degens;
        if faces.len() == m - 1 {
            faces.insert(0, Vec::new());
        }
        if degens.len() == m - 1 {
            degens.push(Vec::new());
        }
        if faces.len() != m || degens.len() != m {
            return Err(Error::Invalid("wrong number of outer operator families".into()));
        }
        for (k, f) in faces.iter().enumerate() {
            if f.len() != if k == 0 { 0 } else { k + 1 } {
                return Err(Error::Invalid(format!("level {k}: wrong number of outer faces")));
            }
        }
        for (k, s) in degens.iter().enumerate() {
            if s.len() != if k + 1 == m { 0 } else { k + 1 } {
                return Err(Error::Invalid(format!("level {k}: wrong number of outer degeneracies")));
            }
        }
        Ok(SimpSpace { levels, faces, degens })
    }

    pub fn outer_dim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn trunc_dim(&self) -> usize {
        self.levels[0].trunc_dim()
    }

    pub fn level(&self, m: usize) -> &Arc<FinSSet> {
        &self.levels[m]
    }

    pub fn levels(&self) -> &[Arc<FinSSet>] {
        &self.levels
    }

    pub fn face(&self, m: usize, i: usize) -> &SMap {
        &self.faces[m][i]
    }

    pub fn degeneracy(&self, m: usize, j: usize) -> &SMap {
        &self.degens[m][j]
    }

    /// `θ^* : X_m -> X_k` for a monotone `θ : [k] -> [m]`.
    pub fn outer_map(&self, theta: &Mono, m: usize) -> SMap {
        let (epi, image) = theta.epi_mono();
        let mut cur = SMap::identity(self.levels[m].clone());
        let mut lvl = m;
        for j in (0..=m).rev() {
            if !image.contains(&j) {
                cur = cur.then(&self.faces[lvl][j]);
                lvl -= 1;
            }
        }
        for j in 0..epi.dim() {
            if epi.get(j) == epi.get(j + 1) {
                cur = cur.then(&self.degens[lvl][j]);
                lvl += 1;
            }
        }
        cur
    }

    /// The edge `i -> j` of level `m` as a map to `X_1`.
    pub fn edge_map(&self, m: usize, i: usize, j: usize) -> SMap {
        self.outer_map(&Mono::from_slice(&[i, j]), m)
    }

    pub fn vertex_map(&self, m: usize, i: usize) -> SMap {
        self.outer_map(&Mono::from_slice(&[i]), m)
    }

    /// Source `X_1 -> X_0` (the outer `d_1`).
    pub fn source(&self) -> &SMap {
        &self.faces[1][1]
    }

    /// Target `X_1 -> X_0` (the outer `d_0`).
    pub fn target(&self) -> &SMap {
        &self.faces[1][0]
    }

    /// Truncate to fewer outer levels.
    pub fn outer_truncate(&self, m: usize) -> SimpSpace {
        let mut degens = self.degens[..=m].to_vec();
        degens[m] = Vec::new();
        SimpSpace { levels: self.levels[..=m].to_vec(), faces: self.faces[..=m].to_vec(), degens }
    }

    /// Constant simplicial space at `k`.
    pub fn constant(k: Arc<FinSSet>, outer_dim: usize) -> SimpSpace {
        let id = SMap::identity(k.clone());
        let faces = (0..=outer_dim).map(|m| vec![id.clone(); if m == 0 { 0 } else { m + 1 }]).collect();
        let degens = (0..=outer_dim).map(|m| vec![id.clone(); if m == outer_dim { 0 } else { m + 1 }]).collect();
        SimpSpace { levels: vec![k; outer_dim + 1], faces, degens }
    }

    /// Levelwise product.
    pub fn product(&self, other: &SimpSpace) -> Result<SimpSpace> {
        let m = self.outer_dim().min(other.outer_dim());
        let pbs: Vec<_> = (0..=m)
            .map(|k| crate::sset::ops::product(&self.levels[k], &other.levels[k]))
            .collect::<Result<_>>()?;
        let levels = pbs.iter().map(|p| p.obj.clone()).collect();
        let lift = |from: usize, to: usize, a: &SMap, b: &SMap| -> SMap {
            pbs[to].pair_map(&pbs[from].p1.then(a), &pbs[from].p2.then(b)).expect("levelwise maps commute")
        };
        let faces = (0..=m)
            .map(|k| (0..if k == 0 { 0 } else { k + 1 }).map(|i| lift(k, k - 1, &self.faces[k][i], &other.faces[k][i])).collect())
            .collect();
        let degens = (0..=m)
            .map(|k| (0..if k == m { 0 } else { k + 1 }).map(|j| lift(k, k + 1, &self.degens[k][j], &other.degens[k][j])).collect())
            .collect();
        Ok(SimpSpace { levels, faces, degens })
    }

    /// Levelwise coproduct.
    pub fn coproduct(&self, other: &SimpSpace) -> Result<SimpSpace> {
        let m = self.outer_dim().min(other.outer_dim());
        let d = self.trunc_dim();
        let cps: Vec<_> = (0..=m)
            .map(|k| coproduct(&[self.levels[k].clone(), other.levels[k].clone()], d))
            .collect::<Result<_>>()?;
        let lift = |from: usize, to: usize, a: &SMap, b: &SMap| -> SMap {
            cps[from].copair(&[a.then(&cps[to].inclusions[0]), b.then(&cps[to].inclusions[1])])
        };
        let faces = (0..=m)
            .map(|k| (0..if k == 0 { 0 } else { k + 1 }).map(|i| lift(k, k - 1, &self.faces[k][i], &other.faces[k][i])).collect())
            .collect();
        let degens = (0..=m)
            .map(|k| (0..if k == m { 0 } else { k + 1 }).map(|j| lift(k, k + 1, &self.degens[k][j], &other.degens[k][j])).collect())
            .collect();
        Ok(SimpSpace { levels: cps.iter().map(|c| c.obj.clone()).collect(), faces, degens })
    }
}

/// Check every level, every outer operator and all outer simplicial
/// identities as equalities of maps.
pub fn validate_space(x: &SimpSpace) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let d = x.trunc_dim();
    for (m, l) in x.levels.iter().enumerate() {
        if l.trunc_dim() != d {
            rep.push("shared truncation", format!("level {m}"), format!("{} vs {d}", l.trunc_dim()));
        }
        rep.merge(&format!("level {m}"), validate(l));
    }
    if !rep.is_valid() {
        return rep;
    }
    let mm = x.outer_dim();
    for m in 1..=mm {
        for i in 0..=m {
            if let Err(e) = x.faces[m][i].check() {
                rep.push("outer face is a map", format!("d_{i} on level {m}"), e.to_string());
            }
        }
    }
    for m in 0..mm {
        for j in 0..=m {
            if let Err(e) = x.degens[m][j].check() {
                rep.push("outer degeneracy is a map", format!("s_{j} on level {m}"), e.to_string());
            }
        }
    }
    if !rep.is_valid() {
        return rep;
    }
    let eq = |a: &SMap, b: &SMap| a.same_images(b);
    for m in 2..=mm {
        for j in 1..=m {
            for i in 0..j {
                if !eq(&x.faces[m][j].then(&x.faces[m - 1][i]), &x.faces[m][i].then(&x.faces[m - 1][j - 1])) {
                    rep.push(format!("d_{i} d_{j} = d_{} d_{i}", j - 1), format!("level {m}"), "outer");
                }
            }
        }
    }
    for m in 0..mm {
        for j in 0..=m {
            let sj = &x.degens[m][j];
            for i in 0..=m + 1 {
                let lhs = sj.then(&x.faces[m + 1][i]);
                let ok = if i == j || i == j + 1 {
                    eq(&lhs, &SMap::identity(x.levels[m].clone()))
                } else if i < j {
                    eq(&lhs, &x.faces[m][i].then(&x.degens[m - 1][j - 1]))
                } else {
                    eq(&lhs, &x.faces[m][i - 1].then(&x.degens[m - 1][j]))
                };
                if !ok {
                    rep.push(format!("d_{i} s_{j}"), format!("level {m}"), "outer interchange law");
                }
            }
            if m + 1 < mm {
                for i in 0..=j {
                    if !eq(&sj.then(&x.degens[m + 1][i]), &x.degens[m][i].then(&x.degens[m + 1][j + 1])) {
                        rep.push(format!("s_{i} s_{j} = s_{} s_{i}", j + 1), format!("level {m}"), "outer");
                    }
                }
            }
        }
    }
    rep
}

struct RepresentableModel {
    n: usize,
    spine_only: bool,
    /// all maps `[m] -> {0,1}` instead of monotone maps into `[n]`
    chaotic: bool,
}

impl RepresentableModel {
    fn level(&self, m: usize) -> Vec<Vec<usize>> {
        if self.chaotic {
            return (0..1usize << (m + 1)).map(|b| (0..=m).map(|i| (b >> (m - i)) & 1).collect()).collect();
        }
        Mono::all(m, self.n)
            .into_iter()
            .filter(|a| !self.spine_only || a.max_value() - a.get(0) <= 1)
            .map(|a| a.values())
            .collect()
    }
}

impl BisimplicialModel for RepresentableModel {
    /// (outer element, inner degree)
    type Key = (Vec<usize>, usize);
    fn keys(&self, m: usize, d: usize) -> Vec<Self::Key> {
        self.level(m).into_iter().map(|a| (a, d)).collect()
    }
    fn inner_face(&self, _m: usize, d: usize, _i: usize, k: &Self::Key) -> Self::Key {
        (k.0.clone(), d - 1)
    }
    fn inner_degeneracy(&self, _m: usize, d: usize, _j: usize, k: &Self::Key) -> Self::Key {
        (k.0.clone(), d + 1)
    }
    fn outer_face(&self, _m: usize, _d: usize, i: usize, k: &Self::Key) -> Self::Key {
        let mut a = k.0.clone();
        a.remove(i);
        (a, k.1)
    }
    fn outer_degeneracy(&self, _m: usize, _d: usize, j: usize, k: &Self::Key) -> Self::Key {
        let mut a = k.0.clone();
        a.insert(j, k.0[j]);
        (a, k.1)
    }
    fn name(&self, _m: usize, k: &Self::Key) -> String {
        k.0.iter().map(|v| v.to_string()).collect()
    }
}

/// The representable `F(n)`: level `m` is the discrete set of monotone
/// maps `[m] -> [n]`.
pub fn make_f(n: usize, outer_dim: usize, trunc_dim: usize) -> SimpSpace {
    build_space(&RepresentableModel { n, spine_only: false, chaotic: false }, outer_dim, trunc_dim).space
}

/// The spine `G(n) = F(1) ⊔_{F(0)} … ⊔_{F(0)} F(1)` with its inclusion
/// into `F(n)`.
pub fn make_g(n: usize, outer_dim: usize, trunc_dim: usize) -> (SimpSpace, SSMap) {
    let g = build_space(&RepresentableModel { n, spine_only: true, chaotic: false }, outer_dim, trunc_dim);
    let f = build_space(&RepresentableModel { n, spine_only: false, chaotic: false }, outer_dim, trunc_dim);
    let maps = (0..=outer_dim)
        .map(|m| {
            SMap::from_keys(&g.levels[m], &f.levels[m], g.space.levels[m].clone(), f.space.levels[m].clone(), |_, k| k.clone())
        })
        .collect();
    let incl = SSMap::new_unchecked(g.space.clone(), f.space.clone(), maps);
    (g.space, incl)
}

/// The nerve of the free-living isomorphism `I[1]`, levelwise discrete:
/// level `m` is the set of all maps `[m] -> {0, 1}`.
pub fn make_e(outer_dim: usize, trunc_dim: usize) -> SimpSpace {
    
    build_space(&RepresentableModel { n: 1, spine_only: false, chaotic: true }, outer_dim, trunc_dim).space
}

struct FiberPowerModel<'a> {
    x: &'a SimpSpace,
    n: usize,
}

impl SimplicialModel for FiberPowerModel<'_> {
    type Key = Vec<Simplex>;
    fn simplices(&self, d: usize) -> Vec<Vec<Simplex>> {
        let x1 = self.x.level(1);
        let edges = x1.simplices(d);
        if self.n == 0 {
            return self.x.level(0).simplices(d).into_iter().map(|v| vec![v]).collect();
        }
        let src = self.x.source();
        let tgt = self.x.target();
        let mut by_src: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
        for &e in &edges {
            by_src.entry(src.apply(e)).or_default().push(e);
        }
        let mut out: Vec<Vec<Simplex>> = edges.iter().map(|&e| vec![e]).collect();
        for _ in 1..self.n {
            let mut next = Vec::new();
            for chain in &out {
                let end = tgt.apply(*chain.last().unwrap());
                if let Some(nexts) = by_src.get(&end) {
                    for &e in nexts {
                        let mut c = chain.clone();
                        c.push(e);
                        next.push(c);
                    }
                }
            }
            out = next;
        }
        out
    }
    fn face(&self, _d: usize, i: usize, k: &Vec<Simplex>) -> Vec<Simplex> {
        let l = if self.n == 0 { self.x.level(0) } else { self.x.level(1) };
        k.iter().map(|&s| l.face(s, i)).collect()
    }
    fn degeneracy(&self, _d: usize, j: usize, k: &Vec<Simplex>) -> Vec<Simplex> {
        k.iter().map(|s| s.degeneracy(j)).collect()
    }
    fn name(&self, k: &Vec<Simplex>) -> String {
        let l = if self.n == 0 { self.x.level(0) } else { self.x.level(1) };
        k.iter().map(|&s| l.expr(s)).collect::<Vec<_>>().join("|")
    }
}

/// The Segal map `X_n -> X_1 ×_{X_0} … ×_{X_0} X_1` with its codomain.
pub fn segal_map(x: &SimpSpace, n: usize) -> Result<SMap> {
    if n > x.outer_dim() {
        return Err(Error::Precondition(format!("level {n} above outer truncation {}", x.outer_dim())));
    }
    let model = FiberPowerModel { x, n };
    let built = build(&model, x.trunc_dim());
    let power = Arc::new(built.sset.clone());
    let edges: Vec<SMap> = if n == 0 {
        vec![SMap::identity(x.level(0).clone())]
    } else {
        (0..n).map(|i| x.edge_map(n, i, i + 1)).collect()
    };
    let xn = x.level(n);
    let images = (0..=x.trunc_dim())
        .map(|d| {
            xn.cells(d)
                .map(|c| {
                    let s = Simplex::nondegenerate(c);
                    let key: Vec<Simplex> = edges.iter().map(|e| e.apply(s)).collect();
                    built.lookup(d, &key)
                })
                .collect()
        })
        .collect();
    Ok(SMap::new_unchecked(xn.clone(), power, images))
}

/// The latching object `L_r X` computed as a colimit (a coequalizer of
/// copies of `X_{r-1}` along the relations `s_{j+1} s_i = s_i s_j`),
/// together with its canonical map to `X_r`.
pub fn latching(x: &SimpSpace, r: usize) -> Result<(Arc<FinSSet>, SMap)> {
    if r > x.outer_dim() {
        return Err(Error::Precondition(format!("level {r} above outer truncation {}", x.outer_dim())));
    }
    let d = x.trunc_dim();
    if r == 0 {
        let empty = Arc::new(FinSSet::empty(d));
        let m = SMap::new_unchecked(empty.clone(), x.level(0).clone(), vec![]);
        return Ok((empty, m));
    }
    let copies: Vec<Arc<FinSSet>> = vec![x.level(r - 1).clone(); r];
    let cp = coproduct(&copies, d)?;
    let mut pairs = Vec::new();
    if r >= 2 {
        for y in (0..=d).flat_map(|k| x.level(r - 2).simplices(k)) {
            for j in 0..r - 1 {
                for i in 0..=j {
                    // s_{j+1} s_i y = s_i s_j y
                    let a = cp.inject(j + 1, x.degeneracy(r - 2, i).apply(y));
                    let b = cp.inject(i, x.degeneracy(r - 2, j).apply(y));
                    pairs.push((a, b));
                }
            }
        }
    }
    let q = quotient_by_pairs(&cp.obj, &pairs);
    let to_level: Vec<SMap> = (0..r).map(|j| x.degeneracy(r - 1, j).clone()).collect();
    let from_coproduct = cp.copair(&to_level);
    let images = (0..=d)
        .map(|k| {
            q.obj
                .cells(k)
                .map(|c| {
                    // any preimage in the coproduct
                    let pre = cp.obj.simplices(k).into_iter().find(|&s| q.class_of(s) == Simplex::nondegenerate(c)).unwrap();
                    from_coproduct.apply(pre)
                })
                .collect()
        })
        .collect();
    Ok((q.obj.clone(), SMap::new_unchecked(q.obj.clone(), x.level(r).clone(), images)))
}

/// Degenerate part of `X_r`: union of images of the outer degeneracies.
pub fn degenerate_part(x: &SimpSpace, r: usize) -> (Arc<FinSSet>, SMap) {
    let cells: Vec<_> = if r == 0 {
        vec![]
    } else {
        (0..r).flat_map(|j| x.degeneracy(r - 1, j).images().iter().flatten().map(|s| s.base()).collect::<Vec<_>>()).collect()
    };
    subcomplex(x.level(r), cells)
}

struct DiagonalModel<'a> {
    x: &'a SimpSpace,
}

impl SimplicialModel for DiagonalModel<'_> {
    type Key = Simplex;
    fn simplices(&self, d: usize) -> Vec<Simplex> {
        self.x.level(d).simplices(d)
    }
    fn face(&self, d: usize, i: usize, k: &Simplex) -> Simplex {
        let outer = self.x.face(d, i).apply(*k);
        self.x.level(d - 1).face(outer, i)
    }
    fn degeneracy(&self, d: usize, j: usize, k: &Simplex) -> Simplex {
        self.x.degeneracy(d, j).apply(*k).degeneracy(j)
    }
    fn name(&self, k: &Simplex) -> String {
        let d = k.dim();
        self.x.level(d).expr(*k)
    }
}

/// The diagonal simplicial set, reliable up to `min(M, D)`.
pub fn diagonal(x: &SimpSpace) -> FinSSet {
    let top = x.outer_dim().min(x.trunc_dim());
    build(&DiagonalModel { x }, top).sset
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representables_have_expected_sizes() {
        let f1 = make_f(1, 3, 1);
        assert_eq!(f1.level(2).num_cells(0), 4);
        assert!(validate_space(&f1).is_valid());
        let e = make_e(3, 1);
        assert_eq!(e.level(0).num_cells(0), 2);
        assert_eq!(e.level(1).num_cells(0), 4);
        assert_eq!(e.level(2).num_cells(0), 8);
        assert!(validate_space(&e).is_valid());
        let (g2, incl) = make_g(2, 3, 1);
        assert!(validate_space(&g2).is_valid());
        assert!(incl.check().is_ok());
        // no outer 2-cell (0,1,2) in the spine
        assert!(g2.level(2).find_cell("012").is_none());
        assert!(make_f(2, 3, 1).level(2).find_cell("012").is_some());
    }

    #[test]
    fn segal_maps_of_representables() {
        let f2 = make_f(2, 3, 1);
        for n in 0..=3 {
            assert!(segal_map(&f2, n).unwrap().is_iso(), "n = {n}");
        }
    }

    #[test]
    fn latching_of_representable() {
        let f1 = make_f(1, 3, 1);
        let (l1, m1) = latching(&f1, 1).unwrap();
        assert_eq!(l1.num_cells(0), 2);
        assert!(m1.is_injective());
        let (l2, m2) = latching(&f1, 2).unwrap();
        assert_eq!(l2.num_cells(0), 4);
        assert!(m2.is_injective());
    }
}
