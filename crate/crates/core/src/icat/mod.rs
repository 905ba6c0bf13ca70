//! Internal categories in finite simplicial sets.

mod adjoint;
mod fincat;
mod maps;
mod nerve;
mod rewrite;

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::sset::ops::{fiber_product, Pullback};
use crate::sset::{build, validate, Built, FinSSet, Mono, SMap, Simplex, SimplicialModel};

pub use adjoint::{
    adjunction_check, counit_is_iso, is_nerve_by_adjoint, s_adjoint, unit_map, unit_verdict, FinPresCat, AdjunctionReport, NerveVerdict, PresLevel, SAdjoint,
    SArrow, WordEq,
};
pub use fincat::FinCat;
pub use maps::{
    all_icat_maps, count_icat_maps, icat_hom_problem, icat_mapping_space, strongly_segal_check, ICatMap,
    MappingSpace, StronglySegalReport,
};
pub use nerve::{nerve, nerve_built, nerve_map};
pub use rewrite::{Completion, RewriteSystem};

/// An internal category: object and arrow spaces with source, target,
/// unit and composition. Composition takes a pair `(f, g)` with
/// `t(f) = s(g)` to `g ∘ f`.
#[derive(Clone, Debug)]
pub struct InternalCat {
    pub ob: Arc<FinSSet>,
    pub ar: Arc<FinSSet>,
    pub s: SMap,
    pub t: SMap,
    pub e: SMap,
    /// `Ar ×_Ob Ar` along `t` and `s`
    pub pairs: Arc<Pullback>,
    pub m: SMap,
}

/// A category object presented by explicit simplices.
pub trait CategoryModel {
    type Ob: Clone + Eq + Hash + Ord;
    type Ar: Clone + Eq + Hash + Ord;
    fn objects(&self, d: usize) -> Vec<Self::Ob>;
    fn arrows(&self, d: usize) -> Vec<Self::Ar>;
    fn ob_face(&self, d: usize, i: usize, x: &Self::Ob) -> Self::Ob;
    fn ob_degeneracy(&self, d: usize, j: usize, x: &Self::Ob) -> Self::Ob;
    fn ar_face(&self, d: usize, i: usize, f: &Self::Ar) -> Self::Ar;
    fn ar_degeneracy(&self, d: usize, j: usize, f: &Self::Ar) -> Self::Ar;
    fn source(&self, d: usize, f: &Self::Ar) -> Self::Ob;
    fn target(&self, d: usize, f: &Self::Ar) -> Self::Ob;
    fn identity(&self, d: usize, x: &Self::Ob) -> Self::Ar;
    /// `g ∘ f`
    fn compose(&self, d: usize, f: &Self::Ar, g: &Self::Ar) -> Self::Ar;
    fn ob_name(&self, x: &Self::Ob) -> String;
    fn ar_name(&self, f: &Self::Ar) -> String;
}

struct ObPart<'a, C: CategoryModel>(&'a C);
struct ArPart<'a, C: CategoryModel>(&'a C);

impl<C: CategoryModel> SimplicialModel for ObPart<'_, C> {
    type Key = C::Ob;
    fn simplices(&self, d: usize) -> Vec<C::Ob> {
        self.0.objects(d)
    }
    fn face(&self, d: usize, i: usize, k: &C::Ob) -> C::Ob {
        self.0.ob_face(d, i, k)
    }
    fn degeneracy(&self, d: usize, j: usize, k: &C::Ob) -> C::Ob {
        self.0.ob_degeneracy(d, j, k)
    }
    fn name(&self, k: &C::Ob) -> String {
        self.0.ob_name(k)
    }
}

impl<C: CategoryModel> SimplicialModel for ArPart<'_, C> {
    type Key = C::Ar;
    fn simplices(&self, d: usize) -> Vec<C::Ar> {
        self.0.arrows(d)
    }
    fn face(&self, d: usize, i: usize, k: &C::Ar) -> C::Ar {
        self.0.ar_face(d, i, k)
    }
    fn degeneracy(&self, d: usize, j: usize, k: &C::Ar) -> C::Ar {
        self.0.ar_degeneracy(d, j, k)
    }
    fn name(&self, k: &C::Ar) -> String {
        self.0.ar_name(k)
    }
}

/// Normalized category model with key lookups.
pub struct BuiltCat<O, A> {
    pub cat: InternalCat,
    pub ob_keys: Built<O>,
    pub ar_keys: Built<A>,
    ar_rev: Vec<HashMap<Simplex, A>>,
    ob_rev: Vec<HashMap<Simplex, O>>,
}

impl<O: Clone + Eq + Hash, A: Clone + Eq + Hash> BuiltCat<O, A> {
    pub fn ar_key(&self, s: Simplex) -> &A {
        &self.ar_rev[s.dim()][&s]
    }

    pub fn ob_key(&self, s: Simplex) -> &O {
        &self.ob_rev[s.dim()][&s]
    }
}

pub fn build_icat<C: CategoryModel>(model: &C, trunc_dim: usize) -> BuiltCat<C::Ob, C::Ar> {
    let obb = build(&ObPart(model), trunc_dim);
    let arb = build(&ArPart(model), trunc_dim);
    let ob = Arc::new(obb.sset.clone());
    let ar = Arc::new(arb.sset.clone());
    let s = SMap::from_keys(&arb, &obb, ar.clone(), ob.clone(), |d, k| model.source(d, k));
    let t = SMap::from_keys(&arb, &obb, ar.clone(), ob.clone(), |d, k| model.target(d, k));
    let e = SMap::from_keys(&obb, &arb, ob.clone(), ar.clone(), |d, k| model.identity(d, k));
    let pairs = Arc::new(fiber_product(&t, &s).expect("same truncation"));
    let ar_rev = arb.reverse_index();
    let ob_rev = obb.reverse_index();
    let images = (0..=trunc_dim)
        .map(|d| {
            pairs
                .obj
                .cells(d)
                .map(|c| {
                    let (f, g) = pairs.split(Simplex::nondegenerate(c));
                    arb.lookup(d, &model.compose(d, &ar_rev[d][&f], &ar_rev[d][&g]))
                })
                .collect()
        })
        .collect();
    let m = SMap::new_unchecked(pairs.obj.clone(), ar.clone(), images);
    BuiltCat { cat: InternalCat { ob, ar, s, t, e, pairs, m }, ob_keys: obb, ar_keys: arb, ar_rev, ob_rev }
}

impl InternalCat {
    pub fn trunc_dim(&self) -> usize {
        self.ob.trunc_dim()
    }

    /// Assemble from structure maps; the composable-pairs object is
    /// recomputed, `m_of` gives the composite of each pair.
    pub fn from_maps(
        ob: Arc<FinSSet>,
        ar: Arc<FinSSet>,
        s: SMap,
        t: SMap,
        e: SMap,
        m_of: impl Fn(Simplex, Simplex) -> Option<Simplex>,
    ) -> Result<InternalCat> {
        let pairs = Arc::new(fiber_product(&t, &s)?);
        let mut images = Vec::new();
        for d in 0..=ob.trunc_dim() {
            let mut row = Vec::new();
            for c in pairs.obj.cells(d) {
                let (f, g) = pairs.split(Simplex::nondegenerate(c));
                let h = m_of(f, g).ok_or_else(|| {
                    Error::Invalid(format!("no composite for ({}, {})", ar.expr(f), ar.expr(g)))
                })?;
                row.push(h);
            }
            images.push(row);
        }
        let m = SMap::new_unchecked(pairs.obj.clone(), ar.clone(), images);
        Ok(InternalCat { ob, ar, s, t, e, pairs, m })
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, f: Simplex, g: Simplex) -> Option<Simplex> {
        self.pairs.pair(f, g).map(|p| self.m.apply(p))
    }

    pub fn identity(&self, x: Simplex) -> Simplex {
        self.e.apply(x)
    }

    pub fn source(&self, f: Simplex) -> Simplex {
        self.s.apply(f)
    }

    pub fn target(&self, f: Simplex) -> Simplex {
        self.t.apply(f)
    }

    /// Arrows `x -> y` among the `d`-simplices.
    pub fn hom(&self, x: Simplex, y: Simplex) -> Vec<Simplex> {
        self.ar.simplices(x.dim()).into_iter().filter(|&f| self.source(f) == x && self.target(f) == y).collect()
    }

    /// The ordinary category of `d`-simplices.
    pub fn category_at(&self, d: usize) -> FinCat {
        let obs = self.ob.simplices(d);
        let ars = self.ar.simplices(d);
        let ob_pos: HashMap<Simplex, usize> = obs.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let ar_pos: HashMap<Simplex, usize> = ars.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let arrows = ars.iter().map(|&f| (ob_pos[&self.source(f)], ob_pos[&self.target(f)])).collect();
        let identities = obs.iter().map(|&x| ar_pos[&self.identity(x)]).collect();
        let mut comp = HashMap::new();
        for (i, &f) in ars.iter().enumerate() {
            for (j, &g) in ars.iter().enumerate() {
                if let Some(h) = self.compose(f, g) {
                    comp.insert((i, j), ar_pos[&h]);
                }
            }
        }
        FinCat {
            objects: obs.iter().map(|&x| self.ob.expr(x)).collect(),
            arrow_names: ars.iter().map(|&f| self.ar.expr(f)).collect(),
            arrows,
            identities,
            comp,
        }
    }
}

/// Check every internal-category axiom as exact equalities of maps.
pub fn validate_icat(c: &InternalCat) -> ValidationReport {
    let mut rep = ValidationReport::default();
    rep.merge("objects", validate(&c.ob));
    rep.merge("arrows", validate(&c.ar));
    if !rep.is_valid() {
        return rep;
    }
    for (name, m) in [("s", &c.s), ("t", &c.t), ("e", &c.e), ("m", &c.m)] {
        if let Err(e) = m.check() {
            rep.push(format!("{name} is a simplicial map"), name, e.to_string());
        }
    }
    if !rep.is_valid() {
        return rep;
    }
    for x in c.ob.all_cells() {
        let xs = Simplex::nondegenerate(x);
        let ex = c.identity(xs);
        if c.source(ex) != xs || c.target(ex) != xs {
            rep.push("s∘e = t∘e = id", c.ob.cell_name(x), format!("e = {}", c.ar.expr(ex)));
        }
    }
    for p in c.pairs.obj.all_cells() {
        let ps = Simplex::nondegenerate(p);
        let (f, g) = c.pairs.split(ps);
        let h = c.m.apply(ps);
        let w = format!("({}, {})", c.ar.expr(f), c.ar.expr(g));
        if c.source(h) != c.source(f) {
            rep.push("s∘m = s∘π1", &w, c.ar.expr(h));
        }
        if c.target(h) != c.target(g) {
            rep.push("t∘m = t∘π2", &w, c.ar.expr(h));
        }
    }
    for f in c.ar.all_cells() {
        let fs = Simplex::nondegenerate(f);
        let l = c.compose(c.identity(c.source(fs)), fs);
        let r = c.compose(fs, c.identity(c.target(fs)));
        if l != Some(fs) || r != Some(fs) {
            rep.push("unit laws", c.ar.cell_name(f), "identity composite differs");
        }
    }
    // associativity on all composable triples of each inner degree
    for d in 0..=c.trunc_dim() {
        let ars = c.ar.simplices(d);
        let mut by_src: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
        for &f in &ars {
            by_src.entry(c.source(f)).or_default().push(f);
        }
        let empty = Vec::new();
        for &f in &ars {
            for &g in by_src.get(&c.target(f)).unwrap_or(&empty) {
                let fg = c.compose(f, g).unwrap();
                for &h in by_src.get(&c.target(g)).unwrap_or(&empty) {
                    let l = c.compose(fg, h);
                    let r = c.compose(g, h).and_then(|gh| c.compose(f, gh));
                    if l != r {
                        rep.push(
                            "associativity",
                            format!("({}, {}, {})", c.ar.expr(f), c.ar.expr(g), c.ar.expr(h)),
                            "m∘(m×id) ≠ m∘(id×m)",
                        );
                    }
                }
            }
        }
    }
    rep
}

/// The discrete internal category on `k`: only identities.
pub fn discrete(k: Arc<FinSSet>) -> InternalCat {
    let id = SMap::identity(k.clone());
    InternalCat::from_maps(k.clone(), k, id.clone(), id.clone(), id, |f, g| (f == g).then_some(f))
        .expect("identities compose")
}

struct ProductModel<'a> {
    a: &'a InternalCat,
    b: &'a InternalCat,
}

impl CategoryModel for ProductModel<'_> {
    type Ob = (Simplex, Simplex);
    type Ar = (Simplex, Simplex);
    fn objects(&self, d: usize) -> Vec<Self::Ob> {
        let bs = self.b.ob.simplices(d);
        self.a.ob.simplices(d).into_iter().flat_map(|x| bs.iter().map(move |&y| (x, y))).collect()
    }
    fn arrows(&self, d: usize) -> Vec<Self::Ar> {
        let bs = self.b.ar.simplices(d);
        self.a.ar.simplices(d).into_iter().flat_map(|x| bs.iter().map(move |&y| (x, y))).collect()
    }
    fn ob_face(&self, _d: usize, i: usize, x: &Self::Ob) -> Self::Ob {
        (self.a.ob.face(x.0, i), self.b.ob.face(x.1, i))
    }
    fn ob_degeneracy(&self, _d: usize, j: usize, x: &Self::Ob) -> Self::Ob {
        (x.0.degeneracy(j), x.1.degeneracy(j))
    }
    fn ar_face(&self, _d: usize, i: usize, f: &Self::Ar) -> Self::Ar {
        (self.a.ar.face(f.0, i), self.b.ar.face(f.1, i))
    }
    fn ar_degeneracy(&self, _d: usize, j: usize, f: &Self::Ar) -> Self::Ar {
        (f.0.degeneracy(j), f.1.degeneracy(j))
    }
    fn source(&self, _d: usize, f: &Self::Ar) -> Self::Ob {
        (self.a.source(f.0), self.b.source(f.1))
    }
    fn target(&self, _d: usize, f: &Self::Ar) -> Self::Ob {
        (self.a.target(f.0), self.b.target(f.1))
    }
    fn identity(&self, _d: usize, x: &Self::Ob) -> Self::Ar {
        (self.a.identity(x.0), self.b.identity(x.1))
    }
    fn compose(&self, _d: usize, f: &Self::Ar, g: &Self::Ar) -> Self::Ar {
        (self.a.compose(f.0, g.0).unwrap(), self.b.compose(f.1, g.1).unwrap())
    }
    fn ob_name(&self, x: &Self::Ob) -> String {
        format!("({},{})", self.a.ob.expr(x.0), self.b.ob.expr(x.1))
    }
    fn ar_name(&self, f: &Self::Ar) -> String {
        format!("({},{})", self.a.ar.expr(f.0), self.b.ar.expr(f.1))
    }
}

/// Product of internal categories, with the keyed model for lookups.
pub fn product_built(a: &InternalCat, b: &InternalCat) -> BuiltCat<(Simplex, Simplex), (Simplex, Simplex)> {
    build_icat(&ProductModel { a, b }, a.trunc_dim())
}

pub fn product(a: &InternalCat, b: &InternalCat) -> InternalCat {
    product_built(a, b).cat
}

/// Coproduct of internal categories.
pub fn coproduct(a: &InternalCat, b: &InternalCat) -> InternalCat {
    let d = a.trunc_dim();
    let obs = crate::sset::ops::coproduct(&[a.ob.clone(), b.ob.clone()], d).unwrap();
    let ars = crate::sset::ops::coproduct(&[a.ar.clone(), b.ar.clone()], d).unwrap();
    let lift = |f: &SMap, g: &SMap, src: &crate::sset::ops::Coproduct, tgt: &crate::sset::ops::Coproduct| {
        src.copair(&[f.then(&tgt.inclusions[0]), g.then(&tgt.inclusions[1])])
    };
    let s = lift(&a.s, &b.s, &ars, &obs);
    let t = lift(&a.t, &b.t, &ars, &obs);
    let e = lift(&a.e, &b.e, &obs, &ars);
    InternalCat::from_maps(obs.obj.clone(), ars.obj.clone(), s, t, e, |f, g| {
        let (kf, f0) = ars.locate(f);
        let (kg, g0) = ars.locate(g);
        if kf != kg {
            return None;
        }
        let c = if kf == 0 { a } else { b };
        c.compose(f0, g0).map(|h| ars.inject(kf, h))
    })
    .unwrap()
}

/// `C × Δ[n]`, with `Δ[n]` the discrete internal category.
pub fn times_simplex(c: &InternalCat, n: usize) -> InternalCat {
    product(c, &discrete(Arc::new(FinSSet::standard(n, c.trunc_dim()))))
}

struct MaxMonoid;

impl CategoryModel for MaxMonoid {
    type Ob = usize;
    type Ar = Mono;
    fn objects(&self, d: usize) -> Vec<usize> {
        vec![d]
    }
    fn arrows(&self, d: usize) -> Vec<Mono> {
        Mono::all(d, 1)
    }
    fn ob_face(&self, d: usize, _i: usize, _x: &usize) -> usize {
        d - 1
    }
    fn ob_degeneracy(&self, d: usize, _j: usize, _x: &usize) -> usize {
        d + 1
    }
    fn ar_face(&self, d: usize, i: usize, f: &Mono) -> Mono {
        f.after(&Mono::coface(d, i))
    }
    fn ar_degeneracy(&self, d: usize, j: usize, f: &Mono) -> Mono {
        f.after(&Mono::codegeneracy(d, j))
    }
    fn source(&self, d: usize, _f: &Mono) -> usize {
        d
    }
    fn target(&self, d: usize, _f: &Mono) -> usize {
        d
    }
    fn identity(&self, d: usize, _x: &usize) -> Mono {
        Mono::constant(d, 0)
    }
    fn compose(&self, _d: usize, f: &Mono, g: &Mono) -> Mono {
        let v: Vec<usize> = f.values().iter().zip(g.values()).map(|(a, b)| (*a).max(b)).collect();
        Mono::from_slice(&v)
    }
    fn ob_name(&self, _x: &usize) -> String {
        "*".into()
    }
    fn ar_name(&self, f: &Mono) -> String {
        f.values().iter().map(|v| v.to_string()).collect()
    }
}

/// One object, arrows `Δ[1]`, composition by pointwise maximum with unit
/// the vertex 0. A category object that is not strongly Segal.
pub fn interval_monoid(trunc_dim: usize) -> InternalCat {
    build_icat(&MaxMonoid, trunc_dim).cat
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_validates() {
        let d = 2;
        for c in [
            FinCat::chain(1).to_icat(d),
            FinCat::chain(2).to_icat(d),
            FinCat::chaotic(2).to_icat(d),
            discrete(Arc::new(FinSSet::standard(1, d))),
            interval_monoid(d),
            times_simplex(&FinCat::chain(1).to_icat(d), 1),
            coproduct(&FinCat::chain(0).to_icat(d), &FinCat::chain(1).to_icat(d)),
        ] {
            let rep = validate_icat(&c);
            assert!(rep.is_valid(), "{rep:?}");
        }
    }

    #[test]
    fn composable_pairs_of_interval() {
        let c = FinCat::chain(1).to_icat(1);
        assert_eq!(c.pairs.obj.num_cells(0), 4);
    }

    #[test]
    fn corrupted_composition_breaks_associativity() {
        let c = FinCat::chain(2).to_icat(0);
        let mut bad = c.clone();
        // send the composite of the two generators to the first generator
        let ar = &c.ar;
        let u = Simplex::nondegenerate(ar.find_cell("01").unwrap());
        let v = Simplex::nondegenerate(ar.find_cell("12").unwrap());
        let pv = c.pairs.pair(u, v).unwrap();
        let mut images = c.m.images().to_vec();
        images[0][pv.base().idx] = u;
        bad.m = SMap::new_unchecked(c.m.src().clone(), ar.clone(), images);
        let rep = validate_icat(&bad);
        assert!(!rep.is_valid());
    }
}
