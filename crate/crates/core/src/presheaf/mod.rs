//! Internal presheaves: modules over the arrow object of an internal
//! category, living over its object space.

mod bar;
mod base;

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::icat::{nerve_built, InternalCat};
use crate::report::ValidationReport;
use crate::sset::certify::{certify_map, CertSummary, CertifyMode};
use crate::sset::kan::kan_fibration_probe;
use crate::sset::ops::{corestrict, fiber, fiber_product, product, Pullback};
use crate::sset::search::{all_solutions, HomProblem, SearchOptions};
use crate::sset::{validate, FinSSet, Mono, SMap, Simplex};
use crate::sspace::{ho_category, hoequiv, pi0_mod_equiv, Verdict};

pub use bar::{bar_resolution, BarObject};
pub use base::{
    alpha_shriek, alpha_shriek_representable_check, derived_left_kan, pullback_along, ShriekCheck, ShriekResult,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variance {
    /// `F ×_P Ar -> F`; `x·g` lies over `t(g)` (covariant)
    Right,
    /// `Ar ×_P F -> F`; `g·x` lies over `s(g)` (contravariant)
    Left,
}

/// A module over `Ar(C)` in simplicial sets over `Ob(C)`.
#[derive(Clone, Debug)]
pub struct Presheaf {
    pub carrier: Arc<FinSSet>,
    pub projection: SMap,
    pub variance: Variance,
    /// `carrier ×_P Ar` (right) or `Ar ×_P carrier` (left)
    pub acting: Arc<Pullback>,
    pub action: SMap,
}

fn acting_object(c: &InternalCat, projection: &SMap, variance: Variance) -> Result<Pullback> {
    match variance {
        Variance::Right => fiber_product(projection, &c.s),
        Variance::Left => fiber_product(&c.t, projection),
    }
}

/// The element and arrow legs of an acting object.
fn legs(p: &Pullback, variance: Variance) -> (&SMap, &SMap) {
    match variance {
        Variance::Right => (&p.p1, &p.p2),
        Variance::Left => (&p.p2, &p.p1),
    }
}

fn pair_in(p: &Pullback, variance: Variance, elem: &SMap, arrow: &SMap) -> Result<SMap> {
    match variance {
        Variance::Right => p.pair_map(elem, arrow),
        Variance::Left => p.pair_map(arrow, elem),
    }
}

/// `v` degenerated to dimension `d`.
pub(crate) fn degen_vertex(v: Simplex, d: usize) -> Simplex {
    v.degenerate_by(&Mono::constant(d, 0))
}

fn check_vertex(x: &FinSSet, v: Simplex, what: &str) -> Result<()> {
    if v.dim() != 0 || v.base().idx >= x.num_cells(0) {
        return Err(Error::Precondition(format!("not a vertex of {what}")));
    }
    Ok(())
}

impl Presheaf {
    /// Assemble a presheaf; `action` receives the acting object.
    pub fn new(
        c: &InternalCat,
        carrier: Arc<FinSSet>,
        projection: SMap,
        variance: Variance,
        action: impl FnOnce(&Pullback) -> Result<SMap>,
    ) -> Result<Presheaf> {
        if !Arc::ptr_eq(projection.tgt(), &c.ob) && **projection.tgt() != *c.ob {
            return Err(Error::Precondition("projection does not land in the object space".into()));
        }
        let acting = Arc::new(acting_object(c, &projection, variance)?);
        let action = action(&acting)?;
        if action.src().as_ref() != acting.obj.as_ref() || action.tgt().as_ref() != carrier.as_ref() {
            return Err(Error::InvalidMap("action has the wrong source or target".into()));
        }
        Ok(Presheaf { carrier, projection, variance, acting, action })
    }

    pub fn trunc_dim(&self) -> usize {
        self.carrier.trunc_dim()
    }

    /// The leg `acting -> carrier`.
    pub fn elem_leg(&self) -> &SMap {
        legs(&self.acting, self.variance).0
    }

    /// The leg `acting -> Ar`.
    pub fn arrow_leg(&self) -> &SMap {
        legs(&self.acting, self.variance).1
    }

    /// The map into the acting object given by an element and an arrow
    /// leg.
    pub fn pair_map(&self, elem: &SMap, arrow: &SMap) -> Result<SMap> {
        pair_in(&self.acting, self.variance, elem, arrow)
    }

    /// `x·g` (right) or `g·x` (left), if defined.
    pub fn act(&self, x: Simplex, g: Simplex) -> Option<Simplex> {
        let p = match self.variance {
            Variance::Right => self.acting.pair(x, g),
            Variance::Left => self.acting.pair(g, x),
        }?;
        Some(self.action.apply(p))
    }

    /// The terminal presheaf: carrier `Ob(C)`, every arrow acts by moving
    /// to its other end.
    pub fn terminal(c: &InternalCat, variance: Variance) -> Result<Presheaf> {
        let id = SMap::identity(c.ob.clone());
        Presheaf::new(c, c.ob.clone(), id, variance, |a| {
            Ok(match variance {
                Variance::Right => a.p2.then(&c.t),
                Variance::Left => a.p1.then(&c.s),
            })
        })
    }

    /// `Ar` acting on itself: precomposition (left, over the source) or
    /// postcomposition (right, over the target).
    pub fn arrows(c: &InternalCat, variance: Variance) -> Result<Presheaf> {
        let projection = match variance {
            Variance::Right => c.t.clone(),
            Variance::Left => c.s.clone(),
        };
        Presheaf::new(c, c.ar.clone(), projection, variance, |a| Ok(c.pairs.pair_map(&a.p1, &a.p2)?.then(&c.m)))
    }

    /// `F ⊗ K`: carrier `F × K`, acting on the first factor.
    pub fn tensor(&self, c: &InternalCat, k: &Arc<FinSSet>) -> Result<(Presheaf, Pullback)> {
        let prod = product(&self.carrier, k)?;
        let projection = prod.p1.then(&self.projection);
        let v = self.variance;
        let f = Presheaf::new(c, prod.obj.clone(), projection, v, |a| {
            let (elem, arrow) = legs(a, v);
            let moved = self.pair_map(&elem.then(&prod.p1), arrow)?.then(&self.action);
            prod.pair_map(&moved, &elem.then(&prod.p2))
        })?;
        Ok((f, prod))
    }
}

/// Check the module axioms as exact equalities.
pub fn validate_presheaf(f: &Presheaf, c: &InternalCat) -> ValidationReport {
    let mut rep = ValidationReport::default();
    rep.merge("carrier", validate(&f.carrier));
    for (name, m) in [("projection", &f.projection), ("action", &f.action)] {
        if let Err(e) = m.check() {
            rep.push(format!("{name} is a simplicial map"), name, e.to_string());
        }
    }
    if !rep.is_valid() {
        return rep;
    }
    let end = match f.variance {
        Variance::Right => &c.t,
        Variance::Left => &c.s,
    };
    for cell in f.acting.obj.all_cells() {
        let a = Simplex::nondegenerate(cell);
        let g = f.arrow_leg().apply(a);
        if f.projection.apply(f.action.apply(a)) != end.apply(g) {
            rep.push(
                "projection compatibility",
                f.acting.obj.cell_name(cell),
                format!("lands over {}, arrow ends at {}", c.ob.expr(f.projection.apply(f.action.apply(a))), c.ob.expr(end.apply(g))),
            );
        }
    }
    for cell in f.carrier.all_cells() {
        let x = Simplex::nondegenerate(cell);
        let e = c.identity(f.projection.apply(x));
        if f.act(x, e) != Some(x) {
            rep.push("unitality", f.carrier.cell_name(cell), "the identity does not act trivially");
        }
    }
    for d in 0..=f.trunc_dim() {
        // arrows keyed by the end that meets the element
        let mut adjacent: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
        for g in c.ar.simplices(d) {
            let end = match f.variance {
                Variance::Right => c.source(g),
                Variance::Left => c.target(g),
            };
            adjacent.entry(end).or_default().push(g);
        }
        let empty = Vec::new();
        for x in f.carrier.simplices(d) {
            for &g in adjacent.get(&f.projection.apply(x)).unwrap_or(&empty) {
                let xg = f.act(x, g).unwrap();
                let next = match f.variance {
                    Variance::Right => c.target(g),
                    Variance::Left => c.source(g),
                };
                for &h in adjacent.get(&next).unwrap_or(&empty) {
                    let (lhs, composite) = match f.variance {
                        // (x·g)·h = x·(h∘g)
                        Variance::Right => (f.act(xg, h), c.compose(g, h)),
                        // h·(g·x) = (g∘h)·x
                        Variance::Left => (f.act(xg, h), c.compose(h, g)),
                    };
                    let rhs = composite.and_then(|k| f.act(x, k));
                    if lhs != rhs {
                        rep.push(
                            "associativity",
                            format!("({}, {}, {})", f.carrier.expr(x), c.ar.expr(g), c.ar.expr(h)),
                            "acting in two steps differs from acting by the composite",
                        );
                    }
                }
            }
        }
    }
    rep
}

/// `h_v = Ar ×_P {v}` along the target, over the source, acted on by
/// precomposition; with its inclusion into `Ar`.
pub fn representable_with_inclusion(c: &InternalCat, v: Simplex) -> Result<(Presheaf, SMap)> {
    check_vertex(&c.ob, v, "the object space")?;
    let (carrier, incl) = fiber(&c.t, v)?;
    let projection = incl.then(&c.s);
    let h = Presheaf::new(c, carrier, projection, Variance::Left, |a| {
        let composite = c.pairs.pair_map(&a.p1, &a.p2.then(&incl))?.then(&c.m);
        corestrict(&composite, &incl).ok_or_else(|| Error::Invalid("composite leaves the fiber".into()))
    })?;
    Ok((h, incl))
}

pub fn representable(c: &InternalCat, v: Simplex) -> Result<Presheaf> {
    representable_with_inclusion(c, v).map(|p| p.0)
}

/// `h^v = {v} ×_P Ar` along the source, over the target, acted on by
/// postcomposition; with its inclusion into `Ar`.
pub fn corepresentable_with_inclusion(c: &InternalCat, v: Simplex) -> Result<(Presheaf, SMap)> {
    check_vertex(&c.ob, v, "the object space")?;
    let (carrier, incl) = fiber(&c.s, v)?;
    let projection = incl.then(&c.t);
    let h = Presheaf::new(c, carrier, projection, Variance::Right, |a| {
        let composite = c.pairs.pair_map(&a.p1.then(&incl), &a.p2)?.then(&c.m);
        corestrict(&composite, &incl).ok_or_else(|| Error::Invalid("composite leaves the fiber".into()))
    })?;
    Ok((h, incl))
}

pub fn corepresentable(c: &InternalCat, v: Simplex) -> Result<Presheaf> {
    corepresentable_with_inclusion(c, v).map(|p| p.0)
}

/// A map of presheaves, given on carriers.
#[derive(Clone, Debug)]
pub struct PresheafMap {
    pub src: Presheaf,
    pub tgt: Presheaf,
    pub map: SMap,
}

impl PresheafMap {
    /// Check compatibility with projections and actions.
    pub fn check(&self) -> Result<()> {
        self.map.check()?;
        if !self.map.then(&self.tgt.projection).same_images(&self.src.projection) {
            return Err(Error::InvalidMap("does not commute with the projections".into()));
        }
        for cell in self.src.acting.obj.all_cells() {
            let a = Simplex::nondegenerate(cell);
            let (x, g) = (self.src.elem_leg().apply(a), self.src.arrow_leg().apply(a));
            let lhs = self.map.apply(self.src.action.apply(a));
            if self.tgt.act(self.map.apply(x), g) != Some(lhs) {
                return Err(Error::InvalidMap(format!(
                    "does not commute with the action at {}",
                    self.src.acting.obj.cell_name(cell)
                )));
            }
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.src.carrier == self.tgt.carrier && self.map.same_images(&SMap::identity(self.src.carrier.clone()))
    }
}

/// All presheaf maps `F -> G` as carrier maps; `None` on budget.
pub fn presheaf_maps(f: &Presheaf, g: &Presheaf, c: &InternalCat, budget: u64) -> Result<Option<Vec<SMap>>> {
    if f.variance != g.variance {
        return Err(Error::Precondition("presheaves of different variance".into()));
    }
    let mut p = HomProblem::new();
    let carrier = p.add_node(f.carrier.clone(), g.carrier.clone());
    let ob = p.add_node(c.ob.clone(), c.ob.clone());
    let acting = p.add_node(f.acting.obj.clone(), g.acting.obj.clone());
    let ar = p.add_node(c.ar.clone(), c.ar.clone());
    p.fix(ob, SMap::identity(c.ob.clone()));
    p.fix(ar, SMap::identity(c.ar.clone()));
    p.add_edge(carrier, ob, f.projection.clone(), g.projection.clone());
    p.add_edge(acting, carrier, f.action.clone(), g.action.clone());
    p.add_edge(acting, carrier, f.elem_leg().clone(), g.elem_leg().clone());
    p.add_edge(acting, ar, f.arrow_leg().clone(), g.arrow_leg().clone());
    Ok(all_solutions(&p, SearchOptions { budget, iso: false }).map(|v| v.into_iter().map(|mut m| m.remove(0)).collect()))
}

#[derive(Clone, Debug, Serialize)]
pub struct YonedaDegree {
    pub degree: usize,
    /// presheaf maps `h_v ⊗ Δ[k] -> F`
    pub maps: usize,
    /// `k`-simplices of the fiber of `F` over `v`
    pub fiber: usize,
    /// evaluation at the identity is a bijection onto the fiber
    pub bijective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct YonedaReport {
    pub vertex: String,
    pub fibration_probe: bool,
    pub degrees: Vec<YonedaDegree>,
    pub iso: bool,
    /// the probe failed, so the comparison is not a homotopical statement
    pub advisory: bool,
}

/// Compare the mapping space `Map(h_v, F)` with the strict fiber of `F`
/// over `v`, degree by degree up to `max_degree`, by enumerating maps
/// `h_v ⊗ Δ[k] -> F` and evaluating at the identity of `v`.
pub fn yoneda_check(
    c: &InternalCat,
    v: Simplex,
    f: &Presheaf,
    max_degree: usize,
    probe_dim: usize,
    budget: u64,
) -> Result<YonedaReport> {
    let (h, incl) = match f.variance {
        Variance::Left => representable_with_inclusion(c, v)?,
        Variance::Right => corepresentable_with_inclusion(c, v)?,
    };
    let idv = c.identity(v);
    let unit = h
        .carrier
        .simplices(0)
        .into_iter()
        .find(|&s| incl.apply(s) == idv)
        .ok_or_else(|| Error::Invalid("identity missing from the representable".into()))?;
    let fibrant = kan_fibration_probe(&f.projection, probe_dim).passed();
    let top = max_degree.min(f.trunc_dim());
    let mut degrees = Vec::new();
    for k in 0..=top {
        let simplex = Arc::new(FinSSet::standard(k, f.trunc_dim()));
        let (hk, prod) = h.tensor(c, &simplex)?;
        let maps = presheaf_maps(&hk, f, c, budget)?
            .ok_or_else(|| Error::Budget(format!("mapping space in degree {k}")))?;
        let top_cell = Simplex::nondegenerate(simplex.cells(k).next().expect("Δ[k] has a top cell"));
        let point = prod.pair(degen_vertex(unit, k), top_cell).expect("product contains the pair");
        let over = degen_vertex(v, k);
        let fiber_size = f.carrier.simplices(k).into_iter().filter(|&s| f.projection.apply(s) == over).count();
        let values: HashSet<Simplex> = maps.iter().map(|m| m.apply(point)).collect();
        let bijective = values.len() == maps.len()
            && maps.len() == fiber_size
            && values.iter().all(|&s| f.projection.apply(s) == over);
        degrees.push(YonedaDegree { degree: k, maps: maps.len(), fiber: fiber_size, bijective });
    }
    let iso = degrees.iter().all(|d| d.bijective);
    Ok(YonedaReport { vertex: c.ob.expr(v), fibration_probe: fibrant, degrees, iso, advisory: !fibrant })
}

/// `f_* : h_{s(f)} -> h_{t(f)}`, postcomposition with the arrow vertex `f`.
pub fn equivalence_arrow_map(c: &InternalCat, f: Simplex) -> Result<PresheafMap> {
    check_vertex(&c.ar, f, "the arrow space")?;
    let (src, incl_s) = representable_with_inclusion(c, c.source(f))?;
    let (tgt, incl_t) = representable_with_inclusion(c, c.target(f))?;
    let constant = SMap::constant(src.carrier.clone(), c.ar.clone(), f);
    let composite = c.pairs.pair_map(&incl_s, &constant)?.then(&c.m);
    let map = corestrict(&composite, &incl_t).ok_or_else(|| Error::Invalid("composite leaves the fiber".into()))?;
    Ok(PresheafMap { src, tgt, map })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberCertificate {
    pub vertex: String,
    pub certificate: CertSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentsReport {
    /// a vertex whose class under `π0/∼` the sample misses
    pub missed: Option<String>,
    pub fibration_probes: bool,
    pub fibers: Vec<FiberCertificate>,
    pub verdict: Verdict,
}

/// Decide whether `map` is a weak equivalence by certifying its strict
/// fibers over the sample vertices, which must meet every class of
/// `π0(Ob)` modulo equivalences.
pub fn equivalence_over_components(
    c: &InternalCat,
    map: &PresheafMap,
    sample: &[Simplex],
    probe_dim: usize,
    hom_bound: usize,
    budget: u64,
) -> Result<ComponentsReport> {
    for &v in sample {
        check_vertex(&c.ob, v, "the object space")?;
    }
    let n = nerve_built(c, 2);
    let x = &n.space;
    let ho = ho_category(x)?;
    let he = hoequiv(x, &ho)?;
    let (classes, count) = pi0_mod_equiv(x, &he)?;
    let vertex_of_ob = |v: Simplex| n.levels[0].lookup(0, &vec![v]).base().idx;
    let mut hit = vec![false; count];
    for &v in sample {
        hit[classes[vertex_of_ob(v)]] = true;
    }
    let missed = c
        .ob
        .simplices(0)
        .into_iter()
        .find(|&v| !hit[classes[vertex_of_ob(v)]])
        .map(|v| c.ob.expr(v));
    if missed.is_some() {
        return Ok(ComponentsReport { missed, fibration_probes: false, fibers: vec![], verdict: Verdict::Unknown });
    }
    let fibrant = kan_fibration_probe(&map.src.projection, probe_dim).passed()
        && kan_fibration_probe(&map.tgt.projection, probe_dim).passed();
    let mut fibers = Vec::new();
    let mut certs = Vec::new();
    for &v in sample {
        let (_, is) = fiber(&map.src.projection, v)?;
        let (_, it) = fiber(&map.tgt.projection, v)?;
        let restricted = corestrict(&is.then(&map.map), &it).expect("maps over Ob preserve fibers");
        let cert = certify_map(&restricted, CertifyMode::Exact, hom_bound, budget);
        fibers.push(FiberCertificate { vertex: c.ob.expr(v), certificate: cert.summary() });
        certs.push(cert);
    }
    let verdict = if certs.iter().any(|c| c.is_failed()) {
        Verdict::No
    } else if fibrant && certs.iter().all(|c| c.is_proof()) {
        Verdict::Yes
    } else {
        Verdict::Unknown
    };
    Ok(ComponentsReport { missed: None, fibration_probes: fibrant, fibers, verdict })
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowEquivalence {
    pub arrow: String,
    pub in_hoequiv: bool,
    pub fibers: Vec<FiberCertificate>,
    pub pushforward: Verdict,
    /// membership in `hoequiv` matches the verdict on `f_*`
    pub agrees: bool,
}

/// For every arrow vertex `f`: is `f` invertible in `Ho`, and is `f_*` an
/// equivalence of representables (certified over all object vertices)?
pub fn arrow_equivalence_check(
    c: &InternalCat,
    probe_dim: usize,
    hom_bound: usize,
    budget: u64,
) -> Result<Vec<ArrowEquivalence>> {
    let n = nerve_built(c, 2);
    let ho = ho_category(&n.space)?;
    let he = hoequiv(&n.space, &ho)?;
    let kept: HashSet<usize> = he.vertices.iter().copied().collect();
    let sample = c.ob.simplices(0);
    let mut out = Vec::new();
    for f in c.ar.simplices(0) {
        let idx = n.levels[1].lookup(0, &vec![f]).base().idx;
        let in_hoequiv = kept.contains(&idx);
        let fstar = equivalence_arrow_map(c, f)?;
        let rep = equivalence_over_components(c, &fstar, &sample, probe_dim, hom_bound, budget)?;
        let agrees = match rep.verdict {
            Verdict::Yes => in_hoequiv,
            Verdict::No => !in_hoequiv,
            Verdict::Unknown => false,
        };
        out.push(ArrowEquivalence { arrow: c.ar.expr(f), in_hoequiv, fibers: rep.fibers, pushforward: rep.verdict, agrees });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icat::{discrete, FinCat};

    fn vertex(c: &InternalCat, name: &str) -> Simplex {
        Simplex::nondegenerate(c.ob.find_cell(name).unwrap())
    }

    #[test]
    fn terminal_and_arrows_are_valid() {
        let c = FinCat::chain(1).to_icat(2);
        for v in [Variance::Left, Variance::Right] {
            assert!(validate_presheaf(&Presheaf::terminal(&c, v).unwrap(), &c).is_valid());
            assert!(validate_presheaf(&Presheaf::arrows(&c, v).unwrap(), &c).is_valid());
        }
    }

    #[test]
    fn representables_of_the_interval() {
        let c = FinCat::chain(1).to_icat(2);
        let h1 = representable(&c, vertex(&c, "1")).unwrap();
        assert!(validate_presheaf(&h1, &c).is_valid());
        assert_eq!(h1.carrier.num_cells(0), 2);
        let over0: Vec<_> =
            h1.carrier.simplices(0).into_iter().filter(|&s| h1.projection.apply(s) == vertex(&c, "0")).collect();
        assert_eq!(over0.len(), 1);
        let h0 = representable(&c, vertex(&c, "0")).unwrap();
        assert_eq!(h0.carrier.num_cells(0), 1);
    }

    #[test]
    fn discrete_representable_is_a_point() {
        let k = Arc::new(FinSSet::standard(1, 2));
        let c = discrete(k.clone());
        let h = representable(&c, k.vertex(0)).unwrap();
        assert!(validate_presheaf(&h, &c).is_valid());
        assert_eq!(h.carrier.total_cells(), 1);
    }

    #[test]
    fn corrupted_action_is_named() {
        let c = FinCat::chain(1).to_icat(1);
        let h = representable(&c, vertex(&c, "1")).unwrap();
        let mut images = h.action.images().to_vec();
        // send the pair (id1, id1) to the other vertex
        let target = h.carrier.simplices(0);
        let idx = (0..images[0].len()).find(|&i| images[0][i] == target[0]).unwrap();
        images[0][idx] = target[1];
        let bad = Presheaf { action: SMap::new_unchecked(h.acting.obj.clone(), h.carrier.clone(), images), ..h };
        let rep = validate_presheaf(&bad, &c);
        assert!(!rep.is_valid());
    }

    #[test]
    fn yoneda_on_the_interval_and_a_groupoid() {
        let c = FinCat::chain(1).to_icat(2);
        for v in ["0", "1"] {
            let x = vertex(&c, v);
            let h = representable(&c, x).unwrap();
            let rep = yoneda_check(&c, x, &h, 2, 2, 100_000).unwrap();
            assert!(rep.iso);
            assert_eq!(rep.degrees[0].maps, 1);
            let t = Presheaf::terminal(&c, Variance::Left).unwrap();
            let rep = yoneda_check(&c, x, &t, 2, 2, 100_000).unwrap();
            assert!(rep.iso && rep.degrees[0].maps == 1);
        }
        let g = FinCat::chaotic(2).to_icat(2);
        let (a, b) = (g.ob.vertex(0), g.ob.vertex(1));
        let hb = representable(&g, b).unwrap();
        let rep = yoneda_check(&g, a, &hb, 2, 2, 100_000).unwrap();
        assert!(rep.iso);
        assert_eq!(rep.degrees[0].maps, g.hom(a, b).len());
    }

    #[test]
    fn identity_pushes_forward_to_identity() {
        let c = FinCat::cyclic_group(3).to_icat(1);
        for v in c.ob.simplices(0) {
            let m = equivalence_arrow_map(&c, c.identity(v)).unwrap();
            assert!(m.check().is_ok());
            assert!(m.is_identity());
        }
    }

    #[test]
    fn arrow_of_the_interval_is_not_an_equivalence() {
        let c = FinCat::chain(1).to_icat(1);
        let rows = arrow_equivalence_check(&c, 1, 1, 10_000).unwrap();
        let u = rows.iter().find(|r| r.arrow == "01").unwrap();
        assert!(!u.in_hoequiv);
        assert_eq!(u.pushforward, Verdict::No);
        assert!(rows.iter().all(|r| r.agrees));
    }

    #[test]
    fn groupoid_arrows_push_forward_to_equivalences() {
        let c = FinCat::chaotic(2).to_icat(1);
        let rows = arrow_equivalence_check(&c, 1, 1, 10_000).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.in_hoequiv && r.pushforward == Verdict::Yes));
    }

    #[test]
    fn sample_must_meet_every_class() {
        let c = FinCat::chain(1).to_icat(1);
        let m = equivalence_arrow_map(&c, c.identity(vertex(&c, "0"))).unwrap();
        let rep = equivalence_over_components(&c, &m, &[vertex(&c, "0")], 1, 1, 10_000).unwrap();
        assert_eq!(rep.missed.as_deref(), Some("1"));
        let g = FinCat::chaotic(2).to_icat(1);
        let m = equivalence_arrow_map(&g, g.identity(g.ob.vertex(0))).unwrap();
        let rep = equivalence_over_components(&g, &m, &[g.ob.vertex(0)], 1, 1, 10_000).unwrap();
        assert!(rep.missed.is_none());
        assert_eq!(rep.verdict, Verdict::Yes);
    }
}
