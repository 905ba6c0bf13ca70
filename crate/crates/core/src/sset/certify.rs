//! Tiered evidence that two finite simplicial sets are weakly equivalent.
//!
//! Weak equivalence is not decidable from finite truncated data, so a
//! [`Certificate`] records how much was established: an isomorphism, an
//! explicit homotopy equivalence, or only matching homological invariants
//! (a necessary condition, never a proof).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::homology::{homology, AbGroup};
use super::ops::{pi0, product, subcomplex, Pi0};
use super::search::{find_iso, first_solution, HomProblem, SearchOptions, DEFAULT_BUDGET};
use super::{FinSSet, Mono, SMap, Simplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertifyMode {
    /// only ISO or STRONG count as success
    Exact,
    /// accept HOMOLOGICAL(n) as the weakest positive tier
    AllowHomological,
}

/// Caller-supplied maps for the STRONG tier.
#[derive(Clone, Debug, Default)]
pub struct Hint {
    pub f: Option<SMap>,
    pub g: Option<SMap>,
    /// `X × Δ[1] -> X` between `g ∘ f` and the identity
    pub homotopy_x: Option<SMap>,
    /// `Y × Δ[1] -> Y` between `f ∘ g` and the identity
    pub homotopy_y: Option<SMap>,
}

impl Hint {
    pub fn map(f: SMap) -> Self {
        Hint { f: Some(f), ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Obstruction {
    Pi0 { left: usize, right: usize },
    /// the given map is not a bijection on components
    Pi0Map { detail: String },
    Homology { degree: usize, left: Vec<AbGroup>, right: Vec<AbGroup> },
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::Pi0 { left, right } => write!(f, "π0 {left} vs {right}"),
            Obstruction::Pi0Map { detail } => write!(f, "π0 map not bijective: {detail}"),
            Obstruction::Homology { degree, left, right } => {
                let show = |v: &[AbGroup]| v.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ");
                write!(f, "H_{degree} differs: [{}] vs [{}]", show(left), show(right))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    Iso { forward: SMap, backward: SMap },
    Strong { f: SMap, g: SMap, homotopy_x: SMap, homotopy_y: SMap },
    /// necessary conditions only
    Homological { bound: usize, components: usize, profiles: Vec<Vec<AbGroup>> },
    Failed(Obstruction),
    Unknown { reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Tier {
    Iso,
    Strong,
    Homological(usize),
    Failed,
    Unknown,
}

impl std::fmt::Display for Tier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tier::Iso => write!(f, "ISO"),
            Tier::Strong => write!(f, "STRONG"),
            Tier::Homological(n) => write!(f, "HOMOLOGICAL({n})"),
            Tier::Failed => write!(f, "FAILED"),
            Tier::Unknown => write!(f, "UNKNOWN"),
        }
    }
}

/// Serializable digest of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertSummary {
    pub tier: String,
    pub detail: String,
    /// HOMOLOGICAL certificates are necessary-condition evidence only
    pub proof: bool,
}

impl Certificate {
    pub fn tier(&self) -> Tier {
        match self {
            Certificate::Iso { .. } => Tier::Iso,
            Certificate::Strong { .. } => Tier::Strong,
            Certificate::Homological { bound, .. } => Tier::Homological(*bound),
            Certificate::Failed(_) => Tier::Failed,
            Certificate::Unknown { .. } => Tier::Unknown,
        }
    }

    /// ISO or STRONG.
    pub fn is_proof(&self) -> bool {
        matches!(self, Certificate::Iso { .. } | Certificate::Strong { .. })
    }

    pub fn is_failed(&self) -> bool {
        matches!(self, Certificate::Failed(_))
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match self {
            Certificate::Failed(o) => Some(o),
            _ => None,
        }
    }

    pub fn summary(&self) -> CertSummary {
        let detail = match self {
            Certificate::Iso { forward, .. } => format!("isomorphism on {} cells", forward.src().total_cells()),
            Certificate::Strong { .. } => "homotopy equivalence with verified homotopies".into(),
            Certificate::Homological { bound, components, profiles } => format!(
                "necessary conditions only: {components} components, matching H_0..H_{bound}: {}",
                profiles
                    .iter()
                    .map(|p| format!("[{}]", p.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            Certificate::Failed(o) => o.to_string(),
            Certificate::Unknown { reason } => reason.clone(),
        };
        CertSummary { tier: self.tier().to_string(), detail, proof: self.is_proof() }
    }
}

/// Restriction of a homotopy `X × Δ[1] -> Y` to the end `X × {e}`.
pub fn homotopy_end(h: &SMap, x: &Arc<FinSSet>, end: usize) -> Option<SMap> {
    let d1 = Arc::new(FinSSet::standard(1, x.trunc_dim()));
    let pr = product(x, &d1).ok()?;
    if pr.obj.as_ref() != h.src().as_ref() {
        return None;
    }
    let v = d1.vertex(end);
    let images = (0..=x.trunc_dim())
        .map(|d| {
            x.cells(d)
                .map(|c| {
                    let s = Simplex::nondegenerate(c);
                    let ve = v.degenerate_by(&Mono::constant(d, 0));
                    h.apply(pr.pair(s, ve).expect("pair exists"))
                })
                .collect()
        })
        .collect();
    Some(SMap::new_unchecked(x.clone(), h.tgt().clone(), images))
}

/// `h` is a homotopy between `a` and `b` in one of the two directions.
pub fn is_homotopy_between(h: &SMap, a: &SMap, b: &SMap) -> bool {
    if h.check().is_err() {
        return false;
    }
    let x = a.src();
    match (homotopy_end(h, x, 0), homotopy_end(h, x, 1)) {
        (Some(h0), Some(h1)) => {
            (h0.same_images(a) && h1.same_images(b)) || (h0.same_images(b) && h1.same_images(a))
        }
        _ => false,
    }
}

/// Search for a homotopy `X × Δ[1] -> Y` from `a` to `b` (or from `b` to `a`).
pub fn find_homotopy(a: &SMap, b: &SMap, budget: u64) -> Option<SMap> {
    let x = a.src();
    let y = a.tgt();
    let d1 = Arc::new(FinSSet::standard(1, x.trunc_dim()));
    let pr = product(x, &d1).ok()?;
    for (start, end) in [(a, b), (b, a)] {
        let mut p = HomProblem::new();
        let h = p.add_node(pr.obj.clone(), y.clone());
        let n0 = p.add_node(x.clone(), y.clone());
        let n1 = p.add_node(x.clone(), y.clone());
        p.fix(n0, start.clone());
        p.fix(n1, end.clone());
        for (node, e) in [(n0, 0), (n1, 1)] {
            let v = d1.vertex(e);
            let images = (0..=x.trunc_dim())
                .map(|d| {
                    x.cells(d)
                        .map(|c| pr.pair(Simplex::nondegenerate(c), v.degenerate_by(&Mono::constant(d, 0))).unwrap())
                        .collect()
                })
                .collect();
            let incl = SMap::new_unchecked(x.clone(), pr.obj.clone(), images);
            p.add_edge(node, h, incl, SMap::identity(y.clone()));
        }
        if let Ok(Some(mut sol)) = first_solution(&p, SearchOptions { budget, iso: false }) {
            return Some(sol.remove(h));
        }
    }
    None
}

/// Per-component homology profiles `H_0..H_n`, in component order.
pub fn component_profiles(x: &Arc<FinSSet>, n: usize) -> (Pi0, Vec<Vec<AbGroup>>) {
    let p = pi0(x).expect("truncation at least 1");
    let mut profiles = Vec::with_capacity(p.count);
    for comp in 0..p.count {
        let cells: Vec<_> = x.all_cells().filter(|&c| p.labels[x.vertex_of(Simplex::nondegenerate(c), 0).base().idx] == comp).collect();
        let (sub, _) = subcomplex(x, cells);
        profiles.push(homology(&sub, n).expect("bound checked by caller"));
    }
    (p, profiles)
}

fn multiset(v: &[Vec<AbGroup>]) -> BTreeMap<Vec<AbGroup>, usize> {
    let mut m = BTreeMap::new();
    for p in v {
        *m.entry(p.clone()).or_insert(0) += 1;
    }
    m
}

fn obstruction(x: &Arc<FinSSet>, y: &Arc<FinSSet>, n: usize, map: Option<&SMap>) -> Result<Vec<Vec<AbGroup>>, Obstruction> {
    let (px, hx) = component_profiles(x, n);
    let (py, hy) = component_profiles(y, n);
    if px.count != py.count {
        return Err(Obstruction::Pi0 { left: px.count, right: py.count });
    }
    if let Some(f) = map {
        let mut hit = vec![None; py.count];
        for v in 0..x.num_cells(0) {
            let cx = px.labels[v];
            let cy = py.of(y, f.apply(x.vertex(v)));
            match hit[cy] {
                None => hit[cy] = Some(cx),
                Some(prev) if prev != cx => {
                    return Err(Obstruction::Pi0Map { detail: format!("two components map to component {cy}") });
                }
                _ => {}
            }
        }
        if let Some(cy) = hit.iter().position(|h| h.is_none()) {
            return Err(Obstruction::Pi0Map { detail: format!("component {cy} not hit") });
        }
        for (cy, cx) in hit.iter().enumerate() {
            let cx = cx.unwrap();
            if hx[cx] != hy[cy] {
                let degree = (0..=n).find(|&i| hx[cx][i] != hy[cy][i]).unwrap();
                return Err(Obstruction::Homology { degree, left: hx[cx].clone(), right: hy[cy].clone() });
            }
        }
        return Ok(hx);
    }
    let (mx, my) = (multiset(&hx), multiset(&hy));
    if mx != my {
        let tot = |h: &[Vec<AbGroup>], i: usize| {
            let mut v: Vec<AbGroup> = h.iter().map(|p| p[i].clone()).collect();
            v.sort();
            v
        };
        let degree = (0..=n).find(|&i| tot(&hx, i) != tot(&hy, i)).unwrap_or(0);
        return Err(Obstruction::Homology { degree, left: tot(&hx, degree), right: tot(&hy, degree) });
    }
    Ok(hx)
}

fn verify_strong(x: &Arc<FinSSet>, y: &Arc<FinSSet>, h: &Hint) -> Option<Certificate> {
    let (f, g, hx, hy) = (h.f.as_ref()?, h.g.as_ref()?, h.homotopy_x.as_ref()?, h.homotopy_y.as_ref()?);
    if f.src().as_ref() != x.as_ref() || f.tgt().as_ref() != y.as_ref() || g.src().as_ref() != y.as_ref() {
        return None;
    }
    if f.check().is_err() || g.check().is_err() {
        return None;
    }
    let gf = f.then(g);
    let fg = g.then(f);
    let ok = is_homotopy_between(hx, &gf, &SMap::identity(x.clone()))
        && is_homotopy_between(hy, &fg, &SMap::identity(y.clone()));
    ok.then(|| Certificate::Strong { f: f.clone(), g: g.clone(), homotopy_x: hx.clone(), homotopy_y: hy.clone() })
}

/// Contract onto a vertex when the other side is a point.
fn contraction(x: &Arc<FinSSet>, pt: &Arc<FinSSet>, budget: u64) -> Option<(SMap, SMap, SMap, SMap)> {
    let f = SMap::constant(x.clone(), pt.clone(), pt.vertex(0));
    let id_pt = SMap::identity(pt.clone());
    let d1 = Arc::new(FinSSet::standard(1, x.trunc_dim()));
    let prp = product(pt, &d1).ok()?;
    let hy = SMap::constant(prp.obj.clone(), pt.clone(), pt.vertex(0));
    for v in 0..x.num_cells(0) {
        let g = SMap::constant(pt.clone(), x.clone(), x.vertex(v));
        let gf = f.then(&g);
        if let Some(hx) = find_homotopy(&gf, &SMap::identity(x.clone()), budget) {
            debug_assert!(is_homotopy_between(&hy, &g.then(&f), &id_pt));
            return Some((f, g, hx, hy));
        }
    }
    None
}

fn is_point(x: &FinSSet) -> bool {
    x.num_cells(0) == 1 && (1..=x.trunc_dim()).all(|d| x.num_cells(d) == 0)
}

/// Certify that `x` and `y` are weakly equivalent, trying ISO, then STRONG,
/// then (if allowed) HOMOLOGICAL(n). The homology bound is clamped to the
/// truncation.
pub fn certify_equivalence(
    x: &Arc<FinSSet>,
    y: &Arc<FinSSet>,
    mode: CertifyMode,
    n: usize,
    budget: u64,
    hint: Option<&Hint>,
) -> Certificate {
    if x.trunc_dim() != y.trunc_dim() {
        return Certificate::Unknown { reason: format!("truncation mismatch {} vs {}", x.trunc_dim(), y.trunc_dim()) };
    }
    let mut exhausted = false;
    if let Some(f) = hint.and_then(|h| h.f.as_ref()) {
        if f.check().is_ok() && f.is_iso() {
            return Certificate::Iso { forward: f.clone(), backward: f.inverse().unwrap() };
        }
    }
    if x.is_empty() && y.is_empty() {
        let id = SMap::identity(x.clone());
        return Certificate::Iso { forward: id.clone(), backward: id };
    }
    let map_hint = hint.and_then(|h| h.f.as_ref());
    if map_hint.is_none() {
        match find_iso(x, y, budget) {
            Ok(Some(f)) => {
                let g = f.inverse().unwrap();
                return Certificate::Iso { forward: f, backward: g };
            }
            Ok(None) => {}
            Err(()) => exhausted = true,
        }
    }
    if let Some(h) = hint {
        if let Some(c) = verify_strong(x, y, h) {
            return c;
        }
    }
    if is_point(y) && !x.is_empty() {
        if let Some((f, g, hx, hy)) = contraction(x, y, budget.min(DEFAULT_BUDGET)) {
            return Certificate::Strong { f, g, homotopy_x: hx, homotopy_y: hy };
        }
    } else if is_point(x) && !y.is_empty() {
        if let Some((f, g, hx, hy)) = contraction(y, x, budget.min(DEFAULT_BUDGET)) {
            return Certificate::Strong { f: g, g: f, homotopy_x: hy, homotopy_y: hx };
        }
    }
    if x.trunc_dim() == 0 {
        return Certificate::Unknown { reason: "no edges below truncation 1: components undetermined".into() };
    }
    let bound = n.min(x.trunc_dim() - 1);
    match obstruction(x, y, bound, map_hint) {
        Err(o) => Certificate::Failed(o),
        Ok(profiles) => match mode {
            CertifyMode::AllowHomological => Certificate::Homological { bound, components: profiles.len(), profiles },
            CertifyMode::Exact => Certificate::Unknown {
                reason: if exhausted {
                    "isomorphism search budget exhausted; invariants agree".into()
                } else {
                    format!("not isomorphic; π0 and H_0..H_{bound} agree, no homotopy equivalence supplied")
                },
            },
        },
    }
}

/// Certificate for a given map `f : X -> Y` to be a weak equivalence.
pub fn certify_map(f: &SMap, mode: CertifyMode, n: usize, budget: u64) -> Certificate {
    let hint = Hint::map(f.clone());
    certify_equivalence(f.src(), f.tgt(), mode, n, budget, Some(&hint))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(x: FinSSet) -> Arc<FinSSet> {
        Arc::new(x)
    }

    #[test]
    fn interval_contracts() {
        let d1 = arc(FinSSet::standard(1, 2));
        let pt = arc(FinSSet::point(2));
        let c = certify_equivalence(&d1, &pt, CertifyMode::Exact, 1, DEFAULT_BUDGET, None);
        assert_eq!(c.tier(), Tier::Strong);
    }

    #[test]
    fn circle_is_not_a_point() {
        let b = arc(FinSSet::boundary(2, 2));
        let pt = arc(FinSSet::point(2));
        let c = certify_equivalence(&b, &pt, CertifyMode::AllowHomological, 1, DEFAULT_BUDGET, None);
        match c.obstruction() {
            Some(Obstruction::Homology { degree, .. }) => assert_eq!(*degree, 1),
            o => panic!("unexpected {o:?}"),
        }
    }
}
