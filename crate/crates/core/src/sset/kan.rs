//! Exhaustive horn-lifting probes for Kan fibrations.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{FinSSet, SMap, Simplex};

/// An unsolvable lifting problem `Λ^m_k -> X` over `Δ[m] -> Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HornWitness {
    pub m: usize,
    pub k: usize,
    /// the simplex of the base
    pub base: String,
    /// the horn faces `d_i`, `i ≠ k`, in order
    pub faces: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ProbeResult {
    Pass { max_dim: usize },
    Fail(HornWitness),
}

impl ProbeResult {
    pub fn passed(&self) -> bool {
        matches!(self, ProbeResult::Pass { .. })
    }
}

/// Try every horn `Λ^m_k` with `1 ≤ m ≤ max_dim` against `p`; dimensions
/// above the truncation are not probed.
pub fn kan_fibration_probe(p: &SMap, max_dim: usize) -> ProbeResult {
    let x = p.src();
    let y = p.tgt();
    let top = max_dim.min(x.trunc_dim());
    for m in 1..=top {
        let lower = x.simplices(m - 1);
        let mut fibers: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
        for &s in &lower {
            fibers.entry(p.apply(s)).or_default().push(s);
        }
        let upper = x.simplices(m);
        for k in 0..=m {
            let mut solvable: HashSet<(Simplex, Vec<Simplex>)> = HashSet::new();
            for &z in &upper {
                let faces: Vec<Simplex> = (0..=m).filter(|&i| i != k).map(|i| x.face(z, i)).collect();
                solvable.insert((p.apply(z), faces));
            }
            for b in y.simplices(m) {
                let targets: Vec<Simplex> = (0..=m).map(|i| y.face(b, i)).collect();
                if let Some(faces) = find_unfillable(x, &fibers, &targets, m, k, b, &solvable) {
                    return ProbeResult::Fail(HornWitness {
                        m,
                        k,
                        base: y.expr(b),
                        faces: faces.iter().map(|&f| x.expr(f)).collect(),
                    });
                }
            }
        }
    }
    ProbeResult::Pass { max_dim: top }
}

/// Kan complex probe: the map to a point.
pub fn kan_probe(x: &std::sync::Arc<FinSSet>, max_dim: usize) -> ProbeResult {
    let pt = std::sync::Arc::new(FinSSet::point(x.trunc_dim()));
    let p = SMap::constant(x.clone(), pt.clone(), pt.vertex(0));
    kan_fibration_probe(&p, max_dim)
}

fn find_unfillable(
    x: &FinSSet,
    fibers: &HashMap<Simplex, Vec<Simplex>>,
    targets: &[Simplex],
    m: usize,
    k: usize,
    b: Simplex,
    solvable: &HashSet<(Simplex, Vec<Simplex>)>,
) -> Option<Vec<Simplex>> {
    let slots: Vec<usize> = (0..=m).filter(|&i| i != k).collect();
    let mut chosen: Vec<Simplex> = Vec::with_capacity(slots.len());
    fn rec(
        x: &FinSSet,
        fibers: &HashMap<Simplex, Vec<Simplex>>,
        targets: &[Simplex],
        slots: &[usize],
        chosen: &mut Vec<Simplex>,
        b: Simplex,
        solvable: &HashSet<(Simplex, Vec<Simplex>)>,
    ) -> Option<Vec<Simplex>> {
        let pos = chosen.len();
        if pos == slots.len() {
            let key = (b, chosen.clone());
            return if solvable.contains(&key) { None } else { Some(chosen.clone()) };
        }
        let j = slots[pos];
        let empty = Vec::new();
        for &cand in fibers.get(&targets[j]).unwrap_or(&empty) {
            // d_i x_j = d_{j-1} x_i for earlier slots i < j
            let ok = slots[..pos]
                .iter()
                .zip(chosen.iter())
                .all(|(&i, &xi)| x.face(cand, i) == x.face(xi, j - 1));
            if ok {
                chosen.push(cand);
                if let Some(w) = rec(x, fibers, targets, slots, chosen, b, solvable) {
                    return Some(w);
                }
                chosen.pop();
            }
        }
        None
    }
    rec(x, fibers, targets, &slots, &mut chosen, b, solvable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn interval_is_not_kan() {
        let d1 = Arc::new(FinSSet::standard(1, 2));
        match kan_probe(&d1, 2) {
            ProbeResult::Fail(w) => {
                assert_eq!(w.m, 2);
                assert!(w.k == 0 || w.k == 2);
            }
            r => panic!("expected failure, got {r:?}"),
        }
    }

    #[test]
    fn identity_lifts() {
        let d2 = Arc::new(FinSSet::standard(2, 3));
        assert!(kan_fibration_probe(&SMap::identity(d2), 3).passed());
    }

    #[test]
    fn chaotic_set_is_kan() {
        let e = Arc::new(FinSSet::chaotic(&["a", "b"], 3));
        assert!(kan_probe(&e, 3).passed());
    }
}
