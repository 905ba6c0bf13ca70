//! Restriction and left Kan extension along a map of internal categories.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::icat::{ICatMap, InternalCat};
use crate::sset::ops::{coequalizer, corestrict, fiber_product, Quotient};
use crate::sset::{FinSSet, SMap, Simplex};

use super::{bar_resolution, corepresentable_with_inclusion, legs, BarObject, Presheaf, PresheafMap, Variance};

/// `α^* F = F ×_Q P`, with the action pulled back along `α`.
pub fn pullback_along(alpha: &ICatMap, c: &InternalCat, f: &Presheaf) -> Result<Presheaf> {
    let pb = fiber_product(&f.projection, &alpha.ob)?;
    let v = f.variance;
    Presheaf::new(c, pb.obj.clone(), pb.p2.clone(), v, |a| {
        let (elem, arrow) = legs(a, v);
        let moved = f.pair_map(&elem.then(&pb.p1), &arrow.then(&alpha.ar))?.then(&f.action);
        let end = match v {
            Variance::Right => arrow.then(&c.t),
            Variance::Left => arrow.then(&c.s),
        };
        pb.pair_map(&moved, &end)
    })
}

/// The map `B -> Z` induced by `h : A -> Z` along a degreewise surjection
/// `q : A -> B`; fails if `h` is not constant on fibers of `q`.
fn descend(q: &SMap, h: &SMap) -> Result<SMap> {
    let (a, b) = (q.src(), q.tgt());
    let mut images = Vec::with_capacity(b.trunc_dim() + 1);
    for d in 0..=b.trunc_dim() {
        let mut value: HashMap<Simplex, Simplex> = HashMap::new();
        for s in a.simplices(d) {
            let (k, v) = (q.apply(s), h.apply(s));
            if let Some(&old) = value.get(&k) {
                if old != v {
                    return Err(Error::InvalidMap(format!("not constant on the class of {}", b.expr(k))));
                }
            } else {
                value.insert(k, v);
            }
        }
        let row = b
            .cells(d)
            .map(|cell| {
                value
                    .get(&Simplex::nondegenerate(cell))
                    .copied()
                    .ok_or_else(|| Error::InvalidMap(format!("{} has no preimage", b.cell_name(cell))))
            })
            .collect::<Result<Vec<_>>>()?;
        images.push(row);
    }
    Ok(SMap::new_unchecked(b.clone(), h.tgt().clone(), images))
}

/// The strict left Kan extension of a right module, `F ⊗_C α^*Ar(D)`,
/// as a coequalizer of `F ×_P Ar(C) ×_Q Ar(D) ⇉ F ×_Q Ar(D)`.
pub struct ShriekResult {
    pub presheaf: Presheaf,
    /// `F ×_Q Ar(D)` and its quotient map onto the carrier
    pub pairs: Arc<FinSSet>,
    pub quotient: Quotient,
    /// the legs of `F ×_Q Ar(D)`
    pub elem: SMap,
    pub arrow: SMap,
}

pub fn alpha_shriek(alpha: &ICatMap, c: &InternalCat, d: &InternalCat, f: &Presheaf) -> Result<ShriekResult> {
    if f.variance != Variance::Right {
        return Err(Error::Precondition("left Kan extension is computed for right modules".into()));
    }
    let x = fiber_product(&f.projection.then(&alpha.ob), &d.s)?;
    let y = fiber_product(&f.arrow_leg().then(&c.t).then(&alpha.ob), &d.s)?;
    // ((x, g), h) ↦ (x·g, h) and ↦ (x, h ∘ α(g))
    let acted = x.pair_map(&y.p1.then(&f.action), &y.p2)?;
    let pushed = d.pairs.pair_map(&y.p1.then(f.arrow_leg()).then(&alpha.ar), &y.p2)?.then(&d.m);
    let moved = x.pair_map(&y.p1.then(f.elem_leg()), &pushed)?;
    let q = coequalizer(&acted, &moved)?;
    let projection = descend(&q.map, &x.p2.then(&d.t))?;
    let presheaf = Presheaf::new(d, q.obj.clone(), projection, Variance::Right, |a| {
        let w = fiber_product(&x.p2.then(&d.t), &d.s)?;
        let onto = a.pair_map(&w.p1.then(&q.map), &w.p2)?;
        let post = d.pairs.pair_map(&w.p1.then(&x.p2), &w.p2)?.then(&d.m);
        let act = x.pair_map(&w.p1.then(&x.p1), &post)?.then(&q.map);
        descend(&onto, &act)
    })?;
    Ok(ShriekResult { presheaf, pairs: x.obj.clone(), quotient: q, elem: x.p1.clone(), arrow: x.p2.clone() })
}

#[derive(Clone, Debug, Serialize)]
pub struct ShriekCheck {
    pub vertex: String,
    pub image: String,
    /// cells of `α_! h^p` and of `h^{α(p)}`
    pub cells: (usize, usize),
    pub iso: bool,
}

/// Compute `α_! h^p` by the coequalizer and compare it with `h^{α(p)}`
/// through `(x, h) ↦ h ∘ α(x)`.
pub fn alpha_shriek_representable_check(
    alpha: &ICatMap,
    c: &InternalCat,
    d: &InternalCat,
    p: Simplex,
) -> Result<ShriekCheck> {
    let (hp, incl_c) = corepresentable_with_inclusion(c, p)?;
    let image = alpha.ob.apply(p);
    let (target, incl_d) = corepresentable_with_inclusion(d, image)?;
    let sh = alpha_shriek(alpha, c, d, &hp)?;
    let composite = d.pairs.pair_map(&sh.elem.then(&incl_c).then(&alpha.ar), &sh.arrow)?.then(&d.m);
    let into = corestrict(&composite, &incl_d).ok_or_else(|| Error::Invalid("composite leaves the fiber".into()))?;
    let map = descend(&sh.quotient.map, &into)?;
    let cells = (sh.presheaf.carrier.total_cells(), target.carrier.total_cells());
    let m = PresheafMap { src: sh.presheaf, tgt: target, map };
    let iso = m.check().is_ok() && m.map.is_iso();
    Ok(ShriekCheck { vertex: c.ob.expr(p), image: d.ob.expr(image), cells, iso })
}

/// `Lα_! F`: the two-sided bar `B(F, C, α^*Ar(D))`, whose diagonal is the
/// derived left Kan extension (all of `D` at once).
pub fn derived_left_kan(
    alpha: &ICatMap,
    c: &InternalCat,
    d: &InternalCat,
    f: &Presheaf,
    outer_dim: usize,
) -> Result<BarObject> {
    let coeff = pullback_along(alpha, c, &Presheaf::arrows(d, Variance::Left)?)?;
    bar_resolution(c, f, Some(&coeff), outer_dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icat::{all_icat_maps, FinCat};
    use crate::presheaf::validate_presheaf;
    use crate::sset::homology::{homology, AbGroup};

    #[test]
    fn identity_pullback_is_identity() {
        let c = FinCat::chain(1).to_icat(2);
        let id = ICatMap::identity(&c);
        for f in [Presheaf::terminal(&c, Variance::Right).unwrap(), Presheaf::arrows(&c, Variance::Left).unwrap()] {
            let g = pullback_along(&id, &c, &f).unwrap();
            assert!(validate_presheaf(&g, &c).is_valid());
            assert_eq!(g.carrier.total_cells(), f.carrier.total_cells());
        }
    }

    #[test]
    fn shriek_of_representables() {
        let c = FinCat::chain(1).to_icat(2);
        let d = FinCat::chain(2).to_icat(2);
        for alpha in all_icat_maps(&c, &d, 100_000).unwrap() {
            for p in c.ob.simplices(0) {
                let r = alpha_shriek_representable_check(&alpha, &c, &d, p).unwrap();
                assert!(r.iso, "{r:?}");
            }
        }
    }

    #[test]
    fn derived_extension_to_a_point_is_contractible() {
        let c = FinCat::chaotic(2).to_icat(3);
        let d = FinCat::chain(0).to_icat(3);
        let alpha = all_icat_maps(&c, &d, 1000).unwrap().remove(0);
        let t = Presheaf::terminal(&c, Variance::Right).unwrap();
        let b = derived_left_kan(&alpha, &c, &d, &t, 3).unwrap();
        let h = homology(&b.realization(), 2).unwrap();
        assert_eq!(h[0], AbGroup::free(1));
        assert!(h[1].is_zero() && h[2].is_zero());
    }
}
