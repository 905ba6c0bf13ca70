//! Fixed and seeded families of well-formed objects.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use icat_core::cells::random_complex;
use icat_core::icat::{discrete, interval_monoid, nerve, times_simplex, FinCat, InternalCat};
use icat_core::presheaf::{corepresentable, representable, Presheaf, Variance};
use icat_core::simpcat::{GrData, SimpCat};
use icat_core::sset::FinSSet;
use icat_core::sspace::{make_f, SimpSpace};
use icat_core::Result;

use crate::doc::Object;

pub fn posets() -> Vec<(String, FinCat)> {
    vec![
        ("chain0".into(), FinCat::chain(0)),
        ("chain1".into(), FinCat::chain(1)),
        ("chain2".into(), FinCat::chain(2)),
        ("chain3".into(), FinCat::chain(3)),
        ("span".into(), FinCat::preorder(&["a", "b", "c"], &[(0, 1), (0, 2)])),
        ("cospan".into(), FinCat::preorder(&["a", "b", "c"], &[(0, 2), (1, 2)])),
        ("square".into(), FinCat::chain(1).product(&FinCat::chain(1))),
        ("point_plus_chain1".into(), FinCat::preorder(&["a", "b", "c"], &[(1, 2)])),
        ("zigzag".into(), FinCat::preorder(&["a", "b", "c", "d"], &[(0, 1), (2, 1), (2, 3)])),
    ]
}

pub fn groupoids() -> Vec<(String, FinCat)> {
    vec![
        ("chaotic2".into(), FinCat::chaotic(2)),
        ("chaotic3".into(), FinCat::chaotic(3)),
        ("z2".into(), FinCat::cyclic_group(2)),
        ("z3".into(), FinCat::cyclic_group(3)),
        ("z2_times_chaotic2".into(), FinCat::cyclic_group(2).product(&FinCat::chaotic(2))),
        ("chaotic2_plus_point".into(), FinCat::preorder(&["a", "b", "c"], &[(0, 1), (1, 0)])),
    ]
}

pub fn discretes() -> Vec<(String, FinCat)> {
    vec![("discrete2".into(), FinCat::discrete(2)), ("discrete3".into(), FinCat::discrete(3))]
}

pub fn categories() -> Vec<(String, FinCat)> {
    let mut out = posets();
    out.extend(groupoids());
    out.extend(discretes());
    out
}

/// Twenty simplicial spaces, each paired with a category whose nerve it
/// presents: free cells `F(n) × Δ[q]`, nerves of posets and of groupoids.
pub fn adjunction_corpus(outer_dim: usize, trunc_dim: usize) -> Vec<(String, SimpSpace, InternalCat)> {
    let mut out = Vec::new();
    for n in 0..3 {
        for q in 0..2 {
            let f = make_f(n, outer_dim, trunc_dim);
            let x = if q == 0 {
                f
            } else {
                let d = Arc::new(FinSSet::standard(q, trunc_dim));
                f.product(&SimpSpace::constant(d, outer_dim)).expect("products of spaces exist")
            };
            let c = times_simplex(&FinCat::chain(n).to_icat(trunc_dim), q);
            out.push((format!("F({n})xD[{q}]"), x, c));
        }
    }
    let mut cats = posets();
    cats.retain(|(n, _)| n != "chain0" && n != "chain1" && n != "chain2");
    cats.extend(discretes());
    cats.extend(groupoids());
    for (name, c) in cats {
        let ic = c.to_icat(trunc_dim);
        out.push((format!("N({name})"), nerve(&ic, outer_dim), ic));
    }
    out
}

/// Strongly Segal instances: discrete categories on Kan complexes and
/// Grothendieck constructions of groupoid-valued functors.
pub fn strongly_segal_corpus(trunc_dim: usize) -> Result<Vec<(String, InternalCat)>> {
    let d = trunc_dim;
    let mut out = vec![
        ("disc(point)".to_string(), discrete(Arc::new(FinSSet::point(d)))),
        ("disc({a,b})".into(), discrete(Arc::new(FinSSet::discrete(&["a", "b"], d)))),
        ("disc(chaotic{a,b})".into(), discrete(Arc::new(FinSSet::chaotic(&["a", "b"], d)))),
    ];
    for (name, c) in [("chaotic2", FinCat::chaotic(2)), ("z2", FinCat::cyclic_group(2))] {
        let s = SimpCat::from_fincat(&c, d);
        let k = Arc::new(FinSSet::chaotic(&["a", "b"], d));
        let gr = icat_core::simpcat::grothendieck(&s, &GrData::constant(&s, k)?)?;
        out.push((format!("Gr({name}, chaotic{{a,b}})"), gr));
    }
    out.push(("Gr(z2, swap{a,b})".into(), swap_grothendieck(d)?));
    Ok(out)
}

/// `Z/2` acting on two points by the swap.
pub fn swap_grothendieck(trunc_dim: usize) -> Result<InternalCat> {
    let (s, data) = swap_action(trunc_dim)?;
    icat_core::simpcat::grothendieck(&s, &data)
}

pub fn swap_action(trunc_dim: usize) -> Result<(SimpCat, GrData)> {
    let s = SimpCat::from_fincat(&FinCat::cyclic_group(2), trunc_dim);
    let k = Arc::new(FinSSet::discrete(&["a", "b"], trunc_dim));
    let kk = k.clone();
    let data = GrData::from_fn(&s, vec![k], move |_, _, a, g| {
        if g.base().idx == 0 {
            a
        } else {
            kk.vertex(1 - a.base().idx)
        }
    })?;
    Ok((s, data))
}

/// Terminal, representable and corepresentable presheaves on `c`.
pub fn presheaves(c: &InternalCat) -> Result<Vec<(String, Presheaf)>> {
    let mut out = vec![
        ("terminal_right".to_string(), Presheaf::terminal(c, Variance::Right)?),
        ("terminal_left".into(), Presheaf::terminal(c, Variance::Left)?),
    ];
    for v in c.ob.simplices(0) {
        let name = c.ob.expr(v);
        out.push((format!("corep-{name}"), corepresentable(c, v)?));
        out.push((format!("rep-{name}"), representable(c, v)?));
    }
    Ok(out)
}

/// The corpus written by `gen`: fixed families plus `random` seeded cell
/// complexes, all at truncation `trunc_dim`.
pub fn documents(seed: u64, random: usize, trunc_dim: usize) -> Result<Vec<(String, Object)>> {
    let d = trunc_dim;
    let mut out: Vec<(String, Object)> = Vec::new();
    for (name, c) in categories() {
        out.push((format!("icat-{name}"), Object::ICat(c.to_icat(d))));
        out.push((format!("nerve-of-{name}"), Object::SSpace(nerve(&c.to_icat(d), 3))));
        out.push((format!("scat-{name}"), Object::SCat(SimpCat::from_fincat(&c, d))));
    }
    for (name, x, _) in adjunction_corpus(3, d).into_iter().take(6) {
        out.push((format!("cell-{name}"), Object::SSpace(x)));
    }
    out.push(("icat-interval-monoid".into(), Object::ICat(interval_monoid(d))));
    for (name, c) in [("chain1", FinCat::chain(1)), ("chaotic2", FinCat::chaotic(2))] {
        let ic = c.to_icat(d);
        for (pname, p) in presheaves(&ic)? {
            out.push((format!("presheaf-{name}-{pname}"), Object::Presheaf { cat: ic.clone(), presheaf: p }));
        }
    }
    for (name, c) in strongly_segal_corpus(d)? {
        out.push((format!("icat-{name}"), Object::ICat(c)));
    }
    let (s, data) = swap_action(d)?;
    out.push(("grdata-z2-swap".into(), Object::GrData { cat: s, data }));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        let steps = 1 + i % 3;
        let cx = random_complex(&mut rng, steps, 3, d, 6)?;
        out.push((format!("complex-{i}"), Object::SSpace(cx.space)));
    }
    for (name, _) in &mut out {
        *name = name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect();
    }
    Ok(out)
}
