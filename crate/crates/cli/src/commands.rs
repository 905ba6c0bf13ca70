//! One handler per command. Each returns an [`Outcome`]; every FAIL
//! carries a witness in its evidence.

use std::collections::{BTreeMap, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use icat_core::cells::{attach, is_nerve, key_lemma_trial, random_key_lemma_instance};
use icat_core::icat::{
    adjunction_check, nerve, nerve_built, nerve_map, s_adjoint, strongly_segal_check, InternalCat, NerveVerdict,
};
use icat_core::presheaf::{
    alpha_shriek, alpha_shriek_representable_check, bar_resolution, derived_left_kan, validate_presheaf, yoneda_check,
    Variance,
};
use icat_core::simpcat::{equivalence_detection_check, grothendieck, int_reflects_dk_check};
use icat_core::sset::homology::homology;
use icat_core::sset::ops::pi0;
use icat_core::sset::{FinSSet, SMap, Simplex};
use icat_core::sspace::{
    completeness_check, dk_check, ho_category, hoequiv, pi0_mod_equiv, segal_map, SimpSpace,
};
use icat_core::Error;

use crate::doc::{self, Object};
use crate::{corpus, sha256_hex, Bounds, CliError, Options, Outcome, Result, Verdict};

pub const COMMANDS: &[&str] = &[
    "validate",
    "nerve",
    "s-adjoint",
    "homology",
    "pi0",
    "ho",
    "hoequiv",
    "dk-check",
    "attach",
    "is-nerve",
    "yoneda-check",
    "bar",
    "kan-extend",
    "grothendieck",
    "int-check",
    "gen",
    "verify",
    "segal-check",
    "complete-check",
];

fn outcome(verdict: Verdict, evidence: Value, bounds: Bounds) -> Outcome {
    Outcome { verdict, evidence, bounds, seed: None, document: None }
}

fn wrong_inputs(command: &str, want: &str, got: &[&Object]) -> CliError {
    let kinds: Vec<&str> = got.iter().map(|o| o.kind()).collect();
    CliError::Usage(format!("{command} expects {want}, got [{}]", kinds.join(", ")))
}

/// A simplicial space, taking nerves of internal categories.
fn as_space(o: &Object, outer: usize) -> Option<(SimpSpace, Option<&InternalCat>)> {
    match o {
        Object::SSpace(x) => Some((x.clone(), None)),
        Object::ICat(c) => Some((nerve(c, outer), Some(c))),
        _ => None,
    }
}

/// Budget exhaustion is not a failure: report it as UNKNOWN.
fn or_unknown(r: Result<Outcome>, bounds: Bounds) -> Result<Outcome> {
    match r {
        Err(CliError::Core(Error::Budget(what))) => {
            Ok(outcome(Verdict::Unknown, json!({ "reason": format!("budget exhausted: {what}") }), bounds))
        }
        other => other,
    }
}

pub fn dispatch(command: &str, objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let bounds = Bounds { budget: Some(opts.budget()), ..Bounds::default() };
    let r = match command {
        "validate" => validate(objects),
        "nerve" => nerve_cmd(objects, opts),
        "s-adjoint" => s_adjoint_cmd(objects, opts),
        "homology" => homology_cmd(objects, opts),
        "pi0" => pi0_cmd(objects),
        "ho" => ho_cmd(objects, opts),
        "hoequiv" => hoequiv_cmd(objects, opts),
        "dk-check" => dk_cmd(objects, opts),
        "attach" => attach_cmd(objects, opts),
        "is-nerve" => is_nerve_cmd(objects, opts),
        "yoneda-check" => yoneda_cmd(objects, opts),
        "bar" => bar_cmd(objects, opts),
        "kan-extend" => kan_extend_cmd(objects, opts),
        "grothendieck" => grothendieck_cmd(objects, opts),
        "int-check" => int_check_cmd(objects, opts),
        "segal-check" => segal_cmd(objects, opts),
        "complete-check" => complete_cmd(objects, opts),
        other => {
            return Err(CliError::Usage(format!("unknown command {other:?}; commands: {}", COMMANDS.join(", "))));
        }
    };
    or_unknown(r, bounds)
}

fn validate(objects: &[&Object]) -> Result<Outcome> {
    let [o] = objects else { return Err(wrong_inputs("validate", "one document", objects)) };
    let rep = doc::validate_object(o);
    let verdict = if rep.is_valid() { Verdict::Pass } else { Verdict::Fail };
    let ev = json!({ "kind": o.kind(), "violations": rep.violations });
    Ok(outcome(verdict, ev, Bounds::default()))
}

fn nerve_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let [Object::ICat(c)] = objects else { return Err(wrong_inputs("nerve", "an icat", objects)) };
    let x = nerve(c, opts.outer());
    let sizes: Vec<usize> = x.levels().iter().map(|l| l.total_cells()).collect();
    let mut out = outcome(
        Verdict::Pass,
        json!({ "level_cells": sizes }),
        Bounds { outer_dim: Some(opts.outer()), trunc_dim: Some(c.trunc_dim()), ..Bounds::default() },
    );
    out.document = Some(serde_json::to_value(doc::sspace_to_doc(&x)).expect("documents serialize"));
    Ok(out)
}

fn s_adjoint_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let (x, target) = match objects {
        [Object::SSpace(x)] => (x, None),
        [Object::SSpace(x), Object::ICat(c)] => (x, Some(c)),
        _ => return Err(wrong_inputs("s-adjoint", "an sspace and optionally an icat", objects)),
    };
    let bounds = Bounds {
        outer_dim: Some(x.outer_dim()),
        trunc_dim: Some(x.trunc_dim()),
        budget: Some(opts.budget()),
        ..Bounds::default()
    };
    let s = s_adjoint(x, opts.budget())?;
    let cat = s.cat();
    let mut ev = json!({
        "objects": (0..=cat.trunc_dim()).map(|d| cat.ob.num_cells(d)).collect::<Vec<_>>(),
        "arrows": (0..=cat.trunc_dim()).map(|d| cat.ar.num_cells(d)).collect::<Vec<_>>(),
        "presentation": doc::fpcat_to_doc(x, &s.pres),
    });
    let mut verdict = Verdict::Pass;
    if let Some(c) = target {
        let adj = adjunction_check(x, c, opts.budget())?;
        if !adj.bijection {
            verdict = Verdict::Fail;
        }
        ev["adjunction"] = json!(adj);
    }
    let mut out = outcome(verdict, ev, bounds);
    out.document = Some(serde_json::to_value(doc::icat_to_doc(cat)).expect("documents serialize"));
    Ok(out)
}

fn homology_top(x: &FinSSet, opts: &Options) -> usize {
    opts.dim.unwrap_or(2).min(x.trunc_dim().saturating_sub(1))
}

fn groups(h: &[icat_core::sset::homology::AbGroup]) -> Vec<String> {
    h.iter().map(|g| g.to_string()).collect()
}

fn homology_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let [Object::SSet(x)] = objects else { return Err(wrong_inputs("homology", "an sset", objects)) };
    let top = homology_top(x, opts);
    let h = homology(x, top)?;
    let ranks: Vec<usize> = h.iter().map(|g| g.rank).collect();
    let ev = json!({ "groups": groups(&h), "ranks": ranks });
    Ok(outcome(Verdict::Pass, ev, Bounds { trunc_dim: Some(top), ..Bounds::default() }))
}

fn pi0_cmd(objects: &[&Object]) -> Result<Outcome> {
    let [Object::SSet(x)] = objects else { return Err(wrong_inputs("pi0", "an sset", objects)) };
    let p = pi0(x)?;
    let mut comps: Vec<Vec<String>> = vec![Vec::new(); p.count];
    for (v, &l) in p.labels.iter().enumerate() {
        comps[l].push(x.expr(x.vertex(v)));
    }
    Ok(outcome(Verdict::Pass, json!({ "count": p.count, "components": comps }), Bounds::default()))
}

fn ho_evidence(x: &SimpSpace) -> Result<Value> {
    let ho = ho_category(x)?;
    let x1 = x.level(1);
    let morphisms: Vec<Value> = ho
        .classes
        .iter()
        .enumerate()
        .map(|(i, &(a, b, v))| {
            json!({
                "class": i,
                "source": ho.objects[a],
                "target": ho.objects[b],
                "representative": x1.expr(x1.vertex(v)),
                "invertible": ho.is_invertible(i),
            })
        })
        .collect();
    let comp: BTreeMap<String, usize> = ho.comp.iter().map(|(&(f, g), &h)| (format!("{f},{g}"), h)).collect();
    let (iso, count) = ho.iso_classes();
    Ok(json!({
        "objects": ho.objects,
        "morphisms": morphisms,
        "composition": comp,
        "identities": ho.identity,
        "iso_classes": iso,
        "iso_class_count": count,
    }))
}

fn ho_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let [o] = objects else { return Err(wrong_inputs("ho", "an sspace or icat", objects)) };
    let (x, _) = as_space(o, opts.outer()).ok_or_else(|| wrong_inputs("ho", "an sspace or icat", objects))?;
    let bounds = Bounds { outer_dim: Some(x.outer_dim()), ..Bounds::default() };
    Ok(outcome(Verdict::Pass, ho_evidence(&x)?, bounds))
}

fn hoequiv_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let [o] = objects else { return Err(wrong_inputs("hoequiv", "an sspace or icat", objects)) };
    let (x, _) = as_space(o, opts.outer()).ok_or_else(|| wrong_inputs("hoequiv", "an sspace or icat", objects))?;
    let ho = ho_category(&x)?;
    let he = hoequiv(&x, &ho)?;
    let (classes, count) = pi0_mod_equiv(&x, &he)?;
    let x1 = x.level(1);
    let ev = json!({
        "vertices": he.vertices.iter().map(|&v| x1.expr(x1.vertex(v))).collect::<Vec<_>>(),
        "components_kept": he.components.len(),
        "components_total": he.total_components,
        "cells": he.obj.total_cells(),
        "contains_degeneracies": he.contains_degeneracies,
        "pi0_mod_equiv": count,
        "class_of_object": classes,
    });
    let mut out = outcome(Verdict::Pass, ev, Bounds { outer_dim: Some(x.outer_dim()), ..Bounds::default() });
    out.document = Some(serde_json::to_value(doc::sset_to_doc(&he.obj)).expect("documents serialize"));
    Ok(out)
}

fn dk_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let [Object::ICatMap { src, tgt, map }] = objects else {
        return Err(wrong_inputs("dk-check", "an icatmap", objects));
    };
    let (ns, nt) = (nerve_built(src, 2), nerve_built(tgt, 2));
    let rep = dk_check(&nerve_map(map, &ns, &nt), opts.hom(), opts.budget())?;
    let verdict = Verdict::from_core(rep.dk);
    let bounds = Bounds { outer_dim: Some(2), hom_bound: Some(opts.hom()), budget: Some(opts.budget()), ..Bounds::default() };
    let mut ev = json!(rep);
    if verdict == Verdict::Fail {
        let witness = rep
            .fibers
            .iter()
            .find(|f| f.certificate.tier == "FAILED")
            .map(|f| json!({ "pair": f.source_pair, "obstruction": f.certificate.detail }))
            .or_else(|| rep.missed.as_ref().map(|m| json!({ "missed_object": m })));
        ev["witness"] = json!(witness);
    }
    Ok(outcome(verdict, ev, bounds))
}

fn attach_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let [Object::Attachment { cat, spec }] = objects else {
        return Err(wrong_inputs("attach", "an attachment", objects));
    };
    spec.validate(cat)?;
    let degree = opts.dim.unwrap_or(cat.trunc_dim());
    let trial = key_lemma_trial(cat, spec, opts.outer(), degree, opts.budget())?;
    let a = attach(cat, spec)?;
    let verdict = if trial.pass { Verdict::Pass } else { Verdict::Fail };
    let mut ev = json!(trial);
    if !trial.pass {
        ev["witness"] = key_lemma_witness(&trial);
    }
    let bounds = Bounds {
        outer_dim: Some(opts.outer()),
        trunc_dim: Some(degree),
        budget: Some(opts.budget()),
        ..Bounds::default()
    };
    let mut out = outcome(verdict, ev, bounds);
    out.document = Some(serde_json::to_value(doc::icat_to_doc(&a.cat)).expect("documents serialize"));
    Ok(out)
}

fn key_lemma_witness(t: &icat_core::cells::KeyLemmaTrial) -> Value {
    if let Some(m) = t.nerve_pushout.level_iso.iter().position(|b| !b) {
        return json!({ "nerve_pushout_level": m });
    }
    match t.cases.iter().find(|c| !c.bijection) {
        Some(c) => json!({ "b": c.b, "degree": c.degree, "detail": c.detail }),
        None => Value::Null,
    }
}

fn is_nerve_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let [o] = objects else { return Err(wrong_inputs("is-nerve", "an sspace or icat", objects)) };
    let (x, _) = as_space(o, opts.outer()).ok_or_else(|| wrong_inputs("is-nerve", "an sspace or icat", objects))?;
    let bounds = Bounds { outer_dim: Some(x.outer_dim()), budget: Some(opts.budget()), ..Bounds::default() };
    Ok(match is_nerve(&x, opts.budget()) {
        NerveVerdict::Yes(c) => {
            let mut out = outcome(Verdict::Pass, json!({ "is_nerve": "YES" }), bounds);
            out.document = Some(serde_json::to_value(doc::icat_to_doc(&c)).expect("documents serialize"));
            out
        }
        NerveVerdict::No { failures } => {
            let list: Vec<Value> = failures.iter().map(|(m, w)| json!({ "level": m, "witness": w })).collect();
            let ev = json!({ "is_nerve": "NO", "witness": list[0].clone(), "failures": list });
            outcome(Verdict::Fail, ev, bounds)
        }
        NerveVerdict::Unknown(reason) => outcome(Verdict::Unknown, json!({ "is_nerve": "UNKNOWN", "reason": reason }), bounds),
    })
}

fn yoneda_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let [Object::Presheaf { cat, presheaf }] = objects else {
        return Err(wrong_inputs("yoneda-check", "a presheaf", objects));
    };
    let degree = opts.dim.unwrap_or(cat.trunc_dim()).min(cat.trunc_dim());
    let reports = cat
        .ob
        .simplices(0)
        .into_iter()
        .map(|v| yoneda_check(cat, v, presheaf, degree, opts.probe(), opts.budget()))
        .collect::<icat_core::Result<Vec<_>>>()?;
    let failure = reports.iter().find(|r| !r.iso);
    let verdict = match failure {
        Some(_) => Verdict::Fail,
        None if reports.iter().any(|r| r.advisory) => Verdict::Advisory,
        None => Verdict::Pass,
    };
    let mut ev = json!({ "vertices": reports });
    if let Some(r) = failure {
        let d = r.degrees.iter().find(|d| !d.bijective).expect("a failing degree");
        ev["witness"] = json!({ "vertex": r.vertex, "degree": d.degree, "maps": d.maps, "fiber": d.fiber });
    }
    let bounds = Bounds {
        trunc_dim: Some(degree),
        probe_dim: Some(opts.probe()),
        budget: Some(opts.budget()),
        ..Bounds::default()
    };
    Ok(outcome(verdict, ev, bounds))
}

fn bar_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let [Object::Presheaf { cat, presheaf }] = objects else {
        return Err(wrong_inputs("bar", "a right presheaf", objects));
    };
    let outer = opts.outer_dim.unwrap_or(4);
    let bar = bar_resolution(cat, presheaf, None, outer)?;
    let identities = bar.check_extra_degeneracy()?;
    let top = homology_top(&presheaf.carrier, opts).min(2);
    let hb = homology(&bar.realization(), top)?;
    let hf = homology(&presheaf.carrier, top)?;
    let same = hb == hf;
    let verdict = if identities.is_valid() && same { Verdict::Pass } else { Verdict::Fail };
    let mut ev = json!({
        "level_cells": bar.level_sizes(),
        "extra_degeneracy_violations": identities.violations,
        "homology_realization": groups(&hb),
        "homology_presheaf": groups(&hf),
    });
    if verdict == Verdict::Fail {
        ev["witness"] = match identities.violations.first() {
            Some(v) => json!({ "law": v.law }),
            None => {
                let k = hb.iter().zip(&hf).position(|(a, b)| a != b).unwrap_or(0);
                json!({ "degree": k, "realization": hb[k].to_string(), "presheaf": hf[k].to_string() })
            }
        };
    }
    let bounds = Bounds { outer_dim: Some(outer), trunc_dim: Some(top), ..Bounds::default() };
    Ok(outcome(verdict, ev, bounds))
}

fn kan_extend_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let [Object::ICatMap { src, tgt, map }, Object::Presheaf { cat, presheaf }] = objects else {
        return Err(wrong_inputs("kan-extend", "an icatmap and a right presheaf over its source", objects));
    };
    if serde_json::to_value(doc::icat_to_doc(cat)).ok() != serde_json::to_value(doc::icat_to_doc(src)).ok() {
        return Err(CliError::Usage("the presheaf is not over the source of the map".into()));
    }
    if presheaf.variance != Variance::Right {
        return Err(CliError::Usage("kan-extend takes a right presheaf".into()));
    }
    let sh = alpha_shriek(map, src, tgt, presheaf)?;
    let valid = validate_presheaf(&sh.presheaf, tgt);
    let checks = src
        .ob
        .simplices(0)
        .into_iter()
        .map(|p| alpha_shriek_representable_check(map, src, tgt, p))
        .collect::<icat_core::Result<Vec<_>>>()?;
    let outer = opts.outer();
    let top = homology_top(&presheaf.carrier, opts).min(2);
    let derived = derived_left_kan(map, src, tgt, presheaf, outer)?;
    let hd = homology(&derived.realization(), top)?;
    let hs = homology(&sh.presheaf.carrier, top)?;
    let bad = checks.iter().find(|c| !c.iso);
    let verdict = if valid.is_valid() && bad.is_none() { Verdict::Pass } else { Verdict::Fail };
    let mut ev = json!({
        "violations": valid.violations,
        "representables": checks,
        "homology_derived": groups(&hd),
        "homology_strict": groups(&hs),
    });
    if let Some(c) = bad {
        ev["witness"] = json!({ "vertex": c.vertex, "image": c.image, "cells": c.cells });
    } else if let Some(v) = valid.violations.first() {
        ev["witness"] = json!({ "law": v.law, "at": v.witness });
    }
    let bounds = Bounds { outer_dim: Some(outer), trunc_dim: Some(top), ..Bounds::default() };
    let mut out = outcome(verdict, ev, bounds);
    out.document = Some(serde_json::to_value(doc::presheaf_to_doc(tgt, &sh.presheaf)).expect("documents serialize"));
    Ok(out)
}

fn grothendieck_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let [Object::GrData { cat, data }] = objects else {
        return Err(wrong_inputs("grothendieck", "a grdata document", objects));
    };
    let gr = match grothendieck(cat, data) {
        Ok(g) => g,
        Err(Error::Invalid(w)) | Err(Error::InvalidMap(w)) => {
            return Ok(outcome(Verdict::Fail, json!({ "witness": w }), Bounds::default()));
        }
        Err(e) => return Err(e.into()),
    };
    let ss = strongly_segal_check(&gr, opts.probe(), opts.hom(), opts.budget())?;
    let ev = json!({
        "objects": gr.ob.total_cells(),
        "arrows": gr.ar.total_cells(),
        "strongly_segal": ss,
    });
    let bounds = Bounds { probe_dim: Some(ss.probe_dim), hom_bound: Some(opts.hom()), ..Bounds::default() };
    let mut out = outcome(Verdict::Pass, ev, bounds);
    out.document = Some(serde_json::to_value(doc::icat_to_doc(&gr)).expect("documents serialize"));
    Ok(out)
}

fn int_check_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let bounds = Bounds {
        probe_dim: Some(opts.probe()),
        hom_bound: Some(opts.hom()),
        budget: Some(opts.budget()),
        ..Bounds::default()
    };
    match objects {
        [Object::SCat(c)] => {
            let mut rows = Vec::new();
            for a in 0..c.num_objects() {
                for b in 0..c.num_objects() {
                    for f in c.maps[a][b].simplices(0) {
                        rows.push(equivalence_detection_check(c, a, b, f, opts.probe())?);
                    }
                }
            }
            let bad = rows.iter().find(|r| !r.agree);
            let verdict = match bad {
                Some(r) if !r.advisory => Verdict::Fail,
                Some(_) => Verdict::Advisory,
                None if rows.iter().any(|r| r.advisory) => Verdict::Advisory,
                None => Verdict::Pass,
            };
            let mut ev = json!({ "arrows": rows });
            if let Some(r) = bad {
                ev["witness"] = json!({ "arrow": r.arrow, "ho_invertible": r.ho_invertible, "in_hoequiv": r.in_hoequiv });
            }
            Ok(outcome(verdict, ev, bounds))
        }
        [Object::SCatMap { src, tgt, functor }] => {
            let r = int_reflects_dk_check(functor, src, tgt, opts.probe(), opts.hom(), opts.budget())?;
            let verdict = match (r.agree, r.advisory) {
                (true, false) => Verdict::Pass,
                (false, false) => Verdict::Fail,
                _ => Verdict::Advisory,
            };
            let mut ev = json!(r);
            if !r.agree {
                ev["witness"] = json!({
                    "simpcat": [r.fully_faithful, r.simpcat_dk],
                    "internal": [r.internal_fully_faithful, r.internal_dk],
                });
            }
            Ok(outcome(verdict, ev, bounds))
        }
        _ => Err(wrong_inputs("int-check", "an scat or scatmap", objects)),
    }
}

/// A simplex hit twice or missed by `f`, if it is not a bijection.
fn bijection_failure(f: &SMap) -> Option<String> {
    let (src, tgt) = (f.src(), f.tgt());
    for k in 0..=src.trunc_dim() {
        let mut seen: HashMap<Simplex, Simplex> = HashMap::new();
        for y in src.simplices(k) {
            let z = f.apply(y);
            if let Some(prev) = seen.insert(z, y) {
                return Some(format!("{} and {} both map to {}", src.expr(prev), src.expr(y), tgt.expr(z)));
            }
        }
        if let Some(z) = tgt.simplices(k).into_iter().find(|z| !seen.contains_key(z)) {
            return Some(format!("{} is not in the image", tgt.expr(z)));
        }
    }
    None
}

fn segal_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let [o] = objects else { return Err(wrong_inputs("segal-check", "an sspace or icat", objects)) };
    let (x, cat) = as_space(o, opts.outer()).ok_or_else(|| wrong_inputs("segal-check", "an sspace or icat", objects))?;
    let top = x.outer_dim().min(3);
    let mut levels = Vec::new();
    let mut witness = None;
    for n in 0..=top {
        let f = segal_map(&x, n)?;
        let fail = bijection_failure(&f);
        if let (Some(w), None) = (&fail, &witness) {
            witness = Some(json!({ "level": n, "simplex": w }));
        }
        levels.push(json!({ "n": n, "iso": fail.is_none() }));
    }
    let mut ev = json!({ "segal_maps": levels });
    let mut bounds = Bounds { outer_dim: Some(top), ..Bounds::default() };
    if let Some(c) = cat {
        let ss = strongly_segal_check(c, opts.probe(), opts.hom(), opts.budget())?;
        if witness.is_none() {
            if let Some((map, horn)) = &ss.failure {
                witness = Some(json!({ "map": map, "horn": horn }));
            }
        }
        bounds.probe_dim = Some(ss.probe_dim);
        bounds.hom_bound = Some(opts.hom());
        ev["strongly_segal"] = json!(ss);
    }
    let verdict = if witness.is_some() { Verdict::Fail } else { Verdict::Pass };
    if let Some(w) = witness {
        ev["witness"] = w;
    }
    Ok(outcome(verdict, ev, bounds))
}

fn complete_cmd(objects: &[&Object], opts: &Options) -> Result<Outcome> {
    let [o] = objects else { return Err(wrong_inputs("complete-check", "an sspace or icat", objects)) };
    let (x, _) = as_space(o, opts.outer()).ok_or_else(|| wrong_inputs("complete-check", "an sspace or icat", objects))?;
    let bounds = Bounds { hom_bound: Some(opts.hom()), budget: Some(opts.budget()), ..Bounds::default() };
    let cert = match completeness_check(&x, opts.hom(), opts.budget()) {
        Ok(c) => c,
        Err(Error::Invalid(reason)) => return Ok(outcome(Verdict::Unknown, json!({ "reason": reason }), bounds)),
        Err(e) => return Err(e.into()),
    };
    let s = cert.summary();
    let verdict = match s.tier.as_str() {
        "ISO" | "STRONG" => Verdict::Pass,
        "FAILED" => Verdict::Fail,
        _ => Verdict::Unknown,
    };
    let mut ev = json!({ "certificate": s });
    if verdict == Verdict::Fail {
        ev["witness"] = json!(s.detail);
    }
    Ok(outcome(verdict, ev, bounds))
}

/// Instance parameters for random key-lemma trials.
pub const KEY_LEMMA_MAX_N: usize = 2;
pub const KEY_LEMMA_MAX_CELLS: usize = 6;
pub const KEY_LEMMA_OUTER: usize = 3;

/// `verify key-lemma`: one independent stream per trial, so the report
/// does not depend on scheduling.
pub fn verify_key_lemma(opts: &Options) -> Result<Outcome> {
    let trials = opts.trials.unwrap_or(100);
    let seed = opts.seed.unwrap_or(42);
    let dim = opts.dim.unwrap_or(4);
    let budget = opts.budget();
    let rows: Vec<Value> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let (c, spec) = match random_key_lemma_instance(&mut rng, dim, KEY_LEMMA_MAX_N, KEY_LEMMA_MAX_CELLS) {
                Ok(x) => x,
                Err(e) => return json!({ "trial": i, "pass": false, "error": e.to_string() }),
            };
            let text = doc::to_text(&serde_json::to_value(doc::attachment_to_doc(&c, &spec)).expect("serializes"));
            let hash = sha256_hex(text.as_bytes());
            match key_lemma_trial(&c, &spec, KEY_LEMMA_OUTER, dim, budget) {
                Ok(t) => {
                    let mut row = json!({
                        "trial": i,
                        "instance": hash,
                        "n": t.n,
                        "k_cells": t.k_cells,
                        "l_cells": t.l_cells,
                        "pass": t.pass,
                    });
                    if !t.pass {
                        row["witness"] = key_lemma_witness(&t);
                    }
                    row
                }
                Err(e) => json!({ "trial": i, "instance": hash, "pass": false, "error": e.to_string() }),
            }
        })
        .collect();
    let failures = rows.iter().filter(|r| r["pass"] != Value::Bool(true)).count();
    let verdict = if failures == 0 { Verdict::Pass } else { Verdict::Fail };
    let mut ev = json!({ "trials": trials, "failures": failures, "instances": rows });
    if let Some(w) = rows.iter().find(|r| r["pass"] != Value::Bool(true)) {
        ev["witness"] = w.clone();
    }
    let bounds = Bounds {
        trunc_dim: Some(dim),
        outer_dim: Some(KEY_LEMMA_OUTER),
        budget: Some(budget),
        trials: Some(trials),
        ..Bounds::default()
    };
    Ok(Outcome { verdict, evidence: ev, bounds, seed: Some(seed), document: None })
}

/// `gen`: the seeded corpus; documents go to the `--out` directory.
pub fn gen(opts: &Options) -> Result<Outcome> {
    let seed = opts.seed.unwrap_or(42);
    let random = opts.trials.unwrap_or(5);
    let dim = opts.dim.unwrap_or(2);
    let docs = corpus::documents(seed, random, dim)?;
    let mut files = Vec::new();
    let mut invalid = Vec::new();
    if let Some(dir) = &opts.out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.display().to_string(), e))?;
    }
    for (name, o) in &docs {
        let rep = doc::validate_object(o);
        if !rep.is_valid() {
            invalid.push(json!({ "name": name, "law": rep.first_law() }));
        }
        let text = doc::to_text(&doc::to_value(o));
        if let Some(dir) = &opts.out {
            let path = dir.join(format!("{name}.json"));
            std::fs::write(&path, &text).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        }
        files.push(json!({ "name": name, "kind": o.kind(), "sha256": sha256_hex(text.as_bytes()) }));
    }
    let verdict = if invalid.is_empty() { Verdict::Pass } else { Verdict::Fail };
    let mut ev = json!({ "count": files.len(), "files": files });
    if let Some(w) = invalid.first() {
        ev["witness"] = w.clone();
    }
    let bounds = Bounds { trunc_dim: Some(dim), trials: Some(random), ..Bounds::default() };
    Ok(Outcome { verdict, evidence: ev, bounds, seed: Some(seed), document: None })
}
