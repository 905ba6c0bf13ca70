//! One line per acceptance criterion; the test fails if any criterion does.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use icat_cli::{corpus, run, Options, Verdict};
use icat_core::cells::{is_nerve, random_complex};
use icat_core::icat::{
    adjunction_check, all_icat_maps, interval_monoid, nerve, nerve_built, nerve_map, strongly_segal_check, FinCat,
    NerveVerdict,
};
use icat_core::presheaf::{
    alpha_shriek_representable_check, arrow_equivalence_check, bar_resolution, yoneda_check, Variance,
};
use icat_core::simpcat::{int_reflects_dk_check, internalize_built, SimpCat, SimpFunctor};
use icat_core::sset::homology::{homology, AbGroup};
use icat_core::sset::FinSSet;
use icat_core::sspace::{completeness_check, dk_check, make_f, make_g, segal_map, Verdict as Dk};

type Check = Result<String, String>;

const BUDGET: u64 = 1_000_000;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn key_lemma() -> Check {
    let start = Instant::now();
    let opts = Options { trials: Some(100), seed: Some(42), dim: Some(4), ..Options::default() };
    let rep = run("verify", &["key-lemma".to_string()], &opts).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let rows = rep.evidence["instances"].as_array().cloned().unwrap_or_default();
    ensure(rows.len() == 100, format!("{} instances", rows.len()))?;
    ensure(rows.iter().all(|r| r["instance"].as_str().map(str::len) == Some(64)), "instance hash missing")?;
    if let Some(bad) = rows.iter().find(|r| r["pass"] != true) {
        return Err(format!("trial failed: {bad}"));
    }
    ensure(rep.verdict == Verdict::Pass, "verdict")?;
    ensure(elapsed < Duration::from_secs(120), format!("took {elapsed:?}"))?;
    Ok(format!("100/100 trials in {:.1}s", elapsed.as_secs_f64()))
}

fn nerve_criterion() -> Check {
    let mut complexes = 0;
    for seed in 0..12u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let steps = (seed % 6) as usize;
        let cx = random_complex(&mut rng, steps, 3, 2, 6).map_err(|e| e.to_string())?;
        ensure(matches!(cx.is_nerve(), NerveVerdict::Yes(_)), format!("seed {seed}: colimit side"))?;
        ensure(matches!(is_nerve(&cx.space, BUDGET), NerveVerdict::Yes(_)), format!("seed {seed}: presentation side"))?;
        complexes += 1;
    }
    let (g2, _) = make_g(2, 3, 2);
    match is_nerve(&g2, BUDGET) {
        NerveVerdict::No { failures } => {
            let spine = failures.iter().find(|(m, w)| *m == 2 && w.contains("spine"));
            let (_, w) = spine.ok_or_else(|| format!("no spine witness: {failures:?}"))?;
            Ok(format!("{complexes} complexes YES; G(2) NO: {w}"))
        }
        other => Err(format!("G(2): {other:?}")),
    }
}

fn adjunction() -> Check {
    let items = corpus::adjunction_corpus(2, 1);
    ensure(items.len() == 20, format!("corpus has {} objects", items.len()))?;
    let mut pairs = 0;
    for (xn, x, _) in &items {
        for (cn, _, c) in &items {
            let r = adjunction_check(x, c, BUDGET).map_err(|e| format!("{xn} -> {cn}: {e}"))?;
            ensure(r.bijection, format!("{xn} -> {cn}: {} functors vs {} maps", r.functors, r.space_maps))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, natural bijection on each"))
}

fn segal() -> Check {
    let cats = corpus::categories();
    for (name, c) in &cats {
        let x = nerve(&c.to_icat(2), 3);
        for n in 0..=3 {
            let f = segal_map(&x, n).map_err(|e| e.to_string())?;
            ensure(f.is_iso(), format!("segal map of N({name}) at {n}"))?;
        }
    }
    let strong = corpus::strongly_segal_corpus(2).map_err(|e| e.to_string())?;
    for (name, c) in &strong {
        let r = strongly_segal_check(c, 2, 2, BUDGET).map_err(|e| e.to_string())?;
        ensure(r.pass, format!("{name}: {:?}", r.failure))?;
    }
    let r = strongly_segal_check(&interval_monoid(2), 2, 2, BUDGET).map_err(|e| e.to_string())?;
    let (map, horn) = r.failure.ok_or("interval monoid passed")?;
    ensure(!r.pass, "interval monoid passed")?;
    Ok(format!(
        "{} nerves iso n<=3; {} strongly Segal PASS; interval_monoid FAIL at {map} horn Λ^{}_{}",
        cats.len(),
        strong.len(),
        horn.m,
        horn.k
    ))
}

fn completeness() -> Check {
    let tier = |x: icat_core::sspace::SimpSpace| completeness_check(&x, 2, BUDGET).map(|c| c.summary()).map_err(|e| e.to_string());
    let f0 = tier(make_f(0, 3, 2))?;
    ensure(f0.tier == "ISO", format!("F(0): {}", f0.tier))?;
    for (name, c) in corpus::posets() {
        let s = tier(nerve(&c.to_icat(2), 3))?;
        ensure(s.tier == "ISO", format!("N({name}): {}", s.tier))?;
    }
    let s = tier(nerve(&FinCat::chaotic(2).to_icat(2), 3))?;
    ensure(s.tier == "FAILED" && s.detail == "π0 2 vs 4", format!("N(I[1]): {} {}", s.tier, s.detail))?;
    Ok(format!("F(0) and poset nerves ISO; N(I[1]) FAILED: {}", s.detail))
}

fn dwyer_kan() -> Check {
    let p = FinCat::chain(0);
    let i1 = FinCat::chaotic(2);
    // (name, C, D, object map, arrow map, fully faithful, DK)
    let suite = [
        ("id", i1.clone(), i1.clone(), vec![0, 1], vec![0, 1, 2, 3], Dk::Yes, Dk::Yes),
        ("[0]->I[1]", p.clone(), i1.clone(), vec![0], vec![0], Dk::Yes, Dk::Yes),
        ("[0]+[0]->I[1]", FinCat::discrete(2), i1.clone(), vec![0, 1], vec![0, 3], Dk::No, Dk::No),
        ("[1]->[0]", FinCat::chain(1), p.clone(), vec![0, 0], vec![0, 0, 0], Dk::No, Dk::No),
    ];
    for (name, c, d, ob, ar, ff, dk) in suite {
        let (sc, sd) = (SimpCat::from_fincat(&c, 1), SimpCat::from_fincat(&d, 1));
        let f = SimpFunctor::from_functor(&c, &d, &ob, &ar, 1);
        let (bc, bd) = (internalize_built(&sc), internalize_built(&sd));
        let g = f.internalize(&bc, &bd);
        let (nc, nd) = (nerve_built(&bc.cat, 2), nerve_built(&bd.cat, 2));
        let rep = dk_check(&nerve_map(&g, &nc, &nd), 0, BUDGET).map_err(|e| e.to_string())?;
        ensure((rep.fully_faithful, rep.dk) == (ff, dk), format!("{name}: dk_check {:?}/{:?}", rep.fully_faithful, rep.dk))?;
        let ir = int_reflects_dk_check(&f, &sc, &sd, 1, 0, BUDGET).map_err(|e| e.to_string())?;
        ensure(ir.agree && ir.fully_faithful == ff && ir.simpcat_dk == dk, format!("{name}: int_reflects {ir:?}"))?;
    }
    Ok("4/4 maps match hand truth; int_reflects_dk_check agrees".into())
}

fn presheaves() -> Check {
    let cats = [
        ("[1]", FinCat::chain(1)),
        ("[2]", FinCat::chain(2)),
        ("I[1]", FinCat::chaotic(2)),
        ("Z/2", FinCat::cyclic_group(2)),
        ("span", corpus::posets()[4].1.clone()),
    ];
    let mut pairs = 0;
    for (cn, c) in &cats {
        let ic = c.to_icat(2);
        for (pn, f) in corpus::presheaves(&ic).map_err(|e| e.to_string())? {
            for v in ic.ob.simplices(0) {
                let r = yoneda_check(&ic, v, &f, 2, 2, BUDGET).map_err(|e| e.to_string())?;
                ensure(r.iso, format!("yoneda {cn} {pn} at {}", r.vertex))?;
                pairs += 1;
            }
        }
    }
    let mut shrieks = 0;
    for (c, d) in [(FinCat::chain(1), FinCat::chain(2)), (FinCat::chaotic(2), FinCat::chain(0)), (FinCat::chain(1), FinCat::chaotic(2))] {
        let (ic, id) = (c.to_icat(2), d.to_icat(2));
        for alpha in all_icat_maps(&ic, &id, BUDGET).ok_or("functor budget")? {
            for p in ic.ob.simplices(0) {
                let r = alpha_shriek_representable_check(&alpha, &ic, &id, p).map_err(|e| e.to_string())?;
                ensure(r.iso, format!("α_! h^{} is not h^{}", r.vertex, r.image))?;
                shrieks += 1;
            }
        }
    }
    let mut bars = 0;
    for (cn, c) in &cats[..4] {
        let ic = c.to_icat(3);
        for (pn, f) in corpus::presheaves(&ic).map_err(|e| e.to_string())? {
            if f.variance != Variance::Right {
                continue;
            }
            let b = bar_resolution(&ic, &f, None, 4).map_err(|e| e.to_string())?;
            let rep = b.check_extra_degeneracy().map_err(|e| e.to_string())?;
            ensure(rep.is_valid(), format!("bar {cn} {pn}: {:?}", rep.first_law()))?;
            let hb = homology(&b.realization(), 2).map_err(|e| e.to_string())?;
            let hf = homology(&f.carrier, 2).map_err(|e| e.to_string())?;
            ensure(hb == hf, format!("bar {cn} {pn}: {hb:?} vs {hf:?}"))?;
            bars += 1;
        }
    }
    Ok(format!("{pairs} Yoneda pairs iso; {shrieks} α_! h^p = h^(u p); {bars} bar objects exact at levels <= 4"))
}

fn pushforward() -> Check {
    let mut arrows = 0;
    for (name, c) in corpus::groupoids() {
        for r in arrow_equivalence_check(&c.to_icat(1), 1, 1, BUDGET).map_err(|e| e.to_string())? {
            let certified = r.fibers.iter().all(|f| f.certificate.tier == "ISO" || f.certificate.tier == "STRONG");
            ensure(r.agrees && r.in_hoequiv && certified, format!("{name} {}: {r:?}", r.arrow))?;
            arrows += 1;
        }
    }
    let reps = arrow_equivalence_check(&FinCat::chain(1).to_icat(1), 1, 1, BUDGET).map_err(|e| e.to_string())?;
    let u = reps.iter().find(|r| r.arrow == "01").ok_or("no arrow 01 in [1]")?;
    ensure(!u.in_hoequiv && u.pushforward == Dk::No && u.agrees, format!("[1] u: {u:?}"))?;
    Ok(format!("{arrows} groupoid arrows agree; u in [1] fails both sides"))
}

fn homology_oracle() -> Check {
    let b = homology(&FinSSet::boundary(2, 3), 1).map_err(|e| e.to_string())?;
    ensure(b == vec![AbGroup::free(1), AbGroup::free(1)], format!("∂Δ[2]: {b:?}"))?;
    for n in 0..=4 {
        let h = homology(&FinSSet::standard(n, 3), 2).map_err(|e| e.to_string())?;
        ensure(h == vec![AbGroup::free(1), AbGroup::zero(), AbGroup::zero()], format!("Δ[{n}]: {h:?}"))?;
    }
    Ok("∂Δ[2] = (1,1); Δ[n] = (1,0,0) for n <= 4".into())
}

fn determinism() -> Check {
    let opts = Options { trials: Some(20), seed: Some(7), dim: Some(3), ..Options::default() };
    let key = || run("verify", &["key-lemma".to_string()], &opts).map(|r| r.to_text()).map_err(|e| e.to_string());
    ensure(key()? == key()?, "verify key-lemma differs between runs")?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let gen_opts = Options { seed: Some(11), trials: Some(3), out: Some(dir.path().to_path_buf()), ..Options::default() };
    let gen = || run("gen", &[], &gen_opts).map(|r| r.to_text()).map_err(|e| e.to_string());
    ensure(gen()? == gen()?, "gen differs between runs")?;
    let file = dir.path().join("icat-interval-monoid.json").display().to_string();
    let check = || run("segal-check", std::slice::from_ref(&file), &Options::default()).map(|r| r.to_text()).map_err(|e| e.to_string());
    ensure(check()? == check()?, "segal-check differs between runs")?;
    let other = Options { seed: Some(8), ..opts.clone() };
    let changed = run("verify", &["key-lemma".to_string()], &other).map_err(|e| e.to_string())?.to_text();
    ensure(changed != key()?, "seed has no effect")?;
    Ok("byte-identical reports for equal seeds".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("1 key lemma", key_lemma),
        ("2 nerve criterion", nerve_criterion),
        ("3 adjunction", adjunction),
        ("4 segal", segal),
        ("5 completeness", completeness),
        ("6 dwyer-kan", dwyer_kan),
        ("7 presheaves", presheaves),
        ("8 pushforward lemma", pushforward),
        ("9 homology oracle", homology_oracle),
        ("10 determinism", determinism),
    ];
    let mut failed = Vec::new();
    println!();
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match &result {
            Ok(msg) => println!("PASS  {name}: {msg} ({secs:.1}s)"),
            Err(msg) => {
                println!("FAIL  {name}: {msg} ({secs:.1}s)");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn g2_is_not_a_nerve_by_counting() {
    // monotone maps [m] -> [2] versus maps into the spine [1] ∪_[0] [1]
    let (g2, _) = make_g(2, 2, 1);
    let s = icat_core::icat::s_adjoint(&g2, BUDGET).unwrap();
    let n = nerve(s.cat(), 2);
    for m in 0..=2 {
        let monotone = (m + 3) * (m + 2) / 2;
        assert_eq!(n.level(m).num_cells(0), monotone);
        assert_eq!(g2.level(m).num_cells(0), 2 * (m + 2) - 1);
    }
}
