use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sset::{Built, SMap, Simplex};
use crate::sspace::{count_sspace_maps, SSMap, SimpSpace};

use super::maps::all_icat_maps;
use super::nerve::{nerve_built, nerve_map};
use super::rewrite::{Completion, RewriteSystem, Word};
use super::{build_icat, BuiltCat, CategoryModel, ICatMap, InternalCat};

/// Answer to a word-equality query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WordEq {
    ProvedEqual,
    ProvedDistinct,
    Unknown,
}

/// The presented category at one inner degree.
#[derive(Clone, Debug)]
pub struct PresLevel {
    pub objects: Vec<Simplex>,
    /// edges that are not outer degeneracies
    pub generators: Vec<Simplex>,
    /// `(source, target)` object positions per generator
    pub ends: Vec<(usize, usize)>,
    pub relations: Vec<(Word, Word)>,
    pub system: RewriteSystem,
    pub completion: Completion,
    gen_pos: HashMap<Simplex, u32>,
    ob_pos: HashMap<Simplex, usize>,
}

impl PresLevel {
    pub fn letter(&self, e: Simplex) -> Option<u32> {
        self.gen_pos.get(&e).copied()
    }

    /// Object position of an object simplex.
    pub fn object(&self, x: Simplex) -> usize {
        self.ob_pos[&x]
    }

    pub fn normal_form(&self, w: &[u32]) -> Word {
        self.system.reduce(w)
    }

    pub fn is_path(&self, from: usize, w: &[u32]) -> bool {
        let mut at = from;
        for &g in w {
            let (s, t) = self.ends[g as usize];
            if s != at {
                return false;
            }
            at = t;
        }
        true
    }

    pub fn end_of(&self, from: usize, w: &[u32]) -> usize {
        w.last().map_or(from, |&g| self.ends[g as usize].1)
    }

    /// Decide equality of two paths out of object `from`.
    pub fn equal(&self, from: usize, a: &[u32], b: &[u32]) -> WordEq {
        if self.end_of(from, a) != self.end_of(from, b) {
            return WordEq::ProvedDistinct;
        }
        let (x, y) = (self.normal_form(a), self.normal_form(b));
        if x == y {
            WordEq::ProvedEqual
        } else if self.completion == Completion::Confluent {
            WordEq::ProvedDistinct
        } else {
            WordEq::Unknown
        }
    }

    /// All irreducible paths `(source, word)`; fails once more than
    /// `cap` are found (the category may be infinite).
    pub fn arrows(&self, cap: usize) -> Result<Vec<(usize, Word)>> {
        let mut out: Vec<(usize, Word)> = (0..self.objects.len()).map(|x| (x, vec![])).collect();
        let mut by_src: Vec<Vec<u32>> = vec![Vec::new(); self.objects.len()];
        for (g, &(s, _)) in self.ends.iter().enumerate() {
            by_src[s].push(g as u32);
        }
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (x, w) in &frontier {
                for &g in &by_src[self.end_of(*x, w)] {
                    let mut w2 = w.clone();
                    w2.push(g);
                    if self.system.suffix_irreducible(&w2) {
                        next.push((*x, w2));
                    }
                }
            }
            out.extend(next.iter().cloned());
            if out.len() > cap {
                return Err(Error::Budget(format!("more than {cap} arrows; the presented category may be infinite")));
            }
            frontier = next;
        }
        Ok(out)
    }
}

/// `S(X)` as a presentation, one level per inner degree.
#[derive(Clone, Debug)]
pub struct FinPresCat {
    pub levels: Vec<PresLevel>,
}

/// Edges of `X_1` lying in the image of the outer degeneracy.
fn outer_degenerate(x: &SimpSpace, k: usize) -> HashSet<Simplex> {
    let s0 = x.degeneracy(0, 0);
    x.level(0).simplices(k).into_iter().map(|v| s0.apply(v)).collect()
}

impl FinPresCat {
    /// Present `S(X)` degreewise: the free category on `X_1 ⇉ X_0` modulo
    /// one relation per 2-simplex.
    pub fn present(x: &SimpSpace, budget: u64) -> Result<FinPresCat> {
        let mut levels = Vec::new();
        for k in 0..=x.trunc_dim() {
            let objects = x.level(0).simplices(k);
            let ob_pos: HashMap<Simplex, usize> = objects.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            let degen = outer_degenerate(x, k);
            let mut generators = Vec::new();
            let mut ends = Vec::new();
            let mut gen_pos = HashMap::new();
            if x.outer_dim() >= 1 {
                for e in x.level(1).simplices(k) {
                    if degen.contains(&e) {
                        continue;
                    }
                    gen_pos.insert(e, generators.len() as u32);
                    generators.push(e);
                    ends.push((ob_pos[&x.source().apply(e)], ob_pos[&x.target().apply(e)]));
                }
            }
            let word = |e: Simplex| -> Word { gen_pos.get(&e).map(|&g| vec![g]).unwrap_or_default() };
            let mut relations = Vec::new();
            if x.outer_dim() >= 2 {
                for t in x.level(2).simplices(k) {
                    let mut lhs = word(x.face(2, 2).apply(t));
                    lhs.extend(word(x.face(2, 0).apply(t)));
                    let rhs = word(x.face(2, 1).apply(t));
                    if lhs != rhs {
                        relations.push((lhs, rhs));
                    }
                }
            }
            relations.sort();
            relations.dedup();
            let (system, completion) = RewriteSystem::complete(&relations, budget);
            levels.push(PresLevel { objects, generators, ends, relations, system, completion, gen_pos, ob_pos });
        }
        Ok(FinPresCat { levels })
    }

    pub fn is_complete(&self) -> bool {
        self.levels.iter().all(|l| l.completion == Completion::Confluent)
    }
}

/// An arrow of `S(X)`: source object and a normal-form word of edges.
pub type SArrow = (Simplex, Vec<Simplex>);

struct SModel<'a> {
    x: &'a SimpSpace,
    pres: &'a FinPresCat,
    arrows: Vec<Vec<SArrow>>,
}

impl SModel<'_> {
    fn normalize(&self, k: usize, src: Simplex, letters: &[Simplex]) -> SArrow {
        let lv = &self.pres.levels[k];
        let w: Word = letters.iter().filter_map(|&e| lv.letter(e)).collect();
        let nf = lv.normal_form(&w);
        (src, nf.iter().map(|&g| lv.generators[g as usize]).collect())
    }
}

impl CategoryModel for SModel<'_> {
    type Ob = Simplex;
    type Ar = SArrow;
    fn objects(&self, d: usize) -> Vec<Simplex> {
        self.pres.levels[d].objects.clone()
    }
    fn arrows(&self, d: usize) -> Vec<SArrow> {
        self.arrows[d].clone()
    }
    fn ob_face(&self, _d: usize, i: usize, x: &Simplex) -> Simplex {
        self.x.level(0).face(*x, i)
    }
    fn ob_degeneracy(&self, _d: usize, j: usize, x: &Simplex) -> Simplex {
        x.degeneracy(j)
    }
    fn ar_face(&self, d: usize, i: usize, f: &SArrow) -> SArrow {
        let l1 = self.x.level(1);
        let letters: Vec<Simplex> = f.1.iter().map(|&e| l1.face(e, i)).collect();
        self.normalize(d - 1, self.x.level(0).face(f.0, i), &letters)
    }
    fn ar_degeneracy(&self, d: usize, j: usize, f: &SArrow) -> SArrow {
        let letters: Vec<Simplex> = f.1.iter().map(|e| e.degeneracy(j)).collect();
        self.normalize(d + 1, f.0.degeneracy(j), &letters)
    }
    fn source(&self, _d: usize, f: &SArrow) -> Simplex {
        f.0
    }
    fn target(&self, _d: usize, f: &SArrow) -> Simplex {
        f.1.last().map_or(f.0, |&e| self.x.target().apply(e))
    }
    fn identity(&self, _d: usize, x: &Simplex) -> SArrow {
        (*x, vec![])
    }
    fn compose(&self, d: usize, f: &SArrow, g: &SArrow) -> SArrow {
        let mut letters = f.1.clone();
        letters.extend(g.1.iter().copied());
        self.normalize(d, f.0, &letters)
    }
    fn ob_name(&self, x: &Simplex) -> String {
        self.x.level(0).expr(*x)
    }
    fn ar_name(&self, f: &SArrow) -> String {
        if f.1.is_empty() {
            return format!("id_{}", self.x.level(0).expr(f.0));
        }
        let l1 = self.x.level(1);
        f.1.iter().map(|&e| l1.expr(e)).collect::<Vec<_>>().join("·")
    }
}

/// `S(X)` with its presentation.
pub struct SAdjoint {
    pub pres: FinPresCat,
    pub built: BuiltCat<Simplex, SArrow>,
}

impl SAdjoint {
    pub fn cat(&self) -> &InternalCat {
        &self.built.cat
    }
}

/// Maximum number of arrows per degree before giving up.
const ARROW_CAP: usize = 20_000;

/// Compute `S(X)`; fails with a budget error if some degree's word
/// problem is not settled by completion or the category is too large.
pub fn s_adjoint(x: &SimpSpace, budget: u64) -> Result<SAdjoint> {
    let pres = FinPresCat::present(x, budget)?;
    if let Some(k) = pres.levels.iter().position(|l| l.completion != Completion::Confluent) {
        return Err(Error::Budget(format!("word problem unsettled at inner degree {k}")));
    }
    let mut arrows = Vec::new();
    for lv in &pres.levels {
        let a = lv.arrows(ARROW_CAP)?;
        arrows.push(
            a.into_iter()
                .map(|(s, w)| (lv.objects[s], w.iter().map(|&g| lv.generators[g as usize]).collect()))
                .collect(),
        );
    }
    let model = SModel { x, pres: &pres, arrows };
    let built = build_icat(&model, x.trunc_dim());
    drop(model);
    Ok(SAdjoint { pres, built })
}

/// The unit `X -> N(S(X))` over the outer truncation of `X`.
pub fn unit_map(x: &SimpSpace, s: &SAdjoint) -> SSMap {
    let mm = x.outer_dim();
    let n = nerve_built(s.cat(), mm);
    let arrow = |k: usize, e: Simplex| -> Simplex {
        let lv = &s.pres.levels[k];
        let src = x.source().apply(e);
        let w: Vec<Simplex> = lv.letter(e).map(|g| vec![lv.generators[g as usize]]).unwrap_or_default();
        s.built.ar_keys.lookup(k, &(src, w))
    };
    let levels = (0..=mm)
        .map(|m| {
            let xm = x.level(m);
            let spine: Vec<SMap> = (0..m).map(|i| x.edge_map(m, i, i + 1)).collect();
            let images = (0..=x.trunc_dim())
                .map(|k| {
                    xm.cells(k)
                        .map(|c| {
                            let y = Simplex::nondegenerate(c);
                            let key: Vec<Simplex> = if m == 0 {
                                vec![s.built.ob_keys.lookup(k, &y)]
                            } else {
                                spine.iter().map(|e| arrow(k, e.apply(y))).collect()
                            };
                            n.levels[m].lookup(k, &key)
                        })
                        .collect()
                })
                .collect();
            SMap::new_unchecked(xm.clone(), n.space.level(m).clone(), images)
        })
        .collect();
    SSMap::new_unchecked(x.clone(), n.space, levels)
}

/// Outcome of the nerve test.
#[derive(Clone, Debug)]
pub enum NerveVerdict {
    Yes(InternalCat),
    /// per failing level, a simplex of the nerve missed or hit twice
    No { failures: Vec<(usize, String)> },
    Unknown(String),
}

/// Is `X -> N(S(X))` an isomorphism? `S` is computed by presentation.
pub fn is_nerve_by_adjoint(x: &SimpSpace, budget: u64) -> NerveVerdict {
    let s = match s_adjoint(x, budget) {
        Ok(s) => s,
        Err(e) => return NerveVerdict::Unknown(e.to_string()),
    };
    let u = unit_map(x, &s);
    unit_verdict(&u, s.cat())
}

/// Read off a verdict from a unit map: each level where it is not a
/// bijection, with a simplex of the nerve that is missed or hit twice.
pub fn unit_verdict(u: &SSMap, c: &InternalCat) -> NerveVerdict {
    let mut failures = Vec::new();
    for (m, f) in u.levels.iter().enumerate() {
        if f.is_iso() {
            continue;
        }
        if let Some(w) = spine_witness(u, m).or_else(|| bijection_witness(f)) {
            failures.push((m, w));
        }
    }
    if failures.is_empty() {
        NerveVerdict::Yes(c.clone())
    } else {
        NerveVerdict::No { failures }
    }
}

/// A simplex missed at level `m` whose spine edges are all hit.
fn spine_witness(u: &SSMap, m: usize) -> Option<String> {
    if m < 2 {
        return None;
    }
    let f = &u.levels[m];
    let tgt = f.tgt();
    let edges: Vec<SMap> = (0..m).map(|i| u.tgt.edge_map(m, i, i + 1)).collect();
    for k in 0..=tgt.trunc_dim() {
        let hit: HashSet<Simplex> = f.src().simplices(k).into_iter().map(|y| f.apply(y)).collect();
        let hit1: HashSet<Simplex> = u.levels[1].src().simplices(k).into_iter().map(|y| u.levels[1].apply(y)).collect();
        for z in tgt.simplices(k) {
            if !hit.contains(&z) && edges.iter().all(|e| hit1.contains(&e.apply(z))) {
                return Some(format!("{} is not in the image though its spine is", tgt.expr(z)));
            }
        }
    }
    None
}

fn bijection_witness(f: &SMap) -> Option<String> {
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

/// The counit `S(N(C)) -> C` and whether it is an isomorphism.
pub fn counit_is_iso(c: &InternalCat, budget: u64) -> Result<bool> {
    let nb = nerve_built(c, 2);
    let n = &nb.space;
    let s = s_adjoint(n, budget)?;
    let rev0 = nb.levels[0].reverse_index();
    let rev1 = nb.levels[1].reverse_index();
    let ob_key = |k: usize, x: Simplex| -> Simplex { rev0[k][&x][0] };
    let ar_key = |k: usize, e: Simplex| -> Simplex { rev1[k][&e][0] };
    let sc = s.cat();
    let ob = SMap::from_keys(&s.built.ob_keys, &Built::identity(&c.ob), sc.ob.clone(), c.ob.clone(), |k, x| {
        ob_key(k, *x)
    });
    let ar = SMap::from_keys(&s.built.ar_keys, &Built::identity(&c.ar), sc.ar.clone(), c.ar.clone(), |k, f| {
        let mut h = c.identity(ob_key(k, f.0));
        for &e in &f.1 {
            h = c.compose(h, ar_key(k, e)).expect("composable word");
        }
        h
    });
    let map = ICatMap { ob, ar };
    map.check(sc, c)?;
    Ok(map.is_iso())
}

/// The two sides of `Hom(S X, C) ≅ Hom(X, N C)`.
#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    pub functors: u64,
    pub space_maps: u64,
    /// `φ ↦ N(φ) ∘ η` is injective and the counts agree
    pub bijection: bool,
}

pub fn adjunction_check(x: &SimpSpace, c: &InternalCat, budget: u64) -> Result<AdjunctionReport> {
    let s = s_adjoint(x, budget)?;
    let unit = unit_map(x, &s);
    let mm = x.outer_dim();
    let (ns, nc) = (nerve_built(s.cat(), mm), nerve_built(c, mm));
    let functors = all_icat_maps(s.cat(), c, budget).ok_or_else(|| Error::Budget("functors out of S(X)".into()))?;
    let space_maps = count_sspace_maps(x, &nc.space, budget).ok_or_else(|| Error::Budget("maps into N(C)".into()))?;
    let mut images = HashSet::new();
    for f in &functors {
        let g = unit.then(&nerve_map(f, &ns, &nc));
        g.check()?;
        images.insert(g.levels.iter().map(|l| l.images().to_vec()).collect::<Vec<_>>());
    }
    let n = functors.len() as u64;
    Ok(AdjunctionReport { functors: n, space_maps, bijection: images.len() as u64 == n && n == space_maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icat::{times_simplex, FinCat};
    use crate::sset::FinSSet;
    use crate::sspace::{make_f, make_g};
    use std::sync::Arc;

    #[test]
    fn counit_on_small_categories() {
        for c in [FinCat::chain(2), FinCat::chaotic(2), FinCat::cyclic_group(3), FinCat::discrete(2)] {
            assert!(counit_is_iso(&c.to_icat(1), 10_000).unwrap());
        }
        let c = times_simplex(&FinCat::chain(1).to_icat(1), 1);
        assert!(counit_is_iso(&c, 10_000).unwrap());
    }

    #[test]
    fn spine_is_not_a_nerve() {
        let (g, _) = make_g(2, 3, 0);
        let s = s_adjoint(&g, 1000).unwrap();
        assert_eq!(s.cat().ob.num_cells(0), 3);
        assert_eq!(s.cat().ar.num_cells(0), 6);
        assert!(s.pres.levels[0].relations.is_empty());
        match is_nerve_by_adjoint(&g, 1000) {
            NerveVerdict::No { failures } => {
                let (level, w) = failures.iter().find(|f| f.0 == 2).unwrap();
                assert_eq!(*level, 2);
                assert_eq!(w, "01|12 is not in the image though its spine is");
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn representables_are_nerves() {
        for n in 0..3 {
            assert!(matches!(is_nerve_by_adjoint(&make_f(n, 3, 1), 1000), NerveVerdict::Yes(_)));
        }
    }

    #[test]
    fn s_of_representable_cell() {
        let (p, q) = (1, 1);
        let x = make_f(p, 3, 2).product(&SimpSpace::constant(Arc::new(FinSSet::standard(q, 2)), 3)).unwrap();
        let s = s_adjoint(&x, 1000).unwrap();
        let want = times_simplex(&FinCat::chain(p).to_icat(2), q);
        for d in 0..=2 {
            assert_eq!(s.cat().ob.num_cells(d), want.ob.num_cells(d));
            assert_eq!(s.cat().ar.num_cells(d), want.ar.num_cells(d));
        }
    }

    #[test]
    fn adjunction_on_small_pairs() {
        let x = make_f(1, 2, 1);
        for c in [FinCat::chain(2), FinCat::chaotic(2)] {
            let r = adjunction_check(&x, &c.to_icat(1), 100_000).unwrap();
            assert!(r.bijection, "{r:?}");
        }
        // functors [1] -> [2]
        let r = adjunction_check(&x, &FinCat::chain(2).to_icat(1), 100_000).unwrap();
        assert_eq!(r.functors, 6);
        let (g, _) = make_g(2, 2, 0);
        let r = adjunction_check(&g, &FinCat::chaotic(2).to_icat(0), 100_000).unwrap();
        assert_eq!((r.functors, r.space_maps), (8, 8));
    }
}
