//! Attaching cells `K × [n] -> L × [n]` to internal categories, the
//! pushout comparisons for `Map(B, -)` and for the nerve, and cell
//! complexes.

mod complex;
mod random;

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::icat::{build_icat, nerve_built, nerve_map, BuiltCat, CategoryModel, FinCat, ICatMap, InternalCat};
use crate::sset::{FinSSet, SMap, Simplex};
use crate::sspace::{pushout_space, SSMap, SimpSpace};
use crate::unionfind::UnionFind;

pub use complex::{is_nerve, CellComplex};
pub use random::{random_attachment, random_complex, random_sset, random_sub_pair};

/// Data for attaching `L × [n]` along `K × [n] -> C`. The attaching
/// functor is given by its chains: a map `K -> N(C)_n`.
#[derive(Clone, Debug)]
pub struct AttachmentSpec {
    pub n: usize,
    pub incl: SMap,
    pub chain: SMap,
}

impl AttachmentSpec {
    pub fn k(&self) -> &Arc<FinSSet> {
        self.incl.src()
    }

    pub fn l(&self) -> &Arc<FinSSet> {
        self.incl.tgt()
    }

    /// Check the spec against the category it attaches to.
    pub fn validate(&self, c: &InternalCat) -> Result<()> {
        self.incl.check()?;
        if !self.incl.is_injective() {
            return Err(Error::Precondition("K -> L is not a monomorphism".into()));
        }
        self.chain.check()?;
        if self.chain.src() != self.k() {
            return Err(Error::InvalidMap("attaching map is not defined on K".into()));
        }
        let nb = nerve_built(c, self.n);
        if **self.chain.tgt() != **nb.space.level(self.n) {
            return Err(Error::InvalidMap(format!("attaching map does not land in level {} of the nerve", self.n)));
        }
        Ok(())
    }
}

/// Objects `(x, i)` and arrows `(x, i, j)`, `i ≤ j`, of `B × [n]` for
/// `B` discrete.
struct CellCat<'a> {
    base: &'a FinSSet,
    n: usize,
}

impl CategoryModel for CellCat<'_> {
    type Ob = (Simplex, usize);
    type Ar = (Simplex, usize, usize);
    fn objects(&self, d: usize) -> Vec<Self::Ob> {
        self.base.simplices(d).into_iter().flat_map(|x| (0..=self.n).map(move |i| (x, i))).collect()
    }
    fn arrows(&self, d: usize) -> Vec<Self::Ar> {
        let n = self.n;
        self.base
            .simplices(d)
            .into_iter()
            .flat_map(|x| (0..=n).flat_map(move |i| (i..=n).map(move |j| (x, i, j))))
            .collect()
    }
    fn ob_face(&self, _d: usize, k: usize, x: &Self::Ob) -> Self::Ob {
        (self.base.face(x.0, k), x.1)
    }
    fn ob_degeneracy(&self, _d: usize, k: usize, x: &Self::Ob) -> Self::Ob {
        (x.0.degeneracy(k), x.1)
    }
    fn ar_face(&self, _d: usize, k: usize, f: &Self::Ar) -> Self::Ar {
        (self.base.face(f.0, k), f.1, f.2)
    }
    fn ar_degeneracy(&self, _d: usize, k: usize, f: &Self::Ar) -> Self::Ar {
        (f.0.degeneracy(k), f.1, f.2)
    }
    fn source(&self, _d: usize, f: &Self::Ar) -> Self::Ob {
        (f.0, f.1)
    }
    fn target(&self, _d: usize, f: &Self::Ar) -> Self::Ob {
        (f.0, f.2)
    }
    fn identity(&self, _d: usize, x: &Self::Ob) -> Self::Ar {
        (x.0, x.1, x.1)
    }
    fn compose(&self, _d: usize, f: &Self::Ar, g: &Self::Ar) -> Self::Ar {
        (f.0, f.1, g.2)
    }
    fn ob_name(&self, x: &Self::Ob) -> String {
        format!("({},{})", self.base.expr(x.0), x.1)
    }
    fn ar_name(&self, f: &Self::Ar) -> String {
        format!("({},{}{})", self.base.expr(f.0), f.1, f.2)
    }
}

type CellBuilt = BuiltCat<(Simplex, usize), (Simplex, usize, usize)>;

/// `B × [n]` with `B` discrete, keyed by `(simplex, i)` and `(simplex, i, j)`.
pub fn cell_category(base: &FinSSet, n: usize) -> InternalCat {
    build_icat(&CellCat { base, n }, base.trunc_dim()).cat
}

/// The attaching functor read off from chains.
struct Chains<'a> {
    c: &'a InternalCat,
    n: usize,
    chain: &'a SMap,
    rev: Vec<HashMap<Simplex, Vec<Simplex>>>,
}

impl<'a> Chains<'a> {
    fn new(c: &'a InternalCat, spec: &'a AttachmentSpec) -> Self {
        let nb = nerve_built(c, spec.n);
        Chains { c, n: spec.n, chain: &spec.chain, rev: nb.levels[spec.n].reverse_index() }
    }

    fn key(&self, x: Simplex) -> &Vec<Simplex> {
        &self.rev[x.dim()][&self.chain.apply(x)]
    }

    fn object(&self, x: Simplex, i: usize) -> Simplex {
        let k = self.key(x);
        if self.n == 0 {
            k[0]
        } else if i < self.n {
            self.c.source(k[i])
        } else {
            self.c.target(k[self.n - 1])
        }
    }

    fn arrow(&self, x: Simplex, i: usize, j: usize) -> Simplex {
        let k = self.key(x);
        let mut h = self.c.identity(self.object(x, i));
        for &f in &k[i..j] {
            h = self.c.compose(h, f).expect("chains are composable");
        }
        h
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Part {
    Old(Simplex),
    /// `(z, i, j)` for `z` in `L` but not `K`; objects have `i = j`
    New(Simplex, usize, usize),
}

struct AttachModel<'a> {
    chains: Chains<'a>,
    l: &'a FinSSet,
    /// per degree: simplex of `L` -> simplex of `K`
    from_k: Vec<HashMap<Simplex, Simplex>>,
}

impl AttachModel<'_> {
    fn new_part(&self, z: Simplex, i: usize, j: usize, object: bool) -> Part {
        match self.from_k[z.dim()].get(&z) {
            Some(&x) if object => Part::Old(self.chains.object(x, i)),
            Some(&x) => Part::Old(self.chains.arrow(x, i, j)),
            None => Part::New(z, i, j),
        }
    }

    fn c(&self) -> &InternalCat {
        self.chains.c
    }
}

impl CategoryModel for AttachModel<'_> {
    type Ob = Part;
    type Ar = Part;
    fn objects(&self, d: usize) -> Vec<Part> {
        let mut out: Vec<Part> = self.c().ob.simplices(d).into_iter().map(Part::Old).collect();
        for z in self.l.simplices(d) {
            if !self.from_k[d].contains_key(&z) {
                out.extend((0..=self.chains.n).map(|i| Part::New(z, i, i)));
            }
        }
        out
    }
    fn arrows(&self, d: usize) -> Vec<Part> {
        let n = self.chains.n;
        let mut out: Vec<Part> = self.c().ar.simplices(d).into_iter().map(Part::Old).collect();
        for z in self.l.simplices(d) {
            if !self.from_k[d].contains_key(&z) {
                out.extend((0..=n).flat_map(|i| (i..=n).map(move |j| Part::New(z, i, j))));
            }
        }
        out
    }
    fn ob_face(&self, _d: usize, k: usize, x: &Part) -> Part {
        match *x {
            Part::Old(s) => Part::Old(self.c().ob.face(s, k)),
            Part::New(z, i, j) => self.new_part(self.l.face(z, k), i, j, true),
        }
    }
    fn ob_degeneracy(&self, _d: usize, k: usize, x: &Part) -> Part {
        match *x {
            Part::Old(s) => Part::Old(s.degeneracy(k)),
            Part::New(z, i, j) => Part::New(z.degeneracy(k), i, j),
        }
    }
    fn ar_face(&self, _d: usize, k: usize, f: &Part) -> Part {
        match *f {
            Part::Old(s) => Part::Old(self.c().ar.face(s, k)),
            Part::New(z, i, j) => self.new_part(self.l.face(z, k), i, j, false),
        }
    }
    fn ar_degeneracy(&self, d: usize, k: usize, f: &Part) -> Part {
        self.ob_degeneracy(d, k, f)
    }
    fn source(&self, _d: usize, f: &Part) -> Part {
        match *f {
            Part::Old(s) => Part::Old(self.c().source(s)),
            Part::New(z, i, _) => Part::New(z, i, i),
        }
    }
    fn target(&self, _d: usize, f: &Part) -> Part {
        match *f {
            Part::Old(s) => Part::Old(self.c().target(s)),
            Part::New(z, _, j) => Part::New(z, j, j),
        }
    }
    fn identity(&self, _d: usize, x: &Part) -> Part {
        match *x {
            Part::Old(s) => Part::Old(self.c().identity(s)),
            p => p,
        }
    }
    fn compose(&self, _d: usize, f: &Part, g: &Part) -> Part {
        match (*f, *g) {
            (Part::Old(a), Part::Old(b)) => Part::Old(self.c().compose(a, b).expect("composable")),
            (Part::New(z, i, _), Part::New(_, _, j)) => Part::New(z, i, j),
            _ => unreachable!("old and new arrows never compose"),
        }
    }
    fn ob_name(&self, x: &Part) -> String {
        match *x {
            Part::Old(s) => self.c().ob.expr(s),
            Part::New(z, i, _) => format!("{}@{i}", self.l.expr(z)),
        }
    }
    fn ar_name(&self, f: &Part) -> String {
        match *f {
            Part::Old(s) => self.c().ar.expr(s),
            Part::New(z, i, j) => format!("{}@{i}{j}", self.l.expr(z)),
        }
    }
}

/// The result of an attachment with its cocone.
#[derive(Clone, Debug)]
pub struct Attached {
    pub cat: InternalCat,
    /// `C -> D`
    pub from_c: ICatMap,
    /// `L × [n] -> D`
    pub from_cell: ICatMap,
    /// `K × [n] -> C`
    pub attaching: ICatMap,
    /// `K × [n] -> L × [n]`
    pub cell_incl: ICatMap,
    pub k_cell: InternalCat,
    pub l_cell: InternalCat,
}

/// `D = C ⊔_{K×[n]} L×[n]`, degreewise `C_k ⊔ (L_k − K_k) × [n]`.
pub fn attach(c: &InternalCat, spec: &AttachmentSpec) -> Result<Attached> {
    spec.validate(c)?;
    let dd = c.trunc_dim();
    let (k, l) = (spec.k().clone(), spec.l().clone());
    let from_k: Vec<HashMap<Simplex, Simplex>> =
        (0..=dd).map(|d| k.simplices(d).into_iter().map(|x| (spec.incl.apply(x), x)).collect()).collect();
    let model = AttachModel { chains: Chains::new(c, spec), l: &l, from_k };
    let db = build_icat(&model, dd);
    let kb: CellBuilt = build_icat(&CellCat { base: &k, n: spec.n }, dd);
    let lb: CellBuilt = build_icat(&CellCat { base: &l, n: spec.n }, dd);
    let id_c = crate::sset::Built::identity(&c.ob);
    let id_a = crate::sset::Built::identity(&c.ar);
    let d = &db.cat;
    let from_c = ICatMap {
        ob: SMap::from_keys(&id_c, &db.ob_keys, c.ob.clone(), d.ob.clone(), |_, s| Part::Old(*s)),
        ar: SMap::from_keys(&id_a, &db.ar_keys, c.ar.clone(), d.ar.clone(), |_, s| Part::Old(*s)),
    };
    let from_cell = ICatMap {
        ob: SMap::from_keys(&lb.ob_keys, &db.ob_keys, lb.cat.ob.clone(), d.ob.clone(), |_, &(z, i)| {
            model.new_part(z, i, i, true)
        }),
        ar: SMap::from_keys(&lb.ar_keys, &db.ar_keys, lb.cat.ar.clone(), d.ar.clone(), |_, &(z, i, j)| {
            model.new_part(z, i, j, false)
        }),
    };
    let attaching = ICatMap {
        ob: SMap::from_keys(&kb.ob_keys, &id_c, kb.cat.ob.clone(), c.ob.clone(), |_, &(x, i)| model.chains.object(x, i)),
        ar: SMap::from_keys(&kb.ar_keys, &id_a, kb.cat.ar.clone(), c.ar.clone(), |_, &(x, i, j)| {
            model.chains.arrow(x, i, j)
        }),
    };
    let cell_incl = ICatMap {
        ob: SMap::from_keys(&kb.ob_keys, &lb.ob_keys, kb.cat.ob.clone(), lb.cat.ob.clone(), |_, &(x, i)| {
            (spec.incl.apply(x), i)
        }),
        ar: SMap::from_keys(&kb.ar_keys, &lb.ar_keys, kb.cat.ar.clone(), lb.cat.ar.clone(), |_, &(x, i, j)| {
            (spec.incl.apply(x), i, j)
        }),
    };
    Ok(Attached {
        cat: db.cat.clone(),
        from_c,
        from_cell,
        attaching,
        cell_incl,
        k_cell: kb.cat.clone(),
        l_cell: lb.cat.clone(),
    })
}

/// Per-level outcome of the nerve pushout comparison.
#[derive(Clone, Debug, Serialize)]
pub struct NervePushoutReport {
    /// cells per inner degree of `N(D)_m` and of the pushout, per level
    pub nerve_cells: Vec<Vec<usize>>,
    pub pushout_cells: Vec<Vec<usize>>,
    pub level_iso: Vec<bool>,
    pub iso: bool,
}

/// The pushout of nerves `N(C) ⊔_{N(K×[n])} N(L×[n])` with the
/// comparison map into `N(D)`.
pub struct NervePushout {
    pub pushout: SimpSpace,
    pub comparison: SSMap,
    /// `N(C) -> pushout`
    pub from_c: SSMap,
    /// `N(L×[n]) -> pushout`
    pub from_cell: SSMap,
}

pub fn nerve_pushout(c: &InternalCat, a: &Attached, outer_dim: usize) -> Result<NervePushout> {
    let nc = nerve_built(c, outer_dim);
    let nk = nerve_built(&a.k_cell, outer_dim);
    let nl = nerve_built(&a.l_cell, outer_dim);
    let nd = nerve_built(&a.cat, outer_dim);
    let po = pushout_space(&nerve_map(&a.attaching, &nk, &nc), &nerve_map(&a.cell_incl, &nk, &nl))?;
    let comparison = po.copair(&nerve_map(&a.from_c, &nc, &nd), &nerve_map(&a.from_cell, &nl, &nd))?;
    Ok(NervePushout { pushout: po.space.clone(), comparison, from_c: po.i1.clone(), from_cell: po.i2.clone() })
}

/// Compare `N(attach(C, spec))` with the pushout of nerves, level by level.
pub fn verify_nerve_pushout(c: &InternalCat, spec: &AttachmentSpec, outer_dim: usize) -> Result<NervePushoutReport> {
    let a = attach(c, spec)?;
    let np = nerve_pushout(c, &a, outer_dim)?;
    let cells = |x: &SimpSpace| -> Vec<Vec<usize>> {
        x.levels().iter().map(|l| (0..=l.trunc_dim()).map(|d| l.num_cells(d)).collect()).collect()
    };
    let level_iso: Vec<bool> = np.comparison.levels.iter().map(|f| f.is_iso()).collect();
    Ok(NervePushoutReport {
        nerve_cells: cells(&np.comparison.tgt),
        pushout_cells: cells(&np.pushout),
        iso: level_iso.iter().all(|&b| b),
        level_iso,
    })
}

/// Path components of a finite category.
pub fn components(b: &FinCat) -> usize {
    let mut uf = UnionFind::new(b.num_objects());
    for &(s, t) in &b.arrows {
        uf.union(s, t);
    }
    uf.labels().1
}

/// Key-lemma comparison for one test category and one inner degree.
#[derive(Clone, Debug, Serialize)]
pub struct KeyLemmaCase {
    pub b: String,
    pub degree: usize,
    /// sizes of `Map(B, C)_k`, `Map(B, K×[n])_k`, `Map(B, L×[n])_k`, `Map(B, D)_k`
    pub sizes: [usize; 4],
    pub pushout_size: usize,
    pub bijection: bool,
    pub detail: Option<String>,
}

/// Functors `B -> E_k` as (object images, arrow images) in simplices.
fn functor_set(b: &FinCat, e: &InternalCat, k: usize, budget: u64) -> Result<Vec<(Vec<Simplex>, Vec<Simplex>)>> {
    let ek = e.category_at(k);
    let obs = e.ob.simplices(k);
    let ars = e.ar.simplices(k);
    Ok(b.functors(&ek, budget)?
        .into_iter()
        .map(|(o, a)| (o.iter().map(|&i| obs[i]).collect(), a.iter().map(|&i| ars[i]).collect()))
        .collect())
}

/// For each connected `B` and each inner degree `k ≤ max_degree`,
/// enumerate `Map(B, -)_k` on the four corners and check the comparison
/// from the set pushout to `Map(B, D)_k` is a bijection.
pub fn verify_key_lemma(
    c: &InternalCat,
    spec: &AttachmentSpec,
    bs: &[(String, FinCat)],
    max_degree: usize,
    budget: u64,
) -> Result<Vec<KeyLemmaCase>> {
    for (name, b) in bs {
        let p = components(b);
        if p != 1 {
            return Err(Error::Precondition(format!("test category {name} is not connected: π0 = {p}")));
        }
    }
    let a = attach(c, spec)?;
    let mut out = Vec::new();
    for (name, b) in bs {
        for k in 0..=max_degree.min(c.trunc_dim()) {
            let mc = functor_set(b, c, k, budget)?;
            let mk = functor_set(b, &a.k_cell, k, budget)?;
            let ml = functor_set(b, &a.l_cell, k, budget)?;
            let md = functor_set(b, &a.cat, k, budget)?;
            let post = |f: &ICatMap, x: &(Vec<Simplex>, Vec<Simplex>)| {
                (
                    x.0.iter().map(|&s| f.ob.apply(s)).collect::<Vec<_>>(),
                    x.1.iter().map(|&s| f.ar.apply(s)).collect::<Vec<_>>(),
                )
            };
            let pos_c: HashMap<_, usize> = mc.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
            let pos_l: HashMap<_, usize> = ml.iter().cloned().enumerate().map(|(i, x)| (x, mc.len() + i)).collect();
            let pos_d: HashMap<_, usize> = md.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
            let mut uf = UnionFind::new(mc.len() + ml.len());
            let mut detail = None;
            for x in &mk {
                match (pos_c.get(&post(&a.attaching, x)), pos_l.get(&post(&a.cell_incl, x))) {
                    (Some(&i), Some(&j)) => {
                        uf.union(i, j);
                    }
                    _ => detail = Some("a functor into K×[n] has no image".to_string()),
                }
            }
            let (labels, classes) = uf.labels();
            let mut image: Vec<Option<usize>> = vec![None; classes];
            let mut hit = vec![false; md.len()];
            let all = mc.iter().map(|x| post(&a.from_c, x)).chain(ml.iter().map(|x| post(&a.from_cell, x)));
            for (i, y) in all.enumerate() {
                let Some(&t) = pos_d.get(&y) else {
                    detail.get_or_insert_with(|| "a composite functor is missing from Map(B, D)".into());
                    continue;
                };
                match image[labels[i]] {
                    None => image[labels[i]] = Some(t),
                    Some(t0) if t0 != t => {
                        detail.get_or_insert_with(|| "comparison is not well defined".into());
                    }
                    _ => {}
                }
            }
            for t in image.iter().flatten() {
                if hit[*t] {
                    detail.get_or_insert_with(|| "comparison is not injective".into());
                }
                hit[*t] = true;
            }
            if let Some(t) = hit.iter().position(|h| !h) {
                let _ = t;
                detail.get_or_insert_with(|| "comparison is not surjective".into());
            }
            out.push(KeyLemmaCase {
                b: name.clone(),
                degree: k,
                sizes: [mc.len(), mk.len(), ml.len(), md.len()],
                pushout_size: classes,
                bijection: detail.is_none(),
                detail,
            });
        }
    }
    Ok(out)
}

/// The test categories `[0]`, `[1]`, `[2]`.
pub fn standard_test_categories() -> Vec<(String, FinCat)> {
    (0..3).map(|n| (format!("[{n}]"), FinCat::chain(n))).collect()
}

/// One seeded key-lemma instance: a base category built from `∅` by a
/// few random attachments, and one more random attachment to it.
pub fn random_key_lemma_instance<R: rand::Rng>(
    rng: &mut R,
    trunc_dim: usize,
    max_n: usize,
    max_cells: usize,
) -> Result<(InternalCat, AttachmentSpec)> {
    let steps = rng.gen_range(0..=2);
    let cx = random_complex(rng, steps, 1, trunc_dim, max_cells)?;
    let spec = random_attachment(rng, &cx.cat, max_n, max_cells);
    Ok((cx.cat, spec))
}

/// Both sides of the key lemma for one attachment.
#[derive(Clone, Debug, Serialize)]
pub struct KeyLemmaTrial {
    pub n: usize,
    /// nondegenerate cells of `K` and `L`
    pub k_cells: usize,
    pub l_cells: usize,
    pub nerve_pushout: NervePushoutReport,
    pub cases: Vec<KeyLemmaCase>,
    pub pass: bool,
}

pub fn key_lemma_trial(
    c: &InternalCat,
    spec: &AttachmentSpec,
    outer_dim: usize,
    max_degree: usize,
    budget: u64,
) -> Result<KeyLemmaTrial> {
    let nerve_pushout = verify_nerve_pushout(c, spec, outer_dim)?;
    let cases = verify_key_lemma(c, spec, &standard_test_categories(), max_degree, budget)?;
    let pass = nerve_pushout.iso && cases.iter().all(|k| k.bijection);
    Ok(KeyLemmaTrial {
        n: spec.n,
        k_cells: spec.k().total_cells(),
        l_cells: spec.l().total_cells(),
        nerve_pushout,
        cases,
        pass,
    })
}

/// An attachment along `K = ∅`.
pub fn free_attachment(c: &InternalCat, l: Arc<FinSSet>, n: usize) -> AttachmentSpec {
    let dd = c.trunc_dim();
    let k = Arc::new(FinSSet::empty(dd));
    let nb = nerve_built(c, n);
    AttachmentSpec {
        n,
        incl: SMap::new_unchecked(k.clone(), l, vec![]),
        chain: SMap::new_unchecked(k, nb.space.level(n).clone(), vec![]),
    }
}

/// The empty internal category.
pub fn empty_category(trunc_dim: usize) -> InternalCat {
    FinCat::discrete(0).to_icat(trunc_dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icat::validate_icat;

    #[test]
    fn attaching_an_interval_to_nothing() {
        let c = empty_category(2);
        let spec = free_attachment(&c, Arc::new(FinSSet::point(2)), 1);
        let a = attach(&c, &spec).unwrap();
        assert!(validate_icat(&a.cat).is_valid());
        assert_eq!((a.cat.ob.num_cells(0), a.cat.ar.num_cells(0)), (2, 3));
    }

    #[test]
    fn attaching_next_to_a_point() {
        let c = FinCat::chain(0).to_icat(2);
        let spec = free_attachment(&c, Arc::new(FinSSet::point(2)), 1);
        let a = attach(&c, &spec).unwrap();
        for k in 0..=2 {
            let ck = a.cat.category_at(k);
            assert_eq!((ck.num_objects(), ck.num_arrows()), (3, 4));
        }
        let rep = verify_nerve_pushout(&c, &spec, 3).unwrap();
        assert!(rep.iso, "{rep:?}");
        let cases = verify_key_lemma(&c, &spec, &standard_test_categories(), 2, 100_000).unwrap();
        assert!(cases.iter().all(|c| c.bijection), "{cases:?}");
    }

    #[test]
    fn disconnected_test_category_is_rejected() {
        let c = FinCat::chain(0).to_icat(1);
        let spec = free_attachment(&c, Arc::new(FinSSet::point(1)), 1);
        let err = verify_key_lemma(&c, &spec, &[("[0]+[0]".into(), FinCat::discrete(2))], 1, 1000).unwrap_err();
        assert!(err.to_string().contains("π0 = 2"));
    }

    #[test]
    fn gluing_an_edge_into_an_interval() {
        // attach an edge L = Δ[1] to the objects of [1] along K = ∂Δ[1], n = 0
        let c = FinCat::chain(1).to_icat(2);
        let k = Arc::new(FinSSet::boundary(1, 2));
        let l = Arc::new(FinSSet::standard(1, 2));
        let incl = SMap::new(
            k.clone(),
            l.clone(),
            vec![vec![Simplex::nondegenerate(l.find_cell("0").unwrap()), Simplex::nondegenerate(l.find_cell("1").unwrap())]],
        )
        .unwrap();
        let nb = nerve_built(&c, 0);
        let lvl = nb.space.level(0).clone();
        let chain = SMap::new(
            k.clone(),
            lvl.clone(),
            vec![vec![Simplex::nondegenerate(lvl.find_cell("0").unwrap()), Simplex::nondegenerate(lvl.find_cell("1").unwrap())]],
        )
        .unwrap();
        let spec = AttachmentSpec { n: 0, incl, chain };
        let a = attach(&c, &spec).unwrap();
        assert!(validate_icat(&a.cat).is_valid());
        assert_eq!(a.cat.ob.num_cells(1), 1);
        assert!(verify_nerve_pushout(&c, &spec, 2).unwrap().iso);
    }
}
