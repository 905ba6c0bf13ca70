//! Limits and colimits of finite simplicial sets.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{build, Built, Cell, CellData, FinSSet, SMap, Simplex, SimplicialModel};
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// A pullback `A ×_Z B` (a product when `Z` is absent), with projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub obj: Arc<FinSSet>,
    pub p1: SMap,
    pub p2: SMap,
    built: Built<(Simplex, Simplex)>,
}

impl Pullback {
    /// The simplex `(a, b)`; `None` if the pair does not lie over a common
    /// simplex.
    pub fn pair(&self, a: Simplex, b: Simplex) -> Option<Simplex> {
        self.built.try_lookup(a.dim(), &(a, b))
    }

    pub fn split(&self, s: Simplex) -> (Simplex, Simplex) {
        (self.p1.apply(s), self.p2.apply(s))
    }

    /// The map `W -> A ×_Z B` induced by a commuting cone.
    pub fn pair_map(&self, a: &SMap, b: &SMap) -> Result<SMap> {
        let w = a.src();
        let mut images = Vec::with_capacity(w.trunc_dim() + 1);
        for d in 0..=w.trunc_dim() {
            let mut row = Vec::with_capacity(w.num_cells(d));
            for c in w.cells(d) {
                let (x, y) = (a.image_of_cell(c), b.image_of_cell(c));
                let s = self.pair(x, y).ok_or_else(|| {
                    Error::InvalidMap(format!("cone does not commute at {}", w.cell_name(c)))
                })?;
                row.push(s);
            }
            images.push(row);
        }
        Ok(SMap::new_unchecked(w.clone(), self.obj.clone(), images))
    }
}

struct PairModel<'a> {
    a: &'a FinSSet,
    b: &'a FinSSet,
    legs: Option<(&'a SMap, &'a SMap)>,
}

impl SimplicialModel for PairModel<'_> {
    type Key = (Simplex, Simplex);
    fn simplices(&self, d: usize) -> Vec<(Simplex, Simplex)> {
        let bs = self.b.simplices(d);
        let mut out = Vec::new();
        match self.legs {
            None => {
                for x in self.a.simplices(d) {
                    for &y in &bs {
                        out.push((x, y));
                    }
                }
            }
            Some((f, g)) => {
                let mut by_image: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
                for &y in &bs {
                    by_image.entry(g.apply(y)).or_default().push(y);
                }
                for x in self.a.simplices(d) {
                    if let Some(ys) = by_image.get(&f.apply(x)) {
                        for &y in ys {
                            out.push((x, y));
                        }
                    }
                }
            }
        }
        out
    }
    fn face(&self, _d: usize, i: usize, k: &(Simplex, Simplex)) -> (Simplex, Simplex) {
        (self.a.face(k.0, i), self.b.face(k.1, i))
    }
    fn degeneracy(&self, _d: usize, j: usize, k: &(Simplex, Simplex)) -> (Simplex, Simplex) {
        (k.0.degeneracy(j), k.1.degeneracy(j))
    }
    fn name(&self, k: &(Simplex, Simplex)) -> String {
        format!("({},{})", self.a.expr(k.0), self.b.expr(k.1))
    }
}

fn pair_object(a: &Arc<FinSSet>, b: &Arc<FinSSet>, legs: Option<(&SMap, &SMap)>) -> Result<Pullback> {
    if a.trunc_dim() != b.trunc_dim() {
        return Err(Error::Truncation(a.trunc_dim(), b.trunc_dim()));
    }
    let built = build(&PairModel { a, b, legs }, a.trunc_dim());
    let obj = Arc::new(built.sset.clone());
    let p1 = SMap::from_keys(&built, &self_built(a), obj.clone(), a.clone(), |_, k| k.0);
    let p2 = SMap::from_keys(&built, &self_built(b), obj.clone(), b.clone(), |_, k| k.1);
    Ok(Pullback { obj, p1, p2, built })
}

/// The identity model of an object, keyed by its own simplices.
fn self_built(x: &FinSSet) -> Built<Simplex> {
    let index = (0..=x.trunc_dim())
        .map(|d| x.simplices(d).into_iter().map(|s| (s, s)).collect())
        .collect();
    let cell_keys = (0..=x.trunc_dim())
        .map(|d| x.cells(d).map(Simplex::nondegenerate).collect())
        .collect();
    Built { sset: FinSSet::empty(0), index, cell_keys }
}

/// Degreewise product with the Eilenberg–Zilber shuffle cells.
pub fn product(x: &Arc<FinSSet>, y: &Arc<FinSSet>) -> Result<Pullback> {
    pair_object(x, y, None)
}

/// Degreewise pullback of `f : A -> Z` and `g : B -> Z`.
pub fn fiber_product(f: &SMap, g: &SMap) -> Result<Pullback> {
    if f.tgt() != g.tgt() {
        return Err(Error::Precondition("fiber product legs have different codomains".into()));
    }
    pair_object(f.src(), g.src(), Some((f, g)))
}

/// A finite coproduct with its inclusions.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub obj: Arc<FinSSet>,
    pub inclusions: Vec<SMap>,
    offsets: Vec<Vec<usize>>,
}

impl Coproduct {
    pub fn inject(&self, summand: usize, s: Simplex) -> Simplex {
        let b = s.base();
        s.with_base(Cell { dim: b.dim, idx: b.idx + self.offsets[summand][b.dim] })
    }

    /// Which summand a simplex lies in, and its preimage there.
    pub fn locate(&self, s: Simplex) -> (usize, Simplex) {
        let b = s.base();
        let k = (0..self.offsets.len()).rev().find(|&k| self.offsets[k][b.dim] <= b.idx).unwrap();
        (k, s.with_base(Cell { dim: b.dim, idx: b.idx - self.offsets[k][b.dim] }))
    }

    /// The map out of the coproduct given by one map per summand.
    pub fn copair(&self, maps: &[SMap]) -> SMap {
        let tgt = maps[0].tgt().clone();
        let d = self.obj.trunc_dim();
        let images = (0..=d)
            .map(|dim| {
                self.obj
                    .cells(dim)
                    .map(|c| {
                        let (k, s) = self.locate(Simplex::nondegenerate(c));
                        maps[k].apply(s)
                    })
                    .collect()
            })
            .collect();
        SMap::new_unchecked(self.obj.clone(), tgt, images)
    }
}

pub fn coproduct(xs: &[Arc<FinSSet>], trunc_dim: usize) -> Result<Coproduct> {
    for x in xs {
        if x.trunc_dim() != trunc_dim {
            return Err(Error::Truncation(x.trunc_dim(), trunc_dim));
        }
    }
    let mut all_names = BTreeSet::new();
    let mut collide = false;
    for x in xs {
        for c in x.all_cells() {
            collide |= !all_names.insert(x.cell_name(c).to_string());
        }
    }
    let mut cells: Vec<Vec<CellData>> = vec![Vec::new(); trunc_dim + 1];
    let mut offsets = Vec::with_capacity(xs.len());
    for (k, x) in xs.iter().enumerate() {
        let off: Vec<usize> = (0..=trunc_dim).map(|d| cells[d].len()).collect();
        for d in 0..=trunc_dim {
            for c in x.cells(d) {
                let data = x.cell(c);
                let faces = data
                    .faces
                    .iter()
                    .map(|f| {
                        let b = f.base();
                        f.with_base(Cell { dim: b.dim, idx: b.idx + off[b.dim] })
                    })
                    .collect();
                let name = if collide { format!("{k}.{}", data.name) } else { data.name.clone() };
                cells[d].push(CellData { name, faces });
            }
        }
        offsets.push(off);
    }
    let obj = Arc::new(FinSSet::from_cells_unchecked(trunc_dim, None, cells));
    let inclusions = xs
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let images = (0..=trunc_dim)
                .map(|d| {
                    x.cells(d)
                        .map(|c| Simplex::nondegenerate(Cell { dim: d, idx: c.idx + offsets[k][d] }))
                        .collect()
                })
                .collect();
            SMap::new_unchecked(x.clone(), obj.clone(), images)
        })
        .collect();
    Ok(Coproduct { obj, inclusions, offsets })
}

/// A quotient `C -> Q` computed degreewise.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub obj: Arc<FinSSet>,
    pub map: SMap,
    /// per degree: simplex of `C` -> simplex of `Q`
    class: Vec<HashMap<Simplex, Simplex>>,
}

impl Quotient {
    pub fn class_of(&self, s: Simplex) -> Simplex {
        self.class[s.dim()][&s]
    }
}

struct QuotientModel<'a> {
    c: &'a FinSSet,
    /// per degree: simplex -> representative
    rep: Vec<HashMap<Simplex, Simplex>>,
}

impl SimplicialModel for QuotientModel<'_> {
    type Key = Simplex;
    fn simplices(&self, d: usize) -> Vec<Simplex> {
        let set: BTreeSet<Simplex> = self.rep[d].values().copied().collect();
        set.into_iter().collect()
    }
    fn face(&self, d: usize, i: usize, k: &Simplex) -> Simplex {
        self.rep[d - 1][&self.c.face(*k, i)]
    }
    fn degeneracy(&self, d: usize, j: usize, k: &Simplex) -> Simplex {
        self.rep[d + 1][&k.degeneracy(j)]
    }
    fn name(&self, k: &Simplex) -> String {
        self.c.expr(*k)
    }
}

/// Quotient of `c` by the degreewise equivalence relation generated by
/// the given pairs (each pair of equal dimension, at most the truncation).
pub fn quotient_by_pairs(c: &Arc<FinSSet>, pairs: &[(Simplex, Simplex)]) -> Quotient {
    let top = c.trunc_dim();
    let mut per_degree: Vec<Vec<(Simplex, Simplex)>> = vec![Vec::new(); top + 1];
    for &(a, b) in pairs {
        per_degree[a.dim()].push((a, b));
    }
    let mut rep = Vec::with_capacity(top + 1);
    for (d, rel) in per_degree.iter().enumerate() {
        let all = c.simplices(d);
        let pos: HashMap<Simplex, usize> = all.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut uf = UnionFind::new(all.len());
        for &(a, b) in rel {
            uf.union(pos[&a], pos[&b]);
        }
        let mut least: HashMap<usize, Simplex> = HashMap::new();
        for (i, &s) in all.iter().enumerate() {
            let r = uf.find(i);
            least.entry(r).and_modify(|m| *m = (*m).min(s)).or_insert(s);
        }
        let mut m = HashMap::with_capacity(all.len());
        for (i, &s) in all.iter().enumerate() {
            m.insert(s, least[&uf.find(i)]);
        }
        rep.push(m);
    }
    let model = QuotientModel { c, rep };
    let built = build(&model, top);
    let obj = Arc::new(built.sset.clone());
    let class: Vec<HashMap<Simplex, Simplex>> = model
        .rep
        .iter()
        .enumerate()
        .map(|(d, m)| m.iter().map(|(&s, r)| (s, built.lookup(d, r))).collect())
        .collect();
    let images = (0..=top).map(|d| c.cells(d).map(|x| class[d][&Simplex::nondegenerate(x)]).collect()).collect();
    let map = SMap::new_unchecked(c.clone(), obj.clone(), images);
    Quotient { obj, map, class }
}

/// Coequalizer of `f, g : W => C`.
pub fn coequalizer(f: &SMap, g: &SMap) -> Result<Quotient> {
    if f.tgt() != g.tgt() || f.src() != g.src() {
        return Err(Error::Precondition("coequalizer of non-parallel maps".into()));
    }
    let w = f.src();
    let mut pairs = Vec::new();
    for d in 0..=w.trunc_dim() {
        for s in w.simplices(d) {
            pairs.push((f.apply(s), g.apply(s)));
        }
    }
    Ok(quotient_by_pairs(f.tgt(), &pairs))
}

/// Pushout of `A <- W -> B` with its two inclusions.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub obj: Arc<FinSSet>,
    pub i1: SMap,
    pub i2: SMap,
}

impl Pushout {
    /// The map out of the pushout induced by a cocone `u1, u2`.
    pub fn copair(&self, u1: &SMap, u2: &SMap) -> Result<SMap> {
        let top = self.obj.trunc_dim();
        let mut images: Vec<Vec<Option<Simplex>>> = (0..=top).map(|d| vec![None; self.obj.num_cells(d)]).collect();
        for (inc, u) in [(&self.i1, u1), (&self.i2, u2)] {
            for c in inc.src().all_cells() {
                let y = inc.image_of_cell(c);
                if !y.is_degenerate() {
                    let slot = &mut images[y.dim()][y.base().idx];
                    if slot.is_none() {
                        *slot = Some(u.image_of_cell(c));
                    }
                }
            }
        }
        let images = images
            .into_iter()
            .map(|row| row.into_iter().map(|s| s.expect("pushout cells come from its legs")).collect())
            .collect();
        let out = SMap::new_unchecked(self.obj.clone(), u1.tgt().clone(), images);
        if !self.i1.then(&out).same_images(u1) || !self.i2.then(&out).same_images(u2) {
            return Err(Error::InvalidMap("cocone legs disagree on the glued part".into()));
        }
        Ok(out)
    }
}

pub fn pushout(f: &SMap, g: &SMap) -> Result<Pushout> {
    if f.src() != g.src() {
        return Err(Error::Precondition("pushout legs have different domains".into()));
    }
    let d = f.src().trunc_dim();
    let cop = coproduct(&[f.tgt().clone(), g.tgt().clone()], d)?;
    let a = f.then(&cop.inclusions[0]);
    let b = g.then(&cop.inclusions[1]);
    let q = coequalizer(&a, &b)?;
    Ok(Pushout { obj: q.obj.clone(), i1: cop.inclusions[0].then(&q.map), i2: cop.inclusions[1].then(&q.map) })
}

/// Path components of the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi0 {
    /// component label of every vertex, numbered by first vertex
    pub labels: Vec<usize>,
    pub count: usize,
}

pub fn pi0(x: &FinSSet) -> Result<Pi0> {
    if x.trunc_dim() == 0 {
        return Err(Error::Precondition("π0 needs edges: truncation dimension is 0".into()));
    }
    let mut uf = UnionFind::new(x.num_cells(0));
    for e in x.cells(1) {
        let f = &x.cell(e).faces;
        uf.union(f[0].base().idx, f[1].base().idx);
    }
    let (labels, count) = uf.labels();
    Ok(Pi0 { labels, count })
}

impl Pi0 {
    pub fn of(&self, x: &FinSSet, s: Simplex) -> usize {
        self.labels[x.vertex_of(s, 0).base().idx]
    }
}

/// Sub-object generated by a set of cells (closed under faces), with its
/// inclusion.
pub fn subcomplex(x: &Arc<FinSSet>, generators: impl IntoIterator<Item = Cell>) -> (Arc<FinSSet>, SMap) {
    let top = x.trunc_dim();
    let mut keep: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); top + 1];
    let mut stack: Vec<Cell> = generators.into_iter().collect();
    while let Some(c) = stack.pop() {
        if keep[c.dim].insert(c.idx) {
            for f in &x.cell(c).faces {
                stack.push(f.base());
            }
        }
    }
    let mut new_idx: Vec<HashMap<usize, usize>> = vec![HashMap::new(); top + 1];
    for d in 0..=top {
        for (n, &i) in keep[d].iter().enumerate() {
            new_idx[d].insert(i, n);
        }
    }
    let mut cells = vec![Vec::new(); top + 1];
    let mut images = vec![Vec::new(); top + 1];
    for d in 0..=top {
        for &i in &keep[d] {
            let c = Cell { dim: d, idx: i };
            let data = x.cell(c);
            let faces = data
                .faces
                .iter()
                .map(|f| {
                    let b = f.base();
                    f.with_base(Cell { dim: b.dim, idx: new_idx[b.dim][&b.idx] })
                })
                .collect();
            cells[d].push(CellData { name: data.name.clone(), faces });
            images[d].push(Simplex::nondegenerate(c));
        }
    }
    let obj = Arc::new(FinSSet::from_cells_unchecked(top, x.coskeletal_above(), cells));
    let incl = SMap::new_unchecked(obj.clone(), x.clone(), images);
    (obj, incl)
}

/// Image of a map as a sub-object of its target.
pub fn image(f: &SMap) -> (Arc<FinSSet>, SMap) {
    let cells: Vec<Cell> = f.images().iter().flatten().map(|s| s.base()).collect();
    subcomplex(f.tgt(), cells)
}

/// Factor `f : W -> X` through a monomorphism `incl : S -> X`; `None` if
/// the image of `f` leaves `S`.
pub fn corestrict(f: &SMap, incl: &SMap) -> Option<SMap> {
    let back: HashMap<Cell, Cell> = incl
        .src()
        .all_cells()
        .map(|c| (incl.image_of_cell(c).base(), c))
        .collect();
    let w = f.src();
    let mut images = Vec::with_capacity(w.trunc_dim() + 1);
    for d in 0..=w.trunc_dim() {
        let mut row = Vec::with_capacity(w.num_cells(d));
        for c in w.cells(d) {
            let y = f.image_of_cell(c);
            row.push(y.with_base(*back.get(&y.base())?));
        }
        images.push(row);
    }
    Some(SMap::new_unchecked(w.clone(), incl.src().clone(), images))
}

/// Strict fiber of `p : X -> Y` over a vertex `v` of `Y`, with inclusion.
pub fn fiber(p: &SMap, v: Simplex) -> Result<(Arc<FinSSet>, SMap)> {
    let d = p.src().trunc_dim();
    let pt = Arc::new(FinSSet::point(d));
    let incl = SMap::constant(pt.clone(), p.tgt().clone(), v);
    let pb = fiber_product(p, &incl)?;
    Ok((pb.obj.clone(), pb.p1.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::validate;

    fn arc(x: FinSSet) -> Arc<FinSSet> {
        Arc::new(x)
    }

    #[test]
    fn square_has_two_triangles() {
        let d1 = arc(FinSSet::standard(1, 3));
        let p = product(&d1, &d1).unwrap();
        assert_eq!(p.obj.num_cells(0), 4);
        assert_eq!(p.obj.num_cells(1), 5);
        assert_eq!(p.obj.num_cells(2), 2);
        assert_eq!(p.obj.num_cells(3), 0);
        assert!(validate(&p.obj).is_valid());
        assert!(p.p1.check().is_ok() && p.p2.check().is_ok());
    }

    #[test]
    fn gluing_two_intervals() {
        let d = 2;
        let b = arc(FinSSet::boundary(1, d));
        let d1 = arc(FinSSet::standard(1, d));
        let incl = SMap::new(b.clone(), d1.clone(), vec![vec![d1.vertex(0), d1.vertex(1)]]).unwrap();
        let po = pushout(&incl, &incl).unwrap();
        assert_eq!(po.obj.num_cells(0), 2);
        assert_eq!(po.obj.num_cells(1), 2);
        assert_eq!(pi0(&po.obj).unwrap().count, 1);
        assert!(po.i1.check().is_ok());
    }

    #[test]
    fn disjoint_vertex_pullback_is_empty() {
        let b = arc(FinSSet::boundary(1, 1));
        let pt = arc(FinSSet::point(1));
        let f = SMap::constant(pt.clone(), b.clone(), b.vertex(0));
        let g = SMap::constant(pt.clone(), b.clone(), b.vertex(1));
        let pb = fiber_product(&f, &g).unwrap();
        assert!(pb.obj.is_empty());
    }

    #[test]
    fn subcomplex_closes_under_faces() {
        let d2 = arc(FinSSet::standard(2, 2));
        let e = d2.find_cell("12").unwrap();
        let (s, incl) = subcomplex(&d2, [e]);
        assert_eq!((s.num_cells(0), s.num_cells(1)), (2, 1));
        assert!(incl.check().is_ok() && incl.is_injective());
    }
}
