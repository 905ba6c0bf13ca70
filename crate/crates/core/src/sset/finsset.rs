use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use super::SMap;
use super::simplex::{simplex_from_mask, surjection_masks, Cell, Mono, Simplex, MAX_DIM};
use crate::error::{Error, Result};

/// Stored data of one nondegenerate cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellData {
    pub name: String,
    pub faces: Vec<Simplex>,
}

/// A dimension-truncated finite simplicial set in Eilenberg–Zilber normal
/// form: nondegenerate cells per dimension together with their faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSSet {
    trunc_dim: usize,
    coskeletal_above: Option<usize>,
    cells: Vec<Vec<CellData>>,
}

impl FinSSet {
    /// Assemble without checking any invariant. Use [`crate::sset::validate`]
    /// before trusting such an object.
    pub fn from_cells_unchecked(
        trunc_dim: usize,
        coskeletal_above: Option<usize>,
        mut cells: Vec<Vec<CellData>>,
    ) -> Self {
        cells.resize_with(trunc_dim + 1, Vec::new);
        FinSSet { trunc_dim, coskeletal_above, cells }
    }

    pub fn empty(trunc_dim: usize) -> Self {
        Self::from_cells_unchecked(trunc_dim, None, vec![])
    }

    pub fn trunc_dim(&self) -> usize {
        self.trunc_dim
    }

    pub fn coskeletal_above(&self) -> Option<usize> {
        self.coskeletal_above
    }

    pub fn with_coskeletal(mut self, n: Option<usize>) -> Self {
        self.coskeletal_above = n;
        self
    }

    pub fn num_cells(&self, d: usize) -> usize {
        self.cells.get(d).map_or(0, |c| c.len())
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(|c| c.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.num_cells(0) == 0
    }

    /// Highest dimension carrying a nondegenerate cell.
    pub fn top_dim(&self) -> Option<usize> {
        (0..=self.trunc_dim).rev().find(|&d| self.num_cells(d) > 0)
    }

    pub fn cells(&self, d: usize) -> impl Iterator<Item = Cell> + '_ {
        (0..self.num_cells(d)).map(move |idx| Cell { dim: d, idx })
    }

    pub fn all_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..=self.trunc_dim).flat_map(move |d| self.cells(d))
    }

    pub fn cell(&self, c: Cell) -> &CellData {
        &self.cells[c.dim][c.idx]
    }

    pub(crate) fn cell_checked(&self, c: Cell) -> Option<&CellData> {
        self.cells.get(c.dim).and_then(|v| v.get(c.idx))
    }

    pub fn cell_name(&self, c: Cell) -> &str {
        &self.cells[c.dim][c.idx].name
    }

    pub fn find_cell(&self, name: &str) -> Option<Cell> {
        for (d, cs) in self.cells.iter().enumerate() {
            if let Some(idx) = cs.iter().position(|c| c.name == name) {
                return Some(Cell { dim: d, idx });
            }
        }
        None
    }

    /// Number of all simplices (degenerate included) in degree `d`.
    pub fn count_simplices(&self, d: usize) -> usize {
        (0..=d.min(self.trunc_dim))
            .map(|m| self.num_cells(m) * super::simplex::surjection_count(d, m))
            .sum()
    }

    /// All simplices of degree `d` (degenerate included) in a fixed order.
    pub fn simplices(&self, d: usize) -> Vec<Simplex> {
        let mut out = Vec::with_capacity(self.count_simplices(d));
        for m in 0..=d.min(self.trunc_dim) {
            if self.num_cells(m) == 0 {
                continue;
            }
            let masks = surjection_masks(d, m);
            for idx in 0..self.num_cells(m) {
                for &mask in &masks {
                    out.push(simplex_from_mask(d, Cell { dim: m, idx }, mask));
                }
            }
        }
        out
    }

    pub fn vertex(&self, idx: usize) -> Simplex {
        Simplex::nondegenerate(Cell { dim: 0, idx })
    }

    /// `θ^*(x)` for a monotone `θ : [k] -> [dim x]`.
    pub fn act(&self, x: Simplex, theta: &Mono) -> Simplex {
        let sigma = x.surjection();
        let phi = sigma.after(theta);
        let (tau, image) = phi.epi_mono();
        let restricted = self.restrict_cell(x.base(), &image);
        restricted.degenerate_by(&tau)
    }

    /// `ι^*(cell)` for the injection `ι` with the given image.
    fn restrict_cell(&self, cell: Cell, image: &[usize]) -> Simplex {
        if image.len() == cell.dim + 1 {
            return Simplex::nondegenerate(cell);
        }
        // largest index not in the image
        let missing = (0..=cell.dim).rev().find(|j| !image.contains(j)).unwrap();
        let face = self.cells[cell.dim][cell.idx].faces[missing];
        let shifted: Vec<usize> =
            image.iter().map(|&v| if v < missing { v } else { v - 1 }).collect();
        let iota = Mono::from_slice(&shifted);
        self.act(face, &iota)
    }

    pub fn face(&self, x: Simplex, i: usize) -> Simplex {
        self.act(x, &Mono::coface(x.dim(), i))
    }

    pub fn degeneracy(&self, x: Simplex, j: usize) -> Simplex {
        x.degeneracy(j)
    }

    /// The `i`-th vertex of a simplex.
    pub fn vertex_of(&self, x: Simplex, i: usize) -> Simplex {
        self.act(x, &Mono::constant(0, i))
    }

    pub fn vertices_of(&self, x: Simplex) -> Vec<Simplex> {
        (0..=x.dim()).map(|i| self.vertex_of(x, i)).collect()
    }

    /// Canonical text form: `"id"` or `"s3 s1 id"`.
    pub fn expr(&self, x: Simplex) -> String {
        let mut parts: Vec<String> = x.word().iter().map(|j| format!("s{j}")).collect();
        parts.push(self.cell_name(x.base()).to_string());
        parts.join(" ")
    }

    pub fn parse_expr(&self, text: &str) -> Result<Simplex> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        let (last, word) = toks
            .split_last()
            .ok_or_else(|| Error::Parse(format!("empty simplex expression {text:?}")))?;
        let cell = self
            .find_cell(last)
            .ok_or_else(|| Error::Parse(format!("unknown simplex id {last:?}")))?;
        let mut idx = Vec::with_capacity(word.len());
        for w in word {
            let j = w
                .strip_prefix('s')
                .and_then(|r| r.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("bad degeneracy token {w:?} in {text:?}")))?;
            idx.push(j);
        }
        Simplex::from_word(cell, &idx)
            .ok_or_else(|| Error::Parse(format!("degeneracy word not strictly decreasing in {text:?}")))
    }

    /// Same nondegenerate data, new truncation (cells above are dropped).
    pub fn truncate(&self, d: usize) -> FinSSet {
        let mut cells = self.cells.clone();
        cells.truncate(d + 1);
        FinSSet::from_cells_unchecked(d, self.coskeletal_above, cells)
    }

    pub fn rename(mut self, f: impl Fn(&str) -> String) -> Self {
        for cs in &mut self.cells {
            for c in cs {
                c.name = f(&c.name);
            }
        }
        self
    }
}

/// A simplicial set presented by explicit simplices with face and
/// degeneracy operators on them. [`build`] turns it into normal form.
pub trait SimplicialModel {
    type Key: Clone + Eq + Hash + Ord;
    /// All simplices of degree `d`, degenerate ones included.
    fn simplices(&self, d: usize) -> Vec<Self::Key>;
    fn face(&self, d: usize, i: usize, key: &Self::Key) -> Self::Key;
    fn degeneracy(&self, d: usize, j: usize, key: &Self::Key) -> Self::Key;
    fn name(&self, key: &Self::Key) -> String;
}

/// Result of normalizing a [`SimplicialModel`].
#[derive(Clone, Debug)]
pub struct Built<K> {
    pub sset: FinSSet,
    /// per degree: key -> normal form
    pub index: Vec<HashMap<K, Simplex>>,
    /// per dimension: the key of each nondegenerate cell
    pub cell_keys: Vec<Vec<K>>,
}

impl<K: Clone + Eq + Hash> Built<K> {
    pub fn lookup(&self, d: usize, key: &K) -> Simplex {
        *self.index[d].get(key).expect("key not in normalized model")
    }

    pub fn try_lookup(&self, d: usize, key: &K) -> Option<Simplex> {
        self.index.get(d).and_then(|m| m.get(key)).copied()
    }

    pub fn key_of(&self, c: Cell) -> &K {
        &self.cell_keys[c.dim][c.idx]
    }

    /// Per degree: normal form -> key.
    pub fn reverse_index(&self) -> Vec<HashMap<Simplex, K>> {
        self.index.iter().map(|m| m.iter().map(|(k, &s)| (s, k.clone())).collect()).collect()
    }
}

impl Built<Simplex> {
    /// An existing object keyed by its own simplices.
    pub fn identity(x: &FinSSet) -> Built<Simplex> {
        let index = (0..=x.trunc_dim()).map(|d| x.simplices(d).into_iter().map(|s| (s, s)).collect()).collect();
        let cell_keys = (0..=x.trunc_dim()).map(|d| x.cells(d).map(Simplex::nondegenerate).collect()).collect();
        Built { sset: x.clone(), index, cell_keys }
    }
}

/// Normalize a model up to `trunc_dim`: a simplex `y` is degenerate iff
/// `s_j d_j y = y` for some `j`.
pub fn build<M: SimplicialModel>(model: &M, trunc_dim: usize) -> Built<M::Key> {
    assert!(trunc_dim <= MAX_DIM);
    let mut index: Vec<HashMap<M::Key, Simplex>> = Vec::with_capacity(trunc_dim + 1);
    let mut cells: Vec<Vec<CellData>> = Vec::with_capacity(trunc_dim + 1);
    let mut cell_keys: Vec<Vec<M::Key>> = Vec::with_capacity(trunc_dim + 1);
    for d in 0..=trunc_dim {
        let mut keys = model.simplices(d);
        keys.sort();
        keys.dedup();
        let mut idx_map: HashMap<M::Key, Simplex> = HashMap::with_capacity(keys.len());
        let mut dim_cells = Vec::new();
        let mut dim_keys = Vec::new();
        for y in keys {
            let mut normal = None;
            for j in 0..d {
                let z = model.face(d, j, &y);
                if model.degeneracy(d - 1, j, &z) == y {
                    let nz = index[d - 1][&z];
                    normal = Some(nz.degeneracy(j));
                    break;
                }
            }
            let s = match normal {
                Some(s) => s,
                None => {
                    let faces = if d == 0 {
                        vec![]
                    } else {
                        (0..=d)
                            .map(|i| {
                                let f = model.face(d, i, &y);
                                *index[d - 1].get(&f).unwrap_or_else(|| {
                                    panic!("model face of degree {d} not among degree {} simplices", d - 1)
                                })
                            })
                            .collect()
                    };
                    let cell = Cell { dim: d, idx: dim_cells.len() };
                    dim_cells.push(CellData { name: model.name(&y), faces });
                    dim_keys.push(y.clone());
                    Simplex::nondegenerate(cell)
                }
            };
            idx_map.insert(y, s);
        }
        index.push(idx_map);
        cells.push(dim_cells);
        cell_keys.push(dim_keys);
    }
    Built { sset: FinSSet::from_cells_unchecked(trunc_dim, None, cells), index, cell_keys }
}

/// Model whose simplices are the simplices of an existing `FinSSet`.
pub struct SelfModel<'a>(pub &'a FinSSet);

impl SimplicialModel for SelfModel<'_> {
    type Key = Simplex;
    fn simplices(&self, d: usize) -> Vec<Simplex> {
        self.0.simplices(d)
    }
    fn face(&self, _d: usize, i: usize, k: &Simplex) -> Simplex {
        self.0.face(*k, i)
    }
    fn degeneracy(&self, _d: usize, j: usize, k: &Simplex) -> Simplex {
        k.degeneracy(j)
    }
    fn name(&self, k: &Simplex) -> String {
        self.0.expr(*k)
    }
}

fn mono_name(m: &Mono) -> String {
    let v = m.values();
    if v.iter().all(|&x| x < 10) {
        v.iter().map(|x| x.to_string()).collect()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Sub-objects of `Δ[n]` given by a predicate on monotone maps closed under
/// precomposition.
struct SimplexModel<F: Fn(&Mono) -> bool> {
    n: usize,
    keep: F,
}

impl<F: Fn(&Mono) -> bool> SimplicialModel for SimplexModel<F> {
    type Key = Mono;
    fn simplices(&self, d: usize) -> Vec<Mono> {
        Mono::all(d, self.n).into_iter().filter(|m| (self.keep)(m)).collect()
    }
    fn face(&self, d: usize, i: usize, k: &Mono) -> Mono {
        k.after(&Mono::coface(d, i))
    }
    fn degeneracy(&self, d: usize, j: usize, k: &Mono) -> Mono {
        k.after(&Mono::codegeneracy(d, j))
    }
    fn name(&self, k: &Mono) -> String {
        mono_name(k)
    }
}

/// `Δ[n]` keyed by monotone maps `[d] -> [n]`.
pub fn standard_built(n: usize, trunc_dim: usize) -> Built<Mono> {
    build(&SimplexModel { n, keep: |_: &Mono| true }, trunc_dim)
}

/// The map `Δ[m] -> Δ[n]` induced by a monotone `θ : [m] -> [n]`.
pub fn simplex_map(theta: &Mono, n: usize, trunc_dim: usize) -> SMap {
    let a = standard_built(theta.dim(), trunc_dim);
    let b = standard_built(n, trunc_dim);
    let (sa, sb) = (Arc::new(a.sset.clone()), Arc::new(b.sset.clone()));
    SMap::from_keys(&a, &b, sa, sb, |_, k| theta.after(k))
}

impl FinSSet {
    /// The standard simplex `Δ[n]`; cells are named by their vertex lists.
    pub fn standard(n: usize, trunc_dim: usize) -> FinSSet {
        standard_built(n, trunc_dim).sset
    }

    pub fn point(trunc_dim: usize) -> FinSSet {
        Self::standard(0, trunc_dim)
    }

    /// `∂Δ[n]`.
    pub fn boundary(n: usize, trunc_dim: usize) -> FinSSet {
        build(&SimplexModel { n, keep: move |m: &Mono| m.epi_mono().1.len() < n + 1 }, trunc_dim).sset
    }

    /// The horn `Λ^n_k`.
    pub fn horn(n: usize, k: usize, trunc_dim: usize) -> FinSSet {
        build(
            &SimplexModel {
                n,
                keep: move |m: &Mono| {
                    let img = m.epi_mono().1;
                    (0..=n).any(|j| j != k && !img.contains(&j))
                },
            },
            trunc_dim,
        )
        .sset
    }

    /// A discrete simplicial set on the given vertex names.
    pub fn discrete<S: AsRef<str>>(names: &[S], trunc_dim: usize) -> FinSSet {
        let cells = vec![names
            .iter()
            .map(|n| CellData { name: n.as_ref().to_string(), faces: vec![] })
            .collect()];
        FinSSet::from_cells_unchecked(trunc_dim, None, cells)
    }

    /// The 0-coskeletal simplicial set on the given vertices: every tuple
    /// of vertices is a simplex.
    pub fn chaotic<S: AsRef<str>>(names: &[S], trunc_dim: usize) -> FinSSet {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let model = ChaoticModel { names };
        build(&model, trunc_dim).sset.with_coskeletal(Some(0))
    }
}

struct ChaoticModel {
    names: Vec<String>,
}

impl SimplicialModel for ChaoticModel {
    type Key = Vec<usize>;
    fn simplices(&self, d: usize) -> Vec<Vec<usize>> {
        let k = self.names.len();
        let mut out = vec![vec![]];
        for _ in 0..=d {
            let mut next = Vec::with_capacity(out.len() * k);
            for t in &out {
                for v in 0..k {
                    let mut t2 = t.clone();
                    t2.push(v);
                    next.push(t2);
                }
            }
            out = next;
        }
        out
    }
    fn face(&self, _d: usize, i: usize, key: &Vec<usize>) -> Vec<usize> {
        let mut k = key.clone();
        k.remove(i);
        k
    }
    fn degeneracy(&self, _d: usize, j: usize, key: &Vec<usize>) -> Vec<usize> {
        let mut k = key.clone();
        k.insert(j, key[j]);
        k
    }
    fn name(&self, key: &Vec<usize>) -> String {
        key.iter().map(|&v| self.names[v].as_str()).collect::<Vec<_>>().join("")
    }
}

/// Extends an `n`-coskeletal object by one degree: new top simplices are
/// the compatible boundary tuples of top-degree simplices.
pub fn extend_coskeletal(x: &FinSSet) -> Result<FinSSet> {
    let n = x
        .coskeletal_above()
        .ok_or_else(|| Error::Precondition("object is not flagged coskeletal".into()))?;
    let top = x.trunc_dim();
    if top < n + 1 && top != n {
        return Err(Error::Precondition(format!(
            "coskeletal extension needs trunc_dim ≥ {n}, have {top}"
        )));
    }
    if top + 1 > MAX_DIM {
        return Err(Error::Precondition("dimension limit reached".into()));
    }
    let model = CoskModel { x, top };
    let built = build(&model, top + 1);
    Ok(built.sset.with_coskeletal(Some(n)))
}

struct CoskModel<'a> {
    x: &'a FinSSet,
    top: usize,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum CoskKey {
    Old(Simplex),
    New(Vec<Simplex>),
}

impl SimplicialModel for CoskModel<'_> {
    type Key = CoskKey;
    fn simplices(&self, d: usize) -> Vec<CoskKey> {
        if d <= self.top {
            return self.x.simplices(d).into_iter().map(CoskKey::Old).collect();
        }
        // compatible (d+1)-tuples of (d-1)-simplices
        let lower = self.x.simplices(d - 1);
        let mut out = Vec::new();
        let mut cur: Vec<Simplex> = Vec::with_capacity(d + 1);
        fn rec(x: &FinSSet, lower: &[Simplex], d: usize, cur: &mut Vec<Simplex>, out: &mut Vec<CoskKey>) {
            let j = cur.len();
            if j == d + 1 {
                out.push(CoskKey::New(cur.clone()));
                return;
            }
            for &y in lower {
                // d_i y_j = d_{j-1} y_i for i < j
                let ok = (0..j).all(|i| x.face(y, i) == x.face(cur[i], j - 1));
                if ok {
                    cur.push(y);
                    rec(x, lower, d, cur, out);
                    cur.pop();
                }
            }
        }
        rec(self.x, &lower, d, &mut cur, &mut out);
        out
    }
    fn face(&self, d: usize, i: usize, key: &CoskKey) -> CoskKey {
        match key {
            CoskKey::Old(s) => CoskKey::Old(self.x.face(*s, i)),
            CoskKey::New(t) => {
                debug_assert_eq!(d, self.top + 1);
                CoskKey::Old(t[i])
            }
        }
    }
    fn degeneracy(&self, d: usize, j: usize, key: &CoskKey) -> CoskKey {
        match key {
            CoskKey::Old(s) if d < self.top => CoskKey::Old(s.degeneracy(j)),
            CoskKey::Old(s) => {
                let y = s.degeneracy(j);
                CoskKey::New((0..=d + 1).map(|i| self.x.face(y, i)).collect())
            }
            CoskKey::New(_) => unreachable!("degeneracy beyond extension degree"),
        }
    }
    fn name(&self, key: &CoskKey) -> String {
        match key {
            CoskKey::Old(s) => self.x.expr(*s),
            CoskKey::New(t) => {
                let v: Vec<String> = (0..t.len())
                    .map(|i| {
                        let vi = if i == 0 { self.x.vertex_of(t[1], 0) } else { self.x.vertex_of(t[0], i - 1) };
                        self.x.cell_name(vi.base()).to_string()
                    })
                    .collect();
                format!("<{}>", v.join(""))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplex_cells() {
        let d2 = FinSSet::standard(2, 3);
        assert_eq!(d2.num_cells(0), 3);
        assert_eq!(d2.num_cells(1), 3);
        assert_eq!(d2.num_cells(2), 1);
        assert_eq!(d2.num_cells(3), 0);
        // monotone maps [3] -> [2]: C(6, 4) = 15
        assert_eq!(d2.count_simplices(3), 15);
        assert_eq!(d2.simplices(3).len(), 15);
    }

    #[test]
    fn boundary_and_horn() {
        let b = FinSSet::boundary(2, 2);
        assert_eq!((b.num_cells(0), b.num_cells(1), b.num_cells(2)), (3, 3, 0));
        let h = FinSSet::horn(2, 0, 2);
        assert_eq!((h.num_cells(0), h.num_cells(1), h.num_cells(2)), (3, 2, 0));
    }

    #[test]
    fn expr_roundtrip() {
        let d1 = FinSSet::standard(1, 3);
        let e = d1.find_cell("01").unwrap();
        let s = Simplex::from_word(e, &[2, 0]).unwrap();
        let text = d1.expr(s);
        assert_eq!(text, "s2 s0 01");
        assert_eq!(d1.parse_expr(&text).unwrap(), s);
    }

    #[test]
    fn faces_of_degenerate_simplices() {
        let d1 = FinSSet::standard(1, 2);
        let e = Simplex::nondegenerate(d1.find_cell("01").unwrap());
        let s0e = e.degeneracy(0); // (0,0,1)
        assert_eq!(d1.face(s0e, 0), e);
        assert_eq!(d1.face(s0e, 1), e);
        let v0 = Simplex::nondegenerate(d1.find_cell("0").unwrap());
        assert_eq!(d1.face(s0e, 2), v0.degeneracy(0));
    }

    #[test]
    fn chaotic_is_coskeletal_and_extends() {
        let e = FinSSet::chaotic(&["a", "b"], 1);
        assert_eq!(e.num_cells(1), 2);
        let e2 = extend_coskeletal(&e).unwrap();
        assert_eq!(e2.trunc_dim(), 2);
        // nondegenerate 2-simplices of the chaotic set on 2 vertices: aba, bab
        assert_eq!(e2.num_cells(2), 2);
        let direct = FinSSet::chaotic(&["a", "b"], 2);
        assert_eq!(direct.num_cells(2), 2);
    }
}
