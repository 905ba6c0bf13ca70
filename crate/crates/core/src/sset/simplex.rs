//! Monotone maps between ordinals and Eilenberg–Zilber normal forms.
//!
//! Every simplex of a finite simplicial set is stored as a pair
//! `(nondegenerate cell, surjection)`. The surjection `[n] -> [m]` is encoded
//! by the set of positions `j` with `σ(j) = σ(j + 1)`, which is exactly the
//! index set of the strictly decreasing degeneracy word `s_{i_1} … s_{i_k}`.

use std::fmt;

/// Largest supported simplex dimension.
pub const MAX_DIM: usize = 15;

/// A monotone map `[k] -> [n]`, stored by its values.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    len: u8,
    vals: [u8; MAX_DIM + 1],
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mono{:?}", self.values())
    }
}

impl Mono {
    pub fn from_slice(vals: &[usize]) -> Self {
        assert!(!vals.is_empty() && vals.len() <= MAX_DIM + 1, "ordinal out of range");
        let mut m = Mono { len: vals.len() as u8, vals: [0; MAX_DIM + 1] };
        for (i, &v) in vals.iter().enumerate() {
            debug_assert!(i == 0 || vals[i - 1] <= v, "not monotone: {vals:?}");
            m.vals[i] = v as u8;
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let v: Vec<usize> = (0..=n).collect();
        Self::from_slice(&v)
    }

    pub fn constant(k: usize, value: usize) -> Self {
        Self::from_slice(&vec![value; k + 1])
    }

    /// The coface `δ_i : [n-1] -> [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        let v: Vec<usize> = (0..n).map(|x| if x < i { x } else { x + 1 }).collect();
        Self::from_slice(&v)
    }

    /// The codegeneracy `σ_j : [n+1] -> [n]` hitting `j` twice.
    pub fn codegeneracy(n: usize, j: usize) -> Self {
        let v: Vec<usize> = (0..=n + 1).map(|x| if x <= j { x } else { x - 1 }).collect();
        Self::from_slice(&v)
    }

    /// Domain dimension `k` of `[k] -> [n]`.
    pub fn dim(&self) -> usize {
        self.len as usize - 1
    }

    pub fn get(&self, i: usize) -> usize {
        self.vals[i] as usize
    }

    pub fn values(&self) -> Vec<usize> {
        self.vals[..self.len as usize].iter().map(|&v| v as usize).collect()
    }

    pub fn max_value(&self) -> usize {
        self.vals[self.len as usize - 1] as usize
    }

    /// `self ∘ before`.
    pub fn after(&self, before: &Mono) -> Mono {
        let mut m = Mono { len: before.len, vals: [0; MAX_DIM + 1] };
        for i in 0..before.len as usize {
            m.vals[i] = self.vals[before.vals[i] as usize];
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        (0..self.len as usize).all(|i| self.vals[i] as usize == i)
    }

    /// Epi–mono factorization: `self = mono ∘ epi`, with the codomain of
    /// `self` taken to be `[codim]`.
    pub fn epi_mono(&self) -> (Mono, Vec<usize>) {
        let mut image: Vec<usize> = Vec::with_capacity(self.len as usize);
        let mut epi = Mono { len: self.len, vals: [0; MAX_DIM + 1] };
        for i in 0..self.len as usize {
            let v = self.vals[i] as usize;
            if image.last() != Some(&v) {
                image.push(v);
            }
            epi.vals[i] = (image.len() - 1) as u8;
        }
        (epi, image)
    }

    /// All monotone maps `[k] -> [n]` in lexicographic order.
    pub fn all(k: usize, n: usize) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; k + 1];
        fn rec(pos: usize, lo: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Mono>) {
            if pos == cur.len() {
                out.push(Mono::from_slice(cur));
                return;
            }
            for v in lo..=n {
                cur[pos] = v;
                rec(pos + 1, v, n, cur, out);
            }
        }
        rec(0, 0, n, &mut cur, &mut out);
        out
    }
}

/// Identifier of a nondegenerate cell: its dimension and index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cell {
    pub dim: usize,
    pub idx: usize,
}

/// A simplex in normal form: a degeneracy of a nondegenerate cell.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Simplex {
    dim: u8,
    base_dim: u8,
    /// bit `j` set iff `σ(j) = σ(j+1)`
    mask: u16,
    idx: u32,
}

impl Simplex {
    pub fn nondegenerate(cell: Cell) -> Self {
        assert!(cell.dim <= MAX_DIM);
        Simplex { dim: cell.dim as u8, base_dim: cell.dim as u8, mask: 0, idx: cell.idx as u32 }
    }

    /// `σ^*(cell)` for a surjection `σ : [n] -> [cell.dim]`.
    pub fn from_surjection(cell: Cell, sigma: &Mono) -> Self {
        debug_assert_eq!(sigma.max_value(), cell.dim);
        let mut mask = 0u16;
        for j in 0..sigma.dim() {
            if sigma.get(j) == sigma.get(j + 1) {
                mask |= 1 << j;
            }
        }
        Simplex { dim: sigma.dim() as u8, base_dim: cell.dim as u8, mask, idx: cell.idx as u32 }
    }

    /// Build from a strictly decreasing degeneracy word `s_{i_1} … s_{i_k}`.
    pub fn from_word(cell: Cell, word: &[usize]) -> Option<Self> {
        if word.windows(2).any(|w| w[0] <= w[1]) {
            return None;
        }
        let dim = cell.dim + word.len();
        if dim > MAX_DIM {
            return None;
        }
        let mut mask = 0u16;
        for &j in word {
            if j >= dim {
                return None;
            }
            mask |= 1 << j;
        }
        Some(Simplex { dim: dim as u8, base_dim: cell.dim as u8, mask, idx: cell.idx as u32 })
    }

    /// Unchecked constructor used by parsers and validators.
    pub(crate) fn raw(dim: usize, base: Cell, mask: u16) -> Self {
        Simplex { dim: dim as u8, base_dim: base.dim as u8, mask, idx: base.idx as u32 }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn base(&self) -> Cell {
        Cell { dim: self.base_dim as usize, idx: self.idx as usize }
    }

    pub fn is_degenerate(&self) -> bool {
        self.mask != 0
    }

    pub(crate) fn mask(&self) -> u16 {
        self.mask
    }

    /// Degeneracy word, strictly decreasing.
    pub fn word(&self) -> Vec<usize> {
        (0..self.dim()).rev().filter(|j| self.mask & (1 << j) != 0).collect()
    }

    pub fn surjection(&self) -> Mono {
        let mut vals = Vec::with_capacity(self.dim() + 1);
        let mut cur = 0usize;
        vals.push(0);
        for j in 0..self.dim() {
            if self.mask & (1 << j) == 0 {
                cur += 1;
            }
            vals.push(cur);
        }
        Mono::from_slice(&vals)
    }

    /// Apply a further degeneracy given by a surjection `τ : [k] -> [dim]`.
    pub fn degenerate_by(&self, tau: &Mono) -> Simplex {
        let sigma = self.surjection();
        Simplex::from_surjection(self.base(), &sigma.after(tau))
    }

    /// `s_j` applied to this simplex.
    pub fn degeneracy(&self, j: usize) -> Simplex {
        self.degenerate_by(&Mono::codegeneracy(self.dim(), j))
    }

    /// Same degeneracy pattern, different base cell of the same dimension.
    pub fn with_base(&self, cell: Cell) -> Simplex {
        debug_assert_eq!(cell.dim, self.base_dim as usize);
        Simplex { idx: cell.idx as u32, ..*self }
    }

    /// The ids of positions `j` where the simplex is degenerate.
    pub fn degenerate_positions(&self) -> u16 {
        self.mask
    }
}

/// Number of surjections `[d] -> [m]`, i.e. `C(d, m)`.
pub fn surjection_count(d: usize, m: usize) -> usize {
    if m > d {
        return 0;
    }
    let mut r: usize = 1;
    for i in 0..m {
        r = r * (d - i) / (i + 1);
    }
    r
}

/// All surjections `[d] -> [m]` as masks, in increasing order.
pub fn surjection_masks(d: usize, m: usize) -> Vec<u16> {
    let k = d - m;
    (0u32..(1u32 << d))
        .filter(|x| x.count_ones() as usize == k)
        .map(|x| x as u16)
        .collect()
}

pub(crate) fn simplex_from_mask(d: usize, cell: Cell, mask: u16) -> Simplex {
    Simplex::raw(d, cell, mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_surjection_roundtrip() {
        let c = Cell { dim: 1, idx: 0 };
        let s = Simplex::from_word(c, &[2, 0]).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(s.surjection().values(), vec![0, 0, 1, 1]);
        assert_eq!(s.word(), vec![2, 0]);
        assert!(Simplex::from_word(c, &[0, 2]).is_none());
    }

    #[test]
    fn epi_mono_factors() {
        let m = Mono::from_slice(&[1, 1, 3]);
        let (e, img) = m.epi_mono();
        assert_eq!(e.values(), vec![0, 0, 1]);
        assert_eq!(img, vec![1, 3]);
    }

    #[test]
    fn counting_monotone_maps() {
        // monotone maps [2] -> [1]
        assert_eq!(Mono::all(2, 1).len(), 4);
        assert_eq!(surjection_count(4, 2), 6);
        assert_eq!(surjection_masks(4, 2).len(), 6);
    }
}
