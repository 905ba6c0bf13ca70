use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::icat::{nerve_built, InternalCat};
use crate::sset::ops::subcomplex;
use crate::sset::search::{search, HomProblem, SearchOptions};
use crate::sset::{validate, Cell, CellData, FinSSet, SMap, Simplex};

use super::{AttachmentSpec, CellComplex};

/// A random finite simplicial set of dimension at most 2 with at most
/// `max_cells` nondegenerate cells.
pub fn random_sset<R: Rng>(rng: &mut R, trunc_dim: usize, max_cells: usize) -> FinSSet {
    let max_cells = max_cells.max(1);
    let nv = rng.gen_range(1..=3.min(max_cells));
    let vertex = |i: usize| Simplex::nondegenerate(Cell { dim: 0, idx: i });
    let verts: Vec<CellData> =
        (0..nv).map(|i| CellData { name: ((b'a' + i as u8) as char).to_string(), faces: vec![] }).collect();
    let mut left = max_cells - nv;
    let ne = if trunc_dim >= 1 { rng.gen_range(0..=left.min(3)) } else { 0 };
    left -= ne;
    let mut ends = Vec::new();
    let mut edges = Vec::new();
    for e in 0..ne {
        let (a, b) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
        ends.push((a, b));
        edges.push(CellData { name: format!("e{e}"), faces: vec![vertex(b), vertex(a)] });
    }
    let edge_between = |rng: &mut R, a: usize, b: usize| -> Option<Simplex> {
        let mut cands: Vec<Simplex> = ends
            .iter()
            .enumerate()
            .filter(|(_, &(x, y))| (x, y) == (a, b))
            .map(|(i, _)| Simplex::nondegenerate(Cell { dim: 1, idx: i }))
            .collect();
        if a == b {
            cands.push(vertex(a).degeneracy(0));
        }
        cands.choose(rng).copied()
    };
    let mut tris = Vec::new();
    let nt = if trunc_dim >= 2 { rng.gen_range(0..=left.min(2)) } else { 0 };
    for _ in 0..4 * nt {
        if tris.len() == nt {
            break;
        }
        let (a, b, c) = (rng.gen_range(0..nv), rng.gen_range(0..nv), rng.gen_range(0..nv));
        let (Some(bc), Some(ac), Some(ab)) = (edge_between(rng, b, c), edge_between(rng, a, c), edge_between(rng, a, b))
        else {
            continue;
        };
        if bc.is_degenerate() && ac.is_degenerate() && ab.is_degenerate() {
            continue;
        }
        tris.push(CellData { name: format!("t{}", tris.len()), faces: vec![bc, ac, ab] });
    }
    let x = FinSSet::from_cells_unchecked(trunc_dim, None, vec![verts, edges, tris]);
    debug_assert!(validate(&x).is_valid());
    x
}

/// A random `K ⊆ L`.
pub fn random_sub_pair<R: Rng>(rng: &mut R, trunc_dim: usize, max_cells: usize) -> SMap {
    let l = Arc::new(random_sset(rng, trunc_dim, max_cells));
    let gens: Vec<Cell> = l.all_cells().filter(|_| rng.gen_bool(0.4)).collect();
    subcomplex(&l, gens).1
}

/// A random attachment to `c`: `K ⊆ L` random, `n ≤ max_n`, attaching map
/// drawn from the first few maps `K -> N(C)_n` (falling back to `K = ∅`).
pub fn random_attachment<R: Rng>(rng: &mut R, c: &InternalCat, max_n: usize, max_cells: usize) -> AttachmentSpec {
    let dd = c.trunc_dim();
    let n = rng.gen_range(0..=max_n);
    let incl = random_sub_pair(rng, dd, max_cells);
    let nb = nerve_built(c, n);
    let level = nb.space.level(n).clone();
    let k = incl.src().clone();
    let mut found: Vec<SMap> = Vec::new();
    let p = HomProblem::simple(k.clone(), level.clone());
    search(&p, SearchOptions { budget: 200_000, iso: false }, |a| {
        found.push(SMap::new_unchecked(k.clone(), level.clone(), a[0].clone()));
        found.len() < 64
    });
    if let Some(chain) = found.choose(rng) {
        return AttachmentSpec { n, incl, chain: chain.clone() };
    }
    let empty = Arc::new(FinSSet::empty(dd));
    AttachmentSpec {
        n,
        incl: SMap::new_unchecked(empty.clone(), incl.tgt().clone(), vec![]),
        chain: SMap::new_unchecked(empty, level, vec![]),
    }
}

/// A cell complex built from `∅` by `steps` random attachments.
pub fn random_complex<R: Rng>(
    rng: &mut R,
    steps: usize,
    outer_dim: usize,
    trunc_dim: usize,
    max_cells: usize,
) -> Result<CellComplex> {
    let mut cx = CellComplex::empty(outer_dim, trunc_dim);
    for _ in 0..steps {
        let spec = random_attachment(rng, &cx.cat, 2, max_cells);
        cx.attach(spec)?;
    }
    Ok(cx)
}
