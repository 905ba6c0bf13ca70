use std::collections::HashMap;

use crate::sset::{SMap, Simplex};
use crate::sspace::{build_space, BisimplicialModel, BuiltSpace, SSMap, SimpSpace};

use super::{ICatMap, InternalCat};

struct NerveModel<'a> {
    c: &'a InternalCat,
}

impl NerveModel<'_> {
    /// object `j` of a chain at level `n`
    fn vertex(&self, n: usize, k: &[Simplex], j: usize) -> Simplex {
        if n == 0 {
            k[0]
        } else if j < n {
            self.c.source(k[j])
        } else {
            self.c.target(k[n - 1])
        }
    }
}

impl BisimplicialModel for NerveModel<'_> {
    /// level 0: `[x]`; level `n > 0`: composable `[f_1, …, f_n]`
    type Key = Vec<Simplex>;

    fn keys(&self, m: usize, d: usize) -> Vec<Vec<Simplex>> {
        if m == 0 {
            return self.c.ob.simplices(d).into_iter().map(|x| vec![x]).collect();
        }
        let ars = self.c.ar.simplices(d);
        let mut by_src: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
        for &f in &ars {
            by_src.entry(self.c.source(f)).or_default().push(f);
        }
        let mut out: Vec<Vec<Simplex>> = ars.iter().map(|&f| vec![f]).collect();
        for _ in 1..m {
            let mut next = Vec::new();
            for chain in &out {
                if let Some(gs) = by_src.get(&self.c.target(*chain.last().unwrap())) {
                    for &g in gs {
                        let mut c = chain.clone();
                        c.push(g);
                        next.push(c);
                    }
                }
            }
            out = next;
        }
        out
    }

    fn inner_face(&self, m: usize, _d: usize, i: usize, k: &Vec<Simplex>) -> Vec<Simplex> {
        let l = if m == 0 { &self.c.ob } else { &self.c.ar };
        k.iter().map(|&s| l.face(s, i)).collect()
    }

    fn inner_degeneracy(&self, _m: usize, _d: usize, j: usize, k: &Vec<Simplex>) -> Vec<Simplex> {
        k.iter().map(|s| s.degeneracy(j)).collect()
    }

    fn outer_face(&self, m: usize, _d: usize, i: usize, k: &Vec<Simplex>) -> Vec<Simplex> {
        if m == 1 {
            return vec![if i == 0 { self.c.target(k[0]) } else { self.c.source(k[0]) }];
        }
        let mut out = k.clone();
        if i == 0 {
            out.remove(0);
        } else if i == m {
            out.pop();
        } else {
            let h = self.c.compose(k[i - 1], k[i]).expect("composable chain");
            out.splice(i - 1..=i, [h]);
        }
        out
    }

    fn outer_degeneracy(&self, m: usize, _d: usize, j: usize, k: &Vec<Simplex>) -> Vec<Simplex> {
        let id = self.c.identity(self.vertex(m, k, j));
        if m == 0 {
            return vec![id];
        }
        let mut out = k.clone();
        out.insert(j, id);
        out
    }

    fn name(&self, m: usize, k: &Vec<Simplex>) -> String {
        let l = if m == 0 { &self.c.ob } else { &self.c.ar };
        k.iter().map(|&s| l.expr(s)).collect::<Vec<_>>().join("|")
    }
}

/// The nerve with its chain keys.
pub fn nerve_built(c: &InternalCat, outer_dim: usize) -> BuiltSpace<Vec<Simplex>> {
    build_space(&NerveModel { c }, outer_dim, c.trunc_dim())
}

/// `N(C)`: level `n` is the object of composable `n`-chains.
pub fn nerve(c: &InternalCat, outer_dim: usize) -> SimpSpace {
    nerve_built(c, outer_dim).space
}

/// `N(F) : N(C) -> N(D)`, given both nerves with keys.
pub fn nerve_map(f: &ICatMap, src: &BuiltSpace<Vec<Simplex>>, tgt: &BuiltSpace<Vec<Simplex>>) -> SSMap {
    let levels = (0..src.levels.len())
        .map(|m| {
            let part = if m == 0 { &f.ob } else { &f.ar };
            SMap::from_keys(
                &src.levels[m],
                &tgt.levels[m],
                src.space.level(m).clone(),
                tgt.space.level(m).clone(),
                |_, k| k.iter().map(|&s| part.apply(s)).collect(),
            )
        })
        .collect();
    SSMap::new_unchecked(src.space.clone(), tgt.space.clone(), levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icat::FinCat;
    use crate::sspace::{make_e, make_f, segal_map, validate_space};
    use crate::sset::search::find_iso;

    #[test]
    fn nerve_of_chain_is_representable() {
        for n in 0..3 {
            let nc = nerve(&FinCat::chain(n).to_icat(1), 3);
            assert!(validate_space(&nc).is_valid());
            let f = make_f(n, 3, 1);
            for m in 0..=3 {
                assert_eq!(nc.level(m).num_cells(0), f.level(m).num_cells(0));
                assert!(find_iso(nc.level(m), f.level(m), 1000).unwrap().is_some());
            }
        }
    }

    #[test]
    fn nerve_of_isomorphism() {
        let ne = nerve(&FinCat::chaotic(2).to_icat(1), 3);
        let e = make_e(3, 1);
        for m in 0..=3 {
            assert_eq!(ne.level(m).num_cells(0), e.level(m).num_cells(0));
        }
    }

    #[test]
    fn nerves_are_segal() {
        let nc = nerve(&FinCat::chaotic(3).to_icat(1), 3);
        for n in 0..=3 {
            assert!(segal_map(&nc, n).unwrap().is_iso());
        }
    }
}
