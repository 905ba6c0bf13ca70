use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sset::certify::{certify_map, CertSummary, Certificate, CertifyMode};
use crate::sset::ops::{corestrict, pi0, subcomplex};
use crate::sset::{FinSSet, Mono, SMap, Simplex};
use crate::unionfind::UnionFind;

use super::{SSMap, SimpSpace};

/// The homotopy category: objects are the vertices of `X_0`, morphisms
/// the path components of the mapping spaces.
#[derive(Clone, Debug)]
pub struct HoCat {
    pub objects: Vec<String>,
    /// per class: (source object, target object, representative vertex of `X_1`)
    pub classes: Vec<(usize, usize, usize)>,
    /// class of every vertex of `X_1`
    pub class_of_vertex: Vec<usize>,
    /// `(f, g) -> g ∘ f` for composable `f : a -> b`, `g : b -> c`
    pub comp: HashMap<(usize, usize), usize>,
    pub identity: Vec<usize>,
}

impl HoCat {
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.classes[c].0 == a && self.classes[c].1 == b).collect()
    }

    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.comp.get(&(f, g)).copied()
    }

    pub fn is_invertible(&self, f: usize) -> bool {
        let (a, b, _) = self.classes[f];
        self.hom(b, a).into_iter().any(|g| {
            self.compose(f, g) == Some(self.identity[a]) && self.compose(g, f) == Some(self.identity[b])
        })
    }

    /// Isomorphism classes of objects.
    pub fn iso_classes(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.objects.len());
        for (f, &(a, b, _)) in self.classes.iter().enumerate() {
            if self.is_invertible(f) {
                uf.union(a, b);
            }
        }
        uf.labels()
    }

    /// Check associativity and unit laws of the table.
    pub fn check_laws(&self) -> Result<()> {
        for (f, &(a, b, _)) in self.classes.iter().enumerate() {
            if self.compose(self.identity[a], f) != Some(f) || self.compose(f, self.identity[b]) != Some(f) {
                return Err(Error::Invalid(format!("unit law fails at class {f}")));
            }
            for g in (0..self.classes.len()).filter(|&g| self.classes[g].0 == b) {
                let fg = self.compose(f, g).unwrap();
                let c = self.classes[g].1;
                for h in (0..self.classes.len()).filter(|&h| self.classes[h].0 == c) {
                    let l = self.compose(fg, h);
                    let r = self.compose(g, h).and_then(|gh| self.compose(f, gh));
                    if l != r {
                        return Err(Error::Invalid(format!("associativity fails at classes ({f}, {g}, {h})")));
                    }
                }
            }
        }
        Ok(())
    }
}

fn vertex_idx(x: &FinSSet, s: Simplex) -> usize {
    x.vertex_of(s, 0).base().idx
}

/// The fiber of `(source, target) : X_1 -> X_0 × X_0` over `(a, b)`, as a
/// sub-object of `X_1`.
pub fn mapping_fiber(x: &SimpSpace, a: usize, b: usize) -> (Arc<FinSSet>, SMap) {
    let x1 = x.level(1);
    let (s, t) = (x.source(), x.target());
    let cells: Vec<_> = x1
        .all_cells()
        .filter(|&c| {
            let y = Simplex::nondegenerate(c);
            let (ys, yt) = (s.apply(y), t.apply(y));
            let va = x.level(0).vertex(a).degenerate_by(&Mono::constant(c.dim, 0));
            let vb = x.level(0).vertex(b).degenerate_by(&Mono::constant(c.dim, 0));
            ys == va && yt == vb
        })
        .collect();
    subcomplex(x1, cells)
}

/// `Ho(X)`: hom sets are π0 of the mapping fibers; composition picks, for
/// each composable pair of classes, the first 2-simplex of `X_2` (in index
/// order) whose spine lies in them.
pub fn ho_category(x: &SimpSpace) -> Result<HoCat> {
    if x.outer_dim() < 2 {
        return Err(Error::Precondition("Ho(X) needs outer levels 0, 1 and 2".into()));
    }
    let (x0, x1, x2) = (x.level(0), x.level(1), x.level(2));
    let (src, tgt) = (x.source(), x.target());
    let ends: Vec<(usize, usize)> = (0..x1.num_cells(0))
        .map(|v| {
            let s = x1.vertex(v);
            (vertex_idx(x0, src.apply(s)), vertex_idx(x0, tgt.apply(s)))
        })
        .collect();
    let mut uf = UnionFind::new(x1.num_cells(0));
    if x1.trunc_dim() >= 1 {
        for e in x1.cells(1) {
            let y = Simplex::nondegenerate(e);
            if src.apply(y).is_degenerate() && tgt.apply(y).is_degenerate() {
                let f = &x1.cell(e).faces;
                uf.union(f[0].base().idx, f[1].base().idx);
            }
        }
    }
    let (class_of_vertex, n) = uf.labels();
    let mut classes = vec![(0, 0, 0); n];
    let mut seen = vec![false; n];
    for (v, &c) in class_of_vertex.iter().enumerate() {
        if !seen[c] {
            seen[c] = true;
            classes[c] = (ends[v].0, ends[v].1, v);
        }
    }
    let cls = |s: Simplex| class_of_vertex[x1.vertex_of(s, 0).base().idx];
    let identity: Vec<usize> = (0..x0.num_cells(0)).map(|a| cls(x.degeneracy(0, 0).apply(x0.vertex(a)))).collect();
    let (d0, d1, d2) = (x.face(2, 0), x.face(2, 1), x.face(2, 2));
    let mut comp = HashMap::new();
    for t in 0..x2.num_cells(0) {
        let s = x2.vertex(t);
        comp.entry((cls(d2.apply(s)), cls(d0.apply(s)))).or_insert_with(|| cls(d1.apply(s)));
    }
    for f in 0..n {
        for g in 0..n {
            if classes[f].1 == classes[g].0 && !comp.contains_key(&(f, g)) {
                return Err(Error::MissingFiller(format!(
                    "no 2-simplex composes {} then {}",
                    x1.cell_name(x1.vertex(classes[f].2).base()),
                    x1.cell_name(x1.vertex(classes[g].2).base())
                )));
            }
        }
    }
    let objects = x0.cells(0).map(|c| x0.cell_name(c).to_string()).collect();
    let ho = HoCat { objects, classes, class_of_vertex, comp, identity };
    ho.check_laws()?;
    Ok(ho)
}

/// The union of components of `X_1` whose arrows are invertible in `Ho(X)`.
#[derive(Clone, Debug)]
pub struct HoEquiv {
    pub obj: Arc<FinSSet>,
    pub incl: SMap,
    /// component labels (of `X_1`) that were kept
    pub components: Vec<usize>,
    pub total_components: usize,
    /// every vertex of `X_1` in a kept component
    pub vertices: Vec<usize>,
    pub contains_degeneracies: bool,
}

pub fn hoequiv(x: &SimpSpace, ho: &HoCat) -> Result<HoEquiv> {
    let x1 = x.level(1);
    let comps = pi0(x1)?;
    let mut all_inv = vec![true; comps.count];
    for v in 0..x1.num_cells(0) {
        if !ho.is_invertible(ho.class_of_vertex[v]) {
            all_inv[comps.labels[v]] = false;
        }
    }
    let components: Vec<usize> = (0..comps.count).filter(|&c| all_inv[c]).collect();
    let cells: Vec<_> = x1
        .all_cells()
        .filter(|&c| all_inv[comps.labels[x1.vertex_of(Simplex::nondegenerate(c), 0).base().idx]])
        .collect();
    let vertices = (0..x1.num_cells(0)).filter(|&v| all_inv[comps.labels[v]]).collect();
    let (obj, incl) = subcomplex(x1, cells);
    let contains_degeneracies = corestrict(x.degeneracy(0, 0), &incl).is_some();
    Ok(HoEquiv { obj, incl, components, total_components: comps.count, vertices, contains_degeneracies })
}

/// `π0(X_0)/∼`: components of `X_0` identified along `hoequiv`.
pub fn pi0_mod_equiv(x: &SimpSpace, he: &HoEquiv) -> Result<(Vec<usize>, usize)> {
    let x0 = x.level(0);
    let p = pi0(x0)?;
    let mut uf = UnionFind::new(p.count);
    for &v in &he.vertices {
        let s = x.level(1).vertex(v);
        let a = p.of(x0, x.source().apply(s));
        let b = p.of(x0, x.target().apply(s));
        uf.union(a, b);
    }
    let (cls, n) = uf.labels();
    Ok(((0..x0.num_cells(0)).map(|v| cls[p.labels[v]]).collect(), n))
}

/// Certificate for `X_0 -> hoequiv` along the degeneracy.
pub fn completeness_check(x: &SimpSpace, hom_bound: usize, budget: u64) -> Result<Certificate> {
    let ho = ho_category(x)?;
    let he = hoequiv(x, &ho)?;
    let s0 = corestrict(x.degeneracy(0, 0), &he.incl)
        .ok_or_else(|| Error::Invalid("degenerate arrows are not all invertible".into()))?;
    Ok(certify_map(&s0, CertifyMode::AllowHomological, hom_bound, budget))
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberCheck {
    pub source_pair: (String, String),
    pub image_pair: (String, String),
    pub certificate: CertSummary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct DkReport {
    pub fibers: Vec<FiberCheck>,
    pub fully_faithful: Verdict,
    pub essentially_surjective: bool,
    /// an object of the target missed up to equivalence
    pub missed: Option<String>,
    pub dk: Verdict,
}

/// Dwyer–Kan check: per vertex pair the map of mapping fibers is
/// certified, and essential surjectivity is tested on `π0(X_0)/∼`.
pub fn dk_check(f: &SSMap, hom_bound: usize, budget: u64) -> Result<DkReport> {
    let (x, y) = (&f.src, &f.tgt);
    let hox = ho_category(x)?;
    let hoy = ho_category(y)?;
    let (x0, y0) = (x.level(0), y.level(0));
    let img = |a: usize| vertex_idx(y0, f.level(0).apply(x0.vertex(a)));
    let pairs: Vec<(usize, usize)> =
        (0..x0.num_cells(0)).flat_map(|a| (0..x0.num_cells(0)).map(move |b| (a, b))).collect();
    let results: Vec<(FiberCheck, Certificate)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (_, ix) = mapping_fiber(x, a, b);
            let (_, iy) = mapping_fiber(y, img(a), img(b));
            let map = corestrict(&ix.then(f.level(1)), &iy).expect("arrow map respects endpoints");
            let cert = certify_map(&map, CertifyMode::AllowHomological, hom_bound, budget);
            let check = FiberCheck {
                source_pair: (x0.cell_name(x0.vertex(a).base()).into(), x0.cell_name(x0.vertex(b).base()).into()),
                image_pair: (
                    y0.cell_name(y0.vertex(img(a)).base()).into(),
                    y0.cell_name(y0.vertex(img(b)).base()).into(),
                ),
                certificate: cert.summary(),
            };
            (check, cert)
        })
        .collect();
    let fully_faithful = if results.iter().any(|(_, c)| c.is_failed()) {
        Verdict::No
    } else if results.iter().all(|(_, c)| c.is_proof()) {
        Verdict::Yes
    } else {
        Verdict::Unknown
    };
    let hex = hoequiv(x, &hox)?;
    let hey = hoequiv(y, &hoy)?;
    pi0_mod_equiv(x, &hex)?;
    let (cy, ny) = pi0_mod_equiv(y, &hey)?;
    let mut hit = vec![false; ny];
    for a in 0..x0.num_cells(0) {
        hit[cy[img(a)]] = true;
    }
    let missed = (0..y0.num_cells(0)).find(|&v| !hit[cy[v]]).map(|v| y0.cell_name(y0.vertex(v).base()).to_string());
    let essentially_surjective = missed.is_none();
    let dk = match (fully_faithful, essentially_surjective) {
        (Verdict::No, _) | (_, false) => Verdict::No,
        (Verdict::Yes, true) => Verdict::Yes,
        _ => Verdict::Unknown,
    };
    Ok(DkReport { fibers: results.into_iter().map(|(c, _)| c).collect(), fully_faithful, essentially_surjective, missed, dk })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sspace::{make_e, make_f};

    #[test]
    fn chaotic_groupoid_homotopy_category() {
        let e = make_e(3, 1);
        let ho = ho_category(&e).unwrap();
        assert_eq!(ho.classes.len(), 4);
        assert!((0..4).all(|f| ho.is_invertible(f)));
        let he = hoequiv(&e, &ho).unwrap();
        assert_eq!(he.vertices.len(), 4);
        assert_eq!(pi0_mod_equiv(&e, &he).unwrap().1, 1);
        let c = completeness_check(&e, 0, 10_000).unwrap();
        assert_eq!(c.summary().detail, "π0 2 vs 4");
    }

    #[test]
    fn interval_category() {
        let f1 = make_f(1, 3, 1);
        let ho = ho_category(&f1).unwrap();
        assert_eq!(ho.hom(0, 1).len(), 1);
        assert_eq!(ho.hom(1, 0).len(), 0);
        let he = hoequiv(&f1, &ho).unwrap();
        assert_eq!(he.vertices.len(), 2);
        assert_eq!(pi0_mod_equiv(&f1, &he).unwrap().1, 2);
        assert!(completeness_check(&f1, 0, 10_000).unwrap().is_proof());
    }
}
