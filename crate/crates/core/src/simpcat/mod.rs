//! Simplicially enriched categories with finitely many objects, their
//! internalization, homotopy categories, and the Grothendieck
//! construction of a simplicial functor.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::icat::{build_icat, nerve_built, nerve_map, BuiltCat, CategoryModel, FinCat, ICatMap, InternalCat};
use crate::report::ValidationReport;
use crate::sset::certify::{certify_map, CertSummary, CertifyMode};
use crate::sset::kan::kan_probe;
use crate::sset::ops::{pi0, product, Pullback};
use crate::sset::{validate, FinSSet, Mono, SMap, Simplex};
use crate::sspace::{dk_check, ho_category, hoequiv, HoCat, Verdict};

fn degen(v: Simplex, d: usize) -> Simplex {
    v.degenerate_by(&Mono::constant(d, 0))
}

/// A simplicial category: mapping spaces per ordered pair of objects,
/// composition `map(x,y) × map(y,z) -> map(x,z)` sending `(f, g)` to
/// `g ∘ f`, and identity vertices.
#[derive(Clone, Debug)]
pub struct SimpCat {
    pub objects: Vec<String>,
    /// `maps[x][y] = map(x, y)`
    pub maps: Vec<Vec<Arc<FinSSet>>>,
    pub identities: Vec<Simplex>,
    /// keyed by `(x, y, z)`: the product and the composition map on it
    pub comp: HashMap<(usize, usize, usize), (Arc<Pullback>, SMap)>,
}

impl SimpCat {
    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn trunc_dim(&self) -> usize {
        self.maps.first().and_then(|r| r.first()).map_or(0, |m| m.trunc_dim())
    }

    /// Assemble from a composition rule on nondegenerate cells of the
    /// products.
    pub fn from_fn(
        objects: Vec<String>,
        maps: Vec<Vec<Arc<FinSSet>>>,
        identities: Vec<Simplex>,
        compose: impl Fn(usize, usize, usize, Simplex, Simplex) -> Simplex,
    ) -> Result<SimpCat> {
        let n = objects.len();
        if maps.len() != n || maps.iter().any(|r| r.len() != n) || identities.len() != n {
            return Err(Error::Invalid("mapping spaces must form a square table over the objects".into()));
        }
        let mut comp = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let pb = Arc::new(product(&maps[x][y], &maps[y][z])?);
                    let images = (0..=pb.obj.trunc_dim())
                        .map(|d| {
                            pb.obj
                                .cells(d)
                                .map(|c| {
                                    let (f, g) = pb.split(Simplex::nondegenerate(c));
                                    compose(x, y, z, f, g)
                                })
                                .collect()
                        })
                        .collect();
                    let m = SMap::new_unchecked(pb.obj.clone(), maps[x][z].clone(), images);
                    comp.insert((x, y, z), (pb, m));
                }
            }
        }
        Ok(SimpCat { objects, maps, identities, comp })
    }

    /// An ordinary category with discrete mapping spaces.
    pub fn from_fincat(c: &FinCat, trunc_dim: usize) -> SimpCat {
        let n = c.num_objects();
        let homs: Vec<Vec<Vec<usize>>> = (0..n).map(|a| (0..n).map(|b| c.hom(a, b)).collect()).collect();
        let maps: Vec<Vec<Arc<FinSSet>>> = homs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|h| {
                        let names: Vec<&str> = h.iter().map(|&f| c.arrow_names[f].as_str()).collect();
                        Arc::new(FinSSet::discrete(&names, trunc_dim))
                    })
                    .collect()
            })
            .collect();
        let pos = |a: usize, b: usize, f: usize| homs[a][b].iter().position(|&g| g == f).unwrap();
        let identities = (0..n).map(|a| maps[a][a].vertex(pos(a, a, c.identities[a]))).collect();
        SimpCat::from_fn(c.objects.clone(), maps.clone(), identities, |x, y, z, f, g| {
            let h = c.compose(homs[x][y][f.base().idx], homs[y][z][g.base().idx]).expect("composable");
            degen(maps[x][z].vertex(pos(x, z, h)), f.dim())
        })
        .expect("square table")
    }

    /// `g ∘ f` for simplices of equal dimension.
    pub fn compose(&self, x: usize, y: usize, z: usize, f: Simplex, g: Simplex) -> Simplex {
        let (pb, m) = &self.comp[&(x, y, z)];
        m.apply(pb.pair(f, g).expect("product contains every pair"))
    }

    pub fn identity(&self, x: usize, d: usize) -> Simplex {
        degen(self.identities[x], d)
    }

    /// Unit and associativity laws as exact equalities on all simplices.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let n = self.num_objects();
        for x in 0..n {
            for y in 0..n {
                rep.merge(&format!("map({},{})", self.objects[x], self.objects[y]), validate(&self.maps[x][y]));
            }
        }
        for ((x, y, z), (_, m)) in &self.comp {
            if let Err(e) = m.check() {
                rep.push("composition is simplicial", format!("({x},{y},{z})"), e.to_string());
            }
        }
        if !rep.is_valid() {
            return rep;
        }
        for d in 0..=self.trunc_dim() {
            for x in 0..n {
                for y in 0..n {
                    for f in self.maps[x][y].simplices(d) {
                        if self.compose(x, x, y, self.identity(x, d), f) != f
                            || self.compose(x, y, y, f, self.identity(y, d)) != f
                        {
                            rep.push("unit laws", self.maps[x][y].expr(f), "identity composite differs");
                        }
                        for z in 0..n {
                            for g in self.maps[y][z].simplices(d) {
                                let gf = self.compose(x, y, z, f, g);
                                for w in 0..n {
                                    for h in self.maps[z][w].simplices(d) {
                                        let l = self.compose(x, z, w, gf, h);
                                        let r = self.compose(x, y, w, f, self.compose(y, z, w, g, h));
                                        if l != r {
                                            rep.push(
                                                "associativity",
                                                format!(
                                                    "({}, {}, {})",
                                                    self.maps[x][y].expr(f),
                                                    self.maps[y][z].expr(g),
                                                    self.maps[z][w].expr(h)
                                                ),
                                                "composites differ",
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        rep
    }
}

/// Arrow keys of `Int(C)`: `(x, y, f ∈ map(x, y))`.
pub type IntArrow = (usize, usize, Simplex);

struct IntModel<'a>(&'a SimpCat);

impl CategoryModel for IntModel<'_> {
    type Ob = usize;
    type Ar = IntArrow;
    fn objects(&self, _d: usize) -> Vec<usize> {
        (0..self.0.num_objects()).collect()
    }
    fn arrows(&self, d: usize) -> Vec<IntArrow> {
        let n = self.0.num_objects();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                out.extend(self.0.maps[x][y].simplices(d).into_iter().map(|f| (x, y, f)));
            }
        }
        out
    }
    fn ob_face(&self, _d: usize, _i: usize, x: &usize) -> usize {
        *x
    }
    fn ob_degeneracy(&self, _d: usize, _j: usize, x: &usize) -> usize {
        *x
    }
    fn ar_face(&self, _d: usize, i: usize, f: &IntArrow) -> IntArrow {
        (f.0, f.1, self.0.maps[f.0][f.1].face(f.2, i))
    }
    fn ar_degeneracy(&self, _d: usize, j: usize, f: &IntArrow) -> IntArrow {
        (f.0, f.1, f.2.degeneracy(j))
    }
    fn source(&self, _d: usize, f: &IntArrow) -> usize {
        f.0
    }
    fn target(&self, _d: usize, f: &IntArrow) -> usize {
        f.1
    }
    fn identity(&self, d: usize, x: &usize) -> IntArrow {
        (*x, *x, self.0.identity(*x, d))
    }
    fn compose(&self, _d: usize, f: &IntArrow, g: &IntArrow) -> IntArrow {
        (f.0, g.1, self.0.compose(f.0, f.1, g.1, f.2, g.2))
    }
    fn ob_name(&self, x: &usize) -> String {
        self.0.objects[*x].clone()
    }
    fn ar_name(&self, f: &IntArrow) -> String {
        format!("{}:{}>{}", self.0.maps[f.0][f.1].expr(f.2), self.0.objects[f.0], self.0.objects[f.1])
    }
}

/// `Int(C)` with its keys: discrete objects, `Ar = ⊔ map(x, y)`.
pub fn internalize_built(c: &SimpCat) -> BuiltCat<usize, IntArrow> {
    build_icat(&IntModel(c), c.trunc_dim())
}

pub fn internalize(c: &SimpCat) -> InternalCat {
    internalize_built(c).cat
}

/// `Ho(C)`: hom sets `π0 map(x, y)`. Class representatives and
/// `class_of_vertex` refer to the vertices of `Ar(Int C)`.
pub fn ho_of_simpcat(c: &SimpCat) -> Result<HoCat> {
    let built = internalize_built(c);
    let ar = &built.cat.ar;
    let n = c.num_objects();
    let mut class_of_vertex = vec![0; ar.num_cells(0)];
    let mut classes = Vec::new();
    let mut class_of: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            let m = &c.maps[x][y];
            let comps = pi0(m)?;
            for v in 0..m.num_cells(0) {
                let idx = built.ar_keys.lookup(0, &(x, y, m.vertex(v))).base().idx;
                let key = (x, y, comps.labels[v]);
                let cls = *class_of.entry(key).or_insert_with(|| {
                    classes.push((x, y, idx));
                    classes.len() - 1
                });
                class_of_vertex[idx] = cls;
            }
        }
    }
    let key_of = |cls: usize| built.ar_key(ar.vertex(classes[cls].2)).2;
    let mut comp = HashMap::new();
    for f in 0..classes.len() {
        for g in 0..classes.len() {
            let ((a, b, _), (b2, z, _)) = (classes[f], classes[g]);
            if b != b2 {
                continue;
            }
            let h = c.compose(a, b, z, key_of(f), key_of(g));
            let idx = built.ar_keys.lookup(0, &(a, z, h)).base().idx;
            comp.insert((f, g), class_of_vertex[idx]);
        }
    }
    let identity =
        (0..n).map(|x| class_of_vertex[built.ar_keys.lookup(0, &(x, x, c.identity(x, 0))).base().idx]).collect();
    let ho = HoCat { objects: c.objects.clone(), classes, class_of_vertex, comp, identity };
    ho.check_laws()?;
    Ok(ho)
}

/// Kan probes on every mapping space; the first failing pair, if any.
pub fn fibrancy_probe(c: &SimpCat, probe_dim: usize) -> Option<(String, String)> {
    let n = c.num_objects();
    for x in 0..n {
        for y in 0..n {
            if !kan_probe(&c.maps[x][y], probe_dim).passed() {
                return Some((c.objects[x].clone(), c.objects[y].clone()));
            }
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceDetection {
    pub arrow: String,
    pub ho_invertible: bool,
    pub in_hoequiv: bool,
    pub agree: bool,
    pub fibrant: bool,
    /// the probes failed, so agreement is not guaranteed
    pub advisory: bool,
}

/// Compare invertibility of `[f]` in `Ho(C)` with membership of `f` in
/// `hoequiv(N Int C)`.
pub fn equivalence_detection_check(
    c: &SimpCat,
    a: usize,
    b: usize,
    f: Simplex,
    probe_dim: usize,
) -> Result<EquivalenceDetection> {
    if a >= c.num_objects() || b >= c.num_objects() || f.dim() != 0 || f.base().idx >= c.maps[a][b].num_cells(0) {
        return Err(Error::Precondition("not a vertex of a mapping space".into()));
    }
    let built = internalize_built(c);
    let ho = ho_of_simpcat(c)?;
    let arrow = built.ar_keys.lookup(0, &(a, b, f));
    let ho_invertible = ho.is_invertible(ho.class_of_vertex[arrow.base().idx]);
    let n = nerve_built(&built.cat, 2);
    let hon = ho_category(&n.space)?;
    let he = hoequiv(&n.space, &hon)?;
    let idx = n.levels[1].lookup(0, &vec![arrow]).base().idx;
    let in_hoequiv = he.vertices.contains(&idx);
    let fibrant = fibrancy_probe(c, probe_dim).is_none();
    Ok(EquivalenceDetection {
        arrow: built.cat.ar.expr(arrow),
        ho_invertible,
        in_hoequiv,
        agree: ho_invertible == in_hoequiv,
        fibrant,
        advisory: !fibrant,
    })
}

/// A simplicial functor: an object map and maps of mapping spaces.
#[derive(Clone, Debug)]
pub struct SimpFunctor {
    pub ob: Vec<usize>,
    /// keyed by `(x, y)`: `map(x, y) -> map(F x, F y)`
    pub maps: HashMap<(usize, usize), SMap>,
}

impl SimpFunctor {
    /// The functor induced by an ordinary functor between categories with
    /// discrete mapping spaces.
    pub fn from_functor(c: &FinCat, d: &FinCat, ob: &[usize], ar: &[usize], trunc_dim: usize) -> SimpFunctor {
        let (sc, sd) = (SimpCat::from_fincat(c, trunc_dim), SimpCat::from_fincat(d, trunc_dim));
        let mut maps = HashMap::new();
        for x in 0..c.num_objects() {
            for y in 0..c.num_objects() {
                let (src, tgt) = (&sc.maps[x][y], &sd.maps[ob[x]][ob[y]]);
                let dh = d.hom(ob[x], ob[y]);
                let images = (0..=trunc_dim)
                    .map(|k| {
                        if k > 0 {
                            return vec![];
                        }
                        c.hom(x, y).iter().map(|&f| tgt.vertex(dh.iter().position(|&g| g == ar[f]).unwrap())).collect()
                    })
                    .collect();
                maps.insert((x, y), SMap::new_unchecked(src.clone(), tgt.clone(), images));
            }
        }
        SimpFunctor { ob: ob.to_vec(), maps }
    }

    /// Check the functor laws on all simplices.
    pub fn check(&self, c: &SimpCat, d: &SimpCat) -> Result<()> {
        let n = c.num_objects();
        for x in 0..n {
            if self.maps[&(x, x)].apply(c.identities[x]) != d.identities[self.ob[x]] {
                return Err(Error::InvalidMap(format!("identity of {} not preserved", c.objects[x])));
            }
            for y in 0..n {
                self.maps[&(x, y)].check()?;
                for z in 0..n {
                    for k in 0..=c.trunc_dim() {
                        for f in c.maps[x][y].simplices(k) {
                            for g in c.maps[y][z].simplices(k) {
                                let lhs = self.maps[&(x, z)].apply(c.compose(x, y, z, f, g));
                                let (fx, fy, fz) = (self.ob[x], self.ob[y], self.ob[z]);
                                let rhs =
                                    d.compose(fx, fy, fz, self.maps[&(x, y)].apply(f), self.maps[&(y, z)].apply(g));
                                if lhs != rhs {
                                    return Err(Error::InvalidMap("composition not preserved".into()));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `Int(F)`, given both internalizations with keys.
    pub fn internalize(
        &self,
        src: &BuiltCat<usize, IntArrow>,
        tgt: &BuiltCat<usize, IntArrow>,
    ) -> ICatMap {
        let ob = SMap::from_keys(&src.ob_keys, &tgt.ob_keys, src.cat.ob.clone(), tgt.cat.ob.clone(), |_, &x| self.ob[x]);
        let ar = SMap::from_keys(&src.ar_keys, &tgt.ar_keys, src.cat.ar.clone(), tgt.cat.ar.clone(), |_, &(x, y, f)| {
            (self.ob[x], self.ob[y], self.maps[&(x, y)].apply(f))
        });
        ICatMap { ob, ar }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MappingCheck {
    pub pair: (String, String),
    pub image: (String, String),
    pub certificate: CertSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntReflectsReport {
    pub mapping_spaces: Vec<MappingCheck>,
    pub fully_faithful: Verdict,
    pub essentially_surjective: bool,
    pub simpcat_dk: Verdict,
    /// the same question asked of `N(Int F)`
    pub internal_fully_faithful: Verdict,
    pub internal_dk: Verdict,
    pub agree: bool,
    pub fibrant: bool,
    pub advisory: bool,
}

/// Dwyer–Kan for simplicial categories (mapping-space certificates and
/// essential surjectivity of `Ho`), compared with [`dk_check`] on the
/// nerves of the internalizations.
pub fn int_reflects_dk_check(
    f: &SimpFunctor,
    c: &SimpCat,
    d: &SimpCat,
    probe_dim: usize,
    hom_bound: usize,
    budget: u64,
) -> Result<IntReflectsReport> {
    f.check(c, d)?;
    let n = c.num_objects();
    let mut mapping_spaces = Vec::new();
    let mut certs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let cert = certify_map(&f.maps[&(x, y)], CertifyMode::AllowHomological, hom_bound, budget);
            mapping_spaces.push(MappingCheck {
                pair: (c.objects[x].clone(), c.objects[y].clone()),
                image: (d.objects[f.ob[x]].clone(), d.objects[f.ob[y]].clone()),
                certificate: cert.summary(),
            });
            certs.push(cert);
        }
    }
    let fully_faithful = if certs.iter().any(|c| c.is_failed()) {
        Verdict::No
    } else if certs.iter().all(|c| c.is_proof()) {
        Verdict::Yes
    } else {
        Verdict::Unknown
    };
    let hod = ho_of_simpcat(d)?;
    let (iso_class, count) = hod.iso_classes();
    let mut hit = vec![false; count];
    for x in 0..n {
        hit[iso_class[f.ob[x]]] = true;
    }
    let essentially_surjective = hit.iter().all(|&h| h);
    let simpcat_dk = match (fully_faithful, essentially_surjective) {
        (Verdict::No, _) | (_, false) => Verdict::No,
        (Verdict::Yes, true) => Verdict::Yes,
        _ => Verdict::Unknown,
    };
    let (bc, bd) = (internalize_built(c), internalize_built(d));
    let g = f.internalize(&bc, &bd);
    let (nc, nd) = (nerve_built(&bc.cat, 2), nerve_built(&bd.cat, 2));
    let rep = dk_check(&nerve_map(&g, &nc, &nd), hom_bound, budget)?;
    let fibrant = fibrancy_probe(c, probe_dim).is_none() && fibrancy_probe(d, probe_dim).is_none();
    Ok(IntReflectsReport {
        mapping_spaces,
        fully_faithful,
        essentially_surjective,
        simpcat_dk,
        internal_fully_faithful: rep.fully_faithful,
        internal_dk: rep.dk,
        agree: fully_faithful == rep.fully_faithful && simpcat_dk == rep.dk,
        fibrant,
        advisory: !fibrant,
    })
}

/// A simplicial functor `C -> sSet` for the Grothendieck construction:
/// spaces `F(x)` and actions `F(x) × map(x, y) -> F(y)`.
#[derive(Clone, Debug)]
pub struct GrData {
    pub fibers: Vec<Arc<FinSSet>>,
    /// keyed by `(x, y)`
    pub action: HashMap<(usize, usize), (Arc<Pullback>, SMap)>,
}

impl GrData {
    /// Assemble from an action rule on nondegenerate cells of the products.
    pub fn from_fn(
        c: &SimpCat,
        fibers: Vec<Arc<FinSSet>>,
        act: impl Fn(usize, usize, Simplex, Simplex) -> Simplex,
    ) -> Result<GrData> {
        let n = c.num_objects();
        if fibers.len() != n {
            return Err(Error::Invalid("one space per object is required".into()));
        }
        let mut action = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                let pb = Arc::new(product(&fibers[x], &c.maps[x][y])?);
                let images = (0..=pb.obj.trunc_dim())
                    .map(|d| {
                        pb.obj
                            .cells(d)
                            .map(|cell| {
                                let (a, g) = pb.split(Simplex::nondegenerate(cell));
                                act(x, y, a, g)
                            })
                            .collect()
                    })
                    .collect();
                action.insert((x, y), (pb.clone(), SMap::new_unchecked(pb.obj.clone(), fibers[y].clone(), images)));
            }
        }
        Ok(GrData { fibers, action })
    }

    /// The constant functor with value `k`, every arrow acting trivially.
    pub fn constant(c: &SimpCat, k: Arc<FinSSet>) -> Result<GrData> {
        GrData::from_fn(c, vec![k; c.num_objects()], |_, _, a, _| a)
    }

    /// `a · g`.
    pub fn act(&self, x: usize, y: usize, a: Simplex, g: Simplex) -> Simplex {
        let (pb, m) = &self.action[&(x, y)];
        m.apply(pb.pair(a, g).expect("product contains every pair"))
    }

    /// Functor laws on all simplices; the first violation as an error.
    pub fn check(&self, c: &SimpCat) -> Result<()> {
        let n = c.num_objects();
        for ((x, y), (_, m)) in &self.action {
            m.check().map_err(|e| Error::Invalid(format!("action {}→{}: {e}", c.objects[*x], c.objects[*y])))?;
        }
        for d in 0..=c.trunc_dim() {
            for x in 0..n {
                for a in self.fibers[x].simplices(d) {
                    if self.act(x, x, a, c.identity(x, d)) != a {
                        return Err(Error::Invalid(format!(
                            "unit law fails at {} in F({})",
                            self.fibers[x].expr(a),
                            c.objects[x]
                        )));
                    }
                    for y in 0..n {
                        for g in c.maps[x][y].simplices(d) {
                            let ag = self.act(x, y, a, g);
                            for z in 0..n {
                                for h in c.maps[y][z].simplices(d) {
                                    if self.act(y, z, ag, h) != self.act(x, z, a, c.compose(x, y, z, g, h)) {
                                        return Err(Error::Invalid(format!(
                                            "action is not associative at ({}, {}, {})",
                                            self.fibers[x].expr(a),
                                            c.maps[x][y].expr(g),
                                            c.maps[y][z].expr(h)
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

struct GrModel<'a> {
    c: &'a SimpCat,
    f: &'a GrData,
}

impl CategoryModel for GrModel<'_> {
    /// `(x, a ∈ F(x))`
    type Ob = (usize, Simplex);
    /// `(x, y, a ∈ F(x), g ∈ map(x, y))`
    type Ar = (usize, usize, Simplex, Simplex);
    fn objects(&self, d: usize) -> Vec<Self::Ob> {
        (0..self.c.num_objects()).flat_map(|x| self.f.fibers[x].simplices(d).into_iter().map(move |a| (x, a))).collect()
    }
    fn arrows(&self, d: usize) -> Vec<Self::Ar> {
        let n = self.c.num_objects();
        let mut out = Vec::new();
        for x in 0..n {
            let fx = self.f.fibers[x].simplices(d);
            for y in 0..n {
                let gs = self.c.maps[x][y].simplices(d);
                for &a in &fx {
                    out.extend(gs.iter().map(|&g| (x, y, a, g)));
                }
            }
        }
        out
    }
    fn ob_face(&self, _d: usize, i: usize, k: &Self::Ob) -> Self::Ob {
        (k.0, self.f.fibers[k.0].face(k.1, i))
    }
    fn ob_degeneracy(&self, _d: usize, j: usize, k: &Self::Ob) -> Self::Ob {
        (k.0, k.1.degeneracy(j))
    }
    fn ar_face(&self, _d: usize, i: usize, k: &Self::Ar) -> Self::Ar {
        (k.0, k.1, self.f.fibers[k.0].face(k.2, i), self.c.maps[k.0][k.1].face(k.3, i))
    }
    fn ar_degeneracy(&self, _d: usize, j: usize, k: &Self::Ar) -> Self::Ar {
        (k.0, k.1, k.2.degeneracy(j), k.3.degeneracy(j))
    }
    fn source(&self, _d: usize, k: &Self::Ar) -> Self::Ob {
        (k.0, k.2)
    }
    fn target(&self, _d: usize, k: &Self::Ar) -> Self::Ob {
        (k.1, self.f.act(k.0, k.1, k.2, k.3))
    }
    fn identity(&self, d: usize, x: &Self::Ob) -> Self::Ar {
        (x.0, x.0, x.1, self.c.identity(x.0, d))
    }
    fn compose(&self, _d: usize, f: &Self::Ar, g: &Self::Ar) -> Self::Ar {
        (f.0, g.1, f.2, self.c.compose(f.0, f.1, g.1, f.3, g.3))
    }
    fn ob_name(&self, k: &Self::Ob) -> String {
        format!("{}@{}", self.f.fibers[k.0].expr(k.1), self.c.objects[k.0])
    }
    fn ar_name(&self, k: &Self::Ar) -> String {
        format!("({}@{},{})", self.f.fibers[k.0].expr(k.2), self.c.objects[k.0], self.c.maps[k.0][k.1].expr(k.3))
    }
}

/// `Gr(F) = ⊔ F(c) × map(c, d)`: source is the projection, target the
/// action, and `((a, g), (a·g, h)) ↦ (a, h ∘ g)`.
pub fn grothendieck(c: &SimpCat, f: &GrData) -> Result<InternalCat> {
    f.check(c)?;
    Ok(build_icat(&GrModel { c, f }, c.trunc_dim()).cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icat::{count_icat_maps, nerve, validate_icat};

    #[test]
    fn internalizing_ordinary_categories() {
        for c in [FinCat::chain(1), FinCat::chaotic(2), FinCat::cyclic_group(3)] {
            let s = SimpCat::from_fincat(&c, 2);
            assert!(s.validate().is_valid());
            let i = internalize(&s);
            assert!(validate_icat(&i).is_valid());
            assert_eq!(i.ar.num_cells(0), c.num_arrows());
            assert_eq!(i.ar.total_cells(), c.num_arrows());
            // Int is fully faithful on these: maps agree with functors
            let d = FinCat::chain(2);
            let functors = c.functors(&d, 100_000).unwrap().len() as u64;
            let int_maps = count_icat_maps(&i, &internalize(&SimpCat::from_fincat(&d, 2)), 100_000).unwrap();
            assert_eq!(functors, int_maps);
        }
    }

    /// One object, `map = Δ[1]` composing by pointwise maximum.
    fn interval_endo(trunc: usize) -> SimpCat {
        let m = Arc::new(FinSSet::standard(1, trunc));
        let objects = vec!["x".to_string()];
        let top = m.clone();
        SimpCat::from_fn(objects, vec![vec![m.clone()]], vec![m.vertex(0)], move |_, _, _, f, g| {
            let vf: Vec<usize> = (0..=f.dim()).map(|i| top.vertex_of(f, i).base().idx).collect();
            let vg: Vec<usize> = (0..=g.dim()).map(|i| top.vertex_of(g, i).base().idx).collect();
            let v: Vec<usize> = vf.iter().zip(&vg).map(|(a, b)| *a.max(b)).collect();
            let theta = Mono::from_slice(&v);
            let (surj, image) = theta.epi_mono();
            let cell = crate::sset::Mono::from_slice(&image);
            let base = top.act(Simplex::nondegenerate(top.cells(1).next().unwrap()), &cell);
            base.degenerate_by(&surj)
        })
        .unwrap()
    }

    #[test]
    fn homotopy_category_of_an_interval_monoid() {
        let s = interval_endo(2);
        assert!(s.validate().is_valid());
        let ho = ho_of_simpcat(&s).unwrap();
        assert_eq!(ho.hom(0, 0).len(), 1);
        let i = internalize(&s);
        assert!(validate_icat(&i).is_valid());
    }

    #[test]
    fn equivalence_detection_examples() {
        let g = SimpCat::from_fincat(&FinCat::chaotic(2), 2);
        for a in 0..2 {
            for b in 0..2 {
                let r = equivalence_detection_check(&g, a, b, g.maps[a][b].vertex(0), 2).unwrap();
                assert!(r.ho_invertible && r.in_hoequiv && r.agree);
            }
        }
        let c = SimpCat::from_fincat(&FinCat::chain(1), 2);
        let r = equivalence_detection_check(&c, 0, 1, c.maps[0][1].vertex(0), 2).unwrap();
        assert!(!r.ho_invertible && !r.in_hoequiv && r.agree);
        let r = equivalence_detection_check(&c, 1, 1, c.identities[1], 2).unwrap();
        assert!(r.ho_invertible && r.in_hoequiv);
    }

    #[test]
    fn grothendieck_examples() {
        // terminal functor: Gr(F) ≅ Int(C)
        let c = SimpCat::from_fincat(&FinCat::chain(1), 2);
        let pt = Arc::new(FinSSet::point(2));
        let gr = grothendieck(&c, &GrData::constant(&c, pt).unwrap()).unwrap();
        assert!(validate_icat(&gr).is_valid());
        let int = internalize(&c);
        assert_eq!((gr.ob.total_cells(), gr.ar.total_cells()), (int.ob.total_cells(), int.ar.total_cells()));
        // [0] acting on K: discrete on K
        let z = SimpCat::from_fincat(&FinCat::chain(0), 2);
        let k = Arc::new(FinSSet::boundary(2, 2));
        let gr = grothendieck(&z, &GrData::constant(&z, k.clone()).unwrap()).unwrap();
        assert!(validate_icat(&gr).is_valid());
        assert_eq!(gr.ob.total_cells(), gr.ar.total_cells());
        assert_eq!(gr.ob.total_cells(), k.total_cells());
        // nerve cardinality: Σ F(c0) × map(c0,c1) × map(c1,c2) at each inner degree
        let n = nerve(&gr, 2);
        assert_eq!(n.level(2).count_simplices(1), k.count_simplices(1));
    }

    #[test]
    fn swap_action_groupoid() {
        let z2 = SimpCat::from_fincat(&FinCat::cyclic_group(2), 1);
        let k = Arc::new(FinSSet::discrete(&["a", "b"], 1));
        let data = GrData::from_fn(&z2, vec![k.clone()], |_, _, a, g| {
            if g.base().idx == 0 {
                a
            } else {
                k.vertex(1 - a.base().idx)
            }
        })
        .unwrap();
        let gr = grothendieck(&z2, &data).unwrap();
        assert!(validate_icat(&gr).is_valid());
        assert_eq!(gr.ar.num_cells(0), 4);
        // a bad action is rejected
        let bad = GrData::from_fn(&z2, vec![k.clone()], |_, _, _, _| k.vertex(0)).unwrap();
        assert!(grothendieck(&z2, &bad).is_err());
    }

    #[test]
    fn int_reflects_dk_on_the_suite() {
        let p = FinCat::chain(0);
        let i1 = FinCat::chaotic(2);
        let two = FinCat::discrete(2);
        let cases = [
            (p.clone(), i1.clone(), vec![0], vec![0], Verdict::Yes),
            (two.clone(), i1.clone(), vec![0, 1], vec![0, 3], Verdict::No),
            (FinCat::chain(1), p.clone(), vec![0, 0], vec![0, 0, 0], Verdict::No),
        ];
        for (c, d, ob, ar, truth) in cases {
            let f = SimpFunctor::from_functor(&c, &d, &ob, &ar, 1);
            let (sc, sd) = (SimpCat::from_fincat(&c, 1), SimpCat::from_fincat(&d, 1));
            let r = int_reflects_dk_check(&f, &sc, &sd, 1, 0, 10_000).unwrap();
            assert!(r.agree, "{r:?}");
            assert_eq!(r.simpcat_dk, truth);
        }
    }
}
