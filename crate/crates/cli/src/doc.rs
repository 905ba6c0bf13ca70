//! JSON documents for every object kind, in both directions.
//!
//! Simplices are written as expressions `"id"` or `"s3 s1 id"`. Maps are
//! tables from nondegenerate cell ids of the source to expressions in the
//! target. Structure maps defined on a fiber product (composition,
//! actions) are lists of triples `[left, right, value]`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use icat_core::cells::AttachmentSpec;
use icat_core::icat::{nerve_built, validate_icat, FinPresCat, ICatMap, InternalCat};
use icat_core::presheaf::{validate_presheaf, Presheaf, Variance};
use icat_core::report::ValidationReport;
use icat_core::simpcat::{GrData, SimpCat, SimpFunctor};
use icat_core::sset::ops::Pullback;
use icat_core::sset::{validate, CellData, FinSSet, SMap, Simplex};
use icat_core::sspace::{validate_space, SimpSpace};

use crate::CliError;

type Res<T> = std::result::Result<T, CliError>;

fn at(path: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Doc { path: path.to_string(), message: e.to_string() }
}

pub type Table = BTreeMap<String, String>;

/// Cell ids as written: whitespace would split an expression.
fn clean(name: &str) -> String {
    name.split_whitespace().collect::<Vec<_>>().join("_")
}

/// Parse an expression whose id is compared after cleaning.
pub fn px(x: &FinSSet, text: &str) -> icat_core::Result<Simplex> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let (last, word) =
        toks.split_last().ok_or_else(|| icat_core::Error::Parse(format!("empty simplex expression {text:?}")))?;
    let cell = find(x, last).ok_or_else(|| icat_core::Error::Parse(format!("unknown simplex id {last:?}")))?;
    let mut idx = Vec::with_capacity(word.len());
    for w in word {
        let j = w
            .strip_prefix('s')
            .and_then(|r| r.parse::<usize>().ok())
            .ok_or_else(|| icat_core::Error::Parse(format!("bad degeneracy token {w:?} in {text:?}")))?;
        idx.push(j);
    }
    Simplex::from_word(cell, &idx)
        .ok_or_else(|| icat_core::Error::Parse(format!("degeneracy word not strictly decreasing in {text:?}")))
}

fn find(x: &FinSSet, id: &str) -> Option<icat_core::sset::Cell> {
    x.find_cell(id).or_else(|| x.all_cells().find(|&c| clean(x.cell_name(c)) == id))
}

/// `x.expr(s)` with the base id cleaned.
pub fn ex(x: &FinSSet, s: Simplex) -> String {
    let mut parts: Vec<String> = s.word().iter().map(|j| format!("s{j}")).collect();
    parts.push(clean(x.cell_name(s.base())));
    parts.join(" ")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellDoc {
    pub id: String,
    pub faces: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SSetDoc {
    #[serde(default = "sset_kind")]
    pub kind: String,
    pub trunc_dim: usize,
    #[serde(default)]
    pub coskeletal_above: Option<usize>,
    pub simplices: BTreeMap<usize, Vec<CellDoc>>,
}

fn sset_kind() -> String {
    "sset".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SSpaceDoc {
    pub kind: String,
    pub outer_dim: usize,
    pub levels: Vec<SSetDoc>,
    /// `faces[m-1][i] : X_m -> X_{m-1}`
    pub faces: Vec<Vec<Table>>,
    /// `degeneracies[m][j] : X_m -> X_{m+1}`
    pub degeneracies: Vec<Vec<Table>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ICatDoc {
    pub kind: String,
    pub ob: SSetDoc,
    pub ar: SSetDoc,
    pub s: Table,
    pub t: Table,
    pub e: Table,
    /// `[f, g, g∘f]` for each composable pair
    pub m: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresheafDoc {
    pub kind: String,
    /// "right": `x·g` over `t(g)`; "left": `g·x` over `s(g)`
    pub variance: String,
    pub category: ICatDoc,
    pub carrier: SSetDoc,
    pub projection: Table,
    /// `[element, arrow, result]`
    pub action: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AttachmentDoc {
    pub kind: String,
    pub n: usize,
    pub category: ICatDoc,
    #[serde(rename = "K")]
    pub k: SSetDoc,
    #[serde(rename = "L")]
    pub l: SSetDoc,
    pub incl: Table,
    /// `K -> N(C)_n`, chains named `f1|f2|…`
    pub attaching: Table,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompositionDoc {
    pub x: String,
    pub y: String,
    pub z: String,
    /// `[f, g, g∘f]`
    pub entries: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SCatDoc {
    pub kind: String,
    pub objects: Vec<String>,
    /// `maps[x][y] = map(x, y)`
    pub maps: Vec<Vec<SSetDoc>>,
    pub identities: Vec<String>,
    pub composition: Vec<CompositionDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionDoc {
    pub x: String,
    pub y: String,
    /// `[a, g, a·g]`
    pub entries: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrDataDoc {
    pub kind: String,
    pub category: SCatDoc,
    pub fibers: Vec<SSetDoc>,
    pub action: Vec<ActionDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ICatMapDoc {
    pub kind: String,
    pub src: ICatDoc,
    pub tgt: ICatDoc,
    pub ob: Table,
    pub ar: Table,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapSpaceDoc {
    pub x: String,
    pub y: String,
    pub map: Table,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SCatMapDoc {
    pub kind: String,
    pub src: SCatDoc,
    pub tgt: SCatDoc,
    pub ob: Vec<String>,
    pub maps: Vec<MapSpaceDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresLevelDoc {
    pub degree: usize,
    pub objects: Vec<String>,
    /// `[edge, source, target]`
    pub generators: Vec<[String; 3]>,
    /// words as lists of generator ids, `[lhs, rhs]`
    pub relations: Vec<[Vec<String>; 2]>,
    pub rules: usize,
    pub confluent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FpCatDoc {
    pub kind: String,
    pub levels: Vec<PresLevelDoc>,
}

/// A loaded document.
#[derive(Clone, Debug)]
pub enum Object {
    SSet(Arc<FinSSet>),
    SSpace(SimpSpace),
    ICat(InternalCat),
    Presheaf { cat: InternalCat, presheaf: Presheaf },
    Attachment { cat: InternalCat, spec: AttachmentSpec },
    SCat(SimpCat),
    GrData { cat: SimpCat, data: GrData },
    ICatMap { src: InternalCat, tgt: InternalCat, map: ICatMap },
    SCatMap { src: SimpCat, tgt: SimpCat, functor: SimpFunctor },
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::SSet(_) => "sset",
            Object::SSpace(_) => "sspace",
            Object::ICat(_) => "icat",
            Object::Presheaf { .. } => "presheaf",
            Object::Attachment { .. } => "attachment",
            Object::SCat(_) => "scat",
            Object::GrData { .. } => "grdata",
            Object::ICatMap { .. } => "icatmap",
            Object::SCatMap { .. } => "scatmap",
        }
    }
}

fn typed<T: serde::de::DeserializeOwned>(v: Value) -> Res<T> {
    serde_path_to_error::deserialize(v).map_err(|e| at(&e.path().to_string(), e.inner()))
}

/// Parse a document of any kind; structural laws are not checked here
/// (see [`validate_object`]).
pub fn load(text: &str) -> Res<Object> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| at(&format!("line {} column {}", e.line(), e.column()), e))?;
    let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| at("kind", "missing document kind"))?.to_string();
    Ok(match kind.as_str() {
        "sset" => Object::SSet(Arc::new(sset_from_doc(&typed(v)?, "")?)),
        "sspace" => Object::SSpace(sspace_from_doc(&typed(v)?, "")?),
        "icat" => Object::ICat(icat_from_doc(&typed(v)?, "")?),
        "presheaf" => {
            let d: PresheafDoc = typed(v)?;
            let (cat, presheaf) = presheaf_from_doc(&d)?;
            Object::Presheaf { cat, presheaf }
        }
        "attachment" => {
            let d: AttachmentDoc = typed(v)?;
            let (cat, spec) = attachment_from_doc(&d)?;
            Object::Attachment { cat, spec }
        }
        "scat" => Object::SCat(scat_from_doc(&typed(v)?, "")?),
        "grdata" => {
            let d: GrDataDoc = typed(v)?;
            let (cat, data) = grdata_from_doc(&d)?;
            Object::GrData { cat, data }
        }
        "icatmap" => {
            let d: ICatMapDoc = typed(v)?;
            let src = icat_from_doc(&d.src, "src.")?;
            let tgt = icat_from_doc(&d.tgt, "tgt.")?;
            let map = ICatMap {
                ob: map_from_table(&src.ob, &tgt.ob, &d.ob, "ob")?,
                ar: map_from_table(&src.ar, &tgt.ar, &d.ar, "ar")?,
            };
            Object::ICatMap { src, tgt, map }
        }
        "scatmap" => {
            let d: SCatMapDoc = typed(v)?;
            let (src, tgt, functor) = scatmap_from_doc(&d)?;
            Object::SCatMap { src, tgt, functor }
        }
        "fpcat" => return Err(at("kind", "fpcat documents are output only")),
        other => return Err(at("kind", format!("unknown document kind {other:?}"))),
    })
}

/// Every law the object's kind promises, as violations.
pub fn validate_object(o: &Object) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let mut err = |law: &str, e: icat_core::Error| rep.push(law, "", e.to_string());
    match o {
        Object::SSet(x) => return validate(x),
        Object::SSpace(x) => return validate_space(x),
        Object::ICat(c) => return validate_icat(c),
        Object::Presheaf { cat, presheaf } => {
            let mut r = validate_icat(cat);
            if r.is_valid() {
                r.merge("presheaf", validate_presheaf(presheaf, cat));
            }
            return r;
        }
        Object::Attachment { cat, spec } => {
            let mut r = validate_icat(cat);
            if let Err(e) = spec.validate(cat) {
                r.push("attachment", "", e.to_string());
            }
            return r;
        }
        Object::SCat(c) => return c.validate(),
        Object::GrData { cat, data } => {
            let r = cat.validate();
            if !r.is_valid() {
                return r;
            }
            if let Err(e) = data.check(cat) {
                err("functor laws", e);
            }
        }
        Object::ICatMap { src, tgt, map } => {
            let mut r = validate_icat(src);
            r.merge("target", validate_icat(tgt));
            if !r.is_valid() {
                return r;
            }
            if let Err(e) = map.check(src, tgt) {
                err("functor laws", e);
            }
        }
        Object::SCatMap { src, tgt, functor } => {
            let mut r = src.validate();
            r.merge("target", tgt.validate());
            if !r.is_valid() {
                return r;
            }
            if let Err(e) = functor.check(src, tgt) {
                err("functor laws", e);
            }
        }
    }
    rep
}

fn expect_kind(found: &str, want: &str, path: &str) -> Res<()> {
    if found == want {
        Ok(())
    } else {
        Err(at(&format!("{path}kind"), format!("expected kind {want:?}, found {found:?}")))
    }
}

// ---- simplicial sets and maps

pub fn sset_from_doc(d: &SSetDoc, path: &str) -> Res<FinSSet> {
    expect_kind(&d.kind, "sset", path)?;
    if let Some((&top, _)) = d.simplices.iter().rev().find(|(_, v)| !v.is_empty()) {
        if top > d.trunc_dim {
            return Err(at(&format!("{path}simplices.{top}"), format!("cells above trunc_dim {}", d.trunc_dim)));
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut cells: Vec<Vec<CellData>> = Vec::new();
    for dim in 0..=d.trunc_dim {
        let partial = FinSSet::from_cells_unchecked(d.trunc_dim, None, cells.clone());
        let mut row = Vec::new();
        for (i, c) in d.simplices.get(&dim).map(Vec::as_slice).unwrap_or(&[]).iter().enumerate() {
            let here = format!("{path}simplices.{dim}[{i}]");
            if !seen.insert(c.id.clone()) {
                return Err(at(&here, format!("duplicate id {:?}", c.id)));
            }
            if c.id.split_whitespace().count() != 1 {
                return Err(at(&here, format!("id {:?} is not a single token", c.id)));
            }
            let want = if dim == 0 { 0 } else { dim + 1 };
            if c.faces.len() != want {
                return Err(at(&here, format!("{} faces given, {want} expected", c.faces.len())));
            }
            let mut faces = Vec::with_capacity(want);
            for (j, f) in c.faces.iter().enumerate() {
                let s = px(&partial, f).map_err(|e| at(&format!("{here}.faces[{j}]"), e))?;
                if s.dim() + 1 != dim {
                    return Err(at(&format!("{here}.faces[{j}]"), format!("{f:?} has dimension {}", s.dim())));
                }
                faces.push(s);
            }
            row.push(CellData { name: c.id.clone(), faces });
        }
        cells.push(row);
    }
    Ok(FinSSet::from_cells_unchecked(d.trunc_dim, d.coskeletal_above, cells))
}

pub fn sset_to_doc(x: &FinSSet) -> SSetDoc {
    let mut simplices = BTreeMap::new();
    for dim in 0..=x.trunc_dim() {
        let row: Vec<CellDoc> = x
            .cells(dim)
            .map(|c| CellDoc {
                id: clean(x.cell_name(c)),
                faces: x.cell(c).faces.iter().map(|&f| ex(x, f)).collect(),
            })
            .collect();
        if !row.is_empty() {
            simplices.insert(dim, row);
        }
    }
    SSetDoc { kind: sset_kind(), trunc_dim: x.trunc_dim(), coskeletal_above: x.coskeletal_above(), simplices }
}

pub fn map_from_table(src: &Arc<FinSSet>, tgt: &Arc<FinSSet>, table: &Table, path: &str) -> Res<SMap> {
    let mut images = Vec::new();
    for dim in 0..=src.trunc_dim() {
        let mut row = Vec::new();
        for c in src.cells(dim) {
            let name = src.cell_name(c);
            let here = format!("{path}.{name}");
            let e = table.get(name).ok_or_else(|| at(&here, "no image given"))?;
            let y = px(tgt, e).map_err(|err| at(&here, err))?;
            if y.dim() != dim {
                return Err(at(&here, format!("image {e:?} has dimension {}", y.dim())));
            }
            row.push(y);
        }
        images.push(row);
    }
    if let Some(extra) = table.keys().find(|k| find(src, k).is_none()) {
        return Err(at(&format!("{path}.{extra}"), "not a cell of the source"));
    }
    Ok(SMap::new_unchecked(src.clone(), tgt.clone(), images))
}

pub fn map_to_table(f: &SMap) -> Table {
    let (src, tgt) = (f.src(), f.tgt());
    src.all_cells().map(|c| (clean(src.cell_name(c)), ex(tgt, f.image_of_cell(c)))).collect()
}

/// A map out of a fiber product, from triples `[left, right, value]`.
fn pair_map_from_entries(
    pb: &Pullback,
    left: &FinSSet,
    right: &FinSSet,
    tgt: &Arc<FinSSet>,
    entries: &[[String; 3]],
    swap: bool,
    path: &str,
) -> Res<SMap> {
    let mut lookup: HashMap<(Simplex, Simplex), Simplex> = HashMap::new();
    for (i, [a, b, v]) in entries.iter().enumerate() {
        let here = format!("{path}[{i}]");
        let a = px(left, a).map_err(|e| at(&here, e))?;
        let b = px(right, b).map_err(|e| at(&here, e))?;
        let v = px(tgt, v).map_err(|e| at(&here, e))?;
        lookup.insert(if swap { (b, a) } else { (a, b) }, v);
    }
    let mut images = Vec::new();
    for dim in 0..=pb.obj.trunc_dim() {
        let mut row = Vec::new();
        for c in pb.obj.cells(dim) {
            let (p, q) = pb.split(Simplex::nondegenerate(c));
            let v = lookup.get(&(p, q)).copied().ok_or_else(|| {
                let (a, b) = if swap { (q, p) } else { (p, q) };
                at(path, format!("no entry for [{}, {}]", left.expr(a), right.expr(b)))
            })?;
            row.push(v);
        }
        images.push(row);
    }
    Ok(SMap::new_unchecked(pb.obj.clone(), tgt.clone(), images))
}

fn pair_map_to_entries(pb: &Pullback, left: &FinSSet, right: &FinSSet, m: &SMap, swap: bool) -> Vec<[String; 3]> {
    pb.obj
        .all_cells()
        .map(|c| {
            let (p, q) = pb.split(Simplex::nondegenerate(c));
            let (a, b) = if swap { (q, p) } else { (p, q) };
            [ex(left, a), ex(right, b), ex(m.tgt(), m.image_of_cell(c))]
        })
        .collect()
}

// ---- simplicial spaces

pub fn sspace_from_doc(d: &SSpaceDoc, path: &str) -> Res<SimpSpace> {
    expect_kind(&d.kind, "sspace", path)?;
    if d.levels.len() != d.outer_dim + 1 {
        return Err(at(&format!("{path}levels"), format!("{} levels for outer_dim {}", d.levels.len(), d.outer_dim)));
    }
    let levels: Vec<Arc<FinSSet>> = d
        .levels
        .iter()
        .enumerate()
        .map(|(m, l)| sset_from_doc(l, &format!("{path}levels[{m}].")).map(Arc::new))
        .collect::<Res<_>>()?;
    if d.faces.len() != d.outer_dim || d.degeneracies.len() != d.outer_dim {
        return Err(at(path, "one family of faces and degeneracies per level transition is required"));
    }
    let mut faces = vec![Vec::new()];
    for m in 1..=d.outer_dim {
        let row = &d.faces[m - 1];
        if row.len() != m + 1 {
            return Err(at(&format!("{path}faces[{}]", m - 1), format!("{} faces, {} expected", row.len(), m + 1)));
        }
        faces.push(
            row.iter()
                .enumerate()
                .map(|(i, t)| map_from_table(&levels[m], &levels[m - 1], t, &format!("{path}faces[{}][{i}]", m - 1)))
                .collect::<Res<Vec<_>>>()?,
        );
    }
    let mut degens = Vec::new();
    for m in 0..d.outer_dim {
        let row = &d.degeneracies[m];
        if row.len() != m + 1 {
            return Err(at(&format!("{path}degeneracies[{m}]"), format!("{} maps, {} expected", row.len(), m + 1)));
        }
        degens.push(
            row.iter()
                .enumerate()
                .map(|(j, t)| map_from_table(&levels[m], &levels[m + 1], t, &format!("{path}degeneracies[{m}][{j}]")))
                .collect::<Res<Vec<_>>>()?,
        );
    }
    degens.push(Vec::new());
    SimpSpace::from_parts(levels, faces, degens).map_err(|e| at(path, e))
}

pub fn sspace_to_doc(x: &SimpSpace) -> SSpaceDoc {
    let m = x.outer_dim();
    SSpaceDoc {
        kind: "sspace".into(),
        outer_dim: m,
        levels: x.levels().iter().map(|l| sset_to_doc(l)).collect(),
        faces: (1..=m).map(|k| (0..=k).map(|i| map_to_table(x.face(k, i))).collect()).collect(),
        degeneracies: (0..m).map(|k| (0..=k).map(|j| map_to_table(x.degeneracy(k, j))).collect()).collect(),
    }
}

// ---- internal categories

pub fn icat_from_doc(d: &ICatDoc, path: &str) -> Res<InternalCat> {
    expect_kind(&d.kind, "icat", path)?;
    let ob = Arc::new(sset_from_doc(&d.ob, &format!("{path}ob."))?);
    let ar = Arc::new(sset_from_doc(&d.ar, &format!("{path}ar."))?);
    if ob.trunc_dim() != ar.trunc_dim() {
        return Err(at(path, format!("truncation mismatch: {} vs {}", ob.trunc_dim(), ar.trunc_dim())));
    }
    let s = map_from_table(&ar, &ob, &d.s, &format!("{path}s"))?;
    let t = map_from_table(&ar, &ob, &d.t, &format!("{path}t"))?;
    let e = map_from_table(&ob, &ar, &d.e, &format!("{path}e"))?;
    for (name, f) in [("s", &s), ("t", &t), ("e", &e)] {
        f.check().map_err(|err| at(&format!("{path}{name}"), err))?;
    }
    let mut comp: HashMap<(Simplex, Simplex), Simplex> = HashMap::new();
    for (i, [f, g, h]) in d.m.iter().enumerate() {
        let here = format!("{path}m[{i}]");
        let parse = |x: &str| px(&ar, x).map_err(|err| at(&here, err));
        comp.insert((parse(f)?, parse(g)?), parse(h)?);
    }
    InternalCat::from_maps(ob.clone(), ar.clone(), s, t, e, |f, g| comp.get(&(f, g)).copied())
        .map_err(|err| at(&format!("{path}m"), err))
}

pub fn icat_to_doc(c: &InternalCat) -> ICatDoc {
    ICatDoc {
        kind: "icat".into(),
        ob: sset_to_doc(&c.ob),
        ar: sset_to_doc(&c.ar),
        s: map_to_table(&c.s),
        t: map_to_table(&c.t),
        e: map_to_table(&c.e),
        m: pair_map_to_entries(&c.pairs, &c.ar, &c.ar, &c.m, false),
    }
}

pub fn icatmap_to_doc(src: &InternalCat, tgt: &InternalCat, f: &ICatMap) -> ICatMapDoc {
    ICatMapDoc {
        kind: "icatmap".into(),
        src: icat_to_doc(src),
        tgt: icat_to_doc(tgt),
        ob: map_to_table(&f.ob),
        ar: map_to_table(&f.ar),
    }
}

// ---- presheaves

fn variance_of(s: &str) -> Res<Variance> {
    match s {
        "right" => Ok(Variance::Right),
        "left" => Ok(Variance::Left),
        _ => Err(at("variance", format!("expected \"right\" or \"left\", found {s:?}"))),
    }
}

pub fn presheaf_from_doc(d: &PresheafDoc) -> Res<(InternalCat, Presheaf)> {
    expect_kind(&d.kind, "presheaf", "")?;
    let c = icat_from_doc(&d.category, "category.")?;
    let v = variance_of(&d.variance)?;
    let carrier = Arc::new(sset_from_doc(&d.carrier, "carrier.")?);
    let projection = map_from_table(&carrier, &c.ob, &d.projection, "projection")?;
    projection.check().map_err(|e| at("projection", e))?;
    let ar = c.ar.clone();
    let p = Presheaf::new(&c, carrier.clone(), projection, v, |pb| {
        pair_map_from_entries(pb, &carrier, &ar, &carrier, &d.action, v == Variance::Left, "action")
            .map_err(|e| icat_core::Error::Parse(e.to_string()))
    })
    .map_err(|e| at("action", e))?;
    Ok((c, p))
}

pub fn presheaf_to_doc(c: &InternalCat, p: &Presheaf) -> PresheafDoc {
    PresheafDoc {
        kind: "presheaf".into(),
        variance: match p.variance {
            Variance::Right => "right",
            Variance::Left => "left",
        }
        .into(),
        category: icat_to_doc(c),
        carrier: sset_to_doc(&p.carrier),
        projection: map_to_table(&p.projection),
        action: pair_map_to_entries(&p.acting, &p.carrier, &c.ar, &p.action, p.variance == Variance::Left),
    }
}

// ---- attachments

pub fn attachment_from_doc(d: &AttachmentDoc) -> Res<(InternalCat, AttachmentSpec)> {
    expect_kind(&d.kind, "attachment", "")?;
    let c = icat_from_doc(&d.category, "category.")?;
    let k = Arc::new(sset_from_doc(&d.k, "K.")?);
    let l = Arc::new(sset_from_doc(&d.l, "L.")?);
    let incl = map_from_table(&k, &l, &d.incl, "incl")?;
    let level = nerve_built(&c, d.n).space.level(d.n).clone();
    let chain = map_from_table(&k, &level, &d.attaching, "attaching")?;
    Ok((c, AttachmentSpec { n: d.n, incl, chain }))
}

pub fn attachment_to_doc(c: &InternalCat, spec: &AttachmentSpec) -> AttachmentDoc {
    AttachmentDoc {
        kind: "attachment".into(),
        n: spec.n,
        category: icat_to_doc(c),
        k: sset_to_doc(spec.k()),
        l: sset_to_doc(spec.l()),
        incl: map_to_table(&spec.incl),
        attaching: map_to_table(&spec.chain),
    }
}

// ---- simplicial categories

fn object_index(objects: &[String], name: &str, path: &str) -> Res<usize> {
    objects.iter().position(|o| o == name).ok_or_else(|| at(path, format!("unknown object {name:?}")))
}

pub fn scat_from_doc(d: &SCatDoc, path: &str) -> Res<SimpCat> {
    expect_kind(&d.kind, "scat", path)?;
    let n = d.objects.len();
    if d.maps.len() != n || d.maps.iter().any(|r| r.len() != n) {
        return Err(at(&format!("{path}maps"), "mapping spaces must form a square table over the objects"));
    }
    if d.identities.len() != n {
        return Err(at(&format!("{path}identities"), "one identity per object is required"));
    }
    let maps: Vec<Vec<Arc<FinSSet>>> = d
        .maps
        .iter()
        .enumerate()
        .map(|(x, row)| {
            row.iter()
                .enumerate()
                .map(|(y, m)| sset_from_doc(m, &format!("{path}maps[{x}][{y}].")).map(Arc::new))
                .collect::<Res<Vec<_>>>()
        })
        .collect::<Res<_>>()?;
    let identities = d
        .identities
        .iter()
        .enumerate()
        .map(|(x, e)| px(&maps[x][x], e).map_err(|err| at(&format!("{path}identities[{x}]"), err)))
        .collect::<Res<Vec<_>>>()?;
    let mut table: HashMap<(usize, usize, usize, Simplex, Simplex), Simplex> = HashMap::new();
    for (i, cd) in d.composition.iter().enumerate() {
        let here = format!("{path}composition[{i}]");
        let x = object_index(&d.objects, &cd.x, &here)?;
        let y = object_index(&d.objects, &cd.y, &here)?;
        let z = object_index(&d.objects, &cd.z, &here)?;
        for (j, [f, g, h]) in cd.entries.iter().enumerate() {
            let here = format!("{here}.entries[{j}]");
            let f = px(&maps[x][y], f).map_err(|e| at(&here, e))?;
            let g = px(&maps[y][z], g).map_err(|e| at(&here, e))?;
            let h = px(&maps[x][z], h).map_err(|e| at(&here, e))?;
            table.insert((x, y, z, f, g), h);
        }
    }
    let missing = std::cell::RefCell::new(None);
    let c = SimpCat::from_fn(d.objects.clone(), maps.clone(), identities, |x, y, z, f, g| {
        table.get(&(x, y, z, f, g)).copied().unwrap_or_else(|| {
            missing.borrow_mut().get_or_insert_with(|| {
                format!(
                    "no composite for [{}, {}] at ({}, {}, {})",
                    maps[x][y].expr(f),
                    maps[y][z].expr(g),
                    d.objects[x],
                    d.objects[y],
                    d.objects[z]
                )
            });
            f
        })
    })
    .map_err(|e| at(path, e))?;
    if let Some(m) = missing.into_inner() {
        return Err(at(&format!("{path}composition"), m));
    }
    Ok(c)
}

pub fn scat_to_doc(c: &SimpCat) -> SCatDoc {
    let n = c.num_objects();
    let mut composition = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (pb, m) = &c.comp[&(x, y, z)];
                composition.push(CompositionDoc {
                    x: c.objects[x].clone(),
                    y: c.objects[y].clone(),
                    z: c.objects[z].clone(),
                    entries: pair_map_to_entries(pb, &c.maps[x][y], &c.maps[y][z], m, false),
                });
            }
        }
    }
    SCatDoc {
        kind: "scat".into(),
        objects: c.objects.clone(),
        maps: c.maps.iter().map(|r| r.iter().map(|m| sset_to_doc(m)).collect()).collect(),
        identities: (0..n).map(|x| ex(&c.maps[x][x], c.identities[x])).collect(),
        composition,
    }
}

pub fn grdata_from_doc(d: &GrDataDoc) -> Res<(SimpCat, GrData)> {
    expect_kind(&d.kind, "grdata", "")?;
    let c = scat_from_doc(&d.category, "category.")?;
    let n = c.num_objects();
    if d.fibers.len() != n {
        return Err(at("fibers", "one fiber per object is required"));
    }
    let fibers: Vec<Arc<FinSSet>> = d
        .fibers
        .iter()
        .enumerate()
        .map(|(x, f)| sset_from_doc(f, &format!("fibers[{x}].")).map(Arc::new))
        .collect::<Res<_>>()?;
    let mut table: HashMap<(usize, usize, Simplex, Simplex), Simplex> = HashMap::new();
    for (i, ad) in d.action.iter().enumerate() {
        let here = format!("action[{i}]");
        let x = object_index(&c.objects, &ad.x, &here)?;
        let y = object_index(&c.objects, &ad.y, &here)?;
        for (j, [a, g, r]) in ad.entries.iter().enumerate() {
            let here = format!("{here}.entries[{j}]");
            let a = px(&fibers[x], a).map_err(|e| at(&here, e))?;
            let g = px(&c.maps[x][y], g).map_err(|e| at(&here, e))?;
            let r = px(&fibers[y], r).map_err(|e| at(&here, e))?;
            table.insert((x, y, a, g), r);
        }
    }
    let missing = std::cell::RefCell::new(None);
    let data = GrData::from_fn(&c, fibers.clone(), |x, y, a, g| {
        table.get(&(x, y, a, g)).copied().unwrap_or_else(|| {
            missing.borrow_mut().get_or_insert_with(|| {
                format!("no action for [{}, {}] from {}", fibers[x].expr(a), c.maps[x][y].expr(g), c.objects[x])
            });
            a
        })
    })
    .map_err(|e| at("", e))?;
    if let Some(m) = missing.into_inner() {
        return Err(at("action", m));
    }
    Ok((c, data))
}

pub fn grdata_to_doc(c: &SimpCat, data: &GrData) -> GrDataDoc {
    let n = c.num_objects();
    let mut action = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let (pb, m) = &data.action[&(x, y)];
            action.push(ActionDoc {
                x: c.objects[x].clone(),
                y: c.objects[y].clone(),
                entries: pair_map_to_entries(pb, &data.fibers[x], &c.maps[x][y], m, false),
            });
        }
    }
    GrDataDoc {
        kind: "grdata".into(),
        category: scat_to_doc(c),
        fibers: data.fibers.iter().map(|f| sset_to_doc(f)).collect(),
        action,
    }
}

pub fn scatmap_from_doc(d: &SCatMapDoc) -> Res<(SimpCat, SimpCat, SimpFunctor)> {
    expect_kind(&d.kind, "scatmap", "")?;
    let src = scat_from_doc(&d.src, "src.")?;
    let tgt = scat_from_doc(&d.tgt, "tgt.")?;
    if d.ob.len() != src.num_objects() {
        return Err(at("ob", "one image per source object is required"));
    }
    let ob = d
        .ob
        .iter()
        .enumerate()
        .map(|(i, o)| object_index(&tgt.objects, o, &format!("ob[{i}]")))
        .collect::<Res<Vec<_>>>()?;
    let mut maps = HashMap::new();
    for (i, md) in d.maps.iter().enumerate() {
        let here = format!("maps[{i}]");
        let x = object_index(&src.objects, &md.x, &here)?;
        let y = object_index(&src.objects, &md.y, &here)?;
        let f = map_from_table(&src.maps[x][y], &tgt.maps[ob[x]][ob[y]], &md.map, &format!("{here}.map"))?;
        maps.insert((x, y), f);
    }
    let n = src.num_objects();
    if let Some((x, y)) = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|k| !maps.contains_key(k)) {
        return Err(at("maps", format!("no map given on map({}, {})", src.objects[x], src.objects[y])));
    }
    Ok((src, tgt, SimpFunctor { ob, maps }))
}

pub fn scatmap_to_doc(src: &SimpCat, tgt: &SimpCat, f: &SimpFunctor) -> SCatMapDoc {
    let n = src.num_objects();
    SCatMapDoc {
        kind: "scatmap".into(),
        src: scat_to_doc(src),
        tgt: scat_to_doc(tgt),
        ob: f.ob.iter().map(|&o| tgt.objects[o].clone()).collect(),
        maps: (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| MapSpaceDoc {
                x: src.objects[x].clone(),
                y: src.objects[y].clone(),
                map: map_to_table(&f.maps[&(x, y)]),
            })
            .collect(),
    }
}

// ---- presented categories (output only)

pub fn fpcat_to_doc(x: &SimpSpace, p: &FinPresCat) -> FpCatDoc {
    let (l0, l1) = (x.level(0), x.level(1));
    FpCatDoc {
        kind: "fpcat".into(),
        levels: p
            .levels
            .iter()
            .enumerate()
            .map(|(k, lv)| {
                let gen = |g: &u32| ex(l1, lv.generators[*g as usize]);
                PresLevelDoc {
                    degree: k,
                    objects: lv.objects.iter().map(|&o| ex(l0, o)).collect(),
                    generators: lv
                        .generators
                        .iter()
                        .zip(&lv.ends)
                        .map(|(&g, &(a, b))| [ex(l1, g), ex(l0, lv.objects[a]), ex(l0, lv.objects[b])])
                        .collect(),
                    relations: lv
                        .relations
                        .iter()
                        .map(|(a, b)| [a.iter().map(gen).collect(), b.iter().map(gen).collect()])
                        .collect(),
                    rules: lv.system.rules.len(),
                    confluent: lv.completion == icat_core::icat::Completion::Confluent,
                }
            })
            .collect(),
    }
}

/// The document of an object, for writing back out.
pub fn to_value(o: &Object) -> Value {
    let v = match o {
        Object::SSet(x) => serde_json::to_value(sset_to_doc(x)),
        Object::SSpace(x) => serde_json::to_value(sspace_to_doc(x)),
        Object::ICat(c) => serde_json::to_value(icat_to_doc(c)),
        Object::Presheaf { cat, presheaf } => serde_json::to_value(presheaf_to_doc(cat, presheaf)),
        Object::Attachment { cat, spec } => serde_json::to_value(attachment_to_doc(cat, spec)),
        Object::SCat(c) => serde_json::to_value(scat_to_doc(c)),
        Object::GrData { cat, data } => serde_json::to_value(grdata_to_doc(cat, data)),
        Object::ICatMap { src, tgt, map } => serde_json::to_value(icatmap_to_doc(src, tgt, map)),
        Object::SCatMap { src, tgt, functor } => serde_json::to_value(scatmap_to_doc(src, tgt, functor)),
    };
    v.expect("documents serialize")
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
