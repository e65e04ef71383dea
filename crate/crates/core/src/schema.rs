//! JSON documents for every input type, with diagnostics anchored to a
//! line and column of the offending file.
//!
//! Ids must be dense: objects, arrows, points and vertices are `0..n`.
//! Wherever a groupoid or presentation is expected, a document may hold it
//! inline or name a file relative to the referencing document.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bibundle::Bibundle;
use crate::cocycle::{Cocycle, GridCover};
use crate::fpgroup::presentation::{GroupPresentation, PresentationMap, Word};
use crate::group::FiniteGroup;
use crate::groupoid::{isotropy, FiniteGroupoid, GroupoidFunctor};
use crate::simplicial::{ComplexAction, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub file: Option<String>,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}:")?;
        }
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SchemaError {}

pub type SchemaResult<T> = std::result::Result<T, SchemaError>;

/// A document being decoded: its text (for anchoring) and the directory
/// that file references resolve against (`None` forbids file references).
#[derive(Debug, Clone)]
pub struct Source<'a> {
    pub text: &'a str,
    pub file: Option<String>,
    pub dir: Option<PathBuf>,
}

impl<'a> Source<'a> {
    pub fn inline(text: &'a str) -> Self {
        Source { text, file: None, dir: None }
    }

    pub fn file(text: &'a str, path: &Path) -> Self {
        Source {
            text,
            file: Some(path.display().to_string()),
            dir: Some(path.parent().map(Path::to_path_buf).unwrap_or_default()),
        }
    }

    /// Error anchored at the first occurrence of `"key"`, or the start of
    /// the document.
    fn err_at(&self, key: &str, message: impl Into<String>) -> SchemaError {
        let needle = format!("\"{key}\"");
        let (line, column) = match self.text.find(&needle) {
            Some(pos) => {
                let before = &self.text[..pos];
                let line = before.matches('\n').count() + 1;
                let column = pos - before.rfind('\n').map_or(0, |i| i + 1) + 1;
                (line, column)
            }
            None => (1, 1),
        };
        SchemaError { file: self.file.clone(), line, column, message: message.into() }
    }

    fn parse<T: DeserializeOwned>(&self) -> SchemaResult<T> {
        serde_json::from_str(self.text).map_err(|e| SchemaError {
            file: self.file.clone(),
            line: e.line().max(1),
            column: e.column().max(1),
            message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
        })
    }

    fn decode<T: DeserializeOwned>(&self, key: &str, v: &Value) -> SchemaResult<T> {
        T::deserialize(v).map_err(|e| self.err_at(key, format!("in \"{key}\": {e}")))
    }

    /// Decodes an inline value or loads the referenced file.
    fn resolve<T>(&self, key: &str, v: &Value, read: impl Fn(&Source) -> SchemaResult<T>) -> SchemaResult<T> {
        match v {
            Value::String(p) => {
                let dir = self.dir.as_ref().ok_or_else(|| self.err_at(key, "file references are not allowed here"))?;
                let path = dir.join(p);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| self.err_at(key, format!("cannot read {}: {e}", path.display())))?;
                read(&Source::file(&text, &path))
            }
            other => {
                let text = serde_json::to_string_pretty(other).expect("json value");
                let inner = Source { text: &text, file: self.file.clone(), dir: self.dir.clone() };
                read(&inner).map_err(|e| self.err_at(key, format!("in \"{key}\": {}", e.message)))
            }
        }
    }
}

fn field<'v>(src: &Source, doc: &'v Value, key: &str) -> SchemaResult<&'v Value> {
    doc.get(key).ok_or_else(|| src.err_at(key, format!("missing field \"{key}\"")))
}

fn dense(src: &Source, key: &str, ids: &[usize]) -> SchemaResult<()> {
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    match sorted.iter().enumerate().find(|&(i, &x)| i != x) {
        Some((i, _)) => Err(src.err_at(key, format!("ids in \"{key}\" must be exactly 0..{}; {i} is missing or repeated", ids.len()))),
        None => Ok(()),
    }
}

/// Table of `[key, value]` pairs over dense keys `0..n`.
fn table(src: &Source, key: &str, pairs: &[[usize; 2]], n: usize) -> SchemaResult<Vec<usize>> {
    let mut out = vec![usize::MAX; n];
    for &[k, v] in pairs {
        if k >= n {
            return Err(src.err_at(key, format!("\"{key}\" entry {k} is out of range 0..{n}")));
        }
        if out[k] != usize::MAX {
            return Err(src.err_at(key, format!("\"{key}\" has two entries for {k}")));
        }
        out[k] = v;
    }
    match out.iter().position(|&v| v == usize::MAX) {
        Some(k) => Err(src.err_at(key, format!("\"{key}\" has no entry for {k}"))),
        None => Ok(out),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ArrowDoc {
    id: usize,
    src: usize,
    tgt: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupoidDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    objects: Vec<usize>,
    arrows: Vec<ArrowDoc>,
    comp: Vec<[usize; 3]>,
    inv: Vec<[usize; 2]>,
    unit: Vec<[usize; 2]>,
}

/// Decodes a groupoid without checking the axioms (see
/// [`crate::groupoid::validate_groupoid`]); only shape and ranges are checked.
pub fn read_groupoid_unchecked(src: &Source) -> SchemaResult<FiniteGroupoid> {
    let doc: GroupoidDoc = src.parse()?;
    dense(src, "objects", &doc.objects)?;
    let ids: Vec<usize> = doc.arrows.iter().map(|a| a.id).collect();
    dense(src, "arrows", &ids)?;
    let n = doc.objects.len();
    let m = doc.arrows.len();
    let mut s = vec![0; m];
    let mut t = vec![0; m];
    for a in &doc.arrows {
        if a.src >= n || a.tgt >= n {
            return Err(src.err_at("arrows", format!("arrow {} has an endpoint outside the objects", a.id)));
        }
        s[a.id] = a.src;
        t[a.id] = a.tgt;
    }
    if let Some(e) = doc.comp.iter().find(|e| e.iter().any(|&x| x >= m)) {
        return Err(src.err_at("comp", format!("composition entry {e:?} names an unknown arrow")));
    }
    let mut comp = BTreeMap::new();
    for &[g, h, gh] in &doc.comp {
        if comp.insert((g, h), gh).is_some_and(|old| old != gh) {
            return Err(src.err_at("comp", format!("composite of ({g}, {h}) is given twice")));
        }
    }
    let partial = |key: &str, pairs: &[[usize; 2]], n: usize, range: usize| -> SchemaResult<Vec<Option<usize>>> {
        let mut out = vec![None; n];
        for &[k, v] in pairs {
            if k >= n || v >= range {
                return Err(src.err_at(key, format!("\"{key}\" entry [{k}, {v}] is out of range")));
            }
            out[k] = Some(v);
        }
        Ok(out)
    };
    let inv = partial("inv", &doc.inv, m, m)?;
    let unit = partial("unit", &doc.unit, n, m)?;
    FiniteGroupoid::from_parts(n, s, t, comp, inv, unit).map_err(|e| src.err_at("arrows", e.to_string()))
}

pub fn read_groupoid(src: &Source) -> SchemaResult<FiniteGroupoid> {
    read_groupoid_unchecked(src)?.validated().map_err(|e| src.err_at("comp", e.to_string()))
}

pub fn groupoid_to_json(g: &FiniteGroupoid) -> Value {
    let doc = GroupoidDoc {
        schema: Some("groupoid.v1".into()),
        objects: (0..g.object_count()).collect(),
        arrows: (0..g.arrow_count()).map(|a| ArrowDoc { id: a, src: g.src(a), tgt: g.tgt(a) }).collect(),
        comp: {
            let mut c: Vec<[usize; 3]> = g.composition_entries().into_iter().map(|(a, b, ab)| [a, b, ab]).collect();
            c.sort_unstable();
            c
        },
        inv: (0..g.arrow_count()).filter_map(|a| g.raw_inv(a).map(|i| [a, i])).collect(),
        unit: (0..g.object_count()).filter_map(|x| g.raw_unit(x).map(|u| [x, u])).collect(),
    };
    serde_json::to_value(doc).expect("serializable")
}

/// A group as a one-object groupoid document; element `i` is arrow `i`.
pub fn read_group(src: &Source) -> SchemaResult<FiniteGroup> {
    let g = read_groupoid(src)?;
    if g.object_count() != 1 {
        return Err(src.err_at("objects", "a group is a groupoid with exactly one object"));
    }
    isotropy(&g, 0).map(|i| i.group).map_err(|e| src.err_at("objects", e.to_string()))
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    groupoid_to_json(&FiniteGroupoid::group_as_groupoid(g))
}

fn object(src: &Source) -> SchemaResult<Value> {
    let v: Value = src.parse()?;
    if !v.is_object() {
        return Err(src.err_at("", "expected a JSON object"));
    }
    Ok(v)
}

fn groupoid_ref(src: &Source, doc: &Value, key: &str) -> SchemaResult<Arc<FiniteGroupoid>> {
    src.resolve(key, field(src, doc, key)?, read_groupoid).map(Arc::new)
}

/// `{source, target, objMap: [[x, y]], arrMap: [[g, h]]}`.
pub fn read_functor(src: &Source) -> SchemaResult<GroupoidFunctor> {
    let doc = object(src)?;
    let source = groupoid_ref(src, &doc, "source")?;
    let target = groupoid_ref(src, &doc, "target")?;
    let obj: Vec<[usize; 2]> = src.decode("objMap", field(src, &doc, "objMap")?)?;
    let arr: Vec<[usize; 2]> = src.decode("arrMap", field(src, &doc, "arrMap")?)?;
    let obj_map = table(src, "objMap", &obj, source.object_count())?;
    let arr_map = table(src, "arrMap", &arr, source.arrow_count())?;
    GroupoidFunctor::new(source, target, obj_map, arr_map).map_err(|e| src.err_at("arrMap", e.to_string()))
}

pub fn functor_to_json(f: &GroupoidFunctor) -> Value {
    json!({
        "schema": "functor.v1",
        "source": groupoid_to_json(&f.source),
        "target": groupoid_to_json(&f.target),
        "objMap": f.obj_map.iter().enumerate().map(|(x, &y)| [x, y]).collect::<Vec<_>>(),
        "arrMap": f.arr_map.iter().enumerate().map(|(a, &b)| [a, b]).collect::<Vec<_>>(),
    })
}

/// `{left, right, total: [id], pi: [[p, x]], eps: [[p, a]], leftAct: [[h, p, q]], rightAct: [[p, g, q]]}`.
pub fn read_bibundle(src: &Source) -> SchemaResult<Bibundle> {
    let doc = object(src)?;
    let left = groupoid_ref(src, &doc, "left")?;
    let right = groupoid_ref(src, &doc, "right")?;
    let total: Vec<usize> = src.decode("total", field(src, &doc, "total")?)?;
    dense(src, "total", &total)?;
    let pi: Vec<[usize; 2]> = src.decode("pi", field(src, &doc, "pi")?)?;
    let eps: Vec<[usize; 2]> = src.decode("eps", field(src, &doc, "eps")?)?;
    let la: Vec<[usize; 3]> = src.decode("leftAct", field(src, &doc, "leftAct")?)?;
    let ra: Vec<[usize; 3]> = src.decode("rightAct", field(src, &doc, "rightAct")?)?;
    let pi = table(src, "pi", &pi, total.len())?;
    let eps = table(src, "eps", &eps, total.len())?;
    Bibundle::new(
        left,
        right,
        total.len(),
        pi,
        eps,
        la.into_iter().map(|[h, p, q]| (h, p, q)),
        ra.into_iter().map(|[p, g, q]| (p, g, q)),
    )
    .map_err(|e| src.err_at("leftAct", e.to_string()))
}

pub fn bibundle_to_json(b: &Bibundle) -> Value {
    let n = b.total();
    json!({
        "schema": "bibundle.v1",
        "left": groupoid_to_json(&b.left),
        "right": groupoid_to_json(&b.right),
        "total": (0..n).collect::<Vec<_>>(),
        "pi": (0..n).map(|p| [p, b.pi(p)]).collect::<Vec<_>>(),
        "eps": (0..n).map(|p| [p, b.eps(p)]).collect::<Vec<_>>(),
        "leftAct": b.left_entries().into_iter().map(|(h, p, q)| [h, p, q]).collect::<Vec<_>>(),
        "rightAct": b.right_entries().into_iter().map(|(p, g, q)| [p, g, q]).collect::<Vec<_>>(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    vertices: Vec<usize>,
    #[serde(default)]
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    triangles: Vec<[usize; 3]>,
}

/// `{vertices: [id], edges: [[a, b]], triangles: [[a, b, c]]}`; faces of
/// listed triangles are added.
pub fn read_complex(src: &Source) -> SchemaResult<SimplicialComplex> {
    let doc: ComplexDoc = src.parse()?;
    dense(src, "vertices", &doc.vertices)?;
    SimplicialComplex::from_simplices(doc.vertices.len(), &doc.edges, &doc.triangles)
        .map_err(|e| src.err_at(if doc.triangles.is_empty() { "edges" } else { "triangles" }, e.to_string()))
}

pub fn complex_to_json(c: &SimplicialComplex) -> Value {
    serde_json::to_value(ComplexDoc {
        schema: Some("complex.v1".into()),
        vertices: (0..c.vertex_count()).collect(),
        edges: c.edges().to_vec(),
        triangles: c.triangles().to_vec(),
    })
    .expect("serializable")
}

/// `{group, complex, vertexAction: [[g, v, w]]}`; `group` is a one-object
/// groupoid reference, `complex` a complex reference. Pairs `(g, v)` not
/// listed are fixed.
pub fn read_action(src: &Source) -> SchemaResult<ComplexAction> {
    let doc = object(src)?;
    let group = src.resolve("group", field(src, &doc, "group")?, read_group)?;
    let complex = src.resolve("complex", field(src, &doc, "complex")?, read_complex)?;
    let entries: Vec<[usize; 3]> = src.decode("vertexAction", field(src, &doc, "vertexAction")?)?;
    let n = complex.vertex_count();
    let mut images: Vec<Vec<usize>> = (0..group.order()).map(|_| (0..n).collect()).collect();
    for &[g, v, w] in &entries {
        if g >= group.order() || v >= n || w >= n {
            return Err(src.err_at("vertexAction", format!("entry [{g}, {v}, {w}] is out of range")));
        }
        images[g][v] = w;
    }
    ComplexAction::new(group, complex, images).map_err(|e| src.err_at("vertexAction", e.to_string()))
}

pub fn action_to_json(a: &ComplexAction) -> Value {
    let entries: Vec<[usize; 3]> = (0..a.group.order())
        .flat_map(|g| (0..a.complex.vertex_count()).map(move |v| (g, v)))
        .filter(|&(g, v)| a.act(g, v) != v)
        .map(|(g, v)| [g, v, a.act(g, v)])
        .collect();
    json!({
        "schema": "action.v1",
        "group": group_to_json(&a.group),
        "complex": complex_to_json(&a.complex),
        "vertexAction": entries,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    generators: usize,
    relators: Vec<Word>,
}

/// `{generators: n, relators: [[int]]}` with letters `±(k + 1)`.
pub fn read_presentation(src: &Source) -> SchemaResult<GroupPresentation> {
    let doc: PresentationDoc = src.parse()?;
    GroupPresentation::new(doc.generators, doc.relators).map_err(|e| src.err_at("relators", e.to_string()))
}

pub fn presentation_to_json(p: &GroupPresentation) -> Value {
    serde_json::to_value(PresentationDoc {
        schema: Some("presentation.v1".into()),
        generators: p.generator_count(),
        relators: p.relators().to_vec(),
    })
    .expect("serializable")
}

/// `{source, target, images: [[int]]}`, one image word per source generator.
pub fn read_presentation_map(src: &Source) -> SchemaResult<PresentationMap> {
    let doc = object(src)?;
    let source = src.resolve("source", field(src, &doc, "source")?, read_presentation)?;
    let target = src.resolve("target", field(src, &doc, "target")?, read_presentation)?;
    let images: Vec<Word> = src.decode("images", field(src, &doc, "images")?)?;
    PresentationMap::new(source, target, images).map_err(|e| src.err_at("images", e.to_string()))
}

pub fn presentation_map_to_json(f: &PresentationMap) -> Value {
    json!({
        "schema": "presentation-map.v1",
        "source": presentation_to_json(&f.source),
        "target": presentation_to_json(&f.target),
        "images": f.images,
    })
}

/// A cell given as a zero-based lexicographic index or a one-based
/// multi-index.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum CellDoc {
    Lex(usize),
    Multi(Vec<usize>),
}

/// `{n, N, groupoid, f: [[mu, obj]], g: [[mu, nu, arrow]]}`.
pub fn read_cocycle(src: &Source) -> SchemaResult<Cocycle> {
    let doc = object(src)?;
    let n: usize = src.decode("n", field(src, &doc, "n")?)?;
    let big_n: usize = src.decode("N", field(src, &doc, "N")?)?;
    let cover = GridCover::new(n, big_n).map_err(|e| src.err_at("N", e.to_string()))?;
    let groupoid = groupoid_ref(src, &doc, "groupoid")?;
    let cell = |key: &str, c: &CellDoc| -> SchemaResult<usize> {
        let found = match c {
            CellDoc::Lex(i) => (*i < cover.cell_count()).then_some(*i),
            CellDoc::Multi(m) => {
                let zero: Option<Vec<usize>> = m.iter().map(|&i| i.checked_sub(1)).collect();
                zero.and_then(|z| cover.cell_of(&z))
            }
        };
        found.ok_or_else(|| src.err_at(key, format!("cell {c:?} is not in the {n}-dimensional grid with N = {big_n}")))
    };
    let fs: Vec<(CellDoc, usize)> = src.decode("f", field(src, &doc, "f")?)?;
    let mut f_pairs = Vec::new();
    for (c, x) in &fs {
        f_pairs.push([cell("f", c)?, *x]);
    }
    let f = table(src, "f", &f_pairs, cover.cell_count())?;
    let gs: Vec<(CellDoc, CellDoc, usize)> = src.decode("g", field(src, &doc, "g")?)?;
    let mut g = BTreeMap::new();
    for (m, k, a) in &gs {
        if g.insert((cell("g", m)?, cell("g", k)?), *a).is_some() {
            return Err(src.err_at("g", format!("transition ({m:?}, {k:?}) is given twice")));
        }
    }
    Cocycle::new(cover, groupoid, f, g).map_err(|e| src.err_at("g", e.to_string()))
}

pub fn cocycle_to_json(c: &Cocycle) -> Value {
    let multi = |m: usize| c.cover.multi_index(m).into_iter().map(|i| i + 1).collect::<Vec<_>>();
    json!({
        "schema": "cocycle.v1",
        "n": c.cover.dim,
        "N": c.cover.subdivisions,
        "groupoid": groupoid_to_json(&c.groupoid),
        "f": c.f.iter().enumerate().map(|(m, &x)| json!([multi(m), x])).collect::<Vec<_>>(),
        "g": c.g.iter().map(|(&(m, k), &a)| json!([multi(m), multi(k), a])).collect::<Vec<_>>(),
    })
}

/// Reads a file and decodes it with `read`.
pub fn load<T>(path: &Path, read: impl Fn(&Source) -> SchemaResult<T>) -> SchemaResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| SchemaError {
        file: Some(path.display().to_string()),
        line: 1,
        column: 1,
        message: format!("cannot read file: {e}"),
    })?;
    read(&Source::file(&text, path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bibundle::{bibundle_iso_search, bundle_from_functor};

    fn roundtrip<T>(v: Value, read: impl Fn(&Source) -> SchemaResult<T>) -> T {
        let text = serde_json::to_string_pretty(&v).unwrap();
        read(&Source::inline(&text)).unwrap()
    }

    #[test]
    fn groupoid_roundtrip() {
        let g = FiniteGroupoid::transitive(2, &FiniteGroup::symmetric(3)).unwrap();
        assert_eq!(roundtrip(groupoid_to_json(&g), read_groupoid), g);
        let z3 = FiniteGroup::cyclic(3);
        assert!(roundtrip(group_to_json(&z3), read_group).is_isomorphic(&z3));
    }

    #[test]
    fn parse_errors_are_anchored() {
        let text = "{\n  \"objects\": [0],\n  \"arrows\": [\n    {\"id\": 0, \"src\": 0, \"tgt\": 0},\n  ]\n}";
        let e = read_groupoid(&Source::inline(text)).unwrap_err();
        assert_eq!(e.line, 5);
        let text = "{\n  \"objects\": [0, 2],\n  \"arrows\": [],\n  \"comp\": [],\n  \"inv\": [],\n  \"unit\": []\n}";
        let e = read_groupoid(&Source::inline(text)).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("0..2"));
        let text = "{\n \"objects\": [0],\n \"arrows\": [{\"id\": 0, \"src\": 0, \"tgt\": 0}],\n \"comp\": [],\n \"inv\": [[0, 0]],\n \"unit\": [[0, 0]]\n}";
        let e = read_groupoid(&Source::inline(text)).unwrap_err();
        assert_eq!(e.line, 4);
    }

    #[test]
    fn other_documents_roundtrip() {
        let z2 = FiniteGroup::cyclic(2);
        let z4 = FiniteGroup::cyclic(4);
        let f = GroupoidFunctor::from_group_hom(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let back = roundtrip(functor_to_json(&f), read_functor);
        assert_eq!(back.arr_map, f.arr_map);
        let b = bundle_from_functor(&f);
        assert!(bibundle_iso_search(&roundtrip(bibundle_to_json(&b), read_bibundle), &b).is_some());
        let a = ComplexAction::from_fn(z2, SimplicialComplex::cycle(6).unwrap(), |g, v| (v + 3 * g) % 6).unwrap();
        let back = roundtrip(action_to_json(&a), read_action);
        assert_eq!(back.vertex_images(), a.vertex_images());
        let p = GroupPresentation::new(2, vec![vec![1, 2, -1, -2]]).unwrap();
        assert_eq!(roundtrip(presentation_to_json(&p), read_presentation), p);
        let m = PresentationMap::identity(&p);
        assert_eq!(roundtrip(presentation_map_to_json(&m), read_presentation_map), m);
        let c = Cocycle::coboundary(GridCover::new(2, 2).unwrap(), Arc::new(FiniteGroupoid::group_as_groupoid(&z4)), &[0, 1, 2, 3]).unwrap();
        assert_eq!(roundtrip(cocycle_to_json(&c), read_cocycle), c);
    }

    #[test]
    fn cocycle_cells_accept_lex_indices() {
        let g = groupoid_to_json(&FiniteGroupoid::unit_groupoid(1));
        let doc = json!({"n": 1, "N": 2, "groupoid": g, "f": [[0, 0], [1, 0]], "g": [[0, 0, 0], [0, 1, 0], [1, 0, 0], [[2], [2], 0]]});
        let c = roundtrip(doc, read_cocycle);
        assert_eq!(c.g.len(), 4);
    }

    #[test]
    fn file_references_need_a_directory() {
        let doc = json!({"source": "g.json", "target": "g.json", "objMap": [], "arrMap": []});
        let text = doc.to_string();
        let e = read_functor(&Source::inline(&text)).unwrap_err();
        assert!(e.message.contains("not allowed"));
    }
}
