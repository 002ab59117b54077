//! JSON documents for posets, lattices, distributors and maps.
//!
//! Reading walks a `serde_json::Value` by hand so that errors can name the
//! offending field. Writing is canonical: elements sorted, order given by
//! cover pairs, keys in a fixed order.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::dist::{Distributor, Mode};
use crate::error::{Error, Result};
use crate::lattice::{lattice_from_poset, FinDistLattice, Hemimorphism};
use crate::poset::{FinitePoset, MonotoneMap};

/// Anything a document can describe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainValue {
    Poset(FinitePoset),
    Lattice(FinDistLattice),
    Distributor(Distributor),
    Map(MonotoneMap),
    Hemimorphism(Hemimorphism),
}

impl DomainValue {
    pub fn kind(&self) -> &'static str {
        match self {
            DomainValue::Poset(_) => "poset",
            DomainValue::Lattice(_) => "lattice",
            DomainValue::Distributor(_) => "distributor",
            DomainValue::Map(_) | DomainValue::Hemimorphism(_) => "map",
        }
    }
}

/// Options applied while reading.
#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    /// Overrides the `mode` field of distributor documents.
    pub mode: Option<Mode>,
}

fn parse_err(location: &str, message: impl Into<String>) -> Error {
    Error::Parse { location: if location.is_empty() { "document".into() } else { location.into() }, message: message.into() }
}

fn join_path(base: &str, field: &str) -> String {
    if base.is_empty() {
        field.to_string()
    } else {
        format!("{base}.{field}")
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<DomainValue> {
    load_with(path, LoadOptions::default())
}

pub fn load_with(path: impl AsRef<Path>, options: LoadOptions) -> Result<DomainValue> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_document(&text, &dir, options)
}

/// Parses a document; relative paths inside it resolve against `dir`.
pub fn parse_document(text: &str, dir: &Path, options: LoadOptions) -> Result<DomainValue> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| parse_err(&format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    Reader { dir: dir.to_path_buf(), options }.value(&value, "")
}

struct Reader {
    dir: PathBuf,
    options: LoadOptions,
}

impl Reader {
    fn value(&self, v: &Value, loc: &str) -> Result<DomainValue> {
        let obj = v.as_object().ok_or_else(|| parse_err(loc, "expected an object"))?;
        let kind_loc = join_path(loc, "kind");
        let kind = obj
            .get("kind")
            .ok_or_else(|| parse_err(&kind_loc, "missing field"))?
            .as_str()
            .ok_or_else(|| parse_err(&kind_loc, "expected a string"))?;
        match kind {
            "poset" => Ok(DomainValue::Poset(self.poset_fields(v, loc)?)),
            "lattice" => Ok(DomainValue::Lattice(lattice_from_poset(&self.poset_fields(v, loc)?)?)),
            "distributor" => Ok(DomainValue::Distributor(self.distributor(v, loc)?)),
            "map" => self.map(v, loc),
            other => Err(parse_err(&kind_loc, format!("unknown kind {other:?}"))),
        }
    }

    fn field<'a>(&self, v: &'a Value, loc: &str, name: &str) -> Result<&'a Value> {
        v.get(name).ok_or_else(|| parse_err(&join_path(loc, name), "missing field"))
    }

    fn strings(&self, v: &Value, loc: &str) -> Result<Vec<String>> {
        let arr = v.as_array().ok_or_else(|| parse_err(loc, "expected an array"))?;
        arr.iter()
            .enumerate()
            .map(|(i, s)| s.as_str().map(str::to_string).ok_or_else(|| parse_err(&format!("{loc}[{i}]"), "expected a string")))
            .collect()
    }

    fn pairs(&self, v: &Value, loc: &str) -> Result<Vec<(String, String)>> {
        let arr = v.as_array().ok_or_else(|| parse_err(loc, "expected an array of pairs"))?;
        arr.iter()
            .enumerate()
            .map(|(i, p)| {
                let here = format!("{loc}[{i}]");
                let items = self.strings(p, &here)?;
                match <[String; 2]>::try_from(items) {
                    Ok([a, b]) => Ok((a, b)),
                    Err(_) => Err(parse_err(&here, "expected a pair of two labels")),
                }
            })
            .collect()
    }

    fn poset_fields(&self, v: &Value, loc: &str) -> Result<FinitePoset> {
        let elements = self.strings(self.field(v, loc, "elements")?, &join_path(loc, "elements"))?;
        let leq_loc = join_path(loc, "leq");
        let leq = match v.get("leq") {
            Some(l) => self.pairs(l, &leq_loc)?,
            None => Vec::new(),
        };
        FinitePoset::new(&elements, &leq)
    }

    /// An inline document or a path to one.
    fn embedded(&self, v: &Value, loc: &str) -> Result<DomainValue> {
        match v {
            Value::String(p) => {
                let path = self.dir.join(p);
                let text = fs::read_to_string(&path)
                    .map_err(|e| parse_err(loc, format!("cannot read {}: {e}", path.display())))?;
                let value: Value = serde_json::from_str(&text).map_err(|e| {
                    parse_err(&format!("{loc} ({} line {} column {})", path.display(), e.line(), e.column()), e.to_string())
                })?;
                let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
                Reader { dir, options: self.options }.value(&value, loc)
            }
            _ => self.value(v, loc),
        }
    }

    fn embedded_poset(&self, v: &Value, loc: &str) -> Result<FinitePoset> {
        match self.embedded(v, loc)? {
            DomainValue::Poset(p) => Ok(p),
            DomainValue::Lattice(l) => Ok(l.order().clone()),
            other => Err(parse_err(loc, format!("expected a poset, found a {}", other.kind()))),
        }
    }

    fn distributor(&self, v: &Value, loc: &str) -> Result<Distributor> {
        let source = self.embedded_poset(self.field(v, loc, "source")?, &join_path(loc, "source"))?;
        let target = self.embedded_poset(self.field(v, loc, "target")?, &join_path(loc, "target"))?;
        let pairs = match v.get("pairs") {
            Some(p) => self.pairs(p, &join_path(loc, "pairs"))?,
            None => Vec::new(),
        };
        let mode = match (self.options.mode, v.get("mode")) {
            (Some(m), _) => m,
            (None, None) => Mode::Strict,
            (None, Some(m)) => m
                .as_str()
                .ok_or_else(|| parse_err(&join_path(loc, "mode"), "expected a string"))?
                .parse()
                .map_err(|e| match e {
                    Error::Parse { message, .. } => parse_err(&join_path(loc, "mode"), message),
                    other => other,
                })?,
        };
        Distributor::from_label_pairs(&source, &target, &pairs, mode)
    }

    fn map(&self, v: &Value, loc: &str) -> Result<DomainValue> {
        let source = self.embedded(self.field(v, loc, "source")?, &join_path(loc, "source"))?;
        let target = self.embedded(self.field(v, loc, "target")?, &join_path(loc, "target"))?;
        let a_loc = join_path(loc, "assignment");
        let obj = self.field(v, loc, "assignment")?.as_object().ok_or_else(|| parse_err(&a_loc, "expected an object"))?;
        let pairs = obj
            .iter()
            .map(|(k, val)| {
                val.as_str()
                    .map(|s| (k.clone(), s.to_string()))
                    .ok_or_else(|| parse_err(&format!("{a_loc}.{k}"), "expected a label"))
            })
            .collect::<Result<Vec<_>>>()?;
        match (source, target) {
            (DomainValue::Lattice(s), DomainValue::Lattice(t)) => {
                Ok(DomainValue::Hemimorphism(Hemimorphism::from_labels(&s, &t, &pairs)?))
            }
            (DomainValue::Poset(s), DomainValue::Poset(t)) => Ok(DomainValue::Map(MonotoneMap::from_labels(s, t, &pairs)?)),
            (s, t) => Err(parse_err(
                loc,
                format!("source and target must both be posets or both lattices, found {} and {}", s.kind(), t.kind()),
            )),
        }
    }
}

#[derive(Serialize)]
struct PosetDoc {
    kind: &'static str,
    elements: Vec<String>,
    leq: Vec<[String; 2]>,
}

#[derive(Serialize)]
struct DistributorDoc {
    kind: &'static str,
    source: PosetDoc,
    target: PosetDoc,
    pairs: Vec<[String; 2]>,
    mode: &'static str,
}

#[derive(Serialize)]
struct MapDoc {
    kind: &'static str,
    source: PosetDoc,
    target: PosetDoc,
    assignment: BTreeMap<String, String>,
}

fn sorted_pairs(mut pairs: Vec<(String, String)>) -> Vec<[String; 2]> {
    pairs.sort();
    pairs.into_iter().map(|(a, b)| [a, b]).collect()
}

fn poset_doc(p: &FinitePoset, kind: &'static str) -> PosetDoc {
    let mut elements = p.labels().to_vec();
    elements.sort();
    PosetDoc { kind, elements, leq: sorted_pairs(p.hasse_labels()) }
}

fn map_doc(source: PosetDoc, target: PosetDoc, pairs: impl Iterator<Item = (String, String)>) -> MapDoc {
    MapDoc { kind: "map", source, target, assignment: pairs.collect() }
}

/// A JSON value for a domain value, in canonical form.
pub fn to_json(value: &DomainValue) -> Value {
    let encoded = match value {
        DomainValue::Poset(p) => serde_json::to_value(poset_doc(p, "poset")),
        DomainValue::Lattice(l) => serde_json::to_value(poset_doc(l.order(), "lattice")),
        DomainValue::Distributor(d) => serde_json::to_value(DistributorDoc {
            kind: "distributor",
            source: poset_doc(d.source(), "poset"),
            target: poset_doc(d.target(), "poset"),
            pairs: sorted_pairs(d.label_pairs()),
            mode: "strict",
        }),
        DomainValue::Map(m) => serde_json::to_value(map_doc(
            poset_doc(m.source(), "poset"),
            poset_doc(m.target(), "poset"),
            (0..m.source().len()).map(|x| (m.source().label(x).to_string(), m.target().label(m.apply(x)).to_string())),
        )),
        DomainValue::Hemimorphism(h) => serde_json::to_value(map_doc(
            poset_doc(h.source().order(), "lattice"),
            poset_doc(h.target().order(), "lattice"),
            (0..h.source().len()).map(|x| (h.source().label(x).to_string(), h.target().label(h.apply(x)).to_string())),
        )),
    };
    encoded.expect("documents serialize")
}

/// Canonical pretty-printed text with a trailing newline.
pub fn to_string(value: &DomainValue) -> String {
    pretty(&to_json(value))
}

/// Indented JSON in which short arrays of scalars, such as order pairs, stay on one line.
pub fn pretty(value: &Value) -> String {
    let mut s = String::new();
    write_value(&mut s, value, 0);
    s.push('\n');
    s
}

fn flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_array() && !i.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if !items.is_empty() && !flat(v) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(out, item, depth + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Array(items) if items.len() > 8 => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&item.to_string());
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, depth + 1);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        _ => out.push_str(&v.to_string()),
    }
}

pub fn save(value: &DomainValue, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_string(value)).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    Ok(())
}

/// The value re-indexed so that every poset involved lists its elements in sorted order.
pub fn canonical(value: &DomainValue) -> Result<DomainValue> {
    parse_document(&to_string(value), Path::new("."), LoadOptions::default())
}
