//! JSON file formats for categories, embeddings and metric groups.
//!
//! All scalars are strings in the exact grammar; JSON numbers must be integers.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::embedding::{EmbeddingError, SymmetryEmbedding};
use crate::exactnum::{Cyclo, Turn};
use crate::fusion::FusionRing;
use crate::group::{AbelianGroup, GroupError};
use crate::pointed::{MetricError, MetricGroup};
use crate::premodular::{Premodular, PremodularError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("syntax error at `{field}`: {msg}")]
    Syntax { field: String, msg: String },
    #[error(transparent)]
    Category(#[from] PremodularError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("embedding targets `{target}` but was applied to `{category}`")]
    TargetMismatch { target: String, category: String },
}

impl FormatError {
    pub fn is_syntax(&self) -> bool {
        matches!(self, FormatError::Syntax { .. })
    }
}

fn syntax(field: impl Into<String>, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { field: field.into(), msg: msg.into() }
}

fn parse_json(text: &str) -> Result<Map<String, Value>, FormatError> {
    match serde_json::from_str(text) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(syntax("$", "top level must be an object")),
        Err(e) => Err(syntax("$", e.to_string())),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, FormatError> {
    obj.get(key).ok_or_else(|| syntax(key, "missing field"))
}

fn as_str<'a>(v: &'a Value, at: &str) -> Result<&'a str, FormatError> {
    match v {
        Value::String(s) => Ok(s),
        Value::Number(n) if n.is_f64() => Err(syntax(at, format!("floats are not allowed: {n}"))),
        _ => Err(syntax(at, "expected a string")),
    }
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>, FormatError> {
    v.as_array().ok_or_else(|| syntax(at, "expected an array"))
}

fn as_object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>, FormatError> {
    v.as_object().ok_or_else(|| syntax(at, "expected an object"))
}

fn as_uint(v: &Value, at: &str) -> Result<u64, FormatError> {
    match v {
        Value::Number(n) if n.is_f64() => Err(syntax(at, format!("floats are not allowed: {n}"))),
        Value::Number(n) => n.as_u64().ok_or_else(|| syntax(at, "expected a nonnegative integer")),
        _ => Err(syntax(at, "expected an integer")),
    }
}

fn as_int(v: &Value, at: &str) -> Result<i64, FormatError> {
    match v {
        Value::Number(n) if n.is_f64() => Err(syntax(at, format!("floats are not allowed: {n}"))),
        Value::Number(n) => n.as_i64().ok_or_else(|| syntax(at, "integer out of range")),
        _ => Err(syntax(at, "expected an integer")),
    }
}

fn factors(v: &Value, at: &str) -> Result<AbelianGroup, FormatError> {
    let list = as_array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_uint(x, &format!("{at}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    AbelianGroup::new(&list).map_err(|e: GroupError| syntax(at, e.to_string()))
}

/// Reads a category file; syntax problems and failed invariants are distinct errors.
pub fn parse_category(text: &str) -> Result<Premodular, FormatError> {
    let obj = parse_json(text)?;
    let name = as_str(field(&obj, "name")?, "name")?.to_string();
    let simples: Vec<String> = as_array(field(&obj, "simples")?, "simples")?
        .iter()
        .enumerate()
        .map(|(i, v)| as_str(v, &format!("simples[{i}]")).map(str::to_string))
        .collect::<Result<_, _>>()?;
    if simples.is_empty() {
        return Err(syntax("simples", "at least the unit is required"));
    }
    let index = |l: &str, at: &str| simples.iter().position(|s| s == l).ok_or_else(|| syntax(at, format!("unknown label `{l}`")));
    let per_label = |key: &str| -> Result<Vec<&str>, FormatError> {
        let map = as_object(field(&obj, key)?, key)?;
        if let Some(extra) = map.keys().find(|k| !simples.contains(k)) {
            return Err(syntax(format!("{key}.{extra}"), "unknown label"));
        }
        simples
            .iter()
            .map(|l| {
                let at = format!("{key}.{l}");
                as_str(map.get(l).ok_or_else(|| syntax(&at, "missing entry"))?, &at)
            })
            .collect()
    };
    let dual = per_label("dual")?
        .iter()
        .zip(&simples)
        .map(|(d, l)| index(d, &format!("dual.{l}")))
        .collect::<Result<Vec<_>, _>>()?;
    let twists = per_label("twists")?
        .iter()
        .zip(&simples)
        .map(|(t, l)| t.parse::<Turn>().map_err(|e| syntax(format!("twists.{l}"), e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let dims = per_label("dims")?
        .iter()
        .zip(&simples)
        .map(|(d, l)| d.parse::<Cyclo>().map_err(|e| syntax(format!("dims.{l}"), e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let mut entries = Vec::new();
    for (n, row) in as_array(field(&obj, "fusion")?, "fusion")?.iter().enumerate() {
        let at = format!("fusion[{n}]");
        let row = as_array(row, &at)?;
        let [i, j, k, m] = row.as_slice() else {
            return Err(syntax(&at, "expected [i, j, k, N]"));
        };
        let lab = |v: &Value| as_str(v, &at).and_then(|l| index(l, &at));
        let m = as_uint(m, &at)?;
        if m == 0 {
            return Err(syntax(&at, "multiplicities must be at least 1"));
        }
        let m = u32::try_from(m).map_err(|_| syntax(&at, "multiplicity too large"))?;
        entries.push((lab(i)?, lab(j)?, lab(k)?, m));
    }
    let ring = FusionRing::new(simples, dual, entries).map_err(PremodularError::from)?;
    Ok(Premodular::new(name, ring, dims, twists)?)
}

pub fn category_to_json(p: &Premodular) -> Value {
    let labels = p.labels();
    let per_label = |f: &dyn Fn(usize) -> String| -> Value {
        Value::Object((0..p.rank()).map(|i| (labels[i].clone(), Value::String(f(i)))).collect())
    };
    let fusion: Vec<Value> = p
        .ring()
        .entries()
        .map(|(i, j, k, m)| json!([labels[i], labels[j], labels[k], m]))
        .collect();
    json!({
        "name": p.name(),
        "simples": labels,
        "dual": per_label(&|i| labels[p.ring().dual(i)].clone()),
        "twists": per_label(&|i| p.twist(i).to_string()),
        "dims": per_label(&|i| p.dim(i).to_string()),
        "fusion": fusion,
    })
}

pub fn serialize_category(p: &Premodular) -> String {
    to_pretty(&category_to_json(p))
}

/// Compact rows inside pretty-printed objects keep large fusion tables readable.
pub fn to_pretty(v: &Value) -> String {
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent + 1);
        match v {
            Value::Object(m) if !m.is_empty() => {
                out.push_str("{\n");
                for (n, (k, x)) in m.iter().enumerate() {
                    out.push_str(&pad);
                    out.push_str(&Value::String(k.clone()).to_string());
                    out.push_str(": ");
                    go(x, indent + 1, out);
                    out.push_str(if n + 1 < m.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
            Value::Array(a) if a.iter().any(Value::is_object) => {
                out.push_str("[\n");
                for (n, x) in a.iter().enumerate() {
                    out.push_str(&pad);
                    go(x, indent + 1, out);
                    out.push_str(if n + 1 < a.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            Value::Array(a) if a.iter().any(Value::is_array) => {
                out.push_str("[\n");
                for (n, x) in a.iter().enumerate() {
                    out.push_str(&pad);
                    out.push_str(&x.to_string());
                    out.push_str(if n + 1 < a.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            other => out.push_str(&other.to_string()),
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out.push('\n');
    out
}

/// An embedding file before its labels are resolved against a category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingFile {
    pub group: AbelianGroup,
    pub target: String,
    pub map: Vec<(Vec<u64>, String)>,
}

pub fn parse_embedding_file(text: &str) -> Result<EmbeddingFile, FormatError> {
    let obj = parse_json(text)?;
    let group = factors(field(&obj, "group")?, "group")?;
    let target = as_str(field(&obj, "target")?, "target")?.to_string();
    let mut map = Vec::new();
    for (n, row) in as_array(field(&obj, "map")?, "map")?.iter().enumerate() {
        let at = format!("map[{n}]");
        let pair = as_array(row, &at)?;
        let [tuple, label] = pair.as_slice() else {
            return Err(syntax(&at, "expected [[coordinates], label]"));
        };
        let coords = as_array(tuple, &at)?.iter().map(|c| as_uint(c, &at)).collect::<Result<Vec<_>, _>>()?;
        map.push((coords, as_str(label, &at)?.to_string()));
    }
    Ok(EmbeddingFile { group, target, map })
}

impl EmbeddingFile {
    /// Resolves labels against `c` and validates the embedding.
    pub fn resolve(&self, c: &Premodular) -> Result<SymmetryEmbedding, FormatError> {
        if self.target != c.name() {
            return Err(FormatError::TargetMismatch { target: self.target.clone(), category: c.name().to_string() });
        }
        let g = &self.group;
        let mut images = vec![None; g.order()];
        for (n, (coords, label)) in self.map.iter().enumerate() {
            let at = format!("map[{n}]");
            let e = g.index_strict(coords).map_err(|e| syntax(&at, e.to_string()))?;
            let x = c.index_of(label).map_err(|e| syntax(&at, e.to_string()))?;
            if images[e].replace(x).is_some() {
                return Err(syntax(&at, format!("element {} listed twice", g.element_label(e))));
            }
        }
        let map = images
            .into_iter()
            .enumerate()
            .map(|(e, x)| x.ok_or_else(|| syntax("map", format!("no image for {}", g.element_label(e)))))
            .collect::<Result<Vec<_>, _>>()?;
        let emb = SymmetryEmbedding::new(g.clone(), c.name(), map)?;
        emb.check(c)?;
        Ok(emb)
    }
}

pub fn parse_embedding(text: &str, c: &Premodular) -> Result<SymmetryEmbedding, FormatError> {
    parse_embedding_file(text)?.resolve(c)
}

pub fn embedding_to_json(emb: &SymmetryEmbedding, c: &Premodular) -> Value {
    let g = emb.group();
    let map: Vec<Value> = (0..g.order()).map(|e| json!([g.element(e), c.label(emb.image_of(e))])).collect();
    json!({ "group": g.factors(), "target": emb.target(), "map": map })
}

pub fn serialize_embedding(emb: &SymmetryEmbedding, c: &Premodular) -> String {
    to_pretty(&embedding_to_json(emb, c))
}

/// Metric group file: `q` either listed on every element (`values`, in index order)
/// or given by `polynomial`, a list of `[numerator, [exponents]]` over a common `denominator`.
pub fn parse_metric_group(text: &str) -> Result<(String, MetricGroup), FormatError> {
    let obj = parse_json(text)?;
    let name = as_str(field(&obj, "name")?, "name")?.to_string();
    let group = factors(field(&obj, "factors")?, "factors")?;
    let q = match (obj.get("values"), obj.get("polynomial")) {
        (Some(v), None) => as_array(v, "values")?
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let at = format!("values[{i}]");
                as_str(t, &at)?.parse::<Turn>().map_err(|e| syntax(&at, e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?,
        (None, Some(p)) => {
            let p = as_object(p, "polynomial")?;
            let den = as_int(field(p, "denominator")?, "polynomial.denominator")?;
            if den <= 0 {
                return Err(syntax("polynomial.denominator", "must be positive"));
            }
            let mut terms = Vec::new();
            for (n, t) in as_array(field(p, "terms")?, "polynomial.terms")?.iter().enumerate() {
                let at = format!("polynomial.terms[{n}]");
                let pair = as_array(t, &at)?;
                let [coef, exps] = pair.as_slice() else {
                    return Err(syntax(&at, "expected [numerator, [exponents]]"));
                };
                let exps = as_array(exps, &at)?.iter().map(|e| as_uint(e, &at)).collect::<Result<Vec<_>, _>>()?;
                if exps.len() != group.rank() {
                    return Err(syntax(&at, format!("expected {} exponents", group.rank())));
                }
                terms.push((as_int(coef, &at)?, exps));
            }
            (0..group.order())
                .map(|i| {
                    let x = group.element(i);
                    let num = terms.iter().try_fold(0i64, |acc, (c, e)| {
                        let mono = x.iter().zip(e).try_fold(1i64, |m, (&v, &k)| m.checked_mul((v as i64).checked_pow(k as u32)?));
                        acc.checked_add(c.checked_mul(mono?)?)
                    });
                    let num = num.ok_or_else(|| syntax("polynomial", "overflow while evaluating"))?;
                    Turn::new(num.rem_euclid(den), den).map_err(|e| syntax("polynomial", e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?
        }
        _ => return Err(syntax("values", "exactly one of `values` or `polynomial` is required")),
    };
    Ok((name, MetricGroup::new(group, q)?))
}

pub fn metric_group_to_json(name: &str, m: &MetricGroup) -> Value {
    let values: Vec<String> = m.values().iter().map(Turn::to_string).collect();
    json!({ "name": name, "factors": m.group().factors(), "values": values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::premodular::tests::{ising, toric};

    const TORIC: &str = r#"{
        "name": "toric",
        "simples": ["1", "e", "m", "f"],
        "dual": {"1": "1", "e": "e", "m": "m", "f": "f"},
        "twists": {"1": "0", "e": "0", "m": "0", "f": "1/2"},
        "dims": {"1": "1", "e": "1", "m": "1", "f": "1"},
        "fusion": [
            ["1","1","1",1], ["1","e","e",1], ["1","m","m",1], ["1","f","f",1],
            ["e","1","e",1], ["e","e","1",1], ["e","m","f",1], ["e","f","m",1],
            ["m","1","m",1], ["m","e","f",1], ["m","m","1",1], ["m","f","e",1],
            ["f","1","f",1], ["f","e","m",1], ["f","m","e",1], ["f","f","1",1]
        ]
    }"#;

    #[test]
    fn category_round_trip() {
        let p = parse_category(TORIC).unwrap();
        assert_eq!(p, toric());
        let text = serialize_category(&p);
        assert_eq!(parse_category(&text).unwrap(), p);
        assert_eq!(serialize_category(&parse_category(&text).unwrap()), text);
        let is = ising();
        assert_eq!(parse_category(&serialize_category(&is)).unwrap(), is);
    }

    #[test]
    fn floats_are_syntax_errors() {
        let bad = TORIC.replace(r#""f": "1/2""#, r#""f": "0.5""#);
        assert!(parse_category(&bad).unwrap_err().is_syntax());
        let bad = TORIC.replace(r#"["f","f","1",1]"#, r#"["f","f","1",1.0]"#);
        assert!(parse_category(&bad).unwrap_err().is_syntax());
        assert!(parse_category("{not json").unwrap_err().is_syntax());
    }

    #[test]
    fn wrong_twist_is_a_validation_error() {
        let bad = TORIC.replace(r#""f": "1/2""#, r#""f": "1/4""#);
        let err = parse_category(&bad).unwrap_err();
        assert!(!err.is_syntax());
        assert!(err.to_string().contains("S-matrix"), "{err}");
        // with θ_f = 0 the data is Rep(Z/2 x Z/2), which is valid
        let sym = TORIC.replace(r#""f": "1/2""#, r#""f": "0""#);
        assert!(parse_category(&sym).unwrap().is_symmetric());
    }

    #[test]
    fn field_names_in_messages() {
        let bad = TORIC.replace(r#""m": "m", "f": "f"}"#, r#""m": "m", "f": "g"}"#);
        let err = parse_category(&bad).unwrap_err();
        assert!(err.to_string().contains("dual.f"), "{err}");
    }

    #[test]
    fn embeddings() {
        let p = toric();
        let text = r#"{"group": [2], "target": "toric", "map": [[[0], "1"], [[1], "e"]]}"#;
        let emb = parse_embedding(text, &p).unwrap();
        assert_eq!(emb.map(), &[0, 1]);
        assert_eq!(parse_embedding(&serialize_embedding(&emb, &p), &p).unwrap(), emb);
        let f = text.replace(r#""e""#, r#""f""#);
        assert!(matches!(parse_embedding(&f, &p), Err(FormatError::Embedding(_))));
        let other = text.replace("\"toric\"", "\"ising\"");
        assert!(matches!(parse_embedding(&other, &p), Err(FormatError::TargetMismatch { .. })));
    }

    #[test]
    fn metric_groups() {
        let listed = r#"{"name": "toric", "factors": [2, 2], "values": ["0", "0", "0", "1/2"]}"#;
        let poly = r#"{"name": "toric", "factors": [2, 2], "polynomial": {"denominator": 2, "terms": [[1, [1, 1]]]}}"#;
        let (n1, a) = parse_metric_group(listed).unwrap();
        let (_, b) = parse_metric_group(poly).unwrap();
        assert_eq!(n1, "toric");
        assert_eq!(a, b);
        let text = metric_group_to_json("toric", &a).to_string();
        assert_eq!(parse_metric_group(&text).unwrap().1, a);
        let bad = r#"{"name": "x", "factors": [3], "polynomial": {"denominator": 4, "terms": [[1, [2]]]}}"#;
        assert!(matches!(parse_metric_group(bad), Err(FormatError::Metric(_))));
    }
}
