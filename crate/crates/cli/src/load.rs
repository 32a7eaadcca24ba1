//! Resolves command-line inputs: a file path, or a catalog key such as `toric_code`.

use std::path::Path;

use serde_json::Value;
use setcat::catalog::{CATEGORY_FILES, EMBEDDING_FILES};
use setcat::embedding::SymmetryEmbedding;
use setcat::io::{parse_category, parse_embedding_file, parse_metric_group, FormatError};
use setcat::premodular::Premodular;

use crate::Failure;

fn read(arg: &str, builtin: Option<&'static str>) -> Result<String, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        return std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{arg}: {e}")));
    }
    builtin.map(str::to_string).ok_or_else(|| Failure::Input(format!("{arg}: no such file or catalog entry")))
}

fn format_error(arg: &str, e: FormatError) -> Failure {
    Failure::Input(format!("{arg}: {e}"))
}

/// A category file, a metric-group file (read as its pointed category), or a catalog key.
pub fn category(arg: &str) -> Result<Premodular, Failure> {
    let builtin = CATEGORY_FILES.iter().find(|(k, _)| *k == arg).map(|(_, t)| *t);
    let text = read(arg, builtin)?;
    let is_metric = matches!(serde_json::from_str::<Value>(&text), Ok(Value::Object(m)) if m.contains_key("factors"));
    if is_metric {
        let (name, m) = parse_metric_group(&text).map_err(|e| format_error(arg, e))?;
        return Ok(m.to_premodular(name));
    }
    parse_category(&text).map_err(|e| format_error(arg, e))
}

/// An embedding file or catalog key such as `toric_code.e`, resolved against `c`.
pub fn embedding(arg: &str, c: &Premodular) -> Result<SymmetryEmbedding, Failure> {
    let builtin = EMBEDDING_FILES.iter().find(|(k, _, _)| *k == arg).map(|(_, _, t)| *t);
    let text = read(arg, builtin)?;
    parse_embedding_file(&text).and_then(|f| f.resolve(c)).map_err(|e| format_error(arg, e))
}

/// Exactly `n` embeddings, the i-th resolved against `cats[i]`.
pub fn embeddings(args: &[String], cats: &[&Premodular]) -> Result<Vec<SymmetryEmbedding>, Failure> {
    if args.len() != cats.len() {
        return Err(Failure::Input(format!("expected {} --emb argument(s), got {}", cats.len(), args.len())));
    }
    args.iter().zip(cats).map(|(a, c)| embedding(a, c)).collect()
}
