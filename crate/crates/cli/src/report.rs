//! JSON and text renderings of results. JSON objects have sorted keys; labels keep file order.

use std::fmt::Write;

use serde_json::{json, Value};
use setcat::embedding::SymmetryEmbedding;
use setcat::io::{category_to_json, embedding_to_json};
use setcat::premodular::Premodular;
use setcat::relprod::CondensationResult;

fn labels(p: &Premodular, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| p.label(i).to_string()).collect()
}

fn input_labels(out: &CondensationResult, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| out.input_labels[i].clone()).collect()
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut s = String::new();
    let mut line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells.iter().zip(&width).map(|(c, &w)| format!("{c:<w$}")).collect();
        writeln!(s, "{}", parts.join("  ").trim_end()).unwrap();
    };
    line(header.to_vec());
    line(width.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    s
}

pub fn info_json(p: &Premodular) -> Value {
    let center = p.muger_center();
    let s: Vec<Vec<String>> = (0..p.rank()).map(|i| p.smatrix().row(i).iter().map(|x| x.to_string()).collect()).collect();
    json!({
        "name": p.name(),
        "rank": p.rank(),
        "labels": p.labels(),
        "dims": p.dims().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "twists": p.twists().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "duals": labels(p, p.ring().duals()),
        "global_dim": p.global_dim().to_string(),
        "gauss_sum": p.gauss_sum().to_string(),
        "muger_center": labels(p, &center),
        "symmetric": center.len() == p.rank(),
        "nondegenerate": center.len() == 1,
        "smatrix": s,
    })
}

pub fn info_text(p: &Premodular) -> String {
    let center = p.muger_center();
    let rows: Vec<Vec<String>> = (0..p.rank())
        .map(|i| vec![p.label(i).to_string(), p.label(p.ring().dual(i)).to_string(), p.dim(i).to_string(), p.twist(i).to_string()])
        .collect();
    let mut s = format!("{} (rank {})\n", p.name(), p.rank());
    s += &table(&["label", "dual", "dim", "twist"], &rows);
    writeln!(s, "global dimension  {}", p.global_dim()).unwrap();
    writeln!(s, "Gauss sum         {}", p.gauss_sum()).unwrap();
    writeln!(s, "Muger center      {{{}}}", labels(p, &center).join(", ")).unwrap();
    writeln!(s, "nondegenerate     {}", center.len() == 1).unwrap();
    let srows: Vec<Vec<String>> = (0..p.rank())
        .map(|i| std::iter::once(p.label(i).to_string()).chain(p.smatrix().row(i).iter().map(|x| x.to_string())).collect())
        .collect();
    let header: Vec<&str> = std::iter::once("S").chain(p.labels().iter().map(String::as_str)).collect();
    s += &table(&header, &srows);
    s
}

pub fn embedding_json(emb: Option<&SymmetryEmbedding>, p: &Premodular) -> Value {
    emb.map_or(Value::Null, |e| embedding_to_json(e, p))
}

pub fn condensation_json(out: &CondensationResult) -> Value {
    let orbits: Vec<Value> = out
        .orbits
        .iter()
        .zip(&out.splittings)
        .map(|(o, &k)| {
            json!({
                "representative": out.input_labels[o.representative],
                "members": input_labels(out, &o.members),
                "stabilizer": input_labels(out, &o.stabilizer),
                "splitting": k,
            })
        })
        .collect();
    let provenance: Vec<Value> = out
        .provenance
        .iter()
        .enumerate()
        .map(|(i, &(o, child))| json!({ "label": out.result.label(i), "orbit": out.input_labels[out.orbits[o].representative], "child": child }))
        .collect();
    json!({
        "input_name": out.input_name,
        "input_labels": out.input_labels,
        "bosons": input_labels(out, &out.bosons),
        "result": category_to_json(&out.result),
        "deconfined": input_labels(out, &out.deconfined),
        "confined": input_labels(out, &out.confined),
        "orbits": orbits,
        "splittings": out.splittings,
        "provenance": provenance,
        "alternatives": out.alternatives.iter().map(category_to_json).collect::<Vec<_>>(),
        "ambiguity_flags": out.ambiguity_flags,
        "embedding": embedding_json(out.embedding.as_ref(), &out.result),
    })
}

pub fn condensation_text(out: &CondensationResult) -> String {
    let mut s = format!("condensing {} on {{{}}}\n", out.input_name, input_labels(out, &out.bosons).join(", "));
    writeln!(s, "deconfined  {{{}}}", input_labels(out, &out.deconfined).join(", ")).unwrap();
    writeln!(s, "confined    {{{}}}", input_labels(out, &out.confined).join(", ")).unwrap();
    let rows: Vec<Vec<String>> = out
        .orbits
        .iter()
        .zip(&out.splittings)
        .map(|(o, &k)| vec![out.input_labels[o.representative].clone(), input_labels(out, &o.members).join(" "), (o.stabilizer.len()).to_string(), k.to_string()])
        .collect();
    s += &table(&["orbit", "members", "|stab|", "children"], &rows);
    let p = &out.result;
    let rows: Vec<Vec<String>> = (0..p.rank())
        .map(|i| {
            let (o, _) = out.provenance[i];
            vec![p.label(i).to_string(), p.dim(i).to_string(), p.twist(i).to_string(), out.input_labels[out.orbits[o].representative].clone()]
        })
        .collect();
    writeln!(s, "result {} (rank {})", p.name(), p.rank()).unwrap();
    s += &table(&["label", "dim", "twist", "from"], &rows);
    if let Some(emb) = &out.embedding {
        let g = emb.group();
        let images: Vec<String> = (0..g.order()).map(|e| format!("{} -> {}", g.element_label(e), p.label(emb.image_of(e)))).collect();
        writeln!(s, "embedding   {}", images.join(", ")).unwrap();
    }
    if out.is_ambiguous() {
        writeln!(s, "AMBIGUOUS: {} surviving splittings; differing entries: {}", out.alternatives.len() + 1, out.ambiguity_flags.join(", ")).unwrap();
    } else {
        writeln!(s, "splitting   unique").unwrap();
    }
    s
}

pub fn sigma_json(p1: &Premodular, p2: &Premodular, sigma: Option<&[usize]>) -> Value {
    match sigma {
        None => Value::Null,
        Some(s) => Value::Array(s.iter().enumerate().map(|(i, &j)| json!([p1.label(i), p2.label(j)])).collect()),
    }
}

pub fn sigma_text(p1: &Premodular, p2: &Premodular, sigma: Option<&[usize]>) -> String {
    match sigma {
        None => "none".to_string(),
        Some(s) => s.iter().enumerate().map(|(i, &j)| format!("{} -> {}", p1.label(i), p2.label(j))).collect::<Vec<_>>().join(", "),
    }
}
