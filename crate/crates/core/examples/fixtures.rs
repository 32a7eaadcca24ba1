//! Regenerates the catalog fixtures: `cargo run -p setcat-core --example fixtures -- crates/core/fixtures`.

use std::path::{Path, PathBuf};

use setcat::double::{drinfeld_double_abelian, rep_abelian};
use setcat::embedding::SymmetryEmbedding;
use setcat::exactnum::{Cyclo, Turn};
use setcat::fusion::FusionRing;
use setcat::group::AbelianGroup;
use setcat::io::{serialize_category, serialize_embedding};
use setcat::pointed::MetricGroup;
use setcat::premodular::Premodular;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn group(f: &[u64]) -> AbelianGroup {
    AbelianGroup::new(f).unwrap()
}

fn cyclic_form(n: u64, num: u64, den: u64, name: &str, names: &[&str]) -> Premodular {
    MetricGroup::from_fn(&[n], |v| Turn::new((num * v[0] * v[0]) as i64, den as i64).unwrap())
        .unwrap()
        .to_premodular(name)
        .relabeled(labels(names))
        .unwrap()
}

fn ising() -> Premodular {
    let entries = vec![
        (0, 0, 0, 1),
        (0, 1, 1, 1),
        (0, 2, 2, 1),
        (1, 0, 1, 1),
        (1, 1, 0, 1),
        (1, 2, 2, 1),
        (2, 0, 2, 1),
        (2, 1, 2, 1),
        (2, 2, 0, 1),
        (2, 2, 1, 1),
    ];
    let ring = FusionRing::new(labels(&["1", "psi", "sigma"]), vec![0, 1, 2], entries).unwrap();
    let sqrt2: Cyclo = "z8 + z8^7".parse().unwrap();
    let twists = vec![Turn::ZERO, Turn::new(1, 2).unwrap(), Turn::new(1, 16).unwrap()];
    Premodular::new("Ising", ring, vec![Cyclo::one(), Cyclo::one(), sqrt2], twists).unwrap()
}

fn fibonacci() -> Premodular {
    let entries = vec![(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)];
    let ring = FusionRing::new(labels(&["1", "tau"]), vec![0, 1], entries).unwrap();
    let golden: Cyclo = "-z5^2 - z5^3".parse().unwrap();
    Premodular::new("Fibonacci", ring, vec![Cyclo::one(), golden], vec![Turn::ZERO, Turn::new(2, 5).unwrap()]).unwrap()
}

fn write(dir: &Path, file: &str, text: String) {
    let path: PathBuf = dir.join(file);
    std::fs::write(&path, text).unwrap();
    println!("wrote {}", path.display());
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "crates/core/fixtures".into()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut cats: Vec<(&str, Premodular)> = Vec::new();
    let mut embs: Vec<(&str, usize, SymmetryEmbedding)> = Vec::new();

    let vec = MetricGroup::from_fn(&[], |_| Turn::ZERO).unwrap().to_premodular("Vec").relabeled(labels(&["1"])).unwrap();
    cats.push(("vec", vec));

    for (key, f, names, name) in [("rep_z2", 2u64, &["1", "eps"][..], "Rep(Z/2)"), ("rep_z4", 4, &["1", "c", "c2", "c3"][..], "Rep(Z/4)")] {
        let (r, emb) = rep_abelian(&group(&[f]));
        let r = r.relabeled(labels(names)).unwrap().renamed(name);
        embs.push((if f == 2 { "rep_z2.id" } else { "rep_z4.id" }, cats.len(), emb.retargeted(name, emb.map().to_vec())));
        cats.push((key, r));
    }

    let semion = cyclic_form(2, 1, 4, "semion", &["1", "s"]);
    let anti = cyclic_form(2, 3, 4, "anti-semion", &["1", "sbar"]);
    // (1,1), (s,1), (1,sbar), (s,sbar)
    let ds = semion
        .deligne_product(&anti)
        .reordered(&[0, 2, 1, 3])
        .relabeled(labels(&["1", "s", "sbar", "b"]))
        .unwrap()
        .renamed("double semion");
    embs.push(("double_semion.b", cats.len() + 2, SymmetryEmbedding::new(group(&[2]), "double semion", vec![0, 3]).unwrap()));
    cats.push(("semion", semion));
    cats.push(("antisemion", anti));
    cats.push(("double_semion", ds));

    let (d2, _) = drinfeld_double_abelian(&group(&[2]));
    let toric = d2.relabeled(labels(&["1", "e", "m", "f"])).unwrap().renamed("toric code");
    embs.push(("toric_code.e", cats.len(), SymmetryEmbedding::new(group(&[2]), "toric code", vec![0, 1]).unwrap()));
    embs.push(("toric_code.m", cats.len(), SymmetryEmbedding::new(group(&[2]), "toric code", vec![0, 2]).unwrap()));
    cats.push(("toric_code", toric));

    for (key, ekey, n) in [("double_z2", "double_z2.canonical", 2u64), ("double_z3", "double_z3.canonical", 3), ("double_z4", "double_z4.canonical", 4)] {
        let (d, emb) = drinfeld_double_abelian(&group(&[n]));
        embs.push((ekey, cats.len(), emb));
        cats.push((key, d));
    }

    let is = ising();
    let rev = is.reverse_braiding();
    cats.push(("ising", is));
    cats.push(("ising_rev", rev));
    cats.push(("fibonacci", fibonacci()));

    for (key, p) in &cats {
        assert!(p.validate().is_empty(), "{key} must validate");
        write(&dir, &format!("{key}.json"), serialize_category(p));
    }
    for (key, idx, emb) in &embs {
        let target = &cats[*idx].1;
        assert!(emb.validate(target).is_empty(), "{key} must validate");
        write(&dir, &format!("{key}.emb.json"), serialize_embedding(emb, target));
    }
}
