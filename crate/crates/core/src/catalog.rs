//! Built-in fixtures, validated on first access.

use std::sync::OnceLock;

use crate::embedding::SymmetryEmbedding;
use crate::io::{parse_category, parse_embedding};
use crate::premodular::Premodular;

macro_rules! fixture {
    ($file:literal) => {
        ($file, include_str!(concat!("../fixtures/", $file, ".json")))
    };
}

/// `(key, file contents)` of every category fixture.
pub const CATEGORY_FILES: &[(&str, &str)] = &[
    fixture!("vec"),
    fixture!("rep_z2"),
    fixture!("rep_z4"),
    fixture!("semion"),
    fixture!("antisemion"),
    fixture!("double_semion"),
    fixture!("toric_code"),
    fixture!("double_z2"),
    fixture!("double_z3"),
    fixture!("double_z4"),
    fixture!("ising"),
    fixture!("ising_rev"),
    fixture!("fibonacci"),
];

/// `(key, category key, file contents)` of every embedding fixture.
pub const EMBEDDING_FILES: &[(&str, &str, &str)] = &[
    ("rep_z2.id", "rep_z2", include_str!("../fixtures/rep_z2.id.emb.json")),
    ("rep_z4.id", "rep_z4", include_str!("../fixtures/rep_z4.id.emb.json")),
    ("double_semion.b", "double_semion", include_str!("../fixtures/double_semion.b.emb.json")),
    ("toric_code.e", "toric_code", include_str!("../fixtures/toric_code.e.emb.json")),
    ("toric_code.m", "toric_code", include_str!("../fixtures/toric_code.m.emb.json")),
    ("double_z2.canonical", "double_z2", include_str!("../fixtures/double_z2.canonical.emb.json")),
    ("double_z3.canonical", "double_z3", include_str!("../fixtures/double_z3.canonical.emb.json")),
    ("double_z4.canonical", "double_z4", include_str!("../fixtures/double_z4.canonical.emb.json")),
];

#[derive(Debug)]
pub struct Fixture {
    pub key: &'static str,
    pub category: Premodular,
    pub embeddings: Vec<(&'static str, SymmetryEmbedding)>,
}

/// Every fixture, parsed and validated once; an invalid fixture is a build fault.
pub fn catalog() -> &'static [Fixture] {
    static CATALOG: OnceLock<Vec<Fixture>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        CATEGORY_FILES
            .iter()
            .map(|&(key, text)| {
                let category = parse_category(text).unwrap_or_else(|e| panic!("fixture `{key}` is invalid: {e}"));
                let embeddings = EMBEDDING_FILES
                    .iter()
                    .filter(|&&(_, target, _)| target == key)
                    .map(|&(ekey, _, etext)| {
                        let emb = parse_embedding(etext, &category).unwrap_or_else(|e| panic!("fixture `{ekey}` is invalid: {e}"));
                        (ekey, emb)
                    })
                    .collect();
                Fixture { key, category, embeddings }
            })
            .collect()
    })
}

pub fn fixture(key: &str) -> Option<&'static Fixture> {
    catalog().iter().find(|f| f.key == key)
}

/// Fixture category by key; panics on an unknown key.
pub fn category(key: &str) -> &'static Premodular {
    &fixture(key).unwrap_or_else(|| panic!("no fixture `{key}`")).category
}

/// Fixture embedding by key, such as `toric_code.e`; panics on an unknown key.
pub fn embedding(key: &str) -> &'static SymmetryEmbedding {
    catalog()
        .iter()
        .flat_map(|f| &f.embeddings)
        .find(|(k, _)| *k == key)
        .map(|(_, e)| e)
        .unwrap_or_else(|| panic!("no embedding fixture `{key}`"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::drinfeld_double_abelian;
    use crate::equiv::find_equivalence;
    use crate::exactnum::Cyclo;
    use crate::group::AbelianGroup;
    use crate::io::{serialize_category, serialize_embedding};

    #[test]
    fn all_fixtures_load_and_round_trip() {
        assert_eq!(catalog().len(), 13);
        for f in catalog() {
            assert!(f.category.validate().is_empty());
            let text = serialize_category(&f.category);
            assert_eq!(parse_category(&text).unwrap(), f.category, "{}", f.key);
            for (_, emb) in &f.embeddings {
                assert_eq!(&parse_embedding(&serialize_embedding(emb, &f.category), &f.category).unwrap(), emb);
            }
        }
    }

    #[test]
    fn toric_has_two_embeddings() {
        let f = fixture("toric_code").unwrap();
        let images: Vec<&str> = f.embeddings.iter().map(|(_, e)| f.category.label(e.image_of(1))).collect();
        assert_eq!(images, ["e", "m"]);
    }

    #[test]
    fn toric_matches_double_of_z2() {
        let (d, _) = drinfeld_double_abelian(&AbelianGroup::new(&[2]).unwrap());
        assert!(find_equivalence(category("toric_code"), &d, None).unwrap().is_some());
        let expected = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
        let s = category("toric_code").smatrix();
        for (i, row) in expected.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(s.get(i, j), &Cyclo::from_int(v));
            }
        }
    }

    #[test]
    fn fibonacci_and_ising_have_no_z2_boson() {
        for key in ["fibonacci", "ising", "ising_rev"] {
            let c = category(key);
            assert!(fixture(key).unwrap().embeddings.is_empty());
            let bosons = (1..c.rank()).filter(|&x| c.dim(x).is_one() && c.twist(x).is_zero()).count();
            assert_eq!(bosons, 0, "{key}");
        }
    }
}
