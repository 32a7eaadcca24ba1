//! Drinfeld doubles `Z(Rep G)` and representation categories `Rep G` for finite abelian `G`.

use crate::embedding::SymmetryEmbedding;
use crate::exactnum::Turn;
use crate::group::{format_tuple, AbelianGroup};
use crate::pointed::MetricGroup;
use crate::premodular::Premodular;

/// `⟨χ, g⟩ = Σ χ_i g_i / n_i`.
pub fn pairing(group: &AbelianGroup, chi: &[u64], g: &[u64]) -> Turn {
    group
        .factors()
        .iter()
        .zip(chi.iter().zip(g))
        .map(|(&n, (&c, &x))| Turn::new((c * x % n) as i64, n as i64).expect("factor is positive"))
        .sum()
}

/// The metric group `(G ⊕ Ĝ, q(g, χ) = ⟨χ, g⟩)`.
pub fn double_metric_group(group: &AbelianGroup) -> MetricGroup {
    let r = group.rank();
    let factors: Vec<u64> = group.factors().iter().chain(group.factors()).copied().collect();
    MetricGroup::from_fn(&factors, |v| pairing(group, &v[r..], &v[..r])).expect("the pairing form is valid")
}

/// Labels `(g|χ)`; the canonical embedding sends `χ ↦ (0|χ)`.
pub fn drinfeld_double_abelian(group: &AbelianGroup) -> (Premodular, SymmetryEmbedding) {
    let name = format!("D({group})");
    let m = double_metric_group(group);
    let p = m.to_premodular(&name);
    let r = group.rank();
    let labels = (0..m.order())
        .map(|i| {
            let v = m.group().element(i);
            format!("({}|{})", format_tuple(&v[..r]), format_tuple(&v[r..]))
        })
        .collect();
    let ring = p.ring().with_labels(labels).expect("labels are distinct");
    let p = Premodular::trusted(name.clone(), ring, p.dims().to_vec(), p.twists().to_vec());
    // (0, χ) has index χ because the G coordinates lead
    let emb = SymmetryEmbedding::new(group.clone(), name, (0..group.order()).collect()).expect("map is total");
    (p, emb)
}

/// `Rep G` as the pointed category on `Ĝ` with trivial form, with its identity embedding.
pub fn rep_abelian(group: &AbelianGroup) -> (Premodular, SymmetryEmbedding) {
    let name = format!("Rep({group})");
    let m = MetricGroup::new(group.clone(), vec![Turn::ZERO; group.order()]).expect("zero form is valid");
    let p = m.to_premodular(&name);
    let emb = SymmetryEmbedding::new(group.clone(), name, (0..group.order()).collect()).expect("map is total");
    (p, emb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Cyclo;

    fn g(f: &[u64]) -> AbelianGroup {
        AbelianGroup::new(f).unwrap()
    }

    #[test]
    fn double_of_z2_is_toric() {
        let (d, emb) = drinfeld_double_abelian(&g(&[2]));
        let mut tw = d.twists().to_vec();
        tw.sort();
        assert_eq!(tw, vec![Turn::ZERO, Turn::ZERO, Turn::ZERO, Turn::new(1, 2).unwrap()]);
        assert_eq!(d.labels(), &["(0|0)", "(0|1)", "(1|0)", "(1|1)"]);
        assert!(emb.validate(&d).is_empty());
        assert!(d.validate().is_empty());
        assert!(d.is_nondegenerate().unwrap());
    }

    #[test]
    fn double_of_z3() {
        let (d, emb) = drinfeld_double_abelian(&g(&[3]));
        assert_eq!(d.rank(), 9);
        let mut counts = [0; 3];
        for t in d.twists() {
            counts[(t.numer() * 3 / t.denom()) as usize] += 1;
        }
        // gk mod 3 over Z/3 x Z/3 vanishes five times
        assert_eq!(counts, [5, 2, 2]);
        assert_eq!(d.gauss_sum(), Cyclo::from_int(3));
        assert_eq!(d.global_dim(), Cyclo::from_int(9));
        assert!(emb.validate(&d).is_empty());
        assert!(d.is_nondegenerate().unwrap());
    }

    #[test]
    fn trivial_group() {
        let (d, _) = drinfeld_double_abelian(&AbelianGroup::trivial());
        assert_eq!(d.rank(), 1);
        let (r, emb) = rep_abelian(&AbelianGroup::trivial());
        assert_eq!(r.rank(), 1);
        assert_eq!(emb.map(), &[0]);
    }

    #[test]
    fn rep_is_symmetric() {
        for f in [&[2][..], &[4], &[2, 2]] {
            let (r, emb) = rep_abelian(&g(f));
            assert!(r.is_symmetric());
            assert!(emb.validate(&r).is_empty());
            assert!(emb.is_central(&r));
        }
        let (r4, _) = rep_abelian(&g(&[4]));
        assert_eq!(r4.muger_center().len(), 4);
        assert!(r4.twists().iter().all(|t| t.is_zero()));
    }

    #[test]
    fn centralizer_of_canonical_image_is_the_character_group() {
        for f in [&[2][..], &[3], &[4], &[2, 2]] {
            let grp = g(f);
            let (d, emb) = drinfeld_double_abelian(&grp);
            let cent = d.centralizer(&emb.image()).unwrap();
            // (g|χ) centralizes every (0|χ') iff g = 0
            let expected: Vec<usize> = (0..grp.order()).collect();
            assert_eq!(cent, expected);
        }
    }
}
