//! Embeddings of `Rep(G)`, presented by the character group `Ĝ`, into the
//! invertible bosons of a premodular category.

use std::fmt;

use thiserror::Error;

use crate::group::AbelianGroup;
use crate::premodular::Premodular;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("embedding lists {got} images for a group of order {expected}")]
    MapLength { expected: usize, got: usize },
    #[error("image index {0} is not a label of the target")]
    UnknownImage(usize),
    #[error("embedding into `{target}` is invalid: {}", .violations.first().map(|v| v.to_string()).unwrap_or_default())]
    Invalid { target: String, violations: Vec<EmbeddingViolation> },
    #[error("embeddings use different groups: {0} vs {1}")]
    GroupMismatch(AbelianGroup, AbelianGroup),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingViolation {
    UnitNotFixed { image: String },
    NotInvertible { e: String, image: String },
    Homomorphism { e: String, f: String },
    NotBoson { e: String, image: String },
    NotTransparent { e: String, f: String },
    NotInjective { e: String, f: String, image: String },
}

impl fmt::Display for EmbeddingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use EmbeddingViolation::*;
        match self {
            UnitNotFixed { image } => write!(f, "homomorphism: unit maps to {image}"),
            NotInvertible { e, image } => write!(f, "invertibility: image {image} of {e} is not invertible"),
            Homomorphism { e, f: g } => write!(f, "homomorphism: map({e}+{g}) ∉ map({e}) ⊗ map({g})"),
            NotBoson { e, image } => write!(f, "bosonic: θ of image {image} of {e} is nontrivial"),
            NotTransparent { e, f: g } => write!(f, "transparency: images of {e} and {g} do not centralize"),
            NotInjective { e, f: g, image } => write!(f, "injectivity: {e} and {g} both map to {image}"),
        }
    }
}

/// `φ : Ĝ → labels of the target`, indexed by element index of `Ĝ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryEmbedding {
    group: AbelianGroup,
    target: String,
    map: Vec<usize>,
}

impl SymmetryEmbedding {
    pub fn new(group: AbelianGroup, target: impl Into<String>, map: Vec<usize>) -> Result<Self, EmbeddingError> {
        if map.len() != group.order() {
            return Err(EmbeddingError::MapLength { expected: group.order(), got: map.len() });
        }
        Ok(SymmetryEmbedding { group, target: target.into(), map })
    }

    /// The embedding of the trivial group.
    pub fn trivial(target: impl Into<String>) -> Self {
        SymmetryEmbedding { group: AbelianGroup::trivial(), target: target.into(), map: vec![0] }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image_of(&self, e: usize) -> usize {
        self.map[e]
    }

    /// Sorted, deduplicated image.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn retargeted(&self, target: impl Into<String>, map: Vec<usize>) -> SymmetryEmbedding {
        assert_eq!(map.len(), self.map.len());
        SymmetryEmbedding { group: self.group.clone(), target: target.into(), map }
    }

    /// Exhaustive report; empty means valid.
    pub fn validate(&self, c: &Premodular) -> Vec<EmbeddingViolation> {
        let n = c.rank();
        if let Some(&bad) = self.map.iter().find(|&&x| x >= n) {
            return vec![EmbeddingViolation::NotInvertible { e: format!("#{bad}"), image: format!("#{bad}") }];
        }
        let g = &self.group;
        let el = |e: usize| g.element_label(e);
        let lab = |x: usize| c.label(x).to_string();
        let mut out = Vec::new();
        if self.map[0] != 0 {
            out.push(EmbeddingViolation::UnitNotFixed { image: lab(self.map[0]) });
        }
        for e in 0..g.order() {
            let x = self.map[e];
            if !c.dim(x).is_one() || !c.ring().is_invertible(x) {
                out.push(EmbeddingViolation::NotInvertible { e: el(e), image: lab(x) });
            }
        }
        for e in 0..g.order() {
            for f in 0..g.order() {
                if c.ring().mult(self.map[e], self.map[f], self.map[g.add(e, f)]) == 0 {
                    out.push(EmbeddingViolation::Homomorphism { e: el(e), f: el(f) });
                }
            }
        }
        for e in 0..g.order() {
            if !c.twist(self.map[e]).is_zero() {
                out.push(EmbeddingViolation::NotBoson { e: el(e), image: lab(self.map[e]) });
            }
        }
        if out.is_empty() {
            for e in 0..g.order() {
                for f in e..g.order() {
                    if !c.centralizes(self.map[e], self.map[f]) {
                        out.push(EmbeddingViolation::NotTransparent { e: el(e), f: el(f) });
                    }
                }
            }
        }
        for e in 0..g.order() {
            for f in e + 1..g.order() {
                if self.map[e] == self.map[f] {
                    out.push(EmbeddingViolation::NotInjective { e: el(e), f: el(f), image: lab(self.map[e]) });
                }
            }
        }
        out
    }

    pub fn check(&self, c: &Premodular) -> Result<(), EmbeddingError> {
        let violations = self.validate(c);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(EmbeddingError::Invalid { target: c.name().to_string(), violations })
        }
    }

    /// Whether the image lies in the Müger center.
    pub fn is_central(&self, c: &Premodular) -> bool {
        let image = self.image();
        (0..c.rank()).all(|x| image.iter().all(|&e| c.centralizes(e, x)))
    }

    /// The same embedding seen inside the full subcategory on `labels` (sorted input indices).
    pub fn restricted(&self, target: impl Into<String>, labels: &[usize]) -> Result<SymmetryEmbedding, EmbeddingError> {
        let map = self
            .map
            .iter()
            .map(|&x| labels.binary_search(&x).map_err(|_| EmbeddingError::UnknownImage(x)))
            .collect::<Result<_, _>>()?;
        Ok(self.retargeted(target, map))
    }

    pub fn same_group(&self, other: &SymmetryEmbedding) -> Result<(), EmbeddingError> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(EmbeddingError::GroupMismatch(self.group.clone(), other.group.clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Cyclo;
    use crate::premodular::tests::{ising, rep_z2, toric};

    fn z2() -> AbelianGroup {
        AbelianGroup::new(&[2]).unwrap()
    }

    #[test]
    fn toric_embeddings() {
        let tc = toric();
        let onto_e = SymmetryEmbedding::new(z2(), "toric", vec![0, 1]).unwrap();
        assert!(onto_e.validate(&tc).is_empty());
        assert!(!onto_e.is_central(&tc));
        let onto_f = SymmetryEmbedding::new(z2(), "toric", vec![0, 3]).unwrap();
        let report = onto_f.validate(&tc);
        assert!(report.iter().any(|v| matches!(v, EmbeddingViolation::NotBoson { .. })));
    }

    #[test]
    fn ising_has_no_bosonic_z2() {
        let emb = SymmetryEmbedding::new(z2(), "ising", vec![0, 1]).unwrap();
        assert!(matches!(emb.validate(&ising())[..], [EmbeddingViolation::NotBoson { .. }]));
        let sigma = SymmetryEmbedding::new(z2(), "ising", vec![0, 2]).unwrap();
        assert!(sigma.validate(&ising()).iter().any(|v| matches!(v, EmbeddingViolation::NotInvertible { .. })));
    }

    #[test]
    fn identity_embedding_is_central() {
        let r = rep_z2();
        let emb = SymmetryEmbedding::new(z2(), "rep_z2", vec![0, 1]).unwrap();
        assert!(emb.validate(&r).is_empty());
        assert!(emb.is_central(&r));
        assert!(matches!(SymmetryEmbedding::new(z2(), "x", vec![0]), Err(EmbeddingError::MapLength { .. })));
        let dup = SymmetryEmbedding::new(z2(), "rep_z2", vec![0, 0]).unwrap();
        assert!(matches!(dup.validate(&r)[..], [EmbeddingViolation::NotInjective { .. }]));
    }

    #[test]
    fn monodromies_are_roots_of_unity_of_the_right_order() {
        let tc = toric();
        let emb = SymmetryEmbedding::new(z2(), "toric", vec![0, 2]).unwrap();
        for e in 0..2 {
            let order = emb.group().element_order(e) as u32;
            for x in 0..tc.rank() {
                assert_eq!(tc.monodromy_scalar(emb.image_of(e), x).unwrap().pow(order), Cyclo::one());
            }
        }
    }
}
