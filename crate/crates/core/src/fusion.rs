//! Fusion rings: simple labels, duals and multiplicities `N_{ij}^k`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error("a fusion ring needs at least the unit label")]
    Empty,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("dual table has {got} entries for {expected} labels")]
    DualLength { expected: usize, got: usize },
    #[error("label index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("fusion entry ({0}, {1}, {2}) listed twice")]
    DuplicateEntry(String, String, String),
    #[error("fusion entry ({0}, {1}, {2}) has multiplicity zero")]
    ZeroMultiplicity(String, String, String),
    #[error("Frobenius-Perron iteration did not converge")]
    NoConvergence,
}

/// One failed ring axiom, named by the labels involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingViolation {
    LeftUnit { j: String },
    RightUnit { j: String },
    DualOfUnit,
    DualNotInvolution { i: String },
    Duality { i: String, j: String },
    Associativity { i: String, j: String, k: String },
    Frobenius { i: String, j: String, k: String },
}

impl fmt::Display for RingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingViolation::LeftUnit { j } => write!(f, "unit: 1 ⊗ {j} ≠ {j}"),
            RingViolation::RightUnit { j } => write!(f, "unit: {j} ⊗ 1 ≠ {j}"),
            RingViolation::DualOfUnit => write!(f, "duality: 1* ≠ 1"),
            RingViolation::DualNotInvolution { i } => write!(f, "duality: ({i}*)* ≠ {i}"),
            RingViolation::Duality { i, j } => write!(f, "duality: N_{{{i},{j}}}^1 ≠ δ_{{{j},{i}*}}"),
            RingViolation::Associativity { i, j, k } => write!(f, "associativity fails at ({i} ⊗ {j}) ⊗ {k}"),
            RingViolation::Frobenius { i, j, k } => write!(f, "Frobenius reciprocity fails at N_{{{i},{j}}}^{k}"),
        }
    }
}

/// Grothendieck ring of a fusion category. Label 0 is the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    dual: Vec<usize>,
    /// `products[i * rank + j]` lists `(k, N_{ij}^k)` with `N > 0`, sorted by `k`.
    products: Vec<Vec<(usize, u32)>>,
}

impl FusionRing {
    /// Builds the ring from raw tables. Only structural problems are errors;
    /// ring axioms are checked by [`FusionRing::validate`].
    pub fn new(
        labels: Vec<String>,
        dual: Vec<usize>,
        entries: impl IntoIterator<Item = (usize, usize, usize, u32)>,
    ) -> Result<Self, FusionError> {
        if labels.is_empty() {
            return Err(FusionError::Empty);
        }
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(FusionError::DuplicateLabel(l.clone()));
            }
        }
        if dual.len() != n {
            return Err(FusionError::DualLength { expected: n, got: dual.len() });
        }
        if let Some(&d) = dual.iter().find(|&&d| d >= n) {
            return Err(FusionError::IndexOutOfRange(d));
        }
        let mut products = vec![Vec::new(); n * n];
        for (i, j, k, m) in entries {
            for x in [i, j, k] {
                if x >= n {
                    return Err(FusionError::IndexOutOfRange(x));
                }
            }
            let names = || (labels[i].clone(), labels[j].clone(), labels[k].clone());
            if m == 0 {
                let (a, b, c) = names();
                return Err(FusionError::ZeroMultiplicity(a, b, c));
            }
            let slot: &mut Vec<(usize, u32)> = &mut products[i * n + j];
            if slot.iter().any(|&(kk, _)| kk == k) {
                let (a, b, c) = names();
                return Err(FusionError::DuplicateEntry(a, b, c));
            }
            slot.push((k, m));
        }
        for slot in &mut products {
            slot.sort_unstable();
        }
        Ok(FusionRing {
            labels,
            index,
            dual,
            products,
        })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, FusionError> {
        self.index.get(name).copied().ok_or_else(|| FusionError::UnknownLabel(name.to_string()))
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    /// `(k, N_{ij}^k)` for the nonzero multiplicities of `i ⊗ j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.products[i * self.rank() + j]
    }

    pub fn mult(&self, i: usize, j: usize, k: usize) -> u32 {
        let p = self.product(i, j);
        p.binary_search_by_key(&k, |&(kk, _)| kk).map(|pos| p[pos].1).unwrap_or(0)
    }

    /// All nonzero `(i, j, k, N)` in label order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, u32)> + '_ {
        let n = self.rank();
        self.products
            .iter()
            .enumerate()
            .flat_map(move |(ij, p)| p.iter().map(move |&(k, m)| (ij / n, ij % n, k, m)))
    }

    /// The unique simple in `h ⊗ x` when `h ⊗ x` is simple.
    pub fn simple_product(&self, h: usize, x: usize) -> Option<usize> {
        match self.product(h, x) {
            [(k, 1)] => Some(*k),
            _ => None,
        }
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        matches!(self.product(i, self.dual[i]), [(0, 1)])
    }

    /// Exhaustive axiom check; the report is empty for a valid ring.
    pub fn validate(&self) -> Vec<RingViolation> {
        let n = self.rank();
        let name = |i: usize| self.labels[i].clone();
        let mut out = Vec::new();
        for j in 0..n {
            if self.product(0, j) != [(j, 1)] {
                out.push(RingViolation::LeftUnit { j: name(j) });
            }
            if self.product(j, 0) != [(j, 1)] {
                out.push(RingViolation::RightUnit { j: name(j) });
            }
        }
        if self.dual[0] != 0 {
            out.push(RingViolation::DualOfUnit);
        }
        for i in 0..n {
            if self.dual[self.dual[i]] != i {
                out.push(RingViolation::DualNotInvolution { i: name(i) });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let expected = u32::from(j == self.dual[i]);
                if self.mult(i, j, 0) != expected {
                    out.push(RingViolation::Duality { i: name(i), j: name(j) });
                }
            }
        }
        let mut acc = vec![0i64; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for &(m, a) in self.product(i, j) {
                        for &(l, b) in self.product(m, k) {
                            acc[l] += (a * b) as i64;
                        }
                    }
                    for &(m, a) in self.product(j, k) {
                        for &(l, b) in self.product(i, m) {
                            acc[l] -= (a * b) as i64;
                        }
                    }
                    if acc.iter().any(|&v| v != 0) {
                        out.push(RingViolation::Associativity { i: name(i), j: name(j), k: name(k) });
                        acc.iter_mut().for_each(|v| *v = 0);
                    }
                }
            }
        }
        for (i, j, k, m) in self.entries() {
            let a = self.mult(self.dual[i], k, j);
            let b = self.mult(k, self.dual[j], i);
            if a != m || b != m {
                out.push(RingViolation::Frobenius { i: name(i), j: name(j), k: name(k) });
            }
        }
        out
    }

    /// Frobenius-Perron dimensions by power iteration on `Σ_i N_i`.
    pub fn fp_dims(&self) -> Result<Vec<f64>, FusionError> {
        let n = self.rank();
        let mut v = vec![1.0f64; n];
        for _ in 0..10_000 {
            let mut w = vec![0.0f64; n];
            for (_, j, k, m) in self.entries() {
                w[k] += m as f64 * v[j];
            }
            let norm = w[0];
            if !(norm.is_finite() && norm > 0.0) {
                return Err(FusionError::NoConvergence);
            }
            w.iter_mut().for_each(|x| *x /= norm);
            let delta = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            v = w;
            if delta < 1e-13 {
                return Ok(v);
            }
        }
        Err(FusionError::NoConvergence)
    }

    /// Grothendieck ring of the Deligne product; labels are `(a,b)`, index `i * rank(other) + i'`.
    pub fn product_ring(&self, other: &FusionRing) -> FusionRing {
        let (n1, n2) = (self.rank(), other.rank());
        let labels = (0..n1)
            .flat_map(|i| (0..n2).map(move |j| (i, j)))
            .map(|(i, j)| format!("({},{})", self.labels[i], other.labels[j]))
            .collect();
        let dual = (0..n1 * n2).map(|x| self.dual[x / n2] * n2 + other.dual[x % n2]).collect();
        let mut entries = Vec::new();
        for (i, j, k, a) in self.entries() {
            for (i2, j2, k2, b) in other.entries() {
                entries.push((i * n2 + i2, j * n2 + j2, k * n2 + k2, a * b));
            }
        }
        FusionRing::new(labels, dual, entries).expect("product of well-formed rings is well-formed")
    }

    /// Restriction to a fusion-closed subset containing the unit; `subset[0]` must be 0.
    pub fn restrict(&self, subset: &[usize]) -> Result<FusionRing, FusionError> {
        let pos: HashMap<usize, usize> = subset.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let labels = subset.iter().map(|&i| self.labels[i].clone()).collect();
        let mut dual = Vec::with_capacity(subset.len());
        for &i in subset {
            let d = self.dual[i];
            dual.push(*pos.get(&d).ok_or_else(|| FusionError::UnknownLabel(self.labels[d].clone()))?);
        }
        let mut entries = Vec::new();
        for &i in subset {
            for &j in subset {
                for &(k, m) in self.product(i, j) {
                    let pk = *pos.get(&k).ok_or_else(|| FusionError::UnknownLabel(self.labels[k].clone()))?;
                    entries.push((pos[&i], pos[&j], pk, m));
                }
            }
        }
        FusionRing::new(labels, dual, entries)
    }

    /// Same ring with labels listed in `order` (a permutation of indices, unit first).
    pub fn reordered(&self, order: &[usize]) -> FusionRing {
        self.restrict(order).expect("a permutation of all labels is closed")
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<FusionRing, FusionError> {
        FusionRing::new(labels, self.dual.clone(), self.entries().collect::<Vec<_>>())
    }
}
