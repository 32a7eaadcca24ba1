//! Metric groups `(A, q)`: pointed premodular categories and their exact
//! condensation `H ↦ H^⊥/H`.

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::exactnum::{Cyclo, Turn};
use crate::fusion::FusionRing;
use crate::group::{AbelianGroup, GroupError};
use crate::premodular::Premodular;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("quadratic form lists {got} values for a group of order {expected}")]
    ValueCount { expected: usize, got: usize },
    #[error("q(0) = {0}, expected 0")]
    NonzeroAtOrigin(Turn),
    #[error("q is not even: q({a}) ≠ q(-{a})")]
    NotEven { a: String },
    #[error("bilinear form is not additive at ({a}, {b}; {c})")]
    NotBiadditive { a: String, b: String, c: String },
    #[error("element index {0} is outside the group")]
    OutOfRange(usize),
    #[error("subgroup is not isotropic: q({0}) ≠ 0")]
    NotIsotropic(String),
}

/// A finite abelian group with a quadratic form valued in turns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricGroup {
    group: AbelianGroup,
    q: Vec<Turn>,
}

impl MetricGroup {
    /// `q` is listed on every element in index order; validity is checked exhaustively.
    pub fn new(group: AbelianGroup, q: Vec<Turn>) -> Result<Self, MetricError> {
        if q.len() != group.order() {
            return Err(MetricError::ValueCount { expected: group.order(), got: q.len() });
        }
        let m = MetricGroup { group, q };
        m.check()?;
        Ok(m)
    }

    pub fn from_fn(factors: &[u64], q: impl Fn(&[u64]) -> Turn) -> Result<Self, MetricError> {
        let group = AbelianGroup::new(factors)?;
        let values = (0..group.order()).map(|i| q(&group.element(i))).collect();
        MetricGroup::new(group, values)
    }

    fn check(&self) -> Result<(), MetricError> {
        let g = &self.group;
        if !self.q[0].is_zero() {
            return Err(MetricError::NonzeroAtOrigin(self.q[0]));
        }
        for a in 0..g.order() {
            if self.q[g.neg(a)] != self.q[a] {
                return Err(MetricError::NotEven { a: g.element_label(a) });
            }
        }
        // additivity in the first slot along unit vectors covers every pair, by induction
        let units: Vec<usize> = (0..g.rank())
            .map(|i| {
                let mut v = vec![0; g.rank()];
                v[i] = 1;
                g.index_of(&v).expect("unit vector")
            })
            .collect();
        for a in 0..g.order() {
            for &u in &units {
                let au = g.add(a, u);
                for c in 0..g.order() {
                    if self.bilinear(au, c) != self.bilinear(a, c) + self.bilinear(u, c) {
                        return Err(MetricError::NotBiadditive {
                            a: g.element_label(a),
                            b: g.element_label(u),
                            c: g.element_label(c),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn q(&self, a: usize) -> Turn {
        self.q[a]
    }

    pub fn values(&self) -> &[Turn] {
        &self.q
    }

    /// `B(a,b) = q(a+b) − q(a) − q(b)`.
    pub fn bilinear(&self, a: usize, b: usize) -> Turn {
        self.q[self.group.add(a, b)] - self.q[a] - self.q[b]
    }

    /// Whether `B` is a perfect pairing.
    pub fn is_nondegenerate(&self) -> bool {
        (1..self.order()).all(|a| (0..self.order()).any(|b| !self.bilinear(a, b).is_zero()))
    }

    /// Direct sum with the orthogonal sum of the forms.
    pub fn direct_sum(&self, other: &MetricGroup) -> MetricGroup {
        let group = self.group.direct_sum(&other.group);
        let m = other.order();
        let q = (0..group.order()).map(|x| self.q[x / m] + other.q[x % m]).collect();
        MetricGroup { group, q }
    }

    /// Labels are element tuples, fusion is the group law, all dimensions are 1.
    pub fn to_premodular(&self, name: impl Into<String>) -> Premodular {
        let g = &self.group;
        let n = g.order();
        let labels = (0..n).map(|i| g.element_label(i)).collect();
        let dual = (0..n).map(|i| g.neg(i)).collect();
        let entries: Vec<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b, g.add(a, b), 1))).collect();
        let ring = FusionRing::new(labels, dual, entries).expect("group law gives a well-formed ring");
        let p = Premodular::trusted(name.into(), ring, vec![Cyclo::one(); n], self.q.clone());
        debug_assert!((0..n).all(|a| (0..n).all(|b| *p.smatrix().get(a, b) == (-self.bilinear(a, b)).root())));
        p
    }

    fn check_indices(&self, gens: &[usize]) -> Result<(), MetricError> {
        match gens.iter().find(|&&h| h >= self.order()) {
            Some(&h) => Err(MetricError::OutOfRange(h)),
            None => Ok(()),
        }
    }

    /// Sorted members of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Result<Vec<usize>, MetricError> {
        self.check_indices(gens)?;
        Ok(self.group.closure(gens))
    }

    /// `H^⊥ = {a : B(a,h) = 0 for all h ∈ H}`.
    pub fn orthogonal_complement(&self, gens: &[usize]) -> Result<Vec<usize>, MetricError> {
        self.check_indices(gens)?;
        Ok((0..self.order()).filter(|&a| gens.iter().all(|&h| self.bilinear(a, h).is_zero())).collect())
    }

    pub fn is_isotropic(&self, gens: &[usize]) -> Result<bool, MetricError> {
        Ok(self.subgroup(gens)?.iter().all(|&h| self.q[h].is_zero()))
    }

    /// `(H^⊥/H, q̄)` with the quotient presented by a cyclic decomposition.
    pub fn condense(&self, gens: &[usize]) -> Result<MetricGroup, MetricError> {
        let h = self.subgroup(gens)?;
        if let Some(&bad) = h.iter().find(|&&x| !self.q[x].is_zero()) {
            return Err(MetricError::NotIsotropic(self.group.element_label(bad)));
        }
        let perp = self.orthogonal_complement(gens)?;
        let g = &self.group;
        for &a in &perp {
            let qa = self.q[a];
            assert!(h.iter().all(|&x| self.q[g.add(a, x)] == qa), "q̄ must be constant on cosets of H");
        }
        let basis = quotient_basis(g, &perp, &h);
        let factors: Vec<u64> = basis.iter().map(|&(_, m)| m).collect();
        let quotient = AbelianGroup::new(&factors)?;
        let q = (0..quotient.order())
            .map(|i| {
                let coords = quotient.element(i);
                let lift = coords
                    .iter()
                    .zip(&basis)
                    .fold(0, |acc, (&k, &(gen, _))| g.add(acc, g.scale(gen, k)));
                self.q[lift]
            })
            .collect();
        let out = MetricGroup { group: quotient, q };
        assert_eq!(out.order() * h.len(), perp.len(), "quotient order must be |H^⊥|/|H|");
        Ok(out)
    }
}

/// Lifted generators `(g, order)` of `K/H` with `K/H = ⊕ ⟨g⟩`, orders ascending and dividing.
fn quotient_basis(g: &AbelianGroup, k: &[usize], h: &[usize]) -> Vec<(usize, u64)> {
    let in_h = membership(g.order(), h);
    let mut span = h.to_vec();
    let mut basis = Vec::new();
    loop {
        let in_span = membership(g.order(), &span);
        let best = k
            .iter()
            .map(|&a| (a, relative_order(g, a, &in_span)))
            .max_by_key(|&(a, m)| (m, std::cmp::Reverse(a)));
        let Some((best, m)) = best else { break };
        if m == 1 {
            break;
        }
        let lift = span
            .iter()
            .map(|&s| g.add(best, s))
            .filter(|&x| relative_order(g, x, &in_h) == m)
            .min()
            .expect("a maximal-order coset contains a lift of the same order");
        basis.push((lift, m));
        let mut gens = span.clone();
        gens.push(lift);
        span = g.closure(&gens);
    }
    basis.reverse();
    basis
}

/// Least `m ≥ 1` with `m·a` in the marked subgroup.
fn relative_order(g: &AbelianGroup, a: usize, inside: &[bool]) -> u64 {
    let mut m = 1;
    let mut x = a;
    while !inside[x] {
        x = g.add(x, a);
        m += 1;
    }
    m
}

fn membership(n: usize, members: &[usize]) -> Vec<bool> {
    let mut v = vec![false; n];
    for &m in members {
        v[m] = true;
    }
    v
}

/// The hyperbolic form `q(x, y) = xy/m` on `Z/m ⊕ Z/m`.
pub fn hyperbolic(m: u64) -> MetricGroup {
    MetricGroup::from_fn(&[m, m], |v| Turn::new((v[0] * v[1]) as i64, m as i64).expect("m > 0"))
        .expect("hyperbolic form is valid")
}

/// A random metric group of order at most `max_order`, possibly degenerate.
pub fn random_metric_group<R: Rng + ?Sized>(rng: &mut R, max_order: u64) -> MetricGroup {
    let mut factors = Vec::new();
    let mut order = 1;
    for _ in 0..rng.gen_range(1..=3) {
        let choices: Vec<u64> = (2..=8).filter(|&n| order * n <= max_order).collect();
        let Some(&n) = choices.choose(rng) else { break };
        factors.push(n);
        order *= n;
    }
    let r = factors.len();
    let diag: Vec<i64> = factors
        .iter()
        .map(|&n| {
            let n = n as i64;
            let c = rng.gen_range(0..2 * n);
            if n % 2 == 1 && c % 2 == 1 {
                (c + 1) % (2 * n)
            } else {
                c
            }
        })
        .collect();
    let mut cross = vec![vec![0i64; r]; r];
    for (i, row) in cross.iter_mut().enumerate() {
        for (j, b) in row.iter_mut().enumerate().skip(i + 1) {
            let g = num_integer::gcd(factors[i], factors[j]) as i64;
            *b = rng.gen_range(0..g);
        }
    }
    let f = factors.clone();
    MetricGroup::from_fn(&factors, move |x| {
        let x: Vec<i64> = x.iter().map(|&v| v as i64).collect();
        let mut t = Turn::ZERO;
        for i in 0..r {
            let n = f[i] as i64;
            t = t + Turn::new(diag[i] * x[i] * x[i], 2 * n).expect("positive");
            for j in i + 1..r {
                let g = num_integer::gcd(f[i], f[j]) as i64;
                t = t + Turn::new(cross[i][j] * x[i] * x[j], g).expect("positive");
            }
        }
        t
    })
    .expect("random forms are well-defined by construction")
}

/// A random nondegenerate metric group of order at most `max_order`; half of the
/// draws carry a hyperbolic summand so that nontrivial isotropic subgroups are common.
pub fn random_nondegenerate<R: Rng + ?Sized>(rng: &mut R, max_order: u64) -> MetricGroup {
    loop {
        let hyper = if rng.gen_bool(0.5) {
            let m = rng.gen_range(2..=4u64);
            (m * m <= max_order).then(|| hyperbolic(m))
        } else {
            None
        };
        let budget = max_order / hyper.as_ref().map_or(1, |h| h.order() as u64);
        let base = if budget >= 2 && rng.gen_bool(0.8) {
            random_metric_group(rng, budget)
        } else {
            MetricGroup::from_fn(&[], |_| Turn::ZERO).expect("trivial group")
        };
        let m = match hyper {
            Some(h) => base.direct_sum(&h),
            None => base,
        };
        if m.is_nondegenerate() {
            return m;
        }
    }
}

/// Generators of a random isotropic subgroup, built by greedy extension.
pub fn random_isotropic<R: Rng + ?Sized>(rng: &mut R, m: &MetricGroup) -> Vec<usize> {
    let mut candidates: Vec<usize> = (1..m.order()).filter(|&a| m.q(a).is_zero()).collect();
    candidates.shuffle(rng);
    let mut gens = Vec::new();
    for a in candidates {
        if rng.gen_bool(0.4) {
            continue;
        }
        if gens.iter().all(|&h| m.bilinear(a, h).is_zero()) {
            gens.push(a);
        }
    }
    gens
}
