//! Finite abelian groups `⊕ Z/n_i` with elements indexed in mixed radix.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic factor must be positive, got {0}")]
    ZeroFactor(u64),
    #[error("group of order {0} exceeds the supported size")]
    TooLarge(u128),
    #[error("element {0:?} does not belong to {1}")]
    NotAnElement(Vec<u64>, AbelianGroup),
}

const MAX_ORDER: u128 = 1 << 20;

/// `⊕ Z/n_i`. Trivial factors are dropped, so the empty list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(factors: &[u64]) -> Result<Self, GroupError> {
        if let Some(&z) = factors.iter().find(|&&n| n == 0) {
            return Err(GroupError::ZeroFactor(z));
        }
        let factors: Vec<u64> = factors.iter().copied().filter(|&n| n > 1).collect();
        let order: u128 = factors.iter().map(|&n| n as u128).product();
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn element(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for (slot, &n) in out.iter_mut().zip(&self.factors).rev() {
            *slot = idx as u64 % n;
            idx /= n as usize;
        }
        out
    }

    /// Index of a coordinate tuple; coordinates are reduced modulo their factor.
    pub fn index_of(&self, coords: &[u64]) -> Result<usize, GroupError> {
        if coords.len() != self.factors.len() {
            return Err(GroupError::NotAnElement(coords.to_vec(), self.clone()));
        }
        Ok(self.index_reduced(coords))
    }

    /// Strict lookup: every coordinate must already lie in `[0, n_i)`.
    pub fn index_strict(&self, coords: &[u64]) -> Result<usize, GroupError> {
        if coords.len() != self.factors.len() || coords.iter().zip(&self.factors).any(|(&c, &n)| c >= n) {
            return Err(GroupError::NotAnElement(coords.to_vec(), self.clone()));
        }
        Ok(self.index_reduced(coords))
    }

    fn index_reduced(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + (c % n) as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.element(a), self.element(b));
        let sum: Vec<u64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
        self.index_reduced(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let x = self.element(a);
        let neg: Vec<u64> = x.iter().zip(&self.factors).map(|(&c, &n)| (n - c) % n).collect();
        self.index_reduced(&neg)
    }

    pub fn scale(&self, a: usize, k: u64) -> usize {
        let x = self.element(a);
        let v: Vec<u64> = x.iter().zip(&self.factors).map(|(&c, &n)| (c * (k % n)) % n).collect();
        self.index_reduced(&v)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let x = self.element(a);
        x.iter()
            .zip(&self.factors)
            .map(|(&c, &n)| n / num_integer::gcd(c, n))
            .fold(1, num_integer::lcm)
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut members = vec![0];
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    pub fn element_label(&self, idx: usize) -> String {
        format_tuple(&self.element(idx))
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        AbelianGroup { factors }
    }
}

/// `0` for the empty tuple, `a` for one coordinate, `(a,b,…)` otherwise.
pub fn format_tuple(coords: &[u64]) -> String {
    match coords {
        [] => "0".to_string(),
        [a] => a.to_string(),
        _ => {
            let inner: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
            format!("({})", inner.join(","))
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z/{n}")).collect();
        f.write_str(&parts.join(" x "))
    }
}
