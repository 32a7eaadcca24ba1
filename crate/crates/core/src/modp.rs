//! Reduction of cyclotomic integers into prime fields `F_p` with `p ≡ 1 (mod N)`.
//!
//! The map `ζ_N ↦ h`, `h` a primitive `N`-th root of unity mod `p`, is a ring
//! homomorphism on elements whose denominators are prime to `p`, so a nonzero
//! image certifies a nonzero value exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::exactnum::Cyclo;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime `p ≡ 1 (mod N)` together with a primitive `N`-th root of unity.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PrimeImage {
    pub p: u64,
    order: u64,
    root: u64,
}

impl PrimeImage {
    /// The `skip`-th suitable prime below `2^62`, counting downwards.
    pub fn new(order: u64, skip: usize) -> PrimeImage {
        let top = (1u64 << 62) / order;
        let mut found = 0;
        let mut k = top;
        loop {
            let p = k * order + 1;
            if is_prime(p) {
                if found == skip {
                    let root = Self::primitive_root(p, order);
                    return PrimeImage { p, order, root };
                }
                found += 1;
            }
            k -= 1;
        }
    }

    fn primitive_root(p: u64, order: u64) -> u64 {
        let divisors = prime_divisors(order);
        for g in 2.. {
            let h = pow_mod(g, (p - 1) / order, p);
            if divisors.iter().all(|&r| pow_mod(h, order / r, p) != 1) {
                return h;
            }
        }
        unreachable!()
    }

    fn residue(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced below p")
    }

    /// Image of `c`, or `None` if a denominator vanishes mod `p`.
    pub fn image(&self, c: &Cyclo) -> Option<u64> {
        assert_eq!(self.order % c.order(), 0, "element order must divide the image order");
        let step = self.order / c.order();
        let mut acc = 0u64;
        for (&k, r) in c.coefficients() {
            let den = self.residue(r.denom());
            if den.is_zero() {
                return None;
            }
            let num = self.residue(r.numer());
            let coeff = mul_mod(num, pow_mod(den, self.p - 2, self.p), self.p);
            let z = pow_mod(self.root, k * step, self.p);
            acc = (acc + mul_mod(coeff, z, self.p)) % self.p;
        }
        Some(acc)
    }

    /// Whether a square matrix over `F_p` has full rank.
    pub fn full_rank(&self, mut m: Vec<Vec<u64>>) -> bool {
        let n = m.len();
        let p = self.p;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
                return false;
            };
            m.swap(col, piv);
            let inv = pow_mod(m[col][col], p - 2, p);
            for r in col + 1..n {
                if m[r][col] == 0 {
                    continue;
                }
                let f = mul_mod(m[r][col], inv, p);
                for c in col..n {
                    let sub = mul_mod(f, m[col][c], p);
                    m[r][c] = (m[r][c] + p - sub) % p;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_roots() {
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007u64 * 3));
        let img = PrimeImage::new(16, 0);
        assert_eq!(img.p % 16, 1);
        assert!(is_prime(img.p));
        assert_eq!(pow_mod(img.root, 16, img.p), 1);
        assert_ne!(pow_mod(img.root, 8, img.p), 1);
    }

    #[test]
    fn images_are_ring_homomorphic() {
        let img = PrimeImage::new(24, 1);
        let p = img.p;
        let a: Cyclo = "z8 + 1/3*z3".parse().unwrap();
        let b: Cyclo = "2 - z24^5".parse().unwrap();
        let (ia, ib) = (img.image(&a).unwrap(), img.image(&b).unwrap());
        assert_eq!(img.image(&(&a * &b)).unwrap(), mul_mod(ia, ib, p));
        assert_eq!(img.image(&(&a + &b)).unwrap(), (ia + ib) % p);
        assert_eq!(img.image(&Cyclo::zero()).unwrap(), 0);
    }

    #[test]
    fn rank_over_prime_field() {
        let img = PrimeImage::new(1, 0);
        assert!(img.full_rank(vec![vec![1, 1], vec![1, img.p - 1]]));
        assert!(!img.full_rank(vec![vec![1, 1], vec![1, 1]]));
    }
}
