//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! A [`Cyclo`] is stored in the smallest cyclotomic field that contains it,
//! on a fixed basis: for `n = ∏ p^a` the field is the tensor product of the
//! prime-power fields `Q(ζ_{p^a})`, each with its power basis
//! `1, ζ, …, ζ^{φ(p^a)-1}`. A basis element is written as a single power
//! `ζ_n^k`, so the coefficient map is keyed by exponents `k ∈ [0, n)`.
//!
//! With this basis the subfield `Q(ζ_{n/p})` is exactly the span of the basis
//! elements whose `p`-component is divisible by `p` (or zero, when `p ∥ n`),
//! which makes minimal-field reduction a support test. Together with the
//! convention `n ≢ 2 (mod 4)` the representation is canonical, so the derived
//! `Eq`, `Ord` and `Hash` are the field equality and a total order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("root of unity with zero denominator")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{input}` at byte {pos}: {msg}")]
pub struct ParseError {
    pub input: String,
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Copy)]
struct PrimePower {
    p: u64,
    a: u32,
    q: u64,
    phi: u64,
    /// `n / q`
    cof: u64,
    /// `(n / q)^{-1} mod q`
    inv: u64,
}

/// Factorisation data for one normalised order.
#[derive(Debug, Clone)]
struct Field {
    n: u64,
    parts: Vec<PrimePower>,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut a = 0;
            while n.is_multiple_of(p) {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (g, x, _) = ext_gcd(a as i128 % m as i128, m as i128);
    debug_assert_eq!(g, 1);
    x.rem_euclid(m as i128) as u64
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl Field {
    fn new(n: u64) -> Self {
        debug_assert!(n >= 1 && n % 4 != 2);
        let parts = factorize(n)
            .into_iter()
            .map(|(p, a)| {
                let q = p.pow(a);
                let cof = n / q;
                PrimePower {
                    p,
                    a,
                    q,
                    phi: (p - 1) * p.pow(a - 1),
                    cof,
                    inv: mod_inverse(cof % q, q),
                }
            })
            .collect();
        Field { n, parts }
    }

    fn component(&self, part: &PrimePower, k: u64) -> u64 {
        ((k as u128 * part.inv as u128) % part.q as u128) as u64
    }

    /// Writes `ζ_n^k` on the standard basis as a signed sum of basis powers.
    fn expand(&self, k: u64, out: &mut Vec<(u64, i8)>) {
        out.clear();
        out.push((0, 1));
        let mut next = Vec::new();
        for part in &self.parts {
            let c = self.component(part, k);
            next.clear();
            if c < part.phi {
                for &(acc, s) in out.iter() {
                    next.push(((acc + c * part.cof) % self.n, s));
                }
            } else {
                let step = part.q / part.p;
                let base = c - part.phi;
                for &(acc, s) in out.iter() {
                    for j in 0..part.p - 1 {
                        let e = base + j * step;
                        next.push(((acc + e * part.cof) % self.n, -s));
                    }
                }
            }
            std::mem::swap(out, &mut next);
        }
    }

    fn is_standard(&self, k: u64) -> bool {
        self.parts.iter().all(|part| self.component(part, k) < part.phi)
    }

    fn basis(&self) -> Vec<u64> {
        (0..self.n).filter(|&k| self.is_standard(k)).collect()
    }
}

/// An element of a cyclotomic field, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclo {
    order: u64,
    coeffs: BTreeMap<u64, BigRational>,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo {
            order: 1,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Cyclo::from_rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Cyclo::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Cyclo::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        Cyclo { order: 1, coeffs }
    }

    /// `ζ_n^k` for any `n ≥ 1`.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        assert!(n >= 1, "cyclotomic order must be positive");
        let k = k.rem_euclid(n as i64) as u64;
        Self::monomial(n, k, BigRational::one())
    }

    /// `e^{2πi·p/q}`; the turn is reduced modulo 1.
    pub fn root_of_unity(p: i64, q: i64) -> Result<Self, ArithError> {
        if q == 0 {
            return Err(ArithError::ZeroDenominator);
        }
        let r = Ratio::new(p, q);
        let (p, q) = (*r.numer(), *r.denom());
        Ok(Self::zeta_pow(q as u64, p))
    }

    fn monomial(n: u64, k: u64, c: BigRational) -> Self {
        if c.is_zero() {
            return Cyclo::zero();
        }
        let (m, k, c) = if n % 4 == 2 {
            // ζ_{2m} = -ζ_m^{(m+1)/2} for odd m
            let m = n / 2;
            let half = m.div_ceil(2);
            let e = ((k as u128 * half as u128) % m as u128) as u64;
            let c = if k % 2 == 1 { -c } else { c };
            (m, e, c)
        } else {
            (n, k, c)
        };
        let field = Field::new(m);
        let mut buf = Vec::new();
        field.expand(k, &mut buf);
        let mut coeffs = BTreeMap::new();
        for (e, s) in buf {
            accumulate(&mut coeffs, e, if s > 0 { c.clone() } else { -c.clone() });
        }
        Self::minimized(m, coeffs)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Nonzero coefficients on the standard basis, keyed by the exponent of `ζ_order`.
    pub fn coefficients(&self) -> &BTreeMap<u64, BigRational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.order == 1 {
            Some(self.coeffs.get(&0).cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// Integer value, when the element is a (small) rational integer.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.as_rational()?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    fn minimized(mut n: u64, mut coeffs: BTreeMap<u64, BigRational>) -> Self {
        coeffs.retain(|_, c| !c.is_zero());
        if coeffs.is_empty() {
            return Cyclo::zero();
        }
        'outer: loop {
            if n == 1 {
                break;
            }
            let field = Field::new(n);
            for part in &field.parts {
                let comps = coeffs.keys().map(|&k| field.component(part, k));
                let divisor = if part.a == 1 {
                    if comps.into_iter().all(|c| c == 0) {
                        part.p
                    } else {
                        continue;
                    }
                } else if comps.into_iter().all(|c| c % part.p == 0) {
                    if part.q == 4 {
                        4
                    } else {
                        part.p
                    }
                } else {
                    continue;
                };
                n /= divisor;
                coeffs = std::mem::take(&mut coeffs)
                    .into_iter()
                    .map(|(k, c)| {
                        debug_assert_eq!(k % divisor, 0);
                        (k / divisor, c)
                    })
                    .collect();
                continue 'outer;
            }
            break;
        }
        Cyclo { order: n, coeffs }
    }

    fn lifted(&self, target: u64) -> BTreeMap<u64, BigRational> {
        debug_assert_eq!(target % self.order, 0);
        let f = target / self.order;
        self.coeffs.iter().map(|(&k, c)| (k * f, c.clone())).collect()
    }

    fn common_order(a: &Cyclo, b: &Cyclo) -> u64 {
        a.order.lcm(&b.order)
    }

    pub fn scale(&self, r: &BigRational) -> Cyclo {
        if r.is_zero() {
            return Cyclo::zero();
        }
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, c * r)).collect(),
        }
    }

    pub fn times(&self, k: i64) -> Cyclo {
        self.scale(&BigRational::from_integer(k.into()))
    }

    pub fn conjugate(&self) -> Cyclo {
        if self.order == 1 {
            return self.clone();
        }
        let field = Field::new(self.order);
        let mut out = BTreeMap::new();
        let mut buf = Vec::new();
        for (&k, c) in &self.coeffs {
            field.expand((self.order - k) % self.order, &mut buf);
            for &(e, s) in &buf {
                accumulate(&mut out, e, if s > 0 { c.clone() } else { -c.clone() });
            }
        }
        Self::minimized(self.order, out)
    }

    /// Evaluates the standard embedding `ζ_n ↦ e^{2πi/n}`.
    pub fn approx(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .map(|(&k, c)| {
                let v = c.to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(v, 2.0 * std::f64::consts::PI * k as f64 / n)
            })
            .sum()
    }

    pub fn inverse(&self) -> Result<Cyclo, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Cyclo::from_rational(r.recip()));
        }
        let field = Field::new(self.order);
        let basis = field.basis();
        let dim = basis.len();
        let position: BTreeMap<u64, usize> = basis.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        // column j holds self · ζ^{basis[j]}
        let mut m = vec![vec![BigRational::zero(); dim + 1]; dim];
        for (j, &b) in basis.iter().enumerate() {
            let prod = self * &Cyclo::monomial(self.order, b, BigRational::one());
            for (k, c) in prod.lifted(self.order) {
                m[position[&k]][j] = c;
            }
        }
        m[position[&0]][dim] = BigRational::one();
        let sol = solve(m).ok_or(ArithError::DivisionByZero)?;
        let coeffs = basis.iter().copied().zip(sol).collect();
        let inv = Self::minimized(self.order, coeffs);
        debug_assert!((self * &inv).is_one());
        Ok(inv)
    }

    pub fn checked_div(&self, other: &Cyclo) -> Result<Cyclo, ArithError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, mut e: u32) -> Cyclo {
        let mut base = self.clone();
        let mut acc = Cyclo::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn add_impl(&self, other: &Cyclo, negate: bool) -> Cyclo {
        let n = Self::common_order(self, other);
        let mut coeffs = self.lifted(n);
        for (k, c) in other.lifted(n) {
            accumulate(&mut coeffs, k, if negate { -c } else { c });
        }
        Self::minimized(n, coeffs)
    }

    fn mul_impl(&self, other: &Cyclo) -> Cyclo {
        if self.is_zero() || other.is_zero() {
            return Cyclo::zero();
        }
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        let n = Self::common_order(self, other);
        let field = Field::new(n);
        let a = self.lifted(n);
        let b = other.lifted(n);
        let mut out = BTreeMap::new();
        let mut cache: BTreeMap<u64, Vec<(u64, i8)>> = BTreeMap::new();
        let mut buf = Vec::new();
        for (&ka, ca) in &a {
            for (&kb, cb) in &b {
                let k = (ka + kb) % n;
                let terms = cache.entry(k).or_insert_with(|| {
                    field.expand(k, &mut buf);
                    buf.clone()
                });
                let c = ca * cb;
                for &(e, s) in terms.iter() {
                    accumulate(&mut out, e, if s > 0 { c.clone() } else { -c.clone() });
                }
            }
        }
        Self::minimized(n, out)
    }
}

fn accumulate(map: &mut BTreeMap<u64, BigRational>, k: u64, c: BigRational) {
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Gauss-Jordan on an augmented matrix; `None` when singular.
fn solve(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let dim = m.len();
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[dim].clone()).collect())
}

impl Default for Cyclo {
    fn default() -> Self {
        Cyclo::zero()
    }
}

impl From<i64> for Cyclo {
    fn from(v: i64) -> Self {
        Cyclo::from_int(v)
    }
}

impl From<BigRational> for Cyclo {
    fn from(r: BigRational) -> Self {
        Cyclo::from_rational(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: &Cyclo) -> Cyclo {
                let f: fn(&Cyclo, &Cyclo) -> Cyclo = $body;
                f(self, rhs)
            }
        }
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: &Cyclo) -> Cyclo {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, rhs: &Cyclo) {
        *self = self.add_impl(rhs, false);
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl std::iter::Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Product<&'a Cyclo> for Cyclo {
    fn product<I: Iterator<Item = &'a Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::one(), |acc, x| &acc * x)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form, e.g. `z8 - z8^3` or `-1/2*z3`. Parses back to the same value.
impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&k, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let zeta = match k {
                0 => None,
                1 => Some(format!("z{}", self.order)),
                _ => Some(format!("z{}^{}", self.order, k)),
            };
            match zeta {
                None => f.write_str(&fmt_rational(&mag))?,
                Some(z) if mag.is_one() => f.write_str(&z)?,
                Some(z) => write!(f, "{}*{}", fmt_rational(&mag), z)?,
            }
        }
        Ok(())
    }
}

impl FromStr for Cyclo {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut p = ExprParser { src: s, pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(v)
    }
}

/// Recursive-descent parser for `integer`, `p/q`, `zN`, `zN^k`, `+ - *` and parentheses.
struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError {
            input: self.src.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        if self.peek() == Some(b'.') || self.peek() == Some(b'e') || self.peek() == Some(b'E') {
            return Err(self.error("floating-point literals are not accepted"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn expr(&mut self) -> Result<Cyclo, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Cyclo, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Cyclo, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Cyclo, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(v)
            }
            Some(b'z') => {
                self.pos += 1;
                if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.error("expected order after `z`"));
                }
                let n = self.integer()?;
                let n = n.to_u64().filter(|&n| n >= 1).ok_or_else(|| self.error("order must be a positive machine integer"))?;
                let k = if self.eat(b'^') {
                    let neg = self.eat(b'-');
                    let k = self.integer()?;
                    let k = k.to_i64().ok_or_else(|| self.error("exponent too large"))?;
                    if neg {
                        -k
                    } else {
                        k
                    }
                } else {
                    1
                };
                Ok(Cyclo::zeta_pow(n, k))
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.integer()?;
                if self.eat(b'/') {
                    let q = self.integer()?;
                    if q.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    Ok(Cyclo::from_rational(BigRational::new(p, q)))
                } else {
                    Ok(Cyclo::from_rational(BigRational::from_integer(p)))
                }
            }
            Some(b'.') => Err(self.error("floating-point literals are not accepted")),
            _ => Err(self.error("expected a number, `zN`, or `(`")),
        }
    }
}

/// A rational turn `r ∈ [0, 1)`, standing for the root of unity `e^{2πi r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Turn(Ratio<i64>);

impl Turn {
    pub const ZERO: Turn = Turn(Ratio::new_raw(0, 1));

    pub fn new(p: i64, q: i64) -> Result<Turn, ArithError> {
        if q == 0 {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Turn::reduce(Ratio::new(p, q)))
    }

    fn reduce(r: Ratio<i64>) -> Turn {
        let fl = r.floor();
        Turn(r - fl)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn times(&self, k: i64) -> Turn {
        Turn::reduce(self.0 * k)
    }

    pub fn root(&self) -> Cyclo {
        Cyclo::root_of_unity(self.numer(), self.denom()).expect("denominator is positive")
    }

    pub fn as_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl Add for Turn {
    type Output = Turn;
    fn add(self, rhs: Turn) -> Turn {
        Turn::reduce(self.0 + rhs.0)
    }
}

impl Sub for Turn {
    type Output = Turn;
    fn sub(self, rhs: Turn) -> Turn {
        Turn::reduce(self.0 - rhs.0)
    }
}

impl Neg for Turn {
    type Output = Turn;
    fn neg(self) -> Turn {
        Turn::reduce(-self.0)
    }
}

impl std::iter::Sum for Turn {
    fn sum<I: Iterator<Item = Turn>>(iter: I) -> Turn {
        iter.fold(Turn::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            f.write_str("0")
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

/// Parses `p`, `-p` or `p/q` (reduced modulo 1). Floats are rejected.
impl FromStr for Turn {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let err = |pos: usize, msg: &str| ParseError {
            input: s.to_string(),
            pos,
            msg: msg.to_string(),
        };
        let t = s.trim();
        if let Some(pos) = t.find(['.', 'e', 'E']) {
            return Err(err(pos, "floating-point literals are not accepted"));
        }
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (t, "1"),
        };
        let p: i64 = p.parse().map_err(|_| err(0, "expected integer numerator"))?;
        let q: i64 = q.parse().map_err(|_| err(0, "expected integer denominator"))?;
        Turn::new(p, q).map_err(|e| err(0, &e.to_string()))
    }
}
