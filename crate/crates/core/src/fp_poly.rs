//! Arithmetic in F_p, F_p[x] and the Laurent ring R_p = F_p[x, x^-1].
//!
//! Coefficients are stored as least nonnegative residues, lowest degree
//! first. The zero polynomial is the empty coefficient vector.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    p: u64,
}

impl FieldSpec {
    /// Largest supported characteristic; products of two residues fit in u64.
    pub const MAX_P: u64 = u32::MAX as u64;

    pub fn new(p: u64) -> Result<Self> {
        if p > Self::MAX_P || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { p })
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary integer to its least nonnegative residue.
    #[inline]
    pub fn reduce(self, c: i64) -> u64 {
        c.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        s - self.p * ((s >= self.p) as u64)
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        let (d, borrow) = a.overflowing_sub(b);
        d.wrapping_add(self.p * (borrow as u64))
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// Deterministic trial division; characteristics are at most 32 bits.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    field: FieldSpec,
    coeffs: Vec<u64>,
}

/// Output of the extended Euclidean algorithm: `u*a + v*b = g`, `g` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdExt {
    pub g: FpPoly,
    pub u: FpPoly,
    pub v: FpPoly,
}

impl FpPoly {
    pub fn zero(field: FieldSpec) -> Self {
        FpPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: FieldSpec, c: i64) -> Self {
        Self::from_coeffs(field, vec![field.reduce(c)])
    }

    /// `c * x^exp`.
    pub fn monomial(field: FieldSpec, exp: usize, c: i64) -> Self {
        let mut coeffs = vec![0; exp + 1];
        coeffs[exp] = field.reduce(c);
        Self::from_coeffs(field, coeffs)
    }

    pub fn x(field: FieldSpec) -> Self {
        Self::monomial(field, 1, 1)
    }

    /// `x^m - 1`.
    pub fn x_pow_minus_one(field: FieldSpec, m: usize) -> Self {
        let mut coeffs = vec![0; m + 1];
        coeffs[m] = 1;
        coeffs[0] = field.sub(coeffs[0], 1);
        Self::from_coeffs(field, coeffs)
    }

    /// Builds a polynomial from residues (reduced mod p), lowest degree first.
    pub fn from_coeffs(field: FieldSpec, coeffs: Vec<u64>) -> Self {
        let mut poly = FpPoly {
            field,
            coeffs: coeffs.into_iter().map(|c| c % field.p).collect(),
        };
        poly.trim();
        poly
    }

    pub fn from_signed(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    /// Builds a polynomial from `(exponent, coefficient)` terms; duplicate
    /// exponents are summed.
    pub fn from_terms(field: FieldSpec, terms: &[(i64, i64)]) -> Result<Self> {
        let mut coeffs = Vec::new();
        for &(e, c) in terms {
            if e < 0 {
                return Err(Error::NegativeExponent(e));
            }
            let e = e as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = field.add(coeffs[e], field.reduce(c));
        }
        Ok(Self::from_coeffs(field, coeffs))
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c))
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree with the zero polynomial mapped to 0; for sums of degrees of
    /// nonzero polynomials.
    pub fn degree_or_zero(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u64 {
        self.coeff(0)
    }

    /// Exponent of the largest power of x dividing `self` (0 for zero).
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().position(|&c| c != 0).unwrap_or(0)
    }

    /// Splits `self = x^k * rest` with `rest(0) != 0`.
    pub fn strip_x(&self) -> (usize, FpPoly) {
        let k = self.x_valuation();
        (
            k,
            FpPoly {
                field: self.field,
                coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec(),
            },
        )
    }

    pub fn monic(&self) -> FpPoly {
        match self.field.inv(self.lead()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let f = self.field;
        Self::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        FpPoly { field: self.field, coeffs }
    }

    pub fn pow(&self, mut exp: u32) -> FpPoly {
        let mut base = self.clone();
        let mut acc = FpPoly::one(self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn eval(&self, at: u64) -> u64 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, at), c))
    }

    fn check_field(&self, other: &FpPoly) -> Result<()> {
        if self.field != other.field {
            Err(Error::FieldMismatch(self.field.p, other.field.p))
        } else {
            Ok(())
        }
    }

    /// Euclidean division: `self = q*divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &FpPoly) -> Result<(FpPoly, FpPoly)> {
        self.check_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field;
        let db = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((FpPoly::zero(f), self.clone()));
        }
        let lead_inv = f.inv(divisor.lead()).expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + db], lead_inv);
            quot[i] = c;
            if c != 0 {
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = f.sub(rem[i + j], f.mul(c, d));
                }
            }
        }
        rem.truncate(db);
        Ok((FpPoly::from_coeffs(f, quot), FpPoly::from_coeffs(f, rem)))
    }

    pub fn rem(&self, divisor: &FpPoly) -> Result<FpPoly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Quotient of a division known to be exact.
    pub fn div_exact(&self, divisor: &FpPoly) -> Result<FpPoly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    /// Whether `self` divides `other`. Zero divides only zero.
    pub fn divides(&self, other: &FpPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        matches!(other.divmod(self), Ok((_, r)) if r.is_zero())
    }

    /// Extended gcd with a monic gcd and a Bézout certificate that is
    /// re-verified before returning.
    pub fn gcd_ext(&self, other: &FpPoly) -> Result<GcdExt> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FpPoly::one(f), FpPoly::zero(f));
        let (mut t0, mut t1) = (FpPoly::zero(f), FpPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = f.inv(r0.lead()).expect("gcd is nonzero");
        let out = GcdExt {
            g: r0.scale(inv),
            u: s0.scale(inv),
            v: t0.scale(inv),
        };
        assert_eq!(
            &(&out.u * self) + &(&out.v * other),
            out.g,
            "Bézout certificate failed"
        );
        Ok(out)
    }

    /// Monic gcd; `gcd(0, 0)` is taken to be 0.
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        match self.gcd_ext(other) {
            Ok(e) => e.g,
            Err(_) => FpPoly::zero(self.field),
        }
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by field, then degree, then coefficients from the top down.
impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

fn assert_same_field(a: &FpPoly, b: &FpPoly) {
    assert_eq!(a.field, b.field, "polynomials over different fields");
}

impl Add for &FpPoly {
    type Output = FpPoly;

    fn add(self, rhs: &FpPoly) -> FpPoly {
        assert_same_field(self, rhs);
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        FpPoly::from_coeffs(f, coeffs)
    }
}

impl Sub for &FpPoly {
    type Output = FpPoly;

    fn sub(self, rhs: &FpPoly) -> FpPoly {
        assert_same_field(self, rhs);
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        FpPoly::from_coeffs(f, coeffs)
    }
}

impl Neg for &FpPoly {
    type Output = FpPoly;

    fn neg(self) -> FpPoly {
        let f = self.field;
        FpPoly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &FpPoly {
    type Output = FpPoly;

    fn mul(self, rhs: &FpPoly) -> FpPoly {
        assert_same_field(self, rhs);
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(f);
        }
        let mut coeffs = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        FpPoly::from_coeffs(f, coeffs)
    }
}

fn write_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (i64, u64)>,
{
    let mut first = true;
    for (e, c) in terms {
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        match (e, c) {
            (0, c) => write!(f, "{c}")?,
            (1, 1) => f.write_str("x")?,
            (1, c) => write!(f, "{c}*x")?,
            (e, 1) => write!(f, "x^{e}")?,
            (e, c) => write!(f, "{c}*x^{e}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(e, c)| (e as i64, c)).collect::<Vec<_>>().into_iter().rev())
    }
}

/// An element `x^shift * body` of R_p in canonical form: `body(0) != 0`,
/// and the zero element has `shift = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    shift: i64,
    body: FpPoly,
}

impl LaurentPoly {
    pub fn zero(field: FieldSpec) -> Self {
        LaurentPoly { shift: 0, body: FpPoly::zero(field) }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_poly(FpPoly::one(field))
    }

    /// `c * x^exp` for any integer exponent.
    pub fn monomial(field: FieldSpec, exp: i64, c: i64) -> Self {
        Self::canonicalize(field, &[(exp, c)])
    }

    /// Canonical form of `sum c_i x^{e_i}`; duplicates are summed mod p.
    pub fn canonicalize(field: FieldSpec, raw: &[(i64, i64)]) -> Self {
        let Some(min) = raw.iter().map(|&(e, _)| e).min() else {
            return Self::zero(field);
        };
        let shifted: Vec<(i64, i64)> = raw.iter().map(|&(e, c)| (e - min, c)).collect();
        let body = FpPoly::from_terms(field, &shifted).expect("exponents shifted to >= 0");
        Self::from_shifted(min, body)
    }

    /// `x^shift * body` for an arbitrary polynomial body.
    pub fn from_shifted(shift: i64, body: FpPoly) -> Self {
        if body.is_zero() {
            return LaurentPoly { shift: 0, body };
        }
        let (k, rest) = body.strip_x();
        LaurentPoly { shift: shift + k as i64, body: rest }
    }

    pub fn from_poly(poly: FpPoly) -> Self {
        Self::from_shifted(0, poly)
    }

    pub fn field(&self) -> FieldSpec {
        self.body.field()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn body(&self) -> &FpPoly {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Units of R_p are exactly `c * x^k` with `c != 0`.
    pub fn is_unit(&self) -> bool {
        self.body.degree() == Degree::Finite(0)
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.shift)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.body.degree().finite().map(|d| self.shift + d as i64)
    }

    /// Nonzero `(exponent, coefficient)` terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.body.terms().map(move |(e, c)| (self.shift + e as i64, c))
    }

    /// `x^k * self`.
    pub fn mul_x_pow(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { shift: self.shift + k, body: self.body.clone() }
    }

    /// `x^k * self` as an ordinary polynomial, if all exponents become nonnegative.
    pub fn to_poly_times_x_pow(&self, k: i64) -> Option<FpPoly> {
        if self.is_zero() {
            return Some(self.body.clone());
        }
        let s = self.shift + k;
        (s >= 0).then(|| self.body.shift_up(s as usize))
    }

    pub fn to_poly(&self) -> Option<FpPoly> {
        self.to_poly_times_x_pow(0)
    }

    /// Scalar-normalized representative with monic body.
    pub fn normalized_body(&self) -> FpPoly {
        self.body.monic()
    }

    fn align(&self, rhs: &LaurentPoly) -> (i64, FpPoly, FpPoly) {
        let lo = match (self.min_exponent(), rhs.min_exponent()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => 0,
        };
        (
            lo,
            self.to_poly_times_x_pow(-lo).expect("aligned"),
            rhs.to_poly_times_x_pow(-lo).expect("aligned"),
        )
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (lo, a, b) = self.align(rhs);
        LaurentPoly::from_shifted(lo, &a + &b)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (lo, a, b) = self.align(rhs);
        LaurentPoly::from_shifted(lo, &a - &b)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly { shift: self.shift, body: -&self.body }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_shifted(self.shift + rhs.shift, &self.body * &rhs.body)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().collect::<Vec<_>>().into_iter().rev())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> FieldSpec {
        FieldSpec::new(2).unwrap()
    }

    fn poly(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::from_signed(FieldSpec::new(p).unwrap(), c)
    }

    #[test]
    fn field_rejects_composites() {
        assert_eq!(FieldSpec::new(4), Err(Error::NotPrime(4)));
        assert_eq!(FieldSpec::new(1), Err(Error::NotPrime(1)));
        assert!(FieldSpec::new(7).is_ok());
    }

    #[test]
    fn field_inverse() {
        let f = FieldSpec::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), None);
    }

    #[test]
    fn zero_degree_is_neg_infinity() {
        let z = FpPoly::zero(f2());
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn divmod_examples() {
        // x^2+x+1 = x*(x+1) + 1 over F_2
        let a = poly(2, &[1, 1, 1]);
        let b = poly(2, &[1, 1]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q, poly(2, &[0, 1]));
        assert_eq!(r, poly(2, &[1]));
        assert_eq!(&(&q * &b) + &r, a);

        let (q, r) = a.divmod(&FpPoly::one(f2())).unwrap();
        assert_eq!((q, r), (a.clone(), FpPoly::zero(f2())));

        let (q, r) = FpPoly::zero(f2()).divmod(&b).unwrap();
        assert!(q.is_zero() && r.is_zero());
    }

    #[test]
    fn divmod_errors() {
        let a = poly(2, &[1, 1]);
        assert_eq!(a.divmod(&FpPoly::zero(f2())), Err(Error::DivisionByZero));
        assert_eq!(a.divmod(&poly(3, &[1])), Err(Error::FieldMismatch(2, 3)));
    }

    #[test]
    fn gcd_examples() {
        let g = poly(2, &[1, 0, 1]).gcd_ext(&poly(2, &[1, 1])).unwrap();
        assert_eq!(g.g, poly(2, &[1, 1]));

        let g = poly(2, &[1, 0, 0, 1]).gcd_ext(&poly(2, &[1, 1, 1])).unwrap();
        assert_eq!(g.g, poly(2, &[1, 1, 1]));

        // (f, 0) -> monic(f), u = lead(f)^-1, v = 0
        let f = poly(5, &[1, 2, 3]);
        let e = f.gcd_ext(&FpPoly::zero(f.field())).unwrap();
        assert_eq!(e.g, f.monic());
        assert_eq!(e.u, FpPoly::constant(f.field(), 2)); // 3^-1 = 2 mod 5
        assert!(e.v.is_zero());

        let z = FpPoly::zero(f2());
        assert_eq!(z.gcd_ext(&z), Err(Error::BothZero));
    }

    #[test]
    fn laurent_canonical_examples() {
        let l = LaurentPoly::canonicalize(f2(), &[(-1, 1), (1, 1)]);
        assert_eq!(l.shift(), -1);
        assert_eq!(l.body(), &poly(2, &[1, 0, 1]));

        assert!(LaurentPoly::canonicalize(f2(), &[(0, 1), (0, 1)]).is_zero());

        let f3 = FieldSpec::new(3).unwrap();
        let l = LaurentPoly::canonicalize(f3, &[(3, 2)]);
        assert_eq!((l.shift(), l.body().clone()), (3, FpPoly::constant(f3, 2)));
    }

    #[test]
    fn laurent_units() {
        let f5 = FieldSpec::new(5).unwrap();
        assert!(LaurentPoly::monomial(f2(), 5, 1).is_unit());
        assert!(!LaurentPoly::canonicalize(f2(), &[(0, 1), (1, 1)]).is_unit());
        assert!(LaurentPoly::monomial(f5, -3, 2).is_unit());
        assert!(!LaurentPoly::zero(f5).is_unit());
    }

    #[test]
    fn display() {
        assert_eq!(poly(3, &[1, 0, 2]).to_string(), "2*x^2 + 1");
        assert_eq!(FpPoly::zero(f2()).to_string(), "0");
        assert_eq!(LaurentPoly::canonicalize(f2(), &[(-1, 1), (1, 1)]).to_string(), "x + x^-1");
    }

    fn arb_field() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![Just(2u64), Just(3), Just(5), Just(7)].prop_map(|p| FieldSpec::new(p).unwrap())
    }

    fn arb_poly(field: FieldSpec, max_len: usize) -> impl Strategy<Value = FpPoly> {
        proptest::collection::vec(0..field.p(), 0..=max_len)
            .prop_map(move |c| FpPoly::from_coeffs(field, c))
    }

    fn arb_triple() -> impl Strategy<Value = (FpPoly, FpPoly, FpPoly)> {
        arb_field().prop_flat_map(|f| (arb_poly(f, 7), arb_poly(f, 7), arb_poly(f, 7)))
    }

    /// All monic polynomials of degree `d` over the field.
    fn monics(field: FieldSpec, d: usize) -> Vec<FpPoly> {
        let p = field.p();
        let count = p.pow(d as u32);
        (0..count)
            .map(|mut idx| {
                let mut c = Vec::with_capacity(d + 1);
                for _ in 0..d {
                    c.push(idx % p);
                    idx /= p;
                }
                c.push(1);
                FpPoly::from_coeffs(field, c)
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn ring_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2_000))]

        #[test]
        fn divmod_round_trip((a, b, _) in arb_triple()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn gcd_soundness((a, b, _) in arb_triple()) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let e = a.gcd_ext(&b).unwrap();
            prop_assert!(e.g.is_monic());
            prop_assert!(e.g.divides(&a) && e.g.divides(&b));
            prop_assert_eq!(&(&e.u * &a) + &(&e.v * &b), e.g);
        }

        #[test]
        fn gcd_maximal_against_divisor_search(
            p in prop_oneof![Just(2u64), Just(3)],
            ca in proptest::collection::vec(0u64..3, 1..=7),
            cb in proptest::collection::vec(0u64..3, 1..=7),
        ) {
            let f = FieldSpec::new(p).unwrap();
            let a = FpPoly::from_coeffs(f, ca);
            let b = FpPoly::from_coeffs(f, cb);
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd(&b);
            for d in 0..=6 {
                for cand in monics(f, d) {
                    if cand.divides(&a) && cand.divides(&b) {
                        prop_assert!(cand.divides(&g), "{} divides both but not {}", cand, g);
                    }
                }
            }
        }

        #[test]
        fn laurent_canonical_idempotent_and_order_free(
            p in prop_oneof![Just(2u64), Just(3), Just(5)],
            mut raw in proptest::collection::vec((-6i64..6, -10i64..10), 0..8),
        ) {
            let f = FieldSpec::new(p).unwrap();
            let l = LaurentPoly::canonicalize(f, &raw);
            let again: Vec<(i64, i64)> = l.terms().map(|(e, c)| (e, c as i64)).collect();
            prop_assert_eq!(&LaurentPoly::canonicalize(f, &again), &l);
            raw.reverse();
            prop_assert_eq!(&LaurentPoly::canonicalize(f, &raw), &l);
            if !l.is_zero() {
                prop_assert!(l.body().constant_term() != 0);
            } else {
                prop_assert_eq!(l.shift(), 0);
            }
        }
    }
}
