//! Dense univariate polynomials over F_p.
//!
//! Coefficients are stored in ascending degree with no trailing zeros; the
//! zero polynomial is the empty sequence. Multiplication switches from
//! schoolbook to Karatsuba above a crossover, and division by large moduli
//! uses a Newton reciprocal of the reversed divisor so that the quotient-ring
//! arithmetic downstream stays quasi-linear.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use num_bigint::BigUint;
use rand::Rng;

/// Coefficient count below which schoolbook multiplication wins.
const KARATSUBA_THRESHOLD: usize = 32;
/// Divisor size below which schoolbook long division wins.
const NEWTON_DIV_THRESHOLD: usize = 32;

/// A dense polynomial over a prime field.
#[derive(Debug, Clone)]
pub struct DensePoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl PartialEq for DensePoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for DensePoly {}

impl DensePoly {
    pub fn zero(field: PrimeField) -> Self {
        DensePoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        DensePoly {
            field,
            coeffs: vec![1],
        }
    }

    /// The monomial X.
    pub fn x(field: PrimeField) -> Self {
        DensePoly {
            field,
            coeffs: vec![0, 1],
        }
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        let c = field.reduce(c);
        DensePoly {
            field,
            coeffs: if c == 0 { Vec::new() } else { vec![c] },
        }
    }

    /// X^d with unit coefficient.
    pub fn monomial(field: PrimeField, d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = 1;
        DensePoly { field, coeffs }
    }

    /// Builds from ascending coefficients, reducing and trimming.
    pub fn from_coeffs(field: PrimeField, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        let mut p = DensePoly { field, coeffs };
        p.trim();
        p
    }

    /// Uniformly random polynomial of degree < `len` (may be shorter).
    pub fn random(field: PrimeField, len: usize, rng: &mut impl Rng) -> Self {
        let coeffs = (0..len).map(|_| rng.gen_range(0..field.modulus())).collect();
        let mut p = DensePoly { field, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of X^i (0 beyond the stored length).
    #[inline]
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a polynomial known to be nonzero.
    #[inline]
    pub fn degree_nonzero(&self) -> usize {
        debug_assert!(!self.is_zero());
        self.coeffs.len() - 1
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub fn add(&self, rhs: &DensePoly) -> DensePoly {
        debug_assert_eq!(self.field, rhs.field);
        let f = self.field;
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (&self.coeffs, &rhs.coeffs)
        } else {
            (&rhs.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (o, s) in out.iter_mut().zip(short.iter()) {
            *o = f.add(*o, *s);
        }
        let mut p = DensePoly { field: f, coeffs: out };
        p.trim();
        p
    }

    pub fn sub(&self, rhs: &DensePoly) -> DensePoly {
        debug_assert_eq!(self.field, rhs.field);
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.sub(self.coeff(i), rhs.coeff(i)));
        }
        let mut p = DensePoly { field: f, coeffs: out };
        p.trim();
        p
    }

    pub fn neg(&self) -> DensePoly {
        let f = self.field;
        DensePoly {
            field: f,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn mul_scalar(&self, s: u64) -> DensePoly {
        let f = self.field;
        let s = f.reduce(s);
        if s == 0 {
            return DensePoly::zero(f);
        }
        DensePoly {
            field: f,
            coeffs: self.coeffs.iter().map(|&c| f.mul(c, s)).collect(),
        }
    }

    /// Multiplication by X^k.
    pub fn shift(&self, k: usize) -> DensePoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k + self.coeffs.len()];
        coeffs[k..].copy_from_slice(&self.coeffs);
        DensePoly {
            field: self.field,
            coeffs,
        }
    }

    pub fn mul(&self, rhs: &DensePoly) -> DensePoly {
        debug_assert_eq!(self.field, rhs.field);
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero(self.field);
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let coeffs = mul_slices(&self.field, &self.coeffs, &rhs.coeffs);
        let mut p = DensePoly {
            field: self.field,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn square(&self) -> DensePoly {
        self.mul(self)
    }

    /// Small-exponent power by binary powering.
    pub fn pow(&self, mut e: usize) -> DensePoly {
        let mut base = self.clone();
        let mut acc = DensePoly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Horner evaluation at a field point.
    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        let x = f.reduce(x);
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> DensePoly {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.reduce(i as u64), c))
            .collect();
        let mut p = DensePoly { field: f, coeffs };
        p.trim();
        p
    }

    pub fn make_monic(&self) -> Result<DensePoly> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.leading_coeff();
        if lc == 1 {
            return Ok(self.clone());
        }
        Ok(self.mul_scalar(self.field.inv(lc)?))
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg r < deg b. Errors on a zero divisor.
    pub fn divrem(&self, b: &DensePoly) -> Result<(DensePoly, DensePoly)> {
        debug_assert_eq!(self.field, b.field);
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (da, db) = (self.coeffs.len(), b.coeffs.len());
        if da < db {
            return Ok((DensePoly::zero(self.field), self.clone()));
        }
        let qlen = da - db + 1;
        if db >= NEWTON_DIV_THRESHOLD && qlen >= NEWTON_DIV_THRESHOLD {
            return self.divrem_newton(b, None);
        }
        Ok(self.divrem_schoolbook(b))
    }

    fn divrem_schoolbook(&self, b: &DensePoly) -> (DensePoly, DensePoly) {
        let f = self.field;
        let db = b.degree_nonzero();
        let lc_inv = f.inv(b.leading_coeff()).expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len() - db];
        for i in (db..self.coeffs.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = f.mul(c, lc_inv);
            quot[i - db] = q;
            for (j, &bc) in b.coeffs.iter().enumerate() {
                let idx = i - db + j;
                rem[idx] = f.sub(rem[idx], f.mul(q, bc));
            }
        }
        rem.truncate(db);
        let mut r = DensePoly {
            field: f,
            coeffs: rem,
        };
        r.trim();
        let mut q = DensePoly {
            field: f,
            coeffs: quot,
        };
        q.trim();
        (q, r)
    }

    /// Division with quotient recovered from a reciprocal of rev(b).
    /// `recip` must satisfy rev(b)·recip ≡ 1 (mod X^k) for k ≥ qlen.
    fn divrem_newton(&self, b: &DensePoly, recip: Option<&DensePoly>) -> Result<(DensePoly, DensePoly)> {
        let f = self.field;
        let db = b.degree_nonzero();
        let qlen = self.coeffs.len() - db;
        let owned;
        let recip = match recip {
            Some(r) => r,
            None => {
                owned = series_inverse(&b.reverse(), qlen)?;
                &owned
            }
        };
        let ra = self.reverse();
        let mut qrev = mul_truncated(&f, &ra.coeffs, &recip.coeffs, qlen);
        qrev.resize(qlen, 0);
        qrev.reverse();
        let mut q = DensePoly { field: f, coeffs: qrev };
        q.trim();
        let r = self.sub(&q.mul(b));
        debug_assert!(r.degree().map_or(true, |d| d < db));
        Ok((q, r))
    }

    /// Coefficients reversed (rev of degree-d polynomial at length d+1).
    fn reverse(&self) -> DensePoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        let mut p = DensePoly {
            field: self.field,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn rem(&self, b: &DensePoly) -> Result<DensePoly> {
        Ok(self.divrem(b)?.1)
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, b: &DensePoly) -> Result<DensePoly> {
        let (q, r) = self.divrem(b)?;
        if !r.is_zero() {
            return Err(Error::corrupt("inexact polynomial division"));
        }
        Ok(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &DensePoly) -> Result<DensePoly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.make_monic()
        }
    }

    /// Extended gcd: returns (g, u, v) with u·a + v·b = g and g monic.
    pub fn xgcd(&self, other: &DensePoly) -> Result<(DensePoly, DensePoly, DensePoly)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::invalid("xgcd of two zero polynomials"));
        }
        let f = self.field;
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut u0 = DensePoly::one(f);
        let mut u1 = DensePoly::zero(f);
        let mut v0 = DensePoly::zero(f);
        let mut v1 = DensePoly::one(f);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            r0 = r1;
            r1 = r;
            let nu = u0.sub(&q.mul(&u1));
            u0 = u1;
            u1 = nu;
            let nv = v0.sub(&q.mul(&v1));
            v0 = v1;
            v1 = nv;
        }
        let lc = r0.leading_coeff();
        if lc != 1 {
            let s = f.inv(lc)?;
            r0 = r0.mul_scalar(s);
            u0 = u0.mul_scalar(s);
            v0 = v0.mul_scalar(s);
        }
        Ok((r0, u0, v0))
    }
}

impl std::fmt::Display for DensePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "X")?,
                1 => write!(f, "{c}*X")?,
                _ if c == 1 => write!(f, "X^{i}")?,
                _ => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}

/// Full product of two coefficient slices.
fn mul_slices(f: &PrimeField, a: &[u64], b: &[u64], ) -> Vec<u64> {
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        return mul_schoolbook(f, a, b);
    }
    mul_karatsuba(f, a, b)
}

fn mul_schoolbook(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, bj));
        }
    }
    out
}

fn mul_karatsuba(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        return mul_schoolbook(f, a, b);
    }
    let m = a.len().max(b.len()) / 2;
    // Split both operands at m; short operands get an empty high part.
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    if a1.is_empty() || b1.is_empty() {
        // Unbalanced: multiply the split halves against the whole short side.
        let long_is_a = !a1.is_empty();
        let (l0, l1, s) = if long_is_a { (a0, a1, b) } else { (b0, b1, a) };
        let mut out = vec![0u64; a.len() + b.len() - 1];
        let lo = mul_karatsuba(f, l0, s);
        let hi = mul_karatsuba(f, l1, s);
        for (i, &c) in lo.iter().enumerate() {
            out[i] = f.add(out[i], c);
        }
        for (i, &c) in hi.iter().enumerate() {
            out[m + i] = f.add(out[m + i], c);
        }
        return out;
    }
    let z0 = mul_karatsuba(f, a0, b0);
    let z2 = mul_karatsuba(f, a1, b1);
    let asum = add_slices(f, a0, a1);
    let bsum = add_slices(f, b0, b1);
    let mut z1 = mul_karatsuba(f, &asum, &bsum);
    for (i, &c) in z0.iter().enumerate() {
        z1[i] = f.sub(z1[i], c);
    }
    for (i, &c) in z2.iter().enumerate() {
        z1[i] = f.sub(z1[i], c);
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &c) in z0.iter().enumerate() {
        out[i] = f.add(out[i], c);
    }
    for (i, &c) in z1.iter().enumerate() {
        out[m + i] = f.add(out[m + i], c);
    }
    for (i, &c) in z2.iter().enumerate() {
        out[2 * m + i] = f.add(out[2 * m + i], c);
    }
    out
}

fn add_slices(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short.iter()) {
        *o = f.add(*o, *s);
    }
    out
}

/// Product truncated to the first `k` coefficients.
fn mul_truncated(f: &PrimeField, a: &[u64], b: &[u64], k: usize) -> Vec<u64> {
    let a = &a[..a.len().min(k)];
    let b = &b[..b.len().min(k)];
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = mul_slices(f, a, b);
    out.truncate(k);
    out
}

/// Power-series inverse of `a` modulo X^prec (Newton iteration).
/// Requires an invertible constant term.
pub fn series_inverse(a: &DensePoly, prec: usize) -> Result<DensePoly> {
    let f = a.field();
    let c0 = a.coeff(0);
    let mut inv = vec![f.inv(c0)?];
    let mut k = 1;
    while k < prec {
        let k2 = (2 * k).min(prec);
        // inv <- inv * (2 - a * inv) mod X^k2
        let t = mul_truncated(&f, a.coeffs(), &inv, k2);
        let mut two_minus = vec![0u64; t.len().max(1)];
        two_minus[0] = f.sub(f.reduce(2), t.first().copied().unwrap_or(0));
        for i in 1..t.len() {
            two_minus[i] = f.neg(t[i]);
        }
        inv = mul_truncated(&f, &inv, &two_minus, k2);
        inv.resize(k2, 0);
        k = k2;
    }
    let mut p = DensePoly::from_coeffs(f, inv);
    p.trim();
    Ok(p)
}

/// Quotient ring F_p[X]/(Q) for a monic modulus Q of degree ≥ 1, with a
/// precomputed reciprocal of rev(Q) to precision deg Q for fast remainders.
#[derive(Debug, Clone)]
pub struct ModulusContext {
    modulus: DensePoly,
    recip: DensePoly,
}

impl ModulusContext {
    pub fn new(modulus: DensePoly) -> Result<Self> {
        if modulus.degree().map_or(true, |d| d < 1) {
            return Err(Error::invalid("modulus must have degree ≥ 1"));
        }
        if !modulus.is_monic() {
            return Err(Error::invalid("modulus must be monic"));
        }
        let recip = series_inverse(&modulus.reverse(), modulus.degree_nonzero())?;
        Ok(ModulusContext { modulus, recip })
    }

    #[inline]
    pub fn modulus(&self) -> &DensePoly {
        &self.modulus
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.modulus.degree_nonzero()
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.modulus.field()
    }

    /// Canonical representative of `a` modulo Q. Inputs of degree less than
    /// 2·deg Q use the precomputed reciprocal; anything longer falls back to
    /// plain division.
    pub fn reduce(&self, a: &DensePoly) -> DensePoly {
        let n = self.degree();
        match a.degree() {
            None => a.clone(),
            Some(d) if d < n => a.clone(),
            Some(d) if d < 2 * n => {
                let (_, r) = a
                    .divrem_newton(&self.modulus, Some(&self.recip))
                    .expect("monic modulus");
                r
            }
            _ => a.rem(&self.modulus).expect("monic modulus"),
        }
    }

    pub fn mul_mod(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        self.reduce(&a.mul(b))
    }

    pub fn square_mod(&self, a: &DensePoly) -> DensePoly {
        self.reduce(&a.square())
    }

    /// a^e mod Q for an arbitrary-precision exponent.
    pub fn pow_mod(&self, base: &DensePoly, e: &BigUint) -> DensePoly {
        let f = self.field();
        if e.bits() == 0 {
            return DensePoly::one(f);
        }
        let base = self.reduce(base);
        let mut acc = base.clone();
        for i in (0..e.bits() - 1).rev() {
            acc = self.square_mod(&acc);
            if e.bit(i) {
                acc = self.mul_mod(&acc, &base);
            }
        }
        acc
    }

    /// Inverse of `a` modulo Q (errors if gcd(a, Q) ≠ 1).
    pub fn inv_mod(&self, a: &DensePoly) -> Result<DensePoly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, u, _) = a.xgcd(&self.modulus)?;
        if !g.is_one() {
            return Err(Error::corrupt("element not invertible modulo Q"));
        }
        Ok(self.reduce(&u))
    }
}

/// Convenience: p^k as a big integer.
pub fn prime_power(p: u64, k: usize) -> BigUint {
    BigUint::from(p).pow(k as u32)
}
