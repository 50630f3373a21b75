//! Arithmetic in the prime field F_p for an odd machine-word prime p.
//!
//! `PrimeField` carries the modulus together with a precomputed Barrett
//! constant; element operations are plain functions of `u64` values kept in
//! canonical form `[0, p)`. `FieldElement` is a thin value + field pair for
//! code that prefers operator syntax.

use crate::error::{Error, Result};
use rand::Rng;

/// Outcome of the Euler criterion for a field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Legendre {
    Zero,
    Residue,
    NonResidue,
}

/// The field F_p, p an odd prime. Cheap to copy; equality compares moduli.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    p: u64,
    // floor(2^64 / p), used for Barrett reduction when products fit in a u64.
    barrett: u64,
    small: bool,
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}
impl Eq for PrimeField {}

/// Largest modulus for which a*b with a,b < p fits in a u64.
const SMALL_LIMIT: u64 = 1 << 31;

impl PrimeField {
    /// Builds F_p after checking that `p` is an odd prime ≥ 3.
    ///
    /// Tower constructions additionally require p ≥ 5; that check lives with
    /// the constructions so the base field stays usable for small test primes.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        let barrett = ((u128::from(u64::MAX) + 1) / u128::from(p)) as u64;
        Ok(PrimeField {
            p,
            barrett,
            small: p < SMALL_LIMIT,
        })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Canonical representative of `v`.
    #[inline]
    pub fn reduce(&self, v: u64) -> u64 {
        if v < self.p {
            v
        } else {
            v % self.p
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        let s = a + b; // p < 2^63 so no overflow
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        debug_assert!(a < self.p);
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        if self.small {
            // a*b < 2^62; Barrett with floor(2^64/p) leaves at most two corrections.
            let t = a * b;
            let q = ((u128::from(t) * u128::from(self.barrett)) >> 64) as u64;
            let mut r = t.wrapping_sub(q.wrapping_mul(self.p));
            while r >= self.p {
                r -= self.p;
            }
            r
        } else {
            ((u128::from(a) * u128::from(b)) % u128::from(self.p)) as u64
        }
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element, via Fermat.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a % self.p == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Euler criterion: classifies `a` as zero, a square, or a non-square.
    pub fn legendre(&self, a: u64) -> Legendre {
        let a = self.reduce(a);
        if a == 0 {
            Legendre::Zero
        } else if self.pow(a, (self.p - 1) / 2) == 1 {
            Legendre::Residue
        } else {
            Legendre::NonResidue
        }
    }

    /// Square root of a residue (Tonelli–Shanks). Returns `None` for
    /// non-residues; 0 maps to 0.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let a = self.reduce(a);
        if a == 0 {
            return Some(0);
        }
        if self.legendre(a) == Legendre::NonResidue {
            return None;
        }
        if self.p % 4 == 3 {
            return Some(self.pow(a, (self.p + 1) / 4));
        }
        // Tonelli–Shanks for p ≡ 1 (mod 4).
        let mut q = self.p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.legendre(z) != Legendre::NonResidue {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    /// Wraps a value as a canonical field element.
    #[inline]
    pub fn elem(&self, v: u64) -> FieldElement {
        FieldElement {
            value: self.reduce(v),
            field: *self,
        }
    }

    /// Uniformly random element.
    pub fn random(&self, rng: &mut impl Rng) -> FieldElement {
        self.elem(rng.gen_range(0..self.p))
    }

    /// Uniformly random nonzero element.
    pub fn random_nonzero(&self, rng: &mut impl Rng) -> FieldElement {
        self.elem(rng.gen_range(1..self.p))
    }
}

/// An element of F_p in canonical form, tied to its field.
#[derive(Debug, Clone, Copy)]
pub struct FieldElement {
    value: u64,
    field: PrimeField,
}

impl FieldElement {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.elem(self.field.pow(self.value, e))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.field.elem(self.field.inv(self.value)?))
    }

    /// a / b, failing on a zero divisor.
    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        assert_eq!(self.field, rhs.field, "field mismatch");
        Ok(self.field.elem(self.field.div(self.value, rhs.value)?))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}
impl Eq for FieldElement {}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.field, rhs.field, "field mismatch");
        self.field.elem(self.field.add(self.value, rhs.value))
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.field, rhs.field, "field mismatch");
        self.field.elem(self.field.sub(self.value, rhs.value))
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.field, rhs.field, "field mismatch");
        self.field.elem(self.field.mul(self.value, rhs.value))
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.elem(self.field.neg(self.value))
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Deterministic Miller–Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((u128::from(a) * u128::from(b)) % u128::from(n)) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'next: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'next;
            }
        }
        return false;
    }
    true
}
