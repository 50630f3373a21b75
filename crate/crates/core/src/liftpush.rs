//! Changes of basis for tower steps of fiber shape.
//!
//! A level built from a relation T(X, Y) = f(Y) − X·g(Y), with f monic of
//! degree ℓ, deg g < ℓ and gcd(f, g) = 1, carries two bases: the univariate
//! monomial basis in the top generator and the bivariate basis mixing the
//! previous generator with Y-powers below ℓ. `compose`/`decompose` convert a
//! bivariate polynomial P to Q = Σ pᵢ f^i g^(n−1−i) and back by divide and
//! conquer in O(M(ℓn) log n) base-field operations; `lift_fiber`/`push_fiber`
//! wrap them into the actual basis changes modulo the level polynomial.
//! Radical steps (f = Y^ℓ, g = 1) get index-shuffling fast paths that use no
//! field operations at all.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::{DensePoly, ModulusContext};
use num_bigint::BigUint;
use rand::Rng;
use std::collections::HashMap;
use std::rc::Rc;

/// A bivariate polynomial on the grid basis X^i·Y^j with deg_Y < ℓ, stored
/// as one Y-polynomial per X-power.
#[derive(Debug, Clone)]
pub struct BiPoly {
    field: PrimeField,
    ell: usize,
    rows: Vec<DensePoly>,
}

impl BiPoly {
    pub fn zero(field: PrimeField, n: usize, ell: usize) -> Self {
        BiPoly {
            field,
            ell,
            rows: vec![DensePoly::zero(field); n],
        }
    }

    /// Builds from Y-polynomials indexed by X-power; each must have degree < ℓ.
    pub fn from_rows(field: PrimeField, ell: usize, rows: Vec<DensePoly>) -> Self {
        assert!(
            rows.iter().all(|r| r.degree().map_or(true, |d| d < ell)),
            "row degree must stay below {ell}"
        );
        BiPoly { field, ell, rows }
    }

    /// Places the coefficients of a previous-level element on the Y-degree-0
    /// slice: entry (e, 0) = coeffs[e].
    pub fn from_base_coeffs(field: PrimeField, ell: usize, coeffs: &[u64]) -> Self {
        let rows = coeffs
            .iter()
            .map(|&c| DensePoly::constant(field, c))
            .collect();
        BiPoly { field, ell, rows }
    }

    pub fn random(field: PrimeField, n: usize, ell: usize, rng: &mut impl Rng) -> Self {
        let rows = (0..n).map(|_| DensePoly::random(field, ell, rng)).collect();
        BiPoly { field, ell, rows }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Number of stored X-rows (the X-degree bound may be larger).
    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn rows(&self) -> &[DensePoly] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> DensePoly {
        self.rows
            .get(i)
            .cloned()
            .unwrap_or_else(|| DensePoly::zero(self.field))
    }

    /// Coefficient of X^i·Y^j.
    pub fn coeff(&self, i: usize, j: usize) -> u64 {
        self.rows.get(i).map_or(0, |r| r.coeff(j))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn add(&self, rhs: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(rhs.rows.len());
        let rows = (0..n).map(|i| self.row(i).add(&rhs.row(i))).collect();
        BiPoly {
            field: self.field,
            ell: self.ell,
            rows,
        }
    }

    pub fn scale(&self, c: u64) -> BiPoly {
        BiPoly {
            field: self.field,
            ell: self.ell,
            rows: self.rows.iter().map(|r| r.mul_scalar(c)).collect(),
        }
    }
}

impl PartialEq for BiPoly {
    /// Equality up to trailing zero rows.
    fn eq(&self, other: &Self) -> bool {
        if self.field != other.field || self.ell != other.ell {
            return false;
        }
        let n = self.rows.len().max(other.rows.len());
        (0..n).all(|i| self.row(i) == other.row(i))
    }
}
impl Eq for BiPoly {}

/// One tower step T(X, Y) = f(Y) − X·g(Y), with the inverse of g modulo f
/// cached for decomposition.
#[derive(Debug, Clone)]
pub struct FiberRelation {
    f: DensePoly,
    g: DensePoly,
    h: DensePoly,
    ell: usize,
}

impl FiberRelation {
    /// Validates the shape (f monic, deg g < deg f, gcd(f, g) = 1) and caches
    /// h = g⁻¹ mod f.
    pub fn new(f: DensePoly, g: DensePoly) -> Result<Self> {
        let ell = f
            .degree()
            .ok_or_else(|| Error::invalid("relation numerator must be nonzero"))?;
        if ell < 1 || !f.is_monic() {
            return Err(Error::invalid("relation numerator must be monic of degree ≥ 1"));
        }
        if g.is_zero() || g.degree_nonzero() >= ell {
            return Err(Error::invalid("relation denominator must be nonzero of degree < ℓ"));
        }
        let (gcd, u, _) = g.xgcd(&f)?;
        if !gcd.is_one() {
            return Err(Error::invalid("relation requires gcd(f, g) = 1"));
        }
        let h = u.rem(&f)?;
        Ok(FiberRelation { f, g, h, ell })
    }

    /// The radical step f = Y^ℓ, g = 1.
    pub fn radical(field: PrimeField, ell: usize) -> Self {
        FiberRelation {
            f: DensePoly::monomial(field, ell),
            g: DensePoly::one(field),
            h: DensePoly::one(field),
            ell,
        }
    }

    #[inline]
    pub fn f(&self) -> &DensePoly {
        &self.f
    }

    #[inline]
    pub fn g(&self) -> &DensePoly {
        &self.g
    }

    /// g⁻¹ mod f.
    #[inline]
    pub fn h(&self) -> &DensePoly {
        &self.h
    }

    #[inline]
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn field(&self) -> PrimeField {
        self.f.field()
    }

    /// The coefficients of T(X, Y) collected by Y-power: column j is the
    /// X-polynomial f_j − g_j·X.
    pub fn bivariate_columns(&self) -> Vec<DensePoly> {
        let f = self.field();
        (0..=self.ell)
            .map(|j| {
                DensePoly::from_coeffs(f, [self.f.coeff(j), f.neg(self.g.coeff(j))])
            })
            .collect()
    }
}

/// Memoized binary powering of one base polynomial.
struct PowerCache {
    base: DensePoly,
    memo: HashMap<usize, Rc<DensePoly>>,
}

impl PowerCache {
    fn new(base: DensePoly) -> Self {
        PowerCache {
            base,
            memo: HashMap::new(),
        }
    }

    fn get(&mut self, e: usize) -> Rc<DensePoly> {
        if let Some(p) = self.memo.get(&e) {
            return p.clone();
        }
        let val = match e {
            0 => DensePoly::one(self.base.field()),
            1 => self.base.clone(),
            _ => {
                let half = self.get(e / 2);
                let mut v = half.square();
                if e % 2 == 1 {
                    v = v.mul(&self.base);
                }
                v
            }
        };
        let rc = Rc::new(val);
        self.memo.insert(e, rc.clone());
        rc
    }
}

/// Reduction contexts modulo powers of f, memoized by exponent.
struct FPowerContexts<'a> {
    fpow: &'a mut PowerCache,
    memo: HashMap<usize, Rc<ModulusContext>>,
}

impl<'a> FPowerContexts<'a> {
    fn get(&mut self, e: usize) -> Rc<ModulusContext> {
        if let Some(c) = self.memo.get(&e) {
            return c.clone();
        }
        let fm = self.fpow.get(e);
        let ctx = Rc::new(ModulusContext::new((*fm).clone()).expect("monic power"));
        self.memo.insert(e, ctx.clone());
        ctx
    }
}

/// Computes Q = P[f, g, n] = Σ pᵢ(Y) f^i g^(n−1−i) for P with deg_X < n.
/// Output degree stays below ℓn.
pub fn compose(p: &BiPoly, f: &DensePoly, g: &DensePoly, n: usize) -> DensePoly {
    assert!(n >= 1, "n must be positive");
    assert!(p.n() <= n, "X-degree of the input must stay below n");
    let mut fpow = PowerCache::new(f.clone());
    let mut gpow = PowerCache::new(g.clone());
    let g_one = g.is_one();
    compose_rec(p.rows(), n, &mut fpow, &mut gpow, g_one, p.field())
}

fn compose_rec(
    rows: &[DensePoly],
    n: usize,
    fpow: &mut PowerCache,
    gpow: &mut PowerCache,
    g_one: bool,
    field: PrimeField,
) -> DensePoly {
    if n == 1 {
        return rows.first().cloned().unwrap_or_else(|| DensePoly::zero(field));
    }
    let m = n.div_ceil(2);
    let (lo, hi) = rows.split_at(m.min(rows.len()));
    let q0 = compose_rec(lo, m, fpow, gpow, g_one, field);
    let q1 = compose_rec(hi, n - m, fpow, gpow, g_one, field);
    let left = if g_one || q0.is_zero() {
        q0
    } else {
        q0.mul(&gpow.get(n - m))
    };
    let right = if q1.is_zero() {
        q1
    } else {
        q1.mul(&fpow.get(m))
    };
    left.add(&right)
}

/// Inverse of `compose`: reconstructs P with deg_X < n, deg_Y < ℓ from
/// Q = P[f, g, n] of degree < ℓn. Always succeeds on valid relations since
/// {f^i g^(n−1−i) Y^j} spans all degrees below ℓn when gcd(f, g) = 1.
pub fn decompose(q: &DensePoly, rel: &FiberRelation, n: usize) -> BiPoly {
    assert!(n >= 1, "n must be positive");
    let ell = rel.ell();
    assert!(
        q.degree().map_or(true, |d| d < ell * n),
        "input degree must stay below ℓn"
    );
    let mut fpow = PowerCache::new(rel.f.clone());
    let mut gpow = PowerCache::new(rel.g.clone());
    let mut fctx = FPowerContexts {
        fpow: &mut fpow,
        memo: HashMap::new(),
    };
    let mut rows = Vec::with_capacity(n);
    decompose_rec(q.clone(), n, rel, &mut fctx, &mut gpow, &mut rows);
    BiPoly::from_rows(q.field(), ell, rows)
}

fn decompose_rec(
    q: DensePoly,
    n: usize,
    rel: &FiberRelation,
    fctx: &mut FPowerContexts<'_>,
    gpow: &mut PowerCache,
    out: &mut Vec<DensePoly>,
) {
    if n == 1 {
        debug_assert!(q.degree().map_or(true, |d| d < rel.ell()));
        out.push(q);
        return;
    }
    let m = n.div_ceil(2);
    let fm = fctx.fpow.get(m);
    let (q0, q1) = if rel.g.is_one() {
        let (quot, rem) = q.divrem(&fm).expect("nonzero modulus");
        (rem, quot)
    } else {
        let gnm = gpow.get(n - m);
        let u = inverse_mod_f_power(rel, &gnm, n - m, m, fctx);
        let fmctx = fctx.get(m);
        let q_red = fmctx.reduce(&q);
        let q0 = fmctx.mul_mod(&q_red, &u);
        let q1 = q
            .sub(&q0.mul(&gnm))
            .div_exact(&fm)
            .expect("decomposition splits exactly");
        (q0, q1)
    };
    decompose_rec(q0, m, rel, fctx, gpow, out);
    decompose_rec(q1, n - m, rel, fctx, gpow, out);
}

/// 1 / g^e mod f^m: binary powering of h = g⁻¹ mod f, then Newton iteration
/// lifting the inverse from mod f to mod f^m.
fn inverse_mod_f_power(
    rel: &FiberRelation,
    g_e: &DensePoly,
    e: usize,
    m: usize,
    fctx: &mut FPowerContexts<'_>,
) -> DensePoly {
    let f1 = fctx.get(1);
    let mut u = f1.pow_mod(&rel.h, &BigUint::from(e));
    let mut k = 1usize;
    while k < m {
        let k2 = (2 * k).min(m);
        let ctx = fctx.get(k2);
        let g_red = ctx.reduce(g_e);
        let t = ctx.mul_mod(&g_red, &u);
        let two = DensePoly::constant(rel.field(), 2);
        u = ctx.mul_mod(&u, &two.sub(&t));
        k = k2;
    }
    u
}

/// Lift: rewrites an element from the bivariate basis onto the univariate
/// basis modulo the level polynomial S of degree ℓn. The lifted value is
/// A[f, g, n] / g^(n−1) mod S.
pub fn lift_fiber(
    a: &BiPoly,
    rel: &FiberRelation,
    s: &ModulusContext,
    n: usize,
) -> Result<DensePoly> {
    assert_eq!(s.degree(), rel.ell() * n, "level modulus degree must be ℓn");
    let astar = compose(a, &rel.f, &rel.g, n);
    if rel.g.is_one() {
        return Ok(astar);
    }
    let gamma = s.pow_mod(&rel.g, &BigUint::from(n as u64 - 1));
    let gamma_inv = s
        .inv_mod(&gamma)
        .map_err(|_| Error::corrupt("relation denominator not invertible at this level"))?;
    Ok(s.mul_mod(&astar, &gamma_inv))
}

/// Push: inverse of `lift_fiber`. Multiplies by g^(n−1) modulo S and
/// decomposes.
pub fn push_fiber(
    a: &DensePoly,
    rel: &FiberRelation,
    s: &ModulusContext,
    n: usize,
) -> Result<BiPoly> {
    assert_eq!(s.degree(), rel.ell() * n, "level modulus degree must be ℓn");
    assert!(
        a.degree().map_or(true, |d| d < rel.ell() * n),
        "input degree must stay below ℓn"
    );
    let astar = if rel.g.is_one() {
        a.clone()
    } else {
        let gamma = s.pow_mod(&rel.g, &BigUint::from(n as u64 - 1));
        s.mul_mod(a, &gamma)
    };
    Ok(decompose(&astar, rel, n))
}

/// Radical-step lift: pure exponent arithmetic. Grid entry (e, j) moves to
/// the univariate coefficient of index eℓ + j.
pub fn t1_lift(a: &BiPoly) -> DensePoly {
    let ell = a.ell();
    let mut coeffs = vec![0u64; a.n().max(1) * ell];
    for (e, row) in a.rows().iter().enumerate() {
        for j in 0..row.coeffs().len() {
            coeffs[e * ell + j] = row.coeff(j);
        }
    }
    DensePoly::from_coeffs(a.field(), coeffs)
}

/// Radical-step push: the univariate coefficient of index k becomes grid
/// entry (k div ℓ, k mod ℓ).
pub fn t1_push(a: &DensePoly, ell: usize, n: usize) -> BiPoly {
    let field = a.field();
    assert!(
        a.degree().map_or(true, |d| d < ell * n),
        "input degree must stay below ℓn"
    );
    let mut rows = Vec::with_capacity(n);
    for e in 0..n {
        let chunk: Vec<u64> = (0..ell).map(|j| a.coeff(e * ell + j)).collect();
        rows.push(DensePoly::from_coeffs(field, chunk));
    }
    BiPoly::from_rows(field, ell, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn random_relation(field: PrimeField, ell: usize, rng: &mut impl Rng) -> FiberRelation {
        loop {
            let mut fc: Vec<u64> = (0..ell).map(|_| rng.gen_range(0..field.modulus())).collect();
            fc.push(1);
            let fpoly = DensePoly::from_coeffs(field, fc);
            let g = DensePoly::random(field, ell, rng);
            if g.is_zero() {
                continue;
            }
            if let Ok(rel) = FiberRelation::new(fpoly, g) {
                return rel;
            }
        }
    }

    #[test]
    fn compose_trivial_branches() {
        let f5 = f(5);
        let fpoly = DensePoly::from_coeffs(f5, [0, 2, 0, 1]); // Y^3 + 2Y
        let g = DensePoly::from_coeffs(f5, [1, 3]);
        // n = 1 leaves P unchanged
        let p = BiPoly::from_rows(f5, 3, vec![DensePoly::from_coeffs(f5, [1, 2])]);
        assert_eq!(compose(&p, &fpoly, &g, 1), p.row(0));
        // P = X picks out f: p0 = 0, p1 = 1 gives 0·g + 1·f
        let p = BiPoly::from_rows(f5, 3, vec![DensePoly::zero(f5), DensePoly::one(f5)]);
        assert_eq!(compose(&p, &fpoly, &g, 2), fpoly);
    }

    #[test]
    fn compose_linear_example() {
        // P = Y + X, f = Y^3 - 3Y, g = 1, n = 2: p0·g + p1·f = Y + Y^3 - 3Y = Y^3 - 2Y
        let f7 = f(7);
        let fpoly = DensePoly::from_coeffs(f7, [0, 4, 0, 1]); // Y^3 - 3Y mod 7
        let g = DensePoly::one(f7);
        let p = BiPoly::from_rows(f7, 3, vec![DensePoly::x(f7), DensePoly::one(f7)]);
        let q = compose(&p, &fpoly, &g, 2);
        assert_eq!(q, DensePoly::from_coeffs(f7, [0, 5, 0, 1])); // Y^3 - 2Y
    }

    #[test]
    fn decompose_inverts_compose_example() {
        let f7 = f(7);
        let fpoly = DensePoly::from_coeffs(f7, [0, 4, 0, 1]);
        let rel = FiberRelation::new(fpoly, DensePoly::one(f7)).unwrap();
        let q = DensePoly::from_coeffs(f7, [0, 5, 0, 1]); // Y^3 - 2Y
        let p = decompose(&q, &rel, 2);
        let expect = BiPoly::from_rows(f7, 3, vec![DensePoly::x(f7), DensePoly::one(f7)]);
        assert_eq!(p, expect);
    }

    #[test]
    fn roundtrip_random_instances() {
        let f101 = f(101);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for ell in [3usize, 5, 7] {
            for n in [ell, ell * ell] {
                for _ in 0..10 {
                    let rel = random_relation(f101, ell, &mut rng);
                    let p = BiPoly::random(f101, n, ell, &mut rng);
                    let q = compose(&p, rel.f(), rel.g(), n);
                    assert!(q.degree().map_or(true, |d| d < ell * n));
                    let back = decompose(&q, &rel, n);
                    assert_eq!(back, p);
                    // and the other direction
                    let q2 = DensePoly::random(f101, ell * n, &mut rng);
                    let p2 = decompose(&q2, &rel, n);
                    assert!(p2.rows().iter().all(|r| r.degree().map_or(true, |d| d < ell)));
                    assert_eq!(compose(&p2, rel.f(), rel.g(), n), q2);
                }
            }
        }
    }

    #[test]
    fn compose_is_linear() {
        let f13 = f(13);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rel = random_relation(f13, 5, &mut rng);
        for _ in 0..20 {
            let p1 = BiPoly::random(f13, 25, 5, &mut rng);
            let p2 = BiPoly::random(f13, 25, 5, &mut rng);
            let (a, b) = (rng.gen_range(0..13), rng.gen_range(0..13));
            let lhs = compose(&p1.scale(a).add(&p2.scale(b)), rel.f(), rel.g(), 25);
            let rhs = compose(&p1, rel.f(), rel.g(), 25)
                .mul_scalar(a)
                .add(&compose(&p2, rel.f(), rel.g(), 25).mul_scalar(b));
            assert_eq!(lhs, rhs);
        }
    }

    fn random_irreducible(field: PrimeField, deg: usize, rng: &mut impl Rng) -> DensePoly {
        loop {
            let mut c: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..field.modulus())).collect();
            c.push(1);
            let q = DensePoly::from_coeffs(field, c);
            if crate::factor::is_irreducible(&q).unwrap() {
                return q;
            }
        }
    }

    #[test]
    fn lift_push_roundtrip_mod_s() {
        let f101 = f(101);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..10 {
            let rel = random_relation(f101, 3, &mut rng);
            // an irreducible S keeps every nonzero γ invertible
            let n = 9;
            let s = ModulusContext::new(random_irreducible(f101, 27, &mut rng)).unwrap();
            let a = DensePoly::random(f101, 27, &mut rng);
            let b = push_fiber(&a, &rel, &s, n).unwrap();
            let back = lift_fiber(&b, &rel, &s, n).unwrap();
            assert_eq!(back, a);
        }
    }

    #[test]
    fn constants_are_fixed() {
        let f11 = f(11);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rel = random_relation(f11, 3, &mut rng);
        let n = 3;
        // S irreducible-ish not required; pick monic random with invertible g
        let mut sc: Vec<u64> = (0..9).map(|_| rng.gen_range(0..11)).collect();
        sc.push(1);
        let s = ModulusContext::new(DensePoly::from_coeffs(f11, sc)).unwrap();
        let c = BiPoly::from_rows(f11, 3, vec![DensePoly::constant(f11, 7)]);
        if let Ok(lifted) = lift_fiber(&c, &rel, &s, n) {
            assert_eq!(lifted, DensePoly::constant(f11, 7));
        }
        let pushed = push_fiber(&DensePoly::constant(f11, 7), &rel, &s, n);
        if let Ok(pushed) = pushed {
            assert_eq!(pushed.coeff(0, 0), 7);
            for i in 0..n {
                for j in 0..3 {
                    if (i, j) != (0, 0) {
                        assert_eq!(pushed.coeff(i, j), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn t1_paths_match_generic() {
        let f5 = f(5);
        let ell = 3;
        let n = 27;
        let rel = FiberRelation::radical(f5, ell);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        // modulus X^81 - 2 (the actual radical level shape)
        let mut sc = vec![0u64; 81];
        sc[0] = f5.neg(2);
        sc.push(1);
        let s = ModulusContext::new(DensePoly::from_coeffs(f5, sc)).unwrap();
        for _ in 0..100 {
            let a = BiPoly::random(f5, n, ell, &mut rng);
            let fast = t1_lift(&a);
            let generic = lift_fiber(&a, &rel, &s, n).unwrap();
            assert_eq!(fast, generic);
            let u = DensePoly::random(f5, ell * n, &mut rng);
            let fast = t1_push(&u, ell, n);
            let generic = push_fiber(&u, &rel, &s, n).unwrap();
            assert_eq!(fast, generic);
        }
        // grid entry (e, j) lands at exponent e·ℓ + j
        let mut b = BiPoly::zero(f5, n, ell);
        b = {
            let mut rows = b.rows().to_vec();
            rows[4] = DensePoly::from_coeffs(f5, [0, 0, 2]); // X^4 Y^2
            BiPoly::from_rows(f5, ell, rows)
        };
        let lifted = t1_lift(&b);
        assert_eq!(lifted.coeff(4 * 3 + 2), 2);
        assert_eq!(lifted.coeffs().iter().filter(|&&c| c != 0).count(), 1);
    }

    #[test]
    fn frobenius_exponent_sanity() {
        // X^(p^n) = X modulo an irreducible radical modulus, via the generic
        // machinery: lift of the X-slice of x_(i-1) must be a root of the
        // previous-level polynomial.
        let f7 = f(7);
        // tower step: Q1 = X^3 - 3 (3 is a non-cube mod 7), Q2 = X^9 - 3
        let q1 = DensePoly::from_coeffs(f7, [4, 0, 0, 1]);
        let mut q2c = vec![0u64; 9];
        q2c[0] = 4;
        q2c.push(1);
        let q2 = DensePoly::from_coeffs(f7, q2c);
        assert!(crate::factor::is_irreducible(&q1).unwrap());
        assert!(crate::factor::is_irreducible(&q2).unwrap());
        let s = ModulusContext::new(q2).unwrap();
        // x_1 as a bivariate element is the X-slice (e=1, j=0)
        let a = BiPoly::from_base_coeffs(f7, 3, &[0, 1]);
        let lifted = lift_fiber(&a, &FiberRelation::radical(f7, 3), &s, 3).unwrap();
        // evaluate Q1 at the lifted element modulo Q2
        let mut acc = DensePoly::zero(f7);
        for &c in q1.coeffs().iter().rev() {
            acc = s.mul_mod(&acc, &lifted).add(&DensePoly::constant(f7, c));
        }
        assert!(acc.is_zero());
    }
}
