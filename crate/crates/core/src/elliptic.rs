//! Towers from cycles of ℓ-isogenies between elliptic curves, for ℓ ∤ p−1.
//!
//! A curve E₀ with ℓ | #E₀ carries a unique rational subgroup of order ℓ
//! (ℓ ∤ p−1 keeps the rational ℓ-torsion cyclic); quotienting by it and
//! repeating walks a cycle E₀ → E₁ → … that returns to the j-invariant of
//! E₀. The whole cycle is precomputed once with Vélu's formulas; the tower
//! then walks it backwards, each level taking the fiber of the previous
//! generator under one isogeny, which has the fiber shape f(Y) − X·g(Y)
//! needed by the lift/push machinery.

use crate::error::{Error, Result};
use crate::factor::SEARCH_CAP;
use crate::field::{Legendre, PrimeField};
use crate::liftpush::FiberRelation;
use crate::poly::DensePoly;
use rand::Rng;
use std::collections::HashMap;

/// Short Weierstrass curve y² = x³ + ax + b with 4a³ + 27b² ≠ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Curve {
    field: PrimeField,
    a: u64,
    b: u64,
}

/// A point of the curve: infinity or affine coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ECPoint {
    Infinity,
    Affine(u64, u64),
}

impl ECPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }

    pub fn x(&self) -> Option<u64> {
        match self {
            ECPoint::Infinity => None,
            ECPoint::Affine(x, _) => Some(*x),
        }
    }
}

impl Curve {
    pub fn new(field: PrimeField, a: u64, b: u64) -> Result<Self> {
        let a = field.reduce(a);
        let b = field.reduce(b);
        let disc = field.add(
            field.mul(field.reduce(4), field.pow(a, 3)),
            field.mul(field.reduce(27), field.mul(b, b)),
        );
        if disc == 0 {
            return Err(Error::invalid("singular curve: 4a³ + 27b² = 0"));
        }
        Ok(Curve { field, a, b })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn a(&self) -> u64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> u64 {
        self.b
    }

    /// x³ + ax + b.
    pub fn rhs(&self, x: u64) -> u64 {
        let f = self.field;
        f.add(f.add(f.pow(x, 3), f.mul(self.a, x)), self.b)
    }

    pub fn contains(&self, p: &ECPoint) -> bool {
        match p {
            ECPoint::Infinity => true,
            ECPoint::Affine(x, y) => self.field.mul(*y, *y) == self.rhs(*x),
        }
    }

    pub fn j_invariant(&self) -> u64 {
        let f = self.field;
        let a3 = f.mul(f.reduce(4), f.pow(self.a, 3));
        let disc = f.add(a3, f.mul(f.reduce(27), f.mul(self.b, self.b)));
        f.mul(f.reduce(1728), f.div(a3, disc).expect("nonsingular"))
    }

    pub fn neg(&self, p: &ECPoint) -> ECPoint {
        match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine(x, y) => ECPoint::Affine(*x, self.field.neg(*y)),
        }
    }

    /// Chord-and-tangent group law.
    pub fn add(&self, p: &ECPoint, q: &ECPoint) -> ECPoint {
        let f = self.field;
        let (x1, y1) = match p {
            ECPoint::Infinity => return *q,
            ECPoint::Affine(x, y) => (*x, *y),
        };
        let (x2, y2) = match q {
            ECPoint::Infinity => return *p,
            ECPoint::Affine(x, y) => (*x, *y),
        };
        let lambda = if x1 == x2 {
            if y1 != y2 || y1 == 0 {
                return ECPoint::Infinity;
            }
            // tangent: (3x² + a) / 2y
            f.div(
                f.add(f.mul(f.reduce(3), f.mul(x1, x1)), self.a),
                f.mul(f.reduce(2), y1),
            )
            .expect("nonzero ordinate")
        } else {
            f.div(f.sub(y2, y1), f.sub(x2, x1)).expect("distinct abscissas")
        };
        let x3 = f.sub(f.sub(f.mul(lambda, lambda), x1), x2);
        let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
        ECPoint::Affine(x3, y3)
    }

    /// [n]P by double-and-add.
    pub fn mul(&self, n: u64, p: &ECPoint) -> ECPoint {
        let mut acc = ECPoint::Infinity;
        let mut base = *p;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Uniformly random affine point.
    pub fn random_point(&self, rng: &mut impl Rng) -> Result<ECPoint> {
        let f = self.field;
        for _ in 0..SEARCH_CAP {
            let x = f.random(rng).value();
            if let Some(y) = f.sqrt(self.rhs(x)) {
                let y = if rng.gen::<bool>() { y } else { f.neg(y) };
                return Ok(ECPoint::Affine(x, y));
            }
        }
        Err(Error::IterationCap {
            what: "curve point sampling",
            cap: SEARCH_CAP,
        })
    }
}

/// Integer square root.
pub(crate) fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).map_or(true, |s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).map_or(false, |s| s <= n) {
        x += 1;
    }
    x
}

/// Exact integer test for ℓ ≤ p + 2√p + 1 (the Hasse feasibility bound).
pub fn hasse_allows(p: u64, ell: u64) -> bool {
    if ell <= p + 1 {
        return true;
    }
    let d = ell - p - 1;
    d.checked_mul(d).map_or(false, |sq| sq <= 4 * p)
}

const EXHAUSTIVE_LIMIT: u64 = 10_000;

/// #E(F_p) including the point at infinity. Exhaustive character sums for
/// p ≤ 10⁴, baby-step giant-step over the Hasse interval above, with extra
/// sample points to disambiguate and an exhaustive fallback when the group
/// exponent is too small to pin the order down.
pub fn point_count(e: &Curve) -> Result<u64> {
    let p = e.field.modulus();
    if p <= EXHAUSTIVE_LIMIT {
        Ok(count_exhaustive(e))
    } else {
        count_bsgs(e)
    }
}

fn count_exhaustive(e: &Curve) -> u64 {
    let f = e.field;
    let p = f.modulus();
    let mut n: i64 = p as i64 + 1;
    for x in 0..p {
        n += match f.legendre(e.rhs(x)) {
            Legendre::Residue => 1,
            Legendre::Zero => 0,
            Legendre::NonResidue => -1,
        };
    }
    n as u64
}

fn count_bsgs(e: &Curve) -> Result<u64> {
    let f = e.field;
    let p = f.modulus();
    let w = isqrt(4 * p);
    let lo = p + 1 - w;
    let hi = p + 1 + w;
    // deterministic point stream keeps counting reproducible
    let mut points = deterministic_points(e);
    let first = points
        .next()
        .ok_or_else(|| Error::corrupt("curve with no affine points"))?;
    let mut candidates = order_multiples_in_interval(e, &first, lo, hi);
    for _ in 0..64 {
        if candidates.len() <= 1 {
            break;
        }
        match points.next() {
            Some(pt) => candidates.retain(|&n| e.mul(n, &pt).is_infinity()),
            None => break,
        }
    }
    match candidates.len() {
        1 => Ok(candidates[0]),
        0 => Err(Error::corrupt("no group order in the Hasse interval")),
        _ => {
            // group exponent smaller than the interval; count directly
            if p <= 50_000_000 {
                Ok(count_exhaustive(e))
            } else {
                Err(Error::IterationCap {
                    what: "point-count disambiguation",
                    cap: 64,
                })
            }
        }
    }
}

/// Affine points with x = 0, 1, 2, …, alternating ordinate signs.
fn deterministic_points(e: &Curve) -> impl Iterator<Item = ECPoint> + '_ {
    let f = e.field;
    (0..f.modulus()).filter_map(move |i| {
        let x = f.reduce(i);
        f.sqrt(e.rhs(x)).map(|y| {
            let y = if i % 2 == 0 { y } else { f.neg(y) };
            ECPoint::Affine(x, y)
        })
    })
}

/// All n in [lo, hi] with [n]P = O, by baby-step giant-step.
fn order_multiples_in_interval(e: &Curve, p: &ECPoint, lo: u64, hi: u64) -> Vec<u64> {
    let width = hi - lo + 1;
    let m = isqrt(width) + 1;
    // baby table: [lo + j]P for j in 0..m
    let mut table: HashMap<ECPoint, Vec<u64>> = HashMap::new();
    let mut cur = e.mul(lo, p);
    for j in 0..m {
        table.entry(cur).or_default().push(j);
        cur = e.add(&cur, p);
    }
    // giant steps: [lo + j + km]P = O means [lo + j]P = [-km]P
    let giant_neg = e.neg(&e.mul(m, p));
    let mut target = ECPoint::Infinity;
    let mut out = Vec::new();
    let mut k = 0u64;
    while lo + k * m <= hi {
        if let Some(js) = table.get(&target) {
            for &j in js {
                let n = lo + j + k * m;
                if n <= hi && e.mul(n, p).is_infinity() {
                    out.push(n);
                }
            }
        }
        target = e.add(&target, &giant_neg);
        k += 1;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// ℓ-adic valuation of n.
pub fn valuation(mut n: u64, ell: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % ell == 0 {
        n /= ell;
        v += 1;
    }
    v
}

/// Finds a curve usable as the base of an ℓ-adic tower: ℓ | #E, ordinary,
/// j ∉ {0, 1728}. Requires ℓ ∤ p−1, ℓ ≠ p and the Hasse bound to leave room
/// for ℓ | #E.
pub fn find_curve(field: PrimeField, ell: u64, rng: &mut impl Rng) -> Result<Curve> {
    Ok(find_curve_with_count(field, ell, rng)?.0)
}

pub(crate) fn find_curve_with_count(
    field: PrimeField,
    ell: u64,
    rng: &mut impl Rng,
) -> Result<(Curve, u64)> {
    let p = field.modulus();
    if p < 5 {
        return Err(Error::invalid("towers require p ≥ 5"));
    }
    if ell < 3 || !crate::field::is_prime_u64(ell) || ell == p {
        return Err(Error::invalid("ℓ must be an odd prime different from p"));
    }
    if (p - 1) % ell == 0 {
        return Err(Error::invalid("this construction requires ℓ ∤ p−1"));
    }
    if !hasse_allows(p, ell) {
        return Err(Error::invalid(format!(
            "ℓ = {ell} exceeds the Hasse bound p + 2√p + 1 for p = {p}"
        )));
    }
    // Prefer j ∉ {0, 1728} (trivial automorphisms); for some small (p, ℓ)
    // every ordinary curve with ℓ | #E has extra automorphisms, so a second
    // pass admits those. Supersingular curves stay excluded: their quadratic
    // twist has the same point count, so the cycle may close on a curve that
    // is not rationally isomorphic to the start.
    for allow_special_j in [false, true] {
        let cap = 64 * ell; // a fraction ≈ 1/ℓ of curves qualifies
        for _ in 0..cap {
            let (a, b) = if allow_special_j {
                let a = field.random(rng).value();
                let b = field.random(rng).value();
                (a, b)
            } else {
                (
                    field.random_nonzero(rng).value(),
                    field.random_nonzero(rng).value(),
                )
            };
            let curve = match Curve::new(field, a, b) {
                Ok(c) => c,
                Err(_) => continue,
            };
            let n = point_count(&curve)?;
            let trace = (p + 1) as i64 - n as i64;
            if trace != 0 && n % ell == 0 {
                return Ok((curve, n));
            }
        }
    }
    Err(Error::IterationCap {
        what: "curve search",
        cap: 128 * ell,
    })
}

/// All roots of X^k − c over F_p, for tiny k: take the gcd with X^p − X and
/// split off roots one linear factor at a time.
fn kth_roots(field: PrimeField, c: u64, k: usize, rng: &mut impl Rng) -> Vec<u64> {
    let p = field.modulus();
    if p <= 100_000 {
        return (0..p).filter(|&u| field.pow(u, k as u64) == c).collect();
    }
    let poly = {
        let mut coeffs = vec![0u64; k + 1];
        coeffs[0] = field.neg(c);
        coeffs[k] = 1;
        DensePoly::from_coeffs(field, coeffs)
    };
    let ctx = match crate::poly::ModulusContext::new(poly.clone()) {
        Ok(ctx) => ctx,
        Err(_) => return Vec::new(),
    };
    let frob = ctx.pow_mod(&DensePoly::x(field), &num_bigint::BigUint::from(p));
    let mut linear_part = match poly.gcd(&frob.sub(&DensePoly::x(field))) {
        Ok(g) => g,
        Err(_) => return Vec::new(),
    };
    let mut roots = Vec::new();
    while let Some(d) = linear_part.degree() {
        if d == 0 {
            break;
        }
        if d == 1 {
            roots.push(field.neg(linear_part.coeff(0)));
            break;
        }
        match crate::factor::factor_equal_degree(&linear_part, 1, rng) {
            Ok(lin) => {
                roots.push(field.neg(lin.coeff(0)));
                linear_part = linear_part.div_exact(&lin).expect("factor divides");
            }
            Err(_) => break,
        }
    }
    roots.sort_unstable();
    roots
}

/// Abscissa of a point of order exactly ℓ^e, where ℓ^e ∥ n.
pub fn torsion_abscissa(
    curve: &Curve,
    ell: u64,
    e: u32,
    n: u64,
    rng: &mut impl Rng,
) -> Result<u64> {
    if e == 0 || valuation(n, ell) != e {
        return Err(Error::invalid("requires ℓ^e ∥ #E with e ≥ 1"));
    }
    let cofactor = n / ell.pow(e);
    for _ in 0..SEARCH_CAP {
        let r = curve.random_point(rng)?;
        let p = curve.mul(cofactor, &r);
        // p has order dividing ℓ^e; exactly ℓ^e iff [ℓ^(e-1)]p ≠ O
        if !curve.mul(ell.pow(e - 1), &p).is_infinity() {
            return Ok(p.x().expect("nontrivial point is affine"));
        }
    }
    Err(Error::IterationCap {
        what: "torsion point search",
        cap: SEARCH_CAP,
    })
}

/// Monic polynomial vanishing on the abscissas of the nontrivial points of
/// the unique order-ℓ subgroup: h = Π (X − x([k]T)), k = 1 … (ℓ−1)/2.
pub fn kernel_poly(curve: &Curve, ell: u64, n: u64, rng: &mut impl Rng) -> Result<DensePoly> {
    if n % ell != 0 {
        return Err(Error::invalid("ℓ must divide #E"));
    }
    let field = curve.field;
    let cofactor = n / ell;
    let mut t = ECPoint::Infinity;
    for _ in 0..SEARCH_CAP {
        let r = curve.random_point(rng)?;
        t = curve.mul(cofactor, &r);
        if !t.is_infinity() {
            break;
        }
    }
    if t.is_infinity() {
        return Err(Error::IterationCap {
            what: "order-ℓ point search",
            cap: SEARCH_CAP,
        });
    }
    let mut h = DensePoly::one(field);
    let mut multiple = t;
    for _ in 0..(ell - 1) / 2 {
        let x = multiple.x().expect("kernel points below order ℓ are affine");
        h = h.mul(&DensePoly::from_coeffs(field, [field.neg(x), 1]));
        multiple = curve.add(&multiple, &t);
    }
    Ok(h)
}

/// One ℓ-isogeny given by Vélu's formulas: x ↦ f(x)/g(x) with g = h² (up to
/// the closing-isomorphism scale) and y ↦ y_scale · y · (f/g)'(x).
#[derive(Debug, Clone)]
pub struct IsogenyStep {
    domain: Curve,
    codomain: Curve,
    f: DensePoly,
    g: DensePoly,
    h: DensePoly,
    y_scale: u64,
}

impl IsogenyStep {
    #[inline]
    pub fn domain(&self) -> &Curve {
        &self.domain
    }

    #[inline]
    pub fn codomain(&self) -> &Curve {
        &self.codomain
    }

    #[inline]
    pub fn f(&self) -> &DensePoly {
        &self.f
    }

    #[inline]
    pub fn g(&self) -> &DensePoly {
        &self.g
    }

    /// Kernel polynomial (monic, degree (ℓ−1)/2).
    #[inline]
    pub fn kernel(&self) -> &DensePoly {
        &self.h
    }

    #[inline]
    pub fn y_scale(&self) -> u64 {
        self.y_scale
    }

    /// Evaluates the isogeny at a point of the domain.
    pub fn apply(&self, p: &ECPoint) -> ECPoint {
        let field = self.domain.field;
        let (x, y) = match p {
            ECPoint::Infinity => return ECPoint::Infinity,
            ECPoint::Affine(x, y) => (*x, *y),
        };
        let gx = self.g.eval(x);
        if gx == 0 {
            return ECPoint::Infinity;
        }
        let fx = self.f.eval(x);
        let image_x = field.div(fx, gx).expect("nonzero denominator");
        // (f/g)' = (f'g − fg') / g²
        let num = field.sub(
            field.mul(self.f.derivative().eval(x), gx),
            field.mul(fx, self.g.derivative().eval(x)),
        );
        let deriv = field
            .div(num, field.mul(gx, gx))
            .expect("nonzero denominator");
        let image_y = field.mul(self.y_scale, field.mul(y, deriv));
        ECPoint::Affine(image_x, image_y)
    }
}

/// Vélu's formulas from the kernel polynomial alone, using the first three
/// power sums of the kernel abscissas.
pub fn velu(curve: &Curve, h: &DensePoly, ell: u64) -> Result<IsogenyStep> {
    let field = curve.field;
    let d = (ell - 1) / 2;
    if h.degree() != Some(d as usize) || !h.is_monic() {
        return Err(Error::invalid("kernel polynomial must be monic of degree (ℓ−1)/2"));
    }
    let d_red = field.reduce(d);
    let du = d as usize;
    // elementary symmetric functions from the coefficients of h
    let e1 = if du >= 1 { field.neg(h.coeff(du - 1)) } else { 0 };
    let e2 = if du >= 2 { h.coeff(du - 2) } else { 0 };
    let e3 = if du >= 3 { field.neg(h.coeff(du - 3)) } else { 0 };
    // Newton identities
    let p1 = e1;
    let p2 = field.sub(field.mul(e1, p1), field.mul(field.reduce(2), e2));
    let p3 = field.add(
        field.sub(field.mul(e1, p2), field.mul(e2, p1)),
        field.mul(field.reduce(3), e3),
    );
    let (a, b) = (curve.a, curve.b);
    let v = field.add(
        field.mul(field.reduce(6), p2),
        field.mul(field.reduce(2), field.mul(a, d_red)),
    );
    let w = field.add(
        field.mul(field.reduce(10), p3),
        field.add(
            field.mul(field.reduce(6), field.mul(a, p1)),
            field.mul(field.reduce(4), field.mul(b, d_red)),
        ),
    );
    let a_new = field.sub(a, field.mul(field.reduce(5), v));
    let b_new = field.sub(b, field.mul(field.reduce(7), w));
    let codomain = Curve::new(field, a_new, b_new)
        .map_err(|_| Error::corrupt("isogeny image is singular: malformed kernel"))?;

    // x-map numerator: f = (ℓX − 2p1)h² − 2(r'h' + 2rh'')h + 4r(h')²,
    // with r = X³ + aX + b. Monic of degree ℓ by construction.
    let rhs = DensePoly::from_coeffs(field, [b, a, 0, 1]);
    let rhs_d = rhs.derivative();
    let hp = h.derivative();
    let hpp = hp.derivative();
    let lin = DensePoly::from_coeffs(field, [field.neg(field.mul(field.reduce(2), p1)), field.reduce(ell)]);
    let g = h.mul(h);
    let term1 = lin.mul(&g);
    let term2 = rhs_d
        .mul(&hp)
        .add(&rhs.mul(&hpp).mul_scalar(2))
        .mul(h)
        .mul_scalar(2);
    let term3 = rhs.mul(&hp.square()).mul_scalar(4);
    let f = term1.sub(&term2).add(&term3);
    if f.degree() != Some(ell as usize) || !f.is_monic() {
        return Err(Error::corrupt("isogeny numerator has unexpected shape"));
    }
    if !f.gcd(&g)?.is_one() {
        return Err(Error::corrupt("isogeny fraction is not reduced: malformed kernel"));
    }
    Ok(IsogenyStep {
        domain: *curve,
        codomain,
        f,
        g,
        h: h.clone(),
        y_scale: 1,
    })
}

/// The precomputed closed cycle of ℓ-isogenies starting and ending at E₀.
#[derive(Debug, Clone)]
pub struct IsogenyCycle {
    steps: Vec<IsogenyStep>,
    twist_u: u64,
    duplicate_j: bool,
}

impl IsogenyCycle {
    #[inline]
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    #[inline]
    pub fn steps(&self) -> &[IsogenyStep] {
        &self.steps
    }

    /// Twist scalar closing the cycle (u = 1 when the walk lands exactly on E₀).
    #[inline]
    pub fn twist_u(&self) -> u64 {
        self.twist_u
    }

    /// True when a j-invariant repeated before the cycle closed; diagnostic
    /// only.
    #[inline]
    pub fn duplicate_j(&self) -> bool {
        self.duplicate_j
    }
}

/// Walks forward with Vélu steps until the j-invariant of E₀ reappears, then
/// folds the closing isomorphism (x, y) ↦ (u²x, u³y) into the final step so
/// its codomain is literally E₀.
pub fn build_cycle(e0: &Curve, ell: u64, n: u64, rng: &mut impl Rng) -> Result<IsogenyCycle> {
    let field = e0.field;
    let p = field.modulus();
    let cap = 4 * (isqrt(p) + 1) * (64 - p.leading_zeros() as u64 + 1);
    let j0 = e0.j_invariant();
    let mut steps: Vec<IsogenyStep> = Vec::new();
    let mut seen = vec![j0];
    let mut duplicate_j = false;
    let mut cur = *e0;
    loop {
        let h = kernel_poly(&cur, ell, n, rng)?;
        let step = velu(&cur, &h, ell)?;
        let next = *step.codomain();
        steps.push(step);
        let j = next.j_invariant();
        if j == j0 {
            break;
        }
        if seen.contains(&j) {
            duplicate_j = true;
        }
        seen.push(j);
        cur = next;
        if steps.len() as u64 > cap {
            return Err(Error::IterationCap {
                what: "isogeny cycle closure",
                cap,
            });
        }
    }
    // closing isomorphism (x, y) ↦ (u²x, u³y): u⁴ = a₀/a_n and u⁶ = b₀/b_n.
    // Equal j-invariants force a_n = 0 iff a₀ = 0 (same for b), so one of
    // the constraints is always available to enumerate candidates.
    let en = *steps.last().expect("at least one step").codomain();
    let (a0, b0) = (e0.a, e0.b);
    let (an, bn) = (en.a, en.b);
    let candidates = if an != 0 {
        kth_roots(field, field.div(a0, an).expect("nonzero"), 4, rng)
    } else {
        kth_roots(field, field.div(b0, bn).expect("j = 1728 has b ≠ 0"), 6, rng)
    };
    let u = candidates
        .into_iter()
        .find(|&u| {
            field.mul(an, field.pow(u, 4)) == a0 && field.mul(bn, field.pow(u, 6)) == b0
        })
        .ok_or_else(|| {
            Error::corrupt("cycle closed on a twist of the start curve with no rational isomorphism")
        })?;
    let u2 = field.mul(u, u);
    // compose: x ↦ u²·f/g = f / (u⁻²·g), keeping f monic
    let last = steps.last_mut().expect("at least one step");
    let u2_inv = field.inv(u2).expect("nonzero");
    last.g = last.g.mul_scalar(u2_inv);
    last.codomain = *e0;
    last.y_scale = u;
    Ok(IsogenyCycle {
        steps,
        twist_u: u,
        duplicate_j,
    })
}

/// The relation for tower step i ≥ 1: walking backwards, step −i is cycle
/// step n − 1 − ((i−1) mod n). Returns (f₋ᵢ, g₋ᵢ) as a fiber relation.
pub fn backward_relation(cycle: &IsogenyCycle, i: usize) -> Result<FiberRelation> {
    if i == 0 {
        return Err(Error::invalid("backward steps are indexed from 1"));
    }
    let n = cycle.len();
    let idx = n - 1 - ((i - 1) % n);
    let step = &cycle.steps[idx];
    FiberRelation::new(step.f.clone(), step.g.clone())
}

/// Everything the tower needs from the elliptic construction.
#[derive(Debug, Clone)]
pub struct EllipticInit {
    curve: Curve,
    cycle: IsogenyCycle,
    eta: u64,
    e: u32,
    n_points: u64,
    ell: u64,
}

impl EllipticInit {
    #[inline]
    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    #[inline]
    pub fn cycle(&self) -> &IsogenyCycle {
        &self.cycle
    }

    /// Abscissa of the chosen point of order ℓ^e on E₀.
    #[inline]
    pub fn eta(&self) -> u64 {
        self.eta
    }

    /// ℓ-adic valuation of #E₀.
    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn n_points(&self) -> u64 {
        self.n_points
    }

    #[inline]
    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// Rebuilds validated init data from its parts (used when loading a
    /// saved tower).
    pub fn from_parts(
        curve: Curve,
        steps: Vec<IsogenyStep>,
        twist_u: u64,
        eta: u64,
        e: u32,
        n_points: u64,
        ell: u64,
    ) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::invalid("isogeny cycle cannot be empty"));
        }
        if e == 0 || valuation(n_points, ell) != e {
            return Err(Error::invalid("ℓ-adic valuation of #E does not match e"));
        }
        for pair in steps.windows(2) {
            if pair[0].codomain != pair[1].domain {
                return Err(Error::invalid("isogeny cycle is not domain/codomain chained"));
            }
        }
        if steps[0].domain != curve || steps.last().expect("nonempty").codomain != curve {
            return Err(Error::invalid("cycle does not start and end at the base curve"));
        }
        Ok(EllipticInit {
            curve,
            cycle: IsogenyCycle {
                steps,
                twist_u,
                duplicate_j: false,
            },
            eta,
            e,
            n_points,
            ell,
        })
    }
}

/// Builds an `IsogenyStep` from stored data, revalidating the shape.
pub fn isogeny_step_from_parts(
    domain: Curve,
    codomain: Curve,
    f: DensePoly,
    g: DensePoly,
    h: DensePoly,
    y_scale: u64,
) -> Result<IsogenyStep> {
    if f.degree().is_none() || !f.is_monic() {
        return Err(Error::invalid("stored isogeny numerator must be monic"));
    }
    if !f.gcd(&g).map_or(false, |d| d.is_one()) {
        return Err(Error::invalid("stored isogeny fraction is not reduced"));
    }
    Ok(IsogenyStep {
        domain,
        codomain,
        f,
        g,
        h,
        y_scale,
    })
}

/// Full initialization: curve search, point count, torsion abscissa and the
/// precomputed cycle. Retries the curve search a few times if a degenerate
/// cycle closure shows up.
pub fn elliptic_init(field: PrimeField, ell: u64, rng: &mut impl Rng) -> Result<EllipticInit> {
    let mut last_err = None;
    for _ in 0..8 {
        let (curve, n) = find_curve_with_count(field, ell, rng)?;
        let e = valuation(n, ell);
        let eta = torsion_abscissa(&curve, ell, e, n, rng)?;
        match build_cycle(&curve, ell, n, rng) {
            Ok(cycle) => {
                return Ok(EllipticInit {
                    curve,
                    cycle,
                    eta,
                    e,
                    n_points: n,
                    ell,
                })
            }
            Err(err) => last_err = Some(err),
        }
    }
    Err(last_err.unwrap_or(Error::IterationCap {
        what: "elliptic initialization",
        cap: 8,
    }))
}
