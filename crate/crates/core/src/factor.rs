//! Irreducibility testing and the factorization utilities the tower
//! constructions rely on: the Rabin test, cyclotomic polynomials,
//! equal-degree splitting and minimal polynomials in quotient rings.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::{prime_power, DensePoly, ModulusContext};
use num_bigint::BigUint;
use rand::Rng;

/// Iteration cap for the randomized searches in this module.
pub const SEARCH_CAP: u64 = 1_000_000;

/// Rabin irreducibility test: Q of degree n is irreducible over F_p iff
/// X^(p^n) ≡ X (mod Q) and gcd(X^(p^(n/t)) − X, Q) = 1 for every prime t | n.
pub fn is_irreducible(q: &DensePoly) -> Result<bool> {
    let n = match q.degree() {
        None | Some(0) => return Err(Error::invalid("irreducibility needs degree ≥ 1")),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let f = q.field();
    let monic = q.make_monic()?;
    let ctx = ModulusContext::new(monic.clone())?;
    let x = DensePoly::x(f);
    let frob_n = ctx.pow_mod(&x, &prime_power(f.modulus(), n));
    if frob_n != ctx.reduce(&x) {
        return Ok(false);
    }
    for t in distinct_prime_factors(n) {
        let h = ctx.pow_mod(&x, &prime_power(f.modulus(), n / t)).sub(&x);
        if h.is_zero() {
            return Ok(false);
        }
        if !monic.gcd(&h)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn distinct_prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The ℓ-th cyclotomic polynomial 1 + X + … + X^(ℓ−1) reduced mod p,
/// for a prime ℓ different from p.
pub fn cyclotomic(field: PrimeField, ell: u64) -> Result<DensePoly> {
    if !crate::field::is_prime_u64(ell) {
        return Err(Error::invalid(format!("{ell} is not prime")));
    }
    if ell == field.modulus() {
        return Err(Error::invalid("cyclotomic index equal to the characteristic"));
    }
    Ok(DensePoly::from_coeffs(field, std::iter::repeat(1).take(ell as usize)))
}

/// Cantor–Zassenhaus equal-degree splitting: given a squarefree `poly` whose
/// irreducible factors all have degree `r`, returns one monic irreducible
/// factor of degree r. Randomized; fails only if the iteration cap is hit,
/// which indicates a violated precondition.
pub fn factor_equal_degree(
    poly: &DensePoly,
    r: usize,
    rng: &mut impl Rng,
) -> Result<DensePoly> {
    let f = poly.field();
    let deg = poly
        .degree()
        .ok_or_else(|| Error::invalid("cannot factor the zero polynomial"))?;
    if deg == 0 || deg % r != 0 {
        return Err(Error::invalid("degree is not a multiple of the factor degree"));
    }
    let mut current = poly.make_monic()?;
    // Exponent (p^r − 1)/2 classifies elements of the degree-r factor fields.
    let exp = (prime_power(f.modulus(), r) - BigUint::from(1u32)) / BigUint::from(2u32);
    let mut tries = 0u64;
    while current.degree_nonzero() > r {
        tries += 1;
        if tries > SEARCH_CAP {
            return Err(Error::IterationCap {
                what: "equal-degree splitting",
                cap: SEARCH_CAP,
            });
        }
        let ctx = ModulusContext::new(current.clone())?;
        let a = DensePoly::random(f, current.degree_nonzero(), rng);
        if a.degree().map_or(true, |d| d == 0) {
            continue;
        }
        let g1 = current.gcd(&a)?;
        if !g1.is_one() {
            current = pick_smaller_side(&current, &g1)?;
            continue;
        }
        let b = ctx.pow_mod(&a, &exp).sub(&DensePoly::one(f));
        if b.is_zero() {
            continue;
        }
        let g = current.gcd(&b)?;
        if g.is_one() || g.degree() == current.degree() {
            continue;
        }
        current = pick_smaller_side(&current, &g)?;
    }
    Ok(current)
}

/// Keeps whichever of `g` and `poly`/`g` is smaller while staying a
/// multiple of one irreducible degree-r factor.
fn pick_smaller_side(poly: &DensePoly, g: &DensePoly) -> Result<DensePoly> {
    let other = poly.div_exact(g)?;
    let dg = g.degree_nonzero();
    let do_ = other.degree_nonzero();
    Ok(if dg <= do_ { g.clone() } else { other })
}

/// Monic minimal polynomial over F_p of the residue class `alpha` in
/// F_p[X]/(Q), searching degrees up to `bound`. Found by Gaussian
/// elimination on the powers 1, α, α², …
pub fn minpoly_in_quotient(alpha: &DensePoly, ctx: &ModulusContext, bound: usize) -> DensePoly {
    let f = ctx.field();
    let n = ctx.degree();
    let alpha = ctx.reduce(alpha);
    // Row-reduced basis of the span of the powers seen so far, plus the
    // combination of original powers producing each basis row.
    let mut basis: Vec<(Vec<u64>, Vec<u64>)> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut power = DensePoly::one(f);
    for k in 0..=bound.min(n) {
        let mut row: Vec<u64> = (0..n).map(|i| power.coeff(i)).collect();
        let mut combo = vec![0u64; k + 1];
        combo[k] = 1;
        // reduce against existing rows
        for (idx, (b_row, b_combo)) in basis.iter().enumerate() {
            let pc = pivots[idx];
            let c = row[pc];
            if c != 0 {
                for i in 0..n {
                    row[i] = f.sub(row[i], f.mul(c, b_row[i]));
                }
                for (i, &bc) in b_combo.iter().enumerate() {
                    if i < combo.len() {
                        combo[i] = f.sub(combo[i], f.mul(c, bc));
                    }
                }
            }
        }
        match row.iter().position(|&c| c != 0) {
            Some(pivot) => {
                let inv = f.inv(row[pivot]).expect("nonzero pivot");
                for c in row.iter_mut() {
                    *c = f.mul(*c, inv);
                }
                for c in combo.iter_mut() {
                    *c = f.mul(*c, inv);
                }
                basis.push((row, combo));
                pivots.push(pivot);
            }
            None => {
                // α^k is a combination of lower powers: combo gives the
                // minimal polynomial directly (leading coefficient at k).
                let lead_inv = f.inv(combo[k]).expect("leading term survives");
                let coeffs: Vec<u64> = combo.iter().map(|&c| f.mul(c, lead_inv)).collect();
                return DensePoly::from_coeffs(f, coeffs);
            }
        }
        power = ctx.mul_mod(&power, &alpha);
    }
    // bound = n always terminates above since n+1 vectors in an
    // n-dimensional space are dependent; reaching here means bound < true degree.
    DensePoly::zero(f)
}
