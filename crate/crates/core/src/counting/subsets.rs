//! Subset counts `n_S` and the inclusion–exclusion engine.
//!
//! `n_S` counts functions `f: GF(q) → S` with `Σ_{c ∈ GF(q)} c·f(c) = 0`.
//! Summing `(-1)^(q-|S|)·n_S` over all `S` leaves only the surjective, hence
//! bijective, functions, which is `N`. The closed form
//!
//! ```text
//! n_S = |S|^q / q + (q-1)/q · Π_{b ∈ GF(q)} Σ_{t ∈ S} ζ_p^Tr(b·t)
//! ```
//!
//! is evaluated exactly in `Z[ζ_p]`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{check_limit, SubsetMask, BRUTEFORCE_MAX_FUNCTIONS, INCLEXCL_MAX_Q};
use crate::arith::{binomial, factorial};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::gf::FiniteField;

/// `Σ_{t ∈ S} ζ_p^Tr(b·t)` as an exact cyclotomic integer.
pub fn character_sum(field: &FiniteField, subset: &SubsetMask, b: u32) -> Result<CycInt> {
    subset.check_field(field)?;
    let mut counts = vec![0i64; field.characteristic() as usize];
    for t in subset.iter() {
        counts[field.trace(field.mul(b, t)) as usize] += 1;
    }
    CycInt::from_power_counts(field.characteristic(), &counts)
}

/// Counts `n_S` by enumerating all `|S|^q` functions.
pub fn ns_bruteforce(field: &FiniteField, subset: &SubsetMask) -> Result<BigUint> {
    subset.check_field(field)?;
    let q = field.q();
    let size = subset.len() as u64;
    let total = size.checked_pow(q).unwrap_or(u64::MAX);
    if total > BRUTEFORCE_MAX_FUNCTIONS {
        return Err(Error::RangeExceeded {
            what: "functions to enumerate (|S|^q)",
            limit: BRUTEFORCE_MAX_FUNCTIONS,
            got: total,
        });
    }
    if size == 0 {
        return Ok(BigUint::zero());
    }
    let values: Vec<u32> = subset.iter().collect();

    fn walk(field: &FiniteField, values: &[u32], c: u32, sum: u32) -> u64 {
        if c == field.q() - 1 {
            return values
                .iter()
                .filter(|&&v| field.add(sum, field.mul(c, v)) == 0)
                .count() as u64;
        }
        values
            .iter()
            .map(|&v| walk(field, values, c + 1, field.add(sum, field.mul(c, v))))
            .sum()
    }

    Ok(BigUint::from(walk(field, &values, 0, 0)))
}

/// `n_S` from the exponential-sum closed form, with every division checked.
pub fn ns_formula(field: &FiniteField, subset: &SubsetMask) -> Result<BigUint> {
    subset.check_field(field)?;
    let p = field.characteristic();
    let mut product = CycInt::one(p)?;
    for b in field.elements() {
        product = product.checked_mul(&character_sum(field, subset, b)?)?;
    }
    let product = product.as_integer().map_err(|_| {
        Error::NonIntegerResult(format!("character-sum product for S = {:#x} is irrational", subset.bits()))
    })?;
    let q = BigInt::from(field.q());
    let numerator: BigInt = BigInt::from(subset.len()).pow(field.q()) + (&q - 1u32) * product;
    let (n, r) = numerator.div_rem(&q);
    if !r.is_zero() || n.is_negative() {
        return Err(Error::NonIntegerResult(format!(
            "n_S numerator {numerator} is not a nonnegative multiple of {q}"
        )));
    }
    Ok(n.to_biguint().expect("nonnegative"))
}

/// `N = Σ_S (-1)^(q-|S|) n_S`, with `n_S` from [`ns_formula`].
pub fn count_inclusion_exclusion(field: &FiniteField) -> Result<BigUint> {
    let q = field.q();
    if q == 2 {
        return Err(Error::FieldTooSmall { q: 2 });
    }
    check_limit("inclusion-exclusion q", q, INCLEXCL_MAX_Q)?;
    let total = (0..1u64 << q)
        .into_par_iter()
        .map(|bits| {
            let subset = SubsetMask::new(q, bits)?;
            let ns = BigInt::from(ns_formula(field, &subset)?);
            Ok(if (q - subset.len()) % 2 == 0 { ns } else { -ns })
        })
        .try_reduce(BigInt::zero, |a, b| Ok(a + b))?;
    total
        .to_biguint()
        .ok_or_else(|| Error::NonIntegerResult(format!("inclusion-exclusion total {total} is negative")))
}

/// Checks `Σ_{j=0}^{q} (-1)^(q-j) C(q,j) j^q = q·(q-1)!`, the count of
/// surjections of a `q`-set onto itself.
pub fn surjection_identity_check(q: u64) -> bool {
    assert!(q >= 1, "identity needs a nonempty set");
    let mut sum = BigInt::zero();
    for j in 0..=q {
        let term = BigInt::from(binomial(q, j)) * BigInt::from(j).pow(q as u32);
        if (q - j) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum == BigInt::from(q) * BigInt::from(factorial(q - 1))
}
