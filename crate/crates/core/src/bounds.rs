//! The inequality chain bounding `|N - (q-1)!|`, checked numerically.
//!
//! ```text
//! |N - (q-1)!| ≤ (q-1)/(2q) Σ_S |q - 2|S|| Π_{b≠0} |Σ_{t∈S} ζ^Tr(bt)|     (weyl chain)
//!              ≤ (q-1)/(2q(q-1)^((q-1)/2)) Σ_j C(q,j) |q-2j| ((q-j)j)^((q-1)/2)
//!              ≤ sqrt(2e/π) q^(q/2)
//! ```
//!
//! Real-valued links are compared with [`RELATIVE_SLACK`]; the algebraic
//! identities along the way (Parseval, the binomial sum) are checked exactly.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial, factorial};
use crate::counting::{character_sum, check_limit, SubsetMask, INCLEXCL_MAX_Q};
use crate::cyclotomic::CycInt;
use crate::error::Result;
use crate::gf::FiniteField;

pub const RELATIVE_SLACK: f64 = 1e-9;

/// Largest `q` for the subset sweep in [`bravoigor_rhs`].
pub const WEYL_SWEEP_MAX_Q: u32 = INCLEXCL_MAX_Q;

/// `sqrt(2e/π)`, the constant proved in front of `q^(q/2)`.
pub fn theorem_constant() -> f64 {
    (2.0 * std::f64::consts::E / std::f64::consts::PI).sqrt()
}

/// `sqrt(e/(2π))`, the smaller constant suggested by computation.
pub fn conjectured_constant() -> f64 {
    (std::f64::consts::E / (2.0 * std::f64::consts::PI)).sqrt()
}

/// `q^(q/2)` as `exp((q/2) ln q)`.
pub fn half_power(q: u64) -> f64 {
    (q as f64 / 2.0 * (q as f64).ln()).exp()
}

pub fn theorem_rhs(q: u64) -> f64 {
    theorem_constant() * half_power(q)
}

/// `a ≤ b` up to [`RELATIVE_SLACK`].
pub fn le_with_slack(a: f64, b: f64) -> bool {
    a <= b + RELATIVE_SLACK * a.abs().max(b.abs())
}

fn roots_of_unity(p: u32) -> Vec<Complex64> {
    (0..p)
        .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / p as f64))
        .collect()
}

/// `Σ_b |Σ_{t∈S} ζ^Tr(bt)|² = q|S|` and its `b ≠ 0` form `(q - |S|)|S|`,
/// both in exact cyclotomic arithmetic.
pub fn parseval_check(field: &FiniteField, subset: &SubsetMask) -> Result<bool> {
    subset.check_field(field)?;
    let p = field.characteristic();
    let mut nonzero = CycInt::zero(p)?;
    let mut at_zero = CycInt::zero(p)?;
    for b in field.elements() {
        let s = character_sum(field, subset, b)?;
        let sq = s.checked_mul(&s.conjugate())?;
        if b == 0 {
            at_zero = sq;
        } else {
            nonzero = nonzero.checked_add(&sq)?;
        }
    }
    let q = field.q() as i64;
    let size = subset.len() as i64;
    let total = nonzero.checked_add(&at_zero)?;
    Ok(total == CycInt::from_integer(p, q * size)? && nonzero == CycInt::from_integer(p, (q - size) * size)?)
}

/// `Π_{b≠0} |Σ_{t∈S} ζ^Tr(bt)|` in double precision.
pub fn weyl_product(field: &FiniteField, subset: &SubsetMask) -> Result<f64> {
    subset.check_field(field)?;
    let roots = roots_of_unity(field.characteristic());
    Ok(weyl_product_with(field, subset, &roots))
}

fn weyl_product_with(field: &FiniteField, subset: &SubsetMask, roots: &[Complex64]) -> f64 {
    let elements: Vec<u32> = subset.iter().collect();
    let mut counts = vec![0u32; roots.len()];
    let mut product = 1.0;
    for b in 1..field.q() {
        counts.iter_mut().for_each(|c| *c = 0);
        for &t in &elements {
            counts[field.trace(field.mul(b, t)) as usize] += 1;
        }
        // Σ a_k ζ^k vanishes exactly when all a_k agree
        if counts.iter().all(|&c| c == counts[0]) {
            return 0.0;
        }
        let s: Complex64 = counts.iter().zip(roots).map(|(&c, &r)| r * c as f64).sum();
        product *= s.norm();
    }
    product
}

/// Geometric mean against arithmetic mean:
/// `weyl_product(S) ≤ ((q - |S|)|S| / (q - 1))^((q-1)/2)`.
pub fn amgm_check(field: &FiniteField, subset: &SubsetMask) -> Result<bool> {
    let lhs = weyl_product(field, subset)?;
    let q = field.q() as f64;
    let size = subset.len() as f64;
    let rhs = ((q - size) * size / (q - 1.0)).powf((q - 1.0) / 2.0);
    Ok(le_with_slack(lhs, rhs))
}

/// Sums in a fixed binary tree so the result does not depend on how the
/// terms were produced.
fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// `(q-1)/(2q) · Σ_S |q - 2|S|| · weyl_product(S)` over all `2^q` subsets.
pub fn bravoigor_rhs(field: &FiniteField) -> Result<f64> {
    let q = field.q();
    check_limit("weyl subset sweep q", q, WEYL_SWEEP_MAX_Q)?;
    let roots = roots_of_unity(field.characteristic());
    let terms: Vec<f64> = (0..1u64 << q)
        .into_par_iter()
        .map(|bits| {
            let s = SubsetMask::new(q, bits).expect("bits below 2^q");
            let weight = (q as i64 - 2 * s.len() as i64).abs() as f64;
            if weight == 0.0 {
                0.0
            } else {
                weight * weyl_product_with(field, &s, &roots)
            }
        })
        .collect();
    let qf = q as f64;
    Ok((qf - 1.0) / (2.0 * qf) * pairwise_sum(&terms))
}

/// The subset sweep after the AM–GM step, grouped by `|S| = j`.
pub fn fine_rhs(q: u64) -> f64 {
    assert!((1..=64).contains(&q), "fine_rhs supports 1 ≤ q ≤ 64");
    let qf = q as f64;
    let exponent = (qf - 1.0) / 2.0;
    let terms: Vec<f64> = (0..=q)
        .map(|j| {
            let c = binomial(q, j).to_f64().expect("fits in f64");
            let weight = (q as i64 - 2 * j as i64).abs() as f64;
            c * weight * (((q - j) * j) as f64).powf(exponent)
        })
        .collect();
    (qf - 1.0) / (2.0 * qf * (qf - 1.0).powf(exponent)) * pairwise_sum(&terms)
}

/// `Σ_j C(q,j)|q - 2j| = 2q·C(q-1, ⌊q/2⌋)`, exactly.
pub fn binom_sum_identity(q: u64) -> bool {
    assert!(q >= 1);
    let lhs: BigUint = (0..=q)
        .map(|j| binomial(q, j) * (q as i64 - 2 * j as i64).unsigned_abs())
        .sum();
    lhs == binomial(q - 1, q / 2) * (2 * q)
}

/// `C(2n, n) ≤ sqrt(2/π)·4^n / sqrt(2n + 1/2)`.
pub fn central_binom_check(n: u64) -> bool {
    assert!((1..=128).contains(&n), "central_binom_check supports 1 ≤ n ≤ 128");
    let exact = binomial(2 * n, n).to_f64().expect("fits in f64");
    let bound = (2.0 / std::f64::consts::PI).sqrt() * 4f64.powi(n as i32) / (2.0 * n as f64 + 0.5).sqrt();
    exact <= bound
}

/// `C(q-1, ⌊q/2⌋) ≤ sqrt(2/π)·2^(q-1) / sqrt(q - 1/2)`.
pub fn half_binom_check(q: u64) -> bool {
    assert!((2..=64).contains(&q), "half_binom_check supports 2 ≤ q ≤ 64");
    let exact = binomial(q - 1, q / 2).to_f64().expect("fits in f64");
    let bound = (2.0 / std::f64::consts::PI).sqrt() * 2f64.powi(q as i32 - 1) / (q as f64 - 0.5).sqrt();
    exact <= bound
}

/// The two closing scalar inequalities:
/// `(q-1)/(sqrt(q-1/2)·sqrt(q)) < 1` and `(q/(q-1))^((q-1)/2) < sqrt(e)`.
pub fn scalar_checks(q: u64) -> bool {
    let qf = q as f64;
    let first = (qf - 1.0) / ((qf - 0.5).sqrt() * qf.sqrt()) < 1.0;
    let second = (qf / (qf - 1.0)).powf((qf - 1.0) / 2.0) < std::f64::consts::E.sqrt();
    first && second
}

/// Everything known about the bound at one `q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub q: u64,
    #[serde(rename = "N", serialize_with = "as_decimal")]
    pub n: BigUint,
    /// `|N - (q-1)!|`.
    #[serde(serialize_with = "as_decimal")]
    pub deviation: BigUint,
    /// `None` when the field is too large for the subset sweep.
    pub bravoigor_rhs: Option<f64>,
    pub fine_rhs: f64,
    pub theorem_rhs: f64,
    /// `|N - (q-1)!| / q^(q/2)`.
    pub empirical_constant: f64,
    /// `fine_rhs / q^(q/2)`.
    pub fine_constant: f64,
    pub theorem_holds: bool,
    pub scalar_checks_hold: bool,
    /// `None` for `q = 2`, which lies outside the chain's hypothesis.
    pub chain_holds: Option<bool>,
}

fn as_decimal<S: serde::Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_str_radix(10))
}

impl BoundReport {
    pub const MARKDOWN_HEADER: &'static str = "| q | N | (q-1)! | \\|N-(q-1)!\\| | weyl chain | fine | sqrt(2e/π)·q^(q/2) | \\|N-(q-1)!\\|/q^(q/2) | fine/q^(q/2) | theorem |\n|---|---|---|---|---|---|---|---|---|---|";

    pub fn passed(&self) -> bool {
        self.theorem_holds && self.scalar_checks_hold && self.chain_holds != Some(false)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("BoundReport serializes")
    }

    pub fn to_markdown_row(&self) -> String {
        let bravo = self
            .bravoigor_rhs
            .map(|x| format!("{x:.6}"))
            .unwrap_or_else(|| "-".into());
        format!(
            "| {} | {} | {} | {} | {} | {:.6} | {:.6} | {:.6} | {:.6} | {} |",
            self.q,
            self.n,
            factorial(self.q - 1),
            self.deviation,
            bravo,
            self.fine_rhs,
            self.theorem_rhs,
            self.empirical_constant,
            self.fine_constant,
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

/// Fills a [`BoundReport`] for a previously computed `N`.
pub fn theorem_report(field: &FiniteField, n: &BigUint) -> Result<BoundReport> {
    let q = field.q() as u64;
    let deviation = (BigInt::from(n.clone()) - BigInt::from(factorial(q - 1)))
        .abs()
        .to_biguint()
        .expect("absolute value");
    let dev = deviation.to_f64().expect("fits in f64");
    let bravo = if field.q() <= WEYL_SWEEP_MAX_Q {
        Some(bravoigor_rhs(field)?)
    } else {
        None
    };
    let fine = fine_rhs(q);
    let theorem = theorem_rhs(q);
    let chain_holds = (q > 2).then(|| {
        let head = match bravo {
            Some(b) => le_with_slack(dev, b) && le_with_slack(b, fine),
            None => le_with_slack(dev, fine),
        };
        head && le_with_slack(fine, theorem)
    });
    Ok(BoundReport {
        q,
        n: n.clone(),
        deviation,
        bravoigor_rhs: bravo,
        fine_rhs: fine,
        theorem_rhs: theorem,
        empirical_constant: dev / half_power(q),
        fine_constant: fine / half_power(q),
        theorem_holds: dev <= theorem,
        scalar_checks_hold: scalar_checks(q),
        chain_holds,
    })
}
