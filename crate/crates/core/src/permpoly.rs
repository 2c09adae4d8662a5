//! Permutations of a finite field and their interpolating polynomials.
//!
//! The permutation polynomial of `σ` is
//! `f_σ(x) = Σ_c σ(c)·(1 - (x - c)^(q-1))`, which takes the value `σ(a)` at
//! every `a`. Its `x^(q-2)` coefficient is `-Σ_c c·σ(c)`, so for `q > 2` the
//! degree drops below `q - 2` exactly when that sum vanishes.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::FiniteField;

/// A bijection on the element indices `0..q`; `images[c] = σ(c)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let slot = seen
                .get_mut(x as usize)
                .ok_or_else(|| Error::InvalidPermutation(format!("image {x} out of range 0..{n}")))?;
            if std::mem::replace(slot, true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(q: u32) -> Self {
        Permutation {
            images: (0..q).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(q: u32, rng: &mut R) -> Self {
        let mut images: Vec<u32> = (0..q).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    /// All permutations of `0..q` in lexicographic order of image sequence.
    pub fn all(q: u32) -> Lexicographic {
        Lexicographic {
            next: Some((0..q).collect()),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, c: u32) -> u32 {
        self.images[c as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    fn check_field(&self, field: &FiniteField) -> Result<()> {
        if self.images.len() == field.q() as usize {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: field.q() as usize,
                got: self.images.len(),
            })
        }
    }
}

/// Comma-separated image list, e.g. `0,2,1`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidPermutation(format!("{s:?}: {e}")))?;
        Permutation::new(images)
    }
}

/// Iterator over permutations in lexicographic order (standard
/// next-permutation step).
#[derive(Debug, Clone)]
pub struct Lexicographic {
    next: Option<Vec<u32>>,
}

impl Iterator for Lexicographic {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if let Some(i) = (1..succ.len()).rev().find(|&i| succ[i - 1] < succ[i]) {
            let pivot = i - 1;
            let j = (i..succ.len()).rev().find(|&j| succ[j] > succ[pivot]).unwrap();
            succ.swap(pivot, j);
            succ[i..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation { images: current })
    }
}

/// Polynomial over `GF(q)`, constant term first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyFq {
    coeffs: Vec<u32>,
}

impl PolyFq {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFq { coeffs }
    }

    pub fn zero() -> Self {
        PolyFq::default()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, field: &FiniteField, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| field.add(field.mul(acc, x), c))
    }
}

/// `C(n, k) mod p` by Lucas' theorem.
fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        // C(nd, kd) with nd < p, computed exactly in u64
        let mut c = 1u64;
        for i in 0..kd {
            c = c * (nd - i) / (i + 1);
        }
        acc = acc * (c % p) % p;
        n /= p;
        k /= p;
    }
    acc
}

/// Caches the basis polynomials `1 - (x - c)^(q-1)` for one field so that
/// each interpolation costs `O(q^2)`.
#[derive(Debug, Clone)]
pub struct Interpolator<'a> {
    field: &'a FiniteField,
    basis: Vec<Vec<u32>>,
}

impl<'a> Interpolator<'a> {
    pub fn new(field: &'a FiniteField) -> Self {
        let q = field.q();
        let p = field.characteristic() as u64;
        let top = q as u64 - 1;
        // C(q-1, k) as prime-subfield elements
        let binom: Vec<u32> = (0..=top).map(|k| binomial_mod_p(top, k, p) as u32).collect();
        let basis = field
            .elements()
            .map(|c| {
                let minus_c = field.neg(c);
                let mut g: Vec<u32> = (0..=top)
                    .map(|k| field.mul(binom[k as usize], field.pow(minus_c, top - k)))
                    .map(|v| field.neg(v))
                    .collect();
                g[0] = field.add(g[0], 1);
                g
            })
            .collect();
        Interpolator { field, basis }
    }

    pub fn interpolate(&self, sigma: &Permutation) -> Result<PolyFq> {
        sigma.check_field(self.field)?;
        let f = self.field;
        let mut coeffs = vec![0u32; f.q() as usize];
        for (c, g) in self.basis.iter().enumerate() {
            let s = sigma.apply(c as u32);
            if s == 0 {
                continue;
            }
            for (acc, &b) in coeffs.iter_mut().zip(g) {
                *acc = f.add(*acc, f.mul(s, b));
            }
        }
        Ok(PolyFq::new(coeffs))
    }
}

/// The permutation polynomial `f_σ`.
pub fn interpolate(field: &FiniteField, sigma: &Permutation) -> Result<PolyFq> {
    sigma.check_field(field)?;
    Interpolator::new(field).interpolate(sigma)
}

/// `Σ_c c·σ(c)` in the field.
pub fn criterion_sum(field: &FiniteField, sigma: &Permutation) -> Result<u32> {
    sigma.check_field(field)?;
    Ok(field
        .elements()
        .fold(0, |acc, c| field.add(acc, field.mul(c, sigma.apply(c)))))
}

/// The `x^(q-2)` coefficient of `f_σ`, read off as `-Σ_c c·σ(c)`.
pub fn coeff_x_qm2(field: &FiniteField, sigma: &Permutation) -> Result<u32> {
    if field.q() == 2 {
        return Err(Error::FieldTooSmall { q: 2 });
    }
    Ok(field.neg(criterion_sum(field, sigma)?))
}

/// Whether `deg f_σ < q - 2`, decided by the coefficient criterion.
pub fn is_low_degree(field: &FiniteField, sigma: &Permutation) -> Result<bool> {
    Ok(coeff_x_qm2(field, sigma)? == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn field(q: u64) -> FiniteField {
        FiniteField::new(&FieldSpec::for_order(q).unwrap()).unwrap()
    }

    #[test]
    fn identity_interpolates_to_x() {
        for q in [3, 5, 7, 9] {
            let f = field(q);
            let poly = interpolate(&f, &Permutation::identity(q as u32)).unwrap();
            assert_eq!(poly.coeffs(), &[0, 1]);
        }
    }

    #[test]
    fn gf2_transposition_has_degree_q_minus_one() {
        let f = field(2);
        let poly = interpolate(&f, &"1,0".parse().unwrap()).unwrap();
        assert_eq!(poly.coeffs(), &[1, 1]);
        assert_eq!(poly.degree(), 1);
    }

    #[test]
    fn eval_examples() {
        let f5 = field(5);
        assert_eq!(PolyFq::zero().eval(&f5, 3), 0);
        assert_eq!(PolyFq::zero().degree(), -1);
        assert_eq!(PolyFq::new(vec![3]).eval(&f5, 4), 3);
        let f3 = field(3);
        assert_eq!(PolyFq::new(vec![1, 0, 1]).eval(&f3, 2), 2);
        assert_eq!(PolyFq::new(vec![1, 0, 0]).degree(), 0);
    }

    #[test]
    fn criterion_examples() {
        assert_eq!(coeff_x_qm2(&field(5), &Permutation::identity(5)).unwrap(), 0);
        // -(0 + 1 + 4) = -5 = 1 in GF(3)
        assert_eq!(coeff_x_qm2(&field(3), &Permutation::identity(3)).unwrap(), 1);
        let f3 = field(3);
        for sigma in Permutation::all(3) {
            assert!(!is_low_degree(&f3, &sigma).unwrap());
        }
        assert_eq!(
            is_low_degree(&field(2), &Permutation::identity(2)),
            Err(Error::FieldTooSmall { q: 2 })
        );
    }

    #[test]
    fn low_degree_counts_for_small_fields() {
        for (q, want) in [(4u64, 12usize), (5, 20)] {
            let f = field(q);
            let n = Permutation::all(q as u32)
                .filter(|s| is_low_degree(&f, s).unwrap())
                .count();
            assert_eq!(n, want);
        }
    }

    #[test]
    fn size_mismatch() {
        let f = field(5);
        assert_eq!(
            interpolate(&f, &Permutation::identity(4)),
            Err(Error::SizeMismatch { expected: 5, got: 4 })
        );
    }

    #[test]
    fn permutation_validation_and_text_form() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!("0,x".parse::<Permutation>().is_err());
        let s: Permutation = "2, 0,1".parse().unwrap();
        assert_eq!(s.to_string(), "2,0,1");
    }

    #[test]
    fn lexicographic_enumeration() {
        let all: Vec<String> = Permutation::all(3).map(|p| p.to_string()).collect();
        assert_eq!(all, ["0,1,2", "0,2,1", "1,0,2", "1,2,0", "2,0,1", "2,1,0"]);
        assert_eq!(Permutation::all(6).count(), 720);
        assert_eq!(Permutation::all(1).count(), 1);
    }

    #[test]
    fn lucas_binomials() {
        assert_eq!(binomial_mod_p(4, 2, 3), 0); // 6
        assert_eq!(binomial_mod_p(8, 3, 3), 56 % 3);
        assert_eq!(binomial_mod_p(10, 4, 7), 210 % 7);
    }
}
