//! Exact arithmetic in the cyclotomic integers `Z[ζ_p]`, `p` prime.
//!
//! An element is stored in the power basis `1, ζ, .., ζ^(p-2)`; `ζ^(p-1)` is
//! rewritten as `-(1 + ζ + .. + ζ^(p-2))`. The representation is canonical,
//! so equality is coefficient-wise and an element is a rational integer
//! exactly when every coefficient past the constant term is zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::arith::is_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

fn check_order(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

fn basis_len(p: u32) -> usize {
    (p as usize - 1).max(1)
}

impl CycInt {
    pub fn zero(p: u32) -> Result<Self> {
        check_order(p)?;
        Ok(CycInt {
            p,
            coeffs: vec![BigInt::zero(); basis_len(p)],
        })
    }

    pub fn from_integer(p: u32, n: impl Into<BigInt>) -> Result<Self> {
        let mut out = CycInt::zero(p)?;
        out.coeffs[0] = n.into();
        Ok(out)
    }

    /// `ζ_p^k` in canonical form.
    pub fn from_root(p: u32, k: u32) -> Result<Self> {
        check_order(p)?;
        if k >= p {
            return Err(Error::RootIndex { p, k });
        }
        let mut counts = vec![0i64; p as usize];
        counts[k as usize] = 1;
        CycInt::from_power_counts(p, &counts)
    }

    /// `Σ_k counts[k]·ζ^k` over the redundant basis `1, ζ, .., ζ^(p-1)`.
    pub fn from_power_counts<T>(p: u32, counts: &[T]) -> Result<Self>
    where
        T: Clone + Into<BigInt>,
    {
        check_order(p)?;
        assert_eq!(counts.len(), p as usize, "need one count per power of ζ_p");
        let wide: Vec<BigInt> = counts.iter().cloned().map(Into::into).collect();
        Ok(Self::canonical(p, wide))
    }

    /// Reduces a length-`p` vector over the redundant basis.
    fn canonical(p: u32, mut wide: Vec<BigInt>) -> Self {
        let top = wide.pop().expect("p >= 2");
        if p == 2 {
            // ζ_2 = -1
            return CycInt {
                p,
                coeffs: vec![&wide[0] - top],
            };
        }
        for c in wide.iter_mut() {
            *c -= &top;
        }
        CycInt { p, coeffs: wide }
    }

    fn widen(&self) -> Vec<BigInt> {
        let mut wide = vec![BigInt::zero(); self.p as usize];
        for (w, c) in wide.iter_mut().zip(&self.coeffs) {
            *w = c.clone();
        }
        wide
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    /// Coefficients `a_0..a_(p-2)` in the power basis.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_integer(&self) -> Result<BigInt> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational)
        }
    }

    fn same_order(&self, other: &CycInt) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::MixedOrder {
                left: self.p,
                right: other.p,
            })
        }
    }

    pub fn checked_add(&self, other: &CycInt) -> Result<CycInt> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn checked_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn checked_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.same_order(other)?;
        let p = self.p as usize;
        if p == 2 {
            return Ok(CycInt {
                p: 2,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut wide = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                wide[(i + j) % p] += a * b;
            }
        }
        Ok(Self::canonical(self.p, wide))
    }

    pub fn scale(&self, k: &BigInt) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Complex conjugation, `ζ ↦ ζ^(p-1)`.
    pub fn conjugate(&self) -> CycInt {
        let p = self.p as usize;
        let wide = self.widen();
        let mut flipped = vec![BigInt::zero(); p];
        for (k, c) in wide.into_iter().enumerate() {
            flipped[(p - k) % p] = c;
        }
        Self::canonical(self.p, flipped)
    }

    /// Evaluates at `ζ_p = e^(2πi/p)` in double precision.
    pub fn to_complex(&self) -> Complex64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let w = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / self.p as f64);
                w * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    pub fn one(p: u32) -> Result<Self> {
        CycInt::from_integer(p, BigInt::one())
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let m = c.magnitude();
            match k {
                0 => write!(f, "{m}")?,
                1 if m.is_one() => write!(f, "ζ{}", self.p)?,
                1 => write!(f, "{m}·ζ{}", self.p)?,
                _ if m.is_one() => write!(f, "ζ{}^{k}", self.p)?,
                _ => write!(f, "{m}·ζ{}^{k}", self.p)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Operator forms panic on mixed orders; use the `checked_*` methods when the
// orders are not known to agree.
impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.checked_add(rhs).expect("mixed cyclotomic orders")
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.checked_sub(rhs).expect("mixed cyclotomic orders")
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.checked_mul(rhs).expect("mixed cyclotomic orders")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u32, k: u32) -> CycInt {
        CycInt::from_root(p, k).unwrap()
    }

    fn int(p: u32, n: i64) -> CycInt {
        CycInt::from_integer(p, n).unwrap()
    }

    #[test]
    fn root_sums() {
        assert_eq!(&z(3, 1) + &z(3, 2), int(3, -1));
        assert_eq!((&z(3, 1) + &z(3, 2)).as_integer().unwrap(), BigInt::from(-1));
        assert_eq!(&z(5, 1) * &z(5, 4), int(5, 1));
    }

    #[test]
    fn seventh_roots_product() {
        // (1 + ζ)(1 + ζ^6) = 1 + ζ + ζ^6 + ζ^7 = 2 + ζ + ζ^6
        let lhs = &(&int(7, 1) + &z(7, 1)) * &(&int(7, 1) + &z(7, 6));
        let rhs = &(&int(7, 2) + &z(7, 1)) + &z(7, 6);
        assert_eq!(lhs, rhs);
        // ζ^6 = -(1 + ζ + .. + ζ^5), so the canonical form is 1 + 0ζ - ζ^2 - .. - ζ^5
        let expected: Vec<BigInt> = [1, 0, -1, -1, -1, -1].into_iter().map(BigInt::from).collect();
        assert_eq!(lhs.coeffs(), &expected[..]);
    }

    #[test]
    fn order_two_is_the_integers() {
        assert_eq!(z(2, 1), int(2, -1));
        assert_eq!(&int(2, 6) * &int(2, -7), int(2, -42));
    }

    #[test]
    fn errors() {
        assert_eq!(CycInt::from_root(4, 1), Err(Error::NotPrime(4)));
        assert_eq!(CycInt::from_root(5, 5), Err(Error::RootIndex { p: 5, k: 5 }));
        assert_eq!(
            z(3, 1).checked_add(&z(5, 1)),
            Err(Error::MixedOrder { left: 3, right: 5 })
        );
        assert_eq!(z(5, 1).as_integer(), Err(Error::NotRational));
        assert_eq!(CycInt::zero(7).unwrap().as_integer().unwrap(), BigInt::zero());
    }

    #[test]
    fn complex_evaluation() {
        let w = (&z(3, 1) + &z(3, 2)).to_complex();
        assert!((w.re + 1.0).abs() < 1e-12 && w.im.abs() < 1e-12);
        let w = z(8 - 1, 2).to_complex();
        let want = Complex64::from_polar(1.0, std::f64::consts::TAU * 2.0 / 7.0);
        assert!((w - want).norm() < 1e-12);
    }

    #[test]
    fn conjugation_inverts_roots() {
        for p in [2, 3, 5, 7, 11] {
            for k in 0..p {
                assert_eq!(z(p, k).conjugate(), z(p, (p - k) % p));
                assert_eq!(&z(p, k) * &z(p, k).conjugate(), int(p, 1));
            }
        }
    }
}
