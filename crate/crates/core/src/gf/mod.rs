//! Finite fields `GF(p^f)` with log/exp multiplication, the absolute trace,
//! and additive character values.
//!
//! Elements are `u32` indices: the polynomial `c_0 + c_1 x + .. + c_{f-1} x^{f-1}`
//! is stored as `c_0 + c_1 p + .. + c_{f-1} p^{f-1}`. Index 0 is zero and
//! index 1 is one; indices `0..p` form the prime subfield.

mod poly;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::arith::{is_prime, prime_factors, prime_power};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};

/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u32 = 64;
/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const ADD_TABLE_LIMIT: u32 = 256;

/// Which field to build: characteristic, degree, and optionally an explicit
/// monic modulus (coefficients low-degree first, length `f + 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub f: u32,
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn new(p: u32, f: u32) -> Self {
        FieldSpec { p, f, modulus: None }
    }

    /// `modulus` is low-degree first and must include the leading 1.
    pub fn with_modulus(p: u32, f: u32, modulus: Vec<u32>) -> Self {
        FieldSpec {
            p,
            f,
            modulus: Some(modulus),
        }
    }

    /// The prime field or default-modulus extension of size `q`.
    pub fn for_order(q: u64) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or_else(|| Error::FieldSpecParse {
            input: q.to_string(),
            reason: "not a prime power".into(),
        })?;
        if p > MAX_CHARACTERISTIC as u64 {
            return Err(Error::RangeExceeded {
                what: "characteristic",
                limit: MAX_CHARACTERISTIC as u64,
                got: p,
            });
        }
        Ok(FieldSpec::new(p as u32, f))
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.f)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.f)?;
        if let Some(m) = &self.modulus {
            let coeffs: Vec<String> = m.iter().rev().map(|c| c.to_string()).collect();
            write!(f, "/{}", coeffs.join(","))?;
        }
        Ok(())
    }
}

/// Accepts `"q"`, `"p^f"`, or `"p^f/c_f,...,c_0"` (modulus high-degree
/// coefficient first).
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::FieldSpecParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s_trim = s.trim();
        let (head, modulus) = match s_trim.split_once('/') {
            Some((h, m)) => (h, Some(m)),
            None => (s_trim, None),
        };
        let Some((p, f)) = head.split_once('^') else {
            if modulus.is_some() {
                return Err(bad("explicit modulus needs the p^f form"));
            }
            let q: u64 = head.parse().map_err(|_| bad("expected an integer"))?;
            return FieldSpec::for_order(q).map_err(|_| bad("not a prime power"));
        };
        let p: u32 = p.trim().parse().map_err(|_| bad("bad characteristic"))?;
        let f: u32 = f.trim().parse().map_err(|_| bad("bad degree"))?;
        if f == 0 {
            return Err(bad("degree must be at least 1"));
        }
        let modulus = match modulus {
            None => None,
            Some(m) => {
                let mut coeffs = m
                    .split(',')
                    .map(|c| c.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad("bad modulus coefficient"))?;
                if coeffs.iter().any(|&c| c >= p) {
                    return Err(bad("modulus coefficient out of range"));
                }
                coeffs.reverse();
                Some(coeffs)
            }
        };
        Ok(FieldSpec { p, f, modulus })
    }
}

/// An additive character value `ζ_p^power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharValue {
    pub p: u32,
    pub power: u32,
}

impl CharValue {
    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * self.power as f64 / self.p as f64)
    }

    pub fn to_cyc(self) -> CycInt {
        CycInt::from_root(self.p, self.power).expect("character order is prime")
    }

    pub fn mul(self, other: CharValue) -> CharValue {
        debug_assert_eq!(self.p, other.p);
        CharValue {
            p: self.p,
            power: (self.power + other.power) % self.p,
        }
    }
}

/// A fully tabulated finite field. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    spec: FieldSpec,
    q: u32,
    generator: u32,
    /// `exp[i] = g^i`, stored twice over so log sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
    trace: Vec<u32>,
}

impl FiniteField {
    /// Builds and tabulates the field described by `spec`. When the modulus
    /// is omitted for `f > 1`, the lexicographically smallest monic
    /// irreducible (compared from the constant term up) is used.
    pub fn new(spec: &FieldSpec) -> Result<Self> {
        let FieldSpec { p, f, .. } = *spec;
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if p > MAX_CHARACTERISTIC {
            return Err(Error::RangeExceeded {
                what: "characteristic",
                limit: MAX_CHARACTERISTIC as u64,
                got: p as u64,
            });
        }
        if f == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: 0,
            });
        }
        let q64 = (p as u64).checked_pow(f).unwrap_or(u64::MAX);
        if q64 > MAX_FIELD_SIZE {
            return Err(Error::RangeExceeded {
                what: "field size",
                limit: MAX_FIELD_SIZE,
                got: q64,
            });
        }
        let q = q64 as u32;
        let degree = f as usize;

        let modulus = match &spec.modulus {
            Some(m) => {
                if m.len() != degree + 1 {
                    return Err(Error::DegreeMismatch {
                        expected: degree,
                        got: m.len().saturating_sub(1),
                    });
                }
                if m[degree] != 1 {
                    return Err(Error::NotMonic);
                }
                if !poly::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(
                        FieldSpec::with_modulus(p, f, m.clone()).to_string(),
                    ));
                }
                m.clone()
            }
            None if degree == 1 => vec![0, 1],
            None => poly::smallest_irreducible(p, degree),
        };
        let resolved = FieldSpec {
            p,
            f,
            modulus: (degree > 1 || spec.modulus.is_some()).then(|| modulus.clone()),
        };

        let to_poly = |x: u32| -> Vec<u32> {
            let mut digits = Vec::with_capacity(degree);
            let mut rest = x;
            for _ in 0..degree {
                digits.push(rest % p);
                rest /= p;
            }
            poly::trim(digits)
        };
        let from_poly = |a: &[u32]| -> u32 { a.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let slow_mul =
            |x: u32, y: u32| -> u32 { from_poly(&poly::rem(&poly::mul(&to_poly(x), &to_poly(y), p), &modulus, p)) };
        let slow_pow = |x: u32, mut e: u64| -> u32 {
            let mut base = x;
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };

        let order = q as u64 - 1;
        let cofactors: Vec<u64> = prime_factors(order).into_iter().map(|r| order / r).collect();
        let generator = (1..q)
            .find(|&g| cofactors.iter().all(|&c| slow_pow(g, c) != 1))
            .expect("the multiplicative group is cyclic");

        let n = order as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for i in 0..n {
            exp[i] = acc;
            exp[i + n] = acc;
            log[acc as usize] = i as u32;
            acc = slow_mul(acc, generator);
        }
        debug_assert_eq!(acc, 1);

        let digit_add = |x: u32, y: u32| -> u32 {
            let (mut x, mut y) = (x, y);
            let mut out = 0u32;
            let mut place = 1u32;
            for _ in 0..degree {
                out += ((x % p + y % p) % p) * place;
                x /= p;
                y /= p;
                place *= p;
            }
            out
        };
        let neg: Vec<u32> = (0..q)
            .map(|x| {
                let mut rest = x;
                let mut out = 0u32;
                let mut place = 1u32;
                for _ in 0..degree {
                    out += ((p - rest % p) % p) * place;
                    rest /= p;
                    place *= p;
                }
                out
            })
            .collect();
        let add_table = (q <= ADD_TABLE_LIMIT).then(|| {
            (0..q)
                .flat_map(|x| (0..q).map(move |y| (x, y)))
                .map(|(x, y)| digit_add(x, y))
                .collect()
        });

        let mut field = FiniteField {
            spec: resolved,
            q,
            generator,
            exp,
            log,
            neg,
            add_table,
            trace: Vec::new(),
        };
        field.trace = (0..q).map(|x| field.trace_by_frobenius(x)).collect();
        Ok(field)
    }

    fn trace_by_frobenius(&self, x: u32) -> u32 {
        let mut acc = 0;
        let mut term = x;
        for _ in 0..self.spec.f {
            acc = self.add(acc, term);
            term = self.pow(term, self.spec.p as u64);
        }
        assert!(acc < self.spec.p, "trace left the prime subfield");
        acc
    }

    /// The spec with the modulus actually used filled in.
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.f
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        if let Some(t) = &self.add_table {
            return t[(x * self.q + y) as usize];
        }
        let p = self.spec.p;
        if p == 2 {
            return x ^ y;
        }
        let (mut x, mut y) = (x, y);
        let mut out = 0u32;
        let mut place = 1u32;
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize]
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        self.exp[(self.log[x as usize] + self.log[y as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: u32) -> Option<u32> {
        if x == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[x as usize]) % n) as usize])
    }

    pub fn pow(&self, x: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[(self.log[x as usize] as u64 * (e % n) % n) as usize]
    }

    /// Absolute trace `Σ_{i<f} x^(p^i)`, as a value in `0..p`.
    #[inline]
    pub fn trace(&self, x: u32) -> u32 {
        self.trace[x as usize]
    }

    /// The additive character `ζ_p^Tr(x)`.
    #[inline]
    pub fn char(&self, x: u32) -> CharValue {
        CharValue {
            p: self.spec.p,
            power: self.trace(x),
        }
    }

    /// Exact `Σ_{a ∈ GF(q)} ζ_p^Tr(a·x)`; `q` for `x = 0`, zero otherwise.
    pub fn orthogonality_sum(&self, x: u32) -> CycInt {
        let p = self.spec.p as usize;
        let mut counts = vec![0i64; p];
        for a in self.elements() {
            counts[self.trace(self.mul(a, x)) as usize] += 1;
        }
        CycInt::from_power_counts(self.spec.p, &counts).expect("characteristic is prime")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(s: &str) -> FiniteField {
        FiniteField::new(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn prime_field_is_integer_arithmetic() {
        let f = field("3^1");
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(f.add(x, y), (x + y) % 3);
                assert_eq!(f.mul(x, y), (x * y) % 3);
            }
        }
        assert_eq!(f.spec().to_string(), "3^1");
    }

    #[test]
    fn gf4_default_modulus() {
        let f = field("2^2");
        assert_eq!(f.spec().modulus.as_deref(), Some(&[1, 1, 1][..]));
        assert_eq!(f.spec().to_string(), "2^2/1,1,1");
    }

    #[test]
    fn gf8_default_modulus_is_lexicographically_smallest() {
        // (c0, c1, c2) = (1, 0, 1) precedes (1, 1, 0)
        let f = field("8");
        assert_eq!(f.spec().modulus.as_deref(), Some(&[1, 0, 1, 1][..]));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FiniteField::new(&FieldSpec::new(4, 1)), Err(Error::NotPrime(4)));
        assert!(matches!(
            FiniteField::new(&"2^3/1,0,0,1".parse().unwrap()),
            Err(Error::ReducibleModulus(_))
        ));
        assert!(matches!(
            FiniteField::new(&"2^3/1,1,1".parse().unwrap()),
            Err(Error::DegreeMismatch { expected: 3, got: 2 })
        ));
        assert_eq!(
            FiniteField::new(&FieldSpec::with_modulus(3, 2, vec![1, 0, 2])),
            Err(Error::NotMonic)
        );
        assert!(matches!(
            FiniteField::new(&FieldSpec::new(67, 1)),
            Err(Error::RangeExceeded { .. })
        ));
        assert!(matches!(
            FiniteField::new(&FieldSpec::new(2, 21)),
            Err(Error::RangeExceeded { .. })
        ));
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("9".parse::<FieldSpec>().unwrap(), FieldSpec::new(3, 2));
        assert_eq!(
            "2^3/1,0,1,1".parse::<FieldSpec>().unwrap(),
            FieldSpec::with_modulus(2, 3, vec![1, 1, 0, 1])
        );
        assert!("12".parse::<FieldSpec>().is_err());
        assert!("3^2/1,0,3".parse::<FieldSpec>().is_err());
        assert!("x^2".parse::<FieldSpec>().is_err());
        assert!("3^0".parse::<FieldSpec>().is_err());
        // parses; rejected at construction
        assert_eq!("8^1".parse::<FieldSpec>().unwrap(), FieldSpec::new(8, 1));
    }

    #[test]
    fn trace_examples() {
        assert_eq!(field("5").trace(3), 3);
        assert_eq!(field("4").trace(1), 0);
    }

    #[test]
    fn trace_of_gf9_matches_power_sum() {
        let f = field("9");
        for x in f.elements() {
            let direct = f.add(x, f.mul(x, f.mul(x, x)));
            assert_eq!(f.trace(x), direct);
        }
    }

    #[test]
    fn char_examples() {
        for s in ["2", "3", "4", "8", "9", "25"] {
            let f = field(s);
            assert_eq!(f.char(0).power, 0);
        }
        let f = field("3");
        assert_eq!(f.char(2), CharValue { p: 3, power: 2 });
    }

    #[test]
    fn gf8_characters_are_additive() {
        let f = field("8");
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!(f.char(f.add(x, y)), f.char(x).mul(f.char(y)));
            }
        }
    }

    #[test]
    fn orthogonality_examples() {
        let f = field("7");
        assert_eq!(f.orthogonality_sum(0), CycInt::from_integer(7, 7).unwrap());
        assert!(f.orthogonality_sum(3).is_zero());
        let f = field("9");
        for x in 1..9 {
            assert!(f.orthogonality_sum(x).is_zero());
        }
    }

    #[test]
    fn char_value_has_unit_modulus() {
        for power in 0..7 {
            let z = CharValue { p: 7, power }.to_complex();
            assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn large_field_builds_without_add_table() {
        let f = field("3^7");
        assert_eq!(f.q(), 2187);
        let g = f.generator();
        assert_eq!(f.pow(g, 2186), 1);
        let x = 1234;
        assert_eq!(f.sub(f.add(x, 999), 999), x);
        assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
    }
}
