//! Direct enumeration of all `q!` permutations, sharded by `σ(0)`.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{check_limit, CRITERION_MAX_Q, INTERPOLATION_MAX_Q};
use crate::error::Result;
use crate::gf::FiniteField;
use crate::permpoly::{Interpolator, Permutation};

/// Counts permutations with `deg f_σ < q - 2` by visiting every permutation.
///
/// With `via_interpolation` each `f_σ` is built and its degree read off
/// (`q ≤ 8`); otherwise the running sum `Σ c·σ(c)` is tracked along a
/// depth-first walk and tested for zero at the leaves (`q ≤ 13`). `q = 2`
/// always goes through interpolation.
pub fn count_exhaustive(field: &FiniteField, via_interpolation: bool) -> Result<BigUint> {
    let q = field.q();
    if via_interpolation || q == 2 {
        check_limit("exhaustive interpolation q", q, INTERPOLATION_MAX_Q)?;
        Ok(by_interpolation(field))
    } else {
        check_limit("exhaustive criterion q", q, CRITERION_MAX_Q)?;
        Ok(by_criterion(field))
    }
}

fn by_interpolation(field: &FiniteField) -> BigUint {
    let q = field.q();
    let interp = Interpolator::new(field);
    let shards: Vec<u64> = (0..q)
        .into_par_iter()
        .map(|first| {
            let rest: Vec<u32> = (0..q).filter(|&x| x != first).collect();
            let mut images = vec![0u32; q as usize];
            images[0] = first;
            let mut hits = 0u64;
            for tail in Permutation::all(q - 1) {
                for (slot, &i) in images[1..].iter_mut().zip(tail.images()) {
                    *slot = rest[i as usize];
                }
                let sigma = Permutation::new(images.clone()).expect("bijection by construction");
                let poly = interp.interpolate(&sigma).expect("sizes agree");
                if poly.degree() < q as i64 - 2 {
                    hits += 1;
                }
            }
            hits
        })
        .collect();
    shards.into_iter().map(BigUint::from).sum()
}

struct Tables {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl Tables {
    fn new(field: &FiniteField) -> Self {
        let q = field.q() as usize;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for x in 0..q {
            for y in 0..q {
                add[x * q + y] = field.add(x as u32, y as u32) as u8;
                mul[x * q + y] = field.mul(x as u32, y as u32) as u8;
            }
        }
        Tables { q, add, mul }
    }

    /// Completions of positions `pos..q` from the unused set, counting those
    /// whose final sum is zero.
    fn walk(&self, pos: usize, sum: u8, unused: u32) -> u64 {
        let q = self.q;
        if pos == q - 1 {
            let last = unused.trailing_zeros() as usize;
            let term = self.mul[pos * q + last];
            return (self.add[sum as usize * q + term as usize] == 0) as u64;
        }
        let mut hits = 0;
        let mut rest = unused;
        while rest != 0 {
            let image = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let term = self.mul[pos * q + image];
            let next = self.add[sum as usize * q + term as usize];
            hits += self.walk(pos + 1, next, unused & !(1 << image));
        }
        hits
    }
}

fn by_criterion(field: &FiniteField) -> BigUint {
    let q = field.q();
    let tables = Tables::new(field);
    let full = (1u32 << q) - 1;
    // position 0 contributes 0·σ(0) = 0
    let shards: Vec<u64> = (0..q)
        .into_par_iter()
        .map(|first| tables.walk(1, 0, full & !(1 << first)))
        .collect();
    shards.into_iter().map(BigUint::from).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::gf::FieldSpec;

    fn field(q: u64) -> FiniteField {
        FiniteField::new(&FieldSpec::for_order(q).unwrap()).unwrap()
    }

    #[test]
    fn small_table_values() {
        for (q, n) in [(2u64, 0u32), (3, 0), (4, 12), (5, 20), (7, 630)] {
            assert_eq!(count_exhaustive(&field(q), true).unwrap(), BigUint::from(n), "q={q}");
            if q > 2 {
                assert_eq!(count_exhaustive(&field(q), false).unwrap(), BigUint::from(n), "q={q}");
            }
        }
    }

    #[test]
    fn limits() {
        assert!(matches!(
            count_exhaustive(&field(9), true),
            Err(Error::RangeExceeded { limit: 8, .. })
        ));
        assert!(matches!(
            count_exhaustive(&field(16), false),
            Err(Error::RangeExceeded { limit: 13, .. })
        ));
    }
}
