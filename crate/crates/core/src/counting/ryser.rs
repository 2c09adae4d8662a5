//! Ryser permanents and the permanent-based count.
//!
//! Averaging the orthogonality relation over all permutations gives
//! `N = (1/q) Σ_a per(M_a)` with `(M_a)_{c,d} = ζ_p^Tr(a·c·d)`. `M_0` is the
//! all-ones matrix and every `M_a`, `a ≠ 0`, is a column permutation of `M_1`,
//! so `N = (q-1)! + (q-1)/q · per(M_1)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{check_limit, PERMANENT_MAX_Q};
use crate::arith::factorial;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::gf::FiniteField;

/// Largest matrix accepted by [`ryser_permanent`].
pub const RYSER_MAX_N: usize = 20;

/// Gray-code steps handled by one parallel task.
const CHUNK_BITS: u32 = 10;

/// Permanent by Ryser's formula, visiting column subsets in Gray-code order
/// so each step updates the row sums by one column.
pub fn ryser_permanent(entries: &[Vec<CycInt>]) -> Result<CycInt> {
    let n = entries.len();
    if n == 0 {
        return Err(Error::SizeMismatch { expected: 1, got: 0 });
    }
    if n > RYSER_MAX_N {
        return Err(Error::RangeExceeded {
            what: "permanent size",
            limit: RYSER_MAX_N as u64,
            got: n as u64,
        });
    }
    if let Some(row) = entries.iter().find(|r| r.len() != n) {
        return Err(Error::SizeMismatch {
            expected: n,
            got: row.len(),
        });
    }
    let p = entries[0][0].order();
    let zero = CycInt::zero(p)?;
    for e in entries.iter().flatten() {
        e.checked_add(&zero)?;
    }

    let mut row_sums = vec![zero.clone(); n];
    let mut total = zero;
    let mut gray = 0u64;
    for k in 1u64..1 << n {
        let j = k.trailing_zeros() as usize;
        gray ^= 1 << j;
        let adding = gray >> j & 1 == 1;
        for (sum, row) in row_sums.iter_mut().zip(entries) {
            *sum = if adding { &*sum + &row[j] } else { &*sum - &row[j] };
        }
        let product = row_sums[1..].iter().fold(row_sums[0].clone(), |acc, s| &acc * s);
        if (n as u32 - gray.count_ones()) % 2 == 0 {
            total = &total + &product;
        } else {
            total = &total - &product;
        }
    }
    Ok(total)
}

/// The character matrix `M_a` with entries `ζ_p^Tr(a·c·d)`.
pub fn character_matrix(field: &FiniteField, a: u32) -> Vec<Vec<CycInt>> {
    field
        .elements()
        .map(|c| {
            field
                .elements()
                .map(|d| field.char(field.mul(a, field.mul(c, d))).to_cyc())
                .collect()
        })
        .collect()
}

/// `per(M_1)` computed with fixed-width arithmetic.
///
/// Each row sum of `M_1` over a column set `S` is a vector of nonnegative
/// counts over the redundant basis `1, ζ, .., ζ^(p-1)` whose entries add up
/// to `|S|`. Products are taken in `Z[x]/(x^p - 1)`, so every coefficient of
/// a product is nonnegative and their total is `|S|^q`. The signed Ryser sum
/// is split into a positive and a negative accumulator, each bounded by
/// `2^q · q^q`, which fits in `u128` for `q ≤ 20`. Larger inputs fall back to
/// [`ryser_permanent`].
pub fn character_permanent(field: &FiniteField) -> Result<CycInt> {
    let q = field.q();
    check_limit("permanent q", q, PERMANENT_MAX_Q)?;
    let bound = BigUint::from(2u32).pow(q) * BigUint::from(q).pow(q);
    if bound >= BigUint::from(u128::MAX) {
        return ryser_permanent(&character_matrix(field, 1));
    }

    let p = field.characteristic() as usize;
    let n = q as usize;
    // powers[c][d] = Tr(c·d), rows c ≥ 1 only: row 0 is all ones
    let powers: Vec<Vec<u8>> = (1..q)
        .map(|c| field.elements().map(|d| field.trace(field.mul(c, d)) as u8).collect())
        .collect();

    let steps = 1u64 << n;
    let chunk = 1u64 << CHUNK_BITS.min(n as u32);
    let partials: Vec<(Vec<u128>, Vec<u128>)> = (0..steps / chunk)
        .into_par_iter()
        .map(|ci| {
            let start = ci * chunk;
            let end = start + chunk;
            let mut pos = vec![0u128; p];
            let mut neg = vec![0u128; p];
            let mut gray = start ^ (start >> 1);
            let mut counts = vec![vec![0u32; p]; n - 1];
            for (row, pw) in counts.iter_mut().zip(&powers) {
                for d in 0..n {
                    if gray >> d & 1 == 1 {
                        row[pw[d] as usize] += 1;
                    }
                }
            }
            let mut product = vec![0u128; p];
            let mut scratch = vec![0u128; p];
            for k in start..end {
                if k > start {
                    let j = k.trailing_zeros() as usize;
                    gray ^= 1 << j;
                    let adding = gray >> j & 1 == 1;
                    for (row, pw) in counts.iter_mut().zip(&powers) {
                        let slot = &mut row[pw[j] as usize];
                        if adding {
                            *slot += 1;
                        } else {
                            *slot -= 1;
                        }
                    }
                }
                if gray == 0 {
                    continue;
                }
                let size = gray.count_ones();
                product.iter_mut().for_each(|x| *x = 0);
                product[0] = size as u128;
                for row in &counts {
                    scratch.iter_mut().for_each(|x| *x = 0);
                    for (i, &a) in product.iter().enumerate() {
                        if a == 0 {
                            continue;
                        }
                        for (j, &b) in row.iter().enumerate() {
                            if b != 0 {
                                scratch[(i + j) % p] += a * b as u128;
                            }
                        }
                    }
                    std::mem::swap(&mut product, &mut scratch);
                }
                let acc = if (n as u32 - size) % 2 == 0 { &mut pos } else { &mut neg };
                for (a, &x) in acc.iter_mut().zip(&product) {
                    *a += x;
                }
            }
            (pos, neg)
        })
        .collect();

    let mut wide = vec![BigInt::zero(); p];
    for (pos, neg) in partials {
        for k in 0..p {
            wide[k] += BigInt::from(pos[k]) - BigInt::from(neg[k]);
        }
    }
    CycInt::from_power_counts(field.characteristic(), &wide)
}

/// `N = (q! + (q-1)·per(M_1)) / q`, with integrality of `per(M_1)` and the
/// division both checked.
pub fn count_via_permanent(field: &FiniteField) -> Result<BigUint> {
    let q = field.q();
    if q == 2 {
        return Err(Error::FieldTooSmall { q: 2 });
    }
    check_limit("permanent q", q, PERMANENT_MAX_Q)?;
    let per = character_permanent(field)?
        .as_integer()
        .map_err(|_| Error::NonIntegerResult("per(M_1) is not a rational integer".into()))?;
    let qb = BigInt::from(q);
    let numerator: BigInt = BigInt::from(factorial(q as u64)) + (&qb - 1u32) * per;
    let (n, r) = numerator.div_rem(&qb);
    if !r.is_zero() || n.is_negative() {
        return Err(Error::NonIntegerResult(format!(
            "permanent numerator {numerator} is not a nonnegative multiple of {q}"
        )));
    }
    Ok(n.to_biguint().expect("nonnegative"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn field(q: u64) -> FiniteField {
        FiniteField::new(&FieldSpec::for_order(q).unwrap()).unwrap()
    }

    fn int(p: u32, n: i64) -> CycInt {
        CycInt::from_integer(p, n).unwrap()
    }

    /// Sum over all permutations, independent of Ryser.
    fn brute_permanent(m: &[Vec<CycInt>]) -> CycInt {
        let n = m.len();
        let p = m[0][0].order();
        crate::permpoly::Permutation::all(n as u32)
            .map(|s| (0..n).fold(int(p, 1), |acc, i| &acc * &m[i][s.apply(i as u32) as usize]))
            .fold(int(p, 0), |acc, t| &acc + &t)
    }

    #[test]
    fn all_ones_and_identity() {
        let ones = vec![vec![int(3, 1); 3]; 3];
        assert_eq!(ryser_permanent(&ones).unwrap(), int(3, 6));
        for n in 1..=8 {
            let id: Vec<Vec<CycInt>> = (0..n)
                .map(|i| (0..n).map(|j| int(5, (i == j) as i64)).collect())
                .collect();
            assert_eq!(ryser_permanent(&id).unwrap(), int(5, 1));
        }
    }

    #[test]
    fn gf3_character_matrix() {
        let m = character_matrix(&field(3), 1);
        assert_eq!(brute_permanent(&m), int(3, -3));
        assert_eq!(ryser_permanent(&m).unwrap(), int(3, -3));
        assert_eq!(character_permanent(&field(3)).unwrap(), int(3, -3));
        assert_eq!(count_via_permanent(&field(3)).unwrap(), BigUint::zero());
    }

    #[test]
    fn gf4_permanent_matches_table() {
        assert_eq!(character_permanent(&field(4)).unwrap(), int(2, 8));
        assert_eq!(count_via_permanent(&field(4)).unwrap(), BigUint::from(12u32));
    }

    #[test]
    fn fast_path_matches_generic_and_brute_force() {
        for q in [3u64, 4, 5, 7, 8] {
            let f = field(q);
            let m = character_matrix(&f, 1);
            let generic = ryser_permanent(&m).unwrap();
            assert_eq!(character_permanent(&f).unwrap(), generic, "q={q}");
            if q <= 7 {
                assert_eq!(brute_permanent(&m), generic, "q={q}");
            }
        }
    }

    #[test]
    fn every_nonzero_a_has_the_same_permanent() {
        let f = field(5);
        let base = ryser_permanent(&character_matrix(&f, 1)).unwrap();
        for a in 2..5 {
            assert_eq!(ryser_permanent(&character_matrix(&f, a)).unwrap(), base);
        }
    }

    #[test]
    fn shape_errors() {
        assert!(ryser_permanent(&[]).is_err());
        let ragged = vec![vec![int(3, 1); 2], vec![int(3, 1)]];
        assert!(matches!(ryser_permanent(&ragged), Err(Error::SizeMismatch { .. })));
        let mixed = vec![vec![int(3, 1), int(5, 1)], vec![int(3, 1), int(3, 1)]];
        assert!(matches!(ryser_permanent(&mixed), Err(Error::MixedOrder { .. })));
        let big = vec![vec![int(2, 1); 21]; 21];
        assert!(matches!(ryser_permanent(&big), Err(Error::RangeExceeded { .. })));
        assert_eq!(count_via_permanent(&field(2)), Err(Error::FieldTooSmall { q: 2 }));
    }
}
