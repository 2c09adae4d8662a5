//! Dense polynomials over the prime field GF(p), coefficients low-degree first.
//!
//! Only what field construction needs: multiplication, remainder by a monic
//! polynomial, and an irreducibility test by trial division.

pub(crate) fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = trim(a.to_vec());
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r = trim(r);
    }
    r
}

/// Monic polynomial of the given degree whose lower coefficients are the
/// base-`p` digits of `index`, with `c_0` as the most significant digit.
/// Counting `index` upward walks the monic polynomials of that degree in
/// lexicographic order of `(c_0, c_1, ..)`.
pub(crate) fn monic_from_index(index: u64, degree: usize, p: u32) -> Vec<u32> {
    let mut coeffs = vec![0u32; degree + 1];
    let mut rest = index;
    for i in (0..degree).rev() {
        coeffs[i] = (rest % p as u64) as u32;
        rest /= p as u64;
    }
    coeffs[degree] = 1;
    coeffs
}

pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let degree = m.len() - 1;
    if degree <= 1 {
        return degree == 1;
    }
    for d in 1..=degree / 2 {
        for index in 0..(p as u64).pow(d as u32) {
            let divisor = monic_from_index(index, d, p);
            if rem(m, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

pub(crate) fn smallest_irreducible(p: u32, degree: usize) -> Vec<u32> {
    (0..(p as u64).pow(degree as u32))
        .map(|index| monic_from_index(index, degree, p))
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_leaves_zero_for_factors() {
        // (x + 1)(x + 2) = x^2 + 3x + 2 over GF(5)
        let prod = mul(&[1, 1], &[2, 1], 5);
        assert_eq!(prod, vec![2, 3, 1]);
        assert!(rem(&prod, &[1, 1], 5).is_empty());
        assert_eq!(rem(&prod, &[0, 1], 5), vec![2]);
    }

    #[test]
    fn known_irreducibles() {
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert!(is_irreducible(&[1, 1, 0, 1], 2)); // x^3 + x + 1
        assert!(is_irreducible(&[1, 0, 1, 1], 2)); // x^3 + x^2 + 1
        assert!(!is_irreducible(&[1, 0, 0, 1], 2)); // x^3 + 1
        assert!(is_irreducible(&[1, 0, 1], 3)); // x^2 + 1
        assert!(!is_irreducible(&[1, 0, 1], 5)); // x^2 + 1 = (x+2)(x+3)
    }
}
