//! Small integer helpers shared across modules.

use num_bigint::BigUint;
use num_traits::One;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

/// Writes `q = p^f` with `p` prime, if possible.
pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut f = 0;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        f += 1;
    }
    Some((p, f))
}

/// Prime powers in `[2, max]`, ascending.
pub(crate) fn prime_powers_up_to(max: u64) -> Vec<u64> {
    (2..=max).filter(|&q| prime_power(q).is_some()).collect()
}

pub(crate) fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers_below_twenty() {
        assert_eq!(
            prime_powers_up_to(20),
            vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19]
        );
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1 << 20), Some((2, 20)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), BigUint::from(252u32));
        assert_eq!(binomial(3, 4), BigUint::default());
        assert_eq!(factorial(10), BigUint::from(3_628_800u32));
    }
}
