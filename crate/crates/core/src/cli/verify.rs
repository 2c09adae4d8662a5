//! Identity and inequality suites run by `ppcount verify`.

use num_bigint::{BigInt, BigUint};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    amgm_check, binom_sum_identity, central_binom_check, half_binom_check, parseval_check, theorem_report,
};
use crate::counting::{
    character_sum, count, ns_bruteforce, ns_formula, surjection_identity_check, Method, SubsetMask,
};
use crate::error::Result;
use crate::gf::FiniteField;
use crate::permpoly::{is_low_degree, Interpolator, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub status: Status,
    pub detail: String,
}

fn check(suite: &'static str, ok: bool, detail: impl Into<String>) -> SuiteOutcome {
    SuiteOutcome {
        suite,
        status: if ok { Status::Pass } else { Status::Fail },
        detail: detail.into(),
    }
}

fn skipped(suite: &'static str, why: &str) -> SuiteOutcome {
    SuiteOutcome {
        suite,
        status: Status::Skipped,
        detail: format!("skipped ({why})"),
    }
}

const EXHAUSTIVE_SUBSETS_MAX_Q: u32 = 8;
const INCLEXCL_EXHAUSTIVE_MAX_Q: u32 = 7;
const CRITERION_EXHAUSTIVE_MAX_Q: u32 = 7;
const SAMPLED_PERMUTATIONS: usize = 1000;
/// Per-subset cap on `|S|^q` inside the sampled brute-force suite.
const SAMPLED_BRUTEFORCE_COST: u64 = 10_000_000;

/// Subsets to test: all of them for small `q`, otherwise `count` seeded draws.
fn subsets(q: u32, count: usize, rng: &mut ChaCha8Rng) -> (Vec<SubsetMask>, String) {
    if q <= EXHAUSTIVE_SUBSETS_MAX_Q {
        let all: Vec<_> = SubsetMask::all(q).collect();
        let n = all.len();
        (all, format!("{n} subsets (exhaustive)"))
    } else {
        let sample = (0..count).map(|_| SubsetMask::random(q, rng)).collect();
        (sample, format!("{count} random subsets"))
    }
}

/// Random subset with `size` elements.
fn subset_of_size(q: u32, size: usize, rng: &mut ChaCha8Rng) -> SubsetMask {
    let mut elements: Vec<u32> = (0..q).collect();
    elements.shuffle(rng);
    SubsetMask::from_elements(q, &elements[..size]).expect("elements in range")
}

fn rng_for(seed: u64, suite: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(suite))
}

pub fn run_suites(field: &FiniteField, seed: u64) -> Result<Vec<SuiteOutcome>> {
    let q = field.q();
    let q64 = q as u64;
    let mut out = Vec::new();

    // field axioms
    {
        let mut rng = rng_for(seed, 0);
        let triples: Vec<(u32, u32, u32)> = if q <= 16 {
            (0..q)
                .flat_map(|a| (0..q).flat_map(move |b| (0..q).map(move |c| (a, b, c))))
                .collect()
        } else {
            use rand::Rng;
            (0..10_000)
                .map(|_| (rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q)))
                .collect()
        };
        let f = field;
        let ok = triples.iter().all(|&(a, b, c)| {
            f.add(a, f.add(b, c)) == f.add(f.add(a, b), c)
                && f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
                && f.add(a, b) == f.add(b, a)
                && f.mul(a, b) == f.mul(b, a)
                && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                && f.add(a, f.neg(a)) == 0
                && (a == 0 || f.mul(a, f.inv(a).unwrap()) == 1)
                && f.trace(f.pow(a, f.characteristic() as u64)) == f.trace(a)
        });
        out.push(check("field-axioms", ok, format!("{} triples", triples.len())));
    }

    out.push(if q <= 4096 {
        let ok = field.elements().all(|x| {
            let s = field.orthogonality_sum(x);
            if x == 0 {
                s.as_integer().ok() == Some(BigInt::from(q))
            } else {
                s.is_zero()
            }
        });
        check("orthogonality", ok, format!("{q} elements"))
    } else {
        skipped("orthogonality", "range")
    });

    if q > 64 {
        for suite in ["parseval", "ns-formula-vs-bruteforce", "amgm", "complement-symmetry"] {
            out.push(skipped(suite, "range"));
        }
    } else {
        let (sets, detail) = subsets(q, 100, &mut rng_for(seed, 1));
        let mut ok = true;
        for s in &sets {
            ok &= parseval_check(field, s)?;
        }
        out.push(check("parseval", ok, detail));

        let mut rng = rng_for(seed, 2);
        let (sets, detail) = if q <= 5 {
            let all: Vec<_> = SubsetMask::all(q).collect();
            let n = all.len();
            (all, format!("{n} subsets (exhaustive)"))
        } else {
            let max_size = (0..=q as u64)
                .take_while(|&k| k.checked_pow(q).is_some_and(|c| c <= SAMPLED_BRUTEFORCE_COST))
                .last()
                .unwrap_or(0) as usize;
            use rand::Rng;
            let sample = (0..50)
                .map(|_| subset_of_size(q, rng.gen_range(0..=max_size), &mut rng))
                .collect();
            (sample, format!("50 random subsets, |S| ≤ {max_size}"))
        };
        let mut ok = true;
        for s in &sets {
            ok &= ns_formula(field, s)? == ns_bruteforce(field, s)?;
        }
        out.push(check("ns-formula-vs-bruteforce", ok, detail));

        let (sets, detail) = if q <= EXHAUSTIVE_SUBSETS_MAX_Q {
            subsets(q, 0, &mut rng_for(seed, 3))
        } else {
            let mut rng = rng_for(seed, 3);
            let sample = (0..200).map(|_| SubsetMask::random(q, &mut rng)).collect();
            (sample, "200 random subsets".to_string())
        };
        let mut ok = q > 1;
        for s in &sets {
            ok &= amgm_check(field, s)?;
        }
        out.push(check("amgm", ok, detail));

        let (sets, detail) = subsets(q, 100, &mut rng_for(seed, 4));
        let mut ok = true;
        for s in &sets {
            for b in 1..q {
                let inside = character_sum(field, s, b)?;
                let outside = character_sum(field, &s.complement(), b)?;
                ok &= inside == -&outside;
            }
        }
        out.push(check("complement-symmetry", ok, detail));
    }

    out.push(if q > 2 && q <= INCLEXCL_EXHAUSTIVE_MAX_Q {
        let mut total = BigInt::default();
        for s in SubsetMask::all(q) {
            let ns = BigInt::from(ns_bruteforce(field, &s)?);
            if (q - s.len()) % 2 == 0 {
                total += ns;
            } else {
                total -= ns;
            }
        }
        let n = count(field, Method::Criterion)?.n;
        check(
            "inclusion-exclusion-exhaustive",
            total == BigInt::from(n.clone()),
            format!("Σ (-1)^(q-|S|) n_S = {total}, criterion N = {n}"),
        )
    } else {
        skipped("inclusion-exclusion-exhaustive", "range")
    });

    out.push(if q64 <= 64 {
        let ok = (1..=q64.max(11)).all(surjection_identity_check);
        check("surjection-identity", ok, format!("1 ≤ q ≤ {}", q64.max(11)))
    } else {
        skipped("surjection-identity", "range")
    });

    out.push(check(
        "binomial-identity",
        (2..=64).all(binom_sum_identity),
        "2 ≤ q ≤ 64",
    ));

    out.push(check(
        "central-binomial",
        (1..=128).all(central_binom_check) && (2..=64).all(half_binom_check),
        "n ≤ 128, q ≤ 64",
    ));

    out.push(if q == 2 {
        skipped("criterion-equivalence", "q = 2")
    } else if q <= 256 {
        let interp = Interpolator::new(field);
        let perms: Vec<Permutation> = if q <= CRITERION_EXHAUSTIVE_MAX_Q {
            Permutation::all(q).collect()
        } else {
            let mut rng = rng_for(seed, 5);
            (0..SAMPLED_PERMUTATIONS).map(|_| Permutation::random(q, &mut rng)).collect()
        };
        let mut ok = true;
        for sigma in &perms {
            let poly = interp.interpolate(sigma)?;
            ok &= is_low_degree(field, sigma)? == (poly.degree() < q as i64 - 2);
            ok &= field.elements().all(|a| poly.eval(field, a) == sigma.apply(a));
        }
        let how = if q <= CRITERION_EXHAUSTIVE_MAX_Q { "all" } else { "random" };
        check("criterion-equivalence", ok, format!("{} {how} permutations", perms.len()))
    } else {
        skipped("criterion-equivalence", "range")
    });

    out.push(if q == 2 {
        skipped("chain", "q = 2")
    } else if Method::auto(q).accepts(q) {
        let n: BigUint = count(field, Method::auto(q))?.n;
        let report = theorem_report(field, &n)?;
        check(
            "chain",
            report.passed(),
            format!(
                "|N-(q-1)!| = {} ≤ {} ≤ {:.6} ≤ {:.6}",
                report.deviation,
                report
                    .bravoigor_rhs
                    .map(|b| format!("{b:.6}"))
                    .unwrap_or_else(|| "-".into()),
                report.fine_rhs,
                report.theorem_rhs
            ),
        )
    } else {
        skipped("chain", "range")
    });

    Ok(out)
}
