//! Counting `N(q) = #{σ : deg f_σ < q - 2}`.
//!
//! Four engines, each usable on its own range of `q`:
//!
//! | method | cost | limit |
//! |---|---|---|
//! | [`Method::Interpolation`] | `q!·q²` | `q ≤ 8` |
//! | [`Method::Criterion`] | `q!` (incremental) | `q ≤ 13` |
//! | [`Method::InclusionExclusion`] | `2^q·q²` cyclotomic ops | `q ≤ 16` |
//! | [`Method::Permanent`] | `2^q·q·p²` | `q ≤ 20` |
//!
//! All of them run on the current rayon pool and reduce in a fixed order, so
//! the count never depends on the number of workers.

mod exhaustive;
mod ryser;
mod subsets;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FiniteField;

pub use exhaustive::count_exhaustive;
pub use ryser::{character_matrix, character_permanent, count_via_permanent, ryser_permanent};
pub use subsets::{
    character_sum, count_inclusion_exclusion, ns_bruteforce, ns_formula, surjection_identity_check,
};

pub const INTERPOLATION_MAX_Q: u32 = 8;
pub const CRITERION_MAX_Q: u32 = 13;
pub const INCLEXCL_MAX_Q: u32 = 16;
pub const PERMANENT_MAX_Q: u32 = 20;
/// Largest `|S|^q` that [`ns_bruteforce`] will enumerate.
pub const BRUTEFORCE_MAX_FUNCTIONS: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Interpolation,
    Criterion,
    InclusionExclusion,
    Permanent,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Interpolation,
        Method::Criterion,
        Method::InclusionExclusion,
        Method::Permanent,
    ];

    /// Cheapest method for `q`: interpolation up to 5, criterion up to 11,
    /// permanent beyond.
    pub fn auto(q: u32) -> Method {
        match q {
            0..=5 => Method::Interpolation,
            6..=11 => Method::Criterion,
            _ => Method::Permanent,
        }
    }

    pub fn max_q(self) -> u32 {
        match self {
            Method::Interpolation => INTERPOLATION_MAX_Q,
            Method::Criterion => CRITERION_MAX_Q,
            Method::InclusionExclusion => INCLEXCL_MAX_Q,
            Method::Permanent => PERMANENT_MAX_Q,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Interpolation => "interpolation",
            Method::Criterion => "criterion",
            Method::InclusionExclusion => "inclusion-exclusion",
            Method::Permanent => "permanent",
        }
    }

    /// Whether this method can run at `q` (only interpolation handles `q = 2`).
    pub fn accepts(self, q: u32) -> bool {
        q <= self.max_q() && (q > 2 || self == Method::Interpolation)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "interpolation" => Ok(Method::Interpolation),
            "criterion" => Ok(Method::Criterion),
            "inclexcl" | "inclusion-exclusion" => Ok(Method::InclusionExclusion),
            "permanent" => Ok(Method::Permanent),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

/// One count, as emitted by every engine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountResult {
    pub q: u64,
    #[serde(rename = "N", with = "decimal")]
    pub n: BigUint,
    pub method: Method,
    #[serde(default)]
    pub elapsed_s: f64,
    pub field: String,
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| D::Error::custom("N must be a decimal string"))
    }
}

impl CountResult {
    pub const CSV_HEADER: &'static str = "q,N,method,elapsed_s,field";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.q, self.n, self.method, self.elapsed_s, self.field
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("CountResult serializes")
    }
}

/// Runs one engine and wraps its answer with timing and field metadata.
pub fn count(field: &FiniteField, method: Method) -> Result<CountResult> {
    let start = Instant::now();
    let n = match method {
        Method::Interpolation => count_exhaustive(field, true)?,
        Method::Criterion => count_exhaustive(field, false)?,
        Method::InclusionExclusion => count_inclusion_exclusion(field)?,
        Method::Permanent => count_via_permanent(field)?,
    };
    let factorial = crate::arith::factorial(field.q() as u64);
    assert!(n <= factorial, "count exceeds q!");
    Ok(CountResult {
        q: field.q() as u64,
        n,
        method,
        elapsed_s: start.elapsed().as_secs_f64(),
        field: field.spec().to_string(),
    })
}

pub fn check_limit(what: &'static str, q: u32, limit: u32) -> Result<()> {
    if q > limit {
        Err(Error::RangeExceeded {
            what,
            limit: limit as u64,
            got: q as u64,
        })
    } else {
        Ok(())
    }
}

/// A subset of the field, as a bit mask over element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    q: u32,
    bits: u64,
}

impl SubsetMask {
    pub fn new(q: u32, bits: u64) -> Result<Self> {
        if q > 64 {
            return Err(Error::RangeExceeded {
                what: "subset mask width",
                limit: 64,
                got: q as u64,
            });
        }
        if q < 64 && bits >> q != 0 {
            return Err(Error::InvalidSubset(format!(
                "subset mask {bits:#x} has bits outside 0..{q}"
            )));
        }
        Ok(SubsetMask { q, bits })
    }

    pub fn empty(q: u32) -> Self {
        SubsetMask { q, bits: 0 }
    }

    pub fn full(q: u32) -> Self {
        SubsetMask {
            q,
            bits: if q == 64 { u64::MAX } else { (1u64 << q) - 1 },
        }
    }

    pub fn from_elements(q: u32, elements: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        for &e in elements {
            if e >= q {
                return Err(Error::InvalidSubset(format!("element {e} outside 0..{q}")));
            }
            bits |= 1 << e;
        }
        SubsetMask::new(q, bits)
    }

    pub fn random<R: Rng + ?Sized>(q: u32, rng: &mut R) -> Self {
        SubsetMask {
            q,
            bits: rng.gen::<u64>() & SubsetMask::full(q).bits,
        }
    }

    /// Every subset of a `q`-element field, by increasing mask.
    pub fn all(q: u32) -> impl Iterator<Item = SubsetMask> {
        assert!(q < 64);
        (0..1u64 << q).map(move |bits| SubsetMask { q, bits })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, x: u32) -> bool {
        x < self.q && self.bits >> x & 1 == 1
    }

    pub fn complement(&self) -> SubsetMask {
        SubsetMask {
            q: self.q,
            bits: !self.bits & SubsetMask::full(self.q).bits,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.q).filter(move |&x| self.contains(x))
    }

    pub(crate) fn check_field(&self, field: &FiniteField) -> Result<()> {
        if self.q == field.q() {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: field.q() as usize,
                got: self.q as usize,
            })
        }
    }
}
