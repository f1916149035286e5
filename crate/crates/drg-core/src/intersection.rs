//! Validated intersection arrays of distance-regular graphs.
//!
//! An intersection array `{b_0,...,b_{d-1}; c_1,...,c_d}` lists, for a vertex
//! pair at distance `i`, how many neighbors of one endpoint sit one step
//! farther from (`b_i`) or closer to (`c_i`) the other. Everything else about
//! the network that this crate computes derives from these `2d` integers:
//! the valencies `kappa_i` (stratum sizes), the in-stratum counts `a_i`, and
//! the order `N`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Why an integer-list pair is not a feasible intersection array.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArrayError {
    #[error("intersection array must have at least one stratum")]
    Empty,
    #[error("b has {b} entries but c has {c}; the lists must have equal length")]
    LengthMismatch { b: usize, c: usize },
    #[error("{name}_{index} = {value} must be positive")]
    ZeroEntry {
        name: char,
        index: usize,
        value: BigInt,
    },
    #[error("c_1 = {found}, but c_1 = 1 in every intersection array")]
    FirstCNotOne { found: BigInt },
    #[error("kappa_{i} = kappa_{im1}*b_{im1}/c_{i} is not an integer", im1 = i - 1)]
    NonIntegralValency { i: usize },
    #[error("a_{i} = {value} is negative; the array is infeasible")]
    NegativeIntersectionNumber { i: usize, value: BigInt },
}

/// A validated intersection array with its derived parameters.
///
/// Immutable after construction: the valencies, in-stratum counts and order
/// are computed once during validation and never change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionArray {
    b: Vec<BigInt>,     // b_0 .. b_{d-1}
    c: Vec<BigInt>,     // c_1 .. c_d
    kappa: Vec<BigInt>, // kappa_0 .. kappa_d
    a: Vec<BigInt>,     // a_0 .. a_d
    n: BigInt,          // order N = sum of valencies
}

impl IntersectionArray {
    /// Validates `{b_0..b_{d-1}; c_1..c_d}` given as machine integers.
    pub fn new(b: &[u64], c: &[u64]) -> Result<Self, ArrayError> {
        Self::from_bigints(
            b.iter().map(|&v| BigInt::from(v)).collect(),
            c.iter().map(|&v| BigInt::from(v)).collect(),
        )
    }

    /// Validates an array with arbitrary-precision entries.
    ///
    /// Acceptance is purely arithmetic: `c_1 = 1`, all listed entries
    /// positive, every valency `kappa_i = kappa_{i-1} b_{i-1} / c_i` an
    /// integer, and every `a_i = kappa - b_i - c_i` nonnegative. Whether a
    /// graph realizing the array exists is not decided here.
    pub fn from_bigints(b: Vec<BigInt>, c: Vec<BigInt>) -> Result<Self, ArrayError> {
        if b.is_empty() {
            return Err(ArrayError::Empty);
        }
        if b.len() != c.len() {
            return Err(ArrayError::LengthMismatch {
                b: b.len(),
                c: c.len(),
            });
        }
        let d = b.len();
        for (i, v) in b.iter().enumerate() {
            if !v.is_positive() {
                return Err(ArrayError::ZeroEntry {
                    name: 'b',
                    index: i,
                    value: v.clone(),
                });
            }
        }
        for (i, v) in c.iter().enumerate() {
            if !v.is_positive() {
                return Err(ArrayError::ZeroEntry {
                    name: 'c',
                    index: i + 1,
                    value: v.clone(),
                });
            }
        }
        if !c[0].is_one() {
            return Err(ArrayError::FirstCNotOne {
                found: c[0].clone(),
            });
        }

        // kappa_0 = 1, kappa_i = kappa_{i-1} b_{i-1} / c_i
        let mut kappa = Vec::with_capacity(d + 1);
        kappa.push(BigInt::one());
        for i in 1..=d {
            let (q, r) = (&kappa[i - 1] * &b[i - 1]).div_rem(&c[i - 1]);
            if !r.is_zero() {
                return Err(ArrayError::NonIntegralValency { i });
            }
            kappa.push(q);
        }

        // a_0 = 0, a_i = kappa - b_i - c_i (with b_d = 0 implicitly)
        let valency = b[0].clone();
        let mut a = Vec::with_capacity(d + 1);
        a.push(BigInt::zero());
        for i in 1..=d {
            let bi = if i < d { &b[i] } else { &BigInt::ZERO };
            let ai = &valency - bi - &c[i - 1];
            if ai.is_negative() {
                return Err(ArrayError::NegativeIntersectionNumber { i, value: ai });
            }
            a.push(ai);
        }

        let n = kappa.iter().sum();
        Ok(IntersectionArray { b, c, kappa, a, n })
    }

    /// Diameter `d` (number of strata beyond the reference vertex).
    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    /// Order `N`: the number of vertices, `sum of kappa_0..kappa_d`.
    pub fn order(&self) -> &BigInt {
        &self.n
    }

    /// Degree `kappa = b_0` of the regular graph.
    pub fn valency(&self) -> &BigInt {
        &self.b[0]
    }

    /// `b_i` for `0 <= i <= d-1`.
    pub fn b(&self, i: usize) -> &BigInt {
        &self.b[i]
    }

    /// `c_i` for `1 <= i <= d` (paper indexing; `c_0 = 0` is never stored).
    pub fn c(&self, i: usize) -> &BigInt {
        assert!(i >= 1 && i <= self.diameter(), "c_{i} out of range");
        &self.c[i - 1]
    }

    /// `a_i` for `0 <= i <= d`.
    pub fn a(&self, i: usize) -> &BigInt {
        &self.a[i]
    }

    /// Valency `kappa_i` for `0 <= i <= d`.
    pub fn kappa(&self, i: usize) -> &BigInt {
        &self.kappa[i]
    }

    pub fn b_slice(&self) -> &[BigInt] {
        &self.b
    }

    pub fn c_slice(&self) -> &[BigInt] {
        &self.c
    }

    pub fn kappa_slice(&self) -> &[BigInt] {
        &self.kappa
    }

    pub fn a_slice(&self) -> &[BigInt] {
        &self.a
    }

    /// Order as `usize` when it fits (explicit graph constructions need it).
    pub fn order_usize(&self) -> Option<usize> {
        self.n.to_usize()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "b": self.b.iter().map(bigint_json).collect::<Vec<_>>(),
            "c": self.c.iter().map(bigint_json).collect::<Vec<_>>(),
            "d": self.diameter(),
            "N": bigint_json(&self.n),
            "kappa": self.kappa.iter().map(bigint_json).collect::<Vec<_>>(),
            "a": self.a.iter().map(bigint_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for IntersectionArray {
    /// Standard brace notation: `{b_0,...,b_{d-1}; c_1,...,c_d}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

/// Big integers render as JSON numbers when they fit in `u64`, otherwise as
/// decimal strings.
fn bigint_json(v: &BigInt) -> serde_json::Value {
    match v.to_u64() {
        Some(u) => serde_json::Value::from(u),
        None => serde_json::Value::from(v.to_string()),
    }
}

impl Serialize for IntersectionArray {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntInput {
    Num(u64),
    Str(String),
}

impl IntInput {
    fn to_bigint(&self) -> Result<BigInt, String> {
        match self {
            IntInput::Num(v) => Ok(BigInt::from(*v)),
            IntInput::Str(s) => s
                .parse::<BigInt>()
                .map_err(|_| format!("invalid integer {s:?}")),
        }
    }
}

#[derive(Deserialize)]
struct RawArray {
    b: Vec<IntInput>,
    c: Vec<IntInput>,
}

impl<'de> Deserialize<'de> for IntersectionArray {
    /// Accepts `{"b":[...],"c":[...]}`; any derived fields present in the
    /// input are ignored and recomputed, so serialized output round-trips
    /// through validation.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawArray::deserialize(deserializer)?;
        let b = raw
            .b
            .iter()
            .map(IntInput::to_bigint)
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        let c = raw
            .c
            .iter()
            .map(IntInput::to_bigint)
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        IntersectionArray::from_bigints(b, c).map_err(|e| D::Error::custom(e.to_string()))
    }
}
