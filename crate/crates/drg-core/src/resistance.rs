//! Per-stratum effective resistances and commute times, computed exactly
//! from an intersection array alone.
//!
//! For a distance-regular network with unit edge resistances, every vertex
//! pair at distance `m` has one common two-point resistance `R^(m)`. The
//! whole table follows from two closed forms:
//!
//! * seed: `R^(1) = 2(N-1) / (N*kappa)`
//! * step: `R^(m+1) - R^(m) = 2 (N - sum_{l<=m} kappa_l) / (N kappa_m b_m)`
//!
//! The step is strictly positive for `m < d`, so resistance grows strictly
//! with shortest-path distance. Commute times of the uniform random walk are
//! `n(alpha,beta^(m)) = N * kappa * R^(m)`.
//!
//! All arithmetic here is exact rational; no floating point touches this
//! path.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::intersection::IntersectionArray;
use crate::rational::Rational;

/// Stratum index outside `1..=limit`.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("stratum {m} out of range 1..={limit}")]
pub struct StratumOutOfRange {
    pub m: usize,
    pub limit: usize,
}

/// `R^(1) = 2(N-1)/(N*kappa)`, reduced.
pub fn first_stratum_resistance(arr: &IntersectionArray) -> Rational {
    let n = arr.order();
    Rational::new(2 * (n - 1), n * arr.valency())
}

/// The strictly positive step `R^(m+1) - R^(m)` for `1 <= m <= d-1`.
///
/// `m = d` is an error, not zero: `b_d = 0` puts it outside the recursion.
pub fn resistance_increment(
    arr: &IntersectionArray,
    m: usize,
) -> Result<Rational, StratumOutOfRange> {
    let d = arr.diameter();
    if m < 1 || m >= d {
        return Err(StratumOutOfRange { m, limit: d - 1 });
    }
    let n = arr.order();
    let partial: BigInt = arr.kappa_slice()[..=m].iter().sum();
    Ok(Rational::new(
        2 * (n - partial),
        n * arr.kappa(m) * arr.b(m),
    ))
}

/// Average commute time `n(alpha, beta^(m)) = N * kappa * R^(m)` in steps.
pub fn commute_time(arr: &IntersectionArray, m: usize) -> Result<Rational, StratumOutOfRange> {
    let d = arr.diameter();
    if m < 1 || m > d {
        return Err(StratumOutOfRange { m, limit: d });
    }
    let volume = Rational::from_integer(arr.order() * arr.valency());
    Ok(volume * resistance_table(arr).resistance(m).unwrap())
}

/// The complete resistance and commute-time table for one network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResistanceTable {
    arr: IntersectionArray,
    resistances: Vec<Rational>, // R^(1) .. R^(d)
    increments: Vec<Rational>,  // R^(m+1) - R^(m) for m = 1..d-1
    commute: Vec<Rational>,     // N * kappa * R^(m)
}

/// Runs the seed-plus-recursion pass over all strata.
///
/// ```
/// use drg_core::{resistance_table, IntersectionArray};
///
/// let cube = IntersectionArray::new(&[3, 2, 1], &[1, 2, 3])?;
/// let table = resistance_table(&cube);
/// assert_eq!(table.resistance(1)?.to_string(), "7/12");
/// assert_eq!(table.commute_times()[0].to_string(), "14");
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn resistance_table(arr: &IntersectionArray) -> ResistanceTable {
    let d = arr.diameter();
    let n = arr.order();
    let mut resistances = Vec::with_capacity(d);
    let mut increments = Vec::with_capacity(d.saturating_sub(1));
    resistances.push(first_stratum_resistance(arr));
    // running sum kappa_0 + ... + kappa_m, so the whole pass stays linear
    let mut partial: BigInt = arr.kappa(0) + arr.kappa(1);
    for m in 1..d {
        let inc = Rational::new(2 * (n - &partial), n * arr.kappa(m) * arr.b(m));
        resistances.push(resistances.last().unwrap() + &inc);
        increments.push(inc);
        partial += arr.kappa(m + 1);
    }
    let volume = Rational::from_integer(n * arr.valency());
    let commute = resistances.iter().map(|r| &volume * r).collect();
    ResistanceTable {
        arr: arr.clone(),
        resistances,
        increments,
        commute,
    }
}

impl ResistanceTable {
    pub fn array(&self) -> &IntersectionArray {
        &self.arr
    }

    /// `R^(m)` for `1 <= m <= d`.
    pub fn resistance(&self, m: usize) -> Result<&Rational, StratumOutOfRange> {
        if m < 1 || m > self.resistances.len() {
            return Err(StratumOutOfRange {
                m,
                limit: self.resistances.len(),
            });
        }
        Ok(&self.resistances[m - 1])
    }

    /// All of `R^(1)..R^(d)` in stratum order.
    pub fn resistances(&self) -> &[Rational] {
        &self.resistances
    }

    /// The steps `R^(m+1) - R^(m)`, `m = 1..d-1`.
    pub fn increments(&self) -> &[Rational] {
        &self.increments
    }

    /// Commute times `N * kappa * R^(m)` in stratum order.
    pub fn commute_times(&self) -> &[Rational] {
        &self.commute
    }

    pub fn to_json(&self, exact: bool) -> serde_json::Value {
        let entry = |m: usize, r: &Rational| -> serde_json::Value {
            if exact {
                serde_json::json!({
                    "m": m,
                    "num": r.numer().to_string(),
                    "den": r.denom().to_string(),
                })
            } else {
                serde_json::json!({ "m": m, "value": r.to_f64() })
            }
        };
        let kappa: Vec<serde_json::Value> = self
            .arr
            .kappa_slice()
            .iter()
            .map(|k| serde_json::to_value(KappaJson(k)).unwrap())
            .collect();
        serde_json::json!({
            "N": serde_json::to_value(KappaJson(self.arr.order())).unwrap(),
            "kappa": kappa,
            "R": self.resistances.iter().enumerate().map(|(i, r)| entry(i + 1, r)).collect::<Vec<_>>(),
            "commute": self.commute.iter().enumerate().map(|(i, r)| entry(i + 1, r)).collect::<Vec<_>>(),
        })
    }

    /// CSV with header `m,R_num,R_den,R_float,commute`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,R_num,R_den,R_float,commute\n");
        for (i, r) in self.resistances.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                i + 1,
                r.numer(),
                r.denom(),
                crate::format::significant(r.to_f64(), 15),
                crate::format::significant(self.commute[i].to_f64(), 15),
            ));
        }
        out
    }

    /// Aligned plain-text table for terminals.
    pub fn to_text(&self) -> String {
        let mut rows = vec![[
            "m".to_string(),
            "R (exact)".to_string(),
            "R (float)".to_string(),
            "commute".to_string(),
        ]];
        for (i, r) in self.resistances.iter().enumerate() {
            rows.push([
                (i + 1).to_string(),
                r.to_string(),
                crate::format::significant(r.to_f64(), 15),
                self.commute[i].to_string(),
            ]);
        }
        let mut width = [0usize; 4];
        for row in &rows {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = format!(
            "array {}   N={}  kappa={}  d={}\n",
            self.arr,
            self.arr.order(),
            self.arr.valency(),
            self.arr.diameter()
        );
        for row in &rows {
            let line: Vec<String> = row
                .iter()
                .zip(width)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect();
            out.push_str(&line.join("  "));
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize)]
struct KappaJson<'a>(#[serde(serialize_with = "ser_bigint")] &'a BigInt);

fn ser_bigint<S: serde::Serializer>(v: &&BigInt, s: S) -> Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match v.to_u64() {
        Some(u) => s.serialize_u64(u),
        None => s.serialize_str(&v.to_string()),
    }
}
