//! Shared oracles and reference data for the integration suites.
//!
//! Everything in here is deliberately independent of the production code
//! paths it is used to check: the determinant evaluator goes through
//! fraction-free elimination instead of the three-term recursion, and the
//! reference tables are transcribed literals, not recomputed values.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use drg_core::families::{family_array, Family, FamilySpec};
use drg_core::orthopoly::JacobiData;
use drg_core::rational::Rational;
use drg_core::IntersectionArray;

pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A random rational with small numerator and denominator.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let numer = rng.gen_range(-30i64..=30);
    let denom = rng.gen_range(1i64..=12);
    Rational::new(numer, denom)
}

/// Evaluates the degree-`k` monic polynomial as the determinant of the
/// `k x k` tridiagonal-with-ones matrix built from the recursion
/// coefficients: diagonal `x - alpha_i`, superdiagonal 1, subdiagonal
/// `omega_i`. Rows are scaled to integers and the determinant is taken by
/// fraction-free (Bareiss) elimination.
pub fn det_q(jd: &JacobiData, k: usize, x: &Rational) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    let mut matrix = vec![vec![Rational::zero(); k]; k];
    for i in 0..k {
        matrix[i][i] = x - &jd.alpha()[i];
        if i + 1 < k {
            matrix[i][i + 1] = Rational::one();
        }
        if i >= 1 {
            matrix[i][i - 1] = jd.omega()[i - 1].clone();
        }
    }

    // clear denominators row by row
    let mut scale = BigInt::one();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(k);
    for row in &matrix {
        let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        rows.push(row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect());
        scale *= &lcm;
    }

    Rational::new(bareiss_det(&mut rows), scale)
}

fn bareiss_det(rows: &mut [Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if rows[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !rows[r][k].is_zero()) else {
                return BigInt::zero();
            };
            rows.swap(k, swap);
            sign = -sign;
        }
        let (head, tail) = rows.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail {
            for j in k + 1..n {
                let num = &pivot_row[k] * &row[j] - &row[k] * &pivot_row[j];
                let (q, r) = num.div_rem(&prev);
                assert!(r.is_zero(), "non-exact division in Bareiss elimination");
                row[j] = q;
            }
            row[k] = BigInt::zero();
        }
        prev = rows[k][k].clone();
    }
    sign * rows[n - 1][n - 1].clone()
}

/// Full symmetric eigendecomposition by cyclic Jacobi rotations; the brute
/// force route used to cross-check the tridiagonal QL path.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..200 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off.sqrt() < 1e-13 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let (aip, aiq) = (a[i][p], a[i][q]);
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let (api, aqi) = (a[p][i], a[q][i]);
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eigs
}

/// Groups a sorted eigenvalue list into (value, multiplicity) clusters.
pub fn cluster_spectrum(eigs: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &e in eigs {
        match out.last_mut() {
            Some((v, count)) if (*v - e).abs() < tol => {
                *v = (*v * *count as f64 + e) / (*count as f64 + 1.0);
                *count += 1;
            }
            _ => out.push((e, 1)),
        }
    }
    out
}

/// One reference resistance table as printed in the literature, transcribed
/// verbatim (including entries that turn out to be arithmetic slips there).
pub struct PublishedTable {
    pub label: String,
    pub array: IntersectionArray,
    pub values: Vec<Rational>,
}

fn table(label: String, spec: &FamilySpec, values: Vec<Rational>) -> PublishedTable {
    PublishedTable {
        label,
        array: family_array(spec).expect("reference family is valid"),
        values,
    }
}

/// Every appendix family at its published parameter values.
pub fn published_tables() -> Vec<PublishedTable> {
    let mut out = Vec::new();

    for s in 2..=4i128 {
        let n = s.pow(4) + 2 * s.pow(3) + 2 * s.pow(2) + 2 * s + 1;
        out.push(table(
            format!("gen_octagon(s={s})"),
            &FamilySpec::with(Family::GenOctagon, &[("s", s as i64)]),
            vec![
                rat(s.pow(3) + 2 * s.pow(2) + 2 * s + 2, n),
                rat(s.pow(3) + 3 * s.pow(2) + 4 * s + 4, n),
                rat(s.pow(3) + 3 * s.pow(2) + 5 * s + 6, n),
                rat(s.pow(3) + 3 * s.pow(2) + 5 * s + 7, n),
            ],
        ));
    }

    for l in [4i128, 5, 7, 8] {
        out.push(table(
            format!("incidence_pg(l={l})"),
            &FamilySpec::with(Family::IncidencePg, &[("l", l as i64)]),
            vec![
                rat(2 * l * l - 1, l.pow(3)),
                rat(2 * l * l - 1, l * l * (l - 1)),
                rat(2 * l.pow(3) + 1, l.pow(3) * (l - 1)),
                rat(2 * l * l + 1, l * l * (l - 1)),
            ],
        ));
    }

    for g in 1..=3i128 {
        out.push(table(
            format!("hadamard(gamma={g})"),
            &FamilySpec::with(Family::Hadamard, &[("gamma", g as i64)]),
            vec![
                rat(16 * g - 1, 32 * g * g),
                rat(8 * g - 1, 4 * g * (4 * g - 1)),
                rat(64 * g * g - 4 * g + 1, 32 * g * g * (4 * g - 1)),
                rat(2, 4 * g - 1),
            ],
        ));
    }

    out.push(table(
        "dual_polar_b(q=2,d=4)".to_owned(),
        &FamilySpec::with(Family::DualPolarB, &[("q", 2), ("d", 4)]),
        vec![
            rat(2294, 34425),
            rat(16623, 240975),
            rat(16685, 240975),
            rat(16699, 240975),
        ],
    ));

    out.push(table(
        "m22".to_owned(),
        &FamilySpec::new(Family::M22),
        vec![rat(47, 165), rat(164, 495), rat(1183, 3465), rat(113, 330)],
    ));

    for s in 2..=3i128 {
        let n = s.pow(6) + 2 * (s.pow(5) + s.pow(4) + s.pow(3) + s.pow(2) + s) + 1;
        out.push(table(
            format!("gen_dodecagon(s={s})"),
            &FamilySpec::with(Family::GenDodecagon, &[("s", s as i64)]),
            vec![
                rat(s.pow(5) + 2 * (s.pow(4) + s.pow(3) + s.pow(2) + s + 1), n),
                rat(
                    s.pow(5) + 3 * s.pow(4) + 4 * (s.pow(3) + s.pow(2) + s + 1),
                    n,
                ),
                rat(
                    s.pow(5) + 3 * s.pow(4) + 5 * s.pow(3) + 6 * (s.pow(2) + s + 1),
                    n,
                ),
                rat(
                    s.pow(5) + 3 * s.pow(4) + 5 * s.pow(3) + 7 * s.pow(2) + 8 * (s + 1),
                    n,
                ),
                rat(
                    s.pow(5) + 3 * s.pow(4) + 5 * s.pow(3) + 7 * s.pow(2) + 9 * s + 10,
                    n,
                ),
                rat(
                    s.pow(5) + 3 * s.pow(4) + 5 * s.pow(3) + 7 * s.pow(2) + 9 * s + 11,
                    n,
                ),
            ],
        ));
    }

    for g in 1..=2i128 {
        let l = g * (g * g + 3 * g + 1);
        let c = g * (g + 1);
        let dd = c + l * c + l * (l - 1);
        out.push(table(
            format!("family7(gamma={g})"),
            &FamilySpec::with(Family::Family7, &[("gamma", g as i64)]),
            vec![
                rat(c + 2 * l * c + 2 * l * (l - 1), l * dd),
                rat(2 * (c + l), dd),
                rat(
                    2 * l * (l - 1) * (l * l - c * c) + c * c * (l + 1) + c * l * (l - 1),
                    l * (l - 1) * (l - c) * dd,
                ),
                rat(
                    2 * (l * l * (2 * l * l - c * c - l) + c * l * (l + c)),
                    l * (l - 1) * (l - c) * dd,
                ),
                rat(
                    2 * l * l * (2 * l * l - c * c - l) + c * l * (3 * l + c - 1) + c * c,
                    l * (l - 1) * (l - c) * dd,
                ),
            ],
        ));
    }

    out.push(table(
        "biggs_smith".to_owned(),
        &FamilySpec::new(Family::BiggsSmith),
        [101, 150, 173, 183, 190, 194, 195]
            .into_iter()
            .map(|n| rat(n, 153))
            .collect(),
    ));

    out.push(table(
        "foster".to_owned(),
        &FamilySpec::new(Family::Foster),
        vec![
            rat(89, 135),
            rat(132, 135),
            rat(152, 135),
            rat(321, 270),
            rat(653, 540),
            rat(663, 540),
            rat(671, 540),
            rat(675, 540),
        ],
    ));

    out
}
