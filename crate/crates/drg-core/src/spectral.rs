//! Spectral distribution of the network and the spectral-sum route to
//! resistances.
//!
//! The `(d+1) x (d+1)` symmetric tridiagonal projection of the adjacency
//! matrix has `d+1` simple eigenvalues `x_0 > x_1 > ... > x_d` with
//! `x_0 = kappa`. The spectral measure seen from any vertex puts mass
//! `b_l = m_l / N` on `x_l`, where `m_l` is the eigenvalue multiplicity in
//! the full adjacency matrix. The masses are the squared first components of
//! the normalized tridiagonal eigenvectors, which is how Gauss quadrature
//! weights are classically extracted, so the whole distribution comes out of
//! one small dense eigenproblem.
//!
//! Resistances recomputed from this data,
//! `R^(m) = (2/N) sum_{i!=0} m_i/(kappa - lambda_i) (1 - P_m(lambda_i)/kappa_m)`,
//! are an independent floating-point cross-check of the exact recursion.

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::intersection::IntersectionArray;
use crate::orthopoly::JacobiData;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectralError {
    #[error("tridiagonal QL iteration failed to converge")]
    EigenFailure,
    #[error("stratum {m} out of range 1..={d}")]
    StratumOutOfRange { m: usize, d: usize },
}

/// Eigenvalues, masses and multiplicities of the network's spectral measure.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralData {
    /// Distinct adjacency eigenvalues, strictly descending; `eigenvalues[0]`
    /// is the valency.
    pub eigenvalues: Vec<f64>,
    /// Masses `b_l` of the spectral measure; positive, sum to one.
    pub masses: Vec<f64>,
    /// Multiplicities `m_l = N * b_l`; near-integers for a genuine array.
    pub multiplicities: Vec<f64>,
}

impl SpectralData {
    pub fn compute(arr: &IntersectionArray) -> Result<Self, SpectralError> {
        let jd = JacobiData::from_array(arr);
        let diag: Vec<f64> = jd.alpha().iter().map(|a| a.to_f64()).collect();
        let off: Vec<f64> = jd.omega().iter().map(|w| w.to_f64().sqrt()).collect();
        let (eigs, first) = tridiag_eigen_first_components(diag, off)?;

        let mut pairs: Vec<(f64, f64)> = eigs.into_iter().zip(first).collect();
        pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite eigenvalues"));

        let n = arr.order().to_f64().unwrap_or(f64::NAN);
        let eigenvalues: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let masses: Vec<f64> = pairs.iter().map(|p| p.1 * p.1).collect();
        let multiplicities = masses.iter().map(|b| b * n).collect();
        Ok(SpectralData {
            eigenvalues,
            masses,
            multiplicities,
        })
    }
}

/// Implicit-shift QL on a symmetric tridiagonal matrix, accumulating the
/// rotations only against the first row of the identity. Returns the
/// eigenvalues and the first component of each normalized eigenvector,
/// both unsorted.
fn tridiag_eigen_first_components(
    mut d: Vec<f64>,
    mut e: Vec<f64>,
) -> Result<(Vec<f64>, Vec<f64>), SpectralError> {
    let n = d.len();
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    if n == 1 {
        return Ok((d, z));
    }
    assert_eq!(e.len(), n - 1, "off-diagonal length");
    e.push(0.0);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(SpectralError::EigenFailure);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, z))
}

/// `R^(m)` recomputed from the spectral distribution; float path only.
///
/// `P_m` is recovered from the monic `Q_m` by the rescaling
/// `P_m(x) = sqrt(kappa_m) Q_m(x) / (beta_1 ... beta_m)`.
pub fn resistance_spectral(arr: &IntersectionArray, m: usize) -> Result<f64, SpectralError> {
    let d = arr.diameter();
    if m < 1 || m > d {
        return Err(SpectralError::StratumOutOfRange { m, d });
    }
    let sd = SpectralData::compute(arr)?;
    let jd = JacobiData::from_array(arr);
    let n = arr.order().to_f64().unwrap_or(f64::NAN);
    // the top eigenvalue is exactly the valency; take it from the array
    let kappa = arr.valency().to_f64().unwrap_or(f64::NAN);
    let kappa_m = arr.kappa(m).to_f64().unwrap_or(f64::NAN);
    let beta_prod: f64 = jd.omega()[..m]
        .iter()
        .map(|w| w.to_f64())
        .product::<f64>()
        .sqrt();
    let mut sum = 0.0;
    for i in 1..=d {
        let lambda = sd.eigenvalues[i];
        let p_m = kappa_m.sqrt() * jd.eval_q_f64(m, lambda) / beta_prod;
        sum += sd.multiplicities[i] / (kappa - lambda) * (1.0 - p_m / kappa_m);
    }
    Ok(2.0 / n * sum)
}

/// The `(d+1) x (d+1)` eigenmatrix with entries `P_i(lambda_j)`: row 0 all
/// ones, column 0 the valencies.
///
/// Rows are evaluated by the adjacency three-term recursion
/// `P_{i+1}(x) = ((x - a_i) P_i(x) - b_{i-1} P_{i-1}(x)) / c_{i+1}`,
/// whose coefficients are the intersection numbers themselves.
pub fn eigenmatrix(arr: &IntersectionArray) -> Result<Vec<Vec<f64>>, SpectralError> {
    let d = arr.diameter();
    let sd = SpectralData::compute(arr)?;
    let a: Vec<f64> = arr.a_slice().iter().map(|v| v.to_f64().unwrap()).collect();
    let b: Vec<f64> = arr.b_slice().iter().map(|v| v.to_f64().unwrap()).collect();
    let c: Vec<f64> = arr.c_slice().iter().map(|v| v.to_f64().unwrap()).collect();

    let mut rows = vec![vec![1.0; d + 1]];
    if d >= 1 {
        rows.push(sd.eigenvalues.clone());
    }
    for i in 1..d {
        let next: Vec<f64> = (0..=d)
            .map(|j| {
                let x = sd.eigenvalues[j];
                ((x - a[i]) * rows[i][j] - b[i - 1] * rows[i - 1][j]) / c[i]
            })
            .collect();
        rows.push(next);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::IntersectionArray;
    use crate::resistance::resistance_table;

    fn arr(b: &[u64], c: &[u64]) -> IntersectionArray {
        IntersectionArray::new(b, c).unwrap()
    }

    fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert!((a - e).abs() < tol, "{a} vs {e} (tol {tol})");
        }
    }

    #[test]
    fn cube_spectrum() {
        let sd = SpectralData::compute(&arr(&[3, 2, 1], &[1, 2, 3])).unwrap();
        assert_close(&sd.eigenvalues, &[3.0, 1.0, -1.0, -3.0], 1e-12);
        assert_close(&sd.multiplicities, &[1.0, 3.0, 3.0, 1.0], 1e-9);
    }

    #[test]
    fn square_cycle_spectrum() {
        let sd = SpectralData::compute(&arr(&[2, 1], &[1, 2])).unwrap();
        assert_close(&sd.eigenvalues, &[2.0, 0.0, -2.0], 1e-12);
        assert_close(&sd.multiplicities, &[1.0, 2.0, 1.0], 1e-9);
    }

    #[test]
    fn complete_graph_spectrum() {
        let sd = SpectralData::compute(&arr(&[4], &[1])).unwrap();
        assert_close(&sd.eigenvalues, &[4.0, -1.0], 1e-12);
        assert_close(&sd.multiplicities, &[1.0, 4.0], 1e-9);
    }

    #[test]
    fn masses_form_a_probability_distribution() {
        for a in [
            arr(&[3, 2, 1], &[1, 2, 3]),
            arr(&[7, 6, 4, 4], &[1, 1, 1, 6]),
            arr(&[3, 2, 2, 2, 1, 1, 1], &[1, 1, 1, 1, 1, 1, 3]),
        ] {
            let sd = SpectralData::compute(&a).unwrap();
            let total: f64 = sd.masses.iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
            assert!(sd.masses.iter().all(|&b| b > 0.0));
            assert!((sd.multiplicities[0] - 1.0).abs() < 1e-9);
            let n = a.order().to_f64().unwrap();
            let msum: f64 = sd.multiplicities.iter().sum();
            assert!((msum - n).abs() < 1e-6);
            for m in &sd.multiplicities {
                assert!((m - m.round()).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn spectral_resistance_matches_recursion() {
        let cube = arr(&[3, 2, 1], &[1, 2, 3]);
        let r1 = resistance_spectral(&cube, 1).unwrap();
        assert!((r1 - 7.0 / 12.0).abs() < 1e-12);

        let c6 = arr(&[2, 1, 1], &[1, 1, 2]);
        assert!((resistance_spectral(&c6, 3).unwrap() - 1.5).abs() < 1e-12);

        let biggs_smith = arr(&[3, 2, 2, 2, 1, 1, 1], &[1, 1, 1, 1, 1, 1, 3]);
        let r7 = resistance_spectral(&biggs_smith, 7).unwrap();
        assert!((r7 - 195.0 / 153.0).abs() < 1e-12);

        let table = resistance_table(&biggs_smith);
        for m in 1..=7 {
            let spectral = resistance_spectral(&biggs_smith, m).unwrap();
            let exact = table.resistance(m).unwrap().to_f64();
            assert!((spectral - exact).abs() < 1e-9);
        }
    }

    #[test]
    fn stratum_bounds() {
        let cube = arr(&[3, 2, 1], &[1, 2, 3]);
        assert_eq!(
            resistance_spectral(&cube, 0).unwrap_err(),
            SpectralError::StratumOutOfRange { m: 0, d: 3 }
        );
        assert!(resistance_spectral(&cube, 4).is_err());
    }

    #[test]
    fn cube_eigenmatrix_rows() {
        let p = eigenmatrix(&arr(&[3, 2, 1], &[1, 2, 3])).unwrap();
        assert_close(&p[0], &[1.0, 1.0, 1.0, 1.0], 1e-12);
        assert_close(&p[1], &[3.0, 1.0, -1.0, -3.0], 1e-12);
        // column 0 holds the valencies
        let col0: Vec<f64> = p.iter().map(|row| row[0]).collect();
        assert_close(&col0, &[1.0, 3.0, 3.0, 1.0], 1e-9);
    }

    #[test]
    fn square_cycle_eigenmatrix() {
        let p = eigenmatrix(&arr(&[2, 1], &[1, 2])).unwrap();
        assert_close(&p[0], &[1.0, 1.0, 1.0], 1e-12);
        assert_close(&p[1], &[2.0, 0.0, -2.0], 1e-12);
        assert_close(&p[2], &[1.0, -1.0, 1.0], 1e-12);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn eigenmatrix_rows_match_q_rescaling() {
        // same rows through sqrt(kappa_i) Q_i(x) / (beta_1...beta_i)
        let a = arr(&[7, 6, 4, 4], &[1, 1, 1, 6]);
        let p = eigenmatrix(&a).unwrap();
        let sd = SpectralData::compute(&a).unwrap();
        let jd = JacobiData::from_array(&a);
        for i in 1..=a.diameter() {
            let kappa_i = a.kappa(i).to_f64().unwrap();
            let beta_prod: f64 = jd.omega()[..i]
                .iter()
                .map(|w| w.to_f64())
                .product::<f64>()
                .sqrt();
            for (j, &lambda) in sd.eigenvalues.iter().enumerate() {
                let via_q = kappa_i.sqrt() * jd.eval_q_f64(i, lambda) / beta_prod;
                assert!(
                    (via_q - p[i][j]).abs() < 1e-9 * p[i][j].abs().max(1.0),
                    "row {i} col {j}: {via_q} vs {}",
                    p[i][j]
                );
            }
        }
    }

    #[test]
    fn trace_identity() {
        // sum_j P_l(lambda_j) m_j = N delta_{l0}
        for a in [
            arr(&[3, 2, 1], &[1, 2, 3]),
            arr(&[7, 6, 4, 4], &[1, 1, 1, 6]),
            arr(&[4, 1], &[1, 4]),
        ] {
            let n = a.order().to_f64().unwrap();
            let p = eigenmatrix(&a).unwrap();
            let sd = SpectralData::compute(&a).unwrap();
            for (l, row) in p.iter().enumerate() {
                let total: f64 = row
                    .iter()
                    .zip(&sd.multiplicities)
                    .map(|(pij, mj)| pij * mj)
                    .sum();
                let expected = if l == 0 { n } else { 0.0 };
                assert!((total - expected).abs() < 1e-6 * n);
            }
        }
    }
}
