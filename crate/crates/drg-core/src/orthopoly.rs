//! Jacobi recursion coefficients and the attached orthogonal polynomials.
//!
//! On the stratification basis the adjacency matrix of a distance-regular
//! graph projects to a `(d+1) x (d+1)` symmetric tridiagonal matrix with
//! diagonal `alpha_k` and off-diagonal `beta_k`, where
//!
//! * `alpha_0 = 0`, `alpha_k = a_k = kappa - b_k - c_k`
//! * `omega_k = beta_k^2 = b_{k-1} c_k > 0`
//!
//! The monic polynomials `Q_k` attached to these coefficients satisfy
//! `Q_0 = 1`, `Q_1 = x`, `x Q_k = Q_{k+1} + alpha_k Q_k + omega_k Q_{k-1}`;
//! `Q_{d+1}` is the characteristic polynomial of the tridiagonal matrix. The
//! first associated family `Q_k^(1)` starts one level down
//! (`Q_1^(1) = x - alpha_1`) and shifts every coefficient index by one. The
//! Stieltjes transform of the spectral measure is the finite continued
//! fraction in these coefficients and equals `Q_d^(1)/Q_{d+1}` at every
//! non-pole point.
//!
//! Everything in this module is exact rational arithmetic by forward
//! recursion; float twins used by the spectral path live alongside.

use thiserror::Error;

use crate::intersection::IntersectionArray;
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq)]
pub enum OrthopolyError {
    #[error("polynomial degree {k} out of range 0..={max}")]
    DegreeOutOfRange { k: usize, max: usize },
    #[error("continued fraction pole at x = {x} (eigenvalue or breakdown point)")]
    PoleEncountered { x: Rational },
}

/// Recursion coefficients `alpha_0..alpha_d` and `omega_1..omega_d` of one
/// intersection array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiData {
    alpha: Vec<Rational>,
    omega: Vec<Rational>,
}

impl JacobiData {
    pub fn from_array(arr: &IntersectionArray) -> Self {
        let d = arr.diameter();
        let alpha = arr.a_slice().iter().map(Rational::from).collect();
        let omega = (1..=d)
            .map(|k| Rational::from(arr.b(k - 1) * arr.c(k)))
            .collect();
        JacobiData { alpha, omega }
    }

    /// Diameter `d`; the tridiagonal matrix is `(d+1) x (d+1)`.
    pub fn diameter(&self) -> usize {
        self.omega.len()
    }

    /// `alpha_0..alpha_d`.
    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    /// `omega_1..omega_d` (squares of the off-diagonal entries).
    pub fn omega(&self) -> &[Rational] {
        &self.omega
    }

    /// Exact value of the monic polynomial `Q_k(x)` for `0 <= k <= d+1`.
    pub fn eval_q(&self, k: usize, x: &Rational) -> Result<Rational, OrthopolyError> {
        let d = self.diameter();
        if k > d + 1 {
            return Err(OrthopolyError::DegreeOutOfRange { k, max: d + 1 });
        }
        if k == 0 {
            return Ok(Rational::one());
        }
        let mut prev = Rational::one();
        let mut cur = x.clone();
        for j in 1..k {
            let next = (x - &self.alpha[j]) * &cur - &self.omega[j - 1] * &prev;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// Exact value of the first associated polynomial `Q_k^(1)(x)` for
    /// `0 <= k <= d`.
    pub fn eval_q1(&self, k: usize, x: &Rational) -> Result<Rational, OrthopolyError> {
        let d = self.diameter();
        if k > d {
            return Err(OrthopolyError::DegreeOutOfRange { k, max: d });
        }
        if k == 0 {
            return Ok(Rational::one());
        }
        let mut prev = Rational::one();
        let mut cur = x - &self.alpha[1];
        for j in 1..k {
            let next = (x - &self.alpha[j + 1]) * &cur - &self.omega[j] * &prev;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// The Stieltjes transform of the spectral measure at `x`, evaluated as
    /// the depth-`d+1` finite continued fraction
    /// `1/(x - alpha_0 - omega_1/(x - alpha_1 - ...))`.
    ///
    /// Returns [`OrthopolyError::PoleEncountered`] when any level of the
    /// fraction has a zero denominator, which happens exactly at eigenvalues
    /// and at breakdown points of the inner convergents.
    pub fn stieltjes(&self, x: &Rational) -> Result<Rational, OrthopolyError> {
        let d = self.diameter();
        let pole = || OrthopolyError::PoleEncountered { x: x.clone() };
        let mut tail = x - &self.alpha[d];
        for k in (0..d).rev() {
            if tail.is_zero() {
                return Err(pole());
            }
            tail = x - &self.alpha[k] - &self.omega[k] / tail;
        }
        if tail.is_zero() {
            return Err(pole());
        }
        Ok(tail.recip())
    }

    /// Float twin of [`eval_q`](Self::eval_q) for the spectral-sum path,
    /// where the abscissas are floating-point eigenvalues.
    pub(crate) fn eval_q_f64(&self, k: usize, x: f64) -> f64 {
        debug_assert!(k <= self.diameter() + 1);
        if k == 0 {
            return 1.0;
        }
        let mut prev = 1.0;
        let mut cur = x;
        for j in 1..k {
            let next = (x - self.alpha[j].to_f64()) * cur - self.omega[j - 1].to_f64() * prev;
            prev = cur;
            cur = next;
        }
        cur
    }
}
