//! Monic eigenpolynomials of an isomorphism `J`: `J(P_n) = lambda_n P_n`.

use num_traits::Zero;

use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::poly::{binomial, Polynomial, Rational};
use crate::two_orth::Mps;

/// `entry(tau, n)` is the coefficient of `x^tau` in `J(x^n)`; upper
/// triangular with `lambda_n^{[0]}` on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    /// `cols[n][tau]`, `tau <= n`
    cols: Vec<Vec<Rational>>,
}

impl OperatorMatrix {
    pub fn entry(&self, tau: usize, n: usize) -> &Rational {
        &self.cols[n][tau]
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        self.cols.iter().enumerate().map(|(n, c)| c[n].clone()).collect()
    }

    pub fn n_max(&self) -> usize {
        self.cols.len() - 1
    }
}

/// Builds the matrix from the double sum
/// `sum_{nu=0}^{tau} C(n, n-nu) a_{tau-nu}^{[n-nu]}`.
pub fn operator_matrix(j: &DiffOperator, n_max: usize) -> Result<OperatorMatrix> {
    if !j.is_normal_form() {
        return Err(Error::NotNormalForm);
    }
    let cols = (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|tau| {
                    (0..=tau).fold(Rational::zero(), |acc, nu| {
                        acc + Rational::from_integer(binomial(n, n - nu)) * j.entry(n - nu, tau - nu)
                    })
                })
                .collect()
        })
        .collect();
    Ok(OperatorMatrix { cols })
}

/// Unique monic eigenpolynomials `P_0..=P_{n_max}` and their eigenvalues.
///
/// Requires pairwise distinct, nonzero `lambda_n^{[0]}` on the range.
pub fn eigen_mps(j: &DiffOperator, n_max: usize) -> Result<(Mps, Vec<Rational>)> {
    let m = operator_matrix(j, n_max)?;
    let lambdas = m.diagonal();
    if let Some(n) = lambdas.iter().position(Zero::is_zero) {
        return Err(Error::NonInvertible { n });
    }
    for n in 1..lambdas.len() {
        if let Some(k) = (0..n).find(|&k| lambdas[k] == lambdas[n]) {
            return Err(Error::RepeatedEigenvalue { n, m: k });
        }
    }
    let polys = (0..=n_max)
        .map(|n| {
            // Row t of (M - lambda_n I) p = 0, solved from t = n-1 down.
            let mut p = vec![Rational::zero(); n + 1];
            p[n] = Rational::from_integer(1.into());
            for t in (0..n).rev() {
                let s = ((t + 1)..=n).fold(Rational::zero(), |acc, c| {
                    let e = m.entry(t, c);
                    if e.is_zero() || p[c].is_zero() {
                        acc
                    } else {
                        acc + e * &p[c]
                    }
                });
                p[t] = s / (&lambdas[n] - &lambdas[t]);
            }
            Polynomial::new(p)
        })
        .collect();
    Ok((Mps::new(polys)?, lambdas))
}

/// `J(P_n) == lambda_n P_n` exactly for every `n` in range.
pub fn verify_eigen(j: &DiffOperator, p: &Mps, lambdas: &[Rational]) -> bool {
    p.len() <= lambdas.len()
        && p
            .polys()
            .iter()
            .zip(lambdas)
            .all(|(pn, l)| j.apply(pn) == pn.scale(l))
}
