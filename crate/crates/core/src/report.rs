//! Verification bookkeeping shared by the identity checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::MomentForm;
use crate::poly::{format_rational, Polynomial};

/// One verified identity: its equation tag and the moment (or degree)
/// horizon up to which it was checked exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub tag: String,
    pub horizon: usize,
}

impl CheckLine {
    pub fn new(tag: impl Into<String>, horizon: usize) -> Self {
        CheckLine { tag: tag.into(), horizon }
    }
}

/// Moment-wise equality of two forms on `0..=m`.
pub fn verify_form_eq(tag: &str, lhs: &MomentForm, rhs: &MomentForm, m: usize) -> Result<CheckLine> {
    match lhs.first_difference(rhs, m)? {
        None => Ok(CheckLine::new(tag, m)),
        Some(i) => Err(Error::IdentityViolated {
            tag: tag.to_string(),
            index: i,
            lhs: format_rational(lhs.moment(i)),
            rhs: format_rational(rhs.moment(i)),
        }),
    }
}

/// `lhs` must be the zero form on `0..=m`.
pub fn verify_form_zero(tag: &str, lhs: &MomentForm, m: usize) -> Result<CheckLine> {
    verify_form_eq(tag, lhs, &MomentForm::zero(lhs.order()), m)
}

/// Exact polynomial equality; the "index" is the first differing degree.
pub fn verify_poly_eq(tag: &str, lhs: &Polynomial, rhs: &Polynomial) -> Result<CheckLine> {
    let top = lhs.degree().max(rhs.degree()).unwrap_or(0);
    match (0..=top).find(|&i| lhs.coeff(i) != rhs.coeff(i)) {
        None => Ok(CheckLine::new(tag, top)),
        Some(i) => Err(Error::IdentityViolated {
            tag: tag.to_string(),
            index: i,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }),
    }
}

/// `deg p <= bound` (zero polynomial always passes).
pub fn verify_degree(tag: &str, p: &Polynomial, bound: usize) -> Result<CheckLine> {
    match p.degree() {
        Some(d) if d > bound => Err(Error::IdentityViolated {
            tag: tag.to_string(),
            index: d,
            lhs: format!("deg {d}"),
            rhs: format!("<= {bound}"),
        }),
        _ => Ok(CheckLine::new(tag, bound)),
    }
}
