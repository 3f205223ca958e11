//! Linear functionals on polynomials, stored as a truncated moment sequence.
//!
//! A [`MomentForm`] of order `N` knows `(u)_0 ..= (u)_N` exactly. Every
//! operation returns the largest order it can still vouch for:
//! left-multiplication by `f` consumes `deg f` orders, the derivative keeps
//! the order (index `n` only needs `(u)_{n-1}`).

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{format_rational, Polynomial, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct MomentForm {
    moments: Vec<Rational>,
}

impl MomentForm {
    /// Build from `(u)_0 ..= (u)_N`. Panics on an empty list.
    pub fn new(moments: Vec<Rational>) -> Self {
        assert!(!moments.is_empty(), "a form needs at least the zeroth moment");
        MomentForm { moments }
    }

    pub fn zero(order: usize) -> Self {
        MomentForm {
            moments: vec![Rational::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn moments(&self) -> &[Rational] {
        &self.moments
    }

    pub fn moment(&self, n: usize) -> &Rational {
        &self.moments[n]
    }

    pub fn is_zero(&self) -> bool {
        self.moments.iter().all(Zero::is_zero)
    }

    /// Drop moments above `order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderExceeded {
                needed: order,
                available: self.order(),
            });
        }
        Ok(MomentForm {
            moments: self.moments[..=order].to_vec(),
        })
    }

    /// `<u, p>`
    pub fn act(&self, p: &Polynomial) -> Result<Rational> {
        if let Some(d) = p.degree() {
            if d > self.order() {
                return Err(Error::OrderExceeded {
                    needed: d,
                    available: self.order(),
                });
            }
        }
        Ok(p
            .coeffs()
            .iter()
            .zip(&self.moments)
            .fold(Rational::zero(), |acc, (c, m)| acc + c * m))
    }

    /// Left multiplication `f u`, defined by `<f u, p> = <u, f p>`.
    pub fn left_mul(&self, f: &Polynomial) -> Result<Self> {
        let Some(d) = f.degree() else {
            return Ok(MomentForm::zero(self.order()));
        };
        if d > self.order() {
            return Err(Error::OrderExceeded {
                needed: d,
                available: self.order(),
            });
        }
        let order = self.order() - d;
        let moments = (0..=order)
            .map(|n| {
                f.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .fold(Rational::zero(), |acc, (i, c)| acc + c * &self.moments[n + i])
            })
            .collect();
        Ok(MomentForm { moments })
    }

    /// Distributional derivative: `<D u, p> = -<u, p'>`.
    pub fn derive(&self) -> Self {
        let moments = (0..self.moments.len())
            .map(|n| {
                if n == 0 {
                    Rational::zero()
                } else {
                    -(&self.moments[n - 1] * Rational::from_integer(n.into()))
                }
            })
            .collect();
        MomentForm { moments }
    }

    /// `D^k u`
    pub fn derive_n(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |u, _| u.derive())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        MomentForm {
            moments: self.moments.iter().map(|m| m * c).collect(),
        }
    }

    /// Sum, valid up to the smaller of the two orders.
    pub fn add(&self, other: &MomentForm) -> Self {
        let order = self.order().min(other.order());
        MomentForm {
            moments: (0..=order)
                .map(|n| &self.moments[n] + &other.moments[n])
                .collect(),
        }
    }

    pub fn sub(&self, other: &MomentForm) -> Self {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    /// `true` iff the first `m + 1` moments agree.
    pub fn equal_up_to(&self, other: &MomentForm, m: usize) -> Result<bool> {
        let available = self.order().min(other.order());
        if m > available {
            return Err(Error::OrderExceeded {
                needed: m,
                available,
            });
        }
        Ok(self.moments[..=m] == other.moments[..=m])
    }

    /// First index where the two forms differ, if any, within `0..=m`.
    pub fn first_difference(&self, other: &MomentForm, m: usize) -> Result<Option<usize>> {
        let available = self.order().min(other.order());
        if m > available {
            return Err(Error::OrderExceeded {
                needed: m,
                available,
            });
        }
        Ok((0..=m).find(|&n| self.moments[n] != other.moments[n]))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.moments.iter().map(format_rational).collect()
    }
}

impl fmt::Debug for MomentForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MomentForm(order={}, {:?})", self.order(), self.to_strings())
    }
}

/// Sum of forms, valid up to the smallest order. Panics on an empty list.
pub fn sum_forms<'a, I: IntoIterator<Item = &'a MomentForm>>(forms: I) -> MomentForm {
    let mut it = forms.into_iter();
    let first = it.next().expect("sum of no forms").clone();
    it.fold(first, |acc, u| acc.add(u))
}
