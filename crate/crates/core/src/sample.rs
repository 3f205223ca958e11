//! Seeded random instances. Rationals have numerator and denominator
//! uniform in `1..=20` and a random sign, so they are never zero.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diffop::DiffOperator;
use crate::hahn::reciprocal_index;
use crate::poly::{int, Polynomial, Rational};
use crate::two_orth::{Mps, RecurrenceCoeffs};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for draw `index` of a sweep, so draws can run in any
/// order and still reproduce.
pub fn draw_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = seeded(seed);
    rng.set_stream(index);
    rng
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let p: i64 = rng.gen_range(1..=20);
    let q: i64 = rng.gen_range(1..=20);
    let r = Rational::new(p.into(), q.into());
    if rng.gen_bool(0.5) {
        -r
    } else {
        r
    }
}

/// Every coefficient nonzero, so the degree is exactly `deg`.
pub fn random_poly<R: Rng>(rng: &mut R, deg: usize) -> Polynomial {
    Polynomial::new((0..=deg).map(|_| random_rational(rng)).collect())
}

pub fn random_monic<R: Rng>(rng: &mut R, deg: usize) -> Polynomial {
    let mut cs: Vec<Rational> = (0..deg).map(|_| random_rational(rng)).collect();
    cs.push(Rational::one());
    Polynomial::new(cs)
}

/// Regular coefficients generating `P_0..=P_{n_max}` (and one spare of each).
pub fn random_rc<R: Rng>(rng: &mut R, n_max: usize) -> RecurrenceCoeffs {
    let mut v = |n: usize| (0..n).map(|_| random_rational(rng)).collect::<Vec<_>>();
    let beta = v(n_max + 1);
    let alpha = v(n_max + 1);
    let gamma = v(n_max + 1);
    RecurrenceCoeffs::new(beta, alpha, gamma)
}

pub fn random_mps<R: Rng>(rng: &mut R, n_max: usize) -> Mps {
    Mps::new((0..=n_max).map(|n| random_monic(rng, n)).collect()).expect("monic by construction")
}

/// Random forms of the given order (nonzero moments).
pub fn random_form<R: Rng>(rng: &mut R, order: usize) -> crate::forms::MomentForm {
    crate::forms::MomentForm::new((0..=order).map(|_| random_rational(rng)).collect())
}

/// Normal-form operator of the given order with lowering order `k`:
/// `a_nu = 0` for `nu < k`, `deg a_nu <= nu - k`, resampled until every
/// `lambda_{n+k}^{[k]}` with `n <= horizon` is nonzero.
pub fn random_lowering<R: Rng>(rng: &mut R, order: usize, k: usize, horizon: usize) -> DiffOperator {
    assert!(k <= order);
    loop {
        let coeffs = (0..=order)
            .map(|nu| if nu < k { Polynomial::zero() } else { random_poly(rng, nu - k) })
            .collect();
        let j = DiffOperator::new(coeffs).expect("normal form by construction");
        if (0..=horizon).all(|n| !j.lambda(k, n).is_zero()) {
            return j;
        }
    }
}

/// Arbitrary normal-form operator (`deg a_nu <= nu`, random degrees).
pub fn random_normal_form<R: Rng>(rng: &mut R, order: usize) -> DiffOperator {
    let coeffs = (0..=order)
        .map(|nu| {
            let d = rng.gen_range(0..=nu);
            random_poly(rng, d)
        })
        .collect();
    DiffOperator::new(coeffs).expect("normal form by construction")
}

/// Shape of `a_3` in a draw with `a_2 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CubicShape {
    /// `a_3 = 1`
    Unit,
    /// `a_3 = (1 + (x - b0)/h)^2`
    UnitSquare,
    /// `a_3 = k (x - b0 + h)^2`
    ScaledSquare,
    /// Generic cubic.
    Cubic,
}

#[derive(Clone, Debug)]
pub struct Theorem4Draw {
    pub operator: DiffOperator,
    pub shape: CubicShape,
}

fn forbids_zero_lambda(a0: &Rational, c1: &Rational) -> bool {
    // a0 + n c1 = 0 for some n >= 0
    let r = -(a0 / c1);
    r.is_integer() && r >= Rational::zero()
}

/// `a_2 = 0`, `a_1 = c1 (x - b0)` and one of four `a_3` shapes, each drawn
/// with probability 1/4. Generic cubics almost never have a 2-orthogonal
/// eigen-sequence; the square shapes are where the in-scope draws come from.
pub fn theorem4_draw<R: Rng>(rng: &mut R) -> Theorem4Draw {
    loop {
        let a0 = random_rational(rng);
        let c1 = random_rational(rng);
        let b0 = random_rational(rng);
        let a1 = Polynomial::linear_root(&b0).scale(&c1);
        let shift = Polynomial::linear_root(&b0);
        let (shape, a3) = match rng.gen_range(0..4) {
            0 => (CubicShape::Unit, Polynomial::one()),
            1 => {
                let h = random_rational(rng);
                let s = &Polynomial::one() + &shift.scale(&h.recip());
                (CubicShape::UnitSquare, &s * &s)
            }
            2 => {
                let h = random_rational(rng);
                let k = random_rational(rng);
                let s = &shift + &Polynomial::constant(h);
                (CubicShape::ScaledSquare, (&s * &s).scale(&k))
            }
            _ => (CubicShape::Cubic, random_poly(rng, 3)),
        };
        if forbids_zero_lambda(&a0, &c1) {
            continue;
        }
        let g1 = -(int(3) * &c1).recip();
        if reciprocal_index(&(a3.coeff(3) * &g1)).is_some() {
            continue;
        }
        let j = DiffOperator::third_order(Polynomial::constant(a0), a1, Polynomial::zero(), a3)
            .expect("normal form by construction");
        return Theorem4Draw { operator: j, shape };
    }
}

/// Shape of `a_2` in a draw with `a_3 = tau a_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearShape {
    /// `a_2 = 1/tau`
    Reciprocal,
    /// Random constant.
    Constant,
    /// Random degree one.
    Linear,
}

#[derive(Clone, Debug)]
pub struct Theorem5Draw {
    pub operator: DiffOperator,
    pub tau: Rational,
    pub shape: LinearShape,
}

/// `a_3 = tau a_2`, `deg a_2 <= 1`, `a_1 = c1 (x - b0)`; the three `a_2`
/// shapes are equally likely.
pub fn theorem5_draw<R: Rng>(rng: &mut R) -> Theorem5Draw {
    loop {
        let a0 = random_rational(rng);
        let c1 = random_rational(rng);
        let b0 = random_rational(rng);
        let tau = random_rational(rng);
        let a1 = Polynomial::linear_root(&b0).scale(&c1);
        let (shape, a2) = match rng.gen_range(0..3) {
            0 => (LinearShape::Reciprocal, Polynomial::constant(tau.recip())),
            1 => (LinearShape::Constant, random_poly(rng, 0)),
            _ => (LinearShape::Linear, random_poly(rng, 1)),
        };
        if forbids_zero_lambda(&a0, &c1) {
            continue;
        }
        let a3 = a2.scale(&tau);
        let j = DiffOperator::third_order(Polynomial::constant(a0), a1, a2, a3)
            .expect("normal form by construction");
        return Theorem5Draw { operator: j, tau, shape };
    }
}

fn rc_from(beta: Vec<Rational>, alpha: Vec<Rational>, gamma: Vec<Rational>) -> RecurrenceCoeffs {
    RecurrenceCoeffs::new(beta, alpha, gamma)
}

/// Free parameters for the `a_2 = 0` closed forms: recurrence values with
/// `alpha_1 = 0`, `a_1` forced by `(b0, g1)`, `a_3` a random admissible cubic.
pub fn theorem4_point<R: Rng>(rng: &mut R) -> (DiffOperator, RecurrenceCoeffs) {
    loop {
        let beta: Vec<Rational> = (0..4).map(|_| random_rational(rng)).collect();
        let mut alpha: Vec<Rational> = (0..4).map(|_| random_rational(rng)).collect();
        alpha[0] = Rational::zero();
        let gamma: Vec<Rational> = (0..4).map(|_| random_rational(rng)).collect();
        let a3 = random_poly(rng, 3);
        let a0 = random_rational(rng);
        if reciprocal_index(&(a3.coeff(3) * &gamma[0])).is_some() {
            continue;
        }
        let a1 = Polynomial::linear_root(&beta[0]).scale(&-(int(3) * &gamma[0]).recip());
        let j = DiffOperator::third_order(Polynomial::constant(a0), a1, Polynomial::zero(), a3)
            .expect("normal form by construction");
        return (j, rc_from(beta, alpha, gamma));
    }
}

/// Free parameters for the `a_3 = tau a_2` closed forms, with
/// `alpha_4 = alpha_2 g3 / g2` imposed and the admissibility bound respected.
pub fn theorem5_point<R: Rng>(rng: &mut R) -> (DiffOperator, RecurrenceCoeffs, Rational) {
    loop {
        let beta: Vec<Rational> = (0..4).map(|_| random_rational(rng)).collect();
        let mut alpha: Vec<Rational> = (0..4).map(|_| random_rational(rng)).collect();
        let gamma: Vec<Rational> = (0..4).map(|_| random_rational(rng)).collect();
        alpha[3] = &alpha[1] * &gamma[2] / &gamma[1];
        let tau = random_rational(rng);
        let a2 = random_poly(rng, 1);
        let a0 = random_rational(rng);
        let g1 = &gamma[0];
        let shift = int(2) * (&beta[1] - &beta[3]) / (int(3) * g1);
        if reciprocal_index(&((a2.coeff(1) + shift) * g1 / (int(2) * &tau))).is_some() {
            continue;
        }
        let a1 = Polynomial::linear_root(&beta[0]).scale(&-(int(3) * g1).recip());
        let a3 = a2.scale(&tau);
        let j = DiffOperator::third_order(Polynomial::constant(a0), a1, a2, a3)
            .expect("normal form by construction");
        return (j, rc_from(beta, alpha, gamma), tau);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_in_range() {
        let mut rng = seeded(7);
        for _ in 0..500 {
            let r = random_rational(&mut rng);
            assert!(!r.is_zero());
            assert!(r.numer().magnitude() <= &20u32.into());
            assert!(r.denom() <= &20.into());
        }
    }

    #[test]
    fn same_seed_same_draws() {
        let a: Vec<_> = (0..5).map(|_| theorem4_draw(&mut seeded(3)).operator).collect();
        let b: Vec<_> = (0..5).map(|_| theorem4_draw(&mut seeded(3)).operator).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn lowering_draws_classify() {
        let mut rng = seeded(11);
        for k in 0..=3 {
            let j = random_lowering(&mut rng, 3, k, 10);
            assert_eq!(j.classify_order(10).unwrap().k(), Some(k));
        }
    }

    #[test]
    fn points_satisfy_constraints() {
        let mut rng = seeded(5);
        let (_, rc, _) = theorem5_point(&mut rng);
        assert_eq!(rc.alpha(4).unwrap(), &(rc.alpha(2).unwrap() * rc.gamma(3).unwrap() / rc.gamma(2).unwrap()));
        let (j, rc) = theorem4_point(&mut rng);
        assert!(rc.alpha(1).unwrap().is_zero());
        assert!(j.coeff(2).is_zero());
    }
}
