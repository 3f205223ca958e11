//! Printed closed forms of the classical-system matrices, as explicit
//! rational functions of the recurrence coefficients and operator entries.
//!
//! These are kept apart from the constructions in [`crate::hahn`] on
//! purpose: the two are compared against each other.

use num_traits::One;

use crate::poly::{int, Polynomial, Rational};
use crate::two_orth::RecurrenceCoeffs;
use crate::error::Result;

fn lin(c0: Rational, c1: Rational) -> Polynomial {
    Polynomial::new(vec![c0, c1])
}

/// `[[phi11, phi12], [phi21, phi22]]` for `a_2 = 0`, `a_1 = -(x - b0)/(3 g1)`,
/// `alpha_1 = 0`; `a33` is the leading coefficient of `a_3`.
pub fn phi_theorem4(rc: &RecurrenceCoeffs, a33: &Rational) -> Result<[[Polynomial; 2]; 2]> {
    let (b0, b1, b2) = (rc.beta(0)?.clone(), rc.beta(1)?.clone(), rc.beta(2)?.clone());
    let (al2, al3) = (rc.alpha(2)?.clone(), rc.alpha(3)?.clone());
    let (g1, g2) = (rc.gamma(1)?.clone(), rc.gamma(2)?.clone());
    let a = a33.clone();
    let one = Rational::one();
    let three_g1 = int(3) * &g1;

    let phi11 = lin(
        &a * (&al2 * &b0 - &g1) - &al2 * &b0 / &three_g1 + &one,
        &al2 * (one.clone() / &three_g1 - &a),
    );
    let phi12 = lin(
        (int(-2) * &b0 + &b1 * (int(2) - int(3) * &a * &g1)) / int(3),
        &a * &g1,
    );
    let den = int(3) * &g1 * &g2;
    let k6 = int(6) * &a * &g1;
    let k9 = int(9) * &a * &g1;
    let phi21 = Polynomial::new(vec![
        (&al3 * (&al2 * &b0 - &g1) * (&one - &k9)
            + int(2) * &b0 * (&b0 + &b2 * (-&one + &k6)) * &g2)
            / &den,
        (&al2 * &al3 * (-&one + &k9)
            - int(2) * (&b2 * (-&one + &k6) + &b0 * (&one + &k6)) * &g2)
            / &den,
        int(4) * &a,
    ]);
    let three_g2 = int(3) * &g2;
    let phi22 = lin(
        (&al3 * &b1 * (-&one + &k9) + int(3) * (&one - int(4) * &a * &g1) * &g2) / &three_g2,
        &al3 * (&one - &k9) / &three_g2,
    );
    Ok([[phi11, phi12], [phi21, phi22]])
}

/// `[[w11, w12], [w21, w22]]` for `a_3 = tau a_2`, `a_2 = a20 + a21 x`,
/// `a_1 = -(x - b0)/(3 g1)` and `alpha_4 = alpha_2 g3 / g2`.
pub fn varpi_theorem5(
    rc: &RecurrenceCoeffs,
    tau: &Rational,
    a20: &Rational,
    a21: &Rational,
) -> Result<[[Polynomial; 2]; 2]> {
    let (b0, b1, b2, b3) = (
        rc.beta(0)?.clone(),
        rc.beta(1)?.clone(),
        rc.beta(2)?.clone(),
        rc.beta(3)?.clone(),
    );
    let (al1, al2, al3) = (rc.alpha(1)?.clone(), rc.alpha(2)?.clone(), rc.alpha(3)?.clone());
    let (g1, g2) = (rc.gamma(1)?.clone(), rc.gamma(2)?.clone());
    let t = tau.clone();
    let two = int(2);
    let three = int(3);

    // b1 + b2 - 2(b3 + tau) and b1 + b2 - 2 b3 + tau
    let s = &b1 + &b2 - &two * (&b3 + &t);
    let s2 = &b1 + &b2 - &two * &b3 + &t;
    let den6 = int(6) * &g1 * &t;
    let den9 = int(9) * &g1 * &g1 * &g2 * &t;

    let w11 = lin(
        (&three * &b0 * &g2 + &al2 * &b0 * &s
            + &g1 * (int(-2) * &b0 - &three * &b1 + &two * &b3 + int(6) * &t))
            / &den6,
        (&three * (&g1 - &g2) - &al2 * &s) / &den6,
    );
    let w12 = lin(
        (&g1 * (&three * &g1 * a20 - &two * (&al2 + &two * &b0 * &t + &b1 * (&b1 - &b3 - &two * &t)))
            + &al1 * (-&g1 + &three * &g2 + &al2 * &s))
            / &den6,
        (&three * &g1 * a21 + &two * &b1 - &two * &b3) / (int(6) * &t),
    );
    let w21 = lin(
        (-&three * &al1 * &b0 * &g2 * &g2
            + &g2 * &g1 * (&al1 * (&two * &b0 - &two * &b3 + &three * (&b1 + &t)) + int(6) * &b0 * (&b0 - &b2) * &t)
            + &al2 * &b0 * (&three * &al3 * &g1 * &t - &al1 * &g2 * &s2)
            - &three * &al3 * &g1 * &g1 * &t)
            / &den9,
        (&al2 * (&al1 * &g2 * &s2 - &three * &al3 * &g1 * &t)
            + &three * &g2 * (&al1 * (&g2 - &g1) + &two * (&b2 - &b0) * &g1 * &t))
            / &den9,
    );
    let w22 = lin(
        (&al1 * &g1
            * (&g2
                * (-&three * &g1 * a20
                    + int(7) * &b0 * &t
                    + &two * (&b1 * &b1 + &b1 * (&t - &b3) - &three * &b2 * &t))
                + &al2 * (&two * &g2 + &three * &al3 * &t))
            - &al1 * &al1 * &g2 * (-&g1 + &three * &g2 + &al2 * &s2)
            - &three * &g1 * &g1 * &t * (&al3 * &b1 - &three * &g2))
            / &den9,
        (&three * &al3 * &g1 * &t - &al1 * &g2 * (&three * &g1 * a21 + &two * &b1 - &two * &b3 + &three * &t))
            / (int(9) * &g1 * &g2 * &t),
    );
    Ok([[w11, w12], [w21, w22]])
}
