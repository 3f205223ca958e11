//! Frozen values from an independent Fraction-based implementation, and
//! published closed-form values evaluated by hand.

use dorth_core::hahn::{derivative_mps, hahn_check, intermediates, phi_theorem4, varpi_theorem5};
use dorth_core::poly::{int, parse_rational, rat};
use dorth_core::two_orth::{fit_2orth_recurrence, generate};
use dorth_core::{eigen_mps, DiffOperator, Error, Mps, Polynomial, Rational, RecurrenceCoeffs};

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn qs(v: &[&str]) -> Vec<Rational> {
    v.iter().map(|s| q(s)).collect()
}

fn poly(v: &[&str]) -> Polynomial {
    Polynomial::new(qs(v))
}

/// `a0 = 2`, `a1 = x - 1`, `a2 = 0`, `a3 = ((x + 1)/2)^2`.
fn instance_a() -> DiffOperator {
    DiffOperator::third_order(
        poly(&["2"]),
        poly(&["-1", "1"]),
        Polynomial::zero(),
        poly(&["1/4", "1/2", "1/4"]),
    )
    .unwrap()
}

/// `a0 = 3`, `a1 = 2x + 1`, `a2 = 1/2`, `a3 = 1`, `tau = 2`.
fn instance_b() -> DiffOperator {
    DiffOperator::third_order(poly(&["3"]), poly(&["1", "2"]), poly(&["1/2"]), poly(&["1"])).unwrap()
}

#[test]
fn instance_a_eigen_sequence_and_recurrence() {
    let (p, lambdas) = eigen_mps(&instance_a(), 14).unwrap();
    assert_eq!(lambdas[..6], qs(&["2", "3", "4", "5", "6", "7"])[..]);
    assert_eq!(p.get(3), &poly(&["-11/12", "3", "-11/4", "1"]));
    let rc = fit_2orth_recurrence(&p).unwrap();
    assert_eq!(rc.beta[..4], qs(&["1", "1", "3/4", "1/4"])[..]);
    assert_eq!(rc.alpha[..4], qs(&["0", "-1/2", "-23/16", "-21/8"])[..]);
    assert_eq!(rc.gamma[..4], qs(&["-1/3", "-23/24", "-161/96", "-35/16"])[..]);

    let d = derivative_fit(&p);
    assert_eq!(d.beta, qs(&["1", "5/6", "5/12"]));
    assert_eq!(d.alpha, qs(&["-1/6", "-115/144", "-7/4"]));
    assert_eq!(d.gamma, qs(&["-23/72", "-161/192", "-21/16"]));
}

#[test]
fn instance_b_eigen_sequence_and_recurrence() {
    let (p, lambdas) = eigen_mps(&instance_b(), 14).unwrap();
    assert_eq!(lambdas[..6], qs(&["3", "5", "7", "9", "11", "13"])[..]);
    assert_eq!(p.get(3), &poly(&["23/48", "9/8", "3/2", "1"]));
    let rc = fit_2orth_recurrence(&p).unwrap();
    assert_eq!(rc.beta[..4], qs(&["-1/2", "-1/2", "-1/2", "-1/2"])[..]);
    assert_eq!(rc.alpha[..4], qs(&["-1/8", "-1/4", "-3/8", "-1/2"])[..]);
    assert_eq!(rc.gamma[..4], qs(&["-1/6", "-1/2", "-1", "-5/3"])[..]);
    let d = derivative_fit(&p);
    assert_eq!(d.beta, qs(&["-1/2", "-1/2", "-1/2"]));
    assert_eq!(d.alpha, qs(&["-1/8", "-1/4", "-3/8"]));
    assert_eq!(d.gamma, qs(&["-1/6", "-1/2", "-1"]));
}

struct Fitted {
    beta: Vec<Rational>,
    alpha: Vec<Rational>,
    gamma: Vec<Rational>,
}

fn derivative_fit(p: &Mps) -> Fitted {
    let prefix = Mps::new(p.polys()[..14].to_vec()).unwrap();
    match hahn_check(&prefix).unwrap() {
        dorth_core::HahnVerdict::Classical(rc) => Fitted {
            beta: rc.beta[..3].to_vec(),
            alpha: rc.alpha[..3].to_vec(),
            gamma: rc.gamma[..3].to_vec(),
        },
        other => panic!("expected a classical verdict, got {other:?}"),
    }
}

#[test]
fn instance_a_phi_by_hand() {
    let j = instance_a();
    let (p, _) = eigen_mps(&j, 12).unwrap();
    let rc = fit_2orth_recurrence(&p).unwrap();
    let sys = phi_theorem4(&j, &rc).unwrap();
    let half = poly(&["1/2", "1/2"]);
    assert_eq!(sys.phi[0][0], half);
    assert!(sys.phi[0][1].is_zero());
    assert_eq!(sys.phi[1][0], poly(&["-1/4", "-1/4"]));
    assert_eq!(sys.phi[1][1], half);
    // Psi = [[0, 1], [2 E_1, 0]], E_1 = (x - b0)/g1 = -3(x - 1)
    assert_eq!(sys.psi[0][0], Polynomial::zero());
    assert_eq!(sys.psi[0][1], Polynomial::one());
    assert_eq!(sys.psi[1][0], poly(&["6", "-6"]));
    assert!(sys.psi[1][1].is_zero());
}

#[test]
fn p0_and_p1_under_a2_zero() {
    let j = instance_a();
    let (p, _) = eigen_mps(&j, 12).unwrap();
    let rc = fit_2orth_recurrence(&p).unwrap();
    let it = intermediates(&j, &rc).unwrap();
    assert_eq!(it.p0, j.coeff(1).scale(&int(-2)));
    assert!(it.p1.is_zero());
    assert!(it.pbar0.degree().unwrap_or(0) <= 2);
    assert!(it.pbar1.degree().unwrap_or(0) <= 1);
}

#[test]
fn theorem4_leading_coefficients() {
    // Any admissible point: phi12 leads with a33 g1, phi21 with 4 a33.
    let mut rng = dorth_core::sample::seeded(21);
    for _ in 0..5 {
        let (j, rc) = dorth_core::sample::theorem4_point(&mut rng);
        let sys = phi_theorem4(&j, &rc).unwrap();
        let a33 = j.entry(3, 3);
        assert_eq!(sys.phi[0][1].coeff(1), &a33 * rc.gamma(1).unwrap());
        assert_eq!(sys.phi[1][0].coeff(2), int(4) * &a33);
    }
}

#[test]
fn theorem5_printed_coefficients() {
    let mut rng = dorth_core::sample::seeded(22);
    for _ in 0..5 {
        let (j, rc, tau) = dorth_core::sample::theorem5_point(&mut rng);
        let sys = varpi_theorem5(&j, &rc, &tau).unwrap();
        let (b1, b2, b3) = (rc.beta(1).unwrap(), rc.beta(2).unwrap(), rc.beta(3).unwrap());
        let (g1, g2) = (rc.gamma(1).unwrap(), rc.gamma(2).unwrap());
        let a12 = j.entry(2, 1);
        let want12 = (int(2) * (b1 - b3) + int(3) * g1 * &a12) / (int(6) * &tau);
        assert_eq!(sys.phi[0][1].coeff(1), want12);
        let s = b1 + b2 - int(2) * (b3 + &tau);
        let want11 = (int(3) * (g1 - g2) - rc.alpha(2).unwrap() * &s) / (int(6) * g1 * &tau);
        assert_eq!(sys.phi[0][0].coeff(1), want11);
    }
}

#[test]
fn varpi11_slope_vanishes_when_alpha2_zero_and_gammas_equal() {
    let rc = RecurrenceCoeffs::new(
        qs(&["1/2", "3", "-2", "5/7"]),
        qs(&["4", "0", "2/3", "0"]),
        qs(&["-1/3", "-1/3", "5", "7"]),
    );
    let tau = rat(3, 2);
    let a2 = poly(&["1", "1/5"]);
    let a1 = Polynomial::linear_root(rc.beta(0).unwrap()).scale(&(int(-3) * rc.gamma(1).unwrap()).recip());
    let j = DiffOperator::third_order(poly(&["2"]), a1, a2.clone(), a2.scale(&tau)).unwrap();
    let sys = varpi_theorem5(&j, &rc, &tau).unwrap();
    assert_eq!(sys.phi[0][0].coeff(1), int(0));
}

#[test]
fn theorem5_rejects_zero_tau() {
    let j = instance_b();
    let (p, _) = eigen_mps(&j, 10).unwrap();
    let rc = fit_2orth_recurrence(&p).unwrap();
    assert!(matches!(
        varpi_theorem5(&j, &rc, &int(0)),
        Err(Error::HypothesisViolated { .. })
    ));
}

#[test]
fn derivative_mps_examples() {
    let mono = Mps::monomials(6);
    assert_eq!(derivative_mps(&mono).unwrap(), Mps::monomials(5));
    let toy = RecurrenceCoeffs::new(vec![int(0); 8], vec![int(0); 8], vec![int(1); 8]);
    let p = generate(&toy, 5).unwrap();
    assert_eq!(p.get(3), &Polynomial::from_ints(&[-1, 0, 0, 1]));
    assert_eq!(derivative_mps(&p).unwrap().get(2), &Polynomial::from_ints(&[0, 0, 1]));
}

#[test]
fn hahn_check_examples() {
    assert!(!hahn_check(&Mps::monomials(8)).unwrap().is_classical());
    let (p, _) = eigen_mps(&instance_a(), 10).unwrap();
    assert!(hahn_check(&p).unwrap().is_classical());
}

#[test]
fn antiderivative_of_regular_sequence_passes_derivative_fit() {
    let mut rng = dorth_core::sample::seeded(4);
    let rc = dorth_core::sample::random_rc(&mut rng, 10);
    let q = generate(&rc, 9).unwrap();
    // P_{n+1} = x^{n+1} + ... with P'_{n+1} = (n+1) Q_n, constant terms zero.
    let mut polys = vec![Polynomial::one()];
    for n in 0..q.len() {
        let qn = q.get(n).scale(&int(n as i64 + 1));
        let mut cs = vec![int(0)];
        cs.extend(qn.coeffs().iter().enumerate().map(|(i, c)| c / int(i as i64 + 1)));
        polys.push(Polynomial::new(cs));
    }
    let p = Mps::new(polys).unwrap();
    let dq = derivative_mps(&p).unwrap();
    assert_eq!(dq, q);
    assert!(hahn_check(&p).unwrap().is_classical());
    let fitted = fit_2orth_recurrence(&dq).unwrap();
    assert_eq!(fitted.beta[..], rc.beta[..q.len() - 1]);
    assert_eq!(fitted.gamma[..], rc.gamma[..q.len() - 3]);
}
