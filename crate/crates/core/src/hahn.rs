//! Hahn-classical structure of 2-orthogonal eigenpolynomials of a
//! third-order operator: the expansion coefficients of `J^(k)(u_0)`,
//! `J^(k)(u_1)`, the classical systems they lead to, and a direct test of
//! whether the derivative sequence is again 2-orthogonal.

use num_traits::Zero;
use serde::Serialize;

use crate::closed_forms;
use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::forms::MomentForm;
use crate::poly::{format_rational, int, rat, Polynomial, Rational};
use crate::report::{verify_degree, verify_form_eq, verify_form_zero, verify_poly_eq, CheckLine};
use crate::two_orth::{eabf_polys, fit_2orth_recurrence, DualPair, Eabf, Mps, RecurrenceCoeffs};

/// Polynomial coefficients in
/// `J^(1)(u_0) = p0 u_0 + p1 u_1`, `J^(1)(u_1) = f0 u_0 + f1 u_1`,
/// `J^(2)(u_0) = pbar0 u_0 + pbar1 u_1`, `J^(2)(u_1) = fbar0 u_0 + fbar1 u_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intermediates {
    pub lambdas: Vec<Rational>,
    pub eabf: Eabf,
    pub p0: Polynomial,
    pub p1: Polynomial,
    pub f0: Polynomial,
    pub f1: Polynomial,
    pub pbar0: Polynomial,
    pub pbar1: Polynomial,
    pub fbar0: Polynomial,
    pub fbar1: Polynomial,
}

fn require_third_order(j: &DiffOperator) -> Result<()> {
    if !j.is_normal_form() {
        return Err(Error::NotNormalForm);
    }
    if j.coeffs().len() > 4 {
        return Err(Error::HypothesisViolated {
            hypothesis: "J has order <= 3".into(),
            witness: format!("{} coefficients", j.coeffs().len()),
        });
    }
    Ok(())
}

/// Needs `beta_0..beta_3`, `alpha_1..alpha_4`, `gamma_1..gamma_4`.
pub fn intermediates(j: &DiffOperator, rc: &RecurrenceCoeffs) -> Result<Intermediates> {
    require_third_order(j)?;
    let l = j.lambda_seq(5);
    let eabf = eabf_polys(rc, 2)?;
    let (g1, g2, g3, g4) = (rc.gamma(1)?, rc.gamma(2)?, rc.gamma(3)?, rc.gamma(4)?);
    let a2 = rc.alpha(2)?;
    let (e1, e2) = (eabf.e(1), eabf.e(2));
    let (a0, a1) = (eabf.a(0), eabf.a(1));
    let (b1, b2) = (eabf.b(1), eabf.b(2));
    let (ff1, ff2) = (eabf.f(1), eabf.f(2));

    let p0 = e1.scale(&(g1 * (&l[0] - &l[2])));
    let p1 = a0.scale(&(g1 * (&l[1] - &l[2])));
    let f0 = &b1.scale(&(g2 * (&l[0] - &l[3]))) + &e1.scale(&(a2 * (&l[0] - &l[2])));
    let f1 = &ff1.scale(&(g2 * (&l[1] - &l[3]))) + &a0.scale(&(a2 * (&l[1] - &l[2])));

    let g13 = g1 * g3;
    let pbar0 = (&(&e2.scale(&(&l[4] - &l[0])) + &(&e2.derivative(1) * &p0)) + &(&a1.derivative(1) * &f0)).scale(&g13);
    let pbar1 = (&(&a1.scale(&(&l[4] - &l[1])) + &(&e2.derivative(1) * &p1)) + &(&a1.derivative(1) * &f1)).scale(&g13);

    let g24 = g2 * g4;
    let half = rat(1, 2);
    let b2dd = b2.derivative(2).scale(&half);
    let fbar0 = (&(&(&b2.scale(&(&l[5] - &l[0])) + &(&b2.derivative(1) * &p0)) + &(&ff2.derivative(1) * &f0))
        - &(&b2dd * &pbar0))
        .scale(&g24);
    let fbar1 = (&(&(&ff2.scale(&(&l[5] - &l[1])) + &(&b2.derivative(1) * &p1)) + &(&ff2.derivative(1) * &f1))
        - &(&b2dd * &pbar1))
        .scale(&g24);

    Ok(Intermediates {
        lambdas: l,
        eabf,
        p0,
        p1,
        f0,
        f1,
        pbar0,
        pbar1,
        fbar0,
        fbar1,
    })
}

/// `sum p_i v_i`, valid to the smallest resulting order.
fn combo(terms: &[(&Polynomial, &MomentForm)]) -> Result<MomentForm> {
    let mut acc: Option<MomentForm> = None;
    for (p, v) in terms {
        let t = v.left_mul(p)?;
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t),
        });
    }
    Ok(acc.expect("combo of no terms"))
}

/// `J^(k)(u)` for `k = 0..=3`.
fn j_images(j: &DiffOperator, u: &MomentForm) -> Result<Vec<MomentForm>> {
    (0..=3).map(|k| j.shifted(k).transpose_apply(u)).collect()
}

/// Checks every expansion of `J`-images of the dual sequence in the basis
/// `(u_0, u_1)` on moments `0..=m`. `duals` holds `u_0..=u_5`.
pub fn j_expansion_check(
    j: &DiffOperator,
    rc: &RecurrenceCoeffs,
    duals: &[MomentForm],
    m: usize,
) -> Result<Vec<CheckLine>> {
    if duals.len() < 6 {
        return Err(Error::OrderExceeded {
            needed: 5,
            available: duals.len().saturating_sub(1),
        });
    }
    let it = intermediates(j, rc)?;
    let l = &it.lambdas;
    let eabf = &it.eabf;
    let (u0, u1) = (&duals[0], &duals[1]);
    let ju0 = j_images(j, u0)?;
    let ju1 = j_images(j, u1)?;
    let mut lines = Vec::new();

    // J(u_n) = lambda_n u_n
    for (n, u) in duals.iter().enumerate().take(6) {
        let lhs = j.transpose_apply(u)?;
        lines.push(verify_form_eq(&format!("Eq-J(u{n})"), &lhs, &u.scale(&l[n]), m)?);
    }

    lines.push(verify_form_eq("Eq-9.1", &ju0[1], &combo(&[(&it.p0, u0), (&it.p1, u1)])?, m)?);
    lines.push(verify_form_eq("Eq-9.2", &ju1[1], &combo(&[(&it.f0, u0), (&it.f1, u1)])?, m)?);
    lines.push(verify_form_eq("Eq-9.3", &ju0[2], &combo(&[(&it.pbar0, u0), (&it.pbar1, u1)])?, m)?);
    lines.push(verify_form_eq("Eq-9.4", &ju1[2], &combo(&[(&it.fbar0, u0), (&it.fbar1, u1)])?, m)?);

    // J^(3)(u) = a_3 u
    let a3 = j.coeff(3);
    lines.push(verify_form_eq("Eq-J3(u0)", &ju0[3], &u0.left_mul(&a3)?, m)?);
    lines.push(verify_form_eq("Eq-J3(u1)", &ju1[3], &u1.left_mul(&a3)?, m)?);

    // Leibniz form: lambda_k u_k = sum_j (-1)^j/j! [X^(j) J^(j)(u0) + Y^(j) J^(j)(u1)]
    let leibniz = |x: &Polynomial, y: &Polynomial| -> Result<MomentForm> {
        let mut acc: Option<MomentForm> = None;
        for (k, (a, b)) in ju0.iter().zip(&ju1).enumerate() {
            let mut w = crate::poly::inv_factorial(k);
            if k % 2 == 1 {
                w = -w;
            }
            let t = combo(&[(&x.derivative(k).scale(&w), a), (&y.derivative(k).scale(&w), b)])?;
            acc = Some(match acc {
                None => t,
                Some(s) => s.add(&t),
            });
        }
        Ok(acc.expect("four terms"))
    };
    for n in 0..=2 {
        let even = leibniz(eabf.e(n), eabf.a(n as isize - 1))?;
        lines.push(verify_form_eq(
            &format!("Eq-J(u2n)[n={n}]"),
            &duals[2 * n].scale(&l[2 * n]),
            &even,
            m,
        )?);
        let odd = leibniz(eabf.b(n), eabf.f(n))?;
        lines.push(verify_form_eq(
            &format!("Eq-J(u2n+1)[n={n}]"),
            &duals[2 * n + 1].scale(&l[2 * n + 1]),
            &odd,
            m,
        )?);
    }

    // The low-index specialisations, written out term by term.
    let half = rat(1, 2);
    let g1 = rc.gamma_nonzero(1)?;
    let (e1, e2, a0, a1) = (eabf.e(1), eabf.e(2), eabf.a(0), eabf.a(1));
    let (b1, b2, f1, f2) = (eabf.b(1), eabf.b(2), eabf.f(1), eabf.f(2));
    let neg = |p: Polynomial| -> Polynomial { -p };

    let rhs71 = combo(&[(&e1.scale(&l[0]), u0), (&a0.scale(&l[1]), u1)])?
        .sub(&ju0[1].scale(&g1.recip()));
    lines.push(verify_form_eq("Eq-7.1", &duals[2].scale(&l[2]), &rhs71, m)?);

    let rhs72 = combo(&[
        (&e2.scale(&l[0]), u0),
        (&neg(e2.derivative(1)), &ju0[1]),
        (&e2.derivative(2).scale(&half), &ju0[2]),
        (&a1.scale(&l[1]), u1),
        (&neg(a1.derivative(1)), &ju1[1]),
    ])?;
    lines.push(verify_form_eq("Eq-7.2", &duals[4].scale(&l[4]), &rhs72, m)?);

    let rhs81 = combo(&[
        (&b1.scale(&l[0]), u0),
        (&neg(b1.derivative(1)), &ju0[1]),
        (&f1.scale(&l[1]), u1),
        (&neg(f1.derivative(1)), &ju1[1]),
    ])?;
    lines.push(verify_form_eq("Eq-8.1", &duals[3].scale(&l[3]), &rhs81, m)?);

    let rhs82 = combo(&[
        (&b2.scale(&l[0]), u0),
        (&neg(b2.derivative(1)), &ju0[1]),
        (&b2.derivative(2).scale(&half), &ju0[2]),
        (&f2.scale(&l[1]), u1),
        (&neg(f2.derivative(1)), &ju1[1]),
        (&f2.derivative(2).scale(&half), &ju1[2]),
    ])?;
    lines.push(verify_form_eq("Eq-8.2", &duals[5].scale(&l[5]), &rhs82, m)?);

    Ok(lines)
}

/// The three derivative identities linking `a_1, a_2` to the intermediates.
pub fn lemma_identities_check(
    j: &DiffOperator,
    rc: &RecurrenceCoeffs,
    duals: &DualPair,
    m: usize,
) -> Result<Vec<CheckLine>> {
    let it = intermediates(j, rc)?;
    let (u0, u1) = (&duals.u0, &duals.u1);
    let a1 = j.coeff(1);
    let a2 = j.coeff(2);
    let a1_lead = a1.coeff(1);
    let two = int(2);
    let mut lines = Vec::new();

    // D(a2 u0) = (2 p0 + 4 a1) u0 + 2 p1 u1
    let lhs = u0.left_mul(&a2)?.derive();
    let rhs = combo(&[
        (&(&it.p0.scale(&two) + &a1.scale(&int(4))), u0),
        (&it.p1.scale(&two), u1),
    ])?;
    lines.push(verify_form_eq("Eq-Da2u0", &lhs, &rhs, m)?);

    // 1/2 D^2(a2 u1) - 3 a1^[1] u1 = D(f0 u0 + (2 a1 + f1) u1)
    let lhs = u1
        .left_mul(&a2)?
        .derive_n(2)
        .scale(&rat(1, 2))
        .sub(&u1.scale(&(int(3) * &a1_lead)));
    let rhs = combo(&[(&it.f0, u0), (&(&a1.scale(&two) + &it.f1), u1)])?.derive();
    lines.push(verify_form_eq("Eq-Da2u1", &lhs, &rhs, m)?);

    // D(pbar0 u0 + pbar1 u1) + (2 a1 + 4 p0) u0 + 4 p1 u1 = 0
    let lhs = combo(&[(&it.pbar0, u0), (&it.pbar1, u1)])?.derive().add(&combo(&[
        (&(&a1.scale(&two) + &it.p0.scale(&int(4))), u0),
        (&it.p1.scale(&int(4)), u1),
    ])?);
    lines.push(verify_form_zero("Eq-Dcomplete", &lhs, m)?);
    Ok(lines)
}

/// A 2x2 classical system
/// `D(phi_i1 u0 + phi_i2 u1) + psi_i1 u0 + psi_i2 u1 = 0`, `i = 1, 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalSystem {
    pub phi: [[Polynomial; 2]; 2],
    pub psi: [[Polynomial; 2]; 2],
    /// Tags of the two rows in reports.
    pub row_tags: [&'static str; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemStrings {
    pub phi: [[String; 2]; 2],
    pub psi: [[String; 2]; 2],
}

impl ClassicalSystem {
    /// `deg phi <= [[1, 1], [2, 1]]`, `deg psi <= [[0, 0], [1, 0]]`.
    pub fn check_degree_bounds(&self) -> Result<Vec<CheckLine>> {
        let bounds = [[1, 1], [2, 1]];
        let mut lines = Vec::new();
        for (i, row) in self.phi.iter().enumerate() {
            for (k, p) in row.iter().enumerate() {
                lines.push(verify_degree(&format!("deg-phi{}{}", i + 1, k + 1), p, bounds[i][k])?);
            }
        }
        for (i, row) in self.psi.iter().enumerate() {
            for (k, p) in row.iter().enumerate() {
                let bound = if (i, k) == (1, 0) { 1 } else { 0 };
                lines.push(verify_degree(&format!("deg-psi{}{}", i + 1, k + 1), p, bound)?);
            }
        }
        Ok(lines)
    }

    pub fn to_strings(&self) -> SystemStrings {
        let s = |m: &[[Polynomial; 2]; 2]| {
            [
                [m[0][0].to_string(), m[0][1].to_string()],
                [m[1][0].to_string(), m[1][1].to_string()],
            ]
        };
        SystemStrings {
            phi: s(&self.phi),
            psi: s(&self.psi),
        }
    }
}

fn psi_matrix(eabf: &Eabf) -> [[Polynomial; 2]; 2] {
    let two = int(2);
    [
        [Polynomial::zero(), Polynomial::one()],
        [eabf.e(1).scale(&two), eabf.a(0).scale(&two)],
    ]
}

fn hypothesis(what: &str, witness: impl Into<String>) -> Error {
    Error::HypothesisViolated {
        hypothesis: what.into(),
        witness: witness.into(),
    }
}

/// `Some(m)` iff `v = 1/(m+1)` for some `m >= 0`. Decides the admissibility
/// conditions for every `m` at once.
pub fn reciprocal_index(v: &Rational) -> Option<usize> {
    if v.numer() == &1.into() && v.denom() > &0.into() {
        let d: Option<usize> = num_traits::ToPrimitive::to_usize(v.denom());
        d.map(|d| d - 1)
    } else {
        None
    }
}

/// `a_1 = -(x - beta_0)/(3 gamma_1)` exactly.
fn check_a1_shape(j: &DiffOperator, rc: &RecurrenceCoeffs) -> Result<()> {
    let g1 = rc.gamma_nonzero(1)?;
    let want = Polynomial::linear_root(rc.beta(0)?).scale(&-(int(3) * g1).recip());
    let a1 = j.coeff(1);
    if a1 != want {
        return Err(hypothesis("a1 = -(x - beta0)/(3 gamma1)", format!("a1 = {a1}, expected {want}")));
    }
    Ok(())
}

fn compare_closed(names: [[&str; 2]; 2], defined: &[[Polynomial; 2]; 2], closed: &[[Polynomial; 2]; 2]) -> Result<()> {
    for i in 0..2 {
        for k in 0..2 {
            if defined[i][k] != closed[i][k] {
                return Err(Error::ClosedFormMismatch {
                    entry: names[i][k].into(),
                    defined: defined[i][k].to_string(),
                    closed: closed[i][k].to_string(),
                });
            }
        }
    }
    Ok(())
}

/// The system `Phi, Psi` for `a_2 = 0`, `a_1 = -(x - beta_0)/(3 gamma_1)`.
///
/// Built from the intermediates and compared with the printed closed forms.
pub fn phi_theorem4(j: &DiffOperator, rc: &RecurrenceCoeffs) -> Result<ClassicalSystem> {
    require_third_order(j)?;
    let a2 = j.coeff(2);
    if !a2.is_zero() {
        return Err(hypothesis("a2 = 0", format!("a2 = {a2}")));
    }
    check_a1_shape(j, rc)?;
    let al1 = rc.alpha(1)?;
    if !al1.is_zero() {
        return Err(hypothesis("alpha1 = 0", format!("alpha1 = {}", format_rational(al1))));
    }
    let g1 = rc.gamma(1)?;
    let a33 = j.entry(3, 3);
    if let Some(m) = reciprocal_index(&(&a33 * g1)) {
        return Err(hypothesis(
            "a33 != 1/(gamma1 (m+1))",
            format!("equality at m = {m}"),
        ));
    }

    let it = intermediates(j, rc)?;
    let a1 = j.coeff(1);
    let phi = [
        [
            it.f0.scale(&-g1.clone()),
            (&a1.scale(&int(2)) + &it.f1).scale(&-g1.clone()),
        ],
        [it.pbar0.clone(), it.pbar1.clone()],
    ];
    let closed = closed_forms::phi_theorem4(rc, &a33)?;
    compare_closed([["phi11", "phi12"], ["phi21", "phi22"]], &phi, &closed)?;
    Ok(ClassicalSystem {
        phi,
        psi: psi_matrix(&it.eabf),
        row_tags: ["Eq-EqClassic-1", "Eq-EqClassic-2"],
    })
}

/// The system `varpi, Psi` for `a_3 = tau a_2`, `deg a_2 <= 1`,
/// `a_1 = -(x - beta_0)/(3 gamma_1)` and `alpha_4 = alpha_2 gamma_3 / gamma_2`.
pub fn varpi_theorem5(j: &DiffOperator, rc: &RecurrenceCoeffs, tau: &Rational) -> Result<ClassicalSystem> {
    require_third_order(j)?;
    if tau.is_zero() {
        return Err(hypothesis("tau != 0", "tau = 0"));
    }
    let a2 = j.coeff(2);
    let a3 = j.coeff(3);
    if a3 != a2.scale(tau) {
        return Err(hypothesis("a3 = tau a2", format!("a3 = {a3}, a2 = {a2}")));
    }
    if !j.entry(2, 2).is_zero() {
        return Err(hypothesis("a2^[2] = 0", format!("a2 = {a2}")));
    }
    check_a1_shape(j, rc)?;
    let (g1, g2, g3) = (rc.gamma(1)?, rc.gamma_nonzero(2)?, rc.gamma(3)?);
    let want_a4 = rc.alpha(2)? * g3 / g2;
    if rc.alpha(4)? != &want_a4 {
        return Err(hypothesis(
            "alpha4 = alpha2 gamma3 / gamma2",
            format!("alpha4 = {}, expected {}", format_rational(rc.alpha(4)?), format_rational(&want_a4)),
        ));
    }
    let a21 = j.entry(2, 1);
    let a20 = j.entry(2, 0);
    let shift = int(2) * (rc.beta(1)? - rc.beta(3)?) / (int(3) * g1);
    if let Some(m) = reciprocal_index(&((&a21 + &shift) * g1 / (int(2) * tau))) {
        return Err(hypothesis(
            "a2^[1] != 2 tau/(gamma1 (m+1)) - 2(beta1 - beta3)/(3 gamma1)",
            format!("equality at m = {m}"),
        ));
    }

    let it = intermediates(j, rc)?;
    let a1 = j.coeff(1);
    let k = (int(3) * j.entry(1, 1)).recip();
    let inv2t = (int(2) * tau).recip();
    let w11 = (&it.fbar0.scale(&inv2t) + &it.f0).scale(&k);
    let w12 = (&(&a1.scale(&int(2)) + &it.f1) - &(&a2 - &it.fbar1).scale(&inv2t)).scale(&k);
    let a0 = it.eabf.a(0).scale(&rat(2, 3));
    let w21 = &it.pbar0 + &(&a0 * &w11);
    let w22 = &it.pbar1 + &(&a0 * &w12);
    let varpi = [[w11, w12], [w21, w22]];
    let closed = closed_forms::varpi_theorem5(rc, tau, &a20, &a21)?;
    compare_closed(
        [["Table-1-varpi11", "Table-1-varpi12"], ["Table-1-varpi21", "Table-1-varpi22"]],
        &varpi,
        &closed,
    )?;
    Ok(ClassicalSystem {
        phi: varpi,
        psi: psi_matrix(&it.eabf),
        row_tags: ["Eq-case2-1", "Eq-case2-2"],
    })
}

/// Both rows of the system, on moments `0..=m`.
pub fn classical_system_check(sys: &ClassicalSystem, duals: &DualPair, m: usize) -> Result<Vec<CheckLine>> {
    let (u0, u1) = (&duals.u0, &duals.u1);
    let mut lines = Vec::new();
    for i in 0..2 {
        let lhs = combo(&[(&sys.phi[i][0], u0), (&sys.phi[i][1], u1)])?
            .derive()
            .add(&combo(&[(&sys.psi[i][0], u0), (&sys.psi[i][1], u1)])?);
        lines.push(verify_form_zero(sys.row_tags[i], &lhs, m)?);
    }
    Ok(lines)
}

/// `Q_n = P'_{n+1}/(n+1)`, one shorter than `p`.
pub fn derivative_mps(p: &Mps) -> Result<Mps> {
    let polys = (1..p.len())
        .map(|n| p.get(n).derivative(1).scale(&int(n as i64).recip()))
        .collect();
    Mps::new(polys)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HahnVerdict {
    /// The derivative sequence is 2-orthogonal with these coefficients.
    Classical(RecurrenceCoeffs),
    NotClassical(Error),
}

impl HahnVerdict {
    pub fn is_classical(&self) -> bool {
        matches!(self, HahnVerdict::Classical(_))
    }
}

/// Direct test: is `{P'_{n+1}/(n+1)}` 2-orthogonal?
///
/// A failed fit is a negative verdict; only a too-short input is an error.
pub fn hahn_check(p: &Mps) -> Result<HahnVerdict> {
    if p.len() < 5 {
        return Err(Error::InvalidMps {
            index: p.len(),
            reason: "needs at least P_0..P_4",
        });
    }
    let q = derivative_mps(p)?;
    Ok(match fit_2orth_recurrence(&q) {
        Ok(rc) => HahnVerdict::Classical(rc),
        Err(e) => HahnVerdict::NotClassical(e),
    })
}

/// `p0 = -2 a1` and `p1 = 0` (with `alpha_1 = 0`) when `a_2 = 0` and `a_1`
/// has the forced shape.
pub fn p_shape_check(j: &DiffOperator, rc: &RecurrenceCoeffs) -> Result<Vec<CheckLine>> {
    let it = intermediates(j, rc)?;
    let mut lines = vec![verify_poly_eq("Eq-p0", &it.p0, &j.coeff(1).scale(&int(-2)))?];
    lines.push(verify_poly_eq("Eq-p1", &it.p1, &Polynomial::zero())?);
    let al1 = rc.alpha(1)?;
    if !al1.is_zero() {
        return Err(Error::IdentityViolated {
            tag: "Eq-alpha1".into(),
            index: 1,
            lhs: format_rational(al1),
            rhs: "0".into(),
        });
    }
    lines.push(CheckLine::new("Eq-alpha1", 1));
    Ok(lines)
}
