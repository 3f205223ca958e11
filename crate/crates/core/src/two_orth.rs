//! 2-orthogonal monic polynomial sequences.
//!
//! A 2-orthogonal MPS is generated by
//!
//! ```text
//! P_0 = 1,  P_1 = x - b_0,  P_2 = (x - b_1) P_1 - a_1,
//! P_{n+3} = (x - b_{n+2}) P_{n+2} - a_{n+2} P_{n+1} - g_{n+1} P_n,
//! ```
//!
//! with every `g_{n+1} != 0`. Its dual sequence satisfies
//! `x u_n = u_{n-1} + b_n u_n + a_{n+1} u_{n+1} + g_{n+1} u_{n+2}` and every
//! `u_n` is a polynomial combination of the pair `(u_0, u_1)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, TwoOrthFailure};
use crate::forms::MomentForm;
use crate::poly::{format_rational, serde_rational, Polynomial, Rational};
use crate::report::{verify_form_eq, CheckLine};

/// `beta[n] = b_n`, `alpha[n] = a_{n+1}`, `gamma[n] = g_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceCoeffs {
    #[serde(with = "serde_rational::vec")]
    pub beta: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub alpha: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub gamma: Vec<Rational>,
}

impl RecurrenceCoeffs {
    pub fn new(beta: Vec<Rational>, alpha: Vec<Rational>, gamma: Vec<Rational>) -> Self {
        RecurrenceCoeffs { beta, alpha, gamma }
    }

    /// `b_n`
    pub fn beta(&self, n: usize) -> Result<&Rational> {
        self.beta
            .get(n)
            .ok_or(Error::MissingCoefficient { name: "beta", index: n })
    }

    /// `a_n`, `n >= 1`.
    pub fn alpha(&self, n: usize) -> Result<&Rational> {
        n.checked_sub(1)
            .and_then(|i| self.alpha.get(i))
            .ok_or(Error::MissingCoefficient { name: "alpha", index: n })
    }

    /// `g_n`, `n >= 1`.
    pub fn gamma(&self, n: usize) -> Result<&Rational> {
        n.checked_sub(1)
            .and_then(|i| self.gamma.get(i))
            .ok_or(Error::MissingCoefficient { name: "gamma", index: n })
    }

    /// `g_n`, additionally required to be nonzero.
    pub fn gamma_nonzero(&self, n: usize) -> Result<&Rational> {
        let g = self.gamma(n)?;
        if g.is_zero() {
            return Err(Error::ZeroGamma { index: n });
        }
        Ok(g)
    }

    /// First stored `g_n` that vanishes.
    pub fn first_zero_gamma(&self) -> Option<usize> {
        self.gamma.iter().position(Zero::is_zero).map(|i| i + 1)
    }

    /// Exactly the coefficients `generate(_, n_max)` consumes:
    /// `b_0..b_{n_max-1}`, `a_1..a_{n_max-1}`, `g_1..g_{n_max-2}`.
    pub fn truncated(&self, n_max: usize) -> Self {
        let take = |v: &[Rational], k: usize| v[..k.min(v.len())].to_vec();
        RecurrenceCoeffs {
            beta: take(&self.beta, n_max),
            alpha: take(&self.alpha, n_max.saturating_sub(1)),
            gamma: take(&self.gamma, n_max.saturating_sub(2)),
        }
    }

    pub fn to_strings(&self) -> [Vec<String>; 3] {
        let f = |v: &[Rational]| v.iter().map(format_rational).collect();
        [f(&self.beta), f(&self.alpha), f(&self.gamma)]
    }
}

/// Monic polynomial sequence prefix: entry `n` is monic of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mps {
    polys: Vec<Polynomial>,
}

impl Mps {
    pub fn new(polys: Vec<Polynomial>) -> Result<Self> {
        for (n, p) in polys.iter().enumerate() {
            if p.degree() != Some(n) {
                return Err(Error::InvalidMps { index: n, reason: "has the wrong degree" });
            }
            if !p.is_monic() {
                return Err(Error::InvalidMps { index: n, reason: "is not monic" });
            }
        }
        Ok(Mps { polys })
    }

    /// `x^0, x^1, ..., x^n_max`
    pub fn monomials(n_max: usize) -> Self {
        Mps {
            polys: (0..=n_max).map(|n| Polynomial::monomial(Rational::one(), n)).collect(),
        }
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn get(&self, n: usize) -> &Polynomial {
        &self.polys[n]
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn into_polys(self) -> Vec<Polynomial> {
        self.polys
    }
}

/// The canonical regular vector `(u_0, u_1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPair {
    pub u0: MomentForm,
    pub u1: MomentForm,
}

impl DualPair {
    /// Takes the first two entries of a dual sequence.
    pub fn from_duals(duals: &[MomentForm]) -> Self {
        DualPair {
            u0: duals[0].clone(),
            u1: duals[1].clone(),
        }
    }

    pub fn get(&self, nu: usize) -> &MomentForm {
        match nu {
            0 => &self.u0,
            1 => &self.u1,
            _ => panic!("dual pair index {nu} out of range"),
        }
    }
}

/// `P_0 ..= P_{n_max}` from the recurrence.
pub fn generate(rc: &RecurrenceCoeffs, n_max: usize) -> Result<Mps> {
    let mut polys = vec![Polynomial::one()];
    if n_max >= 1 {
        polys.push(Polynomial::linear_root(rc.beta(0)?));
    }
    if n_max >= 2 {
        let p2 = &(Polynomial::linear_root(rc.beta(1)?) * &polys[1])
            - &Polynomial::constant(rc.alpha(1)?.clone());
        polys.push(p2);
    }
    for n in 0..n_max.saturating_sub(2) {
        let next = &(&(Polynomial::linear_root(rc.beta(n + 2)?) * &polys[n + 2])
            - &polys[n + 1].scale(rc.alpha(n + 2)?))
            - &polys[n].scale(rc.gamma(n + 1)?);
        polys.push(next);
    }
    Ok(Mps { polys })
}

/// Expansion of a polynomial in a monic basis, by back-substitution on the
/// leading term. Returns `c` with `p = sum_m c[m] P_m`.
pub fn expand_in_basis(p: &Polynomial, basis: &Mps) -> Vec<Rational> {
    let Some(d) = p.degree() else {
        return Vec::new();
    };
    let mut rest = p.clone();
    let mut out = vec![Rational::zero(); d + 1];
    for m in (0..=d).rev() {
        let c = rest.coeff(m);
        if !c.is_zero() {
            rest -= &basis.get(m).scale(&c);
            out[m] = c;
        }
    }
    out
}

/// Structure coefficients of an MPS: `beta[n] = b_n` and
/// `chi[n][nu]` with `x P_{n+1} = P_{n+2} + b_{n+1} P_{n+1} + sum_nu chi[n][nu] P_nu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureCoeffs {
    pub beta: Vec<Rational>,
    pub chi: Vec<Vec<Rational>>,
}

pub fn structure_coeffs(p: &Mps) -> StructureCoeffs {
    let mut beta = Vec::new();
    let mut chi = Vec::new();
    if p.len() >= 2 {
        beta.push(-p.get(1).coeff(0));
    }
    for n in 0..p.len().saturating_sub(2) {
        let r = &(Polynomial::x() * p.get(n + 1)) - p.get(n + 2);
        let mut c = expand_in_basis(&r, p);
        c.resize(n + 2, Rational::zero());
        beta.push(c.pop().unwrap());
        chi.push(c);
    }
    StructureCoeffs { beta, chi }
}

/// Recover `(b, a, g)` from an MPS that obeys a four-term recurrence.
///
/// Every `chi[n][nu]` with `nu < n - 1` must vanish exactly and every
/// fitted `g` must be nonzero; the first failure is reported.
pub fn fit_2orth_recurrence(p: &Mps) -> Result<RecurrenceCoeffs> {
    let sc = structure_coeffs(p);
    let mut alpha = Vec::new();
    let mut gamma = Vec::new();
    for (n, row) in sc.chi.iter().enumerate() {
        for (nu, c) in row.iter().enumerate().take(n.saturating_sub(1)) {
            if !c.is_zero() {
                return Err(Error::NotTwoOrthogonal {
                    index: n,
                    reason: TwoOrthFailure::NonzeroChi { nu, value: format_rational(c) },
                });
            }
        }
        alpha.push(row[n].clone());
        if n >= 1 {
            let g = row[n - 1].clone();
            if g.is_zero() {
                return Err(Error::NotTwoOrthogonal { index: n, reason: TwoOrthFailure::ZeroGamma });
            }
            gamma.push(g);
        }
    }
    Ok(RecurrenceCoeffs { beta: sc.beta, alpha, gamma })
}

/// Table `c[n][m]` with `x^n = sum_m c[n][m] P_m`, `n <= order`.
pub fn monomial_expansion(p: &Mps, order: usize) -> Result<Vec<Vec<Rational>>> {
    if p.len() <= order {
        return Err(Error::OrderExceeded { needed: order, available: p.len().saturating_sub(1) });
    }
    Ok((0..=order)
        .map(|n| expand_in_basis(&Polynomial::monomial(Rational::one(), n), p))
        .collect())
}

/// Moments `(u_k)_n = c[n][k]` of the `k`-th dual form, `n <= order`.
pub fn dual_moments(p: &Mps, k: usize, order: usize) -> Result<MomentForm> {
    if k > order {
        return Err(Error::OrderExceeded { needed: k, available: order });
    }
    let table = monomial_expansion(p, order)?;
    Ok(dual_from_table(&table, k))
}

/// `u_0 .. u_{count-1}`, each to the given order, sharing one basis change.
pub fn dual_sequence(p: &Mps, count: usize, order: usize) -> Result<Vec<MomentForm>> {
    let table = monomial_expansion(p, order)?;
    Ok((0..count).map(|k| dual_from_table(&table, k)).collect())
}

fn dual_from_table(table: &[Vec<Rational>], k: usize) -> MomentForm {
    MomentForm::new(
        table
            .iter()
            .map(|row| row.get(k).cloned().unwrap_or_else(Rational::zero))
            .collect(),
    )
}

/// The polynomial coefficients of `u_{2n} = E_n u_0 + A_{n-1} u_1` and
/// `u_{2n+1} = B_n u_0 + F_n u_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eabf {
    e: Vec<Polynomial>,
    /// `a[i] = A_{i-1}`
    a: Vec<Polynomial>,
    b: Vec<Polynomial>,
    f: Vec<Polynomial>,
}

impl Eabf {
    pub fn e(&self, n: usize) -> &Polynomial {
        &self.e[n]
    }

    /// `A_n` for `n >= -1`.
    pub fn a(&self, n: isize) -> &Polynomial {
        &self.a[(n + 1) as usize]
    }

    pub fn b(&self, n: usize) -> &Polynomial {
        &self.b[n]
    }

    pub fn f(&self, n: usize) -> &Polynomial {
        &self.f[n]
    }

    /// Largest `n` with `E_n, B_n, F_n, A_{n-1}` available.
    pub fn n_max(&self) -> usize {
        self.e.len() - 1
    }
}

/// `E_n, B_n, F_n` for `n <= n_max` and `A_n` for `-1 <= n <= n_max - 1`.
///
/// The coupled recurrences are solved pairwise, in the order
/// `B_{n+1}` (needs `E_{n+1}`), then `E_{n+2}`; and `F_{n+1}` then
/// `A_{n+1}`. Only `g`'s are divided by. Consumes coefficients up to index
/// `2 n_max`.
pub fn eabf_polys(rc: &RecurrenceCoeffs, n_max: usize) -> Result<Eabf> {
    let x = Polynomial::x();
    let shift = |i: usize| -> Result<Polynomial> { Ok(&x - &Polynomial::constant(rc.beta(i)?.clone())) };
    let g1 = rc.gamma_nonzero(1)?.clone();
    let mut e = vec![Polynomial::one()];
    let mut b = vec![Polynomial::zero()];
    let mut f = vec![Polynomial::one()];
    let mut a = vec![Polynomial::zero()];
    if n_max >= 1 {
        e.push(shift(0)?.scale(&g1.recip()));
    }
    // A_0 is needed by F_1 whenever n_max >= 1.
    if n_max >= 1 {
        a.push(Polynomial::constant(-(rc.alpha(1)? / &g1)));
    }
    for n in 0..n_max {
        // a_{2n+2} E_{n+1} + E_n = (x - b_{2n+1}) B_n - g_{2n+2} B_{n+1}
        let g = rc.gamma_nonzero(2 * n + 2)?;
        let rhs = &(&shift(2 * n + 1)? * &b[n]) - &(&e[n + 1].scale(rc.alpha(2 * n + 2)?) + &e[n]);
        b.push(rhs.scale(&g.recip()));
        // g_{2n+3} E_{n+2} = (x - b_{2n+2}) E_{n+1} - B_n - a_{2n+3} B_{n+1}
        if n + 2 <= n_max {
            let g = rc.gamma_nonzero(2 * n + 3)?;
            let rhs = &(&(&shift(2 * n + 2)? * &e[n + 1]) - &b[n]) - &b[n + 1].scale(rc.alpha(2 * n + 3)?);
            e.push(rhs.scale(&g.recip()));
        }
        // g_{2n+2} F_{n+1} = (x - b_{2n+1}) F_n - A_{n-1} - a_{2n+2} A_n
        let g = rc.gamma_nonzero(2 * n + 2)?;
        let rhs = &(&(&shift(2 * n + 1)? * &f[n]) - &a[n]) - &a[n + 1].scale(rc.alpha(2 * n + 2)?);
        f.push(rhs.scale(&g.recip()));
        // g_{2n+3} A_{n+1} = (x - b_{2n+2}) A_n - a_{2n+3} F_{n+1} - F_n
        if n + 2 <= n_max {
            let g = rc.gamma_nonzero(2 * n + 3)?;
            let rhs = &(&(&shift(2 * n + 2)? * &a[n + 1]) - &f[n + 1].scale(rc.alpha(2 * n + 3)?)) - &f[n];
            a.push(rhs.scale(&g.recip()));
        }
    }
    Ok(Eabf { e, a, b, f })
}

/// Moment-level checks of the dual sequence: biorthogonality, the dual
/// recurrence, and the `(u_0, u_1)` decompositions.
///
/// `duals[k]` must reach order `m + 1` (the recurrence multiplies by `x`).
pub fn check_dual_identities(
    rc: &RecurrenceCoeffs,
    p: &Mps,
    duals: &[MomentForm],
    m: usize,
) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();

    // <u_k, P_j> = delta
    let top = duals.len().min(p.len());
    for (k, u) in duals.iter().enumerate().take(top) {
        for j in 0..top {
            let got = u.act(p.get(j))?;
            let want = if j == k { Rational::one() } else { Rational::zero() };
            if got != want {
                return Err(Error::IdentityViolated {
                    tag: "Eq-SucDual".into(),
                    index: j,
                    lhs: format_rational(&got),
                    rhs: format_rational(&want),
                });
            }
        }
    }
    lines.push(CheckLine::new("Eq-SucDual", top.saturating_sub(1)));

    // x u_n = u_{n-1} + b_n u_n + a_{n+1} u_{n+1} + g_{n+1} u_{n+2}
    let x = Polynomial::x();
    for n in 0..duals.len().saturating_sub(2) {
        let lhs = duals[n].left_mul(&x)?;
        let mut rhs = duals[n]
            .scale(rc.beta(n)?)
            .add(&duals[n + 1].scale(rc.alpha(n + 1)?))
            .add(&duals[n + 2].scale(rc.gamma(n + 1)?));
        if n >= 1 {
            rhs = rhs.add(&duals[n - 1]);
        }
        verify_form_eq("Eq-functional-2orto", &lhs, &rhs, m)?;
    }
    lines.push(CheckLine::new("Eq-functional-2orto", m));

    // u_{2n} = E_n u_0 + A_{n-1} u_1, u_{2n+1} = B_n u_0 + F_n u_1
    let n_max = duals.len().saturating_sub(1) / 2;
    if n_max >= 1 {
        let eabf = eabf_polys(rc, n_max)?;
        let (u0, u1) = (&duals[0], &duals[1]);
        for n in 1..=n_max {
            let even = u0.left_mul(eabf.e(n))?.add(&u1.left_mul(eabf.a(n as isize - 1))?);
            let tag = format!("Eq-u{}", 2 * n);
            verify_form_eq(&tag, &duals[2 * n], &even, m)?;
            lines.push(CheckLine::new(tag, m));
            if 2 * n + 1 < duals.len() {
                let odd = u0.left_mul(eabf.b(n))?.add(&u1.left_mul(eabf.f(n))?);
                let tag = format!("Eq-u{}", 2 * n + 1);
                verify_form_eq(&tag, &duals[2 * n + 1], &odd, m)?;
                lines.push(CheckLine::new(tag, m));
            }
        }
    }
    Ok(lines)
}

/// `<u_nu, P_m P_n> = 0` for `n >= 2m + nu + 1` and `!= 0` at `n = 2m + nu`,
/// for `nu in {0, 1}` and `m <= m_max`, as far as the moments reach.
pub fn orthogonality_check(p: &Mps, duals: &DualPair, m_max: usize) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for nu in 0..2 {
        let u = duals.get(nu);
        let reach = u.order().min(p.len() - 1);
        for m in 0..=m_max {
            let diag = 2 * m + nu;
            if m + diag > reach || diag >= p.len() {
                break;
            }
            for n in diag..p.len() {
                if m + n > u.order() {
                    break;
                }
                let val = u.act(&(p.get(m) * p.get(n)))?;
                let ok = if n == diag { !val.is_zero() } else { val.is_zero() };
                if !ok {
                    let tag = if n == diag { "Eq-d-ortogonal-regular" } else { "Eq-d-ortogonal" };
                    return Err(Error::IdentityViolated {
                        tag: format!("{tag}[nu={nu},m={m}]"),
                        index: n,
                        lhs: format_rational(&val),
                        rhs: if n == diag { "nonzero".into() } else { "0".into() },
                    });
                }
            }
            lines.push(CheckLine::new(format!("Eq-d-ortogonal[nu={nu},m={m}]"), reach));
        }
    }
    Ok(lines)
}
