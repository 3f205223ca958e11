//! Degree-non-increasing differential operators
//! `J = sum_nu a_nu(x)/nu! D^nu` with `deg a_nu <= nu`.
//!
//! The same coefficient list drives three things: the action on
//! polynomials, the transposed action on forms
//! (`J(u) = sum_n (-1)^n/n! D^n(a_n u)`), and the shifted operators
//! `J^(m)` whose coefficient list is `a_{n+m}`.

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forms::MomentForm;
use crate::poly::{binomial, format_rational, inv_factorial, parse_rational, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    coeffs: Vec<Polynomial>,
    /// `Some(m)` for `J^(m)`; these break the `deg a_nu <= nu` normal form.
    shift: Option<usize>,
}

impl DiffOperator {
    /// Operator in normal form. Fails if some `deg a_nu > nu`.
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self> {
        for (nu, a) in coeffs.iter().enumerate() {
            if a.degree().is_some_and(|d| d > nu) {
                return Err(Error::NotNormalForm);
            }
        }
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Polynomial::is_zero) {
            coeffs.pop();
        }
        Ok(DiffOperator { coeffs, shift: None })
    }

    pub fn identity() -> Self {
        DiffOperator::new(vec![Polynomial::one()]).unwrap()
    }

    /// Plain derivative `D`.
    pub fn derivative() -> Self {
        DiffOperator::new(vec![Polynomial::zero(), Polynomial::one()]).unwrap()
    }

    /// `a_0 I + a_1 D + a_2/2 D^2 + a_3/6 D^3`.
    pub fn third_order(a0: Polynomial, a1: Polynomial, a2: Polynomial, a3: Polynomial) -> Result<Self> {
        DiffOperator::new(vec![a0, a1, a2, a3])
    }

    /// `a_nu(x)`, zero past the end of the list.
    pub fn coeff(&self, nu: usize) -> Polynomial {
        self.coeffs.get(nu).cloned().unwrap_or_default()
    }

    /// `a_i^{[nu]}`: coefficient of `x^i` in `a_nu`.
    pub fn entry(&self, nu: usize, i: usize) -> Rational {
        self.coeffs
            .get(nu)
            .map(|a| a.coeff(i))
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_normal_form(&self) -> bool {
        self.shift.is_none()
    }

    /// Highest `nu` with `a_nu != 0`; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `max_nu deg a_nu`, the number of moment orders a transposed action consumes.
    pub fn max_coeff_degree(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(Polynomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// `J(p) = sum_nu a_nu p^(nu) / nu!`
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (nu, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let d = p.derivative(nu);
            if d.is_zero() {
                break;
            }
            out += &(a * &d).scale(&inv_factorial(nu));
        }
        out
    }

    /// `J^(m)`, coefficient list `a_{n+m}`.
    pub fn shifted(&self, m: usize) -> DiffOperator {
        if m == 0 {
            return self.clone();
        }
        let coeffs = self.coeffs.iter().skip(m).cloned().collect();
        DiffOperator {
            coeffs,
            shift: Some(self.shift.unwrap_or(0) + m),
        }
    }

    /// Transposed action on forms, `<J(u), f> = <u, J(f)>`.
    pub fn transpose_apply(&self, u: &MomentForm) -> Result<MomentForm> {
        let need = self.max_coeff_degree();
        if need > u.order() {
            return Err(Error::OrderExceeded {
                needed: need,
                available: u.order(),
            });
        }
        let order = u.order() - need;
        let mut acc = MomentForm::zero(order);
        for (n, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut sign = inv_factorial(n);
            if n % 2 == 1 {
                sign = -sign;
            }
            let term = u.left_mul(a)?.derive_n(n).scale(&sign);
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// `lambda_{n+k}^{[k]} = sum_{nu=0}^{n} C(n+k, n+k-nu) a_{n-nu}^{[n+k-nu]}`.
    ///
    /// For `k = 0` this is the diagonal of the operator matrix.
    pub fn lambda(&self, k: usize, n: usize) -> Rational {
        (0..=n)
            .map(|nu| {
                let c = binomial(n + k, n + k - nu);
                Rational::from_integer(c) * self.entry(n + k - nu, n - nu)
            })
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// `lambda_0^{[0]} ..= lambda_{n_max}^{[0]}`.
    pub fn lambda_seq(&self, n_max: usize) -> Vec<Rational> {
        (0..=n_max).map(|n| self.lambda(0, n)).collect()
    }

    /// Lowering-order classification checked for `0 <= n <= n_check`.
    ///
    /// The candidate `k` is the number of leading zero coefficients (the
    /// only `k` for which `J(x^i) = 0, i < k` and `J(x^k) != 0` can hold);
    /// it is then accepted iff every `deg a_nu <= nu - k` and every
    /// `lambda_{n+k}^{[k]}` up to the horizon is nonzero.
    pub fn classify_order(&self, n_check: usize) -> Result<LoweringClass> {
        if !self.is_normal_form() {
            return Err(Error::NotNormalForm);
        }
        let Some(k) = self.coeffs.iter().position(|a| !a.is_zero()) else {
            return Ok(LoweringClass::NotClassifiable {
                reason: "zero operator".into(),
            });
        };
        for (nu, a) in self.coeffs.iter().enumerate().skip(k) {
            if a.degree().is_some_and(|d| d + k > nu) {
                return Ok(LoweringClass::NotClassifiable {
                    reason: format!("deg a_{nu} exceeds {nu} - {k}"),
                });
            }
        }
        let lambdas: Vec<Rational> = (0..=n_check).map(|n| self.lambda(k, n)).collect();
        if let Some(n) = lambdas.iter().position(Zero::is_zero) {
            return Ok(LoweringClass::NotClassifiable {
                reason: format!("lambda_{}^[{k}] vanishes", n + k),
            });
        }
        Ok(LoweringClass::Lowering {
            k,
            lambdas,
            horizon: n_check,
        })
    }

    /// Normalised image `P~_n = J(P_{n+k}) / lambda_{n+k}^{[k]}` for every
    /// `n` the prefix allows.
    pub fn jimage_mps(&self, polys: &[Polynomial], k: usize) -> Result<Vec<Polynomial>> {
        let count = polys.len().saturating_sub(k);
        (0..count)
            .map(|n| {
                let lam = self.lambda(k, n);
                if lam.is_zero() {
                    return Err(Error::ZeroLambda { index: n + k });
                }
                Ok(self.apply(&polys[n + k]).scale(&lam.recip()))
            })
            .collect()
    }

    /// Coefficients as `a[nu][i]` rational strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.coeffs
            .iter()
            .map(|a| a.coeffs().iter().map(format_rational).collect())
            .collect()
    }

    pub fn from_strings(raw: &[Vec<String>]) -> Result<Self> {
        let coeffs = raw
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()
                    .map(Polynomial::new)
            })
            .collect::<Result<Vec<_>>>()?;
        DiffOperator::new(coeffs)
    }
}

impl Serialize for DiffOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiffOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        DiffOperator::from_strings(&raw).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoweringClass {
    /// `lambdas[n] = lambda_{n+k}^{[k]}`, all nonzero for `n <= horizon`.
    Lowering {
        k: usize,
        lambdas: Vec<Rational>,
        horizon: usize,
    },
    NotClassifiable { reason: String },
}

impl LoweringClass {
    pub fn k(&self) -> Option<usize> {
        match self {
            LoweringClass::Lowering { k, .. } => Some(*k),
            LoweringClass::NotClassifiable { .. } => None,
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        self.k() == Some(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn xpow(n: usize) -> Polynomial {
        Polynomial::monomial(Rational::one(), n)
    }
    use crate::poly::{int, rat};

    fn euler() -> DiffOperator {
        DiffOperator::new(vec![Polynomial::one(), Polynomial::x()]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let cube = xpow(3);
        assert_eq!(DiffOperator::derivative().apply(&cube), Polynomial::from_ints(&[0, 0, 3]));
        assert_eq!(euler().apply(&xpow(2)), Polynomial::from_ints(&[0, 0, 3]));
    }

    #[test]
    fn leading_coefficient_of_cube() {
        let j = DiffOperator::third_order(
            Polynomial::constant(rat(2, 3)),
            Polynomial::new(vec![int(1), rat(-1, 2)]),
            Polynomial::new(vec![int(4), int(1), rat(5, 7)]),
            Polynomial::new(vec![int(0), int(3), int(-2), rat(1, 9)]),
        )
        .unwrap();
        let lead = j.apply(&xpow(3)).coeff(3);
        let expect = rat(2, 3) + int(3) * rat(-1, 2) + int(3) * rat(5, 7) + rat(1, 9);
        assert_eq!(lead, expect);
        assert_eq!(j.lambda(0, 3), expect);
    }

    #[test]
    fn normal_form_enforced() {
        assert_eq!(
            DiffOperator::new(vec![Polynomial::x()]),
            Err(Error::NotNormalForm)
        );
    }

    #[test]
    fn shifts() {
        let j = DiffOperator::third_order(
            Polynomial::one(),
            Polynomial::x(),
            Polynomial::zero(),
            Polynomial::from_ints(&[1, 2, 0, 1]),
        )
        .unwrap();
        assert_eq!(j.shifted(0), j);
        let j3 = j.shifted(3);
        assert_eq!(j3.coeffs(), &[Polynomial::from_ints(&[1, 2, 0, 1])]);
        assert!(!j3.is_normal_form());
        assert!(j.shifted(4).coeffs().is_empty());
        let u = MomentForm::new((0..8).map(|i| rat(i + 1, 2 * i + 3)).collect());
        // J^(3)(u) = a_3 u
        assert_eq!(
            j3.transpose_apply(&u).unwrap(),
            u.left_mul(&j.coeff(3)).unwrap()
        );
        assert!(j.shifted(4).transpose_apply(&u).unwrap().is_zero());
        assert_eq!(j3.classify_order(3), Err(Error::NotNormalForm));
    }

    #[test]
    fn transpose_identity() {
        let u = MomentForm::new(vec![int(1), rat(1, 2), int(3)]);
        assert_eq!(DiffOperator::identity().transpose_apply(&u).unwrap(), u);
    }

    #[test]
    fn first_shift_expands_as_stated() {
        let a1 = Polynomial::new(vec![rat(1, 2), int(-3)]);
        let a2 = Polynomial::new(vec![int(2), int(1), rat(1, 4)]);
        let a3 = Polynomial::new(vec![int(1), int(0), int(5), rat(-2, 3)]);
        let j = DiffOperator::third_order(Polynomial::one(), a1.clone(), a2.clone(), a3.clone()).unwrap();
        let u = MomentForm::new((0..12).map(|i| rat(i * i - 3, i + 2)).collect());
        let lhs = j.shifted(1).transpose_apply(&u).unwrap();
        let rhs = u
            .left_mul(&a1)
            .unwrap()
            .sub(&u.left_mul(&a2).unwrap().derive())
            .add(&u.left_mul(&a3).unwrap().derive_n(2).scale(&rat(1, 2)));
        assert_eq!(lhs.order(), 8);
        assert!(lhs.equal_up_to(&rhs, 8).unwrap());
    }

    #[test]
    fn classify_examples() {
        let d = DiffOperator::derivative().classify_order(6).unwrap();
        assert_eq!(d.k(), Some(1));
        if let LoweringClass::Lowering { lambdas, .. } = &d {
            assert_eq!(lambdas, &(1..=7).map(|n| int(n)).collect::<Vec<_>>());
        }
        let i = DiffOperator::identity().classify_order(6).unwrap();
        assert!(i.is_isomorphism());
        let j = DiffOperator::new(vec![Polynomial::one(), Polynomial::from_ints(&[0, 2])]).unwrap();
        assert_eq!(j.lambda_seq(2), vec![int(1), int(3), int(5)]);
        assert!(j.classify_order(5).unwrap().is_isomorphism());
        // a_0 = 0 with deg a_1 = 1 breaks condition b) for k = 1.
        assert!(matches!(
            DiffOperator::new(vec![Polynomial::zero(), Polynomial::x()])
                .unwrap()
                .classify_order(3)
                .unwrap(),
            LoweringClass::NotClassifiable { .. }
        ));
        // I - xD: lambda_1 = 0.
        let bad = DiffOperator::new(vec![Polynomial::one(), Polynomial::from_ints(&[0, -1])]).unwrap();
        assert!(matches!(
            bad.classify_order(3).unwrap(),
            LoweringClass::NotClassifiable { .. }
        ));
    }

    #[test]
    fn jimage_examples() {
        let mono: Vec<Polynomial> = (0..6).map(xpow).collect();
        assert_eq!(DiffOperator::derivative().jimage_mps(&mono, 1).unwrap(), mono[..5].to_vec());
        let ps = vec![Polynomial::one(), Polynomial::from_ints(&[3, 1])];
        assert_eq!(DiffOperator::identity().jimage_mps(&ps, 0).unwrap(), ps);
        let bad = DiffOperator::new(vec![Polynomial::one(), Polynomial::from_ints(&[0, -1])]).unwrap();
        assert_eq!(bad.jimage_mps(&mono, 0), Err(Error::ZeroLambda { index: 1 }));
    }

    #[test]
    fn serde_shape() {
        let j = DiffOperator::new(vec![Polynomial::constant(rat(1, 2)), Polynomial::x()]).unwrap();
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(s, r#"[["1/2"],["0","1"]]"#);
        let back: DiffOperator = serde_json::from_str(&s).unwrap();
        assert_eq!(back, j);
        assert!(serde_json::from_str::<DiffOperator>(r#"[["0","1"]]"#).is_err());
    }
}
