use proptest::prelude::*;

use dorth_core::poly::inv_factorial;
use dorth_core::two_orth::{dual_sequence, eabf_polys, fit_2orth_recurrence, generate};
use dorth_core::{DiffOperator, MomentForm, Polynomial, Rational, RecurrenceCoeffs};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=20).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    (1i64..=20, 1i64..=20, any::<bool>())
        .prop_map(|(p, q, neg)| Rational::new((if neg { -p } else { p }).into(), q.into()))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(Polynomial::new)
}

fn form(order: usize) -> impl Strategy<Value = MomentForm> {
    prop::collection::vec(rational(), order + 1).prop_map(MomentForm::new)
}

/// Normal-form operator of order <= 3.
fn operator() -> impl Strategy<Value = DiffOperator> {
    (poly(0), poly(1), poly(2), poly(3))
        .prop_map(|(a0, a1, a2, a3)| DiffOperator::third_order(a0, a1, a2, a3).unwrap())
}

fn regular_rc(n: usize) -> impl Strategy<Value = RecurrenceCoeffs> {
    (
        prop::collection::vec(rational(), n),
        prop::collection::vec(rational(), n),
        prop::collection::vec(nonzero(), n),
    )
        .prop_map(|(b, a, g)| RecurrenceCoeffs::new(b, a, g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly(4), q in poly(4), r in poly(3)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p - &p, Polynomial::zero());
        prop_assert_eq!(&p * &Polynomial::one(), p.clone());
    }

    #[test]
    fn degree_of_product(p in poly(4), q in poly(4)) {
        let d = (&p * &q).degree();
        match (p.degree(), q.degree()) {
            (Some(a), Some(b)) => prop_assert_eq!(d, Some(a + b)),
            _ => prop_assert_eq!(d, None),
        }
    }

    #[test]
    fn derivative_rules(p in poly(5), q in poly(4)) {
        prop_assert_eq!((&p * &q).derivative(1), &(&p.derivative(1) * &q) + &(&p * &q.derivative(1)));
        prop_assert_eq!(p.derivative(1).derivative(2), p.derivative(3));
    }

    #[test]
    fn form_product_rule(u in form(10), f in poly(3), g in poly(3)) {
        // D(f u) = f' u + f D u
        let lhs = u.left_mul(&f).unwrap().derive();
        let rhs = u.left_mul(&f.derivative(1)).unwrap().add(&u.derive().left_mul(&f).unwrap());
        prop_assert!(lhs.equal_up_to(&rhs, rhs.order()).unwrap());
        // g (f u) = (g f) u
        let a = u.left_mul(&f).unwrap().left_mul(&g).unwrap();
        let b = u.left_mul(&(&g * &f)).unwrap();
        let m = a.order().min(b.order());
        prop_assert!(a.equal_up_to(&b, m).unwrap());
    }

    #[test]
    fn form_duality(u in form(12), f in poly(4), p in poly(6)) {
        // <f u, p> = <u, f p>, <D u, p> = -<u, p'>
        prop_assert_eq!(u.left_mul(&f).unwrap().act(&p).unwrap(), u.act(&(&f * &p)).unwrap());
        prop_assert_eq!(u.derive().act(&p).unwrap(), -u.act(&p.derivative(1)).unwrap());
    }

    #[test]
    fn transpose_duality(j in operator(), u in form(14), f in poly(8)) {
        let ju = j.transpose_apply(&u).unwrap();
        prop_assert_eq!(ju.act(&f).unwrap(), u.act(&j.apply(&f)).unwrap());
    }

    #[test]
    fn leibniz_on_polynomials(j in operator(), f in poly(4), g in poly(4)) {
        // J(fg) = sum_n J^(n)(f) g^(n) / n!, in both orders
        for (a, b) in [(&f, &g), (&g, &f)] {
            let rhs = (0..=3).fold(Polynomial::zero(), |acc, n| {
                &acc + &(&j.shifted(n).apply(a) * &b.derivative(n)).scale(&inv_factorial(n))
            });
            prop_assert_eq!(j.apply(&(&f * &g)), rhs);
        }
    }

    #[test]
    fn leibniz_on_forms(j in operator(), u in form(16), f in poly(3)) {
        // J(f u) = sum_n (-1)^n/n! f^(n) J^(n)(u)
        let lhs = j.transpose_apply(&u.left_mul(&f).unwrap()).unwrap();
        let mut rhs = MomentForm::zero(lhs.order());
        for n in 0..=3 {
            let mut w = inv_factorial(n);
            if n % 2 == 1 {
                w = -w;
            }
            let t = j.shifted(n).transpose_apply(&u).unwrap().left_mul(&f.derivative(n).scale(&w)).unwrap();
            rhs = rhs.add(&t);
        }
        let m = lhs.order().min(rhs.order());
        prop_assert!(lhs.equal_up_to(&rhs, m).unwrap());
    }

    #[test]
    fn lambda_is_diagonal(j in operator()) {
        for n in 0..=8usize {
            let xn = Polynomial::monomial(Rational::from_integer(1.into()), n);
            prop_assert_eq!(j.apply(&xn).coeff(n), j.lambda(0, n));
        }
    }

    #[test]
    fn recurrence_round_trip(rc in regular_rc(12)) {
        let p = generate(&rc, 12).unwrap();
        prop_assert!(p.polys().iter().all(Polynomial::is_monic));
        let fitted = fit_2orth_recurrence(&p).unwrap();
        prop_assert_eq!(fitted, rc.truncated(12));
    }

    #[test]
    fn duals_are_biorthogonal(rc in regular_rc(10)) {
        let p = generate(&rc, 10).unwrap();
        let duals = dual_sequence(&p, 6, 10).unwrap();
        for (k, u) in duals.iter().enumerate() {
            for m in 0..=10 {
                let want = if k == m { 1 } else { 0 };
                prop_assert_eq!(u.act(p.get(m)).unwrap(), Rational::from_integer(want.into()));
            }
        }
    }

    #[test]
    fn eabf_degrees(rc in regular_rc(10)) {
        let e = eabf_polys(&rc, 4).unwrap();
        for n in 0..=4usize {
            prop_assert!(e.e(n).degree().unwrap_or(0) <= n);
            prop_assert!(e.b(n).degree().unwrap_or(0) <= n);
            prop_assert!(e.f(n).degree().unwrap_or(0) <= n);
        }
    }
}
