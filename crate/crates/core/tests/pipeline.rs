use dorth_core::pipeline::{run_theorem4, run_theorem5, Outcome, PipelineConfig};
use dorth_core::poly::int;
use dorth_core::sample::{seeded, theorem4_draw, theorem5_draw, CubicShape, LinearShape};
use dorth_core::{DiffOperator, Polynomial};

fn small() -> PipelineConfig {
    PipelineConfig {
        moment_order: 30,
        check_order: 16,
        hahn_n: 10,
        ortho_m: 4,
    }
}

#[test]
fn unit_cubic_draws_pass() {
    let mut rng = seeded(100);
    let mut passed = 0;
    while passed < 3 {
        let d = theorem4_draw(&mut rng);
        if d.shape != CubicShape::Unit && d.shape != CubicShape::UnitSquare {
            continue;
        }
        match run_theorem4(&d.operator, &small()) {
            Outcome::Passed(r) => {
                assert!(r.checks.iter().any(|c| c.tag == "Eq-EqClassic-2"));
                assert!(r.checks.iter().any(|c| c.tag == "Eq-8.2"));
                passed += 1;
            }
            other => panic!("{:?} draw did not pass: {other:?}", d.shape),
        }
    }
}

#[test]
fn reciprocal_draws_pass() {
    let mut rng = seeded(200);
    let mut passed = 0;
    while passed < 3 {
        let d = theorem5_draw(&mut rng);
        if d.shape != LinearShape::Reciprocal {
            continue;
        }
        match run_theorem5(&d.operator, &d.tau, &small()) {
            Outcome::Passed(r) => {
                assert!(r.checks.iter().any(|c| c.tag == "Eq-case2-1"));
                assert!(r.checks.iter().any(|c| c.tag == "Hahn" && c.horizon == 10));
                passed += 1;
            }
            other => panic!("draw did not pass: {other:?}"),
        }
    }
}

#[test]
fn hypotheses_unmet_is_not_a_violation() {
    let j = DiffOperator::third_order(
        Polynomial::from_ints(&[1]),
        Polynomial::from_ints(&[0, 1]),
        Polynomial::from_ints(&[1]),
        Polynomial::from_ints(&[1]),
    )
    .unwrap();
    assert_eq!(run_theorem4(&j, &small()).label(), "hypotheses-unmet");
    assert_eq!(run_theorem5(&j, &int(0), &small()).label(), "hypotheses-unmet");
    // a1 of degree 0
    let flat = DiffOperator::third_order(
        Polynomial::from_ints(&[1]),
        Polynomial::from_ints(&[2]),
        Polynomial::zero(),
        Polynomial::from_ints(&[1]),
    )
    .unwrap();
    assert_eq!(run_theorem4(&flat, &small()).label(), "hypotheses-unmet");
}

#[test]
fn generic_cubic_is_out_of_scope() {
    let j = DiffOperator::third_order(
        Polynomial::from_ints(&[1]),
        Polynomial::from_ints(&[0, 1]),
        Polynomial::zero(),
        Polynomial::from_ints(&[1, 2, 3, 1]),
    )
    .unwrap();
    assert_eq!(run_theorem4(&j, &small()).label(), "hypotheses-unmet");
}
