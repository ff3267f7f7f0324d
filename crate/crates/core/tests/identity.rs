use subordination::identity::*;
use subordination::series::OperatorParams;

fn params() -> OperatorParams {
    OperatorParams::third_order(1.0, 1.0, 1.0).unwrap()
}

#[test]
fn identity_function_has_zero_deviation() {
    for which in [IdentityWhich::Sf, IdentityWhich::Thetaf] {
        let r = identity_test(which, 3, 1, 7, &params(), 1e-9).unwrap();
        assert_eq!(r.max_deviation, 0.0);
        assert!(r.passed);
    }
}

#[test]
fn second_order_formula_is_exact() {
    let r = identity_test(IdentityWhich::Sf, 100, 12, 0, &params(), 1e-9).unwrap();
    assert!(r.passed);
    assert!(r.max_deviation < 1e-12, "{}", r.max_deviation);
    assert_eq!(r.per_coefficient.len(), COMPARED_COEFFICIENTS);
    assert!(r.explained_residual.is_none());
}

#[test]
fn third_order_deviation_pattern() {
    let r = identity_test(IdentityWhich::Thetaf, 100, 12, 0, &params(), 1e-9).unwrap();
    assert!(!r.passed);
    assert!(r.explained_residual.unwrap() < 1e-12);
    let baseline = [
        0.0,
        0.0,
        2.6633499419478643,
        6.187617567526309,
        9.99031161491878,
        13.948409689072546,
        17.84365356824681,
        20.90544545073243,
    ];
    for (k, (got, want)) in r.per_coefficient.iter().zip(baseline).enumerate() {
        assert!(
            (got - want).abs() <= 1e-9 * want.max(1.0),
            "k={k}: {got} vs {want}"
        );
    }
    let again = identity_test(IdentityWhich::Thetaf, 100, 12, 0, &params(), 1e-9).unwrap();
    assert_eq!(
        serde_json::to_string(&r).unwrap(),
        serde_json::to_string(&again).unwrap()
    );
}

#[test]
fn deviation_vanishes_when_weight_vanishes() {
    let p = OperatorParams::third_order(2.0, 0.0, 0.0).unwrap();
    let r = identity_test(IdentityWhich::Thetaf, 20, 12, 3, &p, 1e-9).unwrap();
    assert!(r.passed, "{}", r.max_deviation);
}

#[test]
fn invalid_inputs() {
    assert!(identity_test(IdentityWhich::Sf, 0, 12, 0, &params(), 1e-9).is_err());
    assert!(identity_test(IdentityWhich::Sf, 1, 0, 0, &params(), 1e-9).is_err());
    let second = OperatorParams::second_order(1.0, 1.0).unwrap();
    assert!(identity_test(IdentityWhich::Thetaf, 1, 12, 0, &second, 1e-9).is_err());
    assert_eq!(
        "thetaf".parse::<IdentityWhich>().unwrap(),
        IdentityWhich::Thetaf
    );
    assert!("x".parse::<IdentityWhich>().is_err());
}
