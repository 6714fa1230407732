use freefall::expr::{parse_metric_spec, BinOp, Expr, ExprError, Func, MetricSpecError};
use proptest::prelude::*;

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0.0..1e3f64).prop_map(Expr::Num),
        prop::sample::select(vec![0.0, 0.25, 1.0, 2.0, 1e-9, 6.02e23]).prop_map(Expr::Num),
        prop::sample::select(vec!["x", "y", "theta", "rs"]).prop_map(|v| Expr::Var(v.to_string())),
        Just(Expr::Pi),
    ];
    leaf.prop_recursive(6, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (prop::sample::select(Func::ALL.to_vec()), inner.clone()).prop_map(|(func, arg)| {
                Expr::Call {
                    func,
                    arg: Box::new(arg),
                }
            }),
            (
                prop::sample::select(vec![
                    BinOp::Add,
                    BinOp::Sub,
                    BinOp::Mul,
                    BinOp::Div,
                    BinOp::Pow
                ]),
                inner.clone(),
                inner
            )
                .prop_map(|(op, l, r)| Expr::binary(op, l, r)),
        ]
    })
}

const ENV: [(&str, f64); 4] = [("x", 0.7), ("y", -1.3), ("theta", 0.4), ("rs", 1.0)];

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn print_then_parse_is_identity(e in arb_expr()) {
        let printed = e.to_string();
        let back: Expr = printed.parse().map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(back, e);
    }

    #[test]
    fn reparsed_tree_evaluates_identically(e in arb_expr()) {
        let back: Expr = e.to_string().parse().unwrap();
        match (e.eval(&ENV), back.eval(&ENV)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.to_bits(), b.to_bits()),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn garbage_never_panics(s in "[a-z0-9+*/^()., -]{0,24}") {
        let _ = s.parse::<Expr>();
    }
}

fn eval(src: &str) -> f64 {
    src.parse::<Expr>().unwrap().eval(&ENV).unwrap()
}

#[test]
fn precedence_and_associativity() {
    assert_eq!(eval("1 + 2 * 3"), 7.0);
    assert_eq!(eval("(1 + 2) * 3"), 9.0);
    assert_eq!(eval("2 ^ 3 ^ 2"), 512.0);
    assert_eq!(eval("-2 ^ 2"), -4.0);
    assert_eq!(eval("2 ^ -2"), 0.25);
    assert_eq!(eval("10 - 4 - 3"), 3.0);
    assert_eq!(eval("12 / 3 / 2"), 2.0);
    assert_eq!(eval("-x * 2"), -1.4);
    assert_eq!(eval("sin(pi/2)"), 1.0);
    assert_eq!(eval("1.5e2 + 2E-1"), 150.2);
}

#[test]
fn errors_carry_offsets() {
    let err = "1 + * 2".parse::<Expr>().unwrap_err();
    assert_eq!(err.offset(), Some(4));
    let err = "sin(x".parse::<Expr>().unwrap_err();
    assert!(matches!(err, ExprError::Parse { .. }));
    let err = "x $ 1".parse::<Expr>().unwrap_err();
    assert_eq!(err.offset(), Some(2));
    let err = "foo(1)".parse::<Expr>().unwrap_err();
    assert_eq!(err.offset(), Some(0));
}

#[test]
fn domain_errors_are_not_nan() {
    for src in ["log(0)", "sqrt(-1)", "1/0", "exp(1000)", "(-8)^(1/3)"] {
        let e: Expr = src.parse().unwrap();
        assert!(
            matches!(e.eval(&ENV), Err(ExprError::Domain { .. })),
            "{src}"
        );
    }
    let e: Expr = "z + 1".parse().unwrap();
    assert!(matches!(e.eval(&ENV), Err(ExprError::Unbound(name)) if name == "z"));
}

#[test]
fn metric_spec_validation() {
    let ok = "coords = t,r,theta,phi\nparam m = 2\ng[0][0] = 1 - 2*m/r\ng[1][1] = -1\ng[2][2] = -r^2\ng[3][3] = -r^2\n";
    let spec = parse_metric_spec(ok).unwrap();
    assert_eq!(spec.params()["m"], 2.0);
    assert_eq!(parse_metric_spec(&spec.to_text()).unwrap(), spec);

    let undeclared =
        "coords = t,x,y,z\ng[0][0] = 1 + q\ng[1][1] = -1\ng[2][2] = -1\ng[3][3] = -1\n";
    assert!(parse_metric_spec(undeclared).is_err());
    let no_coords = "g[0][0] = 1\n";
    assert!(parse_metric_spec(no_coords).is_err());
    let bad_index = "coords = t,x,y,z\ng[4][0] = 1\n";
    assert!(parse_metric_spec(bad_index).is_err());
    let bad_line = "coords = t,x,y,z\ng[0][0] = 1 +\n";
    match parse_metric_spec(bad_line) {
        Err(e @ MetricSpecError::Expr { .. }) => assert!(e.to_string().contains("line 2"), "{e}"),
        other => panic!("{other:?}"),
    }
}
