use proptest::prelude::*;
use riordan::expr::{eval_expr, parse_expr, to_laurent, EvalErrorKind};
use riordan::families::series::{catalan, motzkin, schroder};
use riordan::fps::{rat, ratio, Series};

const CORPUS: &[&str] = &[
    "z",
    "1 + z",
    "-z^2",
    "1 - z - z^2",
    "2/3 * z",
    "z^(-1/2)",
    "(1 - 4*z)^(1/2)",
    "C",
    "z*C^3",
    "m @ (z/(1-z))",
    "(z*mt) @ (z*mt)",
    "rev(z - z^2)",
    "phat(z + z^2)",
    "sqrt(1 - 2*z - 3*z^2)",
    "exp(z) - log(1 + z)",
    "aerate(C, 3)",
    "T(3)^2",
    "ct_neg[n=3].B",
    "k_ary[k=3, a=2].f",
    "w_k[k=2, d=-1/2]",
    "solve g: g = 1 + z*g^2",
    "solve f: f = z*(1 + f + f^2)",
    "1 + (solve h: h = z*(1 + h))",
    "4*z^2/(1 + z)",
    "z^-3 * (1 + z)^(2/3)",
    "a - -b",
    "((z))",
];

#[test]
fn corpus_round_trips() {
    for src in CORPUS {
        let ast = parse_expr(src).unwrap_or_else(|e| panic!("{src}: {e}"));
        let printed = ast.to_string();
        let again = parse_expr(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(ast, again, "{src} printed as {printed}");
        assert_eq!(printed, again.to_string());
    }
}

fn leaf() -> impl Strategy<Value = String> {
    prop_oneof![
        (0u32..50).prop_map(|n| n.to_string()),
        Just("z".to_string()),
        prop_oneof![Just("C"), Just("m"), Just("mt"), Just("r"), Just("F"), Just("x")].prop_map(String::from),
        Just("ct_pos[n=2].B".to_string()),
        Just("catalan.f".to_string()),
    ]
}

fn expression() -> impl Strategy<Value = String> {
    leaf().prop_recursive(4, 32, 3, |inner| {
        prop_oneof![
            (inner.clone(), prop_oneof![Just("+"), Just("-"), Just("*"), Just("/"), Just("@")], inner.clone())
                .prop_map(|(a, op, b)| format!("{a} {op} {b}")),
            inner.clone().prop_map(|a| format!("-{a}")),
            inner.clone().prop_map(|a| format!("({a})")),
            (inner.clone(), -3i32..=3, 1i32..=3).prop_map(|(a, p, q)| {
                if q == 1 {
                    format!("({a})^{p}")
                } else {
                    format!("({a})^({p}/{q})")
                }
            }),
            (prop_oneof![Just("sqrt"), Just("exp"), Just("rev")], inner.clone()).prop_map(|(f, a)| format!("{f}({a})")),
            (inner.clone(), 1u32..4).prop_map(|(a, q)| format!("aerate({a}, {q})")),
            inner.prop_map(|a| format!("(solve y: y = {a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printed_form_reparses_identically(src in expression()) {
        let ast = parse_expr(&src).unwrap();
        let again = parse_expr(&ast.to_string()).unwrap();
        prop_assert_eq!(ast, again);
    }
}

fn ev(src: &str, n: usize) -> Series {
    eval_expr(&parse_expr(src).unwrap(), n).unwrap_or_else(|e| panic!("{src}: {e}"))
}

#[test]
fn precedence() {
    assert_eq!(ev("1 + z * z", 4), Series::from_ints(&[1, 0, 1, 0, 0]));
    assert_eq!(ev("-z^2", 3), Series::from_ints(&[0, 0, -1, 0]));
    assert_eq!(ev("z @ z + z", 3), Series::from_ints(&[0, 2, 0, 0]));
    assert_eq!(ev("2 - 1 - 1", 2), Series::zero(2));
    assert_eq!(ev("12 / 2 / 3", 2), Series::constant(rat(2), 2));
    assert_eq!(ev("1/2 * z", 2), Series::from_coeffs(vec![rat(0), ratio(1, 2), rat(0)]));
}

#[test]
fn named_series() {
    assert_eq!(ev("C", 12), catalan(12).unwrap());
    assert_eq!(ev("m", 12), motzkin(12).unwrap());
    assert_eq!(ev("r", 12), schroder(12).unwrap());
    assert_eq!(ev("solve g: g = 1 + z*g^2", 12), catalan(12).unwrap());
    assert_eq!(ev("T(2)", 12), catalan(12).unwrap());
    assert_eq!(ev("(1 - sqrt(1 - 4*z)) / (2*z)", 11), catalan(10).unwrap());
}

#[test]
fn composition_and_reversion() {
    assert_eq!(ev("rev(z*C) @ (z*C)", 10), Series::z(10));
    let f = ev("phat(z*C)", 8);
    assert_eq!(f, ev("z*(1 + z)", 8));
    assert_eq!(ev("aerate(1/(1-z), 2)", 6), Series::from_ints(&[1, 0, 1, 0, 1, 0, 1]));
}

#[test]
fn family_parts() {
    let b = ev("ct_neg[n=2].B", 5);
    assert_eq!(b.coeffs()[..5], [rat(1), rat(2), rat(9), rat(52), rat(340)]);
    assert_eq!(ev("catalan.f", 6), ev("z*C^3", 6));
}

#[test]
fn errors_carry_positions() {
    let e = parse_expr("1 +").unwrap_err();
    assert_eq!(e.offset, 3);
    let e = parse_expr("(z").unwrap_err();
    assert_eq!(e.offset, 2);
    let e = parse_expr("z ^ x").unwrap_err();
    assert_eq!(e.offset, 4);
    assert!(parse_expr("z $ 2").is_err());

    let err = eval_expr(&parse_expr("1 + nosuch").unwrap(), 4).unwrap_err();
    assert_eq!(err.kind, EvalErrorKind::UnknownName("nosuch".into()));
    assert_eq!((err.span.start, err.span.end), (4, 10));

    let err = eval_expr(&parse_expr("catalan.q").unwrap(), 4).unwrap_err();
    assert!(matches!(err.kind, EvalErrorKind::UnknownPart { .. }));
}

#[test]
fn laurent_gamma_from_text() {
    let g = to_laurent(&parse_expr("4*z^2/(1 + z)").unwrap()).unwrap();
    assert_eq!(g.darga().darga, Some(3));
    let g = to_laurent(&parse_expr("z^-1 + 1 + z").unwrap()).unwrap();
    assert_eq!(g.darga().darga, Some(0));
    assert!(to_laurent(&parse_expr("C").unwrap()).is_err());
}
