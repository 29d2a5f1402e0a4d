use num_bigint::BigInt;
use proptest::prelude::*;

use wehrhart::{hstar_poly, Polytope, Rat};
use wehrhart_cli::json::{hstar_value, parse_hstar_value};
use wehrhart_cli::{parse_polytope, parse_weight, serialize_polytope, CliError, Sign, Var, WeightExpr};

fn x(k: usize) -> WeightExpr {
    WeightExpr::Var(Var::X(k))
}

fn pow(e: WeightExpr, k: u32) -> WeightExpr {
    WeightExpr::Pow(Box::new(e), k)
}

fn num(n: i64) -> WeightExpr {
    WeightExpr::Num(Rat::from_integer(n.into()))
}

#[test]
fn squared_quartic_weight() {
    let e = parse_weight("(2*x1 - x2)^2 * (2*x2 - x1)^2", 2).unwrap();
    let a = WeightExpr::Sum(vec![
        (Sign::Plus, WeightExpr::Product(vec![num(2), x(1)])),
        (Sign::Minus, x(2)),
    ]);
    let b = WeightExpr::Sum(vec![
        (Sign::Plus, WeightExpr::Product(vec![num(2), x(2)])),
        (Sign::Minus, x(1)),
    ]);
    assert_eq!(e, WeightExpr::Product(vec![pow(a, 2), pow(b, 2)]));
    let w = e.to_weight_poly(2);
    assert_eq!(w.max_degree(), 4);
}

#[test]
fn mixed_degree_weight() {
    let e = parse_weight("x1^2 + 1", 1).unwrap();
    assert_eq!(e, WeightExpr::Sum(vec![(Sign::Plus, pow(x(1), 2)), (Sign::Plus, num(1))]));
    let w = e.to_weight_poly(1);
    let mut degrees: Vec<usize> = w.terms.iter().map(|t| t.degree()).collect();
    degrees.sort();
    assert_eq!(degrees, vec![0, 2]);
}

#[test]
fn variable_beyond_dimension() {
    assert!(matches!(parse_weight("x3", 2), Err(CliError::VariableOutOfRange { .. })));
    assert!(parse_weight("x2", 2).is_ok());
    assert!(parse_weight("n*x2", 2).is_ok());
}

#[test]
fn sum_binds_looser_than_product_and_power() {
    let e = parse_weight("x1 + x2 * x3^2", 3).unwrap();
    let expected = WeightExpr::Sum(vec![
        (Sign::Plus, x(1)),
        (Sign::Plus, WeightExpr::Product(vec![x(2), pow(x(3), 2)])),
    ]);
    assert_eq!(e, expected);
}

#[test]
fn polytope_documents() {
    let seg = parse_polytope(r#"{"vertices": [[0],[1]]}"#).unwrap();
    assert_eq!(seg, Polytope::from_i64(&[vec![0], vec![1]]).unwrap());

    let thin = parse_polytope(r#"{"vertices": [["1","1"],["1","5/6"],["7/6","1"]]}"#).unwrap();
    assert_eq!(thin.denominator(), 6);
    assert_eq!(thin.vertices()[1][1], Rat::new(5.into(), 6.into()));

    let redundant = parse_polytope(r#"{"vertices": [[0,0],[1,0],[2,0]]}"#);
    assert!(matches!(redundant, Err(CliError::Core(wehrhart::Error::RedundantVertex { index: 1 }))));

    assert!(matches!(parse_polytope(r#"{"vertices": [[0,0],[1]]}"#), Err(CliError::Core(_))));
    assert!(matches!(parse_polytope(r#"{"vertices": [[0,0],[1,"#), Err(CliError::Json(_))));
    assert!(parse_polytope(r#"{"vertices": [[0.5]]}"#).is_err());
    assert!(parse_polytope(r#"{"vertices": [["1/0"]]}"#).is_err());
    assert!(parse_polytope(r#"{"points": [[0]]}"#).is_err());
    assert!(parse_polytope(r#"{"vertices": []}"#).is_err());
    assert!(parse_polytope(r#"{"dim": 2, "vertices": []}"#).unwrap().is_empty());
}

#[test]
fn result_json_round_trip() {
    let p = parse_polytope(r#"{"vertices": [["1","1"],["1","5/6"],["7/6","1"]]}"#).unwrap();
    let w = parse_weight("x1*x2 - 1/2", 2).unwrap().to_weight_poly(2);
    let r = hstar_poly(&p, &w).unwrap();
    let value = hstar_value(&r);
    let text = value.to_string();
    let (numerator, period, exponent) = parse_hstar_value(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!((numerator, period, exponent), (r.numerator, r.period, r.exponent));
}

fn rational() -> impl Strategy<Value = Rat> {
    (0i64..=40, 1i64..=6).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

/// Trees in the shape the parser produces.
fn expr(d: usize) -> impl Strategy<Value = WeightExpr> {
    let leaf = prop_oneof![
        rational().prop_map(WeightExpr::Num),
        (1..=d).prop_map(|k| WeightExpr::Var(Var::X(k))),
        Just(WeightExpr::Var(Var::N)),
    ];
    leaf.prop_recursive(4, 24, 4, |inner| {
        let sign = prop_oneof![Just(Sign::Plus), Just(Sign::Minus)];
        prop_oneof![
            prop::collection::vec((sign.clone(), inner.clone()), 2..=3).prop_map(WeightExpr::Sum),
            inner.clone().prop_map(|e| WeightExpr::Sum(vec![(Sign::Minus, e)])),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(WeightExpr::Product),
            (inner, 0u32..=3).prop_map(|(e, k)| WeightExpr::Pow(Box::new(e), k)),
        ]
    })
}

fn point(d: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((-5i64..=5, 1i64..=3).prop_map(|(p, q)| Rat::new(p.into(), q.into())), d + 1)
}

fn polytope() -> impl Strategy<Value = Polytope> {
    (1usize..=3).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec((-20i64..=20, 1i64..=5), d), 1..=5).prop_map(move |pts| {
            let pts: Vec<Vec<Rat>> = pts
                .into_iter()
                .map(|v| v.into_iter().map(|(p, q)| Rat::new(BigInt::from(p), BigInt::from(q))).collect())
                .collect();
            Polytope::convex_hull(d, &pts).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn weight_text_round_trips(e in expr(3)) {
        let text = e.to_string();
        prop_assert_eq!(parse_weight(&text, 3).unwrap(), e, "{}", text);
    }

    #[test]
    fn expansion_evaluates_like_the_tree(e in expr(2), pt in point(2)) {
        prop_assert_eq!(e.to_weight_poly(2).eval(&pt), e.eval(&pt));
    }

    #[test]
    fn polytope_text_round_trips(p in polytope()) {
        let text = serialize_polytope(&p);
        prop_assert_eq!(parse_polytope(&text).unwrap(), p);
    }
}
