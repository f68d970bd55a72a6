use super::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use std::collections::HashMap;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ring_xy() -> Ring {
    Ring::new(&["x", "y"])
}

fn p(ring: &Ring, text: &str) -> Polynomial<BigRational> {
    Polynomial::parse(ring, text).unwrap()
}

pub(crate) const OBJ_TEXT: &str = "-25940329*R**3*e*x**2 - 61451313*R**3*x**4 + 65640150*R**3*x**2 - 28577961*R**3 + 81961639*R**2*e*x**2 + 1099859207*R**2*x**4 - 811868595*R**2*x**2 + 205761316*R**2 + 342231572*R*e*x**2 - 5233649558*R*x**4 + 3595948148*R*x**2 - 555555556*R - 1960143305*e*x**2 + 200000000*e + 8467967598*x**4 - 6382868964*x**2 + 666666666";

pub(crate) fn obj_ring() -> Ring {
    Ring::new(&["x", "e", "R"])
}

pub(crate) fn obj_poly() -> Polynomial<BigRational> {
    Polynomial::parse(&obj_ring(), OBJ_TEXT).unwrap()
}

#[test]
fn add_cancellation() {
    let r = ring_xy();
    assert_eq!(p(&r, "x+1").try_add(&p(&r, "x-1")).unwrap(), p(&r, "2*x"));
    assert_eq!(
        p(&r, "x**2+y").try_add(&p(&r, "-x**2")).unwrap(),
        p(&r, "y")
    );
    let any = p(&r, "3*x*y - 7");
    assert_eq!(any.try_add(&Polynomial::zero(&r)).unwrap(), any);
}

#[test]
fn mul_basics() {
    let r = ring_xy();
    let xy = p(&r, "x+y");
    assert_eq!(xy.try_mul(&xy).unwrap(), p(&r, "x**2 + 2*x*y + y**2"));
    let any = p(&r, "5*x**3 - y + 2");
    assert_eq!(any.try_mul(&Polynomial::one(&r)).unwrap(), any);
    assert_eq!(
        p(&r, "x-1").try_mul(&p(&r, "x+1")).unwrap(),
        p(&r, "x**2-1")
    );
}

#[test]
fn ring_mismatch_reported() {
    let a = p(&ring_xy(), "x");
    let b = p(&Ring::new(&["u", "v"]), "u");
    assert!(matches!(a.try_add(&b), Err(PolyError::RingMismatch(_, _))));
}

#[test]
fn differentiate_power_rule() {
    let r = ring_xy();
    assert_eq!(p(&r, "x**3").differentiate("x").unwrap(), p(&r, "3*x**2"));
    assert!(matches!(
        p(&r, "x").differentiate("z"),
        Err(PolyError::UnknownVariable(_))
    ));
}

#[test]
fn obj_partial_derivatives() {
    let obj = obj_poly();
    let de = obj.differentiate("e").unwrap();
    let expected = p(
        &obj_ring(),
        "-25940329*R**3*x**2 + 81961639*R**2*x**2 + 342231572*R*x**2 - 1960143305*x**2 + 200000000",
    );
    assert_eq!(de, expected);

    // Degrees of the three partials.
    assert_eq!(obj.differentiate("x").unwrap().total_degree(), 6);
    assert_eq!(de.total_degree(), 5);
    assert_eq!(obj.differentiate("R").unwrap().total_degree(), 6);
}

#[test]
fn evaluate_at_reported_root() {
    // Ground-state root: OBJ there is the scaled total energy.
    let obj = obj_poly();
    let mut point = HashMap::new();
    point.insert("x".to_string(), Complex64::new(0.4050, 0.0));
    point.insert("e".to_string(), Complex64::new(-1.1482, 0.0));
    point.insert("R".to_string(), Complex64::new(1.8272, 0.0));
    let v = obj.evaluate(&point).unwrap() / 1e8;
    assert!((v.re - (-1.2469)).abs() < 5e-4, "got {v}");
    assert!(v.im.abs() < 1e-12);
}

#[test]
fn evaluate_missing_assignment() {
    let obj = obj_poly();
    let point = HashMap::new();
    assert!(matches!(
        obj.evaluate(&point),
        Err(PolyError::MissingAssignment(_))
    ));
}

#[test]
#[allow(clippy::approx_constant)] // six-digit reference values as printed
fn constraint_circle_root() {
    let r = ring_xy();
    let c = p(&r, "x**2 + y**2 - 1");
    let v = c.eval_at(&[
        Complex64::new(0.707107, 0.0),
        Complex64::new(-0.707107, 0.0),
    ]);
    assert!(v.norm() < 1e-5);
}

#[test]
fn leading_terms() {
    let r = ring_xy();
    let f = p(&r, "x**2*y + x*y**2");
    let (m, _) = f.leading_term(&MonomialOrder::degrevlex(2)).unwrap();
    assert_eq!(m.exps(), &[2, 1]);

    let g = p(&r, "x**3 + x**2*y");
    let (m, _) = g.leading_term(&MonomialOrder::lex(2)).unwrap();
    assert_eq!(m.exps(), &[3, 0]);

    let c = p(&r, "5");
    let (m, co) = c.leading_term(&MonomialOrder::degrevlex(2)).unwrap();
    assert!(m.is_one());
    assert_eq!(co, q(5));

    assert!(matches!(
        Polynomial::<BigRational>::zero(&r).leading_term(&MonomialOrder::lex(2)),
        Err(PolyError::ZeroPolynomial)
    ));
}

#[test]
fn monomial_listing_matches_report_layout() {
    let order = MonomialOrder::graded_lex(3);
    let monos = monomials_up_to(3, 2, &order);
    assert_eq!(monos.len(), 10);
    // Ring (x, y, e): 1, x, y, e, x^2, xy, xe, y^2, ye, e^2.
    let expected: Vec<Vec<u32>> = vec![
        vec![0, 0, 0],
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![2, 0, 0],
        vec![1, 1, 0],
        vec![1, 0, 1],
        vec![0, 2, 0],
        vec![0, 1, 1],
        vec![0, 0, 2],
    ];
    let got: Vec<Vec<u32>> = monos.iter().map(|m| m.exps().to_vec()).collect();
    assert_eq!(got, expected);

    assert_eq!(monomials_up_to(3, 10, &order).len(), 286);
}

#[test]
fn display_round_trips_obj() {
    let obj = obj_poly();
    let printed = format!("{obj}");
    assert_eq!(printed, OBJ_TEXT);
    let reparsed = Polynomial::parse(&obj_ring(), &printed).unwrap();
    assert_eq!(reparsed, obj);
}

#[test]
fn parse_accepts_rationals_and_semicolon() {
    let r = ring_xy();
    let f = p(&r, "3/4*x**2 - 1/2;");
    assert_eq!(f.coeff(&Monomial::from_exps(vec![2, 0])), Some(&(q(3) / q(4))));
    let printed = format!("{f}");
    assert_eq!(p(&r, &printed), f);
}

// ---- property tests ----------------------------------------------------

fn arb_poly(ring: Ring, max_terms: usize) -> impl Strategy<Value = Polynomial<BigRational>> {
    let n = ring.nvars();
    prop::collection::vec(
        (prop::collection::vec(0u32..4, n), -9i64..10),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Polynomial::from_terms(
            &ring,
            terms
                .into_iter()
                .map(|(exps, c)| (Monomial::from_exps(exps), q(c))),
        )
    })
}

fn arb_mono(n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..5, n).prop_map(Monomial::from_exps)
}

fn arb_order(n: usize) -> impl Strategy<Value = MonomialOrder> {
    (0..3, Just(n)).prop_map(|(k, n)| {
        let kind = match k {
            0 => OrderKind::Lex,
            1 => OrderKind::GradedLex,
            _ => OrderKind::DegRevLex,
        };
        MonomialOrder::new(kind, n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in (arb_poly(ring_xy(), 5), arb_poly(ring_xy(), 5), arb_poly(ring_xy(), 5))) {
        let ab_c = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let a_bc = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);

        let dist = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let expand = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&dist, &expand);

        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
    }

    #[test]
    fn product_rule((a, b) in (arb_poly(ring_xy(), 5), arb_poly(ring_xy(), 5))) {
        let lhs = a.try_mul(&b).unwrap().differentiate("x").unwrap();
        let rhs = a.differentiate("x").unwrap().try_mul(&b).unwrap()
            .try_add(&a.try_mul(&b.differentiate("x").unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn order_laws((m1, m2, m3, order) in (arb_mono(3), arb_mono(3), arb_mono(3), arb_order(3))) {
        use std::cmp::Ordering;
        // Antisymmetry.
        prop_assert_eq!(order.cmp(&m1, &m2), order.cmp(&m2, &m1).reverse());
        // Transitivity.
        if order.cmp(&m1, &m2) == Ordering::Less && order.cmp(&m2, &m3) == Ordering::Less {
            prop_assert_eq!(order.cmp(&m1, &m3), Ordering::Less);
        }
        // Multiplicativity.
        if order.cmp(&m1, &m2) == Ordering::Less {
            prop_assert_eq!(order.cmp(&m1.mul(&m3), &m2.mul(&m3)), Ordering::Less);
        }
        // The unit monomial is minimal.
        let unit = Monomial::one(3);
        prop_assert_ne!(order.cmp(&m1, &unit), Ordering::Less);
    }

    #[test]
    fn evaluation_is_a_homomorphism((a, b) in (arb_poly(ring_xy(), 4), arb_poly(ring_xy(), 4))) {
        let pt = [Complex64::new(0.37, -0.21), Complex64::new(-1.13, 0.55)];
        let prod = a.try_mul(&b).unwrap().eval_at(&pt);
        let sep = a.eval_at(&pt) * b.eval_at(&pt);
        let scale = prod.norm().max(sep.norm()).max(1.0);
        prop_assert!((prod - sep).norm() <= 1e-12 * scale);
    }

    #[test]
    fn print_parse_round_trip(a in arb_poly(ring_xy(), 6)) {
        let printed = format!("{a}");
        let reparsed = Polynomial::parse(&ring_xy(), &printed).unwrap();
        prop_assert_eq!(reparsed, a);
    }
}
