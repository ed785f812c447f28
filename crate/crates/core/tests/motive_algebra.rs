mod common;

use motivic_core::json::MotiveJson;
use motivic_core::text::{parse_motive, render};
use motivic_core::zbundle::{bundle_tensor, from_square_root, upsilon, SquareRootDatum};
use motivic_core::{
    boxdot, pi_forget, pullback, pushforward, BundleBits, BundleClass, HalfLaurent, MonSymbol, MorphismKind, Motive,
    MotiveError, Registry, SpaceId,
};
use proptest::prelude::*;

fn torus() -> Registry {
    let mut reg = Registry::new();
    reg.add_space("Gm", Some(1), &["p"]).unwrap();
    reg.set_total_class(
        "Gm",
        Motive::l_half(SpaceId::point(), 2)
            .try_sub(&Motive::one(SpaceId::point()))
            .unwrap(),
    )
    .unwrap();
    reg.add_cover("Gm", "P", &["p"], Some(Motive::one(SpaceId::from("Gm"))))
        .unwrap();
    reg
}

fn parse(reg: &Registry, space: &str, text: &str) -> Motive {
    parse_motive(reg, &SpaceId::from(space), text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

#[test]
fn addition_requires_a_common_base() {
    let a = Motive::one(SpaceId::from("X"));
    let b = Motive::one(SpaceId::from("Y"));
    assert!(matches!(a.try_add(&b), Err(MotiveError::SpaceMismatch { .. })));
    let two = a.try_add(&a).unwrap();
    assert_eq!(two, Motive::integer(SpaceId::from("X"), 2));
}

#[test]
fn mu2_equals_one_minus_half_power() {
    let reg = Registry::new();
    let lhs = parse(&reg, "pt", "1 - L^(1/2)");
    let rhs = parse(&reg, "pt", "[mu_2]");
    assert!(lhs.mot_equal(&rhs));
    assert_eq!(render(&reg, &lhs), "[mu_2]");
}

#[test]
fn naive_product_of_half_powers_is_refused() {
    let half = Motive::l_half(SpaceId::point(), 1);
    assert_eq!(half.dot(&half), Err(MotiveError::DotUndefined));
    assert_eq!(half.odot(&half).unwrap(), Motive::l_half(SpaceId::point(), 2));
}

#[test]
fn zero_equals_empty_sum() {
    let reg = Registry::new();
    let z = parse(&reg, "pt", "L - L");
    assert!(z.mot_equal(&Motive::zero(SpaceId::point())));
    assert_eq!(render(&reg, &z), "0");
}

#[test]
fn opaque_products_are_undecidable() {
    let reg = Registry::new();
    let mu3 = parse(&reg, "pt", "[mu_3]");
    assert!(matches!(mu3.odot(&mu3), Err(MotiveError::OdotUndecidable { .. })));
    // Bundle twists always multiply.
    let r = torus();
    let y = parse(&r, "Gm", "Y(p)");
    assert!(y.odot(&y).unwrap().is_one());
}

#[test]
fn upsilon_expansion_matches_declared_cover() {
    // L^(1/2) ⊙ Y(p) - 1 = -[P].
    let reg = torus();
    let gm = SpaceId::from("Gm");
    let lhs = upsilon(&BundleClass::new(gm.clone(), BundleBits(1)))
        .shift(1)
        .try_sub(&Motive::one(gm.clone()))
        .unwrap();
    let cover = reg.symbol_motive(&gm, "P").unwrap();
    assert_eq!(lhs, cover.neg());
    assert_eq!(render(&reg, &cover), "[mu_2:P]");
    assert_eq!(render(&reg, &lhs), "-[mu_2:P]");
}

#[test]
fn bundle_tensor_examples() {
    let x = SpaceId::from("X");
    let p = BundleClass::new(x.clone(), BundleBits(0b01));
    let q = BundleClass::new(x.clone(), BundleBits(0b10));
    assert_eq!(bundle_tensor(&p, &BundleClass::trivial(x.clone())).unwrap(), p);
    assert!(bundle_tensor(&p, &p).unwrap().is_trivial());
    assert_eq!(bundle_tensor(&p, &q).unwrap().bits, BundleBits(0b11));
    let other = BundleClass::trivial(SpaceId::from("Y"));
    assert!(matches!(
        bundle_tensor(&p, &other),
        Err(MotiveError::SpaceMismatch { .. })
    ));
}

#[test]
fn square_root_data_are_bookkeeping() {
    let mut reg = torus();
    reg.add_square_root(SquareRootDatum {
        space: "Gm".into(),
        line_bundle: "O".into(),
        trivialization: "canonical".into(),
        class: vec![],
        equivalent: vec![],
    })
    .unwrap();
    reg.add_square_root(SquareRootDatum {
        space: "Gm".into(),
        line_bundle: "L1".into(),
        trivialization: "det q".into(),
        class: vec!["p".into()],
        equivalent: vec![("L1(2)".into(), "det q * s^2".into())],
    })
    .unwrap();
    assert!(from_square_root(&reg, "Gm", "O", "canonical").unwrap().is_trivial());
    let a = from_square_root(&reg, "Gm", "L1", "det q").unwrap();
    let b = from_square_root(&reg, "Gm", "L1(2)", "det q * s^2").unwrap();
    assert_eq!(a, b);
    assert!(matches!(
        from_square_root(&reg, "Gm", "K", "t"),
        Err(MotiveError::UnknownDatum { .. })
    ));
}

#[test]
fn boxdot_uses_registered_products() {
    let mut reg = torus();
    reg.add_space("A2", Some(2), &["q"]).unwrap();
    reg.add_product("GmxA2", "Gm", "A2").unwrap();
    let a = parse(&reg, "Gm", "L^(-1/2) ⊙ Y(p)");
    let b = parse(&reg, "A2", "L^-1 ⊙ Y(q)");
    let prod = boxdot(&reg, &a, &b).unwrap();
    assert_eq!(prod.space().as_str(), "GmxA2");
    assert_eq!(render(&reg, &prod), "L^(-3/2) ⊙ Y(p+q)");
    // Missing product registration.
    reg.add_space("Z", Some(0), &[]).unwrap();
    let z = Motive::one(SpaceId::from("Z"));
    assert!(matches!(
        boxdot(&reg, &a, &z),
        Err(MotiveError::Unknown { .. }) | Err(MotiveError::UnregisteredProduct { .. })
    ));
    // A point factor is a scalar.
    let one = Motive::one(SpaceId::point());
    assert_eq!(boxdot(&reg, &one, &a).unwrap(), a);
}

#[test]
fn pullback_and_pushforward_along_torus() {
    let mut reg = torus();
    reg.add_space("U", Some(1), &["p"]).unwrap();
    reg.add_cover("U", "P", &["p"], None).unwrap();
    let incl = reg
        .morphism_builder("j", "U", "Gm", MorphismKind::OpenInclusion)
        .unwrap()
        .build();
    reg.add_morphism(incl.clone()).unwrap();
    let m = parse(&reg, "Gm", "L^(-1/2) ⊙ Y(p) + [mu_2:P]");
    let pulled = pullback(&reg, &incl, &m).unwrap();
    assert_eq!(
        render(&reg, &pulled),
        render(&reg, &parse(&reg, "U", "L^(-1/2) ⊙ Y(p) + [mu_2:P]"))
    );

    let pi = reg
        .morphism_builder("pi", "Gm", "pt", MorphismKind::ToPoint)
        .unwrap()
        .build();
    let v = parse(&reg, "Gm", "L^(-1/2)");
    assert_eq!(render(&reg, &pushforward(&reg, &pi, &v).unwrap()), "L^(1/2) - L^(-1/2)");
    let twisted = parse(&reg, "Gm", "Y(p)");
    assert!(matches!(
        pushforward(&reg, &pi, &twisted),
        Err(MotiveError::MissingTransport { .. })
    ));
}

#[test]
fn forgetting_monodromy() {
    let reg = Registry::new();
    let pt = SpaceId::point();
    assert_eq!(
        pi_forget(&reg, &Motive::l_half(pt.clone(), 1)).unwrap(),
        Motive::integer(pt.clone(), -1)
    );
    assert_eq!(
        pi_forget(&reg, &Motive::l_half(pt.clone(), 2)).unwrap(),
        Motive::l_half(pt.clone(), 2)
    );
    let mu3 = Motive::symbol(MonSymbol::builtin(pt.clone(), 3));
    assert_eq!(pi_forget(&reg, &mu3).unwrap(), Motive::integer(pt.clone(), 3));
    // [μ₂] = 1 - L^(1/2) forgets to 1 + 1 = 2 points.
    let mu2 = reg.symbol_motive(&pt, "mu_2").unwrap();
    assert_eq!(pi_forget(&reg, &mu2).unwrap(), Motive::integer(pt.clone(), 2));

    let mut reg = Registry::new();
    reg.add_space("X", Some(1), &[]).unwrap();
    reg.add_symbol("X", "F", 3, None).unwrap();
    let f = parse(&reg, "X", "[F]");
    assert!(matches!(pi_forget(&reg, &f), Err(MotiveError::NoUnderlyingClass(_))));
}

#[test]
fn forgetting_a_declared_cover() {
    let reg = torus();
    let gm = SpaceId::from("Gm");
    let cover = reg.symbol_motive(&gm, "P").unwrap();
    // P → Gm is a connected double cover with underlying class declared as 1.
    assert_eq!(
        pi_forget(&reg, &cover).unwrap(),
        Motive::zero(gm.clone()).try_add(&Motive::one(gm)).unwrap()
    );
}

#[test]
fn parse_errors_are_reported() {
    let reg = torus();
    for bad in ["L^(1/3)", "[nope]", "Y(q)", "1 +", "[mu_2:Q]", "((1)"] {
        assert!(parse_motive(&reg, &SpaceId::from("Gm"), bad).is_err(), "{bad} parsed");
    }
}

#[test]
fn laurent_arithmetic() {
    let a = HalfLaurent::l_half_pow(1) + HalfLaurent::one();
    let b = HalfLaurent::l_half_pow(1) - HalfLaurent::one();
    assert_eq!(&a * &b, HalfLaurent::l_pow(1) - HalfLaurent::one());
    assert!((&a - &a).is_zero());
    assert_eq!(a.to_string(), "L^(1/2) + 1");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn text_and_json_round_trip(m in common::motive("Y", 3, true)) {
        let reg = common::world(3);
        let text = render(&reg, &m);
        prop_assert_eq!(&parse_motive(&reg, m.space(), &text).unwrap(), &m);
        let json = serde_json::to_string(&MotiveJson::from_motive(&reg, &m)).unwrap();
        let back: MotiveJson = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.to_motive(&reg).unwrap(), m);
    }

    #[test]
    fn bundle_pullback_is_functorial(f in common::morphism("Y", "X", 5), g in common::morphism("Z", "Y", 5), p in common::bits(5)) {
        let reg = common::world(5);
        let gf = reg.compose(&g, &f).unwrap();
        prop_assert_eq!(gf.pull_bits(&reg, p).unwrap(), g.pull_bits(&reg, f.pull_bits(&reg, p).unwrap()).unwrap());
        let q = BundleBits(0b10101);
        let lin = f.pull_bits(&reg, p.tensor(q)).unwrap();
        prop_assert_eq!(lin, f.pull_bits(&reg, p).unwrap().tensor(f.pull_bits(&reg, q).unwrap()));
    }

    #[test]
    fn subtraction_inverts_addition(a in common::motive("X", 2, true), b in common::motive("X", 2, true)) {
        prop_assert_eq!(a.try_add(&b).unwrap().try_sub(&b).unwrap(), a);
    }
}
