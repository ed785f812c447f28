use motivic_core::arc::{arc_class, compare, zeta_truncated, MonomialFunction};
use motivic_core::job::{JobFile, Payload};
use motivic_core::text::{parse_motive, render};
use motivic_core::zeta::{
    expand_series, milnor_fibre_at, nearby_cycle, validate_resolution, vanishing_cycle, zeta_function, RationalMotive,
    ResolutionData,
};
use motivic_core::{fixtures, Exec, HalfLaurent, Motive, MotiveError, Registry, SpaceId};
use serde_json::json;

fn resolution(job: &JobFile) -> ResolutionData {
    match &job.payload {
        Payload::Resolution(r) => r.clone(),
        other => panic!("expected a resolution payload, got {other:?}"),
    }
}

fn fixture(name: &str) -> (Registry, ResolutionData, JobFile) {
    let job = fixtures::load(name).unwrap();
    (job.registry().unwrap(), resolution(&job), job)
}

fn res(v: serde_json::Value) -> ResolutionData {
    serde_json::from_value(v).unwrap()
}

fn pt(reg: &Registry, text: &str) -> Motive {
    parse_motive(reg, &SpaceId::point(), text).unwrap()
}

/// `xy` on the plane: two lines crossing at the origin.
fn node() -> ResolutionData {
    res(json!({
        "ambient_dim": 2, "nearby_space": "pt", "critical_locus": "pt",
        "divisors": [{"id": "E1", "N": 1, "nu": 1}, {"id": "E2", "N": 1, "nu": 1}],
        "strata": [
            {"divisors": ["E1"], "class": "L - 1", "restrict": {"pt": "0"}},
            {"divisors": ["E2"], "class": "L - 1", "restrict": {"pt": "0"}},
            {"divisors": ["E1", "E2"], "class": "1"}
        ],
        "points": [{"label": "0", "fibre": [{"stratum": ["E1", "E2"], "class": "1"}]}]
    }))
}

#[test]
fn z2_zeta_and_cycles() {
    let (reg, r, _) = fixture("z2");
    let z = zeta_function(&reg, &r).unwrap();
    assert_eq!(z.render(&reg), "[mu_2] * (L^-1 T^2)/(1 - L^-1 T^2)");
    assert_eq!(render(&reg, &nearby_cycle(&reg, &r).unwrap()), "[mu_2]");
    assert!(vanishing_cycle(&reg, &r, "0").unwrap().is_one());
    assert!(milnor_fibre_at(&reg, &r, "0").unwrap().is_one());
}

#[test]
fn z3_series_matches_arc_count_to_order_nine() {
    let (reg, r, job) = fixture("z3");
    let f = job.params.monomial.clone().unwrap();
    let rows = compare(Exec::Sequential, &reg, &f, &zeta_function(&reg, &r).unwrap(), 9).unwrap();
    assert_eq!(rows.len(), 9);
    for row in &rows {
        assert!(row.pass(), "n = {}", row.n);
        assert_eq!(row.oracle.is_zero(), row.n % 3 != 0);
    }
    // Coefficient of T^9 is [mu_3] L^-3.
    assert_eq!(render(&reg, &rows[8].oracle), "L^-3 ⊙ [mu_3]");
}

#[test]
fn node_series_matches_hand_count() {
    // Arcs with ord(xy) = n and ac = 1: n + 1 splittings, (L - 1) leading
    // coefficients and n free coefficients, normalized by L^-2n.
    let reg = Registry::new();
    let r = node();
    let s = expand_series(&zeta_function(&reg, &r).unwrap(), 7).unwrap();
    assert!(s[0].is_zero());
    for (n, c) in s.iter().enumerate().skip(1) {
        let lm1 = HalfLaurent::l_pow(1) - HalfLaurent::one();
        let expect = Motive::integer(SpaceId::point(), n as i64 + 1)
            .scale(&lm1)
            .shift(-2 * n as i64);
        assert_eq!(c, &expect, "n = {n}");
    }
    assert_eq!(render(&reg, &nearby_cycle(&reg, &r).unwrap()), "L - 1");
    // A nondegenerate quadratic form in two variables has trivial vanishing cycle.
    assert!(vanishing_cycle(&reg, &r, "0").unwrap().is_one());
    assert!(milnor_fibre_at(&reg, &r, "0").unwrap().is_one());
}

#[test]
fn disjoint_divisors_add() {
    let reg = Registry::new();
    let r = res(json!({
        "ambient_dim": 1, "nearby_space": "pt", "critical_locus": "pt",
        "divisors": [{"id": "E1", "N": 1, "nu": 1}, {"id": "E2", "N": 1, "nu": 1}],
        "strata": [{"divisors": ["E1"], "class": "1"}, {"divisors": ["E2"], "class": "1"}]
    }));
    let s = expand_series(&zeta_function(&reg, &r).unwrap(), 4).unwrap();
    for (n, c) in s.iter().enumerate().skip(1) {
        assert_eq!(c, &Motive::integer(SpaceId::point(), 2).shift(-2 * n as i64));
    }
    assert_eq!(nearby_cycle(&reg, &r).unwrap(), Motive::integer(SpaceId::point(), 2));
}

#[test]
fn smooth_point_has_zero_milnor_fibre() {
    let reg = Registry::new();
    let r = res(json!({
        "ambient_dim": 1, "nearby_space": "pt", "critical_locus": "pt",
        "divisors": [{"id": "E", "N": 1, "nu": 1}],
        "strata": [{"divisors": ["E"], "class": "1"}],
        "points": [{"label": "0", "fibre": [{"stratum": ["E"], "class": "1"}]}]
    }));
    assert!(milnor_fibre_at(&reg, &r, "0").unwrap().is_zero());
    assert!(matches!(
        milnor_fibre_at(&reg, &r, "1"),
        Err(MotiveError::MissingRestriction { .. })
    ));
}

#[test]
fn constant_function_has_empty_zeta() {
    let reg = Registry::new();
    let r = res(json!({"ambient_dim": 2, "nearby_space": "pt", "critical_locus": "pt", "constant": true}));
    let z = zeta_function(&reg, &r).unwrap();
    assert_eq!(z, RationalMotive::empty(SpaceId::point()));
    assert_eq!(z.render(&reg), "0");
    assert!(nearby_cycle(&reg, &r).unwrap().is_zero());
    assert_eq!(
        vanishing_cycle(&reg, &r, "0").unwrap(),
        Motive::l_half(SpaceId::point(), -2)
    );
}

#[test]
fn order_zero_expansion() {
    let (reg, r, _) = fixture("z2");
    let s = expand_series(&zeta_function(&reg, &r).unwrap(), 0).unwrap();
    assert_eq!(s, vec![Motive::zero(SpaceId::point())]);
    let f = MonomialFunction::power(2);
    assert!(
        compare(Exec::Sequential, &reg, &f, &zeta_function(&reg, &r).unwrap(), 0)
            .unwrap()
            .is_empty()
    );
}

#[test]
fn validation_reports_each_problem() {
    let reg = Registry::new();
    let r = res(json!({
        "ambient_dim": 1, "nearby_space": "pt", "critical_locus": "nowhere",
        "divisors": [{"id": "E", "N": 2, "nu": 1}, {"id": "B", "N": 2, "nu": 1, "boundary": true}],
        "strata": [
            {"divisors": ["E"], "class": "1", "cover": {"kind": "trivial", "order": 3}},
            {"divisors": ["F"], "class": "1"}
        ]
    }));
    let d = validate_resolution(&reg, &r);
    assert!(d.iter().any(|m| m.contains("nowhere")), "{d:?}");
    assert!(d.iter().any(|m| m.contains("boundary divisor B")), "{d:?}");
    assert!(
        d.iter()
            .any(|m| m.contains("cover order 3 differs from m_I = gcd(N_i) = 2")),
        "{d:?}"
    );
    assert!(d.iter().any(|m| m.contains("unknown divisor F")), "{d:?}");
    assert!(matches!(zeta_function(&reg, &r), Err(MotiveError::ValidationFailed(_))));

    let missing = res(json!({
        "ambient_dim": 1, "nearby_space": "pt", "critical_locus": "pt",
        "divisors": [{"id": "E", "N": 4, "nu": 1}],
        "strata": [{"divisors": ["E"], "class": "1"}]
    }));
    assert_eq!(
        validate_resolution(&reg, &missing),
        vec!["stratum {E} has m_I = 4 but no cover data".to_string()]
    );
    assert!(validate_resolution(&reg, &node()).is_empty());
}

#[test]
fn limit_matches_series_sign_pattern() {
    // Each factor tends to -1, so a term with |I| factors contributes (-1)^|I|.
    let reg = Registry::new();
    let z = zeta_function(&reg, &node()).unwrap();
    let lim = z.limit_at_infinity().unwrap();
    let by_hand = z.terms.iter().fold(Motive::zero(SpaceId::point()), |acc, t| {
        let c = t.coefficient();
        acc.try_add(&if t.factors.len() % 2 == 1 { c.neg() } else { c })
            .unwrap()
    });
    assert_eq!(lim, by_hand);
}

#[test]
fn torus_examples_differ_by_a_twist() {
    let (reg2, r2, _) = fixture("x2");
    let (reg1, r1, _) = fixture("x2y");
    let a = vanishing_cycle(&reg2, &r2, "0").unwrap();
    let b = vanishing_cycle(&reg1, &r1, "0").unwrap();
    assert_eq!(render(&reg2, &a), "L^(-1/2)");
    assert_eq!(render(&reg1, &b), "L^(-1/2) ⊙ Y(p1)");
    // Pointwise the twist is invisible.
    assert_eq!(
        milnor_fibre_at(&reg2, &r2, "(0,1)").unwrap(),
        milnor_fibre_at(&reg1, &r1, "(0,1)").unwrap()
    );
}

#[test]
fn blowing_up_does_not_change_the_answer() {
    let (ra, a, _) = fixture("x2-plane");
    let (rb, b, _) = fixture("x2-plane-blowup");
    let na = nearby_cycle(&ra, &a).unwrap();
    let nb = nearby_cycle(&rb, &b).unwrap();
    assert_eq!(render(&ra, &na), render(&rb, &nb));
    assert_eq!(render(&ra, &na), "L ⊙ [mu_2]");
    assert!(zeta_function(&ra, &a).unwrap() != zeta_function(&rb, &b).unwrap());
    assert!(matches!(
        vanishing_cycle(&rb, &b, "0"),
        Err(MotiveError::MissingRestriction { .. })
    ));
}

#[test]
fn boundary_strata_drop_out_of_the_vanishing_cycle() {
    let (reg, r, _) = fixture("uv");
    assert!(vanishing_cycle(&reg, &r, "0").unwrap().is_one());
    assert!(matches!(
        vanishing_cycle(&reg, &r, "1"),
        Err(MotiveError::MissingRestriction { .. })
    ));
}

#[test]
fn arc_class_growth_and_homogeneity() {
    let reg = Registry::new();
    for a in 1..=5u32 {
        let f = MonomialFunction::power(a);
        for n in 1..=12u32 {
            let c = arc_class(&reg, &f, n).unwrap();
            if n % a != 0 {
                assert!(c.is_zero());
                continue;
            }
            // Raising n by a adds a - 1 free coefficients.
            let next = arc_class(&reg, &f, n + a).unwrap();
            assert_eq!(next, c.shift(2 * i64::from(a - 1)));
        }
        let s = zeta_truncated(&reg, &f, 3 * a as usize).unwrap();
        assert_eq!(
            s[a as usize],
            motivic_core::arc::builtin_cover(SpaceId::point(), a).shift(-2)
        );
    }
    assert!(matches!(
        arc_class(&reg, &MonomialFunction::power(2), 0),
        Err(MotiveError::InvalidDeclaration(_))
    ));
}

#[test]
fn oracle_catches_wrong_resolution() {
    let (reg, r, job) = fixture("z3-vs-z2");
    let f = job.params.monomial.clone().unwrap();
    let rows = compare(Exec::Sequential, &reg, &f, &zeta_function(&reg, &r).unwrap(), 4).unwrap();
    let first_fail = rows.iter().find(|r| !r.pass()).map(|r| r.n);
    assert_eq!(first_fail, Some(2));
}

#[test]
fn unsupported_monomials() {
    let reg = Registry::new();
    let two_vars: MonomialFunction = serde_json::from_value(json!({
        "affine": [{"name": "x", "exponent": 1}, {"name": "y", "exponent": 1}]
    }))
    .unwrap();
    assert!(matches!(
        zeta_truncated(&reg, &two_vars, 3),
        Err(MotiveError::UnsupportedShape(_))
    ));
    let zero: MonomialFunction = serde_json::from_value(json!({"affine": [{"name": "x", "exponent": 0}]})).unwrap();
    assert!(matches!(
        zeta_truncated(&reg, &zero, 3),
        Err(MotiveError::UnsupportedShape(_))
    ));
    let cube_twist: MonomialFunction = serde_json::from_value(json!({
        "affine": [{"name": "x", "exponent": 3}], "units": [{"name": "u", "exponent": 1}]
    }))
    .unwrap();
    assert!(matches!(
        arc_class(&reg, &cube_twist, 3),
        Err(MotiveError::UnsupportedShape(_))
    ));
}

#[test]
fn torus_monomials_match_their_resolutions() {
    for name in ["x2", "x2y"] {
        let (reg, r, job) = fixture(name);
        let f = job.params.monomial.clone().unwrap();
        let z = zeta_function(&reg, &r).unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert!(
                compare(exec, &reg, &f, &z, 10).unwrap().iter().all(|r| r.pass()),
                "{name}"
            );
        }
    }
}

#[test]
fn mu2_identity_on_point() {
    let reg = Registry::new();
    assert_eq!(pt(&reg, "[mu_2]"), pt(&reg, "1 - L^(1/2)"));
}
