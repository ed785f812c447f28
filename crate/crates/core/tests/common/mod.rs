#![allow(dead_code)]

use motivic_core::dcrit::Atlas;
use motivic_core::job::Payload;
use motivic_core::{
    fixtures, BundleBits, HalfLaurent, MonSymbol, Monomial, Morphism, MorphismKind, Motive, Registry, SpaceId,
};
use proptest::prelude::*;

pub const SPACES: [&str; 3] = ["X", "Y", "Z"];

/// Three spaces with `gens` bundle generators each, two order-1 symbols `A`,
/// `B` and one opaque order-3 symbol `C`.
pub fn world(gens: usize) -> Registry {
    let names: Vec<String> = (0..gens).map(|i| format!("g{i}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut reg = Registry::new();
    for s in SPACES {
        reg.add_space(s, Some(2), &names).unwrap();
        reg.add_symbol(s, "A", 1, None).unwrap();
        reg.add_symbol(s, "B", 1, None).unwrap();
        reg.add_symbol(s, "C", 3, None).unwrap();
    }
    reg
}

pub fn sym(space: &SpaceId, name: &str) -> MonSymbol {
    MonSymbol::new(name, space.clone(), if name == "C" { 3 } else { 1 })
}

fn laurent() -> impl Strategy<Value = HalfLaurent> {
    prop::collection::vec((-6i64..=6, -4i64..=4), 1..=3).prop_map(|ts| {
        let mut c = HalfLaurent::zero();
        for (k, v) in ts {
            c += &HalfLaurent::monomial(k, v);
        }
        c
    })
}

/// A random element of the fragment over `space`; `opaque` allows the order-3
/// symbol `C` to first power (its square is not a computable `⊙`).
pub fn motive(space: &str, gens: usize, opaque: bool) -> impl Strategy<Value = Motive> {
    let space = SpaceId::from(space);
    let max_c = u32::from(opaque);
    let mask = if gens == 0 { 0 } else { (1u64 << gens) - 1 };
    prop::collection::vec((0u32..=2, 0u32..=1, 0..=max_c, any::<u64>(), laurent()), 0..=4).prop_map(move |ts| {
        let mut m = Motive::zero(space.clone());
        for (a, b, c, bits, coeff) in ts {
            let mono = Monomial::from_factors([(sym(&space, "A"), a), (sym(&space, "B"), b), (sym(&space, "C"), c)]);
            let t = Motive::term(space.clone(), mono, BundleBits(bits & mask), coeff);
            m = m.try_add(&t).unwrap();
        }
        m
    })
}

pub fn bits(gens: usize) -> impl Strategy<Value = BundleBits> {
    let mask = if gens == 0 { 0 } else { (1u64 << gens) - 1 };
    any::<u64>().prop_map(move |b| BundleBits(b & mask))
}

/// A general morphism `source → target` with a random 𝔽₂ pullback matrix and
/// symbol images `A ↦ [A] ⊙ Y(u)`, `B ↦ L ⊙ [B]`, `C ↦ [C] ⊙ Y(v)`.
pub fn morphism(source: &'static str, target: &'static str, gens: usize) -> impl Strategy<Value = Morphism> {
    (prop::collection::vec(bits(gens), gens), bits(gens), bits(gens)).prop_map(move |(cols, u, v)| {
        let src = SpaceId::from(source);
        let mut sp = std::collections::BTreeMap::new();
        sp.insert("A".into(), Motive::symbol(sym(&src, "A")).twist(u));
        sp.insert("B".into(), Motive::symbol(sym(&src, "B")).shift(2));
        sp.insert("C".into(), Motive::symbol(sym(&src, "C")).twist(v));
        Morphism {
            name: format!("{source}->{target}"),
            source: src,
            target: SpaceId::from(target),
            kind: MorphismKind::General,
            bundle_pullback: cols.into_iter().map(Some).collect(),
            symbol_pullback: sp,
            pushforward: Default::default(),
        }
    })
}

pub fn load_atlas(name: &str) -> (Registry, Atlas) {
    let job = fixtures::load(name).unwrap();
    let reg = job.registry().unwrap();
    match job.payload {
        Payload::Atlas(a) => (reg, a),
        other => panic!("{name} is not an atlas: {other:?}"),
    }
}

/// Toggles generator `g` in a list of generator names.
pub fn flip(names: &mut Vec<String>, g: &str) {
    if let Some(i) = names.iter().position(|n| n == g) {
        names.remove(i);
    } else {
        names.push(g.to_string());
        names.sort();
    }
}

fn names(bits: u8, gens: [&str; 2]) -> Vec<String> {
    gens.iter()
        .enumerate()
        .filter(|(i, _)| bits >> i & 1 == 1)
        .map(|(_, g)| g.to_string())
        .collect()
}

/// A consistent re-orientation of the two-chart torus atlas.
///
/// With `r1: a ↦ c`, `r2: b ↦ c` bijective, choosing `Q_A` and `P_Φ` freely
/// forces `Q_T = P_Φ + Q_A|`, `Q_B|= Q_A| + p` and `P_Ψ = P_Φ + p`.
pub fn two_chart_variant(q_a: u8, p_phi: u8, shared_mf: bool) -> (Registry, Atlas) {
    let (reg, mut atlas) = load_atlas("gm-two-charts");
    let qa = q_a & 3;
    let phi = p_phi & 3;
    let qa_res = qa; // r1 maps (p, a) to (p, c)
    let q_t = phi ^ qa_res;
    let qb_res = qa_res ^ 1;
    let psi = phi ^ 1;
    atlas.charts[0].q = names(qa, ["p", "a"]);
    atlas.charts[1].q = names(qb_res, ["p", "b"]);
    let o = &mut atlas.overlaps[0];
    o.shared.q = names(q_t, ["p", "c"]);
    o.p_phi = names(phi, ["p", "c"]);
    o.p_psi = names(psi, ["p", "c"]);
    o.shared.mf = shared_mf.then(|| {
        let y = names(phi, ["p", "c"]).join("+");
        motivic_core::registry::MotiveSpec::Text(format!("L^(-1/2) ⊙ Y({y})"))
    });
    (reg, atlas)
}

/// Every orientation entry of the two-chart atlas as (field, generator).
pub const ORIENTATION_SLOTS: [(&str, &str); 10] = [
    ("Q_A", "p"),
    ("Q_A", "a"),
    ("Q_B", "p"),
    ("Q_B", "b"),
    ("Q_T", "p"),
    ("Q_T", "c"),
    ("P_Phi", "p"),
    ("P_Phi", "c"),
    ("P_Psi", "p"),
    ("P_Psi", "c"),
];

pub fn flip_slot(atlas: &mut Atlas, slot: (&str, &str)) {
    let (field, g) = slot;
    let list = match field {
        "Q_A" => &mut atlas.charts[0].q,
        "Q_B" => &mut atlas.charts[1].q,
        "Q_T" => &mut atlas.overlaps[0].shared.q,
        "P_Phi" => &mut atlas.overlaps[0].p_phi,
        "P_Psi" => &mut atlas.overlaps[0].p_psi,
        _ => unreachable!(),
    };
    flip(list, g);
}
