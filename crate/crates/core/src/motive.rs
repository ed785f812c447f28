//! Monodromic motives in a decidable normal form.
//!
//! A motive over `X` is a finite sum of terms `c(L^(1/2)) ⊙ M ⊙ Υ(p)` where `c` is a
//! Laurent polynomial in `L^(1/2)`, `M` a monomial in opaque symbols and `p` a Z2-bundle
//! class on `X`. Half powers of `L` and the `Υ` units multiply definitionally; opaque
//! symbols carrying nontrivial monodromy only multiply against trivial ones.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{MotiveError, Result};
use crate::laurent::HalfLaurent;
use crate::registry::{Morphism, MorphismKind, Registry, SpaceId};
use crate::zbundle::BundleBits;

/// An opaque class `[Y → S, action]`. Order 1 means trivial monodromy.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MonSymbol {
    pub name: Arc<str>,
    pub space: SpaceId,
    pub order: u32,
}

impl MonSymbol {
    pub fn new(name: &str, space: SpaceId, order: u32) -> Self {
        Self {
            name: Arc::from(name),
            space,
            order,
        }
    }

    /// `X × μ_n` with the standard action.
    pub fn builtin(space: SpaceId, n: u32) -> Self {
        Self::new(&format!("mu_{n}"), space, n)
    }

    pub fn is_builtin(&self) -> bool {
        self.name.strip_prefix("mu_").is_some_and(|d| d.parse::<u32>().is_ok())
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

/// Product of symbols with positive powers, kept sorted.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<(MonSymbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn symbol(s: MonSymbol) -> Self {
        Self(vec![(s, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (MonSymbol, u32)>) -> Self {
        factors.into_iter().fold(
            Self::one(),
            |acc, (s, e)| {
                if e == 0 {
                    acc
                } else {
                    acc.mul(&Self(vec![(s, e)]))
                }
            },
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|(s, _)| s.is_trivial())
    }

    pub fn factors(&self) -> impl Iterator<Item = (&MonSymbol, u32)> {
        self.0.iter().map(|(s, e)| (s, *e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: Vec<(MonSymbol, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ord = match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        Self(out)
    }

    /// Symbols with nontrivial monodromy, grouped by their space.
    fn nontrivial_spaces(&self) -> impl Iterator<Item = &SpaceId> {
        self.0.iter().filter(|(s, _)| !s.is_trivial()).map(|(s, _)| &s.space)
    }

    fn map_spaces(&self, f: impl Fn(&MonSymbol) -> SpaceId) -> Self {
        Self::from_factors(self.0.iter().map(|(s, e)| {
            (
                MonSymbol {
                    space: f(s),
                    ..s.clone()
                },
                *e,
            )
        }))
    }
}

pub type TermKey = (Monomial, BundleBits);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Motive {
    space: SpaceId,
    terms: BTreeMap<TermKey, HalfLaurent>,
}

impl Motive {
    pub fn zero(space: SpaceId) -> Self {
        Self {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: SpaceId) -> Self {
        Self::laurent(space, HalfLaurent::one())
    }

    pub fn laurent(space: SpaceId, c: HalfLaurent) -> Self {
        Self::term(space, Monomial::one(), BundleBits::ZERO, c)
    }

    /// `L^(k/2)`.
    pub fn l_half(space: SpaceId, half_exp: i64) -> Self {
        Self::laurent(space, HalfLaurent::l_half_pow(half_exp))
    }

    pub fn integer(space: SpaceId, n: impl Into<BigInt>) -> Self {
        Self::laurent(space, HalfLaurent::constant(n))
    }

    pub fn upsilon(space: SpaceId, bits: BundleBits) -> Self {
        Self::term(space, Monomial::one(), bits, HalfLaurent::one())
    }

    pub fn symbol(s: MonSymbol) -> Self {
        let space = s.space.clone();
        Self::term(space, Monomial::symbol(s), BundleBits::ZERO, HalfLaurent::one())
    }

    /// The order-2 cover with class `p`: `1 - L^(1/2) ⊙ Υ(p)`.
    pub fn cover(space: SpaceId, bits: BundleBits) -> Self {
        let mut m = Self::one(space.clone());
        m.add_term(Monomial::one(), bits, &-HalfLaurent::l_half_pow(1));
        m
    }

    pub fn term(space: SpaceId, mono: Monomial, bits: BundleBits, c: HalfLaurent) -> Self {
        let mut m = Self::zero(space);
        m.add_term(mono, bits, &c);
        m
    }

    pub fn space(&self) -> &SpaceId {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &HalfLaurent)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|((m, b), c)| m.is_one() && b.is_zero() && c.is_one())
    }

    /// The coefficient of `1`, if this motive is a pure Laurent polynomial.
    pub fn as_laurent(&self) -> Option<HalfLaurent> {
        match self.terms.len() {
            0 => Some(HalfLaurent::zero()),
            1 => {
                let ((m, b), c) = self.terms.iter().next()?;
                (m.is_one() && b.is_zero()).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, mono: &Monomial, bits: BundleBits) -> HalfLaurent {
        self.terms.get(&(mono.clone(), bits)).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, bits: BundleBits, c: &HalfLaurent) {
        if c.is_zero() {
            return;
        }
        let key = (mono, bits);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Rebuilds the normal form term by term; a fixed point on well-formed motives.
    pub fn normalized(&self) -> Self {
        let mut out = Self::zero(self.space.clone());
        for ((m, b), c) in &self.terms {
            for (k, v) in c.terms() {
                out.add_term(m.clone(), *b, &HalfLaurent::monomial(k, v.clone()));
            }
        }
        out
    }

    /// No half powers, no bundle twists and only order-1 symbols.
    pub fn is_trivial_monodromy(&self) -> bool {
        self.terms
            .iter()
            .all(|((m, b), c)| b.is_zero() && m.is_trivial() && c.is_integral())
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(MotiveError::SpaceMismatch {
                left: self.space.to_string(),
                right: other.space.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut out = self.clone();
        for ((m, b), c) in &other.terms {
            out.add_term(m.clone(), *b, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    /// `c ⊙ self` for a Laurent polynomial `c`; always defined.
    pub fn scale(&self, c: &HalfLaurent) -> Self {
        let mut out = Self::zero(self.space.clone());
        for ((m, b), v) in &self.terms {
            out.add_term(m.clone(), *b, &(v * c));
        }
        out
    }

    pub fn shift(&self, half_exp: i64) -> Self {
        Self {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.shift(half_exp))).collect(),
        }
    }

    /// Multiplies by `Υ(p)`; always defined.
    pub fn twist(&self, bits: BundleBits) -> Self {
        Self {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|((m, b), c)| ((m.clone(), b.tensor(bits)), c.clone()))
                .collect(),
        }
    }

    /// The primary product `⊙`.
    pub fn odot(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut out = Self::zero(self.space.clone());
        for ((ma, ba), ca) in &self.terms {
            for ((mb, bb), cb) in &other.terms {
                if !ma.is_trivial() && !mb.is_trivial() {
                    return Err(MotiveError::OdotUndecidable {
                        left: crate::text::render_monomial(ma),
                        right: crate::text::render_monomial(mb),
                    });
                }
                out.add_term(ma.mul(mb), ba.tensor(*bb), &(ca * cb));
            }
        }
        Ok(out)
    }

    /// The naive product `·`, available when one side has trivial monodromy,
    /// where it agrees with `⊙`.
    pub fn dot(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        if self.is_trivial_monodromy() || other.is_trivial_monodromy() {
            self.odot(other)
        } else {
            Err(MotiveError::DotUndefined)
        }
    }

    /// Equality of normal forms. Sound but not complete: relations pushed
    /// forward from other spaces are not quotiented out.
    pub fn mot_equal(&self, other: &Self) -> bool {
        self == other
    }

    /// Reinterprets a motive over `pt` as the constant family over `space`.
    pub fn lift_from_point(&self, space: &SpaceId) -> Result<Self> {
        if !self.space.is_point() {
            return Err(MotiveError::SpaceMismatch {
                left: self.space.to_string(),
                right: "pt".into(),
            });
        }
        if self.terms.keys().any(|(_, b)| !b.is_zero()) {
            return Err(MotiveError::InvalidDeclaration("bundle class on pt".into()));
        }
        let mut out = Self::zero(space.clone());
        for ((m, b), c) in &self.terms {
            let m = m.map_spaces(|s| if s.is_builtin() { space.clone() } else { s.space.clone() });
            out.add_term(m, *b, c);
        }
        Ok(out)
    }
}

/// External product `⊠`.
///
/// With one factor over `pt` the result lives over the other factor's space;
/// otherwise the product space must be registered. Bundle classes of the right
/// factor are shifted past the left factor's generators.
pub fn boxdot(reg: &Registry, a: &Motive, b: &Motive) -> Result<Motive> {
    if a.space.is_point() {
        return boxdot_formal(&a.lift_from_point(&b.space)?, b, b.space.clone(), 0);
    }
    if b.space.is_point() {
        return boxdot_formal(a, &b.lift_from_point(&a.space)?, a.space.clone(), 0);
    }
    let prod = reg.product(&a.space, &b.space)?;
    let shift = reg.space(a.space.as_str())?.bundles.dim();
    let relabel = |m: &Motive| {
        let mut out = Motive::zero(m.space.clone());
        for ((mono, bits), c) in &m.terms {
            let mono = mono.map_spaces(|s| {
                if s.is_builtin() {
                    prod.id.clone()
                } else {
                    s.space.clone()
                }
            });
            out.add_term(mono, *bits, c);
        }
        out
    };
    boxdot_formal(&relabel(a), &relabel(b), prod.id.clone(), shift)
}

fn boxdot_formal(a: &Motive, b: &Motive, space: SpaceId, shift: usize) -> Result<Motive> {
    let mut out = Motive::zero(space);
    for ((ma, ba), ca) in &a.terms {
        for ((mb, bb), cb) in &b.terms {
            let sa: Vec<_> = ma.nontrivial_spaces().collect();
            if let Some(s) = mb.nontrivial_spaces().find(|s| sa.contains(s)) {
                return Err(MotiveError::OdotUndecidable {
                    left: crate::text::render_monomial(ma),
                    right: format!("{} (on {s})", crate::text::render_monomial(mb)),
                });
            }
            out.add_term(ma.mul(mb), ba.tensor(bb.shifted(shift)), &(ca * cb));
        }
    }
    Ok(out)
}

fn missing(f: &Morphism, item: impl Into<String>) -> MotiveError {
    MotiveError::MissingTransport {
        morphism: f.name.clone(),
        item: item.into(),
    }
}

/// `f^*`: a ring map for `⊙`, computed factor by factor.
pub fn pullback(reg: &Registry, f: &Morphism, m: &Motive) -> Result<Motive> {
    if m.space != f.target {
        return Err(MotiveError::SpaceMismatch {
            left: m.space.to_string(),
            right: f.target.to_string(),
        });
    }
    let src = f.source.clone();
    let mut cache: BTreeMap<MonSymbol, Motive> = BTreeMap::new();
    let mut out = Motive::zero(src.clone());
    for ((mono, bits), c) in &m.terms {
        let mut acc = Motive::term(src.clone(), Monomial::one(), f.pull_bits(reg, *bits)?, c.clone());
        for (sym, e) in mono.factors() {
            let img = match cache.get(sym) {
                Some(img) => img.clone(),
                None => {
                    let img = pull_symbol(reg, f, sym)?;
                    cache.insert(sym.clone(), img.clone());
                    img
                }
            };
            for _ in 0..e {
                acc = acc.odot(&img)?;
            }
        }
        out = out.try_add(&acc)?;
    }
    Ok(out)
}

fn pull_symbol(reg: &Registry, f: &Morphism, sym: &MonSymbol) -> Result<Motive> {
    let src = f.source.clone();
    if sym.is_builtin() {
        return Ok(Motive::symbol(MonSymbol {
            space: src,
            ..sym.clone()
        }));
    }
    if sym.space.is_point() {
        return Ok(Motive::symbol(sym.clone()));
    }
    if sym.space == f.target {
        if let Some(img) = f.symbol_pullback.get(&sym.name) {
            return Ok(img.clone());
        }
        if f.kind == MorphismKind::OpenInclusion {
            if let Ok(Some(info)) = reg.symbol(&src, &sym.name) {
                if info.symbol.order == sym.order {
                    return reg.symbol_motive(&src, &sym.name);
                }
            }
        }
    }
    Err(missing(f, format!("symbol {}", sym.name)))
}

/// `f_!`: additive, with `L^(k/2)` and point classes factoring out.
pub fn pushforward(reg: &Registry, f: &Morphism, m: &Motive) -> Result<Motive> {
    if m.space != f.source {
        return Err(MotiveError::SpaceMismatch {
            left: m.space.to_string(),
            right: f.source.to_string(),
        });
    }
    let tgt = f.target.clone();
    let mut out = Motive::zero(tgt.clone());
    for ((mono, bits), c) in &m.terms {
        let (outer, inner): (Vec<_>, Vec<_>) = mono
            .factors()
            .map(|(s, e)| (s.clone(), e))
            .partition(|(s, _)| s.space.is_point() && !s.is_builtin());
        let inner = Monomial::from_factors(inner);
        let image = push_basis(reg, f, &inner, *bits)?;
        let factor = Motive::term(tgt.clone(), Monomial::from_factors(outer), BundleBits::ZERO, c.clone());
        out = out.try_add(&image.odot(&factor)?)?;
    }
    Ok(out)
}

fn push_basis(reg: &Registry, f: &Morphism, mono: &Monomial, bits: BundleBits) -> Result<Motive> {
    if let Some(img) = f.pushforward.get(&(mono.clone(), bits)) {
        return Ok(img.clone());
    }
    let tgt = f.target.clone();
    let describe = || {
        let names = reg
            .space(f.source.as_str())
            .map(|s| s.bundles.names_of(bits).join("+"))
            .unwrap_or_default();
        format!("{} with bundle class {{{names}}}", crate::text::render_monomial(mono))
    };
    if !bits.is_zero() {
        return Err(missing(f, describe()));
    }
    let identity = || -> Result<Motive> {
        match f.kind {
            MorphismKind::ToPoint => Ok(reg
                .space(f.source.as_str())?
                .total_class
                .clone()
                .unwrap_or_else(|| Motive::symbol(MonSymbol::new(f.source.as_str(), tgt.clone(), 1)))),
            MorphismKind::OpenInclusion => Ok(Motive::symbol(MonSymbol::new(f.source.as_str(), tgt.clone(), 1))),
            _ => Err(missing(f, "the class of the source")),
        }
    };
    let factors: Vec<_> = mono.factors().collect();
    match factors.as_slice() {
        [] => identity(),
        [(s, n)] if s.is_builtin() => {
            let base = identity()?;
            let mut sym = Motive::symbol(MonSymbol {
                space: tgt.clone(),
                ..(*s).clone()
            });
            for _ in 1..*n {
                sym = sym.odot(&Motive::symbol(MonSymbol {
                    space: tgt.clone(),
                    ..(*s).clone()
                }))?;
            }
            base.odot(&sym)
        }
        [(s, 1)] if f.kind == MorphismKind::ToPoint => Ok(Motive::symbol(MonSymbol {
            space: tgt,
            ..(*s).clone()
        })),
        _ => Err(missing(f, describe())),
    }
}

/// The forgetful map to motives without monodromy.
///
/// Defined on terms with trivial monodromy, on opaque symbols with declared
/// underlying classes (with integral coefficients), and on `L^(k/2) ⊙ Υ(p)` with
/// `k` odd when `p` is the class of a declared cover: that term equals
/// `L^((k-1)/2) ⊙ (1 - [P, ρ̂])`.
pub fn pi_forget(reg: &Registry, m: &Motive) -> Result<Motive> {
    let mut out = Motive::zero(m.space.clone());
    for ((mono, bits), c) in &m.terms {
        let (plain, twisted): (Vec<_>, Vec<_>) = mono.factors().partition(|(s, _)| s.is_trivial());
        let plain = Monomial::from_factors(plain.into_iter().map(|(s, e)| (s.clone(), e)));
        let mut acc = Motive::term(m.space.clone(), plain, BundleBits::ZERO, HalfLaurent::one());
        let where_ = || crate::text::render_term(reg, mono, *bits, c);
        if bits.is_zero() {
            if !twisted.is_empty() && !c.is_integral() {
                return Err(MotiveError::ForgetOutsideFragment(where_()));
            }
            for (s, e) in twisted {
                let u = underlying(reg, s, &m.space)?;
                for _ in 0..e {
                    acc = acc.odot(&u)?;
                }
            }
            out = out.try_add(&acc.scale(&c.forget_half_powers()))?;
        } else {
            if !twisted.is_empty() || c.terms().any(|(k, _)| k.rem_euclid(2) == 0) {
                return Err(MotiveError::ForgetOutsideFragment(where_()));
            }
            let cover = reg.cover_with_class(&m.space, *bits).ok_or_else(|| {
                MotiveError::ForgetOutsideFragment(format!("{}: no declared cover with this class", where_()))
            })?;
            let p = cover
                .underlying
                .clone()
                .ok_or_else(|| MotiveError::NoUnderlyingClass(cover.symbol.name.to_string()))?;
            let one_minus_p = Motive::one(m.space.clone()).try_sub(&p)?;
            let lowered = c.shift(-1);
            out = out.try_add(&acc.odot(&one_minus_p)?.scale(&lowered))?;
        }
    }
    Ok(out)
}

fn underlying(reg: &Registry, s: &MonSymbol, space: &SpaceId) -> Result<Motive> {
    if s.is_builtin() {
        return Ok(Motive::integer(space.clone(), s.order));
    }
    let info = reg
        .symbol_info(s)
        .ok_or_else(|| MotiveError::NoUnderlyingClass(s.name.to_string()))?;
    let u = info
        .underlying
        .as_ref()
        .ok_or_else(|| MotiveError::NoUnderlyingClass(s.name.to_string()))?;
    // Underlying classes are stated over the symbol's own space; read them as formal
    // monomials over the ambient space.
    let mut out = Motive::zero(space.clone());
    for ((mono, b), c) in &u.terms {
        let mono = mono.map_spaces(|t| if t.is_builtin() { space.clone() } else { t.space.clone() });
        out.add_term(mono, *b, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> SpaceId {
        SpaceId::from("X")
    }

    #[test]
    fn cover_identity() {
        // [μ2, ρ̂] = 1 - L^(1/2), so 1 - [μ2] = L^(1/2) and its square is L.
        let mu2 = Motive::cover(x(), BundleBits::ZERO);
        let half = Motive::one(x()).try_sub(&mu2).unwrap();
        assert_eq!(half, Motive::l_half(x(), 1));
        assert_eq!(half.odot(&half).unwrap(), Motive::l_half(x(), 2));
    }

    #[test]
    fn upsilon_is_a_group_ring() {
        let p = BundleBits(0b01);
        let q = BundleBits(0b11);
        let a = Motive::upsilon(x(), p).odot(&Motive::upsilon(x(), q)).unwrap();
        assert_eq!(a, Motive::upsilon(x(), BundleBits(0b10)));
        assert!(Motive::upsilon(x(), p).odot(&Motive::upsilon(x(), p)).unwrap().is_one());
    }

    #[test]
    fn nontrivial_opaque_product_is_refused() {
        let a = Motive::symbol(MonSymbol::builtin(x(), 3));
        assert!(matches!(a.odot(&a), Err(MotiveError::OdotUndecidable { .. })));
        let b = Motive::symbol(MonSymbol::new("E", x(), 1));
        assert!(a.odot(&b).is_ok());
    }

    #[test]
    fn dot_needs_a_trivial_side() {
        let a = Motive::l_half(x(), 1);
        assert_eq!(a.dot(&a), Err(MotiveError::DotUndefined));
        let e = Motive::symbol(MonSymbol::new("E", x(), 1));
        assert_eq!(a.dot(&e).unwrap(), a.odot(&e).unwrap());
    }

    #[test]
    fn space_mismatch() {
        let a = Motive::one(x());
        let b = Motive::one(SpaceId::from("Y"));
        assert!(matches!(a.try_add(&b), Err(MotiveError::SpaceMismatch { .. })));
    }

    #[test]
    fn monomial_mul_merges_powers() {
        let e = MonSymbol::new("E", x(), 1);
        let f = MonSymbol::new("F", x(), 1);
        let m = Monomial::symbol(e.clone())
            .mul(&Monomial::symbol(f.clone()))
            .mul(&Monomial::symbol(e.clone()));
        assert_eq!(m.factors().collect::<Vec<_>>(), vec![(&e, 2), (&f, 1)]);
    }

    #[test]
    fn builtin_mu2_forgets_to_two() {
        let reg = Registry::new();
        let mu2 = reg.symbol_motive(&SpaceId::point(), "mu_2").unwrap();
        assert_eq!(pi_forget(&reg, &mu2).unwrap(), Motive::integer(SpaceId::point(), 2));
        let mu3 = reg.symbol_motive(&SpaceId::point(), "mu_3").unwrap();
        assert_eq!(pi_forget(&reg, &mu3).unwrap(), Motive::integer(SpaceId::point(), 3));
    }

    #[test]
    fn forget_refuses_half_powers_times_monodromy() {
        let reg = Registry::new();
        let m = Motive::symbol(MonSymbol::builtin(SpaceId::point(), 3)).shift(1);
        assert!(matches!(
            pi_forget(&reg, &m),
            Err(MotiveError::ForgetOutsideFragment(_))
        ));
    }
}
