//! Motivic zeta functions from resolution combinatorics, and the nearby and
//! vanishing cycles they determine.
//!
//! The zeta function of `f` with log resolution data `(E_i, N_i, ν_i)` is
//! `Σ_{I≠∅} (L-1)^(|I|-1) [Ẽ_I°, ρ̂_I] Π_{i∈I} L^(-ν_i) T^(N_i) / (1 - L^(-ν_i) T^(N_i))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{MotiveError, Result};
use crate::laurent::{render_l_power, HalfLaurent};
use crate::motive::Motive;
use crate::par::Exec;
use crate::registry::{MotiveSpec, Registry, SpaceId};
use crate::text;

pub const RESOLUTION_SCHEMA: &str = "motivic-resolution/v1";

/// Log resolution data for `f - c` near one critical value `c`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionData {
    #[serde(default)]
    pub schema: Option<String>,
    /// `dim U`.
    pub ambient_dim: u32,
    /// Space carrying the nearby cycle (the zero fibre `U_c`).
    pub nearby_space: String,
    /// Space carrying the vanishing cycle (`X_c = Crit(f) ∩ U_c`).
    pub critical_locus: String,
    #[serde(default = "default_value")]
    pub value: String,
    /// Marks a constant function, whose nearby cycle is zero.
    #[serde(default)]
    pub constant: bool,
    #[serde(default)]
    pub divisors: Vec<Divisor>,
    #[serde(default)]
    pub strata: Vec<Stratum>,
    #[serde(default)]
    pub points: Vec<PointFibre>,
}

fn default_value() -> String {
    "0".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Divisor {
    pub id: String,
    #[serde(rename = "N")]
    pub n: u32,
    pub nu: u32,
    /// Closure of a component of the preimage of `U_c ∖ X_c`.
    #[serde(default)]
    pub boundary: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    pub divisors: Vec<String>,
    /// Class of `E_I°` over the nearby space.
    pub class: MotiveSpec,
    #[serde(default)]
    pub cover: Option<CoverSpec>,
    /// Restrictions of `[Ẽ_I°, ρ̂_I]` to other spaces, keyed by space name.
    #[serde(default)]
    pub restrict: BTreeMap<String, MotiveSpec>,
}

/// The `μ_{m_I}`-cover `Ẽ_I° → E_I°`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoverSpec {
    /// `E_I° × μ_m` with the standard action.
    Trivial { order: u32 },
    /// A declared symbol of order `m_I` standing for `[Ẽ_I°, ρ̂_I]` itself.
    Symbol { name: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFibre {
    pub label: String,
    /// Fibres at the point of the strata classes `[Ẽ_I°, ρ̂_I]`; unlisted strata miss the point.
    #[serde(default)]
    pub fibre: Vec<FibreEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibreEntry {
    pub stratum: Vec<String>,
    pub class: MotiveSpec,
}

/// `L^(-ν) T^N / (1 - L^(-ν) T^N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factor {
    #[serde(rename = "N")]
    pub n: u32,
    pub nu: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTerm {
    /// Stratum label, for display.
    pub label: String,
    /// `[Ẽ_I°, ρ̂_I]`.
    pub class: Motive,
    /// Power of `(L - 1)` in front.
    pub l_minus_one: u32,
    pub factors: Vec<Factor>,
}

impl RationalTerm {
    pub fn coefficient(&self) -> Motive {
        self.class.scale(&HalfLaurent::l_minus_one_pow(self.l_minus_one))
    }
}

/// A finite sum of motive coefficients times products of geometric factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMotive {
    pub space: SpaceId,
    pub terms: Vec<RationalTerm>,
}

impl RationalMotive {
    pub fn empty(space: SpaceId) -> Self {
        Self { space, terms: vec![] }
    }

    /// `lim_{T→∞}`: every factor tends to `-1`.
    pub fn limit_at_infinity(&self) -> Result<Motive> {
        let mut out = Motive::zero(self.space.clone());
        for t in &self.terms {
            let c = t.coefficient();
            out = out.try_add(&if t.factors.len() % 2 == 0 { c } else { c.neg() })?;
        }
        Ok(out)
    }

    pub fn render(&self, reg: &Registry) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let mut parts = vec![];
            match t.l_minus_one {
                0 => {}
                1 => parts.push("(L - 1)".to_string()),
                k => parts.push(format!("(L - 1)^{k}")),
            }
            let class = text::render(reg, &t.class);
            if !(t.class.is_one() && !parts.is_empty()) {
                let sum = class.contains(" + ") || class.contains(" - ");
                parts.push(if sum { format!("({class})") } else { class });
            }
            for f in &t.factors {
                parts.push(render_factor(*f));
            }
            let _ = write!(out, "{}", parts.join(" * "));
        }
        out
    }
}

fn render_factor(f: Factor) -> String {
    let l = render_l_power(-2 * i64::from(f.nu));
    let t = if f.n == 1 {
        "T".to_string()
    } else {
        format!("T^{}", f.n)
    };
    let num = match l {
        Some(l) => format!("{l} {t}"),
        None => t,
    };
    format!("({num})/(1 - {num})")
}

/// Coefficients of `T^0..T^k`; the constant coefficient is always zero.
pub fn expand_series(z: &RationalMotive, k: usize) -> Result<Vec<Motive>> {
    expand_series_with(Exec::default(), z, k)
}

pub fn expand_series_with(exec: Exec, z: &RationalMotive, k: usize) -> Result<Vec<Motive>> {
    let per_term = exec.map(&z.terms, |t| term_series(t, k));
    let mut out = vec![Motive::zero(z.space.clone()); k + 1];
    for series in per_term {
        for (slot, c) in out.iter_mut().zip(series) {
            *slot = slot.try_add(&c)?;
        }
    }
    Ok(out)
}

fn term_series(t: &RationalTerm, k: usize) -> Vec<Motive> {
    // Product of geometric series Σ_{j≥1} L^(-jν) T^(jN), truncated at T^k.
    let mut poly = vec![HalfLaurent::zero(); k + 1];
    poly[0] = HalfLaurent::one();
    for f in &t.factors {
        let mut next = vec![HalfLaurent::zero(); k + 1];
        for (deg, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut j = 1usize;
            while deg + j * f.n as usize <= k {
                let shift = -2 * (j as i64) * i64::from(f.nu);
                next[deg + j * f.n as usize] += &c.shift(shift);
                j += 1;
            }
        }
        poly = next;
    }
    let coeff = t.coefficient();
    poly.iter().map(|c| coeff.scale(c)).collect()
}

/// A resolution whose classes have been resolved against a registry.
#[derive(Clone, Debug)]
pub struct CompiledResolution {
    pub nearby_space: SpaceId,
    pub critical_locus: SpaceId,
    pub ambient_dim: u32,
    pub value: String,
    pub constant: bool,
    pub strata: Vec<CompiledStratum>,
}

#[derive(Clone, Debug)]
pub struct CompiledStratum {
    pub ids: BTreeSet<String>,
    pub class: Motive,
    pub factors: Vec<Factor>,
    pub all_boundary: bool,
    pub restrict: BTreeMap<String, Motive>,
}

impl CompiledStratum {
    pub fn label(&self) -> String {
        format!("{{{}}}", self.ids.iter().cloned().collect::<Vec<_>>().join(","))
    }
}

/// All violated invariants, in a fixed order; empty iff the data is usable.
pub fn validate_resolution(reg: &Registry, r: &ResolutionData) -> Vec<String> {
    match compile(reg, r) {
        Ok(_) => vec![],
        Err(MotiveError::ValidationFailed(d)) => d,
        Err(e) => vec![e.to_string()],
    }
}

pub fn compile(reg: &Registry, r: &ResolutionData) -> Result<CompiledResolution> {
    let mut diags = vec![];
    if let Some(s) = &r.schema {
        if s != RESOLUTION_SCHEMA {
            diags.push(format!("unsupported schema `{s}`"));
        }
    }
    if r.ambient_dim == 0 {
        diags.push("ambient_dim must be positive".into());
    }
    let nearby = reg.space_id(&r.nearby_space);
    let locus = reg.space_id(&r.critical_locus);
    if let Err(e) = &nearby {
        diags.push(e.to_string());
    }
    if let Err(e) = &locus {
        diags.push(e.to_string());
    }
    let mut divisors: BTreeMap<&str, &Divisor> = BTreeMap::new();
    for d in &r.divisors {
        if divisors.insert(&d.id, d).is_some() {
            diags.push(format!("duplicate divisor {}", d.id));
        }
        if d.n == 0 || d.nu == 0 {
            diags.push(format!("divisor {}: N and nu must be positive", d.id));
        }
        if d.boundary && (d.n != 1 || d.nu != 1) {
            diags.push(format!(
                "boundary divisor {} must have N = nu = 1 (has N = {}, nu = {})",
                d.id, d.n, d.nu
            ));
        }
    }
    let mut seen = BTreeSet::new();
    let mut strata = vec![];
    for s in &r.strata {
        let ids: BTreeSet<String> = s.divisors.iter().cloned().collect();
        let label = format!("{{{}}}", ids.iter().cloned().collect::<Vec<_>>().join(","));
        if ids.is_empty() {
            diags.push("stratum with no divisors".into());
            continue;
        }
        if ids.len() != s.divisors.len() {
            diags.push(format!("stratum {label} lists a divisor twice"));
        }
        if !seen.insert(ids.clone()) {
            diags.push(format!("duplicate stratum {label}"));
        }
        let mut ds = vec![];
        for id in &ids {
            match divisors.get(id.as_str()) {
                Some(d) => ds.push(*d),
                None => diags.push(format!("stratum {label} names unknown divisor {id}")),
            }
        }
        if ds.len() != ids.len() {
            continue;
        }
        let m = ds.iter().fold(0u32, |g, d| g.gcd(&d.n));
        let Ok(nearby) = &nearby else { continue };
        let base = match s.class.resolve(reg, nearby.as_str()) {
            Ok(c) => c,
            Err(e) => {
                diags.push(format!("stratum {label}: class: {e}"));
                continue;
            }
        };
        let class = match &s.cover {
            None if m == 1 => Ok(base),
            None => Err(format!("stratum {label} has m_I = {m} but no cover data")),
            Some(CoverSpec::Trivial { order }) if *order != m => Err(format!(
                "stratum {label}: cover order {order} differs from m_I = gcd(N_i) = {m}"
            )),
            Some(CoverSpec::Trivial { order }) => reg
                .symbol_motive(nearby, &format!("mu_{order}"))
                .and_then(|mu| base.odot(&mu))
                .map_err(|e| format!("stratum {label}: {e}")),
            Some(CoverSpec::Symbol { name }) => match reg.symbol(nearby, name) {
                Ok(Some(info)) if info.symbol.order != m => Err(format!(
                    "stratum {label}: cover symbol {name} has order {} but m_I = gcd(N_i) = {m}",
                    info.symbol.order
                )),
                Ok(_) => reg
                    .symbol_motive(nearby, name)
                    .and_then(|sym| base.odot(&sym))
                    .map_err(|e| format!("stratum {label}: {e}")),
                Err(e) => Err(format!("stratum {label}: {e}")),
            },
        };
        let class = match class {
            Ok(c) => c,
            Err(d) => {
                diags.push(d);
                continue;
            }
        };
        let mut restrict = BTreeMap::new();
        for (target, spec) in &s.restrict {
            match spec.resolve(reg, target) {
                Ok(m) => {
                    restrict.insert(target.clone(), m);
                }
                Err(e) => diags.push(format!("stratum {label}: restriction to {target}: {e}")),
            }
        }
        strata.push(CompiledStratum {
            all_boundary: ds.iter().all(|d| d.boundary),
            factors: ds.iter().map(|d| Factor { n: d.n, nu: d.nu }).collect(),
            ids,
            class,
            restrict,
        });
    }
    for p in &r.points {
        for e in &p.fibre {
            let ids: BTreeSet<String> = e.stratum.iter().cloned().collect();
            if !seen.contains(&ids) {
                diags.push(format!(
                    "point {}: fibre names undeclared stratum {:?}",
                    p.label, e.stratum
                ));
            }
        }
    }
    if !diags.is_empty() {
        return Err(MotiveError::ValidationFailed(diags));
    }
    Ok(CompiledResolution {
        nearby_space: nearby.expect("checked"),
        critical_locus: locus.expect("checked"),
        ambient_dim: r.ambient_dim,
        value: r.value.clone(),
        constant: r.constant,
        strata,
    })
}

pub fn zeta_function(reg: &Registry, r: &ResolutionData) -> Result<RationalMotive> {
    zeta_function_with(Exec::default(), reg, r)
}

pub fn zeta_function_with(exec: Exec, reg: &Registry, r: &ResolutionData) -> Result<RationalMotive> {
    let c = compile(reg, r)?;
    if c.constant {
        return Ok(RationalMotive::empty(c.nearby_space));
    }
    let terms = exec.map(&c.strata, |s| RationalTerm {
        label: s.label(),
        class: s.class.clone(),
        l_minus_one: s.ids.len() as u32 - 1,
        factors: s.factors.clone(),
    });
    Ok(RationalMotive {
        space: c.nearby_space,
        terms,
    })
}

/// `-lim_{T→∞} Z_f(T) = Σ (1-L)^(|I|-1) [Ẽ_I°, ρ̂_I]`, or zero for constant `f`.
pub fn nearby_cycle(reg: &Registry, r: &ResolutionData) -> Result<Motive> {
    Ok(zeta_function(reg, r)?.limit_at_infinity()?.neg())
}

fn one_minus_l_pow(k: usize) -> HalfLaurent {
    let base = HalfLaurent::one() - HalfLaurent::l_pow(1);
    (0..k).fold(HalfLaurent::one(), |acc, _| &acc * &base)
}

fn restricted(c: &CompiledResolution, s: &CompiledStratum, target: &SpaceId) -> Result<Motive> {
    if let Some(m) = s.restrict.get(target.as_str()) {
        return Ok(m.clone());
    }
    if target == &c.nearby_space {
        return Ok(s.class.clone());
    }
    if s.all_boundary && s.ids.len() == 1 {
        // Boundary strata lie over U_c ∖ X_c and cancel against [U_c].
        return Ok(Motive::zero(target.clone()));
    }
    Err(MotiveError::MissingRestriction {
        what: format!("stratum {}", s.label()),
        target: target.to_string(),
    })
}

/// `L^(-dim U/2) ⊙ ([U_c] - MF_{U,f-c})|_{X_c}` over the critical locus.
pub fn vanishing_cycle(reg: &Registry, r: &ResolutionData, value: &str) -> Result<Motive> {
    let c = compile(reg, r)?;
    if value != c.value {
        return Err(MotiveError::MissingRestriction {
            what: format!("resolution data for critical value {value}"),
            target: c.critical_locus.to_string(),
        });
    }
    let x = c.critical_locus.clone();
    let mut nearby = Motive::zero(x.clone());
    if !c.constant {
        for s in &c.strata {
            let term = restricted(&c, s, &x)?.scale(&one_minus_l_pow(s.ids.len() - 1));
            nearby = nearby.try_add(&term)?;
        }
    }
    Ok(Motive::one(x).try_sub(&nearby)?.shift(-i64::from(c.ambient_dim)))
}

/// `L^(-dim U/2) ⊙ (1 - MF_{U,f}(x))` over the point.
pub fn milnor_fibre_at(reg: &Registry, r: &ResolutionData, label: &str) -> Result<Motive> {
    let c = compile(reg, r)?;
    let pt = SpaceId::point();
    let point = r
        .points
        .iter()
        .find(|p| p.label == label)
        .ok_or_else(|| MotiveError::MissingRestriction {
            what: "strata classes".into(),
            target: format!("point {label}"),
        })?;
    let mut fibre = Motive::zero(pt.clone());
    if !c.constant {
        for e in &point.fibre {
            let ids: BTreeSet<String> = e.stratum.iter().cloned().collect();
            let m = e.class.resolve(reg, "pt")?;
            fibre = fibre.try_add(&m.scale(&one_minus_l_pow(ids.len() - 1)))?;
        }
    }
    Ok(Motive::one(pt).try_sub(&fibre)?.shift(-i64::from(c.ambient_dim)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_pow(a: u32) -> (Registry, ResolutionData) {
        let reg = Registry::new();
        let r = ResolutionData {
            schema: None,
            ambient_dim: 1,
            nearby_space: "pt".into(),
            critical_locus: "pt".into(),
            value: "0".into(),
            constant: false,
            divisors: vec![Divisor {
                id: "E".into(),
                n: a,
                nu: 1,
                boundary: false,
            }],
            strata: vec![Stratum {
                divisors: vec!["E".into()],
                class: MotiveSpec::Text("1".into()),
                cover: Some(CoverSpec::Trivial { order: a }),
                restrict: BTreeMap::new(),
            }],
            points: vec![],
        };
        (reg, r)
    }

    #[test]
    fn z2_zeta_renders() {
        let (reg, r) = z_pow(2);
        let z = zeta_function(&reg, &r).unwrap();
        assert_eq!(z.render(&reg), "[mu_2] * (L^-1 T^2)/(1 - L^-1 T^2)");
    }

    #[test]
    fn z2_series_by_geometric_sum() {
        let (reg, r) = z_pow(2);
        let s = expand_series(&zeta_function(&reg, &r).unwrap(), 4).unwrap();
        let mu2 = reg.symbol_motive(&SpaceId::point(), "mu_2").unwrap();
        let expect = [
            Motive::zero(SpaceId::point()),
            Motive::zero(SpaceId::point()),
            mu2.shift(-2),
            Motive::zero(SpaceId::point()),
            mu2.shift(-4),
        ];
        assert_eq!(s, expect);
    }

    #[test]
    fn order_zero_expansion_is_single_zero() {
        let (reg, r) = z_pow(3);
        let s = expand_series(&zeta_function(&reg, &r).unwrap(), 0).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].is_zero());
    }

    #[test]
    fn wrong_cover_order_is_diagnosed() {
        let (reg, mut r) = z_pow(2);
        r.strata[0].cover = Some(CoverSpec::Trivial { order: 3 });
        let d = validate_resolution(&reg, &r);
        assert_eq!(d.len(), 1);
        assert!(d[0].contains("{E}"), "{d:?}");
    }

    #[test]
    fn boundary_divisor_must_be_reduced() {
        let (reg, mut r) = z_pow(2);
        r.divisors[0].boundary = true;
        let d = validate_resolution(&reg, &r);
        assert!(d.iter().any(|s| s.contains("boundary")), "{d:?}");
    }

    #[test]
    fn constant_function_has_zero_nearby_cycle() {
        let (reg, mut r) = z_pow(2);
        r.constant = true;
        assert!(nearby_cycle(&reg, &r).unwrap().is_zero());
    }

    #[test]
    fn other_critical_values_need_their_own_data() {
        let (reg, r) = z_pow(2);
        assert!(matches!(
            vanishing_cycle(&reg, &r, "1"),
            Err(MotiveError::MissingRestriction { .. })
        ));
    }
}
