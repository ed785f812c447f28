//! Brute-force arc classes of monomial functions, independent of any resolution.
//!
//! For `f = z^a · Π u_j^(b_j)` with `z` affine and the `u_j` invertible, an arc
//! modulo `t^(n+1)` with `ord f = n` and angular component 1 has `ord z = n/a`
//! (so `a | n`), leading coefficient `c` subject to `c^a Π u_j(0)^(b_j) = 1`, and
//! free higher coefficients: `n - n/a` for `z` and `n` for each `u_j`.

use serde::{Deserialize, Serialize};

use crate::error::{MotiveError, Result};
use crate::motive::{MonSymbol, Motive};
use crate::par::Exec;
use crate::registry::{Registry, SpaceId};
use crate::zbundle::BundleBits;
use crate::zeta::{expand_series_with, RationalMotive};

pub const MONOMIAL_SCHEMA: &str = "motivic-monomial/v1";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialFunction {
    #[serde(default)]
    pub schema: Option<String>,
    /// Space of the zero locus (the unit coordinates' torus), `pt` by default.
    #[serde(default = "point")]
    pub space: String,
    #[serde(default)]
    pub affine: Vec<Variable>,
    #[serde(default)]
    pub units: Vec<UnitVariable>,
    /// Declared symbol for the cover `{c^a = Π u^(-b)}` when it is not a trivial
    /// `μ_a`-torsor and not describable by bundle generators.
    #[serde(default)]
    pub cover_symbol: Option<String>,
}

fn point() -> String {
    "pt".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Variable {
    pub name: String,
    pub exponent: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitVariable {
    pub name: String,
    pub exponent: u32,
    /// Bundle generator on `space` for the square-root cover of this unit.
    #[serde(default)]
    pub generator: Option<String>,
}

impl MonomialFunction {
    /// `z^a` on the affine line.
    pub fn power(a: u32) -> Self {
        Self {
            schema: None,
            space: point(),
            affine: vec![Variable {
                name: "z".into(),
                exponent: a,
            }],
            units: vec![],
            cover_symbol: None,
        }
    }

    pub fn dim(&self) -> u32 {
        (self.affine.len() + self.units.len()) as u32
    }

    fn shape(&self) -> Result<u32> {
        if let Some(s) = &self.schema {
            if s != MONOMIAL_SCHEMA {
                return Err(MotiveError::InvalidDeclaration(format!("unsupported schema `{s}`")));
            }
        }
        if self.affine.iter().any(|v| v.exponent == 0) || self.units.iter().any(|u| u.exponent == 0) {
            return Err(MotiveError::UnsupportedShape("exponents must be positive".into()));
        }
        match self.affine.as_slice() {
            [v] => Ok(v.exponent),
            [] => Ok(0),
            _ => Err(MotiveError::UnsupportedShape(format!(
                "{} affine variables; only one is supported",
                self.affine.len()
            ))),
        }
    }

    /// The `μ_a`-cover cut out by the leading-coefficient equation.
    fn cover(&self, reg: &Registry, a: u32) -> Result<Motive> {
        let space = reg.space_id(&self.space)?;
        if a == 1 {
            return Ok(Motive::one(space));
        }
        let twisted = self.units.iter().any(|u| u.exponent % a != 0);
        if !twisted {
            return reg.symbol_motive(&space, &format!("mu_{a}"));
        }
        if let Some(name) = &self.cover_symbol {
            return reg.symbol_motive(&space, name);
        }
        if a == 2 {
            let bs = reg.bundle_space(space.as_str())?;
            let mut bits = BundleBits::ZERO;
            for u in self.units.iter().filter(|u| u.exponent % 2 == 1) {
                let g = u.generator.as_ref().ok_or_else(|| {
                    MotiveError::UnsupportedShape(format!("unit {} has odd exponent but no bundle generator", u.name))
                })?;
                bits = bits.tensor(bs.class_of(&[g])?.bits);
            }
            return Ok(Motive::cover(space, bits));
        }
        Err(MotiveError::UnsupportedShape(format!(
            "nontrivial μ_{a}-cover needs a declared cover_symbol"
        )))
    }
}

/// `[𝔘_{n,1}, ρ̂]` over the space of unit coordinates.
pub fn arc_class(reg: &Registry, f: &MonomialFunction, n: u32) -> Result<Motive> {
    let a = f.shape()?;
    let space = reg.space_id(&f.space)?;
    if n == 0 {
        return Err(MotiveError::InvalidDeclaration("arc order must be positive".into()));
    }
    if a == 0 || !n.is_multiple_of(a) {
        return Ok(Motive::zero(space));
    }
    let free = i64::from(n - n / a) + i64::from(n) * f.units.len() as i64;
    Ok(f.cover(reg, a)?.shift(2 * free))
}

/// Coefficients of `T^0..T^k` of `Σ_n [𝔘_{n,1}] L^(-n dim U) T^n`.
pub fn zeta_truncated(reg: &Registry, f: &MonomialFunction, k: usize) -> Result<Vec<Motive>> {
    zeta_truncated_with(Exec::default(), reg, f, k)
}

pub fn zeta_truncated_with(exec: Exec, reg: &Registry, f: &MonomialFunction, k: usize) -> Result<Vec<Motive>> {
    f.shape()?;
    let dim = i64::from(f.dim());
    let mut out = vec![Motive::zero(reg.space_id(&f.space)?)];
    let rest = exec.map_range(k, |i| {
        let n = i as u32 + 1;
        arc_class(reg, f, n).map(|c| c.shift(-2 * i64::from(n) * dim))
    });
    for c in rest {
        out.push(c?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub n: usize,
    pub oracle: Motive,
    pub resolution: Motive,
}

impl CheckRow {
    pub fn pass(&self) -> bool {
        self.oracle == self.resolution
    }
}

/// Coefficientwise comparison for `n = 1..k`.
pub fn compare(
    exec: Exec,
    reg: &Registry,
    f: &MonomialFunction,
    z: &RationalMotive,
    k: usize,
) -> Result<Vec<CheckRow>> {
    let oracle = zeta_truncated_with(exec, reg, f, k)?;
    let series = expand_series_with(exec, z, k)?;
    if oracle[0].space() != series[0].space() {
        return Err(MotiveError::SpaceMismatch {
            left: oracle[0].space().to_string(),
            right: series[0].space().to_string(),
        });
    }
    Ok(oracle
        .into_iter()
        .zip(series)
        .enumerate()
        .skip(1)
        .map(|(n, (oracle, resolution))| CheckRow { n, oracle, resolution })
        .collect())
}

/// The unit-free cover symbol `μ_a` on `space`; exposed for callers building expectations.
pub fn builtin_cover(space: SpaceId, a: u32) -> Motive {
    match a {
        1 => Motive::one(space),
        2 => Motive::cover(space, BundleBits::ZERO),
        a => Motive::symbol(MonSymbol::builtin(space, a)),
    }
}
