//! Torus localization: `π_*(MF_{X,s}) = Σ_i L^(-ind_i/2) ⊙ π_*(MF_{X_i, s_i})`
//! over the fixed components of a good, circle-compact `G_m`-action.

use serde::{Deserialize, Serialize};

use crate::dcrit::{glue, pushforward_to_point, Atlas};
use crate::error::{MotiveError, Result};
use crate::motive::Motive;
use crate::par::Exec;
use crate::registry::{MotiveSpec, Registry, SpaceId};
use crate::text;

pub const FIXED_POINTS_SCHEMA: &str = "motivic-fixed-points/v1";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedPointData {
    #[serde(default)]
    pub schema: Option<String>,
    pub components: Vec<FixedComponent>,
    /// Independently computed `π_*(MF_{X,s})`, if available.
    #[serde(default)]
    pub direct: Option<DirectValue>,
    /// Asserted hypotheses on the action; recorded, not checked.
    #[serde(default)]
    pub good: bool,
    #[serde(default)]
    pub circle_compact: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedComponent {
    pub id: String,
    /// Nonzero weights on `T_x X` at a representative point.
    #[serde(default)]
    pub weights: Vec<i64>,
    /// `π_*` of the component's own vanishing cycle; an isolated point when absent.
    #[serde(default)]
    pub motive: Option<MotiveSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum DirectValue {
    Atlas { atlas: Box<Atlas> },
    Motive(MotiveSpec),
}

impl FixedPointData {
    pub fn check_schema(&self) -> Result<()> {
        match &self.schema {
            Some(s) if s != FIXED_POINTS_SCHEMA => {
                Err(MotiveError::InvalidDeclaration(format!("unsupported schema `{s}`")))
            }
            _ => Ok(()),
        }
    }
}

/// `dim (T_x X)_+ - dim (T_x X)_-`.
pub fn virtual_index(weights: &[i64]) -> Result<i64> {
    let mut ind = 0;
    for (i, w) in weights.iter().enumerate() {
        match w.signum() {
            0 => return Err(MotiveError::ZeroWeight(i)),
            s => ind += s,
        }
    }
    Ok(ind)
}

fn component_motive(reg: &Registry, c: &FixedComponent) -> Result<Motive> {
    match &c.motive {
        Some(m) => m.resolve(reg, "pt"),
        None => Ok(Motive::one(SpaceId::point())),
    }
}

pub fn localize_sum(reg: &Registry, components: &[FixedComponent]) -> Result<Motive> {
    localize_sum_with(Exec::default(), reg, components)
}

pub fn localize_sum_with(exec: Exec, reg: &Registry, components: &[FixedComponent]) -> Result<Motive> {
    let terms = exec.try_map(components, |c| {
        let ind = virtual_index(&c.weights)?;
        Ok(component_motive(reg, c)?.shift(-ind))
    })?;
    terms
        .iter()
        .try_fold(Motive::zero(SpaceId::point()), |acc, t| acc.try_add(t))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationReport {
    pub sum: Motive,
    pub direct: Motive,
    pub pass: bool,
    /// `sum - direct` when the check fails.
    pub difference: Option<Motive>,
}

impl LocalizationReport {
    pub fn render(&self, reg: &Registry) -> String {
        if self.pass {
            return format!("sum = {}; check: PASS", text::render(reg, &self.sum));
        }
        format!(
            "sum = {}; check: FAIL\n  localized: {}\n  direct:    {}\n  difference: {}",
            text::render(reg, &self.sum),
            text::render(reg, &self.sum),
            text::render(reg, &self.direct),
            self.difference
                .as_ref()
                .map(|d| text::render(reg, d))
                .unwrap_or_default()
        )
    }
}

pub fn localization_check(
    reg: &Registry,
    components: &[FixedComponent],
    direct: &Motive,
) -> Result<LocalizationReport> {
    let sum = localize_sum(reg, components)?;
    let pass = &sum == direct;
    let difference = if pass { None } else { Some(sum.try_sub(direct)?) };
    Ok(LocalizationReport {
        sum,
        direct: direct.clone(),
        pass,
        difference,
    })
}

pub fn direct_value(reg: &Registry, d: &DirectValue) -> Result<Motive> {
    match d {
        DirectValue::Motive(m) => m.resolve(reg, "pt"),
        DirectValue::Atlas { atlas } => {
            let g = glue(reg, atlas)?;
            pushforward_to_point(reg, atlas, &g)
        }
    }
}
