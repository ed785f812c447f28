//! Versioned job files: a registry, one payload and command parameters.

use serde::{Deserialize, Serialize};

use crate::arc::MonomialFunction;
use crate::dcrit::Atlas;
use crate::error::{MotiveError, Result};
use crate::localize::FixedPointData;
use crate::motive::Motive;
use crate::registry::{MotiveSpec, Registry, RegistryFile};
use crate::zeta::{vanishing_cycle, ResolutionData};

pub const JOB_SCHEMA: &str = "motivic-job/v1";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub schema: String,
    #[serde(default)]
    pub registry: RegistryFile,
    pub payload: Payload,
    #[serde(default)]
    pub params: Params,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Resolution(ResolutionData),
    Monomial(MonomialFunction),
    Atlas(Atlas),
    FixedPoints(FixedPointData),
    ThomSebastiani(TsFactors),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TsFactors {
    pub factors: Vec<TsFactor>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum TsFactor {
    Resolution { resolution: Box<ResolutionData> },
    Motive { space: String, motive: MotiveSpec },
}

impl TsFactor {
    pub fn motive(&self, reg: &Registry) -> Result<Motive> {
        match self {
            TsFactor::Resolution { resolution } => vanishing_cycle(reg, resolution, &resolution.value.clone()),
            TsFactor::Motive { space, motive } => motive.resolve(reg, space),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default)]
    pub series_order: Option<usize>,
    #[serde(default)]
    pub critical_value: Option<String>,
    /// Point label for a Milnor fibre.
    #[serde(default)]
    pub point: Option<String>,
    /// Monomial to run the arc oracle on, against a resolution payload.
    #[serde(default)]
    pub monomial: Option<MonomialFunction>,
    /// Resolution to compare a monomial payload against.
    #[serde(default)]
    pub resolution: Option<ResolutionData>,
}

impl JobFile {
    pub fn parse(text: &str) -> Result<Self> {
        let job: JobFile = serde_json::from_str(text).map_err(|e| MotiveError::Parse {
            text: "job file".into(),
            message: e.to_string(),
        })?;
        if job.schema != JOB_SCHEMA {
            return Err(MotiveError::InvalidDeclaration(format!(
                "unsupported job schema `{}`",
                job.schema
            )));
        }
        Ok(job)
    }

    pub fn registry(&self) -> Result<Registry> {
        Registry::from_file(&self.registry)
    }
}
