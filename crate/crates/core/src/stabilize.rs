//! Thom–Sebastiani, quadratic forms and stabilization along chart embeddings.
//!
//! A nondegenerate quadratic form `q` on a rank `r` bundle `E → U` has
//! `MF_{E,q} = L^(-dim U/2) ⊙ Υ(P)` where `P` is the class of `(Λ^r E, det q)`.
//! Consequently adding `q` to a function twists its vanishing cycle by `Υ(P)`,
//! and an embedding `Φ` of critical charts twists by `Υ(P_Φ)`.

use serde::{Deserialize, Serialize};

use crate::error::{MotiveError, Result};
use crate::motive::{boxdot, pullback, Motive};
use crate::registry::{Morphism, Registry};
use crate::zbundle::{bundle_tensor, BundleClass};

/// `MF_{U×V, f⊞g} = MF_{U,f} ⊠ MF_{V,g}`.
pub fn thom_sebastiani(reg: &Registry, a: &Motive, b: &Motive) -> Result<Motive> {
    boxdot(reg, a, b)
}

/// Left fold of [`thom_sebastiani`] over several factors.
pub fn thom_sebastiani_all(reg: &Registry, factors: &[Motive]) -> Result<Motive> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| MotiveError::InvalidDeclaration("Thom–Sebastiani of no factors".into()))?;
    rest.iter()
        .try_fold(first.clone(), |acc, m| thom_sebastiani(reg, &acc, m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticBundleDatum {
    pub rank: u32,
    /// Class of `(Λ^r E, det q)` on the base.
    pub det: BundleClass,
}

fn base_dim(reg: &Registry, d: &BundleClass) -> Result<u32> {
    reg.space(d.space.as_str())?
        .dim
        .ok_or_else(|| MotiveError::InvalidDeclaration(format!("space {} has no declared dimension", d.space)))
}

/// `L^(-dim U/2) ⊙ Υ(det)`; independent of the rank.
pub fn quadratic_form_motive(reg: &Registry, d: &QuadraticBundleDatum) -> Result<Motive> {
    if d.rank == 0 {
        return Err(MotiveError::InvalidDeclaration("quadratic form of rank 0".into()));
    }
    let dim = base_dim(reg, &d.det)?;
    Ok(Motive::upsilon(d.det.space.clone(), d.det.bits).shift(-i64::from(dim)))
}

/// `MF_{E, f∘π + q} = mf ⊙ Υ(det|_X)`. When `mf` lives on a subspace `X` of the
/// base, `restrict` must be the registered map `X → U`.
pub fn twist_by_quadratic(
    reg: &Registry,
    mf: &Motive,
    d: &QuadraticBundleDatum,
    restrict: Option<&Morphism>,
) -> Result<Motive> {
    let det = if mf.space() == &d.det.space {
        d.det.clone()
    } else {
        let f = restrict.ok_or_else(|| MotiveError::MissingTransport {
            morphism: format!("{} → {}", mf.space(), d.det.space),
            item: "determinant class".into(),
        })?;
        if f.source != *mf.space() {
            return Err(MotiveError::SpaceMismatch {
                left: f.source.to_string(),
                right: mf.space().to_string(),
            });
        }
        f.pull_class(reg, &d.det)?
    };
    // Same as mf ⊙ (L^(dim U/2) ⊙ MF_{E,q}) restricted to X.
    mf.odot(&Motive::upsilon(det.space, det.bits))
}

/// An embedding of critical charts `(U, f) → (V, g)` along with `P_Φ` on `Crit(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingDatum {
    pub source: String,
    pub target: String,
    pub dim_u: u32,
    pub dim_v: u32,
    /// Generators of `P_Φ` on the critical locus.
    pub p_phi: Vec<String>,
    /// Space of the critical locus carrying `P_Φ`.
    pub locus: String,
}

impl EmbeddingDatum {
    pub fn class(&self, reg: &Registry) -> Result<BundleClass> {
        if self.dim_v < self.dim_u {
            return Err(MotiveError::InvalidDeclaration(format!(
                "embedding {} → {} lowers dimension",
                self.source, self.target
            )));
        }
        reg.bundle_space(&self.locus)?.class_of(&self.p_phi)
    }
}

/// `Φ|_X^*(MF_{V,g}) = MF_{U,f} ⊙ Υ(P_Φ)`.
pub fn stabilize_pullback(mf: &Motive, p_phi: &BundleClass) -> Result<Motive> {
    if mf.space() != &p_phi.space {
        return Err(MotiveError::SpaceMismatch {
            left: mf.space().to_string(),
            right: p_phi.space.to_string(),
        });
    }
    mf.odot(&Motive::upsilon(p_phi.space.clone(), p_phi.bits))
}

/// `P_{Ψ∘Φ} = P_Φ ⊗ Φ|_X^* P_Ψ`, where `phi_on_loci` is the map of critical loci.
pub fn compose_p(
    reg: &Registry,
    p_phi: &BundleClass,
    p_psi: &BundleClass,
    phi_on_loci: Option<&Morphism>,
) -> Result<BundleClass> {
    let pulled = match phi_on_loci {
        Some(f) => f.pull_class(reg, p_psi)?,
        None => p_psi.clone(),
    };
    bundle_tensor(p_phi, &pulled)
}

/// Pulls a stabilized motive back along a registered restriction before twisting.
pub fn stabilize_restricted(reg: &Registry, mf: &Motive, p_phi: &BundleClass, restrict: &Morphism) -> Result<Motive> {
    let mf = pullback(reg, restrict, mf)?;
    let p = restrict.pull_class(reg, p_phi)?;
    stabilize_pullback(&mf, &p)
}
