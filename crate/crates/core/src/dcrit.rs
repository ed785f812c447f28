//! Oriented d-critical atlases and descent-checked gluing.
//!
//! Each chart `(R, U, f, i)` contributes `MF_{U,f}|_R ⊙ Υ(Q_chart)` on its region.
//! On an overlap `R′` where charts `A` and `B` embed into a shared chart `T` via
//! `Φ` and `Ψ`, the orientation data must satisfy
//! `Q_T = P_Φ ⊗ Q_A|_R′ = P_Ψ ⊗ Q_B|_R′`, and the restricted values must agree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{MotiveError, Result};
use crate::motive::{pullback, pushforward, Motive};
use crate::par::Exec;
use crate::registry::{Morphism, MotiveSpec, Registry, SpaceId};
use crate::stabilize::stabilize_pullback;
use crate::text;
use crate::zbundle::{BundleBits, BundleClass};
use crate::zeta::{vanishing_cycle, ResolutionData};

pub const ATLAS_SCHEMA: &str = "motivic-atlas/v1";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Atlas {
    #[serde(default)]
    pub schema: Option<String>,
    /// The d-critical locus `X`.
    pub space: String,
    /// Whether an orientation `K^(1/2)` has been chosen.
    #[serde(default)]
    pub oriented: bool,
    pub charts: Vec<Chart>,
    #[serde(default)]
    pub overlaps: Vec<Overlap>,
    /// Disjoint pieces covering `X`, for pushing forward to the point.
    #[serde(default)]
    pub scissor: Vec<ScissorPiece>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Chart {
    pub id: String,
    pub region: String,
    pub dim_u: u32,
    pub mf: ChartMotive,
    /// Generators of `Q_{R,U,f,i}` on the region.
    #[serde(default)]
    pub q: Vec<String>,
}

/// A chart's vanishing cycle, given directly or computed from resolution data.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum ChartMotive {
    Resolution { resolution: Box<ResolutionData> },
    Inline(MotiveSpec),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overlap {
    pub name: String,
    pub charts: [String; 2],
    pub region: String,
    /// Restriction morphisms from the overlap region to each chart's region;
    /// `null` when the regions coincide.
    pub restrict: [Option<String>; 2],
    pub shared: SharedChart,
    /// `P_Φ` for the first chart's embedding, on the overlap region.
    #[serde(default)]
    pub p_phi: Vec<String>,
    /// `P_Ψ` for the second chart's embedding, on the overlap region.
    #[serde(default)]
    pub p_psi: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SharedChart {
    pub id: String,
    /// `Q_T` restricted to the overlap region.
    #[serde(default)]
    pub q: Vec<String>,
    /// `MF_{W,h}` restricted to the overlap region, if known.
    #[serde(default)]
    pub mf: Option<MotiveSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScissorPiece {
    pub region: String,
    /// Inclusion of the piece into the region; `null` when the piece is the region.
    #[serde(default)]
    pub restrict: Option<String>,
    pub to_point: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapRecord {
    pub name: String,
    pub charts: [String; 2],
    pub region: SpaceId,
    pub value: Motive,
}

/// The glued family of per-region values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalMotive {
    pub space: SpaceId,
    pub values: BTreeMap<String, Motive>,
    /// Charts that produced each region's value.
    pub provenance: BTreeMap<String, Vec<String>>,
    /// Checked overlaps, sorted by name.
    pub ledger: Vec<OverlapRecord>,
}

struct CompiledChart {
    id: String,
    region: SpaceId,
    mf: Motive,
    q: BundleClass,
}

impl CompiledChart {
    fn value(&self) -> Result<Motive> {
        self.mf.odot(&Motive::upsilon(self.region.clone(), self.q.bits))
    }
}

struct CompiledOverlap<'r> {
    name: String,
    shared: String,
    charts: [usize; 2],
    region: SpaceId,
    restrict: [Option<&'r Morphism>; 2],
    q_t: BundleClass,
    shared_mf: Option<Motive>,
    p: [BundleClass; 2],
}

fn chart_motive(reg: &Registry, c: &Chart) -> Result<Motive> {
    let m = match &c.mf {
        ChartMotive::Inline(spec) => spec.resolve(reg, &c.region)?,
        ChartMotive::Resolution { resolution } => {
            if resolution.ambient_dim != c.dim_u {
                return Err(MotiveError::InvalidDeclaration(format!(
                    "chart {}: dim_u = {} but its resolution has ambient_dim = {}",
                    c.id, c.dim_u, resolution.ambient_dim
                )));
            }
            let v = resolution.value.clone();
            vanishing_cycle(reg, resolution, &v)?
        }
    };
    if m.space().as_str() != c.region {
        return Err(MotiveError::SpaceMismatch {
            left: m.space().to_string(),
            right: c.region.clone(),
        });
    }
    Ok(m)
}

struct Compiled<'r> {
    charts: Vec<CompiledChart>,
    overlaps: Vec<CompiledOverlap<'r>>,
}

fn compile<'r>(reg: &'r Registry, atlas: &Atlas) -> Result<Compiled<'r>> {
    if let Some(s) = &atlas.schema {
        if s != ATLAS_SCHEMA {
            return Err(MotiveError::InvalidDeclaration(format!(
                "unsupported atlas schema `{s}`"
            )));
        }
    }
    reg.space(&atlas.space)?;
    let mut charts = vec![];
    let mut index = BTreeMap::new();
    for c in &atlas.charts {
        if index.insert(c.id.clone(), charts.len()).is_some() {
            return Err(MotiveError::Duplicate {
                kind: "chart",
                name: c.id.clone(),
            });
        }
        charts.push(CompiledChart {
            id: c.id.clone(),
            region: reg.space_id(&c.region)?,
            mf: chart_motive(reg, c)?,
            q: reg.class(&c.region, &c.q.iter().map(String::as_str).collect::<Vec<_>>())?,
        });
    }
    let mut overlaps = vec![];
    let mut names = std::collections::BTreeSet::new();
    for o in &atlas.overlaps {
        if !names.insert(o.name.clone()) {
            return Err(MotiveError::Duplicate {
                kind: "overlap",
                name: o.name.clone(),
            });
        }
        let region = reg.space_id(&o.region)?;
        let mut idx = [0; 2];
        let mut restrict = [None, None];
        for k in 0..2 {
            idx[k] = *index
                .get(&o.charts[k])
                .ok_or_else(|| MotiveError::unknown("chart", o.charts[k].clone()))?;
            let chart_region = &charts[idx[k]].region;
            restrict[k] = match &o.restrict[k] {
                Some(name) => {
                    let m = reg.morphism(name)?;
                    if m.source != region || m.target != *chart_region {
                        return Err(MotiveError::InvalidDeclaration(format!(
                            "overlap {}: morphism {name} is not {} → {}",
                            o.name, region, chart_region
                        )));
                    }
                    Some(m)
                }
                None if chart_region == &region => None,
                None => {
                    return Err(MotiveError::MissingRestriction {
                        what: format!("chart {}", o.charts[k]),
                        target: o.region.clone(),
                    })
                }
            };
        }
        let class = |gens: &[String]| reg.class(&o.region, &gens.iter().map(String::as_str).collect::<Vec<_>>());
        overlaps.push(CompiledOverlap {
            name: o.name.clone(),
            shared: o.shared.id.clone(),
            charts: idx,
            region,
            restrict,
            q_t: class(&o.shared.q)?,
            shared_mf: o.shared.mf.as_ref().map(|m| m.resolve(reg, &o.region)).transpose()?,
            p: [class(&o.p_phi)?, class(&o.p_psi)?],
        });
    }
    overlaps.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(Compiled { charts, overlaps })
}

fn restrict_bits(reg: &Registry, f: Option<&Morphism>, bits: BundleBits) -> Result<BundleBits> {
    match f {
        Some(f) => f.pull_bits(reg, bits),
        None => Ok(bits),
    }
}

fn restrict_motive(reg: &Registry, f: Option<&Morphism>, m: &Motive) -> Result<Motive> {
    match f {
        Some(f) => pullback(reg, f, m),
        None => Ok(m.clone()),
    }
}

fn names(reg: &Registry, space: &SpaceId, bits: BundleBits) -> String {
    let n = reg
        .space(space.as_str())
        .map(|s| s.bundles.names_of(bits).join("+"))
        .unwrap_or_default();
    if n.is_empty() {
        "0".into()
    } else {
        n
    }
}

/// `(overlap, message)` for every violated identity.
fn orientation_diagnostics(reg: &Registry, c: &Compiled<'_>) -> Vec<(String, String)> {
    let mut out = vec![];
    for o in &c.overlaps {
        for k in 0..2 {
            let chart = &c.charts[o.charts[k]];
            let q = match restrict_bits(reg, o.restrict[k], chart.q.bits) {
                Ok(q) => q,
                Err(e) => {
                    out.push((o.name.clone(), e.to_string()));
                    continue;
                }
            };
            let rhs = o.p[k].bits.tensor(q);
            if rhs != o.q_t.bits {
                let p = if k == 0 { "P_Phi" } else { "P_Psi" };
                out.push((
                    o.name.clone(),
                    format!(
                        "Q_{} = {} but {p} + Q_{}|{} = {}",
                        o.shared,
                        names(reg, &o.region, o.q_t.bits),
                        chart.id,
                        o.region,
                        names(reg, &o.region, rhs)
                    ),
                ));
            }
        }
    }
    out
}

/// Checks the orientation cocycle identities on every overlap.
pub fn check_orientation(reg: &Registry, atlas: &Atlas) -> Vec<String> {
    match compile(reg, atlas) {
        Ok(c) => orientation_diagnostics(reg, &c)
            .into_iter()
            .map(|(o, m)| format!("overlap {o}: {m}"))
            .collect(),
        Err(e) => vec![e.to_string()],
    }
}

pub fn glue(reg: &Registry, atlas: &Atlas) -> Result<GlobalMotive> {
    glue_with(Exec::default(), reg, atlas)
}

pub fn glue_with(exec: Exec, reg: &Registry, atlas: &Atlas) -> Result<GlobalMotive> {
    if !atlas.oriented {
        return Err(MotiveError::OrientationMissing);
    }
    let c = compile(reg, atlas)?;
    let values = c.charts.iter().map(CompiledChart::value).collect::<Result<Vec<_>>>()?;
    let render = |m: &Motive| text::render(reg, m);
    let failure = |o: &str, check: &str, l: &Motive, r: &Motive| MotiveError::DescentFailure {
        overlap: o.to_string(),
        check: check.to_string(),
        left: render(l),
        right: render(r),
    };

    let records = exec.try_map(&c.overlaps, |o| -> Result<OverlapRecord> {
        let [ia, ib] = o.charts;
        let (a, b) = (&c.charts[ia], &c.charts[ib]);
        let va = restrict_motive(reg, o.restrict[0], &values[ia])?;
        let vb = restrict_motive(reg, o.restrict[1], &values[ib])?;
        let q_t = Motive::upsilon(o.region.clone(), o.q_t.bits);
        let via_a = stabilize_pullback(&restrict_motive(reg, o.restrict[0], &a.mf)?, &o.p[0])?;
        let via_b = stabilize_pullback(&restrict_motive(reg, o.restrict[1], &b.mf)?, &o.p[1])?;
        let through_a = via_a.odot(&q_t)?;
        if va != through_a {
            return Err(failure(
                &o.name,
                &format!("{} against shared chart", a.id),
                &va,
                &through_a,
            ));
        }
        let through_b = via_b.odot(&q_t)?;
        if vb != through_b {
            return Err(failure(
                &o.name,
                &format!("{} against shared chart", b.id),
                &vb,
                &through_b,
            ));
        }
        if va != vb {
            return Err(failure(&o.name, &format!("{} vs {}", a.id, b.id), &va, &vb));
        }
        if let Some(mf) = &o.shared_mf {
            for via in [&via_a, &via_b] {
                if mf != via {
                    return Err(failure(&o.name, "shared chart motive", mf, via));
                }
            }
        }
        let mut charts = [a.id.clone(), b.id.clone()];
        charts.sort();
        Ok(OverlapRecord {
            name: o.name.clone(),
            charts,
            region: o.region.clone(),
            value: va,
        })
    })?;

    // Normal forms can agree even when the bundle identities fail; the F2 check is authoritative.
    if let Some((overlap, message)) = orientation_diagnostics(reg, &c).into_iter().next() {
        return Err(MotiveError::DescentFailure {
            overlap,
            check: "orientation cocycle".into(),
            left: message,
            right: "identity violated".into(),
        });
    }

    let mut out = GlobalMotive {
        space: reg.space_id(&atlas.space)?,
        values: BTreeMap::new(),
        provenance: BTreeMap::new(),
        ledger: records,
    };
    let mut order: Vec<usize> = (0..c.charts.len()).collect();
    order.sort_by(|&i, &j| c.charts[i].id.cmp(&c.charts[j].id));
    for i in order {
        let ch = &c.charts[i];
        let key = ch.region.to_string();
        match out.values.get(&key) {
            Some(prev) if prev != &values[i] => {
                return Err(failure(
                    &key,
                    &format!("charts {} on the same region", ch.id),
                    prev,
                    &values[i],
                ));
            }
            Some(_) => {}
            None => {
                out.values.insert(key.clone(), values[i].clone());
            }
        }
        out.provenance.entry(key).or_default().push(ch.id.clone());
    }
    Ok(out)
}

/// `π_*` to the point, summing over the atlas's scissor decomposition.
pub fn pushforward_to_point(reg: &Registry, atlas: &Atlas, g: &GlobalMotive) -> Result<Motive> {
    if atlas.scissor.is_empty() {
        return Err(MotiveError::MissingScissorTable(atlas.space.clone()));
    }
    let mut total = Motive::zero(SpaceId::point());
    for piece in &atlas.scissor {
        let v = g
            .values
            .get(&piece.region)
            .ok_or_else(|| MotiveError::unknown("glued region", piece.region.clone()))?;
        let v = match &piece.restrict {
            Some(name) => pullback(reg, reg.morphism(name)?, v)?,
            None => v.clone(),
        };
        let f = reg.morphism(&piece.to_point)?;
        if !f.target.is_point() {
            return Err(MotiveError::InvalidDeclaration(format!(
                "{} does not map to pt",
                f.name
            )));
        }
        total = total.try_add(&pushforward(reg, f, &v)?)?;
    }
    Ok(total)
}
