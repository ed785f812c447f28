use std::fmt::Write as _;

use motivic_core::arc::{compare, MonomialFunction};
use motivic_core::dcrit::{glue as glue_atlas, pushforward_to_point};
use motivic_core::job::{JobFile, Payload};
use motivic_core::json::MotiveJson;
use motivic_core::localize::{direct_value, localization_check, localize_sum};
use motivic_core::stabilize::thom_sebastiani_all;
use motivic_core::text::render;
use motivic_core::zeta::{
    expand_series, milnor_fibre_at, nearby_cycle, vanishing_cycle, zeta_function, ResolutionData,
};
use motivic_core::{Exec, Motive, Registry};
use serde_json::{json, Value};

use crate::CliError;

pub const DEFAULT_SERIES_ORDER: usize = 8;

pub struct Output {
    pub text: String,
    pub machine: Value,
    /// False when a check ran and failed.
    pub pass: bool,
}

impl Output {
    fn ok(text: String, machine: Value) -> Self {
        Output {
            text,
            machine,
            pass: true,
        }
    }
}

pub fn motive_json(reg: &Registry, m: &Motive) -> Value {
    serde_json::to_value(MotiveJson::from_motive(reg, m)).expect("motive JSON serializes")
}

fn resolution<'a>(job: &'a JobFile, command: &str) -> Result<&'a ResolutionData, CliError> {
    match &job.payload {
        Payload::Resolution(r) => Ok(r),
        _ => Err(CliError::Usage(format!("`{command}` needs a resolution payload"))),
    }
}

pub fn zeta(job: &JobFile, k: Option<usize>) -> Result<Output, CliError> {
    let reg = job.registry()?;
    let r = resolution(job, "zeta")?;
    let z = zeta_function(&reg, r)?;
    let mut text = format!("{}\n", z.render(&reg));
    let k = k.or(job.params.series_order);
    let series = match k {
        Some(k) => expand_series(&z, k)?,
        None => vec![],
    };
    for (n, c) in series.iter().enumerate().skip(1) {
        let _ = writeln!(text, "  T^{n}: {}", render(&reg, c));
    }
    let terms: Vec<Value> = z
        .terms
        .iter()
        .map(|t| {
            json!({
                "stratum": t.label,
                "class": motive_json(&reg, &t.class),
                "l_minus_one": t.l_minus_one,
                "factors": t.factors,
            })
        })
        .collect();
    let machine = json!({
        "command": "zeta",
        "space": z.space.as_str(),
        "text": z.render(&reg),
        "terms": terms,
        "series": series.iter().map(|c| motive_json(&reg, c)).collect::<Vec<_>>(),
    });
    Ok(Output::ok(text, machine))
}

fn single(command: &str, reg: &Registry, m: &Motive) -> Output {
    let text = render(reg, m);
    Output::ok(
        format!("{text}\n"),
        json!({ "command": command, "text": text, "result": motive_json(reg, m) }),
    )
}

pub fn nearby(job: &JobFile, _k: Option<usize>) -> Result<Output, CliError> {
    let reg = job.registry()?;
    let m = nearby_cycle(&reg, resolution(job, "nearby")?)?;
    Ok(single("nearby", &reg, &m))
}

pub fn vanishing(job: &JobFile, _k: Option<usize>) -> Result<Output, CliError> {
    let reg = job.registry()?;
    let r = resolution(job, "vanishing")?;
    let value = job.params.critical_value.as_deref().unwrap_or(&r.value);
    let m = vanishing_cycle(&reg, r, value)?;
    let mut out = single("vanishing", &reg, &m);
    if let Some(label) = &job.params.point {
        let f = milnor_fibre_at(&reg, r, label)?;
        let _ = writeln!(out.text, "Milnor fibre at {label}: {}", render(&reg, &f));
        out.machine["point"] = json!({ "label": label, "text": render(&reg, &f), "result": motive_json(&reg, &f) });
    }
    Ok(out)
}

pub fn arc_check(job: &JobFile, k: Option<usize>) -> Result<Output, CliError> {
    let reg = job.registry()?;
    let (f, r): (&MonomialFunction, &ResolutionData) = match (&job.payload, &job.params) {
        (Payload::Resolution(r), p) => (
            p.monomial
                .as_ref()
                .ok_or_else(|| CliError::Usage("arc-check needs `params.monomial`".into()))?,
            r,
        ),
        (Payload::Monomial(f), p) => (
            f,
            p.resolution
                .as_ref()
                .ok_or_else(|| CliError::Usage("arc-check needs `params.resolution`".into()))?,
        ),
        _ => {
            return Err(CliError::Usage(
                "arc-check needs a resolution or monomial payload".into(),
            ))
        }
    };
    let k = k.or(job.params.series_order).unwrap_or(DEFAULT_SERIES_ORDER);
    let rows = compare(Exec::default(), &reg, f, &zeta_function(&reg, r)?, k)?;
    let mut text = String::new();
    let _ = writeln!(text, "{:>4}  {:<8}  {:<28}  resolution", "n", "verdict", "arc count");
    for row in &rows {
        let verdict = if row.pass() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            text,
            "{:>4}  {:<8}  {:<28}  {}",
            row.n,
            verdict,
            render(&reg, &row.oracle),
            render(&reg, &row.resolution)
        );
    }
    let first_fail = rows.iter().find(|r| !r.pass()).map(|r| r.n);
    match (first_fail, k) {
        (Some(n), _) => {
            let _ = writeln!(text, "arc-check: FAIL at n={n}");
        }
        (None, 0) => text.push_str("arc-check: PASS (vacuous, k=0)\n"),
        (None, k) => {
            let _ = writeln!(text, "arc-check: PASS (n=1..{k})");
        }
    }
    let machine = json!({
        "command": "arc-check",
        "k": k,
        "pass": first_fail.is_none(),
        "first_failure": first_fail,
        "rows": rows.iter().map(|r| json!({
            "n": r.n,
            "pass": r.pass(),
            "oracle": motive_json(&reg, &r.oracle),
            "resolution": motive_json(&reg, &r.resolution),
        })).collect::<Vec<_>>(),
    });
    Ok(Output {
        text,
        machine,
        pass: first_fail.is_none(),
    })
}

pub fn ts(job: &JobFile, _k: Option<usize>) -> Result<Output, CliError> {
    let reg = job.registry()?;
    let Payload::ThomSebastiani(ts) = &job.payload else {
        return Err(CliError::Usage("`ts` needs a thom_sebastiani payload".into()));
    };
    let factors = ts
        .factors
        .iter()
        .map(|f| f.motive(&reg))
        .collect::<Result<Vec<_>, _>>()?;
    let m = thom_sebastiani_all(&reg, &factors)?;
    Ok(single("ts", &reg, &m))
}

pub fn glue(job: &JobFile, _k: Option<usize>) -> Result<Output, CliError> {
    let reg = job.registry()?;
    let Payload::Atlas(atlas) = &job.payload else {
        return Err(CliError::Usage("`glue` needs an atlas payload".into()));
    };
    let g = glue_atlas(&reg, atlas)?;
    let mut text = String::new();
    let mut regions = serde_json::Map::new();
    for (region, v) in &g.values {
        let charts = g.provenance[region].join(",");
        let _ = writeln!(text, "region {region} [{charts}]: {}", render(&reg, v));
        regions.insert(region.clone(), motive_json(&reg, v));
    }
    let mut ledger = vec![];
    for rec in &g.ledger {
        let _ = writeln!(
            text,
            "overlap {} ({} ~ {}) on {}: {} agrees",
            rec.name,
            rec.charts[0],
            rec.charts[1],
            rec.region,
            render(&reg, &rec.value)
        );
        ledger.push(json!({
            "name": rec.name,
            "charts": rec.charts,
            "region": rec.region.as_str(),
            "value": motive_json(&reg, &rec.value),
        }));
    }
    let mut machine = json!({ "command": "glue", "space": g.space.as_str(), "regions": regions, "ledger": ledger });
    if !atlas.scissor.is_empty() {
        let total = pushforward_to_point(&reg, atlas, &g)?;
        let _ = writeln!(text, "pushforward to pt: {}", render(&reg, &total));
        machine["pushforward"] = motive_json(&reg, &total);
    }
    Ok(Output::ok(text, machine))
}

pub fn localize(job: &JobFile, _k: Option<usize>) -> Result<Output, CliError> {
    let reg = job.registry()?;
    let Payload::FixedPoints(data) = &job.payload else {
        return Err(CliError::Usage("`localize` needs a fixed_points payload".into()));
    };
    data.check_schema()?;
    match &data.direct {
        None => {
            let sum = localize_sum(&reg, &data.components)?;
            let text = render(&reg, &sum);
            Ok(Output::ok(
                format!("sum = {text}\n"),
                json!({ "command": "localize", "text": text, "sum": motive_json(&reg, &sum) }),
            ))
        }
        Some(d) => {
            let direct = direct_value(&reg, d)?;
            let report = localization_check(&reg, &data.components, &direct)?;
            let machine = json!({
                "command": "localize",
                "text": render(&reg, &report.sum),
                "sum": motive_json(&reg, &report.sum),
                "direct": motive_json(&reg, &report.direct),
                "pass": report.pass,
                "difference": report.difference.as_ref().map(|m| motive_json(&reg, m)),
            });
            Ok(Output {
                text: format!("{}\n", report.render(&reg)),
                machine,
                pass: report.pass,
            })
        }
    }
}
