//! Worked examples shipped with the library, as job files.

use crate::error::{MotiveError, Result};
use crate::job::JobFile;

pub const FIXTURES: &[(&str, &str)] = &[
    ("gm-two-charts", include_str!("../fixtures/gm-two-charts.json")),
    ("ts-z2x10", include_str!("../fixtures/ts-z2x10.json")),
    ("two-points-atlas", include_str!("../fixtures/two-points-atlas.json")),
    (
        "two-points-localize",
        include_str!("../fixtures/two-points-localize.json"),
    ),
    ("uv", include_str!("../fixtures/uv.json")),
    ("x2", include_str!("../fixtures/x2.json")),
    ("x2-atlas", include_str!("../fixtures/x2-atlas.json")),
    ("x2-plane", include_str!("../fixtures/x2-plane.json")),
    ("x2-plane-blowup", include_str!("../fixtures/x2-plane-blowup.json")),
    ("x2y", include_str!("../fixtures/x2y.json")),
    ("z1z2-localize", include_str!("../fixtures/z1z2-localize.json")),
    ("z2", include_str!("../fixtures/z2.json")),
    ("z2-atlas", include_str!("../fixtures/z2-atlas.json")),
    ("z3", include_str!("../fixtures/z3.json")),
    ("z3-vs-z2", include_str!("../fixtures/z3-vs-z2.json")),
    ("z4", include_str!("../fixtures/z4.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Result<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| MotiveError::unknown("fixture", name))
}

pub fn load(name: &str) -> Result<JobFile> {
    JobFile::parse(source(name)?)
}
