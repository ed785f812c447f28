//! Built-in invariant checks plus regressions over the bundled fixtures.

use std::fmt::Write as _;

use motivic_core::json::MotiveJson;
use motivic_core::text::{parse_motive, render};
use motivic_core::{fixtures, BundleBits, Motive, Registry, SpaceId};
use serde_json::json;

use crate::commands::{self, Output};
use crate::CliError;

type Command = fn(&motivic_core::job::JobFile, Option<usize>) -> Result<Output, CliError>;

/// (fixture, command name, command, expected substring, expected verdict).
const REGRESSIONS: &[(&str, &str, Command, &str, bool)] = &[
    ("z2", "zeta", commands::zeta, "[mu_2] * (L^-1 T^2)/(1 - L^-1 T^2)", true),
    ("z2", "nearby", commands::nearby, "[mu_2]\n", true),
    ("z2", "vanishing", commands::vanishing, "1\n", true),
    ("z3", "nearby", commands::nearby, "[mu_3]\n", true),
    ("x2", "vanishing", commands::vanishing, "L^(-1/2)\n", true),
    ("x2y", "vanishing", commands::vanishing, "L^(-1/2) ⊙ Y(p1)\n", true),
    ("uv", "vanishing", commands::vanishing, "1\n", true),
    ("x2-plane", "nearby", commands::nearby, "L ⊙ [mu_2]\n", true),
    ("x2-plane-blowup", "nearby", commands::nearby, "L ⊙ [mu_2]\n", true),
    ("ts-z2x10", "ts", commands::ts, "1\n", true),
    ("z2", "arc-check", commands::arc_check, "arc-check: PASS", true),
    ("z3", "arc-check", commands::arc_check, "arc-check: PASS", true),
    ("z4", "arc-check", commands::arc_check, "arc-check: PASS", true),
    ("x2", "arc-check", commands::arc_check, "arc-check: PASS", true),
    ("x2y", "arc-check", commands::arc_check, "arc-check: PASS", true),
    (
        "z3-vs-z2",
        "arc-check",
        commands::arc_check,
        "arc-check: FAIL at n=2",
        false,
    ),
    ("z2-atlas", "glue", commands::glue, "region X [A]: 1\n", true),
    (
        "x2-atlas",
        "glue",
        commands::glue,
        "pushforward to pt: L^(1/2) - L^(-1/2)\n",
        true,
    ),
    (
        "two-points-atlas",
        "glue",
        commands::glue,
        "pushforward to pt: 2\n",
        true,
    ),
    (
        "gm-two-charts",
        "glue",
        commands::glue,
        "pushforward to pt: L^(1/2) - L^(-1/2)\n",
        true,
    ),
    (
        "z1z2-localize",
        "localize",
        commands::localize,
        "sum = 1; check: PASS",
        true,
    ),
    (
        "two-points-localize",
        "localize",
        commands::localize,
        "sum = 2; check: PASS",
        true,
    ),
];

/// Motives over a space with three bundle generators, covering every kind of term.
const SAMPLES: &[&str] = &[
    "0",
    "1",
    "L^(1/2)",
    "L^-3 - 2*L^(5/2)",
    "[mu_2]",
    "Y(a)",
    "L^(-1/2) ⊙ Y(a+b)",
    "3 ⊙ Y(c) - L ⊙ Y(a+b+c)",
    "[mu_3]",
    "L^(1/2) ⊙ [mu_3] + Y(b)",
];

fn world() -> Registry {
    let mut reg = Registry::new();
    reg.add_space("S", Some(3), &["a", "b", "c"]).expect("fresh registry");
    reg
}

struct Suite {
    lines: String,
    failed: Vec<String>,
    passed: usize,
}

impl Suite {
    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
            let _ = writeln!(self.lines, "ok    {name}");
        } else {
            let _ = writeln!(self.lines, "FAIL  {name}: {}", detail());
            self.failed.push(name.to_string());
        }
    }
}

fn invariants(s: &mut Suite) {
    let pt = SpaceId::point();
    let reg = world();
    let space = SpaceId::from("S");

    let sqrt_law = (-8..=8i64).all(|m| {
        (-8..=8i64).all(|n| {
            Motive::l_half(pt.clone(), m).odot(&Motive::l_half(pt.clone(), n)) == Ok(Motive::l_half(pt.clone(), m + n))
        })
    });
    s.check("square-root law on L^(m/2)", sqrt_law, String::new);

    let mu2 = reg.symbol_motive(&pt, "mu_2").expect("builtin");
    let one_minus = Motive::one(pt.clone())
        .try_sub(&Motive::l_half(pt.clone(), 1))
        .expect("same space");
    s.check("[mu_2] = 1 - L^(1/2)", mu2 == one_minus, || render(&reg, &mu2));
    let root = Motive::one(pt.clone()).try_sub(&mu2).expect("same space");
    let sq = root.odot(&root);
    s.check(
        "(1 - [mu_2]) ⊙ (1 - [mu_2]) = L",
        sq == Ok(Motive::l_half(pt.clone(), 2)),
        || format!("{sq:?}"),
    );

    let group = (0..8u64).all(|p| {
        (0..8u64).all(|q| {
            let (p, q) = (BundleBits(p), BundleBits(q));
            Motive::upsilon(space.clone(), p).odot(&Motive::upsilon(space.clone(), q))
                == Ok(Motive::upsilon(space.clone(), p.tensor(q)))
        })
    });
    s.check("Y(P) ⊙ Y(Q) = Y(P ⊗ Q)", group, String::new);

    let parsed: Result<Vec<Motive>, _> = SAMPLES.iter().map(|t| parse_motive(&reg, &space, t)).collect();
    let ms = match parsed {
        Ok(ms) => ms,
        Err(e) => {
            s.check("sample motives parse", false, || e.to_string());
            return;
        }
    };
    let text_rt = ms
        .iter()
        .all(|m| parse_motive(&reg, &space, &render(&reg, m)).as_ref() == Ok(m));
    s.check("text round trip", text_rt, String::new);
    let json_rt = ms.iter().all(|m| {
        let v = serde_json::to_string(&MotiveJson::from_motive(&reg, m)).expect("serializes");
        serde_json::from_str::<MotiveJson>(&v)
            .ok()
            .and_then(|j| j.to_motive(&reg).ok())
            .as_ref()
            == Some(m)
    });
    s.check("JSON round trip", json_rt, String::new);

    let mut comm = true;
    let mut assoc = true;
    let mut distrib = true;
    for a in &ms {
        for b in &ms {
            if let (Ok(ab), Ok(ba)) = (a.odot(b), b.odot(a)) {
                comm &= ab == ba;
            }
            for c in &ms {
                let left = a.odot(b).and_then(|ab| ab.odot(c));
                let right = b.odot(c).and_then(|bc| a.odot(&bc));
                if let (Ok(l), Ok(r)) = (left, right) {
                    assoc &= l == r;
                }
                let sum = b.try_add(c).and_then(|bc| a.odot(&bc));
                let split = a.odot(b).and_then(|ab| a.odot(c).and_then(|ac| ab.try_add(&ac)));
                if let (Ok(l), Ok(r)) = (sum, split) {
                    distrib &= l == r;
                }
            }
        }
    }
    s.check("⊙ is commutative", comm, String::new);
    s.check("⊙ is associative", assoc, String::new);
    s.check("⊙ distributes over +", distrib, String::new);
}

fn regressions(s: &mut Suite) {
    for &(fixture, name, cmd, expect, verdict) in REGRESSIONS {
        let label = format!("{name} {fixture}");
        match fixtures::load(fixture)
            .map_err(CliError::from)
            .and_then(|job| cmd(&job, None))
        {
            Ok(out) => {
                let ok = out.text.contains(expect) && out.pass == verdict;
                s.check(&label, ok, || {
                    format!("expected `{}`, got `{}`", expect.trim_end(), out.text.trim_end())
                });
            }
            Err(e) => s.check(&label, false, || format!("{e:?}")),
        }
    }
}

pub fn run() -> Output {
    let mut s = Suite {
        lines: String::new(),
        failed: vec![],
        passed: 0,
    };
    invariants(&mut s);
    regressions(&mut s);
    let green = s.failed.is_empty();
    let _ = writeln!(
        s.lines,
        "selftest: {} passed, {} failed{}",
        s.passed,
        s.failed.len(),
        if green { "" } else { " (FAIL)" }
    );
    let machine = json!({ "command": "selftest", "passed": s.passed, "failed": s.failed, "pass": green });
    Output {
        text: s.lines,
        machine,
        pass: green,
    }
}
