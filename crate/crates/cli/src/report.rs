//! Text and JSON rendering of [`SystemReport`]s.

use std::fmt::Write;

use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::analysis::{fmt_rats, Command, SystemReport};

pub const SCHEMA_VERSION: u32 = 1;

/// The JSON schema reports conform to.
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

fn rat(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

fn rats(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn complex(z: &Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn system_json(r: &SystemReport) -> Value {
    let names: Vec<&str> = r.system.variables.iter().map(String::as_str).collect();
    let phi = &r.indicator;
    let mut obj = json!({
        "file": r.file,
        "variables": r.system.variables,
        "polynomials": r.system.polynomials.iter()
            .map(|(name, p)| json!({"name": name, "expr": p.display_with(&names)}))
            .collect::<Vec<_>>(),
        "basepoint": r.basepoint.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "q": rat(&r.system.q),
        "indicator": {
            "generators": phi.canonical().generators().iter().map(|g| rats(g)).collect::<Vec<_>>(),
            "sigma": rat(&phi.sigma()),
            "multitype": rats(&phi.multitype()),
            "is_i0": phi.is_i0(),
        },
        "passed": r.passed(),
    });
    let o = obj.as_object_mut().expect("object literal");
    if let (Some(t), Some(nn)) = (&r.theta, &r.newton_number) {
        o.insert(
            "theta_plus".into(),
            json!({
                "vertices": t.vertices().iter().map(|v| rats(v)).collect::<Vec<_>>(),
                "volume": rat(t.volume()),
                "newton_number": rat(nn),
            }),
        );
        o.insert(
            "mass".into(),
            match &r.mass {
                Some(m) => json!({
                    "total": rat(&m.total),
                    "tau_prime": rat(&m.tau_prime),
                    "tau_doubleprime": rat(&m.tau_doubleprime),
                }),
                None => Value::Null,
            },
        );
    }
    if let Some(c) = &r.chain {
        o.insert(
            "chain".into(),
            json!({"at_basepoint": rat(&c.at_basepoint), "generic": rat(&c.generic), "multitype": rat(&c.multitype)}),
        );
    }
    if !r.directional.is_empty() {
        o.insert(
            "directional".into(),
            Value::Array(
                r.directional
                    .iter()
                    .map(|(a, b)| json!({"direction": rats(a), "bound": rat(b)}))
                    .collect(),
            ),
        );
    }
    if let Some(z) = &r.zeros {
        o.insert(
            "zeros".into(),
            json!({
                "count": z.count,
                "certified_simple": z.certified_simple,
                "eliminant_degree": z.eliminant_degree,
                "points": z.zeros.iter().map(|w| json!({
                    "point": w.point.iter().map(complex).collect::<Vec<_>>(),
                    "residual": w.residual,
                    "jacobian_abs": w.jacobian_abs,
                })).collect::<Vec<_>>(),
            }),
        );
    }
    if !r.checks.is_empty() {
        o.insert(
            "checks".into(),
            Value::Array(
                r.checks
                    .iter()
                    .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                    .collect(),
            ),
        );
    }
    obj
}

pub fn report_json(cmd: Command, reports: &[SystemReport]) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": cmd.name(),
        "passed": reports.iter().all(SystemReport::passed),
        "systems": reports.iter().map(system_json).collect::<Vec<_>>(),
    })
}

fn fmt_complex(z: &Complex64) -> String {
    format!("{:.10}{:+.10}i", z.re, z.im)
}

pub fn system_text(cmd: Command, r: &SystemReport) -> String {
    let mut s = String::new();
    let phi = &r.indicator;
    let _ = writeln!(s, "== {}", r.file);
    let at: Vec<String> = r.basepoint.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(s, "basepoint: ({})", at.join(", "));
    match cmd {
        Command::Indicator => {
            let gens: Vec<String> = phi
                .canonical()
                .generators()
                .iter()
                .map(|g| fmt_rats(g))
                .collect();
            let _ = writeln!(s, "generators: {}", gens.join(" "));
            let _ = writeln!(s, "sigma = {}", phi.sigma());
            let _ = writeln!(s, "multitype = {}", fmt_rats(&phi.multitype()));
            let _ = writeln!(
                s,
                "locally bounded off 0: {}",
                if phi.is_i0() { "yes" } else { "no" }
            );
        }
        Command::Newton | Command::Bounds | Command::Verify => {
            if let (Some(t), Some(nn)) = (&r.theta, &r.newton_number) {
                let verts: Vec<String> = t.vertices().iter().map(|v| fmt_rats(v)).collect();
                let _ = writeln!(s, "Theta+ vertices: {}", verts.join(" "));
                let _ = writeln!(s, "volume = {}", t.volume());
                let _ = writeln!(s, "Newton number = {nn}");
                match &r.mass {
                    Some(m) => {
                        let _ =
                            writeln!(s, "tau' = {}, tau'' = {}", m.tau_prime, m.tau_doubleprime);
                    }
                    None => {
                        let _ = writeln!(s, "tau', tau'': undefined (indicator unbounded off 0)");
                    }
                }
            }
            if let Some(c) = &r.chain {
                let _ = writeln!(
                    s,
                    "bound chain: {} <= {} <= {}",
                    c.at_basepoint, c.generic, c.multitype
                );
            }
            for (a, b) in &r.directional {
                let _ = writeln!(s, "directional bound at {} = {}", fmt_rats(a), b);
            }
        }
        Command::Zeros => {}
    }
    if let Some(z) = &r.zeros {
        let _ = writeln!(
            s,
            "zeros: {} (all simple: {})",
            z.count,
            if z.certified_simple { "yes" } else { "no" }
        );
        if cmd == Command::Zeros {
            for w in &z.zeros {
                let p: Vec<String> = w.point.iter().map(fmt_complex).collect();
                let _ = writeln!(
                    s,
                    "  ({})  residual {:.1e}  |jac| {:.3e}",
                    p.join(", "),
                    w.residual,
                    w.jacobian_abs
                );
            }
        }
    }
    for c in &r.checks {
        let _ = writeln!(
            s,
            "{} {:<13} {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    s
}
