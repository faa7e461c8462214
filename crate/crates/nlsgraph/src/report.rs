//! Deterministic text output: fixed 12-significant-digit numeric formatting,
//! key-value report blocks, and the profile CSV schema
//! (`edge_id, arclength, value`, ordered by edge then arclength).

use std::fmt::Write as _;

use crate::mesh::GraphFunction;
use crate::minimize::{ExistenceVerdict, MinimizeResult};
use crate::rearrange::{ProfileKind, RearrangedProfile};

/// 12 significant digits, scientific, locale-independent.
pub fn num(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn kv(out: &mut String, key: &str, value: impl AsRef<str>) {
    out.push_str(key);
    out.push_str(" = ");
    out.push_str(value.as_ref());
    out.push('\n');
}

/// CSV of all nodal values, one row per edge-local node.
pub fn profile_csv(u: &GraphFunction) -> String {
    let mut out = String::from("edge_id,arclength,value\n");
    for (ei, em) in u.mesh().edge_meshes().iter().enumerate() {
        for (k, &node) in em.nodes.iter().enumerate() {
            let _ = writeln!(out, "{ei},{},{}", num(k as f64 * em.h), num(u.values()[node]));
        }
    }
    out
}

/// CSV of a rearranged profile at its breakpoints; the edge id marks the
/// target domain (`rplus` for the half-line, `rline` for the line).
pub fn rearranged_csv(p: &RearrangedProfile) -> String {
    let label = match p.kind {
        ProfileKind::Monotone => "rplus",
        ProfileKind::Symmetric => "rline",
    };
    let mut out = String::from("edge_id,arclength,value\n");
    for (x, v) in p.sample_points() {
        let _ = writeln!(out, "{label},{},{}", num(x), num(v));
    }
    out
}

/// Flat key-value block for a solve.
pub fn solve_report(res: &MinimizeResult, graph_label: &str, mu: f64, p: f64) -> String {
    let mut out = String::new();
    kv(&mut out, "graph", graph_label);
    kv(&mut out, "mass", num(mu));
    kv(&mut out, "p", num(p));
    kv(&mut out, "best_start", &res.best_start);
    kv(&mut out, "best_energy", num(res.best_report.total));
    kv(&mut out, "kinetic", num(res.best_report.kinetic));
    kv(&mut out, "potential", num(res.best_report.potential));
    kv(&mut out, "omega", num(res.best_report.omega));
    kv(&mut out, "kirchhoff_residual", num(res.best_report.kirchhoff_residual));
    let ktol = crate::mesh::default_kirchhoff_tol(res.best.mesh().h_max());
    kv(&mut out, "kirchhoff_tol", num(ktol));
    kv(
        &mut out,
        "kirchhoff_ok",
        if res.best_report.kirchhoff_residual < ktol { "true" } else { "false" },
    );
    kv(&mut out, "mass_check", num(res.best_report.mass));
    kv(&mut out, "boundary_mass_fraction", num(res.boundary_mass_fraction));
    kv(&mut out, "any_converged", if res.any_converged { "true" } else { "false" });
    for r in &res.records {
        kv(&mut out, &format!("start.{}.energy", r.name), num(r.energy));
        kv(&mut out, &format!("start.{}.iterations", r.name), r.iterations.to_string());
        kv(
            &mut out,
            &format!("start.{}.converged", r.name),
            if r.converged { "true" } else { "false" },
        );
    }
    out
}

/// Flat key-value block for an existence verdict.
pub fn verdict_report(v: &ExistenceVerdict, graph_label: &str, mu: f64) -> String {
    let mut out = String::new();
    kv(&mut out, "graph", graph_label);
    kv(&mut out, "mass", num(mu));
    kv(&mut out, "status", v.status.as_str());
    kv(&mut out, "gap", num(v.gap));
    kv(&mut out, "delta", num(v.delta));
    kv(&mut out, "reference_level", num(v.reference_level));
    kv(
        &mut out,
        "reference_kind",
        if v.reference_derived { "derived" } else { "closed-form" },
    );
    kv(&mut out, "base_energy", num(v.base_energy));
    if let Some(e2) = v.doubled_energy {
        kv(&mut out, "doubled_energy", num(e2));
    }
    kv(&mut out, "boundary_mass_fraction", num(v.boundary_mass_fraction));
    kv(&mut out, "structural", if v.structural { "true" } else { "false" });
    kv(&mut out, "has_certificate", if v.certificate.is_some() { "true" } else { "false" });
    out
}
