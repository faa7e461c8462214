//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nlsgraph::closed_forms::{level, soliton, star_stationary, LevelKind};
use nlsgraph::graph::{builders, GraphBuilder, MetricGraph};
use nlsgraph::mesh::{build_mesh, GraphFunction, Mesh};
use nlsgraph::minimize::{
    certify_stationary, classify_existence, minimize, Existence, SolveOptions,
};
use nlsgraph::rearrange::{
    min_preimage_count, monotone_rearrangement, symmetric_rearrangement,
};
use nlsgraph::surgery;

fn conclude(n: usize, name: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {n:02} {name}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

fn line_soliton(mesh: &Arc<Mesh>, mu: f64) -> GraphFunction {
    GraphFunction::interpolate(mesh, move |e, s| soliton(mu, if e == 0 { s } else { -s }))
}

#[test]
fn criterion_01_soliton_level() {
    let t0 = Instant::now();
    let mesh = build_mesh(&builders::line(), 1e-3, 100.0).unwrap();
    let u = line_soliton(&mesh, 1.0);
    let e = u.energy(4.0).unwrap();
    let elapsed = t0.elapsed();
    let err = (e.total + 1.0 / 96.0).abs();
    conclude(
        1,
        "soliton-level",
        err < 1e-6 && elapsed.as_secs_f64() < 5.0,
        &format!("error {err:.2e}, runtime {elapsed:.2?}"),
    );
}

#[test]
fn criterion_02_halfline_level() {
    let mu = 1.0;
    let opts = SolveOptions::for_mass(mu);
    let res = minimize(&builders::halfline(), mu, &opts).unwrap();
    let err = (res.best_energy() + mu.powi(3) / 24.0).abs();
    let half = GraphFunction::interpolate(res.best.mesh(), |_, s| soliton(2.0 * mu, s));
    let dist = res.best.l2_distance(&half).unwrap();
    conclude(
        2,
        "halfline-level",
        err < 1e-4 && dist < 1e-2,
        &format!("energy error {err:.2e}, L2 profile distance {dist:.2e}"),
    );
}

#[test]
fn criterion_03_star_stationary() {
    let mu = 1.0;
    let mesh = build_mesh(&builders::star(3), 5e-3, 100.0).unwrap();
    let u = GraphFunction::interpolate(&mesh, |_, s| star_stationary(mu, 3, s).unwrap());
    let e = u.energy(4.0).unwrap();
    let target = -mu.powi(3) / 216.0;
    let err = (e.total - target).abs();
    let (stationary, rep) = certify_stationary(&u, 4.0, 1e-3).unwrap();
    let above_line = target > level(LevelKind::Line, mu).unwrap().value;
    conclude(
        3,
        "star3-stationary",
        err < 1e-6 && stationary && above_line,
        &format!(
            "energy error {err:.2e}, EL residual {:.2e}, Kirchhoff {:.2e}",
            rep.residual_l2, rep.kirchhoff_residual
        ),
    );
}

#[test]
fn criterion_04_star3_nonexistence() {
    let mut detail = String::new();
    let mut pass = true;
    for mu in [0.5, 1.0, 2.0] {
        // Truncation chosen so the runaway stall is visible above the O(h^2)
        // quadrature bias yet below the 1e-3 window: the stall energy sits
        // ~0.15 mu^3 exp(-mu L/4) above the line level.
        let mut opts = SolveOptions::for_mass(mu);
        opts.l_inf = 50.0 / mu;
        let v = classify_existence(&builders::star(3), mu, &opts).unwrap();
        let reference = -mu.powi(3) / 96.0;
        let base_gap = v.base_energy - reference;
        let doubled = v.doubled_energy.expect("doubled solve ran");
        let ok = v.status == Existence::LikelyNonexistent
            && base_gap > 0.0
            && base_gap < 1e-3
            && doubled < v.base_energy;
        pass &= ok;
        detail.push_str(&format!(
            "mu={mu}: {} gap={base_gap:+.1e} drop={:+.1e}; ",
            v.status.as_str(),
            v.base_energy - doubled
        ));
    }
    conclude(4, "star3-nonexistence", pass, detail.trim_end_matches("; "));
}

#[test]
fn criterion_05_pendant_existence() {
    let mut pass = true;
    let mut worst = f64::NEG_INFINITY;
    for mu in [0.5, 1.0, 2.0] {
        for ell in [0.01, 0.1, 1.0, 10.0] {
            let c = surgery::pendant_competitor(mu, ell, 0.002 / mu, 60.0 / mu).unwrap();
            pass &= c.margin < 0.0;
            worst = worst.max(c.margin);
        }
    }
    let mu = 1.0;
    let opts = SolveOptions::for_mass(mu);
    let v = classify_existence(&builders::line_with_pendant(1.0), mu, &opts).unwrap();
    let competitor = surgery::pendant_competitor(mu, 1.0, opts.h_max, opts.l_inf).unwrap();
    let cert_energy = v
        .certificate
        .as_ref()
        .map(|c| c.energy(4.0).unwrap().total)
        .unwrap_or(f64::INFINITY);
    let exists = v.status == Existence::Exists;
    let beats = cert_energy <= competitor.report.total;
    pass &= exists && beats;
    conclude(
        5,
        "pendant-existence",
        pass,
        &format!(
            "worst lattice margin {worst:+.1e}; classify {} cert {cert_energy:.6e} vs competitor {:.6e}",
            v.status.as_str(),
            competitor.report.total
        ),
    );
}

#[test]
fn criterion_06_pinching() {
    let mu = 1.0f64;
    let corpus: Vec<(&str, MetricGraph)> = vec![
        ("line", builders::line()),
        ("halfline", builders::halfline()),
        ("star3", builders::star(3)),
        ("star4", builders::star(4)),
        ("pendant", builders::line_with_pendant(1.0)),
        ("gl", builders::gl(1.0)),
        ("tower1", builders::bubble_tower(&[2.0])),
        ("tower2", builders::bubble_tower(&[2.0, 1.0])),
        ("tower3", builders::bubble_tower(&[2.0, 1.0, 0.5])),
        ("showcase", builders::showcase()),
    ];
    let lower = -mu.powi(3) / 24.0 - 1e-3;
    let upper = -mu.powi(3) / 96.0 + 1e-3;
    let mut pass = true;
    let mut detail = String::new();
    for (name, g) in &corpus {
        let mut opts = SolveOptions::for_mass(mu);
        opts.h_max = 0.05;
        opts.l_inf = 40.0;
        opts.max_iters = 300;
        let res = minimize(g, mu, &opts).unwrap();
        let e = res.best_energy();
        let ok = e >= lower && e <= upper;
        pass &= ok;
        if !ok {
            detail.push_str(&format!("{name}: {e:.6e} outside; "));
        }
    }
    if detail.is_empty() {
        detail = format!("10 graphs inside [{lower:.6e}, {upper:.6e}]");
    }
    conclude(6, "pinching", pass, &detail);
}

#[test]
fn criterion_07_rearrangement_suite() {
    let single_edge = |len: f64| {
        let mut b = GraphBuilder::new();
        let x = b.vertex("x");
        let y = b.vertex("y");
        b.edge(x, y, len);
        b.build()
    };
    let circle = |len: f64| {
        let mut b = GraphBuilder::new();
        let x = b.vertex("x");
        b.edge(x, x, len);
        b.build()
    };
    let graphs: Vec<MetricGraph> = vec![
        builders::line(),
        builders::star(3),
        builders::line_with_pendant(1.3),
        builders::bubble_tower(&[0.8]),
        circle(3.0),
        single_edge(2.5),
        builders::star(4),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut pass = true;
    let mut failures = String::new();
    let mut two_preimage_cases = 0usize;
    for trial in 0..100 {
        let g = &graphs[trial % graphs.len()];
        let h = 0.11 + 0.012 * (trial % 5) as f64;
        let mesh = build_mesh(g, h, 4.0).unwrap();
        let values: Vec<f64> = (0..mesh.node_count()).map(|_| rng.gen_range(0.0..1.0)).collect();
        let u = GraphFunction::from_values(&mesh, values).unwrap();
        let star = monotone_rearrangement(&u).unwrap();
        let hat = symmetric_rearrangement(&u).unwrap();
        for q in [2.0, 3.0, 4.0, 5.0] {
            let orig = u.exact_lq_norm_pow(q);
            for (r, tag) in [(star.lq_norm_pow(q), "u*"), (hat.lq_norm_pow(q), "u^")] {
                if (r - orig).abs() > 1e-8 * orig.max(1e-30) {
                    pass = false;
                    failures.push_str(&format!("t{trial} q={q} {tag} norm; "));
                }
            }
        }
        let grad_sq = u.grad_norm_sq();
        if star.kinetic_sq() > grad_sq + 1e-8 {
            pass = false;
            failures.push_str(&format!("t{trial} Polya-Szego; "));
        }
        if min_preimage_count(&u).map(|c| c >= 2).unwrap_or(false) {
            two_preimage_cases += 1;
            if hat.kinetic_sq() > grad_sq + 1e-8 {
                pass = false;
                failures.push_str(&format!("t{trial} symmetric comparison; "));
            }
        }
        for &(x, v) in hat.sample_points().iter() {
            if v != star.eval(2.0 * x.abs()) {
                pass = false;
                failures.push_str(&format!("t{trial} u^(x) != u*(2|x|); "));
                break;
            }
        }
        // The three-halfline chain: rearranging onto the line can only lower
        // the energy, and the line energy respects its own ground level.
        if trial % graphs.len() == 1 {
            let e_u = 0.5 * grad_sq - 0.25 * u.exact_lq_norm_pow(4.0);
            let e_hat = hat.energy_total(4.0);
            let mass = u.exact_lq_norm_pow(2.0);
            if e_hat > e_u + 1e-10 || e_hat < -mass.powi(3) / 96.0 - 1e-10 {
                pass = false;
                failures.push_str(&format!("t{trial} rearrangement chain; "));
            }
        }
    }
    pass &= two_preimage_cases >= 10;
    conclude(
        7,
        "rearrangement-suite",
        pass,
        &if failures.is_empty() {
            format!("100 functions, {two_preimage_cases} with min preimage count >= 2")
        } else {
            failures
        },
    );
}

// ---------------------------------------------------------------------------
// Criterion 8: exhaustive agreement of the two Assumption (H) checkers.

fn enumerate_graphs(max_finite: usize, max_edges: usize, mut visit: impl FnMut(&MetricGraph)) {
    for n in 1..=max_finite {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i..n {
                pairs.push((i, j));
            }
        }
        let mut finite_edges: Vec<(usize, usize)> = Vec::new();
        // Multisets of finite edges (non-decreasing pair index), then
        // half-line counts per vertex, total at most max_edges.
        fn rec_finite(
            pairs: &[(usize, usize)],
            start: usize,
            left: usize,
            n: usize,
            chosen: &mut Vec<(usize, usize)>,
            visit: &mut impl FnMut(&MetricGraph),
        ) {
            rec_half(0, n, left, &mut vec![0; n], chosen, visit);
            if left == 0 {
                return;
            }
            for k in start..pairs.len() {
                chosen.push(pairs[k]);
                rec_finite(pairs, k, left - 1, n, chosen, visit);
                chosen.pop();
            }
        }
        fn rec_half(
            v: usize,
            n: usize,
            left: usize,
            counts: &mut Vec<usize>,
            finite: &[(usize, usize)],
            visit: &mut impl FnMut(&MetricGraph),
        ) {
            if v == n {
                build_and_visit(n, finite, counts, visit);
                return;
            }
            for c in 0..=left {
                counts[v] = c;
                rec_half(v + 1, n, left - c, counts, finite, visit);
            }
            counts[v] = 0;
        }
        fn build_and_visit(
            n: usize,
            finite: &[(usize, usize)],
            halflines: &[usize],
            visit: &mut impl FnMut(&MetricGraph),
        ) {
            let mut b = GraphBuilder::new();
            let vs: Vec<_> = (0..n).map(|i| b.vertex(format!("v{i}"))).collect();
            for &(i, j) in finite {
                b.edge(vs[i], vs[j], 1.0);
            }
            for (i, &c) in halflines.iter().enumerate() {
                for k in 0..c {
                    let w = b.infinity(format!("w{i}_{k}"));
                    b.halfline(vs[i], w);
                }
            }
            let g = b.build();
            if g.validate().is_empty() {
                visit(&g);
            }
        }
        rec_finite(&pairs, 0, max_edges, n, &mut finite_edges, &mut visit);
    }
}

#[test]
fn criterion_08_assumption_h_agreement() {
    let mut tested = 0usize;
    let mut ok = true;
    enumerate_graphs(5, 7, |g| {
        tested += 1;
        let (removal, _) = g.check_assumption_h();
        let trails = g.check_assumption_h_trails();
        if removal != trails {
            ok = false;
            println!("disagreement on: {}", nlsgraph::graph::serialize(g));
        }
        // Tower detection implies (H) (towers live inside the (H) class).
        if g.is_bubble_tower(1e-9) && !removal {
            ok = false;
        }
        // Removing any half-line always isolates its infinity vertex; the
        // rest keeps a vertex at infinity iff another half-line lands there.
        for e in 0..g.edge_count() {
            if !g.edge(e).is_halfline() {
                continue;
            }
            // Brute-force component scan on the graph without edge e.
            let mut reach = vec![false; g.vertex_count()];
            let fin = if g.is_infinity(g.edge(e).ends[0]) {
                g.edge(e).ends[1]
            } else {
                g.edge(e).ends[0]
            };
            let mut stack = vec![fin];
            reach[fin.0] = true;
            while let Some(v) = stack.pop() {
                for ee in g.adjacency(v) {
                    if ee.edge == e {
                        continue;
                    }
                    let o = g.edge(ee.edge).ends[1 - ee.end];
                    if !reach[o.0] {
                        reach[o.0] = true;
                        stack.push(o);
                    }
                }
            }
            let has_inf = g
                .vertices()
                .any(|v| reach[v.0] && g.is_infinity(v));
            let other_halfline = (0..g.edge_count()).any(|f| {
                f != e && g.edge(f).is_halfline() && {
                    let vf = if g.is_infinity(g.edge(f).ends[0]) {
                        g.edge(f).ends[1]
                    } else {
                        g.edge(f).ends[0]
                    };
                    reach[vf.0]
                }
            });
            if has_inf != other_halfline {
                ok = false;
            }
        }
    });
    // The named verdicts.
    let named = [
        (builders::star(3), true),
        (builders::line(), true),
        (builders::line_with_pendant(1.0), false),
        (builders::halfline(), false),
        (builders::gl(1.0), false),
        (builders::bubble_tower(&[2.0]), true),
        (builders::bubble_tower(&[2.0, 1.0, 0.5]), true),
    ];
    let mut named_ok = true;
    for (g, expect) in named {
        named_ok &= g.check_assumption_h().0 == expect && g.check_assumption_h_trails() == expect;
    }
    conclude(
        8,
        "assumption-h-agreement",
        ok && named_ok && tested > 100_000,
        &format!("{tested} valid graphs enumerated, named verdicts {named_ok}"),
    );
}

#[test]
fn criterion_09_bubble_tower_exception() {
    let mu = 1.0f64;
    let u = surgery::bubble_tower_soliton(mu, &[(2.0, 2.0)], 2e-3, 60.0).unwrap();
    let e = u.energy(4.0).unwrap();
    let err = (e.total + mu.powi(3) / 96.0).abs();
    let opts = SolveOptions::for_mass(mu);
    let v = classify_existence(&builders::bubble_tower(&[2.0]), mu, &opts).unwrap();
    conclude(
        9,
        "bubble-tower-exception",
        err < 1e-5 && v.status == Existence::Exists && v.structural,
        &format!("wrap error {err:.2e}, verdict {} (structural)", v.status.as_str()),
    );
}

#[test]
fn criterion_10_critical_length() {
    let bisect_opts = |mu: f64| {
        let mut o = SolveOptions::for_mass(mu);
        o.h_max = 0.04 / mu;
        o.l_inf = 50.0 / mu;
        o.max_iters = 300;
        o.starts = Some(vec![
            "bump-edge-00".into(),
            "bump-edge-01".into(),
            "bump-edge-02".into(),
            "bump-edge-03".into(),
            "bump-vertex-00".into(),
            "bump-vertex-01".into(),
            "constant".into(),
        ]);
        o
    };
    let r1 = surgery::critical_length(1.0, &bisect_opts(1.0), 1e-2).unwrap();
    let width = r1.ell_high - r1.ell_low;
    let width_ok = width <= 1e-2;

    // Verdict monotonicity: no existence verdict below a nonexistence one.
    let mut max_nonexistent = f64::NEG_INFINITY;
    let mut min_exists = f64::INFINITY;
    for p in &r1.probes {
        match p.verdict {
            Existence::Exists => min_exists = min_exists.min(p.ell),
            Existence::LikelyNonexistent => max_nonexistent = max_nonexistent.max(p.ell),
            Existence::Inconclusive => {}
        }
    }
    let monotone_ok = max_nonexistent < min_exists;

    let r2 = surgery::critical_length(2.0, &bisect_opts(2.0), 5e-3).unwrap();
    let ratio = r2.ell_star / r1.ell_star;
    let scaling_ok = (ratio - 0.5).abs() <= 0.025;

    let mut table_opts = SolveOptions::for_mass(1.0);
    table_opts.max_iters = 300;
    let table = surgery::gl_limit_check(1.0, &[1.0, 2.0, 5.0, 10.0, 50.0], &table_opts).unwrap();
    let mut decreasing_ok = true;
    for w in table.windows(2) {
        decreasing_ok &= w[1].1 < w[0].1;
    }
    let limit_err = (table.last().unwrap().1 + 1.0 / 24.0).abs();
    let limit_ok = limit_err < 1e-3;

    let detail = format!(
        "bracket [{:.4}, {:.4}] width {width:.1e} ok={width_ok}; verdicts monotone \
         {monotone_ok}; ell*(2)/ell*(1) = {ratio:.4} ok={scaling_ok}; ell=50 limit error \
         {limit_err:.1e} ok={limit_ok}; table strictly decreasing: {decreasing_ok} (E: {})",
        r1.ell_low,
        r1.ell_high,
        table
            .iter()
            .map(|(l, e)| format!("{l}:{e:.8e}"))
            .collect::<Vec<_>>()
            .join(" "),
    );
    if !decreasing_ok && width_ok && monotone_ok && scaling_ok && limit_ok {
        // The measured threshold ell* ~ 2.75 sits above ell = 1, 2, where the
        // infimum equals the line level and is not attained: the true map
        // ell -> E is constant there, so a strict decrease between those two
        // samples cannot be measured honestly. The assertion is kept as
        // specified; see the decisions ledger for the full analysis.
        println!(
            "note: criterion 10 strict-decrease clause is unattainable for ell < ell* \
             (measured ell* in [{:.4}, {:.4}]); E(1) and E(2) differ only by \
             truncation-stall noise",
            r1.ell_low, r1.ell_high
        );
    }
    conclude(
        10,
        "critical-length",
        width_ok && monotone_ok && scaling_ok && decreasing_ok && limit_ok,
        &detail,
    );
}

#[test]
fn criterion_11_determinism() {
    let bin = env!("CARGO_BIN_EXE_nlsgraph");
    let run = |dir: &std::path::Path, args: &[&str]| {
        let out = std::process::Command::new(bin)
            .args(args)
            .arg("--out-dir")
            .arg(dir)
            .output()
            .expect("binary runs");
        (out.status.code(), out.stdout)
    };
    let mut pass = true;
    let mut detail = String::new();

    // Byte-identical stdout and files across repeated seeded runs.
    for args in [
        vec!["minimize", "--builtin", "line", "--mass", "1", "--seed", "7", "--max-iters", "150"],
        vec!["classify", "--builtin", "pendant", "--ell", "1", "--mass", "1", "--seed", "3"],
    ] {
        let d1 = tempfile::tempdir().unwrap();
        let d2 = tempfile::tempdir().unwrap();
        let (c1, s1) = run(d1.path(), &args);
        let (c2, s2) = run(d2.path(), &args);
        pass &= c1 == c2 && s1 == s2;
        let mut names: Vec<_> = std::fs::read_dir(d1.path())
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        names.sort();
        pass &= !names.is_empty();
        for name in names {
            let a = std::fs::read(d1.path().join(&name)).unwrap();
            let b = std::fs::read(d2.path().join(&name)).unwrap();
            if a != b {
                pass = false;
                detail.push_str(&format!("{name:?} differs; "));
            }
        }
    }

    // Golden bytes for the closed-form levels table.
    let out = std::process::Command::new(bin)
        .args(["levels", "--mass", "1"])
        .output()
        .unwrap();
    let expected = "line               mass = 1.00000000000e0  value = -1.04166666667e-2\n\
                    halfline           mass = 1.00000000000e0  value = -4.16666666667e-2\n\
                    star3_stationary   mass = 1.00000000000e0  value = -4.62962962963e-3\n";
    if out.stdout != expected.as_bytes() {
        pass = false;
        detail.push_str("levels golden differs; ");
    }
    conclude(
        11,
        "determinism",
        pass,
        &if detail.is_empty() { "stdout, report and CSV bytes identical; levels golden matches".into() } else { detail },
    );
}
