//! Mass-constrained minimisation of the NLS energy on a meshed graph:
//! multi-start projected gradient descent with Armijo backtracking and mass
//! renormalisation after every step, stationarity certification through the
//! Euler-Lagrange and Kirchhoff residuals, and existence classification
//! against the line ground-state level.
//!
//! The descent direction is the mass-projected gradient preconditioned by
//! `(K + alpha W)^{-1}`; a plain L2 gradient step would need step sizes of
//! order `h^2` and cannot converge at the mesh resolutions used here. The
//! preconditioner changes neither the stationarity condition nor the
//! monotone-descent certificate (Armijo tests the true energy).

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_forms::{level, soliton, LevelKind};
use crate::error::SolveError;
use crate::graph::MetricGraph;
use crate::mesh::{build_mesh, gn_lower_bound, stiffness_apply, GraphFunction, Mesh, ShiftedSolver};

/// Options for one constrained solve.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Nonlinearity power, in (2, 6).
    pub p: f64,
    pub h_max: f64,
    pub l_inf: f64,
    /// Convergence threshold on the L2 norm of the mass-projected gradient.
    pub tol_grad: f64,
    /// Comparison slack delta for existence classification. `None` means
    /// calibrate from the measured mesh + truncation error of the line level
    /// at the same parameters (times 10).
    pub tol_level: Option<f64>,
    pub max_iters: usize,
    /// Restrict to the named subset of the default starts. `None` = all.
    pub starts: Option<Vec<String>>,
    pub seed: u64,
    /// Boundary-mass fraction above which a stalled-at-the-level solve is
    /// read as mass escaping along the half-lines. `None` scales with the
    /// truncation: a runaway bump sits mid-half-line, so its outer-10% mass
    /// is of order `exp(-mu l_inf / 5)`; the default takes 2% of that.
    pub runaway_threshold: Option<f64>,
}

impl SolveOptions {
    /// Scale-aware defaults: the soliton of mass `mu` has width `O(1/mu)`,
    /// so mesh size and truncation scale accordingly. `l_inf = 80/mu` keeps
    /// the soliton tail error below 1e-8 at `p = 4`.
    pub fn for_mass(mu: f64) -> Self {
        Self {
            p: 4.0,
            h_max: 0.025 / mu,
            l_inf: 80.0 / mu,
            tol_grad: 1e-4 * mu.powf(2.5),
            tol_level: None,
            max_iters: 500,
            starts: None,
            seed: 0,
            runaway_threshold: None,
        }
    }

    /// Effective runaway threshold at mass `mu`.
    pub fn runaway_threshold_for(&self, mu: f64) -> f64 {
        self.runaway_threshold
            .unwrap_or_else(|| 0.02 * (-0.2 * mu * self.l_inf).exp())
    }

    fn validate(&self) -> Result<(), SolveError> {
        for (name, v) in [
            ("h_max", self.h_max),
            ("l_inf", self.l_inf),
            ("tol_grad", self.tol_grad),
        ] {
            if !(v > 0.0) {
                return Err(SolveError::NonpositiveParameter { name, value: v });
            }
        }
        if let Some(d) = self.tol_level {
            if !(d > 0.0) {
                return Err(SolveError::NonpositiveParameter { name: "tol_level", value: d });
            }
        }
        if let Some(t) = self.runaway_threshold {
            if !(t > 0.0) {
                return Err(SolveError::NonpositiveParameter {
                    name: "runaway_threshold",
                    value: t,
                });
            }
        }
        if !(self.p > 2.0 && self.p < 6.0) {
            return Err(SolveError::PowerOutOfRange(self.p));
        }
        Ok(())
    }
}

/// Outcome of one start.
#[derive(Clone, Debug)]
pub struct StartRecord {
    pub name: String,
    pub energy: f64,
    pub iterations: usize,
    pub converged: bool,
    pub grad_norm: f64,
}

/// Result of a multi-start solve.
#[derive(Clone, Debug)]
pub struct MinimizeResult {
    pub best: GraphFunction,
    pub best_report: crate::mesh::EnergyReport,
    pub best_start: String,
    pub records: Vec<StartRecord>,
    pub boundary_mass_fraction: f64,
    pub any_converged: bool,
}

impl MinimizeResult {
    pub fn best_energy(&self) -> f64 {
        self.best_report.total
    }
}

/// The default initialisations: a soliton bump at every edge midpoint and
/// every finite vertex, the normalised constant, and one seeded random
/// positive function. All are non-negative with mass `mu`.
pub fn default_starts(mesh: &Arc<Mesh>, mu: f64, seed: u64) -> Vec<(String, GraphFunction)> {
    let mut out = Vec::new();
    for (ei, em) in mesh.edge_meshes().iter().enumerate() {
        let center = em.nodes[em.nodes.len() / 2];
        let mut u = GraphFunction::radial(mesh, center, |d| soliton(mu, d));
        if u.rescale_mass(mu).is_ok() {
            out.push((format!("bump-edge-{ei:02}"), u));
        }
    }
    let mut vi = 0usize;
    for v in mesh.graph().finite_vertices() {
        let mut u = GraphFunction::radial(mesh, mesh.vertex_node(v), |d| soliton(mu, d));
        if u.rescale_mass(mu).is_ok() {
            out.push((format!("bump-vertex-{vi:02}"), u));
        }
        vi += 1;
    }
    let mut c = GraphFunction::from_values(mesh, vec![1.0; mesh.node_count()]).unwrap();
    if c.rescale_mass(mu).is_ok() {
        out.push(("constant".to_string(), c));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<f64> = (0..mesh.node_count()).map(|_| rng.gen_range(0.1..1.0)).collect();
    let mut r = GraphFunction::from_values(mesh, values).unwrap();
    if r.rescale_mass(mu).is_ok() {
        out.push(("random".to_string(), r));
    }
    out
}

/// Projected-gradient norm and tangent residual `r = g - (g.u/mu) W u`.
fn projected_residual(u: &GraphFunction, g: &GraphFunction, mu: f64) -> (Vec<f64>, f64) {
    let mesh = u.mesh();
    let dot: f64 = g.values().iter().zip(u.values()).map(|(a, b)| a * b).sum();
    let c = dot / mu;
    let mut r = vec![0.0; mesh.node_count()];
    let mut norm_sq = 0.0;
    for i in 0..r.len() {
        if mesh.is_dirichlet(i) {
            continue;
        }
        let w = mesh.weights()[i];
        r[i] = g.values()[i] - c * w * u.values()[i];
        norm_sq += r[i] * r[i] / w;
    }
    (r, norm_sq.sqrt())
}

struct SingleSolve {
    u: GraphFunction,
    energy: f64,
    iterations: usize,
    converged: bool,
    grad_norm: f64,
}

fn solve_single(
    mesh: &Arc<Mesh>,
    solver: &ShiftedSolver,
    start: GraphFunction,
    mu: f64,
    opts: &SolveOptions,
    gn_c: f64,
) -> Result<SingleSolve, SolveError> {
    let p = opts.p;
    let mut u = start;
    u.clamp_nonnegative();
    u.rescale_mass(mu)?;
    let mut e_cur = u.energy(p)?.total;
    let mut iterations = 0;
    let mut converged = false;
    let mut grad_norm = f64::INFINITY;
    for _ in 0..opts.max_iters {
        let g = u.energy_gradient(p)?;
        let (r, norm) = projected_residual(&u, &g, mu);
        grad_norm = norm;
        // Boundedness sanity check (Gagliardo-Nirenberg with the calibrated
        // constant): the constrained energy of every iterate stays above the
        // bound, so descent cannot run to -infinity.
        let bound = gn_lower_bound(mu, u.grad_norm_sq().sqrt(), gn_c, p);
        assert!(
            e_cur >= bound - 1e-9 * (1.0 + e_cur.abs()),
            "energy {e_cur} fell below its lower bound {bound}"
        );
        if norm < opts.tol_grad {
            converged = true;
            break;
        }
        let d = solver.solve(&r);
        let slope: f64 = d.iter().zip(&r).map(|(a, b)| a * b).sum();
        let mut tau = 1.0;
        let mut accepted = None;
        while tau >= 1e-14 {
            let vals: Vec<f64> =
                u.values().iter().zip(&d).map(|(ui, di)| (ui - tau * di).abs()).collect();
            let mut cand = GraphFunction::from_values(mesh, vals)?;
            if cand.rescale_mass(mu).is_err() {
                tau *= 0.5;
                continue;
            }
            let e_new = cand.energy(p)?.total;
            if e_new <= e_cur - 1e-4 * tau * slope {
                accepted = Some((cand, e_new));
                break;
            }
            tau *= 0.5;
        }
        match accepted {
            Some((cand, e_new)) => {
                debug_assert!(e_new <= e_cur + 1e-13 * (1.0 + e_cur.abs()));
                debug_assert!((cand.mass() - mu).abs() <= 1e-12 * mu.max(1.0));
                u = cand;
                e_cur = e_new;
                iterations += 1;
            }
            None => break, // line search exhausted: stationary to round-off
        }
    }
    Ok(SingleSolve { u, energy: e_cur, iterations, converged, grad_norm })
}

/// Multi-start constrained minimisation on graph `g` at mass `mu`.
pub fn minimize(g: &MetricGraph, mu: f64, opts: &SolveOptions) -> Result<MinimizeResult, SolveError> {
    if !(mu > 0.0) {
        return Err(SolveError::NonpositiveParameter { name: "mass", value: mu });
    }
    opts.validate()?;
    let mesh = build_mesh(g, opts.h_max, opts.l_inf)?;
    minimize_on_mesh(&mesh, mu, opts)
}

pub fn minimize_on_mesh(
    mesh: &Arc<Mesh>,
    mu: f64,
    opts: &SolveOptions,
) -> Result<MinimizeResult, SolveError> {
    let alpha = 0.25 * mu * mu + 1e-2;
    let solver = ShiftedSolver::new(mesh, alpha)?;
    let gn_c = calibrated_gn_constant(opts.p);
    let mut starts = default_starts(mesh, mu, opts.seed);
    if let Some(names) = &opts.starts {
        starts.retain(|(n, _)| names.iter().any(|m| m == n));
        if starts.is_empty() {
            return Err(SolveError::BadInput("start filter matched nothing".into()));
        }
    }
    let mut records = Vec::new();
    let mut solved: Vec<(String, SingleSolve)> = Vec::new();
    for (name, s0) in starts {
        let s = solve_single(mesh, &solver, s0, mu, opts, gn_c)?;
        records.push(StartRecord {
            name: name.clone(),
            energy: s.energy,
            iterations: s.iterations,
            converged: s.converged,
            grad_norm: s.grad_norm,
        });
        solved.push((name, s));
    }
    let any_converged = solved.iter().any(|(_, s)| s.converged);
    // Deterministic selection: lowest energy among converged starts when any
    // converged, ties broken by start name.
    let best_idx = solved
        .iter()
        .enumerate()
        .filter(|(_, (_, s))| !any_converged || s.converged)
        .min_by(|(_, (na, sa)), (_, (nb, sb))| {
            sa.energy
                .partial_cmp(&sb.energy)
                .unwrap()
                .then_with(|| na.cmp(nb))
        })
        .map(|(i, _)| i)
        .expect("at least one start");
    let (best_start, best) = solved.swap_remove(best_idx);
    let best_report = best.u.energy(opts.p)?;
    let boundary_mass_fraction = best.u.boundary_mass_fraction(0.1);
    Ok(MinimizeResult {
        best: best.u,
        best_report,
        best_start,
        records,
        boundary_mass_fraction,
        any_converged,
    })
}

/// Stationarity certificate: L2 residual of `Delta u + |u|^{p-2} u - omega u`
/// (with `omega` from the energy report) plus the Kirchhoff residual.
#[derive(Clone, Copy, Debug)]
pub struct StationarityReport {
    pub residual_l2: f64,
    pub kirchhoff_residual: f64,
    pub omega: f64,
}

pub fn certify_stationary(
    u: &GraphFunction,
    p: f64,
    tol: f64,
) -> Result<(bool, StationarityReport), SolveError> {
    let mesh = u.mesh();
    let report = u.energy(p)?;
    let ku = stiffness_apply(mesh, u.values());
    let mut sq = 0.0;
    for i in 0..mesh.node_count() {
        if mesh.is_dirichlet(i) {
            continue;
        }
        let w = mesh.weights()[i];
        let v = u.values()[i];
        let r = ku[i] - w * v.abs().powf(p - 2.0) * v + report.omega * w * v;
        sq += r * r / w;
    }
    let rep = StationarityReport {
        residual_l2: sq.sqrt(),
        kirchhoff_residual: report.kirchhoff_residual,
        omega: report.omega,
    };
    Ok((rep.residual_l2 < tol && rep.kirchhoff_residual < tol, rep))
}

/// Existence classification outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Existence {
    Exists,
    LikelyNonexistent,
    Inconclusive,
}

impl Existence {
    pub fn exit_code(&self) -> i32 {
        match self {
            Existence::Exists => 0,
            Existence::LikelyNonexistent => 1,
            Existence::Inconclusive => 2,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Existence::Exists => "EXISTS",
            Existence::LikelyNonexistent => "LIKELY_NONEXISTENT",
            Existence::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Verdict on attainment of the constrained infimum.
#[derive(Clone, Debug)]
pub struct ExistenceVerdict {
    pub status: Existence,
    /// Best energy minus the line reference level.
    pub gap: f64,
    pub delta: f64,
    pub reference_level: f64,
    /// True when the reference level came from a numerical line solve
    /// (`p != 4`) rather than the closed form.
    pub reference_derived: bool,
    pub certificate: Option<GraphFunction>,
    pub boundary_mass_fraction: f64,
    /// Energies of the base and the doubled-truncation solves, when run.
    pub base_energy: f64,
    pub doubled_energy: Option<f64>,
    /// True when the verdict came from the bubble-tower structural override
    /// or graph compactness rather than the energy comparison.
    pub structural: bool,
}

/// Reference level of the line at mass `mu`: closed form for `p = 4`,
/// otherwise a cached numerical line minimisation (derived value).
pub fn reference_line_level(mu: f64, opts: &SolveOptions) -> Result<f64, SolveError> {
    if opts.p == 4.0 {
        return Ok(level(LevelKind::Line, mu)?.value);
    }
    static CACHE: OnceLock<Mutex<BTreeMap<(u64, u64, u64, u64), f64>>> = OnceLock::new();
    let key = (mu.to_bits(), opts.p.to_bits(), opts.h_max.to_bits(), opts.l_inf.to_bits());
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Ok(*v);
    }
    let mut line_opts = opts.clone();
    line_opts.starts = Some(vec!["bump-vertex-00".into()]);
    line_opts.tol_level = Some(1.0); // unused in a plain solve
    let res = minimize(&crate::graph::builders::line(), mu, &line_opts)?;
    let v = res.best_energy();
    cache.lock().unwrap().insert(key, v);
    Ok(v)
}

/// Calibrated comparison slack: ten times the measured mesh + truncation
/// error of the line level at the same parameters. The truncation part is
/// probed with a soliton placed halfway down a half-line (with its Dirichlet
/// image correction), the farthest a state can run on the truncated mesh.
pub fn calibrate_delta(mu: f64, opts: &SolveOptions) -> Result<f64, SolveError> {
    static CACHE: OnceLock<Mutex<BTreeMap<(u64, u64, u64, u64), f64>>> = OnceLock::new();
    let key = (mu.to_bits(), opts.p.to_bits(), opts.h_max.to_bits(), opts.l_inf.to_bits());
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Ok(*v);
    }
    let delta = if opts.p == 4.0 {
        let line = crate::graph::builders::line();
        let mesh = build_mesh(&line, opts.h_max, opts.l_inf)?;
        let reference = level(LevelKind::Line, mu)?.value;
        let centred = GraphFunction::interpolate(&mesh, |e, s| {
            soliton(mu, if e == 0 { s } else { -s })
        });
        let e_mesh = (centred.energy(opts.p)?.total - reference).abs();
        let l = opts.l_inf;
        let shifted = GraphFunction::interpolate(&mesh, |e, s| {
            let x = if e == 0 { s } else { -s };
            soliton(mu, x - 0.5 * l) - soliton(mu, x - 1.5 * l)
        });
        let mut shifted = shifted;
        shifted.clamp_nonnegative();
        shifted.rescale_mass(mu)?;
        let e_trunc = (shifted.energy(opts.p)?.total - reference).max(0.0);
        10.0 * (e_mesh + e_trunc)
    } else {
        // No closed form: Richardson-style probes from cached line solves.
        let e_full = reference_line_level(mu, opts)?;
        let mut coarse = opts.clone();
        coarse.h_max = 2.0 * opts.h_max;
        let e_coarse = reference_line_level(mu, &coarse)?;
        let mut short = opts.clone();
        short.l_inf = 0.5 * opts.l_inf;
        let e_short = reference_line_level(mu, &short)?;
        10.0 * ((e_full - e_coarse).abs() + (e_full - e_short).abs()) + 1e-12
    };
    cache.lock().unwrap().insert(key, delta);
    Ok(delta)
}

/// Decides attainment of the ground state on `g` at mass `mu`:
/// an energy strictly below the line level certifies existence; a stall at
/// the line level that survives doubling the truncation while mass sits at
/// the artificial boundary is read as a runaway minimising sequence.
pub fn classify_existence(
    g: &MetricGraph,
    mu: f64,
    opts: &SolveOptions,
) -> Result<ExistenceVerdict, SolveError> {
    if !(mu > 0.0) {
        return Err(SolveError::NonpositiveParameter { name: "mass", value: mu });
    }
    opts.validate()?;
    let reference = reference_line_level(mu, opts)?;
    let delta = match opts.tol_level {
        Some(d) => d,
        None => calibrate_delta(mu, opts)?,
    };

    if g.is_bubble_tower(1e-9) {
        // Structural override: the cut-and-pasted soliton attains the line
        // level exactly, which the energy test alone cannot distinguish from
        // non-attainment.
        let arcs = g.bubble_arcs(1e-9).unwrap();
        let pairs: Vec<(f64, f64)> = arcs.iter().map(|&a| (a, a)).collect();
        let cert = crate::surgery::bubble_tower_soliton(mu, &pairs, opts.h_max, opts.l_inf)?;
        let e = cert.energy(opts.p)?.total;
        return Ok(ExistenceVerdict {
            status: Existence::Exists,
            gap: e - reference,
            delta,
            reference_level: reference,
            reference_derived: opts.p != 4.0,
            boundary_mass_fraction: cert.boundary_mass_fraction(0.1),
            certificate: Some(cert),
            base_energy: e,
            doubled_energy: None,
            structural: true,
        });
    }

    let res1 = minimize(g, mu, opts)?;
    let gap1 = res1.best_energy() - reference;

    if g.is_compact() {
        // Compact graphs always attain their minimum; the comparison with the
        // line level does not apply.
        return Ok(ExistenceVerdict {
            status: Existence::Exists,
            gap: gap1,
            delta,
            reference_level: reference,
            reference_derived: opts.p != 4.0,
            boundary_mass_fraction: 0.0,
            certificate: Some(res1.best),
            base_energy: gap1 + reference,
            doubled_energy: None,
            structural: true,
        });
    }

    if gap1 <= -delta {
        return Ok(ExistenceVerdict {
            status: Existence::Exists,
            gap: gap1,
            delta,
            reference_level: reference,
            reference_derived: opts.p != 4.0,
            boundary_mass_fraction: res1.boundary_mass_fraction,
            base_energy: res1.best_energy(),
            certificate: Some(res1.best),
            doubled_energy: None,
            structural: false,
        });
    }

    let mut wide = opts.clone();
    wide.l_inf = 2.0 * opts.l_inf;
    let res2 = minimize(g, mu, &wide)?;
    let gap2 = res2.best_energy() - reference;
    if gap2 <= -delta {
        return Ok(ExistenceVerdict {
            status: Existence::Exists,
            gap: gap2,
            delta,
            reference_level: reference,
            reference_derived: opts.p != 4.0,
            boundary_mass_fraction: res2.boundary_mass_fraction,
            base_energy: res1.best_energy(),
            doubled_energy: Some(res2.best_energy()),
            certificate: Some(res2.best),
            structural: false,
        });
    }

    let drop = res1.best_energy() - res2.best_energy();
    let bmf = res1.boundary_mass_fraction.max(res2.boundary_mass_fraction);
    let gap = gap1.min(gap2);
    let status = if drop < delta && bmf > opts.runaway_threshold_for(mu) && gap.abs() <= delta {
        Existence::LikelyNonexistent
    } else {
        Existence::Inconclusive
    };
    Ok(ExistenceVerdict {
        status,
        gap,
        delta,
        reference_level: reference,
        reference_derived: opts.p != 4.0,
        boundary_mass_fraction: bmf,
        certificate: None,
        base_energy: res1.best_energy(),
        doubled_energy: Some(res2.best_energy()),
        structural: false,
    })
}

/// Gagliardo-Nirenberg constant calibrated on a deterministic corpus
/// (half-solitons are the extremal profiles; random functions and the
/// soliton fill in the bulk), inflated by 10% against sampling noise.
pub fn calibrated_gn_constant(p: f64) -> f64 {
    static CACHE: OnceLock<Mutex<BTreeMap<u64, f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&p.to_bits()) {
        return *v;
    }
    let mut ratio_max: f64 = 0.0;
    let mut consider = |u: &GraphFunction| {
        let m = u.mass();
        let g = u.grad_norm_sq().sqrt();
        let lp = u.lp_norm_pow(p);
        if m > 0.0 && g > 0.0 {
            let r = lp / (m.powf((p + 2.0) / 4.0) * g.powf((p - 2.0) / 2.0));
            ratio_max = ratio_max.max(r);
        }
    };
    let half = build_mesh(&crate::graph::builders::halfline(), 0.01, 60.0).unwrap();
    for mu in [0.5, 1.0, 2.0] {
        consider(&GraphFunction::interpolate(&half, |_, s| soliton(2.0 * mu, s)));
    }
    let line = build_mesh(&crate::graph::builders::line(), 0.01, 60.0).unwrap();
    consider(&GraphFunction::interpolate(&line, |e, s| {
        soliton(1.0, if e == 0 { s } else { -s })
    }));
    let mesh = build_mesh(&crate::graph::builders::star(3), 0.05, 20.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..20 {
        let values: Vec<f64> = (0..mesh.node_count()).map(|_| rng.gen_range(0.0..1.0)).collect();
        consider(&GraphFunction::from_values(&mesh, values).unwrap());
    }
    // Convert the L^p-interpolation constant into the energy-bound constant:
    // E >= 1/2 g^2 (1 - (2 C / p) mu^{(p+2)/4} g^{(p-6)/2}).
    let c = 1.1 * ratio_max * 2.0 / p;
    cache.lock().unwrap().insert(p.to_bits(), c);
    c
}
