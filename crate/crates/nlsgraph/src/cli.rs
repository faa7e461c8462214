//! Command-line front end: graph files in, deterministic reports and CSV out.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nlsgraph::closed_forms::{level, LevelKind};
use nlsgraph::graph::{self, builders, MetricGraph};
use nlsgraph::minimize::{classify_existence, minimize, SolveOptions};
use nlsgraph::report::{self, kv, num};
use nlsgraph::surgery;

#[derive(Parser)]
#[command(
    name = "nlsgraph",
    about = "Ground-state analysis for the focusing NLS energy on metric graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Args)]
struct GraphArgs {
    /// Graph file (see the README for the line-based format).
    #[arg(long, conflicts_with = "builtin")]
    graph: Option<PathBuf>,
    /// Built-in graph: line, halfline, star3, star4, pendant, gl,
    /// tower1, tower2, tower3, showcase.
    #[arg(long)]
    builtin: Option<String>,
    /// Pendant length for the `pendant` and `gl` builtins.
    #[arg(long, default_value_t = 1.0)]
    ell: f64,
}

impl GraphArgs {
    fn load(&self) -> Result<(MetricGraph, String), String> {
        if let Some(path) = &self.graph {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let g = graph::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            return Ok((g, path.display().to_string()));
        }
        let name = self.builtin.as_deref().unwrap_or("line");
        let g = match name {
            "line" => builders::line(),
            "halfline" => builders::halfline(),
            "star3" => builders::star(3),
            "star4" => builders::star(4),
            "pendant" => builders::line_with_pendant(self.ell),
            "gl" => builders::gl(self.ell),
            "tower1" => builders::bubble_tower(&[2.0]),
            "tower2" => builders::bubble_tower(&[2.0, 1.0]),
            "tower3" => builders::bubble_tower(&[2.0, 1.0, 0.5]),
            "showcase" => builders::showcase(),
            other => return Err(format!("unknown builtin graph '{other}'")),
        };
        let label = if matches!(name, "pendant" | "gl") {
            format!("{name}:{}", self.ell)
        } else {
            name.to_string()
        };
        Ok((g, label))
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Constraint mass (the squared L2 norm).
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    /// Nonlinearity power in (2, 6).
    #[arg(long, default_value_t = 4.0)]
    p: f64,
    /// Mesh size; defaults to 0.025 / mass.
    #[arg(long)]
    h_max: Option<f64>,
    /// Half-line truncation length; defaults to 40 / mass.
    #[arg(long)]
    l_inf: Option<f64>,
    /// Projected-gradient convergence threshold.
    #[arg(long)]
    tol_grad: Option<f64>,
    /// Comparison slack delta; calibrated from the mesh when omitted.
    #[arg(long)]
    tol_level: Option<f64>,
    #[arg(long, default_value_t = 500)]
    max_iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Runaway boundary-mass threshold; calibrated when omitted.
    #[arg(long)]
    threshold: Option<f64>,
}

impl SolveArgs {
    fn options(&self) -> SolveOptions {
        let mut o = SolveOptions::for_mass(self.mass);
        o.p = self.p;
        if let Some(h) = self.h_max {
            o.h_max = h;
        }
        if let Some(l) = self.l_inf {
            o.l_inf = l;
        }
        if let Some(t) = self.tol_grad {
            o.tol_grad = t;
        }
        o.tol_level = self.tol_level;
        o.max_iters = self.max_iters;
        o.seed = self.seed;
        o.runaway_threshold = self.threshold;
        o
    }
}

#[derive(Args)]
struct OutArgs {
    /// Output directory for report and CSV files
    /// (default: $NLSGRAPH_OUT_DIR or the working directory).
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

impl OutArgs {
    fn dir(&self) -> PathBuf {
        self.out_dir
            .clone()
            .or_else(|| std::env::var_os("NLSGRAPH_OUT_DIR").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."))
    }

    fn write(&self, name: &str, contents: &str) -> Result<PathBuf, String> {
        let dir = self.dir();
        std::fs::create_dir_all(&dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
        let path = dir.join(name);
        std::fs::write(&path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        Ok(path)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CompetitorKind {
    Pendant,
    Gl,
    Tower,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a graph and report its topological classification.
    Check {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the closed-form reference energy levels at a mass.
    Levels {
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Minimise the constrained energy and write the solve report + profile.
    Minimize {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        solve: SolveArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Classify ground-state existence (exit code 0 = exists,
    /// 1 = likely nonexistent, 2 = inconclusive).
    Classify {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        solve: SolveArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Build and evaluate a cut-and-paste competitor construction.
    Competitor {
        #[arg(long, value_enum)]
        kind: CompetitorKind,
        /// Pendant length (pendant and gl kinds).
        #[arg(long, default_value_t = 1.0)]
        ell: f64,
        /// Extended pendant length (gl kind).
        #[arg(long)]
        ell_prime: Option<f64>,
        /// Bubble arc lengths, base to top (tower kind).
        #[arg(long, value_delimiter = ',')]
        arcs: Vec<f64>,
        #[command(flatten)]
        solve: SolveArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Bisect the pendant length of the three-half-line graph for the
    /// existence transition.
    CriticalLength {
        #[command(flatten)]
        solve: SolveArgs,
        /// Target bracket width.
        #[arg(long, default_value_t = 1e-2)]
        width: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Minimised energies over a list of pendant lengths.
    LimitTable {
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, value_delimiter = ',', default_value = "1,2,5,10,50")]
        ells: Vec<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
}

pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let line = e.to_string().lines().next().unwrap_or("argument error").to_string();
            eprintln!("error: {}", line.trim_start_matches("error: "));
            return 3;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            3
        }
    }
}

fn kv_line(format: Format, key: &str, value: &str) -> String {
    match format {
        Format::Text => format!("{key} = {value}\n"),
        Format::Csv => format!("{key},{value}\n"),
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Check { graph, format } => {
            let (g, _) = graph.load()?;
            let violations = g.validate();
            let mut out = String::new();
            out.push_str(&kv_line(
                format,
                "valid",
                if violations.is_empty() { "true" } else { "false" },
            ));
            for v in &violations {
                out.push_str(&kv_line(format, "violation", &v.to_string()));
            }
            if violations.is_empty() {
                let (h, witness) = g.check_assumption_h();
                out.push_str(&kv_line(format, "assumption_h", if h { "true" } else { "false" }));
                if let Some(e) = witness {
                    out.push_str(&kv_line(format, "assumption_h_witness", &format!("e{e}")));
                }
                let trails = g.check_assumption_h_trails();
                out.push_str(&kv_line(
                    format,
                    "assumption_h_trails",
                    if trails { "true" } else { "false" },
                ));
                let tower = g.is_bubble_tower(1e-9);
                out.push_str(&kv_line(format, "bubble_tower", if tower { "true" } else { "false" }));
                out.push_str(&kv_line(format, "halflines", &g.halfline_count().to_string()));
            }
            print!("{out}");
            Ok(0)
        }
        Command::Levels { mass, format } => {
            let mut out = String::new();
            if format == Format::Csv {
                out.push_str("kind,mass,value\n");
            }
            for (kind, name) in [
                (LevelKind::Line, "line"),
                (LevelKind::HalfLine, "halfline"),
                (LevelKind::Star3Stationary, "star3_stationary"),
            ] {
                let l = level(kind, mass).map_err(|e| e.to_string())?;
                match format {
                    Format::Text => {
                        out.push_str(&format!("{name:<18} mass = {}  value = {}\n", num(mass), num(l.value)))
                    }
                    Format::Csv => out.push_str(&format!("{name},{},{}\n", num(mass), num(l.value))),
                }
            }
            print!("{out}");
            Ok(0)
        }
        Command::Minimize { graph, solve, out } => {
            let (g, label) = graph.load()?;
            let opts = solve.options();
            let res = minimize(&g, solve.mass, &opts).map_err(|e| e.to_string())?;
            let text = report::solve_report(&res, &label, solve.mass, opts.p);
            out.write("solve_report.txt", &text)?;
            out.write("profile.csv", &report::profile_csv(&res.best))?;
            print!("{text}");
            Ok(0)
        }
        Command::Classify { graph, solve, out } => {
            let (g, label) = graph.load()?;
            let opts = solve.options();
            let v = classify_existence(&g, solve.mass, &opts).map_err(|e| e.to_string())?;
            let mut text = report::verdict_report(&v, &label, solve.mass);
            // The topological route next to the numerical verdict: under the
            // trail condition nonexistence is rigorous (bubble towers aside),
            // while the numerics alone only provide evidence.
            let (h, _) = g.check_assumption_h();
            kv(&mut text, "assumption_h", if h { "true" } else { "false" });
            kv(
                &mut text,
                "bubble_tower",
                if g.is_bubble_tower(1e-9) { "true" } else { "false" },
            );
            out.write("verdict.txt", &text)?;
            if let Some(cert) = &v.certificate {
                out.write("certificate.csv", &report::profile_csv(cert))?;
            }
            print!("{text}");
            Ok(v.status.exit_code())
        }
        Command::Competitor { kind, ell, ell_prime, arcs, solve, out } => {
            let opts = solve.options();
            let mu = solve.mass;
            match kind {
                CompetitorKind::Pendant => {
                    let c = surgery::pendant_competitor(mu, ell, opts.h_max, opts.l_inf)
                        .map_err(|e| e.to_string())?;
                    let mut text = String::new();
                    kv(&mut text, "construction", "pendant");
                    kv(&mut text, "mass", num(mu));
                    kv(&mut text, "ell", num(ell));
                    kv(&mut text, "energy", num(c.report.total));
                    kv(&mut text, "margin", num(c.margin));
                    kv(&mut text, "margin_exact", num(c.margin_exact));
                    kv(&mut text, "mass_check", num(c.report.mass));
                    out.write("competitor_report.txt", &text)?;
                    out.write("competitor.csv", &report::profile_csv(&c.state))?;
                    print!("{text}");
                }
                CompetitorKind::Gl => {
                    let lp = ell_prime.ok_or("--ell-prime is required for the gl competitor")?;
                    let psi = surgery::gl_ground_state(mu, ell, &opts).map_err(|e| e.to_string())?;
                    let c = surgery::gl_competitor(&psi, lp).map_err(|e| e.to_string())?;
                    let mut text = String::new();
                    kv(&mut text, "construction", "gl");
                    kv(&mut text, "mass", num(mu));
                    kv(&mut text, "ell", num(ell));
                    kv(&mut text, "ell_prime", num(lp));
                    kv(&mut text, "exact_energy_old", num(c.exact_energy_old));
                    kv(&mut text, "exact_energy_new", num(c.exact_energy_new));
                    kv(&mut text, "kinetic_gain", num(c.kinetic_gain));
                    kv(&mut text, "energy", num(c.report.total));
                    kv(&mut text, "mass_check", num(c.report.mass));
                    out.write("competitor_report.txt", &text)?;
                    out.write("competitor.csv", &report::profile_csv(&c.state))?;
                    print!("{text}");
                }
                CompetitorKind::Tower => {
                    if arcs.is_empty() {
                        return Err("--arcs is required for the tower competitor".into());
                    }
                    let pairs: Vec<(f64, f64)> = arcs.iter().map(|&a| (a, a)).collect();
                    let u = surgery::bubble_tower_soliton(mu, &pairs, opts.h_max, opts.l_inf)
                        .map_err(|e| e.to_string())?;
                    let rep = u.energy(opts.p).map_err(|e| e.to_string())?;
                    let mut text = String::new();
                    kv(&mut text, "construction", "tower");
                    kv(&mut text, "mass", num(mu));
                    kv(&mut text, "energy", num(rep.total));
                    kv(&mut text, "kirchhoff_residual", num(rep.kirchhoff_residual));
                    kv(&mut text, "mass_check", num(rep.mass));
                    out.write("competitor_report.txt", &text)?;
                    out.write("competitor.csv", &report::profile_csv(&u))?;
                    print!("{text}");
                }
            }
            Ok(0)
        }
        Command::CriticalLength { solve, width, out } => {
            let opts = solve.options();
            let r = surgery::critical_length(solve.mass, &opts, width).map_err(|e| e.to_string())?;
            let mut csv = String::from("ell,best_energy,verdict\n");
            for p in &r.probes {
                csv.push_str(&format!("{},{},{}\n", num(p.ell), num(p.energy), p.verdict.as_str()));
            }
            out.write("critical_length.csv", &csv)?;
            let mut text = String::new();
            kv(&mut text, "mass", num(solve.mass));
            kv(&mut text, "ell_low", num(r.ell_low));
            kv(&mut text, "ell_high", num(r.ell_high));
            kv(&mut text, "ell_star", num(r.ell_star));
            kv(&mut text, "probes", r.probes.len().to_string());
            kv(&mut text, "undecided_probes", r.undecided_probes.to_string());
            print!("{text}");
            Ok(0)
        }
        Command::LimitTable { solve, ells, out } => {
            let opts = solve.options();
            let rows = surgery::gl_limit_check(solve.mass, &ells, &opts).map_err(|e| e.to_string())?;
            let mut csv = String::from("ell,best_energy\n");
            for (ell, e) in &rows {
                csv.push_str(&format!("{},{}\n", num(*ell), num(*e)));
            }
            out.write("limit_table.csv", &csv)?;
            print!("{csv}");
            Ok(0)
        }
    }
}
