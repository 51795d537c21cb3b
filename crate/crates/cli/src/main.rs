use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use steklov::analysis::{
    convergence_study, invariant_suite, reports_to_csv, reports_to_json, ExactSolution, Selection,
    StudyOptions, StudyProblem, TolProfile, TABLE_POINTS,
};
use steklov::boundary::{integrate_boundary_xy, BoundaryFunction, BoundarySpec, Builtin};
use steklov::quadrature::Tolerance;
use steklov::solvers::{format_g, solve, ProblemKind, SteklovApproximation};
use steklov::spectrum::{build_spectrum, load_cache, write_cache, SelectionPolicy, Spectrum};
use steklov::tables::{parse_which, run_table, runs_to_csv, table_aspect, TableOptions};
use steklov::Rectangle;

/// Steklov eigenfunction expansions for Laplace problems on (-1, 1) x (-h, h).
#[derive(Parser)]
#[command(name = "steklov", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute eigenvalues; CSV listing or JSON cache.
    Spectrum(SpectrumArgs),
    /// Solve a boundary value problem and evaluate the approximation.
    Solve(SolveArgs),
    /// Reproduce the reference tables.
    Tables(TablesArgs),
    /// Run the invariant suite on a spectrum.
    Check(CheckArgs),
    /// Solution and error on a uniform grid.
    Grid(SolveArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Dirichlet,
    Robin,
    Neumann,
}

#[derive(Args)]
struct SelectionArgs {
    /// Aspect ratio, 0 < h <= 1.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    h: f64,
    /// Expansion size: M roots per family, or 8M modes with --global.
    #[arg(long = "M", default_value_t = 5)]
    m: usize,
    /// M roots of every family (the default); the value overrides --M.
    #[arg(long, num_args = 0..=1, conflicts_with = "global")]
    per_family: Option<Option<usize>>,
    /// Modes of smallest eigenvalue; the value is the number of nonconstant modes.
    #[arg(long, num_args = 0..=1)]
    global: Option<Option<usize>>,
}

impl SelectionArgs {
    fn rect(&self) -> anyhow::Result<Rectangle> {
        Ok(Rectangle::new(self.h)?)
    }

    fn policy(&self, kind: ProblemKind) -> SelectionPolicy {
        match (self.per_family, self.global) {
            (_, Some(Some(n))) => SelectionPolicy::Global(n),
            (_, Some(None)) => Selection::Global.policy(self.m, kind),
            (Some(Some(m)), None) => SelectionPolicy::PerFamily(m),
            _ => SelectionPolicy::PerFamily(self.m),
        }
    }

    fn selection(&self) -> Selection {
        if self.global.is_some() {
            Selection::Global
        } else {
            Selection::PerFamily
        }
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    sel: SelectionArgs,
    /// Number of nonconstant modes of smallest eigenvalue (overrides the selection flags).
    #[arg(long)]
    count: Option<usize>,
    /// csv: index,family,nu,delta listing; json: reloadable cache.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    sel: SelectionArgs,
    #[arg(long, value_enum, default_value_t = Kind::Dirichlet)]
    kind: Kind,
    /// Robin coefficient.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    b: f64,
    /// Boundary data: builtin:NAME, expr:TEXT, file:PATH (boundary-spec JSON) or inline JSON.
    #[arg(long)]
    g: String,
    /// Grid points per axis.
    #[arg(long)]
    grid: Option<usize>,
    /// `paper` for the five table points, or a file of x,y lines.
    #[arg(long)]
    points: Option<String>,
    #[arg(long, default_value_t = 1e-10)]
    abstol: f64,
    #[arg(long, default_value_t = 1e-6)]
    reltol: f64,
    /// Split off the bilinear corner interpolant first (Dirichlet only).
    #[arg(long)]
    corner_reduction: bool,
    /// Neumann compatibility tolerance on the boundary mean.
    #[arg(long)]
    mean_tol: Option<f64>,
    /// Load the spectrum from a JSON cache instead of building it.
    #[arg(long)]
    spectrum: Option<PathBuf>,
    /// Include the Steklov coefficients in the output.
    #[arg(long)]
    coefficients: bool,
    /// Write an error report (needs a builtin with a closed-form solution); .json or .csv.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TablesArgs {
    /// Tables to run, e.g. 1-3,11.
    #[arg(long, default_value = "all")]
    which: String,
    /// Keep only tables computed at this aspect ratio.
    #[arg(long)]
    h: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    sel: SelectionArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Load the spectrum from a JSON cache instead of building it.
    #[arg(long)]
    spectrum: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Errors in the command line itself, reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn problem_kind(kind: Kind, b: f64) -> anyhow::Result<ProblemKind> {
    Ok(match kind {
        Kind::Dirichlet => ProblemKind::Dirichlet,
        Kind::Neumann => ProblemKind::Neumann,
        Kind::Robin => ProblemKind::robin(b)?,
    })
}

fn boundary_spec(arg: &str) -> anyhow::Result<BoundarySpec> {
    if let Some(path) = arg.strip_prefix("file:") {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read boundary spec {path}: {e}")))?;
        return Ok(serde_json::from_str(&text).map_err(steklov::Error::from)?);
    }
    Ok(BoundarySpec::from_cli(arg)?)
}

fn read_points(arg: &str) -> anyhow::Result<Vec<(f64, f64)>> {
    if arg == "paper" {
        return Ok(TABLE_POINTS.to_vec());
    }
    let text = fs::read_to_string(arg)
        .map_err(|e| usage(format!("cannot read points file {arg}: {e}")))?;
    let mut pts = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line
            .split([',', ' ', '\t'])
            .filter(|s| !s.is_empty())
            .map(str::parse::<f64>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(x)), Some(Ok(y)), None) => pts.push((x, y)),
            // a header line
            _ if n == 0 => continue,
            _ => bail!(usage(format!("{arg}:{}: expected `x,y`", n + 1))),
        }
    }
    Ok(pts)
}

fn obtain_spectrum(
    cache: Option<&Path>,
    sel: &SelectionArgs,
    kind: ProblemKind,
) -> anyhow::Result<Spectrum> {
    match cache {
        Some(p) => {
            let s = load_cache(p)?;
            if s.h() != sel.h {
                bail!(usage(format!(
                    "cache is for h = {}, not h = {}",
                    s.h(),
                    sel.h
                )));
            }
            Ok(s)
        }
        None => Ok(build_spectrum(&sel.rect()?, sel.policy(kind))?),
    }
}

/// Closed-form solution when the data is a builtin whose problem type matches `kind`.
fn exact_for(
    spec: &BoundarySpec,
    kind: ProblemKind,
    rect: &Rectangle,
) -> anyhow::Result<Option<(ExactSolution, f64)>> {
    let BoundarySpec::Builtin { builtin } = spec else {
        return Ok(None);
    };
    let b = Builtin::from_name(builtin)?;
    let matches = matches!(
        (b, kind),
        (
            Builtin::F1 | Builtin::F2 | Builtin::F3,
            ProblemKind::Dirichlet
        ) | (Builtin::Bd1 | Builtin::Bd2, ProblemKind::Neumann)
            | (Builtin::Bd3, ProblemKind::Robin { .. })
    );
    if !matches {
        return Ok(None);
    }
    let e = ExactSolution::for_builtin(b);
    // Neumann solutions are normalized to zero boundary mean
    let shift = if kind == ProblemKind::Neumann {
        integrate_boundary_xy(rect, |x, y| e.value(x, y), Tolerance::new(1e-15, 1e-12))?.value
            / rect.perimeter()
    } else {
        0.0
    };
    Ok(Some((e, shift)))
}

fn cmd_spectrum(a: &SpectrumArgs) -> anyhow::Result<()> {
    let rect = a.sel.rect()?;
    let policy = match a.count {
        Some(n) => SelectionPolicy::Global(n),
        None => a.sel.policy(ProblemKind::Dirichlet),
    };
    let spec = build_spectrum(&rect, policy)?;
    let text = match a.format {
        Format::Json => write_cache(&spec)?,
        Format::Csv => {
            let mut s = String::from("index,family,nu,delta\n");
            for m in spec.modes() {
                let _ = writeln!(s, "{},{},{:.16e},{:.16e}", m.index, m.family, m.nu, m.delta);
            }
            s
        }
    };
    emit(a.out.as_deref(), &text)
}

struct Solved {
    approx: SteklovApproximation,
    exact: Option<(ExactSolution, f64)>,
    kind: ProblemKind,
    data: BoundaryFunction,
    spec: BoundarySpec,
}

fn solve_from(a: &SolveArgs) -> anyhow::Result<Solved> {
    let kind = problem_kind(a.kind, a.b)?;
    if a.corner_reduction && kind != ProblemKind::Dirichlet {
        bail!(usage(
            "--corner-reduction only applies to Dirichlet problems"
        ));
    }
    let bspec = boundary_spec(&a.g)?;
    let spectrum = obtain_spectrum(a.spectrum.as_deref(), &a.sel, kind)?;
    let rect = *spectrum.rect();
    let data = bspec.build(&rect, a.b)?;
    let tol = Tolerance::new(a.abstol, a.reltol);
    let approx = solve(kind, &data, &spectrum, a.corner_reduction, a.mean_tol, tol)?;
    let exact = exact_for(&bspec, kind, &rect)?;
    Ok(Solved {
        approx,
        exact,
        kind,
        data,
        spec: bspec,
    })
}

fn points_csv(s: &Solved, pts: &[(f64, f64)]) -> anyhow::Result<(String, Vec<serde_json::Value>)> {
    let mut csv = String::from(if s.exact.is_some() {
        "x,y,u,exact,abs_error\n"
    } else {
        "x,y,u\n"
    });
    let mut rows = Vec::new();
    for &(x, y) in pts {
        let u = s.approx.eval(x, y)?;
        match s.exact {
            Some((e, shift)) => {
                let v = e.value(x, y) - shift;
                let _ = writeln!(
                    csv,
                    "{x},{y},{},{},{}",
                    format_g(u, 12),
                    format_g(v, 12),
                    format_g((v - u).abs(), 6)
                );
                rows.push(json!({"x": x, "y": y, "u": u, "exact": v, "abs_error": (v - u).abs()}));
            }
            None => {
                let _ = writeln!(csv, "{x},{y},{}", format_g(u, 12));
                rows.push(json!({"x": x, "y": y, "u": u}));
            }
        }
    }
    Ok((csv, rows))
}

fn write_report(s: &Solved, a: &SolveArgs, path: &Path) -> anyhow::Result<()> {
    let Some((exact, _)) = s.exact else {
        bail!(usage(
            "--report needs builtin data with a closed-form solution for this problem kind"
        ));
    };
    let rect = *s.approx.spectrum().rect();
    let problem = StudyProblem {
        kind: s.kind,
        data: s.data.clone(),
        rect,
        exact: Some(exact),
    };
    let opts = StudyOptions {
        tol: Tolerance::new(a.abstol, a.reltol),
        corner_reduction: a.corner_reduction,
        mean_tol: a.mean_tol,
        ..StudyOptions::default()
    };
    let m = match a.sel.policy(s.kind) {
        SelectionPolicy::PerFamily(m) => m,
        SelectionPolicy::Global(_) => a.sel.m,
    };
    let reports = convergence_study(&problem, a.sel.selection(), &[m], &opts)?.reports();
    let text = if path.extension().is_some_and(|e| e == "csv") {
        reports_to_csv(&reports)
    } else {
        reports_to_json(&reports)?
    };
    emit(Some(path), &text)
}

fn cmd_solve(a: &SolveArgs, grid_default: Option<usize>) -> anyhow::Result<()> {
    let grid = a.grid.or(grid_default);
    if grid.is_some_and(|n| n < 2) {
        bail!(usage("--grid needs at least 2 points per axis"));
    }
    let points = a.points.as_deref().map(read_points).transpose()?;
    if grid.is_some() && points.is_some() && a.out.is_none() && a.format == Format::Csv {
        bail!(usage(
            "with both --grid and --points, give --out for the grid"
        ));
    }
    let s = solve_from(a)?;
    if let Some(p) = &a.report {
        write_report(&s, a, p)?;
    }
    let grid_data = grid.map(|n| s.approx.eval_grid(n, n)).transpose()?;
    let exact_fn = s
        .exact
        .map(|(e, shift)| move |x: f64, y: f64| e.value(x, y) - shift);

    match a.format {
        Format::Csv => {
            let (point_text, _) = match &points {
                Some(p) => points_csv(&s, p)?,
                None => (String::new(), Vec::new()),
            };
            let mut head = String::new();
            if a.coefficients {
                head.push_str("index,family,coefficient,weight\n");
                for ((m, c), w) in s
                    .approx
                    .spectrum()
                    .modes()
                    .iter()
                    .zip(&s.approx.coefficients.values)
                    .zip(&s.approx.weights)
                {
                    let _ = writeln!(head, "{},{},{:.16e},{:.16e}", m.index, m.family, c, w);
                }
            }
            match grid_data {
                Some(g) => {
                    let csv =
                        g.to_csv(exact_fn.as_ref().map(|f| f as &dyn Fn(f64, f64) -> f64), 12);
                    emit(a.out.as_deref(), &csv)?;
                    if !point_text.is_empty() || !head.is_empty() {
                        std::io::stdout().write_all((head + &point_text).as_bytes())?;
                    }
                }
                None => {
                    let body = if points.is_some() || a.coefficients {
                        head + &point_text
                    } else {
                        // nothing requested: report the constant term and mode count
                        format!(
                            "kind,h,modes,constant\n{},{},{},{}\n",
                            s.kind,
                            s.approx.spectrum().h(),
                            s.approx.spectrum().len(),
                            format_g(s.approx.constant_term(), 12)
                        )
                    };
                    emit(a.out.as_deref(), &body)?;
                }
            }
        }
        Format::Json => {
            let mut doc = json!({
                "kind": s.kind,
                "h": s.approx.spectrum().h(),
                "selection": s.approx.spectrum().selection().to_string(),
                "modes": s.approx.spectrum().len(),
                "data": s.spec,
                "constant": s.approx.constant_term(),
            });
            if let Some(p) = &points {
                doc["points"] = serde_json::Value::Array(points_csv(&s, p)?.1);
            }
            if a.coefficients {
                doc["coefficients"] = json!(s.approx.coefficients.values);
                doc["weights"] = json!(s.approx.weights);
            }
            if let Some(g) = grid_data {
                doc["grid"] = json!({"xs": g.xs, "ys": g.ys, "u": g.values});
            }
            emit(a.out.as_deref(), &serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(())
}

fn cmd_tables(a: &TablesArgs) -> anyhow::Result<()> {
    let mut ids = parse_which(&a.which)?;
    if let Some(h) = a.h {
        ids.retain(|&id| table_aspect(id) == Some(h));
    }
    let opts = TableOptions::default();
    let runs = ids
        .iter()
        .map(|&id| run_table(id, &opts))
        .collect::<steklov::Result<Vec<_>>>()?;
    let text = match a.format {
        Format::Csv => runs_to_csv(&runs),
        Format::Json => serde_json::to_string_pretty(&runs)?,
    };
    emit(a.out.as_deref(), &text)?;
    let total: usize = runs.iter().map(|r| r.cells.len()).sum();
    let agree: usize = runs.iter().map(|r| r.agreeing()).sum();
    for r in &runs {
        eprintln!("{}", r.summary());
    }
    eprintln!("{agree}/{total} entries within tolerance");
    Ok(())
}

/// Returns whether every check passed.
fn cmd_check(a: &CheckArgs) -> anyhow::Result<bool> {
    let spec = obtain_spectrum(a.spectrum.as_deref(), &a.sel, ProblemKind::Dirichlet)?;
    let report = invariant_suite(&spec, &TolProfile::default(), a.seed);
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut s = format!(
                "h = {}, {} modes, seed {}\n",
                report.h, report.modes, report.seed
            );
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "{:<18} {}  worst {:.3e}  tol {:.1e}{}",
                    c.name,
                    if c.passed { "pass" } else { "FAIL" },
                    c.worst,
                    c.tol,
                    c.worst_mode
                        .map(|m| format!("  (mode {m})"))
                        .unwrap_or_default()
                );
            }
            let _ = writeln!(
                s,
                "{}",
                if report.passed() {
                    "all checks pass"
                } else {
                    "some checks FAILED"
                }
            );
            s
        }
    };
    emit(a.out.as_deref(), &text)?;
    Ok(report.passed())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<steklov::Error>() {
        Some(steklov::Error::RootNotConverged { .. }) => 3,
        Some(steklov::Error::Coefficient { .. } | steklov::Error::Quadrature { .. }) => 1,
        Some(_) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a).map(|_| true),
        Command::Solve(a) => cmd_solve(a, None).map(|_| true),
        Command::Grid(a) => cmd_solve(a, Some(101)).map(|_| true),
        Command::Tables(a) => cmd_tables(a).map(|_| true),
        Command::Check(a) => cmd_check(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use steklov::spectrum::Family;

    #[test]
    fn exit_codes_follow_the_error_class() {
        let root = steklov::Error::RootNotConverged {
            family: Family::F3,
            branch: 4,
            lo: 1.0,
            hi: 2.0,
        };
        assert_eq!(exit_code(&root.into()), 3);
        assert_eq!(
            exit_code(
                &steklov::Error::IncompatibleNeumann {
                    mean: 0.5,
                    tol: 1e-9
                }
                .into()
            ),
            2
        );
        assert_eq!(exit_code(&usage("bad flag")), 2);
        assert_eq!(exit_code(&anyhow::anyhow!("other")), 1);
    }

    #[test]
    fn selection_flags() {
        let parse = |args: &[&str]| match Cli::try_parse_from(args).unwrap().command {
            Command::Spectrum(a) => a.sel.policy(ProblemKind::Dirichlet),
            _ => unreachable!(),
        };
        assert_eq!(
            parse(&["steklov", "spectrum"]),
            SelectionPolicy::PerFamily(5)
        );
        assert_eq!(
            parse(&["steklov", "spectrum", "--M", "3", "--global"]),
            SelectionPolicy::Global(23)
        );
        assert_eq!(
            parse(&["steklov", "spectrum", "--global", "10"]),
            SelectionPolicy::Global(10)
        );
        assert_eq!(
            parse(&["steklov", "spectrum", "--per-family", "2"]),
            SelectionPolicy::PerFamily(2)
        );
        assert!(Cli::try_parse_from(["steklov", "spectrum", "--per-family", "--global"]).is_err());
    }
}
