use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use hingecurv::compare::{self, Analytic, Family};
use hingecurv::io::{self as meshio, PlyEncoding};
use hingecurv::report::num;
use hingecurv::{
    compute_report, CrossSection, DualScheme, FixtureSpec, Hinges, IoError, SimplicialMesh,
};
use log::warn;

/// Discrete extrinsic curvature of piecewise flat curves and surfaces.
#[derive(Debug, Parser)]
#[command(name = "hingecurv", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a benchmark fixture mesh (OFF, OBJ or PLY by extension; OFF on stdout).
    Generate {
        kind: FixtureKind,
        #[command(flatten)]
        params: FixtureParams,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute hinge angles, mean curvature, hinge-orthogonal curvature and tensors.
    ///
    /// CSV output writes three tables. Vertices: vertex,x,y,z,boundary,
    /// cell_measure,mean_curvature,deficit,cotan. Hinges: facet,v0,v1,measure,
    /// angle,region_area,alpha. Triangles: triangle,v0,v1,v2,area,k11,k12,k22,
    /// kmin,kmax. With --out FILE they go to FILE_vertices.csv, FILE_hinges.csv
    /// and FILE_triangles.csv; otherwise to stdout separated by blank lines.
    /// Values undefined on the boundary are left empty.
    Curvature {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        run: RunFlags,
        /// Write ASCII instead of binary PLY.
        #[arg(long)]
        ascii: bool,
    },
    /// Relative errors against a smooth reference, e.g. `--reference sphere:1`.
    Compare {
        #[command(flatten)]
        source: Source,
        /// circle:R, sphere:R or cylinder:R. The radius may be omitted for fixtures.
        #[arg(long)]
        reference: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Maximum errors over a refinement sequence; fails unless they never grow.
    Converge {
        #[arg(long, value_enum)]
        family: FixtureKind,
        /// Comma-separated levels: side counts for circle and cylinder, subdivisions for icosphere.
        #[arg(long, value_delimiter = ',')]
        levels: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// Allowed growth of the error between consecutive levels.
        #[arg(long, default_value_t = 1e-12)]
        slack: f64,
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        match_arclength: bool,
        #[command(flatten)]
        run: RunFlags,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FixtureKind {
    Circle,
    Icosphere,
    Cylinder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Ply,
}

#[derive(Debug, Args)]
struct FixtureParams {
    /// Polygon sides (circle, cylinder cross-section).
    #[arg(long, default_value_t = 16)]
    k: usize,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Icosphere subdivision level.
    #[arg(long, default_value_t = 0)]
    sub: usize,
    /// Cylinder ring spacing.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 8)]
    rings: usize,
    /// Cross-section edge 2πr/k (true) or inscribed in radius r (false).
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    match_arclength: bool,
}

impl FixtureParams {
    fn spec(&self, kind: FixtureKind) -> FixtureSpec {
        match kind {
            FixtureKind::Circle => FixtureSpec::CirclePolygon { k: self.k, r: self.r },
            FixtureKind::Icosphere => FixtureSpec::Icosphere {
                r: self.r,
                subdivisions: self.sub,
            },
            FixtureKind::Cylinder => FixtureSpec::Cylinder {
                k: self.k,
                r: self.r,
                p: self.p,
                rings: self.rings,
                cross_section: cross_section(self.match_arclength),
            },
        }
    }
}

#[derive(Debug, Args)]
struct Source {
    /// Mesh file (OFF, OBJ or PLY).
    #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
    input: Option<PathBuf>,
    /// Use a generated fixture instead of a file.
    #[arg(long, value_enum)]
    fixture: Option<FixtureKind>,
    #[command(flatten)]
    params: FixtureParams,
}

#[derive(Debug, Args)]
struct RunFlags {
    #[arg(long, value_enum, default_value_t = Scheme::Mixed)]
    dual: Scheme,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Evaluate the estimators on all cores.
    #[arg(long)]
    parallel: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scheme {
    Barycentric,
    Circumcentric,
    Mixed,
}

impl From<Scheme> for DualScheme {
    fn from(s: Scheme) -> Self {
        match s {
            Scheme::Barycentric => DualScheme::Barycentric,
            Scheme::Circumcentric => DualScheme::Circumcentric,
            Scheme::Mixed => DualScheme::Mixed,
        }
    }
}

fn cross_section(match_arclength: bool) -> CrossSection {
    if match_arclength {
        CrossSection::Arclength
    } else {
        CrossSection::Inscribed
    }
}

/// Failure classes mapped onto the process exit code.
#[derive(Debug)]
enum Failure {
    Validation(anyhow::Error),
    Io(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Io(_) => 2,
        }
    }
}

fn invalid(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Validation(e.into())
}

fn io_failure(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Io(e.into())
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Mesh(_) => invalid(e),
            _ => io_failure(e),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { kind, params, out } => cmd_generate(params.spec(kind), out.as_deref()),
        Command::Curvature {
            source,
            format,
            run,
            ascii,
        } => cmd_curvature(&source, format, &run, ascii),
        Command::Compare {
            source,
            reference,
            format,
            run,
        } => cmd_compare(&source, &reference, format, &run),
        Command::Converge {
            family,
            levels,
            r,
            slack,
            match_arclength,
            run,
        } => cmd_converge(family, levels, r, slack, cross_section(match_arclength), &run),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let (Failure::Validation(e) | Failure::Io(e)) = &failure;
            eprintln!("error: {e:#}");
            ExitCode::from(failure.code())
        }
    }
}

fn load(source: &Source) -> Result<(SimplicialMesh, Option<f64>), Failure> {
    match (&source.input, source.fixture) {
        (Some(path), None) => {
            let loaded = meshio::load_mesh(path)?;
            for w in &loaded.warnings {
                warn!("{}: {w}", path.display());
            }
            Ok((loaded.mesh, None))
        }
        (None, Some(kind)) => {
            let spec = source.params.spec(kind);
            let mesh = spec.build().map_err(invalid)?;
            Ok((mesh, Some(spec.radius())))
        }
        _ => Err(invalid(anyhow!("give exactly one of an input file or --fixture"))),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .with_context(|| format!("cannot create {}", path.display()))
        .map_err(io_failure)
}

fn with_output(out: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Outcome {
    match out {
        Some(path) => {
            let mut w = create(path)?;
            f(&mut w).and_then(|_| w.flush())
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock).and_then(|_| lock.flush())
        }
    }
    .context("write failed")
    .map_err(io_failure)
}

fn cmd_generate(spec: FixtureSpec, out: Option<&Path>) -> Outcome {
    let mesh = spec.build().map_err(invalid)?;
    match out {
        Some(path) => meshio::save_mesh(&mesh, path)?,
        None => with_output(None, |w| w.write_all(meshio::to_off(&mesh).as_bytes()))?,
    }
    let hinges = Hinges::extract(&mesh).map_err(invalid)?;
    eprintln!("{spec}");
    eprintln!(
        "V={} E={} F={} chi={} {}={:.12}",
        mesh.vertex_count(),
        if mesh.dim() == 2 { mesh.facet_count() } else { mesh.simplex_count() },
        if mesh.dim() == 2 { mesh.simplex_count() } else { 0 },
        mesh.euler_characteristic(),
        if mesh.dim() == 2 { "area" } else { "length" },
        mesh.total_volume()
    );
    let mut histogram: Vec<(f64, usize)> = Vec::new();
    for h in hinges.iter() {
        match histogram.iter_mut().find(|(a, _)| (a - h.angle).abs() <= 1e-9) {
            Some(bin) => bin.1 += 1,
            None => histogram.push((h.angle, 1)),
        }
    }
    histogram.sort_by(|a, b| a.0.total_cmp(&b.0));
    eprintln!("hinge angles ({} interior hinges):", hinges.len());
    if histogram.len() <= 12 {
        for (angle, count) in histogram {
            eprintln!("  {angle:+.12} x {count}");
        }
    } else {
        let (lo, hi) = (histogram[0].0, histogram[histogram.len() - 1].0);
        eprintln!("  {} distinct values in [{lo:+.12}, {hi:+.12}]", histogram.len());
    }
    Ok(())
}

fn cmd_curvature(source: &Source, format: Format, run: &RunFlags, ascii: bool) -> Outcome {
    let (mesh, _) = load(source)?;
    let report = compute_report(&mesh, run.dual.into(), run.parallel).map_err(invalid)?;
    for w in &report.diagnostics.warnings {
        warn!("{w}");
    }
    let out = run.out.as_deref();
    match format {
        Format::Json => with_output(out, |w| {
            report.write_json(&mut *w)?;
            writeln!(w)
        })?,
        Format::Csv => match out {
            Some(path) => {
                let stem = path.with_extension("");
                let stem = stem.to_string_lossy();
                let write = |suffix: &str, f: &dyn Fn(&mut dyn Write) -> io::Result<()>| {
                    with_output(Some(Path::new(&format!("{stem}_{suffix}.csv"))), f)
                };
                write("vertices", &|w| report.write_vertex_csv(w))?;
                write("hinges", &|w| report.write_hinge_csv(w))?;
                if mesh.dim() == 2 {
                    write("triangles", &|w| report.write_triangle_csv(w))?;
                }
            }
            None => with_output(None, |w| {
                report.write_vertex_csv(&mut *w)?;
                writeln!(w)?;
                report.write_hinge_csv(&mut *w)?;
                if mesh.dim() == 2 {
                    writeln!(w)?;
                    report.write_triangle_csv(&mut *w)?;
                }
                Ok(())
            })?,
        },
        Format::Ply => {
            let path = out.ok_or_else(|| invalid(anyhow!("--format ply needs --out")))?;
            let encoding = if ascii { PlyEncoding::Ascii } else { PlyEncoding::BinaryLittleEndian };
            meshio::export_ply(&mesh, Some(&report), path, encoding)?;
        }
    }
    let t = &report.totals;
    eprintln!("scheme: {}", report.diagnostics.scheme);
    eprintln!("total mean curvature (Steiner): {}", num(t.total_mean_curvature));
    eprintln!("cell-weighted total: {}", num(t.cell_weighted_total));
    if let Some(gb) = t.gauss_bonnet {
        eprintln!("Gauss-Bonnet sum: {} (2 pi chi = {})", num(gb), num(std::f64::consts::TAU * t.euler_characteristic as f64));
    }
    eprintln!(
        "boundary vertices: {}, skipped hinges: {}, skipped triangles: {}, warnings: {}",
        report.diagnostics.boundary_vertices,
        report.diagnostics.skipped_hinges,
        report.diagnostics.skipped_triangles,
        report.diagnostics.warnings.len()
    );
    Ok(())
}

fn cmd_compare(source: &Source, reference: &str, format: Format, run: &RunFlags) -> Outcome {
    let (mesh, fixture_radius) = load(source)?;
    let reference: Analytic = match (reference.contains(':'), fixture_radius) {
        (false, Some(r)) => format!("{reference}:{r}").parse(),
        _ => reference.parse(),
    }
    .map_err(|e: String| invalid(anyhow!(e)))?;
    let report = compute_report(&mesh, run.dual.into(), run.parallel).map_err(invalid)?;
    let c = compare::compare(&mesh, &report, reference);
    match format {
        Format::Json => with_output(run.out.as_deref(), |w| {
            serde_json::to_writer_pretty(&mut *w, &c)?;
            writeln!(w)
        }),
        Format::Csv => with_output(run.out.as_deref(), |w| {
            writeln!(w, "estimator,count,max_relative_error,mean_relative_error")?;
            let mut rows = vec![("mean_curvature", c.mean_curvature), ("alpha", c.alpha)];
            rows.extend(c.principal.map(|s| ("principal", s)));
            rows.extend(c.cotan.map(|s| ("cotan", s)));
            for (name, s) in rows {
                writeln!(w, "{name},{},{},{}", s.count, num(s.max), num(s.mean))?;
            }
            Ok(())
        }),
        Format::Ply => Err(invalid(anyhow!("compare writes json or csv"))),
    }
}

fn cmd_converge(
    family: FixtureKind,
    levels: Vec<usize>,
    r: f64,
    slack: f64,
    cross_section: CrossSection,
    run: &RunFlags,
) -> Outcome {
    if !(slack >= 0.0 && slack.is_finite()) {
        return Err(invalid(anyhow!("--slack must be a nonnegative number")));
    }
    let family = match family {
        FixtureKind::Circle => Family::Circle,
        FixtureKind::Icosphere => Family::Icosphere,
        FixtureKind::Cylinder => Family::Cylinder,
    };
    let levels = if levels.is_empty() { family.default_levels() } else { levels };
    let rows = compare::converge(family, &levels, r, run.dual.into(), cross_section, run.parallel)
        .map_err(invalid)?;
    with_output(run.out.as_deref(), |w| {
        writeln!(w, "level,vertices,max_h_error,mean_h_error,max_alpha_error,max_cotan_error")?;
        for row in &rows {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                row.level,
                row.vertices,
                num(row.max_mean_curvature_error),
                num(row.mean_mean_curvature_error),
                num(row.max_alpha_error),
                row.max_cotan_error.map(num).unwrap_or_default()
            )?;
        }
        Ok(())
    })?;
    if compare::is_monotone(&rows, slack) {
        Ok(())
    } else {
        Err(invalid(anyhow!("maximum mean-curvature error grows under refinement")))
    }
}
