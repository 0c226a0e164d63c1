//! Command-line front end for the `alexandrov` library.
//!
//! Exit codes: 0 success (or consistent), 1 invalid input, 2 numeric or
//! budget failure, 3 distinct metrics (`isometric` only), 64 usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use alexandrov::builders::{double_polygon_with, glue_polygon_with};
use alexandrov::generate::convex_polyhedron;
use alexandrov::io::{self, to_json_string};
use alexandrov::{
    canonicalize_polyhedron, cut_and_patch, embed4, excise_lens, iota_with, probably_isometric, retriangulate_essential,
    shortest_geodesic, Config, ConeMetric, Error, LensPatch, Polyhedron, Verdict,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "alexandrov", version, about = "Convex polyhedra and cone metrics on the sphere")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Tolerance overrides and budgets shared by every subcommand.
#[derive(Args)]
struct RunConfig {
    /// A vertex is a cone point when its deficit exceeds this (radians).
    #[arg(long, global = true)]
    tol_angle: Option<f64>,
    /// Window budget of one geodesic search.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Triangulations visited by the four-vertex flip search.
    #[arg(long, global = true)]
    flip_budget: Option<usize>,
    /// Cap on embedding residuals, relative to the diameter.
    #[arg(long, global = true)]
    residual_cap: Option<f64>,
    /// Seed for generated inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

impl RunConfig {
    fn config(&self) -> Config {
        let mut c = Config::default();
        if let Some(x) = self.tol_angle {
            c.angle_eps = x;
        }
        if let Some(x) = self.budget {
            c.geodesic_budget = x;
        }
        if let Some(x) = self.flip_budget {
            c.flip_budget = x;
        }
        if let Some(x) = self.residual_cap {
            c.residual_cap = x;
        }
        c
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Obj,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a metric file and print its curvature report.
    Validate { input: PathBuf },
    /// Print the curvature report of a metric as JSON.
    Report { input: PathBuf },
    /// Glue a polygon according to a gluing file.
    Build {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Double a convex polygon given as {"polygon": [[x, y], ...]}.
    Double {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Surface metric of the convex hull of a point file.
    Iota {
        /// Point file; omit with --random.
        input: Option<PathBuf>,
        /// Use this many random points on the sphere instead (with --seed).
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        obj: Option<PathBuf>,
    },
    /// Shortest geodesic between two vertices.
    Geodesic {
        input: PathBuf,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Triangulate on the cone points only.
    Retriangulate {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Cut along the shortest geodesic v-w and glue in a lens with sides a, b.
    Patch {
        input: PathBuf,
        #[arg(long = "v")]
        v: usize,
        #[arg(long = "w")]
        w: usize,
        #[arg(long = "a")]
        a: f64,
        #[arg(long = "b")]
        b: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Remove a lens with apex P over v, w.
    Excise {
        input: PathBuf,
        #[arg(long)]
        apex: usize,
        #[arg(long = "v")]
        v: usize,
        #[arg(long = "w")]
        w: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Realize a metric with four cone points as a tetrahedron.
    Embed4 {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        obj: Option<PathBuf>,
    },
    /// Compare isometry fingerprints of two metrics.
    Isometric { a: PathBuf, b: PathBuf },
    /// Re-emit a metric or point file as JSON, OBJ or an SVG net.
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: if e.is_numeric() { 2 } else { 1 }, message: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) })
}

fn write(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure { code: 1, message: format!("{}: {e}", p.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path, config: Config) -> Result<ConeMetric<f64>, Failure> {
    Ok(io::parse_metric_with(&read(path)?, config)?)
}

fn is_points_file(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text).is_ok_and(|v| v.get("points").is_some())
}

fn run(cli: Cli) -> Outcome {
    let config = cli.run.config();
    config.check()?;
    match cli.command {
        Command::Validate { input } => {
            let m = load(&input, config)?;
            let r = m.curvature_report();
            let psi = m.is_in_psi();
            println!(
                "valid: {} vertices, {} faces, {} cone points, total deficit {}",
                m.vertex_count(),
                m.triangulation().face_count(),
                r.essential_count(),
                io::num(r.total_deficit())
            );
            if !psi.admissible {
                let v = psi.offender.unwrap_or(0);
                return Err(Error::NotInPsi { vertex: v, angle: m.angle_sum(v)? }.into());
            }
            Ok(0)
        }
        Command::Report { input } => {
            let m = load(&input, config)?;
            print!("{}", to_json_string(&io::report_json(&m, &m.curvature_report())));
            Ok(0)
        }
        Command::Build { input, out } => {
            let g = io::parse_gluing(&read(&input)?)?;
            write(out.as_deref(), &io::emit_metric(&glue_polygon_with(&g, config)?)?)?;
            Ok(0)
        }
        Command::Double { input, out } => {
            let p = io::parse_polygon(&read(&input)?)?;
            write(out.as_deref(), &io::emit_metric(&double_polygon_with(&p, config)?)?)?;
            Ok(0)
        }
        Command::Iota { input, random, out, obj } => {
            let poly: Polyhedron = match (input, random) {
                (Some(path), None) => canonicalize_polyhedron(&io::parse_points(&read(&path)?)?)?,
                (None, Some(n)) => convex_polyhedron(n, cli.run.seed)?,
                _ => return Err(Failure { code: 64, message: "give either a point file or --random N".into() }),
            };
            let m: ConeMetric<f64> = iota_with(&poly, config)?;
            write(out.as_deref(), &io::emit_metric(&m)?)?;
            if let Some(path) = obj {
                write(Some(&path), &io::polyhedron_obj(&poly)?)?;
            }
            Ok(0)
        }
        Command::Geodesic { input, from, to, out, svg } => {
            let m = load(&input, config)?;
            let g = shortest_geodesic(&m, from, to)?;
            write(out.as_deref(), &to_json_string(&io::geodesic_json(&g)))?;
            if let Some(path) = svg {
                write(Some(&path), &io::svg_geodesic(&m, &g).svg)?;
            }
            Ok(0)
        }
        Command::Retriangulate { input, out, svg } => {
            let m = load(&input, config)?;
            let et = retriangulate_essential(&m)?;
            write(out.as_deref(), &io::emit_metric(et.metric())?)?;
            if let Some(path) = svg {
                let net = io::svg_net(et.metric());
                if net.overlap {
                    eprintln!("warning: the unfolded net overlaps itself");
                }
                write(Some(&path), &net.svg)?;
            }
            Ok(0)
        }
        Command::Patch { input, v, w, a, b, out } => {
            let m = load(&input, config)?;
            let base = shortest_geodesic(&m, v, w)?.length;
            let patch = LensPatch::new(base, a, b)?;
            write(out.as_deref(), &io::emit_metric(&cut_and_patch(&m, v, w, &patch)?)?)?;
            Ok(0)
        }
        Command::Excise { input, apex, v, w, out } => {
            let m = load(&input, config)?;
            let ex = excise_lens(&m, apex, v, w)?;
            let patch = json!({
                "base": ex.patch.base,
                "a": ex.patch.a,
                "b": ex.patch.b,
                "v": ex.v,
                "w": ex.w,
            });
            match out {
                Some(path) => {
                    write(Some(&path), &io::emit_metric(&ex.metric)?)?;
                    print!("{}", to_json_string(&patch));
                }
                None => print!("{}", to_json_string(&json!({ "patch": patch, "metric": io::metric_json(&ex.metric)? }))),
            }
            Ok(0)
        }
        Command::Embed4 { input, out, obj } => {
            let m = load(&input, config)?;
            let r = embed4(&m)?;
            write(out.as_deref(), &to_json_string(&io::embedding_json(&r)))?;
            if let Some(path) = obj {
                write(Some(&path), &io::tetrahedron_obj(&r))?;
            }
            Ok(0)
        }
        Command::Isometric { a, b } => {
            let (ma, mb) = (load(&a, config)?, load(&b, config)?);
            let (verdict, fa, fb) = probably_isometric(&ma, &mb)?;
            let name = match verdict {
                Verdict::Distinct => "distinct",
                Verdict::Consistent => "consistent",
            };
            let doc = json!({ "verdict": name, "a": io::fingerprint_json(&fa), "b": io::fingerprint_json(&fb) });
            print!("{}", to_json_string(&doc));
            Ok(if verdict == Verdict::Distinct { 3 } else { 0 })
        }
        Command::Export { input, format, out } => {
            let text = read(&input)?;
            let doc = if is_points_file(&text) {
                let poly = canonicalize_polyhedron(&io::parse_points(&text)?)?;
                match format {
                    Format::Json => io::emit_points(&poly.points),
                    Format::Obj => io::polyhedron_obj(&poly)?,
                    Format::Svg => io::svg_net(&iota_with::<f64>(&poly, config)?).svg,
                }
            } else {
                let m: ConeMetric<f64> = io::parse_metric_with(&text, config)?;
                match format {
                    Format::Json => io::emit_metric(&m)?,
                    Format::Obj => io::tetrahedron_obj(&embed4(&m)?),
                    Format::Svg => io::svg_net(&m).svg,
                }
            };
            write(out.as_deref(), &doc)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
