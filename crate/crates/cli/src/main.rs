//! `beacon`: generate polygons, compute kernels, place and verify beacons,
//! simulate attraction and render SVG.
#![allow(clippy::result_large_err)]

mod render;

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use beacon_core::attraction::attraction_path;
use beacon_core::generators::{coverage_spiral, random_rectilinear, random_x_monotone, routing_spiral, Spiral};
use beacon_core::geometry::Point;
use beacon_core::io::{parse_beacons, parse_polygon, polygon_json, BeaconDoc, IoError, KernelDoc, Mode};
use beacon_core::kernel::{kernel, kernel_oracle};
use beacon_core::placement::{cover_monotone, cover_with_trace, route_with_trace, RecursionTrace};
use beacon_core::polygon::RectPolygon;
use beacon_core::verify::{default_pairs, verify_coverage, verify_routing, SamplePlan, VerifyReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use render::{render, Layers, RenderSpec};

#[derive(Parser)]
#[command(name = "beacon", version, about = "Beacon attraction in simple rectilinear polygons")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Drop repeated and collinear input vertices before validation.
    #[arg(long, global = true)]
    merge_collinear: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a polygon.
    #[command(subcommand)]
    Gen(Gen),
    /// Compute the beacon kernel.
    Kernel {
        input: String,
        /// Use the brute-force reference computation.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        emit_svg: Option<String>,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Place beacons that cover the polygon.
    Cover {
        input: String,
        #[arg(short, long, default_value = "-")]
        output: String,
        /// Write the recursion trace as JSON.
        #[arg(long)]
        trace: Option<String>,
        /// Use the monotone placement (input must be x- or y-monotone).
        #[arg(long)]
        monotone: bool,
    },
    /// Place beacons that route every pair of points.
    Route {
        input: String,
        #[arg(short, long, default_value = "-")]
        output: String,
        #[arg(long)]
        trace: Option<String>,
    },
    /// Trace the attraction path of a point towards a beacon.
    Simulate {
        input: String,
        /// Start point as `x,y`.
        #[arg(long)]
        from: String,
        /// Beacon as `x,y`.
        #[arg(long)]
        beacon: String,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Check a beacon placement by sampling.
    Verify {
        mode: VerifyMode,
        polygon: String,
        beacons: String,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// JSON list of `[s, t]` point pairs; defaults to all vertex pairs
        /// plus random interior pairs.
        #[arg(long)]
        pairs: Option<String>,
        /// Random interior pairs added to the default routing pairs.
        #[arg(long, default_value_t = 100)]
        random_pairs: usize,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Draw a polygon with optional layers as SVG.
    Render(RenderArgs),
    /// Time the kernel against the reference computation; CSV on stdout.
    Bench {
        /// Comma-separated vertex counts.
        #[arg(long, default_value = "250,500,1000,2000")]
        sizes: String,
        #[arg(long, default_value_t = 5)]
        runs: usize,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// A lower-bound spiral.
    Spiral {
        #[arg(long, value_enum, default_value_t = SpiralKind::Coverage)]
        kind: SpiralKind,
        #[arg(short)]
        r: usize,
        #[arg(short, long, default_value = "-")]
        output: String,
        /// Also write the rectangle decomposition as JSON.
        #[arg(long)]
        decomposition: Option<String>,
    },
    /// A random polygon with `n` vertices.
    Random {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        monotone: bool,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SpiralKind {
    Coverage,
    Routing,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Cover,
    Route,
}

#[derive(Args)]
struct RenderArgs {
    input: String,
    #[arg(long)]
    beacons: Option<String>,
    /// Shade the kernel.
    #[arg(long)]
    kernel: bool,
    /// Draw the attraction path from this point (`x,y`) to `--path-beacon`.
    #[arg(long, requires = "path_beacon")]
    path_from: Option<String>,
    #[arg(long)]
    path_beacon: Option<String>,
    /// Draw the cuts recorded in a trace file.
    #[arg(long)]
    cuts: Option<String>,
    #[arg(long, default_value_t = 600.0)]
    size: f64,
    #[arg(short, long, default_value = "-")]
    output: String,
}

/// Exit 2 on bad input, 1 on a failed verification.
enum Failure {
    Input(String),
    Verify,
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &str) -> Res<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(input_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

fn write(path: &str, text: &str) -> Res<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    if path == "-" {
        io::stdout().write_all(text.as_bytes()).map_err(input_err)
    } else {
        fs::write(path, text).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("output serializes")
}

fn point(s: &str) -> Res<Point> {
    let (x, y) = s.split_once(',').ok_or_else(|| Failure::Input(format!("expected x,y but got {s:?}")))?;
    let x = x.parse().map_err(|e| Failure::Input(format!("{s:?}: {e}")))?;
    let y = y.parse().map_err(|e| Failure::Input(format!("{s:?}: {e}")))?;
    Ok(Point::new(x, y))
}

fn polygon(cli: &Cli, path: &str) -> Res<RectPolygon> {
    parse_polygon(&read(path)?, cli.merge_collinear).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn spiral(kind: SpiralKind, r: usize) -> Res<Spiral> {
    match kind {
        SpiralKind::Coverage => Ok(coverage_spiral(r)),
        SpiralKind::Routing => routing_spiral(r).map_err(input_err),
    }
}

fn write_trace(path: &Option<String>, trace: &RecursionTrace) -> Res<()> {
    match path {
        Some(p) => write(p, &json(trace)),
        None => Ok(()),
    }
}

fn run(cli: &Cli) -> Res<()> {
    match &cli.cmd {
        Cmd::Gen(Gen::Spiral { kind, r, output, decomposition }) => {
            let s = spiral(*kind, *r)?;
            if let Some(d) = decomposition {
                write(d, &json(&s.decomposition))?;
            }
            write(output, &polygon_json(&s.polygon))
        }
        Cmd::Gen(Gen::Random { n, monotone, output }) => {
            let p = if *monotone { random_x_monotone(*n, cli.seed) } else { random_rectilinear(*n, cli.seed) };
            write(output, &polygon_json(&p.map_err(input_err)?))
        }
        Cmd::Kernel { input, oracle, emit_svg, output } => {
            let p = polygon(cli, input)?;
            let k = if *oracle { kernel_oracle(&p) } else { kernel(&p) };
            if let Some(svg) = emit_svg {
                let layers = Layers { kernel: k.region.clone(), ..Layers::default() };
                write(svg, &render(&p, &layers, &RenderSpec::default()))?;
            }
            write(output, &json(&KernelDoc::from(&k)))
        }
        Cmd::Cover { input, output, trace, monotone } => {
            let p = polygon(cli, input)?;
            let doc = if *monotone {
                let b = cover_monotone(&p).map_err(input_err)?;
                BeaconDoc::new(&b, Mode::Cover, p.r() / 4 + 1).with_polygon(&p)
            } else {
                let (b, t) = cover_with_trace(&p).map_err(input_err)?;
                write_trace(trace, &t)?;
                BeaconDoc::new(&b, Mode::Cover, p.r().div_ceil(3).max(1)).with_polygon(&p)
            };
            write(output, &json(&doc))
        }
        Cmd::Route { input, output, trace } => {
            let p = polygon(cli, input)?;
            let (b, t) = route_with_trace(&p).map_err(input_err)?;
            write_trace(trace, &t)?;
            write(output, &json(&BeaconDoc::new(&b, Mode::Route, 3 * p.r() / 4).with_polygon(&p)))
        }
        Cmd::Simulate { input, from, beacon, output } => {
            let p = polygon(cli, input)?;
            let path = attraction_path(&p, &point(from)?, &point(beacon)?).map_err(input_err)?;
            write(output, &json(&path))
        }
        Cmd::Verify { mode, polygon: pp, beacons, grid, pairs, random_pairs, output } => {
            if pp == "-" && beacons == "-" {
                return verify_piped(cli, *mode, *grid, output);
            }
            let p = polygon(cli, pp)?;
            let doc = parse_beacons(&read(beacons)?).map_err(|e| Failure::Input(format!("{beacons}: {e}")))?;
            let report = match mode {
                VerifyMode::Cover => check_cover(cli, &p, &doc, *grid)?,
                VerifyMode::Route => {
                    let pairs = match pairs {
                        Some(f) => serde_json::from_str::<Vec<(Point, Point)>>(&read(f)?)
                            .map_err(|e| Failure::Input(format!("{f}: {e}")))?,
                        None => default_pairs(&p, *random_pairs, cli.seed),
                    };
                    verify_routing(&p, &doc.to_set(), &pairs, 1).map_err(input_err)?
                }
            };
            finish(output, &report)
        }
        Cmd::Render(args) => render_cmd(cli, args),
        Cmd::Bench { sizes, runs } => bench(sizes, *runs),
    }
}

fn check_cover(cli: &Cli, p: &RectPolygon, doc: &BeaconDoc, grid: usize) -> Res<VerifyReport> {
    let plan = SamplePlan { grid, seed: cli.seed, ..SamplePlan::default() };
    verify_coverage(p, &doc.to_set(), &plan).map_err(input_err)
}

/// `verify MODE - -`: stdin holds either a beacon document carrying its
/// polygon (the output of `cover -`) or a polygon document followed by a
/// beacon document.
fn verify_piped(cli: &Cli, mode: VerifyMode, grid: usize, output: &str) -> Res<()> {
    let text = read("-")?;
    let docs: Vec<serde_json::Value> = serde_json::Deserializer::from_str(&text)
        .into_iter::<serde_json::Value>()
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
    let (p, doc) = match docs.as_slice() {
        [b] if b.get("polygon").is_some() => {
            let doc = parse_beacons(&b.to_string())?;
            let poly = doc.polygon.clone().expect("checked above");
            let p = parse_polygon(&json(&poly), cli.merge_collinear)?;
            (p, doc)
        }
        [p, b] => (parse_polygon(&p.to_string(), cli.merge_collinear)?, parse_beacons(&b.to_string())?),
        _ => {
            return Err(Failure::Input(
                "stdin: expected a beacon document with its polygon, or a polygon and a beacon document".into(),
            ))
        }
    };
    let report = match mode {
        VerifyMode::Cover => check_cover(cli, &p, &doc, grid)?,
        VerifyMode::Route => {
            verify_routing(&p, &doc.to_set(), &default_pairs(&p, 100, cli.seed), 1).map_err(input_err)?
        }
    };
    finish(output, &report)
}

fn finish(output: &str, report: &VerifyReport) -> Res<()> {
    write(output, &json(report))?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn render_cmd(cli: &Cli, a: &RenderArgs) -> Res<()> {
    let p = polygon(cli, &a.input)?;
    let mut layers = Layers::default();
    if a.kernel {
        layers.kernel = kernel(&p).region;
    }
    if let Some(b) = &a.beacons {
        let doc = parse_beacons(&read(b)?)?;
        if let Some(out) = doc.beacons.iter().find(|q| !p.contains(q)) {
            return Err(Failure::Input(format!("beacon {out:?} lies outside the polygon")));
        }
        layers.beacons = doc.beacons;
    }
    if let (Some(s), Some(b)) = (&a.path_from, &a.path_beacon) {
        let path = attraction_path(&p, &point(s)?, &point(b)?).map_err(input_err)?;
        layers.paths.push(path.points());
        layers.beacons.push(point(b)?);
    }
    if let Some(t) = &a.cuts {
        let v: serde_json::Value = serde_json::from_str(&read(t)?).map_err(input_err)?;
        let nodes = v["nodes"].as_array().ok_or_else(|| Failure::Input(format!("{t}: not a trace")))?;
        for n in nodes {
            let cuts: Vec<(Point, Point)> = serde_json::from_value(n["cuts"].clone()).map_err(input_err)?;
            layers.cuts.extend(cuts);
        }
    }
    let spec = RenderSpec { size: a.size, ..RenderSpec::default() };
    write(&a.output, &render(&p, &layers, &spec))
}

fn median(mut v: Vec<u128>) -> u128 {
    v.sort_unstable();
    v[v.len() / 2]
}

fn bench(sizes: &str, runs: usize) -> Res<()> {
    let mut out = String::from("n,t_kernel_ns,t_oracle_ns\n");
    for s in sizes.split(',') {
        let n: usize = s.trim().parse().map_err(|e| Failure::Input(format!("size {s:?}: {e}")))?;
        let p = beacon_core::generators::bench_polygon(n).map_err(input_err)?;
        let time = |f: &dyn Fn()| -> u128 {
            median(
                (0..runs.max(1))
                    .map(|_| {
                        let t = Instant::now();
                        f();
                        t.elapsed().as_nanos()
                    })
                    .collect(),
            )
        };
        let tk = time(&|| {
            std::hint::black_box(kernel(&p));
        });
        let to = time(&|| {
            std::hint::black_box(kernel_oracle(&p));
        });
        out.push_str(&format!("{},{tk},{to}\n", p.n()));
    }
    write("-", &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
