use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;

use llb::complex::SimplicialComplex;
use llb::cover::{
    free_subgroup_chain_tower, normal_chain_tower, CoverError, CoverTower, FreeQuotient, PermutationRep, TowerFamily,
};
use llb::hyperbolic::{
    compact_dual_entry, compact_dual_l2_betti, deviation_vs_injrad, genus_limit_check, surface_thin_part, HypError,
    ImagesConfig,
};
use llb::io::report::{fmt_float, fmt_ratio, parse_ratio, to_csv, to_json, Tabular};
use llb::io::{
    emit_complex, emit_permutation_rep, parse_complex, parse_graph, parse_permutation_rep, parse_surface, sha256_hex,
    BettiRow, InputError, LueckRun, Report, RunManifest, TowerManifest, TowerManifestLevel,
};
use llb::local::{ball_census, thin_part_profile, tv_distance, BallStatistics, LocalError};
use llb::lueck::{heat_trace_series, log_grid, normalized_betti_sequence, plateau_from_series, LueckError, TraceMode};

#[derive(Parser)]
#[command(
    name = "llb",
    version,
    about = "Normalized Betti numbers of cover towers, heat traces and local statistics"
)]
struct Cli {
    /// Worker thread cap (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simplicial complex files.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Towers of finite covers.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Normalized Betti numbers and heat-trace plateaus along a tower.
    #[command(subcommand)]
    Luck(LuckCmd),
    /// Rooted-ball statistics and thin parts of graphs.
    #[command(subcommand)]
    Bs(BsCmd),
    /// Hyperbolic surfaces.
    #[command(subcommand)]
    Hyp(HypCmd),
}

#[derive(Subcommand)]
enum ComplexCmd {
    Validate {
        file: PathBuf,
    },
    /// CSV `degree,betti`.
    Betti {
        file: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    ModP,
    Cyclic,
    FreeChain,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    Central,
    Homology,
}

#[derive(Subcommand)]
enum TowerCmd {
    /// Writes one complex and permutation file per level plus `tower.json`.
    Build {
        complex: PathBuf,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, value_enum, default_value = "central")]
        series: SeriesArg,
        /// Split central layers into index-`p` steps.
        #[arg(long)]
        refine: bool,
        /// Cyclic moduli, comma-separated.
        #[arg(long, value_delimiter = ',')]
        moduli: Vec<u64>,
        /// Cyclic generator weights, comma-separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<i64>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Stochastic,
}

#[derive(Subcommand)]
enum LuckCmd {
    Run(LuckRunArgs),
}

#[derive(Args)]
struct LuckRunArgs {
    manifest: PathBuf,
    #[arg(long)]
    degree: usize,
    /// Geometric grid `a:b:steps`.
    #[arg(long)]
    t_grid: Option<String>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    #[arg(long, default_value_t = 64)]
    probes: usize,
    #[arg(long)]
    poly_degree: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON report; the CSV goes next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BsCmd {
    Census {
        graph: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prints the total-variation distance of two censuses.
    Compare { a: PathBuf, b: PathBuf },
    /// Thin-part fractions of a graph file, or of a surface `.json`
    /// (sampled).
    Thin {
        input: PathBuf,
        /// Linear grid `a:b:steps`; endpoints may be `p/q`.
        #[arg(long)]
        r_grid: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4.0)]
        max_offset: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HypCmd {
    /// Heat-kernel diagonal deviation against injectivity radius at sampled
    /// points.
    Trace {
        surface: PathBuf,
        #[arg(long, value_delimiter = ',')]
        t: Vec<f64>,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[arg(long, default_value_t = 16)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4.0)]
        max_offset: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Dual {
        #[arg(long)]
        space: String,
        #[arg(long)]
        degree: usize,
    },
    GenusLimit {
        #[arg(long)]
        max_genus: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit status 2 for bad input, 3 for resource caps, 1 otherwise.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Self {
            code: 2,
            message: message.to_string(),
        }
    }

    fn cap(message: impl ToString) -> Self {
        Self {
            code: 3,
            message: message.to_string(),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Self::input(e)
    }
}

impl From<llb::complex::ComplexError> for Failure {
    fn from(e: llb::complex::ComplexError) -> Self {
        Self::input(e)
    }
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::DegreeCap { .. } => Self::cap(e),
            _ => Self::input(e),
        }
    }
}

impl From<LueckError> for Failure {
    fn from(e: LueckError) -> Self {
        match e {
            LueckError::TooLargeForExact { .. } => Self::cap(e),
            _ => Self::input(e),
        }
    }
}

impl From<HypError> for Failure {
    fn from(e: HypError) -> Self {
        match e {
            HypError::TruncationUnreachable { .. } => Self::cap(e),
            _ => Self::input(e),
        }
    }
}

impl From<LocalError> for Failure {
    fn from(e: LocalError) -> Self {
        Self::input(e)
    }
}

type Run = Result<(), Failure>;

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    String::from_utf8(read(path)?).map_err(|_| Failure::input(format!("{}: not UTF-8", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Run {
    fs::write(path, bytes).map_err(|e| Failure {
        code: 1,
        message: format!("{}: {e}", path.display()),
    })
}

/// JSON with the manifest to `out`, or stdout.
fn emit_json<T: Serialize>(out: Option<&Path>, manifest: &RunManifest, report: &T) -> Run {
    let bytes = to_json(&Report { manifest, report });
    match out {
        Some(p) => write(p, &bytes),
        None => {
            print!("{}", String::from_utf8_lossy(&bytes));
            Ok(())
        }
    }
}

/// CSV to `out` with the manifest beside it, or CSV to stdout.
fn emit_csv(out: Option<&Path>, manifest: &RunManifest, table: &dyn Tabular) -> Run {
    let bytes = to_csv(table);
    match out {
        Some(p) => {
            write(p, &bytes)?;
            write(&p.with_extension("manifest.json"), &to_json(manifest))
        }
        None => {
            print!("{}", String::from_utf8_lossy(&bytes));
            Ok(())
        }
    }
}

fn split_grid(spec: &str) -> Result<(&str, &str, usize), Failure> {
    let bad = || Failure::input(format!("grid `{spec}` must read a:b:steps"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, n] = parts[..] else { return Err(bad()) };
    let n: usize = n.parse().map_err(|_| bad())?;
    if n < 1 {
        return Err(bad());
    }
    Ok((a, b, n))
}

fn geometric_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let (a, b, n) = split_grid(spec)?;
    let (a, b): (f64, f64) = match (a.parse(), b.parse()) {
        (Ok(a), Ok(b)) if a > 0.0 && b >= a => (a, b),
        _ => return Err(Failure::input(format!("grid `{spec}` needs 0 < a <= b"))),
    };
    Ok(if n == 1 { vec![a] } else { log_grid(a, b, n) })
}

fn rational_grid(spec: &str) -> Result<Vec<Ratio<i64>>, Failure> {
    let (a, b, n) = split_grid(spec)?;
    let (a, b) = match (parse_ratio(a), parse_ratio(b)) {
        (Some(a), Some(b)) if b >= a => (a, b),
        _ => return Err(Failure::input(format!("grid `{spec}` needs rational a <= b"))),
    };
    if n == 1 {
        return Ok(vec![a]);
    }
    let step = (b - a) / Ratio::from_integer(n as i64 - 1);
    Ok((0..n).map(|i| a + step * Ratio::from_integer(i as i64)).collect())
}

fn load_complex(path: &Path) -> Result<(SimplicialComplex, Vec<u8>), Failure> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure::input("complex file is not UTF-8"))?;
    Ok((
        parse_complex(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        bytes,
    ))
}

fn complex_cmd(cmd: ComplexCmd) -> Run {
    match cmd {
        ComplexCmd::Validate { file } => {
            let (k, _) = load_complex(&file)?;
            let counts: Vec<String> = k.cell_counts().iter().map(|c| c.to_string()).collect();
            println!(
                "ok: dimension {}, cells {}, euler characteristic {}",
                k.dim(),
                counts.join(" "),
                k.euler_characteristic()
            );
            Ok(())
        }
        ComplexCmd::Betti { file, degree, out } => {
            let (k, bytes) = load_complex(&file)?;
            let manifest = RunManifest::new("complex betti")
                .input(&file, &bytes)
                .param("degree", degree);
            match degree {
                Some(d) => {
                    let row = BettiRow {
                        degree: d,
                        betti: k.betti_number(d)?,
                    };
                    emit_csv(out.as_deref(), &manifest, &row)
                }
                None => emit_csv(out.as_deref(), &manifest, &k.betti_numbers()),
            }
        }
    }
}

fn build_tower(k: &SimplicialComplex, family: FamilyArg, a: &TowerBuildOpts) -> Result<CoverTower, Failure> {
    Ok(match family {
        FamilyArg::ModP => {
            let fam = match a.series {
                SeriesArg::Central => TowerFamily::ModPCentral {
                    p: a.p,
                    refine: a.refine,
                },
                SeriesArg::Homology => TowerFamily::ModPHomology { p: a.p },
            };
            normal_chain_tower(k, &fam, a.depth)?
        }
        FamilyArg::Cyclic => {
            if a.moduli.is_empty() {
                return Err(Failure::input("cyclic towers need --moduli"));
            }
            let fam = TowerFamily::Cyclic {
                weights: a.weights.clone(),
                moduli: a.moduli.clone(),
            };
            normal_chain_tower(k, &fam, a.depth)?
        }
        FamilyArg::FreeChain => match FreeQuotient::for_free_fundamental_group(k) {
            Ok(q) => free_subgroup_chain_tower(k, a.depth, Some(&q))?,
            Err(e) => {
                let (g2, q) = FreeQuotient::genus2_standard();
                if *k != g2 {
                    return Err(e.into());
                }
                free_subgroup_chain_tower(k, a.depth, Some(&q))?
            }
        },
    })
}

struct TowerBuildOpts {
    depth: usize,
    p: u64,
    series: SeriesArg,
    refine: bool,
    moduli: Vec<u64>,
    weights: Option<Vec<i64>>,
}

fn tower_cmd(cmd: TowerCmd) -> Run {
    let TowerCmd::Build {
        complex,
        family,
        depth,
        out,
        p,
        series,
        refine,
        moduli,
        weights,
    } = cmd;
    let (k, bytes) = load_complex(&complex)?;
    let opts = TowerBuildOpts {
        depth,
        p,
        series,
        refine,
        moduli,
        weights,
    };
    let tower = build_tower(&k, family, &opts)?;
    fs::create_dir_all(&out).map_err(|e| Failure {
        code: 1,
        message: format!("{}: {e}", out.display()),
    })?;
    let base_text = emit_complex(&k);
    write(&out.join("base.complex"), base_text.as_bytes())?;
    let mut levels = Vec::new();
    for (i, l) in tower.levels.iter().enumerate() {
        let complex_name = format!("level{i}.complex");
        let rep_name = format!("level{i}.perm");
        let rep_text = emit_permutation_rep(&l.rep);
        write(&out.join(&complex_name), emit_complex(&l.cover.complex).as_bytes())?;
        write(&out.join(&rep_name), rep_text.as_bytes())?;
        levels.push(TowerManifestLevel {
            degree: l.degree,
            normal: l.is_normal,
            connected: l.is_connected,
            complex: complex_name,
            rep: rep_name,
            rep_sha256: sha256_hex(rep_text.as_bytes()),
        });
    }
    let manifest = RunManifest::new("tower build")
        .input(&complex, &bytes)
        .param("family", tower.family.clone())
        .param("depth", depth)
        .param("p", opts.p)
        .param("refine", opts.refine)
        .param("moduli", &opts.moduli)
        .param("weights", &opts.weights);
    let tm = TowerManifest {
        base: "base.complex".into(),
        base_sha256: sha256_hex(base_text.as_bytes()),
        family: tower.family.clone(),
        trivial_intersection: tower.trivial_intersection,
        nested: tower.is_nested(),
        degrees: tower.degrees(),
        levels,
        manifest,
    };
    write(&out.join("tower.json"), &to_json(&tm))?;
    println!("{} levels, degrees {:?}", tm.levels.len(), tm.degrees);
    Ok(())
}

/// Rebuilds a tower from `tower.json`, checking recorded hashes.
fn load_tower(path: &Path) -> Result<(CoverTower, Vec<u8>), Failure> {
    let bytes = read(path)?;
    let tm: TowerManifest =
        serde_json::from_slice(&bytes).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let base_path = dir.join(&tm.base);
    let base_text = read_text(&base_path)?;
    if sha256_hex(base_text.as_bytes()) != tm.base_sha256 {
        return Err(Failure::input(format!("{}: hash mismatch", base_path.display())));
    }
    let base = parse_complex(&base_text)?;
    let mut reps: Vec<PermutationRep> = Vec::new();
    for l in &tm.levels {
        let p = dir.join(&l.rep);
        let text = read_text(&p)?;
        if sha256_hex(text.as_bytes()) != l.rep_sha256 {
            return Err(Failure::input(format!("{}: hash mismatch", p.display())));
        }
        reps.push(parse_permutation_rep(&text).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?);
    }
    let tower = CoverTower::from_reps(base, reps, tm.family.clone(), tm.trivial_intersection)?;
    Ok((tower, bytes))
}

fn luck_cmd(cmd: LuckCmd) -> Run {
    let LuckCmd::Run(a) = cmd;
    let (tower, bytes) = load_tower(&a.manifest)?;
    let convergence = normalized_betti_sequence(&tower, a.degree)?;
    let mode = match a.mode {
        ModeArg::Exact => TraceMode::Exact,
        ModeArg::Stochastic => TraceMode::Stochastic {
            probes: a.probes,
            poly_degree: a.poly_degree,
            seed: a.seed,
        },
    };
    let mut manifest = RunManifest::new("luck run")
        .input(&a.manifest, &bytes)
        .param("degree", a.degree)
        .param("mode", mode);
    let mut run = LueckRun {
        convergence,
        series: None,
        plateau: None,
        plateau_error: None,
    };
    if let Some(spec) = &a.t_grid {
        let grid = geometric_grid(spec)?;
        manifest = manifest.param("t_grid", &grid);
        let series = heat_trace_series(&tower, a.degree, &grid, mode)?;
        match plateau_from_series(series.clone()) {
            Ok(p) => run.plateau = Some(p),
            Err(LueckError::GridTooCoarse(why)) => {
                eprintln!("warning: no plateau: {why}");
                run.series = Some(series);
                run.plateau_error = Some(why);
            }
            Err(e) => return Err(e.into()),
        }
    }
    match &a.out {
        Some(out) => {
            emit_json(Some(out), &manifest, &run)?;
            write(&out.with_extension("csv"), &to_csv(&run))
        }
        None => emit_csv(None, &manifest, &run),
    }
}

fn load_graph(path: &Path) -> Result<(llb::local::Graph, Vec<u8>), Failure> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure::input("graph file is not UTF-8"))?;
    let (g, _) = parse_graph(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok((g, bytes))
}

fn load_census(path: &Path) -> Result<BallStatistics, Failure> {
    let bytes = read(path)?;
    let bad = |e: serde_json::Error| Failure::input(format!("{}: {e}", path.display()));
    let mut v: serde_json::Value = serde_json::from_slice(&bytes).map_err(bad)?;
    if let Some(inner) = v.get_mut("report") {
        v = inner.take();
    }
    serde_json::from_value(v).map_err(bad)
}

fn bs_cmd(cmd: BsCmd) -> Run {
    match cmd {
        BsCmd::Census { graph, radius, out } => {
            if radius == 0 {
                return Err(LocalError::NonPositiveRadius.into());
            }
            let (g, bytes) = load_graph(&graph)?;
            let stats = ball_census(&g, radius);
            let manifest = RunManifest::new("bs census")
                .input(&graph, &bytes)
                .param("radius", radius);
            emit_json(out.as_deref(), &manifest, &stats)
        }
        BsCmd::Compare { a, b } => {
            let tv = tv_distance(&load_census(&a)?, &load_census(&b)?)?;
            println!("{}", fmt_ratio(&tv));
            Ok(())
        }
        BsCmd::Thin {
            input,
            r_grid,
            samples,
            seed,
            max_offset,
            out,
        } => {
            let manifest = RunManifest::new("bs thin").param("r_grid", &r_grid);
            if input.extension().is_some_and(|e| e == "json") {
                let text = read_text(&input)?;
                let s = parse_surface(&text)?;
                let grid: Vec<f64> = rational_grid(&r_grid)?
                    .iter()
                    .map(|r| *r.numer() as f64 / *r.denom() as f64)
                    .collect();
                let manifest = manifest
                    .input(&input, text.as_bytes())
                    .param("samples", samples)
                    .param("seed", seed)
                    .param("max_offset", max_offset);
                let profile = surface_thin_part(&s, &grid, samples, seed, max_offset)?;
                emit_csv(out.as_deref(), &manifest, &profile)
            } else {
                let (g, bytes) = load_graph(&input)?;
                let profile = thin_part_profile(&g, &rational_grid(&r_grid)?)?;
                emit_csv(out.as_deref(), &manifest.input(&input, &bytes), &profile)
            }
        }
    }
}

fn hyp_cmd(cmd: HypCmd) -> Run {
    match cmd {
        HypCmd::Trace {
            surface,
            t,
            eps,
            points,
            seed,
            max_offset,
            out,
        } => {
            let text = read_text(&surface)?;
            let s = parse_surface(&text)?;
            let ts = if t.is_empty() { vec![0.5] } else { t };
            let pts = s.sample_points(points, seed, max_offset);
            let tables = deviation_vs_injrad(&s, &pts, &ts, eps, &ImagesConfig::default())?;
            let manifest = RunManifest::new("hyp trace")
                .input(&surface, text.as_bytes())
                .param("t", &ts)
                .param("eps", eps)
                .param("points", points)
                .param("seed", seed)
                .param("max_offset", max_offset);
            for tab in &tables {
                eprintln!(
                    "t = {}: max deviation * injrad^2 = {}",
                    fmt_float(tab.t),
                    fmt_float(tab.empirical_c)
                );
            }
            emit_csv(out.as_deref(), &manifest, &tables)
        }
        HypCmd::Dual { space, degree } => {
            let entry = compact_dual_entry(&space)?;
            let beta = compact_dual_l2_betti(&space, degree)?;
            println!(
                "{space} (dual {}, dim {}): beta_{degree} = {}",
                entry.dual,
                entry.dim,
                fmt_float(beta)
            );
            Ok(())
        }
        HypCmd::GenusLimit { max_genus, out } => {
            if max_genus < 2 {
                return Err(Failure::input("--max-genus must be at least 2"));
            }
            let genera: Vec<i64> = (2..=max_genus).collect();
            let rows = genus_limit_check(&genera)?;
            let manifest = RunManifest::new("hyp genus-limit").param("max_genus", max_genus);
            emit_csv(out.as_deref(), &manifest, &rows)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Complex(c) => complex_cmd(c),
        Command::Tower(c) => tower_cmd(c),
        Command::Luck(c) => luck_cmd(c),
        Command::Bs(c) => bs_cmd(c),
        Command::Hyp(c) => hyp_cmd(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
