use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qbgg::bgg::double::DoubleComplex;
use qbgg::bgg::{verify_exactness, verify_phi_squared, BggComplex};
use qbgg::cartan::{format_root, Weight};
use qbgg::qfield::RankMode;
use qbgg::qsphere::{format_word, podles_report, sphere_generators, PodlesConfig};
use qbgg::reps::dim_identity;
use qbgg::report::{run_check, Report, Status};
use qbgg::suite::{self, FlagSpec, SuiteConfig};
use qbgg::uqalg::Uq;
use qbgg::verma::format_y;
use qbgg::weyl::{incomparability_violations, BruhatGraph};

/// Exact verification of quantum parabolic BGG complexes.
///
/// Simple roots are numbered from 1 as in the Bourbaki tables. `--s` is a
/// comma-separated list of the simple roots in S (empty for S = ∅); for an
/// irreducible flag manifold S omits exactly one cominuscule node.
#[derive(Parser)]
#[command(name = "qbgg", version, about, long_about)]
struct Cli {
    /// Worker threads for slice jobs.
    #[arg(long, env = "QBGG_THREADS", global = true)]
    threads: Option<usize>,
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Print the JSON report to stdout instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FlagArgs {
    /// Cartan type, e.g. A3, B2, G2.
    #[arg(long = "type")]
    cartan: String,
    /// 1-based simple roots in S, comma separated.
    #[arg(long, default_value = "")]
    s: String,
}

impl FlagArgs {
    fn spec(&self) -> FlagSpec {
        FlagSpec::new(&self.cartan, &self.s)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Fraction-free elimination over Z[q, q^-1].
    Symbolic,
    /// Integer specializations with a degree-bound certificate.
    Evaluation,
}

impl From<Mode> for RankMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Symbolic => RankMode::Symbolic,
            Mode::Evaluation => RankMode::Evaluation,
        }
    }
}

fn parse_box(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected A,B")?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a < 0 || b < 0 {
        return Err("box entries must be non-negative".into());
    }
    Ok((a, b))
}

fn parse_height(s: &str) -> Result<i64, String> {
    match s.parse::<i64>() {
        Ok(h) if h > 0 => Ok(h),
        _ => Err("height must be a positive integer".into()),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Root data of a Cartan type.
    Cartan {
        #[command(subcommand)]
        cmd: CartanCmd,
    },
    /// Bruhat graph of minimal coset representatives.
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// The dimension identity dim Λ^j(g/p_S) = Σ dim M(w.0).
    Dims {
        #[command(subcommand)]
        cmd: DimsCmd,
    },
    /// The BGG resolution of the trivial module.
    Bgg {
        #[command(subcommand)]
        cmd: BggCmd,
    },
    /// The double complex of W(w₁.0, w₂.0) modules.
    Double {
        #[command(subcommand)]
        cmd: DoubleCmd,
    },
    /// The standard quantum sphere and its de Rham complex.
    Podles {
        #[command(subcommand)]
        cmd: PodlesCmd,
    },
    /// The full acceptance suite, or every check for one flag when --type is given.
    All {
        #[arg(long = "type")]
        cartan: Option<String>,
        #[arg(long, default_value = "")]
        s: String,
        #[arg(long, value_parser = parse_height)]
        height: Option<i64>,
        #[arg(long = "box", value_parser = parse_box)]
        bidegree_box: Option<(i64, i64)>,
        #[arg(long, value_enum, default_value = "symbolic")]
        mode: Mode,
    },
}

#[derive(Subcommand)]
enum CartanCmd {
    Info {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long)]
        s: Option<String>,
    },
}

#[derive(Subcommand)]
enum WeylCmd {
    Graph(FlagArgs),
}

#[derive(Subcommand)]
enum DimsCmd {
    Verify(FlagArgs),
}

#[derive(Subcommand)]
enum BggCmd {
    /// Solve and normalize the standard maps.
    Build(FlagArgs),
    /// Check φ∘φ = 0 and exactness on weight slices up to a height.
    Verify {
        #[command(flatten)]
        flag: FlagArgs,
        #[arg(long, default_value = "5", value_parser = parse_height)]
        height: i64,
        #[arg(long, value_enum, default_value = "symbolic")]
        mode: Mode,
    },
}

#[derive(Subcommand)]
enum DoubleCmd {
    Verify {
        #[command(flatten)]
        flag: FlagArgs,
        /// E-degree and F-degree caps, A,B.
        #[arg(long = "box", default_value = "1,1", value_parser = parse_box)]
        bidegree_box: (i64, i64),
        #[arg(long, value_enum, default_value = "symbolic")]
        mode: Mode,
    },
}

#[derive(Subcommand)]
enum PodlesCmd {
    Demo {
        #[arg(long, default_value = "6")]
        b_degree: usize,
        #[arg(long, default_value = "5")]
        form_degree: usize,
    },
}

/// A report plus lines for the text summary.
struct Outcome {
    report: Report,
    text: Vec<String>,
}

fn usage(msg: impl std::fmt::Display) -> String {
    format!("invalid configuration: {msg}")
}

/// Fails early with a usage error if the flag cannot be set up.
fn checked(flag: &FlagSpec) -> Result<FlagSpec, String> {
    flag.setup().map_err(usage)?;
    Ok(flag.clone())
}

fn cartan_info(cartan: &str, s: Option<&str>) -> Result<Outcome, String> {
    let rs = qbgg::cartan::RootSystem::from_str_type(cartan).map_err(usage)?;
    let p = match s {
        Some(s) => Some(qbgg::cartan::ParabolicData::from_one_based(&rs, s).map_err(usage)?),
        None => None,
    };
    let mut text = vec![format!("type {}", rs.cartan_type), "Cartan matrix:".into()];
    for row in &rs.cartan_matrix {
        text.push(format!("  {row:?}"));
    }
    text.push(format!("symmetrizers {:?}", rs.symmetrizers));
    text.push(format!("positive roots ({}):", rs.positive_roots.len()));
    text.push(format!("  {}", rs.positive_roots.iter().map(|r| format_root(r)).collect::<Vec<_>>().join(", ")));
    text.push(format!("Weyl group order {}", rs.cartan_type.weyl_order()));
    if let Some(p) = &p {
        text.push(format!(
            "S = {{{}}}: {} Levi roots, dim g/p_S = {}, irreducible: {}",
            p.s_label(),
            p.levi_roots.len(),
            p.nilradical_roots.len(),
            p.irreducible
        ));
    }
    let mut report = Report::new(json!({ "command": "cartan info", "type": cartan, "s": s }));
    report.push(run_check("cartan_info", "root data", || {
        Ok((true, json!({ "root_system": &rs, "parabolic": &p })))
    }));
    Ok(Outcome { report, text })
}

fn weyl_graph(flag: FlagSpec) -> Result<Outcome, String> {
    let (rs, g, p) = flag.setup().map_err(usage)?;
    let graph = BruhatGraph::build(&rs, &g, &p).map_err(usage)?;
    let mut text = vec![format!("{}: |W^S| = {}, levels {:?}", flag.label(), graph.elements.len(), graph.level_sizes())];
    for (j, level) in graph.levels.iter().enumerate() {
        let names: Vec<&str> = level.iter().map(|&k| graph.labels[k].as_str()).collect();
        text.push(format!("  level {j}: {}", names.join(" ")));
    }
    for (a, arrow) in graph.arrows.iter().enumerate() {
        text.push(format!("  {}  sign {:+}", graph.arrow_label(&rs, arrow), graph.signs[a]));
    }
    let violations = incomparability_violations(&rs, &g, &p, &graph, &Weight::zero(rs.rank()));
    text.push(format!("squares {}, signs valid {}, incomparability violations {}", graph.squares.len(), graph.signs_valid(), violations.len()));
    let mut report = Report::new(json!({ "command": "weyl graph", "flag": &flag }));
    report.push(run_check("bruhat_graph", "arrows, squares and a sign assignment", || {
        Ok((graph.signs_valid(), &graph))
    }));
    report.push(run_check("incomparability", "w₁.0 − w₂.0 ∈ Q_S \\ Q_S^+ at equal length", || {
        Ok((violations.is_empty(), &violations))
    }));
    Ok(Outcome { report, text })
}

fn dims_verify(flag: FlagSpec) -> Result<Outcome, String> {
    let (rs, g, p) = flag.setup().map_err(usage)?;
    let graph = BruhatGraph::build(&rs, &g, &p).map_err(usage)?;
    let rows = dim_identity(&rs, &g, &p, &graph).map_err(usage)?;
    let mut text = vec![format!("{}", flag.label()), "   j  dim Λ^j  Σ dim M(w.0)  weights agree".into()];
    for r in &rows {
        text.push(format!("{:>4}  {:>7}  {:>12}  {}", r.level, r.exterior_dim, r.levi_dim_sum, r.multisets_agree));
    }
    let mut report = Report::new(json!({ "command": "dims verify", "flag": &flag }));
    report.push(suite::check_dimension_identity(&[flag]));
    Ok(Outcome { report, text })
}

fn bgg_build(flag: FlagSpec) -> Result<Outcome, String> {
    let (rs, g, p) = flag.setup().map_err(usage)?;
    let uq = Uq::new(&rs);
    let mut text = vec![flag.label()];
    let mut report = Report::new(json!({ "command": "bgg build", "flag": &flag }));
    let built = BggComplex::build(&rs, &uq, &g, &p, &Weight::zero(rs.rank()));
    if let Ok(c) = &built {
        for m in &c.maps.maps {
            text.push(format!(
                "  y({} → {}) = {}",
                c.graph.labels[m.from],
                c.graph.labels[m.to],
                format_y(&uq, &m.beta, &m.signed_y())
            ));
        }
    }
    report.push(run_check("standard_maps", "normalized standard maps with signs", || {
        let c = built?;
        let maps: Vec<_> = c
            .maps
            .maps
            .iter()
            .map(|m| {
                json!({
                    "from": c.graph.labels[m.from],
                    "to": c.graph.labels[m.to],
                    "beta": format_root(&m.beta),
                    "kernel_dim": m.kernel_dim,
                    "sign": m.sign,
                    "y": format_y(&uq, &m.beta, &m.signed_y()),
                })
            })
            .collect();
        Ok((true, maps))
    }));
    Ok(Outcome { report, text })
}

fn bgg_verify(flag: FlagSpec, height: i64, mode: RankMode) -> Result<Outcome, String> {
    let (rs, g, p) = flag.setup().map_err(usage)?;
    let uq = Uq::new(&rs);
    let mut text = vec![format!("{} up to height {height}", flag.label())];
    let mut report = Report::new(json!({ "command": "bgg verify", "flag": &flag, "height": height, "mode": mode }));
    let c = BggComplex::build(&rs, &uq, &g, &p, &Weight::zero(rs.rank())).map_err(usage)?;
    report.push(run_check("phi_squared", "φ∘φ = 0 on generators", || {
        let r = verify_phi_squared(&rs, &uq, &c)?;
        Ok((r.ok, r))
    }));
    let mut slices = Vec::new();
    report.push(run_check("exactness", "every weight slice up to the height cap is exact", || {
        let r = verify_exactness(&rs, &uq, &c, height, mode)?;
        slices = r.slices.clone();
        Ok((r.ok && r.slices.iter().all(|s| s.euler_characteristic == 0), r))
    }));
    text.push("  β  dims  ranks  euler  exact".into());
    for s in &slices {
        text.push(format!("  {}  {:?}  {:?}  {}  {}", s.beta, s.dims, s.ranks, s.euler_characteristic, s.exact));
    }
    Ok(Outcome { report, text })
}

fn double_verify(flag: FlagSpec, bx: (i64, i64), mode: RankMode) -> Result<Outcome, String> {
    let (rs, g, p) = flag.setup().map_err(usage)?;
    let uq = Uq::new(&rs);
    let c = BggComplex::build(&rs, &uq, &g, &p, &Weight::zero(rs.rank())).map_err(usage)?;
    let dc = DoubleComplex::build(&rs, &uq, &c, bx.0, bx.1).map_err(usage)?;
    let mut report = Report::new(json!({ "command": "double verify", "flag": &flag, "box": [bx.0, bx.1], "mode": mode }));
    report.push(run_check("slice_dimensions", "every box slice matches its character", || {
        Ok((true, dc.verify_slice_dims(bx.0, bx.1)?))
    }));
    report.push(run_check("maps_well_defined", "each map kills the annihilator of its source generator", || {
        let r = dc.verify_well_defined()?;
        Ok((r.iter().all(|x| x.ok), r))
    }));
    report.push(run_check("anticommutation", "horizontal and vertical maps anticommute", || {
        let r = dc.verify_anticommute(bx.0, bx.1)?;
        Ok((r.ok, r))
    }));
    report.push(run_check("rows_columns", "interior exactness of rows and columns; graded dimensions", || {
        let r = dc.verify_rows_columns(bx.0, bx.1, mode)?;
        Ok((r.ok, r))
    }));
    let text = vec![format!("{} with box ({}, {})", flag.label(), bx.0, bx.1)];
    Ok(Outcome { report, text })
}

fn podles_demo(config: PodlesConfig) -> Result<Outcome, String> {
    config.validate().map_err(usage)?;
    let mut report = Report::new(json!({ "command": "podles demo", "podles": config }));
    let mut text = vec!["generators a, b, c, d of C_q[SL2]; B is generated by".to_string()];
    for g in sphere_generators() {
        text.push(format!("  {}", format_word(&g)));
    }
    let r = podles_report(config).map_err(|e| e.to_string());
    if let Ok(r) = &r {
        text.push("relations:".into());
        for rel in &r.pairing.relations {
            text.push(format!("  {rel}"));
        }
        for c in &r.components {
            text.push(format!("{} (right weight {}): words by degree {:?}", c.component, c.right_weight, c.by_degree));
        }
        text.push(format!("calculus dimensions in degrees ≤ {}:", r.calculus.window));
        for row in &r.calculus.rows {
            text.push(format!("  {} k={}: {} (expected {})", row.differential, row.k, row.found, row.expected));
        }
        text.push(format!("volume form: {}", r.volume.form));
        for c in &r.volume.differential_classes {
            text.push(format!("  {c}"));
        }
        text.push(format!("sphere relation: {}", r.sphere.relation));
    }
    report.push(run_check("quantum_sphere", "de Rham complex of the quantum sphere", || {
        let r = r.map_err(qbgg::Error::Internal)?;
        Ok((r.ok, r))
    }));
    Ok(Outcome { report, text })
}

fn all(cartan: Option<String>, s: String, height: Option<i64>, bx: Option<(i64, i64)>, mode: RankMode) -> Result<Outcome, String> {
    let config = match cartan {
        None => {
            let mut c = SuiteConfig::acceptance();
            c.mode = mode;
            c
        }
        Some(t) => {
            let flag = checked(&FlagSpec::new(&t, &s))?;
            let (_, _, p) = flag.setup().map_err(usage)?;
            // the double complex needs an irreducible flag; keep its default box small
            let bx = bx.or(if p.irreducible { Some((1, 1)) } else { None });
            let mut c = SuiteConfig::single(flag, height.unwrap_or(5), bx, mode);
            if !p.irreducible {
                c.bgg.clear();
                c.double.clear();
            }
            c
        }
    };
    let report = suite::run_suite(&config);
    Ok(Outcome { report, text: Vec::new() })
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Cartan { cmd: CartanCmd::Info { cartan, s } } => cartan_info(cartan, s.as_deref()),
        Command::Weyl { cmd: WeylCmd::Graph(f) } => weyl_graph(checked(&f.spec())?),
        Command::Dims { cmd: DimsCmd::Verify(f) } => dims_verify(checked(&f.spec())?),
        Command::Bgg { cmd: BggCmd::Build(f) } => bgg_build(checked(&f.spec())?),
        Command::Bgg {
            cmd: BggCmd::Verify { flag, height, mode },
        } => bgg_verify(checked(&flag.spec())?, *height, (*mode).into()),
        Command::Double {
            cmd: DoubleCmd::Verify { flag, bidegree_box, mode },
        } => double_verify(checked(&flag.spec())?, *bidegree_box, (*mode).into()),
        Command::Podles {
            cmd: PodlesCmd::Demo { b_degree, form_degree },
        } => podles_demo(PodlesConfig {
            b_degree: *b_degree,
            form_degree: *form_degree,
        }),
        Command::All {
            cartan,
            s,
            height,
            bidegree_box,
            mode,
        } => all(cartan.clone(), s.clone(), *height, *bidegree_box, (*mode).into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("invalid configuration: cannot start {n} worker threads");
            return ExitCode::from(2);
        }
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("{msg}");
            return ExitCode::from(2);
        }
    };
    let json = outcome.report.to_json();
    if cli.json {
        println!("{json}");
    } else {
        for line in &outcome.text {
            println!("{line}");
        }
        for r in &outcome.report.records {
            let mark = if r.status == Status::Pass { "PASS" } else { "FAIL" };
            println!("{mark} {:<26} {:>8} ms  {}", r.check_id, r.elapsed_ms, r.anchor);
        }
        println!("overall: {}", if outcome.report.passed() { "pass" } else { "fail" });
    }
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &json) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if outcome.report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
