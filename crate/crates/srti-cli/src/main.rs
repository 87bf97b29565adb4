//! `srti`: solve, check, generate and decompose SRTI instances.
//!
//! The artifact goes to stdout, diagnostics to stderr. Exit codes: 0 solved
//! or valid, 1 no solution or failed check, 2 usage or input error.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use srti_gadgets::{
    clique_witness_matching, existencefy, gen_td_reduction, gen_tcw_reduction, parse_graph, perfectize,
    tcw_clique_witness,
};
use srti_graph::{
    coarsen, feedback_edge_set, make_nice, parse_tcd, serialize_tcd, tcd_from_fes, tcw_exact_tiny, validate_tcd,
    TreeCutDecomposition, WidthReport,
};
use srti_model::{
    blocking_pairs, break_ties, break_ties_first, is_perfect, parse_instance, parse_matching, serialize_instance,
    serialize_matching, Instance, Matching, TieBreak,
};
use srti_oracle::{brute_solve_capped, random_instance_seeded, SolveMode, DEFAULT_EDGE_CAP};
use srti_tcw::{solve_with, Mode, SolveOptions};

/// Adhesion cap applied to automatically built decompositions.
const AUTO_ADHESION_CAP: usize = 8;

#[derive(Parser)]
#[command(name = "srti", version, about = "Stable roommates with ties and incomplete lists")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Find a stable matching (existence, perfect or maximum).
    Solve(SolveArgs),
    /// Check a matching for stability and list blocking pairs.
    Check {
        instance: PathBuf,
        matching: PathBuf,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Build, validate or compute tree-cut decompositions.
    Decomp(DecompArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Existence,
    Perfect,
    Max,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Brute,
    Tcw,
    Fes,
    Auto,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "existence")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "auto")]
    algo: Algo,
    /// Tree-cut decomposition for the tcw solver (built automatically if absent).
    #[arg(long)]
    decomp: Option<PathBuf>,
    /// With --algo tcw and --mode max: return any stable matching (½-approximation).
    #[arg(long)]
    approx: bool,
    /// Accepted for reproducible pipelines; all solvers are deterministic.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for the tcw solver (default: SRTI_THREADS or 1).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct Output {
    /// Write the instance here and the manifest to `<out>.manifest`;
    /// otherwise the instance goes to stdout and the manifest to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCmd {
    /// Seeded random instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.4)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0.3)]
        tie_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Clique reduction with bounded treedepth.
    CliqueTd(CliqueArgs),
    /// Clique reduction with bounded tree-cut width.
    CliqueTcw(CliqueArgs),
    /// Perfect-matching padding with `k` extra agents.
    Perfectize {
        instance: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Guard every agent so that stable matchings must be perfect.
    Existencefy {
        instance: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Replace every tie by a strict order.
    BreakTies {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "first")]
        policy: Policy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Policy {
    First,
    Random,
}

#[derive(Args)]
struct CliqueArgs {
    /// Source graph: `vertices <n>` then one `u v` line per edge (labels 1..n).
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    strict: bool,
    /// Comma-separated clique (1-based labels); writes the witness matching.
    #[arg(long, requires = "witness")]
    clique: Option<String>,
    #[arg(long, requires = "clique")]
    witness: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "action")]
struct DecompAction {
    /// Emit the spanning-forest decomposition.
    #[arg(long)]
    from_fes: bool,
    /// Validate a decomposition file and report its width.
    #[arg(long, value_name = "PATH")]
    validate: Option<PathBuf>,
    /// Exact tree-cut width of a very small graph.
    #[arg(long)]
    exact_tiny: bool,
}

#[derive(Args)]
struct DecompArgs {
    instance: PathBuf,
    #[command(flatten)]
    action: DecompAction,
    /// With --from-fes: normalise with make_nice.
    #[arg(long)]
    nice: bool,
    /// With --from-fes: merge nodes whose adhesion exceeds this cap.
    #[arg(long)]
    coarsen: Option<usize>,
}

/// Non-zero outcome with a message for stderr.
struct Fail {
    code: u8,
    msg: String,
}

fn usage(msg: impl Display) -> Fail {
    Fail { code: 2, msg: msg.to_string() }
}

fn failed(msg: impl Display) -> Fail {
    Fail { code: 1, msg: msg.to_string() }
}

type CmdResult = Result<u8, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Check { instance, matching } => cmd_check(&instance, &matching),
        Cmd::Gen(g) => cmd_gen(g),
        Cmd::Decomp(d) => cmd_decomp(d),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Fail> {
    let inst = parse_instance(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    for &(v, w) in inst.dropped() {
        eprintln!("warning: `{}` lists `{}` one-sidedly; ignored", inst.name(v), inst.name(w));
    }
    Ok(inst)
}

fn env_usize(key: &str) -> Result<Option<usize>, Fail> {
    match std::env::var(key) {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| usage(format!("{key} must be a non-negative integer"))),
        Err(_) => Ok(None),
    }
}

/// Spanning-forest decomposition, normalised and with adhesions capped.
fn auto_decomposition(inst: &Instance) -> TreeCutDecomposition {
    let g = inst.graph();
    let base = tcd_from_fes(g);
    let nice = make_nice(g, &base).map(|r| r.0).unwrap_or(base);
    coarsen(g, &nice, AUTO_ADHESION_CAP)
}

fn cmd_solve(a: SolveArgs) -> CmdResult {
    let inst = load_instance(&a.instance)?;
    let cap = env_usize("SRTI_BRUTE_EDGE_CAP")?.unwrap_or(DEFAULT_EDGE_CAP);
    let threads = match a.threads {
        Some(t) => t,
        None => env_usize("SRTI_THREADS")?.unwrap_or(1),
    }
    .max(1);
    if a.approx && !(a.algo == Algo::Tcw && a.mode == ModeArg::Max) {
        return Err(usage("--approx only applies to --algo tcw --mode max"));
    }
    if a.decomp.is_some() && matches!(a.algo, Algo::Brute | Algo::Fes) {
        return Err(usage("--decomp is only used by the tcw solver"));
    }
    if a.algo == Algo::Tcw && a.mode == ModeArg::Max && !a.approx {
        return Err(usage(
            "maximum stable matching is W[1]-hard parameterized by tree-cut width; \
             use --algo fes or brute, or --approx for a ½-approximation",
        ));
    }
    let algo = match a.algo {
        Algo::Auto if inst.graph().m() <= cap => Algo::Brute,
        Algo::Auto if a.mode == ModeArg::Max => Algo::Fes,
        Algo::Auto => Algo::Tcw,
        other => other,
    };
    let found = match algo {
        Algo::Brute => {
            let mode = match a.mode {
                ModeArg::Existence => SolveMode::Existence,
                ModeArg::Perfect => SolveMode::Perfect,
                ModeArg::Max => SolveMode::Max,
            };
            eprintln!("algo: brute (edges {}, cap {cap})", inst.graph().m());
            brute_solve_capped(&inst, mode, cap).map_err(usage)?
        }
        Algo::Fes => {
            eprintln!("algo: fes (feedback edges {})", feedback_edge_set(inst.graph()).len());
            let best = srti_fes::fes_max(&inst).map_err(usage)?;
            // A maximum stable matching is perfect iff any perfect stable matching exists.
            best.filter(|m| a.mode != ModeArg::Perfect || 2 * m.len() == inst.n())
        }
        Algo::Tcw | Algo::Auto => {
            let tcd = match &a.decomp {
                Some(p) => {
                    let text = read(p)?;
                    parse_tcd(&text, |s| inst.id(s)).map_err(|e| usage(format!("{}: {e}", p.display())))?
                }
                None => auto_decomposition(&inst),
            };
            let width = validate_tcd(inst.graph(), &tcd).map_err(usage)?.width;
            eprintln!("algo: tcw (width {width}, nodes {}, threads {threads})", tcd.len());
            let mode = if a.mode == ModeArg::Perfect { Mode::Perfect } else { Mode::Existence };
            let opts = SolveOptions { threads, exhaustive: false };
            solve_with(&inst, &tcd, mode, opts).map_err(usage)?
        }
    };
    match found {
        Some(m) => {
            eprintln!("size: {}", m.len());
            print!("{}", serialize_matching(&inst, &m));
            Ok(0)
        }
        None => {
            println!("NONE");
            Ok(1)
        }
    }
}

fn cmd_check(instance: &Path, matching: &Path) -> CmdResult {
    let inst = load_instance(instance)?;
    let m = parse_matching(&read(matching)?, &inst).map_err(|e| usage(format!("{}: {e}", matching.display())))?;
    let bps = blocking_pairs(&inst, &m).map_err(usage)?;
    if bps.is_empty() {
        let perfect = is_perfect(&inst, &m).map_err(usage)?;
        println!("{}", if perfect { "PERFECT" } else { "STABLE" });
        eprintln!("size: {}", m.len());
        return Ok(0);
    }
    println!("UNSTABLE");
    for bp in &bps {
        println!("{} {}", inst.name(bp.v), inst.name(bp.w));
    }
    Ok(1)
}

fn emit(output: &Output, instance: &str, manifest: &str) -> CmdResult {
    match &output.out {
        Some(p) => {
            write(p, instance)?;
            let mp = manifest_path(p);
            write(&mp, manifest)?;
            eprintln!("wrote {} and {}", p.display(), mp.display());
        }
        None => {
            print!("{instance}");
            eprint!("{manifest}");
        }
    }
    Ok(0)
}

fn manifest_path(p: &Path) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(".manifest");
    PathBuf::from(s)
}

fn cmd_gen(g: GenCmd) -> CmdResult {
    match g {
        GenCmd::Random { n, edge_prob, tie_prob, seed, output } => {
            for (name, p) in [("edge-prob", edge_prob), ("tie-prob", tie_prob)] {
                if !(0.0..=1.0).contains(&p) {
                    return Err(usage(format!("--{name} must lie in [0, 1]")));
                }
            }
            let inst = random_instance_seeded(n, edge_prob, tie_prob, seed);
            let manifest = format!(
                "kind: random\nn: {n}\nedge_prob: {edge_prob}\ntie_prob: {tie_prob}\nseed: {seed}\nagents: {}\nedges: {}\n",
                inst.n(),
                inst.graph().m()
            );
            emit(&output, &serialize_instance(&inst), &manifest)
        }
        GenCmd::CliqueTd(a) => gen_clique(a, false),
        GenCmd::CliqueTcw(a) => gen_clique(a, true),
        GenCmd::Perfectize { instance, k, output } => {
            let inst = load_instance(&instance)?;
            let out = perfectize(&inst, k);
            let manifest = format!("kind: perfectize\nk: {k}\nsource_agents: {}\nagents: {}\n", inst.n(), out.n());
            emit(&output, &serialize_instance(&out), &manifest)
        }
        GenCmd::Existencefy { instance, output } => {
            let inst = load_instance(&instance)?;
            let out = existencefy(&inst);
            let manifest = format!("kind: existencefy\nsource_agents: {}\nagents: {}\n", inst.n(), out.n());
            emit(&output, &serialize_instance(&out), &manifest)
        }
        GenCmd::BreakTies { instance, policy, seed, output } => {
            let inst = load_instance(&instance)?;
            let out = match policy {
                Policy::First => break_ties_first(&inst),
                Policy::Random => break_ties_random(&inst, seed)?,
            };
            let policy_name = if policy == Policy::First { "first" } else { "random" };
            let manifest = format!("kind: break-ties\npolicy: {policy_name}\nseed: {seed}\nagents: {}\n", out.n());
            emit(&output, &serialize_instance(&out), &manifest)
        }
    }
}

fn break_ties_random(inst: &Instance, seed: u64) -> Result<Instance, Fail> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sel = Vec::new();
    for v in 0..inst.n() {
        for (i, g) in inst.lists(v).iter().enumerate() {
            if g.len() > 1 {
                let mut order = g.clone();
                order.shuffle(&mut rng);
                sel.push(TieBreak { agent: v, group: i, order });
            }
        }
    }
    break_ties(inst, &sel).map_err(usage)
}

fn parse_clique(s: &str) -> Result<Vec<usize>, Fail> {
    s.split(',')
        .map(|w| match w.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(usage(format!("bad clique vertex `{w}` (expected labels 1..n)"))),
        })
        .collect()
}

fn gen_clique(a: CliqueArgs, tcw: bool) -> CmdResult {
    let g = parse_graph(&read(&a.graph)?).map_err(|e| usage(format!("{}: {e}", a.graph.display())))?;
    let clique = a.clique.as_deref().map(parse_clique).transpose()?;
    let (inst, mut manifest, witness): (Instance, String, Option<Matching>) = if tcw {
        let red = gen_tcw_reduction(&g, a.k, a.strict).map_err(usage)?;
        let w = clique.map(|c| tcw_clique_witness(&red, &c)).transpose().map_err(usage)?;
        (red.instance.clone(), red.manifest(), w)
    } else {
        let red = gen_td_reduction(&g, a.k, a.strict).map_err(usage)?;
        let w = clique.map(|c| clique_witness_matching(&red, &c)).transpose().map_err(usage)?;
        (red.instance.clone(), red.manifest(), w)
    };
    if let (Some(m), Some(p)) = (&witness, &a.witness) {
        write(p, &serialize_matching(&inst, m))?;
        manifest.push_str(&format!("witness: {}\nwitness_size: {}\n", p.display(), m.len()));
    }
    emit(&a.output, &serialize_instance(&inst), &manifest)
}

fn width_lines(tcd: &TreeCutDecomposition, r: &WidthReport) -> String {
    let mut out = format!("width: {}\nnodes: {}\n", r.width, tcd.len());
    for t in 0..tcd.len() {
        out.push_str(&format!("node {}: adhesion {} torso {}\n", tcd.names[t], r.adh[t], r.tor[t]));
    }
    out
}

fn cmd_decomp(d: DecompArgs) -> CmdResult {
    let inst = load_instance(&d.instance)?;
    let g = inst.graph();
    if (d.nice || d.coarsen.is_some()) && !d.action.from_fes {
        return Err(usage("--nice and --coarsen apply to --from-fes only"));
    }
    if d.action.from_fes {
        let mut tcd = tcd_from_fes(g);
        if d.nice {
            tcd = make_nice(g, &tcd).map_err(usage)?.0;
        }
        if let Some(cap) = d.coarsen {
            tcd = coarsen(g, &tcd, cap);
        }
        let r = validate_tcd(g, &tcd).map_err(usage)?;
        eprintln!("feedback_edges: {}", feedback_edge_set(g).len());
        eprint!("{}", width_lines(&tcd, &r));
        print!("{}", serialize_tcd(&tcd, |v| inst.name(v).to_string()));
        return Ok(0);
    }
    if let Some(p) = &d.action.validate {
        let text = read(p)?;
        let tcd = parse_tcd(&text, |s| inst.id(s)).map_err(|e| failed(format!("{}: {e}", p.display())))?;
        let r = validate_tcd(g, &tcd).map_err(|e| failed(format!("{}: {e}", p.display())))?;
        print!("{}", width_lines(&tcd, &r));
        return Ok(0);
    }
    let w = tcw_exact_tiny(g).map_err(usage)?;
    println!("tcw: {w}");
    Ok(0)
}
