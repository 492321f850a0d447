//! Command-line surface of `listcolor`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! code together with everything that would be printed, so the binary is a
//! thin wrapper and tests can drive commands in-process.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use listcolor::approx::approx_2_del;
use listcolor::choosability::{
    classify_core, compute_core, is_2_choosable, is_k_choosable_exhaustive, ExhaustiveChoosability,
    TwoChoosability,
};
use listcolor::exact::{min_2_del_exact, min_near_3, near_3_decide};
use listcolor::graph::{diameter, find_triangle, is_bipartite, Bipartiteness};
use listcolor::io::{parse_dimacs_cnf, parse_graph, write_dimacs_cnf, write_graph};
use listcolor::multigraph::shortest_cycle;
use listcolor::reductions::cnf::parse_assignment;
use listcolor::reductions::{
    build_clause_gadget_planar, build_edge_gadget, build_forbidden_gadget, build_g_phi_p,
    build_h_phi, constraint_graph_p, decomposition_from_assignment, deletion_set_from_assignment,
    h_phi_four_coloring, triangle_reduction, verify_constraint_graph, ArtifactKind, EdgeKind,
    ReductionArtifact,
};
use listcolor::{generators, Budget, CountedMultiGraph, Error, Graph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "listcolor", version, about = "List-coloring toolkit")]
pub struct Cli {
    /// Print the machine-readable report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Node-expansion budget for the exact solvers.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Basic structure: size, bipartiteness, triangles, diameter, girth.
    Stats { graph: PathBuf },
    /// The core and its component classification.
    Core { graph: PathBuf },
    /// Decide 2-choosability.
    Check2 {
        graph: PathBuf,
        /// Also run the exhaustive list-assignment oracle.
        #[arg(long)]
        oracle: bool,
        /// Report the offending core component.
        #[arg(long)]
        witness: bool,
    },
    /// Decide near-3-choosability.
    Near3 {
        graph: PathBuf,
        /// Find a minimum independent set A instead of any.
        #[arg(long)]
        min: bool,
    },
    /// Find a 2-choosable deletion set.
    Del2 {
        graph: PathBuf,
        /// Exact minimum instead of the greedy cycle deletion.
        #[arg(long)]
        exact: bool,
    },
    /// Build a reduction graph.
    Reduce {
        #[command(subcommand)]
        target: Reduce,
    },
    /// Turn a satisfying assignment into a solution of a reduction graph.
    SolutionFromAssignment {
        artifact: PathBuf,
        /// Truth values of x1, x2, ... as a bit string such as 101.
        #[arg(long)]
        tau: String,
    },
    /// Check the constraint graph and the gadgets.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Generate inputs.
    Gen {
        #[command(subcommand)]
        kind: Gen,
    },
}

#[derive(Debug, Args)]
struct Output {
    /// Write `<prefix>.graph`, `<prefix>.roles.json` and `<prefix>.artifact.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Reduce {
    /// 3-SAT to near-3-choosability.
    Sat3 {
        cnf: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Planar 3-SAT to minimum near-3-choosability on bipartite graphs.
    Planar3sat {
        cnf: PathBuf,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Vertex cover to 2-choosable deletion.
    Vc {
        graph: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Subcommand)]
enum Verify {
    Gadgets {
        #[arg(long, default_value_t = 1)]
        p: u64,
    },
}

#[derive(Debug, Subcommand)]
enum Gen {
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Theta {
        /// Path lengths, comma separated.
        #[arg(long, value_delimiter = ',')]
        lengths: Vec<usize>,
    },
    Formula {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub search_nodes: u64,
    pub runtime_ms: u64,
}

/// Machine-readable result of one command. Vertex ids are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    /// SHA-256 of the input file, hex encoded.
    pub input_digest: Option<String>,
    pub verdict: String,
    pub witnesses: Value,
    pub counters: Counters,
}

/// Exit code plus what goes to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Done {
    code: i32,
    verdict: String,
    witnesses: Value,
    text: Vec<String>,
}

impl Done {
    fn new(code: i32, verdict: impl Into<String>, witnesses: Value) -> Self {
        let verdict = verdict.into();
        Done {
            code,
            text: vec![verdict.clone()],
            verdict,
            witnesses,
        }
    }

    fn line(mut self, l: impl Into<String>) -> Self {
        self.text.push(l.into());
        self
    }
}

/// Failure of a command before it produced a verdict.
enum Fail {
    Usage(String),
    Budget(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Fail::Budget(e.to_string()),
            other => Fail::Usage(other.to_string()),
        }
    }
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn fmt_set(vs: &[usize]) -> String {
    let s: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", s.join(" "))
}

struct Context {
    budget: Budget,
    digest: Option<String>,
}

impl Context {
    fn read(&mut self, path: &Path) -> Result<String, Fail> {
        let bytes = fs::read(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
        self.digest = Some(hex::encode(Sha256::digest(&bytes)));
        String::from_utf8(bytes).map_err(|_| Fail::Usage(format!("{}: not UTF-8", path.display())))
    }

    fn graph(&mut self, path: &Path) -> Result<Graph, Fail> {
        let text = self.read(path)?;
        parse_graph(&text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let start = Instant::now();
    let mut ctx = Context {
        budget: cli.budget.map(Budget::new).unwrap_or_default(),
        digest: None,
    };
    let name = command_name(&cli.command);
    let result = execute(&cli.command, &mut ctx);
    let counters = Counters {
        search_nodes: ctx.budget.expanded(),
        runtime_ms: start.elapsed().as_millis() as u64,
    };
    let (code, verdict, witnesses, text, stderr) = match result {
        Ok(d) => (d.code, d.verdict, d.witnesses, d.text, String::new()),
        Err(Fail::Usage(msg)) => (
            EXIT_USAGE,
            "error".to_string(),
            json!({ "error": msg }),
            Vec::new(),
            format!("error: {msg}\n"),
        ),
        Err(Fail::Budget(msg)) => (
            EXIT_BUDGET,
            "budget exceeded".to_string(),
            json!({ "error": msg }),
            Vec::new(),
            format!("error: {msg}\n"),
        ),
    };
    let report = Report {
        command: name,
        version: env!("CARGO_PKG_VERSION").to_string(),
        input_digest: ctx.digest,
        verdict,
        witnesses,
        counters,
    };
    let stdout = if cli.json {
        serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
    } else {
        text.iter().map(|l| format!("{l}\n")).collect()
    };
    Outcome {
        code,
        stdout,
        stderr,
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Stats { .. } => "stats".into(),
        Command::Core { .. } => "core".into(),
        Command::Check2 { .. } => "check2".into(),
        Command::Near3 { .. } => "near3".into(),
        Command::Del2 { .. } => "del2".into(),
        Command::Reduce { target } => match target {
            Reduce::Sat3 { .. } => "reduce sat3".into(),
            Reduce::Planar3sat { .. } => "reduce planar3sat".into(),
            Reduce::Vc { .. } => "reduce vc".into(),
        },
        Command::SolutionFromAssignment { .. } => "solution-from-assignment".into(),
        Command::Verify { .. } => "verify gadgets".into(),
        Command::Gen { kind } => match kind {
            Gen::Gnp { .. } => "gen gnp".into(),
            Gen::Cycle { .. } => "gen cycle".into(),
            Gen::Theta { .. } => "gen theta".into(),
            Gen::Formula { .. } => "gen formula".into(),
        },
    }
}

fn execute(command: &Command, ctx: &mut Context) -> Result<Done, Fail> {
    match command {
        Command::Stats { graph } => stats(&ctx.graph(graph)?),
        Command::Core { graph } => core(&ctx.graph(graph)?),
        Command::Check2 {
            graph,
            oracle,
            witness,
        } => {
            let g = ctx.graph(graph)?;
            check2(&g, *oracle, *witness, &mut ctx.budget)
        }
        Command::Near3 { graph, min } => {
            let g = ctx.graph(graph)?;
            near3(&g, *min, &mut ctx.budget)
        }
        Command::Del2 { graph, exact } => {
            let g = ctx.graph(graph)?;
            del2(&g, *exact, &mut ctx.budget)
        }
        Command::Reduce { target } => reduce(target, ctx),
        Command::SolutionFromAssignment { artifact, tau } => {
            let text = ctx.read(artifact)?;
            let art: ReductionArtifact = serde_json::from_str(&text)
                .map_err(|e| Fail::Usage(format!("{}: {e}", artifact.display())))?;
            solution(&art, tau)
        }
        Command::Verify {
            what: Verify::Gadgets { p },
        } => verify_gadgets(*p),
        Command::Gen { kind } => generate(kind),
    }
}

fn stats(g: &Graph) -> Result<Done, Fail> {
    let bip = is_bipartite(g).is_bipartite();
    let tri = find_triangle(g);
    let diam = diameter(g);
    let girth = shortest_cycle(&CountedMultiGraph::from_graph(g)).map(|c| c.len());
    let show = |x: Option<usize>, none: &str| x.map_or(none.to_string(), |d| d.to_string());
    Ok(Done::new(
        EXIT_OK,
        "ok",
        json!({
            "n": g.n(),
            "m": g.m(),
            "bipartite": bip,
            "triangle_free": tri.is_none(),
            "triangle": tri.map(|t| one_based(&t)),
            "diameter": diam,
            "girth": girth,
        }),
    )
    .line(format!("n = {}, m = {}", g.n(), g.m()))
    .line(format!("bipartite: {bip}"))
    .line(format!("triangle-free: {}", tri.is_none()))
    .line(format!("diameter: {}", show(diam, "disconnected")))
    .line(format!("girth: {}", show(girth, "acyclic"))))
}

fn core(g: &Graph) -> Result<Done, Fail> {
    let core = compute_core(g);
    let classes = classify_core(&core.graph)?;
    let mut done = Done::new(
        EXIT_OK,
        "ok",
        json!({
            "kept": one_based(&core.kept),
            "components": classes.iter().map(|c| json!({
                "kind": format!("{:?}", c.kind),
                "vertices": core.kept_ids(&c.component),
            })).collect::<Vec<_>>(),
        }),
    )
    .line(format!(
        "core keeps {} of {} vertices",
        core.kept.len(),
        g.n()
    ));
    for c in &classes {
        let ids: Vec<usize> = c.component.iter().map(|&v| core.kept[v]).collect();
        done = done.line(format!("{:?}: {}", c.kind, fmt_set(&ids)));
    }
    Ok(done)
}

trait KeptIds {
    fn kept_ids(&self, local: &[usize]) -> Vec<usize>;
}

impl KeptIds for listcolor::choosability::Core {
    fn kept_ids(&self, local: &[usize]) -> Vec<usize> {
        local.iter().map(|&v| self.kept[v] + 1).collect()
    }
}

fn check2(g: &Graph, oracle: bool, witness: bool, budget: &mut Budget) -> Result<Done, Fail> {
    let verdict = is_2_choosable(g);
    let mut w = json!({ "choosable": verdict.is_choosable() });
    let mut done_lines = Vec::new();
    if let (true, TwoChoosability::NotChoosable { component }) = (witness, &verdict) {
        w["component"] = json!(one_based(component));
        done_lines.push(format!("offending core component: {}", fmt_set(component)));
    }
    if oracle {
        match is_k_choosable_exhaustive(g, 2, budget)? {
            ExhaustiveChoosability::Choosable {
                assignments_checked,
            } => {
                w["oracle"] =
                    json!({ "choosable": true, "assignments_checked": assignments_checked });
                done_lines.push(format!(
                    "oracle: 2-choosable ({assignments_checked} assignments)"
                ));
            }
            ExhaustiveChoosability::NotChoosable(lists) => {
                w["oracle"] = json!({ "choosable": false, "lists": lists.to_string() });
                done_lines.push("oracle: not 2-choosable; lists with no coloring:".into());
                done_lines.extend(lists.to_string().lines().map(str::to_string));
            }
        }
        if w["oracle"]["choosable"] != w["choosable"] {
            return Err(Fail::Usage("oracle disagrees with the core test".into()));
        }
    }
    let (code, v) = if verdict.is_choosable() {
        (EXIT_OK, "2-choosable")
    } else {
        (EXIT_NEGATIVE, "not 2-choosable")
    };
    let mut done = Done::new(code, v, w);
    for l in done_lines {
        done = done.line(l);
    }
    Ok(done)
}

fn near3(g: &Graph, min: bool, budget: &mut Budget) -> Result<Done, Fail> {
    let a = if min {
        min_near_3(g, budget)?.map(|o| o.set)
    } else {
        near_3_decide(g, budget)?.map(|d| d.a)
    };
    Ok(match a {
        Some(a) => Done::new(
            EXIT_OK,
            "near-3-choosable",
            json!({ "a": one_based(&a), "size": a.len() }),
        )
        .line(format!("A = {} ({} vertices)", fmt_set(&a), a.len())),
        None => Done::new(EXIT_NEGATIVE, "not near-3-choosable", json!({ "a": null })),
    })
}

fn del2(g: &Graph, exact: bool, budget: &mut Budget) -> Result<Done, Fail> {
    let (a, extra) = if exact {
        (
            min_2_del_exact(g, budget)?.set,
            json!({ "method": "exact" }),
        )
    } else {
        let r = approx_2_del(g)?;
        let cycles: Vec<Vec<Vec<usize>>> = r
            .cycles
            .iter()
            .map(|c| c.iter().map(|prov| one_based(prov)).collect())
            .collect();
        (r.set, json!({ "method": "greedy", "cycles": cycles }))
    };
    let mut w = json!({ "a": one_based(&a), "size": a.len() });
    w["method"] = extra["method"].clone();
    if let Some(c) = extra.get("cycles") {
        w["cycles"] = c.clone();
    }
    Ok(Done::new(EXIT_OK, "ok", w).line(format!("A = {} ({} vertices)", fmt_set(&a), a.len())))
}

fn write_artifact(art: &ReductionArtifact, output: &Output) -> Result<Option<Value>, Fail> {
    let Some(prefix) = &output.out else {
        return Ok(None);
    };
    let with = |ext: &str| {
        let mut s = prefix.clone().into_os_string();
        s.push(ext);
        PathBuf::from(s)
    };
    let files = [
        (with(".graph"), write_graph(&art.graph)),
        (
            with(".roles.json"),
            serde_json::to_string_pretty(&art.roles_json()).unwrap() + "\n",
        ),
        (
            with(".artifact.json"),
            serde_json::to_string(art).unwrap() + "\n",
        ),
    ];
    for (path, content) in &files {
        fs::write(path, content).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(Some(json!(files
        .iter()
        .map(|(p, _)| p.display().to_string())
        .collect::<Vec<_>>())))
}

fn reduce(target: &Reduce, ctx: &mut Context) -> Result<Done, Fail> {
    let (art, output, mut w) = match target {
        Reduce::Sat3 { cnf, output } => {
            let phi = parse_dimacs_cnf(&ctx.read(cnf)?)?;
            let art = build_h_phi(&phi)?;
            let col = h_phi_four_coloring(&art)?;
            let w = json!({
                "triangle_free": find_triangle(&art.graph).is_none(),
                "four_coloring": format!("{:?}", col.source),
            });
            (art, output, w)
        }
        Reduce::Planar3sat { cnf, p, output } => {
            let phi = parse_dimacs_cnf(&ctx.read(cnf)?)?;
            let art = build_g_phi_p(&phi, *p)?;
            let w = json!({ "bipartite": is_bipartite(&art.graph).is_bipartite() });
            (art, output, w)
        }
        Reduce::Vc { graph, output } => (triangle_reduction(&ctx.graph(graph)?), output, json!({})),
    };
    art.validate_roles()
        .map_err(|e| Fail::Usage(format!("role check failed: {e}")))?;
    w["n"] = json!(art.n());
    w["m"] = json!(art.graph.m());
    let mut done = Done::new(EXIT_OK, "ok", Value::Null).line(format!(
        "{:?}: n = {}, m = {}",
        art.kind,
        art.n(),
        art.graph.m()
    ));
    if let Some(files) = write_artifact(&art, output)? {
        for f in files.as_array().unwrap() {
            done = done.line(format!("wrote {}", f.as_str().unwrap()));
        }
        w["files"] = files;
    } else if !matches!(art.kind, ArtifactKind::HPhi | ArtifactKind::GPhiP) {
        done.text
            .push(write_graph(&art.graph).trim_end().to_string());
    }
    done.witnesses = w;
    Ok(done)
}

fn solution(art: &ReductionArtifact, tau: &str) -> Result<Done, Fail> {
    let tau = parse_assignment(tau)?;
    let a = match art.kind {
        ArtifactKind::HPhi => decomposition_from_assignment(art, &tau)?.a,
        ArtifactKind::GPhiP => deletion_set_from_assignment(art, &tau)?,
        other => {
            return Err(Fail::Usage(format!(
                "no assignment construction for {other:?}"
            )))
        }
    };
    Ok(Done::new(
        EXIT_OK,
        "ok",
        json!({ "a": one_based(&a), "size": a.len() }),
    )
    .line(format!("A has {} vertices: {}", a.len(), fmt_set(&a))))
}

fn verify_gadgets(p: u64) -> Result<Done, Fail> {
    let report = verify_constraint_graph(&constraint_graph_p());
    let mut checks: Vec<(String, bool, String)> = report
        .items
        .iter()
        .map(|i| (format!("P {}", i.item), i.pass, i.detail.clone()))
        .collect();
    let gadgets = [
        ("forbidden", build_forbidden_gadget(p)?, 3 * p + 5),
        ("clause", build_clause_gadget_planar(p)?, 9 * p + 18),
        (
            "positive edge",
            build_edge_gadget(EdgeKind::Positive, p)?,
            30 * p + 55,
        ),
        (
            "negative edge",
            build_edge_gadget(EdgeKind::Negative, p)?,
            12 * p + 22,
        ),
    ];
    for (name, art, size) in &gadgets {
        let bip = is_bipartite(&art.graph);
        let bad = !is_2_choosable(&art.graph).is_choosable();
        let roles = art.validate_roles();
        let ok = art.n() as u64 == *size
            && matches!(bip, Bipartiteness::Bipartite(_))
            && bad
            && roles.is_ok();
        checks.push((
            format!("{name} gadget"),
            ok,
            format!(
                "{} vertices (expected {size}), bipartite {}, not 2-choosable {bad}, roles {}",
                art.n(),
                bip.is_bipartite(),
                roles.err().unwrap_or_else(|| "ok".into()),
            ),
        ));
    }
    let all = checks.iter().all(|c| c.1);
    let mut done = Done::new(
        if all { EXIT_OK } else { EXIT_NEGATIVE },
        if all {
            "all checks pass"
        } else {
            "some checks fail"
        },
        json!(checks
            .iter()
            .map(|(item, pass, detail)| json!({ "item": item, "pass": pass, "detail": detail }))
            .collect::<Vec<_>>()),
    );
    for (item, pass, detail) in &checks {
        done = done.line(format!(
            "{} {item}: {detail}",
            if *pass { "PASS" } else { "FAIL" }
        ));
    }
    Ok(done)
}

fn generate(kind: &Gen) -> Result<Done, Fail> {
    let text = match kind {
        Gen::Gnp { n, p, seed } => {
            if !(0.0..=1.0).contains(p) {
                return Err(Fail::Usage(format!("edge probability {p} not in [0, 1]")));
            }
            write_graph(&generators::gnp(*n, *p, *seed))
        }
        Gen::Cycle { n } => {
            if *n < 3 {
                return Err(Fail::Usage("a cycle needs at least 3 vertices".into()));
            }
            write_graph(&generators::cycle(*n))
        }
        Gen::Theta { lengths } => {
            if lengths.len() < 2
                || lengths.iter().filter(|&&l| l < 2).count() > 1
                || lengths.contains(&0)
            {
                return Err(Fail::Usage(
                    "theta needs at least two paths, at most one of length 1".into(),
                ));
            }
            write_graph(&generators::theta(lengths))
        }
        Gen::Formula { n, k, seed } => {
            if *n < 3 {
                return Err(Fail::Usage(
                    "a 3-CNF formula needs at least 3 variables".into(),
                ));
            }
            write_dimacs_cnf(&generators::random_formula(*n, *k, *seed))
        }
    };
    let mut done = Done::new(EXIT_OK, "ok", json!({ "text": text }));
    done.text = vec![text.trim_end().to_string()];
    Ok(done)
}
