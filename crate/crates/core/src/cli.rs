//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for bad flags or unreadable input, 2 when an
//! invariant check fails or a Tier A report cell disagrees.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::complex::{Digraph, PathComplex, SimplicialComplex};
use crate::cycles::{z1_generators, GeneratorSource};
use crate::homology::{betti_table, input_digest, poincare_identity_check, required_depth, BettiTable};
use crate::omega::MayerComplex;
use crate::report::compat_report;
use crate::structure::{
    minimal_clusters, omega2_decompose, omega3_intersection_check, render_image_type, ClusterAnalysis, ClusterSpace,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Betti,
    Omega,
    Classify,
    Cycles,
    Check,
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Digraph,
    Simplicial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "mayerpath",
    version,
    about = "Mayer path homology of digraphs and simplicial complexes"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Defaults to simplicial for `.simplices` files, digraph otherwise.
    #[arg(long, value_enum)]
    pub kind: Option<InputKind>,
    #[arg(long = "N", allow_negative_numbers = true)]
    pub order: Option<i64>,
    /// A single q in 1..N-1, or `all`.
    #[arg(long, default_value = "all")]
    pub q: String,
    #[arg(long = "max-dim", default_value_t = 3)]
    pub max_dim: usize,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub show_basis: bool,
    #[arg(long, default_value_t = 8)]
    pub circuit_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Digraph(Digraph),
    Simplicial(SimplicialComplex),
}

impl Input {
    pub fn complex(&self, max_dim: usize) -> PathComplex {
        match self {
            Input::Digraph(g) => PathComplex::from_digraph(g, max_dim),
            Input::Simplicial(sc) => PathComplex::from_simplicial(sc, max_dim),
        }
    }
}

/// Validated configuration. `input` is `None` only for `report`.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<Input>,
    pub order: u32,
    /// `None` means every `q`.
    pub q: Option<usize>,
    pub max_dim: usize,
    pub format: Format,
    pub show_basis: bool,
    pub circuit_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn config_error(msg: impl Into<String>) -> Self {
        Outcome {
            code: 1,
            stdout: String::new(),
            stderr: msg.into() + "\n",
        }
    }
}

fn infer_kind(path: &Path) -> InputKind {
    match path.extension().and_then(|e| e.to_str()) {
        Some("simplices") => InputKind::Simplicial,
        _ => InputKind::Digraph,
    }
}

pub fn load_input(path: &Path, kind: Option<InputKind>) -> Result<Input, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    match kind.unwrap_or_else(|| infer_kind(path)) {
        InputKind::Digraph => Digraph::parse(&text).map(Input::Digraph),
        InputKind::Simplicial => SimplicialComplex::parse(&text).map(Input::Simplicial),
    }
    .map_err(|e| format!("{}: {e}", path.display()))
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<RunConfig, String> {
        let order = match (cli.command, cli.order) {
            (Command::Report, None) => 2,
            (_, None) => return Err("--N is required".into()),
            (_, Some(n)) if n < 2 => return Err("N must be ≥ 2".into()),
            (_, Some(n)) => u32::try_from(n).map_err(|_| "N is too large".to_string())?,
        };
        let q = if cli.q == "all" {
            None
        } else {
            let q: usize = cli
                .q
                .parse()
                .map_err(|_| format!("invalid --q '{}': expected an integer or 'all'", cli.q))?;
            if q < 1 || q >= order as usize {
                return Err(format!("q must satisfy 1 ≤ q ≤ N-1 (N = {order})"));
            }
            Some(q)
        };
        let input = match (&cli.input, cli.command) {
            (Some(p), _) => Some(load_input(p, cli.kind)?),
            (None, Command::Report) => None,
            (None, _) => return Err("--input is required".into()),
        };
        Ok(RunConfig {
            command: cli.command,
            input,
            order,
            q,
            max_dim: cli.max_dim,
            format: cli.format,
            show_basis: cli.show_basis,
            circuit_bound: cli.circuit_bound,
        })
    }

    fn qs(&self) -> Vec<usize> {
        match self.q {
            Some(q) => vec![q],
            None => (1..self.order as usize).collect(),
        }
    }
}

enum Failure {
    Config(String),
    Invariant(String),
}

struct Rendered {
    text: String,
    failures: Vec<String>,
}

pub fn run(cfg: &RunConfig) -> Outcome {
    let result = match cfg.command {
        Command::Betti => betti(cfg),
        Command::Omega => omega(cfg),
        Command::Classify => classify(cfg),
        Command::Cycles => cycles(cfg),
        Command::Check => check(cfg),
        Command::Report => report(cfg),
    };
    match result {
        Ok(r) if r.failures.is_empty() => Outcome {
            code: 0,
            stdout: r.text,
            stderr: String::new(),
        },
        Ok(r) => Outcome {
            code: 2,
            stdout: r.text,
            stderr: r.failures.join("\n") + "\n",
        },
        Err(Failure::Config(m)) => Outcome::config_error(m),
        Err(Failure::Invariant(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: m + "\n",
        },
    }
}

/// Parses `args` (program name first), runs, and writes the output.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match RunConfig::from_cli(&cli) {
        Ok(cfg) => run(&cfg),
        Err(m) => Outcome::config_error(m),
    };
    eprint!("{}", outcome.stderr);
    if !outcome.stdout.is_empty() {
        match &cli.out {
            Some(p) => {
                if let Err(e) = std::fs::write(p, &outcome.stdout) {
                    eprintln!("cannot write {}: {e}", p.display());
                    return 1;
                }
            }
            None => print!("{}", outcome.stdout),
        }
    }
    outcome.code
}

fn input(cfg: &RunConfig) -> Result<&Input, Failure> {
    cfg.input
        .as_ref()
        .ok_or_else(|| Failure::Config("--input is required".into()))
}

fn ok(text: String) -> Result<Rendered, Failure> {
    Ok(Rendered { text, failures: vec![] })
}

fn betti(cfg: &RunConfig) -> Result<Rendered, Failure> {
    let pc = input(cfg)?.complex(required_depth(cfg.max_dim, cfg.order));
    let mut table = betti_table(&pc, cfg.order, cfg.max_dim).map_err(|e| Failure::Invariant(e.to_string()))?;
    if let Some(q) = cfg.q {
        table.entries.retain(|&(_, qq), _| qq == q);
    }
    ok(render_table(&table, cfg.format))
}

fn render_table(t: &BettiTable, format: Format) -> String {
    match format {
        Format::Json => t.to_json(),
        Format::Md => t.to_markdown(),
        Format::Csv => t.to_csv(),
    }
}

fn to_json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn omega(cfg: &RunConfig) -> Result<Rendered, Failure> {
    let pc = input(cfg)?.complex(cfg.max_dim);
    let mut mc = MayerComplex::new(&pc, cfg.order);
    let n_order = cfg.order;
    // (n, q, dim, basis)
    let mut rows: Vec<(usize, Option<usize>, usize, Vec<String>)> = Vec::new();
    for n in 0..=cfg.max_dim {
        let mut spaces: Vec<(Option<usize>, _)> = cfg.qs().into_iter().map(|q| (Some(q), mc.omega_nq(n, q))).collect();
        if cfg.q.is_none() {
            spaces.push((None, mc.omega_full(n)));
        }
        for (q, s) in spaces {
            let basis = if cfg.show_basis {
                s.basis().iter().map(|v| mc.engine_ref().render(n, v)).collect()
            } else {
                vec![]
            };
            rows.push((n, q, s.dim(), basis));
        }
    }
    let name = |n: usize, q: Option<usize>| match q {
        Some(q) => format!("Ω_{n}^{{{n_order},{q}}}"),
        None => format!("Ω_{n}^{n_order}"),
    };
    let text = match cfg.format {
        Format::Json => to_json_text(&json!({
            "N": n_order,
            "input": input_digest(&pc),
            "spaces": rows.iter().map(|(n, q, d, b)| {
                let mut v = json!({"n": n, "q": q, "dim": d});
                if cfg.show_basis {
                    v["basis"] = json!(b);
                }
                v
            }).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("n,q,dim\n");
            for (n, q, d, _) in &rows {
                let q = q.map_or("all".to_string(), |q| q.to_string());
                let _ = writeln!(out, "{n},{q},{d}");
            }
            out
        }
        Format::Md => {
            let mut out = String::from("| space | dim |\n|---|---|\n");
            for (n, q, d, _) in &rows {
                let _ = writeln!(out, "| {} | {d} |", name(*n, *q));
            }
            if cfg.show_basis {
                for (n, q, _, b) in &rows {
                    let _ = writeln!(out, "\n{}:", name(*n, *q));
                    for v in b {
                        let _ = writeln!(out, "- {v}");
                    }
                }
            }
            out
        }
    };
    ok(text)
}

fn cluster_json(pc: &PathComplex, a: &ClusterAnalysis) -> Value {
    let labels = pc.labels();
    json!({
        "kernel_dim": a.kernel_dim,
        "circuits_rank": a.circuits_rank,
        "bound_exceeded": a.bound_exceeded,
        "clusters": a.clusters.iter().map(|c| json!({
            "endpoints": c.endpoints.map(|(x, y)| format!("{}->{}", labels[x], labels[y])),
            "family": c.family.map(|f| f.to_string()),
            "chain": c.chain,
            "element": c.render(pc),
            "components": c.components.iter().map(|k| json!({
                "path": pc.render(&k.path),
                "coeff": k.coeff.to_string(),
                "image_type": render_image_type(&k.image_type),
                "gamma": k.label.to_string(),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn cluster_md(out: &mut String, title: &str, pc: &PathComplex, a: &ClusterAnalysis) {
    let _ = writeln!(
        out,
        "\n## {title}\n\nkernel dim {}, circuits span {}{}\n",
        a.kernel_dim,
        a.circuits_rank,
        if a.bound_exceeded {
            " (circuit bound exceeded)"
        } else {
            ""
        }
    );
    out.push_str("| element | γ | family | chain |\n|---|---|---|---|\n");
    for c in &a.clusters {
        let gammas: Vec<String> = c.components.iter().map(|k| k.label.to_string()).collect();
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} |",
            c.render(pc),
            gammas.join(","),
            c.family.map_or("-".to_string(), |f| f.to_string()),
            c.chain.as_deref().unwrap_or("-")
        );
    }
}

fn classify(cfg: &RunConfig) -> Result<Rendered, Failure> {
    let pc = input(cfg)?.complex(3);
    let gens = omega2_decompose(&pc, cfg.order).map_err(|e| Failure::Invariant(e.to_string()))?;
    let first = minimal_clusters(&pc, cfg.order, ClusterSpace::FirstLevel, cfg.circuit_bound);
    let full = minimal_clusters(&pc, cfg.order, ClusterSpace::Full, cfg.circuit_bound);
    let text = match cfg.format {
        Format::Json => to_json_text(&json!({
            "N": cfg.order,
            "input": input_digest(&pc),
            "omega2": gens.iter().map(|g| json!({"kind": g.kind.to_string(), "element": g.render(&pc)})).collect::<Vec<_>>(),
            "omega3_first_level": cluster_json(&pc, &first),
            "omega3": cluster_json(&pc, &full),
        })),
        Format::Csv => {
            let mut out = String::from("space,element,gamma,family,chain\n");
            for g in &gens {
                let _ = writeln!(out, "omega2,\"{}\",{},,", g.render(&pc), g.kind);
            }
            for (name, a) in [("omega3_first_level", &first), ("omega3", &full)] {
                for c in &a.clusters {
                    let gammas: Vec<String> = c.components.iter().map(|k| k.label.to_string()).collect();
                    let _ = writeln!(
                        out,
                        "{name},\"{}\",{},{},{}",
                        c.render(&pc),
                        gammas.join(" "),
                        c.family.map_or(String::new(), |f| f.to_string()),
                        c.chain.as_deref().unwrap_or("")
                    );
                }
            }
            out
        }
        Format::Md => {
            let n_order = cfg.order;
            let mut out = format!("## Ω_2^{n_order} generators\n\n| kind | element |\n|---|---|\n");
            for g in &gens {
                let _ = writeln!(out, "| {} | {} |", g.kind, g.render(&pc));
            }
            cluster_md(&mut out, &format!("Ω_3^{{{n_order},1}} minimal clusters"), &pc, &first);
            cluster_md(&mut out, &format!("Ω_3^{n_order} minimal clusters"), &pc, &full);
            out
        }
    };
    ok(text)
}

fn cycles(cfg: &RunConfig) -> Result<Rendered, Failure> {
    let g = match input(cfg)? {
        Input::Digraph(g) => g,
        Input::Simplicial(_) => return Err(Failure::Config("cycles needs a digraph input".into())),
    };
    let r = z1_generators(g, cfg.order);
    let labels = g.labels();
    let source = |s: GeneratorSource| match s {
        GeneratorSource::Admissible(i) => format!("admissible c{i}"),
        GeneratorSource::Merge(i, j) => format!("merge c{i} c{j}"),
        GeneratorSource::Completion => "completion".to_string(),
    };
    let edge = |(a, b): (usize, usize)| format!("e_{{{},{}}}", labels[a], labels[b]);
    let text = match cfg.format {
        Format::Json => to_json_text(&json!({
            "N": cfg.order,
            "kernel_dim": r.kernel_dim,
            "constructed_dim": r.constructed_dim,
            "circuit_rank": r.circuit_rank,
            "shortfall": r.shortfall(),
            "cycles": r.cycles.iter().enumerate().map(|(i, c)| json!({
                "id": format!("c{i}"),
                "cycle": c.cycle.render(labels),
                "non_tree_edge": edge(c.non_tree_edge),
                "n": c.profile.n,
                "u1": c.profile.u1,
                "u2": c.profile.u2,
                "admissible": c.admissible,
            })).collect::<Vec<_>>(),
            "generators": r.generators.iter().map(|x| json!({
                "source": source(x.source),
                "completion": x.source == GeneratorSource::Completion,
                "chain": x.chain.render(labels),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("id,cycle,n,u1,u2,admissible,N\n");
            for (i, c) in r.cycles.iter().enumerate() {
                let p = c.profile;
                let _ = writeln!(
                    out,
                    "c{i},{},{},{},{},{},{}",
                    c.cycle.render(labels),
                    p.n,
                    p.u1,
                    p.u2,
                    c.admissible,
                    cfg.order
                );
            }
            out
        }
        Format::Md => {
            let mut out = String::from("| id | cycle | n | u1 | u2 | admissible |\n|---|---|---|---|---|---|\n");
            for (i, c) in r.cycles.iter().enumerate() {
                let p = c.profile;
                let _ = writeln!(
                    out,
                    "| c{i} | {} | {} | {} | {} | {} |",
                    c.cycle.render(labels),
                    p.n,
                    p.u1,
                    p.u2,
                    c.admissible
                );
            }
            let _ = writeln!(
                out,
                "\nN = {}: kernel dim {}, constructed {}, circuit rank {}, shortfall {}\n",
                cfg.order,
                r.kernel_dim,
                r.constructed_dim,
                r.circuit_rank,
                r.shortfall()
            );
            out.push_str("| source | chain |\n|---|---|\n");
            for x in &r.generators {
                let _ = writeln!(out, "| {} | {} |", source(x.source), x.chain.render(labels));
            }
            out
        }
    };
    ok(text)
}

struct CheckItem {
    name: String,
    pass: bool,
    /// Diagnostics are reported but never change the exit code.
    diagnostic: bool,
}

fn check(cfg: &RunConfig) -> Result<Rendered, Failure> {
    let inp = input(cfg)?;
    let depth = required_depth(cfg.max_dim, cfg.order);
    let pc = inp.complex(depth);
    let n_order = cfg.order;
    let mut items = Vec::new();
    let mut push = |name: String, pass: bool, diagnostic: bool| items.push(CheckItem { name, pass, diagnostic });
    // irregular faces do not cancel for N ≥ 3, so ∂̄^N can survive on
    // regular paths that revisit a vertex; only Ω is required to be nilpotent
    push(
        format!("∂̄^{n_order} = 0 on regular paths up to dim {depth}"),
        crate::boundary::verify_nilpotency(&pc, n_order, depth),
        true,
    );
    let mut mc = MayerComplex::new(&pc, n_order);
    let nil = (0..=depth).all(|n| mc.nilpotent_on_omega(n));
    push(format!("∂̄^{n_order} = 0 on Ω_n up to dim {depth}"), nil, false);
    for n in 1..=cfg.max_dim {
        push(
            format!("closure ∂(Ω_{n}) ⊆ Ω_{}", n - 1),
            mc.chain_closure_holds(n),
            false,
        );
    }
    for q in cfg.qs() {
        for n in 0..=cfg.max_dim {
            let holds = crate::homology::betti(&mut mc, n, q).is_ok();
            push(
                format!("B_{n}^{{{n_order},{q}}} ⊆ Z_{n}^{{{n_order},{q}}}"),
                holds,
                false,
            );
        }
        let name = format!("Poincaré identity q = {q} (truncated at dim {depth})");
        match poincare_identity_check(&pc, n_order, q) {
            Ok(p) => push(name, p.equal, true),
            Err(_) => push(name + ", not evaluated: B ⊄ Z", false, true),
        }
    }
    let pc3 = inp.complex(3);
    let o3 = omega3_intersection_check(&pc3, n_order, cfg.circuit_bound);
    push(
        "Ω_3 equals the q = 1, 2 intersection".to_string(),
        o3.intersection_holds,
        false,
    );
    let predicted = o3.exclusions.iter().filter(|e| e.in_full == e.expected_in_full).count();
    push(
        format!("Ω_3 exclusions as predicted ({predicted}/{})", o3.exclusions.len()),
        predicted == o3.exclusions.len(),
        true,
    );
    let failures: Vec<String> = items
        .iter()
        .filter(|i| !i.pass && !i.diagnostic)
        .map(|i| format!("invariant violated: {}", i.name))
        .collect();
    let verdict = |i: &CheckItem| match (i.pass, i.diagnostic) {
        (true, _) => "pass",
        (false, false) => "FAIL",
        (false, true) => "differs",
    };
    let text = match cfg.format {
        Format::Json => to_json_text(&json!({
            "N": n_order,
            "input": input_digest(&pc),
            "checks": items.iter().map(|i| json!({"check": i.name, "result": verdict(i), "diagnostic": i.diagnostic})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("check,result\n");
            for i in &items {
                let _ = writeln!(out, "\"{}\",{}", i.name, verdict(i));
            }
            out
        }
        Format::Md => {
            let mut out = String::from("| check | result |\n|---|---|\n");
            for i in &items {
                let _ = writeln!(out, "| {} | {} |", i.name, verdict(i));
            }
            out
        }
    };
    Ok(Rendered { text, failures })
}

fn report(cfg: &RunConfig) -> Result<Rendered, Failure> {
    let r = compat_report().map_err(|e| Failure::Invariant(e.to_string()))?;
    let text = match cfg.format {
        Format::Json => r.to_json(),
        Format::Md => r.to_markdown(),
        Format::Csv => r.to_csv(),
    };
    let failures = r
        .tier_a_mismatches()
        .iter()
        .map(|c| format!("Tier A mismatch: {} N={} q={} n={}", c.fixture, c.order, c.q, c.n))
        .collect();
    Ok(Rendered { text, failures })
}
