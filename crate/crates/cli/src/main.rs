use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orient_dist::aut::group_summary;
use orient_dist::constructions::{
    clawfree_rigid_orientation_traced, compatible_orientation, hamiltonian_orientation,
    layered_orientation, tree_od_values, OrderedPartition,
};
use orient_dist::distinguishing::dprime;
use orient_dist::format::{encode_digraph6, encode_graph6, parse_auto, Parsed};
use orient_dist::generate::{generate_graph6, GraphClass};
use orient_dist::kmn::{dprime_kmn, od_minus_kmn};
use orient_dist::orientations::{find_rigid_orientation, od_minus, od_plus, od_values};
use orient_dist::structure::hamiltonian_path;
use orient_dist::verify::{
    audit_cache, scan_conjectures, verify_theorem, Cache, Corpus, Report, TheoremId, VerifyOptions, Which,
};
use orient_dist::{Graph, Limits, Orientation, Permutation, Target};

const CACHE_ENV: &str = "ODIST_CACHE";

#[derive(Parser)]
#[command(name = "orient-dist", version, about = "Distinguishing index of graphs and their orientations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Largest edge count for which all orientations are enumerated.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=32))]
    edge_cap: u64,
    /// Largest automorphism group listed element by element.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    group_cap: u64,
    /// Worker threads for verification (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Layered,
    Hamiltonian,
    Clawfree,
    Compatible,
}

#[derive(Subcommand)]
enum Command {
    /// Automorphism group order and generators.
    Aut {
        /// graph6, digraph6 (leading `&`) or `@file`.
        graph: String,
    },
    /// Distinguishing index of a graph or orientation.
    Dprime { graph: String },
    /// Minimum and maximum distinguishing index over all orientations.
    Od {
        graph: String,
        /// Only the minimum, OD'-.
        #[arg(long, group = "od_kind")]
        min: bool,
        /// Only the maximum, OD'+.
        #[arg(long, group = "od_kind")]
        max: bool,
        /// Only look for an orientation with no non-trivial automorphism.
        #[arg(long, group = "od_kind")]
        rigid: bool,
    },
    /// Build an orientation with one of the constructions.
    Orient {
        graph: String,
        #[arg(long, value_enum)]
        method: Method,
        /// Ordered independent classes, e.g. `0,2;1,3` (layered).
        #[arg(long)]
        partition: Option<String>,
        /// Automorphism as images `1,0,3,2` or cycles `(0 1)(2 3)` (compatible).
        #[arg(long)]
        perm: Option<String>,
        /// Hamiltonian path, e.g. `0,1,2,3` (hamiltonian; found if omitted).
        #[arg(long)]
        path: Option<String>,
    },
    /// Orientation indices of a tree from its centre classification.
    TreeOd { graph: String },
    /// Closed-form indices of the complete bipartite graph K_{m,n}, m < n.
    Kmn { m: u64, n: u64 },
    /// Check a theorem over a corpus.
    Verify {
        /// Corpus file (one graph6 per line), `@file`, or comma-separated graph6.
        #[arg(long)]
        corpus: String,
        /// obs1, cor3, cor6, thm7, thm8, thm9, thm12, kmn or lem2.
        #[arg(long)]
        theorem: String,
    },
    /// Scan a corpus for counterexamples to the conjectures.
    Conjecture {
        /// Corpus file (one graph6 per line), `@file`, or comma-separated graph6.
        #[arg(long, required_unless_present = "audit")]
        corpus: Option<String>,
        /// 1, 2 or both.
        #[arg(long, default_value = "both")]
        which: String,
        /// Result cache (JSON lines); defaults to $ODIST_CACHE.
        #[arg(long, conflicts_with = "no_cache")]
        cache: Option<PathBuf>,
        /// Recompute everything and leave the cache alone.
        #[arg(long)]
        no_cache: bool,
        /// Recompute a sample of this many cached records and compare.
        #[arg(long, conflicts_with = "no_cache")]
        audit: Option<usize>,
        /// Skip the maximum index over orientations (cached as null).
        #[arg(long)]
        skip_od_plus: bool,
    },
    /// Generate all connected graphs of a class up to isomorphism.
    Gen {
        /// connected, trees, clawfree or bipartite.
        #[arg(long)]
        class: String,
        /// Smallest order.
        #[arg(long)]
        min: usize,
        /// Largest order (defaults to `--min`).
        #[arg(long)]
        max: Option<usize>,
    },
}

/// What a subcommand produced: a JSON document, its text rendering, and
/// whether violations were found.
struct Outcome {
    json: Value,
    text: String,
    violations: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome {
            json,
            text,
            violations: false,
        }
    }
}

fn read_arg(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("cannot read {path}")),
        None => Ok(arg.to_string()),
    }
}

fn parse_input(arg: &str) -> Result<Parsed> {
    Ok(parse_auto(&read_arg(arg)?)?)
}

fn parse_graph(arg: &str) -> Result<Graph> {
    match parse_input(arg)? {
        Parsed::Graph(g) => Ok(g),
        Parsed::Orientation(_) => bail!("expected an undirected graph, got digraph6"),
    }
}

fn load_corpus(arg: &str) -> Result<Corpus> {
    if let Some(path) = arg.strip_prefix('@') {
        return Ok(Corpus::load(path)?);
    }
    if std::path::Path::new(arg).is_file() {
        return Ok(Corpus::load(arg)?);
    }
    let text = arg.replace(',', "\n");
    Ok(Corpus::parse("inline", &text)?)
}

fn list(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| anyhow!("bad vertex {x:?}")))
        .collect()
}

fn d6(o: &Orientation) -> Result<String> {
    Ok(encode_digraph6(o)?)
}

fn arcs(o: &Orientation) -> Vec<[usize; 2]> {
    o.arcs().map(|(u, v)| [u, v]).collect()
}

fn aut(arg: &str) -> Result<Outcome> {
    let parsed = parse_input(arg)?;
    let s = match &parsed {
        Parsed::Graph(g) => group_summary(Target::Graph(g)),
        Parsed::Orientation(o) => group_summary(Target::Orientation(o)),
    };
    let gens: Vec<String> = s.generators.iter().map(|p| p.to_string()).collect();
    let text = format!("order {}\ngenerators {}", s.order, if gens.is_empty() { "none".into() } else { gens.join(" ") });
    Ok(Outcome::ok(
        json!({ "input": parsed.to_string(), "order": s.order, "generators": s.generators }),
        text,
    ))
}

fn dprime_cmd(arg: &str) -> Result<Outcome> {
    let parsed = parse_input(arg)?;
    let x = match &parsed {
        Parsed::Graph(g) => Target::Graph(g),
        Parsed::Orientation(o) => Target::Orientation(o),
    };
    let r = dprime(x)?;
    let text = format!("D' = {}\nwitness {:?}", r.value, r.witness.assignment());
    Ok(Outcome::ok(
        json!({ "input": parsed.to_string(), "dprime": r.value, "witness": r.witness.to_json(x) }),
        text,
    ))
}

fn od(arg: &str, min: bool, max: bool, rigid: bool, limits: &Limits) -> Result<Outcome> {
    let g = parse_graph(arg)?;
    let input = encode_graph6(&g)?;
    if rigid {
        let o = find_rigid_orientation(&g, limits)?;
        let d = o.as_ref().map(d6).transpose()?;
        let text = match &d {
            Some(d) => format!("rigid orientation {d}"),
            None => "no rigid orientation".into(),
        };
        return Ok(Outcome::ok(json!({ "input": input, "rigid": d }), text));
    }
    if min {
        let r = od_minus(&g, limits)?;
        let t = Target::Orientation(&r.orientation);
        return Ok(Outcome::ok(
            json!({
                "input": input,
                "od_minus": r.value,
                "orientation": d6(&r.orientation)?,
                "colouring": r.colouring.to_json(t),
            }),
            format!("OD'- = {}\norientation {}", r.value, d6(&r.orientation)?),
        ));
    }
    if max {
        let r = od_plus(&g, limits)?;
        return Ok(Outcome::ok(
            json!({ "input": input, "od_plus": r.value, "orientation": d6(&r.orientation)? }),
            format!("OD'+ = {}\norientation {}", r.value, d6(&r.orientation)?),
        ));
    }
    let r = od_values(&g, limits)?;
    let t = Target::Orientation(&r.witness_min.orientation);
    Ok(Outcome::ok(
        json!({
            "input": input,
            "od_minus": r.od_minus,
            "od_plus": r.od_plus,
            "witness_min": {
                "orientation": d6(&r.witness_min.orientation)?,
                "colouring": r.witness_min.colouring.to_json(t),
            },
            "witness_max": { "orientation": d6(&r.witness_max.orientation)? },
        }),
        format!(
            "OD'- = {} (orientation {})\nOD'+ = {} (orientation {})",
            r.od_minus,
            d6(&r.witness_min.orientation)?,
            r.od_plus,
            d6(&r.witness_max.orientation)?
        ),
    ))
}

fn orient(
    arg: &str,
    method: Method,
    partition: Option<&str>,
    perm: Option<&str>,
    path: Option<&str>,
) -> Result<Outcome> {
    let g = parse_graph(arg)?;
    let mut extra = json!({});
    let (name, o) = match method {
        Method::Layered => {
            let p: OrderedPartition = partition
                .ok_or_else(|| anyhow!("--method layered needs --partition"))?
                .parse()?;
            ("layered", layered_orientation(&g, &p)?)
        }
        Method::Hamiltonian => {
            let path = match path {
                Some(p) => list(p)?,
                None => hamiltonian_path(&g).ok_or_else(|| anyhow!("graph has no Hamiltonian path"))?,
            };
            extra["path"] = json!(path);
            ("hamiltonian", hamiltonian_orientation(&g, &path)?)
        }
        Method::Clawfree => {
            let t = clawfree_rigid_orientation_traced(&g)?;
            extra["branch"] = serde_json::to_value(&t.branch)?;
            ("clawfree", t.orientation)
        }
        Method::Compatible => {
            let p = Permutation::parse(g.n(), perm.ok_or_else(|| anyhow!("--method compatible needs --perm"))?)?;
            extra["perm"] = json!(p);
            ("compatible", compatible_orientation(&g, &p)?)
        }
    };
    let order = group_summary(Target::Orientation(&o)).order;
    let mut doc = json!({
        "input": encode_graph6(&g)?,
        "method": name,
        "orientation": d6(&o)?,
        "arcs": arcs(&o),
        "aut_order": order,
    });
    if let (Value::Object(d), Value::Object(e)) = (&mut doc, extra) {
        d.extend(e);
    }
    let text = format!("{} orientation {}\narcs {:?}\nautomorphisms {}", name, d6(&o)?, arcs(&o), order);
    Ok(Outcome::ok(doc, text))
}

fn tree_od(arg: &str) -> Result<Outcome> {
    let g = parse_graph(arg)?;
    let v = tree_od_values(&g)?;
    Ok(Outcome::ok(
        json!({ "input": encode_graph6(&g)?, "od_minus": v.od_minus, "od_plus": v.od_plus, "case": v.case }),
        format!("OD'- = {}\nOD'+ = {}\ncase {}", v.od_minus, v.od_plus, v.case),
    ))
}

fn kmn(m: u64, n: u64, limits: &Limits) -> Result<Outcome> {
    let d = dprime_kmn(m, n, limits)?;
    let lo = od_minus_kmn(m, n, limits)?;
    let mut doc = serde_json::to_value(d)?;
    let mut lo_doc = serde_json::to_value(lo)?;
    if let Value::Object(o) = &mut lo_doc {
        for k in ["m", "n", "r"] {
            o.remove(k);
        }
    }
    doc["od_minus"] = lo_doc;
    let show = |p: &orient_dist::kmn::Prediction| match p.value() {
        Some(v) => v.to_string(),
        None => format!("{:?}", p.kind),
    };
    let text = format!("K_{{{m},{n}}} r = {}\nD' = {}\nOD'- = {}", d.r, show(&d), show(&lo));
    Ok(Outcome::ok(doc, text))
}

fn report_outcome(r: Report) -> Result<Outcome> {
    let mut text = r.summary();
    for v in &r.violations {
        text.push_str(&format!("\nviolation {}: expected {} got {}", v.graph6, v.expected, v.actual));
    }
    for d in &r.duplicates {
        text.push_str(&format!("\nduplicate entry {d}"));
    }
    Ok(Outcome {
        violations: !r.holds(),
        json: serde_json::to_value(&r)?,
        text,
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let output = cli.global.output;
    match run(cli) {
        Ok(out) => {
            match output {
                Output::Json => println!("{}", out.json),
                Output::Text => println!("{}", out.text),
            }
            ExitCode::from(u8::from(out.violations))
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let limits = Limits {
        group_cap: cli.global.group_cap as u128,
        edge_cap: cli.global.edge_cap as usize,
    };
    if let Some(j) = cli.global.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j as usize)
            .build_global()
            .context("cannot start worker pool")?;
    }
    let opts = VerifyOptions {
        limits,
        ..VerifyOptions::default()
    };
    match cli.command {
        Command::Aut { graph } => aut(&graph),
        Command::Dprime { graph } => dprime_cmd(&graph),
        Command::Od { graph, min, max, rigid } => od(&graph, min, max, rigid, &limits),
        Command::Orient {
            graph,
            method,
            partition,
            perm,
            path,
        } => orient(&graph, method, partition.as_deref(), perm.as_deref(), path.as_deref()),
        Command::TreeOd { graph } => tree_od(&graph),
        Command::Kmn { m, n } => kmn(m, n, &limits),
        Command::Verify { corpus, theorem } => {
            let id: TheoremId = theorem.parse()?;
            let c = load_corpus(&corpus)?;
            report_outcome(verify_theorem(&c, id, &opts))
        }
        Command::Conjecture {
            corpus,
            which,
            cache,
            no_cache,
            audit,
            skip_od_plus,
        } => {
            let which: Which = which.parse()?;
            let opts = VerifyOptions {
                with_od_plus: !skip_od_plus,
                ..opts
            };
            let path = if no_cache {
                None
            } else {
                cache.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            };
            let cache = path.as_ref().map(Cache::open).transpose()?;
            if let Some(n) = audit {
                let c = cache.as_ref().ok_or_else(|| anyhow!("--audit needs --cache or ${CACHE_ENV}"))?;
                return report_outcome(audit_cache(c, n, &opts)?);
            }
            let corpus = corpus.expect("required unless auditing");
            let c = load_corpus(&corpus)?;
            report_outcome(scan_conjectures(&c, which, &opts, cache.as_ref()))
        }
        Command::Gen { class, min, max } => {
            let class: GraphClass = class.parse()?;
            let max = max.unwrap_or(min);
            if min == 0 || max < min || max > 12 {
                bail!("need 1 <= min <= max <= 12");
            }
            let all: Vec<String> = (min..=max).flat_map(|n| generate_graph6(class, n)).collect();
            let text = all.join("\n");
            Ok(Outcome::ok(json!(all), text))
        }
    }
}
