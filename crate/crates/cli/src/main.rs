//! `simatch` command-line interface.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use simatch::analytics::{closed_form_constants, crossover_vs_n7, sample_size_criteria};
use simatch::analytics::criteria::asymptotic_log_n_star;
use simatch::bipartite::{bregman_bound, bregman_max_degree_bound, count_exact_with, io::parse_graph, BipartiteGraph, Family};
use simatch::experiments::{clt_run, estimate_count, reproduce_table, sci4, TableMode};
use simatch::moments::{moments, second_moment_rational, Algorithm};
use simatch::sis::trace::fmt17;
use simatch::sis::{ChoiceRule, OrderPolicy, Sampler};
use simatch::{Error, Limits};

#[derive(Parser, Debug)]
#[command(name = "simatch", version, about = "Importance sampling of perfect matchings in banded bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FamilyArg {
    Fib,
    Dist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum AlgoArg {
    Fixed,
    Random,
    Greedy,
    FixedStar,
    GreedyStar,
}

impl AlgoArg {
    fn name(self) -> &'static str {
        match self {
            AlgoArg::Fixed => "fixed",
            AlgoArg::Random => "random",
            AlgoArg::Greedy => "greedy",
            AlgoArg::FixedStar => "fixed-star",
            AlgoArg::GreedyStar => "greedy-star",
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
struct GraphArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Fib)]
    family: FamilyArg,
    /// Fibonacci parameter: -1 <= pi(i) - i <= t
    #[arg(long, default_value_t = 1)]
    t: usize,
    /// distance parameter: |pi(i) - i| <= d
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long)]
    n: Option<usize>,
    /// custom graph file (first line n, then 1-based neighbor lists)
    #[arg(long, conflicts_with = "n")]
    graph: Option<std::path::PathBuf>,
}

impl GraphArgs {
    fn family(&self) -> Family {
        match self.family {
            FamilyArg::Fib => Family::Fibonacci(self.t),
            FamilyArg::Dist => Family::Distance(self.d),
        }
    }

    fn n(&self) -> Result<usize, Error> {
        self.n.ok_or_else(|| Error::InvalidParameter("--n is required".into()))
    }

    fn build(&self) -> Result<BipartiteGraph, Error> {
        match &self.graph {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::InvalidParameter(format!("{}: {e}", p.display())))?;
                parse_graph(&text)
            }
            None => BipartiteGraph::family(self.family(), self.n()?),
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
struct AlgoArgs {
    #[arg(long, value_enum, default_value_t = AlgoArg::Fixed)]
    algo: AlgoArg,
    /// explicit 1-based processing order, e.g. 2,3,1,4 (uniform choices)
    #[arg(long, conflicts_with = "algo")]
    order: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
struct RunArgs {
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
enum Command {
    /// Exact number of perfect matchings
    Count {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Monte Carlo estimate of the count
    Estimate {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        algo: AlgoArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// One sampled matching with its decision trace
    Sample {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        algo: AlgoArgs,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// print exact probabilities as fractions (n <= 20)
        #[arg(long)]
        exact: bool,
    },
    /// Exact log-weight moments and sample-size criteria
    Moments {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = AlgoArg::Fixed)]
        algo: AlgoArg,
        /// also give E[T^2] as an exact fraction (n <= 20)
        #[arg(long)]
        exact: bool,
        /// N* from the linear growth forms instead of exact finite-n moments
        #[arg(long)]
        asymptotic: bool,
    },
    /// Constants with provenance
    Constants,
    /// Sample-size comparison tables
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        id: u8,
        #[arg(long)]
        asymptotic: bool,
    },
    /// Normality diagnostics of standardized log T under uniform matchings
    Clt {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = AlgoArg::Greedy)]
        algo: AlgoArg,
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// First n with N* above n^7 for good
    Crossover {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = AlgoArg::Greedy)]
        algo: AlgoArg,
    },
}

enum Output {
    Record(Value),
    Csv(String),
}

fn analyzed(graph: &GraphArgs, algo: AlgoArg) -> Result<Algorithm, Error> {
    if graph.graph.is_some() {
        return Err(Error::Unsupported("recurrences exist only for built-in families".into()));
    }
    Algorithm::lookup(graph.family(), algo.name())
}

/// (policy, rule) for a named algorithm on g; built-in pairs take their
/// analyzed sampler, fixed/random fall back to the generic engines.
fn sampler_for(g: &BipartiteGraph, graph: &GraphArgs, algo: &AlgoArgs) -> Result<(OrderPolicy, ChoiceRule), Error> {
    if let Some(o) = &algo.order {
        return Ok((OrderPolicy::parse(o)?, ChoiceRule::Uniform));
    }
    if graph.graph.is_none() {
        if let Ok(a) = Algorithm::lookup(g.family_tag(), algo.algo.name()) {
            return Ok(a.sampler());
        }
    }
    match algo.algo {
        AlgoArg::Fixed => Ok((OrderPolicy::FixedTopDown, ChoiceRule::Uniform)),
        AlgoArg::Random => Ok((OrderPolicy::UniformRandom, ChoiceRule::Uniform)),
        other => Err(Error::Unsupported(format!("'{}' is not available for {}", other.name(), g.family_tag()))),
    }
}

fn check_exact(n: usize, limits: &Limits) -> Result<(), Error> {
    if n > limits.exact_n {
        return Err(Error::InvalidParameter(format!("--exact needs n <= {}", limits.exact_n)));
    }
    Ok(())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn run(cmd: &Command, limits: &Limits) -> Result<Output, Error> {
    match cmd {
        Command::Count { graph } => {
            let g = graph.build()?;
            let c = count_exact_with(&g, limits)?;
            let ln = simatch::scalar::ln_biguint(&c);
            let mut r = json!({
                "count": c.to_string(),
                "scientific": sci4_ln(ln),
                "log_count": ln,
            });
            if let (Ok(b), Ok(f)) = (bregman_bound(&g), bregman_max_degree_bound(&g)) {
                r["bregman_log_ratio"] = json!(b);
                r["bregman_max_degree_log_ratio"] = json!(f);
            }
            Ok(Output::Record(r))
        }
        Command::Estimate { graph, algo, run } => {
            let g = graph.build()?;
            let (p, rule) = sampler_for(&g, graph, algo)?;
            let rep = estimate_count(&g, p, rule, run.samples, run.seed, run.workers)?;
            log_time(rep.wall_time_s);
            let mut v = to_value(&rep);
            v["scientific"] = json!(sci4_ln(rep.log_estimate));
            Ok(Output::Record(v))
        }
        Command::Sample { graph, algo, seed, exact } => {
            let g = graph.build()?;
            if *exact {
                check_exact(g.n(), limits)?;
            }
            let (p, rule) = sampler_for(&g, graph, algo)?;
            if *exact && rule != ChoiceRule::Uniform {
                return Err(Error::InvalidParameter("--exact needs a uniform choice rule".into()));
            }
            let s = Sampler::with_limits(&g, p, rule, limits)?;
            let trace = s.sample(&mut ChaCha8Rng::seed_from_u64(*seed));
            let steps: Vec<String> = trace.steps.iter().map(|st| st.to_string()).collect();
            let mut v = json!({
                "matching": trace.matching.to_string(),
                "log_t": trace.log_t,
                "steps": steps,
            });
            if *exact {
                let pr: BigRational = s.path_probability(&trace.matching)?;
                v["probability"] = json!(pr.to_string());
                v["weight"] = json!(pr.recip().to_string());
                if let Some(w) = trace.uniform_weight() {
                    v["path_weight"] = json!(w.to_string());
                }
            }
            Ok(Output::Record(v))
        }
        Command::Moments { graph, algo, exact, asymptotic } => {
            let alg = analyzed(graph, *algo)?;
            let n = graph.n()?;
            if *exact {
                check_exact(n, limits)?;
            }
            let mut rep = moments(alg, n);
            if *asymptotic {
                let p = closed_form_constants().pair(alg)?;
                rep.mean = p.mu * n as f64;
                rep.variance = p.sigma2 * n as f64;
                rep.sigma = rep.variance.sqrt();
                rep.l = asymptotic_log_n_star(alg, n, rep.log_count)? - rep.sigma;
                rep.n_star = (rep.l + rep.sigma).exp();
                rep.asymptotic = true;
            }
            let (n_star, n_var) = sample_size_criteria(&rep);
            let mut v = to_value(&rep);
            v["n_star"] = json!(n_star);
            v["n_var"] = json!(n_var);
            if *exact {
                v["second_moment_exact"] = json!(second_moment_rational(alg, n, limits)?.to_string());
            }
            Ok(Output::Record(v))
        }
        Command::Constants => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "value", "provenance", "printed"]).expect("in-memory");
            for (name, v, prov, printed) in closed_form_constants().rows() {
                w.write_record([name, fmt17(v), prov.to_string(), printed.to_string()]).expect("in-memory");
            }
            Ok(Output::Csv(String::from_utf8(w.into_inner().expect("flushed")).expect("utf8")))
        }
        Command::Table { id, asymptotic } => {
            let mode = if *asymptotic { TableMode::Asymptotic } else { TableMode::Exact };
            Ok(Output::Csv(reproduce_table(*id, mode)?.to_csv()))
        }
        Command::Clt { graph, algo, samples, seed, workers } => {
            let alg = analyzed(graph, *algo)?;
            Ok(Output::Record(to_value(&clt_run(alg, graph.n()?, *samples, *seed, *workers)?)))
        }
        Command::Crossover { graph, algo } => {
            let alg = analyzed(graph, *algo)?;
            Ok(Output::Record(json!({ "algorithm": alg.to_string(), "crossover_n": crossover_vs_n7(alg)? })))
        }
    }
}

fn sci4_ln(ln: f64) -> String {
    if ln < 700.0 {
        return sci4(ln.exp());
    }
    let l10 = ln / std::f64::consts::LN_10;
    let e = l10.floor();
    format!("{:.3}e{}", 10f64.powf(l10 - e), e as i64)
}

fn log_time(s: f64) {
    eprintln!("wall time {s:.3} s");
}

/// Flattens a record to (dotted key, rendered value) pairs.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) && prefix != "steps" => {
            let items: Vec<String> = a.iter().map(render).collect();
            out.push((prefix.to_string(), items.join(" ")));
        }
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&key(&(i + 1).to_string()), x, out)),
        other => out.push((prefix.to_string(), render(other))),
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::Number(x) if x.is_f64() => fmt17(x.as_f64().expect("f64")),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn emit(cli: &Cli, out: Output) -> String {
    let config = to_value(&cli.command);
    match (out, cli.format) {
        (Output::Csv(s), Format::Json) => {
            let mut rows = csv::Reader::from_reader(s.as_bytes());
            let head: Vec<String> = rows.headers().expect("header").iter().map(str::to_string).collect();
            let recs: Vec<Value> = rows
                .records()
                .map(|r| {
                    let r = r.expect("own csv");
                    Value::Object(head.iter().cloned().zip(r.iter().map(|x| json!(x))).collect())
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&json!({ "config": config, "rows": recs })).expect("json"))
        }
        (Output::Csv(s), _) => s,
        (Output::Record(v), Format::Json) => {
            format!("{}\n", serde_json::to_string_pretty(&json!({ "config": config, "result": v })).expect("json"))
        }
        (Output::Record(v), fmt) => {
            let mut pairs = Vec::new();
            flatten("", &v, &mut pairs);
            let mut cfg = Vec::new();
            flatten("config", &config, &mut cfg);
            let mut s = String::new();
            if fmt == Format::Csv {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["key", "value"]).expect("in-memory");
                for (k, x) in pairs.iter().chain(&cfg) {
                    w.write_record([k, x]).expect("in-memory");
                }
                s = String::from_utf8(w.into_inner().expect("flushed")).expect("utf8");
            } else {
                if let Command::Count { .. } = cli.command {
                    // bare count first
                    if let Some(Value::String(c)) = v.get("count") {
                        writeln!(s, "{c}").unwrap();
                    }
                }
                for (k, x) in &pairs {
                    writeln!(s, "{k}={x}").unwrap();
                }
                writeln!(s, "# {}", serde_json::to_string(&config).expect("json")).unwrap();
            }
            s
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cli.command, &limits) {
        Ok(out) => {
            print!("{}", emit(&cli, out));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_limit() { 3 } else { 2 })
        }
    }
}
