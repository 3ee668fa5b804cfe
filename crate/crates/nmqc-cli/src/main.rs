use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nmqc::families::{make_family, verify_suite, FamilyKind, FamilySpec, Scope, SuiteConfig};
use nmqc::numfmt::{format_ratio, ratio_to_f64, round_sig12};
use nmqc::{
    decide_feasibility, functional_from_game, parse_anf, quantum_bound, sample_run,
    synthesize_protocol, verify_deterministic, BitString, BooleanFunction, Gf2Matrix,
    PriorDistribution, QuantumOptions, Resource, SearchOptions, SearchOutcome,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nmqc", version, about = "Protocol synthesis, feasibility and Bell bounds for \
non-adaptive measurement-based computation with XOR side-processing")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct FnSource {
    /// Truth table JSON file: {"n": int, "table": [0/1, ...]}
    #[arg(long, value_name = "PATH")]
    table: Option<PathBuf>,
    /// ANF expression, e.g. "x1*x2 + x3" (requires --n)
    #[arg(long, value_name = "EXPR")]
    anf: Option<String>,
    /// Named family: g (n-tuple AND), h (pairwise AND), k (OR-like)
    #[arg(long, value_name = "g|h|k")]
    family: Option<String>,
    /// Arity for --anf and --family
    #[arg(long, value_name = "N")]
    n: Option<usize>,
}

impl FnSource {
    fn load(&self) -> Result<BooleanFunction> {
        let picked = [self.table.is_some(), self.anf.is_some(), self.family.is_some()]
            .iter()
            .filter(|&&b| b)
            .count();
        if picked != 1 {
            bail!("exactly one of --table, --anf, --family must be given");
        }
        if let Some(path) = &self.table {
            let v = read_json(path)?;
            return Ok(BooleanFunction::from_json(&v)?);
        }
        let n = self.n.ok_or_else(|| anyhow!("--n is required with --anf/--family"))?;
        if let Some(expr) = &self.anf {
            return Ok(parse_anf(expr, n)?);
        }
        let kind: FamilyKind = self.family.as_deref().unwrap().parse()?;
        Ok(make_family(FamilySpec { kind, n })?)
    }

    fn label(&self) -> String {
        self.family.clone().unwrap_or_else(|| "custom".into())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Synthesize the deterministic parity-basis protocol for a function
    Synth {
        #[command(flatten)]
        source: FnSource,
    },
    /// Decide whether a site budget (or explicit matrix) admits a protocol
    Feasibility {
        #[command(flatten)]
        source: FnSource,
        /// Maximum number of preprocessing rows to search over
        #[arg(long, value_name = "M")]
        sites: Option<usize>,
        /// Explicit preprocessing matrix JSON: {"n": int, "P": [[0/1, ...], ...]}
        #[arg(long, value_name = "PATH", conflicts_with = "sites")]
        matrix: Option<PathBuf>,
    },
    /// Exact classical and variational quantum bounds of the induced game
    Bounds {
        #[command(flatten)]
        source: FnSource,
        /// Prior JSON file: {"n": int, "w": ["p/q", ...]}; uniform when absent
        #[arg(long, value_name = "PATH")]
        prior: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random restarts for the optimizer (default scales with arity)
        #[arg(long)]
        restarts: Option<usize>,
        /// Gradient-norm stopping tolerance
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Sample protocol runs on a resource, one row per (input, shot)
    Simulate {
        #[command(flatten)]
        source: FnSource,
        /// Resource JSON; standard GHZ of matching size when absent
        #[arg(long, value_name = "PATH")]
        resource: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        shots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Emit the Bell functional and classical bound of the induced game
    EmitInequality {
        #[command(flatten)]
        source: FnSource,
        #[arg(long, value_name = "PATH")]
        prior: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the verification suites; nonzero exit iff any check fails
    Verify {
        /// theorem1 | prop1 | prop2 | prop3 | prop4 | appendixC | all
        #[arg(long, default_value = "all")]
        scope: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        restarts: Option<usize>,
        /// Override the optimizer comparison tolerance
        #[arg(long, allow_hyphen_values = true)]
        tol: Option<f64>,
    },
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_prior(path: &Option<PathBuf>, n: usize) -> Result<PriorDistribution> {
    match path {
        None => Ok(PriorDistribution::uniform(n)),
        Some(p) => Ok(PriorDistribution::from_json(&read_json(p)?)?),
    }
}

fn load_matrix(path: &Path) -> Result<Gf2Matrix> {
    let v = read_json(path)?;
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| anyhow!("matrix file needs an integer field 'n'"))? as usize;
    let rows = v
        .get("P")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("matrix file needs an array field 'P'"))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| anyhow!("'P' rows must be arrays"))?
                .iter()
                .map(|e| {
                    e.as_u64()
                        .filter(|&b| b <= 1)
                        .map(|b| b as u8)
                        .ok_or_else(|| anyhow!("'P' entries must be 0 or 1"))
                })
                .collect::<Result<Vec<u8>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Gf2Matrix::new(rows, n)?)
}

fn bits_string(b: &BitString) -> String {
    b.bits().iter().map(|&x| char::from(b'0' + x)).collect()
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable value"));
}

fn fmt_f64(x: f64) -> String {
    format!("{}", round_sig12(x))
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Synth { source } => {
            let f = source.load()?;
            let p = synthesize_protocol(&f);
            debug_assert!(verify_deterministic(&p, &f)?);
            print_json(&p.to_json());
        }
        Cmd::Feasibility { source, sites, matrix } => {
            let f = source.load()?;
            if let Some(path) = &matrix {
                let p = load_matrix(path)?;
                print_json(&decide_feasibility(&f, &p)?.to_json());
            } else {
                let m = sites.ok_or_else(|| anyhow!("--sites or --matrix is required"))?;
                let outcome = nmqc::minimal_sites_search(&f, m, &SearchOptions::default())?;
                match outcome {
                    SearchOutcome::Found { sites, protocol } => print_json(&json!({
                        "status": "feasible",
                        "sites": sites,
                        "witness": protocol.to_json(),
                    })),
                    SearchOutcome::Exhausted => print_json(&json!({
                        "status": "infeasible",
                        "sites_budget": m,
                    })),
                }
            }
        }
        Cmd::Bounds { source, prior, format, seed, restarts, tol } => {
            let f = source.load()?;
            let w = load_prior(&prior, f.arity())?;
            let b = functional_from_game(&f, &w)?;
            let mut opts = QuantumOptions::for_arity(f.arity());
            opts.seed = seed;
            if let Some(r) = restarts {
                opts.restarts = r;
            }
            if let Some(t) = tol {
                opts.grad_tol = t;
            }
            let rep = quantum_bound(&b, &opts);
            match format {
                Format::Json => print_json(&rep.to_json()),
                Format::Csv => {
                    println!("n,family,c,q,q/c,mean_success_c,mean_success_q");
                    let c = ratio_to_f64(&rep.classical);
                    println!(
                        "{},{},{},{},{},{},{}",
                        f.arity(),
                        source.label(),
                        format_ratio(&rep.classical),
                        fmt_f64(rep.quantum),
                        fmt_f64(rep.quantum / c),
                        fmt_f64(rep.mean_success_classical()),
                        fmt_f64(rep.mean_success_quantum()),
                    );
                }
            }
        }
        Cmd::Simulate { source, resource, shots, seed, format } => {
            let f = source.load()?;
            let p = synthesize_protocol(&f);
            let r = match &resource {
                Some(path) => Resource::from_json(&read_json(path)?)?,
                None => Resource::Ghz(nmqc::GhzResource::standard(p.sites())),
            };
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let mut rows = Vec::new();
            for xi in 0..(1usize << f.arity()) {
                let x = BitString::from_index(xi, f.arity());
                let s = p.settings(&x)?;
                for _ in 0..shots {
                    let (m, out) = sample_run(&p, &r, &x, &mut rng)?;
                    rows.push((bits_string(&x), bits_string(&s), bits_string(&m), out));
                }
            }
            match format {
                Format::Csv => {
                    println!("x,s,m,out");
                    for (x, s, m, out) in rows {
                        println!("{x},{s},{m},{out}");
                    }
                }
                Format::Json => {
                    let items: Vec<Value> = rows
                        .into_iter()
                        .map(|(x, s, m, out)| json!({"x": x, "s": s, "m": m, "out": out}))
                        .collect();
                    print_json(&Value::Array(items));
                }
            }
        }
        Cmd::EmitInequality { source, prior, format } => {
            let f = source.load()?;
            let w = load_prior(&prior, f.arity())?;
            let b = functional_from_game(&f, &w)?;
            let c = nmqc::classical_bound(&b);
            match format {
                Format::Json => print_json(&json!({
                    "classical": format_ratio(&c),
                    "functional": b.to_json(),
                })),
                Format::Csv => {
                    println!("s,beta");
                    for (i, beta) in b.beta().iter().enumerate() {
                        let s = BitString::from_index(i, f.arity());
                        println!("{},{}", bits_string(&s), format_ratio(beta));
                    }
                }
            }
        }
        Cmd::Verify { scope, seed, restarts, tol } => {
            let scope: Scope = scope.parse()?;
            let mut cfg = SuiteConfig::default();
            cfg.seed = seed;
            if let Some(r) = restarts {
                cfg.restarts = r;
            }
            if let Some(t) = tol {
                cfg.optimizer_tolerance = t;
            }
            let report = verify_suite(scope, &cfg)?;
            for item in &report.items {
                eprintln!(
                    "[{}] {}: expected {}, measured {}",
                    if item.pass { "PASS" } else { "FAIL" },
                    item.check,
                    item.expected,
                    item.measured
                );
            }
            print_json(&report.to_json());
            if !report.all_pass() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
