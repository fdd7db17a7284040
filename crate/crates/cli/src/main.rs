use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symchar_core::characters::{mn_character, normalized_character};
use symchar_core::cumulants::free_cumulants;
use symchar_core::kerov::{
    cumulant_polynomial, kerov_polynomial, multi_kerov_polynomial, HARD_MAX_K,
};
use symchar_core::maps::{stanley_character, HARD_MAX_EDGES};
use symchar_core::restrict::scaling_experiment;
use symchar_core::transport::{has_disallowed_disconnecting_edge, kerov_polynomial_from_maps};
use symchar_core::verify::{self, Level};
use symchar_core::{
    BipartiteMap, ClassLabel, CycleArgument, DecoratedMap, Error, KerovConfig, MapConfig,
    Partition, Permutation, RPolynomial,
};

const EXIT_DOMAIN: u8 = 1;
const EXIT_INCONSISTENT: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "symchar",
    version,
    about = "Exact symmetric-group characters, free cumulants and Kerov polynomials"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for parallel sums (defaults to all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    /// Largest edge count accepted for map enumeration.
    #[arg(long, global = true, default_value_t = 8,
          value_parser = clap::value_parser!(u64).range(1..=HARD_MAX_EDGES as u64))]
    max_map_k: u64,

    /// Largest k accepted for Kerov polynomial solves.
    #[arg(long, global = true, default_value_t = 7,
          value_parser = clap::value_parser!(u64).range(1..=HARD_MAX_K as u64))]
    max_kerov_k: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Solve,
    Maps,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyLevel {
    Quick,
    Full,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Irreducible character value χ^λ(μ).
    Char {
        #[arg(long, value_parser = parse::<Partition>)]
        lambda: Partition,
        #[arg(long, value_parser = parse::<ClassLabel>)]
        class: ClassLabel,
    },
    /// Normalized character Ch_{k1,...}(λ).
    Nchar {
        #[arg(long, value_parser = parse::<Partition>)]
        lambda: Partition,
        #[arg(long, value_parser = parse::<CycleArgument>)]
        cycles: CycleArgument,
    },
    /// Free cumulants R_1..R_max of λ.
    Cumulants {
        #[arg(long, value_parser = parse::<Partition>)]
        lambda: Partition,
        #[arg(long)]
        max: usize,
    },
    /// Kerov polynomial expressing Ch_k in free cumulants.
    Kerov {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Method::Solve)]
        method: Method,
    },
    /// Ch_k(λ) through the Stanley sum over maps, checked against Murnaghan–Nakayama.
    Stanley {
        #[arg(long, value_parser = parse::<Partition>)]
        lambda: Partition,
        #[arg(long)]
        k: usize,
    },
    /// Cumulant of normalized characters as a polynomial in free cumulants.
    Cov {
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        cycles: Vec<usize>,
    },
    /// Strict-positivity transportation check on a decorated map.
    FlowCheck {
        /// White permutation in cycle notation, e.g. "(1,6)(2,3,4,5)".
        #[arg(long)]
        sigma1: String,
        /// Decorations of the black vertices, in order of their smallest edge.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        decor: Vec<usize>,
        /// Number of edges when the largest point is fixed by sigma1.
        #[arg(long)]
        edges: Option<usize>,
    },
    /// Monte Carlo restriction to Sym(m) and the scaling of R_{k+1}.
    RestrictSim {
        #[arg(long, value_parser = parse::<Partition>)]
        lambda: Partition,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cross-checks between the independent computation routes.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyLevel::Quick)]
        level: VerifyLevel,
    },
}

fn parse<T: FromStr>(s: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.parse::<T>().map_err(|e| e.to_string())
}

/// What a subcommand produced: JSON fields plus a plain-text rendering.
struct Outcome {
    inputs: Value,
    output: Value,
    text: String,
    /// Set when an internal cross-check disagreed.
    inconsistent: Option<String>,
}

impl Outcome {
    fn new(inputs: Value, output: Value, text: impl Into<String>) -> Self {
        Outcome {
            inputs,
            output,
            text: text.into(),
            inconsistent: None,
        }
    }
}

fn polynomial_output(p: &RPolynomial) -> Value {
    json!({
        "polynomial": p.to_string(),
        "terms": p.to_json(),
        "degree": p.graded_degree(),
        "nonnegative_integer_coefficients": p.positivity_report().all_nonnegative_integers,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let maps = MapConfig {
        max_edges: cli.max_map_k as usize,
    };
    let kerov = KerovConfig {
        max_k: cli.max_kerov_k as usize,
    };
    match &cli.command {
        Command::Char { lambda, class } => {
            let value = mn_character(lambda, class)?;
            Ok(Outcome::new(
                json!({"lambda": lambda.to_string(), "class": class.0.to_string()}),
                json!(value.to_string()),
                value.to_string(),
            ))
        }
        Command::Nchar { lambda, cycles } => {
            let value = normalized_character(lambda, cycles);
            Ok(Outcome::new(
                json!({"lambda": lambda.to_string(), "cycles": cycles.to_string()}),
                json!(value.to_string()),
                value.to_string(),
            ))
        }
        Command::Cumulants { lambda, max } => {
            if *max == 0 {
                return Err(Error::OutOfRange {
                    what: "max",
                    value: 0,
                    min: 1,
                    max: i64::MAX,
                });
            }
            let r = free_cumulants(lambda, *max);
            let values: Vec<String> = (1..=*max).map(|k| r.get(k).to_string()).collect();
            let text = values
                .iter()
                .enumerate()
                .map(|(i, v)| format!("R{} = {v}", i + 1))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::new(
                json!({"lambda": lambda.to_string(), "max": max}),
                json!(values),
                text,
            ))
        }
        Command::Kerov { k, method } => {
            let p = match method {
                Method::Solve => kerov_polynomial(*k, &kerov)?,
                Method::Maps => kerov_polynomial_from_maps(*k, &maps)?,
            };
            let method = match method {
                Method::Solve => "solve",
                Method::Maps => "maps",
            };
            Ok(Outcome::new(
                json!({"k": k, "method": method}),
                polynomial_output(&p),
                p.to_string(),
            ))
        }
        Command::Stanley { lambda, k } => {
            let value = stanley_character(lambda, *k, &maps)?;
            let arg = CycleArgument::single(*k)?;
            let reference = normalized_character(lambda, &arg);
            let mut outcome = Outcome::new(
                json!({"lambda": lambda.to_string(), "k": k}),
                json!({"value": value.to_string(), "murnaghan_nakayama": reference.to_string()}),
                value.to_string(),
            );
            if value != reference {
                outcome.inconsistent = Some(format!(
                    "Stanley sum {value} differs from Murnaghan-Nakayama value {reference}"
                ));
            }
            Ok(outcome)
        }
        Command::Cov { cycles } => {
            let p = if cycles.len() == 1 {
                multi_kerov_polynomial(&CycleArgument::single(cycles[0])?, &kerov)?
            } else {
                cumulant_polynomial(cycles, &kerov)?
            };
            let label: Vec<String> = cycles.iter().map(|c| c.to_string()).collect();
            Ok(Outcome::new(
                json!({"cycles": label.join(",")}),
                polynomial_output(&p),
                p.to_string(),
            ))
        }
        Command::FlowCheck {
            sigma1,
            decor,
            edges,
        } => flow_check(sigma1, decor, *edges, &maps),
        Command::RestrictSim {
            lambda,
            m,
            k,
            trials,
            seed,
        } => {
            let report = scaling_experiment(lambda, *m, *k, *trials, *seed)?;
            let mut output = serde_json::to_value(&report).expect("report serializes");
            output["z_score"] = json!(report.z_score());
            output["relative_gap"] = json!(report.relative_gap());
            let text = format!(
                "estimate {:.6} ± {:.6}, predicted {} ({:.6}), z = {:.3}",
                report.estimate,
                report.stderr,
                report.predicted,
                report.predicted_value(),
                report.z_score()
            );
            Ok(Outcome::new(
                json!({"lambda": lambda.to_string(), "m": m, "k": k, "trials": trials, "seed": seed}),
                output,
                text,
            ))
        }
        Command::Verify { level } => {
            let (name, level) = match level {
                VerifyLevel::Quick => ("quick", Level::Quick),
                VerifyLevel::Full => ("full", Level::Full),
            };
            let results = verify::run(level, &maps, &kerov);
            let failed: Vec<&str> = results
                .iter()
                .filter(|r| !r.passed)
                .map(|r| r.name.as_str())
                .collect();
            let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
            let text = results
                .iter()
                .map(|r| {
                    format!(
                        "{}  {:width$}  {} ({} ms)",
                        if r.passed { "PASS" } else { "FAIL" },
                        r.name,
                        r.detail,
                        r.elapsed_ms
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let mut outcome = Outcome::new(
                json!({"level": name}),
                serde_json::to_value(&results).expect("results serialize"),
                text,
            );
            if !failed.is_empty() {
                outcome.inconsistent = Some(format!("failed checks: {}", failed.join(", ")));
            }
            Ok(outcome)
        }
    }
}

fn flow_check(
    sigma1: &str,
    decor: &[usize],
    edges: Option<usize>,
    maps: &MapConfig,
) -> Result<Outcome, Error> {
    let white = Permutation::parse_cycles(sigma1, edges)?;
    maps.check(white.degree())?;
    let map = BipartiteMap::from_white(white)?;
    let decorated = DecoratedMap::new(map, decor.to_vec())?;
    let network = decorated.network();
    let balanced = network.is_balanced();
    let flow = if balanced {
        network.strictly_positive_flow()
    } else {
        None
    };
    let mut inconsistent = None;
    if let Some(f) = &flow {
        if !network.verify_flow(f, true) {
            inconsistent = Some("strictly positive flow certificate failed verification".into());
        }
    }
    let map = decorated.map();
    let bridge = has_disallowed_disconnecting_edge(map);
    let blacks: Vec<String> = map
        .black_vertices()
        .iter()
        .zip(decor)
        .map(|(v, d)| {
            let pts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("({}):R{d}", pts.join(","))
        })
        .collect();
    let output = json!({
        "sigma1": map.sigma_white().to_string(),
        "sigma2": map.sigma_black().to_string(),
        "genus": map.genus()?,
        "monomial": decorated.monomial().to_string(),
        "black_vertices": blacks,
        "balanced": balanced,
        "strictly_positive_feasible": flow.is_some(),
        "disallowed_disconnecting_edge": bridge,
        "flow": flow.as_ref().map(|f| f.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    });
    let text = format!(
        "{} [{}]: {}",
        map.sigma_white(),
        blacks.join(" "),
        match (balanced, flow.is_some()) {
            (false, _) => "unbalanced",
            (true, true) => "feasible",
            (true, false) => "infeasible",
        }
    );
    Ok(Outcome {
        inputs: json!({"sigma1": sigma1, "decor": decor, "edges": edges}),
        output,
        text,
        inconsistent,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .expect("thread pool is configured once");
    }
    let command = match &cli.command {
        Command::Char { .. } => "char",
        Command::Nchar { .. } => "nchar",
        Command::Cumulants { .. } => "cumulants",
        Command::Kerov { .. } => "kerov",
        Command::Stanley { .. } => "stanley",
        Command::Cov { .. } => "cov",
        Command::FlowCheck { .. } => "flow-check",
        Command::RestrictSim { .. } => "restrict-sim",
        Command::Verify { .. } => "verify",
    };

    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_consistency_failure() {
                EXIT_INCONSISTENT
            } else {
                EXIT_DOMAIN
            });
        }
    };
    let elapsed_ms = start.elapsed().as_millis();

    match cli.format {
        Format::Text => println!("{}", outcome.text),
        Format::Json => {
            let doc = json!({
                "command": command,
                "inputs": outcome.inputs,
                "output": outcome.output,
                "elapsed_ms": elapsed_ms,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("json output")
            );
        }
    }
    match outcome.inconsistent {
        Some(msg) => {
            eprintln!("consistency failure: {msg}");
            ExitCode::from(EXIT_INCONSISTENT)
        }
        None => ExitCode::SUCCESS,
    }
}
