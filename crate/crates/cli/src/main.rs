mod cache;
mod output;
mod parse;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jetdiff::bounds::g_weight;
use jetdiff::chow::{euler_characteristic, Degree, VarietySpec};
use jetdiff::combinat::schur_rank_partition;
use jetdiff::jets::{chi_jets, decompose, fit_leading, natural_degree};
use jetdiff::poly::Poly;
use serde_json::json;

use crate::cache::Cache;
use crate::output::{poly_csv, poly_json, rational_json, to_json_string, Format};

const BUNDLE_HELP: &str = "Bundle expression, e.g. \"schur(2,1,0):cotangent ⊗ O(3)\".
Grammar: terms joined by '+'; a term is factors joined by '⊗', '*' or 'x';
a factor is schur(a,b,..):ATOM, a bare ATOM, or O(LINEAR) with LINEAR like 3, -d, 2d-5.
ATOM is one of cotangent, tangent, log-cotangent, log-tangent, ambient-cotangent, ambient-tangent.";

#[derive(Parser)]
#[command(
    name = "jetdiff",
    version,
    about = "Exact Euler characteristics of Schur powers and jet differentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Result cache directory (default: $JETDIFF_CACHE_DIR, then the XDG cache dir).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Do not read or write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List the graded pieces of E_{order,m} with ranks and g-weights.
    Decompose {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        order: u8,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Euler characteristic of a bundle, as a polynomial in d.
    Chi {
        /// p3, p4, hypersurface:n=4[,d=N], logpair:n=3[,d=N]
        #[arg(long)]
        variety: String,
        #[arg(long, help = BUNDLE_HELP)]
        bundle: String,
        /// Fix the degree instead of keeping it symbolic.
        #[arg(long)]
        d: Option<i64>,
    },
    /// Euler characteristic of E_{order,m}, or its fitted leading coefficient in m.
    Jets {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        order: u8,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: Option<u64>,
        /// Log pair (P^3, X) instead of a hypersurface in P^4.
        #[arg(long)]
        log: bool,
        #[arg(long)]
        d: Option<i64>,
    },
    /// Recompute every published constant and compare.
    Report {
        /// Comma-separated subset of: quartic, log-cubic, euler-threshold, sym-h2, constant-c, thresholds, surface.
        #[arg(long, value_delimiter = ',')]
        claims: Vec<String>,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
    Mismatch(String),
}

impl From<jetdiff::Error> for Failure {
    fn from(e: jetdiff::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn render_poly(label: &str, p: &Poly, format: Format, extra: serde_json::Value) -> String {
    match format {
        Format::Text => format!("{}\n", p),
        Format::Csv => poly_csv(p),
        Format::Json => {
            let mut obj = extra;
            obj[label] = poly_json(p);
            to_json_string(&obj)
        }
    }
}

fn degree_of(d: Option<i64>) -> Degree {
    d.map_or(Degree::Symbolic, Degree::Fixed)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = cli.common.format;
    let cache = if cli.common.no_cache {
        Cache::disabled()
    } else {
        Cache::new(
            cli.common
                .cache_dir
                .clone()
                .unwrap_or_else(cache::default_dir),
        )
    };
    match cli.command {
        Command::Decompose { order, m } => {
            let dec = decompose(order, m)?;
            let rows: Vec<(u64, Vec<u32>, String, String)> = dec
                .pieces
                .iter()
                .map(|p| {
                    let rank = schur_rank_partition(&p.lambda, 3)?;
                    let g = g_weight(&p.lambda)?;
                    Ok((p.gamma, p.lambda.padded(3), rank.to_string(), g.to_string()))
                })
                .collect::<jetdiff::Result<_>>()?;
            Ok(match format {
                Format::Text => {
                    let mut s = format!("E_{{{},{}}}: {} pieces\n", order, m, rows.len());
                    s.push_str("gamma  lambda           rank  g\n");
                    for (gamma, l, rank, g) in &rows {
                        let l = format!("({},{},{})", l[0], l[1], l[2]);
                        s.push_str(&format!("{:<6} {:<16} {:<5} {}\n", gamma, l, rank, g));
                    }
                    s
                }
                Format::Csv => {
                    let mut s = String::from("gamma,l1,l2,l3,rank,g\n");
                    for (gamma, l, rank, g) in &rows {
                        s.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            gamma, l[0], l[1], l[2], rank, g
                        ));
                    }
                    s
                }
                Format::Json => {
                    let pieces: Vec<_> = dec
                        .pieces
                        .iter()
                        .zip(&rows)
                        .map(|(p, (gamma, l, rank, _))| {
                            json!({
                                "gamma": gamma,
                                "lambda": l,
                                "rank": rank,
                                "g": rational_json(&g_weight(&p.lambda).expect("checked above")),
                            })
                        })
                        .collect();
                    to_json_string(&json!({ "order": order, "m": m, "pieces": pieces }))
                }
            })
        }
        Command::Chi { variety, bundle, d } => {
            let v = parse::parse_variety(&variety, d).map_err(Failure::Usage)?;
            let e = parse::parse_bundle(&bundle)
                .map_err(|e| Failure::Usage(format!("bundle {}", e)))?;
            let key = format!("chi|{}|{}", v.canonical(), e.canonical());
            let chi = cache.get_or_compute(&key, || euler_characteristic(&v, &e))?;
            let extra = json!({ "variety": v.canonical(), "bundle": e.canonical() });
            Ok(render_poly("chi", &chi, format, extra))
        }
        Command::Jets { order, m, log, d } => {
            let v = if log {
                VarietySpec::log_pair(degree_of(d))?
            } else {
                VarietySpec::hypersurface(4, degree_of(d))?
            };
            match m {
                Some(m) => {
                    let chi = chi_jets(&v, order, m)?;
                    let extra = json!({ "variety": v.canonical(), "order": order, "m": m });
                    Ok(render_poly("chi", &chi, format, extra))
                }
                None => {
                    let degree = natural_degree(order);
                    let sym = v.with_degree(Degree::Symbolic);
                    let key = format!(
                        "fit-leading|{}|order={}|degree={}",
                        sym.canonical(),
                        order,
                        degree
                    );
                    let lead = cache.get_or_compute(&key, || {
                        fit_leading(&sym, order, degree).map(|(_, l)| l)
                    })?;
                    let lead = degree_of(d).specialize(&lead);
                    let extra =
                        json!({ "variety": v.canonical(), "order": order, "degree": degree });
                    Ok(render_poly("leading", &lead, format, extra))
                }
            }
        }
        Command::Report { claims } => {
            if let Some(bad) = claims
                .iter()
                .find(|c| !report::CLAIMS.contains(&c.as_str()))
            {
                return Err(Failure::Usage(format!(
                    "unknown claim '{}'; expected one of {}",
                    bad,
                    report::CLAIMS.join(", ")
                )));
            }
            let entries = report::build(&claims, &report::Inputs { cache: &cache })?;
            let text = report::render(&entries, format);
            if report::has_mismatch(&entries) {
                Err(Failure::Mismatch(text))
            } else {
                Ok(text)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(n) = cli.common.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(1);
        }
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(cli) {
        Ok(out) => {
            print!("{}", out);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(out)) => {
            print!("{}", out);
            ExitCode::from(3)
        }
    }
}
