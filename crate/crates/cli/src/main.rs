use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use proxlab::bipartite::{gen_bipartite_expander, gen_far_nonbipartite, random_regular_graph, rapid_mixing_check, walk_length};
use proxlab::codes::linear::random_linear_code;
use proxlab::harness::{build_instance, estimate, query_sweep, report, ExperimentConfig};
use proxlab::lowerbound::{threshold_degree, upp_sampler, PartialBooleanFunction};
use proxlab::Constants;

#[derive(Parser)]
#[command(name = "proxlab", version, about = "Proof-of-proximity query-model laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment a config file describes (a sweep when it sets `sweep`).
    Run {
        config: PathBuf,
        /// `--key value` overrides, `--seed <u64>` required, `--out <path>`.
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Adversarial acceptance on a far input.
    Soundness {
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Honest acceptance on a member input.
    Completeness {
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Query-complexity sweep; `--sweep n|eps --values a,b,...`.
    Sweep {
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Threshold degree of a truth table (one 1 / -1 / * per line).
    Thrdeg {
        table: PathBuf,
        /// Domain mask file (one 0/1 per line).
        #[arg(long)]
        mask: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random binary linear codes: dual distance and distance from a set.
    Codes {
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 12)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        /// Comma-separated words (as integers) the code must be far from.
        #[arg(long, value_delimiter = ',')]
        set: Vec<u32>,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact random-walk mixing check on generated graphs.
    Mixcheck {
        #[arg(long, value_delimiter = ',', default_values_t = vec![16usize, 64, 256])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        /// `regular`, `bipartite` or `far`.
        #[arg(long, default_value = "regular")]
        family: String,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long)]
        c_mix: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Applies `--key value` pairs; returns the `--out` path if given.
fn apply_overrides(cfg: &mut ExperimentConfig, args: &[String]) -> Result<Option<PathBuf>> {
    let mut out = None;
    let mut it = args.iter();
    while let Some(flag) = it.next() {
        let Some(key) = flag.strip_prefix("--") else {
            bail!("expected --key, found {flag:?}");
        };
        let value = it.next().with_context(|| format!("--{key} needs a value"))?;
        if key == "out" {
            out = Some(PathBuf::from(value));
        } else {
            cfg.set(key, value).with_context(|| format!("--{key} {value}"))?;
        }
    }
    Ok(out)
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn single_run(cfg: &ExperimentConfig) -> Result<String> {
    let seed = cfg.seed.unwrap_or(0);
    let built = build_instance(cfg, cfg.n, seed)?;
    let policy = cfg.proof_policy()?;
    let row = estimate(&cfg.id, built.instance.as_ref(), &policy, cfg.trials, seed, &cfg.constants)?;
    let mut text = report::to_csv(&[row]);
    if let Some(d) = built.distance {
        text.push_str(&format!("# input distance = {d:.6}\n"));
    }
    Ok(text)
}

fn experiment(cfg: &ExperimentConfig) -> Result<String> {
    cfg.validate()?;
    if cfg.sweep.is_some() {
        Ok(query_sweep(cfg)?.to_csv())
    } else {
        single_run(cfg)
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Run { config, args } => {
            let text = fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let mut cfg = ExperimentConfig::from_text(&text)?;
            let declared = cfg.seed.take();
            let out = apply_overrides(&mut cfg, &args)?;
            if cfg.seed.is_none() {
                bail!(
                    "run requires --seed <u64>{}",
                    declared.map(|s| format!(" (the config declares {s})")).unwrap_or_default()
                );
            }
            emit(&experiment(&cfg)?, out)
        }
        Command::Soundness { args } => {
            let mut cfg = ExperimentConfig {
                input: "far".into(),
                policy: "adversarial".into(),
                adversary: "auto".into(),
                ..Default::default()
            };
            let out = apply_overrides(&mut cfg, &args)?;
            emit(&experiment(&cfg)?, out)
        }
        Command::Completeness { args } => {
            let mut cfg = ExperimentConfig {
                input: "member".into(),
                policy: "honest".into(),
                ..Default::default()
            };
            let out = apply_overrides(&mut cfg, &args)?;
            emit(&experiment(&cfg)?, out)
        }
        Command::Sweep { args } => {
            let mut cfg = ExperimentConfig {
                sweep: Some("n".into()),
                ..Default::default()
            };
            let out = apply_overrides(&mut cfg, &args)?;
            if cfg.seed.is_none() {
                cfg.seed = Some(0);
            }
            cfg.validate()?;
            emit(&query_sweep(&cfg)?.to_csv(), out)
        }
        Command::Thrdeg { table, mask, out } => {
            let t = fs::read_to_string(&table).with_context(|| format!("reading {}", table.display()))?;
            let m = mask
                .map(|p| fs::read_to_string(&p).with_context(|| format!("reading {}", p.display())))
                .transpose()?;
            let f = PartialBooleanFunction::from_text(&t, m.as_deref())?;
            let td = threshold_degree(&f)?;
            let sampler = upp_sampler(&td.polynomial)?;
            let mut s = String::from("n,domain,degree,monomials,strict_bias,lower_certificate\n");
            let cert = match &td.lower_certificate {
                Some(c) => format!("dual@{}:{:.3e}", c.degree, c.max_correlation),
                None if td.degree == 0 => "trivial".into(),
                None => "uncertified".into(),
            };
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                f.n,
                f.domain.len(),
                td.degree,
                td.polynomial.coeffs.len(),
                sampler.computes_with_strict_bias(&f),
                cert
            ));
            for (mono, coeff) in &td.polynomial.coeffs {
                s.push_str(&format!("# coeff {mono:#b} = {coeff}\n"));
            }
            emit(&s, out)
        }
        Command::Codes {
            n,
            dim,
            seeds,
            set,
            eps,
            out,
        } => {
            let mut s = String::from("seed,n,dim,dual_distance,far_from_set\n");
            for seed in 0..seeds {
                let code = random_linear_code(n, dim, seed)?;
                let far = if set.is_empty() {
                    String::new()
                } else {
                    code.is_far_from_set(&set, eps).to_string()
                };
                s.push_str(&format!("{seed},{n},{},{},{far}\n", code.dim(), code.dual_distance()));
            }
            emit(&s, out)
        }
        Command::Mixcheck {
            n,
            d,
            seeds,
            family,
            eps,
            c_mix,
            out,
        } => {
            let c_mix = c_mix.unwrap_or(Constants::default().c_mix);
            let mut s = String::from("family,n,d,seed,walk_len,rapid_mixing\n");
            for &size in &n {
                let len = walk_length(size, c_mix);
                for seed in 0..seeds {
                    let mixing = match family.as_str() {
                        "regular" => rapid_mixing_check(&random_regular_graph(size, d, seed)?, len),
                        "bipartite" => gen_bipartite_expander(size, d, len, seed)?.certificate.rapid_mixing,
                        "far" => gen_far_nonbipartite(size, d, eps, len, seed)?.certificate.rapid_mixing,
                        other => bail!("unknown family {other:?}; use regular, bipartite or far"),
                    };
                    s.push_str(&format!("{family},{size},{d},{seed},{len},{mixing}\n"));
                }
            }
            emit(&s, out)
        }
    }
}

fn main() -> Result<()> {
    run(Cli::parse().command)
}
