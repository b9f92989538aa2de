//! Batch subcommands.

use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use clusterlab_core::bruhat::{bruhat_lambda, build_bfz_seed, verify_exchange_identity, DoubleWord};
use clusterlab_core::cluster::{laurent_certificate, mutate_along};
use clusterlab_core::poisson::{full_rank_check, is_compatible_pair, mutate_pair};
use clusterlab_core::quantum::{mutate_quantum_along, quantum_laurent_certificate};
use clusterlab_core::strata::{
    dixmier_map, enumerate_affine_strata, is_supertoric, validate_cos_chain, CosChain, Direction,
    TipDescriptor,
};
use clusterlab_core::IntMatrix;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::io::{
    decode, emit, pair_from_value, quantum_from_value, read_value, seed_from_value, to_pretty,
    zero_based,
};
use crate::session::strata_report;

#[derive(Debug, Parser)]
#[command(name = "clusterlab", version, about = "Exact cluster algebra toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DirectionArg {
    ClassicalToQuantum,
    QuantumToClassical,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::ClassicalToQuantum => Direction::ClassicalToQuantum,
            DirectionArg::QuantumToClassical => Direction::QuantumToClassical,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutate a seed at one or more exchangeable indices (1-based).
    Mutate {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that (B, Λ) is a compatible pair and print the diagonal.
    CheckCompatible {
        #[arg(long)]
        pair: PathBuf,
    },
    /// Mutate a compatible pair.
    MutatePair {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        at: usize,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        eps: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mutate a quantum seed (or the initial quantum seed of a pair).
    QuantumMutate {
        #[arg(long, required_unless_present = "pair", conflicts_with = "pair")]
        seed: Option<PathBuf>,
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Laurent certificate after an optional mutation word.
    LaurentCheck {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long, value_delimiter = ',')]
        word: Vec<usize>,
        /// Treat the input as a quantum seed or pair.
        #[arg(long)]
        quantum: bool,
    },
    /// Torus-invariant strata of k_Λ[x_1, …, x_n] on both sides.
    Strata {
        #[arg(long, required_unless_present = "seed", conflicts_with = "seed")]
        lambda: Option<PathBuf>,
        /// A quantum seed or pair; its current Λ is used.
        #[arg(long)]
        seed: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Super-toric test for a compatible pair.
    Supertoric {
        #[arg(long)]
        pair: PathBuf,
    },
    /// Validate a chain of torus-invariant primes.
    CosValidate {
        #[arg(long)]
        chain: PathBuf,
    },
    /// Stratum-level Dixmier map.
    Dixmier {
        #[arg(long)]
        lambda: PathBuf,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        /// Tip of one stratum (1-based); all strata when omitted.
        #[arg(long, value_delimiter = ',')]
        tip: Option<Vec<usize>>,
    },
    /// Build the seed of a reduced double word.
    BruhatBuild {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the bracket matrix Λ (rational entries as strings).
        #[arg(long)]
        lambda_out: Option<PathBuf>,
    },
    /// Check exchange relations on random exact points of the cell.
    BruhatVerify {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        rank: usize,
        /// Vertex id (negative ids are frozen); every exchangeable vertex when omitted.
        #[arg(long, allow_negative_numbers = true)]
        at: Option<i64>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Serve the JSON-over-HTTP API.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

/// Master seed from `CLUSTERLAB_SEED`, or the clock when unset.
pub fn master_seed() -> CliResult<u64> {
    match std::env::var("CLUSTERLAB_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage("CLUSTERLAB_SEED", format!("not an unsigned integer: {v:?}"))),
        Err(_) => Ok(SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0)),
    }
}

fn print(out: &mut dyn Write, text: Option<String>) {
    if let Some(t) = text {
        let _ = writeln!(out, "{t}");
    }
}

pub fn execute(cmd: Command, out: &mut dyn Write) -> CliResult<()> {
    match cmd {
        Command::Mutate { seed, at, out: dest } => {
            let s = seed_from_value(read_value(&seed, "--seed")?, "--seed")?;
            let word = zero_based(&at, s.m())?;
            let m = mutate_along(&s, &word)?;
            print(out, emit(&m, dest.as_deref())?);
        }
        Command::CheckCompatible { pair } => {
            let p = pair_from_value(read_value(&pair, "--pair")?, "--pair")?;
            let diag = is_compatible_pair(p.b(), p.lambda()).expect("constructed pairs are compatible");
            let report = json!({"compatible": true, "diag": diag, "full_rank": full_rank_check(&p)});
            print(out, Some(serde_json::to_string(&report).expect("json")));
        }
        Command::MutatePair { pair, at, eps, out: dest } => {
            if eps != 1 && eps != -1 {
                return Err(CliError::usage("--eps", "must be 1 or -1"));
            }
            let p = pair_from_value(read_value(&pair, "--pair")?, "--pair")?;
            let k = zero_based(&[at], p.m())?[0];
            print(out, emit(&mutate_pair(&p, k, eps)?, dest.as_deref())?);
        }
        Command::QuantumMutate { seed, pair, at, out: dest } => {
            let (path, flag) = match (&seed, &pair) {
                (Some(s), _) => (s, "--seed"),
                (None, Some(p)) => (p, "--pair"),
                (None, None) => return Err(CliError::usage("--seed", "required")),
            };
            let q = quantum_from_value(read_value(path, flag)?, flag)?;
            let word = zero_based(&at, q.m())?;
            print(out, emit(&mutate_quantum_along(&q, &word)?, dest.as_deref())?);
        }
        Command::LaurentCheck { seed, word, quantum } => {
            let v = read_value(&seed, "--seed")?;
            let text = if quantum {
                let q = quantum_from_value(v, "--seed")?;
                let word = zero_based(&word, q.m())?;
                to_pretty(&quantum_laurent_certificate(&mutate_quantum_along(&q, &word)?)?)
            } else {
                let s = seed_from_value(v, "--seed")?;
                let word = zero_based(&word, s.m())?;
                to_pretty(&laurent_certificate(&mutate_along(&s, &word)?))
            };
            print(out, Some(text));
        }
        Command::Strata { lambda, seed, out: dest } => {
            let l: IntMatrix = match (&lambda, &seed) {
                (Some(p), _) => decode(read_value(p, "--lambda")?, "--lambda")?,
                (None, Some(p)) => quantum_from_value(read_value(p, "--seed")?, "--seed")?.lambda().clone(),
                (None, None) => return Err(CliError::usage("--lambda", "required")),
            };
            print(out, emit(&strata_report(&l)?, dest.as_deref())?);
        }
        Command::Supertoric { pair } => {
            let p = pair_from_value(read_value(&pair, "--pair")?, "--pair")?;
            let report = json!({"supertoric": is_supertoric(&p)});
            print(out, Some(serde_json::to_string(&report).expect("json")));
        }
        Command::CosValidate { chain } => {
            let c: CosChain = decode(read_value(&chain, "--chain")?, "--chain")?;
            let valid = validate_cos_chain(&c);
            print(out, Some(json!({"valid": valid, "depth": c.depth()}).to_string()));
            if !valid {
                return Err(CliError::Failed("chain fails validation".into()));
            }
        }
        Command::Dixmier { lambda, direction, tip } => {
            let l: IntMatrix = decode(read_value(&lambda, "--lambda")?, "--lambda")?;
            let strata = enumerate_affine_strata(&l)?;
            let dir = Direction::from(direction);
            let text = match tip {
                Some(t) => {
                    let t = TipDescriptor::new(zero_based(&t, l.rows())?);
                    let s = strata
                        .iter()
                        .find(|s| s.tip == t)
                        .ok_or_else(|| CliError::usage("--tip", "no stratum has this tip"))?;
                    to_pretty(&dixmier_map(s, dir))
                }
                None => {
                    let pairs: Vec<_> = strata
                        .iter()
                        .map(|s| json!({"from": s, "to": dixmier_map(s, dir)}))
                        .collect();
                    to_pretty(&pairs)
                }
            };
            print(out, Some(text));
        }
        Command::BruhatBuild { word, rank, out: dest, lambda_out } => {
            let w = DoubleWord::parse(&word, rank)?;
            let bfz = build_bfz_seed(&w)?;
            if let Some(p) = lambda_out {
                let l = bruhat_lambda(&w)?;
                emit(&l.lambda().to_string_rows(), Some(&p))?;
            }
            print(out, emit(&bfz.seed(), dest.as_deref())?);
        }
        Command::BruhatVerify { word, rank, at, samples } => {
            let w = DoubleWord::parse(&word, rank)?;
            let bfz = build_bfz_seed(&w)?;
            let seed = master_seed()?;
            let ks = match at {
                Some(k) => vec![k],
                None => bfz.exchangeable.clone(),
            };
            let mut reports = Vec::new();
            for k in ks {
                reports.push(verify_exchange_identity(&w, k, samples, seed)?);
            }
            let pass = reports.iter().all(|r| r.pass());
            let text = to_pretty(&json!({"seed": seed, "pass": pass, "checks": reports}));
            print(out, Some(text));
            if !pass {
                return Err(CliError::Failed("exchange identity failed".into()));
            }
        }
        Command::Serve { host, port } => {
            let rt = tokio::runtime::Runtime::new()
                .map_err(|e| CliError::Failed(format!("cannot start runtime: {e}")))?;
            rt.block_on(crate::server::serve(&host, port))
                .map_err(|e| CliError::usage("--port", e))?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
