//! Reading and writing the canonical JSON artifacts.

use std::fs;
use std::path::Path;

use clusterlab_core::cluster::{ExchangeMatrix, Seed};
use clusterlab_core::poisson::{pair_from_parts, CompatiblePair};
use clusterlab_core::quantum::QuantumSeed;
use clusterlab_core::{Error, IntMatrix};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub fn read_value(path: &Path, flag: &str) -> CliResult<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(flag, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::usage(flag, format!("malformed JSON in {}: {e}", path.display())))
}

pub fn decode<T: DeserializeOwned>(v: Value, flag: &str) -> CliResult<T> {
    serde_json::from_value(v).map_err(|e| CliError::usage(flag, e))
}

pub fn to_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("artifacts serialize")
}

/// Writes to `out` when given, otherwise returns the text for stdout.
pub fn emit<T: Serialize>(v: &T, out: Option<&Path>) -> CliResult<Option<String>> {
    let text = to_pretty(v);
    match out {
        Some(p) => {
            fs::write(p, text + "\n")
                .map_err(|e| CliError::usage("--out", format!("cannot write {}: {e}", p.display())))?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

#[derive(Deserialize)]
struct BareSeed {
    #[serde(rename = "B")]
    b: IntMatrix,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

/// A full Seed JSON, or just `{"B": …}` (optionally with `n` and `labels`)
/// for an initial seed.
pub fn seed_from_value(v: Value, flag: &str) -> CliResult<Seed> {
    if v.get("variables").is_some() {
        return decode(v, flag);
    }
    let bare: BareSeed = decode(v, flag)?;
    let n = bare.n.unwrap_or_else(|| bare.b.cols());
    let b = IntMatrix::from_rows_with_cols(bare.b.to_rows(), n)?;
    let e = ExchangeMatrix::new(b)?;
    Ok(match bare.labels {
        Some(l) => Seed::initial(e, l)?,
        None => Seed::from_matrix(e),
    })
}

#[derive(Deserialize)]
struct PairInput {
    #[serde(rename = "B")]
    b: IntMatrix,
    lambda: IntMatrix,
    #[serde(default)]
    diag: Option<Vec<i64>>,
}

/// Pair JSON with kernel errors (e.g. `NotCompatible`) kept as domain errors.
pub fn pair_from_value(v: Value, flag: &str) -> CliResult<CompatiblePair> {
    let input: PairInput = decode(v, flag)?;
    let p = pair_from_parts(input.b, input.lambda)?;
    if let Some(d) = input.diag {
        if d != p.diag() {
            return Err(Error::NotCompatible(format!(
                "stored diag {d:?} disagrees with B·Λ diagonal {:?}",
                p.diag()
            ))
            .into());
        }
    }
    Ok(p)
}

/// A QuantumSeed JSON (recognized by `qvariables`) or a pair, which yields
/// its initial quantum seed.
pub fn quantum_from_value(v: Value, flag: &str) -> CliResult<QuantumSeed> {
    if v.get("qvariables").is_some() {
        return decode(v, flag);
    }
    Ok(QuantumSeed::initial(&pair_from_value(v, flag)?)?)
}

/// Converts 1-based indices from the command line.
pub fn zero_based(indices: &[usize], bound: usize) -> CliResult<Vec<usize>> {
    indices
        .iter()
        .map(|&k| {
            if k == 0 || k > bound {
                Err(Error::IndexOutOfRange { index: k, bound }.into())
            } else {
                Ok(k - 1)
            }
        })
        .collect()
}
