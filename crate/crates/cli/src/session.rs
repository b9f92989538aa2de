//! Explorer sessions: a seed, its mutation history and an undo stack.

use clusterlab_core::cluster::{mutate_along, mutate_seed, Seed};
use clusterlab_core::quantum::{mutate_quantum_along, mutate_quantum_seed, QuantumSeed};
use clusterlab_core::strata::{enumerate_affine_strata, StratumDescriptor};
use clusterlab_core::{Error, IntMatrix, Result};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug)]
pub enum SessionSeed {
    Classical(Seed),
    Quantum(QuantumSeed),
}

impl SessionSeed {
    pub fn to_json(&self) -> Value {
        match self {
            SessionSeed::Classical(s) => serde_json::to_value(s),
            SessionSeed::Quantum(q) => serde_json::to_value(q),
        }
        .expect("seeds serialize")
    }

    pub fn history(&self) -> &[usize] {
        match self {
            SessionSeed::Classical(s) => s.history(),
            SessionSeed::Quantum(q) => q.history(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            SessionSeed::Classical(s) => s.m(),
            SessionSeed::Quantum(q) => q.m(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            SessionSeed::Classical(s) => s.n(),
            SessionSeed::Quantum(q) => q.n(),
        }
    }

    fn mutate(&self, k: usize) -> Result<SessionSeed> {
        Ok(match self {
            SessionSeed::Classical(s) => SessionSeed::Classical(mutate_seed(s, k)?),
            SessionSeed::Quantum(q) => SessionSeed::Quantum(mutate_quantum_seed(q, k)?),
        })
    }

    fn replay(&self, word: &[usize]) -> Result<SessionSeed> {
        Ok(match self {
            SessionSeed::Classical(s) => SessionSeed::Classical(mutate_along(s, word)?),
            SessionSeed::Quantum(q) => SessionSeed::Quantum(mutate_quantum_along(q, word)?),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StrataReport {
    pub classical: Vec<StratumDescriptor>,
    pub quantum: Vec<StratumDescriptor>,
}

/// Strata on both sides for a log-canonical `Λ`; the two lists coincide.
pub fn strata_report(lambda: &IntMatrix) -> Result<StrataReport> {
    let quantum = enumerate_affine_strata(lambda)?;
    Ok(StrataReport {
        classical: quantum.clone(),
        quantum,
    })
}

#[derive(Clone, Debug)]
pub struct Session {
    initial: SessionSeed,
    current: SessionSeed,
    undo: Vec<SessionSeed>,
    lambda: Option<IntMatrix>,
}

impl Session {
    /// `lambda` is the log-canonical matrix used for strata of a classical
    /// seed; a quantum seed carries its own.
    pub fn new(seed: SessionSeed, lambda: Option<IntMatrix>) -> Result<Self> {
        if let Some(l) = &lambda {
            if l.rows() != seed.n() || !l.is_skew_symmetric() {
                return Err(Error::NotSkewSymmetric(format!("session Λ must be {0}×{0} skew", seed.n())));
            }
        }
        Ok(Self {
            initial: seed.clone(),
            current: seed,
            undo: Vec::new(),
            lambda,
        })
    }

    pub fn current(&self) -> &SessionSeed {
        &self.current
    }

    pub fn undo_depth(&self) -> usize {
        self.undo.len()
    }

    /// Mutates at 0-based `k`. Mutating twice in a row at the same index
    /// cancels in the history, so the involution is visible in the JSON.
    pub fn mutate(&mut self, k: usize) -> Result<&SessionSeed> {
        let base = self.initial.history().len();
        let h = self.current.history();
        let next = if h.len() > base && h.last() == Some(&k) {
            self.initial.replay(&h[base..h.len() - 1])?
        } else {
            self.current.mutate(k)?
        };
        self.undo.push(std::mem::replace(&mut self.current, next));
        Ok(&self.current)
    }

    pub fn undo(&mut self) -> Option<&SessionSeed> {
        let prev = self.undo.pop()?;
        self.current = prev;
        Some(&self.current)
    }

    /// The current seed rebuilt from the initial one and the history.
    pub fn replay(&self) -> Result<SessionSeed> {
        let base = self.initial.history().len();
        self.initial.replay(&self.current.history()[base..])
    }

    pub fn strata(&self) -> Result<StrataReport> {
        let lambda = match (&self.current, &self.lambda) {
            (SessionSeed::Quantum(q), _) => q.lambda().clone(),
            (SessionSeed::Classical(_), Some(l)) => l.clone(),
            (SessionSeed::Classical(s), None) => IntMatrix::zeros(s.n(), s.n()),
        };
        strata_report(&lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clusterlab_core::cluster::ExchangeMatrix;

    fn a2() -> Session {
        let b = ExchangeMatrix::from_rows(vec![vec![0, 1], vec![-1, 0]], 2).unwrap();
        Session::new(SessionSeed::Classical(Seed::from_matrix(b)), None).unwrap()
    }

    #[test]
    fn double_mutation_restores_json() {
        let mut s = a2();
        let start = s.current().to_json();
        s.mutate(0).unwrap();
        assert_ne!(s.current().to_json(), start);
        s.mutate(0).unwrap();
        assert_eq!(s.current().to_json(), start);
        assert_eq!(s.undo_depth(), 2);
    }

    #[test]
    fn undo_and_replay() {
        let mut s = a2();
        let mut seen = vec![s.current().to_json()];
        for k in [0, 1, 0] {
            s.mutate(k).unwrap();
            seen.push(s.current().to_json());
            assert_eq!(s.replay().unwrap().to_json(), s.current().to_json());
        }
        for depth in 1..=3 {
            s.undo().unwrap();
            assert_eq!(s.current().to_json(), seen[3 - depth]);
        }
        assert!(s.undo().is_none());
        assert!(s.mutate(5).is_err());
    }

    #[test]
    fn classical_strata_default_to_zero_bracket() {
        let r = a2().strata().unwrap();
        assert_eq!(r.classical.len(), 4);
        assert!(r.classical.iter().all(|d| d.rank == d.surviving.len()));
    }
}
