//! Torus-invariant prime ideals of quantum and Poisson planes, super-toric
//! clusters, co-dimension one stratifications and the stratum-level Dixmier map.
//!
//! Variable subsets are 0-based in this API and 1-based on the wire.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cluster::ExchangeMatrix;
use crate::error::{Error, Result};
use crate::kernel::{integer_kernel, lattice_span_rank, IntMatrix, Lattice, LaurentPoly, QTorusElement};
use crate::poisson::{global_toric_lattice, CompatiblePair};

/// `T^⊤`: exponents of torus-invariant monomials.
pub fn invariant_monomial_lattice(b: &ExchangeMatrix) -> Lattice {
    global_toric_lattice(b).orthogonal_complement()
}

/// `rad(Λ) = ker Λ`.
pub fn poisson_radical(lambda: &IntMatrix) -> Result<Lattice> {
    if !lambda.is_skew_symmetric() {
        return Err(Error::NotSkewSymmetric(format!("Λ = {lambda}")));
    }
    Ok(integer_kernel(lambda))
}

/// Rank of `rad(Λ) ∩ other`.
pub fn radical_intersection_rank(lambda: &IntMatrix, other: &Lattice) -> Result<usize> {
    poisson_radical(lambda)?.intersection_rank(other)
}

/// For every `k`, the projection of `T` to the first `k` coordinates together
/// with the columns of `Λ_{[1,k]}` spans a rank-`k` lattice.
pub fn is_supertoric(p: &CompatiblePair) -> bool {
    let n = p.n();
    let t = global_toric_lattice(p.b());
    (1..=n).all(|k| {
        let drop: Vec<usize> = (k..n).collect();
        let proj = t.project(&drop);
        let img = Lattice::column_lattice(&p.lambda().principal(k));
        lattice_span_rank(&proj, &img).is_ok_and(|r| r == k)
    })
}

/// The cluster variables contained in a torus-invariant prime.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TipDescriptor {
    contained: BTreeSet<usize>,
}

impl TipDescriptor {
    pub fn new(contained: impl IntoIterator<Item = usize>) -> Self {
        Self {
            contained: contained.into_iter().collect(),
        }
    }

    pub fn contained(&self) -> &BTreeSet<usize> {
        &self.contained
    }

    pub fn is_subset(&self, other: &TipDescriptor) -> bool {
        self.contained.is_subset(&other.contained)
    }

    pub fn len(&self) -> usize {
        self.contained.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contained.is_empty()
    }
}

impl Serialize for TipDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        one_based(&self.contained).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TipDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Ok(TipDescriptor::new(zero_based(&v).map_err(serde::de::Error::custom)?))
    }
}

fn one_based(s: &BTreeSet<usize>) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

fn zero_based(v: &[usize]) -> Result<Vec<usize>> {
    v.iter()
        .map(|&i| {
            i.checked_sub(1)
                .ok_or(Error::IndexOutOfRange { index: 0, bound: 0 })
        })
        .collect()
}

/// One stratum of `spec k_Λ[x_1, …, x_n]`: the TIP generated by the tip
/// variables, the surviving torus on the complement `i`, and its center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumDescriptor {
    pub tip: TipDescriptor,
    pub surviving: Vec<usize>,
    pub center_lattice: Lattice,
    pub rank: usize,
}

#[derive(Serialize, Deserialize)]
struct StratumWire {
    tip: TipDescriptor,
    surviving: Vec<usize>,
    center_basis: Vec<Vec<i64>>,
    rank: usize,
}

impl Serialize for StratumDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StratumWire {
            tip: self.tip.clone(),
            surviving: self.surviving.iter().map(|i| i + 1).collect(),
            center_basis: self.center_lattice.basis().to_vec(),
            rank: self.rank,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StratumDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = StratumWire::deserialize(d)?;
        let surviving = zero_based(&w.surviving).map_err(serde::de::Error::custom)?;
        let center_lattice =
            Lattice::span(surviving.len(), &w.center_basis).map_err(serde::de::Error::custom)?;
        Ok(StratumDescriptor {
            tip: w.tip,
            surviving,
            center_lattice,
            rank: w.rank,
        })
    }
}

/// One descriptor per subset `i ⊆ [1, n]` (in binary order of `i`): tip is the
/// complement, center lattice is `ker Λ_i`, rank is `|i| - rank Λ_i`.
pub fn enumerate_affine_strata(lambda: &IntMatrix) -> Result<Vec<StratumDescriptor>> {
    if !lambda.is_skew_symmetric() {
        return Err(Error::NotSkewSymmetric(format!("Λ = {lambda}")));
    }
    let n = lambda.rows();
    if n >= usize::BITS as usize - 1 {
        return Err(Error::InvalidArgument(format!("too many variables ({n})")));
    }
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0usize..(1 << n) {
        let surviving: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let tip = TipDescriptor::new((0..n).filter(|i| mask >> i & 1 == 0));
        let sub = lambda.submatrix(&surviving, &surviving);
        let center_lattice = integer_kernel(&sub);
        let rank = surviving.len() - sub.rank();
        out.push(StratumDescriptor {
            tip,
            surviving,
            center_lattice,
            rank,
        });
    }
    Ok(out)
}

fn check_affine(exps: impl Iterator<Item = Vec<i64>>, tip: &TipDescriptor) -> Result<()> {
    for e in exps {
        for &v in &tip.contained {
            let x = *e.get(v).ok_or(Error::IndexOutOfRange {
                index: v + 1,
                bound: e.len(),
            })?;
            if x < 0 {
                return Err(Error::NegativeExponent {
                    var: v + 1,
                    exponent: x,
                });
            }
        }
    }
    Ok(())
}

fn kept(n: usize, tip: &TipDescriptor) -> Vec<usize> {
    (0..n).filter(|i| !tip.contained.contains(i)).collect()
}

/// Quotient by the ideal of the tip variables: drops every term involving a
/// tip variable and deletes those coordinates.
pub fn reduce_mod_tip(f: &LaurentPoly, tip: &TipDescriptor) -> Result<LaurentPoly> {
    check_affine(f.terms().map(|(e, _)| e.clone()), tip)?;
    let keep = kept(f.nvars(), tip);
    let survivors = f.filter_terms(|e| tip.contained.iter().all(|&v| e[v] == 0));
    Ok(survivors.map_exponents(keep.len(), |e| keep.iter().map(|&i| e[i]).collect()))
}

/// Quantum version of [`reduce_mod_tip`]; `Λ` is restricted to the survivors.
pub fn reduce_mod_tip_q(f: &QTorusElement, tip: &TipDescriptor) -> Result<QTorusElement> {
    check_affine(f.terms().map(|(e, _)| e.clone()), tip)?;
    let keep = kept(f.nvars(), tip);
    let lambda = std::sync::Arc::new(f.lambda().submatrix(&keep, &keep));
    let terms = f
        .terms()
        .filter(|(e, _)| tip.contained.iter().all(|&v| e[v] == 0))
        .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone()));
    QTorusElement::from_terms(lambda, terms)
}

/// A chain `I_start ⊋ I_{start+1} ⊋ …` of TIPs with an index permutation.
///
/// `permutation[p]` is the original variable placed at position `p`; after
/// permuting, `I_k ∩ cluster` must be the tail `{x_k, …, x_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosChain {
    pub n: usize,
    pub permutation: Vec<usize>,
    pub start: usize,
    pub ideals: Vec<TipDescriptor>,
}

#[derive(Serialize, Deserialize)]
struct CosChainWire {
    n: usize,
    permutation: Vec<usize>,
    start: usize,
    ideals: Vec<TipDescriptor>,
}

impl Serialize for CosChain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CosChainWire {
            n: self.n,
            permutation: self.permutation.iter().map(|i| i + 1).collect(),
            start: self.start,
            ideals: self.ideals.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CosChain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = CosChainWire::deserialize(d)?;
        Ok(CosChain {
            n: w.n,
            permutation: zero_based(&w.permutation).map_err(serde::de::Error::custom)?,
            start: w.start,
            ideals: w.ideals,
        })
    }
}

impl CosChain {
    /// Depth `r`: the index of the last ideal in the chain.
    pub fn depth(&self) -> usize {
        self.start + self.ideals.len() - 1
    }

    /// Aligns a decreasing sequence of variable sets (0-based) to tails.
    ///
    /// Variables of the smallest set go last, each earlier set contributes its
    /// new variables just before, and the remaining variables go first.
    pub fn from_nested(n: usize, sets: &[BTreeSet<usize>]) -> Result<Self> {
        let Some(first) = sets.first() else {
            return Err(Error::InvalidArgument("empty chain".into()));
        };
        let mut tail: Vec<usize> = Vec::new();
        for (j, s) in sets.iter().enumerate().rev() {
            let prev: BTreeSet<usize> = sets.get(j + 1).cloned().unwrap_or_default();
            let mut fresh: Vec<usize> = s.difference(&prev).copied().collect();
            fresh.extend(tail);
            tail = fresh;
        }
        let mut permutation: Vec<usize> = (0..n).filter(|i| !first.contains(i)).collect();
        let mut seen: BTreeSet<usize> = permutation.iter().copied().collect();
        for v in tail {
            if v >= n {
                return Err(Error::IndexOutOfRange {
                    index: v + 1,
                    bound: n,
                });
            }
            if seen.insert(v) {
                permutation.push(v);
            }
        }
        if permutation.len() != n {
            return Err(Error::InvalidArgument("sets are not nested".into()));
        }
        Ok(Self {
            n,
            permutation,
            start: n - first.len() + 1,
            ideals: sets.iter().map(|s| TipDescriptor::new(s.iter().copied())).collect(),
        })
    }
}

/// Strictly decreasing chain with `I_k ∩ cluster = {x_k, …, x_n}` after the
/// permutation, for every `k` from `start` to the depth.
pub fn validate_cos_chain(c: &CosChain) -> bool {
    let mut sorted = c.permutation.clone();
    sorted.sort_unstable();
    if sorted != (0..c.n).collect::<Vec<_>>() || c.ideals.is_empty() || c.start == 0 {
        return false;
    }
    let mut position = vec![0; c.n];
    for (p, &v) in c.permutation.iter().enumerate() {
        position[v] = p;
    }
    for (j, ideal) in c.ideals.iter().enumerate() {
        let k = c.start + j;
        if ideal.contained.iter().any(|&v| v >= c.n) {
            return false;
        }
        let permuted: BTreeSet<usize> = ideal.contained.iter().map(|&v| position[v] + 1).collect();
        let tail: BTreeSet<usize> = (k..=c.n).collect();
        if permuted != tail {
            return false;
        }
        if j > 0 && !(ideal.is_subset(&c.ideals[j - 1]) && ideal != &c.ideals[j - 1]) {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    ClassicalToQuantum,
    QuantumToClassical,
}

/// The stratum-level Dixmier map. Both sides are indexed by the same
/// descriptors, so the map is the identity on them in either direction.
pub fn dixmier_map(s: &StratumDescriptor, _direction: Direction) -> StratumDescriptor {
    s.clone()
}

/// Rank of the principal `(k-1) × (k-1)` block of `Λ`, for `1 ≤ k ≤ n + 1`.
pub fn symplectic_core_rank(lambda: &IntMatrix, k: usize) -> Result<usize> {
    let n = lambda.rows();
    if k == 0 || k > n + 1 {
        return Err(Error::IndexOutOfRange {
            index: k,
            bound: n + 1,
        });
    }
    Ok(lambda.principal(k - 1).rank())
}
