//! Exact points of `SL_n`, double Bruhat cell membership, and numerical checks
//! of the exchange relations.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::seed::{build_bfz_seed, BfzSeed};
use super::weyl::{bruhat_leq, subsets_of_size, weight_leq, CartanData, WeylElement};
use super::word::{DoubleWord, MinorSpec};
use crate::error::{Error, Result};
use crate::kernel::rational_determinant;
use crate::strata::{validate_cos_chain, CosChain};

/// An `n × n` rational matrix of determinant one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPoint {
    entries: Vec<Vec<BigRational>>,
}

impl GroupPoint {
    pub fn new(entries: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("group point must be square".into()));
        }
        if !rational_determinant(&entries).is_one() {
            return Err(Error::InvalidArgument("determinant is not 1".into()));
        }
        Ok(Self { entries })
    }

    pub fn from_ints(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: identity_rows(n),
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    pub fn mul(&self, other: &GroupPoint) -> GroupPoint {
        GroupPoint {
            entries: mat_mul(&self.entries, &other.entries),
        }
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(BigRational::zero(), |acc, t| {
                        if a[i][t].is_zero() {
                            acc
                        } else {
                            acc + &a[i][t] * &b[t][j]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

fn minor_of(rows: &[Vec<BigRational>], spec: &MinorSpec) -> BigRational {
    let sub: Vec<Vec<BigRational>> = spec
        .rows
        .iter()
        .map(|&r| spec.cols.iter().map(|&c| rows[r - 1][c - 1].clone()).collect())
        .collect();
    rational_determinant(&sub)
}

pub fn evaluate_minor(spec: &MinorSpec, x: &GroupPoint) -> Result<BigRational> {
    let n = x.n();
    if spec.rows.iter().chain(&spec.cols).any(|&i| i == 0 || i > n) {
        return Err(Error::IndexOutOfRange {
            index: spec.rows.iter().chain(&spec.cols).copied().max().unwrap_or(0),
            bound: n,
        });
    }
    Ok(minor_of(x.rows(), spec))
}

/// A nonzero rational `a / b` with `|a| ≤ 9`, `1 ≤ b ≤ 5`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let a: i64 = rng.random_range(1..=9) * if rng.random_bool(0.5) { 1 } else { -1 };
    let b: i64 = rng.random_range(1..=5);
    BigRational::new(a.into(), b.into())
}

/// `h · x_{i_1}(t_1) ⋯ x_{i_L}(t_L)` with random nonzero parameters; a
/// positive letter `i` is `1 + t E_{i,i+1}`, a negative one `1 + t E_{i+1,i}`.
pub fn factorized_point<R: Rng + ?Sized>(w: &DoubleWord, rng: &mut R) -> GroupPoint {
    let n = w.cartan().n();
    let mut x = identity_rows(n);
    let mut prod = BigRational::one();
    for i in 0..n - 1 {
        let h = random_rational(rng);
        prod *= &h;
        x[i][i] = h;
    }
    x[n - 1][n - 1] = prod.recip();
    for &a in w.letters() {
        let i = a.unsigned_abs() as usize - 1;
        let t = random_rational(rng);
        // right-multiplying by an elementary matrix is a column operation
        let (dst, src) = if a > 0 { (i + 1, i) } else { (i, i + 1) };
        for row in x.iter_mut() {
            let add = &row[src] * &t;
            row[dst] += add;
        }
    }
    GroupPoint { entries: x }
}

/// A reduced double word for `(u, v)`: the word for `u` negated, then `v`.
pub fn standard_double_word(u: &WeylElement, v: &WeylElement, cd: &CartanData) -> Result<DoubleWord> {
    let letters = u
        .reduced_word()
        .into_iter()
        .map(|i| -(i as i64))
        .chain(v.reduced_word().into_iter().map(|i| i as i64))
        .collect();
    DoubleWord::new(letters, cd.clone())
}

/// A generic point of `G^{u,v}`.
pub fn sample_cell_point<R: Rng + ?Sized>(
    u: &WeylElement,
    v: &WeylElement,
    cd: &CartanData,
    rng: &mut R,
) -> Result<GroupPoint> {
    Ok(factorized_point(&standard_double_word(u, v, cd)?, rng))
}

/// Minor criterion for `x ∈ G^{u,v} = B u B ∩ B_- v B_-`.
pub fn dbc_membership(x: &GroupPoint, u: &WeylElement, v: &WeylElement) -> Result<bool> {
    let n = x.n();
    if u.n() != n || v.n() != n {
        return Err(Error::DimensionMismatch("Weyl elements and point differ in size".into()));
    }
    let vinv = v.inverse();
    for i in 1..n {
        let base: Vec<usize> = (1..=i).collect();
        let u_sub = u.weight_subset(i);
        let v_sub = vinv.weight_subset(i);
        if minor_of(x.rows(), &MinorSpec::new(u_sub.clone(), base.clone())?).is_zero()
            || minor_of(x.rows(), &MinorSpec::new(base.clone(), v_sub.clone())?).is_zero()
        {
            return Ok(false);
        }
        for s in subsets_of_size(n, i) {
            if !weight_leq(&s, &u_sub, n)?
                && !minor_of(x.rows(), &MinorSpec::new(s.clone(), base.clone())?).is_zero()
            {
                return Ok(false);
            }
            if !weight_leq(&s, &v_sub, n)?
                && !minor_of(x.rows(), &MinorSpec::new(base.clone(), s.clone())?).is_zero()
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of [`verify_exchange_identity`].
///
/// Generic samples check `x_k · x_k' = P_k` for `x_k' = P_k / x_k`. Since
/// `x_k'` must be regular on the cell, `P_k` also has to vanish at cell points
/// where `x_k = 0`; those are the `vanishing_*` counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeCheck {
    pub vertex: i64,
    pub label: String,
    pub seed: u64,
    pub checked: usize,
    pub skipped: usize,
    pub failures: usize,
    pub vanishing_checked: usize,
    pub vanishing_failures: usize,
}

impl ExchangeCheck {
    pub fn pass(&self) -> bool {
        self.checked > 0 && self.failures == 0 && self.vanishing_failures == 0
    }
}

fn exchange_sides(row: &[i64], values: &[BigRational]) -> BigRational {
    let mut plus = BigRational::one();
    let mut minus = BigRational::one();
    for (b, x) in row.iter().zip(values) {
        for _ in 0..b.unsigned_abs() {
            if *b > 0 {
                plus *= x;
            } else {
                minus *= x;
            }
        }
    }
    plus + minus
}

/// Checks the exchange relation at vertex `k` on one point; `None` when a
/// cluster variable vanishes there and the sample is skipped.
pub fn exchange_identity_at(w: &DoubleWord, k: i64, x: &GroupPoint) -> Result<Option<bool>> {
    let bfz = build_bfz_seed(w)?;
    let p = exchangeable_position(w, &bfz, k)?;
    if x.n() != w.cartan().n() {
        return Err(Error::DimensionMismatch("point size differs from the word's group".into()));
    }
    let values: Vec<BigRational> = bfz.minors.iter().map(|s| minor_of(x.rows(), s)).collect();
    if values.iter().any(Zero::is_zero) {
        return Ok(None);
    }
    let rhs = exchange_sides(bfz.b.matrix().row(p), &values);
    let mutated = &rhs / &values[p];
    Ok(Some(&values[p] * &mutated == rhs))
}

fn exchangeable_position(w: &DoubleWord, bfz: &BfzSeed, k: i64) -> Result<usize> {
    w.check_vertex(k)?;
    let p = bfz.position(k).expect("every vertex is placed");
    if p >= bfz.m() {
        return Err(Error::InvalidArgument(format!("vertex {k} is frozen")));
    }
    Ok(p)
}

/// Samples random exact points of `G^{u,v}` and checks the exchange relation
/// at vertex `k` of the seed of `w` on `samples` nondegenerate points.
pub fn verify_exchange_identity(w: &DoubleWord, k: i64, samples: usize, seed: u64) -> Result<ExchangeCheck> {
    let bfz = build_bfz_seed(w)?;
    let p = exchangeable_position(w, &bfz, k)?;
    let row = bfz.b.matrix().row(p).to_vec();
    check_exchange_row(w, &bfz, p, &row, samples, seed)
}

pub(crate) fn check_exchange_row(
    w: &DoubleWord,
    bfz: &BfzSeed,
    p: usize,
    row: &[i64],
    samples: usize,
    seed: u64,
) -> Result<ExchangeCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ExchangeCheck {
        vertex: bfz.order[p],
        label: bfz.minors[p].label(),
        seed,
        checked: 0,
        skipped: 0,
        failures: 0,
        vanishing_checked: 0,
        vanishing_failures: 0,
    };
    // degenerate draws are resampled, up to a fixed budget
    for _ in 0..samples * 20 {
        if report.checked >= samples {
            break;
        }
        let x = factorized_point(w, &mut rng);
        let values: Vec<BigRational> = bfz.minors.iter().map(|s| minor_of(x.rows(), s)).collect();
        if values.iter().any(Zero::is_zero) {
            report.skipped += 1;
            continue;
        }
        let rhs = exchange_sides(row, &values);
        let mutated = &rhs / &values[p];
        report.checked += 1;
        if &values[p] * &mutated != rhs {
            report.failures += 1;
        }
    }
    if report.checked == 0 {
        return Err(Error::DegenerateSamples);
    }
    let target = &bfz.minors[p];
    for _ in 0..samples * 20 {
        if report.vanishing_checked >= samples {
            break;
        }
        let Some(x) = point_on_divisor(w, target, &mut rng) else {
            continue;
        };
        if !dbc_membership(&x, w.u(), w.v())? {
            continue;
        }
        let values: Vec<BigRational> = bfz.minors.iter().map(|s| minor_of(x.rows(), s)).collect();
        report.vanishing_checked += 1;
        if !exchange_sides(row, &values).is_zero() {
            report.vanishing_failures += 1;
        }
    }
    Ok(report)
}

/// Moves one entry of a generic cell point so the minor `target` vanishes,
/// then rescales a row outside the minor to restore determinant one.
fn point_on_divisor<R: Rng + ?Sized>(w: &DoubleWord, target: &MinorSpec, rng: &mut R) -> Option<GroupPoint> {
    let n = w.cartan().n();
    let mut x = factorized_point(w, rng).entries;
    let a = target.rows[rng.random_range(0..target.size())] - 1;
    let b = target.cols[rng.random_range(0..target.size())] - 1;
    x[a][b] = BigRational::zero();
    let beta = minor_of(&x, target);
    x[a][b] = BigRational::one();
    let alpha = minor_of(&x, target) - &beta;
    if alpha.is_zero() {
        return None;
    }
    x[a][b] = -beta / alpha;
    let det = rational_determinant(&x);
    let free = (1..=n).find(|r| !target.rows.contains(r))? - 1;
    if det.is_zero() {
        return None;
    }
    let inv = det.recip();
    for e in x[free].iter_mut() {
        *e *= &inv;
    }
    Some(GroupPoint { entries: x })
}

/// One maximal chain `(e, e) < … < (u, v)` of cells with the cluster variables
/// vanishing on each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellChain {
    pub cells: Vec<(WeylElement, WeylElement)>,
    /// 0-based positions in the seed order.
    pub vanishing: Vec<BTreeSet<usize>>,
    pub chain: Option<CosChain>,
    pub valid: bool,
}

/// Elements covering `w` in Bruhat order.
fn bruhat_covers(w: &WeylElement) -> Vec<WeylElement> {
    let n = w.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut t = WeylElement::identity(n).perm().to_vec();
            t.swap(i, j);
            let wt = w.compose(&WeylElement::from_perm(t).expect("transposition"));
            if wt.length() == w.length() + 1 {
                out.push(wt);
            }
        }
    }
    out
}

fn maximal_chains(
    cur: (WeylElement, WeylElement),
    top: &(WeylElement, WeylElement),
    path: &mut Vec<(WeylElement, WeylElement)>,
    out: &mut Vec<Vec<(WeylElement, WeylElement)>>,
) {
    path.push(cur.clone());
    if &cur == top {
        out.push(path.clone());
    } else {
        for u in bruhat_covers(&cur.0).into_iter().filter(|u| bruhat_leq(u, &top.0)) {
            maximal_chains((u, cur.1.clone()), top, path, out);
        }
        for v in bruhat_covers(&cur.1).into_iter().filter(|v| bruhat_leq(v, &top.1)) {
            maximal_chains((cur.0.clone(), v), top, path, out);
        }
    }
    path.pop();
}

/// For every maximal Bruhat-increasing chain of cells below `(u, v)`, records
/// which cluster variables of the seed of `w` vanish on each cell and tries
/// to align the resulting sets into a chain of torus-invariant primes.
pub fn bruhat_cos_chains(w: &DoubleWord, points_per_cell: usize, seed: u64) -> Result<Vec<CellChain>> {
    let bfz = build_bfz_seed(w)?;
    let cd = w.cartan().clone();
    let n = cd.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = (w.u().clone(), w.v().clone());
    let mut chains = Vec::new();
    maximal_chains(
        (WeylElement::identity(n), WeylElement::identity(n)),
        &top,
        &mut Vec::new(),
        &mut chains,
    );
    let mut cache: BTreeMap<(WeylElement, WeylElement), BTreeSet<usize>> = BTreeMap::new();
    let mut out = Vec::new();
    for cells in chains {
        let mut vanishing = Vec::new();
        for cell in &cells {
            if !cache.contains_key(cell) {
                let mut zero: BTreeSet<usize> = (0..bfz.n()).collect();
                for _ in 0..points_per_cell.max(1) {
                    let x = sample_cell_point(&cell.0, &cell.1, &cd, &mut rng)?;
                    zero.retain(|&i| minor_of(x.rows(), &bfz.minors[i]).is_zero());
                }
                cache.insert(cell.clone(), zero);
            }
            vanishing.push(cache[cell].clone());
        }
        let mut sets: Vec<BTreeSet<usize>> = Vec::new();
        for s in &vanishing {
            if !s.is_empty() && sets.last() != Some(s) {
                sets.push(s.clone());
            }
        }
        let chain = CosChain::from_nested(bfz.n(), &sets).ok();
        let valid = chain.as_ref().is_some_and(validate_cos_chain);
        out.push(CellChain {
            cells,
            vanishing,
            chain,
            valid,
        });
    }
    Ok(out)
}
