//! Log-canonical brackets, compatible pairs `(B, Λ)`, pair mutation and
//! toric actions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cluster::{mutate_seed, ExchangeMatrix, Seed};
use crate::error::{check_index, Error, Result};
use crate::kernel::laurent::add_exp;
use crate::kernel::matrix::solve_rational;
use crate::kernel::{integer_kernel, IntMatrix, Lattice, LaurentPoly, RatMatrix};

/// `{x_i, x_j} = λ_ij x_i x_j` with a rational skew-symmetric `Λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketSpec {
    lambda: RatMatrix,
}

impl BracketSpec {
    pub fn new(lambda: RatMatrix) -> Result<Self> {
        if !lambda.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric("bracket coefficient matrix".into()));
        }
        Ok(Self { lambda })
    }

    pub fn from_int(lambda: &IntMatrix) -> Result<Self> {
        Self::new(lambda.to_rational())
    }

    pub fn lambda(&self) -> &RatMatrix {
        &self.lambda
    }

    pub fn n(&self) -> usize {
        self.lambda.rows()
    }

    /// Least positive `s` with `s Λ` integral, and `s Λ`.
    pub fn integer_scaling(&self) -> (i64, IntMatrix) {
        self.lambda.integer_scaling()
    }

    fn pairing(&self, a: &[i64], b: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    acc += self.lambda.get(i, j) * BigRational::from_integer(BigInt::from(ai * bj));
                }
            }
        }
        acc
    }
}

impl<'de> Deserialize<'de> for BracketSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            lambda: RatMatrix,
        }
        let w = Wire::deserialize(deserializer)?;
        BracketSpec::new(w.lambda).map_err(serde::de::Error::custom)
    }
}

/// Bilinear Leibniz extension: `{x^a, x^b} = (a^T Λ b) x^{a+b}`.
pub fn bracket(f: &LaurentPoly, g: &LaurentPoly, spec: &BracketSpec) -> Result<LaurentPoly> {
    if f.nvars() != spec.n() || g.nvars() != spec.n() {
        return Err(Error::DimensionMismatch(format!(
            "bracket of polynomials in {} and {} variables with a {}×{} Λ",
            f.nvars(),
            g.nvars(),
            spec.n(),
            spec.n()
        )));
    }
    let mut out = LaurentPoly::zero(spec.n());
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            let w = spec.pairing(a, b);
            if !w.is_zero() {
                out.add_term(add_exp(a, b), w * ca * cb);
            }
        }
    }
    Ok(out)
}

/// The diagonal `(d_1, …, d_m)` when `B Λ = (D | 0)` with every `d_i > 0`.
pub fn is_compatible_pair(b: &ExchangeMatrix, lambda: &IntMatrix) -> Option<Vec<i64>> {
    if !lambda.is_square() || lambda.rows() != b.n() || !lambda.is_skew_symmetric() {
        return None;
    }
    let prod = b.matrix().mul(lambda).ok()?;
    let mut diag = Vec::with_capacity(b.m());
    for i in 0..b.m() {
        for j in 0..b.n() {
            let v = prod.get(i, j);
            if i == j {
                if v <= 0 {
                    return None;
                }
                diag.push(v);
            } else if v != 0 {
                return None;
            }
        }
    }
    Some(diag)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatiblePair {
    b: ExchangeMatrix,
    lambda: IntMatrix,
    diag: Vec<i64>,
}

impl CompatiblePair {
    pub fn new(b: ExchangeMatrix, lambda: IntMatrix) -> Result<Self> {
        let diag = is_compatible_pair(&b, &lambda).ok_or_else(|| {
            Error::NotCompatible(format!("B·Λ is not (D|0) with positive D for Λ = {lambda}"))
        })?;
        Ok(Self { b, lambda, diag })
    }

    pub fn b(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn lambda(&self) -> &IntMatrix {
        &self.lambda
    }

    pub fn diag(&self) -> &[i64] {
        &self.diag
    }

    pub fn m(&self) -> usize {
        self.b.m()
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }
}

#[derive(Serialize, Deserialize)]
struct PairWire {
    #[serde(rename = "B")]
    b: IntMatrix,
    lambda: IntMatrix,
    #[serde(default)]
    diag: Option<Vec<i64>>,
}

impl Serialize for CompatiblePair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PairWire {
            b: self.b.matrix().clone(),
            lambda: self.lambda.clone(),
            diag: Some(self.diag.clone()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CompatiblePair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = PairWire::deserialize(deserializer)?;
        let p = pair_from_parts(w.b, w.lambda).map_err(serde::de::Error::custom)?;
        if let Some(d) = w.diag {
            if d != p.diag {
                return Err(serde::de::Error::custom(format!(
                    "stored diag {:?} disagrees with B·Λ diagonal {:?}",
                    d, p.diag
                )));
            }
        }
        Ok(p)
    }
}

/// Builds a pair from a possibly row-less `B` whose width is taken from `Λ`.
pub fn pair_from_parts(b: IntMatrix, lambda: IntMatrix) -> Result<CompatiblePair> {
    let b = IntMatrix::from_rows_with_cols(b.to_rows(), lambda.cols())?;
    CompatiblePair::new(ExchangeMatrix::new(b)?, lambda)
}

/// Lemma check: a compatible `B` has full row rank.
pub fn full_rank_check(p: &CompatiblePair) -> bool {
    p.b.matrix().rank() == p.m()
}

/// `E_{k,ε}` (`n × n`).
pub fn e_matrix(b: &ExchangeMatrix, k: usize, eps: i64) -> Result<IntMatrix> {
    check_index(k, b.m())?;
    check_sign(eps)?;
    let n = b.n();
    Ok(IntMatrix::from_fn(n, n, |i, j| {
        if j != k {
            i64::from(i == j)
        } else if i == k {
            -1
        } else {
            (-eps * b.get(k, i)).max(0)
        }
    }))
}

/// `F_{k,ε}` (`m × m`).
pub fn f_matrix(b: &ExchangeMatrix, k: usize, eps: i64) -> Result<IntMatrix> {
    check_index(k, b.m())?;
    check_sign(eps)?;
    let m = b.m();
    Ok(IntMatrix::from_fn(m, m, |i, j| {
        if i != k {
            i64::from(i == j)
        } else if j == k {
            -1
        } else {
            (eps * b.get(j, k)).max(0)
        }
    }))
}

fn check_sign(eps: i64) -> Result<()> {
    if eps == 1 || eps == -1 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {eps}")))
    }
}

/// `Λ_k = E^T Λ E` for the given sign.
pub fn mutate_lambda(b: &ExchangeMatrix, lambda: &IntMatrix, k: usize, eps: i64) -> Result<IntMatrix> {
    let e = e_matrix(b, k, eps)?;
    e.transpose().mul(lambda)?.mul(&e)
}

/// `(F^T B E^T, E^T Λ E)`; the result is checked to be compatible again.
///
/// With exchangeable rows, `B` here is the transpose of the column-indexed
/// matrix in which the mutated matrix reads `E B F`, hence the transposes.
pub fn mutate_pair(p: &CompatiblePair, k: usize, eps: i64) -> Result<CompatiblePair> {
    let e = e_matrix(&p.b, k, eps)?;
    let f = f_matrix(&p.b, k, eps)?;
    let bk = f.transpose().mul(p.b.matrix())?.mul(&e.transpose())?;
    let lk = e.transpose().mul(&p.lambda)?.mul(&e)?;
    CompatiblePair::new(ExchangeMatrix::new(bk)?, lk)
}

/// `T = ker B`: weight vectors of global toric actions.
pub fn global_toric_lattice(b: &ExchangeMatrix) -> Lattice {
    integer_kernel(b.matrix())
}

/// True iff `B C = 0`, i.e. each column of `C` is a global toric weight.
pub fn check_weight_matrix(b: &ExchangeMatrix, c: &IntMatrix) -> Result<bool> {
    if c.rows() != b.n() {
        return Err(Error::DimensionMismatch(format!(
            "weight matrix has {} rows, expected {}",
            c.rows(),
            b.n()
        )));
    }
    Ok(b.matrix().mul(c)?.is_zero())
}

/// Degree `C^T a` of the monomial `x^a`.
pub fn monomial_weight(c: &IntMatrix, exp: &[i64]) -> Result<Vec<i64>> {
    c.transpose().mul_vec(exp)
}

/// Common degree of every term, or `None` when `f` is not homogeneous.
pub fn grading(f: &LaurentPoly, c: &IntMatrix) -> Result<Option<Vec<i64>>> {
    let mut degree: Option<Vec<i64>> = None;
    for (e, _) in f.terms() {
        let w = monomial_weight(c, e)?;
        match &degree {
            None => degree = Some(w),
            Some(d) if *d != w => return Ok(None),
            Some(_) => {}
        }
    }
    Ok(Some(degree.unwrap_or_else(|| vec![0; c.cols()])))
}

/// If `a = c b` for a rational scalar `c`, returns `c`.
pub(crate) fn scalar_ratio(a: &LaurentPoly, b: &LaurentPoly) -> Option<BigRational> {
    if b.is_zero() {
        return a.is_zero().then(BigRational::zero);
    }
    if a.is_zero() {
        return Some(BigRational::zero());
    }
    let (e, cb) = b.leading_term()?;
    let c = a.coefficient(e) / cb;
    (a == &b.scale(&c)).then_some(c)
}

/// Mutates `s` at `i` and checks `{y_i, x_j} = c · y_i x_j` for every `j ≠ i`.
pub fn adjacent_log_canonical(s: &Seed, spec: &BracketSpec, i: usize) -> Result<bool> {
    check_index(i, s.m())?;
    let t = mutate_seed(s, i)?;
    let y = t.variable(i);
    for j in 0..s.n() {
        if j == i {
            continue;
        }
        let x = s.variable(j);
        let br = bracket(y, x, spec)?;
        if scalar_ratio(&br, &(y * x)).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Image of `T` under deletion of the coordinates in `drop` (0-based).
pub fn projected_torus(t: &Lattice, drop: &[usize]) -> Lattice {
    t.project(drop)
}

/// Samples a compatible pair with `m` exchangeable and `n` total variables.
///
/// Draws a random skew `Λ` and solves `-Λ b_i = d_i e_i` row by row over the
/// rationals, adding random kernel combinations and clearing denominators.
/// Returns `None` when the draw admits no solution.
pub fn random_compatible_pair<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n: usize,
    entry_bound: i64,
) -> Option<CompatiblePair> {
    assert!(m <= n);
    let mut lambda = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.random_range(-entry_bound..=entry_bound);
            lambda.set(i, j, v);
            lambda.set(j, i, -v);
        }
    }
    let neg: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer((-lambda.get(i, j)).into()))
                .collect()
        })
        .collect();
    let kernel = integer_kernel(&lambda);
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let rhs: Vec<BigRational> = (0..n)
            .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
            .collect();
        let mut x = solve_rational(&neg, &rhs)?;
        for w in kernel.basis() {
            let c = rng.random_range(-1i64..=1);
            for (xi, &wi) in x.iter_mut().zip(w) {
                *xi += BigRational::from_integer((c * wi).into());
            }
        }
        let lcm = x
            .iter()
            .fold(BigInt::one(), |acc, v| num_integer::lcm(acc, v.denom().clone()));
        let row: Option<Vec<i64>> = x
            .iter()
            .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer().to_i64())
            .collect();
        let row = row?;
        if row.iter().any(|v| v.abs() > 64) {
            return None;
        }
        rows.push(row);
    }
    let b = ExchangeMatrix::from_rows(rows, n).ok()?;
    CompatiblePair::new(b, lambda).ok()
}

/// Draws until a compatible pair appears (bounded number of attempts).
pub fn sample_compatible_pair<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n: usize,
    entry_bound: i64,
) -> Option<CompatiblePair> {
    (0..200).find_map(|_| random_compatible_pair(rng, m, n, entry_bound))
}

/// Sanity helper: the largest absolute entry of `B` and `Λ`.
pub fn max_entry(p: &CompatiblePair) -> i64 {
    let b = p.b.matrix().to_rows().into_iter().flatten();
    let l = p.lambda.to_rows().into_iter().flatten();
    b.chain(l).map(|v| v.abs()).max().unwrap_or(0)
}
