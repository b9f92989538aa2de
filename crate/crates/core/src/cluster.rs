//! Classical seeds: exchange matrices, mutation, exchange polynomials and the
//! lower/upper bound checks.
//!
//! Indices in this API are 0-based. `B` is `m × n` with the exchangeable
//! variables indexing rows, so the exchange polynomial of `x_i` reads row `i`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_index, Error, Result};
use crate::kernel::{exact_divide, IntMatrix, LaurentPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeMatrix {
    b: IntMatrix,
    symmetrizer: Vec<i64>,
}

impl ExchangeMatrix {
    /// Validates `b` (`m × n`, `m ≤ n`) and solves for a symmetrizer of the
    /// principal part.
    pub fn new(b: IntMatrix) -> Result<Self> {
        if b.rows() > b.cols() {
            return Err(Error::DimensionMismatch(format!(
                "exchange matrix has {} rows but only {} columns",
                b.rows(),
                b.cols()
            )));
        }
        let symmetrizer = solve_symmetrizer(&b.principal(b.rows()))?;
        Ok(Self { b, symmetrizer })
    }

    pub fn from_rows(rows: Vec<Vec<i64>>, n: usize) -> Result<Self> {
        Self::new(IntMatrix::from_rows_with_cols(rows, n)?)
    }

    /// Number of exchangeable variables.
    pub fn m(&self) -> usize {
        self.b.rows()
    }

    /// Total number of variables.
    pub fn n(&self) -> usize {
        self.b.cols()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b.get(i, j)
    }

    /// Positive integers `d` with `b_ij d_j = -b_ji d_i` on the principal part.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.b
    }
}

impl Serialize for ExchangeMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.b.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExchangeMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let b = IntMatrix::deserialize(deserializer)?;
        ExchangeMatrix::new(b).map_err(serde::de::Error::custom)
    }
}

/// Propagates ratios `d_j / d_i = -b_ji / b_ij` along the nonzero pattern,
/// then clears denominators. Fails on sign or cycle inconsistencies.
fn solve_symmetrizer(p: &IntMatrix) -> Result<Vec<i64>> {
    let m = p.rows();
    for i in 0..m {
        if p.get(i, i) != 0 {
            return Err(Error::NotSkewSymmetrizable(format!(
                "nonzero diagonal entry at ({}, {})",
                i + 1,
                i + 1
            )));
        }
        for j in 0..m {
            let (a, b) = (p.get(i, j), p.get(j, i));
            if (a == 0) != (b == 0) || (a != 0 && a.signum() == b.signum()) {
                return Err(Error::NotSkewSymmetrizable(format!(
                    "entries ({}, {}) and ({}, {}) are not sign-skew",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    let mut d: Vec<Option<BigRational>> = vec![None; m];
    for start in 0..m {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(BigRational::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..m {
                let bij = p.get(i, j);
                if bij == 0 {
                    continue;
                }
                let dj = &di * BigRational::new((-p.get(j, i)).into(), bij.into());
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) if *existing != dj => {
                        return Err(Error::NotSkewSymmetrizable(format!(
                            "inconsistent symmetrizer around index {}",
                            j + 1
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let d: Vec<BigRational> = d.into_iter().map(Option::unwrap).collect();
    let lcm = d
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let scaled: Vec<num_bigint::BigInt> = d.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = scaled
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| num_integer::gcd(acc, x.clone()));
    scaled
        .iter()
        .map(|x| {
            let v = if g.is_zero() { x.clone() } else { x / &g };
            i64::try_from(v).map_err(|_| {
                Error::NotSkewSymmetrizable("symmetrizer entry exceeds i64".into())
            })
        })
        .collect()
}

/// Matrix mutation at exchangeable index `k`.
pub fn mutate_matrix(e: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix> {
    check_index(k, e.m())?;
    let b = &e.b;
    let out = IntMatrix::from_fn(e.m(), e.n(), |i, j| {
        if i == k || j == k {
            -b.get(i, j)
        } else {
            let bik = b.get(i, k);
            let bkj = b.get(k, j);
            b.get(i, j) + (bik.abs() * bkj + bik * bkj.abs()) / 2
        }
    });
    Ok(ExchangeMatrix {
        b: out,
        symmetrizer: e.symmetrizer.clone(),
    })
}

/// A seed whose variables are Laurent polynomials in the initial cluster.
///
/// `labels` name the positions of the initial cluster and are used for display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    matrix: ExchangeMatrix,
    labels: Vec<String>,
    variables: Vec<LaurentPoly>,
    history: Vec<usize>,
}

impl Seed {
    /// The initial seed: variables are the coordinate functions.
    pub fn initial(matrix: ExchangeMatrix, labels: Vec<String>) -> Result<Self> {
        let n = matrix.n();
        if labels.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} variables",
                labels.len(),
                n
            )));
        }
        let variables = (0..n).map(|i| LaurentPoly::var(n, i)).collect();
        Ok(Self {
            matrix,
            labels,
            variables,
            history: Vec::new(),
        })
    }

    /// Initial seed with labels `x1, …, xn`.
    pub fn from_matrix(matrix: ExchangeMatrix) -> Self {
        let labels = default_labels(matrix.n());
        Self::initial(matrix, labels).expect("label count matches")
    }

    /// Reassembles a seed from stored parts, checking shapes.
    pub fn from_parts(
        matrix: ExchangeMatrix,
        labels: Vec<String>,
        variables: Vec<LaurentPoly>,
        history: Vec<usize>,
    ) -> Result<Self> {
        let n = matrix.n();
        if labels.len() != n || variables.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "seed with n = {} has {} labels and {} variables",
                n,
                labels.len(),
                variables.len()
            )));
        }
        let variables = variables
            .into_iter()
            .map(|v| v.with_nvars(n))
            .collect::<Result<Vec<_>>>()?;
        for &k in &history {
            check_index(k, matrix.m())?;
        }
        Ok(Self {
            matrix,
            labels,
            variables,
            history,
        })
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn m(&self) -> usize {
        self.matrix.m()
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn variables(&self) -> &[LaurentPoly] {
        &self.variables
    }

    pub fn variable(&self, i: usize) -> &LaurentPoly {
        &self.variables[i]
    }

    /// Mutation indices applied since the initial seed (0-based).
    pub fn history(&self) -> &[usize] {
        &self.history
    }

    /// Equality of matrix, labels and variables, ignoring history.
    pub fn same_state(&self, other: &Seed) -> bool {
        self.matrix == other.matrix
            && self.labels == other.labels
            && self.variables == other.variables
    }

    /// Seed at the start of this seed's history.
    pub fn initial_seed(&self) -> Result<Seed> {
        let mut s = self.clone();
        for &k in self.history.iter().rev() {
            s = mutate_seed(&s, k)?;
        }
        s.history.clear();
        Ok(s)
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// `∏ v_k^{[b_ik]_+} + ∏ v_k^{[-b_ik]_+}` on the given values.
pub(crate) fn exchange_binomial(
    row: &[i64],
    values: &[LaurentPoly],
    nvars: usize,
) -> LaurentPoly {
    let mut pos = LaurentPoly::one(nvars);
    let mut neg = LaurentPoly::one(nvars);
    for (v, &b) in values.iter().zip(row) {
        if b > 0 {
            pos = &pos * &v.pow(b as u32);
        } else if b < 0 {
            neg = &neg * &v.pow((-b) as u32);
        }
    }
    &pos + &neg
}

/// Exchange polynomial `P_i` evaluated on the seed's current variables.
pub fn exchange_polynomial(s: &Seed, i: usize) -> Result<LaurentPoly> {
    check_index(i, s.m())?;
    Ok(exchange_binomial(
        s.matrix.b.row(i),
        &s.variables,
        s.n(),
    ))
}

/// `P_j` in the seed's own cluster coordinates.
pub fn coordinate_exchange_polynomial(e: &ExchangeMatrix, j: usize) -> Result<LaurentPoly> {
    check_index(j, e.m())?;
    let n = e.n();
    let coords: Vec<LaurentPoly> = (0..n).map(|i| LaurentPoly::var(n, i)).collect();
    Ok(exchange_binomial(e.b.row(j), &coords, n))
}

/// Seed mutation at exchangeable index `k`.
pub fn mutate_seed(s: &Seed, k: usize) -> Result<Seed> {
    let p = exchange_polynomial(s, k)?;
    let new_var = exact_divide(&p, &s.variables[k])?;
    let matrix = mutate_matrix(&s.matrix, k)?;
    let mut variables = s.variables.clone();
    variables[k] = new_var;
    let mut history = s.history.clone();
    history.push(k);
    Ok(Seed {
        matrix,
        labels: s.labels.clone(),
        variables,
        history,
    })
}

/// Mutates along a word of exchangeable indices.
pub fn mutate_along(s: &Seed, word: &[usize]) -> Result<Seed> {
    word.iter().try_fold(s.clone(), |acc, &k| mutate_seed(&acc, k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableReport {
    pub index: usize,
    pub laurent: bool,
    pub monomial_denominator: bool,
    pub positive: bool,
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentReport {
    pub pass: bool,
    pub all_positive: bool,
    pub variables: Vec<VariableReport>,
}

/// Confirms every variable is a Laurent polynomial and records positivity.
///
/// Variables are stored as Laurent polynomials, so the Laurent part restates
/// that each one is nonzero; positivity is informational.
pub fn laurent_certificate(s: &Seed) -> LaurentReport {
    let variables: Vec<VariableReport> = s
        .variables
        .iter()
        .enumerate()
        .map(|(i, v)| VariableReport {
            index: i + 1,
            laurent: !v.is_zero() && v.nvars() == s.n(),
            monomial_denominator: true,
            positive: v.has_positive_integer_coefficients(),
            terms: v.len(),
        })
        .collect();
    LaurentReport {
        pass: variables.iter().all(|r| r.laurent),
        all_positive: variables.iter().all(|r| r.positive),
        variables,
    }
}

/// `{x_1, …, x_n, y_1, …, y_m}` with `y_i` the variable obtained by mutating at `i`.
pub fn lower_bound_generators(s: &Seed) -> Result<Vec<LaurentPoly>> {
    let mut out = s.variables.clone();
    for i in 0..s.m() {
        let p = exchange_polynomial(s, i)?;
        out.push(exact_divide(&p, &s.variables[i])?);
    }
    Ok(out)
}

/// Membership of `f` (written in the seed's cluster coordinates) in the upper
/// bound: for each exchangeable `j`, the coefficient of `x_j^{-t}` must be
/// divisible by `P_j^t`.
pub fn upper_bound_membership(f: &LaurentPoly, s: &Seed) -> Result<bool> {
    if f.nvars() != s.n() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial in {} variables for a seed with n = {}",
            f.nvars(),
            s.n()
        )));
    }
    for j in 0..s.m() {
        let p = coordinate_exchange_polynomial(&s.matrix, j)?;
        let mut by_power: std::collections::BTreeMap<i64, LaurentPoly> = Default::default();
        for (e, c) in f.terms() {
            if e[j] < 0 {
                let mut rest = e.clone();
                rest[j] = 0;
                by_power
                    .entry(-e[j])
                    .or_insert_with(|| LaurentPoly::zero(s.n()))
                    .add_term(rest, c.clone());
            }
        }
        for (t, c) in by_power {
            match exact_divide(&c, &p.pow(t as u32)) {
                Ok(_) => {}
                Err(Error::NotDivisible) => return Ok(false),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(true)
}

/// Rational-function value of a variable at a point of the initial torus.
pub fn evaluate_variable(s: &Seed, i: usize, point: &[BigRational]) -> Result<BigRational> {
    check_index(i, s.n())?;
    s.variables[i].evaluate(point)
}

/// True when the principal part is skew-symmetric (trivial symmetrizer).
pub fn is_skew_symmetric_principal(e: &ExchangeMatrix) -> bool {
    e.symmetrizer.iter().all(|d| d.is_one()) && e.b.principal(e.m()).is_skew_symmetric()
}

#[derive(Serialize, Deserialize)]
pub(crate) struct SeedWire {
    pub m: usize,
    pub n: usize,
    #[serde(rename = "B")]
    pub b: IntMatrix,
    pub labels: Vec<String>,
    pub variables: Vec<LaurentPoly>,
    pub history: Vec<usize>,
}

impl SeedWire {
    pub(crate) fn from_seed(s: &Seed) -> Self {
        SeedWire {
            m: s.m(),
            n: s.n(),
            b: s.matrix.b.clone(),
            labels: s.labels.clone(),
            variables: s.variables.clone(),
            history: s.history.iter().map(|k| k + 1).collect(),
        }
    }

    pub(crate) fn into_seed(self) -> Result<Seed> {
        let b = IntMatrix::from_rows_with_cols(self.b.to_rows(), self.n)?;
        if b.rows() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "B has {} rows but m = {}",
                b.rows(),
                self.m
            )));
        }
        let matrix = ExchangeMatrix::new(b)?;
        let history = self
            .history
            .into_iter()
            .map(|k| {
                if k == 0 {
                    Err(Error::IndexOutOfRange {
                        index: 0,
                        bound: self.m,
                    })
                } else {
                    Ok(k - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Seed::from_parts(matrix, self.labels, self.variables, history)
    }
}

impl Serialize for Seed {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeedWire::from_seed(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Seed {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        SeedWire::deserialize(deserializer)?
            .into_seed()
            .map_err(serde::de::Error::custom)
    }
}

/// Whether two seeds carry the same cluster as a multiset, ignoring positions.
pub fn same_cluster(a: &Seed, b: &Seed) -> bool {
    let mut x: Vec<String> = a.variables.iter().map(|v| format!("{v:?}")).collect();
    let mut y: Vec<String> = b.variables.iter().map(|v| format!("{v:?}")).collect();
    x.sort();
    y.sort();
    x == y
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn em(rows: Vec<Vec<i64>>) -> ExchangeMatrix {
        let n = rows.first().map_or(0, Vec::len);
        ExchangeMatrix::from_rows(rows, n).unwrap()
    }

    fn a2() -> Seed {
        Seed::from_matrix(em(vec![vec![0, 1], vec![-1, 0]]))
    }

    fn a3() -> Seed {
        Seed::from_matrix(em(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]))
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn poly(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), r(*c)))).unwrap()
    }

    #[test]
    fn mutation_examples() {
        let b = em(vec![vec![0, 1], vec![-1, 0]]);
        assert_eq!(
            mutate_matrix(&b, 0).unwrap().matrix().to_rows(),
            vec![vec![0, -1], vec![1, 0]]
        );
        let b = em(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]);
        assert_eq!(
            mutate_matrix(&b, 1).unwrap().matrix().to_rows(),
            vec![vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]]
        );
        assert!(matches!(
            mutate_matrix(&b, 3),
            Err(Error::IndexOutOfRange { index: 4, bound: 3 })
        ));
    }

    #[test]
    fn symmetrizer_solutions() {
        // [[0,1],[-2,0]] needs d = (1,2).
        let b = em(vec![vec![0, 1], vec![-2, 0]]);
        let d = b.symmetrizer();
        assert_eq!(d, &[1, 2]);
        assert_eq!(b.get(0, 1) * d[1], -b.get(1, 0) * d[0]);
        assert!(ExchangeMatrix::from_rows(vec![vec![0, 1], vec![1, 0]], 2).is_err());
        assert!(ExchangeMatrix::from_rows(vec![vec![0, 1], vec![0, 0]], 2).is_err());
        // Cycle with inconsistent ratios.
        let bad = vec![vec![0, 1, -1], vec![-2, 0, 1], vec![1, -1, 0]];
        assert!(ExchangeMatrix::from_rows(bad, 3).is_err());
        assert!(ExchangeMatrix::from_rows(vec![vec![0, 1]], 1).is_err());
    }

    #[test]
    fn exchange_polynomial_examples() {
        let s = a2();
        assert_eq!(exchange_polynomial(&s, 0).unwrap(), poly(2, &[(&[0, 1], 1), (&[0, 0], 1)]));
        assert_eq!(exchange_polynomial(&s, 1).unwrap(), poly(2, &[(&[1, 0], 1), (&[0, 0], 1)]));
        let z = Seed::from_matrix(em(vec![vec![0, 0], vec![0, 0]]));
        assert_eq!(exchange_polynomial(&z, 0).unwrap(), poly(2, &[(&[0, 0], 2)]));
    }

    #[test]
    fn first_mutation_of_a2() {
        let s = mutate_seed(&a2(), 0).unwrap();
        assert_eq!(s.variable(0), &poly(2, &[(&[-1, 0], 1), (&[-1, 1], 1)]));
        assert_eq!(s.history(), &[0]);
    }

    #[test]
    fn a2_is_five_periodic() {
        // Oracle: the recurrence x_{k+1} x_{k-1} = 1 + x_k over rational numbers.
        let pt = [r(3), r(7)];
        let mut seq = vec![pt[0].clone(), pt[1].clone()];
        for i in 2..7 {
            let next = (BigRational::one() + &seq[i - 1]) / &seq[i - 2];
            seq.push(next);
        }
        assert_eq!(seq[5], pt[0]);
        assert_eq!(seq[6], pt[1]);
        let s = mutate_along(&a2(), &[0, 1, 0, 1, 0]).unwrap();
        let vals: Vec<BigRational> = s.variables().iter().map(|v| v.evaluate(&pt).unwrap()).collect();
        let mut sorted = vals.clone();
        sorted.sort();
        let mut expect = pt.to_vec();
        expect.sort();
        assert_eq!(sorted, expect);
        assert!(same_cluster(&s, &a2()));
    }

    #[test]
    fn certificate_after_two_steps() {
        let s = mutate_along(&a2(), &[0, 1]).unwrap();
        let rep = laurent_certificate(&s);
        assert!(rep.pass && rep.all_positive);
        // (1 + x1 + x2) / (x1 x2)
        assert_eq!(
            s.variable(1),
            &poly(2, &[(&[-1, -1], 1), (&[0, -1], 1), (&[-1, 0], 1)])
        );
        assert!(laurent_certificate(&a2()).pass);
    }

    #[test]
    fn lower_bound_of_a2() {
        let g = lower_bound_generators(&a2()).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g[2], poly(2, &[(&[-1, 0], 1), (&[-1, 1], 1)]));
        assert_eq!(g[3], poly(2, &[(&[0, -1], 1), (&[1, -1], 1)]));
        let frozen = Seed::from_matrix(ExchangeMatrix::from_rows(vec![], 3).unwrap());
        assert_eq!(lower_bound_generators(&frozen).unwrap().len(), 3);
    }

    #[test]
    fn upper_bound_examples() {
        let s = a2();
        assert!(upper_bound_membership(&LaurentPoly::var(2, 0), &s).unwrap());
        let y1 = poly(2, &[(&[-1, 0], 1), (&[-1, 1], 1)]);
        assert!(upper_bound_membership(&y1, &s).unwrap());
        let inv = poly(2, &[(&[-1, 0], 1)]);
        assert!(!upper_bound_membership(&inv, &s).unwrap());
    }

    #[test]
    fn upper_bound_contains_reachable_variables() {
        for (s, depth) in [(a2(), 6usize), (a3(), 5)] {
            let m = s.m();
            let mut frontier = vec![s.clone()];
            for _ in 0..depth {
                let mut next = Vec::new();
                for t in &frontier {
                    for k in 0..m {
                        if t.history().last() == Some(&k) {
                            continue;
                        }
                        let u = mutate_seed(t, k).unwrap();
                        for v in u.variables() {
                            assert!(upper_bound_membership(v, &s).unwrap());
                        }
                        next.push(u);
                    }
                }
                frontier = next;
            }
        }
    }

    #[test]
    fn json_round_trip_uses_one_based_history() {
        let s = mutate_along(&a3(), &[1, 0]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["history"], serde_json::json!([2, 1]));
        assert_eq!(v["m"], 3);
        let back: Seed = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(back.initial_seed().unwrap().same_state(&a3()));
    }

    /// Skew-symmetrizable `m × n` matrices of the form `D S` plus frozen columns.
    pub(crate) fn arb_seed() -> impl Strategy<Value = Seed> {
        (2usize..=4, 0usize..=2)
            .prop_flat_map(|(m, f)| {
                (
                    Just(m),
                    Just(f),
                    prop::collection::vec(-1i64..=1, m * (m - 1) / 2),
                    prop::collection::vec(1i64..=2, m),
                    prop::collection::vec(-1i64..=1, m * f),
                )
            })
            .prop_map(|(m, f, upper, d, frozen)| {
                let n = m + f;
                let mut s = vec![vec![0i64; m]; m];
                let mut it = upper.into_iter();
                for i in 0..m {
                    for j in i + 1..m {
                        let v = it.next().unwrap();
                        s[i][j] = v;
                        s[j][i] = -v;
                    }
                }
                let rows: Vec<Vec<i64>> = (0..m)
                    .map(|i| {
                        let mut row: Vec<i64> = (0..m).map(|j| s[i][j] * d[i]).collect();
                        row.extend_from_slice(&frozen[i * f..(i + 1) * f]);
                        row
                    })
                    .collect();
                Seed::from_matrix(ExchangeMatrix::from_rows(rows, n).unwrap())
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn seed_mutation_is_involutive(s in arb_seed(), word in prop::collection::vec(0usize..4, 0..4), k in 0usize..4) {
            let word: Vec<usize> = word.into_iter().filter(|&i| i < s.m()).collect();
            let s = mutate_along(&s, &word).unwrap();
            let k = k % s.m();
            let back = mutate_seed(&mutate_seed(&s, k).unwrap(), k).unwrap();
            prop_assert!(back.same_state(&s));
        }

        #[test]
        fn exchange_identity_and_frozen_stability(s in arb_seed(), word in prop::collection::vec(0usize..4, 1..7)) {
            let word: Vec<usize> = word.into_iter().filter(|&i| i < s.m()).collect();
            let mut cur = s.clone();
            for &k in &word {
                let next = mutate_seed(&cur, k).unwrap();
                let p = exchange_polynomial(&cur, k).unwrap();
                prop_assert_eq!(cur.variable(k) * next.variable(k), p);
                for j in s.m()..s.n() {
                    prop_assert_eq!(next.variable(j), s.variable(j));
                }
                cur = next;
            }
            prop_assert!(laurent_certificate(&cur).pass);
        }

        #[test]
        fn matrix_mutation_keeps_symmetrizer(s in arb_seed(), k in 0usize..4) {
            let k = k % s.m();
            let b = mutate_matrix(s.matrix(), k).unwrap();
            let d = s.matrix().symmetrizer();
            for i in 0..s.m() {
                for j in 0..s.m() {
                    prop_assert_eq!(b.get(i, j) * d[j], -b.get(j, i) * d[i]);
                }
            }
        }
    }
}
