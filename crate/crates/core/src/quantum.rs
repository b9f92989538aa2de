//! Quantum seeds over `Z[q^{±1/2}]`: toric frames, the two-term quantum
//! exchange variable, the `M_k` frame mutation with q-binomials, and
//! certificates comparing against the classical pipeline.
//!
//! All variables live in the initial quantum torus (commutation matrix `Λ` of
//! the initial frame). The current `Λ_M` is tracked alongside.

use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cluster::{default_labels, mutate_along, mutate_matrix, ExchangeMatrix, Seed, SeedWire};
use crate::error::{check_index, Error, Result};
use crate::kernel::{exact_divide_q, q_binomial, q_multiply, IntMatrix, LaurentPoly, QScalar, QTorusElement};
use crate::poisson::{e_matrix, mutate_lambda, CompatiblePair};

/// `c ↦ M(c)`, realized as based monomials `X^{η c}` when `based` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricFrame {
    torus: Arc<IntMatrix>,
    lambda_m: IntMatrix,
    eta: IntMatrix,
    based: bool,
}

impl ToricFrame {
    /// The initial frame `M(c) = X^c` of the torus with commutation matrix `lambda`.
    pub fn initial(lambda: Arc<IntMatrix>) -> Result<Self> {
        if !lambda.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric(format!("Λ = {lambda}")));
        }
        let n = lambda.rows();
        Ok(Self {
            lambda_m: (*lambda).clone(),
            eta: IntMatrix::identity(n),
            torus: lambda,
            based: true,
        })
    }

    /// A torus-type frame `M(c) = X^{η c}`; `Λ_M = η^T Λ η`.
    pub fn with_eta(lambda: Arc<IntMatrix>, eta: IntMatrix) -> Result<Self> {
        let n = lambda.rows();
        if eta.rows() != n || eta.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "η must be {n}×{n}, got {}×{}",
                eta.rows(),
                eta.cols()
            )));
        }
        let rows: Vec<Vec<num_rational::BigRational>> = eta
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| num_rational::BigRational::from_integer(x.into())).collect())
            .collect();
        let det = crate::kernel::matrix::rational_determinant(&rows);
        if num_traits::Signed::abs(&det) != num_rational::BigRational::from_integer(1.into()) {
            return Err(Error::InvalidArgument("η is not unimodular".into()));
        }
        let lambda_m = eta.transpose().mul(&lambda)?.mul(&eta)?;
        let mut fr = Self::initial(lambda)?;
        fr.lambda_m = lambda_m;
        fr.eta = eta;
        Ok(fr)
    }

    pub fn lambda_m(&self) -> &IntMatrix {
        &self.lambda_m
    }

    pub fn torus_lambda(&self) -> &Arc<IntMatrix> {
        &self.torus
    }

    pub fn eta(&self) -> &IntMatrix {
        &self.eta
    }

    /// Whether frame values are based monomials of the initial torus.
    pub fn is_based(&self) -> bool {
        self.based
    }

    pub fn n(&self) -> usize {
        self.lambda_m.rows()
    }
}

/// The based monomial `M(c) = X^{η c}`.
pub fn frame_monomial(fr: &ToricFrame, c: &[i64]) -> Result<QTorusElement> {
    if !fr.based {
        return Err(Error::NotTorusFrame);
    }
    let exp = fr.eta.mul_vec(c)?;
    QTorusElement::monomial(fr.torus.clone(), exp, QScalar::one())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumSeed {
    b: ExchangeMatrix,
    frame: ToricFrame,
    variables: Vec<QTorusElement>,
    diag: Vec<i64>,
    labels: Vec<String>,
    history: Vec<usize>,
}

impl QuantumSeed {
    /// Initial quantum seed of a compatible pair: `X_i = M(e_i)`.
    pub fn initial(pair: &CompatiblePair) -> Result<Self> {
        let labels = default_labels(pair.n());
        Self::initial_with_labels(pair, labels)
    }

    pub fn initial_with_labels(pair: &CompatiblePair, labels: Vec<String>) -> Result<Self> {
        let n = pair.n();
        if labels.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} variables",
                labels.len(),
                n
            )));
        }
        let frame = ToricFrame::initial(Arc::new(pair.lambda().clone()))?;
        let variables = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                frame_monomial(&frame, &e)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            b: pair.b().clone(),
            frame,
            variables,
            diag: pair.diag().to_vec(),
            labels,
            history: Vec::new(),
        })
    }

    pub fn b(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn frame(&self) -> &ToricFrame {
        &self.frame
    }

    /// Current `Λ_M`.
    pub fn lambda(&self) -> &IntMatrix {
        &self.frame.lambda_m
    }

    pub fn variables(&self) -> &[QTorusElement] {
        &self.variables
    }

    pub fn variable(&self, i: usize) -> &QTorusElement {
        &self.variables[i]
    }

    pub fn diag(&self) -> &[i64] {
        &self.diag
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    pub fn m(&self) -> usize {
        self.b.m()
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    /// The current pair `(B, Λ_M)`.
    pub fn pair(&self) -> Result<CompatiblePair> {
        CompatiblePair::new(self.b.clone(), self.frame.lambda_m.clone())
    }

    /// Classical seed with the specialized variables.
    pub fn shadow(&self) -> Result<Seed> {
        Seed::from_parts(
            self.b.clone(),
            self.labels.clone(),
            self.variables.iter().map(QTorusElement::specialize).collect(),
            self.history.clone(),
        )
    }

    /// Exchange matrix of the seed this one was mutated from.
    pub fn initial_b(&self) -> Result<ExchangeMatrix> {
        self.history
            .iter()
            .rev()
            .try_fold(self.b.clone(), |b, &k| mutate_matrix(&b, k))
    }

    /// Equality of matrix, `Λ_M`, labels and variables, ignoring history.
    pub fn same_state(&self, other: &QuantumSeed) -> bool {
        self.b == other.b
            && self.frame.lambda_m == other.frame.lambda_m
            && self.labels == other.labels
            && self.variables == other.variables
    }
}

/// `M(a)` for `a ≥ 0` in the current cluster: the ordered product of powers
/// of the current variables, rescaled to the based normalization.
fn cluster_monomial(qs: &QuantumSeed, a: &[i64]) -> Result<QTorusElement> {
    let lambda = &qs.frame.lambda_m;
    let mut acc = QTorusElement::one(qs.frame.torus.clone())?;
    for (i, &ai) in a.iter().enumerate() {
        debug_assert!(ai >= 0);
        for _ in 0..ai {
            acc = q_multiply(&acc, &qs.variables[i])?;
        }
    }
    let mut half = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            half -= a[i] * a[j] * lambda.get(i, j);
        }
    }
    Ok(acc.scale(&QScalar::q_half_power(half)))
}

/// Exponent vectors `a_+ = Σ_{b_ki>0} b_ki e_i` and `a_- = -Σ_{b_ki<0} b_ki e_i`.
fn exchange_exponents(b: &ExchangeMatrix, k: usize) -> (Vec<i64>, Vec<i64>) {
    let row = b.matrix().row(k);
    let pos = row.iter().map(|&x| x.max(0)).collect();
    let neg = row.iter().map(|&x| (-x).max(0)).collect();
    (pos, neg)
}

/// `X_k' = M(-e_k + a_+) + M(-e_k + a_-)` in the initial quantum torus.
///
/// Computed as `X_k^{-1} S` with `S = Σ q^{(λ_k · a)/2} M(a)`, which only uses
/// the frame relation `M(c) M(d) = q^{(c^T Λ_M d)/2} M(c + d)` and is valid
/// for frames that are no longer torus-type.
pub fn quantum_exchange_variable(qs: &QuantumSeed, k: usize) -> Result<QTorusElement> {
    check_index(k, qs.m())?;
    let (pos, neg) = exchange_exponents(&qs.b, k);
    let lambda = &qs.frame.lambda_m;
    let mut s = QTorusElement::zero(qs.frame.torus.clone())?;
    for a in [pos, neg] {
        let half: i64 = (0..a.len()).map(|j| lambda.get(k, j) * a[j]).sum();
        let term = cluster_monomial(qs, &a)?.scale(&QScalar::q_half_power(half));
        s = s.add(&term)?;
    }
    exact_divide_q(&s, &qs.variables[k])
}

/// `M_k(c) = Σ_p binom(c_k, p)_{q^{d_k/2}} M(E_ε c + ε p b^k)` for `c_k ≥ 0`,
/// from a torus-type frame.
pub fn frame_mutation_value(
    qs: &QuantumSeed,
    k: usize,
    c: &[i64],
    eps: i64,
) -> Result<QTorusElement> {
    check_index(k, qs.m())?;
    if !qs.frame.based {
        return Err(Error::NotTorusFrame);
    }
    if c.len() != qs.n() {
        return Err(Error::DimensionMismatch(format!(
            "lattice point of length {} for n = {}",
            c.len(),
            qs.n()
        )));
    }
    if c[k] < 0 {
        return Err(Error::InvalidArgument(format!(
            "c_k = {} < 0 lies outside the computable fragment",
            c[k]
        )));
    }
    let e = e_matrix(&qs.b, k, eps)?;
    let base = e.mul_vec(c)?;
    let bk = qs.b.matrix().row(k);
    let d = u32::try_from(qs.diag[k]).map_err(|_| Error::InvalidArgument("bad d_k".into()))?;
    let ck = c[k] as u32;
    let mut out = QTorusElement::zero(qs.frame.torus.clone())?;
    for p in 0..=ck {
        let exp: Vec<i64> = base
            .iter()
            .zip(bk)
            .map(|(x, b)| x + eps * i64::from(p) * b)
            .collect();
        let term = frame_monomial(&qs.frame, &exp)?.scale(&q_binomial(ck, p, d)?);
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Mutation at `k`: `B ↦ μ_k B`, `Λ_M ↦ E^T Λ_M E`, `X_k ↦ X_k'`.
pub fn mutate_quantum_seed(qs: &QuantumSeed, k: usize) -> Result<QuantumSeed> {
    let new_var = quantum_exchange_variable(qs, k)?;
    let b = mutate_matrix(&qs.b, k)?;
    let lambda = mutate_lambda(&qs.b, &qs.frame.lambda_m, k, 1)?;
    let pair = CompatiblePair::new(b, lambda)?;
    if pair.diag() != qs.diag.as_slice() {
        return Err(Error::NotCompatible(format!(
            "diagonal changed from {:?} to {:?}",
            qs.diag,
            pair.diag()
        )));
    }
    let mut variables = qs.variables.clone();
    variables[k] = new_var;
    let mut history = qs.history.clone();
    history.push(k);
    let frame = ToricFrame {
        torus: qs.frame.torus.clone(),
        lambda_m: pair.lambda().clone(),
        eta: qs.frame.eta.clone(),
        based: false,
    };
    Ok(QuantumSeed {
        b: pair.b().clone(),
        frame,
        variables,
        diag: qs.diag.clone(),
        labels: qs.labels.clone(),
        history,
    })
}

pub fn mutate_quantum_along(qs: &QuantumSeed, word: &[usize]) -> Result<QuantumSeed> {
    word.iter()
        .try_fold(qs.clone(), |acc, &k| mutate_quantum_seed(&acc, k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumVariableReport {
    pub index: usize,
    pub laurent: bool,
    pub bar_symmetric: bool,
    pub positive: bool,
    pub specialization_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumLaurentReport {
    pub pass: bool,
    pub all_bar_symmetric: bool,
    pub all_positive: bool,
    pub variables: Vec<QuantumVariableReport>,
}

/// Checks each variable against the classical mutation of the shadow seed and
/// records bar symmetry and positivity of its coefficients.
pub fn quantum_laurent_certificate(qs: &QuantumSeed) -> Result<QuantumLaurentReport> {
    let start = Seed::from_matrix(qs.initial_b()?);
    let classical = mutate_along(&start, &qs.history)?;
    let variables: Vec<QuantumVariableReport> = qs
        .variables
        .iter()
        .enumerate()
        .map(|(i, v)| QuantumVariableReport {
            index: i + 1,
            laurent: !v.is_zero(),
            bar_symmetric: v.has_bar_invariant_coefficients(),
            positive: v.has_positive_coefficients(),
            specialization_matches: v.specialize() == *classical.variable(i),
        })
        .collect();
    Ok(QuantumLaurentReport {
        pass: variables.iter().all(|r| r.laurent && r.specialization_matches),
        all_bar_symmetric: variables.iter().all(|r| r.bar_symmetric),
        all_positive: variables.iter().all(|r| r.positive),
        variables,
    })
}

#[derive(Serialize, Deserialize)]
struct QuantumSeedWire {
    #[serde(flatten)]
    seed: SeedWire,
    lambda: IntMatrix,
    diag: Vec<i64>,
    qvariables: Vec<QTorusElement>,
}

impl Serialize for QuantumSeed {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let shadow = self.shadow().map_err(serde::ser::Error::custom)?;
        QuantumSeedWire {
            seed: SeedWire::from_seed(&shadow),
            lambda: self.frame.lambda_m.clone(),
            diag: self.diag.clone(),
            qvariables: self.variables.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuantumSeed {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = QuantumSeedWire::deserialize(deserializer)?;
        from_wire(w).map_err(serde::de::Error::custom)
    }
}

fn from_wire(w: QuantumSeedWire) -> Result<QuantumSeed> {
    let shadow = w.seed.into_seed()?;
    let n = shadow.n();
    if w.qvariables.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} quantum variables for n = {}",
            w.qvariables.len(),
            n
        )));
    }
    let lambda = IntMatrix::from_rows_with_cols(w.lambda.to_rows(), n)?;
    let pair = CompatiblePair::new(shadow.matrix().clone(), lambda)?;
    if pair.diag() != w.diag.as_slice() {
        return Err(Error::NotCompatible(format!(
            "stored diag {:?} disagrees with B·Λ diagonal {:?}",
            w.diag,
            pair.diag()
        )));
    }
    let torus = match w.qvariables.first() {
        Some(v) => v.lambda().clone(),
        None => Arc::new(IntMatrix::zeros(0, 0)),
    };
    let mut variables = Vec::with_capacity(n);
    for (v, classical) in w.qvariables.iter().zip(shadow.variables()) {
        let v = v.with_lambda(torus.clone())?;
        if v.lambda() != &torus || v.nvars() != n {
            return Err(Error::DimensionMismatch("quantum variables over different tori".into()));
        }
        if &v.specialize() != classical {
            return Err(Error::InvalidArgument(
                "classical variables are not the specializations of qvariables".into(),
            ));
        }
        variables.push(v);
    }
    let based = shadow.history().is_empty();
    if based && *torus != *pair.lambda() {
        return Err(Error::InvalidArgument(
            "initial seed Λ differs from the torus of its variables".into(),
        ));
    }
    Ok(QuantumSeed {
        b: pair.b().clone(),
        frame: ToricFrame {
            torus,
            lambda_m: pair.lambda().clone(),
            eta: IntMatrix::identity(n),
            based,
        },
        variables,
        diag: pair.diag().to_vec(),
        labels: shadow.labels().to_vec(),
        history: shadow.history().to_vec(),
    })
}

/// Specializations `q^{1/2} ↦ 1` of all variables.
pub fn specialize_all(qs: &QuantumSeed) -> Vec<LaurentPoly> {
    qs.variables.iter().map(QTorusElement::specialize).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::mutate_seed;

    fn im(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn a2_pair() -> CompatiblePair {
        CompatiblePair::new(
            ExchangeMatrix::from_rows(vec![vec![0, 1], vec![-1, 0]], 2).unwrap(),
            im(vec![vec![0, -1], vec![1, 0]]),
        )
        .unwrap()
    }

    /// Non-skew-symmetric `B`: `B Λ = diag(2, 1)`.
    fn b2_pair() -> CompatiblePair {
        CompatiblePair::new(
            ExchangeMatrix::from_rows(vec![vec![0, 2], vec![-1, 0]], 2).unwrap(),
            im(vec![vec![0, -1], vec![1, 0]]),
        )
        .unwrap()
    }

    fn m(qs: &QuantumSeed, c: &[i64]) -> QTorusElement {
        frame_monomial(qs.frame(), c).unwrap()
    }

    #[test]
    fn frame_monomial_examples() {
        let qs = QuantumSeed::initial(&a2_pair()).unwrap();
        assert_eq!(m(&qs, &[1, 0]), *qs.variable(0));
        let prod = q_multiply(&m(&qs, &[1, 0]), &m(&qs, &[0, 1])).unwrap();
        assert_eq!(prod, m(&qs, &[1, 1]).scale(&QScalar::q_half_power(-1)));
        assert_eq!(m(&qs, &[0, 0]), QTorusElement::one(qs.frame().torus_lambda().clone()).unwrap());
        let moved = mutate_quantum_seed(&qs, 0).unwrap();
        assert_eq!(frame_monomial(moved.frame(), &[1, 0]), Err(Error::NotTorusFrame));
    }

    #[test]
    fn frame_relation_on_a_box() {
        let fr = ToricFrame::initial(Arc::new(im(vec![vec![0, 2, -1], vec![-2, 0, 3], vec![1, -3, 0]]))).unwrap();
        let pts: Vec<Vec<i64>> = (-1..=1)
            .flat_map(|a| (-1..=1).flat_map(move |b| (-1..=1).map(move |c| vec![a, b, c])))
            .collect();
        for c in &pts {
            for d in pts.iter().step_by(4) {
                let lhs = q_multiply(&frame_monomial(&fr, c).unwrap(), &frame_monomial(&fr, d).unwrap()).unwrap();
                let sum: Vec<i64> = c.iter().zip(d).map(|(x, y)| x + y).collect();
                let rhs = frame_monomial(&fr, &sum)
                    .unwrap()
                    .scale(&QScalar::q_half_power(fr.lambda_m().bilinear(c, d)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn eta_frames_pull_back_lambda() {
        let l = Arc::new(im(vec![vec![0, -1], vec![1, 0]]));
        let fr = ToricFrame::with_eta(l, im(vec![vec![1, 1], vec![0, 1]])).unwrap();
        assert_eq!(fr.lambda_m(), &im(vec![vec![0, -1], vec![1, 0]]));
        let bad = ToricFrame::with_eta(Arc::new(im(vec![vec![0, -1], vec![1, 0]])), im(vec![vec![2, 0], vec![0, 1]]));
        assert!(bad.is_err());
    }

    #[test]
    fn exchange_variable_examples() {
        let qs = QuantumSeed::initial(&a2_pair()).unwrap();
        let x1 = quantum_exchange_variable(&qs, 0).unwrap();
        assert_eq!(x1, m(&qs, &[-1, 0]).add(&m(&qs, &[-1, 1])).unwrap());
        let x2 = quantum_exchange_variable(&qs, 1).unwrap();
        assert_eq!(x2, m(&qs, &[1, -1]).add(&m(&qs, &[0, -1])).unwrap());
    }

    #[test]
    fn exchange_through_a_frozen_variable() {
        // B Λ = (1, 0, 0): only the frozen x3 enters the exchange.
        let pair = CompatiblePair::new(
            ExchangeMatrix::from_rows(vec![vec![0, 0, 1]], 3).unwrap(),
            im(vec![vec![0, 0, -1], vec![0, 0, 0], vec![1, 0, 0]]),
        )
        .unwrap();
        let qs = QuantumSeed::initial(&pair).unwrap();
        let x = quantum_exchange_variable(&qs, 0).unwrap();
        let expect = m(&qs, &[-1, 0, 1]).add(&m(&qs, &[-1, 0, 0])).unwrap();
        assert_eq!(x, expect);
    }

    #[test]
    fn frame_mutation_matches_exchange_variable() {
        for pair in [a2_pair(), b2_pair()] {
            let qs = QuantumSeed::initial(&pair).unwrap();
            for k in 0..qs.m() {
                let mut ek = vec![0; qs.n()];
                ek[k] = 1;
                for eps in [1, -1] {
                    assert_eq!(
                        frame_mutation_value(&qs, k, &ek, eps).unwrap(),
                        quantum_exchange_variable(&qs, k).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn frame_mutation_sign_independent_and_multiplicative() {
        let qs = QuantumSeed::initial(&a2_pair()).unwrap();
        for c in [vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]] {
            for k in 0..2 {
                if c[k] < 0 {
                    continue;
                }
                assert_eq!(
                    frame_mutation_value(&qs, k, &c, 1).unwrap(),
                    frame_mutation_value(&qs, k, &c, -1).unwrap()
                );
            }
        }
        // c_k = 0 gives the single monomial M(E c).
        let e = e_matrix(qs.b(), 0, 1).unwrap();
        assert_eq!(
            frame_mutation_value(&qs, 0, &[0, 1], 1).unwrap(),
            m(&qs, &e.mul_vec(&[0, 1]).unwrap())
        );
        // M_k(2 e_k) = X_k' X_k' checks the q-binomial base.
        for pair in [a2_pair(), b2_pair()] {
            let qs = QuantumSeed::initial(&pair).unwrap();
            for k in 0..2 {
                let mut c = vec![0; 2];
                c[k] = 2;
                let xk = quantum_exchange_variable(&qs, k).unwrap();
                assert_eq!(
                    frame_mutation_value(&qs, k, &c, 1).unwrap(),
                    q_multiply(&xk, &xk).unwrap()
                );
            }
        }
        assert!(frame_mutation_value(&qs, 0, &[-1, 0], 1).is_err());
    }

    #[test]
    fn mutation_examples() {
        let p = a2_pair();
        let qs = QuantumSeed::initial(&p).unwrap();
        let q1 = mutate_quantum_seed(&qs, 0).unwrap();
        assert_eq!(q1.lambda(), &im(vec![vec![0, 1], vec![-1, 0]]));
        for eps in [1, -1] {
            assert_eq!(q1.lambda(), crate::poisson::mutate_pair(&p, 0, eps).unwrap().lambda());
        }
        let back = mutate_quantum_seed(&q1, 0).unwrap();
        assert!(back.same_state(&qs));
        let pc = CompatiblePair::new(
            ExchangeMatrix::from_rows(vec![vec![0, 1, 1, 0], vec![-1, 0, 0, 1]], 4).unwrap(),
            im(vec![vec![0, 0, -1, 0], vec![0, 0, 0, -1], vec![1, 0, 0, 1], vec![0, 1, -1, 0]]),
        )
        .unwrap();
        let qs = QuantumSeed::initial(&pc).unwrap();
        let t = mutate_quantum_along(&qs, &[0, 1, 0]).unwrap();
        assert_eq!(&t.variables()[2..], &qs.variables()[2..]);
    }

    #[test]
    fn specializations_follow_the_classical_pipeline() {
        for pair in [a2_pair(), b2_pair()] {
            let qs = QuantumSeed::initial(&pair).unwrap();
            let mut cur = qs.clone();
            let mut classical = Seed::from_matrix(pair.b().clone());
            for k in [0, 1, 0, 1, 0, 1] {
                cur = mutate_quantum_seed(&cur, k).unwrap();
                classical = mutate_seed(&classical, k).unwrap();
                assert_eq!(specialize_all(&cur), classical.variables());
                let rep = quantum_laurent_certificate(&cur).unwrap();
                assert!(rep.pass && rep.all_bar_symmetric && rep.all_positive, "{rep:?}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let qs = QuantumSeed::initial(&a2_pair()).unwrap();
        for s in [qs.clone(), mutate_quantum_along(&qs, &[0, 1]).unwrap()] {
            let text = serde_json::to_string(&s).unwrap();
            let v: serde_json::Value = serde_json::from_str(&text).unwrap();
            for key in ["m", "n", "B", "labels", "variables", "history", "lambda", "diag", "qvariables"] {
                assert!(v.get(key).is_some(), "missing {key}");
            }
            let back: QuantumSeed = serde_json::from_str(&text).unwrap();
            assert_eq!(back, s);
        }
    }
}
