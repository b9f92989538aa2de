//! Quantum torus elements: skew Laurent polynomials over `Z[q^{±1/2}]`.
//!
//! Monomials are *based*: `X^c X^d = q^{(c^T Λ d)/2} X^{c+d}`. In particular
//! `X^{e_i} X^{e_j} = q^{λ_ij} X^{e_j} X^{e_i}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::{add_exp, sub_exp, Exponent, LaurentPoly};
use super::matrix::IntMatrix;
use super::qscalar::QScalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct QTorusElement {
    lambda: Arc<IntMatrix>,
    terms: BTreeMap<Exponent, QScalar>,
}

impl PartialEq for QTorusElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.lambda, &other.lambda) || self.lambda == other.lambda)
            && self.terms == other.terms
    }
}

impl Eq for QTorusElement {}

impl QTorusElement {
    /// Zero element of the quantum torus with commutation matrix `lambda`.
    pub fn zero(lambda: Arc<IntMatrix>) -> Result<Self> {
        if !lambda.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric(format!("Λ = {lambda}")));
        }
        Ok(Self {
            lambda,
            terms: BTreeMap::new(),
        })
    }

    pub fn one(lambda: Arc<IntMatrix>) -> Result<Self> {
        let n = lambda.rows();
        Self::monomial(lambda, vec![0; n], QScalar::one())
    }

    /// `coef * X^exp` (a based monomial).
    pub fn monomial(lambda: Arc<IntMatrix>, exp: Exponent, coef: QScalar) -> Result<Self> {
        let mut out = Self::zero(lambda)?;
        if exp.len() != out.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "exponent of length {} in a rank-{} torus",
                exp.len(),
                out.nvars()
            )));
        }
        out.add_term(exp, coef);
        Ok(out)
    }

    pub fn from_terms(
        lambda: Arc<IntMatrix>,
        terms: impl IntoIterator<Item = (Exponent, QScalar)>,
    ) -> Result<Self> {
        let mut out = Self::zero(lambda)?;
        for (e, c) in terms {
            if e.len() != out.nvars() {
                return Err(Error::DimensionMismatch(format!(
                    "exponent of length {} in a rank-{} torus",
                    e.len(),
                    out.nvars()
                )));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.lambda.rows()
    }

    pub fn lambda(&self) -> &Arc<IntMatrix> {
        &self.lambda
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &QScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[i64]) -> QScalar {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: Exponent, coef: QScalar) {
        if coef.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coef;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self {
            lambda: self.lambda.clone(),
            terms: BTreeMap::new(),
        };
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Specialization `q^{1/2} -> 1`, a commutative Laurent polynomial.
    pub fn specialize(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), num_rational::BigRational::from_integer(c.specialize().into()));
        }
        out
    }

    /// Applies the bar involution to every coefficient.
    pub fn bar_coefficients(&self) -> Self {
        Self {
            lambda: self.lambda.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.bar())).collect(),
        }
    }

    pub fn has_bar_invariant_coefficients(&self) -> bool {
        self.terms.values().all(QScalar::is_bar_invariant)
    }

    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(QScalar::has_positive_coefficients)
    }

    pub fn exponent_bounds(&self) -> Option<Vec<(i64, i64)>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut b: Vec<(i64, i64)> = first.iter().map(|&x| (x, x)).collect();
        for e in it {
            for (bi, &x) in b.iter_mut().zip(e) {
                bi.0 = bi.0.min(x);
                bi.1 = bi.1.max(x);
            }
        }
        Some(b)
    }

    /// Same terms over a different (same-size) commutation matrix.
    pub fn with_lambda(&self, lambda: Arc<IntMatrix>) -> Result<Self> {
        let mut out = Self::zero(lambda)?;
        if out.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch("torus ranks differ".into()));
        }
        out.terms = self.terms.clone();
        Ok(out)
    }

    /// Keeps only the terms satisfying `pred`.
    pub fn filter_terms(&self, mut pred: impl FnMut(&[i64]) -> bool) -> Self {
        Self {
            lambda: self.lambda.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| pred(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayWith { elem: self, names }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.lambda, &other.lambda) || self.lambda == other.lambda {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(
                "quantum torus elements over different Λ".into(),
            ))
        }
    }

    /// Raw product of two monomials: `X^c X^d = q^{(c^T Λ d)/2} X^{c+d}`.
    fn monomial_shift(&self, c: &[i64], d: &[i64]) -> i64 {
        self.lambda.bilinear(c, d)
    }
}

/// Product in the quantum torus.
pub fn q_multiply(a: &QTorusElement, b: &QTorusElement) -> Result<QTorusElement> {
    a.check_same(b)?;
    let mut out = QTorusElement {
        lambda: a.lambda.clone(),
        terms: BTreeMap::new(),
    };
    for (c, ca) in &a.terms {
        for (d, cb) in &b.terms {
            let shift = a.monomial_shift(c, d);
            out.add_term(add_exp(c, d), (ca * cb).shift(shift));
        }
    }
    Ok(out)
}

/// Left quotient: `h` with `f = g * h`, or `NotDivisible`.
///
/// Same leading-term elimination as the commutative case; the leading term of
/// `g * h` is the product of leading terms up to a power of `q^{1/2}`, so the
/// quotient coefficient is an exact scalar division.
pub fn exact_divide_q(f: &QTorusElement, g: &QTorusElement) -> Result<QTorusElement> {
    f.check_same(g)?;
    if g.is_zero() {
        return Err(Error::InvalidArgument("division by zero".into()));
    }
    let mut quot = QTorusElement {
        lambda: f.lambda.clone(),
        terms: BTreeMap::new(),
    };
    let Some(fb) = f.exponent_bounds() else {
        return Ok(quot);
    };
    let gb = g.exponent_bounds().expect("g is nonzero");
    let bounds: Vec<(i64, i64)> = fb
        .iter()
        .zip(&gb)
        .map(|(a, b)| (a.0 - b.0, a.1 - b.1))
        .collect();
    if bounds.iter().any(|(lo, hi)| lo > hi) {
        return Err(Error::NotDivisible);
    }
    let (g_lead, g_coef) = g
        .terms
        .iter()
        .next_back()
        .map(|(e, c)| (e.clone(), c.clone()))
        .unwrap();
    let mut rem = f.clone();
    while let Some((r_lead, r_coef)) = rem.terms.iter().next_back() {
        let e = sub_exp(r_lead, &g_lead);
        if e.iter().zip(&bounds).any(|(x, (lo, hi))| x < lo || x > hi) {
            return Err(Error::NotDivisible);
        }
        let shift = g.monomial_shift(&g_lead, &e);
        let c = r_coef.shift(-shift).exact_div(&g_coef)?;
        for (ge, gc) in &g.terms {
            let s = g.monomial_shift(ge, &e);
            rem.add_term(add_exp(ge, &e), -&(gc * &c).shift(s));
        }
        quot.add_term(e, c);
    }
    Ok(quot)
}

struct DisplayWith<'a> {
    elem: &'a QTorusElement,
    names: &'a [String],
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.elem.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(j, &k)| {
                    let name = self
                        .names
                        .get(j)
                        .cloned()
                        .unwrap_or_else(|| format!("X{}", j + 1));
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            let mono = if mono.is_empty() {
                "1".to_string()
            } else {
                format!("M[{}]", mono.join("*"))
            };
            if *c == QScalar::one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for QTorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    exp: Vec<i64>,
    coef: QScalar,
}

#[derive(Serialize, Deserialize)]
struct WireElement {
    lambda: IntMatrix,
    terms: Vec<WireTerm>,
}

impl Serialize for QTorusElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WireElement {
            lambda: (*self.lambda).clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| WireTerm {
                    exp: e.clone(),
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QTorusElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = WireElement::deserialize(deserializer)?;
        QTorusElement::from_terms(
            Arc::new(w.lambda),
            w.terms.into_iter().map(|t| (t.exp, t.coef)),
        )
        .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn plane() -> Arc<IntMatrix> {
        Arc::new(IntMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]).unwrap())
    }

    fn mono(l: &Arc<IntMatrix>, e: &[i64]) -> QTorusElement {
        QTorusElement::monomial(l.clone(), e.to_vec(), QScalar::one()).unwrap()
    }

    #[test]
    fn based_monomial_product() {
        let l = plane();
        let p = q_multiply(&mono(&l, &[1, 0]), &mono(&l, &[0, 1])).unwrap();
        let expect =
            QTorusElement::monomial(l.clone(), vec![1, 1], QScalar::q_half_power(-1)).unwrap();
        assert_eq!(p, expect);
        let sq = q_multiply(&mono(&l, &[1, 0]), &mono(&l, &[1, 0])).unwrap();
        assert_eq!(sq, mono(&l, &[2, 0]));
    }

    #[test]
    fn commutation_relation() {
        // X1 X2 = q^{λ12} X2 X1
        let l = plane();
        let a = q_multiply(&mono(&l, &[1, 0]), &mono(&l, &[0, 1])).unwrap();
        let b = q_multiply(&mono(&l, &[0, 1]), &mono(&l, &[1, 0])).unwrap();
        assert_eq!(a, b.scale(&QScalar::q_half_power(2 * l.get(0, 1))));
    }

    #[test]
    fn identity_is_neutral() {
        let l = plane();
        let f = mono(&l, &[1, -2])
            .add(&mono(&l, &[0, 3]).scale(&QScalar::from_pairs([(1, 2)])))
            .unwrap();
        let one = QTorusElement::one(l).unwrap();
        assert_eq!(q_multiply(&one, &f).unwrap(), f);
        assert_eq!(q_multiply(&f, &one).unwrap(), f);
    }

    #[test]
    fn left_division() {
        let l = plane();
        let f = mono(&l, &[1, 1]);
        let g = mono(&l, &[1, 0]);
        let h = exact_divide_q(&f, &g).unwrap();
        assert_eq!(q_multiply(&g, &h).unwrap(), f);
        assert_eq!(h.terms().count(), 1);
        assert_eq!(exact_divide_q(&f, &f).unwrap(), QTorusElement::one(l.clone()).unwrap());
        let one = QTorusElement::one(l.clone()).unwrap();
        let a = mono(&l, &[1, 0]).add(&one).unwrap();
        let b = mono(&l, &[0, 1]).add(&one).unwrap();
        assert_eq!(exact_divide_q(&a, &b), Err(Error::NotDivisible));
    }

    #[test]
    fn rejects_non_skew_lambda() {
        let l = Arc::new(IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap());
        assert!(QTorusElement::zero(l).is_err());
    }

    #[test]
    fn mismatched_lambda() {
        let a = mono(&plane(), &[1, 0]);
        let b = mono(&Arc::new(IntMatrix::zeros(2, 2)), &[1, 0]);
        assert!(q_multiply(&a, &b).is_err());
    }

    fn arb_elem(l: Arc<IntMatrix>) -> impl Strategy<Value = QTorusElement> {
        prop::collection::vec(
            (
                prop::collection::vec(-2i64..=2, 3),
                prop::collection::vec((-3i64..=3, -2i64..=2), 1..3),
            ),
            1..4,
        )
        .prop_map(move |ts| {
            QTorusElement::from_terms(
                l.clone(),
                ts.into_iter().map(|(e, c)| (e, QScalar::from_pairs(c))),
            )
            .unwrap()
        })
    }

    fn rank3() -> Arc<IntMatrix> {
        Arc::new(IntMatrix::from_rows(vec![vec![0, 1, -2], vec![-1, 0, 3], vec![2, -3, 0]]).unwrap())
    }

    proptest! {
        #[test]
        fn associative(a in arb_elem(rank3()), b in arb_elem(rank3()), c in arb_elem(rank3())) {
            let l = q_multiply(&q_multiply(&a, &b).unwrap(), &c).unwrap();
            let r = q_multiply(&a, &q_multiply(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn specialization_is_a_homomorphism(a in arb_elem(rank3()), b in arb_elem(rank3())) {
            let prod = q_multiply(&a, &b).unwrap().specialize();
            prop_assert_eq!(prod, &a.specialize() * &b.specialize());
        }

        #[test]
        fn left_division_round_trip(g in arb_elem(rank3()), h in arb_elem(rank3())) {
            prop_assume!(!g.is_zero() && !h.is_zero());
            let f = q_multiply(&g, &h).unwrap();
            prop_assert_eq!(exact_divide_q(&f, &g).unwrap(), h);
        }
    }
}
