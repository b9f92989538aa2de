//! Multivariate Laurent polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer exponent vector of a Laurent monomial.
pub type Exponent = Vec<i64>;

/// A Laurent polynomial in `nvars` commuting variables. Zero coefficients are
/// never stored; every key has length `nvars`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The coordinate `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn monomial(exp: Exponent, coef: BigRational) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        Self { nvars, terms }
    }

    /// Builds from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponent, BigRational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent of length {} in {} variables",
                    e.len(),
                    nvars
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[i64]) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    /// True for a single term (a unit of the Laurent ring, if nonzero).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Largest term under the lexicographic order on exponents.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, exp: Exponent, coef: BigRational) {
        if coef.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (add_exp(e, shift), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Per-variable (min, max) exponents; `None` for the zero polynomial.
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

    /// True when all exponents are nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// True when every coefficient is a positive integer.
    pub fn has_positive_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && c.is_positive())
    }

    /// Substitutes `x_i -> values[i]` (all Laurent polynomials in a common ring).
    /// Negative powers require the substituted value to be a monomial.
    pub fn substitute(&self, values: &[LaurentPoly]) -> Result<LaurentPoly> {
        if values.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} variables",
                values.len(),
                self.nvars
            )));
        }
        let target = values.first().map_or(0, |v| v.nvars);
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = LaurentPoly::constant(target, c.clone());
            for (v, &k) in values.iter().zip(e) {
                if k >= 0 {
                    term = &term * &v.pow(k as u32);
                } else {
                    let inv = v.monomial_inverse().ok_or(Error::NotDivisible)?;
                    term = &term * &inv.pow((-k) as u32);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Inverse of a single-term polynomial.
    pub fn monomial_inverse(&self) -> Option<LaurentPoly> {
        if !self.is_monomial() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(LaurentPoly::monomial(
            e.iter().map(|x| -x).collect(),
            c.recip(),
        ))
    }

    /// Evaluates at a point with all coordinates nonzero (for negative exponents).
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k != 0 && x.is_zero() {
                    if k < 0 {
                        return Err(Error::NotDivisible);
                    }
                    t = BigRational::zero();
                    break;
                }
                t *= num_traits::pow::pow(if k >= 0 { x.clone() } else { x.recip() }, k.unsigned_abs() as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Applies `f` to every exponent vector, producing a polynomial in `nvars` variables.
    pub fn map_exponents(&self, nvars: usize, mut f: impl FnMut(&[i64]) -> Exponent) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Keeps only the terms satisfying `pred`.
    pub fn filter_terms(&self, mut pred: impl FnMut(&[i64]) -> bool) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| pred(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Renders with the given variable names (defaults to `x1, x2, ...`).
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayWith { poly: self, names }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.nvars, other.nvars,
            "Laurent polynomials in different numbers of variables"
        );
    }
}

/// Exact quotient `h` with `f = g * h`, or `NotDivisible`.
///
/// Leading-term elimination under lex order. Degrees are additive in every
/// variable (the Laurent ring is a domain), so a quotient must live in the box
/// `[min f - min g, max f - max g]`; leaving the box proves non-divisibility and
/// keeps the loop finite.
pub fn exact_divide(f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
    if f.nvars != g.nvars {
        return Err(Error::DimensionMismatch(format!(
            "dividing in {} variables by {} variables",
            f.nvars, g.nvars
        )));
    }
    if g.is_zero() {
        return Err(Error::InvalidArgument("division by zero".into()));
    }
    let Some(fb) = f.exponent_bounds() else {
        return Ok(LaurentPoly::zero(f.nvars));
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
    let (g_lead, g_coef) = g.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
    let mut rem = f.clone();
    let mut quot = LaurentPoly::zero(f.nvars);
    while let Some((r_lead, r_coef)) = rem.leading_term() {
        let e = sub_exp(r_lead, &g_lead);
        if e.iter().zip(&bounds).any(|(x, (lo, hi))| x < lo || x > hi) {
            return Err(Error::NotDivisible);
        }
        let c = r_coef / &g_coef;
        for (ge, gc) in &g.terms {
            rem.add_term(add_exp(ge, &e), -(gc * &c));
        }
        quot.add_term(e, c);
    }
    Ok(quot)
}

pub(crate) fn add_exp(a: &[i64], b: &[i64]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub_exp(a: &[i64], b: &[i64]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_same(rhs);
        let mut out = LaurentPoly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(add_exp(a, b), ca * cb);
            }
        }
        out
    }
}

struct DisplayWith<'a> {
    poly: &'a LaurentPoly,
    names: &'a [String],
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = self
                    .names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", i + 1));
                factors.push(if k == 1 { name } else { format!("{name}^{k}") });
            }
            let coef = super::matrix::fmt_rational(&abs);
            if factors.is_empty() {
                write!(f, "{coef}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{coef}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

/// Integer that serializes as a JSON number when it fits in `i64`, otherwise as a string.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum WireInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for WireInt {
    fn from(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => WireInt::Small(v),
            None => WireInt::Big(x.to_string()),
        }
    }
}

impl TryFrom<WireInt> for BigInt {
    type Error = Error;
    fn try_from(w: WireInt) -> Result<BigInt> {
        match w {
            WireInt::Small(v) => Ok(BigInt::from(v)),
            WireInt::Big(s) => s
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    exp: Vec<i64>,
    num: WireInt,
    den: WireInt,
}

#[derive(Serialize, Deserialize)]
struct WireLaurent(Vec<WireTerm>);

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<WireTerm> = self
            .terms
            .iter()
            .map(|(e, c)| WireTerm {
                exp: e.clone(),
                num: c.numer().into(),
                den: c.denom().into(),
            })
            .collect();
        WireLaurent(terms).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    /// An empty term list decodes as the zero polynomial in zero variables;
    /// containers that know the arity call [`LaurentPoly::with_nvars`].
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let WireLaurent(terms) = WireLaurent::deserialize(deserializer)?;
        let nvars = terms.first().map_or(0, |t| t.exp.len());
        let mut pairs = Vec::with_capacity(terms.len());
        for t in terms {
            let num = BigInt::try_from(t.num).map_err(serde::de::Error::custom)?;
            let den = BigInt::try_from(t.den).map_err(serde::de::Error::custom)?;
            if den.is_zero() {
                return Err(serde::de::Error::custom("zero denominator"));
            }
            pairs.push((t.exp, BigRational::new(num, den)));
        }
        LaurentPoly::from_terms(nvars, pairs).map_err(serde::de::Error::custom)
    }
}

impl LaurentPoly {
    /// Re-tags a polynomial decoded without a known variable count.
    pub fn with_nvars(mut self, nvars: usize) -> Result<Self> {
        if self.terms.is_empty() {
            self.nvars = nvars;
            return Ok(self);
        }
        if self.nvars != nvars {
            return Err(Error::DimensionMismatch(format!(
                "polynomial in {} variables where {} expected",
                self.nvars, nvars
            )));
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn poly(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), r(*c)))).unwrap()
    }

    #[test]
    fn divide_out_common_factor() {
        let f = poly(2, &[(&[1, 1], 1), (&[1, 0], 1)]);
        let g = poly(2, &[(&[0, 1], 1), (&[0, 0], 1)]);
        assert_eq!(exact_divide(&f, &g).unwrap(), poly(2, &[(&[1, 0], 1)]));
    }

    #[test]
    fn divide_with_negative_exponents() {
        let f = poly(2, &[(&[-1, 1], 1), (&[-1, 0], 1)]);
        let g = poly(2, &[(&[0, 1], 1), (&[0, 0], 1)]);
        assert_eq!(exact_divide(&f, &g).unwrap(), poly(2, &[(&[-1, 0], 1)]));
    }

    #[test]
    fn non_divisible() {
        let f = poly(2, &[(&[1, 0], 1), (&[0, 0], 1)]);
        let g = poly(2, &[(&[0, 1], 1), (&[0, 0], 1)]);
        assert_eq!(exact_divide(&f, &g), Err(Error::NotDivisible));
        // 1 / (1 + x) is not Laurent either.
        let one = LaurentPoly::one(1);
        let g = poly(1, &[(&[1], 1), (&[0], 1)]);
        assert_eq!(exact_divide(&one, &g), Err(Error::NotDivisible));
    }

    #[test]
    fn division_by_zero_rejected() {
        let f = LaurentPoly::one(1);
        assert!(matches!(
            exact_divide(&f, &LaurentPoly::zero(1)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn display_uses_names() {
        let f = poly(2, &[(&[-1, 1], 1), (&[-1, 0], 2), (&[0, 0], -3)]);
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(f.display_with(&names).to_string(), "-3 + a^-1*b + 2*a^-1");
    }

    #[test]
    fn evaluation_and_substitution() {
        let f = poly(2, &[(&[-1, 1], 1), (&[-1, 0], 1)]);
        assert_eq!(f.evaluate(&[r(2), r(3)]).unwrap(), r(2));
        let x = LaurentPoly::var(2, 0);
        let y = LaurentPoly::var(2, 1);
        let swapped = f.substitute(&[y.clone(), x.clone()]).unwrap();
        assert_eq!(swapped, poly(2, &[(&[1, -1], 1), (&[0, -1], 1)]));
        let sum = &x + &y;
        assert_eq!(f.substitute(&[sum, y]), Err(Error::NotDivisible));
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(
            (prop::collection::vec(-2i64..=2, nvars), -3i64..=3),
            1..5,
        )
        .prop_map(move |ts| {
            LaurentPoly::from_terms(nvars, ts.into_iter().map(|(e, c)| (e, r(c)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn divide_round_trip(g in arb_poly(3), h in arb_poly(3)) {
            prop_assume!(!g.is_zero());
            let f = &g * &h;
            prop_assert_eq!(exact_divide(&f, &g).unwrap(), h);
        }

        #[test]
        fn json_round_trip(f in arb_poly(2)) {
            let text = serde_json::to_string(&f).unwrap();
            let back: LaurentPoly = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back.with_nvars(2).unwrap(), f);
        }
    }
}
