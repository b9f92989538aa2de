//! Elements of `Z[q^{1/2}, q^{-1/2}]`.
//!
//! Exponents are stored in half units: the key `k` stands for `q^{k/2}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QScalar {
    terms: BTreeMap<i64, i64>,
}

impl QScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::term(0, c)
    }

    /// `c * q^{half/2}`.
    pub fn term(half: i64, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(half, c);
        }
        Self { terms }
    }

    /// `q^{half/2}`.
    pub fn q_half_power(half: i64) -> Self {
        Self::term(half, 1)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut s = Self::zero();
        for (h, c) in pairs {
            s.add_term(h, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&h, &c)| (h, c))
    }

    pub fn add_term(&mut self, half: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(half).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&half);
        }
    }

    /// Multiplies by `q^{half/2}`.
    pub fn shift(&self, half: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&h, &c)| (h + half, c)).collect(),
        }
    }

    /// The bar involution `q^{1/2} -> q^{-1/2}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&h, &c)| (-h, c)).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Value at `q^{1/2} = 1`.
    pub fn specialize(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// Exact quotient in `Z[q^{±1/2}]`.
    pub fn exact_div(&self, divisor: &QScalar) -> Result<QScalar> {
        let (&d_lead, &d_coef) = divisor
            .terms
            .iter()
            .next_back()
            .ok_or_else(|| Error::InvalidArgument("division by zero scalar".into()))?;
        let (&d_low, _) = divisor.terms.iter().next().unwrap();
        let mut rem = self.clone();
        let mut quot = QScalar::zero();
        let Some((&low, _)) = rem.terms.iter().next() else {
            return Ok(quot);
        };
        let floor = low - d_low;
        while let Some((&r_lead, &r_coef)) = rem.terms.iter().next_back() {
            let h = r_lead - d_lead;
            if h < floor || r_coef % d_coef != 0 {
                return Err(Error::NotDivisible);
            }
            let c = r_coef / d_coef;
            for (&dh, &dc) in &divisor.terms {
                rem.add_term(dh + h, -dc * c);
            }
            quot.add_term(h, c);
        }
        Ok(quot)
    }
}

/// Gaussian binomial `[r choose p]` in base `t = q^{d/2}`, in the balanced
/// (bar-invariant) normalization `prod (t^{r-i+1} - t^{-(r-i+1)}) / (t^i - t^{-i})`.
pub fn q_binomial(r: u32, p: u32, d: u32) -> Result<QScalar> {
    if p > r {
        return Err(Error::InvalidArgument(format!(
            "q-binomial with p = {p} > r = {r}"
        )));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("q-binomial base exponent must be positive".into()));
    }
    // Standard Gaussian coefficients in u = t^2 via the q-Pascal rule
    // [n, k] = [n-1, k-1] + u^k [n-1, k].
    let mut row: Vec<Vec<i64>> = vec![vec![1]];
    for n in 1..=r as usize {
        let mut next: Vec<Vec<i64>> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut poly = vec![0i64; k * (n - k) + 1];
            if k >= 1 {
                for (j, c) in row[k - 1].iter().enumerate() {
                    poly[j] += c;
                }
            }
            if k < n {
                for (j, c) in row[k].iter().enumerate() {
                    poly[j + k] += c;
                }
            }
            next.push(poly);
        }
        row = next;
    }
    let (r, p, d) = (r as i64, p as i64, d as i64);
    let offset = p * (r - p);
    Ok(QScalar::from_pairs(
        row[p as usize]
            .iter()
            .enumerate()
            .map(|(j, &c)| (d * (2 * j as i64 - offset), c)),
    ))
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        let mut out = self.clone();
        for (&h, &c) in &rhs.terms {
            out.add_term(h, c);
        }
        out
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            terms: self.terms.iter().map(|(&h, &c)| (h, -c)).collect(),
        }
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        let mut out = QScalar::zero();
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&h, &c)) in self.terms.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let power = match h {
                0 => String::new(),
                2 => "q".to_string(),
                h if h % 2 == 0 => format!("q^{}", h / 2),
                h => format!("q^({h}/2)"),
            };
            match (a, power.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{power}")?,
                (_, false) => write!(f, "{a}*{power}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, i64)> = self.terms().collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(i64, i64)>::deserialize(deserializer)?;
        Ok(QScalar::from_pairs(pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_examples() {
        // base q^{2/2} = q: [2,1] = q + q^{-1}
        assert_eq!(
            q_binomial(2, 1, 2).unwrap(),
            QScalar::from_pairs([(2, 1), (-2, 1)])
        );
        // [3,1] = q^2 + 1 + q^{-2}
        assert_eq!(
            q_binomial(3, 1, 2).unwrap(),
            QScalar::from_pairs([(4, 1), (0, 1), (-4, 1)])
        );
        assert_eq!(q_binomial(5, 0, 3).unwrap(), QScalar::one());
        assert!(q_binomial(1, 2, 1).is_err());
    }

    #[test]
    fn binomial_specializes_to_ordinary() {
        for r in 0..8u32 {
            let mut ordinary = 1i64;
            for p in 0..=r {
                assert_eq!(q_binomial(r, p, 1).unwrap().specialize(), ordinary);
                ordinary = ordinary * (r - p) as i64 / (p + 1) as i64;
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(QScalar::from_pairs([(2, 1), (-2, 1)]).to_string(), "q + q^-1");
        assert_eq!(QScalar::from_pairs([(-1, 3), (0, -2)]).to_string(), "-2 + 3*q^(-1/2)");
    }

    #[test]
    fn scalar_division() {
        let a = QScalar::from_pairs([(2, 1), (-2, 1)]);
        let b = QScalar::from_pairs([(1, 2), (0, -1), (-3, 1)]);
        assert_eq!((&a * &b).exact_div(&a).unwrap(), b);
        assert_eq!(QScalar::one().exact_div(&a), Err(Error::NotDivisible));
        assert_eq!(QScalar::from_int(3).exact_div(&QScalar::from_int(2)), Err(Error::NotDivisible));
    }

    proptest! {
        #[test]
        fn binomial_symmetries(r in 0u32..9, p_frac in 0.0f64..1.0, d in 1u32..4) {
            let p = ((r as f64) * p_frac).round() as u32;
            let b = q_binomial(r, p, d).unwrap();
            prop_assert_eq!(&b, &q_binomial(r, r - p, d).unwrap());
            prop_assert!(b.is_bar_invariant());
        }
    }
}
