//! Reduced double words and the minors they attach to each vertex.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::weyl::{word_to_element, CartanData, WeylElement};
use crate::error::{Error, Result};

/// A shuffle of a reduced word for `u` (letters `-1..=-r`) and one for `v`
/// (letters `1..=r`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleWord {
    letters: Vec<i64>,
    cartan: CartanData,
    u: WeylElement,
    v: WeylElement,
}

impl DoubleWord {
    pub fn new(letters: Vec<i64>, cartan: CartanData) -> Result<Self> {
        for &a in &letters {
            if a == 0 {
                return Err(Error::InvalidArgument("letter 0 in double word".into()));
            }
            cartan.check_letter(a.unsigned_abs() as usize)?;
        }
        let neg: Vec<usize> = letters.iter().filter(|&&a| a < 0).map(|&a| (-a) as usize).collect();
        let pos: Vec<usize> = letters.iter().filter(|&&a| a > 0).map(|&a| a as usize).collect();
        let (u, u_red) = word_to_element(&neg, &cartan)?;
        let (v, v_red) = word_to_element(&pos, &cartan)?;
        if !u_red {
            return Err(Error::NotReduced(format!("negative letters {neg:?}")));
        }
        if !v_red {
            return Err(Error::NotReduced(format!("positive letters {pos:?}")));
        }
        Ok(Self {
            letters,
            cartan,
            u,
            v,
        })
    }

    /// Parses comma- or whitespace-separated signed letters.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let letters = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad letter {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters, CartanData::type_a(rank)?)
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn u(&self) -> &WeylElement {
        &self.u
    }

    pub fn v(&self) -> &WeylElement {
        &self.v
    }

    /// Vertex ids `-r, …, -1, 1, …, L`.
    pub fn vertices(&self) -> Vec<i64> {
        let r = self.rank() as i64;
        (-r..0).chain(1..=self.len() as i64).collect()
    }

    pub(crate) fn check_vertex(&self, k: i64) -> Result<()> {
        let r = self.rank() as i64;
        if k == 0 || k < -r || k > self.len() as i64 {
            return Err(Error::IndexOutOfRange {
                index: k.unsigned_abs() as usize,
                bound: if k < 0 { self.rank() } else { self.len() },
            });
        }
        Ok(())
    }

    /// The letter `i_k`; for `k < 0` it is `k` itself.
    pub fn letter(&self, k: i64) -> i64 {
        if k > 0 {
            self.letters[(k - 1) as usize]
        } else {
            k
        }
    }

    /// `|i_k|`.
    pub fn level(&self, k: i64) -> usize {
        self.letter(k).unsigned_abs() as usize
    }

    pub fn sign(&self, k: i64) -> i64 {
        self.letter(k).signum()
    }

    /// Next position `l > k` with `|i_l| = |i_k|`, or `L + 1`.
    pub fn plus(&self, k: i64) -> i64 {
        let start = (k + 1).max(1);
        let level = self.level(k);
        (start..=self.len() as i64)
            .find(|&l| self.level(l) == level)
            .unwrap_or(self.len() as i64 + 1)
    }

    pub fn is_exchangeable(&self, k: i64) -> bool {
        k > 0 && self.plus(k) <= self.len() as i64
    }

    /// `(u_{≤k}, v_{>k})`, with `(e, v^{-1})` for `k ≤ 0`.
    pub fn prefix_pair(&self, k: i64) -> Result<(WeylElement, WeylElement)> {
        if k > self.len() as i64 {
            return Err(Error::IndexOutOfRange {
                index: k as usize,
                bound: self.len(),
            });
        }
        let n = self.cartan.n();
        if k <= 0 {
            return Ok((WeylElement::identity(n), self.v.inverse()));
        }
        let k = k as usize;
        let neg: Vec<usize> = self.letters[..k]
            .iter()
            .filter(|&&a| a < 0)
            .map(|&a| (-a) as usize)
            .collect();
        let pos: Vec<usize> = self.letters[k..]
            .iter()
            .rev()
            .filter(|&&a| a > 0)
            .map(|&a| a as usize)
            .collect();
        let (u, _) = word_to_element(&neg, &self.cartan)?;
        let (v, _) = word_to_element(&pos, &self.cartan)?;
        Ok((u, v))
    }

    /// The minor `Δ_{u_{≤k} ω_i, v_{>k} ω_i}` attached to vertex `k`.
    pub fn minor_spec_at(&self, k: i64) -> Result<MinorSpec> {
        self.check_vertex(k)?;
        let (u, v) = self.prefix_pair(k)?;
        let i = self.level(k);
        Ok(MinorSpec {
            rows: u.weight_subset(i),
            cols: v.weight_subset(i),
        })
    }
}

impl fmt::Display for DoubleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Row and column sets (1-based, sorted) of a minor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MinorSpec {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() || rows.is_empty() {
            return Err(Error::DimensionMismatch("minor needs equal nonempty row and column sets".into()));
        }
        let mut rows = rows;
        let mut cols = cols;
        rows.sort_unstable();
        cols.sort_unstable();
        Ok(Self { rows, cols })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// `D[rows|cols]`; indices are run together when all are single digits.
    pub fn label(&self) -> String {
        let wide = self.rows.iter().chain(&self.cols).any(|&x| x >= 10);
        let sep = if wide { "," } else { "" };
        let join = |s: &[usize]| {
            s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
        };
        format!("D[{}|{}]", join(&self.rows), join(&self.cols))
    }

    /// Inverse of [`MinorSpec::label`].
    pub fn parse_label(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad minor label {text:?}"));
        let inner = text
            .strip_prefix("D[")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (r, c) = inner.split_once('|').ok_or_else(bad)?;
        let wide = inner.contains(',');
        let part = |s: &str| -> Result<Vec<usize>> {
            if wide {
                s.split(',').map(|t| t.parse().map_err(|_| bad())).collect()
            } else {
                s.chars()
                    .map(|ch| ch.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                    .collect()
            }
        };
        Self::new(part(r)?, part(c)?)
    }
}

impl fmt::Display for MinorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl3() -> DoubleWord {
        DoubleWord::parse("1,2,1,-1,-2,-1", 2).unwrap()
    }

    fn spec(r: &[usize], c: &[usize]) -> MinorSpec {
        MinorSpec::new(r.to_vec(), c.to_vec()).unwrap()
    }

    #[test]
    fn parse_and_validate() {
        let w = sl3();
        assert_eq!(w.len(), 6);
        assert_eq!(w.u(), &WeylElement::longest(3));
        assert_eq!(w.v(), &WeylElement::longest(3));
        assert!(matches!(DoubleWord::parse("1,1", 2), Err(Error::NotReduced(_))));
        assert!(matches!(DoubleWord::parse("-2,-2", 2), Err(Error::NotReduced(_))));
        assert!(matches!(DoubleWord::parse("1,3", 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(DoubleWord::parse("1,x", 2), Err(Error::Parse(_))));
        assert!(DoubleWord::parse("", 2).unwrap().is_empty());
    }

    #[test]
    fn sl3_minors() {
        let w = sl3();
        let got: Vec<MinorSpec> = w
            .vertices()
            .into_iter()
            .map(|k| w.minor_spec_at(k).unwrap())
            .collect();
        let want = vec![
            spec(&[1, 2], &[2, 3]),
            spec(&[1], &[3]),
            spec(&[1], &[2]),
            spec(&[1, 2], &[1, 2]),
            spec(&[1], &[1]),
            spec(&[2], &[1]),
            spec(&[2, 3], &[1, 2]),
            spec(&[3], &[1]),
        ];
        assert_eq!(got, want);
        let ex: Vec<i64> = w.vertices().into_iter().filter(|&k| w.is_exchangeable(k)).collect();
        assert_eq!(ex, vec![1, 2, 3, 4]);
        assert!(w.minor_spec_at(0).is_err());
        assert!(w.minor_spec_at(7).is_err());
        assert!(w.minor_spec_at(-3).is_err());
    }

    #[test]
    fn prefix_pair_ends() {
        let w = sl3();
        let (u, v) = w.prefix_pair(6).unwrap();
        assert_eq!(u, *w.u());
        assert!(v.is_identity());
        let (u, v) = w.prefix_pair(-1).unwrap();
        assert!(u.is_identity());
        assert_eq!(v, w.v().inverse());
    }

    #[test]
    fn prefix_pairs_inside_the_word() {
        let w = sl3();
        let s1 = WeylElement::simple(1, 3);
        let s2 = WeylElement::simple(2, 3);
        let (u, v) = w.prefix_pair(1).unwrap();
        assert!(u.is_identity());
        assert_eq!(v, s1.compose(&s2));
        let (u, v) = w.prefix_pair(3).unwrap();
        assert!(u.is_identity() && v.is_identity());
    }

    #[test]
    fn plus_chain() {
        let w = sl3();
        let chain: Vec<i64> = (1..=6).map(|k| w.plus(k)).collect();
        assert_eq!(chain, vec![3, 5, 4, 6, 7, 7]);
    }

    #[test]
    fn labels_round_trip() {
        let s = spec(&[1, 2], &[2, 3]);
        assert_eq!(s.label(), "D[12|23]");
        assert_eq!(MinorSpec::parse_label("D[12|23]").unwrap(), s);
        let big = spec(&[2, 10], &[1, 3]);
        assert_eq!(big.label(), "D[2,10|1,3]");
        assert_eq!(MinorSpec::parse_label(&big.label()).unwrap(), big);
        assert!(MinorSpec::parse_label("x13").is_err());
    }
}
