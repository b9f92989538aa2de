//! Type-A Weyl groups as permutation groups, reduced words and Bruhat order.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernel::{IntMatrix, RatMatrix};

/// Cartan data of type `A_r`: Cartan matrix and the pairing `(ω_i, ω_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    rank: usize,
    cartan: IntMatrix,
    pairing: RatMatrix,
}

impl CartanData {
    pub fn type_a(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidArgument("type A needs rank ≥ 1".into()));
        }
        let n = rank + 1;
        let cartan = IntMatrix::from_fn(rank, rank, |i, j| match i.abs_diff(j) {
            0 => 2,
            1 => -1,
            _ => 0,
        });
        let pairing = RatMatrix::from_fn(rank, rank, |i, j| {
            let (a, b) = (i.min(j) + 1, i.max(j) + 1);
            BigRational::new(((a * (n - b)) as i64).into(), (n as i64).into())
        });
        Ok(Self {
            rank,
            cartan,
            pairing,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Size `r + 1` of the matrices in `SL_{r+1}`.
    pub fn n(&self) -> usize {
        self.rank + 1
    }

    /// `a_ij` for 1-based simple-root indices.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan.get(i - 1, j - 1)
    }

    pub fn cartan_matrix(&self) -> &IntMatrix {
        &self.cartan
    }

    /// `(ω_i, ω_j)` for 1-based indices.
    pub fn pairing(&self, i: usize, j: usize) -> &BigRational {
        self.pairing.get(i - 1, j - 1)
    }

    pub(crate) fn check_letter(&self, i: usize) -> Result<()> {
        if (1..=self.rank).contains(&i) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                bound: self.rank,
            })
        }
    }

    /// Pairing of the weights `uω_i` and `u'ω_j`, given as the subsets
    /// `u([1,i])` and `u'([1,j])`: `|S ∩ T| - |S||T| / n`.
    pub fn subset_pairing(&self, s: &[usize], t: &[usize]) -> BigRational {
        let common = s.iter().filter(|x| t.contains(x)).count() as i64;
        BigRational::from_integer(common.into())
            - BigRational::new(((s.len() * t.len()) as i64).into(), (self.n() as i64).into())
    }
}

/// A permutation of `{0, …, n-1}`; `perm[j]` is the image of `j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
        }
    }

    /// `s_i` (1-based `i`) swapping `i` and `i + 1`.
    pub fn simple(i: usize, n: usize) -> Self {
        let mut e = Self::identity(n);
        e.perm.swap(i - 1, i);
        e
    }

    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(Self { perm })
    }

    /// The longest element `w_0`.
    pub fn longest(n: usize) -> Self {
        Self {
            perm: (0..n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, j: usize) -> usize {
        self.perm[j]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            perm: other.perm.iter().map(|&j| self.perm[j]).collect(),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0; self.n()];
        for (j, &p) in self.perm.iter().enumerate() {
            inv[p] = j;
        }
        WeylElement { perm: inv }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.perm[i] > self.perm[j])
            .count()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Sorted image `w([1, i])`, 1-based.
    pub fn weight_subset(&self, i: usize) -> Vec<usize> {
        let mut s: Vec<usize> = (0..i).map(|j| self.perm[j] + 1).collect();
        s.sort_unstable();
        s
    }

    /// A reduced word (1-based letters) whose product is `self`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::new();
        while let Some(i) = (0..w.n().saturating_sub(1)).find(|&i| w.perm[i] > w.perm[i + 1]) {
            rev.push(i + 1);
            w = w.compose(&WeylElement::simple(i + 1, w.n()));
        }
        rev.reverse();
        rev
    }

    /// Every element of `S_n`.
    pub fn all(n: usize) -> Vec<WeylElement> {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut out);
        out.sort();
        out
    }
}

fn permutations(perm: &mut Vec<usize>, k: usize, out: &mut Vec<WeylElement>) {
    if k == perm.len() {
        out.push(WeylElement { perm: perm.clone() });
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permutations(perm, k + 1, out);
        perm.swap(k, i);
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.perm.iter().map(|p| (p + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.perm.iter().map(|p| p + 1).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeylElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        let perm = v
            .iter()
            .map(|&p| p.checked_sub(1).ok_or_else(|| serde::de::Error::custom("0 in permutation")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        WeylElement::from_perm(perm).map_err(serde::de::Error::custom)
    }
}

/// Product `s_{w_1} ⋯ s_{w_l}` and whether the word is reduced.
pub fn word_to_element(word: &[usize], cd: &CartanData) -> Result<(WeylElement, bool)> {
    let n = cd.n();
    let mut w = WeylElement::identity(n);
    for &i in word {
        cd.check_letter(i)?;
        w = w.compose(&WeylElement::simple(i, n));
    }
    let reduced = w.length() == word.len();
    Ok((w, reduced))
}

/// All subword products of a reduced word for `w`, i.e. the interval `[e, w]`.
pub fn bruhat_interval(w: &WeylElement) -> BTreeSet<WeylElement> {
    let n = w.n();
    let mut acc: BTreeSet<WeylElement> = [WeylElement::identity(n)].into_iter().collect();
    for i in w.reduced_word() {
        let s = WeylElement::simple(i, n);
        let extra: Vec<WeylElement> = acc.iter().map(|x| x.compose(&s)).collect();
        acc.extend(extra);
    }
    acc
}

/// Strong Bruhat order via the subword criterion.
pub fn bruhat_leq(u: &WeylElement, w: &WeylElement) -> bool {
    if u.n() != w.n() || u.length() > w.length() {
        return false;
    }
    bruhat_interval(w).contains(u)
}

/// The minimal-length `w` with `w([1, i]) = subset` (1-based entries).
pub fn min_coset_representative(subset: &[usize], n: usize) -> Result<WeylElement> {
    let mut s: Vec<usize> = subset.iter().map(|x| x - 1).collect();
    s.sort_unstable();
    let rest: Vec<usize> = (0..n).filter(|x| !s.contains(x)).collect();
    s.extend(rest);
    WeylElement::from_perm(s)
}

/// Bruhat order on the orbit of `ω_i`, via minimal coset representatives.
pub fn weight_leq(a: &[usize], b: &[usize], n: usize) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch("weights of different levels".into()));
    }
    Ok(bruhat_leq(
        &min_coset_representative(a, n)?,
        &min_coset_representative(b, n)?,
    ))
}

/// All `i`-subsets of `[1, n]` in lexicographic order.
pub fn subsets_of_size(n: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == i {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(x + 1, n, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, i, &mut Vec::new(), &mut out);
    out
}
