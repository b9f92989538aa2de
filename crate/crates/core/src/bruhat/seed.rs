//! The initial seed attached to a reduced double word, and its standard
//! Poisson bracket.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::word::{DoubleWord, MinorSpec};
use crate::cluster::{ExchangeMatrix, Seed};
use crate::error::{Error, Result};
use crate::kernel::{IntMatrix, RatMatrix};
use crate::poisson::BracketSpec;

/// Seed data on a double Bruhat cell. Vertices are ordered exchangeable
/// first (increasing), then frozen in natural order; `order[p]` is the vertex
/// id at position `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BfzSeed {
    pub word: String,
    pub rank: usize,
    pub order: Vec<i64>,
    pub minors: Vec<MinorSpec>,
    pub exchangeable: Vec<i64>,
    pub frozen: Vec<i64>,
    #[serde(rename = "B")]
    pub b: ExchangeMatrix,
}

impl BfzSeed {
    pub fn m(&self) -> usize {
        self.exchangeable.len()
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.minors.iter().map(MinorSpec::label).collect()
    }

    /// Position of vertex `k` in the arranged order.
    pub fn position(&self, k: i64) -> Option<usize> {
        self.order.iter().position(|&v| v == k)
    }

    pub fn seed(&self) -> Seed {
        Seed::initial(self.b.clone(), self.labels()).expect("one label per vertex")
    }

    pub fn frozen_minors(&self) -> Vec<MinorSpec> {
        self.minors[self.m()..].to_vec()
    }
}

/// Directed edges of the quiver as `(from, to)` vertex ids.
pub fn bfz_edges(w: &DoubleWord) -> Vec<(i64, i64)> {
    let verts = w.vertices();
    let len = w.len() as i64;
    let cd = w.cartan();
    let mut edges = Vec::new();
    for (a, &k) in verts.iter().enumerate() {
        for &l in &verts[a + 1..] {
            if !(w.is_exchangeable(k) || w.is_exchangeable(l)) {
                continue;
            }
            let (kp, lp) = (w.plus(k), w.plus(l));
            let adjacent = cd.cartan(w.level(k), w.level(l)) != 0;
            let sign_at = |x: i64| if x <= len { w.sign(x) } else { 0 };
            let mut dir = None;
            if l == kp {
                dir = Some(if w.sign(l) == 1 { (k, l) } else { (l, k) });
            }
            if l < kp && kp < lp && adjacent && kp <= len {
                if w.sign(l) == -1 && sign_at(kp) == -1 {
                    dir = Some((k, l));
                }
                if w.sign(l) == 1 && sign_at(kp) == 1 {
                    dir = Some((l, k));
                }
            }
            if l < lp && lp < kp && adjacent && lp <= len {
                if w.sign(l) == -1 && sign_at(lp) == 1 {
                    dir = Some((k, l));
                }
                if w.sign(l) == 1 && sign_at(lp) == -1 {
                    dir = Some((l, k));
                }
            }
            edges.extend(dir);
        }
    }
    edges
}

pub fn build_bfz_seed(w: &DoubleWord) -> Result<BfzSeed> {
    let verts = w.vertices();
    let exchangeable: Vec<i64> = verts.iter().copied().filter(|&k| w.is_exchangeable(k)).collect();
    let frozen: Vec<i64> = verts.iter().copied().filter(|&k| !w.is_exchangeable(k)).collect();
    let order: Vec<i64> = exchangeable.iter().chain(&frozen).copied().collect();
    let pos = |k: i64| order.iter().position(|&v| v == k).expect("vertex in order");
    let mut b = IntMatrix::zeros(exchangeable.len(), order.len());
    for (from, to) in bfz_edges(w) {
        let (pf, pt) = (pos(from), pos(to));
        if pf < exchangeable.len() {
            b.set(pf, pt, b.get(pf, pt) + 1);
        }
        if pt < exchangeable.len() {
            b.set(pt, pf, b.get(pt, pf) - 1);
        }
    }
    let minors = order
        .iter()
        .map(|&k| w.minor_spec_at(k))
        .collect::<Result<Vec<_>>>()?;
    Ok(BfzSeed {
        word: w.to_string(),
        rank: w.rank(),
        order,
        minors,
        exchangeable,
        frozen,
        b: ExchangeMatrix::new(b)?,
    })
}

/// Log-canonical coefficients of the standard Poisson bracket on the
/// seed's minors, in the order of [`build_bfz_seed`].
pub fn bruhat_lambda(w: &DoubleWord) -> Result<BracketSpec> {
    let seed = build_bfz_seed(w)?;
    lambda_for(&seed, w)
}

pub(crate) fn lambda_for(seed: &BfzSeed, w: &DoubleWord) -> Result<BracketSpec> {
    let cd = w.cartan();
    let n = seed.n();
    let raw = |a: usize, b: usize| -> BigRational {
        let (x, y) = (&seed.minors[a], &seed.minors[b]);
        cd.subset_pairing(&x.rows, &y.rows) - cd.subset_pairing(&x.cols, &y.cols)
    };
    let lambda = RatMatrix::from_fn(n, n, |a, b| match seed.order[a].cmp(&seed.order[b]) {
        std::cmp::Ordering::Equal => BigRational::zero(),
        std::cmp::Ordering::Greater => raw(a, b),
        std::cmp::Ordering::Less => -raw(a, b),
    });
    if seed.minors.len() != n {
        return Err(Error::DimensionMismatch("minor count".into()));
    }
    BracketSpec::new(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::is_skew_symmetric_principal;
    use crate::poisson::{adjacent_log_canonical, is_compatible_pair};

    fn sl3() -> DoubleWord {
        DoubleWord::parse("1,2,1,-1,-2,-1", 2).unwrap()
    }

    #[test]
    fn sl3_edges_match_reference() {
        let mut e = bfz_edges(&sl3());
        e.sort();
        let want = vec![
            (-2, 2),
            (-1, 1),
            (1, -2),
            (1, 3),
            (2, 1),
            (2, 4),
            (3, 2),
            (4, 3),
            (4, 5),
            (5, 2),
            (6, 4),
        ];
        assert_eq!(e, want);
    }

    #[test]
    fn sl3_seed_shape() {
        let s = build_bfz_seed(&sl3()).unwrap();
        assert_eq!(s.order, vec![1, 2, 3, 4, -2, -1, 5, 6]);
        assert_eq!((s.m(), s.n()), (4, 8));
        assert_eq!(
            s.labels(),
            vec!["D[1|2]", "D[12|12]", "D[1|1]", "D[2|1]", "D[12|23]", "D[1|3]", "D[23|12]", "D[3|1]"]
        );
        assert!(is_skew_symmetric_principal(&s.b));
    }

    #[test]
    fn sl2_seed() {
        let w = DoubleWord::parse("1,-1", 1).unwrap();
        let s = build_bfz_seed(&w).unwrap();
        assert_eq!(s.labels(), vec!["D[1|1]", "D[1|2]", "D[2|1]"]);
        assert_eq!(s.b.matrix().to_rows(), vec![vec![0, -1, -1]]);
    }

    #[test]
    fn empty_word_has_only_frozen_vertices() {
        let w = DoubleWord::parse("", 2).unwrap();
        let s = build_bfz_seed(&w).unwrap();
        assert_eq!(s.order, vec![-2, -1]);
        assert_eq!(s.m(), 0);
        assert_eq!(s.labels(), vec!["D[12|12]", "D[1|1]"]);
        assert_eq!(s.seed().n(), 2);
    }

    #[test]
    fn sl3_lambda_is_compatible() {
        let w = sl3();
        let s = build_bfz_seed(&w).unwrap();
        let spec = bruhat_lambda(&w).unwrap();
        let (scale, int) = spec.integer_scaling();
        assert_eq!(3 % scale, 0);
        let d = is_compatible_pair(&s.b, &int.scaled(3 / scale)).expect("compatible");
        assert_eq!(d, vec![6; 4]);
        // λ between x11 (vertex 3) and x12 (vertex 1)
        let (p3, p1) = (s.position(3).unwrap(), s.position(1).unwrap());
        assert_eq!(spec.lambda().get(p3, p1), &BigRational::from_integer(1.into()));
    }

    #[test]
    fn bracket_is_log_canonical_on_adjacent_clusters() {
        let w = sl3();
        let s = build_bfz_seed(&w).unwrap();
        let spec = bruhat_lambda(&w).unwrap();
        for k in 0..s.m() {
            assert!(adjacent_log_canonical(&s.seed(), &spec, k).unwrap());
        }
    }
}
