//! Integer lattices in `Z^n`, kept in row Hermite normal form.

use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A sublattice of `Z^ambient`. The basis is the (canonical) row Hermite
/// normal form of any generating set, so two lattices are equal iff their
/// bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &IntMatrix::identity(ambient).to_rows())
            .expect("identity rows have ambient length")
    }

    /// Lattice generated by `vectors` (which need not be independent).
    pub fn span(ambient: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                ambient
            )));
        }
        let rows: Vec<Vec<i128>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| x as i128).collect())
            .collect();
        let hnf = hermite_rows(rows, ambient);
        Ok(Self {
            ambient,
            basis: hnf.into_iter().map(narrow).collect(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Membership of an integer vector.
    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut rest: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for row in &self.basis {
            let pivot = row.iter().position(|&x| x != 0).expect("basis rows are nonzero");
            let p = row[pivot] as i128;
            if rest[..pivot].iter().any(|&x| x != 0) {
                return false;
            }
            if rest[pivot] % p != 0 {
                return false;
            }
            let q = rest[pivot] / p;
            for (r, &b) in rest.iter_mut().zip(row) {
                *r -= q * b as i128;
            }
        }
        rest.iter().all(|&x| x == 0)
    }

    /// Sum `self + other`.
    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_same(other)?;
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Lattice::span(self.ambient, &gens)
    }

    /// Rank over the rationals of `self ∩ other`.
    pub fn intersection_rank(&self, other: &Lattice) -> Result<usize> {
        let s = self.sum(other)?;
        Ok(self.rank() + other.rank() - s.rank())
    }

    /// Orthogonal complement under the standard dot product (saturated).
    pub fn orthogonal_complement(&self) -> Lattice {
        let m = IntMatrix::from_rows_with_cols(self.basis.clone(), self.ambient)
            .expect("basis rows have ambient length");
        integer_kernel(&m)
    }

    /// Image under the coordinate projection deleting the coordinates in `drop`,
    /// re-embedded on the kept coordinates in increasing order.
    pub fn project(&self, drop: &[usize]) -> Lattice {
        let keep: Vec<usize> = (0..self.ambient).filter(|i| !drop.contains(i)).collect();
        let gens: Vec<Vec<i64>> = self
            .basis
            .iter()
            .map(|v| keep.iter().map(|&i| v[i]).collect())
            .collect();
        Lattice::span(keep.len(), &gens).expect("projected vectors have kept length")
    }

    /// Lattice generated by the columns of `m`.
    pub fn column_lattice(m: &IntMatrix) -> Lattice {
        let cols: Vec<Vec<i64>> = (0..m.cols()).map(|j| m.column(j)).collect();
        Lattice::span(m.rows(), &cols).expect("columns have row length")
    }

    fn check_same(&self, other: &Lattice) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "lattices in Z^{} and Z^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}

/// Basis of `{w in Z^cols : M w = 0}`. The basis comes from a unimodular
/// transform, so it is saturated: every integer kernel vector is an integer
/// combination of it.
pub fn integer_kernel(m: &IntMatrix) -> Lattice {
    let (r, c) = (m.rows(), m.cols());
    // Rows are [column j of M | e_j]; reducing to Hermite form keeps the right
    // block unimodular, and rows whose left block vanishes span the kernel.
    let rows: Vec<Vec<i128>> = (0..c)
        .map(|j| {
            let mut row: Vec<i128> = (0..r).map(|i| m.get(i, j) as i128).collect();
            row.extend((0..c).map(|l| i128::from(l == j)));
            row
        })
        .collect();
    let reduced = hermite_rows_partial(rows, r);
    let kernel: Vec<Vec<i64>> = reduced
        .into_iter()
        .filter(|row| row[..r].iter().all(|&x| x == 0))
        .map(|row| narrow(row[r..].to_vec()))
        .collect();
    Lattice::span(c, &kernel).expect("kernel vectors have column length")
}

/// Rank of the lattice generated by both bases.
pub fn lattice_span_rank(a: &Lattice, b: &Lattice) -> Result<usize> {
    Ok(a.sum(b)?.rank())
}

fn narrow(v: Vec<i128>) -> Vec<i64> {
    v.into_iter()
        .map(|x| i64::try_from(x).expect("lattice entry overflows i64"))
        .collect()
}

/// Canonical row Hermite normal form; zero rows are dropped.
fn hermite_rows(rows: Vec<Vec<i128>>, ncols: usize) -> Vec<Vec<i128>> {
    let mut out = hermite_rows_partial(rows, ncols);
    out.retain(|r| r.iter().any(|&x| x != 0));
    out
}

/// Row Hermite reduction using only the first `pivot_cols` columns for pivots.
/// Rows are kept (zero rows included) so callers can read the transform.
fn hermite_rows_partial(mut rows: Vec<Vec<i128>>, pivot_cols: usize) -> Vec<Vec<i128>> {
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| rows[i][c] != 0)
                .min_by_key(|&i| rows[i][c].abs());
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in (r + 1)..rows.len() {
                if rows[i][c] == 0 {
                    continue;
                }
                let q = rows[i][c] / rows[r][c];
                let (head, tail) = rows.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[r], q);
                if tail[0][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c] == 0 {
            continue;
        }
        if rows[r][c] < 0 {
            for x in rows[r].iter_mut() {
                *x = -*x;
            }
        }
        let p = rows[r][c];
        for i in 0..r {
            let q = rows[i][c].div_euclid(p);
            if q != 0 {
                let (head, tail) = rows.split_at_mut(r);
                sub_multiple(&mut head[i], &tail[0], q);
            }
        }
        r += 1;
    }
    rows
}

fn sub_multiple(target: &mut [i128], source: &[i128], q: i128) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn kernel_of_single_row() {
        let k = integer_kernel(&mat(vec![vec![0, 1, -1]]));
        assert_eq!(k.basis(), &[vec![1, 0, 0], vec![0, 1, 1]]);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(integer_kernel(&IntMatrix::identity(2)).is_zero());
        assert_eq!(integer_kernel(&IntMatrix::zeros(2, 2)), Lattice::full(2));
    }

    #[test]
    fn kernel_is_saturated() {
        // ker [2, 4] over Z is spanned by (2,-1); (4,-2) alone would not be saturated.
        let k = integer_kernel(&mat(vec![vec![2, 4]]));
        assert_eq!(k.rank(), 1);
        assert!(k.contains(&[2, -1]));
        assert!(k.contains(&[-2, 1]));
    }

    #[test]
    fn span_ranks() {
        let e1 = Lattice::span(2, &[vec![1, 0]]).unwrap();
        let e2 = Lattice::span(2, &[vec![0, 1]]).unwrap();
        let two_e1 = Lattice::span(2, &[vec![2, 0]]).unwrap();
        assert_eq!(lattice_span_rank(&e1, &e2).unwrap(), 2);
        assert_eq!(lattice_span_rank(&e1, &two_e1).unwrap(), 1);
        let a = Lattice::span(3, &[vec![1, 1, 0]]).unwrap();
        let b = Lattice::span(3, &[vec![0, 1, 1], vec![1, 0, -1]]).unwrap();
        assert_eq!(lattice_span_rank(&a, &b).unwrap(), 2);
        assert!(lattice_span_rank(&e1, &a).is_err());
    }

    #[test]
    fn membership_respects_index() {
        let l = Lattice::span(2, &[vec![2, 0], vec![0, 3]]).unwrap();
        assert!(l.contains(&[4, -3]));
        assert!(!l.contains(&[1, 0]));
        assert!(!l.contains(&[1, 0, 0]));
    }

    #[test]
    fn complement_and_projection() {
        let t = Lattice::span(3, &[vec![1, 0, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(t.orthogonal_complement(), Lattice::span(3, &[vec![0, 1, -1]]).unwrap());
        assert_eq!(t.project(&[2]), Lattice::full(2));
        assert_eq!(t.project(&[]), t);
        assert_eq!(t.project(&[0, 1, 2]), Lattice::zero(0));
    }

    #[test]
    fn hermite_form_is_canonical() {
        let a = Lattice::span(2, &[vec![1, 2], vec![3, 4]]).unwrap();
        let b = Lattice::span(2, &[vec![2, 2], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(a, b);
    }
}
