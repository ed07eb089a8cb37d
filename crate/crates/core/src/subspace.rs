use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A linear subspace of `Fⁿ`, stored by its reduced row echelon basis.
///
/// The echelon basis is unique, so two equal subspaces compare equal field by
/// field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient).rref_rows(),
        }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span<I>(ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let rows: Vec<Vec<Scalar>> = vectors.into_iter().collect();
        if let Some(bad) = rows.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: bad.len(),
            });
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(ambient));
        }
        let m = Matrix::from_rows(rows)?;
        Ok(Subspace {
            ambient,
            basis: m.rref_rows(),
        })
    }

    /// Span of the unit vectors `e_i` for the given 0-based indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vecs = indices.iter().map(|&i| unit(ambient, i));
        Subspace::span(ambient, vecs).expect("unit vectors have ambient length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        // Reduce against the echelon basis; pivots are the leading entries.
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("echelon rows are nonzero");
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (wi, ri) in w.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *wi -= &(&f * ri);
                }
            }
        }
        w.iter().all(Scalar::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        debug_assert_eq!(self.ambient, other.ambient);
        Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
            .expect("same ambient")
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        debug_assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // Solve Σ a_i u_i = Σ b_j w_j via the nullspace of [U | -W] (columns).
        let k = self.dim();
        let cols: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()))
            .collect();
        let m = Matrix::from_rows(cols).expect("same ambient").transpose();
        let vecs = m.nullspace_basis().into_iter().map(|coef| {
            let mut v = vec![Scalar::zero(); self.ambient];
            for (a, u) in coef[..k].iter().zip(&self.basis) {
                if a.is_zero() {
                    continue;
                }
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi += &(a * ui);
                }
            }
            v
        });
        Subspace::span(self.ambient, vecs).expect("same ambient")
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

impl Matrix {
    /// Nonzero rows of the reduced row echelon form.
    pub(crate) fn rref_rows(&self) -> Vec<Vec<Scalar>> {
        let r = self.rref();
        (0..r.pivots.len())
            .map(|i| r.matrix.row(i).to_vec())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from(x)).collect()
    }

    #[test]
    fn canonical_representation() {
        let a = Subspace::span(3, [v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, [v(&[1, 2, 1]), v(&[1, 0, -1]), v(&[2, 2, 0])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[3, 5, 2])));
        assert!(!a.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::coordinate(4, &[0, 1]);
        let b = Subspace::span(4, [v(&[0, 1, 1, 0]), v(&[0, 0, 0, 1])]).unwrap();
        assert_eq!(a.sum(&b).dim(), 4);
        assert_eq!(a.intersection(&b), Subspace::zero(4));
        let c = Subspace::span(4, [v(&[1, 1, 0, 0])]).unwrap();
        assert_eq!(a.intersection(&c), c);
        assert!(c.is_subspace_of(&a));
        assert!(!a.is_subspace_of(&c));
    }
}
