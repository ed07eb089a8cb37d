//! Ideals and series attached to an algebra.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::subspace::{unit, Subspace};

impl Algebra {
    /// Span of `[u, v]` over basis vectors `u` of `left` and `v` of `right`.
    pub fn bracket_span(&self, left: &Subspace, right: &Subspace) -> Subspace {
        let mut products = Vec::new();
        for u in left.basis() {
            for v in right.basis() {
                let p = self.bracket(u, v);
                if p.iter().any(|x| !x.is_zero()) {
                    products.push(p);
                }
            }
        }
        Subspace::span(self.dim(), products).expect("products have ambient length")
    }

    /// `L¹ = L`, `L^{k+1} = [L^k, L]`, ending at the first zero term. For a
    /// non-nilpotent algebra the series ends at the term where it stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().expect("series is never empty");
            if last.is_zero() {
                break;
            }
            let next = self.bracket_span(last, &full);
            if next.dim() == last.dim() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// The last `s` with `L^s ≠ 0`, or `None` if the series stabilizes at a
    /// nonzero subspace. The zero algebra has nilindex 0.
    pub fn nilindex(&self) -> Option<usize> {
        let series = self.lower_central_series();
        let last = series.last().expect("series is never empty");
        last.is_zero().then(|| series.len() - 1)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilindex().is_some()
    }

    /// Solves `Σ_m x_m c(m) = 0` where each `c(m)` is a coefficient vector
    /// produced by `coeff(i, m)` for every `i`.
    fn kernel_of_system<F>(&self, blocks: usize, coeff: F) -> Subspace
    where
        F: Fn(usize, usize) -> Vec<Scalar>,
    {
        let n = self.dim();
        let mut rows = Vec::new();
        for i in 0..blocks {
            let cols: Vec<Vec<Scalar>> = (0..n).map(|m| coeff(i, m)).collect();
            for k in 0..n {
                let row: Vec<Scalar> = cols.iter().map(|c| c[k].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return Subspace::full(n);
        }
        let m = Matrix::from_rows(rows).expect("rows have length n");
        Subspace::span(n, m.nullspace_basis()).expect("nullspace vectors have length n")
    }

    /// `R(L) = {x : [y, x] = 0 for all y}`.
    pub fn right_annihilator(&self) -> Subspace {
        self.kernel_of_system(self.dim(), |i, m| self.product(i, m).to_vec())
    }

    /// `{x : [y, x] = [x, y] = 0 for all y}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        self.kernel_of_system(2 * n, |i, m| {
            if i < n {
                self.product(i, m).to_vec()
            } else {
                self.product(m, i - n).to_vec()
            }
        })
    }

    /// Span of all squares `[x, x]`, from the polarized spanning set.
    pub fn squares_ideal(&self) -> Subspace {
        let n = self.dim();
        let mut vecs = Vec::new();
        for i in 0..n {
            vecs.push(self.product(i, i).to_vec());
            for j in i + 1..n {
                vecs.push(
                    self.product(i, j)
                        .iter()
                        .zip(self.product(j, i))
                        .map(|(a, b)| a + b)
                        .collect(),
                );
            }
        }
        Subspace::span(
            n,
            vecs.into_iter()
                .filter(|v: &Vec<Scalar>| v.iter().any(|x| !x.is_zero())),
        )
        .expect("vectors have length n")
    }

    /// Basis indices whose classes form a basis of `L/L²`, chosen greedily
    /// in index order.
    pub fn generators_modulo_square(&self) -> Result<Vec<usize>> {
        let series = self.lower_central_series();
        if !series.last().expect("series is never empty").is_zero() {
            return Err(Error::NotNilpotent);
        }
        let n = self.dim();
        let mut span = series.get(1).cloned().unwrap_or_else(|| Subspace::zero(n));
        let mut gens = Vec::new();
        for i in 0..n {
            let e = unit(n, i);
            if !span.contains(&e) {
                gens.push(i);
                span = span.sum(&Subspace::coordinate(n, &[i]));
            }
        }
        Ok(gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize, entries: &[(usize, usize, usize, i64)]) -> Algebra {
        Algebra::from_entries(
            n,
            None,
            entries
                .iter()
                .map(|&(i, j, k, c)| (i - 1, j - 1, k - 1, Scalar::from(c))),
        )
        .unwrap()
    }

    #[test]
    fn abelian_structure() {
        let a = Algebra::abelian(4);
        let dims: Vec<usize> = a.lower_central_series().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![4, 0]);
        assert_eq!(a.nilindex(), Some(1));
        assert_eq!(a.right_annihilator().dim(), 4);
        assert_eq!(a.center().dim(), 4);
        assert!(a.squares_ideal().is_zero());
        assert_eq!(a.generators_modulo_square().unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn non_nilpotent_is_flagged() {
        // [e1, e2] = e2 is a solvable, non-nilpotent Lie algebra.
        let a = alg(2, &[(1, 2, 2, 1), (2, 1, 2, -1)]);
        assert_eq!(a.nilindex(), None);
        assert_eq!(a.generators_modulo_square(), Err(Error::NotNilpotent));
    }

    #[test]
    fn four_dimensional_example() {
        // [y1,y1]=y2, [y1,y3]=y4
        let a = alg(4, &[(1, 1, 2, 1), (1, 3, 4, 1)]);
        let dims: Vec<usize> = a.lower_central_series().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![4, 2, 0]);
        assert_eq!(a.nilindex(), Some(2));
        // [y1, x] = x1 y2 + x3 y4, so R(L) needs x1 = x3 = 0.
        assert_eq!(a.right_annihilator(), Subspace::coordinate(4, &[1, 3]));
        assert_eq!(a.center(), Subspace::coordinate(4, &[1, 3]));
        assert_eq!(a.squares_ideal(), Subspace::coordinate(4, &[1, 3]));
        assert_eq!(a.generators_modulo_square().unwrap(), vec![0, 2]);
    }
}
