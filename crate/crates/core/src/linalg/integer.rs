//! Integer matrices, Smith normal form and lattice kernels.

use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds from rows of equal length; `cols` is needed for the 0-row case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        let n = rows.len();
        Ok(IntMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(cols: usize, rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self[(r, k)].is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = &self[(r, k)] * &other[(k, c)];
                    out[(r, c)] += add;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += f · row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for c in 0..self.cols {
            let add = &self[(src, c)] * f;
            self[(dst, c)] += add;
        }
    }

    /// col[dst] += f · col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for r in 0..self.rows {
            let add = &self[(r, src)] * f;
            self[(r, dst)] += add;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }

    pub fn smith_normal_form(&self) -> SmithForm {
        let mut d = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let mut t = 0;
        while t < d.rows.min(d.cols) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let pivot = (t..d.rows)
                .flat_map(|r| (t..d.cols).map(move |c| (r, c)))
                .filter(|&(r, c)| !d[(r, c)].is_zero())
                .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()));
            let Some((pr, pc)) = pivot else { break };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);

            loop {
                let mut dirty = false;
                for r in t + 1..d.rows {
                    if d[(r, t)].is_zero() {
                        continue;
                    }
                    let q = -d[(r, t)].div_floor(&d[(t, t)]);
                    d.add_row(r, t, &q);
                    u.add_row(r, t, &q);
                    if !d[(r, t)].is_zero() {
                        dirty = true;
                    }
                }
                for c in t + 1..d.cols {
                    if d[(t, c)].is_zero() {
                        continue;
                    }
                    let q = -d[(t, c)].div_floor(&d[(t, t)]);
                    d.add_col(c, t, &q);
                    v.add_col(c, t, &q);
                    if !d[(t, c)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // A remainder is now smaller than the pivot; move it in.
                    let (pr, pc) = (t..d.rows)
                        .map(|r| (r, t))
                        .chain((t..d.cols).map(|c| (t, c)))
                        .filter(|&p| !d[p].is_zero())
                        .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()))
                        .expect("pivot row or column is nonzero");
                    d.swap_rows(t, pr);
                    u.swap_rows(t, pr);
                    d.swap_cols(t, pc);
                    v.swap_cols(t, pc);
                    continue;
                }
                // Divisibility: fold any offending row into the pivot row.
                let offender = (t + 1..d.rows)
                    .flat_map(|r| (t + 1..d.cols).map(move |c| (r, c)))
                    .find(|&(r, c)| !d[(r, c)].is_multiple_of(&d[(t, t)]));
                match offender {
                    Some((r, _)) => {
                        d.add_row(t, r, &BigInt::one());
                        u.add_row(t, r, &BigInt::one());
                    }
                    None => break,
                }
            }
            if d[(t, t)].is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        SmithForm { u, d, v, rank: t }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

/// Lattice basis of `{w ∈ ℤⁿ : m·w = 0}`.
///
/// The columns of the Smith transform `v` past the rank span the kernel; the
/// result is then put in Hermite normal form so it is canonical.
pub fn smith_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = m.smith_normal_form();
    let raw: Vec<Vec<BigInt>> = (snf.rank..m.cols()).map(|c| snf.v.column(c)).collect();
    hermite_rows(raw)
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: zero rows
/// dropped, pivots strictly increasing and positive, entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let Some(width) = rows.first().map(Vec::len) else {
        return rows;
    };
    let mut done = 0;
    for col in 0..width {
        loop {
            let active: Vec<usize> = (done..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .collect();
            let Some(&p) = active
                .iter()
                .min_by(|&&a, &&b| rows[a][col].abs().cmp(&rows[b][col].abs()))
            else {
                break;
            };
            if active.len() == 1 {
                rows.swap(done, p);
                if rows[done][col].is_negative() {
                    rows[done].iter_mut().for_each(|x| *x = -&*x);
                }
                let pivot = rows[done][col].clone();
                for r in 0..done {
                    let q = rows[r][col].div_floor(&pivot);
                    if !q.is_zero() {
                        let pivot_row = rows[done].clone();
                        axpy(&mut rows[r], &-q, &pivot_row);
                    }
                }
                done += 1;
                break;
            }
            let pivot_row = rows[p].clone();
            for &r in &active {
                if r != p {
                    let q = rows[r][col].div_floor(&pivot_row[col]);
                    axpy(&mut rows[r], &-q, &pivot_row);
                }
            }
        }
    }
    rows.truncate(done);
    rows
}

fn axpy(dst: &mut [BigInt], f: &BigInt, src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += f * s;
    }
}

/// Membership test against a basis in the form produced by [`hermite_rows`].
pub fn hermite_contains(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut w = v.to_vec();
    for row in basis {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if w[..p].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, r) = w[p].div_rem(&row[p]);
        if !r.is_zero() {
            return false;
        }
        axpy(&mut w, &-q, row);
    }
    w.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// All integer vectors with entries in `[-r, r]`.
    fn box_vectors(n: usize, r: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| (-r..=r).map(move |x| [v.clone(), vec![x]].concat()))
                .collect();
        }
        out
    }

    fn in_span_small(basis: &[Vec<BigInt>], v: &[i64], coeff: i64) -> bool {
        box_vectors(basis.len(), coeff).iter().any(|c| {
            (0..v.len()).all(|i| {
                basis.iter().zip(c).map(|(b, &k)| &b[i] * k).sum::<BigInt>() == BigInt::from(v[i])
            })
        })
    }

    #[test]
    fn empty_constraints_give_standard_basis() {
        let k = smith_kernel(&IntMatrix::zeros(0, 3));
        assert_eq!(k, vec![big(&[1, 0, 0]), big(&[0, 1, 0]), big(&[0, 0, 1])]);
    }

    #[test]
    fn kernel_of_sum_constraint() {
        let m = IntMatrix::from_i64(3, &[&[1, 1, -1]]);
        let k = smith_kernel(&m);
        assert_eq!(k.len(), 2);
        // Enumeration oracle: both named vectors are integer combinations.
        assert!(in_span_small(&k, &[1, 0, 1], 3));
        assert!(in_span_small(&k, &[0, 1, 1], 3));
        assert!(hermite_contains(&k, &big(&[1, 0, 1])));
    }

    #[test]
    fn kernel_of_two_minus_one() {
        let k = smith_kernel(&IntMatrix::from_i64(2, &[&[2, -1]]));
        assert_eq!(k, vec![big(&[1, 2])]);
        // Every small solution is a multiple of (1, 2).
        for v in box_vectors(2, 6) {
            if 2 * v[0] - v[1] == 0 {
                assert!(hermite_contains(&k, &big(&v)));
            }
        }
    }

    #[test]
    fn smith_form_factorizes() {
        let m = IntMatrix::from_i64(3, &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = m.smith_normal_form();
        assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d);
        let diag: Vec<BigInt> = (0..3).map(|i| s.d[(i, i)].clone()).collect();
        assert_eq!(diag, big(&[2, 6, 12]));
    }

    fn arb_int_matrix() -> impl Strategy<Value = IntMatrix> {
        (0usize..4, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                IntMatrix::from_rows(c, v.chunks(c.max(1)).take(r).map(big).collect()).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn kernel_is_complete_lattice_basis(m in arb_int_matrix()) {
            let k = smith_kernel(&m);
            for w in &k {
                prop_assert!(m.mul_vec(w).iter().all(Zero::is_zero));
            }
            let n = m.cols();
            let r = if n <= 3 { 10 } else { 3 };
            for v in box_vectors(n, r) {
                let bv = big(&v);
                let solves = m.mul_vec(&bv).iter().all(Zero::is_zero);
                prop_assert_eq!(hermite_contains(&k, &bv), solves, "vector {:?}", v);
            }
        }

        #[test]
        fn smith_diagonal_divides(m in arb_int_matrix()) {
            let s = m.smith_normal_form();
            prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
            for i in 1..s.rank {
                prop_assert!(s.d[(i, i)].is_multiple_of(&s.d[(i - 1, i - 1)]));
            }
        }
    }
}
