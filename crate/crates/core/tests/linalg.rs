//! Exhaustive check of the integer kernel against direct enumeration.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use leibniz_core::linalg::{smith_kernel, IntMatrix};
use leibniz_core::{Matrix, Scalar};

type Q = Ratio<i64>;

/// Pivot columns and, for each pivot, its expression in the free columns.
fn solve_form(rows: &[Vec<i64>], n: usize) -> (Vec<usize>, Vec<usize>, Vec<Vec<Q>>) {
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Q::from(x)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::from(1) / m[r][c];
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= *p * f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    // x_pivot = −Σ m[row][f] x_f
    let expr = (0..pivots.len())
        .map(|row| free.iter().map(|&f| -m[row][f]).collect())
        .collect();
    (pivots, free, expr)
}

fn invert(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let k = m.len();
    let rows: Vec<Vec<Scalar>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|q| Scalar::rational(*q.numer(), *q.denom()))
                .collect()
        })
        .collect();
    let inv = Matrix::from_rows(rows).unwrap().inverse().unwrap();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let s = &inv[(i, j)];
                    let r = s.re();
                    Q::new(r.numer().to_i64().unwrap(), r.denom().to_i64().unwrap())
                })
                .collect()
        })
        .collect()
}

fn check(rows: &[Vec<i64>], n: usize) -> usize {
    let m = IntMatrix::from_rows(
        n,
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
    .unwrap();
    let basis = smith_kernel(&m);
    for b in &basis {
        assert!(
            m.mul_vec(b).iter().all(Zero::is_zero),
            "basis vector {b:?} not in kernel"
        );
    }
    let (pivots, free, expr) = solve_form(rows, n);
    assert_eq!(basis.len(), free.len());
    if free.is_empty() {
        return 0;
    }
    let small: Vec<Vec<i64>> = basis
        .iter()
        .map(|b| b.iter().map(|x| x.to_i64().unwrap()).collect())
        .collect();
    // The kernel projects isomorphically onto the free coordinates, so
    // coefficients are read off there.
    let proj: Vec<Vec<Q>> = small
        .iter()
        .map(|b| free.iter().map(|&f| Q::from(b[f])).collect())
        .collect();
    let inv = invert(&proj);
    let k = free.len();
    let mut found = 0;
    let mut x = vec![-10i64; k];
    loop {
        let mut w = vec![0i64; n];
        for (i, &f) in free.iter().enumerate() {
            w[f] = x[i];
        }
        let mut ok = true;
        for (row, &p) in pivots.iter().enumerate() {
            let v: Q = expr[row].iter().zip(&x).map(|(c, &xi)| *c * xi).sum();
            if !v.is_integer() || v.to_integer().abs() > 10 {
                ok = false;
                break;
            }
            w[p] = v.to_integer();
        }
        if ok {
            found += 1;
            let coeffs: Vec<Q> = (0..k)
                .map(|j| (0..k).map(|i| inv[i][j] * x[i]).sum())
                .collect();
            assert!(
                coeffs.iter().all(Q::is_integer),
                "{w:?} is in the kernel but not in the lattice span"
            );
        }
        let mut i = 0;
        loop {
            if i == k {
                return found;
            }
            if x[i] < 10 {
                x[i] += 1;
                break;
            }
            x[i] = -10;
            i += 1;
        }
    }
}

#[test]
fn smith_kernel_is_saturated() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut found = 0;
    for n in 1..=6usize {
        for _ in 0..12 {
            // Keep at most four free coordinates so the box stays small.
            let rows_min = n.saturating_sub(4).max(1);
            let r = rng.gen_range(rows_min..=n);
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
                .collect();
            if solve_form(&rows, n).1.len() > 4 {
                continue;
            }
            found += check(&rows, n);
        }
    }
    // Constraint rows as they arise from structure constants.
    found += check(
        &[vec![2, -1, 0, 0], vec![1, 1, -1, 0], vec![1, 0, 1, -1]],
        4,
    );
    found += check(&[vec![1, 1, -1]], 3);
    found += check(&[vec![2, -1]], 2);
    found += check(&[vec![4, 6, 0, 0, -2, 0]], 6);
    assert!(found > 1000);
}
