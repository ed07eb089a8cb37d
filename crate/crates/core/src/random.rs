//! Seeded random basis changes and elements.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A random integer matrix with determinant ±1: a product of unit lower and
/// upper triangular matrices with entries in `−range..=range`, with rows
/// permuted and signs flipped. Integer tables stay integral under it.
pub fn random_unimodular<R: Rng + ?Sized>(n: usize, range: i64, rng: &mut R) -> Matrix {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower[(i, j)] = Scalar::from(rng.gen_range(-range..=range));
            upper[(j, i)] = Scalar::from(rng.gen_range(-range..=range));
        }
    }
    let product = &lower * &upper;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut out = Matrix::zeros(n, n);
    for (r, &src) in perm.iter().enumerate() {
        let flip = rng.gen_bool(0.5);
        for c in 0..n {
            let v = product[(src, c)].clone();
            out[(r, c)] = if flip { -v } else { v };
        }
    }
    out
}

pub fn random_vector<R: Rng + ?Sized>(n: usize, range: i64, rng: &mut R) -> Vec<Scalar> {
    (0..n)
        .map(|_| Scalar::from(rng.gen_range(-range..=range)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unimodular_has_unit_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..7 {
            let p = random_unimodular(n, 2, &mut rng);
            let d = p.determinant().unwrap();
            assert!(d == Scalar::one() || d == Scalar::from(-1));
            let inv = p.inverse().unwrap();
            assert!((0..n).all(|i| (0..n).all(|j| inv[(i, j)].to_integer().is_some())));
        }
    }
}
