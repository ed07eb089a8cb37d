//! Monomial ℤ-gradings: verification, the lattice of all of them, and
//! maximum-length search.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{hermite_contains, smith_kernel, IntMatrix, Matrix};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Largest box [`max_length_search`] enumerates unless told otherwise.
pub const DEFAULT_SEARCH_LIMIT: u128 = 50_000_000;

/// One integer weight per basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GradingAssignment {
    pub weights: Vec<i64>,
}

impl GradingAssignment {
    pub fn new(weights: Vec<i64>) -> Self {
        GradingAssignment { weights }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub is_grading: bool,
    pub is_connected: bool,
    /// `max − min + 1` over occupied weights; only set for gradings.
    pub length: Option<u64>,
    /// 0-based `(i, j, k)` with `c_ijk ≠ 0` and `w_i + w_j ≠ w_k`.
    pub violations: Vec<(usize, usize, usize)>,
}

pub fn verify_grading(alg: &Algebra, g: &GradingAssignment) -> Result<GradingReport> {
    let w = &g.weights;
    if w.len() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: w.len(),
        });
    }
    let violations: Vec<_> = alg
        .entries()
        .filter(|&(i, j, k, _)| w[i] as i128 + w[j] as i128 != w[k] as i128)
        .map(|(i, j, k, _)| (i, j, k))
        .collect();
    let occupied: BTreeSet<i64> = w.iter().copied().collect();
    let (is_connected, span) = match (occupied.first(), occupied.last()) {
        (Some(&lo), Some(&hi)) => {
            let span = (hi as i128 - lo as i128 + 1) as u64;
            (span == occupied.len() as u64, Some(span))
        }
        _ => (true, Some(0)),
    };
    let is_grading = violations.is_empty();
    Ok(GradingReport {
        is_grading,
        is_connected,
        length: if is_grading { span } else { None },
        violations,
    })
}

/// The integer points of this lattice are exactly the monomial gradings of
/// the algebra in its given basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightLattice {
    ambient: usize,
    #[serde(serialize_with = "serialize_big_rows")]
    basis: Vec<Vec<BigInt>>,
}

fn serialize_big_rows<S: serde::Serializer>(
    rows: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        let strs: Vec<String> = r.iter().map(BigInt::to_string).collect();
        seq.serialize_element(&strs)?;
    }
    seq.end()
}

impl WeightLattice {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Hermite-normal basis rows.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn contains(&self, w: &[i64]) -> bool {
        w.len() == self.ambient
            && hermite_contains(
                &self.basis,
                &w.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(),
            )
    }

    fn small_basis(&self) -> Result<Vec<Vec<i64>>> {
        self.basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_i64().ok_or(Error::WeightOverflow))
                    .collect()
            })
            .collect()
    }

    /// `Σ c_r · basis_r`.
    pub fn combination(&self, coeffs: &[i64]) -> Result<GradingAssignment> {
        if coeffs.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: coeffs.len(),
            });
        }
        let mut w = vec![BigInt::from(0); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            for (wi, x) in w.iter_mut().zip(row) {
                *wi += x * c;
            }
        }
        let weights = w
            .iter()
            .map(|x| x.to_i64().ok_or(Error::WeightOverflow))
            .collect::<Result<_>>()?;
        Ok(GradingAssignment { weights })
    }
}

/// Integer kernel of `w_i + w_j − w_k = 0` over all nonzero `c_ijk`.
pub fn universal_grading_lattice(alg: &Algebra) -> WeightLattice {
    let n = alg.dim();
    let rows: BTreeSet<Vec<i64>> = alg
        .entries()
        .map(|(i, j, k, _)| {
            let mut r = vec![0i64; n];
            r[i] += 1;
            r[j] += 1;
            r[k] -= 1;
            r
        })
        .collect();
    let rows: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    let m = IntMatrix::from_rows(n, rows).expect("rows have length n");
    WeightLattice {
        ambient: n,
        basis: smith_kernel(&m),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub best: GradingAssignment,
    pub report: GradingReport,
    /// Lattice points enumerated.
    pub examined: u128,
}

impl SearchResult {
    /// True when the best grading has length equal to the dimension.
    pub fn is_maximum_length(&self) -> bool {
        self.report.length == Some(self.best.weights.len() as u64)
    }
}

/// Enumerates lattice combinations with coefficients in `[−bound, bound]` and
/// returns a connected grading of greatest length. Ties go to the smallest
/// weight vector after shifting the minimum weight to 1, then to the smallest
/// raw vector.
pub fn max_length_search(alg: &Algebra, bound: i64) -> Result<SearchResult> {
    max_length_search_with_limit(alg, bound, DEFAULT_SEARCH_LIMIT)
}

pub fn max_length_search_with_limit(
    alg: &Algebra,
    bound: i64,
    limit: u128,
) -> Result<SearchResult> {
    if bound < 1 {
        return Err(Error::InvalidBound);
    }
    let lattice = universal_grading_lattice(alg);
    let rank = lattice.rank();
    let side = 2 * bound as u128 + 1;
    let points = (0..rank)
        .try_fold(1u128, |acc, _| acc.checked_mul(side))
        .unwrap_or(u128::MAX);
    if points > limit {
        return Err(Error::SearchTooLarge { points, limit });
    }
    let basis = lattice.small_basis()?;
    let n = alg.dim();

    let best = if rank == 0 {
        Some(Candidate::new(vec![0; n]))
    } else {
        (-bound..=bound)
            .into_par_iter()
            .map(|first| search_slice(&basis, n, bound, first))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .min()
    };
    let best = best.expect("the zero grading is always connected");
    let g = GradingAssignment { weights: best.raw };
    let report = verify_grading(alg, &g)?;
    debug_assert!(report.is_grading && report.is_connected);
    Ok(SearchResult {
        best: g,
        report,
        examined: points,
    })
}

/// Best candidate with the first coefficient fixed.
fn search_slice(basis: &[Vec<i64>], n: usize, bound: i64, first: i64) -> Result<Option<Candidate>> {
    let rank = basis.len();
    let mut coeffs = vec![-bound; rank];
    coeffs[0] = first;
    let mut best: Option<Candidate> = None;
    let mut w = vec![0i64; n];
    loop {
        for (k, wk) in w.iter_mut().enumerate() {
            let mut acc: i128 = 0;
            for (c, row) in coeffs.iter().zip(basis) {
                acc += *c as i128 * row[k] as i128;
            }
            *wk = i64::try_from(acc).map_err(|_| Error::WeightOverflow)?;
        }
        if let Some(len) = connected_length(&w) {
            let better = match &best {
                None => true,
                Some(b) => len > b.length || (len == b.length && Candidate::new(w.clone()) < *b),
            };
            if better {
                best = Some(Candidate::new(w.clone()));
            }
        }
        // Odometer over coefficients 1..rank.
        let mut pos = rank;
        loop {
            if pos == 1 {
                return Ok(best);
            }
            pos -= 1;
            if coeffs[pos] < bound {
                coeffs[pos] += 1;
                break;
            }
            coeffs[pos] = -bound;
        }
    }
}

/// Length of the occupied interval if it has no gaps.
fn connected_length(w: &[i64]) -> Option<u64> {
    let lo = *w.iter().min()?;
    let hi = *w.iter().max()?;
    let span = (hi as i128 - lo as i128 + 1) as u128;
    if span > w.len() as u128 {
        return None;
    }
    let span = span as usize;
    let covered = if span <= 128 {
        let mut seen = 0u128;
        for &x in w {
            seen |= 1 << (x - lo);
        }
        seen.count_ones() as usize
    } else {
        w.iter().collect::<BTreeSet<_>>().len()
    };
    (covered == span).then_some(span as u64)
}

/// Ordered so that the preferred grading is the minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Candidate {
    length: u64,
    normalized: Vec<i64>,
    raw: Vec<i64>,
}

impl Candidate {
    fn new(raw: Vec<i64>) -> Self {
        let length = connected_length(&raw).unwrap_or(0);
        let lo = raw.iter().copied().min().unwrap_or(0);
        let normalized = raw.iter().map(|&x| x - lo + 1).collect();
        Candidate {
            length,
            normalized,
            raw,
        }
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .length
            .cmp(&self.length)
            .then_with(|| self.normalized.cmp(&other.normalized))
            .then_with(|| self.raw.cmp(&other.raw))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `gr L = ⊕ L^i / L^{i+1}` in an adapted basis.
#[derive(Clone, Debug)]
pub struct AssociatedGraded {
    pub algebra: Algebra,
    /// Filtration degree of each new basis vector, starting at 1.
    pub degrees: Vec<usize>,
    /// Columns are the adapted basis vectors in the original coordinates.
    pub basis: Matrix,
}

impl AssociatedGraded {
    pub fn component_dims(&self) -> Vec<usize> {
        let top = self.degrees.iter().copied().max().unwrap_or(0);
        (1..=top)
            .map(|d| self.degrees.iter().filter(|&&x| x == d).count())
            .collect()
    }

    /// Weight `i` on every vector of `L^i / L^{i+1}`.
    pub fn filtration_grading(&self) -> GradingAssignment {
        GradingAssignment {
            weights: self.degrees.iter().map(|&d| d as i64).collect(),
        }
    }
}

/// Chooses, level by level, echelon basis vectors of `L^i` that are
/// independent modulo `L^{i+1}`, then keeps only the degree-`p+q` part of
/// each product.
pub fn associated_graded(alg: &Algebra) -> Result<AssociatedGraded> {
    let n = alg.dim();
    let series = alg.lower_central_series();
    if !series.last().expect("series is never empty").is_zero() {
        return Err(Error::NotNilpotent);
    }
    let mut vectors: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    for level in 0..series.len() - 1 {
        let mut span = series[level + 1].clone();
        for v in series[level].basis() {
            if !span.contains(v) {
                span = span.sum(&Subspace::span(n, [v.clone()]).expect("ambient length"));
                vectors.push(v.clone());
                degrees.push(level + 1);
            }
        }
    }
    debug_assert_eq!(vectors.len(), n);
    let basis = if n == 0 {
        Matrix::zeros(0, 0)
    } else {
        Matrix::from_rows(vectors.clone())?.transpose()
    };
    let inv = if n == 0 {
        basis.clone()
    } else {
        basis.inverse()?
    };
    let mut entries = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let target = degrees[a] + degrees[b];
            let p = alg.bracket(&vectors[a], &vectors[b]);
            if p.iter().all(Scalar::is_zero) {
                continue;
            }
            let coords = inv.mul_vec(&p)?;
            for (k, c) in coords.into_iter().enumerate() {
                if degrees[k] == target && !c.is_zero() {
                    entries.push((a, b, k, c));
                }
            }
        }
    }
    let labels = (1..=n).map(|i| format!("g{i}")).collect();
    let algebra = Algebra::from_entries(n, Some(labels), entries)?;
    Ok(AssociatedGraded {
        algebra,
        degrees,
        basis,
    })
}
