//! Jordan types, characteristic sequences and invariant fingerprints.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::grading::{associated_graded, max_length_search};
use crate::scalar::Scalar;
use crate::subspace::{unit, Subspace};

/// Default seed for sampling generic elements.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Jordan block sizes, non-increasing. Compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CharSequence(pub Vec<usize>);

impl CharSequence {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for CharSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `rank(R_x^m)` for `m = 0, 1, …` up to the first zero.
pub fn rank_sequence(alg: &Algebra, x: &Element) -> Result<Vec<usize>> {
    let n = alg.dim();
    let r = alg.right_operator(x)?;
    let mut image = Subspace::full(n);
    let mut ranks = vec![n];
    while !image.is_zero() {
        let next = Subspace::span(
            n,
            image
                .basis()
                .iter()
                .map(|v| r.mul_vec(v).expect("square operator")),
        )?;
        if next.dim() == image.dim() {
            return Err(Error::OperatorNotNilpotent);
        }
        ranks.push(next.dim());
        image = next;
    }
    Ok(ranks)
}

fn partition_from_ranks(ranks: &[usize]) -> CharSequence {
    // at_least[m-1] = #{parts ≥ m} = r_{m-1} − r_m
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for m in (1..=at_least.len()).rev() {
        let exactly = at_least[m - 1] - at_least.get(m).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(m, exactly));
    }
    CharSequence(parts)
}

/// Jordan type of the right multiplication `R_x`.
pub fn jordan_type_at(alg: &Algebra, x: &Element) -> Result<CharSequence> {
    Ok(partition_from_ranks(&rank_sequence(alg, x)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplingConfig {
    pub seed: u64,
    pub samples: usize,
    /// Random coordinates are drawn from `−range..=range`.
    pub range: i64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            seed: DEFAULT_SEED,
            samples: 20,
            range: 3,
        }
    }
}

impl SamplingConfig {
    pub fn with_seed(seed: u64) -> Self {
        SamplingConfig {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacteristicSequence {
    pub sequence: CharSequence,
    /// First candidate at which the maximum was reached.
    pub attained_at: Element,
}

/// Lexicographic maximum of the Jordan type over basis vectors outside `L²`,
/// their pairwise sums, and seeded random elements of `L \ L²`.
///
/// Stops early once a candidate reaches `rank(R_x^m) = dim L^{m+1}` for all
/// `m`, since no element can exceed that.
pub fn characteristic_sequence(
    alg: &Algebra,
    cfg: &SamplingConfig,
) -> Result<CharacteristicSequence> {
    let n = alg.dim();
    let series = alg.lower_central_series();
    if !series.last().expect("series is never empty").is_zero() {
        return Err(Error::NotNilpotent);
    }
    if n == 0 {
        return Ok(CharacteristicSequence {
            sequence: CharSequence(vec![]),
            attained_at: Element(vec![]),
        });
    }
    let bound: Vec<usize> = series.iter().map(Subspace::dim).collect();
    let l2 = &series[1];

    let outside: Vec<usize> = (0..n).filter(|&i| !l2.contains(&unit(n, i))).collect();
    let mut best: Option<(Vec<usize>, CharSequence, Element)> = None;
    let mut consider = |x: Element| -> Result<bool> {
        let ranks = rank_sequence(alg, &x)?;
        let seq = partition_from_ranks(&ranks);
        let optimal = ranks == bound;
        if best.as_ref().is_none_or(|(_, b, _)| seq > *b) {
            best = Some((ranks, seq, x));
        }
        Ok(optimal)
    };

    'search: {
        for &i in &outside {
            if consider(Element::basis(n, i))? {
                break 'search;
            }
        }
        for (a, &i) in outside.iter().enumerate() {
            for &j in &outside[a + 1..] {
                let mut v = unit(n, i);
                v[j] = Scalar::one();
                if l2.contains(&v) {
                    continue;
                }
                if consider(Element(v))? {
                    break 'search;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.samples {
            let v = (0..1000).find_map(|_| {
                let v: Vec<Scalar> = (0..n)
                    .map(|_| Scalar::from(rng.gen_range(-cfg.range..=cfg.range)))
                    .collect();
                (!l2.contains(&v)).then_some(v)
            });
            if let Some(v) = v {
                if consider(Element(v))? {
                    break 'search;
                }
            }
        }
    }
    let (_, sequence, attained_at) = best.expect("L ≠ L² for a nonzero nilpotent algebra");
    Ok(CharacteristicSequence {
        sequence,
        attained_at,
    })
}

/// Numerical invariants used to tell algebras apart.
///
/// Every field except `max_monomial_length` is an isomorphism invariant, so
/// [`same_invariants`](Self::same_invariants) ignores it. The monomial length
/// depends on the basis the algebra is written in; it is reported as a lower
/// bound on the length of the algebra and is `None` when the search box was
/// too large to enumerate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantFingerprint {
    pub dim: usize,
    pub nilindex: Option<usize>,
    pub series_dims: Vec<usize>,
    pub dim_right_annihilator: usize,
    pub dim_center: usize,
    pub dim_squares_ideal: usize,
    pub char_sequence: CharSequence,
    pub max_monomial_length: Option<u64>,
}

impl InvariantFingerprint {
    /// Name of the first invariant component that differs, if any.
    pub fn distinguishing_component(&self, other: &Self) -> Option<&'static str> {
        if self.dim != other.dim {
            Some("dim")
        } else if self.nilindex != other.nilindex {
            Some("nilindex")
        } else if self.series_dims != other.series_dims {
            Some("series_dims")
        } else if self.dim_right_annihilator != other.dim_right_annihilator {
            Some("dim_right_annihilator")
        } else if self.dim_center != other.dim_center {
            Some("dim_center")
        } else if self.dim_squares_ideal != other.dim_squares_ideal {
            Some("dim_squares_ideal")
        } else if self.char_sequence != other.char_sequence {
            Some("char_sequence")
        } else {
            None
        }
    }

    pub fn same_invariants(&self, other: &Self) -> bool {
        self.distinguishing_component(other).is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FingerprintConfig {
    pub sampling: SamplingConfig,
    /// Coefficient bound for the monomial length search; `None` means `2n`.
    pub length_bound: Option<i64>,
    /// Skip the length search entirely.
    pub skip_length: bool,
}

pub fn fingerprint(alg: &Algebra) -> Result<InvariantFingerprint> {
    fingerprint_with(alg, &FingerprintConfig::default())
}

pub fn fingerprint_with(alg: &Algebra, cfg: &FingerprintConfig) -> Result<InvariantFingerprint> {
    let series = alg.lower_central_series();
    let nilindex = alg.nilindex();
    if nilindex.is_none() {
        return Err(Error::NotNilpotent);
    }
    let n = alg.dim();
    let char_sequence = characteristic_sequence(alg, &cfg.sampling)?.sequence;
    let max_monomial_length = if cfg.skip_length || n == 0 {
        None
    } else {
        let bound = cfg.length_bound.unwrap_or(2 * n as i64);
        match max_length_search(alg, bound) {
            Ok(r) => r.report.length,
            Err(Error::SearchTooLarge { .. }) => None,
            Err(e) => return Err(e),
        }
    };
    Ok(InvariantFingerprint {
        dim: n,
        nilindex,
        series_dims: series.iter().map(Subspace::dim).collect(),
        dim_right_annihilator: alg.right_annihilator().dim(),
        dim_center: alg.center().dim(),
        dim_squares_ideal: alg.squares_ideal().dim(),
        char_sequence,
        max_monomial_length,
    })
}

/// Comparison of an algebra with its associated graded algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalGradedness {
    /// Dimensions of the graded components `L^i / L^{i+1}`.
    pub component_dims: Vec<usize>,
    /// A mismatch shows the algebra is not naturally graded; a match is only
    /// evidence that it is.
    pub fingerprints_match: bool,
    /// First differing fingerprint component, if any.
    pub mismatch: Option<&'static str>,
}

pub fn natural_gradedness_report(
    alg: &Algebra,
    sampling: &SamplingConfig,
) -> Result<NaturalGradedness> {
    let gr = associated_graded(alg)?;
    let cfg = FingerprintConfig {
        sampling: sampling.clone(),
        length_bound: None,
        skip_length: true,
    };
    let mismatch = fingerprint_with(alg, &cfg)?
        .distinguishing_component(&fingerprint_with(&gr.algebra, &cfg)?);
    Ok(NaturalGradedness {
        component_dims: gr.component_dims(),
        fingerprints_match: mismatch.is_none(),
        mismatch,
    })
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
    fn partition_from_rank_sequence() {
        // Blocks (3, 1): ranks 4, 2, 1, 0.
        assert_eq!(
            partition_from_ranks(&[4, 2, 1, 0]),
            CharSequence(vec![3, 1])
        );
        assert_eq!(partition_from_ranks(&[3, 0]), CharSequence(vec![1, 1, 1]));
    }

    #[test]
    fn abelian_is_all_ones() {
        let a = Algebra::abelian(5);
        let c = characteristic_sequence(&a, &SamplingConfig::default()).unwrap();
        assert_eq!(c.sequence, CharSequence(vec![1; 5]));
    }

    #[test]
    fn non_nilpotent_operator() {
        let a = alg(2, &[(1, 2, 2, 1), (2, 1, 2, -1)]);
        assert_eq!(
            jordan_type_at(&a, &Element::basis(2, 0)),
            Err(Error::OperatorNotNilpotent)
        );
        assert_eq!(
            characteristic_sequence(&a, &SamplingConfig::default()),
            Err(Error::NotNilpotent)
        );
    }

    #[test]
    fn ordering_is_lexicographic() {
        assert!(CharSequence(vec![5, 2]) > CharSequence(vec![5, 1, 1]));
        assert!(CharSequence(vec![6, 1]) > CharSequence(vec![5, 2]));
        assert_eq!(CharSequence(vec![5, 2]).to_string(), "(5,2)");
    }

    #[test]
    fn fingerprint_of_four_dimensional_example() {
        let a = alg(4, &[(1, 1, 2, 1), (1, 3, 4, 1)]);
        let f = fingerprint(&a).unwrap();
        assert_eq!(f.series_dims, vec![4, 2, 0]);
        assert_eq!(f.nilindex, Some(2));
        assert_eq!(f.max_monomial_length, Some(4));
        // R_{y1}: y1 → y2 only (left factor varies), so the type is (2,1,1).
        assert_eq!(f.char_sequence, CharSequence(vec![2, 1, 1]));
    }
}
