//! Sufficient conditions for a Leibniz algebra to be Lie, checked literally
//! on a presentation.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionMode {
    /// Every generator anticommutes with every basis vector.
    Theorem,
    /// Generators anticommute, the rest of the basis is a chain
    /// `y_i = [y_{i0}, y_{i−1}]`, and the chain anticommutes with the
    /// generators other than the first.
    Corollary1,
    /// The two-generator version of `Corollary1`.
    Corollary2,
}

impl fmt::Display for CriterionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CriterionMode::Theorem => "theorem",
            CriterionMode::Corollary1 => "corollary1",
            CriterionMode::Corollary2 => "corollary2",
        })
    }
}

impl FromStr for CriterionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem" => Ok(CriterionMode::Theorem),
            "corollary1" => Ok(CriterionMode::Corollary1),
            "corollary2" => Ok(CriterionMode::Corollary2),
            _ => Err(Error::Precondition(format!("unknown criterion mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub mode: CriterionMode,
    /// 0-based generator indices, from `generators_modulo_square`.
    pub generators: Vec<usize>,
    pub hypotheses: Vec<Hypothesis>,
    pub hypotheses_hold: bool,
    /// Evaluated directly on the table, independently of the hypotheses.
    pub conclusion_is_lie: bool,
}

impl CriterionReport {
    /// Hypotheses hold but the algebra is not Lie.
    pub fn is_counterexample(&self) -> bool {
        self.hypotheses_hold && !self.conclusion_is_lie
    }
}

pub fn lie_criterion_check(alg: &Algebra, mode: CriterionMode) -> Result<CriterionReport> {
    if let Some(w) = alg.leibniz_defect().witness {
        return Err(Error::Precondition(format!(
            "not a Leibniz algebra: {}",
            alg.describe_defect(&w)
        )));
    }
    let generators = alg.generators_modulo_square()?;
    let hypotheses = match mode {
        CriterionMode::Theorem => theorem_hypotheses(alg, &generators),
        CriterionMode::Corollary1 => corollary1_hypotheses(alg, &generators),
        CriterionMode::Corollary2 => corollary2_hypotheses(alg, &generators),
    };
    let hypotheses_hold = hypotheses.iter().all(|h| h.holds);
    // The identity already holds, so Lie reduces to antisymmetry.
    let conclusion_is_lie = alg.antisymmetry_failure().is_none();
    Ok(CriterionReport {
        mode,
        generators,
        hypotheses,
        hypotheses_hold,
        conclusion_is_lie,
    })
}

/// Witness text if `[e_a, e_b] ≠ −[e_b, e_a]`.
fn anticommute_failure(alg: &Algebra, a: usize, b: usize) -> Option<String> {
    let s: Vec<Scalar> = alg
        .product(a, b)
        .iter()
        .zip(alg.product(b, a))
        .map(|(x, y)| x + y)
        .collect();
    if s.iter().all(Scalar::is_zero) {
        return None;
    }
    let (x, y) = (alg.label(a), alg.label(b));
    Some(if a == b {
        format!("[{x},{x}] = {} != 0", alg.describe(alg.product(a, a)))
    } else {
        format!("[{x},{y}] + [{y},{x}] = {} != 0", alg.describe(&s))
    })
}

fn hypothesis(name: String, witness: Option<String>) -> Hypothesis {
    Hypothesis {
        name,
        holds: witness.is_none(),
        witness,
    }
}

fn theorem_hypotheses(alg: &Algebra, gens: &[usize]) -> Vec<Hypothesis> {
    gens.iter()
        .map(|&g| {
            let w = (0..alg.dim()).find_map(|j| anticommute_failure(alg, g, j));
            hypothesis(
                format!("[{0},y] = -[y,{0}] for every basis y", alg.label(g)),
                w,
            )
        })
        .collect()
}

/// Basis reordered with the generators first.
fn generators_first(alg: &Algebra, gens: &[usize]) -> Vec<usize> {
    let mut order = gens.to_vec();
    order.extend((0..alg.dim()).filter(|i| !gens.contains(i)));
    order
}

fn is_basis_vector(v: &[Scalar], k: usize) -> bool {
    v.iter()
        .enumerate()
        .all(|(i, x)| if i == k { x.is_one() } else { x.is_zero() })
}

/// First position `p` in `range` where `y_p ≠ [y_{i0}, y_{p−1}]` in `order`.
fn chain_failure(
    alg: &Algebra,
    order: &[usize],
    i0: usize,
    range: std::ops::Range<usize>,
) -> Option<String> {
    range.into_iter().find_map(|p| {
        let prod = alg.product(order[i0], order[p - 1]);
        (!is_basis_vector(prod, order[p])).then(|| {
            format!(
                "[{},{}] = {} != {}",
                alg.label(order[i0]),
                alg.label(order[p - 1]),
                alg.describe(prod),
                alg.label(order[p])
            )
        })
    })
}

fn pairwise_generators(alg: &Algebra, gens: &[usize]) -> Hypothesis {
    let w = gens.iter().enumerate().find_map(|(a, &x)| {
        gens[a..]
            .iter()
            .find_map(|&y| anticommute_failure(alg, x, y))
    });
    hypothesis("(i) generators anticommute pairwise".to_string(), w)
}

fn corollary1_hypotheses(alg: &Algebra, gens: &[usize]) -> Vec<Hypothesis> {
    let n = alg.dim();
    let s1 = gens.len();
    let order = generators_first(alg, gens);
    let mut out = vec![pairwise_generators(alg, gens)];

    let chain = if s1 == 0 || s1 >= n {
        None
    } else {
        let failures: Vec<Option<String>> = (0..s1)
            .map(|i0| chain_failure(alg, &order, i0, s1..n))
            .collect();
        if failures.iter().any(Option::is_none) {
            None
        } else {
            failures.into_iter().next().flatten()
        }
    };
    out.push(hypothesis(
        "(ii) y_i = [y_i0, y_(i-1)] for every non-generator y_i, one fixed i0".to_string(),
        chain,
    ));

    let anti =
        (1..s1).find_map(|g| (s1..n).find_map(|p| anticommute_failure(alg, order[p], order[g])));
    out.push(hypothesis(
        "(iii) non-generators anticommute with generators after the first".to_string(),
        anti,
    ));
    out
}

fn corollary2_hypotheses(alg: &Algebra, gens: &[usize]) -> Vec<Hypothesis> {
    let n = alg.dim();
    if gens.len() != 2 {
        return vec![hypothesis(
            "exactly two generators".to_string(),
            Some(format!("{} generators", gens.len())),
        )];
    }
    let attempt = |g0: usize, g1: usize| -> Vec<Hypothesis> {
        let order = generators_first(alg, &[g0, g1]);
        let tag = format!("y0={}, y1={}", alg.label(g0), alg.label(g1));
        let mut out = vec![
            hypothesis("exactly two generators".to_string(), None),
            pairwise_generators(alg, &[g0, g1]),
        ];

        let mut chain = chain_failure(alg, &order, 0, 2..n);
        if chain.is_none() && n >= 4 {
            let last = order[n - 1];
            let hit = (2..=n - 2).any(|p| is_basis_vector(alg.product(g1, order[p]), last));
            if !hit {
                chain = Some(format!(
                    "no p with [{},y_p] = {}",
                    alg.label(g1),
                    alg.label(last)
                ));
            }
        }
        out.push(hypothesis(
            format!("(ii) chain from y0 and y_(n-1) = [y1, y_p] ({tag})"),
            chain,
        ));

        let mut anti = (2..n).find_map(|p| anticommute_failure(alg, order[p], g0));
        if anti.is_none() && n >= 3 {
            anti = anticommute_failure(alg, order[n - 1], g1);
        }
        out.push(hypothesis(
            format!("(iii) [y_i,y0] = -[y0,y_i] and [y_(n-1),y1] = -[y1,y_(n-1)] ({tag})"),
            anti,
        ));
        out
    };
    let first = attempt(gens[0], gens[1]);
    if first.iter().all(|h| h.holds) {
        return first;
    }
    let second = attempt(gens[1], gens[0]);
    if second.iter().all(|h| h.holds) {
        second
    } else {
        first
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

    /// Filiform Lie algebra `[e1, e_i] = e_{i+1}`.
    fn filiform(n: usize) -> Algebra {
        let mut e = Vec::new();
        for i in 2..n {
            e.push((1, i, i + 1, 1));
            e.push((i, 1, i + 1, -1));
        }
        alg(n, &e)
    }

    #[test]
    fn filiform_satisfies_theorem_and_first_corollary() {
        let a = filiform(5);
        for mode in [CriterionMode::Theorem, CriterionMode::Corollary1] {
            let r = lie_criterion_check(&a, mode).unwrap();
            assert!(r.hypotheses_hold, "{mode}: {:?}", r.hypotheses);
            assert!(r.conclusion_is_lie);
        }
        // No product [e2, y_p] reaches e5.
        let r = lie_criterion_check(&a, CriterionMode::Corollary2).unwrap();
        assert!(!r.hypotheses_hold);
    }

    #[test]
    fn second_corollary_on_two_generator_chain() {
        let mut e = vec![(2, 3, 5, 1), (3, 2, 5, -1)];
        for i in 2..5 {
            e.push((1, i, i + 1, 1));
            e.push((i, 1, i + 1, -1));
        }
        let a = alg(5, &e);
        assert!(a.is_lie().is_lie());
        let r = lie_criterion_check(&a, CriterionMode::Corollary2).unwrap();
        assert!(r.hypotheses_hold, "{:?}", r.hypotheses);
        assert!(r.conclusion_is_lie);
    }

    #[test]
    fn nonzero_square_fails_theorem() {
        let a = alg(3, &[(1, 1, 2, 1), (2, 1, 3, 1)]);
        let r = lie_criterion_check(&a, CriterionMode::Theorem).unwrap();
        assert!(!r.hypotheses_hold);
        assert_eq!(
            r.hypotheses[0].witness.as_deref(),
            Some("[e1,e1] = e2 != 0")
        );
        assert!(!r.conclusion_is_lie);
        assert!(!r.is_counterexample());
    }

    #[test]
    fn requires_leibniz() {
        let a = alg(3, &[(1, 2, 3, 1), (2, 3, 1, 1)]);
        assert!(matches!(
            lie_criterion_check(&a, CriterionMode::Theorem),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn mode_round_trip() {
        for m in [
            CriterionMode::Theorem,
            CriterionMode::Corollary1,
            CriterionMode::Corollary2,
        ] {
            assert_eq!(m.to_string().parse::<CriterionMode>().unwrap(), m);
        }
    }

    #[test]
    fn unit_helper_matches() {
        let e2 = crate::subspace::unit(3, 1);
        assert!(is_basis_vector(&e2, 1));
        assert!(!is_basis_vector(&e2, 2));
    }
}
