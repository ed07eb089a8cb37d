//! Verification suites over grids of catalog instances.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, LieWitness};
use crate::catalog::{
    build_family, canonical_max_length_grading, validate, Family, FamilySpec, Group, ParamKind,
};
use crate::criterion::{lie_criterion_check, CriterionMode};
use crate::error::{Error, Result};
use crate::grading::{max_length_search, verify_grading};
use crate::invariants::{
    characteristic_sequence, fingerprint_with, natural_gradedness_report, CharSequence,
    FingerprintConfig, SamplingConfig,
};
use crate::random::random_unimodular;
use crate::subspace::Subspace;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Suite {
    #[serde(rename = "type1")]
    Type1,
    #[serde(rename = "type2")]
    Type2,
    #[serde(rename = "lie2_1")]
    Lie21,
    #[serde(rename = "ng2_2")]
    Ng22,
    #[serde(rename = "ng2_3")]
    Ng23,
    #[serde(rename = "dim4")]
    Dim4,
    #[serde(rename = "dim5")]
    Dim5,
    #[serde(rename = "criterion")]
    Criterion,
}

impl Suite {
    pub const ALL: &'static [Suite] = &[
        Suite::Type1,
        Suite::Type2,
        Suite::Lie21,
        Suite::Ng22,
        Suite::Ng23,
        Suite::Dim4,
        Suite::Dim5,
        Suite::Criterion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Type1 => "type1",
            Suite::Type2 => "type2",
            Suite::Lie21 => "lie2_1",
            Suite::Ng22 => "ng2_2",
            Suite::Ng23 => "ng2_3",
            Suite::Dim4 => "dim4",
            Suite::Dim5 => "dim5",
            Suite::Criterion => "criterion",
        }
    }

    pub fn families(self) -> Vec<Family> {
        use Family::*;
        match self {
            Suite::Type1 => vec![M1, M2],
            Suite::Type2 => vec![M3, A5TypeII],
            Suite::Lie21 | Suite::Criterion => Family::ALL
                .iter()
                .copied()
                .filter(|f| f.group() == Group::QuasiFiliformLie)
                .collect(),
            Suite::Ng22 => vec![
                A1TypeI, A2TypeI, A3TypeI, A4TypeI, A5TypeI, A6TypeI, NG3, NG4,
            ],
            Suite::Ng23 => vec![
                A1TypeII, A2TypeII, A3TypeII, A4TypeII, A5TypeII, A6TypeII, A7TypeII, A8TypeII,
                NG1, NG2,
            ],
            Suite::Dim4 => vec![N1, N2],
            Suite::Dim5 => vec![Dim5M1, Dim5M2, Dim5M3],
        }
    }

    /// Dimensions used when none are given.
    pub fn default_dims(self) -> RangeInclusive<usize> {
        match self {
            Suite::Dim4 => 4..=4,
            Suite::Dim5 => 5..=5,
            Suite::Criterion => 4..=10,
            _ => 6..=10,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidGrid(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub dims: RangeInclusive<usize>,
    pub seed: u64,
    /// Values tried for parameters with an unrestricted domain. Parameters
    /// with a finite domain use that domain; `r` runs over all admissible
    /// values.
    pub grid: Vec<i64>,
    /// Random basis changes per instance for invariance checks.
    pub basis_changes: usize,
}

impl SuiteConfig {
    pub fn new(dims: RangeInclusive<usize>, seed: u64) -> Self {
        SuiteConfig {
            dims,
            seed,
            grid: vec![0, 1, -1, 2],
            basis_changes: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub tool_version: &'static str,
    pub seed: u64,
    pub dims: String,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Every admissible parameter assignment for `family` at dimension `n`.
pub fn grid_instances(family: Family, n: usize, grid: &[i64]) -> Vec<FamilySpec> {
    if !family.dim_rule().admits(n) {
        return Vec::new();
    }
    let mut specs = vec![FamilySpec::new(family, n)];
    for p in family.params() {
        let values: Vec<i64> = match (&p.values, p.kind) {
            (Some(v), _) => v.clone(),
            (None, ParamKind::Integer) => (1..=n as i64).collect(),
            (None, ParamKind::Scalar) => grid.to_vec(),
        };
        specs = specs
            .into_iter()
            .flat_map(|s| values.iter().map(move |&v| s.clone().with(p.name, v)))
            .collect();
    }
    specs.retain(|s| validate(s).is_ok());
    specs
}

/// Stable per-instance seed.
fn instance_seed(seed: u64, label: &str) -> u64 {
    label.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

struct Checks {
    label: String,
    out: Vec<CheckRecord>,
}

impl Checks {
    fn push(&mut self, what: &str, witness: Option<String>) {
        self.out.push(CheckRecord {
            name: format!("{}: {what}", self.label),
            pass: witness.is_none(),
            witness,
        });
    }

    fn expect_eq<T: PartialEq + fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        let w = (got != want).then(|| format!("got {got:?}, expected {want:?}"));
        self.push(what, w);
    }
}

fn identity(c: &mut Checks, alg: &Algebra) {
    let w = alg
        .leibniz_defect()
        .witness
        .map(|w| alg.describe_defect(&w));
    c.push("leibniz identity", w);
}

fn lie_status(c: &mut Checks, alg: &Algebra, lie: bool) {
    let check = alg.is_lie();
    let w = match (lie, &check.witness) {
        (true, Some(w)) => Some(alg.describe_lie_witness(w)),
        (false, None) => Some("algebra is Lie".to_string()),
        (false, Some(w @ (LieWitness::NotAntisymmetric { .. } | LieWitness::Leibniz(_)))) => {
            Some(format!(
                "no nonzero square, first failure {}",
                alg.describe_lie_witness(w)
            ))
        }
        _ => None,
    };
    c.push(
        if lie {
            "is Lie"
        } else {
            "not Lie (nonzero square)"
        },
        w,
    );
}

fn char_seq(c: &mut Checks, alg: &Algebra, seed: u64, want: Vec<usize>) {
    match characteristic_sequence(alg, &SamplingConfig::with_seed(seed)) {
        Ok(cs) => c.expect_eq(
            "characteristic sequence",
            cs.sequence.to_string(),
            CharSequence(want).to_string(),
        ),
        Err(e) => c.push("characteristic sequence", Some(e.to_string())),
    }
}

fn canonical_grading(c: &mut Checks, alg: &Algebra, family: Family) {
    let n = alg.dim();
    let w = canonical_max_length_grading(family, n)
        .and_then(|g| verify_grading(alg, &g))
        .map_or_else(
            |e| Some(e.to_string()),
            |r| {
                (!(r.is_grading && r.is_connected && r.length == Some(n as u64))).then(|| {
                    format!(
                        "grading={}, connected={}, length={:?}",
                        r.is_grading, r.is_connected, r.length
                    )
                })
            },
        );
    c.push("canonical grading has length n", w);
}

fn searched_length(c: &mut Checks, alg: &Algebra, attains: bool) {
    let n = alg.dim();
    let what = if attains {
        "search attains length n"
    } else {
        "search stays below length n"
    };
    let w = match max_length_search(alg, 2 * n as i64) {
        Ok(r) => {
            let len = r.report.length.unwrap_or(0);
            ((len == n as u64) != attains)
                .then(|| format!("best length {len} at weights {:?}", r.best.weights))
        }
        Err(e) => Some(e.to_string()),
    };
    c.push(what, w);
}

fn invariance(c: &mut Checks, alg: &Algebra, cfg: &SuiteConfig, rng: &mut ChaCha8Rng) {
    let fcfg = FingerprintConfig {
        sampling: SamplingConfig::with_seed(cfg.seed),
        skip_length: true,
        length_bound: None,
    };
    let base = match fingerprint_with(alg, &fcfg) {
        Ok(f) => f,
        Err(e) => {
            return c.push(
                "fingerprint invariant under basis change",
                Some(e.to_string()),
            )
        }
    };
    let mut w = None;
    for t in 0..cfg.basis_changes {
        let p = random_unimodular(alg.dim(), 1, rng);
        let f = alg
            .change_basis(&p)
            .and_then(|b| fingerprint_with(&b, &fcfg));
        match f {
            Ok(f) => {
                if let Some(comp) = base.distinguishing_component(&f) {
                    w = Some(format!("change {t}: {comp} differs"));
                    break;
                }
            }
            Err(e) => {
                w = Some(format!("change {t}: {e}"));
                break;
            }
        }
    }
    c.push("fingerprint invariant under basis change", w);
}

fn natural_gradedness(c: &mut Checks, alg: &Algebra, seed: u64) {
    let series: Vec<usize> = alg
        .lower_central_series()
        .iter()
        .map(Subspace::dim)
        .collect();
    let diffs: Vec<usize> = series.windows(2).map(|w| w[0] - w[1]).collect();
    let w = match natural_gradedness_report(alg, &SamplingConfig::with_seed(seed)) {
        Ok(r) if r.component_dims != diffs => Some(format!(
            "components {:?}, series differences {diffs:?}",
            r.component_dims
        )),
        Ok(r) => r
            .mismatch
            .map(|comp| format!("{comp} differs from the graded algebra")),
        Err(e) => Some(e.to_string()),
    };
    c.push("isomorphic to associated graded", w);
}

fn criterion(c: &mut Checks, alg: &Algebra, cfg: &SuiteConfig, rng: &mut ChaCha8Rng) {
    let w = match lie_criterion_check(alg, CriterionMode::Theorem) {
        Ok(r) if r.hypotheses_hold && r.conclusion_is_lie => None,
        Ok(r) => Some(match r.hypotheses.iter().find(|h| !h.holds) {
            Some(h) => format!("{}: {}", h.name, h.witness.clone().unwrap_or_default()),
            None => "hypotheses hold but not Lie".to_string(),
        }),
        Err(e) => Some(e.to_string()),
    };
    c.push("criterion hypotheses hold and algebra is Lie", w);

    let mut w = None;
    for t in 0..cfg.basis_changes {
        let p = random_unimodular(alg.dim(), 1, rng);
        match alg
            .change_basis(&p)
            .and_then(|b| lie_criterion_check(&b, CriterionMode::Theorem))
        {
            Ok(r) if r.is_counterexample() => {
                w = Some(format!("change {t}: hypotheses hold but not Lie"));
                break;
            }
            Ok(_) => {}
            Err(e) => {
                w = Some(format!("change {t}: {e}"));
                break;
            }
        }
    }
    c.push("no counterexample under basis change", w);
}

fn run_instance(suite: Suite, spec: &FamilySpec, cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let label = spec.label();
    let mut c = Checks {
        label: label.clone(),
        out: Vec::new(),
    };
    let alg = match build_family(spec) {
        Ok(a) => a,
        Err(e) => {
            c.push("build", Some(e.to_string()));
            return c.out;
        }
    };
    let n = spec.dim;
    let family = spec.family;
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(cfg.seed, &label));
    identity(&mut c, &alg);
    match suite {
        Suite::Type1 | Suite::Type2 | Suite::Dim5 if family.has_canonical_grading() => {
            lie_status(&mut c, &alg, false);
            c.expect_eq("nilindex", alg.nilindex(), Some(n - 2));
            char_seq(&mut c, &alg, cfg.seed, vec![n - 2, 2]);
            canonical_grading(&mut c, &alg, family);
            searched_length(&mut c, &alg, true);
            invariance(&mut c, &alg, cfg, &mut rng);
        }
        Suite::Type2 => {
            lie_status(&mut c, &alg, false);
            searched_length(&mut c, &alg, false);
        }
        Suite::Dim4 => {
            lie_status(&mut c, &alg, false);
            c.expect_eq("nilindex", alg.nilindex(), Some(2));
            canonical_grading(&mut c, &alg, family);
            searched_length(&mut c, &alg, true);
        }
        Suite::Lie21 => {
            lie_status(&mut c, &alg, true);
            c.expect_eq("nilindex", alg.nilindex(), Some(n - 2));
            char_seq(&mut c, &alg, cfg.seed, vec![n - 2, 1, 1]);
            invariance(&mut c, &alg, cfg, &mut rng);
        }
        Suite::Ng22 | Suite::Ng23 if !family.is_template() => {
            lie_status(&mut c, &alg, false);
            c.expect_eq("nilindex", alg.nilindex(), Some(n - 2));
            natural_gradedness(&mut c, &alg, cfg.seed);
        }
        Suite::Criterion => criterion(&mut c, &alg, cfg, &mut rng),
        _ => {}
    }
    c.out
}

pub fn run_verification_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.dims.is_empty() {
        return Err(Error::InvalidGrid(format!(
            "empty dimension range {}..{}",
            cfg.dims.start(),
            cfg.dims.end()
        )));
    }
    if cfg.grid.is_empty() {
        return Err(Error::InvalidGrid("empty parameter grid".to_string()));
    }
    let mut specs = Vec::new();
    for family in suite.families() {
        for n in cfg.dims.clone() {
            specs.extend(grid_instances(family, n, &cfg.grid));
        }
    }
    if specs.is_empty() {
        return Err(Error::InvalidGrid(format!(
            "no admissible instances for {suite} in dimensions {}..{}",
            cfg.dims.start(),
            cfg.dims.end()
        )));
    }
    let mut keyed: Vec<((Family, usize, String, usize), CheckRecord)> = specs
        .par_iter()
        .flat_map_iter(|s| {
            let key = (s.family, s.dim, s.label());
            run_instance(suite, s, cfg)
                .into_iter()
                .enumerate()
                .map(move |(i, r)| ((key.0, key.1, key.2.clone(), i), r))
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let checks: Vec<CheckRecord> = keyed.into_iter().map(|(_, r)| r).collect();
    let failed = checks.iter().filter(|c| !c.pass).count();
    Ok(SuiteReport {
        suite,
        tool_version: TOOL_VERSION,
        seed: cfg.seed,
        dims: format!("{}..{}", cfg.dims.start(), cfg.dims.end()),
        instances: specs.len(),
        passed: checks.len() - failed,
        failed,
        pass: failed == 0,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_respects_domains() {
        assert_eq!(grid_instances(Family::M1, 6, &[0, 1, -1, 2]).len(), 2);
        assert_eq!(grid_instances(Family::M2, 6, &[0, 1, -1, 2]).len(), 4);
        assert_eq!(grid_instances(Family::A5TypeI, 6, &[0]).len(), 2);
        assert_eq!(grid_instances(Family::A8TypeII, 7, &[0]).len(), 3);
        assert!(grid_instances(Family::A4TypeI, 6, &[0, 1])
            .iter()
            .all(|s| !s.params["lambda"].is_zero()));
        assert!(grid_instances(Family::A5TypeII, 6, &[0]).is_empty());
    }

    #[test]
    fn dim4_suite_passes() {
        let r = run_verification_suite(Suite::Dim4, &SuiteConfig::new(4..=4, 1)).unwrap();
        assert!(r.pass, "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.instances, 5);
    }

    #[test]
    fn inadmissible_range_is_invalid() {
        let e = run_verification_suite(Suite::Dim4, &SuiteConfig::new(6..=8, 1));
        assert!(matches!(e, Err(Error::InvalidGrid(_))));
        assert_eq!("ng2_3".parse::<Suite>().unwrap(), Suite::Ng23);
    }
}
