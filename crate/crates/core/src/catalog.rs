//! Named families of nilpotent Leibniz and Lie algebras.
//!
//! Tables are written with 1-based indices in the families' own labelling and
//! converted on construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::grading::GradingAssignment;
use crate::scalar::Scalar;

macro_rules! families {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Family { $($variant),* }

        impl Family {
            pub const ALL: &'static [Family] = &[$(Family::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(Family::$variant => $name),* }
            }
        }
    };
}

families! {
    L => "L",
    Q => "Q",
    TauN3 => "tau_n3",
    TauN4 => "tau_n4",
    Eps73 => "eps73",
    Eps195 => "eps195",
    Eps295 => "eps295",
    Ln1PlusC => "Ln1_plus_C",
    Qn1PlusC => "Qn1_plus_C",
    A1TypeI => "A1_typeI",
    A2TypeI => "A2_typeI",
    A3TypeI => "A3_typeI",
    A4TypeI => "A4_typeI",
    A5TypeI => "A5_typeI",
    A6TypeI => "A6_typeI",
    A1TypeII => "A1_typeII",
    A2TypeII => "A2_typeII",
    A3TypeII => "A3_typeII",
    A4TypeII => "A4_typeII",
    A5TypeII => "A5_typeII",
    A6TypeII => "A6_typeII",
    A7TypeII => "A7_typeII",
    A8TypeII => "A8_typeII",
    NG1 => "NG1",
    NG2 => "NG2",
    NG3 => "NG3",
    NG4 => "NG4",
    M1 => "M1",
    M2 => "M2",
    M3 => "M3",
    N1 => "N1",
    N2 => "N2",
    Dim5M1 => "dim5_M1",
    Dim5M2 => "dim5_M2",
    Dim5M3 => "dim5_M3",
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    /// Naturally graded quasi-filiform Lie algebras.
    QuasiFiliformLie,
    NaturallyGradedTypeI,
    NaturallyGradedTypeII,
    /// Quasi-filiform families with free lower-order coefficients.
    Template,
    MaximumLengthTypeI,
    MaximumLengthTypeII,
    MaximumLengthDim4,
    MaximumLengthDim5,
}

impl Family {
    pub fn group(self) -> Group {
        use Family::*;
        match self {
            L | Q | TauN3 | TauN4 | Eps73 | Eps195 | Eps295 | Ln1PlusC | Qn1PlusC => {
                Group::QuasiFiliformLie
            }
            A1TypeI | A2TypeI | A3TypeI | A4TypeI | A5TypeI | A6TypeI => {
                Group::NaturallyGradedTypeI
            }
            A1TypeII | A2TypeII | A3TypeII | A4TypeII | A5TypeII | A6TypeII | A7TypeII
            | A8TypeII => Group::NaturallyGradedTypeII,
            NG1 | NG2 | NG3 | NG4 => Group::Template,
            M1 | M2 => Group::MaximumLengthTypeI,
            M3 => Group::MaximumLengthTypeII,
            N1 | N2 => Group::MaximumLengthDim4,
            Dim5M1 | Dim5M2 | Dim5M3 => Group::MaximumLengthDim5,
        }
    }

    pub fn is_lie(self) -> bool {
        self.group() == Group::QuasiFiliformLie
    }

    pub fn is_template(self) -> bool {
        self.group() == Group::Template
    }

    pub fn has_canonical_grading(self) -> bool {
        matches!(
            self.group(),
            Group::MaximumLengthTypeI
                | Group::MaximumLengthTypeII
                | Group::MaximumLengthDim4
                | Group::MaximumLengthDim5
        )
    }

    fn title(self) -> &'static str {
        use Family::*;
        match self {
            L => "L(n,r)",
            Q => "Q(n,r)",
            TauN3 => "tau(n,n-3)",
            TauN4 => "tau(n,n-4)",
            Eps73 => "eps(7,3)",
            Eps195 => "eps^1(9,5)",
            Eps295 => "eps^2(9,5)",
            Ln1PlusC => "L_(n-1) + C",
            Qn1PlusC => "Q_(n-1) + C",
            A1TypeI => "A^(1,lambda)",
            A2TypeI => "A^(2,lambda)",
            A3TypeI => "A^(3,lambda)",
            A4TypeI => "A^(4,lambda)",
            A5TypeI => "A^(5,lambda,mu)",
            A6TypeI => "A^6",
            A1TypeII => "A^1",
            A2TypeII => "A^2",
            A3TypeII => "A^3",
            A4TypeII => "A^4",
            A5TypeII => "A^5",
            A6TypeII => "A^(6,lambda)",
            A7TypeII => "A^(7,lambda)",
            A8TypeII => "A^(8,lambda,mu)",
            NG1 => "NG1~",
            NG2 => "NG2~",
            NG3 => "NG3~",
            NG4 => "NG4~",
            M1 => "M^(1,delta)",
            M2 => "M^(2,lambda)",
            M3 => "M^(3,alpha)",
            N1 => "N^(1,alpha)",
            N2 => "N^2",
            Dim5M1 => "M^(1,0), dim 5",
            Dim5M2 => "M^(2,lambda), dim 5",
            Dim5M3 => "M^(3,0), dim 5",
        }
    }
}

/// Allowed dimensions of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimRule {
    pub min: usize,
    /// `Some(n)` when only `n` is allowed.
    pub fixed: Option<usize>,
    pub parity: Option<Parity>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl DimRule {
    const fn at_least(min: usize) -> Self {
        DimRule {
            min,
            fixed: None,
            parity: None,
        }
    }

    const fn odd(min: usize) -> Self {
        DimRule {
            min,
            fixed: None,
            parity: Some(Parity::Odd),
        }
    }

    const fn even(min: usize) -> Self {
        DimRule {
            min,
            fixed: None,
            parity: Some(Parity::Even),
        }
    }

    const fn exactly(n: usize) -> Self {
        DimRule {
            min: n,
            fixed: Some(n),
            parity: None,
        }
    }

    pub fn admits(&self, n: usize) -> bool {
        n >= self.min
            && self.fixed.is_none_or(|f| f == n)
            && match self.parity {
                Some(Parity::Even) => n.is_multiple_of(2),
                Some(Parity::Odd) => n % 2 == 1,
                None => true,
            }
    }

    fn describe(&self) -> String {
        if let Some(f) = self.fixed {
            return format!("n = {f}");
        }
        match self.parity {
            Some(Parity::Even) => format!("n >= {}, n even", self.min),
            Some(Parity::Odd) => format!("n >= {}, n odd", self.min),
            None => format!("n >= {}", self.min),
        }
    }
}

impl Family {
    pub fn dim_rule(self) -> DimRule {
        use Family::*;
        match self {
            L => DimRule::at_least(5),
            Q | TauN4 | Qn1PlusC => DimRule::odd(7),
            TauN3 => DimRule::even(6),
            Eps73 => DimRule::exactly(7),
            Eps195 | Eps295 => DimRule::exactly(9),
            Ln1PlusC => DimRule::at_least(4),
            A5TypeII | A6TypeII | A7TypeII | A8TypeII | NG2 => DimRule::odd(7),
            A1TypeI | A2TypeI | A3TypeI | A4TypeI | A5TypeI | A6TypeI | A1TypeII | A2TypeII
            | A3TypeII | A4TypeII | NG1 | NG3 | NG4 | M1 | M2 | M3 => DimRule::at_least(6),
            N1 | N2 => DimRule::exactly(4),
            Dim5M1 | Dim5M2 | Dim5M3 => DimRule::exactly(5),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Integer,
    Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamInfo {
    pub name: &'static str,
    pub kind: ParamKind,
    pub domain: &'static str,
    /// Finite list of admissible values, when the domain is finite.
    pub values: Option<Vec<i64>>,
    /// Value used when the parameter is omitted; `None` means required.
    pub default: Option<i64>,
}

fn scalar_param(name: &'static str, domain: &'static str, values: Option<&[i64]>) -> ParamInfo {
    ParamInfo {
        name,
        kind: ParamKind::Scalar,
        domain,
        values: values.map(<[i64]>::to_vec),
        default: None,
    }
}

fn free_param(name: &'static str) -> ParamInfo {
    ParamInfo {
        name,
        kind: ParamKind::Scalar,
        domain: "any",
        values: None,
        default: Some(0),
    }
}

impl Family {
    pub fn params(self) -> Vec<ParamInfo> {
        use Family::*;
        let r = |domain| ParamInfo {
            name: "r",
            kind: ParamKind::Integer,
            domain,
            values: None,
            default: None,
        };
        match self {
            L => vec![r("3 <= r <= 2*floor((n-1)/2) - 1, r odd")],
            Q => vec![r("3 <= r <= n-4, r odd")],
            A1TypeI | M2 | Dim5M2 => vec![scalar_param("lambda", "any", None)],
            A2TypeI => vec![scalar_param("lambda", "lambda in {0,1}", Some(&[0, 1]))],
            A3TypeI => vec![scalar_param(
                "lambda",
                "lambda in {-1,0,1}",
                Some(&[-1, 0, 1]),
            )],
            A4TypeI | A7TypeII => vec![scalar_param("lambda", "lambda != 0", None)],
            A5TypeI => vec![
                scalar_param("lambda", "(lambda,mu) = (1,1) or (2,4)", Some(&[1, 2])),
                scalar_param("mu", "(lambda,mu) = (1,1) or (2,4)", Some(&[1, 4])),
            ],
            A6TypeII => vec![scalar_param("lambda", "lambda in {1,2}", Some(&[1, 2]))],
            A8TypeII => vec![
                scalar_param(
                    "lambda",
                    "(lambda,mu) in {(-2,1),(2,1),(4,2)}",
                    Some(&[-2, 2, 4]),
                ),
                scalar_param("mu", "(lambda,mu) in {(-2,1),(2,1),(4,2)}", Some(&[1, 2])),
            ],
            NG1 | NG2 => vec![free_param("lambda"), free_param("mu")],
            NG3 => vec![free_param("alpha"), free_param("beta"), free_param("gamma")],
            M1 => vec![scalar_param("delta", "delta in {0,1}", Some(&[0, 1]))],
            M3 => vec![scalar_param(
                "alpha",
                "alpha in {0,1} if n = 6, alpha = 0 if n > 6",
                Some(&[0, 1]),
            )],
            N1 => vec![scalar_param("alpha", "any", None)],
            _ => vec![],
        }
    }

    /// Departures from the literal product list that make the table satisfy
    /// the Leibniz identity. Empty for most families.
    pub fn corrections(self) -> &'static [&'static str] {
        use Family::*;
        match self {
            Eps73 => &["[x0,xi] = x(i+1) extended from 1 <= i <= 3 to 1 <= i <= 4"],
            Eps195 | Eps295 => &["[x0,xi] = x(i+1) extended from 1 <= i <= 5 to 1 <= i <= 6"],
            M3 | A5TypeII => &["[y1,yi] = -y(i+1) extended from 4 <= i to 3 <= i"],
            Dim5M3 => &["[y1,y3] = -y4 added"],
            NG2 => &["sign of [ei,e(n+2-i)] taken as (-1)^i instead of (-1)^n"],
            _ => &[],
        }
    }

    /// Basis labels in declaration order.
    pub fn basis_labels(self, n: usize) -> Vec<String> {
        if self.is_lie() {
            let mut v: Vec<String> = (0..n - 1).map(|k| format!("x{k}")).collect();
            v.push("y".to_string());
            v
        } else if self.is_template() {
            (1..=n).map(|i| format!("e{i}")).collect()
        } else {
            (1..=n).map(|i| format!("y{i}")).collect()
        }
    }
}

/// A family together with a dimension and parameter values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub dim: usize,
    /// Named parameters and, for templates, coefficients `c_i_j_k`.
    pub params: BTreeMap<String, Scalar>,
}

impl FamilySpec {
    pub fn new(family: Family, dim: usize) -> Self {
        FamilySpec {
            family,
            dim,
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, value: impl Into<Scalar>) -> Self {
        self.params.insert(name.to_string(), value.into());
        self
    }

    /// `M2(n=6, lambda=1)`
    pub fn label(&self) -> String {
        let mut parts = vec![format!("n={}", self.dim)];
        parts.extend(self.params.iter().map(|(k, v)| format!("{k}={v}")));
        format!("{}({})", self.family, parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyInfo {
    pub name: Family,
    pub title: &'static str,
    pub group: Group,
    pub lie: bool,
    pub dims: DimRule,
    pub dim_constraint: String,
    pub params: Vec<ParamInfo>,
    pub corrections: &'static [&'static str],
    pub canonical_grading: bool,
    /// Labels for the smallest admissible dimension.
    pub basis_example: Vec<String>,
}

impl Family {
    pub fn info(self) -> FamilyInfo {
        let dims = self.dim_rule();
        let n0 = (dims.min..)
            .find(|&n| dims.admits(n))
            .expect("some dimension is admissible");
        FamilyInfo {
            name: self,
            title: self.title(),
            group: self.group(),
            lie: self.is_lie(),
            dims,
            dim_constraint: dims.describe(),
            params: self.params(),
            corrections: self.corrections(),
            canonical_grading: self.has_canonical_grading(),
            basis_example: self.basis_labels(n0),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyFilter {
    /// Only families whose dimension is fixed to this value.
    pub fixed_dim: Option<usize>,
    /// Only families admitting this dimension.
    pub admits_dim: Option<usize>,
    pub group: Option<Group>,
}

pub fn list_families(filter: &FamilyFilter) -> Vec<FamilyInfo> {
    Family::ALL
        .iter()
        .copied()
        .filter(|f| {
            filter
                .fixed_dim
                .is_none_or(|n| f.dim_rule().fixed == Some(n))
        })
        .filter(|f| filter.admits_dim.is_none_or(|n| f.dim_rule().admits(n)))
        .filter(|f| filter.group.is_none_or(|g| f.group() == g))
        .map(Family::info)
        .collect()
}

struct Table {
    n: usize,
    entries: Vec<(usize, usize, usize, Scalar)>,
}

impl Table {
    fn new(n: usize) -> Self {
        Table {
            n,
            entries: Vec::new(),
        }
    }

    /// `[e_i, e_j] += c e_k`, 1-based.
    fn add(&mut self, i: usize, j: usize, k: usize, c: impl Into<Scalar>) {
        let c = c.into();
        if !c.is_zero() {
            self.entries.push((i, j, k, c));
        }
    }

    /// Adds `[e_j, e_i] = −[e_i, e_j]` for every listed pair whose mirror is
    /// not listed.
    fn antisymmetrize(mut self) -> Self {
        let listed: BTreeSet<(usize, usize)> = self.entries.iter().map(|e| (e.0, e.1)).collect();
        let mirrored: Vec<_> = self
            .entries
            .iter()
            .filter(|e| e.0 != e.1 && !listed.contains(&(e.1, e.0)))
            .map(|(i, j, k, c)| (*j, *i, *k, -c))
            .collect();
        self.entries.extend(mirrored);
        self
    }

    fn build(self, labels: Vec<String>) -> Result<Algebra> {
        let n = self.n;
        Algebra::from_entries(
            n,
            Some(labels),
            self.entries
                .into_iter()
                .map(|(i, j, k, c)| (i - 1, j - 1, k - 1, c)),
        )
    }
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

struct Params<'a> {
    spec: &'a FamilySpec,
}

impl Params<'_> {
    fn err(&self, param: &str, constraint: &str) -> Error {
        Error::FamilyParameter {
            family: self.spec.family.name().to_string(),
            param: param.to_string(),
            constraint: constraint.to_string(),
        }
    }

    fn scalar(&self, name: &str) -> Result<Scalar> {
        match self.spec.params.get(name) {
            Some(v) => Ok(v.clone()),
            None => {
                let info = self
                    .spec
                    .family
                    .params()
                    .into_iter()
                    .find(|p| p.name == name);
                match info.and_then(|p| p.default) {
                    Some(d) => Ok(Scalar::from(d)),
                    None => Err(self.err(name, "required")),
                }
            }
        }
    }

    fn int(&self, name: &str) -> Result<i64> {
        let v = self.scalar(name)?;
        v.to_integer()
            .and_then(|x| x.to_i64())
            .ok_or_else(|| self.err(name, "must be an integer"))
    }

    fn one_of(&self, name: &str, allowed: &[i64], constraint: &str) -> Result<Scalar> {
        let v = self.scalar(name)?;
        if allowed.iter().any(|&a| Scalar::from(a) == v) {
            Ok(v)
        } else {
            Err(self.err(name, constraint))
        }
    }

    fn pair(&self, allowed: &[(i64, i64)], constraint: &str) -> Result<(Scalar, Scalar)> {
        let l = self.scalar("lambda")?;
        let m = self.scalar("mu")?;
        if allowed
            .iter()
            .any(|&(a, b)| Scalar::from(a) == l && Scalar::from(b) == m)
        {
            Ok((l, m))
        } else {
            Err(self.err("lambda", constraint))
        }
    }
}

/// Coefficient slots `(i, j, k)` (1-based) a template accepts as `c_i_j_k`.
pub fn template_slots(family: Family, n: usize) -> Vec<(usize, usize, usize)> {
    let mut s = BTreeSet::new();
    let mut range = |i: usize, j: usize, lo: usize, hi: usize| {
        for k in lo.max(1)..=hi.min(n) {
            s.insert((i, j, k));
        }
    };
    match family {
        Family::NG1 => {
            range(1, 3, n, n);
            range(3, 3, n, n);
            for i in 4..n {
                range(1, i, n, n);
            }
            for i in 1..=n {
                if i != 2 && i != n {
                    range(2, i, n, n);
                }
            }
            for i in 1..=n {
                for j in 1..=n {
                    let excluded =
                        matches!((i, j), (1, 1) | (1, 3) | (3, 3) | (3, 1)) || i == 1 || j == 1;
                    if !excluded {
                        range(i, j, i + j - 1, n);
                    }
                }
            }
        }
        Family::NG2 => {
            range(1, 1, n, n);
            range(1, 3, n, n);
            range(3, 3, n, n);
            for i in 4..n {
                range(1, i, n, n);
            }
            for i in 1..=n {
                for j in 1..=n {
                    let mirror = (3..n).any(|k| (i, j) == (k, n + 2 - k));
                    if !matches!((i, j), (1, 1) | (1, 3) | (3, 3) | (3, 1)) && !mirror {
                        range(i, j, i + j - 1, n);
                    }
                }
            }
        }
        Family::NG3 => {
            for i in 1..=n - 3 {
                range(i, 1, i + 2, n - 2);
            }
            range(n - 1, 1, 3, n - 2);
            range(1, n - 1, 3, n - 2);
            range(n - 1, n - 1, 3, n - 2);
            for i in 2..=n - 3 {
                range(i, n - 1, i + 2, n - 2);
            }
            range(n, n - 1, 4, n - 2);
        }
        Family::NG4 => {
            for i in 1..=n - 3 {
                range(i, 1, i + 2, n - 2);
            }
            range(n - 1, 1, 3, n - 2);
            range(1, n - 1, 3, n - 2);
            range(n - 1, n - 1, 3, n - 2);
            range(n - 1, n, 4, n - 2);
            for i in 2..=n - 2 {
                for j in 2..=n - 2 {
                    range(i, j, i + j + 1, n);
                }
            }
            for i in 2..=n - 2 {
                range(i, n - 1, i + 2, n - 2);
            }
            range(n, n - 1, 4, n - 2);
            for j in [2, 5] {
                range(j, n, 5, n - 2);
            }
            for i in std::iter::once(1).chain(3..=n - 2) {
                range(i, n, i + 3, n - 2);
            }
            range(n, n, 5, n - 2);
        }
        _ => {}
    }
    s.into_iter().collect()
}

fn parse_slot(name: &str) -> Option<(usize, usize, usize)> {
    let rest = name.strip_prefix("c_")?;
    let mut it = rest.split('_').map(|p| p.parse::<usize>().ok());
    let t = (it.next()??, it.next()??, it.next()??);
    it.next().is_none().then_some(t)
}

/// Checks dimension and parameter names without building.
pub fn validate(spec: &FamilySpec) -> Result<()> {
    build_table(spec, true).map(|_| ())
}

/// The family's table, with the corrections listed in its metadata applied.
pub fn build_family(spec: &FamilySpec) -> Result<Algebra> {
    build_table(spec, true)?.build(spec.family.basis_labels(spec.dim))
}

/// The family's table exactly as printed, without corrections.
pub fn build_family_printed(spec: &FamilySpec) -> Result<Algebra> {
    build_table(spec, false)?.build(spec.family.basis_labels(spec.dim))
}

fn build_table(spec: &FamilySpec, corrected: bool) -> Result<Table> {
    use Family::*;
    let f = spec.family;
    let n = spec.dim;
    let rule = f.dim_rule();
    if !rule.admits(n) {
        return Err(Error::FamilyDimension {
            family: f.name().to_string(),
            dim: n,
            constraint: rule.describe(),
        });
    }
    let known: Vec<&str> = f.params().iter().map(|p| p.name).collect();
    let slots: BTreeSet<(usize, usize, usize)> = if f.is_template() {
        template_slots(f, n).into_iter().collect()
    } else {
        BTreeSet::new()
    };
    for name in spec.params.keys() {
        if known.contains(&name.as_str()) {
            continue;
        }
        match parse_slot(name) {
            Some(slot) if f.is_template() => {
                if !slots.contains(&slot) {
                    return Err(Error::FamilyParameter {
                        family: f.name().to_string(),
                        param: name.clone(),
                        constraint: "not a free coefficient position of this template".to_string(),
                    });
                }
            }
            _ => {
                return Err(Error::UnknownParameter {
                    family: f.name().to_string(),
                    param: name.clone(),
                })
            }
        }
    }
    let p = Params { spec };
    let mut t = Table::new(n);
    // Lie families: x_k is index k+1, y is index n.
    let x = |k: usize| k + 1;
    let y = n;
    match f {
        L | Q => {
            let r = p.int("r")?;
            let hi = if f == L {
                2 * ((n as i64 - 1) / 2) - 1
            } else {
                n as i64 - 4
            };
            let constraint = if f == L {
                "3 <= r <= 2*floor((n-1)/2) - 1, r odd"
            } else {
                "3 <= r <= n-4, r odd"
            };
            if r < 3 || r > hi {
                return Err(p.err("r", constraint));
            }
            if r % 2 == 0 {
                return Err(p.err("r", "r odd"));
            }
            let r = r as usize;
            for i in 1..=n - 3 {
                t.add(x(0), x(i), x(i + 1), 1);
            }
            for i in 1..=(r - 1) / 2 {
                t.add(x(i), x(r - i), y, sign(i - 1));
            }
            if f == Q {
                for i in 1..=(n - 3) / 2 {
                    t.add(x(i), x(n - 2 - i), x(n - 2), sign(i - 1));
                }
            }
            t = t.antisymmetrize();
        }
        TauN3 => {
            for i in 1..=n - 3 {
                t.add(x(0), x(i), x(i + 1), 1);
            }
            t.add(x(n - 1), x(1), x(n - 2), Scalar::rational(n as i64 - 4, 2));
            for i in 1..=(n - 4) / 2 {
                t.add(x(i), x(n - 3 - i), x(n - 3), sign(i - 1));
                t.add(x(i), x(n - 3 - i), x(n - 1), sign(i - 1));
                t.add(
                    x(i),
                    x(n - 2 - i),
                    x(n - 2),
                    Scalar::rational(sign(i - 1) * (n as i64 - 2 - 2 * i as i64), 2),
                );
            }
            t = t.antisymmetrize();
        }
        TauN4 => {
            let ni = n as i64;
            for i in 1..=n - 3 {
                t.add(x(0), x(i), x(i + 1), 1);
            }
            for i in 1..=2 {
                t.add(x(n - 1), x(i), x(n - 4 + i), Scalar::rational(ni - 5, 2));
            }
            for i in 1..=(n - 5) / 2 {
                t.add(x(i), x(n - 4 - i), x(n - 4), sign(i - 1));
                t.add(x(i), x(n - 4 - i), x(n - 1), sign(i - 1));
                t.add(
                    x(i),
                    x(n - 3 - i),
                    x(n - 3),
                    Scalar::rational(sign(i - 1) * (ni - 3 - 2 * i as i64), 2),
                );
            }
            for i in 2..=(n - 3) / 2 {
                let ii = i as i64;
                t.add(
                    x(i),
                    x(n - 2 - i),
                    x(n - 2),
                    Scalar::rational(sign(i) * (ii - 1) * (ni - 3 - ii), 2),
                );
            }
            t = t.antisymmetrize();
        }
        Eps73 => {
            let top = if corrected { 4 } else { 3 };
            for i in 1..=top {
                t.add(x(0), x(i), x(i + 1), 1);
            }
            for i in 1..=2 {
                t.add(y, x(i), x(i + 3), 1);
            }
            t.add(x(1), x(2), x(3), 1);
            t.add(x(1), x(2), y, 1);
            for i in 3..=4 {
                t.add(x(1), x(i), x(i + 1), 1);
            }
            t = t.antisymmetrize();
        }
        Eps195 | Eps295 => {
            let first = f == Eps195;
            let top = if corrected { 6 } else { 5 };
            for i in 1..=top {
                t.add(x(0), x(i), x(i + 1), 1);
            }
            for i in 1..=2 {
                t.add(y, x(i), x(i + 5), 2);
            }
            t.add(x(1), x(4), x(5), 1);
            t.add(x(1), x(4), y, 1);
            t.add(x(1), x(5), x(6), 2);
            t.add(x(1), x(6), x(7), if first { 3 } else { 1 });
            t.add(x(2), x(3), x(5), -1);
            t.add(x(2), x(3), y, -1);
            t.add(x(2), x(4), x(6), -1);
            t.add(x(2), x(5), x(7), if first { -1 } else { 1 });
            if !first {
                t.add(x(3), x(4), x(7), -2);
            }
            t = t.antisymmetrize();
        }
        Ln1PlusC | Qn1PlusC => {
            for i in 1..=n - 3 {
                t.add(x(0), x(i), x(i + 1), 1);
            }
            if f == Qn1PlusC {
                for i in 1..=(n - 3) / 2 {
                    t.add(x(i), x(n - 2 - i), x(n - 2), sign(i - 1));
                }
            }
            t = t.antisymmetrize();
        }
        A1TypeI | A2TypeI | A3TypeI | A4TypeI | A5TypeI | A6TypeI => {
            for i in 1..=n - 3 {
                t.add(i, 1, i + 1, 1);
            }
            t.add(n - 1, 1, n, 1);
            if matches!(f, A3TypeI | A4TypeI | A5TypeI) {
                t.add(n - 1, 1, 2, 1);
            }
            match f {
                A1TypeI => t.add(1, n - 1, n, p.scalar("lambda")?),
                A2TypeI => {
                    t.add(1, n - 1, n, p.one_of("lambda", &[0, 1], "lambda in {0,1}")?);
                    t.add(n - 1, n - 1, n, 1);
                }
                A3TypeI => t.add(
                    1,
                    n - 1,
                    n,
                    p.one_of("lambda", &[-1, 0, 1], "lambda in {-1,0,1}")?,
                ),
                A4TypeI => {
                    let l = p.scalar("lambda")?;
                    if l.is_zero() {
                        return Err(p.err("lambda", "lambda != 0"));
                    }
                    t.add(n - 1, n - 1, n, l);
                }
                A5TypeI => {
                    let (l, m) = p.pair(&[(1, 1), (2, 4)], "(lambda,mu) = (1,1) or (2,4)")?;
                    t.add(1, n - 1, n, l);
                    t.add(n - 1, n - 1, n, m);
                }
                _ => {
                    t.add(1, n - 1, n, -1);
                    t.add(n - 1, n - 1, 2, 1);
                    t.add(n - 1, n, 3, 1);
                }
            }
        }
        A1TypeII | A2TypeII | A3TypeII | A4TypeII | A5TypeII | A6TypeII | A7TypeII | A8TypeII => {
            t.add(1, 1, 2, 1);
            for i in 3..=n - 1 {
                t.add(i, 1, i + 1, 1);
            }
            // [y1, y3] = −y4 is part of the list for A1, A3 and A7, and of
            // the corrected A5.
            let from3 = matches!(f, A1TypeII | A3TypeII | A7TypeII) || (f == A5TypeII && corrected);
            let start = if from3 { 3 } else { 4 };
            for i in start..=n - 1 {
                t.add(1, i, i + 1, -1);
            }
            match f {
                A2TypeII | A4TypeII | A6TypeII | A8TypeII => {
                    let l = match f {
                        A2TypeII => Scalar::one(),
                        A4TypeII => Scalar::from(2),
                        A6TypeII => p.one_of("lambda", &[1, 2], "lambda in {1,2}")?,
                        _ => {
                            let (l, m) = p.pair(
                                &[(-2, 1), (2, 1), (4, 2)],
                                "(lambda,mu) in {(-2,1),(2,1),(4,2)}",
                            )?;
                            t.add(3, 3, 2, m);
                            l
                        }
                    };
                    t.add(1, 3, 2, l);
                    t.add(1, 3, 4, -1);
                }
                A7TypeII => {
                    let l = p.scalar("lambda")?;
                    if l.is_zero() {
                        return Err(p.err("lambda", "lambda != 0"));
                    }
                    t.add(3, 3, 2, l);
                }
                _ => {}
            }
            if matches!(f, A3TypeII | A4TypeII) {
                t.add(3, 3, 2, 1);
            }
            if matches!(f, A5TypeII | A6TypeII | A7TypeII | A8TypeII) {
                for i in 3..=n - 1 {
                    t.add(i, n + 2 - i, n, sign(i));
                }
            }
        }
        NG1 | NG2 => {
            t.add(1, 1, 2, 1);
            for i in 3..=n - 1 {
                t.add(i, 1, i + 1, 1);
            }
            t.add(1, 3, 2, p.scalar("lambda")?);
            t.add(1, 3, 4, -1);
            t.add(3, 3, 2, p.scalar("mu")?);
            for i in 4..=n - 1 {
                t.add(1, i, i + 1, -1);
            }
            if f == NG2 {
                for i in 3..=n - 1 {
                    t.add(i, n + 2 - i, n, if corrected { sign(i) } else { sign(n) });
                }
            }
        }
        NG3 => {
            for i in 1..=n - 3 {
                t.add(i, 1, i + 1, 1);
            }
            t.add(n - 1, 1, n, 1);
            t.add(n - 1, 1, 2, p.scalar("alpha")?);
            t.add(1, n - 1, n, p.scalar("beta")?);
            t.add(n - 1, n - 1, n, p.scalar("gamma")?);
        }
        NG4 => {
            for i in 1..=n - 3 {
                t.add(i, 1, i + 1, 1);
            }
            t.add(n - 1, 1, n, 1);
            t.add(1, n - 1, n, -1);
            t.add(n - 1, n - 1, 2, 1);
            t.add(n - 1, n, 3, 1);
        }
        M1 => {
            let d = p.one_of("delta", &[0, 1], "delta in {0,1}")?;
            t.add(1, 1, n, 1);
            t.add(n - 1, 1, 2, 1);
            for i in 2..=n - 3 {
                t.add(i, 1, i + 1, 1);
            }
            t.add(n - 1, n - 1, 4, d.clone());
            for i in 2..=n - 5 {
                t.add(i, n - 1, 3 + i, d.clone());
            }
        }
        M2 | Dim5M2 => {
            for i in 1..=n - 3 {
                t.add(i, 1, i + 1, 1);
            }
            t.add(n - 1, 1, n, 1);
            t.add(1, n - 1, n, p.scalar("lambda")?);
        }
        M3 => {
            let a = p.scalar("alpha")?;
            let ok = if n == 6 {
                a.is_zero() || a.is_one()
            } else {
                a.is_zero()
            };
            if !ok {
                let c = if n == 6 {
                    "alpha in {0,1} if n = 6"
                } else {
                    "alpha = 0 if n > 6"
                };
                return Err(p.err("alpha", c));
            }
            t.add(1, 1, 2, 1);
            for i in 3..=n - 1 {
                t.add(i, 1, i + 1, 1);
            }
            for i in (if corrected { 3 } else { 4 })..=n - 1 {
                t.add(1, i, i + 1, -1);
            }
            t.add(3, 3, 6, a);
        }
        N1 => {
            t.add(1, 1, 2, 1);
            t.add(3, 1, 4, 1);
            t.add(1, 3, 4, p.scalar("alpha")?);
        }
        N2 => {
            t.add(1, 1, 2, 1);
            t.add(1, 3, 4, 1);
        }
        Dim5M1 => {
            t.add(1, 1, 5, 1);
            t.add(4, 1, 2, 1);
            t.add(2, 1, 3, 1);
        }
        Dim5M3 => {
            t.add(1, 1, 2, 1);
            t.add(3, 1, 4, 1);
            t.add(4, 1, 5, 1);
            if corrected {
                t.add(1, 3, 4, -1);
            }
            t.add(1, 4, 5, -1);
        }
    }
    if f.is_template() {
        for (name, v) in &spec.params {
            if let Some((i, j, k)) = parse_slot(name) {
                t.add(i, j, k, v.clone());
            }
        }
    }
    Ok(t)
}

/// The explicit maximum-length grading of a maximum-length family.
pub fn canonical_max_length_grading(family: Family, n: usize) -> Result<GradingAssignment> {
    use Family::*;
    if !family.has_canonical_grading() {
        return Err(Error::NoCanonicalGrading(family.name().to_string()));
    }
    let rule = family.dim_rule();
    if !rule.admits(n) {
        return Err(Error::FamilyDimension {
            family: family.name().to_string(),
            dim: n,
            constraint: rule.describe(),
        });
    }
    let weights = match family {
        M1 => (1..=n)
            .map(|i| match i {
                1 => 1,
                _ if i == n => 2,
                _ if i == n - 1 => 3,
                _ => i as i64 + 2,
            })
            .collect(),
        Dim5M1 => vec![1, 4, 5, 3, 2],
        _ => (1..=n as i64).collect(),
    };
    Ok(GradingAssignment { weights })
}
