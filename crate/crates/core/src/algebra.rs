//! Finite-dimensional algebras given by structure constants.
//!
//! Indices in this API are 0-based; labels carry the human-facing names and
//! the file format uses 1-based indices.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// An algebra presented by its structure constants `[e_i, e_j] = Σ_k c_ijk e_k`.
///
/// Immutable once built; every query is a pure function of the table.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    labels: Vec<String>,
    /// Dense `c_ijk` at `(i * dim + j) * dim + k`.
    consts: Vec<Scalar>,
    /// For each pair `(i, j)` the `k` with `c_ijk ≠ 0`.
    support: Vec<Vec<usize>>,
}

/// A vector of the algebra in coordinates of its basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Element(pub Vec<Scalar>);

impl Element {
    pub fn zero(n: usize) -> Self {
        Element(vec![Scalar::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        Element(v)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }
}

/// A basis triple `(a, b, c)` where `[e_a,[e_b,e_c]] ≠ [[e_a,e_b],e_c] − [[e_a,e_c],e_b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectWitness {
    pub triple: (usize, usize, usize),
    /// `[x,[y,z]] − [[x,y],z] + [[x,z],y]` at the triple.
    pub defect: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizDefect {
    pub witness: Option<DefectWitness>,
}

impl LeibnizDefect {
    pub fn is_zero(&self) -> bool {
        self.witness.is_none()
    }
}

/// Why an algebra fails to be Lie.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieWitness {
    NonzeroSquare { index: usize, square: Vec<Scalar> },
    NotAntisymmetric { i: usize, j: usize },
    Leibniz(DefectWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieCheck {
    pub witness: Option<LieWitness>,
}

impl LieCheck {
    pub fn is_lie(&self) -> bool {
        self.witness.is_none()
    }
}

impl Algebra {
    /// Builds an algebra from 0-based `(i, j, k, c)` entries. Repeated
    /// positions are summed. Labels default to `e1, …, en`.
    pub fn from_entries<I>(dim: usize, labels: Option<Vec<String>>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let labels = match labels {
            Some(l) if l.len() != dim => {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: l.len(),
                })
            }
            Some(l) => l,
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        let mut consts = vec![Scalar::zero(); dim * dim * dim];
        for (i, j, k, c) in entries {
            for index in [i, j, k] {
                if index >= dim {
                    return Err(Error::IndexOutOfRange { index, dim });
                }
            }
            consts[(i * dim + j) * dim + k] += &c;
        }
        Ok(Self::from_dense(dim, labels, consts))
    }

    fn from_dense(dim: usize, labels: Vec<String>, consts: Vec<Scalar>) -> Self {
        let support = (0..dim * dim)
            .map(|p| {
                (0..dim)
                    .filter(|&k| !consts[p * dim + k].is_zero())
                    .collect()
            })
            .collect();
        Algebra {
            dim,
            labels,
            consts,
            support,
        }
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_entries(dim, None, []).expect("empty table")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.consts[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.consts[start..start + self.dim]
    }

    fn support(&self, i: usize, j: usize) -> &[usize] {
        &self.support[i * self.dim + j]
    }

    /// Nonzero structure constants in `(i, j, k)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let n = self.dim;
        (0..n * n).flat_map(move |p| {
            self.support[p]
                .iter()
                .map(move |&k| (p / n, p % n, k, &self.consts[p * n + k]))
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.support.iter().all(Vec::is_empty)
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            })
        }
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_len(&x.0)?;
        self.check_len(&y.0)?;
        Ok(Element(self.bracket(&x.0, &y.0)))
    }

    /// Bilinear product on raw coordinate slices of the right length.
    pub(crate) fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = self.support(i, j);
                if s.is_empty() {
                    continue;
                }
                let f = xi * yj;
                for &k in s {
                    out[k] += &(&f * self.structure_constant(i, j, k));
                }
            }
        }
        out
    }

    /// `[e_i, v]`
    fn bracket_basis_left(&self, i: usize, v: &[Scalar], out: &mut [Scalar]) {
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for &k in self.support(i, j) {
                out[k] += &(vj * self.structure_constant(i, j, k));
            }
        }
    }

    /// `[v, e_j]`
    fn bracket_basis_right(&self, v: &[Scalar], j: usize, out: &mut [Scalar]) {
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for &k in self.support(i, j) {
                out[k] += &(vi * self.structure_constant(i, j, k));
            }
        }
    }

    /// Matrix of the right multiplication `R_x : z ↦ [z, x]`; column `j` is `[e_j, x]`.
    pub fn right_operator(&self, x: &Element) -> Result<Matrix> {
        self.check_len(&x.0)?;
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let mut col = vec![Scalar::zero(); n];
            self.bracket_basis_left(j, &x.0, &mut col);
            for (k, c) in col.into_iter().enumerate() {
                m[(k, j)] = c;
            }
        }
        Ok(m)
    }

    fn defect_at(&self, a: usize, b: usize, c: usize) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        // [e_a, [e_b, e_c]]
        self.bracket_basis_left(a, self.product(b, c), &mut out);
        // − [[e_a, e_b], e_c]
        let mut t = vec![Scalar::zero(); n];
        self.bracket_basis_right(self.product(a, b), c, &mut t);
        // + [[e_a, e_c], e_b]
        let mut u = vec![Scalar::zero(); n];
        self.bracket_basis_right(self.product(a, c), b, &mut u);
        for ((o, t), u) in out.iter_mut().zip(&t).zip(&u) {
            if !t.is_zero() || !u.is_zero() {
                *o = &(&*o - t) + u;
            }
        }
        out
    }

    /// Checks `[x,[y,z]] = [[x,y],z] − [[x,z],y]` on all basis triples, which
    /// suffices by trilinearity. Reports the first failing triple in
    /// lexicographic order.
    pub fn leibniz_defect(&self) -> LeibnizDefect {
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let d = self.defect_at(a, b, c);
                    if d.iter().any(|x| !x.is_zero()) {
                        return LeibnizDefect {
                            witness: Some(DefectWitness {
                                triple: (a, b, c),
                                defect: d,
                            }),
                        };
                    }
                }
            }
        }
        LeibnizDefect { witness: None }
    }

    /// Lie means `[e_i,e_j] = −[e_j,e_i]` for all `i ≤ j` (so every square
    /// vanishes) and the identity holds.
    pub fn is_lie(&self) -> LieCheck {
        if let Some(w) = self.antisymmetry_failure() {
            return LieCheck { witness: Some(w) };
        }
        LieCheck {
            witness: self.leibniz_defect().witness.map(LieWitness::Leibniz),
        }
    }

    /// First `i ≤ j` with `[e_i,e_j] ≠ −[e_j,e_i]`.
    pub(crate) fn antisymmetry_failure(&self) -> Option<LieWitness> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                let pij = self.product(i, j);
                let pji = self.product(j, i);
                let antisym = if i == j {
                    pij.iter().all(Scalar::is_zero)
                } else {
                    pij.iter().zip(pji).all(|(a, b)| (a + b).is_zero())
                };
                if !antisym {
                    let witness = if i == j {
                        LieWitness::NonzeroSquare {
                            index: i,
                            square: pij.to_vec(),
                        }
                    } else {
                        LieWitness::NotAntisymmetric { i, j }
                    };
                    return Some(witness);
                }
            }
        }
        None
    }

    /// The same algebra in the basis `f_a = Σ_i p[i][a] e_i` (columns of `p`).
    pub fn change_basis(&self, p: &Matrix) -> Result<Algebra> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.rows().max(p.cols()),
            });
        }
        let inv = p.inverse()?;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|a| p.column(a)).collect();
        let mut consts = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                let v = self.bracket(&cols[a], &cols[b]);
                consts.extend(inv.mul_vec(&v)?);
            }
        }
        Ok(Self::from_dense(n, self.labels.clone(), consts))
    }

    /// Renders a coordinate vector as a combination of basis labels.
    pub fn describe(&self, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                if c.is_one() {
                    self.labels[k].clone()
                } else if c.is_real() || c.re().numer().sign() == num_bigint::Sign::NoSign {
                    format!("{c}*{}", self.labels[k])
                } else {
                    format!("({c})*{}", self.labels[k])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    pub fn describe_defect(&self, w: &DefectWitness) -> String {
        let (a, b, c) = w.triple;
        let (x, y, z) = (self.label(a), self.label(b), self.label(c));
        format!(
            "[{x},[{y},{z}]] - [[{x},{y}],{z}] + [[{x},{z}],{y}] = {}",
            self.describe(&w.defect)
        )
    }

    pub fn describe_lie_witness(&self, w: &LieWitness) -> String {
        match w {
            LieWitness::NonzeroSquare { index, square } => {
                format!(
                    "[{0},{0}] = {1} != 0",
                    self.label(*index),
                    self.describe(square)
                )
            }
            LieWitness::NotAntisymmetric { i, j } => {
                let (x, y) = (self.label(*i), self.label(*j));
                format!(
                    "[{x},{y}] + [{y},{x}] = {} != 0",
                    self.describe(
                        &self
                            .bracket(
                                &Element::basis(self.dim, *i).0,
                                &Element::basis(self.dim, *j).0
                            )
                            .iter()
                            .zip(self.product(*j, *i))
                            .map(|(a, b)| a + b)
                            .collect::<Vec<_>>()
                    )
                )
            }
            LieWitness::Leibniz(d) => self.describe_defect(d),
        }
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim={}", self.dim)?;
        for (i, j, k, c) in self.entries() {
            write!(
                f,
                ", [{},{}]_{}={}",
                self.labels[i], self.labels[j], self.labels[k], c
            )?;
        }
        write!(f, ")")
    }
}
