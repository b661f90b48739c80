//! Concrete strict monoidal categories: `Mat(ℚ)` with its symmetry, and the
//! one-object categories `Σ G` of finite abelian groups.

use std::fmt;

use crate::error::{FrobError, Result};
use crate::linalg::{commutation_matrix, RatMatrix};

/// An object of one of the concrete categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonObject {
    /// `ℚ^dim` in `Mat(ℚ)`.
    Mat(usize),
    /// The single object of `Σ G`.
    Star,
}

impl MonObject {
    pub fn dim(&self) -> Option<usize> {
        match self {
            MonObject::Mat(d) => Some(*d),
            MonObject::Star => None,
        }
    }

    pub(crate) fn expect_dim(&self) -> Result<usize> {
        self.dim().ok_or_else(|| {
            FrobError::InstanceMismatch(format!("object {self} is not an object of Mat(Q)"))
        })
    }
}

impl fmt::Display for MonObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonObject::Mat(d) => write!(f, "{d}"),
            MonObject::Star => write!(f, "*"),
        }
    }
}

/// A finite abelian group presented by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteBase {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteBase {
    /// Validates the table: total, associative, unital, with inverses, and
    /// commutative.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = labels.len();
        let bad = |msg: String| Err(FrobError::InvalidBase(msg));
        if n == 0 {
            return bad("group must have at least one element".into());
        }
        if identity >= n {
            return bad(format!("identity index {identity} out of range"));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return bad(format!("multiplication table must be {n}x{n}"));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return bad("multiplication table entry out of range".into());
        }
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return bad(format!("{} is not a unit for {}", labels[identity], labels[a]));
            }
            if !(0..n).any(|b| table[a][b] == identity) {
                return bad(format!("{} has no inverse", labels[a]));
            }
            for b in 0..n {
                if table[a][b] != table[b][a] {
                    return bad(format!("{} and {} do not commute", labels[a], labels[b]));
                }
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!(
                            "associativity fails at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        ));
                    }
                }
            }
        }
        Ok(Self {
            labels,
            table,
            identity,
        })
    }

    /// The cyclic group `ℤ/n` with elements labelled `0..n`.
    pub fn zmod(n: usize) -> Result<Self> {
        let labels = (0..n).map(|k| k.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(labels, table, 0)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn product(&self, elems: &[usize]) -> usize {
        elems.iter().fold(self.identity, |acc, &g| self.mul(acc, g))
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == self.identity)
            .expect("validated group has inverses")
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// A morphism of one of the concrete categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Morphism {
    Matrix(RatMatrix),
    /// A group element, as an endomorphism of `Star`.
    Element(usize),
}

impl Morphism {
    pub fn as_matrix(&self) -> Result<&RatMatrix> {
        match self {
            Morphism::Matrix(m) => Ok(m),
            Morphism::Element(_) => Err(FrobError::InstanceMismatch(
                "expected a matrix, found a group element".into(),
            )),
        }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Morphism::Matrix(m) => write!(f, "{m}"),
            Morphism::Element(g) => write!(f, "g{g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CategoryInstance {
    MatQ,
    SigmaG(FiniteBase),
}

impl CategoryInstance {
    pub fn name(&self) -> String {
        match self {
            CategoryInstance::MatQ => "Mat(Q)".into(),
            CategoryInstance::SigmaG(b) => format!("Sigma(G), |G| = {}", b.order()),
        }
    }

    pub fn unit(&self) -> MonObject {
        match self {
            CategoryInstance::MatQ => MonObject::Mat(1),
            CategoryInstance::SigmaG(_) => MonObject::Star,
        }
    }

    pub fn contains(&self, x: &MonObject) -> bool {
        matches!(
            (self, x),
            (CategoryInstance::MatQ, MonObject::Mat(_)) | (CategoryInstance::SigmaG(_), MonObject::Star)
        )
    }

    fn check_object(&self, x: &MonObject) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(FrobError::InstanceMismatch(format!(
                "object {x} does not belong to {}",
                self.name()
            )))
        }
    }

    pub fn tensor_obj(&self, x: &MonObject, y: &MonObject) -> Result<MonObject> {
        self.check_object(x)?;
        self.check_object(y)?;
        Ok(match (x, y) {
            (MonObject::Mat(m), MonObject::Mat(n)) => MonObject::Mat(m * n),
            _ => MonObject::Star,
        })
    }

    pub fn tensor_objs(&self, xs: &[MonObject]) -> Result<MonObject> {
        xs.iter()
            .try_fold(self.unit(), |acc, x| self.tensor_obj(&acc, x))
    }

    pub fn identity(&self, x: &MonObject) -> Result<Morphism> {
        self.check_object(x)?;
        Ok(match (self, x) {
            (CategoryInstance::SigmaG(b), _) => Morphism::Element(b.identity()),
            (_, MonObject::Mat(d)) => Morphism::Matrix(RatMatrix::identity(*d)),
            _ => unreachable!("checked above"),
        })
    }

    fn check_morphism(&self, f: &Morphism) -> Result<()> {
        match (self, f) {
            (CategoryInstance::MatQ, Morphism::Matrix(_)) => Ok(()),
            (CategoryInstance::SigmaG(b), Morphism::Element(g)) if *g < b.order() => Ok(()),
            _ => Err(FrobError::InstanceMismatch(format!(
                "morphism {f} does not belong to {}",
                self.name()
            ))),
        }
    }

    /// Composite `f ∘ g`.
    pub fn compose(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        self.check_morphism(f)?;
        self.check_morphism(g)?;
        Ok(match (self, f, g) {
            (_, Morphism::Matrix(a), Morphism::Matrix(b)) => Morphism::Matrix(a.mat_mul(b)?),
            (CategoryInstance::SigmaG(base), Morphism::Element(a), Morphism::Element(b)) => {
                Morphism::Element(base.mul(*a, *b))
            }
            _ => unreachable!("checked above"),
        })
    }

    pub fn tensor_mor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        self.check_morphism(f)?;
        self.check_morphism(g)?;
        Ok(match (self, f, g) {
            (_, Morphism::Matrix(a), Morphism::Matrix(b)) => Morphism::Matrix(a.kron(b)),
            (CategoryInstance::SigmaG(base), Morphism::Element(a), Morphism::Element(b)) => {
                Morphism::Element(base.mul(*a, *b))
            }
            _ => unreachable!("checked above"),
        })
    }

    pub fn is_braided(&self) -> bool {
        matches!(self, CategoryInstance::MatQ)
    }

    /// The braiding `c_{X,Y}: X ⊗ Y → Y ⊗ X`.
    pub fn braid(&self, x: &MonObject, y: &MonObject) -> Result<RatMatrix> {
        self.check_object(x)?;
        self.check_object(y)?;
        match self {
            CategoryInstance::MatQ => Ok(commutation_matrix(x.expect_dim()?, y.expect_dim()?)),
            CategoryInstance::SigmaG(_) => Err(FrobError::UnsupportedStructure(format!(
                "{} carries no braiding",
                self.name()
            ))),
        }
    }

    /// The inverse braiding `c_{X,Y}^{-1}: Y ⊗ X → X ⊗ Y`.
    pub fn braid_inverse(&self, x: &MonObject, y: &MonObject) -> Result<RatMatrix> {
        self.check_object(x)?;
        self.check_object(y)?;
        match self {
            // the inverse of a permutation matrix is the reverse swap
            CategoryInstance::MatQ => Ok(commutation_matrix(y.expect_dim()?, x.expect_dim()?)),
            CategoryInstance::SigmaG(_) => Err(FrobError::UnsupportedStructure(format!(
                "{} carries no braiding",
                self.name()
            ))),
        }
    }
}
