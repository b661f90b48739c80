//! Convolution on functors `Σ G → Mat(ℚ)`: coends as cokernels of explicit
//! relation matrices, canonical evaluation maps, and the induced Frobenius
//! structure on `F * F`.
//!
//! A functor out of `Σ G` is a representation `ρ` of `G` on `ℚ^d`. In a
//! coend `∫ 𝒜(A₁⊗…⊗Aₖ, −) · T(A₁,…,Aₖ)` the hom factor is the set `G`, so
//! the ambient space is `ℚ[G] ⊗ V` with `V` the integrand. A tuple
//! `(g₁,…,gₖ)` contributes the relations `x·g₁⋯gₖ ⊗ v ~ x ⊗ T(g₁,…,gₖ)v`.

mod coend;
mod evaluation;

pub use coend::{convolution_product, induced_map, CoendSpace};
pub use evaluation::{
    canonical_eval2, canonical_eval2_retraction, canonical_eval3, convolution_suite,
    induced_frobenius_check, retraction_maps, Evaluation, RetractionMaps,
};

use crate::duality::FrobeniusAlgebra;
use crate::error::{FrobError, Result};
use crate::functor::{FrobFunctor, FunctorKind};
use crate::linalg::RatMatrix;
use crate::monoidal::{CategoryInstance, FiniteBase};

/// The small monoidal category a convolution functor starts from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConvolutionBase {
    /// `Σ G`: one object, morphisms the elements of `G`.
    Sigma(FiniteBase),
    /// `G` as a discrete monoidal category: objects the elements, only
    /// identity morphisms, tensor the group product.
    Discrete(FiniteBase),
}

impl ConvolutionBase {
    pub fn group(&self) -> &FiniteBase {
        match self {
            ConvolutionBase::Sigma(g) | ConvolutionBase::Discrete(g) => g,
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, ConvolutionBase::Discrete(_))
    }

    pub fn name(&self) -> String {
        match self {
            ConvolutionBase::Sigma(g) => format!("Sigma(G) with |G| = {}", g.order()),
            ConvolutionBase::Discrete(g) => format!("discrete G with |G| = {}", g.order()),
        }
    }
}

/// Monoidal and comonoidal structure of a representation, as plain
/// matrices: `r: V⊗V → V`, `r0: ℚ → V`, `i: V → V⊗V`, `i0: V → ℚ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureMaps {
    pub r: RatMatrix,
    pub r0: RatMatrix,
    pub i: RatMatrix,
    pub i0: RatMatrix,
}

impl StructureMaps {
    pub fn from_algebra(alg: &FrobeniusAlgebra) -> Self {
        Self {
            r: alg.mu().clone(),
            r0: alg.eta().clone(),
            i: alg.delta().clone(),
            i0: alg.eps().clone(),
        }
    }
}

/// A functor out of a convolution base into `Mat(ℚ)`.
///
/// On `Σ G` this is a representation, validated as a homomorphism at
/// construction. On a discrete base it is the constant family `ℚ^dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseFunctor {
    base: ConvolutionBase,
    dim: usize,
    rho: Vec<RatMatrix>,
    structure: Option<StructureMaps>,
}

impl BaseFunctor {
    pub fn new(base: &FiniteBase, dim: usize, rho: Vec<RatMatrix>) -> Result<Self> {
        let bad = |msg: String| Err(FrobError::InvalidRepresentation(msg));
        if rho.len() != base.order() {
            return bad(format!("expected {} matrices, got {}", base.order(), rho.len()));
        }
        for (g, m) in rho.iter().enumerate() {
            if m.shape() != (dim, dim) {
                return bad(format!(
                    "rho({}) is {}x{}, expected {dim}x{dim}",
                    base.label(g),
                    m.rows(),
                    m.cols()
                ));
            }
        }
        if !rho[base.identity()].is_identity() {
            return bad("rho(e) is not the identity".into());
        }
        for g in base.elements() {
            for h in base.elements() {
                if rho[g].mat_mul(&rho[h])? != rho[base.mul(g, h)] {
                    return bad(format!(
                        "rho({})rho({}) != rho({})",
                        base.label(g),
                        base.label(h),
                        base.label(base.mul(g, h))
                    ));
                }
            }
        }
        Ok(Self {
            base: ConvolutionBase::Sigma(base.clone()),
            dim,
            rho,
            structure: None,
        })
    }

    /// `ρ(g) = 1` for every `g`.
    pub fn trivial(base: &FiniteBase, dim: usize) -> Self {
        Self::new(base, dim, vec![RatMatrix::identity(dim); base.order()]).expect("trivial representation")
    }

    /// `ℚ[G]` with `ρ(g)e_x = e_{gx}` and no structure maps: the convolution
    /// unit `𝒜(I, −) · I`.
    pub fn convolution_unit(base: &FiniteBase) -> Self {
        let d = base.order();
        let rho = base
            .elements()
            .map(|g| {
                let mut m = RatMatrix::zeros(d, d);
                for x in base.elements() {
                    m.set(base.mul(g, x), x, crate::Rational::ONE);
                }
                m
            })
            .collect();
        Self::new(base, d, rho).expect("regular representation")
    }

    /// The regular representation carrying the group-algebra structure
    /// `r = μ`, `r₀ = η`, `i = δ`, `i₀ = ε`.
    pub fn regular(base: &FiniteBase) -> Result<Self> {
        let alg = FrobeniusAlgebra::group_algebra(base);
        Self::convolution_unit(base).with_structure(StructureMaps::from_algebra(&alg))
    }

    /// The constant functor `ℚ^dim` on the discrete category of `G`.
    pub fn constant(base: &FiniteBase, dim: usize) -> Self {
        Self {
            base: ConvolutionBase::Discrete(base.clone()),
            dim,
            rho: Vec::new(),
            structure: None,
        }
    }

    /// Attaches structure maps after checking their shapes.
    pub fn with_structure(self, s: StructureMaps) -> Result<Self> {
        let d = self.dim;
        for (name, m, shape) in [
            ("r", &s.r, (d, d * d)),
            ("r0", &s.r0, (d, 1)),
            ("i", &s.i, (d * d, d)),
            ("i0", &s.i0, (1, d)),
        ] {
            if m.shape() != shape {
                return Err(FrobError::Shape(format!(
                    "{name} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    shape.0,
                    shape.1
                )));
            }
        }
        Ok(Self {
            structure: Some(s),
            ..self
        })
    }

    pub fn base(&self) -> &ConvolutionBase {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self, g: usize) -> Result<&RatMatrix> {
        self.rho.get(g).ok_or_else(|| {
            FrobError::InstanceMismatch(format!("no action of element {g} on {}", self.base.name()))
        })
    }

    pub fn structure(&self) -> Option<&StructureMaps> {
        self.structure.as_ref()
    }

    /// The same data as a [`FrobFunctor`] out of `Σ G`, so the generic
    /// suites can run on it.
    pub fn as_frob_functor(&self) -> Result<FrobFunctor> {
        match &self.base {
            ConvolutionBase::Sigma(g) => {
                FrobFunctor::from_kind(CategoryInstance::SigmaG(g.clone()), FunctorKind::GroupRep(self.clone()))
            }
            ConvolutionBase::Discrete(_) => Err(FrobError::UnsupportedStructure(
                "functors on a discrete base have no Sigma(G) form".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::{run_all_suites, ObjectGrid};

    #[test]
    fn regular_z2_swaps() {
        let f = BaseFunctor::convolution_unit(&FiniteBase::zmod(2).unwrap());
        assert_eq!(f.rho(1).unwrap(), &RatMatrix::from_ints(&[[0, 1], [1, 0]]));
        assert!(f.structure().is_none());
    }

    #[test]
    fn homomorphism_is_enforced() {
        let base = FiniteBase::zmod(2).unwrap();
        let not_hom = vec![RatMatrix::identity(1), RatMatrix::from_ints(&[[2]])];
        assert!(matches!(
            BaseFunctor::new(&base, 1, not_hom),
            Err(FrobError::InvalidRepresentation(_))
        ));
        let sign = vec![RatMatrix::identity(1), RatMatrix::from_ints(&[[-1]])];
        assert!(BaseFunctor::new(&base, 1, sign).is_ok());
    }

    #[test]
    fn regular_representations_are_homomorphisms() {
        for n in 1..=6 {
            let base = FiniteBase::zmod(n).unwrap();
            let f = BaseFunctor::convolution_unit(&base);
            for g in base.elements() {
                for h in base.elements() {
                    let lhs = f.rho(g).unwrap().mat_mul(f.rho(h).unwrap()).unwrap();
                    assert_eq!(&lhs, f.rho(base.mul(g, h)).unwrap());
                }
            }
        }
    }

    #[test]
    fn regular_with_group_algebra_structure_passes_sigma_suites() {
        for n in 1..=3 {
            let f = BaseFunctor::regular(&FiniteBase::zmod(n).unwrap()).unwrap();
            let report = run_all_suites(&f.as_frob_functor().unwrap(), &ObjectGrid::star());
            assert!(report.all_pass(), "n = {n}: {:?}", report.failures().next());
        }
    }

    #[test]
    fn structure_shapes_are_checked() {
        let f = BaseFunctor::convolution_unit(&FiniteBase::zmod(2).unwrap());
        let s = StructureMaps {
            r: RatMatrix::identity(2),
            r0: RatMatrix::zeros(2, 1),
            i: RatMatrix::zeros(4, 2),
            i0: RatMatrix::zeros(1, 2),
        };
        assert!(f.with_structure(s).is_err());
    }
}
