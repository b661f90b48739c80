//! Monoidal/comonoidal functor data between the concrete categories, the
//! built-in functor constructions, and the checks in [`checks`].

mod checks;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use checks::{
    check_comonoidal_coherence, check_frobenius, check_monoidal_coherence, check_naturality,
    check_split, compose_frobenius, from_strong, is_split, run_all_suites, structural_validate,
    ObjectGrid,
};

use crate::convolution::BaseFunctor;
use crate::duality::FrobeniusAlgebra;
use crate::error::{FrobError, Result};
use crate::linalg::{inverse, kron_all, RatMatrix};
use crate::monoidal::{CategoryInstance, MonObject, Morphism};

/// Morphism action of a hand-specified functor.
pub type MorphismMap = Arc<dyn Fn(&Morphism) -> Result<RatMatrix> + Send + Sync>;

/// Names one structure morphism of a functor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    /// `r_{A,B}: FA ⊗ FB → F(A ⊗ B)`
    R(MonObject, MonObject),
    /// `i_{A,B}: F(A ⊗ B) → FA ⊗ FB`
    I(MonObject, MonObject),
    /// `r₀: I → FI`
    R0,
    /// `i₀: FI → I`
    I0,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::R(a, b) => write!(f, "r({a},{b})"),
            Component::I(a, b) => write!(f, "i({a},{b})"),
            Component::R0 => write!(f, "r0"),
            Component::I0 => write!(f, "i0"),
        }
    }
}

/// How a functor's object map, morphism map and default structure maps are
/// generated.
#[derive(Clone)]
pub enum FunctorKind {
    Identity,
    /// `R ⊗ −` for a Frobenius algebra `R` in a braided category.
    TensorLeft(FrobeniusAlgebra),
    /// `outer ∘ inner`.
    Composite {
        outer: Box<FrobFunctor>,
        inner: Box<FrobFunctor>,
    },
    /// `A ↦ FA ⊗ GA`.
    PointwiseTensor(Box<FrobFunctor>, Box<FrobFunctor>),
    /// Constant at the unit object.
    Unit,
    /// A representation of `Σ G` with structure maps.
    GroupRep(BaseFunctor),
    /// Monoidal data completed by `i = r⁻¹`, `i₀ = r₀⁻¹`.
    Strong(Box<FrobFunctor>),
    /// Explicit tables; every structure map comes from the override table.
    Custom {
        objects: BTreeMap<MonObject, MonObject>,
        morphisms: MorphismMap,
    },
}

impl FunctorKind {
    pub fn tag(&self) -> &'static str {
        match self {
            FunctorKind::Identity => "identity",
            FunctorKind::TensorLeft(_) => "tensor_left",
            FunctorKind::Composite { .. } => "composite",
            FunctorKind::PointwiseTensor(..) => "pointwise_tensor",
            FunctorKind::Unit => "unit",
            FunctorKind::GroupRep(_) => "group_rep",
            FunctorKind::Strong(_) => "strong",
            FunctorKind::Custom { .. } => "custom",
        }
    }
}

impl fmt::Debug for FunctorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorKind::Identity | FunctorKind::Unit => write!(f, "{}", self.tag()),
            FunctorKind::TensorLeft(r) => write!(f, "tensor_left(dim {})", r.dim()),
            FunctorKind::Composite { outer, inner } => write!(f, "composite({outer:?}, {inner:?})"),
            FunctorKind::PointwiseTensor(a, b) => write!(f, "pointwise_tensor({a:?}, {b:?})"),
            FunctorKind::GroupRep(b) => write!(f, "group_rep(dim {})", b.dim()),
            FunctorKind::Strong(inner) => write!(f, "strong({inner:?})"),
            FunctorKind::Custom { objects, .. } => write!(f, "custom({} objects)", objects.len()),
        }
    }
}

/// A functor together with monoidal `(r, r₀)` and comonoidal `(i, i₀)`
/// structure. Nothing about the structure is assumed to be lawful; the check
/// suites decide that.
///
/// Built-in kinds generate their components on demand. Entries in the
/// override table take precedence, which is how deliberately wrong data is
/// represented.
#[derive(Clone)]
pub struct FrobFunctor {
    source: CategoryInstance,
    target: CategoryInstance,
    kind: FunctorKind,
    overrides: BTreeMap<Component, RatMatrix>,
}

impl fmt::Debug for FrobFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FrobFunctor")
            .field("source", &self.source.name())
            .field("target", &self.target.name())
            .field("kind", &self.kind)
            .field("overrides", &self.overrides.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl FrobFunctor {
    fn build(source: CategoryInstance, target: CategoryInstance, kind: FunctorKind) -> Result<Self> {
        if target != CategoryInstance::MatQ {
            return Err(FrobError::UnsupportedStructure(format!(
                "functors into {} are not supported; targets must be Mat(Q)",
                target.name()
            )));
        }
        Ok(Self {
            source,
            target,
            kind,
            overrides: BTreeMap::new(),
        })
    }

    /// The identity functor on `Mat(ℚ)`.
    pub fn identity() -> Self {
        Self::build(CategoryInstance::MatQ, CategoryInstance::MatQ, FunctorKind::Identity)
            .expect("Mat(Q) target")
    }

    /// The constant functor at the unit object, with identity structure maps.
    pub fn unit(source: CategoryInstance, target: CategoryInstance) -> Result<Self> {
        Self::build(source, target, FunctorKind::Unit)
    }

    /// A functor given entirely by tables. Structure maps must be supplied
    /// through [`FrobFunctor::with_component`].
    pub fn custom(
        source: CategoryInstance,
        objects: BTreeMap<MonObject, MonObject>,
        morphisms: MorphismMap,
    ) -> Result<Self> {
        Self::build(source, CategoryInstance::MatQ, FunctorKind::Custom { objects, morphisms })
    }

    pub(crate) fn from_kind(source: CategoryInstance, kind: FunctorKind) -> Result<Self> {
        Self::build(source, CategoryInstance::MatQ, kind)
    }

    pub fn source(&self) -> &CategoryInstance {
        &self.source
    }

    pub fn target(&self) -> &CategoryInstance {
        &self.target
    }

    pub fn kind(&self) -> &FunctorKind {
        &self.kind
    }

    pub fn overrides(&self) -> &BTreeMap<Component, RatMatrix> {
        &self.overrides
    }

    /// Equality of construction: same categories, same kind with equal
    /// parameters, same overrides. Hand-written morphism maps compare by
    /// identity.
    pub fn same_construction(&self, other: &FrobFunctor) -> bool {
        let kinds = match (&self.kind, &other.kind) {
            (FunctorKind::Identity, FunctorKind::Identity) | (FunctorKind::Unit, FunctorKind::Unit) => true,
            (FunctorKind::TensorLeft(a), FunctorKind::TensorLeft(b)) => a == b,
            (
                FunctorKind::Composite { outer: o1, inner: i1 },
                FunctorKind::Composite { outer: o2, inner: i2 },
            ) => o1.same_construction(o2) && i1.same_construction(i2),
            (FunctorKind::PointwiseTensor(a1, b1), FunctorKind::PointwiseTensor(a2, b2)) => {
                a1.same_construction(a2) && b1.same_construction(b2)
            }
            (FunctorKind::GroupRep(a), FunctorKind::GroupRep(b)) => a == b,
            (FunctorKind::Strong(a), FunctorKind::Strong(b)) => a.same_construction(b),
            (
                FunctorKind::Custom { objects: o1, morphisms: m1 },
                FunctorKind::Custom { objects: o2, morphisms: m2 },
            ) => o1 == o2 && Arc::ptr_eq(m1, m2),
            _ => false,
        };
        kinds && self.source == other.source && self.target == other.target && self.overrides == other.overrides
    }

    /// Replaces one structure map.
    pub fn with_component(mut self, which: Component, value: RatMatrix) -> Self {
        self.overrides.insert(which, value);
        self
    }

    pub fn set_component(&mut self, which: Component, value: RatMatrix) {
        self.overrides.insert(which, value);
    }

    fn check_source_object(&self, a: &MonObject) -> Result<()> {
        if self.source.contains(a) {
            Ok(())
        } else {
            Err(FrobError::InstanceMismatch(format!(
                "object {a} is not in the source category {}",
                self.source.name()
            )))
        }
    }

    pub fn map_object(&self, a: &MonObject) -> Result<MonObject> {
        self.check_source_object(a)?;
        Ok(match &self.kind {
            FunctorKind::Identity => *a,
            FunctorKind::TensorLeft(r) => MonObject::Mat(r.dim() * a.expect_dim()?),
            FunctorKind::Composite { outer, inner } => outer.map_object(&inner.map_object(a)?)?,
            FunctorKind::PointwiseTensor(f, g) => {
                MonObject::Mat(f.dim_at(a)? * g.dim_at(a)?)
            }
            FunctorKind::Unit => MonObject::Mat(1),
            FunctorKind::GroupRep(b) => MonObject::Mat(b.dim()),
            FunctorKind::Strong(inner) => inner.map_object(a)?,
            FunctorKind::Custom { objects, .. } => *objects.get(a).ok_or_else(|| {
                FrobError::MissingComponent {
                    component: "object map".into(),
                    location: a.to_string(),
                }
            })?,
        })
    }

    /// Dimension of `FA`.
    pub fn dim_at(&self, a: &MonObject) -> Result<usize> {
        self.map_object(a)?.expect_dim()
    }

    pub fn map_morphism(&self, f: &Morphism) -> Result<RatMatrix> {
        match &self.kind {
            FunctorKind::Identity => Ok(f.as_matrix()?.clone()),
            FunctorKind::TensorLeft(r) => {
                Ok(RatMatrix::identity(r.dim()).kron(f.as_matrix()?))
            }
            FunctorKind::Composite { outer, inner } => {
                outer.map_morphism(&Morphism::Matrix(inner.map_morphism(f)?))
            }
            FunctorKind::PointwiseTensor(a, b) => Ok(a.map_morphism(f)?.kron(&b.map_morphism(f)?)),
            FunctorKind::Unit => Ok(RatMatrix::identity(1)),
            FunctorKind::GroupRep(b) => match f {
                Morphism::Element(g) => b.rho(*g).cloned(),
                Morphism::Matrix(_) => Err(FrobError::InstanceMismatch(
                    "group representation applied to a matrix".into(),
                )),
            },
            FunctorKind::Strong(inner) => inner.map_morphism(f),
            FunctorKind::Custom { morphisms, .. } => morphisms(f),
        }
    }

    fn tensor(&self, a: &MonObject, b: &MonObject) -> Result<MonObject> {
        self.source.tensor_obj(a, b)
    }

    pub fn component(&self, which: &Component) -> Result<RatMatrix> {
        if let Some(m) = self.overrides.get(which) {
            return Ok(m.clone());
        }
        self.generated(which)
    }

    pub fn r(&self, a: &MonObject, b: &MonObject) -> Result<RatMatrix> {
        self.component(&Component::R(*a, *b))
    }

    pub fn i(&self, a: &MonObject, b: &MonObject) -> Result<RatMatrix> {
        self.component(&Component::I(*a, *b))
    }

    pub fn r0(&self) -> Result<RatMatrix> {
        self.component(&Component::R0)
    }

    pub fn i0(&self) -> Result<RatMatrix> {
        self.component(&Component::I0)
    }

    fn generated(&self, which: &Component) -> Result<RatMatrix> {
        if let Component::R(a, b) | Component::I(a, b) = which {
            self.check_source_object(a)?;
            self.check_source_object(b)?;
        }
        let id = RatMatrix::identity;
        match (&self.kind, which) {
            (FunctorKind::Identity, Component::R(a, b) | Component::I(a, b)) => {
                Ok(id(self.dim_at(&self.tensor(a, b)?)?))
            }
            (FunctorKind::Identity | FunctorKind::Unit, Component::R0 | Component::I0) => Ok(id(1)),
            (FunctorKind::Unit, _) => Ok(id(1)),

            (FunctorKind::TensorLeft(alg), _) => self.tensor_left_component(alg, which),

            (FunctorKind::Composite { outer, inner }, c) => {
                let g = |m: RatMatrix| outer.map_morphism(&Morphism::Matrix(m));
                match c {
                    Component::R(a, b) => {
                        let (fa, fb) = (inner.map_object(a)?, inner.map_object(b)?);
                        g(inner.r(a, b)?)?.mat_mul(&outer.r(&fa, &fb)?)
                    }
                    Component::I(a, b) => {
                        let (fa, fb) = (inner.map_object(a)?, inner.map_object(b)?);
                        outer.i(&fa, &fb)?.mat_mul(&g(inner.i(a, b)?)?)
                    }
                    Component::R0 => g(inner.r0()?)?.mat_mul(&outer.r0()?),
                    Component::I0 => outer.i0()?.mat_mul(&g(inner.i0()?)?),
                }
            }

            (FunctorKind::PointwiseTensor(f, g), c) => match c {
                Component::R(a, b) => {
                    let (fa, fb, ga, gb) =
                        (f.map_object(a)?, f.map_object(b)?, g.map_object(a)?, g.map_object(b)?);
                    let swap = self.target.braid_inverse(&fb, &ga)?;
                    let middle = kron_all([&id(fa.expect_dim()?), &swap, &id(gb.expect_dim()?)]);
                    f.r(a, b)?.kron(&g.r(a, b)?).mat_mul(&middle)
                }
                Component::I(a, b) => {
                    let (fa, fb, ga, gb) =
                        (f.map_object(a)?, f.map_object(b)?, g.map_object(a)?, g.map_object(b)?);
                    let swap = self.target.braid(&fb, &ga)?;
                    let middle = kron_all([&id(fa.expect_dim()?), &swap, &id(gb.expect_dim()?)]);
                    middle.mat_mul(&f.i(a, b)?.kron(&g.i(a, b)?))
                }
                Component::R0 => Ok(f.r0()?.kron(&g.r0()?)),
                Component::I0 => Ok(f.i0()?.kron(&g.i0()?)),
            },

            (FunctorKind::GroupRep(bf), c) => {
                let missing = || FrobError::MissingComponent {
                    component: c.to_string(),
                    location: "representation without structure maps".into(),
                };
                let s = bf.structure().ok_or_else(missing)?;
                Ok(match c {
                    Component::R(..) => s.r.clone(),
                    Component::I(..) => s.i.clone(),
                    Component::R0 => s.r0.clone(),
                    Component::I0 => s.i0.clone(),
                })
            }

            (FunctorKind::Strong(inner), c) => {
                let invert = |m: RatMatrix, what: &str, loc: String| {
                    inverse(&m).ok_or(FrobError::NotInvertible {
                        what: what.into(),
                        location: loc,
                    })
                };
                match c {
                    Component::R(..) | Component::R0 => inner.component(c),
                    Component::I(a, b) => {
                        invert(inner.r(a, b)?, "r component", format!("({a},{b})"))
                    }
                    Component::I0 => invert(inner.r0()?, "r0", "I".into()),
                }
            }

            (FunctorKind::Custom { .. }, c) => Err(FrobError::MissingComponent {
                component: c.to_string(),
                location: "custom functor table".into(),
            }),
        }
    }

    fn tensor_left_component(&self, alg: &FrobeniusAlgebra, which: &Component) -> Result<RatMatrix> {
        let r_obj = MonObject::Mat(alg.dim());
        let id = RatMatrix::identity;
        match which {
            Component::R(a, b) => {
                // (μ ⊗ 1 ⊗ 1)(1 ⊗ c_{A,R} ⊗ 1)
                let (da, db) = (a.expect_dim()?, b.expect_dim()?);
                let c = self.target.braid(a, &r_obj)?;
                let shuffle = kron_all([&id(alg.dim()), &c, &id(db)]);
                alg.mu().kron(&id(da * db)).mat_mul(&shuffle)
            }
            Component::I(a, b) => {
                // (1 ⊗ c_{R,A} ⊗ 1)(δ ⊗ 1 ⊗ 1)
                let (da, db) = (a.expect_dim()?, b.expect_dim()?);
                let c = self.target.braid(&r_obj, a)?;
                let shuffle = kron_all([&id(alg.dim()), &c, &id(db)]);
                shuffle.mat_mul(&alg.delta().kron(&id(da * db)))
            }
            Component::R0 => Ok(alg.eta().clone()),
            Component::I0 => Ok(alg.eps().clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoidal::FiniteBase;

    fn z2() -> FrobeniusAlgebra {
        FrobeniusAlgebra::group_algebra(&FiniteBase::zmod(2).unwrap())
    }

    #[test]
    fn identity_components_are_identities() {
        let f = FrobFunctor::identity();
        let (a, b) = (MonObject::Mat(2), MonObject::Mat(3));
        assert_eq!(f.r(&a, &b).unwrap(), RatMatrix::identity(6));
        assert_eq!(f.i(&a, &b).unwrap(), RatMatrix::identity(6));
        assert_eq!(f.r0().unwrap(), RatMatrix::identity(1));
        assert_eq!(f.map_object(&a).unwrap(), a);
    }

    #[test]
    fn tensor_left_shapes() {
        let f = crate::duality::tensor_left_functor(&z2(), &CategoryInstance::MatQ).unwrap();
        let (a, b) = (MonObject::Mat(2), MonObject::Mat(3));
        assert_eq!(f.map_object(&a).unwrap(), MonObject::Mat(4));
        assert_eq!(f.r(&a, &b).unwrap().shape(), (12, 24));
        assert_eq!(f.i(&a, &b).unwrap().shape(), (24, 12));
        assert_eq!(f.r0().unwrap().shape(), (2, 1));
        assert_eq!(f.i0().unwrap().shape(), (1, 2));
        let m = Morphism::Matrix(RatMatrix::from_ints(&[[1, 2]]));
        assert_eq!(f.map_morphism(&m).unwrap(), RatMatrix::from_ints(&[[1, 2, 0, 0], [0, 0, 1, 2]]));
    }

    #[test]
    fn tensor_left_over_unit_algebra_is_the_identity() {
        let f = crate::duality::tensor_left_functor(&FrobeniusAlgebra::unit(), &CategoryInstance::MatQ)
            .unwrap();
        let id = FrobFunctor::identity();
        for a in 1..=3 {
            for b in 1..=3 {
                let (a, b) = (MonObject::Mat(a), MonObject::Mat(b));
                assert_eq!(f.r(&a, &b).unwrap(), id.r(&a, &b).unwrap());
                assert_eq!(f.i(&a, &b).unwrap(), id.i(&a, &b).unwrap());
            }
        }
        assert_eq!(f.r0().unwrap(), id.r0().unwrap());
        assert_eq!(f.i0().unwrap(), id.i0().unwrap());
    }

    #[test]
    fn overrides_take_precedence() {
        let f = FrobFunctor::identity().with_component(Component::I0, RatMatrix::from_ints(&[[2]]));
        assert_eq!(f.i0().unwrap(), RatMatrix::from_ints(&[[2]]));
        assert_eq!(f.r0().unwrap(), RatMatrix::identity(1));
    }

    #[test]
    fn custom_functor_without_tables_reports_missing_components() {
        let f = FrobFunctor::custom(
            CategoryInstance::MatQ,
            BTreeMap::from([(MonObject::Mat(1), MonObject::Mat(1))]),
            Arc::new(|m: &Morphism| Ok(m.as_matrix()?.clone())),
        )
        .unwrap();
        assert!(matches!(f.r0(), Err(FrobError::MissingComponent { .. })));
        assert!(matches!(f.map_object(&MonObject::Mat(2)), Err(FrobError::MissingComponent { .. })));
    }

    #[test]
    fn source_objects_are_checked() {
        let f = FrobFunctor::identity();
        assert!(f.map_object(&MonObject::Star).is_err());
        assert!(f.r(&MonObject::Star, &MonObject::Mat(1)).is_err());
    }
}
