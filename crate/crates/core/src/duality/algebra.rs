use crate::error::{FrobError, Result};
use crate::functor::{FrobFunctor, FunctorKind};
use crate::linalg::RatMatrix;
use crate::monoidal::{CategoryInstance, FiniteBase, MonObject, Morphism};
use crate::report::{equation, Chain, Report};

/// `(R, μ, η, δ, ε)` on `R = ℚ^dim`.
///
/// Shapes are validated by [`FrobeniusAlgebra::new`]; the axioms are not,
/// so that broken algebras can be fed to the checkers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusAlgebra {
    dim: usize,
    mu: RatMatrix,
    eta: RatMatrix,
    delta: RatMatrix,
    eps: RatMatrix,
}

impl FrobeniusAlgebra {
    pub fn new(dim: usize, mu: RatMatrix, eta: RatMatrix, delta: RatMatrix, eps: RatMatrix) -> Result<Self> {
        let expect = |name: &str, m: &RatMatrix, shape: (usize, usize)| {
            if m.shape() == shape {
                Ok(())
            } else {
                Err(FrobError::Shape(format!(
                    "{name} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    shape.0,
                    shape.1
                )))
            }
        };
        expect("mu", &mu, (dim, dim * dim))?;
        expect("eta", &eta, (dim, 1))?;
        expect("delta", &delta, (dim * dim, dim))?;
        expect("eps", &eps, (1, dim))?;
        Ok(Self { dim, mu, eta, delta, eps })
    }

    /// The group algebra `ℚ[G]` with basis indexed by the group elements:
    /// `μ(g ⊗ h) = gh`, `η = e`, `δ(g) = Σ_h h ⊗ h⁻¹g`, and `ε` the
    /// coefficient of the identity.
    pub fn group_algebra(base: &FiniteBase) -> Self {
        let d = base.order();
        let mut mu = RatMatrix::zeros(d, d * d);
        let mut delta = RatMatrix::zeros(d * d, d);
        for g in base.elements() {
            for h in base.elements() {
                mu.set(base.mul(g, h), g * d + h, crate::Rational::ONE);
                delta.set(h * d + base.mul(base.inverse(h), g), g, crate::Rational::ONE);
            }
        }
        let e = base.identity();
        Self {
            dim: d,
            mu,
            eta: RatMatrix::elementary(d, 1, e, 0),
            delta,
            eps: RatMatrix::elementary(1, d, 0, e),
        }
    }

    /// The unit object with every structure map the identity.
    pub fn unit() -> Self {
        let one = RatMatrix::identity(1);
        Self {
            dim: 1,
            mu: one.clone(),
            eta: one.clone(),
            delta: one.clone(),
            eps: one,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn object(&self) -> MonObject {
        MonObject::Mat(self.dim)
    }

    pub fn mu(&self) -> &RatMatrix {
        &self.mu
    }

    pub fn eta(&self) -> &RatMatrix {
        &self.eta
    }

    pub fn delta(&self) -> &RatMatrix {
        &self.delta
    }

    pub fn eps(&self) -> &RatMatrix {
        &self.eps
    }

    pub fn with_mu(self, mu: RatMatrix) -> Self {
        Self { mu, ..self }
    }

    pub fn with_eta(self, eta: RatMatrix) -> Self {
        Self { eta, ..self }
    }

    pub fn with_delta(self, delta: RatMatrix) -> Self {
        Self { delta, ..self }
    }

    pub fn with_eps(self, eps: RatMatrix) -> Self {
        Self { eps, ..self }
    }
}

/// The monoid, comonoid and Frobenius laws, one entry each.
pub fn check_frobenius_algebra(alg: &FrobeniusAlgebra) -> Report {
    const SUITE: &str = "frobalg";
    let id = RatMatrix::identity(alg.dim);
    let (mu, eta, delta, eps) = (&alg.mu, &alg.eta, &alg.delta, &alg.eps);
    let loc = format!("R={}", alg.dim);
    let eqs: [(&str, Chain, Chain); 8] = [
        (
            "associativity",
            Chain::of([mu.clone(), mu.kron(&id)]),
            Chain::of([mu.clone(), id.kron(mu)]),
        ),
        ("unit-left", Chain::of([mu.clone(), eta.kron(&id)]), Chain::of([id.clone()])),
        ("unit-right", Chain::of([mu.clone(), id.kron(eta)]), Chain::of([id.clone()])),
        (
            "coassociativity",
            Chain::of([delta.kron(&id), delta.clone()]),
            Chain::of([id.kron(delta), delta.clone()]),
        ),
        ("counit-left", Chain::of([eps.kron(&id), delta.clone()]), Chain::of([id.clone()])),
        ("counit-right", Chain::of([id.kron(eps), delta.clone()]), Chain::of([id.clone()])),
        (
            "frobenius-left",
            Chain::of([mu.kron(&id), id.kron(delta)]),
            Chain::of([delta.clone(), mu.clone()]),
        ),
        (
            "frobenius-right",
            Chain::of([id.kron(mu), delta.kron(&id)]),
            Chain::of([delta.clone(), mu.clone()]),
        ),
    ];
    let mut report = Report::new();
    for (check, lhs, rhs) in eqs {
        report.push(equation(SUITE, check, loc.clone(), Ok((lhs, rhs))));
    }
    report
}

/// Image of an algebra under a Frobenius functor out of `Mat(ℚ)`:
/// `(FR, F(μ)·r, F(η)·r₀, i·F(δ), i₀·F(ε))`.
pub fn apply_functor_to_algebra(f: &FrobFunctor, alg: &FrobeniusAlgebra) -> Result<FrobeniusAlgebra> {
    let r_obj = alg.object();
    let fm = |m: &RatMatrix| f.map_morphism(&Morphism::Matrix(m.clone()));
    let dim = f.dim_at(&r_obj)?;
    FrobeniusAlgebra::new(
        dim,
        fm(&alg.mu)?.mat_mul(&f.r(&r_obj, &r_obj)?)?,
        fm(&alg.eta)?.mat_mul(&f.r0()?)?,
        f.i(&r_obj, &r_obj)?.mat_mul(&fm(&alg.delta)?)?,
        f.i0()?.mat_mul(&fm(&alg.eps)?)?,
    )
}

/// `R ⊗ −` on a braided category.
pub fn tensor_left_functor(alg: &FrobeniusAlgebra, cat: &CategoryInstance) -> Result<FrobFunctor> {
    if !cat.is_braided() {
        return Err(FrobError::UnsupportedStructure(format!(
            "tensor_left needs a braiding, and {} has none",
            cat.name()
        )));
    }
    FrobFunctor::from_kind(cat.clone(), FunctorKind::TensorLeft(alg.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::{run_all_suites, ObjectGrid};
    use crate::report::Status;

    fn zmod(n: usize) -> FrobeniusAlgebra {
        FrobeniusAlgebra::group_algebra(&FiniteBase::zmod(n).unwrap())
    }

    #[test]
    fn z2_fixture_matches_hand_written_matrices() {
        let a = zmod(2);
        assert_eq!(a.mu, RatMatrix::from_ints(&[[1, 0, 0, 1], [0, 1, 1, 0]]));
        assert_eq!(a.eta, RatMatrix::from_ints(&[[1], [0]]));
        assert_eq!(a.delta, RatMatrix::from_ints(&[[1, 0], [0, 1], [0, 1], [1, 0]]));
        assert_eq!(a.eps, RatMatrix::from_ints(&[[1, 0]]));
    }

    #[test]
    fn group_algebras_satisfy_all_eight_laws() {
        for n in 1..=4 {
            let r = check_frobenius_algebra(&zmod(n));
            assert_eq!(r.len(), 8);
            assert!(r.all_pass(), "n = {n}: {:?}", r.failures().next());
        }
        assert!(check_frobenius_algebra(&FrobeniusAlgebra::unit()).all_pass());
    }

    #[test]
    fn all_ones_counit_breaks_only_the_counit_laws() {
        let bad = zmod(2).with_eps(RatMatrix::from_ints(&[[1, 1]]));
        let r = check_frobenius_algebra(&bad);
        let failing: Vec<&str> = r.failures().map(|e| e.check.as_str()).collect();
        assert_eq!(failing, ["counit-left", "counit-right"]);
        let w = r.failures().next().unwrap().witness.as_ref().unwrap();
        assert_ne!(w.lhs.get(w.row, w.col), w.rhs.get(w.row, w.col));
    }

    #[test]
    fn shape_errors_become_error_entries() {
        let bad = zmod(2).with_mu(RatMatrix::identity(2));
        let r = check_frobenius_algebra(&bad);
        assert_eq!(r.first_failure_of("associativity").unwrap().status, Status::Error);
        assert!(FrobeniusAlgebra::new(2, RatMatrix::identity(2), zmod(2).eta.clone(), zmod(2).delta.clone(), zmod(2).eps.clone()).is_err());
    }

    #[test]
    fn identity_functor_preserves_algebras() {
        let a = zmod(3);
        assert_eq!(apply_functor_to_algebra(&FrobFunctor::identity(), &a).unwrap(), a);
    }

    #[test]
    fn tensor_left_image_of_z2_is_frobenius_on_dim_4() {
        let a = zmod(2);
        let f = tensor_left_functor(&a, &CategoryInstance::MatQ).unwrap();
        let image = apply_functor_to_algebra(&f, &a).unwrap();
        assert_eq!(image.dim(), 4);
        assert!(check_frobenius_algebra(&image).all_pass());
    }

    #[test]
    fn zeroed_comultiplication_in_the_functor_breaks_the_image() {
        let a = zmod(2);
        let f = tensor_left_functor(&a.clone().with_delta(RatMatrix::zeros(4, 2)), &CategoryInstance::MatQ).unwrap();
        let image = apply_functor_to_algebra(&f, &a).unwrap();
        assert!(!check_frobenius_algebra(&image).all_pass());
    }

    #[test]
    fn tensor_left_rejects_unbraided_categories() {
        let sigma = CategoryInstance::SigmaG(FiniteBase::zmod(2).unwrap());
        assert!(matches!(
            tensor_left_functor(&zmod(2), &sigma),
            Err(FrobError::UnsupportedStructure(_))
        ));
    }

    #[test]
    fn broken_associativity_is_caught_by_monoidal_coherence() {
        let a = zmod(2);
        // a·e = e, so (a·e)·a = a while a·(e·a) = e
        let mu = RatMatrix::from_ints(&[[1, 0, 1, 1], [0, 1, 0, 0]]);
        let bad = a.with_mu(mu);
        assert!(check_frobenius_algebra(&bad).first_failure_of("associativity").is_some());
        let f = tensor_left_functor(&bad, &CategoryInstance::MatQ).unwrap();
        let grid = ObjectGrid::dims(1, 2).unwrap();
        let report = run_all_suites(&f, &grid);
        assert!(report.first_failure_of("r-associativity").is_some());
    }
}
