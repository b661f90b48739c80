use std::collections::BTreeMap;

use crate::error::{FrobError, Result};
use crate::functor::{FrobFunctor, FunctorKind, ObjectGrid};
use crate::linalg::{commutation_matrix, RatMatrix, Rational};
use crate::monoidal::{CategoryInstance, MonObject, Morphism};
use crate::report::{equation, Chain, Report, ReportEntry};

use super::dual::{transport_dual, DualSituation};

/// How the components `α_A: FA → GA` are produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransfComponents {
    Identity,
    /// `q · 1_{FA}`.
    Scaled(Rational),
    /// `m ⊗ 1_A`, for functors of the form `R ⊗ −`.
    LeftFactor(RatMatrix),
    /// The commutation matrix `σ_{k, dim FA / k}`.
    Commutation(usize),
    /// `c_{F₁A, F₂A}` from `F₁ ⊗ F₂` to `F₂ ⊗ F₁`.
    Braiding,
    Table(BTreeMap<MonObject, RatMatrix>),
}

/// A transformation `α: F → G` between functors with the same source.
#[derive(Debug, Clone)]
pub struct MonComonNatTransf {
    source: FrobFunctor,
    target: FrobFunctor,
    components: TransfComponents,
}

impl MonComonNatTransf {
    pub fn new(source: FrobFunctor, target: FrobFunctor, components: TransfComponents) -> Result<Self> {
        if source.source() != target.source() || source.target() != target.target() {
            return Err(FrobError::InstanceMismatch(
                "transformation between functors on different categories".into(),
            ));
        }
        if components == TransfComponents::Braiding {
            let swapped = match (source.kind(), target.kind()) {
                (FunctorKind::PointwiseTensor(f1, f2), FunctorKind::PointwiseTensor(g1, g2)) => {
                    f1.same_construction(g2) && f2.same_construction(g1)
                }
                _ => false,
            };
            if !swapped {
                return Err(FrobError::Precondition(
                    "braiding components need source F1*F2 and target F2*F1".into(),
                ));
            }
        }
        Ok(Self {
            source,
            target,
            components,
        })
    }

    pub fn identity(f: &FrobFunctor) -> Self {
        Self {
            source: f.clone(),
            target: f.clone(),
            components: TransfComponents::Identity,
        }
    }

    pub fn source(&self) -> &FrobFunctor {
        &self.source
    }

    pub fn target(&self) -> &FrobFunctor {
        &self.target
    }

    pub fn components(&self) -> &TransfComponents {
        &self.components
    }

    /// `α_A`.
    pub fn component(&self, a: &MonObject) -> Result<RatMatrix> {
        let fa = self.source.dim_at(a)?;
        match &self.components {
            TransfComponents::Identity => Ok(RatMatrix::identity(fa)),
            TransfComponents::Scaled(q) => Ok(RatMatrix::identity(fa).scale(q)),
            TransfComponents::LeftFactor(m) => Ok(m.kron(&RatMatrix::identity(a.expect_dim()?))),
            TransfComponents::Commutation(k) => {
                if *k == 0 || fa % k != 0 {
                    return Err(FrobError::Shape(format!(
                        "commutation block {k} does not divide dimension {fa}"
                    )));
                }
                Ok(commutation_matrix(*k, fa / k))
            }
            TransfComponents::Braiding => match self.source.kind() {
                FunctorKind::PointwiseTensor(f1, f2) => {
                    let cat = self.source.target();
                    cat.braid(&f1.map_object(a)?, &f2.map_object(a)?)
                }
                _ => unreachable!("checked by the constructor"),
            },
            TransfComponents::Table(t) => t.get(a).cloned().ok_or_else(|| FrobError::MissingComponent {
                component: "transformation".into(),
                location: a.to_string(),
            }),
        }
    }
}

/// Naturality plus the monoidal and comonoidal conditions:
///
/// * `α_{A⊗B} ∘ r^F = r^G ∘ (α_A ⊗ α_B)` and `α_I ∘ r₀^F = r₀^G`
/// * `(α_A ⊗ α_B) ∘ i^F = i^G ∘ α_{A⊗B}` and `i₀^G ∘ α_I = i₀^F`
pub fn check_nat_transf(t: &MonComonNatTransf, grid: &ObjectGrid) -> Report {
    const SUITE: &str = "nat-transf";
    let (f, g) = (&t.source, &t.target);
    let src = f.source().clone();
    let mut report = Report::new();

    let mut shapes_ok = true;
    for a in grid.objects() {
        let sides = (|| {
            let alpha = t.component(a)?;
            let want = (g.dim_at(a)?, f.dim_at(a)?);
            if alpha.shape() != want {
                return Err(FrobError::Shape(format!(
                    "component is {}x{}, expected {}x{}",
                    alpha.rows(),
                    alpha.cols(),
                    want.0,
                    want.1
                )));
            }
            Ok(())
        })();
        match sides {
            Ok(()) => report.push(ReportEntry::pass(SUITE, "component-shape", format!("({a})"))),
            Err(e) => {
                shapes_ok = false;
                report.push(ReportEntry::error(SUITE, "component-shape", format!("({a})"), &e));
            }
        }
    }
    if !shapes_ok {
        return report;
    }

    let square = |a: &MonObject, a2: &MonObject, m: Morphism| -> Result<(Chain, Chain)> {
        Ok((
            Chain::of([t.component(a2)?, f.map_morphism(&m)?]),
            Chain::of([g.map_morphism(&m)?, t.component(a)?]),
        ))
    };
    match &src {
        CategoryInstance::MatQ => {
            for (a, a2) in grid.pairs() {
                let loc = format!("{a}->{a2}");
                let mut entry = ReportEntry::pass(SUITE, "natural", loc.clone());
                let (da, da2) = (a.expect_dim(), a2.expect_dim());
                if let (Ok(da), Ok(da2)) = (da, da2) {
                    for (k, unit) in RatMatrix::elementary_basis(da2, da).enumerate() {
                        let cell = format!("{loc} f=E({},{})", k / da.max(1), k % da.max(1));
                        let e = equation(SUITE, "natural", cell, square(&a, &a2, Morphism::Matrix(unit)));
                        if !e.is_pass() {
                            entry = e;
                            break;
                        }
                    }
                }
                report.push(entry);
            }
        }
        CategoryInstance::SigmaG(base) => {
            for x in base.elements() {
                let star = MonObject::Star;
                report.push(equation(
                    SUITE,
                    "natural",
                    format!("g={}", base.label(x)),
                    square(&star, &star, Morphism::Element(x)),
                ));
            }
        }
    }

    for (a, b) in grid.pairs() {
        let loc = format!("({a},{b})");
        let monoidal = (|| {
            let ab = src.tensor_obj(&a, &b)?;
            Ok((
                Chain::of([t.component(&ab)?, f.r(&a, &b)?]),
                Chain::of([g.r(&a, &b)?, t.component(&a)?.kron(&t.component(&b)?)]),
            ))
        })();
        report.push(equation(SUITE, "monoidal", loc.clone(), monoidal));
        let comonoidal = (|| {
            let ab = src.tensor_obj(&a, &b)?;
            Ok((
                Chain::of([t.component(&a)?.kron(&t.component(&b)?), f.i(&a, &b)?]),
                Chain::of([g.i(&a, &b)?, t.component(&ab)?]),
            ))
        })();
        report.push(equation(SUITE, "comonoidal", loc, comonoidal));
    }
    let unit = src.unit();
    let unit_sq = (|| Ok((Chain::of([t.component(&unit)?, f.r0()?]), Chain::of([g.r0()?]))))();
    report.push(equation(SUITE, "monoidal-unit", "(I)", unit_sq));
    let counit_sq = (|| Ok((Chain::of([g.i0()?, t.component(&unit)?]), Chain::of([f.i0()?]))))();
    report.push(equation(SUITE, "comonoidal-counit", "(I)", counit_sq));
    report
}

/// Which member of a dual situation the inverted component sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MateSide {
    /// `(A, B, e, n)`: invert `α_A` using `α_B`.
    Left,
    /// `(B, A, e, n)`: invert `α_A` for the second object using `α_B` for
    /// the first.
    Right,
}

impl MateSide {
    pub fn as_str(&self) -> &'static str {
        match self {
            MateSide::Left => "left",
            MateSide::Right => "right",
        }
    }
}

/// The object whose component the mate inverts, and the partner whose
/// component is used to build it.
fn mate_objects(d: &DualSituation, side: MateSide) -> (MonObject, MonObject) {
    match side {
        MateSide::Left => (d.a(), d.b()),
        MateSide::Right => (d.b(), d.a()),
    }
}

/// The candidate inverse `β_A: GA → FA` of `α_A`.
///
/// With `F`'s transported coevaluation `n_F` and `G`'s transported
/// evaluation `e_G`, the left case is
/// `(e_G ⊗ 1_{FA}) ∘ (1_{GA} ⊗ α_B ⊗ 1_{FA}) ∘ (1_{GA} ⊗ n_F)`; the right
/// case is its mirror image.
pub fn mate_inverse(t: &MonComonNatTransf, d: &DualSituation, side: MateSide) -> Result<RatMatrix> {
    let (f, g) = (&t.source, &t.target);
    let (a, b) = mate_objects(d, side);
    let n_f = transport_dual(f, d)?.n().clone();
    let e_g = transport_dual(g, d)?.e().clone();
    let (fa, ga) = (f.dim_at(&a)?, g.dim_at(&a)?);
    let alpha_b = t.component(&b)?;
    let (idf, idg) = (RatMatrix::identity(fa), RatMatrix::identity(ga));
    match side {
        MateSide::Left => e_g
            .kron(&idf)
            .mat_mul(&crate::linalg::kron_all([&idg, &alpha_b, &idf]))?
            .mat_mul(&idg.kron(&n_f)),
        MateSide::Right => idf
            .kron(&e_g)
            .mat_mul(&crate::linalg::kron_all([&idf, &alpha_b, &idg]))?
            .mat_mul(&n_f.kron(&idg)),
    }
}

/// `β_A ∘ α_A = 1_{FA}` and `α_A ∘ β_A = 1_{GA}`.
pub fn check_mate_invertibility(t: &MonComonNatTransf, d: &DualSituation, side: MateSide) -> Report {
    const SUITE: &str = "mate";
    let (a, _) = mate_objects(d, side);
    let loc = format!("A={a} side={}", side.as_str());
    let mut report = Report::new();
    let parts = (|| Ok((mate_inverse(t, d, side)?, t.component(&a)?, t.source.dim_at(&a)?, t.target.dim_at(&a)?)))();
    match parts {
        Err(e) => {
            report.push(ReportEntry::error(SUITE, "beta-after-alpha", loc.clone(), &e));
            report.push(ReportEntry::error(SUITE, "alpha-after-beta", loc, &e));
        }
        Ok((beta, alpha, fa, ga)) => {
            report.push(equation(
                SUITE,
                "beta-after-alpha",
                loc.clone(),
                Ok((Chain::of([beta.clone(), alpha.clone()]), Chain::of([RatMatrix::identity(fa)]))),
            ));
            report.push(equation(
                SUITE,
                "alpha-after-beta",
                loc,
                Ok((Chain::of([alpha, beta]), Chain::of([RatMatrix::identity(ga)]))),
            ));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{tensor_left_functor, FrobeniusAlgebra};
    use crate::monoidal::FiniteBase;
    use crate::report::Status;

    fn tl2() -> FrobFunctor {
        let alg = FrobeniusAlgebra::group_algebra(&FiniteBase::zmod(2).unwrap());
        tensor_left_functor(&alg, &CategoryInstance::MatQ).unwrap()
    }

    fn grid() -> ObjectGrid {
        ObjectGrid::dims(1, 2).unwrap()
    }

    #[test]
    fn identity_transformation_passes() {
        let r = check_nat_transf(&MonComonNatTransf::identity(&tl2()), &grid());
        assert!(r.all_pass(), "{:?}", r.failures().next());
    }

    #[test]
    fn doubled_transformation_fails_the_unit_square() {
        let t = MonComonNatTransf::new(tl2(), tl2(), TransfComponents::Scaled(Rational::from(2))).unwrap();
        let r = check_nat_transf(&t, &grid());
        assert_eq!(r.first_failure_of("monoidal-unit").unwrap().status, Status::Fail);
        assert!(r.first_failure_of("natural").is_none());
    }

    #[test]
    fn swapped_components_fail_naturality() {
        let t = MonComonNatTransf::new(tl2(), tl2(), TransfComponents::Commutation(2)).unwrap();
        let r = check_nat_transf(&t, &grid());
        let e = r.first_failure_of("natural").unwrap();
        assert_eq!(e.status, Status::Fail);
        assert!(e.location.contains("f=E("));
    }

    #[test]
    fn sign_character_is_a_frobenius_automorphism() {
        // e ↦ e, a ↦ −a
        let phi = RatMatrix::from_ints(&[[1, 0], [0, -1]]);
        let t = MonComonNatTransf::new(tl2(), tl2(), TransfComponents::LeftFactor(phi.clone())).unwrap();
        assert!(check_nat_transf(&t, &grid()).all_pass());
        let beta = mate_inverse(&t, &DualSituation::cupcap(2), MateSide::Left).unwrap();
        assert_eq!(beta, phi.kron(&RatMatrix::identity(2)));
        assert!(check_mate_invertibility(&t, &DualSituation::cupcap(2), MateSide::Left).all_pass());
    }

    #[test]
    fn trivial_character_is_monoidal_but_not_comonoidal() {
        // e ↦ e, a ↦ e
        let phi = RatMatrix::from_ints(&[[1, 1], [0, 0]]);
        let t = MonComonNatTransf::new(tl2(), tl2(), TransfComponents::LeftFactor(phi)).unwrap();
        let r = check_nat_transf(&t, &grid());
        assert!(r.first_failure_of("monoidal").is_none());
        assert!(r.first_failure_of("monoidal-unit").is_none());
        assert_eq!(r.first_failure_of("comonoidal-counit").unwrap().status, Status::Fail);
        let m = check_mate_invertibility(&t, &DualSituation::cupcap(2), MateSide::Left);
        assert_eq!(m.first_failure_of("beta-after-alpha").unwrap().status, Status::Fail);
    }

    #[test]
    fn identity_mates_are_identities() {
        let id = MonComonNatTransf::identity(&FrobFunctor::identity());
        let d = DualSituation::cupcap(2);
        assert_eq!(mate_inverse(&id, &d, MateSide::Left).unwrap(), RatMatrix::identity(2));
        let t = MonComonNatTransf::identity(&tl2());
        for side in [MateSide::Left, MateSide::Right] {
            assert!(check_mate_invertibility(&t, &d, side).all_pass());
        }
    }

    #[test]
    fn right_side_mate_on_an_asymmetric_pair() {
        // A = ℚ², B = ℚ² with e the standard pairing twisted by an invertible matrix
        let m = RatMatrix::from_ints(&[[1, 1], [0, 1]]);
        let minv = crate::linalg::inverse(&m).unwrap();
        let e = DualSituation::cupcap(2).e().mat_mul(&m.kron(&RatMatrix::identity(2))).unwrap();
        // n = Σ minv-twisted basis, so that the triangles hold
        let n = RatMatrix::identity(2).kron(&minv).mat_mul(DualSituation::cupcap(2).n()).unwrap();
        let d = DualSituation::new(MonObject::Mat(2), MonObject::Mat(2), e, n).unwrap();
        assert!(crate::duality::check_triangles(&d).all_pass());
        let phi = RatMatrix::from_ints(&[[1, 0], [0, -1]]);
        let t = MonComonNatTransf::new(tl2(), tl2(), TransfComponents::LeftFactor(phi)).unwrap();
        assert!(check_mate_invertibility(&t, &d, MateSide::Right).all_pass());
        assert!(check_mate_invertibility(&t, &d, MateSide::Left).all_pass());
    }

    #[test]
    fn missing_table_entries_are_errors() {
        let t = MonComonNatTransf::new(
            FrobFunctor::identity(),
            FrobFunctor::identity(),
            TransfComponents::Table(BTreeMap::from([(MonObject::Mat(1), RatMatrix::identity(1))])),
        )
        .unwrap();
        let r = check_nat_transf(&t, &grid());
        assert_eq!(r.exit_code(), 2);
    }
}
