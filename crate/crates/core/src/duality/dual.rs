use crate::error::{FrobError, Result};
use crate::functor::{FrobFunctor, ObjectGrid};
use crate::linalg::RatMatrix;
use crate::monoidal::{MonObject, Morphism};
use crate::report::{equation, Chain, Report};

/// `(A, B, e, n)` with `e: A ⊗ B → I` and `n: I → B ⊗ A` in `Mat(ℚ)`.
/// Only shapes are enforced; the triangle identities are checked separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSituation {
    a: MonObject,
    b: MonObject,
    e: RatMatrix,
    n: RatMatrix,
}

impl DualSituation {
    pub fn new(a: MonObject, b: MonObject, e: RatMatrix, n: RatMatrix) -> Result<Self> {
        let (da, db) = (a.expect_dim()?, b.expect_dim()?);
        if e.shape() != (1, da * db) {
            return Err(FrobError::Shape(format!(
                "evaluation must be 1x{}, got {}x{}",
                da * db,
                e.rows(),
                e.cols()
            )));
        }
        if n.shape() != (db * da, 1) {
            return Err(FrobError::Shape(format!(
                "coevaluation must be {}x1, got {}x{}",
                db * da,
                n.rows(),
                n.cols()
            )));
        }
        Ok(Self { a, b, e, n })
    }

    /// `ℚ^n` as its own dual: `e = Σ eᵢ ⊗ eᵢ` read as a row, `n` the same
    /// vector as a column.
    pub fn cupcap(n: usize) -> Self {
        let mut e = RatMatrix::zeros(1, n * n);
        for i in 0..n {
            e.set(0, i * n + i, crate::Rational::ONE);
        }
        let col = e.transpose();
        Self {
            a: MonObject::Mat(n),
            b: MonObject::Mat(n),
            e,
            n: col,
        }
    }

    pub fn a(&self) -> MonObject {
        self.a
    }

    pub fn b(&self) -> MonObject {
        self.b
    }

    pub fn e(&self) -> &RatMatrix {
        &self.e
    }

    pub fn n(&self) -> &RatMatrix {
        &self.n
    }

    pub fn with_e(self, e: RatMatrix) -> Self {
        Self { e, ..self }
    }

    pub fn with_n(self, n: RatMatrix) -> Self {
        Self { n, ..self }
    }

    fn dims(&self) -> Result<(usize, usize)> {
        Ok((self.a.expect_dim()?, self.b.expect_dim()?))
    }
}

/// `(e ⊗ 1)(1 ⊗ n) = 1_A` and `(1 ⊗ e)(n ⊗ 1) = 1_B`.
pub fn check_triangles(d: &DualSituation) -> Report {
    const SUITE: &str = "triangles";
    let loc = format!("({},{})", d.a, d.b);
    let mut report = Report::new();
    let left = d.dims().map(|(da, _)| {
        let id = RatMatrix::identity(da);
        (Chain::of([d.e.kron(&id), id.kron(&d.n)]), Chain::of([id]))
    });
    report.push(equation(SUITE, "triangle-left", loc.clone(), left));
    let right = d.dims().map(|(_, db)| {
        let id = RatMatrix::identity(db);
        (Chain::of([id.kron(&d.e), d.n.kron(&id)]), Chain::of([id]))
    });
    report.push(equation(SUITE, "triangle-right", loc, right));
    report
}

/// `(FA, FB, i₀·F(e)·r_{A,B}, i_{B,A}·F(n)·r₀)`.
pub fn transport_dual(f: &FrobFunctor, d: &DualSituation) -> Result<DualSituation> {
    let (a, b) = (d.a, d.b);
    let e = f
        .i0()?
        .mat_mul(&f.map_morphism(&Morphism::Matrix(d.e.clone()))?)?
        .mat_mul(&f.r(&a, &b)?)?;
    let n = f
        .i(&b, &a)?
        .mat_mul(&f.map_morphism(&Morphism::Matrix(d.n.clone()))?)?
        .mat_mul(&f.r0()?)?;
    DualSituation::new(f.map_object(&a)?, f.map_object(&b)?, e, n)
}

/// [`transport_dual`], after confirming that `grid` contains `A`, `B`,
/// `A ⊗ B` and `B ⊗ A`.
pub fn transport_dual_within(f: &FrobFunctor, d: &DualSituation, grid: &ObjectGrid) -> Result<DualSituation> {
    let src = f.source();
    let needed = [d.a, d.b, src.tensor_obj(&d.a, &d.b)?, src.tensor_obj(&d.b, &d.a)?];
    let mut missing: Vec<String> = Vec::new();
    for x in needed {
        let s = x.to_string();
        if !grid.objects().contains(&x) && !missing.contains(&s) {
            missing.push(s);
        }
    }
    if !missing.is_empty() {
        return Err(FrobError::Precondition(format!(
            "grid {grid} does not cover objects {}",
            missing.join(", ")
        )));
    }
    transport_dual(f, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{tensor_left_functor, FrobeniusAlgebra};
    use crate::monoidal::{CategoryInstance, FiniteBase};
    use crate::report::Status;
    use crate::Rational;

    fn tl2() -> FrobFunctor {
        let alg = FrobeniusAlgebra::group_algebra(&FiniteBase::zmod(2).unwrap());
        tensor_left_functor(&alg, &CategoryInstance::MatQ).unwrap()
    }

    #[test]
    fn cupcap_two_is_the_hand_written_pair() {
        let d = DualSituation::cupcap(2);
        assert_eq!(d.e, RatMatrix::from_ints(&[[1, 0, 0, 1]]));
        assert_eq!(d.n, RatMatrix::from_ints(&[[1], [0], [0], [1]]));
    }

    #[test]
    fn cupcaps_pass_triangles() {
        for n in 1..=4 {
            assert!(check_triangles(&DualSituation::cupcap(n)).all_pass());
        }
    }

    #[test]
    fn doubled_evaluation_fails_both_triangles() {
        let d = DualSituation::cupcap(2);
        let bad = d.clone().with_e(d.e.scale(&Rational::from(2)));
        let r = check_triangles(&bad);
        assert_eq!(r.failures().count(), 2);
        let w = r.entries[0].witness.as_ref().unwrap();
        assert_eq!(w.lhs, RatMatrix::identity(2).scale(&Rational::from(2)));
    }

    #[test]
    fn constructor_checks_shapes() {
        assert!(DualSituation::new(
            MonObject::Mat(2),
            MonObject::Mat(2),
            RatMatrix::zeros(1, 3),
            RatMatrix::zeros(4, 1)
        )
        .is_err());
    }

    #[test]
    fn identity_transport_is_unchanged() {
        let d = DualSituation::cupcap(3);
        assert_eq!(transport_dual(&FrobFunctor::identity(), &d).unwrap(), d);
    }

    #[test]
    fn tensor_left_transport_passes_triangles() {
        for n in 1..=3 {
            let t = transport_dual(&tl2(), &DualSituation::cupcap(n)).unwrap();
            assert_eq!(t.a(), MonObject::Mat(2 * n));
            let r = check_triangles(&t);
            assert!(r.all_pass(), "n = {n}: {:?}", r.failures().next());
        }
    }

    #[test]
    fn doubled_counit_in_the_functor_breaks_a_triangle() {
        let f = tl2().with_component(crate::functor::Component::I0, RatMatrix::from_ints(&[[2, 0]]));
        let t = transport_dual(&f, &DualSituation::cupcap(2)).unwrap();
        let r = check_triangles(&t);
        assert!(r.failures().count() >= 1);
        assert!(r.entries.iter().all(|e| e.status != Status::Error));
    }

    #[test]
    fn coverage_errors_list_missing_objects() {
        let grid = ObjectGrid::dims(1, 2).unwrap();
        let err = transport_dual_within(&tl2(), &DualSituation::cupcap(2), &grid).unwrap_err();
        assert!(err.to_string().contains('4'), "{err}");
        let big = ObjectGrid::dims(1, 4).unwrap();
        assert!(transport_dual_within(&tl2(), &DualSituation::cupcap(2), &big).is_ok());
    }
}
