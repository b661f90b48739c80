use frobcheck_core::dsl::{parse_spec, serialize_spec};
use frobcheck_core::duality::{tensor_left_functor, FrobeniusAlgebra};
use frobcheck_core::linalg::{cokernel, kron, rank};
use frobcheck_core::monoidal::Morphism;
use frobcheck_core::{CategoryInstance, FiniteBase, MonObject, RatMatrix, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(rational(), rows * cols).prop_map(move |v| RatMatrix::new(rows, cols, v).unwrap())
}

fn any_matrix(max: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| matrix(r, c))
}

/// Sparse integer matrices hit rank deficiency far more often than dense ones.
fn sparse_matrix(max: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop_oneof![3 => Just(0i64), 1 => -2i64..=2], r * c)
            .prop_map(move |v| RatMatrix::new(r, c, v.into_iter().map(Rational::from_integer).collect()).unwrap())
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_interchange(a in matrix(2, 3), b in matrix(2, 2), c in matrix(3, 2), d in matrix(2, 1)) {
        let lhs = kron(&a, &b).mat_mul(&kron(&c, &d)).unwrap();
        let rhs = kron(&a.mat_mul(&c).unwrap(), &b.mat_mul(&d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cokernel_postconditions(f in sparse_matrix(5)) {
        let ck = cokernel(&f);
        let k = f.rows() - rank(&f);
        prop_assert_eq!(ck.projection.shape(), (k, f.rows()));
        prop_assert_eq!(ck.section.shape(), (f.rows(), k));
        prop_assert!(ck.projection.mat_mul(&f).unwrap().is_zero());
        prop_assert!(ck.projection.mat_mul(&ck.section).unwrap().is_identity());
        prop_assert_eq!(rank(&ck.projection), k);
    }

    #[test]
    fn cokernel_ignores_relation_order((f, perm) in sparse_matrix(5).prop_flat_map(|f| {
        let n = f.cols();
        (Just(f), permutation(n))
    })) {
        let mut cols = vec![Rational::ZERO; f.rows() * f.cols()];
        for (new, &old) in perm.iter().enumerate() {
            for i in 0..f.rows() {
                cols[i * f.cols() + new] = f.get(i, old).clone();
            }
        }
        let shuffled = RatMatrix::new(f.rows(), f.cols(), cols).unwrap();
        let (a, b) = (cokernel(&f), cokernel(&shuffled));
        prop_assert_eq!(a.projection, b.projection);
        prop_assert_eq!(a.section, b.section);
    }

    #[test]
    fn tensor_left_is_natural_on_random_maps(f in any_matrix(3), g in any_matrix(3)) {
        let alg = FrobeniusAlgebra::group_algebra(&FiniteBase::zmod(2).unwrap());
        let func = tensor_left_functor(&alg, &CategoryInstance::MatQ).unwrap();
        let (a, a2) = (MonObject::Mat(f.cols()), MonObject::Mat(f.rows()));
        let (b, b2) = (MonObject::Mat(g.cols()), MonObject::Mat(g.rows()));
        let ff = func.map_morphism(&Morphism::Matrix(f.clone())).unwrap();
        let fg = func.map_morphism(&Morphism::Matrix(g.clone())).unwrap();
        let ffg = func.map_morphism(&Morphism::Matrix(kron(&f, &g))).unwrap();
        let r_lhs = func.r(&a2, &b2).unwrap().mat_mul(&kron(&ff, &fg)).unwrap();
        let r_rhs = ffg.mat_mul(&func.r(&a, &b).unwrap()).unwrap();
        prop_assert_eq!(r_lhs, r_rhs);
        let i_lhs = kron(&ff, &fg).mat_mul(&func.i(&a, &b).unwrap()).unwrap();
        let i_rhs = func.i(&a2, &b2).unwrap().mat_mul(&ffg).unwrap();
        prop_assert_eq!(i_lhs, i_rhs);
    }

    #[test]
    fn matrix_literals_round_trip(m in prop::collection::vec(any_matrix(4), 1..4)) {
        let text: String = m
            .iter()
            .enumerate()
            .map(|(k, x)| {
                let rows: Vec<String> = x
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" "))
                    .collect();
                format!("matrix m{k} {}x{} = [{}]\n", x.rows(), x.cols(), rows.join("; "))
            })
            .collect();
        let model = parse_spec(&text).unwrap();
        let again = parse_spec(&serialize_spec(&model)).unwrap();
        prop_assert_eq!(&model, &again);
        for (k, x) in m.iter().enumerate() {
            let bound = &model.bindings[&format!("m{k}")];
            prop_assert!(matches!(bound, frobcheck_core::dsl::Value::Matrix(y) if y == x));
        }
    }
}

#[test]
fn corpus_round_trips_through_serialization() {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("specs");
    let mut seen = 0;
    for dir in [root.clone(), root.join("negative")] {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.extension().is_some_and(|e| e == "frob") {
                let model = parse_spec(&std::fs::read_to_string(&path).unwrap()).unwrap();
                let text = serialize_spec(&model);
                let again = parse_spec(&text).unwrap();
                assert_eq!(model, again, "{}", path.display());
                assert_eq!(text, serialize_spec(&again), "{}", path.display());
                seen += 1;
            }
        }
    }
    assert!(seen >= 10);
}
