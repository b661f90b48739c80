//! One line per acceptance criterion, all exact. This target runs without
//! the libtest harness so the lines are always printed; it exits nonzero if
//! any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use frobcheck_core::convolution::{
    canonical_eval2_retraction, canonical_eval3, convolution_product, induced_frobenius_check, BaseFunctor,
};
use frobcheck_core::dsl::{parse_spec, run_checks, RunOptions};
use frobcheck_core::duality::{
    apply_functor_to_algebra, check_frobenius_algebra, check_mate_invertibility, check_nat_transf,
    check_triangles, tensor_left_functor, transport_dual, DualSituation, FrobeniusAlgebra, MateSide,
    MonComonNatTransf, TransfComponents,
};
use frobcheck_core::frob_tensor::{check_frob_category, pointwise_tensor};
use frobcheck_core::functor::{
    check_frobenius, compose_frobenius, from_strong, is_split, run_all_suites, Component, FrobFunctor, ObjectGrid,
};
use frobcheck_core::{format_report, CategoryInstance, FiniteBase, FrobError, RatMatrix, ReportMode, Status};
use num_rational::BigRational;
use num_traits::{One, Zero};

type Big = Vec<Vec<BigRational>>;

fn to_big(m: &RatMatrix) -> Big {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_big_rational()).collect())
        .collect()
}

/// Schoolbook product; shares no code with the library's multiplication.
fn naive_mul(a: &Big, b: &Big, inner: usize) -> Big {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Right-to-left composite of a factor chain.
fn naive_chain(factors: &[RatMatrix]) -> Big {
    let last = factors.last().expect("nonempty chain");
    let mut acc = to_big(last);
    let mut acc_rows = last.rows();
    for f in factors.iter().rev().skip(1) {
        acc = naive_mul(&to_big(f), &acc, acc_rows);
        acc_rows = f.rows();
    }
    acc
}

/// Rank by Gaussian elimination over `BigRational`.
fn naive_rank(mut m: Big) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let factor = &m[r][c] / &pivot;
                for k in c..cols {
                    let sub = &factor * &m[rank][k];
                    m[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Quotient dimension of `ℚ[G] ⊗ V ⊗ W` by `x·gh ⊗ v ⊗ w ~ x ⊗ ρ(g)v ⊗ σ(h)w`,
/// assembled from scratch.
fn rank_oracle_dim(base: &FiniteBase, rho: &[RatMatrix], sigma: &[RatMatrix]) -> usize {
    let n = base.order();
    let (dv, dw) = (rho[0].rows(), sigma[0].rows());
    let vw = dv * dw;
    let ambient = n * vw;
    let mut rows: Big = Vec::new();
    for g in 0..n {
        for h in 0..n {
            let gh = base.mul(g, h);
            for x in 0..n {
                for i in 0..dv {
                    for j in 0..dw {
                        let mut rel = vec![BigRational::zero(); ambient];
                        rel[base.mul(x, gh) * vw + i * dw + j] += BigRational::one();
                        for a in 0..dv {
                            for b in 0..dw {
                                let coeff = rho[g].get(a, i).to_big_rational() * sigma[h].get(b, j).to_big_rational();
                                rel[x * vw + a * dw + b] -= coeff;
                            }
                        }
                        rows.push(rel);
                    }
                }
            }
        }
    }
    ambient - naive_rank(rows)
}

/// `(1/|G|) Σ_g χ_V(g) χ_W(g⁻¹)`.
fn burnside_dim(base: &FiniteBase, rho: &[RatMatrix], sigma: &[RatMatrix]) -> BigRational {
    let trace = |m: &RatMatrix| (0..m.rows()).fold(BigRational::zero(), |acc, i| acc + m.get(i, i).to_big_rational());
    let total = (0..base.order()).fold(BigRational::zero(), |acc, g| {
        acc + trace(&rho[g]) * trace(&sigma[base.inverse(g)])
    });
    total / BigRational::from_integer(base.order().into())
}

fn specs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/specs")
}

fn corpus(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "frob"))
        .collect();
    files.sort();
    files
}

fn zmod_alg(n: usize) -> FrobeniusAlgebra {
    FrobeniusAlgebra::group_algebra(&FiniteBase::zmod(n).unwrap())
}

fn tensor_left(n: usize) -> FrobFunctor {
    tensor_left_functor(&zmod_alg(n), &CategoryInstance::MatQ).unwrap()
}

fn grid(lo: usize, hi: usize) -> ObjectGrid {
    ObjectGrid::dims(lo, hi).unwrap()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn within(ok: bool, elapsed: Duration, limit: u64, detail: &str) -> Outcome {
    let in_time = elapsed < Duration::from_secs(limit);
    let note = if in_time { "" } else { ", over the time budget" };
    outcome(ok && in_time, format!("{detail}{note}"))
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let reports: Vec<_> = [2, 3].map(|n| run_all_suites(&tensor_left(n), &grid(1, 3))).into();
    let entries: usize = reports.iter().map(|r| r.len()).sum();
    let suites = ["structure", "naturality", "monoidal", "comonoidal", "frobenius"];
    let covered = reports
        .iter()
        .all(|r| suites.iter().all(|s| r.entries.iter().any(|e| e.suite == *s)));
    let ok = covered && reports.iter().all(|r| r.all_pass());
    within(ok, t.elapsed(), 10, &format!("{entries} entries over {{1,2,3}}^3"))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    for n in [2, 3] {
        let f = tensor_left(n);
        for k in 1..=3 {
            let moved = transport_dual(&f, &DualSituation::cupcap(k)).unwrap();
            ok &= check_triangles(&moved).all_pass();
        }
    }
    let f = tensor_left(2);
    let doubled = f.i0().unwrap().scale(&2.into());
    let broken = f.with_component(Component::I0, doubled);
    let control = check_triangles(&transport_dual(&broken, &DualSituation::cupcap(2)).unwrap());
    let control_fails = control.failures().next().is_some();
    within(ok && control_fails, t.elapsed(), 5, "6 transported duals pass; doubled i0 fails a triangle")
}

fn criterion_3() -> Outcome {
    let g = grid(1, 3);
    let strong = from_strong(FrobFunctor::identity(), &g).unwrap();
    let passes = check_frobenius(&strong, &g).all_pass() && is_split(&strong, &g);
    let rejected = matches!(from_strong(tensor_left(2), &g), Err(FrobError::NotInvertible { .. }));
    outcome(passes && rejected, "identity: Frobenius and split; r = mu (2x4, rank 2) rejected")
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let f = tensor_left(2);
    let ff = compose_frobenius(&f, &f).unwrap();
    let r = check_frobenius(&ff, &grid(1, 2));
    within(r.all_pass() && !r.is_empty(), t.elapsed(), 30, &format!("{} entries on {{1,2}}^3", r.len()))
}

fn criterion_5() -> Outcome {
    let image = apply_functor_to_algebra(&tensor_left(2), &zmod_alg(2)).unwrap();
    let r = check_frobenius_algebra(&image);
    outcome(r.len() == 8 && r.all_pass(), format!("{} of 8 equations hold on F(R), dim {}", r.entries.iter().filter(|e| e.is_pass()).count(), image.dim()))
}

fn criterion_6() -> Outcome {
    let f = tensor_left(2);
    let g = tensor_left(2);
    let d = DualSituation::cupcap(2);
    let id = MonComonNatTransf::new(f.clone(), g.clone(), TransfComponents::Identity).unwrap();
    let mut ok = check_nat_transf(&id, &grid(1, 2)).all_pass();
    for side in [MateSide::Left, MateSide::Right] {
        let r = check_mate_invertibility(&id, &d, side);
        ok &= r.len() == 2 && r.all_pass();
    }
    let trivial_character = RatMatrix::from_ints(&[[1, 1], [0, 0]]);
    let bad = MonComonNatTransf::new(f, g, TransfComponents::LeftFactor(trivial_character)).unwrap();
    let gate = check_nat_transf(&bad, &grid(1, 2));
    let gated = gate.failures().any(|e| e.check.starts_with("comonoidal"));
    outcome(ok && gated, "identity mate inverts on both sides; non-comonoidal alpha rejected")
}

fn criterion_7() -> Outcome {
    let f = tensor_left(2);
    let g = grid(1, 2);
    let ft = pointwise_tensor(&f, &f).unwrap();
    let frob = check_frobenius(&ft, &g);
    let cat = check_frob_category(&f, &f, &f, &g);
    let has = |prefix: &str| cat.entries.iter().any(|e| e.check.starts_with(prefix));
    let covered = has("hexagon-1") && has("hexagon-2") && has("braiding-natural") && has("self-dual-triangle");
    outcome(
        frob.all_pass() && cat.all_pass() && covered,
        format!("{} + {} entries", frob.len(), cat.len()),
    )
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let base = FiniteBase::zmod(2).unwrap();
    let f = BaseFunctor::regular(&base).unwrap();
    let eval3 = canonical_eval3(&f).unwrap();
    let retraction = canonical_eval2_retraction(&f);
    let named = |c: &str| retraction.entries.iter().any(|e| e.check == c && e.is_pass());
    let retracts = named("retraction-lh") && named("retraction-hl") && named("eval2-iso");
    let square = induced_frobenius_check(&f);
    let squares = square.entries.iter().filter(|e| e.check.starts_with("frobenius-square")).count();
    let dim = convolution_product(&f, &f).unwrap().dim();
    let rho: Vec<RatMatrix> = base.elements().map(|g| f.rho(g).unwrap().clone()).collect();
    let oracle = rank_oracle_dim(&base, &rho, &rho);
    let burnside = burnside_dim(&base, &rho, &rho);
    let dims_agree = dim == oracle && burnside == BigRational::from_integer(oracle.into());
    let ok = eval3.iso && retraction.all_pass() && retracts && square.all_pass() && squares == 2 && dims_agree;
    within(ok, t.elapsed(), 20, &format!("F*F has dimension {dim}; rank oracle {oracle}; character formula {burnside}"))
}

fn criterion_9() -> Outcome {
    let render = |p: &Path| {
        let model = parse_spec(&std::fs::read_to_string(p).unwrap()).unwrap();
        format_report(&run_checks(&model, &RunOptions::default()), ReportMode::Json)
    };
    let mut files = corpus(&specs_dir());
    files.extend(corpus(&specs_dir().join("negative")));
    let identical = files.iter().all(|p| render(p) == render(p));

    let bad = std::env::temp_dir().join(format!("frobcheck-acceptance-{}.frob", std::process::id()));
    std::fs::write(&bad, "frobalg R = zmod(2)\nfunctor F = tensor_left(R\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_frobcheck"))
        .arg("run")
        .arg(&bad)
        .env_remove("FROBCHECK_MAX_DIM")
        .output()
        .unwrap();
    std::fs::remove_file(&bad).ok();
    let stderr = String::from_utf8_lossy(&out.stderr);
    let located = out.status.code() == Some(2) && stderr.contains("line 3, column 1");
    outcome(
        identical && located && files.len() >= 10,
        format!("{} spec files rendered twice; malformed spec: {}", files.len(), stderr.trim()),
    )
}

fn criterion_10() -> Outcome {
    let files = corpus(&specs_dir().join("negative"));
    let mut cases = 0;
    let mut fails = 0;
    let mut suites = std::collections::BTreeSet::new();
    let mut ok = true;
    for p in &files {
        let model = parse_spec(&std::fs::read_to_string(p).unwrap()).unwrap();
        let report = run_checks(&model, &RunOptions::default());
        let mut case_fails = 0;
        for e in report.entries.iter().filter(|e| e.status == Status::Fail) {
            case_fails += 1;
            suites.insert(e.suite.clone());
            let Some(w) = &e.witness else {
                ok = false;
                continue;
            };
            let (lhs, rhs) = (naive_chain(&w.lhs_factors), naive_chain(&w.rhs_factors));
            ok &= lhs == to_big(&w.lhs) && rhs == to_big(&w.rhs);
            ok &= lhs[w.row][w.col] != rhs[w.row][w.col];
        }
        if case_fails > 0 {
            cases += 1;
        } else {
            ok = false;
        }
        fails += case_fails;
    }
    outcome(
        ok && cases >= 6,
        format!("{cases} corrupted specs, {fails} fails across suites {suites:?}, every witness confirmed"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("tensor_left passes every suite", criterion_1),
        ("transported duals satisfy the triangles", criterion_2),
        ("strong implies Frobenius and split", criterion_3),
        ("composites are Frobenius", criterion_4),
        ("Frobenius functors preserve Frobenius algebras", criterion_5),
        ("mates invert monoidal comonoidal transformations", criterion_6),
        ("pointwise tensor, hexagons, self-duality", criterion_7),
        ("convolution evaluation, retraction and square", criterion_8),
        ("determinism and DSL diagnostics", criterion_9),
        ("counterexamples re-multiply to their witnesses", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let status = if o.ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {name}: {} ({:.2}s)",
            i + 1,
            o.detail,
            t.elapsed().as_secs_f64()
        );
        if !o.ok {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
