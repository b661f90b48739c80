use crate::error::{FrobError, Result};
use crate::functor::{run_all_suites, ObjectGrid};
use crate::linalg::{inverse, kron_all, rank, RatMatrix};
use crate::report::{equation, Chain, Report, ReportEntry};

use super::coend::{first_unannihilated, induced_map, CoendSpace};
use super::{convolution_product, BaseFunctor, ConvolutionBase};

const SUITE: &str = "convolution";

/// A canonical evaluation `∫ 𝒜(A₁⊗…⊗Aₖ, −) · F(A₁⊗…⊗Aₖ) → F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub space: CoendSpace,
    /// On ambient representatives: the class of `x ⊗ v` goes to `ρ(x)v`.
    pub ambient_map: RatMatrix,
    /// The map out of the quotient, `ambient_map · section`.
    pub induced: RatMatrix,
    pub rank: usize,
    pub iso: bool,
}

fn evaluation(f: &BaseFunctor, arity: usize) -> Result<Evaluation> {
    let d = f.dim();
    let name = format!("{arity}-variable coend of F");
    let (space, ambient_map) = match f.base() {
        ConvolutionBase::Sigma(base) => {
            let space = CoendSpace::sigma(base, &name, arity, &[d], |t| Ok(f.rho(base.product(t))?.clone()))?;
            let blocks = base.elements().map(|x| f.rho(x).cloned()).collect::<Result<Vec<_>>>()?;
            (space, RatMatrix::hstack(d, &blocks)?)
        }
        ConvolutionBase::Discrete(base) => {
            let space = CoendSpace::discrete(base, &name, arity, d);
            let blocks = vec![RatMatrix::identity(d); space.tuples.len()];
            (space, RatMatrix::hstack(d, &blocks)?)
        }
    };
    let leak = ambient_map.mat_mul(&space.relations)?;
    if let Some(c) = (0..leak.cols()).find(|&c| (0..leak.rows()).any(|r| !leak.get(r, c).is_zero())) {
        return Err(FrobError::WellDefinedness {
            map: format!("evaluation of the {name}"),
            relation: c,
        });
    }
    let induced = ambient_map.mat_mul(&space.section)?;
    let rank = rank(&induced);
    let iso = induced.is_square() && rank == induced.rows();
    Ok(Evaluation {
        space,
        ambient_map,
        induced,
        rank,
        iso,
    })
}

pub fn canonical_eval3(f: &BaseFunctor) -> Result<Evaluation> {
    evaluation(f, 3)
}

pub fn canonical_eval2(f: &BaseFunctor) -> Result<Evaluation> {
    evaluation(f, 2)
}

/// The maps relating the two- and three-variable coends of `F`.
///
/// `h` is induced by `(A, B, C) ↦ (A, B⊗C)`, `k` by `(A, B) ↦ (A, B, I)`,
/// and `l` is the two-variable evaluation followed by the inverse of the
/// three-variable one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractionMaps {
    pub eval3: Evaluation,
    pub eval2: Evaluation,
    pub h: RatMatrix,
    pub k: RatMatrix,
    pub l: RatMatrix,
}

pub fn retraction_maps(f: &BaseFunctor) -> Result<RetractionMaps> {
    let eval3 = canonical_eval3(f)?;
    if !eval3.iso {
        return Err(FrobError::Precondition(format!(
            "three-variable evaluation is not invertible (rank {} of a {}x{} map)",
            eval3.rank,
            eval3.induced.rows(),
            eval3.induced.cols()
        )));
    }
    let eval2 = canonical_eval2(f)?;
    // over Sigma(G) both coends share the ambient space ℚ[G] ⊗ V and the
    // tuple maps act as the identity on representatives
    let id = RatMatrix::identity(eval3.space.ambient_dim);
    let h = induced_map(&eval3.space, &eval2.space, &id, "h")?;
    let k = induced_map(&eval2.space, &eval3.space, &id, "k")?;
    let inv3 = inverse(&eval3.induced).expect("checked invertible");
    let l = inv3.mat_mul(&eval2.induced)?;
    Ok(RetractionMaps { eval3, eval2, h, k, l })
}

/// `eval3` invertible, `h∘k = 1`, `l∘h = 1`, `h∘l = 1`, and `eval2`
/// invertible.
pub fn canonical_eval2_retraction(f: &BaseFunctor) -> Report {
    let mut report = Report::new();
    let loc = format!("F on {}", f.base().name());
    let eval3 = match canonical_eval3(f) {
        Ok(e) => e,
        Err(e) => {
            report.push(ReportEntry::error(SUITE, "eval3-iso", loc, &e));
            return report;
        }
    };
    report.push(iso_entry("eval3-iso", &loc, &eval3));
    let maps = match retraction_maps(f) {
        Ok(m) => m,
        Err(e) => {
            report.push(ReportEntry::error(SUITE, "retraction", loc, &e));
            return report;
        }
    };
    let (d2, d3) = (maps.eval2.space.dim(), maps.eval3.space.dim());
    let eqs = [
        ("retraction-hk", Chain::of([maps.h.clone(), maps.k.clone()]), RatMatrix::identity(d2)),
        ("retraction-lh", Chain::of([maps.l.clone(), maps.h.clone()]), RatMatrix::identity(d3)),
        ("retraction-hl", Chain::of([maps.h.clone(), maps.l.clone()]), RatMatrix::identity(d2)),
    ];
    for (check, lhs, id) in eqs {
        report.push(equation(SUITE, check, loc.clone(), Ok((lhs, Chain::of([id])))));
    }
    report.push(iso_entry("eval2-iso", &loc, &maps.eval2));
    report
}

fn iso_entry(check: &str, loc: &str, e: &Evaluation) -> ReportEntry {
    if e.iso {
        ReportEntry::pass(SUITE, check, loc)
    } else {
        ReportEntry::fail(
            SUITE,
            check,
            loc,
            format!(
                "evaluation {}x{} has rank {}, so it is not invertible",
                e.induced.rows(),
                e.induced.cols(),
                e.rank
            ),
        )
    }
}

struct Quotients {
    /// `F(A⊗B) ⊗ FC`
    s1: CoendSpace,
    /// `FA ⊗ FB ⊗ FC`
    s2: CoendSpace,
    /// `F(A⊗B⊗C)`
    s3: CoendSpace,
    /// `FA ⊗ F(B⊗C)`
    s4: CoendSpace,
    /// `F * F`
    ff: CoendSpace,
}

fn quotients(f: &BaseFunctor) -> Result<Quotients> {
    let ConvolutionBase::Sigma(base) = f.base() else {
        return Err(FrobError::UnsupportedStructure(
            "induced structure is computed on Sigma(G) bases only".into(),
        ));
    };
    let d = f.dim();
    let rho = |g: usize| f.rho(g).cloned();
    let m = |a, b| base.mul(a, b);
    Ok(Quotients {
        s1: CoendSpace::sigma(base, "F(AB)xFC", 3, &[d, d], |t| {
            Ok(rho(m(t[0], t[1]))?.kron(&rho(t[2])?))
        })?,
        s2: CoendSpace::sigma(base, "FAxFBxFC", 3, &[d, d, d], |t| {
            Ok(kron_all([&rho(t[0])?, &rho(t[1])?, &rho(t[2])?]))
        })?,
        s3: CoendSpace::sigma(base, "F(ABC)", 3, &[d], |t| rho(base.product(t)))?,
        s4: CoendSpace::sigma(base, "FAxF(BC)", 3, &[d, d], |t| {
            Ok(rho(t[0])?.kron(&rho(m(t[1], t[2]))?))
        })?,
        ff: convolution_product(f, f)?,
    })
}

/// The Frobenius squares on the three-variable coends, the well-definedness
/// of every induced map, and the isomorphisms `F * F ≅ ∫ F(A⊗B) ⊗ FC` and
/// `F * F ≅ ∫ FA ⊗ F(B⊗C)` realised by the identity on representatives.
pub fn induced_frobenius_check(f: &BaseFunctor) -> Report {
    let mut report = Report::new();
    let loc = format!("F on {}", f.base().name());
    let Some(s) = f.structure() else {
        let e = FrobError::MissingComponent {
            component: "structure maps".into(),
            location: "convolution functor".into(),
        };
        report.push(ReportEntry::error(SUITE, "induced-structure", loc, &e));
        return report;
    };
    match canonical_eval3(f) {
        Ok(e) if e.iso => {}
        Ok(e) => {
            let err = FrobError::Precondition(format!(
                "three-variable evaluation is not invertible (rank {})",
                e.rank
            ));
            report.push(ReportEntry::error(SUITE, "induced-structure", loc, &err));
            return report;
        }
        Err(e) => {
            report.push(ReportEntry::error(SUITE, "induced-structure", loc, &e));
            return report;
        }
    }
    let q = match quotients(f) {
        Ok(q) => q,
        Err(e) => {
            report.push(ReportEntry::error(SUITE, "induced-structure", loc, &e));
            return report;
        }
    };
    report.note(format!("F*F has quotient dimension {}", q.ff.dim()));

    let ig = RatMatrix::identity(f.base().group().order());
    let iv = RatMatrix::identity(f.dim());
    // (name, source, target, ambient map)
    let maps: Vec<(&str, &CoendSpace, &CoendSpace, RatMatrix)> = vec![
        ("1xix1", &q.s1, &q.s2, kron_all([&ig, &s.i, &iv])),
        ("1xr", &q.s1, &q.s3, ig.kron(&s.r)),
        ("1x1xr", &q.s2, &q.s4, kron_all([&ig, &iv, &s.r])),
        ("1xi", &q.s3, &q.s4, ig.kron(&s.i)),
        ("1x1xi", &q.s4, &q.s2, kron_all([&ig, &iv, &s.i])),
        ("1xrx1", &q.s2, &q.s1, kron_all([&ig, &s.r, &iv])),
        ("1xr'", &q.s4, &q.s3, ig.kron(&s.r)),
        ("1xi'", &q.s3, &q.s1, ig.kron(&s.i)),
    ];
    let mut induced = Vec::new();
    let mut all_defined = true;
    for (name, src, dst, m) in &maps {
        let entry = well_defined_entry(name, src, dst, m);
        all_defined &= entry.is_pass();
        report.push(entry);
        if all_defined {
            let ind = dst.projection.mat_mul(m).and_then(|pm| pm.mat_mul(&src.section));
            match ind {
                Ok(ind) => {
                    report.push(equation(
                        SUITE,
                        "projection-compatible",
                        format!("map {name}"),
                        Ok((
                            Chain::of([ind.clone(), src.projection.clone()]),
                            Chain::of([dst.projection.clone(), m.clone()]),
                        )),
                    ));
                    induced.push(ind);
                }
                Err(e) => {
                    all_defined = false;
                    report.push(ReportEntry::error(SUITE, "projection-compatible", format!("map {name}"), &e));
                }
            }
        }
    }
    if !all_defined {
        report.note("induced maps are not well defined; Frobenius squares were not evaluated");
        return report;
    }
    let sq_loc = format!("{} -> {}", q.s1.name, q.s4.name);
    report.push(equation(
        SUITE,
        "frobenius-square-1",
        sq_loc,
        Ok((
            Chain::of([induced[2].clone(), induced[0].clone()]),
            Chain::of([induced[3].clone(), induced[1].clone()]),
        )),
    ));
    let sq_loc = format!("{} -> {}", q.s4.name, q.s1.name);
    report.push(equation(
        SUITE,
        "frobenius-square-2",
        sq_loc,
        Ok((
            Chain::of([induced[5].clone(), induced[4].clone()]),
            Chain::of([induced[7].clone(), induced[6].clone()]),
        )),
    ));

    for (label, other) in [("s1", &q.s1), ("s4", &q.s4)] {
        let id = RatMatrix::identity(q.ff.ambient_dim);
        let loc = format!("F*F <-> {}", other.name);
        let pair = induced_map(&q.ff, other, &id, "F*F -> coend")
            .and_then(|there| Ok((there, induced_map(other, &q.ff, &id, "coend -> F*F")?)));
        match pair {
            Ok((there, back)) => {
                report.push(equation(
                    SUITE,
                    &format!("iso-ff-{label}-back-there"),
                    loc.clone(),
                    Ok((Chain::of([back.clone(), there.clone()]), Chain::of([RatMatrix::identity(q.ff.dim())]))),
                ));
                report.push(equation(
                    SUITE,
                    &format!("iso-ff-{label}-there-back"),
                    loc,
                    Ok((Chain::of([there, back]), Chain::of([RatMatrix::identity(other.dim())]))),
                ));
            }
            Err(e) => report.push(ReportEntry::error(SUITE, &format!("iso-ff-{label}"), loc, &e)),
        }
    }
    report
}

/// Pass when `ambient` carries every relation of `src` into the relations of
/// `dst`; otherwise a failure whose witness is the surviving class of the
/// first offending relation next to zero.
fn well_defined_entry(name: &str, src: &CoendSpace, dst: &CoendSpace, m: &RatMatrix) -> ReportEntry {
    let loc = format!("map {name}");
    match first_unannihilated(src, dst, m) {
        Err(e) => ReportEntry::error(SUITE, "well-defined", loc, &e),
        Ok(None) => ReportEntry::pass(SUITE, "well-defined", loc),
        Ok(Some(col)) => {
            let rel = RatMatrix::hstack(src.ambient_dim, &[column(&src.relations, col)]).expect("column");
            let loc = format!("map {name} at {}", src.relation_location(col));
            equation(
                SUITE,
                "well-defined",
                loc,
                Ok((
                    Chain::of([dst.projection.clone(), m.clone(), rel]),
                    Chain::of([RatMatrix::zeros(dst.dim(), 1)]),
                )),
            )
        }
    }
}

fn column(m: &RatMatrix, c: usize) -> RatMatrix {
    RatMatrix::column((0..m.rows()).map(|r| m.get(r, c).clone()).collect())
}

/// Everything the convolution module can say about `F`: the `Σ G` suites
/// when structure maps are present, the evaluation maps and retraction
/// identities, and the induced Frobenius squares.
pub fn convolution_suite(f: &BaseFunctor) -> Report {
    let mut report = Report::new();
    if f.structure().is_some() {
        match f.as_frob_functor() {
            Ok(ff) => report.extend(run_all_suites(&ff, &ObjectGrid::star())),
            Err(e) => report.push(ReportEntry::error(SUITE, "base-suites", "F", &e)),
        }
    }
    report.extend(canonical_eval2_retraction(f));
    if f.structure().is_some() {
        let retraction_ok = report.entries.iter().filter(|e| e.suite == SUITE).all(|e| e.is_pass());
        if retraction_ok {
            report.extend(induced_frobenius_check(f));
        }
    }
    report
}
