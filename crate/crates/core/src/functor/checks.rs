//! Coherence, naturality, Frobenius and split checks for [`FrobFunctor`].
//!
//! "For all objects" is replaced by an explicit [`ObjectGrid`]; checks are
//! exhaustive over the grid and claim nothing beyond it.

use std::fmt;

use super::{Component, FrobFunctor, FunctorKind};
use crate::error::{FrobError, Result};
use crate::linalg::{is_iso, RatMatrix};
use crate::monoidal::{CategoryInstance, MonObject, Morphism};
use crate::report::{equation, Chain, Report, ReportEntry};

const GRID_NOTE: &str =
    "checks are exhaustive over the listed grid objects only; no claim is made beyond the grid";
const NATURALITY_NOTE: &str = "naturality is tested on matrix units, a complete family for functors linear on hom-spaces";

/// Finite list of source objects over which checks are exhaustive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObjectGrid {
    objects: Vec<MonObject>,
}

impl ObjectGrid {
    pub fn new(objects: Vec<MonObject>) -> Result<Self> {
        if objects.is_empty() {
            return Err(FrobError::Shape("object grid must be nonempty".into()));
        }
        Ok(Self { objects })
    }

    /// `Mat(lo) … Mat(hi)`.
    pub fn dims(lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return Err(FrobError::Shape(format!("empty grid range {lo}..{hi}")));
        }
        Self::new((lo..=hi).map(MonObject::Mat).collect())
    }

    pub fn star() -> Self {
        Self {
            objects: vec![MonObject::Star],
        }
    }

    /// The grid to use for a functor out of `source`: the given range for
    /// `Mat(ℚ)`, the single object for `Σ G`.
    pub fn for_source(source: &CategoryInstance, lo: usize, hi: usize) -> Result<Self> {
        match source {
            CategoryInstance::MatQ => Self::dims(lo, hi),
            CategoryInstance::SigmaG(_) => Ok(Self::star()),
        }
    }

    pub fn objects(&self) -> &[MonObject] {
        &self.objects
    }

    pub fn pairs(&self) -> impl Iterator<Item = (MonObject, MonObject)> + '_ {
        self.objects
            .iter()
            .flat_map(move |a| self.objects.iter().map(move |b| (*a, *b)))
    }

    pub fn triples(&self) -> impl Iterator<Item = (MonObject, MonObject, MonObject)> + '_ {
        self.pairs()
            .flat_map(move |(a, b)| self.objects.iter().map(move |c| (a, b, *c)))
    }

    pub fn max_dim(&self) -> usize {
        self.objects.iter().filter_map(MonObject::dim).max().unwrap_or(1)
    }
}

impl fmt::Display for ObjectGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.objects.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

fn id(n: usize) -> RatMatrix {
    RatMatrix::identity(n)
}

fn loc2(a: &MonObject, b: &MonObject) -> String {
    format!("({a},{b})")
}

fn loc3(a: &MonObject, b: &MonObject, c: &MonObject) -> String {
    format!("({a},{b},{c})")
}

/// Checks that every structure map on the grid exists and has the shape the
/// object map dictates. Problems are reported as `error` entries.
pub fn structural_validate(f: &FrobFunctor, grid: &ObjectGrid) -> Report {
    const SUITE: &str = "structure";
    let mut report = Report::new();
    let src = f.source();

    let shape_entry = |check: &str, location: String, m: Result<RatMatrix>, want: Result<(usize, usize)>| {
        match (m, want) {
            (Err(e), _) | (_, Err(e)) => ReportEntry::error(SUITE, check, location, &e),
            (Ok(m), Ok(want)) if m.shape() == want => ReportEntry::pass(SUITE, check, location),
            (Ok(m), Ok((r, c))) => {
                let e = FrobError::Shape(format!(
                    "{check} is {}x{}, expected {r}x{c}",
                    m.rows(),
                    m.cols()
                ));
                ReportEntry::error(SUITE, check, location, &e)
            }
        }
    };

    for a in grid.objects() {
        let want = f.dim_at(a).map(|d| (d, d));
        let m = src.identity(a).and_then(|ida| f.map_morphism(&ida));
        report.push(shape_entry("object-map", format!("({a})"), m, want));
    }
    for (a, b) in grid.pairs() {
        let dims = || -> Result<(usize, usize)> {
            let fab = f.dim_at(&src.tensor_obj(&a, &b)?)?;
            Ok((fab, f.dim_at(&a)? * f.dim_at(&b)?))
        };
        report.push(shape_entry("r-shape", loc2(&a, &b), f.r(&a, &b), dims()));
        report.push(shape_entry(
            "i-shape",
            loc2(&a, &b),
            f.i(&a, &b),
            dims().map(|(x, y)| (y, x)),
        ));
    }
    let fi = f.dim_at(&src.unit());
    report.push(shape_entry("r0-shape", "(I)".into(), f.r0(), fi.clone().map(|d| (d, 1))));
    report.push(shape_entry("i0-shape", "(I)".into(), f.i0(), fi.map(|d| (1, d))));
    report
}

/// Runs structural validation; returns it as the report when anything is
/// wrong so callers can stop before checking equations.
fn gate(f: &FrobFunctor, grid: &ObjectGrid) -> std::result::Result<(), Report> {
    let structural = structural_validate(f, grid);
    if structural.all_pass() {
        Ok(())
    } else {
        let mut r = Report::new();
        r.extend(structural);
        Err(r)
    }
}

fn describe_unit(m: &RatMatrix) -> String {
    let pos = m.entries().iter().position(|x| !x.is_zero()).unwrap_or(0);
    format!("E({},{})", pos / m.cols().max(1), pos % m.cols().max(1))
}

/// Naturality of `r` and `i`.
///
/// Over `Mat(ℚ)` both sides of each square are linear in the two morphism
/// arguments, so matrix units between grid objects form a complete test
/// family. One entry is emitted per `(A→A', B→B')` object quadruple, naming
/// the first failing pair of matrix units. Over `Σ G` every pair of group
/// elements is tested.
pub fn check_naturality(f: &FrobFunctor, grid: &ObjectGrid) -> Report {
    const SUITE: &str = "naturality";
    if let Err(r) = gate(f, grid) {
        return r;
    }
    let mut report = Report::new();
    let src = f.source().clone();
    match &src {
        CategoryInstance::MatQ => {
            for (a, a2) in grid.pairs() {
                for (b, b2) in grid.pairs() {
                    let location = format!("A={a}->{a2} B={b}->{b2}");
                    let (r_entry, i_entry) = naturality_quadruple(f, &src, (a, a2), (b, b2), &location);
                    report.push(r_entry);
                    report.push(i_entry);
                }
            }
            report.note(NATURALITY_NOTE);
        }
        CategoryInstance::SigmaG(base) => {
            for g in base.elements() {
                for h in base.elements() {
                    let location = format!("(g,h)=({},{})", base.label(g), base.label(h));
                    let (star, star2) = (MonObject::Star, MonObject::Star);
                    let sides = naturality_sides(f, &src, &star, &star2, &star, &star2, Morphism::Element(g), Morphism::Element(h));
                    match sides {
                        Ok((r_sides, i_sides)) => {
                            report.push(equation(SUITE, "r-natural", location.clone(), Ok(r_sides)));
                            report.push(equation(SUITE, "i-natural", location, Ok(i_sides)));
                        }
                        Err(e) => {
                            report.push(ReportEntry::error(SUITE, "r-natural", location.clone(), &e));
                            report.push(ReportEntry::error(SUITE, "i-natural", location, &e));
                        }
                    }
                }
            }
        }
    }
    report.note(GRID_NOTE);
    report
}

type Sides = (Chain, Chain);

#[allow(clippy::too_many_arguments)]
fn naturality_sides(
    f: &FrobFunctor,
    src: &CategoryInstance,
    a: &MonObject,
    a2: &MonObject,
    b: &MonObject,
    b2: &MonObject,
    fm: Morphism,
    gm: Morphism,
) -> Result<(Sides, Sides)> {
    let ff_fg = f.map_morphism(&fm)?.kron(&f.map_morphism(&gm)?);
    let f_fg = f.map_morphism(&src.tensor_mor(&fm, &gm)?)?;
    let r_sides = (
        Chain::of([f.r(a2, b2)?, ff_fg.clone()]),
        Chain::of([f_fg.clone(), f.r(a, b)?]),
    );
    let i_sides = (
        Chain::of([ff_fg, f.i(a, b)?]),
        Chain::of([f.i(a2, b2)?, f_fg]),
    );
    Ok((r_sides, i_sides))
}

fn naturality_quadruple(
    f: &FrobFunctor,
    src: &CategoryInstance,
    (a, a2): (MonObject, MonObject),
    (b, b2): (MonObject, MonObject),
    location: &str,
) -> (ReportEntry, ReportEntry) {
    const SUITE: &str = "naturality";
    let dims = (|| Ok::<_, FrobError>((a.expect_dim()?, a2.expect_dim()?, b.expect_dim()?, b2.expect_dim()?)))();
    let (da, da2, db, db2) = match dims {
        Ok(d) => d,
        Err(e) => {
            return (
                ReportEntry::error(SUITE, "r-natural", location, &e),
                ReportEntry::error(SUITE, "i-natural", location, &e),
            )
        }
    };
    let mut r_result: Option<ReportEntry> = None;
    let mut i_result: Option<ReportEntry> = None;
    'outer: for fm in RatMatrix::elementary_basis(da2, da) {
        for gm in RatMatrix::elementary_basis(db2, db) {
            let cell = format!("{location} f={} g={}", describe_unit(&fm), describe_unit(&gm));
            match naturality_sides(f, src, &a, &a2, &b, &b2, Morphism::Matrix(fm.clone()), Morphism::Matrix(gm)) {
                Err(e) => {
                    r_result.get_or_insert_with(|| ReportEntry::error(SUITE, "r-natural", cell.clone(), &e));
                    i_result.get_or_insert_with(|| ReportEntry::error(SUITE, "i-natural", cell, &e));
                    break 'outer;
                }
                Ok((rs, is)) => {
                    if r_result.is_none() {
                        let e = equation(SUITE, "r-natural", cell.clone(), Ok(rs));
                        if !e.is_pass() {
                            r_result = Some(e);
                        }
                    }
                    if i_result.is_none() {
                        let e = equation(SUITE, "i-natural", cell, Ok(is));
                        if !e.is_pass() {
                            i_result = Some(e);
                        }
                    }
                    if r_result.is_some() && i_result.is_some() {
                        break 'outer;
                    }
                }
            }
        }
    }
    (
        r_result.unwrap_or_else(|| ReportEntry::pass(SUITE, "r-natural", location)),
        i_result.unwrap_or_else(|| ReportEntry::pass(SUITE, "i-natural", location)),
    )
}

/// Associativity and both unit laws of `(r, r₀)`.
pub fn check_monoidal_coherence(f: &FrobFunctor, grid: &ObjectGrid) -> Report {
    const SUITE: &str = "monoidal";
    if let Err(r) = gate(f, grid) {
        return r;
    }
    let src = f.source();
    let unit = src.unit();
    let mut report = Report::new();
    for (a, b, c) in grid.triples() {
        let sides = (|| {
            let ab = src.tensor_obj(&a, &b)?;
            let bc = src.tensor_obj(&b, &c)?;
            let lhs = Chain::of([f.r(&ab, &c)?, f.r(&a, &b)?.kron(&id(f.dim_at(&c)?))]);
            let rhs = Chain::of([f.r(&a, &bc)?, id(f.dim_at(&a)?).kron(&f.r(&b, &c)?)]);
            Ok((lhs, rhs))
        })();
        report.push(equation(SUITE, "r-associativity", loc3(&a, &b, &c), sides));
    }
    for a in grid.objects() {
        let right = (|| {
            let fa = f.dim_at(a)?;
            Ok((Chain::of([f.r(a, &unit)?, id(fa).kron(&f.r0()?)]), Chain::of([id(fa)])))
        })();
        report.push(equation(SUITE, "r-unit-right", format!("({a})"), right));
        let left = (|| {
            let fa = f.dim_at(a)?;
            Ok((Chain::of([f.r(&unit, a)?, f.r0()?.kron(&id(fa))]), Chain::of([id(fa)])))
        })();
        report.push(equation(SUITE, "r-unit-left", format!("({a})"), left));
    }
    report.note(GRID_NOTE);
    report
}

/// Coassociativity and both counit laws of `(i, i₀)`.
pub fn check_comonoidal_coherence(f: &FrobFunctor, grid: &ObjectGrid) -> Report {
    const SUITE: &str = "comonoidal";
    if let Err(r) = gate(f, grid) {
        return r;
    }
    let src = f.source();
    let unit = src.unit();
    let mut report = Report::new();
    for (a, b, c) in grid.triples() {
        let sides = (|| {
            let ab = src.tensor_obj(&a, &b)?;
            let bc = src.tensor_obj(&b, &c)?;
            let lhs = Chain::of([f.i(&a, &b)?.kron(&id(f.dim_at(&c)?)), f.i(&ab, &c)?]);
            let rhs = Chain::of([id(f.dim_at(&a)?).kron(&f.i(&b, &c)?), f.i(&a, &bc)?]);
            Ok((lhs, rhs))
        })();
        report.push(equation(SUITE, "i-coassociativity", loc3(&a, &b, &c), sides));
    }
    for a in grid.objects() {
        let right = (|| {
            let fa = f.dim_at(a)?;
            Ok((Chain::of([id(fa).kron(&f.i0()?), f.i(a, &unit)?]), Chain::of([id(fa)])))
        })();
        report.push(equation(SUITE, "i-counit-right", format!("({a})"), right));
        let left = (|| {
            let fa = f.dim_at(a)?;
            Ok((Chain::of([f.i0()?.kron(&id(fa)), f.i(&unit, a)?]), Chain::of([id(fa)])))
        })();
        report.push(equation(SUITE, "i-counit-left", format!("({a})"), left));
    }
    report.note(GRID_NOTE);
    report
}

/// The two Frobenius compatibility equations at every grid triple:
///
/// * `i_{A,B⊗C} ∘ r_{A⊗B,C} = (1 ⊗ r_{B,C}) ∘ (i_{A,B} ⊗ 1)` on `F(A⊗B) ⊗ FC`
/// * `i_{A⊗B,C} ∘ r_{A,B⊗C} = (r_{A,B} ⊗ 1) ∘ (1 ⊗ i_{B,C})` on `FA ⊗ F(B⊗C)`
pub fn check_frobenius(f: &FrobFunctor, grid: &ObjectGrid) -> Report {
    const SUITE: &str = "frobenius";
    if let Err(r) = gate(f, grid) {
        return r;
    }
    let src = f.source();
    let mut report = Report::new();
    for (a, b, c) in grid.triples() {
        let first = (|| {
            let ab = src.tensor_obj(&a, &b)?;
            let bc = src.tensor_obj(&b, &c)?;
            let lhs = Chain::of([f.i(&a, &bc)?, f.r(&ab, &c)?]);
            let rhs = Chain::of([
                id(f.dim_at(&a)?).kron(&f.r(&b, &c)?),
                f.i(&a, &b)?.kron(&id(f.dim_at(&c)?)),
            ]);
            Ok((lhs, rhs))
        })();
        report.push(equation(SUITE, "frobenius-1", loc3(&a, &b, &c), first));
        let second = (|| {
            let ab = src.tensor_obj(&a, &b)?;
            let bc = src.tensor_obj(&b, &c)?;
            let lhs = Chain::of([f.i(&ab, &c)?, f.r(&a, &bc)?]);
            let rhs = Chain::of([
                f.r(&a, &b)?.kron(&id(f.dim_at(&c)?)),
                id(f.dim_at(&a)?).kron(&f.i(&b, &c)?),
            ]);
            Ok((lhs, rhs))
        })();
        report.push(equation(SUITE, "frobenius-2", loc3(&a, &b, &c), second));
    }
    report.note(GRID_NOTE);
    report
}

/// `r_{A,B} ∘ i_{A,B} = 1` at every grid pair.
pub fn check_split(f: &FrobFunctor, grid: &ObjectGrid) -> Report {
    const SUITE: &str = "split";
    if let Err(r) = gate(f, grid) {
        return r;
    }
    let src = f.source();
    let mut report = Report::new();
    for (a, b) in grid.pairs() {
        let sides = (|| {
            let fab = f.dim_at(&src.tensor_obj(&a, &b)?)?;
            Ok((Chain::of([f.r(&a, &b)?, f.i(&a, &b)?]), Chain::of([id(fab)])))
        })();
        report.push(equation(SUITE, "r-after-i", loc2(&a, &b), sides));
    }
    report.note(GRID_NOTE);
    report
}

pub fn is_split(f: &FrobFunctor, grid: &ObjectGrid) -> bool {
    check_split(f, grid).all_pass()
}

/// Structure, naturality, both coherence suites and the Frobenius
/// conditions, in that order.
pub fn run_all_suites(f: &FrobFunctor, grid: &ObjectGrid) -> Report {
    let mut report = structural_validate(f, grid);
    if !report.all_pass() {
        return report;
    }
    report.extend(check_naturality(f, grid));
    report.extend(check_monoidal_coherence(f, grid));
    report.extend(check_comonoidal_coherence(f, grid));
    report.extend(check_frobenius(f, grid));
    report
}

/// Completes monoidal data with invertible `r`, `r₀` to a Frobenius functor
/// by setting `i = r⁻¹` and `i₀ = r₀⁻¹`.
///
/// The monoidal coherence suite must pass on `grid` first, and every `r`
/// component at a grid pair must be invertible.
pub fn from_strong(f: FrobFunctor, grid: &ObjectGrid) -> Result<FrobFunctor> {
    let coherence = check_monoidal_coherence(&f, grid);
    if let Some(bad) = coherence.entries.iter().find(|e| !e.is_pass()) {
        return Err(FrobError::Precondition(format!(
            "monoidal coherence fails: {} at {}",
            bad.check, bad.location
        )));
    }
    for (a, b) in grid.pairs() {
        if !is_iso(&f.r(&a, &b)?) {
            return Err(FrobError::NotInvertible {
                what: "r component".into(),
                location: loc2(&a, &b),
            });
        }
    }
    if !is_iso(&f.r0()?) {
        return Err(FrobError::NotInvertible {
            what: "r0".into(),
            location: "I".into(),
        });
    }
    let source = f.source().clone();
    FrobFunctor::from_kind(source, FunctorKind::Strong(Box::new(f)))
}

/// The composite `G ∘ F` with `r = G(r_F) ∘ r_G` and `i = i_G ∘ G(i_F)`.
pub fn compose_frobenius(g: &FrobFunctor, f: &FrobFunctor) -> Result<FrobFunctor> {
    if f.target() != g.source() {
        return Err(FrobError::InstanceMismatch(format!(
            "cannot compose: inner functor lands in {}, outer functor starts at {}",
            f.target().name(),
            g.source().name()
        )));
    }
    FrobFunctor::from_kind(
        f.source().clone(),
        FunctorKind::Composite {
            outer: Box::new(g.clone()),
            inner: Box::new(f.clone()),
        },
    )
}

#[allow(dead_code)]
pub(crate) fn component_location(c: &Component) -> String {
    c.to_string()
}
