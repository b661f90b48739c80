//! Check reports: one entry per verified equation or structural condition.

use serde::Serialize;

use crate::error::{FrobError, Result};
use crate::linalg::RatMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// Evidence for a failing equation: both sides, the first entry where they
/// differ, and the factor chains each side was composed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub lhs: RatMatrix,
    pub rhs: RatMatrix,
    pub row: usize,
    pub col: usize,
    #[serde(skip)]
    pub lhs_factors: Vec<RatMatrix>,
    #[serde(skip)]
    pub rhs_factors: Vec<RatMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    pub suite: String,
    pub check: String,
    pub location: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ReportEntry {
    pub fn pass(suite: &str, check: &str, location: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            check: check.into(),
            location: location.into(),
            status: Status::Pass,
            witness: None,
            detail: None,
        }
    }

    pub fn fail(suite: &str, check: &str, location: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            status: Status::Fail,
            detail: Some(detail.into()),
            ..Self::pass(suite, check, location)
        }
    }

    pub fn error(suite: &str, check: &str, location: impl Into<String>, err: &FrobError) -> Self {
        Self {
            status: Status::Error,
            detail: Some(err.to_string()),
            ..Self::pass(suite, check, location)
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Ordered list of entries plus free-form notes (scope caveats and the like)
/// that only the text rendering shows.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: ReportEntry) {
        self.entries.push(entry);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
        for n in other.notes {
            self.note(n);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(ReportEntry::is_pass)
    }

    pub fn has_status(&self, status: Status) -> bool {
        self.entries.iter().any(|e| e.status == status)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn errors(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| e.status == Status::Error)
    }

    /// First non-passing entry whose check name matches.
    pub fn first_failure_of(&self, check: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| !e.is_pass() && e.check == check)
    }

    /// 0 when everything passes, 1 on any failure, 2 on any structural error.
    pub fn exit_code(&self) -> i32 {
        if self.has_status(Status::Error) {
            2
        } else if self.has_status(Status::Fail) {
            1
        } else {
            0
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A composite `f_0 ∘ f_1 ∘ … ∘ f_k`, stored as its factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain(pub Vec<RatMatrix>);

impl Chain {
    pub fn of(factors: impl IntoIterator<Item = RatMatrix>) -> Self {
        Chain(factors.into_iter().collect())
    }

    pub fn eval(&self) -> Result<RatMatrix> {
        let mut it = self.0.iter().rev();
        let first = it
            .next()
            .ok_or_else(|| FrobError::Shape("empty composite".into()))?
            .clone();
        it.try_fold(first, |acc, f| f.mat_mul(&acc))
    }
}

/// Decides `lhs = rhs` exactly and packages the outcome as a report entry.
/// Construction errors become `error` entries.
pub fn equation(
    suite: &str,
    check: &str,
    location: impl Into<String>,
    sides: Result<(Chain, Chain)>,
) -> ReportEntry {
    let location = location.into();
    let evaluated = sides.and_then(|(l, r)| Ok((l.eval()?, r.eval()?, l, r)));
    match evaluated {
        Err(e) => ReportEntry::error(suite, check, location, &e),
        Ok((lhs, rhs, _, _)) if lhs.shape() != rhs.shape() => {
            let err = FrobError::Shape(format!(
                "sides have shapes {}x{} and {}x{}",
                lhs.rows(),
                lhs.cols(),
                rhs.rows(),
                rhs.cols()
            ));
            ReportEntry::error(suite, check, location, &err)
        }
        Ok((lhs, rhs, lf, rf)) => match lhs.first_difference(&rhs) {
            None => ReportEntry::pass(suite, check, location),
            Some((row, col)) => {
                let detail = format!(
                    "differs at ({row}, {col}): {} vs {}",
                    lhs.get(row, col),
                    rhs.get(row, col)
                );
                ReportEntry {
                    witness: Some(Witness {
                        lhs,
                        rhs,
                        row,
                        col,
                        lhs_factors: lf.0,
                        rhs_factors: rf.0,
                    }),
                    ..ReportEntry::fail(suite, check, location, detail)
                }
            }
        },
    }
}

/// Report rendering modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportMode {
    Text,
    Json,
}

/// Renders a report. JSON is an array of entries with rationals written as
/// `"p/q"` strings; text is an aligned table followed by the notes.
pub fn format_report(report: &Report, mode: ReportMode) -> String {
    match mode {
        ReportMode::Json => {
            serde_json::to_string_pretty(&report.entries).expect("report entries serialize")
        }
        ReportMode::Text => format_text(report),
    }
}

fn format_text(report: &Report) -> String {
    let header = ["STATUS", "SUITE", "CHECK", "LOCATION"];
    let rows: Vec<[String; 5]> = report
        .entries
        .iter()
        .map(|e| {
            [
                e.status.as_str().to_uppercase(),
                e.suite.clone(),
                e.check.clone(),
                e.location.clone(),
                e.detail.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r.iter()) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w - s.chars().count()));
    let mut out = String::new();
    let line: Vec<String> = header.iter().zip(widths).map(|(h, w)| pad(h, w)).collect();
    out.push_str(line.join("  ").trim_end());
    out.push('\n');
    for r in &rows {
        let mut cells: Vec<String> = r[..4].iter().zip(widths).map(|(c, w)| pad(c, w)).collect();
        if !r[4].is_empty() {
            cells.push(r[4].clone());
        }
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    let passed = report.entries.iter().filter(|e| e.is_pass()).count();
    out.push_str(&format!("{passed}/{} checks passed\n", report.len()));
    for n in &report.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_json_is_empty_array() {
        let r = Report::new();
        assert_eq!(format_report(&r, ReportMode::Json), "[]");
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn single_pass_entry_json() {
        let mut r = Report::new();
        r.push(ReportEntry::pass("duality", "triangle-left", "(2,2)"));
        let v: serde_json::Value = serde_json::from_str(&format_report(&r, ReportMode::Json)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 1);
        assert_eq!(v[0]["status"], "pass");
        assert!(v[0].get("witness").is_none());
    }

    #[test]
    fn failing_equation_carries_witness() {
        let a = RatMatrix::from_ints(&[[1, 0], [0, 1]]);
        let b = RatMatrix::from_ints(&[[1, 0], [0, 2]]);
        let e = equation("s", "c", "here", Ok((Chain::of([a.clone()]), Chain::of([b.clone()]))));
        assert_eq!(e.status, Status::Fail);
        let w = e.witness.as_ref().unwrap();
        assert_eq!((w.row, w.col), (1, 1));
        let mut r = Report::new();
        r.push(e);
        assert_eq!(r.exit_code(), 1);
        let v: serde_json::Value = serde_json::from_str(&format_report(&r, ReportMode::Json)).unwrap();
        assert_eq!(v[0]["witness"]["rhs"][1][1], "2/1");
        assert_eq!(v[0]["witness"]["row"], 1);
    }

    #[test]
    fn shape_disagreement_is_an_error() {
        let e = equation(
            "s",
            "c",
            "here",
            Ok((Chain::of([RatMatrix::identity(2)]), Chain::of([RatMatrix::identity(3)]))),
        );
        assert_eq!(e.status, Status::Error);
    }

    #[test]
    fn chain_composes_right_to_left() {
        let f = RatMatrix::from_ints(&[[1, 1]]);
        let g = RatMatrix::from_ints(&[[2], [3]]);
        assert_eq!(Chain::of([f, g]).eval().unwrap(), RatMatrix::from_ints(&[[5]]));
    }

    #[test]
    fn text_mode_is_aligned() {
        let mut r = Report::new();
        r.push(ReportEntry::pass("a", "check-one", "(1)"));
        r.push(ReportEntry::fail("suite-b", "c", "(1,2,3)", "differs"));
        let text = format_report(&r, ReportMode::Text);
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("STATUS  SUITE    CHECK      LOCATION"));
        assert!(lines[2].starts_with("FAIL    suite-b  c          (1,2,3)   differs"));
        assert_eq!(lines[3], "1/2 checks passed");
    }
}
