//! Structured outcomes of identity checks and their canonical JSON form.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::ncpoly::NCPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// `Flagged` marks a discrepancy in the source formulas, never an engine failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub check_name: String,
    pub params: BTreeMap<String, i64>,
    pub mode: Mode,
    pub status: Status,
    pub max_abs_err: f64,
    pub notes: String,
}

/// Fixed 17-significant-digit rendering; non-finite values become null.
pub fn format_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_string()
    }
}

/// A float that serializes with `format_f64`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Float17(pub f64);

impl Serialize for Float17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(format_f64(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("VerificationReport", 6)?;
        st.serialize_field("check_name", &self.check_name)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("max_abs_err", &Float17(self.max_abs_err))?;
        st.serialize_field("notes", &self.notes)?;
        st.end()
    }
}

impl VerificationReport {
    pub fn new(check_name: impl Into<String>, mode: Mode) -> Self {
        VerificationReport {
            check_name: check_name.into(),
            params: BTreeMap::new(),
            mode,
            status: Status::Pass,
            max_abs_err: 0.0,
            notes: String::new(),
        }
    }

    pub fn exact(check_name: impl Into<String>) -> Self {
        Self::new(check_name, Mode::Exact)
    }

    pub fn float(check_name: impl Into<String>) -> Self {
        Self::new(check_name, Mode::Float)
    }

    pub fn param(mut self, key: &str, value: impl TryInto<i64>) -> Self {
        let v = value.try_into().unwrap_or(i64::MAX);
        self.params.insert(key.to_string(), v);
        self
    }

    pub fn note(mut self, note: impl AsRef<str>) -> Self {
        let note = note.as_ref();
        if !note.is_empty() {
            if !self.notes.is_empty() {
                self.notes.push_str("; ");
            }
            self.notes.push_str(note);
        }
        self
    }

    pub fn fail(mut self, err: f64, note: impl AsRef<str>) -> Self {
        self.status = Status::Fail;
        self.max_abs_err = err;
        self.note(note)
    }

    pub fn flag(mut self, note: impl AsRef<str>) -> Self {
        if self.status != Status::Fail {
            self.status = Status::Flagged;
        }
        self.note(note)
    }

    /// Exact comparison of two polynomials; pass iff identical.
    pub fn compare_polys(self, lhs: &NCPoly, rhs: &NCPoly) -> Self {
        if lhs == rhs {
            self
        } else {
            let err = lhs.max_abs_coeff_diff(rhs);
            self.fail(err, "polynomials differ")
        }
    }

    /// Float comparison against a tolerance.
    pub fn compare_float(mut self, err: f64, tol: f64) -> Self {
        self.max_abs_err = err;
        if err.is_finite() && err <= tol {
            self
        } else {
            self.status = Status::Fail;
            self.note(format!("error {} exceeds tolerance {}", format_f64(err), format_f64(tol)))
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn sort_key(&self) -> (&str, &BTreeMap<String, i64>) {
        (&self.check_name, &self.params)
    }
}

/// Sorts reports by check name, then parameters.
pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

pub fn reports_to_json(reports: &[VerificationReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
}

pub fn tally(reports: &[VerificationReport]) -> Tally {
    let mut t = Tally::default();
    for r in reports {
        match r.status {
            Status::Pass => t.pass += 1,
            Status::Fail => t.fail += 1,
            Status::Flagged => t.flagged += 1,
        }
    }
    t
}
