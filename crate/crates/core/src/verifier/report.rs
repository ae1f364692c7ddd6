use std::fmt::Write as _;

/// Whether a check asserts an equality or a one-sided inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// `|rhs - lhs| ≤ tolerance`.
    Equality,
    /// `lhs ≤ rhs` up to `tolerance`, i.e. `rhs - lhs ≥ -tolerance`.
    OneSided,
}

/// One evaluated claim at one sample point.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub check_id: String,
    /// Full parameter tuple at which the claim was evaluated.
    pub sample_point: Vec<f64>,
    /// Signature, when the claim depends on one.
    pub a: Option<f64>,
    /// Radius (or argument), when the claim depends on one.
    pub r: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub margin: f64,
    pub tolerance: f64,
    pub kind: CheckKind,
    pub pass: bool,
    pub note: String,
}

impl VerificationReport {
    fn build(check_id: &str, lhs: f64, rhs: f64, tolerance: f64, kind: CheckKind) -> Self {
        let margin = rhs - lhs;
        let pass = match kind {
            CheckKind::Equality => margin.abs() <= tolerance,
            CheckKind::OneSided => margin >= -tolerance,
        };
        Self {
            check_id: check_id.to_owned(),
            sample_point: Vec::new(),
            a: None,
            r: None,
            lhs,
            rhs,
            margin,
            tolerance,
            kind,
            pass,
            note: String::new(),
        }
    }

    /// Claim `lhs = rhs` within `tolerance`.
    pub fn equality(check_id: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::build(check_id, lhs, rhs, tolerance, CheckKind::Equality)
    }

    /// Claim `lhs ≤ rhs` with slack `tolerance`.
    pub fn at_most(check_id: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::build(check_id, lhs, rhs, tolerance, CheckKind::OneSided)
    }

    /// A report for a claim that could not be evaluated.
    pub fn failed(check_id: &str, note: impl Into<String>) -> Self {
        let mut report = Self::build(check_id, f64::NAN, f64::NAN, 0.0, CheckKind::Equality);
        report.pass = false;
        report.note = note.into();
        report
    }

    pub fn at(mut self, a: Option<f64>, r: Option<f64>) -> Self {
        self.a = a;
        self.r = r;
        if self.sample_point.is_empty() {
            self.sample_point = a.into_iter().chain(r).collect();
        }
        self
    }

    pub fn with_point(mut self, point: Vec<f64>) -> Self {
        self.sample_point = point;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub const CSV_HEADER: &'static str = "check_id,a,r,lhs,rhs,margin,pass";

    /// One CSV row matching [`Self::CSV_HEADER`]; missing `a`/`r` are empty.
    pub fn to_csv_row(&self) -> String {
        let mut row = String::with_capacity(128);
        let opt = |v: Option<f64>| v.map(format_number).unwrap_or_default();
        let _ = write!(
            row,
            "{},{},{},{},{},{},{}",
            self.check_id,
            opt(self.a),
            opt(self.r),
            format_number(self.lhs),
            format_number(self.rhs),
            format_number(self.margin),
            self.pass
        );
        row
    }
}

/// Fixed 17-significant-digit scientific notation, independent of locale.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn csv_row_layout() {
        let row = VerificationReport::equality("demo", 1.0, 1.5, 0.1)
            .at(Some(0.25), None)
            .to_csv_row();
        assert_eq!(
            row,
            "demo,2.5000000000000000e-1,,1.0000000000000000e0,1.5000000000000000e0,5.0000000000000000e-1,false"
        );
    }

    proptest! {
        #[test]
        fn pass_flag_matches_tolerance_semantics(lhs in -10.0f64..10.0, rhs in -10.0f64..10.0, tol in 0.0f64..1.0) {
            let one = VerificationReport::at_most("x", lhs, rhs, tol);
            prop_assert_eq!(one.pass, one.margin >= -tol);
            prop_assert!(!(one.pass && one.margin < -tol));
            let eq = VerificationReport::equality("x", lhs, rhs, tol);
            prop_assert_eq!(eq.pass, eq.margin.abs() <= tol);
        }
    }
}
