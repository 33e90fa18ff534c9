use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::Result;

/// What the measured value is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// An independent reference computation.
    Oracle,
    /// A closed-form value.
    ClosedForm,
    /// An inequality or invariant checked over a sample.
    Property,
    /// Measured and recorded, with no asserted bound.
    Recorded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `measured <= bound`
    AtMost,
    /// `measured >= bound`
    AtLeast,
    /// Not asserted.
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub check: String,
    /// The statement being checked, in words.
    pub anchor: String,
    pub basis: Basis,
    pub seed: u64,
    /// SHA-256 of the check's input description.
    pub inputs_digest: String,
    /// `None` when the check errored or produced a non-finite value.
    pub measured: Option<f64>,
    pub relation: Relation,
    pub bound: Option<f64>,
    pub pass: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| (&a.suite, &a.check).cmp(&(&b.suite, &b.check)));
}

pub fn to_json(reports: &[VerificationReport]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(reports)?;
    s.push('\n');
    Ok(s)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| format!("{x:e}"))
}

pub fn to_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("suite,check,basis,measured,relation,bound,pass,anchor\n");
    for r in reports {
        let relation = match r.relation {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::None => "",
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.suite,
            r.check,
            serde_json::to_value(r.basis)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default(),
            opt(r.measured),
            relation,
            opt(r.bound),
            r.pass,
            csv_field(&r.anchor)
        ));
    }
    out
}

/// Write `report.json` and `summary.csv` into `dir`.
pub fn write_reports(dir: &Path, reports: &[VerificationReport]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::File::create(dir.join("report.json"))?.write_all(to_json(reports)?.as_bytes())?;
    std::fs::File::create(dir.join("summary.csv"))?.write_all(to_csv(reports).as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(suite: &str, check: &str) -> VerificationReport {
        VerificationReport {
            suite: suite.into(),
            check: check.into(),
            anchor: "a, with comma".into(),
            basis: Basis::Property,
            seed: 1,
            inputs_digest: digest("x"),
            measured: Some(0.5),
            relation: Relation::AtMost,
            bound: Some(1.0),
            pass: true,
            detail: String::new(),
            runtime_ms: None,
        }
    }

    #[test]
    fn digest_is_sha256_hex() {
        assert_eq!(
            digest(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn sort_is_by_suite_then_check() {
        let mut r = vec![sample("b", "a"), sample("a", "z"), sample("a", "b")];
        sort_reports(&mut r);
        let keys: Vec<_> = r
            .iter()
            .map(|r| format!("{}/{}", r.suite, r.check))
            .collect();
        assert_eq!(keys, ["a/b", "a/z", "b/a"]);
    }

    #[test]
    fn csv_quotes_anchor() {
        let csv = to_csv(&[sample("a", "b")]);
        assert!(csv.lines().nth(1).unwrap().ends_with("\"a, with comma\""));
        assert!(csv.contains(",property,5e-1,<=,1e0,true,"));
    }
}
