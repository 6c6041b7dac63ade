//! Trial records and report output.
//!
//! Every suite produces a flat list of records, one per check per trial,
//! sorted by check id and trial index so identical seeds produce identical
//! bytes. Records serialize to JSON lines; the CSV view aggregates per
//! check id.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One check on one trial.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialRecord {
    /// Master seed of the run.
    pub seed: u64,
    /// Trial index within the suite.
    pub trial: u64,
    /// Matrix dimension, or the input length for scalar checks.
    pub dim: usize,
    /// Mean or input family the trial exercised.
    pub mean_spec: String,
    /// Which check produced the record.
    pub check_id: String,
    /// Margin by which the check held; negative means violated.
    /// Identity checks report the negated relative residual.
    pub slack: f64,
    /// Size of the inequality gap or identity residual being judged.
    pub gap: f64,
    /// `pass`, `fail`, or an equality classification.
    pub verdict: String,
    /// Direction certifying a failed Loewner comparison, if one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<[f64; 2]>>,
}

impl TrialRecord {
    /// Failures are outright violations and calibration mismatches.
    pub fn is_failure(&self) -> bool {
        self.verdict == "fail" || self.verdict == "inconsistent"
    }
}

/// Orders records by check id, then trial index.
pub fn sort_records(records: &mut [TrialRecord]) {
    records.sort_by(|a, b| {
        a.check_id
            .cmp(&b.check_id)
            .then(a.trial.cmp(&b.trial))
            .then(a.mean_spec.cmp(&b.mean_spec))
    });
}

/// Writes records as JSON lines.
pub fn write_jsonl<W: Write>(records: &[TrialRecord], mut out: W) -> Result<()> {
    for record in records {
        serde_json::to_writer(&mut out, record)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Per-check aggregate used by the CSV view.
#[derive(Debug, Clone)]
pub struct CheckSummary {
    pub check_id: String,
    pub trials: usize,
    pub min_slack: f64,
    pub failures: usize,
}

/// Aggregates records by check id, in id order.
pub fn summarize(records: &[TrialRecord]) -> Vec<CheckSummary> {
    let mut groups: BTreeMap<&str, (usize, f64, usize)> = BTreeMap::new();
    for r in records {
        let entry = groups.entry(&r.check_id).or_insert((0, f64::INFINITY, 0));
        entry.0 += 1;
        entry.1 = entry.1.min(r.slack);
        entry.2 += usize::from(r.is_failure());
    }
    groups
        .into_iter()
        .map(|(id, (trials, min_slack, failures))| CheckSummary {
            check_id: id.to_string(),
            trials,
            min_slack,
            failures,
        })
        .collect()
}

/// Renders the per-check aggregates as CSV.
pub fn csv_summary(records: &[TrialRecord]) -> String {
    let mut out = String::from("check_id,trials,min_slack,failures\n");
    for s in summarize(records) {
        out.push_str(&format!(
            "{},{},{:e},{}\n",
            s.check_id, s.trials, s.min_slack, s.failures
        ));
    }
    out
}

/// Total and failed record counts.
pub fn failure_count(records: &[TrialRecord]) -> usize {
    records.iter().filter(|r| r.is_failure()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(check_id: &str, trial: u64, slack: f64, verdict: &str) -> TrialRecord {
        TrialRecord {
            seed: 1,
            trial,
            dim: 2,
            mean_spec: "geometric:0.5".into(),
            check_id: check_id.into(),
            slack,
            gap: slack.abs(),
            verdict: verdict.into(),
            witness: None,
        }
    }

    #[test]
    fn sorting_is_by_check_then_trial() {
        let mut records = vec![
            record("b", 0, 0.1, "pass"),
            record("a", 1, 0.2, "pass"),
            record("a", 0, 0.3, "pass"),
        ];
        sort_records(&mut records);
        let order: Vec<(String, u64)> = records
            .iter()
            .map(|r| (r.check_id.clone(), r.trial))
            .collect();
        assert_eq!(
            order,
            vec![("a".into(), 0), ("a".into(), 1), ("b".into(), 0)]
        );
    }

    #[test]
    fn jsonl_omits_missing_witness_and_round_trips() {
        let with = TrialRecord {
            witness: Some(vec![[0.6, 0.0], [0.8, 0.0]]),
            ..record("a", 0, -0.1, "fail")
        };
        let without = record("a", 1, 0.1, "pass");
        let mut buf = Vec::new();
        write_jsonl(&[with, without], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains("witness"));
        assert!(!lines[1].contains("witness"));
        let parsed: TrialRecord = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(parsed.witness.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn csv_counts_failures_and_min_slack() {
        let records = vec![
            record("a", 0, 0.5, "pass"),
            record("a", 1, -0.5, "fail"),
            record("a", 2, 0.2, "inconsistent"),
            record("b", 0, 1.0, "equality_consistent"),
        ];
        let csv = csv_summary(&records);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "check_id,trials,min_slack,failures");
        assert!(lines[1].starts_with("a,3,"));
        assert!(lines[1].ends_with(",2"));
        assert!(lines[2].starts_with("b,1,"));
        assert!(lines[2].ends_with(",0"));
        assert_eq!(failure_count(&records), 2);
    }

    #[test]
    fn identical_records_serialize_to_identical_bytes() {
        let records = vec![record("a", 0, 0.123456789012345e-11, "pass")];
        let mut one = Vec::new();
        let mut two = Vec::new();
        write_jsonl(&records, &mut one).unwrap();
        write_jsonl(&records, &mut two).unwrap();
        assert_eq!(one, two);
    }
}
