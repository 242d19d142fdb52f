//! Aggregated verdicts for law-checking suites.
//!
//! Every law gets three counters. A suite passes when no law has a definite
//! failure and the share of unknown (fuel-exhausted) verdicts stays under a
//! configured threshold.

use alloc::string::String;
use alloc::vec::Vec;

use crate::term::EqResult;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawOutcome {
    pub law: String,
    pub pass: u64,
    pub fail: u64,
    pub unknown: u64,
    pub counterexample: Option<String>,
}

impl LawOutcome {
    pub fn total(&self) -> u64 {
        self.pass + self.fail + self.unknown
    }

    pub fn unknown_rate(&self) -> f64 {
        let total = self.total();
        if total == 0 {
            0.0
        } else {
            self.unknown as f64 / total as f64
        }
    }

    pub fn record(&mut self, r: EqResult, cx: impl FnOnce() -> String) {
        match r {
            EqResult::Equal => self.pass += 1,
            EqResult::Distinct => {
                self.fail += 1;
                if self.counterexample.is_none() {
                    self.counterexample = Some(cx());
                }
            }
            EqResult::Unknown { .. } => self.unknown += 1,
        }
    }

    /// Record a boolean check that cannot be unknown.
    pub fn record_bool(&mut self, ok: bool, cx: impl FnOnce() -> String) {
        self.record(if ok { EqResult::Equal } else { EqResult::Distinct }, cx);
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LawReport {
    pub laws: Vec<LawOutcome>,
}

impl LawReport {
    pub fn new() -> LawReport {
        LawReport::default()
    }

    /// Counter block for a law, created on first use. Order of first use is
    /// preserved so reports are deterministic.
    pub fn law(&mut self, name: &str) -> &mut LawOutcome {
        if let Some(i) = self.laws.iter().position(|l| l.law == name) {
            return &mut self.laws[i];
        }
        self.laws.push(LawOutcome {
            law: String::from(name),
            pass: 0,
            fail: 0,
            unknown: 0,
            counterexample: None,
        });
        self.laws.last_mut().unwrap()
    }

    pub fn merge(&mut self, other: LawReport) {
        for o in other.laws {
            let slot = self.law(&o.law);
            slot.pass += o.pass;
            slot.fail += o.fail;
            slot.unknown += o.unknown;
            if slot.counterexample.is_none() {
                slot.counterexample = o.counterexample;
            }
        }
    }

    pub fn fail_count(&self) -> u64 {
        self.laws.iter().map(|l| l.fail).sum()
    }

    pub fn unknown_count(&self) -> u64 {
        self.laws.iter().map(|l| l.unknown).sum()
    }

    /// Zero definite failures and per-law unknown rate within the threshold.
    pub fn all_pass(&self, unknown_threshold: f64) -> bool {
        self.laws
            .iter()
            .all(|l| l.fail == 0 && l.unknown_rate() <= unknown_threshold)
    }

    pub fn first_counterexample(&self) -> Option<(&str, &str)> {
        self.laws
            .iter()
            .find_map(|l| l.counterexample.as_deref().map(|c| (l.law.as_str(), c)))
    }
}
