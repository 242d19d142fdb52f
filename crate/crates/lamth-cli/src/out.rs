//! Stable serialization of traces and law reports.

use lamth_core::report::LawReport;
use lamth_core::rewrite::Trace;
use serde::Serialize;

#[derive(Serialize)]
pub struct StepJson {
    pub rule: String,
    pub path: Vec<usize>,
    pub before: String,
    pub after: String,
}

#[derive(Serialize)]
pub struct TraceJson {
    pub initial: String,
    pub steps: Vec<StepJson>,
    #[serde(rename = "final")]
    pub final_term: String,
    pub exhausted: bool,
}

pub fn trace_json(trace: &Trace) -> TraceJson {
    TraceJson {
        initial: trace.initial.render_scoped(),
        steps: trace
            .steps
            .iter()
            .map(|s| StepJson {
                rule: s.rule.clone(),
                path: s.path.clone(),
                before: s.before.render_scoped(),
                after: s.after.render_scoped(),
            })
            .collect(),
        final_term: trace.final_term.render_scoped(),
        exhausted: trace.exhausted,
    }
}

#[derive(Serialize)]
pub struct LawJson {
    pub law: String,
    pub pass: u64,
    pub fail: u64,
    pub unknown: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Serialize)]
pub struct ReportJson {
    pub laws: Vec<LawJson>,
    pub all_pass: bool,
}

pub fn report_json(report: &LawReport, unknown_threshold: f64) -> ReportJson {
    ReportJson {
        laws: report
            .laws
            .iter()
            .map(|l| LawJson {
                law: l.law.clone(),
                pass: l.pass,
                fail: l.fail,
                unknown: l.unknown,
                counterexample: l.counterexample.clone(),
            })
            .collect(),
        all_pass: report.all_pass(unknown_threshold),
    }
}

pub fn print_report_text(report: &LawReport, unknown_threshold: f64) {
    for l in &report.laws {
        let verdict = if l.fail > 0 {
            "FAIL"
        } else if l.unknown_rate() > unknown_threshold {
            "UNKNOWN"
        } else {
            "ok"
        };
        println!(
            "{:<28} pass={:<6} fail={:<4} unknown={:<4} {}",
            l.law, l.pass, l.fail, l.unknown, verdict
        );
        if let Some(cx) = &l.counterexample {
            println!("  counterexample: {}", cx);
        }
    }
}
