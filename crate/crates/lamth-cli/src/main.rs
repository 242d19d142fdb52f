//! Command line surface: term normalization with rewrite traces, law
//! suites, and reflexive-object round-trip checks.
//!
//! Exit codes: 0 all pass, 1 usage or parse error, 2 fuel exhaustion or
//! unknown rate over threshold, 3 law failure.

use clap::{Args, Parser, Subcommand};
use lamth_cli::{out, parse, suites};
use lamth_core::presheaf::hyland_roundtrip;
use lamth_core::report::LawReport;
use lamth_core::retracts::scott_roundtrip;
use lamth_core::rewrite::{emit_script, propagate_subst, Registry};

use suites::SuiteCfg;

#[derive(Parser)]
#[command(name = "lamth", version, about = "scoped lambda terms, rewrite traces, law suites")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Rewrite budget for normalization and equality checks.
    #[arg(long, default_value_t = 10_000)]
    fuel: u64,
    /// Samples per law for the randomized suites.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Seed for all randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest scope exercised by generated terms.
    #[arg(long, default_value_t = 3)]
    max_scope: usize,
    /// Tolerated fraction of fuel-limited verdicts per law.
    #[arg(long, default_value_t = 0.01)]
    unknown_threshold: f64,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normalize a term, optionally printing the rewrite trace.
    Normalize {
        /// Term text, e.g. '(\.x1)[f]' or 'x1 x2 @2'.
        term: String,
        /// Print the rewrite script line by line.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run a law suite.
    Laws {
        /// theory | lambda | combinators | retracts | presheaf | karoubi | broken
        suite: String,
        /// Theory selector for the theory suite: free:<labels> or lambda.
        #[arg(long, default_value = "free:a,b")]
        theory: String,
        #[command(flatten)]
        common: Common,
    },
    /// Reflexive-object round-trip checks.
    Srt {
        /// scott | hyland
        variant: String,
        /// Check a single scope instead of 0..=max_scope.
        #[arg(short = 'n', long)]
        scope: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Normalize { term, trace, common } => cmd_normalize(&term, trace, &common),
        Cmd::Laws { suite, theory, common } => cmd_laws(&suite, &theory, &common),
        Cmd::Srt { variant, scope, common } => cmd_srt(&variant, scope, &common),
    };
    std::process::exit(code);
}

fn cmd_normalize(src: &str, show_trace: bool, common: &Common) -> i32 {
    let term = match parse::parse_term(src) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}", e);
            return 1;
        }
    };
    let reg = Registry::builtin();
    let (result, trace) = propagate_subst(&reg, &term, common.fuel);
    if common.json {
        println!("{}", serde_json::to_string_pretty(&out::trace_json(&trace)).unwrap());
    } else {
        if show_trace {
            let script = emit_script(&trace);
            if !script.is_empty() {
                print!("{}", script);
            }
            println!(
                "steps: {} raw, {} folded",
                trace.len(),
                trace.folded_len()
            );
        }
        println!("{}", result.render_scoped());
    }
    if trace.exhausted {
        2
    } else {
        0
    }
}

fn cmd_laws(suite: &str, theory: &str, common: &Common) -> i32 {
    let cfg = SuiteCfg {
        samples: common.samples,
        seed: common.seed,
        fuel: common.fuel,
        max_scope: common.max_scope,
    };
    let report = match suite {
        "theory" => match suites::theory_suite(theory, &cfg) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("{}", e);
                return 1;
            }
        },
        "lambda" => suites::lambda_suite(&cfg),
        "combinators" => suites::combinator_suite(&cfg),
        "retracts" => suites::retracts_suite(&cfg),
        "presheaf" => suites::presheaf_suite(&cfg),
        "karoubi" => suites::karoubi_suite(&cfg),
        "broken" => suites::broken_suite(&cfg),
        other => {
            eprintln!("unknown suite '{}'", other);
            return 1;
        }
    };
    finish_report(&report, common)
}

fn cmd_srt(variant: &str, scope: Option<usize>, common: &Common) -> i32 {
    let scopes: Vec<usize> = match scope {
        Some(n) => vec![n],
        None => (0..=common.max_scope).collect(),
    };
    let report = match variant {
        "scott" => scott_roundtrip(&scopes, common.samples, common.seed, common.fuel),
        "hyland" => hyland_roundtrip(&scopes, common.samples, common.seed, common.fuel),
        other => {
            eprintln!("unknown round-trip variant '{}'", other);
            return 1;
        }
    };
    finish_report(&report, common)
}

fn finish_report(report: &LawReport, common: &Common) -> i32 {
    if common.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&out::report_json(report, common.unknown_threshold))
                .unwrap()
        );
    } else {
        out::print_report_text(report, common.unknown_threshold);
    }
    if report.fail_count() > 0 {
        3
    } else if !report.all_pass(common.unknown_threshold) {
        2
    } else {
        0
    }
}
