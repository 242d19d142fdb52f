//! Parse emitted rewrite scripts back into traces.
//!
//! A script is one line per step in the shape
//! `rule=<name> path=<i.j.k> lhs=<term @scope> rhs=<term @scope>`;
//! lines not starting with `rule=` are ignored.

use lamth_core::rewrite::{replay, Trace, TraceStep};
use lamth_core::Term;

use crate::parse::{parse_term, ParseError};

fn field<'a>(line: &'a str, key: &str, end: Option<&str>) -> Result<&'a str, ParseError> {
    let start = line
        .find(key)
        .ok_or_else(|| ParseError(format!("missing '{}' in script line", key)))?
        + key.len();
    let rest = &line[start..];
    Ok(match end {
        Some(marker) => {
            let stop = rest
                .find(marker)
                .ok_or_else(|| ParseError(format!("missing '{}' in script line", marker)))?;
            &rest[..stop]
        }
        None => rest,
    })
}

fn parse_path(text: &str) -> Result<Vec<usize>, ParseError> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split('.')
        .map(|p| p.parse().map_err(|_| ParseError(format!("bad path component '{}'", p))))
        .collect()
}

/// Rebuild a trace from a script, replaying it against `initial` to
/// recover the final term and to validate every step site.
pub fn parse_script(initial: &Term, text: &str) -> Result<Trace, ParseError> {
    let mut steps = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if !line.starts_with("rule=") {
            continue;
        }
        let rule = field(line, "rule=", Some(" path="))?.to_string();
        let path = parse_path(field(line, " path=", Some(" lhs="))?.trim())?;
        let before = parse_term(field(line, " lhs=", Some(" rhs="))?)?;
        let after = parse_term(field(line, " rhs=", None)?)?;
        steps.push(TraceStep { rule, path, before, after });
    }
    let mut trace = Trace {
        initial: initial.clone(),
        steps,
        final_term: initial.clone(),
        exhausted: false,
    };
    trace.final_term = replay(initial, &trace)
        .map_err(|e| ParseError(format!("script does not replay: {:?}", e)))?;
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lamth_core::rewrite::{emit_script, propagate_subst, Registry};

    #[test]
    fn emit_then_parse_reproduces_the_trace() {
        let t = parse_term("\\.x5 (x1 x2 (x4 x3)) [x1,x2,x3,x1] @3").unwrap();
        let reg = Registry::builtin();
        let (result, trace) = propagate_subst(&reg, &t, 10_000);
        let parsed = parse_script(&t, &emit_script(&trace)).unwrap();
        assert_eq!(parsed, trace);
        assert_eq!(parsed.final_term, result);
    }

    #[test]
    fn empty_script_is_an_empty_trace() {
        let t = parse_term("x1 @1").unwrap();
        let trace = parse_script(&t, "").unwrap();
        assert!(trace.is_empty());
        assert_eq!(trace.final_term, t);
    }
}
