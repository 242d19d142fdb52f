//! Substitution propagation as a rewriting system with named rules.
//!
//! The engine traverses a term outermost-first and applies the first
//! matching rule from an extensible registry, recording every step in a
//! trace that can be replayed or emitted as a textual script. The default
//! registry contains exactly the interaction rules between explicit
//! substitution and the other constructors, plus beta.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};

use crate::gen::{sample_term, GenCfg};
use crate::term::{
    beta_eq, render_path, weaken, BuiltinRule, EqResult, Node, Term,
};
use crate::SeedRng;

/// Shape patterns over the term constructors. Names bind the matched
/// subterm (or argument vector) for use by the rewriter.
#[derive(Debug, Clone)]
pub enum Pattern {
    /// Any term.
    Any(&'static str),
    /// A variable node.
    Var(&'static str),
    App(Box<Pattern>, Box<Pattern>),
    Abs(Box<Pattern>),
    /// Subject pattern plus a name binding the argument vector.
    Subst(Box<Pattern>, &'static str),
    /// Structural equality with a fixed term.
    Exact(Term),
}

/// Matched (or instantiated) pattern bindings.
#[derive(Debug, Clone, Default)]
pub struct Bindings {
    /// Scope of the matched site.
    pub site_scope: usize,
    terms: BTreeMap<&'static str, Term>,
    vecs: BTreeMap<&'static str, Vec<Term>>,
}

impl Bindings {
    pub fn term(&self, name: &str) -> Option<&Term> {
        self.terms.get(name)
    }

    pub fn vec(&self, name: &str) -> Option<&[Term]> {
        self.vecs.get(name).map(|v| v.as_slice())
    }

    fn bind_term(&mut self, name: &'static str, t: &Term) -> bool {
        match self.terms.get(name) {
            Some(prev) => prev == t,
            None => {
                self.terms.insert(name, t.clone());
                true
            }
        }
    }
}

fn matches(p: &Pattern, t: &Term, b: &mut Bindings) -> bool {
    match (p, t.node()) {
        (Pattern::Any(name), _) => b.bind_term(name, t),
        (Pattern::Var(name), Node::Var(_)) => b.bind_term(name, t),
        (Pattern::App(pf, pa), Node::App(f, a)) => matches(pf, f, b) && matches(pa, a, b),
        (Pattern::Abs(pb), Node::Abs(body)) => matches(pb, body, b),
        (Pattern::Subst(ps, name), Node::Subst(s, v)) => {
            if !matches(ps, s, b) {
                return false;
            }
            let args: Vec<Term> = v.iter().map(|a| a.as_ref().clone()).collect();
            match b.vecs.get(name) {
                Some(prev) => *prev == args,
                None => {
                    b.vecs.insert(name, args);
                    true
                }
            }
        }
        (Pattern::Exact(e), _) => e == t,
        _ => false,
    }
}

/// A named rewrite. The rewriter may refuse a match (guard) by returning
/// `None`; when it fires, the replacement must be beta-equal to the matched
/// subterm, which registration checks on random instantiations.
#[derive(Clone)]
pub struct RewriteRule {
    pub name: String,
    pub pattern: Pattern,
    pub rewriter: Arc<dyn Fn(&Bindings) -> Option<Term> + Send + Sync>,
}

impl core::fmt::Debug for RewriteRule {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "RewriteRule({})", self.name)
    }
}

impl RewriteRule {
    pub fn new(
        name: &str,
        pattern: Pattern,
        rewriter: impl Fn(&Bindings) -> Option<Term> + Send + Sync + 'static,
    ) -> RewriteRule {
        RewriteRule {
            name: name.to_owned(),
            pattern,
            rewriter: Arc::new(rewriter),
        }
    }

    fn apply(&self, t: &Term) -> Option<Term> {
        let mut b = Bindings { site_scope: t.scope(), ..Bindings::default() };
        if !matches(&self.pattern, t, &mut b) {
            return None;
        }
        let out = (self.rewriter)(&b)?;
        debug_assert_eq!(out.scope(), t.scope());
        Some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegisterError {
    /// Some instantiation rewrote to a term provably not beta-equal.
    Unsound { rule: String, lhs: Term, rhs: Term },
    /// Some instantiation changed scope.
    ScopeBroken { rule: String },
}

// Instantiate a pattern with random well-scoped terms, producing the term
// and the bindings the matcher would have produced. Returns None when the
// pattern cannot be realized at this scope (for example Var at scope 0).
fn instantiate(
    p: &Pattern,
    scope: usize,
    cfg: &GenCfg,
    rng: &mut SeedRng,
    b: &mut Bindings,
) -> Option<Term> {
    match p {
        Pattern::Any(name) => {
            if let Some(t) = b.terms.get(*name) {
                return (t.scope() == scope).then(|| t.clone());
            }
            let t = sample_term(cfg, scope, rng);
            b.terms.insert(name, t.clone());
            Some(t)
        }
        Pattern::Var(name) => {
            if scope == 0 {
                return None;
            }
            if let Some(t) = b.terms.get(*name) {
                return (t.scope() == scope).then(|| t.clone());
            }
            let t = Term::var(scope, rng.random_range(1..=scope)).unwrap();
            b.terms.insert(name, t.clone());
            Some(t)
        }
        Pattern::App(pf, pa) => {
            let f = instantiate(pf, scope, cfg, rng, b)?;
            let a = instantiate(pa, scope, cfg, rng, b)?;
            Term::app(f, a).ok()
        }
        Pattern::Abs(pb) => {
            let body = instantiate(pb, scope + 1, cfg, rng, b)?;
            Term::abs(body).ok()
        }
        Pattern::Subst(ps, name) => {
            let m = rng.random_range(1..=3usize);
            let s = instantiate(ps, m, cfg, rng, b)?;
            let args: Vec<Term> = (0..m).map(|_| sample_term(cfg, scope, rng)).collect();
            b.vecs.insert(name, args.clone());
            Term::subst(s, args, scope).ok()
        }
        Pattern::Exact(e) => (e.scope() == scope).then(|| e.clone()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: String,
    pub path: Vec<usize>,
    pub before: Term,
    pub after: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub initial: Term,
    pub steps: Vec<TraceStep>,
    pub final_term: Term,
    /// Fuel ran out before reaching a fixpoint.
    pub exhausted: bool,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Step count with tuple-extension bookkeeping folded into the
    /// variable-resolution steps that caused it.
    pub fn folded_len(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.rule != BuiltinRule::ExtendTuple.name())
            .count()
    }
}

/// An ordered rule list. Rules are tried in registration order at each
/// node; the built-in registry starts with the substitution interaction
/// rules and beta.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    rules: Vec<RewriteRule>,
}

impl Registry {
    pub fn empty() -> Registry {
        Registry::default()
    }

    /// The five core rules: tuple-extension lookup, variable substitution,
    /// distribution over application, pushing under abstraction, beta.
    pub fn builtin() -> Registry {
        let mut reg = Registry::empty();
        reg.rules.push(rule_extend_tuple());
        reg.rules.push(rule_subst_var());
        reg.rules.push(rule_subst_app());
        reg.rules.push(rule_subst_abs());
        reg.rules.push(rule_beta());
        reg
    }

    pub fn rule_names(&self) -> Vec<&str> {
        self.rules.iter().map(|r| r.name.as_str()).collect()
    }

    /// Add a rule after a self-test: the rule is run on random
    /// instantiations of its own pattern and rejected if any firing is
    /// provably not a beta-equality or changes scope.
    pub fn register(&mut self, rule: RewriteRule, seed: u64, fuel: u64) -> Result<(), RegisterError> {
        let cfg = GenCfg::default();
        let mut rng = SeedRng::seed_from_u64(seed);
        for scope in 0..=3usize {
            for _ in 0..8 {
                let mut b = Bindings { site_scope: scope, ..Bindings::default() };
                let Some(lhs) = instantiate(&rule.pattern, scope, &cfg, &mut rng, &mut b) else {
                    continue;
                };
                let Some(rhs) = (rule.rewriter)(&b) else { continue };
                if rhs.scope() != lhs.scope() {
                    return Err(RegisterError::ScopeBroken { rule: rule.name.clone() });
                }
                if let Ok(EqResult::Distinct) = beta_eq(&lhs, &rhs, fuel) {
                    return Err(RegisterError::Unsound { rule: rule.name.clone(), lhs, rhs });
                }
            }
        }
        self.rules.push(rule);
        Ok(())
    }

    /// First applicable rule at this exact node.
    pub fn apply_root(&self, t: &Term) -> Option<(&str, Term)> {
        self.rules
            .iter()
            .find_map(|r| r.apply(t).map(|out| (r.name.as_str(), out)))
    }

    /// One outermost-first rewrite anywhere in the term.
    pub fn step(&self, t: &Term) -> Option<TraceStep> {
        if let Some((name, after)) = self.apply_root(t) {
            return Some(TraceStep {
                rule: name.to_owned(),
                path: Vec::new(),
                before: t.clone(),
                after,
            });
        }
        for i in 0..t.children().len() {
            if let Some(mut step) = self.step(t.child(i).unwrap()) {
                step.path.insert(0, i);
                return Some(step);
            }
        }
        None
    }
}

fn rule_extend_tuple() -> RewriteRule {
    RewriteRule::new(
        "extend_tuple",
        Pattern::Subst(Box::new(Pattern::Any("s")), "v"),
        |b| {
            let s = b.term("s")?;
            let v = b.vec("v")?;
            let ident = v
                .iter()
                .enumerate()
                .all(|(k, a)| matches!(a.node(), Node::Var(i) if *i == k + 1));
            if !ident {
                return None;
            }
            match s.node() {
                Node::Var(i) if *i <= v.len() => Some(Term::var(b.site_scope, *i).unwrap()),
                Node::Meta(_) => s.retag_meta(b.site_scope),
                _ => None,
            }
        },
    )
}

fn rule_subst_var() -> RewriteRule {
    RewriteRule::new(
        "subst_var",
        Pattern::Subst(Box::new(Pattern::Var("x")), "v"),
        |b| {
            let x = b.term("x")?;
            let v = b.vec("v")?;
            match x.node() {
                Node::Var(i) => v.get(*i - 1).cloned(),
                _ => None,
            }
        },
    )
}

fn rule_subst_app() -> RewriteRule {
    RewriteRule::new(
        "subst_app",
        Pattern::Subst(
            Box::new(Pattern::App(Box::new(Pattern::Any("f")), Box::new(Pattern::Any("a")))),
            "v",
        ),
        |b| {
            let (f, a, v) = (b.term("f")?, b.term("a")?, b.vec("v")?);
            let lf = Term::subst(f.clone(), v.to_owned(), b.site_scope).ok()?;
            let la = Term::subst(a.clone(), v.to_owned(), b.site_scope).ok()?;
            Term::app(lf, la).ok()
        },
    )
}

fn rule_subst_abs() -> RewriteRule {
    RewriteRule::new(
        "subst_abs",
        Pattern::Subst(Box::new(Pattern::Abs(Box::new(Pattern::Any("u")))), "v"),
        |b| {
            let (u, v) = (b.term("u")?, b.vec("v")?);
            let n = b.site_scope;
            let mut ext: Vec<Term> = v.iter().map(|a| weaken(a, 1)).collect();
            ext.push(Term::var(n + 1, n + 1).unwrap());
            let inner = Term::subst(u.clone(), ext, n + 1).ok()?;
            Term::abs(inner).ok()
        },
    )
}

fn rule_beta() -> RewriteRule {
    RewriteRule::new(
        "beta",
        Pattern::App(Box::new(Pattern::Abs(Box::new(Pattern::Any("u")))), Box::new(Pattern::Any("g"))),
        |b| {
            let (u, g) = (b.term("u")?, b.term("g")?);
            let n = b.site_scope;
            let mut args = crate::term::identity_prefix(n, n);
            args.push(g.clone());
            Term::subst(u.clone(), args, n).ok()
        },
    )
}

/// Rewrite to a fixpoint of the registry, recording every step.
pub fn propagate_subst(reg: &Registry, t: &Term, fuel: u64) -> (Term, Trace) {
    let mut cur = t.clone();
    let mut steps = Vec::new();
    let mut exhausted = false;
    loop {
        match reg.step(&cur) {
            None => break,
            Some(step) => {
                if steps.len() as u64 >= fuel {
                    exhausted = true;
                    break;
                }
                cur = cur
                    .replace_at(&step.path, step.after.clone())
                    .expect("registered rules preserve scopes");
                steps.push(step);
            }
        }
    }
    let trace = Trace {
        initial: t.clone(),
        steps,
        final_term: cur.clone(),
        exhausted,
    };
    (cur, trace)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayError {
    InitialMismatch,
    /// The step at this index had a bad path or a stale `before` term.
    Step { index: usize, reason: &'static str },
}

/// Re-apply a recorded trace step by step, verifying each site.
pub fn replay(t: &Term, trace: &Trace) -> Result<Term, ReplayError> {
    if *t != trace.initial {
        return Err(ReplayError::InitialMismatch);
    }
    let mut cur = t.clone();
    for (index, step) in trace.steps.iter().enumerate() {
        match cur.subterm(&step.path) {
            None => return Err(ReplayError::Step { index, reason: "invalid path" }),
            Some(site) if *site != step.before => {
                return Err(ReplayError::Step { index, reason: "before mismatch" })
            }
            Some(_) => {}
        }
        cur = cur
            .replace_at(&step.path, step.after.clone())
            .map_err(|_| ReplayError::Step { index, reason: "ill-scoped replacement" })?;
    }
    Ok(cur)
}

/// One line per step: `rule=<name> path=<i.j.k> lhs=<term @scope> rhs=<term @scope>`.
pub fn emit_script(trace: &Trace) -> String {
    let mut out = String::new();
    for step in &trace.steps {
        out.push_str("rule=");
        out.push_str(&step.rule);
        out.push_str(" path=");
        out.push_str(&render_path(&step.path));
        out.push_str(" lhs=");
        out.push_str(&step.before.render_scoped());
        out.push_str(" rhs=");
        out.push_str(&step.after.render_scoped());
        out.push('\n');
    }
    out
}
