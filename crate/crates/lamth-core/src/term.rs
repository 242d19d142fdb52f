//! Scoped untyped lambda terms with explicit substitutions.
//!
//! Variables use de Bruijn *levels*: at scope `n` the indices `1..=n` name
//! the free variables, and an abstraction at scope `n` binds index `n + 1`
//! in its body (which lives at scope `n + 1`). Substitution is a first-class
//! constructor: `Subst(s, (v_1, .., v_m))` maps a term over `m` variables
//! into the ambient scope by replacing `x_i` with `v_i`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// Construction errors for scoped terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermError {
    /// A variable index outside `1..=scope`.
    IndexOutOfScope { index: usize, scope: usize },
    /// Two subterms that must share a scope do not.
    ScopeMismatch { expected: usize, found: usize },
    /// A substitution whose argument count differs from the subject's scope.
    ArityMismatch { subject_scope: usize, args: usize },
}

impl fmt::Display for TermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermError::IndexOutOfScope { index, scope } => {
                write!(f, "index {index} exceeds scope {scope}")
            }
            TermError::ScopeMismatch { expected, found } => {
                write!(f, "scope mismatch: expected {expected}, found {found}")
            }
            TermError::ArityMismatch { subject_scope, args } => {
                write!(f, "arg count {args} != subject scope {subject_scope}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    /// `x_i`, with `1 <= i <= scope`.
    Var(usize),
    App(Arc<Term>, Arc<Term>),
    /// Body lives at `scope + 1` and sees the bound variable as `x_{scope+1}`.
    Abs(Arc<Term>),
    /// `subject[v_1, .., v_m]` with `m = subject.scope()` and every `v_i` at
    /// the ambient scope.
    Subst(Arc<Term>, Vec<Arc<Term>>),
    /// An opaque scope-polymorphic atom. Metavariables never occur in ground
    /// terms; they exist for rewrite patterns and goals with unknowns.
    Meta(Arc<str>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    scope: usize,
    node: Node,
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self, self.scope)
    }
}

impl Term {
    pub fn scope(&self) -> usize {
        self.scope
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn is_closed(&self) -> bool {
        self.scope == 0
    }

    /// `x_i` at scope `n`.
    pub fn var(n: usize, i: usize) -> Result<Term, TermError> {
        if i == 0 || i > n {
            return Err(TermError::IndexOutOfScope { index: i, scope: n });
        }
        Ok(Term { scope: n, node: Node::Var(i) })
    }

    pub fn app(fun: Term, arg: Term) -> Result<Term, TermError> {
        if fun.scope != arg.scope {
            return Err(TermError::ScopeMismatch { expected: fun.scope, found: arg.scope });
        }
        Ok(Term {
            scope: fun.scope,
            node: Node::App(Arc::new(fun), Arc::new(arg)),
        })
    }

    /// Abstraction: the body must live at scope `n + 1`; the result is at `n`.
    pub fn abs(body: Term) -> Result<Term, TermError> {
        if body.scope == 0 {
            return Err(TermError::ScopeMismatch { expected: 1, found: 0 });
        }
        Ok(Term {
            scope: body.scope - 1,
            node: Node::Abs(Arc::new(body)),
        })
    }

    /// Explicit substitution. `target` is the ambient scope of the result;
    /// it must be given explicitly because the argument vector may be empty.
    pub fn subst(subject: Term, args: Vec<Term>, target: usize) -> Result<Term, TermError> {
        if !matches!(subject.node, Node::Meta(_)) && subject.scope != args.len() {
            return Err(TermError::ArityMismatch {
                subject_scope: subject.scope,
                args: args.len(),
            });
        }
        for a in &args {
            if a.scope != target {
                return Err(TermError::ScopeMismatch { expected: target, found: a.scope });
            }
        }
        Ok(Term {
            scope: target,
            node: Node::Subst(Arc::new(subject), args.into_iter().map(Arc::new).collect()),
        })
    }

    /// Opaque atom; the declared scope is free since metas denote constants
    /// that exist compatibly at every scope.
    pub fn meta(name: &str, scope: usize) -> Term {
        Term { scope, node: Node::Meta(Arc::from(name)) }
    }

    /// Re-tag a metavariable at a different scope. Only metas may be
    /// relabelled; for any other node this is unsound.
    pub(crate) fn retag_meta(&self, scope: usize) -> Option<Term> {
        match &self.node {
            Node::Meta(s) => Some(Term { scope, node: Node::Meta(s.clone()) }),
            _ => None,
        }
    }

    /// Children in path order: App 0/1, Abs 0, Subst subject 0 then args 1..m.
    pub fn children(&self) -> Vec<&Term> {
        match &self.node {
            Node::Var(_) | Node::Meta(_) => Vec::new(),
            Node::App(a, b) => alloc::vec![a, b],
            Node::Abs(b) => alloc::vec![b],
            Node::Subst(s, v) => {
                let mut out = Vec::with_capacity(v.len() + 1);
                out.push(s.as_ref());
                out.extend(v.iter().map(|a| a.as_ref()));
                out
            }
        }
    }

    pub fn child(&self, i: usize) -> Option<&Term> {
        match &self.node {
            Node::Var(_) | Node::Meta(_) => None,
            Node::App(a, b) => [a.as_ref(), b.as_ref()].get(i).copied(),
            Node::Abs(b) => (i == 0).then(|| b.as_ref()),
            Node::Subst(s, v) => {
                if i == 0 {
                    Some(s.as_ref())
                } else {
                    v.get(i - 1).map(|a| a.as_ref())
                }
            }
        }
    }

    /// Rebuild with child `i` replaced, re-checking the scope discipline.
    pub fn replace_child(&self, i: usize, new: Term) -> Result<Term, TermError> {
        match &self.node {
            Node::Var(_) | Node::Meta(_) => Err(TermError::IndexOutOfScope { index: i, scope: 0 }),
            Node::App(a, b) => match i {
                0 => Term::app(new, b.as_ref().clone()),
                1 => Term::app(a.as_ref().clone(), new),
                _ => Err(TermError::IndexOutOfScope { index: i, scope: 2 }),
            },
            Node::Abs(_) if i == 0 => Term::abs(new),
            Node::Abs(_) => Err(TermError::IndexOutOfScope { index: i, scope: 1 }),
            Node::Subst(s, v) => {
                let mut args: Vec<Term> = v.iter().map(|a| a.as_ref().clone()).collect();
                if i == 0 {
                    Term::subst(new, args, self.scope)
                } else if i - 1 < args.len() {
                    args[i - 1] = new;
                    Term::subst(s.as_ref().clone(), args, self.scope)
                } else {
                    Err(TermError::IndexOutOfScope { index: i, scope: v.len() + 1 })
                }
            }
        }
    }

    /// Follow a path of child indices from the root.
    pub fn subterm(&self, path: &[usize]) -> Option<&Term> {
        let mut cur = self;
        for &i in path {
            cur = cur.child(i)?;
        }
        Some(cur)
    }

    /// Replace the subterm at `path` with `new`.
    pub fn replace_at(&self, path: &[usize], new: Term) -> Result<Term, TermError> {
        match path.split_first() {
            None => Ok(new),
            Some((&i, rest)) => {
                let child = self
                    .child(i)
                    .ok_or(TermError::IndexOutOfScope { index: i, scope: 0 })?;
                let rebuilt = child.replace_at(rest, new)?;
                self.replace_child(i, rebuilt)
            }
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn contains_meta(&self) -> bool {
        matches!(self.node, Node::Meta(_)) || self.children().iter().any(|c| c.contains_meta())
    }
}

/// The identity-prefix tuple `(x_1, .., x_m)` at scope `target >= m`.
pub fn identity_prefix(m: usize, target: usize) -> Vec<Term> {
    (1..=m).map(|i| Term::var(target, i).expect("i <= m <= target")).collect()
}

/// Is `args` exactly the identity prefix `(x_1, .., x_m)`?
pub fn is_identity_prefix(args: &[Arc<Term>]) -> bool {
    args.iter()
        .enumerate()
        .all(|(k, a)| matches!(a.node, Node::Var(i) if i == k + 1))
}

/// Weakening `iota_{m,extra}`: include `t` over `m` variables into scope
/// `m + extra` as `t[x_1, .., x_m]`.
pub fn weaken(t: &Term, extra: usize) -> Term {
    let m = t.scope;
    Term::subst(t.clone(), identity_prefix(m, m + extra), m + extra)
        .expect("identity prefix is well scoped")
}

/// `rho(f) = (f[x_1, .., x_n]) x_{n+1}`, the application transpose.
pub fn rho_term(f: &Term) -> Term {
    let n = f.scope;
    let lifted = weaken(f, 1);
    let last = Term::var(n + 1, n + 1).expect("n+1 in scope");
    Term::app(lifted, last).expect("same scope")
}

/// Names for the built-in rewrite steps shared by `normalize` and the
/// default rule registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinRule {
    /// Resolve a weakened variable or meta against an identity-prefix tuple.
    ExtendTuple,
    /// `x_i[v_1, .., v_m] -> v_i`.
    SubstVar,
    /// Distribute a substitution over an application.
    SubstApp,
    /// Push a substitution under an abstraction, weakening the arguments.
    SubstAbs,
    /// `(\.u) g -> u[x_1, .., x_n, g]`.
    Beta,
}

impl BuiltinRule {
    pub fn name(self) -> &'static str {
        match self {
            BuiltinRule::ExtendTuple => "extend_tuple",
            BuiltinRule::SubstVar => "subst_var",
            BuiltinRule::SubstApp => "subst_app",
            BuiltinRule::SubstAbs => "subst_abs",
            BuiltinRule::Beta => "beta",
        }
    }
}

/// Lift one argument of a substitution past a binder: `iota_{n,1}(v)` as an
/// explicit `v[x_1, .., x_n]` at scope `n + 1`. Kept explicit even for
/// variables so that each collapse is a visible `extend_tuple` step.
fn lift1(v: &Term) -> Term {
    weaken(v, 1)
}

/// Try one rewrite at the root. Rules are tried in the fixed order
/// extend_tuple, subst_var, subst_app, subst_abs, beta.
pub fn reduce_root(t: &Term) -> Option<(BuiltinRule, Term)> {
    if let Node::Subst(s, v) = &t.node {
        // extend_tuple: subject is a variable or meta and the tuple is an
        // identity prefix, so the substitution is a weakening that acts
        // trivially.
        if is_identity_prefix(v) {
            match &s.node {
                Node::Var(i) if *i <= v.len() => {
                    return Some((
                        BuiltinRule::ExtendTuple,
                        Term::var(t.scope, *i).expect("i <= len <= scope"),
                    ));
                }
                Node::Meta(_) => {
                    return Some((BuiltinRule::ExtendTuple, s.retag_meta(t.scope).unwrap()));
                }
                _ => {}
            }
        }
        match &s.node {
            Node::Var(i) => {
                if let Some(a) = v.get(*i - 1) {
                    return Some((BuiltinRule::SubstVar, a.as_ref().clone()));
                }
            }
            Node::App(a, b) => {
                let la = Term::subst(a.as_ref().clone(), args_vec(v), t.scope).ok()?;
                let lb = Term::subst(b.as_ref().clone(), args_vec(v), t.scope).ok()?;
                return Some((BuiltinRule::SubstApp, Term::app(la, lb).ok()?));
            }
            Node::Abs(u) => {
                let n = t.scope;
                let mut ext: Vec<Term> = v.iter().map(|a| lift1(a)).collect();
                ext.push(Term::var(n + 1, n + 1).expect("in scope"));
                let inner = Term::subst(u.as_ref().clone(), ext, n + 1).ok()?;
                return Some((BuiltinRule::SubstAbs, Term::abs(inner).ok()?));
            }
            _ => {}
        }
    }
    if let Node::App(f, g) = &t.node {
        if let Node::Abs(u) = &f.node {
            let n = t.scope;
            let mut args = identity_prefix(n, n);
            args.push(g.as_ref().clone());
            let res = Term::subst(u.as_ref().clone(), args, n).ok()?;
            return Some((BuiltinRule::Beta, res));
        }
    }
    None
}

fn args_vec(v: &[Arc<Term>]) -> Vec<Term> {
    v.iter().map(|a| a.as_ref().clone()).collect()
}

/// One leftmost-outermost rewrite anywhere in the term: root first, then
/// children in path order. Returns the rule, the path to the rewritten
/// subterm, and the whole rewritten term.
pub fn step_lo(t: &Term) -> Option<(BuiltinRule, Vec<usize>, Term)> {
    if let Some((rule, new)) = reduce_root(t) {
        return Some((rule, Vec::new(), new));
    }
    for i in 0..t.children().len() {
        let child = t.child(i).unwrap();
        if let Some((rule, mut path, new_child)) = step_lo(child) {
            path.insert(0, i);
            let rebuilt = t.replace_child(i, new_child).expect("rewrite preserves scopes");
            return Some((rule, path, rebuilt));
        }
    }
    None
}

/// No rule applies anywhere.
pub fn is_normal(t: &Term) -> bool {
    reduce_root(t).is_none() && t.children().iter().all(|c| is_normal(c))
}

/// A term in beta-normal form with all substitutions propagated (stuck
/// substitutions on metavariables are the only ones that may remain).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm(Term);

impl NormalForm {
    pub fn term(&self) -> &Term {
        &self.0
    }

    pub fn into_term(self) -> Term {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized {
    Done { nf: NormalForm, spent: u64 },
    Exhausted { partial: Term, spent: u64 },
}

impl Normalized {
    pub fn nf(self) -> Option<NormalForm> {
        match self {
            Normalized::Done { nf, .. } => Some(nf),
            Normalized::Exhausted { .. } => None,
        }
    }
}

/// Deterministic leftmost-outermost normalization, bounded by `fuel`
/// rewrite steps.
pub fn normalize(t: &Term, fuel: u64) -> Normalized {
    let mut cur = t.clone();
    let mut spent = 0u64;
    loop {
        match step_lo(&cur) {
            None => return Normalized::Done { nf: NormalForm(cur), spent },
            Some((_, _, next)) => {
                if spent >= fuel {
                    return Normalized::Exhausted { partial: cur, spent };
                }
                spent += 1;
                cur = next;
            }
        }
    }
}

/// Outcome of fuel-bounded equality. `Equal` and `Distinct` are definitive;
/// `Unknown` only arises from fuel exhaustion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqResult {
    Equal,
    Distinct,
    Unknown { fuel_spent: u64 },
}

impl EqResult {
    pub fn is_equal(self) -> bool {
        matches!(self, EqResult::Equal)
    }
}

/// Fuel-bounded beta-equality: both sides get `fuel` rewrite steps; the
/// verdict is definitive only when both normalize.
pub fn beta_eq(a: &Term, b: &Term, fuel: u64) -> Result<EqResult, TermError> {
    if a.scope != b.scope {
        return Err(TermError::ScopeMismatch { expected: a.scope, found: b.scope });
    }
    match (normalize(a, fuel), normalize(b, fuel)) {
        (Normalized::Done { nf: na, .. }, Normalized::Done { nf: nb, .. }) => {
            Ok(if na == nb { EqResult::Equal } else { EqResult::Distinct })
        }
        (ra, rb) => {
            let spent = |r: &Normalized| match r {
                Normalized::Done { spent, .. } | Normalized::Exhausted { spent, .. } => *spent,
            };
            Ok(EqResult::Unknown { fuel_spent: spent(&ra) + spent(&rb) })
        }
    }
}

// ---------------------------------------------------------------------------
// Rendering. The output is re-parseable by the companion crate's parser:
//   unit      := xN | ident | '(' term ')'
//   appchain  := unit+
//   lambda    := '\.' (lambda | appchain)
//   term      := (lambda | appchain) ('[' term,* ']')*
// A substitution tail after a lambda attaches to the whole lambda.

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Var(i) => write!(f, "x{i}"),
            Node::Meta(s) => write!(f, "{s}"),
            Node::Abs(b) => {
                if matches!(b.node, Node::Subst(_, _)) {
                    write!(f, "\\.({})", b)
                } else {
                    write!(f, "\\.{}", b)
                }
            }
            Node::App(_, _) => {
                let mut chain = Vec::new();
                let mut cur = self;
                while let Node::App(a, b) = &cur.node {
                    chain.push(b.as_ref());
                    cur = a.as_ref();
                }
                write_unit(f, cur)?;
                for arg in chain.iter().rev() {
                    write!(f, " ")?;
                    write_unit(f, arg)?;
                }
                Ok(())
            }
            Node::Subst(s, v) => {
                write_unit(f, s)?;
                write!(f, "[")?;
                for (k, a) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, "]")
            }
        }
    }
}

fn write_unit(f: &mut fmt::Formatter<'_>, t: &Term) -> fmt::Result {
    match &t.node {
        Node::Var(_) | Node::Meta(_) => write!(f, "{t}"),
        _ => write!(f, "({t})"),
    }
}

impl Term {
    /// Grammar text with the out-of-band scope suffix, e.g. `x1 x2 @2`.
    pub fn render_scoped(&self) -> String {
        format!("{} @{}", self, self.scope)
    }
}

pub fn render_path(path: &[usize]) -> String {
    path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(n: usize, i: usize) -> Term {
        Term::var(n, i).unwrap()
    }

    #[test]
    fn constructor_scope_checks() {
        assert!(Term::var(3, 2).is_ok());
        assert_eq!(
            Term::var(2, 3).unwrap_err(),
            TermError::IndexOutOfScope { index: 3, scope: 2 }
        );
        let body = v(2, 2);
        let id1 = Term::abs(body).unwrap();
        assert_eq!(id1.scope(), 1);
        // arg count must match subject scope
        let s = Term::app(v(2, 1), v(2, 2)).unwrap();
        assert_eq!(
            Term::subst(s, vec![v(3, 3)], 3).unwrap_err(),
            TermError::ArityMismatch { subject_scope: 2, args: 1 }
        );
    }

    #[test]
    fn weaken_variable_collapses() {
        let t = weaken(&v(1, 1), 1);
        assert_eq!(t.scope(), 2);
        let nf = normalize(&t, 10).nf().unwrap();
        assert_eq!(nf.term(), &v(2, 1));
    }

    #[test]
    fn weaken_zero_is_identity_up_to_beta() {
        let t = Term::app(v(2, 1), v(2, 2)).unwrap();
        let w = weaken(&t, 0);
        assert_eq!(beta_eq(&w, &t, 100).unwrap(), EqResult::Equal);
    }

    #[test]
    fn rho_shape() {
        // rho(x1 at scope 1) = (x1[x1]) x2
        let r = rho_term(&v(1, 1));
        assert_eq!(r.scope(), 2);
        let expect = Term::app(weaken(&v(1, 1), 1), v(2, 2)).unwrap();
        assert_eq!(r, expect);
        // empty tuple case
        let f = Term::abs(v(1, 1)).unwrap();
        let r0 = rho_term(&f);
        assert_eq!(r0.scope(), 1);
        let expect0 = Term::app(
            Term::subst(f, vec![], 1).unwrap(),
            v(1, 1),
        )
        .unwrap();
        assert_eq!(r0, expect0);
    }

    #[test]
    fn omega_exhausts_fuel() {
        // (\.x1 x1) (\.x1 x1) at scope 0
        let om = Term::abs(Term::app(v(1, 1), v(1, 1)).unwrap()).unwrap();
        let big = Term::app(om.clone(), om).unwrap();
        assert!(matches!(normalize(&big, 100), Normalized::Exhausted { .. }));
    }

    #[test]
    fn one_step_beta() {
        // (\.x2) x1 at scope 1 -> x1  (bound variable is x2 at scope 1)
        let f = Term::abs(v(2, 2)).unwrap();
        let t = Term::app(f, v(1, 1)).unwrap();
        assert_eq!(beta_eq(&t, &v(1, 1), 100).unwrap(), EqResult::Equal);
        assert_eq!(beta_eq(&v(2, 1), &v(2, 2), 100).unwrap(), EqResult::Distinct);
    }

    #[test]
    fn render_roundtrip_shapes() {
        let t = Term::abs(
            Term::app(
                v(4, 4),
                Term::app(Term::app(v(4, 1), v(4, 2)).unwrap(), Term::app(v(4, 1), v(4, 3)).unwrap())
                    .unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(format!("{t}"), "\\.x4 (x1 x2 (x1 x3))");
    }
}
