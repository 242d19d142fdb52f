//! The closed-term combinator toolkit used to build the category of
//! retracts: composition, pairing, projections, n-tuples, product and
//! exponential objects, and the currying bijection.
//!
//! Constants occurring under a binder are lifted with an explicit
//! weakening substitution, so every definition below is the literal term
//! shape with `iota` inclusions made visible.

use alloc::vec::Vec;

use crate::term::{weaken, Term, TermError};

/// A closed term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comb(Term);

impl Comb {
    pub fn new(t: Term) -> Result<Comb, TermError> {
        if t.scope() != 0 {
            return Err(TermError::ScopeMismatch { expected: 0, found: t.scope() });
        }
        Ok(Comb(t))
    }

    pub fn term(&self) -> &Term {
        &self.0
    }

    pub fn into_term(self) -> Term {
        self.0
    }
}

fn v(n: usize, i: usize) -> Term {
    Term::var(n, i).expect("index within scope")
}

fn abs(t: Term) -> Term {
    Term::abs(t).expect("body scope > 0")
}

fn app(f: Term, a: Term) -> Term {
    Term::app(f, a).expect("equal scopes")
}

// Scope-generic builders. The closed combinators below are these at scope 0.

/// `a . b = \x. a (b x)` at scope n.
pub fn compose_at(n: usize, a: &Term, b: &Term) -> Term {
    abs(app(weaken(a, 1), app(weaken(b, 1), v(n + 1, n + 1))))
}

/// `(a, b) = \x. x a b` at scope n.
pub fn pair_at(n: usize, a: &Term, b: &Term) -> Term {
    abs(app(app(v(n + 1, n + 1), weaken(a, 1)), weaken(b, 1)))
}

/// `<a, b> = \x. (a x, b x)` at scope n.
pub fn spair_at(n: usize, a: &Term, b: &Term) -> Term {
    let x = v(n + 1, n + 1);
    abs(pair_at(
        n + 1,
        &app(weaken(a, 1), x.clone()),
        &app(weaken(b, 1), x),
    ))
}

/// Left-nested tuple `(a_1, .., a_k)` at scope n, starting from `\x. x`.
pub fn ntuple_at(n: usize, elems: &[Term]) -> Term {
    let mut acc = abs(v(n + 1, n + 1));
    for e in elems {
        acc = pair_at(n, &acc, e);
    }
    acc
}

/// Left-nested pointwise tuple `<a_1, .., a_k>` at scope n, starting from
/// the constant empty tuple `\x y. y`.
pub fn nspair_at(n: usize, elems: &[Term]) -> Term {
    let mut acc = abs(abs(v(n + 2, n + 2)));
    for e in elems {
        acc = spair_at(n, &acc, e);
    }
    acc
}

// Closed combinators.

/// The identity `\x. x`, the reflexive object.
pub fn u() -> Comb {
    Comb(abs(v(1, 1)))
}

/// `I = \x y. y`, the terminal object and empty tuple.
pub fn terminal_i() -> Comb {
    Comb(abs(abs(v(2, 2))))
}

pub fn compose(a: &Comb, b: &Comb) -> Comb {
    Comb(compose_at(0, &a.0, &b.0))
}

pub fn pair(a: &Comb, b: &Comb) -> Comb {
    Comb(pair_at(0, &a.0, &b.0))
}

pub fn spair(a: &Comb, b: &Comb) -> Comb {
    Comb(spair_at(0, &a.0, &b.0))
}

/// `pi_i = \x. x (\y z. x_{i+1})` for i in {1, 2}.
pub fn proj(i: usize) -> Comb {
    assert!(i == 1 || i == 2, "binary projection index");
    // inner body at scope 3 picks y (index 2) or z (index 3)
    Comb(abs(app(v(1, 1), abs(abs(v(3, i + 1))))))
}

pub fn ntuple(elems: &[Comb]) -> Comb {
    let raw: Vec<Term> = elems.iter().map(|c| c.0.clone()).collect();
    Comb(ntuple_at(0, &raw))
}

pub fn nspair(elems: &[Comb]) -> Comb {
    let raw: Vec<Term> = elems.iter().map(|c| c.0.clone()).collect();
    Comb(nspair_at(0, &raw))
}

/// `pi_{n,i} = pi_2 . pi_1^(n-i)`, the i-th projection out of an n-tuple.
pub fn nproj(n: usize, i: usize) -> Comb {
    assert!(1 <= i && i <= n, "tuple projection index");
    let mut acc = proj(2);
    for _ in 0..(n - i) {
        acc = compose(&acc, &proj(1));
    }
    acc
}

/// Product object `A x B = <A . pi_1, B . pi_2>`.
pub fn prod_obj(a: &Comb, b: &Comb) -> Comb {
    spair(&compose(a, &proj(1)), &compose(b, &proj(2)))
}

/// Exponential object `C^B = \x. C . x . B` (composition read left
/// associated).
pub fn exp_obj(b: &Comb, c: &Comb) -> Comb {
    let x = v(1, 1);
    let cx = compose_at(1, &weaken(&c.0, 1), &x);
    Comb(abs(compose_at(1, &cx, &weaken(&b.0, 1))))
}

/// Currying: `psi(f) = \x y. f (x, y)`.
pub fn psi(f: &Comb) -> Comb {
    let fx = weaken(&f.0, 2);
    let pr = pair_at(2, &v(2, 1), &v(2, 2));
    Comb(abs(abs(app(fx, pr))))
}

/// Uncurrying: `psi_inv(g) = \x. g (pi_1 x) (pi_2 x)`.
pub fn psi_inv(g: &Comb) -> Comb {
    let x = v(1, 1);
    let g1 = weaken(&g.0, 1);
    let p1x = app(weaken(&proj(1).0, 1), x.clone());
    let p2x = app(weaken(&proj(2).0, 1), x);
    Comb(abs(app(app(g1, p1x), p2x)))
}

/// Application of closed terms.
pub fn apply(c: &Comb, d: &Comb) -> Comb {
    Comb(app(c.0.clone(), d.0.clone()))
}

/// Named combinators for the command line surface.
pub fn named(name: &str) -> Option<Comb> {
    match name {
        "I" => Some(terminal_i()),
        "U" => Some(u()),
        "pi1" => Some(proj(1)),
        "pi2" => Some(proj(2)),
        _ => None,
    }
}
