//! Seeded random generation of well-scoped terms.
//!
//! Depth follows a geometric distribution (probability `continue_p` of
//! picking a compound constructor at each node). By default the generator
//! rejects terms containing a structural self-application `t t`, which
//! keeps the rate of non-normalizing samples low enough for fuel-bounded
//! equality checks.

use alloc::vec::Vec;

use rand::Rng;

use crate::term::{Node, Term};
use crate::SeedRng;

#[derive(Debug, Clone)]
pub struct GenCfg {
    /// Probability of a compound node instead of a leaf.
    pub continue_p: f64,
    pub max_depth: usize,
    /// Reject samples containing a subterm `App(t, t)`.
    pub avoid_self_app: bool,
    /// Maximum argument count for generated substitution nodes.
    pub max_subst_width: usize,
}

impl Default for GenCfg {
    fn default() -> Self {
        GenCfg {
            continue_p: 0.3,
            max_depth: 8,
            avoid_self_app: true,
            max_subst_width: 3,
        }
    }
}

fn leaf(n: usize, rng: &mut SeedRng) -> Term {
    if n == 0 {
        // smallest closed term
        Term::abs(Term::var(1, 1).unwrap()).unwrap()
    } else {
        Term::var(n, rng.random_range(1..=n)).unwrap()
    }
}

fn gen_at(cfg: &GenCfg, n: usize, depth: usize, rng: &mut SeedRng) -> Term {
    if depth >= cfg.max_depth || !rng.random_bool(cfg.continue_p) {
        return leaf(n, rng);
    }
    match rng.random_range(0..3u8) {
        0 => {
            let f = gen_at(cfg, n, depth + 1, rng);
            let a = gen_at(cfg, n, depth + 1, rng);
            Term::app(f, a).unwrap()
        }
        1 => Term::abs(gen_at(cfg, n + 1, depth + 1, rng)).unwrap(),
        _ => {
            let m = rng.random_range(0..=cfg.max_subst_width);
            let subject = gen_at(cfg, m, depth + 1, rng);
            let args = (0..m).map(|_| gen_at(cfg, n, depth + 1, rng)).collect::<Vec<_>>();
            Term::subst(subject, args, n).unwrap()
        }
    }
}

fn has_self_app(t: &Term) -> bool {
    if let Node::App(a, b) = t.node() {
        if a == b {
            return true;
        }
    }
    t.children().iter().any(|c| has_self_app(c))
}

/// One random well-scoped term at scope `n`.
pub fn sample_term(cfg: &GenCfg, n: usize, rng: &mut SeedRng) -> Term {
    for _ in 0..16 {
        let t = gen_at(cfg, n, 0, rng);
        if !cfg.avoid_self_app || !has_self_app(&t) {
            return t;
        }
    }
    leaf(n, rng)
}

/// A vector of samples sharing one scope.
pub fn sample_vec(cfg: &GenCfg, n: usize, count: usize, rng: &mut SeedRng) -> Vec<Term> {
    (0..count).map(|_| sample_term(cfg, n, rng)).collect()
}
