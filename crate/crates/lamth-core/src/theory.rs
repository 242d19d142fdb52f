//! Algebraic theories and lambda theories as interfaces, with sampled and
//! exhaustive law checking.
//!
//! A theory is a graded family of carriers T_n with variables and a
//! substitution satisfying unit and associativity laws. A lambda theory
//! additionally has abstraction `lam: T_{n+1} -> T_n` and its transpose
//! `rho: T_n -> T_{n+1}` with `rho . lam = id` (beta). Carriers stay
//! abstract: equality is a fuel-bounded oracle and sampling is seeded.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};

use crate::gen::{sample_term, GenCfg};
use crate::report::LawReport;
use crate::term::{beta_eq, rho_term, EqResult, Node, Term};
use crate::SeedRng;

pub trait AlgebraicTheory {
    type El: Clone + core::fmt::Debug;

    /// `x_i` in the carrier over `n` variables, `1 <= i <= n`.
    fn var(&self, n: usize, i: usize) -> Self::El;

    /// Substitution: `f` over `args.len()` variables, every argument over
    /// `target` variables.
    fn subst(&self, f: &Self::El, args: &[Self::El], target: usize) -> Self::El;

    fn eq(&self, n: usize, a: &Self::El, b: &Self::El, fuel: u64) -> EqResult;

    fn sample(&self, n: usize, rng: &mut SeedRng) -> Self::El;

    fn show(&self, n: usize, a: &Self::El) -> String;

    /// Weakening: include an element over `m` variables into scope
    /// `m + extra` by substituting the identity prefix.
    fn weaken_el(&self, f: &Self::El, m: usize, extra: usize) -> Self::El {
        let target = m + extra;
        let args: Vec<Self::El> = (1..=m).map(|i| self.var(target, i)).collect();
        self.subst(f, &args, target)
    }

    /// The identity tuple `(x_1, .., x_m)` at scope `n >= m`.
    fn id_tuple(&self, m: usize, n: usize) -> Vec<Self::El> {
        (1..=m).map(|i| self.var(n, i)).collect()
    }
}

pub trait LambdaTheory: AlgebraicTheory {
    /// Abstraction, carrier over `n + 1` variables to carrier over `n`.
    fn lam(&self, n: usize, f: &Self::El) -> Self::El;

    /// Application transpose, carrier over `n` to carrier over `n + 1`.
    fn rho(&self, n: usize, f: &Self::El) -> Self::El;
}

/// Binary application derived from the theory structure:
/// `f g = rho(x_1) . (f, g)`.
pub fn app_prime<L: LambdaTheory>(th: &L, n: usize, f: &L::El, g: &L::El) -> L::El {
    let r = th.rho(1, &th.var(1, 1));
    th.subst(&r, &[f.clone(), g.clone()], n)
}

// ---------------------------------------------------------------------------
// The free theory on a finite label set: carrier(n) = {1..n} + labels,
// indices project under substitution and labels absorb it.

#[derive(Debug, Clone)]
pub struct FreeTheory {
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeEl {
    Ix(usize),
    Cst(usize),
}

impl FreeTheory {
    pub fn new(labels: &[&str]) -> FreeTheory {
        FreeTheory { labels: labels.iter().map(|s| s.to_string()).collect() }
    }

    /// The whole finite carrier at scope `n`.
    pub fn enumerate(&self, n: usize) -> Vec<FreeEl> {
        (1..=n)
            .map(FreeEl::Ix)
            .chain((0..self.labels.len()).map(FreeEl::Cst))
            .collect()
    }
}

impl AlgebraicTheory for FreeTheory {
    type El = FreeEl;

    fn var(&self, _n: usize, i: usize) -> FreeEl {
        FreeEl::Ix(i)
    }

    fn subst(&self, f: &FreeEl, args: &[FreeEl], _target: usize) -> FreeEl {
        match f {
            FreeEl::Ix(i) => args[*i - 1],
            FreeEl::Cst(c) => FreeEl::Cst(*c),
        }
    }

    fn eq(&self, _n: usize, a: &FreeEl, b: &FreeEl, _fuel: u64) -> EqResult {
        if a == b {
            EqResult::Equal
        } else {
            EqResult::Distinct
        }
    }

    fn sample(&self, n: usize, rng: &mut SeedRng) -> FreeEl {
        let total = n + self.labels.len();
        assert!(total > 0, "empty carrier");
        let k = rng.random_range(0..total);
        if k < n {
            FreeEl::Ix(k + 1)
        } else {
            FreeEl::Cst(k - n)
        }
    }

    fn show(&self, _n: usize, a: &FreeEl) -> String {
        match a {
            FreeEl::Ix(i) => format!("x{i}"),
            FreeEl::Cst(c) => self.labels[*c].clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// The term theory: carriers are scoped terms, equality is beta-equality.

#[derive(Debug, Clone, Default)]
pub struct TermTheory {
    pub cfg: GenCfg,
}

impl TermTheory {
    pub fn new() -> TermTheory {
        TermTheory::default()
    }
}

impl AlgebraicTheory for TermTheory {
    type El = Term;

    fn var(&self, n: usize, i: usize) -> Term {
        Term::var(n, i).expect("index within scope")
    }

    fn subst(&self, f: &Term, args: &[Term], target: usize) -> Term {
        Term::subst(f.clone(), args.to_vec(), target).expect("well scoped substitution")
    }

    fn eq(&self, _n: usize, a: &Term, b: &Term, fuel: u64) -> EqResult {
        beta_eq(a, b, fuel).expect("equal scopes")
    }

    fn sample(&self, n: usize, rng: &mut SeedRng) -> Term {
        sample_term(&self.cfg, n, rng)
    }

    fn show(&self, _n: usize, a: &Term) -> String {
        a.render_scoped()
    }
}

impl LambdaTheory for TermTheory {
    fn lam(&self, _n: usize, f: &Term) -> Term {
        Term::abs(f.clone()).expect("body scope is n + 1")
    }

    fn rho(&self, _n: usize, f: &Term) -> Term {
        rho_term(f)
    }
}

/// The unique structure-preserving map out of the term theory, by
/// structural recursion. `None` on terms containing metavariables.
pub fn initial_map<L: LambdaTheory>(th: &L, t: &Term) -> Option<L::El> {
    match t.node() {
        Node::Var(i) => Some(th.var(t.scope(), *i)),
        Node::App(a, b) => {
            let fa = initial_map(th, a)?;
            let fb = initial_map(th, b)?;
            Some(app_prime(th, t.scope(), &fa, &fb))
        }
        Node::Abs(b) => Some(th.lam(t.scope(), &initial_map(th, b)?)),
        Node::Subst(s, v) => {
            let fs = initial_map(th, s)?;
            let fv = v.iter().map(|a| initial_map(th, a)).collect::<Option<Vec<_>>>()?;
            Some(th.subst(&fs, &fv, t.scope()))
        }
        Node::Meta(_) => None,
    }
}

// ---------------------------------------------------------------------------
// Law checking.

#[derive(Debug, Clone)]
pub struct CheckCfg {
    pub samples: usize,
    pub seed: u64,
    pub fuel: u64,
    pub max_scope: usize,
}

impl Default for CheckCfg {
    fn default() -> Self {
        CheckCfg { samples: 100, seed: 0, fuel: 10_000, max_scope: 3 }
    }
}

fn sample_tuple<T: AlgebraicTheory>(th: &T, m: usize, n: usize, rng: &mut SeedRng) -> Vec<T::El> {
    (0..m).map(|_| th.sample(n, rng)).collect()
}

fn show_tuple<T: AlgebraicTheory>(th: &T, n: usize, v: &[T::El]) -> String {
    let parts: Vec<String> = v.iter().map(|a| th.show(n, a)).collect();
    format!("({})", parts.join(", "))
}

/// Sampled checks of the substitution unit and associativity laws, plus the
/// two weakening compatibilities.
pub fn check_algebraic_laws<T: AlgebraicTheory>(th: &T, cfg: &CheckCfg) -> LawReport {
    let mut rng = SeedRng::seed_from_u64(cfg.seed);
    let mut report = LawReport::new();
    let top = cfg.max_scope;

    for _ in 0..cfg.samples {
        // x_j . g = g_j
        let m = rng.random_range(1..=top);
        let n = rng.random_range(0..=top);
        let g = sample_tuple(th, m, n, &mut rng);
        let j = rng.random_range(1..=m);
        let lhs = th.subst(&th.var(m, j), &g, n);
        report.law("subst_var").record(th.eq(n, &lhs, &g[j - 1], cfg.fuel), || {
            format!("x{j} . {} at scope {n}", show_tuple(th, n, &g))
        });

        // f . (x_i)_i = f
        let m = rng.random_range(0..=top);
        let f = th.sample(m, &mut rng);
        let lhs = th.subst(&f, &th.id_tuple(m, m), m);
        report.law("subst_unit").record(th.eq(m, &lhs, &f, cfg.fuel), || {
            format!("f = {}", th.show(m, &f))
        });

        // (f . g) . h = f . (g_i . h)_i
        let l = rng.random_range(0..=top);
        let m = rng.random_range(0..=top);
        let n = rng.random_range(0..=top);
        let f = th.sample(l, &mut rng);
        let g = sample_tuple(th, l, m, &mut rng);
        let h = sample_tuple(th, m, n, &mut rng);
        let lhs = th.subst(&th.subst(&f, &g, m), &h, n);
        let gh: Vec<T::El> = g.iter().map(|gi| th.subst(gi, &h, n)).collect();
        let rhs = th.subst(&f, &gh, n);
        report.law("subst_assoc").record(th.eq(n, &lhs, &rhs, cfg.fuel), || {
            format!(
                "f = {}, g = {}, h = {}",
                th.show(l, &f),
                show_tuple(th, m, &g),
                show_tuple(th, n, &h)
            )
        });

        // weaken(f, k) . g = f . (g_i)_{i <= m}
        let m = rng.random_range(0..=top);
        let k = rng.random_range(0..=top);
        let n = rng.random_range(0..=top);
        let f = th.sample(m, &mut rng);
        let g = sample_tuple(th, m + k, n, &mut rng);
        let lhs = th.subst(&th.weaken_el(&f, m, k), &g, n);
        let rhs = th.subst(&f, &g[..m], n);
        report.law("weaken_subst").record(th.eq(n, &lhs, &rhs, cfg.fuel), || {
            format!("f = {}, g = {}", th.show(m, &f), show_tuple(th, n, &g))
        });

        // weaken(f . g, k) = f . (weaken(g_i, k))_i
        let m = rng.random_range(0..=top);
        let n = rng.random_range(0..=top);
        let k = rng.random_range(0..=top);
        let f = th.sample(m, &mut rng);
        let g = sample_tuple(th, m, n, &mut rng);
        let lhs = th.weaken_el(&th.subst(&f, &g, n), n, k);
        let gw: Vec<T::El> = g.iter().map(|gi| th.weaken_el(gi, n, k)).collect();
        let rhs = th.subst(&f, &gw, n + k);
        report.law("weaken_of_subst").record(th.eq(n + k, &lhs, &rhs, cfg.fuel), || {
            format!("f = {}, g = {}", th.show(m, &f), show_tuple(th, n, &g))
        });
    }
    report
}

/// Sampled checks of beta and the two naturality laws for `lam` and `rho`.
pub fn check_lambda_laws<L: LambdaTheory>(th: &L, cfg: &CheckCfg) -> LawReport {
    let mut rng = SeedRng::seed_from_u64(cfg.seed.wrapping_add(1));
    let mut report = LawReport::new();
    let top = cfg.max_scope;

    // the extended tuple ((weaken(h_i, 1))_i, x_{n+1})
    let ext = |th: &L, h: &[L::El], n: usize| -> Vec<L::El> {
        let mut out: Vec<L::El> = h.iter().map(|hi| th.weaken_el(hi, n, 1)).collect();
        out.push(th.var(n + 1, n + 1));
        out
    };

    for _ in 0..cfg.samples {
        // rho(lam(f)) = f
        let n = rng.random_range(0..=top);
        let f = th.sample(n + 1, &mut rng);
        let lhs = th.rho(n, &th.lam(n, &f));
        report.law("beta").record(th.eq(n + 1, &lhs, &f, cfg.fuel), || {
            format!("f = {}", th.show(n + 1, &f))
        });

        // lam(f) . h = lam(f . ((weaken(h_i, 1))_i, x_{n+1}))
        let m = rng.random_range(0..=top);
        let n = rng.random_range(0..=top);
        let f = th.sample(m + 1, &mut rng);
        let h = sample_tuple(th, m, n, &mut rng);
        let lhs = th.subst(&th.lam(m, &f), &h, n);
        let rhs = th.lam(n, &th.subst(&f, &ext(th, &h, n), n + 1));
        report.law("lam_naturality").record(th.eq(n, &lhs, &rhs, cfg.fuel), || {
            format!("f = {}, h = {}", th.show(m + 1, &f), show_tuple(th, n, &h))
        });

        // rho(g . h) = rho(g) . ((weaken(h_i, 1))_i, x_{n+1})
        let m = rng.random_range(0..=top);
        let n = rng.random_range(0..=top);
        let g = th.sample(m, &mut rng);
        let h = sample_tuple(th, m, n, &mut rng);
        let lhs = th.rho(n, &th.subst(&g, &h, n));
        let rhs = th.subst(&th.rho(m, &g), &ext(th, &h, n), n + 1);
        report.law("rho_naturality").record(th.eq(n + 1, &lhs, &rhs, cfg.fuel), || {
            format!("g = {}, h = {}", th.show(m, &g), show_tuple(th, n, &h))
        });
    }
    report
}

/// All tuples of length `m` over `pool`, by counting.
fn all_tuples<E: Clone>(pool: &[E], m: usize) -> Vec<Vec<E>> {
    let mut out = Vec::new();
    let total = pool.len().pow(m as u32);
    if pool.is_empty() && m > 0 {
        return out;
    }
    for mut k in 0..total {
        let mut tup = Vec::with_capacity(m);
        for _ in 0..m {
            tup.push(pool[k % pool.len()].clone());
            k /= pool.len();
        }
        out.push(tup);
    }
    out
}

/// Exhaustive verification of the three substitution laws on a free theory
/// with scopes up to `max_scope`.
pub fn check_free_theory_exhaustive(th: &FreeTheory, max_scope: usize) -> LawReport {
    let mut report = LawReport::new();
    let carriers: Vec<Vec<FreeEl>> = (0..=max_scope).map(|n| th.enumerate(n)).collect();

    for m in 1..=max_scope {
        for n in 0..=max_scope {
            for g in all_tuples(&carriers[n], m) {
                for j in 1..=m {
                    let lhs = th.subst(&th.var(m, j), &g, n);
                    report.law("subst_var").record(th.eq(n, &lhs, &g[j - 1], 0), || {
                        format!("x{j} . {}", show_tuple(th, n, &g))
                    });
                }
            }
        }
    }
    for m in 0..=max_scope {
        for f in &carriers[m] {
            let lhs = th.subst(f, &th.id_tuple(m, m), m);
            report.law("subst_unit").record(th.eq(m, &lhs, f, 0), || th.show(m, f));
        }
    }
    for l in 0..=max_scope {
        for m in 0..=max_scope {
            for n in 0..=max_scope {
                for f in &carriers[l] {
                    for g in all_tuples(&carriers[m], l) {
                        for h in all_tuples(&carriers[n], m) {
                            let lhs = th.subst(&th.subst(f, &g, m), &h, n);
                            let gh: Vec<FreeEl> =
                                g.iter().map(|gi| th.subst(gi, &h, n)).collect();
                            let rhs = th.subst(f, &gh, n);
                            report.law("subst_assoc").record(th.eq(n, &lhs, &rhs, 0), || {
                                format!(
                                    "f = {}, g = {}, h = {}",
                                    th.show(l, f),
                                    show_tuple(th, m, &g),
                                    show_tuple(th, n, &h)
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_theory_basics() {
        let th = FreeTheory::new(&["a"]);
        // constants absorb substitution
        let a = FreeEl::Cst(0);
        assert_eq!(th.subst(&a, &[FreeEl::Ix(1)], 1), a);
        // indices project
        let g = [FreeEl::Cst(0), FreeEl::Ix(1)];
        assert_eq!(th.subst(&FreeEl::Ix(2), &g, 2), FreeEl::Ix(1));
        assert_eq!(th.enumerate(2).len(), 3);
    }

    #[test]
    fn free_theory_laws_exhaustive_small() {
        let th = FreeTheory::new(&["a", "b"]);
        let report = check_free_theory_exhaustive(&th, 2);
        assert!(report.all_pass(0.0), "{:?}", report.first_counterexample());
    }

    #[test]
    fn app_prime_matches_app() {
        let th = TermTheory::new();
        let mut rng = SeedRng::seed_from_u64(11);
        for n in 0..3 {
            for _ in 0..20 {
                let f = th.sample(n, &mut rng);
                let g = th.sample(n, &mut rng);
                let via_prime = app_prime(&th, n, &f, &g);
                let direct = Term::app(f.clone(), g.clone()).unwrap();
                if beta_eq(&via_prime, &direct, 10_000).unwrap() == EqResult::Distinct {
                    panic!("app' disagrees on {} and {}", f.render_scoped(), g.render_scoped());
                }
            }
        }
    }

    #[test]
    fn initial_map_into_terms_is_identity() {
        let th = TermTheory::new();
        let mut rng = SeedRng::seed_from_u64(23);
        for n in 0..3 {
            for _ in 0..25 {
                let t = th.sample(n, &mut rng);
                let i = initial_map(&th, &t).unwrap();
                assert_ne!(beta_eq(&i, &t, 10_000).unwrap(), EqResult::Distinct);
            }
        }
    }
}
