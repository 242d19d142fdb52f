//! Presheaves over an algebraic theory, with the theory acting on itself,
//! the shift-by-one presheaf as exponential, binary products, finite
//! powers, the associated one-object-per-arity category, and the germ
//! representation of morphisms out of powers.
//!
//! A morphism T^n -> Q is represented by its germ, the element of Q_n it
//! sends the identity tuple to; acting with the germ recovers the whole
//! family. This makes the hom sets of the endomorphism theory of the
//! theory presheaf computable.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};

use crate::report::LawReport;
use crate::term::EqResult;
use crate::theory::{AlgebraicTheory, LambdaTheory, TermTheory};
use crate::SeedRng;

/// A graded family with a right action of the theory's substitution.
/// `p` lives at grade `f.len()` and the arguments at grade `target`.
pub trait Presheaf<T: AlgebraicTheory> {
    type El: Clone + core::fmt::Debug;

    fn act(&self, th: &T, p: &Self::El, f: &[T::El], target: usize) -> Self::El;
    fn eq(&self, th: &T, n: usize, a: &Self::El, b: &Self::El, fuel: u64) -> EqResult;
    fn sample(&self, th: &T, n: usize, rng: &mut SeedRng) -> Self::El;
    fn show(&self, th: &T, n: usize, a: &Self::El) -> String;
}

/// The theory acting on itself by substitution.
#[derive(Debug, Clone, Copy, Default)]
pub struct TheoryPsh;

impl<T: AlgebraicTheory> Presheaf<T> for TheoryPsh {
    type El = T::El;

    fn act(&self, th: &T, p: &T::El, f: &[T::El], target: usize) -> T::El {
        th.subst(p, f, target)
    }

    fn eq(&self, th: &T, n: usize, a: &T::El, b: &T::El, fuel: u64) -> EqResult {
        th.eq(n, a, b, fuel)
    }

    fn sample(&self, th: &T, n: usize, rng: &mut SeedRng) -> T::El {
        th.sample(n, rng)
    }

    fn show(&self, th: &T, n: usize, a: &T::El) -> String {
        th.show(n, a)
    }
}

/// The shift presheaf: carrier at grade n is the inner carrier at n + 1,
/// acting by weakening the tuple and appending the fresh variable. This is
/// the exponential by the theory presheaf.
#[derive(Debug, Clone, Copy, Default)]
pub struct Plus1<P>(pub P);

impl<T: AlgebraicTheory, P: Presheaf<T>> Presheaf<T> for Plus1<P> {
    type El = P::El;

    fn act(&self, th: &T, q: &P::El, f: &[T::El], target: usize) -> P::El {
        let mut ext: Vec<T::El> = f.iter().map(|fi| th.weaken_el(fi, target, 1)).collect();
        ext.push(th.var(target + 1, target + 1));
        self.0.act(th, q, &ext, target + 1)
    }

    fn eq(&self, th: &T, n: usize, a: &P::El, b: &P::El, fuel: u64) -> EqResult {
        self.0.eq(th, n + 1, a, b, fuel)
    }

    fn sample(&self, th: &T, n: usize, rng: &mut SeedRng) -> P::El {
        self.0.sample(th, n + 1, rng)
    }

    fn show(&self, th: &T, n: usize, a: &P::El) -> String {
        self.0.show(th, n + 1, a)
    }
}

/// Binary product, acting componentwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct PshProd<P, Q>(pub P, pub Q);

impl<T: AlgebraicTheory, P: Presheaf<T>, Q: Presheaf<T>> Presheaf<T> for PshProd<P, Q> {
    type El = (P::El, Q::El);

    fn act(&self, th: &T, p: &Self::El, f: &[T::El], target: usize) -> Self::El {
        (self.0.act(th, &p.0, f, target), self.1.act(th, &p.1, f, target))
    }

    fn eq(&self, th: &T, n: usize, a: &Self::El, b: &Self::El, fuel: u64) -> EqResult {
        match (self.0.eq(th, n, &a.0, &b.0, fuel), self.1.eq(th, n, &a.1, &b.1, fuel)) {
            (EqResult::Equal, EqResult::Equal) => EqResult::Equal,
            (EqResult::Distinct, _) | (_, EqResult::Distinct) => EqResult::Distinct,
            (EqResult::Unknown { fuel_spent }, _) | (_, EqResult::Unknown { fuel_spent }) => {
                EqResult::Unknown { fuel_spent }
            }
        }
    }

    fn sample(&self, th: &T, n: usize, rng: &mut SeedRng) -> Self::El {
        (self.0.sample(th, n, rng), self.1.sample(th, n, rng))
    }

    fn show(&self, th: &T, n: usize, a: &Self::El) -> String {
        format!("({}, {})", self.0.show(th, n, &a.0), self.1.show(th, n, &a.1))
    }
}

/// The finite power, as fixed-length vectors acting componentwise. The
/// power of the theory presheaf is the representable at that arity.
#[derive(Debug, Clone, Copy)]
pub struct PowerPsh<P> {
    pub inner: P,
    pub arity: usize,
}

impl<T: AlgebraicTheory, P: Presheaf<T>> Presheaf<T> for PowerPsh<P> {
    type El = Vec<P::El>;

    fn act(&self, th: &T, p: &Self::El, f: &[T::El], target: usize) -> Self::El {
        p.iter().map(|pi| self.inner.act(th, pi, f, target)).collect()
    }

    fn eq(&self, th: &T, n: usize, a: &Self::El, b: &Self::El, fuel: u64) -> EqResult {
        if a.len() != b.len() {
            return EqResult::Distinct;
        }
        let mut out = EqResult::Equal;
        for (x, y) in a.iter().zip(b) {
            match self.inner.eq(th, n, x, y, fuel) {
                EqResult::Equal => {}
                EqResult::Distinct => return EqResult::Distinct,
                u @ EqResult::Unknown { .. } => out = u,
            }
        }
        out
    }

    fn sample(&self, th: &T, n: usize, rng: &mut SeedRng) -> Self::El {
        (0..self.arity).map(|_| self.inner.sample(th, n, rng)).collect()
    }

    fn show(&self, th: &T, n: usize, a: &Self::El) -> String {
        let parts: Vec<String> = a.iter().map(|x| self.inner.show(th, n, x)).collect();
        format!("({})", parts.join(", "))
    }
}

// ---------------------------------------------------------------------------
// Germs: morphisms out of powers of the theory presheaf.

/// The germ of a morphism family `mor`: its value on the identity tuple.
pub fn yoneda_from<T, Q, F>(th: &T, n: usize, mor: F) -> Q::El
where
    T: AlgebraicTheory,
    Q: Presheaf<T>,
    F: Fn(usize, &[T::El]) -> Q::El,
{
    mor(n, &th.id_tuple(n, n))
}

/// The morphism family induced by a germ: act with the tuple.
pub fn yoneda_apply<T, Q>(
    th: &T,
    q_psh: &Q,
    germ: &Q::El,
    tuple: &[T::El],
    target: usize,
) -> Q::El
where
    T: AlgebraicTheory,
    Q: Presheaf<T>,
{
    q_psh.act(th, germ, tuple, target)
}

/// Evaluation of the exponential: a germ at grade k + 1 applied to one
/// extra argument at grade k.
pub fn psh_eval<T, Q>(th: &T, q_psh: &Q, q: &Q::El, t: &T::El, k: usize) -> Q::El
where
    T: AlgebraicTheory,
    Q: Presheaf<T>,
{
    let mut args = th.id_tuple(k, k);
    args.push(t.clone());
    q_psh.act(th, q, &args, k)
}

// ---------------------------------------------------------------------------
// The category with natural numbers as objects and tuples of theory
// elements as morphisms.

#[derive(Debug, Clone, Copy)]
pub struct Lawvere<'t, T> {
    pub th: &'t T,
}

impl<'t, T: AlgebraicTheory> Lawvere<'t, T> {
    pub fn new(th: &'t T) -> Self {
        Lawvere { th }
    }

    /// `id_n = (x_i)_i`.
    pub fn id(&self, n: usize) -> Vec<T::El> {
        self.th.id_tuple(n, n)
    }

    /// `g . f = (g_i . f)_i`, for f : hom(l, m) and g : hom(m, n); the
    /// result lives in hom(l, n).
    pub fn compose(&self, g: &[T::El], f: &[T::El], l: usize) -> Vec<T::El> {
        g.iter().map(|gi| self.th.subst(gi, f, l)).collect()
    }

    pub fn eq_hom(&self, m: usize, a: &[T::El], b: &[T::El], fuel: u64) -> EqResult {
        if a.len() != b.len() {
            return EqResult::Distinct;
        }
        let mut out = EqResult::Equal;
        for (x, y) in a.iter().zip(b) {
            match self.th.eq(m, x, y, fuel) {
                EqResult::Equal => {}
                EqResult::Distinct => return EqResult::Distinct,
                u @ EqResult::Unknown { .. } => out = u,
            }
        }
        out
    }

    pub fn sample_hom(&self, m: usize, n: usize, rng: &mut SeedRng) -> Vec<T::El> {
        (0..n).map(|_| self.th.sample(m, rng)).collect()
    }
}

// ---------------------------------------------------------------------------
// The reflexive structure on the theory presheaf of a lambda theory, and
// the endomorphism theory it induces, all at the germ level.

/// Abstraction as a morphism of presheaves, composed after a germ-induced
/// morphism T^n -> exp: evaluate the germ family at the identity tuple and
/// apply the theory's abstraction.
pub fn hyland_lam<L: LambdaTheory>(th: &L, n: usize, germ: &L::El) -> L::El {
    let plus1: Plus1<TheoryPsh> = Plus1(TheoryPsh);
    yoneda_from::<L, TheoryPsh, _>(th, n, |k, tuple| {
        th.lam(k, &plus1.act(th, germ, tuple, k))
    })
}

/// The transpose direction: apply the germ family, then the theory's rho.
pub fn hyland_rho<L: LambdaTheory>(th: &L, n: usize, germ: &L::El) -> L::El {
    yoneda_from::<L, Plus1<TheoryPsh>, _>(th, n, |k, tuple| {
        th.rho(k, &th.subst(germ, tuple, k))
    })
}

/// Substitution of germs: compose the induced families.
pub fn hyland_subst<L: LambdaTheory>(th: &L, f: &L::El, g: &[L::El], target: usize) -> L::El {
    yoneda_from::<L, TheoryPsh, _>(th, target, |k, tuple| {
        let applied: Vec<L::El> = g.iter().map(|gi| th.subst(gi, tuple, k)).collect();
        th.subst(f, &applied, k)
    })
}

/// Presheaf action laws on a sampled presheaf.
pub fn check_presheaf_laws<T, P>(
    th: &T,
    psh: &P,
    name: &str,
    samples: usize,
    seed: u64,
    fuel: u64,
    max_scope: usize,
) -> LawReport
where
    T: AlgebraicTheory,
    P: Presheaf<T>,
{
    let mut rng = SeedRng::seed_from_u64(seed);
    let mut report = LawReport::new();
    for _ in 0..samples {
        let l = rng.random_range(0..=max_scope);
        let m = rng.random_range(0..=max_scope);
        let n = rng.random_range(0..=max_scope);
        let t = psh.sample(th, l, &mut rng);

        let unit = psh.act(th, &t, &th.id_tuple(l, l), l);
        report
            .law(&format!("{name}_action_unit"))
            .record(psh.eq(th, l, &unit, &t, fuel), || psh.show(th, l, &t));

        let f: Vec<T::El> = (0..l).map(|_| th.sample(m, &mut rng)).collect();
        let g: Vec<T::El> = (0..m).map(|_| th.sample(n, &mut rng)).collect();
        let lhs = psh.act(th, &psh.act(th, &t, &f, m), &g, n);
        let fg: Vec<T::El> = f.iter().map(|fi| th.subst(fi, &g, n)).collect();
        let rhs = psh.act(th, &t, &fg, n);
        report
            .law(&format!("{name}_action_assoc"))
            .record(psh.eq(th, n, &lhs, &rhs, fuel), || psh.show(th, l, &t));
    }
    report
}

/// The sampled isomorphism between a lambda theory and the endomorphism
/// theory of its theory presheaf: Yoneda round-trips, presheaf and
/// category laws, the exponential evaluation law, the retraction, and
/// preservation of the four theory operations under the germ bijection.
pub fn hyland_roundtrip(scopes: &[usize], samples: usize, seed: u64, fuel: u64) -> LawReport {
    let th = TermTheory::new();
    let psh = TheoryPsh;
    let plus1: Plus1<TheoryPsh> = Plus1(TheoryPsh);
    let law = Lawvere::new(&th);
    let mut rng = SeedRng::seed_from_u64(seed);
    let mut report = LawReport::new();

    report.merge(check_presheaf_laws(&th, &psh, "theory", samples, seed, fuel, 3));
    report.merge(check_presheaf_laws(&th, &plus1, "plus1", samples, seed.wrapping_add(1), fuel, 3));
    report.merge(check_presheaf_laws(
        &th,
        &PshProd(TheoryPsh, Plus1(TheoryPsh)),
        "product",
        samples,
        seed.wrapping_add(2),
        fuel,
        3,
    ));

    for &n in scopes {
        for _ in 0..samples {
            // germ -> family -> germ is the identity up to the action law
            let q = psh.sample(&th, n, &mut rng);
            let back = yoneda_from::<TermTheory, TheoryPsh, _>(&th, n, |k, t| {
                yoneda_apply(&th, &psh, &q, t, k)
            });
            report.law("yoneda_from_to").record(psh.eq(&th, n, &back, &q, fuel), || {
                psh.show(&th, n, &q)
            });

            // family -> germ -> family agrees pointwise on sampled tuples
            let base = psh.sample(&th, n, &mut rng);
            let family = |k: usize, t: &[<TermTheory as AlgebraicTheory>::El]| {
                th.subst(&base, t, k)
            };
            let germ = yoneda_from::<TermTheory, TheoryPsh, _>(&th, n, family);
            let k = rng.random_range(0..=3usize);
            let tuple = law.sample_hom(k, n, &mut rng);
            let via_germ = yoneda_apply(&th, &psh, &germ, &tuple, k);
            let direct = family(k, &tuple);
            report.law("yoneda_to_from").record(psh.eq(&th, k, &via_germ, &direct, fuel), || {
                psh.show(&th, n, &base)
            });

            // category laws for tuples of theory elements
            let l = rng.random_range(0..=3usize);
            let m = rng.random_range(0..=3usize);
            let f = law.sample_hom(l, m, &mut rng);
            let g = law.sample_hom(m, n, &mut rng);
            let unit_l = law.compose(&law.id(n), &g, m);
            report.law("lawvere_unit").record(law.eq_hom(m, &unit_l, &g, fuel), || {
                format!("hom({m}, {n})")
            });
            let unit_r = law.compose(&g, &law.id(m), m);
            report.law("lawvere_unit_right").record(law.eq_hom(m, &unit_r, &g, fuel), || {
                format!("hom({m}, {n})")
            });
            let h = law.sample_hom(n, rng.random_range(0..=3usize), &mut rng);
            let lhs = law.compose(&law.compose(&h, &g, m), &f, l);
            let rhs = law.compose(&h, &law.compose(&g, &f, l), l);
            report.law("lawvere_assoc").record(law.eq_hom(l, &lhs, &rhs, fuel), || {
                format!("hom chain through {m} and {n}")
            });

            // currying round-trip through evaluation: a germ at grade n+1,
            // transposed and evaluated, agrees with direct application
            let fgerm = plus1.sample(&th, n, &mut rng);
            let k = rng.random_range(0..=3usize);
            let tuple = law.sample_hom(k, n, &mut rng);
            let s = th.sample(k, &mut rng);
            let transposed = plus1.act(&th, &fgerm, &tuple, k);
            let via_curry = psh_eval(&th, &psh, &transposed, &s, k);
            let mut direct_args = tuple.clone();
            direct_args.push(s.clone());
            let direct = psh.act(&th, &fgerm, &direct_args, k);
            report.law("curry_eval").record(psh.eq(&th, k, &via_curry, &direct, fuel), || {
                psh.show(&th, n + 1, &fgerm)
            });

            // retraction: rho after lam is the identity on the exponential
            let q1 = plus1.sample(&th, n, &mut rng);
            let back = hyland_rho(&th, n, &hyland_lam(&th, n, &q1));
            report.law("reflexive_beta").record(plus1.eq(&th, n, &back, &q1, fuel), || {
                plus1.show(&th, n, &q1)
            });

            // the germ bijection preserves the theory operations
            if n > 0 {
                let i = rng.random_range(1..=n);
                let germ_var = yoneda_from::<TermTheory, TheoryPsh, _>(&th, n, |_, t| {
                    t[i - 1].clone()
                });
                report.law("preserve_var").record(
                    psh.eq(&th, n, &germ_var, &th.var(n, i), fuel),
                    || format!("x{i} at grade {n}"),
                );
            }

            let m2 = rng.random_range(0..=3usize);
            let fg = th.sample(m2, &mut rng);
            let gs: Vec<_> = (0..m2).map(|_| th.sample(n, &mut rng)).collect();
            let lhs = hyland_subst(&th, &fg, &gs, n);
            let rhs = th.subst(&fg, &gs, n);
            report.law("preserve_subst").record(psh.eq(&th, n, &lhs, &rhs, fuel), || {
                th.show(m2, &fg)
            });

            let f1 = th.sample(n + 1, &mut rng);
            report.law("preserve_lam").record(
                psh.eq(&th, n, &hyland_lam(&th, n, &f1), &th.lam(n, &f1), fuel),
                || th.show(n + 1, &f1),
            );

            let g0 = th.sample(n, &mut rng);
            report.law("preserve_rho").record(
                plus1.eq(&th, n, &hyland_rho(&th, n, &g0), &th.rho(n, &g0), fuel),
                || th.show(n, &g0),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{FreeEl, FreeTheory};

    #[test]
    fn theory_presheaf_over_free_theory_exhaustive() {
        let th = FreeTheory::new(&["a", "b"]);
        let psh = TheoryPsh;
        // unit law over every element and scope up to 3
        for l in 0..=3usize {
            for t in th.enumerate(l) {
                let unit = psh.act(&th, &t, &th.id_tuple(l, l), l);
                assert_eq!(psh.eq(&th, l, &unit, &t, 0), EqResult::Equal);
            }
        }
    }

    #[test]
    fn plus1_carrier_shifts() {
        let th = FreeTheory::new(&["a"]);
        let plus1: Plus1<TheoryPsh> = Plus1(TheoryPsh);
        // grade 0 of the shifted presheaf holds grade 1 elements; acting
        // with the empty tuple appends the fresh variable
        let q = FreeEl::Ix(1);
        let acted = plus1.act(&th, &q, &[], 0);
        assert_eq!(acted, FreeEl::Ix(1));
        let c = FreeEl::Cst(0);
        assert_eq!(plus1.act(&th, &c, &[], 0), c);
    }

    #[test]
    fn lawvere_projection_behavior() {
        let th = FreeTheory::new(&[]);
        let law = Lawvere::new(&th);
        // composing a projection tuple picks components
        let f = alloc::vec![FreeEl::Ix(2), FreeEl::Ix(1)];
        let pick_first = alloc::vec![FreeEl::Ix(1)];
        let got = law.compose(&pick_first, &f, 2);
        assert_eq!(got, alloc::vec![FreeEl::Ix(2)]);
    }
}
