//! Cross-checks the library normalizer and the substitution propagation
//! engine against an independent normalizer written in the classic
//! nameless-index style, with its own shifting and capture handling.

use lamth_core::gen::{sample_term, GenCfg};
use lamth_core::rewrite::{propagate_subst, replay, Registry};
use lamth_core::term::Node;
use lamth_core::{normalize, SeedRng, Term};
use rand::{Rng, SeedableRng};

/// Nameless terms with zero-based indices counted from the innermost
/// binder, the conventional presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Ix {
    Var(usize),
    App(Box<Ix>, Box<Ix>),
    Lam(Box<Ix>),
    Atom(String),
}

fn shift(t: &Ix, by: usize, cutoff: usize) -> Ix {
    match t {
        Ix::Var(j) if *j >= cutoff => Ix::Var(j + by),
        Ix::Var(j) => Ix::Var(*j),
        Ix::App(f, a) => Ix::App(
            Box::new(shift(f, by, cutoff)),
            Box::new(shift(a, by, cutoff)),
        ),
        Ix::Lam(b) => Ix::Lam(Box::new(shift(b, by, cutoff + 1))),
        Ix::Atom(s) => Ix::Atom(s.clone()),
    }
}

/// Simultaneous substitution: free index `k` (after passing `d` binders)
/// is replaced by `subs[k]` shifted over the binders crossed.
fn msubst(t: &Ix, subs: &[Ix], d: usize) -> Ix {
    match t {
        Ix::Var(j) if *j < d => Ix::Var(*j),
        Ix::Var(j) => shift(&subs[j - d], d, 0),
        Ix::App(f, a) => Ix::App(
            Box::new(msubst(f, subs, d)),
            Box::new(msubst(a, subs, d)),
        ),
        Ix::Lam(b) => Ix::Lam(Box::new(msubst(b, subs, d + 1))),
        Ix::Atom(s) => Ix::Atom(s.clone()),
    }
}

/// Convert from the scoped representation, eagerly applying explicit
/// substitutions via `msubst`.
fn conv(t: &Term) -> Ix {
    match t.node() {
        Node::Var(i) => Ix::Var(t.scope() - i),
        Node::App(f, a) => Ix::App(Box::new(conv(f)), Box::new(conv(a))),
        Node::Abs(b) => Ix::Lam(Box::new(conv(b))),
        Node::Meta(name) => Ix::Atom(name.to_string()),
        Node::Subst(subject, args) => {
            let s = conv(subject);
            let m = args.len();
            // free index k in the subject refers to its variable m - k
            let subs: Vec<Ix> = (0..m).map(|k| conv(&args[m - 1 - k])).collect();
            msubst(&s, &subs, 0)
        }
    }
}

fn beta_contract(f: &Ix, a: &Ix) -> Ix {
    // single substitution of the bound variable, standard shifts
    let body = match f {
        Ix::Lam(b) => b,
        _ => unreachable!(),
    };
    let shifted = shift(a, 1, 0);
    let replaced = msubst_one(body, &shifted, 0);
    unshift(&replaced, 0)
}

fn msubst_one(t: &Ix, arg: &Ix, d: usize) -> Ix {
    match t {
        Ix::Var(j) if *j == d => shift(arg, d, 0),
        Ix::Var(j) => Ix::Var(*j),
        Ix::App(f, a) => Ix::App(
            Box::new(msubst_one(f, arg, d)),
            Box::new(msubst_one(a, arg, d)),
        ),
        Ix::Lam(b) => Ix::Lam(Box::new(msubst_one(b, arg, d + 1))),
        Ix::Atom(s) => Ix::Atom(s.clone()),
    }
}

fn unshift(t: &Ix, cutoff: usize) -> Ix {
    match t {
        Ix::Var(j) if *j > cutoff => Ix::Var(j - 1),
        Ix::Var(j) => Ix::Var(*j),
        Ix::App(f, a) => Ix::App(
            Box::new(unshift(f, cutoff)),
            Box::new(unshift(a, cutoff)),
        ),
        Ix::Lam(b) => Ix::Lam(Box::new(unshift(b, cutoff + 1))),
        Ix::Atom(s) => Ix::Atom(s.clone()),
    }
}

/// One leftmost outermost step.
fn step(t: &Ix) -> Option<Ix> {
    match t {
        Ix::App(f, a) => {
            if matches!(**f, Ix::Lam(_)) {
                return Some(beta_contract(f, a));
            }
            if let Some(f2) = step(f) {
                return Some(Ix::App(Box::new(f2), a.clone()));
            }
            step(a).map(|a2| Ix::App(f.clone(), Box::new(a2)))
        }
        Ix::Lam(b) => step(b).map(|b2| Ix::Lam(Box::new(b2))),
        _ => None,
    }
}

fn nf(t: &Ix, mut fuel: u64) -> Option<Ix> {
    let mut cur = t.clone();
    while let Some(next) = step(&cur) {
        if fuel == 0 {
            return None;
        }
        fuel -= 1;
        cur = next;
    }
    Some(cur)
}

/// Enumerate all redex positions and contract one chosen at random.
fn random_step(t: &Ix, rng: &mut SeedRng) -> Option<Ix> {
    fn paths(t: &Ix, here: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if let Ix::App(f, _) = t {
            if matches!(**f, Ix::Lam(_)) {
                out.push(here.clone());
            }
        }
        match t {
            Ix::App(f, a) => {
                let mut l = here.clone();
                l.push(0);
                paths(f, l, out);
                let mut r = here;
                r.push(1);
                paths(a, r, out);
            }
            Ix::Lam(b) => {
                let mut l = here;
                l.push(0);
                paths(b, l, out);
            }
            _ => {}
        }
    }
    fn contract_at(t: &Ix, path: &[usize]) -> Ix {
        if path.is_empty() {
            if let Ix::App(f, a) = t {
                return beta_contract(f, a);
            }
            unreachable!();
        }
        match (t, path[0]) {
            (Ix::App(f, a), 0) => {
                Ix::App(Box::new(contract_at(f, &path[1..])), a.clone())
            }
            (Ix::App(f, a), 1) => {
                Ix::App(f.clone(), Box::new(contract_at(a, &path[1..])))
            }
            (Ix::Lam(b), 0) => Ix::Lam(Box::new(contract_at(b, &path[1..]))),
            _ => unreachable!(),
        }
    }
    let mut out = Vec::new();
    paths(t, Vec::new(), &mut out);
    if out.is_empty() {
        return None;
    }
    let pick = &out[rng.random_range(0..out.len())];
    Some(contract_at(t, pick))
}

fn random_nf(t: &Ix, rng: &mut SeedRng, mut fuel: u64) -> Option<Ix> {
    let mut cur = t.clone();
    while let Some(next) = random_step(&cur, rng) {
        if fuel == 0 {
            return None;
        }
        fuel -= 1;
        cur = next;
    }
    Some(cur)
}

const FUEL: u64 = 20_000;

#[test]
fn propagation_preserves_meaning_and_replays() {
    let reg = Registry::builtin();
    let cfg = GenCfg::default();
    let mut rng = SeedRng::seed_from_u64(11);
    let mut checked = 0usize;
    for k in 0..500 {
        let n = k % 4;
        let t = sample_term(&cfg, n, &mut rng);
        let (u, trace) = propagate_subst(&reg, &t, FUEL);

        // byte exact replay of the recorded steps
        let replayed = replay(&t, &trace).expect("trace replays");
        assert_eq!(replayed, u, "replay result matches the engine output");

        // meaning preservation against the independent normalizer
        if let (Some(a), Some(b)) = (nf(&conv(&t), FUEL), nf(&conv(&u), FUEL)) {
            assert_eq!(a, b, "engine output differs from input: {}", t.render_scoped());
            checked += 1;
        }
    }
    assert!(checked >= 450, "most samples normalized under the fuel limit");
}

#[test]
fn normalize_agrees_with_independent_normalizer() {
    let cfg = GenCfg::default();
    let mut rng = SeedRng::seed_from_u64(12);
    let mut checked = 0usize;
    for k in 0..300 {
        let n = k % 4;
        let t = sample_term(&cfg, n, &mut rng);
        let ours = normalize(&t, FUEL).nf();
        let theirs = nf(&conv(&t), FUEL);
        if let (Some(ours), Some(theirs)) = (ours, theirs) {
            assert_eq!(
                conv(ours.term()),
                theirs,
                "normal forms differ for {}",
                t.render_scoped()
            );
            checked += 1;
        }
    }
    assert!(checked >= 270);
}

#[test]
fn reduction_order_does_not_change_normal_forms() {
    let cfg = GenCfg::default();
    let mut rng = SeedRng::seed_from_u64(13);
    let mut checked = 0usize;
    for k in 0..120 {
        let n = k % 3;
        let t = conv(&sample_term(&cfg, n, &mut rng));
        let ordered = nf(&t, 2_000);
        let scrambled = random_nf(&t, &mut rng, 2_000);
        if let (Some(a), Some(b)) = (ordered, scrambled) {
            assert_eq!(a, b);
            checked += 1;
        }
    }
    assert!(checked >= 90);
}
