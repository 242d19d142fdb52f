//! Law suite aggregation behind the `laws` subcommand.

use lamth_core::combinators::{
    apply, compose, nproj, ntuple, pair, proj, psi, psi_inv, spair, u, Comb,
};
use lamth_core::gen::{sample_term, GenCfg};
use lamth_core::karoubi::{
    karoubi_monad_check, karoubi_theorems_check, matrix_monoid, monoid_cat, monoid_l0_l1,
    r_as_karoubi_check, three_object_fixture,
};
use lamth_core::presheaf::{check_presheaf_laws, Plus1, PshProd, TheoryPsh};
use lamth_core::report::LawReport;
use lamth_core::retracts::r_ccc_laws;
use lamth_core::term::{beta_eq, weaken, Term};
use lamth_core::theory::{
    check_algebraic_laws, check_free_theory_exhaustive, check_lambda_laws, CheckCfg, FreeTheory,
    TermTheory,
};
use lamth_core::SeedRng;
use rand::SeedableRng;

pub struct SuiteCfg {
    pub samples: usize,
    pub seed: u64,
    pub fuel: u64,
    pub max_scope: usize,
}

impl SuiteCfg {
    fn check_cfg(&self) -> CheckCfg {
        CheckCfg {
            samples: self.samples,
            seed: self.seed,
            fuel: self.fuel,
            max_scope: self.max_scope,
        }
    }
}

/// `free:a,b` or `lambda`.
pub fn theory_suite(theory: &str, cfg: &SuiteCfg) -> Result<LawReport, String> {
    if let Some(labels) = theory.strip_prefix("free:") {
        let labels: Vec<&str> = labels.split(',').filter(|s| !s.is_empty()).collect();
        let th = FreeTheory::new(&labels);
        Ok(check_free_theory_exhaustive(&th, self_cap(cfg.max_scope)))
    } else if theory == "lambda" {
        let th = TermTheory::new();
        Ok(check_algebraic_laws(&th, &cfg.check_cfg()))
    } else {
        Err(format!("unknown theory '{}', expected free:<labels> or lambda", theory))
    }
}

/// Exhaustive enumeration explodes past scope 3.
fn self_cap(max_scope: usize) -> usize {
    max_scope.min(3)
}

pub fn lambda_suite(cfg: &SuiteCfg) -> LawReport {
    let th = TermTheory::new();
    let ccfg = cfg.check_cfg();
    let mut report = check_algebraic_laws(&th, &ccfg);
    report.merge(check_lambda_laws(&th, &ccfg));
    report
}

pub fn combinator_suite(cfg: &SuiteCfg) -> LawReport {
    let gen = GenCfg::default();
    let mut rng = SeedRng::seed_from_u64(cfg.seed);
    let mut report = LawReport::new();
    let closed = |rng: &mut SeedRng| Comb::new(sample_term(&gen, 0, rng)).unwrap();
    for _ in 0..cfg.samples {
        let a = closed(&mut rng);
        let b = closed(&mut rng);
        let c = closed(&mut rng);

        let p = pair(&a, &b);
        for i in 1..=2 {
            let lhs = apply(&proj(i), &p);
            let rhs = if i == 1 { &a } else { &b };
            report.law("proj_beta").record(
                beta_eq(lhs.term(), rhs.term(), cfg.fuel).unwrap(),
                || lhs.term().render_scoped(),
            );
        }

        let lhs = compose(&compose(&a, &b), &c);
        let rhs = compose(&a, &compose(&b, &c));
        report.law("compose_assoc").record(
            beta_eq(lhs.term(), rhs.term(), cfg.fuel).unwrap(),
            || lhs.term().render_scoped(),
        );

        // pi_1 . <a, b> is the eta expansion of a
        let lhs = compose(&proj(1), &spair(&a, &b));
        let eta_a = Term::abs(Term::app(
            weaken(a.term(), 1),
            Term::var(1, 1).unwrap(),
        ).unwrap()).unwrap();
        report.law("proj_spair").record(
            beta_eq(lhs.term(), &eta_a, cfg.fuel).unwrap(),
            || lhs.term().render_scoped(),
        );

        let tup = ntuple(&[a.clone(), b.clone(), c.clone()]);
        for (i, expect) in [(1, &a), (2, &b), (3, &c)] {
            let lhs = apply(&nproj(3, i), &tup);
            report.law("tuple_proj").record(
                beta_eq(lhs.term(), expect.term(), cfg.fuel).unwrap(),
                || lhs.term().render_scoped(),
            );
        }

        // psi(f) x y = f (x, y) and psi_inv(f) (x, y) = f x y
        let x = closed(&mut rng);
        let y = closed(&mut rng);
        let lhs = apply(&apply(&psi(&a), &x), &y);
        let rhs = apply(&a, &pair(&x, &y));
        report.law("curry_comp").record(
            beta_eq(lhs.term(), rhs.term(), cfg.fuel).unwrap(),
            || lhs.term().render_scoped(),
        );
        let lhs = apply(&psi_inv(&a), &pair(&x, &y));
        let rhs = apply(&apply(&a, &x), &y);
        report.law("uncurry_comp").record(
            beta_eq(lhs.term(), rhs.term(), cfg.fuel).unwrap(),
            || lhs.term().render_scoped(),
        );
    }
    report.law("identity_idempotent").record(
        beta_eq(compose(&u(), &u()).term(), u().term(), cfg.fuel).unwrap(),
        || "U . U".to_string(),
    );
    report
}

pub fn retracts_suite(cfg: &SuiteCfg) -> LawReport {
    r_ccc_laws(cfg.samples, cfg.seed, cfg.fuel)
}

pub fn presheaf_suite(cfg: &SuiteCfg) -> LawReport {
    let th = TermTheory::new();
    let mut report = check_presheaf_laws(
        &th,
        &TheoryPsh,
        "theory",
        cfg.samples,
        cfg.seed,
        cfg.fuel,
        cfg.max_scope,
    );
    report.merge(check_presheaf_laws(
        &th,
        &Plus1(TheoryPsh),
        "plus1",
        cfg.samples,
        cfg.seed.wrapping_add(1),
        cfg.fuel,
        cfg.max_scope,
    ));
    report.merge(check_presheaf_laws(
        &th,
        &PshProd(TheoryPsh, TheoryPsh),
        "product",
        cfg.samples,
        cfg.seed.wrapping_add(2),
        cfg.fuel,
        cfg.max_scope,
    ));
    report
}

pub fn karoubi_suite(cfg: &SuiteCfg) -> LawReport {
    let matrix = monoid_cat(&matrix_monoid());
    let mut report = karoubi_theorems_check(&matrix);
    report.merge(karoubi_monad_check(&matrix));
    let fixture = three_object_fixture();
    report.merge(karoubi_theorems_check(&fixture));
    report.merge(karoubi_monad_check(&fixture));
    report.merge(monoid_l0_l1(cfg.samples, cfg.seed, cfg.fuel));
    report.merge(r_as_karoubi_check(cfg.samples, cfg.seed.wrapping_add(1), cfg.fuel));
    report
}

/// A deliberately false equation, kept as a fixture so the failure path
/// of the reporting machinery stays exercised end to end.
pub fn broken_suite(cfg: &SuiteCfg) -> LawReport {
    let mut report = LawReport::new();
    report.law("proj_swap").record(
        beta_eq(proj(1).term(), proj(2).term(), cfg.fuel).unwrap(),
        || format!("{} vs {}", proj(1).term().render_scoped(), proj(2).term().render_scoped()),
    );
    report
}
