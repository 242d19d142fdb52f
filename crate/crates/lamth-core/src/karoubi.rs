//! The idempotent completion of finite categories, with exhaustive law
//! checking: construction, splitting of idempotents, the fully faithful
//! embedding, the completion monad, a three-matrix monoid example, and the
//! sampled monoid views of closed and one-variable terms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::SeedableRng;

use crate::combinators::compose_at;
use crate::gen::{sample_term, GenCfg};
use crate::report::LawReport;
use crate::retracts::object_pool;
use crate::term::{beta_eq, rho_term, Term};
use crate::SeedRng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatError {
    BadIdentity { object: usize },
    BadComposite { g: usize, f: usize },
    MissingComposite { g: usize, f: usize },
}

/// A finite category with decidable arrow equality: objects and arrows are
/// indices, composition is a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// Identity arrow per object.
    pub ids: Vec<usize>,
    comp: BTreeMap<(usize, usize), usize>,
}

impl FinCat {
    /// Build and validate totality and typing of the composition table.
    /// The category laws themselves are checked by `check_laws`.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        ids: Vec<usize>,
        comp: BTreeMap<(usize, usize), usize>,
    ) -> Result<FinCat, CatError> {
        for (x, &i) in ids.iter().enumerate() {
            if arrows[i].src != x || arrows[i].dst != x {
                return Err(CatError::BadIdentity { object: x });
            }
        }
        for g in 0..arrows.len() {
            for f in 0..arrows.len() {
                if arrows[f].dst == arrows[g].src {
                    match comp.get(&(g, f)) {
                        None => return Err(CatError::MissingComposite { g, f }),
                        Some(&h) => {
                            if arrows[h].src != arrows[f].src || arrows[h].dst != arrows[g].dst {
                                return Err(CatError::BadComposite { g, f });
                            }
                        }
                    }
                }
            }
        }
        Ok(FinCat { objects, arrows, ids, comp })
    }

    /// `g . f`, defined when the endpoints meet.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp.get(&(g, f)).copied()
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&i| self.arrows[i].src == a && self.arrows[i].dst == b)
            .collect()
    }

    /// Exhaustive identity and associativity laws.
    pub fn check_laws(&self) -> LawReport {
        let mut report = LawReport::new();
        for f in 0..self.arrows.len() {
            let a = &self.arrows[f];
            let lhs = self.compose(self.ids[a.dst], f);
            report.law("identity_left").record_bool(lhs == Some(f), || {
                format!("id . {}", a.name)
            });
            let rhs = self.compose(f, self.ids[a.src]);
            report.law("identity_right").record_bool(rhs == Some(f), || {
                format!("{} . id", a.name)
            });
        }
        for h in 0..self.arrows.len() {
            for g in 0..self.arrows.len() {
                if self.arrows[g].dst != self.arrows[h].src {
                    continue;
                }
                for f in 0..self.arrows.len() {
                    if self.arrows[f].dst != self.arrows[g].src {
                        continue;
                    }
                    let lhs = self.compose(h, g).and_then(|hg| self.compose(hg, f));
                    let rhs = self.compose(g, f).and_then(|gf| self.compose(h, gf));
                    report.law("associativity").record_bool(
                        lhs.is_some() && lhs == rhs,
                        || {
                            format!(
                                "{} . {} . {}",
                                self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                            )
                        },
                    );
                }
            }
        }
        report
    }

    pub fn idempotent_endos(&self) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&f| {
                self.arrows[f].src == self.arrows[f].dst && self.compose(f, f) == Some(f)
            })
            .collect()
    }

    /// Count endomorphisms of `x` with a two-sided inverse.
    pub fn endo_iso_count(&self, x: usize) -> usize {
        self.hom(x, x)
            .into_iter()
            .filter(|&g| {
                self.hom(x, x).into_iter().any(|h| {
                    self.compose(g, h) == Some(self.ids[x])
                        && self.compose(h, g) == Some(self.ids[x])
                })
            })
            .count()
    }
}

// ---------------------------------------------------------------------------
// Finite monoids and their one-object categories.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monoid {
    pub names: Vec<String>,
    /// `op[i][j]` is the product i * j.
    pub op: Vec<Vec<usize>>,
    pub unit: usize,
}

impl Monoid {
    pub fn check_laws(&self) -> LawReport {
        let mut report = LawReport::new();
        let k = self.names.len();
        for i in 0..k {
            report.law("monoid_unit").record_bool(
                self.op[self.unit][i] == i && self.op[i][self.unit] == i,
                || self.names[i].clone(),
            );
            for j in 0..k {
                for l in 0..k {
                    report.law("monoid_assoc").record_bool(
                        self.op[self.op[i][j]][l] == self.op[i][self.op[j][l]],
                        || format!("{} {} {}", self.names[i], self.names[j], self.names[l]),
                    );
                }
            }
        }
        report
    }

    pub fn is_commutative(&self) -> bool {
        let k = self.names.len();
        (0..k).all(|i| (0..k).all(|j| self.op[i][j] == self.op[j][i]))
    }
}

/// The one-object category of a monoid.
pub fn monoid_cat(m: &Monoid) -> FinCat {
    let arrows = m
        .names
        .iter()
        .enumerate()
        .map(|(_, n)| Arrow { name: n.clone(), src: 0, dst: 0 })
        .collect();
    let mut comp = BTreeMap::new();
    for g in 0..m.names.len() {
        for f in 0..m.names.len() {
            comp.insert((g, f), m.op[g][f]);
        }
    }
    FinCat::new(alloc::vec!["*".to_string()], arrows, alloc::vec![m.unit], comp)
        .expect("monoid table is total")
}

/// The three-element commutative matrix monoid: the identity, the
/// projection onto the first coordinate, and its negation. The table is
/// recomputed from 2x2 integer matrix multiplication.
pub fn matrix_monoid() -> Monoid {
    let mats: [[[i64; 2]; 2]; 3] = [
        [[1, 0], [0, 1]],
        [[1, 0], [0, 0]],
        [[-1, 0], [0, 0]],
    ];
    let mul = |x: &[[i64; 2]; 2], y: &[[i64; 2]; 2]| {
        let mut out = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = (0..2).map(|k| x[i][k] * y[k][j]).sum();
            }
        }
        out
    };
    let find = |m: &[[i64; 2]; 2]| {
        mats.iter()
            .position(|cand| cand == m)
            .expect("monoid is closed under multiplication")
    };
    let op = (0..3)
        .map(|i| (0..3).map(|j| find(&mul(&mats[i], &mats[j]))).collect())
        .collect();
    Monoid {
        names: alloc::vec!["a".to_string(), "b".to_string(), "c".to_string()],
        op,
        unit: 0,
    }
}

// ---------------------------------------------------------------------------
// The idempotent completion of a finite category.

/// The completed category, together with the bookkeeping that relates its
/// objects and arrows back to the base.
#[derive(Debug, Clone)]
pub struct Karoubi {
    pub cat: FinCat,
    /// Completed object index to (base object, idempotent base arrow).
    pub objects: Vec<(usize, usize)>,
    /// Completed arrow index to base arrow index.
    pub arrow_base: Vec<usize>,
}

impl Karoubi {
    pub fn object_index(&self, base_obj: usize, idem: usize) -> Option<usize> {
        self.objects.iter().position(|&o| o == (base_obj, idem))
    }

    pub fn arrow_index(&self, base_arrow: usize, src: usize, dst: usize) -> Option<usize> {
        (0..self.cat.arrows.len()).find(|&i| {
            self.arrow_base[i] == base_arrow
                && self.cat.arrows[i].src == src
                && self.cat.arrows[i].dst == dst
        })
    }
}

/// Objects are pairs of a base object with an idempotent on it; morphisms
/// are base arrows absorbed by the two idempotents; the identity on
/// (X, f) is f itself.
pub fn set_karoubi(base: &FinCat) -> Karoubi {
    let objects: Vec<(usize, usize)> = base
        .idempotent_endos()
        .into_iter()
        .map(|f| (base.arrows[f].src, f))
        .collect();
    let mut arrows = Vec::new();
    let mut arrow_base = Vec::new();
    let mut ids = alloc::vec![0usize; objects.len()];
    for (i1, &(x1, f1)) in objects.iter().enumerate() {
        for (i2, &(x2, f2)) in objects.iter().enumerate() {
            for g in base.hom(x1, x2) {
                let absorbed = base
                    .compose(f2, g)
                    .and_then(|h| base.compose(h, f1));
                if absorbed == Some(g) {
                    if g == f1 && i1 == i2 {
                        ids[i1] = arrows.len();
                    }
                    arrows.push(Arrow {
                        name: format!("{}:{}->{}", base.arrows[g].name, i1, i2),
                        src: i1,
                        dst: i2,
                    });
                    arrow_base.push(g);
                }
            }
        }
    }
    let mut comp = BTreeMap::new();
    for g in 0..arrows.len() {
        for f in 0..arrows.len() {
            if arrows[f].dst == arrows[g].src {
                let h = base
                    .compose(arrow_base[g], arrow_base[f])
                    .expect("composable in base");
                let k = (0..arrows.len())
                    .find(|&i| {
                        arrow_base[i] == h
                            && arrows[i].src == arrows[f].src
                            && arrows[i].dst == arrows[g].dst
                    })
                    .expect("composite is absorbed");
                comp.insert((g, f), k);
            }
        }
    }
    let cat = FinCat::new(
        (0..objects.len())
            .map(|i| format!("({},{})", base.objects[objects[i].0], base.arrows[objects[i].1].name))
            .collect(),
        arrows,
        ids,
        comp,
    )
    .expect("completion composition is total");
    Karoubi { cat, objects, arrow_base }
}

/// A functor between finite categories, by index maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub obj: Vec<usize>,
    pub arr: Vec<usize>,
}

pub fn functor_id(c: &FinCat) -> Functor {
    Functor {
        obj: (0..c.objects.len()).collect(),
        arr: (0..c.arrows.len()).collect(),
    }
}

pub fn functor_compose(g: &Functor, f: &Functor) -> Functor {
    Functor {
        obj: f.obj.iter().map(|&x| g.obj[x]).collect(),
        arr: f.arr.iter().map(|&a| g.arr[a]).collect(),
    }
}

/// Typing, identity and composition preservation, exhaustively.
pub fn check_functor(a: &FinCat, b: &FinCat, f: &Functor) -> bool {
    let typed = a.arrows.iter().enumerate().all(|(i, ar)| {
        let im = &b.arrows[f.arr[i]];
        im.src == f.obj[ar.src] && im.dst == f.obj[ar.dst]
    });
    let ids = a.ids.iter().enumerate().all(|(x, &i)| f.arr[i] == b.ids[f.obj[x]]);
    let comp = (0..a.arrows.len()).all(|g| {
        (0..a.arrows.len()).all(|h| match a.compose(g, h) {
            None => true,
            Some(gh) => b.compose(f.arr[g], f.arr[h]) == Some(f.arr[gh]),
        })
    });
    typed && ids && comp
}

/// The embedding sending X to (X, id_X).
pub fn embed(base: &FinCat, k: &Karoubi) -> Functor {
    let obj: Vec<usize> = (0..base.objects.len())
        .map(|x| k.object_index(x, base.ids[x]).expect("identity is idempotent"))
        .collect();
    let arr: Vec<usize> = (0..base.arrows.len())
        .map(|g| {
            let a = &base.arrows[g];
            k.arrow_index(g, obj[a.src], obj[a.dst]).expect("identities absorb")
        })
        .collect();
    Functor { obj, arr }
}

/// Split an idempotent arrow of the completed category: the new object
/// carries the underlying base idempotent, and the same arrow serves as
/// both retraction and section.
pub fn split_idempotent(k: &Karoubi, f: usize) -> Option<(usize, usize, usize)> {
    let ar = &k.cat.arrows[f];
    if ar.src != ar.dst || k.cat.compose(f, f) != Some(f) {
        return None;
    }
    let (x, _) = k.objects[ar.src];
    let b = k.arrow_base[f];
    let obj = k.object_index(x, b)?;
    let r = k.arrow_index(b, ar.src, obj)?;
    let s = k.arrow_index(b, obj, ar.src)?;
    Some((obj, r, s))
}

/// Apply the completion to a functor: (X, f) goes to (F X, F f).
pub fn karoubi_map(ka: &Karoubi, kb: &Karoubi, f: &Functor) -> Functor {
    let obj: Vec<usize> = ka
        .objects
        .iter()
        .map(|&(x, e)| kb.object_index(f.obj[x], f.arr[e]).expect("functors preserve idempotents"))
        .collect();
    let arr: Vec<usize> = (0..ka.cat.arrows.len())
        .map(|i| {
            let a = &ka.cat.arrows[i];
            kb.arrow_index(f.arr[ka.arrow_base[i]], obj[a.src], obj[a.dst])
                .expect("absorption is preserved")
        })
        .collect();
    Functor { obj, arr }
}

/// The monad multiplication: ((X, a), b) collapses to (X, b).
pub fn karoubi_mult(k: &Karoubi, kk: &Karoubi) -> Functor {
    let obj: Vec<usize> = kk
        .objects
        .iter()
        .map(|&(kobj, kidem)| {
            let (x, _) = k.objects[kobj];
            let b = k.arrow_base[kidem];
            k.object_index(x, b).expect("inner idempotent is idempotent in the base")
        })
        .collect();
    let arr: Vec<usize> = (0..kk.cat.arrows.len())
        .map(|i| {
            let a = &kk.cat.arrows[i];
            let g = k.arrow_base[kk.arrow_base[i]];
            k.arrow_index(g, obj[a.src], obj[a.dst]).expect("absorption descends")
        })
        .collect();
    Functor { obj, arr }
}

/// Exhaustive verification that the completion is a monad on this base:
/// functoriality of unit and multiplication, both unit laws, and
/// associativity.
pub fn karoubi_monad_check(base: &FinCat) -> LawReport {
    let mut report = LawReport::new();
    let k = set_karoubi(base);
    let kk = set_karoubi(&k.cat);
    let kkk = set_karoubi(&kk.cat);

    report.law("completion_category_laws").record_bool(k.cat.check_laws().all_pass(0.0), || {
        "completed category".to_string()
    });

    let unit = embed(base, &k);
    report.law("unit_functor").record_bool(check_functor(base, &k.cat, &unit), || {
        "embedding".to_string()
    });

    let mult = karoubi_mult(&k, &kk);
    report.law("mult_functor").record_bool(check_functor(&kk.cat, &k.cat, &mult), || {
        "multiplication".to_string()
    });

    // mult . unit_K = id
    let unit_k = embed(&k.cat, &kk);
    report.law("monad_unit_left").record_bool(
        functor_compose(&mult, &unit_k) == functor_id(&k.cat),
        || "mult . embed".to_string(),
    );

    // mult . K(unit) = id
    let k_unit = karoubi_map(&k, &kk, &unit);
    report.law("monad_unit_right").record_bool(
        functor_compose(&mult, &k_unit) == functor_id(&k.cat),
        || "mult . completed embed".to_string(),
    );

    // mult . mult_K = mult . K(mult)
    let mult_k = karoubi_mult(&kk, &kkk);
    let k_mult = karoubi_map(&kkk, &kk, &mult);
    report.law("monad_assoc").record_bool(
        functor_compose(&mult, &mult_k) == functor_compose(&mult, &k_mult),
        || "multiplication associativity".to_string(),
    );

    report
}

/// Exhaustive checks of the completion theorems on a finite base:
/// category laws, splitting of every idempotent, and fully faithful
/// embedding.
pub fn karoubi_theorems_check(base: &FinCat) -> LawReport {
    let mut report = LawReport::new();
    report.law("base_category_laws").record_bool(base.check_laws().all_pass(0.0), || {
        "base".to_string()
    });
    let k = set_karoubi(base);
    report.law("category_laws").record_bool(k.cat.check_laws().all_pass(0.0), || {
        "completion".to_string()
    });

    // object count equals the number of idempotents
    report.law("object_count").record_bool(
        k.objects.len() == base.idempotent_endos().len(),
        || format!("{} objects", k.objects.len()),
    );

    // every idempotent splits with r . s = id and s . r = f
    for f in k.cat.idempotent_endos() {
        match split_idempotent(&k, f) {
            None => report.law("splitting").record_bool(false, || k.cat.arrows[f].name.clone()),
            Some((obj, r, s)) => {
                let rs = k.cat.compose(r, s);
                let sr = k.cat.compose(s, r);
                report.law("splitting").record_bool(
                    rs == Some(k.cat.ids[obj]) && sr == Some(f),
                    || k.cat.arrows[f].name.clone(),
                );
            }
        }
    }

    // the embedding is a functor and a bijection on hom sets
    let e = embed(base, &k);
    report.law("embed_functor").record_bool(check_functor(base, &k.cat, &e), || {
        "embedding".to_string()
    });
    for x in 0..base.objects.len() {
        for y in 0..base.objects.len() {
            let before = base.hom(x, y);
            let after = k.cat.hom(e.obj[x], e.obj[y]);
            let injective = {
                let mut imgs: Vec<usize> = before.iter().map(|&g| e.arr[g]).collect();
                imgs.sort_unstable();
                imgs.dedup();
                imgs.len() == before.len()
            };
            report.law("embed_fully_faithful").record_bool(
                before.len() == after.len()
                    && injective
                    && before.iter().all(|&g| after.contains(&e.arr[g])),
                || format!("hom({x}, {y})"),
            );
        }
    }
    report
}

/// A three-object fixture with a nontrivial split pair: a retract of the
/// middle object onto the first, and a third object absorbing the induced
/// idempotent.
pub fn three_object_fixture() -> FinCat {
    // arrows: id0 id1 id2, f: 0->1, g: 1->0 (g.f = id0), e = f.g,
    // h: 1->2 with h.e = h, k = h.f : 0->2
    let (id0, id1, id2, f, g, e, h, kk) = (0, 1, 2, 3, 4, 5, 6, 7);
    let arrows = alloc::vec![
        Arrow { name: "id0".to_string(), src: 0, dst: 0 },
        Arrow { name: "id1".to_string(), src: 1, dst: 1 },
        Arrow { name: "id2".to_string(), src: 2, dst: 2 },
        Arrow { name: "f".to_string(), src: 0, dst: 1 },
        Arrow { name: "g".to_string(), src: 1, dst: 0 },
        Arrow { name: "e".to_string(), src: 1, dst: 1 },
        Arrow { name: "h".to_string(), src: 1, dst: 2 },
        Arrow { name: "k".to_string(), src: 0, dst: 2 },
    ];
    let table = [
        (g, f, id0),
        (f, g, e),
        (e, e, e),
        (e, f, f),
        (g, e, g),
        (h, e, h),
        (h, f, kk),
        (kk, g, h),
    ];
    let mut comp = BTreeMap::new();
    for (gg, ff, hh) in table {
        comp.insert((gg, ff), hh);
    }
    // identity composites
    for i in 0..arrows.len() {
        let a: &Arrow = &arrows[i];
        comp.insert(([id0, id1, id2][a.dst], i), i);
        comp.insert((i, [id0, id1, id2][a.src]), i);
    }
    FinCat::new(
        alloc::vec!["X".to_string(), "Y".to_string(), "Z".to_string()],
        arrows,
        alloc::vec![id0, id1, id2],
        comp,
    )
    .expect("fixture table is total")
}

// ---------------------------------------------------------------------------
// Virtual monoids of terms: closed terms with eta-stability under
// composition, and one-variable terms under substitution, isomorphic via
// the abstraction and application transposes.

fn comp0(a: &Term, b: &Term) -> Term {
    compose_at(0, a, b)
}

/// Sampled checks of the monoid isomorphism between closed eta-stable
/// terms under composition (unit: the abstraction of the variable) and
/// one-variable terms under substitution (unit: the variable).
pub fn monoid_l0_l1(samples: usize, seed: u64, fuel: u64) -> LawReport {
    let cfg = GenCfg::default();
    let mut rng = SeedRng::seed_from_u64(seed);
    let mut report = LawReport::new();
    let x1 = Term::var(1, 1).unwrap();
    let unit0 = Term::abs(x1.clone()).unwrap();
    let lam = |t: &Term| Term::abs(t.clone()).unwrap();
    let mul1 = |s: &Term, t: &Term| Term::subst(s.clone(), alloc::vec![t.clone()], 1).unwrap();

    for _ in 0..samples {
        // closed-side elements are abstraction images, which satisfy the
        // eta membership condition
        let t = sample_term(&cfg, 1, &mut rng);
        let f = lam(&t);
        let memb = lam(&rho_term(&f));
        report.law("l0_membership").record(beta_eq(&memb, &f, fuel).unwrap(), || {
            f.render_scoped()
        });

        // the two maps invert each other
        let s = sample_term(&cfg, 1, &mut rng);
        let back = rho_term(&lam(&s));
        report.law("rho_after_lam").record(beta_eq(&back, &s, fuel).unwrap(), || {
            s.render_scoped()
        });
        let forth = lam(&rho_term(&f));
        report.law("lam_after_rho").record(beta_eq(&forth, &f, fuel).unwrap(), || {
            f.render_scoped()
        });

        // homomorphism in both directions
        let g = lam(&sample_term(&cfg, 1, &mut rng));
        let lhs = rho_term(&comp0(&f, &g));
        let rhs = mul1(&rho_term(&f), &rho_term(&g));
        report.law("rho_homomorphism").record(beta_eq(&lhs, &rhs, fuel).unwrap(), || {
            format!("{} . {}", f.render_scoped(), g.render_scoped())
        });
        let s2 = sample_term(&cfg, 1, &mut rng);
        let lhs = lam(&mul1(&s, &s2));
        let rhs = comp0(&lam(&s), &lam(&s2));
        report.law("lam_homomorphism").record(beta_eq(&lhs, &rhs, fuel).unwrap(), || {
            format!("{} * {}", s.render_scoped(), s2.render_scoped())
        });
    }

    // units map to units
    report.law("unit_rho").record(
        beta_eq(&rho_term(&unit0), &x1, fuel).unwrap(),
        || unit0.render_scoped(),
    );
    report.law("unit_lam").record(
        beta_eq(&lam(&x1), &unit0, fuel).unwrap(),
        || x1.render_scoped(),
    );
    report
}

/// Sampled agreement between the category of retracts and its presentation
/// as the idempotent completion of the closed-term monoid: objects satisfy
/// the eta membership condition, morphisms are absorbed, and identities
/// and composition coincide with the monoid operations.
pub fn r_as_karoubi_check(samples: usize, seed: u64, fuel: u64) -> LawReport {
    let cfg = GenCfg::default();
    let mut rng = SeedRng::seed_from_u64(seed);
    let mut report = LawReport::new();
    let pool = object_pool(fuel);
    let lam = |t: &Term| Term::abs(t.clone()).unwrap();

    for obj in &pool {
        let a = obj.term();
        let memb = lam(&rho_term(a));
        report.law("object_membership").record(beta_eq(&memb, a, fuel).unwrap(), || {
            a.render_scoped()
        });
        // identity in both presentations is the idempotent itself
        let aa = comp0(a, a);
        report.law("identity_agrees").record(beta_eq(&aa, a, fuel).unwrap(), || {
            a.render_scoped()
        });
    }

    for _ in 0..samples {
        use rand::Rng;
        let a = pool[rng.random_range(0..pool.len())].term().clone();
        let b = pool[rng.random_range(0..pool.len())].term().clone();
        let c = pool[rng.random_range(0..pool.len())].term().clone();
        let t = sample_term(&cfg, 0, &mut rng);
        let f = comp0(&b, &comp0(&t, &a));
        // the absorbed term is a morphism in the completion sense
        let abs_f = comp0(&b, &comp0(&f, &a));
        report.law("morphism_absorption").record(beta_eq(&abs_f, &f, fuel).unwrap(), || {
            f.render_scoped()
        });
        let s = sample_term(&cfg, 0, &mut rng);
        let g = comp0(&c, &comp0(&s, &b));
        // composition in both presentations is term composition
        let gf = comp0(&g, &f);
        let abs_gf = comp0(&c, &comp0(&gf, &a));
        report.law("composition_agrees").record(beta_eq(&abs_gf, &gf, fuel).unwrap(), || {
            gf.render_scoped()
        });
    }
    report
}
