#![allow(dead_code)]

//! Generators and reference implementations shared by the integration tests.

use std::collections::BTreeSet;
use std::rc::Rc;
use std::sync::Arc;

use henkin_forge::henkin::{HenkinContext, Refutation, SubsetKind, SubsetProof};
use henkin_forge::nbe::{check_min, MinFormula, MinProof};
use henkin_forge::proof::{check, InclStep, InclusionWitness, ObjectProof};
use henkin_forge::syntax::{Formula, Term, Var};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ObjectProof::*;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn arc(p: ObjectProof) -> Arc<ObjectProof> {
    Arc::new(p)
}

pub fn app(p: ObjectProof, q: ObjectProof) -> ObjectProof {
    AppImp(arc(p), arc(q))
}

pub fn lam(a: Formula, p: ObjectProof) -> ObjectProof {
    AbsImp(a, arc(p))
}

pub fn inst(p: ObjectProof, t: Term) -> ObjectProof {
    AppForall(arc(p), t)
}

pub fn gen(y: Var, p: ObjectProof) -> ObjectProof {
    AbsForall(y, arc(p))
}

/// Index of context position `pos` as a hypothesis reference.
pub fn hyp(ctx: &[Formula], pos: usize) -> ObjectProof {
    Ax(ctx.len() - 1 - pos)
}

// ---------------------------------------------------------------------------
// Formulas

const PREDICATES: &[(&str, usize)] = &[("P", 1), ("Q", 1), ("R", 2), ("X", 0), ("Y", 0), ("Z", 0)];

pub fn random_term(rng: &mut ChaCha8Rng, vars: &[Var], depth: u32) -> Term {
    let roll = rng.gen_range(0..10);
    if depth > 0 && roll < 2 {
        let args = vec![random_term(rng, vars, depth - 1)];
        return Term::app("f", args);
    }
    if roll < 4 || vars.is_empty() {
        return Term::constant(["c", "d"].choose(rng).unwrap());
    }
    Term::Var(vars.choose(rng).unwrap().clone())
}

pub fn random_atom(rng: &mut ChaCha8Rng, vars: &[Var]) -> Formula {
    let (p, arity) = *PREDICATES.choose(rng).unwrap();
    let args = (0..arity).map(|_| random_term(rng, vars, 1)).collect();
    Formula::atom(p, args)
}

/// A random formula over every connective. `vars` are the variables that
/// may occur free; binders add their own.
pub fn random_formula(rng: &mut ChaCha8Rng, vars: &[Var], depth: u32) -> Formula {
    if depth == 0 {
        return if rng.gen_ratio(1, 8) {
            Formula::Bot
        } else {
            random_atom(rng, vars)
        };
    }
    let sub = |rng: &mut ChaCha8Rng, vars: &[Var]| {
        let d = rng.gen_range(0..depth);
        random_formula(rng, vars, d)
    };
    match rng.gen_range(0..7) {
        0 => random_atom(rng, vars),
        1 => Formula::imp(sub(rng, vars), sub(rng, vars)),
        2 => Formula::and(sub(rng, vars), sub(rng, vars)),
        3 => Formula::or(sub(rng, vars), sub(rng, vars)),
        4 => Formula::not(sub(rng, vars)),
        kind => {
            let x = ["x", "y", "z"].choose(rng).unwrap();
            let mut inner = vars.to_vec();
            inner.push(Var::named(x));
            let body = sub(rng, &inner);
            if kind == 5 {
                Formula::forall(x, body)
            } else {
                Formula::exists(x, body)
            }
        }
    }
}

/// Free-variable pool mixing named variables and witness variables `#k`.
pub fn random_vars(rng: &mut ChaCha8Rng) -> Vec<Var> {
    let mut vars = vec![Var::named("a"), Var::named("b")];
    for _ in 0..rng.gen_range(0..3) {
        let k: u64 = if rng.gen_bool(0.5) {
            rng.gen_range(0..64)
        } else {
            rng.gen()
        };
        vars.push(Var::fresh(k));
    }
    vars
}

/// Formulas built only from `->` and `X, Y, Z, _|_`.
pub fn random_min_formula(rng: &mut ChaCha8Rng, depth: u32) -> MinFormula {
    if depth == 0 || rng.gen_ratio(1, 3) {
        return match rng.gen_range(0..7) {
            0 => MinFormula::Atom(Formula::Bot),
            1 | 2 => MinFormula::atom("X"),
            3 | 4 => MinFormula::atom("Y"),
            _ => MinFormula::atom("Z"),
        };
    }
    MinFormula::imp(random_min_formula(rng, depth - 1), random_min_formula(rng, depth - 1))
}

// ---------------------------------------------------------------------------
// Object proofs

/// Renumbers free hypotheses of `p` by `k`, as when `k` hypotheses are
/// pushed onto its context.
pub fn shift(p: &ObjectProof, k: usize) -> ObjectProof {
    fn go(p: &ObjectProof, k: usize, depth: usize) -> ObjectProof {
        let s = |q: &Arc<ObjectProof>| arc(go(q, k, depth));
        match p {
            Ax(i) if *i < depth => Ax(*i),
            Ax(i) => Ax(i + k),
            Dn(q) => Dn(s(q)),
            AppImp(q, r) => AppImp(s(q), s(r)),
            AppForall(q, t) => AppForall(s(q), t.clone()),
            AbsImp(a, q) => AbsImp(a.clone(), arc(go(q, k, depth + 1))),
            AbsForall(y, q) => AbsForall(y.clone(), s(q)),
            Pair(q, r) => Pair(s(q), s(r)),
            Proj1(q) => Proj1(s(q)),
            Proj2(q) => Proj2(s(q)),
            Inj1(b, q) => Inj1(b.clone(), s(q)),
            Inj2(a, q) => Inj2(a.clone(), s(q)),
            Case(q, l, r) => Case(s(q), s(l), s(r)),
            ExIntro(t, a, q) => ExIntro(t.clone(), a.clone(), s(q)),
            ExElim(q, r) => ExElim(s(q), s(r)),
        }
    }
    go(p, k, 0)
}

/// Wraps `p : ctx ⊢ a` in a random detour that still proves `a` in `ctx`.
pub fn detour(rng: &mut ChaCha8Rng, p: ObjectProof, ctx: &[Formula], a: &Formula) -> ObjectProof {
    match rng.gen_range(0..6) {
        0 => Proj1(arc(Pair(arc(p.clone()), arc(p)))),
        1 if !ctx.is_empty() => {
            let pos = rng.gen_range(0..ctx.len());
            app(lam(ctx[pos].clone(), shift(&p, 1)), hyp(ctx, pos))
        }
        2 => Dn(arc(lam(Formula::not(a.clone()), app(Ax(0), shift(&p, 1))))),
        3 => app(lam(a.clone(), Ax(0)), p),
        4 => {
            let z = Var::named(&format!("d{}", rng.gen::<u32>()));
            inst(gen(z, p), Term::constant("c"))
        }
        _ => Proj2(arc(Pair(arc(p.clone()), arc(p)))),
    }
}

pub fn detours(rng: &mut ChaCha8Rng, mut p: ObjectProof, ctx: &[Formula], a: &Formula) -> ObjectProof {
    for _ in 0..rng.gen_range(0..4) {
        p = detour(rng, p, ctx, a);
    }
    p
}

/// Inserts `extra` into `ctx` at random positions; returns the new context
/// and the position each extra formula landed at.
pub fn scatter(rng: &mut ChaCha8Rng, ctx: &[Formula], extra: &[Formula]) -> (Vec<Formula>, Vec<usize>) {
    let mut out = ctx.to_vec();
    let mut positions: Vec<usize> = Vec::new();
    for a in extra {
        let at = rng.gen_range(0..=out.len());
        for p in positions.iter_mut() {
            if *p >= at {
                *p += 1;
            }
        }
        out.insert(at, a.clone());
        positions.push(at);
    }
    (out, positions)
}

fn closed_vars() -> Vec<Var> {
    vec![Var::named("a"), Var::named("b")]
}

fn random_gamma(rng: &mut ChaCha8Rng) -> Vec<Formula> {
    let vars = closed_vars();
    (0..rng.gen_range(0..4))
        .map(|_| random_formula(rng, &vars, 2))
        .collect()
}

/// A premise for `weaken`: a source context, a proof in it, a target
/// context containing the source in order, and the inclusion witness.
pub struct WeakenCase {
    pub src: Vec<Formula>,
    pub tgt: Vec<Formula>,
    pub witness: InclusionWitness,
    pub proof: ObjectProof,
    pub formula: Formula,
}

pub fn weaken_case(rng: &mut ChaCha8Rng) -> WeakenCase {
    let vars = [Var::named("x"), Var::named("y"), Var::named("a")];
    let src: Vec<Formula> = (0..rng.gen_range(1..4))
        .map(|_| random_formula(rng, &vars[2..], 2))
        .collect();
    let (proof, formula) = match rng.gen_range(0..4) {
        0 => {
            let pos = rng.gen_range(0..src.len());
            (hyp(&src, pos), src[pos].clone())
        }
        1 => {
            let a = random_formula(rng, &vars, 1);
            (lam(a.clone(), Ax(0)), Formula::imp(a.clone(), a))
        }
        2 => {
            let (i, j) = (rng.gen_range(0..src.len()), rng.gen_range(0..src.len()));
            let f = Formula::and(src[i].clone(), src[j].clone());
            (Pair(arc(hyp(&src, i)), arc(hyp(&src, j))), f)
        }
        _ => {
            // An eigenvariable the target is likely to mention.
            let v = vars[rng.gen_range(0..2)].clone();
            let body = Formula::atom("P", vec![Term::Var(v.clone())]);
            let name = match &v {
                Var::Named(n) => n.to_string(),
                Var::Fresh(_) => unreachable!(),
            };
            let f = Formula::forall(&name, Formula::imp(body.clone(), body.clone()));
            (gen(v, lam(body, Ax(0))), f)
        }
    };
    assert!(check(&proof, &src).is_ok(), "generated weakening premise checks");
    let proof = detours(rng, proof, &src, &formula);
    let extra: Vec<Formula> = (0..rng.gen_range(0..4))
        .map(|_| random_formula(rng, &vars, 2))
        .collect();
    let (tgt, landed) = scatter(rng, &src, &extra);
    let steps = (0..tgt.len())
        .map(|i| {
            if landed.contains(&i) {
                InclStep::Skip
            } else {
                InclStep::Keep
            }
        })
        .collect();
    WeakenCase {
        src,
        tgt,
        witness: InclusionWitness::from_steps(steps),
        proof,
        formula,
    }
}

/// A premise for `efq`: a proof of `_|_` in an inconsistent context.
pub fn efq_case(rng: &mut ChaCha8Rng) -> (Vec<Formula>, ObjectProof, Formula) {
    let vars = closed_vars();
    let a = random_formula(rng, &vars, 2);
    let gamma = random_gamma(rng);
    let (ctx, at) = scatter(rng, &gamma, &[a.clone(), Formula::not(a)]);
    let p = app(hyp(&ctx, at[1]), hyp(&ctx, at[0]));
    let p = detours(rng, p, &ctx, &Formula::Bot);
    let goal = random_formula(rng, &vars, 2);
    (ctx, p, goal)
}

/// A premise for `pi1`/`pi2`: `p : Γ, A -> B ⊢ _|_`, with `A` and `B`.
pub fn imp_refutation_case(rng: &mut ChaCha8Rng) -> (Vec<Formula>, ObjectProof, Formula, Formula) {
    let vars = closed_vars();
    let a = random_formula(rng, &vars, 2);
    let b = random_formula(rng, &vars, 2);
    let imp = Formula::imp(a.clone(), b.clone());
    let gamma = random_gamma(rng);
    let (mut ctx, p) = match rng.gen_range(0..3) {
        0 => {
            let (g, at) = scatter(rng, &gamma, &[Formula::not(imp.clone())]);
            let mut ctx = g.clone();
            ctx.push(imp.clone());
            let p = app(hyp(&ctx, at[0]), Ax(0));
            (g, p)
        }
        1 => {
            let (g, at) = scatter(rng, &gamma, &[Formula::not(b.clone()), a.clone()]);
            let mut ctx = g.clone();
            ctx.push(imp.clone());
            let p = app(hyp(&ctx, at[0]), app(Ax(0), hyp(&ctx, at[1])));
            (g, p)
        }
        _ => {
            let (g, at) = scatter(rng, &gamma, &[a.clone(), Formula::not(a.clone())]);
            let mut ctx = g.clone();
            ctx.push(imp.clone());
            let p = app(hyp(&ctx, at[1]), hyp(&ctx, at[0]));
            (g, p)
        }
    };
    ctx.push(imp);
    let p = detours(rng, p, &ctx, &Formula::Bot);
    (ctx, p, a, b)
}

/// A body with `x` free, and the closed universal over it.
fn quantified_body(rng: &mut ChaCha8Rng) -> Formula {
    let x = Term::var("x");
    let px = Formula::atom("P", vec![x.clone()]);
    let qx = Formula::atom("Q", vec![Term::app("f", vec![x.clone()])]);
    match rng.gen_range(0..4) {
        0 => px,
        1 => Formula::and(px, qx),
        2 => Formula::imp(qx, px),
        _ => Formula::atom("R", vec![x, Term::constant("c")]),
    }
}

fn witness_var(rng: &mut ChaCha8Rng) -> Var {
    if rng.gen_bool(0.5) {
        Var::fresh(rng.gen_range(0u64..1_000_000))
    } else {
        Var::named("w")
    }
}

/// A premise for `drinker`: `p : Γ, A(y) -> forall x. A(x) ⊢ _|_`.
pub fn drinker_case(rng: &mut ChaCha8Rng) -> (Vec<Formula>, ObjectProof, Var) {
    let body = quantified_body(rng);
    let all = Formula::forall("x", body.clone());
    let y = witness_var(rng);
    let instance = body.instantiate(&Var::named("x"), &Term::Var(y.clone()));
    let axiom = Formula::imp(instance, all.clone());
    let gamma = random_gamma(rng);
    let (g, p) = match rng.gen_range(0..3) {
        0 => {
            let v = Var::named("v");
            let inst_v = body.instantiate(&Var::named("x"), &Term::Var(v));
            let scheme = Formula::forall("v", Formula::not(Formula::imp(inst_v, all.clone())));
            let (g, at) = scatter(rng, &gamma, &[scheme]);
            let mut ctx = g.clone();
            ctx.push(axiom.clone());
            (g, app(inst(hyp(&ctx, at[0]), Term::Var(y.clone())), Ax(0)))
        }
        1 => {
            let (g, at) = scatter(rng, &gamma, &[all.clone(), Formula::not(all.clone())]);
            let mut ctx = g.clone();
            ctx.push(axiom.clone());
            (g, app(hyp(&ctx, at[1]), hyp(&ctx, at[0])))
        }
        _ => {
            let (g, at) = scatter(rng, &gamma, &[all.clone(), Formula::not(all.clone())]);
            let mut ctx = g.clone();
            ctx.push(axiom.clone());
            let instance = inst(hyp(&ctx, at[0]), Term::Var(y.clone()));
            (g, app(hyp(&ctx, at[1]), app(Ax(0), instance)))
        }
    };
    let mut ctx = g;
    ctx.push(axiom);
    let p = detours(rng, p, &ctx, &Formula::Bot);
    (ctx, p, y)
}

/// A premise for `henkin_ex`: `p : Γ, (exists y. A(y)) -> A(x) ⊢ _|_`.
pub fn henkin_ex_case(rng: &mut ChaCha8Rng) -> (Vec<Formula>, ObjectProof, Var) {
    let body = quantified_body(rng);
    let ex = Formula::exists("x", body.clone());
    let w = witness_var(rng);
    let instance = body.instantiate(&Var::named("x"), &Term::Var(w.clone()));
    let axiom = Formula::imp(ex.clone(), instance);
    let gamma = random_gamma(rng);
    let (g, p) = if rng.gen_bool(0.5) {
        let none = Formula::forall("x", Formula::not(body.clone()));
        let (g, at) = scatter(rng, &gamma, &[ex.clone(), none]);
        let mut ctx = g.clone();
        ctx.push(axiom.clone());
        let refute = inst(hyp(&ctx, at[1]), Term::Var(w.clone()));
        (g, app(refute, app(Ax(0), hyp(&ctx, at[0]))))
    } else {
        let (g, at) = scatter(rng, &gamma, &[ex.clone(), Formula::not(ex.clone())]);
        let mut ctx = g.clone();
        ctx.push(axiom.clone());
        (g, app(hyp(&ctx, at[1]), hyp(&ctx, at[0])))
    };
    let mut ctx = g;
    ctx.push(axiom);
    let p = detours(rng, p, &ctx, &Formula::Bot);
    (ctx, p, w)
}

// ---------------------------------------------------------------------------
// Henkin contexts

/// A fixed theory and a fixed enumeration `stage -> added formula`, so
/// independently drawn contexts agree wherever their stages meet.
pub struct Enumeration {
    pub theory: Vec<Formula>,
    pub stages: Vec<Formula>,
    pub marker: Formula,
}

impl Enumeration {
    pub fn new(rng: &mut ChaCha8Rng, stages: usize) -> Self {
        let vars = closed_vars();
        Enumeration {
            theory: (0..5).map(|_| random_formula(rng, &[], 2)).collect(),
            stages: (0..=stages).map(|_| random_formula(rng, &vars, 2)).collect(),
            marker: Formula::not(Formula::prop("G")),
        }
    }

    /// A context and its subset derivation at a level at least its top stage.
    pub fn draw(&self, rng: &mut ChaCha8Rng) -> (HenkinContext, SubsetProof) {
        let base: Vec<(usize, Formula)> = (0..self.theory.len())
            .filter(|_| rng.gen_bool(0.5))
            .map(|i| (i, self.theory[i].clone()))
            .collect();
        let chosen: BTreeSet<usize> = (1..self.stages.len()).filter(|_| rng.gen_bool(0.4)).collect();
        let mut ctx = HenkinContext::new(self.marker.clone());
        ctx.base = base.clone();
        let mut proof = SubsetProof::base(base.iter().map(|(i, _)| *i).collect());
        let mut level = 0usize;
        for s in chosen {
            proof = SubsetProof::skip(BigUint::from(s - 1 - level), proof);
            let formula = self.stages[s].clone();
            let k: henkin_forge::henkin::RelConsK = Rc::new(|_: Refutation| unreachable!("never flushed"));
            proof = SubsetProof::spine(SubsetKind::Imp {
                inner: proof,
                formula: formula.clone(),
                k,
            })
            .expect("spine node");
            ctx.added.push((BigUint::from(s), formula));
            level = s;
        }
        let lift = if rng.gen_ratio(1, 5) {
            BigUint::from(rng.gen_range(0u64..1_000_000_000))
        } else {
            BigUint::from(rng.gen_range(0u64..4))
        };
        (ctx, SubsetProof::skip(lift, proof))
    }
}

// ---------------------------------------------------------------------------
// Minimal implicational proofs and a rewriting normalizer

/// A random minimal proof with nested β-redexes, in context `ctx`.
pub fn random_min_proof(rng: &mut ChaCha8Rng, ctx: &[MinFormula]) -> MinProof {
    let mut pool: Vec<(MinProof, MinFormula)> = (0..ctx.len())
        .map(|i| (MinProof::Ax(i), ctx[ctx.len() - 1 - i].clone()))
        .collect();
    for _ in 0..rng.gen_range(3..10) {
        let (p, a) = pool.choose(rng).unwrap().clone();
        let step = match (rng.gen_range(0..4), &a) {
            (0, MinFormula::Imp(l, r)) => pool
                .iter()
                .find(|(_, b)| b == &**l)
                .map(|(q, _)| (MinProof::app(p.clone(), q.clone()), (**r).clone())),
            (1, _) => {
                let b = random_min_formula(rng, 2);
                Some((
                    MinProof::abs(b.clone(), shift_min(&p, 1)),
                    MinFormula::imp(b, a.clone()),
                ))
            }
            _ => None,
        };
        pool.push(step.unwrap_or((p, a)));
    }
    let (p, _) = pool.choose(rng).unwrap().clone();
    let mut p = p;
    for _ in 0..rng.gen_range(2..5) {
        p = expand(rng, &p, ctx);
    }
    p
}

pub fn shift_min(p: &MinProof, k: usize) -> MinProof {
    p.rename(&move |i| i + k)
}

/// Replaces one random subterm with a β-redex that reduces to it.
fn expand(rng: &mut ChaCha8Rng, p: &MinProof, ctx: &[MinFormula]) -> MinProof {
    let here = rng.gen_ratio(1, 3);
    match p {
        MinProof::App(f, a) if !here => {
            if rng.gen_bool(0.5) {
                MinProof::app(expand(rng, f, ctx), (**a).clone())
            } else {
                MinProof::app((**f).clone(), expand(rng, a, ctx))
            }
        }
        MinProof::Abs(b, body) if !here => {
            let mut inner = ctx.to_vec();
            inner.push(b.clone());
            MinProof::abs(b.clone(), expand(rng, body, &inner))
        }
        _ => {
            let a = check_min(p, ctx).expect("generated minimal proof checks");
            match rng.gen_range(0..3) {
                0 => MinProof::app(MinProof::abs(a, MinProof::Ax(0)), p.clone()),
                1 if !ctx.is_empty() => {
                    let i = rng.gen_range(0..ctx.len());
                    let b = ctx[ctx.len() - 1 - i].clone();
                    MinProof::app(MinProof::abs(b, shift_min(p, 1)), MinProof::Ax(i))
                }
                _ => {
                    // (λf. λy. f y) p, when p proves an implication.
                    if let MinFormula::Imp(l, _) = &a {
                        let eta = MinProof::abs(
                            a.clone(),
                            MinProof::abs((**l).clone(), MinProof::app(MinProof::Ax(1), MinProof::Ax(0))),
                        );
                        MinProof::app(eta, p.clone())
                    } else {
                        MinProof::app(MinProof::abs(a, MinProof::Ax(0)), p.clone())
                    }
                }
            }
        }
    }
}

/// Substitutes `q` for hypothesis 0 in `p`, lowering the others.
fn subst_min(p: &MinProof, q: &MinProof, depth: usize) -> MinProof {
    match p {
        MinProof::Ax(i) if *i < depth => MinProof::Ax(*i),
        MinProof::Ax(i) if *i == depth => shift_min(q, depth),
        MinProof::Ax(i) => MinProof::Ax(i - 1),
        MinProof::App(f, a) => MinProof::app(subst_min(f, q, depth), subst_min(a, q, depth)),
        MinProof::Abs(b, body) => MinProof::abs(b.clone(), subst_min(body, q, depth + 1)),
    }
}

/// β-normal form by repeated leftmost-outermost contraction.
pub fn beta_normal(p: &MinProof) -> MinProof {
    match p {
        MinProof::Ax(_) => p.clone(),
        MinProof::Abs(b, body) => MinProof::abs(b.clone(), beta_normal(body)),
        MinProof::App(f, a) => match beta_normal(f) {
            MinProof::Abs(_, body) => beta_normal(&subst_min(&body, a, 0)),
            f => MinProof::app(f, beta_normal(a)),
        },
    }
}

/// η-long form of a β-normal proof of `a`.
pub fn eta_long(p: &MinProof, a: &MinFormula, ctx: &[MinFormula]) -> MinProof {
    match a {
        MinFormula::Imp(l, r) => {
            let mut inner = ctx.to_vec();
            inner.push((**l).clone());
            let body = match p {
                MinProof::Abs(_, body) => (**body).clone(),
                _ => MinProof::app(shift_min(p, 1), MinProof::Ax(0)),
            };
            MinProof::abs((**l).clone(), eta_long(&body, r, &inner))
        }
        MinFormula::Atom(_) => eta_neutral(p, ctx),
    }
}

fn eta_neutral(p: &MinProof, ctx: &[MinFormula]) -> MinProof {
    match p {
        MinProof::App(f, a) => {
            let arg = match check_min(f, ctx).expect("neutral head checks") {
                MinFormula::Imp(l, _) => (*l).clone(),
                other => panic!("application of {other}"),
            };
            MinProof::app(eta_neutral(f, ctx), eta_long(a, &arg, ctx))
        }
        _ => p.clone(),
    }
}

/// The reference βη-normal form.
pub fn reference_normal(p: &MinProof, ctx: &[MinFormula]) -> MinProof {
    let a = check_min(p, ctx).expect("input checks");
    eta_long(&beta_normal(p), &a, ctx)
}

pub fn count_redexes(p: &MinProof) -> usize {
    match p {
        MinProof::Ax(_) => 0,
        MinProof::Abs(_, b) => count_redexes(b),
        MinProof::App(f, a) => usize::from(matches!(**f, MinProof::Abs(..))) + count_redexes(f) + count_redexes(a),
    }
}

pub fn max_redex_nesting(p: &MinProof) -> usize {
    match p {
        MinProof::Ax(_) => 0,
        MinProof::Abs(_, b) => max_redex_nesting(b),
        MinProof::App(f, a) => {
            let inner = max_redex_nesting(f).max(max_redex_nesting(a));
            inner + usize::from(matches!(**f, MinProof::Abs(..)))
        }
    }
}
