//! The syntactic model `M0` over `S_ω` and the completeness extraction for
//! the implicational-universal fragment with conjunction.

use std::rc::Rc;

use super::{BotInT, Options, Refutation, Run, SOmegaMember, SubsetProof};
use crate::coding::Discipline;
use crate::error::{Error, Result};
use crate::proof::Derivation;
use crate::semantics::{shape, Model, SemValue, Side, Witness};
use crate::syntax::{Formula, Substitution, Symbol, Term, Var};

pub type Value = SemValue<SyntacticModel>;

type ClassicFn = Rc<dyn Fn(&Formula, &Substitution) -> Result<Value>>;
type TheoryFn = Rc<dyn Fn(usize, &Substitution) -> Result<Value>>;

/// Terms as individuals, members of `S_ω` as atom truth and refutations
/// from the theory as `_|_`.
pub struct SyntacticModel {
    pub run: Rc<Run>,
    classic: ClassicFn,
    theory: TheoryFn,
}

impl SyntacticModel {
    pub fn new(
        run: Rc<Run>,
        classic: impl Fn(&Formula, &Substitution) -> Result<Value> + 'static,
        theory: impl Fn(usize, &Substitution) -> Result<Value> + 'static,
    ) -> Rc<Self> {
        Rc::new(SyntacticModel {
            run,
            classic: Rc::new(classic),
            theory: Rc::new(theory),
        })
    }
}

impl Model for SyntacticModel {
    type Individual = Term;
    type AtomEv = SOmegaMember;
    type BotEv = BotInT;

    fn apply_fun(&self, f: &Symbol, args: Vec<Term>) -> Term {
        Term::App(f.clone(), args.into())
    }

    fn default_individual(&self, v: &Var) -> Option<Term> {
        Some(Term::Var(v.clone()))
    }

    fn classic(model: &Rc<Self>, a: &Formula, sigma: &Substitution) -> Result<Value> {
        (model.classic)(a, sigma)
    }

    fn theory_truth(model: &Rc<Self>, index: usize, sigma: &Substitution) -> Result<Value> {
        (model.theory)(index, sigma)
    }
}

/// A proof of `ctx ⊢ A0` where `ctx` lists the theory members at `g`.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub ctx: Vec<Formula>,
    pub g: Vec<usize>,
    pub proof: Derivation,
    pub trace: Vec<String>,
    pub replays: usize,
}

fn unsupported(a: &Formula) -> Error {
    Error::Unsupported {
        formula: a.clone(),
        engine: "core",
    }
}

/// `↓`: truth of `A` under `sigma` to a member proving `A[sigma]`.
pub fn reify(run: &Rc<Run>, a: &Formula, sigma: &Substitution, v: Value) -> Result<SOmegaMember> {
    match a {
        Formula::Atom(..) => v.into_atom(a),
        Formula::Bot => Ok(run.bot(v.into_bot(a)?)),
        Formula::Imp(lhs, rhs) => {
            let f = match v {
                SemValue::Imp(f) => f,
                _ => return Err(shape(a, "an implication")),
            };
            let (lhs, rhs, s, r) = ((**lhs).clone(), (**rhs).clone(), sigma.clone(), run.clone());
            let k = Rc::new(move |refutation: Refutation| {
                let arg = reflect(&r, &lhs, &s, r.pi1(&refutation)?)?;
                let body = reify(&r, &rhs, &s, f(arg)?)?;
                r.flush(r.app_imp(&r.pi2(&refutation)?, &body)?)
            });
            run.ax_imp(&a.subst(sigma), k)
        }
        Formula::Forall(x, body) => {
            let quantified = a.subst(sigma);
            let axiom = run.ax_forall(&quantified)?;
            let witness = crate::coding::henkin_witness(&quantified);
            let w = Term::Var(witness);
            let inner = sigma.extended(x.clone(), w.clone());
            let instance = reify(run, body, &inner, v.instantiate(w, a)?)?;
            run.app_imp(&axiom, &instance)
        }
        Formula::And(l, r) => {
            let (vl, vr) = v.components(a)?;
            let ql = reify(run, l, sigma, vl)?;
            let qr = reify(run, r, sigma, vr)?;
            run.pair(&ql, &qr)
        }
        Formula::Or(..) | Formula::Exists(..) => Err(unsupported(a)),
    }
}

/// `↑`: a member proving `A[sigma]` to truth of `A` under `sigma`.
pub fn reflect(run: &Rc<Run>, a: &Formula, sigma: &Substitution, q: SOmegaMember) -> Result<Value> {
    match a {
        Formula::Atom(..) => Ok(SemValue::Atom(q)),
        Formula::Bot => Ok(SemValue::Bot(run.flush(q)?)),
        Formula::Imp(lhs, rhs) => {
            let (lhs, rhs, s, r) = ((**lhs).clone(), (**rhs).clone(), sigma.clone(), run.clone());
            Ok(SemValue::imp(move |m| {
                let arg = reify(&r, &lhs, &s, m)?;
                reflect(&r, &rhs, &s, r.app_imp(&q, &arg)?)
            }))
        }
        Formula::Forall(x, body) => {
            let (x, body, s, r) = (x.clone(), (**body).clone(), sigma.clone(), run.clone());
            Ok(SemValue::forall(move |t: Term| {
                let inst = r.app_forall(&q, &t)?;
                reflect(&r, &body, &s.extended(x.clone(), t), inst)
            }))
        }
        Formula::And(l, r) => {
            let ql = run.proj(Side::Left, &q)?;
            let qr = run.proj(Side::Right, &q)?;
            Ok(SemValue::and(reflect(run, l, sigma, ql)?, reflect(run, r, sigma, qr)?))
        }
        Formula::Or(..) | Formula::Exists(..) => Err(unsupported(a)),
    }
}

/// Truth of `~~A -> A` in `M0`.
pub fn classic0(run: &Rc<Run>, a: &Formula, sigma: &Substitution) -> Result<Value> {
    let (a, s, r) = (a.clone(), sigma.clone(), run.clone());
    Ok(SemValue::imp(move |m| {
        let nn = reify(&r, &Formula::not(Formula::not(a.clone())), &s, m)?;
        reflect(&r, &a, &s, r.dn(&nn)?)
    }))
}

/// Truth of theory member `index` in `M0`, read off the hypothesis itself.
/// Only the identity assignment, or one that fixes the member's free
/// variables, is accepted.
pub fn init0(run: &Rc<Run>, index: usize, sigma: &Substitution) -> Result<Value> {
    let member = run.theory.member(index).ok_or(Error::MemberOutOfRange(index))?.clone();
    let moved = member
        .free_vars()
        .into_iter()
        .any(|v| sigma.get(&v).is_some_and(|t| *t != Term::Var(v.clone())));
    if moved {
        return Err(Error::MalformedSubset(format!(
            "theory member `{member}` requested under a non-identity assignment"
        )));
    }
    let ctx = super::HenkinContext {
        base: vec![(index, member.clone())],
        marker: run.marker.clone(),
        added: Vec::new(),
    };
    let proof = Derivation::ax(ctx.flatten().into(), 1)?;
    let q = SOmegaMember {
        ctx,
        subset: SubsetProof::base(vec![index]),
        proof,
    };
    reflect(run, &member, sigma, q)
}

/// Builds `M0` for a run of the core engine.
pub fn syntactic_model(run: &Rc<Run>) -> Rc<SyntacticModel> {
    let (r1, r2) = (run.clone(), run.clone());
    SyntacticModel::new(
        run.clone(),
        move |a, sigma| classic0(&r1, a, sigma),
        move |i, sigma| init0(&r2, i, sigma),
    )
}

/// Extracts a checked proof of `goal` from a validity witness.
pub fn complete(witness: &Witness, goal: &Formula, options: Options) -> Result<Extraction> {
    witness.expect_formula(goal)?;
    let run = Run::new(witness.theory(), goal.clone(), Discipline::TwoClass, options);
    let model = syntactic_model(&run);
    let sigma = Substitution::identity();
    let truth = witness.eval(&model, &sigma)?;
    let proved = reify(&run, goal, &sigma, truth)?;
    let refutation = run.flush(run.app_imp(&run.ax0()?, &proved)?)?;
    finish(&run, refutation)
}

pub(crate) fn finish(run: &Rc<Run>, refutation: BotInT) -> Result<Extraction> {
    let mut out = run.dnabs(refutation)?;
    out.proof.recheck()?;
    for (i, a) in out.g.iter().zip(&out.ctx) {
        if run.theory.member(*i) != Some(a) {
            return Err(Error::MemberOutOfRange(*i));
        }
    }
    out.trace = run.trace();
    out.replays = run.replays();
    Ok(out)
}
