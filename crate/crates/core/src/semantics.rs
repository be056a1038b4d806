//! Tarski semantics over possibly-exploding models.
//!
//! Truth is evidence-carrying: a [`SemValue`] for `A` has the same tree
//! shape as `A`, with model-supplied payloads at atoms and at `_|_`, and
//! host closures at `->` and `forall`. A validity witness is a program that
//! builds such a value in any model, given only the model interface.

use std::fmt;
use std::rc::Rc;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::proof::{check, ObjectProof};
use crate::syntax::{alpha_eq, eval_term, EvalError, Formula, Symbol, Term, Theory, Var, VarMap};

pub type Assignment<M> = VarMap<<M as Model>::Individual>;

/// A possibly-exploding classical model.
///
/// `classic` supplies the truth of `~~A -> A`, `theory_truth` the truth of
/// each theory member. Both return values of the documented shape.
pub trait Model: Sized + 'static {
    type Individual: Clone + 'static;
    type AtomEv: Clone + 'static;
    type BotEv: Clone + 'static;

    fn apply_fun(&self, f: &Symbol, args: Vec<Self::Individual>) -> Self::Individual;

    /// Value of a variable the assignment does not mention.
    fn default_individual(&self, v: &Var) -> Option<Self::Individual>;

    fn classic(model: &Rc<Self>, a: &Formula, sigma: &Assignment<Self>) -> Result<SemValue<Self>>;

    fn theory_truth(model: &Rc<Self>, index: usize, sigma: &Assignment<Self>) -> Result<SemValue<Self>>;
}

pub type ImpFn<M> = Rc<dyn Fn(SemValue<M>) -> Result<SemValue<M>>>;
pub type ForallFn<M> = Rc<dyn Fn(<M as Model>::Individual) -> Result<SemValue<M>>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Truth evidence for a formula in a model.
pub enum SemValue<M: Model> {
    Atom(M::AtomEv),
    Bot(M::BotEv),
    Imp(ImpFn<M>),
    Forall(ForallFn<M>),
    And(Rc<SemValue<M>>, Rc<SemValue<M>>),
    Or(Side, Rc<SemValue<M>>),
    Exists(M::Individual, Rc<SemValue<M>>),
}

impl<M: Model> Clone for SemValue<M> {
    fn clone(&self) -> Self {
        match self {
            SemValue::Atom(a) => SemValue::Atom(a.clone()),
            SemValue::Bot(b) => SemValue::Bot(b.clone()),
            SemValue::Imp(f) => SemValue::Imp(f.clone()),
            SemValue::Forall(f) => SemValue::Forall(f.clone()),
            SemValue::And(a, b) => SemValue::And(a.clone(), b.clone()),
            SemValue::Or(s, v) => SemValue::Or(*s, v.clone()),
            SemValue::Exists(d, v) => SemValue::Exists(d.clone(), v.clone()),
        }
    }
}

impl<M: Model> fmt::Debug for SemValue<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemValue::Atom(_) => f.write_str("Atom(..)"),
            SemValue::Bot(_) => f.write_str("Bot(..)"),
            SemValue::Imp(_) => f.write_str("Imp(<fn>)"),
            SemValue::Forall(_) => f.write_str("Forall(<fn>)"),
            SemValue::And(a, b) => f.debug_tuple("And").field(a).field(b).finish(),
            SemValue::Or(s, v) => f.debug_tuple("Or").field(s).field(v).finish(),
            SemValue::Exists(_, v) => f.debug_tuple("Exists").field(&"..").field(v).finish(),
        }
    }
}

impl<M: Model> SemValue<M> {
    pub fn imp(f: impl Fn(SemValue<M>) -> Result<SemValue<M>> + 'static) -> Self {
        SemValue::Imp(Rc::new(f))
    }

    pub fn forall(f: impl Fn(M::Individual) -> Result<SemValue<M>> + 'static) -> Self {
        SemValue::Forall(Rc::new(f))
    }

    pub fn and(a: SemValue<M>, b: SemValue<M>) -> Self {
        SemValue::And(Rc::new(a), Rc::new(b))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SemValue::Atom(_) => "atom evidence",
            SemValue::Bot(_) => "falsity evidence",
            SemValue::Imp(_) => "an implication",
            SemValue::Forall(_) => "a universal",
            SemValue::And(..) => "a pair",
            SemValue::Or(..) => "an injection",
            SemValue::Exists(..) => "a witness pair",
        }
    }

    /// Modus ponens in the model.
    pub fn apply(&self, arg: SemValue<M>, at: &Formula) -> Result<SemValue<M>> {
        match self {
            SemValue::Imp(f) => f(arg),
            _ => Err(shape(at, "an implication")),
        }
    }

    pub fn instantiate(&self, d: M::Individual, at: &Formula) -> Result<SemValue<M>> {
        match self {
            SemValue::Forall(f) => f(d),
            _ => Err(shape(at, "a universal")),
        }
    }

    pub fn into_atom(self, at: &Formula) -> Result<M::AtomEv> {
        match self {
            SemValue::Atom(a) => Ok(a),
            _ => Err(shape(at, "atom evidence")),
        }
    }

    pub fn into_bot(self, at: &Formula) -> Result<M::BotEv> {
        match self {
            SemValue::Bot(b) => Ok(b),
            _ => Err(shape(at, "falsity evidence")),
        }
    }

    pub fn components(&self, at: &Formula) -> Result<(SemValue<M>, SemValue<M>)> {
        match self {
            SemValue::And(a, b) => Ok(((**a).clone(), (**b).clone())),
            _ => Err(shape(at, "a pair")),
        }
    }
}

pub(crate) fn shape(at: &Formula, expected: &'static str) -> Error {
    Error::Shape {
        formula: at.clone(),
        expected,
    }
}

/// Whether the variant tree of `v` matches the connectives of `a`.
/// Closures are not probed.
pub fn shape_check<M: Model>(v: &SemValue<M>, a: &Formula) -> bool {
    match (v, a) {
        (SemValue::Atom(_), Formula::Atom(..)) => true,
        (SemValue::Bot(_), Formula::Bot) => true,
        (SemValue::Imp(_), Formula::Imp(..)) => true,
        (SemValue::Forall(_), Formula::Forall(..)) => true,
        (SemValue::And(x, y), Formula::And(a, b)) => shape_check(x, a) && shape_check(y, b),
        (SemValue::Or(Side::Left, x), Formula::Or(a, _)) => shape_check(x, a),
        (SemValue::Or(Side::Right, y), Formula::Or(_, b)) => shape_check(y, b),
        (SemValue::Exists(_, x), Formula::Exists(_, a)) => shape_check(x, a),
        _ => false,
    }
}

/// Interprets a term under `sigma`, falling back to the model's default for
/// unassigned variables.
pub fn eval<M: Model>(model: &M, t: &Term, sigma: &Assignment<M>) -> Result<M::Individual> {
    let assign = |v: &Var| sigma.get(v).cloned().or_else(|| model.default_individual(v));
    let interp = |f: &Symbol, args: Vec<M::Individual>| model.apply_fun(f, args);
    eval_term(t, &assign, &interp).map_err(|EvalError::Unbound(v)| Error::Unbound(v))
}

/// Soundness: maps a proof of `ctx ⊢ A` and truth values for `ctx` to a truth
/// value for `A`.
pub fn soundness_eval<M: Model>(
    model: &Rc<M>,
    p: &ObjectProof,
    ctx: &[Formula],
    env: &[SemValue<M>],
    sigma: &Assignment<M>,
) -> Result<SemValue<M>> {
    if ctx.len() != env.len() {
        return Err(Error::MalformedSubset(format!(
            "{} hypotheses but {} truth values",
            ctx.len(),
            env.len()
        )));
    }
    let frame = Frame {
        ctx: Rc::new(ctx.to_vec()),
        env: Rc::new(env.to_vec()),
    };
    eval_proof(model, &Arc::new(p.clone()), &frame, sigma)
}

struct Frame<M: Model> {
    ctx: Rc<Vec<Formula>>,
    env: Rc<Vec<SemValue<M>>>,
}

impl<M: Model> Clone for Frame<M> {
    fn clone(&self) -> Self {
        Frame {
            ctx: self.ctx.clone(),
            env: self.env.clone(),
        }
    }
}

fn eval_proof<M: Model>(
    model: &Rc<M>,
    p: &Arc<ObjectProof>,
    frame: &Frame<M>,
    sigma: &Assignment<M>,
) -> Result<SemValue<M>> {
    use ObjectProof::*;
    let go = |q: &Arc<ObjectProof>| eval_proof(model, q, frame, sigma);
    let formula_of = |q: &ObjectProof| check(q, &frame.ctx).map_err(Error::from);
    match &**p {
        Ax(i) => {
            let n = frame.env.len();
            if *i >= n {
                return Err(crate::proof::CheckError::IndexOutOfScope { index: *i, len: n }.into());
            }
            Ok(frame.env[n - 1 - i].clone())
        }
        Dn(q) => {
            let nn = formula_of(q)?;
            let a = nn
                .as_double_negation()
                .ok_or_else(|| shape(&nn, "a double negation"))?
                .clone();
            let classic = M::classic(model, &a, sigma)?;
            let target = Formula::imp(nn, a);
            classic.apply(go(q)?, &target)
        }
        AppImp(q, r) => {
            let f = go(q)?;
            let at = formula_of(q)?;
            f.apply(go(r)?, &at)
        }
        AppForall(q, t) => {
            let f = go(q)?;
            let d = eval(&**model, t, sigma)?;
            f.instantiate(d, &formula_of(q)?)
        }
        AbsImp(a, q) => {
            let (model, q, frame, sigma, a) = (model.clone(), q.clone(), frame.clone(), sigma.clone(), a.clone());
            Ok(SemValue::imp(move |v| {
                let mut ctx = (*frame.ctx).clone();
                ctx.push(a.clone());
                let mut env = (*frame.env).clone();
                env.push(v);
                let inner = Frame {
                    ctx: Rc::new(ctx),
                    env: Rc::new(env),
                };
                eval_proof(&model, &q, &inner, &sigma)
            }))
        }
        AbsForall(y, q) => {
            let (model, q, frame, sigma, y) = (model.clone(), q.clone(), frame.clone(), sigma.clone(), y.clone());
            Ok(SemValue::forall(move |d| {
                eval_proof(&model, &q, &frame, &sigma.extended(y.clone(), d))
            }))
        }
        Pair(q, r) => Ok(SemValue::and(go(q)?, go(r)?)),
        Proj1(q) => Ok(go(q)?.components(&formula_of(q)?)?.0),
        Proj2(q) => Ok(go(q)?.components(&formula_of(q)?)?.1),
        Inj1(_, q) => Ok(SemValue::Or(Side::Left, Rc::new(go(q)?))),
        Inj2(_, q) => Ok(SemValue::Or(Side::Right, Rc::new(go(q)?))),
        Case(q, l, r) => match go(q)? {
            SemValue::Or(Side::Left, v) => go(l)?.apply((*v).clone(), &formula_of(l)?),
            SemValue::Or(Side::Right, v) => go(r)?.apply((*v).clone(), &formula_of(r)?),
            _ => Err(shape(&formula_of(q)?, "an injection")),
        },
        ExIntro(t, _, q) => {
            let d = eval(&**model, t, sigma)?;
            Ok(SemValue::Exists(d, Rc::new(go(q)?)))
        }
        ExElim(q, r) => match go(q)? {
            SemValue::Exists(d, v) => {
                let at = formula_of(r)?;
                let body = match &at {
                    Formula::Forall(_, body) => (**body).clone(),
                    _ => at.clone(),
                };
                go(r)?.instantiate(d, &at)?.apply((*v).clone(), &body)
            }
            _ => Err(shape(&formula_of(q)?, "a witness pair")),
        },
    }
}

/// A validity witness: a uniform program producing truth of its formula in
/// any model that validates its theory.
#[derive(Clone, Debug)]
pub enum Witness {
    /// `X -> Y -> X`, keeping the first argument.
    K,
    /// `X -> Y -> Y`, keeping the second argument.
    K2,
    /// `X -> X -> X`, keeping the first argument.
    W1,
    /// `X -> X -> X`, keeping the second argument.
    W2,
    /// `X -> X`.
    Identity,
    /// `~~X -> X`, read off the model's classical principle.
    DoubleNegation,
    /// Soundness of a checked proof of `theory ⊢ formula`.
    FromProof {
        theory: Theory,
        proof: Arc<ObjectProof>,
        formula: Formula,
    },
}

pub const GALLERY: &[&str] = &["K", "K2", "W1", "W2", "I", "DNE"];

impl Witness {
    pub fn by_name(name: &str) -> Result<Witness> {
        match name {
            "K" => Ok(Witness::K),
            "K2" => Ok(Witness::K2),
            "W1" => Ok(Witness::W1),
            "W2" => Ok(Witness::W2),
            "I" => Ok(Witness::Identity),
            "DNE" => Ok(Witness::DoubleNegation),
            other => Err(Error::UnknownWitness(other.to_string())),
        }
    }

    /// Checks `proof` against the theory and wraps its soundness evaluation.
    pub fn from_proof(theory: Theory, proof: ObjectProof) -> Result<Witness> {
        let formula = check(&proof, theory.members())?;
        Ok(Witness::FromProof {
            theory,
            proof: Arc::new(proof),
            formula,
        })
    }

    pub fn name(&self) -> &str {
        match self {
            Witness::K => "K",
            Witness::K2 => "K2",
            Witness::W1 => "W1",
            Witness::W2 => "W2",
            Witness::Identity => "I",
            Witness::DoubleNegation => "DNE",
            Witness::FromProof { .. } => "proof",
        }
    }

    pub fn formula(&self) -> Formula {
        let x = || Formula::prop("X");
        let y = || Formula::prop("Y");
        match self {
            Witness::K => Formula::imp(x(), Formula::imp(y(), x())),
            Witness::K2 => Formula::imp(x(), Formula::imp(y(), y())),
            Witness::W1 | Witness::W2 => Formula::imp(x(), Formula::imp(x(), x())),
            Witness::Identity => Formula::imp(x(), x()),
            Witness::DoubleNegation => Formula::imp(Formula::not(Formula::not(x())), x()),
            Witness::FromProof { formula, .. } => formula.clone(),
        }
    }

    pub fn theory(&self) -> Theory {
        match self {
            Witness::FromProof { theory, .. } => theory.clone(),
            _ => Theory::empty(),
        }
    }

    /// Checks that the witness is about `a`.
    pub fn expect_formula(&self, a: &Formula) -> Result<()> {
        let declared = self.formula();
        if alpha_eq(&declared, a) {
            Ok(())
        } else {
            Err(Error::WitnessMismatch {
                name: self.name().to_string(),
                declared,
                requested: a.clone(),
            })
        }
    }

    pub fn eval<M: Model>(&self, model: &Rc<M>, sigma: &Assignment<M>) -> Result<SemValue<M>> {
        match self {
            Witness::K | Witness::W1 => Ok(SemValue::imp(|x| Ok(SemValue::imp(move |_| Ok(x.clone()))))),
            Witness::K2 | Witness::W2 => Ok(SemValue::imp(|_| Ok(SemValue::imp(Ok)))),
            Witness::Identity => Ok(SemValue::imp(Ok)),
            Witness::DoubleNegation => M::classic(model, &Formula::prop("X"), sigma),
            Witness::FromProof { theory, proof, .. } => {
                let env = (0..theory.len())
                    .map(|i| M::theory_truth(model, i, sigma))
                    .collect::<Result<Vec<_>>>()?;
                soundness_eval(model, proof, theory.members(), &env, sigma)
            }
        }
    }
}
