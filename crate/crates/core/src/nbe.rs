//! Normalization by evaluation for minimal implicational logic.
//!
//! Proofs are evaluated into a Kripke model by soundness; in the universal
//! model, whose worlds are contexts ordered by inclusion, reification reads
//! the value back as a β-normal, η-long proof.

use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::proof::ObjectProof;
use crate::syntax::{show_context, Formula};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MinFormula {
    /// An atomic formula; `_|_` counts as one.
    Atom(Formula),
    Imp(Rc<MinFormula>, Rc<MinFormula>),
}

impl MinFormula {
    pub fn atom(name: &str) -> Self {
        MinFormula::Atom(Formula::prop(name))
    }

    pub fn imp(a: MinFormula, b: MinFormula) -> Self {
        MinFormula::Imp(Rc::new(a), Rc::new(b))
    }

    pub fn to_formula(&self) -> Formula {
        match self {
            MinFormula::Atom(a) => a.clone(),
            MinFormula::Imp(a, b) => Formula::imp(a.to_formula(), b.to_formula()),
        }
    }

    pub fn from_formula(a: &Formula) -> Result<Self, MinError> {
        match a {
            Formula::Atom(..) | Formula::Bot => Ok(MinFormula::Atom(a.clone())),
            Formula::Imp(l, r) => Ok(MinFormula::imp(Self::from_formula(l)?, Self::from_formula(r)?)),
            other => Err(MinError::NotMinimal(other.to_string())),
        }
    }
}

impl fmt::Display for MinFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MinProof {
    Ax(usize),
    App(Rc<MinProof>, Rc<MinProof>),
    Abs(MinFormula, Rc<MinProof>),
}

impl MinProof {
    pub fn app(p: MinProof, q: MinProof) -> Self {
        MinProof::App(Rc::new(p), Rc::new(q))
    }

    pub fn abs(a: MinFormula, p: MinProof) -> Self {
        MinProof::Abs(a, Rc::new(p))
    }

    pub fn size(&self) -> usize {
        match self {
            MinProof::Ax(_) => 1,
            MinProof::App(p, q) => 1 + p.size() + q.size(),
            MinProof::Abs(_, p) => 1 + p.size(),
        }
    }

    pub fn to_object(&self) -> ObjectProof {
        use std::sync::Arc;
        match self {
            MinProof::Ax(i) => ObjectProof::Ax(*i),
            MinProof::App(p, q) => ObjectProof::AppImp(Arc::new(p.to_object()), Arc::new(q.to_object())),
            MinProof::Abs(a, p) => ObjectProof::AbsImp(a.to_formula(), Arc::new(p.to_object())),
        }
    }

    pub fn from_object(p: &ObjectProof) -> Result<Self, MinError> {
        match p {
            ObjectProof::Ax(i) => Ok(MinProof::Ax(*i)),
            ObjectProof::AppImp(p, q) => Ok(MinProof::app(Self::from_object(p)?, Self::from_object(q)?)),
            ObjectProof::AbsImp(a, p) => Ok(MinProof::abs(MinFormula::from_formula(a)?, Self::from_object(p)?)),
            other => Err(MinError::NotMinimal(other.to_string())),
        }
    }

    /// Renames free hypotheses: index `i` at binder depth `d` becomes
    /// `f(i - d) + d`.
    pub fn rename(&self, f: &dyn Fn(usize) -> usize) -> MinProof {
        fn go(p: &MinProof, depth: usize, f: &dyn Fn(usize) -> usize) -> MinProof {
            match p {
                MinProof::Ax(i) if *i < depth => MinProof::Ax(*i),
                MinProof::Ax(i) => MinProof::Ax(f(i - depth) + depth),
                MinProof::App(p, q) => MinProof::app(go(p, depth, f), go(q, depth, f)),
                MinProof::Abs(a, p) => MinProof::abs(a.clone(), go(p, depth + 1, f)),
            }
        }
        go(self, 0, f)
    }
}

impl fmt::Display for MinProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_object())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MinError {
    #[error("hypothesis {index} out of scope in a context of length {len}")]
    OutOfScope { index: usize, len: usize },
    #[error("cannot apply `{fun}` to `{arg}`")]
    Mismatch { fun: String, arg: String },
    #[error("`{0}` is outside minimal implicational logic")]
    NotMinimal(String),
}

/// The three rules of minimal implicational logic.
pub fn check_min(p: &MinProof, ctx: &[MinFormula]) -> Result<MinFormula, MinError> {
    match p {
        MinProof::Ax(i) => ctx
            .len()
            .checked_sub(i + 1)
            .map(|j| ctx[j].clone())
            .ok_or(MinError::OutOfScope {
                index: *i,
                len: ctx.len(),
            }),
        MinProof::App(p, q) => {
            let fun = check_min(p, ctx)?;
            let arg = check_min(q, ctx)?;
            match &fun {
                MinFormula::Imp(a, b) if **a == arg => Ok((**b).clone()),
                _ => Err(MinError::Mismatch {
                    fun: fun.to_string(),
                    arg: arg.to_string(),
                }),
            }
        }
        MinProof::Abs(a, p) => {
            let mut inner = ctx.to_vec();
            inner.push(a.clone());
            Ok(MinFormula::imp(a.clone(), check_min(p, &inner)?))
        }
    }
}

/// A Kripke model: a preorder of worlds with proof-relevant `≤` and
/// monotone atom forcing.
pub trait KripkeModel: 'static {
    type World: Clone + 'static;
    type Le: Clone + 'static;
    type AtomEv: Clone + 'static;

    fn refl(&self, w: &Self::World) -> Self::Le;
    fn trans(&self, h1: &Self::Le, h2: &Self::Le) -> Self::Le;
    fn mono_atom(
        &self,
        atom: &Formula,
        w: &Self::World,
        w2: &Self::World,
        h: &Self::Le,
        m: &Self::AtomEv,
    ) -> Self::AtomEv;
}

pub type ForceFn<M> = Rc<dyn Fn(<M as KripkeModel>::World, <M as KripkeModel>::Le, KripkeValue<M>) -> KripkeValue<M>>;

/// Forcing evidence.
pub enum KripkeValue<M: KripkeModel> {
    AtomF(M::AtomEv),
    FunF(ForceFn<M>),
}

impl<M: KripkeModel> Clone for KripkeValue<M> {
    fn clone(&self) -> Self {
        match self {
            KripkeValue::AtomF(a) => KripkeValue::AtomF(a.clone()),
            KripkeValue::FunF(f) => KripkeValue::FunF(f.clone()),
        }
    }
}

impl<M: KripkeModel> KripkeValue<M> {
    fn call(&self, w: M::World, h: M::Le, arg: KripkeValue<M>) -> KripkeValue<M> {
        match self {
            KripkeValue::FunF(f) => f(w, h, arg),
            KripkeValue::AtomF(_) => panic!("forcing evidence does not fit an implication"),
        }
    }
}

/// Monotonicity of forcing along `h : w ≤ w2`.
pub fn mono_lift<M: KripkeModel>(
    model: &Rc<M>,
    a: &MinFormula,
    w: &M::World,
    w2: &M::World,
    h: &M::Le,
    m: &KripkeValue<M>,
) -> KripkeValue<M> {
    match (a, m) {
        (MinFormula::Atom(x), KripkeValue::AtomF(ev)) => KripkeValue::AtomF(model.mono_atom(x, w, w2, h, ev)),
        (MinFormula::Imp(..), KripkeValue::FunF(f)) => {
            let (model, h, f) = (model.clone(), h.clone(), f.clone());
            KripkeValue::FunF(Rc::new(move |w3, h2, arg| f(w3, model.trans(&h, &h2), arg)))
        }
        _ => panic!("forcing evidence does not fit `{a}`"),
    }
}

/// Soundness: evaluates a proof of `ctx ⊢ A` at `w` under forcing
/// evidence for `ctx`.
pub fn soundness_min<M: KripkeModel>(
    model: &Rc<M>,
    p: &MinProof,
    ctx: &[MinFormula],
    w: &M::World,
    env: &[KripkeValue<M>],
) -> KripkeValue<M> {
    match p {
        MinProof::Ax(i) => env[env.len() - 1 - i].clone(),
        MinProof::App(p, q) => {
            let f = soundness_min(model, p, ctx, w, env);
            f.call(w.clone(), model.refl(w), soundness_min(model, q, ctx, w, env))
        }
        MinProof::Abs(a, body) => {
            let (model, body, ctx, w, env, a) = (
                model.clone(),
                body.clone(),
                ctx.to_vec(),
                w.clone(),
                env.to_vec(),
                a.clone(),
            );
            KripkeValue::FunF(Rc::new(move |w2, h, m| {
                let mut lifted: Vec<KripkeValue<M>> = ctx
                    .iter()
                    .zip(&env)
                    .map(|(b, v)| mono_lift(&model, b, &w, &w2, &h, v))
                    .collect();
                lifted.push(m);
                let mut inner = ctx.clone();
                inner.push(a.clone());
                soundness_min(&model, &body, &inner, &w2, &lifted)
            }))
        }
    }
}

/// The universal model: contexts, inclusions as monotone embeddings, atoms
/// forced by normal proofs.
pub struct UniversalModel;

/// `Γ ≤ Δ`: position `j` of `Γ` sits at position `embed[j]` of `Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub embed: Rc<Vec<usize>>,
    pub target_len: usize,
}

impl Embedding {
    pub fn identity(n: usize) -> Self {
        Embedding {
            embed: Rc::new((0..n).collect()),
            target_len: n,
        }
    }

    /// `Γ ≤ Γ, A`.
    pub fn extend(n: usize) -> Self {
        Embedding {
            embed: Rc::new((0..n).collect()),
            target_len: n + 1,
        }
    }

    /// Moves a proof over the source context to the target context.
    pub fn apply(&self, p: &MinProof) -> MinProof {
        let n = self.embed.len();
        p.rename(&|i| self.target_len - 1 - self.embed[n - 1 - i])
    }
}

pub type World = Rc<Vec<MinFormula>>;

impl KripkeModel for UniversalModel {
    type World = World;
    type Le = Embedding;
    type AtomEv = MinProof;

    fn refl(&self, w: &World) -> Embedding {
        Embedding::identity(w.len())
    }

    fn trans(&self, h1: &Embedding, h2: &Embedding) -> Embedding {
        Embedding {
            embed: Rc::new(h1.embed.iter().map(|j| h2.embed[*j]).collect()),
            target_len: h2.target_len,
        }
    }

    fn mono_atom(&self, _: &Formula, _: &World, _: &World, h: &Embedding, m: &MinProof) -> MinProof {
        h.apply(m)
    }
}

/// `↓`: forcing evidence in the universal model to a normal proof.
pub fn reify_min(model: &Rc<UniversalModel>, ctx: &World, a: &MinFormula, m: &KripkeValue<UniversalModel>) -> MinProof {
    match (a, m) {
        (MinFormula::Atom(_), KripkeValue::AtomF(p)) => p.clone(),
        (MinFormula::Imp(lhs, rhs), KripkeValue::FunF(f)) => {
            let mut extended = (**ctx).clone();
            extended.push((**lhs).clone());
            let extended = Rc::new(extended);
            let hyp = reflect_min(model, &extended, lhs, MinProof::Ax(0));
            let body = f(extended.clone(), Embedding::extend(ctx.len()), hyp);
            MinProof::abs((**lhs).clone(), reify_min(model, &extended, rhs, &body))
        }
        _ => panic!("forcing evidence does not fit `{a}`"),
    }
}

/// `↑`: a neutral proof to forcing evidence.
pub fn reflect_min(
    model: &Rc<UniversalModel>,
    _ctx: &World,
    a: &MinFormula,
    p: MinProof,
) -> KripkeValue<UniversalModel> {
    match a {
        MinFormula::Atom(_) => KripkeValue::AtomF(p),
        MinFormula::Imp(lhs, rhs) => {
            let (model, lhs, rhs) = (model.clone(), lhs.clone(), rhs.clone());
            KripkeValue::FunF(Rc::new(move |w2: World, h: Embedding, m| {
                let arg = reify_min(&model, &w2, &lhs, &m);
                reflect_min(&model, &w2, &rhs, MinProof::app(h.apply(&p), arg))
            }))
        }
    }
}

/// Forcing evidence for each hypothesis of `ctx`, at `ctx` itself.
pub fn init_min(model: &Rc<UniversalModel>, ctx: &World) -> Vec<KripkeValue<UniversalModel>> {
    let n = ctx.len();
    ctx.iter()
        .enumerate()
        .map(|(j, a)| reflect_min(model, ctx, a, MinProof::Ax(n - 1 - j)))
        .collect()
}

/// `reify ∘ soundness` in the universal model.
pub fn normalize(p: &MinProof, ctx: &[MinFormula]) -> Result<MinProof, MinError> {
    let a = check_min(p, ctx)?;
    let model = Rc::new(UniversalModel);
    let world: World = Rc::new(ctx.to_vec());
    let env = init_min(&model, &world);
    let value = soundness_min(&model, p, ctx, &world, &env);
    Ok(reify_min(&model, &world, &a, &value))
}

/// β-normal and η-long: abstractions exactly at implications, and every
/// other subterm a hypothesis applied to normal arguments at atomic type.
pub fn is_normal(p: &MinProof, ctx: &[MinFormula]) -> bool {
    fn spine<'a>(p: &'a MinProof, args: &mut Vec<&'a MinProof>) -> Option<usize> {
        match p {
            MinProof::Ax(i) => Some(*i),
            MinProof::App(f, a) => {
                let head = spine(f, args)?;
                args.push(a);
                Some(head)
            }
            MinProof::Abs(..) => None,
        }
    }
    fn at(p: &MinProof, ctx: &mut Vec<MinFormula>, a: &MinFormula) -> bool {
        match a {
            MinFormula::Imp(lhs, rhs) => match p {
                MinProof::Abs(b, body) if b == &**lhs => {
                    ctx.push(b.clone());
                    let ok = at(body, ctx, rhs);
                    ctx.pop();
                    ok
                }
                _ => false,
            },
            MinFormula::Atom(_) => {
                let mut args = Vec::new();
                let Some(head) = spine(p, &mut args) else {
                    return false;
                };
                let Some(j) = ctx.len().checked_sub(head + 1) else {
                    return false;
                };
                let mut ty = ctx[j].clone();
                for arg in args {
                    let MinFormula::Imp(lhs, rhs) = ty else {
                        return false;
                    };
                    if !at(arg, ctx, &lhs) {
                        return false;
                    }
                    ty = (*rhs).clone();
                }
                ty == *a
            }
        }
    }
    match check_min(p, ctx) {
        Ok(a) => at(p, &mut ctx.to_vec(), &a),
        Err(_) => false,
    }
}

/// Renders a sequent for reports.
pub fn show_sequent(ctx: &[MinFormula], a: &MinFormula) -> String {
    let ctx: Vec<Formula> = ctx.iter().map(MinFormula::to_formula).collect();
    if ctx.is_empty() {
        format!("|- {a}")
    } else {
        format!("{} |- {a}", show_context(&ctx))
    }
}
