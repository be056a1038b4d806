//! The staged Henkin extension of `T0 + ~A0` as data.
//!
//! A member of `S_ω` is a quadruple: a level, a context split into theory
//! members, the `~A0` marker and the formulas added by the enumeration, a
//! derivation that the context is included in `S_level`, and an object
//! proof from the context. The lifted inference rules combine such
//! quadruples; [`Run::flush`] drains a refutation back to `T0, ~A0 ⊢ _|_`.

mod engine;

use std::cell::{Cell, RefCell};
use std::fmt;
use std::rc::Rc;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::coding::{henkin_witness, level_of, Discipline};
use crate::error::{Error, Result};
use crate::proof::{Derivation, InclStep, InclusionWitness};
use crate::semantics::Side;
use crate::syntax::{show_context, Formula, Term, Theory, Var};

pub(crate) use engine::finish;
pub use engine::{classic0, complete, init0, reflect, reify, syntactic_model, Extraction, SyntacticModel, Value};

/// Member indices witnessing `Γ ⊂ T0`, in context order.
pub type JProof = Vec<usize>;

/// `T0, ~A0 ⊢ _|_`: theory members used, their indices, and a refutation of
/// `ctx, ~A0`.
#[derive(Clone, Debug)]
pub struct BotInT {
    pub ctx: Vec<Formula>,
    pub g: JProof,
    pub proof: Derivation,
}

/// A context included in some `S_n`: theory part ascending by member index,
/// marker, added formulas sorted by stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenkinContext {
    pub base: Vec<(usize, Formula)>,
    pub marker: Formula,
    pub added: Vec<(BigUint, Formula)>,
}

/// How the two sides of a union embed into it.
#[derive(Clone, Debug)]
pub struct Union {
    pub ctx: HenkinContext,
    pub left: InclusionWitness,
    pub right: InclusionWitness,
}

/// Merges two ascending theory-member lists into their ascending union,
/// with the embedding of each side.
fn merge_base(g1: &[usize], g2: &[usize]) -> (Vec<usize>, Vec<InclStep>, Vec<InclStep>) {
    debug_assert!(g1.windows(2).all(|w| w[0] < w[1]) && g2.windows(2).all(|w| w[0] < w[1]));
    let mut merged = Vec::with_capacity(g1.len() + g2.len());
    let (mut left, mut right) = (Vec::new(), Vec::new());
    let (mut a, mut b) = (g1.iter().peekable(), g2.iter().peekable());
    loop {
        let (x, l, r) = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(x), Some(y)) if x == y => {
                b.next();
                (*a.next().unwrap(), InclStep::Keep, InclStep::Keep)
            }
            (Some(x), Some(y)) if x < y => (*a.next().unwrap(), InclStep::Keep, InclStep::Skip),
            (Some(_), None) => (*a.next().unwrap(), InclStep::Keep, InclStep::Skip),
            (_, Some(_)) => (*b.next().unwrap(), InclStep::Skip, InclStep::Keep),
        };
        merged.push(x);
        left.push(l);
        right.push(r);
    }
    (merged, left, right)
}

impl HenkinContext {
    pub fn new(marker: Formula) -> Self {
        HenkinContext {
            base: Vec::new(),
            marker,
            added: Vec::new(),
        }
    }

    pub fn flatten(&self) -> Vec<Formula> {
        let mut out: Vec<Formula> = self.base.iter().map(|(_, a)| a.clone()).collect();
        out.push(self.marker.clone());
        out.extend(self.added.iter().map(|(_, a)| a.clone()));
        out
    }

    pub fn indices(&self) -> JProof {
        self.base.iter().map(|(i, _)| *i).collect()
    }

    /// `Γ1 ∪ Γ2` with both inclusion witnesses.
    pub fn union(&self, other: &HenkinContext) -> Union {
        let (indices, mut left, mut right) = merge_base(&self.indices(), &other.indices());
        let lookup = |i: usize| {
            self.base
                .iter()
                .chain(other.base.iter())
                .find(|(j, _)| *j == i)
                .map(|(_, a)| a.clone())
                .expect("merged index comes from one side")
        };
        let base = indices.iter().map(|i| (*i, lookup(*i))).collect();
        left.push(InclStep::Keep);
        right.push(InclStep::Keep);
        let mut added = Vec::with_capacity(self.added.len() + other.added.len());
        let (mut a, mut b) = (self.added.iter().peekable(), other.added.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(x), Some(y)) if x.0 == y.0 => {
                    added.push((*x).clone());
                    left.push(InclStep::Keep);
                    right.push(InclStep::Keep);
                    a.next();
                    b.next();
                }
                (Some(x), Some(y)) if x.0 < y.0 => {
                    added.push((*x).clone());
                    left.push(InclStep::Keep);
                    right.push(InclStep::Skip);
                    a.next();
                }
                (Some(x), None) => {
                    added.push((*x).clone());
                    left.push(InclStep::Keep);
                    right.push(InclStep::Skip);
                    a.next();
                }
                (_, Some(y)) => {
                    added.push((*y).clone());
                    left.push(InclStep::Skip);
                    right.push(InclStep::Keep);
                    b.next();
                }
            }
        }
        Union {
            ctx: HenkinContext {
                base,
                marker: self.marker.clone(),
                added,
            },
            left: InclusionWitness::from_steps(left),
            right: InclusionWitness::from_steps(right),
        }
    }

    /// Whether the added part is strictly ascending by stage.
    pub fn is_sorted(&self) -> bool {
        self.added.windows(2).all(|w| w[0].0 < w[1].0)
    }

    fn push(&self, stage: BigUint, a: Formula) -> HenkinContext {
        let mut out = self.clone();
        out.added.push((stage, a));
        out
    }
}

impl fmt::Display for HenkinContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", show_context(&self.flatten()))
    }
}

/// A relative-consistency proof stored with an added implication: turns a
/// refutation of the context extended by that implication into `T0, ~A0 ⊢ _|_`.
pub type RelConsK = Rc<dyn Fn(Refutation) -> Result<BotInT>>;

/// `S_n, A ⊢ _|_`: the context without `A`, its subset derivation, and a
/// proof whose context is that context followed by `A`.
#[derive(Clone, Debug)]
pub struct Refutation {
    pub ctx: HenkinContext,
    pub subset: SubsetProof,
    pub proof: Derivation,
}

/// A derivation of `Γ ⊂ S_level`.
#[derive(Clone)]
pub struct SubsetProof(Rc<SubsetNode>);

struct SubsetNode {
    level: BigUint,
    kind: SubsetKind,
}

#[derive(Clone)]
pub enum SubsetKind {
    /// `I0`: the theory part, at level 0.
    Base(JProof),
    /// `by` consecutive `I_S` steps.
    Skip { by: BigUint, inner: SubsetProof },
    /// `I_∀`: the Henkin axiom `A(w) -> forall x. A(x)`.
    Forall {
        inner: SubsetProof,
        quantified: Formula,
        witness: Var,
        axiom: Formula,
    },
    /// `I_⊃`: an implication with its relative-consistency proof.
    Imp {
        inner: SubsetProof,
        formula: Formula,
        k: RelConsK,
    },
    /// The existential Henkin axiom `(exists y. A(y)) -> A(w)`.
    Exists {
        inner: SubsetProof,
        quantified: Formula,
        witness: Var,
        axiom: Formula,
    },
}

impl fmt::Debug for SubsetProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SubsetProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            SubsetKind::Base(g) => write!(f, "I0{g:?}"),
            SubsetKind::Skip { by, inner } => write!(f, "IS^{by}({inner})"),
            SubsetKind::Forall { inner, .. } => write!(f, "I∀@{}({inner})", self.level()),
            SubsetKind::Imp { inner, .. } => write!(f, "I⊃@{}({inner})", self.level()),
            SubsetKind::Exists { inner, .. } => write!(f, "I∃@{}({inner})", self.level()),
        }
    }
}

impl SubsetProof {
    fn node(level: BigUint, kind: SubsetKind) -> Self {
        SubsetProof(Rc::new(SubsetNode { level, kind }))
    }

    pub fn base(g: JProof) -> Self {
        Self::node(BigUint::zero(), SubsetKind::Base(g))
    }

    /// `by` lifts of `inner`, merged with an outer run of lifts.
    pub fn skip(by: BigUint, inner: SubsetProof) -> Self {
        if by.is_zero() {
            return inner;
        }
        if let SubsetKind::Skip {
            by: more,
            inner: deeper,
        } = inner.kind()
        {
            return Self::skip(by + more, deeper.clone());
        }
        let level = inner.level() + &by;
        Self::node(level, SubsetKind::Skip { by, inner })
    }

    /// A spine node one level above its inner proof.
    pub fn spine(kind: SubsetKind) -> Result<Self> {
        let level = match &kind {
            SubsetKind::Forall { inner, .. } | SubsetKind::Imp { inner, .. } | SubsetKind::Exists { inner, .. } => {
                inner.level() + 1u32
            }
            SubsetKind::Base(_) | SubsetKind::Skip { .. } => {
                return Err(Error::MalformedSubset("not a spine node".into()));
            }
        };
        Ok(Self::node(level, kind))
    }

    /// `~A0 ⊂ S_n` in constant size.
    pub fn inj(n: BigUint) -> Self {
        Self::skip(n, Self::base(Vec::new()))
    }

    pub fn level(&self) -> &BigUint {
        &self.0.level
    }

    pub fn kind(&self) -> &SubsetKind {
        &self.0.kind
    }

    fn with_inner(&self, inner: SubsetProof) -> SubsetProof {
        let level = inner.level() + 1u32;
        let kind = match self.kind() {
            SubsetKind::Forall {
                quantified,
                witness,
                axiom,
                ..
            } => SubsetKind::Forall {
                inner,
                quantified: quantified.clone(),
                witness: witness.clone(),
                axiom: axiom.clone(),
            },
            SubsetKind::Exists {
                quantified,
                witness,
                axiom,
                ..
            } => SubsetKind::Exists {
                inner,
                quantified: quantified.clone(),
                witness: witness.clone(),
                axiom: axiom.clone(),
            },
            SubsetKind::Imp { formula, k, .. } => SubsetKind::Imp {
                inner,
                formula: formula.clone(),
                k: k.clone(),
            },
            SubsetKind::Base(_) | SubsetKind::Skip { .. } => unreachable!("only spine nodes are rebuilt"),
        };
        Self::node(level, kind)
    }

    /// Removes `n` lifts from the top; the proof must start with that many.
    fn lower(&self, n: &BigUint) -> Result<SubsetProof> {
        match self.kind() {
            SubsetKind::Skip { by, inner } if by >= n => Ok(Self::skip(by - n, inner.clone())),
            _ => Err(Error::MalformedSubset(format!("cannot drop {n} lifts from {self}"))),
        }
    }

    fn inner(&self) -> Option<&SubsetProof> {
        match self.kind() {
            SubsetKind::Base(_) => None,
            SubsetKind::Skip { inner, .. }
            | SubsetKind::Forall { inner, .. }
            | SubsetKind::Imp { inner, .. }
            | SubsetKind::Exists { inner, .. } => Some(inner),
        }
    }

    /// The formula a spine node adds to the context.
    pub fn added_formula(&self) -> Option<&Formula> {
        match self.kind() {
            SubsetKind::Forall { axiom, .. } | SubsetKind::Exists { axiom, .. } => Some(axiom),
            SubsetKind::Imp { formula, .. } => Some(formula),
            _ => None,
        }
    }

    /// Merge of two subset derivations, at the larger level. Where both
    /// sides add the same implication the left continuation is kept.
    pub fn hjoin(&self, other: &SubsetProof) -> Result<SubsetProof> {
        if Rc::ptr_eq(&self.0, &other.0) {
            return Ok(self.clone());
        }
        let (l1, l2) = (self.level(), other.level());
        if l1 > l2 {
            return self.peel_above(other, true);
        }
        if l2 > l1 {
            return other.peel_above(self, false);
        }
        self.join_level(other)
    }

    /// `self` sits strictly above `lower`; `self_left` records which
    /// argument of the join `self` was.
    fn peel_above(&self, lower: &SubsetProof, self_left: bool) -> Result<SubsetProof> {
        let join = |a: &SubsetProof, b: &SubsetProof| if self_left { a.hjoin(b) } else { b.hjoin(a) };
        match self.kind() {
            SubsetKind::Skip { by, inner } => {
                if inner.level() >= lower.level() {
                    Ok(Self::skip(by.clone(), join(inner, lower)?))
                } else {
                    let gap = self.level() - lower.level();
                    let rest = Self::skip(by - &gap, inner.clone());
                    Ok(Self::skip(gap, join(&rest, lower)?))
                }
            }
            SubsetKind::Forall { inner, .. } | SubsetKind::Imp { inner, .. } | SubsetKind::Exists { inner, .. } => {
                Ok(self.with_inner(join(inner, lower)?))
            }
            SubsetKind::Base(_) => unreachable!("level 0 is never strictly above"),
        }
    }

    fn join_level(&self, other: &SubsetProof) -> Result<SubsetProof> {
        use SubsetKind::*;
        let one = BigUint::one();
        match (self.kind(), other.kind()) {
            (Base(g1), Base(g2)) => Ok(Self::base(merge_base(g1, g2).0)),
            (Skip { by: b1, .. }, Skip { by: b2, .. }) => {
                let m = b1.min(b2).clone();
                Ok(Self::skip(m.clone(), self.lower(&m)?.join_level(&other.lower(&m)?)?))
            }
            (Forall { inner: i1, .. }, Forall { inner: i2, .. })
            | (Imp { inner: i1, .. }, Imp { inner: i2, .. })
            | (Exists { inner: i1, .. }, Exists { inner: i2, .. }) => {
                if self.added_formula() != other.added_formula() {
                    return Err(Error::MalformedSubset(format!(
                        "different formulas at stage {}",
                        self.level()
                    )));
                }
                Ok(self.with_inner(i1.join_level(i2)?))
            }
            (Forall { inner, .. } | Imp { inner, .. } | Exists { inner, .. }, Skip { .. }) => {
                Ok(self.with_inner(inner.join_level(&other.lower(&one)?)?))
            }
            (Skip { .. }, Forall { inner, .. } | Imp { inner, .. } | Exists { inner, .. }) => {
                Ok(other.with_inner(self.lower(&one)?.join_level(inner)?))
            }
            _ => Err(Error::MalformedSubset(format!("cannot join {self} with {other}"))),
        }
    }

    /// Checks level bookkeeping and that the spine lists exactly the added
    /// formulas of `ctx`, in order.
    pub fn validate(&self, ctx: &HenkinContext) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedSubset(msg));
        let mut spine = Vec::new();
        let mut node = self;
        loop {
            match node.kind() {
                SubsetKind::Base(g) => {
                    if !node.level().is_zero() {
                        return bad("base above level 0".into());
                    }
                    if *g != ctx.indices() {
                        return bad(format!("base {g:?} against context members {:?}", ctx.indices()));
                    }
                    break;
                }
                SubsetKind::Skip { by, inner } => {
                    if by.is_zero() || *node.level() != inner.level() + by {
                        return bad(format!("bad lift at {node}"));
                    }
                }
                _ => {
                    let inner = node.inner().expect("spine node has an inner proof");
                    if *node.level() != inner.level() + 1u32 {
                        return bad(format!("bad stage at {node}"));
                    }
                    spine.push((node.level().clone(), node.added_formula().cloned().expect("spine node")));
                }
            }
            node = node.inner().expect("non-base node has an inner proof");
        }
        spine.reverse();
        if spine != ctx.added {
            return bad("spine does not match the added formulas".into());
        }
        Ok(())
    }
}

/// `A ∈ S_ω`.
#[derive(Clone, Debug)]
pub struct SOmegaMember {
    pub ctx: HenkinContext,
    pub subset: SubsetProof,
    pub proof: Derivation,
}

impl SOmegaMember {
    pub fn level(&self) -> &BigUint {
        self.subset.level()
    }

    pub fn formula(&self) -> &Formula {
        self.proof.conclusion()
    }
}

/// Two members moved into a common context.
pub struct Shared {
    pub ctx: HenkinContext,
    pub subset: SubsetProof,
    pub proofs: Vec<Derivation>,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub trace: bool,
    pub max_replays: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            trace: false,
            max_replays: 1024,
        }
    }
}

/// State of one extraction: the theory, the goal `A0`, the enumeration
/// discipline, the event trace and the replay budget.
pub struct Run {
    pub theory: Theory,
    pub goal: Formula,
    pub marker: Formula,
    pub discipline: Discipline,
    options: Options,
    trace: RefCell<Vec<String>>,
    replays: Cell<usize>,
    demands: RefCell<Vec<String>>,
    next_handler: Cell<u64>,
}

impl Run {
    pub fn new(theory: Theory, goal: Formula, discipline: Discipline, options: Options) -> Rc<Run> {
        Rc::new(Run {
            theory,
            marker: Formula::not(goal.clone()),
            goal,
            discipline,
            options,
            trace: RefCell::new(Vec::new()),
            replays: Cell::new(0),
            demands: RefCell::new(Vec::new()),
            next_handler: Cell::new(0),
        })
    }

    pub fn event(&self, line: impl FnOnce() -> String) {
        if self.options.trace {
            self.trace.borrow_mut().push(line());
        }
    }

    pub fn trace(&self) -> Vec<String> {
        self.trace.borrow().clone()
    }

    pub fn replays(&self) -> usize {
        self.replays.get()
    }

    pub(crate) fn fresh_handler(&self) -> u64 {
        let id = self.next_handler.get();
        self.next_handler.set(id + 1);
        id
    }

    /// Counts one replay, failing once the budget is spent.
    pub(crate) fn count_replay(&self, demand: String) -> Result<()> {
        let n = self.replays.get() + 1;
        self.replays.set(n);
        self.demands.borrow_mut().push(demand);
        self.event(|| format!("REPLAY {n}"));
        if n > self.options.max_replays {
            return Err(Error::ReplayBound {
                bound: self.options.max_replays,
                trace: self.demands.borrow().clone(),
            });
        }
        Ok(())
    }

    fn empty_context(&self) -> HenkinContext {
        HenkinContext::new(self.marker.clone())
    }

    fn member(&self, ctx: HenkinContext, subset: SubsetProof, proof: Derivation) -> SOmegaMember {
        debug_assert_eq!(proof.context().len(), ctx.flatten().len());
        SOmegaMember { ctx, subset, proof }
    }

    /// The stage at which a quantified or implicational formula is added.
    fn stage(&self, head: &Formula) -> Result<BigUint> {
        Ok(level_of(head, self.discipline)?.value + 1u32)
    }

    /// `AX⁰`: `~A0 ∈ S_ω` at level 0.
    pub fn ax0(&self) -> Result<SOmegaMember> {
        let ctx = self.empty_context();
        let proof = Derivation::ax(ctx.flatten().into(), 0)?;
        Ok(self.member(ctx, SubsetProof::base(Vec::new()), proof))
    }

    /// `BOT`: a refutation from the theory as a member at level 0.
    pub fn bot(&self, b: BotInT) -> SOmegaMember {
        let ctx = HenkinContext {
            base: b.g.iter().copied().zip(b.ctx.iter().cloned()).collect(),
            marker: self.marker.clone(),
            added: Vec::new(),
        };
        self.member(ctx, SubsetProof::base(b.g), b.proof)
    }

    /// `DNABS`: discharges `~A0` and eliminates the double negation.
    pub fn dnabs(&self, b: BotInT) -> Result<Extraction> {
        let proof = b.proof.abs_imp()?.dn()?;
        Ok(Extraction {
            ctx: b.ctx,
            g: b.g,
            proof,
            trace: Vec::new(),
            replays: 0,
        })
    }

    fn axiom_member(
        &self,
        stage: BigUint,
        axiom: Formula,
        node: impl FnOnce(SubsetProof) -> SubsetKind,
    ) -> Result<SOmegaMember> {
        let inner = SubsetProof::inj(&stage - 1u32);
        let subset = SubsetProof::node(stage.clone(), node(inner));
        let ctx = self.empty_context().push(stage, axiom);
        let proof = Derivation::ax(ctx.flatten().into(), 0)?;
        Ok(self.member(ctx, subset, proof))
    }

    /// `AX_{forall x. A}`: the Henkin axiom `A(w) -> forall x. A`.
    pub fn ax_forall(&self, quantified: &Formula) -> Result<SOmegaMember> {
        let (x, body) = match quantified {
            Formula::Forall(x, body) => (x, body),
            other => return Err(crate::semantics::shape(other, "a universal formula")),
        };
        let witness = henkin_witness(quantified);
        let axiom = Formula::imp(body.instantiate(x, &Term::Var(witness.clone())), quantified.clone());
        let stage = self.stage(quantified)?;
        let quantified = quantified.clone();
        self.axiom_member(stage, axiom.clone(), |inner| SubsetKind::Forall {
            inner,
            quantified,
            witness,
            axiom,
        })
    }

    /// `AX_{exists y. A}`: the Henkin axiom `(exists y. A) -> A(w)`.
    pub fn ax_exists(&self, quantified: &Formula) -> Result<SOmegaMember> {
        let (y, body) = match quantified {
            Formula::Exists(y, body) => (y, body),
            other => return Err(crate::semantics::shape(other, "an existential formula")),
        };
        let witness = henkin_witness(quantified);
        let axiom = Formula::imp(quantified.clone(), body.instantiate(y, &Term::Var(witness.clone())));
        let stage = self.stage(quantified)?;
        let quantified = quantified.clone();
        self.axiom_member(stage, axiom.clone(), |inner| SubsetKind::Exists {
            inner,
            quantified,
            witness,
            axiom,
        })
    }

    /// `AX_{A -> B}`: adds the implication with its relative-consistency proof.
    pub fn ax_imp(&self, formula: &Formula, k: RelConsK) -> Result<SOmegaMember> {
        if !matches!(formula, Formula::Imp(..)) {
            return Err(crate::semantics::shape(formula, "an implication"));
        }
        let stage = self.stage(formula)?;
        let formula = formula.clone();
        self.axiom_member(stage, formula.clone(), |inner| SubsetKind::Imp { inner, formula, k })
    }

    /// Moves members into the union of their contexts.
    pub fn share(&self, qs: &[&SOmegaMember]) -> Result<Shared> {
        let (first, rest) = qs.split_first().expect("share needs at least one member");
        let mut ctx = first.ctx.clone();
        let mut subset = first.subset.clone();
        let mut proofs = vec![first.proof.clone()];
        for q in rest {
            let u = ctx.union(&q.ctx);
            subset = subset.hjoin(&q.subset)?;
            let target: Arc<[Formula]> = u.ctx.flatten().into();
            for p in proofs.iter_mut() {
                *p = p.weaken(&u.left, target.clone())?;
            }
            proofs.push(q.proof.weaken(&u.right, target)?);
            ctx = u.ctx;
        }
        self.event(|| format!("SHARE level {} {}", subset.level(), ctx));
        Ok(Shared { ctx, subset, proofs })
    }

    fn shared_member(&self, s: Shared, proof: Derivation) -> SOmegaMember {
        self.member(s.ctx, s.subset, proof)
    }

    /// `APP⊃`.
    pub fn app_imp(&self, q: &SOmegaMember, arg: &SOmegaMember) -> Result<SOmegaMember> {
        let s = self.share(&[q, arg])?;
        let proof = s.proofs[0].app_imp(&s.proofs[1])?;
        Ok(self.shared_member(s, proof))
    }

    /// `APP∀`.
    pub fn app_forall(&self, q: &SOmegaMember, t: &Term) -> Result<SOmegaMember> {
        Ok(self.member(q.ctx.clone(), q.subset.clone(), q.proof.inst(t)?))
    }

    /// `DN`.
    pub fn dn(&self, q: &SOmegaMember) -> Result<SOmegaMember> {
        Ok(self.member(q.ctx.clone(), q.subset.clone(), q.proof.dn()?))
    }

    /// `π1` over a refutation of `S, A -> B`.
    pub fn pi1(&self, r: &Refutation) -> Result<SOmegaMember> {
        Ok(self.member(r.ctx.clone(), r.subset.clone(), r.proof.pi1()?))
    }

    /// `π2` over a refutation of `S, A -> B`.
    pub fn pi2(&self, r: &Refutation) -> Result<SOmegaMember> {
        Ok(self.member(r.ctx.clone(), r.subset.clone(), r.proof.pi2()?))
    }

    pub fn pair(&self, q1: &SOmegaMember, q2: &SOmegaMember) -> Result<SOmegaMember> {
        let s = self.share(&[q1, q2])?;
        let proof = s.proofs[0].pair(&s.proofs[1])?;
        Ok(self.shared_member(s, proof))
    }

    pub fn proj(&self, side: Side, q: &SOmegaMember) -> Result<SOmegaMember> {
        let proof = q.proof.proj(side == Side::Right)?;
        Ok(self.member(q.ctx.clone(), q.subset.clone(), proof))
    }

    /// `INJ_i`: `other` is the disjunct not proved by `q`.
    pub fn inj(&self, side: Side, q: &SOmegaMember, other: &Formula) -> SOmegaMember {
        let proof = q.proof.inj(side == Side::Right, other);
        self.member(q.ctx.clone(), q.subset.clone(), proof)
    }

    /// `CASE`, aligning the three contexts first.
    pub fn case(&self, q: &SOmegaMember, left: &SOmegaMember, right: &SOmegaMember) -> Result<SOmegaMember> {
        let s = self.share(&[q, left, right])?;
        let proof = s.proofs[0].case(&s.proofs[1], &s.proofs[2])?;
        Ok(self.shared_member(s, proof))
    }

    pub fn exi(&self, t: &Term, ex: &Formula, q: &SOmegaMember) -> Result<SOmegaMember> {
        let proof = q.proof.ex_intro(t, ex)?;
        Ok(self.member(q.ctx.clone(), q.subset.clone(), proof))
    }

    /// Drains a refutation in `S_ω` to one from the theory and `~A0`.
    pub fn flush(&self, q: SOmegaMember) -> Result<BotInT> {
        let SOmegaMember {
            mut ctx,
            mut subset,
            mut proof,
        } = q;
        loop {
            let next = match subset.kind() {
                SubsetKind::Base(g) => {
                    if !ctx.added.is_empty() || *g != ctx.indices() {
                        return Err(Error::MalformedSubset(format!("base reached with context {ctx}")));
                    }
                    self.event(|| format!("FLUSH/I0 {}", ctx));
                    let ctx_formulas = ctx.base.iter().map(|(_, a)| a.clone()).collect();
                    return Ok(BotInT {
                        ctx: ctx_formulas,
                        g: g.clone(),
                        proof,
                    });
                }
                SubsetKind::Skip { inner, .. } => inner.clone(),
                SubsetKind::Forall {
                    inner,
                    quantified,
                    witness,
                    axiom,
                } => {
                    self.pop_head(&mut ctx, axiom)?;
                    let clash = ctx.flatten().iter().any(|a| a.has_free(witness)) || quantified.has_free(witness);
                    assert!(!clash, "witness {witness} is not fresh when flushing {axiom}");
                    self.event(|| format!("FLUSH/I∀ drinker {witness} on {axiom}"));
                    proof = proof.drinker(witness)?;
                    inner.clone()
                }
                SubsetKind::Exists {
                    inner,
                    quantified,
                    witness,
                    axiom,
                } => {
                    self.pop_head(&mut ctx, axiom)?;
                    let clash = ctx.flatten().iter().any(|a| a.has_free(witness)) || quantified.has_free(witness);
                    assert!(!clash, "witness {witness} is not fresh when flushing {axiom}");
                    self.event(|| format!("FLUSH/I∃ henkin-ex {witness} on {axiom}"));
                    proof = proof.henkin_ex(witness)?;
                    inner.clone()
                }
                SubsetKind::Imp { inner, formula, k } => {
                    self.pop_head(&mut ctx, formula)?;
                    self.event(|| format!("FLUSH/I⊃→k {formula}"));
                    return k(Refutation {
                        ctx,
                        subset: inner.clone(),
                        proof,
                    });
                }
            };
            subset = next;
        }
    }

    fn pop_head(&self, ctx: &mut HenkinContext, expected: &Formula) -> Result<()> {
        match ctx.added.pop() {
            Some((_, a)) if a == *expected => Ok(()),
            other => Err(Error::MalformedSubset(format!(
                "expected `{expected}` on top of the context, found {:?}",
                other.map(|(_, a)| a.to_string())
            ))),
        }
    }
}
