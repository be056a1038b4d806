//! Admissible rules compiled down to primitive proof terms.
//!
//! Each elaborator takes the premise's context explicitly, so it can compute
//! the formulas it needs for annotations without re-checking the premise.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use super::{generalize, ObjectProof};
use crate::syntax::{alpha_eq, fresh_named, Formula, Var};

use ObjectProof::*;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ElabError {
    #[error("premise context does not end with {expected}: [{found}]")]
    Shape { expected: &'static str, found: String },
    #[error("variable `{var}` is not fresh for the premise")]
    NotFresh { var: Var },
    #[error("inclusion witness does not match the contexts: {0}")]
    Witness(String),
}

/// One step of an inclusion derivation, read left to right over the target
/// context: `Keep` is the rule that extends both sides (`L_S`), `Skip` the
/// one that extends only the target (`L_N`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InclStep {
    Keep,
    Skip,
}

/// A derivation of `src ⊂ tgt` as a strictly monotone embedding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct InclusionWitness {
    steps: Vec<InclStep>,
}

impl InclusionWitness {
    /// `ε ⊂ ε`.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn identity(n: usize) -> Self {
        InclusionWitness {
            steps: vec![InclStep::Keep; n],
        }
    }

    pub fn from_steps(steps: Vec<InclStep>) -> Self {
        InclusionWitness { steps }
    }

    /// Extends both sides with the same formula.
    pub fn keep(mut self) -> Self {
        self.steps.push(InclStep::Keep);
        self
    }

    /// Extends only the target.
    pub fn skip(mut self) -> Self {
        self.steps.push(InclStep::Skip);
        self
    }

    pub fn steps(&self) -> &[InclStep] {
        &self.steps
    }

    pub fn source_len(&self) -> usize {
        self.steps.iter().filter(|s| **s == InclStep::Keep).count()
    }

    pub fn target_len(&self) -> usize {
        self.steps.len()
    }

    /// Target position of every source position.
    pub fn positions(&self) -> Vec<usize> {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == InclStep::Keep)
            .map(|(t, _)| t)
            .collect()
    }

    fn validate(&self, src: &[Formula], tgt: &[Formula]) -> Result<Vec<usize>, ElabError> {
        if self.source_len() != src.len() || self.target_len() != tgt.len() {
            return Err(ElabError::Witness(format!(
                "witness {self} relates lengths {}->{}, contexts have {}->{}",
                self.source_len(),
                self.target_len(),
                src.len(),
                tgt.len()
            )));
        }
        let positions = self.positions();
        for (s, t) in positions.iter().enumerate() {
            if !alpha_eq(&src[s], &tgt[*t]) {
                return Err(ElabError::Witness(format!("`{}` is not `{}`", src[s], tgt[*t])));
            }
        }
        Ok(positions)
    }
}

impl fmt::Display for InclusionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in self.steps.iter().rev() {
            f.write_str(match step {
                InclStep::Keep => "LS(",
                InclStep::Skip => "LN(",
            })?;
        }
        f.write_str("L0")?;
        for _ in &self.steps {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn free_vars_of(ctx: &[Formula]) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    for a in ctx {
        a.free_vars_into(&mut out);
    }
    out
}

/// Moves a proof into a larger context: renumbers free hypotheses through
/// `map` and renames eigenvariables that would become free in the target.
struct Relocate<'a> {
    map: &'a dyn Fn(usize) -> usize,
    clash: &'a BTreeSet<Var>,
    taken: BTreeSet<Var>,
}

impl Relocate<'_> {
    fn fresh_like(&mut self, y: &Var) -> Var {
        let v = match y {
            Var::Named(_) => fresh_named(y, |v| self.taken.contains(v)),
            Var::Fresh(_) => {
                let top = self
                    .taken
                    .iter()
                    .filter_map(|v| match v {
                        Var::Fresh(k) => Some(k.clone()),
                        Var::Named(_) => None,
                    })
                    .max()
                    .unwrap_or_default();
                Var::Fresh(top + BigUint::from(1u32))
            }
        };
        self.taken.insert(v.clone());
        v
    }

    fn go(&mut self, p: &ObjectProof, depth: usize) -> ObjectProof {
        let sub = |q: &Arc<ObjectProof>, s: &mut Self| Arc::new(s.go(q, depth));
        match p {
            Ax(i) if *i < depth => Ax(*i),
            Ax(i) => Ax((self.map)(i - depth) + depth),
            Dn(q) => Dn(sub(q, self)),
            AppImp(q, r) => AppImp(sub(q, self), sub(r, self)),
            AppForall(q, t) => AppForall(sub(q, self), t.clone()),
            AbsImp(a, q) => AbsImp(a.clone(), Arc::new(self.go(q, depth + 1))),
            AbsForall(y, q) if self.clash.contains(y) => {
                let y2 = self.fresh_like(y);
                let renamed = q.rename_var(y, &y2);
                AbsForall(y2, Arc::new(self.go(&renamed, depth)))
            }
            AbsForall(y, q) => AbsForall(y.clone(), sub(q, self)),
            Pair(q, r) => Pair(sub(q, self), sub(r, self)),
            Proj1(q) => Proj1(sub(q, self)),
            Proj2(q) => Proj2(sub(q, self)),
            Inj1(b, q) => Inj1(b.clone(), sub(q, self)),
            Inj2(a, q) => Inj2(a.clone(), sub(q, self)),
            Case(q, l, r) => Case(sub(q, self), sub(l, self), sub(r, self)),
            ExIntro(t, a, q) => ExIntro(t.clone(), a.clone(), sub(q, self)),
            ExElim(q, r) => ExElim(sub(q, self), sub(r, self)),
        }
    }
}

fn relocate(p: &ObjectProof, map: &dyn Fn(usize) -> usize, clash: &BTreeSet<Var>) -> ObjectProof {
    let mut taken = clash.clone();
    p.vars_into(&mut taken);
    Relocate { map, clash, taken }.go(p, 0)
}

/// `weak`: transports a proof of `src ⊢ A` to `tgt ⊢ A` along `w`.
pub fn weaken(
    w: &InclusionWitness,
    p: &ObjectProof,
    src: &[Formula],
    tgt: &[Formula],
) -> Result<ObjectProof, ElabError> {
    let positions = w.validate(src, tgt)?;
    let (n, m) = (src.len(), tgt.len());
    let map = move |i: usize| m - 1 - positions[n - 1 - i];
    Ok(relocate(p, &map, &free_vars_of(tgt)))
}

/// Shifts a proof of `ctx ⊢ A` to `ctx, extra ⊢ A`.
fn shift(p: &ObjectProof, extra: &[Formula]) -> ObjectProof {
    let k = extra.len();
    relocate(p, &move |i| i + k, &free_vars_of(extra))
}

/// Cut: from `p : Γ, A ⊢ B` and `q : Γ ⊢ A`, a proof of `Γ ⊢ B`.
pub fn subst_hyp(p: &ObjectProof, q: &ObjectProof) -> ObjectProof {
    fn go(p: &ObjectProof, q: &ObjectProof, depth: usize, locals: &mut Vec<Formula>) -> ObjectProof {
        let sub = |r: &Arc<ObjectProof>, locals: &mut Vec<Formula>| Arc::new(go(r, q, depth, locals));
        match p {
            Ax(i) if *i < depth => Ax(*i),
            Ax(i) if *i == depth => shift(q, locals),
            Ax(i) => Ax(i - 1),
            Dn(r) => Dn(sub(r, locals)),
            AppImp(r, s) => AppImp(sub(r, locals), sub(s, locals)),
            AppForall(r, t) => AppForall(sub(r, locals), t.clone()),
            AbsImp(a, r) => {
                locals.push(a.clone());
                let body = go(r, q, depth + 1, locals);
                locals.pop();
                AbsImp(a.clone(), Arc::new(body))
            }
            AbsForall(y, r) => AbsForall(y.clone(), sub(r, locals)),
            Pair(r, s) => Pair(sub(r, locals), sub(s, locals)),
            Proj1(r) => Proj1(sub(r, locals)),
            Proj2(r) => Proj2(sub(r, locals)),
            Inj1(b, r) => Inj1(b.clone(), sub(r, locals)),
            Inj2(a, r) => Inj2(a.clone(), sub(r, locals)),
            Case(r, l, s) => Case(sub(r, locals), sub(l, locals), sub(s, locals)),
            ExIntro(t, a, r) => ExIntro(t.clone(), a.clone(), sub(r, locals)),
            ExElim(r, s) => ExElim(sub(r, locals), sub(s, locals)),
        }
    }
    go(p, q, 0, &mut Vec::new())
}

/// Ex falso: from `p : Γ ⊢ ⊥`, a proof of `Γ ⊢ A`.
pub fn efq(p: &ObjectProof, a: &Formula) -> ObjectProof {
    let neg = Formula::not(a.clone());
    let body = shift(p, std::slice::from_ref(&neg));
    Dn(Arc::new(AbsImp(neg, Arc::new(body))))
}

fn split_imp(ctx: &[Formula]) -> Result<(&[Formula], Formula, Formula), ElabError> {
    match ctx.split_last() {
        Some((Formula::Imp(a, b), gamma)) => Ok((gamma, (**a).clone(), (**b).clone())),
        _ => Err(ElabError::Shape {
            expected: "an implication",
            found: crate::syntax::show_context(ctx),
        }),
    }
}

/// Inserts `extra` just before the last hypothesis of `ctx`.
fn insert_before_last(p: &ObjectProof, ctx: &[Formula], extra: &Formula) -> Result<ObjectProof, ElabError> {
    let (last, gamma) = ctx.split_last().expect("non-empty context");
    let mut tgt = gamma.to_vec();
    tgt.push(extra.clone());
    tgt.push(last.clone());
    let w = InclusionWitness::from_steps(
        std::iter::repeat_n(InclStep::Keep, gamma.len())
            .chain([InclStep::Skip, InclStep::Keep])
            .collect(),
    );
    weaken(&w, p, ctx, &tgt)
}

/// From `p : Γ, A -> B ⊢ ⊥`, a proof of `Γ ⊢ A`.
pub fn pi1(p: &ObjectProof, ctx: &[Formula]) -> Result<ObjectProof, ElabError> {
    let (_, a, b) = split_imp(ctx)?;
    let neg_a = Formula::not(a.clone());
    let widened = insert_before_last(p, ctx, &neg_a)?;
    // Γ, ~A ⊢ A -> B by λA. efq(~A A)
    let absurd = AppImp(Arc::new(Ax(1)), Arc::new(Ax(0)));
    let imp = AbsImp(a, Arc::new(efq(&absurd, &b)));
    let bot = subst_hyp(&widened, &imp);
    Ok(Dn(Arc::new(AbsImp(neg_a, Arc::new(bot)))))
}

/// From `p : Γ, A -> B ⊢ ⊥`, a proof of `Γ ⊢ ~B`.
pub fn pi2(p: &ObjectProof, ctx: &[Formula]) -> Result<ObjectProof, ElabError> {
    let (_, a, b) = split_imp(ctx)?;
    let widened = insert_before_last(p, ctx, &b)?;
    let imp = AbsImp(a, Arc::new(Ax(1)));
    let bot = subst_hyp(&widened, &imp);
    Ok(AbsImp(b, Arc::new(bot)))
}

/// From `p : Γ, A(y) -> forall x. A(x) ⊢ ⊥` with `y` fresh, a proof of `Γ ⊢ ⊥`.
pub fn drinker(y: &Var, p: &ObjectProof, ctx: &[Formula]) -> Result<ObjectProof, ElabError> {
    let (gamma, instance, all) = split_imp(ctx)?;
    if !matches!(all, Formula::Forall(..)) || !alpha_eq(&generalize(y, &instance), &all) {
        return Err(ElabError::Shape {
            expected: "a Henkin axiom A(y) -> forall x. A(x)",
            found: crate::syntax::show_context(ctx),
        });
    }
    if all.has_free(y) || gamma.iter().any(|a| a.has_free(y)) {
        return Err(ElabError::NotFresh { var: y.clone() });
    }
    let left = pi1(p, ctx)?;
    let right = pi2(p, ctx)?;
    Ok(AppImp(Arc::new(right), Arc::new(AbsForall(y.clone(), Arc::new(left)))))
}

/// From `p : Γ, (exists y. A(y)) -> A(x) ⊢ ⊥` with `x` fresh, a proof of `Γ ⊢ ⊥`.
pub fn henkin_ex(x: &Var, p: &ObjectProof, ctx: &[Formula]) -> Result<ObjectProof, ElabError> {
    let (gamma, ex, instance) = split_imp(ctx)?;
    let shape_ok = match &ex {
        Formula::Exists(y, body) => alpha_eq(&generalize(x, &instance), &Formula::Forall(y.clone(), body.clone())),
        _ => false,
    };
    if !shape_ok {
        return Err(ElabError::Shape {
            expected: "a Henkin axiom (exists y. A(y)) -> A(x)",
            found: crate::syntax::show_context(ctx),
        });
    }
    if ex.has_free(x) || gamma.iter().any(|a| a.has_free(x)) {
        return Err(ElabError::NotFresh { var: x.clone() });
    }
    let exists = pi1(p, ctx)?;
    let refute = pi2(p, ctx)?;
    Ok(ExElim(
        Arc::new(exists),
        Arc::new(AbsForall(x.clone(), Arc::new(refute))),
    ))
}
