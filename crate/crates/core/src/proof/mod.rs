//! Natural-deduction proof terms for classical first-order logic and their
//! checker.
//!
//! Hypotheses are de Bruijn indices counted from the right: `Ax(0)` is the
//! most recent hypothesis. Only `AbsImp` binds a hypothesis.

mod derivation;
mod elaborate;
mod pretty;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::parse::FormulaArg;
use crate::syntax::{alpha_eq, fresh_named, show_context, Formula, Term, Var};

pub use derivation::{Derivation, DerivationError, Rule, Sketch};
pub use elaborate::{drinker, efq, henkin_ex, pi1, pi2, subst_hyp, weaken, ElabError, InclStep, InclusionWitness};
pub use pretty::{pretty, render_sketch};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ObjectProof {
    Ax(usize),
    Dn(Arc<ObjectProof>),
    AppImp(Arc<ObjectProof>, Arc<ObjectProof>),
    AppForall(Arc<ObjectProof>, Term),
    AbsImp(Formula, Arc<ObjectProof>),
    AbsForall(Var, Arc<ObjectProof>),
    Pair(Arc<ObjectProof>, Arc<ObjectProof>),
    Proj1(Arc<ObjectProof>),
    Proj2(Arc<ObjectProof>),
    /// `Inj1(B, p)`: from `A` conclude `A \/ B`.
    Inj1(Formula, Arc<ObjectProof>),
    /// `Inj2(A, p)`: from `B` conclude `A \/ B`.
    Inj2(Formula, Arc<ObjectProof>),
    /// From `A \/ B`, `A -> C` and `B -> C` conclude `C`.
    Case(Arc<ObjectProof>, Arc<ObjectProof>, Arc<ObjectProof>),
    /// `ExIntro(t, exists x. A, p)` with `p` proving `A[x <- t]`.
    ExIntro(Term, Formula, Arc<ObjectProof>),
    /// From `exists x. A` and `forall z. (A[x <- z] -> B)` with `z` not free
    /// in `B`, conclude `B`.
    ExElim(Arc<ObjectProof>, Arc<ObjectProof>),
}

use ObjectProof::*;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error("hypothesis index {index} out of scope in a context of length {len}")]
    IndexOutOfScope { index: usize, len: usize },
    #[error("dn expects a double negation, found `{0}`")]
    NotDoubleNegation(Formula),
    #[error("expected an implication, found `{0}`")]
    ExpectedImp(Formula),
    #[error("expected a universal formula, found `{0}`")]
    ExpectedForall(Formula),
    #[error("expected a conjunction, found `{0}`")]
    ExpectedAnd(Formula),
    #[error("expected a disjunction, found `{0}`")]
    ExpectedOr(Formula),
    #[error("expected an existential formula, found `{0}`")]
    ExpectedExists(Formula),
    #[error("argument proves `{found}` but `{expected}` is required")]
    Mismatch { expected: Formula, found: Formula },
    #[error("eigenvariable `{var}` occurs free in the context [{context}]")]
    Eigenvariable { var: Var, context: String },
    #[error("eigenvariable `{var}` occurs free in the conclusion `{conclusion}`")]
    EigenvariableEscapes { var: Var, conclusion: Formula },
}

impl ObjectProof {
    pub fn size(&self) -> usize {
        match self {
            Ax(_) => 1,
            Dn(p)
            | Proj1(p)
            | Proj2(p)
            | AppForall(p, _)
            | AbsImp(_, p)
            | AbsForall(_, p)
            | Inj1(_, p)
            | Inj2(_, p)
            | ExIntro(_, _, p) => 1 + p.size(),
            AppImp(p, q) | Pair(p, q) | ExElim(p, q) => 1 + p.size() + q.size(),
            Case(p, q, r) => 1 + p.size() + q.size() + r.size(),
        }
    }

    /// Every variable occurring in the proof's terms, annotations and binders.
    pub fn vars_into(&self, out: &mut BTreeSet<Var>) {
        match self {
            Ax(_) => {}
            Dn(p) | Proj1(p) | Proj2(p) => p.vars_into(out),
            AppForall(p, t) => {
                t.free_vars_into(out);
                p.vars_into(out);
            }
            AbsImp(a, p) | Inj1(a, p) | Inj2(a, p) => {
                a.all_vars_into(out);
                p.vars_into(out);
            }
            AbsForall(y, p) => {
                out.insert(y.clone());
                p.vars_into(out);
            }
            ExIntro(t, a, p) => {
                t.free_vars_into(out);
                a.all_vars_into(out);
                p.vars_into(out);
            }
            AppImp(p, q) | Pair(p, q) | ExElim(p, q) => {
                p.vars_into(out);
                q.vars_into(out);
            }
            Case(p, q, r) => {
                p.vars_into(out);
                q.vars_into(out);
                r.vars_into(out);
            }
        }
    }

    /// Replaces the term variable `from` by `to` throughout, stopping under
    /// an `AbsForall` that rebinds `from`. `to` must not occur in `self`.
    pub fn rename_var(&self, from: &Var, to: &Var) -> ObjectProof {
        let sigma = crate::syntax::Substitution::single(from.clone(), Term::Var(to.clone()));
        self.subst_vars(from, &sigma)
    }

    fn subst_vars(&self, from: &Var, sigma: &crate::syntax::Substitution) -> ObjectProof {
        let go = |p: &Arc<ObjectProof>| Arc::new(p.subst_vars(from, sigma));
        match self {
            Ax(i) => Ax(*i),
            Dn(p) => Dn(go(p)),
            AppImp(p, q) => AppImp(go(p), go(q)),
            AppForall(p, t) => AppForall(go(p), t.subst(sigma)),
            AbsImp(a, p) => AbsImp(a.subst(sigma), go(p)),
            AbsForall(y, p) if y == from => AbsForall(y.clone(), p.clone()),
            AbsForall(y, p) => AbsForall(y.clone(), go(p)),
            Pair(p, q) => Pair(go(p), go(q)),
            Proj1(p) => Proj1(go(p)),
            Proj2(p) => Proj2(go(p)),
            Inj1(b, p) => Inj1(b.subst(sigma), go(p)),
            Inj2(a, p) => Inj2(a.subst(sigma), go(p)),
            Case(p, q, r) => Case(go(p), go(q), go(r)),
            ExIntro(t, a, p) => ExIntro(t.subst(sigma), a.subst(sigma), go(p)),
            ExElim(p, q) => ExElim(go(p), go(q)),
        }
    }
}

/// Checks `p` in context `ctx` and returns the formula it proves.
pub fn check(p: &ObjectProof, ctx: &[Formula]) -> Result<Formula, CheckError> {
    let mut stack = ctx.to_vec();
    infer(p, &mut stack)
}

/// Conclusion of `AbsForall(y, _)` over a premise proving `body`: pool-1
/// eigenvariables bind themselves, witness variables are replaced by a fresh
/// pool-1 binder.
pub fn generalize(y: &Var, body: &Formula) -> Formula {
    match y {
        Var::Named(_) => Formula::Forall(y.clone(), Arc::new(body.clone())),
        Var::Fresh(_) => {
            let mut taken = BTreeSet::new();
            body.all_vars_into(&mut taken);
            let x = fresh_named(&Var::named("x"), |v| taken.contains(v));
            Formula::Forall(x.clone(), Arc::new(body.instantiate(y, &Term::Var(x))))
        }
    }
}

fn expect_eq(expected: &Formula, found: Formula) -> Result<(), CheckError> {
    if alpha_eq(expected, &found) {
        Ok(())
    } else {
        Err(CheckError::Mismatch {
            expected: expected.clone(),
            found,
        })
    }
}

fn infer(p: &ObjectProof, ctx: &mut Vec<Formula>) -> Result<Formula, CheckError> {
    match p {
        Ax(i) => {
            let len = ctx.len();
            if *i < len {
                Ok(ctx[len - 1 - i].clone())
            } else {
                Err(CheckError::IndexOutOfScope { index: *i, len })
            }
        }
        Dn(q) => {
            let a = infer(q, ctx)?;
            match a.as_double_negation() {
                Some(b) => Ok(b.clone()),
                None => Err(CheckError::NotDoubleNegation(a)),
            }
        }
        AppImp(q, r) => match infer(q, ctx)? {
            Formula::Imp(a, b) => {
                expect_eq(&a, infer(r, ctx)?)?;
                Ok((*b).clone())
            }
            other => Err(CheckError::ExpectedImp(other)),
        },
        AppForall(q, t) => match infer(q, ctx)? {
            Formula::Forall(x, a) => Ok(a.instantiate(&x, t)),
            other => Err(CheckError::ExpectedForall(other)),
        },
        AbsImp(a, q) => {
            ctx.push(a.clone());
            let b = infer(q, ctx);
            ctx.pop();
            Ok(Formula::imp(a.clone(), b?))
        }
        AbsForall(y, q) => {
            if ctx.iter().any(|a| a.has_free(y)) {
                return Err(CheckError::Eigenvariable {
                    var: y.clone(),
                    context: show_context(ctx),
                });
            }
            let body = infer(q, ctx)?;
            Ok(generalize(y, &body))
        }
        Pair(q, r) => Ok(Formula::and(infer(q, ctx)?, infer(r, ctx)?)),
        Proj1(q) => match infer(q, ctx)? {
            Formula::And(a, _) => Ok((*a).clone()),
            other => Err(CheckError::ExpectedAnd(other)),
        },
        Proj2(q) => match infer(q, ctx)? {
            Formula::And(_, b) => Ok((*b).clone()),
            other => Err(CheckError::ExpectedAnd(other)),
        },
        Inj1(b, q) => Ok(Formula::or(infer(q, ctx)?, b.clone())),
        Inj2(a, q) => Ok(Formula::or(a.clone(), infer(q, ctx)?)),
        Case(q, l, r) => match infer(q, ctx)? {
            Formula::Or(a, b) => {
                let (c, left_arg) = match infer(l, ctx)? {
                    Formula::Imp(x, c) => (c, x),
                    other => return Err(CheckError::ExpectedImp(other)),
                };
                expect_eq(&a, (*left_arg).clone())?;
                match infer(r, ctx)? {
                    Formula::Imp(y, c2) => {
                        expect_eq(&b, (*y).clone())?;
                        expect_eq(&c, (*c2).clone())?;
                    }
                    other => return Err(CheckError::ExpectedImp(other)),
                }
                Ok((*c).clone())
            }
            other => Err(CheckError::ExpectedOr(other)),
        },
        ExIntro(t, ex, q) => match ex {
            Formula::Exists(x, a) => {
                expect_eq(&a.instantiate(x, t), infer(q, ctx)?)?;
                Ok(ex.clone())
            }
            other => Err(CheckError::ExpectedExists(other.clone())),
        },
        ExElim(q, r) => {
            let (x, a) = match infer(q, ctx)? {
                Formula::Exists(x, a) => (x, a),
                other => return Err(CheckError::ExpectedExists(other)),
            };
            match infer(r, ctx)? {
                Formula::Forall(z, body) => match &*body {
                    Formula::Imp(d, b) => {
                        let expected = Formula::Forall(x, a);
                        expect_eq(&expected, Formula::Forall(z.clone(), d.clone()))?;
                        if b.has_free(&z) {
                            return Err(CheckError::EigenvariableEscapes {
                                var: z,
                                conclusion: (**b).clone(),
                            });
                        }
                        Ok((**b).clone())
                    }
                    _ => Err(CheckError::ExpectedImp((*body).clone())),
                },
                other => Err(CheckError::ExpectedForall(other)),
            }
        }
    }
}

impl fmt::Display for ObjectProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ax(i) => write!(f, "(ax {i})"),
            Dn(p) => write!(f, "(dn {p})"),
            AppImp(p, q) => write!(f, "(app {p} {q})"),
            AppForall(p, t) => write!(f, "(inst {p} {t})"),
            AbsImp(a, p) => write!(f, "(lam {} {p})", FormulaArg(a)),
            AbsForall(y, p) => write!(f, "(gen {y} {p})"),
            Pair(p, q) => write!(f, "(pair {p} {q})"),
            Proj1(p) => write!(f, "(fst {p})"),
            Proj2(p) => write!(f, "(snd {p})"),
            Inj1(b, p) => write!(f, "(inl {} {p})", FormulaArg(b)),
            Inj2(a, p) => write!(f, "(inr {} {p})", FormulaArg(a)),
            Case(p, q, r) => write!(f, "(case {p} {q} {r})"),
            ExIntro(t, a, p) => write!(f, "(exi {t} {} {p})", FormulaArg(a)),
            ExElim(p, q) => write!(f, "(exe {p} {q})"),
        }
    }
}
