//! Proofs paired with a derived-rule outline.
//!
//! A [`Derivation`] carries the primitive proof term together with a
//! [`Sketch`]: the same derivation seen at the level of the admissible rules
//! (`pi1->`, `pi2->`, `efq`, `drinker`, ...). Weakening is invisible in the
//! sketch, so a premise keeps the context it was derived in.

use std::fmt;
use std::sync::Arc;

use super::{check, CheckError, ElabError, InclusionWitness, ObjectProof};
use crate::syntax::{alpha_eq, Formula, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Ax(usize),
    Dn,
    AppImp,
    Inst(Term),
    AbsImp,
    Gen(Var),
    Pair,
    Fst,
    Snd,
    Inl,
    Inr,
    Case,
    ExIntro(Term),
    ExElim,
    Pi1,
    Pi2,
    Efq,
    Drinker(Var),
    HenkinEx(Var),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Ax(_) => f.write_str("ax"),
            Rule::Dn => f.write_str("dn"),
            Rule::AppImp => f.write_str("app->"),
            Rule::Inst(t) => write!(f, "inst {t}"),
            Rule::AbsImp => f.write_str("abs->"),
            Rule::Gen(y) => write!(f, "gen {y}"),
            Rule::Pair => f.write_str("pair"),
            Rule::Fst => f.write_str("fst"),
            Rule::Snd => f.write_str("snd"),
            Rule::Inl => f.write_str("inl"),
            Rule::Inr => f.write_str("inr"),
            Rule::Case => f.write_str("case"),
            Rule::ExIntro(t) => write!(f, "exi {t}"),
            Rule::ExElim => f.write_str("exe"),
            Rule::Pi1 => f.write_str("pi1->"),
            Rule::Pi2 => f.write_str("pi2->"),
            Rule::Efq => f.write_str("efq"),
            Rule::Drinker(y) => write!(f, "drinker {y}"),
            Rule::HenkinEx(x) => write!(f, "henkin-ex {x}"),
        }
    }
}

/// One node of a derived-rule outline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sketch {
    pub rule: Rule,
    pub context: Arc<[Formula]>,
    pub conclusion: Formula,
    pub premises: Vec<Arc<Sketch>>,
}

impl Sketch {
    /// Structural equality up to α-renaming of formulas.
    pub fn same_shape(&self, other: &Sketch) -> bool {
        self.rule == other.rule
            && alpha_eq(&self.conclusion, &other.conclusion)
            && self.context.len() == other.context.len()
            && self
                .context
                .iter()
                .zip(other.context.iter())
                .all(|(a, b)| alpha_eq(a, b))
            && self.premises.len() == other.premises.len()
            && self
                .premises
                .iter()
                .zip(other.premises.iter())
                .all(|(a, b)| a.same_shape(b))
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(|p| p.node_count()).sum::<usize>()
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum DerivationError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Elab(#[from] ElabError),
    #[error("{0}")]
    Shape(String),
}

/// A checked proof of `context ⊢ conclusion` with its outline.
#[derive(Clone, Debug)]
pub struct Derivation {
    proof: Arc<ObjectProof>,
    context: Arc<[Formula]>,
    conclusion: Formula,
    sketch: Arc<Sketch>,
}

fn same_context(a: &[Formula], b: &[Formula]) -> bool {
    a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| alpha_eq(x, y))
}

fn shape(msg: String) -> DerivationError {
    DerivationError::Shape(msg)
}

impl Derivation {
    pub fn proof(&self) -> &ObjectProof {
        &self.proof
    }

    pub fn proof_arc(&self) -> Arc<ObjectProof> {
        self.proof.clone()
    }

    pub fn context(&self) -> &[Formula] {
        &self.context
    }

    pub fn conclusion(&self) -> &Formula {
        &self.conclusion
    }

    pub fn sketch(&self) -> &Arc<Sketch> {
        &self.sketch
    }

    fn node(
        proof: ObjectProof,
        context: Arc<[Formula]>,
        conclusion: Formula,
        rule: Rule,
        premises: Vec<Arc<Sketch>>,
    ) -> Self {
        let sketch = Arc::new(Sketch {
            rule,
            context: context.clone(),
            conclusion: conclusion.clone(),
            premises,
        });
        Derivation {
            proof: Arc::new(proof),
            context,
            conclusion,
            sketch,
        }
    }

    /// Checks a primitive proof term and outlines it rule by rule.
    pub fn from_proof(proof: &ObjectProof, context: &[Formula]) -> Result<Self, CheckError> {
        let context: Arc<[Formula]> = context.into();
        let sketch = outline(proof, &context)?;
        Ok(Derivation {
            proof: Arc::new(proof.clone()),
            conclusion: sketch.conclusion.clone(),
            context,
            sketch,
        })
    }

    pub fn ax(context: Arc<[Formula]>, i: usize) -> Result<Self, DerivationError> {
        let conclusion = check(&ObjectProof::Ax(i), &context)?;
        Ok(Self::node(ObjectProof::Ax(i), context, conclusion, Rule::Ax(i), vec![]))
    }

    pub fn dn(&self) -> Result<Self, DerivationError> {
        let a = self
            .conclusion
            .as_double_negation()
            .ok_or_else(|| shape(format!("dn over `{}`", self.conclusion)))?
            .clone();
        Ok(Self::node(
            ObjectProof::Dn(self.proof.clone()),
            self.context.clone(),
            a,
            Rule::Dn,
            vec![self.sketch.clone()],
        ))
    }

    pub fn app_imp(&self, arg: &Derivation) -> Result<Self, DerivationError> {
        if !same_context(&self.context, &arg.context) {
            return Err(shape("app-> premises live in different contexts".into()));
        }
        let b = match &self.conclusion {
            Formula::Imp(a, b) if alpha_eq(a, &arg.conclusion) => (**b).clone(),
            other => return Err(shape(format!("cannot apply `{other}` to `{}`", arg.conclusion))),
        };
        Ok(Self::node(
            ObjectProof::AppImp(self.proof.clone(), arg.proof.clone()),
            self.context.clone(),
            b,
            Rule::AppImp,
            vec![self.sketch.clone(), arg.sketch.clone()],
        ))
    }

    pub fn inst(&self, t: &Term) -> Result<Self, DerivationError> {
        let b = match &self.conclusion {
            Formula::Forall(x, a) => a.instantiate(x, t),
            other => return Err(shape(format!("cannot instantiate `{other}`"))),
        };
        Ok(Self::node(
            ObjectProof::AppForall(self.proof.clone(), t.clone()),
            self.context.clone(),
            b,
            Rule::Inst(t.clone()),
            vec![self.sketch.clone()],
        ))
    }

    /// Discharges the last hypothesis.
    pub fn abs_imp(&self) -> Result<Self, DerivationError> {
        let (a, rest) = self
            .context
            .split_last()
            .ok_or_else(|| shape("abs-> in an empty context".into()))?;
        let context: Arc<[Formula]> = rest.into();
        Ok(Self::node(
            ObjectProof::AbsImp(a.clone(), self.proof.clone()),
            context,
            Formula::imp(a.clone(), self.conclusion.clone()),
            Rule::AbsImp,
            vec![self.sketch.clone()],
        ))
    }

    pub fn pair(&self, other: &Derivation) -> Result<Self, DerivationError> {
        if !same_context(&self.context, &other.context) {
            return Err(shape("pair premises live in different contexts".into()));
        }
        Ok(Self::node(
            ObjectProof::Pair(self.proof.clone(), other.proof.clone()),
            self.context.clone(),
            Formula::and(self.conclusion.clone(), other.conclusion.clone()),
            Rule::Pair,
            vec![self.sketch.clone(), other.sketch.clone()],
        ))
    }

    pub fn proj(&self, second: bool) -> Result<Self, DerivationError> {
        let (a, b) = match &self.conclusion {
            Formula::And(a, b) => ((**a).clone(), (**b).clone()),
            other => return Err(shape(format!("cannot project `{other}`"))),
        };
        let (proof, conclusion, rule) = if second {
            (ObjectProof::Proj2(self.proof.clone()), b, Rule::Snd)
        } else {
            (ObjectProof::Proj1(self.proof.clone()), a, Rule::Fst)
        };
        Ok(Self::node(
            proof,
            self.context.clone(),
            conclusion,
            rule,
            vec![self.sketch.clone()],
        ))
    }

    /// `inl` when `second` is false (with `other` the right disjunct),
    /// `inr` otherwise (with `other` the left disjunct).
    pub fn inj(&self, second: bool, other: &Formula) -> Self {
        let (proof, conclusion, rule) = if second {
            (
                ObjectProof::Inj2(other.clone(), self.proof.clone()),
                Formula::or(other.clone(), self.conclusion.clone()),
                Rule::Inr,
            )
        } else {
            (
                ObjectProof::Inj1(other.clone(), self.proof.clone()),
                Formula::or(self.conclusion.clone(), other.clone()),
                Rule::Inl,
            )
        };
        Self::node(proof, self.context.clone(), conclusion, rule, vec![self.sketch.clone()])
    }

    pub fn case(&self, left: &Derivation, right: &Derivation) -> Result<Self, DerivationError> {
        if !same_context(&self.context, &left.context) || !same_context(&self.context, &right.context) {
            return Err(shape("case premises live in different contexts".into()));
        }
        let c = match (&self.conclusion, &left.conclusion, &right.conclusion) {
            (Formula::Or(a, b), Formula::Imp(a2, c), Formula::Imp(b2, c2))
                if alpha_eq(a, a2) && alpha_eq(b, b2) && alpha_eq(c, c2) =>
            {
                (**c).clone()
            }
            _ => return Err(shape("case premises do not fit".into())),
        };
        Ok(Self::node(
            ObjectProof::Case(self.proof.clone(), left.proof.clone(), right.proof.clone()),
            self.context.clone(),
            c,
            Rule::Case,
            vec![self.sketch.clone(), left.sketch.clone(), right.sketch.clone()],
        ))
    }

    /// `exists x. A` from a proof of `A[x <- t]`.
    pub fn ex_intro(&self, t: &Term, ex: &Formula) -> Result<Self, DerivationError> {
        match ex {
            Formula::Exists(x, a) if alpha_eq(&a.instantiate(x, t), &self.conclusion) => {}
            _ => return Err(shape(format!("`{}` is not an instance of `{ex}`", self.conclusion))),
        }
        Ok(Self::node(
            ObjectProof::ExIntro(t.clone(), ex.clone(), self.proof.clone()),
            self.context.clone(),
            ex.clone(),
            Rule::ExIntro(t.clone()),
            vec![self.sketch.clone()],
        ))
    }

    /// Moves the derivation into `target` along `w`; the outline is kept.
    pub fn weaken(&self, w: &InclusionWitness, target: Arc<[Formula]>) -> Result<Self, DerivationError> {
        if w.target_len() == w.source_len() && same_context(&self.context, &target) {
            return Ok(self.clone());
        }
        let proof = super::weaken(w, &self.proof, &self.context, &target)?;
        Ok(Derivation {
            proof: Arc::new(proof),
            context: target,
            conclusion: self.conclusion.clone(),
            sketch: self.sketch.clone(),
        })
    }

    pub fn efq(&self, a: &Formula) -> Result<Self, DerivationError> {
        if self.conclusion != Formula::Bot {
            return Err(shape(format!("efq over `{}`", self.conclusion)));
        }
        Ok(Self::node(
            super::efq(&self.proof, a),
            self.context.clone(),
            a.clone(),
            Rule::Efq,
            vec![self.sketch.clone()],
        ))
    }

    fn refutation_parts(&self, rule: &str) -> Result<(Arc<[Formula]>, Formula, Formula), DerivationError> {
        if self.conclusion != Formula::Bot {
            return Err(shape(format!("{rule} over `{}`", self.conclusion)));
        }
        match self.context.split_last() {
            Some((Formula::Imp(a, b), rest)) => Ok((rest.into(), (**a).clone(), (**b).clone())),
            _ => Err(shape(format!("{rule}: last hypothesis is not an implication"))),
        }
    }

    pub fn pi1(&self) -> Result<Self, DerivationError> {
        let (rest, a, _) = self.refutation_parts("pi1")?;
        let proof = super::pi1(&self.proof, &self.context)?;
        Ok(Self::node(proof, rest, a, Rule::Pi1, vec![self.sketch.clone()]))
    }

    pub fn pi2(&self) -> Result<Self, DerivationError> {
        let (rest, _, b) = self.refutation_parts("pi2")?;
        let proof = super::pi2(&self.proof, &self.context)?;
        Ok(Self::node(
            proof,
            rest,
            Formula::not(b),
            Rule::Pi2,
            vec![self.sketch.clone()],
        ))
    }

    pub fn drinker(&self, y: &Var) -> Result<Self, DerivationError> {
        let (rest, _, _) = self.refutation_parts("drinker")?;
        let proof = super::drinker(y, &self.proof, &self.context)?;
        Ok(Self::node(
            proof,
            rest,
            Formula::Bot,
            Rule::Drinker(y.clone()),
            vec![self.sketch.clone()],
        ))
    }

    pub fn henkin_ex(&self, x: &Var) -> Result<Self, DerivationError> {
        let (rest, _, _) = self.refutation_parts("henkin-ex")?;
        let proof = super::henkin_ex(x, &self.proof, &self.context)?;
        Ok(Self::node(
            proof,
            rest,
            Formula::Bot,
            Rule::HenkinEx(x.clone()),
            vec![self.sketch.clone()],
        ))
    }

    /// Re-runs the kernel on the primitive proof.
    pub fn recheck(&self) -> Result<(), DerivationError> {
        let found = check(&self.proof, &self.context)?;
        if alpha_eq(&found, &self.conclusion) {
            Ok(())
        } else {
            Err(CheckError::Mismatch {
                expected: self.conclusion.clone(),
                found,
            }
            .into())
        }
    }
}

fn outline(p: &ObjectProof, ctx: &Arc<[Formula]>) -> Result<Arc<Sketch>, CheckError> {
    use ObjectProof::*;
    let conclusion = check(p, ctx)?;
    let here = |q: &ObjectProof| outline(q, ctx);
    let (rule, premises) = match p {
        Ax(i) => (Rule::Ax(*i), vec![]),
        Dn(q) => (Rule::Dn, vec![here(q)?]),
        AppImp(q, r) => (Rule::AppImp, vec![here(q)?, here(r)?]),
        AppForall(q, t) => (Rule::Inst(t.clone()), vec![here(q)?]),
        AbsImp(a, q) => {
            let mut inner = ctx.to_vec();
            inner.push(a.clone());
            (Rule::AbsImp, vec![outline(q, &inner.into())?])
        }
        AbsForall(y, q) => (Rule::Gen(y.clone()), vec![here(q)?]),
        Pair(q, r) => (Rule::Pair, vec![here(q)?, here(r)?]),
        Proj1(q) => (Rule::Fst, vec![here(q)?]),
        Proj2(q) => (Rule::Snd, vec![here(q)?]),
        Inj1(_, q) => (Rule::Inl, vec![here(q)?]),
        Inj2(_, q) => (Rule::Inr, vec![here(q)?]),
        Case(q, l, r) => (Rule::Case, vec![here(q)?, here(l)?, here(r)?]),
        ExIntro(t, _, q) => (Rule::ExIntro(t.clone()), vec![here(q)?]),
        ExElim(q, r) => (Rule::ExElim, vec![here(q)?, here(r)?]),
    };
    Ok(Arc::new(Sketch {
        rule,
        context: ctx.clone(),
        conclusion,
        premises,
    }))
}
