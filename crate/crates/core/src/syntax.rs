//! First-order syntax: variables, terms, formulas, substitutions and theories.
//!
//! Variables come from two disjoint pools. Pool-1 variables are named and are
//! the only ones a user can write; pool-2 variables are indexed by a natural
//! number and are reserved for Henkin witnesses (printed `#k`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

/// A variable from one of the two pools.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Pool-1: user variables.
    Named(Arc<str>),
    /// Pool-2: witness variables, `#k`.
    Fresh(BigUint),
}

impl Var {
    pub fn named(name: &str) -> Self {
        Var::Named(Arc::from(name))
    }

    pub fn fresh(index: impl Into<BigUint>) -> Self {
        Var::Fresh(index.into())
    }

    pub fn is_fresh(&self) -> bool {
        matches!(self, Var::Fresh(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Named(n) => f.write_str(n),
            Var::Fresh(k) => write!(f, "#{k}"),
        }
    }
}

/// Function or predicate symbol name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Var),
    App(Symbol, Arc<[Term]>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(Var::named(name))
    }

    pub fn app(f: &str, args: Vec<Term>) -> Self {
        Term::App(Symbol::new(f), args.into())
    }

    pub fn constant(c: &str) -> Self {
        Term::app(c, Vec::new())
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|t| t.free_vars_into(out)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    pub fn mentions(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::App(_, args) => args.iter().any(|t| t.mentions(v)),
        }
    }

    pub fn subst(&self, sigma: &Substitution) -> Term {
        match self {
            Term::Var(v) => sigma.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|t| t.subst(sigma)).collect()),
        }
    }
}

/// First-order formula. `~A` is notation for `A -> _|_`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Symbol, Arc<[Term]>),
    Bot,
    Imp(Arc<Formula>, Arc<Formula>),
    Forall(Var, Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Exists(Var, Arc<Formula>),
}

impl Formula {
    pub fn atom(p: &str, args: Vec<Term>) -> Self {
        Formula::Atom(Symbol::new(p), args.into())
    }

    pub fn prop(p: &str) -> Self {
        Formula::atom(p, Vec::new())
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Self {
        Formula::imp(a, Formula::Bot)
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn forall(x: &str, a: Formula) -> Self {
        Formula::Forall(Var::named(x), Arc::new(a))
    }

    pub fn exists(x: &str, a: Formula) -> Self {
        Formula::Exists(Var::named(x), Arc::new(a))
    }

    /// Matches `A -> _|_`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Imp(a, b) if **b == Formula::Bot => Some(a),
            _ => None,
        }
    }

    /// Matches `~~A`.
    pub fn as_double_negation(&self) -> Option<&Formula> {
        self.as_negation().and_then(Formula::as_negation)
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|t| t.free_vars_into(out)),
            Formula::Bot => {}
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.free_vars_into(out);
                b.free_vars_into(out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                let mut inner = BTreeSet::new();
                a.free_vars_into(&mut inner);
                inner.remove(x);
                out.extend(inner);
            }
        }
    }

    pub fn has_free(&self, v: &Var) -> bool {
        match self {
            Formula::Atom(_, args) => args.iter().any(|t| t.mentions(v)),
            Formula::Bot => false,
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => a.has_free(v) || b.has_free(v),
            Formula::Forall(x, a) | Formula::Exists(x, a) => x != v && a.has_free(v),
        }
    }

    /// Every variable occurring in the formula, bound or free.
    pub fn all_vars_into(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|t| t.free_vars_into(out)),
            Formula::Bot => {}
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.all_vars_into(out);
                b.all_vars_into(out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                out.insert(x.clone());
                a.all_vars_into(out);
            }
        }
    }

    pub fn mentions_fresh(&self) -> bool {
        let mut vars = BTreeSet::new();
        self.all_vars_into(&mut vars);
        vars.iter().any(Var::is_fresh)
    }

    /// Capture-avoiding simultaneous substitution.
    pub fn subst(&self, sigma: &Substitution) -> Formula {
        if sigma.is_empty() {
            return self.clone();
        }
        match self {
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|t| t.subst(sigma)).collect()),
            Formula::Bot => Formula::Bot,
            Formula::Imp(a, b) => Formula::Imp(Arc::new(a.subst(sigma)), Arc::new(b.subst(sigma))),
            Formula::And(a, b) => Formula::And(Arc::new(a.subst(sigma)), Arc::new(b.subst(sigma))),
            Formula::Or(a, b) => Formula::Or(Arc::new(a.subst(sigma)), Arc::new(b.subst(sigma))),
            Formula::Forall(x, a) => {
                let (x, a) = subst_under_binder(x, a, sigma);
                Formula::Forall(x, Arc::new(a))
            }
            Formula::Exists(x, a) => {
                let (x, a) = subst_under_binder(x, a, sigma);
                Formula::Exists(x, Arc::new(a))
            }
        }
    }

    /// `A[x <- t]`.
    pub fn instantiate(&self, x: &Var, t: &Term) -> Formula {
        self.subst(&Substitution::single(x.clone(), t.clone()))
    }

    /// Logical size, used by generators and tests.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Bot => 1,
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
            Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.size(),
        }
    }
}

fn subst_under_binder(x: &Var, body: &Formula, sigma: &Substitution) -> (Var, Formula) {
    let body_fv = body.free_vars();
    let mut inner = Substitution::identity();
    let mut range_fv = BTreeSet::new();
    for (v, t) in sigma.iter() {
        if v != x && body_fv.contains(v) {
            t.free_vars_into(&mut range_fv);
            inner.insert(v.clone(), t.clone());
        }
    }
    if inner.is_empty() {
        return (x.clone(), body.clone());
    }
    if range_fv.contains(x) {
        let mut avoid = body_fv;
        avoid.extend(range_fv);
        let renamed = fresh_named(x, |v| avoid.contains(v));
        inner.insert(x.clone(), Term::Var(renamed.clone()));
        (renamed, body.subst(&inner))
    } else {
        (x.clone(), body.subst(&inner))
    }
}

/// Smallest pool-1 variable `base`, `base1`, `base2`, ... rejected by `taken`.
/// Trailing digits of `base` are stripped first; pool-2 bases use `x`.
pub fn fresh_named(base: &Var, taken: impl Fn(&Var) -> bool) -> Var {
    let stem = match base {
        Var::Named(n) => {
            let s = n.trim_end_matches(|c: char| c.is_ascii_digit());
            if s.is_empty() {
                "x".to_string()
            } else {
                s.to_string()
            }
        }
        Var::Fresh(_) => "x".to_string(),
    };
    let plain = Var::named(&stem);
    if !taken(&plain) {
        return plain;
    }
    (1u64..)
        .map(|k| Var::named(&format!("{stem}{k}")))
        .find(|v| !taken(v))
        .expect("unbounded search")
}

/// α-equivalence of formulas.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    fn lookup(stack: &[(Var, Var)], v: &Var, left: bool) -> Option<usize> {
        stack.iter().rposition(|(l, r)| if left { l == v } else { r == v })
    }
    fn term_eq(s: &Term, t: &Term, stack: &[(Var, Var)]) -> bool {
        match (s, t) {
            (Term::Var(x), Term::Var(y)) => match (lookup(stack, x, true), lookup(stack, y, false)) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            },
            (Term::App(f, xs), Term::App(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys.iter()).all(|(x, y)| term_eq(x, y, stack))
            }
            _ => false,
        }
    }
    fn go(a: &Formula, b: &Formula, stack: &mut Vec<(Var, Var)>) -> bool {
        match (a, b) {
            (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
                p == q && xs.len() == ys.len() && xs.iter().zip(ys.iter()).all(|(x, y)| term_eq(x, y, stack))
            }
            (Formula::Bot, Formula::Bot) => true,
            (Formula::Imp(a1, a2), Formula::Imp(b1, b2))
            | (Formula::And(a1, a2), Formula::And(b1, b2))
            | (Formula::Or(a1, a2), Formula::Or(b1, b2)) => go(a1, b1, stack) && go(a2, b2, stack),
            (Formula::Forall(x, a1), Formula::Forall(y, b1)) | (Formula::Exists(x, a1), Formula::Exists(y, b1)) => {
                stack.push((x.clone(), y.clone()));
                let r = go(a1, b1, stack);
                stack.pop();
                r
            }
            _ => false,
        }
    }
    a == b || go(a, b, &mut Vec::new())
}

/// Finite map from variables, used both for term substitutions and for
/// semantic assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarMap<D>(BTreeMap<Var, D>);

/// Finite substitution of terms for variables.
pub type Substitution = VarMap<Term>;

impl<D> Default for VarMap<D> {
    fn default() -> Self {
        VarMap(BTreeMap::new())
    }
}

impl<D: Clone> VarMap<D> {
    pub fn identity() -> Self {
        VarMap(BTreeMap::new())
    }

    pub fn single(v: Var, d: D) -> Self {
        let mut m = BTreeMap::new();
        m.insert(v, d);
        VarMap(m)
    }

    pub fn get(&self, v: &Var) -> Option<&D> {
        self.0.get(v)
    }

    pub fn insert(&mut self, v: Var, d: D) {
        self.0.insert(v, d);
    }

    /// `σ, x <- d`.
    pub fn extended(&self, v: Var, d: D) -> Self {
        let mut m = self.clone();
        m.insert(v, d);
        m
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &D)> {
        self.0.iter()
    }
}

impl Substitution {
    /// `τ ∘ σ`: apply `self` first, then `tau`.
    pub fn then(&self, tau: &Substitution) -> Substitution {
        let mut out = BTreeMap::new();
        for (v, t) in self.0.iter() {
            out.insert(v.clone(), t.subst(tau));
        }
        for (v, t) in tau.0.iter() {
            out.entry(v.clone()).or_insert_with(|| t.clone());
        }
        VarMap(out)
    }
}

impl<D> FromIterator<(Var, D)> for VarMap<D> {
    fn from_iter<I: IntoIterator<Item = (Var, D)>>(iter: I) -> Self {
        VarMap(iter.into_iter().collect())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    Unbound(Var),
}

/// Interprets a term: variables through `assign`, symbols through `interp`.
pub fn eval_term<D>(
    t: &Term,
    assign: &dyn Fn(&Var) -> Option<D>,
    interp: &dyn Fn(&Symbol, Vec<D>) -> D,
) -> Result<D, EvalError> {
    match t {
        Term::Var(v) => assign(v).ok_or_else(|| EvalError::Unbound(v.clone())),
        Term::App(f, args) => {
            let vals = args
                .iter()
                .map(|a| eval_term(a, assign, interp))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(interp(f, vals))
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("symbol `{0}` declared twice")]
    Duplicate(Symbol),
    #[error("symbol `{symbol}` used with arity {found}, declared with {declared}")]
    Arity {
        symbol: Symbol,
        declared: usize,
        found: usize,
    },
    #[error("unknown symbol `{0}`")]
    Unknown(Symbol),
}

/// Function and predicate symbols with their arities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub fun_symbols: Vec<(Symbol, usize)>,
    pub pred_symbols: Vec<(Symbol, usize)>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare_fun(&mut self, f: Symbol, arity: usize) -> Result<(), SignatureError> {
        declare(&mut self.fun_symbols, f, arity)
    }

    pub fn declare_pred(&mut self, p: Symbol, arity: usize) -> Result<(), SignatureError> {
        declare(&mut self.pred_symbols, p, arity)
    }

    pub fn fun_arity(&self, f: &Symbol) -> Option<usize> {
        self.fun_symbols.iter().find(|(g, _)| g == f).map(|(_, a)| *a)
    }

    pub fn pred_arity(&self, p: &Symbol) -> Option<usize> {
        self.pred_symbols.iter().find(|(q, _)| q == p).map(|(_, a)| *a)
    }

    /// Declares every symbol used in `a`, rejecting arity clashes.
    pub fn extend_from(&mut self, a: &Formula) -> Result<(), SignatureError> {
        self.walk(a, true)
    }

    /// Checks `a` against the declared symbols only.
    pub fn check(&self, a: &Formula) -> Result<(), SignatureError> {
        let mut copy = self.clone();
        copy.walk(a, false)
    }

    fn walk(&mut self, a: &Formula, extend: bool) -> Result<(), SignatureError> {
        match a {
            Formula::Atom(p, args) => {
                self.use_symbol(false, p, args.len(), extend)?;
                args.iter().try_for_each(|t| self.walk_term(t, extend))
            }
            Formula::Bot => Ok(()),
            Formula::Imp(x, y) | Formula::And(x, y) | Formula::Or(x, y) => {
                self.walk(x, extend)?;
                self.walk(y, extend)
            }
            Formula::Forall(_, x) | Formula::Exists(_, x) => self.walk(x, extend),
        }
    }

    fn walk_term(&mut self, t: &Term, extend: bool) -> Result<(), SignatureError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                self.use_symbol(true, f, args.len(), extend)?;
                args.iter().try_for_each(|s| self.walk_term(s, extend))
            }
        }
    }

    fn use_symbol(&mut self, fun: bool, s: &Symbol, arity: usize, extend: bool) -> Result<(), SignatureError> {
        let table = if fun {
            &mut self.fun_symbols
        } else {
            &mut self.pred_symbols
        };
        match table.iter().find(|(t, _)| t == s) {
            Some((_, declared)) if *declared != arity => Err(SignatureError::Arity {
                symbol: s.clone(),
                declared: *declared,
                found: arity,
            }),
            Some(_) => Ok(()),
            None if extend => {
                table.push((s.clone(), arity));
                Ok(())
            }
            None => Err(SignatureError::Unknown(s.clone())),
        }
    }
}

fn declare(table: &mut Vec<(Symbol, usize)>, s: Symbol, arity: usize) -> Result<(), SignatureError> {
    if table.iter().any(|(t, _)| *t == s) {
        return Err(SignatureError::Duplicate(s));
    }
    table.push((s, arity));
    Ok(())
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("theory member {index} mentions a witness variable")]
pub struct TheoryError {
    pub index: usize,
}

/// A finite theory. Membership evidence is an index into the member list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Theory {
    members: Vec<Formula>,
}

impl Theory {
    pub fn new(members: Vec<Formula>) -> Result<Self, TheoryError> {
        if let Some(index) = members.iter().position(Formula::mentions_fresh) {
            return Err(TheoryError { index });
        }
        Ok(Theory { members })
    }

    pub fn empty() -> Self {
        Theory::default()
    }

    pub fn members(&self) -> &[Formula] {
        &self.members
    }

    pub fn member(&self, i: usize) -> Option<&Formula> {
        self.members.get(i)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

// Printing. Precedences: quantifiers 0, -> 1, \/ 2, /\ 3, ~ and atoms 4.

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn prec(a: &Formula) -> u8 {
    match a {
        Formula::Forall(..) | Formula::Exists(..) => 0,
        Formula::Imp(_, b) if **b == Formula::Bot => 4,
        Formula::Imp(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Atom(..) | Formula::Bot => 4,
    }
}

fn write_formula(a: &Formula, ctx: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let parens = prec(a) < ctx;
    if parens {
        f.write_str("(")?;
    }
    match a {
        Formula::Atom(p, args) => {
            write!(f, "{p}")?;
            if !args.is_empty() {
                f.write_str("(")?;
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")?;
            }
        }
        Formula::Bot => f.write_str("_|_")?,
        Formula::Imp(x, y) if **y == Formula::Bot => {
            f.write_str("~")?;
            write_formula(x, 4, f)?;
        }
        Formula::Imp(x, y) => {
            write_formula(x, 2, f)?;
            f.write_str(" -> ")?;
            write_formula(y, 1, f)?;
        }
        Formula::Or(x, y) => {
            write_formula(x, 3, f)?;
            f.write_str(" \\/ ")?;
            write_formula(y, 2, f)?;
        }
        Formula::And(x, y) => {
            write_formula(x, 4, f)?;
            f.write_str(" /\\ ")?;
            write_formula(y, 3, f)?;
        }
        Formula::Forall(x, body) => {
            write!(f, "forall {x}. ")?;
            write_formula(body, 0, f)?;
        }
        Formula::Exists(x, body) => {
            write!(f, "exists {x}. ")?;
            write_formula(body, 0, f)?;
        }
    }
    if parens {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, 0, f)
    }
}

/// Prints a context as a comma-separated list.
pub fn show_context(ctx: &[Formula]) -> String {
    ctx.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
}
