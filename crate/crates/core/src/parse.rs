//! Text syntax for formulas, proof terms and theory files.
//!
//! Formulas: `_|_`, `P`, `P(t,...)`, `~A`, `A /\ B`, `A \/ B`, `A -> B`,
//! `forall x. A`, `exists x. A`. Binary connectives associate to the right;
//! `/\` binds tighter than `\/`, which binds tighter than `->`. A quantifier
//! body extends as far right as possible. Terms are variables `x` or
//! applications `f(t,...)`; a constant is written `c()`. The opening
//! parenthesis of an argument list must follow the symbol directly.
//!
//! Proof terms are s-expressions; their formula arguments are primary
//! formulas, so compound formulas must be parenthesized:
//! `(lam (X -> Y) (ax 0))`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use crate::proof::ObjectProof;
use crate::syntax::{Formula, Symbol, Term, Theory, Var};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Whether `#k` witness variables are accepted. User input never contains
/// them; engine output does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VarPolicy {
    #[default]
    UserOnly,
    AllowWitness,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    policy: VarPolicy,
    depth: usize,
}

const MAX_DEPTH: usize = 128;

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, policy: VarPolicy) -> Self {
        Cursor {
            src,
            pos: 0,
            policy,
            depth: 0,
        }
    }

    fn error_at(&self, offset: usize, message: impl Into<String>) -> ParseError {
        let before = &self.src[..offset.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before
            .rfind('\n')
            .map_or(before.chars().count(), |i| before[i + 1..].chars().count())
            + 1;
        ParseError {
            offset,
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    /// Consumes `tok` after optional whitespace.
    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{tok}`")))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("nesting too deep"));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn peek_ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if is_ident_start(c) => {}
            _ => return None,
        }
        let end = chars.find(|(_, c)| !is_ident_char(*c)).map_or(rest.len(), |(i, _)| i);
        Some(&rest[..end])
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        match self.peek_ident() {
            Some(id) => {
                self.pos += id.len();
                Ok(id)
            }
            None => Err(self.error("expected an identifier")),
        }
    }

    fn keyword_ahead(&mut self, kw: &str) -> bool {
        self.peek_ident() == Some(kw)
    }

    fn witness_var(&mut self) -> Result<Option<Var>, ParseError> {
        self.skip_ws();
        if self.peek() != Some('#') {
            return Ok(None);
        }
        let start = self.pos;
        if self.policy == VarPolicy::UserOnly {
            return Err(self.error("witness variables `#k` are reserved and cannot appear in input"));
        }
        self.pos += 1;
        let digits: &str = {
            let rest = self.rest();
            let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            &rest[..end]
        };
        if digits.is_empty() {
            return Err(self.error_at(start, "expected digits after `#`"));
        }
        self.pos += digits.len();
        let k: BigUint = digits.parse().map_err(|_| self.error_at(start, "bad witness index"))?;
        Ok(Some(Var::Fresh(k)))
    }

    fn variable(&mut self) -> Result<Var, ParseError> {
        if let Some(v) = self.witness_var()? {
            return Ok(v);
        }
        let id = self.ident()?;
        if id == "forall" || id == "exists" {
            return Err(self.error_at(self.pos - id.len(), format!("`{id}` is a keyword")));
        }
        Ok(Var::named(id))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if let Some(v) = self.witness_var()? {
            return Ok(Term::Var(v));
        }
        let start = self.pos;
        let id = self.ident()?;
        if id == "forall" || id == "exists" {
            return Err(self.error_at(start, format!("`{id}` is a keyword")));
        }
        if self.peek() == Some('(') {
            self.enter()?;
            let args = self.term_args()?;
            self.leave();
            Ok(Term::App(Symbol::new(id), args.into()))
        } else {
            Ok(Term::var(id))
        }
    }

    /// Parses `(t,...)` with the cursor on the opening parenthesis.
    fn term_args(&mut self) -> Result<Vec<Term>, ParseError> {
        self.pos += 1;
        let mut args = Vec::new();
        if self.eat(")") {
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            if self.eat(")") {
                return Ok(args);
            }
            self.expect(",")?;
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.enter()?;
        let out = if self.keyword_ahead("forall") || self.keyword_ahead("exists") {
            self.quantified()
        } else {
            self.implication()
        };
        self.leave();
        out
    }

    fn quantified(&mut self) -> Result<Formula, ParseError> {
        let kw = self.ident()?;
        let x = self.variable()?;
        self.expect(".")?;
        let body = self.formula()?;
        Ok(if kw == "forall" {
            Formula::Forall(x, Arc::new(body))
        } else {
            Formula::Exists(x, Arc::new(body))
        })
    }

    fn operand_or_quantifier(
        &mut self,
        level: fn(&mut Self) -> Result<Formula, ParseError>,
    ) -> Result<Formula, ParseError> {
        if self.keyword_ahead("forall") || self.keyword_ahead("exists") {
            self.enter()?;
            let out = self.quantified();
            self.leave();
            out
        } else {
            level(self)
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat("->") {
            let rhs = self.formula()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.conjunction()?;
        if self.eat("\\/") {
            self.enter()?;
            let rhs = self.operand_or_quantifier(Self::disjunction)?;
            self.leave();
            Ok(Formula::or(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if self.eat("/\\") {
            self.enter()?;
            let rhs = self.operand_or_quantifier(Self::conjunction)?;
            self.leave();
            Ok(Formula::and(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat("~") {
            self.enter()?;
            let inner = self.operand_or_quantifier(Self::unary)?;
            self.leave();
            Ok(Formula::not(inner))
        } else {
            self.primary()
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        if self.eat("_|_") {
            return Ok(Formula::Bot);
        }
        if self.eat("(") {
            let inner = self.formula()?;
            self.expect(")")?;
            return Ok(inner);
        }
        if self.peek() == Some('~') {
            return self.unary();
        }
        if self.peek() == Some('#') {
            self.witness_var()?;
            return Err(self.error("expected a formula"));
        }
        let start = self.pos;
        let id = match self.peek_ident() {
            Some(id) => id,
            None => return Err(self.error("expected a formula")),
        };
        if id == "forall" || id == "exists" {
            return Err(self.error_at(start, "quantifier must be parenthesized here"));
        }
        self.pos += id.len();
        let args = if self.peek() == Some('(') {
            self.enter()?;
            let args = self.term_args()?;
            self.leave();
            args
        } else {
            Vec::new()
        };
        Ok(Formula::Atom(Symbol::new(id), args.into()))
    }

    /// A formula argument inside a proof term.
    fn formula_arg(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.formula()?;
                self.expect(")")?;
                Ok(inner)
            }
            Some('~') => self.unary(),
            _ => self.primary(),
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if end == 0 {
            return Err(self.error("expected a hypothesis index"));
        }
        let n = rest[..end].parse().map_err(|_| self.error("index too large"))?;
        self.pos += end;
        Ok(n)
    }

    fn proof(&mut self) -> Result<ObjectProof, ParseError> {
        self.enter()?;
        self.expect("(")?;
        let start = self.pos;
        let head = self.ident()?;
        let p = self.proof_body(head, start)?;
        self.expect(")")?;
        self.leave();
        Ok(p)
    }

    // Kept out of line with small per-arm helpers: in unoptimized builds
    // one big match here costs several kilobytes of stack per nesting level.
    #[inline(never)]
    fn sub(&mut self) -> Result<Arc<ObjectProof>, ParseError> {
        self.proof().map(Arc::new)
    }

    #[inline(never)]
    fn proof_body(&mut self, head: &str, start: usize) -> Result<ObjectProof, ParseError> {
        use ObjectProof::*;
        Ok(match head {
            "ax" => Ax(self.number()?),
            "dn" => Dn(self.sub()?),
            "app" => AppImp(self.sub()?, self.sub()?),
            "inst" => self.proof_inst()?,
            "lam" => self.proof_with_formula(AbsImp)?,
            "gen" => self.proof_gen()?,
            "pair" => Pair(self.sub()?, self.sub()?),
            "fst" => Proj1(self.sub()?),
            "snd" => Proj2(self.sub()?),
            "inl" => self.proof_with_formula(Inj1)?,
            "inr" => self.proof_with_formula(Inj2)?,
            "case" => Case(self.sub()?, self.sub()?, self.sub()?),
            "exi" => self.proof_exi()?,
            "exe" => ExElim(self.sub()?, self.sub()?),
            other => return Err(self.error_at(start, format!("unknown proof constructor `{other}`"))),
        })
    }

    #[inline(never)]
    fn proof_inst(&mut self) -> Result<ObjectProof, ParseError> {
        let p = self.sub()?;
        let t = self.term()?;
        Ok(ObjectProof::AppForall(p, t))
    }

    #[inline(never)]
    fn proof_with_formula(
        &mut self,
        make: fn(Formula, Arc<ObjectProof>) -> ObjectProof,
    ) -> Result<ObjectProof, ParseError> {
        let a = self.formula_arg()?;
        Ok(make(a, self.sub()?))
    }

    #[inline(never)]
    fn proof_gen(&mut self) -> Result<ObjectProof, ParseError> {
        let y = self.variable()?;
        Ok(ObjectProof::AbsForall(y, self.sub()?))
    }

    #[inline(never)]
    fn proof_exi(&mut self) -> Result<ObjectProof, ParseError> {
        let t = self.term()?;
        let a = self.formula_arg()?;
        Ok(ObjectProof::ExIntro(t, a, self.sub()?))
    }

    fn finish<T>(&mut self, value: T) -> Result<T, ParseError> {
        if self.at_end() {
            Ok(value)
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_formula_with(text, VarPolicy::UserOnly)
}

pub fn parse_formula_with(text: &str, policy: VarPolicy) -> Result<Formula, ParseError> {
    let mut c = Cursor::new(text, policy);
    let a = c.formula()?;
    c.finish(a)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut c = Cursor::new(text, VarPolicy::UserOnly);
    let t = c.term()?;
    c.finish(t)
}

pub fn parse_proof(text: &str) -> Result<ObjectProof, ParseError> {
    parse_proof_with(text, VarPolicy::UserOnly)
}

pub fn parse_proof_with(text: &str, policy: VarPolicy) -> Result<ObjectProof, ParseError> {
    let mut c = Cursor::new(text, policy);
    let p = c.proof()?;
    c.finish(p)
}

/// Parses a theory file: one formula per line, `//` comments, blank lines
/// ignored.
pub fn parse_theory(text: &str) -> Result<Theory, ParseError> {
    let mut members = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let content = line.trim_end_matches(['\n', '\r']);
        let body = match content.find("//") {
            Some(i) => &content[..i],
            None => content,
        };
        if !body.trim().is_empty() {
            let mut c = Cursor::new(body, VarPolicy::UserOnly);
            let parsed = c.formula().and_then(|a| c.finish(a));
            match parsed {
                Ok(a) => members.push(a),
                Err(e) => {
                    let whole = Cursor::new(text, VarPolicy::UserOnly);
                    return Err(whole.error_at(offset + e.offset, e.message));
                }
            }
        }
        offset += line.len();
    }
    Ok(Theory::new(members).expect("user formulas never mention witness variables"))
}

/// Writes a formula as a proof-term argument.
pub(crate) struct FormulaArg<'a>(pub &'a Formula);

impl fmt::Display for FormulaArg<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.0;
        let primary = match a {
            Formula::Atom(..) | Formula::Bot => true,
            Formula::Imp(_, b) => **b == Formula::Bot,
            _ => false,
        };
        if primary {
            write!(f, "{a}")
        } else {
            write!(f, "({a})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implication_is_right_associative() {
        let a = parse_formula("X -> Y -> X").unwrap();
        let x = Formula::prop("X");
        let y = Formula::prop("Y");
        assert_eq!(a, Formula::imp(x.clone(), Formula::imp(y, x)));
    }

    #[test]
    fn quantifier_scopes_over_arrow() {
        let a = parse_formula("forall x. P(x) -> P(x)").unwrap();
        let px = Formula::atom("P", vec![Term::var("x")]);
        assert_eq!(a, Formula::forall("x", Formula::imp(px.clone(), px)));
    }

    #[test]
    fn precedence_of_connectives() {
        let a = parse_formula("~A /\\ B \\/ C -> D").unwrap();
        let expected = Formula::imp(
            Formula::or(
                Formula::and(Formula::not(Formula::prop("A")), Formula::prop("B")),
                Formula::prop("C"),
            ),
            Formula::prop("D"),
        );
        assert_eq!(a, expected);
    }

    #[test]
    fn witness_variables_are_rejected() {
        let e = parse_formula("P(#3)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        assert!(parse_formula("#3").is_err());
        assert!(parse_formula_with("P(#3)", VarPolicy::AllowWitness).is_ok());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("X ->").unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse_theory("X\n\nY /\\ \n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn theory_file_with_comments() {
        let t = parse_theory("// axioms\nX\n\nX -> Y // modus ponens\n").unwrap();
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn proof_terms() {
        let p = parse_proof("(lam X (lam Y (ax 1)))").unwrap();
        assert_eq!(p.to_string(), "(lam X (lam Y (ax 1)))");
        let p = parse_proof("(lam (forall x. P(x)) (inst (ax 0) c()))").unwrap();
        assert_eq!(p.to_string(), "(lam (forall x. P(x)) (inst (ax 0) c()))");
        assert!(parse_proof("(foo)").is_err());
        assert!(parse_proof("(lam X -> Y (ax 0))").is_err());
    }

    #[test]
    fn deep_nesting_is_an_error_not_a_crash() {
        let text = "~".repeat(5000) + "X";
        assert!(parse_formula(&text).is_err());
        let text = "(".repeat(5000);
        assert!(parse_formula(&text).is_err());
    }
}
