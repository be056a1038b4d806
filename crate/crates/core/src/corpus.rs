//! Classical theorems with hand-written object proofs.

use crate::parse::{parse_formula, parse_proof, ParseError};
use crate::proof::ObjectProof;
use crate::syntax::{Formula, Theory};

#[derive(Clone, Copy, Debug)]
pub struct Theorem {
    pub name: &'static str,
    pub theory: &'static [&'static str],
    pub formula: &'static str,
    pub proof: &'static str,
    /// Uses disjunction or an existential, so only the kont engine applies.
    pub needs_kont: bool,
}

impl Theorem {
    pub fn parsed(&self) -> Result<(Theory, Formula, ObjectProof), ParseError> {
        let members = self
            .theory
            .iter()
            .map(|m| parse_formula(m))
            .collect::<Result<Vec<_>, _>>()?;
        let theory = Theory::new(members).expect("corpus theories are closed and well formed");
        Ok((theory, parse_formula(self.formula)?, parse_proof(self.proof)?))
    }
}

const fn core(name: &'static str, formula: &'static str, proof: &'static str) -> Theorem {
    Theorem {
        name,
        theory: &[],
        formula,
        proof,
        needs_kont: false,
    }
}

const fn kont(name: &'static str, formula: &'static str, proof: &'static str) -> Theorem {
    Theorem {
        name,
        theory: &[],
        formula,
        proof,
        needs_kont: true,
    }
}

pub const CORPUS: &[Theorem] = &[
    core("k", "X -> Y -> X", "(lam X (lam Y (ax 1)))"),
    core("i", "X -> X", "(lam X (ax 0))"),
    core(
        "s",
        "(X -> Y -> Z) -> (X -> Y) -> X -> Z",
        "(lam (X -> Y -> Z) (lam (X -> Y) (lam X (app (app (ax 2) (ax 0)) (app (ax 1) (ax 0))))))",
    ),
    core(
        "compose",
        "(X -> Y) -> (Y -> Z) -> X -> Z",
        "(lam (X -> Y) (lam (Y -> Z) (lam X (app (ax 1) (app (ax 2) (ax 0))))))",
    ),
    core("double-negation-elim", "~~X -> X", "(lam ~~X (dn (ax 0)))"),
    core("double-negation-intro", "X -> ~~X", "(lam X (lam ~X (app (ax 0) (ax 1))))"),
    core(
        "peirce",
        "((X -> Y) -> X) -> X",
        "(lam ((X -> Y) -> X) (dn (lam ~X (app (ax 0) (app (ax 1) (lam X (dn (lam ~Y (app (ax 2) (ax 1))))))))))",
    ),
    core(
        "contraposition",
        "(X -> Y) -> ~Y -> ~X",
        "(lam (X -> Y) (lam ~Y (lam X (app (ax 1) (app (ax 2) (ax 0))))))",
    ),
    core(
        "classical-contraposition",
        "(~Y -> ~X) -> X -> Y",
        "(lam (~Y -> ~X) (lam X (dn (lam ~Y (app (app (ax 2) (ax 0)) (ax 1))))))",
    ),
    core(
        "de-morgan-and-left",
        "~X -> ~(X /\\ Y)",
        "(lam ~X (lam (X /\\ Y) (app (ax 1) (fst (ax 0)))))",
    ),
    core(
        "de-morgan-and-curried",
        "~(X /\\ Y) -> X -> ~Y",
        "(lam ~(X /\\ Y) (lam X (lam Y (app (ax 2) (pair (ax 1) (ax 0))))))",
    ),
    core(
        "and-commutes",
        "X /\\ Y -> Y /\\ X",
        "(lam (X /\\ Y) (pair (snd (ax 0)) (fst (ax 0))))",
    ),
    core("and-left", "X /\\ Y -> X", "(lam (X /\\ Y) (fst (ax 0)))"),
    core(
        "non-contradiction",
        "~(X /\\ ~X)",
        "(lam (X /\\ ~X) (app (snd (ax 0)) (fst (ax 0))))",
    ),
    core(
        "case-split",
        "(X -> Y) -> (~X -> Y) -> Y",
        "(lam (X -> Y) (lam (~X -> Y) (dn (lam ~Y (app (ax 0) (app (ax 1) (lam X (app (ax 1) (app (ax 3) (ax 0))))))))))",
    ),
    core(
        "double-negation-distributes",
        "~~(X -> Y) -> ~~X -> ~~Y",
        "(lam ~~(X -> Y) (lam ~~X (lam ~Y (app (ax 2) (lam (X -> Y) (app (ax 2) (lam X (app (ax 2) (app (ax 1) (ax 0))))))))))",
    ),
    core(
        "drinker",
        "~(forall y. ~(A(y) -> forall x. A(x)))",
        "(lam (forall y. ~(A(y) -> forall x. A(x))) (app (inst (ax 0) y) (lam A(y) (gen z (dn (lam ~A(z) (app (inst (ax 2) z) (lam A(z) (dn (lam ~(forall x. A(x)) (app (ax 2) (ax 1))))))))))))",
    ),
    core(
        "universal-instance",
        "(forall x. P(x)) -> P(c())",
        "(lam (forall x. P(x)) (inst (ax 0) c()))",
    ),
    core(
        "universal-and-left",
        "(forall x. (P(x) /\\ Q(x))) -> forall x. P(x)",
        "(lam (forall x. (P(x) /\\ Q(x))) (gen y (fst (inst (ax 0) y))))",
    ),
    core(
        "universal-distributes",
        "(forall x. (P(x) -> Q(x))) -> (forall x. P(x)) -> forall x. Q(x)",
        "(lam (forall x. (P(x) -> Q(x))) (lam (forall x. P(x)) (gen y (app (inst (ax 1) y) (inst (ax 0) y)))))",
    ),
    Theorem {
        name: "theory-modus-ponens",
        theory: &["X", "X -> Y"],
        formula: "Y",
        proof: "(app (ax 0) (ax 1))",
        needs_kont: false,
    },
    Theorem {
        name: "theory-instance",
        theory: &["forall x. P(x)"],
        formula: "P(c())",
        proof: "(inst (ax 0) c())",
        needs_kont: false,
    },
    kont(
        "excluded-middle",
        "X \\/ ~X",
        "(dn (lam ~(X \\/ ~X) (app (ax 0) (inr X (lam X (app (ax 1) (inl ~X (ax 0))))))))",
    ),
    kont(
        "de-morgan-or",
        "~(X /\\ Y) -> ~X \\/ ~Y",
        "(lam ~(X /\\ Y) (dn (lam ~(~X \\/ ~Y) (app (ax 0) (inl ~Y (lam X (app (ax 1) (inr ~X (lam Y (app (ax 3) (pair (ax 1) (ax 0))))))))))))",
    ),
    kont(
        "or-commutes",
        "X \\/ Y -> Y \\/ X",
        "(lam (X \\/ Y) (case (ax 0) (lam X (inr Y (ax 0))) (lam Y (inl X (ax 0)))))",
    ),
    kont(
        "existential-intro",
        "P(c()) -> exists x. P(x)",
        "(lam P(c()) (exi c() (exists x. P(x)) (ax 0)))",
    ),
    kont(
        "existential-not-universal-negation",
        "(exists x. P(x)) -> ~(forall x. ~P(x))",
        "(lam (exists x. P(x)) (lam (forall x. ~P(x)) (exe (ax 1) (gen z (lam P(z) (app (inst (ax 1) z) (ax 0)))))))",
    ),
    kont(
        "existential-and-left",
        "(exists x. (P(x) /\\ Q(x))) -> exists x. P(x)",
        "(lam (exists x. (P(x) /\\ Q(x))) (exe (ax 0) (gen z (lam (P(z) /\\ Q(z)) (exi z (exists x. P(x)) (fst (ax 0)))))))",
    ),
];

pub fn by_name(name: &str) -> Option<&'static Theorem> {
    CORPUS.iter().find(|t| t.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::check;
    use crate::syntax::alpha_eq;

    #[test]
    fn every_proof_checks_against_its_formula() {
        for t in CORPUS {
            let (theory, a, p) = t.parsed().unwrap_or_else(|e| panic!("{}: {e}", t.name));
            let found = check(&p, theory.members()).unwrap_or_else(|e| panic!("{}: {e}", t.name));
            assert!(alpha_eq(&found, &a), "{}: proves {found}", t.name);
        }
    }

    #[test]
    fn names_are_unique() {
        for (i, t) in CORPUS.iter().enumerate() {
            assert!(CORPUS[i + 1..].iter().all(|u| u.name != t.name));
        }
        assert!(CORPUS.len() >= 20);
    }
}
