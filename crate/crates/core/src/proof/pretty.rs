//! Indented text rendering of derivation trees.
//!
//! Each node is one line `[rule] context |- conclusion`, premises follow
//! indented by two spaces, in order.

use std::fmt::Write;

use super::{CheckError, Derivation, ObjectProof, Sketch};
use crate::syntax::{show_context, Formula};

/// Renders a primitive proof rule by rule.
pub fn pretty(p: &ObjectProof, ctx: &[Formula]) -> Result<String, CheckError> {
    let d = Derivation::from_proof(p, ctx)?;
    Ok(render_sketch(d.sketch()))
}

/// Renders a derivation outline.
pub fn render_sketch(s: &Sketch) -> String {
    let mut out = String::new();
    render_into(s, 0, &mut out);
    out
}

fn render_into(s: &Sketch, depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    let _ = write!(out, "[{}] ", s.rule);
    if !s.context.is_empty() {
        out.push_str(&show_context(&s.context));
        out.push(' ');
    }
    let _ = writeln!(out, "|- {}", s.conclusion);
    for p in &s.premises {
        render_into(p, depth + 1, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_formula, parse_proof};

    #[test]
    fn single_axiom_is_one_line() {
        let a = parse_formula("A").unwrap();
        assert_eq!(pretty(&ObjectProof::Ax(0), &[a]).unwrap(), "[ax] A |- A\n");
    }

    #[test]
    fn nested_rendering() {
        let p = parse_proof("(lam X (lam Y (ax 1)))").unwrap();
        let text = pretty(&p, &[]).unwrap();
        assert_eq!(
            text,
            "[abs->] |- X -> Y -> X\n  [abs->] X |- Y -> X\n    [ax] X, Y |- X\n"
        );
        assert_eq!(text, pretty(&p, &[]).unwrap());
    }
}
