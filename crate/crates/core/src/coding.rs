//! Gödel coding of formulas and the enumeration discipline.
//!
//! A formula is serialized to a prefix-free bit string (constructor tags,
//! length-prefixed names, Elias-coded witness indices) and read as a binary
//! natural number behind a leading `1` bit. The coding is injective on all
//! formulas, and a witness variable `#k` occurring in `A` forces
//! `code(A) > k`, so `#(code(A)+1)` is fresh for every formula whose code is
//! at most `code(A)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::syntax::{Formula, Term, Var};

#[derive(Default)]
struct Bits(Vec<bool>);

impl Bits {
    fn push(&mut self, b: bool) {
        self.0.push(b);
    }

    fn push_fixed(&mut self, value: u64, width: u32) {
        for i in (0..width).rev() {
            self.push((value >> i) & 1 == 1);
        }
    }

    /// Elias gamma code of `n >= 1`.
    fn gamma(&mut self, n: u64) {
        debug_assert!(n >= 1);
        let width = 64 - n.leading_zeros();
        for _ in 1..width {
            self.push(false);
        }
        self.push_fixed(n, width);
    }

    /// Elias delta code of `n >= 1`, for arbitrary-precision `n`.
    fn delta(&mut self, n: &BigUint) {
        let width = n.bits();
        self.gamma(width);
        for i in (0..width - 1).rev() {
            self.push(n.bit(i));
        }
    }

    fn name(&mut self, s: &str) {
        self.gamma(s.len() as u64 + 1);
        for byte in s.bytes() {
            self.push_fixed(byte as u64, 8);
        }
    }

    fn var(&mut self, v: &Var) {
        match v {
            Var::Named(n) => {
                self.push(false);
                self.name(n);
            }
            Var::Fresh(k) => {
                self.push(true);
                self.delta(&(k + 1u32));
            }
        }
    }

    fn term(&mut self, t: &Term) {
        match t {
            Term::Var(v) => {
                self.push(false);
                self.var(v);
            }
            Term::App(f, args) => {
                self.push(true);
                self.name(f.as_str());
                self.gamma(args.len() as u64 + 1);
                args.iter().for_each(|a| self.term(a));
            }
        }
    }

    fn formula(&mut self, a: &Formula) {
        match a {
            Formula::Atom(p, args) => {
                self.push_fixed(0, 3);
                self.name(p.as_str());
                self.gamma(args.len() as u64 + 1);
                args.iter().for_each(|t| self.term(t));
            }
            Formula::Bot => self.push_fixed(1, 3),
            Formula::Imp(x, y) => {
                self.push_fixed(2, 3);
                self.formula(x);
                self.formula(y);
            }
            Formula::Forall(x, body) => {
                self.push_fixed(3, 3);
                self.var(x);
                self.formula(body);
            }
            Formula::And(x, y) => {
                self.push_fixed(4, 3);
                self.formula(x);
                self.formula(y);
            }
            Formula::Or(x, y) => {
                self.push_fixed(5, 3);
                self.formula(x);
                self.formula(y);
            }
            Formula::Exists(x, body) => {
                self.push_fixed(6, 3);
                self.var(x);
                self.formula(body);
            }
        }
    }

    fn into_nat(self) -> BigUint {
        let mut bytes = vec![0u8; (self.0.len() + 1).div_ceil(8)];
        let total = self.0.len() + 1;
        let mut set = |pos_from_msb: usize| {
            let bit = total - 1 - pos_from_msb;
            bytes[bit / 8] |= 1 << (bit % 8);
        };
        set(0);
        for (i, b) in self.0.iter().enumerate() {
            if *b {
                set(i + 1);
            }
        }
        BigUint::from_bytes_le(&bytes)
    }
}

/// The Gödel code of a formula.
pub fn code(a: &Formula) -> BigUint {
    let mut bits = Bits::default();
    bits.formula(a);
    bits.into_nat()
}

/// Which connectives are enumerated: `TwoClass` covers `forall` and `->`,
/// `ThreeClass` adds `exists`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Discipline {
    #[default]
    TwoClass,
    ThreeClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LevelClass {
    Forall,
    Imp,
    Exists,
}

/// Position of a formula in the enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Level {
    pub value: BigUint,
    pub class: LevelClass,
}

impl Level {
    /// Recovers the class from a bare level value.
    pub fn class_of(value: &BigUint, discipline: Discipline) -> LevelClass {
        let classes: &[LevelClass] = match discipline {
            Discipline::TwoClass => &[LevelClass::Forall, LevelClass::Imp],
            Discipline::ThreeClass => &[LevelClass::Forall, LevelClass::Imp, LevelClass::Exists],
        };
        let r = value % BigUint::from(classes.len());
        let idx = if r.is_zero() {
            0
        } else if r.is_one() {
            1
        } else {
            2
        };
        classes[idx]
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodingError {
    #[error("`{0}` is not enumerated (only forall, -> and exists formulas are)")]
    NotEnumerated(Formula),
    #[error("existential formula `{0}` needs the three-class discipline")]
    ExistsDisabled(Formula),
}

/// Level of a `forall`, `->` or (three-class only) `exists` formula.
pub fn level_of(a: &Formula, discipline: Discipline) -> Result<Level, CodingError> {
    let (class, offset) = match (a, discipline) {
        (Formula::Forall(..), _) => (LevelClass::Forall, 0u32),
        (Formula::Imp(..), _) => (LevelClass::Imp, 1),
        (Formula::Exists(..), Discipline::ThreeClass) => (LevelClass::Exists, 2),
        (Formula::Exists(..), Discipline::TwoClass) => return Err(CodingError::ExistsDisabled(a.clone())),
        _ => return Err(CodingError::NotEnumerated(a.clone())),
    };
    let width: u32 = match discipline {
        Discipline::TwoClass => 2,
        Discipline::ThreeClass => 3,
    };
    Ok(Level {
        value: code(a) * width + offset,
        class,
    })
}

/// The witness variable reserved for a quantified formula: `#(code(A)+1)`.
pub fn henkin_witness(a: &Formula) -> Var {
    Var::Fresh(code(a) + BigUint::one())
}
