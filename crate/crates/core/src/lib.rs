//! A classical first-order proof kernel and a completeness extraction
//! engine that turns semantic validity witnesses into checked natural
//! deduction proofs.

pub mod coding;
pub mod corpus;
pub mod error;
pub mod henkin;
pub mod kont;
pub mod nbe;
pub mod parse;
pub mod proof;
pub mod semantics;
pub mod syntax;
