//! Kernel for a calculus of constructions with a predicative `Type` hierarchy,
//! an impredicative `Prop`, and a built-in list type, together with a semantic
//! evaluator over finite well-behaved Alexandroff spaces.
//!
//! The crate is split in two halves:
//!
//! * the syntactic side: terms, parsing, printing, reduction and type checking
//!   (`term`, `parse`, `print`, `reduce`, `typing`);
//! * the semantic side: finite topological spaces as complete Heyting algebras,
//!   the set-theoretic interpretation, executable law suites and countermodel
//!   search (`space`, `laws`, `enumerate`, `value`, `eval`, `checks`, `lists`,
//!   `search`).
//!
//! Everything is pure and deterministic; IO, file formats and the CLI live in
//! the companion `alexcc-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod checks;
pub mod enumerate;
pub mod eval;
pub mod gen;
pub mod laws;
pub mod lists;
pub mod parse;
pub mod print;
pub mod reduce;
pub mod rng;
pub mod search;
pub mod space;
pub mod term;
pub mod typing;
pub mod value;

pub use eval::{EvalCfg, EvalError, EvalReport, Evaluator, Valuation};
pub use space::{Open, Space, SpaceError};
pub use term::{Context, Hint, ListConst, Sort, Term};
pub use typing::{Limits, TypeError};
pub use value::{TestUniverse, Value};
