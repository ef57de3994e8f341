//! Quantifier elimination over finite fields by Gröbner bases.
//!
//! Formulas over `0, 1, +, *, =` are flattened into ideals, quantifier blocks
//! are removed through lexicographic elimination ideals, and the result is a
//! quantifier-free formula over the free variables. A brute-force oracle
//! provides ground-truth semantics for testing and witness search.

pub mod engine;
pub mod field;
pub mod groebner;
pub mod logic;
pub mod oracle;
pub mod poly;
pub mod s2vd;
pub mod syntax;
pub mod term;
pub mod transform;

pub use field::{FieldElement, FieldError, FieldSpec};
pub use logic::{Formula, PrenexFormula, Quantifier};
pub use poly::{Assignment, Monomial, MonomialOrder, PolyError, Polynomial, Ring, VarTable};
pub use term::Term;
