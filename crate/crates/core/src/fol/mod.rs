//! First-order syntax over an arbitrary finite signature.

mod formula;
mod language;
mod subst;
mod term;

pub use formula::{Formula, FormulaKind};
pub use language::{FuncSym, Language, RelSym};
pub use subst::{fresh_var, subst_formula, subst_simultaneous, subst_term, subst_term_simultaneous};
pub use term::{Numeral, NumeralValue, Term, TermKind};

/// Variable index.
pub type Var = u64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("unknown function symbol f{}", .0 .0)]
    UnknownFunction(FuncSym),
    #[error("unknown relation symbol r{}", .0 .0)]
    UnknownRelation(RelSym),
    #[error("function symbol f{} expects {expected} arguments, got {found}", .symbol.0)]
    FunctionArity {
        symbol: FuncSym,
        expected: usize,
        found: usize,
    },
    #[error("relation symbol r{} expects {expected} arguments, got {found}", .symbol.0)]
    RelationArity {
        symbol: RelSym,
        expected: usize,
        found: usize,
    },
    #[error("language has no Succ/Zero symbols for numerals")]
    NoNumerals,
}
