//! Goedel numbering via the Cantor pairing function.

mod codes;
mod pair;
mod proofs;
mod subst;
mod trace;

pub use codes::{
    code_formula, code_list, code_numeral_term, code_term, code_terms, decode_formula, decode_list, decode_term,
    decode_terms, has_symbolic_numeral, try_code_formula, try_code_term, try_code_terms, CodeBudget, CodingError,
    NotACode,
};
pub use pair::{cpair, cpair_inv, cpair_u, triangle};
pub use proofs::{check_prf, code_proof, decode_proof, try_code_proof};
pub use subst::{code_sub_formula, code_sub_term, formula_code_free_vars, term_code_free_vars};
pub use trace::{
    check_trace_code, code_trace, extract_from_trace, search_trace, trace_bound, trace_size, trace_sub, trace_sub_code,
    SubTrace,
};
