//! Goedel numbers of terms, term lists, formulas and lists of codes.
//!
//! Conventions:
//! - `Var n` is `⟨0, n⟩`, `f(ts)` is `⟨1 + f, ts⟩`;
//! - a term list is `0` when empty, else `⟨head, tail⟩` (decoding is arity
//!   directed, since `[Var 0]` and `[]` share the code 0);
//! - formulas: `⟨0, ⟨t, u⟩⟩` for `=`, `⟨1, ⟨a, b⟩⟩` for `⇒`, `⟨2, a⟩` for `¬`,
//!   `⟨3, ⟨v, a⟩⟩` for `∀`, `⟨4 + r, ts⟩` for an atomic relation;
//! - a list of codes is `0` when empty, else `1 + ⟨head, tail⟩`.

use num_traits::{ToPrimitive, Zero};

use super::pair::{cpair, cpair_inv};
use crate::fol::{Formula, FormulaKind, FuncSym, Language, NumeralValue, RelSym, Term, TermKind, Var};
use crate::Nat;

/// Returned by decoders on numbers that do not denote an object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("not a code")]
pub struct NotACode;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodingError {
    #[error("code exceeds the budget of {0} bits")]
    BudgetExceeded(u64),
}

/// Upper limit on the bit length of any intermediate code.
///
/// Codes roughly double in length with each nesting level, so a budget is the
/// only thing standing between a harmless-looking call and an unbounded
/// allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeBudget {
    max_bits: u64,
}

impl CodeBudget {
    /// 2^24 bits, i.e. codes up to 2 MiB.
    pub const DEFAULT: CodeBudget = CodeBudget { max_bits: 1 << 24 };

    pub fn bits(max_bits: u64) -> CodeBudget {
        CodeBudget { max_bits }
    }

    pub fn max_bits(&self) -> u64 {
        self.max_bits
    }

    /// `cpair` that refuses to build a result longer than the budget.
    pub fn pair(&self, a: &Nat, b: &Nat) -> Result<Nat, CodingError> {
        let m = a.bits().max(b.bits());
        // the result has between 2m-2 and 2m+1 bits
        if 2 * m > self.max_bits + 2 {
            return Err(CodingError::BudgetExceeded(self.max_bits));
        }
        let c = cpair(a, b);
        if c.bits() > self.max_bits {
            return Err(CodingError::BudgetExceeded(self.max_bits));
        }
        Ok(c)
    }

    // A formula of depth d has a code of at least ~2^(d-8) bits, whatever its
    // shape, so deep formulas can be rejected before recursing into them.
    fn admits_depth(&self, depth: usize) -> bool {
        let log = 64 - self.max_bits.leading_zeros() as usize;
        depth <= log + 10
    }
}

impl Default for CodeBudget {
    fn default() -> Self {
        CodeBudget::DEFAULT
    }
}

fn nat(n: u64) -> Nat {
    Nat::from(n)
}

/// `⌈t⌉` under the default budget.
pub fn code_term(t: &Term) -> Result<Nat, CodingError> {
    try_code_term(t, CodeBudget::DEFAULT)
}

pub fn try_code_term(t: &Term, budget: CodeBudget) -> Result<Nat, CodingError> {
    match t.kind() {
        TermKind::Var(v) => budget.pair(&Nat::zero(), &nat(v)),
        TermKind::Apply(f, args) => {
            let args = try_code_terms(args, budget)?;
            budget.pair(&nat(1 + f.0 as u64), &args)
        }
        TermKind::Numeral(n) => {
            let value = n.to_nat(budget)?;
            numeral_code(n.succ_symbol(), n.zero_symbol(), &value, budget)
        }
    }
}

pub fn try_code_terms(ts: &[Term], budget: CodeBudget) -> Result<Nat, CodingError> {
    let mut acc = Nat::zero();
    for t in ts.iter().rev() {
        acc = budget.pair(&try_code_term(t, budget)?, &acc)?;
    }
    Ok(acc)
}

pub fn code_terms(ts: &[Term]) -> Result<Nat, CodingError> {
    try_code_terms(ts, CodeBudget::DEFAULT)
}

fn numeral_code(succ: FuncSym, zero: FuncSym, n: &Nat, budget: CodeBudget) -> Result<Nat, CodingError> {
    let s = nat(1 + succ.0 as u64);
    let mut c = budget.pair(&nat(1 + zero.0 as u64), &Nat::zero())?;
    let mut k = Nat::zero();
    while &k < n {
        c = budget.pair(&s, &budget.pair(&c, &Nat::zero())?)?;
        k += 1u32;
    }
    Ok(c)
}

/// `⌈S^n(0)⌉` over LNT/LNN: `c(0) = 14`, `c(k+1) = ⟨3, ⟨c(k), 0⟩⟩`.
///
/// The bit length doubles with every step; `n` beyond 6 or so is out of
/// reach of any sensible budget.
pub fn code_numeral_term(n: &Nat, budget: CodeBudget) -> Result<Nat, CodingError> {
    let (succ, zero) = Language::lnt().numeral_symbols().expect("LNT has numerals");
    numeral_code(succ, zero, n, budget)
}

/// `⌈f⌉` under the default budget.
pub fn code_formula(f: &Formula) -> Result<Nat, CodingError> {
    try_code_formula(f, CodeBudget::DEFAULT)
}

pub fn try_code_formula(f: &Formula, budget: CodeBudget) -> Result<Nat, CodingError> {
    if !budget.admits_depth(f.depth()) {
        return Err(CodingError::BudgetExceeded(budget.max_bits));
    }
    let (tag, body) = match f.kind() {
        FormulaKind::Equal(a, b) => (0, budget.pair(&try_code_term(a, budget)?, &try_code_term(b, budget)?)?),
        FormulaKind::Imp(a, b) => (
            1,
            budget.pair(&try_code_formula(a, budget)?, &try_code_formula(b, budget)?)?,
        ),
        FormulaKind::Not(a) => (2, try_code_formula(a, budget)?),
        FormulaKind::Forall(v, a) => (3, budget.pair(&nat(v), &try_code_formula(a, budget)?)?),
        FormulaKind::Atomic(r, ts) => (4 + r.0 as u64, try_code_terms(ts, budget)?),
    };
    budget.pair(&nat(tag), &body)
}

/// `0` for the empty list, `1 + ⟨h, code(t)⟩` otherwise.
pub fn code_list(items: &[Nat]) -> Nat {
    let mut acc = Nat::zero();
    for h in items.iter().rev() {
        acc = cpair(h, &acc) + 1u32;
    }
    acc
}

/// Every natural number codes exactly one list.
pub fn decode_list(n: &Nat) -> Vec<Nat> {
    let mut out = Vec::new();
    let mut cur = n.clone();
    while !cur.is_zero() {
        let (h, t) = cpair_inv(&(cur - 1u32));
        out.push(h);
        cur = t;
    }
    out
}

pub(crate) fn to_var(n: &Nat) -> Result<Var, NotACode> {
    n.to_u64().ok_or(NotACode)
}

pub(crate) fn to_index(n: &Nat) -> Result<u32, NotACode> {
    n.to_u32().ok_or(NotACode)
}

/// Decodes a term over `lang`.
pub fn decode_term(lang: &Language, n: &Nat) -> Result<Term, NotACode> {
    let (tag, rest) = cpair_inv(n);
    if tag.is_zero() {
        return Ok(Term::var(to_var(&rest)?));
    }
    let f = FuncSym(to_index(&(tag - 1u32))?);
    let arity = lang.func_arity(f).ok_or(NotACode)?;
    let args = decode_terms(lang, &rest, arity)?;
    Ok(Term::apply(lang, f, args).expect("arity checked"))
}

/// Decodes a list of exactly `arity` terms; the list must end in `0`.
pub fn decode_terms(lang: &Language, n: &Nat, arity: usize) -> Result<Vec<Term>, NotACode> {
    let mut out = Vec::with_capacity(arity);
    let mut cur = n.clone();
    for _ in 0..arity {
        let (h, t) = cpair_inv(&cur);
        out.push(decode_term(lang, &h)?);
        cur = t;
    }
    if !cur.is_zero() {
        return Err(NotACode);
    }
    Ok(out)
}

/// Decodes a formula over `lang`.
pub fn decode_formula(lang: &Language, n: &Nat) -> Result<Formula, NotACode> {
    let (tag, body) = cpair_inv(n);
    let tag = tag.to_u64().ok_or(NotACode)?;
    Ok(match tag {
        0 => {
            let (a, b) = cpair_inv(&body);
            Formula::equal(decode_term(lang, &a)?, decode_term(lang, &b)?)
        }
        1 => {
            let (a, b) = cpair_inv(&body);
            Formula::imp(decode_formula(lang, &a)?, decode_formula(lang, &b)?)
        }
        2 => Formula::not(decode_formula(lang, &body)?),
        3 => {
            let (v, a) = cpair_inv(&body);
            Formula::forall(to_var(&v)?, decode_formula(lang, &a)?)
        }
        t => {
            let r = RelSym(u32::try_from(t - 4).map_err(|_| NotACode)?);
            let arity = lang.rel_arity(r).ok_or(NotACode)?;
            Formula::atomic(lang, r, decode_terms(lang, &body, arity)?).expect("arity checked")
        }
    })
}

/// True if the term contains a symbolic `CodeOf` numeral, i.e. its code is
/// too large to have been materialized.
pub fn has_symbolic_numeral(t: &Term) -> bool {
    match t.kind() {
        TermKind::Var(_) => false,
        TermKind::Apply(_, args) => args.iter().any(has_symbolic_numeral),
        TermKind::Numeral(n) => matches!(n.value(), NumeralValue::CodeOf(_)),
    }
}
