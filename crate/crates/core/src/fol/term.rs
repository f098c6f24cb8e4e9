use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Formula, FuncSym, Language, SyntaxError, Var};
use crate::coding::{self, CodeBudget};
use crate::Nat;

/// Numerals whose code fits in this many bits are always stored as literals.
/// A `CodeOf` numeral therefore always denotes a number wider than this.
pub(crate) const CODE_LITERAL_BITS: u64 = 4096;

/// A first-order term.
///
/// Terms are immutable and cheap to clone. Function applications are
/// arity-checked at construction. Over a language with `Succ` and `Zero`, any
/// closed term of the form `S(S(...(0)))` is stored as a [`Numeral`]; the
/// representation is canonical, so structural equality coincides with the
/// equality of the unary expansion.
#[derive(Clone)]
pub struct Term(TermNode);

#[derive(Clone)]
enum TermNode {
    Var(Var),
    Apply(FuncSym, Arc<[Term]>),
    Num(Arc<Numeral>),
}

/// Compact form of the closed term `S^n(0)`.
#[derive(Clone, Debug)]
pub struct Numeral {
    value: NumeralValue,
    succ: FuncSym,
    zero: FuncSym,
}

/// The number a numeral stands for.
#[derive(Clone, Debug)]
pub enum NumeralValue {
    Lit(Nat),
    /// The Goedel code of a formula, kept symbolic because the number itself
    /// is too large to materialize.
    CodeOf(Formula),
}

/// Borrowed view of a term's top constructor.
#[derive(Clone, Copy, Debug)]
pub enum TermKind<'a> {
    Var(Var),
    Apply(FuncSym, &'a [Term]),
    Numeral(&'a Numeral),
}

impl Numeral {
    pub fn value(&self) -> &NumeralValue {
        &self.value
    }

    pub fn literal(&self) -> Option<&Nat> {
        match &self.value {
            NumeralValue::Lit(n) => Some(n),
            NumeralValue::CodeOf(_) => None,
        }
    }

    pub fn succ_symbol(&self) -> FuncSym {
        self.succ
    }

    pub fn zero_symbol(&self) -> FuncSym {
        self.zero
    }

    /// The numeric value, materializing a symbolic code within `budget`.
    pub fn to_nat(&self, budget: CodeBudget) -> Result<Nat, coding::CodingError> {
        match &self.value {
            NumeralValue::Lit(n) => Ok(n.clone()),
            NumeralValue::CodeOf(f) => coding::try_code_formula(f, budget),
        }
    }
}

impl PartialEq for Numeral {
    fn eq(&self, other: &Self) -> bool {
        if self.succ != other.succ || self.zero != other.zero {
            return false;
        }
        match (&self.value, &other.value) {
            (NumeralValue::Lit(a), NumeralValue::Lit(b)) => a == b,
            // codes are injective
            (NumeralValue::CodeOf(a), NumeralValue::CodeOf(b)) => a == b,
            (NumeralValue::Lit(n), NumeralValue::CodeOf(f)) | (NumeralValue::CodeOf(f), NumeralValue::Lit(n)) => {
                if n.bits() <= CODE_LITERAL_BITS {
                    return false;
                }
                matches!(coding::try_code_formula(f, CodeBudget::bits(n.bits())), Ok(c) if &c == n)
            }
        }
    }
}

impl Term {
    pub fn var(v: Var) -> Term {
        Term(TermNode::Var(v))
    }

    /// Applies `f` to `args`, rejecting unknown symbols and wrong arities.
    pub fn apply(lang: &Language, f: FuncSym, args: Vec<Term>) -> Result<Term, SyntaxError> {
        let arity = lang.func_arity(f).ok_or(SyntaxError::UnknownFunction(f))?;
        if arity != args.len() {
            return Err(SyntaxError::FunctionArity {
                symbol: f,
                expected: arity,
                found: args.len(),
            });
        }
        Ok(Term::apply_unchecked(lang.numeral_symbols(), f, args))
    }

    pub(crate) fn apply_unchecked(numerals: Option<(FuncSym, FuncSym)>, f: FuncSym, args: Vec<Term>) -> Term {
        if let Some((succ, zero)) = numerals {
            if f == zero && args.is_empty() {
                return Term::numeral_with(succ, zero, BigUint::zero());
            }
            if f == succ && args.len() == 1 {
                if let TermNode::Num(n) = &args[0].0 {
                    if let NumeralValue::Lit(v) = &n.value {
                        if n.succ == succ && n.zero == zero {
                            return Term::numeral_with(succ, zero, v + 1u32);
                        }
                    }
                }
            }
        }
        Term(TermNode::Apply(f, args.into()))
    }

    /// The closed term `S^n(0)`.
    pub fn numeral(lang: &Language, n: Nat) -> Result<Term, SyntaxError> {
        let (succ, zero) = lang.numeral_symbols().ok_or(SyntaxError::NoNumerals)?;
        Ok(Term::numeral_with(succ, zero, n))
    }

    pub(crate) fn numeral_with(succ: FuncSym, zero: FuncSym, n: Nat) -> Term {
        Term(TermNode::Num(Arc::new(Numeral {
            value: NumeralValue::Lit(n),
            succ,
            zero,
        })))
    }

    /// The numeral for the code of `f`.
    ///
    /// Codes small enough to print are stored as literals; larger ones stay
    /// symbolic so the term is constant-size.
    pub fn code_numeral(lang: &Language, f: &Formula) -> Result<Term, SyntaxError> {
        let (succ, zero) = lang.numeral_symbols().ok_or(SyntaxError::NoNumerals)?;
        Ok(match coding::try_code_formula(f, CodeBudget::bits(CODE_LITERAL_BITS)) {
            Ok(c) => Term::numeral_with(succ, zero, c),
            Err(_) => Term(TermNode::Num(Arc::new(Numeral {
                value: NumeralValue::CodeOf(f.clone()),
                succ,
                zero,
            }))),
        })
    }

    pub fn kind(&self) -> TermKind<'_> {
        match &self.0 {
            TermNode::Var(v) => TermKind::Var(*v),
            TermNode::Apply(f, args) => TermKind::Apply(*f, args),
            TermNode::Num(n) => TermKind::Numeral(n),
        }
    }

    pub fn as_var(&self) -> Option<Var> {
        match self.0 {
            TermNode::Var(v) => Some(v),
            _ => None,
        }
    }

    /// One step of numeral unfolding: `n+1` becomes `S(n)`, `0` becomes `Zero()`.
    /// Returns `None` for non-numerals and symbolic codes.
    pub fn unfold_numeral(&self) -> Option<(FuncSym, Vec<Term>)> {
        let TermNode::Num(n) = &self.0 else {
            return None;
        };
        let v = n.literal()?;
        if v.is_zero() {
            Some((n.zero, vec![]))
        } else {
            let pred = Term::numeral_with(n.succ, n.zero, v - BigUint::one());
            Some((n.succ, vec![pred]))
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut out);
        out
    }

    pub fn collect_free_vars(&self, out: &mut BTreeSet<Var>) {
        match &self.0 {
            TermNode::Var(v) => {
                out.insert(*v);
            }
            TermNode::Apply(_, args) => args.iter().for_each(|a| a.collect_free_vars(out)),
            TermNode::Num(_) => {}
        }
    }

    pub fn has_free_var(&self, v: Var) -> bool {
        match &self.0 {
            TermNode::Var(w) => *w == v,
            TermNode::Apply(_, args) => args.iter().any(|a| a.has_free_var(v)),
            TermNode::Num(_) => false,
        }
    }

    /// Number of syntax nodes; a numeral counts as one.
    pub fn size(&self) -> usize {
        match &self.0 {
            TermNode::Var(_) | TermNode::Num(_) => 1,
            TermNode::Apply(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn check_language(&self, lang: &Language) -> Result<(), SyntaxError> {
        match &self.0 {
            TermNode::Var(_) => Ok(()),
            TermNode::Num(n) => {
                if lang.numeral_symbols() == Some((n.succ, n.zero)) {
                    Ok(())
                } else {
                    Err(SyntaxError::NoNumerals)
                }
            }
            TermNode::Apply(f, args) => {
                let arity = lang.func_arity(*f).ok_or(SyntaxError::UnknownFunction(*f))?;
                if arity != args.len() {
                    return Err(SyntaxError::FunctionArity {
                        symbol: *f,
                        expected: arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check_language(lang))
            }
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (TermNode::Var(a), TermNode::Var(b)) => a == b,
            (TermNode::Apply(f, xs), TermNode::Apply(g, ys)) => f == g && xs == ys,
            (TermNode::Num(a), TermNode::Num(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl Eq for Term {}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            TermNode::Var(v) => write!(f, "x{v}"),
            TermNode::Apply(s, args) => {
                write!(f, "f{}(", s.0)?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a:?}")?;
                }
                f.write_str(")")
            }
            TermNode::Num(n) => match &n.value {
                NumeralValue::Lit(v) => write!(f, "#{v}"),
                NumeralValue::CodeOf(g) => write!(f, "#code({g:?})"),
            },
        }
    }
}
