//! Evaluation of arithmetic formulas in the standard model.
//!
//! Unbounded quantifiers cannot be decided, so the sound evaluator is
//! three-valued: it answers `True` or `False` only when that answer holds in
//! ℕ, and `Unknown` otherwise. Beyond plain search up to the bound it
//! recognizes two shapes it can decide outright:
//!
//! - `∀v.(v < t ⇒ g)` with `v` not in `t` ranges over `[0, t)`, and is
//!   evaluated exactly when `t ≤ bound + 1`;
//! - `∀v.¬h` where a conjunct of `h` is an equation linear in `v` whose other
//!   variables are all bound: the equation pins down the only possible `v`.
//!
//! Both refinements keep results monotone in the bound.

use std::collections::{BTreeMap, HashMap};

use num_traits::{ToPrimitive, Zero};

use super::{LT, PLUS, SUCC, TIMES, ZERO};
use crate::coding::CodeBudget;
use crate::fol::{Formula, FormulaKind, Term, TermKind, Var};
use crate::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    True,
    False,
    Unknown,
}

impl std::ops::Not for TruthValue {
    type Output = TruthValue;

    fn not(self) -> TruthValue {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::False => TruthValue::True,
            TruthValue::Unknown => TruthValue::Unknown,
        }
    }
}

impl TruthValue {
    pub fn from_bool(b: bool) -> TruthValue {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("no value for free variable x{0}")]
    MissingBinding(Var),
    #[error("numeral too large to evaluate")]
    BudgetExceeded,
    #[error("symbol outside LNN: {0}")]
    Unsupported(String),
}

/// Sound three-valued evaluator.
///
/// Quantifier witnesses are searched among `[0, min(bound, cap)]` and the
/// hint values that do not exceed `bound`; hints are tried first. Search
/// never lets a result depend on values above `bound`.
#[derive(Debug, Clone)]
pub struct Evaluator {
    bound: Nat,
    cap: u64,
    hints: Vec<Nat>,
}

// variable bindings, innermost last
type Env = Vec<(Var, Nat)>;

// results of quantifier nodes, keyed by node and the values of its free
// variables; a formula's value depends on nothing else
type Memo = HashMap<(usize, Vec<Nat>), TruthValue>;

const MEMO_LIMIT: usize = 1 << 20;

fn lookup(env: &Env, v: Var) -> Option<&Nat> {
    env.iter().rev().find(|(w, _)| *w == v).map(|(_, n)| n)
}

impl Evaluator {
    pub fn new(bound: impl Into<Nat>) -> Evaluator {
        let bound = bound.into();
        let cap = bound.to_u64().unwrap_or(u64::MAX);
        Evaluator {
            bound,
            cap,
            hints: vec![],
        }
    }

    /// Limits plain enumeration to `[0, cap]`; hints are still tried.
    pub fn with_cap(mut self, cap: u64) -> Evaluator {
        self.cap = cap;
        self
    }

    pub fn with_hints(mut self, hints: impl IntoIterator<Item = Nat>) -> Evaluator {
        let mut hs: Vec<Nat> = hints.into_iter().filter(|h| *h <= self.bound).collect();
        hs.sort();
        hs.dedup();
        self.hints = hs;
        self
    }

    pub fn bound(&self) -> &Nat {
        &self.bound
    }

    pub fn eval(&self, f: &Formula, env: &BTreeMap<Var, Nat>) -> Result<TruthValue, EvalError> {
        let mut stack: Env = env.iter().map(|(k, v)| (*k, v.clone())).collect();
        if let Some(v) = f.free_vars().iter().find(|v| !env.contains_key(v)) {
            return Err(EvalError::MissingBinding(*v));
        }
        self.formula(f, &mut stack, &mut Memo::new())
    }

    fn candidates(&self) -> impl Iterator<Item = Nat> + '_ {
        let top = self.bound.to_u64().map_or(self.cap, |b| b.min(self.cap));
        self.hints
            .iter()
            .cloned()
            .chain((0..=top).map(Nat::from).filter(move |k| {
                // hints were already tried
                self.hints.binary_search(k).is_err()
            }))
    }

    fn formula(&self, f: &Formula, env: &mut Env, memo: &mut Memo) -> Result<TruthValue, EvalError> {
        use TruthValue::*;
        Ok(match f.kind() {
            FormulaKind::Equal(a, b) => from_bool(term(a, env)? == term(b, env)?),
            FormulaKind::Atomic(r, ts) => atomic(r, ts, env)?,
            FormulaKind::Imp(a, b) => match self.formula(a, env, memo)? {
                False => True,
                av => match (av, self.formula(b, env, memo)?) {
                    (_, True) => True,
                    (True, False) => False,
                    _ => Unknown,
                },
            },
            FormulaKind::Not(a) => !self.formula(a, env, memo)?,
            FormulaKind::Forall(v, g) => {
                let key = (
                    f.node_id(),
                    f.free_vars()
                        .iter()
                        .map(|&w| lookup(env, w).cloned().unwrap_or_default())
                        .collect(),
                );
                if let Some(&r) = memo.get(&key) {
                    return Ok(r);
                }
                let r = self.forall(v, g, env, memo)?;
                if memo.len() >= MEMO_LIMIT {
                    memo.clear();
                }
                memo.insert(key, r);
                r
            }
        })
    }

    fn forall(&self, v: Var, g: &Formula, env: &mut Env, memo: &mut Memo) -> Result<TruthValue, EvalError> {
        use TruthValue::*;
        if let Some(limit) = bounded_range(v, g, env)? {
            let (_, body) = g.as_imp().expect("bounded pattern");
            let exact = limit <= &self.bound + 1u32;
            let top = if exact { limit } else { &self.bound + 1u32 };
            let mut acc = True;
            let mut k = Nat::zero();
            while k < top {
                env.push((v, k.clone()));
                let r = self.formula(body, env, memo);
                env.pop();
                match r? {
                    False => return Ok(False),
                    Unknown => acc = Unknown,
                    True => {}
                }
                k += 1u32;
            }
            return Ok(if exact { acc } else { Unknown });
        }
        if let Some(h) = g.as_not() {
            if let Some(solutions) = solve_for(v, h, env)? {
                let mut acc = True;
                for k in solutions {
                    env.push((v, k));
                    let r = self.formula(g, env, memo);
                    env.pop();
                    match r? {
                        False => return Ok(False),
                        Unknown => acc = Unknown,
                        True => {}
                    }
                }
                return Ok(acc);
            }
        }
        for k in self.candidates() {
            env.push((v, k));
            let r = self.is(False, g, env, memo);
            env.pop();
            if r? {
                return Ok(False);
            }
        }
        Ok(Unknown)
    }

    /// Whether `f` evaluates to `want` (`True` or `False`), stopping as soon
    /// as the answer is clear. Candidate search only needs this.
    fn is(&self, want: TruthValue, f: &Formula, env: &mut Env, memo: &mut Memo) -> Result<bool, EvalError> {
        use TruthValue::*;
        match f.kind() {
            FormulaKind::Not(a) => self.is(!want, a, env, memo),
            FormulaKind::Imp(a, b) => match want {
                True => Ok(self.is(False, a, env, memo)? || self.is(True, b, env, memo)?),
                _ => Ok(self.is(True, a, env, memo)? && self.is(False, b, env, memo)?),
            },
            _ => Ok(self.formula(f, env, memo)? == want),
        }
    }
}

fn from_bool(b: bool) -> TruthValue {
    TruthValue::from_bool(b)
}

/// Sound evaluation with plain search up to `bound`.
pub fn eval_formula(f: &Formula, env: &BTreeMap<Var, Nat>, bound: impl Into<Nat>) -> Result<TruthValue, EvalError> {
    Evaluator::new(bound).eval(f, env)
}

fn numeral_value(t: &Term) -> Result<Nat, EvalError> {
    let TermKind::Numeral(n) = t.kind() else { unreachable!() };
    n.to_nat(CodeBudget::DEFAULT).map_err(|_| EvalError::BudgetExceeded)
}

fn term(t: &Term, env: &Env) -> Result<Nat, EvalError> {
    Ok(match t.kind() {
        TermKind::Var(v) => lookup(env, v).cloned().ok_or(EvalError::MissingBinding(v))?,
        TermKind::Numeral(_) => numeral_value(t)?,
        TermKind::Apply(f, args) => match f {
            PLUS => term(&args[0], env)? + term(&args[1], env)?,
            TIMES => term(&args[0], env)? * term(&args[1], env)?,
            SUCC => term(&args[0], env)? + 1u32,
            ZERO => Nat::zero(),
            _ => return Err(EvalError::Unsupported(format!("function f{}", f.0))),
        },
    })
}

fn atomic(r: crate::fol::RelSym, ts: &[Term], env: &Env) -> Result<TruthValue, EvalError> {
    if r != LT || ts.len() != 2 {
        return Err(EvalError::Unsupported(format!("relation r{}", r.0)));
    }
    Ok(from_bool(term(&ts[0], env)? < term(&ts[1], env)?))
}

/// For `∀v.(v < t ⇒ …)` with `v` not free in `t`, the value of `t`.
fn bounded_range(v: Var, g: &Formula, env: &Env) -> Result<Option<Nat>, EvalError> {
    let Some((guard, _)) = g.as_imp() else {
        return Ok(None);
    };
    let FormulaKind::Atomic(r, ts) = guard.kind() else {
        return Ok(None);
    };
    if r != LT || ts.len() != 2 || ts[0].as_var() != Some(v) || ts[1].has_free_var(v) {
        return Ok(None);
    }
    Ok(Some(term(&ts[1], env)?))
}

/// `t` as `a·v + b`, if it is linear in `v` and its other variables are bound.
fn linear(t: &Term, v: Var, env: &Env) -> Result<Option<(Nat, Nat)>, EvalError> {
    Ok(match t.kind() {
        TermKind::Var(w) if w == v => Some((1u32.into(), Nat::zero())),
        TermKind::Var(w) => lookup(env, w).map(|n| (Nat::zero(), n.clone())),
        TermKind::Numeral(_) => Some((Nat::zero(), numeral_value(t)?)),
        TermKind::Apply(f, args) => {
            let mut parts = Vec::with_capacity(args.len());
            for a in args {
                match linear(a, v, env)? {
                    Some(p) => parts.push(p),
                    None => return Ok(None),
                }
            }
            match f {
                PLUS => {
                    let (a2, b2) = parts.pop().unwrap();
                    let (a1, b1) = parts.pop().unwrap();
                    Some((a1 + a2, b1 + b2))
                }
                TIMES => {
                    let (a2, b2) = parts.pop().unwrap();
                    let (a1, b1) = parts.pop().unwrap();
                    if a1.is_zero() {
                        Some((&b1 * a2, b1 * b2))
                    } else if a2.is_zero() {
                        Some((&b2 * a1, b1 * b2))
                    } else {
                        None
                    }
                }
                SUCC => {
                    let (a, b) = parts.pop().unwrap();
                    Some((a, b + 1u32))
                }
                ZERO => Some((Nat::zero(), Nat::zero())),
                _ => return Err(EvalError::Unsupported(format!("function f{}", f.0))),
            }
        }
    })
}

fn conjuncts<'a>(h: &'a Formula, out: &mut Vec<&'a Formula>) {
    if let Some((a, b)) = h.as_and() {
        conjuncts(a, out);
        conjuncts(b, out);
    } else {
        out.push(h);
    }
}

/// If the conjuncts of `h` leave at most one value of `v`, the complete list
/// of values for which `h` can hold. Two shapes are recognized: an equation
/// linear in `v`, and the remainder pair `v < m` with `∃q. t = q·m + v`.
fn solve_for(v: Var, h: &Formula, env: &Env) -> Result<Option<Vec<Nat>>, EvalError> {
    let mut parts = Vec::new();
    conjuncts(h, &mut parts);
    for c in &parts {
        let FormulaKind::Equal(l, r) = c.kind() else {
            continue;
        };
        if !l.has_free_var(v) && !r.has_free_var(v) {
            continue;
        }
        let (Some((a1, b1)), Some((a2, b2))) = (linear(l, v, env)?, linear(r, v, env)?) else {
            continue;
        };
        // a1·v + b1 = a2·v + b2
        if a1 == a2 {
            if b1 == b2 {
                continue;
            }
            return Ok(Some(vec![]));
        }
        let (da, db) = if a1 > a2 {
            if b2 < b1 {
                return Ok(Some(vec![]));
            }
            (a1 - a2, b2 - b1)
        } else {
            if b1 < b2 {
                return Ok(Some(vec![]));
            }
            (a2 - a1, b1 - b2)
        };
        return Ok(Some(if (&db % &da).is_zero() { vec![db / da] } else { vec![] }));
    }
    for c in &parts {
        let FormulaKind::Atomic(r, ts) = c.kind() else {
            continue;
        };
        if r != LT || ts.len() != 2 || ts[0].as_var() != Some(v) {
            continue;
        }
        let Some(m) = closed_value(&ts[1], v, env)? else {
            continue;
        };
        if m.is_zero() {
            return Ok(Some(vec![]));
        }
        for d in &parts {
            if let Some(t) = remainder_of(d, v, &m, env)? {
                return Ok(Some(vec![t % &m]));
            }
        }
    }
    Ok(None)
}

/// The value of `t` if it avoids `v` and all its variables are bound.
fn closed_value(t: &Term, v: Var, env: &Env) -> Result<Option<Nat>, EvalError> {
    if t.has_free_var(v) {
        return Ok(None);
    }
    Ok(linear(t, v, env)?.map(|(_, b)| b))
}

/// For `d = ∃q. t = q·m' + v` with `m'` evaluating to `m`, the value of `t`.
fn remainder_of(d: &Formula, v: Var, m: &Nat, env: &Env) -> Result<Option<Nat>, EvalError> {
    let Some((q, body)) = d.as_exists() else {
        return Ok(None);
    };
    let FormulaKind::Equal(l, r) = body.kind() else {
        return Ok(None);
    };
    let TermKind::Apply(PLUS, sum) = r.kind() else {
        return Ok(None);
    };
    let TermKind::Apply(TIMES, prod) = sum[0].kind() else {
        return Ok(None);
    };
    if q == v || sum[1].as_var() != Some(v) || prod[0].as_var() != Some(q) {
        return Ok(None);
    }
    if l.has_free_var(q) || prod[1].has_free_var(q) {
        return Ok(None);
    }
    match (closed_value(l, v, env)?, closed_value(&prod[1], v, env)?) {
        (Some(t), Some(m2)) if &m2 == m => Ok(Some(t)),
        _ => Ok(None),
    }
}

/// Exact evaluation in the finite structure where quantifiers range over
/// `[0, bound]` (terms are still computed in ℕ).
pub fn eval_bounded_domain(f: &Formula, env: &BTreeMap<Var, Nat>, bound: u64) -> Result<bool, EvalError> {
    if let Some(v) = f.free_vars().iter().find(|v| !env.contains_key(v)) {
        return Err(EvalError::MissingBinding(*v));
    }
    let mut stack: Env = env.iter().map(|(k, v)| (*k, v.clone())).collect();
    finite(f, &mut stack, bound)
}

fn finite(f: &Formula, env: &mut Env, bound: u64) -> Result<bool, EvalError> {
    Ok(match f.kind() {
        FormulaKind::Equal(a, b) => term(a, env)? == term(b, env)?,
        FormulaKind::Atomic(r, ts) => atomic(r, ts, env)? == TruthValue::True,
        FormulaKind::Imp(a, b) => !finite(a, env, bound)? || finite(b, env, bound)?,
        FormulaKind::Not(a) => !finite(a, env, bound)?,
        FormulaKind::Forall(v, g) => {
            for k in 0..=bound {
                env.push((v, Nat::from(k)));
                let r = finite(g, env, bound);
                env.pop();
                if !r? {
                    return Ok(false);
                }
            }
            true
        }
    })
}
