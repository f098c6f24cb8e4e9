//! Substitution carried out on codes, without decoding to syntax trees.
//!
//! The renaming rule is the one used by [`crate::fol::subst_formula`], so
//! `code_sub_formula(⌈φ⌉, v, ⌈s⌉) = ⌈φ[x_v/s]⌉` holds exactly.

use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};

use super::codes::{to_index, to_var, NotACode};
use super::pair::{cpair, cpair_inv};
use crate::fol::{fresh_var, FuncSym, Language, RelSym, Var};
use crate::Nat;

/// One level of a term code.
pub(crate) enum TermCode {
    Var(Var),
    Apply(FuncSym, Vec<Nat>),
}

/// One level of a formula code.
pub(crate) enum FormulaCode {
    Equal(Nat, Nat),
    Imp(Nat, Nat),
    Not(Nat),
    Forall(Var, Nat),
    Atomic(RelSym, Vec<Nat>),
}

fn split_list(n: &Nat, len: usize) -> Result<Vec<Nat>, NotACode> {
    let mut out = Vec::with_capacity(len);
    let mut cur = n.clone();
    for _ in 0..len {
        let (h, t) = cpair_inv(&cur);
        out.push(h);
        cur = t;
    }
    if cur.is_zero() {
        Ok(out)
    } else {
        Err(NotACode)
    }
}

pub(crate) fn join_list(items: &[Nat]) -> Nat {
    items.iter().rev().fold(Nat::zero(), |acc, h| cpair(h, &acc))
}

pub(crate) fn view_term(lang: &Language, n: &Nat) -> Result<TermCode, NotACode> {
    let (tag, rest) = cpair_inv(n);
    if tag.is_zero() {
        return Ok(TermCode::Var(to_var(&rest)?));
    }
    let f = FuncSym(to_index(&(tag - 1u32))?);
    let arity = lang.func_arity(f).ok_or(NotACode)?;
    Ok(TermCode::Apply(f, split_list(&rest, arity)?))
}

pub(crate) fn view_formula(lang: &Language, n: &Nat) -> Result<FormulaCode, NotACode> {
    let (tag, body) = cpair_inv(n);
    Ok(match tag.to_u64().ok_or(NotACode)? {
        0 => {
            let (a, b) = cpair_inv(&body);
            FormulaCode::Equal(a, b)
        }
        1 => {
            let (a, b) = cpair_inv(&body);
            FormulaCode::Imp(a, b)
        }
        2 => FormulaCode::Not(body),
        3 => {
            let (v, a) = cpair_inv(&body);
            FormulaCode::Forall(to_var(&v)?, a)
        }
        t => {
            let r = RelSym(u32::try_from(t - 4).map_err(|_| NotACode)?);
            let arity = lang.rel_arity(r).ok_or(NotACode)?;
            FormulaCode::Atomic(r, split_list(&body, arity)?)
        }
    })
}

pub(crate) fn var_code(v: Var) -> Nat {
    cpair(&Nat::zero(), &Nat::from(v))
}

/// Free variables of the term coded by `n`; fails if `n` is not a term code.
pub fn term_code_free_vars(lang: &Language, n: &Nat) -> Result<BTreeSet<Var>, NotACode> {
    let mut out = BTreeSet::new();
    collect_term_vars(lang, n, &mut out)?;
    Ok(out)
}

fn collect_term_vars(lang: &Language, n: &Nat, out: &mut BTreeSet<Var>) -> Result<(), NotACode> {
    match view_term(lang, n)? {
        TermCode::Var(v) => {
            out.insert(v);
        }
        TermCode::Apply(_, args) => {
            for a in &args {
                collect_term_vars(lang, a, out)?;
            }
        }
    }
    Ok(())
}

/// Free variables of the formula coded by `n`.
pub fn formula_code_free_vars(lang: &Language, n: &Nat) -> Result<BTreeSet<Var>, NotACode> {
    Ok(match view_formula(lang, n)? {
        FormulaCode::Equal(a, b) => {
            let mut s = term_code_free_vars(lang, &a)?;
            collect_term_vars(lang, &b, &mut s)?;
            s
        }
        FormulaCode::Atomic(_, ts) => {
            let mut s = BTreeSet::new();
            for t in &ts {
                collect_term_vars(lang, t, &mut s)?;
            }
            s
        }
        FormulaCode::Imp(a, b) => {
            let mut s = formula_code_free_vars(lang, &a)?;
            s.extend(formula_code_free_vars(lang, &b)?);
            s
        }
        FormulaCode::Not(a) => formula_code_free_vars(lang, &a)?,
        FormulaCode::Forall(v, a) => {
            let mut s = formula_code_free_vars(lang, &a)?;
            s.remove(&v);
            s
        }
    })
}

/// `⌈t[x_v/s]⌉` from `⌈t⌉` and `⌈s⌉`.
pub fn code_sub_term(lang: &Language, tc: &Nat, v: Var, sc: &Nat) -> Result<Nat, NotACode> {
    Ok(match view_term(lang, tc)? {
        TermCode::Var(w) if w == v => sc.clone(),
        TermCode::Var(_) => tc.clone(),
        TermCode::Apply(f, args) => {
            let args = args
                .iter()
                .map(|a| code_sub_term(lang, a, v, sc))
                .collect::<Result<Vec<_>, _>>()?;
            cpair(&Nat::from(1 + f.0 as u64), &join_list(&args))
        }
    })
}

/// The renaming decision at `∀x_j.g` for the substitution `[x_v/s]`:
/// `Some(k)` when the binder must become `x_k`.
pub(crate) fn rename_target(
    lang: &Language,
    j: Var,
    g: &Nat,
    v: Var,
    s_vars: &BTreeSet<Var>,
) -> Result<Option<Var>, NotACode> {
    if !s_vars.contains(&j) {
        return Ok(None);
    }
    let mut ex = formula_code_free_vars(lang, g)?;
    if !ex.contains(&v) {
        return Ok(None);
    }
    ex.extend(s_vars.iter().copied());
    ex.insert(j);
    Ok(Some(fresh_var(&ex)))
}

/// `⌈φ[x_v/s]⌉` computed from `⌈φ⌉` and `⌈s⌉`.
///
/// Fails with [`NotACode`] if either input is not a code over `lang`.
pub fn code_sub_formula(lang: &Language, fc: &Nat, v: Var, sc: &Nat) -> Result<Nat, NotACode> {
    let s_vars = term_code_free_vars(lang, sc)?;
    sub_formula(lang, fc, v, sc, &s_vars)
}

fn sub_formula(lang: &Language, fc: &Nat, v: Var, sc: &Nat, s_vars: &BTreeSet<Var>) -> Result<Nat, NotACode> {
    let tag = |t: u64, body: Nat| cpair(&Nat::from(t), &body);
    Ok(match view_formula(lang, fc)? {
        FormulaCode::Equal(a, b) => tag(
            0,
            cpair(&code_sub_term(lang, &a, v, sc)?, &code_sub_term(lang, &b, v, sc)?),
        ),
        FormulaCode::Atomic(r, ts) => {
            let ts = ts
                .iter()
                .map(|t| code_sub_term(lang, t, v, sc))
                .collect::<Result<Vec<_>, _>>()?;
            tag(4 + r.0 as u64, join_list(&ts))
        }
        FormulaCode::Imp(a, b) => tag(
            1,
            cpair(
                &sub_formula(lang, &a, v, sc, s_vars)?,
                &sub_formula(lang, &b, v, sc, s_vars)?,
            ),
        ),
        FormulaCode::Not(a) => tag(2, sub_formula(lang, &a, v, sc, s_vars)?),
        FormulaCode::Forall(j, g) => {
            if j == v {
                // still validate the body
                formula_code_free_vars(lang, &g)?;
                fc.clone()
            } else if let Some(k) = rename_target(lang, j, &g, v, s_vars)? {
                let renamed = sub_formula(lang, &g, j, &var_code(k), &[k].into())?;
                let body = sub_formula(lang, &renamed, v, sc, s_vars)?;
                tag(3, cpair(&Nat::from(k), &body))
            } else {
                tag(3, cpair(&Nat::from(j), &sub_formula(lang, &g, v, sc, s_vars)?))
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{code_formula, code_term};
    use crate::fol::{subst_formula, Formula, Term};

    fn v(i: Var) -> Term {
        Term::var(i)
    }

    #[test]
    fn equation_example() {
        let lnn = Language::lnn();
        let f = Formula::equal(v(0), v(1));
        let out = code_sub_formula(lnn, &code_formula(&f).unwrap(), 1, &code_term(&v(0)).unwrap());
        assert_eq!(out.unwrap(), Nat::zero());
    }

    #[test]
    fn renaming_matches_syntax() {
        let lnn = Language::lnn();
        let s = Term::apply(lnn, FuncSym(2), vec![v(0)]).unwrap();
        let f = Formula::forall(0, Formula::equal(v(0), v(1)));
        let expect = code_formula(&subst_formula(&f, 1, &s)).unwrap();
        let got = code_sub_formula(lnn, &code_formula(&f).unwrap(), 1, &code_term(&s).unwrap());
        assert_eq!(got.unwrap(), expect);
    }

    #[test]
    fn junk_is_not_a_code() {
        let lnn = Language::lnn();
        let junk = cpair(&Nat::from(9u32), &Nat::zero());
        assert_eq!(code_sub_formula(lnn, &junk, 0, &Nat::zero()), Err(NotACode));
        assert_eq!(code_sub_formula(lnn, &Nat::zero(), 0, &junk), Err(NotACode));
    }
}
