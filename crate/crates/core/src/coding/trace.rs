//! Traces of code-level substitution.
//!
//! A trace records every recursive call made while computing `φ[x_v/s]`. Each
//! node is coded as `⟨⟨in, ⟨v, ⟨s, out⟩⟩⟩, children⟩` with `children` a list
//! code. A node has no children for atomic formulas and for `∀x_v`, one for
//! `¬` and for a `∀` that needs no renaming, two for `⇒`, and two for a
//! renamed `∀x_j.g`: first `g[x_j/x_k]`, then the result of that with
//! `[x_v/s]`. The intermediate renamed formula is therefore kept in the trace
//! as the first child's output.
//!
//! Checking a trace only looks at one node at a time, which is what makes
//! "is this a valid trace" a simple (primitive recursive) predicate.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::codes::{code_list, decode_list, to_var, CodingError, NotACode};
use super::pair::{cpair, cpair_inv};
use super::subst::{
    code_sub_term, join_list, rename_target, term_code_free_vars, var_code, view_formula, view_term, FormulaCode,
    TermCode,
};
use super::{code_formula, code_term};
use crate::fol::{Formula, Language, Term, Var};
use crate::Nat;

/// One call of substitution with its sub-calls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubTrace {
    pub input: Nat,
    pub var: Var,
    pub term: Nat,
    pub output: Nat,
    pub children: Vec<SubTrace>,
}

/// The trace of `φ[x_v/s]`.
pub fn trace_sub(lang: &Language, phi: &Formula, v: Var, s: &Term) -> Result<SubTrace, CodingError> {
    let fc = code_formula(phi)?;
    let sc = code_term(s)?;
    Ok(trace_sub_code(lang, &fc, v, &sc).expect("codes of well-formed syntax"))
}

/// The trace of the substitution on codes.
pub fn trace_sub_code(lang: &Language, fc: &Nat, v: Var, sc: &Nat) -> Result<SubTrace, NotACode> {
    let s_vars = term_code_free_vars(lang, sc)?;
    build(lang, fc, v, sc, &s_vars)
}

fn build(lang: &Language, fc: &Nat, v: Var, sc: &Nat, s_vars: &BTreeSet<Var>) -> Result<SubTrace, NotACode> {
    let tag = |t: u64, body: Nat| cpair(&Nat::from(t), &body);
    let (output, children) = match view_formula(lang, fc)? {
        FormulaCode::Equal(a, b) => (
            tag(
                0,
                cpair(&code_sub_term(lang, &a, v, sc)?, &code_sub_term(lang, &b, v, sc)?),
            ),
            vec![],
        ),
        FormulaCode::Atomic(r, ts) => {
            let ts = ts
                .iter()
                .map(|t| code_sub_term(lang, t, v, sc))
                .collect::<Result<Vec<_>, _>>()?;
            (tag(4 + r.0 as u64, join_list(&ts)), vec![])
        }
        FormulaCode::Imp(a, b) => {
            let ta = build(lang, &a, v, sc, s_vars)?;
            let tb = build(lang, &b, v, sc, s_vars)?;
            (tag(1, cpair(&ta.output, &tb.output)), vec![ta, tb])
        }
        FormulaCode::Not(a) => {
            let ta = build(lang, &a, v, sc, s_vars)?;
            (tag(2, ta.output.clone()), vec![ta])
        }
        FormulaCode::Forall(j, g) => {
            if j == v {
                super::subst::formula_code_free_vars(lang, &g)?;
                (fc.clone(), vec![])
            } else if let Some(k) = rename_target(lang, j, &g, v, s_vars)? {
                let t1 = build(lang, &g, j, &var_code(k), &[k].into())?;
                let t2 = build(lang, &t1.output, v, sc, s_vars)?;
                (tag(3, cpair(&Nat::from(k), &t2.output)), vec![t1, t2])
            } else {
                let t1 = build(lang, &g, v, sc, s_vars)?;
                (tag(3, cpair(&Nat::from(j), &t1.output)), vec![t1])
            }
        }
    };
    Ok(SubTrace {
        input: fc.clone(),
        var: v,
        term: sc.clone(),
        output,
        children,
    })
}

/// Injective code of a trace tree.
pub fn code_trace(tr: &SubTrace) -> Nat {
    let kids: Vec<Nat> = tr.children.iter().map(code_trace).collect();
    let head = cpair(&tr.input, &cpair(&Nat::from(tr.var), &cpair(&tr.term, &tr.output)));
    cpair(&head, &code_list(&kids))
}

struct Node {
    input: Nat,
    var: Var,
    term: Nat,
    output: Nat,
    children: Vec<Nat>,
}

fn split_node(n: &Nat) -> Result<Node, NotACode> {
    let (head, kids) = cpair_inv(n);
    let (input, rest) = cpair_inv(&head);
    let (var, rest) = cpair_inv(&rest);
    let (term, output) = cpair_inv(&rest);
    Ok(Node {
        input,
        var: to_var(&var)?,
        term,
        output,
        children: decode_list(&kids),
    })
}

/// True iff `n` codes a trace in which every node is consistent with the
/// substitution equations.
pub fn check_trace_code(lang: &Language, n: &Nat) -> bool {
    check_node(lang, n).is_ok()
}

/// Checks a node and its descendants; returns the node's fields on success.
fn check_node(lang: &Language, n: &Nat) -> Result<Node, NotACode> {
    let node = split_node(n)?;
    let s_vars = term_code_free_vars(lang, &node.term)?;
    let (v, sc) = (node.var, &node.term);
    let tag = |t: u64, body: Nat| cpair(&Nat::from(t), &body);
    let expect_child = |i: usize, input: &Nat, var: Var, term: &Nat| -> Result<Nat, NotACode> {
        let c = check_node(lang, node.children.get(i).ok_or(NotACode)?)?;
        if &c.input == input && c.var == var && &c.term == term {
            Ok(c.output)
        } else {
            Err(NotACode)
        }
    };
    let (expected, arity) = match view_formula(lang, &node.input)? {
        FormulaCode::Equal(a, b) => (
            tag(
                0,
                cpair(&code_sub_term(lang, &a, v, sc)?, &code_sub_term(lang, &b, v, sc)?),
            ),
            0,
        ),
        FormulaCode::Atomic(r, ts) => {
            let ts = ts
                .iter()
                .map(|t| code_sub_term(lang, t, v, sc))
                .collect::<Result<Vec<_>, _>>()?;
            (tag(4 + r.0 as u64, join_list(&ts)), 0)
        }
        FormulaCode::Imp(a, b) => {
            let oa = expect_child(0, &a, v, sc)?;
            let ob = expect_child(1, &b, v, sc)?;
            (tag(1, cpair(&oa, &ob)), 2)
        }
        FormulaCode::Not(a) => (tag(2, expect_child(0, &a, v, sc)?), 1),
        FormulaCode::Forall(j, g) => {
            if j == v {
                super::subst::formula_code_free_vars(lang, &g)?;
                (node.input.clone(), 0)
            } else if let Some(k) = rename_target(lang, j, &g, v, &s_vars)? {
                let renamed = expect_child(0, &g, j, &var_code(k))?;
                let body = expect_child(1, &renamed, v, sc)?;
                (tag(3, cpair(&Nat::from(k), &body)), 2)
            } else {
                (tag(3, cpair(&Nat::from(j), &expect_child(0, &g, v, sc)?)), 1)
            }
        }
    };
    if node.children.len() == arity && expected == node.output {
        Ok(node)
    } else {
        Err(NotACode)
    }
}

/// The root output of a valid trace code.
pub fn extract_from_trace(lang: &Language, n: &Nat) -> Result<Nat, NotACode> {
    check_node(lang, n).map(|node| node.output)
}

/// An upper bound on the code of the trace of `[x_v/s]` applied to the
/// formula coded by `fc`, computed from the shape of that formula.
///
/// Every formula met during the substitution has the shape of a subformula of
/// `φ`, with variables no larger than
/// `Vmax = max(largest variable of φ, v, ⌈s⌉) + depth(φ) + 1` (each nested
/// renaming picks an index at most one above those in use) and with term
/// positions holding either such a variable or the substituted term. Replacing
/// every variable by `Vmax` and every variable term by the larger of `⌈s⌉` and
/// `⌈x_Vmax⌉` therefore bounds every input and output, and cpair is monotone.
///
/// The bound is monotone in `v` and `⌈s⌉` but, being shape directed, not in
/// `fc`.
pub fn trace_bound(lang: &Language, fc: &Nat, v: Var, sc: &Nat) -> Result<Nat, NotACode> {
    term_code_free_vars(lang, sc)?;
    let (max_var, depth) = formula_stats(lang, fc)?;
    let vmax = Nat::from(max_var.max(v)).max(sc.clone()) + depth + 1u32;
    let q = var_code_nat(&vmax).max(sc.clone());
    Ok(trace_bound_rec(lang, fc, &vmax, &q)?.0)
}

fn var_code_nat(v: &Nat) -> Nat {
    cpair(&Nat::zero(), v)
}

fn formula_stats(lang: &Language, fc: &Nat) -> Result<(Var, u64), NotACode> {
    fn term_max(lang: &Language, n: &Nat) -> Result<Var, NotACode> {
        Ok(match view_term(lang, n)? {
            TermCode::Var(v) => v,
            TermCode::Apply(_, args) => {
                let mut m = 0;
                for a in &args {
                    m = m.max(term_max(lang, a)?);
                }
                m
            }
        })
    }
    Ok(match view_formula(lang, fc)? {
        FormulaCode::Equal(a, b) => (term_max(lang, &a)?.max(term_max(lang, &b)?), 0),
        FormulaCode::Atomic(_, ts) => {
            let mut m = 0;
            for t in &ts {
                m = m.max(term_max(lang, t)?);
            }
            (m, 0)
        }
        FormulaCode::Imp(a, b) => {
            let (ma, da) = formula_stats(lang, &a)?;
            let (mb, db) = formula_stats(lang, &b)?;
            (ma.max(mb), 1 + da.max(db))
        }
        FormulaCode::Not(a) => {
            let (m, d) = formula_stats(lang, &a)?;
            (m, d + 1)
        }
        FormulaCode::Forall(j, a) => {
            let (m, d) = formula_stats(lang, &a)?;
            (m.max(j), d + 1)
        }
    })
}

/// Returns (trace bound, formula bound) for the shape coded by `fc`.
fn trace_bound_rec(lang: &Language, fc: &Nat, vmax: &Nat, q: &Nat) -> Result<(Nat, Nat), NotACode> {
    fn term_bound(lang: &Language, n: &Nat, q: &Nat) -> Result<Nat, NotACode> {
        Ok(match view_term(lang, n)? {
            TermCode::Var(_) => q.clone(),
            TermCode::Apply(f, args) => {
                let args = args
                    .iter()
                    .map(|a| term_bound(lang, a, q))
                    .collect::<Result<Vec<_>, _>>()?;
                cpair(&Nat::from(1 + f.0 as u64), &join_list(&args))
            }
        })
    }
    let tag = |t: u64, body: Nat| cpair(&Nat::from(t), &body);
    let (fb, kids) = match view_formula(lang, fc)? {
        FormulaCode::Equal(a, b) => (
            tag(0, cpair(&term_bound(lang, &a, q)?, &term_bound(lang, &b, q)?)),
            vec![],
        ),
        FormulaCode::Atomic(r, ts) => {
            let ts = ts
                .iter()
                .map(|t| term_bound(lang, t, q))
                .collect::<Result<Vec<_>, _>>()?;
            (tag(4 + r.0 as u64, join_list(&ts)), vec![])
        }
        FormulaCode::Imp(a, b) => {
            let (ta, fa) = trace_bound_rec(lang, &a, vmax, q)?;
            let (tb, fb) = trace_bound_rec(lang, &b, vmax, q)?;
            (tag(1, cpair(&fa, &fb)), vec![ta, tb])
        }
        FormulaCode::Not(a) => {
            let (ta, fa) = trace_bound_rec(lang, &a, vmax, q)?;
            (tag(2, fa), vec![ta])
        }
        FormulaCode::Forall(_, g) => {
            let (tg, fg) = trace_bound_rec(lang, &g, vmax, q)?;
            (tag(3, cpair(vmax, &fg)), vec![tg.clone(), tg])
        }
    };
    let head = cpair(&fb, &cpair(vmax, &cpair(q, &fb)));
    Ok((cpair(&head, &code_list(&kids)), fb))
}

/// Exhaustive search for the trace below `min(trace_bound, limit)`.
///
/// This is the search the bound exists for. It is only practical on the very
/// smallest inputs; `limit` keeps it from running away.
pub fn search_trace(lang: &Language, fc: &Nat, v: Var, sc: &Nat, limit: &Nat) -> Option<Nat> {
    let bound = trace_bound(lang, fc, v, sc).ok()?.min(limit.clone());
    let mut n = Nat::zero();
    while n <= bound {
        if let Ok(node) = check_node(lang, &n) {
            if &node.input == fc && node.var == v && &node.term == sc {
                return Some(n);
            }
        }
        n += 1u32;
    }
    None
}

/// Number of calls recorded in the trace.
pub fn trace_size(tr: &SubTrace) -> usize {
    1 + tr.children.iter().map(trace_size).sum::<usize>()
}
