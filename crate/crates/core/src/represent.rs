//! Arithmetic formulas representing primitive recursive functions, and their
//! semantic verification over ℕ.
//!
//! A representing formula for an `n`-ary function has its output in `x0` and
//! its inputs in `x1 … xn`, and no other free variables.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{eq, lt, nat_to_term, plus, succ, times, var, zero, EvalError, Evaluator, TruthValue};
use crate::fol::{subst_simultaneous, Formula, FormulaKind, Term, Var};
use crate::primrec::{beta_encode, beta_modulus, eval_fast, recursion_values, PrimRecExpr, PrimRecKind};
use crate::Nat;

/// Plain search cap used by [`verify_instance`] besides the replayed witnesses.
pub const VERIFY_CAP: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("free variable x{var} outside x0..x{arity}")]
    StrayVariable { var: Var, arity: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepFormula {
    formula: Formula,
    arity: usize,
    source: Option<PrimRecExpr>,
}

impl RepFormula {
    /// Wraps a formula given as the graph of an `arity`-ary function.
    pub fn new(formula: Formula, arity: usize) -> Result<RepFormula, RepError> {
        if let Some(&var) = formula.free_vars().iter().find(|&&v| v > arity as Var) {
            return Err(RepError::StrayVariable { var, arity });
        }
        Ok(RepFormula {
            formula,
            arity,
            source: None,
        })
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The expression this formula was built from, if any.
    pub fn source(&self) -> Option<&PrimRecExpr> {
        self.source.as_ref()
    }

    pub fn output_var(&self) -> Var {
        0
    }

    pub fn input_vars(&self) -> impl Iterator<Item = Var> {
        1..=self.arity as Var
    }
}

pub fn represent(e: &PrimRecExpr) -> RepFormula {
    RepFormula {
        formula: rep(e),
        arity: e.arity(),
        source: Some(e.clone()),
    }
}

fn rename(f: &Formula, pairs: impl IntoIterator<Item = (Var, Term)>) -> Formula {
    let env: BTreeMap<Var, Term> = pairs.into_iter().collect();
    subst_simultaneous(f, &env)
}

fn rep(e: &PrimRecExpr) -> Formula {
    match e.kind() {
        PrimRecKind::Succ => eq(var(0), succ(var(1))),
        PrimRecKind::Zero => eq(var(0), zero()),
        PrimRecKind::Proj { m, .. } => eq(var(0), var(*m as Var + 1)),
        PrimRecKind::Compose { n, gs, h } => compose_rep(*n, gs, h),
        PrimRecKind::PrimRec { n, g, h } => prim_rec_rep(*n, g, h),
    }
}

/// `∃z1.(G1(z1; x) ∧ ∃z2.(G2(z2; x) ∧ … ∧ H(x0; z)))`, each `zj` above every
/// index free in the components. Every witness quantifier sits directly over
/// the conjunct that defines it.
fn compose_rep(n: usize, gs: &[PrimRecExpr], h: &PrimRecExpr) -> Formula {
    let m = gs.len();
    let z = |j: usize| (n.max(m) + 1 + j) as Var;
    let mut body = rename(&rep(h), (0..m).map(|j| (j as Var + 1, var(z(j)))));
    for (j, g) in gs.iter().enumerate().rev() {
        let gj = rename(&rep(g), [(0, var(z(j)))]);
        body = Formula::exists(z(j), Formula::and(gj, body));
    }
    body
}

/// With `n` parameters in `x2 … x(n+1)` and the recursion argument in `x1`:
///
/// ```text
/// ∃X ∃Y. β(X,Y,x1) = x0
///      ∧ ∃C. β(X,Y,0) = C ∧ G(C; y)
///      ∧ ∀I. I < x1 ⇒ ∃A. β(X,Y,I) = A ∧ ∃B. β(X,Y,S I) = B ∧ H(B; I, A, y)
/// ```
///
/// where `β(X,Y,t) = r` is `r < S(S t · Y) ∧ ∃Q. X = Q · S(S t · Y) + r`.
fn prim_rec_rep(n: usize, g: &PrimRecExpr, h: &PrimRecExpr) -> Formula {
    let base = n as Var + 2;
    let (x, y, i, a, b, c, q) = (base, base + 1, base + 2, base + 3, base + 4, base + 5, base + 6);
    let beta_is = |t: Term, r: Term| {
        let m = succ(times(succ(t), var(y)));
        Formula::and(
            lt(r.clone(), m.clone()),
            Formula::exists(q, eq(var(x), plus(times(var(q), m), r))),
        )
    };
    let params = |shift: i64| (0..n as Var).map(move |k| (((k + 1) as i64 + shift) as Var, var(k + 2)));
    let g_at = rename(&rep(g), std::iter::once((0, var(c))).chain(params(0)));
    let h_at = rename(
        &rep(h),
        [(0, var(b)), (1, var(i)), (2, var(a))].into_iter().chain(params(2)),
    );
    let last = beta_is(var(1), var(0));
    let first = Formula::exists(c, Formula::and(beta_is(zero(), var(c)), g_at));
    let step = Formula::forall(
        i,
        Formula::imp(
            lt(var(i), var(1)),
            Formula::exists(
                a,
                Formula::and(
                    beta_is(var(i), var(a)),
                    Formula::exists(b, Formula::and(beta_is(succ(var(i)), var(b)), h_at)),
                ),
            ),
        ),
    );
    Formula::exists(x, Formula::exists(y, Formula::and(last, Formula::and(first, step))))
}

/// Every existential witness the representing formula of `e` needs on
/// `args`, found by replaying the computation.
pub fn witnesses(e: &PrimRecExpr, args: &[Nat]) -> Result<Vec<Nat>, RepError> {
    if e.arity() != args.len() {
        return Err(RepError::ArityMismatch {
            expected: e.arity(),
            found: args.len(),
        });
    }
    let mut out = Vec::new();
    collect(e, args, &mut out);
    Ok(out)
}

fn collect(e: &PrimRecExpr, args: &[Nat], out: &mut Vec<Nat>) {
    match e.kind() {
        PrimRecKind::Succ | PrimRecKind::Zero | PrimRecKind::Proj { .. } => {}
        PrimRecKind::Compose { gs, h, .. } => {
            let mut inner = Vec::with_capacity(gs.len());
            for g in gs {
                inner.push(eval_fast(g, args).expect("arity checked"));
                collect(g, args, out);
            }
            out.extend(inner.iter().cloned());
            collect(h, &inner, out);
        }
        PrimRecKind::PrimRec { g, h, .. } => {
            let (rec, ys) = (&args[0], &args[1..]);
            let vals = recursion_values(g, h, rec, ys);
            let (bx, by) = beta_encode(&vals);
            for k in 0..vals.len() {
                let modulus = beta_modulus(&by, &Nat::from(k));
                out.push(&bx / modulus);
            }
            collect(g, ys, out);
            for (k, acc) in vals[..vals.len() - 1].iter().enumerate() {
                let mut hargs = vec![Nat::from(k), acc.clone()];
                hargs.extend_from_slice(ys);
                collect(h, &hargs, out);
            }
            out.extend(vals);
            out.push(bx);
            out.push(by);
        }
    }
}

/// A bound at least as large as every witness, argument and the value.
pub fn witness_bound(e: &PrimRecExpr, args: &[Nat]) -> Result<Nat, RepError> {
    let ws = witnesses(e, args)?;
    let value = eval_fast(e, args).expect("arity checked");
    Ok(ws
        .into_iter()
        .chain(args.iter().cloned())
        .chain([value])
        .max()
        .unwrap_or_else(Nat::zero))
}

/// Truth in ℕ of the representing formula with numerals for the inputs and
/// the output, by the sound evaluator at `bound`. When the formula carries its
/// source expression, the replayed witnesses are offered to the search.
pub fn verify_instance(r: &RepFormula, args: &[Nat], value: &Nat, bound: &Nat) -> Result<TruthValue, RepError> {
    if r.arity != args.len() {
        return Err(RepError::ArityMismatch {
            expected: r.arity,
            found: args.len(),
        });
    }
    let mut evaluator = Evaluator::new(bound.clone()).with_cap(VERIFY_CAP);
    if let Some(e) = &r.source {
        evaluator = evaluator.with_hints(witnesses(e, args)?);
    }
    let closed = rename(
        &r.formula,
        std::iter::once((0, nat_to_term(value.clone()))).chain(
            args.iter()
                .enumerate()
                .map(|(k, a)| (k as Var + 1, nat_to_term(a.clone()))),
        ),
    );
    Ok(evaluator.eval(&closed, &BTreeMap::new())?)
}

/// Whether `f` is Σ₁: built from quantifier-free formulas by ∧, ∨, ∃,
/// implications with a quantifier-free antecedent, and bounded
/// `∀v.(v < t ⇒ …)` with `v` not in `t`.
pub fn sigma1_check(f: &Formula) -> bool {
    if f.is_quantifier_free() {
        return true;
    }
    if let Some((_, g)) = f.as_exists() {
        return sigma1_check(g);
    }
    if let Some((a, b)) = f.as_and() {
        return sigma1_check(a) && sigma1_check(b);
    }
    if let Some((a, b)) = f.as_or() {
        return sigma1_check(a) && sigma1_check(b);
    }
    match f.kind() {
        FormulaKind::Imp(a, b) => a.is_quantifier_free() && sigma1_check(b),
        FormulaKind::Forall(v, g) => {
            let Some((guard, body)) = g.as_imp() else {
                return false;
            };
            match guard.kind() {
                FormulaKind::Atomic(r, ts) => {
                    r == crate::arith::LT
                        && ts.len() == 2
                        && ts[0].as_var() == Some(v)
                        && !ts[1].has_free_var(v)
                        && sigma1_check(body)
                }
                _ => false,
            }
        }
        _ => false,
    }
}
