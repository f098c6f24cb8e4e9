//! The languages LNT and LNN, the theories NN and PA, numerals, the LNN to
//! LNT translation, and evaluation in the standard model.

mod eval;

use std::collections::BTreeMap;

pub use eval::{eval_bounded_domain, eval_formula, EvalError, Evaluator, TruthValue};

use crate::fol::{subst_formula, subst_simultaneous, Formula, FormulaKind, FuncSym, Language, RelSym, Term, Var};
use crate::proof::AxiomSystem;
use crate::Nat;

pub const PLUS: FuncSym = FuncSym(0);
pub const TIMES: FuncSym = FuncSym(1);
pub const SUCC: FuncSym = FuncSym(2);
pub const ZERO: FuncSym = FuncSym(3);
pub const LT: RelSym = RelSym(0);

pub fn lnt() -> &'static Language {
    Language::lnt()
}

pub fn lnn() -> &'static Language {
    Language::lnn()
}

/// The closed term `S^n(0)`.
pub fn nat_to_term(n: impl Into<Nat>) -> Term {
    Term::numeral(lnt(), n.into()).expect("LNT has numerals")
}

pub fn var(i: Var) -> Term {
    Term::var(i)
}

pub fn zero() -> Term {
    nat_to_term(0u32)
}

pub fn succ(t: Term) -> Term {
    Term::apply(lnt(), SUCC, vec![t]).expect("arity 1")
}

pub fn plus(a: Term, b: Term) -> Term {
    Term::apply(lnt(), PLUS, vec![a, b]).expect("arity 2")
}

pub fn times(a: Term, b: Term) -> Term {
    Term::apply(lnt(), TIMES, vec![a, b]).expect("arity 2")
}

/// `a < b` over LNN.
pub fn lt(a: Term, b: Term) -> Formula {
    Formula::atomic(lnn(), LT, vec![a, b]).expect("arity 2")
}

pub fn eq(a: Term, b: Term) -> Formula {
    Formula::equal(a, b)
}

fn all(vars: &[Var], f: Formula) -> Formula {
    vars.iter().rev().fold(f, |acc, &v| Formula::forall(v, acc))
}

/// The six axioms shared by NN and PA.
pub fn shared_axioms() -> Vec<Formula> {
    let (x0, x1) = (var(0), var(1));
    vec![
        all(&[0], Formula::not(eq(succ(x0.clone()), zero()))),
        all(
            &[0, 1],
            Formula::imp(eq(succ(x0.clone()), succ(x1.clone())), eq(x0.clone(), x1.clone())),
        ),
        all(&[0], eq(plus(x0.clone(), zero()), x0.clone())),
        all(
            &[0, 1],
            eq(plus(x0.clone(), succ(x1.clone())), succ(plus(x0.clone(), x1.clone()))),
        ),
        all(&[0], eq(times(x0.clone(), zero()), zero())),
        all(
            &[0, 1],
            eq(
                times(x0.clone(), succ(x1.clone())),
                plus(times(x0.clone(), x1.clone()), x0.clone()),
            ),
        ),
    ]
}

/// The nine axioms of NN: the shared six and three about `<`.
///
/// The three-way disjunction of the last axiom nests to the right.
pub fn nn_axioms() -> Vec<Formula> {
    let (x0, x1) = (var(0), var(1));
    let mut ax = shared_axioms();
    ax.push(all(&[0], Formula::not(lt(x0.clone(), zero()))));
    ax.push(all(
        &[0, 1],
        Formula::imp(
            lt(x0.clone(), succ(x1.clone())),
            Formula::or(eq(x0.clone(), x1.clone()), lt(x0.clone(), x1.clone())),
        ),
    ));
    ax.push(all(
        &[0, 1],
        Formula::or(
            lt(x0.clone(), x1.clone()),
            Formula::or(eq(x0.clone(), x1.clone()), lt(x1, x0)),
        ),
    ));
    ax
}

pub fn nn_system() -> AxiomSystem {
    AxiomSystem::finite("NN", nn_axioms())
}

pub fn pa_system() -> AxiomSystem {
    AxiomSystem::new("PA", pa_axiom_check)
}

/// The induction axiom for `φ` on `x_j`:
/// `∀x_i1…∀x_in.(φ[x_j/0] ⇒ ∀x_j.(φ ⇒ φ[x_j/S x_j]) ⇒ ∀x_j.φ)`, where
/// `x_i1 < … < x_in` are the free variables of `∀x_j.φ`.
pub fn induction_instance(phi: &Formula, j: Var) -> Formula {
    let base = subst_formula(phi, j, &zero());
    let step = Formula::forall(j, Formula::imp(phi.clone(), subst_formula(phi, j, &succ(var(j)))));
    let conclusion = Formula::forall(j, phi.clone());
    let closure: Vec<Var> = conclusion.free_vars().iter().copied().collect();
    all(&closure, Formula::imp(base, Formula::imp(step, conclusion)))
}

/// Membership in PA: one of the shared axioms, or an induction instance over
/// LNT closed exactly as [`induction_instance`] closes it.
pub fn pa_axiom_check(f: &Formula) -> bool {
    if f.check_language(lnt()).is_err() {
        return false;
    }
    if shared_axioms().contains(f) {
        return true;
    }
    let mut body = f;
    while let Some((_, inner)) = body.as_forall() {
        body = inner;
    }
    let Some((_, rest)) = body.as_imp() else {
        return false;
    };
    let Some((_, conclusion)) = rest.as_imp() else {
        return false;
    };
    let Some((j, phi)) = conclusion.as_forall() else {
        return false;
    };
    induction_instance(phi, j) == *f
}

/// `¬∀x2.¬(x0 + S x2 = x1)`, the LNT rendering of `x0 < x1`.
pub fn lt_definition() -> Formula {
    Formula::exists(2, eq(plus(var(0), succ(var(2))), var(1)))
}

/// Replaces every `t0 < t1` by `(∃x2. x0 + S x2 = x1)[x0/t0, x1/t1]`.
pub fn lnn_to_lnt(f: &Formula) -> Formula {
    match f.kind() {
        FormulaKind::Equal(..) => f.clone(),
        FormulaKind::Atomic(r, ts) => {
            debug_assert_eq!(r, LT);
            let env: BTreeMap<Var, Term> = [(0, ts[0].clone()), (1, ts[1].clone())].into();
            subst_simultaneous(&lt_definition(), &env)
        }
        FormulaKind::Imp(a, b) => Formula::imp(lnn_to_lnt(a), lnn_to_lnt(b)),
        FormulaKind::Not(a) => Formula::not(lnn_to_lnt(a)),
        FormulaKind::Forall(v, a) => Formula::forall(v, lnn_to_lnt(a)),
    }
}
