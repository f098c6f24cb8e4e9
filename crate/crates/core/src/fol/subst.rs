//! Capture-avoiding substitution.
//!
//! Both the single-variable and the simultaneous version rename a bound
//! variable only when capture would otherwise happen, and pick the new name
//! with [`fresh_var`]. Code-level substitution replays the same choice.

use std::collections::{BTreeMap, BTreeSet};

use super::{Formula, FormulaKind, Term, TermKind, Var};

/// The least variable index not in `exclude`.
pub fn fresh_var(exclude: &BTreeSet<Var>) -> Var {
    let mut k = 0;
    for &v in exclude {
        if v != k {
            break;
        }
        k += 1;
    }
    k
}

fn rebuild_apply(t: &Term, args: Vec<Term>) -> Term {
    let TermKind::Apply(f, _) = t.kind() else {
        unreachable!()
    };
    // Folding S(numeral) back into a numeral only needs the numeral's own
    // Succ/Zero pair, so recover it from the arguments.
    let numerals = args.iter().find_map(|a| match a.kind() {
        TermKind::Numeral(n) => Some((n.succ_symbol(), n.zero_symbol())),
        _ => None,
    });
    Term::apply_unchecked(numerals, f, args)
}

/// Replaces every occurrence of `Var(v)` in `t` by `s`.
pub fn subst_term(t: &Term, v: Var, s: &Term) -> Term {
    match t.kind() {
        TermKind::Var(w) if w == v => s.clone(),
        TermKind::Var(_) | TermKind::Numeral(_) => t.clone(),
        TermKind::Apply(_, args) => {
            if !t.has_free_var(v) {
                return t.clone();
            }
            rebuild_apply(t, args.iter().map(|a| subst_term(a, v, s)).collect())
        }
    }
}

/// Replaces each mapped variable by its image in one pass.
pub fn subst_term_simultaneous(t: &Term, env: &BTreeMap<Var, Term>) -> Term {
    match t.kind() {
        TermKind::Var(w) => env.get(&w).cloned().unwrap_or_else(|| t.clone()),
        TermKind::Numeral(_) => t.clone(),
        TermKind::Apply(_, args) => rebuild_apply(t, args.iter().map(|a| subst_term_simultaneous(a, env)).collect()),
    }
}

/// `f[x_v / s]`, renaming a binder `∀x_j` to the least fresh index when `x_j`
/// is free in `s` and `x_v` is free in the body.
pub fn subst_formula(f: &Formula, v: Var, s: &Term) -> Formula {
    if !f.has_free_var(v) {
        return f.clone();
    }
    match f.kind() {
        FormulaKind::Equal(a, b) => Formula::equal(subst_term(a, v, s), subst_term(b, v, s)),
        FormulaKind::Atomic(r, ts) => Formula::atomic_unchecked(r, ts.iter().map(|t| subst_term(t, v, s)).collect()),
        FormulaKind::Imp(a, b) => Formula::imp(subst_formula(a, v, s), subst_formula(b, v, s)),
        FormulaKind::Not(a) => Formula::not(subst_formula(a, v, s)),
        FormulaKind::Forall(j, g) => {
            // j == v cannot happen here: v is free in f.
            if s.has_free_var(j) {
                let mut ex: BTreeSet<Var> = g.free_vars().clone();
                s.collect_free_vars(&mut ex);
                ex.insert(v);
                ex.insert(j);
                let k = fresh_var(&ex);
                let renamed = subst_formula(g, j, &Term::var(k));
                Formula::forall(k, subst_formula(&renamed, v, s))
            } else {
                Formula::forall(j, subst_formula(g, v, s))
            }
        }
    }
}

/// Simultaneous capture-avoiding substitution.
///
/// At a binder `∀x_j.g` the entry for `j` is dropped and only entries for
/// variables free in `g` are considered; if `x_j` is free in any of their
/// images, `j` is renamed to the least index outside `{j}`, the free variables
/// of `g`, the relevant keys and the free variables of their images.
pub fn subst_simultaneous(f: &Formula, env: &BTreeMap<Var, Term>) -> Formula {
    if !env.keys().any(|k| f.has_free_var(*k)) {
        return f.clone();
    }
    match f.kind() {
        FormulaKind::Equal(a, b) => Formula::equal(subst_term_simultaneous(a, env), subst_term_simultaneous(b, env)),
        FormulaKind::Atomic(r, ts) => {
            Formula::atomic_unchecked(r, ts.iter().map(|t| subst_term_simultaneous(t, env)).collect())
        }
        FormulaKind::Imp(a, b) => Formula::imp(subst_simultaneous(a, env), subst_simultaneous(b, env)),
        FormulaKind::Not(a) => Formula::not(subst_simultaneous(a, env)),
        FormulaKind::Forall(j, g) => {
            let relevant: BTreeMap<Var, Term> = env
                .iter()
                .filter(|(k, _)| **k != j && g.has_free_var(**k))
                .map(|(k, t)| (*k, t.clone()))
                .collect();
            if relevant.values().any(|t| t.has_free_var(j)) {
                let mut ex: BTreeSet<Var> = g.free_vars().clone();
                ex.insert(j);
                for (k, t) in &relevant {
                    ex.insert(*k);
                    t.collect_free_vars(&mut ex);
                }
                let k = fresh_var(&ex);
                let mut inner = relevant;
                inner.insert(j, Term::var(k));
                Formula::forall(k, subst_simultaneous(g, &inner))
            } else {
                Formula::forall(j, subst_simultaneous(g, &relevant))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::{FuncSym, Language};

    fn v(i: Var) -> Term {
        Term::var(i)
    }
    fn eq(a: Term, b: Term) -> Formula {
        Formula::equal(a, b)
    }
    fn succ(t: Term) -> Term {
        Term::apply(Language::lnt(), FuncSym(2), vec![t]).unwrap()
    }
    fn plus(a: Term, b: Term) -> Term {
        Term::apply(Language::lnt(), FuncSym(0), vec![a, b]).unwrap()
    }

    #[test]
    fn fresh_is_least_unused() {
        assert_eq!(fresh_var(&BTreeSet::new()), 0);
        assert_eq!(fresh_var(&[0, 1].into()), 2);
        assert_eq!(fresh_var(&[0, 2].into()), 1);
    }

    #[test]
    fn term_substitution() {
        let zero = Term::numeral(Language::lnt(), 0u32.into()).unwrap();
        assert_eq!(subst_term(&v(0), 0, &zero), zero);
        assert_eq!(subst_term(&v(1), 0, &zero), v(1));
        assert_eq!(subst_term(&plus(v(0), v(1)), 1, &v(0)), plus(v(0), v(0)));
    }

    #[test]
    fn substituting_a_numeral_into_succ_folds() {
        let lnt = Language::lnt();
        let two = Term::numeral(lnt, 2u32.into()).unwrap();
        let three = Term::numeral(lnt, 3u32.into()).unwrap();
        assert_eq!(subst_term(&succ(v(4)), 4, &two), three);
    }

    #[test]
    fn binder_renaming() {
        let f = Formula::forall(0, eq(v(0), v(1)));
        assert_eq!(
            subst_formula(&f, 1, &succ(v(0))),
            Formula::forall(2, eq(v(2), succ(v(0))))
        );
        let shadow = Formula::forall(0, eq(v(0), v(0)));
        let zero = Term::numeral(Language::lnt(), 0u32.into()).unwrap();
        assert!(subst_formula(&shadow, 0, &zero).ptr_eq(&shadow));
        assert_eq!(subst_formula(&eq(v(0), v(1)), 1, &v(0)), eq(v(0), v(0)));
    }

    #[test]
    fn simultaneous_examples() {
        let swap: BTreeMap<Var, Term> = [(0, v(1)), (1, v(0))].into();
        assert_eq!(subst_simultaneous(&eq(v(0), v(1)), &swap), eq(v(1), v(0)));
        let f = Formula::forall(0, eq(v(0), v(1)));
        assert_eq!(subst_simultaneous(&f, &BTreeMap::new()), f);
        let env: BTreeMap<Var, Term> = [(1, v(0))].into();
        assert_eq!(subst_simultaneous(&f, &env), Formula::forall(2, eq(v(2), v(0))));
    }

    // The two versions can choose different fresh names. Here the outer
    // binder 0 is renamed to 1 and then 1 to 2 in both, but for the inner
    // ∀x0 the single-variable version renames x0 in a body where x3 was
    // already replaced, while the one-pass version still excludes 3 and
    // ends up at 4. The results are alpha-equivalent, not identical.
    #[test]
    fn single_and_simultaneous_can_pick_different_names() {
        let f = Formula::forall(
            0,
            Formula::forall(
                1,
                Formula::imp(Formula::forall(0, eq(v(3), v(1))), Formula::not(eq(v(0), v(3)))),
            ),
        );
        let single = subst_formula(&f, 3, &v(0));
        let env: BTreeMap<Var, Term> = [(3, v(0))].into();
        let simul = subst_simultaneous(&f, &env);
        let expect = |k| {
            Formula::forall(
                1,
                Formula::forall(
                    2,
                    Formula::imp(Formula::forall(k, eq(v(0), v(2))), Formula::not(eq(v(1), v(0)))),
                ),
            )
        };
        assert_eq!(single, expect(1));
        assert_eq!(simul, expect(4));
    }
}
