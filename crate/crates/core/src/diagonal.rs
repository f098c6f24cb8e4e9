//! Fixed points, the provability formulas of an expressed system, and the
//! Rosser sentence.
//!
//! The diagonal function, `checkPrf` and the list primitives enter these
//! constructions only through their graph formulas. Their primitive recursive
//! definitions are not built; each is an [`OpaqueGraph`] whose formula is a
//! tagged placeholder with the right free variables, paired with a
//! function-level implementation of what it stands for.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;

use crate::arith::{eq, lnn, lt, nat_to_term, nn_axioms, nn_system, succ, var};
use crate::coding::{check_prf, code_numeral_term, code_sub_formula, cpair_u, decode_list, CodeBudget, CodingError};
use crate::fol::{fresh_var, subst_formula, subst_simultaneous, Formula, FormulaKind, Term, Var};
use crate::primrec::{const_fn, cpair_pr, id_func, PrimRecExpr};
use crate::proof::{proves_under, AxiomSystem, Proof};
use crate::represent::{represent, RepFormula};
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagError {
    #[error("representing formula has free variable x{var}, expected only x{rep_var}")]
    StrayVariable { var: Var, rep_var: Var },
    #[error("{0} takes {1} arguments")]
    Arity(&'static str, usize),
    #[error("argument is not a code")]
    NotACode,
    #[error(transparent)]
    Coding(#[from] CodingError),
}

/// A function used in the constructions whose graph is spliced in without a
/// primitive recursive definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpaqueGraph {
    /// `d(n) = codeSubFormula(n, i, codeNumeralTerm(n))`.
    Diagonal(Var),
    /// `checkPrf(formula code, proof code)`.
    CheckPrf,
    /// Length of a coded list.
    ListLength,
    /// `(list, j) ↦` the `j`-th element, or 0 past the end.
    ListElement,
}

impl OpaqueGraph {
    pub fn name(self) -> &'static str {
        match self {
            OpaqueGraph::Diagonal(_) => "diagonal",
            OpaqueGraph::CheckPrf => "checkPrf",
            OpaqueGraph::ListLength => "list-length",
            OpaqueGraph::ListElement => "list-element",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            OpaqueGraph::Diagonal(_) | OpaqueGraph::ListLength => 1,
            OpaqueGraph::CheckPrf | OpaqueGraph::ListElement => 2,
        }
    }

    /// Number identifying the graph inside its placeholder formula.
    pub fn tag(self) -> Nat {
        match self {
            OpaqueGraph::Diagonal(i) => cpair_u(0, i),
            OpaqueGraph::CheckPrf => cpair_u(1, 0),
            OpaqueGraph::ListLength => cpair_u(2, 0),
            OpaqueGraph::ListElement => cpair_u(3, 0),
        }
    }

    /// `tag = tag ∧ x0 = x0 ∧ … ∧ xn = xn`: quantifier-free, over LNN, with
    /// free variables exactly `x0 … xn`. It is a marker for the graph, not a
    /// definition of it.
    pub fn formula(self) -> Formula {
        let t = nat_to_term(self.tag());
        let parts = std::iter::once(eq(t.clone(), t)).chain((0..=self.arity() as Var).map(|v| eq(var(v), var(v))));
        Formula::and_all(parts).expect("nonempty")
    }

    pub fn rep(self) -> RepFormula {
        RepFormula::new(self.formula(), self.arity()).expect("placeholder variables are x0..xn")
    }

    /// The value of the function the graph stands for.
    pub fn eval(self, args: &[Nat]) -> Result<Nat, DiagError> {
        if args.len() != self.arity() {
            return Err(DiagError::Arity(self.name(), self.arity()));
        }
        Ok(match self {
            OpaqueGraph::Diagonal(i) => diagonal_function(i, &args[0], CodeBudget::DEFAULT)?,
            OpaqueGraph::CheckPrf => check_prf(lnn(), &args[0], &args[1]),
            OpaqueGraph::ListLength => Nat::from(decode_list(&args[0]).len()),
            OpaqueGraph::ListElement => {
                let items = decode_list(&args[0]);
                args[1]
                    .to_usize()
                    .and_then(|j| items.get(j).cloned())
                    .unwrap_or_default()
            }
        })
    }
}

/// `codeSubFormula(n, i, codeNumeralTerm(n))` over LNN.
pub fn diagonal_function(i: Var, n: &Nat, budget: CodeBudget) -> Result<Nat, DiagError> {
    let numeral = code_numeral_term(n, budget)?;
    code_sub_formula(lnn(), n, i, &numeral).map_err(|_| DiagError::NotACode)
}

/// `n ↦ ⟨2, n⟩`, the code of `¬f` from the code of `f`.
pub fn neg_code_expr() -> PrimRecExpr {
    PrimRecExpr::compose(1, vec![const_fn(1, 2), id_func()], cpair_pr()).expect("unary")
}

/// An axiom system together with a formula in one variable meant to hold of
/// exactly the codes of its axioms.
#[derive(Debug, Clone)]
pub struct ExpressedSystem {
    rep: Formula,
    rep_var: Var,
    system: AxiomSystem,
}

impl ExpressedSystem {
    pub fn new(rep: Formula, rep_var: Var, system: AxiomSystem) -> Result<ExpressedSystem, DiagError> {
        if let Some(&var) = rep.free_vars().iter().find(|&&v| v != rep_var) {
            return Err(DiagError::StrayVariable { var, rep_var });
        }
        Ok(ExpressedSystem { rep, rep_var, system })
    }

    /// A finite system expressed by `x0 = ⌈A1⌉ ∨ … ∨ x0 = ⌈An⌉`.
    pub fn finite(description: &str, axioms: Vec<Formula>) -> ExpressedSystem {
        let mut disjuncts: Vec<Formula> = axioms
            .iter()
            .map(|a| eq(var(0), Term::code_numeral(lnn(), a).expect("LNN has numerals")))
            .collect();
        // no axioms: 0 = S 0
        let mut rep = disjuncts
            .pop()
            .unwrap_or_else(|| eq(nat_to_term(0u32), nat_to_term(1u32)));
        while let Some(d) = disjuncts.pop() {
            rep = Formula::or(d, rep);
        }
        ExpressedSystem {
            rep,
            rep_var: 0,
            system: AxiomSystem::finite(description, axioms),
        }
    }

    pub fn rep(&self) -> &Formula {
        &self.rep
    }

    pub fn rep_var(&self) -> Var {
        self.rep_var
    }

    pub fn system(&self) -> &AxiomSystem {
        &self.system
    }
}

/// NN, expressed by the disjunction of its nine axiom codes.
pub fn nn_expressed() -> ExpressedSystem {
    let mut sys = ExpressedSystem::finite("NN", nn_axioms());
    sys.system = nn_system();
    sys
}

fn relocate(f: &Formula, pairs: impl IntoIterator<Item = (Var, Term)>) -> Formula {
    let env: BTreeMap<Var, Term> = pairs.into_iter().collect();
    subst_simultaneous(f, &env)
}

/// `x1` codes a proof of the formula coded by `x0` from axioms satisfying the
/// system's formula:
///
/// ```text
/// ∃g. checkPrf(x0, x1) = S g
///   ∧ ∃l. length(g) = l ∧ ∀j. j < l ⇒ ∃m. element(g, j) = m ∧ Rep(m)
/// ```
pub fn code_sys_prf(sys: &ExpressedSystem) -> Formula {
    let (g, l, j, m) = (2, 3, 4, 5);
    let chk = relocate(
        &OpaqueGraph::CheckPrf.formula(),
        [(0, succ(var(g))), (1, var(0)), (2, var(1))],
    );
    let len = relocate(&OpaqueGraph::ListLength.formula(), [(0, var(l)), (1, var(g))]);
    let elem = relocate(
        &OpaqueGraph::ListElement.formula(),
        [(0, var(m)), (1, var(g)), (2, var(j))],
    );
    let member = subst_formula(&sys.rep, sys.rep_var, &var(m));
    let all_members = Formula::forall(
        j,
        Formula::imp(lt(var(j), var(l)), Formula::exists(m, Formula::and(elem, member))),
    );
    Formula::exists(g, Formula::and(chk, Formula::exists(l, Formula::and(len, all_members))))
}

/// `∃x1. codeSysPrf`.
pub fn code_sys_pf(sys: &ExpressedSystem) -> Formula {
    Formula::exists(1, code_sys_prf(sys))
}

/// Result of the diagonal construction for `φ` on `x_i`.
#[derive(Debug, Clone)]
pub struct FixedPoint {
    /// `∃k.(D(k; x_i) ∧ φ[x_i/x_k])`.
    pub alpha: Formula,
    /// `α[x_i/⌈α⌉]`.
    pub psi: Formula,
    pub var: Var,
    /// The witness variable `k`.
    pub witness: Var,
}

/// Builds `ψ = α[x_i/⌈α⌉]` with `α = ∃k.(D(k; x_i) ∧ φ[x_i/x_k])`, where `D`
/// is the graph of the diagonal function for `x_i`. The numeral for `⌈α⌉` is
/// kept symbolic when it is too large to write down, so this never fails.
///
/// `k` avoids every variable of `φ`, bound ones included, so `φ[x_i/x_k]`
/// never renames a binder.
pub fn fixed_point(phi: &Formula, i: Var) -> FixedPoint {
    let mut used = phi.free_vars().clone();
    binders(phi, &mut used);
    used.insert(i);
    let k = fresh_var(&used);
    let d = relocate(&OpaqueGraph::Diagonal(i).formula(), [(0, var(k)), (1, var(i))]);
    let alpha = Formula::exists(k, Formula::and(d, subst_formula(phi, i, &var(k))));
    let numeral = Term::code_numeral(lnn(), &alpha).expect("LNN has numerals");
    let psi = subst_formula(&alpha, i, &numeral);
    FixedPoint {
        alpha,
        psi,
        var: i,
        witness: k,
    }
}

fn binders(f: &Formula, out: &mut BTreeSet<Var>) {
    match f.kind() {
        FormulaKind::Equal(..) | FormulaKind::Atomic(..) => {}
        FormulaKind::Imp(a, b) => {
            binders(a, out);
            binders(b, out);
        }
        FormulaKind::Not(a) => binders(a, out),
        FormulaKind::Forall(v, a) => {
            out.insert(v);
            binders(a, out);
        }
    }
}

#[derive(Debug, Clone)]
pub struct SentenceReport {
    pub sentence: Formula,
    pub node_count: usize,
    pub is_closed: bool,
    pub log: Vec<String>,
    pub fixed_point: FixedPoint,
}

/// The Rosser sentence for `sys`: the fixed point on `x0` of
/// `∀x1.(codeSysPrf(x0, x1) ⇒ ∃x2.(x2 < x1 ∧ ∃x3.(x3 = ⟨2, x0⟩ ∧ codeSysPrf(x3, x2))))`.
pub fn rosser_sentence(sys: &ExpressedSystem) -> SentenceReport {
    let mut log = Vec::new();
    let prf = code_sys_prf(sys);
    log.push(format!("codeSysPrf(x0, x1): {} nodes", prf.size()));
    let neg = relocate(represent(&neg_code_expr()).formula(), [(0, var(3)), (1, var(0))]);
    log.push("negation graph: output x0 -> x3, input x1 -> x0".to_string());
    let refuted = relocate(&prf, [(0, var(3)), (1, var(2))]);
    log.push("codeSysPrf relocated: x0 -> x3, x1 -> x2".to_string());
    let smaller = Formula::exists(
        2,
        Formula::and(lt(var(2), var(1)), Formula::exists(3, Formula::and(neg, refuted))),
    );
    let phi = Formula::forall(1, Formula::imp(prf, smaller));
    log.push(format!("rosser body over x0: {} nodes", phi.size()));
    let fp = fixed_point(&phi, 0);
    log.push(format!(
        "fixed point on x0, witness x{}: codeSysPrf relocated x0 -> x{}",
        fp.witness, fp.witness
    ));
    let sentence = fp.psi.clone();
    SentenceReport {
        node_count: sentence.size(),
        is_closed: sentence.is_sentence(),
        sentence,
        log,
        fixed_point: fp,
    }
}

/// Whether some proof in `proofs` derives `0 = S 0` from members of `sys`.
pub fn inconsistent(sys: &AxiomSystem, proofs: impl IntoIterator<Item = Proof>) -> bool {
    let absurd = eq(nat_to_term(0u32), nat_to_term(1u32));
    proofs.into_iter().any(|p| proves_under(lnn(), sys, &p, &absurd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{code_formula, code_list};
    use crate::represent::sigma1_check;

    #[test]
    fn fixed_point_free_variables() {
        let phi = eq(var(0), var(0));
        let fp = fixed_point(&phi, 0);
        assert!(fp.psi.is_sentence());
        let phi = Formula::and(eq(var(4), var(9)), lt(var(4), nat_to_term(3u32)));
        let fp = fixed_point(&phi, 4);
        assert_eq!(fp.psi.free_vars().iter().copied().collect::<Vec<_>>(), vec![9]);
        let numeral = Term::code_numeral(lnn(), &fp.alpha).unwrap();
        assert_eq!(fp.psi, subst_formula(&fp.alpha, 4, &numeral));
    }

    #[test]
    fn provability_formulas() {
        let sys = nn_expressed();
        let prf = code_sys_prf(&sys);
        assert!(prf.free_vars().iter().all(|&v| v <= 1));
        let pf = code_sys_pf(&sys);
        assert!(pf.free_vars().iter().all(|&v| v == 0));
        assert!(sigma1_check(&pf));
    }

    #[test]
    fn rosser_is_closed() {
        let report = rosser_sentence(&nn_expressed());
        assert!(report.is_closed);
        assert!(report.sentence.check_language(lnn()).is_ok());
        let k = report.fixed_point.witness;
        let relocated = subst_formula(&code_sys_prf(&nn_expressed()), 0, &var(k));
        assert!(report.sentence.contains_subformula(&relocated));
    }

    #[test]
    fn expressed_system_checks_variables() {
        let sys = ExpressedSystem::new(eq(var(2), var(1)), 2, AxiomSystem::empty());
        assert_eq!(sys.unwrap_err(), DiagError::StrayVariable { var: 1, rep_var: 2 });
    }

    #[test]
    fn opaque_graph_meanings() {
        let a = eq(var(0), var(0));
        let fc = code_formula(&a).unwrap();
        let pc = crate::coding::code_proof(&Proof::Axm(a.clone())).unwrap();
        assert_eq!(OpaqueGraph::CheckPrf.eval(&[fc.clone(), pc]).unwrap(), Nat::from(2u32));
        let l = code_list(&[Nat::from(7u32), Nat::from(9u32)]);
        assert_eq!(OpaqueGraph::ListLength.eval(std::slice::from_ref(&l)).unwrap(), Nat::from(2u32));
        assert_eq!(
            OpaqueGraph::ListElement.eval(&[l.clone(), Nat::from(1u32)]).unwrap(),
            Nat::from(9u32)
        );
        assert_eq!(
            OpaqueGraph::ListElement.eval(&[l, Nat::from(5u32)]).unwrap(),
            Nat::from(0u32)
        );
        // x0 = x0 does not mention x1, so d leaves it alone
        assert_eq!(diagonal_function(1, &fc, CodeBudget::DEFAULT).unwrap(), fc);
        assert!(OpaqueGraph::CheckPrf.eval(&[fc]).is_err());
    }

    #[test]
    fn inconsistency_detection() {
        let absurd = eq(nat_to_term(0u32), nat_to_term(1u32));
        assert!(!inconsistent(&nn_system(), vec![]));
        let bad = AxiomSystem::finite("bad", vec![absurd.clone()]);
        assert!(inconsistent(&bad, vec![Proof::Axm(absurd.clone())]));
        assert!(!inconsistent(&nn_system(), vec![Proof::Axm(absurd), Proof::Eq1]));
    }
}
