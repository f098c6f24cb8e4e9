//! Hilbert-style proofs: the checker, the equality axiom generators and the
//! deduction theorem as a proof transformation.

use std::fmt;
use std::sync::Arc;

use crate::fol::{subst_formula, Formula, FuncSym, Language, RelSym, SyntaxError, Term, Var};

/// A proof tree. Schema rules carry their parameters so checking needs no
/// inference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proof {
    /// `A` from the single assumption `A`.
    Axm(Formula),
    /// From `A ⇒ B` and `A`, `B`; the assumption lists are concatenated.
    Mp(Arc<Proof>, Arc<Proof>),
    /// From `A`, `∀v.A`, provided `v` is free in no assumption.
    Gen(Var, Arc<Proof>),
    /// `A ⇒ (B ⇒ A)`
    Imp1(Formula, Formula),
    /// `(A ⇒ (B ⇒ C)) ⇒ ((A ⇒ B) ⇒ (A ⇒ C))`
    Imp2(Formula, Formula, Formula),
    /// `(¬A ⇒ ¬B) ⇒ (B ⇒ A)`
    Cp(Formula, Formula),
    /// `∀v.A ⇒ A[x_v/t]`
    Fa1(Formula, Var, Term),
    /// `A ⇒ ∀v.A`, provided `v` is not free in `A`.
    Fa2(Formula, Var),
    /// `∀v.(A ⇒ B) ⇒ (∀v.A ⇒ ∀v.B)`
    Fa3(Formula, Formula, Var),
    /// `x0 = x0`
    Eq1,
    /// `x0 = x1 ⇒ x1 = x0`
    Eq2,
    /// `x0 = x1 ⇒ (x1 = x2 ⇒ x0 = x2)`
    Eq3,
    /// [`axm_eq4`]
    Eq4(RelSym),
    /// [`axm_eq5`]
    Eq5(FuncSym),
}

impl Proof {
    pub fn mp(a: Proof, b: Proof) -> Proof {
        Proof::Mp(Arc::new(a), Arc::new(b))
    }

    pub fn gen(v: Var, p: Proof) -> Proof {
        Proof::Gen(v, Arc::new(p))
    }

    pub fn rule_name(&self) -> &'static str {
        match self {
            Proof::Axm(_) => "AXM",
            Proof::Mp(..) => "MP",
            Proof::Gen(..) => "GEN",
            Proof::Imp1(..) => "IMP1",
            Proof::Imp2(..) => "IMP2",
            Proof::Cp(..) => "CP",
            Proof::Fa1(..) => "FA1",
            Proof::Fa2(..) => "FA2",
            Proof::Fa3(..) => "FA3",
            Proof::Eq1 => "EQ1",
            Proof::Eq2 => "EQ2",
            Proof::Eq3 => "EQ3",
            Proof::Eq4(_) => "EQ4",
            Proof::Eq5(_) => "EQ5",
        }
    }

    /// Number of rule applications.
    pub fn size(&self) -> usize {
        match self {
            Proof::Mp(a, b) => 1 + a.size() + b.size(),
            Proof::Gen(_, p) => 1 + p.size(),
            _ => 1,
        }
    }
}

/// What a proof derives: its assumptions, in rule order, and its conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgement {
    pub axioms: Vec<Formula>,
    pub conclusion: Formula,
}

/// Position of a node: the child indices taken from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodePath(pub Vec<u8>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for i in &self.0 {
            write!(f, "/{i}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProofError {
    #[error("{rule} at {path}: {reason}")]
    IllFormed {
        path: NodePath,
        rule: &'static str,
        reason: String,
    },
}

impl ProofError {
    pub fn path(&self) -> &NodePath {
        match self {
            ProofError::IllFormed { path, .. } => path,
        }
    }
}

fn v(i: Var) -> Term {
    Term::var(i)
}

/// `x0 = x0`
pub fn eq1() -> Formula {
    Formula::equal(v(0), v(0))
}

/// `x0 = x1 ⇒ x1 = x0`
pub fn eq2() -> Formula {
    Formula::imp(Formula::equal(v(0), v(1)), Formula::equal(v(1), v(0)))
}

/// `x0 = x1 ⇒ (x1 = x2 ⇒ x0 = x2)`
pub fn eq3() -> Formula {
    Formula::imp(
        Formula::equal(v(0), v(1)),
        Formula::imp(Formula::equal(v(1), v(2)), Formula::equal(v(0), v(2))),
    )
}

fn equation_chain(n: usize, conclusion: Formula) -> Formula {
    (0..n).rev().fold(conclusion, |acc, i| {
        let i = i as Var;
        Formula::imp(Formula::equal(v(2 * i), v(2 * i + 1)), acc)
    })
}

/// `x0 = x1 ⇒ … ⇒ x(2n-2) = x(2n-1) ⇒ (R(x0, x2, …) ⇔ R(x1, x3, …))`
pub fn axm_eq4(lang: &Language, r: RelSym) -> Result<Formula, SyntaxError> {
    let n = lang.rel_arity(r).ok_or(SyntaxError::UnknownRelation(r))?;
    let left = (0..n as Var).map(|i| v(2 * i)).collect();
    let right = (0..n as Var).map(|i| v(2 * i + 1)).collect();
    let iff = Formula::iff(Formula::atomic(lang, r, left)?, Formula::atomic(lang, r, right)?);
    Ok(equation_chain(n, iff))
}

/// `x0 = x1 ⇒ … ⇒ x(2n-2) = x(2n-1) ⇒ f(x0, x2, …) = f(x1, x3, …)`
pub fn axm_eq5(lang: &Language, f: FuncSym) -> Result<Formula, SyntaxError> {
    let n = lang.func_arity(f).ok_or(SyntaxError::UnknownFunction(f))?;
    let left = (0..n as Var).map(|i| v(2 * i)).collect();
    let right = (0..n as Var).map(|i| v(2 * i + 1)).collect();
    let eq = Formula::equal(Term::apply(lang, f, left)?, Term::apply(lang, f, right)?);
    Ok(equation_chain(n, eq))
}

/// Checks `p` over `lang` and returns what it proves.
pub fn check_proof(lang: &Language, p: &Proof) -> Result<Judgement, ProofError> {
    let mut path = Vec::new();
    check_at(lang, p, &mut path)
}

fn check_at(lang: &Language, p: &Proof, path: &mut Vec<u8>) -> Result<Judgement, ProofError> {
    let fail = |path: &[u8], reason: String| ProofError::IllFormed {
        path: NodePath(path.to_vec()),
        rule: p.rule_name(),
        reason,
    };
    let syntax = |path: &[u8], e: SyntaxError| fail(path, e.to_string());
    let audit = |path: &[u8], fs: &[&Formula]| -> Result<(), ProofError> {
        fs.iter()
            .try_for_each(|f| f.check_language(lang))
            .map_err(|e| syntax(path, e))
    };
    let schema = |conclusion| Judgement {
        axioms: vec![],
        conclusion,
    };
    Ok(match p {
        Proof::Axm(a) => {
            audit(path, &[a])?;
            Judgement {
                axioms: vec![a.clone()],
                conclusion: a.clone(),
            }
        }
        Proof::Mp(pq, pa) => {
            path.push(0);
            let left = check_at(lang, pq, path)?;
            path.pop();
            path.push(1);
            let right = check_at(lang, pa, path)?;
            path.pop();
            let Some((a, b)) = left.conclusion.as_imp() else {
                return Err(fail(path, "major premise is not an implication".into()));
            };
            if *a != right.conclusion {
                return Err(fail(path, "minor premise does not match the antecedent".into()));
            }
            let conclusion = b.clone();
            let mut axioms = left.axioms;
            axioms.extend(right.axioms);
            Judgement { axioms, conclusion }
        }
        Proof::Gen(var, q) => {
            path.push(0);
            let inner = check_at(lang, q, path)?;
            path.pop();
            if let Some(ax) = inner.axioms.iter().find(|a| a.has_free_var(*var)) {
                return Err(fail(path, format!("x{var} is free in the assumption {ax:?}")));
            }
            Judgement {
                axioms: inner.axioms,
                conclusion: Formula::forall(*var, inner.conclusion),
            }
        }
        Proof::Imp1(a, b) => {
            audit(path, &[a, b])?;
            schema(Formula::imp(a.clone(), Formula::imp(b.clone(), a.clone())))
        }
        Proof::Imp2(a, b, c) => {
            audit(path, &[a, b, c])?;
            let ab = Formula::imp(a.clone(), b.clone());
            let ac = Formula::imp(a.clone(), c.clone());
            let abc = Formula::imp(a.clone(), Formula::imp(b.clone(), c.clone()));
            schema(Formula::imp(abc, Formula::imp(ab, ac)))
        }
        Proof::Cp(a, b) => {
            audit(path, &[a, b])?;
            schema(Formula::imp(
                Formula::imp(Formula::not(a.clone()), Formula::not(b.clone())),
                Formula::imp(b.clone(), a.clone()),
            ))
        }
        Proof::Fa1(a, var, t) => {
            audit(path, &[a])?;
            t.check_language(lang).map_err(|e| syntax(path, e))?;
            schema(Formula::imp(
                Formula::forall(*var, a.clone()),
                subst_formula(a, *var, t),
            ))
        }
        Proof::Fa2(a, var) => {
            audit(path, &[a])?;
            if a.has_free_var(*var) {
                return Err(fail(path, format!("x{var} is free in the formula")));
            }
            schema(Formula::imp(a.clone(), Formula::forall(*var, a.clone())))
        }
        Proof::Fa3(a, b, var) => {
            audit(path, &[a, b])?;
            schema(Formula::imp(
                Formula::forall(*var, Formula::imp(a.clone(), b.clone())),
                Formula::imp(Formula::forall(*var, a.clone()), Formula::forall(*var, b.clone())),
            ))
        }
        Proof::Eq1 => schema(eq1()),
        Proof::Eq2 => schema(eq2()),
        Proof::Eq3 => schema(eq3()),
        Proof::Eq4(r) => schema(axm_eq4(lang, *r).map_err(|e| syntax(path, e))?),
        Proof::Eq5(f) => schema(axm_eq5(lang, *f).map_err(|e| syntax(path, e))?),
    })
}

/// A decidable set of formulas.
#[derive(Clone)]
pub struct AxiomSystem {
    member: Arc<dyn Fn(&Formula) -> bool + Send + Sync>,
    description: String,
}

impl AxiomSystem {
    pub fn new(
        description: impl Into<String>,
        member: impl Fn(&Formula) -> bool + Send + Sync + 'static,
    ) -> AxiomSystem {
        AxiomSystem {
            member: Arc::new(member),
            description: description.into(),
        }
    }

    /// The finite system consisting of `axioms`.
    pub fn finite(description: impl Into<String>, axioms: Vec<Formula>) -> AxiomSystem {
        AxiomSystem::new(description, move |f| axioms.contains(f))
    }

    pub fn empty() -> AxiomSystem {
        AxiomSystem::finite("empty", vec![])
    }

    pub fn contains(&self, f: &Formula) -> bool {
        (self.member)(f)
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

impl fmt::Debug for AxiomSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AxiomSystem")
            .field("description", &self.description)
            .finish_non_exhaustive()
    }
}

/// True iff `p` is valid, concludes `f`, and uses only members of `sys`.
pub fn proves_under(lang: &Language, sys: &AxiomSystem, p: &Proof, f: &Formula) -> bool {
    match check_proof(lang, p) {
        Ok(j) => j.conclusion == *f && j.axioms.iter().all(|a| sys.contains(a)),
        Err(_) => false,
    }
}

/// `A ⇒ A` without assumptions.
pub fn identity(a: &Formula) -> Proof {
    let aa = Formula::imp(a.clone(), a.clone());
    Proof::mp(
        Proof::mp(
            Proof::Imp2(a.clone(), aa.clone(), a.clone()),
            Proof::Imp1(a.clone(), aa),
        ),
        Proof::Imp1(a.clone(), a.clone()),
    )
}

/// From proofs of `X ⇒ Y` and `Y ⇒ Z`, a proof of `X ⇒ Z`.
pub fn syllogism(x: &Formula, y: &Formula, z: &Formula, xy: Proof, yz: Proof) -> Proof {
    let yz_f = Formula::imp(y.clone(), z.clone());
    Proof::mp(
        Proof::mp(
            Proof::Imp2(x.clone(), y.clone(), z.clone()),
            Proof::mp(Proof::Imp1(yz_f, x.clone()), yz),
        ),
        xy,
    )
}

/// The deduction theorem: from a proof of `ψ` from `Γ`, a proof of `φ ⇒ ψ`
/// from `Γ` with every copy of `φ` removed (order otherwise preserved).
pub fn deduction(lang: &Language, p: &Proof, phi: &Formula) -> Result<Proof, ProofError> {
    check_proof(lang, p)?;
    Ok(discharge(lang, p, phi))
}

// `p` is known to be valid.
fn discharge(lang: &Language, p: &Proof, phi: &Formula) -> Proof {
    let j = check_proof(lang, p).expect("subproof of a valid proof");
    let psi = j.conclusion;
    if let Proof::Axm(a) = p {
        if a == phi {
            return identity(phi);
        }
    }
    if !j.axioms.contains(phi) {
        return Proof::mp(Proof::Imp1(psi, phi.clone()), p.clone());
    }
    match p {
        Proof::Mp(pq, pa) => {
            let b = check_proof(lang, pa).expect("valid").conclusion;
            let c = psi;
            let d1 = discharge(lang, pq, phi);
            let d2 = discharge(lang, pa, phi);
            Proof::mp(Proof::mp(Proof::Imp2(phi.clone(), b, c), d1), d2)
        }
        Proof::Gen(var, q) => {
            // φ is an assumption of q, so x_var is not free in φ.
            let (_, body) = psi.as_forall().expect("GEN concludes a ∀");
            let body = body.clone();
            let d = discharge(lang, q, phi);
            let all_phi = Formula::forall(*var, phi.clone());
            let fa3 = Proof::mp(Proof::Fa3(phi.clone(), body, *var), Proof::gen(*var, d));
            syllogism(phi, &all_phi, &psi, Proof::Fa2(phi.clone(), *var), fa3)
        }
        // the only leaf with assumptions is AXM, handled above
        _ => unreachable!("leaf with φ among its assumptions"),
    }
}
