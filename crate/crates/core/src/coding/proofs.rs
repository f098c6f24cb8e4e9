//! Codes of proofs and the code-level proof checker.
//!
//! A proof node is `⟨tag, params⟩` with tags AXM=0, MP=1, GEN=2, IMP1=3,
//! IMP2=4, CP=5, FA1=6, FA2=7, FA3=8, EQ1..EQ5=9..13. Parameters are nested
//! pairs in constructor order (`⟨a, ⟨b, c⟩⟩`), and `0` for EQ1..EQ3.

use num_traits::{ToPrimitive, Zero};

use super::codes::{
    code_list, decode_formula, decode_term, to_index, to_var, try_code_formula, try_code_term, CodeBudget, CodingError,
    NotACode,
};
use super::pair::cpair_inv;
use crate::fol::{FuncSym, Language, RelSym};
use crate::proof::{check_proof, Proof};
use crate::Nat;

pub fn code_proof(p: &Proof) -> Result<Nat, CodingError> {
    try_code_proof(p, CodeBudget::DEFAULT)
}

pub fn try_code_proof(p: &Proof, budget: CodeBudget) -> Result<Nat, CodingError> {
    let n = |x: u64| Nat::from(x);
    let f = |a| try_code_formula(a, budget);
    let pair = |a: &Nat, b: &Nat| budget.pair(a, b);
    let (tag, params) = match p {
        Proof::Axm(a) => (0, f(a)?),
        Proof::Mp(a, b) => (1, pair(&try_code_proof(a, budget)?, &try_code_proof(b, budget)?)?),
        Proof::Gen(v, q) => (2, pair(&n(*v), &try_code_proof(q, budget)?)?),
        Proof::Imp1(a, b) => (3, pair(&f(a)?, &f(b)?)?),
        Proof::Imp2(a, b, c) => (4, pair(&f(a)?, &pair(&f(b)?, &f(c)?)?)?),
        Proof::Cp(a, b) => (5, pair(&f(a)?, &f(b)?)?),
        Proof::Fa1(a, v, t) => (6, pair(&f(a)?, &pair(&n(*v), &try_code_term(t, budget)?)?)?),
        Proof::Fa2(a, v) => (7, pair(&f(a)?, &n(*v))?),
        Proof::Fa3(a, b, v) => (8, pair(&f(a)?, &pair(&f(b)?, &n(*v))?)?),
        Proof::Eq1 => (9, Nat::zero()),
        Proof::Eq2 => (10, Nat::zero()),
        Proof::Eq3 => (11, Nat::zero()),
        Proof::Eq4(r) => (12, n(r.0 as u64)),
        Proof::Eq5(g) => (13, n(g.0 as u64)),
    };
    pair(&n(tag), &params)
}

/// Decodes a proof over `lang`. Only the shape is checked, not validity.
pub fn decode_proof(lang: &Language, n: &Nat) -> Result<Proof, NotACode> {
    let (tag, params) = cpair_inv(n);
    let f = |x: &Nat| decode_formula(lang, x);
    let split = |x: &Nat| cpair_inv(x);
    Ok(match tag.to_u64().ok_or(NotACode)? {
        0 => Proof::Axm(f(&params)?),
        1 => {
            let (a, b) = split(&params);
            Proof::mp(decode_proof(lang, &a)?, decode_proof(lang, &b)?)
        }
        2 => {
            let (v, q) = split(&params);
            Proof::gen(to_var(&v)?, decode_proof(lang, &q)?)
        }
        3 => {
            let (a, b) = split(&params);
            Proof::Imp1(f(&a)?, f(&b)?)
        }
        4 => {
            let (a, bc) = split(&params);
            let (b, c) = split(&bc);
            Proof::Imp2(f(&a)?, f(&b)?, f(&c)?)
        }
        5 => {
            let (a, b) = split(&params);
            Proof::Cp(f(&a)?, f(&b)?)
        }
        6 => {
            let (a, vt) = split(&params);
            let (v, t) = split(&vt);
            Proof::Fa1(f(&a)?, to_var(&v)?, decode_term(lang, &t)?)
        }
        7 => {
            let (a, v) = split(&params);
            Proof::Fa2(f(&a)?, to_var(&v)?)
        }
        8 => {
            let (a, bv) = split(&params);
            let (b, v) = split(&bv);
            Proof::Fa3(f(&a)?, f(&b)?, to_var(&v)?)
        }
        t @ 9..=11 => {
            if !params.is_zero() {
                return Err(NotACode);
            }
            [Proof::Eq1, Proof::Eq2, Proof::Eq3][(t - 9) as usize].clone()
        }
        12 => {
            let r = RelSym(to_index(&params)?);
            lang.rel_arity(r).ok_or(NotACode)?;
            Proof::Eq4(r)
        }
        13 => {
            let g = FuncSym(to_index(&params)?);
            lang.func_arity(g).ok_or(NotACode)?;
            Proof::Eq5(g)
        }
        _ => return Err(NotACode),
    })
}

/// `1 + ⌈axioms⌉` if `pc` codes a valid proof of the formula coded by `fc`,
/// otherwise `0`. Total on all pairs of naturals.
pub fn check_prf(lang: &Language, fc: &Nat, pc: &Nat) -> Nat {
    let Ok(p) = decode_proof(lang, pc) else {
        return Nat::zero();
    };
    let Ok(phi) = decode_formula(lang, fc) else {
        return Nat::zero();
    };
    match check_proof(lang, &p) {
        Ok(j) if j.conclusion == phi => {
            let codes: Result<Vec<Nat>, _> = j
                .axioms
                .iter()
                .map(|a| try_code_formula(a, CodeBudget::DEFAULT))
                .collect();
            match codes {
                // axioms are subformulas of proof nodes, so their codes are
                // smaller than pc and always fit
                Ok(codes) => code_list(&codes) + 1u32,
                Err(_) => Nat::zero(),
            }
        }
        _ => Nat::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::code_formula;
    use crate::coding::cpair;
    use crate::fol::{Formula, Term};

    #[test]
    fn axm_example() {
        let lnn = Language::lnn();
        let a = Formula::equal(Term::var(0), Term::var(0));
        let pc = code_proof(&Proof::Axm(a.clone())).unwrap();
        assert_eq!(pc, Nat::zero());
        assert_eq!(check_prf(lnn, &code_formula(&a).unwrap(), &pc), Nat::from(2u32));
        let wrong = Formula::equal(Term::var(0), Term::var(1));
        assert_eq!(check_prf(lnn, &code_formula(&wrong).unwrap(), &pc), Nat::zero());
    }

    #[test]
    fn round_trip_all_rules() {
        let lnn = Language::lnn();
        let a = Formula::equal(Term::var(0), Term::var(1));
        let b = Formula::not(a.clone());
        let t = Term::numeral(lnn, 2u32.into()).unwrap();
        let proofs = vec![
            Proof::mp(Proof::Imp1(a.clone(), b.clone()), Proof::Axm(a.clone())),
            Proof::gen(4, Proof::Eq1),
            Proof::Imp2(a.clone(), b.clone(), a.clone()),
            Proof::Cp(a.clone(), b.clone()),
            Proof::Fa1(a.clone(), 1, t),
            Proof::Fa2(a.clone(), 7),
            Proof::Fa3(a.clone(), b.clone(), 2),
            Proof::Eq2,
            Proof::Eq3,
            Proof::Eq4(RelSym(0)),
            Proof::Eq5(FuncSym(1)),
        ];
        for p in proofs {
            let c = code_proof(&p).unwrap();
            assert_eq!(decode_proof(lnn, &c).unwrap(), p);
        }
    }

    #[test]
    fn junk_decodes_to_zero() {
        let lnn = Language::lnn();
        // EQ1 with a nonzero parameter
        let bad = cpair(&Nat::from(9u32), &Nat::from(1u32));
        assert_eq!(decode_proof(lnn, &bad), Err(NotACode));
        assert_eq!(check_prf(lnn, &Nat::zero(), &bad), Nat::zero());
        let bad = cpair(&Nat::from(14u32), &Nat::zero());
        assert_eq!(check_prf(lnn, &Nat::zero(), &bad), Nat::zero());
    }
}
