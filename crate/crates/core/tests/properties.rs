mod common;

use std::collections::BTreeMap;

use common::*;
use godel_kernel::arith::{eval_formula, lnn, var, TruthValue};
use godel_kernel::coding::{
    code_formula, code_list, code_proof, code_term, cpair, cpair_inv, decode_formula, decode_list, decode_proof,
    decode_term, try_code_proof, CodeBudget,
};
use godel_kernel::diagonal::fixed_point;
use godel_kernel::fol::{subst_formula, Formula};
use godel_kernel::primrec::{self, beta, beta_encode, crt, eval_fast, eval_prim_rec};
use godel_kernel::represent::{represent, verify_instance, witness_bound};
use godel_kernel::sexpr;
use godel_kernel::Nat;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pairing_round_trips(a in any::<u128>(), b in any::<u128>()) {
        let (a, b) = (Nat::from(a), Nat::from(b));
        let c = cpair(&a, &b);
        let s = &a + &b;
        prop_assert_eq!(&c, &(&a + &s * (&s + 1u32) / 2u32));
        prop_assert_eq!(cpair_inv(&c), (a, b));
    }

    #[test]
    fn lists_round_trip(items in prop::collection::vec(0u64..1000, 0..6)) {
        let items: Vec<Nat> = items.into_iter().map(Nat::from).collect();
        let n = code_list(&items);
        prop_assert_eq!(&n, &code_list_oracle(&items));
        prop_assert_eq!(decode_list(&n), items);
    }

    #[test]
    fn codes_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = gen_term(&mut r, 2, 4);
        prop_assert_eq!(decode_term(lnn(), &code_term(&t).unwrap()).unwrap(), t);
        let f = gen_formula_sized(&mut r, 3, 4, true, 1);
        prop_assert_eq!(decode_formula(lnn(), &code_formula(&f).unwrap()).unwrap(), f);
        let p = gen_proof(&mut r, 2, &[]);
        if let Ok(n) = try_code_proof(&p, CodeBudget::bits(1 << 16)) {
            prop_assert_eq!(decode_proof(lnn(), &n).unwrap(), p.clone());
            prop_assert_eq!(code_proof(&p).unwrap(), n);
        }
    }

    #[test]
    fn serializer_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = gen_formula(&mut r, 4, 5, true);
        let text = sexpr::print_formula(lnn(), &f);
        prop_assert_eq!(sexpr::parse_formula(lnn(), &text).unwrap(), f);
        let p = gen_proof(&mut r, 3, &[]);
        let text = sexpr::print_proof(lnn(), &p);
        prop_assert_eq!(sexpr::parse_proof(lnn(), &text).unwrap(), p);
        let arity = r.gen_range(0..3);
        let e = gen_primrec(&mut r, 3, arity);
        prop_assert_eq!(sexpr::parse_primrec(&sexpr::print_primrec(&e)).unwrap(), e);
    }

    #[test]
    fn substitution_matches_reference(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, v, s) = gen_subst_case(&mut r, 4);
        let out = subst_formula(&f, v, &s);
        prop_assert!(alpha_eq(&out, &ref_subst(&f, &BTreeMap::from([(v, s.clone())]))));
        prop_assert_eq!(out.depth(), f.depth());
    }

    #[test]
    fn crt_solves(ms in prop::collection::vec(1u64..40, 1..4), seed in any::<u64>()) {
        let mut r = rng(seed);
        let rs: Vec<u64> = ms.iter().map(|&m| r.gen_range(0..m)).collect();
        let moduli: Vec<Nat> = ms.iter().map(|&m| Nat::from(m)).collect();
        let residues: Vec<Nat> = rs.iter().map(|&x| Nat::from(x)).collect();
        if let Ok(x) = crt(&moduli, &residues) {
            let prod: u64 = ms.iter().product();
            prop_assert!(x < Nat::from(prod));
            for (m, want) in moduli.iter().zip(&residues) {
                prop_assert_eq!(&(&x % m), want);
            }
        }
    }

    #[test]
    fn beta_round_trips(values in prop::collection::vec(0u64..30, 0..6)) {
        let values: Vec<Nat> = values.into_iter().map(Nat::from).collect();
        let (x, y) = beta_encode(&values);
        for (i, v) in values.iter().enumerate() {
            prop_assert_eq!(&beta(&x, &y, &Nat::from(i)), v);
        }
    }

    #[test]
    fn fast_evaluation_agrees(seed in any::<u64>(), args in prop::collection::vec(0u64..4, 3)) {
        let mut r = rng(seed);
        let arity = r.gen_range(0..3);
        let e = gen_primrec(&mut r, 2, arity);
        let args: Vec<Nat> = args[..arity].iter().map(|&a| Nat::from(a)).collect();
        prop_assert_eq!(eval_fast(&e, &args), eval_prim_rec(&e, &args));
    }

    #[test]
    fn fixed_point_free_variables(seed in any::<u64>()) {
        let mut r = rng(seed);
        let phi = gen_formula(&mut r, 3, 4, true);
        let i = r.gen_range(0..4);
        let fp = fixed_point(&phi, i);
        let mut want = phi.free_vars().clone();
        want.remove(&i);
        prop_assert_eq!(fp.psi.free_vars(), &want);
        prop_assert!(!phi.free_vars().contains(&fp.witness));
    }

    #[test]
    fn evaluation_is_monotone_in_the_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = close(gen_light_formula(&mut r, 4, 2, 2, true));
        let small = eval_formula(&f, &BTreeMap::new(), 3u32).unwrap();
        let large = eval_formula(&f, &BTreeMap::new(), 9u32).unwrap();
        if small != TruthValue::Unknown {
            prop_assert_eq!(small, large);
        }
    }
}

#[test]
fn named_expressions_agree_with_arithmetic() {
    for (name, e) in named_primrecs() {
        for a in 0..6u64 {
            for b in 0..6u64 {
                let args: Vec<Nat> = [a, b][..e.arity()].iter().map(|&x| Nat::from(x)).collect();
                assert_eq!(eval_fast(&e, &args), eval_prim_rec(&e, &args), "{name}({a},{b})");
            }
        }
    }
}

// The pairing expression composes several recursions, so the witness search
// is exponential; instances stay at a, b <= 2.
#[test]
fn pairing_is_represented() {
    let e = primrec::cpair_pr();
    let rep = represent(&e);
    for a in 0..=2u64 {
        for b in 0..=2u64 {
            let args = [Nat::from(a), Nat::from(b)];
            let bound = witness_bound(&e, &args).unwrap();
            let v = Nat::from(cpair_u64(a, b));
            assert_eq!(
                verify_instance(&rep, &args, &v, &bound).unwrap(),
                TruthValue::True,
                "({a},{b})"
            );
            assert_ne!(
                verify_instance(&rep, &args, &(&v + 1u32), &bound).unwrap(),
                TruthValue::True,
                "({a},{b})+1"
            );
        }
    }
}

#[test]
fn alpha_oracle_sanity() {
    let a = Formula::forall(1, Formula::equal(var(1), var(0)));
    let b = Formula::forall(2, Formula::equal(var(2), var(0)));
    let c = Formula::forall(0, Formula::equal(var(0), var(0)));
    assert!(alpha_eq(&a, &b));
    assert!(!alpha_eq(&a, &c));
}
