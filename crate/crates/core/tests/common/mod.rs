//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;

use godel_kernel::arith::{lnn, lt, nat_to_term, plus, succ, times, var, zero, LT, PLUS, SUCC, TIMES, ZERO};
use godel_kernel::fol::{Formula, FormulaKind, Term, TermKind, Var};
use godel_kernel::primrec::{self, PrimRecExpr};
use godel_kernel::proof::{check_proof, Proof};
use godel_kernel::Nat;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn nat(n: u64) -> Nat {
    Nat::from(n)
}

// ---------------------------------------------------------------- oracles

pub fn cpair_u64(a: u64, b: u64) -> u64 {
    a + (a + b) * (a + b + 1) / 2
}

/// `[] = 0`, `h :: t = 1 + ⟨h, t⟩`, written out with the pairing formula.
pub fn code_list_oracle(items: &[Nat]) -> Nat {
    items.iter().rev().fold(Nat::from(0u32), |tail, h| {
        let s = h + &tail;
        h + (&s * (&s + 1u32)) / 2u32 + 1u32
    })
}

/// Alpha-equivalence: bound variables are compared by binder position.
pub fn alpha_eq(f: &Formula, g: &Formula) -> bool {
    aeq(f, g, &mut Vec::new(), &mut Vec::new())
}

fn aeq(f: &Formula, g: &Formula, bf: &mut Vec<Var>, bg: &mut Vec<Var>) -> bool {
    match (f.kind(), g.kind()) {
        (FormulaKind::Equal(a, b), FormulaKind::Equal(c, d)) => teq(a, c, bf, bg) && teq(b, d, bf, bg),
        (FormulaKind::Atomic(r, ts), FormulaKind::Atomic(q, us)) => {
            r == q && ts.len() == us.len() && ts.iter().zip(us).all(|(t, u)| teq(t, u, bf, bg))
        }
        (FormulaKind::Imp(a, b), FormulaKind::Imp(c, d)) => aeq(a, c, bf, bg) && aeq(b, d, bf, bg),
        (FormulaKind::Not(a), FormulaKind::Not(c)) => aeq(a, c, bf, bg),
        (FormulaKind::Forall(v, a), FormulaKind::Forall(w, c)) => {
            bf.push(v);
            bg.push(w);
            let r = aeq(a, c, bf, bg);
            bf.pop();
            bg.pop();
            r
        }
        _ => false,
    }
}

fn teq(t: &Term, u: &Term, bf: &[Var], bg: &[Var]) -> bool {
    match (t.kind(), u.kind()) {
        (TermKind::Var(x), TermKind::Var(y)) => {
            match (bf.iter().rposition(|&b| b == x), bg.iter().rposition(|&b| b == y)) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (TermKind::Apply(f, ts), TermKind::Apply(g, us)) => {
            f == g && ts.len() == us.len() && ts.iter().zip(us).all(|(a, b)| teq(a, b, bf, bg))
        }
        (TermKind::Numeral(_), TermKind::Numeral(_)) => t == u,
        _ => false,
    }
}

pub fn term_vars(t: &Term, out: &mut BTreeSet<Var>) {
    match t.kind() {
        TermKind::Var(x) => {
            out.insert(x);
        }
        TermKind::Apply(_, ts) => ts.iter().for_each(|a| term_vars(a, out)),
        TermKind::Numeral(_) => {}
    }
}

/// Free variables, computed from scratch.
pub fn free_vars_oracle(f: &Formula) -> BTreeSet<Var> {
    match f.kind() {
        FormulaKind::Equal(a, b) => {
            let mut s = BTreeSet::new();
            term_vars(a, &mut s);
            term_vars(b, &mut s);
            s
        }
        FormulaKind::Atomic(_, ts) => {
            let mut s = BTreeSet::new();
            ts.iter().for_each(|t| term_vars(t, &mut s));
            s
        }
        FormulaKind::Imp(a, b) => &free_vars_oracle(a) | &free_vars_oracle(b),
        FormulaKind::Not(a) => free_vars_oracle(a),
        FormulaKind::Forall(v, a) => {
            let mut s = free_vars_oracle(a);
            s.remove(&v);
            s
        }
    }
}

fn all_vars(f: &Formula, out: &mut BTreeSet<Var>) {
    match f.kind() {
        FormulaKind::Equal(a, b) => {
            term_vars(a, out);
            term_vars(b, out);
        }
        FormulaKind::Atomic(_, ts) => ts.iter().for_each(|t| term_vars(t, out)),
        FormulaKind::Imp(a, b) => {
            all_vars(a, out);
            all_vars(b, out);
        }
        FormulaKind::Not(a) => all_vars(a, out),
        FormulaKind::Forall(v, a) => {
            out.insert(v);
            all_vars(a, out);
        }
    }
}

fn ref_term(t: &Term, env: &BTreeMap<Var, Term>) -> Term {
    match t.kind() {
        TermKind::Var(x) => env.get(&x).cloned().unwrap_or_else(|| t.clone()),
        TermKind::Apply(f, ts) => Term::apply(lnn(), f, ts.iter().map(|a| ref_term(a, env)).collect()).unwrap(),
        TermKind::Numeral(_) => t.clone(),
    }
}

/// Textbook simultaneous capture-avoiding substitution: a binder that would
/// capture is renamed to one past every variable in sight.
pub fn ref_subst(f: &Formula, env: &BTreeMap<Var, Term>) -> Formula {
    let env: BTreeMap<Var, Term> = env
        .iter()
        .filter(|(v, _)| free_vars_oracle(f).contains(v))
        .map(|(v, t)| (*v, t.clone()))
        .collect();
    if env.is_empty() {
        return f.clone();
    }
    match f.kind() {
        FormulaKind::Equal(a, b) => Formula::equal(ref_term(a, &env), ref_term(b, &env)),
        FormulaKind::Atomic(r, ts) => {
            Formula::atomic(lnn(), r, ts.iter().map(|t| ref_term(t, &env)).collect()).unwrap()
        }
        FormulaKind::Imp(a, b) => Formula::imp(ref_subst(a, &env), ref_subst(b, &env)),
        FormulaKind::Not(a) => Formula::not(ref_subst(a, &env)),
        FormulaKind::Forall(w, a) => {
            let mut inner = env.clone();
            inner.remove(&w);
            let mut incoming = BTreeSet::new();
            inner.values().for_each(|t| term_vars(t, &mut incoming));
            if incoming.contains(&w) {
                let mut seen = incoming;
                all_vars(f, &mut seen);
                let z = seen.iter().max().unwrap() + 1;
                let renamed = ref_subst(a, &BTreeMap::from([(w, var(z))]));
                Formula::forall(z, ref_subst(&renamed, &inner))
            } else {
                Formula::forall(w, ref_subst(a, &inner))
            }
        }
    }
}

/// Whether substituting `s` for `v` in `f` has to rename some binder.
pub fn renaming_fires(f: &Formula, v: Var, s: &Term) -> bool {
    match f.kind() {
        FormulaKind::Equal(..) | FormulaKind::Atomic(..) => false,
        FormulaKind::Imp(a, b) => renaming_fires(a, v, s) || renaming_fires(b, v, s),
        FormulaKind::Not(a) => renaming_fires(a, v, s),
        FormulaKind::Forall(w, a) => {
            if w == v || !free_vars_oracle(a).contains(&v) {
                false
            } else {
                s.has_free_var(w) || renaming_fires(a, v, s)
            }
        }
    }
}

// ------------------------------------------------------------- generators

pub fn gen_term(r: &mut StdRng, depth: usize, vars: Var) -> Term {
    let leaf = depth == 0 || r.gen_bool(0.4);
    if leaf {
        return match r.gen_range(0..4) {
            0 => nat_to_term(r.gen_range(0..4u32)),
            1 => zero(),
            _ => var(r.gen_range(0..vars)),
        };
    }
    match r.gen_range(0..3) {
        0 => succ(gen_term(r, depth - 1, vars)),
        1 => plus(gen_term(r, depth - 1, vars), gen_term(r, depth - 1, vars)),
        _ => times(gen_term(r, depth - 1, vars), gen_term(r, depth - 1, vars)),
    }
}

fn gen_atom(r: &mut StdRng, vars: Var, with_lt: bool, term_depth: usize) -> Formula {
    let (a, b) = (gen_term(r, term_depth, vars), gen_term(r, term_depth, vars));
    if with_lt && r.gen_bool(0.4) {
        lt(a, b)
    } else {
        Formula::equal(a, b)
    }
}

/// A formula of depth at most `depth` over `x0 … x(vars-1)`.
pub fn gen_formula(r: &mut StdRng, depth: usize, vars: Var, with_lt: bool) -> Formula {
    gen_formula_sized(r, depth, vars, with_lt, 2)
}

/// Like [`gen_formula`] with terms of depth at most `term_depth`. Codes grow
/// quickly with term size, so code-level tests keep terms small.
pub fn gen_formula_sized(r: &mut StdRng, depth: usize, vars: Var, with_lt: bool, term_depth: usize) -> Formula {
    if depth == 0 || r.gen_bool(0.2) {
        return gen_atom(r, vars, with_lt, term_depth);
    }
    let sub = |r: &mut StdRng| gen_formula_sized(r, depth - 1, vars, with_lt, term_depth);
    match r.gen_range(0..3) {
        0 => Formula::imp(sub(r), sub(r)),
        1 => Formula::not(sub(r)),
        _ => Formula::forall(r.gen_range(0..vars), sub(r)),
    }
}

/// A formula with at most `quants` quantifiers, so bounded model checking
/// stays cheap.
pub fn gen_light_formula(r: &mut StdRng, depth: usize, vars: Var, quants: usize, with_lt: bool) -> Formula {
    if depth == 0 || r.gen_bool(0.25) {
        let (a, b) = (gen_term(r, 1, vars), gen_term(r, 1, vars));
        return if with_lt && r.gen_bool(0.5) {
            lt(a, b)
        } else {
            Formula::equal(a, b)
        };
    }
    match r.gen_range(0..3) {
        0 => {
            let left = r.gen_range(0..=quants);
            Formula::imp(
                gen_light_formula(r, depth - 1, vars, left, with_lt),
                gen_light_formula(r, depth - 1, vars, quants - left, with_lt),
            )
        }
        1 => Formula::not(gen_light_formula(r, depth - 1, vars, quants, with_lt)),
        _ if quants > 0 => Formula::forall(
            r.gen_range(0..vars),
            gen_light_formula(r, depth - 1, vars, quants - 1, with_lt),
        ),
        _ => Formula::not(gen_light_formula(r, depth - 1, vars, quants, with_lt)),
    }
}

/// Universal closure over the free variables, in ascending order.
pub fn close(f: Formula) -> Formula {
    let fv: Vec<Var> = f.free_vars().iter().copied().collect();
    fv.into_iter().rev().fold(f, |acc, v| Formula::forall(v, acc))
}

/// A `(φ, v, s)` triple; roughly a third are built so that renaming fires.
pub fn gen_subst_case(r: &mut StdRng, depth: usize) -> (Formula, Var, Term) {
    let v = r.gen_range(0..4);
    if depth >= 1 && r.gen_bool(0.35) {
        let w = (v + r.gen_range(1..4)) % 4;
        let atom = Formula::equal(var(v), plus(var(w), gen_term(r, 0, 4)));
        let rest = gen_formula_sized(r, depth.saturating_sub(2), 4, true, 1);
        let body = if r.gen_bool(0.5) {
            Formula::imp(atom, rest)
        } else {
            Formula::imp(rest, atom)
        };
        let body = if depth >= 2 {
            body
        } else {
            Formula::equal(var(v), var(w))
        };
        let s = if r.gen_bool(0.5) { var(w) } else { succ(var(w)) };
        return (Formula::forall(w, body), v, s);
    }
    (gen_formula_sized(r, depth, 4, true, 1), v, gen_term(r, 1, 5))
}

fn conclusion(p: &Proof) -> Formula {
    check_proof(lnn(), p).expect("generated proof checks").conclusion
}

fn axiom_vars(p: &Proof) -> BTreeSet<Var> {
    let mut s = BTreeSet::new();
    for a in check_proof(lnn(), p).unwrap().axioms {
        s.extend(a.free_vars().iter().copied());
    }
    s
}

/// A kernel-valid proof. Assumptions are drawn from `pool`, or made up when
/// the pool is empty.
pub fn gen_proof(r: &mut StdRng, depth: usize, pool: &[Formula]) -> Proof {
    if depth == 0 || r.gen_bool(0.25) {
        return gen_leaf(r, pool);
    }
    match r.gen_range(0..4) {
        0 => {
            // from A, get B ⇒ A
            let q = gen_proof(r, depth - 1, pool);
            let b = proof_formula(r);
            Proof::mp(Proof::Imp1(conclusion(&q), b), q)
        }
        1 => {
            let q = gen_proof(r, depth - 1, pool);
            let used = axiom_vars(&q);
            let v = (0..6).find(|v| !used.contains(v) && r.gen_bool(0.6)).unwrap_or(7);
            Proof::gen(v, q)
        }
        2 => {
            // from ∀v.A, get A[v/t]
            let q = gen_proof(r, depth - 1, pool);
            let used = axiom_vars(&q);
            let v = (0..4).find(|v| !used.contains(v)).unwrap_or(9);
            let a = conclusion(&q);
            let t = gen_term(r, 0, 4);
            Proof::mp(Proof::Fa1(a, v, t), Proof::gen(v, q))
        }
        _ => {
            // A and B give A, through B ⇒ A
            let q = gen_proof(r, depth - 1, pool);
            let second = gen_proof(r, depth - 1, pool);
            let (a, b) = (conclusion(&q), conclusion(&second));
            Proof::mp(Proof::mp(Proof::Imp1(a, b), q), second)
        }
    }
}

/// Formulas inside generated proofs stay small so proof codes stay within
/// the coding budget.
pub fn proof_formula(r: &mut StdRng) -> Formula {
    gen_formula_sized(r, 1, 3, true, 0)
}

fn gen_leaf(r: &mut StdRng, pool: &[Formula]) -> Proof {
    let f = proof_formula;
    match r.gen_range(0..12) {
        0 | 1 | 11 => match pool.is_empty() {
            true => Proof::Axm(f(r)),
            // the first pool entry is the one tests usually care about
            false if r.gen_bool(0.5) => Proof::Axm(pool[0].clone()),
            false => Proof::Axm(pool[r.gen_range(0..pool.len())].clone()),
        },
        2 => Proof::Imp1(f(r), f(r)),
        3 => Proof::Imp2(f(r), f(r), f(r)),
        4 => Proof::Cp(f(r), f(r)),
        5 => Proof::Fa1(f(r), r.gen_range(0..3), gen_term(r, 0, 3)),
        6 => {
            let a = f(r);
            let v = (0..8).find(|v| !a.has_free_var(*v)).unwrap();
            Proof::Fa2(a, v)
        }
        7 => Proof::Fa3(f(r), f(r), r.gen_range(0..3)),
        8 => [Proof::Eq1, Proof::Eq2, Proof::Eq3][r.gen_range(0..3)].clone(),
        9 => Proof::Eq4(LT),
        _ => Proof::Eq5([PLUS, TIMES, SUCC, ZERO][r.gen_range(0..4)]),
    }
}

/// A small well-formed primitive recursive expression.
pub fn gen_primrec(r: &mut StdRng, depth: usize, arity: usize) -> PrimRecExpr {
    if depth == 0 || r.gen_bool(0.3) {
        return match (arity, r.gen_range(0..3)) {
            (0, _) => PrimRecExpr::zero(),
            (1, 0) => PrimRecExpr::succ(),
            (n, _) => PrimRecExpr::proj(n, r.gen_range(0..n)).unwrap(),
        };
    }
    if arity >= 1 && r.gen_bool(0.5) {
        let g = gen_primrec(r, depth - 1, arity - 1);
        let h = gen_primrec(r, depth - 1, arity + 1);
        PrimRecExpr::prim_rec(arity - 1, g, h).unwrap()
    } else {
        let m = r.gen_range(0..3);
        let gs = (0..m).map(|_| gen_primrec(r, depth - 1, arity)).collect();
        PrimRecExpr::compose(arity, gs, gen_primrec(r, depth - 1, m)).unwrap()
    }
}

pub fn named_primrecs() -> Vec<(&'static str, PrimRecExpr)> {
    vec![
        ("add", primrec::add()),
        ("mul", primrec::mul()),
        ("pred", primrec::pred()),
        ("sub", primrec::sub()),
        ("cpair", primrec::cpair_pr()),
    ]
}

// -------------------------------------------------------------- exit codes

pub struct Case {
    pub name: &'static str,
    pub args: Vec<String>,
    pub code: i32,
    pub stdout: Option<&'static str>,
}

fn case(name: &'static str, args: &[&str], code: i32, stdout: Option<&'static str>) -> Case {
    Case {
        name,
        args: args.iter().map(|s| s.to_string()).collect(),
        code,
        stdout,
    }
}

/// Writes the fixture files into `dir` and lists the exit-code matrix.
pub fn exit_code_matrix(dir: &Path) -> Vec<Case> {
    let files = [
        ("refl.sexp", "(equal (var 0) (var 0))"),
        ("other.sexp", "(equal (var 0) (var 1))"),
        ("axm.sexp", "(axm (equal (var 0) (var 0)))"),
        ("sys.sexp", "; one axiom\n(equal (var 0) (var 0))\n"),
        ("arity.sexp", "(equal (apply Plus (var 0)) (var 0))"),
        ("unclosed.sexp", "(not (equal (var 0) (var 0))"),
        ("badgen.sexp", "(gen 0 (axm (equal (var 0) (var 0))))"),
        ("gen.sexp", "(gen 0 (axm (equal (num 0) (num 0))))"),
        ("gen-concl.sexp", "(forall 0 (equal (num 0) (num 0)))"),
        ("closed.sexp", "(equal (num 0) (num 0))"),
        ("add.sexp", "(primrec 1 (proj 1 0) (compose 3 1 ((proj 3 1)) (succ)))"),
        ("badpr.sexp", "(compose 1 1 ((succ)) (proj 2 0))"),
        ("term.sexp", "(apply Plus (var 1) (num 2))"),
        ("eq1.sexp", "(eq1)"),
        ("eq1-concl.sexp", "(equal (var 0) (var 0))"),
    ];
    for (name, text) in files {
        std::fs::write(dir.join(name), text).unwrap();
    }
    let p = |name: &str| dir.join(name).display().to_string();
    let leak = |s: String| -> &'static str { Box::leak(s.into_boxed_str()) };
    let (refl, other, axm, sys) = (
        leak(p("refl.sexp")),
        leak(p("other.sexp")),
        leak(p("axm.sexp")),
        leak(p("sys.sexp")),
    );
    let (arity, unclosed, badgen, add) = (
        leak(p("arity.sexp")),
        leak(p("unclosed.sexp")),
        leak(p("badgen.sexp")),
        leak(p("add.sexp")),
    );
    let (gen, gen_concl, closed, badpr) = (
        leak(p("gen.sexp")),
        leak(p("gen-concl.sexp")),
        leak(p("closed.sexp")),
        leak(p("badpr.sexp")),
    );
    let (term, eq1, eq1c) = (leak(p("term.sexp")), leak(p("eq1.sexp")), leak(p("eq1-concl.sexp")));
    let missing = leak(p("missing.sexp"));
    let out = leak(p("rosser.sexp"));
    vec![
        case(
            "check-proof accepts",
            &["check-proof", "--proof", axm, "--conclusion", refl, "--system", sys],
            0,
            Some("(equal (var 0) (var 0))\n"),
        ),
        case(
            "check-proof wrong conclusion",
            &["check-proof", "--proof", axm, "--conclusion", other, "--system", sys],
            1,
            None,
        ),
        case(
            "check-proof arity error",
            &["check-proof", "--proof", axm, "--conclusion", arity, "--system", sys],
            2,
            None,
        ),
        case(
            "check-proof unclosed paren",
            &[
                "check-proof",
                "--proof",
                unclosed,
                "--conclusion",
                refl,
                "--system",
                sys,
            ],
            2,
            None,
        ),
        case(
            "check-proof axiom outside nn",
            &["check-proof", "--proof", axm, "--conclusion", refl, "--system", "nn"],
            1,
            None,
        ),
        case(
            "check-proof ill-formed gen",
            &["check-proof", "--proof", badgen, "--conclusion", refl, "--system", sys],
            1,
            None,
        ),
        case(
            "check-proof axiom outside pa",
            &[
                "check-proof",
                "--proof",
                gen,
                "--conclusion",
                gen_concl,
                "--system",
                "pa",
            ],
            1,
            None,
        ),
        case(
            "check-proof schema under pa",
            &["check-proof", "--proof", eq1, "--conclusion", eq1c, "--system", "pa"],
            0,
            Some(""),
        ),
        case(
            "check-proof missing file",
            &["check-proof", "--proof", missing, "--conclusion", refl],
            2,
            None,
        ),
        case("encode formula", &["encode", "--kind", "formula", refl], 0, Some("0\n")),
        case("encode term", &["encode", "--kind", "term", term], 0, None),
        case("encode proof", &["encode", "--kind", "proof", axm], 0, None),
        case(
            "encode closed formula",
            &["encode", "--kind", "formula", closed],
            0,
            None,
        ),
        case(
            "encode parse error",
            &["encode", "--kind", "formula", unclosed],
            2,
            None,
        ),
        case("encode wrong kind", &["encode", "--kind", "proof", refl], 2, None),
        case(
            "decode formula 0",
            &["decode", "--kind", "formula", "0"],
            0,
            Some("(equal (var 0) (var 0))\n"),
        ),
        case(
            "decode formula 5",
            &["decode", "--kind", "formula", "5"],
            0,
            Some("(not (equal (var 0) (var 0)))\n"),
        ),
        case(
            "decode formula not a code",
            &["decode", "--kind", "formula", "20"],
            1,
            None,
        ),
        case(
            "decode term 0",
            &["decode", "--kind", "term", "0"],
            0,
            Some("(var 0)\n"),
        ),
        case("decode bad number", &["decode", "--kind", "formula", "x1"], 2, None),
        case("eval-pr add", &["eval-pr", add, "--args", "2", "3"], 0, Some("5\n")),
        case("eval-pr arity mismatch", &["eval-pr", add, "--args", "2"], 1, None),
        case(
            "eval-pr ill-typed expression",
            &["eval-pr", badpr, "--args", "1"],
            2,
            None,
        ),
        case(
            "check-prf axm example",
            &["check-prf", "--formula-code", "0", "--proof-code", "0"],
            0,
            Some("2\n"),
        ),
        case(
            "check-prf non-proof",
            &["check-prf", "--formula-code", "0", "--proof-code", "7"],
            0,
            Some("0\n"),
        ),
        case(
            "build-rosser nn",
            &["build-rosser", "--system", "nn", "--out", out, "--stats"],
            0,
            None,
        ),
        case("build-rosser file system", &["build-rosser", "--system", sys], 0, None),
        case(
            "build-rosser bad system file",
            &["build-rosser", "--system", unclosed],
            2,
            None,
        ),
        case("no subcommand", &[], 2, None),
        case("unknown subcommand", &["prove-everything"], 2, None),
    ]
}

pub fn run_bin(args: &[String]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_godel"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

/// Runs the matrix and returns the failures.
pub fn check_matrix(dir: &Path) -> Vec<String> {
    let mut bad = Vec::new();
    for c in exit_code_matrix(dir) {
        let (code, stdout, stderr) = run_bin(&c.args);
        if code != c.code {
            bad.push(format!(
                "{}: exit {code}, expected {} ({})",
                c.name,
                c.code,
                stderr.trim()
            ));
        } else if let Some(want) = c.stdout {
            if stdout != want {
                bad.push(format!("{}: printed {stdout:?}, expected {want:?}", c.name));
            }
        }
    }
    bad
}

pub fn scratch_dir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("godel-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
