//! A small library of expressions: arithmetic, predicates, pairing, bounded
//! search and course-of-values recursion.
//!
//! Predicates return 1 for true and 0 for false.

use super::{Intrinsic, PrimRecError, PrimRecExpr};

fn p(n: usize, m: usize) -> PrimRecExpr {
    PrimRecExpr::proj(n, m).expect("projection in range")
}

fn c(n: usize, gs: Vec<PrimRecExpr>, h: PrimRecExpr) -> PrimRecExpr {
    PrimRecExpr::compose(n, gs, h).expect("arities match")
}

fn r(n: usize, g: PrimRecExpr, h: PrimRecExpr) -> PrimRecExpr {
    PrimRecExpr::prim_rec(n, g, h).expect("arities match")
}

/// The constant `n` as a function of no arguments.
pub fn const_nat(n: u64) -> PrimRecExpr {
    (0..n).fold(PrimRecExpr::zero(), |acc, _| c(0, vec![acc], PrimRecExpr::succ()))
}

/// The constant `n` as a function of `arity` arguments.
pub fn const_fn(arity: usize, n: u64) -> PrimRecExpr {
    c(arity, vec![], const_nat(n))
}

pub fn id_func() -> PrimRecExpr {
    p(1, 0)
}

/// `f ∘ g` for unary `f`.
pub fn compose_unary(f: PrimRecExpr, g: PrimRecExpr) -> Result<PrimRecExpr, PrimRecError> {
    PrimRecExpr::compose(g.arity(), vec![g], f)
}

/// `add(x, y) = x + y`, by recursion on `x`.
pub fn add() -> PrimRecExpr {
    r(1, p(1, 0), c(3, vec![p(3, 1)], PrimRecExpr::succ())).labelled(Intrinsic::Add)
}

/// `mul(x, y) = x · y`, by recursion on `x` with step `add(y, acc)`.
pub fn mul() -> PrimRecExpr {
    r(1, const_fn(1, 0), c(3, vec![p(3, 2), p(3, 1)], add())).labelled(Intrinsic::Mul)
}

pub fn pred() -> PrimRecExpr {
    r(0, PrimRecExpr::zero(), p(2, 0)).labelled(Intrinsic::Pred)
}

/// Truncated subtraction `x ∸ y`.
pub fn sub() -> PrimRecExpr {
    // rev(k, x) = x ∸ k
    let rev = r(1, p(1, 0), c(3, vec![p(3, 1)], pred()));
    c(2, vec![p(2, 1), p(2, 0)], rev).labelled(Intrinsic::Sub)
}

pub fn is_zero() -> PrimRecExpr {
    r(0, const_nat(1), const_fn(2, 0)).labelled(Intrinsic::IsZero)
}

pub fn sign() -> PrimRecExpr {
    r(0, PrimRecExpr::zero(), const_fn(2, 1)).labelled(Intrinsic::Sign)
}

/// `x < y`.
pub fn lt_pr() -> PrimRecExpr {
    c(2, vec![c(2, vec![p(2, 1), p(2, 0)], sub())], sign()).labelled(Intrinsic::Lt)
}

/// `x = y`.
pub fn eq_pr() -> PrimRecExpr {
    let diff = c(
        2,
        vec![c(2, vec![p(2, 0), p(2, 1)], sub()), c(2, vec![p(2, 1), p(2, 0)], sub())],
        add(),
    );
    c(2, vec![diff], is_zero()).labelled(Intrinsic::Eq)
}

/// `tri(k) = k(k+1)/2`.
pub fn tri() -> PrimRecExpr {
    r(
        0,
        PrimRecExpr::zero(),
        c(2, vec![c(2, vec![p(2, 0), p(2, 1)], add())], PrimRecExpr::succ()),
    )
    .labelled(Intrinsic::Tri)
}

/// Cantor pairing `a + tri(a + b)`.
pub fn cpair_pr() -> PrimRecExpr {
    let sum = c(2, vec![p(2, 0), p(2, 1)], add());
    c(2, vec![p(2, 0), c(2, vec![sum], tri())], add()).labelled(Intrinsic::CPair)
}

/// For `p` of arity `n + 1`, the function `(b, y) ↦` least `k ≤ b` with
/// `p(k, y) ≠ 0`, or `b + 1` when there is none.
pub fn bounded_search(pred_expr: PrimRecExpr) -> Result<PrimRecExpr, PrimRecError> {
    let n = match pred_expr.arity() {
        0 => return Err(PrimRecError::ArityMismatch { expected: 1, found: 0 }),
        a => a - 1,
    };
    // s(k, y) = least j < k with p(j, y) ≠ 0, else k;
    // s(k+1, y) = s(k, y) + [s(k, y) = k and p(k, y) = 0]
    let mut p_args = vec![p(n + 2, 0)];
    p_args.extend((2..n + 2).map(|i| p(n + 2, i)));
    let p_at_k = c(n + 2, p_args, pred_expr);
    let still = c(
        n + 2,
        vec![
            c(n + 2, vec![p(n + 2, 1), p(n + 2, 0)], eq_pr()),
            c(n + 2, vec![p_at_k], is_zero()),
        ],
        mul(),
    );
    let step = c(n + 2, vec![still, p(n + 2, 1)], add());
    let below = r(n, const_fn(n, 0), step);
    let mut args = vec![c(n + 1, vec![p(n + 1, 0)], PrimRecExpr::succ())];
    args.extend((1..=n).map(|i| p(n + 1, i)));
    Ok(c(n + 1, args, below))
}

/// For `h` of arity `n + 2`, the `f` of arity `n + 1` with
/// `f(k, y) = h(k, hist(k, y), y)`, where `hist(k, y)` codes the list
/// `[f(k-1, y), …, f(0, y)]` (`[] = 0`, `x :: l = 1 + ⟨x, l⟩`).
pub fn course_of_values(h: PrimRecExpr) -> Result<PrimRecExpr, PrimRecError> {
    let n = match h.arity() {
        a if a < 2 => return Err(PrimRecError::ArityMismatch { expected: 2, found: a }),
        a => a - 2,
    };
    // hist(k+1, y) = S(⟨h(k, hist(k, y), y), hist(k, y)⟩)
    let cons = c(
        n + 2,
        vec![c(n + 2, vec![h.clone(), p(n + 2, 1)], cpair_pr())],
        PrimRecExpr::succ(),
    );
    let hist = r(n, const_fn(n, 0), cons);
    let mut args = vec![p(n + 1, 0), hist];
    args.extend((1..=n).map(|i| p(n + 1, i)));
    PrimRecExpr::compose(n + 1, args, h)
}

/// `s(n)`, the largest `s` with `tri(s) ≤ n`.
fn tri_root() -> PrimRecExpr {
    // least k ≤ n with n < tri(k + 1)
    let test = c(
        2,
        vec![p(2, 1), c(2, vec![c(2, vec![p(2, 0)], PrimRecExpr::succ())], tri())],
        lt_pr(),
    );
    let search = bounded_search(test).expect("binary predicate");
    c(1, vec![p(1, 0), p(1, 0)], search)
}

/// First component of the Cantor pairing inverse.
pub fn cpair_pi1_pr() -> PrimRecExpr {
    let base = c(1, vec![tri_root()], tri());
    c(1, vec![p(1, 0), base], sub()).labelled(Intrinsic::CPairPi1)
}

/// Second component of the Cantor pairing inverse.
pub fn cpair_pi2_pr() -> PrimRecExpr {
    c(1, vec![tri_root(), cpair_pi1_pr()], sub()).labelled(Intrinsic::CPairPi2)
}
