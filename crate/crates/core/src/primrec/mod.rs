//! Primitive recursive function expressions and their evaluation.
//!
//! Projections count from zero on the left. In `PrimRec(n, g, h)` the
//! recursion argument comes first: `f(0, y) = g(y)` and
//! `f(k+1, y) = h(k, f(k, y), y)`.

mod beta;
mod builders;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};

pub(crate) use beta::beta_modulus;
pub use beta::{beta, beta_encode, crt, CrtError};
pub use builders::{
    add, bounded_search, compose_unary, const_fn, const_nat, course_of_values, cpair_pi1_pr, cpair_pi2_pr, cpair_pr,
    eq_pr, id_func, is_zero, lt_pr, mul, pred, sign, sub, tri,
};

use crate::coding::{cpair, cpair_inv, triangle};
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PrimRecError {
    #[error("expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("projection onto argument {m} of {n}")]
    BadProjection { n: usize, m: usize },
}

fn arity_check(expected: usize, found: usize) -> Result<(), PrimRecError> {
    if expected == found {
        Ok(())
    } else {
        Err(PrimRecError::ArityMismatch { expected, found })
    }
}

/// Shape of one expression node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimRecKind {
    Succ,
    Zero,
    Proj {
        n: usize,
        m: usize,
    },
    Compose {
        n: usize,
        gs: Vec<PrimRecExpr>,
        h: PrimRecExpr,
    },
    PrimRec {
        n: usize,
        g: PrimRecExpr,
        h: PrimRecExpr,
    },
}

/// A closed-form function that some builders attach to the node they return.
/// [`eval_fast`] uses it instead of unfolding the node; it never changes the
/// meaning of the expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Intrinsic {
    Add,
    Mul,
    Pred,
    Sub,
    IsZero,
    Sign,
    Lt,
    Eq,
    Tri,
    CPair,
    CPairPi1,
    CPairPi2,
}

impl Intrinsic {
    fn apply(self, a: &[Nat]) -> Nat {
        let b = |x: bool| if x { Nat::one() } else { Nat::zero() };
        match self {
            Intrinsic::Add => &a[0] + &a[1],
            Intrinsic::Mul => &a[0] * &a[1],
            Intrinsic::Pred => {
                if a[0].is_zero() {
                    Nat::zero()
                } else {
                    &a[0] - 1u32
                }
            }
            Intrinsic::Sub => {
                if a[0] > a[1] {
                    &a[0] - &a[1]
                } else {
                    Nat::zero()
                }
            }
            Intrinsic::IsZero => b(a[0].is_zero()),
            Intrinsic::Sign => b(!a[0].is_zero()),
            Intrinsic::Lt => b(a[0] < a[1]),
            Intrinsic::Eq => b(a[0] == a[1]),
            Intrinsic::Tri => triangle(&a[0]),
            Intrinsic::CPair => cpair(&a[0], &a[1]),
            Intrinsic::CPairPi1 => cpair_inv(&a[0]).0,
            Intrinsic::CPairPi2 => cpair_inv(&a[0]).1,
        }
    }
}

#[derive(Debug)]
struct Node {
    kind: PrimRecKind,
    arity: usize,
    intrinsic: Option<Intrinsic>,
}

/// An expression whose arity side conditions hold by construction.
///
/// Equality is structural and ignores intrinsic labels.
#[derive(Clone)]
pub struct PrimRecExpr(Arc<Node>);

impl PartialEq for PrimRecExpr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for PrimRecExpr {}

impl fmt::Debug for PrimRecExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            PrimRecKind::Succ => write!(f, "Succ"),
            PrimRecKind::Zero => write!(f, "Zero"),
            PrimRecKind::Proj { n, m } => write!(f, "Proj({n},{m})"),
            PrimRecKind::Compose { n, gs, h } => write!(f, "Compose({n},{},{gs:?},{h:?})", gs.len()),
            PrimRecKind::PrimRec { n, g, h } => write!(f, "PrimRec({n},{g:?},{h:?})"),
        }
    }
}

impl PrimRecExpr {
    fn make(kind: PrimRecKind, arity: usize) -> PrimRecExpr {
        PrimRecExpr(Arc::new(Node {
            kind,
            arity,
            intrinsic: None,
        }))
    }

    pub fn succ() -> PrimRecExpr {
        Self::make(PrimRecKind::Succ, 1)
    }

    pub fn zero() -> PrimRecExpr {
        Self::make(PrimRecKind::Zero, 0)
    }

    /// The `m`-th of `n` arguments, counting from zero.
    pub fn proj(n: usize, m: usize) -> Result<PrimRecExpr, PrimRecError> {
        if m >= n {
            return Err(PrimRecError::BadProjection { n, m });
        }
        Ok(Self::make(PrimRecKind::Proj { n, m }, n))
    }

    /// `h(g_1(x), …, g_m(x))` for `x` of length `n`, where `m = gs.len()`.
    pub fn compose(n: usize, gs: Vec<PrimRecExpr>, h: PrimRecExpr) -> Result<PrimRecExpr, PrimRecError> {
        for g in &gs {
            arity_check(n, g.arity())?;
        }
        arity_check(gs.len(), h.arity())?;
        Ok(Self::make(PrimRecKind::Compose { n, gs, h }, n))
    }

    /// Primitive recursion with `n` parameters; `g` has arity `n` and `h`
    /// arity `n + 2`.
    pub fn prim_rec(n: usize, g: PrimRecExpr, h: PrimRecExpr) -> Result<PrimRecExpr, PrimRecError> {
        arity_check(n, g.arity())?;
        arity_check(n + 2, h.arity())?;
        Ok(Self::make(PrimRecKind::PrimRec { n, g, h }, n + 1))
    }

    pub(crate) fn labelled(self, intrinsic: Intrinsic) -> PrimRecExpr {
        PrimRecExpr(Arc::new(Node {
            kind: self.0.kind.clone(),
            arity: self.0.arity,
            intrinsic: Some(intrinsic),
        }))
    }

    pub fn kind(&self) -> &PrimRecKind {
        &self.0.kind
    }

    pub fn arity(&self) -> usize {
        self.0.arity
    }

    pub fn intrinsic(&self) -> Option<Intrinsic> {
        self.0.intrinsic
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + match self.kind() {
            PrimRecKind::Succ | PrimRecKind::Zero | PrimRecKind::Proj { .. } => 0,
            PrimRecKind::Compose { gs, h, .. } => gs.iter().map(Self::size).sum::<usize>() + h.size(),
            PrimRecKind::PrimRec { g, h, .. } => g.size() + h.size(),
        }
    }
}

/// Evaluates by unfolding every node.
pub fn eval_prim_rec(e: &PrimRecExpr, args: &[Nat]) -> Result<Nat, PrimRecError> {
    arity_check(e.arity(), args.len())?;
    Ok(eval(e, args, false))
}

/// Like [`eval_prim_rec`], but nodes carrying an [`Intrinsic`] are computed
/// directly.
pub fn eval_fast(e: &PrimRecExpr, args: &[Nat]) -> Result<Nat, PrimRecError> {
    arity_check(e.arity(), args.len())?;
    Ok(eval(e, args, true))
}

fn eval(e: &PrimRecExpr, args: &[Nat], fast: bool) -> Nat {
    if fast {
        if let Some(i) = e.intrinsic() {
            return i.apply(args);
        }
    }
    match e.kind() {
        PrimRecKind::Succ => &args[0] + 1u32,
        PrimRecKind::Zero => Nat::zero(),
        PrimRecKind::Proj { m, .. } => args[*m].clone(),
        PrimRecKind::Compose { gs, h, .. } => {
            let inner: Vec<Nat> = gs.iter().map(|g| eval(g, args, fast)).collect();
            eval(h, &inner, fast)
        }
        PrimRecKind::PrimRec { g, h, .. } => {
            let mut acc = eval(g, &args[1..], fast);
            let mut hargs = Vec::with_capacity(args.len() + 1);
            let mut k = Nat::zero();
            while k < args[0] {
                hargs.clear();
                hargs.push(k.clone());
                hargs.push(acc);
                hargs.extend_from_slice(&args[1..]);
                acc = eval(h, &hargs, fast);
                k += 1u32;
            }
            acc
        }
    }
}

/// The values `f(0, y), …, f(x, y)` of a primitive recursion node, evaluated
/// with intrinsics.
pub(crate) fn recursion_values(g: &PrimRecExpr, h: &PrimRecExpr, x: &Nat, ys: &[Nat]) -> Vec<Nat> {
    let mut vals = vec![eval(g, ys, true)];
    let steps = x.to_u64().expect("recursion argument fits in u64");
    for k in 0..steps {
        let mut hargs = vec![Nat::from(k), vals.last().unwrap().clone()];
        hargs.extend_from_slice(ys);
        vals.push(eval(h, &hargs, true));
    }
    vals
}
