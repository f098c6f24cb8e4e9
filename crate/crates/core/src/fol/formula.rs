use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{Language, RelSym, SyntaxError, Term, Var};

/// A first-order formula built from `=`, atomic relations, `⇒`, `¬` and `∀`.
///
/// Nodes are reference counted and cache their free variables, depth and size,
/// so sharing large subformulas is cheap.
#[derive(Clone)]
pub struct Formula(Arc<Node>);

struct Node {
    kind: Kind,
    free: BTreeSet<Var>,
    depth: usize,
    size: usize,
}

enum Kind {
    Equal(Term, Term),
    Atomic(RelSym, Arc<[Term]>),
    Imp(Formula, Formula),
    Not(Formula),
    Forall(Var, Formula),
}

/// Borrowed view of a formula's top constructor.
#[derive(Clone, Copy, Debug)]
pub enum FormulaKind<'a> {
    Equal(&'a Term, &'a Term),
    Atomic(RelSym, &'a [Term]),
    Imp(&'a Formula, &'a Formula),
    Not(&'a Formula),
    Forall(Var, &'a Formula),
}

impl Formula {
    fn mk(kind: Kind) -> Formula {
        let (free, depth, size) = match &kind {
            Kind::Equal(a, b) => {
                let mut s = a.free_vars();
                b.collect_free_vars(&mut s);
                (s, 0, 1 + a.size() + b.size())
            }
            Kind::Atomic(_, ts) => {
                let mut s = BTreeSet::new();
                ts.iter().for_each(|t| t.collect_free_vars(&mut s));
                (s, 0, 1 + ts.iter().map(Term::size).sum::<usize>())
            }
            Kind::Imp(a, b) => {
                let s = a.0.free.union(&b.0.free).copied().collect();
                (s, 1 + a.depth().max(b.depth()), 1 + a.size() + b.size())
            }
            Kind::Not(a) => (a.0.free.clone(), 1 + a.depth(), 1 + a.size()),
            Kind::Forall(v, a) => {
                let mut s = a.0.free.clone();
                s.remove(v);
                (s, 1 + a.depth(), 1 + a.size())
            }
        };
        Formula(Arc::new(Node {
            kind,
            free,
            depth,
            size,
        }))
    }

    pub fn equal(t: Term, u: Term) -> Formula {
        Formula::mk(Kind::Equal(t, u))
    }

    pub fn atomic(lang: &Language, r: RelSym, args: Vec<Term>) -> Result<Formula, SyntaxError> {
        let arity = lang.rel_arity(r).ok_or(SyntaxError::UnknownRelation(r))?;
        if arity != args.len() {
            return Err(SyntaxError::RelationArity {
                symbol: r,
                expected: arity,
                found: args.len(),
            });
        }
        Ok(Formula::atomic_unchecked(r, args))
    }

    pub(crate) fn atomic_unchecked(r: RelSym, args: Vec<Term>) -> Formula {
        Formula::mk(Kind::Atomic(r, args.into()))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::mk(Kind::Imp(a, b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::mk(Kind::Not(a))
    }

    pub fn forall(v: Var, a: Formula) -> Formula {
        Formula::mk(Kind::Forall(v, a))
    }

    // Derived connectives. These expansions are fixed; the kernel, the equality
    // axioms, representability and the diagonal constructions all rely on them.

    /// `A ∨ B ≝ ¬A ⇒ B`
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::imp(Formula::not(a), b)
    }

    /// `A ∧ B ≝ ¬(A ⇒ ¬B)`
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::imp(a, Formula::not(b)))
    }

    /// `A ⇔ B ≝ ¬((A ⇒ B) ⇒ ¬(B ⇒ A))`, i.e. `(A ⇒ B) ∧ (B ⇒ A)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// `∃v.A ≝ ¬∀v.¬A`
    pub fn exists(v: Var, a: Formula) -> Formula {
        Formula::not(Formula::forall(v, Formula::not(a)))
    }

    /// Right-nested conjunction; `None` for an empty list.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        let mut parts: Vec<_> = parts.into_iter().collect();
        let mut acc = parts.pop()?;
        while let Some(p) = parts.pop() {
            acc = Formula::and(p, acc);
        }
        Some(acc)
    }

    pub fn kind(&self) -> FormulaKind<'_> {
        match &self.0.kind {
            Kind::Equal(a, b) => FormulaKind::Equal(a, b),
            Kind::Atomic(r, ts) => FormulaKind::Atomic(*r, ts),
            Kind::Imp(a, b) => FormulaKind::Imp(a, b),
            Kind::Not(a) => FormulaKind::Not(a),
            Kind::Forall(v, a) => FormulaKind::Forall(*v, a),
        }
    }

    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match &self.0.kind {
            Kind::Imp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_not(&self) -> Option<&Formula> {
        match &self.0.kind {
            Kind::Not(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_forall(&self) -> Option<(Var, &Formula)> {
        match &self.0.kind {
            Kind::Forall(v, a) => Some((*v, a)),
            _ => None,
        }
    }

    /// Recognizes `¬∀v.¬A`.
    pub fn as_exists(&self) -> Option<(Var, &Formula)> {
        let (v, body) = self.as_not()?.as_forall()?;
        Some((v, body.as_not()?))
    }

    /// Recognizes `¬(A ⇒ ¬B)`.
    pub fn as_and(&self) -> Option<(&Formula, &Formula)> {
        let (a, nb) = self.as_not()?.as_imp()?;
        Some((a, nb.as_not()?))
    }

    /// Recognizes `¬A ⇒ B`.
    pub fn as_or(&self) -> Option<(&Formula, &Formula)> {
        let (na, b) = self.as_imp()?;
        Some((na.as_not()?, b))
    }

    pub fn free_vars(&self) -> &BTreeSet<Var> {
        &self.0.free
    }

    pub fn has_free_var(&self, v: Var) -> bool {
        self.0.free.contains(&v)
    }

    pub fn is_sentence(&self) -> bool {
        self.0.free.is_empty()
    }

    /// `Equal`/`Atomic` have depth 0; each connective or quantifier adds one.
    pub fn depth(&self) -> usize {
        self.0.depth
    }

    /// Number of formula and term nodes.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn is_quantifier_free(&self) -> bool {
        match &self.0.kind {
            Kind::Equal(..) | Kind::Atomic(..) => true,
            Kind::Imp(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Kind::Not(a) => a.is_quantifier_free(),
            Kind::Forall(..) => false,
        }
    }

    pub fn ptr_eq(&self, other: &Formula) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Identity of the shared node, stable while any clone is alive.
    pub(crate) fn node_id(&self) -> usize {
        Arc::as_ptr(&self.0) as *const () as usize
    }

    /// True if `needle` occurs as a subformula (including the whole formula).
    pub fn contains_subformula(&self, needle: &Formula) -> bool {
        if self.size() < needle.size() {
            return false;
        }
        if self == needle {
            return true;
        }
        match &self.0.kind {
            Kind::Equal(..) | Kind::Atomic(..) => false,
            Kind::Imp(a, b) => a.contains_subformula(needle) || b.contains_subformula(needle),
            Kind::Not(a) | Kind::Forall(_, a) => a.contains_subformula(needle),
        }
    }

    /// Arity audit against `lang`.
    pub fn check_language(&self, lang: &Language) -> Result<(), SyntaxError> {
        match &self.0.kind {
            Kind::Equal(a, b) => {
                a.check_language(lang)?;
                b.check_language(lang)
            }
            Kind::Atomic(r, ts) => {
                let arity = lang.rel_arity(*r).ok_or(SyntaxError::UnknownRelation(*r))?;
                if arity != ts.len() {
                    return Err(SyntaxError::RelationArity {
                        symbol: *r,
                        expected: arity,
                        found: ts.len(),
                    });
                }
                ts.iter().try_for_each(|t| t.check_language(lang))
            }
            Kind::Imp(a, b) => {
                a.check_language(lang)?;
                b.check_language(lang)
            }
            Kind::Not(a) | Kind::Forall(_, a) => a.check_language(lang),
        }
    }
}

// Dropping a very deep formula recursively would overflow the stack, so deep
// nodes hand their uniquely owned children to an explicit worklist instead.
impl Drop for Node {
    fn drop(&mut self) {
        if self.depth < 512 {
            return;
        }
        let mut stack = Vec::new();
        take_children(&mut self.kind, &mut stack);
        while let Some(f) = stack.pop() {
            if let Ok(mut node) = Arc::try_unwrap(f.0) {
                take_children(&mut node.kind, &mut stack);
            }
        }
    }
}

fn placeholder() -> Formula {
    static LEAF: OnceLock<Formula> = OnceLock::new();
    LEAF.get_or_init(|| Formula::equal(Term::var(0), Term::var(0))).clone()
}

fn take_children(kind: &mut Kind, out: &mut Vec<Formula>) {
    match kind {
        Kind::Equal(..) | Kind::Atomic(..) => {}
        Kind::Imp(a, b) => {
            out.push(std::mem::replace(a, placeholder()));
            out.push(std::mem::replace(b, placeholder()));
        }
        Kind::Not(a) | Kind::Forall(_, a) => out.push(std::mem::replace(a, placeholder())),
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.size != other.0.size || self.0.depth != other.0.depth {
            return false;
        }
        match (&self.0.kind, &other.0.kind) {
            (Kind::Equal(a, b), Kind::Equal(c, d)) => a == c && b == d,
            (Kind::Atomic(r, xs), Kind::Atomic(s, ys)) => r == s && xs == ys,
            (Kind::Imp(a, b), Kind::Imp(c, d)) => a == c && b == d,
            (Kind::Not(a), Kind::Not(b)) => a == b,
            (Kind::Forall(v, a), Kind::Forall(w, b)) => v == w && a == b,
            _ => false,
        }
    }
}

impl Eq for Formula {}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Equal(a, b) => write!(f, "({a:?} = {b:?})"),
            Kind::Atomic(r, ts) => write!(f, "r{}{:?}", r.0, ts),
            Kind::Imp(a, b) => write!(f, "({a:?} ⇒ {b:?})"),
            Kind::Not(a) => write!(f, "¬{a:?}"),
            Kind::Forall(v, a) => write!(f, "∀x{v}.{a:?}"),
        }
    }
}
