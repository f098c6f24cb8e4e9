//! The S-expression text format for terms, formulas, proofs and primitive
//! recursive expressions.
//!
//! ```text
//! term    = (var n) | (num n) | (code formula) | (apply SYM term…)
//! formula = (equal t u) | (atomic SYM t…) | (imp f g) | (not f) | (forall n f)
//! proof   = (axm f) | (mp p q) | (gen n p) | (imp1 f g) | (imp2 f g h) | (cp f g)
//!         | (fa1 f n t) | (fa2 f n) | (fa3 f g n) | (eq1) | (eq2) | (eq3)
//!         | (eq4 SYM) | (eq5 SYM)
//! primrec = (succ) | (zero) | (proj n m) | (compose n m (g…) h) | (primrec n g h)
//! ```
//!
//! Numbers are unbounded decimals and symbols are the language's names. A
//! `(code f)` term is the numeral for the code of `f`; the printer uses it for
//! codes too large to write out. `;` starts a comment.

use std::fmt::Write as _;

use crate::fol::{Formula, FormulaKind, FuncSym, Language, NumeralValue, RelSym, Term, TermKind, Var};
use crate::primrec::{PrimRecExpr, PrimRecKind};
use crate::proof::Proof;
use crate::Nat;

const MAX_NESTING: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input")]
    UnexpectedEof,
    #[error("unexpected `)`")]
    UnbalancedClose,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("bad number `{0}`")]
    BadNumber(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown form `{0}`")]
    UnknownForm(String),
    #[error("{0}")]
    Arity(String),
    #[error("nesting deeper than {MAX_NESTING}")]
    TooDeep,
    #[error("trailing input")]
    TrailingInput,
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Debug)]
enum Sx {
    Atom(String, Pos),
    List(Vec<Sx>, Pos),
}

fn err(pos: Pos, kind: ParseErrorKind) -> ParseError {
    ParseError {
        line: pos.line,
        col: pos.col,
        kind,
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn skip_space(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_space();
        self.chars.peek().is_none()
    }

    fn read(&mut self, depth: usize) -> Result<Sx, ParseError> {
        self.skip_space();
        let start = self.pos;
        match self.chars.peek().copied() {
            None => Err(err(start, ParseErrorKind::UnexpectedEof)),
            Some(')') => Err(err(start, ParseErrorKind::UnbalancedClose)),
            Some('(') => {
                if depth >= MAX_NESTING {
                    return Err(err(start, ParseErrorKind::TooDeep));
                }
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_space();
                    match self.chars.peek() {
                        None => return Err(err(self.pos, ParseErrorKind::UnexpectedEof)),
                        Some(')') => {
                            self.bump();
                            return Ok(Sx::List(items, start));
                        }
                        Some(_) => items.push(self.read(depth + 1)?),
                    }
                }
            }
            Some(_) => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Sx::Atom(s, start))
            }
        }
    }
}

fn read_all(src: &str) -> Result<Vec<Sx>, ParseError> {
    let mut r = Reader {
        chars: src.chars().peekable(),
        pos: Pos { line: 1, col: 1 },
    };
    let mut out = Vec::new();
    while !r.at_end() {
        out.push(r.read(0)?);
    }
    Ok(out)
}

fn read_one(src: &str) -> Result<Sx, ParseError> {
    let mut r = Reader {
        chars: src.chars().peekable(),
        pos: Pos { line: 1, col: 1 },
    };
    let sx = r.read(0)?;
    if !r.at_end() {
        return Err(err(r.pos, ParseErrorKind::TrailingInput));
    }
    Ok(sx)
}

/// A list form `(head args…)`.
fn form<'s>(sx: &'s Sx, what: &'static str) -> Result<(&'s str, &'s [Sx], Pos), ParseError> {
    match sx {
        Sx::List(items, pos) => match items.first() {
            Some(Sx::Atom(head, _)) => Ok((head, &items[1..], *pos)),
            _ => Err(err(*pos, ParseErrorKind::Expected(what))),
        },
        Sx::Atom(_, pos) => Err(err(*pos, ParseErrorKind::Expected(what))),
    }
}

fn expect_len(args: &[Sx], n: usize, head: &str, pos: Pos) -> Result<(), ParseError> {
    if args.len() == n {
        Ok(())
    } else {
        Err(err(
            pos,
            ParseErrorKind::Arity(format!("`{head}` takes {n} arguments, got {}", args.len())),
        ))
    }
}

fn atom<'s>(sx: &'s Sx, what: &'static str) -> Result<(&'s str, Pos), ParseError> {
    match sx {
        Sx::Atom(s, p) => Ok((s, *p)),
        Sx::List(_, p) => Err(err(*p, ParseErrorKind::Expected(what))),
    }
}

fn nat(sx: &Sx) -> Result<Nat, ParseError> {
    let (s, p) = atom(sx, "a number")?;
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(p, ParseErrorKind::BadNumber(s.to_string())));
    }
    s.parse().map_err(|_| err(p, ParseErrorKind::BadNumber(s.to_string())))
}

fn small<T: std::str::FromStr>(sx: &Sx) -> Result<T, ParseError> {
    let (s, p) = atom(sx, "a number")?;
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(p, ParseErrorKind::BadNumber(s.to_string())));
    }
    s.parse().map_err(|_| err(p, ParseErrorKind::BadNumber(s.to_string())))
}

fn func(lang: &Language, sx: &Sx) -> Result<FuncSym, ParseError> {
    let (s, p) = atom(sx, "a function symbol")?;
    lang.func_by_name(s)
        .ok_or_else(|| err(p, ParseErrorKind::UnknownSymbol(s.to_string())))
}

fn rel(lang: &Language, sx: &Sx) -> Result<RelSym, ParseError> {
    let (s, p) = atom(sx, "a relation symbol")?;
    lang.rel_by_name(s)
        .ok_or_else(|| err(p, ParseErrorKind::UnknownSymbol(s.to_string())))
}

fn arity_err(pos: Pos, e: impl std::fmt::Display) -> ParseError {
    err(pos, ParseErrorKind::Arity(e.to_string()))
}

fn term(lang: &Language, sx: &Sx) -> Result<Term, ParseError> {
    let (head, args, pos) = form(sx, "a term")?;
    match head {
        "var" => {
            expect_len(args, 1, head, pos)?;
            Ok(Term::var(small::<Var>(&args[0])?))
        }
        "num" => {
            expect_len(args, 1, head, pos)?;
            Term::numeral(lang, nat(&args[0])?).map_err(|e| arity_err(pos, e))
        }
        "code" => {
            expect_len(args, 1, head, pos)?;
            Term::code_numeral(lang, &formula(lang, &args[0])?).map_err(|e| arity_err(pos, e))
        }
        "apply" => {
            let (f, rest) = args
                .split_first()
                .ok_or_else(|| err(pos, ParseErrorKind::Expected("a function symbol")))?;
            let (name, _) = atom(f, "a function symbol")?;
            let f = func(lang, f)?;
            let expected = lang.func_arity(f).unwrap_or_default();
            if rest.len() != expected {
                return Err(arity_err(
                    pos,
                    format!("`{name}` takes {expected} arguments, got {}", rest.len()),
                ));
            }
            let ts = rest.iter().map(|a| term(lang, a)).collect::<Result<_, _>>()?;
            Term::apply(lang, f, ts).map_err(|e| arity_err(pos, e))
        }
        _ => Err(err(pos, ParseErrorKind::UnknownForm(head.to_string()))),
    }
}

fn formula(lang: &Language, sx: &Sx) -> Result<Formula, ParseError> {
    let (head, args, pos) = form(sx, "a formula")?;
    match head {
        "equal" => {
            expect_len(args, 2, head, pos)?;
            Ok(Formula::equal(term(lang, &args[0])?, term(lang, &args[1])?))
        }
        "atomic" => {
            let (r, rest) = args
                .split_first()
                .ok_or_else(|| err(pos, ParseErrorKind::Expected("a relation symbol")))?;
            let (name, _) = atom(r, "a relation symbol")?;
            let r = rel(lang, r)?;
            let expected = lang.rel_arity(r).unwrap_or_default();
            if rest.len() != expected {
                return Err(arity_err(
                    pos,
                    format!("`{name}` takes {expected} arguments, got {}", rest.len()),
                ));
            }
            let ts = rest.iter().map(|a| term(lang, a)).collect::<Result<_, _>>()?;
            Formula::atomic(lang, r, ts).map_err(|e| arity_err(pos, e))
        }
        "imp" => {
            expect_len(args, 2, head, pos)?;
            Ok(Formula::imp(formula(lang, &args[0])?, formula(lang, &args[1])?))
        }
        "not" => {
            expect_len(args, 1, head, pos)?;
            Ok(Formula::not(formula(lang, &args[0])?))
        }
        "forall" => {
            expect_len(args, 2, head, pos)?;
            Ok(Formula::forall(small(&args[0])?, formula(lang, &args[1])?))
        }
        _ => Err(err(pos, ParseErrorKind::UnknownForm(head.to_string()))),
    }
}

fn proof(lang: &Language, sx: &Sx) -> Result<Proof, ParseError> {
    let (head, args, pos) = form(sx, "a proof")?;
    let f = |i: usize| formula(lang, &args[i]);
    let n = |i: usize| small::<Var>(&args[i]);
    let need = |k: usize| expect_len(args, k, head, pos);
    Ok(match head {
        "axm" => {
            need(1)?;
            Proof::Axm(f(0)?)
        }
        "mp" => {
            need(2)?;
            Proof::mp(proof(lang, &args[0])?, proof(lang, &args[1])?)
        }
        "gen" => {
            need(2)?;
            Proof::gen(n(0)?, proof(lang, &args[1])?)
        }
        "imp1" => {
            need(2)?;
            Proof::Imp1(f(0)?, f(1)?)
        }
        "imp2" => {
            need(3)?;
            Proof::Imp2(f(0)?, f(1)?, f(2)?)
        }
        "cp" => {
            need(2)?;
            Proof::Cp(f(0)?, f(1)?)
        }
        "fa1" => {
            need(3)?;
            Proof::Fa1(f(0)?, n(1)?, term(lang, &args[2])?)
        }
        "fa2" => {
            need(2)?;
            Proof::Fa2(f(0)?, n(1)?)
        }
        "fa3" => {
            need(3)?;
            Proof::Fa3(f(0)?, f(1)?, n(2)?)
        }
        "eq1" | "eq2" | "eq3" => {
            need(0)?;
            match head {
                "eq1" => Proof::Eq1,
                "eq2" => Proof::Eq2,
                _ => Proof::Eq3,
            }
        }
        "eq4" => {
            need(1)?;
            Proof::Eq4(rel(lang, &args[0])?)
        }
        "eq5" => {
            need(1)?;
            Proof::Eq5(func(lang, &args[0])?)
        }
        _ => return Err(err(pos, ParseErrorKind::UnknownForm(head.to_string()))),
    })
}

fn primrec(sx: &Sx) -> Result<PrimRecExpr, ParseError> {
    let (head, args, pos) = form(sx, "a primitive recursive expression")?;
    let need = |k: usize| expect_len(args, k, head, pos);
    match head {
        "succ" => {
            need(0)?;
            Ok(PrimRecExpr::succ())
        }
        "zero" => {
            need(0)?;
            Ok(PrimRecExpr::zero())
        }
        "proj" => {
            need(2)?;
            PrimRecExpr::proj(small(&args[0])?, small(&args[1])?).map_err(|e| arity_err(pos, e))
        }
        "compose" => {
            need(4)?;
            let n = small(&args[0])?;
            let m: usize = small(&args[1])?;
            let gs = match &args[2] {
                Sx::List(items, _) => items.iter().map(primrec).collect::<Result<Vec<_>, _>>()?,
                Sx::Atom(_, p) => return Err(err(*p, ParseErrorKind::Expected("a list of expressions"))),
            };
            if gs.len() != m {
                return Err(arity_err(
                    pos,
                    format!("compose declares {m} functions, lists {}", gs.len()),
                ));
            }
            PrimRecExpr::compose(n, gs, primrec(&args[3])?).map_err(|e| arity_err(pos, e))
        }
        "primrec" => {
            need(3)?;
            PrimRecExpr::prim_rec(small(&args[0])?, primrec(&args[1])?, primrec(&args[2])?)
                .map_err(|e| arity_err(pos, e))
        }
        _ => Err(err(pos, ParseErrorKind::UnknownForm(head.to_string()))),
    }
}

pub fn parse_term(lang: &Language, src: &str) -> Result<Term, ParseError> {
    term(lang, &read_one(src)?)
}

pub fn parse_formula(lang: &Language, src: &str) -> Result<Formula, ParseError> {
    formula(lang, &read_one(src)?)
}

/// Zero or more formulas, one after another.
pub fn parse_formulas(lang: &Language, src: &str) -> Result<Vec<Formula>, ParseError> {
    read_all(src)?.iter().map(|sx| formula(lang, sx)).collect()
}

pub fn parse_proof(lang: &Language, src: &str) -> Result<Proof, ParseError> {
    proof(lang, &read_one(src)?)
}

pub fn parse_primrec(src: &str) -> Result<PrimRecExpr, ParseError> {
    primrec(&read_one(src)?)
}

fn func_name(lang: &Language, f: FuncSym) -> String {
    lang.func_name(f).map_or_else(|| format!("f{}", f.0), str::to_string)
}

fn rel_name(lang: &Language, r: RelSym) -> String {
    lang.rel_name(r).map_or_else(|| format!("r{}", r.0), str::to_string)
}

fn write_term(lang: &Language, t: &Term, out: &mut String) {
    match t.kind() {
        TermKind::Var(v) => {
            let _ = write!(out, "(var {v})");
        }
        TermKind::Numeral(n) => match n.value() {
            NumeralValue::Lit(k) => {
                let _ = write!(out, "(num {k})");
            }
            NumeralValue::CodeOf(f) => {
                out.push_str("(code ");
                write_formula(lang, f, out);
                out.push(')');
            }
        },
        TermKind::Apply(f, args) => {
            out.push_str("(apply ");
            out.push_str(&func_name(lang, f));
            for a in args {
                out.push(' ');
                write_term(lang, a, out);
            }
            out.push(')');
        }
    }
}

fn write_formula(lang: &Language, f: &Formula, out: &mut String) {
    match f.kind() {
        FormulaKind::Equal(a, b) => {
            out.push_str("(equal ");
            write_term(lang, a, out);
            out.push(' ');
            write_term(lang, b, out);
        }
        FormulaKind::Atomic(r, ts) => {
            out.push_str("(atomic ");
            out.push_str(&rel_name(lang, r));
            for t in ts {
                out.push(' ');
                write_term(lang, t, out);
            }
        }
        FormulaKind::Imp(a, b) => {
            out.push_str("(imp ");
            write_formula(lang, a, out);
            out.push(' ');
            write_formula(lang, b, out);
        }
        FormulaKind::Not(a) => {
            out.push_str("(not ");
            write_formula(lang, a, out);
        }
        FormulaKind::Forall(v, a) => {
            let _ = write!(out, "(forall {v} ");
            write_formula(lang, a, out);
        }
    }
    out.push(')');
}

fn write_proof(lang: &Language, p: &Proof, out: &mut String) {
    let fs = |out: &mut String, fs: &[&Formula]| {
        for f in fs {
            out.push(' ');
            write_formula(lang, f, out);
        }
    };
    match p {
        Proof::Axm(a) => {
            out.push_str("(axm");
            fs(out, &[a]);
        }
        Proof::Mp(a, b) => {
            out.push_str("(mp ");
            write_proof(lang, a, out);
            out.push(' ');
            write_proof(lang, b, out);
        }
        Proof::Gen(v, q) => {
            let _ = write!(out, "(gen {v} ");
            write_proof(lang, q, out);
        }
        Proof::Imp1(a, b) => {
            out.push_str("(imp1");
            fs(out, &[a, b]);
        }
        Proof::Imp2(a, b, c) => {
            out.push_str("(imp2");
            fs(out, &[a, b, c]);
        }
        Proof::Cp(a, b) => {
            out.push_str("(cp");
            fs(out, &[a, b]);
        }
        Proof::Fa1(a, v, t) => {
            out.push_str("(fa1");
            fs(out, &[a]);
            let _ = write!(out, " {v} ");
            write_term(lang, t, out);
        }
        Proof::Fa2(a, v) => {
            out.push_str("(fa2");
            fs(out, &[a]);
            let _ = write!(out, " {v}");
        }
        Proof::Fa3(a, b, v) => {
            out.push_str("(fa3");
            fs(out, &[a, b]);
            let _ = write!(out, " {v}");
        }
        Proof::Eq1 => out.push_str("(eq1"),
        Proof::Eq2 => out.push_str("(eq2"),
        Proof::Eq3 => out.push_str("(eq3"),
        Proof::Eq4(r) => {
            let _ = write!(out, "(eq4 {}", rel_name(lang, *r));
        }
        Proof::Eq5(f) => {
            let _ = write!(out, "(eq5 {}", func_name(lang, *f));
        }
    }
    out.push(')');
}

fn write_primrec(e: &PrimRecExpr, out: &mut String) {
    match e.kind() {
        PrimRecKind::Succ => out.push_str("(succ)"),
        PrimRecKind::Zero => out.push_str("(zero)"),
        PrimRecKind::Proj { n, m } => {
            let _ = write!(out, "(proj {n} {m})");
        }
        PrimRecKind::Compose { n, gs, h } => {
            let _ = write!(out, "(compose {n} {} (", gs.len());
            for (k, g) in gs.iter().enumerate() {
                if k > 0 {
                    out.push(' ');
                }
                write_primrec(g, out);
            }
            out.push_str(") ");
            write_primrec(h, out);
            out.push(')');
        }
        PrimRecKind::PrimRec { n, g, h } => {
            let _ = write!(out, "(primrec {n} ");
            write_primrec(g, out);
            out.push(' ');
            write_primrec(h, out);
            out.push(')');
        }
    }
}

pub fn print_term(lang: &Language, t: &Term) -> String {
    let mut s = String::new();
    write_term(lang, t, &mut s);
    s
}

pub fn print_formula(lang: &Language, f: &Formula) -> String {
    let mut s = String::new();
    write_formula(lang, f, &mut s);
    s
}

pub fn print_proof(lang: &Language, p: &Proof) -> String {
    let mut s = String::new();
    write_proof(lang, p, &mut s);
    s
}

pub fn print_primrec(e: &PrimRecExpr) -> String {
    let mut s = String::new();
    write_primrec(e, &mut s);
    s
}
