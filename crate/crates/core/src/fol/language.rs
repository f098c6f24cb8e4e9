//! Signatures: relation and function symbols with their arities.

use std::fmt;
use std::sync::OnceLock;

/// A function symbol, identified by its position in the language's table.
///
/// The position doubles as the symbol's code when formulas are numbered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuncSym(pub u32);

/// A relation symbol, identified by its position in the language's table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelSym(pub u32);

#[derive(Clone, Debug, PartialEq, Eq)]
struct Symbol {
    name: String,
    arity: usize,
}

/// A first-order signature with finitely many symbols of each kind.
///
/// Symbol equality is index equality, so it is trivially decidable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Language {
    name: String,
    functions: Vec<Symbol>,
    relations: Vec<Symbol>,
    numerals: Option<(FuncSym, FuncSym)>,
}

impl Language {
    /// Builds a language from `(name, arity)` tables.
    ///
    /// If the function table contains a unary `Succ` and a nullary `Zero`, terms
    /// over this language get compact numeral literals.
    pub fn new(name: impl Into<String>, functions: &[(&str, usize)], relations: &[(&str, usize)]) -> Self {
        let mk = |tab: &[(&str, usize)]| {
            tab.iter()
                .map(|&(n, a)| Symbol {
                    name: n.to_string(),
                    arity: a,
                })
                .collect::<Vec<_>>()
        };
        let mut lang = Language {
            name: name.into(),
            functions: mk(functions),
            relations: mk(relations),
            numerals: None,
        };
        let succ = lang.func_by_name("Succ").filter(|&f| lang.func_arity(f) == Some(1));
        let zero = lang.func_by_name("Zero").filter(|&f| lang.func_arity(f) == Some(0));
        if let (Some(s), Some(z)) = (succ, zero) {
            lang.numerals = Some((s, z));
        }
        lang
    }

    /// The language of number theory: `Plus`, `Times`, `Succ`, `Zero`.
    pub fn lnt() -> &'static Language {
        static LNT: OnceLock<Language> = OnceLock::new();
        LNT.get_or_init(|| Language::new("LNT", &[("Plus", 2), ("Times", 2), ("Succ", 1), ("Zero", 0)], &[]))
    }

    /// LNT plus the binary relation `LT`.
    pub fn lnn() -> &'static Language {
        static LNN: OnceLock<Language> = OnceLock::new();
        LNN.get_or_init(|| {
            Language::new(
                "LNN",
                &[("Plus", 2), ("Times", 2), ("Succ", 1), ("Zero", 0)],
                &[("LT", 2)],
            )
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn func_arity(&self, f: FuncSym) -> Option<usize> {
        self.functions.get(f.0 as usize).map(|s| s.arity)
    }

    pub fn rel_arity(&self, r: RelSym) -> Option<usize> {
        self.relations.get(r.0 as usize).map(|s| s.arity)
    }

    pub fn func_name(&self, f: FuncSym) -> Option<&str> {
        self.functions.get(f.0 as usize).map(|s| s.name.as_str())
    }

    pub fn rel_name(&self, r: RelSym) -> Option<&str> {
        self.relations.get(r.0 as usize).map(|s| s.name.as_str())
    }

    pub fn func_by_name(&self, name: &str) -> Option<FuncSym> {
        self.functions
            .iter()
            .position(|s| s.name == name)
            .map(|i| FuncSym(i as u32))
    }

    pub fn rel_by_name(&self, name: &str) -> Option<RelSym> {
        self.relations
            .iter()
            .position(|s| s.name == name)
            .map(|i| RelSym(i as u32))
    }

    pub fn functions(&self) -> impl Iterator<Item = FuncSym> + '_ {
        (0..self.functions.len()).map(|i| FuncSym(i as u32))
    }

    pub fn relations(&self) -> impl Iterator<Item = RelSym> + '_ {
        (0..self.relations.len()).map(|i| RelSym(i as u32))
    }

    /// The `(Succ, Zero)` pair when the language supports numerals.
    pub fn numeral_symbols(&self) -> Option<(FuncSym, FuncSym)> {
        self.numerals
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_languages() {
        let lnn = Language::lnn();
        let lnt = Language::lnt();
        assert_eq!(lnt.relations().count(), 0);
        assert_eq!(lnn.rel_arity(RelSym(0)), Some(2));
        for (name, arity) in [("Plus", 2), ("Times", 2), ("Succ", 1), ("Zero", 0)] {
            let f = lnt.func_by_name(name).unwrap();
            assert_eq!(lnt.func_arity(f), Some(arity));
            assert_eq!(lnn.func_by_name(name), Some(f));
        }
        assert!(lnn.numeral_symbols().is_some());
        assert_eq!(lnn.func_arity(FuncSym(9)), None);
    }

    #[test]
    fn no_numerals_without_succ_and_zero() {
        let l = Language::new("G", &[("e", 0), ("m", 2)], &[("R", 0)]);
        assert!(l.numeral_symbols().is_none());
        assert_eq!(l.rel_arity(RelSym(0)), Some(0));
    }
}
