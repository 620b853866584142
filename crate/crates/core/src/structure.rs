//! Structure functions of semicoherent systems.
//!
//! A structure maps each subset of working components to the system state.
//! Three interchangeable representations are supported: a monotone formula
//! (AND / OR / k-of gates over variables), a list of minimal path sets, and
//! an explicit truth table. Formulas and path set lists are monotone by
//! construction; truth tables are checked by enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard limit on the component count, set by the subset bit-mask width.
pub const MAX_COMPONENTS: usize = 64;

/// Cap for operations that enumerate all `2^n` subsets.
pub const ENUMERATION_CAP: usize = 22;

/// 1-based component index.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Component(u32);

impl Component {
    /// Accepts indices in `[1, n]`.
    pub fn new(index: u32, n: usize) -> Result<Component> {
        if index == 0 || index as usize > n.min(MAX_COMPONENTS) {
            return Err(Error::IndexOutOfRange { index, n });
        }
        Ok(Component(index))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub(crate) fn bit(self) -> u64 {
        1u64 << (self.0 - 1)
    }
}

impl std::fmt::Display for Component {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subset of components encoded as a bit mask (bit `i-1` holds component `i`).
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full set `{1, ..., n}`.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_COMPONENTS);
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn from_components<I: IntoIterator<Item = Component>>(items: I) -> Subset {
        let mut bits = 0u64;
        for c in items {
            bits |= c.bit();
        }
        Subset(bits)
    }

    /// Builds from 1-based indices, validating the range against `n`.
    pub fn from_indices(indices: &[u32], n: usize) -> Result<Subset> {
        let mut bits = 0u64;
        for &i in indices {
            bits |= Component::new(i, n)?.bit();
        }
        Ok(Subset(bits))
    }

    /// Builds directly from a bit mask (bit `i-1` holds component `i`).
    pub fn from_bits(bits: u64) -> Subset {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, c: Component) -> bool {
        self.0 & c.bit() != 0
    }

    pub fn with(self, c: Component) -> Subset {
        Subset(self.0 | c.bit())
    }

    pub fn without(self, c: Component) -> Subset {
        Subset(self.0 & !c.bit())
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members as 1-based indices, ascending.
    pub fn indices(self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len());
        let mut bits = self.0;
        while bits != 0 {
            let tz = bits.trailing_zeros();
            out.push(tz + 1);
            bits &= bits - 1;
        }
        out
    }

    pub fn components(self) -> impl Iterator<Item = Component> {
        self.indices().into_iter().map(Component)
    }
}

impl std::fmt::Debug for Subset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.indices().iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Monotone formula node. Gates never negate, so any formula is
/// nondecreasing in every variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Formula {
    Var(Component),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    KOf { k: usize, children: Vec<Formula> },
}

impl Formula {
    fn eval(&self, state: Subset) -> bool {
        match self {
            Formula::Var(c) => state.contains(*c),
            Formula::And(children) => children.iter().all(|f| f.eval(state)),
            Formula::Or(children) => children.iter().any(|f| f.eval(state)),
            Formula::KOf { k, children } => children.iter().filter(|f| f.eval(state)).count() >= *k,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self {
            Formula::Var(c) => {
                Component::new(c.get(), n)?;
            }
            Formula::And(children) | Formula::Or(children) => {
                if children.len() < 2 {
                    return Err(Error::TooFewOperands);
                }
                for child in children {
                    child.validate(n)?;
                }
            }
            Formula::KOf { k, children } => {
                if *k == 0 || *k > children.len() {
                    return Err(Error::InvalidKOf {
                        k: *k,
                        m: children.len(),
                    });
                }
                for child in children {
                    child.validate(n)?;
                }
            }
        }
        Ok(())
    }

    fn relabel(&self, map: &dyn Fn(Component) -> Component) -> Formula {
        match self {
            Formula::Var(c) => Formula::Var(map(*c)),
            Formula::And(children) => {
                Formula::And(children.iter().map(|f| f.relabel(map)).collect())
            }
            Formula::Or(children) => Formula::Or(children.iter().map(|f| f.relabel(map)).collect()),
            Formula::KOf { k, children } => Formula::KOf {
                k: *k,
                children: children.iter().map(|f| f.relabel(map)).collect(),
            },
        }
    }
}

/// Explicit truth table indexed by subset mask.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruthTable {
    n: usize,
    entries: Vec<bool>,
}

impl TruthTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: Subset) -> bool {
        self.entries[s.bits() as usize]
    }

    pub fn entries(&self) -> &[bool] {
        &self.entries
    }

    /// Checks `phi(A) <= phi(A + {i})` for every subset and missing component.
    pub fn is_monotone(&self) -> bool {
        let size = self.entries.len();
        for mask in 0..size {
            if !self.entries[mask] {
                continue;
            }
            // A 1 below a 0 along any coordinate breaks monotonicity.
            for b in 0..self.n {
                let bit = 1usize << b;
                if mask & bit == 0 && !self.entries[mask | bit] {
                    return false;
                }
            }
        }
        true
    }
}

/// Internal representation of a structure function.
#[derive(Clone, Debug)]
pub enum Repr {
    Formula(Formula),
    PathSets(Vec<Subset>),
    Table(TruthTable),
}

/// Semicoherence report: the three defining conditions, checked separately.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SemicoherenceReport {
    pub monotone: bool,
    pub zero_at_empty: bool,
    pub one_at_full: bool,
}

impl SemicoherenceReport {
    pub fn is_semicoherent(&self) -> bool {
        self.monotone && self.zero_at_empty && self.one_at_full
    }

    pub(crate) fn describe(&self) -> String {
        let mut failed = Vec::new();
        if !self.monotone {
            failed.push("not monotone");
        }
        if !self.zero_at_empty {
            failed.push("phi(empty) != 0");
        }
        if !self.one_at_full {
            failed.push("phi(full) != 1");
        }
        failed.join(", ")
    }
}

/// A structure function on `n` components.
#[derive(Clone, Debug)]
pub struct Structure {
    n: usize,
    repr: Repr,
}

impl Structure {
    fn check_n(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::EmptySystem);
        }
        if n > MAX_COMPONENTS {
            return Err(Error::TooManyComponents {
                n,
                max: MAX_COMPONENTS,
            });
        }
        Ok(())
    }

    /// Parses the formula DSL with variables `x1 ... xn`.
    pub fn parse(text: &str, n: usize) -> Result<Structure> {
        Self::parse_with_prefix(text, n, 'x')
    }

    /// Parses with a custom variable prefix letter (organizing structures of
    /// modular systems use `z1 ... zr`).
    pub fn parse_with_prefix(text: &str, n: usize, prefix: char) -> Result<Structure> {
        Self::check_n(n)?;
        let formula = parser::parse(text, n, prefix)?;
        Ok(Structure {
            n,
            repr: Repr::Formula(formula),
        })
    }

    pub fn from_formula(formula: Formula, n: usize) -> Result<Structure> {
        Self::check_n(n)?;
        formula.validate(n)?;
        Ok(Structure {
            n,
            repr: Repr::Formula(formula),
        })
    }

    /// Builds from minimal path sets (1-based indices). The list must be a
    /// non-empty antichain of non-empty subsets of `[1, n]`; a non-minimal
    /// list is rejected with the offending pair.
    pub fn from_path_sets(path_sets: &[Vec<u32>], n: usize) -> Result<Structure> {
        Self::check_n(n)?;
        if path_sets.is_empty() {
            return Err(Error::NoPathSets);
        }
        let mut sets = Vec::with_capacity(path_sets.len());
        for (index, raw) in path_sets.iter().enumerate() {
            if raw.is_empty() {
                return Err(Error::EmptyPathSet { index });
            }
            sets.push(Subset::from_indices(raw, n)?);
        }
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                if i != j && sets[i].is_subset_of(sets[j]) {
                    return Err(Error::NonMinimalPathSets {
                        inner: sets[i].indices(),
                        outer: sets[j].indices(),
                    });
                }
            }
        }
        Ok(Structure {
            n,
            repr: Repr::PathSets(sets),
        })
    }

    /// Builds from an explicit truth table (`entries[mask]`, all `2^n` rows).
    /// Semicoherence is not enforced here; it is checked before any
    /// signature-producing computation.
    pub fn from_table(entries: Vec<bool>, n: usize) -> Result<Structure> {
        Self::check_n(n)?;
        if n > ENUMERATION_CAP {
            return Err(Error::EnumerationCap {
                n,
                cap: ENUMERATION_CAP,
            });
        }
        let expected = 1usize << n;
        if entries.len() != expected {
            return Err(Error::TableLength {
                expected,
                got: entries.len(),
            });
        }
        Ok(Structure {
            n,
            repr: Repr::Table(TruthTable { n, entries }),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    /// Evaluates the structure on a set of working components.
    pub fn eval(&self, state: Subset) -> bool {
        debug_assert!(state.is_subset_of(Subset::full(self.n)));
        match &self.repr {
            Repr::Formula(f) => f.eval(state),
            Repr::PathSets(sets) => sets.iter().any(|p| p.is_subset_of(state)),
            Repr::Table(t) => t.get(state),
        }
    }

    /// Materializes the truth table (subject to the enumeration cap).
    pub fn truth_table(&self) -> Result<TruthTable> {
        if let Repr::Table(t) = &self.repr {
            return Ok(t.clone());
        }
        if self.n > ENUMERATION_CAP {
            return Err(Error::EnumerationCap {
                n: self.n,
                cap: ENUMERATION_CAP,
            });
        }
        let size = 1usize << self.n;
        let entries = (0..size)
            .map(|mask| self.eval(Subset::from_bits(mask as u64)))
            .collect();
        Ok(TruthTable { n: self.n, entries })
    }

    /// Same structure with an explicit truth-table representation.
    pub fn to_table(&self) -> Result<Structure> {
        let table = self.truth_table()?;
        Ok(Structure {
            n: self.n,
            repr: Repr::Table(table),
        })
    }

    /// Checks the three semicoherence conditions. Formula and path-set
    /// representations are monotone by construction; tables are enumerated.
    pub fn semicoherence(&self) -> SemicoherenceReport {
        let monotone = match &self.repr {
            Repr::Formula(_) | Repr::PathSets(_) => true,
            Repr::Table(t) => t.is_monotone(),
        };
        SemicoherenceReport {
            monotone,
            zero_at_empty: !self.eval(Subset::EMPTY),
            one_at_full: self.eval(Subset::full(self.n)),
        }
    }

    pub(crate) fn require_semicoherent(&self) -> Result<()> {
        let report = self.semicoherence();
        if report.is_semicoherent() {
            Ok(())
        } else {
            Err(Error::NotSemicoherent(report.describe()))
        }
    }

    /// Components whose state changes the output for at least one
    /// configuration of the others.
    pub fn relevant_components(&self) -> Result<Vec<Component>> {
        let table = self.truth_table()?;
        let mut relevant = Vec::new();
        for index in 1..=self.n as u32 {
            let c = Component(index);
            let bit = c.bit() as usize;
            let size = 1usize << self.n;
            let mut seen = false;
            for mask in 0..size {
                if mask & bit == 0 && table.entries[mask] != table.entries[mask | bit] {
                    seen = true;
                    break;
                }
            }
            if seen {
                relevant.push(c);
            }
        }
        Ok(relevant)
    }

    /// Applies a permutation of component labels. `perm[i-1]` is the new
    /// index of old component `i`; the map must be a bijection on `[1, n]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Structure> {
        if perm.len() != self.n {
            return Err(Error::InvalidRelabel(format!(
                "permutation has {} entries, expected {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &target in perm {
            if target == 0 || target as usize > self.n {
                return Err(Error::InvalidRelabel(format!(
                    "target index {target} out of range"
                )));
            }
            if std::mem::replace(&mut seen[target as usize - 1], true) {
                return Err(Error::InvalidRelabel(format!(
                    "target index {target} repeated"
                )));
            }
        }
        let map = |c: Component| Component(perm[c.get() as usize - 1]);
        let remap_subset = |s: Subset| Subset::from_components(s.components().map(map));
        let repr = match &self.repr {
            Repr::Formula(f) => Repr::Formula(f.relabel(&map)),
            Repr::PathSets(sets) => Repr::PathSets(sets.iter().map(|s| remap_subset(*s)).collect()),
            Repr::Table(t) => {
                let size = 1usize << self.n;
                let mut entries = vec![false; size];
                for mask in 0..size {
                    let new_mask = remap_subset(Subset::from_bits(mask as u64));
                    entries[new_mask.bits() as usize] = t.entries[mask];
                }
                Repr::Table(TruthTable { n: self.n, entries })
            }
        };
        Ok(Structure { n: self.n, repr })
    }
}

/// On-disk form of a path set list:
/// `{"n": 5, "minimal_path_sets": [[1,4],[2,5],[1,3,5],[2,3,4]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathSetFile {
    pub n: usize,
    pub minimal_path_sets: Vec<Vec<u32>>,
}

impl PathSetFile {
    pub fn to_structure(&self) -> Result<Structure> {
        Structure::from_path_sets(&self.minimal_path_sets, self.n)
    }
}

/// On-disk form of a truth table: `{"n": 2, "table": [0,0,0,1]}` with the
/// entry at position `mask` giving `phi` of that subset.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TruthTableFile {
    pub n: usize,
    pub table: Vec<u8>,
}

impl TruthTableFile {
    pub fn to_structure(&self) -> Result<Structure> {
        let entries = self.table.iter().map(|&b| b != 0).collect();
        Structure::from_table(entries, self.n)
    }
}

mod parser {
    //! Recursive-descent parser for the structure DSL.
    //!
    //! ```text
    //! expr    := term ("|" term)*
    //! term    := factor ("&" factor)*
    //! factor  := VAR | "(" expr ")" | "kof(" INT ";" varlist ")"
    //! varlist := VAR ("," VAR)*
    //! VAR     := PREFIX INT      (1-based)
    //! ```

    use super::{Component, Formula};
    use crate::error::{Error, Result};

    pub fn parse(text: &str, n: usize, prefix: char) -> Result<Formula> {
        let mut p = Parser {
            bytes: text.as_bytes(),
            pos: 0,
            n,
            prefix,
        };
        let expr = p.expr()?;
        p.skip_ws();
        if p.pos < p.bytes.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(expr)
    }

    struct Parser<'a> {
        bytes: &'a [u8],
        pos: usize,
        n: usize,
        prefix: char,
    }

    impl<'a> Parser<'a> {
        fn err(&self, message: &str) -> Error {
            Error::Syntax {
                position: self.pos,
                message: message.to_string(),
            }
        }

        fn skip_ws(&mut self) {
            while self
                .bytes
                .get(self.pos)
                .is_some_and(|b| b.is_ascii_whitespace())
            {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.bytes.get(self.pos).copied()
        }

        fn eat(&mut self, expected: u8) -> Result<()> {
            if self.peek() == Some(expected) {
                self.pos += 1;
                Ok(())
            } else {
                Err(self.err(&format!("expected '{}'", expected as char)))
            }
        }

        fn integer(&mut self) -> Result<u64> {
            self.skip_ws();
            let start = self.pos;
            while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
            if self.pos == start {
                return Err(self.err("expected an integer"));
            }
            std::str::from_utf8(&self.bytes[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| Error::Syntax {
                    position: start,
                    message: "integer too large".to_string(),
                })
        }

        fn variable(&mut self) -> Result<Formula> {
            self.skip_ws();
            if self.bytes.get(self.pos) != Some(&(self.prefix as u8)) {
                return Err(self.err(&format!("expected a variable '{}<index>'", self.prefix)));
            }
            self.pos += 1;
            let index = self.integer()?;
            if index == 0 || index > self.n as u64 {
                return Err(Error::IndexOutOfRange {
                    index: index.min(u32::MAX as u64) as u32,
                    n: self.n,
                });
            }
            Ok(Formula::Var(Component(index as u32)))
        }

        fn factor(&mut self) -> Result<Formula> {
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.expr()?;
                    self.eat(b')')?;
                    Ok(inner)
                }
                Some(b'k') => {
                    // "kof(" INT ";" varlist ")"
                    if self.bytes[self.pos..].starts_with(b"kof") {
                        self.pos += 3;
                        self.eat(b'(')?;
                        let k = self.integer()? as usize;
                        self.eat(b';')?;
                        let mut children = vec![self.variable()?];
                        while self.peek() == Some(b',') {
                            self.pos += 1;
                            children.push(self.variable()?);
                        }
                        self.eat(b')')?;
                        if k == 0 || k > children.len() {
                            return Err(Error::InvalidKOf {
                                k,
                                m: children.len(),
                            });
                        }
                        Ok(Formula::KOf { k, children })
                    } else {
                        Err(self.err("unexpected identifier"))
                    }
                }
                _ => self.variable(),
            }
        }

        fn term(&mut self) -> Result<Formula> {
            let mut factors = vec![self.factor()?];
            while self.peek() == Some(b'&') {
                self.pos += 1;
                factors.push(self.factor()?);
            }
            if factors.len() == 1 {
                Ok(factors.pop().unwrap())
            } else {
                Ok(Formula::And(factors))
            }
        }

        pub fn expr(&mut self) -> Result<Formula> {
            let mut terms = vec![self.term()?];
            while self.peek() == Some(b'|') {
                self.pos += 1;
                terms.push(self.term()?);
            }
            if terms.len() == 1 {
                Ok(terms.pop().unwrap())
            } else {
                Ok(Formula::Or(terms))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BRIDGE_DSL: &str = "x1&x4 | x2&x5 | x1&x3&x5 | x2&x3&x4";

    fn bridge() -> Structure {
        Structure::parse(BRIDGE_DSL, 5).unwrap()
    }

    fn subset(indices: &[u32], n: usize) -> Subset {
        Subset::from_indices(indices, n).unwrap()
    }

    #[test]
    fn parse_bridge_shape() {
        let s = bridge();
        match s.repr() {
            Repr::Formula(Formula::Or(children)) => assert_eq!(children.len(), 4),
            other => panic!("unexpected repr {other:?}"),
        }
    }

    #[test]
    fn parse_single_variable() {
        let s = Structure::parse("x1", 1).unwrap();
        match s.repr() {
            Repr::Formula(Formula::Var(c)) => assert_eq!(c.get(), 1),
            other => panic!("unexpected repr {other:?}"),
        }
    }

    #[test]
    fn parse_k_of_gate() {
        let s = Structure::parse("kof(2;x1,x2,x3)", 3).unwrap();
        match s.repr() {
            Repr::Formula(Formula::KOf { k, children }) => {
                assert_eq!(*k, 2);
                assert_eq!(children.len(), 3);
            }
            other => panic!("unexpected repr {other:?}"),
        }
    }

    #[test]
    fn parse_errors() {
        // Position is reported for syntax failures.
        match Structure::parse("x1 & ", 2) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Structure::parse("x1 | x6", 5),
            Err(Error::IndexOutOfRange { index: 6, n: 5 })
        ));
        assert!(matches!(
            Structure::parse("x0", 2),
            Err(Error::IndexOutOfRange { index: 0, .. })
        ));
        assert!(matches!(
            Structure::parse("kof(4;x1,x2,x3)", 3),
            Err(Error::InvalidKOf { k: 4, m: 3 })
        ));
        assert!(matches!(
            Structure::parse("x1 x2", 2),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn parse_parentheses_and_precedence() {
        // & binds tighter than |.
        let a = Structure::parse("x1 | x2 & x3", 3).unwrap();
        assert!(a.eval(subset(&[1], 3)));
        assert!(!a.eval(subset(&[2], 3)));
        assert!(a.eval(subset(&[2, 3], 3)));

        let b = Structure::parse("(x1 | x2) & x3", 3).unwrap();
        assert!(!b.eval(subset(&[1], 3)));
        assert!(b.eval(subset(&[1, 3], 3)));
    }

    #[test]
    fn custom_prefix_for_slots() {
        let s = Structure::parse_with_prefix("z1&z2", 2, 'z').unwrap();
        assert!(s.eval(subset(&[1, 2], 2)));
        assert!(Structure::parse_with_prefix("x1&x2", 2, 'z').is_err());
    }

    #[test]
    fn eval_bridge() {
        let s = bridge();
        assert!(s.eval(subset(&[1, 4], 5)));
        assert!(!s.eval(subset(&[1, 2], 5)));
        assert!(!s.eval(Subset::EMPTY));
    }

    #[test]
    fn truth_tables() {
        let series = Structure::parse("x1&x2", 2).unwrap();
        assert_eq!(
            series.truth_table().unwrap().entries(),
            &[false, false, false, true]
        );

        let parallel = Structure::parse("x1|x2", 2).unwrap();
        assert_eq!(
            parallel.truth_table().unwrap().entries(),
            &[false, true, true, true]
        );

        // Count of path sets among all 32 subsets, checked against an
        // independent containment-based evaluation.
        let table = bridge().truth_table().unwrap();
        let count = table.entries().iter().filter(|&&b| b).count();
        let paths = [
            subset(&[1, 4], 5),
            subset(&[2, 5], 5),
            subset(&[1, 3, 5], 5),
            subset(&[2, 3, 4], 5),
        ];
        let oracle = (0..32u64)
            .filter(|&m| paths.iter().any(|p| p.is_subset_of(Subset::from_bits(m))))
            .count();
        assert_eq!(count, oracle);
        assert_eq!(count, 16);
    }

    #[test]
    fn semicoherence_reports() {
        assert!(bridge().semicoherence().is_semicoherent());

        let constant_zero = Structure::from_table(vec![false, false], 1).unwrap();
        let report = constant_zero.semicoherence();
        assert!(!report.one_at_full);
        assert!(report.zero_at_empty);

        // Brute-force pairwise-subset oracle against the built-in check.
        let table = vec![false, true, false, true];
        let s = Structure::from_table(table.clone(), 2).unwrap();
        let mut oracle = true;
        for a in 0..4usize {
            for b in 0..4usize {
                if a & b == a && table[a] && !table[b] {
                    oracle = false;
                }
            }
        }
        assert_eq!(s.semicoherence().monotone, oracle);
        // [0,1,0,1] is phi = x1, which is monotone.
        assert!(oracle);
    }

    #[test]
    fn relevant_component_sets() {
        let ids = |s: &Structure| -> Vec<u32> {
            s.relevant_components()
                .unwrap()
                .iter()
                .map(|c| c.get())
                .collect()
        };
        assert_eq!(ids(&bridge()), vec![1, 2, 3, 4, 5]);
        assert_eq!(ids(&Structure::parse("x1", 2).unwrap()), vec![1]);
        // Five active components embedded in a 6-component system.
        let embedded = Structure::parse("x1&x3 | x2&x4&x5", 6).unwrap();
        assert_eq!(ids(&embedded), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn path_set_validation() {
        assert!(matches!(
            Structure::from_path_sets(&[], 3),
            Err(Error::NoPathSets)
        ));
        assert!(matches!(
            Structure::from_path_sets(&[vec![1], vec![]], 3),
            Err(Error::EmptyPathSet { index: 1 })
        ));
        match Structure::from_path_sets(&[vec![1], vec![1, 2]], 3) {
            Err(Error::NonMinimalPathSets { inner, outer }) => {
                assert_eq!(inner, vec![1]);
                assert_eq!(outer, vec![1, 2]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(Structure::from_path_sets(&[vec![1, 2], vec![2, 3]], 3).is_ok());
    }

    #[test]
    fn formula_and_path_sets_agree() {
        let by_formula = bridge().truth_table().unwrap();
        let by_paths =
            Structure::from_path_sets(&[vec![1, 4], vec![2, 5], vec![1, 3, 5], vec![2, 3, 4]], 5)
                .unwrap()
                .truth_table()
                .unwrap();
        assert_eq!(by_formula.entries(), by_paths.entries());
    }

    #[test]
    fn relabel_permutes_truth_table() {
        let s = Structure::parse("x1&x2 | x3", 3).unwrap();
        // Swap components 1 and 3.
        let r = s.relabel(&[3, 2, 1]).unwrap();
        assert!(r.eval(subset(&[1], 3)));
        assert!(!r.eval(subset(&[3], 3)));
        assert!(r.eval(subset(&[2, 3], 3)));

        assert!(s.relabel(&[1, 1, 2]).is_err());
        assert!(s.relabel(&[1, 2]).is_err());

        // Table representation permutes the same way.
        let rt = s.to_table().unwrap().relabel(&[3, 2, 1]).unwrap();
        assert_eq!(
            rt.truth_table().unwrap().entries(),
            r.truth_table().unwrap().entries()
        );
    }

    #[test]
    fn component_range_checks() {
        assert!(Component::new(0, 5).is_err());
        assert!(Component::new(6, 5).is_err());
        assert!(Component::new(5, 5).is_ok());
        assert!(Structure::parse("x1", 0).is_err());
        assert!(Structure::parse("x1", 65).is_err());
    }

    #[test]
    fn path_set_file_round_trip() {
        let json = r#"{"n": 5, "minimal_path_sets": [[1,4],[2,5],[1,3,5],[2,3,4]]}"#;
        let file: PathSetFile = serde_json::from_str(json).unwrap();
        let s = file.to_structure().unwrap();
        assert_eq!(
            s.truth_table().unwrap().entries(),
            bridge().truth_table().unwrap().entries()
        );
    }
}
