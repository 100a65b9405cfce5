//! Propositional formulas over `->`, `&`, `|` and `false`.
//!
//! Negation is not a constructor: `~a` is `a -> false` and prints back as
//! `~a`. Concrete syntax, loosest to tightest: `->` (right associative),
//! `|`, `&` (both left associative), prefix `~`. The Unicode connectives
//! `→ ∨ ∧ ¬ ⊥` are accepted as input. The words `sa`, `kp` and `wem` are
//! reserved and expand to the axioms of the same name; `false` is bottom.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Bottom,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::implies(a, Formula::Bottom)
    }

    pub fn top() -> Formula {
        Formula::not(Formula::Bottom)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// The negated formula, when `self` has the shape `a -> false`.
    pub fn negated(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(a, b) if **b == Formula::Bottom => Some(a),
            _ => None,
        }
    }

    /// Distinct variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        self.walk(&mut |f| {
            if let Formula::Var(v) = f {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        });
        out
    }

    /// Pre-order traversal, left before right.
    pub fn walk<F: FnMut(&Formula)>(&self, visit: &mut F) {
        visit(self);
        match self {
            Formula::Var(_) | Formula::Bottom => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bottom => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Var(_) | Formula::Bottom => 5,
            _ if self.negated().is_some() => 4,
            Formula::And(..) => 3,
            Formula::Or(..) => 2,
            Formula::Implies(..) => 1,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let wrap = self.precedence() < min;
        if wrap {
            f.write_str("(")?;
        }
        match self {
            Formula::Var(v) => f.write_str(v)?,
            Formula::Bottom => f.write_str("false")?,
            _ if self.negated().is_some() => {
                f.write_str("~")?;
                self.negated().unwrap().write_at(f, 4)?;
            }
            Formula::And(a, b) => {
                a.write_at(f, 3)?;
                f.write_str(" & ")?;
                b.write_at(f, 4)?;
            }
            Formula::Or(a, b) => {
                a.write_at(f, 2)?;
                f.write_str(" | ")?;
                b.write_at(f, 3)?;
            }
            Formula::Implies(a, b) => {
                a.write_at(f, 2)?;
                f.write_str(" -> ")?;
                b.write_at(f, 1)?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        parse(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// Scott: `((~~p -> p) -> (p | ~p)) -> (~p | ~~p)`.
    Scott,
    /// Kreisel-Putnam: `(~p -> q | r) -> (~p -> q) | (~p -> r)`.
    KreiselPutnam,
    /// Weak excluded middle: `~p | ~~p`.
    WeakExcludedMiddle,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Scott => "sa",
            Axiom::KreiselPutnam => "kp",
            Axiom::WeakExcludedMiddle => "wem",
        }
    }

    pub fn formula(self) -> Formula {
        use Formula as F;
        let p = || F::var("p");
        let np = || F::not(p());
        match self {
            Axiom::Scott => F::implies(
                F::implies(F::implies(F::not(np()), p()), F::or(p(), np())),
                F::or(np(), F::not(np())),
            ),
            Axiom::KreiselPutnam => {
                let (q, r) = (F::var("q"), F::var("r"));
                F::implies(
                    F::implies(np(), F::or(q.clone(), r.clone())),
                    F::or(F::implies(np(), q), F::implies(np(), r)),
                )
            }
            Axiom::WeakExcludedMiddle => F::or(np(), F::not(np())),
        }
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Axiom> {
        match s {
            "sa" => Ok(Axiom::Scott),
            "kp" => Ok(Axiom::KreiselPutnam),
            "wem" => Ok(Axiom::WeakExcludedMiddle),
            _ => Err(Error::UnknownAxiom(s.into())),
        }
    }
}

/// The axiom called `name` (`sa`, `kp` or `wem`).
pub fn axiom(name: &str) -> Result<Formula> {
    Ok(name.parse::<Axiom>()?.formula())
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    False,
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => alloc::format!("`{s}`"),
        Tok::False => "`false`".into(),
        Tok::Not => "`~`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut toks = Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                it.next();
                continue;
            }
            '~' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Arrow,
            '⊥' => Tok::False,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' => {
                it.next();
                match it.peek() {
                    Some(&(_, '>')) => Tok::Arrow,
                    _ => {
                        return Err(Error::Parse {
                            pos: pos + 1,
                            expected: "`>` after `-`".into(),
                        })
                    }
                }
            }
            'a'..='z' => {
                let mut name = String::new();
                while let Some(&(_, c)) = it.peek() {
                    if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                        name.push(c);
                        it.next();
                    } else {
                        break;
                    }
                }
                toks.push((
                    pos,
                    if name == "false" {
                        Tok::False
                    } else {
                        Tok::Ident(name)
                    },
                ));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    pos,
                    expected: "a variable, connective or parenthesis".into(),
                })
            }
        };
        it.next();
        toks.push((pos, tok));
    }
    toks.push((s.len(), Tok::End));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            expected: alloc::format!("{expected}, found {}", describe(self.peek())),
        })
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::False => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Tok::Ident(_) => {
                let Tok::Ident(name) = self.bump() else {
                    unreachable!()
                };
                Ok(match name.parse::<Axiom>() {
                    Ok(ax) => ax.formula(),
                    Err(_) => Formula::Var(name),
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.implication()?;
                if *self.peek() != Tok::RParen {
                    return self.error("`)`");
                }
                self.bump();
                Ok(inner)
            }
            _ => self.error("a formula"),
        }
    }
}

/// Parses the concrete syntax described in the module docs.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let f = p.implication()?;
    if *p.peek() != Tok::End {
        return p.error("a connective or end of input");
    }
    Ok(f)
}

/// Renders with the fewest parentheses that still re-parse to the same tree.
pub fn print(f: &Formula) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn named_axioms_match_their_displays() {
        assert_eq!(
            p("((~~p -> p) -> (p | ~p)) -> (~p | ~~p)"),
            axiom("sa").unwrap()
        );
        assert_eq!(
            p("(~p -> q | r) -> (~p -> q) | (~p -> r)"),
            axiom("kp").unwrap()
        );
        assert_eq!(p("~p | ~~p"), axiom("wem").unwrap());
        assert_eq!(p("sa"), axiom("sa").unwrap());
        assert_eq!(axiom("em").unwrap_err(), Error::UnknownAxiom("em".into()));
    }

    #[test]
    fn associativity_and_precedence() {
        assert_eq!(p("p -> q -> r"), p("p -> (q -> r)"));
        assert_eq!(p("p | q | r"), p("(p | q) | r"));
        assert_eq!(p("p & q | r -> s"), p("((p & q) | r) -> s"));
        assert_eq!(p("~p & q"), p("(~p) & q"));
        assert_eq!(p("¬p ∧ q → ⊥ ∨ r"), p("~p & q -> false | r"));
    }

    #[test]
    fn printing() {
        assert_eq!(print(&p("~p|~~p")), "~p | ~~p");
        assert_eq!(
            print(&Formula::implies(Formula::var("p"), Formula::var("p"))),
            "p -> p"
        );
        assert_eq!(print(&Formula::not(Formula::var("p"))), "~p");
        assert_eq!(print(&p("(p -> q) -> r")), "(p -> q) -> r");
        assert_eq!(print(&p("p -> false")), "~p");
        assert_eq!(print(&Formula::top()), "~false");
        assert_eq!(print(&p("~(p & q)")), "~(p & q)");
        assert_eq!(print(&p("p | (q | r)")), "p | (q | r)");
        assert_eq!(
            print(&axiom("kp").unwrap()),
            "(~p -> q | r) -> (~p -> q) | (~p -> r)"
        );
        assert_eq!(
            print(&axiom("sa").unwrap()),
            "((~~p -> p) -> p | ~p) -> ~p | ~~p"
        );
    }

    #[test]
    fn variables_in_first_occurrence_order() {
        assert_eq!(axiom("sa").unwrap().variables(), vec!["p"]);
        assert_eq!(axiom("kp").unwrap().variables(), vec!["p", "q", "r"]);
        assert!(Formula::Bottom.variables().is_empty());
        assert_eq!(p("r2 & a_b | r2").variables(), vec!["r2", "a_b"]);
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("(p -> q"), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!(parse("p ->"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse("p & & q"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse("p q"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse("p)"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse("P"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse("p - q"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse(""), Err(Error::Parse { pos: 0, .. })));
    }
}
