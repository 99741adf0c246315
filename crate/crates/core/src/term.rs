//! Terms over `{∧, ∨, →, ¬, D, □, ◇, B, 0, 1}` and laws built from them.
//!
//! The parser accepts two notations that can be mixed freely:
//!
//! * prefix: `Dia(Join(x, y)) <= Join(Dia x, Dia y)`
//! * infix: `◇(x ∨ y) ≤ ◇x ∨ ◇y`, or in ASCII `<>(x | y) <= <>x | <>y`
//!
//! Unary operators: `Neg`/`Not`/`~`/`¬`, `Box`/`Nec`/`[]`/`□`, `Dia`/`Pos`/`<>`/`◇`,
//! `Dual`/`D`, `Bool`/`B`. Binary: `Meet`/`&`/`∧`, `Join`/`|`/`∨`, `Imp`/`->`/`→`
//! (right associative, loosest). Variables are identifiers starting with a lowercase
//! letter, numbered by first appearance. Relations: `=`, `≈`, `<=`, `≤`, `≼`, `>=`, `≥`.
//! A quasi-identity is `p1 ; p2 => c`, an equivalence `r1 <=> r2`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modality::{Letter, ModalWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Unary {
    Neg,
    Dual,
    Box,
    Dia,
    Bool,
}

impl Unary {
    pub fn symbol(self) -> &'static str {
        match self {
            Unary::Neg => "¬",
            Unary::Dual => "D",
            Unary::Box => "□",
            Unary::Dia => "◇",
            Unary::Bool => "B",
        }
    }
}

impl From<Letter> for Unary {
    fn from(l: Letter) -> Self {
        match l {
            Letter::Neg => Unary::Neg,
            Letter::Box => Unary::Box,
            Letter::Dia => Unary::Dia,
            Letter::Dual => Unary::Dual,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Binary {
    Meet,
    Join,
    Arrow,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Zero,
    One,
    Bin(Binary, Box<Term>, Box<Term>),
    Un(Unary, Box<Term>),
}

pub fn var(i: usize) -> Term {
    Term::Var(i)
}

pub fn meet(a: Term, b: Term) -> Term {
    Term::Bin(Binary::Meet, Box::new(a), Box::new(b))
}

pub fn join(a: Term, b: Term) -> Term {
    Term::Bin(Binary::Join, Box::new(a), Box::new(b))
}

pub fn arrow(a: Term, b: Term) -> Term {
    Term::Bin(Binary::Arrow, Box::new(a), Box::new(b))
}

pub fn unary(op: Unary, a: Term) -> Term {
    Term::Un(op, Box::new(a))
}

pub fn neg(a: Term) -> Term {
    unary(Unary::Neg, a)
}

pub fn nec(a: Term) -> Term {
    unary(Unary::Box, a)
}

pub fn dia(a: Term) -> Term {
    unary(Unary::Dia, a)
}

/// Applies a modal word to a term, innermost letter last.
pub fn apply_word(word: &ModalWord, t: Term) -> Term {
    word.letters().iter().rev().fold(t, |acc, &l| unary(l.into(), acc))
}

impl Term {
    /// One more than the largest variable index.
    pub fn arity(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Zero | Term::One => 0,
            Term::Bin(_, a, b) => a.arity().max(b.arity()),
            Term::Un(_, a) => a.arity(),
        }
    }

    pub fn uses(&self, op: Unary) -> bool {
        match self {
            Term::Un(o, a) => *o == op || a.uses(op),
            Term::Bin(_, a, b) => a.uses(op) || b.uses(op),
            _ => false,
        }
    }

    pub fn uses_arrow(&self) -> bool {
        match self {
            Term::Bin(Binary::Arrow, _, _) => true,
            Term::Bin(_, a, b) => a.uses_arrow() || b.uses_arrow(),
            Term::Un(_, a) => a.uses_arrow(),
            _ => false,
        }
    }

    /// Distinct subterms, children before parents.
    pub fn subterms(&self) -> Vec<&Term> {
        fn go<'a>(t: &'a Term, out: &mut Vec<&'a Term>) {
            match t {
                Term::Bin(_, a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Term::Un(_, a) => go(a, out),
                _ => {}
            }
            if !out.contains(&t) {
                out.push(t);
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> TermDisplay<'a> {
        TermDisplay { term: self, names }
    }
}

/// Default variable names: `x, y, z, w, v, u`, then `x6, x7, ...`.
pub fn default_var_name(i: usize) -> String {
    const N: [&str; 6] = ["x", "y", "z", "w", "v", "u"];
    N.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("x{i}"))
}

pub fn default_var_names(n: usize) -> Vec<String> {
    (0..n).map(default_var_name).collect()
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    names: &'a [String],
}

impl TermDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, t: &Term, ctx: u8) -> fmt::Result {
        // Binding strength: → 1, ∨ 2, ∧ 3, unary operand 4. Parenthesize when the context binds tighter.
        match t {
            Term::Var(i) => match self.names.get(*i) {
                Some(n) => f.write_str(n),
                None => f.write_str(&default_var_name(*i)),
            },
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Un(op, a) => {
                f.write_str(op.symbol())?;
                // `D x`, not `Dx`, which would read back as a variable.
                if op.symbol().chars().all(char::is_alphabetic) {
                    f.write_str(" ")?;
                }
                self.write(f, a, 4)
            }
            Term::Bin(op, a, b) => {
                let (sym, prec) = match op {
                    Binary::Arrow => (" → ", 1),
                    Binary::Join => (" ∨ ", 2),
                    Binary::Meet => (" ∧ ", 3),
                };
                let paren = ctx > prec;
                if paren {
                    f.write_str("(")?;
                }
                let (lc, rc) = match op {
                    Binary::Arrow => (2, 1),
                    _ => (prec, prec + 1),
                };
                self.write(f, a, lc)?;
                f.write_str(sym)?;
                self.write(f, b, rc)?;
                if paren {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.term, 0)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.arity());
        write!(f, "{}", self.display(&names))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    Eq,
    Leq,
}

/// `lhs ≈ rhs` or `lhs ≼ rhs`. The inequality means `lhs ∧ rhs ≈ lhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    pub relation: Relation,
}

impl Identity {
    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Identity {
            lhs,
            rhs,
            relation: Relation::Eq,
        }
    }

    pub fn leq(lhs: Term, rhs: Term) -> Self {
        Identity {
            lhs,
            rhs,
            relation: Relation::Leq,
        }
    }

    pub fn arity(&self) -> usize {
        self.lhs.arity().max(self.rhs.arity())
    }

    /// The equation form: an inequality `s ≼ t` becomes `s ∧ t ≈ s`.
    pub fn as_equation(&self) -> (Term, Term) {
        match self.relation {
            Relation::Eq => (self.lhs.clone(), self.rhs.clone()),
            Relation::Leq => (meet(self.lhs.clone(), self.rhs.clone()), self.lhs.clone()),
        }
    }

    /// The reverse inequality (or the same equation).
    pub fn converse(&self) -> Identity {
        Identity {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            relation: self.relation,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, names: &[String]) -> fmt::Result {
        let rel = match self.relation {
            Relation::Eq => "=",
            Relation::Leq => "≤",
        };
        write!(f, "{} {rel} {}", self.lhs.display(names), self.rhs.display(names))
    }
}

/// An identity, a quasi-identity, or a pointwise equivalence of two relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    Identity(Identity),
    Quasi {
        premises: Vec<Identity>,
        conclusion: Identity,
    },
    Iff(Identity, Identity),
}

impl Law {
    pub fn parts(&self) -> Vec<&Identity> {
        match self {
            Law::Identity(i) => vec![i],
            Law::Quasi { premises, conclusion } => premises.iter().chain(Some(conclusion)).collect(),
            Law::Iff(a, b) => vec![a, b],
        }
    }

    pub fn arity(&self) -> usize {
        self.parts().iter().map(|i| i.arity()).max().unwrap_or(0)
    }

    pub fn uses(&self, op: Unary) -> bool {
        self.parts().iter().any(|i| i.lhs.uses(op) || i.rhs.uses(op))
    }

    pub fn uses_arrow(&self) -> bool {
        self.parts().iter().any(|i| i.lhs.uses_arrow() || i.rhs.uses_arrow())
    }

    pub fn as_identity(&self) -> Option<&Identity> {
        match self {
            Law::Identity(i) => Some(i),
            _ => None,
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> LawDisplay<'a> {
        LawDisplay { law: self, names }
    }
}

impl From<Identity> for Law {
    fn from(i: Identity) -> Self {
        Law::Identity(i)
    }
}

pub struct LawDisplay<'a> {
    law: &'a Law,
    names: &'a [String],
}

impl fmt::Display for LawDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.law {
            Law::Identity(i) => i.write(f, self.names),
            Law::Quasi { premises, conclusion } => {
                for (k, p) in premises.iter().enumerate() {
                    if k > 0 {
                        f.write_str("; ")?;
                    }
                    p.write(f, self.names)?;
                }
                f.write_str(" ⇒ ")?;
                conclusion.write(f, self.names)
            }
            Law::Iff(a, b) => {
                a.write(f, self.names)?;
                f.write_str(" ⇔ ")?;
                b.write(f, self.names)
            }
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.arity());
        write!(f, "{}", self.display(&names))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, &default_var_names(self.arity()))
    }
}

/// A parsed law together with its source variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedLaw {
    pub law: Law,
    pub vars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Un(Unary),
    MeetOp,
    JoinOp,
    ArrowOp,
    LParen,
    RParen,
    Comma,
    Eq,
    Leq,
    Geq,
    Implies,
    Iff,
    Semi,
}

const SYMBOLS: &[(&str, Tok)] = &[
    ("<=>", Tok::Iff),
    ("⇔", Tok::Iff),
    ("<=", Tok::Leq),
    (">=", Tok::Geq),
    ("<>", Tok::Un(Unary::Dia)),
    ("=>", Tok::Implies),
    ("⇒", Tok::Implies),
    ("==", Tok::Eq),
    ("->", Tok::ArrowOp),
    ("[]", Tok::Un(Unary::Box)),
    ("/\\", Tok::MeetOp),
    ("\\/", Tok::JoinOp),
    ("&&", Tok::Semi),
    ("≤", Tok::Leq),
    ("≼", Tok::Leq),
    ("≥", Tok::Geq),
    ("=", Tok::Eq),
    ("≈", Tok::Eq),
    ("→", Tok::ArrowOp),
    ("∧", Tok::MeetOp),
    ("&", Tok::MeetOp),
    ("∨", Tok::JoinOp),
    ("|", Tok::JoinOp),
    ("¬", Tok::Un(Unary::Neg)),
    ("~", Tok::Un(Unary::Neg)),
    ("□", Tok::Un(Unary::Box)),
    ("◇", Tok::Un(Unary::Dia)),
    ("(", Tok::LParen),
    (")", Tok::RParen),
    (",", Tok::Comma),
    (";", Tok::Semi),
    ("0", Tok::Zero),
    ("1", Tok::One),
];

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "Neg" | "Not" | "neg" | "not" => Tok::Un(Unary::Neg),
        "Box" | "Nec" => Tok::Un(Unary::Box),
        "Dia" | "Pos" => Tok::Un(Unary::Dia),
        "Dual" | "D" => Tok::Un(Unary::Dual),
        "Bool" | "B" => Tok::Un(Unary::Bool),
        "Meet" | "And" | "and" => Tok::MeetOp,
        "Join" | "Or" | "or" => Tok::JoinOp,
        "Imp" | "Arrow" => Tok::ArrowOp,
        "iff" => Tok::Iff,
        _ => return None,
    })
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < src.len() {
        let rest = &src[i..];
        let c = rest.chars().next().expect("non-empty");
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let len = rest
                .find(|ch: char| !(ch.is_alphanumeric() || ch == '_' || ch == '\''))
                .unwrap_or(rest.len());
            let word = &rest[..len];
            let tok = match keyword(word) {
                Some(t) => t,
                None if c.is_lowercase() => Tok::Ident(word.to_string()),
                None => {
                    return Err(Error::TermSyntax {
                        pos: i,
                        msg: format!("unknown operator `{word}`"),
                    })
                }
            };
            out.push((i, tok));
            i += len;
            continue;
        }
        for (sym, tok) in SYMBOLS {
            if rest.starts_with(sym) {
                out.push((i, tok.clone()));
                i += sym.len();
                continue 'outer;
            }
        }
        return Err(Error::TermSyntax {
            pos: i,
            msg: format!("unexpected character `{c}`"),
        });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: Vec<String>,
    index: HashMap<String, usize>,
}

impl Parser {
    fn new(src: &str, vars: Vec<String>) -> Result<Self> {
        let index = vars.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ok(Parser {
            toks: tokenize(src)?,
            at: 0,
            end: src.len(),
            vars,
            index,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::TermSyntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn term(&mut self) -> Result<Term> {
        let lhs = self.join_level()?;
        if self.peek() == Some(&Tok::ArrowOp) {
            self.at += 1;
            let rhs = self.term()?;
            return Ok(arrow(lhs, rhs));
        }
        Ok(lhs)
    }

    fn join_level(&mut self) -> Result<Term> {
        let mut t = self.meet_level()?;
        while self.peek() == Some(&Tok::JoinOp) {
            self.at += 1;
            t = join(t, self.meet_level()?);
        }
        Ok(t)
    }

    fn meet_level(&mut self) -> Result<Term> {
        let mut t = self.prefix()?;
        while self.peek() == Some(&Tok::MeetOp) {
            self.at += 1;
            t = meet(t, self.prefix()?);
        }
        Ok(t)
    }

    fn prefix(&mut self) -> Result<Term> {
        match self.next() {
            Some(Tok::Un(op)) => Ok(unary(op, self.prefix()?)),
            Some(Tok::Zero) => Ok(Term::Zero),
            Some(Tok::One) => Ok(Term::One),
            Some(Tok::Ident(name)) => {
                let n = self.vars.len();
                let i = *self.index.entry(name.clone()).or_insert(n);
                if i == n {
                    self.vars.push(name);
                }
                Ok(Term::Var(i))
            }
            Some(Tok::LParen) => {
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(op @ (Tok::MeetOp | Tok::JoinOp | Tok::ArrowOp)) => {
                // Function-call form: Meet(a, b).
                self.expect(Tok::LParen, "`(` after a binary operator name")?;
                let a = self.term()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(match op {
                    Tok::MeetOp => meet(a, b),
                    Tok::JoinOp => join(a, b),
                    _ => arrow(a, b),
                })
            }
            _ => {
                self.at = self.at.saturating_sub(1);
                self.err("expected a term")
            }
        }
    }

    fn identity(&mut self) -> Result<Identity> {
        let lhs = self.term()?;
        let rel = self.next();
        let rhs = self.term()?;
        match rel {
            Some(Tok::Eq) => Ok(Identity::eq(lhs, rhs)),
            Some(Tok::Leq) => Ok(Identity::leq(lhs, rhs)),
            Some(Tok::Geq) => Ok(Identity::leq(rhs, lhs)),
            _ => self.err("expected `=` or `<=` between terms"),
        }
    }

    fn law(&mut self) -> Result<Law> {
        let first = self.identity()?;
        let law = match self.peek() {
            Some(Tok::Iff) => {
                self.at += 1;
                Law::Iff(first, self.identity()?)
            }
            Some(Tok::Semi) | Some(Tok::Implies) => {
                let mut premises = vec![first];
                while self.peek() == Some(&Tok::Semi) {
                    self.at += 1;
                    premises.push(self.identity()?);
                }
                self.expect(Tok::Implies, "`=>`")?;
                Law::Quasi {
                    premises,
                    conclusion: self.identity()?,
                }
            }
            _ => Law::Identity(first),
        };
        if self.at < self.toks.len() {
            return self.err("trailing input");
        }
        Ok(law)
    }
}

/// Parses a law; variables are numbered by first appearance.
pub fn parse_law(src: &str) -> Result<ParsedLaw> {
    let mut p = Parser::new(src, Vec::new())?;
    let law = p.law()?;
    Ok(ParsedLaw { law, vars: p.vars })
}

/// Parses a law with a fixed variable order; further names are appended.
pub fn parse_law_with_vars(src: &str, vars: &[&str]) -> Result<ParsedLaw> {
    let mut p = Parser::new(src, vars.iter().map(|s| s.to_string()).collect())?;
    let law = p.law()?;
    Ok(ParsedLaw { law, vars: p.vars })
}

/// Parses a single term.
pub fn parse_term(src: &str) -> Result<(Term, Vec<String>)> {
    let mut p = Parser::new(src, Vec::new())?;
    let t = p.term()?;
    if p.at < p.toks.len() {
        return p.err("trailing input");
    }
    Ok((t, p.vars))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_and_infix_agree() {
        let a = parse_law("Dia(Join(x,y)) <= Join(Dia x, Dia y)").unwrap();
        let b = parse_law("◇(x ∨ y) ≤ ◇x ∨ ◇y").unwrap();
        let c = parse_law("<>(x | y) <= <>x | <>y").unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(a.vars, vec!["x", "y"]);
    }

    #[test]
    fn box_chain() {
        let p = parse_law("Box x <= Box (Box x)").unwrap();
        assert_eq!(p.law, Law::Identity(Identity::leq(nec(var(0)), nec(nec(var(0))))));
    }

    #[test]
    fn precedence() {
        let (t, _) = parse_term("a ∧ b ∨ c → d").unwrap();
        assert_eq!(t, arrow(join(meet(var(0), var(1)), var(2)), var(3)));
        let (t, _) = parse_term("x -> y -> z").unwrap();
        assert_eq!(t, arrow(var(0), arrow(var(1), var(2))));
        let (t, _) = parse_term("¬x ∧ y").unwrap();
        assert_eq!(t, meet(neg(var(0)), var(1)));
    }

    #[test]
    fn quasi_and_iff() {
        let p = parse_law("x ∨ ¬y = 1 => y <= □x").unwrap();
        assert!(matches!(p.law, Law::Quasi { ref premises, .. } if premises.len() == 1));
        let p = parse_law("a | b = 1; b & c = b => a | c = 1").unwrap();
        assert!(matches!(p.law, Law::Quasi { ref premises, .. } if premises.len() == 2));
        let p = parse_law("◇x ≤ y ⇔ x ≤ □y").unwrap();
        assert!(matches!(p.law, Law::Iff(..)));
    }

    #[test]
    fn geq_flips() {
        let p = parse_law("x >= x ∧ y").unwrap();
        assert_eq!(p.law, Law::Identity(Identity::leq(meet(var(0), var(1)), var(0))));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_law("x <= "), Err(Error::TermSyntax { pos: 5, .. })));
        assert!(matches!(parse_term("Foo x"), Err(Error::TermSyntax { pos: 0, .. })));
        assert!(parse_term("x y").is_err());
        assert!(parse_term("x $ y").is_err());
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "◇(x ∨ y) ≤ ◇x ∨ ◇y",
            "□(x ∨ ¬y) ∧ y = □x ∧ y",
            "x ∧ (y ∨ z) = x ∧ y ∨ x ∧ z",
            "(x → y) → z ≤ x → y → z",
            "B¬x = D(x ∧ y)",
        ] {
            let p = parse_law(src).unwrap();
            let shown = p.law.display(&p.vars).to_string();
            assert_eq!(parse_law(&shown).unwrap().law, p.law, "{shown}");
        }
    }

    #[test]
    fn subterms_are_distinct_and_bottom_up() {
        let (t, _) = parse_term("¬x ∨ ¬x").unwrap();
        let subs = t.subterms();
        assert_eq!(subs.len(), 3);
        assert_eq!(subs[0], &var(0));
        assert_eq!(*subs.last().unwrap(), &t);
    }

    #[test]
    fn word_application() {
        let w: ModalWord = "□¬".parse().unwrap();
        assert_eq!(apply_word(&w, var(0)), nec(neg(var(0))));
    }
}
