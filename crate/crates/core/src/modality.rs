//! Modalities: finite words over `{¬, □, ◇, D}` read as unary maps.
//!
//! Classification is semantic. Two words fall in the same class iff they
//! agree at every element of every algebra in the family, and classes are
//! ordered pointwise. The known rewrite identities are only a
//! cross-check ([`rewrite_identities_check`]).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::modal::{AlgebraProfile, Class};
use crate::ops::OpTable;
use crate::order::Elem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Neg,
    Box,
    Dia,
    Dual,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::Neg, Letter::Box, Letter::Dia, Letter::Dual];

    pub fn symbol(self) -> char {
        match self {
            Letter::Neg => '¬',
            Letter::Box => '□',
            Letter::Dia => '◇',
            Letter::Dual => 'D',
        }
    }

    /// ASCII letters: `N` ¬, `B` □, `D` ◇, `U` dual negation. Unicode symbols are accepted too.
    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'N' | 'n' | '¬' | '~' => Some(Letter::Neg),
            'B' | 'b' | '□' | 'L' => Some(Letter::Box),
            'D' | 'd' | '◇' | 'M' => Some(Letter::Dia),
            'U' | 'u' | 'δ' => Some(Letter::Dual),
            _ => None,
        }
    }

    pub fn ascii(self) -> char {
        match self {
            Letter::Neg => 'N',
            Letter::Box => 'B',
            Letter::Dia => 'D',
            Letter::Dual => 'U',
        }
    }

    /// `¬` and `D` reverse the order.
    pub fn is_antitone(self) -> bool {
        matches!(self, Letter::Neg | Letter::Dual)
    }

    pub fn table(self, p: &AlgebraProfile) -> &OpTable {
        match self {
            Letter::Neg => &p.neg,
            Letter::Box => &p.nec,
            Letter::Dia => &p.pos,
            Letter::Dual => &p.dual,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Dual => f.write_str("D"),
            l => write!(f, "{}", l.symbol()),
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses an alphabet such as `NBD` or `¬□◇`.
pub fn parse_alphabet(s: &str) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    for (pos, c) in s.char_indices() {
        if c == ',' || c.is_whitespace() {
            continue;
        }
        let l = Letter::from_char(c).ok_or_else(|| Error::TermSyntax {
            pos,
            msg: format!("`{c}` is not a modal letter (use N, B, D, U)"),
        })?;
        if !out.contains(&l) {
            out.push(l);
        }
    }
    Ok(out)
}

/// A composition of unary operators, written left to right and applied right to left.
/// The empty word is the identity modality `∘`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModalWord(pub Vec<Letter>);

impl ModalWord {
    pub fn identity() -> Self {
        ModalWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    pub fn then(&self, outer: &ModalWord) -> ModalWord {
        let mut v = outer.0.clone();
        v.extend_from_slice(&self.0);
        ModalWord(v)
    }

    /// Sign from letter parity: an even number of antitone letters gives a positive modality.
    pub fn parity_sign(&self) -> Sign {
        if self.0.iter().filter(|l| l.is_antitone()).count() % 2 == 0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    fn shortlex_key(&self) -> (usize, &[Letter]) {
        (self.0.len(), &self.0)
    }

    pub fn ascii(&self) -> String {
        self.0.iter().map(|l| l.ascii()).collect()
    }
}

impl fmt::Display for ModalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∘");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for ModalWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "∘" || s == "id" || s.is_empty() {
            return Ok(ModalWord::identity());
        }
        s.char_indices()
            .map(|(pos, c)| {
                Letter::from_char(c).ok_or_else(|| Error::TermSyntax {
                    pos,
                    msg: format!("`{c}` is not a modal letter"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(ModalWord)
    }
}

impl Serialize for ModalWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn check_letters(p: &AlgebraProfile, word: &ModalWord) -> Result<()> {
    for &l in word.letters() {
        if !l.table(p).is_total() {
            return Err(Error::OperatorMissing(l, p.name.clone()));
        }
    }
    Ok(())
}

/// Applies `word` to `a`. Every letter's operator must be total on the profile.
pub fn apply_word(p: &AlgebraProfile, word: &ModalWord, a: Elem) -> Result<Option<Elem>> {
    check_letters(p, word)?;
    Ok(word.letters().iter().rev().try_fold(a, |x, l| l.table(p).get(x)))
}

/// The word as a total table on the profile's lattice.
pub fn word_table(p: &AlgebraProfile, word: &ModalWord) -> Result<Vec<Elem>> {
    check_letters(p, word)?;
    Ok(p.lattice
        .elements()
        .map(|a| {
            word.letters()
                .iter()
                .rev()
                .fold(a, |x, l| l.table(p).get(x).expect("letters checked total"))
        })
        .collect())
}

/// All words of length `≤ max_len`, shortest first, then lexicographic in letter order.
pub fn enumerate_words(alphabet: &[Letter], max_len: usize) -> Vec<ModalWord> {
    let mut alphabet = alphabet.to_vec();
    alphabet.sort();
    alphabet.dedup();
    let mut out = vec![ModalWord::identity()];
    let mut layer = vec![ModalWord::identity()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &l in &alphabet {
                let mut v = w.0.clone();
                v.push(l);
                next.push(ModalWord(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    Positive,
    Negative,
    /// Both monotone and antitone over the family.
    Constant,
    /// Neither.
    Mixed,
}

/// A point of the family: which algebra, which element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub algebra: String,
    pub algebra_index: usize,
    pub element: String,
    pub elem: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Comparison {
    Eq,
    /// Strictly below.
    Leq,
    /// Strictly above.
    Geq,
    Incomparable {
        /// Where the first word is not below the second.
        left_not_leq: Witness,
        /// Where the second word is not below the first.
        right_not_leq: Witness,
    },
}

/// The word's values over the whole family, concatenated.
struct Signature(Vec<Elem>);

struct FamilyView<'a> {
    family: &'a [&'a AlgebraProfile],
    offsets: Vec<usize>,
}

impl<'a> FamilyView<'a> {
    fn new(family: &'a [&'a AlgebraProfile]) -> Self {
        let mut offsets = Vec::with_capacity(family.len());
        let mut acc = 0;
        for p in family {
            offsets.push(acc);
            acc += p.lattice.len();
        }
        FamilyView { family, offsets }
    }

    fn signature(&self, word: &ModalWord) -> Result<Signature> {
        let mut v = Vec::new();
        for p in self.family {
            v.extend(word_table(p, word)?);
        }
        Ok(Signature(v))
    }

    /// Position in the concatenation to (algebra, element).
    fn locate(&self, pos: usize) -> (usize, Elem) {
        let i = self.offsets.partition_point(|&o| o <= pos) - 1;
        (i, pos - self.offsets[i])
    }

    fn witness(&self, pos: usize) -> Witness {
        let (i, a) = self.locate(pos);
        let p = self.family[i];
        Witness {
            algebra: p.name.clone(),
            algebra_index: i,
            element: p.lattice.name(a).to_string(),
            elem: a,
        }
    }

    /// First position where `x ≤ y` fails.
    fn not_leq_at(&self, x: &Signature, y: &Signature) -> Option<usize> {
        (0..x.0.len()).find(|&pos| {
            let (i, _) = self.locate(pos);
            !self.family[i].lattice.leq(x.0[pos], y.0[pos])
        })
    }

    fn sign(&self, s: &Signature) -> Sign {
        let mut mono = true;
        let mut anti = true;
        for (i, p) in self.family.iter().enumerate() {
            let l = &p.lattice;
            let off = self.offsets[i];
            for a in l.elements() {
                for b in l.elements() {
                    if l.leq(a, b) {
                        let (fa, fb) = (s.0[off + a], s.0[off + b]);
                        mono &= l.leq(fa, fb);
                        anti &= l.leq(fb, fa);
                    }
                }
            }
        }
        match (mono, anti) {
            (true, true) => Sign::Constant,
            (true, false) => Sign::Positive,
            (false, true) => Sign::Negative,
            (false, false) => Sign::Mixed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModalityClass {
    pub representative: ModalWord,
    pub members: Vec<ModalWord>,
    /// Monotone/antitone as observed over the family.
    pub sign: Sign,
    /// Sign predicted by the parity of antitone letters in the representative.
    pub parity_sign: Sign,
}

impl ModalityClass {
    /// The observed sign disagrees with the letter parity.
    pub fn sign_mismatch(&self) -> bool {
        self.sign != Sign::Constant && self.sign != self.parity_sign
    }
}

/// Pointwise-equality classes of words over a family, ordered pointwise.
#[derive(Clone, Debug, Serialize)]
pub struct ModalityPoset {
    pub family: Vec<String>,
    pub classes: Vec<ModalityClass>,
    leq: Vec<Vec<bool>>,
    #[serde(skip)]
    index: HashMap<ModalWord, usize>,
    #[serde(skip)]
    signatures: Vec<Vec<Elem>>,
    #[serde(skip)]
    offsets: Vec<usize>,
    #[serde(skip)]
    element_names: Vec<Vec<String>>,
    #[serde(skip)]
    orders: Vec<Vec<bool>>,
}

impl ModalityPoset {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, word: &ModalWord) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Compares the classes of two enumerated words.
    pub fn words_leq(&self, w1: &ModalWord, w2: &ModalWord) -> Option<bool> {
        Some(self.leq(self.class_of(w1)?, self.class_of(w2)?))
    }

    /// Strict covers of the class order, as `(lower, upper)` class indices.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |i: usize, j: usize| i != j && self.leq[i][j];
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if !self.leq[i][j] && !self.leq[j][i] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// First point where class `i` is not below class `j`.
    pub fn not_leq_witness(&self, i: usize, j: usize) -> Option<Witness> {
        let (x, y) = (&self.signatures[i], &self.signatures[j]);
        let pos = (0..x.len()).find(|&pos| !self.point_leq(pos, x[pos], y[pos]))?;
        let (alg, a) = self.locate(pos);
        Some(Witness {
            algebra: self.family[alg].clone(),
            algebra_index: alg,
            element: self.element_names[alg][a].clone(),
            elem: a,
        })
    }

    fn locate(&self, pos: usize) -> (usize, Elem) {
        let i = self.offsets.partition_point(|&o| o <= pos) - 1;
        (i, pos - self.offsets[i])
    }

    fn point_leq(&self, pos: usize, x: Elem, y: Elem) -> bool {
        let (i, _) = self.locate(pos);
        let n = self.element_names[i].len();
        self.orders[i][x * n + y]
    }

    pub fn sign_mismatches(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.classes[i].sign_mismatch()).collect()
    }

    /// Graphviz rendering of the class Hasse diagram, bottom to top.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph \"{}\" {{\n  rankdir=BT;\n  node [shape=box];\n", escape(name));
        for (i, c) in self.classes.iter().enumerate() {
            let others: Vec<String> = c.members.iter().skip(1).take(3).map(|w| w.to_string()).collect();
            let label = if others.is_empty() {
                c.representative.to_string()
            } else {
                format!("{}\\n= {}", c.representative, others.join(" = "))
            };
            s.push_str(&format!("  m{i} [label=\"{}\"];\n", escape(&label)));
        }
        for (i, j) in self.covers() {
            s.push_str(&format!("  m{i} -> m{j};\n"));
        }
        s.push_str("}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('"', "\\\"")
}

/// Classifies the given words over `family`.
pub fn classify_words(family: &[&AlgebraProfile], words: &[ModalWord]) -> Result<ModalityPoset> {
    let view = FamilyView::new(family);
    let mut sig_index: HashMap<Vec<Elem>, usize> = HashMap::new();
    let mut classes: Vec<ModalityClass> = Vec::new();
    let mut signatures: Vec<Vec<Elem>> = Vec::new();
    let mut index = HashMap::new();

    let mut sorted: Vec<&ModalWord> = words.iter().collect();
    sorted.sort_by(|a, b| a.shortlex_key().cmp(&b.shortlex_key()));
    sorted.dedup();

    for w in sorted {
        let sig = view.signature(w)?;
        let id = match sig_index.get(&sig.0) {
            Some(&id) => {
                classes[id].members.push(w.clone());
                id
            }
            None => {
                let id = classes.len();
                classes.push(ModalityClass {
                    representative: w.clone(),
                    members: vec![w.clone()],
                    sign: view.sign(&sig),
                    parity_sign: w.parity_sign(),
                });
                sig_index.insert(sig.0.clone(), id);
                signatures.push(sig.0);
                id
            }
        };
        index.insert(w.clone(), id);
    }

    let n = classes.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = view
                .not_leq_at(&Signature(signatures[i].clone()), &Signature(signatures[j].clone()))
                .is_none();
        }
    }
    Ok(ModalityPoset {
        family: family.iter().map(|p| p.name.clone()).collect(),
        classes,
        leq,
        index,
        signatures,
        offsets: view.offsets.clone(),
        element_names: family.iter().map(|p| p.lattice.names().to_vec()).collect(),
        orders: family
            .iter()
            .map(|p| {
                let l = &p.lattice;
                l.elements()
                    .flat_map(|a| l.elements().map(move |b| l.leq(a, b)))
                    .collect()
            })
            .collect(),
    })
}

/// Classifies every word over `alphabet` up to `max_len`.
pub fn classify_modalities(family: &[&AlgebraProfile], alphabet: &[Letter], max_len: usize) -> Result<ModalityPoset> {
    classify_words(family, &enumerate_words(alphabet, max_len))
}

/// Pointwise comparison of two words over the family.
pub fn compare_words(family: &[&AlgebraProfile], w1: &ModalWord, w2: &ModalWord) -> Result<Comparison> {
    let view = FamilyView::new(family);
    let (s1, s2) = (view.signature(w1)?, view.signature(w2)?);
    let a = view.not_leq_at(&s1, &s2);
    let b = view.not_leq_at(&s2, &s1);
    Ok(match (a, b) {
        (None, None) => Comparison::Eq,
        (None, Some(_)) => Comparison::Leq,
        (Some(_), None) => Comparison::Geq,
        (Some(x), Some(y)) => Comparison::Incomparable {
            left_not_leq: view.witness(x),
            right_not_leq: view.witness(y),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RewriteVerdict {
    Holds,
    Fails { element: String },
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct RewriteEntry {
    pub lhs: ModalWord,
    pub rhs: ModalWord,
    /// The class in which the identity is guaranteed.
    pub class: Class,
    /// Whether the profile belongs to that class.
    pub in_class: bool,
    pub verdict: RewriteVerdict,
}

/// The word identities used to reduce modalities, each tagged with the class that guarantees it.
pub fn rewrite_identities() -> Vec<(ModalWord, ModalWord, Class)> {
    let w = |s: &str| s.parse::<ModalWord>().expect("static word");
    vec![
        (w("¬¬¬"), w("¬"), Class::Ml),
        (w("¬¬□"), w("□"), Class::MlBox),
        (w("◇¬¬"), w("◇"), Class::MlDiamond),
        (w("¬◇"), w("□¬"), Class::MlBoxDiamond),
        (w("◇□◇"), w("◇"), Class::MlBoxDiamond),
        (w("□◇□"), w("□"), Class::MlBoxDiamond),
        (w("□□"), w("□"), Class::S),
        (w("◇◇"), w("◇"), Class::S),
        (w("□¬□"), w("¬□"), Class::S),
        (w("¬□¬"), w("□◇"), Class::S),
        (w("¬□◇"), w("□¬"), Class::S),
        (w("□◇¬□"), w("¬□"), Class::S),
    ]
}

/// Checks every rewrite identity on a single algebra.
pub fn rewrite_identities_check(p: &AlgebraProfile) -> Vec<RewriteEntry> {
    rewrite_identities()
        .into_iter()
        .map(|(lhs, rhs, class)| {
            let verdict = match (word_table(p, &lhs), word_table(p, &rhs)) {
                (Ok(l), Ok(r)) => match p.lattice.elements().find(|&a| l[a] != r[a]) {
                    None => RewriteVerdict::Holds,
                    Some(a) => RewriteVerdict::Fails {
                        element: p.lattice.name(a).to_string(),
                    },
                },
                _ => RewriteVerdict::NotApplicable,
            };
            RewriteEntry {
                lhs,
                rhs,
                class,
                in_class: p.in_class(class),
                verdict,
            }
        })
        .collect()
}
