//! Built-in lattices and posets, each carrying machine-checked facts.
//!
//! Facts are written as terms over named elements and are re-checked by
//! [`load`] and [`validate_all`].

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::equation::{check_homomorphism, eval, law_at, LatticeMap, MapOp, Preservation};
use crate::error::{Error, Result};
use crate::modal::{AlgebraProfile, Class};
use crate::modality::Letter;
use crate::order::{FiniteLattice, FinitePoset};
use crate::repr::{is_s_poset, UpsetAlgebra};
use crate::term::{parse_law, parse_term, Unary};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Lattice(FiniteLattice),
    Poset(FinitePoset),
}

/// An expected fact. Element names refer to the lattice, or to the upset
/// algebra (`{a,b}` style names) for poset entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Fact {
    Size(usize),
    /// The term at the assignment (variables in order of appearance) has this value; `None` means undefined.
    Value {
        term: &'static str,
        at: Vec<&'static str>,
        value: Option<&'static str>,
    },
    /// The law evaluates to `holds` at the assignment.
    LawAt {
        law: &'static str,
        at: Vec<&'static str>,
        holds: bool,
    },
    Total {
        letter: Letter,
        total: bool,
    },
    InClass {
        class: Class,
        member: bool,
    },
    Distributive(bool),
    SPoset(bool),
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::Size(n) => write!(f, "size {n}"),
            Fact::Value { term, at, value } => {
                write!(f, "{term} at [{}] ", at.join(", "))?;
                match value {
                    Some(v) => write!(f, "= {v}"),
                    None => f.write_str("undefined"),
                }
            }
            Fact::LawAt { law, at, holds } => {
                write!(
                    f,
                    "{law} {} at [{}]",
                    if *holds { "holds" } else { "fails" },
                    at.join(", ")
                )
            }
            Fact::Total { letter, total } => {
                write!(f, "{} {}", letter.symbol(), if *total { "total" } else { "partial" })
            }
            Fact::InClass { class, member } => {
                write!(f, "{}in {}", if *member { "" } else { "not " }, class.label())
            }
            Fact::Distributive(d) => f.write_str(if *d { "distributive" } else { "not distributive" }),
            Fact::SPoset(s) => f.write_str(if *s { "S-poset" } else { "not an S-poset" }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactSpec {
    pub fact: Fact,
    pub note: &'static str,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub structure: Structure,
    pub note: &'static str,
    pub facts: Vec<FactSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactResult {
    pub fact: String,
    pub note: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

impl CatalogEntry {
    pub fn is_lattice(&self) -> bool {
        matches!(self.structure, Structure::Lattice(_))
    }

    /// The lattice itself, or the upset lattice of a poset.
    pub fn algebra_lattice(&self) -> Result<FiniteLattice> {
        match &self.structure {
            Structure::Lattice(l) => Ok(l.clone()),
            Structure::Poset(p) => Ok(UpsetAlgebra::new(p)?.lattice),
        }
    }

    pub fn profile(&self) -> Option<AlgebraProfile> {
        self.algebra_lattice().ok().map(|l| AlgebraProfile::new(self.name, l))
    }

    pub fn check_facts(&self) -> Result<Vec<FactResult>> {
        let profile = self
            .profile()
            .ok_or_else(|| Error::Precondition(format!("{}: no algebra", self.name)))?;
        self.facts
            .iter()
            .map(|spec| {
                let (passed, detail) = check_fact(self, &profile, &spec.fact)?;
                Ok(FactResult {
                    fact: spec.fact.to_string(),
                    note: spec.note,
                    passed,
                    detail,
                })
            })
            .collect()
    }

    /// Fails with the first fact that does not hold.
    pub fn validate(&self) -> Result<()> {
        for (spec, r) in self.facts.iter().zip(self.check_facts()?) {
            if !r.passed {
                return Err(Error::CatalogFact {
                    entry: self.name.into(),
                    fact: format!(
                        "{}{}",
                        r.fact,
                        r.detail.map(|d| format!(" (got {d})")).unwrap_or_default()
                    ),
                    source_note: spec.note.into(),
                });
            }
        }
        Ok(())
    }
}

fn check_fact(entry: &CatalogEntry, p: &AlgebraProfile, fact: &Fact) -> Result<(bool, Option<String>)> {
    let l = &p.lattice;
    let lookup = |names: &[&str]| names.iter().map(|n| l.index_of(n)).collect::<Result<Vec<_>>>();
    let show = |v: Option<usize>| v.map_or("undefined".to_string(), |e| l.name(e).to_string());
    Ok(match fact {
        Fact::Size(n) => {
            let size = match &entry.structure {
                Structure::Lattice(l) => l.len(),
                Structure::Poset(q) => q.len(),
            };
            (size == *n, Some(size.to_string()))
        }
        Fact::Value { term, at, value } => {
            let (t, vars) = parse_term(term)?;
            if vars.len() != at.len() {
                return Err(Error::Precondition(format!("`{term}` needs {} arguments", vars.len())));
            }
            let got = eval(p, &t, &lookup(at)?)?;
            let want = value.map(|v| l.index_of(v)).transpose()?;
            (got == want, Some(show(got)))
        }
        Fact::LawAt { law, at, holds } => {
            let parsed = parse_law(law)?;
            let got = law_at(p, &parsed.law, &lookup(at)?);
            (got == Some(*holds), Some(format!("{got:?}")))
        }
        Fact::Total { letter, total } => {
            let table = match letter {
                Letter::Neg => &p.neg,
                Letter::Box => &p.nec,
                Letter::Dia => &p.pos,
                Letter::Dual => &p.dual,
            };
            // □ and ◇ are only computed when ¬ is total.
            (table.is_total() == *total, None)
        }
        Fact::InClass { class, member } => (p.in_class(*class) == *member, None),
        Fact::Distributive(d) => (l.is_distributive() == *d, None),
        Fact::SPoset(s) => match &entry.structure {
            Structure::Poset(q) => (is_s_poset(q).is_s_poset == *s, None),
            Structure::Lattice(_) => return Err(Error::Precondition("S-poset fact on a lattice".into())),
        },
    })
}

/// A named map between catalog lattices, with the operators it must and must not preserve.
#[derive(Clone, Debug)]
pub struct CatalogMap {
    pub name: &'static str,
    pub source: &'static str,
    pub target: &'static str,
    /// `(source element, target element)` for every source element.
    pub pairs: Vec<(&'static str, &'static str)>,
    pub preserves: Vec<MapOp>,
    pub breaks: Vec<MapOp>,
    pub note: &'static str,
}

impl CatalogMap {
    pub fn lattice_map(&self) -> Result<LatticeMap> {
        let src = load(self.source)?.algebra_lattice()?;
        let tgt = load(self.target)?.algebra_lattice()?;
        let mut values = vec![usize::MAX; src.len()];
        for (a, b) in &self.pairs {
            values[src.index_of(a)?] = tgt.index_of(b)?;
        }
        if values.contains(&usize::MAX) {
            return Err(Error::Precondition(format!("map {} is not total", self.name)));
        }
        Ok(LatticeMap {
            source: self.source.into(),
            target: self.target.into(),
            values,
        })
    }

    pub fn check(&self) -> Result<Vec<Preservation>> {
        let src = load(self.source)?.profile().expect("lattice entry");
        let tgt = load(self.target)?.profile().expect("lattice entry");
        let ops: Vec<MapOp> = self.preserves.iter().chain(&self.breaks).copied().collect();
        check_homomorphism(&self.lattice_map()?, &src, &tgt, &ops)
    }

    pub fn validate(&self) -> Result<()> {
        for r in self.check()? {
            let expected = self.preserves.contains(&r.op);
            if r.preserved != expected {
                return Err(Error::CatalogFact {
                    entry: self.name.into(),
                    fact: format!("{} {}", if expected { "preserves" } else { "breaks" }, r.op.label()),
                    source_note: self.note.into(),
                });
            }
        }
        Ok(())
    }
}

fn lat(names: &[&str], covers: &[(&str, &str)]) -> Structure {
    Structure::Lattice(FiniteLattice::build(names, covers).expect("catalog lattice"))
}

fn pos(names: &[&str], covers: &[(&str, &str)]) -> Structure {
    Structure::Poset(FinitePoset::build(names, covers).expect("catalog poset"))
}

fn value(term: &'static str, at: &[&'static str], v: &'static str, note: &'static str) -> FactSpec {
    FactSpec {
        fact: Fact::Value {
            term,
            at: at.to_vec(),
            value: Some(v),
        },
        note,
    }
}

fn undefined(term: &'static str, at: &[&'static str], note: &'static str) -> FactSpec {
    FactSpec {
        fact: Fact::Value {
            term,
            at: at.to_vec(),
            value: None,
        },
        note,
    }
}

fn fails(law: &'static str, at: &[&'static str], note: &'static str) -> FactSpec {
    FactSpec {
        fact: Fact::LawAt {
            law,
            at: at.to_vec(),
            holds: false,
        },
        note,
    }
}

fn fact(fact: Fact, note: &'static str) -> FactSpec {
    FactSpec { fact, note }
}

fn build_entries() -> Vec<CatalogEntry> {
    use Fact::*;
    let mut out = vec![
        CatalogEntry {
            name: "chain2",
            structure: lat(&["0", "1"], &[("0", "1")]),
            note: "two-element Boolean algebra",
            facts: vec![fact(Size(2), "carrier"), fact(InClass { class: Class::DistS, member: true }, "Boolean")],
        },
        CatalogEntry {
            name: "chain3",
            structure: lat(&["0", "m", "1"], &[("0", "m"), ("m", "1")]),
            note: "three-element chain 3 with middle element m",
            facts: vec![
                fact(Size(3), "carrier"),
                value("Neg x", &["m"], "0", "chain 3"),
                value("Box x", &["m"], "0", "chain 3"),
                value("Dia x", &["m"], "1", "chain 3"),
                fails("Box Neg Box x <= Neg Box Neg Neg x", &["m"], "incomparability of □¬□ and ¬□¬¬ at m"),
                fails("Neg Box x <= Neg Neg Dia Neg x", &["m"], "¬□ ≰ ¬¬◇¬ at m"),
                fact(Distributive(true), "chain"),
            ],
        },
        CatalogEntry {
            name: "square",
            structure: lat(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]),
            note: "four-element Boolean algebra 2²",
            facts: vec![fact(Size(4), "carrier"), value("Box x", &["a"], "a", "Boolean")],
        },
        CatalogEntry {
            name: "square_top",
            structure: lat(
                &["0", "l", "r", "m", "1"],
                &[("0", "l"), ("0", "r"), ("l", "m"), ("r", "m"), ("m", "1")],
            ),
            note: "2²⊕1: atoms l and r, coatom m",
            facts: vec![
                fact(Size(5), "carrier"),
                value("Neg x", &["l"], "r", "atoms of 2²⊕1"),
                value("Box Neg (x and y)", &["l", "r"], "1", "atoms of 2²⊕1"),
                value("Box (Neg x or Neg y)", &["l", "r"], "0", "□¬(a∧b) ≠ □(¬a∨¬b) at the atoms"),
                fails("Dia x and Dia y <= Dia (x and y)", &["l", "r"], "◇a∧◇b ≰ ◇(a∧b) at the atoms"),
                fails("Dia x and Dia Neg x <= Dia (x and Neg x)", &["l"], "◇a∧◇¬a ≰ ◇(a∧¬a)"),
                fact(InClass { class: Class::DistS, member: true }, "distributive S-extension"),
            ],
        },
        CatalogEntry {
            name: "square_bot",
            structure: lat(
                &["0", "z", "a", "b", "1"],
                &[("0", "z"), ("z", "a"), ("z", "b"), ("a", "1"), ("b", "1")],
            ),
            note: "1⊕2²: atom z, coatoms a and b",
            facts: vec![
                fact(Size(5), "carrier"),
                value("D x", &["a"], "b", "1⊕2² coatom"),
                value("Neg Box x", &["a"], "1", "Da ≠ ¬□a at the coatoms"),
                value("D x", &["b"], "a", "1⊕2² coatom"),
                value("Neg Box x", &["b"], "1", "Da ≠ ¬□a at the coatoms"),
                fails("Box (x or y) <= Box x or Box y", &["a", "b"], "□(a∨b) ≰ □a∨□b at the coatoms"),
            ],
        },
        CatalogEntry {
            name: "pentagon",
            structure: lat(
                &["0", "a", "b", "c", "1"],
                &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
            ),
            note: "N5 shape: a atom non-coatom, b atom-coatom, c coatom non-atom",
            facts: vec![
                fact(Size(5), "carrier"),
                fact(Distributive(false), "non-distributive"),
                value("Dia x", &["c"], "a", "pentagon"),
                value("Box x", &["a"], "c", "pentagon"),
                fails("Box x <= x", &["a"], "T-property □a ≤ a fails at a"),
                fails("x <= Dia x", &["c"], "a ≤ ◇a fails at c"),
                fails("Neg Box Neg x <= Dia x", &["c"], "¬□¬ ≰ ◇ at c"),
                fails("Neg Neg Dia x <= Dia x", &["c"], "¬¬◇ ≰ ◇ at c"),
                fails("Neg x <= Dia Neg x", &["b"], "¬ ≰ ◇¬ at the atom-coatom"),
                fails("Neg Dia x <= Dia Neg x", &["b"], "¬◇ ≰ ◇¬ at the atom-coatom"),
                value("Bool x", &["a"], "a", "every pentagon element is complemented"),
                fact(InClass { class: Class::S, member: true }, "S-extension"),
            ],
        },
        CatalogEntry {
            name: "diamond",
            structure: lat(
                &["0", "a", "b", "c", "1"],
                &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
            ),
            note: "M3: three atoms",
            facts: vec![
                fact(Size(5), "carrier"),
                undefined("Neg x", &["a"], "¬ undefined at the atoms"),
                undefined("Neg x", &["b"], "¬ undefined at the atoms"),
                undefined("Neg x", &["c"], "¬ undefined at the atoms"),
                fact(Total { letter: Letter::Neg, total: false }, "not meet-complemented"),
            ],
        },
        CatalogEntry {
            name: "diamond_bot",
            structure: lat(
                &["0", "z", "a", "b", "c", "1"],
                &[("0", "z"), ("z", "a"), ("z", "b"), ("z", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
            ),
            note: "M3 with a new bottom",
            facts: vec![
                fact(Size(6), "carrier"),
                fact(Total { letter: Letter::Box, total: true }, "□ exists"),
                fact(Total { letter: Letter::Dual, total: false }, "D does not exist"),
                undefined("D x", &["a"], "D undefined at the coatoms"),
                undefined("D x", &["b"], "D undefined at the coatoms"),
                undefined("D x", &["c"], "D undefined at the coatoms"),
            ],
        },
        CatalogEntry {
            name: "r8",
            structure: lat(
                &["0", "r_a", "r_b", "d", "c", "r_c", "e", "1"],
                &[
                    ("0", "r_a"),
                    ("r_a", "d"),
                    ("d", "r_c"),
                    ("r_c", "1"),
                    ("0", "r_b"),
                    ("r_b", "c"),
                    ("c", "e"),
                    ("e", "1"),
                    ("r_b", "d"),
                    ("d", "e"),
                ],
            ),
            note: "first eight elements of the Rieger-Nishimura lattice; r_b meet-reducible atom, r_a meet-irreducible atom, r_c join-irreducible coatom",
            facts: vec![
                fact(Size(8), "carrier"),
                value("Box x", &["r_c"], "r_a", "□r_c = r_a"),
                value("Bool x", &["r_c"], "0", "B r_c = 0"),
                value("Dia x", &["r_a"], "r_c", "◇r_a = r_c"),
                value("Dia x", &["c"], "1", "◇c = 1"),
                value("Neg Box Neg x", &["r_a"], "1", "¬□¬r_a = 1"),
                value("Neg Neg Dia x", &["r_a"], "1", "¬¬◇r_a = 1"),
                fails("Box x <= Box Box x", &["r_c"], "S4-property for □ fails at r_c"),
                fails("Dia Dia x <= Dia x", &["r_a"], "S4-property for ◇ fails at r_a"),
                fails("Neg Neg Dia x <= Dia x", &["r_a"], "¬¬◇ ≰ ◇ at r_a"),
                fact(Distributive(true), "Heyting algebra"),
            ],
        },
        CatalogEntry {
            name: "r8_quotient6",
            structure: lat(
                &["0", "r_a", "r_b", "c", "r_c", "1"],
                &[("0", "r_a"), ("r_a", "r_c"), ("r_c", "1"), ("0", "r_b"), ("r_b", "c"), ("c", "1"), ("r_b", "r_c")],
            ),
            note: "L6: R8 with e identified with 1 and d with r_c",
            facts: vec![fact(Size(6), "carrier"), value("Dia x", &["c"], "c", "◇hc = hc")],
        },
        CatalogEntry {
            name: "lattice13",
            structure: lat(
                &["0", "a", "nb", "t", "p", "q", "r", "b", "f", "na", "h", "k", "1"],
                &[
                    ("0", "a"),
                    ("0", "t"),
                    ("0", "nb"),
                    ("a", "p"),
                    ("a", "q"),
                    ("nb", "r"),
                    ("nb", "p"),
                    ("t", "q"),
                    ("t", "r"),
                    ("p", "f"),
                    ("q", "b"),
                    ("q", "f"),
                    ("r", "na"),
                    ("r", "f"),
                    ("b", "h"),
                    ("f", "k"),
                    ("f", "h"),
                    ("na", "k"),
                    ("h", "1"),
                    ("k", "1"),
                ],
            ),
            note: "13-element lattice; na and nb are the nodes labeled ¬a and ¬b, other unlabeled nodes named p, q, r, t, f, h, k",
            facts: vec![
                fact(Size(13), "carrier"),
                value("Neg x", &["a"], "na", "node ¬a"),
                value("Neg x", &["b"], "nb", "node ¬b"),
                value("Box Neg x", &["a"], "nb", "□¬a at the atom a"),
                value("Neg Box Neg x", &["a"], "b", "¬□¬a at the atom a"),
                value("Neg Box Box Neg x", &["a"], "1", "¬□□¬a at the atom a"),
                value("Box Box Neg x", &["a"], "0", "□□¬a at the atom a"),
                value("Box Neg Box Neg x", &["a"], "a", "□¬□¬a = a"),
                value("Dia x", &["a"], "b", "◇a at the atom a"),
                value("Dia Dia x", &["a"], "1", "◇◇a at the atom a"),
                value("Neg Dia x", &["a"], "nb", "¬◇a at the atom a"),
                value("Dia Neg Dia x", &["a"], "na", "◇¬◇a at the atom a"),
                value("Neg Dia Dia x", &["a"], "0", "¬◇◇a at the atom a"),
                fact(InClass { class: Class::MlBoxDiamond, member: true }, "□ and ◇ exist"),
            ],
        },
        CatalogEntry {
            name: "fig_aa7",
            structure: lat(
                &["0", "a", "b", "c", "d", "e", "1"],
                &[("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "e"), ("c", "1"), ("d", "1"), ("e", "1")],
            ),
            note: "seven-element non-distributive meet-complemented lattice without □",
            facts: vec![
                fact(Size(7), "carrier"),
                undefined("Box x", &["c"], "□c does not exist"),
                fact(Total { letter: Letter::Box, total: false }, "without □"),
                fact(Total { letter: Letter::Dia, total: true }, "◇ exists"),
                value("Dia (x or y)", &["a", "b"], "1", "◇(a∨b) = 1"),
                value("Dia x or Dia y", &["a", "b"], "c", "◇a∨◇b = c"),
                value("Dia Neg (x and y)", &["d", "e"], "1", "◇¬(d∧e) = 1"),
                value("Dia Neg x or Dia Neg y", &["d", "e"], "c", "◇¬d∨◇¬e = c"),
                value("Neg Dia x", &["d"], "e", "¬◇d = ¬a = e"),
                value("Dia Neg x", &["d"], "b", "◇¬d = ◇e = b"),
            ],
        },
        CatalogEntry {
            name: "poset_N",
            structure: pos(&["1", "0a", "b", "0b"], &[("0a", "1"), ("0a", "b"), ("0b", "b")]),
            note: "the four-point N",
            facts: vec![fact(Size(4), "carrier"), fact(SPoset(false), "zigzag distance 3 between 1 and 0b")],
        },
        CatalogEntry {
            name: "poset_nots",
            structure: pos(&["1", "0a", "b", "0b"], &[("0a", "1"), ("0a", "b"), ("0b", "b"), ("0b", "1")]),
            note: "four-point poset with two minimal points below two maximal points",
            facts: vec![fact(Size(4), "carrier"), fact(SPoset(true), "S-poset")],
        },
    ];
    for n in 1..=4 {
        let name: &'static str = ["fence1", "fence2", "fence3", "fence4"][n - 1];
        let mut facts = vec![
            fact(Size(2 * n + 1), "2n+1 points"),
            fact(SPoset(n == 1), "zigzag diameter 2n"),
        ];
        if n == 1 {
            facts.push(value("Dia x", &["{a}"], "{a,b,c}", "◇{a} in the three-point fence"));
        }
        if n == 2 {
            facts.push(value("Dia x", &["{a}"], "{a,b,c}", "◇{a} in the five-point fence"));
            facts.push(value(
                "Dia Dia x",
                &["{a}"],
                "{a,b,c,d,e}",
                "◇◇{a} in the five-point fence",
            ));
        }
        out.push(CatalogEntry {
            name,
            structure: Structure::Poset(crate::repr::fence_poset(n).expect("fence")),
            note: "zigzag fence a > b < c > … on 2n+1 points",
            facts,
        });
    }
    out
}

/// Every entry, in a fixed order. Entries are not re-validated here.
pub fn all_entries() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(build_entries)
}

pub fn names() -> Vec<&'static str> {
    all_entries().iter().map(|e| e.name).collect()
}

pub fn get(name: &str) -> Result<&'static CatalogEntry> {
    all_entries()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCatalogEntry(name.into()))
}

/// Looks up and validates an entry.
pub fn load(name: &str) -> Result<CatalogEntry> {
    let e = get(name)?;
    e.validate()?;
    Ok(e.clone())
}

pub fn maps() -> Vec<CatalogMap> {
    vec![CatalogMap {
        name: "h",
        source: "r8",
        target: "r8_quotient6",
        pairs: vec![
            ("0", "0"),
            ("r_a", "r_a"),
            ("r_b", "r_b"),
            ("d", "r_c"),
            ("c", "c"),
            ("r_c", "r_c"),
            ("e", "1"),
            ("1", "1"),
        ],
        preserves: vec![
            MapOp::Meet,
            MapOp::Join,
            MapOp::Zero,
            MapOp::One,
            MapOp::Unary(Unary::Neg),
        ],
        breaks: vec![MapOp::Unary(Unary::Dia)],
        note: "quotient of R8 identifying e with 1 and d with r_c",
    }]
}

pub fn map(name: &str) -> Result<CatalogMap> {
    maps()
        .into_iter()
        .find(|m| m.name == name)
        .ok_or_else(|| Error::UnknownCatalogEntry(name.into()))
}

pub fn validate_all() -> Result<()> {
    for e in all_entries() {
        e.validate()?;
    }
    for m in maps() {
        m.validate()?;
    }
    Ok(())
}
