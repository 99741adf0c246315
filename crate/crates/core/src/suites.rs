//! Named law suites: axiom bases and the derived-law library, each law tagged
//! with the class it needs, plus documented converse failures and witnesses.

use std::sync::OnceLock;

use serde::Serialize;

use crate::catalog;
use crate::equation::{check_law, law_at, Verdict};
use crate::error::{Error, Result};
use crate::modal::{AlgebraProfile, Class};
use crate::term::{parse_law, Law, Unary};

#[derive(Clone, Debug)]
pub struct SuiteLaw {
    pub label: String,
    pub text: &'static str,
    pub requires: Class,
    pub law: Law,
    pub vars: Vec<String>,
}

impl SuiteLaw {
    pub fn display(&self) -> String {
        self.law.display(&self.vars).to_string()
    }
}

/// What a known failure refers to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FailureTarget {
    /// The converse of the suite law with this label.
    Converse(String),
    /// A law stated on its own.
    Law(String),
}

/// A law that fails in a named catalog entry at named elements.
#[derive(Clone, Debug)]
pub struct KnownFailure {
    pub target: FailureTarget,
    pub law: Law,
    pub vars: Vec<String>,
    pub entry: &'static str,
    pub at: Vec<&'static str>,
}

impl KnownFailure {
    pub fn display(&self) -> String {
        self.law.display(&self.vars).to_string()
    }
}

#[derive(Clone, Debug)]
pub struct Suite {
    pub id: &'static str,
    pub title: &'static str,
    pub laws: Vec<SuiteLaw>,
    pub failures: Vec<KnownFailure>,
}

impl Suite {
    pub fn law(&self, label: &str) -> Option<&SuiteLaw> {
        self.laws.iter().find(|l| l.label == label)
    }
}

#[derive(Clone, Copy)]
enum Target {
    Conv(&'static str),
    Law(&'static str),
}

struct SuiteDef {
    id: &'static str,
    title: &'static str,
    class: Class,
    laws: &'static [(&'static str, &'static str)],
    /// Labels whose class differs from the suite default.
    overrides: &'static [(&'static str, Class)],
    failures: &'static [(Target, &'static str, &'static [&'static str])],
}

use Class::*;
use Target::{Conv, Law as L};

const DEFS: &[SuiteDef] = &[
    SuiteDef {
        id: "ML",
        title: "meet-complement basis",
        class: Ml,
        laws: &[
            ("¬E", "x ∧ ¬x ≤ y"),
            ("¬I1", "y ≤ ¬(x ∧ ¬x)"),
            ("¬I2", "x ∧ ¬(x ∧ y) ≤ ¬y"),
        ],
        overrides: &[],
        failures: &[],
    },
    SuiteDef {
        id: "ML-box",
        title: "□ basis",
        class: MlBox,
        laws: &[
            ("□E", "x ∨ ¬□x = 1"),
            ("□I1", "□1 = 1"),
            ("□I2", "□(x ∨ ¬y) ∧ y = □x ∧ y"),
        ],
        overrides: &[],
        failures: &[],
    },
    SuiteDef {
        id: "ML-box-alt",
        title: "□ basis, inequational variant",
        class: MlBox,
        laws: &[
            ("□E'", "y ≤ x ∨ ¬□x"),
            ("□I1'", "x ≤ □¬(x ∧ ¬x)"),
            ("□I2'", "□(x ∨ ¬y) ∧ ¬¬y ≤ □x"),
        ],
        overrides: &[],
        failures: &[],
    },
    SuiteDef {
        id: "ML-boxdiamond",
        title: "□ and ◇ basis",
        class: MlBoxDiamond,
        laws: &[
            ("□E", "x ∨ ¬□x = 1"),
            ("□I1", "□1 = 1"),
            ("□I2", "□(x ∨ ¬y) ∧ y = □x ∧ y"),
            ("◇I", "¬x ∨ ◇x = 1"),
            ("◇E1", "◇x ≤ ◇(x ∨ y)"),
            ("◇E2", "◇□x ≤ x"),
        ],
        overrides: &[],
        failures: &[],
    },
    SuiteDef {
        id: "ML-boxdiamond-alt",
        title: "□ and ◇ basis with x ≤ □◇x",
        class: MlBoxDiamond,
        laws: &[
            ("□E", "x ∨ ¬□x = 1"),
            ("□I1", "□1 = 1"),
            ("□I2", "□(x ∨ ¬y) ∧ y = □x ∧ y"),
            ("◇I'", "x ≤ □◇x"),
            ("◇E1", "◇x ≤ ◇(x ∨ y)"),
            ("◇E2", "◇□x ≤ x"),
        ],
        overrides: &[],
        failures: &[],
    },
    SuiteDef {
        id: "lemma-lattice",
        title: "lattice inequalities",
        class: Lattice,
        laws: &[
            ("i", "x ∨ (y ∧ z) ≤ (x ∨ y) ∧ (x ∨ z)"),
            ("ii", "(x ∧ y) ∨ (x ∧ z) ≤ x ∧ (y ∨ z)"),
            ("iii", "x ≤ y ⇒ z ∨ x ≤ z ∨ y"),
            ("cL1", "x ∨ y = 1; y ≤ z ⇒ x ∨ z = 1"),
            ("cL1'", "x ∨ y = 1; y ∧ z = y ⇒ x ∨ z = 1"),
        ],
        overrides: &[],
        failures: &[],
    },
    SuiteDef {
        id: "lemma-neg",
        title: "laws of ¬",
        class: Ml,
        laws: &[
            ("DN", "x ≤ ¬¬x"),
            ("TN", "¬¬¬x = ¬x"),
            ("TN'", "x ≤ ¬y ⇒ y ≤ ¬x"),
            ("anti", "x ≤ y ⇒ ¬y ≤ ¬x"),
            ("nn-meet", "¬¬(x ∧ y) = ¬¬x ∧ ¬¬y"),
            ("dm1", "¬(x ∨ y) ≤ ¬x ∧ ¬y"),
            ("dm2", "¬x ∨ ¬y ≤ ¬(x ∧ y)"),
            ("dm3", "¬x ∧ ¬y ≤ ¬(x ∨ y)"),
            ("n0", "¬0 = 1"),
            ("n1", "¬1 = 0"),
        ],
        overrides: &[],
        failures: &[],
    },
    SuiteDef {
        id: "lemma-lmc",
        title: "meet-complemented lattice laws",
        class: Ml,
        laws: &[
            ("i", "(x ∨ y) ∧ ¬y ≤ ¬¬x"),
            ("ii", "(x ∨ ¬y) ∧ y ≤ ¬¬x"),
            ("iii", "(x ∨ ¬y) ∧ ¬x ≤ ¬y"),
            ("iv", "x ∨ y = 1 ⇒ ¬y ≤ ¬¬x"),
            ("v", "x ∨ ¬y = 1 ⇒ y ≤ ¬¬x"),
            ("vi", "x ∨ ¬y = 1 ⇒ ¬x ≤ ¬y"),
            ("vii", "¬x = 1 ⇔ x = 0"),
            ("viii", "x ∨ ¬x = x ⇔ ¬x = 0"),
        ],
        overrides: &[],
        failures: &[
            (L("(x ∨ ¬x) ∧ ¬¬x ≤ x"), "pentagon", &["a"]),
            (L("(x ∨ y) ∧ ¬y ≤ x"), "pentagon", &["a", "b"]),
            (L("(x ∨ ¬y) ∧ y ≤ x"), "pentagon", &["a", "c"]),
        ],
    },
    SuiteDef {
        id: "lemma-derivations",
        title: "quasi-identities used in derivations",
        class: MlBox,
        laws: &[
            ("□I", "x ∨ ¬y = 1 ⇒ y ≤ □x"),
            ("□1", "x ∨ ¬y = 1 ⇒ □(x ∨ ¬y) = 1"),
            ("□I-dual", "¬x ∨ y = 1 ⇒ □y ∧ x = x"),
            ("□mono", "x ≤ y ⇒ □x ≤ □y"),
            ("◇E", "¬x ∨ y = 1 ⇒ ◇x ≤ y"),
            ("◇mono", "x ≤ y ⇒ ◇x ≤ ◇y"),
            ("TDE", "x ∨ y = y ⇒ ◇x ∨ ◇y = ◇y"),
            ("◇□", "x ≤ □y ⇒ ◇x ≤ ◇□y"),
        ],
        overrides: &[
            ("◇E", MlDiamond),
            ("◇mono", MlDiamond),
            ("TDE", MlDiamond),
            ("◇□", MlBoxDiamond),
        ],
        failures: &[],
    },
    SuiteDef {
        id: "lemma-lmcln",
        title: "□-modalities of ML^□",
        class: MlBox,
        laws: &[
            ("i", "x ≤ ¬¬x"),
            ("ii", "□x ≤ □¬¬x"),
            ("iii", "¬□¬¬x ≤ ¬□x"),
            ("iv", "□¬x ≤ ¬x"),
            ("v", "□¬□x ≤ ¬□x"),
            ("vi", "□¬□¬x ≤ ¬□¬x"),
            ("vii", "□¬¬x ≤ ¬¬x"),
            ("viii", "¬x ≤ ¬□¬¬x"),
            ("ix", "¬x ≤ □¬□x"),
            ("x", "¬¬x ≤ □¬□¬x"),
            ("xi", "□□x ≤ □x"),
            ("xii", "□□¬x ≤ □¬x"),
            ("xiii", "¬□x ≤ ¬□□x"),
            ("xiv", "¬□¬x ≤ ¬□□¬x"),
        ],
        overrides: &[],
        failures: &[
            (Conv("i"), "chain3", &["m"]),
            (Conv("ii"), "chain3", &["m"]),
            (Conv("iii"), "chain3", &["m"]),
            (Conv("ix"), "chain3", &["m"]),
            (Conv("iv"), "square_top", &["l"]),
            (Conv("vii"), "square_top", &["l"]),
            (Conv("viii"), "square_top", &["l"]),
            (Conv("x"), "square_top", &["l"]),
            (Conv("v"), "r8", &["r_c"]),
            (Conv("xi"), "r8", &["r_c"]),
            (Conv("xiii"), "r8", &["r_c"]),
            (Conv("vi"), "lattice13", &["a"]),
            (Conv("xii"), "lattice13", &["a"]),
            (Conv("xiv"), "lattice13", &["a"]),
            (L("□¬□x ≤ ¬□¬¬x"), "chain3", &["m"]),
            (L("¬□¬¬x ≤ □¬□x"), "lattice13", &["b"]),
            (L("x ≤ □¬¬x"), "square_top", &["l"]),
            (L("□□x ≤ x"), "pentagon", &["a"]),
        ],
    },
    SuiteDef {
        id: "lemma-boxin",
        title: "properties of □",
        class: MlBox,
        laws: &[
            ("i", "□(x ∧ y) ≤ □x ∧ □y"),
            ("ii", "□x ∨ □y ≤ □(x ∨ y)"),
            ("iii", "□(x ∨ ¬y) ∧ y ≤ □x"),
            ("iv", "□(x ∨ y) ∧ ¬y ≤ □x"),
            ("v", "□x ∧ □¬x = 0"),
            ("vi", "□0 = 0"),
            ("vii", "□x = 1 ⇔ x = 1"),
        ],
        overrides: &[],
        failures: &[
            (L("□(x ∨ y) ≤ □x ∨ □y"), "square_bot", &["a", "b"]),
            (L("□¬(x ∧ y) = □(¬x ∨ ¬y)"), "square_top", &["l", "r"]),
            (L("□x ≤ x"), "pentagon", &["a"]),
            (L("□x ≤ □□x"), "r8", &["r_c"]),
        ],
    },
    SuiteDef {
        id: "lemma-dnb",
        title: "double negation absorbed by □ and ◇",
        class: MlBox,
        laws: &[("□", "¬¬□x = □x"), ("◇", "◇¬¬x = ◇x")],
        overrides: &[("◇", MlDiamond)],
        failures: &[],
    },
    SuiteDef {
        id: "lemma-boolean",
        title: "Boolean elements, B and D",
        class: MlBox,
        laws: &[
            ("lBB", "x ∨ ¬x = 1 ⇔ x ≤ □x"),
            ("lDB", "x ∨ ¬x = 1 ⇔ ◇x ≤ x"),
            ("B1", "B x ≤ x"),
            ("B2", "B x ∨ ¬B x = 1"),
            ("B3", "B x ≤ □x"),
            ("D1", "D x ≤ ¬□x"),
            ("D2", "◇¬x ≤ D x"),
        ],
        overrides: &[("lDB", MlDiamond), ("B1", Ml), ("B2", Ml), ("D2", MlDiamond)],
        failures: &[(L("□x ≤ B x"), "r8", &["r_c"])],
    },
    SuiteDef {
        id: "lemma-dm",
        title: "◇-modalities of ML^◇",
        class: MlDiamond,
        laws: &[
            ("i", "x ≤ ¬¬x"),
            ("ii", "◇x ≤ ¬¬◇x"),
            ("iii", "◇¬x ≤ ¬¬◇¬x"),
            ("iv", "¬◇x ≤ ¬x"),
            ("v", "¬◇¬x ≤ ¬¬x"),
            ("vi", "¬x ≤ ¬¬◇¬x"),
            ("vii", "¬◇¬◇x ≤ ¬¬◇x"),
            ("viii", "◇¬◇¬x ≤ ◇x"),
            ("ix", "◇x ≤ ◇◇x"),
            ("x", "◇◇x ≤ ◇◇◇x"),
            ("xi", "◇◇◇x ≤ ◇◇◇◇x"),
            ("xii", "◇¬x ≤ ◇◇¬x"),
            ("xiii", "◇¬◇x ≤ ◇◇¬◇x"),
            ("xiv", "¬◇◇x ≤ ¬◇x"),
            ("xv", "¬◇◇¬x ≤ ¬◇¬x"),
            ("xvi", "◇¬◇◇x ≤ ◇¬◇x"),
            ("xvii", "¬¬◇x ≤ ¬¬◇◇x"),
            ("xviii", "◇¬◇x ≤ ¬x"),
            ("xix", "◇¬◇◇x ≤ ¬◇x"),
            ("xx", "◇◇¬◇x ≤ ◇¬x"),
            ("xxi", "¬¬x ≤ ¬◇¬◇x"),
        ],
        overrides: &[],
        failures: &[
            (Conv("i"), "chain3", &["m"]),
            (Conv("iv"), "square_top", &["l"]),
            (Conv("v"), "square_top", &["l"]),
            (Conv("vi"), "square_top", &["l"]),
            (Conv("xviii"), "square_top", &["l"]),
            (Conv("xx"), "square_top", &["l"]),
            (Conv("xxi"), "square_top", &["l"]),
            (Conv("ii"), "r8", &["r_a"]),
            (Conv("ix"), "r8", &["r_a"]),
            (Conv("xii"), "r8", &["r_b"]),
            (Conv("iii"), "r8", &["r_b"]),
            (Conv("vii"), "lattice13", &["a"]),
            (Conv("viii"), "lattice13", &["a"]),
            (Conv("xiii"), "lattice13", &["a"]),
            (Conv("xiv"), "lattice13", &["a"]),
            (Conv("xvi"), "lattice13", &["a"]),
            (Conv("xvii"), "lattice13", &["a"]),
            (Conv("xix"), "lattice13", &["a"]),
            (Conv("xv"), "lattice13", &["b"]),
            (Conv("x"), "fence3", &["{a}"]),
            (Conv("xi"), "fence4", &["{a}"]),
        ],
    },
    SuiteDef {
        id: "lemma-d",
        title: "properties of ◇",
        class: MlDiamond,
        laws: &[
            ("i", "◇(x ∧ y) ≤ ◇x ∧ ◇y"),
            ("ii", "◇x ∨ ◇y ≤ ◇(x ∨ y)"),
            ("iii", "◇¬x ∨ ◇¬y ≤ ◇¬(x ∧ y)"),
            ("iv", "◇¬(x ∧ y) = ◇(¬x ∨ ¬y)"),
            ("v", "◇x = 0 ⇔ x = 0"),
            ("vi", "◇1 = 1"),
            ("vii", "¬◇0 = 1"),
        ],
        overrides: &[],
        failures: &[
            (L("◇(x ∨ y) ≤ ◇x ∨ ◇y"), "fig_aa7", &["a", "b"]),
            (L("◇¬(x ∧ y) ≤ ◇¬x ∨ ◇¬y"), "fig_aa7", &["d", "e"]),
            (L("¬◇x ≤ ◇¬x"), "fig_aa7", &["d"]),
            (L("◇x ∧ ◇y ≤ ◇(x ∧ y)"), "square_top", &["l", "r"]),
            (L("◇x ∧ ◇¬x ≤ ◇(x ∧ ¬x)"), "square_top", &["l"]),
            (L("x ≤ ◇x"), "pentagon", &["c"]),
            (L("◇◇x ≤ ◇x"), "r8", &["r_a"]),
            (L("¬¬◇x ≤ ◇x"), "r8", &["r_a"]),
        ],
    },
    SuiteDef {
        id: "lemma-bd",
        title: "□ and ◇ together",
        class: MlBoxDiamond,
        laws: &[
            ("i", "¬¬x ≤ □◇x"),
            ("ii", "□x ≤ □◇x"),
            ("B1", "x ≤ □◇x"),
            ("B2", "◇□x ≤ x"),
            ("A", "◇x ≤ y ⇔ x ≤ □y"),
            ("iii◇", "◇□◇x = ◇x"),
            ("iii□", "□◇□x = □x"),
        ],
        overrides: &[],
        failures: &[],
    },
    SuiteDef {
        id: "lemma-nbd",
        title: "¬, □ and ◇ together",
        class: MlBoxDiamond,
        laws: &[
            ("i", "◇x ≤ ¬□¬x"),
            ("ii", "¬◇x = □¬x"),
            ("iii", "¬¬◇x = ¬□¬x"),
            ("iv", "□¬¬x = ¬◇¬x"),
            ("v", "◇¬x ≤ ¬□x"),
            ("vi", "□x ≤ ¬◇¬x"),
            ("vii", "¬◇¬x ≤ □◇x"),
            ("viii", "□¬x ≤ ¬□◇x"),
            ("ix", "□◇x ≤ ¬□¬x"),
            ("x", "◇¬□¬x = ◇◇x"),
        ],
        overrides: &[],
        failures: &[
            (L("¬□x ≤ ¬¬◇¬x"), "chain3", &["m"]),
            (L("¬□x ≤ ◇¬x"), "chain3", &["m"]),
            (L("¬◇¬x ≤ ¬¬□x"), "chain3", &["m"]),
            (L("¬◇¬x ≤ □x"), "chain3", &["m"]),
            (L("¬□¬x ≤ ◇x"), "pentagon", &["c"]),
            (L("¬¬◇x ≤ ◇x"), "pentagon", &["c"]),
        ],
    },
    SuiteDef {
        id: "lemma-bwdv",
        title: "□ preserves meets, ◇ preserves joins",
        class: MlBoxDiamond,
        laws: &[("i", "□(x ∧ y) = □x ∧ □y"), ("ii", "◇(x ∨ y) = ◇x ∨ ◇y")],
        overrides: &[],
        failures: &[(L("◇(x ∨ y) = ◇x ∨ ◇y"), "fig_aa7", &["a", "b"])],
    },
    SuiteDef {
        id: "lemma-boxeq",
        title: "equivalent forms of □□ = □",
        class: MlBoxDiamond,
        laws: &[
            ("1", "◇□x ≤ □x ⇔ □x ≤ □□x"),
            ("2", "□x ≤ □□x ⇔ □x ∨ ¬□x = 1"),
            ("3", "□x ∨ ¬□x = 1 ⇔ □□x = □x"),
        ],
        overrides: &[],
        failures: &[],
    },
    SuiteDef {
        id: "lemma-diaeq",
        title: "equivalent forms of ◇◇ = ◇",
        class: MlBoxDiamond,
        laws: &[
            ("1", "◇x ≤ □◇x ⇔ ◇◇x ≤ ◇x"),
            ("2", "◇◇x ≤ ◇x ⇔ ◇x ∨ ¬◇x = 1"),
            ("3", "◇x ∨ ¬◇x = 1 ⇔ ◇◇x = ◇x"),
        ],
        overrides: &[],
        failures: &[],
    },
    SuiteDef {
        id: "lemma-dn",
        title: "distributive □ and ◇",
        class: DistBoxDiamond,
        laws: &[
            ("i□", "□x ≤ x"),
            ("i◇", "x ≤ ◇x"),
            ("i□◇", "□x ≤ ◇x"),
            ("ii", "□(x ∨ ¬x) = □x ∨ □¬x"),
            ("iii", "◇¬(x ∧ y) = ◇¬x ∨ ◇¬y"),
            ("iv", "◇¬(x ∧ y) = ◇(¬x ∨ ¬y)"),
            ("g2□", "□□x ≤ x"),
            ("g2◇", "x ≤ ◇◇x"),
            ("g2", "□□x ≤ ◇◇x"),
            ("g3□", "□□□x ≤ x"),
            ("g3◇", "x ≤ ◇◇◇x"),
            ("g3", "□□□x ≤ ◇◇◇x"),
            ("nn", "¬¬x ≤ ◇x"),
            ("nn◇", "¬¬◇x ≤ ◇◇x"),
        ],
        overrides: &[],
        failures: &[
            (L("¬□¬x ≤ ◇x"), "r8", &["r_a"]),
            (L("¬¬◇x ≤ ◇x"), "r8", &["r_a"]),
            (L("□x ≤ x"), "pentagon", &["a"]),
        ],
    },
    SuiteDef {
        id: "lemma-dunn",
        title: "Dunn axioms",
        class: DistBoxDiamond,
        laws: &[("D1", "◇x ∧ □y ≤ ◇(x ∧ y)"), ("D2", "□(x ∨ y) ≤ □x ∨ ◇y")],
        overrides: &[],
        failures: &[],
    },
    SuiteDef {
        id: "lemma-rmc",
        title: "□ and ◇ with relative meet-complement",
        class: HeytingBoxDiamond,
        laws: &[
            ("i", "□(x → y) ≤ □x → □y"),
            ("ii", "□(x → y) ≤ ◇x → ◇y"),
            ("iii", "◇x → □y ≤ □(x → y)"),
        ],
        overrides: &[],
        failures: &[],
    },
    SuiteDef {
        id: "lemma-ik",
        title: "intuitionistic modal axioms",
        class: HeytingBoxDiamond,
        laws: &[
            ("IK1", "□(x → y) ≤ □x → □y"),
            ("IK2", "□(x → y) ≤ ◇x → ◇y"),
            ("IK3", "¬◇0 = 1"),
            ("IK4", "◇(x ∨ y) ≤ ◇x ∨ ◇y"),
            ("IK5", "◇x → □y ≤ □(x → y)"),
        ],
        overrides: &[],
        failures: &[],
    },
    SuiteDef {
        id: "lemma-ls",
        title: "laws of the S extension",
        class: S,
        laws: &[
            ("i", "◇¬□x ≤ ¬□x"),
            ("ii", "□¬□x = ¬□x"),
            ("iii", "□◇¬□x = ¬□x"),
            ("iv", "¬□¬x = □◇x"),
            ("v", "¬□◇x = □¬x"),
            ("BnB", "□x ∨ ¬□x = 1"),
            ("S", "□□x = □x"),
            ("S◇", "◇◇x = ◇x"),
        ],
        overrides: &[],
        failures: &[],
    },
    SuiteDef {
        id: "lemma-s-positive",
        title: "positive modalities of the S extension",
        class: S,
        laws: &[
            ("i", "◇□x ≤ x"),
            ("ii", "◇□x ≤ □x"),
            ("iii", "◇□x ≤ ◇□¬¬x"),
            ("iv", "x ≤ ¬¬x"),
            ("v", "□x ≤ □¬¬x"),
            ("vi", "◇□¬¬x ≤ □¬¬x"),
            ("vii", "◇□¬¬x ≤ ◇x"),
            ("viii", "□¬¬x ≤ ¬¬x"),
            ("ix", "◇x ≤ □◇x"),
            ("x", "¬¬x ≤ □◇x"),
        ],
        overrides: &[],
        failures: &[
            (Conv("i"), "square_top", &["l"]),
            (Conv("i"), "square_top", &["m"]),
            (Conv("ii"), "pentagon", &["a"]),
            (Conv("iii"), "square_top", &["m"]),
            (Conv("iv"), "square_top", &["m"]),
            (Conv("v"), "square_top", &["m"]),
            (Conv("vi"), "pentagon", &["c"]),
            (Conv("vii"), "square_top", &["l"]),
            (Conv("viii"), "square_top", &["l"]),
            (Conv("ix"), "pentagon", &["c"]),
            (Conv("x"), "square_top", &["l"]),
            (L("x ≤ □¬¬x"), "square_top", &["l"]),
            (L("◇x ≤ ¬¬x"), "square_top", &["l"]),
            (L("□¬¬x ≤ x"), "square_top", &["m"]),
            (L("◇□¬¬x ≤ x"), "square_top", &["m"]),
            (L("◇□¬¬x ≤ □x"), "square_top", &["m"]),
            (L("□x ≤ x"), "pentagon", &["a"]),
            (L("x ≤ ◇x"), "pentagon", &["c"]),
            (L("□x ≤ ◇x"), "pentagon", &["c"]),
        ],
    },
    SuiteDef {
        id: "lemma-s-negative",
        title: "negative modalities of the S extension",
        class: S,
        laws: &[
            ("i", "◇□¬x ≤ □¬x"),
            ("ii", "◇□¬x ≤ ◇¬x"),
            ("iii", "□¬x ≤ ¬x"),
            ("iv", "¬x ≤ □◇¬x"),
            ("v", "◇¬x ≤ □◇¬x"),
            ("vi", "◇¬x ≤ ◇¬□x"),
            ("vii", "□◇¬x ≤ ¬□x"),
            ("viii", "◇¬□x ≤ ¬□x"),
        ],
        overrides: &[],
        failures: &[
            (Conv("i"), "pentagon", &["b"]),
            (Conv("ii"), "square_top", &["l"]),
            (Conv("iii"), "square_top", &["l"]),
            (Conv("iv"), "square_top", &["l"]),
            (Conv("v"), "pentagon", &["b"]),
            (Conv("vi"), "square_top", &["m"]),
            (Conv("vii"), "square_top", &["m"]),
            (Conv("viii"), "pentagon", &["b"]),
            (L("◇¬x ≤ □¬x"), "square_top", &["l"]),
            (L("¬x ≤ ◇¬x"), "pentagon", &["b"]),
            (L("□◇¬x ≤ ◇¬□x"), "pentagon", &["b"]),
            (L("◇¬□x ≤ □◇¬x"), "square_top", &["m"]),
        ],
    },
    SuiteDef {
        id: "lemma-ds",
        title: "distributive S extension",
        class: DistS,
        laws: &[
            ("i", "◇¬□x = ¬□x"),
            ("ii", "¬¬◇x ≤ ◇x"),
            ("iii", "¬□¬x ≤ ◇x"),
            ("iv", "◇x = ¬□¬x"),
            ("B", "B x = □x"),
        ],
        overrides: &[],
        failures: &[(L("□(x ∨ y) = □x ∨ □y"), "square_bot", &["a", "b"])],
    },
    SuiteDef {
        id: "lemma-dunnh",
        title: "Dunn-style laws in the distributive S extension",
        class: DistS,
        laws: &[
            ("i", "□(x ∧ ◇y) = □x ∧ ◇y"),
            ("ii", "◇(x ∨ □y) = ◇x ∨ □y"),
            ("iii", "□(x ∨ □y) = □x ∨ □y"),
            ("iv", "◇(x ∧ ◇y) = ◇x ∧ ◇y"),
        ],
        overrides: &[],
        failures: &[],
    },
];

fn parse_static(text: &str) -> (Law, Vec<String>) {
    let p = parse_law(text).unwrap_or_else(|e| panic!("bad built-in law {text:?}: {e}"));
    (p.law, p.vars)
}

fn build(def: &SuiteDef) -> Suite {
    let laws: Vec<SuiteLaw> = def
        .laws
        .iter()
        .map(|&(label, text)| {
            let (law, vars) = parse_static(text);
            let requires = def
                .overrides
                .iter()
                .find(|(l, _)| *l == label)
                .map_or(def.class, |&(_, c)| c);
            SuiteLaw {
                label: label.to_string(),
                text,
                requires,
                law,
                vars,
            }
        })
        .collect();
    let failures = def
        .failures
        .iter()
        .map(|&(target, entry, at)| {
            let (target, law, vars) = match target {
                Conv(label) => {
                    let base = laws
                        .iter()
                        .find(|l| l.label == label)
                        .unwrap_or_else(|| panic!("{}: no law {label}", def.id));
                    let id = base.law.as_identity().expect("converse of an identity");
                    (
                        FailureTarget::Converse(label.to_string()),
                        Law::Identity(id.converse()),
                        base.vars.clone(),
                    )
                }
                L(text) => {
                    let (law, vars) = parse_static(text);
                    (FailureTarget::Law(text.to_string()), law, vars)
                }
            };
            KnownFailure {
                target,
                law,
                vars,
                entry,
                at: at.to_vec(),
            }
        })
        .collect();
    Suite {
        id: def.id,
        title: def.title,
        laws,
        failures,
    }
}

/// Every built-in suite, in a fixed order.
pub fn preset_suites() -> &'static [Suite] {
    static SUITES: OnceLock<Vec<Suite>> = OnceLock::new();
    SUITES.get_or_init(|| DEFS.iter().map(build).collect())
}

pub fn suite_ids() -> Vec<&'static str> {
    preset_suites().iter().map(|s| s.id).collect()
}

pub fn get_suite(id: &str) -> Result<&'static Suite> {
    preset_suites()
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownSuite(id.to_string()))
}

/// Resolves a suite id, with `all` meaning every suite.
pub fn resolve_suites(id: &str) -> Result<Vec<&'static Suite>> {
    if id == "all" {
        Ok(preset_suites().iter().collect())
    } else {
        get_suite(id).map(|s| vec![s])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail")]
pub enum LawStatus {
    Pass,
    Fail(Vec<String>),
    Undefined(Vec<String>),
    Skipped(String),
}

impl LawStatus {
    pub fn tag(&self) -> &'static str {
        match self {
            LawStatus::Pass => "PASS",
            LawStatus::Fail(_) => "FAIL",
            LawStatus::Undefined(_) => "UNDEFINED",
            LawStatus::Skipped(_) => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub suite: &'static str,
    pub label: String,
    pub law: String,
    pub vars: Vec<String>,
    #[serde(flatten)]
    pub status: LawStatus,
}

/// Why a law cannot be run on this algebra, if it cannot.
pub fn skip_reason(law: &Law, requires: Class, p: &AlgebraProfile) -> Option<String> {
    if !p.in_class(requires) {
        return Some(format!("not in {}", requires.label()));
    }
    let f = &p.flags;
    if law.uses(Unary::Dual) && !f.dual_total {
        return Some("D is not total".into());
    }
    if law.uses(Unary::Bool) && !f.b_total {
        return Some("B is not total".into());
    }
    if law.uses(Unary::Neg) && !f.ml {
        return Some("¬ is not total".into());
    }
    if law.uses_arrow() && !f.heyting {
        return Some("→ is not total".into());
    }
    None
}

fn names(p: &AlgebraProfile, asg: &[usize]) -> Vec<String> {
    asg.iter().map(|&a| p.lattice.name(a).to_string()).collect()
}

pub fn run_law(suite: &'static str, law: &SuiteLaw, p: &AlgebraProfile) -> LawReport {
    let status = match skip_reason(&law.law, law.requires, p) {
        Some(reason) => LawStatus::Skipped(reason),
        None => match check_law(p, &law.law) {
            Verdict::Holds => LawStatus::Pass,
            Verdict::Fails(a) => LawStatus::Fail(names(p, &a)),
            Verdict::UndefinedAt(a) => LawStatus::Undefined(names(p, &a)),
        },
    };
    LawReport {
        suite,
        label: law.label.clone(),
        law: law.display(),
        vars: law.vars.clone(),
        status,
    }
}

pub fn run_suite(suite: &'static Suite, p: &AlgebraProfile) -> Vec<LawReport> {
    suite.laws.iter().map(|l| run_law(suite.id, l, p)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureCheck {
    pub suite: &'static str,
    pub law: String,
    pub entry: &'static str,
    pub at: Vec<&'static str>,
    pub confirmed: bool,
    pub detail: String,
}

/// Evaluates a documented failure at its named witness.
pub fn check_failure(suite: &'static Suite, f: &KnownFailure, p: &AlgebraProfile) -> FailureCheck {
    let mut check = FailureCheck {
        suite: suite.id,
        law: f.display(),
        entry: f.entry,
        at: f.at.clone(),
        confirmed: false,
        detail: String::new(),
    };
    let asg: Result<Vec<usize>> = f.at.iter().map(|n| p.lattice.index_of(n)).collect();
    match asg {
        Err(e) => check.detail = e.to_string(),
        Ok(asg) if asg.len() != f.law.arity() => {
            check.detail = format!("{} values for {} variables", asg.len(), f.law.arity());
        }
        Ok(asg) => match law_at(p, &f.law, &asg) {
            Some(false) => {
                check.confirmed = true;
                check.detail = "fails as stated".into();
            }
            Some(true) => check.detail = "holds at the witness".into(),
            None => check.detail = "undefined at the witness".into(),
        },
    }
    check
}

/// Checks every documented failure of a suite against the catalog.
pub fn check_known_failures(suite: &'static Suite) -> Result<Vec<FailureCheck>> {
    let mut out = Vec::new();
    for f in &suite.failures {
        let entry = catalog::get(f.entry)?;
        let p = entry
            .profile()
            .ok_or_else(|| Error::Precondition(format!("{} has no lattice", f.entry)))?;
        out.push(check_failure(suite, f, &p));
    }
    Ok(out)
}
