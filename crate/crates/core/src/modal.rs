//! Necessity `□` and possibility `◇` on meet-complemented lattices, the
//! class predicates built on them, and a few derived constructions.
//!
//! `□a` is the greatest `b` with `a ∨ ¬b = 1` and `◇a` the least `b` with
//! `¬a ∨ b = 1`. Both need a total `¬`; asking for them on a lattice where
//! `¬` is partial is an error, not an undefined value.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ops::{self, OpTable};
use crate::order::{Elem, FiniteLattice};

pub fn necessity(l: &FiniteLattice, neg: &OpTable, a: Elem) -> Result<Option<Elem>> {
    if !neg.is_total() {
        return Err(Error::NegNotTotal);
    }
    Ok(l.greatest_of(
        l.elements()
            .filter(|&b| neg.get(b).is_some_and(|nb| l.join(a, nb) == l.top())),
    ))
}

pub fn possibility(l: &FiniteLattice, neg: &OpTable, a: Elem) -> Result<Option<Elem>> {
    let Some(na) = neg.get(a).filter(|_| neg.is_total()) else {
        return Err(Error::NegNotTotal);
    };
    Ok(l.least_of(l.elements().filter(|&b| l.join(na, b) == l.top())))
}

pub fn necessity_table(l: &FiniteLattice, neg: &OpTable) -> Result<OpTable> {
    let mut out = Vec::with_capacity(l.len());
    for a in l.elements() {
        out.push(necessity(l, neg, a)?);
    }
    Ok(OpTable::new(out))
}

pub fn possibility_table(l: &FiniteLattice, neg: &OpTable) -> Result<OpTable> {
    let mut out = Vec::with_capacity(l.len());
    for a in l.elements() {
        out.push(possibility(l, neg, a)?);
    }
    Ok(OpTable::new(out))
}

/// `¬Da`. Agrees with `□a` wherever `D` is total.
pub fn box_via_dual(dual: &OpTable, neg: &OpTable, a: Elem) -> Option<Elem> {
    neg.apply(dual.get(a))
}

/// `D¬a`. Agrees with `◇a` wherever `D` is total.
pub fn diamond_via_dual(dual: &OpTable, neg: &OpTable, a: Elem) -> Option<Elem> {
    dual.apply(neg.get(a))
}

/// Class membership flags, all recomputable from the operator tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub ml: bool,
    pub ml_box: bool,
    pub ml_diamond: bool,
    pub ml_box_diamond: bool,
    pub distributive: bool,
    pub modular: bool,
    /// Least `n ≥ 1` with `□ⁿ⁺¹ = □ⁿ`; `None` when `□` is partial.
    pub s_index: Option<usize>,
    /// Distributive, both operators total, and `□□ = □`.
    pub ds: bool,
    pub heyting: bool,
    pub dual_total: bool,
    pub b_total: bool,
}

/// Named classes used as preconditions for law suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Class {
    Lattice,
    Ml,
    MlBox,
    MlDiamond,
    MlBoxDiamond,
    /// Distributive with `□` and `◇`.
    DistBoxDiamond,
    /// `□` and `◇` with `□ ≤ □□`.
    S,
    DistS,
    /// Heyting algebra (total `→`) with `□` and `◇`.
    HeytingBoxDiamond,
    /// `□`, `◇` and `D` all total.
    DualBoxDiamond,
}

impl Class {
    pub fn label(self) -> &'static str {
        match self {
            Class::Lattice => "lattice",
            Class::Ml => "ML",
            Class::MlBox => "ML^□",
            Class::MlDiamond => "ML^◇",
            Class::MlBoxDiamond => "ML^□◇",
            Class::DistBoxDiamond => "ML_d^□◇",
            Class::S => "ML_S^□◇",
            Class::DistS => "ML_dS^□◇",
            Class::HeytingBoxDiamond => "Heyting^□◇",
            Class::DualBoxDiamond => "ML^□◇ with D",
        }
    }
}

/// A lattice together with every operator this crate knows how to compute.
#[derive(Clone, Debug)]
pub struct AlgebraProfile {
    pub name: String,
    pub lattice: FiniteLattice,
    pub neg: OpTable,
    pub nec: OpTable,
    pub pos: OpTable,
    pub dual: OpTable,
    /// Greatest Boolean element below.
    pub bool_below: OpTable,
    arrow: Vec<Option<Elem>>,
    pub flags: ClassFlags,
}

impl AlgebraProfile {
    pub fn new(name: impl Into<String>, lattice: FiniteLattice) -> Self {
        let n = lattice.len();
        let neg = ops::neg_table(&lattice);
        let (nec, pos, bool_below) = if neg.is_total() {
            (
                necessity_table(&lattice, &neg).expect("¬ is total"),
                possibility_table(&lattice, &neg).expect("¬ is total"),
                ops::boolean_below_table(&lattice, &neg),
            )
        } else {
            (OpTable::undefined(n), OpTable::undefined(n), OpTable::undefined(n))
        };
        let dual = ops::dual_table(&lattice);
        let arrow = ops::arrow_table(&lattice);
        let mut profile = AlgebraProfile {
            name: name.into(),
            lattice,
            neg,
            nec,
            pos,
            dual,
            bool_below,
            arrow,
            flags: ClassFlags {
                ml: false,
                ml_box: false,
                ml_diamond: false,
                ml_box_diamond: false,
                distributive: false,
                modular: false,
                s_index: None,
                ds: false,
                heyting: false,
                dual_total: false,
                b_total: false,
            },
        };
        profile.flags = profile.compute_flags();
        profile
    }

    fn compute_flags(&self) -> ClassFlags {
        let ml = self.neg.is_total();
        let ml_box = ml && self.nec.is_total();
        let ml_diamond = ml && self.pos.is_total();
        let distributive = self.lattice.is_distributive();
        let s_index = if ml_box { self.s_index() } else { None };
        ClassFlags {
            ml,
            ml_box,
            ml_diamond,
            ml_box_diamond: ml_box && ml_diamond,
            distributive,
            modular: self.lattice.is_modular(),
            s_index,
            ds: distributive && ml_box && ml_diamond && s_index == Some(1),
            heyting: self.arrow.iter().all(Option::is_some),
            dual_total: self.dual.is_total(),
            b_total: ml && self.bool_below.is_total(),
        }
    }

    fn s_index(&self) -> Option<usize> {
        (1..=self.lattice.len() + 1).find(|&n| {
            self.lattice
                .elements()
                .all(|a| self.nec_pow(n + 1, a) == self.nec_pow(n, a))
        })
    }

    /// `□ⁿa`, undefined if any step is.
    pub fn nec_pow(&self, n: usize, a: Elem) -> Option<Elem> {
        (0..n).try_fold(a, |x, _| self.nec.get(x))
    }

    pub fn arrow(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.arrow[a * self.lattice.len() + b]
    }

    pub fn in_class(&self, class: Class) -> bool {
        let f = &self.flags;
        match class {
            Class::Lattice => true,
            Class::Ml => f.ml,
            Class::MlBox => f.ml_box,
            Class::MlDiamond => f.ml_diamond,
            Class::MlBoxDiamond => f.ml_box_diamond,
            Class::DistBoxDiamond => f.ml_box_diamond && f.distributive,
            Class::S => f.ml_box_diamond && f.s_index == Some(1),
            Class::DistS => f.ds,
            Class::HeytingBoxDiamond => f.ml_box_diamond && f.heyting,
            Class::DualBoxDiamond => f.ml_box_diamond && f.dual_total,
        }
    }

    /// `Some(a)` for the least `a` with `□ⁿ⁺¹a ≠ □ⁿa`, `None` when the schema holds.
    pub fn s_witness(&self, n: usize) -> Result<Option<Elem>> {
        if !self.nec.is_total() {
            return Err(Error::BoxNotTotal);
        }
        Ok(self
            .lattice
            .elements()
            .find(|&a| self.nec_pow(n + 1, a) != self.nec_pow(n, a)))
    }

    pub fn satisfies_s(&self, n: usize) -> Result<bool> {
        Ok(self.s_witness(n)?.is_none())
    }

    /// Meet of the chain `a, □a, □²a, …` taken until a value repeats.
    pub fn b_via_box_iterates(&self, a: Elem) -> Result<Elem> {
        if !self.nec.is_total() {
            return Err(Error::BoxNotTotal);
        }
        let l = &self.lattice;
        let mut seen = vec![a];
        let mut acc = a;
        let mut x = a;
        loop {
            x = self.nec.get(x).expect("□ is total");
            if seen.contains(&x) {
                return Ok(acc);
            }
            seen.push(x);
            acc = l.meet(acc, x);
        }
    }
}

/// On a finite subdirectly irreducible Heyting algebra `□` is `1 ↦ 1`, everything else `↦ 0`.
///
/// Subdirect irreducibility is detected as "exactly one coatom".
pub fn si_heyting_box(l: &FiniteLattice) -> Result<OpTable> {
    if ops::arrow_table(l).iter().any(Option::is_none) {
        return Err(Error::NotSIHeyting("relative meet-complement is not total"));
    }
    if l.coatoms().len() != 1 {
        return Err(Error::NotSIHeyting("top is not covering exactly one coatom"));
    }
    Ok(OpTable::tabulate(l, |a| {
        Some(if a == l.top() { l.top() } else { l.bottom() })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{chain, direct_product, ordinal_sum};

    fn pentagon() -> FiniteLattice {
        FiniteLattice::build(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
        )
        .unwrap()
    }

    fn square() -> FiniteLattice {
        direct_product(&chain(2).unwrap(), &chain(2).unwrap()).unwrap()
    }

    #[test]
    fn necessity_needs_total_negation() {
        let m3 = FiniteLattice::build(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .unwrap();
        let neg = ops::neg_table(&m3);
        assert_eq!(necessity(&m3, &neg, 0), Err(Error::NegNotTotal));
        assert_eq!(possibility(&m3, &neg, 4), Err(Error::NegNotTotal));
        let p = AlgebraProfile::new("m3", m3);
        assert!(!p.flags.ml);
        assert!(!p.in_class(Class::MlBox));
    }

    #[test]
    fn pentagon_operators() {
        let p = AlgebraProfile::new("pentagon", pentagon());
        let (a, b, c) = (1, 2, 3);
        assert_eq!(p.nec.get(a), Some(c));
        assert_eq!(p.nec.get(b), Some(b));
        assert_eq!(p.nec.get(c), Some(c));
        assert_eq!(p.pos.get(c), Some(a));
        assert_eq!(p.pos.get(0), Some(0));
        assert_eq!(p.pos.get(4), Some(4));
        assert!(p.satisfies_s(1).unwrap());
        assert_eq!(p.b_via_box_iterates(a).unwrap(), a);
        assert_eq!(p.bool_below.get(a), Some(a));
    }

    #[test]
    fn square_bot_dual_differs_from_neg_box() {
        let l = ordinal_sum(&chain(1).unwrap(), &square()).unwrap();
        let p = AlgebraProfile::new("square_bot", l);
        for co in p.lattice.coatoms() {
            let d = p.dual.get(co).unwrap();
            assert_ne!(d, co);
            assert_eq!(p.neg.apply(p.nec.get(co)), Some(p.lattice.top()));
            assert_ne!(Some(d), p.neg.apply(p.nec.get(co)));
        }
    }

    #[test]
    fn box_via_dual_matches_on_distributive() {
        let l = ordinal_sum(&square(), &chain(1).unwrap()).unwrap();
        let p = AlgebraProfile::new("square_top", l);
        assert!(p.flags.dual_total);
        for a in p.lattice.elements() {
            assert_eq!(box_via_dual(&p.dual, &p.neg, a), p.nec.get(a));
            assert_eq!(diamond_via_dual(&p.dual, &p.neg, a), p.pos.get(a));
        }
        assert_eq!(box_via_dual(&p.dual, &p.neg, p.lattice.top()), Some(p.lattice.top()));
    }

    #[test]
    fn si_heyting() {
        let c3 = chain(3).unwrap();
        let t = si_heyting_box(&c3).unwrap();
        assert_eq!(t.get(1), Some(0));
        assert_eq!(t.get(2), Some(2));
        let p = AlgebraProfile::new("chain3", c3);
        assert_eq!(&t, &p.nec);
        assert!(matches!(si_heyting_box(&square()), Err(Error::NotSIHeyting(_))));
        assert!(matches!(si_heyting_box(&pentagon()), Err(Error::NotSIHeyting(_))));
    }

    #[test]
    fn s_witness_requires_box() {
        let m3 = FiniteLattice::build(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .unwrap();
        let p = AlgebraProfile::new("m3", m3);
        assert_eq!(p.s_witness(1), Err(Error::BoxNotTotal));
        assert_eq!(p.b_via_box_iterates(0), Err(Error::BoxNotTotal));
    }
}
