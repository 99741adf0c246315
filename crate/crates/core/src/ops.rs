//! Non-modal operators: meet-complement `¬`, dual negation `D`, relative
//! meet-complement `→`, Boolean elements and the greatest Boolean element
//! below `a`.
//!
//! Every operator here is partial. An undefined value is `None`, never an
//! error, and it propagates through compositions.

use serde::Serialize;

use crate::order::{Elem, FiniteLattice};

/// A partial unary operator on a lattice, one slot per element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpTable {
    values: Vec<Option<Elem>>,
    total: bool,
}

impl OpTable {
    pub fn new(values: Vec<Option<Elem>>) -> Self {
        let total = values.iter().all(Option::is_some);
        OpTable { values, total }
    }

    pub fn tabulate(lattice: &FiniteLattice, f: impl Fn(Elem) -> Option<Elem>) -> Self {
        Self::new(lattice.elements().map(f).collect())
    }

    /// All entries undefined.
    pub fn undefined(n: usize) -> Self {
        Self::new(vec![None; n])
    }

    #[inline]
    pub fn get(&self, a: Elem) -> Option<Elem> {
        self.values[a]
    }

    /// Applies the table to an already partial value.
    #[inline]
    pub fn apply(&self, a: Option<Elem>) -> Option<Elem> {
        a.and_then(|a| self.values[a])
    }

    pub fn is_total(&self) -> bool {
        self.total
    }

    pub fn values(&self) -> &[Option<Elem>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First element where the table is undefined.
    pub fn first_undefined(&self) -> Option<Elem> {
        self.values.iter().position(Option::is_none)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &OpTable) -> OpTable {
        OpTable::new(inner.values.iter().map(|&v| self.apply(v)).collect())
    }
}

/// `¬a`: the greatest `b` with `a ∧ b = 0`.
pub fn meet_complement(l: &FiniteLattice, a: Elem) -> Option<Elem> {
    l.greatest_of(l.elements().filter(|&b| l.meet(a, b) == l.bottom()))
}

/// `Da`: the least `b` with `a ∨ b = 1`.
pub fn dual_negation(l: &FiniteLattice, a: Elem) -> Option<Elem> {
    l.least_of(l.elements().filter(|&b| l.join(a, b) == l.top()))
}

/// `a → b`: the greatest `c` with `a ∧ c ≤ b`.
pub fn rel_meet_complement(l: &FiniteLattice, a: Elem, b: Elem) -> Option<Elem> {
    l.greatest_of(l.elements().filter(|&c| l.leq(l.meet(a, c), b)))
}

pub fn neg_table(l: &FiniteLattice) -> OpTable {
    OpTable::tabulate(l, |a| meet_complement(l, a))
}

pub fn dual_table(l: &FiniteLattice) -> OpTable {
    OpTable::tabulate(l, |a| dual_negation(l, a))
}

/// `a → b` for all pairs, row-major by `a`.
pub fn arrow_table(l: &FiniteLattice) -> Vec<Option<Elem>> {
    let mut out = Vec::with_capacity(l.len() * l.len());
    for a in l.elements() {
        for b in l.elements() {
            out.push(rel_meet_complement(l, a, b));
        }
    }
    out
}

/// `a ∨ ¬a = 1`. An undefined `¬a` makes `a` non-Boolean.
pub fn is_boolean(l: &FiniteLattice, neg: &OpTable, a: Elem) -> bool {
    neg.get(a).is_some_and(|na| l.join(a, na) == l.top())
}

/// Some `b` with `a ∧ b = 0` and `a ∨ b = 1`.
pub fn is_complemented(l: &FiniteLattice, a: Elem) -> bool {
    l.elements()
        .any(|b| l.meet(a, b) == l.bottom() && l.join(a, b) == l.top())
}

/// `Ba`: the greatest Boolean element below `a`.
pub fn greatest_boolean_below(l: &FiniteLattice, neg: &OpTable, a: Elem) -> Option<Elem> {
    l.greatest_of(l.elements().filter(|&b| l.leq(b, a) && is_boolean(l, neg, b)))
}

pub fn boolean_below_table(l: &FiniteLattice, neg: &OpTable) -> OpTable {
    OpTable::tabulate(l, |a| greatest_boolean_below(l, neg, a))
}

/// `¬B¬a`, undefined wherever any step is.
pub fn dual_b(neg: &OpTable, b: &OpTable, a: Elem) -> Option<Elem> {
    neg.apply(b.apply(neg.get(a)))
}
