//! Finite posets and lattices.
//!
//! Elements are dense indices `0..n` with display names. The order is stored
//! as a full `n × n` boolean matrix and lattices additionally carry total
//! meet and join tables, so every order query in the exhaustive checks is a
//! single lookup.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Index of an element inside a [`FinitePoset`] or [`FiniteLattice`].
pub type Elem = usize;

pub const DEFAULT_MAX_ELEMENTS: usize = 64;

/// Element cap for constructed structures. `MLL_MAX_ELEMENTS` overrides the default of 64.
pub fn max_elements() -> usize {
    std::env::var("MLL_MAX_ELEMENTS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(DEFAULT_MAX_ELEMENTS)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Builds the poset whose order is the reflexive-transitive closure of `covers`.
    pub fn build<N, A, B>(names: &[N], covers: &[(A, B)]) -> Result<Self>
    where
        N: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        check_names(&names)?;
        let lookup = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::UnknownName(s.to_string()))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::from_cover_indices(names, &pairs)
    }

    pub fn from_cover_indices(names: Vec<String>, covers: &[(Elem, Elem)]) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::UnknownName(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(Error::Cycle(names[a].clone(), names[b].clone()));
            }
            leq[a * n + b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::Cycle(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(FinitePoset { names, leq })
    }

    /// Validates an explicit order relation given row-major as `leq[i * n + j]`.
    pub fn from_relation(names: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        if leq.len() != n * n {
            return Err(Error::NotAPartialOrder(format!(
                "relation has {} entries, expected {}",
                leq.len(),
                n * n
            )));
        }
        let at = |i: usize, j: usize| leq[i * n + j];
        for i in 0..n {
            if !at(i, i) {
                return Err(Error::NotAPartialOrder(format!("`{}` is not reflexive", names[i])));
            }
            for j in 0..n {
                if i != j && at(i, j) && at(j, i) {
                    return Err(Error::Cycle(names[i].clone(), names[j].clone()));
                }
                for k in 0..n {
                    if at(i, j) && at(j, k) && !at(i, k) {
                        return Err(Error::NotAPartialOrder(format!(
                            "not transitive at `{}` ≤ `{}` ≤ `{}`",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }
        Ok(FinitePoset { names, leq })
    }

    /// An order known to be valid by construction; no cap and no checks.
    pub(crate) fn from_trusted_relation(names: Vec<String>, leq: Vec<bool>) -> Self {
        debug_assert_eq!(leq.len(), names.len() * names.len());
        FinitePoset { names, leq }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Result<Elem> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// The cover relation (transitive reduction), sorted by `(lower, upper)`.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.lt(a, b) && !self.elements().any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn maximals(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&a| !self.elements().any(|b| self.lt(a, b)))
            .collect()
    }

    pub fn minimals(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&a| !self.elements().any(|b| self.lt(b, a)))
            .collect()
    }

    /// Length of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut order: Vec<Elem> = self.elements().collect();
        order.sort_by_key(|&a| self.elements().filter(|&b| self.lt(b, a)).count());
        let mut h = vec![0; self.len()];
        for &a in &order {
            h[a] = self
                .elements()
                .filter(|&b| self.lt(b, a))
                .map(|b| h[b] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// The element of `subset` above every other member, if any.
    pub fn greatest_of<I: IntoIterator<Item = Elem>>(&self, subset: I) -> Option<Elem> {
        // Any greatest element absorbs the running candidate, so one scan plus a check suffices.
        let items: Vec<Elem> = subset.into_iter().collect();
        let mut cand = *items.first()?;
        for &x in &items {
            if self.leq(cand, x) {
                cand = x;
            }
        }
        items.iter().all(|&x| self.leq(x, cand)).then_some(cand)
    }

    /// The element of `subset` below every other member, if any.
    pub fn least_of<I: IntoIterator<Item = Elem>>(&self, subset: I) -> Option<Elem> {
        let items: Vec<Elem> = subset.into_iter().collect();
        let mut cand = *items.first()?;
        for &x in &items {
            if self.leq(x, cand) {
                cand = x;
            }
        }
        items.iter().all(|&x| self.leq(cand, x)).then_some(cand)
    }

    /// Induced subposet on `keep`, in the given order.
    pub fn subposet(&self, keep: &[Elem]) -> FinitePoset {
        let names = keep.iter().map(|&a| self.names[a].clone()).collect();
        let k = keep.len();
        let mut leq = vec![false; k * k];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                leq[i * k + j] = self.leq(a, b);
            }
        }
        FinitePoset { names, leq }
    }

    pub fn dual(&self) -> FinitePoset {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = self.leq(b, a);
            }
        }
        FinitePoset {
            names: self.names.clone(),
            leq,
        }
    }
}

fn check_names(names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    let cap = max_elements();
    if names.len() > cap {
        return Err(Error::TooLarge { size: names.len(), cap });
    }
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

/// A finite lattice: a poset with total meet and join tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: FinitePoset,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl FiniteLattice {
    /// Fails with the first pair (in index order) lacking a meet or a join.
    pub fn from_poset(poset: FinitePoset) -> Result<Self> {
        let n = poset.len();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower = poset.elements().filter(|&c| poset.leq(c, a) && poset.leq(c, b));
                let m = poset
                    .greatest_of(lower)
                    .ok_or_else(|| Error::NotALattice(poset.name(a).into(), poset.name(b).into(), "meet"))?;
                let upper = poset.elements().filter(|&c| poset.leq(a, c) && poset.leq(b, c));
                let j = poset
                    .least_of(upper)
                    .ok_or_else(|| Error::NotALattice(poset.name(a).into(), poset.name(b).into(), "join"))?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let bottom = poset.least_of(poset.elements()).expect("finite lattice has a bottom");
        let top = poset.greatest_of(poset.elements()).expect("finite lattice has a top");
        Ok(FiniteLattice {
            poset,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// A lattice whose tables are known to be correct by construction.
    pub(crate) fn from_trusted_parts(
        poset: FinitePoset,
        meet: Vec<Elem>,
        join: Vec<Elem>,
        bottom: Elem,
        top: Elem,
    ) -> Self {
        FiniteLattice {
            poset,
            meet,
            join,
            bottom,
            top,
        }
    }

    pub fn build<N, A, B>(names: &[N], covers: &[(A, B)]) -> Result<Self>
    where
        N: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        Self::from_poset(FinitePoset::build(names, covers)?)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn into_poset(self) -> FinitePoset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.poset.elements()
    }

    pub fn name(&self, a: Elem) -> &str {
        self.poset.name(a)
    }

    pub fn names(&self) -> &[String] {
        self.poset.names()
    }

    pub fn index_of(&self, name: &str) -> Result<Elem> {
        self.poset.index_of(name)
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn greatest_of<I: IntoIterator<Item = Elem>>(&self, subset: I) -> Option<Elem> {
        self.poset.greatest_of(subset)
    }

    pub fn least_of<I: IntoIterator<Item = Elem>>(&self, subset: I) -> Option<Elem> {
        self.poset.least_of(subset)
    }

    pub fn atoms(&self) -> Vec<Elem> {
        let covers = self.poset.covers();
        covers
            .iter()
            .filter(|&&(a, _)| a == self.bottom)
            .map(|&(_, b)| b)
            .collect()
    }

    pub fn coatoms(&self) -> Vec<Elem> {
        let covers = self.poset.covers();
        covers
            .iter()
            .filter(|&&(_, b)| b == self.top)
            .map(|&(a, _)| a)
            .collect()
    }

    /// First triple (in index order) with `a∧(b∨c) ≠ (a∧b)∨(a∧c)`.
    pub fn distributivity_witness(&self) -> Option<[Elem; 3]> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// First triple with `a ≤ c` but `a∨(b∧c) ≠ (a∨b)∧c`.
    pub fn modularity_witness(&self) -> Option<[Elem; 3]> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if self.leq(a, c) && self.join(a, self.meet(b, c)) != self.meet(self.join(a, b), c) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn is_modular(&self) -> bool {
        self.modularity_witness().is_none()
    }

    pub fn dual(&self) -> FiniteLattice {
        FiniteLattice::from_poset(self.poset.dual()).expect("dual of a lattice is a lattice")
    }
}

fn merged_names(left: &FinitePoset, right: &FinitePoset) -> Vec<String> {
    let clash = left.names().iter().any(|n| right.names().contains(n));
    let tag = |names: &[String], suffix: &str| -> Vec<String> {
        names
            .iter()
            .map(|n| if clash { format!("{n}{suffix}") } else { n.clone() })
            .collect()
    };
    let mut out = tag(left.names(), "_1");
    out.extend(tag(right.names(), "_2"));
    out
}

/// Side-by-side union with no comparabilities across the two parts.
pub fn disjoint_union_poset(p: &FinitePoset, q: &FinitePoset) -> Result<FinitePoset> {
    stacked(p, q, false)
}

/// `p ⊕ q`: every element of `p` strictly below every element of `q`, nothing identified.
pub fn ordinal_sum_poset(p: &FinitePoset, q: &FinitePoset) -> Result<FinitePoset> {
    stacked(p, q, true)
}

fn stacked(p: &FinitePoset, q: &FinitePoset, below: bool) -> Result<FinitePoset> {
    let names = merged_names(p, q);
    let (np, n) = (p.len(), names.len());
    let mut leq = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            leq[a * n + b] = match (a < np, b < np) {
                (true, true) => p.leq(a, b),
                (false, false) => q.leq(a - np, b - np),
                (true, false) => below,
                (false, true) => false,
            };
        }
    }
    FinitePoset::from_relation(names, leq)
}

pub fn ordinal_sum(a: &FiniteLattice, b: &FiniteLattice) -> Result<FiniteLattice> {
    FiniteLattice::from_poset(ordinal_sum_poset(a.poset(), b.poset())?)
}

/// Componentwise order on pairs; element `(x, y)` has index `x * |b| + y`.
pub fn direct_product(a: &FiniteLattice, b: &FiniteLattice) -> Result<FiniteLattice> {
    let (na, nb) = (a.len(), b.len());
    let n = na * nb;
    let cap = max_elements();
    if n > cap {
        return Err(Error::TooLarge { size: n, cap });
    }
    let names = (0..n)
        .map(|i| format!("({},{})", a.name(i / nb), b.name(i % nb)))
        .collect();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            leq[i * n + j] = a.leq(i / nb, j / nb) && b.leq(i % nb, j % nb);
        }
    }
    FiniteLattice::from_poset(FinitePoset::from_relation(names, leq)?)
}

pub fn dual_poset(p: &FinitePoset) -> FinitePoset {
    p.dual()
}

/// The `n`-element chain `0 < 1 < … < n-1`, named by position.
pub fn chain(n: usize) -> Result<FiniteLattice> {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<(Elem, Elem)> = (1..n).map(|i| (i - 1, i)).collect();
    FiniteLattice::from_poset(FinitePoset::from_cover_indices(names, &covers)?)
}
