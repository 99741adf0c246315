//! Upset algebras of finite posets, fence posets, zigzag distance and S-posets.
//!
//! Subsets of a poset with at most 64 points are `u64` bitsets, bit `i` for
//! point `i`. On upsets the operators are the set formulas
//!
//! ```text
//! ¬A = (↓A)ᶜ    ◇A = ↑↓A    □A = (↓↑Aᶜ)ᶜ    DA = ↑(Aᶜ)
//! ```

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modal::AlgebraProfile;
use crate::ops::OpTable;
use crate::order::{Elem, FiniteLattice, FinitePoset};

pub type Bits = u64;

/// Default bound on the number of upsets. `MLL_MAX_UPSETS` overrides it.
pub const DEFAULT_MAX_UPSETS: usize = 1 << 12;

pub fn max_upsets() -> usize {
    std::env::var("MLL_MAX_UPSETS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(DEFAULT_MAX_UPSETS)
}

pub fn full_set(p: &FinitePoset) -> Bits {
    if p.len() >= 64 {
        !0
    } else {
        (1 << p.len()) - 1
    }
}

pub fn bits_of(points: &[Elem]) -> Bits {
    points.iter().fold(0, |acc, &i| acc | 1 << i)
}

pub fn points_of(bits: Bits) -> Vec<Elem> {
    (0..64).filter(|&i| bits >> i & 1 == 1).collect()
}

/// `{a,b}` style name, `{}` for the empty set.
pub fn set_name(p: &FinitePoset, bits: Bits) -> String {
    let names: Vec<&str> = points_of(bits).into_iter().map(|i| p.name(i)).collect();
    format!("{{{}}}", names.join(","))
}

/// `up[i]`: points above `i`; `down[i]`: points below `i` (both inclusive).
fn cones(p: &FinitePoset) -> (Vec<Bits>, Vec<Bits>) {
    let up = p
        .elements()
        .map(|i| bits_of(&p.elements().filter(|&j| p.leq(i, j)).collect::<Vec<_>>()))
        .collect();
    let down = p
        .elements()
        .map(|i| bits_of(&p.elements().filter(|&j| p.leq(j, i)).collect::<Vec<_>>()))
        .collect();
    (up, down)
}

fn closure(cone: &[Bits], a: Bits) -> Bits {
    points_of(a).into_iter().fold(0, |acc, i| acc | cone[i])
}

/// `↑A`.
pub fn up_closure(p: &FinitePoset, a: Bits) -> Bits {
    closure(&cones(p).0, a)
}

/// `↓A`.
pub fn down_closure(p: &FinitePoset, a: Bits) -> Bits {
    closure(&cones(p).1, a)
}

pub fn is_upset(p: &FinitePoset, a: Bits) -> bool {
    up_closure(p, a) == a
}

pub fn is_downset(p: &FinitePoset, a: Bits) -> bool {
    down_closure(p, a) == a
}

/// `x ∈ ◇A` iff some `y ≤ x` lies below some `z ∈ A`.
pub fn membership_diamond(p: &FinitePoset, a: Bits, x: Elem) -> bool {
    p.elements()
        .any(|y| p.leq(y, x) && p.elements().any(|z| a >> z & 1 == 1 && p.leq(y, z)))
}

/// `x ∈ □A` iff every `z` sharing an upper bound with `x` lies in `A`.
pub fn membership_box(p: &FinitePoset, a: Bits, x: Elem) -> bool {
    p.elements()
        .all(|y| !p.leq(x, y) || p.elements().all(|z| !p.leq(z, y) || a >> z & 1 == 1))
}

/// The lattice of upsets of a poset with the set-formula operators.
#[derive(Clone, Debug)]
pub struct UpsetAlgebra {
    pub base: FinitePoset,
    /// Sorted by bitset value; lattice element `i` is `upsets[i]`.
    pub upsets: Vec<Bits>,
    pub lattice: FiniteLattice,
    pub neg: OpTable,
    pub dual: OpTable,
    pub nec: OpTable,
    pub pos: OpTable,
}

impl UpsetAlgebra {
    pub fn new(p: &FinitePoset) -> Result<Self> {
        Self::with_cap(p, max_upsets())
    }

    pub fn with_cap(p: &FinitePoset, cap: usize) -> Result<Self> {
        if p.len() > 64 {
            return Err(Error::Precondition(format!(
                "{} points exceed the 64-point bitset",
                p.len()
            )));
        }
        let upsets = enumerate_upsets(p, cap)?;
        let n = upsets.len();
        let index = |b: Bits| upsets.binary_search(&b).expect("closed under the operation");
        let names = upsets.iter().map(|&u| set_name(p, u)).collect();
        let leq = upsets
            .iter()
            .flat_map(|&a| upsets.iter().map(move |&b| a & !b == 0))
            .collect();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for (i, &a) in upsets.iter().enumerate() {
            for (j, &b) in upsets.iter().enumerate() {
                meet[i * n + j] = index(a & b);
                join[i * n + j] = index(a | b);
            }
        }
        let lattice =
            FiniteLattice::from_trusted_parts(FinitePoset::from_trusted_relation(names, leq), meet, join, 0, n - 1);
        let (up, down) = cones(p);
        let full = full_set(p);
        let table = |f: &dyn Fn(Bits) -> Bits| OpTable::new(upsets.iter().map(|&a| Some(index(f(a)))).collect());
        let neg = table(&|a| !closure(&down, a) & full);
        let dual = table(&|a| closure(&up, !a & full));
        let pos = table(&|a| closure(&up, closure(&down, a)));
        let nec = table(&|a| !closure(&down, closure(&up, !a & full)) & full);
        Ok(UpsetAlgebra {
            base: p.clone(),
            upsets,
            lattice,
            neg,
            dual,
            nec,
            pos,
        })
    }

    pub fn len(&self) -> usize {
        self.upsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upsets.is_empty()
    }

    pub fn index_of(&self, bits: Bits) -> Option<Elem> {
        self.upsets.binary_search(&bits).ok()
    }

    pub fn upset(&self, i: Elem) -> Bits {
        self.upsets[i]
    }

    /// The lattice with operators recomputed from their order-theoretic definitions.
    pub fn profile(&self, name: impl Into<String>) -> AlgebraProfile {
        AlgebraProfile::new(name, self.lattice.clone())
    }
}

fn enumerate_upsets(p: &FinitePoset, cap: usize) -> Result<Vec<Bits>> {
    let heights = p.heights();
    let mut order: Vec<Elem> = p.elements().collect();
    // Higher points first, so every point's strict up-set is decided before it.
    order.sort_by(|&a, &b| heights[b].cmp(&heights[a]).then(a.cmp(&b)));
    let (up, _) = cones(p);
    let mut out = Vec::new();
    fn go(order: &[Elem], up: &[Bits], k: usize, cur: Bits, cap: usize, out: &mut Vec<Bits>) -> Result<()> {
        if k == order.len() {
            if out.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            out.push(cur);
            return Ok(());
        }
        let x = order[k];
        go(order, up, k + 1, cur, cap, out)?;
        let strictly_above = up[x] & !(1 << x);
        if strictly_above & !cur == 0 {
            go(order, up, k + 1, cur | 1 << x, cap, out)?;
        }
        Ok(())
    }
    go(&order, &up, 0, 0, cap, &mut out)?;
    out.sort_unstable();
    Ok(out)
}

/// The zigzag `p₀ > p₁ < p₂ > … < p₂ₙ` on `2n + 1` points, named `a, b, c, …` along the path.
/// Even positions are maximal, odd positions minimal.
pub fn fence_poset(n: usize) -> Result<FinitePoset> {
    if n == 0 {
        return Err(Error::Precondition("fence index must be at least 1".into()));
    }
    let k = 2 * n + 1;
    let names: Vec<String> = (0..k)
        .map(|i| {
            if k <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("p{i}")
            }
        })
        .collect();
    let covers: Vec<(Elem, Elem)> = (0..n)
        .flat_map(|j| {
            let low = 2 * j + 1;
            [(low, low - 1), (low, low + 1)]
        })
        .collect();
    FinitePoset::from_cover_indices(names, &covers)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("∞"),
        }
    }
}

fn bfs(p: &FinitePoset, x: Elem) -> Vec<Distance> {
    let mut dist = vec![Distance::Infinite; p.len()];
    dist[x] = Distance::Finite(0);
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        let Distance::Finite(du) = dist[u] else { unreachable!() };
        for v in p.elements() {
            if v != u && p.comparable(u, v) && dist[v] == Distance::Infinite {
                dist[v] = Distance::Finite(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Shortest path length in the comparability graph.
pub fn zigzag_distance(p: &FinitePoset, x: Elem, y: Elem) -> Distance {
    bfs(p, x)[y]
}

/// All pairwise zigzag distances and the components they induce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZigzagMetric {
    pub distances: Vec<Vec<Distance>>,
    pub components: Vec<Vec<Elem>>,
}

pub fn zigzag_metric(p: &FinitePoset) -> ZigzagMetric {
    let distances: Vec<Vec<Distance>> = p.elements().map(|x| bfs(p, x)).collect();
    let mut components: Vec<Vec<Elem>> = Vec::new();
    let mut seen = vec![false; p.len()];
    for x in p.elements() {
        if !seen[x] {
            let comp: Vec<Elem> = p
                .elements()
                .filter(|&y| distances[x][y] != Distance::Infinite)
                .collect();
            for &y in &comp {
                seen[y] = true;
            }
            components.push(comp);
        }
    }
    ZigzagMetric { distances, components }
}

/// Components ordered by their least point.
pub fn zigzag_components(p: &FinitePoset) -> Vec<Vec<Elem>> {
    zigzag_metric(p).components
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SPosetVerdict {
    pub is_s_poset: bool,
    /// The least pair `(x, y)`, `x < y` by index, at finite distance greater than 2.
    pub witness: Option<(Elem, Elem, usize)>,
}

/// Every pair is at zigzag distance `≤ 2` or `∞`.
pub fn is_s_poset(p: &FinitePoset) -> SPosetVerdict {
    let m = zigzag_metric(p);
    for x in p.elements() {
        for y in (x + 1)..p.len() {
            if let Distance::Finite(d) = m.distances[x][y] {
                if d > 2 {
                    return SPosetVerdict {
                        is_s_poset: false,
                        witness: Some((x, y, d)),
                    };
                }
            }
        }
    }
    SPosetVerdict {
        is_s_poset: true,
        witness: None,
    }
}

/// Maximal and minimal points, in index order.
pub fn p0_points(p: &FinitePoset) -> Vec<Elem> {
    let (max, min) = (p.maximals(), p.minimals());
    p.elements().filter(|a| max.contains(a) || min.contains(a)).collect()
}

/// An induced copy of N inside `P⁰`: `[l1, l2, u1, u2]` with `l1 < u1`, `l2 < u1`,
/// `l2 < u2` and `l1 ∥ u2`.
pub fn p0_n_embedding(p: &FinitePoset) -> Option<[Elem; 4]> {
    let pts = p0_points(p);
    for &l1 in &pts {
        for &u1 in &pts {
            if !p.lt(l1, u1) {
                continue;
            }
            for &l2 in &pts {
                if l2 == l1 || !p.lt(l2, u1) {
                    continue;
                }
                for &u2 in &pts {
                    if u2 != u1 && p.lt(l2, u2) && !p.comparable(l1, u2) {
                        return Some([l1, l2, u1, u2]);
                    }
                }
            }
        }
    }
    None
}

pub fn p0_has_n(p: &FinitePoset) -> bool {
    p0_n_embedding(p).is_some()
}

/// Every partial order on `k` labeled points `p0 … p(k-1)`, each exactly once.
///
/// A poset on `k` points is one on `k - 1` points plus a new point with a chosen
/// downset below it and upset above it, every chosen lower point below every chosen upper one.
pub fn labeled_poset_relations(k: usize) -> Vec<Vec<Bits>> {
    // Each poset is stored as `up[i]`: the points `≥ i`.
    let mut layer: Vec<Vec<Bits>> = vec![Vec::new()];
    for m in 0..k {
        let mut next = Vec::new();
        for up in &layer {
            let down: Vec<Bits> = (0..m)
                .map(|i| (0..m).filter(|&j| up[j] >> i & 1 == 1).fold(0, |a, j| a | 1 << j))
                .collect();
            let all = (1u64 << m) - 1;
            let downsets: Vec<Bits> = (0..=all).filter(|&s| closure(&down, s) == s).collect();
            let upsets: Vec<Bits> = (0..=all).filter(|&s| closure(up, s) == s).collect();
            for &d in &downsets {
                // Points above every member of d (strictly, as d and u are disjoint).
                let above_all = points_of(d).into_iter().fold(all, |acc, i| acc & up[i]);
                for &u in &upsets {
                    if u & d != 0 || u & !above_all != 0 {
                        continue;
                    }
                    let mut new_up: Vec<Bits> = up.clone();
                    for i in points_of(d) {
                        new_up[i] |= 1 << m;
                    }
                    new_up.push(u | 1 << m);
                    next.push(new_up);
                }
            }
        }
        layer = next;
    }
    layer
}

pub fn labeled_posets(k: usize) -> impl Iterator<Item = FinitePoset> {
    labeled_poset_relations(k).into_iter().map(move |up| {
        let names = (0..k).map(|i| format!("p{i}")).collect();
        let leq = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .map(|(i, j)| up[i] >> j & 1 == 1)
            .collect();
        FinitePoset::from_trusted_relation(names, leq)
    })
}

/// Cover list such as `[p0<p1 p2<p1]`.
pub fn describe(p: &FinitePoset) -> String {
    let covers: Vec<String> = p
        .covers()
        .iter()
        .map(|&(a, b)| format!("{}<{}", p.name(a), p.name(b)))
        .collect();
    format!("[{}]", covers.join(" "))
}
