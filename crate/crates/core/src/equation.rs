//! Evaluating terms, checking laws exhaustively, homomorphisms, generated
//! sublattices, the finite-model shrink and counterexample search.
//!
//! Assignments are enumerated mixed-radix little-endian: the first variable
//! changes fastest. "Least" assignment below means first in that order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modal::{AlgebraProfile, Class};
use crate::order::{Elem, FiniteLattice, FinitePoset};
use crate::term::{Binary, Identity, Law, Relation, Term, Unary};

/// Anything terms can be evaluated in: a lattice plus (partial) operators.
pub trait Interp {
    fn lattice(&self) -> &FiniteLattice;
    fn unary(&self, op: Unary, a: Elem) -> Option<Elem>;
    fn arrow(&self, a: Elem, b: Elem) -> Option<Elem>;
}

impl Interp for AlgebraProfile {
    fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    fn unary(&self, op: Unary, a: Elem) -> Option<Elem> {
        match op {
            Unary::Neg => self.neg.get(a),
            Unary::Dual => self.dual.get(a),
            Unary::Box => self.nec.get(a),
            Unary::Dia => self.pos.get(a),
            Unary::Bool => self.bool_below.get(a),
        }
    }

    fn arrow(&self, a: Elem, b: Elem) -> Option<Elem> {
        AlgebraProfile::arrow(self, a, b)
    }
}

fn eval_raw<I: Interp + ?Sized>(alg: &I, t: &Term, asg: &[Elem]) -> Option<Elem> {
    let l = alg.lattice();
    match t {
        Term::Var(i) => Some(asg[*i]),
        Term::Zero => Some(l.bottom()),
        Term::One => Some(l.top()),
        Term::Un(op, a) => alg.unary(*op, eval_raw(alg, a, asg)?),
        Term::Bin(op, a, b) => {
            let x = eval_raw(alg, a, asg)?;
            let y = eval_raw(alg, b, asg)?;
            match op {
                Binary::Meet => Some(l.meet(x, y)),
                Binary::Join => Some(l.join(x, y)),
                Binary::Arrow => alg.arrow(x, y),
            }
        }
    }
}

/// Bottom-up evaluation; `None` when a partial operator is undefined on the way.
pub fn eval<I: Interp + ?Sized>(alg: &I, t: &Term, asg: &[Elem]) -> Result<Option<Elem>> {
    let need = t.arity();
    if asg.len() < need {
        return Err(Error::UnboundVariable(asg.len()));
    }
    Ok(eval_raw(alg, t, asg))
}

fn identity_at<I: Interp + ?Sized>(alg: &I, id: &Identity, asg: &[Elem]) -> Option<bool> {
    let l = eval_raw(alg, &id.lhs, asg)?;
    let r = eval_raw(alg, &id.rhs, asg)?;
    Some(match id.relation {
        Relation::Eq => l == r,
        Relation::Leq => alg.lattice().leq(l, r),
    })
}

/// Truth of a law at one assignment, `None` when undefined there.
///
/// A quasi-identity with a defined false premise is vacuously true.
pub fn law_at<I: Interp + ?Sized>(alg: &I, law: &Law, asg: &[Elem]) -> Option<bool> {
    match law {
        Law::Identity(id) => identity_at(alg, id, asg),
        Law::Quasi { premises, conclusion } => {
            let mut undefined = false;
            for p in premises {
                match identity_at(alg, p, asg) {
                    Some(false) => return Some(true),
                    None => undefined = true,
                    Some(true) => {}
                }
            }
            if undefined {
                None
            } else {
                identity_at(alg, conclusion, asg)
            }
        }
        Law::Iff(a, b) => Some(identity_at(alg, a, asg)? == identity_at(alg, b, asg)?),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    /// The least assignment where the law is defined and false.
    Fails(Vec<Elem>),
    /// No failure, but the law is undefined at this (least) assignment.
    UndefinedAt(Vec<Elem>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn assignment(&self) -> Option<&[Elem]> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(a) | Verdict::UndefinedAt(a) => Some(a),
        }
    }
}

/// Steps a little-endian counter; `false` once it wraps around.
pub fn next_assignment(asg: &mut [Elem], radix: usize) -> bool {
    for v in asg.iter_mut() {
        *v += 1;
        if *v < radix {
            return true;
        }
        *v = 0;
    }
    false
}

/// Exhaustive check over all assignments of the law's variables.
pub fn check_law<I: Interp + ?Sized>(alg: &I, law: &Law) -> Verdict {
    let n = alg.lattice().len();
    let mut asg = vec![0; law.arity()];
    let mut undefined: Option<Vec<Elem>> = None;
    loop {
        match law_at(alg, law, &asg) {
            Some(false) => return Verdict::Fails(asg),
            None if undefined.is_none() => undefined = Some(asg.clone()),
            _ => {}
        }
        if !next_assignment(&mut asg, n) {
            break;
        }
    }
    match undefined {
        Some(a) => Verdict::UndefinedAt(a),
        None => Verdict::Holds,
    }
}

pub fn check_identity<I: Interp + ?Sized>(alg: &I, id: &Identity) -> Verdict {
    check_law(alg, &Law::Identity(id.clone()))
}

pub fn check_quasi_identity<I: Interp + ?Sized>(alg: &I, premises: &[Identity], conclusion: &Identity) -> Verdict {
    check_law(
        alg,
        &Law::Quasi {
            premises: premises.to_vec(),
            conclusion: conclusion.clone(),
        },
    )
}

/// A function between carriers; `values[a]` is the image of source element `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeMap {
    pub source: String,
    pub target: String,
    pub values: Vec<Elem>,
}

impl LatticeMap {
    pub fn identity(l: &FiniteLattice, name: &str) -> Self {
        LatticeMap {
            source: name.into(),
            target: name.into(),
            values: l.elements().collect(),
        }
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.values[a]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MapOp {
    Meet,
    Join,
    Zero,
    One,
    Arrow,
    Unary(Unary),
}

impl MapOp {
    pub const LATTICE: [MapOp; 4] = [MapOp::Meet, MapOp::Join, MapOp::Zero, MapOp::One];

    pub fn label(self) -> &'static str {
        match self {
            MapOp::Meet => "∧",
            MapOp::Join => "∨",
            MapOp::Zero => "0",
            MapOp::One => "1",
            MapOp::Arrow => "→",
            MapOp::Unary(u) => u.symbol(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Preservation {
    pub op: MapOp,
    pub preserved: bool,
    /// Source arguments of the first failure.
    pub witness: Option<Vec<Elem>>,
    /// `h(op(args))` and `op(h(args))` at the witness.
    pub image_of_value: Option<Elem>,
    pub value_of_image: Option<Elem>,
}

/// Checks `h(op(args)) = op(h(args))` for every argument tuple of each op.
/// Undefined values must match on both sides.
pub fn check_homomorphism(
    map: &LatticeMap,
    src: &AlgebraProfile,
    tgt: &AlgebraProfile,
    ops: &[MapOp],
) -> Result<Vec<Preservation>> {
    if map.values.len() != src.lattice.len() || map.values.iter().any(|&v| v >= tgt.lattice.len()) {
        return Err(Error::Precondition(format!(
            "map {} -> {} is not total on the source",
            map.source, map.target
        )));
    }
    let h = |a: Option<Elem>| a.map(|a| map.apply(a));
    let n = src.lattice.len();
    let mut out = Vec::new();
    for &op in ops {
        let arity = match op {
            MapOp::Zero | MapOp::One => 0,
            MapOp::Unary(_) => 1,
            _ => 2,
        };
        let mut asg = vec![0; arity];
        let mut report = Preservation {
            op,
            preserved: true,
            witness: None,
            image_of_value: None,
            value_of_image: None,
        };
        loop {
            let (lhs, rhs) = match op {
                MapOp::Zero => (h(Some(src.lattice.bottom())), Some(tgt.lattice.bottom())),
                MapOp::One => (h(Some(src.lattice.top())), Some(tgt.lattice.top())),
                MapOp::Meet => (
                    h(Some(src.lattice.meet(asg[0], asg[1]))),
                    Some(tgt.lattice.meet(map.apply(asg[0]), map.apply(asg[1]))),
                ),
                MapOp::Join => (
                    h(Some(src.lattice.join(asg[0], asg[1]))),
                    Some(tgt.lattice.join(map.apply(asg[0]), map.apply(asg[1]))),
                ),
                MapOp::Arrow => (
                    h(src.arrow(asg[0], asg[1])),
                    tgt.arrow(map.apply(asg[0]), map.apply(asg[1])),
                ),
                MapOp::Unary(u) => (h(src.unary(u, asg[0])), tgt.unary(u, map.apply(asg[0]))),
            };
            if lhs != rhs {
                report.preserved = false;
                report.witness = Some(asg.clone());
                report.image_of_value = lhs;
                report.value_of_image = rhs;
                break;
            }
            if !next_assignment(&mut asg, n) {
                break;
            }
        }
        out.push(report);
    }
    Ok(out)
}

/// A sublattice with its inclusion into the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    pub lattice: FiniteLattice,
    /// `inclusion[i]` is the parent element of sublattice element `i`.
    pub inclusion: Vec<Elem>,
}

impl Sublattice {
    /// Sublattice index of a parent element, if it belongs to the sublattice.
    pub fn index_of(&self, parent: Elem) -> Option<Elem> {
        self.inclusion.binary_search(&parent).ok()
    }
}

/// The sublattice generated by `x ∪ {0, 1}`, elements kept in parent order.
pub fn generated_sublattice(l: &FiniteLattice, x: &[Elem]) -> Result<Sublattice> {
    let mut member = vec![false; l.len()];
    member[l.bottom()] = true;
    member[l.top()] = true;
    for &a in x {
        member[a] = true;
    }
    loop {
        let current: Vec<Elem> = l.elements().filter(|&a| member[a]).collect();
        let mut grew = false;
        for &a in &current {
            for &b in &current {
                for c in [l.meet(a, b), l.join(a, b)] {
                    if !member[c] {
                        member[c] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let inclusion: Vec<Elem> = l.elements().filter(|&a| member[a]).collect();
    let names = inclusion.iter().map(|&a| l.name(a).to_string()).collect();
    let leq = inclusion
        .iter()
        .flat_map(|&a| inclusion.iter().map(move |&b| l.leq(a, b)))
        .collect();
    // Restrictions of the ambient tables, so no size cap or revalidation applies.
    let pos = |a: Elem| inclusion.binary_search(&a).expect("closed under ∧ and ∨");
    let (mut meet, mut join) = (Vec::new(), Vec::new());
    for &a in &inclusion {
        for &b in &inclusion {
            meet.push(pos(l.meet(a, b)));
            join.push(pos(l.join(a, b)));
        }
    }
    let lattice = FiniteLattice::from_trusted_parts(
        FinitePoset::from_trusted_relation(names, leq),
        meet,
        join,
        pos(l.bottom()),
        pos(l.top()),
    );
    Ok(Sublattice { lattice, inclusion })
}

/// A finite separating witness rebuilt inside the generated sublattice.
#[derive(Clone, Debug)]
pub struct Shrink {
    pub sublattice: Sublattice,
    /// The sublattice with its own (primed) operators.
    pub profile: AlgebraProfile,
    /// The assignment in sublattice indices; unused variables go to the top.
    pub assignment: Vec<Elem>,
    pub lhs: Elem,
    pub rhs: Elem,
}

/// Builds `L_X` for `X = h(S₀) ∪ ¬h(S₀) ∪ {0, 1}` where `S₀` are the subterms of both
/// sides, recomputes the operators inside it and re-evaluates both terms there.
pub fn fmp_counterexample_shrink(alg: &AlgebraProfile, t1: &Term, t2: &Term, asg: &[Elem]) -> Result<Shrink> {
    let v1 = eval(alg, t1, asg)?;
    let v2 = eval(alg, t2, asg)?;
    match (v1, v2) {
        (Some(a), Some(b)) if a != b => {}
        _ => {
            return Err(Error::Precondition(
                "the terms must be defined and differ under the assignment".into(),
            ))
        }
    }
    let mut x = Vec::new();
    let mut used = vec![false; asg.len()];
    for t in t1.subterms().into_iter().chain(t2.subterms()) {
        if let Term::Var(i) = t {
            used[*i] = true;
        }
        let v = eval_raw(alg, t, asg).expect("subterms of a defined term are defined");
        x.push(v);
        if let Some(nv) = alg.neg.get(v) {
            x.push(nv);
        }
    }
    let sub = generated_sublattice(&alg.lattice, &x)?;
    let profile = AlgebraProfile::new(format!("{}[X]", alg.name), sub.lattice.clone());
    let top = profile.lattice.top();
    let assignment: Vec<Elem> = asg
        .iter()
        .zip(&used)
        .map(|(&a, &u)| {
            if u {
                sub.index_of(a).expect("variables lie in X")
            } else {
                top
            }
        })
        .collect();
    match (eval_raw(&profile, t1, &assignment), eval_raw(&profile, t2, &assignment)) {
        (Some(lhs), Some(rhs)) if lhs != rhs => Ok(Shrink {
            sublattice: sub,
            profile,
            assignment,
            lhs,
            rhs,
        }),
        _ => Err(Error::NotSeparated),
    }
}

/// The shrink for a failing identity, using its equation form.
pub fn fmp_shrink_identity(alg: &AlgebraProfile, id: &Identity, asg: &[Elem]) -> Result<Shrink> {
    let (t1, t2) = id.as_equation();
    fmp_counterexample_shrink(alg, &t1, &t2, asg)
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Largest poset whose upset algebra is scanned, at most 6.
    pub max_poset: usize,
    /// Only algebras in this class are considered.
    pub class: Option<Class>,
    /// Scan the catalog first.
    pub catalog: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_poset: 5,
            class: None,
            catalog: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    /// Where the algebra came from: a catalog name or a generated poset.
    pub source: String,
    pub profile: AlgebraProfile,
    pub assignment: Vec<Elem>,
}

impl Counterexample {
    pub fn assignment_names(&self) -> Vec<String> {
        self.assignment
            .iter()
            .map(|&a| self.profile.lattice.name(a).to_string())
            .collect()
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(Box<Counterexample>),
    Exhausted { algebras: usize },
}

/// Scans catalog algebras, then upset algebras of all labeled posets with
/// `1..=max_poset` points, returning the first failure.
pub fn search_counterexample(law: &Law, cfg: &SearchConfig) -> Result<SearchOutcome> {
    if cfg.max_poset > 6 {
        return Err(Error::Precondition(format!(
            "max poset size {} exceeds 6",
            cfg.max_poset
        )));
    }
    let mut scanned = 0;
    let mut try_one = |source: String, p: AlgebraProfile| -> Option<Counterexample> {
        if cfg.class.is_some_and(|c| !p.in_class(c)) {
            return None;
        }
        scanned += 1;
        match check_law(&p, law) {
            Verdict::Fails(assignment) => Some(Counterexample {
                source,
                profile: p,
                assignment,
            }),
            _ => None,
        }
    };
    if cfg.catalog {
        for entry in crate::catalog::all_entries() {
            if let Some(p) = entry.profile() {
                if let Some(c) = try_one(format!("catalog:{}", entry.name), p) {
                    return Ok(SearchOutcome::Found(Box::new(c)));
                }
            }
        }
    }
    for k in 1..=cfg.max_poset {
        for (idx, poset) in crate::repr::labeled_posets(k).enumerate() {
            let up = crate::repr::UpsetAlgebra::new(&poset)?;
            let source = format!("upsets of poset #{idx} on {k} points {}", crate::repr::describe(&poset));
            if let Some(c) = try_one(source, up.profile(format!("U{k}_{idx}"))) {
                return Ok(SearchOutcome::Found(Box::new(c)));
            }
        }
    }
    Ok(SearchOutcome::Exhausted { algebras: scanned })
}

struct Overlay<'a> {
    base: &'a AlgebraProfile,
    free: &'a [Unary],
    tables: Vec<Vec<Option<Elem>>>,
}

impl Interp for Overlay<'_> {
    fn lattice(&self) -> &FiniteLattice {
        &self.base.lattice
    }

    fn unary(&self, op: Unary, a: Elem) -> Option<Elem> {
        match self.free.iter().position(|&f| f == op) {
            Some(i) => self.tables[i][a],
            None => self.base.unary(op, a),
        }
    }

    fn arrow(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.base.arrow(a, b)
    }
}

/// All interpretations of the `free` operators (total tables) under which every law
/// holds, with the remaining operators taken from `alg`. At most `limit` are returned.
///
/// Backtracking over table entries. Each node keeps the law instances that are still
/// undetermined; an instance that became true stays true deeper in the branch.
pub fn basis_models(alg: &AlgebraProfile, laws: &[Law], free: &[Unary], limit: usize) -> Vec<Vec<Vec<Elem>>> {
    let n = alg.lattice.len();
    let mut ov = Overlay {
        base: alg,
        free,
        tables: vec![vec![None; n]; free.len()],
    };
    // Fill order matters for pruning: □ and ◇ at a are bounded by their values
    // higher up, ¬ by values lower down.
    let heights = alg.lattice.poset().heights();
    let mut up: Vec<Elem> = (0..n).collect();
    up.sort_by_key(|&a| heights[a]);
    let down: Vec<Elem> = up.iter().rev().copied().collect();
    let slots: Vec<(usize, Elem)> = free
        .iter()
        .enumerate()
        .flat_map(|(i, op)| {
            let order = if *op == Unary::Neg { &up } else { &down };
            order.iter().map(move |&a| (i, a))
        })
        .collect();

    let pending: Vec<(usize, Vec<Elem>)> = laws
        .iter()
        .enumerate()
        .flat_map(|(k, law)| {
            let mut asg = vec![0; law.arity()];
            let mut all = Vec::new();
            loop {
                all.push((k, asg.clone()));
                if !next_assignment(&mut asg, n) {
                    break;
                }
            }
            all
        })
        .collect();

    /// Keeps the undetermined instances; `None` if one is false.
    fn refine(ov: &Overlay<'_>, laws: &[Law], pending: &[(usize, Vec<Elem>)]) -> Option<Vec<(usize, Vec<Elem>)>> {
        let mut rest = Vec::new();
        for (k, asg) in pending {
            match law_at(ov, &laws[*k], asg) {
                Some(false) => return None,
                Some(true) => {}
                None => rest.push((*k, asg.clone())),
            }
        }
        Some(rest)
    }

    fn go(
        ov: &mut Overlay<'_>,
        laws: &[Law],
        slots: &[(usize, Elem)],
        pending: &[(usize, Vec<Elem>)],
        limit: usize,
        found: &mut Vec<Vec<Vec<Elem>>>,
    ) {
        if found.len() >= limit {
            return;
        }
        let Some((&(i, a), rest)) = slots.split_first() else {
            if pending.is_empty() {
                found.push(
                    ov.tables
                        .iter()
                        .map(|t| t.iter().map(|v| v.expect("complete")).collect())
                        .collect(),
                );
            }
            return;
        };
        for v in 0..ov.base.lattice.len() {
            ov.tables[i][a] = Some(v);
            if let Some(next) = refine(ov, laws, pending) {
                go(ov, laws, rest, &next, limit, found);
            }
        }
        ov.tables[i][a] = None;
    }

    let mut found = Vec::new();
    if let Some(start) = refine(&ov, laws, &pending) {
        go(&mut ov, laws, &slots, &start, limit, &mut found);
    }
    found
}
