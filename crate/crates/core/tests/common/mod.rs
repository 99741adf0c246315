//! A deliberately naive evaluator: every operation is recomputed from the order
//! relation alone, with no tables shared with the library.

#![allow(dead_code)]

use modlat::term::{Binary, Identity, Law, Relation, Term, Unary};
use modlat::{catalog, AlgebraProfile, FiniteLattice};

pub struct Naive<'a> {
    l: &'a FiniteLattice,
    bot: usize,
    top: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
    neg: Vec<Option<usize>>,
    nec: Vec<Option<usize>>,
    pos: Vec<Option<usize>>,
    dual: Vec<Option<usize>>,
    boolean: Vec<Option<usize>>,
    arrow: Vec<Option<usize>>,
}

fn greatest(l: &FiniteLattice, cands: &[usize]) -> Option<usize> {
    cands.iter().copied().find(|&m| cands.iter().all(|&c| l.leq(c, m)))
}

fn least(l: &FiniteLattice, cands: &[usize]) -> Option<usize> {
    cands.iter().copied().find(|&m| cands.iter().all(|&c| l.leq(m, c)))
}

impl<'a> Naive<'a> {
    /// Tables are filled by scanning candidates against the order only.
    pub fn new(l: &'a FiniteLattice) -> Self {
        let n = l.len();
        let all: Vec<usize> = (0..n).collect();
        let le = |a: usize, b: usize| l.leq(a, b);
        let bot = least(l, &all).expect("bounded");
        let top = greatest(l, &all).expect("bounded");
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = all.iter().copied().filter(|&c| le(c, a) && le(c, b)).collect();
                let upper: Vec<usize> = all.iter().copied().filter(|&c| le(a, c) && le(b, c)).collect();
                meet[a * n + b] = greatest(l, &lower).expect("lattice");
                join[a * n + b] = least(l, &upper).expect("lattice");
            }
        }
        let m = |a: usize, b: usize| meet[a * n + b];
        let j = |a: usize, b: usize| join[a * n + b];
        let neg: Vec<Option<usize>> = (0..n)
            .map(|a| greatest(l, &all.iter().copied().filter(|&b| m(a, b) == bot).collect::<Vec<_>>()))
            .collect();
        let neg_total = neg.iter().all(Option::is_some);
        let ng = |b: usize| neg[b].unwrap();
        let nec: Vec<Option<usize>> = (0..n)
            .map(|a| {
                if !neg_total {
                    return None;
                }
                greatest(
                    l,
                    &all.iter().copied().filter(|&b| j(a, ng(b)) == top).collect::<Vec<_>>(),
                )
            })
            .collect();
        let pos: Vec<Option<usize>> = (0..n)
            .map(|a| {
                if !neg_total {
                    return None;
                }
                least(
                    l,
                    &all.iter().copied().filter(|&b| j(ng(a), b) == top).collect::<Vec<_>>(),
                )
            })
            .collect();
        let dual: Vec<Option<usize>> = (0..n)
            .map(|a| least(l, &all.iter().copied().filter(|&b| j(a, b) == top).collect::<Vec<_>>()))
            .collect();
        let boolean: Vec<Option<usize>> = (0..n)
            .map(|a| {
                if !neg_total {
                    return None;
                }
                let c: Vec<usize> = all
                    .iter()
                    .copied()
                    .filter(|&b| le(b, a) && j(b, ng(b)) == top)
                    .collect();
                greatest(l, &c)
            })
            .collect();
        let mut arrow = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                let c: Vec<usize> = all.iter().copied().filter(|&c| le(m(a, c), b)).collect();
                arrow[a * n + b] = greatest(l, &c);
            }
        }
        Naive {
            l,
            bot,
            top,
            meet,
            join,
            neg,
            nec,
            pos,
            dual,
            boolean,
            arrow,
        }
    }

    fn n(&self) -> usize {
        self.l.len()
    }

    fn le(&self, a: usize, b: usize) -> bool {
        self.l.leq(a, b)
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n() + b]
    }

    pub fn neg(&self, a: usize) -> Option<usize> {
        self.neg[a]
    }

    pub fn nec(&self, a: usize) -> Option<usize> {
        self.nec[a]
    }

    pub fn pos(&self, a: usize) -> Option<usize> {
        self.pos[a]
    }

    pub fn dual(&self, a: usize) -> Option<usize> {
        self.dual[a]
    }

    pub fn boolean_below(&self, a: usize) -> Option<usize> {
        self.boolean[a]
    }

    pub fn arrow(&self, a: usize, b: usize) -> Option<usize> {
        self.arrow[a * self.n() + b]
    }

    pub fn eval(&self, t: &Term, asg: &[usize]) -> Option<usize> {
        match t {
            Term::Var(i) => Some(asg[*i]),
            Term::Zero => Some(self.bot()),
            Term::One => Some(self.top()),
            Term::Un(op, a) => {
                let x = self.eval(a, asg)?;
                match op {
                    Unary::Neg => self.neg(x),
                    Unary::Box => self.nec(x),
                    Unary::Dia => self.pos(x),
                    Unary::Dual => self.dual(x),
                    Unary::Bool => self.boolean_below(x),
                }
            }
            Term::Bin(op, a, b) => {
                let x = self.eval(a, asg)?;
                let y = self.eval(b, asg)?;
                match op {
                    Binary::Meet => Some(self.meet(x, y)),
                    Binary::Join => Some(self.join(x, y)),
                    Binary::Arrow => self.arrow(x, y),
                }
            }
        }
    }

    fn identity(&self, id: &Identity, asg: &[usize]) -> Option<bool> {
        let l = self.eval(&id.lhs, asg)?;
        let r = self.eval(&id.rhs, asg)?;
        Some(match id.relation {
            Relation::Eq => l == r,
            Relation::Leq => self.le(l, r),
        })
    }

    pub fn law(&self, law: &Law, asg: &[usize]) -> Option<bool> {
        match law {
            Law::Identity(id) => self.identity(id, asg),
            Law::Quasi { premises, conclusion } => {
                let vals: Vec<Option<bool>> = premises.iter().map(|p| self.identity(p, asg)).collect();
                if vals.contains(&Some(false)) {
                    Some(true)
                } else if vals.contains(&None) {
                    None
                } else {
                    self.identity(conclusion, asg)
                }
            }
            Law::Iff(a, b) => Some(self.identity(a, asg)? == self.identity(b, asg)?),
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Holds,
    Fails(Vec<usize>),
    UndefinedAt(Vec<usize>),
}

fn all_assignments(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in all_assignments(n, k - 1) {
        for v in 0..n {
            let mut a = rest.clone();
            a.push(v);
            out.push(a);
        }
    }
    out
}

/// Little-endian least: the last variable is most significant.
fn least_assignment(mut xs: Vec<Vec<usize>>) -> Option<Vec<usize>> {
    xs.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    xs.into_iter().next()
}

pub fn oracle_check(nv: &Naive<'_>, law: &Law) -> OracleVerdict {
    let l = nv.l;
    let mut failing = Vec::new();
    let mut undefined = Vec::new();
    for asg in all_assignments(l.len(), law.arity()) {
        match nv.law(law, &asg) {
            Some(true) => {}
            Some(false) => failing.push(asg),
            None => undefined.push(asg),
        }
    }
    if let Some(a) = least_assignment(failing) {
        OracleVerdict::Fails(a)
    } else if let Some(a) = least_assignment(undefined) {
        OracleVerdict::UndefinedAt(a)
    } else {
        OracleVerdict::Holds
    }
}

pub fn catalog_profiles() -> Vec<AlgebraProfile> {
    catalog::all_entries().iter().filter_map(|e| e.profile()).collect()
}

pub fn profile(name: &str) -> AlgebraProfile {
    catalog::get(name).unwrap().profile().unwrap()
}
