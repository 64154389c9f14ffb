use std::time::Instant;

use crate::algebra::{lex_least_preimages, BipartiteMonoid, Element};
use crate::bitset::ElemSet;
use crate::games::{Alphabet, Position};

use super::{Candidate, Failure, FailureKind, SolverError};

/// Work limits for one verification pass.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_nodes: usize,
    pub deadline: Option<Instant>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: 10_000_000,
            deadline: None,
        }
    }
}

/// A realized transition: some position has value `x` and option values
/// `options`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionRecord {
    pub x: Element,
    pub options: ElemSet,
}

/// Minimal realized transitions (an antichain for each value) together with
/// the union of all option sets realized at each value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionAlgebra {
    order: usize,
    minimal: Vec<Vec<ElemSet>>,
    unions: Vec<ElemSet>,
}

impl TransitionAlgebra {
    pub fn new(order: usize) -> Self {
        TransitionAlgebra {
            order,
            minimal: vec![Vec::new(); order],
            unions: vec![ElemSet::new(order); order],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Whether some recorded `(x, D)` has `D` contained in `e`.
    pub fn is_subsumed(&self, x: Element, e: &ElemSet) -> bool {
        self.minimal[x as usize].iter().any(|d| d.is_subset(e))
    }

    /// Adds `(x, e)` to the antichain, dropping records it improves on.
    pub fn insert(&mut self, x: Element, e: ElemSet) {
        let list = &mut self.minimal[x as usize];
        if list.iter().any(|d| d.is_subset(&e)) {
            return;
        }
        list.retain(|d| !e.is_subset(d));
        list.push(e);
    }

    /// Notes that `(x, e)` is realized.
    pub fn realize(&mut self, x: Element, e: &ElemSet) {
        self.unions[x as usize].union_with(e);
    }

    pub fn union(&self, x: Element) -> &ElemSet {
        &self.unions[x as usize]
    }

    pub fn lower_bounds(&self, x: Element) -> &[ElemSet] {
        &self.minimal[x as usize]
    }

    pub fn records(&self) -> Vec<TransitionRecord> {
        let mut out = Vec::new();
        for (x, list) in self.minimal.iter().enumerate() {
            for e in list {
                out.push(TransitionRecord {
                    x: x as Element,
                    options: e.clone(),
                });
            }
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.minimal.iter().all(|l| l.is_empty())
    }
}

/// Result of an N-verification pass. When no failure was found the
/// transition records describe every realized transition from below.
#[derive(Clone, Debug)]
pub struct NVerification {
    pub failure: Option<Position>,
    pub transitions: TransitionAlgebra,
    pub nodes: usize,
}

/// The lex-least P-failure: iterate `(H, x)` and test `x Phi(H), x Phi(H')`
/// in P for an option `H'`, then minimize `L(x) + H` over the hits.
pub fn p_verify(c: &Candidate) -> Option<Failure> {
    let m = c.monoid();
    let mut best: Option<Position> = None;
    let mut pre: Option<Vec<Option<Position>>> = None;
    for h in 0..c.len() {
        if c.is_dead(h) {
            continue;
        }
        let ph = c.phi()[h];
        // elements are numbered in lex order of their least preimages, so
        // the first hit is the least one for this generator
        let hit = m.elements().find(|&x| {
            m.in_p(m.mul(x, ph)) && c.option_images(h).iter().any(|&o| m.in_p(m.mul(x, o)))
        });
        if let Some(x) = hit {
            let pre = pre.get_or_insert_with(|| lex_least_preimages(m, c.phi()));
            let pos = pre[x as usize].as_ref().expect("candidate is generated by Phi").with(h);
            if best.as_ref().is_none_or(|b| pos < *b) {
                best = Some(pos);
            }
        }
    }
    best.map(|position| Failure {
        position,
        kind: FailureKind::P,
    })
}

struct Search<'a> {
    m: &'a BipartiteMonoid,
    p: ElemSet,
    gens: Vec<usize>,
    values: Vec<Element>,
    option_sets: Vec<ElemSet>,
    weights: Vec<u64>,
    counts: Vec<u32>,
    prune: bool,
    max_weight: u64,
    ta: TransitionAlgebra,
    nodes: usize,
    limits: SearchLimits,
}

fn image(m: &BipartiteMonoid, set: &ElemSet, h: Element) -> ElemSet {
    let mut out = ElemSet::new(m.order());
    for y in set.iter() {
        out.insert(m.mul(y, h));
    }
    out
}

impl Search<'_> {
    fn position(&self) -> Position {
        let mut p = Position::empty();
        for (j, &c) in self.counts.iter().enumerate() {
            p.add(self.gens[j], c);
        }
        p
    }

    fn tick(&mut self) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            return Err(SolverError::Budget {
                what: "search nodes",
                limit: self.limits.max_nodes,
                frontier: Some(self.position().to_string()),
            });
        }
        if self.nodes.is_multiple_of(4096) && self.limits.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(SolverError::Deadline {
                frontier: Some(self.position().to_string()),
            });
        }
        Ok(())
    }

    /// Explores every position that adds generators `0..d` (of the live
    /// list) to the current one, in lex order.
    fn run(&mut self, d: usize, x: Element, e: &ElemSet, weight: u64, zero: bool) -> Result<Option<Position>, SolverError> {
        if d == 0 {
            return self.leaf(x, e, zero);
        }
        let g = d - 1;
        let (mut x, mut e, mut weight) = (x, e.clone(), weight);
        loop {
            if let Some(f) = self.run(g, x, &e, weight, zero && self.counts[g] == 0)? {
                return Ok(Some(f));
            }
            weight += self.weights[g];
            if !self.prune && weight > self.max_weight {
                break;
            }
            let h = self.values[g];
            let mut next = image(self.m, &e, h);
            for o in self.option_sets[g].iter() {
                next.insert(self.m.mul(x, o));
            }
            x = self.m.mul(x, h);
            e = next;
            self.counts[g] += 1;
            self.ta.realize(x, &e);
            if self.prune && self.ta.is_subsumed(x, &e) {
                break;
            }
        }
        self.counts[g] = 0;
        Ok(None)
    }

    fn leaf(&mut self, x: Element, e: &ElemSet, zero: bool) -> Result<Option<Position>, SolverError> {
        if zero {
            return Ok(None);
        }
        self.tick()?;
        if !self.p.contains(x) && !self.p.intersects(e) {
            return Ok(Some(self.position()));
        }
        // P-positions are recorded too: subsumption only needs equal values
        // and nested option sets, and without them a run of P-positions
        // along one generator would never be cut off
        if self.prune {
            self.ta.insert(x, e.clone());
        }
        Ok(None)
    }
}

fn search(c: &Candidate, prune: bool, max_weight: u64, weights: Vec<u64>, limits: SearchLimits) -> Result<NVerification, SolverError> {
    let m = c.monoid();
    let gens: Vec<usize> = (0..c.len()).filter(|&i| !c.is_dead(i)).collect();
    let mut s = Search {
        m,
        p: m.p_set(),
        values: gens.iter().map(|&g| c.phi()[g]).collect(),
        option_sets: gens
            .iter()
            .map(|&g| ElemSet::from_iter_with(m.order(), c.option_images(g).iter().copied()))
            .collect(),
        weights: gens.iter().map(|&g| weights[g]).collect(),
        counts: vec![0; gens.len()],
        gens,
        prune,
        max_weight,
        ta: TransitionAlgebra::new(m.order()),
        nodes: 0,
        limits,
    };
    let d = s.gens.len();
    let failure = s.run(d, crate::algebra::IDENTITY, &ElemSet::new(m.order()), 0, true)?;
    Ok(NVerification {
        failure,
        transitions: s.ta,
        nodes: s.nodes,
    })
}

/// The lex-least N-failure, by lex-order traversal with subsumption pruning.
/// Positions made only of dead generators count as `0`.
pub fn n_verify(c: &Candidate, limits: SearchLimits) -> Result<NVerification, SolverError> {
    search(c, true, u64::MAX, vec![0; c.len()], limits)
}

/// The lex-least N-failure among positions of total weight at most
/// `max_weight`, by plain enumeration without pruning.
pub fn n_verify_exhaustive(
    c: &Candidate,
    alphabet: &Alphabet,
    max_weight: u64,
    limits: SearchLimits,
) -> Result<Option<Position>, SolverError> {
    let weights = alphabet.generators().iter().map(|g| g.weight.max(1) as u64).collect();
    Ok(search(c, false, max_weight, weights, limits)?.failure)
}

/// Both verifications; returns the lex-smaller failure and, when there is
/// none, the transition records of the N-verification pass.
pub fn verify(c: &Candidate, limits: SearchLimits) -> Result<(Option<Failure>, NVerification), SolverError> {
    let pf = p_verify(c);
    let nv = n_verify(c, limits)?;
    let nf = nv.failure.clone().map(|position| Failure {
        position,
        kind: FailureKind::N,
    });
    let least = match (pf, nf) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    Ok((least, nv))
}

pub fn least_failure(c: &Candidate, limits: SearchLimits) -> Result<Option<Failure>, SolverError> {
    Ok(verify(c, limits)?.0)
}
