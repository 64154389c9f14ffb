//! Heap-by-heap solving of octal games.

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, IDENTITY};
use crate::bitset::ElemSet;
use crate::games::{Alphabet, OctalCode};
use crate::solver::{
    Candidate, NVerification, QuotientSolution, SearchLimits, Solver, SolverConfig, SolverError, Step,
    TransitionAlgebra,
};

/// A converged quotient of the heaps `1..=heaps`, with the transition
/// records of its last verification.
#[derive(Clone, Debug)]
pub struct PartialQuotient {
    pub heaps: usize,
    pub candidate: Candidate,
    pub transitions: TransitionAlgebra,
}

impl PartialQuotient {
    pub fn empty() -> Self {
        let candidate = Candidate::trivial(&Alphabet::default()).expect("empty alphabet");
        PartialQuotient {
            heaps: 0,
            transitions: TransitionAlgebra::new(candidate.order()),
            candidate,
        }
    }
}

/// An observed eventual period of the pretending function (1-based heap
/// indices). Not a proof of periodicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Period {
    pub preperiod: usize,
    pub period: usize,
    /// Largest heap examined.
    pub observed_to: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct PeriodPolicy {
    /// Full periods the stable tail must contain.
    pub multiplier: usize,
}

impl Default for PeriodPolicy {
    fn default() -> Self {
        PeriodPolicy { multiplier: 2 }
    }
}

/// The transition records of a converged partial quotient, recomputed by a
/// verification pass.
pub fn transition_lower_bounds(pq: &PartialQuotient, limits: SearchLimits) -> Result<TransitionAlgebra, SolverError> {
    let nv = crate::solver::n_verify(&pq.candidate, limits)?;
    if let Some(f) = nv.failure {
        return Err(SolverError::Invalid(format!("partial quotient fails at {f}")));
    }
    Ok(nv.transitions)
}

/// `Phi''H_{n+1}` for the next heap under the current pretending function.
pub fn next_option_images(pq: &PartialQuotient, alphabet: &Alphabet) -> ElemSet {
    let m = pq.candidate.monoid();
    let g = alphabet.get(pq.heaps);
    ElemSet::from_iter_with(m.order(), g.options.iter().map(|o| m.eval_with(pq.candidate.phi(), o)))
}

/// The value forced on a new heap with option values `e`: some `x` with a
/// recorded lower bound `(x, D)` such that `D` is inside `e` and `e` is
/// inside the union of option sets realized at `x`.
pub fn interpolate_next_heap(ta: &TransitionAlgebra, e: &ElemSet) -> Option<Element> {
    (0..ta.order() as Element).find(|&x| e.is_subset(ta.union(x)) && ta.lower_bounds(x).iter().any(|d| d.is_subset(e)))
}

/// Solves heaps `1..=n+1` from the solution for `1..=n`.
pub fn extend_one_heap(solver: &mut Solver, pq: &PartialQuotient, code: &OctalCode) -> Result<PartialQuotient, SolverError> {
    let n = pq.heaps + 1;
    let alphabet = Alphabet::for_code(code, n);
    let done = |candidate: Candidate, transitions: TransitionAlgebra| PartialQuotient {
        heaps: n,
        candidate,
        transitions,
    };
    if alphabet.is_dead(n - 1) {
        let c = pq.candidate.extended(IDENTITY, &alphabet)?;
        solver.emit(n, Step::Dead, c.order(), None);
        return Ok(done(c, pq.transitions.clone()));
    }
    if solver.config.shortcuts {
        let e = next_option_images(pq, &alphabet);
        if let Some(x) = interpolate_next_heap(&pq.transitions, &e) {
            let c = pq.candidate.extended(x, &alphabet)?;
            if solver.config.paranoid {
                if let (Some(f), _) = solver.verify(&c)? {
                    return Err(SolverError::Invalid(format!("interpolated heap {n} fails at {}", f.position)));
                }
            }
            solver.emit(n, Step::Interpolated, c.order(), None);
            return Ok(done(c, pq.transitions.clone()));
        }
        for x in pq.candidate.monoid().elements() {
            if !e.is_subset(pq.transitions.union(x)) {
                continue;
            }
            let c = pq.candidate.extended(x, &alphabet)?;
            if let (None, nv) = solver.verify(&c)? {
                solver.emit(n, Step::Reused, c.order(), None);
                return Ok(done(c, nv.transitions));
            }
        }
    }
    let (c, nv) = solver.add_generator(&pq.candidate, &alphabet)?;
    let nv: NVerification = nv.expect("live generator");
    Ok(done(c, nv.transitions))
}

/// The smallest period `p` (with least preperiod) such that
/// `phi[k+p] = phi[k]` on a tail that avoids the last monoid change,
/// contains `multiplier` full periods, and is at least `p` plus the largest
/// move long. `phi[0]` is heap 1; `stable_from` is the first heap after the
/// last change of the monoid.
pub fn detect_phi_period(phi: &[Element], code: &OctalCode, policy: PeriodPolicy, stable_from: usize) -> Option<Period> {
    let n = phi.len();
    for p in 1..=n / 2 {
        // least (0-based) i0 with phi[k + p] == phi[k] for all k >= i0
        let mut i0 = n - p;
        while i0 > 0 && phi[i0 - 1] == phi[i0 - 1 + p] {
            i0 -= 1;
        }
        let start = i0.max(stable_from.saturating_sub(1));
        let tail = n - start;
        if tail >= policy.multiplier * p && tail >= p + code.max_move() {
            return Some(Period {
                preperiod: i0 + 1,
                period: p,
                observed_to: n,
            });
        }
    }
    None
}

/// Limits for [`solve_octal`].
#[derive(Clone, Copy, Debug)]
pub struct OctalLimits {
    pub heap_cap: usize,
    /// Stop as soon as a period is observed (after at least `min_heaps`).
    pub stop_at_period: bool,
    pub min_heaps: usize,
    pub period: PeriodPolicy,
}

impl OctalLimits {
    /// Exactly `heaps` heaps.
    pub fn heaps(heaps: usize) -> Self {
        OctalLimits {
            heap_cap: heaps,
            stop_at_period: false,
            min_heaps: heaps,
            period: PeriodPolicy::default(),
        }
    }

    /// Until a period shows up, at most `cap` heaps.
    pub fn until_period(cap: usize) -> Self {
        OctalLimits {
            heap_cap: cap,
            stop_at_period: true,
            min_heaps: 1,
            period: PeriodPolicy::default(),
        }
    }
}

pub fn solve_octal(code: &OctalCode, limits: OctalLimits, config: &SolverConfig) -> QuotientSolution {
    let mut solver = Solver::new(config.clone());
    solve_octal_with(&mut solver, code, limits, |_| {})
}

/// Like [`solve_octal`], calling `each` with every new partial quotient.
pub fn solve_octal_with(
    solver: &mut Solver,
    code: &OctalCode,
    limits: OctalLimits,
    mut each: impl FnMut(&PartialQuotient),
) -> QuotientSolution {
    let mut pq = PartialQuotient::empty();
    let mut orders = Vec::new();
    let mut stop_reason = None;
    let mut stable_from = 1;
    let mut period = None;
    while pq.heaps < limits.heap_cap {
        match extend_one_heap(solver, &pq, code) {
            Ok(next) => {
                // The monoid grew or changed shape: the tail restarts here.
                let changed = orders.is_empty()
                    || next.candidate.order() != pq.candidate.order()
                    || next.candidate.monoid() != &extended_monoid(&pq, &next);
                if changed {
                    stable_from = next.heaps + 1;
                }
                pq = next;
                orders.push(pq.candidate.order());
                each(&pq);
            }
            Err(e) => {
                stop_reason = Some(e.to_string());
                break;
            }
        }
        period = detect_phi_period(pq.candidate.phi(), code, limits.period, stable_from);
        if limits.stop_at_period && period.is_some() && pq.heaps >= limits.min_heaps {
            break;
        }
    }
    if stop_reason.is_none() && pq.heaps < limits.heap_cap && !limits.stop_at_period {
        stop_reason = Some("stopped early".into());
    }
    let labels = (1..=pq.heaps).map(|k| format!("H{k}")).collect();
    QuotientSolution {
        labels,
        solved: pq.heaps,
        converged: stop_reason.is_none(),
        stop_reason,
        orders,
        trace: solver.take_trace(),
        period,
        candidate: pq.candidate,
    }
}

/// The previous monoid with the new generator's value appended, for
/// detecting changes that keep the order.
fn extended_monoid(prev: &PartialQuotient, next: &PartialQuotient) -> crate::algebra::BipartiteMonoid {
    let mut phi = prev.candidate.phi().to_vec();
    phi.push(*next.candidate.phi().last().expect("nonempty"));
    prev.candidate
        .monoid()
        .with_generators(phi, next.candidate.monoid().names().to_vec())
        .unwrap_or_else(|_| next.candidate.monoid().clone())
}
