use serde::Serialize;

use crate::algebra::{extend_homomorphism, is_reduced, BipartiteMonoid, Element};
use crate::games::{Alphabet, MisereOracle, Outcome, Position};
use crate::solver::Candidate;

use super::{Catalog, CatalogError, PublishedSolution};

/// Every heap position with at most `max_total` beans in all, as exponent
/// vectors over `H1..H_max_total`, in lex order. The empty position is
/// included.
pub fn heap_multisets(max_total: usize) -> Vec<Position> {
    fn go(max_heap: usize, left: usize, counts: &mut Vec<u32>, out: &mut Vec<Position>) {
        out.push(Position::from_counts(counts.clone()));
        for k in 1..=max_heap.min(left) {
            counts[k - 1] += 1;
            go(k, left - k, counts, out);
            counts[k - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    go(max_total, max_total, &mut vec![0; max_total], &mut out);
    out.sort();
    out
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyLimits {
    /// Largest total bean count swept.
    pub beans: usize,
    /// Largest monoid order built from a presentation.
    pub max_order: usize,
    /// Oracle memo entries.
    pub oracle_budget: usize,
}

impl Default for VerifyLimits {
    fn default() -> Self {
        VerifyLimits {
            beans: 20,
            max_order: 4096,
            oracle_budget: 50_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub code: String,
    pub beans: usize,
    /// Positions swept, the empty one included.
    pub positions: usize,
    pub consistent: bool,
    /// The lex-least position whose outcome contradicts the table.
    pub witness: Option<String>,
    pub reduced: bool,
    pub order: usize,
    pub claimed_name: Option<String>,
    pub iso_match: Option<bool>,
    /// Why the check could not run to the end.
    pub error: Option<String>,
}

/// Checks a published solution: the presented monoid is reduced, and for
/// every position of at most `limits.beans` beans the table's value lies in
/// P exactly when the position is a P-position. A claimed day-4 name is
/// checked by isomorphism.
pub fn verify_published(rec: &PublishedSolution, limits: VerifyLimits) -> VerificationReport {
    let mut report = VerificationReport {
        code: rec.code.clone(),
        beans: limits.beans,
        positions: 0,
        consistent: false,
        witness: None,
        reduced: false,
        order: 0,
        claimed_name: rec.claimed_name.clone(),
        iso_match: None,
        error: None,
    };
    if let Err(e) = sweep(rec, limits, &mut report) {
        report.consistent = false;
        report.error = Some(e.to_string());
    }
    report
}

fn sweep(rec: &PublishedSolution, limits: VerifyLimits, report: &mut VerificationReport) -> Result<(), CatalogError> {
    let m = rec.monoid(limits.max_order)?;
    report.order = m.order();
    report.reduced = is_reduced(&m);
    if let Some(name) = &rec.claimed_name {
        let q = Catalog::builtin()
            .quotient(name)
            .ok_or_else(|| CatalogError::Data(format!("unknown quotient name {name}")))?;
        report.iso_match = Some(crate::algebra::iso_check(&m, &q.monoid()?)?.is_some());
    }
    let code = rec.octal_code()?;
    let alphabet = Alphabet::for_code(&code, limits.beans);
    let phi = rec.phi_values(&m, limits.beans)?;
    let mut oracle = MisereOracle::with_budget(&alphabet, limits.oracle_budget);
    let positions = heap_multisets(limits.beans);
    report.positions = positions.len();
    for x in &positions {
        let predicted = m.in_p(m.eval_with(&phi, x));
        if predicted != (oracle.outcome(x)? == Outcome::P) {
            report.witness = Some(x.to_string());
            return Ok(());
        }
    }
    report.consistent = true;
    Ok(())
}

/// How a computed candidate compares with a published solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateMatch {
    pub heaps: usize,
    /// The map `Phi(H_k) -> published Phi(H_k)` extends to an isomorphism
    /// of bipartite monoids.
    pub isomorphic: bool,
    /// First heap whose value disagrees under the best partial match, when
    /// the orders agree but no isomorphism exists.
    pub first_mismatch: Option<usize>,
}

/// Compares `c` (solved on heaps `1..=c.len()`) with `rec`: the computed
/// quotient must be isomorphic to the published one by a map sending each
/// computed `Phi(H_k)` to the published `Phi(H_k)`.
pub fn match_candidate(c: &Candidate, rec: &PublishedSolution, max_order: usize) -> Result<CandidateMatch, CatalogError> {
    let m = rec.monoid(max_order)?;
    let images = rec.phi_values(&m, c.len())?;
    let isomorphic = extend_homomorphism(c.monoid(), &m, &images).is_some_and(|map| is_iso(c.monoid(), &m, &map));
    let first_mismatch = if isomorphic {
        None
    } else {
        (1..=c.len()).find(|&k| {
            let sub = (0..k).map(|i| c.phi()[i]).collect::<Vec<_>>();
            !prefix_consistent(c.monoid(), &m, &sub, &images[..k])
        })
    };
    Ok(CandidateMatch {
        heaps: c.len(),
        isomorphic,
        first_mismatch,
    })
}

fn is_iso(m1: &BipartiteMonoid, m2: &BipartiteMonoid, map: &[Element]) -> bool {
    if m1.order() != m2.order() {
        return false;
    }
    let mut hit = vec![false; m2.order()];
    for (x, &y) in map.iter().enumerate() {
        if hit[y as usize] || m1.in_p(x as Element) != m2.in_p(y) {
            return false;
        }
        hit[y as usize] = true;
    }
    true
}

/// Whether `gens[i] -> images[i]` extends to an injective, P-preserving
/// homomorphism on the submonoid the `gens` generate.
fn prefix_consistent(m1: &BipartiteMonoid, m2: &BipartiteMonoid, gens: &[Element], images: &[Element]) -> bool {
    let mut map = vec![u32::MAX; m1.order()];
    let mut back = vec![u32::MAX; m2.order()];
    map[0] = 0;
    back[0] = 0;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&g, &h) in gens.iter().zip(images) {
            let y = m1.mul(x, g);
            let fy = m2.mul(map[x as usize], h);
            if map[y as usize] == u32::MAX {
                if back[fy as usize] != u32::MAX || m1.in_p(y) != m2.in_p(fy) {
                    return false;
                }
                map[y as usize] = fy;
                back[fy as usize] = y;
                queue.push(y);
            } else if map[y as usize] != fy {
                return false;
            }
        }
        i += 1;
    }
    true
}
