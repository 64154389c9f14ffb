use serde::Serialize;

use crate::algebra::{refine_partition, BipartiteMonoid, Element, LexTree, IDENTITY};
use crate::games::Alphabet;

use super::candidate::labels;
use super::{verify, Candidate, Failure, NVerification, SearchLimits, SolverError};

/// Which cyclic monoids `<t | t^(n+k) = t^n>` to try for freed generators.
///
/// `n` runs from `n_start` to `n_cap` in steps of `n_step`; after each
/// sweep `k` doubles, up to `k_cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicSchedule {
    pub n_start: u32,
    pub n_step: u32,
    pub n_cap: u32,
    pub k_start: u32,
    pub k_cap: u32,
}

impl Default for CyclicSchedule {
    fn default() -> Self {
        CyclicSchedule {
            n_start: 2,
            n_step: 2,
            n_cap: 8,
            k_start: 2,
            k_cap: 16,
        }
    }
}

impl CyclicSchedule {
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        let mut k = self.k_start.max(1);
        while k <= self.k_cap.max(self.k_start) {
            let mut n = self.n_start;
            while n <= self.n_cap.max(self.n_start) {
                out.push((n, k));
                n += self.n_step.max(1);
            }
            k *= 2;
        }
        out
    }
}

/// Options for [`recalibrate`].
#[derive(Clone, Copy, Debug)]
pub struct RecalibrationPolicy {
    pub schedule: CyclicSchedule,
    /// Try proper subsets (singletons, then pairs) before freeing every
    /// generator of the failure.
    pub subsets: bool,
    /// Largest reduced candidate accepted.
    pub max_elements: usize,
    /// Largest expanded monoid built before reduction.
    pub max_expanded: usize,
}

impl Default for RecalibrationPolicy {
    fn default() -> Self {
        RecalibrationPolicy {
            schedule: CyclicSchedule::default(),
            subsets: true,
            max_elements: 4096,
            max_expanded: 1 << 21,
        }
    }
}

/// Freed generators and cyclic parameters of a recalibration step.
///
/// `n` and `k` come from the schedule; `ns[i]` is the index actually used
/// for `freed[i]`, raised to the generator's multiplicity in the failure so
/// that the failure stays the least preimage of its own image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expansion {
    pub freed: Vec<usize>,
    pub n: u32,
    pub k: u32,
    pub ns: Vec<u32>,
}

impl Expansion {
    pub fn new(freed: Vec<usize>, n: u32, k: u32, failure: &crate::games::Position) -> Self {
        let ns = freed.iter().map(|&j| n.max(failure.count(j))).collect();
        Expansion { freed, n, k, ns }
    }
}

/// `Q- x R_1 x ... x R_m` with `R_i = <t | t^(n_i+k) = t^n_i>`, encoded in
/// mixed radix as `q + |Q-| * (e_1 + r_1 * (e_2 + ...))`.
struct Expanded<'a> {
    q: &'a BipartiteMonoid,
    sub: Vec<Element>,
    sub_index: Vec<u32>,
    ns: Vec<u32>,
    radices: Vec<u32>,
    k: u32,
    size: usize,
}

impl<'a> Expanded<'a> {
    fn new(q: &'a BipartiteMonoid, gens: &[Element], ns: &[u32], k: u32, cap: usize) -> Option<Self> {
        let sub = q.submonoid(gens);
        let radices: Vec<u32> = ns.iter().map(|&n| n + k).collect();
        let mut size = sub.len();
        for &r in &radices {
            size = size.checked_mul(r as usize)?;
            if size > cap {
                return None;
            }
        }
        if size > cap || size > u32::MAX as usize {
            return None;
        }
        let mut sub_index = vec![u32::MAX; q.order()];
        for (i, &x) in sub.iter().enumerate() {
            sub_index[x as usize] = i as u32;
        }
        Some(Expanded {
            q,
            sub,
            sub_index,
            ns: ns.to_vec(),
            radices,
            k,
            size,
        })
    }

    fn embed(&self, x: Element) -> u32 {
        self.sub_index[x as usize]
    }

    fn fresh(&self, i: usize) -> u32 {
        self.radices[..i].iter().fold(self.sub.len() as u32, |s, &r| s * r)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let base = self.sub.len() as u32;
        let (qa, mut ra) = (a % base, a / base);
        let (qb, mut rb) = (b % base, b / base);
        let q = self.sub_index[self.q.mul(self.sub[qa as usize], self.sub[qb as usize]) as usize];
        let mut out = 0;
        let mut stride = 1;
        for (&r, &n) in self.radices.iter().zip(&self.ns) {
            let mut e = ra % r + rb % r;
            if e >= r {
                e = n + (e - n) % self.k;
            }
            out += e * stride;
            stride *= r;
            ra /= r;
            rb /= r;
        }
        q + base * out
    }
}

/// Builds the candidate obtained by freeing `freed` into cyclic monoids
/// `<t | t^(n+k) = t^n>`: P is assigned by induction along lex-least
/// preimages, then the expanded monoid is reduced.
///
/// Returns `Ok(None)` if the expanded or reduced monoid exceeds the
/// policy's size limits.
pub fn expand(
    c: &Candidate,
    alphabet: &Alphabet,
    exp: &Expansion,
    policy: &RecalibrationPolicy,
) -> Result<Option<Candidate>, SolverError> {
    let q = c.monoid();
    let nsym = alphabet.len();
    let mut is_freed = vec![false; nsym];
    for &j in &exp.freed {
        is_freed[j] = true;
    }
    let kept: Vec<Element> = (0..nsym).filter(|&i| !is_freed[i]).map(|i| c.phi()[i]).collect();
    let Some(qs) = Expanded::new(q, &kept, &exp.ns, exp.k, policy.max_expanded) else {
        return Ok(None);
    };
    let phi: Vec<u32> = (0..nsym)
        .map(|i| match exp.freed.iter().position(|&j| j == i) {
            Some(slot) => qs.fresh(slot),
            None => qs.embed(c.phi()[i]),
        })
        .collect();
    let eval = |w: &crate::games::Position| {
        w.support()
            .fold(0u32, |acc, (g, cnt)| (0..cnt).fold(acc, |a, _| qs.mul(a, phi[g])))
    };
    let option_values: Vec<Vec<u32>> = alphabet
        .generators()
        .iter()
        .map(|g| {
            let mut v: Vec<u32> = g.options.iter().map(eval).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();

    let tree = LexTree::build(qs.size, 0, nsym, |x, g| qs.mul(x, phi[g]));
    debug_assert_eq!(tree.order.len(), qs.size);
    let mut in_p = vec![false; qs.size];
    for &x in &tree.order[1..] {
        let word = tree.word(x).expect("reached");
        let mut p = true;
        'gens: for (i, _) in word.support() {
            let rest = eval(&word.without(i));
            for &o in &option_values[i] {
                if in_p[qs.mul(rest, o) as usize] {
                    p = false;
                    break 'gens;
                }
            }
        }
        in_p[x as usize] = p;
    }

    let mut action_gens: Vec<u32> = phi.clone();
    action_gens.sort_unstable();
    action_gens.dedup();
    let actions: Vec<Vec<u32>> = action_gens
        .iter()
        .map(|&g| (0..qs.size as u32).map(|x| qs.mul(x, g)).collect())
        .collect();
    let (class, count) = refine_partition(qs.size, &in_p, &actions);
    if count > policy.max_elements {
        return Ok(None);
    }
    let mut rep = vec![u32::MAX; count];
    for x in (0..qs.size).rev() {
        rep[class[x] as usize] = x as u32;
    }
    let mut table = vec![0; count * count];
    for i in 0..count {
        for j in i..count {
            let v = class[qs.mul(rep[i], rep[j]) as usize];
            table[i * count + j] = v;
            table[j * count + i] = v;
        }
    }
    let p = (0..count).map(|cl| in_p[rep[cl] as usize]).collect();
    let gens = phi.iter().map(|&g| class[g as usize]).collect();
    let monoid = BipartiteMonoid::from_table(count, table, class[IDENTITY as usize], gens, labels(alphabet), p)
        .map_err(SolverError::Algebra)?;
    Candidate::new(monoid, alphabet).map(Some)
}

/// The subsets of the failure's generators to free, in trial order.
pub fn expansion_subsets(support: &[usize], subsets: bool) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    if subsets {
        for &j in support.iter().rev() {
            out.push(vec![j]);
        }
        for a in (0..support.len()).rev() {
            for b in (0..a).rev() {
                out.push(vec![support[b], support[a]]);
            }
        }
    }
    let full = support.to_vec();
    if !out.contains(&full) {
        out.push(full);
    }
    out
}

/// A recalibrated candidate together with its own least failure.
#[derive(Clone, Debug)]
pub struct Recalibrated {
    pub candidate: Candidate,
    pub failure: Option<Failure>,
    pub expansion: Expansion,
    pub attempts: usize,
    /// The verification pass of `candidate`.
    pub verification: NVerification,
}

/// Replaces `c` by a candidate whose least failure is lex-greater than `f`.
///
/// Each `(n, k)` of the schedule is tried against every subset in turn;
/// the first expansion that moves the least failure past `f` wins.
pub fn recalibrate(
    c: &Candidate,
    f: &Failure,
    alphabet: &Alphabet,
    policy: &RecalibrationPolicy,
    limits: SearchLimits,
) -> Result<Recalibrated, SolverError> {
    let support: Vec<usize> = f.position.support().map(|(i, _)| i).collect();
    if support.is_empty() {
        return Err(SolverError::Invalid("failure at the empty position".into()));
    }
    let subsets = expansion_subsets(&support, policy.subsets);
    let mut attempts = 0;
    let mut oversized = 0;
    for (n, k) in policy.schedule.pairs() {
        for freed in &subsets {
            let exp = Expansion::new(freed.clone(), n, k, &f.position);
            attempts += 1;
            let Some(next) = expand(c, alphabet, &exp, policy)? else {
                oversized += 1;
                continue;
            };
            let (failure, verification) = verify(&next, limits)?;
            if failure.as_ref().is_none_or(|g| g.position > f.position) {
                return Ok(Recalibrated {
                    candidate: next,
                    failure,
                    expansion: exp,
                    attempts,
                    verification,
                });
            }
        }
    }
    Err(SolverError::Stuck {
        failure: f.position.to_string(),
        attempts,
        oversized,
    })
}
