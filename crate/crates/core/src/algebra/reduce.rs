use rustc_hash::FxHashMap;

use super::{BipartiteMonoid, Element};

/// Coarsest partition of `0..size` that separates `p` from its complement
/// and is stable under every action in `actions`.
///
/// Returns the class of each element, numbered by first occurrence, and the
/// number of classes. When the actions generate the monoid, the classes are
/// exactly the indistinguishability classes `x ~ y iff xz in P <=> yz in P`.
pub fn refine_partition(size: usize, p: &[bool], actions: &[Vec<Element>]) -> (Vec<u32>, usize) {
    let mut class = vec![0u32; size];
    let mut count = renumber(&mut class, |x| p[x] as u32);
    loop {
        let prev = class.clone();
        let mut sig: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
        let mut next = vec![0u32; size];
        for x in 0..size {
            let mut key = Vec::with_capacity(actions.len() + 1);
            key.push(prev[x]);
            key.extend(actions.iter().map(|a| prev[a[x] as usize]));
            let fresh = sig.len() as u32;
            next[x] = *sig.entry(key).or_insert(fresh);
        }
        let new_count = sig.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    (class, count)
}

fn renumber(class: &mut [u32], key: impl Fn(usize) -> u32) -> usize {
    let mut ids: FxHashMap<u32, u32> = FxHashMap::default();
    for (x, c) in class.iter_mut().enumerate() {
        let fresh = ids.len() as u32;
        *c = *ids.entry(key(x)).or_insert(fresh);
    }
    ids.len()
}

/// Quotient of `m` by indistinguishability, with the factor map.
pub fn reduce_bipartite(m: &BipartiteMonoid) -> (BipartiteMonoid, Vec<Element>) {
    let n = m.order();
    let actions: Vec<Vec<Element>> = m
        .generators()
        .iter()
        .map(|&g| m.elements().map(|x| m.mul(x, g)).collect())
        .collect();
    let (class, count) = refine_partition(n, m.p_mask(), &actions);
    let mut rep = vec![u32::MAX; count];
    for x in (0..n).rev() {
        rep[class[x] as usize] = x as Element;
    }
    let mut table = vec![0; count * count];
    for i in 0..count {
        for j in 0..count {
            table[i * count + j] = class[m.mul(rep[i], rep[j]) as usize];
        }
    }
    let p = (0..count).map(|c| m.in_p(rep[c])).collect();
    let gens = m.generators().iter().map(|&g| class[g as usize]).collect();
    let reduced = BipartiteMonoid::from_table(count, table, class[0], gens, m.names().to_vec(), p)
        .expect("quotient of a valid monoid is valid");
    // `reduced` is renumbered canonically; locate each class in it
    let nf_class = class_to_canonical(m, &class, &reduced);
    let map = (0..n).map(|x| nf_class[class[x] as usize]).collect();
    (reduced, map)
}

/// Canonical element of `reduced` for each class, located through the
/// generator words of the class representatives.
fn class_to_canonical(m: &BipartiteMonoid, class: &[u32], reduced: &BipartiteMonoid) -> Vec<Element> {
    let count = reduced.order();
    let mut out = vec![u32::MAX; count];
    for (x, w) in m.normal_forms().into_iter().enumerate() {
        let c = class[x] as usize;
        if out[c] == u32::MAX {
            out[c] = reduced.eval(&w);
        }
    }
    out
}

pub fn is_reduced(m: &BipartiteMonoid) -> bool {
    reduce_bipartite(m).0.order() == m.order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{monoid_from_presentation, parse_word, Presentation};

    fn with_p(pres: &str, p: &[&str]) -> BipartiteMonoid {
        let pres: Presentation = pres.parse().unwrap();
        let m = monoid_from_presentation(&pres, 100).unwrap();
        let mut mask = vec![false; m.order()];
        for w in p {
            mask[m.eval(&parse_word(w, pres.generators()).unwrap()) as usize] = true;
        }
        m.with_p(mask).unwrap()
    }

    #[test]
    fn klein_four_collapses() {
        let m = with_p("<a,b | a2=1, b2=1>", &["a", "ab"]);
        assert!(!is_reduced(&m));
        let (r, map) = reduce_bipartite(&m);
        assert_eq!(r.order(), 2);
        assert_eq!(r.p_elements().len(), 1);
        let b = m.generators()[1];
        assert_eq!(map[b as usize], map[0]);
        for x in m.elements() {
            assert_eq!(m.in_p(x), r.in_p(map[x as usize]));
            for y in m.elements() {
                assert_eq!(map[m.mul(x, y) as usize], r.mul(map[x as usize], map[y as usize]));
            }
        }
    }

    #[test]
    fn figure_quotients_are_reduced() {
        let t1 = with_p("<a | a2=1>", &["a"]);
        assert!(is_reduced(&t1));
        let r8 = with_p("<a,b,c | a2=1, b3=b, bc=ab, c2=b2>", &["a", "b2"]);
        let (r, map) = reduce_bipartite(&r8);
        assert_eq!(r, r8);
        assert_eq!(map, (0..8).collect::<Vec<_>>());
        let r14 = with_p("<a,b,c | a2=1, b3=b, b2c=c, c3=ac2>", &["a", "b2", "bc", "c2"]);
        assert!(is_reduced(&r14));
    }

    #[test]
    fn empty_p_gives_trivial_monoid() {
        let m = with_p("<a,b | a2=1, b3=b>", &[]);
        let (r, map) = reduce_bipartite(&m);
        assert_eq!(r.order(), 1);
        assert!(map.iter().all(|&x| x == 0));
    }
}
