use super::{AlgebraError, BipartiteMonoid, Element, IDENTITY};

pub const DEFAULT_ISO_CAP: usize = 512;

/// The homomorphism `m1 -> m2` sending generator `i` of `m1` to `images[i]`,
/// if the assignment extends to one. P membership is not checked.
pub fn extend_homomorphism(m1: &BipartiteMonoid, m2: &BipartiteMonoid, images: &[Element]) -> Option<Vec<Element>> {
    extend_partial(m1, m2, m1.generators(), images).filter(|map| map.iter().all(|&y| y != u32::MAX))
}

/// Extends `gens[i] -> images[i]` multiplicatively over the submonoid the
/// `gens` generate; unreached elements stay `u32::MAX`.
fn extend_partial(
    m1: &BipartiteMonoid,
    m2: &BipartiteMonoid,
    gens: &[Element],
    images: &[Element],
) -> Option<Vec<Element>> {
    let mut map = vec![u32::MAX; m1.order()];
    map[IDENTITY as usize] = IDENTITY;
    let mut queue = vec![IDENTITY];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&g, &h) in gens.iter().zip(images) {
            let y = m1.mul(x, g);
            let fy = m2.mul(map[x as usize], h);
            match map[y as usize] {
                u32::MAX => {
                    map[y as usize] = fy;
                    queue.push(y);
                }
                v if v != fy => return None,
                _ => {}
            }
        }
        i += 1;
    }
    Some(map)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Invariant {
    in_p: bool,
    cyclic: (u32, u32),
    p_multipliers: usize,
    stabilizer: usize,
    ideal: usize,
}

fn invariants(m: &BipartiteMonoid) -> Vec<Invariant> {
    m.elements()
        .map(|x| {
            let mut row: Vec<Element> = m.elements().map(|z| m.mul(x, z)).collect();
            let p_multipliers = row.iter().filter(|&&y| m.in_p(y)).count();
            let stabilizer = row.iter().filter(|&&y| y == x).count();
            row.sort_unstable();
            row.dedup();
            Invariant {
                in_p: m.in_p(x),
                cyclic: m.cyclic_type(x),
                p_multipliers,
                stabilizer,
                ideal: row.len(),
            }
        })
        .collect()
}

/// An isomorphism of bipartite monoids `m1 -> m2` (carrying P onto P), if
/// one exists, for orders up to [`DEFAULT_ISO_CAP`].
pub fn iso_check(m1: &BipartiteMonoid, m2: &BipartiteMonoid) -> Result<Option<Vec<Element>>, AlgebraError> {
    iso_check_with_cap(m1, m2, DEFAULT_ISO_CAP)
}

pub fn iso_check_with_cap(
    m1: &BipartiteMonoid,
    m2: &BipartiteMonoid,
    cap: usize,
) -> Result<Option<Vec<Element>>, AlgebraError> {
    for m in [m1, m2] {
        if m.order() > cap {
            return Err(AlgebraError::TooLarge { order: m.order(), cap });
        }
    }
    if m1.order() != m2.order() || m1.p_elements().len() != m2.p_elements().len() {
        return Ok(None);
    }
    let (inv1, inv2) = (invariants(m1), invariants(m2));
    let (mut s1, mut s2) = (inv1.clone(), inv2.clone());
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(None);
    }
    // a generating set of m1 without redundant members
    let mut gens: Vec<Element> = Vec::new();
    let mut span = vec![IDENTITY];
    for &g in m1.generators() {
        if !span.contains(&g) {
            gens.push(g);
            span = m1.submonoid(&gens);
        }
    }
    let candidates: Vec<Vec<Element>> = gens
        .iter()
        .map(|&g| m2.elements().filter(|&y| inv2[y as usize] == inv1[g as usize]).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(m1, m2, &gens, &candidates, &mut images))
}

fn search(
    m1: &BipartiteMonoid,
    m2: &BipartiteMonoid,
    gens: &[Element],
    candidates: &[Vec<Element>],
    images: &mut Vec<Element>,
) -> Option<Vec<Element>> {
    let k = images.len();
    if k == gens.len() {
        let map = extend_partial(m1, m2, gens, images)?;
        return is_isomorphism(m1, m2, &map).then_some(map);
    }
    for &y in &candidates[k] {
        images.push(y);
        let ok = extend_partial(m1, m2, &gens[..=k], images).is_some_and(|map| injective_and_p(m1, m2, &map));
        if ok {
            if let Some(found) = search(m1, m2, gens, candidates, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

fn injective_and_p(m1: &BipartiteMonoid, m2: &BipartiteMonoid, map: &[Element]) -> bool {
    let mut hit = vec![false; m2.order()];
    for (x, &y) in map.iter().enumerate() {
        if y == u32::MAX {
            continue;
        }
        if hit[y as usize] || m1.in_p(x as Element) != m2.in_p(y) {
            return false;
        }
        hit[y as usize] = true;
    }
    true
}

fn is_isomorphism(m1: &BipartiteMonoid, m2: &BipartiteMonoid, map: &[Element]) -> bool {
    if map.len() != m2.order() || map.contains(&u32::MAX) || !injective_and_p(m1, m2, map) {
        return false;
    }
    m1.elements()
        .all(|x| m1.elements().all(|y| map[m1.mul(x, y) as usize] == m2.mul(map[x as usize], map[y as usize])))
}
