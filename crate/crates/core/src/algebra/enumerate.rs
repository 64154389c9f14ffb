use super::{AlgebraError, BipartiteMonoid, Element, Presentation};

const NONE: u32 = u32::MAX;

/// Coset-style enumeration of a commutative monoid presentation: nodes are
/// elements, each with one edge per generator, and every relation (plus
/// every commutator) is traced at every node, merging nodes when two paths
/// that the relations equate end in different places.
struct Enumerator {
    ngens: usize,
    edges: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    queue: Vec<(u32, u32)>,
}

impl Enumerator {
    fn new(ngens: usize) -> Self {
        Enumerator {
            ngens,
            edges: vec![NONE; ngens],
            parent: vec![0],
            live: 1,
            queue: Vec::new(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn edge(&self, x: u32, g: usize) -> u32 {
        self.edges[x as usize * self.ngens + g]
    }

    fn step(&mut self, x: u32, g: usize) -> u32 {
        let x = self.find(x);
        let e = self.edge(x, g);
        if e != NONE {
            return self.find(e);
        }
        let y = self.parent.len() as u32;
        self.parent.push(y);
        self.edges.extend(std::iter::repeat_n(NONE, self.ngens));
        self.live += 1;
        self.edges[x as usize * self.ngens + g] = y;
        y
    }

    fn trace(&mut self, x: u32, word: &[usize]) -> u32 {
        word.iter().fold(x, |acc, &g| self.step(acc, g))
    }

    fn coincide(&mut self, a: u32, b: u32) {
        self.queue.push((a, b));
        while let Some((a, b)) = self.queue.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, drop) = (a.min(b), a.max(b));
            self.parent[drop as usize] = keep;
            self.live -= 1;
            for g in 0..self.ngens {
                let d = self.edge(drop, g);
                if d == NONE {
                    continue;
                }
                let k = self.edge(keep, g);
                if k == NONE {
                    self.edges[keep as usize * self.ngens + g] = d;
                } else {
                    self.queue.push((k, d));
                }
            }
        }
    }
}

fn letters(w: &super::MonoidWord) -> Vec<usize> {
    w.generators()
}

/// Enumerates the commutative monoid presented by `pres`.
///
/// Fails with [`AlgebraError::OrderExceedsBound`] when the monoid has more
/// than `bound` elements, or when the enumeration grows far beyond `bound`
/// without closing (infinite presentations end up here).
pub fn monoid_from_presentation(pres: &Presentation, bound: usize) -> Result<BipartiteMonoid, AlgebraError> {
    let ngens = pres.generators().len();
    let mut relators: Vec<(Vec<usize>, Vec<usize>)> =
        pres.relations().iter().map(|(l, r)| (letters(l), letters(r))).collect();
    for g in 0..ngens {
        for h in g + 1..ngens {
            relators.push((vec![g, h], vec![h, g]));
        }
    }
    let work_cap = bound.saturating_mul(32).max(1024);
    let mut e = Enumerator::new(ngens);
    let mut i = 0u32;
    while (i as usize) < e.parent.len() {
        if e.find(i) == i {
            for (l, r) in &relators {
                let a = e.trace(i, l);
                let b = e.trace(i, r);
                if a != b {
                    e.coincide(a, b);
                }
                if e.find(i) != i {
                    break;
                }
            }
            if e.find(i) == i {
                for g in 0..ngens {
                    e.step(i, g);
                }
            }
            if e.live > work_cap {
                return Err(AlgebraError::OrderExceedsBound { bound });
            }
        }
        i += 1;
    }
    if e.live > bound {
        return Err(AlgebraError::OrderExceedsBound { bound });
    }

    // compact live nodes and read off generator actions
    let mut index = vec![NONE; e.parent.len()];
    let mut reps = Vec::with_capacity(e.live);
    for x in 0..e.parent.len() as u32 {
        if e.find(x) == x {
            index[x as usize] = reps.len() as u32;
            reps.push(x);
        }
    }
    let n = reps.len();
    let mut act = vec![0 as Element; n * ngens];
    for (k, &x) in reps.iter().enumerate() {
        for g in 0..ngens {
            let y = e.edge(x, g);
            act[k * ngens + g] = index[e.find(y) as usize];
        }
    }
    // breadth-first spanning tree from the identity gives each element a word
    let mut tree: Vec<(Element, usize)> = vec![(0, usize::MAX); n];
    let mut visited = vec![false; n];
    let mut bfs = vec![0 as Element];
    visited[0] = true;
    let mut j = 0;
    while j < bfs.len() {
        let x = bfs[j];
        for g in 0..ngens {
            let y = act[x as usize * ngens + g];
            if !visited[y as usize] {
                visited[y as usize] = true;
                tree[y as usize] = (x, g);
                bfs.push(y);
            }
        }
        j += 1;
    }
    // table[x][y] by extending table[x][parent(y)] along the tree edge
    let mut table = vec![0 as Element; n * n];
    for x in 0..n {
        table[x * n] = x as Element;
        for &y in &bfs[1..] {
            let (py, g) = tree[y as usize];
            let v = table[x * n + py as usize];
            table[x * n + y as usize] = act[v as usize * ngens + g];
        }
    }
    let gens: Vec<Element> = (0..ngens).map(|g| act[g]).collect();
    BipartiteMonoid::from_table(n, table, 0, gens, pres.generators().to_vec(), vec![false; n])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str, bound: usize) -> Result<usize, AlgebraError> {
        monoid_from_presentation(&s.parse().unwrap(), bound).map(|m| m.order())
    }

    #[test]
    fn day_four_orders() {
        assert_eq!(order("< | >", 10).unwrap(), 1);
        assert_eq!(order("<a | a2=1>", 10).unwrap(), 2);
        assert_eq!(order("<a,b | a2=1, b3=b>", 10).unwrap(), 6);
        assert_eq!(order("<a,b,c | a2=1, b3=b, bc=ab, c2=b2>", 10).unwrap(), 8);
        assert_eq!(order("<a,b,c | a2=1, b3=b, b2c=c, c3=ac2>", 20).unwrap(), 14);
    }

    #[test]
    fn infinite_or_large_presentations_are_rejected() {
        assert_eq!(order("<a | >", 50), Err(AlgebraError::OrderExceedsBound { bound: 50 }));
        assert_eq!(order("<a,b | a2=1>", 50), Err(AlgebraError::OrderExceedsBound { bound: 50 }));
        assert_eq!(order("<a | a7=a>", 5), Err(AlgebraError::OrderExceedsBound { bound: 5 }));
        assert_eq!(order("<a | a7=a>", 7).unwrap(), 7);
    }

    #[test]
    fn enumerated_tables_are_monoids() {
        for s in ["<a,b,c | a2=1, b3=b, b2c=c, c3=ac2>", "<a,b | a3=b2, b3=b, ab=b>", "<a,b | a2=a, b2=a>"] {
            let m = monoid_from_presentation(&s.parse().unwrap(), 100).unwrap();
            assert!(m.check_associative(), "{s}");
        }
    }
}
