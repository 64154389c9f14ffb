use crate::bitset::ElemSet;
use crate::games::Position;

use super::AlgebraError;

/// Index of an element inside an explicit monoid. The identity is always 0.
pub type Element = u32;

pub const IDENTITY: Element = 0;

/// A finite commutative monoid with a distinguished subset `P`, stored as a
/// full multiplication table.
///
/// The generator list is part of the value: element indices are assigned in
/// the lexicographic order of the least generator word for each element, so
/// two monoids built from the same data compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteMonoid {
    order: usize,
    table: Vec<Element>,
    generators: Vec<Element>,
    names: Vec<String>,
    p: Vec<bool>,
}

impl BipartiteMonoid {
    /// The one-element monoid with empty `P`.
    pub fn trivial() -> Self {
        BipartiteMonoid {
            order: 1,
            table: vec![IDENTITY],
            generators: Vec::new(),
            names: Vec::new(),
            p: vec![false],
        }
    }

    /// Builds a monoid from an explicit table and renumbers its elements
    /// canonically. `names` gives one name per generator.
    ///
    /// Checks identity, closure, commutativity and generation; associativity
    /// is checked separately by [`BipartiteMonoid::check_associative`].
    pub fn from_table(
        order: usize,
        table: Vec<Element>,
        identity: Element,
        generators: Vec<Element>,
        names: Vec<String>,
        p: Vec<bool>,
    ) -> Result<Self, AlgebraError> {
        if order == 0 || table.len() != order * order || p.len() != order || names.len() != generators.len() {
            return Err(AlgebraError::Malformed("table dimensions".into()));
        }
        if table.iter().chain(&generators).any(|&x| x as usize >= order) || identity as usize >= order {
            return Err(AlgebraError::Malformed("element out of range".into()));
        }
        for x in 0..order {
            if table[identity as usize * order + x] != x as Element {
                return Err(AlgebraError::Malformed("identity does not act trivially".into()));
            }
            for y in x + 1..order {
                if table[x * order + y] != table[y * order + x] {
                    return Err(AlgebraError::Malformed(format!("{x}*{y} is not commutative")));
                }
            }
        }
        if p[identity as usize] {
            return Err(AlgebraError::Malformed("identity lies in P".into()));
        }
        let raw = BipartiteMonoid {
            order,
            table,
            generators,
            names,
            p,
        };
        let tree = LexTree::build(order, identity, raw.generators.len(), |x, g| raw.mul(x, raw.generators[g]));
        if tree.order.len() != order {
            return Err(AlgebraError::Malformed("generators do not generate the monoid".into()));
        }
        Ok(raw.relabel(&tree.order))
    }

    /// Renumbers elements so that `new_order[i]` becomes element `i`.
    fn relabel(&self, new_order: &[Element]) -> Self {
        let n = self.order;
        let mut inv = vec![0; n];
        for (i, &x) in new_order.iter().enumerate() {
            inv[x as usize] = i as Element;
        }
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = inv[self.mul(new_order[i], new_order[j]) as usize];
            }
        }
        BipartiteMonoid {
            order: n,
            table,
            generators: self.generators.iter().map(|&g| inv[g as usize]).collect(),
            names: self.names.clone(),
            p: new_order.iter().map(|&x| self.p[x as usize]).collect(),
        }
    }

    /// Same monoid, different generator list; elements are renumbered for
    /// the new list.
    pub fn with_generators(&self, generators: Vec<Element>, names: Vec<String>) -> Result<Self, AlgebraError> {
        Self::from_table(self.order, self.table.clone(), IDENTITY, generators, names, self.p.clone())
    }

    pub fn with_p(&self, p: Vec<bool>) -> Result<Self, AlgebraError> {
        if p.len() != self.order {
            return Err(AlgebraError::Malformed("P length".into()));
        }
        if p[IDENTITY as usize] {
            return Err(AlgebraError::Malformed("identity lies in P".into()));
        }
        Ok(BipartiteMonoid { p, ..self.clone() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.table[x as usize * self.order + y as usize]
    }

    pub fn pow(&self, x: Element, k: u32) -> Element {
        (0..k).fold(IDENTITY, |acc, _| self.mul(acc, x))
    }

    pub fn in_p(&self, x: Element) -> bool {
        self.p[x as usize]
    }

    pub fn p_mask(&self) -> &[bool] {
        &self.p
    }

    pub fn p_set(&self) -> ElemSet {
        ElemSet::from_iter_with(self.order, self.p_elements())
    }

    pub fn p_elements(&self) -> Vec<Element> {
        (0..self.order as Element).filter(|&x| self.p[x as usize]).collect()
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        0..self.order as Element
    }

    /// Value of an exponent vector over the generator list.
    pub fn eval(&self, word: &Position) -> Element {
        word.support().fold(IDENTITY, |acc, (g, c)| {
            let gen = self.generators[g];
            (0..c).fold(acc, |a, _| self.mul(a, gen))
        })
    }

    /// Value of an exponent vector under an arbitrary assignment.
    pub fn eval_with(&self, assignment: &[Element], word: &Position) -> Element {
        word.support().fold(IDENTITY, |acc, (g, c)| {
            (0..c).fold(acc, |a, _| self.mul(a, assignment[g]))
        })
    }

    /// Elements of the submonoid generated by `gens`, identity first.
    pub fn submonoid(&self, gens: &[Element]) -> Vec<Element> {
        let mut seen = vec![false; self.order];
        seen[IDENTITY as usize] = true;
        let mut out = vec![IDENTITY];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// The lexicographically least generator word of every element.
    pub fn normal_forms(&self) -> Vec<Position> {
        let tree = LexTree::build(self.order, IDENTITY, self.generators.len(), |x, g| {
            self.mul(x, self.generators[g])
        });
        (0..self.order as Element).map(|x| tree.word(x).expect("generated")).collect()
    }

    /// Exhaustive associativity check, `O(n^3)`.
    pub fn check_associative(&self) -> bool {
        let n = self.order as Element;
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z)))))
    }

    /// `(index, period)` of the cyclic submonoid generated by `x`.
    pub fn cyclic_type(&self, x: Element) -> (u32, u32) {
        let mut seen = vec![u32::MAX; self.order];
        let mut cur = IDENTITY;
        let mut k = 0;
        loop {
            if seen[cur as usize] != u32::MAX {
                let start = seen[cur as usize];
                return (start, k - start);
            }
            seen[cur as usize] = k;
            cur = self.mul(cur, x);
            k += 1;
        }
    }
}

/// Lexicographically least words of every reachable element of a monoid
/// given by generator actions, where later generators are more significant.
///
/// Elements reachable with generators `0..j` are extended by powers of
/// generator `j` in increasing exponent, scanning bases in their own lex
/// order; a first arrival is then the least word for its element, and the
/// discovery sequence is itself the lex order of the words.
pub(crate) struct LexTree {
    /// Reachable elements in lex order of their least words.
    pub order: Vec<Element>,
    /// `(base, generator, exponent)`: word = word(base) + exponent * generator.
    pub parent: Vec<Option<(Element, usize, u32)>>,
    pub reached: Vec<bool>,
}

impl LexTree {
    pub fn build(size: usize, identity: Element, ngens: usize, act: impl Fn(Element, usize) -> Element) -> Self {
        let mut reached = vec![false; size];
        let mut parent = vec![None; size];
        reached[identity as usize] = true;
        let mut order = vec![identity];
        for g in 0..ngens {
            let base = order.clone();
            let mut cur = base.clone();
            for e in 1.. {
                let mut fresh = false;
                for (i, c) in cur.iter_mut().enumerate() {
                    *c = act(*c, g);
                    if !reached[*c as usize] {
                        reached[*c as usize] = true;
                        parent[*c as usize] = Some((base[i], g, e));
                        order.push(*c);
                        fresh = true;
                    }
                }
                if !fresh {
                    break;
                }
            }
        }
        LexTree { order, parent, reached }
    }

    pub fn word(&self, x: Element) -> Option<Position> {
        if !self.reached[x as usize] {
            return None;
        }
        let mut p = Position::empty();
        let mut cur = x;
        while let Some((base, g, e)) = self.parent[cur as usize] {
            p.add(g, e);
            cur = base;
        }
        Some(p)
    }
}

/// For every element reachable under `phi`, the lex-least position mapping
/// to it; unreachable elements map to `None`.
pub fn lex_least_preimages(m: &BipartiteMonoid, phi: &[Element]) -> Vec<Option<Position>> {
    let tree = LexTree::build(m.order(), IDENTITY, phi.len(), |x, g| m.mul(x, phi[g]));
    (0..m.order() as Element).map(|x| tree.word(x)).collect()
}
