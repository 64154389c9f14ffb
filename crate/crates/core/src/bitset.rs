//! Fixed-capacity sets of monoid elements.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn new(capacity: usize) -> Self {
        ElemSet {
            words: vec![0; capacity.div_ceil(64)],
        }
    }

    pub fn from_iter_with<I: IntoIterator<Item = u32>>(capacity: usize, items: I) -> Self {
        let mut s = ElemSet::new(capacity);
        for x in items {
            s.insert(x);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, x: u32) -> bool {
        let (w, b) = ((x / 64) as usize, x % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        let w = (x / 64) as usize;
        w < self.words.len() && self.words[w] >> (x % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(i as u32 * 64 + b)
            })
        })
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
