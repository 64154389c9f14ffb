use std::cmp::Ordering;
use std::fmt;

/// A position of a finitely generated closed set of games: an exponent
/// vector over the generator alphabet `H1, H2, ...`.
///
/// Trailing zero exponents are never stored, so two positions are equal
/// exactly when they contain the same generators with the same
/// multiplicities, regardless of the alphabet size they were built for.
///
/// The ordering is the lexicographic order used throughout the solver:
/// exponent vectors are compared at the *largest* index where they differ.
/// Every option of a position is strictly smaller than the position itself.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Position {
    counts: Vec<u32>,
}

impl Position {
    pub fn empty() -> Self {
        Position { counts: Vec::new() }
    }

    pub fn from_counts(mut counts: Vec<u32>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Position { counts }
    }

    /// A single copy of generator `index` (zero based).
    pub fn generator(index: usize) -> Self {
        let mut counts = vec![0; index + 1];
        counts[index] = 1;
        Position { counts }
    }

    /// Builds a position from a list of generator indices, repetitions allowed.
    pub fn from_generators<I: IntoIterator<Item = usize>>(gens: I) -> Self {
        let mut p = Position::empty();
        for g in gens {
            p.add(g, 1);
        }
        p
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn count(&self, index: usize) -> u32 {
        self.counts.get(index).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// One past the largest generator index present.
    pub fn span(&self) -> usize {
        self.counts.len()
    }

    /// Total number of generators, counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// Iterates over `(generator, multiplicity)` pairs with nonzero multiplicity.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i, c))
    }

    pub fn add(&mut self, index: usize, times: u32) {
        if times == 0 {
            return;
        }
        if self.counts.len() <= index {
            self.counts.resize(index + 1, 0);
        }
        self.counts[index] += times;
    }

    /// Removes one copy of generator `index`. Panics if it is absent.
    pub fn remove(&mut self, index: usize) {
        assert!(self.count(index) > 0, "generator {index} not present");
        self.counts[index] -= 1;
        while self.counts.last() == Some(&0) {
            self.counts.pop();
        }
    }

    pub fn plus(&self, other: &Position) -> Position {
        let mut out = self.clone();
        for (i, c) in other.support() {
            out.add(i, c);
        }
        out
    }

    pub fn with(&self, index: usize) -> Position {
        let mut out = self.clone();
        out.add(index, 1);
        out
    }

    pub fn without(&self, index: usize) -> Position {
        let mut out = self.clone();
        out.remove(index);
        out
    }

    /// Drops every generator for which `keep` is false.
    pub fn retain(&self, keep: impl Fn(usize) -> bool) -> Position {
        let counts = self
            .counts
            .iter()
            .enumerate()
            .map(|(i, &c)| if keep(i) { c } else { 0 })
            .collect();
        Position::from_counts(counts)
    }

    /// Lists the generators with repetition, in increasing index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, c) in self.support() {
            out.extend(std::iter::repeat_n(i, c as usize));
        }
        out
    }
}

impl Ord for Position {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.counts.len().cmp(&other.counts.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.counts.len()).rev() {
            match self.counts[i].cmp(&other.counts[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Position {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders as `H1+H2+H2`, or `0` for the empty position.
impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.support() {
            for _ in 0..c {
                if !first {
                    write!(f, "+")?;
                }
                first = false;
                write!(f, "H{}", i + 1)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_compares_largest_index_first() {
        let a = Position::from_counts(vec![100, 0, 0]);
        let b = Position::from_counts(vec![0, 1]);
        assert!(a < b);
        assert!(Position::from_counts(vec![0, 1, 1]) > Position::from_counts(vec![9, 9]));
        assert!(Position::from_counts(vec![2, 1]) > Position::from_counts(vec![1, 1]));
        let c = Position::from_counts(vec![0, 0, 1]);
        assert!(c > a);
        assert!(Position::empty() < Position::generator(0));
        assert_eq!(
            Position::from_counts(vec![1, 2, 0, 0]),
            Position::from_counts(vec![1, 2])
        );
    }

    #[test]
    fn lex_order_is_translation_invariant() {
        let x = Position::from_counts(vec![3, 1]);
        let y = Position::from_counts(vec![0, 2]);
        let z = Position::from_counts(vec![5, 0, 1]);
        assert_eq!(x.cmp(&y), x.plus(&z).cmp(&y.plus(&z)));
    }

    #[test]
    fn display() {
        assert_eq!(Position::from_generators([2, 2, 4]).to_string(), "H3+H3+H5");
        assert_eq!(Position::empty().to_string(), "0");
    }
}
