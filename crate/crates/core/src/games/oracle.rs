use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::{Alphabet, GameError, Position};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    /// Previous player wins.
    P,
    /// Next player wins.
    N,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::P => write!(f, "P"),
            Outcome::N => write!(f, "N"),
        }
    }
}

/// Brute-force misère outcome oracle with a memo table keyed by the
/// multiset of live generators.
///
/// Independent of every algebraic structure in the crate: outcomes come
/// from game-tree recursion only.
pub struct MisereOracle<'a> {
    alphabet: &'a Alphabet,
    dead: Vec<bool>,
    options: Vec<Vec<Vec<(u16, u16)>>>,
    memo: FxHashMap<Box<[u16]>, bool>,
    budget: usize,
}

impl<'a> MisereOracle<'a> {
    pub fn new(alphabet: &'a Alphabet) -> Self {
        Self::with_budget(alphabet, usize::MAX)
    }

    /// `budget` bounds the number of memoized followers.
    pub fn with_budget(alphabet: &'a Alphabet, budget: usize) -> Self {
        let dead: Vec<bool> = (0..alphabet.len()).map(|i| alphabet.is_dead(i)).collect();
        let options = alphabet
            .generators()
            .iter()
            .map(|g| {
                g.options
                    .iter()
                    .map(|o| {
                        o.support()
                            .filter(|&(i, _)| !dead[i])
                            .map(|(i, c)| (i as u16, c as u16))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        MisereOracle {
            alphabet,
            dead,
            options,
            memo: FxHashMap::default(),
            budget,
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn outcome(&mut self, x: &Position) -> Result<Outcome, GameError> {
        self.alphabet.check(x)?;
        let mut key: Vec<u16> = vec![0; x.span()];
        for (i, c) in x.support() {
            if !self.dead[i] {
                key[i] = c as u16;
            }
        }
        trim(&mut key);
        Ok(if self.is_p(key)? { Outcome::P } else { Outcome::N })
    }

    fn is_p(&mut self, key: Vec<u16>) -> Result<bool, GameError> {
        if key.is_empty() {
            // misère: the player to move from 0 has already won
            return Ok(false);
        }
        if let Some(&v) = self.memo.get(key.as_slice()) {
            return Ok(v);
        }
        if self.memo.len() >= self.budget {
            return Err(GameError::Budget {
                what: "oracle followers",
                limit: self.budget,
            });
        }
        let mut result = true;
        'outer: for i in (0..key.len()).rev() {
            if key[i] == 0 {
                continue;
            }
            for j in 0..self.options[i].len() {
                let mut next = key.clone();
                next[i] -= 1;
                for &(g, c) in &self.options[i][j] {
                    next[g as usize] += c;
                }
                trim(&mut next);
                if self.is_p(next)? {
                    result = false;
                    break 'outer;
                }
            }
        }
        self.memo.insert(key.into_boxed_slice(), result);
        Ok(result)
    }
}

fn trim(v: &mut Vec<u16>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Misère outcome of a single position, computed from scratch.
pub fn misere_outcome(alphabet: &Alphabet, x: &Position) -> Result<Outcome, GameError> {
    MisereOracle::new(alphabet).outcome(x)
}

/// Normal-play Grundy values of every generator, by mex recursion.
pub fn generator_grundy_values(alphabet: &Alphabet) -> Vec<u32> {
    let mut values: Vec<u32> = Vec::with_capacity(alphabet.len());
    for g in alphabet.generators() {
        let mut seen: Vec<u32> = g
            .options
            .iter()
            .map(|o| o.support().fold(0, |acc, (i, c)| if c % 2 == 1 { acc ^ values[i] } else { acc }))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        let mex = seen.iter().enumerate().find(|(i, &v)| *i as u32 != v).map_or(seen.len(), |(i, _)| i);
        values.push(mex as u32);
    }
    values
}

/// Normal-play Grundy value of a position: nim-sum of its generators.
pub fn grundy_value(alphabet: &Alphabet, x: &Position) -> Result<u32, GameError> {
    alphabet.check(x)?;
    let values = generator_grundy_values(&alphabet.prefix(x.span()));
    Ok(x.support().fold(0, |acc, (i, c)| if c % 2 == 1 { acc ^ values[i] } else { acc }))
}
