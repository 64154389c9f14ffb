use std::collections::BTreeSet;

use super::{GameDag, GameError, NodeId, OctalCode, Position};

/// The move rules of a closed set of games.
#[derive(Clone, Debug)]
pub enum RuleSet {
    /// Heap game over heaps of size `1..=max_heap`.
    Heap { code: OctalCode, max_heap: usize },
    /// Explicit games; `generators` lists the DAG nodes of the alphabet in
    /// ascending (topological) order.
    Dag { dag: GameDag, generators: Vec<NodeId> },
}

impl RuleSet {
    pub fn heap(code: OctalCode, max_heap: usize) -> Self {
        RuleSet::Heap { code, max_heap }
    }

    /// The closed set generated by all nonzero followers of the DAG's
    /// designated summands.
    pub fn closure(dag: GameDag) -> Self {
        let generators = dag.followers(dag.summands());
        RuleSet::Dag { dag, generators }
    }

    pub fn alphabet(&self) -> Result<Alphabet, GameError> {
        match self {
            RuleSet::Heap { code, max_heap } => Ok(Alphabet::for_code(code, *max_heap)),
            RuleSet::Dag { dag, generators } => Alphabet::for_dag(dag, generators),
        }
    }
}

/// One generator of a closed set together with its options, each of which
/// is a position over strictly earlier generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    /// Bean count for heaps, birthday for explicit games.
    pub weight: u32,
    pub options: Vec<Position>,
}

impl Generator {
    /// A generator with no options is game-identical to `0`.
    pub fn is_dead(&self) -> bool {
        self.options.is_empty()
    }
}

/// The generator alphabet `H1, ..., Hn` of a finitely generated closed set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    gens: Vec<Generator>,
}

impl Alphabet {
    pub fn new(gens: Vec<Generator>) -> Result<Self, GameError> {
        for (i, g) in gens.iter().enumerate() {
            if g.options.iter().any(|o| o.span() > i) {
                return Err(GameError::NotTopological(g.label.clone()));
            }
        }
        Ok(Alphabet { gens })
    }

    pub fn for_code(code: &OctalCode, max_heap: usize) -> Self {
        let gens = (1..=max_heap)
            .map(|k| {
                let mut options: Vec<Position> = code
                    .heap_options(k)
                    .into_iter()
                    .map(|heaps| Position::from_generators(heaps.into_iter().map(|h| h - 1)))
                    .collect();
                options.sort();
                options.dedup();
                Generator {
                    label: format!("H{k}"),
                    weight: k as u32,
                    options,
                }
            })
            .collect();
        Alphabet { gens }
    }

    pub fn for_dag(dag: &GameDag, generators: &[NodeId]) -> Result<Self, GameError> {
        let mut slot = vec![None; dag.len()];
        for (i, &n) in generators.iter().enumerate() {
            slot[n] = Some(i);
        }
        let mut gens = Vec::with_capacity(generators.len());
        for &n in generators {
            let mut options = Vec::new();
            for &o in dag.options(n) {
                if o == 0 {
                    options.push(Position::empty());
                } else {
                    let i = slot[o].ok_or_else(|| GameError::NotAGenerator(dag.render(o)))?;
                    options.push(Position::generator(i));
                }
            }
            options.sort();
            options.dedup();
            gens.push(Generator {
                label: dag.render(n),
                weight: dag.birthday(n),
                options,
            });
        }
        Alphabet::new(gens)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    /// The first `n` generators, which again form a closed alphabet.
    pub fn prefix(&self, n: usize) -> Alphabet {
        Alphabet {
            gens: self.gens[..n].to_vec(),
        }
    }

    pub fn is_dead(&self, i: usize) -> bool {
        self.gens[i].is_dead()
    }

    /// Whether every generator in `x` is dead (so `x` is the game `0`).
    pub fn is_null(&self, x: &Position) -> bool {
        x.support().all(|(i, _)| self.is_dead(i))
    }

    pub fn weight(&self, x: &Position) -> u64 {
        x.support().map(|(i, c)| self.gens[i].weight as u64 * c as u64).sum()
    }

    pub fn check(&self, x: &Position) -> Result<(), GameError> {
        if x.span() > self.gens.len() {
            return Err(GameError::OutsideAlphabet {
                index: x.span(),
                bound: self.gens.len(),
            });
        }
        Ok(())
    }

    /// Options of a position: replace one generator by one of its options.
    pub fn options(&self, x: &Position) -> Result<BTreeSet<Position>, GameError> {
        self.check(x)?;
        let mut out = BTreeSet::new();
        for (i, _) in x.support() {
            let rest = x.without(i);
            for o in &self.gens[i].options {
                out.insert(rest.plus(o));
            }
        }
        Ok(out)
    }

    /// A heap position given as a list of heap sizes.
    pub fn heaps(&self, sizes: &[usize]) -> Result<Position, GameError> {
        let mut p = Position::empty();
        for &s in sizes {
            if s == 0 {
                continue;
            }
            if s > self.gens.len() {
                return Err(GameError::OutsideAlphabet {
                    index: s,
                    bound: self.gens.len(),
                });
            }
            p.add(s - 1, 1);
        }
        Ok(p)
    }
}

/// The exact set of positions reachable from `x` in one move.
pub fn position_options(rules: &RuleSet, x: &Position) -> Result<BTreeSet<Position>, GameError> {
    rules.alphabet()?.options(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{parse_game_expr, parse_octal_code};

    fn heaps(v: &[usize]) -> Position {
        Position::from_generators(v.iter().map(|h| h - 1))
    }

    #[test]
    fn octal_position_options() {
        let rules = RuleSet::heap(parse_octal_code("0.26").unwrap(), 8);
        let opts = position_options(&rules, &heaps(&[3])).unwrap();
        assert_eq!(opts, [heaps(&[2]), heaps(&[1])].into_iter().collect());
        let opts = position_options(&rules, &heaps(&[5])).unwrap();
        assert_eq!(opts, [heaps(&[4]), heaps(&[3]), heaps(&[1, 2])].into_iter().collect());

        let rules = RuleSet::heap(parse_octal_code("4.7").unwrap(), 8);
        let opts = position_options(&rules, &heaps(&[3])).unwrap();
        assert_eq!(opts, [heaps(&[2]), heaps(&[1, 1]), heaps(&[1, 2])].into_iter().collect());
    }

    #[test]
    fn options_of_sums_and_dead_heaps() {
        let rules = RuleSet::heap(parse_octal_code("0.26").unwrap(), 8);
        assert!(position_options(&rules, &heaps(&[1, 1])).unwrap().is_empty());
        let opts = position_options(&rules, &heaps(&[2, 2])).unwrap();
        assert_eq!(opts, [heaps(&[1, 2])].into_iter().collect());
        assert!(position_options(&rules, &heaps(&[9])).is_err());
    }

    #[test]
    fn dag_alphabet() {
        let rules = RuleSet::closure(parse_game_expr("*2").unwrap());
        let a = rules.alphabet().unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.get(0).label, "*");
        assert_eq!(a.get(1).options, vec![Position::empty(), Position::generator(0)]);
    }
}
