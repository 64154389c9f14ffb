use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{BipartiteMonoid, Element, IDENTITY};
use crate::games::{Alphabet, Outcome, Position};

use super::SolverError;

/// A candidate quotient `(Q, P, Phi)` for an alphabet.
///
/// The monoid's generator list is `Phi(H1), ..., Phi(Hn)`, so its elements
/// are numbered in the lex order of their least preimages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    monoid: BipartiteMonoid,
    option_images: Vec<Vec<Element>>,
    dead: Vec<bool>,
}

impl Candidate {
    /// Wraps a monoid whose generators are the images of the alphabet.
    pub fn new(monoid: BipartiteMonoid, alphabet: &Alphabet) -> Result<Self, SolverError> {
        if monoid.generators().len() != alphabet.len() {
            return Err(SolverError::Invalid(format!(
                "{} generator images for an alphabet of {}",
                monoid.generators().len(),
                alphabet.len()
            )));
        }
        let dead: Vec<bool> = (0..alphabet.len()).map(|i| alphabet.is_dead(i)).collect();
        for (i, &d) in dead.iter().enumerate() {
            if d && monoid.generators()[i] != IDENTITY {
                return Err(SolverError::Invalid(format!("dead generator {} must map to 1", alphabet.get(i).label)));
            }
        }
        let option_images = alphabet
            .generators()
            .iter()
            .map(|g| {
                let mut v: Vec<Element> = g.options.iter().map(|o| monoid.eval(o)).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        Ok(Candidate {
            monoid,
            option_images,
            dead,
        })
    }

    /// The trivial candidate; valid only when every generator is dead.
    pub fn trivial(alphabet: &Alphabet) -> Result<Self, SolverError> {
        let m = BipartiteMonoid::trivial()
            .with_generators(vec![IDENTITY; alphabet.len()], labels(alphabet))
            .map_err(SolverError::Algebra)?;
        Candidate::new(m, alphabet)
    }

    /// Same `(Q, P)` with `Phi` extended by one more generator value.
    pub fn extended(&self, value: Element, alphabet: &Alphabet) -> Result<Self, SolverError> {
        let mut phi = self.phi().to_vec();
        phi.push(value);
        let m = self
            .monoid
            .with_generators(phi, labels(alphabet))
            .map_err(SolverError::Algebra)?;
        Candidate::new(m, alphabet)
    }

    pub fn monoid(&self) -> &BipartiteMonoid {
        &self.monoid
    }

    pub fn phi(&self) -> &[Element] {
        self.monoid.generators()
    }

    pub fn order(&self) -> usize {
        self.monoid.order()
    }

    /// `Phi''H` for generator `i`, sorted.
    pub fn option_images(&self, i: usize) -> &[Element] {
        &self.option_images[i]
    }

    pub fn is_dead(&self, i: usize) -> bool {
        self.dead[i]
    }

    pub fn len(&self) -> usize {
        self.dead.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dead.is_empty()
    }

    pub fn value(&self, x: &Position) -> Element {
        self.monoid.eval(x)
    }

    pub fn predicted_outcome(&self, x: &Position) -> Outcome {
        if self.monoid.in_p(self.value(x)) {
            Outcome::P
        } else {
            Outcome::N
        }
    }
}

pub(crate) fn labels(alphabet: &Alphabet) -> Vec<String> {
    alphabet.generators().iter().map(|g| g.label.clone()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FailureKind {
    /// `Phi(X)` in P but some option also in P.
    P,
    /// `Phi(X)` outside P and no option in P.
    N,
}

/// A position whose local outcome the candidate gets wrong.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub position: Position,
    pub kind: FailureKind,
}

impl Ord for Failure {
    fn cmp(&self, other: &Self) -> Ordering {
        self.position.cmp(&other.position)
    }
}

impl PartialOrd for Failure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            FailureKind::P => "P",
            FailureKind::N => "N",
        };
        write!(f, "{} ({kind}-failure)", self.position)
    }
}
