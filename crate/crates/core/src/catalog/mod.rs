//! Published solutions as data: octal games with their quotients and
//! pretending functions, the quotients of games born by day 4, and the
//! order table of the games `0.(3310)^n`.

mod notation;
mod verify;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    iso_check, monoid_from_presentation, parse_word, AlgebraError, BipartiteMonoid, Element, Presentation,
};
use crate::games::{parse_octal_code, GameError, OctalCode};

pub use notation::{choose_generators, generator_names, parse_phi_table, render_phi_table, NamedQuotient, PhiTable};
pub use verify::{
    heap_multisets, match_candidate, verify_published, CandidateMatch, VerificationReport, VerifyLimits,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("bad catalog data: {0}")]
    Data(String),
    #[error("bad pretending-function table: {0}")]
    Table(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// One solved octal game from the figures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublishedSolution {
    pub code: String,
    /// The row label as typeset, decorations included.
    pub label: String,
    pub figure: String,
    pub generators: Vec<String>,
    /// Relations as `[lhs, rhs]` word pairs.
    pub presentation: Vec<[String; 2]>,
    pub pset: Vec<String>,
    pub phi: PhiTable,
    #[serde(default)]
    pub claimed_name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// One of the eight quotients born by day 4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientRecord {
    pub name: String,
    pub order: usize,
    pub generators: Vec<String>,
    pub presentation: Vec<[String; 2]>,
    pub pset: Vec<String>,
    /// Nim-heap representatives among the games born by day 4.
    pub games: Vec<String>,
}

/// A row of the `0.(3310)^n` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderRecord {
    pub code: String,
    pub order: usize,
    pub period: usize,
}

fn presentation(generators: &[String], relations: &[[String; 2]]) -> Result<Presentation, CatalogError> {
    let rels: Vec<(String, String)> = relations.iter().map(|[l, r]| (l.clone(), r.clone())).collect();
    Ok(Presentation::from_text_relations(generators.to_vec(), &rels)?)
}

fn monoid_with_p(pres: &Presentation, pset: &[String], bound: usize) -> Result<BipartiteMonoid, CatalogError> {
    let m = monoid_from_presentation(pres, bound)?;
    let mut mask = vec![false; m.order()];
    for w in pset {
        mask[m.eval(&parse_word(w, pres.generators())?) as usize] = true;
    }
    Ok(m.with_p(mask)?)
}

impl PublishedSolution {
    pub fn octal_code(&self) -> Result<OctalCode, CatalogError> {
        Ok(parse_octal_code(&self.code)?)
    }

    pub fn presentation(&self) -> Result<Presentation, CatalogError> {
        presentation(&self.generators, &self.presentation)
    }

    /// The presented monoid with its P-portion attached.
    pub fn monoid(&self, bound: usize) -> Result<BipartiteMonoid, CatalogError> {
        monoid_with_p(&self.presentation()?, &self.pset, bound)
    }

    /// `Phi(H_1), ..., Phi(H_heaps)` as elements of `m`, which must be the
    /// monoid of [`PublishedSolution::monoid`].
    pub fn phi_values(&self, m: &BipartiteMonoid, heaps: usize) -> Result<Vec<Element>, CatalogError> {
        (1..=heaps)
            .map(|k| {
                let w = self
                    .phi
                    .word(k)
                    .ok_or_else(|| CatalogError::Table(format!("no value for heap {k}")))?;
                Ok(m.eval(&parse_word(w, &self.generators)?))
            })
            .collect()
    }

    pub fn check(&self) -> Result<(), CatalogError> {
        self.octal_code()?;
        self.presentation()?;
        self.phi.check()?;
        self.phi.parse_words(&self.generators)?;
        for w in &self.pset {
            parse_word(w, &self.generators)?;
        }
        Ok(())
    }
}

impl QuotientRecord {
    pub fn presentation(&self) -> Result<Presentation, CatalogError> {
        presentation(&self.generators, &self.presentation)
    }

    pub fn monoid(&self) -> Result<BipartiteMonoid, CatalogError> {
        monoid_with_p(&self.presentation()?, &self.pset, self.order.max(1))
    }
}

/// The builtin database.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub solutions: Vec<PublishedSolution>,
    pub quotients: Vec<QuotientRecord>,
    pub orders: Vec<OrderRecord>,
}

fn load<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> Result<T, CatalogError> {
    serde_json::from_str(text).map_err(|e| CatalogError::Data(format!("{name}: {e}")))
}

impl Catalog {
    pub fn from_json(solutions: &str, quotients: &str, orders: &str) -> Result<Self, CatalogError> {
        let cat = Catalog {
            solutions: load("solutions", solutions)?,
            quotients: load("quotients", quotients)?,
            orders: load("orders", orders)?,
        };
        for s in &cat.solutions {
            s.check().map_err(|e| CatalogError::Data(format!("{}: {e}", s.code)))?;
        }
        Ok(cat)
    }

    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| {
            Catalog::from_json(
                include_str!("../../data/octal.json"),
                include_str!("../../data/quotients.json"),
                include_str!("../../data/orders.json"),
            )
            .expect("builtin catalog is well formed")
        })
    }

    /// The record for a code, comparing codes as games (`0.75(0)` matches
    /// `0.75`).
    pub fn solution(&self, code: &OctalCode) -> Option<&PublishedSolution> {
        let want = code.normalized();
        self.solutions
            .iter()
            .find(|s| s.octal_code().is_ok_and(|c| c.normalized() == want))
    }

    pub fn quotient(&self, name: &str) -> Option<&QuotientRecord> {
        self.quotients.iter().find(|q| q.name == name)
    }

    /// The name of a day-4 quotient isomorphic to `m`, if any.
    pub fn name_of(&self, m: &BipartiteMonoid) -> Option<&str> {
        self.quotients
            .iter()
            .filter(|q| q.order == m.order())
            .find(|q| q.monoid().is_ok_and(|qm| iso_check(m, &qm).ok().flatten().is_some()))
            .map(|q| q.name.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_loads() {
        let cat = Catalog::builtin();
        assert_eq!(cat.solutions.len(), 27);
        assert_eq!(cat.quotients.len(), 8);
        assert_eq!(cat.orders.iter().map(|o| o.order).collect::<Vec<_>>(), vec![6, 202, 226, 226, 226]);
        let c = parse_octal_code("0.75").unwrap();
        assert_eq!(cat.solution(&c).unwrap().code, "0.750");
        let c = parse_octal_code("0.123(0)").unwrap();
        assert_eq!(cat.solution(&c).unwrap().label, "0.123\\.0");
    }

    #[test]
    fn day4_orders() {
        for q in &Catalog::builtin().quotients {
            assert_eq!(q.monoid().unwrap().order(), q.order, "{}", q.name);
        }
    }

    #[test]
    fn named_orders_match_day4_figure() {
        let cat = Catalog::builtin();
        for s in cat.solutions.iter().filter(|s| s.claimed_name.is_some()) {
            let q = cat.quotient(s.claimed_name.as_deref().unwrap()).unwrap();
            assert_eq!(s.monoid(4096).unwrap().order(), q.order, "{}", s.code);
        }
    }
}
