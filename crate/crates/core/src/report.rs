//! Reports of solver runs, in catalog record form.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::render_word;
use crate::catalog::{match_candidate, Catalog, CatalogError, NamedQuotient, PhiTable, PublishedSolution};
use crate::games::OctalCode;
use crate::heaps::Period;
use crate::solver::QuotientSolution;

/// How a computed octal solution compares with the builtin record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublishedComparison {
    pub label: String,
    pub figure: String,
    /// The published quotient is isomorphic to the computed one by a map
    /// respecting the pretending functions.
    pub isomorphic: bool,
    /// The rendered row equals the published words on every solved heap.
    pub row_matches: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<usize>,
}

/// The result of solving an octal game. Flattened, the `record` fields make
/// the JSON form a valid catalog record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    #[serde(flatten)]
    pub record: PublishedSolution,
    pub heaps: usize,
    pub order: usize,
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop_reason: Option<String>,
    /// `|Q_n|` for `n = 1..=heaps`.
    pub orders: Vec<usize>,
    /// Observed, not proven.
    pub period: Option<Period>,
    pub published: Option<PublishedComparison>,
}

fn quotient_fields(sol: &QuotientSolution) -> (Vec<String>, Vec<[String; 2]>, Vec<String>, Vec<String>) {
    let nq = NamedQuotient::from_candidate(&sol.candidate);
    let pres = nq.presentation();
    let relations = pres
        .relations()
        .iter()
        .map(|(l, r)| [render_word(l, pres.generators()), render_word(r, pres.generators())])
        .collect();
    (nq.names().to_vec(), relations, nq.p_words(), nq.phi_tokens())
}

impl SolveReport {
    pub fn new(code: &OctalCode, sol: &QuotientSolution) -> Result<Self, CatalogError> {
        let (generators, presentation, pset, words) = if sol.candidate.is_empty() {
            Default::default()
        } else {
            quotient_fields(sol)
        };
        let phi = match sol.period {
            Some(p) => PhiTable {
                preperiod: p.preperiod,
                period: p.period,
                words,
            },
            None => PhiTable {
                preperiod: words.len() + 1,
                period: 0,
                words,
            },
        };
        let catalog = Catalog::builtin();
        let record = PublishedSolution {
            code: code.to_string(),
            label: code.to_string(),
            figure: "computed".into(),
            generators,
            presentation,
            pset,
            phi,
            claimed_name: catalog.name_of(sol.candidate.monoid()).map(str::to_string),
            note: None,
        };
        let published = match catalog.solution(code) {
            Some(rec) if !sol.candidate.is_empty() => {
                let m = match_candidate(&sol.candidate, rec, 4096)?;
                let row_matches = (1..=sol.solved).all(|k| rec.phi.word(k) == record.phi.word(k));
                Some(PublishedComparison {
                    label: rec.label.clone(),
                    figure: rec.figure.clone(),
                    isomorphic: m.isomorphic,
                    row_matches,
                    first_mismatch: m.first_mismatch,
                })
            }
            _ => None,
        };
        Ok(SolveReport {
            record,
            heaps: sol.solved,
            order: sol.candidate.order(),
            converged: sol.converged,
            stop_reason: sol.stop_reason.clone(),
            orders: sol.orders.clone(),
            period: sol.period,
            published,
        })
    }

    pub fn phi_row(&self) -> String {
        self.record.phi.words.join(" ")
    }

    pub fn to_text(&self) -> String {
        let r = &self.record;
        let mut out = String::new();
        let _ = writeln!(out, "code          {}", r.code);
        let _ = writeln!(out, "heaps         {}", self.heaps);
        match &self.stop_reason {
            None => {
                let _ = writeln!(out, "status        converged");
            }
            Some(why) => {
                let _ = writeln!(out, "status        PARTIAL: {why}");
            }
        }
        let _ = writeln!(out, "order         {}", self.order);
        let _ = writeln!(out, "name          {}", r.claimed_name.as_deref().unwrap_or("-"));
        let _ = writeln!(out, "generators    {}", r.generators.join(" "));
        let rels: Vec<String> = r.presentation.iter().map(|[a, b]| format!("{a}={b}")).collect();
        let _ = writeln!(out, "presentation  {}", rels.join(", "));
        let _ = writeln!(out, "P             {}", r.pset.join(" "));
        let _ = writeln!(out, "phi           {}", self.phi_row());
        match self.period {
            Some(p) => {
                let _ = writeln!(
                    out,
                    "period        {} from heap {} (observed through heap {})",
                    p.period, p.preperiod, p.observed_to
                );
            }
            None => {
                let _ = writeln!(out, "period        none observed");
            }
        }
        let orders: Vec<String> = self.orders.iter().map(|o| o.to_string()).collect();
        let _ = writeln!(out, "orders        {}", orders.join(" "));
        if let Some(p) = &self.published {
            let _ = writeln!(
                out,
                "published     {} ({}): {}, row {}",
                p.label,
                p.figure,
                if p.isomorphic { "isomorphic" } else { "NOT isomorphic" },
                if p.row_matches { "matches" } else { "differs" }
            );
        }
        out
    }
}

/// The result of solving the closed set of an explicit game.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameReport {
    pub expr: String,
    /// The games of the alphabet.
    pub games: Vec<String>,
    pub order: usize,
    pub name: Option<String>,
    pub generators: Vec<String>,
    pub presentation: Vec<[String; 2]>,
    pub pset: Vec<String>,
    /// `Phi` of each game of the alphabet.
    pub phi: Vec<String>,
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop_reason: Option<String>,
}

impl GameReport {
    pub fn new(expr: &str, sol: &QuotientSolution) -> Self {
        let (generators, presentation, pset, phi) = if sol.candidate.is_empty() {
            Default::default()
        } else {
            quotient_fields(sol)
        };
        GameReport {
            expr: expr.to_string(),
            games: sol.labels[..sol.solved].to_vec(),
            order: sol.candidate.order(),
            name: Catalog::builtin().name_of(sol.candidate.monoid()).map(str::to_string),
            generators,
            presentation,
            pset,
            phi,
            converged: sol.converged,
            stop_reason: sol.stop_reason.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "game          {}", self.expr);
        match &self.stop_reason {
            None => {
                let _ = writeln!(out, "status        converged");
            }
            Some(why) => {
                let _ = writeln!(out, "status        PARTIAL: {why}");
            }
        }
        let _ = writeln!(out, "order         {}", self.order);
        let _ = writeln!(out, "name          {}", self.name.as_deref().unwrap_or("-"));
        let rels: Vec<String> = self.presentation.iter().map(|[a, b]| format!("{a}={b}")).collect();
        let _ = writeln!(out, "presentation  {}", rels.join(", "));
        let _ = writeln!(out, "P             {}", self.pset.join(" "));
        for (g, w) in self.games.iter().zip(&self.phi) {
            let _ = writeln!(out, "phi({g}) = {w}");
        }
        out
    }
}
