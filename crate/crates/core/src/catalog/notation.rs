use serde::{Deserialize, Serialize};

use crate::algebra::{
    extract_presentation, parse_word, render_word, BipartiteMonoid, Element, LexTree, MonoidWord, Presentation,
    IDENTITY,
};
use crate::solver::{Candidate, QuotientSolution};

use super::CatalogError;

/// Generator names `a`, `b`, ..., `z`, then `z_1`, `z_2`, ...
pub fn generator_names(count: usize) -> Vec<String> {
    (0..count)
        .map(|i| match i {
            0..=25 => ((b'a' + i as u8) as char).to_string(),
            _ => format!("z_{}", i - 25),
        })
        .collect()
}

/// A generating set for the monoid drawn from the values of `phi`, in order
/// of first appearance. A value is dropped when the remaining values
/// already generate it; later values are dropped first.
pub fn choose_generators(m: &BipartiteMonoid, phi: &[Element]) -> Vec<Element> {
    let mut seen: Vec<Element> = Vec::new();
    for &x in phi {
        if x != IDENTITY && !seen.contains(&x) {
            seen.push(x);
        }
    }
    let mut keep = vec![true; seen.len()];
    for i in (0..seen.len()).rev() {
        keep[i] = false;
        let others: Vec<Element> = seen.iter().zip(&keep).filter(|(_, &k)| k).map(|(&x, _)| x).collect();
        if !m.submonoid(&others).contains(&seen[i]) {
            keep[i] = true;
        }
    }
    seen.into_iter().zip(keep).filter(|&(_, k)| k).map(|(x, _)| x).collect()
}

/// A quotient together with a pretending function, presented over named
/// generators chosen by [`choose_generators`].
#[derive(Clone, Debug)]
pub struct NamedQuotient {
    monoid: BipartiteMonoid,
    phi: Vec<Element>,
    normal_forms: Vec<MonoidWord>,
}

impl NamedQuotient {
    /// `phi` must generate `m`.
    pub fn new(m: &BipartiteMonoid, phi: &[Element]) -> Self {
        let gens = choose_generators(m, phi);
        let tree = LexTree::build(m.order(), IDENTITY, gens.len(), |x, g| m.mul(x, gens[g]));
        debug_assert_eq!(tree.order.len(), m.order(), "phi generates the monoid");
        let mut renumber = vec![0; m.order()];
        for (i, &x) in tree.order.iter().enumerate() {
            renumber[x as usize] = i as Element;
        }
        let monoid = m
            .with_generators(gens.clone(), generator_names(gens.len()))
            .expect("values of phi generate the monoid");
        let phi = phi.iter().map(|&x| renumber[x as usize]).collect();
        let normal_forms = monoid.normal_forms();
        NamedQuotient {
            monoid,
            phi,
            normal_forms,
        }
    }

    pub fn from_candidate(c: &Candidate) -> Self {
        Self::new(c.monoid(), c.phi())
    }

    pub fn monoid(&self) -> &BipartiteMonoid {
        &self.monoid
    }

    pub fn names(&self) -> &[String] {
        self.monoid.names()
    }

    pub fn phi(&self) -> &[Element] {
        &self.phi
    }

    pub fn word(&self, x: Element) -> &MonoidWord {
        &self.normal_forms[x as usize]
    }

    pub fn render(&self, x: Element) -> String {
        render_word(self.word(x), self.names())
    }

    pub fn phi_tokens(&self) -> Vec<String> {
        self.phi.iter().map(|&x| self.render(x)).collect()
    }

    pub fn p_words(&self) -> Vec<String> {
        self.monoid.p_elements().into_iter().map(|x| self.render(x)).collect()
    }

    pub fn presentation(&self) -> Presentation {
        extract_presentation(&self.monoid)
    }
}

/// Pretending-function tokens in table style, one per heap.
pub fn render_phi_table(solution: &QuotientSolution) -> String {
    if solution.candidate.is_empty() {
        return String::new();
    }
    NamedQuotient::from_candidate(&solution.candidate).phi_tokens().join(" ")
}

/// A pretending-function table as stored in the catalog: the words for
/// heaps `1..=words.len()`, whose final `period` entries repeat forever.
/// `preperiod` is the first heap of the periodic part. Period 0 marks a
/// table with no periodic extension (preperiod one past its end).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiTable {
    pub preperiod: usize,
    pub period: usize,
    pub words: Vec<String>,
}

impl PhiTable {
    /// Word of heap `k` (1-based), extended periodically past the table.
    pub fn word(&self, k: usize) -> Option<&str> {
        assert!(k >= 1, "heaps are numbered from 1");
        let n = self.words.len();
        let i = if k <= n {
            k - 1
        } else if self.period == 0 {
            return None;
        } else {
            n - self.period + (k - n - 1) % self.period
        };
        Some(&self.words[i])
    }

    pub fn check(&self) -> Result<(), CatalogError> {
        if self.period == 0 {
            return match self.preperiod == self.words.len() + 1 {
                true => Ok(()),
                false => Err(CatalogError::Table("aperiodic table with a preperiod".into())),
            };
        }
        if self.period > self.words.len() {
            return Err(CatalogError::Table(format!(
                "period {} longer than the table ({} words)",
                self.period,
                self.words.len()
            )));
        }
        if self.preperiod == 0 || self.preperiod + self.period > self.words.len() + 1 {
            return Err(CatalogError::Table(format!("preperiod {} out of range", self.preperiod)));
        }
        for k in self.preperiod..=self.words.len() - self.period {
            if self.words[k - 1] != self.words[k - 1 + self.period] {
                return Err(CatalogError::Table(format!(
                    "heaps {} and {} differ inside the periodic part",
                    k,
                    k + self.period
                )));
            }
        }
        Ok(())
    }

    /// The words as exponent vectors over `gens`.
    pub fn parse_words(&self, gens: &[String]) -> Result<Vec<MonoidWord>, CatalogError> {
        self.words.iter().map(|w| Ok(parse_word(w, gens)?)).collect()
    }
}

/// Parses whitespace-separated table tokens with the given period. The
/// preperiod is the earliest heap from which the table is consistent with
/// the period.
pub fn parse_phi_table(text: &str, period: usize, gens: &[String]) -> Result<PhiTable, CatalogError> {
    let words: Vec<String> = text.split_whitespace().map(str::to_string).collect();
    for w in &words {
        parse_word(w, gens)?;
    }
    if period == 0 || period > words.len() {
        return Err(CatalogError::Table(format!(
            "period {period} does not fit a table of {} words",
            words.len()
        )));
    }
    let n = words.len();
    let mut preperiod = n - period + 1;
    while preperiod > 1 && words[preperiod - 2] == words[preperiod - 2 + period] {
        preperiod -= 1;
    }
    let table = PhiTable {
        preperiod,
        period,
        words,
    };
    table.check()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(s: &str) -> Vec<String> {
        s.split(',').map(str::to_string).collect()
    }

    #[test]
    fn table_extends_periodically() {
        let t = parse_phi_table("a b a b c b c b ab2 b ab2", 2, &gens("a,b,c")).unwrap();
        assert_eq!(t.preperiod, 8);
        assert_eq!(t.word(9), Some("ab2"));
        assert_eq!(t.word(12), Some("b"));
        assert_eq!(t.word(13), Some("ab2"));
        assert_eq!(t.word(1000), Some("b"));
        let t = parse_phi_table("a", 1, &gens("a")).unwrap();
        assert!((1..50).all(|k| t.word(k) == Some("a")));
        let finite = PhiTable {
            preperiod: 3,
            period: 0,
            words: vec!["a".into(), "b".into()],
        };
        finite.check().unwrap();
        assert_eq!(finite.word(3), None);
        assert_eq!(
            parse_word("ce2", &gens("a,b,c,d,e")).unwrap().counts(),
            &[0, 0, 1, 0, 2]
        );
    }

    #[test]
    fn bad_tables() {
        assert!(parse_phi_table("a q", 1, &gens("a")).is_err());
        assert!(parse_phi_table("a b", 3, &gens("a,b")).is_err());
        assert!(parse_phi_table("a b", 0, &gens("a,b")).is_err());
    }

    #[test]
    fn names_past_the_alphabet() {
        let n = generator_names(28);
        assert_eq!(n[0], "a");
        assert_eq!(n[25], "z");
        assert_eq!(n[26], "z_1");
        assert_eq!(n[27], "z_2");
    }
}
