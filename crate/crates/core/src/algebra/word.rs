use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::games::Position;

use super::{AlgebraError, BipartiteMonoid, Element};

/// An exponent vector over a generator list. Shares its representation and
/// its lexicographic order with game positions.
pub type MonoidWord = Position;

/// Splits a word such as `ab2c_0^3` into `(name, exponent)` factors.
///
/// A generator is a lowercase letter with an optional `_digits` subscript.
/// Plain letters take their exponent as trailing digits (`b2`) or after a
/// caret (`b^2`); subscripted generators need the caret (`c_0^2`). The word
/// `1` is the identity.
pub fn tokenize_word(text: &str) -> Result<Vec<(String, u32)>, AlgebraError> {
    let s = text.trim();
    if s == "1" {
        return Ok(Vec::new());
    }
    let bytes = s.as_bytes();
    let err = |msg: &str| AlgebraError::Syntax(format!("{msg} in word {s:?}"));
    if bytes.is_empty() {
        return Err(err("empty word"));
    }
    let digits = |pos: &mut usize| {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        &s[start..*pos]
    };
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        if !bytes[pos].is_ascii_lowercase() {
            return Err(err("expected a generator letter"));
        }
        let start = pos;
        pos += 1;
        let subscripted = bytes.get(pos) == Some(&b'_');
        if subscripted {
            pos += 1;
            if digits(&mut pos).is_empty() {
                return Err(err("missing subscript"));
            }
        }
        let name = s[start..pos].to_string();
        let exp_text = if bytes.get(pos) == Some(&b'^') {
            pos += 1;
            let d = digits(&mut pos);
            if d.is_empty() {
                return Err(err("missing exponent"));
            }
            d
        } else if subscripted {
            ""
        } else {
            digits(&mut pos)
        };
        let exp = if exp_text.is_empty() {
            1
        } else {
            exp_text.parse().map_err(|_| err("exponent out of range"))?
        };
        if exp == 0 {
            return Err(err("zero exponent"));
        }
        out.push((name, exp));
    }
    Ok(out)
}

/// Parses a word over a fixed generator list.
pub fn parse_word(text: &str, gens: &[String]) -> Result<MonoidWord, AlgebraError> {
    let mut w = Position::empty();
    for (name, e) in tokenize_word(text)? {
        let i = gens
            .iter()
            .position(|g| *g == name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.clone()))?;
        w.add(i, e);
    }
    Ok(w)
}

/// Renders a word in generator order, `1` for the identity.
pub fn render_word(word: &MonoidWord, gens: &[String]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let mut s = String::new();
    for (i, e) in word.support() {
        let g = &gens[i];
        s.push_str(g);
        if e > 1 {
            if g.contains('_') {
                s.push('^');
            }
            s.push_str(&e.to_string());
        }
    }
    s
}

/// A commutative monoid presentation `<a,b | a2=1, b3=b>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relations: Vec<(MonoidWord, MonoidWord)>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relations: Vec<(MonoidWord, MonoidWord)>) -> Result<Self, AlgebraError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if tokenize_word(g).ok().as_deref() != Some(&[(g.clone(), 1)]) {
                return Err(AlgebraError::Syntax(format!("bad generator name {g:?}")));
            }
            if !seen.insert(g) {
                return Err(AlgebraError::DuplicateGenerator(g.clone()));
            }
        }
        for (l, r) in &relations {
            if l.span() > generators.len() || r.span() > generators.len() {
                return Err(AlgebraError::Malformed("relation uses an unlisted generator".into()));
            }
            if l == r {
                return Err(AlgebraError::TrivialRelation(render_word(l, &generators)));
            }
        }
        Ok(Presentation { generators, relations })
    }

    /// Builds a presentation from textual relations, with generators listed
    /// explicitly.
    pub fn from_text_relations(generators: Vec<String>, relations: &[(String, String)]) -> Result<Self, AlgebraError> {
        let rels = relations
            .iter()
            .map(|(l, r)| Ok((parse_word(l, &generators)?, parse_word(r, &generators)?)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Presentation::new(generators, rels)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[(MonoidWord, MonoidWord)] {
        &self.relations
    }

    pub fn render_relation(&self, i: usize) -> String {
        let (l, r) = &self.relations[i];
        format!("{}={}", render_word(l, &self.generators), render_word(r, &self.generators))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = (0..self.relations.len()).map(|i| self.render_relation(i)).collect();
        write!(f, "<{} | {}>", self.generators.join(","), rels.join(", "))
    }
}

impl FromStr for Presentation {
    type Err = AlgebraError;

    /// Accepts `<gens | rels>` with optional angle brackets and free
    /// whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = match (t.strip_prefix('<'), t.ends_with('>')) {
            (Some(inner), true) => &inner[..inner.len() - 1],
            (None, false) => t,
            _ => return Err(AlgebraError::Syntax(format!("unbalanced brackets in {s:?}"))),
        };
        let (gens, rels) = t
            .split_once('|')
            .ok_or_else(|| AlgebraError::Syntax(format!("missing '|' in {s:?}")))?;
        let generators: Vec<String> = gens
            .split(',')
            .map(|g| g.trim().to_string())
            .filter(|g| !g.is_empty())
            .collect();
        let mut relations = Vec::new();
        for r in rels.split(',').map(str::trim).filter(|r| !r.is_empty()) {
            let (l, rhs) = r
                .split_once('=')
                .ok_or_else(|| AlgebraError::Syntax(format!("relation {r:?} has no '='")))?;
            relations.push((l.trim().to_string(), rhs.trim().to_string()));
        }
        Presentation::from_text_relations(generators, &relations)
    }
}

/// A presentation of `m` over its named generators.
///
/// Normal forms are the lex-least words of the elements; the relations are
/// `u = nf(u)` for every minimal word `u` that is not a normal form. Every
/// word rewrites to its normal form using these, so the presented monoid is
/// `m` itself.
pub fn extract_presentation(m: &BipartiteMonoid) -> Presentation {
    let nf = m.normal_forms();
    let normal: HashSet<&Position> = nf.iter().collect();
    let ngens = m.generators().len();
    let mut lhs: Vec<Position> = Vec::new();
    for (x, w) in nf.iter().enumerate() {
        for g in 0..ngens {
            let u = w.with(g);
            if nf[m.mul(x as Element, m.generators()[g]) as usize] == u {
                continue;
            }
            let minimal = u.support().all(|(h, _)| {
                let mut v = u.clone();
                v.remove(h);
                normal.contains(&v)
            });
            if minimal {
                lhs.push(u);
            }
        }
    }
    lhs.sort();
    lhs.dedup();
    let relations = lhs
        .into_iter()
        .map(|u| {
            let v = nf[m.eval(&u) as usize].clone();
            (u, v)
        })
        .collect();
    Presentation::new(m.names().to_vec(), relations).expect("names come from a valid monoid")
}
