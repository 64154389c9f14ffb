//! The infinite quotients of 0.26 and 4.7, computed symbolically.
//!
//! For 0.26 the quotient is `<a, b, c_n | a^2 = 1, b^(n+1) c_n = b^(2n+3),
//! c_m c_n = b^(m+2) c_n (m <= n)>` and every element is `a^i b^m c_n` with
//! `m <= n`, or `a^i b^m` (written with `c_inf = 1`).
//!
//! For 4.7 it is `<a, b, c, d_n | a^2 = 1, bc = ab^3, c^2 = b^4,
//! b^(n+1) d_n = a^(n+1) b^(2n+5), c d_n = ab^2 d_n,
//! d_m d_n = a^(m+1) b^(m+4) d_n (m <= n)>`. Here `c` times anything other than
//! a power of `a` equals `ab^2` times it, so the normal forms are `a^i b^m d_n`
//! with `m <= n`, `a^i b^m`, and `a^i c`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::games::{Outcome, Position};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ApGame {
    #[serde(rename = "0.26")]
    G026,
    #[serde(rename = "4.7")]
    G47,
}

impl ApGame {
    pub const ALL: [ApGame; 2] = [ApGame::G026, ApGame::G47];

    pub fn code(self) -> &'static str {
        match self {
            ApGame::G026 => "0.26",
            ApGame::G47 => "4.7",
        }
    }

    fn family_letter(self) -> char {
        match self {
            ApGame::G026 => 'c',
            ApGame::G47 => 'd',
        }
    }
}

impl fmt::Display for ApGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ApGame {
    type Err = ApError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0.26" => Ok(ApGame::G026),
            "4.7" => Ok(ApGame::G47),
            other => Err(ApError::UnknownGame(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ApError {
    #[error("no symbolic quotient for {0:?} (known: 0.26, 4.7)")]
    UnknownGame(String),
    #[error("generator {token:?} does not exist for {game}")]
    UnknownGenerator { game: ApGame, token: String },
    #[error("bad element syntax {0:?}")]
    Syntax(String),
    #[error("elements of {0} and {1} cannot be combined")]
    Mixed(ApGame, ApGame),
    #[error("witness {z} fails to separate {x} and {y}")]
    Witness { x: String, y: String, z: String },
}

/// A generator of one of the two presentations. `Family(n)` is `c_n` for
/// 0.26 and `d_n` for 4.7; `C` exists for 4.7 only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ApGenerator {
    A,
    B,
    C,
    Family(u64),
}

/// An element in normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ApElement {
    pub game: ApGame,
    /// Exponent of `a`, 0 or 1.
    pub a: u8,
    /// Exponent of `b`.
    pub b: u64,
    /// Index of the `c_n` or `d_n` factor; `None` stands for `c_inf = 1`.
    pub family: Option<u64>,
    /// The lone generator `c` of 4.7.
    pub c: bool,
}

impl ApElement {
    pub fn identity(game: ApGame) -> Self {
        ApElement {
            game,
            a: 0,
            b: 0,
            family: None,
            c: false,
        }
    }

    pub fn generator(game: ApGame, g: ApGenerator) -> Result<Self, ApError> {
        let one = Self::identity(game);
        Ok(match g {
            ApGenerator::A => ApElement { a: 1, ..one },
            ApGenerator::B => ApElement { b: 1, ..one },
            ApGenerator::C if game == ApGame::G47 => ApElement { c: true, ..one },
            ApGenerator::C => {
                return Err(ApError::UnknownGenerator {
                    game,
                    token: "c".into(),
                })
            }
            ApGenerator::Family(n) => ApElement {
                family: Some(n),
                ..one
            },
        })
    }

    /// `a^a b^b F_family`, with a `b`-exponent past the family index
    /// collapsed by `b^(n+1) c_n = b^(2n+3)` or its 4.7 analogue.
    fn make(game: ApGame, a: u64, b: u64, family: Option<u64>) -> Self {
        let (a, b, family) = match family {
            Some(n) if b > n => match game {
                ApGame::G026 => (a, b + n + 2, None),
                ApGame::G47 => (a + n + 1, b + n + 4, None),
            },
            f => (a, b, f),
        };
        ApElement {
            game,
            a: (a % 2) as u8,
            b,
            family,
            c: false,
        }
    }

    /// `c` as `ab^2`, which it equals in any product with a non-unit.
    fn without_c(self) -> (u64, u64, Option<u64>) {
        if self.c {
            (self.a as u64 + 1, 2, None)
        } else {
            (self.a as u64, self.b, self.family)
        }
    }

    fn is_unit(&self) -> bool {
        self.b == 0 && self.family.is_none() && !self.c
    }

    pub fn mul(&self, other: &ApElement) -> Result<ApElement, ApError> {
        if self.game != other.game {
            return Err(ApError::Mixed(self.game, other.game));
        }
        let game = self.game;
        if self.c && other.is_unit() || other.c && self.is_unit() {
            return Ok(ApElement {
                a: self.a ^ other.a,
                ..ApElement::generator(game, ApGenerator::C)?
            });
        }
        let (a1, b1, f1) = self.without_c();
        let (a2, b2, f2) = other.without_c();
        let (mut a, mut b) = (a1 + a2, b1 + b2);
        let family = match (f1, f2) {
            (Some(m), Some(n)) => {
                let (lo, hi) = (m.min(n), m.max(n));
                match game {
                    ApGame::G026 => b += lo + 2,
                    ApGame::G47 => {
                        a += lo + 1;
                        b += lo + 4;
                    }
                }
                Some(hi)
            }
            (f, None) | (None, f) => f,
        };
        Ok(Self::make(game, a, b, family))
    }

    pub fn pow(&self, k: u64) -> ApElement {
        (0..k).fold(Self::identity(self.game), |acc, _| acc.mul(self).expect("same game"))
    }

    pub fn in_p(&self) -> bool {
        ap_in_p(self)
    }
}

impl fmt::Display for ApElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 0 && self.b == 0 && self.family.is_none() && !self.c {
            return f.write_str("1");
        }
        if self.a == 1 {
            f.write_str("a")?;
        }
        match self.b {
            0 => {}
            1 => f.write_str("b")?,
            m => write!(f, "b{m}")?,
        }
        if self.c {
            f.write_str("c")?;
        }
        if let Some(n) = self.family {
            write!(f, "{}{n}", self.game.family_letter())?;
        }
        Ok(())
    }
}

/// Parses a product of generators such as `abc1`, `ab^3`, `c_0 c_2` or `d4`.
/// After `a` and `b` (and the 4.7 generator `c`) digits are an exponent; after
/// the family letter they are its index, optionally followed by `^e`.
pub fn parse_ap_word(game: ApGame, text: &str) -> Result<Vec<ApGenerator>, ApError> {
    let t: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '·').collect();
    if t == ['1'] {
        return Ok(Vec::new());
    }
    let number = |i: &mut usize| -> Option<u64> {
        let start = *i;
        while *i < t.len() && t[*i].is_ascii_digit() {
            *i += 1;
        }
        (start < *i).then(|| t[start..*i].iter().collect::<String>().parse().ok()).flatten()
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < t.len() {
        let letter = t[i];
        i += 1;
        let family = letter == game.family_letter();
        let g = match letter {
            'a' => ApGenerator::A,
            'b' => ApGenerator::B,
            'c' if game == ApGame::G47 => ApGenerator::C,
            _ if family => {
                if t.get(i) == Some(&'_') {
                    i += 1;
                }
                let n = number(&mut i).ok_or_else(|| ApError::Syntax(text.to_string()))?;
                ApGenerator::Family(n)
            }
            other => {
                return Err(ApError::UnknownGenerator {
                    game,
                    token: other.to_string(),
                })
            }
        };
        let e = if t.get(i) == Some(&'^') {
            i += 1;
            number(&mut i).ok_or_else(|| ApError::Syntax(text.to_string()))?
        } else if family {
            1
        } else {
            number(&mut i).unwrap_or(1)
        };
        out.extend(std::iter::repeat_n(g, e as usize));
    }
    Ok(out)
}

/// Multiplies out a formal product.
pub fn ap_normalize(game: ApGame, gens: &[ApGenerator]) -> Result<ApElement, ApError> {
    gens.iter().try_fold(ApElement::identity(game), |acc, &g| {
        acc.mul(&ApElement::generator(game, g)?)
    })
}

pub fn parse_ap_element(game: ApGame, text: &str) -> Result<ApElement, ApError> {
    ap_normalize(game, &parse_ap_word(game, text)?)
}

/// Membership in the P-portion.
pub fn ap_in_p(x: &ApElement) -> bool {
    if x.c {
        return false;
    }
    match x.family {
        None => (x.a == 1 && x.b == 0) || (x.a == 0 && x.b >= 2 && x.b.is_multiple_of(2)),
        Some(n) => match x.game {
            ApGame::G026 => x.a == 0 && (x.b + n) % 2 == 1,
            ApGame::G47 => x.b < n && (x.b + n) % 2 == 1 && x.a as u64 == n % 2,
        },
    }
}

/// `Phi(H_k)`; the empty heap `k = 0` maps to 1.
pub fn ap_phi(game: ApGame, k: usize) -> ApElement {
    let one = ApElement::identity(game);
    let a = ApElement { a: 1, ..one };
    let b = ApElement { b: 1, ..one };
    let k = k as u64;
    match game {
        ApGame::G026 => match k {
            0 => one,
            1..=8 => [one, a, b, ApElement { a: 1, b: 1, ..one }][((k - 1) % 4) as usize],
            10 => ApElement {
                a: 1,
                family: Some(0),
                ..one
            },
            _ if k % 2 == 1 => ApElement {
                family: Some((k - 9) / 2),
                ..one
            },
            _ => ApElement::make(game, 1, 1, Some((k - 12) / 2)),
        },
        ApGame::G47 => match k {
            0 => one,
            1 | 3 => a,
            2 | 4 => b,
            5 => ApElement { c: true, ..one },
            6 => ApElement { b: 3, ..one },
            _ => ApElement {
                family: Some(k - 7),
                ..one
            },
        },
    }
}

/// `Phi(X)` for a position over the heap alphabet (index `i` is heap `i+1`).
pub fn ap_phi_position(game: ApGame, x: &Position) -> ApElement {
    x.support().fold(ApElement::identity(game), |acc, (i, c)| {
        acc.mul(&ap_phi(game, i + 1).pow(c as u64)).expect("same game")
    })
}

/// The homomorphisms `t`, `w` and the Grundy value on a single heap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwValues {
    pub t: u64,
    pub w: u64,
    pub g: u32,
}

pub fn tw_values(game: ApGame, k: usize) -> TwValues {
    let k64 = k as u64;
    match game {
        ApGame::G026 => TwValues {
            t: match k {
                0..=2 => 0,
                3 | 4 => 1,
                _ => (k64 - 5) / 2,
            },
            w: match k {
                0..=8 => 0,
                9 | 10 => 1,
                _ if k % 2 == 1 => (k64 - 7) / 2,
                _ => (k64 - 12) / 2,
            },
            g: if k == 0 { 0 } else { ((k - 1) % 4) as u32 },
        },
        ApGame::G47 => TwValues {
            t: match k {
                0 | 1 => 0,
                2 => 1,
                _ => k64 - 3,
            },
            w: match k {
                0..=4 => 0,
                5 => 1,
                _ => k64 - 6,
            },
            g: match k {
                0 => 0,
                _ if k.is_multiple_of(2) => 2,
                _ => 1,
            },
        },
    }
}

/// Allemang's closed-form outcome: with `G = X + H`, `H = H_k` a largest
/// heap, `G` is a P-position iff (i) `t(G) = 0` and `g(G) = 1`, or (ii)
/// `t(G) != 0`, `w(H) <= t(X)` and `g(G) = 0`, or (iii) `t(G) != 0`,
/// `w(H) >= t(X) + 2` and `g(G)` is 2 (0.26) or 3 (4.7).
pub fn ap_outcome(game: ApGame, x: &Position) -> Outcome {
    let Some(largest) = x.support().map(|(i, _)| i + 1).last() else {
        return Outcome::N;
    };
    let (mut t, mut g) = (0, 0);
    for (i, c) in x.support() {
        let v = tw_values(game, i + 1);
        t += v.t * c as u64;
        if c % 2 == 1 {
            g ^= v.g;
        }
    }
    let h = tw_values(game, largest);
    let tx = t - h.t;
    let g3 = match game {
        ApGame::G026 => 2,
        ApGame::G47 => 3,
    };
    let p = (t == 0 && g == 1) || (t != 0 && h.w <= tx && g == 0) || (t != 0 && h.w >= tx + 2 && g == g3);
    if p {
        Outcome::P
    } else {
        Outcome::N
    }
}

/// Result of [`ap_distinguish`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distinction {
    Equal,
    /// Exactly one of `xz`, `yz` lies in P.
    Witness(ApElement),
}

/// The `a`-exponent of `x b^M` for large `M`.
fn sign(x: &ApElement) -> u64 {
    let lift = match x.family {
        _ if x.c => 1,
        Some(n) if x.game == ApGame::G47 => n + 1,
        _ => 0,
    };
    (x.a as u64 + lift) % 2
}

/// Parity of the `b`-exponent of `x b^M` for large even `M`.
fn parity(x: &ApElement) -> u64 {
    (x.b + x.family.unwrap_or(0)) % 2
}

/// The `b`-exponent `x` contributes when multiplied by a family generator of
/// larger index.
fn mass(x: &ApElement) -> u64 {
    if x.c {
        return 2;
    }
    match (x.game, x.family) {
        (_, None) => x.b,
        (ApGame::G026, Some(n)) => x.b + n + 2,
        (ApGame::G47, Some(n)) => x.b + n + 4,
    }
}

fn element(game: ApGame, a: u64, b: u64, family: Option<u64>) -> ApElement {
    ApElement::make(game, a, b, family)
}

/// A multiplier separating two distinct elements, following the reducedness
/// argument: large powers of `b` separate by sign and parity; a family
/// generator just below the larger mass separates by mass; `b^(n-m+1)`
/// collapses the element of smaller offset; 1 or `a` handles the rest.
pub fn ap_distinguish(x: &ApElement, y: &ApElement) -> Result<Distinction, ApError> {
    if x.game != y.game {
        return Err(ApError::Mixed(x.game, y.game));
    }
    if x == y {
        return Ok(Distinction::Equal);
    }
    let game = x.game;
    let z = if (sign(x), parity(x)) != (sign(y), parity(y)) {
        let bound = x.family.into_iter().chain(y.family).max().map_or(0, |n| n + 1);
        let mut m = bound.max(2);
        if (parity(x) + m) % 2 == 1 {
            m += 1;
        }
        element(game, sign(x), m, None)
    } else if mass(x) != mass(y) {
        let (lo, hi) = if mass(x) < mass(y) { (x, y) } else { (y, x) };
        let n = mass(hi) - 1;
        let k = match game {
            ApGame::G026 => sign(lo),
            ApGame::G47 => sign(lo) + n,
        };
        element(game, k, 0, Some(n))
    } else if let (Some(nx), Some(ny)) = (x.family, y.family) {
        let (lo, hi) = if nx < ny { (x, y) } else { (y, x) };
        let n_lo = lo.family.unwrap();
        let k = match game {
            ApGame::G026 => hi.a as u64,
            ApGame::G47 => hi.a as u64 + hi.family.unwrap(),
        };
        element(game, k, n_lo - lo.b + 1, None)
    } else {
        let one = ApElement::identity(game);
        let a = ApElement { a: 1, ..one };
        if x.in_p() != y.in_p() {
            one
        } else {
            a
        }
    };
    if x.mul(&z)?.in_p() == y.mul(&z)?.in_p() {
        return Err(ApError::Witness {
            x: x.to_string(),
            y: y.to_string(),
            z: z.to_string(),
        });
    }
    Ok(Distinction::Witness(z))
}

/// Every normal form with `b`-exponent and family index at most `bound`.
pub fn normal_forms(game: ApGame, bound: u64) -> Vec<ApElement> {
    let mut out = Vec::new();
    for a in 0..2u8 {
        for b in 0..=bound {
            out.push(ApElement {
                a,
                b,
                ..ApElement::identity(game)
            });
        }
        for n in 0..=bound {
            for b in 0..=n {
                out.push(ApElement {
                    a,
                    b,
                    family: Some(n),
                    ..ApElement::identity(game)
                });
            }
        }
        if game == ApGame::G47 {
            out.push(ApElement {
                a,
                c: true,
                ..ApElement::identity(game)
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(game: ApGame, s: &str) -> ApElement {
        parse_ap_element(game, s).unwrap()
    }

    #[test]
    fn relations_hold() {
        use ApGame::*;
        assert_eq!(el(G026, "bc0"), el(G026, "b3"));
        assert_eq!(el(G026, "aa"), el(G026, "1"));
        for n in 0..6 {
            assert_eq!(el(G026, &format!("b{}c{n}", n + 1)), el(G026, &format!("b{}", 2 * n + 3)));
            for m in 0..=n {
                assert_eq!(el(G026, &format!("c{m}c{n}")), el(G026, &format!("b{}c{n}", m + 2)));
                assert_eq!(
                    el(G47, &format!("d{m}d{n}")),
                    el(G47, &format!("a{}b{}d{n}", m + 1, m + 4))
                );
            }
            assert_eq!(
                el(G47, &format!("b{}d{n}", n + 1)),
                el(G47, &format!("a{}b{}", n + 1, 2 * n + 5))
            );
            assert_eq!(el(G47, &format!("cd{n}")), el(G47, &format!("ab2d{n}")));
        }
        assert_eq!(el(G47, "bc"), el(G47, "ab3"));
        assert_eq!(el(G47, "cc"), el(G47, "b4"));
        assert_eq!(el(G47, "ac").to_string(), "ac");
    }

    #[test]
    fn renders_table_tokens() {
        let g = ApGame::G026;
        let row: Vec<String> = (1..=14).map(|k| ap_phi(g, k).to_string()).collect();
        assert_eq!(row.join(" "), "1 a b ab 1 a b ab c0 ac0 c1 ab3 c2 abc1");
        let row: Vec<String> = (1..=9).map(|k| ap_phi(ApGame::G47, k).to_string()).collect();
        assert_eq!(row.join(" "), "a b a b c b3 d0 d1 d2");
        for s in ["1", "ab3", "c0", "abc1", "b2c7"] {
            assert_eq!(el(g, s).to_string(), s);
        }
        assert_eq!(el(g, "c_0 c_2"), el(g, "b2c2"));
        assert_eq!(el(g, "ab^3"), el(g, "ab3"));
        assert!(parse_ap_element(g, "bc").is_err());
        assert!(parse_ap_element(g, "x").is_err());
        assert!(parse_ap_element(ApGame::G47, "d").is_err());
    }

    #[test]
    fn p_portion_examples() {
        assert!(el(ApGame::G026, "a").in_p());
        assert!(!el(ApGame::G026, "b3").in_p());
        assert!(el(ApGame::G47, "bd2").in_p());
        assert!(el(ApGame::G47, "ad1").in_p());
        assert!(!el(ApGame::G47, "c").in_p());
        assert!(!el(ApGame::G026, "1").in_p());
    }

    #[test]
    fn allemang_examples() {
        let pos = |hs: &[usize]| {
            let mut c = vec![0; *hs.iter().max().unwrap_or(&0)];
            for &h in hs {
                c[h - 1] += 1;
            }
            Position::from_counts(c)
        };
        assert_eq!(ap_outcome(ApGame::G026, &pos(&[2])), Outcome::P);
        assert_eq!(ap_outcome(ApGame::G026, &pos(&[9])), Outcome::N);
        assert_eq!(ap_outcome(ApGame::G026, &pos(&[3, 3, 5])), Outcome::P);
        assert_eq!(ap_outcome(ApGame::G47, &pos(&[1])), Outcome::P);
        assert_eq!(ap_outcome(ApGame::G47, &pos(&[])), Outcome::N);
    }

    #[test]
    fn witness_examples() {
        let g = ApGame::G026;
        assert_eq!(ap_distinguish(&el(g, "1"), &el(g, "a")), Ok(Distinction::Witness(el(g, "b2"))));
        assert_eq!(ap_distinguish(&el(g, "b"), &el(g, "b3")), Ok(Distinction::Witness(el(g, "c2"))));
        assert_eq!(ap_distinguish(&el(g, "c4"), &el(g, "c4")), Ok(Distinction::Equal));
    }
}
