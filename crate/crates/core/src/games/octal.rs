use std::fmt;
use std::str::FromStr;

use super::GameError;

/// An octal code `d0.d1d2...`, optionally with a digit block that repeats
/// forever.
///
/// Bit 1 of `d_k` lets a player remove `k` beans when that empties the heap,
/// bit 2 lets them remove `k` leaving one nonempty heap, and bit 4 lets them
/// remove `k` and split the rest into two nonempty heaps. A whole-heap digit
/// `d0 = 4` allows splitting a heap in two without removing anything.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OctalCode {
    split: u8,
    prefix: Vec<u8>,
    cycle: Vec<u8>,
}

impl OctalCode {
    pub fn new(split: u8, prefix: Vec<u8>, cycle: Vec<u8>) -> Result<Self, GameError> {
        if split != 0 && split != 4 {
            return Err(GameError::BadWholeHeapDigit(split));
        }
        if let Some(&d) = prefix.iter().chain(cycle.iter()).find(|&&d| d > 7) {
            return Err(GameError::BadDigit(d));
        }
        Ok(OctalCode {
            split,
            prefix,
            cycle,
        })
    }

    pub fn whole_heap_digit(&self) -> u8 {
        self.split
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[u8] {
        &self.cycle
    }

    pub fn is_infinite(&self) -> bool {
        self.cycle.iter().any(|&d| d != 0)
    }

    /// The same game with trailing zero digits and an all-zero block
    /// dropped, so `0.75(0)` and `0.750` both become `0.75`.
    pub fn normalized(&self) -> OctalCode {
        if self.is_infinite() {
            return self.clone();
        }
        let len = self.prefix.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1);
        OctalCode {
            split: self.split,
            prefix: self.prefix[..len].to_vec(),
            cycle: Vec::new(),
        }
    }

    /// The effective digit `d_k` for `k >= 1`.
    pub fn digit(&self, k: usize) -> u8 {
        assert!(k >= 1);
        if k <= self.prefix.len() {
            self.prefix[k - 1]
        } else if self.cycle.is_empty() {
            0
        } else {
            self.cycle[(k - 1 - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The largest number of beans any single move can remove, or, for codes
    /// with an infinitely repeating nonzero block, the length of prefix plus
    /// one block.
    pub fn max_move(&self) -> usize {
        if self.is_infinite() {
            return self.prefix.len() + self.cycle.len();
        }
        self.prefix
            .iter()
            .rposition(|&d| d != 0)
            .map_or(0, |i| i + 1)
    }

    /// All options of a single heap of `size` beans, each as a list of the
    /// resulting heap sizes (`[]` for a move that removes the heap).
    pub fn heap_options(&self, size: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for take in 1..=size {
            let d = self.digit(take);
            let rest = size - take;
            if d & 1 != 0 && rest == 0 {
                out.push(Vec::new());
            }
            if d & 2 != 0 && rest > 0 {
                out.push(vec![rest]);
            }
            if d & 4 != 0 && rest >= 2 {
                for a in 1..=rest / 2 {
                    out.push(vec![a, rest - a]);
                }
            }
        }
        if self.split & 4 != 0 && size >= 2 {
            for a in 1..=size / 2 {
                out.push(vec![a, size - a]);
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for OctalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.", self.split)?;
        for d in &self.prefix {
            write!(f, "{d}")?;
        }
        if !self.cycle.is_empty() {
            write!(f, "(")?;
            for d in &self.cycle {
                write!(f, "{d}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl FromStr for OctalCode {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_octal_code(s)
    }
}

fn digits(s: &str, text: &str) -> Result<Vec<u8>, GameError> {
    s.chars()
        .map(|c| {
            c.to_digit(10)
                .map(|d| d as u8)
                .ok_or_else(|| GameError::Syntax(format!("unexpected {c:?} in code {text:?}")))
        })
        .collect::<Result<Vec<_>, _>>()
        .and_then(|ds| match ds.iter().find(|&&d| d > 7) {
            Some(&d) => Err(GameError::BadDigit(d)),
            None => Ok(ds),
        })
}

/// Parses `d0.digits`, `d0.digits(cycle)`, `d0.digits(cycle)^n` or
/// `d0.digits(cycle)^inf`. A finite repetition count expands the block.
pub fn parse_octal_code(text: &str) -> Result<OctalCode, GameError> {
    let t = text.trim();
    let (head, tail) = t
        .split_once('.')
        .ok_or_else(|| GameError::Syntax(format!("missing '.' in code {text:?}")))?;
    if head.len() != 1 {
        return Err(GameError::Syntax(format!("bad whole-heap digit in {text:?}")));
    }
    let split = digits(head, text)?[0];
    let (prefix_str, rest) = match tail.find('(') {
        Some(i) => (&tail[..i], Some(&tail[i + 1..])),
        None => (tail, None),
    };
    let mut prefix = digits(prefix_str, text)?;
    let mut cycle = Vec::new();
    if let Some(rest) = rest {
        let (block, after) = rest
            .split_once(')')
            .ok_or_else(|| GameError::Syntax(format!("unclosed '(' in {text:?}")))?;
        let block = digits(block, text)?;
        if block.is_empty() {
            return Err(GameError::EmptyCycle);
        }
        if after.is_empty() {
            cycle = block;
        } else {
            let exp = after
                .strip_prefix('^')
                .ok_or_else(|| GameError::Syntax(format!("trailing input in {text:?}")))?;
            if exp == "inf" {
                cycle = block;
            } else {
                let n: usize = exp
                    .parse()
                    .map_err(|_| GameError::Syntax(format!("bad repetition count in {text:?}")))?;
                if n == 0 {
                    return Err(GameError::Syntax(format!("zero repetition count in {text:?}")));
                }
                for _ in 0..n {
                    prefix.extend_from_slice(&block);
                }
            }
        }
    }
    if prefix.is_empty() && cycle.is_empty() {
        return Err(GameError::Syntax(format!("no digits after '.' in {text:?}")));
    }
    OctalCode::new(split, prefix, cycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let c = parse_octal_code("4.7").unwrap();
        assert_eq!(c.whole_heap_digit(), 4);
        assert_eq!(c.prefix(), &[7]);
        let c = parse_octal_code("0.(3310)").unwrap();
        assert_eq!(c.cycle(), &[3, 3, 1, 0]);
        assert!(c.is_infinite());
        assert_eq!(c.digit(5), 3);
        assert_eq!(c.digit(8), 0);
        let c = parse_octal_code("0.(3310)^2").unwrap();
        assert_eq!(c.prefix(), &[3, 3, 1, 0, 3, 3, 1, 0]);
        assert!(c.cycle().is_empty());
        assert_eq!(parse_octal_code("0.(3310)^inf").unwrap(), parse_octal_code("0.(3310)").unwrap());
    }

    #[test]
    fn rejects_bad_codes() {
        assert!(matches!(parse_octal_code("0.8"), Err(GameError::BadDigit(8))));
        assert!(matches!(parse_octal_code("2.7"), Err(GameError::BadWholeHeapDigit(2))));
        assert!(matches!(parse_octal_code("0.1()"), Err(GameError::EmptyCycle)));
        assert!(parse_octal_code("075").is_err());
        assert!(parse_octal_code("0.7(5").is_err());
        assert!(parse_octal_code("0.7(5)x").is_err());
        assert!(parse_octal_code("0.").is_err());
    }

    #[test]
    fn render_round_trips_canonical_strings() {
        for s in ["0.75", "4.7", "0.(3310)", "0.51(2)", "0.123(0)", "0.2(41)"] {
            assert_eq!(parse_octal_code(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn heap_options_follow_digit_bits() {
        let c = parse_octal_code("0.26").unwrap();
        assert_eq!(c.heap_options(3), vec![vec![1], vec![2]]);
        assert_eq!(c.heap_options(5), vec![vec![1, 2], vec![3], vec![4]]);
        assert!(c.heap_options(1).is_empty());
        let c = parse_octal_code("4.7").unwrap();
        assert_eq!(c.heap_options(3), vec![vec![1, 1], vec![1, 2], vec![2]]);
        assert_eq!(c.heap_options(1), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn max_move() {
        assert_eq!(parse_octal_code("0.75").unwrap().max_move(), 2);
        assert_eq!(parse_octal_code("0.3310").unwrap().max_move(), 3);
        assert_eq!(parse_octal_code("0.123(0)").unwrap().max_move(), 3);
        assert_eq!(parse_octal_code("0.51(2)").unwrap().max_move(), 3);
    }

    #[test]
    fn normalization_drops_zero_tails() {
        let n = |s: &str| parse_octal_code(s).unwrap().normalized().to_string();
        assert_eq!(n("0.75(0)"), "0.75");
        assert_eq!(n("0.7500"), "0.75");
        assert_eq!(n("0.51(2)"), "0.51(2)");
    }
}
