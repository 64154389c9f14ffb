use std::collections::HashMap;
use std::fmt;

use super::GameError;

pub type NodeId = usize;

/// An explicit impartial game graph with hash-consed nodes.
///
/// Node 0 is always the empty game. Nodes are created after all of their
/// options, so ascending id order is a topological order.
#[derive(Clone, Debug)]
pub struct GameDag {
    options: Vec<Vec<NodeId>>,
    index: HashMap<Vec<NodeId>, NodeId>,
    sums: HashMap<(NodeId, NodeId), NodeId>,
    root: NodeId,
    summands: Vec<NodeId>,
}

impl Default for GameDag {
    fn default() -> Self {
        Self::new()
    }
}

impl GameDag {
    pub fn new() -> Self {
        let mut index = HashMap::new();
        index.insert(Vec::new(), 0);
        GameDag {
            options: vec![Vec::new()],
            index,
            sums: HashMap::new(),
            root: 0,
            summands: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.options.len()
    }

    pub fn is_empty(&self) -> bool {
        self.options.len() == 1
    }

    pub fn options(&self, node: NodeId) -> &[NodeId] {
        &self.options[node]
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    /// The components of the designated position. A single game has itself
    /// as its only summand; the empty game has none.
    pub fn summands(&self) -> &[NodeId] {
        &self.summands
    }

    pub fn set_root(&mut self, summands: Vec<NodeId>) {
        let mut root = 0;
        for &s in &summands {
            root = self.sum(root, s);
        }
        self.root = root;
        self.summands = summands.into_iter().filter(|&s| s != 0).collect();
    }

    /// Returns the node with exactly this option set, creating it if needed.
    pub fn node(&mut self, mut opts: Vec<NodeId>) -> NodeId {
        opts.sort_unstable();
        opts.dedup();
        if let Some(&id) = self.index.get(&opts) {
            return id;
        }
        let id = self.options.len();
        self.options.push(opts.clone());
        self.index.insert(opts, id);
        id
    }

    /// The nim heap `*n` with options `0, *, ..., *(n-1)`.
    pub fn nim_heap(&mut self, n: usize) -> NodeId {
        let mut heaps = vec![0];
        for _ in 0..n {
            let next = self.node(heaps.clone());
            heaps.push(next);
        }
        heaps[n]
    }

    /// The disjunctive sum of two nodes, built as an explicit node.
    pub fn sum(&mut self, a: NodeId, b: NodeId) -> NodeId {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let key = (a.min(b), a.max(b));
        if let Some(&id) = self.sums.get(&key) {
            return id;
        }
        let mut opts = Vec::new();
        for &a2 in self.options[a].clone().iter() {
            opts.push(self.sum(a2, b));
        }
        for &b2 in self.options[b].clone().iter() {
            opts.push(self.sum(a, b2));
        }
        let id = self.node(opts);
        self.sums.insert(key, id);
        id
    }

    /// Every node reachable from `starts` (including them), in ascending
    /// id order. The empty game is excluded.
    pub fn followers(&self, starts: &[NodeId]) -> Vec<NodeId> {
        let mut seen = vec![false; self.options.len()];
        let mut stack: Vec<NodeId> = starts.to_vec();
        while let Some(n) = stack.pop() {
            if seen[n] {
                continue;
            }
            seen[n] = true;
            stack.extend(self.options[n].iter().copied());
        }
        (1..self.options.len()).filter(|&n| seen[n]).collect()
    }

    pub fn birthday(&self, node: NodeId) -> u32 {
        let mut memo = vec![None; node + 1];
        self.birthday_memo(node, &mut memo)
    }

    fn birthday_memo(&self, node: NodeId, memo: &mut Vec<Option<u32>>) -> u32 {
        if let Some(b) = memo[node] {
            return b;
        }
        let b = self.options[node]
            .iter()
            .map(|&o| self.birthday_memo(o, memo) + 1)
            .max()
            .unwrap_or(0);
        memo[node] = Some(b);
        b
    }

    /// `Some(n)` if the node is literally the nim heap `*n`.
    pub fn as_nim_heap(&self, node: NodeId) -> Option<usize> {
        let opts = &self.options[node];
        for (i, &o) in opts.iter().enumerate() {
            if self.as_nim_heap(o) != Some(i) {
                return None;
            }
        }
        Some(opts.len())
    }

    /// Renders a node as `0`, `*`, `*3` or `{...}`.
    pub fn render(&self, node: NodeId) -> String {
        match self.as_nim_heap(node) {
            Some(0) => "0".to_string(),
            Some(1) => "*".to_string(),
            Some(n) => format!("*{n}"),
            None => {
                let inner: Vec<String> = self.options[node].iter().map(|&o| self.render(o)).collect();
                format!("{{{}}}", inner.join(","))
            }
        }
    }
}

impl fmt::Display for GameDag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands.iter().map(|&s| self.render(s)).collect();
        write!(f, "{}", parts.join("+"))
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> GameError {
        GameError::Syntax(format!("{msg} at offset {} in {:?}", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), GameError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().ok()
    }

    /// sum := term ('+' term)*
    fn sum(&mut self, dag: &mut GameDag) -> Result<Vec<NodeId>, GameError> {
        let mut parts = self.term(dag)?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            parts.extend(self.term(dag)?);
        }
        Ok(parts)
    }

    fn term(&mut self, dag: &mut GameDag) -> Result<Vec<NodeId>, GameError> {
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                Ok(vec![0])
            }
            Some(b'*') => {
                self.pos += 1;
                let n = match self.bytes.get(self.pos) {
                    Some(c) if c.is_ascii_digit() => self.number().ok_or_else(|| self.err("bad nim heap size"))?,
                    _ => 1,
                };
                Ok(vec![dag.nim_heap(n)])
            }
            Some(b'{') => {
                self.pos += 1;
                let mut opts = Vec::new();
                if self.peek() == Some(b'}') {
                    self.pos += 1;
                    return Ok(vec![0]);
                }
                loop {
                    let g = self.term(dag)?;
                    if self.peek() == Some(b'+') {
                        return Err(self.err("sums are not allowed inside option braces"));
                    }
                    let [g] = g[..] else {
                        return Err(self.err("sums are not allowed inside option braces"));
                    };
                    opts.push(g);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b'}') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.err("expected ',' or '}'")),
                    }
                }
                Ok(vec![dag.node(opts)])
            }
            Some(b'(') => {
                self.pos += 1;
                let parts = self.sum(dag)?;
                self.expect(b')')?;
                Ok(parts)
            }
            _ => Err(self.err("expected a game")),
        }
    }
}

/// Parses a game expression: `0`, `*`, `*n`, `{g, g, ...}`, parenthesized
/// groups, and top-level sums `g + g`.
pub fn parse_game_expr(text: &str) -> Result<GameDag, GameError> {
    let mut dag = GameDag::new();
    let mut p = Parser {
        text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let parts = p.sum(&mut dag)?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    dag.set_root(parts);
    Ok(dag)
}
