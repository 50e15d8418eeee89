//! Weights, vertex sequences and divided-power sequences.

use std::fmt::Write as _;

use itertools::Itertools;

use crate::error::{KlrError, Result};
use crate::graph::{CartanGraph, Vertex};
use crate::laurent::{qfact, LaurentPoly};

/// Vertex multiplicities `nu_i`, indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<u32>);

impl Weight {
    pub fn zero(graph: &CartanGraph) -> Self {
        Weight(vec![0; graph.num_vertices()])
    }

    pub fn get(&self, v: Vertex) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    /// `|nu|`.
    pub fn size(&self) -> usize {
        self.0.iter().map(|&n| n as usize).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().enumerate().filter(|(_, &n)| n > 0).map(|(v, _)| v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        let len = self.0.len().max(other.0.len());
        Weight((0..len).map(|v| self.get(v) + other.get(v)).collect())
    }

    /// Lowest degree in which `R(nu)` is nonzero: `-sum_i nu_i (nu_i - 1)`.
    pub fn degree_lower_bound(&self) -> i64 {
        -self.0.iter().map(|&n| n as i64 * (n as i64 - 1)).sum::<i64>()
    }

    /// `|Seq(nu)|`, the multinomial coefficient.
    pub fn num_sequences(&self) -> u128 {
        let mut total = 0u128;
        let mut acc = 1u128;
        for &n in &self.0 {
            for k in 1..=n as u128 {
                total += 1;
                acc = acc * total / k;
            }
        }
        acc
    }

    /// Parses `"i:2,j:1"`.
    pub fn parse(graph: &CartanGraph, s: &str) -> Result<Self> {
        let mut w = Weight::zero(graph);
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, count) = part
                .split_once(':')
                .ok_or_else(|| KlrError::Parse(format!("expected `vertex:count` in weight, got `{part}`")))?;
            let v = graph.vertex(name.trim())?;
            let n: u32 = count.trim().parse().map_err(|_| KlrError::Parse(format!("bad multiplicity `{count}`")))?;
            w.0[v] += n;
        }
        Ok(w)
    }

    pub fn display(&self, graph: &CartanGraph) -> String {
        self.support().map(|v| format!("{}:{}", graph.name(v), self.get(v))).join(",")
    }
}

/// A sequence of vertices `i_1 ... i_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Sequence(pub Vec<Vertex>);

impl Sequence {
    pub fn new(v: Vec<Vertex>) -> Self {
        Sequence(v)
    }

    pub fn empty() -> Self {
        Sequence(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, graph: &CartanGraph) -> Weight {
        let mut w = Weight::zero(graph);
        for &v in &self.0 {
            w.0[v] += 1;
        }
        w
    }

    pub fn concat(&self, other: &Sequence) -> Sequence {
        Sequence(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn reversed(&self) -> Sequence {
        Sequence(self.0.iter().rev().copied().collect())
    }

    /// Swaps entries `k` and `k + 1` (0-based).
    pub fn swapped(&self, k: usize) -> Sequence {
        let mut s = self.clone();
        s.0.swap(k, k + 1);
        s
    }

    pub fn parse(graph: &CartanGraph, s: &str) -> Result<Self> {
        let divided = DividedSequence::parse(graph, s)?;
        if divided.blocks.iter().any(|&(_, n)| n != 1) {
            return Err(KlrError::Parse(format!("`{s}` contains divided powers; expected a plain sequence")));
        }
        Ok(divided.expand())
    }

    pub fn display(&self, graph: &CartanGraph) -> String {
        let sep = if graph.compact_names() { "" } else { " " };
        self.0.iter().map(|&v| graph.name(v)).join(sep)
    }
}

/// All sequences with vertex counts `nu`, in lexicographic order.
pub fn seq_enumerate(nu: &Weight) -> Vec<Sequence> {
    fn rec(counts: &mut [u32], prefix: &mut Vec<Vertex>, remaining: usize, out: &mut Vec<Sequence>) {
        if remaining == 0 {
            out.push(Sequence(prefix.clone()));
            return;
        }
        for v in 0..counts.len() {
            if counts[v] > 0 {
                counts[v] -= 1;
                prefix.push(v);
                rec(counts, prefix, remaining - 1, out);
                prefix.pop();
                counts[v] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let mut counts = nu.0.clone();
    rec(&mut counts, &mut Vec::new(), nu.size(), &mut out);
    out
}

/// All interleavings of `left` and `right` with their shuffle degree
/// `-sum i_a . j_b` over pairs where a letter of `right` lands before a
/// letter of `left`. Ordered by the positions taken by `left`.
pub fn shuffles(graph: &CartanGraph, left: &Sequence, right: &Sequence) -> Vec<(Sequence, i64)> {
    let n = left.len() + right.len();
    let mut out = Vec::new();
    for positions in (0..n).combinations(left.len()) {
        let mut merged = Vec::with_capacity(n);
        let mut degree = 0;
        let (mut li, mut ri) = (0, 0);
        let mut pos_iter = positions.iter().peekable();
        for p in 0..n {
            if pos_iter.peek() == Some(&&p) {
                pos_iter.next();
                let a = left.0[li];
                // every right letter already placed crosses this left letter
                for &b in &right.0[..ri] {
                    degree -= graph.cartan(a, b);
                }
                merged.push(a);
                li += 1;
            } else {
                merged.push(right.0[ri]);
                ri += 1;
            }
        }
        out.push((Sequence(merged), degree));
    }
    out
}

/// A divided-power expression `i_1^(n_1) ... i_r^(n_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DividedSequence {
    pub blocks: Vec<(Vertex, u32)>,
}

impl DividedSequence {
    pub fn new(blocks: Vec<(Vertex, u32)>) -> Result<Self> {
        if blocks.iter().any(|&(_, n)| n == 0) {
            return Err(KlrError::InvalidArgument("divided power exponents must be positive".into()));
        }
        Ok(Self { blocks })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_sequence(s: &Sequence) -> Self {
        Self { blocks: s.0.iter().map(|&v| (v, 1)).collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Total number of strands.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|&(_, n)| n as usize).sum()
    }

    /// The plain sequence obtained by repeating each vertex `n_k` times.
    pub fn expand(&self) -> Sequence {
        Sequence(self.blocks.iter().flat_map(|&(v, n)| std::iter::repeat(v).take(n as usize)).collect())
    }

    pub fn weight(&self, graph: &CartanGraph) -> Weight {
        self.expand().weight(graph)
    }

    /// `<i> = sum n_k (n_k - 1) / 2`.
    pub fn shift(&self) -> i64 {
        self.blocks.iter().map(|&(_, n)| (n as i64) * (n as i64 - 1) / 2).sum()
    }

    /// `i! = prod [n_k]!`.
    pub fn factorial(&self) -> LaurentPoly {
        self.blocks.iter().fold(LaurentPoly::one(), |acc, &(_, n)| &acc * &qfact(n))
    }

    pub fn block_sizes(&self) -> impl Iterator<Item = u32> + '_ {
        self.blocks.iter().map(|&(_, n)| n)
    }

    pub fn concat(&self, other: &DividedSequence) -> DividedSequence {
        Self { blocks: self.blocks.iter().chain(&other.blocks).copied().collect() }
    }

    pub fn reversed(&self) -> DividedSequence {
        Self { blocks: self.blocks.iter().rev().copied().collect() }
    }

    /// Parses `i^(2) j i`, `ij^(2)i` or `i j`. Vertex names are matched
    /// longest-first; whitespace and commas separate tokens.
    pub fn parse(graph: &CartanGraph, s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
            if rest.is_empty() {
                break;
            }
            let (v, after) = graph
                .lex_vertex(rest)
                .ok_or_else(|| KlrError::Parse(format!("unknown vertex at `{rest}` in `{s}`")))?;
            rest = after;
            let mut n = 1;
            if let Some(after_caret) = rest.strip_prefix("^(") {
                let close = after_caret.find(')').ok_or_else(|| KlrError::Parse(format!("unclosed `^(` in `{s}`")))?;
                n = after_caret[..close]
                    .trim()
                    .parse()
                    .map_err(|_| KlrError::Parse(format!("bad exponent in `{s}`")))?;
                if n == 0 {
                    return Err(KlrError::Parse(format!("zero divided power in `{s}`")));
                }
                rest = &after_caret[close + 1..];
            } else if rest.starts_with('^') {
                return Err(KlrError::Parse(format!("divided powers are written `i^(n)`, in `{s}`")));
            }
            blocks.push((v, n));
        }
        Ok(Self { blocks })
    }

    pub fn display(&self, graph: &CartanGraph) -> String {
        let compact = graph.compact_names();
        let mut out = String::new();
        for (k, &(v, n)) in self.blocks.iter().enumerate() {
            if k > 0 && !compact {
                out.push(' ');
            }
            out.push_str(graph.name(v));
            if n != 1 {
                write!(out, "^({n})").unwrap();
            }
        }
        out
    }
}

/// All divided-power sequences of weight `nu` (every composition of each
/// run into blocks).
pub fn seqd_enumerate(nu: &Weight) -> Vec<DividedSequence> {
    fn rec(counts: &mut [u32], prefix: &mut Vec<(Vertex, u32)>, out: &mut Vec<DividedSequence>) {
        if counts.iter().all(|&c| c == 0) {
            out.push(DividedSequence { blocks: prefix.clone() });
            return;
        }
        for v in 0..counts.len() {
            for n in 1..=counts[v] {
                counts[v] -= n;
                prefix.push((v, n));
                rec(counts, prefix, out);
                prefix.pop();
                counts[v] += n;
            }
        }
    }
    let mut out = Vec::new();
    let mut counts = nu.0.clone();
    rec(&mut counts, &mut Vec::new(), &mut out);
    out
}
