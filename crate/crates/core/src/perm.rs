//! Permutations of strand positions with canonical (lexicographically
//! smallest) reduced words.

use std::fmt;

use itertools::Itertools;

use crate::error::{KlrError, Result};
use crate::graph::CartanGraph;
use crate::seq::Sequence;

/// One-line form, 0-based: `self.0[a]` is the top position reached by the
/// strand starting at bottom position `a`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation((0..m).collect())
    }

    /// From 0-based images; errors unless `images` is a permutation of `0..m`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(KlrError::InvalidArgument(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    /// From the usual 1-based one-line notation.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        if one_line.contains(&0) {
            return Err(KlrError::InvalidArgument("one-line notation is 1-based".into()));
        }
        Self::from_images(one_line.iter().map(|&x| x - 1).collect())
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x + 1).collect()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// Adjacent transposition swapping positions `k` and `k + 1` (0-based).
    pub fn transposition(m: usize, k: usize) -> Self {
        let mut p = Self::identity(m);
        p.0.swap(k, k + 1);
        p
    }

    /// Product `s_{w_0} s_{w_1} ... ` of 0-based adjacent transpositions,
    /// leftmost factor applied last.
    pub fn from_word(m: usize, word: &[usize]) -> Self {
        let mut p = Self::identity(m);
        for &k in word.iter().rev() {
            p = p.left_mul_s(k);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(a, &b)| a == b)
    }

    pub fn apply(&self, a: usize) -> usize {
        self.0[a]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&a| self.0[a]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (a, &b) in self.0.iter().enumerate() {
            inv[b] = a;
        }
        Permutation(inv)
    }

    /// `s_k ∘ self` (0-based `k`).
    pub fn left_mul_s(&self, k: usize) -> Permutation {
        Permutation(
            self.0
                .iter()
                .map(|&x| match x {
                    x if x == k => k + 1,
                    x if x == k + 1 => k,
                    x => x,
                })
                .collect(),
        )
    }

    /// Pairs `a < b` with `w(a) > w(b)`.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let m = self.0.len();
        (0..m).flat_map(|a| ((a + 1)..m).map(move |b| (a, b))).filter(|&(a, b)| self.0[a] > self.0[b]).collect()
    }

    /// Coxeter length.
    pub fn length(&self) -> usize {
        let m = self.0.len();
        (0..m).map(|a| ((a + 1)..m).filter(|&b| self.0[a] > self.0[b]).count()).sum()
    }

    /// Whether `l(s_k w) < l(w)` (0-based `k`).
    pub fn is_left_descent(&self, k: usize) -> bool {
        let a = self.0.iter().position(|&x| x == k).unwrap();
        let b = self.0.iter().position(|&x| x == k + 1).unwrap();
        a > b
    }

    /// Lexicographically smallest reduced word, 0-based letters, read
    /// top-to-bottom (first letter is the leftmost factor).
    pub fn lex_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w.is_left_descent(k)) {
            word.push(k);
            w = w.left_mul_s(k);
        }
        word
    }

    /// Lexicographically smallest reduced word in 1-based indices
    /// (`s_1, ..., s_{m-1}`).
    pub fn canonical_reduced_word(&self) -> Vec<usize> {
        self.lex_word().into_iter().map(|k| k + 1).collect()
    }

    /// `w(i)`: the entry at bottom position `a` moves to top position `w(a)`.
    pub fn act_on(&self, seq: &Sequence) -> Sequence {
        let mut out = vec![0; seq.len()];
        for (a, &v) in seq.0.iter().enumerate() {
            out[self.0[a]] = v;
        }
        Sequence(out)
    }

    pub fn all(m: usize) -> impl Iterator<Item = Permutation> {
        (0..m).permutations(m).map(Permutation)
    }

    /// `_jS_i`: all permutations taking `i` to `j`.
    pub fn maps_between(i: &Sequence, j: &Sequence) -> Vec<Permutation> {
        fn rec(i: &Sequence, j: &Sequence, a: usize, used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if a == i.len() {
                out.push(Permutation(cur.clone()));
                return;
            }
            for b in 0..j.len() {
                if !used[b] && j.0[b] == i.0[a] {
                    used[b] = true;
                    cur.push(b);
                    rec(i, j, a + 1, used, cur, out);
                    cur.pop();
                    used[b] = false;
                }
            }
        }
        let mut out = Vec::new();
        if i.len() == j.len() {
            rec(i, j, 0, &mut vec![false; j.len()], &mut Vec::new(), &mut out);
        }
        out
    }
}

/// Degree of the crossing diagram of `w` on bottom sequence `seq`:
/// `-sum i_a . i_b` over the inversions of `w`.
pub fn diagram_degree(graph: &CartanGraph, seq: &Sequence, w: &Permutation) -> i64 {
    w.inversions().into_iter().map(|(a, b)| -graph.cartan(seq.0[a], seq.0[b])).sum()
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.one_line())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.one_line().iter().join(","))
    }
}
