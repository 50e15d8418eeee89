//! Ring arithmetic in `R(nu)` by rewriting products into the normal-form
//! basis `{ŵ_i x^u}`.
//!
//! Every product is built from left multiplications of a basis element by a
//! single dot or crossing. Dots are pushed down through the crossings of the
//! canonical word (equal labels leave a correction with one crossing
//! removed). A new crossing either extends the word, which is then brought
//! back to canonical form by commutation and braid moves, or meets a
//! crossing on the same pair of strands, which is exposed by the same moves
//! and cancelled by the quadratic relation. A braid move on strands labelled
//! `i j i` with `i.j = -1` leaves the identity as correction. Corrections
//! always have fewer crossings, so the recursion terminates.
//!
//! All results for a basis element with no dots are cached per
//! `(generator, source, permutation)`; dots at the bottom commute with
//! left multiplication and are added afterwards.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::element::{BasisKey, KlrElement};
use crate::error::{KlrError, Result};
use crate::gdim::GradedDim;
use crate::graph::{CartanGraph, Vertex};
use crate::laurent::LaurentPoly;
use crate::perm::{diagram_degree, Permutation};
use crate::seq::{DividedSequence, Sequence};

/// A local generator: `Dot(k)` puts a dot on strand `k`, `Cross(k)` crosses
/// strands `k` and `k + 1` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    Dot(usize),
    Cross(usize),
}

/// A diagram given as generators stacked bottom to top on `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorWord {
    pub base: Sequence,
    pub tokens: Vec<Token>,
}

impl GeneratorWord {
    /// Parses `"<seq>: <tokens>"` with tokens `Dk` and `Ck`.
    pub fn parse(graph: &CartanGraph, s: &str) -> Result<Self> {
        let (seq, toks) = s.split_once(':').unwrap_or((s, ""));
        let base = Sequence::parse(graph, seq)?;
        let tokens = toks
            .split_whitespace()
            .map(|t| {
                let bad = || KlrError::Parse(format!("bad token `{t}` (expected Dk or Ck)"));
                let (kind, num) = t.split_at(1);
                let k: usize = num.parse().map_err(|_| bad())?;
                match kind {
                    "D" | "d" => Ok(Token::Dot(k)),
                    "C" | "c" => Ok(Token::Cross(k)),
                    _ => Err(bad()),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { base, tokens })
    }
}

/// 0-based generator used by the rewriting engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Gen {
    Dot(usize),
    Cross(usize),
}

/// Linear combination of basis elements sharing one source sequence.
type Lin = HashMap<(Permutation, Vec<u32>), BigInt>;

fn lin_add(acc: &mut Lin, key: (Permutation, Vec<u32>), coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    match acc.entry(key) {
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
        std::collections::hash_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// `acc += c * src * x^u`.
fn lin_add_shifted(acc: &mut Lin, src: &Lin, c: &BigInt, u: &[u32]) {
    for ((w, dots), v) in src {
        let shifted: Vec<u32> = dots.iter().zip(u).map(|(a, b)| a + b).collect();
        lin_add(acc, (w.clone(), shifted), v * c);
    }
}

fn lin_unit(m: usize) -> Lin {
    let mut l = Lin::new();
    l.insert((Permutation::identity(m), vec![0; m]), BigInt::one());
    l
}

type CacheKey = (Gen, Sequence, Permutation);

/// The ring `R(nu)` of a fixed graph, for all weights at once.
pub struct KlrAlgebra {
    graph: CartanGraph,
    cache: Mutex<HashMap<CacheKey, Arc<Lin>>>,
}

impl KlrAlgebra {
    pub fn new(graph: CartanGraph) -> Self {
        Self { graph, cache: Mutex::new(HashMap::new()) }
    }

    pub fn graph(&self) -> &CartanGraph {
        &self.graph
    }

    pub fn cache_size(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    // ---- rewriting engine -------------------------------------------------

    /// `g * ŵ_i` in normal form.
    fn left_gen_basis(&self, i: &Sequence, g: Gen, w: &Permutation) -> Arc<Lin> {
        let key = (g, i.clone(), w.clone());
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let result = Arc::new(match g {
            Gen::Dot(k) => self.compute_dot(i, k, w),
            Gen::Cross(k) => self.compute_cross(i, k, w),
        });
        self.cache.lock().unwrap().entry(key).or_insert(result).clone()
    }

    fn left_gen_lin(&self, i: &Sequence, g: Gen, lin: &Lin) -> Lin {
        let mut out = Lin::new();
        for ((w, u), c) in lin {
            let prod = self.left_gen_basis(i, g, w);
            lin_add_shifted(&mut out, &prod, c, u);
        }
        out
    }

    /// `δ_{word[0]} ... δ_{word[r-1]} 1_i` for an arbitrary word.
    fn word_to_lin(&self, i: &Sequence, word: &[usize]) -> Lin {
        let mut lin = lin_unit(i.len());
        for &k in word.iter().rev() {
            if lin.is_empty() {
                break;
            }
            lin = self.left_gen_lin(i, Gen::Cross(k), &lin);
        }
        lin
    }

    /// Sequence at the bottom of `word[pos]`, i.e. after applying
    /// `word[pos + 1..]` to `i`.
    fn seq_below(i: &Sequence, word: &[usize], pos: usize) -> Sequence {
        let mut s = i.clone();
        for &k in word[pos + 1..].iter().rev() {
            s.0.swap(k, k + 1);
        }
        s
    }

    /// Replaces `a b a` at `word[pos..pos + 3]` with `b a b`, recording the
    /// identity correction when the strands are labelled `x y x`, `x.y = -1`.
    fn braid_move(&self, i: &Sequence, word: &mut [usize], pos: usize, corr: &mut Vec<(i64, Vec<usize>)>) {
        let (a, b) = (word[pos], word[pos + 1]);
        debug_assert_eq!(word[pos + 2], a);
        debug_assert_eq!(a.abs_diff(b), 1);
        let lo = a.min(b);
        let s = Self::seq_below(i, word, pos + 2);
        let (x, y, z) = (s.0[lo], s.0[lo + 1], s.0[lo + 2]);
        if x == z && self.graph.cartan(x, y) == -1 {
            // δ_lo δ_{lo+1} δ_lo - δ_{lo+1} δ_lo δ_{lo+1} = 1 on x y x
            let sign = if a == lo { 1 } else { -1 };
            let mut del = word[..pos].to_vec();
            del.extend_from_slice(&word[pos + 3..]);
            corr.push((sign, del));
        }
        word[pos] = b;
        word[pos + 1] = a;
        word[pos + 2] = b;
    }

    /// Rewrites the reduced word `word[pos..]`, which has left descent `c`,
    /// into one starting with `c`.
    fn expose(&self, i: &Sequence, word: &mut [usize], pos: usize, c: usize, corr: &mut Vec<(i64, Vec<usize>)>) {
        let a = word[pos];
        if a == c {
            return;
        }
        self.expose(i, word, pos + 1, c, corr);
        if a.abs_diff(c) > 1 {
            word.swap(pos, pos + 1);
        } else {
            self.expose(i, word, pos + 2, a, corr);
            self.braid_move(i, word, pos, corr);
        }
    }

    /// Normal form of a reduced word on `i`.
    fn canonicalize(&self, i: &Sequence, word: &[usize]) -> Lin {
        let m = i.len();
        let mut word = word.to_vec();
        let mut corr = Vec::new();
        for pos in 0..word.len() {
            let rest = Permutation::from_word(m, &word[pos..]);
            let c = (0..m - 1).find(|&k| rest.is_left_descent(k)).expect("nonempty reduced word has a descent");
            self.expose(i, &mut word, pos, c, &mut corr);
        }
        let mut out = Lin::new();
        lin_add(&mut out, (Permutation::from_word(m, &word), vec![0; m]), BigInt::one());
        for (sign, cw) in corr {
            let l = self.word_to_lin(i, &cw);
            lin_add_shifted(&mut out, &l, &BigInt::from(sign), &vec![0; m]);
        }
        out
    }

    fn compute_cross(&self, i: &Sequence, k: usize, w: &Permutation) -> Lin {
        let m = i.len();
        if !w.is_left_descent(k) {
            let mut word = vec![k];
            word.extend(w.lex_word());
            return self.canonicalize(i, &word);
        }
        let mut word = w.lex_word();
        let mut corr = Vec::new();
        self.expose(i, &mut word, 0, k, &mut corr);
        let zero = vec![0; m];
        let mut out = Lin::new();
        for (sign, cw) in corr {
            let mut full = vec![k];
            full.extend(cw);
            let l = self.word_to_lin(i, &full);
            lin_add_shifted(&mut out, &l, &BigInt::from(sign), &zero);
        }
        let rest = &word[1..];
        let s = Self::seq_below(i, &word, 0);
        match self.graph.cartan(s.0[k], s.0[k + 1]) {
            2 => {}
            0 => {
                let l = self.canonicalize(i, rest);
                lin_add_shifted(&mut out, &l, &BigInt::one(), &zero);
            }
            _ => {
                let l = self.canonicalize(i, rest);
                for p in [k, k + 1] {
                    let d = self.left_gen_lin(i, Gen::Dot(p), &l);
                    lin_add_shifted(&mut out, &d, &BigInt::one(), &zero);
                }
            }
        }
        out
    }

    fn compute_dot(&self, i: &Sequence, k: usize, w: &Permutation) -> Lin {
        let m = i.len();
        let word = w.lex_word();
        let zero = vec![0; m];
        let mut out = Lin::new();
        let mut p = k;
        for (l, &c) in word.iter().enumerate() {
            if p != c && p != c + 1 {
                continue;
            }
            let s = Self::seq_below(i, &word, l);
            if s.0[c] == s.0[c + 1] {
                // x_c δ_c = δ_c x_{c+1} + 1,  x_{c+1} δ_c = δ_c x_c - 1
                let sign = if p == c { 1 } else { -1 };
                let mut del = word[..l].to_vec();
                del.extend_from_slice(&word[l + 1..]);
                let corr = self.word_to_lin(i, &del);
                lin_add_shifted(&mut out, &corr, &BigInt::from(sign), &zero);
            }
            p = if p == c { c + 1 } else { c };
        }
        let mut dots = zero;
        dots[p] = 1;
        lin_add(&mut out, (w.clone(), dots), BigInt::one());
        out
    }

    fn lin_to_element(&self, i: &Sequence, lin: Lin) -> KlrElement {
        let weight = i.weight(&self.graph);
        let terms: BTreeMap<BasisKey, BigInt> =
            lin.into_iter().map(|((w, u), c)| (BasisKey::new(i.clone(), w, u), c)).collect();
        KlrElement::from_terms(weight, terms)
    }

    /// Applies generators (listed top to bottom) to the left of `lin`.
    fn apply_gens(&self, i: &Sequence, gens: &[Gen], mut lin: Lin) -> Lin {
        for &g in gens.iter().rev() {
            if lin.is_empty() {
                break;
            }
            lin = self.left_gen_lin(i, g, &lin);
        }
        lin
    }

    // ---- public operations ------------------------------------------------

    /// `1_i`.
    pub fn idempotent(&self, i: &Sequence) -> KlrElement {
        KlrElement::from_key(&self.graph, BasisKey::identity(i.clone()), 1)
    }

    /// Unit of `R(nu)`: the sum of all `1_i`.
    pub fn unit(&self, nu: &crate::seq::Weight) -> KlrElement {
        let mut e = KlrElement::zero(nu.clone());
        for i in crate::seq::seq_enumerate(nu) {
            e.add_term(BasisKey::identity(i), BigInt::one());
        }
        e
    }

    fn check_token(&self, t: Token, m: usize) -> Result<Gen> {
        match t {
            Token::Dot(k) if (1..=m).contains(&k) => Ok(Gen::Dot(k - 1)),
            Token::Cross(k) if k >= 1 && k < m => Ok(Gen::Cross(k - 1)),
            Token::Dot(k) | Token::Cross(k) => Err(KlrError::IndexOutOfRange { index: k, strands: m }),
        }
    }

    /// `x_{k,i}` or `δ_{k,i}`.
    pub fn generator(&self, token: Token, i: &Sequence) -> Result<KlrElement> {
        let m = i.len();
        let key = match self.check_token(token, m)? {
            Gen::Dot(k) => {
                let mut dots = vec![0; m];
                dots[k] = 1;
                BasisKey::new(i.clone(), Permutation::identity(m), dots)
            }
            Gen::Cross(k) => BasisKey::new(i.clone(), Permutation::transposition(m, k), vec![0; m]),
        };
        Ok(KlrElement::from_key(&self.graph, key, 1))
    }

    /// Normal form of the product `x * y` (`y` at the bottom).
    pub fn multiply(&self, x: &KlrElement, y: &KlrElement) -> Result<KlrElement> {
        if x.weight() != y.weight() {
            return Err(KlrError::WeightMismatch(format!("{:?} vs {:?}", x.weight().0, y.weight().0)));
        }
        // group y by (source, permutation); dots are re-attached afterwards
        let mut groups: BTreeMap<(Sequence, Permutation), Vec<(&Vec<u32>, &BigInt)>> = BTreeMap::new();
        for (k, c) in y.terms() {
            groups.entry((k.source.clone(), k.perm.clone())).or_default().push((&k.dots, c));
        }
        let mut per_source: BTreeMap<Sequence, Lin> = BTreeMap::new();
        for ((src, perm), entries) in &groups {
            let top = perm.act_on(src);
            let m = src.len();
            for (xk, xc) in x.terms() {
                if xk.source != top {
                    continue;
                }
                let mut gens: Vec<Gen> = xk.perm.lex_word().into_iter().map(Gen::Cross).collect();
                for (pos, &e) in xk.dots.iter().enumerate() {
                    gens.extend(std::iter::repeat(Gen::Dot(pos)).take(e as usize));
                }
                let mut start = Lin::new();
                start.insert((perm.clone(), vec![0; m]), BigInt::one());
                let prod = self.apply_gens(src, &gens, start);
                let acc = per_source.entry(src.clone()).or_default();
                for (dots, yc) in entries {
                    lin_add_shifted(acc, &prod, &(xc * *yc), dots);
                }
            }
        }
        let mut out = KlrElement::zero(x.weight().clone());
        for (src, lin) in per_source {
            for ((w, u), c) in lin {
                out.add_term(BasisKey::new(src.clone(), w, u), c);
            }
        }
        Ok(out)
    }

    /// Product of several elements, leftmost on top.
    pub fn multiply_all(&self, factors: &[&KlrElement]) -> Result<KlrElement> {
        let (last, rest) = factors.split_last().ok_or_else(|| KlrError::InvalidArgument("empty product".into()))?;
        rest.iter().rev().try_fold((*last).clone(), |acc, f| self.multiply(f, &acc))
    }

    pub fn evaluate_word(&self, word: &GeneratorWord) -> Result<KlrElement> {
        let m = word.base.len();
        let gens = word.tokens.iter().map(|&t| self.check_token(t, m)).collect::<Result<Vec<_>>>()?;
        // tokens are bottom to top; apply_gens wants top to bottom
        let top_down: Vec<Gen> = gens.into_iter().rev().collect();
        let lin = self.apply_gens(&word.base, &top_down, lin_unit(m));
        Ok(self.lin_to_element(&word.base, lin))
    }

    /// Horizontal flip: antiautomorphism fixing idempotents and dots.
    pub fn psi(&self, x: &KlrElement) -> KlrElement {
        let mut out = KlrElement::zero(x.weight().clone());
        for (k, c) in x.terms() {
            let top = k.target();
            // ψ(ŵ x^u) = x^u (on top, sequence i) · reversed word (source w(i))
            let mut gens: Vec<Gen> = Vec::new();
            for (pos, &e) in k.dots.iter().enumerate() {
                gens.extend(std::iter::repeat(Gen::Dot(pos)).take(e as usize));
            }
            gens.extend(k.perm.lex_word().into_iter().rev().map(Gen::Cross));
            let lin = self.apply_gens(&top, &gens, lin_unit(top.len()));
            for ((w, u), v) in lin {
                out.add_term(BasisKey::new(top.clone(), w, u), v * c);
            }
        }
        out
    }

    /// Vertical flip with sign `(-1)^{#crossings of equally labelled strands}`.
    pub fn sigma(&self, x: &KlrElement) -> KlrElement {
        let mut out = KlrElement::zero(x.weight().clone());
        for (k, c) in x.terms() {
            let m = k.source.len();
            let src = k.source.reversed();
            let same = k.perm.inversions().iter().filter(|&&(a, b)| k.source.0[a] == k.source.0[b]).count();
            let sign = if same % 2 == 0 { c.clone() } else { -c };
            let word: Vec<usize> = k.perm.lex_word().into_iter().map(|a| m - 2 - a).collect();
            let lin = self.canonicalize(&src, &word);
            let dots: Vec<u32> = k.dots.iter().rev().copied().collect();
            for ((w, u), v) in lin {
                let shifted = u.iter().zip(&dots).map(|(a, b)| a + b).collect();
                out.add_term(BasisKey::new(src.clone(), w, shifted), v * &sign);
            }
        }
        out
    }

    /// Places `x` to the left of `y`.
    pub fn juxtapose(&self, x: &KlrElement, y: &KlrElement) -> KlrElement {
        let weight = x.weight().add(y.weight());
        let mut out = KlrElement::zero(weight);
        for (kx, cx) in x.terms() {
            let m = kx.source.len();
            for (ky, cy) in y.terms() {
                let mut images = kx.perm.images().to_vec();
                images.extend(ky.perm.images().iter().map(|&b| b + m));
                let perm = Permutation::from_images(images).expect("block permutation");
                let mut dots = kx.dots.clone();
                dots.extend_from_slice(&ky.dots);
                out.add_term(BasisKey::new(kx.source.concat(&ky.source), perm, dots), cx * cy);
            }
        }
        out
    }

    /// Graded dimension of `_jR(nu)_i`.
    pub fn gdim_hom(&self, j: &Sequence, i: &Sequence) -> Result<GradedDim> {
        gdim_hom(&self.graph, j, i)
    }

    /// `e_m = x_1^{m-1} x_2^{m-2} ... x_{m-1} ∂_{w_0}` in `R(m v)`.
    pub fn nilhecke_em(&self, m: usize, v: Vertex) -> KlrElement {
        let i = Sequence(vec![v; m]);
        let w0 = Permutation::from_images((0..m).rev().collect()).unwrap();
        let mut gens = Vec::new();
        for (pos, e) in (0..m).zip((0..m).rev()) {
            gens.extend(std::iter::repeat(Gen::Dot(pos)).take(e));
        }
        let mut start = Lin::new();
        start.insert((w0, vec![0; m]), BigInt::one());
        let lin = self.apply_gens(&i, &gens, start);
        self.lin_to_element(&i, lin)
    }

    /// `1_θ = e_{i_1,n_1} ⊗ ... ⊗ e_{i_r,n_r}`.
    pub fn divided_idempotent(&self, theta: &DividedSequence) -> KlrElement {
        let mut acc = KlrElement::from_key(&self.graph, BasisKey::identity(Sequence::empty()), 1);
        // the empty sequence has the zero weight of this graph
        acc = KlrElement::from_terms(
            crate::seq::Weight::zero(&self.graph),
            acc.terms().map(|(k, c)| (k.clone(), c.clone())).collect(),
        );
        for &(v, n) in &theta.blocks {
            acc = self.juxtapose(&acc, &self.nilhecke_em(n as usize, v));
        }
        acc
    }

    /// Parses the display format of [`KlrElement`], e.g. `x1[ij] + x2[ij]`
    /// or `-2*d1*x2[ii]`. Factors are read top to bottom.
    pub fn parse_element(&self, text: &str) -> Result<KlrElement> {
        let text = text.trim();
        let bad = |why: &str| KlrError::Parse(format!("{why} in element `{text}`"));
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut depth = 0;
        for ch in text.chars() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') && !cur.ends_with('^') {
                if !cur.trim().is_empty() {
                    pieces.push((neg, cur.trim().to_string()));
                }
                cur.clear();
                neg = ch == '-';
                continue;
            }
            cur.push(ch);
        }
        if !cur.trim().is_empty() {
            pieces.push((neg, cur.trim().to_string()));
        }
        if pieces.len() == 1 && pieces[0].1 == "0" && !pieces[0].0 {
            return Err(bad("the zero element carries no weight; cannot infer it"));
        }
        let mut out: Option<KlrElement> = None;
        for (neg, piece) in pieces {
            let open = piece.find('[').ok_or_else(|| bad("missing `[sequence]`"))?;
            let close = piece.rfind(']').ok_or_else(|| bad("missing `]`"))?;
            let seq = Sequence::parse(&self.graph, &piece[open + 1..close])?;
            let m = seq.len();
            let mut body = piece[..open].trim();
            let mut coeff = BigInt::one();
            let mut gens = Vec::new();
            if body.is_empty() {
                body = "1";
            }
            for (idx, factor) in body.split('*').map(str::trim).enumerate() {
                if idx == 0 && factor.chars().all(|c| c.is_ascii_digit()) {
                    coeff = factor.parse().map_err(|_| bad("bad coefficient"))?;
                    continue;
                }
                if factor == "1" {
                    continue;
                }
                let (head, rest) = factor.split_at(1);
                let (idx_str, exp) = match rest.split_once('^') {
                    Some((a, b)) => (a, b.parse::<usize>().map_err(|_| bad("bad exponent"))?),
                    None => (rest, 1),
                };
                let k: usize = idx_str.parse().map_err(|_| bad("bad strand index"))?;
                let tok = match head {
                    "x" => Token::Dot(k),
                    "d" => Token::Cross(k),
                    _ => return Err(bad("unknown factor")),
                };
                let g = self.check_token(tok, m)?;
                gens.extend(std::iter::repeat(g).take(exp));
            }
            if neg {
                coeff = -coeff;
            }
            let lin = self.apply_gens(&seq, &gens, lin_unit(m));
            let elem = self.lin_to_element(&seq, lin).scale(&coeff);
            out = Some(match out {
                None => elem,
                Some(acc) => acc.add(&elem)?,
            });
        }
        out.ok_or_else(|| bad("empty"))
    }
}

/// Crossing tokens for 1-based indices, bottom to top.
pub fn cross_tokens(indices: &[usize]) -> Vec<Token> {
    indices.iter().map(|&k| Token::Cross(k)).collect()
}

/// Graded dimension of `_jR(nu)_i`: `sum_{w in _jS_i} q^{deg(i,w)} / (1-q^2)^m`.
pub fn gdim_hom(graph: &CartanGraph, j: &Sequence, i: &Sequence) -> Result<GradedDim> {
    if j.weight(graph) != i.weight(graph) {
        return Err(KlrError::WeightMismatch(format!(
            "{} and {} have different weights",
            j.display(graph),
            i.display(graph)
        )));
    }
    let mut num = LaurentPoly::zero();
    for w in Permutation::maps_between(i, j) {
        num.add_term(diagram_degree(graph, i, &w), BigInt::one());
    }
    Ok(GradedDim::new(num, vec![1; i.len()])?.reduced())
}
