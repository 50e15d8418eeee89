//! Elements of `R(nu)` in the normal-form basis: crossings of the canonical
//! reduced word of a permutation on top of a monomial of dots.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{KlrError, Result};
use crate::graph::CartanGraph;
use crate::perm::{diagram_degree, Permutation};
use crate::seq::{Sequence, Weight};

/// Basis element `ŵ_i x^u` of `_{w(i)}R(nu)_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisKey {
    pub source: Sequence,
    pub perm: Permutation,
    pub dots: Vec<u32>,
}

impl BasisKey {
    pub fn new(source: Sequence, perm: Permutation, dots: Vec<u32>) -> Self {
        debug_assert_eq!(source.len(), perm.len());
        debug_assert_eq!(source.len(), dots.len());
        Self { source, perm, dots }
    }

    pub fn identity(source: Sequence) -> Self {
        let m = source.len();
        Self { source, perm: Permutation::identity(m), dots: vec![0; m] }
    }

    pub fn target(&self) -> Sequence {
        self.perm.act_on(&self.source)
    }

    pub fn degree(&self, graph: &CartanGraph) -> i64 {
        diagram_degree(graph, &self.source, &self.perm) + 2 * self.dots.iter().map(|&u| u as i64).sum::<i64>()
    }

    pub fn num_crossings(&self) -> usize {
        self.perm.length()
    }

    /// Text form `d1*d2*x1^2[iji]`: crossings of the canonical word top to
    /// bottom, then dots, then the bottom sequence.
    pub fn display(&self, graph: &CartanGraph) -> String {
        let mut factors: Vec<String> = self.perm.canonical_reduced_word().iter().map(|k| format!("d{k}")).collect();
        for (k, &u) in self.dots.iter().enumerate() {
            match u {
                0 => {}
                1 => factors.push(format!("x{}", k + 1)),
                u => factors.push(format!("x{}^{u}", k + 1)),
            }
        }
        let body = if factors.is_empty() { "1".to_string() } else { factors.join("*") };
        format!("{body}[{}]", self.source.display(graph))
    }
}

/// A finite integer combination of basis elements of `R(nu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlrElement {
    weight: Weight,
    terms: BTreeMap<BasisKey, BigInt>,
}

/// Homogeneity of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Homogeneous(i64),
    Inhomogeneous,
}

impl KlrElement {
    pub fn zero(weight: Weight) -> Self {
        Self { weight, terms: BTreeMap::new() }
    }

    pub fn from_key(graph: &CartanGraph, key: BasisKey, coeff: impl Into<BigInt>) -> Self {
        let mut e = Self::zero(key.source.weight(graph));
        e.add_term(key, coeff.into());
        e
    }

    pub(crate) fn from_terms(weight: Weight, terms: BTreeMap<BasisKey, BigInt>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Self { weight, terms }
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &BasisKey) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: BasisKey, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_weight(&self, other: &KlrElement) -> Result<()> {
        if self.weight != other.weight {
            return Err(KlrError::WeightMismatch(format!("{:?} vs {:?}", self.weight.0, other.weight.0)));
        }
        Ok(())
    }

    pub fn add(&self, other: &KlrElement) -> Result<KlrElement> {
        self.check_weight(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KlrElement) -> Result<KlrElement> {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, c: &BigInt) -> KlrElement {
        if c.is_zero() {
            return Self::zero(self.weight.clone());
        }
        Self { weight: self.weight.clone(), terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> KlrElement {
        self.scale(&-BigInt::one())
    }

    pub fn degree(&self, graph: &CartanGraph) -> Result<Degree> {
        let mut degs = self.terms.keys().map(|k| k.degree(graph));
        let first = degs.next().ok_or(KlrError::ZeroElement)?;
        if degs.all(|d| d == first) {
            Ok(Degree::Homogeneous(first))
        } else {
            Ok(Degree::Inhomogeneous)
        }
    }

    pub fn max_crossings(&self) -> usize {
        self.terms.keys().map(BasisKey::num_crossings).max().unwrap_or(0)
    }

    /// Keeps only the terms in `_j R _i`.
    pub fn sector(&self, target: &Sequence, source: &Sequence) -> KlrElement {
        Self {
            weight: self.weight.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| &k.source == source && &k.target() == target)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// `x1[ij] + x2[ij]`, `-2*d1*x2[ii]`, or `0`.
    pub fn display(&self, graph: &CartanGraph) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        // fewer crossings first, then higher dots on earlier strands first
        let mut terms: Vec<(&BasisKey, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            (&a.source, a.num_crossings(), &a.perm, std::cmp::Reverse(&a.dots)).cmp(&(&b.source, b.num_crossings(), &b.perm, std::cmp::Reverse(&b.dots)))
        });
        let mut out = String::new();
        for (idx, (k, c)) in terms.into_iter().enumerate() {
            let abs = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                write!(out, "{abs}*").unwrap();
            }
            out.push_str(&k.display(graph));
        }
        out
    }

    pub fn to_json(&self, graph: &CartanGraph) -> serde_json::Value {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(k, c)| TermRepr {
                source: k.source.0.iter().map(|&v| graph.name(v).to_string()).collect(),
                permutation: k.perm.one_line(),
                dots: k.dots.clone(),
                coeff: c.to_string(),
            })
            .collect();
        serde_json::to_value(terms).expect("element serializes")
    }

    pub fn from_json(graph: &CartanGraph, weight: Option<Weight>, value: &serde_json::Value) -> Result<KlrElement> {
        let terms: Vec<TermRepr> = serde_json::from_value(value.clone()).map_err(|e| KlrError::Parse(e.to_string()))?;
        let mut out: Option<KlrElement> = weight.map(KlrElement::zero);
        for t in terms {
            let source = Sequence(t.source.iter().map(|n| graph.vertex(n)).collect::<Result<_>>()?);
            let perm = Permutation::from_one_line(&t.permutation)?;
            if perm.len() != source.len() || t.dots.len() != source.len() {
                return Err(KlrError::Parse("term fields have inconsistent lengths".into()));
            }
            let coeff: BigInt = t.coeff.parse().map_err(|_| KlrError::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            let w = source.weight(graph);
            let acc = out.get_or_insert_with(|| KlrElement::zero(w.clone()));
            if acc.weight != w {
                return Err(KlrError::WeightMismatch("terms of different weights".into()));
            }
            acc.add_term(BasisKey::new(source, perm, t.dots), coeff);
        }
        out.ok_or_else(|| KlrError::Parse("empty element needs an explicit weight".into()))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    source: Vec<String>,
    permutation: Vec<usize>,
    dots: Vec<u32>,
    coeff: String,
}
