//! Graded dimensions of `R(nu) / I` for two-sided ideals given by
//! homogeneous generators, degree by degree with plain linear algebra.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde_json::Value;

use crate::algebra::KlrAlgebra;
use crate::element::{BasisKey, Degree, KlrElement};
use crate::error::{KlrError, Result};
use crate::graph::CartanGraph;
use crate::linalg::{Echelon, Field};
use crate::perm::{diagram_degree, Permutation};
use crate::seq::{seq_enumerate, Sequence, Weight};

/// All basis keys of `R(nu)` in degree `d`, sorted.
pub fn graded_basis(graph: &CartanGraph, nu: &Weight, d: i64) -> Vec<BasisKey> {
    let mut out = Vec::new();
    if d < nu.degree_lower_bound() {
        return out;
    }
    for i in seq_enumerate(nu) {
        let m = i.len();
        for w in Permutation::all(m) {
            let rest = d - diagram_degree(graph, &i, &w);
            if rest < 0 || rest % 2 != 0 {
                continue;
            }
            for dots in compositions((rest / 2) as u32, m) {
                out.push(BasisKey::new(i.clone(), w.clone(), dots));
            }
        }
    }
    out.sort();
    out
}

/// Ordered ways to write `total` as a sum of `parts` nonnegative integers.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == parts {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(left - e, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Homogeneous generators of a two-sided ideal of `R(nu)`.
#[derive(Clone, Debug)]
pub struct IdealSpec {
    weight: Weight,
    generators: Vec<(KlrElement, i64)>,
}

impl IdealSpec {
    /// Zero generators are dropped; the rest must be homogeneous of weight `nu`.
    pub fn new(graph: &CartanGraph, weight: Weight, generators: Vec<KlrElement>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if g.is_zero() {
                continue;
            }
            if g.weight() != &weight {
                return Err(KlrError::WeightMismatch("ideal generator of the wrong weight".into()));
            }
            match g.degree(graph)? {
                Degree::Homogeneous(d) => gens.push((g, d)),
                Degree::Inhomogeneous => {
                    return Err(KlrError::InvalidArgument(format!("generator {} is not homogeneous", g.display(graph))))
                }
            }
        }
        Ok(Self { weight, generators: gens })
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn generators(&self) -> impl Iterator<Item = &KlrElement> {
        self.generators.iter().map(|(g, _)| g)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// `x_{1,i}^{λ_{i_1}} 1_i` for every `i ∈ Seq(nu)`.
pub fn cyclotomic_spec(graph: &CartanGraph, nu: &Weight, lambda: &Weight) -> Result<IdealSpec> {
    let mut gens = Vec::new();
    if !nu.is_zero() {
        for i in seq_enumerate(nu) {
            let mut dots = vec![0; i.len()];
            dots[0] = lambda.get(i.0[0]);
            let m = i.len();
            gens.push(KlrElement::from_key(graph, BasisKey::new(i, Permutation::identity(m), dots), 1));
        }
    }
    IdealSpec::new(graph, nu.clone(), gens)
}

/// Color-wise elementary symmetric polynomials `e_t`, `1 <= t <= nu_c`,
/// each as a central element summed over `Seq(nu)`.
pub fn sym_plus_spec(graph: &CartanGraph, nu: &Weight) -> Result<IdealSpec> {
    let mut gens = Vec::new();
    let seqs = seq_enumerate(nu);
    for c in nu.support().collect::<Vec<_>>() {
        for t in 1..=nu.get(c) as usize {
            let mut e = KlrElement::zero(nu.clone());
            for i in &seqs {
                let positions: Vec<usize> = (0..i.len()).filter(|&a| i.0[a] == c).collect();
                for subset in itertools::Itertools::combinations(positions.iter(), t) {
                    let mut dots = vec![0; i.len()];
                    for &&a in &subset {
                        dots[a] = 1;
                    }
                    e.add_term(BasisKey::new(i.clone(), Permutation::identity(i.len()), dots), BigInt::one());
                }
            }
            gens.push(e);
        }
    }
    IdealSpec::new(graph, nu.clone(), gens)
}

fn key_vector(index: &BTreeMap<&BasisKey, usize>, x: &KlrElement) -> BTreeMap<usize, BigInt> {
    x.terms().map(|(k, c)| (index[k], c.clone())).collect()
}

/// Splits `x` into its pieces `1_l x 1_i`.
fn sectors(x: &KlrElement) -> Vec<(Sequence, KlrElement)> {
    let mut by_sector: BTreeMap<(Sequence, Sequence), KlrElement> = BTreeMap::new();
    for (k, c) in x.terms() {
        by_sector
            .entry((k.target(), k.source.clone()))
            .or_insert_with(|| KlrElement::zero(x.weight().clone()))
            .add_term(k.clone(), c.clone());
    }
    by_sector.into_iter().map(|((l, _), e)| (l, e)).collect()
}

/// `dim I_d`: rank of `{a g b}` over basis elements `a`, `b` whose degrees
/// lie between the ring's lower bound and `truncation` (no cap if `None`).
pub fn ideal_degree_dim(alg: &KlrAlgebra, spec: &IdealSpec, d: i64, truncation: Option<i64>, field: Field) -> Result<usize> {
    let graph = alg.graph();
    let nu = spec.weight();
    let lower = nu.degree_lower_bound();
    let target = graded_basis(graph, nu, d);
    if target.is_empty() {
        return Ok(0);
    }
    let index: BTreeMap<&BasisKey, usize> = target.iter().enumerate().map(|(n, k)| (k, n)).collect();
    let full = target.len();
    let mut ech = Echelon::new(field);
    for (g, dg) in &spec.generators {
        let mut top = d - dg - lower;
        if let Some(t) = truncation {
            top = top.min(t);
        }
        for e in lower..=top {
            let a_deg = d - dg - e;
            if a_deg < lower || truncation.is_some_and(|t| a_deg > t) {
                continue;
            }
            let lefts = graded_basis(graph, nu, a_deg);
            if lefts.is_empty() {
                continue;
            }
            for b in graded_basis(graph, nu, e) {
                let gb = alg.multiply(g, &KlrElement::from_key(graph, b, 1))?;
                for (l, piece) in sectors(&gb) {
                    for a in lefts.iter().filter(|a| a.source == l) {
                        let prod = alg.multiply(&KlrElement::from_key(graph, a.clone(), 1), &piece)?;
                        if !prod.is_zero() && ech.insert(&key_vector(&index, &prod)) && ech.rank() == full {
                            return Ok(full);
                        }
                    }
                }
            }
        }
    }
    Ok(ech.rank())
}

/// Per-degree dimensions of a quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDimReport {
    pub degrees: BTreeMap<i64, usize>,
    pub stabilized: bool,
    pub cutoff: i64,
    pub window: i64,
    pub field: Field,
    /// Lowest degree examined (the ring's lower bound).
    pub lower: i64,
}

impl GradedDimReport {
    /// Total dimension over all examined degrees.
    pub fn total(&self) -> usize {
        self.degrees.values().sum()
    }

    /// `sum dim_d q^d`.
    pub fn poly(&self) -> crate::laurent::LaurentPoly {
        crate::laurent::LaurentPoly::from_terms(self.degrees.iter().map(|(&d, &n)| (d, BigInt::from(n))))
    }

    pub fn to_json(&self) -> Value {
        let degrees: serde_json::Map<String, Value> =
            self.degrees.iter().map(|(d, n)| (d.to_string(), Value::from(*n))).collect();
        let mut obj = serde_json::json!({
            "degrees": degrees,
            "stabilized": self.stabilized,
            "cutoff": self.cutoff,
            "window": self.window,
            "field": self.field.label(),
        });
        if let Field::Prime(p) = self.field {
            obj["prime"] = Value::from(p);
        }
        obj
    }

    /// One `degree: dim` line per degree, then the stabilization flag.
    pub fn display(&self) -> String {
        let mut out = String::new();
        for (d, n) in &self.degrees {
            out.push_str(&format!("{d}: {n}\n"));
        }
        out.push_str(&format!(
            "total: {}\nstabilized: {} (window {}, cutoff {}, field {})",
            self.total(),
            self.stabilized,
            self.window,
            self.cutoff,
            self.field
        ));
        out
    }
}

/// `dim R(nu)_d - dim I_d` for every degree from the lower bound to
/// `cutoff`. Stabilized iff the last `window` degrees all vanish.
pub fn quotient_gdim(alg: &KlrAlgebra, spec: &IdealSpec, cutoff: i64, window: i64, field: Field) -> Result<GradedDimReport> {
    if window < 1 {
        return Err(KlrError::InvalidArgument("window must be at least 1".into()));
    }
    let graph = alg.graph();
    let lower = spec.weight().degree_lower_bound();
    if cutoff < lower + window - 1 {
        return Err(KlrError::InvalidArgument(format!("cutoff {cutoff} leaves fewer than {window} degrees above {lower}")));
    }
    let dims: Vec<(i64, usize)> = (lower..=cutoff)
        .into_par_iter()
        .map(|d| {
            let total = graded_basis(graph, spec.weight(), d).len();
            let ideal = if total == 0 { 0 } else { ideal_degree_dim(alg, spec, d, None, field)? };
            Ok((d, total - ideal))
        })
        .collect::<Result<_>>()?;
    let stabilized = dims.iter().rev().take(window as usize).all(|&(_, n)| n == 0);
    Ok(GradedDimReport { degrees: dims.into_iter().collect(), stabilized, cutoff, window, field, lower })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(g: &CartanGraph, s: &str) -> Weight {
        Weight::parse(g, s).unwrap()
    }

    #[test]
    fn basis_examples() {
        let g = CartanGraph::a1();
        assert_eq!(graded_basis(&g, &w(&g, "i:1"), 2).len(), 1);
        let b = graded_basis(&g, &w(&g, "i:2"), -2);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].perm, Permutation::transposition(2, 0));
        assert!(graded_basis(&g, &w(&g, "i:1"), 1).is_empty());
    }

    #[test]
    fn spec_examples() {
        let g = CartanGraph::a2();
        let s = cyclotomic_spec(&g, &w(&g, "i:1,j:1"), &w(&g, "i:1")).unwrap();
        assert_eq!(s.len(), 2);
        let texts: Vec<String> = s.generators().map(|e| e.display(&g)).collect();
        assert_eq!(texts, vec!["x1[ij]", "1[ji]"]);
        assert!(cyclotomic_spec(&g, &Weight::zero(&g), &w(&g, "i:1")).unwrap().is_empty());
        let s = sym_plus_spec(&g, &w(&g, "i:1,j:1")).unwrap();
        let texts: Vec<String> = s.generators().map(|e| e.display(&g)).collect();
        assert_eq!(texts, vec!["x1[ij] + x2[ji]", "x2[ij] + x1[ji]"]);
        let a1 = CartanGraph::a1();
        let s = sym_plus_spec(&a1, &w(&a1, "i:2")).unwrap();
        let texts: Vec<String> = s.generators().map(|e| e.display(&a1)).collect();
        assert_eq!(texts, vec!["x1[ii] + x2[ii]", "x1*x2[ii]"]);
    }

    #[test]
    fn ideal_dims() {
        let g = CartanGraph::a1();
        let alg = KlrAlgebra::new(g.clone());
        let nu = w(&g, "i:1");
        let sym = sym_plus_spec(&g, &nu).unwrap();
        assert_eq!(ideal_degree_dim(&alg, &sym, 2, None, Field::Rational).unwrap(), 1);
        let cyc = cyclotomic_spec(&g, &nu, &w(&g, "i:2")).unwrap();
        assert_eq!(ideal_degree_dim(&alg, &cyc, 2, None, Field::Rational).unwrap(), 0);
        assert_eq!(ideal_degree_dim(&alg, &cyc, 4, None, Field::Rational).unwrap(), 1);
        assert_eq!(ideal_degree_dim(&alg, &cyc, -2, None, Field::Rational).unwrap(), 0);
    }

    #[test]
    fn polynomial_quotients() {
        let g = CartanGraph::a1();
        let alg = KlrAlgebra::new(g.clone());
        let nu = w(&g, "i:1");
        let r = quotient_gdim(&alg, &cyclotomic_spec(&g, &nu, &w(&g, "i:3")).unwrap(), 10, 3, Field::Rational).unwrap();
        assert!(r.stabilized);
        assert_eq!(r.poly().to_string(), "1 + q^2 + q^4");
        let zero = quotient_gdim(&alg, &cyclotomic_spec(&g, &nu, &Weight::zero(&g)).unwrap(), 6, 2, Field::Rational).unwrap();
        assert_eq!(zero.total(), 0);
        let json = r.to_json();
        assert_eq!(json["field"], "Q");
        assert_eq!(json["degrees"]["4"], 1);
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(compositions(0, 0).len(), 1);
        assert!(compositions(1, 0).is_empty());
    }
}
