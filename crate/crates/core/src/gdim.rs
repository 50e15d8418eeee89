//! Graded dimensions of free graded modules over polynomial rings: a Laurent
//! numerator over a product of factors `1 - q^{2a}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{KlrError, Result};
use crate::laurent::{qint, LaurentPoly};

/// `num / prod_a (1 - q^{2a})`. Denominators are kept as an unreduced
/// multiset; equality is decided by cross-multiplication.
#[derive(Clone, Default)]
pub struct GradedDim {
    num: LaurentPoly,
    /// Sorted ascending.
    den: Vec<u32>,
}

/// `1 - q^{2a}`.
pub fn den_factor(a: u32) -> LaurentPoly {
    LaurentPoly::from_terms([(0, 1), (2 * a as i64, -1)])
}

fn den_product(factors: &[u32]) -> LaurentPoly {
    factors
        .iter()
        .fold(LaurentPoly::one(), |acc, &a| &acc * &den_factor(a))
}

/// Multiset difference `a \ b` for sorted vectors.
fn multiset_minus(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j < b.len() && b[j] == x {
            j += 1;
        } else {
            out.push(x);
        }
    }
    out
}

/// Smallest sorted multiset containing both `a` and `b`.
fn multiset_union(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = a.to_vec();
    out.extend(multiset_minus(b, a));
    out.sort_unstable();
    out
}

impl GradedDim {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        Self { num, den: Vec::new() }
    }

    pub fn new(num: LaurentPoly, mut den: Vec<u32>) -> Result<Self> {
        if den.contains(&0) {
            return Err(KlrError::InvalidArgument("denominator factor 1 - q^0 is zero".into()));
        }
        den.sort_unstable();
        Ok(Self { num, den })
    }

    /// `1 / (1 - q^2)^m`.
    pub fn poly_ring(m: usize) -> Self {
        Self { num: LaurentPoly::one(), den: vec![1; m] }
    }

    /// Graded dimension of the symmetric polynomials in `n` variables of
    /// degree 2: `prod_{a=1}^{n} 1 / (1 - q^{2a})`.
    pub fn symmetric(n: u32) -> Self {
        Self { num: LaurentPoly::one(), den: (1..=n).collect() }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[u32] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Rewrites over the denominator multiset `den`, which must contain
    /// `self.den`.
    fn numerator_over(&self, den: &[u32]) -> LaurentPoly {
        &self.num * &den_product(&multiset_minus(den, &self.den))
    }

    /// Cancels denominator factors that divide the numerator.
    pub fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let mut idx = self.den.len();
        while idx > 0 {
            idx -= 1;
            let a = self.den[idx];
            if let Ok(q) = self.num.exact_div(&den_factor(a)) {
                self.num = q;
                self.den.remove(idx);
            }
        }
        self
    }

    /// Substitutes `q -> q^-1`, using `1/(1 - q^{-2a}) = -q^{2a}/(1 - q^{2a})`.
    pub fn bar(&self) -> Self {
        let mut num = self.num.bar();
        for &a in &self.den {
            num = -num.shift(2 * a as i64);
        }
        Self { num, den: self.den.clone() }
    }

    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        Self { num: &self.num * p, den: self.den.clone() }.reduced()
    }

    pub fn shift(&self, k: i64) -> Self {
        Self { num: self.num.shift(k), den: self.den.clone() }
    }

    /// Power-series coefficients of every exponent `<= cutoff`.
    pub fn series_expand(&self, cutoff: i64) -> LaurentPoly {
        let mut acc: LaurentPoly =
            LaurentPoly::from_terms(self.num.terms().filter(|(e, _)| *e <= cutoff).map(|(e, c)| (e, c.clone())));
        for &a in &self.den {
            let step = 2 * a as i64;
            let mut next = LaurentPoly::zero();
            for (e, c) in acc.terms() {
                let mut k = e;
                while k <= cutoff {
                    next.add_term(k, c.clone());
                    k += step;
                }
            }
            acc = next;
        }
        acc
    }

    /// Divides by `p`, requiring the numerator to be divisible by `p`.
    pub fn exact_divide(&self, p: &LaurentPoly) -> Result<Self> {
        let num = self.num.exact_div(p)?;
        Ok(Self { num, den: self.den.clone() })
    }

    /// Divides by the quantum integer `[n]`. Always exact: when the
    /// numerator is not divisible, `1/[n] = q^{n-1}(1 - q^2)/(1 - q^{2n})`
    /// introduces a new denominator factor.
    pub fn div_qint(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(KlrError::Divisibility("division by [0] = 0".into()));
        }
        if let Ok(q) = self.num.exact_div(&qint(n)) {
            return Ok(Self { num: q, den: self.den.clone() });
        }
        let num = &self.num.shift(n as i64 - 1) * &den_factor(1);
        let mut den = self.den.clone();
        den.push(n);
        den.sort_unstable();
        Ok(Self { num, den }.reduced())
    }

    /// Divides by `[n]!`.
    pub fn div_qfact(&self, n: u32) -> Result<Self> {
        (2..=n).try_fold(self.clone(), |acc, k| acc.div_qint(k))
    }

    /// Sum of numerator coefficients when there is no denominator, i.e. the
    /// total dimension of a finite-dimensional graded space.
    pub fn eval_one(&self) -> Option<BigInt> {
        let r = self.clone().reduced();
        r.den.is_empty().then(|| r.num.eval_one())
    }
}

impl PartialEq for GradedDim {
    fn eq(&self, other: &Self) -> bool {
        let lhs = &self.num * &den_product(&multiset_minus(&other.den, &self.den));
        let rhs = &other.num * &den_product(&multiset_minus(&self.den, &other.den));
        lhs == rhs
    }
}

impl Eq for GradedDim {}

impl From<LaurentPoly> for GradedDim {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl<'a> Add<&'a GradedDim> for &'a GradedDim {
    type Output = GradedDim;
    fn add(self, rhs: &'a GradedDim) -> GradedDim {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let den = multiset_union(&self.den, &rhs.den);
        let num = &self.numerator_over(&den) + &rhs.numerator_over(&den);
        GradedDim { num, den }.reduced()
    }
}

impl Add for GradedDim {
    type Output = GradedDim;
    fn add(self, rhs: GradedDim) -> GradedDim {
        &self + &rhs
    }
}

impl<'a> Sub<&'a GradedDim> for &'a GradedDim {
    type Output = GradedDim;
    fn sub(self, rhs: &'a GradedDim) -> GradedDim {
        self + &(-rhs)
    }
}

impl Sub for GradedDim {
    type Output = GradedDim;
    fn sub(self, rhs: GradedDim) -> GradedDim {
        &self - &rhs
    }
}

impl Neg for &GradedDim {
    type Output = GradedDim;
    fn neg(self) -> GradedDim {
        GradedDim { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for GradedDim {
    type Output = GradedDim;
    fn neg(self) -> GradedDim {
        -&self
    }
}

impl<'a> Mul<&'a GradedDim> for &'a GradedDim {
    type Output = GradedDim;
    fn mul(self, rhs: &'a GradedDim) -> GradedDim {
        if self.is_zero() || rhs.is_zero() {
            return GradedDim::zero();
        }
        let mut den = self.den.clone();
        den.extend_from_slice(&rhs.den);
        den.sort_unstable();
        GradedDim { num: &self.num * &rhs.num, den }.reduced()
    }
}

impl Mul for GradedDim {
    type Output = GradedDim;
    fn mul(self, rhs: GradedDim) -> GradedDim {
        &self * &rhs
    }
}

/// `1 / (1-q^2)`, `(q^-2 + 1) / (1-q^2)^2`, `1 / ((1-q^2)(1-q^4))`.
impl fmt::Display for GradedDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() || self.num.is_zero() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 && !self.num.is_one() {
            write!(f, "({}) / ", self.num)?;
        } else {
            write!(f, "{} / ", self.num)?;
        }
        let mut groups: Vec<(u32, usize)> = Vec::new();
        for &a in &self.den {
            match groups.last_mut() {
                Some((b, n)) if *b == a => *n += 1,
                _ => groups.push((a, 1)),
            }
        }
        let render = |(a, n): (u32, usize)| {
            let base = format!("(1-q^{})", 2 * a);
            if n == 1 {
                base
            } else {
                format!("{base}^{n}")
            }
        };
        if groups.len() == 1 {
            write!(f, "{}", render(groups[0]))
        } else {
            write!(f, "(")?;
            for g in groups {
                write!(f, "{}", render(g))?;
            }
            write!(f, ")")
        }
    }
}

impl fmt::Debug for GradedDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedDim({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct GradedDimRepr {
    num: BTreeMap<String, String>,
    den: Vec<u32>,
}

impl Serialize for GradedDim {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GradedDimRepr {
            num: self.num.terms().map(|(e, c)| (e.to_string(), c.to_string())).collect(),
            den: self.den.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GradedDim {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let repr = GradedDimRepr::deserialize(deserializer)?;
        let mut num = LaurentPoly::zero();
        for (e, c) in repr.num {
            let e: i64 = e.parse().map_err(D::Error::custom)?;
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            num.add_term(e, c);
        }
        GradedDim::new(num, repr.den).map_err(D::Error::custom)
    }
}
