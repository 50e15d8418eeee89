//! Sparse Laurent polynomials in `q` with arbitrary-precision integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{KlrError, Result};

/// An element of `Z[q, q^-1]`. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * q^e`.
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(exp, 1)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Substitutes `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Exact quotient `self / divisor`; errors if the division leaves a
    /// remainder or needs non-integral coefficients.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (d_low, d_high) = match (divisor.low_degree(), divisor.high_degree()) {
            (Some(l), Some(h)) => (l, h),
            _ => return Err(KlrError::Divisibility("division by zero".into())),
        };
        let d_lead = &divisor.coeffs[&d_high];
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let (Some(r_low), Some(r_high)) = (rem.low_degree(), rem.high_degree()) {
            if r_high - r_low < d_high - d_low {
                return Err(KlrError::Divisibility(format!("{self} is not divisible by {divisor}")));
            }
            let (c, r) = rem.coeffs[&r_high].div_rem(d_lead);
            if !r.is_zero() {
                return Err(KlrError::Divisibility(format!("{self} is not divisible by {divisor}")));
            }
            let e = r_high - d_high;
            for (de, dc) in divisor.terms() {
                rem.add_term(de + e, -(dc * &c));
            }
            quot.add_term(e, c);
        }
        Ok(quot)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

/// Balanced quantum integer `[n] = q^{n-1} + q^{n-3} + ... + q^{1-n}`.
pub fn qint(n: u32) -> LaurentPoly {
    let n = n as i64;
    LaurentPoly::from_terms((0..n).map(|k| (n - 1 - 2 * k, 1)))
}

/// Quantum factorial `[n]! = [n][n-1]...[1]`.
pub fn qfact(n: u32) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(), |acc, k| &acc * &qint(k))
}

/// Balanced quantum binomial `[n choose k]`.
pub fn qbinom(n: u32, k: u32) -> LaurentPoly {
    if k > n {
        return LaurentPoly::zero();
    }
    qfact(n)
        .exact_div(&(&qfact(k) * &qfact(n - k)))
        .expect("quantum binomials are Laurent polynomials")
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(0, c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, exp: i64) -> fmt::Result {
    match exp {
        1 => write!(f, "q"),
        e => write!(f, "q^{e}"),
    }
}

/// Ascending exponents, e.g. `q^-2 + 1 + 2*q^3`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let abs = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                fmt_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = KlrError;

    /// Parses the `Display` format: a `+`/`-` separated list of terms
    /// `c`, `q`, `q^e`, `c*q^e`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || KlrError::Parse(format!("bad Laurent polynomial `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut out = LaurentPoly::zero();
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut pieces = Vec::new();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            let (sign, body) = match piece.as_bytes().first() {
                Some(b'-') => (-1, &piece[1..]),
                Some(b'+') => (1, &piece[1..]),
                _ => (1, piece),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (coeff_str, mono) = match body.find('q') {
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    (c, Some(&body[pos + 1..]))
                }
                None => (body, None),
            };
            let coeff: BigInt = if coeff_str.is_empty() {
                BigInt::one()
            } else {
                coeff_str.parse().map_err(|_| err())?
            };
            let exp = match mono {
                None => 0,
                Some("") => 1,
                Some(rest) => rest.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?,
            };
            out.add_term(exp, coeff * sign);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(qint(2), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(qint(1), LaurentPoly::one());
        assert_eq!(qint(0), LaurentPoly::zero());
        let expected = &lp(&[(1, 1), (-1, 1)]) * &lp(&[(2, 1), (0, 1), (-2, 1)]);
        assert_eq!(qfact(3), expected);
        assert_eq!(qfact(3), lp(&[(3, 1), (1, 2), (-1, 2), (-3, 1)]));
    }

    #[test]
    fn qbinom_small() {
        assert_eq!(qbinom(2, 1), qint(2));
        assert_eq!(qbinom(4, 2), lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]));
    }

    #[test]
    fn exact_division() {
        let p = &qint(2) * &qint(3);
        assert_eq!(p.exact_div(&qint(3)).unwrap(), qint(2));
        assert!(lp(&[(0, 1)]).exact_div(&qint(2)).is_err());
        assert!(lp(&[(0, 1)]).exact_div(&lp(&[(0, 2)])).is_err());
        assert_eq!(LaurentPoly::zero().exact_div(&qint(2)).unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn display_and_parse() {
        let p = lp(&[(-2, 1), (0, 1), (3, 2), (1, -1)]);
        assert_eq!(p.to_string(), "q^-2 + 1 - q + 2*q^3");
        assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
        assert_eq!("-q^-1".parse::<LaurentPoly>().unwrap(), lp(&[(-1, -1)]));
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn bar_is_involution() {
        let p = lp(&[(-2, 3), (5, -1)]);
        assert_eq!(p.bar().bar(), p);
        assert_eq!(p.bar(), lp(&[(2, 3), (-5, -1)]));
    }
}
