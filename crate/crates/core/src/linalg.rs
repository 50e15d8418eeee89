//! Incremental row echelon form for rank computations over `Q` or `F_p`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{KlrError, Result};

/// Coefficient field for rank computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// `Q` or `Fp:<p>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" | "q" => Ok(Field::Rational),
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .or_else(|| other.strip_prefix("F_"))
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| KlrError::Parse(format!("field must be Q or Fp:<prime>, got `{other}`")))?;
                Self::prime(p)
            }
        }
    }

    pub fn prime(p: u64) -> Result<Self> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        // products of two residues must fit in u128 comfortably; keep p < 2^32
        if !is_prime || p >= 1 << 32 {
            return Err(KlrError::InvalidArgument(format!("{p} is not a prime below 2^32")));
        }
        Ok(Field::Prime(p))
    }

    /// `Q` or `F_p`, as in reports.
    pub fn label(&self) -> &'static str {
        match self {
            Field::Rational => "Q",
            Field::Prime(_) => "F_p",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// Rows in echelon form; each row's pivot is its smallest column and has
/// coefficient 1.
pub struct Echelon {
    field: Field,
    rational: HashMap<usize, BTreeMap<usize, BigRational>>,
    modular: HashMap<usize, BTreeMap<usize, u64>>,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Self { field, rational: HashMap::new(), modular: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rational.len() + self.modular.len()
    }

    /// Adds an integer vector; returns whether it raised the rank.
    pub fn insert(&mut self, v: &BTreeMap<usize, BigInt>) -> bool {
        match self.field {
            Field::Rational => {
                let row = v.iter().map(|(&k, c)| (k, BigRational::from_integer(c.clone()))).collect();
                self.insert_rational(row)
            }
            Field::Prime(p) => {
                let big_p = BigInt::from(p);
                let row = v
                    .iter()
                    .filter_map(|(&k, c)| {
                        let mut r = c % &big_p;
                        if r.is_negative() {
                            r += &big_p;
                        }
                        let r = r.to_u64().expect("residue fits");
                        (r != 0).then_some((k, r))
                    })
                    .collect();
                self.insert_modular(row, p)
            }
        }
    }

    fn insert_rational(&mut self, mut v: BTreeMap<usize, BigRational>) -> bool {
        let mut cursor = 0;
        while let Some((&col, c)) = v.range(cursor..).next() {
            let c = c.clone();
            match self.rational.get(&col) {
                Some(row) => {
                    for (&k, r) in row {
                        let e = v.entry(k).or_insert_with(BigRational::zero);
                        *e -= &c * r;
                        if e.is_zero() {
                            v.remove(&k);
                        }
                    }
                }
                None => {
                    let inv = c.recip();
                    let row = v.into_iter().map(|(k, x)| (k, x * &inv)).collect();
                    self.rational.insert(col, row);
                    return true;
                }
            }
            cursor = col + 1;
        }
        false
    }

    fn insert_modular(&mut self, mut v: BTreeMap<usize, u64>, p: u64) -> bool {
        let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
        let mut cursor = 0;
        while let Some((&col, &c)) = v.range(cursor..).next() {
            match self.modular.get(&col) {
                Some(row) => {
                    for (&k, &r) in row {
                        let e = v.entry(k).or_insert(0);
                        *e = (*e + p - mul(c, r)) % p;
                        if *e == 0 {
                            v.remove(&k);
                        }
                    }
                }
                None => {
                    let inv = pow_mod(c, p - 2, p);
                    let row = v.into_iter().map(|(k, x)| (k, mul(x, inv))).collect();
                    self.modular.insert(col, row);
                    return true;
                }
            }
            cursor = col + 1;
        }
        false
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Rank of a list of integer vectors.
pub fn rank(field: Field, rows: &[BTreeMap<usize, BigInt>]) -> usize {
    let mut e = Echelon::new(field);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}
