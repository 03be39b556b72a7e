//! Coefficient rows of `(1 + x + ... + x^(q-1))^n` and the monomial counts
//! built from their partial sums.
//!
//! Entry `j` of the row for `(q, n)` counts the exponent vectors
//! `(a_1, ..., a_n)` with `0 <= a_i <= q - 1` and `a_1 + ... + a_n = j`, so
//! summing the row up to `floor(d)` gives the number of monomials of total
//! degree at most `d` whose individual exponents stay below `q`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational degree bound. Floors are taken on the integer
/// representation, never through floating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalDegree(Ratio<i64>);

impl RationalDegree {
    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator <= 0 {
            return Err(Error::domain(format!(
                "degree denominator must be positive, got {denominator}"
            )));
        }
        Ok(Self(Ratio::new(numerator, denominator)))
    }

    pub fn integer(value: i64) -> Self {
        Self(Ratio::from_integer(value))
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// `floor(d)`, computed with Euclidean division on the reduced fraction.
    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.numerator(), &self.denominator())
    }

    /// Exact `d / 2`.
    pub fn half(&self) -> Self {
        Self(self.0 / 2)
    }

    /// `total - d`, used for the complementary degree `(q - 1) n - d`.
    pub fn complement_in(&self, total: i64) -> Self {
        Self(Ratio::from_integer(total) - self.0)
    }

    /// The degree `(q - 1) n / 3` at which the progression-free bound is taken.
    pub fn third_of_max(q: u32, n: u32) -> Self {
        Self(Ratio::new(max_degree(q, n) as i64, 3))
    }
}

impl From<Ratio<i64>> for RationalDegree {
    fn from(r: Ratio<i64>) -> Self {
        Self(r)
    }
}

/// Always rendered as `num/den` so that the value survives text round trips.
impl fmt::Display for RationalDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

impl FromStr for RationalDegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::parse(format!("bad rational {s:?}: {e}")))
        };
        match s.split_once('/') {
            Some((num, den)) => {
                let den = parse(den)?;
                if den == 0 {
                    return Err(Error::parse(format!("zero denominator in {s:?}")));
                }
                let (num, den) = if den < 0 {
                    (-parse(num)?, -den)
                } else {
                    (parse(num)?, den)
                };
                RationalDegree::new(num, den)
            }
            None => Ok(RationalDegree::integer(parse(s)?)),
        }
    }
}

impl Serialize for RationalDegree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalDegree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `(q - 1) n`, the degree of `(1 + x + ... + x^(q-1))^n`.
pub fn max_degree(q: u32, n: u32) -> u64 {
    (q as u64 - 1) * n as u64
}

/// Coefficients `c_0, ..., c_{(q-1)n}` of `(1 + x + ... + x^(q-1))^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffRow {
    q: u32,
    n: u32,
    values: Vec<BigUint>,
}

impl CoeffRow {
    /// The row for `n = 0`, i.e. the constant polynomial `1`.
    pub fn unit(q: u32) -> Result<Self> {
        check_q(q)?;
        Ok(Self {
            q,
            n: 0,
            values: vec![BigUint::one()],
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigUint> {
        self.values
    }

    /// Coefficient of `x^j`; zero outside the row.
    pub fn get(&self, j: usize) -> BigUint {
        self.values.get(j).cloned().unwrap_or_default()
    }

    pub fn max_degree(&self) -> u64 {
        max_degree(self.q, self.n)
    }

    /// Sum of `c_j` for `0 <= j <= floor(d)`; indices past the end add nothing.
    pub fn m_value(&self, d: RationalDegree) -> Result<BigUint> {
        if d.is_negative() {
            return Err(Error::domain(format!("degree must be nonnegative, got {d}")));
        }
        let top = (d.floor() as u64).min(self.max_degree()) as usize;
        Ok(self.values[..=top].iter().sum())
    }

    /// Partial sums `m_0, m_1, ..., m_{(q-1)n}` over integer degrees.
    pub fn cumulative(&self) -> Vec<BigUint> {
        let mut acc = BigUint::zero();
        self.values
            .iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect()
    }
}

fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::domain(format!("q must be at least 2, got {q}")));
    }
    Ok(())
}

/// Advances the row for `n` to the row for `n + 1` by convolving with
/// `1 + x + ... + x^(q-1)`.
pub fn cf_step(q: u32, row: &CoeffRow) -> Result<CoeffRow> {
    check_q(q)?;
    if row.q != q {
        return Err(Error::mismatch(format!(
            "row was built for q = {}, asked to step with q = {q}",
            row.q
        )));
    }
    let width = q as usize;
    let len = row.values.len() + width - 1;
    let mut next = vec![BigUint::zero(); len];
    for (i, c) in row.values.iter().enumerate() {
        for slot in &mut next[i..i + width] {
            *slot += c;
        }
    }
    Ok(CoeffRow {
        q,
        n: row.n + 1,
        values: next,
    })
}

/// Exact coefficients of `(1 + x + ... + x^(q-1))^n`.
pub fn coeff_row(q: u32, n: u32) -> Result<CoeffRow> {
    let mut row = CoeffRow::unit(q)?;
    for _ in 0..n {
        row = cf_step(q, &row)?;
    }
    Ok(row)
}

/// Number of monomials in `n` variables with exponents `<= q - 1` and total
/// degree `<= d`.
pub fn m_value(q: u32, n: u32, d: RationalDegree) -> Result<BigUint> {
    if d.is_negative() {
        return Err(Error::domain(format!("degree must be nonnegative, got {d}")));
    }
    coeff_row(q, n)?.m_value(d)
}

/// The progression-free bound `3 m_{(q-1)n/3}`.
pub fn eg_bound(q: u32, n: u32) -> Result<BigUint> {
    check_q(q)?;
    if n == 0 {
        return Err(Error::domain("the bound requires n > 0"));
    }
    Ok(m_value(q, n, RationalDegree::third_of_max(q, n))? * 3u32)
}
