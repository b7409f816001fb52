//! Weight vectors, signatures and exact values carrying a power of pi.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p`, allowing surrounding whitespace and a leading sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::Parse { what: "rational", input: s.to_string() };
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

pub fn is_integral(x: &Rational) -> bool {
    x.is_integer()
}

/// Point of L_n: entries below 1 summing to 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    entries: Vec<Rational>,
}

impl WeightVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.len() < 3 {
            return Err(Error::TooFewWeights(entries.len()));
        }
        let one = Rational::one();
        for (i, x) in entries.iter().enumerate() {
            if x >= &one {
                return Err(Error::WeightNotBelowOne { index: i, value: x.to_string() });
            }
        }
        let sum: Rational = entries.iter().sum();
        if sum != int(2) {
            return Err(Error::WeightSum(sum.to_string()));
        }
        Ok(WeightVector { entries })
    }

    /// Caller guarantees membership in L_n.
    pub(crate) fn new_unchecked(entries: Vec<Rational>) -> Self {
        debug_assert!(entries.iter().sum::<Rational>() == int(2));
        WeightVector { entries }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.entries[i]
    }

    /// mu(I) for a set of indices.
    pub fn mass<'a>(&self, idx: impl IntoIterator<Item = &'a usize>) -> Rational {
        idx.into_iter().map(|&i| &self.entries[i]).sum()
    }

    /// mu(I) for a bitmask of indices.
    pub fn mass_mask(&self, mask: u64) -> Rational {
        let mut s = Rational::zero();
        for (i, x) in self.entries.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s += x;
            }
        }
        s
    }

    pub fn has_integral_entry(&self) -> bool {
        self.entries.iter().any(is_integral)
    }

    pub fn permuted(&self, perm: &[usize]) -> WeightVector {
        WeightVector { entries: perm.iter().map(|&i| self.entries[i].clone()).collect() }
    }

    /// Sub-weight (2 - mu(I), mu_i for i in I), I in increasing index order.
    pub fn sub_weight(&self, block: &[usize]) -> WeightVector {
        let mut v = Vec::with_capacity(block.len() + 1);
        v.push(int(2) - self.mass(block));
        v.extend(block.iter().map(|&i| self.entries[i].clone()));
        WeightVector { entries: v }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for WeightVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Least e >= 1 with e * mu_i integral for every i.
pub fn minimal_denominator(nu: &WeightVector) -> BigInt {
    nu.entries
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Sorted copy used as a memo key.
pub fn canonicalize(nu: &WeightVector) -> WeightVector {
    let mut entries = nu.entries.clone();
    entries.sort();
    WeightVector { entries }
}

/// Zero orders k_1..k_n of a d-differential on the sphere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    orders: Vec<i64>,
    level: i64,
}

impl Signature {
    pub fn new(orders: Vec<i64>, level: i64) -> Result<Self> {
        if level < 1 {
            return Err(Error::BadLevel(level));
        }
        if orders.len() < 3 {
            return Err(Error::TooFewOrders(orders.len()));
        }
        for (i, &k) in orders.iter().enumerate() {
            if k < 1 - level {
                return Err(Error::OrderBelowBound { index: i, order: k, bound: 1 - level });
            }
        }
        let sum: i64 = orders.iter().sum();
        if sum != -2 * level {
            return Err(Error::OrderSum { sum, expected: -2 * level });
        }
        Ok(Signature { orders, level })
    }

    /// `k1,k2,...:d`. With `neg_orders` the list holds -k_i, as in table row labels.
    pub fn parse(s: &str, neg_orders: bool) -> Result<Self> {
        let err = || Error::Parse { what: "signature", input: s.to_string() };
        let (ks, d) = s.rsplit_once(':').ok_or_else(err)?;
        let level: i64 = d.trim().parse().map_err(|_| err())?;
        let mut orders = ks
            .split(',')
            .map(|k| k.trim().parse::<i64>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()?;
        if neg_orders {
            orders.iter_mut().for_each(|k| *k = -*k);
        }
        Self::new(orders, level)
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn n(&self) -> usize {
        self.orders.len()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|k| k.to_string()).collect();
        write!(f, "{}:{}", parts.join(","), self.level)
    }
}

pub fn weights_from_signature(kappa: &Signature) -> WeightVector {
    let d = kappa.level;
    WeightVector::new_unchecked(kappa.orders.iter().map(|&k| rat(-k, d)).collect())
}

/// coefficient * pi^pi_power, kept symbolic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiValue {
    pub coefficient: Rational,
    pub pi_power: u32,
}

impl PiValue {
    pub fn new(coefficient: Rational, pi_power: u32) -> Self {
        PiValue { coefficient, pi_power }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    /// Product; pi powers add.
    pub fn mul(&self, other: &PiValue) -> PiValue {
        PiValue::new(&self.coefficient * &other.coefficient, self.pi_power + other.pi_power)
    }

    pub fn scale(&self, c: &Rational) -> PiValue {
        PiValue::new(&self.coefficient * c, self.pi_power)
    }

    /// Decimal rendering, for display only.
    pub fn approx(&self) -> f64 {
        let c = self.coefficient.to_f64().unwrap_or(f64::NAN);
        c * std::f64::consts::PI.powi(self.pi_power as i32)
    }

    /// Parses the output format of `Display`: `c`, `c*pi`, `c*pi^k`, `pi^k`, `-pi^k`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let err = || Error::Parse { what: "pi value", input: s.to_string() };
        let (coef, pow) = if let Some(pos) = t.find("pi") {
            let head = t[..pos].trim_end_matches('*').trim();
            let tail = &t[pos + 2..];
            let k = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^').ok_or_else(err)?.parse::<u32>().map_err(|_| err())?
            };
            let c = match head {
                "" => int(1),
                "-" => int(-1),
                h => parse_rational(h)?,
            };
            (c, k)
        } else {
            (parse_rational(t)?, 0)
        };
        Ok(PiValue::new(coef, pow))
    }
}

impl fmt::Display for PiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            _ if self.coefficient.is_zero() => write!(f, "0"),
            0 => write!(f, "{}", self.coefficient),
            1 => write!(f, "{}*pi", self.coefficient),
            k => write!(f, "{}*pi^{}", self.coefficient, k),
        }
    }
}

pub(crate) fn abs(x: &Rational) -> Rational {
    x.abs()
}
