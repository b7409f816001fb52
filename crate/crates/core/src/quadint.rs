//! Gaussian and Eisenstein integers with Euclidean division.

use std::fmt;

use num_integer::Integer;

use crate::cyclo::Cyclo24;
use crate::error::{Error, Result};
use crate::weights::int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    /// Z[i]
    Gaussian,
    /// Z[omega], omega = exp(2 pi i / 3)
    Eisenstein,
}

impl Ring {
    pub fn for_level(d: i64) -> Result<Ring> {
        match d {
            2 | 4 => Ok(Ring::Gaussian),
            3 | 6 => Ok(Ring::Eisenstein),
            _ => Err(Error::UnsupportedLevel(d)),
        }
    }

    /// The generator zeta of the ring as an element of Q(zeta_24).
    pub fn generator(self) -> Cyclo24 {
        match self {
            Ring::Gaussian => Cyclo24::i(),
            Ring::Eisenstein => Cyclo24::omega(),
        }
    }
}

/// a + b * zeta in one of the two rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub ring: Ring,
    pub a: i64,
    pub b: i64,
}

impl QuadInt {
    pub fn new(ring: Ring, a: i64, b: i64) -> Self {
        QuadInt { ring, a, b }
    }

    pub fn zero(ring: Ring) -> Self {
        Self::new(ring, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn norm(&self) -> i64 {
        let (a, b) = (self.a, self.b);
        match self.ring {
            Ring::Gaussian => a * a + b * b,
            Ring::Eisenstein => a * a - a * b + b * b,
        }
    }

    pub fn conj(&self) -> Self {
        match self.ring {
            Ring::Gaussian => Self::new(self.ring, self.a, -self.b),
            // conj(omega) = -1 - omega
            Ring::Eisenstein => Self::new(self.ring, self.a - self.b, -self.b),
        }
    }

    pub fn mul(&self, o: &QuadInt) -> Self {
        let (a, b, c, d) = (self.a, self.b, o.a, o.b);
        match self.ring {
            Ring::Gaussian => Self::new(self.ring, a * c - b * d, a * d + b * c),
            // omega^2 = -1 - omega
            Ring::Eisenstein => Self::new(self.ring, a * c - b * d, a * d + b * c - b * d),
        }
    }

    pub fn sub(&self, o: &QuadInt) -> Self {
        Self::new(self.ring, self.a - o.a, self.b - o.b)
    }

    pub fn add(&self, o: &QuadInt) -> Self {
        Self::new(self.ring, self.a + o.a, self.b + o.b)
    }

    /// Quotient rounded to the nearest lattice point, so the remainder has
    /// smaller norm than the divisor.
    pub fn div_round(&self, o: &QuadInt) -> QuadInt {
        let num = self.mul(&o.conj());
        let n = o.norm();
        let round = |x: i64| -> i64 {
            // nearest integer to x / n, n > 0
            Integer::div_floor(&(2 * x + n), &(2 * n))
        };
        Self::new(self.ring, round(num.a), round(num.b))
    }

    pub fn rem(&self, o: &QuadInt) -> QuadInt {
        self.sub(&self.div_round(o).mul(o))
    }

    pub fn gcd(&self, o: &QuadInt) -> QuadInt {
        let (mut x, mut y) = (*self, *o);
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        x
    }

    /// Coordinates of zeta * self in the basis (1, zeta).
    pub fn times_generator(&self) -> QuadInt {
        self.mul(&Self::new(self.ring, 0, 1))
    }

    pub fn to_cyclo(&self) -> Cyclo24 {
        &Cyclo24::from_rational(int(self.a)) + &self.ring.generator().scale(&int(self.b))
    }

    /// exp(2 pi i k / d) as a ring element, for d in {2, 3, 4, 6}.
    pub fn root_of_unity(k: i64, d: i64) -> Result<QuadInt> {
        let ring = Ring::for_level(d)?;
        let j = k.rem_euclid(d);
        let base = match d {
            2 => Self::new(ring, -1, 0),
            4 => Self::new(ring, 0, 1),
            3 => Self::new(ring, 0, 1),
            // exp(pi i / 3) = 1 + omega
            _ => Self::new(ring, 1, 1),
        };
        Ok((0..j).fold(Self::new(ring, 1, 0), |acc, _| acc.mul(&base)))
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.ring {
            Ring::Gaussian => "i",
            Ring::Eisenstein => "w",
        };
        write!(f, "{}{:+}{}", self.a, self.b, g)
    }
}

pub fn gcd_all(v: &[QuadInt]) -> Option<QuadInt> {
    let mut it = v.iter();
    let first = *it.next()?;
    Some(it.fold(first, |g, x| g.gcd(x)))
}
