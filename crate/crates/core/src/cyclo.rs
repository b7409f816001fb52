//! The cyclotomic field Q(zeta_24), as Q[x]/(x^8 - x^4 + 1).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::weights::{int, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclo24 {
    c: [Rational; 8],
}

impl Cyclo24 {
    pub fn zero() -> Self {
        Cyclo24 { c: std::array::from_fn(|_| Rational::zero()) }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(x: Rational) -> Self {
        let mut z = Self::zero();
        z.c[0] = x;
        z
    }

    pub fn from_coeffs(c: [Rational; 8]) -> Self {
        Cyclo24 { c }
    }

    pub fn coeffs(&self) -> &[Rational; 8] {
        &self.c
    }

    /// zeta_24^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(24) as usize;
        let mut raw = [0i64; 24];
        raw[k] = 1;
        let mut wide: Vec<Rational> = raw.iter().map(|&x| int(x)).collect();
        reduce(&mut wide);
        Cyclo24 { c: std::array::from_fn(|i| wide[i].clone()) }
    }

    /// exp(2 pi i k / d) for d dividing 24.
    pub fn root_of_unity(k: i64, d: i64) -> Self {
        assert!(d > 0 && 24 % d == 0, "order {} does not divide 24", d);
        Self::zeta_pow(k * (24 / d))
    }

    pub fn i() -> Self {
        Self::zeta_pow(6)
    }

    /// exp(2 pi i / 3)
    pub fn omega() -> Self {
        Self::zeta_pow(8)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Complex conjugation, zeta -> zeta^-1.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for (k, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                out = &out + &Self::zeta_pow(-(k as i64)).scale(x);
            }
        }
        out
    }

    pub fn scale(&self, x: &Rational) -> Self {
        Cyclo24 { c: std::array::from_fn(|i| &self.c[i] * x) }
    }

    pub fn re(&self) -> Self {
        (self + &self.conj()).scale(&rat(1, 2))
    }

    pub fn im(&self) -> Self {
        // (z - conj z) / (2i)
        &(self - &self.conj()) * &Self::i().scale(&rat(-1, 2))
    }

    pub fn is_real(&self) -> bool {
        &self.conj() == self
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Multiplicative inverse; None for zero.
    #[allow(clippy::needless_range_loop)]
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // columns are self * zeta^j; solve M y = e_0
        let cols: Vec<Cyclo24> = (0..8).map(|j| self * &Self::zeta_pow(j)).collect();
        let mut m: Vec<Vec<Rational>> = (0..8)
            .map(|r| {
                let mut row: Vec<Rational> = (0..8).map(|j| cols[j].c[r].clone()).collect();
                row.push(if r == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..8 {
            let piv = (col..8).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..8 {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for j in col..9 {
                        let v = &m[col][j] * &f;
                        m[r][j] -= v;
                    }
                }
            }
        }
        Some(Cyclo24 { c: std::array::from_fn(|j| m[j][8].clone()) })
    }

    /// Numerical value, for tests and display.
    pub fn to_complex(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let (mut re, mut im) = (0.0, 0.0);
        for (k, x) in self.c.iter().enumerate() {
            let t = std::f64::consts::PI * k as f64 / 12.0;
            let v = x.to_f64().unwrap();
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}

/// Reduces a coefficient vector of any length modulo x^8 = x^4 - 1, in place.
fn reduce(w: &mut Vec<Rational>) {
    for k in (8..w.len()).rev() {
        let top = std::mem::take(&mut w[k]);
        if top.is_zero() {
            continue;
        }
        w[k - 4] += &top;
        w[k - 8] -= &top;
    }
    w.truncate(8);
    while w.len() < 8 {
        w.push(Rational::zero());
    }
}

impl fmt::Display for Cyclo24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| match k {
                0 => x.to_string(),
                1 => format!("{}*z", x),
                _ => format!("{}*z^{}", x, k),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Add for &Cyclo24 {
    type Output = Cyclo24;
    fn add(self, o: &Cyclo24) -> Cyclo24 {
        Cyclo24 { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }
}

impl Sub for &Cyclo24 {
    type Output = Cyclo24;
    fn sub(self, o: &Cyclo24) -> Cyclo24 {
        Cyclo24 { c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }
}

impl Neg for &Cyclo24 {
    type Output = Cyclo24;
    fn neg(self) -> Cyclo24 {
        Cyclo24 { c: std::array::from_fn(|i| -&self.c[i]) }
    }
}

impl Mul for &Cyclo24 {
    type Output = Cyclo24;
    fn mul(self, o: &Cyclo24) -> Cyclo24 {
        let mut w = vec![Rational::zero(); 15];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    w[i + j] += a * b;
                }
            }
        }
        reduce(&mut w);
        Cyclo24 { c: std::array::from_fn(|i| w[i].clone()) }
    }
}

impl Div for &Cyclo24 {
    type Output = Cyclo24;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Cyclo24) -> Cyclo24 {
        self * &o.inv().expect("division by zero in Q(zeta_24)")
    }
}

/// Determinant by Gaussian elimination; the matrix must be square.
#[allow(clippy::needless_range_loop)]
pub fn determinant(m: &[Vec<Cyclo24>]) -> Cyclo24 {
    let n = m.len();
    let mut a: Vec<Vec<Cyclo24>> = m.to_vec();
    let mut det = Cyclo24::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Cyclo24::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -&det;
        }
        let p = a[col][col].clone();
        let pinv = p.inv().unwrap();
        det = &det * &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &pinv;
            for j in col..n {
                let v = &a[col][j] * &f;
                a[r][j] = &a[r][j] - &v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity() {
        let z = Cyclo24::zeta_pow(1);
        assert_eq!(z.pow(24), Cyclo24::one());
        assert_ne!(z.pow(12), Cyclo24::one());
        assert_eq!(z.pow(12), Cyclo24::from_rational(int(-1)));
        assert_eq!(Cyclo24::i().pow(2), Cyclo24::from_rational(int(-1)));
        let w = Cyclo24::omega();
        assert_eq!(w.pow(3), Cyclo24::one());
        assert_eq!(&(&w + &w.pow(2)) + &Cyclo24::one(), Cyclo24::zero());
        assert_eq!(Cyclo24::root_of_unity(1, 6), &Cyclo24::one() + &w);
    }

    #[test]
    fn sqrt3() {
        let s = &Cyclo24::zeta_pow(2) + &Cyclo24::zeta_pow(-2);
        assert_eq!(&s * &s, Cyclo24::from_rational(int(3)));
        assert!(s.is_real());
        assert_eq!(s.to_rational(), None);
        assert_eq!(Cyclo24::omega().im().scale(&int(2)), s);
    }

    #[test]
    fn conj_and_parts() {
        let i = Cyclo24::i();
        assert_eq!(i.conj(), -&i);
        assert_eq!(i.im(), Cyclo24::one());
        assert_eq!(i.re(), Cyclo24::zero());
        let z = Cyclo24::zeta_pow(5);
        let (re, im) = z.to_complex();
        let t = 5.0 * std::f64::consts::PI / 12.0;
        assert!((re - t.cos()).abs() < 1e-12 && (im - t.sin()).abs() < 1e-12);
        let (r2, _) = z.re().to_complex();
        assert!((r2 - t.cos()).abs() < 1e-12);
    }

    #[test]
    fn inverse_and_det() {
        let x = &Cyclo24::zeta_pow(3) + &Cyclo24::from_rational(rat(2, 5));
        assert_eq!(&x * &x.inv().unwrap(), Cyclo24::one());
        assert!(Cyclo24::zero().inv().is_none());
        let m = vec![
            vec![Cyclo24::from_rational(int(2)), Cyclo24::i()],
            vec![-&Cyclo24::i(), Cyclo24::from_rational(int(3))],
        ];
        assert_eq!(determinant(&m), Cyclo24::from_rational(int(5)));
        let z = vec![vec![Cyclo24::zero(), Cyclo24::one()], vec![Cyclo24::one(), Cyclo24::zero()]];
        assert_eq!(determinant(&z), Cyclo24::from_rational(int(-1)));
    }
}
