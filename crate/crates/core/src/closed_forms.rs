//! Double factorials, the Kontsevich factors, the (n-1)! identity and the
//! symmetric functions F_{n,a,b}.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::partitions::enum_P0;
use crate::poly::MultiPoly;
use crate::recursion::QuadSignature;
use crate::weights::{int, rat, PiValue, Rational};

pub fn double_factorial(k: i64) -> Result<BigInt> {
    if k < -1 {
        return Err(Error::DoubleFactorialDomain(k));
    }
    let mut r = BigInt::one();
    let mut j = k;
    while j > 1 {
        r *= j;
        j -= 2;
    }
    Ok(r)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// v(k) = k!!/(k+1)!! * pi^k, times pi for odd k and 2 for even k.
pub fn v_kontsevich(k: i64) -> Result<PiValue> {
    let c = Rational::new(double_factorial(k)?, double_factorial(k + 1)?);
    Ok(if k.rem_euclid(2) == 1 {
        PiValue::new(c, (k + 1) as u32)
    } else {
        PiValue::new(c * int(2), k as u32)
    })
}

/// 2 pi^2 times the product of v(k_i).
pub fn kontsevich_product(kappa: &QuadSignature) -> PiValue {
    kappa
        .orders()
        .iter()
        .map(|&k| v_kontsevich(k).expect("k >= -1"))
        .fold(PiValue::new(int(2), 2), |acc, v| acc.mul(&v))
}

/// (sum over I in P0 of (|I|-1)!(|I^c|-1)!, (n-1)!)
pub fn identity_n_minus_1(kappa: &QuadSignature) -> (BigInt, BigInt) {
    let n = kappa.n();
    let sig = kappa.to_signature();
    let lhs = enum_P0(&sig)
        .iter()
        .map(|i| factorial(i.len().saturating_sub(1)) * factorial((n - i.len()).saturating_sub(1)))
        .sum();
    (lhs, factorial(n - 1))
}

/// prod_{i=1..k} (x + a + i)
fn rising(k: usize, a: &Rational, x: &Rational) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * (x + a + int(i as i64)))
}

pub fn f_nab(a: &Rational, b: &Rational, x: &[Rational]) -> Result<Rational> {
    let n = x.len();
    if n < 2 {
        return Err(Error::TooFewVariables(n));
    }
    let full = (1u64 << n) - 1;
    let mut s = Rational::zero();
    for mask in 1..full {
        let (mut si, mut sc) = (Rational::zero(), Rational::zero());
        for (i, xi) in x.iter().enumerate() {
            if mask >> i & 1 == 1 {
                si += xi;
            } else {
                sc += xi;
            }
        }
        let k = mask.count_ones() as usize;
        s += rising(k - 1, a, &si) * rising(n - k - 1, b, &sc);
    }
    Ok(s)
}

/// F_{n,a,b} as a polynomial in (X_1, .., X_n, a, b).
pub fn f_nab_symbolic(n: usize) -> Result<MultiPoly> {
    if n < 2 {
        return Err(Error::TooFewVariables(n));
    }
    let nv = n + 2;
    let a = MultiPoly::var(nv, n);
    let b = MultiPoly::var(nv, n + 1);
    let mut s = MultiPoly::zero(nv);
    for mask in 1u64..(1 << n) - 1 {
        let mut xi = MultiPoly::zero(nv);
        let mut xc = MultiPoly::zero(nv);
        for i in 0..n {
            if mask >> i & 1 == 1 {
                xi = &xi + &MultiPoly::var(nv, i);
            } else {
                xc = &xc + &MultiPoly::var(nv, i);
            }
        }
        let k = mask.count_ones() as usize;
        let mut t = MultiPoly::one(nv);
        for i in 1..k {
            t = &t * &(&(&xi + &a) + &MultiPoly::constant(nv, int(i as i64)));
        }
        for i in 1..n - k {
            t = &t * &(&(&xc + &b) + &MultiPoly::constant(nv, int(i as i64)));
        }
        s = &s + &t;
    }
    Ok(s)
}

/// Compares F at two points; the points must have equal coordinate sums.
pub fn f_nab_pair_agrees(a: &Rational, b: &Rational, x: &[Rational], y: &[Rational]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::Length { expected: x.len(), got: y.len() });
    }
    if x.iter().sum::<Rational>() != y.iter().sum::<Rational>() {
        return Err(Error::NotComparable);
    }
    Ok(f_nab(a, b, x)? == f_nab(a, b, y)?)
}

pub(crate) fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-100..=100), rng.gen_range(1..=100))
}

/// Checks on `trials` seeded random pairs with equal sums that F_{n,a,b}
/// takes the same value.
pub fn sum_dependence_check(n: usize, a: &Rational, b: &Rational, trials: usize, seed: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::TooFewVariables(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
        let mut y: Vec<Rational> = (0..n - 1).map(|_| random_rational(&mut rng)).collect();
        let last = x.iter().sum::<Rational>() - y.iter().sum::<Rational>();
        y.push(last);
        if !f_nab_pair_agrees(a, b, &x, &y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Default index set for the bridge: all positive entries, or two -1 entries
/// when there is no positive one.
pub fn default_bridge_set(kappa: &QuadSignature) -> Vec<usize> {
    let k = kappa.orders();
    let pos: Vec<usize> = (0..k.len()).filter(|&i| k[i] > 0).collect();
    if pos.is_empty() {
        vec![0, 1]
    } else {
        pos
    }
}

/// Both sides of the decomposition of the (n-1)! sum through F_{|P|,2,2}.
/// `p` must contain every positive entry and at most two -1 entries.
pub fn f_p22_bridge_with(kappa: &QuadSignature, p: &[usize]) -> Result<(Rational, Rational)> {
    let k = kappa.orders();
    let n = k.len();
    let mut sorted = p.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != p.len() || sorted.iter().any(|&i| i >= n) {
        return Err(Error::BadSubset("indices out of range or repeated".into()));
    }
    if sorted.is_empty() {
        return Err(Error::BadSubset("P is empty".into()));
    }
    if (0..n).any(|i| k[i] > 0 && !sorted.contains(&i)) {
        return Err(Error::BadSubset("a positive entry is missing".into()));
    }
    if sorted.iter().filter(|&&i| k[i] == -1).count() > 2 {
        return Err(Error::BadSubset("more than two -1 entries".into()));
    }
    let (lhs, _) = identity_n_minus_1(kappa);
    let q = n - sorted.len();
    let choose2 = if q >= 2 { Rational::new(factorial(q), factorial(2) * factorial(q - 2)) } else { Rational::zero() };
    let head = choose2 * int(2) * Rational::from_integer(factorial(n - 3));
    let f = if sorted.len() >= 2 {
        let xs: Vec<Rational> = sorted.iter().map(|&i| int(k[i])).collect();
        f_nab(&int(2), &int(2), &xs)?
    } else {
        Rational::zero()
    };
    let rhs = head + Rational::from_integer(factorial(q)) * f;
    Ok((Rational::from_integer(lhs), rhs))
}

pub fn f_p22_bridge(kappa: &QuadSignature) -> Result<(Rational, Rational)> {
    f_p22_bridge_with(kappa, &default_bridge_set(kappa))
}
