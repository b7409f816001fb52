//! The normalized intersection function A_n, its denominator-carrying form J_n,
//! volumes, and the quadratic-differential special case.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::closed_forms::double_factorial;
use crate::error::{Error, Result};
use crate::partitions::{enum_P, enum_t1a, enum_t1b, enum_t2a, enum_t2b, Family, PartitionRecord};
use crate::weights::{abs, canonicalize, int, minimal_denominator, rat, PiValue, Rational, Signature, WeightVector};

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

pub fn a4_closed(nu: &WeightVector) -> Result<Rational> {
    if nu.n() != 4 {
        return Err(Error::Length { expected: 4, got: nu.n() });
    }
    let m = nu.entries();
    let s = abs(&(&m[0] + &m[1] - &m[2] - &m[3])) + abs(&(&m[0] + &m[2] - &m[1] - &m[3])) + abs(&(&m[0] + &m[3] - &m[1] - &m[2]));
    Ok(rat(1, 2) - s * rat(1, 4))
}

/// One summand of the recursion at a given weight vector.
#[derive(Debug, Clone)]
pub struct Term {
    pub record: PartitionRecord,
    /// Signed coefficient, so that A_n is the sum of `coefficient * prod(sub_values)`.
    pub coefficient: Rational,
    pub sub_values: Vec<Rational>,
}

impl Term {
    pub fn contribution(&self) -> Rational {
        self.sub_values.iter().fold(self.coefficient.clone(), |acc, v| acc * v)
    }
}

/// Coefficient of a record in the normalized recursion, with its sign.
pub fn normalized_coefficient(n: usize, r: &PartitionRecord) -> Rational {
    let n_ = n as i64;
    let nn = int((n_ - 1) * (n_ - 2));
    let n2 = int(n_ - 2);
    let n3 = int(n_ - 3);
    match r.family {
        Family::T1a => &n3 / &nn - &r.mu_bars[0] / &n2,
        Family::T1b => -(&n3 * &r.mu_bars[0] / &nn),
        Family::T2a => {
            let (m1, m2) = (&r.mu_bars[0], &r.mu_bars[1]);
            let (a, b) = (int(r.block_sizes[0] as i64), int(r.block_sizes[1] as i64));
            let g = (&a * &b * (m1 + m2) - m1 * &a - m2 * &b) / &nn - m1 * m2 / &n2;
            -g
        }
        Family::T2b => {
            let (m1, m2) = (&r.mu_bars[0], &r.mu_bars[1]);
            let (a, b) = (int(r.block_sizes[0] as i64), int(r.block_sizes[1] as i64));
            int(r.epsilon as i64) * a * b * m1 * m2 / nn
        }
    }
}

/// Evaluator for A_n with an optional memo keyed by sorted weights.
pub struct Engine {
    memo: Option<Mutex<HashMap<WeightVector, Rational>>>,
    hits: AtomicU64,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Engine { memo: Some(Mutex::new(HashMap::new())), hits: AtomicU64::new(0) }
    }

    pub fn without_memo() -> Self {
        Engine { memo: None, hits: AtomicU64::new(0) }
    }

    pub fn memo_hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    /// Memo contents, sorted by key.
    pub fn memo_snapshot(&self) -> Vec<(WeightVector, Rational)> {
        let Some(m) = &self.memo else { return Vec::new() };
        let mut v: Vec<_> = m.lock().unwrap().iter().map(|(k, x)| (k.clone(), x.clone())).collect();
        v.sort();
        v
    }

    pub fn memo_preload(&self, entries: impl IntoIterator<Item = (WeightVector, Rational)>) {
        if let Some(m) = &self.memo {
            let mut g = m.lock().unwrap();
            for (k, v) in entries {
                g.insert(canonicalize(&k), v);
            }
        }
    }

    pub fn a_n(&self, mu: &WeightVector) -> Rational {
        if mu.has_integral_entry() {
            return Rational::zero();
        }
        match mu.n() {
            3 => return Rational::one(),
            4 => return a4_closed(mu).expect("length 4"),
            _ => {}
        }
        let key = self.memo.as_ref().map(|m| {
            let k = canonicalize(mu);
            (m, k)
        });
        if let Some((m, k)) = &key {
            if let Some(v) = m.lock().unwrap().get(k) {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return v.clone();
            }
        }
        let v: Rational = self.terms(mu).iter().map(Term::contribution).sum();
        if let Some((m, k)) = key {
            m.lock().unwrap().insert(k, v.clone());
        }
        v
    }

    /// Summands of the recursion at mu (n >= 5, no integral entry); empty otherwise.
    pub fn terms(&self, mu: &WeightVector) -> Vec<Term> {
        let n = mu.n();
        if n < 5 || mu.has_integral_entry() {
            return Vec::new();
        }
        let records = enum_t1a(mu)
            .into_iter()
            .chain(enum_t1b(mu))
            .chain(enum_t2a(mu))
            .chain(enum_t2b(mu));
        records
            .map(|record| {
                let coefficient = normalized_coefficient(n, &record);
                let sub_values = record.sub_weights.iter().map(|nu| self.a_n(nu)).collect();
                Term { record, coefficient, sub_values }
            })
            .collect()
    }

    pub fn j_n(&self, nu: &WeightVector) -> Rational {
        let e = Rational::from_integer(minimal_denominator(nu));
        self.a_n(nu) * e.pow((nu.n() - 3) as i32)
    }

    pub fn vol1(&self, mu: &WeightVector) -> PiValue {
        let n = mu.n() as i64;
        let c = sign(n - 3) * self.a_n(mu) / Rational::from_integer(factorial((n - 2) as u64));
        PiValue::new(c, (n - 2) as u32)
    }

    /// Right-hand side of the recursion in its literal form, carrying the level
    /// d and the minimal denominators of the sub-weights. For n < 5 there is no
    /// recursion and d^(n-3) * A_n is returned.
    pub fn recursive_rhs_dform(&self, mu: &WeightVector, d: i64) -> Result<Rational> {
        if d < 1 {
            return Err(Error::BadLevel(d));
        }
        let dd = int(d);
        if mu.entries().iter().any(|x| !(x * &dd).is_integer()) {
            return Err(Error::NotCommonDenominator(d.to_string()));
        }
        let n = mu.n();
        if mu.has_integral_entry() {
            return Ok(Rational::zero());
        }
        if n < 5 {
            return Ok(dd.pow((n - 3) as i32) * self.a_n(mu));
        }
        let nn = int(((n - 1) * (n - 2)) as i64);
        let n2 = int(n as i64 - 2);
        let n3 = int(n as i64 - 3);
        let powi = |x: &Rational, k: i64| -> Rational {
            if k >= 0 {
                x.pow(k as i32)
            } else {
                x.recip().pow((-k) as i32)
            }
        };
        let e_of = |r: &PartitionRecord, j: usize| Rational::from_integer(r.min_denoms[j].clone());
        let n_ = n as i64;
        let mut total = Rational::zero();
        for r in enum_t1a(mu) {
            let m = &dd * &r.mu_bars[0];
            let a = &dd * &n3 / &nn - &m / &n2;
            total += a * powi(&(&dd / e_of(&r, 0)), n_ - 4) * self.j_n(&r.sub_weights[0]);
        }
        for r in enum_t1b(mu) {
            let m = &dd * &r.mu_bars[0];
            let a = &dd * &n3 / &nn * m;
            total -= a * powi(&(&dd / e_of(&r, 0)), n_ - 5) * self.j_n(&r.sub_weights[0]);
        }
        for r in enum_t2a(mu) {
            let (m1, m2) = (&dd * &r.mu_bars[0], &dd * &r.mu_bars[1]);
            let (a1, a2) = (int(r.block_sizes[0] as i64), int(r.block_sizes[1] as i64));
            let a = &dd * (&a1 * &a2 * (&m1 + &m2) - &m1 * &a1 - &m2 * &a2) / &nn - &m1 * &m2 / &n2;
            let f = powi(&dd, n_ - 5)
                / (powi(&e_of(&r, 0), a1_exp(&r, 0)) * powi(&e_of(&r, 1), a1_exp(&r, 1)));
            total -= a * f * self.j_n(&r.sub_weights[0]) * self.j_n(&r.sub_weights[1]);
        }
        for r in enum_t2b(mu) {
            let (m1, m2) = (&dd * &r.mu_bars[0], &dd * &r.mu_bars[1]);
            let (a1, a2) = (int(r.block_sizes[0] as i64), int(r.block_sizes[1] as i64));
            let a = int(r.epsilon as i64) * &dd * a1 * a2 / &nn * (m1 * m2);
            let f = powi(&dd, n_ - 6)
                / (powi(&e_of(&r, 0), a1_exp(&r, 0)) * powi(&e_of(&r, 1), a1_exp(&r, 1)));
            total += a * f * self.j_n(&r.sub_weights[0]) * self.j_n(&r.sub_weights[1]);
        }
        Ok(total)
    }

    pub fn quad_v(&self, kappa: &QuadSignature) -> Rational {
        self.j_n(&crate::weights::weights_from_signature(&kappa.to_signature()))
    }

    /// The volume chain 2(n-2) * (-1)^((n-2)/2) * 2^(n-2) * (1/2) * vol1(mu).
    pub fn mv_quadratic_chain(&self, kappa: &QuadSignature) -> PiValue {
        let n = kappa.n() as i64;
        let mu = crate::weights::weights_from_signature(&kappa.to_signature());
        let c = int(2 * (n - 2)) * sign((n - 2) / 2) * int(2).pow((n - 2) as i32) * rat(1, 2);
        self.vol1(&mu).scale(&c)
    }
}

fn a1_exp(r: &PartitionRecord, j: usize) -> i64 {
    r.block_sizes[j] as i64 - 2
}

pub fn a_n(mu: &WeightVector) -> Rational {
    Engine::new().a_n(mu)
}

pub fn j_n(mu: &WeightVector) -> Rational {
    Engine::new().j_n(mu)
}

pub fn vol1(mu: &WeightVector) -> PiValue {
    Engine::new().vol1(mu)
}

pub fn recursive_rhs_dform(mu: &WeightVector, d: i64) -> Result<Rational> {
    Engine::new().recursive_rhs_dform(mu, d)
}

/// Odd orders k_i >= -1 summing to -4: a quadratic differential on the sphere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadSignature {
    orders: Vec<i64>,
}

impl QuadSignature {
    pub fn new(orders: Vec<i64>) -> Result<Self> {
        for (i, &k) in orders.iter().enumerate() {
            if k < -1 || k % 2 == 0 {
                return Err(Error::NotOddSignature { index: i, order: k });
            }
        }
        let sum: i64 = orders.iter().sum();
        if sum != -4 {
            return Err(Error::OrderSum { sum, expected: -4 });
        }
        Ok(QuadSignature { orders })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let err = || Error::Parse { what: "quadratic signature", input: s.to_string() };
        let v = s
            .split(',')
            .map(|k| k.trim().parse::<i64>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(v)
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn n(&self) -> usize {
        self.orders.len()
    }

    pub fn to_signature(&self) -> Signature {
        Signature::new(self.orders.clone(), 2).expect("valid quadratic signature")
    }

    /// Every ordered odd signature with n entries, each at most `max_k`.
    pub fn all(n: usize, max_k: i64) -> Vec<QuadSignature> {
        // k_i = 2 j_i - 1 with sum of j_i equal to (n - 4) / 2
        if n < 4 || n % 2 == 1 {
            return Vec::new();
        }
        let total = (n as i64 - 4) / 2;
        let jmax = (max_k + 1) / 2;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn go(i: usize, n: usize, left: i64, jmax: i64, cur: &mut Vec<i64>, out: &mut Vec<QuadSignature>) {
            if i == n - 1 {
                if left <= jmax {
                    cur.push(2 * left - 1);
                    out.push(QuadSignature { orders: cur.clone() });
                    cur.pop();
                }
                return;
            }
            for j in 0..=left.min(jmax) {
                cur.push(2 * j - 1);
                go(i + 1, n, left - j, jmax, cur, out);
                cur.pop();
            }
        }
        go(0, n, total, jmax, &mut cur, &mut out);
        out
    }
}

fn dfrac(k: i64) -> Rational {
    Rational::new(double_factorial(k).unwrap(), double_factorial(k + 1).unwrap())
}

pub fn quad_v_closed(kappa: &QuadSignature) -> Rational {
    let n = kappa.n() as i64;
    let p: Rational = kappa.orders.iter().map(|&k| dfrac(k)).product();
    sign(n / 2) * Rational::from_integer(factorial((n - 3) as u64)) * p
}

/// V(kappa) through the recursion specialized to odd orders, which only has
/// the two families built from -1 pairs and positive singletons.
pub fn quad_v_recursive(kappa: &QuadSignature) -> Rational {
    let mut memo = HashMap::new();
    quad_rec(&kappa.orders, &mut memo)
}

fn quad_rec(k: &[i64], memo: &mut HashMap<Vec<i64>, Rational>) -> Rational {
    let mut key = k.to_vec();
    key.sort();
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let n = k.len();
    if n == 4 {
        // only (-1,-1,-1,-1) has four odd entries >= -1 summing to -4
        return Rational::one();
    }
    let nn = int(((n - 1) * (n - 2)) as i64);
    let mut total = Rational::zero();
    // pairs of -1 entries, a positive singleton, the rest as one block
    for i in 0..n {
        for j in i + 1..n {
            if k[i] != -1 || k[j] != -1 {
                continue;
            }
            for s in 0..n {
                if s == i || s == j || k[s] <= 0 {
                    continue;
                }
                let mut sub = vec![k[s] - 2];
                sub.extend((0..n).filter(|&t| t != i && t != j && t != s).map(|t| k[t]));
                let c = int(2 * (n as i64 - 3)) / &nn * int(k[s]);
                total -= c * quad_rec(&sub, memo);
            }
        }
    }
    // two positive singletons, each with a block completing it to -2
    for a in 0..n {
        for b in a + 1..n {
            if k[a] <= 0 || k[b] <= 0 {
                continue;
            }
            let rest: Vec<usize> = (0..n).filter(|&t| t != a && t != b).collect();
            let r = rest.len();
            for mask in 1u64..(1 << r) - 1 {
                let i1: Vec<usize> = (0..r).filter(|&t| mask >> t & 1 == 1).map(|t| rest[t]).collect();
                let i2: Vec<usize> = (0..r).filter(|&t| mask >> t & 1 == 0).map(|t| rest[t]).collect();
                let s1: i64 = i1.iter().map(|&t| k[t]).sum();
                let s2: i64 = i2.iter().map(|&t| k[t]).sum();
                if s1 + k[a] != -2 || s2 + k[b] != -2 {
                    continue;
                }
                let eps = if k[a] == k[b] {
                    // the swapped assignment gives the same block set; count it once
                    if i1 > i2 {
                        continue;
                    }
                    2
                } else {
                    1
                };
                let mut k1 = vec![k[a] - 2];
                k1.extend(i1.iter().map(|&t| k[t]));
                let mut k2 = vec![k[b] - 2];
                k2.extend(i2.iter().map(|&t| k[t]));
                let c = int(eps * 2 * i1.len() as i64 * i2.len() as i64) / &nn * int(k[a] * k[b]);
                total += c * quad_rec(&k1, memo) * quad_rec(&k2, memo);
            }
        }
    }
    memo.insert(key, total.clone());
    total
}

/// Masur-Veech volume in the normalization 2 pi^(n-2) prod k!!/(k+1)!!.
pub fn mv_quadratic_aez(kappa: &QuadSignature) -> PiValue {
    let p: Rational = kappa.orders.iter().map(|&k| dfrac(k)).product();
    PiValue::new(int(2) * p, (kappa.n() - 2) as u32)
}

/// A_5 from the self-intersection of the boundary expression of the
/// tautological divisor on M_{0,5} plus the exceptional corrections.
pub fn a5_direct(mu: &WeightVector, d: i64) -> Result<Rational> {
    if mu.n() != 5 {
        return Err(Error::Length { expected: 5, got: mu.n() });
    }
    if d < 1 {
        return Err(Error::BadLevel(d));
    }
    let dd = int(d);
    if mu.entries().iter().any(|x| !(x * &dd).is_integer()) {
        return Err(Error::NotCommonDenominator(d.to_string()));
    }
    let n = 5i64;
    let one = Rational::one();
    // boundary divisors of M_{0,5} labeled by their 2-element block
    let mut divs: Vec<(Vec<usize>, Rational)> = Vec::new();
    for p in enum_P(5) {
        let o = p.oriented(mu);
        let (light, heavy) = (&o.light_block, &o.heavy_block);
        let mh = mu.mass(heavy);
        let b = &dd / int((n - 2) * (n - 1))
            * int(light.len() as i64 - 1)
            * (int(heavy.len() as i64 - 1) - int(n - 1) * (mh - &one));
        let pair = if p.light_block.len() == 2 { p.light_block.clone() } else { p.heavy_block.clone() };
        divs.push((pair, b));
    }
    let inter = |p: &[usize], q: &[usize]| -> i64 {
        if p == q {
            -1
        } else if p.iter().any(|i| q.contains(i)) {
            0
        } else {
            1
        }
    };
    let mut d2 = Rational::zero();
    for (p, bp) in &divs {
        for (q, bq) in &divs {
            d2 += bp * bq * int(inter(p, q));
        }
    }
    let mut e2 = Rational::zero();
    for s in 0..5 {
        let rest: Vec<usize> = (0..5).filter(|&i| i != s).collect();
        for &j in &rest[1..] {
            let i1 = [rest[0], j];
            let i2: Vec<usize> = rest.iter().copied().filter(|i| !i1.contains(i)).collect();
            let (s1, s2) = (mu.mass(&i1), mu.mass(&i2));
            if s1 > one && s2 > one {
                e2 -= &dd * (s1 - &one) * &dd * (s2 - &one);
            }
        }
    }
    Ok((d2 + e2) / (&dd * &dd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;
    use num_traits::Signed;
    use crate::weights::weights_from_signature;

    fn wv(s: &str) -> WeightVector {
        WeightVector::parse(s).unwrap()
    }

    fn q(s: &str) -> QuadSignature {
        QuadSignature::parse(s).unwrap()
    }

    #[test]
    fn a_n_examples() {
        assert_eq!(a_n(&wv("2/3,1/3,1/3,1/3,1/3")), rat(1, 9));
        assert_eq!(a_n(&wv("5/6,5/6,5/6,5/6,-4/3")), rat(4, 9));
        assert_eq!(a_n(&wv("1/2,1/2,1/2,1/2,1/2,-1/2")), rat(-3, 8));
        assert_eq!(a_n(&wv("0,2/3,2/3,2/3")), int(0));
        assert_eq!(a_n(&wv("-1,3/4,3/4,3/4,3/4")), int(0));
        assert_eq!(a_n(&wv("1/3,5/6,5/6")), int(1));
    }

    #[test]
    fn a4_examples() {
        assert_eq!(a4_closed(&wv("1/2,1/2,1/2,1/2")).unwrap(), rat(1, 2));
        assert_eq!(a4_closed(&wv("2/3,2/3,1/3,1/3")).unwrap(), rat(1, 3));
        assert_eq!(a4_closed(&wv("3/4,3/4,3/4,-1/4")).unwrap(), rat(-1, 4));
        assert_eq!(a4_closed(&wv("0,2/3,2/3,2/3")).unwrap(), int(0));
        assert!(matches!(a4_closed(&wv("2/3,2/3,2/3")), Err(Error::Length { expected: 4, got: 3 })));
    }

    #[test]
    fn j_n_examples() {
        assert_eq!(j_n(&wv("1/2,1/2,1/2,1/2")), int(1));
        assert_eq!(j_n(&wv("2/3,1/3,1/3,1/3,1/3")), int(1));
        assert_eq!(j_n(&wv("-1,3/4,3/4,3/4,3/4")), int(0));
    }

    #[test]
    fn dform_examples() {
        assert_eq!(recursive_rhs_dform(&wv("2/3,1/3,1/3,1/3,1/3"), 3).unwrap(), int(1));
        assert_eq!(recursive_rhs_dform(&wv("5/6,5/6,5/6,5/6,-4/3"), 6).unwrap(), int(16));
        assert_eq!(recursive_rhs_dform(&wv("0,1/2,1/2,1/2,1/2"), 2).unwrap(), int(0));
        assert!(matches!(
            recursive_rhs_dform(&wv("2/3,1/3,1/3,1/3,1/3"), 2),
            Err(Error::NotCommonDenominator(_))
        ));
        assert!(matches!(recursive_rhs_dform(&wv("2/3,1/3,1/3,1/3,1/3"), 0), Err(Error::BadLevel(0))));
        // a multiple of the minimal denominator rescales by (d/e)^(n-3)
        assert_eq!(recursive_rhs_dform(&wv("2/3,1/3,1/3,1/3,1/3"), 6).unwrap(), int(4));
    }

    #[test]
    fn vol1_examples() {
        assert_eq!(vol1(&wv("1/2,1/2,1/2,1/2")), PiValue::new(rat(-1, 4), 2));
        assert_eq!(vol1(&wv("2/3,1/3,1/3,1/3,1/3")), PiValue::new(rat(1, 54), 3));
        let z = vol1(&wv("0,2/3,2/3,2/3"));
        assert!(z.is_zero());
        assert_eq!(z.pi_power, 2);
    }

    #[test]
    fn quad_examples() {
        let e = Engine::new();
        assert_eq!(e.quad_v(&q("-1,-1,-1,-1")), int(1));
        assert_eq!(e.quad_v(&q("1,-1,-1,-1,-1,-1")), int(-3));
        assert_eq!(e.quad_v(&q("1,1,-1,-1,-1,-1,-1,-1")), int(30));
        assert_eq!(quad_v_closed(&q("-1,-1,-1,-1")), int(1));
        assert_eq!(quad_v_closed(&q("1,-1,-1,-1,-1,-1")), int(-3));
        assert_eq!(quad_v_closed(&q("3,-1,-1,-1,-1,-1,-1,-1")), int(45));
        assert_eq!(quad_v_recursive(&q("3,-1,-1,-1,-1,-1,-1,-1")), int(45));
        assert_eq!(quad_v_recursive(&q("1,1,-1,-1,-1,-1,-1,-1")), int(30));
    }

    #[test]
    fn quad_signature_rejects() {
        assert!(matches!(QuadSignature::parse("-1,-1,-1,-2"), Err(Error::NotOddSignature { index: 3, .. })));
        assert!(matches!(QuadSignature::parse("-3,1,-1,-1"), Err(Error::NotOddSignature { index: 0, .. })));
        assert!(matches!(QuadSignature::parse("-1,-1,-1,1"), Err(Error::OrderSum { .. })));
        assert!(QuadSignature::parse("a").is_err());
    }

    #[test]
    fn quad_enumeration_counts() {
        // sum of j_i equals (n-4)/2 over n non-negative parts
        assert_eq!(QuadSignature::all(4, 9).len(), 1);
        assert_eq!(QuadSignature::all(6, 9).len(), 6);
        assert_eq!(QuadSignature::all(8, 9).len(), 36);
        assert_eq!(QuadSignature::all(10, 9).len(), 220);
        assert_eq!(QuadSignature::all(10, 3).len(), 210);
        assert!(QuadSignature::all(5, 9).is_empty());
    }

    #[test]
    fn aez_examples() {
        let e = Engine::new();
        assert_eq!(mv_quadratic_aez(&q("-1,-1,-1,-1")), PiValue::new(int(2), 2));
        assert_eq!(mv_quadratic_aez(&q("1,-1,-1,-1,-1,-1")), PiValue::new(int(1), 4));
        for k in QuadSignature::all(4, 9).iter().chain(&QuadSignature::all(6, 9)).chain(&QuadSignature::all(8, 9)) {
            assert_eq!(e.mv_quadratic_chain(k), mv_quadratic_aez(k), "{:?}", k);
        }
    }

    #[test]
    fn quad_sign_pattern() {
        let e = Engine::new();
        for n in [4usize, 6, 8] {
            for k in QuadSignature::all(n, 9) {
                let v = e.quad_v(&k);
                assert_eq!(v.is_negative(), (n / 2) % 2 == 1);
            }
        }
    }

    #[test]
    fn a5_direct_examples() {
        assert_eq!(a5_direct(&wv("2/3,1/3,1/3,1/3,1/3"), 3).unwrap(), rat(1, 9));
        assert_eq!(a5_direct(&wv("5/6,5/6,5/6,5/6,-4/3"), 6).unwrap(), rat(4, 9));
        assert!(matches!(a5_direct(&wv("1/2,1/2,1/2,1/2"), 2), Err(Error::Length { .. })));
        assert!(matches!(a5_direct(&wv("2/3,1/3,1/3,1/3,1/3"), 2), Err(Error::NotCommonDenominator(_))));
    }

    #[test]
    fn table_col3() {
        let e = Engine::new();
        for row in tables::all_rows() {
            let mu = weights_from_signature(&row.signature());
            assert_eq!(e.a_n(&mu), row.col3_value(), "{} {}", row.d, row.label);
            if row.n() == 5 {
                assert_eq!(a5_direct(&mu, row.d).unwrap(), row.col3_value());
            }
        }
    }

    #[test]
    fn memo_transparent() {
        let with = Engine::new();
        let without = Engine::without_memo();
        for row in tables::rows_for(5) {
            let mu = weights_from_signature(&row.signature());
            assert_eq!(with.a_n(&mu), without.a_n(&mu));
        }
        let mu = wv("1/2,1/2,1/2,1/2,1/2,-1/2");
        assert_eq!(with.a_n(&mu), with.a_n(&mu));
        assert!(with.memo_hits() > 0);
        assert_eq!(without.memo_hits(), 0);
        let fresh = Engine::new();
        fresh.memo_preload(with.memo_snapshot());
        assert_eq!(fresh.a_n(&mu), rat(-3, 8));
        assert_eq!(fresh.memo_hits(), 1);
    }

    #[test]
    fn terms_sum_to_value() {
        let e = Engine::new();
        let mu = wv("5/6,5/6,5/6,5/6,-4/3");
        let t = e.terms(&mu);
        assert_eq!(t.len(), 7);
        assert_eq!(t.iter().map(Term::contribution).sum::<Rational>(), rat(4, 9));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::testutil::{arb_signature, arb_weights};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn dform_matches_normalized(k in arb_signature(5, 7, 12)) {
            let mu = crate::weights::weights_from_signature(&k);
            let e = Engine::new();
            let ee = Rational::from_integer(minimal_denominator(&mu));
            let expect = (int(k.level()) / ee).pow((mu.n() - 3) as i32) * e.j_n(&mu);
            prop_assert_eq!(e.recursive_rhs_dform(&mu, k.level()).unwrap(), expect);
        }

        #[test]
        fn a5_oracle(k in arb_signature(5, 5, 12)) {
            let mu = crate::weights::weights_from_signature(&k);
            // the direct formula assumes no entry is integral
            prop_assume!(!mu.has_integral_entry());
            prop_assert_eq!(a5_direct(&mu, k.level()).unwrap(), a_n(&mu));
        }

        #[test]
        fn permutation_invariant(
            (mu, perm) in arb_weights(5, 7, 10).prop_flat_map(|mu| {
                let n = mu.n();
                (Just(mu), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
            })
        ) {
            let e = Engine::without_memo();
            prop_assert_eq!(e.a_n(&mu), e.a_n(&mu.permuted(&perm)));
        }
    }
}
