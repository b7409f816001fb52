//! Polynomial pieces of A_n on sign domains.
//!
//! A sign domain is fixed by the sign of mu(B) - mu(A) for every two-block
//! partition {A, B} (A the block holding index 0), read off a generic sample.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partitions::{enum_P, fmt_block, mask_to_vec, TwoBlockPartition};
use crate::poly::MultiPoly;
use crate::weights::{int, is_integral, rat, Rational, WeightVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn of(x: &Rational) -> Option<Sign> {
        if x.is_positive() {
            Some(Sign::Plus)
        } else if x.is_negative() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    fn factor(self) -> Rational {
        match self {
            Sign::Plus => int(1),
            Sign::Minus => int(-1),
        }
    }
}

fn wall_value(mu: &WeightVector, p: &TwoBlockPartition) -> Rational {
    mu.mass(&p.heavy_block) - mu.mass(&p.light_block)
}

/// First proper nonempty subset with integral weight, if any.
fn integral_subset(mu: &WeightVector) -> Option<Vec<usize>> {
    let n = mu.n();
    (1u64..(1 << n) - 1).find(|&m| is_integral(&mu.mass_mask(m))).map(|m| mask_to_vec(m, n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignDomain {
    pub n: usize,
    pub sample: WeightVector,
    pub signs: BTreeMap<TwoBlockPartition, Sign>,
}

impl SignDomain {
    pub fn new(sample: WeightVector) -> Result<Self> {
        let n = sample.n();
        let mut signs = BTreeMap::new();
        for p in enum_P(n) {
            match Sign::of(&wall_value(&sample, &p)) {
                Some(s) => {
                    signs.insert(p, s);
                }
                None => return Err(Error::OnWall(p.label())),
            }
        }
        if let Some(i) = integral_subset(&sample) {
            return Err(Error::IntegralSubset(fmt_block(&i)));
        }
        Ok(SignDomain { n, sample, signs })
    }

    /// True if mu lies in the open domain (all wall signs agree).
    pub fn contains(&self, mu: &WeightVector) -> bool {
        mu.n() == self.n && self.signs.iter().all(|(p, s)| Sign::of(&wall_value(mu, p)) == Some(*s))
    }

    pub fn to_json(&self) -> Value {
        let signs: BTreeMap<String, &str> = self.signs.iter().map(|(p, s)| (p.label(), s.symbol())).collect();
        json!({ "n": self.n, "sample": self.sample.to_string(), "signs": signs })
    }
}

/// Piece of A_n on the domain of a generic sample, in variables x_1..x_n.
pub fn an_polynomial(domain: &SignDomain) -> MultiPoly {
    let mut memo = HashMap::new();
    piece(&domain.sample, &mut memo)
}

fn piece(mu: &WeightVector, memo: &mut HashMap<WeightVector, MultiPoly>) -> MultiPoly {
    if let Some(p) = memo.get(mu) {
        return p.clone();
    }
    let n = mu.n();
    let x = |i: usize| MultiPoly::var(n, i);
    let c = |v: Rational| MultiPoly::constant(n, v);
    let mass = |b: &[usize]| b.iter().fold(MultiPoly::zero(n), |acc, &i| &acc + &x(i));
    let out = match n {
        3 => MultiPoly::one(3),
        4 => {
            let mut s = MultiPoly::zero(4);
            for p in enum_P(4) {
                let form = &mass(&p.heavy_block) - &mass(&p.light_block);
                let sg = Sign::of(&wall_value(mu, &p)).expect("generic sample");
                s = &s + &form.scale(&sg.factor());
            }
            &c(rat(1, 2)) - &s.scale(&rat(1, 4))
        }
        _ => {
            let one = Rational::one();
            let nn = int(((n - 1) * (n - 2)) as i64);
            let n2 = int(n as i64 - 2);
            let n3 = int(n as i64 - 3);
            let full = (1u64 << n) - 1;
            // image of the sub-weight (2 - mu(I), mu_i for i in I) as linear forms
            let sub_image = |b: &[usize]| -> Vec<MultiPoly> {
                let mut v = vec![&c(int(2)) - &mass(b)];
                v.extend(b.iter().map(|&i| x(i)));
                v
            };
            let mut total = MultiPoly::zero(n);
            for i in 0..n {
                for j in i + 1..n {
                    let s0 = mu.get(i) + mu.get(j);
                    if !(s0 < one && one < int(2) - &s0) {
                        continue;
                    }
                    let b: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
                    let alpha = &c(&n3 / &nn) - &(&mass(&b) - &c(one.clone())).scale(&n2.recip());
                    let sub = piece(&mu.sub_weight(&b), memo).substitute_linear(&sub_image(&b)).unwrap();
                    total = &total + &(&alpha * &sub);
                }
            }
            for s in 0..n {
                if !mu.get(s).is_negative() {
                    continue;
                }
                let rest = full & !(1 << s);
                let low = rest & rest.wrapping_neg();
                let upper = rest & !low;
                let mut m1 = upper;
                loop {
                    // submasks of rest without its lowest bit, each joined to it
                    let b1m = m1 | low;
                    let b2m = rest & !b1m;
                    if b2m != 0 && mu.mass_mask(b1m) > one && mu.mass_mask(b2m) > one {
                        let (b1, b2) = (mask_to_vec(b1m, n), mask_to_vec(b2m, n));
                        let (m1p, m2p) = (&mass(&b1) - &c(one.clone()), &mass(&b2) - &c(one.clone()));
                        let (a1, a2) = (int(b1.len() as i64), int(b2.len() as i64));
                        let lin = (&m1p + &m2p).scale(&(&a1 * &a2));
                        let lin = &(&lin - &m1p.scale(&a1)) - &m2p.scale(&a2);
                        let gamma = &lin.scale(&nn.recip()) - &(&m1p * &m2p).scale(&n2.recip());
                        let p1 = piece(&mu.sub_weight(&b1), memo).substitute_linear(&sub_image(&b1)).unwrap();
                        let p2 = piece(&mu.sub_weight(&b2), memo).substitute_linear(&sub_image(&b2)).unwrap();
                        total = &total - &(&gamma * &(&p1 * &p2));
                    }
                    if m1 == 0 {
                        break;
                    }
                    m1 = (m1 - 1) & upper;
                }
            }
            total
        }
    };
    memo.insert(mu.clone(), out.clone());
    out
}

/// Checks that the pieces of two domains across one wall agree on that wall.
pub fn wall_continuity_check(a: &SignDomain, b: &SignDomain, boundary: &[WeightVector]) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::VariableCount { expected: a.n, got: b.n });
    }
    let diff: Vec<&TwoBlockPartition> = a.signs.iter().filter(|(p, s)| b.signs[*p] != **s).map(|(p, _)| p).collect();
    if diff.len() != 1 {
        return Err(Error::NotAdjacent(diff.len()));
    }
    let wall = diff[0];
    for (i, mu) in boundary.iter().enumerate() {
        if mu.n() != a.n || !wall_value(mu, wall).is_zero() {
            return Err(Error::OffWall(i));
        }
        let others_ok = a
            .signs
            .iter()
            .filter(|(p, _)| *p != wall)
            .all(|(p, s)| Sign::of(&wall_value(mu, p)) == Some(*s));
        if !others_ok {
            return Err(Error::OffWall(i));
        }
    }
    let (pa, pb) = (an_polynomial(a), an_polynomial(b));
    for mu in boundary {
        if pa.evaluate(mu.entries())? != pb.evaluate(mu.entries())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// mu + t * (e_i - e_j), if it stays in L_n.
fn shift(mu: &WeightVector, i: usize, j: usize, t: &Rational) -> Option<WeightVector> {
    let mut e = mu.entries().to_vec();
    e[i] += t;
    e[j] -= t;
    WeightVector::new(e).ok()
}

fn small_rational<R: Rng>(rng: &mut R, scale: i64) -> Rational {
    rat(rng.gen_range(-97..=97), 97 * scale)
}

/// Random generic point with denominators near `den`.
pub fn random_generic_sample<R: Rng>(rng: &mut R, n: usize, den: i64) -> WeightVector {
    loop {
        let mut e: Vec<Rational> = (0..n - 1).map(|_| rat(rng.gen_range(-den / 2..den), den)).collect();
        let last = int(2) - e.iter().sum::<Rational>();
        e.push(last);
        if let Ok(mu) = WeightVector::new(e) {
            if SignDomain::new(mu.clone()).is_ok() {
                return mu;
            }
        }
    }
}

/// Random rational points of the open domain, found by shrinking random moves.
pub fn interior_points<R: Rng>(rng: &mut R, domain: &SignDomain, count: usize) -> Vec<WeightVector> {
    let n = domain.n;
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 100 * count {
        tries += 1;
        let mut scale = 1;
        let mut e = domain.sample.entries().to_vec();
        let moves: Vec<Rational> = (0..n - 1).map(|_| small_rational(rng, 1)).collect();
        loop {
            let mut f = e.clone();
            for (k, m) in moves.iter().enumerate() {
                let step = m / int(scale);
                f[k] += &step;
                f[n - 1] -= &step;
            }
            if let Ok(mu) = WeightVector::new(f) {
                if domain.contains(&mu) {
                    out.push(mu);
                    break;
                }
            }
            scale *= 2;
            if scale > 1 << 20 {
                break;
            }
        }
        e.clear();
    }
    out
}

/// A second domain across one wall of `domain`, with points on the wall
/// between them. Returns None when no simple crossing is found.
pub fn adjacent_pair<R: Rng>(
    rng: &mut R,
    domain: &SignDomain,
    wall_samples: usize,
) -> Option<(SignDomain, Vec<WeightVector>)> {
    let mu = &domain.sample;
    let mut walls: Vec<&TwoBlockPartition> = domain.signs.keys().collect();
    walls.shuffle(rng);
    for wall in walls {
        let f0 = wall_value(mu, wall);
        for &i in &wall.light_block {
            for &j in &wall.heavy_block {
                // moving t from heavy j to light i changes the wall value by -2t
                let t_star = &f0 / int(2);
                let Some(on) = shift(mu, i, j, &t_star) else { continue };
                let others_fixed = |x: &WeightVector| {
                    domain.signs.iter().filter(|(p, _)| *p != wall).all(|(p, s)| Sign::of(&wall_value(x, p)) == Some(*s))
                };
                if !others_fixed(&on) {
                    continue;
                }
                for k in 1..12 {
                    let over = &t_star * (int(1) + rat(1, 1 << k));
                    let Some(far) = shift(mu, i, j, &over) else { continue };
                    let Ok(other) = SignDomain::new(far) else { continue };
                    let flipped = domain.signs.iter().filter(|(p, s)| other.signs[*p] != **s).count();
                    if flipped != 1 {
                        continue;
                    }
                    let mut pts = vec![on.clone()];
                    let mut guard = 0;
                    while pts.len() < wall_samples && guard < 200 * wall_samples {
                        guard += 1;
                        let (blk_a, blk_b) = (&wall.light_block, &wall.heavy_block);
                        let blk = if rng.gen_bool(0.5) { blk_a } else { blk_b };
                        if blk.len() < 2 {
                            continue;
                        }
                        let u = blk[rng.gen_range(0..blk.len())];
                        let v = blk[rng.gen_range(0..blk.len())];
                        if u == v {
                            continue;
                        }
                        let shrink = 1 << rng.gen_range(2..8);
                        let step = small_rational(rng, shrink);
                        if let Some(q) = shift(&on, u, v, &step) {
                            if others_fixed(&q) && wall_value(&q, wall).is_zero() {
                                pts.push(q);
                            }
                        }
                    }
                    if pts.len() == wall_samples {
                        return Some((other, pts));
                    }
                }
            }
        }
    }
    None
}

/// Points of the domain where some weight is 0, reached along e_i - e_j.
pub fn integral_entry_points(domain: &SignDomain) -> Vec<WeightVector> {
    let mu = &domain.sample;
    let mut out = Vec::new();
    for i in 0..domain.n {
        for j in 0..domain.n {
            if i == j {
                continue;
            }
            let t = -mu.get(i);
            if let Some(q) = shift(mu, i, j, &t) {
                // the wall values are linear along the segment, so endpoint signs suffice
                if domain.contains(&q) {
                    out.push(q);
                }
            }
        }
    }
    out
}

pub fn piece_to_json(domain: &SignDomain, p: &MultiPoly) -> Value {
    let terms: Vec<Value> = p.terms().map(|(e, c)| json!([e, c.to_string()])).collect();
    json!({ "domain": domain.to_json(), "degree": p.degree(), "terms": terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::{a_n, Engine};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn wv(s: &str) -> WeightVector {
        WeightVector::parse(s).unwrap()
    }

    #[test]
    fn domain_rejects_non_generic() {
        assert!(matches!(SignDomain::new(wv("1/2,1/2,1/2,1/2")), Err(Error::OnWall(_))));
        assert!(matches!(SignDomain::new(wv("0,2/3,2/3,2/3")), Err(Error::IntegralSubset(_))));
        assert!(SignDomain::new(wv("2/3,2/3,1/3,1/3")).is_err());
    }

    #[test]
    fn n3_and_n4_pieces() {
        let d = SignDomain::new(wv("1/5,9/10,9/10")).unwrap();
        assert_eq!(an_polynomial(&d), MultiPoly::one(3));
        let mu = wv("45/60,40/60,21/60,14/60");
        let d = SignDomain::new(mu.clone()).unwrap();
        let p = an_polynomial(&d);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.evaluate(mu.entries()).unwrap(), a_n(&mu));
    }

    #[test]
    fn n4_piece_near_table_row() {
        // a generic point of the domain touching (2/3,2/3,1/3,1/3)
        let mu = wv("45/60,40/60,21/60,14/60");
        let d = SignDomain::new(mu).unwrap();
        let p = an_polynomial(&d);
        assert_eq!(p.evaluate(wv("2/3,2/3,1/3,1/3").entries()).unwrap(), rat(1, 3));
    }

    #[test]
    fn n5_piece_matches_recursion() {
        let mu = wv("2/3,1/3,1/3,1/3,1/3");
        assert!(SignDomain::new(mu).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = SignDomain::new(wv("67/100,33/100,34/100,32/100,34/100")).unwrap_or_else(|_| {
            SignDomain::new(random_generic_sample(&mut rng, 5, 60)).unwrap()
        });
        let p = an_polynomial(&d);
        assert!(p.degree() <= 2);
        let e = Engine::new();
        for q in interior_points(&mut rng, &d, 20) {
            assert_eq!(p.evaluate(q.entries()).unwrap(), e.a_n(&q));
        }
    }

    #[test]
    fn wall_continuity_n4() {
        let a = SignDomain::new(wv("45/60,40/60,21/60,14/60")).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (b, pts) = adjacent_pair(&mut rng, &a, 6).expect("adjacent domain");
        assert!(wall_continuity_check(&a, &b, &pts).unwrap());
    }

    #[test]
    fn wall_check_errors() {
        let a = SignDomain::new(wv("45/60,40/60,21/60,14/60")).unwrap();
        assert!(matches!(wall_continuity_check(&a, &a, &[]), Err(Error::NotAdjacent(0))));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (b, _) = adjacent_pair(&mut rng, &a, 2).unwrap();
        assert!(matches!(wall_continuity_check(&a, &b, std::slice::from_ref(&a.sample)), Err(Error::OffWall(0))));
    }

    #[test]
    fn json_shape() {
        let d = SignDomain::new(wv("45/60,40/60,21/60,14/60")).unwrap();
        let v = piece_to_json(&d, &an_polynomial(&d));
        assert_eq!(v["degree"], 1);
        assert_eq!(v["domain"]["signs"].as_object().unwrap().len(), 3);
        let p = MultiPoly::from_json(&json!({"nvars": 4, "terms": v["terms"]})).unwrap();
        assert_eq!(p, an_polynomial(&d));
    }

    #[test]
    fn equivariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mu = random_generic_sample(&mut rng, 5, 60);
        let perm = [2usize, 0, 4, 1, 3];
        let nu = mu.permuted(&perm);
        let p = an_polynomial(&SignDomain::new(mu).unwrap());
        let q = an_polynomial(&SignDomain::new(nu).unwrap());
        // variable perm[j] of p is variable j of q
        let mut inv = [0usize; 5];
        for (j, &i) in perm.iter().enumerate() {
            inv[i] = j;
        }
        assert_eq!(p.permute_vars(&inv), q);
    }
}
