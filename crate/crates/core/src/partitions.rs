//! Two-block partitions and the four boundary families used by the recursion.
//!
//! Indices are 0-based throughout. Blocks are kept as sorted index lists.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::weights::{int, is_integral, minimal_denominator, Rational, Signature, WeightVector};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoBlockPartition {
    pub light_block: Vec<usize>,
    pub heavy_block: Vec<usize>,
}

impl TwoBlockPartition {
    /// Swaps the blocks if needed so that mu(heavy) >= mu(light).
    pub fn oriented(&self, mu: &WeightVector) -> TwoBlockPartition {
        if mu.mass(&self.light_block) > mu.mass(&self.heavy_block) {
            TwoBlockPartition {
                light_block: self.heavy_block.clone(),
                heavy_block: self.light_block.clone(),
            }
        } else {
            self.clone()
        }
    }

    pub fn label(&self) -> String {
        format!("{}|{}", fmt_block(&self.light_block), fmt_block(&self.heavy_block))
    }
}

pub(crate) fn fmt_block(b: &[usize]) -> String {
    let s: Vec<String> = b.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", s.join(","))
}

pub(crate) fn mask_to_vec(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// All partitions of {0..n-1} into two blocks of size >= 2. The block holding
/// index 0 is reported as `light_block`; use [`TwoBlockPartition::oriented`]
/// to orient by weight.
#[allow(non_snake_case)]
pub fn enum_P(n: usize) -> Vec<TwoBlockPartition> {
    if n < 4 {
        return Vec::new();
    }
    let full = (1u64 << n) - 1;
    let mut out = Vec::new();
    for mask in 0..=full {
        if mask & 1 == 0 {
            continue;
        }
        let c = full & !mask;
        if mask.count_ones() < 2 || c.count_ones() < 2 {
            continue;
        }
        out.push(TwoBlockPartition { light_block: mask_to_vec(mask, n), heavy_block: mask_to_vec(c, n) });
    }
    out.sort();
    out
}

/// Subsets I with sum of k_i over I equal to -2.
#[allow(non_snake_case)]
pub fn enum_P0(kappa: &Signature) -> Vec<Vec<usize>> {
    let n = kappa.n();
    let k = kappa.orders();
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let s: i64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| k[i]).sum();
        if s == -2 {
            out.push(mask_to_vec(mask, n));
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    T1a,
    T1b,
    T2a,
    T2b,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::T1a => "T1a",
            Family::T1b => "T1b",
            Family::T2a => "T2a",
            Family::T2b => "T2b",
        }
    }
}

/// One member of a boundary family with its derived data.
///
/// `blocks` layout per family: T1a `[I0, I1]`, T1b `[I00, I01, I1]`,
/// T2a `[I0, I1, I2]`, T2b `[I01, I02, I1, I2]` with I01 paired to I1.
/// The heavy-block vectors (`mu_bars`, `block_sizes`, `sub_weights`,
/// `min_denoms`) have one entry for T1 families and two for T2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionRecord {
    pub family: Family,
    pub blocks: Vec<Vec<usize>>,
    pub mu_bars: Vec<Rational>,
    pub block_sizes: Vec<usize>,
    pub sub_weights: Vec<WeightVector>,
    pub min_denoms: Vec<BigInt>,
    pub epsilon: u32,
}

impl PartitionRecord {
    fn build(family: Family, mu: &WeightVector, blocks: Vec<Vec<usize>>, heavy: &[usize], epsilon: u32) -> Self {
        let mut mu_bars = Vec::new();
        let mut block_sizes = Vec::new();
        let mut sub_weights = Vec::new();
        let mut min_denoms = Vec::new();
        for &h in heavy {
            let b = &blocks[h];
            mu_bars.push(mu.mass(b) - Rational::one());
            block_sizes.push(b.len());
            let nu = mu.sub_weight(b);
            min_denoms.push(minimal_denominator(&nu));
            sub_weights.push(nu);
        }
        PartitionRecord { family, blocks, mu_bars, block_sizes, sub_weights, min_denoms, epsilon }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.name(),
            "blocks": self.blocks,
            "mu_bars": self.mu_bars.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "block_sizes": self.block_sizes,
            "sub_weights": self.sub_weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "min_denoms": self.min_denoms.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "epsilon": self.epsilon,
        })
    }
}

fn heavy_ok(s: &Rational) -> bool {
    s > &Rational::one() && !is_integral(s)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Submasks of `set`, including 0 and `set` itself.
fn submasks(set: u64) -> impl Iterator<Item = u64> {
    let mut cur = Some(set);
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == 0 { None } else { Some((s - 1) & set) };
        Some(s)
    })
}

pub fn enum_t1a(mu: &WeightVector) -> Vec<PartitionRecord> {
    let n = mu.n();
    let mut out = Vec::new();
    for (i, j) in pairs(n) {
        let s0 = mu.get(i) + mu.get(j);
        let s1 = int(2) - &s0;
        if s0 < Rational::one() && Rational::one() < s1 && !is_integral(&s0) {
            let i1: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
            out.push(PartitionRecord::build(Family::T1a, mu, vec![vec![i, j], i1], &[1], 1));
        }
    }
    out.sort_by(|a, b| a.blocks.cmp(&b.blocks));
    out
}

pub fn enum_t1b(mu: &WeightVector) -> Vec<PartitionRecord> {
    let n = mu.n();
    let mut out = Vec::new();
    for (i, j) in pairs(n) {
        if mu.get(i) + mu.get(j) != Rational::one() {
            continue;
        }
        for s in 0..n {
            if s == i || s == j || !mu.get(s).is_negative() {
                continue;
            }
            let i1: Vec<usize> = (0..n).filter(|&k| k != i && k != j && k != s).collect();
            if heavy_ok(&mu.mass(&i1)) {
                out.push(PartitionRecord::build(Family::T1b, mu, vec![vec![i, j], vec![s], i1], &[2], 1));
            }
        }
    }
    out.sort_by(|a, b| a.blocks.cmp(&b.blocks));
    out
}

pub fn enum_t2a(mu: &WeightVector) -> Vec<PartitionRecord> {
    let n = mu.n();
    let full = (1u64 << n) - 1;
    let mut out = Vec::new();
    for s in 0..n {
        if !mu.get(s).is_negative() {
            continue;
        }
        let rest = full & !(1 << s);
        let low = rest & rest.wrapping_neg();
        // I1 holds the smallest remaining index so each unordered pair appears once
        for m1 in submasks(rest & !low) {
            let m1 = m1 | low;
            let m2 = rest & !m1;
            if m2 == 0 {
                continue;
            }
            if heavy_ok(&mu.mass_mask(m1)) && heavy_ok(&mu.mass_mask(m2)) {
                let blocks = vec![vec![s], mask_to_vec(m1, n), mask_to_vec(m2, n)];
                out.push(PartitionRecord::build(Family::T2a, mu, blocks, &[1, 2], 1));
            }
        }
    }
    out.sort_by(|a, b| a.blocks.cmp(&b.blocks));
    out
}

pub fn enum_t2b(mu: &WeightVector) -> Vec<PartitionRecord> {
    let n = mu.n();
    let full = (1u64 << n) - 1;
    let one = Rational::one();
    // (a, b, {I1, I2}) -> (number of valid pairings, one valid pairing)
    type Key = (usize, usize, u64, u64);
    let mut found: BTreeMap<Key, (u32, u64, u64)> = BTreeMap::new();
    for (a, b) in pairs(n) {
        let rest = full & !(1 << a) & !(1 << b);
        for m1 in submasks(rest) {
            let m2 = rest & !m1;
            if m1 == 0 || m2 == 0 {
                continue;
            }
            let s1 = mu.mass_mask(m1);
            let s2 = mu.mass_mask(m2);
            if !heavy_ok(&s1) || !heavy_ok(&s2) {
                continue;
            }
            if &s1 + mu.get(a) == one && &s2 + mu.get(b) == one {
                let key = (a, b, m1.min(m2), m1.max(m2));
                let e = found.entry(key).or_insert((0, m1, m2));
                e.0 += 1;
            }
        }
    }
    found
        .into_iter()
        .map(|((a, b, _, _), (eps, m1, m2))| {
            let mut blocks = vec![vec![a], vec![b], mask_to_vec(m1, n), mask_to_vec(m2, n)];
            if eps == 2 {
                blocks[2..].sort();
            }
            PartitionRecord::build(Family::T2b, mu, blocks, &[2, 3], eps)
        })
        .collect()
}

/// All four families in order T1a, T1b, T2a, T2b.
pub fn enum_all(mu: &WeightVector) -> Vec<PartitionRecord> {
    let mut v = enum_t1a(mu);
    v.extend(enum_t1b(mu));
    v.extend(enum_t2a(mu));
    v.extend(enum_t2b(mu));
    v
}

/// Block set of a record, for order-free comparison.
pub fn block_set(r: &PartitionRecord) -> (Family, Vec<Vec<usize>>) {
    let mut b = r.blocks.clone();
    match r.family {
        Family::T2a => b[1..].sort(),
        Family::T2b => {
            let mut p = [(b[0].clone(), b[2].clone()), (b[1].clone(), b[3].clone())];
            p.sort();
            b = vec![p[0].0.clone(), p[1].0.clone(), p[0].1.clone(), p[1].1.clone()];
            if r.epsilon == 2 {
                b[2..].sort();
            }
        }
        _ => {}
    }
    (r.family, b)
}


#[cfg(test)]
pub(crate) mod oracle {
    //! Naive generator of every set partition of {0..n-1} into at most four
    //! blocks, filtered by the family conditions.
    use super::*;
    use num_traits::Zero;
    use std::collections::BTreeSet;

    pub fn set_partitions(n: usize, max_blocks: usize) -> Vec<Vec<Vec<usize>>> {
        fn go(i: usize, n: usize, max: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
            if i == n {
                out.push(cur.clone());
                return;
            }
            for b in 0..cur.len() {
                cur[b].push(i);
                go(i + 1, n, max, cur, out);
                cur[b].pop();
            }
            if cur.len() < max {
                cur.push(vec![i]);
                go(i + 1, n, max, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, n, max_blocks, &mut Vec::new(), &mut out);
        out
    }

    fn m(mu: &WeightVector, b: &[usize]) -> Rational {
        mu.mass(b)
    }

    /// Returns family block sets in the same normal form as [`block_set`],
    /// with the multiplicity of valid T2b pairings.
    pub fn brute(mu: &WeightVector) -> BTreeSet<(Family, Vec<Vec<usize>>, u32)> {
        let n = mu.n();
        let one = Rational::one();
        let mut out = BTreeSet::new();
        for p in set_partitions(n, 4) {
            match p.len() {
                2 => {
                    for (x, y) in [(0, 1), (1, 0)] {
                        let (i0, i1) = (&p[x], &p[y]);
                        let s0 = m(mu, i0);
                        if i0.len() == 2 && s0 < one && one < m(mu, i1) && !is_integral(&s0) {
                            out.insert((Family::T1a, vec![i0.clone(), i1.clone()], 1));
                        }
                    }
                }
                3 => {
                    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                        let (a, b, c) = (&p[perm[0]], &p[perm[1]], &p[perm[2]]);
                        if a.len() == 2 && m(mu, a) == one && b.len() == 1 && m(mu, b) < Rational::zero() {
                            let s = m(mu, c);
                            if s > one && !is_integral(&s) {
                                out.insert((Family::T1b, vec![a.clone(), b.clone(), c.clone()], 1));
                            }
                        }
                        if a.len() == 1 && m(mu, a) < Rational::zero() && b < c {
                            let (s1, s2) = (m(mu, b), m(mu, c));
                            if s1 > one && s2 > one && !is_integral(&s1) && !is_integral(&s2) {
                                out.insert((Family::T2a, vec![a.clone(), b.clone(), c.clone()], 1));
                            }
                        }
                    }
                }
                4 => {
                    let singles: Vec<usize> = (0..4).filter(|&i| p[i].len() == 1).collect();
                    for (x, y) in pairs(4) {
                        if !(singles.contains(&x) && singles.contains(&y)) {
                            continue;
                        }
                        let others: Vec<usize> = (0..4).filter(|&i| i != x && i != y).collect();
                        let (h1, h2) = (&p[others[0]], &p[others[1]]);
                        let (s1, s2) = (m(mu, h1), m(mu, h2));
                        if !(s1 > one && s2 > one && !is_integral(&s1) && !is_integral(&s2)) {
                            continue;
                        }
                        let (a, b) = (&p[x], &p[y]);
                        let mut eps = 0;
                        let mut pairing = None;
                        for (u, v) in [(h1, h2), (h2, h1)] {
                            if m(mu, u) + m(mu, a) == one && m(mu, v) + m(mu, b) == one {
                                eps += 1;
                                pairing.get_or_insert((u.clone(), v.clone()));
                            }
                        }
                        if let Some((u, v)) = pairing {
                            let mut pr = [(a.clone(), u), (b.clone(), v)];
                            pr.sort();
                            let mut blocks = vec![pr[0].0.clone(), pr[1].0.clone(), pr[0].1.clone(), pr[1].1.clone()];
                            if eps == 2 {
                                blocks[2..].sort();
                            }
                            out.insert((Family::T2b, blocks, eps));
                        }
                    }
                }
                _ => {}
            }
        }
        out
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use num_traits::Zero;
    use crate::testutil::arb_weights;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn families_match_brute_force(mu in arb_weights(4, 7, 12)) {
            let got: std::collections::BTreeSet<_> = enum_all(&mu)
                .iter()
                .map(|r| { let (f, b) = block_set(r); (f, b, r.epsilon) })
                .collect();
            prop_assert_eq!(got, oracle::brute(&mu));
        }

        #[test]
        fn sub_weights_valid(mu in arb_weights(4, 8, 12)) {
            let n = mu.n();
            for r in enum_all(&mu) {
                for nu in &r.sub_weights {
                    prop_assert!(WeightVector::new(nu.entries().to_vec()).is_ok());
                }
                prop_assert!(r.mu_bars.iter().all(|x| x > &Rational::zero()));
                let total: usize = r.block_sizes.iter().sum();
                match r.family {
                    Family::T2a => prop_assert_eq!(total, n - 1),
                    Family::T2b => prop_assert_eq!(total, n - 2),
                    _ => {}
                }
            }
        }

        #[test]
        fn equivariant(
            (mu, perm) in arb_weights(4, 7, 12).prop_flat_map(|mu| {
                let n = mu.n();
                (Just(mu), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
            })
        ) {
            // relabel: new index j carries old index perm[j]
            let nu = mu.permuted(&perm);
            let mut inv = vec![0; perm.len()];
            for (j, &p) in perm.iter().enumerate() { inv[p] = j; }
            let relabel = |r: &PartitionRecord| {
                let mut r2 = r.clone();
                for b in r2.blocks.iter_mut() {
                    for i in b.iter_mut() { *i = inv[*i]; }
                    b.sort();
                }
                let (f, b) = block_set(&r2);
                (f, b, r.epsilon)
            };
            let a: std::collections::BTreeSet<_> = enum_all(&mu).iter().map(relabel).collect();
            let b: std::collections::BTreeSet<_> = enum_all(&nu).iter().map(|r| { let (f, b) = block_set(r); (f, b, r.epsilon) }).collect();
            prop_assert_eq!(a, b);
        }
    }
}
