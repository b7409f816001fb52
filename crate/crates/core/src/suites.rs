//! Property suites run by `flatvol check`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_forms::{f_nab_symbolic, f_p22_bridge, identity_n_minus_1, kontsevich_product, sum_dependence_check};
use crate::error::{Error, Result};
use crate::recursion::{a5_direct, mv_quadratic_aez, quad_v_closed, Engine, QuadSignature};
use crate::tables::rows_for;
use crate::weights::{int, minimal_denominator, rat, weights_from_signature, Rational, Signature, WeightVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Kontsevich,
    Identity,
    Sympoly,
    Oracle5,
    Dform,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Kontsevich, Suite::Identity, Suite::Sympoly, Suite::Oracle5, Suite::Dform];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kontsevich => "kontsevich",
            Suite::Identity => "identity",
            Suite::Sympoly => "sympoly",
            Suite::Oracle5 => "oracle5",
            Suite::Dform => "dform",
        }
    }

    fn default_max_n(self) -> usize {
        match self {
            Suite::Kontsevich | Suite::Identity | Suite::Sympoly => 8,
            Suite::Oracle5 => 5,
            Suite::Dform => 7,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        writeln!(f, "{}: {} ({} checks, {} failures)", self.name, status, self.checked, self.failures.len())?;
        for x in self.failures.iter().take(20) {
            writeln!(f, "  {x}")?;
        }
        Ok(())
    }
}

/// Random signature with n entries at level d, if one exists.
pub fn random_signature<R: Rng>(rng: &mut R, n: usize, d: i64) -> Option<Signature> {
    // shifted orders l_i = k_i + d - 1 >= 0 summing to n(d-1) - 2d
    let total = n as i64 * (d - 1) - 2 * d;
    if total < 0 || n < 3 {
        return None;
    }
    let mut cuts: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(0..=total)).collect();
    cuts.sort();
    let mut l = Vec::with_capacity(n);
    let mut prev = 0;
    for c in cuts {
        l.push(c - prev);
        prev = c;
    }
    l.push(total - prev);
    Signature::new(l.into_iter().map(|x| x - (d - 1)).collect(), d).ok()
}

/// (d/e)^(n-3) * j_n(mu), the expected value of the literal recursion.
pub fn dform_expected(engine: &Engine, mu: &WeightVector, d: i64) -> Rational {
    let e = Rational::from_integer(minimal_denominator(mu));
    let r = int(d) / e;
    let k = mu.n() as i32 - 3;
    let f = if k >= 0 { r.pow(k) } else { r.recip().pow(-k) };
    f * engine.j_n(mu)
}

pub fn run(suite: Suite, max_n: Option<usize>, seed: u64) -> Result<SuiteReport> {
    let max_n = max_n.unwrap_or(suite.default_max_n());
    let mut rep = SuiteReport { name: suite.name().to_string(), ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let engine = Engine::new();
    match suite {
        Suite::Kontsevich => {
            for n in (4..=max_n).step_by(2) {
                for k in QuadSignature::all(n, 9) {
                    let aez = mv_quadratic_aez(&k);
                    let kont = kontsevich_product(&k);
                    rep.check(aez == kont, || format!("{k:?}: aez {aez} vs product {kont}"));
                    let v = engine.quad_v(&k);
                    rep.check(v == quad_v_closed(&k), || format!("{k:?}: V {v} vs closed"));
                    let chain = engine.mv_quadratic_chain(&k);
                    rep.check(chain == aez, || format!("{k:?}: chain {chain} vs {aez}"));
                }
            }
        }
        Suite::Identity => {
            for n in (4..=max_n).step_by(2) {
                for k in QuadSignature::all(n, 2 * n as i64) {
                    let (lhs, rhs) = identity_n_minus_1(&k);
                    rep.check(lhs == rhs, || format!("{k:?}: {lhs} vs {rhs}"));
                    let (l, r) = f_p22_bridge(&k)?;
                    rep.check(l == r, || format!("{k:?}: bridge {l} vs {r}"));
                }
            }
        }
        Suite::Sympoly => {
            let f2 = f_nab_symbolic(2)?;
            rep.check(f2 == crate::poly::MultiPoly::constant(4, int(2)), || format!("F2 = {f2}"));
            let params = [int(0), int(1), int(2), rat(1, 2)];
            for n in 2..=max_n {
                for a in &params {
                    for b in &params {
                        let ok = sum_dependence_check(n, a, b, 20, rng.gen())?;
                        rep.check(ok, || format!("n={n} a={a} b={b}"));
                    }
                }
            }
        }
        Suite::Oracle5 => {
            for row in rows_for(5) {
                let kappa = row.signature();
                let mu = weights_from_signature(&kappa);
                let direct = a5_direct(&mu, kappa.level())?;
                let rec = engine.a_n(&mu);
                rep.check(direct == rec, || format!("{}: direct {direct} vs {rec}", row.label));
            }
            for _ in 0..50 {
                let d = rng.gen_range(2..=12);
                let Some(kappa) = random_signature(&mut rng, 5, d) else { continue };
                let mu = weights_from_signature(&kappa);
                if mu.has_integral_entry() {
                    continue;
                }
                let direct = a5_direct(&mu, d)?;
                let rec = engine.a_n(&mu);
                rep.check(direct == rec, || format!("{kappa}: direct {direct} vs {rec}"));
            }
        }
        Suite::Dform => {
            for _ in 0..100 {
                let n = rng.gen_range(3..=max_n.max(3));
                let d = rng.gen_range(2..=12);
                let Some(kappa) = random_signature(&mut rng, n, d) else { continue };
                let mu = weights_from_signature(&kappa);
                let lhs = engine.recursive_rhs_dform(&mu, d)?;
                let rhs = dform_expected(&engine, &mu, d);
                rep.check(lhs == rhs, || format!("{kappa}: {lhs} vs {rhs}"));
            }
        }
    }
    if rep.checked == 0 {
        rep.failures.push("no cases generated".into());
    }
    Ok(rep)
}
