//! Polygon charts: the linear constraint on edge vectors, the area Hermitian
//! form, the index of the period lattice and the volume-form ratio.
//!
//! The polygon has vertices p_1 = 0, p_{2i} = p_{2i-1} - z_i and
//! p_{2i+1} = p_{2i} + e^{i alpha_i} z_i, where alpha_i = 2 pi (1 - mu_i).
//! The last point carries the only non-positive weight, if any. Area is taken
//! positive for that traversal, which is clockwise: area = -1/2 sum Im(conj(p_k) p_{k+1}).

use num_traits::{One, Zero};

use crate::cyclo::{determinant, Cyclo24};
use crate::error::{Error, Result};
use crate::quadint::{gcd_all, QuadInt, Ring};
use crate::recursion::Engine;
use crate::weights::{int, weights_from_signature, PiValue, Rational, Signature};

/// Order of the marked points used for the chart: positive weights first in
/// their original order, then the non-positive one.
pub fn chart_order(kappa: &Signature) -> Result<Vec<usize>> {
    Ring::for_level(kappa.level())?;
    let k = kappa.orders();
    let reflex: Vec<usize> = (0..k.len()).filter(|&i| k[i] >= 0).collect();
    if reflex.len() >= 2 {
        return Err(Error::UnsupportedChart(reflex.len()));
    }
    let mut order: Vec<usize> = (0..k.len()).filter(|&i| k[i] < 0).collect();
    order.extend(reflex);
    Ok(order)
}

fn check_order(kappa: &Signature, order: &[usize]) -> Result<()> {
    Ring::for_level(kappa.level())?;
    let n = kappa.n();
    let mut s = order.to_vec();
    s.sort();
    if s != (0..n).collect::<Vec<_>>() {
        return Err(Error::BadSubset("order is not a permutation".into()));
    }
    let k = kappa.orders();
    let bad = order[..n - 1].iter().filter(|&&i| k[i] >= 0).count();
    if bad > 0 {
        let total = k.iter().filter(|&&x| x >= 0).count();
        return Err(Error::UnsupportedChart(total));
    }
    Ok(())
}

/// e^{i alpha} at each point, in chart order.
fn rotations(kappa: &Signature, order: &[usize]) -> Result<Vec<QuadInt>> {
    let d = kappa.level();
    order.iter().map(|&i| QuadInt::root_of_unity(kappa.orders()[i], d)).collect()
}

/// Coefficients c_k = 1 - e^{i alpha_k}, k = 1..n-1, in chart order.
pub fn chart_constraint(kappa: &Signature) -> Result<Vec<QuadInt>> {
    constraint_for_order(kappa, &chart_order(kappa)?)
}

pub fn constraint_for_order(kappa: &Signature, order: &[usize]) -> Result<Vec<QuadInt>> {
    check_order(kappa, order)?;
    let ring = Ring::for_level(kappa.level())?;
    let rot = rotations(kappa, order)?;
    let n = kappa.n();
    let one = QuadInt::new(ring, 1, 0);
    let c: Vec<QuadInt> = rot[..n - 1].iter().map(|e| one.sub(e)).collect();
    if let Some(i) = c.iter().position(QuadInt::is_zero) {
        return Err(Error::ZeroConstraint(i));
    }
    Ok(c)
}

/// Square matrix over Q(zeta_24), stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianForm {
    pub entries: Vec<Vec<Cyclo24>>,
}

impl HermitianForm {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_hermitian(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.entries[a][b] == self.entries[b][a].conj()))
    }

    pub fn det(&self) -> Cyclo24 {
        determinant(&self.entries)
    }

    /// conj(z)^T H z
    pub fn eval(&self, z: &[Cyclo24]) -> Cyclo24 {
        let mut s = Cyclo24::zero();
        for (a, za) in z.iter().enumerate() {
            let cz = za.conj();
            for (b, zb) in z.iter().enumerate() {
                s = &s + &(&(&cz * &self.entries[a][b]) * zb);
            }
        }
        s
    }
}

/// Vertices p_1..p_{2n-1} as linear forms in the free edge vectors z_1..z_{n-2}.
pub fn vertex_forms(kappa: &Signature, order: &[usize]) -> Result<Vec<Vec<Cyclo24>>> {
    let n = kappa.n();
    let c = constraint_for_order(kappa, order)?;
    let rot: Vec<Cyclo24> = rotations(kappa, order)?.iter().map(QuadInt::to_cyclo).collect();
    let m = n - 2;
    // z_k as forms; the last one solved from the constraint
    let mut z: Vec<Vec<Cyclo24>> = (0..m)
        .map(|k| (0..m).map(|j| if j == k { Cyclo24::one() } else { Cyclo24::zero() }).collect())
        .collect();
    let last_inv = c[m].to_cyclo().inv().expect("non-zero constraint");
    z.push((0..m).map(|j| -&(&c[j].to_cyclo() * &last_inv)).collect());
    let mut p = vec![vec![Cyclo24::zero(); m]];
    for i in 0..n - 1 {
        let prev = p.last().unwrap().clone();
        let a: Vec<Cyclo24> = prev.iter().zip(&z[i]).map(|(x, y)| x - y).collect();
        let b: Vec<Cyclo24> = a.iter().zip(&z[i]).map(|(x, y)| x + &(&rot[i] * y)).collect();
        p.push(a);
        p.push(b);
    }
    Ok(p)
}

pub fn area_form(kappa: &Signature) -> Result<HermitianForm> {
    area_form_for_order(kappa, &chart_order(kappa)?)
}

pub fn area_form_for_order(kappa: &Signature, order: &[usize]) -> Result<HermitianForm> {
    let p = vertex_forms(kappa, order)?;
    let m = kappa.n() - 2;
    // -1/2 Im(conj(p) q) summed over edges, as a sesquilinear form
    let f = Cyclo24::i().inv().unwrap().scale(&Rational::new((-1).into(), 4.into()));
    let mut h = vec![vec![Cyclo24::zero(); m]; m];
    for w in p.windows(2) {
        let (u, v) = (&w[0], &w[1]);
        for a in 0..m {
            let (ua, va) = (u[a].conj(), v[a].conj());
            for b in 0..m {
                let t = &(&ua * &v[b]) - &(&va * &u[b]);
                h[a][b] = &h[a][b] + &t;
            }
        }
    }
    for row in h.iter_mut() {
        for x in row.iter_mut() {
            *x = &*x * &f;
        }
    }
    Ok(HermitianForm { entries: h })
}

/// Index of the kernel of z -> sum c_k z_k in (Z + zeta Z)^{n-2}, taken modulo c_{n-1}.
pub fn lattice_index(c: &[QuadInt]) -> Result<i64> {
    if let Some(i) = c.iter().position(QuadInt::is_zero) {
        return Err(Error::ZeroConstraint(i));
    }
    let last = c.last().ok_or(Error::Length { expected: 1, got: 0 })?;
    let g = gcd_all(c).expect("non-empty");
    Ok(last.norm() / g.norm())
}

pub fn ring_imaginary_unit(ring: Ring) -> Cyclo24 {
    ring.generator().im()
}

/// 1 / (m * Im(zeta)^(n-2) * det H) for a given chart order.
pub fn mv_ratio_for_order(kappa: &Signature, order: &[usize]) -> Result<Rational> {
    let ring = Ring::for_level(kappa.level())?;
    let h = area_form_for_order(kappa, order)?;
    let c = constraint_for_order(kappa, order)?;
    let m = lattice_index(&c)?;
    let im = ring_imaginary_unit(ring).pow((kappa.n() - 2) as u32);
    let denom = (&im * &h.det()).scale(&int(m));
    let r = denom
        .to_rational()
        .ok_or_else(|| Error::Internal(format!("volume ratio denominator {} is not rational", denom)))?;
    if r.is_zero() {
        return Err(Error::Internal("degenerate area form".into()));
    }
    Ok(Rational::one() / r)
}

pub fn mv_ratio(kappa: &Signature) -> Result<Rational> {
    mv_ratio_for_order(kappa, &chart_order(kappa)?)
}

/// (1/d) * ratio * vol1(mu).
pub fn mv_table_entry(kappa: &Signature) -> Result<PiValue> {
    mv_table_entry_with(&Engine::new(), kappa)
}

pub fn mv_table_entry_with(engine: &Engine, kappa: &Signature) -> Result<PiValue> {
    let r = mv_ratio(kappa)?;
    let v = engine.vol1(&weights_from_signature(kappa));
    Ok(v.scale(&(r / int(kappa.level()))))
}
