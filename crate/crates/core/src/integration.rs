//! Berezin, supersphere (Pizzetti) and normalized integrals, with a
//! delta-function oracle for the supersphere integral.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{BlockId, SuperElement};
use crate::error::{Error, Result};
use crate::ops::{laplacian, partial, Var};
use crate::scalar::special::{factorial_q, falling, gamma_half, gamma_recip_half};
use crate::scalar::Scalar;

type E = SuperElement;

/// pi^(-n) d/dx`_{2n} ... d/dx`_1 f.
pub fn berezin(f: &E, b: BlockId) -> E {
    let n = f.sig().block(b).n;
    let mut g = f.clone();
    for i in 1..=2 * n {
        g = partial(&g, Var::Ferm(b, i));
    }
    g.scale(&Scalar::pi_pow(-(n as i32)))
}

/// Coefficient 2 pi^(M/2) / (4^j j! Gamma(j + M/2)).
pub fn pizzetti_coeff(m_super: i64, j: u64) -> Scalar {
    let four_j = BigRational::from_integer(num_bigint::BigInt::from(4).pow(j as u32));
    Scalar::sqrt_pi_pow(m_super as i32).mul_int(2)
        * gamma_recip_half(2 * j as i64 + m_super).mul_rational(&(four_j * factorial_q(j)).recip())
}

/// Supersphere integral in block `b` of a polynomial, other blocks being spectators:
/// sum_j 2 pi^(M/2) / (4^j j! Gamma(j + M/2)) D^j[f] at the origin of `b`.
pub fn sphere_integral(f: &E, b: BlockId) -> Result<E> {
    if f.has_radial() {
        return Err(Error::NonPolynomial(f.sig().block(b).name.clone()));
    }
    let msup = f.sig().block(b).super_dim();
    let mut out = E::zero(f.sig());
    let top = f.block_degree(b);
    for j in 0..=top / 2 {
        let comp = f.block_component(b, 2 * j);
        if comp.is_zero() {
            continue;
        }
        let c = pizzetti_coeff(msup, j as u64);
        if c.is_zero() {
            continue;
        }
        let mut g = comp;
        for _ in 0..j {
            g = laplacian(&g, b);
        }
        out = out + g.restrict_block_zero(b)?.scale(&c);
    }
    Ok(out)
}

/// Integral of prod x_i^(e_i) over the unit sphere S^(m-1).
fn sphere_monomial(exps: &[u16]) -> Scalar {
    if exps.iter().any(|e| e % 2 == 1) {
        return Scalar::zero();
    }
    let m = exps.len() as i64;
    let mut acc = Scalar::from_int(2);
    let mut half_sum = 0i64;
    for &e in exps {
        acc = acc * gamma_half(e as i64 + 1).expect("positive argument");
        half_sum += e as i64 / 2;
    }
    acc * gamma_recip_half(2 * half_sum + m)
}

/// Independent evaluation of the supersphere integral as
/// 2 * int_{R^m} int_B delta(x^2 + 1) f, with
/// delta(x^2 + 1) = sum_j x̄`^(2j) / j! delta^(j)(1 - |x̄|^2). Requires m >= 1.
pub fn sphere_integral_oracle(f: &E, b: BlockId) -> Result<E> {
    let sig = f.sig().clone();
    let blk = sig.block(b).clone();
    if blk.m == 0 {
        return Err(Error::Domain("the delta-function oracle needs m >= 1".into()));
    }
    if f.has_radial() {
        return Err(Error::NonPolynomial(blk.name.clone()));
    }
    let xf = E::supervector_fermionic(&sig, b);
    let xf2 = &xf * &xf;
    let mut pow = E::one(&sig);
    let mut out: BTreeMap<crate::Mono, Scalar> = BTreeMap::new();
    let m = blk.m as i64;
    for j in 0..=blk.n as u64 {
        let g = berezin(&(&pow * f), b).scale_rational(&factorial_q(j).recip());
        for (mono, c) in g.terms() {
            let exps: Vec<u16> = mono.bos[blk.bos_range()].to_vec();
            let d: i64 = exps.iter().map(|&e| e as i64).sum();
            let s = sphere_monomial(&exps);
            if s.is_zero() {
                continue;
            }
            // 1/2 (d/dt)^j t^((d+m)/2 - 1) at t = 1
            let a = BigRational::new((d + m - 2).into(), 2.into());
            let radial = falling(&a, j) / BigRational::from_integer(2.into());
            if radial.is_zero() {
                continue;
            }
            let mut key = mono.clone();
            for v in blk.bos_range() {
                key.bos[v] = 0;
            }
            let v = (c * &s).mul_rational(&(radial * BigRational::from_integer(2.into())));
            crate::algebra::accumulate(&mut out, key, &v);
        }
        pow = &pow * &xf2;
    }
    Ok(E::from_terms(&sig, out))
}

/// Radial weight f(|x|) multiplying a polynomial under the normalized integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    Unit,
    /// A radial function, represented by its value at 1. Needs m >= 1.
    Radial(Scalar),
    /// |x|^(2l).
    NormPower(u32),
}

/// Normalized supersphere integral for M = -2k:
/// (1/k!) sum_{j<=k} (k-j)!/j! (-D/4)^j [R] at the origin, scaled by the weight at 1.
/// Requires deg R <= 2k+1.
pub fn normalized_integral(f: &E, b: BlockId, weight: &Weight) -> Result<E> {
    let sig = f.sig().clone();
    let blk = sig.block(b).clone();
    let msup = blk.super_dim();
    if msup > 0 || msup % 2 != 0 {
        return Err(Error::Domain(format!("normalized integral needs M in -2N, got M = {msup}")));
    }
    if f.has_radial() {
        return Err(Error::NonPolynomial(blk.name.clone()));
    }
    let k = (-msup / 2) as u64;
    let deg = f.block_degree(b);
    if deg > 2 * k as usize + 1 {
        return Err(Error::DegreeBound { degree: deg, bound: 2 * k as usize + 1 });
    }
    let (poly, scale) = match weight {
        Weight::Unit => (f.clone(), Scalar::one()),
        Weight::Radial(v) => {
            if blk.m == 0 {
                return Err(Error::Domain("radial weights need m >= 1".into()));
            }
            (f.clone(), v.clone())
        }
        Weight::NormPower(l) => {
            if blk.m == 0 {
                (E::norm_squared(&sig, b).pow(*l) * f, Scalar::one())
            } else {
                (f.clone(), Scalar::one())
            }
        }
    };
    let mut out = E::zero(&sig);
    let mut g = poly;
    let quarter = BigRational::new((-1).into(), 4.into());
    let mut qj = BigRational::from_integer(1.into());
    for j in 0..=k {
        if g.is_zero() {
            break;
        }
        let c = factorial_q(k - j) / factorial_q(j) / factorial_q(k) * &qj;
        if !c.is_zero() {
            out = out + g.restrict_block_zero(b)?.scale_rational(&c);
        }
        g = laplacian(&g, b);
        qj *= &quarter;
    }
    Ok(out.scale(&scale))
}

/// Ordinary or normalized integral depending on M: the normalized one for M in -2N.
pub fn is_normalized_case(m_super: i64) -> bool {
    m_super <= 0 && m_super % 2 == 0
}
