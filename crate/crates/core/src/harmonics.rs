//! Harmonic projection and the Funk-Hecke coefficients.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{BlockId, Mono, SuperElement};
use crate::error::{Error, Result};
use crate::integration::{normalized_integral, sphere_integral, Weight};
use crate::ops::laplacian;
use crate::random::block_monomials;
use crate::scalar::special::{factorial_q, gamma_half, gamma_recip_half};
use crate::scalar::Scalar;

type E = SuperElement;

/// Moves every variable of block `from` to the same position in block `to`.
/// The element must not involve variables of `to` already.
pub fn rename_block(f: &E, from: BlockId, to: BlockId) -> E {
    let sig = f.sig().clone();
    let (bf, bt) = (sig.block(from).clone(), sig.block(to).clone());
    assert!(bf.m == bt.m && bf.n == bt.n, "blocks differ in dimension");
    let mut out = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut m2 = m.clone();
        for i in 0..bf.m {
            assert_eq!(m.bos[bt.bos_offset + i], 0, "target block already present");
            m2.bos[bt.bos_offset + i] = m.bos[bf.bos_offset + i];
            m2.bos[bf.bos_offset + i] = 0;
        }
        let g_from = (m.grass & bf.ferm_mask()) >> bf.ferm_offset;
        assert_eq!(m.grass & bt.ferm_mask(), 0, "target block already present");
        let others = m.grass & !bf.ferm_mask();
        // keep the sign: only same-block reorderings are sign-free, so require no spectators
        assert!(others == 0 || g_from == 0, "renaming with fermionic spectators is not supported");
        m2.grass = others | (g_from << bt.ferm_offset);
        crate::algebra::accumulate(&mut out, m2, c);
    }
    E::from_terms(&sig, out)
}

/// Solves A q = b over Q with scalar right-hand sides, free unknowns set to zero.
fn solve(a: &[Vec<BigRational>], b: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    let mut rows: Vec<(Vec<BigRational>, Scalar)> = a.iter().cloned().zip(b.iter().cloned()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r].0[c].recip();
        for x in rows[r].0.iter_mut() {
            *x *= &inv;
        }
        rows[r].1 = rows[r].1.mul_rational(&inv);
        let (prow, prhs) = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row.0[c].is_zero() {
                continue;
            }
            let f = row.0[c].clone();
            for (x, y) in row.0.iter_mut().zip(prow.iter()) {
                *x -= &f * y;
            }
            row.1 = &row.1 - &prhs.mul_rational(&f);
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|(_, s)| !s.is_zero()) {
        return None;
    }
    let mut q = vec![Scalar::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        q[c] = rows[i].1.clone();
    }
    Some(q)
}

/// Harmonic part H = R - |x|^2 Q of a homogeneous polynomial R of degree l in `block`,
/// with Q of degree l-2 chosen so that D H = 0. R may be Clifford-valued but must not
/// involve other blocks.
pub fn harmonic_project(r: &E, block: BlockId) -> Result<E> {
    let sig = r.sig().clone();
    if r.has_radial() {
        return Err(Error::NonPolynomial(sig.block(block).name.clone()));
    }
    if r.is_zero() {
        return Ok(r.clone());
    }
    let l = r.block_degree(block);
    for m in r.terms().keys() {
        if r.mono_block_degree(m, block) != l {
            return Err(Error::Domain("harmonic projection needs a homogeneous polynomial".into()));
        }
        if r.mono_block_degree(m, block) != (m.bos_degree() + m.grass_degree()) as usize {
            return Err(Error::Domain("harmonic projection input involves other blocks".into()));
        }
    }
    if l < 2 {
        return Ok(r.clone());
    }
    let norm2 = E::norm_squared(&sig, block);
    let basis = block_monomials(&sig, block, l - 2);
    let index: BTreeMap<Mono, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let ncols = basis.len();
    let mut a = vec![vec![BigRational::zero(); ncols]; ncols];
    for (col, mu) in basis.iter().enumerate() {
        let img = laplacian(&(&norm2 * &E::from_mono(&sig, mu.clone(), Scalar::one())), block);
        for (m, c) in img.terms() {
            let q = c.as_rational().expect("rational matrix entries");
            a[index[m]][col] = q;
        }
    }
    // split by Clifford component
    let mut by_cliff: BTreeMap<Mono, E> = BTreeMap::new();
    for (m, c) in r.terms() {
        let mut key = SuperElement::unit_mono(&sig);
        key.orth = m.orth;
        key.weyl = m.weyl.clone();
        let part = E::from_mono(&sig, m.without_clifford(), c.clone());
        let e = by_cliff.remove(&key).unwrap_or_else(|| E::zero(&sig));
        by_cliff.insert(key, e + part);
    }
    let mut out = E::zero(&sig);
    for (cl, rc) in by_cliff {
        let lap = laplacian(&rc, block);
        let mut rhs = vec![Scalar::zero(); ncols];
        for (m, c) in lap.terms() {
            rhs[index[m]] = c.clone();
        }
        let q = solve(&a, &rhs, ncols).ok_or(Error::SingularProjection)?;
        let qe = E::from_terms(&sig, basis.iter().cloned().zip(q));
        let h = rc - &norm2 * &qe;
        out = out + h * E::from_mono(&sig, cl, Scalar::one());
    }
    Ok(out)
}

/// alpha_{M,l}[t^j] = j!/(j-l)! 2 pi^((M-1)/2) / 2^l Gamma((j-l+1)/2) / Gamma((M+j+l)/2)
/// when j >= l and j + l is even, else 0.
pub fn fh_alpha(m_super: i64, l: u64, j: u64) -> Scalar {
    if j < l || (j + l) % 2 == 1 {
        return Scalar::zero();
    }
    let c = factorial_q(j) / factorial_q(j - l) * BigRational::new(2.into(), num_bigint::BigInt::from(2).pow(l as u32));
    Scalar::sqrt_pi_pow((m_super - 1) as i32).mul_rational(&c)
        * gamma_half((j - l + 1) as i64).expect("positive")
        * gamma_recip_half(m_super + (j + l) as i64)
}

/// alpha*_{k,l}[t^j] = (-1)^j pi^(-1/2) 2^(-l) (k-(j+l)/2)!/k! j!/(j-l)! Gamma((j-l+1)/2)
/// for j >= l, j + l even and (j + l)/2 <= k; zero otherwise.
pub fn fh_alpha_star(k: u64, l: u64, j: u64) -> Scalar {
    if j < l || (j + l) % 2 == 1 || (j + l) / 2 > k {
        return Scalar::zero();
    }
    let mut c = factorial_q(k - (j + l) / 2) / factorial_q(k) * factorial_q(j)
        / factorial_q(j - l)
        / BigRational::from_integer(num_bigint::BigInt::from(2).pow(l as u32));
    if j % 2 == 1 {
        c = -c;
    }
    Scalar::sqrt_pi_pow(-1).mul_rational(&c) * gamma_half((j - l + 1) as i64).expect("positive")
}

/// Both sides of the Funk-Hecke identity for a harmonic H of degree l in w:
/// (int <x,w>^j H(w) dS_w, alpha_{M,l}[t^j] |x|^(j-l) H(x)).
pub fn funk_hecke_sides(h: &E, x: BlockId, w: BlockId, l: u64, j: u64) -> Result<(E, E)> {
    let sig = h.sig().clone();
    let ip = E::inner_product(&sig, x, w)?;
    let lhs = sphere_integral(&(ip.pow(j as u32) * h), w)?;
    let msup = sig.block(w).super_dim();
    let a = fh_alpha(msup, l, j);
    let rhs = if a.is_zero() {
        E::zero(&sig)
    } else {
        E::norm_squared(&sig, x).pow(((j - l) / 2) as u32) * rename_block(h, w, x).scale(&a)
    };
    Ok((lhs, rhs))
}

/// Both sides of the normalized Funk-Hecke identity (M = -2k, j + l <= 2k + 1):
/// (normalized int <x,w>^j H(w), alpha*_{k,l}[t^j] x^(j-l) H(x)).
pub fn funk_hecke_normalized_sides(h: &E, x: BlockId, w: BlockId, l: u64, j: u64) -> Result<(E, E)> {
    let sig = h.sig().clone();
    let msup = sig.block(w).super_dim();
    if msup > 0 || msup % 2 != 0 {
        return Err(Error::Domain(format!("normalized Funk-Hecke needs M in -2N, got {msup}")));
    }
    let k = (-msup / 2) as u64;
    if j + l > 2 * k + 1 {
        return Err(Error::DegreeBound { degree: (j + l) as usize, bound: (2 * k + 1) as usize });
    }
    let ip = E::inner_product(&sig, x, w)?;
    let lhs = normalized_integral(&(ip.pow(j as u32) * h), w, &Weight::Unit)?;
    let a = fh_alpha_star(k, l, j);
    let rhs = if a.is_zero() || j < l {
        E::zero(&sig)
    } else {
        E::supervector(&sig, x).pow((j - l) as u32) * rename_block(h, w, x).scale(&a)
    };
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::text::parse;

    #[test]
    fn projection_is_harmonic_and_fixes_harmonics() {
        let sig = Signature::single(1, 1);
        let h = harmonic_project(&parse(&sig, "x1^2").unwrap(), 0).unwrap();
        assert!(laplacian(&h, 0).is_zero());
        // proportional to x1^2 - 1/2 x`1 x`2
        assert_eq!(h, parse(&sig, "2*x1^2 - xg1*xg2").unwrap());
        assert_eq!(harmonic_project(&h, 0).unwrap(), h);
    }

    #[test]
    fn norm_is_harmonic_when_m_super_vanishes() {
        let sig = Signature::single(2, 1);
        let n2 = E::norm_squared(&sig, 0);
        assert_eq!(harmonic_project(&n2, 0).unwrap(), n2);
    }

    #[test]
    fn fh_coefficient_values() {
        // M = 2, l = 0, j = 0: 2 pi^(1/2) Gamma(1/2) / Gamma(1) = 2 pi
        assert_eq!(fh_alpha(2, 0, 0), Scalar::pi_pow(1).mul_int(2));
        assert!(fh_alpha(3, 1, 2).is_zero());
        assert!(fh_alpha(3, 2, 1).is_zero());
        // alpha*_{k,0}[1] = pi^(-1/2) Gamma(1/2) = 1
        assert!(fh_alpha_star(2, 0, 0).is_one());
    }

    #[test]
    fn funk_hecke_small_cases() {
        for (m, n) in [(2, 0), (3, 1), (1, 1)] {
            let sig = Signature::builder().block("x", m, n).block_sharing("w", "x").build().unwrap();
            let h = harmonic_project(&parse(&sig, if m >= 2 { "w1*w2" } else { "w1^2" }).unwrap(), 1).unwrap();
            for j in 0..=4 {
                let (l, r) = funk_hecke_sides(&h, 0, 1, 2, j).unwrap();
                assert_eq!(l, r, "m={m} n={n} j={j}");
            }
        }
    }
}

#[cfg(test)]
mod random_tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::random::{random_homogeneous, rng};

    fn shared(m: usize, n: usize) -> crate::algebra::Sig {
        Signature::builder().block("x", m, n).block_sharing("w", "x").build().unwrap()
    }

    #[test]
    fn funk_hecke_random_harmonics() {
        let mut r = rng(11);
        for (m, n) in [(3, 1), (2, 1), (1, 1), (4, 1)] {
            let sig = shared(m, n);
            for l in 0..=3usize {
                let h = match harmonic_project(&random_homogeneous(&sig, 1, l, 3, true, &mut r), 1) {
                    Ok(h) => h,
                    Err(Error::SingularProjection) => continue,
                    Err(e) => panic!("{e}"),
                };
                assert!(laplacian(&h, 1).is_zero());
                for j in 0..=5 {
                    let (a, b) = funk_hecke_sides(&h, 0, 1, l as u64, j).unwrap();
                    assert_eq!(a, b, "m={m} n={n} l={l} j={j} h={h}");
                }
            }
        }
    }

    #[test]
    fn normalized_funk_hecke_random_harmonics() {
        let mut r = rng(12);
        for (m, n) in [(0, 1), (2, 2), (0, 2), (2, 3)] {
            let sig = shared(m, n);
            let k = n - m / 2;
            for l in 0..=2 * k + 1 {
                let h = match harmonic_project(&random_homogeneous(&sig, 1, l, 3, true, &mut r), 1) {
                    Ok(h) => h,
                    Err(Error::SingularProjection) => continue,
                    Err(e) => panic!("{e}"),
                };
                for j in 0..=(2 * k + 1 - l) {
                    let (a, b) = funk_hecke_normalized_sides(&h, 0, 1, l as u64, j as u64).unwrap();
                    assert_eq!(a, b, "m={m} n={n} l={l} j={j} h={h}");
                }
            }
        }
    }
}
