use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::element::SuperElement;
use crate::error::{Error, Result};
use crate::scalar::special::{factorial_q, falling};
use crate::scalar::{SKey, Scalar};

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = num_integer::Roots::sqrt(n);
    (&r * &r == *n).then_some(r)
}

fn rational_pow(c: &BigRational, q: &BigRational) -> Option<BigRational> {
    let (num, den) = (q.numer(), q.denom());
    let base = if den.is_one() {
        c.clone()
    } else if *den == BigInt::from(2) {
        BigRational::new(exact_sqrt(c.numer())?, exact_sqrt(c.denom())?)
    } else {
        return None;
    };
    let e: i64 = num.try_into().ok()?;
    if e < 0 && base.is_zero() {
        return None;
    }
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    Some(if e < 0 { acc.recip() } else { acc })
}

fn int_times(q: &BigRational, k: i64) -> Option<i64> {
    let v = q * BigRational::from_integer(k.into());
    v.is_integer().then(|| v.to_integer().try_into().ok()).flatten()
}

/// c^q for a scalar c = k * sqrt(pi)^s * x0^e (no L), with x0 > 0.
pub fn scalar_power(c: &Scalar, q: &BigRational) -> Result<Scalar> {
    let err = || Error::Unsupported(format!("power {q} of scalar {c} is not representable"));
    let [(key, r)] = c.terms() else { return Err(err()) };
    if key.log != 0 {
        return Err(err());
    }
    let (k, e) = r.as_x0_monomial().ok_or_else(err)?;
    let kq = rational_pow(&k, q).ok_or_else(err)?;
    let eq = int_times(q, e).ok_or_else(err)?;
    let sq = int_times(q, key.sqrt_pi as i64).ok_or_else(err)?;
    Ok(Scalar::term(SKey { sqrt_pi: sq as i32, log: 0 }, crate::scalar::RatFunc::x0_power(&kq, eq)))
}

impl SuperElement {
    /// a^p for an even, Clifford-scalar element a = body + nilpotent, where the body
    /// (Grassmann-free part) is c * R^beta, c * R^2 for the radial base, or a scalar
    /// monomial in x0. Expands sum_j binom(p, j) body^(p-j) nil^j.
    pub fn gen_power(&self, p: &BigRational) -> Result<SuperElement> {
        let sig = self.sig().clone();
        if !self.is_clifford_scalar() || self.terms().keys().any(|m| m.grass_degree() % 2 == 1) {
            return Err(Error::Domain("generalized powers need an even Clifford-scalar element".into()));
        }
        let body = self.filter(|m| m.grass == 0);
        let nil = self.filter(|m| m.grass != 0);
        let unit = SuperElement::unit_mono(&sig);
        // body = c * R^beta
        let (c, beta) = {
            let single = (body.len() == 1).then(|| body.terms().iter().next().unwrap());
            match single {
                Some((m, c)) if m.bos == unit.bos => (c.clone(), m.radial as i64),
                _ => {
                    if sig.radial().is_none() {
                        return Err(Error::Unsupported("body of generalized power is not a radial monomial".into()));
                    }
                    let q = &body * &SuperElement::radial_power(&sig, -2)?;
                    match q.as_scalar() {
                        Some(c) if !c.is_zero() => (c, 2),
                        _ => {
                            return Err(Error::Unsupported("body of generalized power is not a multiple of R^2".into()))
                        }
                    }
                }
            }
        };
        if c.is_zero() {
            return Err(Error::Domain("generalized power of an element with zero body".into()));
        }
        let mut acc = SuperElement::zero(&sig);
        let mut nil_j = SuperElement::one(&sig);
        let mut j = 0u64;
        while !nil_j.is_zero() {
            let qj = p - BigRational::from_integer(j.into());
            let coeff = falling(p, j) / factorial_q(j);
            if !coeff.is_zero() {
                let cpow = scalar_power(&c, &qj)?;
                let rexp = int_times(&qj, beta)
                    .ok_or_else(|| Error::Unsupported(format!("R^({beta}*{qj}) is not an integer power")))?;
                let b = if rexp == 0 {
                    SuperElement::from_scalar(&sig, cpow)
                } else {
                    SuperElement::radial_power(&sig, rexp as i32)?.scale(&cpow)
                };
                acc = acc + (b * &nil_j).scale_rational(&coeff);
            }
            nil_j = &nil_j * &nil;
            j += 1;
        }
        Ok(acc)
    }
}

/// Exact partial derivatives d^alpha f at a body point, where `alpha[i]` counts the
/// derivatives in the i-th argument. Bodies are passed as elements so that shifted
/// splittings can be evaluated.
pub type TaylorProvider<'a> = dyn Fn(&[usize], &[SuperElement]) -> Result<SuperElement> + 'a;

/// f(a_1, ..., a_r) for even elements a_i = body_i + nil_i, as the finite Taylor sum
/// sum_alpha d^alpha f(body) / alpha! nil^alpha.
pub fn compose_scalar_split(
    f: &TaylorProvider,
    bodies: &[SuperElement],
    nils: &[SuperElement],
) -> Result<SuperElement> {
    let sig = bodies.first().or(nils.first()).ok_or_else(|| Error::Domain("no arguments".into()))?.sig().clone();
    for a in bodies.iter().chain(nils) {
        if a.terms().keys().any(|m| m.grass_degree() % 2 == 1 || !m.is_clifford_scalar()) {
            return Err(Error::Domain("composition needs even Clifford-scalar arguments".into()));
        }
    }
    // powers nil_i^j / j! until they vanish
    let pows: Vec<Vec<SuperElement>> = nils
        .iter()
        .map(|n| {
            let mut v = vec![SuperElement::one(&sig)];
            loop {
                let j = v.len() as u64;
                let next = (v.last().unwrap() * n).scale_rational(&BigRational::new(1.into(), j.into()));
                if next.is_zero() {
                    break v;
                }
                v.push(next);
            }
        })
        .collect();
    let mut acc = SuperElement::zero(&sig);
    let mut alpha = vec![0usize; nils.len()];
    loop {
        let mut term = f(&alpha, bodies)?;
        for (i, &a) in alpha.iter().enumerate() {
            term = term * &pows[i][a];
        }
        acc = acc + term;
        // odometer over the truncated multi-index box
        let mut i = 0;
        loop {
            if i == alpha.len() {
                return Ok(acc);
            }
            alpha[i] += 1;
            if alpha[i] < pows[i].len() {
                break;
            }
            alpha[i] = 0;
            i += 1;
        }
    }
}

/// Splits each argument into its Grassmann-free body and nilpotent remainder and composes.
pub fn compose_scalar(f: &TaylorProvider, args: &[SuperElement]) -> Result<SuperElement> {
    let bodies: Vec<_> = args.iter().map(|a| a.filter(|m| m.grass == 0)).collect();
    let nils: Vec<_> = args.iter().map(|a| a.filter(|m| m.grass != 0)).collect();
    compose_scalar_split(f, &bodies, &nils)
}
