//! Fundamental solutions of the super Laplace and Cauchy-Riemann operators, the
//! Taylor series of the super Cauchy kernel and its plane-wave decompositions.
//!
//! Everything is computed for x0 > 0, so sgn(x0) = 1 and |x0| = x0. "Away from the
//! origin" means the radial ring, where R is an invertible symbol.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{BlockId, Sig, Signature, SuperElement};
use crate::ck::{CKSeries, CkCase, Param};
use crate::error::{Error, Result};
use crate::ops::{dirac, laplacian, laplacian_pow, partial_x0};
use crate::planewave::{pw_sphere_integral_holo, HoloFn};
use crate::scalar::special::{binom_q, factorial, factorial_q, gamma_half, rising, sigma};
use crate::scalar::Scalar;

type E = SuperElement;

const X: BlockId = 0;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pm(neg: bool) -> i64 {
    if neg {
        -1
    } else {
        1
    }
}

fn super_dim(m: usize, n: usize) -> i64 {
    m as i64 - 2 * n as i64
}

/// How a kernel is represented.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelRepr {
    /// A closed form over the radial ring.
    Fraction(E),
    /// A Taylor series in x with coefficients depending on x0.
    Series(CKSeries),
}

/// A fundamental solution together with its superdimension data.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelForm {
    pub m: usize,
    pub n: usize,
    pub super_dim: i64,
    pub sig: Sig,
    pub repr: KernelRepr,
    /// Highest x-degree kept by a series.
    pub truncation: Option<usize>,
}

impl KernelForm {
    /// The kernel as a single element. Series are materialized.
    pub fn element(&self) -> E {
        match &self.repr {
            KernelRepr::Fraction(f) => f.clone(),
            KernelRepr::Series(s) => s.materialize(&self.sig),
        }
    }
}

/// Gamma(two_a/2) for a half-integer or positive integer argument.
fn gamma_of_half(two_a: i64) -> Result<Scalar> {
    gamma_half(two_a).ok_or_else(|| Error::Domain(format!("Gamma({two_a}/2) is a pole")))
}

/// Fundamental solution of Delta^j in m bosonic dimensions,
/// (-1)^j Gamma(m/2 - j) / (4^j pi^(m/2) Gamma(j)) R^(2j - m), on a signature whose radial
/// base is the m-dimensional one.
fn nu_bosonic(sig: &Sig, m: usize, j: usize) -> Result<E> {
    let two_a = m as i64 - 2 * j as i64;
    if two_a <= 0 && two_a % 2 == 0 {
        return Err(Error::Domain(format!("the fundamental solution of Delta^{j} in dimension {m} is logarithmic")));
    }
    let c = gamma_of_half(two_a)? * Scalar::sqrt_pi_pow(-(m as i32)) * gamma_of_half(2 * j as i64)?.inv()?;
    let c = c.mul_rational(
        &(BigRational::from_integer(pm(j % 2 == 1).into()) / BigRational::from_integer(BigInt::from(4).pow(j as u32))),
    );
    Ok(E::radial_power(sig, (2 * j) as i32 - m as i32)?.scale(&c))
}

/// The fundamental solution of Delta_{m|2n}:
/// pi^n sum_j (-4)^j j!/(n-j)! nu_{2j+2} x`^(2n-2j), over the radial ring of x.
pub fn fundamental_solution_laplace(m: usize, n: usize) -> Result<KernelForm> {
    if m == 0 {
        return Err(Error::Domain("the Laplace fundamental solution needs m >= 1".into()));
    }
    let sig = Signature::builder().block("x", m, n).radial("x", false).build()?;
    let xf = E::supervector_fermionic(&sig, X);
    let mut acc = E::zero(&sig);
    for j in 0..=n {
        let c = BigRational::from_integer(BigInt::from(-4).pow(j as u32) * factorial(j as u64))
            / factorial_q((n - j) as u64);
        acc = acc + (nu_bosonic(&sig, m, j + 1)? * xf.pow((2 * (n - j)) as u32)).scale_rational(&c);
    }
    Ok(KernelForm {
        m,
        n,
        super_dim: super_dim(m, n),
        repr: KernelRepr::Fraction(acc.scale(&Scalar::pi_pow(n as i32))),
        sig,
        truncation: None,
    })
}

/// Delta_{m|2n} applied to a kernel; zero away from the origin for a fundamental solution.
pub fn laplace_residual(k: &KernelForm) -> E {
    laplacian(&k.element(), X)
}

fn check_cauchy_dims(m: usize, n: usize) -> Result<i64> {
    let msup = super_dim(m, n);
    if m + n == 0 {
        return Err(Error::Domain("empty superspace".into()));
    }
    if msup < 0 && (msup + 1) % 2 == 0 {
        return Err(Error::Domain(format!("M + 1 = {} lies in -2N0", msup + 1)));
    }
    Ok(msup)
}

fn cauchy_sig(m: usize, n: usize) -> Result<Sig> {
    Ok(Signature::builder().block("x", m, n).radial("x", true).build()?)
}

/// -(1/sigma_{M+1}) (x0 - x) |x0 - x|^-(M+1), with |x0 - x|^2 = x0^2 + |x|^2 expanded as a
/// generalized power over the radial base R^2 = x0^2 + sum x_j^2.
pub fn cauchy_kernel(m: usize, n: usize) -> Result<KernelForm> {
    let msup = check_cauchy_dims(m, n)?;
    let sig = cauchy_sig(m, n)?;
    let f = cauchy_fraction_on(&sig, X)?;
    Ok(KernelForm { m, n, super_dim: msup, sig, repr: KernelRepr::Fraction(f), truncation: None })
}

fn cauchy_fraction_on(sig: &Sig, x: BlockId) -> Result<E> {
    let msup = sig.block(x).super_dim();
    let x0 = E::x0(sig);
    let base = &x0 * &x0 + E::norm_squared(sig, x);
    let p = base.gen_power(&q(-(msup + 1), 2))?;
    let c = -sigma(msup + 1).inv()?;
    Ok(((x0 - E::supervector(sig, x)) * p).scale(&c))
}

/// The same kernel assembled from the bosonic kernels in m + 1 dimensions:
/// pi^n sum_j (-1)^j 4^j j!/(n-j)! phi_{2j+1} x`^(2n-2j)
///   - pi^n sum_{j<n} (-1)^j 2^(2j+1) j!/(n-j-1)! nu_{2j+2} x`^(2n-2j-1).
pub fn cauchy_kernel_sum(m: usize, n: usize) -> Result<E> {
    check_cauchy_dims(m, n)?;
    let sig = cauchy_sig(m, n)?;
    let x0 = E::x0(&sig);
    let xb = E::supervector_bosonic(&sig, X);
    let xf = E::supervector_fermionic(&sig, X);
    // phi_{2j+1} = (-1)^(j+1) Gamma((m+1)/2 - j) / (2^(2j+1) pi^((m+1)/2) j!) (x0 - x) R^(2j-m-1)
    let phi = |j: usize| -> Result<E> {
        let c = gamma_of_half(m as i64 + 1 - 2 * j as i64)? * Scalar::sqrt_pi_pow(-(m as i32 + 1));
        let c = c.mul_rational(
            &(BigRational::from_integer(pm(j.is_multiple_of(2)).into())
                / (BigRational::from_integer(BigInt::from(2).pow(2 * j as u32 + 1)) * factorial_q(j as u64))),
        );
        Ok((&x0 - &xb) * E::radial_power(&sig, 2 * j as i32 - m as i32 - 1)?.scale(&c))
    };
    let mut acc = E::zero(&sig);
    for j in 0..=n {
        let c = BigRational::from_integer(
            BigInt::from(pm(j % 2 == 1)) * BigInt::from(4).pow(j as u32) * factorial(j as u64),
        ) / factorial_q((n - j) as u64);
        acc = acc + (phi(j)? * xf.pow((2 * (n - j)) as u32)).scale_rational(&c);
    }
    for j in 0..n {
        let c = BigRational::from_integer(
            BigInt::from(pm(j % 2 == 1)) * BigInt::from(2).pow(2 * j as u32 + 1) * factorial(j as u64),
        ) / factorial_q((n - j - 1) as u64);
        acc = acc - (nu_bosonic(&sig, m + 1, j + 1)? * xf.pow((2 * (n - j) - 1) as u32)).scale_rational(&c);
    }
    Ok(acc.scale(&Scalar::pi_pow(n as i32)))
}

/// (d_x - d_x0) applied to an element.
pub fn cauchy_residual(f: &E, x: BlockId) -> E {
    dirac(f, x) - partial_x0(f)
}

/// Taylor coefficients of the kernel in x for |x| < x0:
/// F_2j = -rho_j / (j! sigma_{M+1}) x0^(-M-2j) and F_{2j+1} = rho_j / (j! sigma_{M+1}) x0^(-M-2j-1)
/// with rho_j = ((M+1)/2)_j, kept up to degree `degree`.
pub fn cauchy_series_on(sig: &Sig, x: BlockId, degree: usize) -> Result<CKSeries> {
    let msup = sig.block(x).super_dim();
    let b = sig.block(x);
    check_cauchy_dims(b.m, b.n)?;
    let inv_sigma = sigma(msup + 1).inv()?;
    let a = q(msup + 1, 2);
    let mut terms = Vec::new();
    for d in 0..=degree {
        let j = d / 2;
        let c = rising(&a, j as u64) / factorial_q(j as u64);
        let (c, pow) = if d % 2 == 0 { (-c, -msup - 2 * j as i64) } else { (c, -msup - 2 * j as i64 - 1) };
        let f = E::from_scalar(sig, Scalar::x0_pow(pow).mul_rational(&c) * &inv_sigma);
        terms.push((d, f));
    }
    // x^2 is nilpotent when m = 0, so the series ends at 2n + 1
    if b.m == 0 {
        terms.retain(|(d, _)| *d <= 2 * b.n + 1);
    }
    let truncation = terms.last().map(|(d, _)| d + 1).unwrap_or(0);
    Ok(CKSeries { case: CkCase::of(sig, x), block: x, param: Param::X0, terms, truncation })
}

/// The Taylor series of the Cauchy kernel up to degree `degree`, on a signature without radial base.
pub fn cauchy_kernel_series(m: usize, n: usize, degree: usize) -> Result<KernelForm> {
    let msup = check_cauchy_dims(m, n)?;
    let sig = Signature::single(m, n);
    let s = cauchy_series_on(&sig, X, degree)?;
    Ok(KernelForm { m, n, super_dim: msup, sig, repr: KernelRepr::Series(s), truncation: Some(degree) })
}

/// Re-expands an element of a radial ring with R^2 = x0^2 + r^2 as a polynomial in the
/// radial block, using R^a = sum_i binom(a/2, i) x0^(a-2i) r^(2i), and keeps x-degrees
/// up to `degree`. The result lives on `target`, which must have the same variables.
pub fn expand_radial(f: &E, target: &Sig, degree: usize) -> Result<E> {
    let sig = f.sig();
    let spec = sig
        .radial()
        .filter(|r| r.with_x0)
        .ok_or_else(|| Error::Domain("re-expansion needs a radial base containing x0".into()))?;
    let blk = spec.block;
    let r2 = E::norm_squared_bosonic(target, blk);
    let mut out = E::zero(target);
    for (mono, c) in f.terms() {
        let mut plain = mono.clone();
        plain.radial = 0;
        let base = E::from_mono(target, plain, c.clone());
        let deg = f.mono_block_degree(mono, blk);
        if deg > degree {
            continue;
        }
        if mono.radial == 0 {
            out = out + base;
            continue;
        }
        let a = q(mono.radial as i64, 2);
        let mut r2i = E::one(target);
        for i in 0..=(degree - deg) / 2 {
            let coeff = Scalar::x0_pow(mono.radial as i64 - 2 * i as i64).mul_rational(&binom_q(&a, i as u64));
            out = out + (&base * &r2i).scale(&coeff);
            r2i = &r2i * &r2;
        }
    }
    Ok(out.truncate_block(blk, degree))
}

/// The functions G_l(z) = z^l/l! ln z - a_l z^l, l = 0..=2k, with
/// a_{l+1} = (a_l + 1/(l+1)!)/(l+1) and a_0 = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct AppellLogFamily {
    pub k: usize,
    pub a: Vec<BigRational>,
    pub g: Vec<HoloFn>,
}

pub fn appell_log(k: usize) -> AppellLogFamily {
    let mut a = vec![BigRational::zero()];
    for l in 0..2 * k {
        let l1 = (l + 1) as u64;
        let next = (&a[l] + factorial_q(l1).recip()) / BigRational::from_integer(l1.into());
        a.push(next);
    }
    let g = a
        .iter()
        .enumerate()
        .map(|(l, al)| HoloFn::from_terms([(factorial_q(l as u64).recip(), l as i64, 1), (-al.clone(), l as i64, 0)]))
        .collect();
    AppellLogFamily { k, a, g }
}

impl AppellLogFamily {
    /// G'_{l+1} = G_l for every l, G_0 = ln z and G_{2k}^(2k+1) = 1/z.
    pub fn derivative_identities_hold(&self) -> bool {
        let chain = self.g.windows(2).all(|w| w[1].derivative() == w[0]);
        let g0 = self.g[0] == HoloFn::from_terms([(BigRational::one(), 0, 1)]);
        let top = self.g[2 * self.k].nth_derivative(2 * self.k + 1) == HoloFn::power(-1);
        chain && g0 && top
    }
}

/// H_l = 1 + 1/2 + ... + 1/l.
pub fn harmonic_number(l: usize) -> BigRational {
    (1..=l).map(|i| q(1, i as i64)).fold(BigRational::zero(), |s, t| s + t)
}

/// (sigma_{M+1} sigma_M, 2 (2 pi)^M / (M-1)!) for M >= 1.
pub fn sigma_product(msup: i64) -> (Scalar, Scalar) {
    let lhs = sigma(msup + 1) * sigma(msup);
    let rhs = Scalar::pi_pow(msup as i32).mul_rational(
        &(BigRational::from_integer(BigInt::from(2).pow(msup as u32 + 1)) / factorial_q((msup - 1) as u64)),
    );
    (lhs, rhs)
}

/// The regime of the plane-wave decomposition of the Cauchy kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PwdckCase {
    /// M >= 1, even M: scalar plane waves (<x,w> - x0 w)^-M.
    EvenPositive,
    /// M >= 1, odd M: the same plane waves times w.
    OddPositive,
    /// M = -2k with m != 0: a polynomial part and log plane waves G_{2k}.
    NegativeEven,
    /// m = 0: a finite polynomial identity.
    Fermionic,
}

/// Both sides of the plane-wave decomposition of the Cauchy kernel up to x-degree N.
#[derive(Clone, Debug, PartialEq)]
pub struct PwdckReport {
    pub m: usize,
    pub n: usize,
    pub case: PwdckCase,
    pub degree: usize,
    /// The kernel, from its Taylor series.
    pub kernel: E,
    /// The plane-wave side.
    pub decomposition: E,
}

impl PwdckReport {
    pub fn passed(&self) -> bool {
        self.kernel == self.decomposition
    }
}

fn pw_sig(m: usize, n: usize) -> Result<Sig> {
    Ok(Signature::builder().block("x", m, n).block_sharing("w", "x").build()?)
}

/// Expands the kernel and its plane-wave decomposition to degree `degree` in x and
/// returns both. For m = 0 both sides are finite and compared in full.
pub fn verify_pwdck(m: usize, n: usize, degree: usize) -> Result<PwdckReport> {
    let msup = check_cauchy_dims(m, n)?;
    let sig = pw_sig(m, n)?;
    let w: BlockId = 1;
    let series = cauchy_series_on(&sig, X, degree)?;
    let kernel = series.materialize(&sig).truncate_block(X, degree);
    let pw = E::inner_product(&sig, X, w)? - E::x0(&sig) * E::supervector(&sig, w);
    let (case, decomposition) = if m == 0 {
        // -1/(4^n (n!)^2 sigma_{1-2n}) Delta_w^n (<x,w> - x0 w)^(2n)
        let c = -(sigma(msup + 1).inv()?).mul_rational(
            &(BigRational::from_integer(BigInt::from(4).pow(n as u32)) * factorial_q(n as u64).pow(2)).recip(),
        );
        (PwdckCase::Fermionic, laplacian_pow(&pw.pow(2 * n as u32), w, n).scale(&c))
    } else if msup >= 1 {
        let mu = msup as u32;
        let g = HoloFn::power(-msup);
        let even = msup % 2 == 0;
        let (lhs, _) = pw_sphere_integral_holo(&g, if even { 1 } else { 2 }, &sig, X, w, degree)?;
        // -(-1)^(M/2) or -(-1)^((M+1)/2), times (M-1)!/(2 (2 pi)^M)
        let half = if even { msup / 2 } else { (msup + 1) / 2 };
        let c = Scalar::pi_pow(-(msup as i32)).mul_rational(
            &(BigRational::from_integer(BigInt::from(-pm(half % 2 == 1)) * factorial((msup - 1) as u64))
                / BigRational::from_integer(BigInt::from(2).pow(mu + 1))),
        );
        let case = if even { PwdckCase::EvenPositive } else { PwdckCase::OddPositive };
        (case, lhs.scale(&c))
    } else {
        let k = (-msup / 2) as usize;
        // polynomial part -1/(4^k (k!)^2 sigma_{1-2k}) Delta_w^k (<x,w> - x0 w)^(2k)
        let c = -(sigma(msup + 1).inv()?).mul_rational(
            &(BigRational::from_integer(BigInt::from(4).pow(k as u32)) * factorial_q(k as u64).pow(2)).recip(),
        );
        let poly = laplacian_pow(&pw.pow(2 * k as u32), w, k).scale(&c);
        // ((-1)^k (4 pi^2)^k / 2) int G_2k(<x,w> - x0 w) dS_w
        let fam = appell_log(k);
        let (int_g, _) = pw_sphere_integral_holo(&fam.g[2 * k], 1, &sig, X, w, degree)?;
        let c2 = Scalar::pi_pow(2 * k as i32).mul_rational(
            &(BigRational::from_integer(BigInt::from(pm(k % 2 == 1)) * BigInt::from(4).pow(k as u32)) / q(2, 1)),
        );
        (PwdckCase::NegativeEven, (poly + int_g.scale(&c2)).truncate_block(X, degree))
    };
    Ok(PwdckReport { m, n, case, degree, kernel, decomposition })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn appell_coefficients() {
        let f = appell_log(3);
        assert_eq!(f.a[0], BigRational::zero());
        assert_eq!(f.a[1], q(1, 1));
        assert_eq!(f.a[2], q(3, 4));
        assert!(f.derivative_identities_hold());
    }

    #[test]
    fn newton_kernel() {
        let k = fundamental_solution_laplace(3, 0).unwrap();
        let expect = E::radial_power(&k.sig, -1).unwrap().scale(&Scalar::pi_pow(-1).mul_rational(&q(-1, 4)));
        assert_eq!(k.element(), expect);
        assert!(laplace_residual(&k).is_zero());
    }

    #[test]
    fn rejects_log_dimensions() {
        assert!(fundamental_solution_laplace(2, 0).is_err());
        assert!(fundamental_solution_laplace(4, 1).is_err());
        assert!(cauchy_kernel(1, 1).is_err());
    }

    #[test]
    fn classical_two_dimensional_kernel() {
        // -(1/2pi)(x0 - x)/(x0^2 + x1^2)
        let k = cauchy_kernel(1, 0).unwrap();
        let sig = &k.sig;
        let expect = ((E::x0(sig) - E::supervector(sig, X)) * E::radial_power(sig, -2).unwrap())
            .scale(&Scalar::pi_pow(-1).mul_rational(&q(-1, 2)));
        assert_eq!(k.element(), expect);
    }
}
