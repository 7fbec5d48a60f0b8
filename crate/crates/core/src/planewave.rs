//! Plane-wave decompositions of CK-extensions and supersphere integrals of
//! holomorphic plane waves g(<x,w> - x0 w).
//!
//! The integration block w must share the Clifford generators of x (see
//! `SignatureBuilder::block_sharing`). The CK parameter is a block y with its own
//! generators, or x0.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{BlockId, Sig, SuperElement};
use crate::ck::{check_param, CkCase, Param};
use crate::error::{Error, Result};
use crate::harmonics::{fh_alpha, fh_alpha_star};
use crate::integration::{is_normalized_case, normalized_integral, sphere_integral, Weight};
use crate::ops::{dirac, laplacian_pow, partial, Var};
use crate::scalar::special::{binomial, factorial_q, sigma};
use crate::scalar::{RatFunc, SKey, Scalar};

type E = SuperElement;

const MAX_TERMS: usize = 512;

/// Which supersphere integral is applied to the plane-wave integrand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PwMode {
    /// Pizzetti integral, any superdimension.
    Sphere,
    /// Normalized integral (1/sigma_{-2k}) int, for M = -2k.
    Normalized,
}

fn inv_factorial(j: usize) -> BigRational {
    factorial_q(j as u64).recip()
}

fn sign(neg: bool) -> i64 {
    if neg {
        -1
    } else {
        1
    }
}

fn check_blocks(sig: &Sig, x: BlockId, w: BlockId) -> Result<()> {
    if x == w || sig.frame_of(w) != sig.frame_of(x) {
        return Err(Error::Domain("the integration block must share the Clifford generators of x".into()));
    }
    let (bx, bw) = (sig.block(x), sig.block(w));
    if bx.m != bw.m || bx.n != bw.n {
        return Err(Error::Domain(format!("blocks {} and {} have different dimensions", bx.name, bw.name)));
    }
    Ok(())
}

fn check_data(f0: &E, x: BlockId, w: BlockId, param: Param) -> Result<()> {
    let sig = f0.sig().clone();
    check_blocks(&sig, x, w)?;
    check_param(&sig, x, param, f0)?;
    if let Param::Block(y) = param {
        if y == w {
            return Err(Error::Domain("the parameter block must differ from w".into()));
        }
    }
    if f0.terms().keys().any(|m| f0.mono_block_degree(m, w) > 0) {
        return Err(Error::Domain("initial data must not depend on w".into()));
    }
    Ok(())
}

/// Sign s in the kernel exp(s <w,x> w D): -1 for a block parameter, +1 for x0.
fn kernel_sign(param: Param) -> i64 {
    match param {
        Param::Block(_) => -1,
        Param::X0 => 1,
    }
}

/// The termwise expansion of exp(s <w,x> w D)[F0] before integration over w, with terms
/// of x-degree above `max_degree` dropped.
///
/// With `reduced` set, even powers of w D are rewritten through (w D_y)^2 = -|w|^2 Delta_y
/// (or w^2 = -|w|^2 for x0) and |w|^2 is then replaced by 1, which is how the integrand is
/// integrated on the supersphere.
pub fn exp_integrand(
    f0: &E,
    x: BlockId,
    w: BlockId,
    param: Param,
    max_degree: Option<usize>,
    reduced: bool,
) -> Result<E> {
    check_data(f0, x, w, param)?;
    let sig = f0.sig().clone();
    let ip = E::inner_product(&sig, x, w)?;
    let wv = E::supervector(&sig, w);
    let s = kernel_sign(param);
    let top = max_degree.unwrap_or(usize::MAX);
    let mut out = E::zero(&sig);
    let mut ip_j = E::one(&sig);
    if !reduced {
        let mut g = f0.clone();
        let mut j = 0;
        while !g.is_zero() && j <= top {
            if j > MAX_TERMS {
                return Err(Error::Unsupported("plane-wave series does not terminate".into()));
            }
            out = out + (&ip_j * &g).scale_rational(&inv_factorial(j));
            g = (&wv * &param.d(&g)).scale_int(s);
            ip_j = &ip_j * &ip;
            j += 1;
        }
        return Ok(out);
    }
    // L^i F0, alternating even and odd terms
    let mut li = f0.clone();
    let mut j = 0;
    while !li.is_zero() && j <= top {
        if j > MAX_TERMS {
            return Err(Error::Unsupported("plane-wave series does not terminate".into()));
        }
        let i = j / 2;
        let c = inv_factorial(j) * BigRational::from_integer(sign(i % 2 == 1).into());
        if j % 2 == 0 {
            out = out + (&ip_j * &li).scale_rational(&c);
        } else {
            let odd = &ip_j * &wv * param.d(&li);
            out = out + odd.scale_rational(&(c * BigRational::from_integer(s.into())));
            li = param.lap(&li);
        }
        ip_j = &ip_j * &ip;
        j += 1;
    }
    Ok(out)
}

/// Supersphere integral over w of exp(s <w,x> w D)[F0], with s = -1 for a block
/// parameter y (D = d_y) and s = +1 for x0.
pub fn pw_integral_exp(
    f0: &E,
    x: BlockId,
    w: BlockId,
    param: Param,
    mode: PwMode,
    max_degree: Option<usize>,
) -> Result<E> {
    match mode {
        PwMode::Sphere => sphere_integral(&exp_integrand(f0, x, w, param, max_degree, false)?, w),
        PwMode::Normalized => {
            let blk = f0.sig().block(w).clone();
            if !is_normalized_case(blk.super_dim()) {
                return Err(Error::Domain(format!("normalized integral needs M in -2N, got {}", blk.super_dim())));
            }
            // for m = 0 the |w|^2 factors are nilpotent and stay literal
            let integrand = exp_integrand(f0, x, w, param, max_degree, blk.m != 0)?;
            normalized_integral(&integrand, w, &Weight::Unit)
        }
    }
}

/// The expansion of cosh(<w,x> d_y) - w sinh(<w,x> d_y) applied to F0, or
/// cos(<w,x> d_x0) + w sin(<w,x> d_x0) for the x0 parameter, before integration.
pub fn coshsinh_integrand(f0: &E, x: BlockId, w: BlockId, param: Param, max_degree: Option<usize>) -> Result<E> {
    check_data(f0, x, w, param)?;
    let sig = f0.sig().clone();
    if sig.block(x).m != 0 {
        return Err(Error::Domain("the cosh/sinh kernel needs m = 0".into()));
    }
    let ip = E::inner_product(&sig, x, w)?;
    let wv = E::supervector(&sig, w);
    let top = max_degree.unwrap_or(usize::MAX);
    let mut out = E::zero(&sig);
    let mut ip_r = E::one(&sig);
    let mut dr = f0.clone();
    let mut r = 0;
    while !dr.is_zero() && r <= top {
        if r > MAX_TERMS {
            return Err(Error::Unsupported("plane-wave series does not terminate".into()));
        }
        let i = r / 2;
        // cosh/sinh for y; cos/sin carry (-1)^i for x0
        let neg = match (param, r % 2) {
            (Param::Block(_), 0) => false,
            (Param::Block(_), _) => true,
            (Param::X0, _) => i % 2 == 1,
        };
        let c = inv_factorial(r) * BigRational::from_integer(sign(neg).into());
        let term = if r % 2 == 0 { &ip_r * &dr } else { &wv * &ip_r * &dr };
        out = out + term.scale_rational(&c);
        dr = param.d(&dr);
        ip_r = &ip_r * &ip;
        r += 1;
    }
    Ok(out)
}

/// Normalized integral over w of the cosh/sinh (or cos/sin) kernel applied to F0.
pub fn pw_integral_coshsinh(f0: &E, x: BlockId, w: BlockId, param: Param, max_degree: Option<usize>) -> Result<E> {
    normalized_integral(&coshsinh_integrand(f0, x, w, param, max_degree)?, w, &Weight::Unit)
}

/// A right inverse of the Dirac operator in block y (p >= 1): d_y A = g.
///
/// With J = e_1 times integration in y_1 one has d_y J = 1 + D' J, where D' collects the
/// remaining terms of d_y. D' lowers the degree in the other variables of y, so
/// A = J sum_r (-D' J)^r g is a finite sum.
pub fn dirac_right_inverse(g: &E, y: BlockId) -> Result<E> {
    let sig = g.sig().clone();
    let blk = sig.block(y).clone();
    if blk.m == 0 {
        return Err(Error::Domain(format!("no bosonic variable in block {} to integrate in", blk.name)));
    }
    if g.has_radial() {
        return Err(Error::NonPolynomial(blk.name.clone()));
    }
    let v = blk.bos_offset;
    let e1 = E::frame_orth(&sig, y, 1);
    let integrate = |h: &E| -> E {
        E::from_terms(
            &sig,
            h.terms().iter().map(|(m, c)| {
                let mut m2 = m.clone();
                m2.bos[v] += 1;
                let e = m2.bos[v] as i64;
                (m2, c.mul_rational(&BigRational::new(1.into(), e.into())))
            }),
        )
    };
    let mut acc = E::zero(&sig);
    let mut t = g.clone();
    let mut steps = 0;
    while !t.is_zero() {
        if steps > MAX_TERMS {
            return Err(Error::Unsupported("right inverse does not terminate".into()));
        }
        let jt = &e1 * &integrate(&t);
        let rest = dirac(&jt, y) + &e1 * &partial(&jt, Var::Bos(y, 1));
        acc = acc + jt;
        t = -rest;
        steps += 1;
    }
    Ok(acc)
}

/// Antiderivative in x0 with zero constants, for Laurent polynomial coefficients.
pub fn antiderivative_x0(g: &E) -> Result<E> {
    if g.sig().radial().is_some_and(|r| r.with_x0) && g.has_radial() {
        return Err(Error::Unsupported("antiderivative of a radial factor containing x0".into()));
    }
    let mut terms = Vec::with_capacity(g.len());
    for (m, c) in g.terms() {
        terms.push((m.clone(), c.antiderivative_x0()?));
    }
    Ok(E::from_terms(g.sig(), terms))
}

/// An element A with D^order A = g, where D is d_y or d/dx0.
pub fn pw_antiderivative(g: &E, param: Param, order: usize) -> Result<E> {
    let mut a = g.clone();
    for _ in 0..order {
        a = match param {
            Param::Block(y) => dirac_right_inverse(&a, y)?,
            Param::X0 => antiderivative_x0(&a)?,
        };
    }
    Ok(a)
}

/// The plane-wave form of the CK-extension of F0 (and F_{2k+1} in case ii):
/// case i (1/sigma_M) int exp(...)[F0];
/// case ii the normalized integral of exp(...)[F0] plus c_k int exp(...)[A] with
/// D^(2k+1) A = F_{2k+1}, c_k = (-1)^(k+1) k! (4 pi)^k for y and k! (4 pi)^k for x0;
/// case iii the normalized integral of the cosh/sinh (cos/sin) kernel.
pub fn pw_decomposition(f0: &E, x: BlockId, w: BlockId, param: Param, f2k1: Option<&E>) -> Result<E> {
    let sig = f0.sig().clone();
    let case = CkCase::of(&sig, x);
    let msup = sig.block(x).super_dim();
    if f2k1.is_some() && case != CkCase::II {
        return Err(Error::Domain(format!(
            "a second initial function only applies in case ii, not case {}",
            case.label()
        )));
    }
    match case {
        CkCase::I => {
            let s = sigma(msup).inv()?;
            Ok(pw_integral_exp(f0, x, w, param, PwMode::Sphere, None)?.scale(&s))
        }
        CkCase::II => {
            let mut out = pw_integral_exp(f0, x, w, param, PwMode::Normalized, None)?;
            if let Some(t) = f2k1 {
                let k = (-msup / 2) as usize;
                check_data(t, x, w, param)?;
                let a = pw_antiderivative(t, param, 2 * k + 1)?;
                let neg = matches!(param, Param::Block(_)) && k.is_multiple_of(2);
                let c = Scalar::pi_pow(k as i32)
                    .mul_rational(&(factorial_q(k as u64) * BigRational::from_integer(BigInt::from(4).pow(k as u32))))
                    .mul_int(sign(neg));
                out = out + pw_integral_exp(&a, x, w, param, PwMode::Sphere, None)?.scale(&c);
            }
            Ok(out)
        }
        CkCase::III => pw_integral_coshsinh(f0, x, w, param, None),
    }
}

/// One term coeff * z^power * (ln z)^log of a holomorphic function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoloTerm {
    pub coeff: BigRational,
    pub power: i64,
    pub log: u32,
}

/// A holomorphic function given as a finite sum of z^p (ln z)^l terms, principal branch.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HoloFn {
    pub terms: Vec<HoloTerm>,
}

impl HoloFn {
    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, i64, u32)>) -> HoloFn {
        let mut map: BTreeMap<(i64, u32), BigRational> = BTreeMap::new();
        for (c, p, l) in terms {
            *map.entry((p, l)).or_insert_with(BigRational::zero) += c;
        }
        HoloFn {
            terms: map
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((power, log), coeff)| HoloTerm { coeff, power, log })
                .collect(),
        }
    }

    /// z^p.
    pub fn power(p: i64) -> HoloFn {
        HoloFn::from_terms([(BigRational::one(), p, 0)])
    }

    pub fn derivative(&self) -> HoloFn {
        let mut v = Vec::new();
        for t in &self.terms {
            v.push((&t.coeff * BigRational::from_integer(t.power.into()), t.power - 1, t.log));
            if t.log > 0 {
                v.push((&t.coeff * BigRational::from_integer(t.log.into()), t.power - 1, t.log - 1));
            }
        }
        HoloFn::from_terms(v)
    }

    pub fn nth_derivative(&self, j: usize) -> HoloFn {
        (0..j).fold(self.clone(), |g, _| g.derivative())
    }

    /// (Re g(i x0), Im g(i x0)) for x0 > 0, using ln(i x0) = L + i pi/2.
    pub fn at_imaginary_axis(&self) -> Result<(Scalar, Scalar)> {
        let (mut re, mut im) = (Scalar::zero(), Scalar::zero());
        for t in &self.terms {
            for r in 0..=t.log {
                // (i pi/2)^r from the binomial expansion of (L + i pi/2)^l
                let c = &t.coeff
                    * BigRational::from_integer(binomial(t.log as u64, r as u64))
                    * BigRational::new(1.into(), BigInt::from(2).pow(r));
                let v = Scalar::monomial(&c, 2 * r as i32, t.log - r, t.power)?;
                match (t.power + r as i64).rem_euclid(4) {
                    0 => re = re + v,
                    1 => im = im + v,
                    2 => re = re - v,
                    _ => im = im - v,
                }
            }
        }
        Ok((re, im))
    }
}

/// Exact Taylor data of g = g1 + i g2 along the imaginary axis: `taylor(j)` returns
/// (d_a^j g1(0, x0), d_a^j g2(0, x0)) with z = a + i b.
pub trait HoloProvider {
    fn taylor(&self, j: usize) -> Result<(Scalar, Scalar)>;
}

impl HoloProvider for HoloFn {
    fn taylor(&self, j: usize) -> Result<(Scalar, Scalar)> {
        // d_a acts on a holomorphic function as d/dz
        self.nth_derivative(j).at_imaginary_axis()
    }
}

impl<F: Fn(usize) -> Result<(Scalar, Scalar)>> HoloProvider for F {
    fn taylor(&self, j: usize) -> Result<(Scalar, Scalar)> {
        self(j)
    }
}

/// Checks the Cauchy-Riemann consequences d_a^(2j) g1 = (-1)^j d_b^(2j) g1,
/// d_a^(2j+1) g2 = -(-1)^j d_b^(2j+1) g1, d_a^(2j+1) g1 = (-1)^j d_b^(2j+1) g2 and
/// d_a^(2j) g2 = (-1)^j d_b^(2j) g2 for all orders up to `order`.
pub fn check_cauchy_riemann(g: &dyn HoloProvider, order: usize) -> Result<bool> {
    let (g1, g2) = g.taylor(0)?;
    let (mut d1, mut d2) = (g1, g2);
    for r in 0..=order {
        let (a1, a2) = g.taylor(r)?;
        let i = r / 2;
        let s = Scalar::from_int(sign(i % 2 == 1));
        let ok = if r % 2 == 0 { a1 == &s * &d1 && a2 == &s * &d2 } else { a2 == -(&s * &d1) && a1 == &s * &d2 };
        if !ok {
            return Ok(false);
        }
        d1 = d1.derivative_x0();
        d2 = d2.derivative_x0();
    }
    Ok(true)
}

fn scalar_elem(sig: &Sig, s: Scalar) -> E {
    E::from_scalar(sig, s)
}

/// The monogenic plane wave g(<x,w> - x0 w) = g1(<x,w>, x0|w|) - (w/|w|) g2(<x,w>, x0|w|)
/// expanded to degree `n` in x. The signature must use |w| as its radial base, so that
/// |w|^p is available as a generalized power. Coefficients must be Laurent polynomials
/// in x0 without L (substituting x0 |w| into L would need ln|w|).
pub fn holo_planewave(g: &dyn HoloProvider, sig: &Sig, x: BlockId, w: BlockId, n: usize) -> Result<E> {
    check_blocks(sig, x, w)?;
    if sig.block(w).m == 0 {
        return Err(Error::Domain("the |w|-normalized plane wave needs m >= 1".into()));
    }
    match sig.radial() {
        Some(r) if r.block == w && !r.with_x0 => {}
        _ => return Err(Error::Domain("the signature needs |w| as its radial base".into())),
    }
    let n2 = E::norm_squared(sig, w);
    let mut pow_cache: BTreeMap<i64, E> = BTreeMap::new();
    let mut abs_w = |p: i64| -> Result<E> {
        if let Some(v) = pow_cache.get(&p) {
            return Ok(v.clone());
        }
        let v = n2.gen_power(&BigRational::new(p.into(), 2.into()))?;
        pow_cache.insert(p, v.clone());
        Ok(v)
    };
    let mut subst = |s: &Scalar| -> Result<E> {
        let mut acc = E::zero(sig);
        for (k, r) in s.terms() {
            if k.log > 0 {
                return Err(Error::Unsupported("logarithmic coefficients need |w| = 1".into()));
            }
            let parts = r
                .laurent_terms()
                .ok_or_else(|| Error::Unsupported("coefficient is not a Laurent polynomial in x0".into()))?;
            for (c, p) in parts {
                let coeff = Scalar::term(SKey { sqrt_pi: k.sqrt_pi, log: 0 }, RatFunc::x0_power(&c, p));
                acc = acc + abs_w(p)?.scale(&coeff);
            }
        }
        Ok(acc)
    };
    let ip = E::inner_product(sig, x, w)?;
    let wv = E::supervector(sig, w);
    let w_unit = &wv * &n2.gen_power(&BigRational::new((-1).into(), 2.into()))?;
    let mut out = E::zero(sig);
    let mut ip_j = E::one(sig);
    for j in 0..=n {
        let (a, b) = g.taylor(j)?;
        let term = subst(&a)? - &w_unit * &subst(&b)?;
        out = out + (&ip_j * &term).scale_rational(&inv_factorial(j));
        ip_j = &ip_j * &ip;
    }
    Ok(out)
}

/// The plane wave on the supersphere |w| = 1: sum_{j<=n} <x,w>^j/j! (d_a^j g1(0,x0) - w d_a^j g2(0,x0)).
/// Logarithmic coefficients are allowed here.
pub fn holo_planewave_sphere(g: &dyn HoloProvider, sig: &Sig, x: BlockId, w: BlockId, n: usize) -> Result<E> {
    check_blocks(sig, x, w)?;
    let ip = E::inner_product(sig, x, w)?;
    let wv = E::supervector(sig, w);
    let mut out = E::zero(sig);
    let mut ip_j = E::one(sig);
    for j in 0..=n {
        let (a, b) = g.taylor(j)?;
        let term = scalar_elem(sig, a) - &wv * &scalar_elem(sig, b);
        out = out + (&ip_j * &term).scale_rational(&inv_factorial(j));
        ip_j = &ip_j * &ip;
    }
    Ok(out)
}

/// int <x,w>^j dS_w = alpha_{M,0}[t^j] |x|^j by Funk-Hecke (zero for odd j).
fn fh_even(sig: &Sig, x: BlockId, msup: i64, j: usize) -> E {
    let a = fh_alpha(msup, 0, j as u64);
    if a.is_zero() {
        return E::zero(sig);
    }
    E::norm_squared(sig, x).pow((j / 2) as u32).scale(&a)
}

/// int <x,w>^j w dS_w = alpha_{M,1}[t^j] |x|^(j-1) x by Funk-Hecke (zero for even j).
fn fh_odd(sig: &Sig, x: BlockId, msup: i64, j: usize) -> E {
    let a = fh_alpha(msup, 1, j as u64);
    if a.is_zero() {
        return E::zero(sig);
    }
    (E::norm_squared(sig, x).pow(((j - 1) / 2) as u32) * E::supervector(sig, x)).scale(&a)
}

/// Both sides of the plane-wave identity for holomorphic g and l in {1, 2}, to degree n in x:
/// the termwise Funk-Hecke integral of g(<x,w> - x0 w) w^(l-1) on the left, and
/// (int exp(<w,x> w d_x0) dS_w) g_l(0, x0) on the right.
pub fn pw_sphere_integral_holo(
    g: &dyn HoloProvider,
    l: u8,
    sig: &Sig,
    x: BlockId,
    w: BlockId,
    n: usize,
) -> Result<(E, E)> {
    check_blocks(sig, x, w)?;
    if sig.block(w).m == 0 {
        return Err(Error::Domain("the Funk-Hecke theorem needs m >= 1".into()));
    }
    if l != 1 && l != 2 {
        return Err(Error::Domain(format!("l must be 1 or 2, got {l}")));
    }
    let msup = sig.block(w).super_dim();
    let mut lhs = E::zero(sig);
    for j in 0..=n {
        let (a, b) = g.taylor(j)?;
        let (e, o) = (fh_even(sig, x, msup, j), fh_odd(sig, x, msup, j));
        // w^2 = -|w|^2 = -1 on the supersphere
        let term = if l == 1 { e.scale(&a) - o.scale(&b) } else { o.scale(&a) + e.scale(&b) };
        lhs = lhs + term.scale_rational(&inv_factorial(j));
    }
    let (g1, g2) = g.taylor(0)?;
    let f = scalar_elem(sig, if l == 1 { g1 } else { g2 });
    let rhs = pw_integral_exp(&f, x, w, Param::X0, PwMode::Sphere, Some(n))?;
    Ok((lhs, rhs))
}

/// The normalized plane-wave integral of z^(2s+l-1) and the two operator forms it is
/// compared with.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedMonomial {
    pub s: usize,
    /// (1/sigma_{-2k}) int (<x,w> - x0 w)^(2s+l-1) w^(l-1) dS_w by termwise normalized Funk-Hecke.
    pub integral: E,
    /// The normalized exp (m != 0) or cos/sin (m = 0) kernel applied to x0^(2s+l-1).
    pub kernel: E,
    /// (-1)^(l-1) (k-s-l+1)!/(4^(s+l-1) k! (s+l-1)!) Delta_w^(s+l-1) of the integrand.
    pub laplacian: E,
}

impl NormalizedMonomial {
    /// integral = (-1)^s kernel and kernel = laplacian.
    pub fn agree(&self) -> bool {
        let signed = if self.s % 2 == 1 { -self.kernel.clone() } else { self.kernel.clone() };
        self.integral == signed && self.kernel == self.laplacian
    }
}

/// Normalized plane-wave integral of the monomial g(z) = z^(2s+l-1), for M = -2k and
/// 2s + l - 1 <= 2k (k = n when m = 0).
pub fn pw_normalized_monomial(s: usize, l: u8, sig: &Sig, x: BlockId, w: BlockId) -> Result<NormalizedMonomial> {
    check_blocks(sig, x, w)?;
    let blk = sig.block(w).clone();
    let msup = blk.super_dim();
    if !is_normalized_case(msup) {
        return Err(Error::Domain(format!("normalized integral needs M in -2N, got {msup}")));
    }
    if l != 1 && l != 2 {
        return Err(Error::Domain(format!("l must be 1 or 2, got {l}")));
    }
    let l = l as usize;
    let k = (-msup / 2) as usize;
    let d = 2 * s + l - 1;
    if d > 2 * k {
        return Err(Error::DegreeBound { degree: d, bound: 2 * k });
    }
    let x0 = E::x0(sig);
    let xv = E::supervector(sig, x);

    // Funk-Hecke: (<x,w> - x0 w)^d w^(l-1) = sum_j C(d,j) (-x0)^(d-j) <x,w>^j w^(d-j+l-1),
    // and w^(2i) = (-1)^i |w|^(2i) is integrated with the weight rule for the normalized
    // integral (for m = 0 the term vanishes once i + deg/2 exceeds n).
    let mut fh = E::zero(sig);
    for j in 0..=d {
        let e = d - j + l - 1;
        let (i, h) = (e / 2, e % 2);
        let alpha = fh_alpha_star(k as u64, h as u64, j as u64);
        if alpha.is_zero() || (blk.m == 0 && i + (j + h) / 2 > blk.n) {
            continue;
        }
        let c = Scalar::from_bigint(binomial(d as u64, j as u64)).mul_int(sign((d - j) % 2 == 1) * sign(i % 2 == 1))
            * alpha;
        fh = fh + (xv.pow(j as u32) * x0.pow((d - j) as u32)).scale(&c);
    }

    let f = x0.pow(d as u32);
    let kernel = if blk.m != 0 {
        pw_integral_exp(&f, x, w, Param::X0, PwMode::Normalized, None)?
    } else {
        pw_integral_coshsinh(&f, x, w, Param::X0, None)?
    };

    let ip = E::inner_product(sig, x, w)?;
    let wv = E::supervector(sig, w);
    let integrand = (ip - &x0 * &wv).pow(d as u32) * wv.pow((l - 1) as u32);
    let r = s + l - 1;
    let c = factorial_q((k - r) as u64)
        / (BigRational::from_integer(BigInt::from(4).pow(r as u32)) * factorial_q(k as u64) * factorial_q(r as u64))
        * BigRational::from_integer(sign(l == 2).into());
    let laplacian = laplacian_pow(&integrand, w, r).scale_rational(&c).restrict_block_zero(w)?;
    Ok(NormalizedMonomial { s, integral: fh, kernel, laplacian })
}

/// The kinds of plane-wave kernels.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelKind {
    /// exp(s <w,x> w D) with s = -1 for a block parameter and +1 for x0.
    Exponential,
    /// cosh/sinh (block parameter) or cos/sin (x0), only for m = 0.
    CoshSinh,
    /// g(<x,w> - x0 w) for a holomorphic g, always with the x0 parameter.
    Holomorphic(HoloFn),
}

/// A plane-wave kernel together with its blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWaveKernel {
    pub kind: KernelKind,
    pub x: BlockId,
    pub w: BlockId,
    pub param: Param,
}

impl PlaneWaveKernel {
    pub fn new(sig: &Sig, kind: KernelKind, x: BlockId, w: BlockId, param: Param) -> Result<PlaneWaveKernel> {
        check_blocks(sig, x, w)?;
        match &kind {
            KernelKind::CoshSinh if sig.block(x).m != 0 => {
                return Err(Error::Domain("the cosh/sinh kernel needs m = 0".into()))
            }
            KernelKind::Holomorphic(_) if param != Param::X0 => {
                return Err(Error::Domain("holomorphic plane waves use the x0 parameter".into()))
            }
            _ => {}
        }
        Ok(PlaneWaveKernel { kind, x, w, param })
    }

    /// The kernel applied to F0 (ignored for holomorphic kernels) before integration,
    /// up to x-degree `max_degree`, on the supersphere |w| = 1.
    pub fn integrand(&self, f0: &E, max_degree: Option<usize>) -> Result<E> {
        match &self.kind {
            KernelKind::Exponential => exp_integrand(f0, self.x, self.w, self.param, max_degree, true),
            KernelKind::CoshSinh => coshsinh_integrand(f0, self.x, self.w, self.param, max_degree),
            KernelKind::Holomorphic(g) => holo_planewave_sphere(g, f0.sig(), self.x, self.w, max_degree.unwrap_or(4)),
        }
    }

    /// The integral over w: Pizzetti for M outside -2N_0, normalized otherwise.
    pub fn integrate(&self, f0: &E, max_degree: Option<usize>) -> Result<E> {
        let msup = f0.sig().block(self.w).super_dim();
        let mode = if is_normalized_case(msup) { PwMode::Normalized } else { PwMode::Sphere };
        match (&self.kind, mode) {
            (KernelKind::Exponential, _) => pw_integral_exp(f0, self.x, self.w, self.param, mode, max_degree),
            (KernelKind::CoshSinh, _) => pw_integral_coshsinh(f0, self.x, self.w, self.param, max_degree),
            (KernelKind::Holomorphic(_), PwMode::Sphere) => sphere_integral(&self.integrand(f0, max_degree)?, self.w),
            (KernelKind::Holomorphic(_), PwMode::Normalized) => {
                normalized_integral(&self.integrand(f0, max_degree)?, self.w, &Weight::Unit)
            }
        }
    }
}
