//! Generalized Cauchy-Kovalevskaya extension in superspace.
//!
//! A series F = sum_j x^j F_j is built from initial data F_0 (and F_{2k+1} when
//! M = -2k, m != 0) so that (d_x + d_y) F = 0, or (d_x - d_x0) F = 0 in the
//! x0 variant.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{BlockId, Sig, SuperElement};
use crate::error::{Error, Result};
use crate::ops::{c_coeff, dirac, laplacian, partial_x0};
use crate::scalar::special::{factorial_q, gamma_half, gamma_recip_half};
use crate::scalar::Scalar;
use crate::text::render;

type E = SuperElement;

/// Safety bound on the number of series terms. Polynomial data always terminates well before.
const MAX_TERMS: usize = 512;

/// The regime of the superdimension M of the block x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CkCase {
    /// M not in -2N_0.
    #[serde(rename = "i")]
    I,
    /// M = -2k with m != 0.
    #[serde(rename = "ii")]
    II,
    /// m = 0.
    #[serde(rename = "iii")]
    III,
}

impl CkCase {
    pub fn of(sig: &Sig, x: BlockId) -> CkCase {
        let b = sig.block(x);
        let msup = b.super_dim();
        if msup > 0 || msup % 2 != 0 {
            CkCase::I
        } else if b.m != 0 {
            CkCase::II
        } else {
            CkCase::III
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CkCase::I => "i",
            CkCase::II => "ii",
            CkCase::III => "iii",
        }
    }
}

/// The variable the coefficients F_j depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    /// A supervector block y, monogenicity (d_x + d_y) F = 0.
    Block(BlockId),
    /// The scalar x0, monogenicity (d_x - d_x0) F = 0.
    X0,
}

impl Param {
    /// The first-order operator D with D^2 = -Laplacian (y) or the plain derivative (x0).
    pub(crate) fn d(self, f: &E) -> E {
        match self {
            Param::Block(y) => dirac(f, y),
            Param::X0 => partial_x0(f),
        }
    }

    /// Delta_y, or d^2/dx0^2.
    pub(crate) fn lap(self, f: &E) -> E {
        match self {
            Param::Block(y) => laplacian(f, y),
            Param::X0 => partial_x0(&partial_x0(f)),
        }
    }

    /// Sign s in F_{j+1} = s / c(M, j+1) D F_j; it is (-1)^(j+1) for y and +1 for x0.
    fn step_sign(self, j: usize) -> i64 {
        match self {
            Param::Block(_) if j.is_multiple_of(2) => -1,
            _ => 1,
        }
    }
}

/// sum_j x^j F_j with its regime.
#[derive(Clone, Debug, PartialEq)]
pub struct CKSeries {
    pub case: CkCase,
    pub block: BlockId,
    pub param: Param,
    /// Nonzero coefficients, sorted by j.
    pub terms: Vec<(usize, E)>,
    /// Every F_j with j >= truncation vanishes.
    pub truncation: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CKTermJson {
    pub j: usize,
    pub element: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CKSeriesJson {
    pub case: CkCase,
    pub block: String,
    pub terms: Vec<CKTermJson>,
}

impl CKSeries {
    fn from_coeffs(case: CkCase, x: BlockId, param: Param, coeffs: Vec<E>) -> CKSeries {
        let terms: Vec<(usize, E)> = coeffs.into_iter().enumerate().filter(|(_, f)| !f.is_zero()).collect();
        let truncation = terms.last().map(|(j, _)| j + 1).unwrap_or(0);
        CKSeries { case, block: x, param, terms, truncation }
    }

    pub fn coeff(&self, j: usize) -> Option<&E> {
        self.terms.iter().find(|(i, _)| *i == j).map(|(_, f)| f)
    }

    /// The element sum_j x^j F_j.
    pub fn materialize(&self, sig: &Sig) -> E {
        let x = E::supervector(sig, self.block);
        let mut out = E::zero(sig);
        let mut xp = E::one(sig);
        let mut at = 0;
        for (j, f) in &self.terms {
            while at < *j {
                xp = &xp * &x;
                at += 1;
            }
            out = out + &xp * f;
        }
        out
    }

    pub fn to_json(&self, sig: &Sig) -> CKSeriesJson {
        CKSeriesJson {
            case: self.case,
            block: sig.block(self.block).name.clone(),
            terms: self.terms.iter().map(|(j, f)| CKTermJson { j: *j, element: render(f) }).collect(),
        }
    }
}

pub(crate) fn check_param(sig: &Sig, x: BlockId, param: Param, f0: &E) -> Result<()> {
    if let Param::Block(y) = param {
        if y == x {
            return Err(Error::Domain("the parameter block must differ from x".into()));
        }
        if sig.frame_of(y) == sig.frame_of(x) {
            return Err(Error::Domain("x and y must use disjoint Clifford generators".into()));
        }
    }
    if f0.has_radial() {
        return Err(Error::NonPolynomial(sig.block(x).name.clone()));
    }
    if f0.terms().keys().any(|m| f0.mono_block_degree(m, x) > 0) {
        return Err(Error::Domain("initial data must not depend on x".into()));
    }
    Ok(())
}

fn pivot_k(sig: &Sig, x: BlockId) -> usize {
    (-sig.block(x).super_dim() / 2) as usize
}

/// Builds the CK-extension by the first-order recurrence c(M, j+1) F_{j+1} = s_j D F_j.
pub fn ck_extend(f0: &E, x: BlockId, param: Param, f2k1: Option<&E>) -> Result<CKSeries> {
    let sig = f0.sig().clone();
    check_param(&sig, x, param, f0)?;
    let case = CkCase::of(&sig, x);
    let msup = sig.block(x).super_dim();
    if f2k1.is_some() && case != CkCase::II {
        return Err(Error::Domain(format!(
            "a second initial function only applies in case ii, not case {}",
            case.label()
        )));
    }
    let step = |j: usize, fj: &E| -> E {
        let c = c_coeff(msup, j as i64 + 1);
        param.d(fj).scale_rational(&BigRational::new(param.step_sign(j).into(), c.into()))
    };
    let mut coeffs = vec![f0.clone()];
    match case {
        CkCase::I => loop {
            let j = coeffs.len() - 1;
            let next = step(j, &coeffs[j]);
            if next.is_zero() {
                break;
            }
            if coeffs.len() > MAX_TERMS {
                return Err(Error::Unsupported("CK series does not terminate".into()));
            }
            coeffs.push(next);
        },
        CkCase::II | CkCase::III => {
            let k = pivot_k(&sig, x);
            for j in 0..2 * k {
                let next = step(j, &coeffs[j]);
                coeffs.push(next);
            }
            if !param.d(&coeffs[2 * k]).is_zero() {
                return Err(Error::Constraint(format!(
                    "the {}-th derivative of F0 in the parameter does not vanish",
                    2 * k + 1
                )));
            }
            if case == CkCase::II {
                let tail = f2k1.cloned().unwrap_or_else(|| E::zero(&sig));
                check_param(&sig, x, param, &tail)?;
                coeffs.push(tail);
                loop {
                    let j = coeffs.len() - 1;
                    let next = step(j, &coeffs[j]);
                    if next.is_zero() {
                        break;
                    }
                    if coeffs.len() > MAX_TERMS {
                        return Err(Error::Unsupported("CK series does not terminate".into()));
                    }
                    coeffs.push(next);
                }
            }
        }
    }
    Ok(CKSeries::from_coeffs(case, x, param, coeffs))
}

fn pow2(e: usize) -> BigRational {
    BigRational::from_integer(num_bigint::BigInt::from(2).pow(e as u32))
}

/// Repeated Laplacians L^j g for j = 0, 1, ... until zero.
fn lap_powers(param: Param, g: &E) -> Vec<E> {
    let mut v = Vec::new();
    let mut cur = g.clone();
    while !cur.is_zero() && v.len() <= MAX_TERMS {
        let next = param.lap(&cur);
        v.push(cur);
        cur = next;
    }
    v
}

/// Coefficients F_j from the explicit Gamma-ratio formulas, using even powers of the
/// parameter operator written as Laplacians (D^(2j) = (-1)^j Delta^j for y).
pub fn ck_closed_form(f0: &E, x: BlockId, param: Param, f2k1: Option<&E>) -> Result<CKSeries> {
    let sig = f0.sig().clone();
    check_param(&sig, x, param, f0)?;
    let case = CkCase::of(&sig, x);
    let msup = sig.block(x).super_dim();
    if f2k1.is_some() && case != CkCase::II {
        return Err(Error::Domain(format!(
            "a second initial function only applies in case ii, not case {}",
            case.label()
        )));
    }
    let is_y = matches!(param, Param::Block(_));
    let mut coeffs: Vec<E> = Vec::new();
    let mut put = |idx: usize, v: E| {
        if coeffs.len() <= idx {
            coeffs.resize(idx + 1, E::zero(&sig));
        }
        coeffs[idx] = v;
    };
    // For y the formulas are stated with D^(2j) = (-1)^j Delta^j, which absorbs the
    // alternating signs below.
    match case {
        CkCase::I => {
            // F_2j = G(M/2)/(4^j j! G(M/2+j)) L^j F0
            // F_2j+1 = -/+ G(M/2)/(2^(2j+1) j! G(M/2+j+1)) D L^j F0  (- for y, + for x0)
            let g = gamma_half(msup).expect("M/2 is not a pole in case i");
            let odd_sign = if is_y { -1 } else { 1 };
            for (j, lj) in lap_powers(param, f0).iter().enumerate() {
                let jf = factorial_q(j as u64);
                let ce = (&g * gamma_recip_half(msup + 2 * j as i64)).mul_rational(&(pow2(2 * j) * &jf).recip());
                put(2 * j, lj.scale(&ce));
                let co =
                    (&g * gamma_recip_half(msup + 2 * j as i64 + 2)).mul_rational(&(pow2(2 * j + 1) * &jf).recip());
                put(2 * j + 1, param.d(lj).scale(&co.mul_int(odd_sign)));
            }
        }
        CkCase::II | CkCase::III => {
            let k = pivot_k(&sig, x);
            let kf = factorial_q(k as u64);
            let lp = lap_powers(param, f0);
            let l_at = |j: usize| lp.get(j).cloned().unwrap_or_else(|| E::zero(&sig));
            if !param.d(&l_at(k)).is_zero() {
                return Err(Error::Constraint(format!(
                    "the {}-th derivative of F0 in the parameter does not vanish",
                    2 * k + 1
                )));
            }
            for j in 0..=k {
                let jf = factorial_q(j as u64);
                // F_2j = (-1)^j (k-j)!/(4^j j! k!) L^j F0
                let mut ce = factorial_q((k - j) as u64) / (pow2(2 * j) * &jf * &kf);
                if j % 2 == 1 {
                    ce = -ce;
                }
                put(2 * j, l_at(j).scale_rational(&ce));
                if j < k {
                    // F_2j+1 = (-1)^j (k-j-1)!/(2^(2j+1) j! k!) D L^j F0 for y, opposite sign for x0
                    let mut co = factorial_q((k - j - 1) as u64) / (pow2(2 * j + 1) * &jf * &kf);
                    if (j % 2 == 1) == is_y {
                        co = -co;
                    }
                    put(2 * j + 1, param.d(&l_at(j)).scale_rational(&co));
                }
            }
            if case == CkCase::II {
                let tail = f2k1.cloned().unwrap_or_else(|| E::zero(&sig));
                check_param(&sig, x, param, &tail)?;
                for (j, lj) in lap_powers(param, &tail).iter().enumerate() {
                    let jf = factorial_q(j as u64);
                    // F_2k+2j+1 = k!/(4^j j! (k+j)!) L^j F_2k+1
                    let ce = &kf / (pow2(2 * j) * &jf * factorial_q((k + j) as u64));
                    put(2 * k + 2 * j + 1, lj.scale_rational(&ce));
                    // F_2k+2j+2 = k!/(2^(2j+1) j! (k+j+1)!) D L^j F_2k+1
                    let co = &kf / (pow2(2 * j + 1) * &jf * factorial_q((k + j + 1) as u64));
                    put(2 * k + 2 * j + 2, param.d(lj).scale_rational(&co));
                }
            }
        }
    }
    Ok(CKSeries::from_coeffs(case, x, param, coeffs))
}

/// The extension evaluated as a closed operator series
/// (Bessel-type in case i and in the F_{2k+1} tail, Appell-type otherwise).
pub fn ck_operator_form(f0: &E, x: BlockId, param: Param, f2k1: Option<&E>) -> Result<E> {
    let sig = f0.sig().clone();
    check_param(&sig, x, param, f0)?;
    let case = CkCase::of(&sig, x);
    let msup = sig.block(x).super_dim();
    let xv = E::supervector(&sig, x);
    let is_y = matches!(param, Param::Block(_));
    // |x|^2; for m = 0 it is -x̄`^2
    let norm2 = match case {
        CkCase::III => {
            let xf = E::supervector_fermionic(&sig, x);
            -(&xf * &xf)
        }
        _ => E::norm_squared(&sig, x),
    };
    let quarter = BigRational::new(1.into(), 4.into());
    let mut out = E::zero(&sig);
    match case {
        CkCase::I => {
            // G(M/2) sum (-1)^j |x|^2j L^j F0 / (4^j j! G(M/2+j)) -/+ (x D/2) G(M/2) sum (-1)^j |x|^2j L^j F0 / (4^j j! G(M/2+j+1))
            // with L = Delta_y or d^2/dx0^2 and the sign - for y, + for x0.
            let g = gamma_half(msup).expect("case i");
            let mut odd = E::zero(&sig);
            let mut np = E::one(&sig);
            for (j, lj) in lap_powers(param, f0).iter().enumerate() {
                let mut c = factorial_q(j as u64).recip() * quarter.pow(j as i32);
                if j % 2 == 1 {
                    c = -c;
                }
                let a = (&g * gamma_recip_half(msup + 2 * j as i64)).mul_rational(&c);
                let b = (&g * gamma_recip_half(msup + 2 * j as i64 + 2)).mul_rational(&c);
                out = out + (&np * lj).scale(&a);
                odd = odd + (&np * &param.d(lj)).scale(&b);
                np = &np * &norm2;
            }
            let half = BigRational::new(if is_y { -1 } else { 1 }.into(), 2.into());
            out = out + (&xv * &odd).scale_rational(&half);
        }
        CkCase::II | CkCase::III => {
            let k = pivot_k(&sig, x);
            let kf = factorial_q(k as u64);
            let lp = lap_powers(param, f0);
            // (1/k!) (P_k(|x|^2 L/4) +/- (x D/2) P_{k-1}(|x|^2 L/4)) F0, + for y, - for x0
            let mut odd = E::zero(&sig);
            let mut np = E::one(&sig);
            for j in 0..=k {
                let Some(lj) = lp.get(j) else { break };
                let c = factorial_q((k - j) as u64) / factorial_q(j as u64) * quarter.pow(j as i32) / &kf;
                out = out + (&np * lj).scale_rational(&c);
                if j < k {
                    let c = factorial_q((k - 1 - j) as u64) / factorial_q(j as u64) * quarter.pow(j as i32) / &kf;
                    odd = odd + (&np * &param.d(lj)).scale_rational(&c);
                }
                np = &np * &norm2;
            }
            let half = BigRational::new(if is_y { 1 } else { -1 }.into(), 2.into());
            out = out + (&xv * &odd).scale_rational(&half);
            if case == CkCase::II {
                if let Some(tail) = f2k1 {
                    // k! x^(2k+1) (sum (-1)^j |x|^2j L^j F/(4^j j! (k+j)!) + (x D/2) sum (-1)^j |x|^2j L^j F/(4^j j! (k+j+1)!))
                    let mut inner = E::zero(&sig);
                    let mut odd = E::zero(&sig);
                    let mut np = E::one(&sig);
                    for (j, lj) in lap_powers(param, tail).iter().enumerate() {
                        let mut c = factorial_q(j as u64).recip() * quarter.pow(j as i32);
                        if j % 2 == 1 {
                            c = -c;
                        }
                        inner = inner + (&np * lj).scale_rational(&(&c / factorial_q((k + j) as u64)));
                        odd = odd + (&np * &param.d(lj)).scale_rational(&(&c / factorial_q((k + j + 1) as u64)));
                        np = &np * &norm2;
                    }
                    let half = BigRational::new(1.into(), 2.into());
                    let body = inner + (&xv * &odd).scale_rational(&half);
                    out = out + (xv.pow(2 * k as u32 + 1) * body).scale_rational(&kf);
                }
            } else if f2k1.is_some() {
                return Err(Error::Domain("a second initial function only applies in case ii".into()));
            }
        }
    }
    Ok(out)
}

/// Outcome of a monogenicity check.
#[derive(Clone, Debug, PartialEq)]
pub struct MonogenicReport {
    pub residual: E,
    /// Lowest x-degree among the residual's terms.
    pub lowest_failing_degree: Option<usize>,
}

impl MonogenicReport {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Applies d_x + d_y (or d_x - d_x0) to an element.
pub fn monogenic_residual(f: &E, x: BlockId, param: Param) -> MonogenicReport {
    let residual = match param {
        Param::Block(y) => dirac(f, x) + dirac(f, y),
        Param::X0 => dirac(f, x) - partial_x0(f),
    };
    let lowest_failing_degree = residual.terms().keys().map(|m| residual.mono_block_degree(m, x)).min();
    MonogenicReport { residual, lowest_failing_degree }
}

/// Materializes the series and checks monogenicity.
pub fn verify_monogenic(series: &CKSeries, sig: &Sig) -> MonogenicReport {
    monogenic_residual(&series.materialize(sig), series.block, series.param)
}

/// F(0, y): the part of the element of x-degree zero.
pub fn restrict_to_origin(f: &E, x: BlockId) -> Result<E> {
    f.restrict_block_zero(x)
}

/// Scalar helper: the CK coefficient product prod_{i=1}^{j} c(M, i).
pub fn c_product(m_super: i64, j: usize) -> Scalar {
    let mut acc = Scalar::one();
    for i in 1..=j {
        acc = acc.mul_int(c_coeff(m_super, i as i64));
    }
    acc
}
