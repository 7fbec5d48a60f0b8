//! Exact scalars: rational functions of x0 extended by sqrt(pi) and L = ln x0.

mod poly;
mod ratfunc;
pub mod special;

pub use poly::Poly;
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use thiserror::Error;

/// Highest power of L a scalar may carry.
pub const LOG_POWER_BOUND: u32 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("power of L exceeds the bound {bound} (got {got})")]
    LogPowerBound { got: u32, bound: u32 },
    #[error("scalar is not invertible: {0}")]
    NotInvertible(String),
    #[error("unsupported scalar operation: {0}")]
    Unsupported(String),
}

/// Basis key sqrt(pi)^sqrt_pi * L^log.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SKey {
    pub sqrt_pi: i32,
    pub log: u32,
}

impl SKey {
    pub const ONE: SKey = SKey { sqrt_pi: 0, log: 0 };
}

/// Finite sum of RatFunc(x0) * sqrt(pi)^s * L^l, kept sorted by key with zero terms dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: Vec<(SKey, RatFunc)>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_ratfunc(RatFunc::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ratfunc(RatFunc::from_int(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(&BigRational::from_integer(n))
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_ratfunc(RatFunc::from_rational(r))
    }

    pub fn from_ratfunc(r: RatFunc) -> Self {
        Self::term(SKey::ONE, r)
    }

    pub fn term(k: SKey, r: RatFunc) -> Self {
        if r.is_zero() {
            Self::zero()
        } else {
            Scalar { terms: vec![(k, r)] }
        }
    }

    /// Checked constructor enforcing the log power bound.
    pub fn monomial(c: &BigRational, sqrt_pi: i32, log: u32, x0_pow: i64) -> Result<Self, ScalarError> {
        if log > LOG_POWER_BOUND {
            return Err(ScalarError::LogPowerBound { got: log, bound: LOG_POWER_BOUND });
        }
        Ok(Self::term(SKey { sqrt_pi, log }, RatFunc::x0_power(c, x0_pow)))
    }

    pub fn x0() -> Self {
        Self::x0_pow(1)
    }

    pub fn x0_pow(k: i64) -> Self {
        Self::from_ratfunc(RatFunc::x0_power(&BigRational::one(), k))
    }

    pub fn log_x0() -> Self {
        Self::term(SKey { sqrt_pi: 0, log: 1 }, RatFunc::one())
    }

    pub fn sqrt_pi_pow(k: i32) -> Self {
        Self::term(SKey { sqrt_pi: k, log: 0 }, RatFunc::one())
    }

    pub fn pi_pow(k: i32) -> Self {
        Self::sqrt_pi_pow(2 * k)
    }

    pub fn terms(&self) -> &[(SKey, RatFunc)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == SKey::ONE && self.terms[0].1.is_one()
    }

    /// The value as a plain rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(k, r)] if *k == SKey::ONE => r.as_rational(),
            _ => None,
        }
    }

    pub fn max_log_power(&self) -> u32 {
        self.terms.iter().map(|(k, _)| k.log).max().unwrap_or(0)
    }

    pub fn depends_on_x0(&self) -> bool {
        self.terms.iter().any(|(k, r)| k.log > 0 || r.as_rational().is_none())
    }

    fn from_sorted_merge(mut v: Vec<(SKey, RatFunc)>) -> Self {
        v.sort_by_key(|a| a.0);
        let mut out: Vec<(SKey, RatFunc)> = Vec::with_capacity(v.len());
        for (k, r) in v {
            match out.last_mut() {
                Some((lk, lr)) if *lk == k => *lr = lr.add(&r),
                _ => out.push((k, r)),
            }
        }
        out.retain(|(_, r)| !r.is_zero());
        Scalar { terms: out }
    }

    pub fn checked_mul(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        if self.is_zero() || o.is_zero() {
            return Ok(Scalar::zero());
        }
        if self.terms.len() == 1 && o.terms.len() == 1 {
            let (ka, ra) = &self.terms[0];
            let (kb, rb) = &o.terms[0];
            let k = SKey { sqrt_pi: ka.sqrt_pi + kb.sqrt_pi, log: ka.log + kb.log };
            if k.log > LOG_POWER_BOUND {
                return Err(ScalarError::LogPowerBound { got: k.log, bound: LOG_POWER_BOUND });
            }
            return Ok(Scalar::term(k, ra.mul(rb)));
        }
        let mut v = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ka, ra) in &self.terms {
            for (kb, rb) in &o.terms {
                let k = SKey { sqrt_pi: ka.sqrt_pi + kb.sqrt_pi, log: ka.log + kb.log };
                if k.log > LOG_POWER_BOUND {
                    return Err(ScalarError::LogPowerBound { got: k.log, bound: LOG_POWER_BOUND });
                }
                v.push((k, ra.mul(rb)));
            }
        }
        Ok(Self::from_sorted_merge(v))
    }

    pub fn mul_rational(&self, r: &BigRational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(k, f)| (*k, f.mul_rational(r))).collect() }
    }

    pub fn mul_int(&self, n: i64) -> Scalar {
        self.mul_rational(&BigRational::from_integer(n.into()))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a single-term scalar without L.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self.terms.as_slice() {
            [(k, r)] if k.log == 0 => {
                Ok(Scalar::term(SKey { sqrt_pi: -k.sqrt_pi, log: 0 }, r.inv().expect("nonzero term")))
            }
            _ => Err(ScalarError::NotInvertible(self.to_string())),
        }
    }

    /// d/dx0 with dL/dx0 = 1/x0.
    pub fn derivative_x0(&self) -> Scalar {
        let mut v = Vec::new();
        for (k, r) in &self.terms {
            let d = r.derivative();
            if !d.is_zero() {
                v.push((*k, d));
            }
            if k.log > 0 {
                let inv_x0 = RatFunc::x0_power(&BigRational::one(), -1);
                let c = r.mul(&inv_x0).scale_int(&BigInt::from(k.log));
                v.push((SKey { sqrt_pi: k.sqrt_pi, log: k.log - 1 }, c));
            }
        }
        Self::from_sorted_merge(v)
    }
}

impl Scalar {
    /// Antiderivative in x0 with zero constant of integration, for Laurent polynomials
    /// in x0 times powers of L. Uses the integral of x0^-1 being L.
    pub fn antiderivative_x0(&self) -> Result<Scalar, ScalarError> {
        let mut acc = Scalar::zero();
        for (k, r) in &self.terms {
            let parts =
                r.laurent_terms().ok_or_else(|| ScalarError::Unsupported(format!("antiderivative of {self}")))?;
            for (c, p) in parts {
                acc = acc + integrate_monomial(&c, k.sqrt_pi, k.log, p)?;
            }
        }
        Ok(acc)
    }
}

/// Integral of c x0^p L^l by parts.
fn integrate_monomial(c: &BigRational, sqrt_pi: i32, l: u32, p: i64) -> Result<Scalar, ScalarError> {
    if p == -1 {
        return Scalar::monomial(&(c / BigRational::from_integer((l + 1).into())), sqrt_pi, l + 1, 0);
    }
    let q = BigRational::from_integer((p + 1).into());
    let mut out = Scalar::monomial(&(c / &q), sqrt_pi, l, p + 1)?;
    if l > 0 {
        let inner = integrate_monomial(&(c * BigRational::from_integer(l.into()) / &q), sqrt_pi, l - 1, p)?;
        out = out - inner;
    }
    Ok(out)
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            if j == o.terms.len() || (i < self.terms.len() && self.terms[i].0 < o.terms[j].0) {
                out.push(self.terms[i].clone());
                i += 1;
            } else if i == self.terms.len() || o.terms[j].0 < self.terms[i].0 {
                out.push(o.terms[j].clone());
                j += 1;
            } else {
                let s = self.terms[i].1.add(&o.terms[j].1);
                if !s.is_zero() {
                    out.push((self.terms[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        Scalar { terms: out }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(k, r)| (*k, r.neg())).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics if the product exceeds the log power bound; use `checked_mul` to handle that case.
    fn mul(self, o: &Scalar) -> Scalar {
        self.checked_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(&r)
    }
}

fn fmt_poly(p: &Poly) -> String {
    let mut parts = Vec::new();
    for (i, c) in p.0.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mon = match i {
            0 => String::new(),
            1 => "x0".to_string(),
            _ => format!("x0^{i}"),
        };
        let s = if mon.is_empty() {
            c.to_string()
        } else if c.is_one() {
            mon
        } else if *c == BigInt::from(-1) {
            format!("-{mon}")
        } else {
            format!("{c}*{mon}")
        };
        parts.push(s);
    }
    let mut out = String::new();
    for (i, s) in parts.iter().enumerate() {
        if i > 0 && !s.starts_with('-') {
            out.push('+');
        }
        out.push_str(s);
    }
    out
}

/// Renders one rational function as a grammar-compatible factor.
pub(crate) fn fmt_ratfunc(r: &RatFunc) -> String {
    if let Some(q) = r.as_rational() {
        return q.to_string();
    }
    if r.den().degree() == Some(0) {
        // a constant denominator is folded into the coefficient
        let c = r.den().lead().expect("nonzero denominator").clone();
        return match (r.num().monomial_degree(), r.num().lead()) {
            (Some(k), Some(a)) => {
                let q = BigRational::new(a.clone(), c);
                let mon = if k == 1 { "x0".to_string() } else { format!("x0^{k}") };
                if q.is_one() {
                    mon
                } else if q == -BigRational::one() {
                    format!("-{mon}")
                } else {
                    format!("{q}*{mon}")
                }
            }
            _ => format!("{}*({})", BigRational::new(BigInt::one(), c), fmt_poly(r.num())),
        };
    }
    let n = fmt_poly(r.num());
    let num_single = r.num().monomial_degree().is_some();
    let n = if num_single { n } else { format!("({n})") };
    if r.den().is_one() {
        return n;
    }
    format!("{n}/({})", fmt_poly(r.den()))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", fmt_ratfunc(r))?;
            if k.sqrt_pi != 0 {
                write!(f, "*sqrtpi^{}", k.sqrt_pi)?;
            }
            if k.log != 0 {
                write!(f, "*L^{}", k.log)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antiderivative_inverts_derivative() {
        let f = Scalar::x0_pow(3).mul_int(2)
            + Scalar::x0_pow(-2)
            + Scalar::log_x0() * Scalar::x0_pow(2)
            + Scalar::x0_pow(-1)
            + Scalar::log_x0() * Scalar::x0_pow(-1)
            + Scalar::sqrt_pi_pow(1);
        assert_eq!(f.antiderivative_x0().unwrap().derivative_x0(), f);
        let over = Scalar::log_x0() * Scalar::log_x0() * Scalar::x0_pow(-1);
        assert!(over.antiderivative_x0().is_err());
    }

    #[test]
    fn log_derivative_is_reciprocal_x0() {
        assert_eq!(Scalar::log_x0().derivative_x0(), Scalar::x0_pow(-1));
        // d/dx0 (x0^2 L) = 2 x0 L + x0
        let f = Scalar::x0_pow(2) * Scalar::log_x0();
        let expect = Scalar::x0_pow(1) * Scalar::log_x0() * Scalar::from_int(2) + Scalar::x0();
        assert_eq!(f.derivative_x0(), expect);
    }

    #[test]
    fn log_bound_is_enforced() {
        let l2 = Scalar::log_x0() * Scalar::log_x0();
        assert!(l2.checked_mul(&Scalar::log_x0()).is_err());
        assert!(Scalar::monomial(&BigRational::one(), 0, 3, 0).is_err());
    }

    #[test]
    fn sqrt_pi_squared_is_pi() {
        assert_eq!(Scalar::sqrt_pi_pow(1) * Scalar::sqrt_pi_pow(1), Scalar::pi_pow(1));
        assert!((Scalar::pi_pow(2) * Scalar::pi_pow(-2)).is_one());
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = Scalar::sqrt_pi_pow(1) + Scalar::one();
        let b = &a - &Scalar::sqrt_pi_pow(1);
        assert!(b.is_one());
    }
}
