//! Exact special values: factorials, binomials, Gamma at integers and half-integers.

use super::{SKey, Scalar};
use crate::scalar::RatFunc;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

pub fn factorial_q(n: u64) -> BigRational {
    BigRational::from_integer(factorial(n))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Rising factorial (a)_j = a(a+1)...(a+j-1).
pub fn rising(a: &BigRational, j: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut t = a.clone();
    for _ in 0..j {
        acc *= &t;
        t += BigRational::one();
    }
    acc
}

/// Falling factorial a(a-1)...(a-j+1).
pub fn falling(a: &BigRational, j: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut t = a.clone();
    for _ in 0..j {
        acc *= &t;
        t -= BigRational::one();
    }
    acc
}

/// Generalized binomial coefficient binom(a, j) for rational a.
pub fn binom_q(a: &BigRational, j: u64) -> BigRational {
    falling(a, j) / factorial_q(j)
}

/// Gamma(two_a / 2) as coefficient * sqrt(pi)^power, or None at a pole.
pub fn gamma_half_parts(two_a: i64) -> Option<(BigRational, i32)> {
    if two_a % 2 == 0 {
        let a = two_a / 2;
        if a <= 0 {
            return None;
        }
        return Some((factorial_q((a - 1) as u64), 0));
    }
    let n = (two_a - 1).div_euclid(2);
    if n >= 0 {
        let n = n as u64;
        let four_n = BigInt::from(4).pow(n as u32);
        Some((BigRational::new(factorial(2 * n), four_n * factorial(n)), 1))
    } else {
        let p = (-n) as u64;
        let mut c = BigRational::new(BigInt::from(4).pow(p as u32) * factorial(p), factorial(2 * p));
        if p % 2 == 1 {
            c = -c;
        }
        Some((c, 1))
    }
}

/// Gamma(two_a / 2) as a scalar, or None at a pole.
pub fn gamma_half(two_a: i64) -> Option<Scalar> {
    gamma_half_parts(two_a).map(|(c, s)| Scalar::term(SKey { sqrt_pi: s, log: 0 }, RatFunc::from_rational(&c)))
}

/// 1 / Gamma(two_a / 2), which is zero at the poles.
pub fn gamma_recip_half(two_a: i64) -> Scalar {
    match gamma_half_parts(two_a) {
        None => Scalar::zero(),
        Some((c, s)) => Scalar::term(SKey { sqrt_pi: -s, log: 0 }, RatFunc::from_rational(&c.recip())),
    }
}

/// Gamma(a) for integer a, None at poles.
pub fn gamma_int(a: i64) -> Option<Scalar> {
    gamma_half(2 * a)
}

/// Surface area sigma_M = 2 pi^(M/2) / Gamma(M/2); zero for M in -2N.
pub fn sigma(m_super: i64) -> Scalar {
    Scalar::sqrt_pi_pow(m_super as i32).mul_int(2) * gamma_recip_half(m_super)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gamma_half_integers() {
        assert_eq!(gamma_half(1), Some(Scalar::sqrt_pi_pow(1)));
        assert_eq!(gamma_half(7), Some(Scalar::sqrt_pi_pow(1).mul_rational(&q(15, 8))));
        assert_eq!(gamma_half(-1), Some(Scalar::sqrt_pi_pow(1).mul_int(-2)));
        assert_eq!(gamma_half(-3), Some(Scalar::sqrt_pi_pow(1).mul_rational(&q(4, 3))));
        assert_eq!(gamma_half(8), Some(Scalar::from_int(6)));
    }

    #[test]
    fn reciprocal_gamma_vanishes_at_poles() {
        for two_a in [0, -2, -4, -10] {
            assert!(gamma_half(two_a).is_none());
            assert!(gamma_recip_half(two_a).is_zero());
        }
    }

    #[test]
    fn functional_equation_holds_on_half_line() {
        for two_a in -9..12i64 {
            if let (Some(g), Some(g1)) = (gamma_half(two_a), gamma_half(two_a + 2)) {
                assert_eq!(g1, g.mul_rational(&q(two_a, 2)));
            }
        }
    }

    #[test]
    fn sphere_areas() {
        assert_eq!(sigma(2), Scalar::pi_pow(1).mul_int(2));
        assert_eq!(sigma(3), Scalar::pi_pow(1).mul_int(4));
        assert_eq!(sigma(1), Scalar::from_int(2));
        assert!(sigma(-2).is_zero());
        assert!(sigma(0).is_zero());
    }
}
