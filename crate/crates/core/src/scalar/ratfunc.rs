use super::poly::{gcd, Poly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A reduced quotient of integer polynomials in x0.
///
/// Canonical form: numerator and denominator coprime in Z[x0] (content included)
/// and the denominator has a positive leading coefficient. Zero is 0/1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        RatFunc { num: Poly::constant(r.numer().clone()), den: Poly::constant(r.denom().clone()) }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    /// c * x0^k for any integer k.
    pub fn x0_power(c: &BigRational, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let (n, d) = (c.numer().clone(), c.denom().clone());
        if k >= 0 {
            Self::new(Poly::monomial(n, k as usize), Poly::constant(d))
        } else {
            Self::new(Poly::constant(n), Poly::monomial(d, (-k) as usize))
        }
    }

    /// Builds and reduces num/den. Panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFunc { num, den };
        r.normalize();
        r
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        if let Some(k) = self.den.monomial_degree() {
            let v = self.num.valuation().unwrap();
            let s = v.min(k);
            if s > 0 {
                self.num = self.num.shift_down(s);
                self.den = self.den.shift_down(s);
            }
        } else if self.den.degree() != Some(0) {
            let g = gcd(&self.num, &self.den);
            if g.degree().unwrap_or(0) > 0 {
                self.num = self.num.div_exact(&g);
                self.den = self.den.div_exact(&g);
            }
        }
        let mut c = self.num.content().gcd(&self.den.content());
        if self.den.lead().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            self.num = self.num.div_exact_scalar(&c);
            self.den = self.den.div_exact_scalar(&c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as a rational number, if it does not depend on x0.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_zero() {
            return Some(BigRational::zero());
        }
        if self.num.degree() == Some(0) && self.den.degree() == Some(0) {
            Some(BigRational::new(self.num.0[0].clone(), self.den.0[0].clone()))
        } else {
            None
        }
    }

    /// If the value is c * x0^k returns (c, k).
    pub fn as_x0_monomial(&self) -> Option<(BigRational, i64)> {
        let kn = self.num.monomial_degree()?;
        let kd = self.den.monomial_degree()?;
        let c = BigRational::new(self.num.0[kn].clone(), self.den.0[kd].clone());
        Some((c, kn as i64 - kd as i64))
    }

    /// Splits a Laurent polynomial (monomial denominator) into its terms c * x0^k.
    pub fn laurent_terms(&self) -> Option<Vec<(BigRational, i64)>> {
        let kd = self.den.monomial_degree()?;
        let d = &self.den.0[kd];
        Some(
            self.num
                .0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (BigRational::new(c.clone(), d.clone()), i as i64 - kd as i64))
                .collect(),
        )
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() && (self.num.degree() == Some(0) || o.num.degree() == Some(0)) {
            return RatFunc { num: self.num.mul(&o.num), den: Poly::one() };
        }
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn mul_rational(&self, r: &BigRational) -> RatFunc {
        if r.is_zero() || self.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(self.num.scale(r.numer()), self.den.scale(r.denom()))
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.den.clone(), self.num.clone()))
    }

    /// d/dx0
    pub fn derivative(&self) -> RatFunc {
        if self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0) {
            return RatFunc::zero();
        }
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        RatFunc::new(n, self.den.mul(&self.den))
    }

    pub fn x0_times(&self) -> RatFunc {
        self.mul(&RatFunc::x0_power(&BigRational::one(), 1))
    }

    pub fn scale_int(&self, c: &BigInt) -> RatFunc {
        self.mul_rational(&BigRational::from_integer(c.clone()))
    }
}
