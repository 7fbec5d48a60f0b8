//! Dense univariate polynomials in x0 with integer coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending order, no trailing zeros. The zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(pub Vec<BigInt>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }

    pub fn one() -> Self {
        Poly(vec![BigInt::one()])
    }

    /// c * x0^k
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Poly(v)
    }

    pub fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.0.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    /// If the polynomial is c*x0^k, returns k.
    pub fn monomial_degree(&self) -> Option<usize> {
        let v = self.valuation()?;
        if v + 1 == self.0.len() {
            Some(v)
        } else {
            None
        }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn shift_down(&self, s: usize) -> Poly {
        Poly(self.0[s..].to_vec())
    }

    pub fn shift_up(&self, s: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); s];
        v.extend(self.0.iter().cloned());
        Poly(v)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|a| a * c).collect())
    }

    pub fn div_exact_scalar(&self, c: &BigInt) -> Poly {
        Poly(self.0.iter().map(|a| a / c).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|a| -a).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let (long, short) = if self.0.len() >= o.0.len() { (self, o) } else { (o, self) };
        let mut v = long.0.clone();
        for (i, c) in short.0.iter().enumerate() {
            v[i] += c;
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        let mut p = Poly(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect());
        p.trim();
        p
    }

    /// Exact division in Z[x0]; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = divmod_q(&to_q(self), &to_q(d));
        assert!(r.is_empty(), "inexact polynomial division");
        let q: Vec<BigInt> = q
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integral quotient");
                c.to_integer()
            })
            .collect();
        let mut p = Poly(q);
        p.trim();
        p
    }

    pub fn to_rational_coeffs(&self) -> Vec<BigRational> {
        to_q(self)
    }
}

fn to_q(p: &Poly) -> Vec<BigRational> {
    p.0.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn trim_q(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn divmod_q(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim_q(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / lb;
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            r[k + i] -= t;
        }
        q[k] = c;
        r.pop();
        trim_q(&mut r);
    }
    (q, r)
}

/// Primitive greatest common divisor in Z[x0] with positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return primitive(b);
    }
    if b.is_zero() {
        return primitive(a);
    }
    let mut x = to_q(a);
    let mut y = to_q(b);
    while !y.is_empty() {
        let (_, r) = divmod_q(&x, &y);
        x = y;
        y = r;
    }
    // clear denominators
    let mut l = BigInt::one();
    for c in &x {
        l = l.lcm(c.denom());
    }
    let p = Poly(x.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect());
    primitive(&p)
}

pub fn primitive(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let mut c = p.content();
    if p.lead().unwrap().is_negative() {
        c = -c;
    }
    p.div_exact_scalar(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        let mut q = Poly(v.iter().map(|&c| BigInt::from(c)).collect());
        q.trim();
        q
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        // (x+1)(x+2) and (x+1)(x-3)
        let a = p(&[2, 3, 1]);
        let b = p(&[-3, -2, 1]);
        assert_eq!(gcd(&a, &b), p(&[1, 1]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[2, 3, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), p(&[2, 1]));
    }

    #[test]
    fn derivative_and_mul() {
        let a = p(&[1, 0, 3]);
        assert_eq!(a.derivative(), p(&[0, 6]));
        assert_eq!(a.mul(&p(&[0, 1])), p(&[0, 1, 0, 3]));
    }
}
