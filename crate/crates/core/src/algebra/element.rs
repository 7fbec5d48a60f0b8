use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::mono::{mono_mul, Mono};
use super::radial;
use super::signature::{BlockId, Sig};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Finite sum of Scalar * Mono over a signature.
#[derive(Clone, Debug)]
pub struct SuperElement {
    sig: Sig,
    terms: BTreeMap<Mono, Scalar>,
}

impl PartialEq for SuperElement {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.sig, &o.sig) || *self.sig == *o.sig) && self.terms == o.terms
    }
}

impl Eq for SuperElement {}

impl SuperElement {
    pub fn zero(sig: &Sig) -> Self {
        SuperElement { sig: sig.clone(), terms: BTreeMap::new() }
    }

    pub fn one(sig: &Sig) -> Self {
        Self::from_scalar(sig, Scalar::one())
    }

    pub fn from_scalar(sig: &Sig, s: Scalar) -> Self {
        Self::from_mono(sig, Self::unit_mono(sig), s)
    }

    pub fn from_int(sig: &Sig, n: i64) -> Self {
        Self::from_scalar(sig, Scalar::from_int(n))
    }

    pub fn from_mono(sig: &Sig, m: Mono, s: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(m, s);
        }
        let mut e = SuperElement { sig: sig.clone(), terms };
        e.normalize();
        e
    }

    /// Builds from (monomial, coefficient) pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Scalar)>>(sig: &Sig, it: I) -> Self {
        let mut terms: BTreeMap<Mono, Scalar> = BTreeMap::new();
        for (m, s) in it {
            accumulate(&mut terms, m, &s);
        }
        let mut e = SuperElement { sig: sig.clone(), terms };
        e.normalize();
        e
    }

    pub(crate) fn from_raw(sig: &Sig, terms: BTreeMap<Mono, Scalar>) -> Self {
        let mut e = SuperElement { sig: sig.clone(), terms };
        e.normalize();
        e
    }

    pub fn unit_mono(sig: &Sig) -> Mono {
        Mono::one(sig.n_bos(), sig.n_pairs())
    }

    pub fn sig(&self) -> &Sig {
        &self.sig
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Mono, Scalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Bosonic variable by global index.
    pub fn bos_var(sig: &Sig, v: usize) -> Self {
        let mut m = Self::unit_mono(sig);
        m.bos[v] = 1;
        Self::from_mono(sig, m, Scalar::one())
    }

    /// Fermionic variable by global index.
    pub fn ferm_var(sig: &Sig, v: usize) -> Self {
        let mut m = Self::unit_mono(sig);
        m.grass = 1 << v;
        Self::from_mono(sig, m, Scalar::one())
    }

    /// x_i of a block, 1-based.
    pub fn var(sig: &Sig, block: BlockId, i: usize) -> Self {
        let b = sig.block(block);
        assert!(i >= 1 && i <= b.m, "bosonic index out of range");
        Self::bos_var(sig, b.bos_offset + i - 1)
    }

    /// x`_i of a block, 1-based.
    pub fn fvar(sig: &Sig, block: BlockId, i: usize) -> Self {
        let b = sig.block(block);
        assert!(i >= 1 && i <= 2 * b.n, "fermionic index out of range");
        Self::ferm_var(sig, b.ferm_offset + i - 1)
    }

    /// Orthogonal generator e_i, 1-based global index.
    pub fn gen_orth(sig: &Sig, i: usize) -> Self {
        assert!(i >= 1 && i <= sig.n_orth());
        let mut m = Self::unit_mono(sig);
        m.orth = 1 << (i - 1);
        Self::from_mono(sig, m, Scalar::one())
    }

    /// Symplectic generator e`_j, 1-based global index.
    pub fn gen_symp(sig: &Sig, j: usize) -> Self {
        assert!(j >= 1 && j <= 2 * sig.n_pairs());
        let mut m = Self::unit_mono(sig);
        let pair = (j - 1) / 2;
        if j.is_multiple_of(2) {
            m.weyl[pair].0 = 1;
        } else {
            m.weyl[pair].1 = 1;
        }
        Self::from_mono(sig, m, Scalar::one())
    }

    /// e_j of the frame of `block`, 1-based within the frame.
    pub fn frame_orth(sig: &Sig, block: BlockId, j: usize) -> Self {
        Self::gen_orth(sig, sig.frame_of(block).orth_offset + j)
    }

    /// e`_j of the frame of `block`, 1-based within the frame.
    pub fn frame_symp(sig: &Sig, block: BlockId, j: usize) -> Self {
        Self::gen_symp(sig, 2 * sig.frame_of(block).pair_offset + j)
    }

    pub fn x0(sig: &Sig) -> Self {
        Self::from_scalar(sig, Scalar::x0())
    }

    /// R^alpha for the signature's radial base.
    pub fn radial_power(sig: &Sig, alpha: i32) -> Result<Self> {
        if sig.radial().is_none() {
            return Err(Error::Unsupported("signature has no radial base".into()));
        }
        let mut m = Self::unit_mono(sig);
        m.radial = alpha;
        Ok(Self::from_mono(sig, m, Scalar::one()))
    }

    /// Bosonic part sum_j x_j e_j.
    pub fn supervector_bosonic(sig: &Sig, block: BlockId) -> Self {
        let b = sig.block(block).clone();
        let mut acc = Self::zero(sig);
        for j in 1..=b.m {
            acc = acc + Self::var(sig, block, j) * Self::frame_orth(sig, block, j);
        }
        acc
    }

    /// Fermionic part sum_j x`_j e`_j.
    pub fn supervector_fermionic(sig: &Sig, block: BlockId) -> Self {
        let b = sig.block(block).clone();
        let mut acc = Self::zero(sig);
        for j in 1..=2 * b.n {
            acc = acc + Self::fvar(sig, block, j) * Self::frame_symp(sig, block, j);
        }
        acc
    }

    pub fn supervector(sig: &Sig, block: BlockId) -> Self {
        Self::supervector_bosonic(sig, block) + Self::supervector_fermionic(sig, block)
    }

    /// <a, b> = sum a_j b_j - 1/2 sum (a`_{2j-1} b`_{2j} - a`_{2j} b`_{2j-1}).
    pub fn inner_product(sig: &Sig, a: BlockId, b: BlockId) -> Result<Self> {
        let (ba, bb) = (sig.block(a), sig.block(b));
        if ba.m != bb.m || ba.n != bb.n {
            return Err(Error::Domain(format!("blocks {} and {} have different dimensions", ba.name, bb.name)));
        }
        let (m, n) = (ba.m, ba.n);
        let mut acc = Self::zero(sig);
        for j in 1..=m {
            acc = acc + Self::var(sig, a, j) * Self::var(sig, b, j);
        }
        let half = Scalar::rational(-1, 2);
        for j in 1..=n {
            let t = Self::fvar(sig, a, 2 * j - 1) * Self::fvar(sig, b, 2 * j)
                - Self::fvar(sig, a, 2 * j) * Self::fvar(sig, b, 2 * j - 1);
            acc = acc + t.scale(&half);
        }
        Ok(acc)
    }

    /// |x|^2 = sum x_j^2 - sum x`_{2j-1} x`_{2j}.
    pub fn norm_squared(sig: &Sig, block: BlockId) -> Self {
        Self::inner_product(sig, block, block).expect("same block")
    }

    /// |x̄|^2, the bosonic part of the norm.
    pub fn norm_squared_bosonic(sig: &Sig, block: BlockId) -> Self {
        let m = sig.block(block).m;
        let mut acc = Self::zero(sig);
        for j in 1..=m {
            let v = Self::var(sig, block, j);
            acc = acc + &v * &v;
        }
        acc
    }

    fn check_sig(&self, o: &Self) {
        assert!(Arc::ptr_eq(&self.sig, &o.sig) || *self.sig == *o.sig, "elements belong to different signatures");
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(&self.sig);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * s)).filter(|(_, c)| !c.is_zero()).collect();
        SuperElement { sig: self.sig.clone(), terms }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero(&self.sig);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.mul_rational(r))).collect();
        SuperElement { sig: self.sig.clone(), terms }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale_rational(&BigRational::from_integer(n.into()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.sig);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `f` to every coefficient.
    pub fn map_scalars<F: Fn(&Scalar) -> Scalar>(&self, f: F) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        Self::from_raw(&self.sig, terms)
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter<F: Fn(&Mono) -> bool>(&self, keep: F) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect();
        SuperElement { sig: self.sig.clone(), terms }
    }

    pub fn has_radial(&self) -> bool {
        self.terms.keys().any(|m| m.radial != 0)
    }

    /// Total degree of a monomial in the variables of `block`.
    pub fn mono_block_degree(&self, m: &Mono, block: BlockId) -> usize {
        let b = self.sig.block(block);
        let bos: usize = m.bos[b.bos_range()].iter().map(|&e| e as usize).sum();
        bos + (m.grass & b.ferm_mask()).count_ones() as usize
    }

    pub fn block_degree(&self, block: BlockId) -> usize {
        self.terms.keys().map(|m| self.mono_block_degree(m, block)).max().unwrap_or(0)
    }

    /// Component of exact degree `d` in `block`.
    pub fn block_component(&self, block: BlockId, d: usize) -> Self {
        let b = self.sig.block(block).clone();
        self.filter(|m| {
            let bos: usize = m.bos[b.bos_range()].iter().map(|&e| e as usize).sum();
            bos + (m.grass & b.ferm_mask()).count_ones() as usize == d
        })
    }

    /// Terms of degree at most `d` in `block`.
    pub fn truncate_block(&self, block: BlockId, d: usize) -> Self {
        let b = self.sig.block(block).clone();
        self.filter(|m| {
            let bos: usize = m.bos[b.bos_range()].iter().map(|&e| e as usize).sum();
            bos + (m.grass & b.ferm_mask()).count_ones() as usize <= d
        })
    }

    /// Sets every variable of `block` to zero.
    pub fn restrict_block_zero(&self, block: BlockId) -> Result<Self> {
        if self.has_radial() {
            return Err(Error::NonPolynomial(self.sig.block(block).name.clone()));
        }
        Ok(self.block_component(block, 0))
    }

    pub fn is_polynomial(&self) -> bool {
        !self.has_radial()
    }

    /// True if no term carries a Clifford generator.
    pub fn is_clifford_scalar(&self) -> bool {
        self.terms.keys().all(|m| m.is_clifford_scalar())
    }

    /// The constant coefficient if the element is a pure scalar.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (*m == Self::unit_mono(&self.sig)).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Re-expresses the element over another signature with identical variable layout
    /// but a different radial base.
    pub fn with_sig(&self, sig: &Sig) -> Self {
        assert_eq!(sig.n_bos(), self.sig.n_bos());
        assert_eq!(sig.n_pairs(), self.sig.n_pairs());
        Self::from_raw(sig, self.terms.clone())
    }

    pub(crate) fn normalize(&mut self) {
        if self.has_radial() {
            radial::canonicalize(&self.sig, &mut self.terms);
        }
    }

    pub(crate) fn mul_raw(&self, o: &Self) -> BTreeMap<Mono, Scalar> {
        let mut out: BTreeMap<Mono, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let prods = mono_mul(ma, mb);
                if prods.is_empty() {
                    continue;
                }
                let c = ca * cb;
                for (m, k) in prods {
                    let v = if k.is_one() {
                        c.clone()
                    } else if k == -BigInt::one() {
                        -&c
                    } else {
                        c.mul_rational(&BigRational::from_integer(k))
                    };
                    accumulate(&mut out, m, &v);
                }
            }
        }
        out
    }
}

/// Adds `v` to the coefficient of `m`, dropping the entry if it cancels.
pub fn accumulate(map: &mut BTreeMap<Mono, Scalar>, m: Mono, v: &Scalar) {
    if v.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + v;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl Add<&SuperElement> for &SuperElement {
    type Output = SuperElement;
    fn add(self, o: &SuperElement) -> SuperElement {
        self.check_sig(o);
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            accumulate(&mut terms, m.clone(), c);
        }
        SuperElement::from_raw(&self.sig, terms)
    }
}

impl Neg for &SuperElement {
    type Output = SuperElement;
    fn neg(self) -> SuperElement {
        SuperElement { sig: self.sig.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub<&SuperElement> for &SuperElement {
    type Output = SuperElement;
    fn sub(self, o: &SuperElement) -> SuperElement {
        self + &(-o)
    }
}

impl Mul<&SuperElement> for &SuperElement {
    type Output = SuperElement;
    fn mul(self, o: &SuperElement) -> SuperElement {
        self.check_sig(o);
        SuperElement::from_raw(&self.sig, self.mul_raw(o))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<SuperElement> for SuperElement {
            type Output = SuperElement;
            fn $m(self, o: SuperElement) -> SuperElement {
                (&self).$m(&o)
            }
        }
        impl $tr<&SuperElement> for SuperElement {
            type Output = SuperElement;
            fn $m(self, o: &SuperElement) -> SuperElement {
                (&self).$m(o)
            }
        }
        impl $tr<SuperElement> for &SuperElement {
            type Output = SuperElement;
            fn $m(self, o: SuperElement) -> SuperElement {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SuperElement {
    type Output = SuperElement;
    fn neg(self) -> SuperElement {
        -&self
    }
}

impl fmt::Display for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::render(self))
    }
}
