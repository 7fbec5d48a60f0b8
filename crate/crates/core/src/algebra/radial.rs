//! Canonical form for elements carrying powers of the radial factor R.
//!
//! Within each parity class of exponents all terms share one exponent t. Either
//! t equals the parity (0 or 1) and the polynomial part is arbitrary, or t is
//! smaller and the polynomial part is not divisible by the base R^2.

use std::collections::BTreeMap;

use super::element::accumulate;
use super::mono::Mono;
use super::signature::{RadialSpec, Sig};
use crate::scalar::Scalar;

/// Terms of R^2 as (monomial, coefficient) with zero radial exponent.
pub(crate) fn base_terms(sig: &Sig, spec: RadialSpec) -> Vec<(Mono, Scalar)> {
    let b = sig.block(spec.block);
    let unit = Mono::one(sig.n_bos(), sig.n_pairs());
    let mut out = Vec::new();
    for v in b.bos_range() {
        let mut m = unit.clone();
        m.bos[v] = 2;
        out.push((m, Scalar::one()));
    }
    if spec.with_x0 {
        out.push((unit, Scalar::x0_pow(2)));
    }
    out
}

fn times_base(p: &BTreeMap<Mono, Scalar>, base: &[(Mono, Scalar)]) -> BTreeMap<Mono, Scalar> {
    let mut out = BTreeMap::new();
    for (m, c) in p {
        for (bm, bc) in base {
            let mut nm = m.clone();
            for (e, be) in nm.bos.iter_mut().zip(bm.bos.iter()) {
                *e += *be;
            }
            accumulate(&mut out, nm, &(c * bc));
        }
    }
    out
}

/// Exact division by R^2, or None if R^2 does not divide `p`.
pub(crate) fn divide_by_base(
    p: &BTreeMap<Mono, Scalar>,
    base: &[(Mono, Scalar)],
    lead_var: usize,
) -> Option<BTreeMap<Mono, Scalar>> {
    let mut rem = p.clone();
    let mut quo = BTreeMap::new();
    while let Some(k) = rem.keys().rev().find(|m| m.bos[lead_var] >= 2).cloned() {
        let c = rem[&k].clone();
        let mut qm = k;
        qm.bos[lead_var] -= 2;
        accumulate(&mut quo, qm.clone(), &c);
        for (bm, bc) in base {
            let mut nm = qm.clone();
            for (e, be) in nm.bos.iter_mut().zip(bm.bos.iter()) {
                *e += *be;
            }
            accumulate(&mut rem, nm, &-(&c * bc));
        }
    }
    rem.is_empty().then_some(quo)
}

pub(crate) fn canonicalize(sig: &Sig, terms: &mut BTreeMap<Mono, Scalar>) {
    let spec = sig.radial().expect("radial exponent present but the signature has no radial base");
    let b = sig.block(spec.block);
    if b.m == 0 {
        // R = x0 for x0 > 0
        let old = std::mem::take(terms);
        for (mut m, c) in old {
            let s = &c * &Scalar::x0_pow(m.radial as i64);
            m.radial = 0;
            accumulate(terms, m, &s);
        }
        return;
    }
    let base = base_terms(sig, spec);
    let lead = b.bos_offset;
    let old = std::mem::take(terms);
    for parity in [0i32, 1] {
        let class: Vec<(Mono, Scalar)> =
            old.iter().filter(|(m, _)| m.radial.rem_euclid(2) == parity).map(|(m, c)| (m.clone(), c.clone())).collect();
        if class.is_empty() {
            continue;
        }
        let amin = class.iter().map(|(m, _)| m.radial).min().unwrap();
        let mut t = amin.min(parity);
        let mut poly: BTreeMap<Mono, Scalar> = BTreeMap::new();
        // group by exponent so each group is lifted with one power of the base
        let mut by_exp: BTreeMap<i32, BTreeMap<Mono, Scalar>> = BTreeMap::new();
        for (mut m, c) in class {
            let a = m.radial;
            m.radial = 0;
            accumulate(by_exp.entry(a).or_default(), m, &c);
        }
        for (a, mut p) in by_exp {
            for _ in 0..(a - t) / 2 {
                p = times_base(&p, &base);
            }
            for (m, c) in p {
                accumulate(&mut poly, m, &c);
            }
        }
        while t < parity && !poly.is_empty() {
            match divide_by_base(&poly, &base, lead) {
                Some(q) => {
                    poly = q;
                    t += 2;
                }
                None => break,
            }
        }
        for (mut m, c) in poly {
            m.radial = t;
            accumulate(terms, m, &c);
        }
    }
}
