//! Seeded generation of test elements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BlockId, Mono, Sig, SuperElement};
use crate::scalar::Scalar;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives a child seed from a base seed and a case label.
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    // FNV-1a over the label, mixed with the seed
    let mut h: u64 = 0xcbf29ce484222325 ^ seed.rotate_left(17);
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn bos_exponents(m: usize, d: usize) -> Vec<Vec<u16>> {
    if m == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in bos_exponents(m - 1, d - first) {
            rest.insert(0, first as u16);
            out.push(rest);
        }
    }
    out
}

/// All monomials (no Clifford part) of exact degree `d` in the variables of `block`.
pub fn block_monomials(sig: &Sig, block: BlockId, d: usize) -> Vec<Mono> {
    let b = sig.block(block).clone();
    let nf = 2 * b.n;
    let mut out = Vec::new();
    for sub in 0u64..(1u64 << nf) {
        let g = sub.count_ones() as usize;
        if g > d {
            continue;
        }
        for exps in bos_exponents(b.m, d - g) {
            let mut m = SuperElement::unit_mono(sig);
            for (i, e) in exps.iter().enumerate() {
                m.bos[b.bos_offset + i] = *e;
            }
            m.grass = sub << b.ferm_offset;
            out.push(m);
        }
    }
    out.sort();
    out
}

fn small_coeff(rng: &mut TestRng) -> Scalar {
    let mut n: i64 = rng.gen_range(-5..=5);
    if n == 0 {
        n = 1;
    }
    let d: i64 = *[1, 1, 1, 2, 3].choose(rng).unwrap();
    Scalar::rational(n, d)
}

/// Random Clifford basis element of the frame of `block`, with Weyl exponents at most 1.
pub fn random_clifford(sig: &Sig, block: BlockId, rng: &mut TestRng) -> SuperElement {
    let f = sig.frame_of(block).clone();
    let mut e = SuperElement::one(sig);
    for j in 1..=f.m {
        if rng.gen_bool(0.4) {
            e = e * SuperElement::frame_orth(sig, block, j);
        }
    }
    for j in 1..=2 * f.n {
        if rng.gen_bool(0.3) {
            e = e * SuperElement::frame_symp(sig, block, j);
        }
    }
    e
}

/// Random homogeneous polynomial of degree `d` in `block` with up to `nterms` terms.
pub fn random_homogeneous(
    sig: &Sig,
    block: BlockId,
    d: usize,
    nterms: usize,
    clifford: bool,
    rng: &mut TestRng,
) -> SuperElement {
    let monos = block_monomials(sig, block, d);
    let mut out = SuperElement::zero(sig);
    if monos.is_empty() {
        return out;
    }
    for _ in 0..nterms {
        let m = monos.choose(rng).unwrap().clone();
        let mut t = SuperElement::from_mono(sig, m, small_coeff(rng));
        if clifford {
            t = t * random_clifford(sig, block, rng);
        }
        out = out + t;
    }
    out
}

/// Random polynomial of degree at most `max_deg` in `block`.
pub fn random_poly(
    sig: &Sig,
    block: BlockId,
    max_deg: usize,
    nterms: usize,
    clifford: bool,
    rng: &mut TestRng,
) -> SuperElement {
    let mut out = SuperElement::zero(sig);
    for _ in 0..nterms {
        let d = rng.gen_range(0..=max_deg);
        out = out + random_homogeneous(sig, block, d, 1, clifford, rng);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;

    #[test]
    fn monomial_counts() {
        let sig = Signature::single(2, 1);
        // degree 2 in x1,x2 (3) + x`-linear times x (2*2) + x`1x`2 (1)
        assert_eq!(block_monomials(&sig, 0, 2).len(), 8);
        let sig = Signature::single(0, 2);
        assert_eq!(block_monomials(&sig, 0, 2).len(), 6);
        assert_eq!(block_monomials(&sig, 0, 5).len(), 0);
    }

    #[test]
    fn generation_is_deterministic() {
        let sig = Signature::single(2, 1);
        let a = random_poly(&sig, 0, 4, 6, true, &mut rng(7));
        let b = random_poly(&sig, 0, 4, 6, true, &mut rng(7));
        assert_eq!(a, b);
    }
}
