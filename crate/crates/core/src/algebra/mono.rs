//! Basis monomials and their products under the Clifford-Weyl rules.

use num_bigint::BigInt;
use num_traits::One;
use smallvec::SmallVec;

use crate::scalar::special::binomial;

/// (bosonic exponents, Grassmann subset, Clifford basis element, radial exponent).
///
/// The Clifford part is e_{i1}...e_{ik} (ascending, from `orth`) followed by
/// the ordered Weyl word prod_i e`_{2i}^{a_i} e`_{2i-1}^{b_i} with `weyl[i] = (a_i, b_i)`.
/// The Grassmann part is the ascending product of the variables in `grass`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub bos: SmallVec<[u16; 8]>,
    pub grass: u64,
    pub orth: u64,
    pub weyl: SmallVec<[(u16, u16); 4]>,
    pub radial: i32,
}

impl Mono {
    pub fn one(n_bos: usize, n_pairs: usize) -> Self {
        Mono {
            bos: SmallVec::from_elem(0, n_bos),
            grass: 0,
            orth: 0,
            weyl: SmallVec::from_elem((0, 0), n_pairs),
            radial: 0,
        }
    }

    pub fn grass_degree(&self) -> u32 {
        self.grass.count_ones()
    }

    pub fn weyl_degree(&self) -> u32 {
        self.weyl.iter().map(|&(a, b)| (a + b) as u32).sum()
    }

    /// True when the Clifford part is the identity.
    pub fn is_clifford_scalar(&self) -> bool {
        self.orth == 0 && self.weyl.iter().all(|&w| w == (0, 0))
    }

    pub fn bos_degree(&self) -> u32 {
        self.bos.iter().map(|&e| e as u32).sum()
    }

    /// Same monomial with the Clifford part stripped.
    pub fn without_clifford(&self) -> Mono {
        let mut m = self.clone();
        m.orth = 0;
        for w in m.weyl.iter_mut() {
            *w = (0, 0);
        }
        m
    }
}

/// Sign of reordering the concatenation of ascending index sets `a` then `b`
/// into ascending order (pairs with i in a, j in b, i > j).
pub fn merge_sign(a: u64, b: u64) -> bool {
    let mut count = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        bb &= bb - 1;
        count += (a >> (j + 1)).count_ones();
    }
    count % 2 == 1
}

/// Exponents (q, p) of each Weyl pair.
type WeylExps = SmallVec<[(u16, u16); 4]>;

/// Product of two monomials as a list of (monomial, integer coefficient).
pub fn mono_mul(a: &Mono, b: &Mono) -> SmallVec<[(Mono, BigInt); 2]> {
    let mut out = SmallVec::new();
    if a.grass & b.grass != 0 {
        return out;
    }
    let mut neg = merge_sign(a.grass, b.grass);
    // move the orthogonal part of b left past the Weyl part of a
    if (b.orth.count_ones() * a.weyl_degree()) % 2 == 1 {
        neg = !neg;
    }
    // orthogonal blade product, e_j^2 = -1
    if merge_sign(a.orth, b.orth) {
        neg = !neg;
    }
    if (a.orth & b.orth).count_ones() % 2 == 1 {
        neg = !neg;
    }
    let mut base = Mono {
        bos: a.bos.iter().zip(b.bos.iter()).map(|(x, y)| x + y).collect(),
        grass: a.grass | b.grass,
        orth: a.orth ^ b.orth,
        weyl: SmallVec::from_elem((0, 0), a.weyl.len()),
        radial: a.radial + b.radial,
    };
    let sign = if neg { -BigInt::one() } else { BigInt::one() };
    // Weyl pairs commute with each other; within a pair, with p = e`_{2i-1} and q = e`_{2i}
    // satisfying pq - qp = 1: p^b q^a' = sum_k k! C(b,k) C(a',k) q^(a'-k) p^(b-k).
    let mut partial: SmallVec<[(WeylExps, BigInt); 2]> = SmallVec::new();
    partial.push((SmallVec::new(), sign));
    for (&(qa, pa), &(qb, pb)) in a.weyl.iter().zip(b.weyl.iter()) {
        let kmax = pa.min(qb);
        if kmax == 0 {
            for (w, _) in partial.iter_mut() {
                w.push((qa + qb, pa + pb));
            }
            continue;
        }
        let mut next = SmallVec::new();
        for (w, c) in partial.iter() {
            for k in 0..=kmax {
                let coef = crate::scalar::special::factorial(k as u64)
                    * binomial(pa as u64, k as u64)
                    * binomial(qb as u64, k as u64);
                let mut w2 = w.clone();
                w2.push((qa + qb - k, pa + pb - k));
                next.push((w2, c * coef));
            }
        }
        partial = next;
    }
    for (w, c) in partial {
        base.weyl = w;
        out.push((base.clone(), c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orth(bits: u64) -> Mono {
        let mut m = Mono::one(0, 1);
        m.orth = bits;
        m
    }

    fn weyl(q: u16, p: u16) -> Mono {
        let mut m = Mono::one(0, 1);
        m.weyl[0] = (q, p);
        m
    }

    #[test]
    fn orthogonal_square_is_minus_one() {
        let r = mono_mul(&orth(1), &orth(1));
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].0, Mono::one(0, 1));
        assert_eq!(r[0].1, BigInt::from(-1));
    }

    #[test]
    fn orthogonal_anticommute() {
        let ab = mono_mul(&orth(1), &orth(2));
        let ba = mono_mul(&orth(2), &orth(1));
        assert_eq!(ab[0].0, ba[0].0);
        assert_eq!(ab[0].1, -ba[0].1.clone());
    }

    #[test]
    fn weyl_reordering() {
        // e`_1 e`_2 = e`_2 e`_1 + 1
        let r = mono_mul(&weyl(0, 1), &weyl(1, 0));
        assert_eq!(r.len(), 2);
        assert!(r.iter().any(|(m, c)| *m == weyl(1, 1) && *c == BigInt::one()));
        assert!(r.iter().any(|(m, c)| *m == weyl(0, 0) && *c == BigInt::one()));
    }

    #[test]
    fn orth_anticommutes_with_symplectic() {
        let mut e1 = Mono::one(0, 1);
        e1.orth = 1;
        let r1 = mono_mul(&e1, &weyl(1, 0));
        let r2 = mono_mul(&weyl(1, 0), &e1);
        assert_eq!(r1[0].0, r2[0].0);
        assert_eq!(r1[0].1, -r2[0].1.clone());
    }
}
