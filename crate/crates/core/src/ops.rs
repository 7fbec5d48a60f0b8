//! Partial derivatives, Dirac, Laplace and Euler operators.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::algebra::{BlockId, Mono, SuperElement};
use crate::scalar::special::{factorial_q, rising};
use crate::scalar::Scalar;

type E = SuperElement;

/// A differentiation variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    /// Bosonic x_i of a block, 1-based.
    Bos(BlockId, usize),
    /// Fermionic x`_i of a block, 1-based.
    Ferm(BlockId, usize),
    X0,
}

fn acc(map: &mut BTreeMap<Mono, Scalar>, m: Mono, v: Scalar) {
    if v.is_zero() {
        return;
    }
    match map.get_mut(&m) {
        Some(s) => {
            *s = &*s + &v;
            if s.is_zero() {
                map.remove(&m);
            }
        }
        None => {
            map.insert(m, v);
        }
    }
}

/// d/dv for a bosonic variable by global index, including the radial factor.
pub fn partial_bos_global(f: &E, v: usize) -> E {
    let sig = f.sig();
    let radial_v = sig.radial().is_some_and(|r| sig.block(r.block).bos_range().contains(&v));
    let mut out = BTreeMap::new();
    for (m, c) in f.terms() {
        let e = m.bos[v];
        if e > 0 {
            let mut m2 = m.clone();
            m2.bos[v] -= 1;
            acc(&mut out, m2, c.mul_int(e as i64));
        }
        if radial_v && m.radial != 0 {
            let mut m2 = m.clone();
            m2.bos[v] += 1;
            m2.radial -= 2;
            acc(&mut out, m2, c.mul_int(m.radial as i64));
        }
    }
    E::from_terms(sig, out)
}

/// Left derivative with respect to the fermionic variable with global index `v`.
pub fn partial_ferm_global(f: &E, v: usize) -> E {
    let bit = 1u64 << v;
    let below = bit - 1;
    let mut out = BTreeMap::new();
    for (m, c) in f.terms() {
        if m.grass & bit == 0 {
            continue;
        }
        let neg = (m.grass & below).count_ones() % 2 == 1;
        let mut m2 = m.clone();
        m2.grass ^= bit;
        acc(&mut out, m2, if neg { -c } else { c.clone() });
    }
    E::from_terms(f.sig(), out)
}

/// Right derivative with respect to the fermionic variable with global index `v`.
pub fn partial_ferm_right_global(f: &E, v: usize) -> E {
    let bit = 1u64 << v;
    let mut out = BTreeMap::new();
    for (m, c) in f.terms() {
        if m.grass & bit == 0 {
            continue;
        }
        let neg = (m.grass >> (v + 1)).count_ones() % 2 == 1;
        let mut m2 = m.clone();
        m2.grass ^= bit;
        acc(&mut out, m2, if neg { -c } else { c.clone() });
    }
    E::from_terms(f.sig(), out)
}

/// d/dx0, acting on coefficients (dL/dx0 = 1/x0) and on R when the base contains x0.
pub fn partial_x0(f: &E) -> E {
    let sig = f.sig();
    let radial_x0 = sig.radial().is_some_and(|r| r.with_x0);
    let mut out = BTreeMap::new();
    for (m, c) in f.terms() {
        acc(&mut out, m.clone(), c.derivative_x0());
        if radial_x0 && m.radial != 0 {
            let mut m2 = m.clone();
            m2.radial -= 2;
            acc(&mut out, m2, c.mul_int(m.radial as i64) * Scalar::x0());
        }
    }
    E::from_terms(sig, out)
}

pub fn partial(f: &E, v: Var) -> E {
    let sig = f.sig();
    match v {
        Var::Bos(b, i) => {
            let blk = sig.block(b);
            assert!(i >= 1 && i <= blk.m);
            partial_bos_global(f, blk.bos_offset + i - 1)
        }
        Var::Ferm(b, i) => {
            let blk = sig.block(b);
            assert!(i >= 1 && i <= 2 * blk.n);
            partial_ferm_global(f, blk.ferm_offset + i - 1)
        }
        Var::X0 => partial_x0(f),
    }
}

/// Right fermionic partial of a block variable, 1-based.
pub fn partial_right_ferm(f: &E, b: BlockId, i: usize) -> E {
    let blk = f.sig().block(b);
    partial_ferm_right_global(f, blk.ferm_offset + i - 1)
}

/// Bosonic Dirac operator sum_j e_j d/dx_j (acting from the left).
pub fn dirac_bosonic(f: &E, b: BlockId) -> E {
    let sig = f.sig().clone();
    let mut out = E::zero(&sig);
    for j in 1..=sig.block(b).m {
        let d = partial(f, Var::Bos(b, j));
        if !d.is_zero() {
            out = out + E::frame_orth(&sig, b, j) * d;
        }
    }
    out
}

/// Fermionic Dirac operator 2 sum_j (e`_{2j} d/dx`_{2j-1} - e`_{2j-1} d/dx`_{2j}).
pub fn dirac_fermionic(f: &E, b: BlockId) -> E {
    let sig = f.sig().clone();
    let mut out = E::zero(&sig);
    for j in 1..=sig.block(b).n {
        let d1 = partial(f, Var::Ferm(b, 2 * j - 1));
        if !d1.is_zero() {
            out = out + E::frame_symp(&sig, b, 2 * j) * d1;
        }
        let d2 = partial(f, Var::Ferm(b, 2 * j));
        if !d2.is_zero() {
            out = out - E::frame_symp(&sig, b, 2 * j - 1) * d2;
        }
    }
    out.scale_int(2)
}

/// Left Dirac operator d_x = d_{x`} - d_{x̄}.
pub fn dirac(f: &E, b: BlockId) -> E {
    dirac_fermionic(f, b) - dirac_bosonic(f, b)
}

/// Right Dirac operator f d_x = -f d_{x`} - f d_{x̄}.
pub fn dirac_right(f: &E, b: BlockId) -> E {
    let sig = f.sig().clone();
    let blk = sig.block(b).clone();
    let mut bos = E::zero(&sig);
    for j in 1..=blk.m {
        bos = bos + partial(f, Var::Bos(b, j)) * E::frame_orth(&sig, b, j);
    }
    let mut ferm = E::zero(&sig);
    for j in 1..=blk.n {
        ferm = ferm + partial_right_ferm(f, b, 2 * j - 1) * E::frame_symp(&sig, b, 2 * j);
        ferm = ferm - partial_right_ferm(f, b, 2 * j) * E::frame_symp(&sig, b, 2 * j - 1);
    }
    -(ferm.scale_int(2) + bos)
}

/// Super Laplacian sum d^2/dx_j^2 - 4 sum d/dx`_{2j-1} d/dx`_{2j}.
pub fn laplacian(f: &E, b: BlockId) -> E {
    let sig = f.sig().clone();
    let blk = sig.block(b).clone();
    let mut out = E::zero(&sig);
    for j in 1..=blk.m {
        let d = partial(f, Var::Bos(b, j));
        if !d.is_zero() {
            out = out + partial(&d, Var::Bos(b, j));
        }
    }
    let mut ferm = E::zero(&sig);
    for j in 1..=blk.n {
        let d = partial(f, Var::Ferm(b, 2 * j));
        if !d.is_zero() {
            ferm = ferm + partial(&d, Var::Ferm(b, 2 * j - 1));
        }
    }
    out - ferm.scale_int(4)
}

pub fn laplacian_pow(f: &E, b: BlockId, k: usize) -> E {
    let mut g = f.clone();
    for _ in 0..k {
        if g.is_zero() {
            break;
        }
        g = laplacian(&g, b);
    }
    g
}

pub fn dirac_pow(f: &E, b: BlockId, k: usize) -> E {
    let mut g = f.clone();
    for _ in 0..k {
        if g.is_zero() {
            break;
        }
        g = dirac(&g, b);
    }
    g
}

/// Euler operator sum x_j d/dx_j + sum x`_j d/dx`_j.
pub fn euler(f: &E, b: BlockId) -> E {
    let sig = f.sig().clone();
    let blk = sig.block(b).clone();
    if !f.has_radial() {
        // on polynomials the Euler operator multiplies by the block degree
        let terms = f.terms().iter().map(|(m, c)| {
            let d = f.mono_block_degree(m, b) as i64;
            (m.clone(), c.mul_int(d))
        });
        return E::from_terms(&sig, terms);
    }
    let mut out = E::zero(&sig);
    for j in 1..=blk.m {
        out = out + E::var(&sig, b, j) * partial(f, Var::Bos(b, j));
    }
    for j in 1..=2 * blk.n {
        out = out + E::fvar(&sig, b, j) * partial(f, Var::Ferm(b, j));
    }
    out
}

/// c(M, j): j for even j, M + j - 1 for odd j.
pub fn c_coeff(m_super: i64, j: i64) -> i64 {
    if j % 2 == 0 {
        j
    } else {
        m_super + j - 1
    }
}

/// Residuals of the three sl2 relations applied to `f`:
/// [D/2, -x^2/2] - (E + M/2), [D/2, E + M/2] - D, [-x^2/2, E + M/2] - x^2.
pub fn sl2_residuals(f: &E, b: BlockId) -> [E; 3] {
    let sig = f.sig().clone();
    let msup = sig.block(b).super_dim();
    let half = BigRational::new(1.into(), 2.into());
    let xsq_half = E::norm_squared(&sig, b).scale_rational(&half); // -x^2/2
    let a = |g: &E| laplacian(g, b).scale_rational(&half);
    let bop = |g: &E| &xsq_half * g;
    let cop = |g: &E| euler(g, b) + g.scale_rational(&BigRational::new(msup.into(), 2.into()));
    let r1 = a(&bop(f)) - bop(&a(f)) - cop(f);
    let r2 = a(&cop(f)) - cop(&a(f)) - laplacian(f, b);
    let r3 = bop(&cop(f)) - cop(&bop(f)) + xsq_half.scale_int(2) * f;
    [r1, r2, r3]
}

/// Applies (d_x - d_x0)(-d_x - d_x0) and returns it with D_{m+1|2n} f = D f + d^2/dx0^2 f.
pub fn factorization_sides(f: &E, b: BlockId) -> (E, E) {
    let inner = -dirac(f, b) - partial_x0(f);
    let lhs = dirac(&inner, b) - partial_x0(&inner);
    let rhs = laplacian(f, b) + partial_x0(&partial_x0(f));
    (lhs, rhs)
}

/// Both sides of D^(j+l)[x^(2l) R] = (-1)^l 4^l (j+l)!/j! (j+M/2)_l D^j[R] for R homogeneous
/// of degree 2j in block `b`. The Gamma ratio is written as a rising factorial so it stays
/// finite at the poles.
pub fn lemlap_sides(r: &E, b: BlockId, j: usize, l: usize) -> (E, E) {
    let sig = r.sig().clone();
    let msup = sig.block(b).super_dim();
    let x2l = E::supervector(&sig, b).pow(2 * l as u32);
    let lhs = laplacian_pow(&(x2l * r), b, j + l);
    let half_m = BigRational::new(msup.into(), 2.into());
    let mut c = rising(&(half_m + BigRational::from_integer(j.into())), l as u64) * factorial_q((j + l) as u64)
        / factorial_q(j as u64)
        * BigRational::from_integer(num_bigint::BigInt::from(4).pow(l as u32));
    if l % 2 == 1 {
        c = -c;
    }
    let rhs = laplacian_pow(r, b, j).scale_rational(&c);
    (lhs, rhs)
}

/// A composable left-acting linear operator.
#[derive(Clone, Debug)]
pub enum LinearOperator {
    Partial(Var),
    Dirac(BlockId),
    DiracRight(BlockId),
    Laplacian(BlockId),
    Euler(BlockId),
    /// Left multiplication.
    Multiply(E),
    Scale(Scalar),
    Sum(Vec<LinearOperator>),
    /// Applied right to left, like operator composition.
    Compose(Vec<LinearOperator>),
}

impl LinearOperator {
    pub fn apply(&self, f: &E) -> E {
        use LinearOperator::*;
        match self {
            Partial(v) => partial(f, *v),
            Dirac(b) => dirac(f, *b),
            DiracRight(b) => dirac_right(f, *b),
            Laplacian(b) => laplacian(f, *b),
            Euler(b) => euler(f, *b),
            Multiply(a) => a * f,
            Scale(s) => f.scale(s),
            Sum(ops) => ops.iter().fold(E::zero(f.sig()), |acc, op| acc + op.apply(f)),
            Compose(ops) => ops.iter().rev().fold(f.clone(), |g, op| op.apply(&g)),
        }
    }

    pub fn then(self, outer: LinearOperator) -> LinearOperator {
        LinearOperator::Compose(vec![outer, self])
    }

    /// [A, B] f = A(B f) - B(A f).
    pub fn commutator(a: &LinearOperator, b: &LinearOperator, f: &E) -> E {
        a.apply(&b.apply(f)) - b.apply(&a.apply(f))
    }
}
