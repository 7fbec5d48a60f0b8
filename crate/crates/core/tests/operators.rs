use proptest::prelude::*;
use superck_core::algebra::{Signature, SuperElement as E};
use superck_core::ops::*;
use superck_core::random::{random_homogeneous, random_poly, rng};

fn grid() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for m in 0..=3 {
        for n in 0..=2 {
            if m + n > 0 {
                v.push((m, n));
            }
        }
    }
    v
}

#[test]
fn sl2_relations_on_one() {
    let sig = Signature::single(3, 1);
    let [r1, r2, r3] = sl2_residuals(&E::one(&sig), 0);
    assert!(r1.is_zero() && r2.is_zero() && r3.is_zero());
    // first commutator applied to 1 is M/2
    let a = LinearOperator::Laplacian(0);
    let b = LinearOperator::Multiply(E::norm_squared(&sig, 0));
    let c = LinearOperator::commutator(&a, &b, &E::one(&sig));
    assert_eq!(c, E::from_int(&sig, 2));
}

#[test]
fn sl2_relations_random() {
    for (m, n) in grid() {
        let sig = Signature::single(m, n);
        let mut r = rng(1000 + (10 * m + n) as u64);
        for _ in 0..20 {
            let f = random_poly(&sig, 0, 4, 4, true, &mut r);
            for res in sl2_residuals(&f, 0) {
                assert!(res.is_zero(), "m={m} n={n} f={f} residual={res}");
            }
        }
    }
}

#[test]
fn lemlap_identity() {
    for (m, n) in grid() {
        let sig = Signature::single(m, n);
        let mut r = rng(2000 + (10 * m + n) as u64);
        for j in 0..=2 {
            for l in 0..=2 {
                let rr = random_homogeneous(&sig, 0, 2 * j, 3, true, &mut r);
                let (a, b) = lemlap_sides(&rr, 0, j, l);
                assert_eq!(a, b, "m={m} n={n} j={j} l={l} R={rr}");
            }
        }
    }
}

#[test]
fn dirac_squared_is_minus_laplacian() {
    for (m, n) in grid() {
        let sig = Signature::single(m, n);
        let mut r = rng(3000 + (10 * m + n) as u64);
        for _ in 0..5 {
            let f = random_poly(&sig, 0, 6, 5, true, &mut r);
            assert_eq!(dirac(&dirac(&f, 0), 0), -laplacian(&f, 0), "m={m} n={n}");
        }
    }
}

#[test]
fn purely_fermionic_laplacian_is_nilpotent() {
    for n in 1..=3 {
        let sig = Signature::single(0, n);
        let mut r = rng(40 + n as u64);
        let f = random_poly(&sig, 0, 2 * n, 8, true, &mut r);
        assert!(laplacian_pow(&f, 0, n + 1).is_zero());
    }
}

#[test]
fn koszul_leibniz_across_blocks() {
    let sig = Signature::builder().block("x", 2, 1).block("y", 1, 1).build().unwrap();
    let msup = sig.block(0).super_dim();
    let x = E::supervector(&sig, 0);
    let mut r = rng(5);
    for j in 0..=5u32 {
        let f = random_poly(&sig, 1, 3, 4, true, &mut r);
        let lhs = dirac(&(x.pow(j) * &f), 0);
        let expect = if j == 0 { E::zero(&sig) } else { x.pow(j - 1).scale_int(c_coeff(msup, j as i64)) * &f };
        assert_eq!(lhs, expect, "j={j}");
        // the y-derivative picks up (-1)^j passing x^j
        let lhs_y = dirac(&(x.pow(j) * &f), 1);
        let rhs_y = (x.pow(j) * dirac(&f, 1)).scale_int(if j % 2 == 0 { 1 } else { -1 });
        assert_eq!(lhs_y, rhs_y, "j={j}");
    }
}

#[test]
fn cauchy_riemann_factorization() {
    for (m, n) in grid() {
        let sig = Signature::single(m, n);
        let mut r = rng(6000 + (10 * m + n) as u64);
        let f =
            random_poly(&sig, 0, 4, 4, true, &mut r) * E::x0(&sig).pow(3) + random_poly(&sig, 0, 3, 3, false, &mut r);
        let (a, b) = factorization_sides(&f, 0);
        assert_eq!(a, b, "m={m} n={n}");
    }
}

#[test]
fn composite_operator_matches_direct() {
    let sig = Signature::single(2, 1);
    let f = random_poly(&sig, 0, 4, 5, true, &mut rng(8));
    let op = LinearOperator::Dirac(0).then(LinearOperator::Dirac(0));
    assert_eq!(op.apply(&f), -laplacian(&f, 0));
    let sum =
        LinearOperator::Sum(vec![LinearOperator::Euler(0), LinearOperator::Scale(superck_core::Scalar::from_int(-2))]);
    let h = random_homogeneous(&sig, 0, 2, 4, true, &mut rng(9));
    assert!(sum.apply(&h).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fermionic_partials_anticommute(seed in any::<u64>(), n in 1usize..=2, m in 0usize..=2) {
        let sig = Signature::single(m, n);
        let f = random_poly(&sig, 0, 4, 6, true, &mut rng(seed));
        for i in 1..=2 * n {
            prop_assert!(partial(&partial(&f, Var::Ferm(0, i)), Var::Ferm(0, i)).is_zero());
            for k in i + 1..=2 * n {
                let a = partial(&partial(&f, Var::Ferm(0, k)), Var::Ferm(0, i));
                let b = partial(&partial(&f, Var::Ferm(0, i)), Var::Ferm(0, k));
                prop_assert_eq!(a, -b);
            }
        }
    }

    #[test]
    fn euler_eigenvalue_on_homogeneous(seed in any::<u64>(), d in 0usize..=4) {
        let sig = Signature::single(2, 1);
        let f = random_homogeneous(&sig, 0, d, 4, true, &mut rng(seed));
        prop_assert_eq!(euler(&f, 0), f.scale_int(d as i64));
    }
}
