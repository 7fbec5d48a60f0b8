use super::*;
use crate::scalar::special::factorial;
use crate::scalar::Scalar;
use crate::text::{parse, render};

type E = SuperElement;

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
fn square_of_supervector_is_minus_norm() {
    for (m, n) in grid() {
        let sig = Signature::single(m, n);
        let x = E::supervector(&sig, 0);
        assert_eq!(&x * &x, -E::norm_squared(&sig, 0), "m={m} n={n}");
        assert!((&x * &x).is_clifford_scalar());
    }
}

#[test]
fn generator_relations() {
    let sig = Signature::single(2, 2);
    let e1 = E::gen_orth(&sig, 1);
    let e2 = E::gen_orth(&sig, 2);
    assert_eq!(&e1 * &e1, E::from_int(&sig, -1));
    assert_eq!(&e1 * &e2, -(&e2 * &e1));
    for k in 1..=4 {
        let f = E::gen_symp(&sig, k);
        assert_eq!(&e1 * &f, -(&f * &e1));
        for l in 1..=4 {
            let g = E::gen_symp(&sig, l);
            let comm = &f * &g - &g * &f;
            let expect = match (k, l) {
                (1, 2) | (3, 4) => 1,
                (2, 1) | (4, 3) => -1,
                _ => 0,
            };
            assert_eq!(comm, E::from_int(&sig, expect), "k={k} l={l}");
        }
    }
}

#[test]
fn fermionic_power_is_top_form() {
    for n in 1..=3usize {
        let sig = Signature::single(0, n);
        let xf = E::supervector_fermionic(&sig, 0);
        let mut top = E::one(&sig);
        for j in 1..=2 * n {
            top = top * E::fvar(&sig, 0, j);
        }
        let expect = top.scale(&Scalar::from_bigint(factorial(n as u64)));
        assert_eq!(xf.pow(2 * n as u32), expect, "n={n}");
        assert!(xf.pow(2 * n as u32 + 1).is_zero());
    }
}

#[test]
fn inner_product_matches_anticommutator_on_shared_frame() {
    for (m, n) in grid() {
        let sig = Signature::builder().block("x", m, n).block_sharing("w", "x").build().unwrap();
        let x = E::supervector(&sig, 0);
        let w = E::supervector(&sig, 1);
        let anti = (&x * &w + &w * &x).scale(&Scalar::rational(-1, 2));
        assert_eq!(E::inner_product(&sig, 0, 1).unwrap(), anti, "m={m} n={n}");
    }
    let sig = Signature::builder().block("x", 1, 0).block_sharing("w", "x").build().unwrap();
    assert_eq!(render(&E::inner_product(&sig, 0, 1).unwrap()), "x1*w1");
    let sig = Signature::builder().block("x", 0, 1).block_sharing("w", "x").build().unwrap();
    let ip = E::inner_product(&sig, 0, 1).unwrap();
    assert_eq!(ip, parse(&sig, "-1/2*(xg1*wg2 - xg2*wg1)").unwrap());
}

#[test]
fn disjoint_frames_anticommute() {
    for (m, n) in grid() {
        for (p, q) in [(1, 0), (1, 1), (2, 1)] {
            let sig = Signature::builder().block("x", m, n).block("y", p, q).build().unwrap();
            let x = E::supervector(&sig, 0);
            let y = E::supervector(&sig, 1);
            assert_eq!(&x * &y, -(&y * &x));
        }
    }
}

#[test]
fn radial_equality_after_common_exponent_reduction() {
    let sig = Signature::builder().block("x", 2, 0).radial("x", true).build().unwrap();
    let base = E::x0(&sig).pow(2) + E::norm_squared_bosonic(&sig, 0);
    let lhs = E::radial_power(&sig, -1).unwrap() * base.pow(2);
    let rhs = E::radial_power(&sig, 3).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(E::radial_power(&sig, 2).unwrap(), base);
    let r = E::radial_power(&sig, -2).unwrap();
    assert_eq!(&r * &base, E::one(&sig));
    // parities never mix
    let odd = E::radial_power(&sig, -1).unwrap();
    assert!(!(odd.clone() - E::one(&sig)).is_zero());
    // R = x0 when the block has no bosonic variables
    let sig0 = Signature::builder().block("x", 0, 1).radial("x", true).build().unwrap();
    assert_eq!(E::radial_power(&sig0, -3).unwrap(), E::from_scalar(&sig0, Scalar::x0_pow(-3)));
}

#[test]
fn render_parse_fixed_cases() {
    let sig = Signature::builder().block("x", 2, 1).block("y", 1, 1).radial("x", true).build().unwrap();
    for s in [
        "x1^2*xg1*e1*eg2",
        "3/2*x0 - y1*yg2*eg4^2*eg3",
        "(x0^2+1)/(x0^3)*L*sqrtpi^-1*x2",
        "X(x)*X(y) + NORM2(x)*R^-3",
        "IP(x,x) - 2",
    ] {
        let e = parse(&sig, s).unwrap();
        let t = render(&e);
        assert_eq!(parse(&sig, &t).unwrap(), e, "{s} -> {t}");
    }
}

#[test]
fn parse_errors_carry_positions() {
    let sig = Signature::single(2, 1);
    match parse(&sig, "x1 + x3") {
        Err(crate::Error::Parse { pos, .. }) => assert_eq!(pos, 5),
        other => panic!("{other:?}"),
    }
    match parse(&sig, "x1 * (x2") {
        Err(crate::Error::Parse { pos, .. }) => assert_eq!(pos, 8),
        other => panic!("{other:?}"),
    }
    assert!(parse(&sig, "x1 / x2").is_err());
    assert!(parse(&sig, "y1").is_err());
}

#[test]
fn multiplication_is_noncommutative_in_text() {
    let sig = Signature::single(2, 0);
    assert_eq!(parse(&sig, "e1*e2").unwrap(), parse(&sig, "-e2*e1").unwrap());
}

fn q(n: i64, d: i64) -> num_rational::BigRational {
    num_rational::BigRational::new(n.into(), d.into())
}

#[test]
fn gen_power_matches_binomial_expansion_in_odd_generators() {
    use crate::scalar::special::gamma_half;
    for (m, n) in [(1usize, 1usize), (2, 1), (3, 2), (1, 2), (0, 2)] {
        let sig = Signature::builder().block("x", m, n).radial("x", true).build().unwrap();
        let a = E::x0(&sig).pow(2) + E::norm_squared(&sig, 0);
        let msup = m as i64 - 2 * n as i64;
        if (msup + 1) <= 0 && (msup + 1) % 2 == 0 {
            continue;
        }
        let p = q(-(msup + 1), 2);
        let got = a.gen_power(&p).unwrap();
        // sum_j Gamma((m+1)/2 - j) / ((n-j)! Gamma((m+1)/2 - n)) R^(2j-m-1) x̄`^(2n-2j)
        let xf2 = E::supervector_fermionic(&sig, 0).pow(2);
        let mut expect = E::zero(&sig);
        let g_bottom = gamma_half(m as i64 + 1 - 2 * n as i64).unwrap().inv().unwrap();
        for j in 0..=n {
            let c = gamma_half(m as i64 + 1 - 2 * j as i64).unwrap() * g_bottom.clone();
            let c = c.mul_rational(&crate::scalar::special::factorial_q((n - j) as u64).recip());
            let t = E::radial_power(&sig, 2 * j as i32 - m as i32 - 1).unwrap() * xf2.pow((n - j) as u32);
            expect = expect + t.scale(&c);
        }
        assert_eq!(got, expect, "m={m} n={n}");
    }
}

#[test]
fn gen_power_laws() {
    let sig = Signature::builder().block("x", 2, 2).radial("x", false).build().unwrap();
    let a = E::norm_squared(&sig, 0);
    let h = a.gen_power(&q(1, 2)).unwrap();
    assert_eq!(&h * &h, a);
    let p1 = a.gen_power(&q(-3, 2)).unwrap();
    let p2 = a.gen_power(&q(5, 2)).unwrap();
    assert_eq!(p1 * p2, a);
    assert_eq!(a.gen_power(&q(2, 1)).unwrap(), a.pow(2));
}

/// k-th derivative of the polynomial sum c_i t^i at an element body.
fn poly_provider(coeffs: Vec<i64>) -> impl Fn(&[usize], &[E]) -> crate::Result<E> {
    move |alpha: &[usize], bodies: &[E]| {
        let k = alpha[0];
        let b = &bodies[0];
        let mut acc = E::zero(b.sig());
        for (i, &c) in coeffs.iter().enumerate() {
            if i >= k {
                let f = (i - k + 1..=i).product::<usize>() as i64;
                acc = acc + b.pow((i - k) as u32).scale_int(c * f);
            }
        }
        Ok(acc)
    }
}

#[test]
fn compose_square_of_shifted_nilpotent() {
    let sig = Signature::single(0, 1);
    let a = parse(&sig, "1 + xg1*xg2").unwrap();
    let f = poly_provider(vec![0, 0, 1]);
    assert_eq!(compose_scalar(&f, std::slice::from_ref(&a)).unwrap(), parse(&sig, "1 + 2*xg1*xg2").unwrap());
    let id = poly_provider(vec![0, 1]);
    assert_eq!(compose_scalar(&id, std::slice::from_ref(&a)).unwrap(), a);
}

#[test]
fn compose_is_independent_of_splitting() {
    let sig = Signature::single(1, 2);
    let a = parse(&sig, "x1^2 + 3 + xg1*xg2 - 2*x1*xg3*xg4 + xg1*xg3").unwrap();
    let f = poly_provider(vec![2, -1, 0, 3, 1]);
    let direct = compose_scalar(&f, std::slice::from_ref(&a)).unwrap();
    // direct polynomial evaluation
    let oracle = E::from_int(&sig, 2) - &a + a.pow(3).scale_int(3) + a.pow(4);
    assert_eq!(direct, oracle);
    let shift = parse(&sig, "xg1*xg4 - xg2*xg3").unwrap();
    let body = a.filter(|m| m.grass == 0) + &shift;
    let nil = a.filter(|m| m.grass != 0) - &shift;
    assert_eq!(compose_scalar_split(&f, &[body], &[nil]).unwrap(), direct);
}

#[test]
fn compose_two_arguments() {
    let sig = Signature::single(1, 1);
    let a = parse(&sig, "x1 + xg1*xg2").unwrap();
    let b = parse(&sig, "2 - x1*xg1*xg2").unwrap();
    // f(s, t) = s t^2
    let f = |alpha: &[usize], bodies: &[E]| -> crate::Result<E> {
        let (s, t) = (&bodies[0], &bodies[1]);
        let ds = match alpha[0] {
            0 => s.clone(),
            1 => E::one(s.sig()),
            _ => E::zero(s.sig()),
        };
        let dt = match alpha[1] {
            0 => t * t,
            1 => t.scale_int(2),
            2 => E::from_int(t.sig(), 2),
            _ => E::zero(t.sig()),
        };
        Ok(ds * dt)
    };
    assert_eq!(compose_scalar(&f, &[a.clone(), b.clone()]).unwrap(), &a * &b * &b);
}
