use superck_core::algebra::{Sig, Signature, SuperElement as E};
use superck_core::ck::*;
use superck_core::ops::{dirac, laplacian};
use superck_core::random::{random_poly, rng, TestRng};
use superck_core::text::parse;
use superck_core::{Error, Scalar};

fn xy(m: usize, n: usize, p: usize, q: usize) -> Sig {
    Signature::builder().block("x", m, n).block("y", p, q).build().unwrap()
}

/// Random F0 in y obeying the case ii/iii constraint D^(2k+1) F0 = 0 when needed.
fn random_f0(sig: &Sig, k: Option<usize>, r: &mut TestRng) -> E {
    let max = match k {
        Some(k) => (2 * k).min(4),
        None => 4,
    };
    random_poly(sig, 1, max, 4, true, r)
}

fn check_all(sig: &Sig, f0: &E, param: Param, f2k1: Option<&E>) {
    let s = ck_extend(f0, 0, param, f2k1).unwrap_or_else(|e| panic!("{e} for F0={f0}"));
    let c = ck_closed_form(f0, 0, param, f2k1).unwrap();
    assert_eq!(s, c, "closed form, F0={f0}");
    let f = s.materialize(sig);
    let rep = verify_monogenic(&s, sig);
    assert!(rep.passed(), "residual {} for F0={f0}", rep.residual);
    assert_eq!(restrict_to_origin(&f, 0).unwrap(), *f0);
    assert_eq!(ck_operator_form(f0, 0, param, f2k1).unwrap(), f, "operator form, F0={f0}");
}

#[test]
fn ck_grid_block_parameter() {
    for m in 0..=3usize {
        for n in 0..=2usize {
            if m + n == 0 {
                continue;
            }
            for (p, q) in [(1, 0), (1, 1), (2, 0), (2, 1)] {
                let sig = xy(m, n, p, q);
                let case = CkCase::of(&sig, 0);
                let k = (case != CkCase::I).then(|| (2 * n - m) / 2);
                let mut r = rng((1000 * m + 100 * n + 10 * p + q) as u64);
                for _ in 0..6 {
                    let f0 = random_f0(&sig, k, &mut r);
                    check_all(&sig, &f0, Param::Block(1), None);
                    if case == CkCase::II {
                        let t = random_poly(&sig, 1, 3, 3, true, &mut r);
                        check_all(&sig, &f0, Param::Block(1), Some(&t));
                    }
                }
            }
        }
    }
}

#[test]
fn ck_grid_x0_parameter() {
    for m in 0..=3usize {
        for n in 0..=2usize {
            if m + n == 0 {
                continue;
            }
            let sig = Signature::single(m, n);
            let case = CkCase::of(&sig, 0);
            let x0 = E::x0(&sig);
            let data: Vec<E> = match case {
                CkCase::I => (0..=5).map(|d| x0.pow(d) + E::from_int(&sig, 2)).collect(),
                _ => {
                    let k = (2 * n - m) / 2;
                    (0..=2 * k).map(|d| x0.pow(d as u32).scale_int(d as i64 + 1) + E::from_int(&sig, 3)).collect()
                }
            };
            for f0 in &data {
                check_all(&sig, f0, Param::X0, None);
                if case == CkCase::II {
                    let t = x0.pow(3) - x0.pow(1);
                    check_all(&sig, f0, Param::X0, Some(&t));
                }
            }
        }
    }
}

#[test]
fn constant_data_gives_constant() {
    let sig = xy(2, 1, 1, 1);
    let s = ck_extend(&E::from_int(&sig, 5), 0, Param::Block(1), None).unwrap();
    assert_eq!(s.terms, vec![(0, E::from_int(&sig, 5))]);
    let sig1 = Signature::single(2, 0);
    assert_eq!(ck_extend(&E::one(&sig1), 0, Param::X0, None).unwrap().materialize(&sig1), E::one(&sig1));
}

#[test]
fn linear_data_case_i() {
    let sig = xy(3, 1, 2, 0);
    let f0 = parse(&sig, "y1").unwrap();
    let s = ck_extend(&f0, 0, Param::Block(1), None).unwrap();
    // M = 1 and D_y[y1] = -e_{y,1}, so F1 = e_{y,1} / M
    let ey1 = E::frame_orth(&sig, 1, 1);
    assert_eq!(s.coeff(1), Some(&ey1));
    assert_eq!(s.truncation, 2);
    let sig0 = Signature::single(3, 0);
    let s0 = ck_extend(&E::x0(&sig0), 0, Param::X0, None).unwrap();
    assert_eq!(s0.coeff(1), Some(&E::from_scalar(&sig0, Scalar::rational(1, 3))));
}

#[test]
fn quadratic_data_case_i_coefficient() {
    // D_y^2 = -Delta_y, so F2 = (-1/(2M)) D_y^2 y1^2 = Delta_y[y1^2]/(2M) = 1/M
    let sig = xy(3, 0, 1, 0);
    let s = ck_extend(&parse(&sig, "y1^2").unwrap(), 0, Param::Block(1), None).unwrap();
    assert_eq!(s.coeff(2), Some(&E::from_scalar(&sig, Scalar::rational(1, 3))));
}

#[test]
fn fermionic_case_iii_formula() {
    let sig = xy(0, 1, 2, 1);
    let f0 = parse(&sig, "y1^2 + y1*yg1 + 3*y2").unwrap();
    let s = ck_extend(&f0, 0, Param::Block(1), None).unwrap();
    let xf = E::supervector(&sig, 0);
    let expect = &f0
        - (&xf * &xf * laplacian(&f0, 1)).scale_rational(&num_rational::BigRational::new(1.into(), 4.into()))
        + (&xf * &dirac(&f0, 1)).scale_rational(&num_rational::BigRational::new(1.into(), 2.into()));
    assert_eq!(s.materialize(&sig), expect);
    assert!(s.truncation <= 3);
}

#[test]
fn fermionic_x0_case_iii() {
    let sig = Signature::single(0, 1);
    let f0 = E::x0(&sig).pow(2);
    let f = ck_extend(&f0, 0, Param::X0, None).unwrap().materialize(&sig);
    // x0^2 - x`x0 - x`^2/2
    let xf = E::supervector(&sig, 0);
    let expect =
        &f0 - &xf * &E::x0(&sig) - (&xf * &xf).scale_rational(&num_rational::BigRational::new(1.into(), 2.into()));
    assert_eq!(f, expect);
}

#[test]
fn constraint_violation_is_rejected() {
    let sig = xy(2, 2, 1, 0);
    // k = 1: D^3 y1^3 != 0
    let err = ck_extend(&parse(&sig, "y1^3").unwrap(), 0, Param::Block(1), None).unwrap_err();
    assert!(matches!(err, Error::Constraint(_)));
    assert!(ck_closed_form(&parse(&sig, "y1^3").unwrap(), 0, Param::Block(1), None).is_err());
    let sig1 = xy(3, 0, 1, 0);
    let t = E::one(&sig1);
    assert!(ck_extend(&t, 0, Param::Block(1), Some(&t)).is_err());
}

#[test]
fn case_ii_parts_are_separately_monogenic() {
    let sig = xy(2, 2, 2, 1);
    let mut r = rng(77);
    for _ in 0..5 {
        let f0 = random_poly(&sig, 1, 2, 4, true, &mut r);
        let t = random_poly(&sig, 1, 4, 4, true, &mut r);
        let a = ck_extend(&f0, 0, Param::Block(1), None).unwrap();
        let b = ck_extend(&E::zero(&sig), 0, Param::Block(1), Some(&t)).unwrap();
        let both = ck_extend(&f0, 0, Param::Block(1), Some(&t)).unwrap();
        assert!(verify_monogenic(&a, &sig).passed());
        assert!(verify_monogenic(&b, &sig).passed());
        assert_eq!(a.materialize(&sig) + b.materialize(&sig), both.materialize(&sig));
        // the pivot power is monogenic: the tail starts at x^(2k+1) with F_{2k+1} itself
        assert_eq!(b.coeff(3), Some(&t));
    }
}

#[test]
fn broken_series_reports_failing_degree() {
    let sig = xy(3, 0, 2, 0);
    let f0 = parse(&sig, "y1^3 + y1*y2").unwrap();
    let mut s = ck_extend(&f0, 0, Param::Block(1), None).unwrap();
    let idx = s.terms.iter().position(|(j, _)| *j == 2).unwrap();
    s.terms[idx].1 = s.terms[idx].1.clone() + E::from_int(&sig, 1);
    let rep = verify_monogenic(&s, &sig);
    assert!(!rep.passed());
    let d = rep.lowest_failing_degree.unwrap();
    assert!(d == 1 || d == 2, "degree {d}");
}

#[test]
fn uniqueness_case_i() {
    // any monogenic series with the same F0 agrees: the recurrence fixes every F_j
    let sig = xy(1, 0, 2, 1);
    let f0 = parse(&sig, "y1*y2 + yg1*yg2").unwrap();
    let a = ck_extend(&f0, 0, Param::Block(1), None).unwrap();
    let b = ck_closed_form(&f0, 0, Param::Block(1), None).unwrap();
    assert_eq!(a, b);
}

#[test]
fn json_shape() {
    let sig = xy(1, 0, 1, 0);
    let s = ck_extend(&parse(&sig, "y1").unwrap(), 0, Param::Block(1), None).unwrap();
    let v = serde_json::to_value(s.to_json(&sig)).unwrap();
    assert_eq!(v["case"], "i");
    assert_eq!(v["block"], "x");
    assert_eq!(v["terms"][0]["j"], 0);
    assert_eq!(v["terms"][0]["element"], "y1");
    let back: CKSeriesJson = serde_json::from_value(v).unwrap();
    assert_eq!(back, s.to_json(&sig));
}
