//! Verification suites run by `superck verify`. Each suite expands into independent
//! checks over a parameter grid. Checks run in parallel, and the report keeps them in
//! generation order, so a report depends only on the grid and the seed.

use num_rational::BigRational;
use rayon::prelude::*;

use crate::algebra::{BlockId, Sig, Signature, SuperElement as E};
use crate::cauchy::{
    appell_log, cauchy_kernel, cauchy_kernel_series, cauchy_kernel_sum, cauchy_residual, expand_radial,
    fundamental_solution_laplace, harmonic_number, laplace_residual, sigma_product, verify_pwdck,
};
use crate::ck::{ck_closed_form, ck_extend, ck_operator_form, monogenic_residual, restrict_to_origin, CkCase, Param};
use crate::error::{Error, Result};
use crate::harmonics::{funk_hecke_normalized_sides, funk_hecke_sides, harmonic_project};
use crate::integration::{is_normalized_case, normalized_integral, sphere_integral, sphere_integral_oracle, Weight};
use crate::ops::{c_coeff, dirac, dirac_pow, euler, factorization_sides, laplacian, lemlap_sides, sl2_residuals};
use crate::planewave::{
    pw_antiderivative, pw_decomposition, pw_integral_exp, pw_normalized_monomial, pw_sphere_integral_holo, HoloFn,
    PwMode,
};
use crate::random::{block_monomials, derive_seed, random_homogeneous, random_poly, rng, TestRng};
use crate::report::CheckResult;
use crate::scalar::special::{binomial, factorial_q, sigma};
use crate::scalar::Scalar;
use crate::text::{parse, render};

pub const SUITES: [&str; 8] = ["algebra", "operators", "sl2", "pizzetti", "funkhecke", "ck", "planewave", "cauchy"];

const X: BlockId = 0;

/// Parameter grid and randomness for a suite run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub ms: Vec<usize>,
    pub ns: Vec<usize>,
    pub ps: Vec<usize>,
    pub qs: Vec<usize>,
    /// Truncation or maximal polynomial degree.
    pub degree: usize,
    pub seed: u64,
    /// Random inputs per signature.
    pub cases: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            ms: (0..=3).collect(),
            ns: (0..=2).collect(),
            ps: vec![1, 2],
            qs: vec![0, 1],
            degree: 4,
            seed: 42,
            cases: 5,
        }
    }
}

impl Grid {
    /// A reduced grid for quick runs. It still reaches every superdimension regime.
    pub fn small() -> Grid {
        Grid { ms: vec![0, 1, 2], ns: vec![0, 1], ps: vec![1], qs: vec![0, 1], cases: 2, ..Grid::default() }
    }

    /// Default grid with some axes pinned.
    pub fn pinned(m: Option<usize>, n: Option<usize>, p: Option<usize>, q: Option<usize>) -> Grid {
        let d = Grid::default();
        Grid {
            ms: m.map_or(d.ms, |v| vec![v]),
            ns: n.map_or(d.ns, |v| vec![v]),
            ps: p.map_or(d.ps, |v| vec![v]),
            qs: q.map_or(d.qs, |v| vec![v]),
            ..d
        }
    }

    fn mn(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for &m in &self.ms {
            for &n in &self.ns {
                if m + n > 0 {
                    v.push((m, n));
                }
            }
        }
        v
    }

    fn pq(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for &p in &self.ps {
            for &q in &self.qs {
                if p + q > 0 {
                    v.push((p, q));
                }
            }
        }
        v
    }
}

enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

type CheckFn = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

struct Case {
    name: String,
    anchor: &'static str,
    run: CheckFn,
}

fn case(name: String, anchor: &'static str, run: impl Fn() -> Result<Outcome> + Send + Sync + 'static) -> Case {
    Case { name, anchor, run: Box::new(run) }
}

fn expect_eq(a: &E, b: &E, input: impl FnOnce() -> String) -> Outcome {
    if a == b {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("{}; difference {}", input(), render(&(a - b))))
    }
}

fn expect_zero(r: &E, input: impl FnOnce() -> String) -> Outcome {
    if r.is_zero() {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("{}; residual {}", input(), render(r)))
    }
}

/// Runs a list of sub-checks and stops at the first failure.
fn all_of(outcomes: impl IntoIterator<Item = Result<Outcome>>) -> Result<Outcome> {
    for o in outcomes {
        match o? {
            Outcome::Pass => {}
            other => return Ok(other),
        }
    }
    Ok(Outcome::Pass)
}

fn tag(m: usize, n: usize) -> String {
    format!("m={m},n={n}")
}

fn seeded(grid: &Grid, name: &str) -> TestRng {
    rng(derive_seed(grid.seed, name))
}

fn shared(m: usize, n: usize) -> Result<Sig> {
    Ok(Signature::builder().block("x", m, n).block_sharing("w", "x").build()?)
}

fn shared_with_y(m: usize, n: usize, p: usize, q: usize) -> Result<Sig> {
    Ok(Signature::builder().block("x", m, n).block_sharing("w", "x").block("y", p, q).build()?)
}

fn algebra_cases(g: &Grid) -> Vec<Case> {
    let mut out = Vec::new();
    for (m, n) in g.mn() {
        out.push(case(format!("algebra/dirac-on-powers/{}", tag(m, n)), "dirac-on-powers", move || {
            let sig = Signature::single(m, n);
            let x = E::supervector(&sig, X);
            let msup = sig.block(X).super_dim();
            all_of((1..=8u32).map(|j| {
                let lhs = dirac(&x.pow(j), X);
                let rhs = x.pow(j - 1).scale_int(c_coeff(msup, j as i64));
                Ok(expect_eq(&lhs, &rhs, || format!("j={j}")))
            }))
        }));
        out.push(case(format!("algebra/square-is-minus-norm/{}", tag(m, n)), "norm-squared", move || {
            let sig = Signature::single(m, n);
            let x = E::supervector(&sig, X);
            Ok(expect_zero(&(&x * &x + E::norm_squared(&sig, X)), || "x^2 + |x|^2".into()))
        }));
        for (p, q) in g.pq() {
            out.push(case(
                format!("algebra/blocks-anticommute/{},p={p},q={q}", tag(m, n)),
                "clifford-rules",
                move || {
                    let sig = Signature::builder().block("x", m, n).block("y", p, q).build()?;
                    let (x, y) = (E::supervector(&sig, 0), E::supervector(&sig, 1));
                    Ok(expect_zero(&(&x * &y + &y * &x), || "xy + yx".into()))
                },
            ));
        }
        let name = format!("algebra/parse-render-roundtrip/{}", tag(m, n));
        let gc = g.clone();
        out.push(case(name.clone(), "text-roundtrip", move || {
            let sig = Signature::builder().block("x", m, n).block("y", 1, 1).build()?;
            let mut r = seeded(&gc, &name);
            all_of((0..gc.cases.max(1) * 4).map(|i| {
                let b = i % 2;
                let f = random_poly(&sig, b, gc.degree, 4, true, &mut r);
                let back = parse(&sig, &render(&f))?;
                Ok(expect_eq(&back, &f, || format!("f = {}", render(&f))))
            }))
        }));
    }
    out
}

fn operators_cases(g: &Grid) -> Vec<Case> {
    let mut out = Vec::new();
    for (m, n) in g.mn() {
        let name = format!("operators/dirac-squared/{}", tag(m, n));
        let gc = g.clone();
        out.push(case(name.clone(), "dirac-squared", move || {
            let sig = Signature::single(m, n);
            let mut r = seeded(&gc, &name);
            all_of((0..gc.cases).map(|_| {
                let f = random_poly(&sig, X, gc.degree, 4, true, &mut r);
                let lhs = dirac(&dirac(&f, X), X);
                Ok(expect_eq(&lhs, &-laplacian(&f, X), || format!("f = {}", render(&f))))
            }))
        }));
        let name = format!("operators/euler-eigenvalue/{}", tag(m, n));
        let gc = g.clone();
        out.push(case(name.clone(), "euler", move || {
            let sig = Signature::single(m, n);
            let mut r = seeded(&gc, &name);
            all_of((0..gc.cases).map(|i| {
                let d = i % (gc.degree + 1);
                let f = random_homogeneous(&sig, X, d, 3, true, &mut r);
                Ok(expect_eq(&euler(&f, X), &f.scale_int(d as i64), || format!("f = {}", render(&f))))
            }))
        }));
        let name = format!("operators/cauchy-riemann-factorization/{}", tag(m, n));
        let gc = g.clone();
        out.push(case(name.clone(), "cauchy-riemann-factorization", move || {
            let sig = Signature::single(m, n);
            let mut r = seeded(&gc, &name);
            let x0 = E::x0(&sig);
            all_of((0..gc.cases).map(|_| {
                let f = random_poly(&sig, X, gc.degree, 3, true, &mut r) * (&x0 * &x0 + E::one(&sig));
                let (a, b) = factorization_sides(&f, X);
                Ok(expect_eq(&a, &b, || format!("f = {}", render(&f))))
            }))
        }));
    }
    out
}

fn sl2_cases(g: &Grid) -> Vec<Case> {
    let mut out = Vec::new();
    for (m, n) in g.mn() {
        let name = format!("sl2/relations/{}", tag(m, n));
        let gc = g.clone();
        out.push(case(name.clone(), "sl2", move || {
            let sig = Signature::single(m, n);
            let mut r = seeded(&gc, &name);
            let mut checks = Vec::new();
            for _ in 0..gc.cases {
                let f = random_poly(&sig, X, gc.degree, 4, true, &mut r);
                for (i, res) in sl2_residuals(&f, X).iter().enumerate() {
                    checks.push(Ok(expect_zero(res, || format!("relation {} on f = {}", i + 1, render(&f)))));
                }
            }
            all_of(checks)
        }));
        let name = format!("sl2/laplacian-of-powers/{}", tag(m, n));
        let gc = g.clone();
        out.push(case(name.clone(), "laplacian-powers-lemma", move || {
            let sig = Signature::single(m, n);
            let mut r = seeded(&gc, &name);
            let mut checks = Vec::new();
            for i in 0..gc.cases.max(9) {
                let (j, l) = (i % 3, (i / 3) % 3);
                let rr = random_homogeneous(&sig, X, 2 * j, 3, true, &mut r);
                let (a, b) = lemlap_sides(&rr, X, j, l);
                checks.push(Ok(expect_eq(&a, &b, || format!("j={j} l={l} R = {}", render(&rr)))));
            }
            all_of(checks)
        }));
    }
    out
}

fn pizzetti_cases(g: &Grid) -> Vec<Case> {
    let mut out = Vec::new();
    for (m, n) in g.mn() {
        if m == 0 {
            continue;
        }
        for d in 0..=g.degree {
            out.push(case(format!("pizzetti/oracle/{},d={d}", tag(m, n)), "pizzetti", move || {
                let sig = Signature::single(m, n);
                all_of(block_monomials(&sig, X, d).into_iter().map(|mono| {
                    let f = E::from_mono(&sig, mono, Scalar::one());
                    let a = sphere_integral(&f, X)?;
                    let b = sphere_integral_oracle(&f, X)?;
                    Ok(expect_eq(&a, &b, || format!("monomial {}", render(&f))))
                }))
            }));
        }
        let msup = m as i64 - 2 * n as i64;
        if is_normalized_case(msup) {
            let k = (-msup / 2) as usize;
            out.push(case(format!("pizzetti/negative-even-vanishing/{}", tag(m, n)), "pizzetti", move || {
                let sig = Signature::single(m, n);
                if !sigma(msup).is_zero() {
                    return Ok(Outcome::Fail(format!("sigma_{msup} = {}", crate::text::render_scalar(&sigma(msup)))));
                }
                let one = normalized_integral(&E::one(&sig), X, &Weight::Unit)?;
                if one != E::one(&sig) {
                    return Ok(Outcome::Fail(format!("normalized integral of 1 is {}", render(&one))));
                }
                all_of((0..=2 * k + 1).flat_map(|d| block_monomials(&sig, X, d)).map(|mono| {
                    let f = E::from_mono(&sig, mono, Scalar::one());
                    Ok(expect_zero(&sphere_integral(&f, X)?, || format!("monomial {}", render(&f))))
                }))
            }));
        }
    }
    out
}

/// Re (x1 + i x2)^l, harmonic in every superdimension once m >= 2.
fn planar_harmonic(sig: &Sig, b: BlockId, l: usize) -> E {
    let (x1, x2) = (E::var(sig, b, 1), E::var(sig, b, 2));
    let mut h = E::zero(sig);
    for r in 0..=l / 2 {
        let c = BigRational::from_integer(binomial(l as u64, 2 * r as u64));
        let c = if r % 2 == 1 { -c } else { c };
        h = h + (x1.pow((l - 2 * r) as u32) * x2.pow(2 * r as u32)).scale_rational(&c);
    }
    h
}

/// A random spherical harmonic of degree l in block 1. The projection of a random
/// polynomial is singular when M + 2l - 2 <= 0, and then a planar harmonic is used.
fn harmonic_input(sig: &Sig, l: usize, r: &mut TestRng) -> Result<Option<E>> {
    match harmonic_project(&random_homogeneous(sig, 1, l, 3, true, r), 1) {
        Ok(h) if !h.is_zero() => Ok(Some(h)),
        Ok(_) | Err(Error::SingularProjection) if sig.block(1).m >= 2 => Ok(Some(planar_harmonic(sig, 1, l))),
        Ok(_) | Err(Error::SingularProjection) => Ok(None),
        Err(e) => Err(e),
    }
}

fn funkhecke_cases(g: &Grid) -> Vec<Case> {
    let mut out = Vec::new();
    for (m, n) in g.mn() {
        let msup = m as i64 - 2 * n as i64;
        if m >= 1 {
            for l in 0..=3usize {
                let name = format!("funkhecke/theorem/{},l={l}", tag(m, n));
                let gc = g.clone();
                out.push(case(name.clone(), "funk-hecke", move || {
                    let sig = shared(m, n)?;
                    let mut r = seeded(&gc, &name);
                    let Some(h) = harmonic_input(&sig, l, &mut r)? else {
                        return Ok(Outcome::Skip("no harmonic of this degree is reachable".into()));
                    };
                    all_of((0..=5u64).map(|j| {
                        let (a, b) = funk_hecke_sides(&h, X, 1, l as u64, j)?;
                        if (j + l as u64) % 2 == 1 && !a.is_zero() {
                            return Ok(Outcome::Fail(format!("j + l odd but integral is {}", render(&a))));
                        }
                        Ok(expect_eq(&a, &b, || format!("j={j} H = {}", render(&h))))
                    }))
                }));
            }
        }
        if is_normalized_case(msup) {
            let k = (-msup / 2) as usize;
            for l in 0..=(2 * k + 1).min(3) {
                let name = format!("funkhecke/normalized/{},l={l}", tag(m, n));
                let gc = g.clone();
                out.push(case(name.clone(), "funk-hecke-normalized", move || {
                    let sig = shared(m, n)?;
                    let mut r = seeded(&gc, &name);
                    let Some(h) = harmonic_input(&sig, l, &mut r)? else {
                        return Ok(Outcome::Skip("no harmonic of this degree is reachable".into()));
                    };
                    all_of((0..=(2 * k + 1 - l).min(5)).map(|j| {
                        let (a, b) = funk_hecke_normalized_sides(&h, X, 1, l as u64, j as u64)?;
                        Ok(expect_eq(&a, &b, || format!("j={j} H = {}", render(&h))))
                    }))
                }));
            }
        }
    }
    out
}

fn random_ck_data(sig: &Sig, y: BlockId, r: &mut TestRng) -> E {
    let max = match CkCase::of(sig, X) {
        CkCase::I => 4,
        _ => (-sig.block(X).super_dim() as usize).min(4),
    };
    random_poly(sig, y, max, 3, true, r)
}

fn ck_checks(sig: &Sig, f0: &E, param: Param, f2k1: Option<&E>) -> Result<Outcome> {
    let s = ck_extend(f0, X, param, f2k1)?;
    let f = s.materialize(sig);
    let input = || {
        let mut s = format!("F0 = {}", render(f0));
        if let Some(t) = f2k1 {
            s.push_str(&format!(", F_2k+1 = {}", render(t)));
        }
        s
    };
    all_of([
        Ok(expect_zero(&monogenic_residual(&f, X, param).residual, input)),
        Ok(expect_eq(&restrict_to_origin(&f, X)?, f0, input)),
        Ok(expect_eq(&ck_closed_form(f0, X, param, f2k1)?.materialize(sig), &f, input)),
        Ok(expect_eq(&ck_operator_form(f0, X, param, f2k1)?, &f, input)),
    ])
}

fn ck_suite_cases(g: &Grid) -> Vec<Case> {
    let mut out = Vec::new();
    for (m, n) in g.mn() {
        for (p, q) in g.pq() {
            let name = format!("ck/block-parameter/{},p={p},q={q}", tag(m, n));
            let gc = g.clone();
            out.push(case(name.clone(), "ck-extension", move || {
                let sig = Signature::builder().block("x", m, n).block("y", p, q).build()?;
                let mut r = seeded(&gc, &name);
                let case_ii = CkCase::of(&sig, X) == CkCase::II;
                let mut checks = Vec::new();
                for _ in 0..gc.cases {
                    let f0 = random_ck_data(&sig, 1, &mut r);
                    checks.push(ck_checks(&sig, &f0, Param::Block(1), None));
                    if case_ii {
                        let t = random_poly(&sig, 1, 3, 3, true, &mut r);
                        checks.push(ck_checks(&sig, &f0, Param::Block(1), Some(&t)));
                    }
                }
                all_of(checks)
            }));
        }
        out.push(case(format!("ck/x0-parameter/{}", tag(m, n)), "ck-extension-x0", move || {
            let sig = Signature::single(m, n);
            let x0 = E::x0(&sig);
            let case = CkCase::of(&sig, X);
            let top = match case {
                CkCase::I => 5,
                _ => (-sig.block(X).super_dim()) as u32,
            };
            let mut checks = Vec::new();
            for d in 0..=top {
                let f0 = x0.pow(d).scale_int(d as i64 + 1) + E::from_int(&sig, 2);
                checks.push(ck_checks(&sig, &f0, Param::X0, None));
                if case == CkCase::II {
                    let t = x0.pow(3) - x0.clone();
                    checks.push(ck_checks(&sig, &f0, Param::X0, Some(&t)));
                }
            }
            all_of(checks)
        }));
    }
    out
}

fn planewave_cases(g: &Grid) -> Vec<Case> {
    let mut out = Vec::new();
    let w: BlockId = 1;
    for (m, n) in g.mn() {
        for (p, q) in g.pq() {
            let name = format!("planewave/reproduces-ck/{},p={p},q={q}", tag(m, n));
            let gc = g.clone();
            out.push(case(name.clone(), "plane-wave-decomposition", move || {
                let sig = shared_with_y(m, n, p, q)?;
                let y = 2;
                let mut r = seeded(&gc, &name);
                let case_ii = CkCase::of(&sig, X) == CkCase::II;
                let mut checks = Vec::new();
                for _ in 0..gc.cases {
                    let f0 = random_ck_data(&sig, y, &mut r);
                    let t = case_ii.then(|| random_poly(&sig, y, 2, 2, true, &mut r));
                    let ck = ck_extend(&f0, X, Param::Block(y), t.as_ref())?.materialize(&sig);
                    let pw = pw_decomposition(&f0, X, w, Param::Block(y), t.as_ref())?;
                    checks.push(Ok(expect_eq(&pw, &ck, || format!("F0 = {}", render(&f0)))));
                }
                all_of(checks)
            }));
        }
        if CkCase::of(&Signature::single(m, n), X) == CkCase::II {
            let name = format!("planewave/antiderivative-independence/{}", tag(m, n));
            let gc = g.clone();
            out.push(case(name.clone(), "antiderivative-independence", move || {
                let k = (2 * n - m) / 2;
                let mut checks = Vec::new();
                for (p, q) in gc.pq() {
                    let sig = shared_with_y(m, n, p, q)?;
                    let mut r = seeded(&gc, &format!("{name}/p={p},q={q}"));
                    let t = random_poly(&sig, 2, 2, 3, true, &mut r);
                    let a = pw_antiderivative(&t, Param::Block(2), 2 * k + 1)?;
                    if dirac_pow(&a, 2, 2 * k + 1) != t {
                        return Ok(Outcome::Fail(format!("p={p} q={q}: D^(2k+1) A differs from {}", render(&t))));
                    }
                    let extra = random_poly(&sig, 2, 2 * k, 4, true, &mut r);
                    let i1 = pw_integral_exp(&a, X, w, Param::Block(2), PwMode::Sphere, None)?;
                    let i2 = pw_integral_exp(&(&a + &extra), X, w, Param::Block(2), PwMode::Sphere, None)?;
                    checks.push(Ok(expect_eq(&i1, &i2, || format!("p={p} q={q} added {}", render(&extra)))));
                }
                let sig = shared(m, n)?;
                let x0 = E::x0(&sig);
                let t = x0.pow(2) + E::from_int(&sig, 5);
                let b = pw_antiderivative(&t, Param::X0, 2 * k + 1)?;
                let extra = x0.pow(2 * k as u32).scale_int(3) - if k > 0 { x0.scale_int(7) } else { E::zero(&sig) };
                let i1 = pw_integral_exp(&b, X, w, Param::X0, PwMode::Sphere, None)?;
                let i2 = pw_integral_exp(&(&b + &extra), X, w, Param::X0, PwMode::Sphere, None)?;
                checks.push(Ok(expect_eq(&i1, &i2, || format!("x0 parameter, added {}", render(&extra)))));
                all_of(checks)
            }));
        }
        out.push(case(format!("planewave/reproduces-ck-x0/{}", tag(m, n)), "plane-wave-decomposition-x0", move || {
            let sig = shared(m, n)?;
            let x0 = E::x0(&sig);
            let case_ii = CkCase::of(&sig, X) == CkCase::II;
            let top = match CkCase::of(&sig, X) {
                CkCase::I => 4,
                _ => (-sig.block(X).super_dim()) as u32,
            };
            all_of((0..=top).map(|d| {
                let f0 = x0.pow(d).scale_int(d as i64 + 2) + E::from_int(&sig, 1);
                let t = case_ii.then(|| x0.pow(2) - x0.scale_int(3));
                let ck = ck_extend(&f0, X, Param::X0, t.as_ref())?.materialize(&sig);
                let pw = pw_decomposition(&f0, X, w, Param::X0, t.as_ref())?;
                Ok(expect_eq(&pw, &ck, || format!("F0 = {}", render(&f0))))
            }))
        }));
        if m >= 1 {
            let degree = g.degree;
            out.push(case(
                format!("planewave/holomorphic-integral/{}", tag(m, n)),
                "holomorphic-plane-wave-integral",
                move || {
                    let sig = shared(m, n)?;
                    let msup = sig.block(X).super_dim();
                    let mut gs: Vec<HoloFn> = (0..=4).map(HoloFn::power).collect();
                    if (1..=3).contains(&msup) {
                        gs.push(HoloFn::power(-msup));
                    }
                    let mut checks = Vec::new();
                    for gf in &gs {
                        for l in [1u8, 2] {
                            let (a, b) = pw_sphere_integral_holo(gf, l, &sig, X, w, degree)?;
                            checks.push(Ok(expect_eq(&a, &b, || format!("g = {gf:?}, l = {l}"))));
                        }
                    }
                    all_of(checks)
                },
            ));
        }
        let msup = m as i64 - 2 * n as i64;
        if is_normalized_case(msup) && (-4..0).contains(&msup) {
            let k = (-msup / 2) as usize;
            out.push(case(
                format!("planewave/normalized-monomials/{}", tag(m, n)),
                "normalized-plane-wave-integral",
                move || {
                    let sig = shared(m, n)?;
                    let mut checks = Vec::new();
                    for l in [1u8, 2] {
                        for s in 0..=k {
                            if 2 * s + l as usize - 1 > 2 * k {
                                continue;
                            }
                            let v = pw_normalized_monomial(s, l, &sig, X, w)?;
                            checks.push(Ok(if v.agree() {
                                Outcome::Pass
                            } else {
                                Outcome::Fail(format!(
                                    "s={s} l={l}: integral {} kernel {} laplacian {}",
                                    render(&v.integral),
                                    render(&v.kernel),
                                    render(&v.laplacian)
                                ))
                            }));
                        }
                    }
                    all_of(checks)
                },
            ));
        }
    }
    out
}

fn cauchy_admissible(m: usize, n: usize) -> bool {
    let msup = m as i64 - 2 * n as i64;
    !(msup < 0 && (msup + 1) % 2 == 0)
}

fn cauchy_cases(g: &Grid) -> Vec<Case> {
    let mut out = Vec::new();
    for (m, n) in g.mn() {
        if !cauchy_admissible(m, n) {
            out.push(case(format!("cauchy/kernel/{}", tag(m, n)), "cauchy-kernel", || {
                Ok(Outcome::Skip("M + 1 lies in -2N0".into()))
            }));
            continue;
        }
        let series_degree = g.degree + 2;
        out.push(case(format!("cauchy/kernel/{}", tag(m, n)), "cauchy-kernel", move || {
            let frac = cauchy_kernel(m, n)?;
            let f = frac.element();
            let series = cauchy_kernel_series(m, n, series_degree)?;
            let s = series.element();
            let residual = monogenic_residual(&s, X, Param::X0).residual.truncate_block(X, series_degree - 1);
            all_of([
                Ok(expect_eq(&f, &cauchy_kernel_sum(m, n)?, || "fraction against bosonic sum".into())),
                Ok(expect_zero(&cauchy_residual(&f, X), || "fraction".into())),
                Ok(expect_zero(&residual, || "Taylor series".into())),
                Ok(expect_eq(
                    &expand_radial(&f, &series.sig, series_degree)?,
                    &s.truncate_block(X, series_degree),
                    || "re-expanded fraction against series".into(),
                )),
            ])
        }));
        let degree = g.degree;
        out.push(case(format!("cauchy/plane-wave-decomposition/{}", tag(m, n)), "cauchy-plane-waves", move || {
            let r = verify_pwdck(m, n, if m == 0 { 2 * n + 1 } else { degree })?;
            Ok(expect_eq(&r.kernel, &r.decomposition, || format!("{:?}", r.case)))
        }));
        if m >= 1 {
            out.push(case(
                format!("cauchy/laplace-fundamental-solution/{}", tag(m, n)),
                "laplace-fundamental-solution",
                move || match fundamental_solution_laplace(m, n) {
                    Ok(k) => Ok(expect_zero(&laplace_residual(&k), || "Laplacian away from the origin".into())),
                    Err(Error::Domain(why)) => Ok(Outcome::Skip(why)),
                    Err(e) => Err(e),
                },
            ));
        }
    }
    out.push(case("cauchy/appell-log".into(), "appell-log", || {
        let fam = appell_log(6);
        for l in 0..=12 {
            if &fam.a[l] * factorial_q(l as u64) != harmonic_number(l) {
                return Ok(Outcome::Fail(format!("a_{l} = {}", fam.a[l])));
            }
        }
        Ok(if fam.derivative_identities_hold() { Outcome::Pass } else { Outcome::Fail("G derivative chain".into()) })
    }));
    out.push(case("cauchy/sigma-product".into(), "sigma-product", || {
        for msup in 1..=6 {
            let (a, b) = sigma_product(msup);
            if a != b {
                return Ok(Outcome::Fail(format!("M={msup}")));
            }
        }
        Ok(Outcome::Pass)
    }));
    out
}

fn cases_for(name: &str, g: &Grid) -> Result<Vec<Case>> {
    Ok(match name {
        "algebra" => algebra_cases(g),
        "operators" => operators_cases(g),
        "sl2" => sl2_cases(g),
        "pizzetti" => pizzetti_cases(g),
        "funkhecke" => funkhecke_cases(g),
        "ck" => ck_suite_cases(g),
        "planewave" => planewave_cases(g),
        "cauchy" => cauchy_cases(g),
        "all" => {
            let mut v = Vec::new();
            for s in SUITES {
                v.extend(cases_for(s, g)?);
            }
            v
        }
        other => return Err(Error::Domain(format!("unknown suite {other:?}"))),
    })
}

/// Runs a suite on the current rayon pool.
pub fn run_suite(name: &str, grid: &Grid) -> Result<Vec<CheckResult>> {
    let cases = cases_for(name, grid)?;
    Ok(cases
        .par_iter()
        .map(|c| match (c.run)() {
            Ok(Outcome::Pass) => CheckResult::pass(&c.name, c.anchor),
            Ok(Outcome::Fail(w)) => CheckResult::fail(&c.name, c.anchor, w),
            Ok(Outcome::Skip(r)) => CheckResult::skipped(&c.name, c.anchor, r),
            Err(e) => CheckResult::fail(&c.name, c.anchor, format!("error: {e}")),
        })
        .collect())
}
