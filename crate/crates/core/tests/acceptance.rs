//! Acceptance gate: one test per shipped guarantee, each printing a
//! `criterion N: pass` line (visible with `--nocapture`) so a run reads as
//! a checklist. Every bound asserted here is a contract of the crate, not
//! a regression snapshot; see the per-test comments for where each number
//! comes from.

use std::path::Path;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hasse_forge::finite_field::build_field;
use hasse_forge::regdet::{
    self, bernoulli_poly, hurwitz_zeta, hurwitz_zeta_deriv0, log_gamma, EigenProgression,
    SampleStatus,
};
use hasse_forge::spectrum::{
    build_tp_model, matrix_log_q, spectrum_from_zeta, CMatrix, TPModel,
};
use hasse_forge::tolerances::Tolerances;
use hasse_forge::varieties::io::{parse_variety_file, parse_variety_str};
use hasse_forge::varieties::zeta::{zeta_from_counts, ZetaRational};
use hasse_forge::varieties::{gather_counts, VarietySpec};
use hasse_forge::witt::{FqRing, Integers, WittContext, WittRing, WittVector};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The four standard sample points used across the determinant criteria.
fn samples() -> [Complex64; 4] {
    [c(2.0, 0.0), c(3.0, 0.0), c(1.5, 0.7), c(2.0, -1.3)]
}

fn fixture(name: &str) -> VarietySpec {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    parse_variety_file(&path).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

/// The supported variety kinds, one fixture each: projective space,
/// Weierstrass curve, product, and a custom count table.
fn all_specs() -> Vec<(&'static str, VarietySpec)> {
    let custom = parse_variety_str(
        r#"{"kind":"custom","base":{"p":2,"r":1},"counts":[3,5],"betti":[1,0,1]}"#,
    )
    .unwrap();
    vec![
        ("P1/F3", fixture("p1_f3.json")),
        ("P2/F2", fixture("p2_f2.json")),
        ("P1xP1/F3", fixture("p1xp1_f3.json")),
        ("EC/F5", fixture("ec_f5.json")),
        ("custom P1/F2", custom),
    ]
}

/// Exhaustive-count zeta reconstruction, the only route used here.
fn zeta_of(spec: &VarietySpec) -> ZetaRational {
    let betti = spec.betti();
    let need = betti.iter().sum::<usize>().div_ceil(2);
    let counts = gather_counts(spec, need).unwrap();
    zeta_from_counts(&counts, &betti).unwrap()
}

fn model_of(spec: &VarietySpec) -> TPModel {
    build_tp_model(&spectrum_from_zeta(&zeta_of(spec)).unwrap())
}

fn assert_within(elapsed: Duration, budget: Duration, what: &str) {
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:?}, budget {budget:?}"
    );
}

/// The headline identity end to end: the zeta function from exhaustive
/// point counts equals the quotient of regularized determinants at every
/// sample, to 1e-8 relative. Pole samples must land on the vanishing
/// locus of the even parity class instead.
#[test]
fn criterion_1_zeta_equals_determinant_quotient() {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut worst = 0.0f64;
    for name in ["p1_f3.json", "p2_f2.json", "p1xp1_f3.json", "ec_f5.json"] {
        let spec = fixture(name);
        let report = regdet::verify_theorem_a(&spec, &samples(), &tol)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(report.ok(), "{name}: {:?}", report.rows);
        for row in &report.rows {
            match row.status {
                SampleStatus::Ok => {
                    assert!(
                        row.relerr <= 1e-8,
                        "{name} at s = {}: relerr {:.3e}",
                        row.s,
                        row.relerr
                    );
                    worst = worst.max(row.relerr);
                }
                // A vanishing side must be matched by the rational zeta:
                // relerr stores the locus coincidence there.
                SampleStatus::VanishingDenominator | SampleStatus::VanishingNumerator => {
                    assert!(row.relerr <= 1e-6, "{name} at s = {}: loci differ", row.s);
                }
                SampleStatus::Violated => unreachable!("covered by report.ok()"),
            }
        }
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(5), "identity sweep");
    println!(
        "criterion 1: pass (4 varieties x 4 samples, worst relerr {worst:.3e}, {elapsed:?})"
    );
}

/// Euler factor identity: the regularized product over one eigenvalue
/// progression equals 1 - lambda q^{-s}, and the vanishing loci agree in
/// both directions. 252 triples, well above the 100 minimum.
#[test]
fn criterion_2_euler_factor_grid() {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut checked = 0usize;
    let mut worst = 0.0f64;

    // Off-locus grid: Re(s) >= 1.5 and |lambda| <= q keep the factor away
    // from zero, so these must all be non-vanishing and compare directly.
    let angles = [0.0, 0.3, std::f64::consts::FRAC_PI_3, -std::f64::consts::FRAC_PI_3, 2.1, -2.9];
    for q in [2u128, 3, 5] {
        let qf = q as f64;
        for w in [0i32, 1, 2] {
            for &theta in &angles {
                let lambda = Complex64::from_polar(qf.powf(w as f64 / 2.0), theta);
                let prog = EigenProgression::new(lambda, q, 1);
                for s in samples() {
                    let r = regdet::regdet_progression(&prog, s, &tol).unwrap();
                    let euler = Complex64::new(1.0, 0.0) - lambda * (-s * qf.ln()).exp();
                    assert!(euler.norm() > 0.1, "grid point unexpectedly near the locus");
                    assert!(!r.vanishing, "false vanishing at lambda {lambda}, s {s}");
                    let relerr = (r.value - euler).norm() / euler.norm();
                    assert!(
                        relerr <= 1e-8,
                        "lambda {lambda}, q {q}, s {s}: relerr {relerr:.3e}"
                    );
                    worst = worst.max(relerr);
                    checked += 1;
                }
            }
        }
    }

    // On-locus grid: s = alpha_0 + i (2 pi / ln q) k makes both sides
    // vanish; the regularized value must be exactly zero.
    for q in [2u128, 3, 5] {
        let qf = q as f64;
        for w in [0i32, 2] {
            for theta in [0.3, -1.2] {
                let lambda = Complex64::from_polar(qf.powf(w as f64 / 2.0), theta);
                let prog = EigenProgression::new(lambda, q, 1);
                for k in [-2i64, 0, 3] {
                    let s = prog.alpha0 + c(0.0, prog.step * k as f64);
                    let r = regdet::regdet_progression(&prog, s, &tol).unwrap();
                    let euler = Complex64::new(1.0, 0.0) - lambda * (-s * qf.ln()).exp();
                    assert!(r.vanishing, "missed vanishing at lambda {lambda}, k {k}");
                    assert_eq!(r.value, Complex64::new(0.0, 0.0));
                    assert!(euler.norm() <= 1e-8, "loci differ: |euler| = {:.3e}", euler.norm());
                    checked += 1;
                }
            }
        }
    }

    assert!(checked >= 100, "only {checked} triples");
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(2), "euler factor grid");
    println!("criterion 2: pass ({checked} triples, worst relerr {worst:.3e}, {elapsed:?})");
}

/// The anomalous dimension of s - Theta vanishes on every parity class of
/// every supported spec; the cancellation is arranged to be exact in
/// floating point, and 1e-10 is the contracted bound.
#[test]
fn criterion_3_anomalous_dimension_zero() {
    let tol = Tolerances::default();
    let mut classes = 0usize;
    for (name, spec) in all_specs() {
        let model = model_of(&spec);
        for parity in 0..2 {
            for s in samples() {
                let dim = regdet::dim_infty(&model, parity, s, &tol);
                assert!(
                    dim.norm() <= 1e-10,
                    "{name} parity {parity} at s = {s}: dim_oo = {dim}"
                );
            }
            classes += 1;
        }
    }
    println!("criterion 3: pass ({classes} parity classes x 4 samples, all |dim_oo| <= 1e-10)");
}

/// Scaling law at delta = 1/(2 pi): rescaling s - Theta multiplies the
/// regularized determinant by delta^{dim_oo}, ratio 1 within 1e-8.
/// Samples on a vanishing locus scale trivially (both sides zero).
#[test]
fn criterion_4_scaling_law() {
    let tol = Tolerances::default();
    let delta = 1.0 / std::f64::consts::TAU;
    let mut worst = 0.0f64;
    for (name, spec) in all_specs() {
        let model = model_of(&spec);
        for parity in 0..2 {
            for s in samples() {
                let rep = regdet::scaling_check(&model, parity, s, delta, &tol)
                    .unwrap_or_else(|e| panic!("{name} parity {parity} s {s}: {e}"));
                assert!(rep.ok, "{name} parity {parity} at s = {s}: ratio {}", rep.ratio);
                if !rep.vanishing {
                    let err = (rep.ratio - 1.0).norm();
                    assert!(err <= 1e-8, "{name}: ratio off by {err:.3e}");
                    worst = worst.max(err);
                }
            }
        }
    }
    println!("criterion 4: pass (delta = 1/2pi, worst |ratio - 1| = {worst:.3e})");
}

/// Weil bounds on every extracted eigenvalue, and exact integer equality
/// of the elliptic numerator 1 + 3t + 5t^2 reconstructed from N_1, N_2.
#[test]
fn criterion_5_weil_bounds_and_elliptic_numerator() {
    let mut eigenvalues = 0usize;
    for (name, spec) in all_specs() {
        let z = zeta_of(&spec);
        let spectrum = spectrum_from_zeta(&z).unwrap();
        for (i, entries) in spectrum.by_degree.iter().enumerate() {
            let expected = (z.q as f64).powf(i as f64 / 2.0);
            for e in entries {
                assert!(
                    (e.lambda.norm() - expected).abs() <= 1e-9 * expected,
                    "{name}: |lambda| = {} in degree {i}, want {expected}",
                    e.lambda.norm()
                );
                eigenvalues += 1;
            }
        }
    }

    let z = zeta_of(&fixture("ec_f5.json"));
    let want: Vec<BigInt> = [1, 3, 5].iter().map(|&x| BigInt::from(x)).collect();
    assert_eq!(z.polys[1], want, "elliptic numerator");
    println!("criterion 5: pass ({eigenvalues} eigenvalues on the Weil circle; P_1 = 1 + 3t + 5t^2)");
}

fn int_vec(ctx: &WittContext<Integers>, parts: &[i64]) -> WittVector<BigInt> {
    ctx.from_components(parts.iter().map(|&x| BigInt::from(x)).collect())
}

/// `p . a` by repeated addition, the ring-theoretic meaning of F V = p.
fn times_p<R: WittRing>(
    ctx: &WittContext<R>,
    a: &WittVector<R::Elem>,
    p: u64,
) -> WittVector<R::Elem> {
    let mut acc = a.clone();
    for _ in 1..p {
        acc = ctx.add(&acc, a).unwrap();
    }
    acc
}

/// Witt vector suite: ghost homomorphism on 10^3 random pairs per prime,
/// F V = p, Teichmueller multiplicativity, the exhaustive W_n(F_p) = Z/p^n
/// ring tables through p^n <= 27, and xi_image(p, n, 1) = p.
#[test]
fn criterion_6_witt_suite() {
    let start = Instant::now();

    // Ghost coordinates are a ring homomorphism: 1000 random pairs in
    // W_3(Z) for each p.
    let mut rng = ChaCha8Rng::seed_from_u64(1717);
    for p in [2u64, 3] {
        let ctx = WittContext::new(p, Integers).unwrap();
        for _ in 0..1000 {
            let mut draw = || {
                int_vec(
                    &ctx,
                    &[rng.gen_range(-99..=99), rng.gen_range(-99..=99), rng.gen_range(-99..=99)],
                )
            };
            let (a, b) = (draw(), draw());
            let ga = ctx.ghost(&a).unwrap();
            let gb = ctx.ghost(&b).unwrap();
            let gsum = ctx.ghost(&ctx.add(&a, &b).unwrap()).unwrap();
            let gprod = ctx.ghost(&ctx.mul(&a, &b).unwrap()).unwrap();
            for m in 0..3 {
                assert_eq!(gsum[m], &ga[m] + &gb[m]);
                assert_eq!(gprod[m], &ga[m] * &gb[m]);
            }
        }
    }

    // F V = p on W_3(Z).
    for p in [2u64, 3] {
        let ctx = WittContext::new(p, Integers).unwrap();
        for _ in 0..200 {
            let a = int_vec(
                &ctx,
                &[rng.gen_range(-99..=99), rng.gen_range(-99..=99), rng.gen_range(-99..=99)],
            );
            let fv = ctx.frobenius(&ctx.verschiebung(&a).unwrap()).unwrap();
            assert_eq!(fv, times_p(&ctx, &a, p), "F V != {p} at {}", ctx.format(&a));
        }
    }

    // Teichmueller lifts are multiplicative, over Z and over F_9.
    let ctx2 = WittContext::new(2, Integers).unwrap();
    for x in -6i64..=6 {
        for y in -6i64..=6 {
            let lhs = ctx2
                .mul(&ctx2.teichmuller(BigInt::from(x), 3), &ctx2.teichmuller(BigInt::from(y), 3))
                .unwrap();
            assert_eq!(lhs, ctx2.teichmuller(BigInt::from(x * y), 3));
        }
    }
    let f9 = build_field(3, 2, None).unwrap();
    let ctx9 = WittContext::new(3, FqRing { field: f9.clone() }).unwrap();
    let elems: Vec<_> = f9.elements().unwrap().collect();
    for x in &elems {
        for y in &elems {
            let lhs = ctx9
                .mul(&ctx9.teichmuller(x.clone(), 3), &ctx9.teichmuller(y.clone(), 3))
                .unwrap();
            assert_eq!(lhs, ctx9.teichmuller(f9.mul(x, y).unwrap(), 3));
        }
    }

    // Exhaustive ring-table equality W_n(F_p) = Z/p^n for p^n <= 27.
    for (p, n) in [
        (2u64, 1usize),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 1),
        (3, 2),
        (3, 3),
        (5, 1),
        (5, 2),
        (7, 1),
        (11, 1),
        (13, 1),
        (17, 1),
        (19, 1),
        (23, 1),
    ] {
        let modulus = (p as u128).pow(n as u32);
        assert!(modulus <= 27, "table out of scope");
        let fp = build_field(p, 1, None).unwrap();
        let ctx = WittContext::new(p, FqRing { field: fp.clone() }).unwrap();
        let mut all = vec![Vec::new()];
        for _ in 0..n {
            all = all
                .into_iter()
                .flat_map(|v: Vec<u64>| {
                    (0..p).map(move |d| {
                        let mut w = v.clone();
                        w.push(d);
                        w
                    })
                })
                .collect();
        }
        let vectors: Vec<_> = all
            .into_iter()
            .map(|digits| {
                ctx.from_components(digits.iter().map(|&d| fp.from_u64(d)).collect())
            })
            .collect();
        let mut images = std::collections::HashSet::new();
        for a in &vectors {
            images.insert(ctx.wn_fp_iso(a).unwrap());
        }
        assert_eq!(images.len() as u128, modulus, "W_{n}(F_{p}) not a bijection");
        for a in &vectors {
            let ia = ctx.wn_fp_iso(a).unwrap();
            for b in &vectors {
                let ib = ctx.wn_fp_iso(b).unwrap();
                let isum = ctx.wn_fp_iso(&ctx.add(a, b).unwrap()).unwrap();
                let iprod = ctx.wn_fp_iso(&ctx.mul(a, b).unwrap()).unwrap();
                assert_eq!(isum, (ia + ib) % modulus, "W_{n}(F_{p}) addition table");
                assert_eq!(iprod, (ia * ib) % modulus, "W_{n}(F_{p}) multiplication table");
            }
        }
    }

    // xi_image(p, n, 1) = p in W_n(Z).
    for p in [2u64, 3, 5, 7] {
        let ctx = WittContext::new(p, Integers).unwrap();
        for n in 1..=3usize {
            let xi = ctx.xi_image(n, BigInt::one()).unwrap();
            assert_eq!(xi, times_p(&ctx, &ctx.one(n), p), "xi image at p = {p}, n = {n}");
        }
    }

    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(5), "witt suite");
    println!("criterion 6: pass (ghost/FV/Teichmueller/ring tables/xi, {elapsed:?})");
}

/// Special function oracles: Hurwitz zeta at nonpositive integers against
/// Bernoulli polynomials, the Lerch derivative at 0 against a finite
/// difference, and log Gamma at factorial and half-integer anchors.
#[test]
fn criterion_7_special_functions() {
    // zeta_H(-n, a) = -B_{n+1}(a) / (n+1), relative to the value scale.
    let points = [c(1.0, 0.0), c(0.5, 0.0), c(2.5, 0.0), c(1.0, 1.0), c(0.3, -0.7), c(3.2, 0.4)];
    for n in 0..=4u32 {
        for &a in &points {
            let lhs = hurwitz_zeta(c(-(n as f64), 0.0), a).unwrap();
            let rhs = -bernoulli_poly((n + 1) as usize, a) / (n as f64 + 1.0);
            assert!(
                (lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()),
                "zeta_H(-{n}, {a}): {lhs} vs {rhs}"
            );
        }
    }

    // d/dz zeta_H(z, a) at z = 0 against a central difference.
    let h = 1e-6;
    for &a in &points {
        let fd = (hurwitz_zeta(c(h, 0.0), a).unwrap() - hurwitz_zeta(c(-h, 0.0), a).unwrap())
            / (2.0 * h);
        let exact = hurwitz_zeta_deriv0(a).unwrap();
        assert!((fd - exact).norm() <= 1e-5, "deriv0({a}): fd {fd} vs {exact}");
    }

    // log Gamma anchors: factorials and the half-integer ladder.
    let half = std::f64::consts::PI.sqrt();
    let anchors = [
        (1.0, 1.0f64),
        (2.0, 1.0),
        (3.0, 2.0),
        (5.0, 24.0),
        (8.0, 5040.0),
        (0.5, half),
        (1.5, half / 2.0),
        (3.5, 15.0 * half / 8.0),
        (4.5, 105.0 * half / 16.0),
    ];
    for (x, gamma) in anchors {
        let lg = log_gamma(c(x, 0.0)).unwrap();
        assert!(
            (lg - c(gamma.ln(), 0.0)).norm() <= 1e-12,
            "log Gamma({x}): {lg} vs ln {gamma}"
        );
    }
    println!("criterion 7: pass (Bernoulli identity, Lerch derivative, log Gamma anchors)");
}

/// Draws eigenvalues pairwise separated by at least 0.4 with moduli in
/// [0.6, 3], so every cluster decision is unambiguous.
fn draw_eigenvalues(rng: &mut ChaCha8Rng, count: usize) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(count);
    while out.len() < count {
        let l = Complex64::from_polar(
            rng.gen_range(0.6..3.0),
            rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
        );
        if out.iter().all(|&m| (l - m).norm() >= 0.4) {
            out.push(l);
        }
    }
    out
}

/// Base-q matrix logarithm round trip on randomized well-conditioned
/// matrices up to size 6 with genuine Jordan blocks: q^Theta = M within
/// 1e-9, the semisimple and unipotent parts commute, and the unipotent
/// part is nilpotent of the block size.
#[test]
fn criterion_8_matrix_log_round_trip() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    // Block patterns cover sizes 2..6 with and without Jordan structure.
    let patterns: [&[usize]; 8] =
        [&[1, 1], &[2], &[2, 1], &[3], &[2, 2], &[3, 1, 1], &[2, 2, 1], &[3, 2, 1]];
    let mut trials = 0usize;
    for (t, pattern) in patterns.iter().cycle().take(24).enumerate() {
        let n: usize = pattern.iter().sum();
        let q = [2.0f64, 3.0, 5.0][t % 3];
        let eigenvalues = draw_eigenvalues(&mut rng, pattern.len());

        // Jordan form J, then a mild random conjugation M = V J V^{-1}.
        let mut j = CMatrix::zeros(n);
        let mut row = 0usize;
        for (b, &size) in pattern.iter().enumerate() {
            for k in 0..size {
                j[(row + k, row + k)] = eigenvalues[b];
                if k + 1 < size {
                    j[(row + k, row + k + 1)] = Complex64::new(1.0, 0.0);
                }
            }
            row += size;
        }
        let mut v = CMatrix::identity(n);
        let spread = 0.5 / n as f64;
        for r in 0..n {
            for col in 0..n {
                v[(r, col)] += Complex64::new(
                    rng.gen_range(-spread..spread),
                    rng.gen_range(-spread..spread),
                );
            }
        }
        let vinv = v.inverse().expect("conjugation stays invertible");
        let m = v.mul(&j).mul(&vinv);

        let log = matrix_log_q(&m, q, &tol).unwrap_or_else(|e| panic!("trial {t}: {e:?}"));

        // Round trip within the contracted tolerance.
        let back = log.theta.scale(Complex64::new(q.ln(), 0.0)).exp();
        let scale = 1.0 + m.max_norm();
        let err = back.sub(&m).max_norm();
        assert!(err <= 1e-9 * scale, "trial {t} (n = {n}, q = {q}): round trip {err:.3e}");

        // Multiplicative Jordan decomposition: M = S U with S U = U S and
        // (U - I)^n = 0.
        let su = log.semisimple.mul(&log.unipotent);
        assert!(su.sub(&m).max_norm() <= 1e-8 * scale, "trial {t}: S U != M");
        let us = log.unipotent.mul(&log.semisimple);
        assert!(su.sub(&us).max_norm() <= 1e-8 * scale, "trial {t}: parts do not commute");
        let mut nil = log.unipotent.sub(&CMatrix::identity(n));
        let single = nil.clone();
        for _ in 1..n {
            nil = nil.mul(&single);
        }
        assert!(nil.max_norm() <= 1e-8 * scale, "trial {t}: unipotent part not nilpotent");
        trials += 1;
    }
    println!("criterion 8: pass ({trials} randomized round trips, sizes 2..6 with Jordan blocks)");
}
