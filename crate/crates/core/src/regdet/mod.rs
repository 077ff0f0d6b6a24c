//! Regularized determinants of `s - Theta` on the parity classes, in
//! closed form, and the identity they assemble into: the zeta function of a
//! variety as a ratio of two such determinants.
//!
//! On a parity class the eigenvalues of `Theta` are arithmetic progressions
//! `alpha_0 + (2*pi*i/log q) k`, `k` over all integers. The associated zeta
//! function `zeta(z) = sum_k (s - alpha_0 - i mu k)^{-z}` is regularized by
//! splitting off a finite window of `2K+1` central terms and expressing the
//! two tails as Hurwitz zetas: for `k > K` the factorization
//! `a - i mu k = (-i mu)(k + i a/mu)` is branch-exact because the window is
//! wide enough that `k - Im(a)/mu >= 2`, and likewise for `k < -K`. That
//! yields
//!
//! `zeta(z) = sum_{|k|<=K} (a - i mu k)^{-z}
//!     + (-i mu)^{-z} zeta_H(z, w_+) + (i mu)^{-z} zeta_H(z, w_-)`
//!
//! with `w_± = K + 1 ± i a/mu`. At `z = 0` everything is elementary
//! (`zeta_H(0, w) = 1/2 - w`) and cancels to zero; the derivative at zero
//! needs only `log Gamma` through Lerch's formula, and the determinant is
//! `exp(-zeta'(0))`. A zero eigenvalue (`s` congruent to `alpha_0` mod the
//! step) forces the determinant to vanish; the zero mode is excluded from
//! the zeta data and the anomalous dimension picks up the compensating
//! `dim V_0`.

pub mod special;

pub use special::{bernoulli, bernoulli_poly, hurwitz_zeta, hurwitz_zeta_deriv0, log_gamma};

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

use crate::spectrum::{build_tp_model, spectrum_from_zeta, SpectrumError, TPModel};
use crate::tolerances::Tolerances;
use crate::varieties::zeta::ZetaRational;
use crate::varieties::{gather_counts, zeta_from_counts, VarietyError, VarietySpec};

#[derive(Debug, Error)]
pub enum RegDetError {
    #[error("pole at {0}")]
    Pole(Complex64),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("intermediate value {value} lies within the branch guard of the cut Arg = pi")]
    BranchBoundary { value: Complex64 },
    #[error("identity violated at s = {s}: lhs {lhs}, rhs {rhs}, relative error {relerr:.3e}")]
    IdentityViolated {
        s: Complex64,
        lhs: Complex64,
        rhs: Complex64,
        relerr: f64,
    },
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// The full eigenvalue set `{alpha_0 + (2*pi*i/log q) k : k in Z}` of
/// `Theta` attached to one Frobenius eigenvalue `lambda` on a parity class,
/// with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenProgression {
    pub lambda: Complex64,
    pub q: u128,
    pub alpha0: Complex64,
    /// Imaginary period magnitude `2*pi/log q`.
    pub step: f64,
    pub mult: usize,
}

impl EigenProgression {
    /// Principal value `alpha_0 = log_q lambda`, `Arg` in `(-pi, pi]`.
    pub fn new(lambda: Complex64, q: u128, mult: usize) -> Self {
        assert!(lambda.norm() > 0.0, "eigenvalue must be nonzero");
        assert!(q >= 2, "base must be at least 2");
        assert!(mult >= 1);
        let ln_q = (q as f64).ln();
        let alpha0 = Complex64::new(lambda.norm().ln(), lambda.arg()) / ln_q;
        EigenProgression { lambda, q, alpha0, step: 2.0 * PI / ln_q, mult }
    }
}

/// Regularized determinant of `s - Theta` restricted to one progression
/// (with multiplicity folded in), together with the zeta data behind it.
/// When `vanishing` is set the zero mode was excluded from `zeta_at_0` and
/// `zeta_prime_at_0`, and `value` is exactly zero.
#[derive(Debug, Clone)]
pub struct RegDetResult {
    pub value: Complex64,
    pub zeta_at_0: Complex64,
    pub zeta_prime_at_0: Complex64,
    pub anomalous_dim: Complex64,
    pub vanishing: bool,
}

/// Window geometry shared by the zeta value and its derivative: the offset
/// `a`, the reduced central window, and the two Hurwitz parameters.
struct Window {
    k_lo: i64,
    k_hi: i64,
    excluded: Option<i64>,
    w_plus: Complex64,
    w_minus: Complex64,
    count: f64,
}

fn window(a: Complex64, mu: f64, vanish_tol: f64) -> Window {
    let k_star = (a.im / mu).round();
    let dist = Complex64::new(a.re, a.im - mu * k_star).norm();
    let k = (a.im.abs() / mu).ceil() as i64 + 1;
    let d = Complex64::new(-a.im / mu, a.re / mu); // i a / mu
    let excluded = if dist <= vanish_tol { Some(k_star as i64) } else { None };
    let count = (2 * k + 1 - excluded.map_or(0, |_| 1)) as f64;
    Window {
        k_lo: -k,
        k_hi: k,
        excluded,
        w_plus: Complex64::new((k + 1) as f64, 0.0) + d,
        w_minus: Complex64::new((k + 1) as f64, 0.0) - d,
        count,
    }
}

/// `zeta(0)` of one progression copy (reduced when the zero mode is
/// present) plus the zero-mode dimension. Pure arithmetic: the window terms
/// contribute 1 each and the tails contribute `1/2 - w_±` exactly, so the
/// cancellation that makes the anomalous dimension vanish happens in exact
/// floating point.
fn progression_zeta0(a: Complex64, mu: f64, vanish_tol: f64) -> (Complex64, usize) {
    let win = window(a, mu, vanish_tol);
    let zeta0 = win.count + (0.5 - win.w_plus) + (0.5 - win.w_minus);
    (zeta0, win.excluded.map_or(0, |_| 1))
}

/// `zeta'(0)` of one progression copy, reduced when the zero mode is
/// present. Branch-guarded: any window term within `branch_guard` of the
/// cut `Arg = pi` is refused rather than silently perturbed.
fn progression_zeta_prime0(
    a: Complex64,
    mu: f64,
    vanish_tol: f64,
    branch_guard: f64,
) -> Result<(Complex64, usize), RegDetError> {
    let win = window(a, mu, vanish_tol);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in win.k_lo..=win.k_hi {
        if win.excluded == Some(k) {
            continue;
        }
        let w = Complex64::new(a.re, a.im - mu * k as f64);
        if PI - w.arg().abs() <= branch_guard {
            return Err(RegDetError::BranchBoundary { value: w });
        }
        acc -= w.ln();
    }
    // Tail k > K: (-i mu)^{-z} zeta_H(z, w_+); derivative at 0 is
    // -Log(-i mu) * zeta_H(0, w_+) + zeta_H'(0, w_+), and symmetrically.
    let log_minus_imu = Complex64::new(mu.ln(), -PI / 2.0);
    let log_plus_imu = Complex64::new(mu.ln(), PI / 2.0);
    acc += -log_minus_imu * (0.5 - win.w_plus) + hurwitz_zeta_deriv0(win.w_plus)?;
    acc += -log_plus_imu * (0.5 - win.w_minus) + hurwitz_zeta_deriv0(win.w_minus)?;
    Ok((acc, win.excluded.map_or(0, |_| 1)))
}

/// Regularized determinant `det_inf(s - Theta)` over one eigen-progression.
pub fn regdet_progression(
    prog: &EigenProgression,
    s: Complex64,
    tol: &Tolerances,
) -> Result<RegDetResult, RegDetError> {
    let a = s - prog.alpha0;
    let m = prog.mult as f64;
    let (zeta0, dim_v0) = progression_zeta0(a, prog.step, tol.vanishing);
    let (zeta_prime0, _) = progression_zeta_prime0(a, prog.step, tol.vanishing, tol.branch_guard)?;
    let vanishing = dim_v0 > 0;
    let value = if vanishing {
        Complex64::new(0.0, 0.0)
    } else {
        (-m * zeta_prime0).exp()
    };
    Ok(RegDetResult {
        value,
        zeta_at_0: m * zeta0,
        zeta_prime_at_0: m * zeta_prime0,
        anomalous_dim: m * (dim_v0 as f64 + zeta0),
        vanishing,
    })
}

/// Both determinants of one parity class at `s`: the regularized product
/// over the eigen-progressions and, independently, the finite
/// `det(id - q^{-s} Fr*)` on the same eigenvalues.
#[derive(Debug, Clone)]
pub struct ParityDet {
    pub parity: usize,
    pub regularized: Complex64,
    pub finite: Complex64,
    pub vanishing: bool,
}

/// Multiplies `regdet_progression` over every entry of a parity class and
/// records the finite determinant alongside.
pub fn regdet_parity_class(
    model: &TPModel,
    parity: usize,
    s: Complex64,
    tol: &Tolerances,
) -> Result<ParityDet, RegDetError> {
    assert!(parity < 2);
    let ln_q = (model.q as f64).ln();
    let q_pow = (-s * ln_q).exp();
    let mut regularized = Complex64::new(1.0, 0.0);
    let mut finite = Complex64::new(1.0, 0.0);
    let mut vanishing = false;
    for e in &model.tp[parity] {
        let prog = EigenProgression::new(e.lambda, model.q, e.multiplicity);
        let r = regdet_progression(&prog, s, tol)?;
        regularized *= r.value;
        vanishing |= r.vanishing;
        finite *= (Complex64::new(1.0, 0.0) - e.lambda * q_pow).powi(e.multiplicity as i32);
    }
    if vanishing {
        regularized = Complex64::new(0.0, 0.0);
    }
    Ok(ParityDet { parity, regularized, finite, vanishing })
}

/// Anomalous dimension of `s - Theta` on a parity class:
/// `dim_inf = dim V_0 + zeta(0)`, summed over the progressions. Exactly
/// zero in exact arithmetic, and the floating-point computation is
/// arranged so the cancellation is exact as well.
pub fn dim_infty(model: &TPModel, parity: usize, s: Complex64, tol: &Tolerances) -> Complex64 {
    assert!(parity < 2);
    let mut acc = Complex64::new(0.0, 0.0);
    for e in &model.tp[parity] {
        let prog = EigenProgression::new(e.lambda, model.q, e.multiplicity);
        let (zeta0, dim_v0) = progression_zeta0(s - prog.alpha0, prog.step, tol.vanishing);
        acc += e.multiplicity as f64 * (Complex64::new(dim_v0 as f64, 0.0) + zeta0);
    }
    acc
}

/// Numerical check of the scaling law
/// `det_inf(delta (s - Theta)) = delta^{dim_inf} det_inf(s - Theta)`.
#[derive(Debug, Clone)]
pub struct ScalingReport {
    pub delta: f64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub ratio: Complex64,
    pub dim_infty: Complex64,
    pub vanishing: bool,
    pub ok: bool,
}

pub fn scaling_check(
    model: &TPModel,
    parity: usize,
    s: Complex64,
    delta: f64,
    tol: &Tolerances,
) -> Result<ScalingReport, RegDetError> {
    assert!(delta > 0.0, "scale factor must be positive");
    let dim = dim_infty(model, parity, s, tol);
    let mut lhs = Complex64::new(1.0, 0.0);
    let mut vanishing = false;
    for e in &model.tp[parity] {
        let prog = EigenProgression::new(e.lambda, model.q, e.multiplicity);
        let a = (s - prog.alpha0) * delta;
        let (zeta_prime0, dim_v0) =
            progression_zeta_prime0(a, prog.step * delta, tol.vanishing, tol.branch_guard)?;
        if dim_v0 > 0 {
            vanishing = true;
        }
        lhs *= (-(e.multiplicity as f64) * zeta_prime0).exp();
    }
    let base = regdet_parity_class(model, parity, s, tol)?;
    if vanishing || base.vanishing {
        // Both sides vanish identically; there is no finite ratio to test.
        return Ok(ScalingReport {
            delta,
            lhs: Complex64::new(0.0, 0.0),
            rhs: Complex64::new(0.0, 0.0),
            ratio: Complex64::new(1.0, 0.0),
            dim_infty: dim,
            vanishing: true,
            ok: true,
        });
    }
    let rhs = (dim * delta.ln()).exp() * base.regularized;
    let ratio = lhs / rhs;
    let ok = (ratio - 1.0).norm() <= tol.identity;
    Ok(ScalingReport { delta, lhs, rhs, ratio, dim_infty: dim, vanishing: false, ok })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleStatus {
    Ok,
    Violated,
    VanishingNumerator,
    VanishingDenominator,
}

impl SampleStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SampleStatus::Ok => "ok",
            SampleStatus::Violated => "violated",
            SampleStatus::VanishingNumerator => "vanishing-numerator",
            SampleStatus::VanishingDenominator => "vanishing-denominator",
        }
    }
}

/// One verified sample. For compared samples `relerr` is the relative
/// error between the two sides; for vanishing samples it measures the
/// coincidence of the zero/pole loci (`|lhs|` at a vanishing numerator,
/// `|1/lhs|` at a vanishing denominator).
#[derive(Debug, Clone)]
pub struct SampleRow {
    pub s: Complex64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub finite_rhs: Complex64,
    pub relerr: f64,
    pub finite_relerr: f64,
    pub status: SampleStatus,
}

#[derive(Debug, Clone)]
pub struct TheoremAReport {
    pub q: u128,
    pub rows: Vec<SampleRow>,
    pub max_relerr: f64,
    pub max_finite_relerr: f64,
    pub tol: f64,
}

impl TheoremAReport {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(|r| r.status != SampleStatus::Violated)
    }

    pub fn assert_ok(&self) -> Result<(), RegDetError> {
        match self.rows.iter().find(|r| r.status == SampleStatus::Violated) {
            None => Ok(()),
            Some(r) => Err(RegDetError::IdentityViolated {
                s: r.s,
                lhs: r.lhs,
                rhs: r.rhs,
                relerr: r.relerr,
            }),
        }
    }

    /// One CSV line per sample: `s, lhs_re, lhs_im, rhs_re, rhs_im,
    /// relerr, status`, preceded by a header.
    pub fn csv(&self) -> String {
        let mut out = String::from("s,lhs_re,lhs_im,rhs_re,rhs_im,relerr,status\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{}\n",
                format_complex(r.s),
                r.lhs.re,
                r.lhs.im,
                r.rhs.re,
                r.rhs.im,
                r.relerr,
                r.status.as_str()
            ));
        }
        out
    }
}

/// Compact complex formatting: `2`, `-1.5+0.7i`, `0.3i`.
pub(crate) fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// End-to-end identity check on a variety: the zeta function evaluated
/// through its rational form against the ratio of regularized determinants
/// of the two parity classes, with the finite determinants as an
/// independent cross-check. Samples on the zero or pole locus are verified
/// to coincide with the vanishing of the matching parity class instead of
/// being compared as ratios.
pub fn verify_theorem_a(
    spec: &VarietySpec,
    samples: &[Complex64],
    tol: &Tolerances,
) -> Result<TheoremAReport, RegDetError> {
    let betti = spec.betti();
    let need = betti.iter().sum::<usize>().div_ceil(2);
    let counts = gather_counts(spec, need)?;
    let z = zeta_from_counts(&counts, &betti)?;
    verify_theorem_a_for_zeta(&z, samples, tol)
}

/// The same verification starting from an already-reconstructed zeta.
pub fn verify_theorem_a_for_zeta(
    z: &ZetaRational,
    samples: &[Complex64],
    tol: &Tolerances,
) -> Result<TheoremAReport, RegDetError> {
    let spectrum = spectrum_from_zeta(z)?;
    let model = build_tp_model(&spectrum);
    let mut rows = Vec::with_capacity(samples.len());
    let mut max_relerr = 0.0f64;
    let mut max_finite = 0.0f64;
    for &s in samples {
        let num = regdet_parity_class(&model, 1, s, tol)?;
        let den = regdet_parity_class(&model, 0, s, tol)?;
        let lhs = z.eval_s(s);
        let row = if den.vanishing {
            // Pole locus: the rational side must blow up there too. An
            // exactly-zero factor makes eval_s return inf or NaN, which is
            // the sharpest possible coincidence.
            let coincidence = if lhs.norm().is_finite() { 1.0 / lhs.norm() } else { 0.0 };
            let status = if coincidence <= 1e-6 {
                SampleStatus::VanishingDenominator
            } else {
                SampleStatus::Violated
            };
            SampleRow {
                s,
                lhs,
                rhs: Complex64::new(f64::INFINITY, 0.0),
                finite_rhs: num.finite / den.finite,
                relerr: coincidence,
                finite_relerr: 0.0,
                status,
            }
        } else if num.vanishing {
            let coincidence = lhs.norm();
            let status = if coincidence <= 1e-6 {
                SampleStatus::VanishingNumerator
            } else {
                SampleStatus::Violated
            };
            SampleRow {
                s,
                lhs,
                rhs: Complex64::new(0.0, 0.0),
                finite_rhs: num.finite / den.finite,
                relerr: coincidence,
                finite_relerr: 0.0,
                status,
            }
        } else {
            let rhs = num.regularized / den.regularized;
            let finite_rhs = num.finite / den.finite;
            let relerr = (lhs - rhs).norm() / lhs.norm();
            let finite_relerr = (finite_rhs - rhs).norm() / rhs.norm();
            max_relerr = max_relerr.max(relerr);
            max_finite = max_finite.max(finite_relerr);
            let status = if relerr <= tol.identity {
                SampleStatus::Ok
            } else {
                SampleStatus::Violated
            };
            SampleRow { s, lhs, rhs, finite_rhs, relerr, finite_relerr, status }
        };
        rows.push(row);
    }
    Ok(TheoremAReport {
        q: z.q,
        rows,
        max_relerr,
        max_finite_relerr: max_finite,
        tol: tol.identity,
    })
}
