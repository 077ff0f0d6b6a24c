//! Special functions backing the regularized determinants: complex
//! log-Gamma, the Hurwitz zeta function with its analytic continuation, and
//! the Bernoulli data both of them consume.
//!
//! Complex powers throughout use the principal branch
//! `w^{-z} = exp(-z Log w)` with `Arg` in `(-pi, pi]`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::RegDetError;

/// Bernoulli numbers B_0, B_1, B_2, ..., B_20 (odd indices above 1 vanish),
/// convention B_1 = -1/2.
const BERNOULLI: [f64; 21] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174611.0 / 330.0,
];

pub fn bernoulli(n: usize) -> f64 {
    BERNOULLI[n]
}

/// Bernoulli polynomial `B_n(x) = sum_k C(n,k) B_{n-k} x^k`.
pub fn bernoulli_poly(n: usize, x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut binom = 1.0f64;
    let mut xpow = Complex64::new(1.0, 0.0);
    for k in 0..=n {
        acc += binom * bernoulli(n - k) * xpow;
        binom = binom * (n - k) as f64 / (k + 1) as f64;
        xpow *= x;
    }
    acc
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Principal branch of `log Gamma`: the analytic continuation along the
/// plane cut at `(-inf, 0]` normalized by `log Gamma(1) = 0`. Strategy:
/// push the argument to `Re >= 10` by the recurrence
/// `log Gamma(z) = log Gamma(z+n) - sum Log(z+j)` (principal `Log`s, which
/// realizes the principal branch), then apply the Stirling series.
pub fn log_gamma(z: Complex64) -> Result<Complex64, RegDetError> {
    if is_nonpositive_integer(z) {
        return Err(RegDetError::Pole(z));
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 10.0 {
        shift += w.ln();
        w += 1.0;
    }
    // Stirling: (w - 1/2) Log w - w + (1/2) ln 2pi + sum B_2j / (2j(2j-1) w^{2j-1}).
    let mut acc = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln();
    let w2 = w * w;
    let mut wpow = w;
    for j in 1..=8usize {
        let b = bernoulli(2 * j);
        acc += b / ((2 * j * (2 * j - 1)) as f64) / wpow;
        wpow *= w2;
    }
    Ok(acc - shift)
}

/// Hurwitz zeta `zeta_H(z, a) = sum_{k>=0} (k+a)^{-z}`, analytically
/// continued by Euler-Maclaurin. Arguments with `Re(a) <= 1/2` are shifted
/// right by splitting off finitely many principal-branch terms.
pub fn hurwitz_zeta(z: Complex64, a: Complex64) -> Result<Complex64, RegDetError> {
    if is_nonpositive_integer(a) {
        return Err(RegDetError::BadParameter(format!(
            "hurwitz zeta parameter {} hits a pole of the series",
            a
        )));
    }
    if (z - 1.0).norm() <= 1e-14 {
        return Err(RegDetError::Pole(z));
    }
    let mut head = Complex64::new(0.0, 0.0);
    let mut a = a;
    while a.re <= 0.5 {
        head += (-z * a.ln()).exp();
        a += 1.0;
    }

    // Direct terms until the tail base is comfortably larger than |z|. The
    // base is kept as small as the Bernoulli tail allows: at negative
    // integers z the tail terminates exactly and the error is pure
    // cancellation, which grows with the base as base^{|z|+1} * eps.
    let needed = f64::max(8.0, 0.9 * z.norm() + 2.0);
    let n = ((needed - a.re).ceil().max(0.0)) as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let w = a + k as f64;
        sum += (-z * w.ln()).exp();
    }
    let base = a + n as f64;
    let log_base = base.ln();

    // Integral term, half-weight boundary term, then the Bernoulli tail
    // with rising factorials (z)_{2j-1}.
    let mut acc = sum + ((1.0 - z) * log_base).exp() / (z - 1.0) + 0.5 * (-z * log_base).exp();
    let mut rising = z;
    let mut fact = 1.0f64;
    for j in 1..=8usize {
        fact *= ((2 * j - 1) * (2 * j)) as f64;
        let term = bernoulli(2 * j) / fact
            * rising
            * ((-z - (2 * j - 1) as f64) * log_base).exp();
        acc += term;
        rising *= (z + (2 * j - 1) as f64) * (z + (2 * j) as f64);
    }
    Ok(head + acc)
}

/// `d/dz zeta_H(z, a)` at `z = 0`, by Lerch's formula
/// `zeta_H'(0, a) = log Gamma(a) - (1/2) log 2pi`.
pub fn hurwitz_zeta_deriv0(a: Complex64) -> Result<Complex64, RegDetError> {
    Ok(log_gamma(a)? - 0.5 * (2.0 * PI).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bernoulli_polynomial_difference_identity() {
        // B_n(x+1) - B_n(x) = n x^{n-1}.
        let xs = [c(0.3, 0.0), c(-1.2, 0.7), c(2.5, -0.4)];
        for n in 1..=5usize {
            for &x in &xs {
                let lhs = bernoulli_poly(n, x + 1.0) - bernoulli_poly(n, x);
                let rhs = n as f64 * x.powi(n as i32 - 1);
                assert!((lhs - rhs).norm() < 1e-12 * rhs.norm().max(1.0), "n={} x={}", n, x);
            }
        }
        // Constant terms are the Bernoulli numbers themselves.
        assert!((bernoulli_poly(2, c(0.0, 0.0)) - bernoulli(2)).norm() < 1e-15);
        assert!((bernoulli_poly(4, c(0.0, 0.0)) - bernoulli(4)).norm() < 1e-15);
    }

    #[test]
    fn log_gamma_anchors() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-13);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half - 0.5 * PI.ln()).norm() < 1e-13);
        let five = log_gamma(c(5.0, 0.0)).unwrap();
        assert!((five - 24f64.ln()).norm() < 1e-12);
    }

    #[test]
    fn log_gamma_recurrence_and_conjugation() {
        let samples = [c(0.3, 1.4), c(-2.7, 0.9), c(7.1, -3.3), c(0.2, -0.1)];
        for &z in &samples {
            let lhs = log_gamma(z + 1.0).unwrap();
            let rhs = log_gamma(z).unwrap() + z.ln();
            assert!((lhs - rhs).norm() < 1e-11, "recurrence at {}", z);
            let conj = log_gamma(z.conj()).unwrap();
            assert!((conj - log_gamma(z).unwrap().conj()).norm() < 1e-11);
        }
    }

    #[test]
    fn log_gamma_duplication_formula() {
        // log Gamma(2z) = log Gamma(z) + log Gamma(z + 1/2) + (2z-1) ln 2 - (1/2) ln pi,
        // valid on Re z > 0 where no branch crossing occurs.
        for &z in &[c(0.8, 0.3), c(2.5, -1.0), c(6.0, 4.0)] {
            let lhs = log_gamma(2.0 * z).unwrap();
            let rhs = log_gamma(z).unwrap() + log_gamma(z + 0.5).unwrap()
                + (2.0 * z - 1.0) * 2f64.ln()
                - 0.5 * PI.ln();
            assert!((lhs - rhs).norm() < 1e-11, "duplication at {}", z);
        }
    }

    #[test]
    fn log_gamma_poles_are_reported() {
        assert!(matches!(log_gamma(c(0.0, 0.0)), Err(RegDetError::Pole(_))));
        assert!(matches!(log_gamma(c(-3.0, 0.0)), Err(RegDetError::Pole(_))));
    }

    #[test]
    fn hurwitz_basel_and_riemann_values() {
        let basel = hurwitz_zeta(c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((basel - PI * PI / 6.0).norm() < 1e-12);
        // zeta(-1) = -1/12.
        let zm1 = hurwitz_zeta(c(-1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((zm1 + 1.0 / 12.0).norm() < 1e-12);
    }

    #[test]
    fn hurwitz_at_zero_is_half_minus_a() {
        for &a in &[c(1.0, 0.0), c(0.3, 2.0), c(5.5, -1.5), c(-2.3, 0.4)] {
            let v = hurwitz_zeta(c(0.0, 0.0), a).unwrap();
            assert!((v - (0.5 - a)).norm() < 1e-12, "at a = {}", a);
        }
    }

    #[test]
    fn hurwitz_negative_integers_hit_bernoulli_polynomials() {
        // zeta_H(-n, a) = -B_{n+1}(a)/(n+1).
        let params = [c(0.7, 0.0), c(1.9, 1.1), c(3.2, -0.6), c(-0.8, 1.4)];
        for n in 0..=4usize {
            for &a in &params {
                let v = hurwitz_zeta(c(-(n as f64), 0.0), a).unwrap();
                let want = -bernoulli_poly(n + 1, a) / (n as f64 + 1.0);
                assert!((v - want).norm() < 1e-10, "n={} a={}", n, a);
            }
        }
    }

    #[test]
    fn hurwitz_forward_recurrence() {
        // zeta_H(z, a) - zeta_H(z, a+1) = a^{-z}, a strong continuation oracle.
        let zs = [c(2.3, 1.0), c(-1.7, 0.4), c(0.5, -2.0)];
        let az = [c(0.9, 0.0), c(-1.4, 0.8), c(3.0, 3.0)];
        for &z in &zs {
            for &a in &az {
                let lhs = hurwitz_zeta(z, a).unwrap() - hurwitz_zeta(z, a + 1.0).unwrap();
                let rhs = (-z * a.ln()).exp();
                assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0), "z={} a={}", z, a);
            }
        }
    }

    #[test]
    fn hurwitz_pole_and_bad_parameter() {
        assert!(matches!(
            hurwitz_zeta(c(1.0, 0.0), c(2.0, 0.0)),
            Err(RegDetError::Pole(_))
        ));
        assert!(matches!(
            hurwitz_zeta(c(2.0, 0.0), c(0.0, 0.0)),
            Err(RegDetError::BadParameter(_))
        ));
        assert!(matches!(
            hurwitz_zeta(c(2.0, 0.0), c(-2.0, 0.0)),
            Err(RegDetError::BadParameter(_))
        ));
    }

    #[test]
    fn lerch_derivative_matches_finite_differences() {
        let h = 1e-6;
        for &a in &[c(1.0, 0.0), c(2.5, 0.0), c(1.3, 0.9), c(0.8, -1.2)] {
            let exact = hurwitz_zeta_deriv0(a).unwrap();
            let plus = hurwitz_zeta(c(h, 0.0), a).unwrap();
            let minus = hurwitz_zeta(c(-h, 0.0), a).unwrap();
            let approx = (plus - minus) / (2.0 * h);
            assert!((exact - approx).norm() < 1e-5, "a = {}", a);
        }
        let at_one = hurwitz_zeta_deriv0(c(1.0, 0.0)).unwrap();
        assert!((at_one + 0.5 * (2.0 * PI).ln()).norm() < 1e-13);
    }
}
