//! Base-q matrix logarithm through the multiplicative Jordan decomposition.
//!
//! Given an invertible complex matrix `M`, write `M = S * U` with `S`
//! semisimple, `U` unipotent, and `S`, `U` commuting. Then
//! `log_q M = log_q S + log_q U`, where the semisimple part takes the
//! principal branch on each eigenvalue and the unipotent part uses the
//! finite Mercator series in `U - I`. The decomposition is built from
//! spectral projectors obtained by Hermite interpolation on the eigenvalue
//! clusters, which avoids inverting anything beyond the (diagonalizable)
//! semisimple part.

use num_complex::Complex64;

use super::linalg::CMatrix;
use super::SpectrumError;
use crate::roots::aberth;
use crate::tolerances::Tolerances;

/// Outcome of `matrix_log_q`: the log itself plus the two commuting Jordan
/// factors it was assembled from, for downstream inspection.
#[derive(Debug, Clone)]
pub struct MatrixLog {
    pub theta: CMatrix,
    pub semisimple: CMatrix,
    pub unipotent: CMatrix,
}

/// Computes `Theta` with `q^Theta = M` (entrywise principal branch on the
/// spectrum). Fails with `Singular` when `M` has a numerically zero
/// eigenvalue and with `IllConditioned` when no eigenvalue clustering
/// yields a reconstruction `exp(ln q * Theta)` that reproduces `M` to the
/// round-trip tolerance.
pub fn matrix_log_q(m: &CMatrix, q: f64, tol: &Tolerances) -> Result<MatrixLog, SpectrumError> {
    assert!(q > 1.0, "base must exceed 1");
    let n = m.n;
    if n == 0 {
        return Ok(MatrixLog {
            theta: CMatrix::zeros(0),
            semisimple: CMatrix::zeros(0),
            unipotent: CMatrix::zeros(0),
        });
    }
    let charpoly = m.charpoly();
    let eigs = aberth(&charpoly).map_err(|_| SpectrumError::IllConditioned)?;
    let scale = eigs.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if eigs.iter().any(|z| z.norm() <= 1e-12 * scale) {
        return Err(SpectrumError::Singular);
    }

    // A root of multiplicity m is located only to about eps^(1/m) by any
    // polynomial solver, so the right clustering scale is not known in
    // advance. Walk a ladder of scales from fine to coarse and accept the
    // first grouping whose reconstruction survives the round-trip check:
    // splitting a multiple eigenvalue produces near-singular projectors and
    // fails, merging distinct ones breaks nilpotency of U - I and fails.
    for eps_rel in [1e-10, 1e-8, 1e-6, 1e-4, 3e-3] {
        let mut clusters = cluster(&eigs, eps_rel * scale);
        refine_centers(&charpoly, &mut clusters);
        // Refinement can drive formerly separate estimates of one multiple
        // root onto the same point; re-merge before interpolating, since
        // coincident nodes make the indicator polynomials meaningless.
        let flat: Vec<Complex64> = clusters
            .iter()
            .flat_map(|&(z, m)| std::iter::repeat(z).take(m))
            .collect();
        let clusters = cluster(&flat, 1e-9 * scale);
        if let Some(log) = assemble(m, q, &clusters, tol) {
            return Ok(log);
        }
    }
    Err(SpectrumError::IllConditioned)
}

/// Builds the Jordan factors and the logarithm for one hypothesized
/// eigenvalue grouping; `None` when the round trip misses the tolerance.
fn assemble(
    m: &CMatrix,
    q: f64,
    clusters: &[(Complex64, usize)],
    tol: &Tolerances,
) -> Option<MatrixLog> {
    let n = m.n;
    // Spectral projector for each cluster: P_j = f_j(M) where f_j is the
    // Hermite interpolant that is 1 to order m_j at lambda_j and 0 to order
    // m_k at every other cluster.
    let mut semisimple = CMatrix::zeros(n);
    let mut s_inv = CMatrix::zeros(n);
    let mut theta_s = CMatrix::zeros(n);
    let ln_q = q.ln();
    for (j, &(lambda, mult)) in clusters.iter().enumerate() {
        let f = hermite_indicator(clusters, j, mult);
        let p = m.poly_eval(&f);
        // A wrong grouping shows up as non-idempotent "projectors". True
        // spectral projectors satisfy P^2 = P to rounding error even when
        // ill-conditioned, so the bound is a stiff multiple of machine
        // epsilon at the projector's own scale.
        let p_norm = p.max_norm();
        let idem_bound = 1e-13 * (1.0 + p_norm) * (1.0 + p_norm);
        if !p_norm.is_finite() || p.mul(&p).sub(&p).max_norm() > idem_bound {
            return None;
        }
        semisimple = semisimple.add(&p.scale(lambda));
        s_inv = s_inv.add(&p.scale(lambda.inv()));
        theta_s = theta_s.add(&p.scale(lambda.ln() / ln_q));
    }

    let nilpotent = m.sub(&semisimple);
    let u = CMatrix::identity(n).add(&s_inv.mul(&nilpotent));

    // log U by the Mercator series; (U - I) is nilpotent when the grouping
    // is right, so the series is a polynomial of degree below n.
    let x = u.sub(&CMatrix::identity(n));
    let mut theta_u = CMatrix::zeros(n);
    let mut power = x.clone();
    for k in 1..=n {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        theta_u = theta_u.add(&power.scale(Complex64::new(sign / (k as f64 * ln_q), 0.0)));
        power = power.mul(&x);
    }

    let theta = theta_s.add(&theta_u);
    if !theta.max_norm().is_finite() {
        return None;
    }
    let round_trip = theta.scale(Complex64::new(ln_q, 0.0)).exp();
    let err = round_trip.sub(m).max_norm();
    if err > tol.matrix_roundtrip * (1.0 + m.max_norm()) {
        return None;
    }
    Some(MatrixLog { theta, semisimple, unipotent: u })
}

/// Sharpens each cluster center. The centroid of an m-fold cluster carries
/// an error of order eps^(1/m); Newton on the (m-1)-th derivative, where
/// the multiple root is simple, recovers it to machine accuracy.
fn refine_centers(charpoly: &[Complex64], clusters: &mut [(Complex64, usize)]) {
    for (center, mult) in clusters.iter_mut() {
        let mut d = charpoly.to_vec();
        for _ in 1..*mult {
            d = differentiate(&d);
        }
        let dp = differentiate(&d);
        let mut z = *center;
        for _ in 0..40 {
            let f = horner_eval(&d, z);
            let g = horner_eval(&dp, z);
            if g.norm() == 0.0 {
                break;
            }
            let step = f / g;
            z -= step;
            if !z.is_finite() {
                z = *center;
                break;
            }
            if step.norm() <= 1e-16 * (1.0 + z.norm()) {
                break;
            }
        }
        // Keep the refinement only if it stayed in the cluster's vicinity.
        if (z - *center).norm() <= 0.1 * (1.0 + center.norm()) {
            *center = z;
        }
    }
}

fn differentiate(p: &[Complex64]) -> Vec<Complex64> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect()
}

fn horner_eval(p: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Greedy single-linkage clustering of eigenvalue estimates.
fn cluster(eigs: &[Complex64], eps: f64) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for &z in eigs {
        match groups
            .iter_mut()
            .find(|g| g.iter().any(|w| (z - w).norm() <= eps))
        {
            Some(g) => g.push(z),
            None => groups.push(vec![z]),
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let mean = g.iter().sum::<Complex64>() / g.len() as f64;
            (mean, g.len())
        })
        .collect()
}

/// Polynomial (ascending coefficients) equal to 1 to order `mult` at cluster
/// `j` and 0 to order `m_k` at each other cluster center.
fn hermite_indicator(
    clusters: &[(Complex64, usize)],
    j: usize,
    mult: usize,
) -> Vec<Complex64> {
    let (center, _) = clusters[j];
    // h(x) = prod_{k != j} (x - lambda_k)^{m_k}, as ascending coefficients.
    let mut h = vec![Complex64::new(1.0, 0.0)];
    for (k, &(lk, mk)) in clusters.iter().enumerate() {
        if k == j {
            continue;
        }
        for _ in 0..mk {
            h = poly_mul(&h, &[-lk, Complex64::new(1.0, 0.0)]);
        }
    }
    // Taylor coefficients of h around the center, then the reciprocal series
    // truncated at order mult: g with g * h = 1 + O((x - center)^mult).
    let t = taylor_shift(&h, center);
    let mut g = vec![Complex64::new(0.0, 0.0); mult];
    g[0] = t[0].inv();
    for i in 1..mult {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=i {
            if k < t.len() {
                acc += t[k] * g[i - k];
            }
        }
        g[i] = -acc / t[0];
    }
    // f(x) = g(x - center) * h(x), expanded back in x.
    let g_in_x = taylor_shift(&g, -center);
    poly_mul(&g_in_x, &h)
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `p(x + c)` given those of `p(x)` (both ascending).
fn taylor_shift(p: &[Complex64], c: Complex64) -> Vec<Complex64> {
    let mut out = p.to_vec();
    let n = out.len();
    // Repeated synthetic division by (x - (-c)) accumulates the shifted
    // coefficients in place.
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let next = out[j + 1];
            out[j] += c * next;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn assert_close(a: &CMatrix, b: &CMatrix, eps: f64) {
        assert!(
            a.sub(b).max_norm() <= eps,
            "matrices differ by {}",
            a.sub(b).max_norm()
        );
    }

    #[test]
    fn identity_maps_to_zero() {
        let log = matrix_log_q(&CMatrix::identity(3), 5.0, &tol()).unwrap();
        assert!(log.theta.max_norm() < 1e-12);
        assert_close(&log.unipotent, &CMatrix::identity(3), 1e-12);
    }

    #[test]
    fn scalar_q_maps_to_identity() {
        let q = 3.0;
        let m = CMatrix::identity(2).scale(Complex64::new(q, 0.0));
        let log = matrix_log_q(&m, q, &tol()).unwrap();
        assert_close(&log.theta, &CMatrix::identity(2), 1e-12);
    }

    #[test]
    fn jordan_block_log_has_explicit_form() {
        // M = [[q, 1], [0, q]]: semisimple part qI, unipotent [[1, 1/q], [0, 1]],
        // so Theta = [[1, 1/(q ln q)], [0, 1]].
        let q = 4.0;
        let m = CMatrix::from_real_rows(&[vec![q, 1.0], vec![0.0, q]]);
        let log = matrix_log_q(&m, q, &tol()).unwrap();
        let expect = CMatrix::from_real_rows(&[
            vec![1.0, 1.0 / (q * q.ln())],
            vec![0.0, 1.0],
        ]);
        assert_close(&log.theta, &expect, 1e-12);
        assert_close(&log.semisimple, &CMatrix::identity(2).scale(Complex64::new(q, 0.0)), 1e-10);
        // Unipotent minus identity is nilpotent of index <= size.
        let x = log.unipotent.sub(&CMatrix::identity(2));
        assert!(x.mul(&x).max_norm() < 1e-12);
    }

    #[test]
    fn jordan_factors_commute_and_recompose() {
        let q = 2.0;
        // 3x3 with a 2-block at eigenvalue 2 and a simple eigenvalue 6.
        let m = CMatrix::from_real_rows(&[
            vec![2.0, 1.0, 0.0],
            vec![0.0, 2.0, 0.0],
            vec![0.0, 0.0, 6.0],
        ]);
        let log = matrix_log_q(&m, q, &tol()).unwrap();
        assert_close(&log.semisimple.mul(&log.unipotent), &m, 1e-9);
        assert_close(
            &log.semisimple.mul(&log.unipotent),
            &log.unipotent.mul(&log.semisimple),
            1e-10,
        );
        let x = log.unipotent.sub(&CMatrix::identity(3));
        assert!(x.mul(&x).mul(&x).max_norm() < 1e-12);
        assert!((log.theta[(2, 2)] - Complex64::new(6f64.log2(), 0.0)).norm() < 1e-10);
    }

    #[test]
    fn conjugated_matrix_round_trips() {
        // V D V^{-1} with distinct eigenvalues, one complex pair.
        let q = 3.0;
        let v = CMatrix::from_real_rows(&[
            vec![1.0, 2.0, 0.0],
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 2.0],
        ]);
        let mut d = CMatrix::zeros(3);
        d[(0, 0)] = Complex64::new(3.0, 0.0);
        d[(1, 1)] = Complex64::new(1.0, 2.0);
        d[(2, 2)] = Complex64::new(1.0, -2.0);
        let m = v.mul(&d).mul(&v.inverse().unwrap());
        let log = matrix_log_q(&m, q, &tol()).unwrap();
        let back = log.theta.scale(Complex64::new(q.ln(), 0.0)).exp();
        assert_close(&back, &m, 1e-9 * (1.0 + m.max_norm()));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(matches!(
            matrix_log_q(&m, 2.0, &tol()),
            Err(SpectrumError::Singular)
        ));
    }
}
