//! Polynomial root extraction with exact preprocessing.
//!
//! Repeated roots ruin the accuracy of any floating-point iteration, so
//! polynomials with rational coefficients are first split into square-free
//! factors by Yun's algorithm, exactly. Each factor then has simple roots
//! and Aberth's simultaneous iteration recovers them to near machine
//! precision; multiplicities come from the exact decomposition, not from
//! numerical clustering. Every root is validated against a backward-error
//! bound before being returned.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootsError {
    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    #[error("root iteration did not converge")]
    DidNotConverge,
    #[error("root failed the residual bound: |P(z)| = {residual:.3e} exceeds {bound:.3e}")]
    ResidualTooLarge { residual: f64, bound: f64 },
}

/// All complex roots of a rational-coefficient polynomial with exact
/// multiplicities, conjugate-symmetrized. Coefficients ascending.
pub(crate) fn rational_poly_roots(
    coeffs: &[BigRational],
    residual_tol: f64,
) -> Result<Vec<(Complex64, usize)>, RootsError> {
    let mut p = rat_trim(coeffs.to_vec());
    if p.is_empty() {
        return Err(RootsError::ZeroPolynomial);
    }
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    // Strip the exact power of t dividing P.
    let zero_mult = p.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        p.drain(..zero_mult);
        out.push((Complex64::new(0.0, 0.0), zero_mult));
    }
    for (factor, mult) in yun_square_free(&p) {
        if rat_deg(&factor) == 0 {
            continue;
        }
        let cf: Vec<Complex64> = factor
            .iter()
            .map(|c| Complex64::new(c.to_f64().expect("coefficient fits f64"), 0.0))
            .collect();
        let mut roots = aberth(&cf)?;
        symmetrize_conjugates(&mut roots);
        for z in roots {
            check_residual(&cf, z, residual_tol)?;
            out.push((z, mult));
        }
    }
    Ok(out)
}

/// All roots of a complex-coefficient polynomial by Aberth's method.
/// Assumes simple (or well-separated) roots; callers with possible
/// multiplicities must cluster the output themselves.
pub(crate) fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>, RootsError> {
    let mut c = coeffs.to_vec();
    while let Some(last) = c.last() {
        if last.norm() == 0.0 {
            c.pop();
        } else {
            break;
        }
    }
    if c.is_empty() {
        return Err(RootsError::ZeroPolynomial);
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    for ck in c.iter_mut() {
        *ck /= lead;
    }
    if n == 1 {
        return Ok(vec![-c[0]]);
    }
    let deriv: Vec<Complex64> = (1..=n)
        .map(|i| c[i] * Complex64::new(i as f64, 0.0))
        .collect();

    // Start on a circle of radius the geometric mean of the root moduli,
    // with an angular offset so no guess sits on a symmetry axis.
    let r = c[0].norm().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(r, theta)
        })
        .collect();

    // A root is done when its residual reaches the machine-epsilon
    // backward-error floor (no coefficient perturbation smaller than
    // rounding could distinguish it from an exact root), or its step
    // becomes negligible. Finished roots are frozen.
    let floor = 16.0 * (n as f64 + 1.0) * f64::EPSILON;
    let eval_scale = |zn: f64| -> f64 {
        let mut s = 0.0;
        let mut pw = 1.0;
        for ck in &c {
            s += ck.norm() * pw;
            pw *= zn;
        }
        s
    };
    let mut done = vec![false; n];
    let mut converged = false;
    for _ in 0..500 {
        let mut all_done = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let pv = horner(&c, z[k]);
            if pv.norm() <= floor * eval_scale(z[k].norm()) {
                done[k] = true;
                continue;
            }
            all_done = false;
            let dv = horner(&deriv, z[k]);
            let w = if dv.norm() > 0.0 { pv / dv } else { pv };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    let d = if d.norm() < 1e-300 {
                        Complex64::new(1e-300, 0.0)
                    } else {
                        d
                    };
                    s += Complex64::new(1.0, 0.0) / d;
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let step = if denom.norm() > 1e-300 { w / denom } else { w };
            z[k] -= step;
            if step.norm() <= 1e-15 * (1.0 + z[k].norm()) {
                done[k] = true;
            }
        }
        if all_done {
            converged = true;
            break;
        }
    }
    if !converged && !done.iter().all(|&d| d) {
        return Err(RootsError::DidNotConverge);
    }
    // A few Newton steps per root sharpen the last bits.
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let pv = horner(&c, *zk);
            let dv = horner(&deriv, *zk);
            if dv.norm() == 0.0 {
                break;
            }
            *zk -= pv / dv;
        }
    }
    Ok(z)
}

pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Backward-error residual: |P(z)| measured against the evaluation
/// magnitude `sum |c_i| |z|^i`, which is the smallest coefficient
/// perturbation that could make z an exact root.
fn check_residual(coeffs: &[Complex64], z: Complex64, tol: f64) -> Result<(), RootsError> {
    let residual = horner(coeffs, z).norm();
    let zn = z.norm();
    let mut scale = 0.0f64;
    let mut pw = 1.0f64;
    for c in coeffs {
        scale += c.norm() * pw;
        pw *= zn;
    }
    let bound = tol * scale.max(f64::MIN_POSITIVE);
    if residual > bound {
        return Err(RootsError::ResidualTooLarge { residual, bound });
    }
    Ok(())
}

/// For real-coefficient input: collapse near-real roots onto the axis and
/// average conjugate partners so pairs are bit-exact mirrors.
fn symmetrize_conjugates(roots: &mut [Complex64]) {
    let eps = 1e-9;
    for z in roots.iter_mut() {
        if z.im.abs() <= eps * (1.0 + z.norm()) {
            z.im = 0.0;
        }
    }
    let idx: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].im > 0.0).collect();
    let mut lower: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].im < 0.0).collect();
    for i in idx {
        let target = roots[i].conj();
        let best = lower
            .iter()
            .enumerate()
            .min_by(|(_, &a), (_, &b)| {
                (roots[a] - target)
                    .norm()
                    .partial_cmp(&(roots[b] - target).norm())
                    .unwrap()
            })
            .map(|(pos, &j)| (pos, j));
        if let Some((pos, j)) = best {
            let avg = (roots[i] + roots[j].conj()) * Complex64::new(0.5, 0.0);
            roots[i] = avg;
            roots[j] = avg.conj();
            lower.swap_remove(pos);
        }
    }
}

/// Yun's square-free decomposition: `P = prod_i a_i^i` with each `a_i`
/// square-free and pairwise coprime. Exact over the rationals. Returns the
/// nontrivial `(a_i, i)` pairs with monic `a_i`.
pub(crate) fn yun_square_free(p: &[BigRational]) -> Vec<(Vec<BigRational>, usize)> {
    let p = rat_make_monic(rat_trim(p.to_vec()));
    if rat_deg(&p) == 0 {
        return Vec::new();
    }
    let dp = rat_derivative(&p);
    let g = rat_gcd(&p, &dp);
    if rat_deg(&g) == 0 {
        return vec![(p, 1)];
    }
    let mut out = Vec::new();
    let mut b = rat_divrem(&p, &g).0;
    let c = rat_divrem(&dp, &g).0;
    let mut d = rat_sub(&c, &rat_derivative(&b));
    let mut i = 1usize;
    while rat_deg(&b) > 0 {
        let a = rat_gcd(&b, &d);
        if rat_deg(&a) > 0 {
            out.push((a.clone(), i));
        }
        b = rat_divrem(&b, &a).0;
        let cnext = rat_divrem(&d, &a).0;
        d = rat_sub(&cnext, &rat_derivative(&b));
        i += 1;
    }
    out
}

pub(crate) fn rat_trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

pub(crate) fn rat_deg(v: &[BigRational]) -> usize {
    v.len().saturating_sub(1)
}

fn rat_make_monic(mut v: Vec<BigRational>) -> Vec<BigRational> {
    if let Some(lead) = v.last().cloned() {
        if !lead.is_zero() && !lead.is_one() {
            for c in v.iter_mut() {
                *c /= lead.clone();
            }
        }
    }
    v
}

fn rat_derivative(v: &[BigRational]) -> Vec<BigRational> {
    if v.len() <= 1 {
        return Vec::new();
    }
    v.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(i.into()))
        .collect()
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let v = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    rat_trim(v)
}

/// Quotient and remainder of `a / b`, exact. `b` must be nonzero.
pub(crate) fn rat_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = rat_trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = rat_trim(a.to_vec());
    let db = rat_deg(&b);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lead = b[db].clone();
    while rat_deg(&r) >= db && !r.is_empty() {
        let dr = rat_deg(&r);
        let f = &r[dr] / &lead;
        q[dr - db] = f.clone();
        for i in 0..=db {
            let t = &b[i] * &f;
            r[dr - db + i] -= t;
        }
        r = rat_trim(r);
        if dr == 0 {
            break;
        }
    }
    (rat_trim(q), r)
}

fn rat_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = rat_make_monic(rat_trim(a.to_vec()));
    let mut y = rat_make_monic(rat_trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = rat_divrem(&x, &y);
        x = y;
        y = rat_make_monic(r);
    }
    if x.is_empty() {
        vec![BigRational::one()]
    } else {
        x
    }
}
