//! Variety descriptions, point counting, and the rational zeta function.
//!
//! The zeta function of a variety over `F_q` is assembled from the counts
//! `N_m = |X(F_{q^m})|` through `Z(X,t) = exp(sum_m N_m t^m / m)`, which is
//! a ratio of integer polynomials `P_0 ... P_{2d}` with `Z = prod
//! P_i^{(-1)^{i+1}}`. Counting is the ground truth: projective spaces in
//! closed form, Weierstrass curves by exhaustive enumeration, products by
//! multiplication, and custom data verbatim. Reconstruction of the `P_i`
//! from finitely many counts lives in [`zeta`]; everything there is exact
//! rational arithmetic until the final root-splitting step.

pub mod io;
pub mod zeta;

pub use zeta::{zeta_from_counts, ZetaRational};

use crate::finite_field::{build_field, FieldError, FqElement, FqField};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VarietyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("curve discriminant vanishes: the Weierstrass equation is singular")]
    SingularCurve,
    #[error("no stored count for m = {0}")]
    MissingCount(usize),
    #[error("counting over F_(q^{m}) needs curve coefficients in the prime field")]
    ExtensionUnsupported { m: usize },
    #[error("betti numbers are invalid: {0}")]
    InvalidBetti(String),
    #[error("need at least {need} point counts, got {got}")]
    InsufficientCounts { need: usize, got: usize },
    #[error("supplied counts are inconsistent with the betti pattern")]
    SurplusCountMismatch,
    #[error("reconstructed zeta coefficients are not integers")]
    NonIntegerCoefficients,
    #[error("eigenvalue {lambda} does not sit on any Weil circle |z| = q^(i/2)")]
    WeilBoundViolated { lambda: String },
    #[error("variety spec is malformed: {0}")]
    Malformed(String),
}

/// What the variety is; the base field lives in [`VarietySpec`].
#[derive(Debug, Clone, PartialEq)]
pub enum VarietyKind {
    /// `P^n`, `n >= 1`.
    ProjectiveSpace { n: usize },
    /// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`, coefficients
    /// `[a1, a2, a3, a4, a6]` in the base field. Must be nonsingular.
    WeierstrassCurve { a: [FqElement; 5] },
    Product(Box<VarietySpec>, Box<VarietySpec>),
    /// Stored counts `N_1..N_B` plus the betti pattern of the `P_i`.
    Custom { counts: Vec<BigInt>, betti: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarietySpec {
    pub base: FqField,
    pub kind: VarietyKind,
}

/// Point counts `counts[m-1] = N_m` over `F_{q^m}`, `m = 1..=M`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCounts {
    pub q: u128,
    pub counts: Vec<BigInt>,
}

impl VarietySpec {
    pub fn new(base: FqField, kind: VarietyKind) -> Result<Self, VarietyError> {
        let spec = VarietySpec { base, kind };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), VarietyError> {
        match &self.kind {
            VarietyKind::ProjectiveSpace { n } => {
                if *n == 0 {
                    return Err(VarietyError::Malformed(
                        "projective space needs n >= 1".into(),
                    ));
                }
            }
            VarietyKind::WeierstrassCurve { a } => {
                for c in a {
                    self.base.check(c)?;
                }
                if self.base.is_zero(&discriminant(&self.base, a)) {
                    return Err(VarietyError::SingularCurve);
                }
            }
            VarietyKind::Product(l, r) => {
                l.validate()?;
                r.validate()?;
                if l.base != self.base || r.base != self.base {
                    return Err(VarietyError::Malformed(
                        "product factors must share the base field".into(),
                    ));
                }
            }
            VarietyKind::Custom { counts, betti } => {
                validate_betti(betti)?;
                let need = betti.iter().sum::<usize>().div_ceil(2);
                if counts.len() < need {
                    return Err(VarietyError::InsufficientCounts {
                        need,
                        got: counts.len(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Betti numbers `b_0..b_{2d}`, the degree pattern of the `P_i`. Fixed
    /// per kind; Custom supplies its own.
    pub fn betti(&self) -> Vec<usize> {
        match &self.kind {
            VarietyKind::ProjectiveSpace { n } => {
                (0..=2 * n).map(|i| usize::from(i % 2 == 0)).collect()
            }
            VarietyKind::WeierstrassCurve { .. } => vec![1, 2, 1],
            VarietyKind::Product(l, r) => {
                let (bl, br) = (l.betti(), r.betti());
                let mut out = vec![0usize; bl.len() + br.len() - 1];
                for (i, x) in bl.iter().enumerate() {
                    for (j, y) in br.iter().enumerate() {
                        out[i + j] += x * y;
                    }
                }
                out
            }
            VarietyKind::Custom { betti, .. } => betti.clone(),
        }
    }

    pub fn dimension(&self) -> usize {
        (self.betti().len() - 1) / 2
    }
}

pub(crate) fn validate_betti(betti: &[usize]) -> Result<(), VarietyError> {
    if betti.len() < 3 || betti.len() % 2 == 0 {
        return Err(VarietyError::InvalidBetti(
            "need b_0..b_{2d} with d >= 1".into(),
        ));
    }
    let top = betti.len() - 1;
    if betti[0] != 1 || betti[top] != 1 {
        return Err(VarietyError::InvalidBetti("b_0 and b_{2d} must be 1".into()));
    }
    for i in 0..=top / 2 {
        if betti[i] != betti[top - i] {
            return Err(VarietyError::InvalidBetti(format!(
                "duality requires b_{i} = b_{}",
                top - i
            )));
        }
    }
    for (i, b) in betti.iter().enumerate() {
        if i % 2 == 1 && b % 2 != 0 {
            return Err(VarietyError::InvalidBetti(format!(
                "odd-degree b_{i} = {b} must be even"
            )));
        }
    }
    Ok(())
}

/// `N_m = |X(F_{q^m})|`.
pub fn count_points(spec: &VarietySpec, m: usize) -> Result<BigInt, VarietyError> {
    assert!(m >= 1, "counts are indexed from m = 1");
    match &spec.kind {
        VarietyKind::ProjectiveSpace { n } => {
            let qm = BigInt::from(spec.base.q()).pow(m as u32);
            let mut acc = BigInt::one();
            let mut pw = BigInt::one();
            for _ in 0..*n {
                pw *= &qm;
                acc += &pw;
            }
            Ok(acc)
        }
        VarietyKind::WeierstrassCurve { a } => {
            let (field, coeffs) = extension_with_coefficients(&spec.base, a, m)?;
            count_weierstrass(&field, &coeffs)
        }
        VarietyKind::Product(l, r) => Ok(count_points(l, m)? * count_points(r, m)?),
        VarietyKind::Custom { counts, .. } => counts
            .get(m - 1)
            .cloned()
            .ok_or(VarietyError::MissingCount(m)),
    }
}

/// Counts for `m = 1..=max_m` in one sweep.
pub fn gather_counts(spec: &VarietySpec, max_m: usize) -> Result<PointCounts, VarietyError> {
    let counts = (1..=max_m)
        .map(|m| count_points(spec, m))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PointCounts { q: spec.base.q(), counts })
}

/// The field `F_{q^m}` together with the curve coefficients moved into it.
/// For m = 1 this is the base itself. Larger m requires a fresh extension,
/// which is only compatible with the base when the coefficients are prime
/// field constants (no embedding of F_{p^r} into F_{p^{rm}} is modeled).
fn extension_with_coefficients(
    base: &FqField,
    a: &[FqElement; 5],
    m: usize,
) -> Result<(FqField, [FqElement; 5]), VarietyError> {
    if m == 1 {
        return Ok((base.clone(), a.clone()));
    }
    let constant = |c: &FqElement| c.coeffs.iter().skip(1).all(|&x| x == 0);
    if base.r() == 1 || a.iter().all(constant) {
        let ext = build_field(base.p(), base.r() * m, None)?;
        let coeffs = a.clone().map(|c| ext.from_u64(c.coeffs[0]));
        Ok((ext, coeffs))
    } else {
        Err(VarietyError::ExtensionUnsupported { m })
    }
}

/// Discriminant of the general Weierstrass equation (valid in every
/// characteristic): with b2 = a1^2 + 4a2, b4 = 2a4 + a1a3, b6 = a3^2 + 4a6,
/// b8 = a1^2 a6 + 4 a2 a6 - a1 a3 a4 + a2 a3^2 - a4^2,
/// delta = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6.
fn discriminant(f: &FqField, a: &[FqElement; 5]) -> FqElement {
    let [a1, a2, a3, a4, a6] = a;
    let k = |n: u64| f.from_u64(n % f.p());
    let mul = |x: &FqElement, y: &FqElement| f.mul_raw(x, y);
    let add = |x: &FqElement, y: &FqElement| f.add_raw(x, y);
    let sub = |x: &FqElement, y: &FqElement| f.sub_raw(x, y);

    let b2 = add(&mul(a1, a1), &mul(&k(4), a2));
    let b4 = add(&mul(&k(2), a4), &mul(a1, a3));
    let b6 = add(&mul(a3, a3), &mul(&k(4), a6));
    let b8 = sub(
        &add(
            &add(&mul(&mul(a1, a1), a6), &mul(&k(4), &mul(a2, a6))),
            &mul(a2, &mul(a3, a3)),
        ),
        &add(&mul(a1, &mul(a3, a4)), &mul(a4, a4)),
    );
    let t1 = mul(&mul(&b2, &b2), &b8);
    let t2 = mul(&k(8), &mul(&b4, &mul(&b4, &b4)));
    let t3 = mul(&k(27), &mul(&b6, &b6));
    let t4 = mul(&k(9), &mul(&b2, &mul(&b4, &b6)));
    sub(&t4, &add(&add(&t1, &t2), &t3))
}

/// Affine solutions of the Weierstrass equation plus the point at infinity.
/// Per x the equation is a quadratic in y: in odd characteristic complete
/// the square and read the quadratic character; in characteristic 2 the
/// solution count follows from the Artin-Schreier trace criterion.
fn count_weierstrass(f: &FqField, a: &[FqElement; 5]) -> Result<BigInt, VarietyError> {
    let [a1, a2, a3, a4, a6] = a;
    let mut affine: u64 = 0;
    if f.p() == 2 {
        for x in f.elements()? {
            let b = f.add_raw(&f.mul_raw(a1, &x), a3);
            let c = rhs_cubic(f, &x, a2, a4, a6);
            if f.is_zero(&b) {
                // y^2 = c: squaring is bijective, exactly one y.
                affine += 1;
            } else {
                // y = bz turns it into z^2 + z = c / b^2.
                let b2 = f.mul_raw(&b, &b);
                let u = f.div(&c, &b2).expect("b nonzero");
                if f.trace_to_f2(&u) == 0 {
                    affine += 2;
                }
            }
        }
    } else {
        let chi_exp = (f.q() - 1) / 2;
        let quarter = f
            .inv(&f.from_u64(4 % f.p()))
            .expect("4 invertible in odd characteristic");
        let one = f.one();
        for x in f.elements()? {
            let b = f.add_raw(&f.mul_raw(a1, &x), a3);
            let c = rhs_cubic(f, &x, a2, a4, a6);
            // y = z - b/2: z^2 = c + b^2/4.
            let delta = f.add_raw(&c, &f.mul_raw(&f.mul_raw(&b, &b), &quarter));
            if f.is_zero(&delta) {
                affine += 1;
            } else if f.pow_raw(&delta, chi_exp) == one {
                affine += 2;
            }
        }
    }
    Ok(BigInt::from(affine) + 1)
}

fn rhs_cubic(
    f: &FqField,
    x: &FqElement,
    a2: &FqElement,
    a4: &FqElement,
    a6: &FqElement,
) -> FqElement {
    // x^3 + a2 x^2 + a4 x + a6 by Horner.
    let mut acc = f.add_raw(x, a2);
    acc = f.add_raw(&f.mul_raw(&acc, x), a4);
    f.add_raw(&f.mul_raw(&acc, x), a6)
}

/// Power sums `p_m = sum_u lambda_u^m` of the reciprocal roots of
/// `P(t) = prod_u (1 - lambda_u t)`, by Newton's identities on the
/// coefficients. Exact.
pub(crate) fn reciprocal_power_sums(coeffs: &[BigInt], max_m: usize) -> Vec<BigInt> {
    let deg = coeffs.len() - 1;
    let mut sums: Vec<BigInt> = Vec::with_capacity(max_m);
    for m in 1..=max_m {
        let mut s = if m <= deg {
            -(BigInt::from(m) * &coeffs[m])
        } else {
            BigInt::zero()
        };
        for k in 1..m.min(deg + 1) {
            s -= &coeffs[k] * &sums[m - k - 1];
        }
        sums.push(s);
    }
    sums
}

/// Recovers `N_m` from the factored zeta function:
/// `N_m = sum_i (-1)^i S_i(m)` with `S_i` the power sums of the reciprocal
/// roots of `P_i`. This is the coefficient extraction of
/// `-t d/dt log Z(X,t)` with the sign convention folded in. Exact.
pub fn point_counts_from_zeta(z: &ZetaRational, max_m: usize) -> PointCounts {
    let mut counts = vec![BigInt::zero(); max_m];
    for (i, p) in z.polys.iter().enumerate() {
        if p.len() <= 1 {
            continue;
        }
        let sums = reciprocal_power_sums(p, max_m);
        for m in 0..max_m {
            if i % 2 == 0 {
                counts[m] += &sums[m];
            } else {
                counts[m] -= &sums[m];
            }
        }
    }
    PointCounts { q: z.q, counts }
}

/// One Poincare-duality pairing row: degrees `(i, 2d-i)` and the worst
/// multiset deviation after mapping `lambda -> q^d / lambda`.
#[derive(Debug, Clone)]
pub struct DualityPairing {
    pub degree: usize,
    pub partner: usize,
    pub max_deviation: f64,
}

#[derive(Debug, Clone)]
pub struct FunctionalEquationReport {
    pub pairings: Vec<DualityPairing>,
    pub violations: Vec<String>,
}

impl FunctionalEquationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `lambda -> q^d / lambda` maps the reciprocal roots of `P_i`
/// onto those of `P_{2d-i}` as multisets, degree by degree.
pub fn functional_equation_check(z: &ZetaRational, tol: f64) -> FunctionalEquationReport {
    let qd = (z.q as f64).powi(z.d as i32);
    let mut pairings = Vec::new();
    let mut violations = Vec::new();
    for i in 0..=z.d {
        let partner = 2 * z.d - i;
        let from = zeta::reciprocal_roots(&z.polys[i]);
        let onto = zeta::reciprocal_roots(&z.polys[partner]);
        if from.len() != onto.len() {
            violations.push(format!(
                "degree {i}: {} roots versus {} in degree {partner}",
                from.len(),
                onto.len()
            ));
            continue;
        }
        let mapped: Vec<Complex64> = from.iter().map(|l| qd / l).collect();
        let dev = multiset_distance(&mapped, &onto);
        let scale = 1.0 + qd;
        if dev > tol * scale {
            violations.push(format!(
                "degree {i} <-> {partner}: multiset deviation {dev:.3e}"
            ));
        }
        pairings.push(DualityPairing { degree: i, partner, max_deviation: dev });
    }
    FunctionalEquationReport { pairings, violations }
}

/// Greedy nearest matching; adequate because Weil circles separate roots
/// far beyond the tolerances in play.
pub(crate) fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut free: Vec<Complex64> = b.to_vec();
    let mut worst = 0.0f64;
    for x in a {
        let (k, d) = free
            .iter()
            .enumerate()
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
            .expect("nonempty");
        worst = worst.max(d);
        free.swap_remove(k);
    }
    worst
}

pub(crate) fn bigint_to_f64(x: &BigInt) -> f64 {
    x.to_f64().expect("coefficient fits f64")
}
