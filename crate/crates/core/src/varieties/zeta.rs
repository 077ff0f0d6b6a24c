//! Reconstruction of the rational zeta function from finitely many counts.
//!
//! Write `Z(X,t) = A(t)/B(t)` with `A = prod_{i odd} P_i` and
//! `B = prod_{i even} P_i`. Matching the power series of `Z` gives linear
//! equations for the coefficients of `A` and `B`; Poincare duality makes
//! the coefficient lists of `A` and of `B/((1-t)(1-q^d t))` symmetric up to
//! a sign `sigma` and powers of `q`, which halves the unknowns and lets
//! `ceil(sum b_i / 2)` counts suffice. The solve is exact rational; the
//! only floating point is the final split of `A` and `B` into the `P_i` by
//! root magnitude, and that split is verified by exact polynomial
//! multiplication afterwards.

use super::{validate_betti, PointCounts, VarietyError};
use crate::roots::rational_poly_roots;
use crate::tolerances::Tolerances;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `Z(X,t)` in factored form: `polys[i]` is `P_i` ascending with constant
/// term 1, `deg P_i = b_i`, and `Z = prod P_i^{(-1)^{i+1}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaRational {
    pub q: u128,
    pub d: usize,
    pub polys: Vec<Vec<BigInt>>,
}

impl ZetaRational {
    /// Evaluates `Z(X,t)` at a complex point (odd-degree product over
    /// even-degree product).
    pub fn eval_z(&self, t: Complex64) -> Complex64 {
        let mut num = Complex64::new(1.0, 0.0);
        let mut den = Complex64::new(1.0, 0.0);
        for (i, p) in self.polys.iter().enumerate() {
            let v = eval_bigint_poly(p, t);
            if i % 2 == 1 {
                num *= v;
            } else {
                den *= v;
            }
        }
        num / den
    }

    /// `zeta(X,s) = Z(X, q^{-s})`.
    pub fn eval_s(&self, s: Complex64) -> Complex64 {
        let lnq = (self.q as f64).ln();
        let t = (-s * lnq).exp();
        self.eval_z(t)
    }

    /// Worst relative deviation of `|lambda|` from `q^{i/2}` per degree.
    pub fn weil_residuals(&self) -> Vec<(usize, f64)> {
        let mut out = Vec::new();
        for (i, p) in self.polys.iter().enumerate() {
            let target = (self.q as f64).powf(i as f64 / 2.0);
            let worst = reciprocal_roots(p)
                .iter()
                .map(|l| (l.norm() - target).abs() / target)
                .fold(0.0f64, f64::max);
            out.push((i, worst));
        }
        out
    }
}

pub(crate) fn eval_bigint_poly(p: &[BigInt], t: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        acc = acc * t + super::bigint_to_f64(c);
    }
    acc
}

/// Reciprocal roots (Frobenius eigenvalues) of `P(t) = prod (1 - lambda t)`,
/// repeated per multiplicity.
pub(crate) fn reciprocal_roots(p: &[BigInt]) -> Vec<Complex64> {
    if p.len() <= 1 {
        return Vec::new();
    }
    let rat: Vec<BigRational> = p.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let tol = Tolerances::default();
    let roots = rational_poly_roots(&rat, tol.root_residual)
        .expect("integer polynomial with nonzero constant term");
    let mut out = Vec::new();
    for (z, m) in roots {
        let lambda = Complex64::new(1.0, 0.0) / z;
        for _ in 0..m {
            out.push(lambda);
        }
    }
    out
}

/// Solves for the `P_i` from point counts and the betti pattern.
pub fn zeta_from_counts(
    counts: &PointCounts,
    betti: &[usize],
) -> Result<ZetaRational, VarietyError> {
    validate_betti(betti)?;
    let total: usize = betti.iter().sum();
    let need = total.div_ceil(2);
    let m_count = counts.counts.len();
    if m_count < need {
        return Err(VarietyError::InsufficientCounts { need, got: m_count });
    }
    let d = (betti.len() - 1) / 2;
    let q = BigInt::from(counts.q);
    let z = series_from_counts(&counts.counts);
    let deg_a: usize = betti.iter().skip(1).step_by(2).sum();
    let deg_b: usize = betti.iter().step_by(2).sum();
    let deg_bt = deg_b - 2;

    let sigma_opts = |deg: usize| if deg == 0 { vec![1i64] } else { vec![1, -1] };
    let mut solutions: Vec<(Vec<BigRational>, Vec<BigRational>)> = Vec::new();
    let mut underdetermined = false;
    for &sa in &sigma_opts(deg_a) {
        for &sb in &sigma_opts(deg_bt) {
            match solve_combo(&z, m_count, deg_a, deg_bt, d, &q, sa, sb) {
                ComboOutcome::Unique(a, b) => {
                    if !solutions.contains(&(a.clone(), b.clone())) {
                        solutions.push((a, b));
                    }
                }
                ComboOutcome::Underdetermined => underdetermined = true,
                ComboOutcome::Inconsistent => {}
            }
        }
    }
    let (a_rat, b_rat) = match solutions.len() {
        0 if underdetermined => {
            return Err(VarietyError::InsufficientCounts { need: need + 1, got: m_count })
        }
        0 => return Err(VarietyError::SurplusCountMismatch),
        1 => solutions.pop().unwrap(),
        // Distinct consistent factorizations: the counts do not pin the
        // answer down.
        _ => return Err(VarietyError::InsufficientCounts { need: need + 1, got: m_count }),
    };
    let a_int = rationals_to_integers(&a_rat).ok_or(VarietyError::NonIntegerCoefficients)?;
    let b_int = rationals_to_integers(&b_rat).ok_or(VarietyError::NonIntegerCoefficients)?;
    let polys = split_into_weil_polys(&a_int, &b_int, betti, counts.q, d)?;
    Ok(ZetaRational { q: counts.q, d, polys })
}

/// Power series of `exp(sum N_m t^m / m)` to the order the counts allow:
/// `j z_j = sum_{m=1..j} N_m z_{j-m}`.
fn series_from_counts(counts: &[BigInt]) -> Vec<BigRational> {
    let m = counts.len();
    let mut z = Vec::with_capacity(m + 1);
    z.push(BigRational::one());
    for j in 1..=m {
        let mut s = BigRational::zero();
        for (k, n) in counts.iter().take(j).enumerate() {
            s += BigRational::from_integer(n.clone()) * &z[j - k - 1];
        }
        z.push(s / BigRational::from_integer(j.into()));
    }
    z
}

enum ComboOutcome {
    Unique(Vec<BigRational>, Vec<BigRational>),
    Underdetermined,
    Inconsistent,
}

/// A linear form `c + sum_k v_k u_k` in the unknown coefficients.
#[derive(Clone)]
struct Lin {
    c: BigRational,
    v: Vec<BigRational>,
}

impl Lin {
    fn constant(n: usize, c: BigRational) -> Self {
        Lin { c, v: vec![BigRational::zero(); n] }
    }
    fn unknown(n: usize, idx: usize, scale: BigRational) -> Self {
        let mut v = vec![BigRational::zero(); n];
        v[idx] = scale;
        Lin { c: BigRational::zero(), v }
    }
    fn add_scaled(&mut self, other: &Lin, f: &BigRational) {
        self.c += &other.c * f;
        for (a, b) in self.v.iter_mut().zip(&other.v) {
            *a += b * f;
        }
    }
    fn eval(&self, u: &[BigRational]) -> BigRational {
        let mut acc = self.c.clone();
        for (k, coeff) in self.v.iter().enumerate() {
            acc += coeff * &u[k];
        }
        acc
    }
}

fn unknown_count(deg: usize, sigma: i64) -> usize {
    if deg == 0 {
        return 0;
    }
    let pairs = (deg - 1) / 2;
    let middle = usize::from(deg % 2 == 0 && sigma == 1);
    pairs + middle
}

/// Coefficient forms of a degree-`deg` polynomial with constant term 1 and
/// the duality symmetry `a_{deg-j} = sigma q^{d(deg-2j)/2} a_j`. Fresh
/// unknowns start at `offset`.
fn symmetric_forms(
    deg: usize,
    sigma: i64,
    q: &BigInt,
    d: usize,
    n_total: usize,
    offset: usize,
) -> Vec<Lin> {
    let sig = BigRational::from_integer(sigma.into());
    let q_half_pow = |e2: usize| -> BigRational {
        assert!(e2 % 2 == 0, "irrational symmetry factor");
        BigRational::from_integer(q.pow((e2 / 2) as u32))
    };
    let mut forms = vec![Lin::constant(n_total, BigRational::zero()); deg + 1];
    forms[0] = Lin::constant(n_total, BigRational::one());
    if deg == 0 {
        return forms;
    }
    forms[deg] = Lin::constant(n_total, &sig * q_half_pow(d * deg));
    let mut next = offset;
    let mut j = 1;
    while j < deg - j {
        forms[j] = Lin::unknown(n_total, next, BigRational::one());
        forms[deg - j] = Lin::unknown(n_total, next, &sig * q_half_pow(d * (deg - 2 * j)));
        next += 1;
        j += 1;
    }
    if deg % 2 == 0 && deg / 2 >= 1 {
        forms[deg / 2] = if sigma == 1 {
            Lin::unknown(n_total, next, BigRational::one())
        } else {
            Lin::constant(n_total, BigRational::zero())
        };
    }
    forms
}

#[allow(clippy::too_many_arguments)]
fn solve_combo(
    z: &[BigRational],
    m_count: usize,
    deg_a: usize,
    deg_bt: usize,
    d: usize,
    q: &BigInt,
    sigma_a: i64,
    sigma_b: i64,
) -> ComboOutcome {
    let na = unknown_count(deg_a, sigma_a);
    let nb = unknown_count(deg_bt, sigma_b);
    let n = na + nb;
    let a_forms = symmetric_forms(deg_a, sigma_a, q, d, n, 0);
    let bt_forms = symmetric_forms(deg_bt, sigma_b, q, d, n, na);
    // B = (1 - t)(1 - q^d t) * Btilde.
    let qd = BigRational::from_integer(q.pow(d as u32));
    let known = [
        BigRational::one(),
        -(BigRational::one() + &qd),
        qd.clone(),
    ];
    let deg_b = deg_bt + 2;
    let mut b_forms = vec![Lin::constant(n, BigRational::zero()); deg_b + 1];
    for (i, f) in known.iter().enumerate() {
        for (k, bt) in bt_forms.iter().enumerate() {
            b_forms[i + k].add_scaled(bt, f);
        }
    }
    // Coefficient of t^j in Z * B must equal the coefficient of A.
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for j in 1..=m_count {
        let mut lhs = if j <= deg_a {
            a_forms[j].clone()
        } else {
            Lin::constant(n, BigRational::zero())
        };
        let minus_one = BigRational::from_integer((-1).into());
        for k in 0..=j.min(deg_b) {
            let f = &z[j - k] * &minus_one;
            lhs.add_scaled(&b_forms[k], &f);
        }
        rows.push((lhs.v, -lhs.c));
    }
    match solve_exact(rows, n) {
        SolveOutcome::Inconsistent => ComboOutcome::Inconsistent,
        SolveOutcome::Underdetermined => ComboOutcome::Underdetermined,
        SolveOutcome::Unique(u) => {
            let a: Vec<BigRational> = a_forms.iter().map(|f| f.eval(&u)).collect();
            let bt: Vec<BigRational> = bt_forms.iter().map(|f| f.eval(&u)).collect();
            let mut b = vec![BigRational::zero(); deg_b + 1];
            for (i, f) in known.iter().enumerate() {
                for (k, c) in bt.iter().enumerate() {
                    b[i + k] += f * c;
                }
            }
            ComboOutcome::Unique(a, b)
        }
    }
}

enum SolveOutcome {
    Unique(Vec<BigRational>),
    Underdetermined,
    Inconsistent,
}

/// Exact Gauss elimination. Requires a unique solution to report `Unique`;
/// surplus rows must be consistent.
fn solve_exact(mut rows: Vec<(Vec<BigRational>, BigRational)>, n: usize) -> SolveOutcome {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut rank = 0usize;
    for col in 0..n {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = rows[rank].0[col].clone();
        for c in rows[rank].0.iter_mut() {
            *c /= inv.clone();
        }
        rows[rank].1 /= inv.clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r].0[col].is_zero() {
                let f = rows[r].0[col].clone();
                let (head, tail) = if r < rank {
                    let (a, b) = rows.split_at_mut(rank);
                    (&mut a[r], &b[0])
                } else {
                    let (a, b) = rows.split_at_mut(r);
                    (&mut b[0], &a[rank])
                };
                for (x, y) in head.0.iter_mut().zip(&tail.0) {
                    *x -= y * &f;
                }
                head.1 -= &tail.1 * &f;
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    for (v, rhs) in rows.iter().skip(rank) {
        debug_assert!(v.iter().all(|c| c.is_zero()));
        if !rhs.is_zero() {
            return SolveOutcome::Inconsistent;
        }
    }
    if pivot_of_col.iter().any(|p| p.is_none()) {
        return SolveOutcome::Underdetermined;
    }
    let mut u = vec![BigRational::zero(); n];
    for (col, p) in pivot_of_col.iter().enumerate() {
        u[col] = rows[p.unwrap()].1.clone();
    }
    SolveOutcome::Unique(u)
}

pub(crate) fn rationals_to_integers(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

/// Splits the exact odd part `A` and even part `B` into the `P_i` by
/// grouping reciprocal roots on the Weil circles `|lambda| = q^{i/2}`,
/// then verifies the regrouped product recovers `A` and `B` exactly.
fn split_into_weil_polys(
    a: &[BigInt],
    b: &[BigInt],
    betti: &[usize],
    q: u128,
    d: usize,
) -> Result<Vec<Vec<BigInt>>, VarietyError> {
    let tol = Tolerances::default();
    let lnq = (q as f64).ln();
    let mut buckets: Vec<Vec<(Complex64, usize)>> = vec![Vec::new(); 2 * d + 1];
    for (part, parity) in [(a, 1usize), (b, 0usize)] {
        if part.len() <= 1 {
            continue;
        }
        let rat: Vec<BigRational> =
            part.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let roots = rational_poly_roots(&rat, tol.root_residual)
            .map_err(|_| VarietyError::NonIntegerCoefficients)?;
        for (t_root, mult) in roots {
            let lambda = Complex64::new(1.0, 0.0) / t_root;
            let i_real = 2.0 * lambda.norm().ln() / lnq;
            let mut cand = i_real.round() as i64;
            if cand.rem_euclid(2) != parity as i64 {
                cand = if i_real >= cand as f64 { cand + 1 } else { cand - 1 };
            }
            let ok = (0..=2 * d as i64).contains(&cand) && {
                let target = (q as f64).powf(cand as f64 / 2.0);
                (lambda.norm() - target).abs() <= tol.weil * target
            };
            if !ok {
                return Err(VarietyError::WeilBoundViolated {
                    lambda: format!("{lambda}"),
                });
            }
            buckets[cand as usize].push((lambda, mult));
        }
    }
    let mut polys = Vec::with_capacity(2 * d + 1);
    for (i, bucket) in buckets.iter().enumerate() {
        let got: usize = bucket.iter().map(|(_, m)| m).sum();
        if got != betti[i] {
            return Err(VarietyError::WeilBoundViolated {
                lambda: format!("degree {i} holds {got} eigenvalues, betti says {}", betti[i]),
            });
        }
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for (lambda, mult) in bucket {
            for _ in 0..*mult {
                let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
                for (k, x) in c.iter().enumerate() {
                    next[k] += x;
                    next[k + 1] -= x * lambda;
                }
                c = next;
            }
        }
        let p: Vec<BigInt> = c
            .iter()
            .map(|x| BigInt::from(x.re.round() as i64))
            .collect();
        polys.push(p);
    }
    // The split must multiply back exactly; anything else means the
    // numeric grouping corrupted a coefficient.
    let mut prod_odd = vec![BigInt::one()];
    let mut prod_even = vec![BigInt::one()];
    for (i, p) in polys.iter().enumerate() {
        let target = if i % 2 == 1 { &mut prod_odd } else { &mut prod_even };
        *target = bigint_poly_mul(target, p);
    }
    if prod_odd != normalize_one(a) || prod_even != normalize_one(b) {
        return Err(VarietyError::NonIntegerCoefficients);
    }
    let qd = BigInt::from(q).pow(d as u32);
    if polys[0] != vec![BigInt::one(), BigInt::from(-1)]
        || polys[2 * d] != vec![BigInt::one(), -qd]
    {
        return Err(VarietyError::WeilBoundViolated {
            lambda: "P_0 or P_2d is not the forced linear factor".into(),
        });
    }
    Ok(polys)
}

fn normalize_one(p: &[BigInt]) -> Vec<BigInt> {
    if p.is_empty() {
        vec![BigInt::one()]
    } else {
        p.to_vec()
    }
}

pub(crate) fn bigint_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{
        count_points, functional_equation_check, gather_counts, point_counts_from_zeta,
        VarietyKind, VarietySpec,
    };
    use super::*;
    use crate::finite_field::build_field;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn p1_over(q: u64) -> VarietySpec {
        let f = build_field(q, 1, None).unwrap();
        VarietySpec::new(f, VarietyKind::ProjectiveSpace { n: 1 }).unwrap()
    }

    fn elliptic_f5() -> VarietySpec {
        let f = build_field(5, 1, None).unwrap();
        let a = [0u64, 0, 0, 1, 1].map(|c| f.from_u64(c));
        VarietySpec::new(f, VarietyKind::WeierstrassCurve { a }).unwrap()
    }

    #[test]
    fn projective_line_factors() {
        let spec = p1_over(3);
        let counts = gather_counts(&spec, 2).unwrap();
        let z = zeta_from_counts(&counts, &spec.betti()).unwrap();
        assert_eq!(z.polys, vec![big(&[1, -1]), big(&[1]), big(&[1, -3])]);
    }

    #[test]
    fn projective_plane_factors() {
        let spec = VarietySpec::new(
            build_field(2, 1, None).unwrap(),
            VarietyKind::ProjectiveSpace { n: 2 },
        )
        .unwrap();
        let counts = gather_counts(&spec, 2).unwrap();
        let z = zeta_from_counts(&counts, &spec.betti()).unwrap();
        assert_eq!(
            z.polys,
            vec![big(&[1, -1]), big(&[1]), big(&[1, -2]), big(&[1]), big(&[1, -4])]
        );
    }

    #[test]
    fn elliptic_curve_numerator_is_exact() {
        let spec = elliptic_f5();
        let counts = gather_counts(&spec, 2).unwrap();
        assert_eq!(counts.counts, vec![BigInt::from(9), BigInt::from(27)]);
        let z = zeta_from_counts(&counts, &spec.betti()).unwrap();
        assert_eq!(z.polys[1], big(&[1, 3, 5]));
        assert_eq!(z.polys[0], big(&[1, -1]));
        assert_eq!(z.polys[2], big(&[1, -5]));
    }

    #[test]
    fn product_of_lines_has_repeated_middle_factor() {
        let p1 = p1_over(3);
        let spec = VarietySpec::new(
            p1.base.clone(),
            VarietyKind::Product(Box::new(p1.clone()), Box::new(p1)),
        )
        .unwrap();
        let counts = gather_counts(&spec, 2).unwrap();
        let z = zeta_from_counts(&counts, &spec.betti()).unwrap();
        assert_eq!(z.polys[2], big(&[1, -6, 9])); // (1 - 3t)^2
        assert_eq!(z.polys[4], big(&[1, -9]));
    }

    #[test]
    fn antisymmetric_middle_factor_is_recovered() {
        // Eigenvalues {q, -q} in degree 2: P_2 = 1 - q^2 t^2 has a zero
        // middle coefficient, exercising the sigma = -1 branch. Counts:
        // N_m = 1 + q^m + (-q)^m + q^{2m}.
        let q: i64 = 2;
        let counts = PointCounts {
            q: q as u128,
            counts: vec![BigInt::from(1 + q * q), BigInt::from(1 + 2 * q * q + q * q * q * q)],
        };
        let z = zeta_from_counts(&counts, &[1, 0, 2, 0, 1]).unwrap();
        assert_eq!(z.polys[2], big(&[1, 0, -4]));
    }

    #[test]
    fn counts_round_trip_through_the_factorization() {
        let specs = [
            p1_over(3),
            elliptic_f5(),
            VarietySpec::new(
                build_field(2, 1, None).unwrap(),
                VarietyKind::ProjectiveSpace { n: 2 },
            )
            .unwrap(),
        ];
        for spec in &specs {
            let m = 4;
            let counts = gather_counts(spec, m).unwrap();
            let z = zeta_from_counts(&counts, &spec.betti()).unwrap();
            let back = point_counts_from_zeta(&z, m);
            assert_eq!(back.counts, counts.counts, "{:?}", spec.kind);
        }
    }

    #[test]
    fn surplus_counts_are_verified() {
        let spec = elliptic_f5();
        let mut counts = gather_counts(&spec, 2).unwrap();
        counts.counts[1] = BigInt::from(26); // true N_2 is 27
        assert_eq!(
            zeta_from_counts(&counts, &spec.betti()).unwrap_err(),
            VarietyError::SurplusCountMismatch
        );
    }

    #[test]
    fn wrong_betti_shape_is_rejected() {
        // Elliptic counts against the P^1 pattern: inconsistent.
        let counts = PointCounts {
            q: 5,
            counts: vec![BigInt::from(9), BigInt::from(27)],
        };
        assert_eq!(
            zeta_from_counts(&counts, &[1, 0, 1]).unwrap_err(),
            VarietyError::SurplusCountMismatch
        );
    }

    #[test]
    fn too_few_counts_are_rejected() {
        let counts = PointCounts { q: 5, counts: vec![BigInt::from(9)] };
        assert!(matches!(
            zeta_from_counts(&counts, &[1, 2, 1]).unwrap_err(),
            VarietyError::InsufficientCounts { need: 2, got: 1 }
        ));
    }

    #[test]
    fn integer_firewall_trips_on_fractions() {
        let v = vec![
            BigRational::one(),
            BigRational::new(BigInt::from(3), BigInt::from(2)),
        ];
        assert_eq!(rationals_to_integers(&v), None);
    }

    #[test]
    fn functional_equation_holds_for_reconstructions() {
        let spec = elliptic_f5();
        let counts = gather_counts(&spec, 2).unwrap();
        let z = zeta_from_counts(&counts, &spec.betti()).unwrap();
        let report = functional_equation_check(&z, 1e-9);
        assert!(report.ok(), "{:?}", report.violations);
        assert_eq!(report.pairings.len(), 2);
    }

    #[test]
    fn weil_residuals_are_tiny() {
        let spec = elliptic_f5();
        let counts = gather_counts(&spec, 2).unwrap();
        let z = zeta_from_counts(&counts, &spec.betti()).unwrap();
        for (_, r) in z.weil_residuals() {
            assert!(r <= 1e-9, "residual {r}");
        }
    }

    #[test]
    fn zeta_evaluation_matches_the_series() {
        // For P^1/F_3, Z(t) = 1 / ((1-t)(1-3t)).
        let spec = p1_over(3);
        let counts = gather_counts(&spec, 2).unwrap();
        let z = zeta_from_counts(&counts, &spec.betti()).unwrap();
        let t = Complex64::new(0.1, 0.05);
        let expect = 1.0 / ((1.0 - t) * (1.0 - 3.0 * t));
        assert!((z.eval_z(t) - expect).norm() < 1e-14);
        // And zeta(s) = Z(q^{-s}).
        let s = Complex64::new(2.0, -1.3);
        let t = (-s * 3f64.ln()).exp();
        assert!((z.eval_s(s) - z.eval_z(t)).norm() < 1e-14);
    }

    #[test]
    fn custom_spec_round_trip_with_chosen_weil_numbers() {
        // Degree-2 eigenvalues 2e^{i pi/3} and conjugate over q = 4-like
        // shape is not integral; instead take {1+i, 1-i} over q = 2:
        // P_1 = 1 - 2t + 2t^2 (|lambda|^2 = 2), a genus-1 shape.
        let p1 = vec![1i64, -2, 2];
        let sums = super::super::reciprocal_power_sums(&big(&p1), 3);
        let q = 2i64;
        let counts: Vec<BigInt> = (1..=3)
            .map(|m| BigInt::from(1 + q.pow(m as u32)) - &sums[m - 1])
            .collect();
        let pc = PointCounts { q: 2, counts };
        let z = zeta_from_counts(&pc, &[1, 2, 1]).unwrap();
        assert_eq!(z.polys[1], big(&p1));
        let back = point_counts_from_zeta(&z, 3);
        assert_eq!(back.counts, pc.counts);
    }
}
