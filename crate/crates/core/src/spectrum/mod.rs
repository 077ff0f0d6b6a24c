//! Frobenius eigenvalue spectra and the 2-periodic parity model.
//!
//! The factored zeta function determines, per cohomological degree `i`, the
//! multiset of reciprocal roots of `P_i`. This module extracts that
//! spectrum, folds it into the two parity classes of the periodic model
//! (even degrees into `TP_0`, odd into `TP_1`, each entry labelled with the
//! weight `i/2`), and equips each class with the operator
//! `Theta = log_q(Fr*)`. On a parity class the eigenvalues of `Theta` form
//! arithmetic progressions `alpha_0 + k * 2*pi*i/log q` indexed by the
//! powers of the invertible unit `v` (the degree `-2` generator with
//! `Fr*(v) = v`); the progression data is what the regularized determinant
//! consumes.
//!
//! `matrix_log_q` provides the same logarithm for explicit matrices via the
//! multiplicative Jordan decomposition; see [`matrix_log`].

pub mod linalg;
pub mod matrix_log;

pub use linalg::CMatrix;
pub use matrix_log::{matrix_log_q, MatrixLog};

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use std::f64::consts::PI;
use thiserror::Error;

use crate::roots::rational_poly_roots;
use crate::tolerances::Tolerances;
use crate::varieties::zeta::ZetaRational;
use num_rational::BigRational;

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("root finding did not reach the required residual")]
    RootFindingDiverged,
    #[error("matrix is singular")]
    Singular,
    #[error("eigenvalue clustering is ambiguous at working precision")]
    IllConditioned,
    #[error("malformed spectrum record: {0}")]
    Malformed(String),
}

/// One eigenvalue with its multiplicity and Jordan block sizes. Spectra
/// derived from a zeta function are semisimple (all blocks of size 1);
/// nontrivial blocks enter only through explicit records.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub lambda: Complex64,
    pub multiplicity: usize,
    pub jordan: Vec<usize>,
}

impl SpectrumEntry {
    pub fn semisimple(lambda: Complex64, multiplicity: usize) -> Self {
        SpectrumEntry { lambda, multiplicity, jordan: vec![1; multiplicity] }
    }

    /// Largest Jordan block size minus one; zero iff semisimple.
    pub fn nilpotent_rank(&self) -> usize {
        self.jordan.iter().copied().max().unwrap_or(1) - 1
    }
}

/// Frobenius eigenvalues per cohomological degree `0..=2d`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusSpectrum {
    pub q: u128,
    pub by_degree: Vec<Vec<SpectrumEntry>>,
}

impl FrobeniusSpectrum {
    /// Multiplicity-weighted dimension contributed by degree `i`.
    pub fn dimension_of_degree(&self, i: usize) -> usize {
        self.by_degree
            .get(i)
            .map(|v| v.iter().map(|e| e.multiplicity).sum())
            .unwrap_or(0)
    }

    pub fn total_dimension(&self) -> usize {
        (0..self.by_degree.len()).map(|i| self.dimension_of_degree(i)).sum()
    }

    /// Serializes as one header line `q <value>` followed by one record
    /// `i re im mult j1,j2,...` per entry, floats in round-trippable form.
    pub fn export_records(&self) -> String {
        let mut out = format!("q {}\n", self.q);
        for (i, entries) in self.by_degree.iter().enumerate() {
            for e in entries {
                let jordan: Vec<String> = e.jordan.iter().map(|b| b.to_string()).collect();
                out.push_str(&format!(
                    "{} {:.17e} {:.17e} {} {}\n",
                    i,
                    e.lambda.re,
                    e.lambda.im,
                    e.multiplicity,
                    jordan.join(",")
                ));
            }
        }
        out
    }

    /// Parses the `export_records` format. Degrees absent from the records
    /// are empty; the top recorded degree fixes the length of `by_degree`.
    pub fn from_records(text: &str) -> Result<Self, SpectrumError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| malformed("empty input"))?;
        let q = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["q", v] => v.parse::<u128>().map_err(|_| malformed("bad q value"))?,
            _ => return Err(malformed("first line must be `q <integer>`")),
        };
        if q < 2 {
            return Err(malformed("q must be at least 2"));
        }
        let mut by_degree: Vec<Vec<SpectrumEntry>> = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(malformed("record needs 5 fields: i re im mult jordan"));
            }
            let i: usize = fields[0].parse().map_err(|_| malformed("bad degree"))?;
            let re: f64 = fields[1].parse().map_err(|_| malformed("bad Re"))?;
            let im: f64 = fields[2].parse().map_err(|_| malformed("bad Im"))?;
            let mult: usize = fields[3].parse().map_err(|_| malformed("bad multiplicity"))?;
            let jordan: Vec<usize> = fields[4]
                .split(',')
                .map(|s| s.parse::<usize>().map_err(|_| malformed("bad jordan block")))
                .collect::<Result<_, _>>()?;
            if mult == 0 || jordan.iter().any(|&b| b == 0) {
                return Err(malformed("multiplicity and block sizes must be positive"));
            }
            if jordan.iter().sum::<usize>() != mult {
                return Err(malformed("jordan block sizes must sum to the multiplicity"));
            }
            if by_degree.len() <= i {
                by_degree.resize(i + 1, Vec::new());
            }
            by_degree[i].push(SpectrumEntry {
                lambda: Complex64::new(re, im),
                multiplicity: mult,
                jordan,
            });
        }
        if by_degree.is_empty() {
            return Err(malformed("no records"));
        }
        Ok(FrobeniusSpectrum { q, by_degree })
    }
}

fn malformed(msg: &str) -> SpectrumError {
    SpectrumError::Malformed(msg.to_string())
}

/// Extracts the eigenvalue multiset of each degree from the factored zeta
/// function. Eigenvalues are the reciprocal roots of the `P_i`; exact
/// square-free decomposition supplies the multiplicities and the numeric
/// roots carry a backward-error guarantee, so the entries are grouped
/// rather than repeated.
pub fn spectrum_from_zeta(z: &ZetaRational) -> Result<FrobeniusSpectrum, SpectrumError> {
    let tol = Tolerances::default();
    let mut by_degree = Vec::with_capacity(z.polys.len());
    for p in &z.polys {
        if p.len() <= 1 {
            by_degree.push(Vec::new());
            continue;
        }
        // Reciprocal roots of P are the roots of the reversed polynomial.
        let reversed: Vec<BigRational> = p
            .iter()
            .rev()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let roots = rational_poly_roots(&reversed, tol.root_residual)
            .map_err(|_| SpectrumError::RootFindingDiverged)?;
        let entries = roots
            .into_iter()
            .map(|(lambda, mult)| SpectrumEntry::semisimple(lambda, mult))
            .collect();
        by_degree.push(entries);
    }
    Ok(FrobeniusSpectrum { q: z.q, by_degree })
}

/// Weight bookkeeping label for degree `i`.
pub fn weight_of_degree(i: usize) -> Rational64 {
    Rational64::new(i as i64, 2)
}

/// One eigenvalue of a parity class, remembering where it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct TPEntry {
    pub lambda: Complex64,
    pub weight: Rational64,
    pub multiplicity: usize,
    pub jordan: Vec<usize>,
    pub degree: usize,
}

/// The invertible degree `-2` unit: multiplication by `v` realizes the
/// 2-periodicity, `Fr*(v) = v`, and `Theta` shifts by `2*pi*i/log q` per
/// power of `v`. Its weight in the `Fr* = q^w phi^r` bookkeeping is `-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitV {
    pub theta_shift: Complex64,
    pub weight: Rational64,
}

/// Parity-graded eigen-data: `tp[0]` collects even cohomological degrees,
/// `tp[1]` odd ones, together with the base field decomposition `q = p^r`
/// and the unit marker.
#[derive(Debug, Clone, PartialEq)]
pub struct TPModel {
    pub q: u128,
    pub p: u64,
    pub r: u32,
    pub tp: [Vec<TPEntry>; 2],
    pub unit_v: UnitV,
}

impl TPModel {
    pub fn dimension(&self, parity: usize) -> usize {
        self.tp[parity].iter().map(|e| e.multiplicity).sum()
    }
}

/// Writes `q = p^r` with `p` prime; `None` when `q` is not a prime power.
pub fn factor_prime_power(q: u128) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = q;
    let mut d: u128 = 2;
    while d * d <= q {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    let mut rest = q;
    let mut r = 0u32;
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    if rest == 1 {
        Some((u64::try_from(p).ok()?, r))
    } else {
        None
    }
}

/// Folds a spectrum into the two parity classes. Entries from degree `i`
/// keep the weight label `i/2`; the unit marker records the eigen-shift
/// `2*pi*i/log q` of `Theta` on powers of `v`.
///
/// Panics when `q` is not a prime power; spectra built from a zeta function
/// always satisfy this.
pub fn build_tp_model(s: &FrobeniusSpectrum) -> TPModel {
    let (p, r) = factor_prime_power(s.q)
        .expect("spectrum base must be a prime power");
    let ln_q = (s.q as f64).ln();
    let mut tp = [Vec::new(), Vec::new()];
    for (i, entries) in s.by_degree.iter().enumerate() {
        for e in entries {
            tp[i % 2].push(TPEntry {
                lambda: e.lambda,
                weight: weight_of_degree(i),
                multiplicity: e.multiplicity,
                jordan: e.jordan.clone(),
                degree: i,
            });
        }
    }
    TPModel {
        q: s.q,
        p,
        r,
        tp,
        unit_v: UnitV {
            theta_shift: Complex64::new(0.0, 2.0 * PI / ln_q),
            weight: Rational64::new(-1, 1),
        },
    }
}

/// One eigen-progression of `Theta` on a parity class: the principal value
/// `alpha_0 = log_q(lambda)` plus all integer multiples of the purely
/// imaginary `step = 2*pi*i/log q` coming from powers of the unit.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaEntry {
    pub alpha0: Complex64,
    pub step: Complex64,
    pub multiplicity: usize,
    pub weight: Rational64,
    pub nilpotent_rank: usize,
}

/// `Theta = log_q(Fr*)` restricted to one parity class.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaOperator {
    pub q: u128,
    pub parity: usize,
    pub entries: Vec<ThetaEntry>,
}

impl ThetaOperator {
    /// Principal-branch logarithms of the parity class' eigenvalues:
    /// `Arg` in `(-pi, pi]`, so `Im(alpha_0)` lies in
    /// `(-pi/log q, pi/log q]`.
    pub fn for_parity(model: &TPModel, parity: usize) -> ThetaOperator {
        assert!(parity < 2);
        let ln_q = (model.q as f64).ln();
        let entries = model.tp[parity]
            .iter()
            .map(|e| {
                let log = Complex64::new(e.lambda.norm().ln(), e.lambda.arg());
                ThetaEntry {
                    alpha0: log / ln_q,
                    step: model.unit_v.theta_shift,
                    multiplicity: e.multiplicity,
                    weight: e.weight,
                    nilpotent_rank: e.jordan.iter().copied().max().unwrap_or(1) - 1,
                }
            })
            .collect();
        ThetaOperator { q: model.q, parity, entries }
    }

    pub fn dimension(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }
}

/// One row of the weight-normalization report: the `phi^r` eigenvalue
/// `lambda * q^{-w}` induced by `Fr* = q^w phi^r`, and how far its modulus
/// is from 1.
#[derive(Debug, Clone)]
pub struct WeightRow {
    pub parity: usize,
    pub degree: usize,
    pub lambda: Complex64,
    pub weight: Rational64,
    pub phi_r_eigenvalue: Complex64,
    pub modulus_deviation: f64,
}

#[derive(Debug, Clone)]
pub struct WeightReport {
    pub rows: Vec<WeightRow>,
    pub max_modulus_deviation: f64,
    /// `phi(v) = p v` forces `phi^r(v) = q v`, and with weight `-1` the
    /// geometric Frobenius fixes `v`; true when the arithmetic closes.
    pub unit_consistent: bool,
}

/// Checks the normalization `Fr* = q^w phi^r` across the model: each entry
/// should induce a `phi^r` eigenvalue of modulus 1, and the unit should be
/// fixed by `Fr*`.
pub fn frobenius_weight_relation(model: &TPModel) -> WeightReport {
    let qf = model.q as f64;
    let mut rows = Vec::new();
    let mut max_dev = 0.0f64;
    for parity in 0..2 {
        for e in &model.tp[parity] {
            let w = e.weight.to_f64().expect("small rational weight");
            let scale = (-w * qf.ln()).exp();
            let mu = e.lambda * scale;
            let dev = (mu.norm() - 1.0).abs();
            max_dev = max_dev.max(dev);
            rows.push(WeightRow {
                parity,
                degree: e.degree,
                lambda: e.lambda,
                weight: e.weight,
                phi_r_eigenvalue: mu,
                modulus_deviation: dev,
            });
        }
    }
    let phi_r_on_unit = (model.p as f64).powi(model.r as i32);
    let w_v = model.unit_v.weight.to_f64().expect("unit weight");
    let fr_on_unit = qf.powf(w_v) * phi_r_on_unit;
    let unit_consistent =
        (phi_r_on_unit - qf).abs() <= 1e-9 * qf && (fr_on_unit - 1.0).abs() <= 1e-12;
    WeightReport { rows, max_modulus_deviation: max_dev, unit_consistent }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::zeta::ZetaRational;
    use num_bigint::BigInt;

    fn zeta_p1_f3() -> ZetaRational {
        ZetaRational {
            q: 3,
            d: 1,
            polys: vec![
                vec![BigInt::from(1), BigInt::from(-1)],
                vec![BigInt::from(1)],
                vec![BigInt::from(1), BigInt::from(-3)],
            ],
        }
    }

    fn zeta_elliptic_f5() -> ZetaRational {
        ZetaRational {
            q: 5,
            d: 1,
            polys: vec![
                vec![BigInt::from(1), BigInt::from(-1)],
                vec![BigInt::from(1), BigInt::from(3), BigInt::from(5)],
                vec![BigInt::from(1), BigInt::from(-5)],
            ],
        }
    }

    #[test]
    fn projective_line_spectrum_is_linear() {
        let s = spectrum_from_zeta(&zeta_p1_f3()).unwrap();
        assert_eq!(s.by_degree.len(), 3);
        assert_eq!(s.by_degree[0].len(), 1);
        assert!((s.by_degree[0][0].lambda - 1.0).norm() < 1e-12);
        assert!(s.by_degree[1].is_empty());
        assert!((s.by_degree[2][0].lambda - 3.0).norm() < 1e-12);
        assert_eq!(s.total_dimension(), 2);
    }

    #[test]
    fn elliptic_spectrum_is_a_conjugate_pair() {
        let s = spectrum_from_zeta(&zeta_elliptic_f5()).unwrap();
        let pair = &s.by_degree[1];
        assert_eq!(pair.len(), 2);
        let root = Complex64::new(-1.5, 11f64.sqrt() / 2.0);
        let mut got: Vec<Complex64> = pair.iter().map(|e| e.lambda).collect();
        got.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((got[0] - root.conj()).norm() < 1e-12);
        assert!((got[1] - root).norm() < 1e-12);
        for e in pair {
            assert!((e.lambda.norm_sqr() - 5.0).abs() < 1e-10);
            assert_eq!(e.jordan, vec![1]);
        }
    }

    #[test]
    fn extracted_eigenvalues_satisfy_residual_bound() {
        let z = zeta_elliptic_f5();
        let s = spectrum_from_zeta(&z).unwrap();
        for (i, entries) in s.by_degree.iter().enumerate() {
            let norm1: f64 = z.polys[i]
                .iter()
                .map(|c| crate::varieties::bigint_to_f64(c).abs())
                .sum();
            for e in entries {
                let t = Complex64::new(1.0, 0.0) / e.lambda;
                let val = crate::varieties::zeta::eval_bigint_poly(&z.polys[i], t);
                assert!(val.norm() <= 1e-10 * norm1, "residual {}", val.norm());
            }
        }
    }

    #[test]
    fn tp_model_of_projective_line() {
        let s = spectrum_from_zeta(&zeta_p1_f3()).unwrap();
        let m = build_tp_model(&s);
        assert_eq!((m.p, m.r), (3, 1));
        assert_eq!(m.dimension(0), 2);
        assert_eq!(m.dimension(1), 0);
        let mut lambdas: Vec<(f64, Rational64)> =
            m.tp[0].iter().map(|e| (e.lambda.re, e.weight)).collect();
        lambdas.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        assert!((lambdas[0].0 - 1.0).abs() < 1e-12 && lambdas[0].1 == Rational64::new(0, 1));
        assert!((lambdas[1].0 - 3.0).abs() < 1e-12 && lambdas[1].1 == Rational64::new(1, 1));
        assert!((m.unit_v.theta_shift.im - 2.0 * PI / 3f64.ln()).abs() < 1e-15);
        assert_eq!(m.unit_v.weight, Rational64::new(-1, 1));
    }

    #[test]
    fn tp_dimensions_add_up_to_total() {
        let s = spectrum_from_zeta(&zeta_elliptic_f5()).unwrap();
        let m = build_tp_model(&s);
        assert_eq!(m.dimension(0) + m.dimension(1), s.total_dimension());
        assert_eq!(m.dimension(0), 2);
        assert_eq!(m.dimension(1), 2);
        assert_eq!((m.p, m.r), (5, 1));
    }

    #[test]
    fn prime_power_factorization() {
        assert_eq!(factor_prime_power(2), Some((2, 1)));
        assert_eq!(factor_prime_power(9), Some((3, 2)));
        assert_eq!(factor_prime_power(32), Some((2, 5)));
        assert_eq!(factor_prime_power(343), Some((7, 3)));
        assert_eq!(factor_prime_power(12), None);
        assert_eq!(factor_prime_power(1), None);
    }

    #[test]
    fn weight_relation_normalizes_all_entries() {
        let s = spectrum_from_zeta(&zeta_elliptic_f5()).unwrap();
        let m = build_tp_model(&s);
        let report = frobenius_weight_relation(&m);
        assert_eq!(report.rows.len(), 4);
        assert!(report.max_modulus_deviation < 1e-12);
        assert!(report.unit_consistent);
        for row in &report.rows {
            assert!((row.phi_r_eigenvalue.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn theta_entries_sit_in_the_principal_strip() {
        // A negative real eigenvalue lands exactly on the included branch
        // boundary Im(alpha0) = pi/log q.
        let q = 3u128;
        let s = FrobeniusSpectrum {
            q,
            by_degree: vec![
                vec![SpectrumEntry::semisimple(Complex64::new(1.0, 0.0), 1)],
                vec![],
                vec![SpectrumEntry::semisimple(Complex64::new(-3.0, 0.0), 1)],
            ],
        };
        let m = build_tp_model(&s);
        let theta = ThetaOperator::for_parity(&m, 0);
        let ln_q = 3f64.ln();
        assert_eq!(theta.dimension(), 2);
        for e in &theta.entries {
            let back = (e.alpha0 * ln_q).exp();
            let lambda = if e.alpha0.re > 0.5 {
                Complex64::new(-3.0, 0.0)
            } else {
                Complex64::new(1.0, 0.0)
            };
            assert!((back - lambda).norm() <= 1e-12 * lambda.norm().max(1.0));
            assert!(e.alpha0.im > -PI / ln_q - 1e-15 && e.alpha0.im <= PI / ln_q + 1e-15);
            assert!((e.step.im - 2.0 * PI / ln_q).abs() < 1e-15);
        }
        let boundary = theta.entries.iter().find(|e| e.alpha0.re > 0.5).unwrap();
        assert!((boundary.alpha0.im - PI / ln_q).abs() < 1e-15);
    }

    #[test]
    fn records_round_trip_exactly() {
        let s = spectrum_from_zeta(&zeta_elliptic_f5()).unwrap();
        let text = s.export_records();
        let back = FrobeniusSpectrum::from_records(&text).unwrap();
        assert_eq!(back.q, s.q);
        assert_eq!(back.by_degree.len(), s.by_degree.len());
        for (a, b) in s.by_degree.iter().zip(&back.by_degree) {
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(b) {
                assert_eq!(x.lambda.re.to_bits(), y.lambda.re.to_bits());
                assert_eq!(x.lambda.im.to_bits(), y.lambda.im.to_bits());
                assert_eq!(x.multiplicity, y.multiplicity);
                assert_eq!(x.jordan, y.jordan);
            }
        }
    }

    #[test]
    fn jordan_data_survives_import() {
        let text = "q 4\n0 1.0 0.0 3 2,1\n";
        let s = FrobeniusSpectrum::from_records(text).unwrap();
        assert_eq!(s.by_degree[0][0].jordan, vec![2, 1]);
        assert_eq!(s.by_degree[0][0].nilpotent_rank(), 1);
        assert_eq!(factor_prime_power(s.q), Some((2, 2)));
    }

    #[test]
    fn malformed_records_are_rejected() {
        assert!(FrobeniusSpectrum::from_records("").is_err());
        assert!(FrobeniusSpectrum::from_records("p 5\n0 1.0 0.0 1 1\n").is_err());
        assert!(FrobeniusSpectrum::from_records("q 5\n0 1.0 0.0 1\n").is_err());
        // Blocks summing to the wrong multiplicity.
        assert!(FrobeniusSpectrum::from_records("q 5\n0 1.0 0.0 3 2,2\n").is_err());
        assert!(FrobeniusSpectrum::from_records("q 5\n0 1.0 0.0 0 1\n").is_err());
        assert!(FrobeniusSpectrum::from_records("q 5\n").is_err());
    }
}
