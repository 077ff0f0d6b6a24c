//! From counts to the Frobenius eigenvalue data: Weil moduli, the
//! two-periodic parity model with its weight bookkeeping, and the base-q
//! logarithm of an explicit Frobenius matrix.
//!
//! ```text
//! cargo run --example frobenius_spectrum
//! ```

use hasse_forge::finite_field::build_field;
use hasse_forge::spectrum::{
    build_tp_model, frobenius_weight_relation, matrix_log_q, spectrum_from_zeta, CMatrix,
};
use hasse_forge::tolerances::Tolerances;
use hasse_forge::varieties::zeta::zeta_from_counts;
use hasse_forge::varieties::{gather_counts, VarietyKind, VarietySpec};
use num_complex::Complex64;

fn main() {
    // Eigenvalues of the elliptic curve y^2 = x^3 + x + 1 over F_5.
    let f5 = build_field(5, 1, None).unwrap();
    let a = [f5.from_u64(0), f5.from_u64(0), f5.from_u64(0), f5.from_u64(1), f5.from_u64(1)];
    let curve = VarietySpec::new(f5, VarietyKind::WeierstrassCurve { a }).unwrap();
    let betti = curve.betti();
    let z = zeta_from_counts(&gather_counts(&curve, 2).unwrap(), &betti).unwrap();
    let spectrum = spectrum_from_zeta(&z).unwrap();

    println!("Frobenius eigenvalues, with |lambda| against the Weil modulus q^(i/2):");
    for (i, entries) in spectrum.by_degree.iter().enumerate() {
        let weil = (spectrum.q as f64).powf(i as f64 / 2.0);
        for e in entries {
            println!(
                "  H^{i}: lambda = {:+.6} {:+.6}i  |lambda| = {:.6}  q^(i/2) = {:.6}",
                e.lambda.re, e.lambda.im, e.lambda.norm(), weil
            );
        }
    }

    // The plain-text records round trip exactly (17 significant digits
    // reproduce every f64 bit for bit).
    let records = spectrum.export_records();
    println!("\nexported records:\n{records}");
    let back = hasse_forge::spectrum::FrobeniusSpectrum::from_records(&records).unwrap();
    assert_eq!(back.by_degree.len(), spectrum.by_degree.len());

    // The two-periodic model folds the grading mod 2 and tags each
    // eigenvalue with its weight; the unit contributes the period
    // 2 pi i / log q to the operator's spectrum.
    let model = build_tp_model(&spectrum);
    println!("parity model over q = {} (p = {}, r = {}):", model.q, model.p, model.r);
    for (parity, name) in [(0usize, "even"), (1, "odd")] {
        println!("  {name}: dimension {}", model.dimension(parity));
        for e in &model.tp[parity] {
            println!(
                "    lambda = {:+.6} {:+.6}i, weight {}, from H^{}",
                e.lambda.re, e.lambda.im, e.weight, e.degree
            );
        }
    }
    println!("  unit v: theta shift = {:+.6}i, weight {}",
        model.unit_v.theta_shift.im, model.unit_v.weight);

    // Frobenius acts as q^w phi^r on weight w; every row must have unit
    // modulus after the twist.
    let report = frobenius_weight_relation(&model);
    println!(
        "\nweight relation Fr* = q^w phi^r: max modulus deviation {:.3e}, unit consistent = {}",
        report.max_modulus_deviation, report.unit_consistent
    );

    // An explicit matrix carrying this spectrum: Theta = log_q M exists
    // whenever M is invertible, and exp(log q * Theta) returns M.
    let tol = Tolerances::default();
    let mut m = CMatrix::zeros(2);
    m[(0, 0)] = spectrum.by_degree[1][0].lambda;
    m[(1, 1)] = spectrum.by_degree[1][1].lambda;
    m[(0, 1)] = Complex64::new(0.25, 0.0); // off-diagonal coupling, still diagonalizable
    let log = matrix_log_q(&m, 5.0, &tol).unwrap();
    let back = log.theta.scale(Complex64::new(5.0f64.ln(), 0.0)).exp();
    println!(
        "matrix log round trip on the H^1 block: |q^Theta - M| = {:.3e}",
        back.sub(&m).max_norm()
    );
}
