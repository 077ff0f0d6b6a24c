//! Zeta-regularized determinants over eigenvalue progressions: the Euler
//! factor identity, vanishing loci, the zero anomalous dimension, and the
//! scaling law.
//!
//! ```text
//! cargo run --example regularized_determinants
//! ```

use hasse_forge::regdet::{
    dim_infty, regdet_parity_class, regdet_progression, scaling_check, EigenProgression,
};
use hasse_forge::spectrum::{build_tp_model, spectrum_from_zeta};
use hasse_forge::tolerances::Tolerances;
use hasse_forge::varieties::io::parse_variety_str;
use hasse_forge::varieties::zeta::zeta_from_counts;
use hasse_forge::varieties::gather_counts;
use num_complex::Complex64;

fn main() {
    let tol = Tolerances::default();

    // One progression: the eigenvalues of s - Theta on the lambda = 3
    // eigenspace are s - 1 - (2 pi i / ln 3) k over all integers k. Their
    // regularized product collapses to the Euler factor 1 - 3 q^{-s}.
    let prog = EigenProgression::new(Complex64::new(3.0, 0.0), 3, 1);
    println!(
        "progression for lambda = 3, q = 3: alpha_0 = {}, step = {:.6}",
        prog.alpha0, prog.step
    );
    for s in [Complex64::new(2.0, 0.0), Complex64::new(1.5, 0.7)] {
        let r = regdet_progression(&prog, s, &tol).unwrap();
        let euler = Complex64::new(1.0, 0.0) - 3.0 * (-s * 3.0f64.ln()).exp();
        println!("  s = {s}: det_oo = {:.12}, euler factor = {:.12}", r.value, euler);
    }

    // On the locus s = alpha_0 + (2 pi i / ln q) k both sides vanish and
    // the determinant is exactly zero, with the zero mode excluded from
    // the continuation.
    let s0 = prog.alpha0 + Complex64::new(0.0, 2.0 * prog.step);
    let r = regdet_progression(&prog, s0, &tol).unwrap();
    println!(
        "  on the locus (k = 2): det_oo = {}, vanishing = {}, anomalous dim = {}",
        r.value, r.vanishing, r.anomalous_dim
    );

    // Full parity classes of the projective line over F_3.
    let spec = parse_variety_str(
        r#"{"kind": "projective_space", "n": 1, "base": {"p": 3, "r": 1}}"#,
    )
    .unwrap();
    let betti = spec.betti();
    let z = zeta_from_counts(&gather_counts(&spec, 1).unwrap(), &betti).unwrap();
    let model = build_tp_model(&spectrum_from_zeta(&z).unwrap());

    let s = Complex64::new(2.0, 0.0);
    println!("\nP^1 over F_3 at s = 2:");
    for (parity, name) in [(0usize, "even"), (1, "odd")] {
        let det = regdet_parity_class(&model, parity, s, &tol).unwrap();
        let dim = dim_infty(&model, parity, s, &tol);
        println!(
            "  {name}: det_oo = {:.12}, finite = {:.12}, dim_oo = {}",
            det.regularized, det.finite, dim
        );
    }
    let odd = regdet_parity_class(&model, 1, s, &tol).unwrap().regularized;
    let even = regdet_parity_class(&model, 0, s, &tol).unwrap().regularized;
    println!("  quotient odd/even = {:.12} = zeta(P^1, 2) = {:.12}", odd / even, z.eval_s(s));

    // Because dim_oo = 0, rescaling all eigenvalues by delta leaves the
    // determinant unchanged: det_oo(delta (s - Theta)) = det_oo(s - Theta).
    let delta = 1.0 / std::f64::consts::TAU;
    println!("\nscaling law at delta = 1/(2 pi):");
    for parity in 0..2 {
        let rep = scaling_check(&model, parity, s, delta, &tol).unwrap();
        println!(
            "  parity {parity}: lhs = {:.12}, rhs = {:.12}, ratio = {:.12}",
            rep.lhs, rep.rhs, rep.ratio
        );
        assert!(rep.ok);
    }
}
