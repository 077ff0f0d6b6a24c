//! Point counts over extension towers and the exact reconstruction of the
//! rational zeta function Z(X, t) from them.
//!
//! ```text
//! cargo run --example point_counting
//! ```

use hasse_forge::finite_field::build_field;
use hasse_forge::varieties::zeta::zeta_from_counts;
use hasse_forge::varieties::{
    functional_equation_check, gather_counts, point_counts_from_zeta, VarietyKind, VarietySpec,
};

fn main() {
    // The projective plane over F_2: N_m = 1 + q^m + q^2m.
    let f2 = build_field(2, 1, None).unwrap();
    let p2 = VarietySpec::new(f2, VarietyKind::ProjectiveSpace { n: 2 }).unwrap();
    let counts = gather_counts(&p2, 5).unwrap();
    println!("P^2 over F_2:");
    for (i, n) in counts.counts.iter().enumerate() {
        println!("  N_{} = {}", i + 1, n);
    }

    // y^2 = x^3 + x + 1 over F_5, counted by brute force in every
    // extension: the affine points plus the point at infinity.
    let f5 = build_field(5, 1, None).unwrap();
    let a = [
        f5.from_u64(0), // a1
        f5.from_u64(0), // a2
        f5.from_u64(0), // a3
        f5.from_u64(1), // a4
        f5.from_u64(1), // a6
    ];
    let curve = VarietySpec::new(f5, VarietyKind::WeierstrassCurve { a }).unwrap();
    let counts = gather_counts(&curve, 4).unwrap();
    println!("\ny^2 = x^3 + x + 1 over F_5:");
    for (i, n) in counts.counts.iter().enumerate() {
        println!("  N_{} = {}", i + 1, n);
    }

    // Two counts suffice to reconstruct the zeta function of the curve:
    // the betti pattern (1, 2, 1) fixes the degrees of the P_i.
    let betti = curve.betti();
    let z = zeta_from_counts(&gather_counts(&curve, 2).unwrap(), &betti).unwrap();
    println!("\nreconstructed factors (ascending coefficients):");
    for (i, p) in z.polys.iter().enumerate() {
        println!("  P_{i} = {p:?}");
    }

    // The reconstruction predicts every later count; compare against the
    // exhaustive enumeration.
    let predicted = point_counts_from_zeta(&z, 4);
    println!("\npredicted vs counted:");
    for m in 0..4 {
        println!(
            "  N_{} = {} vs {}",
            m + 1,
            predicted.counts[m],
            counts.counts[m]
        );
        assert_eq!(predicted.counts[m], counts.counts[m]);
    }

    // Poincare duality in zeta form: lambda -> q^d / lambda permutes the
    // roots between complementary degrees.
    let report = functional_equation_check(&z, 1e-10);
    println!("\nfunctional equation:");
    for pairing in &report.pairings {
        println!(
            "  H^{} <-> H^{}: deviation {:.3e}",
            pairing.degree, pairing.partner, pairing.max_deviation
        );
    }
    assert!(report.ok());
}
