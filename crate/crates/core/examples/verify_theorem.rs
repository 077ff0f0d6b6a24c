//! The headline identity end to end: the Hasse-Weil zeta function from
//! exhaustive point counts equals the quotient of regularized determinants
//! of s - Theta on the odd and even parity classes.
//!
//! ```text
//! cargo run --example verify_theorem
//! ```

use hasse_forge::regdet::verify_theorem_a;
use hasse_forge::tolerances::Tolerances;
use hasse_forge::varieties::io::parse_variety_str;
use num_complex::Complex64;

fn main() {
    let tol = Tolerances::default();
    let samples = [
        Complex64::new(2.0, 0.0),
        Complex64::new(3.0, 0.0),
        Complex64::new(1.5, 0.7),
        Complex64::new(2.0, -1.3),
    ];

    let specs = [
        ("P^1 / F_3", r#"{"kind": "projective_space", "n": 1, "base": {"p": 3, "r": 1}}"#),
        ("P^2 / F_2", r#"{"kind": "projective_space", "n": 2, "base": {"p": 2, "r": 1}}"#),
        (
            "P^1 x P^1 / F_3",
            r#"{"kind": "product", "base": {"p": 3, "r": 1},
                "left": {"kind": "projective_space", "n": 1},
                "right": {"kind": "projective_space", "n": 1}}"#,
        ),
        (
            "y^2 = x^3 + x + 1 / F_5",
            r#"{"kind": "weierstrass", "base": {"p": 5, "r": 1}, "a": [0, 0, 0, 1, 1]}"#,
        ),
    ];

    for (name, json) in specs {
        let spec = parse_variety_str(json).unwrap();
        let report = verify_theorem_a(&spec, &samples, &tol).unwrap();
        println!("{name} (q = {}):", report.q);
        for row in &report.rows {
            println!(
                "  s = {:>8}: zeta = {:+.9} {:+.9}i   relerr {:.3e}   [{}]",
                format!("{}", row.s),
                row.lhs.re,
                row.lhs.im,
                row.relerr,
                row.status.as_str()
            );
        }
        println!(
            "  max relerr {:.3e} (tolerance {:.1e}), finite cross-check {:.3e}\n",
            report.max_relerr, report.tol, report.max_finite_relerr
        );
        assert!(report.ok());
    }

    // The same report in machine form, byte deterministic.
    let spec = parse_variety_str(specs[3].1).unwrap();
    let report = verify_theorem_a(&spec, &samples, &tol).unwrap();
    print!("{}", report.csv());
}
