//! Explicit arithmetic in small extension fields: deterministic modulus
//! search, inverses, Frobenius orbits, and full element enumeration.
//!
//! ```text
//! cargo run --example finite_fields
//! ```

use hasse_forge::finite_field::build_field;

fn main() {
    // F_9 = F_3[x] / (modulus); the modulus is found by deterministic
    // search, so the same field comes back on every run.
    let f9 = build_field(3, 2, None).unwrap();
    println!("built F_{} with modulus coefficients {:?} (ascending)", f9.q(), f9.modulus());

    let x = f9.element(&[0, 1]).unwrap();
    let y = f9.element(&[2, 1]).unwrap();
    println!("x         = {}", f9.format_element(&x));
    println!("y         = {}", f9.format_element(&y));
    println!("x + y     = {}", f9.format_element(&f9.add(&x, &y).unwrap()));
    println!("x * y     = {}", f9.format_element(&f9.mul(&x, &y).unwrap()));
    let xinv = f9.inv(&x).unwrap();
    println!("x^-1      = {}", f9.format_element(&xinv));
    println!(
        "x * x^-1  = {}",
        f9.format_element(&f9.mul(&x, &xinv).unwrap())
    );

    // The Frobenius a -> a^p generates Gal(F_9 / F_3); its orbit on a
    // generator closes after r = 2 steps.
    println!("\nFrobenius orbit of x:");
    let mut a = x.clone();
    for step in 0..=2 {
        println!("  phi^{step}(x) = {}", f9.format_element(&a));
        a = f9.frobenius_endo(&a).unwrap();
    }

    // Every nonzero element satisfies a^(q-1) = 1.
    let f8 = build_field(2, 3, None).unwrap();
    println!("\nF_8: a^7 for every nonzero a");
    for a in f8.elements().unwrap() {
        if f8.is_zero(&a) {
            continue;
        }
        let pow = f8.pow(&a, 7).unwrap();
        println!("  ({})^7 = {}", f8.format_element(&a), f8.format_element(&pow));
        assert_eq!(pow, f8.one());
    }
}
