//! p-typical Witt vectors: ghost coordinates, carries in Witt addition,
//! Teichmueller lifts, Frobenius and Verschiebung, and the isomorphism
//! W_n(F_p) = Z/p^n.
//!
//! ```text
//! cargo run --example witt_vectors
//! ```

use hasse_forge::finite_field::build_field;
use hasse_forge::witt::{FqRing, Integers, WittContext};
use num_bigint::BigInt;

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn main() {
    // W_3(Z) at p = 2: addition has carries, visible against the ghost
    // coordinates where the ring laws hold componentwise.
    let ctx = WittContext::new(2, Integers).unwrap();
    let one = ctx.one(3);
    let two = ctx.add(&one, &one).unwrap();
    println!("{}", ctx.format(&one));
    println!("1 + 1 = {}", ctx.format(&two));
    println!("ghost(1 + 1) = {:?}", ctx.ghost(&two).unwrap());

    let a = ctx.from_components(vec![int(3), int(-1), int(4)]);
    let b = ctx.from_components(vec![int(2), int(5), int(-7)]);
    let sum = ctx.add(&a, &b).unwrap();
    let prod = ctx.mul(&a, &b).unwrap();
    println!("\na       = {}", ctx.format(&a));
    println!("b       = {}", ctx.format(&b));
    println!("a + b   = {}", ctx.format(&sum));
    println!("a * b   = {}", ctx.format(&prod));
    println!("ghost a = {:?}", ctx.ghost(&a).unwrap());
    println!("ghost b = {:?}", ctx.ghost(&b).unwrap());
    println!("ghost of the product = {:?} (componentwise products)", ctx.ghost(&prod).unwrap());

    // Teichmueller lift: multiplicative section of the first component.
    let t3 = ctx.teichmuller(int(3), 3);
    let t5 = ctx.teichmuller(int(5), 3);
    let t15 = ctx.mul(&t3, &t5).unwrap();
    println!("\n[3]     = {}", ctx.format(&t3));
    println!("[5]     = {}", ctx.format(&t5));
    println!("[3][5]  = {} = [15]", ctx.format(&t15));
    assert_eq!(t15, ctx.teichmuller(int(15), 3));

    // Frobenius and Verschiebung compose to multiplication by p.
    let v = ctx.verschiebung(&a).unwrap();
    let fv = ctx.frobenius(&v).unwrap();
    println!("\nV(a)    = {}", ctx.format(&v));
    println!("F(V(a)) = {} = a + a", ctx.format(&fv));
    assert_eq!(fv, ctx.add(&a, &a).unwrap());

    // Over the prime field the length-n Witt ring is Z/p^n; the map is
    // read off exhaustively.
    let f3 = build_field(3, 1, None).unwrap();
    let w2 = WittContext::new(3, FqRing { field: f3.clone() }).unwrap();
    println!("\nW_2(F_3) = Z/9:");
    for a0 in 0..3u64 {
        for a1 in 0..3u64 {
            let w = w2.from_components(vec![f3.from_u64(a0), f3.from_u64(a1)]);
            println!("  ({a0}, {a1}) -> {}", w2.wn_fp_iso(&w).unwrap());
        }
    }

    // The image of the canonical generator is p . 1, whose Witt
    // coordinates are far from (p, 0, 0): the carries are visible.
    for p in [2u64, 3, 5, 7] {
        let ctx = WittContext::new(p, Integers).unwrap();
        let xi = ctx.xi_image(3, BigInt::from(1)).unwrap();
        let mut p_times_one = ctx.one(3);
        for _ in 1..p {
            p_times_one = ctx.add(&p_times_one, &ctx.one(3)).unwrap();
        }
        assert_eq!(xi, p_times_one);
        println!("p = {p}: xi |-> {} = p . 1", ctx.format(&xi));
    }
}
