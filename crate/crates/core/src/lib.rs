//! Zeta functions of varieties over finite fields, computed two ways.
//!
//! The classical route counts points: for a smooth proper variety `X` over
//! `F_q` the zeta function is
//!
//! ```text
//! Z(X, t) = exp( sum_{m >= 1} N_m t^m / m ),     N_m = #X(F_{q^m}),
//! zeta(X, s) = Z(X, q^{-s}),
//! ```
//!
//! and `Z` is a rational function whose numerator/denominator factors
//! `P_i(t) = det(1 - t Fr_q* | H^i)` carry the Frobenius eigenvalues.
//!
//! The second route packages the same eigenvalue data into an operator
//! `Theta` with `q^Theta = Fr_q*` acting on a two-periodic (even/odd) model,
//! and evaluates the quotient of *regularized* determinants
//!
//! ```text
//! zeta(X, s) = det_oo(s - Theta | odd) / det_oo(s - Theta | even),
//! ```
//!
//! where each eigenvalue of `Theta` is a full arithmetic progression
//! `log_q(lambda) + (2 pi i / log q) Z` and `det_oo` is the zeta-regularized
//! product over the progression. [`regdet::verify_theorem_a`] runs both
//! routes end to end and compares them sample by sample.
//!
//! # Modules
//!
//! - [`finite_field`]: explicit `F_{p^r}` arithmetic with deterministic
//!   modulus search, Frobenius, and guarded element enumeration.
//! - [`witt`]: p-typical Witt vectors over `Z`, `Z/m` and `F_q`; ghost
//!   coordinates, Frobenius/Verschiebung/restriction, Teichmueller lifts,
//!   and the length-n Witt/`Z/p^n` comparison over the prime field.
//! - [`varieties`]: point counting (projective spaces, plane cubic curves in
//!   long Weierstrass form, products, custom count tables) and exact
//!   reconstruction of `Z(X, t)` from counts.
//! - [`spectrum`]: Frobenius eigenvalue extraction from the rational zeta
//!   function, weight bookkeeping, the even/odd periodic model, and the
//!   base-q matrix logarithm with its multiplicative Jordan decomposition.
//! - [`regdet`]: Hurwitz zeta / log-Gamma special functions, regularized
//!   determinants of eigenvalue progressions, anomalous dimension and
//!   scaling checks, and the end-to-end zeta comparison.
//! - [`cli`]: the `hasse-forge` command line (`count`, `zeta`, `spectrum`,
//!   `regdet`, `verify`) over JSON variety descriptions with CSV output.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --example finite_fields
//! cargo run --example witt_vectors
//! cargo run --example point_counting
//! cargo run --example frobenius_spectrum
//! cargo run --example regularized_determinants
//! cargo run --example verify_theorem
//! ```

pub mod cli;
pub mod finite_field;
pub mod regdet;
pub mod spectrum;
pub mod tolerances;
pub mod varieties;
pub mod witt;

pub(crate) mod roots;
