//! p-typical Witt vectors of finite length.
//!
//! A Witt vector of length `n` over a ring `R` is a tuple
//! `a = (a_0, ..., a_{n-1})`; its ghost coordinates are
//!
//! ```text
//! w_m(a) = a_0^{p^m} + p a_1^{p^{m-1}} + ... + p^m a_m,    0 <= m < n.
//! ```
//!
//! Ring operations are given by universal integer polynomials `S_m`, `M_m`
//! characterized by `w_m(S(X, Y)) = w_m(X) + w_m(Y)` and
//! `w_m(M(X, Y)) = w_m(X) w_m(Y)`. They are solved once per `(p, n)` by the
//! exact rational ghost recursion (division by `p^m` is checked to be exact
//! at every step) and cached, so the same polynomials serve `Z`, `Z/m` and
//! `F_q` coefficients. The Frobenius `F: W_n -> W_{n-1}` comes from the same
//! recursion applied to `w_m(F(a)) = w_{m+1}(a)`.
//!
//! Over the prime field the length-n vectors form the ring `Z/p^n`; the
//! comparison isomorphism is [`WittContext::wn_fp_iso`]. The element
//! `xi = 1 + [c] + ... + [c]^{p-1}` built from Teichmueller powers (whose
//! image is `p` when `c = 1`) is [`WittContext::xi_image`], and
//! [`WittContext::phi_infty`] is the coordinatewise `p^n`-power map
//! `W_n(phi^n)`, an automorphism for perfect coefficients.

pub mod mpoly;

use crate::finite_field::{FieldError, FqElement, FqField};
use mpoly::MPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("operands have mismatched length, prime or base ring")]
    ShapeMismatch,
    #[error("operation needs length >= 2")]
    LengthTooShort,
    #[error("unsupported base ring: {0}")]
    UnsupportedBaseRing(String),
    #[error("operation requires the prime field F_p as base")]
    WrongBaseField,
    #[error("ghost recursion produced a non-integral coefficient at (p={p}, m={m})")]
    NonIntegralStructure { p: u64, m: usize },
    #[error("p^n exceeds the supported range")]
    Overflow,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Coefficient rings for Witt vectors. Implementations carry whatever
/// context their elements need (e.g. the field modulus), keeping the
/// universal polynomial evaluation ring-agnostic.
pub trait WittRing {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn from_bigint(&self, c: &BigInt) -> Self::Elem;
    /// Whether multiplication by `p` is injective (ghost coordinates are
    /// only faithful in that case).
    fn p_regular(&self, p: u64) -> bool;
    /// Characteristic when finite and prime, used to cross-check the Witt
    /// prime.
    fn char_p(&self) -> Option<u64> {
        None
    }
    fn validate(&self, _e: &Self::Elem) -> bool {
        true
    }
    fn format_elem(&self, e: &Self::Elem) -> String;

    fn pow_u32(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// The integers with arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Integers;

impl WittRing for Integers {
    type Elem = BigInt;

    fn name(&self) -> String {
        "Z".to_string()
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn from_bigint(&self, c: &BigInt) -> BigInt {
        c.clone()
    }
    fn p_regular(&self, _p: u64) -> bool {
        true
    }
    fn format_elem(&self, e: &BigInt) -> String {
        e.to_string()
    }
}

/// The ring `Z/m`, elements reduced to `[0, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegersMod {
    pub m: u64,
}

impl IntegersMod {
    pub fn new(m: u64) -> Result<Self, WittError> {
        if m < 2 {
            return Err(WittError::UnsupportedBaseRing(format!("Z/{m}")));
        }
        Ok(IntegersMod { m })
    }
}

impl WittRing for IntegersMod {
    type Elem = u64;

    fn name(&self) -> String {
        format!("Z/{}", self.m)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.m
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.m as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.m as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.m - *a
        }
    }
    fn from_bigint(&self, c: &BigInt) -> u64 {
        let m = BigInt::from(self.m);
        let mut r = c % &m;
        if r.is_negative() {
            r += &m;
        }
        r.to_u64().unwrap()
    }
    fn p_regular(&self, p: u64) -> bool {
        // p prime: it is a zero divisor mod m exactly when p | m.
        self.m % p != 0
    }
    fn validate(&self, e: &u64) -> bool {
        *e < self.m
    }
    fn format_elem(&self, e: &u64) -> String {
        e.to_string()
    }
}

/// A finite field `F_{p^r}` as Witt coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqRing {
    pub field: FqField,
}

impl WittRing for FqRing {
    type Elem = FqElement;

    fn name(&self) -> String {
        format!("F_{}", self.field.q())
    }
    fn zero(&self) -> FqElement {
        self.field.zero()
    }
    fn one(&self) -> FqElement {
        self.field.one()
    }
    fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        self.field.add_raw(a, b)
    }
    fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        self.field.mul_raw(a, b)
    }
    fn neg(&self, a: &FqElement) -> FqElement {
        self.field.neg_raw(a)
    }
    fn from_bigint(&self, c: &BigInt) -> FqElement {
        let p = BigInt::from(self.field.p());
        let mut r = c % &p;
        if r.is_negative() {
            r += &p;
        }
        self.field.from_u64(r.to_u64().unwrap())
    }
    fn p_regular(&self, _p: u64) -> bool {
        false
    }
    fn char_p(&self) -> Option<u64> {
        Some(self.field.p())
    }
    fn validate(&self, e: &FqElement) -> bool {
        e.coeffs.len() == self.field.r() && e.coeffs.iter().all(|&c| c < self.field.p())
    }
    fn format_elem(&self, e: &FqElement) -> String {
        self.field.format_element(e)
    }
}

/// A Witt vector: the prime it lives over plus its components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittVector<T> {
    pub p: u64,
    pub components: Vec<T>,
}

impl<T> WittVector<T> {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Universal structure polynomials for `(p, n)`: `sum`/`prod`/`neg` live in
/// `2n`/`2n`/`n` variables, and `frob` (length `n - 1`) maps `W_n` to
/// `W_{n-1}` in `n` variables.
#[derive(Debug, Clone)]
pub struct StructureSet {
    pub p: u64,
    pub n: usize,
    pub sum: Vec<MPoly>,
    pub prod: Vec<MPoly>,
    pub neg: Vec<MPoly>,
    pub frob: Vec<MPoly>,
}

fn big_pow(p: u64, e: usize) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..e {
        acc *= p;
    }
    acc
}

/// `w_m` of the variable block starting at `offset`:
/// `sum_{i<=m} p^i X_{offset+i}^{p^{m-i}}`.
fn ghost_poly(nvars: usize, offset: usize, p: u64, m: usize) -> MPoly {
    let mut acc = MPoly::zero(nvars);
    for i in 0..=m {
        let e = (p as u128).pow((m - i) as u32);
        let e: u32 = e.try_into().expect("ghost exponent fits u32");
        let term = MPoly::var(nvars, offset + i).pow(e).mul_scalar(&big_pow(p, i));
        acc = acc.add(&term);
    }
    acc
}

/// Solves `w_m(P_0, ..., P_m) = target(m)` for `m < count`. Division by
/// `p^m` must be exact at every step; a failure is reported rather than
/// rounded away.
fn solve_ghost_recursion(
    p: u64,
    count: usize,
    target: impl Fn(usize) -> MPoly,
) -> Result<Vec<MPoly>, WittError> {
    let mut polys: Vec<MPoly> = Vec::with_capacity(count);
    for m in 0..count {
        let mut t = target(m);
        for (i, poly) in polys.iter().enumerate().take(m) {
            let e = (p as u128).pow((m - i) as u32);
            let e: u32 = e.try_into().map_err(|_| WittError::Overflow)?;
            t = t.sub(&poly.pow(e).mul_scalar(&big_pow(p, i)));
        }
        let pm = big_pow(p, m);
        let s = t.div_exact(&pm).ok_or(WittError::NonIntegralStructure { p, m })?;
        polys.push(s);
    }
    Ok(polys)
}

fn structure_cache() -> &'static Mutex<HashMap<(u64, usize), Arc<StructureSet>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<StructureSet>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Structure polynomials for `(p, n)`, computed once and cached. The cache
/// is write-once per key and shared across threads.
pub fn witt_structure_polys(p: u64, n: usize) -> Result<Arc<StructureSet>, WittError> {
    if !is_prime(p) {
        return Err(WittError::NonPrime(p));
    }
    if n == 0 {
        return Err(WittError::LengthTooShort);
    }
    if let Some(hit) = structure_cache().lock().unwrap().get(&(p, n)) {
        return Ok(hit.clone());
    }
    let two_n = 2 * n;
    let sum = solve_ghost_recursion(p, n, |m| {
        ghost_poly(two_n, 0, p, m).add(&ghost_poly(two_n, n, p, m))
    })?;
    let prod = solve_ghost_recursion(p, n, |m| {
        ghost_poly(two_n, 0, p, m).mul(&ghost_poly(two_n, n, p, m))
    })?;
    let neg = solve_ghost_recursion(p, n, |m| ghost_poly(n, 0, p, m).neg())?;
    let frob = solve_ghost_recursion(p, n.saturating_sub(1), |m| ghost_poly(n, 0, p, m + 1))?;
    let set = Arc::new(StructureSet { p, n, sum, prod, neg, frob });
    let mut guard = structure_cache().lock().unwrap();
    let entry = guard.entry((p, n)).or_insert_with(|| set.clone());
    Ok(entry.clone())
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.checked_mul(d).map(|s| s <= n).unwrap_or(false) {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Witt vector arithmetic over a fixed prime and base ring.
pub struct WittContext<R: WittRing> {
    pub p: u64,
    pub ring: R,
}

impl<R: WittRing> WittContext<R> {
    pub fn new(p: u64, ring: R) -> Result<Self, WittError> {
        if !is_prime(p) {
            return Err(WittError::NonPrime(p));
        }
        if let Some(cp) = ring.char_p() {
            if cp != p {
                return Err(WittError::ShapeMismatch);
            }
        }
        Ok(WittContext { p, ring })
    }

    fn check(&self, a: &WittVector<R::Elem>) -> Result<(), WittError> {
        if a.p != self.p || a.is_empty() {
            return Err(WittError::ShapeMismatch);
        }
        if !a.components.iter().all(|e| self.ring.validate(e)) {
            return Err(WittError::ShapeMismatch);
        }
        Ok(())
    }

    fn check_pair(
        &self,
        a: &WittVector<R::Elem>,
        b: &WittVector<R::Elem>,
    ) -> Result<(), WittError> {
        self.check(a)?;
        self.check(b)?;
        if a.len() != b.len() {
            return Err(WittError::ShapeMismatch);
        }
        Ok(())
    }

    pub fn from_components(&self, components: Vec<R::Elem>) -> WittVector<R::Elem> {
        WittVector { p: self.p, components }
    }

    pub fn zero(&self, n: usize) -> WittVector<R::Elem> {
        self.from_components((0..n).map(|_| self.ring.zero()).collect())
    }

    pub fn one(&self, n: usize) -> WittVector<R::Elem> {
        self.teichmuller(self.ring.one(), n)
    }

    /// The multiplicative lift `[c] = (c, 0, ..., 0)`.
    pub fn teichmuller(&self, c: R::Elem, n: usize) -> WittVector<R::Elem> {
        let mut components = vec![c];
        components.extend((1..n).map(|_| self.ring.zero()));
        self.from_components(components)
    }

    fn eval_structure(
        &self,
        polys: &[MPoly],
        args: &[R::Elem],
        n: usize,
    ) -> WittVector<R::Elem> {
        let components = polys[..n].iter().map(|s| s.eval(&self.ring, args)).collect();
        self.from_components(components)
    }

    pub fn add(
        &self,
        a: &WittVector<R::Elem>,
        b: &WittVector<R::Elem>,
    ) -> Result<WittVector<R::Elem>, WittError> {
        self.check_pair(a, b)?;
        let n = a.len();
        let polys = witt_structure_polys(self.p, n)?;
        let args: Vec<R::Elem> =
            a.components.iter().chain(&b.components).cloned().collect();
        Ok(self.eval_structure(&polys.sum, &args, n))
    }

    pub fn mul(
        &self,
        a: &WittVector<R::Elem>,
        b: &WittVector<R::Elem>,
    ) -> Result<WittVector<R::Elem>, WittError> {
        self.check_pair(a, b)?;
        let n = a.len();
        let polys = witt_structure_polys(self.p, n)?;
        let args: Vec<R::Elem> =
            a.components.iter().chain(&b.components).cloned().collect();
        Ok(self.eval_structure(&polys.prod, &args, n))
    }

    pub fn neg(&self, a: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>, WittError> {
        self.check(a)?;
        let n = a.len();
        let polys = witt_structure_polys(self.p, n)?;
        Ok(self.eval_structure(&polys.neg, &a.components, n))
    }

    pub fn sub(
        &self,
        a: &WittVector<R::Elem>,
        b: &WittVector<R::Elem>,
    ) -> Result<WittVector<R::Elem>, WittError> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    /// Ghost coordinates `(w_0(a), ..., w_{n-1}(a))`. Only offered where `p`
    /// is a non-zero-divisor, so the coordinates determine the vector.
    pub fn ghost(&self, a: &WittVector<R::Elem>) -> Result<Vec<R::Elem>, WittError> {
        self.check(a)?;
        if !self.ring.p_regular(self.p) {
            return Err(WittError::UnsupportedBaseRing(self.ring.name()));
        }
        let n = a.len();
        let mut out = Vec::with_capacity(n);
        for m in 0..n {
            let mut acc = self.ring.zero();
            for i in 0..=m {
                let e = (self.p as u128).pow((m - i) as u32);
                let e: u32 = e.try_into().map_err(|_| WittError::Overflow)?;
                let pi = self.ring.from_bigint(&big_pow(self.p, i));
                let t = self.ring.mul(&pi, &self.ring.pow_u32(&a.components[i], e));
                acc = self.ring.add(&acc, &t);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Frobenius `F: W_n -> W_{n-1}`, characterized by
    /// `w_m(F(a)) = w_{m+1}(a)`.
    pub fn frobenius(&self, a: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>, WittError> {
        self.check(a)?;
        let n = a.len();
        if n < 2 {
            return Err(WittError::LengthTooShort);
        }
        let polys = witt_structure_polys(self.p, n)?;
        Ok(self.eval_structure(&polys.frob, &a.components, n - 1))
    }

    /// Verschiebung `V: W_n -> W_{n+1}`, `(a_0, ...) -> (0, a_0, ...)`.
    pub fn verschiebung(&self, a: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>, WittError> {
        self.check(a)?;
        let mut components = vec![self.ring.zero()];
        components.extend(a.components.iter().cloned());
        Ok(self.from_components(components))
    }

    /// Restriction `R: W_n -> W_{n-1}`, dropping the last component.
    pub fn restrict(&self, a: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>, WittError> {
        self.check(a)?;
        if a.len() < 2 {
            return Err(WittError::LengthTooShort);
        }
        Ok(self.from_components(a.components[..a.len() - 1].to_vec()))
    }

    /// `xi = sum_{j=0}^{p-1} [c]^j`, computed from Teichmueller powers
    /// `[c]^j = [c^j]`.
    pub fn xi_image(&self, n: usize, c: R::Elem) -> Result<WittVector<R::Elem>, WittError> {
        if n == 0 {
            return Err(WittError::LengthTooShort);
        }
        let mut acc = self.one(n);
        let mut power = self.ring.one();
        for _ in 1..self.p {
            power = self.ring.mul(&power, &c);
            acc = self.add(&acc, &self.teichmuller(power.clone(), n))?;
        }
        Ok(acc)
    }

    /// Renders as `W_n(R): (a_0, ..., a_{n-1})`.
    pub fn format(&self, a: &WittVector<R::Elem>) -> String {
        let comps: Vec<String> =
            a.components.iter().map(|e| self.ring.format_elem(e)).collect();
        format!("W_{}({}): ({})", a.len(), self.ring.name(), comps.join(", "))
    }
}

impl WittContext<FqRing> {
    /// `W_n(phi^n)`: every component raised to the `p^n`-th power, where `n`
    /// is the vector length. Commutes with restriction and is bijective for
    /// perfect coefficients.
    pub fn phi_infty(&self, a: &WittVector<FqElement>) -> Result<WittVector<FqElement>, WittError> {
        self.check(a)?;
        let n = a.len() as u32;
        let e = (self.p as u128).checked_pow(n).ok_or(WittError::Overflow)?;
        let field = &self.ring.field;
        let components = a.components.iter().map(|c| field.pow_raw(c, e)).collect();
        Ok(self.from_components(components))
    }

    /// Inverse of [`Self::phi_infty`]: `phi` has order `r` on `F_{p^r}`, so
    /// the inverse of `phi^n` is `phi^{(r - n mod r) mod r}` per component.
    pub fn phi_infty_inv(
        &self,
        a: &WittVector<FqElement>,
    ) -> Result<WittVector<FqElement>, WittError> {
        self.check(a)?;
        let r = self.ring.field.r();
        let n = a.len();
        let k = (r - n % r) % r;
        let e = (self.p as u128).checked_pow(k as u32).ok_or(WittError::Overflow)?;
        let field = &self.ring.field;
        let components = a.components.iter().map(|c| field.pow_raw(c, e)).collect();
        Ok(self.from_components(components))
    }

    /// The unique ring isomorphism `W_n(F_p) -> Z/p^n`. Writing
    /// `a = sum_i V^i([d_i])`, the image is `sum_i p^i omega(d_i)` with
    /// `omega` the multiplicative (Teichmueller) lift to `Z/p^n`.
    pub fn wn_fp_iso(&self, a: &WittVector<FqElement>) -> Result<u128, WittError> {
        self.check(a)?;
        if self.ring.field.r() != 1 {
            return Err(WittError::WrongBaseField);
        }
        let n = a.len();
        let p = self.p as u128;
        let pn = p.checked_pow(n as u32).ok_or(WittError::Overflow)?;
        // omega(d) = d^{p^{n-1}} mod p^n, the (p-1)-st root of unity
        // congruent to d mod p (plus omega(0) = 0).
        let teich_exp = p.checked_pow((n - 1) as u32).ok_or(WittError::Overflow)?;
        let mut x = a.clone();
        let mut result: u128 = 0;
        let mut scale: u128 = 1;
        for i in 0..n {
            let len_i = n - i;
            let d = x.components[0].coeffs[0] as u128;
            let omega = modpow_u128(d, teich_exp, pn);
            result = (result + scale.checked_mul(omega).ok_or(WittError::Overflow)? % pn) % pn;
            if len_i > 1 {
                let t = self.teichmuller(self.ring.field.from_u64(d as u64), len_i);
                let diff = self.sub(&x, &t)?;
                debug_assert!(self.ring.field.is_zero(&diff.components[0]));
                x = self.from_components(diff.components[1..].to_vec());
            }
            scale = scale.checked_mul(p).ok_or(WittError::Overflow)?;
        }
        Ok(result)
    }
}

fn modpow_u128(mut base: u128, mut e: u128, m: u128) -> u128 {
    // Operands stay below 2^63 for every supported p^n, so the products
    // cannot overflow.
    base %= m;
    let mut acc: u128 = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}
