//! Explicit arithmetic in finite fields `F_{p^r}`.
//!
//! A field is represented as `F_p[x] / (f)` for a monic irreducible `f` of
//! degree `r`; elements are coefficient vectors of length `r` (constant term
//! first). When no modulus is supplied, [`build_field`] scans monic
//! polynomials in lexicographic coefficient order (leading side first, the
//! same order used by the serialized form) and takes the first irreducible
//! one, so a given `(p, r)` always produces the same field.
//!
//! The element enumeration used by point counting is guarded: fields larger
//! than [`DEFAULT_ENUMERATION_LIMIT`] refuse to enumerate unless the caller
//! raises the limit explicitly.

use thiserror::Error;

/// Largest field order enumerated without an explicit override.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus of degree {got} does not match extension degree {want}")]
    DegreeMismatch { want: usize, got: usize },
    #[error("modulus is reducible over F_{p}")]
    Reducible { p: u64 },
    #[error("field order p^r overflows the supported range")]
    FieldTooLarge,
    #[error("element does not belong to this field")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("enumeration of {q} elements exceeds the guard {limit}")]
    TooLarge { q: u128, limit: u128 },
}

/// An element of `F_{p^r}`: coefficients of the residue class representative,
/// `coeffs[i]` multiplying `x^i`, each reduced mod `p`. Elements are only
/// meaningful relative to the field that produced them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqElement {
    pub coeffs: Vec<u64>,
}

/// The field `F_{p^r} = F_p[x]/(f)`, `f` monic irreducible of degree `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqField {
    p: u64,
    r: usize,
    /// Ascending coefficients of the defining modulus, length `r + 1`,
    /// `modulus[r] == 1`.
    modulus: Vec<u64>,
}

/// Builds `F_{p^r}`. A provided modulus is given leading-to-constant (the
/// serialized order) and is validated; `None` triggers the deterministic
/// search.
pub fn build_field(p: u64, r: usize, modulus: Option<&[u64]>) -> Result<FqField, FieldError> {
    if !is_prime_u64(p) {
        return Err(FieldError::NonPrime(p));
    }
    if r == 0 {
        return Err(FieldError::DegreeMismatch { want: 1, got: 0 });
    }
    pow_checked(p, r).ok_or(FieldError::FieldTooLarge)?;
    match modulus {
        Some(desc) => {
            if desc.len() != r + 1 {
                return Err(FieldError::DegreeMismatch { want: r, got: desc.len().saturating_sub(1) });
            }
            let mut asc: Vec<u64> = desc.iter().rev().map(|c| c % p).collect();
            if asc[r] != 1 {
                return Err(FieldError::DegreeMismatch { want: r, got: poly_deg(&asc) });
            }
            poly_trim(&mut asc);
            if asc.len() != r + 1 {
                return Err(FieldError::DegreeMismatch { want: r, got: poly_deg(&asc) });
            }
            if !is_irreducible(&asc, p) {
                return Err(FieldError::Reducible { p });
            }
            Ok(FqField { p, r, modulus: asc })
        }
        None => {
            // Monic f = x^r + c_{r-1} x^{r-1} + ... + c_0, candidates ordered
            // with the x^{r-1} digit most significant.
            let total = pow_checked(p, r).ok_or(FieldError::FieldTooLarge)?;
            for idx in 0..total {
                let mut asc = vec![0u64; r + 1];
                asc[r] = 1;
                let mut rem = idx;
                for j in (0..r).rev() {
                    let base = pow_checked(p, j).unwrap();
                    asc[j] = (rem / base) as u64;
                    rem %= base;
                }
                if is_irreducible(&asc, p) {
                    return Ok(FqField { p, r, modulus: asc });
                }
            }
            // Unreachable: irreducible polynomials of every degree exist.
            Err(FieldError::Reducible { p })
        }
    }
}

impl FqField {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Field order `p^r`.
    pub fn q(&self) -> u128 {
        pow_checked(self.p, self.r).expect("validated at construction")
    }

    /// Defining modulus, ascending coefficients (constant first).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Defining modulus in the serialized leading-to-constant order.
    pub fn modulus_descending(&self) -> Vec<u64> {
        self.modulus.iter().rev().copied().collect()
    }

    pub fn zero(&self) -> FqElement {
        FqElement { coeffs: vec![0; self.r] }
    }

    pub fn one(&self) -> FqElement {
        let mut coeffs = vec![0; self.r];
        coeffs[0] = 1;
        FqElement { coeffs }
    }

    /// The residue class of the generator `x` (for `r = 1` this is the image
    /// of the root of the degree-one modulus, i.e. `-c_0`).
    pub fn gen(&self) -> FqElement {
        if self.r == 1 {
            return self.from_u64(self.p - self.modulus[0] % self.p);
        }
        let mut coeffs = vec![0; self.r];
        coeffs[1] = 1;
        FqElement { coeffs }
    }

    /// Embeds an integer via the prime field.
    pub fn from_u64(&self, n: u64) -> FqElement {
        let mut coeffs = vec![0; self.r];
        coeffs[0] = n % self.p;
        FqElement { coeffs }
    }

    /// Element from ascending coefficients (shorter vectors are zero-padded,
    /// entries reduced mod p). Longer vectors are rejected.
    pub fn element(&self, coeffs: &[u64]) -> Result<FqElement, FieldError> {
        if coeffs.len() > self.r {
            return Err(FieldError::FieldMismatch);
        }
        let mut c = vec![0; self.r];
        for (i, &v) in coeffs.iter().enumerate() {
            c[i] = v % self.p;
        }
        Ok(FqElement { coeffs: c })
    }

    pub(crate) fn check(&self, a: &FqElement) -> Result<(), FieldError> {
        if a.coeffs.len() != self.r || a.coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::FieldMismatch);
        }
        Ok(())
    }

    pub fn is_zero(&self, a: &FqElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElement, b: &FqElement) -> Result<FqElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_raw(a, b))
    }

    pub fn sub(&self, a: &FqElement, b: &FqElement) -> Result<FqElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub_raw(a, b))
    }

    pub fn mul(&self, a: &FqElement, b: &FqElement) -> Result<FqElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_raw(a, b))
    }

    pub fn div(&self, a: &FqElement, b: &FqElement) -> Result<FqElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let inv = self.inv(b)?;
        Ok(self.mul_raw(a, &inv))
    }

    pub fn neg(&self, a: &FqElement) -> Result<FqElement, FieldError> {
        self.check(a)?;
        Ok(self.neg_raw(a))
    }

    pub fn inv(&self, a: &FqElement) -> Result<FqElement, FieldError> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        // Extended Euclid in F_p[x]: u*a + v*modulus = gcd = const.
        let mut r0 = self.modulus.clone();
        let mut r1 = a.coeffs.clone();
        poly_trim(&mut r1);
        let mut t0: Vec<u64> = vec![0];
        let mut t1: Vec<u64> = vec![1];
        let p = self.p;
        while poly_deg(&r1) > 0 || (r1.len() == 1 && r1[0] != 0) {
            let (quot, rem) = poly_divrem(&r0, &r1, p);
            let t2 = poly_sub(&t0, &poly_mul(&quot, &t1, p), p);
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = t2;
            if r1.iter().all(|&c| c == 0) {
                break;
            }
        }
        // gcd is the constant r0 (a invertible since modulus irreducible).
        let g = r0[0];
        debug_assert!(poly_deg(&r0) == 0 && g != 0);
        let ginv = mod_inv(g, p);
        let mut out = vec![0u64; self.r];
        let reduced = poly_rem(&t0, &self.modulus, p);
        for (i, &c) in reduced.iter().enumerate() {
            out[i] = mulmod(c, ginv, p);
        }
        Ok(FqElement { coeffs: out })
    }

    /// `a^e`, with negative exponents routed through the inverse.
    pub fn pow(&self, a: &FqElement, e: i128) -> Result<FqElement, FieldError> {
        self.check(a)?;
        if e < 0 {
            let inv = self.inv(a)?;
            return Ok(self.pow_raw(&inv, (-e) as u128));
        }
        if e == 0 {
            return Ok(self.one());
        }
        Ok(self.pow_raw(a, e as u128))
    }

    /// The p-power Frobenius `a -> a^p`, a field automorphism fixing `F_p`.
    pub fn frobenius_endo(&self, a: &FqElement) -> Result<FqElement, FieldError> {
        self.check(a)?;
        Ok(self.pow_raw(a, self.p as u128))
    }

    /// Absolute trace to `F_2` (only for `p = 2`), used by quadratic solving
    /// in characteristic two.
    pub(crate) fn trace_to_f2(&self, a: &FqElement) -> u64 {
        debug_assert_eq!(self.p, 2);
        let mut acc = self.zero();
        let mut cur = a.clone();
        for _ in 0..self.r {
            acc = self.add_raw(&acc, &cur);
            cur = self.pow_raw(&cur, 2);
        }
        acc.coeffs[0]
    }

    /// Deterministic enumeration of all field elements (base-p counter on
    /// coefficient vectors, constant digit fastest), guarded by `limit`.
    pub fn elements_with_limit(
        &self,
        limit: u128,
    ) -> Result<impl Iterator<Item = FqElement> + '_, FieldError> {
        let q = self.q();
        if q > limit {
            return Err(FieldError::TooLarge { q, limit });
        }
        let p = self.p;
        let r = self.r;
        Ok((0..q).map(move |idx| {
            let mut coeffs = vec![0u64; r];
            let mut rem = idx;
            for c in coeffs.iter_mut() {
                *c = (rem % p as u128) as u64;
                rem /= p as u128;
            }
            FqElement { coeffs }
        }))
    }

    /// Enumeration with the default guard.
    pub fn elements(&self) -> Result<impl Iterator<Item = FqElement> + '_, FieldError> {
        self.elements_with_limit(DEFAULT_ENUMERATION_LIMIT)
    }

    /// Renders an element as a polynomial in `x`.
    pub fn format_element(&self, a: &FqElement) -> String {
        let mut parts: Vec<String> = Vec::new();
        for i in (0..self.r).rev() {
            let c = a.coeffs.get(i).copied().unwrap_or(0);
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    // Raw operations: callers guarantee operands belong to this field.

    pub(crate) fn add_raw(&self, a: &FqElement, b: &FqElement) -> FqElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect();
        FqElement { coeffs }
    }

    pub(crate) fn sub_raw(&self, a: &FqElement, b: &FqElement) -> FqElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| if x >= y { x - y } else { x + self.p - y })
            .collect();
        FqElement { coeffs }
    }

    pub(crate) fn neg_raw(&self, a: &FqElement) -> FqElement {
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        FqElement { coeffs }
    }

    pub(crate) fn mul_raw(&self, a: &FqElement, b: &FqElement) -> FqElement {
        let p = self.p;
        if self.r == 1 {
            return FqElement { coeffs: vec![mulmod(a.coeffs[0], b.coeffs[0], p)] };
        }
        let prod = poly_mul(&a.coeffs, &b.coeffs, p);
        let rem = poly_rem(&prod, &self.modulus, p);
        let mut coeffs = vec![0u64; self.r];
        coeffs[..rem.len()].copy_from_slice(&rem);
        FqElement { coeffs }
    }

    pub(crate) fn pow_raw(&self, a: &FqElement, mut e: u128) -> FqElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_raw(&base, &base);
            }
        }
        acc
    }
}

// ---------- polynomial helpers over F_p (ascending coefficients) ----------

fn poly_deg(a: &[u64]) -> usize {
    let mut d = a.len();
    while d > 1 && a[d - 1] == 0 {
        d -= 1;
    }
    d - 1
}

fn poly_trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat: p prime, a != 0.
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            let idx = i + j;
            out[idx] = (out[idx] + mulmod(x, y, p)) % p;
        }
    }
    out
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = if x >= y { x - y } else { x + p - y };
    }
    out
}

/// Euclidean division in F_p[x]: returns (quotient, remainder).
fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = poly_deg(b);
    let lead_inv = mod_inv(b[db], p);
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let da = poly_deg(&rem);
    if da < db || (rem.len() == 1 && rem[0] == 0) {
        return (vec![0], rem);
    }
    let mut quot = vec![0u64; da - db + 1];
    for k in (0..=da - db).rev() {
        let idx = db + k;
        if idx >= rem.len() {
            continue;
        }
        let c = rem[idx];
        if c == 0 {
            continue;
        }
        let f = mulmod(c, lead_inv, p);
        quot[k] = f;
        for j in 0..=db {
            let t = mulmod(f, b[j], p);
            let pos = j + k;
            rem[pos] = if rem[pos] >= t { rem[pos] - t } else { rem[pos] + p - t };
        }
    }
    poly_trim(&mut rem);
    (quot, rem)
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    poly_divrem(a, b, p).1
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    while !(r1.len() == 1 && r1[0] == 0) {
        let rem = poly_rem(&r0, &r1, p);
        r0 = r1;
        r1 = rem;
    }
    r0
}

/// `g^e mod f` in F_p[x].
fn poly_powmod(g: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(g, f, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &base, p), f, p);
        }
        base = poly_rem(&poly_mul(&base, &base, p), f, p);
        e >>= 1;
    }
    acc
}

/// Irreducibility of monic `f` of degree `r` over `F_p`:
/// `x^{p^r} = x (mod f)` and `gcd(x^{p^{r/l}} - x, f) = 1` for primes `l | r`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let r = poly_deg(f);
    if r == 0 {
        return false;
    }
    if r == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // Iterated Frobenius images of x modulo f.
    let mut frob = Vec::with_capacity(r);
    let mut cur = x.clone();
    for _ in 0..r {
        cur = poly_powmod(&cur, p, f, p);
        frob.push(cur.clone());
    }
    let mut xr = frob[r - 1].clone();
    poly_trim(&mut xr);
    if xr != x {
        return false;
    }
    for l in prime_divisors(r as u64) {
        let k = r / l as usize;
        let h = poly_sub(&frob[k - 1], &x, p);
        let g = poly_gcd(f, &h, p);
        if poly_deg(&g) != 0 {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d.checked_mul(d).map(|s| s <= n).unwrap_or(false) {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

fn pow_checked(p: u64, r: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..r {
        acc = acc.checked_mul(p as u128)?;
    }
    Some(acc)
}
