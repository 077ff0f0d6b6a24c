//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients, just enough machinery to solve the ghost recursion and
//! evaluate the resulting universal polynomials in arbitrary base rings.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Terms map exponent vectors (length `nvars`) to nonzero coefficients.
/// The BTreeMap keeps iteration order deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exps = vec![0u32; nvars];
        exps[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(exps, BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                out.insert_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        let mut out = MPoly::zero(self.nvars);
        for (e, coeff) in &self.terms {
            out.terms.insert(e.clone(), coeff * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        if e == 0 {
            return MPoly::constant(self.nvars, BigInt::one());
        }
        let mut base = self.clone();
        let mut acc: Option<MPoly> = None;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap()
    }

    /// Exact division by an integer; `None` when some coefficient is not
    /// divisible. This is where the integrality of the ghost recursion is
    /// asserted.
    pub fn div_exact(&self, d: &BigInt) -> Option<MPoly> {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if !(c % d).is_zero() {
                return None;
            }
            out.terms.insert(e.clone(), c / d);
        }
        Some(out)
    }

    /// Largest exponent of variable `i` across all terms.
    pub fn max_exponent(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Sum of absolute values of coefficients (size diagnostic).
    pub fn coeff_l1(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Evaluates at ring elements using per-variable power tables.
    pub fn eval<R: super::WittRing>(&self, ring: &R, args: &[R::Elem]) -> R::Elem {
        assert_eq!(args.len(), self.nvars);
        let mut tables: Vec<Vec<R::Elem>> = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            let top = self.max_exponent(i);
            let mut tab = Vec::with_capacity(top as usize + 1);
            tab.push(ring.one());
            for e in 1..=top {
                let prev = &tab[(e - 1) as usize];
                tab.push(ring.mul(prev, &args[i]));
            }
            tables.push(tab);
        }
        let mut acc = ring.zero();
        for (exps, c) in &self.terms {
            let mut term = ring.from_bigint(c);
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = ring.mul(&term, &tables[i][e as usize]);
                }
            }
            acc = ring.add(&acc, &term);
        }
        acc
    }
}
