//! Dense complex matrices, just enough for the operator work here:
//! multiply, invert, characteristic polynomial, exponential. Sizes stay in
//! the single digits, so everything is schoolbook.

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub n: usize,
    a: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, a: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrices only");
        CMatrix { n, a: rows.concat() }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self[(i, k)];
                if x.norm() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += x * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x += y;
        }
        out
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x -= y;
        }
        out
    }

    pub fn scale(&self, f: Complex64) -> CMatrix {
        let mut out = self.clone();
        for x in out.a.iter_mut() {
            *x *= f;
        }
        out
    }

    pub fn max_norm(&self) -> f64 {
        self.a.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Gauss-Jordan with partial pivoting; `None` when numerically singular.
    pub fn inverse(&self) -> Option<CMatrix> {
        let n = self.n;
        let mut m = self.clone();
        let mut inv = CMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| m[(a, col)].norm().partial_cmp(&m[(b, col)].norm()).unwrap())?;
            if m[(pivot, col)].norm() < 1e-300 {
                return None;
            }
            for j in 0..n {
                let t = m[(col, j)];
                m[(col, j)] = m[(pivot, j)];
                m[(pivot, j)] = t;
                let t = inv[(col, j)];
                inv[(col, j)] = inv[(pivot, j)];
                inv[(pivot, j)] = t;
            }
            let d = m[(col, col)];
            for j in 0..n {
                m[(col, j)] /= d;
                inv[(col, j)] /= d;
            }
            for r in 0..n {
                if r != col {
                    let f = m[(r, col)];
                    if f.norm() > 0.0 {
                        for j in 0..n {
                            let mc = m[(col, j)];
                            let ic = inv[(col, j)];
                            m[(r, j)] -= f * mc;
                            inv[(r, j)] -= f * ic;
                        }
                    }
                }
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial `det(xI - M)`, ascending coefficients, by
    /// the Faddeev-LeVerrier recurrence (exact in exact arithmetic, stable
    /// enough at these sizes).
    pub fn charpoly(&self) -> Vec<Complex64> {
        let n = self.n;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        let mut mk = CMatrix::identity(n);
        for k in 1..=n {
            let ak = self.mul(&mk);
            let c = -ak.trace() / k as f64;
            coeffs[n - k] = c;
            mk = ak;
            for i in 0..n {
                mk[(i, i)] += c;
            }
        }
        coeffs
    }

    /// `exp(M)` by scaling and squaring around a plain Taylor sum.
    pub fn exp(&self) -> CMatrix {
        let norm = self.max_norm() * self.n as f64;
        let k = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let scaled = self.scale(Complex64::new(1.0 / 2f64.powi(k as i32), 0.0));
        let mut acc = CMatrix::identity(self.n);
        let mut term = CMatrix::identity(self.n);
        for m in 1..200 {
            term = term.mul(&scaled).scale(Complex64::new(1.0 / m as f64, 0.0));
            acc = acc.add(&term);
            if term.max_norm() <= 1e-22 * acc.max_norm().max(1.0) {
                break;
            }
        }
        for _ in 0..k {
            acc = acc.mul(&acc);
        }
        acc
    }

    /// Evaluates a polynomial (ascending coefficients) at this matrix.
    pub fn poly_eval(&self, coeffs: &[Complex64]) -> CMatrix {
        let mut acc = CMatrix::zeros(self.n);
        for &c in coeffs.iter().rev() {
            acc = acc.mul(self);
            for i in 0..self.n {
                acc[(i, i)] += c;
            }
        }
        acc
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.a[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.a[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        a.sub(b).max_norm() <= tol
    }

    #[test]
    fn inverse_round_trip() {
        let m = CMatrix::from_real_rows(&[
            vec![2.0, 1.0, 0.0],
            vec![1.0, 3.0, 1.0],
            vec![0.0, 1.0, 4.0],
        ]);
        let inv = m.inverse().unwrap();
        assert!(close(&m.mul(&inv), &CMatrix::identity(3), 1e-13));
        let singular = CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn charpoly_of_companion_like_matrix() {
        // [[0, -6], [1, 5]] has charpoly x^2 - 5x + 6.
        let m = CMatrix::from_real_rows(&[vec![0.0, -6.0], vec![1.0, 5.0]]);
        let c = m.charpoly();
        let expect = [6.0, -5.0, 1.0];
        for (got, want) in c.iter().zip(expect) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn exp_of_nilpotent_and_diagonal() {
        let n = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        let e = n.exp();
        let expect = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]);
        assert!(close(&e, &expect, 1e-15));

        let mut d = CMatrix::zeros(2);
        d[(0, 0)] = Complex64::new(2f64.ln(), 0.0);
        d[(1, 1)] = Complex64::new(0.0, std::f64::consts::PI);
        let e = d.exp();
        assert!((e[(0, 0)] - 2.0).norm() < 1e-14);
        assert!((e[(1, 1)] + 1.0).norm() < 1e-14);
    }

    #[test]
    fn poly_eval_matches_cayley_hamilton() {
        let m = CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        let c = m.charpoly();
        assert!(m.poly_eval(&c).max_norm() < 1e-12);
    }
}
