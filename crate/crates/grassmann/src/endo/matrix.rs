use std::fmt;

use rand::Rng;

use crate::algebra::GrassmannElement;
use crate::coeff::Coefficient;

/// A square matrix over the coefficient field, indexed from 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<C> {
    n: usize,
    entries: Vec<C>,
}

impl<C: Coefficient> Matrix<C> {
    pub fn zero(n: usize) -> Self {
        Matrix { n, entries: vec![C::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        self.entries[i * self.n + j] = c;
    }

    pub fn rows(&self) -> Vec<Vec<C>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = C::zero();
                for k in 0..n {
                    acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        Matrix { n: self.n, entries: self.entries.iter().map(|e| e.clone() * c.clone()).collect() }
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        (0..self.n)
            .map(|i| (0..self.n).fold(C::zero(), |acc, k| acc + self.get(i, k).clone() * v[k].clone()))
            .collect()
    }

    /// The column of elements Σ_k a_{ik} v_k.
    pub fn mul_column(&self, v: &[GrassmannElement<C>]) -> Vec<GrassmannElement<C>> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(GrassmannElement::zero(v[0].n()), |acc, k| &acc + &v[k].scale(self.get(i, k)))
            })
            .collect()
    }

    /// Row reduction to upper triangular form, returning the determinant.
    pub fn det(&self) -> C {
        let n = self.n;
        let mut a = self.clone();
        let mut det = C::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return C::zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a.get(col, col).clone();
            det = det * p.clone();
            let pinv = p.inv().expect("coefficient rings are fields");
            for r in col + 1..n {
                let f = a.get(r, col).clone() * pinv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a.get(r, j).clone() - f.clone() * a.get(col, j).clone();
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            for j in 0..n {
                a.entries.swap(pivot * n + j, col * n + j);
                inv.entries.swap(pivot * n + j, col * n + j);
            }
            let pinv = a.get(col, col).inv()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j).clone() * pinv.clone());
                inv.set(col, j, inv.get(col, j).clone() * pinv.clone());
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j).clone() - f.clone() * a.get(col, j).clone();
                    a.set(r, j, v);
                    let w = inv.get(r, j).clone() - f.clone() * inv.get(col, j).clone();
                    inv.set(r, j, w);
                }
            }
        }
        Some(inv)
    }

    /// A uniformly drawn invertible matrix (rejection sampling).
    pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let m = Matrix { n, entries: (0..n * n).map(|_| C::sample(rng)).collect() };
            if m.det().is_unit() {
                return m;
            }
        }
    }
}

impl<C: Coefficient> fmt::Display for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.entries.chunks(self.n).enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
