use itertools::Itertools;
use thiserror::Error;

use super::{LaurentPoly, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("size error: {0}")]
pub struct SizeError(pub String);

/// Dense row-major matrix over a commutative ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Builds from rows; `cols` fixes the width when there are no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self, SizeError> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(SizeError(format!("row of length {} in a {cols}-column matrix", r.len())));
        }
        let n = rows.len();
        Ok(Self { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Self { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn delete_column(&self, j: usize) -> Self {
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), &cols)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SizeError> {
        if self.cols != other.rows {
            return Err(SizeError(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc.plus(&self.get(i, k).times(other.get(k, j)));
                }
                m.set(i, j, acc);
            }
        }
        Ok(m)
    }

    /// Eliminates unit pivots, each step replacing the matrix by the Schur
    /// complement of the pivot. Stops after `limit` steps. Returns the number
    /// of steps and the accumulated determinant factor (sign included).
    fn eliminate_units(&mut self, limit: usize) -> (usize, T) {
        let mut steps = 0;
        let mut factor = T::one();
        while steps < limit {
            let Some((pi, pj, inv)) = self.best_unit_pivot() else {
                break;
            };
            let u = self.get(pi, pj).clone();
            factor = factor.times(&u);
            if (pi + pj) % 2 == 1 {
                factor = T::zero().minus(&factor);
            }
            let mut next = Self::zeros(self.rows - 1, self.cols - 1);
            for (ni, i) in (0..self.rows).filter(|&i| i != pi).enumerate() {
                let c = self.get(i, pj).times(&inv);
                for (nj, j) in (0..self.cols).filter(|&j| j != pj).enumerate() {
                    let v = if c.is_zero() || self.get(pi, j).is_zero() {
                        self.get(i, j).clone()
                    } else {
                        self.get(i, j).minus(&c.times(self.get(pi, j)))
                    };
                    next.set(ni, nj, v);
                }
            }
            *self = next;
            steps += 1;
        }
        (steps, factor)
    }

    /// Unit entry minimizing fill-in.
    fn best_unit_pivot(&self) -> Option<(usize, usize, T)> {
        let row_nz: Vec<usize> = (0..self.rows).map(|i| self.row(i).iter().filter(|x| !x.is_zero()).count()).collect();
        let col_nz: Vec<usize> =
            (0..self.cols).map(|j| (0..self.rows).filter(|&i| !self.get(i, j).is_zero()).count()).collect();
        let mut best: Option<(usize, usize, usize, T)> = None;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let cost = (row_nz[i] - 1) * (col_nz[j] - 1);
                if best.as_ref().is_some_and(|b| b.0 <= cost) {
                    continue;
                }
                if let Some(inv) = x.unit_inverse() {
                    best = Some((cost, i, j, inv));
                    if cost == 0 {
                        break;
                    }
                }
            }
        }
        best.map(|(_, i, j, inv)| (i, j, inv))
    }

    /// Determinant: unit-pivot elimination followed by fraction-free
    /// (Bareiss) elimination with exact division.
    pub fn determinant(&self) -> Result<T, SizeError> {
        if self.rows != self.cols {
            return Err(SizeError(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let mut m = self.clone();
        let (_, factor) = m.eliminate_units(usize::MAX);
        Ok(factor.times(&m.bareiss()))
    }

    fn bareiss(mut self) -> T {
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            let pivot_row = (k..n).filter(|&r| !self.get(r, k).is_zero()).min_by_key(|&r| self.get(r, k).weight());
            let Some(p) = pivot_row else {
                return T::zero();
            };
            if p != k {
                for j in 0..n {
                    self.data.swap(p * n + j, k * n + j);
                }
                negate = !negate;
            }
            let akk = self.get(k, k).clone();
            for i in k + 1..n {
                let aik = self.get(i, k).clone();
                for j in k + 1..n {
                    let num = self.get(i, j).times(&akk).minus(&aik.times(self.get(k, j)));
                    let v = num.exact_div(&prev).expect("Bareiss division is exact");
                    self.set(i, j, v);
                }
                self.set(i, k, T::zero());
            }
            prev = akk;
        }
        let d = self.get(n - 1, n - 1).clone();
        if negate {
            T::zero().minus(&d)
        } else {
            d
        }
    }
}

impl<T: Ring + std::fmt::Display> std::fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Gcd of the `(n-k)×(n-k)` minors of `m` (n = column count) after deleting
/// its last column. Unit-normalized; zero when every minor vanishes.
pub fn elementary_ideal_gcd(m: &Matrix<LaurentPoly>, k: usize) -> Result<LaurentPoly, SizeError> {
    if m.cols() == 0 {
        return Err(SizeError("matrix has no columns".into()));
    }
    elementary_ideal_gcd_deleting(m, k, m.cols() - 1)
}

/// As [`elementary_ideal_gcd`] but deleting column `col`.
pub fn elementary_ideal_gcd_deleting(m: &Matrix<LaurentPoly>, k: usize, col: usize) -> Result<LaurentPoly, SizeError> {
    let n = m.cols();
    if k == 0 || k > n {
        return Err(SizeError(format!("k = {k} outside 1..={n}")));
    }
    if col >= n {
        return Err(SizeError(format!("column {col} outside 0..{n}")));
    }
    let mut a = m.delete_column(col);
    let size = n - k;
    let (done, _) = a.eliminate_units(size);
    let s = size - done;
    if s == 0 {
        return Ok(LaurentPoly::one());
    }
    if s > a.rows() || s > a.cols() {
        return Ok(LaurentPoly::zero());
    }
    let mut g = LaurentPoly::zero();
    for rows in (0..a.rows()).combinations(s) {
        for cols in (0..a.cols()).combinations(s) {
            let d = a.submatrix(&rows, &cols).determinant()?;
            if d.is_zero() {
                continue;
            }
            g = g.gcd(&d);
            if g.as_unit().is_some() {
                return Ok(LaurentPoly::one());
            }
        }
    }
    Ok(g.normalize_units())
}
