//! Smith normal form over the integers, with unimodular transforms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the width when there are no
    /// rows. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Self {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                m.data[i * cols + j] = x.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let x = &self.data[src * self.cols + j];
            if !x.is_zero() {
                let y = x * c;
                self.data[dst * self.cols + j] += y;
            }
        }
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let x = &self.data[i * self.cols + src];
            if !x.is_zero() {
                let y = x * c;
                self.data[i * self.cols + dst] += y;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -x;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Diagonal entries, `min(rows, cols)` of them, each dividing the next
    /// (zeros last).
    pub factors: Vec<BigInt>,
    /// Row transform, `rows x rows`.
    pub u: IntMatrix,
    /// Column transform, `cols x cols`.
    pub v: IntMatrix,
}

/// Quotient rounded to nearest, so remainders stay at most half the divisor.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (&r + &r).abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

/// Computes `U * M * V = D` with `U`, `V` unimodular and `D` diagonal.
/// Pivots are chosen by least absolute value to keep entries small.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        let Some((pi, pj)) = min_entry(&a, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)))) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !a.get(i, t).is_zero() {
                    let q = -nearest_quotient(a.get(i, t), &p);
                    a.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    clean &= a.get(i, t).is_zero();
                }
            }
            for j in t + 1..cols {
                if !a.get(t, j).is_zero() {
                    let q = -nearest_quotient(a.get(t, j), &p);
                    a.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    clean &= a.get(t, j).is_zero();
                }
            }
            if !clean {
                let cells = (t + 1..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                let (i, j) = min_entry(&a, cells).expect("nonzero remainder");
                if i != t {
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                } else {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
                continue;
            }
            // pivot must divide the rest of the submatrix
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let factors = (0..steps).map(|t| a.get(t, t).clone()).collect();
    SmithForm { factors, u, v }
}

fn min_entry(a: &IntMatrix, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, j) in cells {
        let x = a.get(i, j);
        if x.is_zero() {
            continue;
        }
        let ax = x.abs();
        if best.as_ref().is_none_or(|(_, b)| ax < *b) {
            let done = ax.is_one();
            best = Some(((i, j), ax));
            if done {
                break;
            }
        }
    }
    best.map(|(c, _)| c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Vec<BigInt> {
        let s = smith_normal_form(m);
        let d = s.u.mul(m).mul(&s.v);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j { s.factors[i].clone() } else { BigInt::zero() };
                assert_eq!(d.get(i, j), &want, "U M V not diagonal at ({i},{j})");
            }
        }
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        for w in s.factors.windows(2) {
            assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        s.factors
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]], 2)), ints(&[1, 6]));
        assert_eq!(check(&IntMatrix::zeros(3, 3)), ints(&[0, 0, 0]));
        assert_eq!(check(&IntMatrix::from_rows(&[vec![2]], 1)), ints(&[2]));
        assert_eq!(check(&IntMatrix::from_rows(&[vec![-4]], 1)), ints(&[4]));
        assert_eq!(check(&IntMatrix::zeros(0, 2)), ints(&[]));
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        assert_eq!(check(&m), ints(&[2, 6, 12]));
        let m = IntMatrix::from_rows(&[vec![6, 4], vec![4, 6], vec![2, 2]], 2);
        assert_eq!(check(&m), ints(&[2, 2]));
    }

    #[test]
    fn determinant_examples() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]], 2);
        assert_eq!(m.determinant(), BigInt::from(-1));
        let m = IntMatrix::from_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]], 3);
        assert_eq!(m.determinant(), BigInt::from(18));
    }

    #[test]
    fn pseudo_random_matrices() {
        let mut x: u64 = 0x2545F4914F6CDD1D;
        for _ in 0..40 {
            let mut next = || {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                (x % 11) as i64 - 5
            };
            let (r, c) = (1 + (next().unsigned_abs() % 5) as usize, 1 + (next().unsigned_abs() % 5) as usize);
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| next()).collect()).collect();
            check(&IntMatrix::from_rows(&rows, c));
        }
    }
}
