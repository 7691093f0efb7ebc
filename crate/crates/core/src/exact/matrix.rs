//! Dense matrices over an exact field.
//!
//! Rank and determinant use fraction-free (Bareiss) elimination over `Q`,
//! after clearing row denominators, and plain Gaussian elimination over
//! `F_p`. Kernels and linear solves go through reduced row echelon form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have `cols` entries.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> ExactMatrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        ExactMatrix { field, rows: n, cols, data }
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> ExactMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> ExactMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { field, rows, cols, data }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        ExactMatrix::from_fn(self.field, self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(self.field.zero(), |acc, l| {
                &acc + &(self.get(i, l) * rhs.get(l, j))
            })
        })
    }

    pub fn add(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.get(i, j) + rhs.get(i, j)
        })
    }

    pub fn scale(&self, c: &Scalar) -> ExactMatrix {
        ExactMatrix::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    /// Columns of `self` followed by columns of `rhs`.
    pub fn hstack(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.rows, rhs.rows);
        ExactMatrix::from_fn(self.field, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        ExactMatrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        ExactMatrix::from_fn(self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        match self.field {
            Field::Rational => bareiss(self.integer_rows()).0,
            Field::Prime(_) => gauss_rank(self.clone()),
        }
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return self.field.one();
        }
        match self.field {
            Field::Rational => {
                let mut scale = BigInt::one();
                let rows = (0..self.rows)
                    .map(|i| {
                        let (row, s) = clear_denominators(self.row(i));
                        scale *= s;
                        row
                    })
                    .collect();
                let (rank, det) = bareiss(rows);
                if rank < self.rows {
                    return self.field.zero();
                }
                Scalar::Rational(BigRational::new(det, scale))
            }
            Field::Prime(_) => gauss_det(self.clone()),
        }
    }

    /// Kernel basis as the columns of a `cols x (cols - rank)` matrix.
    pub fn kernel(&self) -> ExactMatrix {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut k = ExactMatrix::zeros(self.field, self.cols, free.len());
        for (c, &fj) in free.iter().enumerate() {
            k.set(fj, c, self.field.one());
            for (r, &pj) in pivots.iter().enumerate() {
                k.set(pj, c, -rref.get(r, fj));
            }
        }
        k
    }

    /// Some solution of `self * x = rhs`, with free variables set to zero.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows);
        let aug = ExactMatrix::from_fn(self.field, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs[i].clone()
            }
        });
        let (rref, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pj) in pivots.iter().enumerate() {
            x[pj] = rref.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| clear_denominators(self.row(i)).0).collect()
    }
}

/// Scales a rational row to integers; returns the row and the scale factor.
fn clear_denominators(row: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let lcm = row.iter().fold(BigInt::one(), |acc, s| match s {
        Scalar::Rational(q) => acc.lcm(q.denom()),
        _ => unreachable!("rational row expected"),
    });
    let ints = row
        .iter()
        .map(|s| match s {
            Scalar::Rational(q) => q.numer() * (&lcm / q.denom()),
            _ => unreachable!(),
        })
        .collect();
    (ints, lcm)
}

/// Fraction-free elimination. Returns the rank and, for square full-rank
/// input, the determinant.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    let det = if r == rows && rows == cols && rows > 0 {
        if sign < 0 {
            -prev
        } else {
            prev
        }
    } else {
        BigInt::zero()
    };
    (r, det)
}

fn gauss_rank(mut m: ExactMatrix) -> usize {
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        eliminate_below(&mut m, r, c);
        r += 1;
    }
    r
}

fn gauss_det(mut m: ExactMatrix) -> Scalar {
    let n = m.rows;
    let mut det = m.field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
            return m.field.zero();
        };
        if p != c {
            m.swap_rows(p, c);
            det = -det;
        }
        det = &det * m.get(c, c);
        eliminate_below(&mut m, c, c);
    }
    det
}

fn eliminate_below(m: &mut ExactMatrix, r: usize, c: usize) {
    let inv = m.get(r, c).inv().expect("nonzero pivot");
    for i in r + 1..m.rows {
        if m.get(i, c).is_zero() {
            continue;
        }
        let f = m.get(i, c) * &inv;
        for j in c..m.cols {
            let v = m.get(i, j) - &(&f * m.get(r, j));
            m.set(i, j, v);
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(Q, 2).rank(), 2);
        assert_eq!(ExactMatrix::zeros(Q, 3, 4).rank(), 0);
        // second row is twice the first
        assert_eq!(ExactMatrix::from_i64_rows(Q, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(ExactMatrix::identity(Q, 3).kernel().cols(), 0);
        let k = ExactMatrix::from_i64_rows(Q, &[&[1, 1]]).kernel();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![Q.from_i64(-1), Q.from_i64(1)]);
        assert_eq!(ExactMatrix::zeros(Q, 2, 2).kernel().cols(), 2);
    }

    #[test]
    fn rational_determinant_matches_prime_reduction() {
        let m = ExactMatrix::from_rows(
            Q,
            3,
            vec![
                vec![Q.from_ratio(1, 2), Q.from_i64(3), Q.from_i64(-1)],
                vec![Q.from_i64(2), Q.from_ratio(-5, 3), Q.from_i64(4)],
                vec![Q.from_i64(0), Q.from_i64(7), Q.from_ratio(1, 7)],
            ],
        );
        let det = m.determinant();
        // cofactor expansion along the first row
        let minor = |r: [usize; 2], c: [usize; 2]| {
            &(m.get(r[0], c[0]) * m.get(r[1], c[1])) - &(m.get(r[0], c[1]) * m.get(r[1], c[0]))
        };
        let expect = &(&(m.get(0, 0) * &minor([1, 2], [1, 2]))
            - &(m.get(0, 1) * &minor([1, 2], [0, 2])))
            + &(m.get(0, 2) * &minor([1, 2], [0, 1]));
        assert_eq!(det, expect);
        let fp = Field::default_prime();
        let mp = ExactMatrix::from_fn(fp, 3, 3, |i, j| m.get(i, j).to_field(fp).unwrap());
        assert_eq!(mp.determinant(), det.to_field(fp).unwrap());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = ExactMatrix::from_i64_rows(Q, &[&[1, 1], &[1, -1]]);
        let x = m.solve(&[Q.from_i64(3), Q.from_i64(1)]).unwrap();
        assert_eq!(x, vec![Q.from_i64(2), Q.from_i64(1)]);
        let s = ExactMatrix::from_i64_rows(Q, &[&[1, 1], &[2, 2]]);
        assert!(s.solve(&[Q.from_i64(1), Q.from_i64(3)]).is_none());
    }

    #[test]
    fn rank_nullity_over_fp() {
        let f = Field::default_prime();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..7 {
            // product of thin random factors has controlled rank
            let a = ExactMatrix::from_fn(f, n, 2, |_, _| f.random(&mut rng));
            let b = ExactMatrix::from_fn(f, 2, n, |_, _| f.random(&mut rng));
            let m = a.mul(&b);
            let k = m.kernel();
            assert_eq!(m.rank() + k.cols(), n);
            assert!(m.mul(&k).is_zero());
        }
    }
}
