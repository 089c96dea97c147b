//! Dense exact matrices and reduced row echelon forms.
//!
//! Over Q the forward pass is fraction-free (rows are scaled to integers and
//! eliminated with exact Bareiss division); the rationals only reappear in
//! the final normalization. Over F_p elimination runs on raw residues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{FieldConfig, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldConfig,
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
}

/// Reduced row echelon basis of a row space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub ncols: usize,
    /// Nonzero rows; row `i` has a 1 in column `pivots[i]` and zeros in all
    /// other pivot columns.
    pub rows: Vec<Vec<Scalar>>,
    /// Strictly increasing pivot columns.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Subtracts the row space from `v`, leaving it supported on free columns.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc].is_zero() {
                continue;
            }
            let factor = v[pc].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&factor * r);
                }
            }
        }
    }

    /// Basis of `{ v : row . v = 0 for every row }`, one vector per free column.
    pub fn null_space(&self, field: FieldConfig) -> Vec<Vec<Scalar>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![field.zero(); self.ncols];
                v[f] = field.one();
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    v[pc] = -&row[f];
                }
                v
            })
            .collect()
    }
}

impl Matrix {
    pub fn new(field: FieldConfig, ncols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        Matrix { field, ncols, rows }
    }

    pub fn zeros(field: FieldConfig, nrows: usize, ncols: usize) -> Self {
        Matrix::new(field, ncols, vec![vec![field.zero(); ncols]; nrows])
    }

    pub fn identity(field: FieldConfig, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.rows[i][i] = field.one();
        }
        m
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.rows[i][j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Matrix::new(self.field, self.nrows(), rows)
    }

    pub fn rref(&self) -> Echelon {
        rref(self.field, self.ncols, &self.rows)
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Right kernel `{ v : M v = 0 }`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.rref().null_space(self.field)
    }

    /// Left kernel `{ w : w M = 0 }`.
    pub fn left_kernel(&self) -> Vec<Vec<Scalar>> {
        self.transpose().kernel()
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(
            self.nrows(),
            self.ncols,
            "determinant of a non-square matrix"
        );
        let n = self.ncols;
        let mut a = self.rows.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            let inv = a[c][c].inv();
            let (top, bottom) = a.split_at_mut(c + 1);
            let pivot = &top[c];
            for row in bottom {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] * &inv;
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &(&f * p);
                }
            }
        }
        det
    }

    /// `self * v` for a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

/// Reduced row echelon form of the span of `rows`.
pub fn rref(field: FieldConfig, ncols: usize, rows: &[Vec<Scalar>]) -> Echelon {
    match field {
        FieldConfig::Rational => rref_rational(ncols, rows),
        FieldConfig::Prime(p) => rref_prime(p, ncols, rows),
    }
}

fn rref_prime(p: u64, ncols: usize, rows: &[Vec<Scalar>]) -> Echelon {
    let residue = |s: &Scalar| match s {
        Scalar::Fp { v, .. } => *v,
        Scalar::Q(_) => panic!("rational entry in a prime-field matrix"),
    };
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(residue).collect())
        .filter(|r: &Vec<u64>| r.iter().any(|&v| v != 0))
        .collect();
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let inv = |x: u64| {
        let (mut b, mut e, mut acc) = (x, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        acc
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(i) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, i);
        let s = inv(a[r][c]);
        for v in a[r].iter_mut() {
            *v = mulm(*v, s);
        }
        let pivot_row = a[r].clone();
        for (k, row) in a.iter_mut().enumerate() {
            if k == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if y != 0 {
                    let t = mulm(f, y);
                    *x = if *x >= t { *x - t } else { *x + p - t };
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon {
        ncols,
        rows: a
            .into_iter()
            .map(|row| row.into_iter().map(|v| Scalar::Fp { v, p }).collect())
            .collect(),
        pivots,
    }
}

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let qs: Vec<&BigRational> = row
        .iter()
        .map(|s| {
            s.as_rational()
                .expect("prime-field entry in a rational matrix")
        })
        .collect();
    let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !content.is_zero() && !content.is_one() {
        for x in ints.iter_mut() {
            *x = &*x / &content;
        }
    }
    ints
}

fn rref_rational(ncols: usize, rows: &[Vec<Scalar>]) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| integer_row(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        // smallest nonzero entry keeps intermediate sizes down
        let Some(i) = (r..a.len())
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        a.swap(r, i);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pv = &pivot_row[c];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            if f.is_zero() {
                // Bareiss step with a zero multiplier still rescales by pv / prev
                for x in row.iter_mut().skip(c + 1) {
                    if !x.is_zero() {
                        *x = (&*x * pv) / &prev;
                    }
                }
                continue;
            }
            for (x, y) in row.iter_mut().zip(pivot_row.iter()).skip(c + 1) {
                *x = (&*x * pv - &f * y) / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pv.clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);

    // normalize and clear above each pivot
    let mut q: Vec<Vec<BigRational>> = a
        .into_iter()
        .zip(&pivots)
        .map(|(row, &pc)| {
            let pv = row[pc].clone();
            row.into_iter()
                .map(|x| BigRational::new(x, pv.clone()))
                .collect()
        })
        .collect();
    for k in (0..q.len()).rev() {
        let pc = pivots[k];
        let (above, rest) = q.split_at_mut(k);
        let pivot_row = &rest[0];
        for row in above.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()).skip(pc) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    Echelon {
        ncols,
        rows: q
            .into_iter()
            .map(|row| row.into_iter().map(Scalar::Q).collect())
            .collect(),
        pivots,
    }
}

/// Largest bit length of any numerator or denominator; used in reports.
pub fn max_height(rows: &[Vec<Scalar>]) -> u64 {
    rows.iter()
        .flatten()
        .filter_map(|s| s.as_rational())
        .map(|q| q.numer().abs().bits().max(q.denom().bits()))
        .max()
        .unwrap_or(0)
}
