//! Dense integer and rational matrices with the normal forms the lattice code
//! is built on: Hermite normal form, Smith normal form with transforms,
//! integer kernels and saturation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Rectangular matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "IntMatrix::from_vec: wrong data length");
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_vec(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from `i64` rows. Panics on ragged input; use
    /// [`IntMatrix::try_from_rows`] for untrusted data.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "IntMatrix::from_rows: ragged rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Self::from_vec(rows.len(), cols, data)
    }

    pub fn try_from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let n = rows.len();
        Ok(Self::from_vec(n, cols, rows.into_iter().flatten().collect()))
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "IntMatrix::from_columns: wrong column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_vec(self.rows, self.cols, self.data.iter().map(|x| x * k).collect())
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "IntMatrix::mul_vec: dimension mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square(), "IntMatrix::pow on a non-square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    /// Block-diagonal matrix with the given blocks in order.
    pub fn block_diag(blocks: &[&IntMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Horizontal concatenation; all parts must have the same row count.
    pub fn hstack(parts: &[&IntMatrix]) -> Self {
        let rows = parts.first().map_or(0, |p| p.rows);
        let mut columns = Vec::new();
        for p in parts {
            assert_eq!(p.rows, rows, "IntMatrix::hstack: row count mismatch");
            columns.extend((0..p.cols).map(|c| p.column(c)));
        }
        Self::from_columns(rows, &columns)
    }

    pub fn select_columns(&self, cols: impl IntoIterator<Item = usize>) -> Self {
        let columns: Vec<_> = cols.into_iter().map(|c| self.column(c)).collect();
        Self::from_columns(self.rows, &columns)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Self::from_vec(rows.len(), cols.len(), data)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "IntMatrix::det on a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Row-style Hermite normal form: the nonzero rows of an echelon basis of
    /// the row lattice, pivots positive, entries above each pivot reduced into
    /// `[0, pivot)`.
    pub fn row_hnf(&self) -> Self {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.to_rows();
        let mut r = 0;
        for j in 0..cols {
            if r == rows {
                break;
            }
            let mut found = false;
            loop {
                let piv = (r..rows)
                    .filter(|&i| !a[i][j].is_zero())
                    .min_by(|&x, &y| a[x][j].abs().cmp(&a[y][j].abs()).then(x.cmp(&y)));
                let Some(piv) = piv else { break };
                found = true;
                a.swap(r, piv);
                let mut clean = true;
                for i in r + 1..rows {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    let q = a[i][j].div_floor(&a[r][j]);
                    let pivot_row = a[r].clone();
                    row_sub_scaled(&mut a[i], &pivot_row, &q);
                    if !a[i][j].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if !found {
                continue;
            }
            if a[r][j].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
            }
            let pivot_row = a[r].clone();
            for i in 0..r {
                let q = a[i][j].div_floor(&pivot_row[j]);
                if !q.is_zero() {
                    row_sub_scaled(&mut a[i], &pivot_row, &q);
                }
            }
            r += 1;
        }
        a.truncate(r);
        Self::from_vec(r, cols, a.into_iter().flatten().collect())
    }

    /// Column-style Hermite normal form: columns form a reduced basis of the
    /// column lattice.
    pub fn column_hnf(&self) -> Self {
        let t = self.transpose().row_hnf().transpose();
        if t.cols == 0 {
            Self::zeros(self.rows, 0)
        } else {
            t
        }
    }

    pub fn rank(&self) -> usize {
        self.row_hnf().rows
    }

    /// Smith normal form with transforms.
    pub fn smith(&self) -> Smith {
        smith_normal_form(self)
    }

    /// Basis (as columns, Hermite-reduced) of the integer kernel
    /// `{x in Z^cols : M x = 0}`. The kernel is always saturated.
    pub fn integer_kernel(&self) -> Self {
        let snf = self.smith();
        let r = snf.rank();
        let basis = snf.v.select_columns(r..self.cols);
        basis.column_hnf()
    }

    /// Saturation of the column span: `span_Q(columns) ∩ Z^rows`, as a
    /// Hermite-reduced column basis.
    pub fn saturation(&self) -> Self {
        let orth = self.transpose().integer_kernel();
        orth.transpose().integer_kernel()
    }

    pub fn to_rational(&self) -> QMatrix {
        QMatrix::from_vec(
            self.rows,
            self.cols,
            self.data.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        )
    }
}

fn row_sub_scaled(row: &mut [BigInt], pivot: &[BigInt], q: &BigInt) {
    for (x, p) in row.iter_mut().zip(pivot) {
        *x -= q * p;
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "IntMatrix product: dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "IntMatrix sum: shape mismatch");
        IntMatrix::from_vec(
            self.rows,
            self.cols,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "IntMatrix difference: shape mismatch");
        IntMatrix::from_vec(
            self.rows,
            self.cols,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        )
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix::from_vec(self.rows, self.cols, self.data.iter().map(|x| -x).collect())
    }
}

/// Result of a Smith normal form computation: `u * m * v == d`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Diagonal entries `d_0 | d_1 | ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    /// Invariant factors different from 1 (the nonzero ones only).
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero() && !x.is_one()).collect()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivoting takes the nonzero entry of smallest absolute value in the active
/// submatrix, ties broken by lowest row, then lowest column.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.to_rows();
    let mut u = IntMatrix::identity(rows).to_rows();
    let mut v = IntMatrix::identity(cols).to_rows();

    let pick = |a: &Vec<Vec<BigInt>>, t: usize| -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => a[i][j].abs() < a[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    };

    let swap_cols = |mat: &mut Vec<Vec<BigInt>>, x: usize, y: usize| {
        for row in mat.iter_mut() {
            row.swap(x, y);
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = pick(&a, t) else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (pa, pu) = (a[t].clone(), u[t].clone());
                row_sub_scaled(&mut a[i], &pa, &q);
                row_sub_scaled(&mut u[i], &pu, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                for row in v.iter_mut() {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let (pi, pj) = pick(&a, t).expect("nonzero entry survives reduction");
                a.swap(t, pi);
                u.swap(t, pi);
                swap_cols(&mut a, t, pj);
                swap_cols(&mut v, t, pj);
                continue;
            }
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match offender {
                Some((i, _)) => {
                    let (ra, ru) = (a[i].clone(), u[i].clone());
                    for (x, y) in a[t].iter_mut().zip(&ra) {
                        *x += y;
                    }
                    for (x, y) in u[t].iter_mut().zip(&ru) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }

    let flat = |rows_: usize, cols_: usize, m: Vec<Vec<BigInt>>| {
        IntMatrix::from_vec(rows_, cols_, m.into_iter().flatten().collect())
    };
    Smith {
        u: flat(rows, rows, u),
        d: flat(rows, cols, a),
        v: flat(cols, cols, v),
    }
}

/// Dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigRational>) -> Self {
        assert_eq!(data.len(), rows * cols, "QMatrix::from_vec: wrong data length");
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_vec(rows, cols, vec![BigRational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigRational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "QMatrix::from_columns: wrong column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn column(&self, c: usize) -> Vec<BigRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_vec(self.rows, self.cols, self.data.iter().map(|x| x * k).collect())
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols, "QMatrix::mul_vec: dimension mismatch");
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(BigRational::zero(), |acc, c| acc + self.get(r, c) * &v[c])
            })
            .collect()
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "QMatrix::inverse on a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> =
            (0..n).map(|r| self.data[r * n..(r + 1) * n].to_vec()).collect();
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|r| (0..n).map(|c| if r == c { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x /= &p;
            }
            for x in inv[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                let (pa, pi) = (a[col].clone(), inv[col].clone());
                for (x, y) in a[r].iter_mut().zip(&pa) {
                    *x -= &f * y;
                }
                for (x, y) in inv[r].iter_mut().zip(&pi) {
                    *x -= &f * y;
                }
            }
        }
        Some(Self::from_vec(n, n, inv.into_iter().flatten().collect()))
    }

    /// Solves `self · x = rhs` for square nonsingular `self`. Rows are
    /// cleared of denominators and reduced fraction-free (Bareiss), which
    /// keeps intermediate entries the size of minors.
    pub fn solve(&self, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(self.rows, self.cols, "QMatrix::solve on a non-square matrix");
        assert_eq!(rhs.len(), self.rows, "QMatrix::solve: right-hand side length");
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|r| {
                let row: Vec<&BigRational> = self.data[r * n..(r + 1) * n].iter().chain([&rhs[r]]).collect();
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| (*x * BigRational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        for k in 0..n {
            let piv = (k..n).find(|&r| !a[r][k].is_zero())?;
            a.swap(k, piv);
            let (top, rest) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in rest.iter_mut() {
                let f = row[k].clone();
                for j in k + 1..=n {
                    row[j] = (&pivot_row[k] * &row[j] - &f * &pivot_row[j]) / &prev;
                }
                row[k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let mut x = vec![BigRational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = BigRational::from_integer(a[i][n].clone());
            for j in i + 1..n {
                acc -= BigRational::from_integer(a[i][j].clone()) * &x[j];
            }
            x[i] = acc / BigRational::from_integer(a[i][i].clone());
        }
        Some(x)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(BigRational::is_integer)
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        self.is_integral().then(|| {
            IntMatrix::from_vec(self.rows, self.cols, self.data.iter().map(|x| x.to_integer()).collect())
        })
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;

    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "QMatrix product: dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

/// Lattice generated by rational column vectors: returns a basis (as the
/// columns of a rational matrix) in column Hermite form.
pub fn span_rational_columns(rows: usize, generators: &[Vec<BigRational>]) -> QMatrix {
    let den = generators
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<Vec<BigInt>> = generators
        .iter()
        .map(|g| g.iter().map(|x| (x * &den).to_integer()).collect())
        .collect();
    let hnf = IntMatrix::from_columns(rows, &scaled).column_hnf();
    let inv_den = BigRational::new(BigInt::one(), den);
    hnf.to_rational().scale(&inv_den)
}
