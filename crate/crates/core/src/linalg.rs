//! Dense matrices over `Q` and `Q(i)`, just enough for the flat models.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// `"p/q"`, with `"/1"` kept so every entry has the same shape.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Row-major dense rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Option<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Option<Self> {
        let n = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != n) {
            return None;
        }
        let mut m = Self::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Some(m)
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

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        self.data
            .chunks(self.cols.max(1))
            .map(<[_]>::to_vec)
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Rational::zero(), |acc, j| acc + &self[(i, j)] * &v[j]))
            .collect()
    }

    /// `u^T M v`.
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mv = self.apply(v);
        u.iter()
            .zip(&mv)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == -self[(j, i)].clone()))
    }

    pub fn is_symmetric(&self) -> bool {
        self == &self.transpose()
    }

    /// Rank by fraction-exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.row_vecs();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, pivot);
            let inv = a[rank][col].recip();
            for r in rank + 1..self.rows {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                for c in col..self.cols {
                    let sub = &f * &a[rank][c];
                    a[r][c] -= sub;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap(col, pivot);
                det = -det;
            }
            det *= &a[col][col];
            let inv = a[col][col].recip();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut inv = Self::identity(n).row_vecs();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].recip();
            for c in 0..n {
                a[col][c] *= &p;
                inv[col][c] *= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let s1 = &f * &a[col][c];
                    a[r][c] -= s1;
                    let s2 = &f * &inv[col][c];
                    inv[r][c] -= s2;
                }
            }
        }
        Self::from_rows(inv)
    }

    /// Whether `v` lies in the column span.
    pub fn spans(&self, v: &[Rational]) -> bool {
        let mut cols: Vec<Vec<Rational>> = (0..self.cols).map(|j| self.column(j)).collect();
        cols.push(v.to_vec());
        let Some(aug) = Self::from_columns(&cols) else {
            return false;
        };
        aug.rank() == self.rank()
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&QMatrix> for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }
}

impl Add<&QMatrix> for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&QMatrix> for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        self + &(-rhs.clone())
    }
}

impl Add for QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: QMatrix) -> QMatrix {
        &self + &rhs
    }
}

impl Neg for QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().map(|v| -v).collect(),
        }
    }
}

/// Gaussian rational `re + i im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QComplex {
    pub re: Rational,
    pub im: Rational,
}

impl QComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &norm, -(&self.im / &norm)))
    }
}

impl fmt::Display for QComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl Add<&QComplex> for &QComplex {
    type Output = QComplex;
    fn add(self, rhs: &QComplex) -> QComplex {
        QComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&QComplex> for &QComplex {
    type Output = QComplex;
    fn sub(self, rhs: &QComplex) -> QComplex {
        QComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&QComplex> for &QComplex {
    type Output = QComplex;
    fn mul(self, rhs: &QComplex) -> QComplex {
        QComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &QComplex {
    type Output = QComplex;
    fn neg(self) -> QComplex {
        QComplex::new(-self.re.clone(), -self.im.clone())
    }
}

/// Pfaffian of an antisymmetric matrix over `Q(i)` by congruence elimination.
///
/// Each step moves a nonzero entry to `(k, k+1)`, clears the rest of rows and
/// columns `k`, `k+1` with unimodular congruences, and peels off the block.
pub fn pfaffian(a: &[Vec<QComplex>]) -> QComplex {
    let n = a.len();
    if n % 2 == 1 {
        return QComplex::default();
    }
    let mut a: Vec<Vec<QComplex>> = a.to_vec();
    let mut result = QComplex::real(Rational::one());
    let mut k = 0;
    while k < n {
        let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) else {
            return QComplex::default();
        };
        if j != k + 1 {
            swap_congruent(&mut a, k + 1, j);
            result = -&result;
        }
        let pivot = a[k][k + 1].clone();
        let pinv = pivot.recip().expect("pivot is nonzero");
        result = &result * &pivot;
        for t in k + 2..n {
            // e_t -= (a[k][t] / a[k][k+1]) e_{k+1}
            let f = &a[k][t] * &pinv;
            if !f.is_zero() {
                add_congruent(&mut a, t, k + 1, &-&f);
            }
            // e_t -= (a[k+1][t] / a[k+1][k]) e_k; a[k+1][k] = -pivot
            let f2 = -&(&a[k + 1][t] * &pinv);
            if !f2.is_zero() {
                add_congruent(&mut a, t, k, &-&f2);
            }
        }
        k += 2;
    }
    result
}

fn swap_congruent(a: &mut [Vec<QComplex>], i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// `e_t += f e_s` applied as a congruence.
fn add_congruent(a: &mut [Vec<QComplex>], t: usize, s: usize, f: &QComplex) {
    let n = a.len();
    for r in 0..n {
        let v = f * &a[r][s];
        a[r][t] = &a[r][t] + &v;
    }
    for c in 0..n {
        let v = f * &a[s][c];
        a[t][c] = &a[t][c] + &v;
    }
}
