//! Dense integer matrices with exact determinant, Smith invariants and
//! signature. Everything runs on `BigInt`; rational arithmetic is only used
//! internally where a pivoted elimination needs it.

#![allow(clippy::needless_range_loop)]

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{HopfError, Result};
use crate::laurent::LaurentPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(HopfError::Dimension(format!(
                "{} entries given for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors. Ragged input is a dimension error.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(HopfError::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&v| v.into()));
        }
        Self::new(rows.len(), cols, data)
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

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
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

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(HopfError::Dimension(format!(
                "cannot combine {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(HopfError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(HopfError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    /// `PᵀMP` where `P` is the permutation matrix sending basis vector `i`
    /// to `perm[i]`; entry `(i, j)` of the result is `M[perm[i], perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        debug_assert!(self.is_square() && perm.len() == self.rows);
        let n = perm.len();
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(perm[i], perm[j])].clone();
            }
        }
        out
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(HopfError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Exact determinant by Bareiss fraction-free elimination with row pivoting.
/// The empty matrix has determinant 1.
pub fn det_exact(m: &IntMatrix) -> Result<BigInt> {
    m.require_square()?;
    let n = m.rows;
    let mut a = m.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(BigInt::zero());
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    })
}

/// Invariant factors `d₁ | d₂ | …` of `m`, nonzero factors first then zeros.
/// The list has `min(rows, cols)` entries.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows, m.cols);
    let mut diag = Vec::with_capacity(rows.min(cols));
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let Some((pi, pj)) = smallest_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let v = &q * &a[i][t];
                        a[i][j] -= v;
                    }
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            let (pi, pj) = smallest_entry_cross(&a, t);
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        diag.push(a[t][t].abs());
    }
    diag.resize(rows.min(cols), BigInt::zero());
    diag
}

fn smallest_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

// smallest nonzero entry in row t or column t of the block
fn smallest_entry_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let cells = (t..a.len())
        .map(|i| (i, t))
        .chain((t..a[t].len()).map(|j| (t, j)));
    for (i, j) in cells {
        let v = &a[i][j];
        if !v.is_zero() && (a[best.0][best.1].is_zero() || v.abs() < a[best.0][best.1].abs()) {
            best = (i, j);
        }
    }
    best
}

/// Counts of positive, negative and zero entries after congruence
/// diagonalization of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub nullity: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

pub fn inertia(s: &IntMatrix) -> Result<Inertia> {
    s.require_square()?;
    if !s.is_symmetric() {
        return Err(HopfError::NotSymmetric);
    }
    let n = s.rows;
    let mut a: Vec<Vec<BigRational>> = s
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        nullity: 0,
    };
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                swap_sym(&mut a, k, p);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                // a[i][i] = a[j][j] = 0, so adding row/col j to i makes a[i][i] = 2a[i][j]
                add_sym(&mut a, i, j);
                swap_sym(&mut a, k, i);
            } else {
                out.nullity += n - k;
                break;
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
            for j in k..n {
                let v = &f * &a[j][k];
                a[j][i] -= v;
            }
        }
    }
    Ok(out)
}

fn swap_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

fn add_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    let n = a.len();
    for c in 0..n {
        let v = a[j][c].clone();
        a[i][c] += v;
    }
    for r in 0..n {
        let v = a[r][j].clone();
        a[r][i] += v;
    }
}

/// Signature of a symmetric integer matrix, computed by exact rational
/// congruence diagonalization.
pub fn signature_symmetric(s: &IntMatrix) -> Result<i64> {
    inertia(s).map(|i| i.signature())
}

/// Determinant of `a + t·b` as a polynomial in `t`, by exact evaluation at
/// `n + 1` integer points and Newton interpolation.
fn det_pencil(a: &IntMatrix, b: &IntMatrix) -> Result<LaurentPolynomial> {
    a.require_square()?;
    let n = a.rows;
    let points: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let mut values = Vec::with_capacity(n + 1);
    for t in &points {
        values.push(BigRational::from_integer(det_exact(&a.add(&b.scale(t))?)?));
    }
    // divided differences
    let xs: Vec<BigRational> = points
        .iter()
        .cloned()
        .map(BigRational::from_integer)
        .collect();
    let mut coef = values;
    for level in 1..=n {
        for i in (level..=n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // expand the Newton form into monomials
    let mut poly: Vec<BigRational> = vec![BigRational::zero(); n + 1];
    for i in (0..=n).rev() {
        // poly = poly * (t - x_i) + coef[i]
        let mut next = vec![BigRational::zero(); n + 1];
        for (d, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if d < n {
                next[d + 1] += c;
            }
            next[d] -= c * &xs[i];
        }
        next[0] += &coef[i];
        poly = next;
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    for c in poly {
        debug_assert!(c.is_integer(), "integer determinant interpolated to {c}");
        coeffs.push(c.to_integer());
    }
    Ok(LaurentPolynomial::from_coeffs(0, coeffs))
}

/// `det(V − tVᵀ)`, normalized up to units `±tᵏ`.
pub fn alexander_from_seifert(v: &IntMatrix) -> Result<LaurentPolynomial> {
    let vt = v.transpose();
    Ok(det_pencil(v, &vt.scale(&BigInt::from(-1)))?.normalized())
}

/// Characteristic polynomial `det(tI − m)`, not normalized.
pub fn char_poly(m: &IntMatrix) -> Result<LaurentPolynomial> {
    m.require_square()?;
    det_pencil(&m.scale(&BigInt::from(-1)), &IntMatrix::identity(m.rows))
}

/// Solves `A·X = B` over the rationals and returns `X` if it is integral.
fn solve_integral(a: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>> {
    let n = a.rows;
    let m = b.cols;
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            a.row(i)
                .iter()
                .chain(b.row(i))
                .cloned()
                .map(BigRational::from_integer)
                .collect()
        })
        .collect();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !aug[i][k].is_zero()) else {
            return Err(HopfError::Singular);
        };
        aug.swap(k, p);
        let pivot = aug[k][k].clone();
        for v in aug[k].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..n {
            if i == k || aug[i][k].is_zero() {
                continue;
            }
            let f = aug[i][k].clone();
            for j in k..n + m {
                let v = &f * &aug[k][j];
                aug[i][j] -= v;
            }
        }
    }
    let mut out = IntMatrix::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            let v = &aug[i][n + j];
            if !v.is_integer() {
                return Ok(None);
            }
            out[(i, j)] = v.to_integer();
        }
    }
    Ok(Some(out))
}

/// Homological monodromy `h = V⁻¹·Vᵀ` of a fibered Seifert matrix.
pub fn homological_monodromy(v: &IntMatrix) -> Result<IntMatrix> {
    v.require_square()?;
    let det = det_exact(v)?;
    if det.abs() != BigInt::one() {
        return Err(HopfError::NotFibered { det });
    }
    let h = solve_integral(v, &v.transpose())?;
    Ok(h.expect("unimodular system has an integral solution"))
}
