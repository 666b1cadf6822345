//! Exact linear algebra over the rationals and prime fields.
//!
//! Everything here is exact: rationals are arbitrary precision, prime
//! field elements are residues in `[0, p)`. Matrices are dense and row
//! major; elimination skips zero entries, which is where almost all of the
//! time goes for the sparse systems produced by Hom computations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod(0, *p),
        }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod(n.rem_euclid(*p as i64) as u64, *p),
        }
    }

    /// `num / den`; fails when `den` vanishes in the field.
    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self {
            Field::Rationals => {
                if den.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone())))
            }
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = num.mod_floor(&pb).to_u64().unwrap();
                let d = den.mod_floor(&pb).to_u64().unwrap();
                if d == 0 {
                    return Err(Error::Parse(format!("denominator vanishes mod {p}")));
                }
                Ok(Scalar::Mod(mulmod(n, inv_mod(d, *p), *p), *p))
            }
        }
    }

    /// Every element when the field is small, otherwise `None`.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Prime(p) if *p <= 4096 => Some((0..*p).map(|v| Scalar::Mod(v, *p)).collect()),
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

/// A field element. The variant fixes the field; mixing variants is a bug.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64, u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod(v, p) => Scalar::Mod(inv_mod(*v, *p), *p),
        })
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod(_, p) => Field::Prime(*p),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod(..) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod((a + b) % p, *p),
            _ => panic!("mixed fields"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod((a + p - b) % p, *p),
            _ => panic!("mixed fields"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod(mulmod(*a, *b, *p), *p),
            _ => panic!("mixed fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a, p) => Scalar::Mod((p - a) % p, *p),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// `acc += c * x`, skipping the work when `c` or `x` vanishes.
#[inline]
pub fn axpy(acc: &mut Scalar, c: &Scalar, x: &Scalar) {
    if c.is_zero() || x.is_zero() {
        return;
    }
    *acc = &*acc + &(c * x);
}

pub type Vector = Vec<Scalar>;

pub fn zero_vec(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vec(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// A dense matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vector>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Matrix { rows: r, cols, field, data }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect();
        Self::from_rows(field, rows, cols)
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, field, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    axpy(&mut acc, a, b);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| c * a).collect();
        Matrix { data, ..*self }
    }

    pub fn pow(&self, e: usize) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Stack `blocks` as a block matrix given by a grid (all shapes must agree).
    pub fn block(field: Field, grid: &[Vec<Matrix>]) -> Matrix {
        let row_h: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let col_w: Vec<usize> = grid[0].iter().map(|m| m.cols).collect();
        let mut out = Matrix::zeros(field, row_h.iter().sum(), col_w.iter().sum());
        let mut r0 = 0;
        for (bi, brow) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in brow.iter().enumerate() {
                assert_eq!((b.rows, b.cols), (row_h[bi], col_w[bj]), "block shape mismatch");
                for r in 0..b.rows {
                    for c in 0..b.cols {
                        out.set(r0 + r, c0 + c, b.get(r, c).clone());
                    }
                }
                c0 += col_w[bj];
            }
            r0 += row_h[bi];
        }
        out
    }

    pub fn block_diag(field: Field, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Reduce in place, choosing pivots only among the first `pivot_cols` columns.
    fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        let cols = self.cols;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv().unwrap();
            if !inv.is_one() {
                for j in c..cols {
                    let idx = r * cols + j;
                    if !self.data[idx].is_zero() {
                        self.data[idx] = &self.data[idx] * &inv;
                    }
                }
            }
            let nz: Vec<usize> = (c..cols).filter(|&j| !self.get(r, j).is_zero()).collect();
            let pivot_row: Vec<Scalar> = nz.iter().map(|&j| self.get(r, j).clone()).collect();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (&j, pv) in nz.iter().zip(&pivot_row) {
                    let idx = i * cols + j;
                    self.data[idx] = &self.data[idx] - &(&f * pv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : self * x = 0}`; its size is `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let field = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = zero_vec(field, self.cols);
            v[free] = field.one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(k, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let sol = self.solve_many(&Matrix::from_columns(self.field, self.rows, &[b.to_vec()]))?;
        Ok(sol.map(|x| x.column(0)))
    }

    /// Some `X` with `self * X = rhs`, or `None` when any column is inconsistent.
    pub fn solve_many(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} rows, matrix has {}",
                rhs.rows, self.rows
            )));
        }
        let mut aug = Matrix::block(self.field, &[vec![self.clone(), rhs.clone()]]);
        let pivots = aug.rref_in_place(self.cols);
        let rank = pivots.len();
        for r in rank..aug.rows {
            if (self.cols..aug.cols).any(|c| !aug.get(r, c).is_zero()) {
                return Ok(None);
            }
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (k, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, aug.get(k, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let x = self.solve_many(&Matrix::identity(self.field, n)).ok()??;
        // A consistent square system with a singular matrix can still return; reject it.
        if self.rank() < n {
            return None;
        }
        Some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Linearly independent columns spanning the column space.
    pub fn column_space(&self) -> Vec<Vector> {
        let (r, pivots) = self.transpose().rref();
        (0..pivots.len()).map(|k| r.row(k).to_vec()).collect()
    }

    /// Characteristic polynomial `det(x I - self)`, coefficients in increasing degree.
    pub fn charpoly(&self) -> Vec<Scalar> {
        assert!(self.is_square());
        let n = self.rows;
        let f = self.field;
        // Hessenberg reduction, then the standard recurrence.
        let mut h = self.clone();
        for col in 0..n.saturating_sub(2) {
            let Some(p) = (col + 1..n).find(|&i| !h.get(i, col).is_zero()) else {
                continue;
            };
            if p != col + 1 {
                h.swap_rows(p, col + 1);
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + col + 1);
                }
            }
            let piv_inv = h.get(col + 1, col).inv().unwrap();
            for i in col + 2..n {
                let m = h.get(i, col) * &piv_inv;
                if m.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = h.get(i, j) - &(&m * h.get(col + 1, j));
                    h.set(i, j, v);
                }
                for j in 0..n {
                    let v = h.get(j, col + 1) + &(&m * h.get(j, i));
                    h.set(j, col + 1, v);
                }
            }
        }
        // p_k = charpoly of leading k x k block.
        let mut polys: Vec<Vec<Scalar>> = vec![vec![f.one()]];
        for k in 1..=n {
            let hk = h.get(k - 1, k - 1).clone();
            let prev = &polys[k - 1];
            let mut next = zero_vec(f, k + 1);
            for (d, c) in prev.iter().enumerate() {
                next[d + 1] = &next[d + 1] + c;
                next[d] = &next[d] - &(&hk * c);
            }
            let mut prod = f.one();
            for i in (1..k).rev() {
                prod = &prod * h.get(i, i - 1);
                if prod.is_zero() {
                    break;
                }
                let coef = &prod * h.get(i - 1, k - 1);
                for (d, c) in polys[i - 1].iter().enumerate() {
                    next[d] = &next[d] - &(&coef * c);
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Roots of a polynomial (increasing-degree coefficients) lying in the base field.
///
/// Over the rationals this runs the rational root test; candidates are only
/// enumerated when the extreme coefficients are small enough to factor.
pub fn field_roots(field: Field, poly: &[Scalar]) -> Vec<Scalar> {
    let mut coeffs: Vec<Scalar> = poly.to_vec();
    while coeffs.last().is_some_and(Scalar::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return vec![];
    }
    let eval = |x: &Scalar| {
        let mut acc = field.zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    };
    if let Some(all) = field.elements() {
        return all.into_iter().filter(|x| eval(x).is_zero()).collect();
    }
    let mut roots = Vec::new();
    let mut start = 0;
    while coeffs[start].is_zero() {
        start += 1;
    }
    if start > 0 {
        roots.push(field.zero());
    }
    if field != Field::Rationals {
        return roots;
    }
    let lcm = coeffs
        .iter()
        .filter_map(|c| c.as_rational().map(|r| r.denom().clone()))
        .fold(BigInt::one(), |a, b| a.lcm(&b));
    let ints: Vec<BigInt> =
        coeffs[start..].iter().map(|c| (c.as_rational().unwrap() * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let (Some(a0), Some(an)) = (a0.to_u64(), an.to_u64()) else {
        return roots;
    };
    if a0 > 1_000_000_000 || an > 1_000_000_000 {
        return roots;
    }
    let divisors = |n: u64| -> Vec<u64> {
        let mut d = Vec::new();
        let mut i = 1;
        while i * i <= n {
            if n % i == 0 {
                d.push(i);
                if i != n / i {
                    d.push(n / i);
                }
            }
            i += 1;
        }
        d
    };
    let mut seen = std::collections::HashSet::new();
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(sign) * BigInt::from(num), BigInt::from(den));
                if seen.insert(r.clone()) {
                    let x = Scalar::Rat(r);
                    if eval(&x).is_zero() {
                        roots.push(x);
                    }
                }
            }
        }
    }
    roots
}

/// Coordinates with respect to a fixed list of independent vectors.
#[derive(Clone, Debug)]
pub struct SubspaceCoords {
    basis: Matrix,
    rows: Vec<usize>,
    inv: Matrix,
}

impl SubspaceCoords {
    /// `vectors` must be linearly independent and all of length `ambient`.
    pub fn new(field: Field, ambient: usize, vectors: &[Vector]) -> Self {
        let basis = Matrix::from_columns(field, ambient, vectors);
        // Pivot rows of the basis pick a square invertible minor.
        let (_, rows) = basis.transpose().rref();
        assert_eq!(rows.len(), vectors.len(), "basis vectors are dependent");
        let k = vectors.len();
        let mut minor = Matrix::zeros(field, k, k);
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..k {
                minor.set(i, j, basis.get(r, j).clone());
            }
        }
        let inv = if k == 0 { minor } else { minor.inverse().expect("independent basis") };
        SubspaceCoords { basis, rows, inv }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates of `v`, or `None` if `v` is not in the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        let picked: Vector = self.rows.iter().map(|&r| v[r].clone()).collect();
        let x = self.inv.mul_vec(&picked);
        if self.basis.mul_vec(&x) == v {
            Some(x)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }
}

/// The quotient `k^n / W` with an explicit projection and section.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    /// `(n - dim W) x n`, kernel exactly `W`.
    pub projection: Matrix,
    /// `n x (n - dim W)`, a right inverse of `projection`.
    pub section: Matrix,
}

impl QuotientSpace {
    pub fn new(field: Field, ambient: usize, subspace: &[Vector]) -> Self {
        let w = if subspace.is_empty() {
            Matrix::zeros(field, 0, ambient)
        } else {
            Matrix::from_rows(field, subspace.to_vec(), ambient)
        };
        let (r, pivots) = w.rref();
        let mut is_pivot = vec![false; ambient];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..ambient).filter(|&c| !is_pivot[c]).collect();
        let mut projection = Matrix::zeros(field, free.len(), ambient);
        let mut section = Matrix::zeros(field, ambient, free.len());
        for (qi, &c) in free.iter().enumerate() {
            projection.set(qi, c, field.one());
            section.set(c, qi, field.one());
            for (k, &p) in pivots.iter().enumerate() {
                let v = -r.get(k, c);
                if !v.is_zero() {
                    projection.set(qi, p, v);
                }
            }
        }
        QuotientSpace { projection, section }
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }
}

/// Dimension of the span of the given vectors.
pub fn span_rank(field: Field, ambient: usize, vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(field, vectors.to_vec(), ambient).rank()
}

/// A basis of the span of the given vectors (a subset of them, in order).
pub fn independent_subset(field: Field, ambient: usize, vectors: &[Vector]) -> Vec<usize> {
    if vectors.is_empty() {
        return vec![];
    }
    let m = Matrix::from_columns(field, ambient, vectors);
    m.rref().1
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn rref_proportional_rows() {
        let m = Matrix::from_ints(Q, &[&[1, 2], &[2, 4]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0]);
        assert_eq!(r, Matrix::from_ints(Q, &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_identity_and_swap() {
        let id = Matrix::identity(Q, 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));
        let f2 = Field::Prime(2);
        let m = Matrix::from_ints(f2, &[&[0, 1], &[1, 0]]);
        assert_eq!(m.rref().0, Matrix::identity(f2, 2));
    }

    #[test]
    fn kernel_examples() {
        let m = Matrix::from_ints(Q, &[&[1, 2], &[2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![Q.int(-2), Q.int(1)]]);
        assert!(Matrix::from_ints(Q, &[&[1, 1], &[0, 1]]).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(Q, 2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(Q, 2);
        let b = vec![Q.int(3), Q.int(-1)];
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));
        let m = Matrix::from_ints(Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.solve(&[Q.int(1), Q.int(0)]).unwrap(), None);
        let x = m.solve(&[Q.int(1), Q.int(2)]).unwrap().unwrap();
        assert_eq!(&x[0] + &(&Q.int(2) * &x[1]), Q.int(1));
        assert!(matches!(m.solve(&[Q.int(1)]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        assert_eq!(&f.int(3) * &f.int(5), f.int(1));
        assert_eq!(f.int(3).inv().unwrap(), f.int(5));
        assert_eq!(-&f.int(2), f.int(5));
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn charpoly_and_roots() {
        let m = Matrix::from_ints(Q, &[&[2, 1, 0], &[0, 2, 0], &[0, 0, -3]]);
        let p = m.charpoly();
        // (x-2)^2 (x+3) = x^3 - x^2 - 8x + 12
        assert_eq!(p, vec![Q.int(12), Q.int(-8), Q.int(-1), Q.int(1)]);
        let mut roots: Vec<String> = field_roots(Q, &p).iter().map(|r| r.to_string()).collect();
        roots.sort();
        assert_eq!(roots, vec!["-3", "2"]);
        let rot = Matrix::from_ints(Q, &[&[0, -1], &[1, 0]]);
        assert!(field_roots(Q, &rot.charpoly()).is_empty());
    }

    #[test]
    fn quotient_projection_kills_subspace() {
        let w = vec![vec![Q.int(1), Q.int(1), Q.int(0)]];
        let qs = QuotientSpace::new(Q, 3, &w);
        assert_eq!(qs.dim(), 2);
        assert!(is_zero_vec(&qs.projection.mul_vec(&w[0])));
        assert_eq!(qs.projection.mul(&qs.section), Matrix::identity(Q, 2));
    }

    #[test]
    fn subspace_coords_round_trip() {
        let vs = vec![vec![Q.int(1), Q.int(0), Q.int(2)], vec![Q.int(0), Q.int(1), Q.int(1)]];
        let sc = SubspaceCoords::new(Q, 3, &vs);
        let v = vec![Q.int(2), Q.int(-1), Q.int(3)];
        assert_eq!(sc.coords(&v), Some(vec![Q.int(2), Q.int(-1)]));
        assert_eq!(sc.coords(&[Q.int(0), Q.int(0), Q.int(1)]), None);
    }
}
