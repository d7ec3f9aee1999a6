use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_rational::BigRational;
use serde_json::Value;

use super::field::{Arith, Field, FieldKind, ModP, Rat, Repr, Scalar};
use crate::error::{Error, Result};

/// Row-major storage, one representation per field kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Entries {
    Residue(Vec<u64>),
    Rational(Vec<BigRational>),
}

/// Run `$body` with `$a` bound to the field arithmetic and `$v` to the raw entries.
macro_rules! with_entries {
    ($m:expr, |$a:ident, $v:ident| $body:expr) => {
        match (&$m.entries, $m.field.kind()) {
            (Entries::Residue($v), FieldKind::Prime(p)) => {
                let $a = ModP { p };
                #[allow(clippy::clone_on_copy)]
                $body
            }
            (Entries::Rational($v), FieldKind::Rationals) => {
                let $a = Rat;
                $body
            }
            _ => unreachable!("entries do not match field"),
        }
    };
}

pub(crate) trait Wrap: Arith {
    fn wrap(&self, v: Vec<Self::E>) -> Entries;
    fn unwrap<'a>(&self, e: &'a Entries) -> &'a [Self::E];
}

impl Wrap for ModP {
    fn wrap(&self, v: Vec<u64>) -> Entries {
        Entries::Residue(v)
    }
    fn unwrap<'a>(&self, e: &'a Entries) -> &'a [u64] {
        match e {
            Entries::Residue(v) => v,
            _ => unreachable!("entries do not match field"),
        }
    }
}

impl Wrap for Rat {
    fn wrap(&self, v: Vec<BigRational>) -> Entries {
        Entries::Rational(v)
    }
    fn unwrap<'a>(&self, e: &'a Entries) -> &'a [BigRational] {
        match e {
            Entries::Rational(v) => v,
            _ => unreachable!("entries do not match field"),
        }
    }
}

/// A dense matrix over a single exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub(crate) field: Field,
    pub(crate) rows: usize,
    pub(crate) cols: usize,
    pub(crate) entries: Entries,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        let entries = match field.kind() {
            FieldKind::Prime(_) => Entries::Residue(vec![0; rows * cols]),
            FieldKind::Rationals => Entries::Rational(vec![Rat.zero(); rows * cols]),
        };
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, &field.one());
        }
        m
    }

    /// The elementary matrix `E_{i,j}` with 1-indexed `(i, j)`.
    pub fn elementary(field: Field, n: usize, i: usize, j: usize) -> Matrix {
        assert!(i >= 1 && j >= 1 && i <= n && j <= n, "E_{{{i},{j}}} outside {n}x{n}");
        let mut m = Matrix::zeros(field, n, n);
        m.set(i - 1, j - 1, &field.one());
        m
    }

    /// Build from integer rows; all rows must have `cols` entries.
    pub fn from_i64_rows(field: Field, cols: usize, rows: &[Vec<i64>]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::usage(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, &field.from_i64(v));
            }
        }
        Ok(m)
    }

    pub fn from_scalars(field: Field, rows: usize, cols: usize, values: &[Scalar]) -> Result<Matrix> {
        if values.len() != rows * cols {
            return Err(Error::usage(format!(
                "{} entries for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        let mut m = Matrix::zeros(field, rows, cols);
        for (k, v) in values.iter().enumerate() {
            if v.field() != field {
                return Err(Error::usage("entry over a different field"));
            }
            m.set(k / cols, k % cols, v);
        }
        Ok(m)
    }

    pub(crate) fn from_raw<A: Wrap>(a: &A, field: Field, rows: usize, cols: usize, v: Vec<A::E>) -> Matrix {
        debug_assert_eq!(v.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            entries: a.wrap(v),
        }
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at 0-indexed `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols);
        let k = r * self.cols + c;
        match (&self.entries, self.field.kind()) {
            (Entries::Residue(v), FieldKind::Prime(p)) => Scalar(Repr::Residue { value: v[k], p }),
            (Entries::Rational(v), _) => Scalar(Repr::Rational(v[k].clone())),
            _ => unreachable!(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, s: &Scalar) {
        assert!(r < self.rows && c < self.cols);
        let k = r * self.cols + c;
        match (&mut self.entries, &s.0) {
            (Entries::Residue(v), Repr::Residue { value, .. }) => v[k] = *value,
            (Entries::Rational(v), Repr::Rational(q)) => v[k] = q.clone(),
            _ => panic!("entry over a different field"),
        }
    }

    pub fn is_zero(&self) -> bool {
        with_entries!(self, |a, v| v.iter().all(|e| a.is_zero(e)))
    }

    /// Nonzero entries only strictly above the diagonal.
    pub fn is_strictly_upper(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..=r).all(|c| self.entry_is_zero(r, c)))
    }

    pub fn is_upper(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..r).all(|c| self.entry_is_zero(r, c)))
    }

    pub(crate) fn entry_is_zero(&self, r: usize, c: usize) -> bool {
        let k = r * self.cols + c;
        with_entries!(self, |a, v| a.is_zero(&v[k]))
    }

    pub fn transpose(&self) -> Matrix {
        with_entries!(self, |a, v| {
            let mut out = Vec::with_capacity(v.len());
            for c in 0..self.cols {
                for r in 0..self.rows {
                    out.push(v[r * self.cols + c].clone());
                }
            }
            Matrix::from_raw(&a, self.field, self.cols, self.rows, out)
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        assert_eq!(s.field(), self.field, "scalar over a different field");
        let mut out = Matrix::zeros(self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, &self.get(r, c).mul(s));
            }
        }
        out
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.one().neg())
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::usage("matrix product across different fields"));
        }
        if self.cols != rhs.rows {
            return Err(Error::usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(with_entries!(self, |a, x| {
            let y = a.unwrap(&rhs.entries);
            let (n, m, k) = (self.rows, rhs.cols, self.cols);
            let mut out = vec![a.zero(); n * m];
            for i in 0..n {
                for t in 0..k {
                    let lhs = &x[i * k + t];
                    if a.is_zero(lhs) {
                        continue;
                    }
                    for j in 0..m {
                        let prod = a.mul(lhs, &y[t * m + j]);
                        out[i * m + j] = a.add(&out[i * m + j], &prod);
                    }
                }
            }
            Matrix::from_raw(&a, self.field, n, m, out)
        }))
    }

    fn zip_with(&self, rhs: &Matrix, op: &str, sub: bool) -> Result<Matrix> {
        if self.field != rhs.field || self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::usage(format!("mismatched operands for {op}")));
        }
        Ok(with_entries!(self, |a, x| {
            let y = a.unwrap(&rhs.entries);
            let out = x
                .iter()
                .zip(y)
                .map(|(p, q)| if sub { a.sub(p, q) } else { a.add(p, q) })
                .collect();
            Matrix::from_raw(&a, self.field, self.rows, self.cols, out)
        }))
    }

    pub fn checked_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, "addition", false)
    }

    pub fn checked_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, "subtraction", true)
    }

    /// Rows stacked on top of `other`'s rows.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field || self.cols != other.cols {
            return Err(Error::usage("vstack of incompatible matrices"));
        }
        Ok(with_entries!(self, |a, x| {
            let mut out = x.to_vec();
            out.extend_from_slice(a.unwrap(&other.entries));
            Matrix::from_raw(&a, self.field, self.rows + other.rows, self.cols, out)
        }))
    }

    /// Half-open block `[r0, r1) x [c0, c1)`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        with_entries!(self, |a, x| {
            let mut out = Vec::with_capacity((r1 - r0) * (c1 - c0));
            for r in r0..r1 {
                out.extend_from_slice(&x[r * self.cols + c0..r * self.cols + c1]);
            }
            Matrix::from_raw(&a, self.field, r1 - r0, c1 - c0, out)
        })
    }

    pub fn rank(&self) -> usize {
        with_entries!(self, |a, x| {
            let mut work = x.to_vec();
            rref_in_place(&a, self.rows, self.cols, &mut work).len()
        })
    }

    /// Reduced row echelon form with zero rows dropped, and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        with_entries!(self, |a, x| {
            let mut work = x.to_vec();
            let pivots = rref_in_place(&a, self.rows, self.cols, &mut work);
            work.truncate(pivots.len() * self.cols);
            (
                Matrix::from_raw(&a, self.field, pivots.len(), self.cols, work),
                pivots,
            )
        })
    }

    /// Basis (as rows) of `{ v : self * v = 0 }`, in reduced echelon form.
    pub fn null_space_rows(&self) -> Matrix {
        with_entries!(self, |a, x| {
            let mut work = x.to_vec();
            let n = self.cols;
            let pivots = rref_in_place(&a, self.rows, n, &mut work);
            let mut is_pivot = vec![false; n];
            for &p in &pivots {
                is_pivot[p] = true;
            }
            let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
            let mut out = vec![a.zero(); free.len() * n];
            for (k, &f) in free.iter().enumerate() {
                out[k * n + f] = a.one();
                for (r, &p) in pivots.iter().enumerate() {
                    out[k * n + p] = a.neg(&work[r * n + f]);
                }
            }
            let mut basis = out;
            let piv = rref_in_place(&a, free.len(), n, &mut basis);
            basis.truncate(piv.len() * n);
            Matrix::from_raw(&a, self.field, piv.len(), n, basis)
        })
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::usage("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let inv = with_entries!(self, |a, x| {
            let w = 2 * n;
            let mut work = vec![a.zero(); n * w];
            for r in 0..n {
                for c in 0..n {
                    work[r * w + c] = x[r * n + c].clone();
                }
                work[r * w + n + r] = a.one();
            }
            let pivots = rref_in_place(&a, n, w, &mut work);
            if pivots.len() < n || pivots[n - 1] != n - 1 {
                None
            } else {
                let mut out = Vec::with_capacity(n * n);
                for r in 0..n {
                    out.extend_from_slice(&work[r * w + n..r * w + w]);
                }
                Some(Matrix::from_raw(&a, self.field, n, n, out))
            }
        });
        inv.ok_or_else(|| Error::usage("matrix is singular"))
    }

    /// Rows as JSON arrays.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|r| Value::Array((0..self.cols).map(|c| self.get(r, c).to_json()).collect()))
                .collect(),
        )
    }

    /// Parse `[[..], ..]`. An empty array needs `cols` from the caller.
    pub fn from_json(v: &Value, field: Field, cols: Option<usize>) -> Result<Matrix> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::usage("matrix must be an array of rows"))?;
        let width = match (rows.first(), cols) {
            (Some(r), _) => r
                .as_array()
                .ok_or_else(|| Error::usage("matrix row must be an array"))?
                .len(),
            (None, Some(c)) => c,
            (None, None) => 0,
        };
        if let Some(c) = cols {
            if c != width {
                return Err(Error::usage(format!("expected {c} columns, found {width}")));
            }
        }
        let mut m = Matrix::zeros(field, rows.len(), width);
        for (r, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::usage("matrix row must be an array"))?;
            if row.len() != width {
                return Err(Error::usage(format!("row {r} has the wrong length")));
            }
            for (c, e) in row.iter().enumerate() {
                m.set(r, c, &field.parse_json(e)?);
            }
        }
        Ok(m)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix sum")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix difference")
    }
}

/// Gauss-Jordan elimination in place. Nonzero rows end up on top with unit
/// pivots; returns the pivot column of each of them.
pub(crate) fn rref_in_place<A: Arith>(a: &A, rows: usize, cols: usize, m: &mut [A::E]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        if top == rows {
            break;
        }
        let Some(src) = (top..rows).find(|&r| !a.is_zero(&m[r * cols + c])) else {
            continue;
        };
        if src != top {
            for k in 0..cols {
                m.swap(src * cols + k, top * cols + k);
            }
        }
        let lead = m[top * cols + c].clone();
        if !a.is_one(&lead) {
            let inv = a.inv(&lead);
            for k in c..cols {
                m[top * cols + k] = a.mul(&m[top * cols + k], &inv);
            }
        }
        for r in 0..rows {
            if r == top {
                continue;
            }
            let factor = m[r * cols + c].clone();
            if a.is_zero(&factor) {
                continue;
            }
            for k in c..cols {
                let delta = a.mul(&factor, &m[top * cols + k]);
                m[r * cols + k] = a.sub(&m[r * cols + k], &delta);
            }
        }
        pivots.push(c);
        top += 1;
    }
    pivots
}
