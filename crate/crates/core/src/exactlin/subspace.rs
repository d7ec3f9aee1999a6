use serde_json::{json, Value};

use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A linear subspace of `F^n`, stored as the unique reduced row echelon
/// basis of its row span. Two subspaces are equal iff their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Row span of `raw`, in canonical form.
    pub fn canonicalize(raw: &Matrix) -> Subspace {
        let (basis, pivots) = raw.rref();
        Subspace { basis, pivots }
    }

    pub fn zero(field: Field, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, n: usize) -> Subspace {
        Subspace::standard(field, n, n)
    }

    /// `E(i) = span{e_1, ..., e_i}`.
    pub fn standard(field: Field, n: usize, i: usize) -> Subspace {
        assert!(i <= n, "E({i}) outside dimension {n}");
        let mut basis = Matrix::zeros(field, i, n);
        for r in 0..i {
            basis.set(r, r, &field.one());
        }
        Subspace {
            basis,
            pivots: (0..i).collect(),
        }
    }

    /// Span of the 1-indexed coordinate vectors `e_k`.
    pub fn coordinate(field: Field, n: usize, indices: &[usize]) -> Result<Subspace> {
        let mut raw = Matrix::zeros(field, indices.len(), n);
        for (r, &k) in indices.iter().enumerate() {
            if k == 0 || k > n {
                return Err(Error::usage(format!("coordinate index {k} outside 1..{n}")));
            }
            raw.set(r, k - 1, &field.one());
        }
        Ok(Subspace::canonicalize(&raw))
    }

    /// Image of `x`, i.e. its column span.
    pub fn image(x: &Matrix) -> Subspace {
        Subspace::canonicalize(&x.transpose())
    }

    /// `{ v : x v = 0 }`.
    pub fn kernel(x: &Matrix) -> Subspace {
        Subspace::from_canonical(x.null_space_rows())
    }

    pub(crate) fn from_canonical(basis: Matrix) -> Subspace {
        let pivots = (0..basis.rows())
            .map(|r| {
                (0..basis.cols())
                    .find(|&c| !basis.entry_is_zero(r, c))
                    .expect("canonical basis has no zero rows")
            })
            .collect();
        Subspace { basis, pivots }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// 0-indexed pivot column of each basis row.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The `r`-th basis row as a 1-dimensional subspace.
    pub fn basis_vector(&self, r: usize) -> Subspace {
        Subspace {
            basis: self.basis.submatrix(r, r + 1, 0, self.ambient_dim()),
            pivots: vec![self.pivots[r]],
        }
    }

    fn compatible(&self, other: &Subspace, op: &str) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::usage(format!("{op}: subspaces over different fields")));
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::usage(format!(
                "{op}: ambient dimensions {} and {} differ",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other, "sum")?;
        Ok(Subspace::canonicalize(&self.basis.vstack(&other.basis)?))
    }

    /// Zassenhaus: reduce `[A A; B 0]`; rows whose left half vanishes span `A ∩ B`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other, "intersect")?;
        let n = self.ambient_dim();
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(self.field(), n));
        }
        let field = self.field();
        let mut block = Matrix::zeros(field, a + b, 2 * n);
        for r in 0..a {
            for c in 0..n {
                let e = self.basis.get(r, c);
                block.set(r, c, &e);
                block.set(r, n + c, &e);
            }
        }
        for r in 0..b {
            for c in 0..n {
                block.set(a + r, c, &other.basis.get(r, c));
            }
        }
        let (red, pivots) = block.rref();
        let first = pivots.iter().position(|&p| p >= n).unwrap_or(pivots.len());
        Ok(Subspace::canonicalize(&red.submatrix(first, pivots.len(), n, 2 * n)))
    }

    /// `dim(self ∩ E(j))`, computed as `dim - rank` of the trailing columns.
    pub fn dim_meet_standard(&self, j: usize) -> usize {
        let n = self.ambient_dim();
        assert!(j <= n);
        if j == n {
            return self.dim();
        }
        self.dim() - self.basis.submatrix(0, self.dim(), j, n).rank()
    }

    pub fn meet_standard(&self, j: usize) -> Subspace {
        self.intersect(&Subspace::standard(self.field(), self.ambient_dim(), j))
            .expect("same ambient space")
    }

    /// `x · self`, for an `n x n` matrix `x`.
    pub fn apply(&self, x: &Matrix) -> Result<Subspace> {
        if x.field() != self.field() {
            return Err(Error::usage("apply: matrix over a different field"));
        }
        let n = self.ambient_dim();
        if x.rows() != n || x.cols() != n {
            return Err(Error::usage(format!(
                "apply: {}x{} matrix on a subspace of dimension-{n} space",
                x.rows(),
                x.cols()
            )));
        }
        Ok(Subspace::canonicalize(&(&self.basis * &x.transpose())))
    }

    /// `dim((self + w) / w) = dim self - dim(self ∩ w)`.
    pub fn quotient_dim(&self, w: &Subspace) -> Result<usize> {
        Ok(self.sum(w)?.dim() - w.dim())
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other, "contains")?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(self.sum(other)?.dim() == self.dim())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        other.contains(self)
    }

    pub fn to_json(&self) -> Value {
        json!({ "n": self.ambient_dim(), "basis": self.basis.to_json() })
    }

    /// Accepts any spanning set; the result is canonicalized.
    pub fn from_json(v: &Value, field: Field) -> Result<Subspace> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::usage("subspace needs an integer \"n\""))? as usize;
        let basis = v
            .get("basis")
            .ok_or_else(|| Error::usage("subspace needs a \"basis\""))?;
        Ok(Subspace::canonicalize(&Matrix::from_json(basis, field, Some(n))?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn span(field: Field, n: usize, rows: &[Vec<i64>]) -> Subspace {
        Subspace::canonicalize(&Matrix::from_i64_rows(field, n, rows).unwrap())
    }

    #[test]
    fn canonical_bases() {
        let a = span(q(), 3, &[vec![1, 1, 0], vec![0, 1, 0]]);
        assert_eq!(a.basis(), &Matrix::from_i64_rows(q(), 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap());
        let f5 = Field::prime(5).unwrap();
        let b = span(f5, 2, &[vec![2, 4]]);
        assert_eq!(b.basis(), &Matrix::from_i64_rows(f5, 2, &[vec![1, 2]]).unwrap());
        assert_eq!(span(q(), 2, &[vec![1, 1], vec![2, 2]]).dim(), 1);
        assert_eq!(span(q(), 4, &[vec![0, 0, 0, 0]]), Subspace::zero(q(), 4));
    }

    #[test]
    fn meet_and_join() {
        let a = span(q(), 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = span(q(), 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), span(q(), 3, &[vec![0, 1, 0]]));
        assert_eq!(a.intersect(&a).unwrap(), a);

        let f2 = Field::prime(2).unwrap();
        let c = span(f2, 4, &[vec![1, 1, 0, 0], vec![0, 0, 1, 0]]);
        let d = span(f2, 4, &[vec![1, 1, 1, 0]]);
        // e1+e2+e3 = (e1+e2) + e3 lies in c.
        assert_eq!(c.intersect(&d).unwrap(), d);
        let e = span(f2, 4, &[vec![1, 0, 1, 1]]);
        assert_eq!(c.intersect(&e).unwrap().dim(), 0);

        let s = span(f2, 4, &[vec![1, 1, 0, 0]]).sum(&span(f2, 4, &[vec![0, 1, 1, 0]])).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(a.sum(&Subspace::zero(q(), 3)).unwrap(), a);
    }

    #[test]
    fn images_and_quotients() {
        let e14 = Matrix::elementary(q(), 4, 1, 4);
        let full = Subspace::full(q(), 4);
        assert_eq!(full.apply(&e14).unwrap(), Subspace::standard(q(), 4, 1));
        assert_eq!(full.apply(&Matrix::zeros(q(), 4, 4)).unwrap().dim(), 0);
        let u = span(q(), 4, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]);
        assert_eq!(u.quotient_dim(&Subspace::standard(q(), 4, 2)).unwrap(), 1);
        assert_eq!(u.quotient_dim(&Subspace::zero(q(), 4)).unwrap(), 2);
        assert!(Subspace::full(q(), 4).apply(&Matrix::zeros(q(), 3, 3)).is_err());
    }

    #[test]
    fn dim_meet_standard_matches_intersection() {
        let f3 = Field::prime(3).unwrap();
        let v = span(f3, 5, &[vec![1, 2, 0, 1, 0], vec![0, 1, 1, 0, 2], vec![0, 0, 0, 1, 1]]);
        for j in 0..=5 {
            assert_eq!(v.dim_meet_standard(j), v.meet_standard(j).dim(), "j = {j}");
        }
    }

    #[test]
    fn kernel_and_image_dimensions() {
        let x = Matrix::from_i64_rows(q(), 3, &[vec![0, 1, 2], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(Subspace::image(&x).dim() + Subspace::kernel(&x).dim(), 3);
        assert!(Subspace::kernel(&x).apply(&x).unwrap().dim() == 0);
    }

    #[test]
    fn json_roundtrip() {
        let f7 = Field::prime(7).unwrap();
        let v = span(f7, 3, &[vec![3, 1, 4], vec![1, 5, 9]]);
        assert_eq!(Subspace::from_json(&v.to_json(), f7).unwrap(), v);
        let z = Subspace::zero(q(), 2);
        assert_eq!(Subspace::from_json(&z.to_json(), q()).unwrap(), z);
    }
}
