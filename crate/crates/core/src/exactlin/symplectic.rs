use super::field::Field;
use super::matrix::Matrix;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// The standard skew form on `F^{2d}`: `ω(e_i, e_ī) = 1` for `i ≤ d` and
/// `-1` for `i > d`, where `ī = 2d + 1 - i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticForm {
    d: usize,
    gram: Matrix,
}

impl SymplecticForm {
    pub fn new(field: Field, d: usize) -> Result<SymplecticForm> {
        if d == 0 {
            return Err(Error::usage("symplectic form needs d >= 1"));
        }
        let n = 2 * d;
        let mut gram = Matrix::zeros(field, n, n);
        for i in 1..=n {
            let sign = if i <= d { 1 } else { -1 };
            gram.set(i - 1, n - i, &field.from_i64(sign));
        }
        Ok(SymplecticForm { d, gram })
    }

    /// The form matching the ambient dimension of `v`; odd dimensions are rejected.
    pub fn for_ambient(field: Field, n: usize) -> Result<SymplecticForm> {
        if !n.is_multiple_of(2) {
            return Err(Error::usage(format!("no symplectic form on odd dimension {n}")));
        }
        SymplecticForm::new(field, n / 2)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> Field {
        self.gram.field()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    fn check(&self, v: &Subspace) -> Result<()> {
        if v.ambient_dim() != 2 * self.d {
            return Err(Error::usage(format!(
                "subspace of F^{} against a form on F^{}",
                v.ambient_dim(),
                2 * self.d
            )));
        }
        if v.field() != self.field() {
            return Err(Error::usage("subspace and form over different fields"));
        }
        Ok(())
    }

    /// `{ u : ω(v, u) = 0 for all v ∈ V }`.
    pub fn perp(&self, v: &Subspace) -> Result<Subspace> {
        self.check(v)?;
        if v.dim() == 0 {
            return Ok(Subspace::full(self.field(), 2 * self.d));
        }
        Ok(Subspace::kernel(&(v.basis() * &self.gram)))
    }

    pub fn is_isotropic(&self, v: &Subspace) -> Result<bool> {
        self.check(v)?;
        Ok((&(v.basis() * &self.gram) * &v.basis().transpose()).is_zero())
    }

    /// `V = V^⊥`, i.e. isotropic of dimension `d`.
    pub fn is_lagrangian(&self, v: &Subspace) -> Result<bool> {
        Ok(v.dim() == self.d && self.is_isotropic(v)?)
    }

    /// `gᵀ Ω g = Ω`.
    pub fn preserves(&self, g: &Matrix) -> bool {
        g.rows() == 2 * self.d
            && g.is_square()
            && &(&g.transpose() * &self.gram) * g == self.gram
    }

    /// `ω(xu, v) + ω(u, xv) = 0`, i.e. `xᵀ Ω + Ω x = 0`.
    pub fn in_lie_algebra(&self, x: &Matrix) -> bool {
        x.rows() == 2 * self.d
            && x.is_square()
            && (&(&x.transpose() * &self.gram) + &(&self.gram * x)).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_is_antisymmetric_and_invertible() {
        for field in [Field::rationals(), Field::prime(3).unwrap()] {
            let w = SymplecticForm::new(field, 3).unwrap();
            assert_eq!(w.gram().transpose(), w.gram().neg());
            assert!(w.gram().inverse().is_ok());
        }
    }

    #[test]
    fn standard_flag_is_self_dual() {
        let f3 = Field::prime(3).unwrap();
        let w = SymplecticForm::new(f3, 3).unwrap();
        for i in 0..=6 {
            assert_eq!(w.perp(&Subspace::standard(f3, 6, i)).unwrap(), Subspace::standard(f3, 6, 6 - i));
        }
    }

    #[test]
    fn perp_of_a_line() {
        // ω(e1 + e3, v) = v4 - v2 for d = 2, so the perp is {v2 = v4}.
        let f3 = Field::prime(3).unwrap();
        let w = SymplecticForm::new(f3, 2).unwrap();
        let line = Subspace::canonicalize(&Matrix::from_i64_rows(f3, 4, &[vec![1, 0, 1, 0]]).unwrap());
        let expect = Subspace::canonicalize(
            &Matrix::from_i64_rows(f3, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 0, 1, 0]]).unwrap(),
        );
        assert_eq!(w.perp(&line).unwrap(), expect);
        assert!(w.perp(&Subspace::full(f3, 5)).is_err());
    }

    #[test]
    fn lie_algebra_membership() {
        let q = Field::rationals();
        let w = SymplecticForm::new(q, 2).unwrap();
        assert!(w.in_lie_algebra(&Matrix::elementary(q, 4, 1, 4)));
        let x = &Matrix::elementary(q, 4, 1, 3) + &Matrix::elementary(q, 4, 2, 4);
        assert!(w.in_lie_algebra(&x));
        assert!(!w.in_lie_algebra(&Matrix::elementary(q, 4, 1, 3)));
        let y = &Matrix::elementary(q, 4, 1, 2) - &Matrix::elementary(q, 4, 3, 4);
        assert!(w.in_lie_algebra(&y));
    }
}
