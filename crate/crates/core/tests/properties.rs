use conormal_core::{Field, Matrix, Subspace, SymplecticForm};
use proptest::prelude::*;

const P: u64 = 5;

fn field() -> Field {
    Field::prime(P).unwrap()
}

fn span(cols: usize, rows: &[Vec<i64>]) -> Subspace {
    Subspace::canonicalize(&Matrix::from_i64_rows(field(), cols, rows).unwrap())
}

fn rows(cols: usize, max_rows: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0..P as i64, cols), 0..=max_rows)
}

/// A random invertible `k x k` matrix, retried until it is.
fn mix(k: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0..P as i64, k), k).prop_filter("invertible", move |m| {
        k == 0 || Matrix::from_i64_rows(field(), k, m).unwrap().rank() == k
    })
}

proptest! {
    #[test]
    fn canonical_form_ignores_the_basis(r in rows(6, 4), seed in mix(4)) {
        let a = span(6, &r);
        let k = a.dim();
        let g = Matrix::from_i64_rows(field(), 4, &seed).unwrap().submatrix(0, k, 0, k);
        prop_assume!(g.rank() == k);
        let other = Subspace::canonicalize(&(&g * a.basis()));
        prop_assert_eq!(&a, &other);
        prop_assert_eq!(Subspace::canonicalize(a.basis()), a);
    }

    #[test]
    fn dimension_formula(a in rows(6, 4), b in rows(6, 4)) {
        let (a, b) = (span(6, &a), span(6, &b));
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
        prop_assert!(sum.contains(&a).unwrap() && sum.contains(&b).unwrap());
        prop_assert!(a.contains(&meet).unwrap() && b.contains(&meet).unwrap());
    }

    #[test]
    fn modular_law(a in rows(5, 2), b in rows(5, 3), c in rows(5, 3)) {
        let (a, b, c) = (span(5, &a), span(5, &b), span(5, &c));
        let c = c.sum(&a).unwrap();
        let left = a.sum(&b.intersect(&c).unwrap()).unwrap();
        let right = a.sum(&b).unwrap().intersect(&c).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn perp_turns_sums_into_meets(a in rows(6, 4), b in rows(6, 4)) {
        let form = SymplecticForm::new(field(), 3).unwrap();
        let (a, b) = (span(6, &a), span(6, &b));
        let lhs = form.perp(&a).unwrap().intersect(&form.perp(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, form.perp(&a.sum(&b).unwrap()).unwrap());
        let lhs = form.perp(&a).unwrap().sum(&form.perp(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, form.perp(&a.intersect(&b).unwrap()).unwrap());
    }

    #[test]
    fn double_perp(a in rows(6, 6)) {
        let form = SymplecticForm::new(field(), 3).unwrap();
        let a = span(6, &a);
        let p = form.perp(&a).unwrap();
        prop_assert_eq!(a.dim() + p.dim(), 6);
        prop_assert_eq!(form.perp(&p).unwrap(), a);
    }

    #[test]
    fn rank_nullity(r in rows(5, 5)) {
        let m = Matrix::from_i64_rows(field(), 5, &r).unwrap();
        prop_assume!(m.rows() > 0);
        let k = Subspace::kernel(&m);
        prop_assert_eq!(k.dim() + m.rank(), 5);
        prop_assert!((&m * &k.basis().transpose()).is_zero());
    }

    #[test]
    fn rational_arithmetic_is_exact(nums in prop::collection::vec(-1_000_000_000i64..1_000_000_000, 12)) {
        let q = Field::rationals();
        let m = Matrix::from_i64_rows(q, 3, &nums.chunks(3).map(<[i64]>::to_vec).collect::<Vec<_>>()).unwrap();
        let sq = m.submatrix(0, 3, 0, 3);
        if let Ok(inv) = sq.inverse() {
            prop_assert_eq!(&sq * &inv, Matrix::identity(q, 3));
            prop_assert_eq!(&inv * &sq, Matrix::identity(q, 3));
            prop_assert_eq!(sq.rank(), 3);
        } else {
            prop_assert!(sq.rank() < 3);
        }
        let back = Matrix::from_json(&m.to_json(), q, Some(3)).unwrap();
        prop_assert_eq!(back, m);
    }
}
