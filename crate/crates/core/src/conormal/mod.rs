//! Points of the cotangent bundle of a Grassmannian, the rank inequalities
//! cutting out the conormal variety of a Schubert variety, and the flag
//! lift that proves a point satisfying them lies on it.

mod sample;

pub use sample::{borel_element, sample_conormal_point, signed_permutation_matrix, torus_element};
pub(crate) use sample::symplectic_positive_roots;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, PartialFlag, Subspace, SymplecticForm};
use crate::profile::{block_profile, flag_shape, BlockProfile, FlagShape};
use crate::schubert::{complete_subspace, in_flag_schubert, schubert_violations, RankTargets, Violation};
use crate::weyl::{GrassContext, Permutation};

/// A pair `(V, x)` with `im x ⊆ V ⊆ ker x`; in type C also `V = V^⊥` and `x ∈ 𝔰𝔭`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConormalPoint {
    v: Subspace,
    x: Matrix,
}

impl ConormalPoint {
    pub fn new(v: Subspace, x: Matrix, ctx: &GrassContext) -> Result<ConormalPoint> {
        if let Some(why) = cotangent_defect(&v, &x, ctx) {
            return Err(Error::usage(format!("not a cotangent point: {why}")));
        }
        Ok(ConormalPoint { v, x })
    }

    pub(crate) fn new_unchecked(v: Subspace, x: Matrix) -> ConormalPoint {
        ConormalPoint { v, x }
    }

    pub fn v(&self) -> &Subspace {
        &self.v
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn to_json(&self) -> Value {
        json!({ "V": self.v.to_json(), "x": self.x.to_json() })
    }
}

fn cotangent_defect(v: &Subspace, x: &Matrix, ctx: &GrassContext) -> Option<&'static str> {
    let n = ctx.n();
    if v.ambient_dim() != n || x.rows() != n || x.cols() != n {
        return Some("dimensions do not match the context");
    }
    if v.field() != x.field() {
        return Some("V and x are over different fields");
    }
    if v.dim() != ctx.d() {
        return Some("dim V is not d");
    }
    if !(v.basis() * &x.transpose()).is_zero() {
        return Some("x does not kill V");
    }
    if !v.contains(&Subspace::image(x)).expect("same ambient") {
        return Some("im x is not inside V");
    }
    if ctx.is_type_c() {
        let form = SymplecticForm::new(v.field(), ctx.d()).expect("d >= 1");
        if !form.in_lie_algebra(x) {
            return Some("x is not in the symplectic Lie algebra");
        }
        if !form.is_lagrangian(v).expect("ambient checked") {
            return Some("V is not Lagrangian");
        }
    }
    None
}

/// `im x ⊆ V ⊆ ker x`, plus `x ∈ 𝔰𝔭` and `V = V^⊥` in type C.
pub fn is_cotangent_point(v: &Subspace, x: &Matrix, ctx: &GrassContext) -> bool {
    cotangent_defect(v, x, ctx).is_none()
}

/// A failed bound `dim(xE(t_i) / E(t_j)) ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailedInequality {
    pub i: usize,
    pub j: usize,
    pub lhs: usize,
    pub rhs: usize,
}

impl FailedInequality {
    pub fn to_json(&self) -> Value {
        json!({ "i": self.i, "j": self.j, "lhs": self.lhs, "rhs": self.rhs })
    }
}

/// `dim(xE(a) / E(b))`: the rank of rows `b+1..n` of the first `a` columns.
pub fn image_quotient_rank(x: &Matrix, a: usize, b: usize) -> usize {
    if a == 0 || b >= x.rows() {
        return 0;
    }
    x.submatrix(b, x.rows(), 0, a).rank()
}

/// Bounds violated by `x` over `j_min ≤ j < i ≤ l + 1`. The full system
/// uses `j_min = 0`.
pub fn inequality_failures(x: &Matrix, profile: &BlockProfile, j_min: usize) -> Vec<FailedInequality> {
    profile
        .index_pairs()
        .filter(|&(_, j)| j >= j_min)
        .filter_map(|(i, j)| {
            let lhs = image_quotient_rank(x, profile.t[i], profile.t[j]);
            let rhs = profile.bound(i, j);
            (lhs > rhs).then_some(FailedInequality { i, j, lhs, rhs })
        })
        .collect()
}

pub fn satisfies_inequalities(x: &Matrix, profile: &BlockProfile, j_min: usize) -> bool {
    profile.index_pairs().filter(|&(_, j)| j >= j_min).all(|(i, j)| {
        image_quotient_rank(x, profile.t[i], profile.t[j]) <= profile.bound(i, j)
    })
}

/// Why a cotangent point fails the conormal equations, if it does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConormalReport {
    pub schubert_violations: Vec<Violation>,
    pub failed_inequalities: Vec<FailedInequality>,
}

impl ConormalReport {
    pub fn member(&self) -> bool {
        self.schubert_violations.is_empty() && self.failed_inequalities.is_empty()
    }
}

pub fn conormal_report(pt: &ConormalPoint, w: &Permutation, ctx: &GrassContext) -> Result<ConormalReport> {
    let profile = block_profile(w, ctx)?;
    Ok(ConormalReport {
        schubert_violations: schubert_violations(&pt.v, w, ctx)?,
        failed_inequalities: inequality_failures(&pt.x, &profile, 0),
    })
}

/// `V ∈ X_w` and `dim(xE(t_i)/E(t_j)) ≤ min(r_{i-1} - r_j, c_i - c_{j+1})`
/// for all `0 ≤ j < i ≤ l + 1`.
pub fn conormal_equations_test(pt: &ConormalPoint, w: &Permutation, ctx: &GrassContext) -> Result<bool> {
    let profile = block_profile(w, ctx)?;
    Ok(crate::schubert::in_schubert(&pt.v, w, ctx)? && satisfies_inequalities(&pt.x, &profile, 0))
}

/// A flag `F` of shape `q` in `X^Q_w` with `x F(q_{l+i}) ⊆ F(q_{i-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedFlag {
    pub flag: PartialFlag,
    pub x: Matrix,
}

impl LiftedFlag {
    pub fn to_json(&self) -> Value {
        json!({ "flag": self.flag.to_json(), "x": self.x.to_json() })
    }
}

/// `F(q_i)`, reading `F(q_{2l+1})` as the whole space in type C.
fn level<'a>(f: &'a PartialFlag, i: usize, full: &'a Subspace) -> &'a Subspace {
    if i < f.len() {
        f.space(i)
    } else {
        full
    }
}

pub(crate) fn quiver_holds(f: &PartialFlag, x: &Matrix, shape: &FlagShape) -> bool {
    let full = Subspace::full(x.field(), shape.ctx.n());
    (1..=shape.l + 1).all(|i| {
        let src = level(f, shape.l + i, &full);
        let img = src.apply(x).expect("square matrix of ambient size");
        level(f, i - 1, &full).contains(&img).expect("same ambient")
    })
}

/// `F ∈ X^Q_w` and the containments `x F(q_{l+i}) ⊆ F(q_{i-1})`.
pub fn in_zqw(f: &PartialFlag, x: &Matrix, w: &Permutation, ctx: &GrassContext) -> Result<bool> {
    let shape = flag_shape(&block_profile(w, ctx)?, ctx);
    if x.rows() != ctx.n() || !x.is_square() {
        return Err(Error::usage("x does not match the ambient dimension"));
    }
    Ok(in_flag_schubert(f, w, &shape)? && quiver_holds(f, x, &shape))
}

fn tripwire(step: &str, e: Error) -> Error {
    Error::contradiction(format!("{step}: {e}"))
}

/// Build a flag through `V` witnessing that `(V, x)` lies on the conormal
/// variety. Downward, `F(q_{i-1})` is completed from `xE(t_i)` inside
/// `F(q_i) ∩ E(t_{i-1})`; upward it is completed inside `ker x + E(t_i)`
/// (type A) or taken as the perp of the mirrored level (type C).
pub fn lift_flag(pt: &ConormalPoint, w: &Permutation, ctx: &GrassContext) -> Result<LiftedFlag> {
    if !conormal_equations_test(pt, w, ctx)? {
        return Err(Error::usage("the point does not satisfy the conormal equations"));
    }
    let profile = block_profile(w, ctx)?;
    let shape = flag_shape(&profile, ctx);
    let (field, n, l) = (pt.v.field(), ctx.n(), profile.l);
    let x = &pt.x;
    let mut spaces: Vec<Option<Subspace>> = vec![None; shape.len()];
    spaces[l] = Some(pt.v.clone());

    for i in (1..=l).rev() {
        let above = spaces[i].as_ref().expect("filled on the previous step");
        let u = Subspace::standard(field, n, profile.t[i]).apply(x)?;
        let pool = above.meet_standard(profile.t[i - 1]);
        let q = shape.q[i - 1];
        let next = complete_subspace(&u, &pool, q, &RankTargets::new(w, q))
            .map_err(|e| tripwire(&format!("downward step {i}"), e))?;
        spaces[i - 1] = Some(next);
    }

    if ctx.is_type_c() {
        let form = SymplecticForm::new(field, ctx.d())?;
        for k in l + 1..shape.len() {
            spaces[k] = Some(form.perp(spaces[shape.mirror(k)].as_ref().unwrap())?);
        }
    } else {
        let ker = Subspace::kernel(x);
        for i in 1..=l + 1 {
            let below = spaces[l + i - 1].as_ref().unwrap();
            let pool = ker.sum(&Subspace::standard(field, n, profile.t[i]))?;
            let q = shape.q[l + i];
            let next = complete_subspace(below, &pool, q, &RankTargets::new(w, q))
                .map_err(|e| tripwire(&format!("upward step {i}"), e))?;
            spaces[l + i] = Some(next);
        }
    }

    let spaces = spaces.into_iter().map(Option::unwrap).collect();
    let flag = PartialFlag::new(shape.q.clone(), spaces).map_err(|e| tripwire("assembling the flag", e))?;
    if !in_zqw(&flag, x, w, ctx)? {
        return Err(Error::contradiction("lifted flag fails the Z^Q_w conditions"));
    }
    Ok(LiftedFlag { flag, x: x.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;

    fn p(w: &[usize]) -> Permutation {
        Permutation::new(w.to_vec()).unwrap()
    }

    fn span(field: Field, n: usize, rows: &[Vec<i64>]) -> Subspace {
        Subspace::canonicalize(&Matrix::from_i64_rows(field, n, rows).unwrap())
    }

    #[test]
    fn cotangent_examples() {
        let q = Field::rationals();
        let ctx = GrassContext::type_a(4, 2).unwrap();
        let e2 = Subspace::standard(q, 4, 2);
        assert!(is_cotangent_point(&e2, &Matrix::zeros(q, 4, 4), &ctx));
        assert!(is_cotangent_point(&e2, &Matrix::elementary(q, 4, 1, 4), &ctx));
        assert!(!is_cotangent_point(&e2, &Matrix::elementary(q, 4, 3, 4), &ctx));
        let v = span(q, 4, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]);
        assert!(!is_cotangent_point(&v, &Matrix::elementary(q, 4, 1, 3), &ctx));
    }

    #[test]
    fn quotient_rank_matches_subspaces() {
        let f3 = Field::prime(3).unwrap();
        let x = Matrix::from_i64_rows(
            f3,
            4,
            &[vec![0, 1, 2, 0], vec![1, 0, 0, 1], vec![0, 2, 0, 0], vec![0, 0, 1, 1]],
        )
        .unwrap();
        for a in 0..=4 {
            for b in 0..=4 {
                let img = Subspace::standard(f3, 4, a).apply(&x).unwrap();
                let direct = img.quotient_dim(&Subspace::standard(f3, 4, b)).unwrap();
                assert_eq!(image_quotient_rank(&x, a, b), direct, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn equations_on_small_points() {
        let f2 = Field::prime(2).unwrap();
        let ctx = GrassContext::type_a(4, 2).unwrap();
        let e2 = Subspace::standard(f2, 4, 2);
        let x = Matrix::elementary(f2, 4, 1, 4);
        let pt = ConormalPoint::new(e2.clone(), x, &ctx).unwrap();
        assert!(conormal_equations_test(&pt, &p(&[2, 4, 1, 3]), &ctx).unwrap());
        assert!(!conormal_equations_test(&pt, &p(&[3, 4, 1, 2]), &ctx).unwrap());
        let zero = ConormalPoint::new(e2, Matrix::zeros(f2, 4, 4), &ctx).unwrap();
        assert!(conormal_equations_test(&zero, &p(&[3, 4, 1, 2]), &ctx).unwrap());
    }

    #[test]
    fn lift_examples() {
        let f2 = Field::prime(2).unwrap();
        let ctx = GrassContext::type_a(4, 2).unwrap();
        let w = p(&[2, 4, 1, 3]);
        let e2 = Subspace::standard(f2, 4, 2);
        for x in [Matrix::zeros(f2, 4, 4), Matrix::elementary(f2, 4, 1, 4)] {
            let pt = ConormalPoint::new(e2.clone(), x.clone(), &ctx).unwrap();
            let lifted = lift_flag(&pt, &w, &ctx).unwrap();
            assert_eq!(lifted.flag.space(2), &e2);
            assert!(in_zqw(&lifted.flag, &x, &w, &ctx).unwrap());
        }

        let f3 = Field::prime(3).unwrap();
        let c = GrassContext::type_c(2).unwrap();
        let e2 = Subspace::standard(f3, 4, 2);
        let pt = ConormalPoint::new(e2, Matrix::elementary(f3, 4, 1, 4), &c).unwrap();
        let lifted = lift_flag(&pt, &w, &c).unwrap();
        let form = SymplecticForm::new(f3, 2).unwrap();
        assert!(crate::schubert::is_isotropic_flag(&lifted.flag, &form).unwrap());
    }
}
