//! Square-zero nilpotents in the upper-triangular nilradical that come from
//! the conormal variety of `X_w`, and the tableau combinatorics behind them.

mod tableau;

pub use tableau::{
    jdt_window, recover_bounds_check, recover_mismatches, rectangle_tableaux, rsk_left, tableau_profile, window_bound,
    tableau_to_wv, two_column_tableaux, Partition, SkewTableau, StandardTableau,
};

use crate::conormal::{inequality_failures, is_cotangent_point, satisfies_inequalities, FailedInequality};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Subspace, SymplecticForm};
use crate::profile::block_profile;
use crate::schubert::{complete_lagrangian, complete_subspace, in_schubert, RankTargets};
use crate::weyl::{GrassContext, Permutation};

fn check_upper(x: &Matrix, ctx: &GrassContext) -> Result<()> {
    if x.rows() != ctx.n() || !x.is_square() {
        return Err(Error::usage(format!("x must be {}x{}", ctx.n(), ctx.n())));
    }
    if !x.is_strictly_upper() {
        return Err(Error::usage("x must be strictly upper triangular"));
    }
    if ctx.is_type_c() && !SymplecticForm::new(x.field(), ctx.d())?.in_lie_algebra(x) {
        return Err(Error::usage("x must lie in the symplectic Lie algebra"));
    }
    Ok(())
}

/// `x² = 0` and `dim(xE(t_i)/E(t_j)) ≤ min(r_{i-1} - r_j, c_i - c_{j+1})` for
/// all `0 ≤ j < i ≤ l + 1`.
pub fn orbital_test(x: &Matrix, w: &Permutation, ctx: &GrassContext) -> Result<bool> {
    check_upper(x, ctx)?;
    let profile = block_profile(w, ctx)?;
    Ok((x * x).is_zero() && satisfies_inequalities(x, &profile, 0))
}

/// The bounds `x` violates, for reporting.
pub fn orbital_failures(x: &Matrix, w: &Permutation, ctx: &GrassContext) -> Result<Vec<FailedInequality>> {
    check_upper(x, ctx)?;
    Ok(inequality_failures(x, &block_profile(w, ctx)?, 0))
}

/// Some `V ∈ X_w` with `im x ⊆ V ⊆ ker x` (Lagrangian in type C), built
/// greedily from `im x` inside `ker x`.
pub fn orbital_witness(x: &Matrix, w: &Permutation, ctx: &GrassContext) -> Result<Subspace> {
    if !orbital_test(x, w, ctx)? {
        return Err(Error::usage("x does not satisfy the orbital equations"));
    }
    let d = ctx.d();
    let targets = RankTargets::new(w, d);
    let (im, ker) = (Subspace::image(x), Subspace::kernel(x));
    let v = if ctx.is_type_c() {
        let form = SymplecticForm::new(x.field(), d)?;
        complete_lagrangian(&im, &ker, &targets, &form)
    } else {
        complete_subspace(&im, &ker, d, &targets)
    }
    .map_err(|e| Error::contradiction(format!("orbital witness: {e}")))?;
    if !in_schubert(&v, w, ctx)? || !is_cotangent_point(&v, x, ctx) {
        return Err(Error::contradiction("orbital witness fails its postconditions"));
    }
    Ok(v)
}

/// `(2^rank x, 1^{m - 2 rank x})` for a square-zero `x`.
pub fn jordan_type_square_zero(x: &Matrix) -> Result<Partition> {
    if !x.is_square() {
        return Err(Error::usage("Jordan type of a non-square matrix"));
    }
    if !(x * x).is_zero() {
        return Err(Error::usage("x does not square to zero"));
    }
    let k = x.rank();
    let mut parts = vec![2; k];
    parts.extend(std::iter::repeat_n(1, x.rows() - 2 * k));
    Ok(Partition::new(parts))
}
