//! Rank-condition membership for Schubert varieties and cells, and a greedy
//! construction of subspaces meeting prescribed rank targets.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactlin::{PartialFlag, Subspace, SymplecticForm};
use crate::profile::FlagShape;
use crate::weyl::{mw_unchecked, GrassContext, Permutation};

/// `j ↦ m_w(j, q)` for `0 ≤ j ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankTargets {
    q: usize,
    targets: Vec<usize>,
}

impl RankTargets {
    pub fn new(w: &Permutation, q: usize) -> RankTargets {
        assert!(q <= w.n());
        RankTargets {
            q,
            targets: (0..=w.n()).map(|j| mw_unchecked(w, j, q)).collect(),
        }
    }

    /// Arbitrary targets; must start at 0 and climb by steps of at most 1.
    pub fn from_values(targets: Vec<usize>) -> Result<RankTargets> {
        if targets.first() != Some(&0) || targets.windows(2).any(|p| p[1] < p[0] || p[1] > p[0] + 1) {
            return Err(Error::usage("rank targets must start at 0 and increase by 0 or 1"));
        }
        Ok(RankTargets {
            q: *targets.last().unwrap(),
            targets,
        })
    }

    pub fn at(&self, j: usize) -> usize {
        self.targets[j]
    }

    pub fn n(&self) -> usize {
        self.targets.len() - 1
    }

    /// The target dimension, `targets(n)`.
    pub fn q(&self) -> usize {
        self.q
    }
}

/// A failed inequality `dim(V ∩ E(j)) ≥ need`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub j: usize,
    pub have: usize,
    pub need: usize,
}

impl Violation {
    pub fn to_json(&self) -> Value {
        json!({ "j": self.j, "have": self.have, "need": self.need })
    }
}

fn check_point(v: &Subspace, w: &Permutation, ctx: &GrassContext) -> Result<()> {
    ctx.check_perm(w)?;
    if v.ambient_dim() != ctx.n() {
        return Err(Error::usage(format!(
            "subspace of F^{} in a context of ambient dimension {}",
            v.ambient_dim(),
            ctx.n()
        )));
    }
    if v.dim() != ctx.d() {
        return Err(Error::usage(format!("subspace has dimension {}, expected {}", v.dim(), ctx.d())));
    }
    Ok(())
}

/// Every `j` with `dim(V ∩ E(j)) < targets(j)`.
pub fn rank_violations(v: &Subspace, targets: &RankTargets) -> Vec<Violation> {
    (1..=targets.n())
        .filter_map(|j| {
            let have = v.dim_meet_standard(j);
            let need = targets.at(j);
            (have < need).then_some(Violation { j, have, need })
        })
        .collect()
}

pub fn meets_targets(v: &Subspace, targets: &RankTargets) -> bool {
    (1..=targets.n()).all(|j| v.dim_meet_standard(j) >= targets.at(j))
}

pub fn schubert_violations(v: &Subspace, w: &Permutation, ctx: &GrassContext) -> Result<Vec<Violation>> {
    check_point(v, w, ctx)?;
    Ok(rank_violations(v, &RankTargets::new(w, ctx.d())))
}

/// `dim(V ∩ E(j)) ≥ m_w(j, d)` for all `j`. Isotropy is not checked here.
pub fn in_schubert(v: &Subspace, w: &Permutation, ctx: &GrassContext) -> Result<bool> {
    check_point(v, w, ctx)?;
    Ok(meets_targets(v, &RankTargets::new(w, ctx.d())))
}

/// Equality `dim(V ∩ E(j)) = m_w(j, d)` for all `j`.
pub fn in_cell(v: &Subspace, w: &Permutation, ctx: &GrassContext) -> Result<bool> {
    check_point(v, w, ctx)?;
    let t = RankTargets::new(w, ctx.d());
    Ok((1..=ctx.n()).all(|j| v.dim_meet_standard(j) == t.at(j)))
}

fn check_flag(f: &PartialFlag, w: &Permutation, shape: &FlagShape) -> Result<()> {
    shape.ctx.check_perm(w)?;
    if f.shape() != shape.q.as_slice() {
        return Err(Error::usage(format!("flag shape {:?} differs from {:?}", f.shape(), shape.q)));
    }
    if f.spaces().first().is_some_and(|s| s.ambient_dim() != shape.ctx.n()) {
        return Err(Error::usage("flag lives in the wrong ambient space"));
    }
    Ok(())
}

fn level_ok(f: &PartialFlag, w: &Permutation, shape: &FlagShape, i: usize) -> bool {
    meets_targets(f.space(i), &RankTargets::new(w, shape.q[i]))
}

/// `F(q_i)^⊥ = F(q_{2l-i})` for every level.
pub fn is_isotropic_flag(f: &PartialFlag, form: &SymplecticForm) -> Result<bool> {
    let m = f.len();
    for i in 0..m {
        if form.perp(f.space(i))? != *f.space(m - 1 - i) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dim(F(q_i) ∩ E(j)) ≥ m_w(j, q_i)`. In type C only the levels `i ≤ l`
/// are tested, together with isotropy of the flag.
pub fn in_flag_schubert(f: &PartialFlag, w: &Permutation, shape: &FlagShape) -> Result<bool> {
    check_flag(f, w, shape)?;
    if shape.ctx.is_type_c() {
        let form = SymplecticForm::new(f.space(0).field(), shape.ctx.d())?;
        Ok(is_isotropic_flag(f, &form)? && (0..=shape.l).all(|i| level_ok(f, w, shape, i)))
    } else {
        Ok((0..f.len()).all(|i| level_ok(f, w, shape, i)))
    }
}

/// Every level tested; in type C isotropy is still required.
pub fn in_flag_schubert_full(f: &PartialFlag, w: &Permutation, shape: &FlagShape) -> Result<bool> {
    check_flag(f, w, shape)?;
    if shape.ctx.is_type_c() {
        let form = SymplecticForm::new(f.space(0).field(), shape.ctx.d())?;
        if !is_isotropic_flag(f, &form)? {
            return Ok(false);
        }
    }
    Ok((0..f.len()).all(|i| level_ok(f, w, shape, i)))
}

/// Adjoin to `u` the basis row of `pool` with the largest pivot not already in `u`.
fn adjoin_from(u: &Subspace, pool: &Subspace) -> Option<Subspace> {
    (0..pool.dim()).rev().find_map(|r| {
        let v = pool.basis_vector(r);
        let grown = u.sum(&v).expect("same ambient space");
        (grown.dim() > u.dim()).then_some(grown)
    })
}

/// Greedy `U ⊆ U′ ⊆ V` with `dim U′ = target_dim` and
/// `dim(U′ ∩ E(j)) ≥ targets(j)`. Columns are scanned left to right; at each
/// one the basis row of `V ∩ E(j)` with the largest pivot outside `U′` is
/// adjoined until the target is met.
pub fn complete_subspace(u: &Subspace, v: &Subspace, target_dim: usize, targets: &RankTargets) -> Result<Subspace> {
    let n = v.ambient_dim();
    if u.ambient_dim() != n || targets.n() != n {
        return Err(Error::usage("complete_subspace: mismatched ambient dimensions"));
    }
    if !v.contains(u)? {
        return Err(Error::usage("complete_subspace: U is not contained in V"));
    }
    if u.dim() > target_dim || targets.q() != target_dim {
        return Err(Error::usage(format!(
            "complete_subspace: dim U = {}, target {target_dim}, targets end at {}",
            u.dim(),
            targets.q()
        )));
    }
    greedy(u.clone(), v, targets, n, target_dim)
}

fn greedy(mut cur: Subspace, v: &Subspace, targets: &RankTargets, last: usize, cap: usize) -> Result<Subspace> {
    for j in 1..=last {
        if cur.dim_meet_standard(j) >= targets.at(j) {
            continue;
        }
        let pool = v.meet_standard(j);
        while cur.dim_meet_standard(j) < targets.at(j) {
            cur = adjoin_from(&cur, &pool).ok_or(Error::PreconditionViolation { column: j })?;
            if cur.dim() > cap {
                return Err(Error::PreconditionViolation { column: j });
            }
        }
    }
    Ok(cur)
}

/// A Lagrangian `U′` with `U ⊆ U′ ⊆ V` meeting `targets` (which end at `d`).
/// `U` must be isotropic and `V ⊆ U^⊥`, so the greedy over `j ≤ d` stays
/// isotropic; the result is then padded inside `U′^⊥`.
pub fn complete_lagrangian(
    u: &Subspace,
    v: &Subspace,
    targets: &RankTargets,
    form: &SymplecticForm,
) -> Result<Subspace> {
    let d = form.d();
    if u.ambient_dim() != 2 * d || v.ambient_dim() != 2 * d || targets.n() != 2 * d || targets.q() != d {
        return Err(Error::usage("complete_lagrangian: mismatched dimensions"));
    }
    if !v.contains(u)? || !form.perp(u)?.contains(v)? || !form.is_isotropic(u)? {
        return Err(Error::usage("complete_lagrangian: need U isotropic and U ⊆ V ⊆ U^⊥"));
    }
    let mut cur = greedy(u.clone(), v, targets, d, d)?;
    while cur.dim() < d {
        let room = form.perp(&cur)?;
        cur = adjoin_from(&cur, &room).ok_or(Error::PreconditionViolation { column: 2 * d })?;
    }
    if !meets_targets(&cur, targets) {
        let j = rank_violations(&cur, targets)[0].j;
        return Err(Error::PreconditionViolation { column: j });
    }
    Ok(cur)
}
