//! Exhaustive verification over finite fields.
//!
//! Closure over `𝔽_p` is not Zariski closure, so the sweeps check statements
//! about `𝔽_p`-points: that the rank conditions, the existence of a flag in
//! `Z^Q_w` through the point, and the constructive lift all agree.

mod enumerate;
mod identities;

pub use enumerate::{
    base_count, enumerate_base, enumerate_cotangent_fibre, enumerate_lagrangians, enumerate_subspaces,
    enumerate_upper_nilpotents, fibre_count, find_quiver_flag, gaussian_binomial, lagrangian_count,
    schubert_flags_through, symplectic_fibre_from_forms, SubspaceIter,
};
pub use identities::{tiflip_holds, type_c_elements, verify_identities, TiflipCase};

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::conormal::{conormal_equations_test, in_zqw, is_cotangent_point, lift_flag, ConormalPoint};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};
use crate::orbital::{orbital_test, orbital_witness};
use crate::profile::{block_profile, flag_shape};
use crate::schubert::in_schubert;
use crate::weyl::{GrassContext, Permutation};
use enumerate::{guard, prime_of};

/// Size limits checked before a sweep allocates anything.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub subspaces: u128,
    pub fibre: u128,
    pub points: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            subspaces: 10_000_000,
            fibre: 1_000_000,
            points: 10_000_000,
        }
    }
}

impl Budget {
    pub fn uniform(limit: u128) -> Budget {
        Budget {
            subspaces: limit,
            fibre: limit,
            points: limit,
        }
    }
}

/// How a sweep runs. `jobs = 0` uses the rayon default.
#[derive(Clone, Copy, Debug, Default)]
pub struct SweepOptions {
    pub budget: Budget,
    pub jobs: usize,
}

/// Counts gathered by a sweep. Merging is associative and keeps the
/// counterexample with the smallest key, so the result does not depend on
/// how the points were split between workers.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tally {
    pub points: u64,
    pub agreements: u64,
    pub disagreements: u64,
    /// Points where the tested predicate holds.
    pub passing: u64,
    /// Constructive steps (lifts, witnesses) that succeeded and were verified.
    pub constructions: u64,
    /// Internal-contradiction errors raised by constructive steps.
    pub tripwires: u64,
    counterexample: Option<(u64, Value)>,
}

impl Tally {
    pub fn merge(mut self, other: Tally) -> Tally {
        self.points += other.points;
        self.agreements += other.agreements;
        self.disagreements += other.disagreements;
        self.passing += other.passing;
        self.constructions += other.constructions;
        self.tripwires += other.tripwires;
        self.counterexample = match (self.counterexample, other.counterexample) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }

    pub(crate) fn record(&mut self, key: u64, agree: bool, detail: impl FnOnce() -> Value) {
        self.points += 1;
        if agree {
            self.agreements += 1;
            return;
        }
        self.disagreements += 1;
        if self.counterexample.as_ref().is_none_or(|(k, _)| key < *k) {
            self.counterexample = Some((key, detail()));
        }
    }

    pub fn counterexample(&self) -> Option<&Value> {
        self.counterexample.as_ref().map(|(_, v)| v)
    }
}

/// Outcome of one sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub suite: &'static str,
    pub context: Value,
    pub tally: Tally,
    pub wall_time_ms: u128,
}

impl SweepReport {
    /// No disagreements and no tripwires.
    pub fn passed(&self) -> bool {
        self.tally.disagreements == 0 && self.tally.tripwires == 0
    }

    pub fn to_json(&self) -> Value {
        let t = &self.tally;
        json!({
            "suite": self.suite,
            "context": self.context,
            "points": t.points,
            "agreements": t.agreements,
            "disagreements": t.disagreements,
            "passing": t.passing,
            "constructions": t.constructions,
            "tripwires": t.tripwires,
            "counterexample": t.counterexample(),
            "wall_time_ms": self.wall_time_ms as u64,
            "passed": self.passed(),
        })
    }
}

fn context_json(w: &Permutation, ctx: &GrassContext, field: Field) -> Value {
    let mut v = ctx.to_json();
    v["w"] = w.to_json()["word"].clone();
    v["field"] = json!(field.to_string());
    v
}

/// Run `f` on a pool of `jobs` workers.
pub(crate) fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::usage(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Guard `|X| · |fibre|` and enumerate `X(𝔽_p)`.
fn sweep_base(ctx: &GrassContext, field: Field, budget: &Budget) -> Result<(Vec<Subspace>, u64)> {
    let p = prime_of(field)?;
    let fibre = enumerate::fibre_count(ctx, p);
    guard("cotangent points", base_count(ctx, p).saturating_mul(fibre), budget.points)?;
    guard("cotangent fibre", fibre, budget.fibre)?;
    Ok((enumerate_base(ctx, field, budget)?, fibre as u64))
}

fn tally_all<F>(items: &[Subspace], jobs: usize, per_v: F) -> Result<Tally>
where
    F: Fn(usize, &Subspace) -> Result<Tally> + Sync,
{
    with_pool(jobs, || {
        items
            .par_iter()
            .enumerate()
            .map(|(k, v)| per_v(k, v))
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
    })?
}

fn check_rep(w: &Permutation, ctx: &GrassContext) -> Result<()> {
    block_profile(w, ctx).map(|_| ())
}

/// Over every cotangent `𝔽_p`-point `(V, x)`, compare the conormal
/// equations, the existence of a flag in `Z^Q_w` through `V` (exhaustive
/// search), and the constructive lift.
pub fn verify_theorem_b(w: &Permutation, ctx: &GrassContext, field: Field, opts: &SweepOptions) -> Result<SweepReport> {
    check_rep(w, ctx)?;
    let start = Instant::now();
    let shape = flag_shape(&block_profile(w, ctx)?, ctx);
    let (base, fibre) = sweep_base(ctx, field, &opts.budget)?;
    let tally = tally_all(&base, opts.jobs, |k, v| {
        let flags = schubert_flags_through(v, w, &shape)?;
        let mut t = Tally::default();
        for (m, x) in enumerate_cotangent_fibre(v, ctx, &opts.budget)?.enumerate() {
            let pt = ConormalPoint::new_unchecked(v.clone(), x);
            let eq = conormal_equations_test(&pt, w, ctx)?;
            let searched = match find_quiver_flag(&flags, pt.x(), &shape) {
                Some(f) => in_zqw(f, pt.x(), w, ctx)?,
                None => false,
            };
            let lifted = match lift_flag(&pt, w, ctx) {
                Ok(_) => {
                    t.constructions += 1;
                    true
                }
                Err(Error::InternalContradiction(_)) => {
                    t.tripwires += 1;
                    false
                }
                Err(_) => false,
            };
            t.passing += eq as u64;
            t.record(k as u64 * fibre + m as u64, eq == searched && searched == lifted, || {
                json!({ "point": pt.to_json(), "equations": eq, "flag_search": searched, "lift": lifted })
            });
        }
        Ok(t)
    })?;
    Ok(SweepReport {
        suite: "theorem-b",
        context: context_json(w, ctx, field),
        tally,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// Per-`V` membership of each fibre point in the set `S` passing the
/// conormal equations, indexed as in `sweep_base`.
fn passing_sets(
    base: &[Subspace],
    w: &Permutation,
    ctx: &GrassContext,
    opts: &SweepOptions,
) -> Result<Vec<Vec<(Matrix, bool)>>> {
    with_pool(opts.jobs, || {
        base.par_iter()
            .map(|v| {
                enumerate_cotangent_fibre(v, ctx, &opts.budget)?
                    .map(|x| {
                        let pt = ConormalPoint::new_unchecked(v.clone(), x);
                        let s = conormal_equations_test(&pt, w, ctx)?;
                        Ok((pt.x().clone(), s))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
    })?
}

/// With `S` the cotangent points passing the equations and `M` the set of
/// `x` occurring in `S`, check `S = {(V, x) cotangent : V ∈ X_w, x ∈ M}`.
pub fn verify_geneqn(w: &Permutation, ctx: &GrassContext, field: Field, opts: &SweepOptions) -> Result<SweepReport> {
    check_rep(w, ctx)?;
    let start = Instant::now();
    let (base, fibre) = sweep_base(ctx, field, &opts.budget)?;
    let sets = passing_sets(&base, w, ctx, opts)?;
    let m: HashSet<&Matrix> = sets.iter().flatten().filter(|(_, s)| *s).map(|(x, _)| x).collect();
    let mut tally = Tally::default();
    for (k, (v, row)) in base.iter().zip(&sets).enumerate() {
        let in_xw = in_schubert(v, w, ctx)?;
        for (j, (x, s)) in row.iter().enumerate() {
            let rhs = in_xw && m.contains(x);
            tally.passing += *s as u64;
            tally.record(k as u64 * fibre + j as u64, *s == rhs, || {
                json!({ "V": v.to_json(), "x": x.to_json(), "in_S": s, "in_rhs": rhs })
            });
        }
    }
    Ok(SweepReport {
        suite: "geneqn",
        context: context_json(w, ctx, field),
        tally,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// Over every strictly upper-triangular `x` (in `𝔰𝔭` for type C), compare
/// the orbital equations with the existence of `V ∈ X_w(𝔽_p)` such that
/// `(V, x)` passes the conormal equations. Passing `x` also get a witness
/// from `orbital_witness`, checked independently.
pub fn verify_orbital(w: &Permutation, ctx: &GrassContext, field: Field, opts: &SweepOptions) -> Result<SweepReport> {
    check_rep(w, ctx)?;
    let start = Instant::now();
    let (base, _) = sweep_base(ctx, field, &opts.budget)?;
    let sets = passing_sets(&base, w, ctx, opts)?;
    let reached: HashSet<&Matrix> = sets.iter().flatten().filter(|(_, s)| *s).map(|(x, _)| x).collect();
    let xs: Vec<Matrix> = enumerate_upper_nilpotents(ctx, field, &opts.budget)?.collect();
    let tally = with_pool(opts.jobs, || {
        xs.par_iter()
            .enumerate()
            .map(|(k, x)| {
                let mut t = Tally::default();
                let lhs = orbital_test(x, w, ctx)?;
                let rhs = reached.contains(x);
                let mut witnessed = true;
                if lhs {
                    t.passing += 1;
                    match orbital_witness(x, w, ctx) {
                        Ok(v) => {
                            let pt = ConormalPoint::new_unchecked(v, x.clone());
                            witnessed = is_cotangent_point(pt.v(), x, ctx) && conormal_equations_test(&pt, w, ctx)?;
                            t.constructions += witnessed as u64;
                        }
                        Err(Error::InternalContradiction(_)) => {
                            t.tripwires += 1;
                            witnessed = false;
                        }
                        Err(e) => return Err(e),
                    }
                }
                t.record(k as u64, lhs == rhs && witnessed, || {
                    json!({ "x": x.to_json(), "orbital_test": lhs, "reached": rhs, "witness_ok": witnessed })
                });
                Ok(t)
            })
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
    })??;
    Ok(SweepReport {
        suite: "orbital",
        context: context_json(w, ctx, field),
        tally,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// The sweep suites by name.
pub const SUITES: [&str; 3] = ["theorem-b", "geneqn", "orbital"];

pub fn run_suite(
    suite: &str,
    w: &Permutation,
    ctx: &GrassContext,
    field: Field,
    opts: &SweepOptions,
) -> Result<SweepReport> {
    match suite {
        "theorem-b" => verify_theorem_b(w, ctx, field, opts),
        "geneqn" => verify_geneqn(w, ctx, field, opts),
        "orbital" => verify_orbital(w, ctx, field, opts),
        other => Err(Error::usage(format!("unknown suite {other:?}"))),
    }
}
