//! Exhaustive checks of the combinatorial identities the rank conditions
//! rest on.

use std::time::Instant;

use serde_json::json;

use super::enumerate::enumerate_upper_nilpotents;
use super::{Budget, SweepReport, Tally};
use crate::conormal::image_quotient_rank;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Subspace};
use crate::profile::{block_profile, mw_at_profile, BlockProfile};
use crate::weyl::{enumerate_minimal_reps, is_type_c_element, mw, GrassContext, Permutation};

/// Largest ambient dimension `verify_identities` accepts.
pub const IDENTITY_LIMIT: usize = 10;

/// Matrices for the quotient-rank family are enumerated up to this size.
const QUOTIENT_RANK_LIMIT: usize = 5;

/// Which of the two mutually exclusive situations a type C minimal
/// representative is in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TiflipCase {
    /// `t_l = 2d`: `r_i + c_{l-i} = d` and `t_i + t_{l-i} = 2d` for `0 ≤ i ≤ l`.
    TopFull,
    /// `w(1) = 1`: `r_i + c_{l+1-i} = d` for `0 ≤ i ≤ l` and
    /// `t_i + t_{l+1-i} = 2d` for `0 ≤ i ≤ l + 1`.
    StartsAtOne,
}

impl TiflipCase {
    pub fn of(profile: &BlockProfile) -> Option<TiflipCase> {
        let top = profile.t[profile.l] == 2 * profile.d;
        let one = profile.tprime.first() == Some(&0);
        match (top, one) {
            (true, false) => Some(TiflipCase::TopFull),
            (false, true) => Some(TiflipCase::StartsAtOne),
            _ => None,
        }
    }
}

/// The complementary-sum identities for the given case.
pub fn tiflip_holds(profile: &BlockProfile, case: TiflipCase) -> bool {
    let (l, d) = (profile.l, profile.d);
    let (t, r, c) = (&profile.t, &profile.r, &profile.c);
    match case {
        TiflipCase::TopFull => (0..=l).all(|i| r[i] + c[l - i] == d && t[i] + t[l - i] == 2 * d),
        TiflipCase::StartsAtOne => {
            (0..=l).all(|i| r[i] + c[l + 1 - i] == d) && (0..=l + 1).all(|i| t[i] + t[l + 1 - i] == 2 * d)
        }
    }
}

/// All `2^d d!` type C elements of `S_{2d}`.
pub fn type_c_elements(d: usize) -> Vec<Permutation> {
    fn perms(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for k in 0..rest.len() {
            let v = rest.remove(k);
            cur.push(v);
            perms(rest, cur, out);
            cur.pop();
            rest.insert(k, v);
        }
    }
    let n = 2 * d;
    let mut sigmas = Vec::new();
    perms(&mut (1..=d).collect(), &mut Vec::new(), &mut sigmas);
    let mut out = Vec::new();
    for sigma in &sigmas {
        for signs in 0u32..(1 << d) {
            let mut word = vec![0; n];
            for (i, &s) in sigma.iter().enumerate() {
                let v = if signs >> i & 1 == 1 { n + 1 - s } else { s };
                word[i] = v;
                word[n - 1 - i] = n + 1 - v;
            }
            out.push(Permutation::new(word).expect("signed permutation"));
        }
    }
    out
}

fn mw_family(w: &Permutation, ctx: &GrassContext) -> Result<bool> {
    let p = block_profile(w, ctx)?;
    let (n, d, l) = (ctx.n(), ctx.d(), p.l);
    if p.r[l] != d || p.c[l + 1] != n - d {
        return Ok(false);
    }
    for i in 1..=l {
        for j in 1..=l {
            let direct = (mw(w, p.t[i], p.r[j])?, mw(w, p.t[i], d + p.c[j])?);
            if mw_at_profile(&p, i, j)? != direct {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn anti_diagonal(w: &Permutation, d: usize) -> Result<bool> {
    let n = 2 * d;
    for i in 1..=n {
        for j in 1..=n {
            if n + mw(w, i, j)? != i + j + mw(w, n - i, n - j)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Check, exhaustively:
/// the profile form of `m_w` for every type A minimal representative with
/// `n ≤ limit_n`; the complementary sums for type C minimal representatives
/// with `2d ≤ limit_n`; the anti-diagonal symmetry of `m_w` for every type C
/// element with `2d ≤ limit_n`; and `dim(xE(a)/E(b))` as a submatrix rank for
/// strictly upper `x` over `𝔽_2`, `n ≤ min(limit_n, 5)`.
pub fn verify_identities(limit_n: usize) -> Result<SweepReport> {
    if limit_n > IDENTITY_LIMIT {
        return Err(Error::Resource {
            what: "identity sweep",
            needed: limit_n as u128,
            budget: IDENTITY_LIMIT as u128,
        });
    }
    let start = Instant::now();
    let mut tally = Tally::default();
    let mut key = 0u64;
    let mut next = || {
        key += 1;
        key
    };

    for n in 2..=limit_n {
        for d in 1..n {
            let ctx = GrassContext::type_a(n, d)?;
            for w in enumerate_minimal_reps(&ctx)? {
                let ok = mw_family(&w, &ctx)?;
                tally.record(next(), ok, || json!({ "family": "mw", "n": n, "d": d, "w": w.word() }));
            }
        }
    }

    for d in 1..=limit_n / 2 {
        let ctx = GrassContext::type_c(d)?;
        for w in enumerate_minimal_reps(&ctx)? {
            let p = block_profile(&w, &ctx)?;
            let case = TiflipCase::of(&p);
            let ok = case.is_some_and(|c| tiflip_holds(&p, c));
            tally.record(next(), ok, || json!({ "family": "tiflip", "d": d, "w": w.word() }));
        }
        for w in type_c_elements(d) {
            let ok = is_type_c_element(&w)? && anti_diagonal(&w, d)?;
            tally.record(next(), ok, || json!({ "family": "anti-diagonal", "d": d, "w": w.word() }));
        }
    }

    let f2 = Field::prime(2).expect("2 is prime");
    for n in 2..=limit_n.min(QUOTIENT_RANK_LIMIT) {
        let ctx = GrassContext::type_a(n, 1)?;
        for x in enumerate_upper_nilpotents(&ctx, f2, &Budget::default())? {
            let mut ok = true;
            for a in 0..=n {
                let img = Subspace::standard(f2, n, a).apply(&x)?;
                for b in 0..=n {
                    ok &= image_quotient_rank(&x, a, b) == img.quotient_dim(&Subspace::standard(f2, n, b))?;
                }
            }
            tally.record(next(), ok, || json!({ "family": "quotient-rank", "x": x.to_json() }));
        }
    }

    Ok(SweepReport {
        suite: "identities",
        context: json!({ "limit_n": limit_n }),
        tally,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_c_element_counts() {
        assert_eq!(type_c_elements(1).len(), 2);
        assert_eq!(type_c_elements(2).len(), 8);
        assert_eq!(type_c_elements(3).len(), 48);
        assert!(type_c_elements(3).iter().all(|w| is_type_c_element(w).unwrap()));
    }

    #[test]
    fn tiflip_cases() {
        let ctx = GrassContext::type_c(2).unwrap();
        let id = block_profile(&Permutation::identity(4), &ctx).unwrap();
        assert_eq!(TiflipCase::of(&id), Some(TiflipCase::StartsAtOne));
        assert!(!tiflip_holds(&id, TiflipCase::TopFull));
        assert!(tiflip_holds(&id, TiflipCase::StartsAtOne));
        let w = Permutation::new(vec![2, 4, 1, 3]).unwrap();
        let p = block_profile(&w, &ctx).unwrap();
        assert_eq!(TiflipCase::of(&p), Some(TiflipCase::TopFull));
        assert!(tiflip_holds(&p, TiflipCase::TopFull));
    }

    #[test]
    fn small_identity_sweep() {
        let r = verify_identities(4).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert!(r.tally.points > 0);
        assert!(verify_identities(11).is_err());
    }
}
