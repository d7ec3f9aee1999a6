use serde_json::{json, Value};

use conormal_core::conormal::{conormal_report, lift_flag as lift, ConormalPoint};
use conormal_core::oracle::{run_suite, verify_identities, SweepOptions, SweepReport, SUITES};
use conormal_core::orbital::{
    jdt_window, jordan_type_square_zero, orbital_failures, orbital_test, orbital_witness, rsk_left, tableau_profile,
    tableau_to_wv, window_bound, StandardTableau,
};
use conormal_core::profile::{block_profile, flag_shape, uw_space};
use conormal_core::schubert::{in_cell, schubert_violations};
use conormal_core::weyl::{enumerate_minimal_reps, GrassContext, Permutation};
use conormal_core::{Error, Field, Matrix, Result, Subspace, SymplecticForm};

use crate::{budget, resolve_ctx, resolve_field, resolve_w, CtxArgs, Outcome};

struct Point {
    ctx: GrassContext,
    w: Permutation,
    field: Field,
}

fn point(args: &CtxArgs, payload: &Value) -> Result<Point> {
    let ctx = resolve_ctx(args, Some(payload))?;
    let field = resolve_field(args, &ctx, Some(payload))?;
    let w = resolve_w(args.w.as_deref(), Some(payload))?;
    Ok(Point { ctx, w, field })
}

fn get<'a>(payload: &'a Value, key: &str) -> Result<&'a Value> {
    payload
        .get(key)
        .ok_or_else(|| Error::Usage(format!("payload needs a {key:?} field")))
}

fn subspace(payload: &Value, p: &Point) -> Result<Subspace> {
    let v = Subspace::from_json(get(payload, "V")?, p.field)?;
    if v.ambient_dim() != p.ctx.n() {
        return Err(Error::Usage(format!("V lives in dimension {}, not {}", v.ambient_dim(), p.ctx.n())));
    }
    Ok(v)
}

fn matrix(payload: &Value, p: &Point) -> Result<Matrix> {
    let n = p.ctx.n();
    let x = Matrix::from_json(get(payload, "x")?, p.field, Some(n))?;
    if x.rows() != n {
        return Err(Error::Usage(format!("x must be {n}x{n}")));
    }
    Ok(x)
}

fn verdict(member: bool, strict: bool, body: Value) -> Outcome {
    Outcome {
        body,
        code: if strict && !member { 1 } else { 0 },
    }
}

pub fn profile(args: &CtxArgs) -> Result<Outcome> {
    let ctx = resolve_ctx(args, None)?;
    let field = resolve_field(args, &ctx, None)?;
    let w = resolve_w(args.w.as_deref(), None)?;
    let prof = block_profile(&w, &ctx)?;
    let shape = flag_shape(&prof, &ctx);
    let uw = uw_space(&w, &ctx, field)?;
    let mut body = prof.to_json();
    body["q"] = json!(shape.q);
    body["uw_pairs"] = json!(uw.pairs);
    body["uw_dim"] = json!(uw.dim());
    Ok(Outcome::ok(body))
}

pub fn check_schubert(args: &CtxArgs, payload: &Value, strict: bool) -> Result<Outcome> {
    let p = point(args, payload)?;
    let v = subspace(payload, &p)?;
    let violations = schubert_violations(&v, &p.w, &p.ctx)?;
    let mut member = violations.is_empty();
    let mut body = json!({
        "violations": violations.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        "in_cell": in_cell(&v, &p.w, &p.ctx)?,
    });
    if p.ctx.is_type_c() {
        let lagrangian = SymplecticForm::new(p.field, p.ctx.d())?.is_lagrangian(&v)?;
        member &= lagrangian;
        body["lagrangian"] = json!(lagrangian);
    }
    body["member"] = json!(member);
    Ok(verdict(member, strict, body))
}

pub fn check_conormal(args: &CtxArgs, payload: &Value, strict: bool) -> Result<Outcome> {
    let p = point(args, payload)?;
    let pt = ConormalPoint::new(subspace(payload, &p)?, matrix(payload, &p)?, &p.ctx)?;
    let report = conormal_report(&pt, &p.w, &p.ctx)?;
    let member = report.member();
    let body = json!({
        "member": member,
        "schubert_violations": report.schubert_violations.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        "failed_inequalities": report.failed_inequalities.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
    });
    Ok(verdict(member, strict, body))
}

pub fn check_orbital(args: &CtxArgs, payload: &Value, strict: bool) -> Result<Outcome> {
    let p = point(args, payload)?;
    let x = matrix(payload, &p)?;
    let member = orbital_test(&x, &p.w, &p.ctx)?;
    let failed = orbital_failures(&x, &p.w, &p.ctx)?;
    let witness = if member {
        orbital_witness(&x, &p.w, &p.ctx)?.to_json()
    } else {
        Value::Null
    };
    let jordan = jordan_type_square_zero(&x).map_or(Value::Null, |j| json!(j.parts()));
    let body = json!({
        "member": member,
        "failed_inequalities": failed.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        "witness": witness,
        "jordan_type": jordan,
    });
    Ok(verdict(member, strict, body))
}

pub fn lift_flag(args: &CtxArgs, payload: &Value) -> Result<Outcome> {
    let p = point(args, payload)?;
    let pt = ConormalPoint::new(subspace(payload, &p)?, matrix(payload, &p)?, &p.ctx)?;
    Ok(Outcome::ok(lift(&pt, &p.w, &p.ctx)?.to_json()))
}

pub fn rsk_word(w: &str) -> Result<Outcome> {
    let w = Permutation::parse(w)?;
    Ok(Outcome::ok(json!({ "w": w.to_json(), "tableau": rsk_left(&w).to_json() })))
}

fn tableau(payload: &Value) -> Result<StandardTableau> {
    StandardTableau::from_json(payload.get("tableau").unwrap_or(payload))
}

pub fn rsk_tableau(payload: &Value) -> Result<Outcome> {
    let t = tableau(payload)?;
    let (w, v) = tableau_to_wv(&t)?;
    Ok(Outcome::ok(json!({ "tableau": t.to_json(), "w": w.to_json(), "v": v.to_json() })))
}

pub fn jdt(payload: &Value, only: Option<(usize, usize)>) -> Result<Outcome> {
    let t = tableau(payload)?;
    let prof = tableau_profile(&t)?;
    let pairs: Vec<(usize, usize)> = match only {
        Some((i, j)) if j < i && i <= prof.l + 1 => vec![(i, j)],
        Some((i, j)) => {
            return Err(Error::Usage(format!("need 0 <= j < i <= {}, got i={i} j={j}", prof.l + 1)));
        }
        None => prof.index_pairs().collect(),
    };
    let mut recover = true;
    let mut windows = Vec::new();
    for (i, j) in pairs {
        let rect = jdt_window(&t, i, j)?;
        let (f, g) = (rect.column(1).len(), window_bound(&prof, i, j));
        recover &= f == g;
        windows.push(json!({
            "i": i, "j": j, "lo": prof.t[j], "hi": prof.t[i],
            "rectified": rect.to_json(), "f": f, "g": g,
        }));
    }
    Ok(Outcome::ok(json!({ "profile": prof.to_json(), "windows": windows, "recover": recover })))
}

pub fn verify(args: &CtxArgs, suite: &str, jobs: usize, limit_n: Option<usize>) -> Result<Outcome> {
    let ctx = resolve_ctx(args, None)?;
    let field = resolve_field(args, &ctx, None)?;
    if field.characteristic() == 0 {
        return Err(Error::Usage("verification sweeps need a prime field".into()));
    }
    let opts = SweepOptions { budget: budget()?, jobs };
    let reps = match &args.w {
        Some(w) => vec![Permutation::parse(w)?],
        None => enumerate_minimal_reps(&ctx)?,
    };
    let sweeps: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut reports: Vec<SweepReport> = Vec::new();
    for s in sweeps.iter().filter(|s| **s != "identities") {
        for w in &reps {
            reports.push(run_suite(s, w, &ctx, field, &opts)?);
        }
    }
    if suite == "identities" || suite == "all" {
        reports.push(verify_identities(limit_n.unwrap_or(ctx.n()))?);
    }
    let tripwires: u64 = reports.iter().map(|r| r.tally.tripwires).sum();
    let ok = reports.iter().all(SweepReport::passed);
    let code = if tripwires > 0 {
        4
    } else if !ok {
        1
    } else {
        0
    };
    Ok(Outcome {
        body: json!({ "reports": reports.iter().map(SweepReport::to_json).collect::<Vec<_>>() }),
        code,
    })
}
