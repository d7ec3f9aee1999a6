use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use conormal_core::oracle::Budget;
use conormal_core::weyl::{GrassContext, Permutation};
use conormal_core::{Error, Field, Result};

mod commands;

/// Exact rank conditions for conormal varieties of Schubert varieties.
///
/// Every subcommand prints one JSON document on stdout.
#[derive(Parser, Debug)]
#[command(name = "conormal-kit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CtxArgs {
    /// Grassmannian type.
    #[arg(long = "type", value_parser = ["A", "C"])]
    pub kind: Option<String>,
    /// Ambient dimension (type A; in type C it must be 2d if given).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Permutation in one-line notation, e.g. 2,4,1,3.
    #[arg(long)]
    pub w: Option<String>,
    /// Prime field F_p.
    #[arg(long, conflicts_with = "field")]
    pub p: Option<u64>,
    /// Field: Q, or a prime (as 5 or F5).
    #[arg(long)]
    pub field: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// JSON payload file; `-` reads stdin.
    #[arg(long, default_value = "-")]
    pub input: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Block profile, flag shape and u_w of a minimal representative.
    Profile {
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// Is V in the Schubert variety X_w?
    CheckSchubert {
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        input: InputArgs,
        /// Exit 1 when the answer is no.
        #[arg(long)]
        strict: bool,
    },
    /// Does the cotangent point (V, x) satisfy the conormal equations?
    CheckConormal {
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        strict: bool,
    },
    /// Does the strictly upper-triangular x satisfy the orbital equations?
    CheckOrbital {
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        strict: bool,
    },
    /// Lift a point satisfying the conormal equations to a flag.
    LiftFlag {
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Insertion tableau of --w, or the permutations of a two-column tableau.
    Rsk {
        #[arg(long)]
        w: Option<String>,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Rectified windows of a two-column tableau.
    Jdt {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, requires = "j")]
        i: Option<usize>,
        #[arg(long, requires = "i")]
        j: Option<usize>,
    },
    /// Exhaustive verification sweeps over a prime field.
    Verify {
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long, default_value = "all", value_parser = ["theorem-b", "geneqn", "orbital", "identities", "all"])]
        suite: String,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Largest ambient dimension for the identities suite (default n).
        #[arg(long)]
        limit_n: Option<usize>,
    },
}

/// A successful response and its exit code.
pub struct Outcome {
    pub body: Value,
    pub code: u8,
}

impl Outcome {
    pub fn ok(body: Value) -> Outcome {
        Outcome { body, code: 0 }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::PreconditionViolation { .. } => 2,
        Error::Resource { .. } => 3,
        Error::InternalContradiction(_) => 4,
    }
}

fn emit(mut body: Value, ok: bool) {
    if let Value::Object(map) = &mut body {
        map.insert("ok".into(), json!(ok));
    }
    println!("{body}");
}

fn fail(kind: &str, detail: String, code: u8) -> ExitCode {
    eprintln!("conormal-kit: {detail}");
    emit(json!({ "error": { "kind": kind, "detail": detail } }), false);
    ExitCode::from(code)
}

pub fn read_payload(input: &InputArgs) -> Result<Value> {
    let text = if input.input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Usage(format!("cannot read stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&input.input).map_err(|e| Error::Usage(format!("cannot read {}: {e}", input.input)))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Usage(format!("invalid JSON input: {e}")))
}

pub fn parse_field(s: &str) -> Result<Field> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") {
        return Ok(Field::rationals());
    }
    let digits = s.strip_prefix(['F', 'f']).unwrap_or(s);
    let p: u64 = digits
        .parse()
        .map_err(|_| Error::Usage(format!("field must be Q or a prime, got {s:?}")))?;
    Field::prime(p)
}

/// Flags win over the payload's "ctx".
pub fn resolve_ctx(args: &CtxArgs, payload: Option<&Value>) -> Result<GrassContext> {
    if args.kind.is_some() || args.d.is_some() || args.n.is_some() {
        let d = args.d.ok_or_else(|| Error::Usage("--d is required".into()))?;
        return match args.kind.as_deref().unwrap_or("A") {
            "C" => {
                if args.n.is_some_and(|n| n != 2 * d) {
                    return Err(Error::Usage("type C needs n = 2d".into()));
                }
                GrassContext::type_c(d)
            }
            _ => GrassContext::type_a(args.n.ok_or_else(|| Error::Usage("--n is required for type A".into()))?, d),
        };
    }
    match payload.and_then(|p| p.get("ctx")) {
        Some(c) => GrassContext::from_json(c),
        None => Err(Error::Usage("no context: pass --type/--n/--d or a \"ctx\" field".into())),
    }
}

/// `--p`/`--field`, else the payload's "field", else 2 in type A and 3 in type C.
pub fn resolve_field(args: &CtxArgs, ctx: &GrassContext, payload: Option<&Value>) -> Result<Field> {
    if let Some(p) = args.p {
        return Field::prime(p);
    }
    if let Some(f) = &args.field {
        return parse_field(f);
    }
    match payload.and_then(|p| p.get("field")) {
        Some(Value::String(s)) => parse_field(s),
        Some(Value::Number(n)) => Field::prime(n.as_u64().ok_or_else(|| Error::Usage("bad \"field\"".into()))?),
        Some(_) => Err(Error::Usage("\"field\" must be a string or a prime".into())),
        None => Field::prime(if ctx.is_type_c() { 3 } else { 2 }),
    }
}

pub fn resolve_w(w: Option<&str>, payload: Option<&Value>) -> Result<Permutation> {
    match (w, payload.and_then(|p| p.get("w"))) {
        (Some(s), _) => Permutation::parse(s),
        (None, Some(v)) => Permutation::from_json(v),
        (None, None) => Err(Error::Usage("no permutation: pass --w or a \"w\" field".into())),
    }
}

/// `CONORMAL_KIT_GUARD` sets every budget to the given integer.
pub fn budget() -> Result<Budget> {
    match std::env::var("CONORMAL_KIT_GUARD") {
        Ok(s) => s
            .trim()
            .parse::<u128>()
            .map(Budget::uniform)
            .map_err(|_| Error::Usage(format!("CONORMAL_KIT_GUARD must be an integer, got {s:?}"))),
        Err(_) => Ok(Budget::default()),
    }
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Profile { ctx } => commands::profile(&ctx),
        Command::CheckSchubert { ctx, input, strict } => commands::check_schubert(&ctx, &read_payload(&input)?, strict),
        Command::CheckConormal { ctx, input, strict } => commands::check_conormal(&ctx, &read_payload(&input)?, strict),
        Command::CheckOrbital { ctx, input, strict } => commands::check_orbital(&ctx, &read_payload(&input)?, strict),
        Command::LiftFlag { ctx, input } => commands::lift_flag(&ctx, &read_payload(&input)?),
        Command::Rsk { w: Some(w), .. } => commands::rsk_word(&w),
        Command::Rsk { w: None, input } => commands::rsk_tableau(&read_payload(&input)?),
        Command::Jdt { input, i, j } => commands::jdt(&read_payload(&input)?, i.zip(j)),
        Command::Verify { ctx, suite, jobs, limit_n } => commands::verify(&ctx, &suite, jobs, limit_n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let detail = e.render().to_string();
            return fail("usage", detail.trim().to_string(), 2);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            emit(out.body, out.code == 0);
            ExitCode::from(out.code)
        }
        Err(e) => fail(e.kind(), e.to_string(), exit_code(&e)),
    }
}
