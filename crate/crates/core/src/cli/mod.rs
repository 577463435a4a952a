//! The `nonsimple` command line: every subcommand is a thin shell over one library
//! operation and prints JSON on standard output.
//!
//! Exit codes: 0 success, 1 a failed certificate or validation (the JSON says why),
//! 2 malformed input. Every error object has a `kind` field.

pub mod json;

use std::ffi::OsString;
use std::io::Read;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finite::{enumerate_allowed, standard_allowed};
use crate::humbert::{
    complementary_period, construct_member, detect_singular_relations_with_jobs, locus_equations, Member,
};
use crate::linalg::leading_minors;
use crate::polarization::PolarizationType;
use crate::quotient::{product, quotient_ppav};
use crate::sample::sample_member;
use crate::torus::{certify_nonsimple, embed, restricted_type, PolarizedTorus, SiegelMatrix};
use json::Codec;

#[derive(Parser, Debug)]
#[command(name = "nonsimple", version, about = "Exact period-matrix computations for non-simple abelian varieties")]
struct Cli {
    /// Add decimal renderings with this many digits next to exact values.
    #[arg(long, global = true)]
    float_digits: Option<usize>,
    /// Worker threads for the commands that can use them (detect).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that Z is a Siegel matrix and D a divisor chain of matching length.
    Validate {
        #[arg(long)]
        z: String,
        #[arg(long = "type")]
        ty: String,
    },
    /// Linear equations of the locus for (g, k, D).
    Equations {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "type")]
        ty: String,
    },
    /// Build a member of the locus from Z_M, Z_N and D.
    Construct {
        #[arg(long)]
        zm: String,
        #[arg(long)]
        zn: String,
        #[arg(long = "type")]
        ty: String,
    },
    /// Certify that C spans an abelian subvariety of type D in the principal torus Z.
    Certify {
        #[arg(long)]
        z: String,
        #[arg(long)]
        c: String,
        #[arg(long = "type")]
        ty: String,
    },
    /// Period matrix of the complementary subvariety for Z on the locus.
    Complement {
        #[arg(long)]
        z: String,
        #[arg(long = "type")]
        ty: String,
    },
    /// Type of the principal polarization restricted to the sublattice C.
    Restrict {
        #[arg(long)]
        z: String,
        #[arg(long)]
        c: String,
    },
    /// Singular relations of a genus-2 period matrix up to a height bound.
    Detect {
        #[arg(long)]
        z: String,
        #[arg(long)]
        height: u64,
        #[arg(long)]
        all_discriminants: bool,
    },
    /// Principal quotient of M x N by an allowed subgroup (the standard one by default).
    Quotient {
        #[arg(long)]
        zm: String,
        #[arg(long)]
        zn: String,
        #[arg(long = "type")]
        ty: String,
        /// Position in the enumerate-allowed list.
        #[arg(long)]
        subgroup_index: Option<usize>,
    },
    /// All allowed isotropic subgroups for type D.
    EnumerateAllowed {
        #[arg(long = "type")]
        ty: String,
    },
    /// Random member of the locus from seeded Z_M, Z_N of bounded height.
    Sample {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        height: u64,
    },
}

/// Outcome of one command: exit code and JSON body.
struct Outcome {
    code: i32,
    body: Value,
}

impl Outcome {
    fn ok(body: Value) -> Self {
        Outcome { code: 0, body }
    }

    /// Exit 1 unless `passed`.
    fn checked(passed: bool, body: Value) -> Self {
        Outcome { code: if passed { 0 } else { 1 }, body }
    }
}

/// Library errors caused by the input itself rather than by a failed check.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::DimensionMismatch(_)
            | Error::InvalidType(_)
            | Error::InvalidDimensions(_)
            | Error::KTooLarge { .. }
            | Error::TypeMismatch
            | Error::TypesNotComplementary(_)
            | Error::BoundExceeded { .. }
            | Error::NotWellDefined
            | Error::NotAlternating
    )
}

fn error_body(kind: &str, message: String) -> Value {
    json!({"kind": kind, "message": message})
}

/// Runs the command line; returns the exit code and everything meant for stdout.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => (2, render(&error_body("Usage", e.to_string()))),
            };
        }
    };
    let codec = Codec { float_digits: cli.float_digits };
    let mut stdin_used = false;
    match dispatch(&cli, &codec, &mut stdin_used) {
        Ok(out) => (out.code, render(&out.body)),
        Err(e) => {
            let code = if is_input_error(&e) { 2 } else { 1 };
            (code, render(&error_body(e.kind(), e.to_string())))
        }
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn read_json(path: &str, stdin_used: &mut bool) -> Result<Value> {
    let text = if path == "-" {
        if std::mem::replace(stdin_used, true) {
            return Err(Error::Parse("standard input can be read only once".into()));
        }
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn read_siegel(path: &str, stdin_used: &mut bool) -> Result<SiegelMatrix> {
    SiegelMatrix::new(json::parse_complex_matrix(&read_json(path, stdin_used)?)?)
}

fn parse_type(s: &str) -> Result<PolarizationType> {
    s.parse()
}

fn member_body(codec: &Codec, m: &Member) -> Value {
    json!({
        "z_a": codec.complex_matrix(m.z_a.matrix()),
        "c_m": codec.int_matrix(&m.c_m),
        "c_n": codec.int_matrix(&m.c_n),
        "certificate": codec.certificate(&m.certificate),
    })
}

fn dispatch(cli: &Cli, codec: &Codec, stdin_used: &mut bool) -> Result<Outcome> {
    match &cli.command {
        Command::Validate { z, ty } => {
            let ty = parse_type(ty)?;
            let raw = json::parse_complex_matrix(&read_json(z, stdin_used)?)?;
            let z = SiegelMatrix::new(raw)?;
            if ty.len() != z.g() {
                return Err(Error::DimensionMismatch(format!("type {ty} for a {g}x{g} period matrix", g = z.g())));
            }
            let minors: Vec<Value> = leading_minors(&z.imaginary()).iter().map(|m| codec.rational(m)).collect();
            Ok(Outcome::ok(json!({
                "valid": true,
                "g": z.g(),
                "type": codec.ty(&ty),
                "principal": ty.is_principal(),
                "leading_minors": minors,
            })))
        }
        Command::Equations { g, k, ty } => {
            let eqs = locus_equations(*g, *k, &parse_type(ty)?)?;
            Ok(Outcome::ok(serde_json::to_value(&eqs).expect("serializable")))
        }
        Command::Construct { zm, zn, ty } => {
            let ty = parse_type(ty)?;
            let z_m = read_siegel(zm, stdin_used)?;
            let z_n = read_siegel(zn, stdin_used)?;
            let m = construct_member(&z_m, &z_n, &ty)?;
            Ok(Outcome::checked(m.certificate.passed, member_body(codec, &m)))
        }
        Command::Certify { z, c, ty } => {
            let ty = parse_type(ty)?;
            let z = read_siegel(z, stdin_used)?;
            let c = json::parse_int_matrix(&read_json(c, stdin_used)?)?;
            let report = certify_nonsimple(&PolarizedTorus::principal(z), &c, &ty);
            let mut body = codec.certificate(&report);
            if !report.passed {
                body["kind"] = json!("CertificateFailed");
            }
            Ok(Outcome::checked(report.passed, body))
        }
        Command::Complement { z, ty } => {
            let ty = parse_type(ty)?;
            let z = read_siegel(z, stdin_used)?;
            let z_n = complementary_period(&z, &ty)?;
            Ok(Outcome::ok(json!({"z_n": codec.complex_matrix(z_n.matrix())})))
        }
        Command::Restrict { z, c } => {
            let z = read_siegel(z, stdin_used)?;
            let c = json::parse_int_matrix(&read_json(c, stdin_used)?)?;
            let e = embed(&PolarizedTorus::principal(z), &c)?;
            let ty = restricted_type(&e)?;
            Ok(Outcome::ok(json!({"type": codec.ty(&ty), "primitive": e.is_primitive()})))
        }
        Command::Detect { z, height, all_discriminants } => {
            let z = read_siegel(z, stdin_used)?;
            let rels = detect_singular_relations_with_jobs(&z, *height, *all_discriminants, cli.jobs)?;
            Ok(Outcome::ok(serde_json::to_value(&rels).expect("serializable")))
        }
        Command::Quotient { zm, zn, ty, subgroup_index } => {
            let ty = parse_type(ty)?;
            let z_m = read_siegel(zm, stdin_used)?;
            let z_n = read_siegel(zn, stdin_used)?;
            let g = z_m.g() + z_n.g();
            let m = PolarizedTorus::new(z_m, ty.clone())?;
            let n = PolarizedTorus::new(z_n, ty.complementary(g)?)?;
            let p = product(&m, &n)?;
            let k = match subgroup_index {
                None => standard_allowed(&ty),
                Some(i) => {
                    let all = enumerate_allowed(&ty)?;
                    let count = all.len();
                    all.into_iter().nth(*i).ok_or_else(|| {
                        Error::InvalidDimensions(format!("subgroup index {i} out of range, there are {count}"))
                    })?
                }
            };
            let q = quotient_ppav(&p, &k)?;
            let report = certify_nonsimple(&PolarizedTorus::principal(q.z_prime.clone()), &q.c_m, &ty);
            Ok(Outcome::checked(
                report.passed,
                json!({
                    "z_prime": codec.complex_matrix(q.z_prime.matrix()),
                    "induced_type": codec.ty(&q.induced_type),
                    "lattice_index": q.lattice_index.to_string(),
                    "basis_change": codec.rational_matrix(&q.basis_change),
                    "c_m": codec.int_matrix(&q.c_m),
                    "c_n": codec.int_matrix(&q.c_n),
                    "certificate": codec.certificate(&report),
                }),
            ))
        }
        Command::EnumerateAllowed { ty } => {
            let ty = parse_type(ty)?;
            let all = enumerate_allowed(&ty)?;
            let subgroups: Vec<Value> = all
                .iter()
                .enumerate()
                .map(|(i, k)| json!({"index": i, "order": k.order().to_string(), "generators": k.canonical_generators()}))
                .collect();
            Ok(Outcome::ok(json!({"type": codec.ty(&ty), "count": all.len(), "subgroups": subgroups})))
        }
        Command::Sample { g, k, ty, seed, height } => {
            let ty = parse_type(ty)?;
            if ty.len() != *k {
                return Err(Error::DimensionMismatch(format!("type {ty} has length {}, k = {k}", ty.len())));
            }
            if 2 * k > *g {
                return Err(Error::KTooLarge { g: *g, k: *k });
            }
            let (z_m, z_n, m) = sample_member(*g, &ty, *seed, *height)?;
            let mut body = member_body(codec, &m);
            body["seed"] = json!(seed);
            body["z_m"] = codec.complex_matrix(z_m.matrix());
            body["z_n"] = codec.complex_matrix(z_n.matrix());
            Ok(Outcome::checked(m.certificate.passed, body))
        }
    }
}
