//! `forms4d`: batch JSON front end for the forms4d library.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "forms4d", version, about = "Exact invariants of integral forms, group rings and presentations.")]
#[command(after_help = "Every command prints one JSON object {status, payload, diagnostics}.\n\
Exit codes: 0 ok, 1 input error, 2 cap exceeded.\n\
FORMS4D_PRECISION sets the digits used by the embedding check of `trace-form --conductor` (default 30).")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form U·A·V = S of an integer matrix {"rows": [[...]]}
    Snf { file: PathBuf },
    /// H1 of a presentation {"generators": g, "relators": [[±i, ...]]} via SNF of the exponent-sum matrix
    Abelianize {
        file: PathBuf,
        /// Append the automorphism report of H1 (the finite Galois surrogate)
        #[arg(long)]
        galois: bool,
    },
    /// Trace forms: p<1> for an odd prime, the 2^(n+1)-dimensional diagonal form, or tr(xy) on Z[zeta_n]
    TraceForm(TraceFormArgs),
    /// Group ring Z[G] of {"abelian_invariants": [...]} or {"cayley_table": [[...]]}
    GroupRing {
        file: PathBuf,
        /// Frobenius form Q(x,y) = tr(xy) with symmetry and commutativity checks
        #[arg(long)]
        frobenius: bool,
        /// Wedderburn census of Q[G] into cyclotomic fields (abelian groups)
        #[arg(long)]
        decompose: bool,
        /// Order and commutativity of Aut(G) (abelian groups)
        #[arg(long)]
        aut: bool,
    },
    /// Rokhlin (signature mod 16) and Donaldson (definite implies diagonal) checks on a unimodular form
    AnalyzeForm {
        #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
        file: Option<PathBuf>,
        /// Built-in form: e8, e8e8 or In:<n>
        #[arg(long)]
        fixture: Option<String>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TraceFormArgs {
    /// Odd prime p: the form p<1>
    #[arg(long)]
    prime: Option<u64>,
    /// n >= 4: the diagonal form on 2^(n+1) coordinates, with asserted and computed signatures
    #[arg(long = "two-power")]
    two_power: Option<u32>,
    /// n <= 64: Gram of tr(xy) on the power basis of Z[zeta_n]
    #[arg(long)]
    conductor: Option<u64>,
}

fn emit(status: &str, payload: Value, diagnostics: Vec<String>) {
    let result = json!({ "status": status, "payload": payload, "diagnostics": diagnostics });
    println!("{}", serde_json::to_string_pretty(&result).expect("JSON value serializes"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            emit("error", Value::Null, vec![e.render().to_string().trim_end().to_string()]);
            return ExitCode::from(1);
        }
    };
    match commands::run(cli.command) {
        Ok(out) => {
            emit("ok", out.payload, out.diagnostics);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = e.exit_code();
            emit("error", Value::Null, vec![e.to_string()]);
            ExitCode::from(code)
        }
    }
}
