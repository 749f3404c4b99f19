use std::fs;
use std::path::Path;

use forms4d::cyclotomic::oracle::embedding_trace_oracle;
use forms4d::cyclotomic::{cyclotomic_polynomial, trace_form_gram, CyclotomicElement};
use forms4d::exactla::snf;
use forms4d::formats::{integers_value, matrix_value, parse_group, parse_matrix, parse_presentation};
use forms4d::fpgroup::{abelianize, aut_bruteforce, aut_coprime_formula, galois_surrogate, MAX_BRUTEFORCE_ORDER};
use forms4d::groupring::{frobenius_gram, frobenius_summary, wedderburn_decompose, FiniteGroup};
use forms4d::quadform::trace_form_two_power;
use forms4d::smooth4::{analyze_intersection_form, analyze_trace_form, fixture, h2_from_group_ring, TraceFormKind, MAX_H2_GROUP_ORDER};
use forms4d::{BilinearForm, Error};
use serde_json::{json, Value};

use crate::{Command, TraceFormArgs};

pub const MAX_CONDUCTOR: u64 = 64;
/// Frobenius Grams above this order are summarized without the full matrix.
pub const MAX_PRINTED_GRAM: usize = 64;
const DEFAULT_PRECISION: u32 = 30;

pub struct Output {
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl Output {
    fn new(payload: Value) -> Self {
        Output { payload, diagnostics: Vec::new() }
    }
}

pub enum CliError {
    Input(String),
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Cap(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Cap(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_cap_exceeded() {
            CliError::Cap(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

type CmdResult = Result<Output, CliError>;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload serializes")
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn run(command: Command) -> CmdResult {
    match command {
        Command::Snf { file } => cmd_snf(&file),
        Command::Abelianize { file, galois } => cmd_abelianize(&file, galois),
        Command::TraceForm(args) => cmd_trace_form(&args),
        Command::GroupRing { file, frobenius, decompose, aut } => cmd_group_ring(&file, frobenius, decompose, aut),
        Command::AnalyzeForm { file, fixture } => cmd_analyze_form(file.as_deref(), fixture.as_deref()),
    }
}

fn cmd_snf(file: &Path) -> CmdResult {
    let a = parse_matrix(&read(file)?)?;
    let r = snf(&a)?;
    Ok(Output::new(json!({
        "s": matrix_value(&r.s),
        "u": matrix_value(&r.u),
        "v": matrix_value(&r.v),
        "diagonal": integers_value(&r.diagonal),
        "rank": r.rank(),
    })))
}

fn cmd_abelianize(file: &Path, galois: bool) -> CmdResult {
    let p = parse_presentation(&read(file)?)?;
    if !galois {
        return Ok(Output::new(to_value(&abelianize(&p)?)));
    }
    let (h1, aut) = galois_surrogate(&p)?;
    let mut payload = to_value(&h1);
    payload["galois"] = to_value(&aut);
    Ok(Output::new(payload))
}

fn precision() -> Result<u32, CliError> {
    match std::env::var("FORMS4D_PRECISION") {
        Err(_) => Ok(DEFAULT_PRECISION),
        Ok(s) => s
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|p| (1..=200).contains(p))
            .ok_or_else(|| CliError::Input(format!("FORMS4D_PRECISION must be an integer in 1..=200, got {s:?}"))),
    }
}

fn cmd_trace_form(args: &TraceFormArgs) -> CmdResult {
    if let Some(p) = args.prime {
        let a = analyze_trace_form(TraceFormKind::OddPrime(p))?;
        let form = forms4d::quadform::trace_form_odd_prime(p)?;
        return Ok(Output::new(json!({
            "kind": "odd_prime",
            "p": p,
            "gram": matrix_value(form.gram()),
            "invariants": to_value(&form.invariants()),
            "computed_signature": a.computed_signature,
            "report": to_value(&a.report),
        })));
    }
    if let Some(n) = args.two_power {
        let t = trace_form_two_power(n)?;
        let a = analyze_trace_form(TraceFormKind::TwoPower(n))?;
        let mut out = Output::new(json!({
            "kind": "two_power",
            "n": n,
            "gram": matrix_value(t.form.gram()),
            "invariants": to_value(&t.form.invariants()),
            "computed_signature": a.computed_signature,
            "asserted_signature": a.asserted_signature,
            "signature_discrepancy": a.signature_discrepancy,
            "report": to_value(&a.report),
        }));
        if a.signature_discrepancy {
            out.diagnostics.push(format!(
                "asserted signature {} differs from computed signature {}",
                t.asserted_signature, a.computed_signature
            ));
        }
        return Ok(out);
    }
    let n = args.conductor.expect("clap requires one selector");
    if n > MAX_CONDUCTOR {
        return Err(CliError::Cap(format!("conductor {n} exceeds cap {MAX_CONDUCTOR}")));
    }
    let gram = trace_form_gram(n)?;
    let form = BilinearForm::new(gram.clone())?;
    let digits = precision()?;
    let dim = gram.rows();
    let mut max_error = 0.0f64;
    for k in 0..2 * dim - 1 {
        let z = CyclotomicElement::zeta_pow(n, k)?;
        let exact: f64 = z.trace().to_string().parse().expect("integer trace");
        max_error = max_error.max((exact - embedding_trace_oracle(&z, digits)).abs());
    }
    Ok(Output::new(json!({
        "kind": "conductor",
        "conductor": n,
        "polynomial": cyclotomic_polynomial(n)?.to_string(),
        "gram": matrix_value(&gram),
        "invariants": to_value(&form.invariants()),
        "embedding_check": {
            "precision": digits,
            "max_abs_error": format!("{max_error:.3e}"),
            "passed": max_error < 1e-6,
        },
    })))
}

fn aut_report(group: &FiniteGroup) -> Result<Value, CliError> {
    if group.order() <= MAX_BRUTEFORCE_ORDER {
        return Ok(to_value(&aut_bruteforce(group)?));
    }
    match group.abelian_invariants() {
        Some(inv) => match aut_coprime_formula(inv) {
            Ok(r) => Ok(to_value(&r)),
            Err(Error::NotCoprime(..)) => Err(CliError::Cap(format!(
                "group order {} exceeds brute-force cap {MAX_BRUTEFORCE_ORDER} and invariants {inv:?} are not pairwise coprime",
                group.order()
            ))),
            Err(e) => Err(e.into()),
        },
        None => Err(CliError::Cap(format!(
            "group order {} exceeds brute-force cap {MAX_BRUTEFORCE_ORDER}",
            group.order()
        ))),
    }
}

fn cmd_group_ring(file: &Path, frobenius: bool, decompose: bool, aut: bool) -> CmdResult {
    let group = parse_group(&read(file)?)?;
    let frobenius = frobenius || !(decompose || aut);
    let mut out = Output::new(json!({
        "order": group.order(),
        "abelian": group.is_abelian(),
    }));
    if frobenius {
        let summary = frobenius_summary(&group);
        let mut section = to_value(&summary);
        if group.order() <= MAX_PRINTED_GRAM {
            section["gram"] = matrix_value(&frobenius_gram(&group));
        } else {
            out.diagnostics.push(format!(
                "Gram of order {} omitted (printed up to {MAX_PRINTED_GRAM})",
                group.order()
            ));
        }
        if group.order() <= MAX_H2_GROUP_ORDER {
            let (_, outcome) = h2_from_group_ring(&group)?;
            section["h2"] = to_value(&outcome);
        }
        if !summary.unimodular {
            out.diagnostics.push(format!(
                "Frobenius form has determinant {}; not unimodular",
                summary.determinant
            ));
        }
        out.payload["frobenius"] = section;
    }
    if decompose {
        let w = wedderburn_decompose(&group)?;
        let mut section = to_value(&w);
        section["dimension"] = json!(w.dimension());
        section["matches_invariant_summands"] = json!(w.matches_invariant_summands());
        out.diagnostics.extend(w.notes.iter().cloned());
        out.payload["decompose"] = section;
    }
    if aut {
        out.payload["aut"] = aut_report(&group)?;
    }
    Ok(out)
}

fn cmd_analyze_form(file: Option<&Path>, name: Option<&str>) -> CmdResult {
    let form = match (file, name) {
        (_, Some(name)) => fixture(name)?,
        (Some(file), None) => BilinearForm::new(parse_matrix(&read(file)?)?)?,
        (None, None) => return Err(CliError::Input("need a Gram file or --fixture".into())),
    };
    let report = analyze_intersection_form(&form)?;
    Ok(Output::new(to_value(&report)))
}
