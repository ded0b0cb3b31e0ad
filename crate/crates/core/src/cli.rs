//! The `dirset` command line.
//!
//! Exit codes: 0 success, 1 counterexample found, 2 invalid input,
//! 3 budget exceeded. All field elements in machine formats are canonical
//! indices.

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::campaign::{
    default_budget, run_campaign, run_search, to_sorted_json, CampaignError, CampaignSpec, Family,
    SearchReport, Theorem, VerificationReport,
};
use crate::criteria::{
    cor1_with, cor2_with, is_permutation_oracle, main2_with, result2_with, sziklai_classify,
    triple_product,
};
use crate::direction::{direction_set, quotient_set};
use crate::field::{Elem, FieldContext, FieldError};
use crate::poly::FqFunction;

pub const EXIT_COUNTEREXAMPLE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dirset",
    version,
    about = "Direction sets of functions over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build GF(p^n) and print its description.
    Field(FieldArgs),
    /// Analyze the direction set of one function.
    Directions(DirectionsArgs),
    /// Run a verification campaign and write its report.
    Verify(VerifyArgs),
    /// List the functions whose directions lie in M_d ∪ {0}.
    Search(SearchArgs),
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Human,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["poly", "table"])))]
pub struct DirectionsArgs {
    /// Field size, a prime power.
    #[arg(long)]
    pub q: u64,
    /// Coefficients as canonical indices, constant term first ("0,0,1" is x^2).
    #[arg(long)]
    pub poly: Option<String>,
    /// The q values f(0), f(1), ... as canonical indices.
    #[arg(long)]
    pub table: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CampaignArgs {
    #[arg(long)]
    pub q: u64,
    /// all, poly-deg-D, monic-deg-D, monomial-forms or random-N.
    #[arg(long, default_value = "all")]
    pub family: String,
    /// Subgroup index for conj, result1 and search.
    #[arg(long)]
    pub d: Option<u64>,
    /// Seed for random-N families.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Run even when the family exceeds the budget.
    #[arg(long)]
    pub force: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// main, main2, cor1, conj, cor2, result1 or result2.
    #[arg(long)]
    pub theorem: String,
    #[command(flatten)]
    pub campaign: CampaignArgs,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub campaign: CampaignArgs,
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Budget(m) => f.write_str(m),
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<CampaignError> for CliError {
    fn from(e: CampaignError) -> Self {
        match e {
            CampaignError::BudgetExceeded { .. } => CliError::Budget(format!(
                "{e}; raise it with {} or pass --force",
                crate::campaign::BUDGET_ENV
            )),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

/// Runs a parsed invocation; the `Ok` value is the exit code.
pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Field(a) => cmd_field(&a).map(|()| 0),
        Command::Directions(a) => cmd_directions(&a).map(|()| 0),
        Command::Verify(a) => cmd_verify(&a),
        Command::Search(a) => cmd_search(&a),
    }
}

/// Renders coefficients as `x^2 + 2x + 1`, highest power first.
pub fn render_poly(coeffs: &[u32], var: &str) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coef = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            match i {
                0 => c.to_string(),
                1 => format!("{coef}{var}"),
                _ => format!("{coef}{var}^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn field_json(ctx: &FieldContext) -> Value {
    serde_json::to_value(ctx.describe()).expect("serializes")
}

fn cmd_field(a: &FieldArgs) -> Result<(), CliError> {
    let ctx = FieldContext::new(a.p, a.n)?;
    let d = ctx.describe();
    match a.format {
        Format::Json => println!("{}", to_sorted_json(&d)),
        Format::Csv => {
            let modulus: Vec<String> = d.modulus.iter().map(u32::to_string).collect();
            print!(
                "{}",
                csv_text(
                    &["p", "n", "q", "modulus", "generator"],
                    &[vec![
                        d.p.to_string(),
                        d.n.to_string(),
                        d.q.to_string(),
                        modulus.join(" "),
                        d.generator.to_string(),
                    ]],
                )
            );
        }
        Format::Human => {
            println!("GF({}^{}) with q = {}", d.p, d.n, d.q);
            println!("modulus   {}", render_poly(&d.modulus, "x"));
            let g = ctx.coordinates(ctx.generator());
            println!("generator {} = {}", d.generator, render_poly(&g, "t"));
        }
    }
    Ok(())
}

/// Parses comma-separated canonical indices, reporting the offending entry.
pub fn parse_indices(input: &str, q: u32) -> Result<Vec<Elem>, CliError> {
    let mut offset = 0;
    let mut out = Vec::new();
    for (pos, raw) in input.split(',').enumerate() {
        let column = offset + 1 + (raw.len() - raw.trim_start().len());
        offset += raw.len() + 1;
        let tok = raw.trim();
        let v: u64 = tok.parse().map_err(|_| {
            CliError::Invalid(format!(
                "entry {} at column {column}: {tok:?} is not a non-negative integer",
                pos + 1
            ))
        })?;
        if v >= q as u64 {
            return Err(CliError::Invalid(format!(
                "entry {} at column {column}: {v} is not an element index below q = {q}",
                pos + 1
            )));
        }
        out.push(Elem::from_index(v as u32));
    }
    Ok(out)
}

fn field_for(q: u64) -> Result<Arc<FieldContext>, CliError> {
    Ok(Arc::new(FieldContext::with_order(q)?))
}

fn function_input(ctx: Arc<FieldContext>, a: &DirectionsArgs) -> Result<FqFunction, CliError> {
    let q = ctx.q();
    match (&a.poly, &a.table) {
        (Some(poly), None) => {
            let coeffs = parse_indices(poly, q)?;
            FqFunction::from_coefficients(ctx, &coeffs)
                .map_err(|e| CliError::Invalid(e.to_string()))
        }
        (None, Some(table)) => {
            let values = parse_indices(table, q)?;
            FqFunction::interpolate(ctx, values).map_err(|e| CliError::Invalid(e.to_string()))
        }
        _ => Err(CliError::Invalid(
            "give exactly one of --poly or --table".into(),
        )),
    }
}

/// Everything `directions` reports about one function.
pub fn analyze(f: &FqFunction) -> Value {
    let ctx = f.field();
    let dir = direction_set(f);
    let quotient = quotient_set(ctx, dir.set());
    let triple = triple_product(f, &dir);
    let err = |e: &dyn std::fmt::Display| json!({"error": e.to_string()});
    let main2 = main2_with(f, &dir).map_or_else(|e| err(&e), |v| json!(v));
    let cor1 = cor1_with(f, &dir).map_or_else(|e| err(&e), |v| json!(v));
    let result2 = result2_with(f, &dir).map_or_else(|e| err(&e), |v| json!(v));
    let mut sziklai = serde_json::Map::new();
    for d in ctx.group_divisors().into_iter().filter(|&d| d > 1) {
        let outcome = sziklai_classify(f, d).map_or_else(|e| err(&e), |v| json!(v));
        sziklai.insert(d.to_string(), outcome);
    }
    let flag = |r: Result<bool, crate::poly::PolyError>| r.map_or_else(|e| err(&e), |v| json!(v));
    json!({
        "field": field_json(ctx),
        "function": {
            "table": f.table_indices(),
            "coefficients": f.trimmed_coefficients(),
            "degree": f.reduced_degree(),
        },
        "directions": dir.set(),
        "directions_size": dir.len(),
        "contains_zero": dir.contains_zero(),
        "quotient_size": quotient.len(),
        "triple_product_size": triple.len(),
        "permutation": is_permutation_oracle(f),
        "monomial_form": f.detect_monomial_form(),
        "additive": flag(f.is_additive()),
        "affine": flag(f.is_affine()),
        "criteria": {
            "main2": main2,
            "cor1": cor1,
            "cor2": cor2_with(f, &dir),
            "result2": result2,
            "sziklai": sziklai,
        },
    })
}

fn cmd_directions(a: &DirectionsArgs) -> Result<(), CliError> {
    let ctx = field_for(a.q)?;
    let f = function_input(ctx, a)?;
    let v = analyze(&f);
    match a.format {
        Format::Json => println!("{}", to_sorted_json(&v)),
        Format::Csv => {
            let cell = |k: &str| v[k].to_string();
            let verdict = |k: &str| {
                v["criteria"][k]["kind"]
                    .as_str()
                    .unwrap_or("not_applicable")
                    .to_string()
            };
            print!(
                "{}",
                csv_text(
                    &[
                        "q",
                        "degree",
                        "directions_size",
                        "quotient_size",
                        "triple_product_size",
                        "permutation",
                        "main2",
                        "cor1"
                    ],
                    &[vec![
                        a.q.to_string(),
                        v["function"]["degree"].to_string(),
                        cell("directions_size"),
                        cell("quotient_size"),
                        cell("triple_product_size"),
                        cell("permutation"),
                        verdict("main2"),
                        verdict("cor1"),
                    ]],
                )
            );
        }
        Format::Human => {
            let coeffs: Vec<u32> = f.trimmed_coefficients().iter().map(|c| c.index()).collect();
            println!("f(x) = {}  over GF({})", render_poly(&coeffs, "x"), a.q);
            println!("table                {:?}", f.table_indices());
            println!("D_f                  {}", v["directions"]);
            println!("|D_f|                {}", v["directions_size"]);
            println!("|D_f^-1 D_f|         {}", v["quotient_size"]);
            println!("|D_f^-1 D_f D_f^-1|  {}", v["triple_product_size"]);
            println!("permutation          {}", v["permutation"]);
            println!("main2                {}", v["criteria"]["main2"]);
            println!("cor1                 {}", v["criteria"]["cor1"]);
            println!("cor2                 {}", v["criteria"]["cor2"]);
            match f.detect_monomial_form() {
                Some(m) => println!("monomial form        a={} k={} b={}", m.a, m.k, m.b),
                None => println!("monomial form        none"),
            }
        }
    }
    Ok(())
}

fn campaign_spec(a: &CampaignArgs, theorem: Theorem) -> Result<CampaignSpec, CliError> {
    let q =
        u32::try_from(a.q).map_err(|_| CliError::Invalid(format!("q = {} is too large", a.q)))?;
    let family: Family = a.family.parse()?;
    let mut spec = CampaignSpec::new(q, family, theorem)
        .with_seed(a.seed)
        .with_jobs(a.jobs);
    spec.d = a.d;
    spec.force = a.force;
    spec.budget = default_budget();
    Ok(spec)
}

fn emit(output: &Option<PathBuf>, text: String) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn opt(v: Option<impl ToString>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn report_csv(r: &VerificationReport) -> String {
    csv_text(
        &[
            "theorem",
            "q",
            "family",
            "d",
            "checked",
            "fired",
            "skipped",
            "permutations",
            "counterexamples",
            "min_margin",
            "max_margin",
            "equality_count",
        ],
        &[vec![
            r.spec.theorem.clone(),
            r.spec.q.to_string(),
            r.spec.family.clone(),
            opt(r.spec.d),
            r.checked.to_string(),
            r.fired.to_string(),
            r.skipped.to_string(),
            r.permutations.to_string(),
            r.counterexample_count.to_string(),
            opt(r.extremes.min_margin.as_ref().map(|e| e.margin)),
            opt(r.extremes.max_margin.as_ref().map(|e| e.margin)),
            r.extremes.equality_count.to_string(),
        ]],
    )
}

fn report_human(r: &VerificationReport) -> String {
    let mut s = format!(
        "theorem {} over GF({}) family {}{}\n",
        r.spec.theorem,
        r.spec.q,
        r.spec.family,
        r.spec.d.map(|d| format!(" d={d}")).unwrap_or_default()
    );
    s += &format!("checked          {}\n", r.checked);
    s += &format!("fired            {}\n", r.fired);
    s += &format!("skipped          {}\n", r.skipped);
    s += &format!("permutations     {}\n", r.permutations);
    s += &format!("counterexamples  {}\n", r.counterexample_count);
    if let (Some(lo), Some(hi)) = (&r.extremes.min_margin, &r.extremes.max_margin) {
        s += &format!("margin range     [{}, {}]\n", lo.margin, hi.margin);
        s += &format!("equality cases   {}\n", r.extremes.equality_count);
    }
    s += &format!("elapsed          {} ms\n", r.elapsed_ms);
    s
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8, CliError> {
    let theorem: Theorem = a.theorem.parse()?;
    let spec = campaign_spec(&a.campaign, theorem)?;
    let report = run_campaign(&spec)?;
    let text = match a.campaign.format {
        Format::Json => to_sorted_json(&report) + "\n",
        Format::Csv => report_csv(&report),
        Format::Human => report_human(&report),
    };
    emit(&a.campaign.output, text)?;
    Ok(if report.passed() {
        0
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

pub fn search_csv(r: &SearchReport) -> String {
    csv_text(
        &["q", "d", "family", "checked", "count", "counterexamples"],
        &[vec![
            r.spec.q.to_string(),
            opt(r.spec.d),
            r.spec.family.clone(),
            r.checked.to_string(),
            r.count.to_string(),
            r.counterexample_count.to_string(),
        ]],
    )
}

fn cmd_search(a: &SearchArgs) -> Result<u8, CliError> {
    if a.campaign.d.is_none() {
        return Err(CliError::Invalid("search needs --d".into()));
    }
    let spec = campaign_spec(&a.campaign, Theorem::Conj)?;
    let report = run_search(&spec)?;
    let text = match a.campaign.format {
        Format::Json => to_sorted_json(&report) + "\n",
        Format::Csv => search_csv(&report),
        Format::Human => {
            let mut s = format!(
                "{} of {} functions over GF({}) have directions in M_{} ∪ {{0}}\n",
                report.count,
                report.checked,
                report.spec.q,
                opt(report.spec.d)
            );
            for m in &report.members {
                let form = m
                    .form
                    .map(|f| format!("a={} k={} b={}", f.a, f.k, f.b))
                    .unwrap_or_else(|| "NO FORM".into());
                s += &format!("{:?}  {form}\n", m.function_table);
            }
            s
        }
    };
    emit(&a.campaign.output, text)?;
    Ok(if report.counterexample_count == 0 {
        0
    } else {
        EXIT_COUNTEREXAMPLE
    })
}
