//! Deterministic, parallel verification campaigns over families of functions.
//!
//! A family is an indexed list of value tables. Index `i` always decodes to
//! the same table, so results are merged per chunk with a commutative fold
//! and the report does not depend on how the range was split.
//!
//! Enumeration orders:
//! - `all`: the value table read as a base-q counter, `f(0)` least significant.
//! - `poly-deg-D`: the coefficient vector `c_0..c_D` as a base-q counter, `c_0` least significant.
//! - `monic-deg-D`: by degree, then lower coefficients as a base-q counter.
//! - `monomial-forms`: the `q` constants, then `a x^(p^k) + b` with `b` fastest, then `k`, then `a != 0`.
//! - `random-N`: table `i` drawn from ChaCha8 stream `i` of the seed.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::criteria::{
    cor1_with, cor2_with, half_bound, main2_with, result1_within, result2_with, subgroup_with_zero,
    Cor2Outcome, CriteriaError,
};
use crate::direction::{
    build_h_set_with, direction_set_of_table, direction_set_within_table, quotient_set, shift_set,
    Theorem1Check,
};
use crate::field::{Elem, FieldContext, FieldError};
use crate::poly::{horner, FqFunction, MonomialForm};
use crate::set::ElementSet;

/// Family size allowed without an override.
pub const DEFAULT_BUDGET: u64 = 1 << 25;

/// Environment variable that replaces [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "DIRSET_BUDGET";

/// Counterexamples kept verbatim in a report; the total is always counted.
pub const MAX_RECORDED: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CampaignError {
    #[error("family of {size} instances exceeds the budget of {budget}")]
    BudgetExceeded { size: String, budget: u64 },
    #[error("invalid campaign: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
}

/// Budget from the environment, or the default.
pub fn default_budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    All,
    PolyDeg(u32),
    MonicDeg(u32),
    MonomialForms,
    Random(u64),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::All => write!(f, "all"),
            Family::PolyDeg(d) => write!(f, "poly-deg-{d}"),
            Family::MonicDeg(d) => write!(f, "monic-deg-{d}"),
            Family::MonomialForms => write!(f, "monomial-forms"),
            Family::Random(n) => write!(f, "random-{n}"),
        }
    }
}

impl FromStr for Family {
    type Err = CampaignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |rest: &str| {
            rest.parse()
                .map_err(|_| CampaignError::InvalidSpec(format!("bad family {s:?}")))
        };
        match s {
            "all" => Ok(Family::All),
            "monomial-forms" => Ok(Family::MonomialForms),
            _ => {
                if let Some(rest) = s.strip_prefix("poly-deg-") {
                    Ok(Family::PolyDeg(num(rest)? as u32))
                } else if let Some(rest) = s.strip_prefix("monic-deg-") {
                    Ok(Family::MonicDeg(num(rest)? as u32))
                } else if let Some(rest) = s.strip_prefix("random-") {
                    Ok(Family::Random(num(rest)?))
                } else {
                    Err(CampaignError::InvalidSpec(format!(
                        "unknown family {s:?} (all, poly-deg-D, monic-deg-D, monomial-forms, random-N)"
                    )))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// Line-incidence lower bound, with the H-set checks.
    Main,
    Main2,
    Cor1,
    /// Containment in `M_d ∪ {0}` forces a monomial form.
    Conj,
    Cor2,
    Result1,
    Result2,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::Main,
        Theorem::Main2,
        Theorem::Cor1,
        Theorem::Conj,
        Theorem::Cor2,
        Theorem::Result1,
        Theorem::Result2,
    ];

    pub fn needs_index(self) -> bool {
        matches!(self, Theorem::Conj | Theorem::Result1)
    }

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Main => "main",
            Theorem::Main2 => "main2",
            Theorem::Cor1 => "cor1",
            Theorem::Conj => "conj",
            Theorem::Cor2 => "cor2",
            Theorem::Result1 => "result1",
            Theorem::Result2 => "result2",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = CampaignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| CampaignError::InvalidSpec(format!("unknown theorem {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct CampaignSpec {
    pub q: u32,
    pub family: Family,
    pub theorem: Theorem,
    /// Subgroup index for `conj` and `result1`.
    pub d: Option<u64>,
    pub seed: u64,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    pub budget: u64,
    /// Ignore the budget.
    pub force: bool,
}

impl CampaignSpec {
    pub fn new(q: u32, family: Family, theorem: Theorem) -> Self {
        CampaignSpec {
            q,
            family,
            theorem,
            d: None,
            seed: 0,
            jobs: 0,
            budget: default_budget(),
            force: false,
        }
    }

    pub fn with_d(mut self, d: u64) -> Self {
        self.d = Some(d);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }
}

/// The parts of a spec that determine the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecEcho {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    pub family: String,
    pub theorem: String,
    pub d: Option<u64>,
    pub seed: u64,
    pub family_size: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub index: u64,
    pub function_table: Vec<u32>,
    pub details: Value,
}

/// A margin together with where it was attained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extreme {
    pub margin: i64,
    pub index: u64,
    pub function_table: Vec<u32>,
    pub details: Value,
    #[serde(skip)]
    order: (u64, u64),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Extremes {
    pub min_margin: Option<Extreme>,
    pub max_margin: Option<Extreme>,
    /// Instances with margin exactly zero.
    pub equality_count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Member {
    pub index: u64,
    pub function_table: Vec<u32>,
    pub form: Option<MonomialForm>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub spec: SpecEcho,
    /// Functions examined.
    pub checked: u64,
    /// Instances whose hypothesis held: contained sets, fired criteria, or admissible lines for `main`.
    pub fired: u64,
    /// For `conj` and `result1`, the same count under its own name.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contained: Option<u64>,
    /// Functions outside the check's domain, such as constants for `main2`.
    pub skipped: u64,
    /// Functions the brute-force oracle calls permutations.
    pub permutations: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Counterexample>,
    pub extremes: Extremes,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample_count == 0
    }
}

/// Members of a family whose direction set lies in `M_d ∪ {0}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub spec: SpecEcho,
    pub checked: u64,
    pub count: u64,
    pub members: Vec<Member>,
    pub counterexample_count: u64,
    pub elapsed_ms: u64,
}

/// Sorted keys, two-space indent.
pub fn to_sorted_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report serializes");
    serde_json::to_string_pretty(&v).expect("value serializes")
}

#[derive(Default)]
struct Tally {
    checked: u64,
    fired: u64,
    skipped: u64,
    permutations: u64,
    counterexample_count: u64,
    counterexamples: Vec<(u64, u64, Counterexample)>,
    min: Option<Extreme>,
    max: Option<Extreme>,
    equality_count: u64,
    members: Vec<Member>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.fired += other.fired;
        self.skipped += other.skipped;
        self.permutations += other.permutations;
        self.counterexample_count += other.counterexample_count;
        self.equality_count += other.equality_count;
        self.counterexamples.extend(other.counterexamples);
        self.counterexamples.sort_by_key(|c| (c.0, c.1));
        self.counterexamples.truncate(MAX_RECORDED);
        self.members.extend(other.members);
        self.members.sort_by_key(|m| m.index);
        self.min = pick(self.min, other.min, |a, b| {
            (a.margin, a.order) < (b.margin, b.order)
        });
        self.max = pick(self.max, other.max, |a, b| {
            (a.margin, std::cmp::Reverse(a.order)) > (b.margin, std::cmp::Reverse(b.order))
        });
        self
    }

    fn counterexample(&mut self, index: u64, sub: u64, table: &[Elem], details: Value) {
        self.counterexample_count += 1;
        if self.counterexamples.len() < MAX_RECORDED {
            self.counterexamples.push((
                index,
                sub,
                Counterexample {
                    index,
                    function_table: indices(table),
                    details,
                },
            ));
        }
    }

    fn margin(
        &mut self,
        margin: i64,
        index: u64,
        sub: u64,
        table: &[Elem],
        details: impl Fn() -> Value,
    ) {
        if margin == 0 {
            self.equality_count += 1;
        }
        let order = (index, sub);
        let better_min = self
            .min
            .as_ref()
            .is_none_or(|m| (margin, order) < (m.margin, m.order));
        let better_max = self.max.as_ref().is_none_or(|m| {
            (margin, std::cmp::Reverse(order)) > (m.margin, std::cmp::Reverse(m.order))
        });
        if better_min || better_max {
            let e = Extreme {
                margin,
                index,
                function_table: indices(table),
                details: details(),
                order,
            };
            if better_min {
                self.min = Some(e.clone());
            }
            if better_max {
                self.max = Some(e);
            }
        }
    }
}

fn pick<T>(a: Option<T>, b: Option<T>, a_wins: impl Fn(&T, &T) -> bool) -> Option<T> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if a_wins(&a, &b) { a } else { b }),
        (a, b) => a.or(b),
    }
}

fn indices(table: &[Elem]) -> Vec<u32> {
    table.iter().map(|x| x.index()).collect()
}

fn family_size(ctx: &FieldContext, family: Family) -> Result<Option<u64>, CampaignError> {
    let q = ctx.q() as u64;
    Ok(match family {
        Family::All => q.checked_pow(ctx.q()),
        Family::PolyDeg(d) => {
            if d as u64 >= q {
                return Err(CampaignError::InvalidSpec(format!(
                    "degree bound {d} must be below q = {q}"
                )));
            }
            q.checked_pow(d + 1)
        }
        Family::MonicDeg(d) => {
            if d as u64 >= q {
                return Err(CampaignError::InvalidSpec(format!(
                    "degree bound {d} must be below q = {q}"
                )));
            }
            (0..=d).try_fold(0u64, |acc, j| acc.checked_add(q.checked_pow(j)?))
        }
        Family::MonomialForms => Some(q + (q - 1) * ctx.n() as u64 * q),
        Family::Random(n) => Some(n),
    })
}

fn digits(mut x: u64, base: u64, len: usize) -> Vec<Elem> {
    (0..len)
        .map(|_| {
            let d = x % base;
            x /= base;
            Elem::from_index(d as u32)
        })
        .collect()
}

fn table_from_coeffs(ctx: &FieldContext, coeffs: &[Elem]) -> Vec<Elem> {
    ctx.elements().map(|x| horner(ctx, coeffs, x)).collect()
}

/// Value table of member `index` of `family`.
pub fn decode(ctx: &FieldContext, family: Family, seed: u64, index: u64) -> Vec<Elem> {
    let q = ctx.q() as u64;
    match family {
        Family::All => digits(index, q, q as usize),
        Family::PolyDeg(d) => table_from_coeffs(ctx, &digits(index, q, d as usize + 1)),
        Family::MonicDeg(_) => {
            let mut rest = index;
            let mut deg = 0u32;
            while rest >= q.pow(deg) {
                rest -= q.pow(deg);
                deg += 1;
            }
            let mut coeffs = digits(rest, q, deg as usize);
            coeffs.push(Elem::ONE);
            table_from_coeffs(ctx, &coeffs)
        }
        Family::MonomialForms => {
            if index < q {
                return vec![Elem::from_index(index as u32); q as usize];
            }
            let rest = index - q;
            let b = Elem::from_index((rest % q) as u32);
            let rest = rest / q;
            let k = (rest % ctx.n() as u64) as u32;
            let a = Elem::from_index((rest / ctx.n() as u64 + 1) as u32);
            let form = MonomialForm { a, k, b };
            ctx.elements().map(|x| form.eval(ctx, x)).collect()
        }
        Family::Random(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index);
            (0..q)
                .map(|_| Elem::from_index(rng.random_range(0..ctx.q())))
                .collect()
        }
    }
}

/// Position of a value table in the `all` enumeration.
pub fn table_rank(q: u32, table: &[Elem]) -> u64 {
    table
        .iter()
        .rev()
        .fold(0u64, |acc, x| acc * q as u64 + x.index() as u64)
}

fn has_repeat(q: u32, table: &[Elem]) -> bool {
    let mut seen = ElementSet::empty(q);
    !table.iter().all(|&v| seen.insert(v))
}

struct Prepared {
    ctx: Arc<FieldContext>,
    spec: CampaignSpec,
    echo: SpecEcho,
    size: u64,
    /// `M_d ∪ {0}` for `conj`, `M_d` for `result1`.
    permitted: Option<ElementSet>,
}

fn prepare(spec: &CampaignSpec) -> Result<Prepared, CampaignError> {
    let ctx = Arc::new(FieldContext::with_order(spec.q as u64)?);
    let size = family_size(&ctx, spec.family)?;
    let permitted = if spec.theorem.needs_index() {
        let d = spec.d.ok_or_else(|| {
            CampaignError::InvalidSpec(format!("theorem {} needs a subgroup index d", spec.theorem))
        })?;
        let probe = FqFunction::identity(ctx.clone());
        let mut s = subgroup_with_zero(&probe, d)?;
        if spec.theorem == Theorem::Result1 {
            s.remove(Elem::ZERO);
        }
        Some(s)
    } else {
        None
    };
    let size = match size {
        Some(s) if spec.force || s <= spec.budget => s,
        Some(s) => {
            return Err(CampaignError::BudgetExceeded {
                size: s.to_string(),
                budget: spec.budget,
            })
        }
        None => {
            return Err(CampaignError::BudgetExceeded {
                size: format!("{}^{}", spec.q, spec.q),
                budget: spec.budget,
            })
        }
    };
    let echo = SpecEcho {
        p: ctx.p(),
        n: ctx.n(),
        q: ctx.q(),
        family: spec.family.to_string(),
        theorem: spec.theorem.to_string(),
        d: if spec.theorem.needs_index() {
            spec.d
        } else {
            None
        },
        seed: if matches!(spec.family, Family::Random(_)) {
            spec.seed
        } else {
            0
        },
        family_size: size,
    };
    Ok(Prepared {
        ctx,
        spec: spec.clone(),
        echo,
        size,
        permitted,
    })
}

fn check_instance(prep: &Prepared, index: u64, collect_members: bool, t: &mut Tally) {
    let ctx = &prep.ctx;
    let q = ctx.q();
    let table = decode(ctx, prep.spec.family, prep.spec.seed, index);
    t.checked += 1;
    if !has_repeat(q, &table) {
        t.permutations += 1;
    }
    let func =
        |table: Vec<Elem>| FqFunction::interpolate(ctx.clone(), table).expect("decoded table");

    match prep.spec.theorem {
        Theorem::Conj => {
            let permitted = prep.permitted.as_ref().unwrap();
            if direction_set_within_table(ctx, &table, permitted).is_err() {
                return;
            }
            t.fired += 1;
            let form = func(table.clone()).detect_monomial_form();
            if form.is_none() {
                t.counterexample(
                    index,
                    0,
                    &table,
                    json!({"reason": "contained but no monomial form"}),
                );
            }
            if collect_members {
                t.members.push(Member {
                    index,
                    function_table: indices(&table),
                    form,
                });
            }
        }
        Theorem::Result1 => {
            let permitted = prep.permitted.as_ref().unwrap();
            let f = func(table.clone());
            let imp = result1_within(&f, permitted);
            if imp.antecedent {
                t.fired += 1;
            }
            if !imp.holds() {
                t.counterexample(
                    index,
                    0,
                    &table,
                    json!({"reason": "contained in subgroup but no monomial form"}),
                );
            }
        }
        Theorem::Result2 => {
            let dir = direction_set_of_table(ctx, &table);
            let f = func(table.clone());
            match result2_with(&f, &dir) {
                Ok(imp) => {
                    if imp.antecedent {
                        t.fired += 1;
                    }
                    t.margin(
                        dir.len() as i64 - half_bound(q) as i64,
                        index,
                        0,
                        &table,
                        || json!({"directions": dir.len()}),
                    );
                    if !imp.holds() {
                        t.counterexample(index, 0, &table, json!({"reason": "few directions but not affine", "directions": dir.len()}));
                    }
                }
                Err(e) => t.counterexample(index, 0, &table, json!({"reason": e.to_string()})),
            }
        }
        Theorem::Main2 | Theorem::Cor1 => {
            let dir = direction_set_of_table(ctx, &table);
            let f = func(table.clone());
            let verdict = if prep.spec.theorem == Theorem::Main2 {
                main2_with(&f, &dir)
            } else {
                cor1_with(&f, &dir)
            };
            let Ok(v) = verdict else {
                t.skipped += 1;
                return;
            };
            let details =
                || json!({"size": v.size, "threshold": v.threshold, "degree": f.reduced_degree()});
            t.margin(v.margin(), index, 0, &table, details);
            if v.fired() {
                t.fired += 1;
                if has_repeat(q, &table) {
                    t.counterexample(index, 0, &table, details());
                }
            }
        }
        Theorem::Cor2 => {
            let dir = direction_set_of_table(ctx, &table);
            let f = func(table.clone());
            let outcome = cor2_with(&f, &dir);
            t.margin(
                outcome.size() as i64 - half_bound(q) as i64,
                index,
                0,
                &table,
                || json!({"size": outcome.size()}),
            );
            match outcome {
                Cor2Outcome::FormProven { .. } => t.fired += 1,
                Cor2Outcome::Inconclusive { .. } => {}
                Cor2Outcome::Counterexample { size } => {
                    t.fired += 1;
                    t.counterexample(index, 0, &table, json!({"reason": "small triple product but no monomial form", "size": size}));
                }
            }
        }
        Theorem::Main => check_main(prep, index, table, t),
    }
}

/// Every admissible line against the bound, plus the H-set checks.
fn check_main(prep: &Prepared, index: u64, table: Vec<Elem>, t: &mut Tally) {
    let ctx = &*prep.ctx;
    let q = ctx.q() as usize;
    let dir = direction_set_of_table(ctx, &table);
    let mut hist = vec![0usize; q];
    let mut f: Option<FqFunction> = None;
    for m in ctx.elements() {
        hist.iter_mut().for_each(|h| *h = 0);
        for x in ctx.elements() {
            let b = ctx.sub(table[x.index() as usize], ctx.mul(m, x));
            hist[b.index() as usize] += 1;
        }
        if !hist.iter().any(|&k| k > 1 && k < q) {
            continue;
        }
        let quotient = quotient_set(ctx, &shift_set(ctx, dir.set(), m)).len();
        let f = f.get_or_insert_with(|| {
            FqFunction::interpolate(prep.ctx.clone(), table.clone()).expect("decoded table")
        });
        for b in ctx.elements() {
            let k = hist[b.index() as usize];
            if k <= 1 || k >= q {
                continue;
            }
            t.fired += 1;
            let sub = m.index() as u64 * q as u64 + b.index() as u64;
            let check = Theorem1Check::from_parts(ctx.q(), m, b, k, quotient);
            let details = || serde_json::to_value(check).expect("serializes");
            t.margin(check.margin(), index, sub, &table, details);
            let h = build_h_set_with(f, &dir, m, b).expect("admissible line");
            if !check.holds || !h.all_hold() {
                let mut d = details();
                d["h_set"] = json!({
                    "a": h.a,
                    "h_set_size": h.h_set.len(),
                    "size_bound": h.size_bound(),
                    "subset_of_quotient": h.h_subset_of_quotient,
                    "contains_one": h.contains_one,
                    "excludes_zero": h.excludes_zero,
                    "shift_identity": h.shift_identity,
                    "exceptional_stabilize": h.exceptional_stabilize,
                });
                t.counterexample(index, sub, &table, d);
            }
        }
    }
}

fn execute(prep: &Prepared, collect_members: bool) -> Tally {
    let size = prep.size;
    let jobs = if prep.spec.jobs == 0 {
        rayon::current_num_threads()
    } else {
        prep.spec.jobs
    };
    let chunk = (size / (jobs as u64 * 8)).clamp(256, 1 << 16);
    let run = || {
        (0..size.div_ceil(chunk))
            .into_par_iter()
            .map(|c| {
                let mut t = Tally::default();
                for i in c * chunk..((c + 1) * chunk).min(size) {
                    check_instance(prep, i, collect_members, &mut t);
                }
                t
            })
            .reduce(Tally::default, Tally::merge)
    };
    if prep.spec.jobs == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool")
            .install(run)
    }
}

pub fn run_campaign(spec: &CampaignSpec) -> Result<VerificationReport, CampaignError> {
    let start = Instant::now();
    let prep = prepare(spec)?;
    let t = execute(&prep, false);
    Ok(VerificationReport {
        spec: prep.echo,
        checked: t.checked,
        fired: t.fired,
        contained: spec.theorem.needs_index().then_some(t.fired),
        skipped: t.skipped,
        permutations: t.permutations,
        counterexample_count: t.counterexample_count,
        counterexamples: t.counterexamples.into_iter().map(|c| c.2).collect(),
        extremes: Extremes {
            min_margin: t.min,
            max_margin: t.max,
            equality_count: t.equality_count,
        },
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Lists every member of `spec.family` with `D_f ⊆ M_d ∪ {0}`.
pub fn run_search(spec: &CampaignSpec) -> Result<SearchReport, CampaignError> {
    let start = Instant::now();
    let mut spec = spec.clone();
    spec.theorem = Theorem::Conj;
    let prep = prepare(&spec)?;
    let t = execute(&prep, true);
    Ok(SearchReport {
        spec: prep.echo,
        checked: t.checked,
        count: t.fired,
        members: t.members,
        counterexample_count: t.counterexample_count,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
