mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{Format, Outcome, Table};
use serde_json::{json, Value};
use singerfact::absorder::{interval, pi_map_report};
use singerfact::charvals::charvals_suite;
use singerfact::factor_count::{jm_commutation, survey_regular_elliptic, CountOptions, FactorCounter, Mode, StepPlan};
use singerfact::gf::{FqPoly, PolyRing};
use singerfact::glnq::{GlGroup, Matrix};
use singerfact::hurwitz::{HurwitzSpace, DEFAULT_TUPLE_BUDGET};
use singerfact::qformula::{tq, tq_nlm, NlmRoute, TqRoute};
use singerfact::repro::{identities_suite, run_acceptance, ReproOptions};
use singerfact::Error;
use std::process::ExitCode;

/// Groups above this order need `--heavy` for `survey-re`.
const SURVEY_LIGHT_ORDER: u128 = 1_000_000;

#[derive(Parser)]
#[command(name = "singerfact", version, about = "Reflection factorizations of Singer cycles in GL_n(F_q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, env = "SINGERFACT_THREADS", global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Count factorizations of a target into `len` reflections.
    Count(CountArgs),
    /// Counts for every determinant sequence with product det(target).
    CountDets(GroupArgs),
    /// Evaluate the closed formulas symbolically in q.
    Formula(FormulaArgs),
    /// Run the symbolic identity suites.
    Verify(VerifyArgs),
    /// Hurwitz orbits of the factorizations of a target.
    Hurwitz(HurwitzArgs),
    /// The interval [e, c] and its fixed-space map.
    Interval(TargetArgs),
    /// Jucys-Murphy commutation and centrality.
    Jm(NqArgs),
    /// Counts for every regular elliptic class.
    SurveyRe(SurveyArgs),
    /// Run the full acceptance suite.
    Repro(ReproArgs),
}

#[derive(Args)]
struct NqArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetKind {
    Singer,
    Charpoly,
    Key,
}

#[derive(Args)]
struct TargetArgs {
    #[command(flatten)]
    nq: NqArgs,
    #[arg(long, value_enum, default_value_t = TargetKind::Singer)]
    target: TargetKind,
    /// Monic characteristic polynomial, low degree first, leading one included.
    #[arg(long, value_delimiter = ',')]
    charpoly: Vec<u32>,
    /// Matrix key `sum_ij int(a_ij) q^(i n + j)`.
    #[arg(long)]
    key: Option<u64>,
}

#[derive(Args)]
struct GroupArgs {
    #[command(flatten)]
    target: TargetArgs,
    #[arg(long = "len")]
    ell: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    #[arg(long)]
    meet_in_middle: bool,
    #[arg(long)]
    dense_bound: Option<u128>,
    #[arg(long)]
    memory_cap: Option<usize>,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Prescribed determinants as field-element integers, one per factor.
    #[arg(long, value_delimiter = ',')]
    dets: Vec<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Dense,
    Sparse,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Sum,
    Difference,
    Binomial,
    All,
}

#[derive(Args)]
struct FormulaArgs {
    #[arg(long)]
    n: u64,
    #[arg(long = "len")]
    ell: u64,
    /// Number of transvection factors.
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, value_enum, default_value_t = RouteArg::All)]
    route: RouteArg,
    /// Also evaluate at this q.
    #[arg(long)]
    q: Option<i64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Charvals,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[arg(long, default_value_t = 5)]
    max_n: u64,
}

#[derive(Args)]
struct HurwitzArgs {
    #[command(flatten)]
    target: TargetArgs,
    #[arg(long = "len")]
    ell: usize,
    #[arg(long, default_value_t = DEFAULT_TUPLE_BUDGET)]
    tuple_budget: usize,
}

#[derive(Args)]
struct SurveyArgs {
    #[command(flatten)]
    nq: NqArgs,
    /// Defaults to n.
    #[arg(long = "len")]
    ell: Option<usize>,
    #[arg(long)]
    heavy: bool,
}

#[derive(Args)]
struct ReproArgs {
    /// Include the n = l = 5, q = 2 Hurwitz orbit computation.
    #[arg(long)]
    heavy: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(4);
        }
    }
    match run(&cli.command) {
        Ok(out) => {
            if let Err(e) = output::emit(&out, cli.format) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(Failure { error, partial }) => {
            let code = exit_code(&error);
            let mut report = json!({ "error": error.to_string(), "exit_code": code });
            if let Some(p) = partial {
                report["partial"] = p;
            }
            println!("{}", serde_json::to_string_pretty(&report).expect("json"));
            eprintln!("error: {error}");
            ExitCode::from(code)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Bound { .. } | Error::MemoryCap { .. } | Error::TupleBudget { .. } => 3,
        Error::Internal(_) => 4,
        Error::RouteMismatch(_) => 1,
        _ => 2,
    }
}

struct Failure {
    error: Error,
    partial: Option<Value>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, partial: None }
    }
}

type CliResult = Result<Outcome, Failure>;

fn run(cmd: &Command) -> CliResult {
    match cmd {
        Command::Count(a) => count(a),
        Command::CountDets(a) => count_dets(a),
        Command::Formula(a) => formula(a),
        Command::Verify(a) => verify(a),
        Command::Hurwitz(a) => hurwitz(a),
        Command::Interval(a) => interval_cmd(a),
        Command::Jm(a) => jm(a),
        Command::SurveyRe(a) => survey(a),
        Command::Repro(a) => repro(a),
    }
}

fn group(a: &NqArgs) -> Result<GlGroup, Error> {
    GlGroup::over(a.n, a.q)
}

fn target(g: &GlGroup, a: &TargetArgs) -> Result<Matrix, Error> {
    match a.target {
        TargetKind::Singer => g.singer_cycle(),
        TargetKind::Charpoly => {
            let f = g.field();
            let coeffs = a
                .charpoly
                .iter()
                .map(|&c| f.from_int(c))
                .collect::<Result<Vec<_>, _>>()?;
            let p = FqPoly::new(coeffs);
            if p.degree() != Some(g.n()) || p.leading() != singerfact::gf::FqElem::ONE {
                return Err(Error::Invalid(format!(
                    "--charpoly needs a monic polynomial of degree {}, low degree first",
                    g.n()
                )));
            }
            g.companion_of(&p)
        }
        TargetKind::Key => {
            let k = a.key.ok_or_else(|| Error::Invalid("--target key needs --key".into()))?;
            let m = g.from_key(k);
            if g.key(&m) != k {
                return Err(Error::Invalid(format!("{k} is not a matrix key for GL_{}(F_{})", g.n(), g.q())));
            }
            g.inv(&m)?;
            Ok(m)
        }
    }
}

fn counter(g: GlGroup, a: &GroupArgs) -> Result<FactorCounter, Error> {
    let mut opts = CountOptions {
        mode: match a.mode {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Dense => Mode::Dense,
            ModeArg::Sparse => Mode::Sparse,
        },
        meet_in_middle: a.meet_in_middle,
        ..CountOptions::default()
    };
    if let Some(b) = a.dense_bound {
        opts.dense_bound = b;
    }
    if let Some(c) = a.memory_cap {
        if c == 0 {
            return Err(Error::Invalid("--memory-cap must be positive".into()));
        }
        opts.memory_cap = c;
    }
    FactorCounter::with_options(g, opts)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn count(a: &CountArgs) -> CliResult {
    let g = group(&a.group.target.nq)?;
    let c = target(&g, &a.group.target)?;
    let plan = if a.dets.is_empty() {
        StepPlan::all(a.group.ell)
    } else {
        if a.dets.len() != a.group.ell {
            return Err(Error::Invalid(format!("--dets lists {} values for --len {}", a.dets.len(), a.group.ell)).into());
        }
        let f = g.field();
        let alphas = a.dets.iter().map(|&d| f.from_int(d)).collect::<Result<Vec<_>, _>>().map_err(Error::from)?;
        if alphas.iter().any(|x| x.is_zero()) {
            return Err(Error::Invalid("determinants must be nonzero".into()).into());
        }
        StepPlan::from_dets(&alphas)
    };
    let r = counter(g, &a.group)?.report(&c, &plan)?;
    let table = Table::new(&["n", "q", "ell", "filter", "count"]).row(vec![
        r.n.to_string(),
        r.q.to_string(),
        r.ell.to_string(),
        r.filter.clone(),
        r.count.to_string(),
    ]);
    Ok(Outcome::new(to_value(&r), table))
}

fn count_dets(a: &GroupArgs) -> CliResult {
    let g = group(&a.target.nq)?;
    let c = target(&g, &a.target)?;
    let f = g.field_arc().clone();
    let rows = counter(g.clone(), a)?.count_by_det_sequence(&c, a.ell)?;
    let mut table = Table::new(&["dets", "count"]);
    let mut list = Vec::new();
    for (dets, count) in rows {
        let ints: Vec<u32> = dets.iter().map(|&d| f.to_int(d)).collect();
        table = table.row(vec![
            ints.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "),
            count.to_string(),
        ]);
        list.push(json!({ "dets": ints, "count": count.to_string() }));
    }
    let value = json!({
        "n": g.n(),
        "q": g.q(),
        "ell": a.ell,
        "target_charpoly": g.charpoly_ints(&c),
        "sequences": list,
    });
    Ok(Outcome::new(value, table))
}

fn formula(a: &FormulaArgs) -> CliResult {
    let mut routes = Vec::new();
    match a.m {
        None => {
            for r in TqRoute::ALL {
                let name = to_value(&r).as_str().unwrap_or_default().to_string();
                if a.route == RouteArg::All || name == route_name(a.route) {
                    routes.push((name, tq(a.n, a.ell, r)?));
                }
            }
        }
        Some(m) => {
            if a.route == RouteArg::Sum {
                return Err(Error::Invalid("t_q(n, l, m) has routes binomial and difference".into()).into());
            }
            for r in NlmRoute::ALL {
                let name = to_value(&r).as_str().unwrap_or_default().to_string();
                if a.route == RouteArg::All || name == route_name(a.route) {
                    routes.push((name, tq_nlm(a.n, a.ell, m, r)?));
                }
            }
        }
    }
    let agree = routes.windows(2).all(|w| w[0].1 == w[1].1);
    let mut table = Table::new(&["route", "polynomial"]);
    for (name, p) in &routes {
        table = table.row(vec![name.clone(), p.to_string()]);
    }
    let mut value = json!({
        "n": a.n,
        "ell": a.ell,
        "routes": routes.iter().map(|(name, p)| json!({ "route": name, "poly": p.to_json(), "text": p.to_string() })).collect::<Vec<_>>(),
        "agree": agree,
    });
    if let Some(m) = a.m {
        value["m"] = json!(m);
    }
    if let Some(q) = a.q {
        let v = routes[0]
            .1
            .eval_i64(q)
            .ok_or_else(|| Error::Internal("formula has negative powers of q".into()))?;
        value["q"] = json!(q);
        value["value"] = json!(v.to_string());
    }
    Ok(Outcome::new(value, table).pass(agree))
}

fn route_name(r: RouteArg) -> &'static str {
    match r {
        RouteArg::Sum => "sum",
        RouteArg::Difference => "difference",
        RouteArg::Binomial => "binomial",
        RouteArg::All => "all",
    }
}

fn verify(a: &VerifyArgs) -> CliResult {
    if a.max_n < 2 {
        return Err(Error::Invalid("--max-n must be at least 2".into()).into());
    }
    let mut reports = Vec::new();
    if a.suite != Suite::Charvals {
        reports.extend(identities_suite(a.max_n)?);
    }
    if a.suite != Suite::Identities {
        reports.push(charvals_suite(a.max_n as usize)?);
    }
    let pass = reports.iter().all(|r| r.pass);
    let mut table = Table::new(&["check", "params", "pass", "witness"]);
    for r in &reports {
        table = table.row(vec![
            r.check.clone(),
            r.params.to_string(),
            if r.pass { "PASS" } else { "FAIL" }.into(),
            r.witness.clone().unwrap_or_default(),
        ]);
    }
    Ok(Outcome::new(json!({ "reports": reports, "pass": pass }), table).pass(pass))
}

fn hurwitz(a: &HurwitzArgs) -> CliResult {
    if a.tuple_budget == 0 {
        return Err(Error::Invalid("--tuple-budget must be positive".into()).into());
    }
    let g = group(&a.target.nq)?;
    let c = target(&g, &a.target)?;
    let space = HurwitzSpace::new(g.clone())?;
    let set = space.enumerate_factorizations(&c, a.ell, a.tuple_budget)?;
    if let Some(expected) = space.independent_count(&c, a.ell)? {
        if num_bigint::BigUint::from(set.len()) != expected {
            return Err(Error::RouteMismatch(format!("enumerated {} factorizations, count is {expected}", set.len())).into());
        }
    }
    let r = space.report(&set)?;
    // the single-orbit property is only claimed for Singer cycles
    let singer = PolyRing::new(g.field()).is_primitive(&g.charpoly(&c));
    let mut table = Table::new(&["det_multiset", "tuple_count", "orbit_sizes"]);
    for cl in &r.classes {
        table = table.row(vec![join(&cl.det_multiset), cl.tuple_count.to_string(), join(&cl.orbit_sizes)]);
    }
    let mut value = to_value(&r);
    value["singer_target"] = json!(singer);
    Ok(Outcome::new(value, table).pass(!singer || r.pass))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn interval_cmd(a: &TargetArgs) -> CliResult {
    let g = group(&a.nq)?;
    let c = target(&g, a)?;
    let d = interval(&g, &c)?;
    let r = pi_map_report(&g, &d)?;
    let mut table = Table::new(&["rank", "members", "subspaces", "pi_image", "constant_fibers"]);
    for k in 0..r.rank_sizes.len() {
        table = table.row(vec![
            k.to_string(),
            r.rank_sizes[k].to_string(),
            r.subspace_rank_sizes[k].to_string(),
            r.pi_image_sizes[k].to_string(),
            r.constant_fibers_by_rank[k].to_string(),
        ]);
    }
    let symmetric = (0..r.rank_sizes.len()).all(|k| r.rank_sizes[k] == r.rank_sizes[r.rank_sizes.len() - 1 - k]);
    Ok(Outcome::new(to_value(&r), table).pass(symmetric))
}

fn jm(a: &NqArgs) -> CliResult {
    let r = jm_commutation(&group(a)?)?;
    let mut table = Table::new(&["m", "alpha", "size"]);
    for e in &r.elements {
        table = table.row(vec![e.m.to_string(), e.alpha.to_string(), e.size.to_string()]);
    }
    Ok(Outcome::new(to_value(&r), table).pass(r.pass))
}

fn survey(a: &SurveyArgs) -> CliResult {
    let g = group(&a.nq)?;
    if g.order() > SURVEY_LIGHT_ORDER && !a.heavy {
        return Err(Error::Invalid(format!(
            "|GL_{}(F_{})| = {} is above {SURVEY_LIGHT_ORDER}; pass --heavy to run it",
            g.n(),
            g.q(),
            g.order()
        ))
        .into());
    }
    let ell = a.ell.unwrap_or(g.n());
    let rows = survey_regular_elliptic(&FactorCounter::new(g.clone())?, ell)?;
    let mut table = Table::new(&["charpoly", "primitive", "ell", "count"]);
    for r in &rows {
        table = table.row(vec![join(&r.charpoly), r.primitive.to_string(), r.ell.to_string(), r.count.to_string()]);
    }
    let value = json!({ "n": g.n(), "q": g.q(), "ell": ell, "rows": rows });
    Ok(Outcome::new(value, table))
}

fn repro(a: &ReproArgs) -> CliResult {
    let (summary, errors) = run_acceptance(ReproOptions { heavy: a.heavy });
    let value = to_value(&summary);
    if let Some(e) = errors.iter().find(|e| exit_code(e) != 1) {
        return Err(Failure {
            error: e.clone(),
            partial: Some(value),
        });
    }
    let mut table = Table::new(&["criterion", "name", "result", "checks"]);
    for c in &summary.criteria {
        table = table.row(vec![
            c.id.to_string(),
            c.name.clone(),
            if c.pass { "PASS" } else { "FAIL" }.into(),
            c.checks.to_string(),
        ]);
    }
    Ok(Outcome::new(value, table).pass(summary.pass))
}
