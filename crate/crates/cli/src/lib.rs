//! Command-line front end. [`run`] parses an argument vector, executes the
//! command and returns the result together with the process exit code, so
//! the binary is a thin wrapper and tests can drive commands in-process.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use concise_core::formulae::{classify, definable_set, definable_set_multi, parse_formula, to_prenex};
use concise_core::groups::{catalog_names, PermutationSpec, TableSpec};
use concise_core::nilpotent::{central_partial, hall_w_polynomials, verify_homogeneity_degree2};
use concise_core::suite::{self, SuiteConfig, CRITERIA};
use concise_core::weakrat::{
    build_z, check_residuality, ics_solve, is_weakly_rational_set, witness_set_ena, SetRelation, WrCheck,
};
use concise_core::words::{ideal_membership, parse_word, word_values, word_values_sampled};
use concise_core::{
    catalog, Budget, Class2Presentation, ClassAlgebra, ElementSubset, FiniteGroup, Formula, IndependentChoiceSystem,
    Word, ZWordSpec,
};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Version of the JSON envelope written by `--json`.
pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub schema: u32,
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    /// Render as the JSON envelope instead of text.
    #[serde(skip)]
    pub json: bool,
}

impl CommandResult {
    fn error(command: &str, message: String, json: bool) -> Self {
        CommandResult {
            schema: SCHEMA,
            command: command.to_string(),
            status: Status::Error,
            payload: Value::Null,
            diagnostics: vec![message],
            json,
        }
    }

    /// Text written to stdout: the JSON envelope with `--json`, otherwise one
    /// `key: value` line per payload field.
    pub fn render(&self) -> String {
        if self.json {
            return render_json(self);
        }
        let mut out = String::new();
        if self.status != Status::Ok {
            let _ = writeln!(out, "status: {}", status_name(self.status));
        }
        match &self.payload {
            Value::Object(map) => {
                for (k, v) in map {
                    match v {
                        Value::String(s) => writeln!(out, "{k}: {s}"),
                        other => writeln!(out, "{k}: {other}"),
                    }
                    .expect("writing to a String");
                }
            }
            Value::Null => {}
            Value::String(s) => out.push_str(s),
            other => out.push_str(&other.to_string()),
        }
        for d in &self.diagnostics {
            let _ = writeln!(out, "note: {d}");
        }
        out
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Violation => "violation",
        Status::Error => "error",
    }
}

/// Pretty JSON with sorted keys; parsing it back and rendering again gives
/// the same bytes.
pub fn render_json(r: &CommandResult) -> String {
    let value = serde_json::to_value(r).expect("result is serializable");
    serde_json::to_string_pretty(&value).expect("value is serializable") + "\n"
}

#[derive(Parser, Debug)]
#[command(name = "concise", version, about = "Finite group checks for words, formulae and weak rationality")]
struct Cli {
    /// Print the versioned JSON envelope.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random trials where a command samples.
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Catalog listing and group summaries.
    Groups {
        #[command(subcommand)]
        action: GroupsCmd,
    },
    /// Definable set of a formula.
    Eval {
        #[arg(long)]
        group: String,
        #[arg(long)]
        formula: String,
    },
    /// Word maps.
    Words {
        #[command(subcommand)]
        action: WordsCmd,
    },
    /// Weak rationality of a word value set or definable set.
    WrCheck(WrCheckArgs),
    /// Centre of the integral group ring.
    Classring(ClassringArgs),
    /// Hall polynomials of a word in a class-2 presentation.
    Hall(HallArgs),
    /// Independent choice systems.
    Ics {
        #[command(subcommand)]
        action: IcsCmd,
    },
    /// Build the z-word of a spec.
    BuildZ {
        #[arg(long)]
        spec: String,
        /// Also check the value set of z on this group.
        #[arg(long)]
        group: Option<String>,
    },
    /// Witness set of an ena formula and its behaviour in quotients.
    Witness {
        #[arg(long)]
        group: String,
        #[arg(long)]
        formula: String,
    },
    /// Prenex form and syntactic class of a formula.
    Classify {
        #[arg(long)]
        formula: String,
    },
    Search {
        #[command(subcommand)]
        what: SearchCmd,
    },
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
}

#[derive(Subcommand, Debug)]
enum GroupsCmd {
    List {
        #[arg(long, default_value_t = 120)]
        max_order: usize,
    },
    Info {
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand, Debug)]
enum WordsCmd {
    /// Value set of the word map. With `--trials` the set is sampled and tagged inexact.
    Values {
        #[arg(long)]
        group: String,
        #[arg(long)]
        word: String,
    },
    /// Membership in the ideal of outer-commutator-like words.
    Ideal {
        #[arg(long)]
        word: String,
    },
}

#[derive(Args, Debug)]
struct WrCheckArgs {
    #[arg(long)]
    group: String,
    #[arg(long, required_unless_present = "formula", conflicts_with = "formula")]
    word: Option<String>,
    #[arg(long)]
    formula: Option<String>,
}

#[derive(Args, Debug)]
struct ClassringArgs {
    #[arg(long)]
    group: String,
    /// Check the power map against the group ring; all coprime m unless `--m` is given.
    #[arg(long)]
    verify_burnside: bool,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    /// `C1,C2->C`, classes by index or by element name.
    #[arg(long)]
    lambda: Option<String>,
}

#[derive(Args, Debug)]
struct HallArgs {
    /// `heisenberg` or `free2:<s>`.
    #[arg(long, required_unless_present = "presentation", conflicts_with = "presentation")]
    preset: Option<String>,
    /// JSON `{s, r, kappa}`.
    #[arg(long)]
    presentation: Option<String>,
    #[arg(long)]
    word: String,
    #[arg(long)]
    central_only: bool,
    #[arg(long)]
    check_homogeneity: bool,
}

#[derive(Subcommand, Debug)]
enum IcsCmd {
    /// Find a valid order; a supplied `order` is checked instead.
    Check {
        #[arg(long)]
        system: String,
    },
    /// Solve `d_i(a) = gamma_i`; the system JSON carries `words` and `targets`.
    Solve {
        #[arg(long)]
        system: String,
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand, Debug)]
enum SearchCmd {
    NonCommutators {
        #[arg(long, default_value_t = 24)]
        max_order: usize,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Run the acceptance criteria.
    All {
        #[arg(long)]
        max_order: Option<usize>,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u8>,
    },
}

#[derive(Debug)]
struct Failure(String);

impl From<concise_core::Error> for Failure {
    fn from(e: concise_core::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(format!("invalid JSON: {e}"))
    }
}

type Outcome = Result<(Status, Value, Vec<String>), Failure>;

struct Ctx {
    seed: u64,
    trials: Option<usize>,
    budget: Budget,
}

/// Parses `argv` (program name first) and executes the command.
pub fn run<I, T>(argv: I) -> (CommandResult, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let json = argv.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            let result = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    schema: SCHEMA,
                    command: "help".into(),
                    status: Status::Ok,
                    payload: Value::String(text),
                    diagnostics: vec![],
                    json,
                },
                _ => CommandResult::error("usage", text, json),
            };
            let code = result.status.exit_code();
            return (result, code);
        }
    };
    let ctx = Ctx { seed: cli.seed, trials: cli.trials, budget: Budget::from_env() };
    let name = command_name(&cli.command);
    let result = match dispatch(&cli.command, &ctx) {
        Ok((status, payload, diagnostics)) => {
            CommandResult { schema: SCHEMA, command: name.into(), status, payload, diagnostics, json: cli.json }
        }
        Err(Failure(message)) => CommandResult::error(name, message, cli.json),
    };
    let code = result.status.exit_code();
    (result, code)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Groups { action: GroupsCmd::List { .. } } => "groups list",
        Command::Groups { action: GroupsCmd::Info { .. } } => "groups info",
        Command::Eval { .. } => "eval",
        Command::Words { action: WordsCmd::Values { .. } } => "words values",
        Command::Words { action: WordsCmd::Ideal { .. } } => "words ideal",
        Command::WrCheck(_) => "wr-check",
        Command::Classring(_) => "classring",
        Command::Hall(_) => "hall",
        Command::Ics { action: IcsCmd::Check { .. } } => "ics check",
        Command::Ics { action: IcsCmd::Solve { .. } } => "ics solve",
        Command::BuildZ { .. } => "build-z",
        Command::Witness { .. } => "witness",
        Command::Classify { .. } => "classify",
        Command::Search { .. } => "search non-commutators",
        Command::Verify { .. } => "verify all",
    }
}

fn dispatch(c: &Command, ctx: &Ctx) -> Outcome {
    match c {
        Command::Groups { action: GroupsCmd::List { max_order } } => groups_list(*max_order),
        Command::Groups { action: GroupsCmd::Info { group } } => groups_info(group),
        Command::Eval { group, formula } => eval(group, formula, ctx),
        Command::Words { action: WordsCmd::Values { group, word } } => values(group, word, ctx),
        Command::Words { action: WordsCmd::Ideal { word } } => ideal(word),
        Command::WrCheck(args) => wr_check(args, ctx),
        Command::Classring(args) => classring(args, ctx),
        Command::Hall(args) => hall(args),
        Command::Ics { action: IcsCmd::Check { system } } => ics_check(system),
        Command::Ics { action: IcsCmd::Solve { system, group } } => ics_solve_cmd(system, group),
        Command::BuildZ { spec, group } => build_z_cmd(spec, group.as_deref(), ctx),
        Command::Witness { group, formula } => witness(group, formula, ctx),
        Command::Classify { formula } => classify_cmd(formula),
        Command::Search { what: SearchCmd::NonCommutators { max_order } } => non_commutators(*max_order, ctx),
        Command::Verify { what: VerifyCmd::All { max_order, criterion } } => verify_all(*max_order, criterion, ctx),
    }
}

/// Inline text, or the contents of a file for `@path`.
fn load(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn parse_group(arg: &str) -> Result<FiniteGroup, Failure> {
    let text = load(arg)?;
    let text = text.trim();
    if !text.starts_with('{') {
        return Ok(catalog(text)?);
    }
    let value: Value = serde_json::from_str(text)?;
    if value.get("table").is_some() {
        let spec: TableSpec = serde_json::from_value(value)?;
        Ok(FiniteGroup::from_table_spec(&spec)?)
    } else if value.get("cycles").is_some() {
        let spec: PermutationSpec = serde_json::from_value(value)?;
        Ok(FiniteGroup::from_permutation_spec(&spec)?)
    } else {
        Err(Failure("group JSON needs either `table` or `cycles`".into()))
    }
}

/// Word syntax, or the JSON list of `[letter, exponent]` pairs.
fn parse_word_arg(arg: &str) -> Result<Word, Failure> {
    let text = load(arg)?;
    if let Ok(w) = serde_json::from_str::<Word>(&text) {
        return Ok(w);
    }
    Ok(parse_word(text.trim())?)
}

/// Formula syntax, or the JSON AST.
fn parse_formula_arg(arg: &str) -> Result<Formula, Failure> {
    let text = load(arg)?;
    if text.trim_start().starts_with('{') {
        return Ok(serde_json::from_str(&text)?);
    }
    Ok(parse_formula(text.trim())?)
}

fn names(g: &FiniteGroup, items: impl IntoIterator<Item = usize>) -> Vec<String> {
    items.into_iter().map(|i| g.name(i).to_string()).collect()
}

fn groups_list(max_order: usize) -> Outcome {
    let list: Vec<Value> = catalog_names(max_order)
        .into_iter()
        .map(|name| {
            let order = catalog(name).map(|g| g.order()).unwrap_or(0);
            json!({ "name": name, "order": order })
        })
        .collect();
    Ok((Status::Ok, json!({ "groups": list }), vec![]))
}

fn groups_info(group: &str) -> Outcome {
    let g = parse_group(group)?;
    let classes: Vec<Vec<String>> = g.conjugacy_classes().into_iter().map(|c| names(&g, c)).collect();
    let orders: BTreeMap<String, usize> = (0..g.order()).map(|x| (g.name(x).to_string(), g.order_of(x))).collect();
    let normal: Vec<usize> = g.normal_subgroups().iter().map(ElementSubset::len).collect();
    Ok((
        Status::Ok,
        json!({
            "order": g.order(),
            "abelian": g.is_abelian(),
            "elements": g.names(),
            "element_orders": orders,
            "classes": classes,
            "normal_subgroup_orders": normal,
        }),
        vec![],
    ))
}

fn eval(group: &str, formula: &str, ctx: &Ctx) -> Outcome {
    let g = parse_group(group)?;
    let phi = parse_formula_arg(formula)?;
    if phi.free.len() == 1 {
        let set = definable_set(&g, &phi, ctx.budget)?;
        return Ok((
            Status::Ok,
            json!({
                "formula": phi.to_string(),
                "free": phi.free,
                "set": g.subset_names(&set),
                "indices": set.members(),
            }),
            vec![],
        ));
    }
    let tuples = definable_set_multi(&g, &phi, ctx.budget)?;
    let named: Vec<Vec<String>> = tuples.iter().map(|t| names(&g, t.iter().copied())).collect();
    Ok((Status::Ok, json!({ "formula": phi.to_string(), "free": phi.free, "tuples": named }), vec![]))
}

fn values(group: &str, word: &str, ctx: &Ctx) -> Outcome {
    let g = parse_group(group)?;
    let w = parse_word_arg(word)?;
    let values = match ctx.trials {
        Some(n) => word_values_sampled(&g, &w, n, ctx.seed),
        None => word_values(&g, &w, ctx.budget)?,
    };
    let mut diagnostics = vec![];
    if !values.exact {
        diagnostics.push(format!("sampled with {} trials and seed {}; the set may be incomplete", ctx.trials.unwrap_or(0), ctx.seed));
    }
    Ok((
        Status::Ok,
        json!({
            "word": w.to_string(),
            "exact": values.exact,
            "size": values.set.len(),
            "set": g.subset_names(&values.set),
            "indices": values.set.members(),
        }),
        diagnostics,
    ))
}

fn ideal(word: &str) -> Outcome {
    let w = parse_word_arg(word)?;
    let m = ideal_membership(&w);
    Ok((Status::Ok, json!({ "word": w.to_string(), "member": m.member, "p": m.p }), vec![]))
}

fn wr_payload(g: &FiniteGroup, set: &ElementSubset, check: &WrCheck) -> (Status, Value) {
    let counterexample = check.counterexample.map(|(x, m)| {
        let power = g.pow(x, m as i64);
        json!({ "element": g.name(x), "index": x, "m": m, "power": g.name(power) })
    });
    let status = if check.rational { Status::Ok } else { Status::Violation };
    (
        status,
        json!({
            "rational": check.rational,
            "size": set.len(),
            "set": g.subset_names(set),
            "counterexample": counterexample,
        }),
    )
}

fn wr_check(args: &WrCheckArgs, ctx: &Ctx) -> Outcome {
    let g = parse_group(&args.group)?;
    let set = match (&args.word, &args.formula) {
        (Some(w), _) => word_values(&g, &parse_word_arg(w)?, ctx.budget)?.set,
        (None, Some(f)) => definable_set(&g, &parse_formula_arg(f)?, ctx.budget)?,
        (None, None) => unreachable!("clap requires one source"),
    };
    let check = is_weakly_rational_set(&g, &set)?;
    let (status, payload) = wr_payload(&g, &set, &check);
    Ok((status, payload, vec![]))
}

fn number(n: &BigUint) -> Value {
    u64::try_from(n).map(Value::from).unwrap_or_else(|_| Value::String(n.to_string()))
}

fn classring(args: &ClassringArgs, ctx: &Ctx) -> Outcome {
    let g = parse_group(&args.group)?;
    let alg = ClassAlgebra::new(&g);
    let classes: Vec<Value> = alg
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| json!({ "index": i, "representative": g.name(alg.representative(i)), "size": c.len() }))
        .collect();
    let mut payload = json!({ "order": g.order(), "classes": classes });
    let mut status = Status::Ok;
    if args.verify_burnside {
        let n = g.order() as i64;
        let ms: Vec<i64> = match args.m {
            Some(m) => vec![m],
            None => (1..=n).filter(|&m| num_integer::gcd(m, n) == 1).collect(),
        };
        let mut checks = Vec::new();
        for m in ms {
            let holds = alg.verify_burnside(m)?;
            if !holds {
                status = Status::Violation;
            }
            checks.push(json!({ "m": m, "holds": holds }));
        }
        payload["burnside"] = Value::Array(checks);
    }
    if let Some(spec) = &args.lambda {
        let (lhs, rhs) = spec.split_once("->").ok_or_else(|| Failure(format!("expected `C1,C2->C`, got {spec:?}")))?;
        let cs = lhs.split(',').map(|t| alg.class_index(t.trim())).collect::<Result<Vec<_>, _>>()?;
        let target = alg.class_index(rhs.trim())?;
        let value = alg.lambda(&cs, target, ctx.budget)?;
        payload["lambda"] = json!({ "classes": cs, "target": target, "value": number(&value) });
    }
    Ok((status, payload, vec![]))
}

fn hall(args: &HallArgs) -> Outcome {
    let p = match (&args.preset, &args.presentation) {
        (Some(name), _) => Class2Presentation::preset(name)?,
        (None, Some(spec)) => {
            let p: Class2Presentation = serde_json::from_str(&load(spec)?)?;
            p.validate()?;
            p
        }
        (None, None) => unreachable!("clap requires one presentation"),
    };
    let w = parse_word_arg(&args.word)?;
    let polys = if args.central_only { central_partial(&p, &w)? } else { hall_w_polynomials(&p, &w)? };
    let polys: Vec<String> = polys.iter().map(ToString::to_string).collect();
    let mut payload = json!({
        "presentation": p,
        "word": w.to_string(),
        "central_only": args.central_only,
        "polynomials": polys,
    });
    let mut status = Status::Ok;
    if args.check_homogeneity {
        let homogeneous = verify_homogeneity_degree2(&p, &w)?;
        if !homogeneous {
            status = Status::Violation;
        }
        payload["homogeneous"] = Value::Bool(homogeneous);
    }
    Ok((status, payload, vec![]))
}

/// System JSON for `ics`: the system itself plus, for `solve`, the words
/// `d_i` and target element names `gamma_i`.
#[derive(Deserialize)]
struct IcsInput {
    #[serde(flatten)]
    system: IndependentChoiceSystem<String>,
    #[serde(default)]
    words: Vec<Word>,
    #[serde(default)]
    targets: Vec<String>,
}

fn load_ics(arg: &str) -> Result<IcsInput, Failure> {
    let input: IcsInput = serde_json::from_str(&load(arg)?)?;
    // re-run the constructor checks on deserialized data
    IndependentChoiceSystem::new(input.system.ground.clone(), input.system.collection.clone())?;
    Ok(input)
}

fn ics_check(system: &str) -> Outcome {
    let sys = load_ics(system)?.system;
    if let Some(order) = &sys.order {
        let valid = sys.is_valid_order(order);
        let status = if valid { Status::Ok } else { Status::Violation };
        return Ok((status, json!({ "order": order, "valid": valid }), vec![]));
    }
    match sys.find_order()? {
        Some(order) => {
            let pivots = sys.pivots(&order);
            Ok((Status::Ok, json!({ "order": order, "valid": true, "pivots": pivots }), vec![]))
        }
        None => Ok((
            Status::Violation,
            json!({ "order": Value::Null, "valid": false, "collection": sys.collection }),
            vec!["no order of the collection gives every member a new element".into()],
        )),
    }
}

fn ics_solve_cmd(system: &str, group: &str) -> Outcome {
    let g = parse_group(group)?;
    let input = load_ics(system)?;
    let gamma = input
        .targets
        .iter()
        .map(|t| {
            let i = g.index_of_name(t).ok_or_else(|| Failure(format!("no element named {t:?}")))?;
            Ok(g.element(i)?)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let solution = ics_solve(&g, &input.system, &input.words, &gamma)?;
    let assignment: BTreeMap<&str, &str> = solution.iter().map(|(l, x)| (l.as_str(), g.name(x.index()))).collect();
    Ok((Status::Ok, json!({ "assignment": assignment }), vec![]))
}

fn build_z_cmd(spec: &str, group: Option<&str>, ctx: &Ctx) -> Outcome {
    let spec: ZWordSpec = serde_json::from_str(&load(spec)?)?;
    let built = build_z(&spec)?;
    let mut payload = json!({
        "z": built.z.to_string(),
        "syllables": built.z,
        "fresh": built.fresh,
        "normalized": built.normalized,
    });
    let mut status = Status::Ok;
    if let Some(group) = group {
        let g = parse_group(group)?;
        let set = word_values(&g, &built.z, ctx.budget)?.set;
        let check = is_weakly_rational_set(&g, &set)?;
        let (s, wr) = wr_payload(&g, &set, &check);
        status = s;
        payload["values"] = wr;
    }
    Ok((status, payload, vec![]))
}

fn witness(group: &str, formula: &str, ctx: &Ctx) -> Outcome {
    let g = parse_group(group)?;
    let psi = parse_formula_arg(formula)?;
    let w = witness_set_ena(&g, &psi, ctx.budget)?;
    let choices: Vec<Value> = w
        .choices
        .iter()
        .map(|c| {
            json!({
                "value": g.name(c.value),
                "tuple": names(&g, c.tuple.iter().copied()),
                "word_value": g.name(c.word_value),
            })
        })
        .collect();
    let mut status = Status::Ok;
    let mut quotients = Vec::new();
    for n in g.normal_subgroups() {
        let (_, proj) = g.quotient(&n)?;
        let separates = w.separated_by(&g, &proj);
        let r = check_residuality(&g, &n, &psi, ctx.budget)?;
        if separates && r.relation != SetRelation::Equal {
            status = Status::Violation;
        }
        quotients.push(json!({
            "kernel": g.subset_names(&n),
            "separates": separates,
            "relation": r.relation,
            "image": r.image,
            "quotient_set": r.quotient_set,
        }));
    }
    Ok((
        status,
        json!({ "members": g.subset_names(&w.members), "choices": choices, "quotients": quotients }),
        vec![],
    ))
}

fn classify_cmd(formula: &str) -> Outcome {
    let phi = parse_formula_arg(formula)?;
    let c = classify(&phi);
    let mut payload = serde_json::to_value(c)?;
    payload["prenex"] = Value::String(to_prenex(&phi).to_string());
    payload["ast"] = serde_json::to_value(&phi)?;
    Ok((Status::Ok, payload, vec![]))
}

fn non_commutators(max_order: usize, ctx: &Ctx) -> Outcome {
    if max_order > 48 {
        return Err(Failure(format!("--max-order {max_order} exceeds the search scope of 48")));
    }
    let counts = suite::search_non_commutators(max_order, ctx.budget)?;
    let flagged: Vec<&str> = counts.iter().filter(|c| c.flagged).map(|c| c.group.as_str()).collect();
    let status = if flagged.is_empty() { Status::Ok } else { Status::Violation };
    let payload = json!({ "groups": counts, "flagged": flagged });
    Ok((status, payload, vec![]))
}

fn verify_all(max_order: Option<usize>, only: &[u8], ctx: &Ctx) -> Outcome {
    let config = SuiteConfig { max_order, seed: ctx.seed, budget: ctx.budget };
    let reports: Vec<_> = CRITERIA
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.id))
        .map(|c| suite::run_criterion(c, &config))
        .collect();
    if reports.is_empty() {
        return Err(Failure(format!("no criterion among {only:?}")));
    }
    let diagnostics: Vec<String> = reports.iter().map(|r| r.line()).collect();
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    let status = if failed.is_empty() { Status::Ok } else { Status::Violation };
    Ok((status, json!({ "criteria": reports, "failed": failed }), diagnostics))
}
