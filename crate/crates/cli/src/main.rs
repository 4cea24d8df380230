//! `slowprov`: ordinals, the fast-growing hierarchy, provability logics and
//! the iteration calculus from the command line.
//!
//! Exit codes: 0 success (including `BUDGET` and `INCONCLUSIVE` verdicts),
//! 2 malformed input, 3 budget exhaustion under `--strict`, 4 invalid model
//! file.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use slowprov::fgh::{
    compare_F_to, eval_F_iter, eval_F_shifted, EvalBudget, EvalResult, SlowFunctions, ThresholdResult,
    DEFAULT_BIT_CAP, DEFAULT_STEP_CAP,
};
use slowprov::itercalc::{entails, normalize_with, parse_iter, Entailment, IterExpr, NormalizeOptions, Strategy};
use slowprov::modal::{
    check_proof, decide, parse_formula, random_a_sound_model, DecisionOutcome, Evidence, Formula, KripkeModel,
    Limits, ModalError, ProofObject, Semantics, System, DEFAULT_MAX_MODEL_SIZE, DEFAULT_MAX_PROOF_DEPTH,
};
use slowprov::oracles::{enumerate_tree_frames, oracle_F};
use slowprov::ordinal::{compare, parse_ordinal, stepdown_path, Ordinal, PathResult};

#[derive(Parser)]
#[command(name = "slowprov", version, about = "Workbench for slow and square-root provability")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest intermediate value, in bits.
    #[arg(long, global = true, env = "SLOWPROV_BITCAP", default_value_t = DEFAULT_BIT_CAP)]
    bitcap: u64,
    /// Largest number of evaluation steps.
    #[arg(long, global = true, env = "SLOWPROV_STEPCAP", default_value_t = DEFAULT_STEP_CAP)]
    stepcap: u64,
    /// Largest countermodel searched by `modal decide`.
    #[arg(long, global = true, env = "SLOWPROV_MODELSIZE", default_value_t = DEFAULT_MAX_MODEL_SIZE)]
    model_size: usize,
    /// Nesting depth for the bounded proof search.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PROOF_DEPTH)]
    proof_depth: usize,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Exit with status 3 when a budget or search bound runs out.
    #[arg(long, global = true)]
    strict: bool,
    /// Print the bit length of numeric results instead of their digits.
    #[arg(long, global = true)]
    bits: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Ordinal arithmetic below and at ε₀.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// The fast-growing hierarchy and the functions l and r.
    #[command(subcommand)]
    Fgh(FghCmd),
    /// The logics GL, GLT and GL2.
    #[command(subcommand)]
    Modal(ModalCmd),
    /// Stacks of iterated provability operators.
    #[command(subcommand)]
    Iter(IterCmd),
    /// Reference implementations and generators.
    #[command(subcommand)]
    Dev(DevCmd),
}

#[derive(Subcommand)]
enum OrdCmd {
    /// Prints LT, EQ or GT.
    Cmp { a: String, b: String },
    Add { a: String, b: String },
    Mul { a: String, b: String },
    /// The N-th element of the fundamental sequence of a limit L.
    Fundseq { l: String, n: BigUint },
    /// Walks down from A with parameter N.
    Stepdown {
        a: String,
        n: BigUint,
        #[arg(long, default_value = "0")]
        target: String,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
    },
}

#[derive(Subcommand)]
enum FghCmd {
    /// F_A(N), or its I-fold iterate.
    Eval {
        a: String,
        n: BigUint,
        #[arg(long, default_value = "1")]
        iter: BigUint,
    },
    /// Decides F_A(N) ≤ T, printing `LE value` or `GT`.
    Cmpto { a: String, n: BigUint, t: BigUint },
    /// F_ε₀(X ∸ Z).
    Shift {
        #[arg(allow_hyphen_values = true)]
        z: BigInt,
        x: BigUint,
    },
    L { n: u64 },
    R { n: u64 },
}

#[derive(Subcommand)]
enum ModalCmd {
    /// THEOREM, COUNTERMODEL with a model dump, or INCONCLUSIVE.
    Decide {
        system: System,
        formula: String,
        /// Print the Hilbert proof when one is found.
        #[arg(long)]
        show_proof: bool,
    },
    /// Truth of FORMULA at WORLD (a name or an index).
    Eval {
        model: String,
        world: String,
        formula: String,
        #[arg(long, default_value = "glt")]
        sem: Semantics,
    },
    /// Checks the A-soundness conditions relative to FORMULA.
    Checkmodel { model: String, formula: String },
    Checkproof { proof: String },
}

#[derive(Subcommand)]
enum IterCmd {
    Normalize {
        expr: String,
        #[arg(long)]
        outermost: bool,
        /// Also apply `B S1^α → B`.
        #[arg(long)]
        absorb_s1: bool,
    },
    /// YES when E1 provably implies E2 by the calculus, UNKNOWN otherwise.
    Entails { e1: String, e2: String },
}

#[derive(Subcommand)]
enum DevCmd {
    /// Every tree-like frame on N worlds, as parent arrays.
    Frames { n: usize },
    /// F_A(N) by plain recursion.
    OracleF { a: String, n: BigUint },
    /// A seeded random A-sound model for FORMULA.
    RandomModel {
        formula: String,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
}

enum Failure {
    Input(String),
    Model(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Model(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Model(m) => m,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

/// What a command prints, in both formats. `exhausted` marks a verdict
/// that ran out of budget or search bounds.
struct Report {
    plain: String,
    json: Value,
    exhausted: bool,
}

impl Report {
    fn new(plain: impl Into<String>, json: Value) -> Self {
        Report {
            plain: plain.into(),
            json,
            exhausted: false,
        }
    }

    fn exhausted(mut self) -> Self {
        self.exhausted = true;
        self
    }
}

fn ord(text: &str) -> Result<Ordinal, Failure> {
    parse_ordinal(text).map_err(input)
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse_formula(text).map_err(input)
}

fn iter_expr(text: &str) -> Result<IterExpr, Failure> {
    parse_iter(text).map_err(input)
}

fn load_model(path: &str) -> Result<KripkeModel, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Model(format!("{path}: {e}")))?;
    KripkeModel::from_json(&text).map_err(|e| Failure::Model(e.to_string()))
}

fn number(g: &Global, v: &BigUint) -> (String, Value) {
    if g.bits {
        (format!("bits={}", v.bits()), json!({ "bits": v.bits() }))
    } else {
        (v.to_string(), json!({ "value": v.to_string() }))
    }
}

fn eval_report(g: &Global, r: EvalResult) -> Report {
    match r {
        EvalResult::Value(v) => {
            let (plain, json) = number(g, &v);
            Report::new(plain, json)
        }
        EvalResult::BudgetExceeded { steps_used, largest_bits } => Report::new(
            "BUDGET",
            json!({ "verdict": "BUDGET", "steps_used": steps_used, "largest_bits": largest_bits }),
        )
        .exhausted(),
    }
}

fn run_ord(cmd: OrdCmd) -> Result<Report, Failure> {
    Ok(match cmd {
        OrdCmd::Cmp { a, b } => {
            let verdict = match compare(&ord(&a)?, &ord(&b)?) {
                std::cmp::Ordering::Less => "LT",
                std::cmp::Ordering::Equal => "EQ",
                std::cmp::Ordering::Greater => "GT",
            };
            Report::new(verdict, json!({ "verdict": verdict }))
        }
        OrdCmd::Add { a, b } => {
            let s = ord(&a)?.add(&ord(&b)?).map_err(input)?.to_string();
            Report::new(s.clone(), json!({ "ordinal": s }))
        }
        OrdCmd::Mul { a, b } => {
            let s = ord(&a)?.mul(&ord(&b)?).map_err(input)?.to_string();
            Report::new(s.clone(), json!({ "ordinal": s }))
        }
        OrdCmd::Fundseq { l, n } => {
            let s = ord(&l)?.fund_seq_big(&n).map_err(input)?.to_string();
            Report::new(s.clone(), json!({ "ordinal": s }))
        }
        OrdCmd::Stepdown {
            a,
            n,
            target,
            max_steps,
        } => {
            let render = |path: &[Ordinal]| path.iter().map(Ordinal::to_string).collect::<Vec<_>>();
            match stepdown_path(&ord(&a)?, &n, &ord(&target)?, max_steps) {
                PathResult::Reached { steps, path } => Report::new(
                    format!("REACHED r={steps}: {}", render(&path).join(",")),
                    json!({ "verdict": "REACHED", "steps": steps, "path": render(&path) }),
                ),
                PathResult::NotOnPath => Report::new("NOT_ON_PATH", json!({ "verdict": "NOT_ON_PATH" })),
                PathResult::StepBudgetExceeded { partial } => {
                    let last = partial.last().map(Ordinal::to_string).unwrap_or_default();
                    Report::new(
                        format!("BUDGET steps={} last={last}", partial.len() - 1),
                        json!({ "verdict": "BUDGET", "steps": partial.len() - 1, "last": last }),
                    )
                    .exhausted()
                }
            }
        }
    })
}

fn run_fgh(g: &Global, cmd: FghCmd) -> Result<Report, Failure> {
    let budget = EvalBudget::new(g.bitcap, g.stepcap).map_err(input)?;
    Ok(match cmd {
        FghCmd::Eval { a, n, iter } => eval_report(g, eval_F_iter(&ord(&a)?, &iter, &n, budget)),
        FghCmd::Cmpto { a, n, t } => match compare_F_to(&ord(&a)?, &n, &t, budget) {
            ThresholdResult::LE(v) => Report::new(format!("LE {v}"), json!({ "verdict": "LE", "value": v.to_string() })),
            ThresholdResult::GT => Report::new("GT", json!({ "verdict": "GT" })),
            ThresholdResult::BudgetExceeded { steps_used, largest_bits } => Report::new(
                "BUDGET",
                json!({ "verdict": "BUDGET", "steps_used": steps_used, "largest_bits": largest_bits }),
            )
            .exhausted(),
        },
        FghCmd::Shift { z, x } => eval_report(g, eval_F_shifted(&z, &x, budget)),
        FghCmd::L { n } => match SlowFunctions::new(budget).l(n) {
            Ok(v) => Report::new(v.to_string(), json!({ "value": v })),
            Err(e) => Report::new("BUDGET", json!({ "verdict": "BUDGET", "reason": e.to_string() })).exhausted(),
        },
        FghCmd::R { n } => match SlowFunctions::new(budget).r(n) {
            Ok(r) => eval_report(g, r),
            Err(e) => Report::new("BUDGET", json!({ "verdict": "BUDGET", "reason": e.to_string() })).exhausted(),
        },
    })
}

fn proof_json(p: &ProofObject) -> Value {
    serde_json::from_str(&p.to_json()).expect("proof JSON is valid")
}

fn run_modal(g: &Global, cmd: ModalCmd) -> Result<Report, Failure> {
    Ok(match cmd {
        ModalCmd::Decide {
            system,
            formula: text,
            show_proof,
        } => {
            let a = formula(&text)?;
            let limits = Limits {
                max_model_size: g.model_size,
                max_proof_depth: g.proof_depth,
            };
            match decide(system, &a, limits).map_err(input)? {
                DecisionOutcome::Theorem(Evidence::Proof(p)) => {
                    let mut plain = String::from("THEOREM");
                    if show_proof {
                        plain.push('\n');
                        plain.push_str(&p.to_json());
                    }
                    Report::new(plain, json!({ "verdict": "THEOREM", "proof": proof_json(&p) }))
                }
                DecisionOutcome::Theorem(Evidence::Certificate(c)) => {
                    Report::new("THEOREM", json!({ "verdict": "THEOREM", "certificate": c }))
                }
                DecisionOutcome::Countermodel { model, world } => {
                    let name = model.world_name(world).to_string();
                    Report::new(
                        format!("COUNTERMODEL\nworld: {name}\n{}", model.to_json()),
                        json!({ "verdict": "COUNTERMODEL", "world": name, "model": model.to_json_value() }),
                    )
                }
                DecisionOutcome::Inconclusive {
                    max_model_size,
                    max_proof_depth,
                } => Report::new(
                    format!("INCONCLUSIVE bound={max_model_size}"),
                    json!({ "verdict": "INCONCLUSIVE", "bound": max_model_size, "proof_depth": max_proof_depth }),
                )
                .exhausted(),
            }
        }
        ModalCmd::Eval {
            model,
            world,
            formula: text,
            sem,
        } => {
            let a = formula(&text)?;
            let m = load_model(&model)?;
            let w = m
                .world_index(&world)
                .or_else(|| world.parse().ok().filter(|&i: &usize| i < m.size()))
                .ok_or_else(|| Failure::Model(format!("no world `{world}` in {model}")))?;
            let value = m.eval(w, &a, sem).map_err(|e| match e {
                ModalError::Syntax(_) => input(e),
                _ => Failure::Model(e.to_string()),
            })?;
            let verdict = if value { "TRUE" } else { "FALSE" };
            Report::new(verdict, json!({ "verdict": verdict, "world": m.world_name(w) }))
        }
        ModalCmd::Checkmodel { model, formula: text } => {
            let a = formula(&text)?;
            let m = load_model(&model)?;
            match m.validate_model(&a) {
                Ok(()) => Report::new("OK", json!({ "verdict": "OK" })),
                Err(v) => return Err(Failure::Model(format!("VIOLATION condition={} {}", v.condition, v.detail))),
            }
        }
        ModalCmd::Checkproof { proof } => {
            let text = fs::read_to_string(&proof).map_err(|e| Failure::Input(format!("{proof}: {e}")))?;
            let p = ProofObject::from_json(&text).map_err(input)?;
            match check_proof(&p) {
                Ok(()) => Report::new("OK", json!({ "verdict": "OK" })),
                Err(e) => Report::new(
                    e.to_string(),
                    json!({ "verdict": "ERROR", "line": e.line, "reason": e.reason }),
                ),
            }
        }
    })
}

fn run_iter(cmd: IterCmd) -> Result<Report, Failure> {
    Ok(match cmd {
        IterCmd::Normalize {
            expr,
            outermost,
            absorb_s1,
        } => {
            let opts = NormalizeOptions {
                strategy: if outermost { Strategy::Outermost } else { Strategy::Innermost },
                absorb_s1_under_b: absorb_s1,
            };
            let s = normalize_with(&iter_expr(&expr)?, opts).to_string();
            Report::new(s.clone(), json!({ "expr": s }))
        }
        IterCmd::Entails { e1, e2 } => {
            let verdict = match entails(&iter_expr(&e1)?, &iter_expr(&e2)?) {
                Entailment::Yes => "YES",
                Entailment::Unknown => "UNKNOWN",
            };
            Report::new(verdict, json!({ "verdict": verdict }))
        }
    })
}

fn run_dev(g: &Global, cmd: DevCmd) -> Result<Report, Failure> {
    Ok(match cmd {
        DevCmd::Frames { n } => {
            if n == 0 || n > 8 {
                return Err(Failure::Input("frame size must be between 1 and 8".into()));
            }
            let frames: Vec<Vec<usize>> = enumerate_tree_frames(n).map(|f| f.parents().to_vec()).collect();
            let plain = frames.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>().join("\n");
            Report::new(plain, json!({ "count": frames.len(), "frames": frames }))
        }
        DevCmd::OracleF { a, n } => match oracle_F(&ord(&a)?, &n) {
            Ok(v) => {
                let (plain, json) = number(g, &v);
                Report::new(plain, json)
            }
            Err(e) => Report::new("BUDGET", json!({ "verdict": "BUDGET", "reason": e.to_string() })).exhausted(),
        },
        DevCmd::RandomModel { formula: text, max_size } => {
            let a = formula(&text)?;
            if max_size == 0 || max_size > 16 {
                return Err(Failure::Input("--max-size must be between 1 and 16".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let m = random_a_sound_model(&mut rng, &a, max_size, &a.variables());
            Report::new(m.to_json(), json!({ "model": m.to_json_value() }))
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Ord(c) => match c {
            OrdCmd::Cmp { .. } => "ord cmp",
            OrdCmd::Add { .. } => "ord add",
            OrdCmd::Mul { .. } => "ord mul",
            OrdCmd::Fundseq { .. } => "ord fundseq",
            OrdCmd::Stepdown { .. } => "ord stepdown",
        },
        Command::Fgh(c) => match c {
            FghCmd::Eval { .. } => "fgh eval",
            FghCmd::Cmpto { .. } => "fgh cmpto",
            FghCmd::Shift { .. } => "fgh shift",
            FghCmd::L { .. } => "fgh l",
            FghCmd::R { .. } => "fgh r",
        },
        Command::Modal(c) => match c {
            ModalCmd::Decide { .. } => "modal decide",
            ModalCmd::Eval { .. } => "modal eval",
            ModalCmd::Checkmodel { .. } => "modal checkmodel",
            ModalCmd::Checkproof { .. } => "modal checkproof",
        },
        Command::Iter(c) => match c {
            IterCmd::Normalize { .. } => "iter normalize",
            IterCmd::Entails { .. } => "iter entails",
        },
        Command::Dev(c) => match c {
            DevCmd::Frames { .. } => "dev frames",
            DevCmd::OracleF { .. } => "dev oracle-f",
            DevCmd::RandomModel { .. } => "dev random-model",
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global;
    let name = command_name(&cli.command);
    let result = match cli.command {
        Command::Ord(c) => run_ord(c),
        Command::Fgh(c) => run_fgh(&g, c),
        Command::Modal(c) => run_modal(&g, c),
        Command::Iter(c) => run_iter(c),
        Command::Dev(c) => run_dev(&g, c),
    };
    match result {
        Ok(report) => {
            match g.format {
                Format::Plain => println!("{}", report.plain),
                Format::Json => {
                    let mut record = report.json;
                    record["command"] = json!(name);
                    println!("{record}");
                }
            }
            if report.exhausted && g.strict {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            match g.format {
                Format::Plain => eprintln!("error: {}", f.message()),
                Format::Json => println!("{}", json!({ "command": name, "error": f.message(), "exit": f.code() })),
            }
            ExitCode::from(f.code())
        }
    }
}
