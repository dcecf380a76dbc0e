//! The `coopverif` command line.
//!
//! Exit codes: 0 holds/true, 1 fails/false, 2 bound-limited, 3 usage or
//! format error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bisim::{bisimilar, verify_bisimulation};
use crate::coop::ltl::{CoopSolver, SearchOptions};
use crate::coop::{Status, Verdict, Witness};
use crate::error::GameError;
use crate::format::{parse_game, parse_joint, parse_profile, print_game, print_profile, verdict_json, FormatError};
use crate::game::{AgentId, Coalition, ConcurrentGameStructure, Game, LtlGame, MpGame};
use crate::gen::{build_example, cnf_to_mp_game, random_cnf, random_game, Cnf, Family, RandomParams};
use crate::ltl::{parse_ltl, Ltl};
use crate::mp::{
    is_lower_bound, is_lower_bound_strict, mp_core_membership, mp_e_core, mp_is_beneficial_deviation,
    profile_payoffs, Rational,
};
use crate::strategy::{run_of, winners, JointStrategy, StrategyProfile};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "coopverif", version, about = "Cooperative verification of concurrent games")]
pub struct Cli {
    /// Print machine-readable verdicts.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for enumeration (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GameArg {
    /// Game file.
    game: PathBuf,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    game: PathBuf,
    /// Strategy file with one block per agent.
    #[arg(long)]
    profile: PathBuf,
}

#[derive(Debug, Args)]
struct DeviationArgs {
    game: PathBuf,
    #[arg(long)]
    profile: PathBuf,
    /// Strategy file; its agents form the deviating coalition.
    #[arg(long)]
    deviation: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and check a game file.
    Validate(GameArg),
    /// Print the run of a profile with its winners or payoffs.
    Run(ProfileArgs),
    /// Is the deviation beneficial for its coalition?
    Deviation(DeviationArgs),
    /// Is the deviation strongly beneficial?
    StrongDeviation(DeviationArgs),
    /// Can the coalition guarantee all its goals?
    Fulfilled {
        game: PathBuf,
        /// Comma-separated agents, e.g. `1,3`.
        #[arg(long)]
        coalition: String,
        #[arg(long, default_value_t = 1)]
        bound: usize,
    },
    CoreMember {
        #[command(flatten)]
        p: ProfileArgs,
        #[arg(long, default_value_t = 1)]
        bound: usize,
    },
    StrongCoreMember {
        #[command(flatten)]
        p: ProfileArgs,
        #[arg(long, default_value_t = 1)]
        bound: usize,
    },
    /// Does some core member's run satisfy the formula?
    ECore {
        game: PathBuf,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = 1)]
        bound: usize,
    },
    /// Do all core members' runs satisfy the formula?
    ACore {
        game: PathBuf,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = 1)]
        bound: usize,
    },
    /// Strong-core membership of every bounded profile; exit 0 iff none is a member.
    StrongCoreSearch {
        game: PathBuf,
        #[arg(long, default_value_t = 1)]
        bound: usize,
    },
    MpDeviation(DeviationArgs),
    MpCoreMember(ProfileArgs),
    MpECore(GameArg),
    /// Can the coalition guarantee payoffs at least (or above) `z`?
    LowerBound {
        game: PathBuf,
        #[arg(long)]
        coalition: String,
        /// Comma-separated rationals, one per member, e.g. `1,1/2`.
        #[arg(long)]
        z: String,
        #[arg(long)]
        strict: bool,
    },
    /// Bisimilarity of the initial states of two ltl games.
    Bisim { left: PathBuf, right: PathBuf },
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Print a built-in example; with `--out-dir` also write its profiles.
    Example {
        name: String,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// 3-CNF gadget from a DIMACS file or a seeded random formula.
    Cnf {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value_t = 3)]
        clauses: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the reference profile here.
        #[arg(long)]
        profile_out: Option<PathBuf>,
    },
    Random {
        #[arg(long, default_value = "sink-ltl")]
        family: String,
        #[arg(long, default_value_t = 2)]
        agents: usize,
        #[arg(long, default_value_t = 3)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        actions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Errors that end a command with a message.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Other(String),
}

type Out<'a> = &'a mut dyn Write;

/// Runs the tool on `args` (including the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_HOLDS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    if cli.jobs > 0 {
        // Fails harmlessly when a pool already exists (tests call `run` repeatedly).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))
}

fn load_game(path: &Path) -> Result<Game, CliError> {
    parse_game(&read(path)?).map_err(|source| CliError::Format {
        path: path.display().to_string(),
        source,
    })
}

fn ltl(game: &Game) -> Result<&LtlGame, CliError> {
    game.as_ltl().map_err(|e| CliError::Usage(e.to_string()))
}

fn mp(game: &Game) -> Result<&MpGame, CliError> {
    game.as_mp().map_err(|e| CliError::Usage(e.to_string()))
}

fn load_profile(path: &Path, m: &ConcurrentGameStructure) -> Result<StrategyProfile, CliError> {
    parse_profile(&read(path)?, m).map_err(|source| CliError::Format {
        path: path.display().to_string(),
        source,
    })
}

fn load_joint(path: &Path, m: &ConcurrentGameStructure) -> Result<JointStrategy, CliError> {
    parse_joint(&read(path)?, m).map_err(|source| CliError::Format {
        path: path.display().to_string(),
        source,
    })
}

fn coalition(text: &str, agents: usize) -> Result<Coalition, CliError> {
    let mut c = Coalition::empty();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match tok.parse::<usize>() {
            Ok(i) if (1..=agents).contains(&i) => c = c.with(AgentId(i - 1)),
            _ => return Err(CliError::Usage(format!("bad agent `{tok}` in coalition"))),
        }
    }
    Ok(c)
}

fn formula(text: &str) -> Result<Ltl, CliError> {
    parse_ltl(text).map_err(|e| CliError::Usage(format!("formula: {e}")))
}

fn game_err(e: GameError) -> CliError {
    CliError::Other(e.to_string())
}

fn mp_err(e: crate::mp::MpError) -> CliError {
    CliError::Other(e.to_string())
}

fn coalition_names(c: Coalition) -> String {
    let v: Vec<String> = c.members().map(|a| (a.0 + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

/// Actions at states where the agent has a choice; memory size otherwise.
fn machine_summary(m: &ConcurrentGameStructure, a: AgentId, s: &crate::strategy::MachineStrategy) -> String {
    match s.as_memoryless() {
        Some(map) => {
            let parts: Vec<String> = m
                .states()
                .filter(|&st| m.relevant_actions(a, st).len() > 1)
                .map(|st| format!("{}:{}", m.state_name(st), m.action_name(a, map[st.0])))
                .collect();
            if parts.is_empty() {
                "-".into()
            } else {
                parts.join(" ")
            }
        }
        None => format!("machine({} states)", s.state_count()),
    }
}

fn joint_summary(m: &ConcurrentGameStructure, j: &JointStrategy) -> String {
    let parts: Vec<String> = j
        .members()
        .map(|(a, s)| format!("{} -> {}", a.0 + 1, machine_summary(m, a, s)))
        .collect();
    format!("{} [{}]", coalition_names(j.coalition), parts.join("; "))
}

fn profile_summary(m: &ConcurrentGameStructure, p: &StrategyProfile) -> String {
    let parts: Vec<String> = m
        .agents()
        .map(|a| format!("{}: {}", a.0 + 1, machine_summary(m, a, p.get(a))))
        .collect();
    parts.join(" | ")
}

fn report(cli: &Cli, out: Out, m: &ConcurrentGameStructure, v: &Verdict) -> Result<i32, CliError> {
    if cli.json {
        let j = serde_json::to_string(&verdict_json(m, v)).map_err(|e| CliError::Other(e.to_string()))?;
        writeln!(out, "{j}").ok();
    } else {
        writeln!(out, "{}", v.status).ok();
        match &v.witness {
            Some(Witness::Lasso(l)) => writeln!(out, "run: {}", l.display(m)).ok(),
            Some(Witness::Deviation(d)) => writeln!(out, "deviation: {}", joint_summary(m, d)).ok(),
            None => None,
        };
    }
    Ok(v.status.exit_code())
}

fn report_bool(cli: &Cli, out: Out, m: &ConcurrentGameStructure, b: bool) -> Result<i32, CliError> {
    let v = if b { Verdict::holds(None, None) } else { Verdict::fails(None, None) };
    report(cli, out, m, &v)
}

fn payoff_text(p: &[Rational]) -> Vec<String> {
    p.iter().map(|r| r.to_string()).collect()
}

fn dispatch(cli: &Cli, out: Out) -> Result<i32, CliError> {
    match &cli.command {
        Command::Validate(a) => {
            let text = read(&a.game)?;
            match parse_game(&text) {
                Ok(g) => {
                    let m = g.structure();
                    writeln!(out, "ok: {} agents, {} states", m.agent_count(), m.state_count()).ok();
                    Ok(EXIT_HOLDS)
                }
                Err(FormatError::Invalid(e)) => {
                    writeln!(out, "invalid: {e}").ok();
                    Ok(EXIT_FAILS)
                }
                Err(source) => Err(CliError::Format {
                    path: a.game.display().to_string(),
                    source,
                }),
            }
        }
        Command::Run(a) => {
            let g = load_game(&a.game)?;
            let m = g.structure();
            let p = load_profile(&a.profile, m)?;
            let run = run_of(m, &p).map_err(game_err)?;
            let (stem, cycle) = run.names(m);
            let mut obj = serde_json::json!({"lasso": {"stem": stem, "loop": cycle}});
            match &g {
                Game::Ltl(lg) => {
                    let w = winners(lg, &run);
                    obj["winners"] = w.members().map(|a| a.0 + 1).collect::<Vec<_>>().into();
                    if !cli.json {
                        writeln!(out, "run: {}\nwinners: {}", run.display(m), coalition_names(w)).ok();
                    }
                }
                Game::MeanPayoff(mg) => {
                    let pay = profile_payoffs(mg, &p).map_err(mp_err)?;
                    obj["payoffs"] = payoff_text(&pay).into();
                    if !cli.json {
                        writeln!(out, "run: {}\npayoffs: ({})", run.display(m), payoff_text(&pay).join(", ")).ok();
                    }
                }
            }
            if cli.json {
                writeln!(out, "{obj}").ok();
            }
            Ok(EXIT_HOLDS)
        }
        Command::Deviation(a) | Command::StrongDeviation(a) => {
            let g = load_game(&a.game)?;
            let lg = ltl(&g)?;
            let p = load_profile(&a.profile, &lg.structure)?;
            let d = load_joint(&a.deviation, &lg.structure)?;
            let solver = CoopSolver::new(lg, SearchOptions::default());
            let v = if matches!(cli.command, Command::Deviation(_)) {
                solver.is_beneficial_deviation(&p, &d)
            } else {
                solver.is_strong_beneficial_deviation(&p, &d)
            }
            .map_err(game_err)?;
            report(cli, out, &lg.structure, &v)
        }
        Command::Fulfilled { game, coalition: c, bound } => {
            let g = load_game(game)?;
            let lg = ltl(&g)?;
            let c = coalition(c, lg.structure.agent_count())?;
            let v = CoopSolver::new(lg, SearchOptions::with_bound(*bound)).is_fulfilled(c);
            report(cli, out, &lg.structure, &v)
        }
        Command::CoreMember { p, bound } | Command::StrongCoreMember { p, bound } => {
            let g = load_game(&p.game)?;
            let lg = ltl(&g)?;
            let prof = load_profile(&p.profile, &lg.structure)?;
            let solver = CoopSolver::new(lg, SearchOptions::with_bound(*bound));
            let v = if matches!(cli.command, Command::CoreMember { .. }) {
                solver.core_membership(&prof)
            } else {
                solver.strong_core_membership(&prof)
            }
            .map_err(game_err)?;
            report(cli, out, &lg.structure, &v)
        }
        Command::ECore { game, phi, bound } | Command::ACore { game, phi, bound } => {
            let g = load_game(game)?;
            let lg = ltl(&g)?;
            let f = formula(phi)?;
            let solver = CoopSolver::new(lg, SearchOptions::with_bound(*bound));
            let v = if matches!(cli.command, Command::ECore { .. }) {
                solver.e_core(&f)
            } else {
                solver.a_core(&f)
            };
            report(cli, out, &lg.structure, &v)
        }
        Command::StrongCoreSearch { game, bound } => {
            let g = load_game(game)?;
            let lg = ltl(&g)?;
            let m = &lg.structure;
            let rep = CoopSolver::new(lg, SearchOptions::with_bound(*bound))
                .strong_core_empty_search()
                .map_err(game_err)?;
            if cli.json {
                let rows: Vec<serde_json::Value> = rep
                    .rows
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "profile": profile_summary(m, &r.profile),
                            "winners": r.winners.members().map(|a| a.0 + 1).collect::<Vec<_>>(),
                            "verdict": verdict_json(m, &r.verdict),
                        })
                    })
                    .collect();
                let obj = serde_json::json!({"empty-at-bound": rep.empty, "bound": rep.bound, "rows": rows});
                writeln!(out, "{obj}").ok();
            } else {
                writeln!(out, "empty-at-bound: {}", rep.empty).ok();
                writeln!(out, "bound: {}", rep.bound).ok();
                writeln!(out, "rows: {}", rep.rows.len()).ok();
                for r in &rep.rows {
                    let dev = match r.verdict.deviation() {
                        Some(d) => joint_summary(m, d),
                        None => "-".into(),
                    };
                    writeln!(
                        out,
                        "{} | winners {} | {} | {}",
                        profile_summary(m, &r.profile),
                        coalition_names(r.winners),
                        r.verdict.status,
                        dev
                    )
                    .ok();
                }
            }
            Ok(if rep.empty { EXIT_HOLDS } else { EXIT_FAILS })
        }
        Command::MpDeviation(a) => {
            let g = load_game(&a.game)?;
            let mg = mp(&g)?;
            let p = load_profile(&a.profile, &mg.structure)?;
            let d = load_joint(&a.deviation, &mg.structure)?;
            let b = mp_is_beneficial_deviation(mg, &p, &d).map_err(mp_err)?;
            report_bool(cli, out, &mg.structure, b)
        }
        Command::MpCoreMember(a) => {
            let g = load_game(&a.game)?;
            let mg = mp(&g)?;
            let p = load_profile(&a.profile, &mg.structure)?;
            let v = mp_core_membership(mg, &p).map_err(mp_err)?;
            report(cli, out, &mg.structure, &v)
        }
        Command::MpECore(a) => {
            let g = load_game(&a.game)?;
            let mg = mp(&g)?;
            let m = &mg.structure;
            let found = mp_e_core(mg).map_err(mp_err)?;
            let status = if found.is_some() { Status::Holds } else { Status::Fails };
            if cli.json {
                let mut obj = serde_json::json!({"status": status.name(), "witness": null, "bound": 1});
                if let Some((p, pay)) = &found {
                    obj["profile"] = profile_summary(m, p).into();
                    obj["payoffs"] = payoff_text(pay).into();
                }
                writeln!(out, "{obj}").ok();
            } else {
                writeln!(out, "{}", status).ok();
                if let Some((p, pay)) = &found {
                    writeln!(out, "profile: {}\npayoffs: ({})", profile_summary(m, p), payoff_text(pay).join(", ")).ok();
                    write!(out, "{}", print_profile(m, p)).ok();
                }
            }
            Ok(status.exit_code())
        }
        Command::LowerBound { game, coalition: c, z, strict } => {
            let g = load_game(game)?;
            let mg = mp(&g)?;
            let c = coalition(c, mg.structure.agent_count())?;
            let z: Vec<Rational> = z
                .split(',')
                .map(|t| t.trim().parse::<Rational>().map_err(|_| CliError::Usage(format!("bad rational `{t}`"))))
                .collect::<Result<_, _>>()?;
            let b = if *strict {
                is_lower_bound_strict(mg, c, &z)
            } else {
                is_lower_bound(mg, c, &z)
            }
            .map_err(mp_err)?;
            report_bool(cli, out, &mg.structure, b)
        }
        Command::Bisim { left, right } => {
            let (g1, g2) = (load_game(left)?, load_game(right)?);
            let (a, b) = (ltl(&g1)?, ltl(&g2)?);
            let rel = bisimilar(&a.structure, &a.labelling, &b.structure, &b.labelling)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let ok = rel
                .as_ref()
                .is_some_and(|r| verify_bisimulation(&a.structure, &a.labelling, &b.structure, &b.labelling, r));
            if cli.json {
                let pairs: Vec<(String, String)> = rel
                    .iter()
                    .flat_map(|r| r.pairs.iter())
                    .map(|&(s, t)| (a.structure.state_name(s).to_string(), b.structure.state_name(t).to_string()))
                    .collect();
                let obj = serde_json::json!({
                    "status": if ok { "HOLDS" } else { "FAILS" },
                    "witness": null,
                    "bound": null,
                    "relation": pairs,
                });
                writeln!(out, "{obj}").ok();
            } else {
                writeln!(out, "{}", if ok { "HOLDS" } else { "FAILS" }).ok();
                if let Some(r) = &rel {
                    for &(s, t) in &r.pairs {
                        writeln!(out, "{} ~ {}", a.structure.state_name(s), b.structure.state_name(t)).ok();
                    }
                }
            }
            Ok(if ok { EXIT_HOLDS } else { EXIT_FAILS })
        }
        Command::Gen(g) => generate(g, out),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Other(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))
}

fn generate(g: &GenCommand, out: Out) -> Result<i32, CliError> {
    let usage = |e: crate::gen::GenError| CliError::Usage(e.to_string());
    match g {
        GenCommand::Example { name, out_dir } => {
            let ex = build_example(name).map_err(usage)?;
            let text = print_game(&ex.game);
            match out_dir {
                None => write!(out, "{text}").ok(),
                Some(dir) => {
                    write_file(&dir.join(format!("{name}.game")), &text)?;
                    for (pname, p) in &ex.profiles {
                        let path = dir.join("profiles").join(format!("{pname}.strat"));
                        write_file(&path, &print_profile(ex.game.structure(), p))?;
                    }
                    writeln!(out, "wrote {} and {} profiles", name, ex.profiles.len()).ok()
                }
            };
            Ok(EXIT_HOLDS)
        }
        GenCommand::Cnf {
            file,
            vars,
            clauses,
            seed,
            profile_out,
        } => {
            let cnf = match file {
                Some(f) => Cnf::parse(&read(f)?).map_err(usage)?,
                None => random_cnf(*vars, *clauses, *seed),
            };
            let (game, profile) = cnf_to_mp_game(&cnf).map_err(usage)?;
            let game = Game::MeanPayoff(game);
            let mut text = String::new();
            for line in cnf.to_string().lines() {
                text.push_str(&format!("# {line}\n"));
            }
            text.push_str(&print_game(&game));
            write!(out, "{text}").ok();
            if let Some(path) = profile_out {
                write_file(path, &print_profile(game.structure(), &profile))?;
            }
            Ok(EXIT_HOLDS)
        }
        GenCommand::Random {
            family,
            agents,
            states,
            actions,
            seed,
        } => {
            let fam: Family = family.parse().map_err(usage)?;
            let params = RandomParams::new(*agents, *states, *actions).map_err(usage)?;
            let game = random_game(fam, params, *seed).map_err(usage)?;
            write!(out, "{}", print_game(&game)).ok();
            Ok(EXIT_HOLDS)
        }
    }
}
