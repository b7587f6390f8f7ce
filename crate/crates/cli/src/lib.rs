//! Command-line front end for the Rex solver.
//!
//! Subcommands: `solve`, `analyze`, `openings`, `bench`, `oracle`.
//! Exit codes: 0 solved, 1 usage error, 2 timeout, 3 benchmark
//! correctness regression.

use std::io::Read;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use rex_core::board::{
    diagram, format_position_inline, parse_position, Coord, Dims, GameState, Player,
};
use rex_core::inferior::PruneReason;
use rex_core::oracle;
use rex_core::search::{
    evaluate_leaf, Features, SearchConfig, SolveResult, SolveStatus, Solver, Stats, WinVia,
    FEATURE_NAMES,
};

pub mod suites;

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_TIMEOUT: i32 = 2;
const EXIT_REGRESSION: i32 = 3;

#[derive(Parser)]
#[command(name = "rex", about = "Reverse Hex solver", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a position for its winner and a principal line.
    Solve(SolveArgs),
    /// Show the knowledge pipeline on a position: fillin, pruned moves
    /// with reasons, pairing connections, candidate order.
    Analyze(AnalyzeArgs),
    /// Solve every opening move of an empty board.
    Openings(OpeningsArgs),
    /// Run a test suite, optionally comparing a feature knockout.
    Bench(BenchArgs),
    /// Brute-force ground truth for boards of at most 16 cells.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct PositionArgs {
    /// Solve the empty NxN board.
    #[arg(long, value_name = "N", conflicts_with_all = ["board", "board_inline"])]
    size: Option<u8>,
    /// Read the position from a file (`-` for stdin).
    #[arg(long, value_name = "FILE", conflicts_with = "board_inline")]
    board: Option<String>,
    /// Position as inline text, rows separated by `/`.
    #[arg(long, value_name = "STR")]
    board_inline: Option<String>,
    /// Player to move; overrides the position text.
    #[arg(long, value_name = "b|w")]
    toplay: Option<String>,
}

impl PositionArgs {
    fn load(&self) -> Result<GameState, String> {
        let mut state = if let Some(n) = self.size {
            let dims = Dims::square(n).map_err(|e| e.to_string())?;
            GameState::empty(dims, Player::Black)
        } else if let Some(path) = &self.board {
            let text = if path == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| format!("reading stdin: {e}"))?;
                buf
            } else {
                std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?
            };
            parse_position(&text).map_err(|e| e.to_string())?
        } else if let Some(text) = &self.board_inline {
            parse_position(text).map_err(|e| e.to_string())?
        } else {
            return Err("one of --size, --board, --board-inline is required".into());
        };
        if let Some(toplay) = &self.toplay {
            state.to_move = match toplay.as_str() {
                "b" => Player::Black,
                "w" => Player::White,
                other => return Err(format!("bad --toplay {other:?}, expected b or w")),
            };
        }
        Ok(state)
    }
}

#[derive(Args)]
struct EngineArgs {
    /// Search threads.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Transposition table budget in MiB.
    #[arg(long, value_name = "M", default_value_t = 256)]
    tt_mb: usize,
    /// Time limit in seconds.
    #[arg(long, value_name = "SECONDS")]
    time_limit: Option<f64>,
    /// Worker tie-break seed (multi-threaded runs only).
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Resistance ordering polarity: `block` avoids own connections,
    /// `connect` inverts the preference.
    #[arg(long, value_name = "block|connect", default_value = "block")]
    resistance_polarity: String,
    #[arg(long, help = "Disable capture fillin")]
    no_capture_fillin: bool,
    #[arg(long, help = "Disable dead-cell pair fillin")]
    no_dead_fillin: bool,
    #[arg(long, help = "Disable mutual fillin")]
    no_mutual_fillin: bool,
    #[arg(long, help = "Disable inferior-move pruning")]
    no_inferior_prune: bool,
    #[arg(long, help = "Disable pairing-connection search")]
    no_hsearch: bool,
    #[arg(long, help = "Disable the augmented overlap rule")]
    no_augmented_hsearch: bool,
    #[arg(long, help = "Disable the color-symmetry rule")]
    no_color_symmetry: bool,
    #[arg(long, help = "Disable the clique dead-cell test")]
    no_dead_clique_cutset: bool,
    #[arg(long, help = "Disable resistance move ordering")]
    no_resistance_ordering: bool,
    /// Enable the virtual-connection-decomposition hook (currently a
    /// no-op placeholder).
    #[arg(long)]
    vc_decomp: bool,
}

impl EngineArgs {
    fn config(&self) -> Result<SearchConfig, String> {
        let mut features = Features::default();
        for (flag, name) in [
            (self.no_capture_fillin, "capture-fillin"),
            (self.no_dead_fillin, "dead-fillin"),
            (self.no_mutual_fillin, "mutual-fillin"),
            (self.no_inferior_prune, "inferior-prune"),
            (self.no_hsearch, "hsearch"),
            (self.no_augmented_hsearch, "augmented-hsearch"),
            (self.no_color_symmetry, "color-symmetry"),
            (self.no_dead_clique_cutset, "dead-clique-cutset"),
            (self.no_resistance_ordering, "resistance-ordering"),
        ] {
            if flag {
                features.set(name, false).map_err(|e| e.to_string())?;
            }
        }
        features.vc_decomp = self.vc_decomp;
        let prefer_blocking = match self.resistance_polarity.as_str() {
            "block" => true,
            "connect" => false,
            other => return Err(format!("bad --resistance-polarity {other:?}")),
        };
        Ok(SearchConfig {
            threads: self.threads.max(1),
            tt_bytes: self.tt_mb << 20,
            time_limit: self.time_limit.map(Duration::from_secs_f64),
            seed: self.seed,
            features,
            prefer_blocking,
            ..SearchConfig::default()
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    position: PositionArgs,
    #[command(flatten)]
    engine: EngineArgs,
    /// Emit one JSON record per line instead of human output.
    #[arg(long)]
    machine: bool,
    /// Also solve and report every legal root move.
    #[arg(long)]
    all_moves: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    position: PositionArgs,
    #[command(flatten)]
    engine: EngineArgs,
    #[arg(long)]
    machine: bool,
    /// Also solve every legal move for its exact value.
    #[arg(long)]
    values: bool,
}

#[derive(Args)]
struct OpeningsArgs {
    /// Board size N (NxN).
    #[arg(long, value_name = "N")]
    size: u8,
    #[command(flatten)]
    engine: EngineArgs,
    #[arg(long)]
    machine: bool,
    /// Collapse 180-degree-equivalent openings to one row.
    #[arg(long)]
    symmetry: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Suite name: 3x3-all, 4x4-openings, 5x5-acute-replies,
    /// 6x6-openings.
    #[arg(long, value_name = "SUITE")]
    suite: String,
    /// Feature to disable in the comparison run.
    #[arg(long, value_name = "FEATURE")]
    knockout: Option<String>,
    #[command(flatten)]
    engine: EngineArgs,
    #[arg(long)]
    machine: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    position: PositionArgs,
    #[arg(long)]
    machine: bool,
}

// --- Records -----------------------------------------------------------

/// One machine-readable result; serialized as a single JSON line.
#[derive(Serialize)]
pub struct ResultRecord {
    pub command: String,
    pub board: String,
    pub to_move: Player,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winner: Option<Player>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pv: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moves: Option<Vec<MoveValue>>,
    pub stats: Stats,
    pub config: serde_json::Value,
}

#[derive(Serialize)]
pub struct MoveValue {
    pub mv: String,
    pub winner: Player,
}

fn record_for(
    command: &str,
    s: &GameState,
    result: &SolveResult,
    cfg: &SearchConfig,
) -> ResultRecord {
    ResultRecord {
        command: command.to_string(),
        board: format_position_inline(s),
        to_move: s.to_move,
        winner: result.winner,
        status: match result.status {
            SolveStatus::Solved => "solved".into(),
            SolveStatus::Timeout => "timeout".into(),
        },
        pv: Some(result.pv.iter().map(|m| m.to_string()).collect()),
        moves: result.per_move.as_ref().map(|pm| {
            pm.iter()
                .map(|(m, w)| MoveValue { mv: m.to_string(), winner: *w })
                .collect()
        }),
        stats: result.stats,
        config: serde_json::to_value(cfg).unwrap_or(serde_json::Value::Null),
    }
}

fn emit(record: &ResultRecord) {
    println!("{}", serde_json::to_string(record).expect("record serializes"));
}

// --- Entry point ---------------------------------------------------------

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success exit codes.
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Openings(args) => cmd_openings(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn cmd_solve(args: SolveArgs) -> Result<i32, String> {
    let state = args.position.load()?;
    let cfg = args.engine.config()?;
    let mut solver = Solver::new(cfg.clone());
    let result = if args.all_moves {
        solver.solve_all_moves(&state).map_err(|e| e.to_string())?
    } else {
        solver.solve(&state)
    };
    if args.machine {
        emit(&record_for("solve", &state, &result, &cfg));
    } else {
        print!("{}", diagram(&state.pos));
        match result.winner {
            Some(w) => println!("winner: {w}"),
            None => println!("winner: unresolved (timeout)"),
        }
        if !result.pv.is_empty() {
            let line: Vec<String> = result.pv.iter().map(|m| m.to_string()).collect();
            println!("principal line: {}", line.join(" "));
        }
        if let Some(per_move) = &result.per_move {
            for (m, w) in per_move {
                println!("  {m}: {w}");
            }
        }
        println!(
            "nodes {} knowledge {} tt-hits {} in {:.3}s",
            result.stats.nodes,
            result.stats.knowledge_calls,
            result.stats.tt_hits,
            result.stats.elapsed_secs
        );
    }
    Ok(match result.status {
        SolveStatus::Solved => EXIT_OK,
        SolveStatus::Timeout => EXIT_TIMEOUT,
    })
}

fn prune_reason_text(reason: &PruneReason) -> String {
    match reason {
        PruneReason::DeadDominatesAll => "dead-dominates-all".into(),
        PruneReason::VictimOverKiller(c) => format!("victim-over-killer {c}"),
        PruneReason::VulnerableOverOppKiller(c) => format!("vulnerable-over-opp-killer {c}"),
        PruneReason::CaptureeOverCapturer(c) => format!("capturee-over-capturer {c}"),
        PruneReason::MutualFillinCreator(c) => format!("mutual-fillin-creator {c}"),
        PruneReason::PreJoinKey => "pre-join-key".into(),
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<i32, String> {
    let state = args.position.load()?;
    if state.pos.terminal_loser().is_some() {
        return Err("position is already terminal".into());
    }
    let cfg = args.engine.config()?;
    let knowledge = evaluate_leaf(&state, &cfg);

    // Side-to-side connections and the mover's pre-join keys, listed
    // even when the state is already decided.
    let mut side_vcs: Vec<serde_json::Value> = Vec::new();
    let mut mover_keys: Vec<String> = Vec::new();
    if cfg.features.hsearch {
        use rex_core::pairvc::{self, VcKind};
        let hcfg = pairvc::HsearchConfig {
            augmented: cfg.features.augmented_hsearch,
            ..pairvc::HsearchConfig::default()
        };
        let reduced = &knowledge.reduced;
        let vcs_black = pairvc::hsearch(&reduced.pos, Player::Black, &hcfg);
        let vcs_white = pairvc::hsearch(&reduced.pos, Player::White, &hcfg);
        for vcs in [&vcs_black, &vcs_white] {
            for kind in [VcKind::Full, VcKind::Semi] {
                for vc in pairvc::side_to_side(vcs, kind) {
                    side_vcs.push(serde_json::to_value(vc).unwrap_or(serde_json::Value::Null));
                }
            }
        }
        let mover_vcs = match reduced.to_move {
            Player::Black => &vcs_black,
            Player::White => &vcs_white,
        };
        mover_keys = pairvc::prune_keys(reduced, mover_vcs)
            .iter()
            .map(|c| c.to_string())
            .collect();
    }

    let values = if args.values && knowledge.solved.is_none() {
        let mut solver = Solver::new(cfg.clone());
        let r = solver.solve_all_moves(&state).map_err(|e| e.to_string())?;
        r.per_move
    } else {
        None
    };

    if args.machine {
        #[derive(Serialize)]
        struct AnalyzeRecord<'a> {
            command: &'a str,
            board: String,
            to_move: Player,
            fillin: &'a rex_core::inferior::FillinRecord,
            reduced: String,
            kept: Vec<String>,
            removed: Vec<serde_json::Value>,
            #[serde(skip_serializing_if = "Option::is_none")]
            solved: Option<&'a rex_core::search::WinOutcome>,
            candidates: Vec<String>,
            side_to_side_vcs: Vec<serde_json::Value>,
            /// Keys of the mover's own pre-join pairings.
            mover_keys: Vec<String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            moves: Option<Vec<MoveValue>>,
            config: serde_json::Value,
        }
        let record = AnalyzeRecord {
            command: "analyze",
            board: format_position_inline(&state),
            to_move: state.to_move,
            fillin: &knowledge.fillin,
            reduced: format_position_inline(&knowledge.reduced),
            kept: knowledge.prune.kept.iter().map(|c| c.to_string()).collect(),
            removed: knowledge
                .prune
                .removed
                .iter()
                .map(|(m, r)| serde_json::json!({ "mv": m.to_string(), "reason": r }))
                .collect(),
            solved: knowledge.solved.as_ref(),
            candidates: knowledge.candidates.iter().map(|c| c.to_string()).collect(),
            side_to_side_vcs: side_vcs,
            mover_keys,
            moves: values.map(|pm| {
                pm.iter()
                    .map(|(m, w)| MoveValue { mv: m.to_string(), winner: *w })
                    .collect()
            }),
            config: serde_json::to_value(&cfg).unwrap_or(serde_json::Value::Null),
        };
        println!("{}", serde_json::to_string(&record).expect("record serializes"));
        return Ok(EXIT_OK);
    }

    print!("{}", diagram(&state.pos));
    if knowledge.fillin.is_empty() {
        println!("fillin: none");
    } else {
        println!("fillin:");
        for (c, p, r) in &knowledge.fillin.entries {
            println!("  {c} -> {p} ({r:?})");
        }
        print!("reduced:\n{}", diagram(&knowledge.reduced.pos));
    }
    if !side_vcs.is_empty() {
        println!("side-to-side pairing connections: {}", side_vcs.len());
    }
    if !mover_keys.is_empty() {
        println!("mover pre-join keys: {}", mover_keys.join(" "));
    }
    if let Some(outcome) = &knowledge.solved {
        println!("decided: {} wins", outcome.winner);
        match &outcome.via {
            WinVia::Terminal => println!("  via terminal position"),
            WinVia::ColorSymmetry => println!("  via color symmetry (win for Notlast)"),
            WinVia::AllMovesAreKeys => println!("  via all moves being pre-join keys"),
            WinVia::PairingCertificate { certificate } => {
                println!(
                    "  via {:?} of {} (key {:?}, {} pairs)",
                    certificate.kind,
                    certificate.vc.player,
                    certificate.vc.key.map(|k| k.to_string()),
                    certificate.vc.pairing.len()
                );
            }
        }
        return Ok(EXIT_OK);
    }
    let kept: Vec<String> = knowledge.prune.kept.iter().map(|c| c.to_string()).collect();
    println!("kept moves: {}", kept.join(" "));
    if !knowledge.prune.removed.is_empty() {
        println!("removed:");
        for (m, r) in &knowledge.prune.removed {
            println!("  {m}: {}", prune_reason_text(r));
        }
    }
    let order: Vec<String> = knowledge.candidates.iter().map(|c| c.to_string()).collect();
    println!("search order: {}", order.join(" "));
    if let Some(values) = values {
        println!("move values:");
        for (m, w) in values {
            println!("  {m}: {w}");
        }
    }
    Ok(EXIT_OK)
}

fn cmd_openings(args: OpeningsArgs) -> Result<i32, String> {
    let dims = Dims::square(args.size).map_err(|e| e.to_string())?;
    let state = GameState::empty(dims, Player::Black);
    let cfg = args.engine.config()?;
    let mut solver = Solver::new(cfg.clone());
    let mut result = solver.solve_all_moves(&state).map_err(|e| e.to_string())?;

    if args.symmetry {
        if let Some(pm) = &result.per_move {
            let n = dims.cells();
            let mut seen = std::collections::HashSet::new();
            let mut reduced = Vec::new();
            for &(m, w) in pm {
                let idx = dims.index(m);
                let class = idx.min(n - 1 - idx);
                if seen.insert(class) {
                    reduced.push((m, w));
                }
            }
            result.per_move = Some(reduced);
        }
    }

    if args.machine {
        emit(&record_for("openings", &state, &result, &cfg));
    } else {
        println!("openings on {}x{} ({} to move):", dims.width, dims.height, state.to_move);
        if let Some(pm) = &result.per_move {
            for (m, w) in pm {
                let verdict = if *w == state.to_move { "wins" } else { "loses" };
                println!("  {m}: {verdict}");
            }
        }
        println!(
            "nodes {} knowledge {} in {:.3}s",
            result.stats.nodes, result.stats.knowledge_calls, result.stats.elapsed_secs
        );
    }
    Ok(match result.status {
        SolveStatus::Solved => EXIT_OK,
        SolveStatus::Timeout => EXIT_TIMEOUT,
    })
}

/// Outcome of one suite run.
pub struct SuiteRun {
    pub winners: Vec<(String, Player)>,
    pub nodes: u64,
    pub elapsed: f64,
}

/// Solve every state of a suite with a fresh solver under `cfg`.
pub fn run_suite(cfg: &SearchConfig, states: &[(String, GameState)]) -> Result<SuiteRun, String> {
    let mut solver = Solver::new(cfg.clone());
    let mut winners = Vec::new();
    let mut nodes = 0;
    let start = Instant::now();
    for (name, s) in states {
        let r = solver.solve(s);
        nodes += r.stats.nodes;
        match r.winner {
            Some(w) => winners.push((name.clone(), w)),
            None => return Err(format!("suite entry {name} timed out")),
        }
    }
    Ok(SuiteRun { winners, nodes, elapsed: start.elapsed().as_secs_f64() })
}

fn cmd_bench(args: BenchArgs) -> Result<i32, String> {
    let states = suites::suite_states(&args.suite)?;
    let cfg = args.engine.config()?;
    if let Some(feature) = &args.knockout {
        if !FEATURE_NAMES.contains(&feature.as_str()) {
            return Err(format!(
                "unknown feature {feature:?}; known: {}",
                FEATURE_NAMES.join(", ")
            ));
        }
    }
    let base = run_suite(&cfg, &states)?;
    let mut knockout = None;
    if let Some(feature) = &args.knockout {
        let mut kcfg = cfg.clone();
        kcfg.features.set(feature, false).map_err(|e| e.to_string())?;
        knockout = Some((feature.clone(), run_suite(&kcfg, &states)?));
    }

    let mut regression = false;
    if let Some((feature, krun)) = &knockout {
        for ((name, w1), (_, w2)) in base.winners.iter().zip(&krun.winners) {
            if w1 != w2 {
                eprintln!("regression: {name} winner {w1} vs {w2} without {feature}");
                regression = true;
            }
        }
    }

    if args.machine {
        #[derive(Serialize)]
        struct BenchRecord<'a> {
            command: &'a str,
            suite: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            knockout: Option<&'a str>,
            winners: Vec<(String, Player)>,
            nodes: u64,
            elapsed_secs: f64,
            #[serde(skip_serializing_if = "Option::is_none")]
            knockout_nodes: Option<u64>,
            #[serde(skip_serializing_if = "Option::is_none")]
            knockout_elapsed_secs: Option<f64>,
            #[serde(skip_serializing_if = "Option::is_none")]
            node_ratio: Option<f64>,
            #[serde(skip_serializing_if = "Option::is_none")]
            time_ratio: Option<f64>,
            winners_match: bool,
            config: serde_json::Value,
        }
        let record = BenchRecord {
            command: "bench",
            suite: &args.suite,
            knockout: knockout.as_ref().map(|(f, _)| f.as_str()),
            winners: base.winners.clone(),
            nodes: base.nodes,
            elapsed_secs: base.elapsed,
            knockout_nodes: knockout.as_ref().map(|(_, k)| k.nodes),
            knockout_elapsed_secs: knockout.as_ref().map(|(_, k)| k.elapsed),
            node_ratio: knockout
                .as_ref()
                .map(|(_, k)| k.nodes as f64 / base.nodes.max(1) as f64),
            time_ratio: knockout
                .as_ref()
                .map(|(_, k)| k.elapsed / base.elapsed.max(1e-9)),
            winners_match: !regression,
            config: serde_json::to_value(&cfg).unwrap_or(serde_json::Value::Null),
        };
        println!("{}", serde_json::to_string(&record).expect("record serializes"));
    } else {
        println!(
            "suite {}: {} states, {} nodes, {:.3}s",
            args.suite,
            base.winners.len(),
            base.nodes,
            base.elapsed
        );
        for (name, w) in &base.winners {
            println!("  {name}: {w}");
        }
        if let Some((feature, krun)) = &knockout {
            println!(
                "without {feature}: {} nodes ({:.2}x), {:.3}s ({:.2}x), winners {}",
                krun.nodes,
                krun.nodes as f64 / base.nodes.max(1) as f64,
                krun.elapsed,
                krun.elapsed / base.elapsed.max(1e-9),
                if regression { "MISMATCH" } else { "identical" }
            );
        }
    }
    Ok(if regression { EXIT_REGRESSION } else { EXIT_OK })
}

fn cmd_oracle(args: OracleArgs) -> Result<i32, String> {
    let state = args.position.load()?;
    let result = oracle::oracle_solve(&state).map_err(|e| e.to_string())?;
    if args.machine {
        #[derive(Serialize)]
        struct OracleRecord {
            command: &'static str,
            board: String,
            to_move: Player,
            winner: Player,
            moves: Vec<MoveValue>,
        }
        let record = OracleRecord {
            command: "oracle",
            board: format_position_inline(&state),
            to_move: state.to_move,
            winner: result.winner,
            moves: result
                .per_move
                .iter()
                .map(|(m, w)| MoveValue { mv: m.to_string(), winner: *w })
                .collect(),
        };
        println!("{}", serde_json::to_string(&record).expect("record serializes"));
    } else {
        print!("{}", diagram(&state.pos));
        println!("winner: {}", result.winner);
        for (m, w) in &result.per_move {
            println!("  {m}: {w}");
        }
    }
    Ok(EXIT_OK)
}

/// The empty-board state plus one stone; used by suite definitions.
pub fn opening_state(dims: Dims, opening: &str) -> GameState {
    let base = GameState::empty(dims, Player::Black);
    let (_, c) = Coord::parse_move(opening).expect("valid opening");
    base.play(c).expect("legal opening")
}
