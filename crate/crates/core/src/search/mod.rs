//! Depth-first proof-number search over Rex states.
//!
//! Each node runs the knowledge pipeline (fillin, transposition probe,
//! color symmetry, inferior-move pruning, pairing-connection search) and
//! only then expands children, focusing on a few at a time as ranked by
//! the resistance model. The transposition table is the only structure
//! shared between search threads.

mod resistance;
mod tt;

pub use resistance::{resistance, resistance_order, DISCONNECTED};
pub use tt::{TTEntry, TransTable, INF, NO_MOVE};

use std::collections::HashMap;
use std::rc::Rc;
use std::sync::atomic::{AtomicBool, AtomicU8, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::board::{CellSet, Coord, GameState, Player};
use crate::error::Error;
use crate::inferior::{
    self, domination_arcs, resolve_domination, FillinRecord, KnowledgeOptions, PruneReason,
    PruneReport,
};
use crate::pairvc::{self, HsearchConfig, WinCertificate};

/// Independently togglable search features; defaults mirror the full
/// solver (the virtual-connection-decomposition hook ships disabled and
/// is a no-op).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Features {
    pub capture_fillin: bool,
    pub dead_fillin: bool,
    pub mutual_fillin: bool,
    pub inferior_prune: bool,
    pub hsearch: bool,
    pub augmented_hsearch: bool,
    pub color_symmetry: bool,
    pub dead_clique_cutset: bool,
    pub resistance_ordering: bool,
    pub vc_decomp: bool,
}

impl Default for Features {
    fn default() -> Self {
        Features {
            capture_fillin: true,
            dead_fillin: true,
            mutual_fillin: true,
            inferior_prune: true,
            hsearch: true,
            augmented_hsearch: true,
            color_symmetry: true,
            dead_clique_cutset: true,
            resistance_ordering: true,
            vc_decomp: false,
        }
    }
}

/// Feature names accepted by [`Features::set`], in a fixed order.
pub const FEATURE_NAMES: &[&str] = &[
    "capture-fillin",
    "dead-fillin",
    "mutual-fillin",
    "inferior-prune",
    "hsearch",
    "augmented-hsearch",
    "color-symmetry",
    "dead-clique-cutset",
    "resistance-ordering",
    "vc-decomp",
];

impl Features {
    pub fn set(&mut self, name: &str, on: bool) -> Result<(), Error> {
        match name {
            "capture-fillin" => self.capture_fillin = on,
            "dead-fillin" => self.dead_fillin = on,
            "mutual-fillin" => self.mutual_fillin = on,
            "inferior-prune" => self.inferior_prune = on,
            "hsearch" => self.hsearch = on,
            "augmented-hsearch" => self.augmented_hsearch = on,
            "color-symmetry" => self.color_symmetry = on,
            "dead-clique-cutset" => self.dead_clique_cutset = on,
            "resistance-ordering" => self.resistance_ordering = on,
            "vc-decomp" => self.vc_decomp = on,
            other => {
                return Err(Error::Usage(format!("unknown feature {other:?}")));
            }
        }
        Ok(())
    }

    fn knowledge_options(&self) -> KnowledgeOptions {
        KnowledgeOptions {
            capture_fillin: self.capture_fillin,
            dead_fillin: self.dead_fillin,
            mutual_fillin: self.mutual_fillin,
            dead_clique_cutset: self.dead_clique_cutset,
        }
    }

    fn hsearch_config(&self) -> HsearchConfig {
        HsearchConfig { augmented: self.augmented_hsearch, ..HsearchConfig::default() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchConfig {
    pub threads: usize,
    pub tt_bytes: usize,
    #[serde(skip)]
    pub time_limit: Option<Duration>,
    /// Seed for randomized child tie-breaking; used only with more than
    /// one thread, so single-threaded runs are bit-reproducible.
    pub seed: u64,
    /// First child-widening width; each widening doubles it until every
    /// child is in focus.
    pub widen_base: usize,
    pub features: Features,
    /// Resistance polarity: `true` prefers moves that keep the mover's
    /// own resistance high relative to the opponent's.
    pub prefer_blocking: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            threads: 1,
            tt_bytes: 256 << 20,
            time_limit: None,
            seed: 1,
            widen_base: 4,
            features: Features::default(),
            prefer_blocking: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Solved,
    Timeout,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Stats {
    pub nodes: u64,
    pub knowledge_calls: u64,
    pub tt_hits: u64,
    pub elapsed_secs: f64,
}

impl Stats {
    fn absorb(&mut self, other: &Stats) {
        self.nodes += other.nodes;
        self.knowledge_calls += other.knowledge_calls;
        self.tt_hits += other.tt_hits;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub winner: Option<Player>,
    pub status: SolveStatus,
    /// Principal line through the reduced states, possibly ending at a
    /// knowledge certificate.
    pub pv: Vec<Coord>,
    /// Winner after each legal root move; filled by
    /// [`Solver::solve_all_moves`].
    pub per_move: Option<Vec<(Coord, Player)>>,
    pub stats: Stats,
}

/// How the knowledge pipeline decided a state, when it did.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "via")]
pub enum WinVia {
    /// A player's sides are joined (possibly only after fillin).
    Terminal,
    /// The state equals its color-swapped transpose, so whoever does not
    /// fill the last cell wins.
    ColorSymmetry,
    /// A (pre-)join-pairing certificate.
    PairingCertificate { certificate: Box<WinCertificate> },
    /// Every candidate move is the key of one of the mover's own
    /// pre-join pairings.
    AllMovesAreKeys,
}

#[derive(Debug, Clone, Serialize)]
pub struct WinOutcome {
    pub winner: Player,
    pub via: WinVia,
}

/// Everything the knowledge pipeline derives at a leaf.
#[derive(Debug, Clone, Serialize)]
pub struct KnowledgeResult {
    #[serde(skip)]
    pub reduced: GameState,
    pub fillin: FillinRecord,
    pub prune: PruneReport,
    pub solved: Option<WinOutcome>,
    /// Candidate moves in search order; empty when solved.
    pub candidates: Vec<Coord>,
}

/// Run the knowledge pipeline on a (non-terminal) state: fillin, color
/// symmetry, inferior-move pruning, pairing-connection search, early win
/// detection, and key pruning, with candidates ordered by the resistance
/// model.
pub fn evaluate_leaf(s: &GameState, cfg: &SearchConfig) -> KnowledgeResult {
    let features = &cfg.features;
    let (reduced, fillin) = inferior::fillin_with(s, features.knowledge_options());
    let empty_prune = || PruneReport {
        kept: CellSet::new(reduced.pos.dims()),
        removed: Vec::new(),
    };

    if let Some(loser) = reduced.pos.terminal_loser() {
        return KnowledgeResult {
            solved: Some(WinOutcome { winner: loser.opponent(), via: WinVia::Terminal }),
            prune: empty_prune(),
            candidates: Vec::new(),
            reduced,
            fillin,
        };
    }
    if features.color_symmetry && reduced.pos.is_color_symmetric() {
        let winner = reduced.notlast_player();
        return KnowledgeResult {
            solved: Some(WinOutcome { winner, via: WinVia::ColorSymmetry }),
            prune: empty_prune(),
            candidates: Vec::new(),
            reduced,
            fillin,
        };
    }

    let mut prune = if features.inferior_prune {
        inferior::prune_moves_with(&reduced, features.knowledge_options())
    } else {
        PruneReport { kept: reduced.pos.empty_cells(), removed: Vec::new() }
    };

    if features.hsearch {
        let hcfg = features.hsearch_config();
        let vcs_black = pairvc::hsearch(&reduced.pos, Player::Black, &hcfg);
        let vcs_white = pairvc::hsearch(&reduced.pos, Player::White, &hcfg);
        if let Some(cert) = pairvc::detect_early_win(&reduced, &vcs_black, &vcs_white) {
            return KnowledgeResult {
                solved: Some(WinOutcome {
                    winner: cert.winner,
                    via: WinVia::PairingCertificate { certificate: Box::new(cert) },
                }),
                prune,
                candidates: Vec::new(),
                reduced,
                fillin,
            };
        }
        let mover_vcs = match reduced.to_move {
            Player::Black => &vcs_black,
            Player::White => &vcs_white,
        };
        let keys = pairvc::prune_keys(&reduced, mover_vcs);
        let kept_keys: Vec<Coord> =
            prune.kept.iter().filter(|&c| keys.contains(c)).collect();
        if kept_keys.len() == prune.kept.len() && !kept_keys.is_empty() {
            // Every kept move completes one of the mover's own pre-join
            // pairings; dominated moves are no better, so the mover loses.
            return KnowledgeResult {
                solved: Some(WinOutcome {
                    winner: reduced.to_move.opponent(),
                    via: WinVia::AllMovesAreKeys,
                }),
                prune,
                candidates: Vec::new(),
                reduced,
                fillin,
            };
        }
        for k in kept_keys {
            prune.kept.remove(k);
            prune.removed.push((k, PruneReason::PreJoinKey));
        }
    }

    let kept: Vec<Coord> = prune.kept.iter().collect();
    let candidates = if features.resistance_ordering {
        resistance_order(&reduced, &kept, cfg.prefer_blocking)
    } else {
        kept
    };
    debug_assert!(!candidates.is_empty());
    KnowledgeResult { reduced, fillin, prune, solved: None, candidates }
}

// --- DFPN ----------------------------------------------------------------

enum Cached {
    Solved(Player),
    Open { reduced: GameState, candidates: Vec<Coord> },
}

const RESULT_NONE: u8 = 0;

fn encode_winner(p: Player) -> u8 {
    match p {
        Player::Black => 1,
        Player::White => 2,
    }
}

fn decode_winner(v: u8) -> Option<Player> {
    match v {
        1 => Some(Player::Black),
        2 => Some(Player::White),
        _ => None,
    }
}

struct Shared<'a> {
    tt: &'a TransTable,
    stop: &'a AtomicBool,
    result: &'a AtomicU8,
}

struct Worker<'a> {
    cfg: &'a SearchConfig,
    shared: Shared<'a>,
    cache: HashMap<u64, Rc<Cached>>,
    cache_cap: usize,
    deadline: Option<Instant>,
    stats: Stats,
    timed_out: bool,
    rng: u64,
    randomize: bool,
    tick: u64,
}

fn sat_add(a: u32, b: u32) -> u32 {
    a.saturating_add(b)
}

fn solved_pdn(mover_wins: bool) -> (u32, u32) {
    if mover_wins {
        (0, INF)
    } else {
        (INF, 0)
    }
}

/// Focused widths double from the base: base, 2*base, 4*base, then all.
fn focus_width(base: usize, level: u8, len: usize) -> usize {
    if level >= 3 {
        return len;
    }
    (base.max(1) << level).min(len)
}

impl<'a> Worker<'a> {
    fn new(cfg: &'a SearchConfig, shared: Shared<'a>, deadline: Option<Instant>, id: u64) -> Self {
        let cache_cap = (cfg.tt_bytes / 1024).clamp(1 << 12, 1 << 17);
        Worker {
            cfg,
            shared,
            cache: HashMap::new(),
            cache_cap,
            deadline,
            stats: Stats::default(),
            timed_out: false,
            rng: cfg.seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(id),
            randomize: cfg.threads > 1,
            tick: 0,
        }
    }

    fn next_rand(&mut self) -> u64 {
        self.rng = self.rng.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.rng;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    fn should_stop(&mut self) -> bool {
        if self.shared.stop.load(Ordering::Relaxed) {
            return true;
        }
        // The clock read is trivial next to per-node knowledge cost.
        self.tick += 1;
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                self.timed_out = true;
                self.shared.stop.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    }

    /// Knowledge pipeline in search order: fillin, transposition probe,
    /// then the expensive rules only on a miss. Solved states are
    /// published to the table for other workers and transpositions.
    fn knowledge(&mut self, s: &GameState) -> Rc<Cached> {
        let key = s.exact_key();
        if let Some(k) = self.cache.get(&key) {
            return Rc::clone(k);
        }
        self.stats.knowledge_calls += 1;
        let features = &self.cfg.features;
        let (reduced, _fillin) = inferior::fillin_with(s, features.knowledge_options());
        let reduced_key = reduced.canonical_key();

        let cached = if let Some(loser) = reduced.pos.terminal_loser() {
            Cached::Solved(loser.opponent())
        } else if let Some(entry) = self.shared.tt.probe(reduced_key) {
            if entry.solved() {
                self.stats.tt_hits += 1;
                let mover_wins = entry.mover_wins();
                let winner =
                    if mover_wins { reduced.to_move } else { reduced.to_move.opponent() };
                Cached::Solved(winner)
            } else {
                self.open_knowledge(reduced)
            }
        } else {
            self.open_knowledge(reduced)
        };

        if let Cached::Solved(winner) = &cached {
            let (phi, delta) = solved_pdn(*winner == s.to_move);
            let mut entry = TTEntry::new(reduced_key);
            entry.phi = phi;
            entry.delta = delta;
            self.shared.tt.store(&entry);
        }
        if self.cache.len() >= self.cache_cap {
            self.cache.clear();
        }
        let rc = Rc::new(cached);
        self.cache.insert(key, Rc::clone(&rc));
        rc
    }

    /// Symmetry rule, move pruning, pairing-connection search, and move
    /// ordering for a state the table does not decide.
    fn open_knowledge(&mut self, reduced: GameState) -> Cached {
        let features = &self.cfg.features;
        if features.color_symmetry && reduced.pos.is_color_symmetric() {
            return Cached::Solved(reduced.notlast_player());
        }
        let mut kept = if features.inferior_prune {
            inferior::prune_moves_with(&reduced, features.knowledge_options()).kept
        } else {
            reduced.pos.empty_cells()
        };
        if features.hsearch {
            let hcfg = features.hsearch_config();
            let vcs_black = pairvc::hsearch(&reduced.pos, Player::Black, &hcfg);
            let vcs_white = pairvc::hsearch(&reduced.pos, Player::White, &hcfg);
            if let Some(cert) = pairvc::detect_early_win(&reduced, &vcs_black, &vcs_white) {
                return Cached::Solved(cert.winner);
            }
            let mover_vcs = match reduced.to_move {
                Player::Black => &vcs_black,
                Player::White => &vcs_white,
            };
            let keys = pairvc::prune_keys(&reduced, mover_vcs);
            let kept_keys: Vec<Coord> = kept.iter().filter(|&c| keys.contains(c)).collect();
            if kept_keys.len() == kept.len() && !kept_keys.is_empty() {
                return Cached::Solved(reduced.to_move.opponent());
            }
            for k in kept_keys {
                kept.remove(k);
            }
        }
        let kept: Vec<Coord> = kept.iter().collect();
        let candidates = if features.resistance_ordering {
            resistance_order(&reduced, &kept, self.cfg.prefer_blocking)
        } else {
            kept
        };
        debug_assert!(!candidates.is_empty());
        Cached::Open { reduced, candidates }
    }

    /// One proof-number iteration on `s` under the given thresholds.
    /// Returns `(phi, delta)` from the perspective of `s.to_move`.
    fn mid(&mut self, s: &GameState, phi_t: u32, delta_t: u32, depth: u8) -> (u32, u32) {
        if self.should_stop() {
            return (1, 1);
        }
        self.stats.nodes += 1;

        if let Some(loser) = s.pos.terminal_loser() {
            return solved_pdn(loser != s.to_move);
        }
        let knowledge = self.knowledge(s);
        let (reduced, candidates) = match &*knowledge {
            Cached::Solved(winner) => return solved_pdn(*winner == s.to_move),
            Cached::Open { reduced, candidates } => (reduced.clone(), candidates),
        };

        let key = reduced.canonical_key();
        let rotated = reduced.canonical_is_rotated();
        let n_cells = reduced.pos.dims().cells();
        let move_to_tt = |c: Coord| -> u8 {
            let idx = reduced.pos.dims().index(c);
            (if rotated { n_cells - 1 - idx } else { idx }) as u8
        };

        let mut focus_level = 0u8;
        if let Some(entry) = self.shared.tt.probe(key) {
            self.stats.tt_hits += 1;
            if entry.solved() {
                return (entry.phi, entry.delta);
            }
            if entry.phi >= phi_t || entry.delta >= delta_t {
                return (entry.phi, entry.delta);
            }
            focus_level = entry.focus;
        }

        let len = candidates.len();
        debug_assert!(len > 0);
        let mut child: Vec<(u32, u32)> = vec![(1, 1); len];
        let work_before = self.stats.nodes;
        let mut best: u8 = NO_MOVE;

        loop {
            let width = focus_width(self.cfg.widen_base, focus_level, len);
            let unfocused = (len - width) as u32;
            let mut focused_min = INF;
            let mut second_min = INF;
            let mut select = 0usize;
            let mut ties = 0u32;
            let mut delta_sum: u32 = sat_add(0, unfocused);
            for (i, &(p, d)) in child.iter().take(width).enumerate() {
                delta_sum = sat_add(delta_sum, p);
                if d < focused_min {
                    second_min = focused_min;
                    focused_min = d;
                    select = i;
                    ties = 1;
                } else {
                    if d == focused_min {
                        ties += 1;
                        if self.randomize && self.next_rand() % ties as u64 == 0 {
                            select = i;
                        }
                    }
                    if d < second_min {
                        second_min = d;
                    }
                }
            }
            let phi = if unfocused > 0 { focused_min.min(1) } else { focused_min };
            let delta = delta_sum;
            debug_assert!(!(phi == 0 && delta == 0), "proof and disproof both zero");

            if unfocused > 0 && focused_min >= phi_t && delta < delta_t {
                focus_level += 1;
                continue;
            }
            if phi >= phi_t || delta >= delta_t {
                if phi == 0 {
                    // Solved as a win: remember the proving move.
                    if let Some(i) = child.iter().take(width).position(|&(_, d)| d == 0) {
                        best = move_to_tt(candidates[i]);
                    }
                } else if best == NO_MOVE && !candidates.is_empty() {
                    best = move_to_tt(candidates[select.min(len - 1)]);
                }
                let entry = TTEntry {
                    key,
                    phi,
                    delta,
                    work: (self.stats.nodes - work_before).min(u32::MAX as u64) as u32,
                    best_move: best,
                    depth,
                    focus: focus_level,
                };
                self.shared.tt.store(&entry);
                return (phi, delta);
            }

            // Thresholds for the most proving child.
            let (cp, _cd) = child[select];
            let child_phi_t = {
                let slack = delta_t as u64 - delta as u64 + cp as u64;
                slack.min(INF as u64) as u32
            };
            let child_delta_t = phi_t.min(sat_add(second_min, 1));
            let child_state = reduced
                .play(candidates[select])
                .expect("candidate move must be legal");
            let (p, d) = self.mid(&child_state, child_phi_t, child_delta_t, depth.saturating_add(1));
            if self.should_stop() {
                return (1, 1);
            }
            child[select] = (p, d);
        }
    }
}

// --- Solver --------------------------------------------------------------

/// A configured solver with its transposition table. Results are exact;
/// a missing winner only ever means the time limit fired.
pub struct Solver {
    cfg: SearchConfig,
    tt: TransTable,
}

impl Solver {
    pub fn new(cfg: SearchConfig) -> Solver {
        let tt = TransTable::new(cfg.tt_bytes);
        Solver { cfg, tt }
    }

    pub fn config(&self) -> &SearchConfig {
        &self.cfg
    }

    /// Solve a state for its winner.
    pub fn solve(&mut self, s: &GameState) -> SolveResult {
        let deadline = self.cfg.time_limit.map(|d| Instant::now() + d);
        self.solve_with_deadline(s, deadline)
    }

    fn solve_with_deadline(&mut self, s: &GameState, deadline: Option<Instant>) -> SolveResult {
        let start = Instant::now();
        if let Some(loser) = s.pos.terminal_loser() {
            return SolveResult {
                winner: Some(loser.opponent()),
                status: SolveStatus::Solved,
                pv: Vec::new(),
                per_move: None,
                stats: Stats { elapsed_secs: start.elapsed().as_secs_f64(), ..Stats::default() },
            };
        }

        let stop = AtomicBool::new(false);
        let result = AtomicU8::new(RESULT_NONE);
        let mut stats = Stats::default();
        let threads = self.cfg.threads.max(1);
        if threads == 1 {
            let shared = Shared { tt: &self.tt, stop: &stop, result: &result };
            let mut worker = Worker::new(&self.cfg, shared, deadline, 0);
            run_worker(&mut worker, s);
            stats.absorb(&worker.stats);
        } else {
            let cfg = &self.cfg;
            let tt = &self.tt;
            let stop_ref = &stop;
            let result_ref = &result;
            let collected = std::thread::scope(|scope| {
                let mut handles = Vec::new();
                for id in 0..threads {
                    handles.push(scope.spawn(move || {
                        let shared = Shared { tt, stop: stop_ref, result: result_ref };
                        let mut worker = Worker::new(cfg, shared, deadline, id as u64);
                        run_worker(&mut worker, s);
                        worker.stats
                    }));
                }
                handles.into_iter().map(|h| h.join().expect("worker panicked")).collect::<Vec<_>>()
            });
            for ws in &collected {
                stats.absorb(ws);
            }
        }

        let winner = decode_winner(result.load(Ordering::SeqCst));
        let status = if winner.is_some() { SolveStatus::Solved } else { SolveStatus::Timeout };
        let pv = match winner {
            Some(_) => self.principal_line(s),
            None => Vec::new(),
        };
        stats.elapsed_secs = start.elapsed().as_secs_f64();
        SolveResult { winner, status, pv, per_move: None, stats }
    }

    /// Solve the value of every legal move of `s`.
    ///
    /// Root children are never pruned away: domination information is
    /// used only to inherit losses (a move whose dominator loses can
    /// only lose) and to pick the solving order; everything else is
    /// solved directly.
    pub fn solve_all_moves(&mut self, s: &GameState) -> Result<SolveResult, Error> {
        if s.pos.terminal_loser().is_some() {
            return Err(Error::Usage("solve_all_moves on a terminal state".into()));
        }
        let start = Instant::now();
        let deadline = self.cfg.time_limit.map(|d| Instant::now() + d);
        let empties = s.pos.empty_cells();
        let moves: Vec<Coord> = empties.iter().collect();
        let arcs = if self.cfg.features.inferior_prune {
            domination_arcs(s)
        } else {
            Vec::new()
        };
        let report = resolve_domination(&empties, &arcs);

        let mut value: HashMap<Coord, Player> = HashMap::new();
        let mut stats = Stats::default();
        let mut timed_out = false;

        let kept: Vec<Coord> = report.kept.iter().collect();
        let rest: Vec<Coord> = moves.iter().copied().filter(|c| !report.kept.contains(*c)).collect();
        for &m in kept.iter().chain(rest.iter()) {
            if value.contains_key(&m) {
                continue;
            }
            // Inherit a loss from any already-valued dominator.
            let inherited = arcs.iter().any(|arc| {
                arc.from == m
                    && value.get(&arc.to).copied() == Some(s.to_move.opponent())
            });
            if inherited {
                value.insert(m, s.to_move.opponent());
                continue;
            }
            if timed_out {
                continue;
            }
            let child = s.play(m)?;
            let r = self.solve_with_deadline(&child, deadline);
            stats.absorb(&r.stats);
            match r.winner {
                Some(w) => {
                    value.insert(m, w);
                }
                None => {
                    timed_out = true;
                }
            }
        }

        let mut per_move: Vec<(Coord, Player)> = Vec::new();
        let mut any_win = false;
        for &m in &moves {
            if let Some(&w) = value.get(&m) {
                per_move.push((m, w));
                any_win |= w == s.to_move;
            }
        }
        let winner = if any_win {
            Some(s.to_move)
        } else if per_move.len() == moves.len() {
            Some(s.to_move.opponent())
        } else {
            None
        };
        stats.elapsed_secs = start.elapsed().as_secs_f64();
        Ok(SolveResult {
            winner,
            status: if timed_out { SolveStatus::Timeout } else { SolveStatus::Solved },
            pv: match winner {
                Some(_) if !timed_out => self.principal_line(s),
                _ => Vec::new(),
            },
            per_move: Some(per_move),
            stats,
        })
    }

    /// Reconstruct the principal line by replaying stored best moves
    /// through the knowledge pipeline. Stops at a terminal position, a
    /// knowledge certificate, or a missing table entry.
    pub fn principal_line(&self, s: &GameState) -> Vec<Coord> {
        let mut pv = Vec::new();
        let mut state = s.clone();
        for _ in 0..state.pos.dims().cells() {
            if state.pos.terminal_loser().is_some() {
                break;
            }
            let k = evaluate_leaf(&state, &self.cfg);
            if k.solved.is_some() {
                break;
            }
            let reduced = k.reduced;
            let key = reduced.canonical_key();
            let rotated = reduced.canonical_is_rotated();
            let entry = match self.tt.probe(key) {
                Some(e) if e.best_move != NO_MOVE => e,
                _ => break,
            };
            let n = reduced.pos.dims().cells();
            let idx = entry.best_move as usize;
            let idx = if rotated { n - 1 - idx } else { idx };
            if idx >= n {
                break;
            }
            let mv = reduced.pos.dims().coord(idx);
            let next = match reduced.play(mv) {
                Ok(next) => next,
                Err(_) => break,
            };
            pv.push(mv);
            state = next;
        }
        pv
    }
}

fn run_worker(worker: &mut Worker<'_>, root: &GameState) {
    loop {
        if worker.shared.stop.load(Ordering::Relaxed) {
            break;
        }
        let (phi, delta) = worker.mid(root, INF, INF, 0);
        if worker.timed_out || worker.shared.stop.load(Ordering::Relaxed) {
            break;
        }
        if phi == 0 || delta == 0 {
            let winner = if phi == 0 { root.to_move } else { root.to_move.opponent() };
            worker.shared.result.store(encode_winner(winner), Ordering::SeqCst);
            worker.shared.stop.store(true, Ordering::Relaxed);
            break;
        }
    }
}
