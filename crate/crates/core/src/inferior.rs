//! Dead-cell detection, captured-set detection, winner-preserving fillin,
//! mutual fillin, and domination-based move pruning.
//!
//! Everything here is certificate-driven: a cell is only reported dead
//! when a local clique argument proves no minimal joinset can use it, and
//! a set is only reported captured when the dead-cell test validates every
//! way of answering inside its pairing. The brute-force validators in
//! [`crate::oracle`] re-check all of it on small boards.

use serde::Serialize;

use crate::board::{
    adjacent, neighbor_iter, Cell, CellSet, Coord, GameState, Player, Position,
};

/// A partition of (distinct, empty) cells into unordered pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pairing {
    pairs: Vec<(Coord, Coord)>,
}

impl Pairing {
    pub fn new(mut pairs: Vec<(Coord, Coord)>) -> Pairing {
        for p in &mut pairs {
            if p.1 < p.0 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort();
        let out = Pairing { pairs };
        debug_assert!(out.cells_distinct());
        out
    }

    pub fn empty() -> Pairing {
        Pairing { pairs: Vec::new() }
    }

    fn cells_distinct(&self) -> bool {
        let mut cells: Vec<Coord> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        let len = cells.len();
        cells.sort();
        cells.dedup();
        cells.len() == len
    }

    pub fn pairs(&self) -> &[(Coord, Coord)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn cell_count(&self) -> usize {
        self.pairs.len() * 2
    }

    pub fn contains(&self, c: Coord) -> bool {
        self.mate(c).is_some()
    }

    /// The partner of `c`, if `c` is in the pairing.
    pub fn mate(&self, c: Coord) -> Option<Coord> {
        for &(a, b) in &self.pairs {
            if a == c {
                return Some(b);
            }
            if b == c {
                return Some(a);
            }
        }
        None
    }

    pub fn cells(&self, dims: crate::board::Dims) -> CellSet {
        let mut out = CellSet::new(dims);
        for &(a, b) in &self.pairs {
            out.insert(a);
            out.insert(b);
        }
        out
    }

    /// Union of two pairings with disjoint cells.
    pub fn merged(&self, other: &Pairing) -> Pairing {
        let mut pairs = self.pairs.clone();
        pairs.extend_from_slice(&other.pairs);
        Pairing::new(pairs)
    }

    /// Union allowing pairs present in both inputs, which collapse to one.
    pub fn merged_dedup(&self, other: &Pairing) -> Pairing {
        let mut pairs = self.pairs.clone();
        for p in &other.pairs {
            if !pairs.contains(p) {
                pairs.push(*p);
            }
        }
        Pairing::new(pairs)
    }
}

/// Evidence that `owner` coloring one cell of each pair leaves the rest
/// of `cells` dead.
#[derive(Debug, Clone, Serialize)]
pub struct CaptureCertificate {
    pub owner: Player,
    pub cells: CellSet,
    pub pairing: Pairing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FillReason {
    Captured,
    DeadPair,
    MutualFillin,
}

/// Ordered list of fillin colorings; replaying it on the original
/// position reproduces the reduced position.
#[derive(Debug, Clone, Default, Serialize)]
pub struct FillinRecord {
    pub entries: Vec<(Coord, Player, FillReason)>,
}

impl FillinRecord {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn replay(&self, pos: &Position) -> Result<Position, crate::Error> {
        let mut out = pos.clone();
        for &(c, p, _) in &self.entries {
            out = out.color_cell(c, p)?;
        }
        Ok(out)
    }
}

/// Why a candidate move was discarded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "rule", content = "over")]
pub enum PruneReason {
    /// A dead cell exists; one dead move dominates everything else.
    DeadDominatesAll,
    /// The move kills the named victim; the victim is at least as good.
    VictimOverKiller(Coord),
    /// Opponent-coloring the move kills the named vulnerable cell.
    VulnerableOverOppKiller(Coord),
    /// The move captures a set containing the named capturee.
    CaptureeOverCapturer(Coord),
    /// The move creates a mutual-fillin pattern whose own-color fill cell
    /// is at least as good.
    MutualFillinCreator(Coord),
    /// The move is the key of one of the mover's own side-to-side
    /// pre-join pairings, so playing it loses outright.
    PreJoinKey,
}

/// Outcome of move pruning: the surviving candidate set plus one reason
/// per discarded move.
#[derive(Debug, Clone, Serialize)]
pub struct PruneReport {
    pub kept: CellSet,
    pub removed: Vec<(Coord, PruneReason)>,
}

/// Which knowledge components run. Mirrors the search feature flags.
#[derive(Debug, Clone, Copy)]
pub struct KnowledgeOptions {
    pub capture_fillin: bool,
    pub dead_fillin: bool,
    pub mutual_fillin: bool,
    pub dead_clique_cutset: bool,
}

impl Default for KnowledgeOptions {
    fn default() -> Self {
        KnowledgeOptions {
            capture_fillin: true,
            dead_fillin: true,
            mutual_fillin: true,
            dead_clique_cutset: true,
        }
    }
}

// --- Dead-cell clique test ----------------------------------------------

/// Neighborhood token: an empty neighbour cell, or a colored group
/// (including the virtual side groups) identified by union-find root.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Token {
    Empty(Coord),
    Group(usize),
}

fn neighborhood_tokens(pos: &Position, c: Coord) -> Vec<Token> {
    let dims = pos.dims();
    let mut tokens: Vec<Token> = Vec::with_capacity(8);
    let push_group = |tokens: &mut Vec<Token>, root: usize| {
        if !tokens.iter().any(|t| matches!(t, Token::Group(r) if *r == root)) {
            tokens.push(Token::Group(root));
        }
    };
    for nb in neighbor_iter(c, dims) {
        match pos.cell(nb) {
            Cell::Empty => tokens.push(Token::Empty(nb)),
            Cell::Stone(_) => push_group(&mut tokens, pos.find(dims.index(nb))),
        }
    }
    if c.row == 0 {
        push_group(&mut tokens, pos.find(pos.side_node(Player::Black, false)));
    }
    if c.row == dims.height - 1 {
        push_group(&mut tokens, pos.find(pos.side_node(Player::Black, true)));
    }
    if c.col == 0 {
        push_group(&mut tokens, pos.find(pos.side_node(Player::White, false)));
    }
    if c.col == dims.width - 1 {
        push_group(&mut tokens, pos.find(pos.side_node(Player::White, true)));
    }
    tokens
}

/// True if some group of `owner` touches both `a` and `b`. Side groups
/// count: two cells on the same edge are bridged by that edge's owner.
fn bridged_for(pos: &Position, owner: Player, a: Coord, b: Coord) -> bool {
    let dims = pos.dims();
    let mut roots: Vec<usize> = Vec::with_capacity(8);
    for nb in neighbor_iter(a, dims) {
        if pos.cell(nb) == Cell::Stone(owner) {
            let r = pos.find(dims.index(nb));
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    for (on_edge, second) in side_edges(dims, owner, a) {
        if on_edge {
            let r = pos.find(pos.side_node(owner, second));
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    roots.into_iter().any(|r| pos.empty_touches_root(b, r))
}

fn side_edges(dims: crate::board::Dims, owner: Player, c: Coord) -> [(bool, bool); 2] {
    match owner {
        Player::Black => [(c.row == 0, false), (c.row == dims.height - 1, true)],
        Player::White => [(c.col == 0, false), (c.col == dims.width - 1, true)],
    }
}

/// Clique deadness test for an empty cell.
///
/// Build `c`'s neighbourhood of tokens (empty cells, plus colored groups
/// with same-group stones contracted and sides acting as virtual stone
/// rows of their owner). The cell is dead when every token pair that
/// could occur consecutively on a side-to-side chain through `c` has a
/// bypass that avoids `c`:
///
/// - two empty tokens: board-adjacent, or bridged by a group of each
///   player separately (a one-color bridge only reroutes that color);
/// - an empty token and a group token: the cell touches the group;
/// - two group tokens of the same player: never (distinct roots cannot be
///   rerouted locally); of different players: vacuous, since a chain is
///   monochrome.
pub fn is_dead(pos: &Position, c: Coord) -> bool {
    debug_assert!(pos.cell(c).is_empty());
    let tokens = neighborhood_tokens(pos, c);
    for i in 0..tokens.len() {
        for j in i + 1..tokens.len() {
            let ok = match (tokens[i], tokens[j]) {
                (Token::Empty(a), Token::Empty(b)) => {
                    adjacent(a, b)
                        || (bridged_for(pos, Player::Black, a, b)
                            && bridged_for(pos, Player::White, a, b))
                }
                (Token::Empty(e), Token::Group(g)) | (Token::Group(g), Token::Empty(e)) => {
                    pos.empty_touches_root(e, g)
                }
                (Token::Group(g1), Token::Group(g2)) => {
                    pos.root_owner(g1) != pos.root_owner(g2)
                }
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// All empty cells the clique test can prove dead. Sound but not
/// complete: a returned cell is in no joinset of either player.
pub fn find_dead_cells(pos: &Position) -> CellSet {
    let mut out = CellSet::new(pos.dims());
    for c in pos.empty_cells().iter() {
        if is_dead(pos, c) {
            out.insert(c);
        }
    }
    out
}

// --- Captured pairs ------------------------------------------------------

/// True if `{u, v}` is `owner`-captured with the one-pair pairing: either
/// cell, once owner-colored, leaves the other dead.
pub fn is_captured_pair(pos: &Position, owner: Player, u: Coord, v: Coord) -> bool {
    debug_assert!(pos.cell(u).is_empty() && pos.cell(v).is_empty());
    let with_u = pos.color_cell(u, owner).expect("u empty");
    if !is_dead(&with_u, v) {
        return false;
    }
    let with_v = pos.color_cell(v, owner).expect("v empty");
    is_dead(&with_v, u)
}

/// Every adjacent empty pair that is `owner`-captured, in row-major order
/// of the earlier cell.
pub fn captured_pairs(pos: &Position, owner: Player) -> Vec<(Coord, Coord)> {
    captured_pairs_in(pos, owner, None)
}

/// As [`captured_pairs`], optionally restricted to pairs touching
/// `focus`.
fn captured_pairs_in(
    pos: &Position,
    owner: Player,
    focus: Option<&CellSet>,
) -> Vec<(Coord, Coord)> {
    let mut out = Vec::new();
    let empties = pos.empty_cells();
    for u in empties.iter() {
        for v in neighbor_iter(u, pos.dims()) {
            if v > u && empties.contains(v) {
                if let Some(f) = focus {
                    if !f.contains(u) && !f.contains(v) {
                        continue;
                    }
                }
                if is_captured_pair(pos, owner, u, v) {
                    out.push((u, v));
                }
            }
        }
    }
    out
}

/// Disjoint captured-pair certificates, chosen greedily in row-major
/// order. Larger captures emerge by iterating fillin to a fixpoint.
pub fn find_captured(pos: &Position, owner: Player) -> Vec<CaptureCertificate> {
    let mut taken = CellSet::new(pos.dims());
    let mut out = Vec::new();
    for (u, v) in captured_pairs(pos, owner) {
        if taken.contains(u) || taken.contains(v) {
            continue;
        }
        taken.insert(u);
        taken.insert(v);
        let mut cells = CellSet::new(pos.dims());
        cells.insert(u);
        cells.insert(v);
        out.push(CaptureCertificate {
            owner,
            cells,
            pairing: Pairing::new(vec![(u, v)]),
        });
    }
    out
}

// --- Mutual fillin -------------------------------------------------------

/// A mutual-fillin instance: coloring `black_cell` Black captures
/// `white_set` for White's opponent view and vice versa, so both cells
/// can be filled at once without changing the winner.
#[derive(Debug, Clone, Serialize)]
pub struct MutualFillin {
    pub black_cell: Coord,
    pub black_set: CellSet,
    pub white_cell: Coord,
    pub white_set: CellSet,
}

/// Find mutual-fillin instances of the three-cell shape: a middle cell
/// `m` with neighbours `a` and `b` such that `{b, m}` is White-captured
/// once `a` is Black, and `{a, m}` is Black-captured once `b` is White.
pub fn find_mutual_fillin(pos: &Position) -> Vec<MutualFillin> {
    find_mutual_fillin_in(pos, None)
}

/// As [`find_mutual_fillin`], optionally restricted to patterns whose
/// middle cell lies in `focus`.
fn find_mutual_fillin_in(pos: &Position, focus: Option<&CellSet>) -> Vec<MutualFillin> {
    let dims = pos.dims();
    let empties = match focus {
        Some(f) => f.intersect(&pos.empty_cells()),
        None => pos.empty_cells(),
    };
    let all_empty = pos.empty_cells();
    let mut out = Vec::new();
    for m in empties.iter() {
        let nbs: Vec<Coord> =
            neighbor_iter(m, dims).filter(|&n| all_empty.contains(n)).collect();
        for &a in &nbs {
            for &b in &nbs {
                if a == b {
                    continue;
                }
                let with_a = pos.color_cell(a, Player::Black).expect("a empty");
                if !is_captured_pair(&with_a, Player::White, b, m) {
                    continue;
                }
                let with_b = pos.color_cell(b, Player::White).expect("b empty");
                if !is_captured_pair(&with_b, Player::Black, a, m) {
                    continue;
                }
                let mut black_set = CellSet::new(dims);
                black_set.insert(a);
                black_set.insert(m);
                let mut white_set = CellSet::new(dims);
                white_set.insert(b);
                white_set.insert(m);
                out.push(MutualFillin {
                    black_cell: a,
                    black_set,
                    white_cell: b,
                    white_set,
                });
            }
        }
    }
    out
}

// --- Fillin --------------------------------------------------------------

/// Winner-preserving fillin to a fixpoint: owner-color captured sets,
/// color dead cells in pairs (a lone dead cell stays empty so move-count
/// parity is preserved), and apply mutual fillin. The player to move is
/// unchanged and the winner of the returned state equals the winner of
/// the input state.
pub fn fillin(s: &GameState) -> (GameState, FillinRecord) {
    fillin_with(s, KnowledgeOptions::default())
}

pub fn fillin_with(s: &GameState, opts: KnowledgeOptions) -> (GameState, FillinRecord) {
    let mut pos = s.pos.clone();
    let mut record = FillinRecord::default();
    loop {
        let mut changed = false;
        if opts.capture_fillin {
            for owner in [Player::Black, Player::White] {
                loop {
                    let certs = find_captured(&pos, owner);
                    if certs.is_empty() {
                        break;
                    }
                    for cert in certs {
                        for c in cert.cells.iter() {
                            pos.place_unchecked(c, owner);
                            record.entries.push((c, owner, FillReason::Captured));
                        }
                    }
                    changed = true;
                }
            }
        }
        if opts.mutual_fillin {
            let instances = find_mutual_fillin(&pos);
            // Certificates stay valid as more stones appear, but only
            // while all three pattern cells stay empty, so instances may
            // not touch each other at all.
            let mut used = CellSet::new(pos.dims());
            for inst in instances {
                let footprint = inst.black_set.union(&inst.white_set);
                if !footprint.is_disjoint(&used) {
                    continue;
                }
                used = used.union(&footprint);
                pos.place_unchecked(inst.black_cell, Player::Black);
                record
                    .entries
                    .push((inst.black_cell, Player::Black, FillReason::MutualFillin));
                pos.place_unchecked(inst.white_cell, Player::White);
                record
                    .entries
                    .push((inst.white_cell, Player::White, FillReason::MutualFillin));
                changed = true;
            }
        }
        if opts.dead_fillin && opts.dead_clique_cutset {
            let dead: Vec<Coord> = find_dead_cells(&pos).iter().collect();
            for chunk in dead.chunks_exact(2) {
                pos.place_unchecked(chunk[0], Player::Black);
                record
                    .entries
                    .push((chunk[0], Player::Black, FillReason::DeadPair));
                pos.place_unchecked(chunk[1], Player::White);
                record
                    .entries
                    .push((chunk[1], Player::White, FillReason::DeadPair));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (GameState::new(pos, s.to_move), record)
}

// --- Move domination -----------------------------------------------------

/// A domination arc: `from` is at most as good for the mover as `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DominationArc {
    pub from: Coord,
    pub to: Coord,
    pub reason: PruneReason,
}

/// Empty cells within graph distance two of `k`, excluding `k`.
fn near_two(pos: &Position, k: Coord) -> CellSet {
    let dims = pos.dims();
    let mut ring = CellSet::new(dims);
    for n in neighbor_iter(k, dims) {
        ring.insert(n);
        for n2 in neighbor_iter(n, dims) {
            ring.insert(n2);
        }
    }
    ring.remove(k);
    ring.intersect(&pos.empty_cells())
}

/// All domination arcs among the mover's moves, from the four
/// domination rules (killer, opponent killer, capturer, mutual-fillin
/// creator). Sound but not complete: with fillin already applied, new
/// patterns can only form near the probed move, so each probe scans a
/// distance-two neighbourhood.
pub fn domination_arcs(s: &GameState) -> Vec<DominationArc> {
    let pos = &s.pos;
    let mover = s.to_move;
    let empties = pos.empty_cells();
    let base_dead = find_dead_cells(pos);
    let mut arcs = Vec::new();
    for k in empties.iter() {
        let near = near_two(pos, k);
        // Victim over killer: prefer any cell k's own coloring kills.
        let with_own = pos.color_cell(k, mover).expect("k empty");
        for c in near.iter() {
            if !base_dead.contains(c) && is_dead(&with_own, c) {
                arcs.push(DominationArc {
                    from: k,
                    to: c,
                    reason: PruneReason::VictimOverKiller(c),
                });
            }
        }
        // Vulnerable over opponent killer: prefer cells the opponent's
        // coloring of k would kill.
        let with_opp = pos.color_cell(k, mover.opponent()).expect("k empty");
        for c in near.iter() {
            if !base_dead.contains(c) && is_dead(&with_opp, c) {
                arcs.push(DominationArc {
                    from: k,
                    to: c,
                    reason: PruneReason::VulnerableOverOppKiller(c),
                });
            }
        }
        // Capturee over capturer: prefer every cell of a set k captures.
        for (u, v) in captured_pairs_in(&with_own, mover, Some(&near)) {
            for c in [u, v] {
                arcs.push(DominationArc {
                    from: k,
                    to: c,
                    reason: PruneReason::CaptureeOverCapturer(c),
                });
            }
        }
        // Filled over mutual-fillin creator: prefer the mover-colored
        // fill cell of any mutual-fillin pattern k would create.
        for inst in find_mutual_fillin_in(&with_own, Some(&near)) {
            let fill = match mover {
                Player::Black => inst.black_cell,
                Player::White => inst.white_cell,
            };
            arcs.push(DominationArc {
                from: k,
                to: fill,
                reason: PruneReason::MutualFillinCreator(fill),
            });
        }
    }
    arcs
}

/// Apply the domination rules to the mover's candidate set.
///
/// If any dead cell exists, a single dead move (row-major first)
/// dominates all others. Otherwise moves are discarded when a chain of
/// domination arcs leads to a kept move: the strongly-connected
/// components of the arc graph are condensed and only the row-major
/// first member of each sink component survives. The kept set is never
/// empty.
pub fn prune_moves(s: &GameState) -> PruneReport {
    prune_moves_with(s, KnowledgeOptions::default())
}

pub fn prune_moves_with(s: &GameState, opts: KnowledgeOptions) -> PruneReport {
    let empties = s.pos.empty_cells();
    let dims = s.pos.dims();
    debug_assert!(!empties.is_empty(), "prune_moves on a full board");

    if opts.dead_clique_cutset {
        let dead = find_dead_cells(&s.pos);
        if let Some(first_dead) = dead.first() {
            let mut kept = CellSet::new(dims);
            kept.insert(first_dead);
            let removed = empties
                .iter()
                .filter(|&c| c != first_dead)
                .map(|c| (c, PruneReason::DeadDominatesAll))
                .collect();
            return PruneReport { kept, removed };
        }
    }

    let arcs = domination_arcs(s);
    resolve_domination(&empties, &arcs)
}

/// Condense the arc graph and keep one representative per sink component.
pub fn resolve_domination(moves: &CellSet, arcs: &[DominationArc]) -> PruneReport {
    let cells: Vec<Coord> = moves.iter().collect();
    let n = cells.len();
    let idx_of = |c: Coord| cells.iter().position(|&x| x == c);
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut first_arc: Vec<Option<PruneReason>> = vec![None; n];
    for arc in arcs {
        if let (Some(f), Some(t)) = (idx_of(arc.from), idx_of(arc.to)) {
            if f != t {
                if !succ[f].contains(&t) {
                    succ[f].push(t);
                }
                if first_arc[f].is_none() {
                    first_arc[f] = Some(arc.reason);
                }
            }
        }
    }

    let comp = tarjan_scc(n, &succ);
    let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut comp_has_out = vec![false; ncomp];
    for (f, ts) in succ.iter().enumerate() {
        for &t in ts {
            if comp[f] != comp[t] {
                comp_has_out[comp[f]] = true;
            }
        }
    }
    // Row-major first member of each component: `cells` is row-major.
    let mut comp_rep: Vec<Option<usize>> = vec![None; ncomp];
    for (i, &cmp) in comp.iter().enumerate() {
        if comp_rep[cmp].is_none() {
            comp_rep[cmp] = Some(i);
        }
    }

    let mut kept = CellSet::new(moves.dims());
    let mut removed = Vec::new();
    for (i, &c) in cells.iter().enumerate() {
        let cmp = comp[i];
        if !comp_has_out[cmp] && comp_rep[cmp] == Some(i) {
            kept.insert(c);
        } else {
            // Every removed node has an outgoing arc: either to another
            // component or within its (size >= 2) sink component.
            let reason = first_arc[i].unwrap_or(PruneReason::DeadDominatesAll);
            removed.push((c, reason));
        }
    }
    if kept.is_empty() {
        // No arcs at all leaves every singleton a sink; this branch only
        // guards against an empty move list upstream.
        if let Some(c) = cells.first() {
            kept.insert(*c);
            removed.retain(|&(r, _)| r != *c);
        }
    }
    PruneReport { kept, removed }
}

/// Iterative Tarjan strongly-connected components; returns the component
/// id per node, assigned in deterministic node order.
fn tarjan_scc(n: usize, succ: &[Vec<usize>]) -> Vec<usize> {
    #[derive(Clone, Copy)]
    struct Frame {
        node: usize,
        edge: usize,
    }
    let mut index = vec![usize::MAX; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut next_index = 0;
    let mut next_comp = 0;

    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        let mut call = vec![Frame { node: start, edge: 0 }];
        index[start] = next_index;
        lowlink[start] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start] = true;
        while let Some(frame) = call.last_mut() {
            let v = frame.node;
            if frame.edge < succ[v].len() {
                let w = succ[v][frame.edge];
                frame.edge += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push(Frame { node: w, edge: 0 });
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(parent) = call.last() {
                    lowlink[parent.node] = lowlink[parent.node].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}
