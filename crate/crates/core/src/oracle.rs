//! Brute-force reference solver and validators for small boards.
//!
//! Everything here trades speed for being obviously correct: exhaustive
//! negamax keyed on the exact position, joinset enumeration by subset
//! scan, and pairing-connection checks that try every answer pattern.
//! The solver proper is tested against this module, never the other way
//! around.

use std::collections::HashMap;

use crate::board::{Cell, CellSet, Coord, GameState, Player, Position};
use crate::error::Error;
use crate::inferior::CaptureCertificate;
use crate::pairvc::{Endpoint, PairingVC, VcKind};

/// Exhaustive solve outcome: the winner, and the winner after each of
/// the mover's legal moves.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub winner: Player,
    pub per_move: Vec<(Coord, Player)>,
}

const MAX_ORACLE_CELLS: usize = 16;

/// Memoized exhaustive negamax solver. A state is terminal as soon as
/// either player's sides are joined; that player loses. The memo key is
/// the exact position plus the mover, independent of the production
/// hashing.
#[derive(Default)]
pub struct Oracle {
    memo: HashMap<u64, Player>,
    pub use_memo: bool,
}

impl Oracle {
    pub fn new() -> Oracle {
        Oracle { memo: HashMap::new(), use_memo: true }
    }

    /// Memo-free variant, for checking that memoization is sound.
    pub fn without_memo() -> Oracle {
        Oracle { memo: HashMap::new(), use_memo: false }
    }

    fn key(s: &GameState) -> u64 {
        debug_assert!(s.pos.dims().cells() <= MAX_ORACLE_CELLS);
        let dims = s.pos.dims();
        let mut k: u64 = (dims.width as u64) << 4 | dims.height as u64;
        k = (k << 2)
            | match s.to_move {
                Player::Black => 1,
                Player::White => 2,
            };
        for i in 0..s.pos.dims().cells() {
            let code = match s.pos.cell_at(i) {
                Cell::Empty => 0u64,
                Cell::Stone(Player::Black) => 1,
                Cell::Stone(Player::White) => 2,
            };
            k = (k << 2) | code;
        }
        k
    }

    /// The winner of `s` under perfect play.
    pub fn value(&mut self, s: &GameState) -> Player {
        if let Some(loser) = s.pos.terminal_loser() {
            return loser.opponent();
        }
        debug_assert!(!s.pos.is_full(), "full board must have a loser");
        let key = Self::key(s);
        if self.use_memo {
            if let Some(&w) = self.memo.get(&key) {
                return w;
            }
        }
        let mut winner = s.to_move.opponent();
        for c in s.pos.empty_cells().iter() {
            let child = s.play(c).expect("empty cell");
            if self.value(&child) == s.to_move {
                winner = s.to_move;
                break;
            }
        }
        if self.use_memo {
            self.memo.insert(key, winner);
        }
        winner
    }

    /// Winner plus the value of every legal move.
    pub fn solve(&mut self, s: &GameState) -> Result<OracleResult, Error> {
        if s.pos.dims().cells() > MAX_ORACLE_CELLS {
            return Err(Error::Usage(format!(
                "oracle limited to {MAX_ORACLE_CELLS} cells, got {}",
                s.pos.dims()
            )));
        }
        if s.pos.terminal_loser().is_some() {
            return Err(Error::Usage("oracle_solve on a terminal state".into()));
        }
        let mut per_move = Vec::new();
        let mut winner = s.to_move.opponent();
        for c in s.pos.empty_cells().iter() {
            let child = s.play(c)?;
            let v = self.value(&child);
            if v == s.to_move {
                winner = s.to_move;
            }
            per_move.push((c, v));
        }
        Ok(OracleResult { winner, per_move })
    }
}

/// One-shot exhaustive solve.
pub fn oracle_solve(s: &GameState) -> Result<OracleResult, Error> {
    Oracle::new().solve(s)
}

/// All minimal sets of empty cells whose `x`-coloring joins `x`'s two
/// sides, by size then row-major, up to `cap` many. The second component
/// is false when the cap cut the enumeration short.
pub fn enumerate_joinsets(
    pos: &Position,
    x: Player,
    cap: usize,
) -> (Vec<CellSet>, bool) {
    let empties: Vec<Coord> = pos.empty_cells().iter().collect();
    let e = empties.len();
    assert!(e <= 20, "joinset enumeration limited to 20 empty cells");
    let joined = |mask: u32| -> bool {
        let mut p = pos.clone();
        for (i, &c) in empties.iter().enumerate() {
            if mask & (1 << i) != 0 {
                p.place_unchecked(c, x);
            }
        }
        p.sides_joined(x)
    };
    let mut found: Vec<(u32, CellSet)> = Vec::new();
    for mask in 1u32..(1u32 << e) {
        if !joined(mask) {
            continue;
        }
        // Minimal iff dropping any single cell breaks the join
        // (joining is monotone in x's stones).
        let mut minimal = true;
        let mut m = mask;
        while m != 0 {
            let bit = m & m.wrapping_neg();
            if joined(mask & !bit) {
                minimal = false;
                break;
            }
            m &= m - 1;
        }
        if minimal {
            let mut set = CellSet::new(pos.dims());
            for (i, &c) in empties.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    set.insert(c);
                }
            }
            found.push((mask.count_ones(), set));
        }
    }
    found.sort_by_key(|(size, set)| (*size, set.iter().collect::<Vec<_>>()));
    let complete = found.len() <= cap;
    found.truncate(cap);
    (found.into_iter().map(|(_, s)| s).collect(), complete)
}

/// Ground-truth dead cells: empty cells in no joinset of either player.
pub fn dead_cells_exact(pos: &Position) -> CellSet {
    let mut live = CellSet::new(pos.dims());
    for x in [Player::Black, Player::White] {
        let (joinsets, complete) = enumerate_joinsets(pos, x, usize::MAX);
        debug_assert!(complete);
        for js in joinsets {
            live = live.union(&js);
        }
    }
    let mut out = CellSet::new(pos.dims());
    for c in pos.empty_cells().iter() {
        if !live.contains(c) {
            out.insert(c);
        }
    }
    out
}

fn resolve_endpoint(pos: &Position, owner: Player, end: &Endpoint) -> Result<usize, Error> {
    match end {
        Endpoint::Side { second } => Ok(pos.side_node(owner, *second)),
        Endpoint::Group(c) | Endpoint::Cell(c) => {
            if !pos.dims().contains(*c) {
                return Err(Error::Usage(format!("endpoint {c} out of bounds")));
            }
            Ok(pos.dims().index(*c))
        }
    }
}

/// Exhaustive check of a pairing connection: for every way of picking
/// one cell per pair (plus the key for a semi, plus any empty-cell
/// endpoints), owner-coloring the picks joins the two endpoints.
pub fn verify_pairing_vc(pos: &Position, vc: &PairingVC) -> bool {
    let owner = vc.player;
    let pairs = vc.pairing.pairs();
    if pairs.len() > 16 {
        return false;
    }
    // Carrier, key, and cell endpoints must be empty and distinct.
    let mut base = pos.clone();
    let mut seen = CellSet::new(pos.dims());
    let mut must_color: Vec<Coord> = Vec::new();
    if let Some(k) = vc.key {
        if vc.kind != VcKind::Semi {
            return false;
        }
        must_color.push(k);
    } else if vc.kind == VcKind::Semi {
        return false;
    }
    for end in [&vc.ends.0, &vc.ends.1] {
        if let Endpoint::Cell(c) = end {
            must_color.push(*c);
        }
    }
    for &(a, b) in pairs {
        for c in [a, b] {
            if !pos.dims().contains(c) || !pos.cell(c).is_empty() || seen.contains(c) {
                return false;
            }
            seen.insert(c);
        }
    }
    for &c in &must_color {
        if !pos.cell(c).is_empty() || seen.contains(c) {
            return false;
        }
        seen.insert(c);
        base.place_unchecked(c, owner);
    }
    let (e1, e2) = match (
        resolve_endpoint(&base, owner, &vc.ends.0),
        resolve_endpoint(&base, owner, &vc.ends.1),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return false,
    };
    for selection in 0u32..(1u32 << pairs.len()) {
        let mut p = base.clone();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let pick = if selection & (1 << i) != 0 { b } else { a };
            p.place_unchecked(pick, owner);
        }
        if p.find(e1) != p.find(e2) {
            return false;
        }
    }
    true
}

/// Exhaustive check of a capture certificate: for every way of
/// owner-coloring one cell per pair, every remaining uncolored cell of
/// the certificate is dead (by joinset enumeration).
pub fn verify_capture(pos: &Position, cert: &CaptureCertificate) -> bool {
    let pairs = cert.pairing.pairs();
    if pairs.len() > 16 {
        return false;
    }
    if cert.pairing.cells(pos.dims()) != cert.cells {
        return false;
    }
    for c in cert.cells.iter() {
        if !pos.cell(c).is_empty() {
            return false;
        }
    }
    for selection in 0u32..(1u32 << pairs.len()) {
        let mut p = pos.clone();
        let mut picked = CellSet::new(pos.dims());
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let pick = if selection & (1 << i) != 0 { b } else { a };
            p.place_unchecked(pick, cert.owner);
            picked.insert(pick);
        }
        let dead = dead_cells_exact(&p);
        for c in cert.cells.iter() {
            if !picked.contains(c) && !dead.contains(c) {
                return false;
            }
        }
    }
    true
}
