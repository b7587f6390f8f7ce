//! Pairing-based virtual connections.
//!
//! A full pairing connection says: however the carrier pairs are
//! answered, coloring at least one cell of each pair joins the two
//! endpoints for the owner. A semi connection needs its key colored
//! first. A full connection between a player's own two sides is a
//! join-pairing, which in Rex is a *liability*: the opponent can force
//! the player to complete it. The search uses these certificates for
//! early win detection and for pruning the keys of the mover's own
//! pre-join pairings.
//!
//! Connections are composed bottom-up H-search style: base connections
//! from adjacency, AND through a shared midpoint, and a strictly binary
//! OR of two semi connections.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::board::{adjacent, Cell, CellSet, Coord, Dims, GameState, Player, Position};
use crate::error::Error;
use crate::inferior::Pairing;

/// One end of a connection: a side of the owner, one of the owner's
/// stone groups (named by any stone in it), or an empty cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "at")]
pub enum Endpoint {
    /// `second = false` is Black's north / White's west side.
    Side { second: bool },
    Group(Coord),
    Cell(Coord),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VcKind {
    Full,
    Semi,
}

/// A pairing virtual connection for `player` between `ends`.
#[derive(Debug, Clone, Serialize)]
pub struct PairingVC {
    pub player: Player,
    pub ends: (Endpoint, Endpoint),
    pub kind: VcKind,
    /// The key cell, present exactly on semi connections.
    pub key: Option<Coord>,
    pub pairing: Pairing,
}

/// Why a state is already decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WinKind {
    /// The loser has a full side-to-side pairing connection.
    JoinPairing,
    /// The loser has a semi side-to-side connection and moves last.
    PreJoinPairing,
}

/// An early-win certificate: `winner` beats the owner of `vc` from the
/// certified state, with either player to move.
#[derive(Debug, Clone, Serialize)]
pub struct WinCertificate {
    pub winner: Player,
    pub kind: WinKind,
    pub vc: PairingVC,
}

/// Composition budgets. The closure is exact only up to these caps.
#[derive(Debug, Clone, Copy)]
pub struct HsearchConfig {
    pub max_pairing_cells: usize,
    pub max_per_bucket: usize,
    /// Allow OR-combining semis whose carriers overlap in identical
    /// pairs (captured two-cell sets shared at an endpoint).
    pub augmented: bool,
}

impl Default for HsearchConfig {
    fn default() -> Self {
        HsearchConfig { max_pairing_cells: 16, max_per_bucket: 16, augmented: true }
    }
}

// Internal connection representation. Entity ids are union-find node
// ids: empty cells are their own id, groups are their root id, sides
// are the root of their side node.
#[derive(Debug, Clone)]
struct Conn {
    pairing: Pairing,
    carrier: CellSet,
    key: Option<Coord>,
}

impl Conn {
    fn cellprint(&self, dims: Dims) -> CellSet {
        let mut out = self.carrier;
        debug_assert_eq!(out.dims(), dims);
        if let Some(k) = self.key {
            out.insert(k);
        }
        out
    }
}

struct Buckets {
    dims: Dims,
    max_per_bucket: usize,
    fulls: BTreeMap<(u16, u16), Vec<Conn>>,
    semis: BTreeMap<(u16, u16), Vec<Conn>>,
    /// Bucket keys of `fulls` indexed by each endpoint, for the AND scan.
    fulls_by_end: BTreeMap<u16, Vec<(u16, u16)>>,
}

impl Buckets {
    /// Insert with superset pruning; returns true when the connection is
    /// new and useful. A connection whose cells are a superset of an
    /// existing one in the same bucket is dropped.
    fn insert(&mut self, ends: (u16, u16), conn: Conn) -> bool {
        let is_full = conn.key.is_none();
        let map = if is_full { &mut self.fulls } else { &mut self.semis };
        let bucket = map.entry(ends).or_default();
        let print = conn.cellprint(self.dims);
        for existing in bucket.iter() {
            if existing.key == conn.key
                && existing.cellprint(self.dims).intersect(&print)
                    == existing.cellprint(self.dims)
            {
                return false; // existing ⊆ new
            }
        }
        bucket.retain(|existing| {
            !(existing.key == conn.key
                && print.intersect(&existing.cellprint(self.dims)) == print)
        });
        if bucket.len() >= self.max_per_bucket {
            return false;
        }
        let register = bucket.is_empty();
        bucket.push(conn);
        if is_full && register {
            for e in [ends.0, ends.1] {
                let keys = self.fulls_by_end.entry(e).or_default();
                if !keys.contains(&ends) {
                    keys.push(ends);
                }
            }
        }
        true
    }
}

fn ordered(a: u16, b: u16) -> (u16, u16) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// H-search closure of pairing connections for `x` on `pos`.
pub fn hsearch(pos: &Position, x: Player, cfg: &HsearchConfig) -> Vec<PairingVC> {
    let dims = pos.dims();
    let n = dims.cells();
    let side1 = pos.find(pos.side_node(x, false)) as u16;
    let side2 = pos.find(pos.side_node(x, true)) as u16;
    if side1 == side2 {
        // x is already joined; the position is terminal.
        return Vec::new();
    }

    // Endpoint universe: both sides, every group of x, every empty cell.
    let mut entities: Vec<u16> = vec![side1, side2];
    for i in 0..n {
        match pos.cell_at(i) {
            Cell::Stone(p) if p == x => {
                let r = pos.find(i) as u16;
                if !entities.contains(&r) {
                    entities.push(r);
                }
            }
            Cell::Empty => entities.push(i as u16),
            _ => {}
        }
    }
    entities.sort_unstable();
    entities.dedup();

    let is_empty_cell = |e: u16| (e as usize) < n && pos.cell_at(e as usize).is_empty();
    let is_group = |e: u16| !is_empty_cell(e);
    let coord_of = |e: u16| dims.coord(e as usize);

    let entity_adjacent = |a: u16, b: u16| -> bool {
        match (is_empty_cell(a), is_empty_cell(b)) {
            (true, true) => adjacent(coord_of(a), coord_of(b)),
            (true, false) => pos.empty_touches_root(coord_of(a), b as usize),
            (false, true) => pos.empty_touches_root(coord_of(b), a as usize),
            (false, false) => false,
        }
    };

    let mut buckets = Buckets {
        dims,
        max_per_bucket: cfg.max_per_bucket,
        fulls: BTreeMap::new(),
        semis: BTreeMap::new(),
        fulls_by_end: BTreeMap::new(),
    };
    let mut queue: VecDeque<((u16, u16), Conn)> = VecDeque::new();

    // Base connections from adjacency.
    for (i, &a) in entities.iter().enumerate() {
        for &b in &entities[i + 1..] {
            if entity_adjacent(a, b) {
                let conn = Conn {
                    pairing: Pairing::empty(),
                    carrier: CellSet::new(dims),
                    key: None,
                };
                if buckets.insert((a, b), conn.clone()) {
                    queue.push_back(((a, b), conn));
                }
            }
        }
    }

    // Endpoint cells (when the endpoint is an empty cell) may not appear
    // inside the carrier or as the key.
    let end_cells_ok = |ends: (u16, u16), print: &CellSet| {
        for e in [ends.0, ends.1] {
            if is_empty_cell(e) && print.contains(coord_of(e)) {
                return false;
            }
        }
        true
    };

    while let Some((ends, conn)) = queue.pop_front() {
        if conn.key.is_none() {
            // AND rule: compose with every full sharing an endpoint.
            for (mid, other_end) in [(ends.0, ends.1), (ends.1, ends.0)] {
                let partner_keys: Vec<(u16, u16)> =
                    buckets.fulls_by_end.get(&mid).cloned().unwrap_or_default();
                for pk in partner_keys {
                    let far = if pk.0 == mid { pk.1 } else { pk.0 };
                    if far == other_end || far == mid {
                        continue;
                    }
                    let partners: Vec<Conn> =
                        buckets.fulls.get(&pk).map(|v| v.to_vec()).unwrap_or_default();
                    for partner in partners {
                        if conn.pairing.cell_count() + partner.pairing.cell_count()
                            > cfg.max_pairing_cells
                        {
                            continue;
                        }
                        if !conn.carrier.is_disjoint(&partner.carrier) {
                            continue;
                        }
                        let new_ends = ordered(other_end, far);
                        let carrier = conn.carrier.union(&partner.carrier);
                        let new_conn = if is_group(mid) {
                            let pairing = conn.pairing.merged(&partner.pairing);
                            Conn { pairing, carrier, key: None }
                        } else {
                            let key = coord_of(mid);
                            if carrier.contains(key) {
                                continue;
                            }
                            let pairing = conn.pairing.merged(&partner.pairing);
                            Conn { pairing, carrier, key: Some(key) }
                        };
                        let print = new_conn.cellprint(dims);
                        if !end_cells_ok(new_ends, &print) {
                            continue;
                        }
                        if buckets.insert(new_ends, new_conn.clone()) {
                            queue.push_back((new_ends, new_conn));
                        }
                    }
                }
            }
        } else {
            // OR rule, strictly binary: combine with the other semis in
            // this bucket.
            let peers: Vec<Conn> =
                buckets.semis.get(&ends).map(|v| v.to_vec()).unwrap_or_default();
            for peer in peers {
                if let Some(new_conn) = or_combine(&conn, &peer, cfg) {
                    let print = new_conn.cellprint(dims);
                    if !end_cells_ok(ends, &print) {
                        continue;
                    }
                    if buckets.insert(ends, new_conn.clone()) {
                        queue.push_back((ends, new_conn));
                    }
                }
            }
        }
    }

    // Publish with readable endpoints.
    let endpoint_of = |e: u16| -> Endpoint {
        if e == side1 {
            Endpoint::Side { second: false }
        } else if e == side2 {
            Endpoint::Side { second: true }
        } else if is_empty_cell(e) {
            Endpoint::Cell(coord_of(e))
        } else {
            Endpoint::Group(coord_of(e))
        }
    };
    let mut out = Vec::new();
    for (map, kind) in [(&buckets.fulls, VcKind::Full), (&buckets.semis, VcKind::Semi)] {
        for (&(a, b), conns) in map {
            for conn in conns {
                out.push(PairingVC {
                    player: x,
                    ends: (endpoint_of(a), endpoint_of(b)),
                    kind,
                    key: conn.key,
                    pairing: conn.pairing.clone(),
                });
            }
        }
    }
    out
}

/// OR two semi connections into a full one. The keys become a new pair:
/// any answer pattern hits at least one key, and that semi's carrier is
/// answered as usual. With `augmented` on, carriers may share identical
/// pairs; otherwise they must be fully disjoint.
fn or_combine(a: &Conn, b: &Conn, cfg: &HsearchConfig) -> Option<Conn> {
    let (ka, kb) = (a.key.expect("semi"), b.key.expect("semi"));
    if ka == kb {
        return None;
    }
    if a.carrier.contains(kb) || b.carrier.contains(ka) {
        return None;
    }
    let pairing = if a.carrier.is_disjoint(&b.carrier) {
        a.pairing.merged(&b.pairing)
    } else if cfg.augmented && pairs_compatible(&a.pairing, &b.pairing) {
        a.pairing.merged_dedup(&b.pairing)
    } else {
        return None;
    };
    let mut pairs = pairing.pairs().to_vec();
    pairs.push((ka, kb));
    let pairing = Pairing::new(pairs);
    if pairing.cell_count() > cfg.max_pairing_cells {
        return None;
    }
    let mut carrier = a.carrier.union(&b.carrier);
    carrier.insert(ka);
    carrier.insert(kb);
    Some(Conn { pairing, carrier, key: None })
}

/// True when every overlapping cell between the two pairings lies in a
/// pair that appears identically in both.
fn pairs_compatible(a: &Pairing, b: &Pairing) -> bool {
    for pa in a.pairs() {
        for pb in b.pairs() {
            if pa == pb {
                continue;
            }
            let (a1, a2) = *pa;
            let (b1, b2) = *pb;
            if a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2 {
                return false;
            }
        }
    }
    true
}

fn is_side_to_side(vc: &PairingVC) -> bool {
    matches!(
        vc.ends,
        (Endpoint::Side { second: false }, Endpoint::Side { second: true })
            | (Endpoint::Side { second: true }, Endpoint::Side { second: false })
    )
}

/// Side-to-side connections of the given kind.
pub fn side_to_side(vcs: &[PairingVC], kind: VcKind) -> impl Iterator<Item = &PairingVC> {
    vcs.iter().filter(move |vc| vc.kind == kind && is_side_to_side(vc))
}

/// Early win detection over both players' connection sets.
///
/// A full side-to-side pairing for a player loses for that player with
/// either side to move. A semi side-to-side pairing loses for its owner
/// if the owner would fill the last cell: the opponent avoids the key
/// until the owner is forced to play it.
pub fn detect_early_win(
    s: &GameState,
    vcs_black: &[PairingVC],
    vcs_white: &[PairingVC],
) -> Option<WinCertificate> {
    for (player, vcs) in [(Player::Black, vcs_black), (Player::White, vcs_white)] {
        if let Some(vc) = side_to_side(vcs, VcKind::Full).next() {
            return Some(WinCertificate {
                winner: player.opponent(),
                kind: WinKind::JoinPairing,
                vc: vc.clone(),
            });
        }
    }
    for (player, vcs) in [(Player::Black, vcs_black), (Player::White, vcs_white)] {
        if s.last_player() == player {
            if let Some(vc) = side_to_side(vcs, VcKind::Semi).next() {
                return Some(WinCertificate {
                    winner: player.opponent(),
                    kind: WinKind::PreJoinPairing,
                    vc: vc.clone(),
                });
            }
        }
    }
    None
}

/// Keys of all of the mover's own side-to-side semi connections: playing
/// any of them completes a join-pairing for the mover and loses.
pub fn prune_keys(s: &GameState, vcs_mover: &[PairingVC]) -> CellSet {
    let mut out = CellSet::new(s.pos.dims());
    for vc in side_to_side(vcs_mover, VcKind::Semi) {
        if let Some(k) = vc.key {
            out.insert(k);
        }
    }
    out
}

/// Executable pairing strategy: guarantees at most one owner stone per
/// pair at every terminal. With `avoid_key` set it also dodges the key
/// of a pre-join pairing for as long as a legal alternative exists.
#[derive(Debug, Clone)]
pub struct PairingStrategy {
    pub owner: Player,
    /// Whether the owner fills the final cell if the board fills up,
    /// fixed at the state where the strategy was adopted.
    pub owner_is_last: bool,
    pub pairing: Pairing,
    pub avoid_key: Option<Coord>,
}

impl PairingStrategy {
    /// The owner's reply given the opponent's last move (`None` when the
    /// owner opens). Deterministic: row-major first among legal choices.
    pub fn reply(&self, pos: &Position, opp_move: Option<Coord>) -> Result<Coord, Error> {
        let empties = pos.empty_cells();
        // Answer inside the pairing: color the mate if it is uncolored.
        if let Some(c) = opp_move {
            if let Some(mate) = self.pairing.mate(c) {
                if empties.contains(mate) {
                    return Ok(mate);
                }
                if self.owner_is_last {
                    return Err(Error::Internal(format!(
                        "pairing strategy: mate {mate} of {c} is already colored"
                    )));
                }
            }
        }
        // Otherwise stay outside the pairing, dodging the key if any.
        let outside = |c: Coord| !self.pairing.contains(c) && Some(c) != self.avoid_key;
        if let Some(c) = empties.iter().find(|&c| outside(c)) {
            return Ok(c);
        }
        if self.owner_is_last {
            return Err(Error::Internal(
                "pairing strategy: a last-player owner ran out of outside cells".into(),
            ));
        }
        // Everything uncolored is in the pairing (or is the key) and all
        // pairs are balanced: take any uncolored pairing cell.
        if let Some(c) = empties.iter().find(|&c| self.pairing.contains(c)) {
            return Ok(c);
        }
        if let Some(k) = self.avoid_key {
            if empties.contains(k) {
                return Ok(k);
            }
        }
        Err(Error::Internal("pairing strategy: no uncolored cell to play".into()))
    }
}

/// Strategy realizing a win certificate for its winner.
pub fn certificate_strategy(s: &GameState, cert: &WinCertificate) -> PairingStrategy {
    PairingStrategy {
        owner: cert.winner,
        owner_is_last: s.last_player() == cert.winner,
        pairing: cert.vc.pairing.clone(),
        avoid_key: cert.vc.key,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{parse_position, Dims};
    use crate::oracle::{verify_pairing_vc, Oracle};

    fn c(text: &str) -> Coord {
        Coord::parse_move(text).unwrap().1
    }

    fn empty3(to_move: Player) -> GameState {
        GameState::empty(Dims::square(3).unwrap(), to_move)
    }

    #[test]
    fn bridge_full_between_cell_and_side() {
        let s = empty3(Player::White);
        let vcs = hsearch(&s.pos, Player::White, &HsearchConfig::default());
        let found = vcs.iter().any(|vc| {
            vc.kind == VcKind::Full
                && vc.pairing.pairs() == [(c("a2"), c("a3"))]
                && matches!(
                    vc.ends,
                    (Endpoint::Side { second: false }, Endpoint::Cell(x))
                    | (Endpoint::Cell(x), Endpoint::Side { second: false }) if x == c("b2")
                )
        });
        assert!(found, "bridge b2-west via {{a2,a3}} not found");
    }

    #[test]
    fn side_to_side_semi_through_center() {
        let s = empty3(Player::White);
        let vcs = hsearch(&s.pos, Player::White, &HsearchConfig::default());
        let found = side_to_side(&vcs, VcKind::Semi).any(|vc| {
            vc.key == Some(c("b2"))
                && vc.pairing.pairs() == [(c("c1"), c("c2")), (c("a2"), c("a3"))]
        });
        assert!(found, "semi west-east with key b2 not found");
    }

    #[test]
    fn emitted_vcs_pass_the_exhaustive_check() {
        // Deterministic fuzz over sparse positions; every emitted VC for
        // either player must verify.
        let mut rng: u64 = 0xDECAF;
        let mut step = || {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (rng >> 33) as usize
        };
        for trial in 0..40 {
            let d = Dims::new(3 + (trial % 2) as u8, 3 + (trial % 3) as u8).unwrap();
            let mut pos = Position::new(d);
            let stones = step() % d.cells().min(6);
            let mut player = Player::Black;
            for _ in 0..stones {
                let empties: Vec<Coord> = pos.empty_cells().iter().collect();
                let pick = empties[step() % empties.len()];
                pos = pos.color_cell(pick, player).unwrap();
                if pos.terminal_loser().is_some() {
                    break;
                }
                player = player.opponent();
            }
            if pos.terminal_loser().is_some() {
                continue;
            }
            for x in [Player::Black, Player::White] {
                for vc in hsearch(&pos, x, &HsearchConfig::default()) {
                    assert!(verify_pairing_vc(&pos, &vc), "{pos:?} {vc:?}");
                }
            }
        }
    }

    #[test]
    fn early_win_on_empty_3x3() {
        // Nine empty cells make the mover Last; the mover's own pre-join
        // pairing hands the win to the opponent.
        let s = empty3(Player::White);
        let cfg = HsearchConfig::default();
        let vb = hsearch(&s.pos, Player::Black, &cfg);
        let vw = hsearch(&s.pos, Player::White, &cfg);
        let cert = detect_early_win(&s, &vb, &vw).expect("certificate expected");
        assert_eq!(cert.winner, Player::Black);
        assert_eq!(cert.kind, WinKind::PreJoinPairing);
        assert_eq!(cert.vc.player, Player::White);
        assert!(detect_early_win(&s, &[], &[]).is_none());
    }

    #[test]
    fn pre_join_detected_after_bad_4x4_replies() {
        // 2.Wa4, 2.Wb4, 2.Wd4 all lose to a White pre-join pairing.
        for row4 in ["w...", ".w..", "...w"] {
            let s = parse_position(&format!("rex 4 4/...b/..../..../{row4}/toplay b")).unwrap();
            let cfg = HsearchConfig::default();
            let vb = hsearch(&s.pos, Player::Black, &cfg);
            let vw = hsearch(&s.pos, Player::White, &cfg);
            let cert = detect_early_win(&s, &vb, &vw).expect("pre-join expected");
            assert_eq!(cert.winner, Player::Black);
            assert_eq!(cert.kind, WinKind::PreJoinPairing);
            assert_eq!(cert.vc.player, Player::White);
            assert!(verify_pairing_vc(&s.pos, &cert.vc));
        }
    }

    #[test]
    fn pruned_keys_lose_by_oracle() {
        let s = empty3(Player::White);
        let vw = hsearch(&s.pos, Player::White, &HsearchConfig::default());
        let keys = prune_keys(&s, &vw);
        assert!(keys.contains(c("b2")), "b2 must be a pre-join key, got {keys:?}");
        let mut oracle = Oracle::new();
        for k in keys.iter() {
            let child = s.play(k).unwrap();
            assert_eq!(oracle.value(&child), Player::Black, "key {k} must lose");
        }
    }

    #[test]
    fn no_keys_without_semis() {
        let s = empty3(Player::White);
        assert!(prune_keys(&s, &[]).is_empty());
    }

    #[test]
    fn pairing_reply_follows_the_rules() {
        let d = Dims::square(3).unwrap();
        let pairing = Pairing::new(vec![(c("a1"), c("a2")), (c("b1"), c("b2"))]);
        // Last owner answers a pairing move with the mate.
        let strat = PairingStrategy {
            owner: Player::Black,
            owner_is_last: true,
            pairing: pairing.clone(),
            avoid_key: None,
        };
        let pos = Position::new(d).color_cell(c("a1"), Player::White).unwrap();
        assert_eq!(strat.reply(&pos, Some(c("a1"))).unwrap(), c("a2"));
        // A move outside the pairing draws a reply outside the pairing.
        let pos = Position::new(d).color_cell(c("c3"), Player::White).unwrap();
        let reply = strat.reply(&pos, Some(c("c3"))).unwrap();
        assert!(!pairing.contains(reply));
        // Notlast owner forced inside the pairing picks a pairing cell.
        let strat = PairingStrategy {
            owner: Player::White,
            owner_is_last: false,
            pairing: Pairing::new(vec![(c("a1"), c("a2"))]),
            avoid_key: None,
        };
        let mut pos = Position::new(d);
        for cell in ["b1", "b2", "b3", "c1", "c2", "c3", "a3"] {
            pos = pos.color_cell(c(cell), Player::Black).unwrap();
        }
        let reply = strat.reply(&pos, Some(c("a3"))).unwrap();
        assert!(reply == c("a1") || reply == c("a2"));
    }

    /// Exhaustive adversary: the owner follows the strategy, the
    /// adversary tries every move; at every full board at most one cell
    /// per pair is owner-colored, and when `expect_loser` is set that
    /// player's sides are joined at the end.
    fn playout(
        pos: &Position,
        to_move: Player,
        strat: &PairingStrategy,
        expect_loser: Option<Player>,
    ) {
        if pos.is_full() {
            for &(a, b) in strat.pairing.pairs() {
                let owned = [a, b]
                    .into_iter()
                    .filter(|&x| pos.cell(x) == Cell::Stone(strat.owner))
                    .count();
                assert!(owned <= 1, "owner colored both of a pair");
            }
            if let Some(loser) = expect_loser {
                assert_eq!(pos.terminal_loser(), Some(loser));
            }
            return;
        }
        if to_move == strat.owner {
            unreachable!("playout always recurses through adversary moves");
        }
        for mv in pos.empty_cells().iter() {
            let after = pos.color_cell(mv, to_move).unwrap();
            if after.is_full() {
                playout(&after, strat.owner, strat, expect_loser);
                continue;
            }
            let reply = strat.reply(&after, Some(mv)).unwrap();
            let after2 = after.color_cell(reply, strat.owner).unwrap();
            playout(&after2, to_move, strat, expect_loser);
        }
    }

    #[test]
    fn pairing_strategy_survives_exhaustive_adversary() {
        // 2x3 board, pairing of two column pairs; owner plays second.
        let d = Dims::new(2, 3).unwrap();
        let pairing = Pairing::new(vec![(c("a1"), c("a2")), (c("b2"), c("b3"))]);
        for owner in [Player::Black, Player::White] {
            let s = GameState::empty(d, owner.opponent());
            let strat = PairingStrategy {
                owner,
                owner_is_last: s.last_player() == owner,
                pairing: pairing.clone(),
                avoid_key: None,
            };
            playout(&s.pos, s.to_move, &strat, None);
        }
    }

    #[test]
    fn certificate_strategy_forces_the_win_on_empty_3x3() {
        let s = empty3(Player::White);
        let cfg = HsearchConfig::default();
        let vb = hsearch(&s.pos, Player::Black, &cfg);
        let vw = hsearch(&s.pos, Player::White, &cfg);
        let cert = detect_early_win(&s, &vb, &vw).expect("certificate");
        assert_eq!(cert.winner, Player::Black);
        let strat = certificate_strategy(&s, &cert);
        // White (the pairing owner) moves; Black follows the strategy
        // and must force White to join.
        playout(&s.pos, Player::White, &strat, Some(Player::White));
    }
}
