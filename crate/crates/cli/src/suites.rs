//! Named benchmark suites.

use rex_core::board::{Coord, Dims, GameState, Player};

pub const SUITE_NAMES: &[&str] =
    &["3x3-all", "4x4-openings", "5x5-acute-replies", "6x6-openings"];

/// The states of a named suite, each with a short label.
pub fn suite_states(name: &str) -> Result<Vec<(String, GameState)>, String> {
    match name {
        "3x3-all" => Ok(openings(3, false)),
        "4x4-openings" => Ok(openings(4, false)),
        "5x5-acute-replies" => Ok(acute_replies(5)),
        "6x6-openings" => Ok(openings(6, true)),
        other => Err(format!("unknown suite {other:?}; known: {}", SUITE_NAMES.join(", "))),
    }
}

/// All one-move opening states of the empty NxN board, optionally
/// collapsed to one representative per 180-degree class.
fn openings(n: u8, up_to_symmetry: bool) -> Vec<(String, GameState)> {
    let dims = Dims::square(n).unwrap();
    let base = GameState::empty(dims, Player::Black);
    let cells = dims.cells();
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for m in base.pos.empty_cells().iter() {
        if up_to_symmetry {
            let idx = dims.index(m);
            if !seen.insert(idx.min(cells - 1 - idx)) {
                continue;
            }
        }
        out.push((format!("B{m}"), base.play(m).unwrap()));
    }
    out
}

/// Every reply to the acute-corner opening.
fn acute_replies(n: u8) -> Vec<(String, GameState)> {
    let dims = Dims::square(n).unwrap();
    let base = GameState::empty(dims, Player::Black);
    let a1 = Coord::parse_move("a1").unwrap().1;
    let after = base.play(a1).unwrap();
    after
        .pos
        .empty_cells()
        .iter()
        .map(|m| (format!("Ba1-W{m}"), after.play(m).unwrap()))
        .collect()
}
