//! Electric-resistance move ordering.
//!
//! For a player, the board is an electrical network: empty cells are
//! nodes, the player's groups (sides included) are contracted nodes,
//! opponent stones are removed, and each adjacency has unit conductance.
//! The side-to-side resistance measures how far the player is from
//! joining. In Rex joining loses, so by default moves are tried in
//! decreasing `R_self / R_opp`: stay disconnected yourself, walk the
//! opponent toward their join.

use crate::board::{Cell, Coord, GameState, Player, Position};

/// Resistance treated as infinite (disconnected network).
pub const DISCONNECTED: f64 = 1e18;

/// Side-to-side resistance of `player`'s network on `pos`.
pub fn resistance(pos: &Position, player: Player) -> f64 {
    let n = pos.dims().cells();
    let source = pos.find(pos.side_node(player, false));
    let sink = pos.find(pos.side_node(player, true));
    if source == sink {
        return 0.0;
    }

    // Collect network nodes: empty cells and the player's group roots.
    let mut ids: Vec<usize> = vec![source, sink];
    for i in 0..n {
        match pos.cell_at(i) {
            Cell::Empty => ids.push(i),
            Cell::Stone(p) if p == player => {
                let r = pos.find(i);
                if !ids.contains(&r) {
                    ids.push(r);
                }
            }
            _ => {}
        }
    }
    let index_of = |id: usize| ids.iter().position(|&x| x == id);

    // Unit conductance per adjacent node pair.
    let m = ids.len();
    let mut cond = vec![0.0f64; m * m];
    let dims = pos.dims();
    for i in 0..n {
        if !pos.cell_at(i).is_empty() {
            continue;
        }
        let c = dims.coord(i);
        let ci = index_of(i).expect("empty cell is a node");
        for nb in crate::board::neighbor_iter(c, dims) {
            let j = dims.index(nb);
            match pos.cell_at(j) {
                Cell::Empty => {
                    if j > i {
                        let cj = index_of(j).expect("empty cell is a node");
                        cond[ci * m + cj] = 1.0;
                        cond[cj * m + ci] = 1.0;
                    }
                }
                Cell::Stone(p) if p == player => {
                    let cj = index_of(pos.find(j)).expect("group root is a node");
                    cond[ci * m + cj] = 1.0;
                    cond[cj * m + ci] = 1.0;
                }
                _ => {}
            }
        }
        // Side contact acts like touching a stone row of the owner.
        let side_hits = [
            (c.row == 0, Player::Black, false),
            (c.row == dims.height - 1, Player::Black, true),
            (c.col == 0, Player::White, false),
            (c.col == dims.width - 1, Player::White, true),
        ];
        for (on_edge, p, second) in side_hits {
            if on_edge && p == player {
                let cj = index_of(pos.find(pos.side_node(p, second)))
                    .expect("side root is a node");
                if cj != ci {
                    cond[ci * m + cj] = 1.0;
                    cond[cj * m + ci] = 1.0;
                }
            }
        }
    }

    // Reachability first: a singular system means no current path.
    let mut reach = vec![false; m];
    let mut stack = vec![0usize];
    reach[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..m {
            if !reach[w] && cond[v * m + w] > 0.0 {
                reach[w] = true;
                stack.push(w);
            }
        }
    }
    if !reach[1] {
        return DISCONNECTED;
    }

    // Solve the interior potentials with source at 1V, sink at 0V.
    let interior: Vec<usize> = (2..m).filter(|&i| reach[i]).collect();
    let k = interior.len();
    let mut a = vec![0.0f64; k * k];
    let mut b = vec![0.0f64; k];
    for (r, &i) in interior.iter().enumerate() {
        let mut diag = 0.0;
        for j in 0..m {
            let c = cond[i * m + j];
            if c == 0.0 {
                continue;
            }
            diag += c;
            if j == 0 {
                b[r] += c; // source potential 1
            } else if let Some(col) = interior.iter().position(|&x| x == j) {
                a[r * k + col] -= c;
            }
        }
        a[r * k + r] += diag;
    }
    if !gaussian_solve(&mut a, &mut b, k) {
        return DISCONNECTED;
    }
    let potential = |node: usize| -> f64 {
        if node == 0 {
            1.0
        } else if node == 1 {
            0.0
        } else {
            interior
                .iter()
                .position(|&x| x == node)
                .map(|r| b[r])
                .unwrap_or(0.0)
        }
    };
    let mut current = 0.0;
    for j in 0..m {
        let c = cond[j];
        if c > 0.0 {
            current += c * (1.0 - potential(j));
        }
    }
    if current <= 1e-12 {
        DISCONNECTED
    } else {
        1.0 / current
    }
}

/// In-place Gaussian elimination with partial pivoting; returns false on
/// a (numerically) singular system.
fn gaussian_solve(a: &mut [f64], b: &mut [f64], n: usize) -> bool {
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if a[row * n + col].abs() > a[pivot * n + col].abs() {
                pivot = row;
            }
        }
        if a[pivot * n + col].abs() < 1e-12 {
            return false;
        }
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
            }
            b.swap(col, pivot);
        }
        let inv = 1.0 / a[col * n + col];
        for row in col + 1..n {
            let f = a[row * n + col] * inv;
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                a[row * n + j] -= f * a[col * n + j];
            }
            b[row] -= f * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut sum = b[col];
        for j in col + 1..n {
            sum -= a[col * n + j] * b[j];
        }
        b[col] = sum / a[col * n + col];
    }
    true
}

/// Deterministic total order over `moves` for the mover of `s`.
///
/// With `prefer_blocking` (the default polarity) moves with a larger
/// own-to-opponent resistance ratio come first; the inverted polarity
/// reverses that. Ties break row-major.
pub fn resistance_order(s: &GameState, moves: &[Coord], prefer_blocking: bool) -> Vec<Coord> {
    let mut scored: Vec<(f64, usize, Coord)> = Vec::with_capacity(moves.len());
    for (i, &m) in moves.iter().enumerate() {
        let pos = match s.pos.color_cell(m, s.to_move) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let r_self = resistance(&pos, s.to_move);
        let r_opp = resistance(&pos, s.to_move.opponent());
        let ratio = r_self / r_opp.max(1e-18);
        scored.push((ratio, i, m));
    }
    scored.sort_by(|x, y| {
        let ord = if prefer_blocking {
            y.0.partial_cmp(&x.0)
        } else {
            x.0.partial_cmp(&y.0)
        };
        ord.unwrap_or(std::cmp::Ordering::Equal).then(x.1.cmp(&y.1))
    });
    scored.into_iter().map(|(_, _, m)| m).collect()
}
