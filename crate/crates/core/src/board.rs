//! Hex board geometry, position and state representation, group
//! connectivity, terminal detection, symmetry maps, hashing, and the
//! text position format.
//!
//! Rex is played on the usual hex grid: Black owns the top and bottom
//! edges, White owns the left and right edges, and whoever joins their
//! own two edges *loses*. Cells are named column-letter + row-number,
//! so `a1` is the top-left (acute) corner.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Hard cap on board edge length. Keeps cell indices in `u8`/`u16`
/// territory and bitsets in three words.
pub const MAX_DIM: u8 = 13;
/// Maximum number of cells on any supported board.
pub const MAX_CELLS: usize = (MAX_DIM as usize) * (MAX_DIM as usize);

/// One of the two players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    /// Joins (and therefore must avoid joining) the top and bottom edges.
    #[serde(rename = "b")]
    Black,
    /// Joins (and therefore must avoid joining) the left and right edges.
    #[serde(rename = "w")]
    White,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Black => Player::White,
            Player::White => Player::Black,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Player::Black => 'b',
            Player::White => 'w',
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Black => write!(f, "Black"),
            Player::White => write!(f, "White"),
        }
    }
}

/// Contents of a single cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    Empty,
    Stone(Player),
}

impl Cell {
    pub fn is_empty(self) -> bool {
        self == Cell::Empty
    }
}

/// Board dimensions: `width` cells per row, `height` rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dims {
    pub width: u8,
    pub height: u8,
}

impl Dims {
    pub fn new(width: u8, height: u8) -> Result<Dims, Error> {
        if width == 0 || height == 0 || width > MAX_DIM || height > MAX_DIM {
            return Err(Error::Usage(format!(
                "board dimensions must be between 1 and {MAX_DIM}, got {width}x{height}"
            )));
        }
        Ok(Dims { width, height })
    }

    pub fn square(n: u8) -> Result<Dims, Error> {
        Dims::new(n, n)
    }

    pub fn cells(self) -> usize {
        self.width as usize * self.height as usize
    }

    pub fn is_square(self) -> bool {
        self.width == self.height
    }

    pub fn contains(self, c: Coord) -> bool {
        c.col < self.width && c.row < self.height
    }

    /// Row-major cell index.
    pub fn index(self, c: Coord) -> usize {
        c.row as usize * self.width as usize + c.col as usize
    }

    pub fn coord(self, index: usize) -> Coord {
        debug_assert!(index < self.cells());
        Coord {
            col: (index % self.width as usize) as u8,
            row: (index / self.width as usize) as u8,
        }
    }

    /// All coordinates in row-major order.
    pub fn iter(self) -> impl Iterator<Item = Coord> {
        (0..self.cells()).map(move |i| self.coord(i))
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.width, self.height)
    }
}

/// A cell coordinate. `col` 0 renders as column `a`, `row` 0 as row `1`,
/// so `Coord { col: 3, row: 0 }` is `d1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub row: u8,
    pub col: u8,
}

impl Coord {
    pub fn new(col: u8, row: u8) -> Coord {
        Coord { col, row }
    }

    /// Parse `"d1"` style cell names, optionally prefixed by `B` or `W`.
    /// Returns the optional stone prefix and the coordinate.
    pub fn parse_move(text: &str) -> Result<(Option<Player>, Coord), Error> {
        let mut rest = text.trim();
        let mut prefix = None;
        if let Some(first) = rest.chars().next() {
            match first {
                'B' => {
                    prefix = Some(Player::Black);
                    rest = &rest[1..];
                }
                'W' => {
                    prefix = Some(Player::White);
                    rest = &rest[1..];
                }
                _ => {}
            }
        }
        let mut chars = rest.chars();
        let col_ch = chars
            .next()
            .ok_or_else(|| Error::Usage(format!("empty move string {text:?}")))?;
        if !col_ch.is_ascii_lowercase() || col_ch > 'm' {
            return Err(Error::Usage(format!(
                "bad column letter in move {text:?} (expected a-m)"
            )));
        }
        let row_txt: String = chars.collect();
        let row: u8 = row_txt
            .parse()
            .map_err(|_| Error::Usage(format!("bad row number in move {text:?}")))?;
        if row == 0 || row > MAX_DIM {
            return Err(Error::Usage(format!("row out of range in move {text:?}")));
        }
        Ok((prefix, Coord::new(col_ch as u8 - b'a', row - 1)))
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", (b'a' + self.col) as char, self.row + 1)
    }
}

impl Serialize for Coord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Coord, D::Error> {
        let text = String::deserialize(d)?;
        Coord::parse_move(&text)
            .map(|(_, c)| c)
            .map_err(serde::de::Error::custom)
    }
}

/// The six hex-neighbour offsets as (dcol, drow).
const OFFSETS: [(i16, i16); 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)];

/// In-bounds hex neighbours of `c`, as a set.
pub fn neighbors(c: Coord, dims: Dims) -> CellSet {
    let mut out = CellSet::new(dims);
    for n in neighbor_iter(c, dims) {
        out.insert(n);
    }
    out
}

/// Iterator form of [`neighbors`]; order is the fixed offset order.
pub fn neighbor_iter(c: Coord, dims: Dims) -> impl Iterator<Item = Coord> {
    OFFSETS.iter().filter_map(move |&(dc, dr)| {
        let col = c.col as i16 + dc;
        let row = c.row as i16 + dr;
        if col >= 0 && row >= 0 && col < dims.width as i16 && row < dims.height as i16 {
            Some(Coord::new(col as u8, row as u8))
        } else {
            None
        }
    })
}

pub fn adjacent(a: Coord, b: Coord) -> bool {
    let dc = a.col as i16 - b.col as i16;
    let dr = a.row as i16 - b.row as i16;
    matches!((dc, dr), (1, 0) | (-1, 0) | (0, 1) | (0, -1) | (1, -1) | (-1, 1))
}

/// A set of cells on a fixed board, stored as a bitset. Iteration is
/// row-major, which every deterministic tie-break in the solver relies on.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CellSet {
    dims: Dims,
    bits: [u64; 3],
}

impl CellSet {
    pub fn new(dims: Dims) -> CellSet {
        CellSet { dims, bits: [0; 3] }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn insert(&mut self, c: Coord) {
        debug_assert!(self.dims.contains(c));
        let i = self.dims.index(c);
        self.bits[i >> 6] |= 1 << (i & 63);
    }

    pub fn insert_index(&mut self, i: usize) {
        debug_assert!(i < self.dims.cells());
        self.bits[i >> 6] |= 1 << (i & 63);
    }

    pub fn remove(&mut self, c: Coord) {
        let i = self.dims.index(c);
        self.bits[i >> 6] &= !(1 << (i & 63));
    }

    pub fn contains(&self, c: Coord) -> bool {
        if !self.dims.contains(c) {
            return false;
        }
        let i = self.dims.index(c);
        self.bits[i >> 6] & (1 << (i & 63)) != 0
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.bits[i >> 6] & (1 << (i & 63)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == [0; 3]
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        debug_assert_eq!(self.dims, other.dims);
        let mut out = *self;
        for (a, b) in out.bits.iter_mut().zip(other.bits) {
            *a |= b;
        }
        out
    }

    pub fn intersect(&self, other: &CellSet) -> CellSet {
        debug_assert_eq!(self.dims, other.dims);
        let mut out = *self;
        for (a, b) in out.bits.iter_mut().zip(other.bits) {
            *a &= b;
        }
        out
    }

    pub fn is_disjoint(&self, other: &CellSet) -> bool {
        self.intersect(other).is_empty()
    }

    /// Cells in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = Coord> + '_ {
        let dims = self.dims;
        (0..dims.cells()).filter(|&i| self.contains_index(i)).map(move |i| dims.coord(i))
    }

    pub fn first(&self) -> Option<Coord> {
        self.iter().next()
    }
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for CellSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

// --- Zobrist keys ------------------------------------------------------

/// splitmix64 step, const so the key tables can live in rodata.
const fn splitmix64(state: u64) -> (u64, u64) {
    let state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    (state, z ^ (z >> 31))
}

const fn make_cell_keys() -> [[u64; 2]; MAX_CELLS] {
    let mut keys = [[0u64; 2]; MAX_CELLS];
    let mut state: u64 = 0x7265_7873_6565_6431;
    let mut i = 0;
    while i < MAX_CELLS {
        let (s1, a) = splitmix64(state);
        let (s2, b) = splitmix64(s1);
        keys[i] = [a, b];
        state = s2;
        i += 1;
    }
    keys
}

static CELL_KEYS: [[u64; 2]; MAX_CELLS] = make_cell_keys();
/// XORed into the state hash when White is to move.
pub(crate) const TURN_KEY: u64 = 0xA5B3_5705_91C9_6B2D;

/// Base hash of the empty board. Distinct per dimensions so a shared
/// transposition table never confuses positions from different boards.
fn dims_key(dims: Dims) -> u64 {
    let (_, k) = splitmix64(
        0xD1B5_C0DE ^ ((dims.width as u64) << 32) ^ ((dims.height as u64) << 16),
    );
    k
}

// --- Position ----------------------------------------------------------

/// Union-find node ids: cells are `0..n`, then the four virtual side
/// nodes in this order.
const SIDE_BLACK_NORTH: usize = 0;
const SIDE_BLACK_SOUTH: usize = 1;
const SIDE_WHITE_WEST: usize = 2;
const SIDE_WHITE_EAST: usize = 3;

/// A board position: dimensions, per-cell colors, and a union-find over
/// colored cells plus the four virtual side nodes. Operations have value
/// semantics: they return a new `Position` and leave the input untouched.
#[derive(Clone)]
pub struct Position {
    dims: Dims,
    cells: Vec<Cell>,
    /// Union-find parents; length `cells + 4`. Roots are minimal node ids,
    /// so a group containing a stone always has a cell id as root.
    parent: Vec<u16>,
    empty_count: u16,
    hash: u64,
    rot_hash: u64,
}

impl PartialEq for Position {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.cells == other.cells
    }
}

impl Eq for Position {}

impl Position {
    pub fn new(dims: Dims) -> Position {
        let n = dims.cells();
        let base = dims_key(dims);
        Position {
            dims,
            cells: vec![Cell::Empty; n],
            parent: (0..n as u16 + 4).collect(),
            empty_count: n as u16,
            hash: base,
            rot_hash: base,
        }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn cell(&self, c: Coord) -> Cell {
        self.cells[self.dims.index(c)]
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        self.cells[index]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn empty_count(&self) -> usize {
        self.empty_count as usize
    }

    pub fn stone_count(&self) -> usize {
        self.dims.cells() - self.empty_count()
    }

    pub fn is_full(&self) -> bool {
        self.empty_count == 0
    }

    /// Empty cells in row-major order.
    pub fn empty_cells(&self) -> CellSet {
        let mut out = CellSet::new(self.dims);
        for i in 0..self.dims.cells() {
            if self.cells[i].is_empty() {
                out.insert_index(i);
            }
        }
        out
    }

    /// Union-find node id of a player's side.
    pub(crate) fn side_node(&self, player: Player, second: bool) -> usize {
        let base = self.dims.cells();
        match (player, second) {
            (Player::Black, false) => base + SIDE_BLACK_NORTH,
            (Player::Black, true) => base + SIDE_BLACK_SOUTH,
            (Player::White, false) => base + SIDE_WHITE_WEST,
            (Player::White, true) => base + SIDE_WHITE_EAST,
        }
    }

    /// Which player a union-find root belongs to, if any. Pure side nodes
    /// report their owner; empty cells report `None`.
    pub(crate) fn root_owner(&self, root: usize) -> Option<Player> {
        let n = self.dims.cells();
        if root < n {
            match self.cells[root] {
                Cell::Empty => None,
                Cell::Stone(p) => Some(p),
            }
        } else {
            match root - n {
                SIDE_BLACK_NORTH | SIDE_BLACK_SOUTH => Some(Player::Black),
                _ => Some(Player::White),
            }
        }
    }

    pub(crate) fn find(&self, mut node: usize) -> usize {
        loop {
            let p = self.parent[node] as usize;
            if p == node {
                return node;
            }
            node = p;
        }
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // Smaller id wins so group roots are deterministic.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u16;
        }
    }

    /// Sides of `c`'s owner that `c` touches, as union-find node ids.
    fn own_side_contacts(&self, c: Coord, p: Player) -> [Option<usize>; 2] {
        let mut out = [None, None];
        match p {
            Player::Black => {
                if c.row == 0 {
                    out[0] = Some(self.side_node(Player::Black, false));
                }
                if c.row == self.dims.height - 1 {
                    out[1] = Some(self.side_node(Player::Black, true));
                }
            }
            Player::White => {
                if c.col == 0 {
                    out[0] = Some(self.side_node(Player::White, false));
                }
                if c.col == self.dims.width - 1 {
                    out[1] = Some(self.side_node(Player::White, true));
                }
            }
        }
        out
    }

    /// Returns the position with `c` colored for `p`. Errors if `c` is out
    /// of bounds or already occupied.
    pub fn color_cell(&self, c: Coord, p: Player) -> Result<Position, Error> {
        if !self.dims.contains(c) {
            return Err(Error::Usage(format!("cell {c} is outside the {} board", self.dims)));
        }
        if !self.cell(c).is_empty() {
            return Err(Error::Usage(format!("cell {c} is already occupied")));
        }
        let mut next = self.clone();
        next.place_unchecked(c, p);
        Ok(next)
    }

    /// In-place variant used by hot loops that already validated `c`.
    pub(crate) fn place_unchecked(&mut self, c: Coord, p: Player) {
        let i = self.dims.index(c);
        debug_assert!(self.cells[i].is_empty());
        self.cells[i] = Cell::Stone(p);
        self.empty_count -= 1;
        let color = p as usize;
        self.hash ^= CELL_KEYS[i][color];
        self.rot_hash ^= CELL_KEYS[self.dims.cells() - 1 - i][color];
        for nb in neighbor_iter(c, self.dims) {
            if self.cell(nb) == Cell::Stone(p) {
                self.union(i, self.dims.index(nb));
            }
        }
        for side in self.own_side_contacts(c, p).into_iter().flatten() {
            self.union(i, side);
        }
    }

    /// True iff `p`'s two sides are in one group.
    pub fn sides_joined(&self, p: Player) -> bool {
        self.find(self.side_node(p, false)) == self.find(self.side_node(p, true))
    }

    /// The player whose sides are joined, i.e. the loser, if any. At most
    /// one player can be joined on a hex board.
    pub fn terminal_loser(&self) -> Option<Player> {
        if self.sides_joined(Player::Black) {
            Some(Player::Black)
        } else if self.sides_joined(Player::White) {
            Some(Player::White)
        } else {
            None
        }
    }

    /// 180-degree rotation. Maps each side to the opposite side of the
    /// same player, so colors are unchanged.
    pub fn rotate180(&self) -> Position {
        let n = self.dims.cells();
        let mut out = Position::new(self.dims);
        for i in 0..n {
            if let Cell::Stone(p) = self.cells[i] {
                out.place_unchecked(self.dims.coord(n - 1 - i), p);
            }
        }
        out
    }

    /// Reflect across the long diagonal and swap colors. Only defined on
    /// square boards, where it maps each player's sides to the other's.
    pub fn color_swap_transpose(&self) -> Result<Position, Error> {
        if !self.dims.is_square() {
            return Err(Error::Usage(format!(
                "color-swap transpose requires a square board, got {}",
                self.dims
            )));
        }
        let mut out = Position::new(self.dims);
        for c in self.dims.iter() {
            if let Cell::Stone(p) = self.cell(c) {
                out.place_unchecked(Coord::new(c.row, c.col), p.opponent());
            }
        }
        Ok(out)
    }

    /// True iff the position equals its color-swapped transpose.
    pub fn is_color_symmetric(&self) -> bool {
        self.dims.is_square()
            && self.color_swap_transpose().map(|t| t == *self).unwrap_or(false)
    }

    pub(crate) fn raw_hash(&self) -> u64 {
        self.hash
    }

    pub(crate) fn raw_rot_hash(&self) -> u64 {
        self.rot_hash
    }

    /// True if empty cell `e` touches the group rooted at `root`: it
    /// neighbours one of the group's stones, or lies on an edge whose
    /// side node is in the group.
    pub(crate) fn empty_touches_root(&self, e: Coord, root: usize) -> bool {
        for nb in neighbor_iter(e, self.dims) {
            if !self.cell(nb).is_empty() && self.find(self.dims.index(nb)) == root {
                return true;
            }
        }
        let side_checks = [
            (e.row == 0, Player::Black, false),
            (e.row == self.dims.height - 1, Player::Black, true),
            (e.col == 0, Player::White, false),
            (e.col == self.dims.width - 1, Player::White, true),
        ];
        for (on_edge, p, second) in side_checks {
            if on_edge && self.find(self.side_node(p, second)) == root {
                return true;
            }
        }
        false
    }

    /// Rebuilds the union-find from the cell array. Only used by tests to
    /// check the incremental bookkeeping.
    #[doc(hidden)]
    pub fn groups_rebuilt(&self) -> Position {
        let mut out = Position::new(self.dims);
        for c in self.dims.iter() {
            if let Cell::Stone(p) = self.cell(c) {
                out.place_unchecked(c, p);
            }
        }
        out
    }

    /// Root-equivalence view of the groups, for structural comparison.
    #[doc(hidden)]
    pub fn group_signature(&self) -> Vec<u16> {
        (0..self.parent.len()).map(|i| self.find(i) as u16).collect()
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Position({})", format_position_inline_pos(self))
    }
}

// --- GameState ---------------------------------------------------------

/// A position plus the player to move.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GameState {
    pub pos: Position,
    pub to_move: Player,
}

impl GameState {
    pub fn new(pos: Position, to_move: Player) -> GameState {
        GameState { pos, to_move }
    }

    pub fn empty(dims: Dims, to_move: Player) -> GameState {
        GameState::new(Position::new(dims), to_move)
    }

    pub fn play(&self, c: Coord) -> Result<GameState, Error> {
        Ok(GameState {
            pos: self.pos.color_cell(c, self.to_move)?,
            to_move: self.to_move.opponent(),
        })
    }

    /// The player who fills the final cell if the board fills up: the
    /// player to move exactly when the number of empty cells is odd.
    pub fn last_player(&self) -> Player {
        if self.pos.empty_count() % 2 == 1 {
            self.to_move
        } else {
            self.to_move.opponent()
        }
    }

    pub fn notlast_player(&self) -> Player {
        self.last_player().opponent()
    }

    fn keyed_hash(&self, h: u64) -> u64 {
        match self.to_move {
            Player::Black => h,
            Player::White => h ^ TURN_KEY,
        }
    }

    /// Exact (orientation-specific) hash.
    pub fn exact_key(&self) -> u64 {
        self.keyed_hash(self.pos.raw_hash())
    }

    /// 64-bit key canonical over 180-degree rotation: the minimum of the
    /// hash of the state and of its rotation.
    pub fn canonical_key(&self) -> u64 {
        let a = self.keyed_hash(self.pos.raw_hash());
        let b = self.keyed_hash(self.pos.raw_rot_hash());
        a.min(b)
    }

    /// True when the canonical key was taken from the rotated orientation;
    /// movers stored under the canonical key must be mapped through the
    /// rotation in that case.
    pub fn canonical_is_rotated(&self) -> bool {
        self.keyed_hash(self.pos.raw_rot_hash()) < self.keyed_hash(self.pos.raw_hash())
    }
}

// --- Text format -------------------------------------------------------

/// Parse the text position format:
///
/// ```text
/// rex <width> <height>
/// <height rows of width characters from {., b, w}>   (row 1 first)
/// toplay b|w
/// ```
///
/// `/` is accepted in place of newlines so a whole record fits on a
/// command line.
pub fn parse_position(text: &str) -> Result<GameState, Error> {
    let mut lines: Vec<(usize, String)> = Vec::new();
    if text.contains('\n') {
        for (ln, raw) in text.lines().enumerate() {
            let t = raw.trim();
            if !t.is_empty() {
                lines.push((ln + 1, t.to_string()));
            }
        }
    } else {
        for (ln, raw) in text.split('/').enumerate() {
            let t = raw.trim();
            if !t.is_empty() {
                lines.push((ln + 1, t.to_string()));
            }
        }
    }
    let parse_err = |line: usize, col: usize, msg: String| Error::Parse { line, col, msg };

    let (hdr_line, header) = lines
        .first()
        .ok_or_else(|| parse_err(1, 1, "empty position text".into()))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("rex") {
        return Err(parse_err(*hdr_line, 1, "expected header `rex <width> <height>`".into()));
    }
    let width: u8 = words
        .next()
        .and_then(|w| w.parse().ok())
        .ok_or_else(|| parse_err(*hdr_line, 5, "bad or missing width".into()))?;
    let height: u8 = words
        .next()
        .and_then(|w| w.parse().ok())
        .ok_or_else(|| parse_err(*hdr_line, 5, "bad or missing height".into()))?;
    let dims = Dims::new(width, height)
        .map_err(|e| parse_err(*hdr_line, 5, e.to_string()))?;

    if lines.len() != height as usize + 2 {
        return Err(parse_err(
            lines.last().map(|(l, _)| *l).unwrap_or(1),
            1,
            format!("expected {} rows plus a `toplay` line", height),
        ));
    }

    let mut pos = Position::new(dims);
    for r in 0..height {
        let (ln, row_text) = &lines[r as usize + 1];
        let chars: Vec<char> = row_text.chars().collect();
        if chars.len() != width as usize {
            return Err(parse_err(*ln, row_text.len().max(1), format!(
                "row {} has {} cells, expected {}",
                r + 1,
                chars.len(),
                width
            )));
        }
        for (i, ch) in chars.iter().enumerate() {
            let c = Coord::new(i as u8, r);
            match ch {
                '.' => {}
                'b' => pos.place_unchecked(c, Player::Black),
                'w' => pos.place_unchecked(c, Player::White),
                other => {
                    return Err(parse_err(*ln, i + 1, format!(
                        "bad cell character {other:?} (expected `.`, `b`, or `w`)"
                    )))
                }
            }
        }
    }

    let (ln, toplay) = &lines[height as usize + 1];
    let to_move = match toplay.strip_prefix("toplay").map(str::trim) {
        Some("b") => Player::Black,
        Some("w") => Player::White,
        _ => {
            return Err(parse_err(*ln, 1, "expected final line `toplay b|w`".into()));
        }
    };
    Ok(GameState::new(pos, to_move))
}

fn rows_of(pos: &Position) -> Vec<String> {
    let dims = pos.dims();
    (0..dims.height)
        .map(|r| {
            (0..dims.width)
                .map(|c| match pos.cell(Coord::new(c, r)) {
                    Cell::Empty => '.',
                    Cell::Stone(p) => p.letter(),
                })
                .collect()
        })
        .collect()
}

/// Multi-line canonical form of the position format.
pub fn format_position(s: &GameState) -> String {
    let dims = s.pos.dims();
    let mut out = format!("rex {} {}\n", dims.width, dims.height);
    for row in rows_of(&s.pos) {
        out.push_str(&row);
        out.push('\n');
    }
    out.push_str(&format!("toplay {}\n", s.to_move.letter()));
    out
}

/// One-line `/`-separated form, convenient for logs and records.
pub fn format_position_inline(s: &GameState) -> String {
    let dims = s.pos.dims();
    let mut parts = vec![format!("rex {} {}", dims.width, dims.height)];
    parts.extend(rows_of(&s.pos));
    parts.push(format!("toplay {}", s.to_move.letter()));
    parts.join("/")
}

fn format_position_inline_pos(pos: &Position) -> String {
    let dims = pos.dims();
    let mut parts = vec![format!("rex {} {}", dims.width, dims.height)];
    parts.extend(rows_of(pos));
    parts.join("/")
}

/// Sheared board diagram for human output; rows are indented to show the
/// hex adjacency.
pub fn diagram(pos: &Position) -> String {
    let dims = pos.dims();
    let mut out = String::from("   ");
    for c in 0..dims.width {
        out.push((b'a' + c) as char);
        out.push(' ');
    }
    out.push('\n');
    for (r, row) in rows_of(pos).iter().enumerate() {
        out.push_str(&" ".repeat(r));
        out.push_str(&format!("{:>2} ", r + 1));
        for ch in row.chars() {
            out.push(ch);
            out.push(' ');
        }
        out.push('\n');
    }
    out
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_position() -> impl Strategy<Value = Position> {
        (1u8..=5, 1u8..=5, any::<u64>(), 0usize..=25).prop_map(|(w, h, seed, stones)| {
            let dims = Dims::new(w, h).unwrap();
            let mut pos = Position::new(dims);
            let mut rng = seed;
            let mut player = Player::Black;
            for _ in 0..stones.min(dims.cells()) {
                let empties: Vec<Coord> = pos.empty_cells().iter().collect();
                if empties.is_empty() {
                    break;
                }
                rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let pick = empties[(rng >> 33) as usize % empties.len()];
                pos = pos.color_cell(pick, player).unwrap();
                player = player.opponent();
            }
            pos
        })
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(pos in arb_position(), white_to_move in any::<bool>()) {
            let s = GameState::new(pos, if white_to_move { Player::White } else { Player::Black });
            let text = format_position(&s);
            let back = parse_position(&text).unwrap();
            prop_assert_eq!(back, s);
        }

        #[test]
        fn rotation_is_an_involution_and_preserves_joins(pos in arb_position()) {
            let rot = pos.rotate180();
            prop_assert_eq!(rot.rotate180(), pos.clone());
            for p in [Player::Black, Player::White] {
                prop_assert_eq!(rot.sides_joined(p), pos.sides_joined(p));
            }
        }

        #[test]
        fn incremental_groups_match_rebuild(pos in arb_position()) {
            prop_assert_eq!(pos.group_signature(), pos.groups_rebuilt().group_signature());
        }
    }
}
