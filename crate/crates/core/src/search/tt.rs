//! Fixed-budget transposition table, shared between search threads.
//!
//! Entries are three words: an XOR checksum of the key against both data
//! words, then the data. A torn read or write fails the checksum and the
//! probe reports a miss, so no locks are needed; each entry is
//! individually consistent, which is all the parallel search relies on.

use std::sync::atomic::{AtomicU64, Ordering};

pub const INF: u32 = u32::MAX;

/// Unpacked table entry. `phi` is the cost to prove the mover wins,
/// `delta` the cost to prove the mover loses; one of them is 0 exactly
/// when the entry is solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TTEntry {
    pub key: u64,
    pub phi: u32,
    pub delta: u32,
    pub work: u32,
    /// Best move as a cell index in the canonical orientation; `NO_MOVE`
    /// when unknown or solved by knowledge alone.
    pub best_move: u8,
    pub depth: u8,
    /// Child-widening level reached at this node.
    pub focus: u8,
}

pub const NO_MOVE: u8 = u8::MAX;

impl TTEntry {
    pub fn new(key: u64) -> TTEntry {
        TTEntry { key, phi: 1, delta: 1, work: 0, best_move: NO_MOVE, depth: 0, focus: 0 }
    }

    pub fn solved(&self) -> bool {
        self.phi == 0 || self.delta == 0
    }

    /// True when the mover of the keyed state wins.
    pub fn mover_wins(&self) -> bool {
        debug_assert!(self.solved());
        self.phi == 0
    }

    fn pack(&self) -> (u64, u64) {
        let d1 = self.phi as u64 | (self.delta as u64) << 32;
        let d2 = self.work as u64
            | (self.best_move as u64) << 32
            | (self.depth as u64) << 40
            | (self.focus as u64) << 48
            | 1u64 << 56;
        (d1, d2)
    }

    fn unpack(key: u64, d1: u64, d2: u64) -> TTEntry {
        TTEntry {
            key,
            phi: d1 as u32,
            delta: (d1 >> 32) as u32,
            work: d2 as u32,
            best_move: (d2 >> 32) as u8,
            depth: (d2 >> 40) as u8,
            focus: (d2 >> 48) as u8,
        }
    }

    /// Retention priority: solved entries first, then more work, then
    /// deeper entries.
    fn keep_score(&self) -> u64 {
        ((self.solved() as u64) << 48) | ((self.work as u64) << 8) | self.depth as u64
    }
}

pub struct TransTable {
    slots: Vec<[AtomicU64; 3]>,
    mask: usize,
}

impl TransTable {
    /// A table of at most `bytes` bytes; zero disables the table.
    pub fn new(bytes: usize) -> TransTable {
        let want = bytes / std::mem::size_of::<[AtomicU64; 3]>();
        let count = if want == 0 { 0 } else { want.next_power_of_two() >> 1 };
        let count = count.max(if want == 0 { 0 } else { 1 });
        let mut slots = Vec::with_capacity(count);
        for _ in 0..count {
            slots.push([AtomicU64::new(0), AtomicU64::new(0), AtomicU64::new(0)]);
        }
        TransTable { slots, mask: count.saturating_sub(1) }
    }

    pub fn probe(&self, key: u64) -> Option<TTEntry> {
        if self.slots.is_empty() {
            return None;
        }
        let slot = &self.slots[(key as usize) & self.mask];
        let check = slot[0].load(Ordering::Acquire);
        let d1 = slot[1].load(Ordering::Acquire);
        let d2 = slot[2].load(Ordering::Acquire);
        if d2 & (1 << 56) == 0 || check ^ d1 ^ d2 != key {
            return None;
        }
        Some(TTEntry::unpack(key, d1, d2))
    }

    /// Store with the retention policy; solved entries are never
    /// overwritten by unsolved data for the same key.
    pub fn store(&self, entry: &TTEntry) {
        if self.slots.is_empty() {
            return;
        }
        let slot = &self.slots[(entry.key as usize) & self.mask];
        if let Some(old) = self.probe(entry.key) {
            if old.key == entry.key && old.solved() && !entry.solved() {
                return;
            }
        } else {
            let check = slot[0].load(Ordering::Acquire);
            let d1 = slot[1].load(Ordering::Acquire);
            let d2 = slot[2].load(Ordering::Acquire);
            if d2 & (1 << 56) != 0 {
                // Occupied by a different key (or torn): keep whichever
                // scores higher.
                let old = TTEntry::unpack(check ^ d1 ^ d2, d1, d2);
                if old.keep_score() > entry.keep_score() {
                    return;
                }
            }
        }
        let (d1, d2) = entry.pack();
        slot[0].store(entry.key ^ d1 ^ d2, Ordering::Release);
        slot[1].store(d1, Ordering::Release);
        slot[2].store(d2, Ordering::Release);
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }
}
