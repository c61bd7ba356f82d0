//! Zig and zag successors, zigzag cycles and consistency.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::quiver::{rotate_min, DimerModel};

/// A state of the alternating walk: an arrow and the parity of its step.
/// Parity 0 moves on through the positive face, parity 1 through the negative face.
pub type ZState = (usize, u8);

pub fn successor(m: &DimerModel, (a, p): ZState) -> ZState {
    if p == 0 { (m.pos_next(a), 1) } else { (m.neg_next(a), 0) }
}

/// The `i`-th arrow of the zig ray (parity 0) or zag ray (parity 1) of `a`.
pub fn ray(m: &DimerModel, a: usize, parity: u8, len: usize) -> Vec<usize> {
    let mut s = (a, parity);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(s.0);
        s = successor(m, s);
    }
    out
}

/// Length of the zigzag cycle through a state.
pub fn orbit_len(m: &DimerModel, s: ZState) -> usize {
    let mut t = successor(m, s);
    let mut n = 1;
    while t != s {
        t = successor(m, t);
        n += 1;
    }
    n
}

/// A zigzag cycle: the orbit of one state under the successor map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ZigzagCycle {
    pub states: Vec<ZState>,
}

impl ZigzagCycle {
    pub fn len(&self) -> usize {
        self.states.len()
    }
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
    pub fn arrows(&self) -> Vec<usize> {
        self.states.iter().map(|s| s.0).collect()
    }
}

/// Canonical orbit decomposition: each cycle starts at its minimal state, cycles sorted.
pub fn zigzag_cycles(m: &DimerModel) -> Vec<ZigzagCycle> {
    let mut seen = vec![[false; 2]; m.n_arrows()];
    let mut out = Vec::new();
    for a in 0..m.n_arrows() {
        for p in 0..2u8 {
            if seen[a][p as usize] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut s = (a, p);
            while !seen[s.0][s.1 as usize] {
                seen[s.0][s.1 as usize] = true;
                orbit.push(s);
                s = successor(m, s);
            }
            out.push(ZigzagCycle { states: rotate_min(&orbit) });
        }
    }
    out.sort();
    out
}

/// For every state, the index of the zigzag cycle containing it and its position there.
pub fn cycle_index(cycles: &[ZigzagCycle]) -> BTreeMap<ZState, (usize, usize)> {
    let mut idx = BTreeMap::new();
    for (c, z) in cycles.iter().enumerate() {
        for (i, s) in z.states.iter().enumerate() {
            idx.insert(*s, (c, i));
        }
    }
    idx
}
