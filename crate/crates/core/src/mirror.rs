//! The mirror dimer: vertices are zigzag cycles.

use alloc::format;
use alloc::vec::Vec;

use crate::quiver::{Arrow, DimerModel};
use crate::zigzag::{cycle_index, zigzag_cycles};

/// Heads come from zig orbits, tails from zag orbits; negative faces are reversed.
/// Vertices are named `Z0, Z1, …` in canonical cycle order.
pub fn mirror_dimer(m: &DimerModel) -> DimerModel {
    let cycles = zigzag_cycles(m);
    let idx = cycle_index(&cycles);
    let vertices = (0..cycles.len()).map(|i| format!("Z{i}")).collect();
    let arrows = m
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| Arrow { name: arr.name.clone(), head: idx[&(a, 0)].0, tail: idx[&(a, 1)].0 })
        .collect();
    let neg: Vec<Vec<usize>> = m.neg.iter().map(|f| f.iter().rev().copied().collect()).collect();
    DimerModel::new(vertices, arrows, m.pos.clone(), neg).expect("the mirror of a dimer is a dimer")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c3_mirror_is_a_sphere() {
        let c3 = DimerModel::from_names(&["1"], &[("x", "1", "1"), ("y", "1", "1"), ("z", "1", "1")], &["x y z"], &["x z y"]).unwrap();
        let mm = mirror_dimer(&c3);
        assert_eq!(mm.n_vertices(), 3);
        assert_eq!(mm.genus(), 0);
        assert!(mirror_dimer(&mm).same_up_to_vertex_names(&c3));
    }
}
