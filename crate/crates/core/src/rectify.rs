//! Rectification: a quiver that splits its surface becomes a graded dimer on
//! the arrow midpoints.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quiver::{Arrow, DimerModel, EmbeddedQuiver, Entry};

/// A dimer with a Z₂-degree on each arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectifiedDimer {
    pub dimer: DimerModel,
    pub degree: Vec<u8>,
}

impl RectifiedDimer {
    /// Checks the two structural invariants: two arrows in and out at every
    /// vertex, and even degree on every negative face.
    pub fn check(&self) -> Result<()> {
        let d = &self.dimer;
        let mut inn = vec![0usize; d.n_vertices()];
        let mut out = vec![0usize; d.n_vertices()];
        for a in &d.arrows {
            out[a.tail] += 1;
            inn[a.head] += 1;
        }
        if inn.iter().chain(&out).any(|&k| k != 2) {
            return Err(Error::Invalid("a rectified vertex must have two incoming and two outgoing arrows"));
        }
        if d.neg.iter().any(|f| f.iter().map(|&a| self.degree[a] as usize).sum::<usize>() % 2 != 0) {
            return Err(Error::Invalid("a negative face has odd degree"));
        }
        Ok(())
    }

    pub fn degree_of(&self, a: usize) -> u8 {
        self.degree[a]
    }
}

fn entry_name(q: &EmbeddedQuiver, e: Entry) -> String {
    let n = &q.arrows[e.arrow].name;
    if e.inverse { format!("{n}'") } else { n.clone() }
}

/// Rectify an embedded quiver. For consecutive entries `x, y` of a boundary
/// cycle the rectified arrow runs from the midpoint of `y` to that of `x`, and
/// has degree 1 exactly when `x` and `y` are traversed in the same direction.
pub fn rectify(q: &EmbeddedQuiver) -> Result<RectifiedDimer> {
    let vertices: Vec<String> = q.arrows.iter().map(|a| a.name.clone()).collect();
    let mut arrows = Vec::new();
    let mut degree = Vec::new();
    let mut pos = Vec::new();
    for c in &q.cycles {
        let l = c.len();
        let first = arrows.len();
        for k in 0..l {
            let (x, y) = (c[k], c[(k + 1) % l]);
            arrows.push(Arrow {
                name: format!("{}.{}", entry_name(q, y), entry_name(q, x)),
                tail: y.arrow,
                head: x.arrow,
            });
            degree.push(u8::from(x.inverse == y.inverse));
        }
        pos.push((0..l).rev().map(|k| first + k).collect::<Vec<_>>());
    }
    let n = arrows.len();
    let mut pos_next = vec![0usize; n];
    for f in &pos {
        for k in 0..f.len() {
            pos_next[f[k]] = f[(k + 1) % f.len()];
        }
    }
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (i, a) in arrows.iter().enumerate() {
        outgoing[a.tail].push(i);
    }
    if outgoing.iter().any(|o| o.len() != 2) {
        return Err(Error::Invalid("input does not split the surface"));
    }
    let neg_next = |a: usize| -> usize {
        let o = &outgoing[arrows[a].head];
        if o[0] == pos_next[a] { o[1] } else { o[0] }
    };
    let mut seen = vec![false; n];
    let mut neg = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut face = Vec::new();
        let mut a = s;
        while !seen[a] {
            seen[a] = true;
            face.push(a);
            a = neg_next(a);
        }
        neg.push(face);
    }
    let dimer = DimerModel::new(vertices, arrows, pos, neg)?;
    let r = RectifiedDimer { dimer, degree };
    r.check()?;
    Ok(r)
}

/// Rectify a dimer model viewed as an embedded quiver.
pub fn rectify_dimer(m: &DimerModel) -> Result<RectifiedDimer> {
    rectify(&m.to_quiver())
}
