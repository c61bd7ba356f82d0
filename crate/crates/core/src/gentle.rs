//! The gentle category of a rectified dimer.
//!
//! Objects are the vertices of the rectified dimer. A path is zero as soon as
//! it contains two consecutive arrows of a positive face, so the nonzero paths
//! are exactly the arcs of negative faces, possibly winding several times.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rectify::RectifiedDimer;

/// A basis path: a trivial path at a vertex, or an arc of a negative face.
/// The arc traverses `cycle[start], cycle[start + 1], …` (indices mod the
/// cycle length) and has `len ≥ 1` arrows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpiralPath {
    Trivial(usize),
    Arc { cycle: usize, start: usize, len: usize },
}

pub type GentleMorphism = LinComb<SpiralPath>;

#[derive(Clone, Debug)]
pub struct GentleCategory {
    pub rect: RectifiedDimer,
    /// Degree of the first `k` arrows of each negative cycle.
    prefix_degree: Vec<Vec<u8>>,
    /// Per arrow, `Σ (|x| + 1)` over the arrows of its positive cycle from
    /// the cycle's first entry (exclusive) up to the arrow (inclusive).
    phase: Vec<u8>,
}

impl GentleCategory {
    pub fn new(rect: RectifiedDimer) -> Self {
        let prefix_degree = rect
            .dimer
            .neg
            .iter()
            .map(|c| {
                let mut acc = 0u8;
                let mut v = alloc::vec![0u8];
                for &a in c {
                    acc ^= rect.degree[a];
                    v.push(acc);
                }
                v
            })
            .collect();
        let mut phase = alloc::vec![0u8; rect.dimer.n_arrows()];
        for c in &rect.dimer.pos {
            let mut acc = 0u8;
            for &a in &c[1..] {
                acc ^= rect.degree[a] ^ 1;
                phase[a] = acc;
            }
        }
        GentleCategory { rect, prefix_degree, phase }
    }

    /// Sign correction of a collapse starting at arrow `a`; identically zero
    /// when every positive-cycle arrow has odd degree.
    pub fn phase(&self, a: usize) -> u8 {
        self.phase[a]
    }

    pub fn n_objects(&self) -> usize {
        self.rect.dimer.n_vertices()
    }

    pub fn cycle_len(&self, c: usize) -> usize {
        self.rect.dimer.neg[c].len()
    }

    pub fn n_cycles(&self) -> usize {
        self.rect.dimer.neg.len()
    }

    /// The `k`-th arrow of a negative cycle, `k` taken mod its length.
    pub fn cycle_arrow(&self, c: usize, k: usize) -> usize {
        let cyc = &self.rect.dimer.neg[c];
        cyc[k % cyc.len()]
    }

    pub fn arrow(&self, a: usize) -> SpiralPath {
        let (cycle, start) = self.rect.dimer.neg_loc(a);
        SpiralPath::Arc { cycle, start, len: 1 }
    }

    /// The two negative cycles through each vertex, as `(cycle, offset)` of
    /// the arrows leaving it.
    pub fn cycles_at(&self, v: usize) -> Vec<(usize, usize)> {
        let d = &self.rect.dimer;
        (0..d.n_arrows()).filter(|&a| d.tail(a) == v).map(|a| d.neg_loc(a)).collect()
    }

    pub fn source(&self, p: &SpiralPath) -> usize {
        match *p {
            SpiralPath::Trivial(v) => v,
            SpiralPath::Arc { cycle, start, .. } => self.rect.dimer.tail(self.cycle_arrow(cycle, start)),
        }
    }

    pub fn target(&self, p: &SpiralPath) -> usize {
        match *p {
            SpiralPath::Trivial(v) => v,
            SpiralPath::Arc { cycle, start, len } => self.rect.dimer.head(self.cycle_arrow(cycle, start + len - 1)),
        }
    }

    pub fn len(&self, p: &SpiralPath) -> usize {
        match *p {
            SpiralPath::Trivial(_) => 0,
            SpiralPath::Arc { len, .. } => len,
        }
    }

    /// Number of turns started around the cycle: `⌈len / cycle length⌉`.
    pub fn winding(&self, p: &SpiralPath) -> usize {
        match *p {
            SpiralPath::Trivial(_) => 0,
            SpiralPath::Arc { cycle, len, .. } => len.div_ceil(self.cycle_len(cycle)),
        }
    }

    pub fn degree(&self, p: &SpiralPath) -> u8 {
        match *p {
            SpiralPath::Trivial(_) => 0,
            SpiralPath::Arc { cycle, start, len } => {
                let l = self.cycle_len(cycle);
                let pre = &self.prefix_degree[cycle];
                let full = pre[l] * ((len / l) % 2) as u8;
                let (s, r) = (start % l, len % l);
                let part = if s + r <= l { pre[s + r] ^ pre[s] } else { pre[l] ^ pre[s] ^ pre[s + r - l] };
                (full ^ part) & 1
            }
        }
    }

    pub fn is_bare_arrow(&self, p: &SpiralPath) -> Option<usize> {
        match *p {
            SpiralPath::Arc { cycle, start, len: 1 } => Some(self.cycle_arrow(cycle, start)),
            _ => None,
        }
    }

    /// The first traversed arrow and the remaining path.
    pub fn split_first(&self, p: &SpiralPath) -> Option<(usize, SpiralPath)> {
        let SpiralPath::Arc { cycle, start, len } = *p else { return None };
        let a = self.cycle_arrow(cycle, start);
        let rest = if len == 1 {
            SpiralPath::Trivial(self.rect.dimer.head(a))
        } else {
            SpiralPath::Arc { cycle, start: (start + 1) % self.cycle_len(cycle), len: len - 1 }
        };
        Some((a, rest))
    }

    /// The last traversed arrow and the path before it.
    pub fn split_last(&self, p: &SpiralPath) -> Option<(usize, SpiralPath)> {
        let SpiralPath::Arc { cycle, start, len } = *p else { return None };
        let a = self.cycle_arrow(cycle, start + len - 1);
        let rest = if len == 1 { SpiralPath::Trivial(self.rect.dimer.tail(a)) } else { SpiralPath::Arc { cycle, start, len: len - 1 } };
        Some((a, rest))
    }

    /// `f ∘ g` on basis paths, `g` traversed first. `None` when the product
    /// vanishes; an error when the endpoints do not match.
    pub fn compose_paths(&self, f: &SpiralPath, g: &SpiralPath) -> Result<Option<SpiralPath>> {
        if self.target(g) != self.source(f) {
            return Err(Error::NotComposable);
        }
        Ok(match (*f, *g) {
            (SpiralPath::Trivial(_), _) => Some(*g),
            (_, SpiralPath::Trivial(_)) => Some(*f),
            (SpiralPath::Arc { cycle: cf, start: sf, len: lf }, SpiralPath::Arc { cycle: cg, start: sg, len: lg }) => {
                (cf == cg && (sg + lg) % self.cycle_len(cg) == sf).then_some(SpiralPath::Arc { cycle: cg, start: sg, len: lg + lf })
            }
        })
    }

    pub fn compose(&self, f: &GentleMorphism, g: &GentleMorphism) -> Result<GentleMorphism> {
        let mut out = GentleMorphism::zero();
        for (pf, cf) in f.iter() {
            for (pg, cg) in g.iter() {
                if let Some(p) = self.compose_paths(pf, pg)? {
                    out.add_term(cf * cg, p);
                }
            }
        }
        Ok(out)
    }

    /// Basis of the paths from `x` to `y` winding at most `w` times.
    pub fn hom_basis(&self, x: usize, y: usize, w: usize) -> Vec<SpiralPath> {
        let mut out = Vec::new();
        if x == y {
            out.push(SpiralPath::Trivial(x));
        }
        let d = &self.rect.dimer;
        for a in (0..d.n_arrows()).filter(|&a| d.tail(a) == x) {
            let (cycle, start) = d.neg_loc(a);
            let l = self.cycle_len(cycle);
            for len in 1..=w * l {
                let p = SpiralPath::Arc { cycle, start, len };
                if self.target(&p) == y {
                    out.push(p);
                }
            }
        }
        out.sort();
        out
    }

    /// Every basis path winding at most `w` times.
    pub fn all_paths(&self, w: usize) -> Vec<SpiralPath> {
        let mut out: Vec<SpiralPath> = (0..self.n_objects()).map(SpiralPath::Trivial).collect();
        for c in 0..self.n_cycles() {
            let l = self.cycle_len(c);
            for start in 0..l {
                for len in 1..=w * l {
                    out.push(SpiralPath::Arc { cycle: c, start, len });
                }
            }
        }
        out
    }

    pub fn path_name(&self, p: &SpiralPath) -> alloc::string::String {
        use alloc::string::ToString;
        match *p {
            SpiralPath::Trivial(v) => alloc::format!("e{}", self.rect.dimer.vertices[v]),
            SpiralPath::Arc { cycle, start, len } => {
                let names: Vec<&str> = (0..len).rev().map(|k| self.rect.dimer.name(self.cycle_arrow(cycle, start + k))).collect();
                names.join("·").to_string()
            }
        }
    }
}
