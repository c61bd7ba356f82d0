//! Structure constants of the minimal model of matrix factorizations against
//! `µ̵` on the gentle category of the rectified mirror.
//!
//! Vertices of the rectified mirror are the arrows of the dimer, and its
//! negative cycles are the zigzag cycles. An arc through the midpoints
//! `m₀, m₁, …, m_u` corresponds to the segment `(m_u, …, m₀)`.
//!
//! Both sides are strictly unital, so trivial paths are only fed to `µ₂`.
//! Tuples whose output sector holds no `ζ` are known to vanish on the
//! matrix factorization side without running the transfer; the gentle side is
//! still evaluated on them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use super::{Mf, SectorKey, ZigSegment};
use crate::error::{Error, Result};
use crate::gentle::{GentleCategory, SpiralPath};
use crate::jacobi::{Class, Jacobi};
use crate::lincomb::LinComb;
use crate::mirror::mirror_dimer;
use crate::mukappa::KappaMap;
use crate::quiver::DimerModel;
use crate::rectify::rectify_dimer;
use crate::toric::PerfectMatching;
use crate::verify::{composable_tuples, AInfinity, GentleAInf};
use crate::zigzag::orbit_len;
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_arity: usize,
    pub winding: usize,
    pub class_radius: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_arity: 5, winding: 1, class_radius: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorDim {
    pub class: Class,
    pub g: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub a: usize,
    pub b: usize,
    pub segments: usize,
    pub dims: Vec<SectorDim>,
    pub sectors_exhausted: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub tuple: Vec<SpiralPath>,
    pub gentle: LinComb<ZigSegment>,
    pub mf: LinComb<ZigSegment>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductReport {
    /// Composable tuples examined.
    pub checked: usize,
    /// Tuples on which the transfer was run.
    pub transferred: usize,
    /// Tuples with a nonzero product.
    pub nonzero: usize,
    /// Nonzero tuples by arity, starting at arity 2.
    pub nonzero_by_arity: Vec<usize>,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorReport {
    pub bounds: Bounds,
    pub pairs: Vec<PairReport>,
    pub products: ProductReport,
    /// Scale per arrow of the rectified mirror, when one was found.
    pub rescaling: Option<Vec<Q>>,
}

impl MirrorReport {
    pub fn ok(&self) -> bool {
        self.pairs.iter().all(|p| p.ok) && self.products.mismatches.is_empty() && self.rescaling.is_some()
    }
}

/// The segment of a gentle basis path.
pub fn path_to_segment(m: &DimerModel, g: &GentleCategory, p: &SpiralPath) -> Result<ZigSegment> {
    let d = &g.rect.dimer;
    let mut mids = vec![g.source(p)];
    if let SpiralPath::Arc { cycle, start, len } = *p {
        mids.extend((0..len).map(|k| d.head(g.cycle_arrow(cycle, start + k))));
    }
    mids.reverse();
    if mids.len() == 1 {
        return Ok(ZigSegment::identity(mids[0]));
    }
    for parity in [0, 1] {
        let z = ZigSegment::new(m, mids[0], parity, mids.len());
        if z.arrows == mids {
            return Ok(z);
        }
    }
    Err(Error::Invalid("a mirror arc is not a zigzag run"))
}

fn map_comb(m: &DimerModel, g: &GentleCategory, x: &LinComb<SpiralPath>) -> Result<LinComb<ZigSegment>> {
    let mut out = LinComb::zero();
    for (p, c) in x.iter() {
        out.add_term(c.clone(), path_to_segment(m, g, p)?);
    }
    Ok(out)
}

/// Checks that paths winding at most `w` times correspond one to one to the
/// segments of length at most `w` zigzag periods plus one, with equal degrees.
pub fn check_bijection(m: &DimerModel, g: &GentleCategory, w: usize) -> Result<BTreeMap<SpiralPath, ZigSegment>> {
    let d = &g.rect.dimer;
    if d.n_vertices() != m.n_arrows() || (0..m.n_arrows()).any(|a| d.vertices[a] != m.name(a)) {
        return Err(Error::Invalid("rectified mirror vertices do not match the arrows"));
    }
    let mut map = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for p in g.all_paths(w) {
        let z = path_to_segment(m, g, &p)?;
        if g.degree(&p) != z.degree() {
            return Err(Error::Invalid("degree differs across the mirror"));
        }
        if !seen.insert(z.clone()) {
            return Err(Error::Invalid("two mirror paths give one segment"));
        }
        map.insert(p, z);
    }
    for a in 0..m.n_arrows() {
        for parity in [0, 1] {
            for len in 2..=w * orbit_len(m, (a, parity)) + 1 {
                if !seen.contains(&ZigSegment::new(m, a, parity, len)) {
                    return Err(Error::Invalid("a segment has no mirror path"));
                }
            }
        }
    }
    Ok(map)
}

fn output_sector(keys: &[SectorKey]) -> SectorKey {
    let k = keys.len() as i64;
    let mut class = [0, 0];
    let mut g = 2 - k;
    for key in keys {
        class[0] += key.class[0];
        class[1] += key.class[1];
        g += key.g;
    }
    SectorKey { src: keys[keys.len() - 1].src, tgt: keys[0].tgt, class, g }
}

/// Compares hom spaces and all products up to `bounds`.
pub fn compare_with_mirror(m: &DimerModel, bounds: Bounds) -> Result<MirrorReport> {
    compare_with_mirror_at(m, bounds, None)
}

/// As [`compare_with_mirror`], with an explicit reference matching.
pub fn compare_with_mirror_at(m: &DimerModel, bounds: Bounds, p0: Option<PerfectMatching>) -> Result<MirrorReport> {
    let mf = Mf::new(Jacobi::new(m, p0)?)?;
    let g = GentleCategory::new(rectify_dimer(&mirror_dimer(m))?);
    let kappa = KappaMap::mu_bar(&g);
    let gentle = GentleAInf::new(&g, &kappa);
    let map = check_bijection(m, &g, bounds.winding)?;

    let mut pairs = Vec::new();
    for a in 0..m.n_arrows() {
        for b in 0..m.n_arrows() {
            let r = mf.hom_homology(b, a, bounds.class_radius, None);
            pairs.push(PairReport {
                a,
                b,
                segments: r.segments,
                dims: r.sectors.iter().map(|s| SectorDim { class: s.key.class, g: s.key.g, dim: s.dim }).collect(),
                sectors_exhausted: r.exhausted.len(),
                ok: r.ok(),
            });
        }
    }

    let keys: BTreeMap<SpiralPath, SectorKey> =
        map.iter().map(|(p, z)| Ok((*p, mf.segment_sector(z)?))).collect::<Result<_>>()?;
    let reach = keys.values().map(|k| k.class[0].abs().max(k.class[1].abs())).max().unwrap_or(0) * bounds.max_arity as i64;
    let mut occupied = BTreeSet::new();
    for a in 0..m.n_arrows() {
        occupied.extend(mf.segments_from(a, reach)?.into_iter().map(|(_, k)| k));
    }

    let all: Vec<SpiralPath> = map.keys().copied().collect();
    let arcs: Vec<SpiralPath> = all.iter().copied().filter(|p| matches!(p, SpiralPath::Arc { .. })).collect();
    let mut products = ProductReport { nonzero_by_arity: vec![0; bounds.max_arity.saturating_sub(1)], ..Default::default() };
    for k in 2..=bounds.max_arity {
        let basis = if k == 2 { &all } else { &arcs };
        for t in composable_tuples(&gentle, basis, k) {
            products.checked += 1;
            let lhs = map_comb(m, &g, &gentle.mu(&t))?;
            let ks: Vec<SectorKey> = t.iter().map(|p| keys[p]).collect();
            let rhs = if occupied.contains(&output_sector(&ks)) {
                products.transferred += 1;
                let segs: Vec<ZigSegment> = t.iter().map(|p| map[p].clone()).collect();
                mf.products(&segs)?
            } else {
                LinComb::zero()
            };
            if !lhs.is_zero() || !rhs.is_zero() {
                products.nonzero += 1;
                products.nonzero_by_arity[k - 2] += 1;
            }
            if lhs != rhs {
                products.mismatches.push(Mismatch { tuple: t, gentle: lhs, mf: rhs });
            }
        }
    }
    let rescaling = products.mismatches.is_empty().then(|| vec![Q::one(); g.rect.dimer.n_arrows()]);
    Ok(MirrorReport { bounds, pairs, products, rescaling })
}
