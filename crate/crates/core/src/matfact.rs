//! Matrix factorizations of `(Jac Q, ℓ)` attached to arrows, and the
//! homological algebra of their hom complexes.
//!
//! The object of an arrow `a` has slot 0 at `h(a)` and slot 1 at `t(a)`, with
//! `p₀ = a` from slot 1 to slot 0 and `p₁ = ā` back. A morphism from the object
//! of `b` to that of `a` is a 2×2 matrix whose `(i, j)` entry is a path from
//! slot `j` of `b` to slot `i` of `a`; composition is matrix multiplication.
//!
//! Hom complexes split into finite sectors by the relative lift `κ` of the two
//! objects in the universal cover and the grading `G = 2·deg − s(i) + s(j)`,
//! where `s` vanishes on slot 0 and is `1 − 2P₀(a)` on slot 1. The
//! differential raises `G` by one; `ℓ` raises it by two.

pub mod compare;

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::{Cell, RefCell};

use crate::error::{Error, Result};
use crate::jacobi::{bar, neg_bar, Class, JacComb, JacElement, Jacobi};
use crate::lincomb::LinComb;
use crate::linalg::QMatrix;
use crate::quiver::DimerModel;
use crate::transfer::{transfer_recursive, TransferDatum};
use crate::verify::AInfinity;
use crate::zigzag::ray;
use crate::{q, Q};

/// A matrix unit: `e` in entry `(i, j)` of a morphism from `src` to `tgt`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MfUnit {
    pub src: usize,
    pub tgt: usize,
    pub i: u8,
    pub j: u8,
    pub e: JacElement,
}

impl MfUnit {
    pub fn parity(&self) -> u8 {
        u8::from(self.i != self.j)
    }
}

pub type MfElem = LinComb<MfUnit>;

/// A run `a₀, a₁, …, a_u` of a zig ray (`parity` 0) or zag ray (`parity` 1).
/// `ζ` of it is a morphism from the object of `a_u` to that of `a₀`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZigSegment {
    pub arrows: Vec<usize>,
    pub parity: u8,
}

impl ZigSegment {
    pub fn new(m: &DimerModel, a0: usize, parity: u8, len: usize) -> Self {
        ZigSegment { arrows: ray(m, a0, parity, len), parity: if len == 1 { 0 } else { parity } }
    }

    pub fn identity(a: usize) -> Self {
        ZigSegment { arrows: vec![a], parity: 0 }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> usize {
        *self.arrows.last().expect("segments are nonempty")
    }

    pub fn target(&self) -> usize {
        self.arrows[0]
    }

    /// `Z₂-degree`: odd for even length.
    pub fn degree(&self) -> u8 {
        u8::from(self.arrows.len() % 2 == 0)
    }

    /// `Z₂ a⁻¹ Z₁` for `self = Z₁` ending and `other = Z₂` starting at `a`, if
    /// it is again a run of one ray.
    pub fn concat(&self, m: &DimerModel, other: &ZigSegment) -> Option<ZigSegment> {
        if self.source() != other.target() {
            return None;
        }
        let len = self.len() + other.len() - 1;
        for parity in [0, 1] {
            let z = ZigSegment::new(m, self.target(), parity, len);
            if z.arrows[..self.len()] == self.arrows[..] && z.arrows[self.len() - 1..] == other.arrows[..] {
                if self.len() > 1 && z.parity != self.parity {
                    continue;
                }
                return Some(z);
            }
        }
        None
    }
}

/// Key of a sector of `Hom(src → tgt)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SectorKey {
    pub src: usize,
    pub tgt: usize,
    pub class: Class,
    pub g: i64,
}

#[derive(Clone, Debug)]
struct Sector {
    units: Vec<MfUnit>,
    /// Indices of the units spanning the complement `U` of the kernel.
    u: Vec<usize>,
    zetas: Vec<(ZigSegment, MfElem)>,
}

/// The decomposition `C_G = U_G ⊕ M_G ⊕ d(U_{G−1})` of one sector.
#[derive(Clone, Debug)]
struct Split {
    /// Columns: `U_G` units, then `ζ`s, then `d(U_{G−1})`.
    inverse: QMatrix,
    n_u: usize,
    zetas: Vec<ZigSegment>,
    below: Vec<MfUnit>,
}

/// The dg-category of arrow matrix factorizations.
pub struct Mf {
    pub jac: Jacobi,
    bars: Vec<JacElement>,
    mins: RefCell<BTreeMap<(usize, usize, Class), Option<JacElement>>>,
    sectors: RefCell<BTreeMap<SectorKey, Rc<Sector>>>,
    splits: RefCell<BTreeMap<SectorKey, Rc<Split>>>,
    rays: RefCell<BTreeMap<usize, (i64, Vec<(ZigSegment, SectorKey)>)>>,
}

fn inside(c: Class, r: i64) -> bool {
    c[0].abs() <= r && c[1].abs() <= r
}

const SLOTS: [(u8, u8); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

impl Mf {
    pub fn new(jac: Jacobi) -> Result<Self> {
        let bars = (0..jac.m.n_arrows()).map(|a| jac.normal_form(&bar(&jac.m, a))).collect::<Result<_>>()?;
        Ok(Mf { jac, bars, mins: RefCell::default(), sectors: RefCell::default(), splits: RefCell::default(), rays: RefCell::default() })
    }

    pub fn m(&self) -> &DimerModel {
        &self.jac.m
    }

    pub fn slot_vertex(&self, a: usize, i: u8) -> usize {
        if i == 0 { self.m().head(a) } else { self.m().tail(a) }
    }

    fn s(&self, a: usize, i: u8) -> i64 {
        if i == 0 { 0 } else { 1 - 2 * i64::from(self.jac.p0.contains(a)) }
    }

    fn off(&self, a: usize, i: u8) -> Class {
        if i == 0 { self.jac.arrow_class[a] } else { [0, 0] }
    }

    pub fn sector_of(&self, u: &MfUnit) -> SectorKey {
        let (ot, os) = (self.off(u.tgt, u.i), self.off(u.src, u.j));
        SectorKey {
            src: u.src,
            tgt: u.tgt,
            class: [u.e.class[0] - ot[0] + os[0], u.e.class[1] - ot[1] + os[1]],
            g: 2 * u.e.deg - self.s(u.tgt, u.i) + self.s(u.src, u.j),
        }
    }

    /// `ā` as a normal form.
    pub fn bar(&self, a: usize) -> &JacElement {
        &self.bars[a]
    }

    /// `p₀` or `p₁` of the object of `a`, as the entry `(1 − i, i)`.
    fn structure_map(&self, a: usize, from_slot: u8) -> JacElement {
        if from_slot == 1 { self.jac.arrow(a) } else { self.bars[a].clone() }
    }

    pub fn identity(&self, a: usize) -> MfElem {
        let mut x = MfElem::zero();
        for i in [0, 1] {
            let v = self.slot_vertex(a, i);
            x.add_term(q(1), MfUnit { src: a, tgt: a, i, j: i, e: self.jac.trivial(v) });
        }
        x
    }

    fn d_unit(&self, u: &MfUnit) -> MfElem {
        let mut out = MfElem::zero();
        let left = self.structure_map(u.tgt, u.i);
        let e = self.jac.multiply(&left, &u.e).expect("slots match");
        out.add_term(q(1), MfUnit { i: 1 - u.i, e, ..u.clone() });
        let right = self.structure_map(u.src, 1 - u.j);
        let e = self.jac.multiply(&u.e, &right).expect("slots match");
        let sign = if u.i == u.j { -1 } else { 1 };
        out.add_term(q(sign), MfUnit { j: 1 - u.j, e, ..u.clone() });
        out
    }

    /// `d(f) = D·f − f̃·D`, with `f̃` negating the off-diagonal entries.
    pub fn d(&self, x: &MfElem) -> MfElem {
        x.map_basis(|u| self.d_unit(u))
    }

    /// Composition `x ∘ y`; pairs of units with mismatched objects or slots
    /// contribute zero.
    pub fn compose(&self, x: &MfElem, y: &MfElem) -> MfElem {
        let mut out = MfElem::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                if a.src != b.tgt || a.j != b.i {
                    continue;
                }
                let e = self.jac.multiply(&a.e, &b.e).expect("slots match");
                out.add_term(ca * cb, MfUnit { src: b.src, tgt: a.tgt, i: a.i, j: b.j, e });
            }
        }
        out
    }

    /// The four entries as combinations of normal forms.
    pub fn entries(x: &MfElem) -> [[JacComb; 2]; 2] {
        let mut out: [[JacComb; 2]; 2] = Default::default();
        for (u, c) in x.iter() {
            out[u.i as usize][u.j as usize].add_term(c.clone(), u.e.clone());
        }
        out
    }

    fn minimal(&self, tail: usize, head: usize, class: Class) -> Result<Option<JacElement>> {
        if let Some(hit) = self.mins.borrow().get(&(tail, head, class)) {
            return hit.clone().map(Some).ok_or(Error::Exhausted("class radius"));
        }
        let r = self.jac.minimal(tail, head, class);
        let stored = r.as_ref().ok().cloned();
        self.mins.borrow_mut().insert((tail, head, class), stored);
        r.map(Some)
    }

    /// The matrix units of a sector, in entry order.
    pub fn units(&self, k: SectorKey) -> Result<Vec<MfUnit>> {
        let mut out = Vec::new();
        for (i, j) in SLOTS {
            let twice = k.g + self.s(k.tgt, i) - self.s(k.src, j);
            if twice.rem_euclid(2) != 0 {
                continue;
            }
            let (ot, os) = (self.off(k.tgt, i), self.off(k.src, j));
            let class = [k.class[0] + ot[0] - os[0], k.class[1] + ot[1] - os[1]];
            let (tail, head) = (self.slot_vertex(k.src, j), self.slot_vertex(k.tgt, i));
            let Some(min) = self.minimal(tail, head, class)? else { continue };
            let deg = twice / 2;
            if deg < min.deg {
                continue;
            }
            let mut e = min;
            while e.deg < deg {
                e = self.jac.ell_power(&e, 1);
            }
            out.push(MfUnit { src: k.src, tgt: k.tgt, i, j, e });
        }
        Ok(out)
    }

    fn coords(units: &[MfUnit], x: &MfElem) -> Result<Vec<Q>> {
        let mut v = vec![q(0); units.len()];
        for (u, c) in x.iter() {
            let k = units.iter().position(|w| w == u).ok_or(Error::Invalid("element leaves its sector"))?;
            v[k] = c.clone();
        }
        Ok(v)
    }

    /// Matrix of `d` from sector `k` to sector `k.g + 1`.
    fn d_matrix(&self, units: &[MfUnit], k: SectorKey) -> Result<(QMatrix, Vec<MfUnit>)> {
        let up = self.units(SectorKey { g: k.g + 1, ..k })?;
        let cols = units.iter().map(|u| Self::coords(&up, &self.d_unit(u))).collect::<Result<Vec<_>>>()?;
        Ok((QMatrix::from_columns(&cols, up.len()), up))
    }

    /// Every segment out of `tgt` whose sector class lies within `radius`,
    /// with its sector. A ray is followed until it provably leaves the box:
    /// after `n` zigzag periods its class is `n` times a nonzero vector plus a
    /// bounded offset.
    pub fn segments_from(&self, tgt: usize, radius: i64) -> Result<Vec<(ZigSegment, SectorKey)>> {
        if let Some((r, list)) = self.rays.borrow().get(&tgt) {
            if *r >= radius {
                return Ok(list.iter().filter(|(_, k)| inside(k.class, radius)).cloned().collect());
            }
        }
        let mut list: Vec<(ZigSegment, SectorKey)> = Vec::new();
        for parity in [0, 1] {
            let period = crate::zigzag::orbit_len(self.m(), (tgt, parity));
            let mut offset = 0;
            let mut len = 1;
            loop {
                let z = ZigSegment::new(self.m(), tgt, parity, len);
                let k = self.segment_sector(&z)?;
                let size = k.class[0].abs().max(k.class[1].abs());
                if len <= period {
                    offset = offset.max(size);
                }
                if !list.iter().any(|(w, _)| *w == z) {
                    list.push((z, k));
                }
                if len > period * (radius + offset + 2) as usize {
                    break;
                }
                len += 1;
            }
        }
        self.rays.borrow_mut().insert(tgt, (radius, list.clone()));
        Ok(list.into_iter().filter(|(_, k)| inside(k.class, radius)).collect())
    }

    /// Segments with their `ζ`s lying in sector `k`.
    fn zetas_in(&self, k: SectorKey) -> Result<Vec<(ZigSegment, MfElem)>> {
        let r = k.class[0].abs().max(k.class[1].abs());
        let mut out = Vec::new();
        for (z, key) in self.segments_from(k.tgt, r)? {
            if key == k {
                let x = self.zeta(&z)?;
                out.push((z, x));
            }
        }
        Ok(out)
    }

    fn sector(&self, k: SectorKey) -> Result<Rc<Sector>> {
        if let Some(s) = self.sectors.borrow().get(&k) {
            return Ok(s.clone());
        }
        let units = self.units(k)?;
        let (dm, _) = self.d_matrix(&units, k)?;
        let mut u = Vec::new();
        let mut picked: Vec<Vec<Q>> = Vec::new();
        for c in 0..units.len() {
            let col: Vec<Q> = (0..dm.rows).map(|r| dm.data[r][c].clone()).collect();
            picked.push(col);
            if crate::linalg::rank_of(&picked, dm.rows) == picked.len() {
                u.push(c);
            } else {
                picked.pop();
            }
        }
        let s = Rc::new(Sector { units, u, zetas: self.zetas_in(k)? });
        self.sectors.borrow_mut().insert(k, s.clone());
        Ok(s)
    }

    fn split(&self, k: SectorKey) -> Result<Rc<Split>> {
        if let Some(s) = self.splits.borrow().get(&k) {
            return Ok(s.clone());
        }
        let here = self.sector(k)?;
        let below = self.sector(SectorKey { g: k.g - 1, ..k })?;
        let n = here.units.len();
        let mut cols: Vec<Vec<Q>> = Vec::new();
        for &c in &here.u {
            let mut v = vec![q(0); n];
            v[c] = q(1);
            cols.push(v);
        }
        for (_, x) in &here.zetas {
            cols.push(Self::coords(&here.units, x)?);
        }
        let below_units: Vec<MfUnit> = below.u.iter().map(|&c| below.units[c].clone()).collect();
        for u in &below_units {
            cols.push(Self::coords(&here.units, &self.d_unit(u))?);
        }
        if cols.len() != n {
            return Err(Error::Invalid("homology of a sector is not spanned by its ζ"));
        }
        let m = QMatrix::from_columns(&cols, n);
        let mut aug = QMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r][c] = m.data[r][c].clone();
            }
            aug.data[r][n + r] = q(1);
        }
        let pivots = aug.rref();
        if pivots.iter().take_while(|&&p| p < n).count() != n {
            return Err(Error::Invalid("homology of a sector is not spanned by its ζ"));
        }
        let mut inverse = QMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inverse.data[r][c] = aug.data[r][n + c].clone();
            }
        }
        let s = Rc::new(Split { inverse, n_u: here.u.len(), zetas: here.zetas.iter().map(|(z, _)| z.clone()).collect(), below: below_units });
        self.splits.borrow_mut().insert(k, s.clone());
        Ok(s)
    }

    fn by_sector(&self, x: &MfElem) -> BTreeMap<SectorKey, MfElem> {
        let mut out: BTreeMap<SectorKey, MfElem> = BTreeMap::new();
        for (u, c) in x.iter() {
            out.entry(self.sector_of(u)).or_insert_with(MfElem::zero).add_term(c.clone(), u.clone());
        }
        out
    }

    fn decompose(&self, k: SectorKey, x: &MfElem) -> Result<(Rc<Split>, Vec<Q>)> {
        let s = self.split(k)?;
        let units = self.sector(k)?.units.clone();
        let v = Self::coords(&units, x)?;
        Ok((s.clone(), s.inverse.apply(&v)))
    }

    /// The codifferential: zero on `U` and on `ζ`s, inverse to `d` on `d(U)`.
    pub fn h(&self, x: &MfElem) -> Result<MfElem> {
        let mut out = MfElem::zero();
        for (k, part) in self.by_sector(x) {
            let (s, c) = self.decompose(k, &part)?;
            let off = s.n_u + s.zetas.len();
            for (u, coef) in s.below.iter().zip(&c[off..]) {
                out.add_term(coef.clone(), u.clone());
            }
        }
        Ok(out)
    }

    /// Projection onto the span of the `ζ`s, in the segment basis.
    pub fn pi(&self, x: &MfElem) -> Result<LinComb<ZigSegment>> {
        let mut out = LinComb::zero();
        for (k, part) in self.by_sector(x) {
            let (s, c) = self.decompose(k, &part)?;
            for (z, coef) in s.zetas.iter().zip(&c[s.n_u..]) {
                out.add_term(coef.clone(), z.clone());
            }
        }
        Ok(out)
    }

    /// Left or right opposite path chain: the rests of the faces of the
    /// consecutive pairs `(a_j, a_{j+1})` with `j ≡ side`, from the far end
    /// back to the start.
    fn opposite(&self, z: &ZigSegment, side: usize) -> Result<JacElement> {
        let m = self.m();
        let a = &z.arrows;
        let start = if side == 0 { m.tail(a[0]) } else { m.head(a[0]) };
        let mut path: Vec<usize> = Vec::new();
        let mut j = side;
        let mut pieces = Vec::new();
        while j + 1 < a.len() {
            let positive = (z.parity as usize + j) % 2 == 0;
            let mut rest = if positive { bar(m, a[j + 1]) } else { neg_bar(m, a[j + 1]) };
            if rest.pop() != Some(a[j]) {
                return Err(Error::Invalid("segment is not a zigzag run"));
            }
            pieces.push(rest);
            j += 2;
        }
        for p in pieces.iter().rev() {
            path.extend_from_slice(p);
        }
        if path.is_empty() {
            return Ok(self.jac.trivial(start));
        }
        self.jac.normal_form(&path)
    }

    /// `ζ(Z)`: diagonal for odd length, off-diagonal with the upper-right
    /// entry negated for even length, scaled by `(−1)^{n(n−1)/2}` with
    /// `n = len − 1` so that `µ₂` is plain concatenation.
    pub fn zeta(&self, z: &ZigSegment) -> Result<MfElem> {
        let (src, tgt) = (z.source(), z.target());
        let even = self.opposite(z, 0)?;
        let odd = self.opposite(z, 1)?;
        let n = z.len() - 1;
        let s = if (n * n.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
        let mut x = MfElem::zero();
        if z.len() % 2 == 1 {
            x.add_term(q(s), MfUnit { src, tgt, i: 0, j: 0, e: odd });
            x.add_term(q(s), MfUnit { src, tgt, i: 1, j: 1, e: even });
        } else {
            x.add_term(q(-s), MfUnit { src, tgt, i: 0, j: 1, e: odd });
            x.add_term(q(s), MfUnit { src, tgt, i: 1, j: 0, e: even });
        }
        Ok(x)
    }

    /// `ι` extended linearly.
    pub fn iota(&self, x: &LinComb<ZigSegment>) -> Result<MfElem> {
        let mut out = MfElem::zero();
        for (z, c) in x.iter() {
            out.add_scaled(c, &self.zeta(z)?);
        }
        Ok(out)
    }

    pub fn segment_sector(&self, z: &ZigSegment) -> Result<SectorKey> {
        let x = self.zeta(z)?;
        let k = self.sector_of(x.iter().next().expect("ζ is nonzero").0);
        Ok(k)
    }

    /// Dimensions of homology per sector of `Hom(src → tgt)` for `|κ| ≤ radius`
    /// and `G ≤ g_max`. Without a bound, `g_max` is two above the highest
    /// grading of a segment out of `tgt` in the window.
    pub fn hom_homology(&self, src: usize, tgt: usize, radius: i64, g_max: Option<i64>) -> HomReport {
        let mut rep = HomReport { src, tgt, sectors: Vec::new(), exhausted: Vec::new(), segments: 0 };
        let g_max = match g_max {
            Some(g) => g,
            None => match self.segments_from(tgt, radius) {
                Ok(list) => list.iter().map(|(_, k)| k.g).max().unwrap_or(0) + 2,
                Err(_) => {
                    rep.exhausted.push([radius, radius]);
                    return rep;
                }
            },
        };
        for cx in -radius..=radius {
            for cy in -radius..=radius {
                let class = [cx, cy];
                let g_min = match self.lowest_grading(src, tgt, class) {
                    Ok(Some(g)) => g,
                    Ok(None) => continue,
                    Err(_) => {
                        rep.exhausted.push(class);
                        continue;
                    }
                };
                for g in g_min..=g_max {
                    let k = SectorKey { src, tgt, class, g };
                    match self.sector_homology(k) {
                        Ok(s) => {
                            if s.dim > 0 || !s.zetas.is_empty() {
                                rep.sectors.push(s);
                            }
                        }
                        Err(_) => rep.exhausted.push(class),
                    }
                }
            }
        }
        match self.segments_from(tgt, radius) {
            Ok(list) => rep.segments = list.iter().filter(|(z, k)| z.source() == src && k.g <= g_max).count(),
            Err(_) => rep.exhausted.push([radius, radius]),
        }
        rep.exhausted.sort();
        rep.exhausted.dedup();
        rep
    }

    fn lowest_grading(&self, src: usize, tgt: usize, class: Class) -> Result<Option<i64>> {
        let mut best: Option<i64> = None;
        for (i, j) in SLOTS {
            let (ot, os) = (self.off(tgt, i), self.off(src, j));
            let c = [class[0] + ot[0] - os[0], class[1] + ot[1] - os[1]];
            if let Some(min) = self.minimal(self.slot_vertex(src, j), self.slot_vertex(tgt, i), c)? {
                let g = 2 * min.deg - self.s(tgt, i) + self.s(src, j);
                best = Some(best.map_or(g, |b: i64| b.min(g)));
            }
        }
        Ok(best)
    }

    /// `ker d / im d` in one sector, by exact ranks.
    pub fn sector_homology(&self, k: SectorKey) -> Result<SectorHomology> {
        let units = self.units(k)?;
        let (dm, _) = self.d_matrix(&units, k)?;
        let below = self.units(SectorKey { g: k.g - 1, ..k })?;
        let (dm_below, _) = self.d_matrix(&below, SectorKey { g: k.g - 1, ..k })?;
        let kernel = units.len() - dm.rank();
        let image = dm_below.rank();
        let zetas = self.zetas_in(k)?;
        let mut closed = true;
        let mut independent = true;
        for (_, x) in &zetas {
            closed &= self.d(x).is_zero();
        }
        if !zetas.is_empty() {
            let mut cols: Vec<Vec<Q>> = (0..dm_below.cols).map(|c| (0..dm_below.rows).map(|r| dm_below.data[r][c].clone()).collect()).collect();
            for (_, x) in &zetas {
                cols.push(Self::coords(&units, x)?);
            }
            independent = crate::linalg::rank_of(&cols, units.len()) == image + zetas.len();
        }
        Ok(SectorHomology {
            key: k,
            units: units.len(),
            kernel,
            image,
            dim: kernel - image,
            zetas: zetas.into_iter().map(|(z, _)| z).collect(),
            zetas_closed: closed,
            zetas_independent: independent,
        })
    }

    /// `x` with `d(x) = 0` (checked) as a homology class in the `ζ` basis.
    pub fn class_of(&self, x: &MfElem) -> Result<LinComb<ZigSegment>> {
        if !self.d(x).is_zero() {
            return Err(Error::Invalid("not a cocycle"));
        }
        self.pi(x)
    }

    /// Residual of the split identities on `x`: `dhd − d`, `h²`, and `h∘ι∘π`.
    pub fn split_defects(&self, x: &MfElem) -> Result<[MfElem; 3]> {
        let dx = self.d(x);
        let mut dhd = self.d(&self.h(&dx)?);
        dhd.add_scaled(&q(-1), &dx);
        let hh = self.h(&self.h(x)?)?;
        let hz = self.h(&self.iota(&self.pi(x)?)?)?;
        Ok([dhd, hh, hz])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorHomology {
    pub key: SectorKey,
    pub units: usize,
    pub kernel: usize,
    pub image: usize,
    pub dim: usize,
    pub zetas: Vec<ZigSegment>,
    pub zetas_closed: bool,
    pub zetas_independent: bool,
}

impl SectorHomology {
    /// Dimension at most one and spanned by the `ζ`s of the sector.
    pub fn ok(&self) -> bool {
        self.dim <= 1 && self.dim == self.zetas.len() && self.zetas_closed && self.zetas_independent
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    pub src: usize,
    pub tgt: usize,
    pub sectors: Vec<SectorHomology>,
    /// Classes where a minimal-degree search ran out of radius.
    pub exhausted: Vec<Class>,
    /// Segments from `tgt` to `src` inside the window.
    pub segments: usize,
}

impl HomReport {
    pub fn total(&self) -> usize {
        self.sectors.iter().map(|s| s.dim).sum()
    }

    pub fn ok(&self) -> bool {
        self.exhausted.is_empty() && self.sectors.iter().all(SectorHomology::ok) && self.total() == self.segments
    }
}

impl TransferDatum for Mf {
    type B = MfUnit;
    type M = ZigSegment;

    fn degree(&self, b: &MfUnit) -> u8 {
        b.parity()
    }

    fn mu(&self, args: &[MfUnit]) -> LinComb<MfUnit> {
        match args {
            [x, y] => self.compose(&LinComb::basis(x.clone()), &LinComb::basis(y.clone())),
            _ => LinComb::zero(),
        }
    }

    fn h(&self, x: &MfElem) -> Result<MfElem> {
        Mf::h(self, x)
    }

    fn iota(&self, z: &ZigSegment) -> Result<MfElem> {
        self.zeta(z)
    }

    fn pi(&self, x: &MfElem) -> Result<LinComb<ZigSegment>> {
        Mf::pi(self, x)
    }
}

impl Mf {
    /// `µ_k` of the minimal model on `ζ(args[0]), …`, by transfer.
    pub fn products(&self, args: &[ZigSegment]) -> Result<LinComb<ZigSegment>> {
        for w in args.windows(2) {
            if w[0].source() != w[1].target() {
                return Err(Error::NotComposable);
            }
        }
        transfer_recursive(self, args, 2)
    }

    /// Closed form of `µ₂`: the concatenation `Z₂ a⁻¹ Z₁`, or zero.
    pub fn mu2_closed(&self, z1: &ZigSegment, z2: &ZigSegment) -> LinComb<ZigSegment> {
        z1.concat(self.m(), z2).map_or_else(LinComb::zero, LinComb::basis)
    }

    /// `(ζ(c₀c₁), ζ(c₁c₂), …)` for `len` consecutive pairs of a face traversed
    /// from position `start`.
    pub fn face_chain(&self, positive: bool, face: usize, start: usize, len: usize) -> Vec<ZigSegment> {
        let f = if positive { &self.m().pos[face] } else { &self.m().neg[face] };
        let k = f.len();
        let parity = u8::from(!positive);
        (0..len)
            .map(|i| ZigSegment { arrows: vec![f[(start + i) % k], f[(start + i + 1) % k]], parity })
            .collect()
    }
}

/// The minimal model as an [`AInfinity`] structure on segments. Failed
/// evaluations count as zero and are tallied in `failures`.
pub struct MfMinimal<'a> {
    pub mf: &'a Mf,
    pub failures: Cell<usize>,
}

impl<'a> MfMinimal<'a> {
    pub fn new(mf: &'a Mf) -> Self {
        MfMinimal { mf, failures: Cell::new(0) }
    }
}

impl AInfinity for MfMinimal<'_> {
    type B = ZigSegment;

    fn degree(&self, b: &ZigSegment) -> u8 {
        b.degree()
    }

    fn source(&self, b: &ZigSegment) -> usize {
        b.source()
    }

    fn target(&self, b: &ZigSegment) -> usize {
        b.target()
    }

    fn mu(&self, args: &[ZigSegment]) -> LinComb<ZigSegment> {
        self.mf.products(args).unwrap_or_else(|_| {
            self.failures.set(self.failures.get() + 1);
            LinComb::zero()
        })
    }
}
