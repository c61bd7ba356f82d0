//! Twisted objects over a gentle category with `µ^κ`.
//!
//! A twisted object is a list of shifted objects `v₁[σ₁] ⊕ … ⊕ v_n[σ_n]` with a
//! strictly upper triangular `δ`, `δ_st ∈ Hom(v_t, v_s)`. A morphism `X → Y` is
//! a matrix whose `(s, r)` entry lies in `Hom(v_r, v′_s)`, of degree
//! `|p| + σ_r + σ′_s`.
//!
//! On matrices `µ_m` picks up `(−1)^{Σ_{j<k} d_j |p_k|}`, where `d_j` is the
//! change of shift across the `j`-th argument and `p_k` the path in the
//! `k`-th. Products of twisted morphisms insert `δ` everywhere; a `δ` at
//! position `k` (from 1) is weighted by `(−1)^{k−1+e}`, `e` the total degree of
//! the arguments to its left. Since `δ` is strictly upper triangular every sum
//! is finite.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gentle::{GentleCategory, GentleMorphism, SpiralPath};
use crate::lincomb::LinComb;
use crate::mukappa::{mu_paths, KappaMap, Strategy};
use crate::quiver::{Arrow, EmbeddedQuiver, Entry};
use crate::rectify::rectify;
use crate::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedObject {
    /// `(object, shift)` per summand.
    pub summands: Vec<(usize, u8)>,
    /// `delta[s][t]`, zero on and below the diagonal.
    pub delta: Vec<Vec<GentleMorphism>>,
}

impl TwistedObject {
    pub fn new(summands: Vec<(usize, u8)>) -> Self {
        let n = summands.len();
        TwistedObject { summands, delta: vec![vec![GentleMorphism::zero(); n]; n] }
    }

    pub fn single(v: usize, shift: u8) -> Self {
        Self::new(vec![(v, shift)])
    }

    pub fn with_delta(mut self, s: usize, t: usize, p: GentleMorphism) -> Self {
        self.delta[s][t] = p;
        self
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn has_delta(&self) -> bool {
        self.delta.iter().flatten().any(|x| !x.is_zero())
    }

    pub fn delta_hom(&self) -> TwistedHom {
        TwistedHom { entries: self.delta.clone() }
    }

    /// Swaps the shift of every summand on `v`.
    pub fn flip_shift(&self, v: usize) -> Self {
        let mut t = self.clone();
        for s in &mut t.summands {
            if s.0 == v {
                s.1 ^= 1;
            }
        }
        t
    }
}

/// A matrix of gentle morphisms; `entries[s][r]` maps summand `r` of the source
/// to summand `s` of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedHom {
    pub entries: Vec<Vec<GentleMorphism>>,
}

impl TwistedHom {
    pub fn zero(src: &TwistedObject, tgt: &TwistedObject) -> Self {
        TwistedHom { entries: vec![vec![GentleMorphism::zero(); src.len()]; tgt.len()] }
    }

    pub fn unit(src: &TwistedObject, tgt: &TwistedObject, s: usize, r: usize, p: GentleMorphism) -> Self {
        let mut h = Self::zero(src, tgt);
        h.entries[s][r] = p;
        h
    }

    pub fn identity(x: &TwistedObject) -> Self {
        let mut h = Self::zero(x, x);
        for (i, &(v, _)) in x.summands.iter().enumerate() {
            h.entries[i][i] = LinComb::basis(SpiralPath::Trivial(v));
        }
        h
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(LinComb::is_zero)
    }

    pub fn add_scaled(&mut self, c: &Q, other: &TwistedHom) {
        for (row, orow) in self.entries.iter_mut().zip(&other.entries) {
            for (x, y) in row.iter_mut().zip(orow) {
                x.add_scaled(c, y);
            }
        }
    }

    pub fn neg(&self) -> Self {
        TwistedHom { entries: self.entries.iter().map(|r| r.iter().map(LinComb::neg).collect()).collect() }
    }

    /// The homogeneous pieces `(s, r, path, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, usize, SpiralPath, Q)> {
        let mut out = Vec::new();
        for (s, row) in self.entries.iter().enumerate() {
            for (r, x) in row.iter().enumerate() {
                out.extend(x.iter().map(|(p, c)| (s, r, *p, c.clone())));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McReport {
    pub degrees_ok: bool,
    pub triangular: bool,
    /// `Σ (−1)^{n(n−1)/2} µ_n(δ, …, δ)`.
    pub residual: TwistedHom,
}

impl McReport {
    pub fn valid(&self) -> bool {
        self.degrees_ok && self.triangular && self.residual.is_zero()
    }
}

/// The twisted completion of `(Gtl, µ^κ)`, evaluated on demand.
pub struct Tw<'a> {
    pub g: &'a GentleCategory,
    pub kappa: &'a KappaMap,
}

fn signed(c: Q, odd: bool) -> Q {
    if odd { -c } else { c }
}

impl<'a> Tw<'a> {
    pub fn new(g: &'a GentleCategory, kappa: &'a KappaMap) -> Self {
        Tw { g, kappa }
    }

    /// Degree of `p ∈ Hom(v_r, v′_s)` as an entry of a morphism `src → tgt`.
    pub fn entry_degree(&self, src: &TwistedObject, tgt: &TwistedObject, s: usize, r: usize, p: &SpiralPath) -> u8 {
        (self.g.degree(p) + src.summands[r].1 + tgt.summands[s].1) % 2
    }

    /// Degree of a morphism, if it is nonzero and homogeneous.
    pub fn degree(&self, src: &TwistedObject, tgt: &TwistedObject, f: &TwistedHom) -> Option<u8> {
        let mut d = None;
        for (s, r, p, _) in f.terms() {
            let e = self.entry_degree(src, tgt, s, r, &p);
            if d.is_some_and(|d| d != e) {
                return None;
            }
            d = Some(e);
        }
        d
    }

    /// The nonzero homogeneous parts of `f`.
    pub fn split(&self, src: &TwistedObject, tgt: &TwistedObject, f: &TwistedHom) -> Vec<(TwistedHom, u8)> {
        let mut parts = [TwistedHom::zero(src, tgt), TwistedHom::zero(src, tgt)];
        for (s, r, p, c) in f.terms() {
            parts[self.entry_degree(src, tgt, s, r, &p) as usize].entries[s][r].add_term(c, p);
        }
        parts.into_iter().zip([0, 1]).filter(|(h, _)| !h.is_zero()).collect()
    }

    fn check_shape(&self, objs: &[&TwistedObject], args: &[&TwistedHom]) -> Result<()> {
        if objs.len() != args.len() + 1 {
            return Err(Error::NotComposable);
        }
        for (j, f) in args.iter().enumerate() {
            let (tgt, src) = (objs[j], objs[j + 1]);
            if f.entries.len() != tgt.len() || f.entries.iter().any(|row| row.len() != src.len()) {
                return Err(Error::NotComposable);
            }
            for (s, r, p, _) in f.terms() {
                if self.g.source(&p) != src.summands[r].0 || self.g.target(&p) != tgt.summands[s].0 {
                    return Err(Error::NotComposable);
                }
            }
        }
        Ok(())
    }

    /// `Σ_{j<k} d_j |p_k|`, with `d_j` the shift change across argument `j`.
    fn koszul(&self, shifts: &[u8], paths: &[SpiralPath]) -> bool {
        let mut odd = 0u8;
        let mut d = 0u8;
        for (j, p) in paths.iter().enumerate() {
            odd ^= d & self.g.degree(p);
            d ^= shifts[j] ^ shifts[j + 1];
        }
        odd == 1
    }

    /// `µ_m` extended to matrices; `args[j]` maps `objs[j + 1]` to `objs[j]`.
    pub fn matrix_mu(&self, objs: &[&TwistedObject], args: &[&TwistedHom]) -> Result<TwistedHom> {
        self.check_shape(objs, args)?;
        let m = args.len();
        let mut out = TwistedHom::zero(objs[m], objs[0]);
        if m < 2 || args.iter().any(|f| f.is_zero()) {
            return Ok(out);
        }
        let terms: Vec<Vec<(usize, usize, SpiralPath, Q)>> = args.iter().map(|f| f.terms()).collect();
        let mut paths = Vec::with_capacity(m);
        let mut rows = Vec::with_capacity(m + 1);
        self.chain(objs, &terms, &mut rows, &mut paths, q(1), &mut out)?;
        Ok(out)
    }

    fn chain(
        &self,
        objs: &[&TwistedObject],
        terms: &[Vec<(usize, usize, SpiralPath, Q)>],
        rows: &mut Vec<usize>,
        paths: &mut Vec<SpiralPath>,
        coeff: Q,
        out: &mut TwistedHom,
    ) -> Result<()> {
        let j = paths.len();
        if j == terms.len() {
            let shifts: Vec<u8> = rows.iter().enumerate().map(|(i, &s)| objs[i].summands[s].1).collect();
            if let Some((c, p)) = mu_paths(self.g, self.kappa, paths, Strategy::LeftMost)? {
                let odd = self.koszul(&shifts, paths);
                out.entries[rows[0]][rows[j]].add_term(signed(coeff * c, odd), p);
            }
            return Ok(());
        }
        for (s, r, p, c) in &terms[j] {
            if j > 0 && rows[j] != *s {
                continue;
            }
            let pushed = j == 0;
            if pushed {
                rows.push(*s);
            }
            rows.push(*r);
            paths.push(*p);
            self.chain(objs, terms, rows, paths, coeff.clone() * c, out)?;
            paths.pop();
            rows.pop();
            if pushed {
                rows.pop();
            }
        }
        Ok(())
    }

    /// Degree checks, triangularity and the Maurer–Cartan residual.
    pub fn validate(&self, x: &TwistedObject) -> Result<McReport> {
        let n = x.len();
        let mut degrees_ok = true;
        let mut triangular = true;
        for s in 0..n {
            for t in 0..n {
                for (p, _) in x.delta[s][t].iter() {
                    triangular &= s < t;
                    degrees_ok &= self.g.source(p) == x.summands[t].0
                        && self.g.target(p) == x.summands[s].0
                        && self.entry_degree(x, x, s, t, p) == 1;
                }
            }
        }
        let mut residual = TwistedHom::zero(x, x);
        if triangular && degrees_ok {
            let d = x.delta_hom();
            for k in 2..=n {
                let v = self.matrix_mu(&vec![x; k + 1], &vec![&d; k])?;
                residual.add_scaled(&signed(q(1), (k * (k - 1) / 2) % 2 == 1), &v);
            }
        }
        Ok(McReport { degrees_ok, triangular, residual })
    }

    /// `µ_n` on twisted morphisms; `args[j]` maps `objs[j + 1]` to `objs[j]`.
    pub fn product(&self, objs: &[&TwistedObject], args: &[&TwistedHom]) -> Result<TwistedHom> {
        self.check_shape(objs, args)?;
        let n = args.len();
        let mut out = TwistedHom::zero(objs[n], objs[0]);
        let mut degs = Vec::with_capacity(n);
        for j in 0..n {
            match self.degree(objs[j + 1], objs[j], args[j]) {
                Some(d) => degs.push(d as usize),
                None if args[j].is_zero() => return Ok(out),
                None => {
                    for (part, _) in self.split(objs[j + 1], objs[j], args[j]) {
                        let mut a = args.to_vec();
                        a[j] = &part;
                        out.add_scaled(&q(1), &self.product(objs, &a)?);
                    }
                    return Ok(out);
                }
            }
        }
        let caps: Vec<usize> = objs.iter().map(|x| if x.has_delta() { x.len() - 1 } else { 0 }).collect();
        let deltas: Vec<TwistedHom> = objs.iter().map(|x| x.delta_hom()).collect();
        let mut counts = vec![0usize; n + 1];
        loop {
            let t: usize = counts.iter().sum();
            if n + t >= 2 {
                let mut chain_objs: Vec<&TwistedObject> = Vec::with_capacity(n + t + 1);
                let mut chain_args: Vec<&TwistedHom> = Vec::with_capacity(n + t);
                let mut odd = 0usize;
                let mut before = 0usize;
                for b in 0..=n {
                    for _ in 0..counts[b] {
                        chain_objs.push(objs[b]);
                        chain_args.push(&deltas[b]);
                        odd += chain_args.len() - 1 + before;
                    }
                    chain_objs.push(objs[b]);
                    if b < n {
                        chain_args.push(args[b]);
                        before += degs[b];
                    }
                }
                let v = self.matrix_mu(&chain_objs, &chain_args)?;
                out.add_scaled(&signed(q(1), odd % 2 == 1), &v);
            }
            let mut b = 0;
            loop {
                if b > n {
                    return Ok(out);
                }
                counts[b] += 1;
                if counts[b] <= caps[b] {
                    break;
                }
                counts[b] = 0;
                b += 1;
            }
        }
    }

    /// Left side of `[M_k]` on twisted morphisms, `µ₁` included.
    pub fn identity_defect(&self, objs: &[&TwistedObject], args: &[&TwistedHom]) -> Result<TwistedHom> {
        let k = args.len();
        let mut total = TwistedHom::zero(objs[k], objs[0]);
        let degs: Vec<u8> = (0..k)
            .map(|j| self.degree(objs[j + 1], objs[j], args[j]).ok_or(Error::Invalid("inhomogeneous argument")))
            .collect::<Result<_>>()?;
        for r in 1..=k {
            for s in 0..=k - r {
                let inner = self.product(&objs[s..=s + r], &args[s..s + r])?;
                if inner.is_zero() {
                    continue;
                }
                let t = k - r - s;
                let ds: usize = degs[..s].iter().map(|&d| d as usize).sum();
                let odd = (s + r * t + (2 + r) * ds) % 2 == 1;
                let mut outer_objs: Vec<&TwistedObject> = objs[..=s].to_vec();
                outer_objs.extend_from_slice(&objs[s + r..]);
                let mut outer: Vec<&TwistedHom> = args[..s].to_vec();
                outer.push(&inner);
                outer.extend_from_slice(&args[s + r..]);
                let v = self.product(&outer_objs, &outer)?;
                total.add_scaled(&signed(q(1), odd), &v);
            }
        }
        Ok(total)
    }
}

/// Rectified arrow of the pair at positions `k, k + 1` of cycle `c`.
pub fn rectified_arrow(q: &EmbeddedQuiver, c: usize, k: usize) -> usize {
    q.cycles[..c].iter().map(Vec::len).sum::<usize>() + k % q.cycles[c].len()
}

/// The quiver with arrow `a` reversed; rectified arrows keep their indices.
pub fn reverse_arrow(q: &EmbeddedQuiver, a: usize) -> Result<EmbeddedQuiver> {
    let mut arrows = q.arrows.clone();
    let Arrow { tail, head, .. } = arrows[a].clone();
    arrows[a].tail = head;
    arrows[a].head = tail;
    let cycles = q
        .cycles
        .iter()
        .map(|c| c.iter().map(|e| if e.arrow == a { Entry { arrow: a, inverse: !e.inverse } } else { *e }).collect())
        .collect();
    EmbeddedQuiver::new(q.vertices.clone(), arrows, cycles)
}

/// The configuration of a chord `b` splitting a face `a₁ … a_k` into
/// `a₁ … a_i b` and the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chord {
    /// `v₀` (the chord) then `v₁, …, v_i`.
    pub objects: Vec<usize>,
    /// `α_j : v_{j+1} → v_j` for `j = 1, …, i − 1`.
    pub alphas: Vec<usize>,
    /// `β₀ : v₁ → v₀`.
    pub beta_first: usize,
    /// `β_i : v₀ → v_i`.
    pub beta_last: usize,
}

/// Finds the face of `q` traversed as `a₁ … a_i b` with `b` the given arrow
/// traversed once, starting right after `b`.
pub fn chord(q: &EmbeddedQuiver, b: usize, face: usize) -> Result<Chord> {
    let c = &q.cycles[face];
    let l = c.len();
    let pos = c.iter().position(|e| e.arrow == b).ok_or(Error::Invalid("chord not on that face"))?;
    let i = l - 1;
    if i < 2 {
        return Err(Error::Invalid("face too short for a chord"));
    }
    let at = |m: usize| (pos + 1 + m) % l;
    let objects = core::iter::once(b).chain((0..i).map(|m| c[at(m)].arrow)).collect();
    let alphas = (0..i - 1).map(|m| rectified_arrow(q, face, at(m))).collect();
    Ok(Chord { objects, alphas, beta_first: rectified_arrow(q, face, pos), beta_last: rectified_arrow(q, face, at(i - 1)) })
}

/// The object `w`, and `f₁ : w → v₀[0]`, `f₂ : v₀[0] → w`.
pub fn chord_maps(g: &GentleCategory, ch: &Chord) -> (TwistedObject, TwistedObject, TwistedHom, TwistedHom) {
    let i = ch.objects.len() - 1;
    let v0 = TwistedObject::single(ch.objects[0], 0);
    let mut w = TwistedObject::new(ch.objects[1..].iter().map(|&v| (v, 1)).collect());
    for (j, &a) in ch.alphas.iter().enumerate() {
        w.delta[j][j + 1] = LinComb::basis(g.arrow(a));
    }
    let f1 = TwistedHom::unit(&w, &v0, 0, 0, LinComb::basis(g.arrow(ch.beta_first)));
    let f2 = TwistedHom::unit(&v0, &w, i - 1, 0, LinComb::basis(g.arrow(ch.beta_last)));
    (v0, w, f1, f2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordReport {
    pub w_valid: bool,
    /// `µ₂(f₁, f₂) = id_{v₀}`.
    pub first: bool,
    /// `µ₂(f₂, f₁) = id_w`.
    pub second: bool,
    pub f1_f2: TwistedHom,
    pub f2_f1: TwistedHom,
}

impl ChordReport {
    pub fn ok(&self) -> bool {
        self.w_valid && self.first && self.second
    }
}

pub fn chord_check(tw: &Tw, ch: &Chord) -> Result<ChordReport> {
    let (v0, w, f1, f2) = chord_maps(tw.g, ch);
    let w_valid = tw.validate(&w)?.valid();
    let f1_f2 = tw.product(&[&v0, &w, &v0], &[&f1, &f2])?;
    let f2_f1 = tw.product(&[&w, &v0, &w], &[&f2, &f1])?;
    Ok(ChordReport {
        w_valid,
        first: f1_f2 == TwistedHom::identity(&v0),
        second: f2_f1 == TwistedHom::identity(&w),
        f1_f2,
        f2_f1,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReverseReport {
    pub objects: usize,
    pub tuples: usize,
    pub degree_mismatches: usize,
    pub mc_mismatches: usize,
    /// Products that `F₁(f) = f` maps correctly.
    pub untwisted_matches: usize,
    /// A sign twist of `F₁`, as a mask over [`twist_features`], that solves
    /// all singleton products.
    pub twist: Option<u16>,
    /// Products still wrong after the twist.
    pub product_mismatches: usize,
}

impl ReverseReport {
    pub fn ok(&self) -> bool {
        self.degree_mismatches == 0 && self.mc_mismatches == 0 && self.twist.is_some() && self.product_mismatches == 0
    }
}

/// Number of local features a sign twist may depend on.
pub const TWIST_FEATURES: usize = 12;

/// Features of an entry `p : v_r[σ_r] → v_s[σ_s]` relative to the reversed
/// arrow `a`: with `A = [v_s = a]`, `B = [v_r = a]` and `d = |p|`, the bits are
/// `A, B, Aσ_s, Bσ_r, Ad, Bd, AB, d, Aσ_r, Bσ_s, dσ_s, dσ_r`.
pub fn twist_features(g: &GentleCategory, a: usize, p: &SpiralPath, sr: u8, ss: u8) -> u16 {
    let aa = u16::from(g.target(p) == a);
    let bb = u16::from(g.source(p) == a);
    let d = u16::from(g.degree(p));
    let (sr, ss) = (u16::from(sr), u16::from(ss));
    let f = [aa, bb, aa & ss, bb & sr, aa & d, bb & d, aa & bb, d, aa & sr, bb & ss, d & ss, d & sr];
    f.iter().enumerate().fold(0, |acc, (i, x)| acc | (x << i))
}

fn twist_sign(form: u16, features: u16) -> bool {
    (form & features).count_ones() % 2 == 1
}

fn composable_chains(morphisms: &[(usize, usize, TwistedHom)], max_arity: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..morphisms.len()).map(|i| vec![i]).collect();
    while let Some(t) = stack.pop() {
        if t.len() < max_arity {
            let src = morphisms[t[t.len() - 1]].0;
            for (i, m) in morphisms.iter().enumerate() {
                if m.1 == src {
                    let mut u = t.clone();
                    u.push(i);
                    stack.push(u);
                }
            }
        }
        if t.len() >= 2 {
            out.push(t);
        }
    }
    out
}

/// The first sign twist, as a mask over [`twist_features`], under which the
/// identity on paths carries every product of singletons `v[σ]` along paths
/// winding at most once, up to arity 3, from `tw` to `tw2`.
pub fn calibrate_twist(tw: &Tw, tw2: &Tw, a: usize) -> Result<Option<u16>> {
    let g = tw.g;
    let objs: Vec<TwistedObject> = (0..g.n_objects()).flat_map(|v| [TwistedObject::single(v, 0), TwistedObject::single(v, 1)]).collect();
    let mut morph = Vec::new();
    for (si, x) in objs.iter().enumerate() {
        for (ti, y) in objs.iter().enumerate() {
            for p in g.hom_basis(x.summands[0].0, y.summands[0].0, 1) {
                morph.push((si, ti, p));
            }
        }
    }
    let feat = |si: usize, ti: usize, p: &SpiralPath| twist_features(g, a, p, objs[si].summands[0].1, objs[ti].summands[0].1);
    // (argument features, output features, sign differs)
    let mut equations: Vec<(Vec<u16>, u16, bool)> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..morph.len()).map(|i| vec![i]).collect();
    while let Some(t) = stack.pop() {
        let src = morph[t[t.len() - 1]].0;
        if t.len() < 3 {
            for (i, m) in morph.iter().enumerate() {
                if m.1 == src {
                    let mut u = t.clone();
                    u.push(i);
                    stack.push(u);
                }
            }
        }
        if t.len() < 2 {
            continue;
        }
        let args: Vec<SpiralPath> = t.iter().map(|&i| morph[i].2).collect();
        let shifts: Vec<u8> = t.iter().map(|&i| objs[morph[i].1].summands[0].1).chain([objs[src].summands[0].1]).collect();
        let lhs = mu_paths(g, tw.kappa, &args, Strategy::LeftMost)?.map(|(c, p)| (signed(c, tw.koszul(&shifts, &args)), p));
        let flipped: Vec<u8> = t.iter().map(|&i| morph[i].1).chain([src]).map(|o| objs[o].summands[0].1 ^ u8::from(objs[o].summands[0].0 == a)).collect();
        let rhs = mu_paths(tw2.g, tw2.kappa, &args, Strategy::LeftMost)?.map(|(c, p)| (signed(c, tw2.koszul(&flipped, &args)), p));
        match (lhs, rhs) {
            (None, None) => {}
            (Some((c, p)), Some((c2, p2))) if p == p2 && (c == c2 || c == -c2.clone()) => {
                let fs = t.iter().map(|&i| feat(morph[i].0, morph[i].1, &morph[i].2)).collect();
                equations.push((fs, feat(src, morph[t[0]].1, &p), c != c2));
            }
            _ => return Ok(None),
        }
    }
    Ok((0..1u16 << TWIST_FEATURES).find(|&form| {
        equations.iter().all(|(args, out, flip)| args.iter().fold(twist_sign(form, *out), |e, &f| e ^ twist_sign(form, f)) == *flip)
    }))
}

/// Compares `Tw Gtl(RQ)` with `Tw Gtl(RQ′)` for `Q′` the quiver with arrow `a`
/// reversed, on the given objects and morphisms `(source, target, hom)`.
///
/// Objects go to objects with the shift of every `a` summand swapped. On
/// morphisms the identity is tried first; then the twist from
/// [`calibrate_twist`] is applied to every morphism and every `δ`, and all
/// products are compared.
pub fn reverse_direction_check(
    q: &EmbeddedQuiver,
    a: usize,
    objects: &[TwistedObject],
    morphisms: &[(usize, usize, TwistedHom)],
    max_arity: usize,
) -> Result<ReverseReport> {
    let g = GentleCategory::new(rectify(q)?);
    let g2 = GentleCategory::new(rectify(&reverse_arrow(q, a)?)?);
    let (k, k2) = (KappaMap::mu_bar(&g), KappaMap::mu_bar(&g2));
    let (tw, tw2) = (Tw::new(&g, &k), Tw::new(&g2, &k2));
    let images: Vec<TwistedObject> = objects.iter().map(|x| x.flip_shift(a)).collect();
    let mut rep = ReverseReport { objects: objects.len(), ..Default::default() };
    for (s, t, f) in morphisms {
        if tw.degree(&objects[*s], &objects[*t], f) != tw2.degree(&images[*s], &images[*t], f) {
            rep.degree_mismatches += 1;
        }
    }
    let chains = composable_chains(morphisms, max_arity);
    let eval = |t: &[usize], objs: &[TwistedObject], tw: &Tw, homs: &[&TwistedHom]| {
        let o: Vec<&TwistedObject> = t.iter().map(|&i| &objs[morphisms[i].1]).chain([&objs[morphisms[t[t.len() - 1]].0]]).collect();
        tw.product(&o, homs)
    };
    let mut results = Vec::with_capacity(chains.len());
    for t in &chains {
        let homs: Vec<&TwistedHom> = t.iter().map(|&i| &morphisms[i].2).collect();
        let lhs = eval(t, objects, &tw, &homs)?;
        if lhs == eval(t, &images, &tw2, &homs)? {
            rep.untwisted_matches += 1;
        }
        results.push(lhs);
    }
    rep.twist = calibrate_twist(&tw, &tw2, a)?;
    let form = rep.twist.unwrap_or(0);
    let twist = |x: &TwistedObject, y: &TwistedObject, f: &TwistedHom| {
        let mut h = TwistedHom::zero(x, y);
        for (s, r, p, c) in f.terms() {
            let e = twist_sign(form, twist_features(&g, a, &p, x.summands[r].1, y.summands[s].1));
            h.entries[s][r].add_term(signed(c, e), p);
        }
        h
    };
    let images: Vec<TwistedObject> = objects
        .iter()
        .zip(images)
        .map(|(x, mut y)| {
            y.delta = twist(x, x, &x.delta_hom()).entries;
            y
        })
        .collect();
    for (x, y) in objects.iter().zip(&images) {
        if tw.validate(x)?.valid() != tw2.validate(y)?.valid() {
            rep.mc_mismatches += 1;
        }
    }
    let twisted: Vec<TwistedHom> = morphisms.iter().map(|(s, t, f)| twist(&objects[*s], &objects[*t], f)).collect();
    for (t, lhs) in chains.iter().zip(results) {
        rep.tuples += 1;
        let homs: Vec<&TwistedHom> = t.iter().map(|&i| &twisted[i]).collect();
        let rhs = eval(t, &images, &tw2, &homs)?;
        let (src, tgt) = (&objects[morphisms[t[t.len() - 1]].0], &objects[morphisms[t[0]].1]);
        if twist(src, tgt, &lhs) != rhs {
            rep.product_mismatches += 1;
        }
    }
    Ok(rep)
}
