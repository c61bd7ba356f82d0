//! Lifting zig and zag rays to the universal cover and deciding consistency.
//!
//! A lifted arrow is recorded as its base arrow plus the displacement of its
//! tail: the homology class of the connecting path, closed up with a fixed
//! spanning tree. On the torus the deck group is `H₁` and this is exact. At
//! higher genus equal displacements are only necessary for a meeting; the same
//! test is repeated in small cyclic covers before falling back to an explicit
//! patch of the universal cover.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::Result;
use crate::homology::{smith_normal_form, H1Basis, IntegerMatrix};
use crate::quiver::{Arrow, DimerModel, Entry};
use crate::zigzag::successor;

/// Spanning tree paths from vertex 0 and per-arrow displacements.
#[derive(Clone, Debug)]
pub struct Displacements {
    pub basis: H1Basis,
    /// `tree[v]`: a weak path from vertex 0 to `v`.
    pub tree: Vec<Vec<Entry>>,
    /// `disp[a]`: class of `tree[t(a)] · a · tree[h(a)]⁻¹`.
    pub disp: Vec<Vec<i64>>,
}

impl Displacements {
    pub fn new(m: &DimerModel) -> Result<Self> {
        let basis = H1Basis::new(m)?;
        let n = m.n_vertices();
        let mut tree: Vec<Option<Vec<Entry>>> = vec![None; n];
        tree[0] = Some(Vec::new());
        let mut queue = alloc::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let here = tree[v].clone().unwrap();
            for (a, arr) in m.arrows.iter().enumerate() {
                for (from, to, e) in [(arr.tail, arr.head, Entry::fwd(a)), (arr.head, arr.tail, Entry::inv(a))] {
                    if from == v && tree[to].is_none() {
                        let mut p = here.clone();
                        p.push(e);
                        tree[to] = Some(p);
                        queue.push_back(to);
                    }
                }
            }
        }
        let tree: Vec<Vec<Entry>> = tree.into_iter().map(|t| t.expect("connected")).collect();
        let disp = (0..m.n_arrows())
            .map(|a| {
                let mut z = m.edge_vector(&tree[m.tail(a)]);
                z[a] += 1;
                for (x, y) in z.iter_mut().zip(m.edge_vector(&tree[m.head(a)])) {
                    *x -= y;
                }
                basis.coords_i64(&z)
            })
            .collect();
        Ok(Displacements { basis, tree, disp })
    }

    /// Displacement of a real path given by its arrows in traversal order.
    pub fn of_path(&self, arrows: &[usize]) -> Vec<i64> {
        let mut d = vec![0i64; self.basis.rank];
        for &a in arrows {
            add(&mut d, &self.disp[a]);
        }
        d
    }
}

fn add(d: &mut [i64], e: &[i64]) {
    for (x, y) in d.iter_mut().zip(e) {
        *x += y;
    }
}

/// Lifted positions `(arrow, displacement)` of one period of a ray, and the
/// displacement gained per period.
pub fn lifted_period(m: &DimerModel, dp: &Displacements, a: usize, parity: u8) -> (Vec<(usize, Vec<i64>)>, Vec<i64>) {
    let mut out = Vec::new();
    let mut d = vec![0i64; dp.basis.rank];
    let mut s = (a, parity);
    loop {
        out.push((s.0, d.clone()));
        add(&mut d, &dp.disp[s.0]);
        s = successor(m, s);
        if s == (a, parity) {
            return (out, d);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub arrow: usize,
    /// Index along the zag ray.
    pub i: u64,
    /// Index along the zig ray.
    pub j: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    /// `None` for the sphere, where no search is needed.
    Inconsistent(Option<Witness>),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub verdict: Verdict,
    pub genus: i64,
    /// Minimal meeting per arrow (exact on the torus; candidates elsewhere).
    pub witnesses: Vec<Witness>,
    /// Arrows whose rays admit a homological meeting candidate that could not be
    /// confirmed or refuted (higher genus only).
    pub unresolved: Vec<usize>,
}

fn gcd_ext(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = gcd_ext(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    a.div_euclid(b) - if b < 0 && a.rem_euclid(b) != 0 { 1 } else { 0 }
}
fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// Nonnegative integer solutions `(q, p)` of `q·u − p·v = w`, returned as the
/// one minimising `cost(q, p)` among those accepted by `ok`.
fn solve_periods(
    u: &[i64],
    v: &[i64],
    w: &[i64],
    cost: impl Fn(i128, i128) -> i128,
    ok: impl Fn(i128, i128) -> bool,
) -> Option<(i128, i128)> {
    let n = u.len();
    let (u, v, w): (Vec<i128>, Vec<i128>, Vec<i128>) = (
        u.iter().map(|&x| x as i128).collect(),
        v.iter().map(|&x| x as i128).collect(),
        w.iter().map(|&x| x as i128).collect(),
    );
    let best = |cands: &mut dyn Iterator<Item = (i128, i128)>| {
        cands.filter(|&(q, p)| q >= 0 && p >= 0 && ok(q, p)).min_by_key(|&(q, p)| (cost(q, p), q, p))
    };
    // rank 2: some 2x2 minor is nonzero
    for r1 in 0..n {
        for r2 in r1 + 1..n {
            let det = u[r1] * (-v[r2]) - (-v[r1]) * u[r2];
            if det != 0 {
                let qn = w[r1] * (-v[r2]) - (-v[r1]) * w[r2];
                let pn = u[r1] * w[r2] - w[r1] * u[r2];
                if qn % det != 0 || pn % det != 0 {
                    return None;
                }
                let (q, p) = (qn / det, pn / det);
                if (0..n).any(|k| q * u[k] - p * v[k] != w[k]) {
                    return None;
                }
                return best(&mut [(q, p)].into_iter());
            }
        }
    }
    // rank ≤ 1: u, v and w must all be multiples of one primitive vector
    let Some(e) = [&u, &v].into_iter().find(|x| x.iter().any(|&c| c != 0)) else {
        if w.iter().any(|&x| x != 0) {
            return None;
        }
        return best(&mut [(0, 0), (1, 0), (0, 1)].into_iter());
    };
    let g = e.iter().fold(0i128, |g, &x| gcd_ext(g, x).0);
    let d: Vec<i128> = e.iter().map(|x| x / g).collect();
    let j = (0..n).find(|&i| d[i] != 0).unwrap();
    let coef = |x: &[i128]| -> Option<i128> {
        let c = x[j] / d[j];
        (0..n).all(|i| c * d[i] == x[i]).then_some(c)
    };
    let (alpha, beta) = (coef(&u)?, coef(&v)?);
    let gamma = coef(&w)?;
    // alpha·q − beta·p = gamma
    match (alpha, beta) {
        (0, 0) => (gamma == 0).then(|| best(&mut [(0, 0), (1, 0), (0, 1)].into_iter())).flatten(),
        (0, b) => {
            if gamma % b != 0 {
                return None;
            }
            let p = -gamma / b;
            best(&mut [(0, p), (1, p)].into_iter())
        }
        (a, 0) => {
            if gamma % a != 0 {
                return None;
            }
            let q = gamma / a;
            best(&mut [(q, 0), (q, 1)].into_iter())
        }
        (a, b) => {
            let (g, x, y) = gcd_ext(a, -b);
            if gamma % g != 0 {
                return None;
            }
            let (q0, p0) = (x * gamma / g, y * gamma / g);
            let (sq, sp) = (b / g, a / g);
            // q = q0 + sq·t ≥ 0, p = p0 + sp·t ≥ 0
            let mut lo = i128::MIN / 4;
            let mut hi = i128::MAX / 4;
            for (base, step) in [(q0, sq), (p0, sp)] {
                if step > 0 {
                    lo = lo.max(div_ceil(-base, step));
                } else {
                    hi = hi.min(div_floor(-base, step));
                }
            }
            if lo > hi {
                return None;
            }
            let ts = [lo, lo + 1, hi, hi - 1];
            best(&mut ts.into_iter().filter(|&t| t >= lo && t <= hi && t.abs() < i128::MAX / 8).map(|t| (q0 + sq * t, p0 + sp * t)))
        }
    }
}

/// Minimal meeting of the zag ray (index `i`) and zig ray (index `j`) of `a`,
/// judged by displacement.
pub fn meeting(m: &DimerModel, dp: &Displacements, a: usize) -> Option<Witness> {
    let (zig, tz) = lifted_period(m, dp, a, 0);
    let (zag, tg) = lifted_period(m, dp, a, 1);
    let (lz, lg) = (zig.len() as i128, zag.len() as i128);
    let mut best: Option<Witness> = None;
    for (r, (ar, dr)) in zig.iter().enumerate() {
        for (s, (as_, ds)) in zag.iter().enumerate() {
            if ar != as_ {
                continue;
            }
            let w: Vec<i64> = ds.iter().zip(dr).map(|(x, y)| x - y).collect();
            let (r, s) = (r as i128, s as i128);
            let sol = solve_periods(
                &tz,
                &tg,
                &w,
                |q, p| (q * lz + r) + (p * lg + s),
                |q, p| q * lz + r + p * lg + s > 0,
            );
            if let Some((q, p)) = sol {
                let cand = Witness { arrow: a, i: (p * lg + s) as u64, j: (q * lz + r) as u64 };
                if best.map_or(true, |b| (cand.i + cand.j, cand.i) < (b.i + b.j, b.i)) {
                    best = Some(cand);
                }
            }
        }
    }
    best
}

/// Zigzag consistency. Exact on the sphere and the torus; at higher genus the
/// displacement test either certifies consistency or leaves candidates that
/// are checked in a face-budgeted patch of the universal cover.
pub fn check_consistency(m: &DimerModel, face_budget: usize) -> Result<ConsistencyReport> {
    let genus = m.genus();
    if genus == 0 {
        return Ok(ConsistencyReport { verdict: Verdict::Inconsistent(None), genus, witnesses: Vec::new(), unresolved: Vec::new() });
    }
    let dp = Displacements::new(m)?;
    let witnesses: Vec<Witness> = (0..m.n_arrows()).filter_map(|a| meeting(m, &dp, a)).collect();
    if genus == 1 {
        let verdict = match witnesses.first() {
            None => Verdict::Consistent,
            Some(w) => Verdict::Inconsistent(Some(*w)),
        };
        return Ok(ConsistencyReport { verdict, genus, witnesses, unresolved: Vec::new() });
    }
    let cocycles = integer_cocycles(m);
    let mut confirmed = Vec::new();
    let mut unresolved = Vec::new();
    for w in &witnesses {
        if separated_in_finite_cover(m, &cocycles, w.arrow) {
            continue;
        }
        let patch = CoverPatch::grow(m, w.arrow, face_budget);
        match patch.rays_meet(m, w.arrow, w.i as usize, w.j as usize) {
            Some(true) => confirmed.push(*w),
            Some(false) => {}
            None => unresolved.push(w.arrow),
        }
    }
    let verdict = if let Some(w) = confirmed.first() {
        Verdict::Inconsistent(Some(*w))
    } else if unresolved.is_empty() {
        Verdict::Consistent
    } else {
        Verdict::Inconclusive
    };
    Ok(ConsistencyReport { verdict, genus, witnesses: confirmed, unresolved })
}

/// Integer labellings of the arrows that sum to zero around every face.
pub fn integer_cocycles(m: &DimerModel) -> Vec<Vec<i64>> {
    let faces: Vec<&Vec<usize>> = m.pos.iter().chain(&m.neg).collect();
    let mut rows = vec![vec![0i64; m.n_arrows()]; faces.len()];
    for (i, f) in faces.iter().enumerate() {
        for &a in f.iter() {
            rows[i][a] += 1;
        }
    }
    let snf = smith_normal_form(&IntegerMatrix::from_i64(&rows));
    (snf.rank()..m.n_arrows())
        .map(|c| (0..m.n_arrows()).map(|r| snf.v.data[r][c].to_i64().unwrap_or(0)).collect())
        .collect()
}

/// The `n`-sheeted cyclic cover defined by a cocycle. Arrow `(a, k)` has index
/// `a * n + k` and starts on sheet `k`.
pub fn cyclic_cover(m: &DimerModel, cocycle: &[i64], n: usize) -> Result<DimerModel> {
    let ni = n as i64;
    let shift = |a: usize, k: usize| ((k as i64 + cocycle[a]).rem_euclid(ni)) as usize;
    let vertices = (0..m.n_vertices()).flat_map(|v| (0..n).map(move |k| (v, k))).map(|(v, k)| format!("{}#{k}", m.vertices[v])).collect();
    let mut arrows = Vec::new();
    for a in 0..m.n_arrows() {
        for k in 0..n {
            arrows.push(Arrow { name: format!("{}#{k}", m.name(a)), tail: m.tail(a) * n + k, head: m.head(a) * n + shift(a, k) });
        }
    }
    let lift = |faces: &[Vec<usize>]| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for f in faces {
            for k0 in 0..n {
                let mut k = k0;
                let mut g = Vec::new();
                for &a in f {
                    g.push(a * n + k);
                    k = shift(a, k);
                }
                out.push(g);
            }
        }
        out
    };
    DimerModel::new(vertices, arrows, lift(&m.pos), lift(&m.neg))
}

/// Looks for a small cyclic cover whose homology already keeps the zig and zag
/// rays of `a` apart. Meetings in the universal cover project to meetings in
/// every intermediate cover, so one such cover proves there is no meeting.
pub fn separated_in_finite_cover(m: &DimerModel, cocycles: &[Vec<i64>], a: usize) -> bool {
    let mut labels: Vec<Vec<i64>> = cocycles.to_vec();
    for i in 0..cocycles.len() {
        for j in i + 1..cocycles.len() {
            labels.push(cocycles[i].iter().zip(&cocycles[j]).map(|(x, y)| x + y).collect());
        }
    }
    for n in 2..=4 {
        for c in &labels {
            let Ok(cover) = cyclic_cover(m, c, n) else { continue };
            let Ok(dp) = Displacements::new(&cover) else { continue };
            if meeting(&cover, &dp, a * n).is_none() {
                return true;
            }
        }
    }
    false
}

/// Brute force on the torus: lift several periods of both rays and compare
/// positions directly.
pub fn brute_force_meeting(m: &DimerModel, dp: &Displacements, a: usize, periods: usize) -> Option<Witness> {
    let walk = |parity: u8| {
        let (per, t) = lifted_period(m, dp, a, parity);
        let mut out = Vec::new();
        for k in 0..periods {
            for (arr, d) in &per {
                let dd: Vec<i64> = d.iter().zip(&t).map(|(x, y)| x + y * k as i64).collect();
                out.push((*arr, dd));
            }
        }
        out
    };
    let (zig, zag) = (walk(0), walk(1));
    let mut best: Option<Witness> = None;
    for (j, x) in zig.iter().enumerate() {
        for (i, y) in zag.iter().enumerate() {
            if (i, j) != (0, 0) && x == y {
                let c = Witness { arrow: a, i: i as u64, j: j as u64 };
                if best.map_or(true, |b| (c.i + c.j, c.i) < (b.i + b.j, b.i)) {
                    best = Some(c);
                }
            }
        }
    }
    best
}

/// A finite simply connected piece of the universal cover, grown one face at a
/// time along a boundary arc. Cells are labelled by their base cells.
#[derive(Clone, Debug)]
pub struct CoverPatch {
    /// Base face of each face copy: `(negative?, index)`.
    pub faces: Vec<(bool, usize)>,
    /// Arrow copies: base arrow, positive-side face copy, negative-side face copy.
    pub arrows: Vec<(usize, Option<usize>, Option<usize>)>,
    /// Vertex copy of each arrow copy's tail and head.
    pub ends: Vec<(usize, usize)>,
    pub n_vertices: usize,
    /// Corners filled so far at each vertex copy, out of the base vertex's degree.
    pub filled: Vec<usize>,
    pub complete: bool,
}

impl CoverPatch {
    fn base_face(m: &DimerModel, f: (bool, usize)) -> &Vec<usize> {
        if f.0 { &m.neg[f.1] } else { &m.pos[f.1] }
    }

    fn corners(m: &DimerModel, v: usize) -> usize {
        m.arrows.iter().filter(|a| a.tail == v).count() + m.arrows.iter().filter(|a| a.head == v).count()
    }

    /// Start from the positive face of `a` and attach faces breadth first.
    pub fn grow(m: &DimerModel, a: usize, budget: usize) -> CoverPatch {
        let mut p = CoverPatch { faces: Vec::new(), arrows: Vec::new(), ends: Vec::new(), n_vertices: 0, filled: Vec::new(), complete: false };
        let (f0, _) = m.pos_loc(a);
        p.attach_first(m, (false, f0));
        let mut frontier = 0usize;
        while p.faces.len() < budget {
            let Some(k) = (frontier..p.arrows.len()).find(|&k| p.arrows[k].1.is_none() || p.arrows[k].2.is_none()) else {
                p.complete = true;
                break;
            };
            frontier = k;
            p.attach_across(m, k);
        }
        p
    }

    fn new_vertex(&mut self) -> usize {
        self.n_vertices += 1;
        self.filled.push(0);
        self.n_vertices - 1
    }

    fn attach_first(&mut self, m: &DimerModel, f: (bool, usize)) {
        let face = Self::base_face(m, f).clone();
        let fi = self.faces.len();
        self.faces.push(f);
        let vs: Vec<usize> = (0..face.len()).map(|_| self.new_vertex()).collect();
        for (k, &b) in face.iter().enumerate() {
            let (t, h) = (vs[k], vs[(k + 1) % face.len()]);
            self.filled[t] += 1;
            let (pf, nf) = if f.0 { (None, Some(fi)) } else { (Some(fi), None) };
            self.arrows.push((b, pf, nf));
            self.ends.push((t, h));
        }
    }

    /// Attach the missing face across arrow copy `k`, gluing along every
    /// boundary edge whose vertex link the new face completes.
    fn attach_across(&mut self, m: &DimerModel, k: usize) {
        let (b, pf, _) = self.arrows[k];
        let f = if pf.is_none() { (false, m.pos_loc(b).0) } else { (true, m.neg_loc(b).0) };
        let face = Self::base_face(m, f).clone();
        let start = face.iter().position(|&x| x == b).unwrap();
        let fi = self.faces.len();
        self.faces.push(f);
        let l = face.len();
        // walk the new face from the glued arrow, reusing boundary arrow copies
        // while the corner between them closes a vertex link
        let mut copies: Vec<Option<usize>> = vec![None; l];
        copies[0] = Some(k);
        let mut fwd = 0;
        while fwd + 1 < l {
            let prev = copies[fwd].unwrap();
            let v = self.ends[prev].1;
            if self.filled[v] + 1 < Self::corners(m, self.arrows_base_vertex(m, prev, true)) {
                break;
            }
            let next_base = face[(start + fwd + 1) % l];
            match self.open_arrow_at(v, next_base, true, f.0) {
                Some(c) => {
                    copies[fwd + 1] = Some(c);
                    fwd += 1;
                }
                None => break,
            }
        }
        let mut back = l;
        while back - 1 > fwd {
            let nxt = copies[back % l].unwrap();
            let v = self.ends[nxt].0;
            if self.filled[v] + 1 < Self::corners(m, m.tail(self.arrows[nxt].0)) {
                break;
            }
            let prev_base = face[(start + back - 1) % l];
            match self.open_arrow_at(v, prev_base, false, f.0) {
                Some(c) => {
                    copies[back - 1] = Some(c);
                    back -= 1;
                }
                None => break,
            }
        }
        // create the remaining arrow copies and vertices
        let mut vert: Vec<Option<usize>> = vec![None; l];
        for i in 0..l {
            if let Some(c) = copies[i] {
                vert[i] = Some(self.ends[c].0);
                vert[(i + 1) % l] = Some(self.ends[c].1);
            }
        }
        for v in vert.iter_mut() {
            if v.is_none() {
                *v = Some(self.new_vertex());
            }
        }
        for i in 0..l {
            let (t, h) = (vert[i].unwrap(), vert[(i + 1) % l].unwrap());
            self.filled[t] += 1;
            match copies[i] {
                Some(c) => {
                    if f.0 { self.arrows[c].2 = Some(fi) } else { self.arrows[c].1 = Some(fi) }
                }
                None => {
                    let base = face[(start + i) % l];
                    let (pf, nf) = if f.0 { (None, Some(fi)) } else { (Some(fi), None) };
                    self.arrows.push((base, pf, nf));
                    self.ends.push((t, h));
                }
            }
        }
    }

    fn arrows_base_vertex(&self, m: &DimerModel, copy: usize, head: bool) -> usize {
        let b = self.arrows[copy].0;
        if head { m.head(b) } else { m.tail(b) }
    }

    /// An arrow copy with base `base` at vertex copy `v` (as tail if `out`) that
    /// still misses its face of the given sign.
    fn open_arrow_at(&self, v: usize, base: usize, out: bool, negative: bool) -> Option<usize> {
        (0..self.arrows.len()).find(|&c| {
            let (b, pf, nf) = self.arrows[c];
            let end = if out { self.ends[c].0 } else { self.ends[c].1 };
            b == base && end == v && if negative { nf.is_none() } else { pf.is_none() }
        })
    }

    /// Follow a ray inside the patch; `None` once it leaves the patch.
    fn walk(&self, m: &DimerModel, start: usize, parity: u8, len: usize) -> Option<usize> {
        let mut c = start;
        let mut s = (self.arrows[start].0, parity);
        for _ in 0..len {
            let next = successor(m, s);
            let face = if s.1 == 0 { self.arrows[c].1? } else { self.arrows[c].2? };
            let v = self.ends[c].1;
            c = (0..self.arrows.len()).find(|&d| {
                let (b, pf, nf) = self.arrows[d];
                b == next.0 && self.ends[d].0 == v && (if s.1 == 0 { pf } else { nf }) == Some(face)
            })?;
            s = next;
        }
        Some(c)
    }

    /// Whether the `i`-th zag and `j`-th zig arrows of the starting arrow
    /// coincide; `None` if either leaves the patch.
    pub fn rays_meet(&self, m: &DimerModel, a: usize, i: usize, j: usize) -> Option<bool> {
        let start = (0..self.arrows.len()).find(|&c| self.arrows[c].0 == a)?;
        let zag = self.walk(m, start, 1, i)?;
        let zig = self.walk(m, start, 0, j)?;
        Some(zag == zig)
    }
}
