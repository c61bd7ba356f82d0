//! Perfect matchings, stability and the lattice polygon of a torus dimer.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::cover::{check_consistency, Verdict};
use crate::error::{Error, Result};
use crate::homology::{tree_paths, H1Basis};
use crate::mirror::mirror_dimer;
use crate::quiver::{inverse, DimerModel, Entry};
use crate::zigzag::zigzag_cycles;

/// A set of arrows meeting every face exactly once; arrows sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PerfectMatching {
    pub arrows: Vec<usize>,
}

impl PerfectMatching {
    pub fn contains(&self, a: usize) -> bool {
        self.arrows.binary_search(&a).is_ok()
    }

    /// Degree of a weak path: matched arrows count `+1`, or `−1` when traversed
    /// backwards.
    pub fn degree(&self, path: &[Entry]) -> i64 {
        path.iter().filter(|e| self.contains(e.arrow)).map(|e| if e.inverse { -1 } else { 1 }).sum()
    }

    pub fn names(&self, m: &DimerModel) -> Vec<alloc::string::String> {
        self.arrows.iter().map(|&a| m.name(a).into()).collect()
    }
}

pub fn is_perfect_matching(m: &DimerModel, arrows: &[usize]) -> bool {
    let p = PerfectMatching { arrows: arrows.iter().copied().collect::<BTreeSet<_>>().into_iter().collect() };
    m.pos.iter().chain(&m.neg).all(|f| f.iter().filter(|&&a| p.contains(a)).count() == 1)
}

/// All perfect matchings, by exact cover of the faces with arrows; each arrow
/// covers its positive and its negative face. Output is sorted.
pub fn enumerate_matchings(m: &DimerModel) -> Vec<PerfectMatching> {
    let np = m.pos.len();
    let faces: Vec<&Vec<usize>> = m.pos.iter().chain(&m.neg).collect();
    let cover = |a: usize| (m.pos_loc(a).0, np + m.neg_loc(a).0);
    let mut covered = vec![false; faces.len()];
    let mut chosen = Vec::new();
    let mut out = Vec::new();

    fn search(
        faces: &[&Vec<usize>],
        cover: &dyn Fn(usize) -> (usize, usize),
        covered: &mut [bool],
        chosen: &mut Vec<usize>,
        out: &mut Vec<PerfectMatching>,
    ) {
        let mut best: Option<(usize, usize)> = None;
        for (f, face) in faces.iter().enumerate().filter(|(f, _)| !covered[*f]) {
            let n = face.iter().filter(|&&a| {
                let (p, q) = cover(a);
                !covered[p] && !covered[q]
            });
            let n = n.count();
            if best.is_none_or(|(_, b)| n < b) {
                best = Some((f, n));
            }
        }
        let Some((f, n)) = best else {
            let mut arrows = chosen.clone();
            arrows.sort_unstable();
            out.push(PerfectMatching { arrows });
            return;
        };
        if n == 0 {
            return;
        }
        for &a in faces[f] {
            let (p, q) = cover(a);
            if covered[p] || covered[q] {
                continue;
            }
            covered[p] = true;
            covered[q] = true;
            chosen.push(a);
            search(faces, cover, covered, chosen, out);
            chosen.pop();
            covered[p] = false;
            covered[q] = false;
        }
    }

    search(&faces, &cover, &mut covered, &mut chosen, &mut out);
    out.sort();
    out
}

/// `None` if every vertex is reachable from `o` along arrows matched by no
/// member of `s`; otherwise the least unreachable vertex.
pub fn unreachable_vertex(m: &DimerModel, o: usize, s: &[&PerfectMatching]) -> Option<usize> {
    let mut seen = vec![false; m.n_vertices()];
    seen[o] = true;
    let mut queue = VecDeque::from([o]);
    while let Some(v) = queue.pop_front() {
        for a in 0..m.n_arrows() {
            if m.tail(a) == v && !seen[m.head(a)] && !s.iter().any(|p| p.contains(a)) {
                seen[m.head(a)] = true;
                queue.push_back(m.head(a));
            }
        }
    }
    seen.iter().position(|&r| !r)
}

pub fn stability(m: &DimerModel, o: usize, s: &[&PerfectMatching]) -> bool {
    unreachable_vertex(m, o, s).is_none()
}

/// Cycles `x`, `y` through `o` whose classes form a basis of `H₁`, and a
/// positive cycle `z` through `o`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub o: usize,
    pub x: Vec<Entry>,
    pub y: Vec<Entry>,
    pub z: Vec<Entry>,
}

/// Cancels adjacent backtracks, cyclically.
fn reduce_loop(path: Vec<Entry>) -> Vec<Entry> {
    let mut out: Vec<Entry> = Vec::with_capacity(path.len());
    for e in path {
        match out.last() {
            Some(l) if l.arrow == e.arrow && l.inverse != e.inverse => {
                out.pop();
            }
            _ => out.push(e),
        }
    }
    out
}

/// `x`, `y` by Euclidean reduction of the fundamental loops of a spanning tree
/// rooted at `o`; `z` is the first positive face through `o`.
pub fn default_frame(m: &DimerModel, o: usize) -> Result<Frame> {
    if o >= m.n_vertices() {
        return Err(Error::Invalid("no such vertex"));
    }
    let h1 = H1Basis::new(m)?;
    if h1.rank != 2 {
        return Err(Error::NeedsConsistentTorus);
    }
    let (to, tree) = tree_paths(m, o)?;
    let mut gens: Vec<([i64; 2], Vec<Entry>)> = Vec::new();
    for a in (0..m.n_arrows()).filter(|a| !tree.contains(a)) {
        let mut p = to[m.tail(a)].clone();
        p.push(Entry::fwd(a));
        p.extend(inverse(&to[m.head(a)]));
        let c = h1.cycle_class(m, &p)?;
        gens.push(([c[0], c[1]], reduce_loop(p)));
    }
    let pick = |gens: &mut Vec<([i64; 2], Vec<Entry>)>, k: usize| -> Option<([i64; 2], Vec<Entry>)> {
        loop {
            let nz: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].0[k] != 0).collect();
            let &p = nz.iter().min_by_key(|&&i| gens[i].0[k].abs())?;
            if nz.len() == 1 {
                return Some(gens.remove(p));
            }
            let (pc, pp) = gens[p].clone();
            for &j in nz.iter().filter(|&&j| j != p) {
                let q = gens[j].0[k] / pc[k];
                let step = if q > 0 { inverse(&pp) } else { pp.clone() };
                for _ in 0..q.abs() {
                    gens[j].1.extend_from_slice(&step);
                }
                gens[j].1 = reduce_loop(core::mem::take(&mut gens[j].1));
                gens[j].0 = [gens[j].0[0] - q * pc[0], gens[j].0[1] - q * pc[1]];
            }
        }
    };
    let (cx, x) = pick(&mut gens, 0).ok_or(Error::Invalid("cycles do not span H1"))?;
    let (cy, y) = pick(&mut gens, 1).ok_or(Error::Invalid("cycles do not span H1"))?;
    if (cx[0] * cy[1] - cx[1] * cy[0]).abs() != 1 {
        return Err(Error::Invalid("cycles do not span H1"));
    }
    Ok(Frame { o, x, y, z: positive_cycle_at(m, o)? })
}

fn positive_cycle_at(m: &DimerModel, o: usize) -> Result<Vec<Entry>> {
    for f in &m.pos {
        if let Some(k) = f.iter().position(|&a| m.tail(a) == o) {
            return Ok((0..f.len()).map(|i| Entry::fwd(f[(k + i) % f.len()])).collect());
        }
    }
    Err(Error::Invalid("no positive cycle through the trivial vertex"))
}

/// A frame from explicit cycles; errors if they are not closed at `o` or do
/// not form a basis of `H₁`.
pub fn frame_from(m: &DimerModel, o: usize, x: Vec<Entry>, y: Vec<Entry>, z: Option<Vec<Entry>>) -> Result<Frame> {
    let at_o = |p: &[Entry]| !p.is_empty() && m.path_start(p[0]) == o && m.is_closed_path(p);
    if !at_o(&x) || !at_o(&y) {
        return Err(Error::Invalid("x and y must be closed paths through the trivial vertex"));
    }
    let h1 = H1Basis::new(m)?;
    if h1.rank != 2 {
        return Err(Error::NeedsConsistentTorus);
    }
    let (cx, cy) = (h1.cycle_class(m, &x)?, h1.cycle_class(m, &y)?);
    match (cx[0] * cy[1] - cx[1] * cy[0]).abs() {
        0 => return Err(Error::Invalid("x and y are dependent in homology")),
        1 => {}
        _ => return Err(Error::Invalid("x and y do not form a basis of H1")),
    }
    let z = match z {
        Some(z) => {
            let is_face = m.pos.iter().any(|f| {
                z.len() == f.len() && z.iter().all(|e| !e.inverse) && (0..f.len()).any(|r| (0..f.len()).all(|i| z[i].arrow == f[(r + i) % f.len()]))
            });
            if !at_o(&z) || !is_face {
                return Err(Error::Invalid("z must be a positive cycle through the trivial vertex"));
            }
            z
        }
        None => positive_cycle_at(m, o)?,
    };
    Ok(Frame { o, x, y, z })
}

pub type Point = (i64, i64);

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex lattice polygon with exact counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolygon {
    pub points: Vec<Point>,
    /// Corners in counter-clockwise order.
    pub hull: Vec<Point>,
    pub twice_area: i64,
    pub boundary: i64,
    pub interior: i64,
}

/// Convex hull by the monotone chain, collinear points dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl LatticePolygon {
    pub fn new(points: &[Point]) -> Self {
        let hull = convex_hull(points);
        let n = hull.len();
        let twice_area = if n < 3 { 0 } else { (0..n).map(|i| hull[i].0 * hull[(i + 1) % n].1 - hull[(i + 1) % n].0 * hull[i].1).sum() };
        let boundary = match n {
            0 => 0,
            1 => 1,
            2 => (hull[1].0 - hull[0].0).abs().gcd(&(hull[1].1 - hull[0].1).abs()) + 1,
            _ => (0..n).map(|i| (hull[(i + 1) % n].0 - hull[i].0).abs().gcd(&(hull[(i + 1) % n].1 - hull[i].1).abs())).sum(),
        };
        let interior = if n < 3 { 0 } else { (twice_area - boundary + 2) / 2 };
        let mut pts = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        LatticePolygon { points: pts, hull, twice_area, boundary, interior }
    }

    /// Lattice points on the boundary, counter-clockwise from the first corner.
    pub fn boundary_points(&self) -> Vec<Point> {
        let n = self.hull.len();
        if n < 2 {
            return self.hull.clone();
        }
        let edges = if n == 2 { 1 } else { n };
        let mut out = Vec::new();
        for i in 0..edges {
            let (a, b) = (self.hull[i], self.hull[(i + 1) % n]);
            let g = (b.0 - a.0).abs().gcd(&(b.1 - a.1).abs());
            let last = if n == 2 { g + 1 } else { g };
            for t in 0..last {
                out.push((a.0 + t * (b.0 - a.0) / g, a.1 + t * (b.1 - a.1) / g));
            }
        }
        out
    }

    pub fn contains(&self, p: Point) -> bool {
        let n = self.hull.len();
        match n {
            0 => false,
            1 => self.hull[0] == p,
            2 => cross(self.hull[0], self.hull[1], p) == 0 && self.boundary_points().contains(&p),
            _ => (0..n).all(|i| cross(self.hull[i], self.hull[(i + 1) % n], p) >= 0),
        }
    }

    /// Every lattice point of the closed polygon.
    pub fn lattice_points(&self) -> Vec<Point> {
        if self.hull.is_empty() {
            return Vec::new();
        }
        let (x0, x1) = (self.hull.iter().map(|p| p.0).min().unwrap(), self.hull.iter().map(|p| p.0).max().unwrap());
        let (y0, y1) = (self.hull.iter().map(|p| p.1).min().unwrap(), self.hull.iter().map(|p| p.1).max().unwrap());
        (x0..=x1).flat_map(|x| (y0..=y1).map(move |y| (x, y))).filter(|&p| self.contains(p)).collect()
    }
}

fn twice_area(t: &[Point; 3]) -> i64 {
    cross(t[0], t[1], t[2]).abs()
}

/// Whether two nondegenerate triangles share interior points.
pub fn triangles_overlap(s: &[Point; 3], t: &[Point; 3]) -> bool {
    let separated = |a: &[Point; 3], b: &[Point; 3]| {
        let orient = cross(a[0], a[1], a[2]).signum();
        (0..3).any(|i| {
            let (p, q) = (a[i], a[(i + 1) % 3]);
            b.iter().all(|&r| cross(p, q, r) * orient <= 0)
        })
    };
    !separated(s, t) && !separated(t, s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    pub covered_twice_area: i64,
    pub overlaps: Vec<(usize, usize)>,
    pub outside: Vec<usize>,
    pub ok: bool,
}

/// Checks that triangles tile the polygon: inside it, pairwise interior
/// disjoint, and of total area equal to its area.
pub fn check_tiling(poly: &LatticePolygon, triangles: &[[Point; 3]]) -> Tiling {
    let covered_twice_area = triangles.iter().map(twice_area).sum();
    let mut overlaps = Vec::new();
    for i in 0..triangles.len() {
        for j in i + 1..triangles.len() {
            if triangles_overlap(&triangles[i], &triangles[j]) {
                overlaps.push((i, j));
            }
        }
    }
    let outside: Vec<usize> = (0..triangles.len()).filter(|&i| triangles[i].iter().any(|&p| !poly.contains(p))).collect();
    let ok = overlaps.is_empty() && outside.is_empty() && covered_twice_area == poly.twice_area;
    Tiling { covered_twice_area, overlaps, outside, ok }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricChecks {
    /// `(B, number of zigzag cycles)`.
    pub zigzag_b: (i64, i64),
    /// `(I, genus of the mirror)`.
    pub genus_i: (i64, i64),
    /// `(#Q₀, B + 2I − 2)`.
    pub q0_formula: (i64, i64),
    /// `(boundary lattice points, punctures of the mirror)`.
    pub punctures: (i64, i64),
    /// Lattice points without a stable matching, and points with several.
    pub empty_points: Vec<Point>,
    pub shared_points: Vec<Point>,
    /// Consecutive boundary matchings whose symmetric difference is the arrow
    /// set of exactly one zigzag cycle, and each zigzag cycle met once.
    pub boundary_zigzags: bool,
}

impl ToricChecks {
    pub fn ok(&self) -> bool {
        self.zigzag_b.0 == self.zigzag_b.1
            && self.genus_i.0 == self.genus_i.1
            && self.q0_formula.0 == self.q0_formula.1
            && self.punctures.0 == self.punctures.1
            && self.empty_points.is_empty()
            && self.shared_points.is_empty()
            && self.boundary_zigzags
    }
}

#[derive(Clone, Debug)]
pub struct ToricReport {
    pub frame: Frame,
    pub matchings: Vec<PerfectMatching>,
    /// Indices into `matchings`.
    pub stable: Vec<usize>,
    /// `(P(x), P(y))` per matching.
    pub coords: Vec<Point>,
    pub polygon: LatticePolygon,
    pub checks: ToricChecks,
}

impl ToricReport {
    pub fn stable_at(&self, p: Point) -> Vec<usize> {
        self.stable.iter().copied().filter(|&i| self.coords[i] == p).collect()
    }
}

/// The polygon of stable matchings and its cross-checks against the mirror.
pub fn mirror_polygon(m: &DimerModel, frame: &Frame) -> Result<ToricReport> {
    let rep = check_consistency(m, 0)?;
    if rep.genus != 1 || rep.verdict != Verdict::Consistent {
        return Err(Error::NeedsConsistentTorus);
    }
    let matchings = enumerate_matchings(m);
    let coords: Vec<Point> = matchings.iter().map(|p| (p.degree(&frame.x), p.degree(&frame.y))).collect();
    if matchings.iter().any(|p| p.degree(&frame.z) != 1) {
        return Err(Error::Invalid("z is not a positive cycle"));
    }
    let stable: Vec<usize> = (0..matchings.len()).filter(|&i| stability(m, frame.o, &[&matchings[i]])).collect();
    let pts: Vec<Point> = stable.iter().map(|&i| coords[i]).collect();
    let polygon = LatticePolygon::new(&pts);

    let mut at: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
    for &i in &stable {
        at.entry(coords[i]).or_default().push(i);
    }
    let lattice = polygon.lattice_points();
    let empty_points = lattice.iter().copied().filter(|p| !at.contains_key(p)).collect();
    let shared_points = at.iter().filter(|(_, v)| v.len() > 1).map(|(p, _)| *p).collect();

    let zz = zigzag_cycles(m);
    let zz_sets: Vec<BTreeSet<usize>> = zz.iter().map(|c| c.arrows().into_iter().collect()).collect();
    let bpts = polygon.boundary_points();
    let mut hit = vec![0usize; zz.len()];
    let mut boundary_zigzags = bpts.len() >= 2;
    for i in 0..bpts.len() {
        let (p, q) = (bpts[i], bpts[(i + 1) % bpts.len()]);
        let (Some(&[a]), Some(&[b])) = (at.get(&p).map(Vec::as_slice), at.get(&q).map(Vec::as_slice)) else {
            boundary_zigzags = false;
            continue;
        };
        let (pa, pb): (BTreeSet<usize>, BTreeSet<usize>) =
            (matchings[a].arrows.iter().copied().collect(), matchings[b].arrows.iter().copied().collect());
        let diff: BTreeSet<usize> = pa.symmetric_difference(&pb).copied().collect();
        let found: Vec<usize> = (0..zz.len()).filter(|&z| zz_sets[z] == diff).collect();
        if found.len() == 1 {
            hit[found[0]] += 1;
        } else {
            boundary_zigzags = false;
        }
    }
    boundary_zigzags &= hit.iter().all(|&h| h == 1);

    let mirror = mirror_dimer(m);
    let checks = ToricChecks {
        zigzag_b: (polygon.boundary, zz.len() as i64),
        genus_i: (polygon.interior, mirror.genus()),
        q0_formula: (m.n_vertices() as i64, polygon.boundary + 2 * polygon.interior - 2),
        punctures: (polygon.boundary, mirror.n_vertices() as i64),
        empty_points,
        shared_points,
        boundary_zigzags,
    };
    Ok(ToricReport { frame: frame.clone(), matchings, stable, coords, polygon, checks })
}

#[derive(Clone, Debug)]
pub struct FanReport {
    /// Number of nonempty stable collections.
    pub stable_collections: usize,
    /// Maximal cones as triples of indices into the matchings.
    pub triangles: Vec<[usize; 3]>,
    pub tiling: Tiling,
    /// `(maximal cones, #Q₀)`.
    pub count: (usize, usize),
}

impl FanReport {
    pub fn ok(&self) -> bool {
        self.tiling.ok && self.count.0 == self.count.1
    }
}

/// Stable collections of the report's stable matchings; the maximal cones are
/// the stable triples spanning elementary lattice triangles.
pub fn stable_collections_fan(m: &DimerModel, rep: &ToricReport) -> Result<FanReport> {
    let s = &rep.stable;
    if s.len() > 20 {
        return Err(Error::Exhausted("too many stable matchings for subset enumeration"));
    }
    let mut stable_collections = 0;
    for mask in 1u32..(1 << s.len()) {
        let members: Vec<&PerfectMatching> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| &rep.matchings[s[i]]).collect();
        if stability(m, rep.frame.o, &members) {
            stable_collections += 1;
        }
    }
    let mut triangles = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            for k in j + 1..s.len() {
                let t = [s[i], s[j], s[k]];
                let pts = t.map(|x| rep.coords[x]);
                if twice_area(&pts) == 1 && stability(m, rep.frame.o, &t.map(|x| &rep.matchings[x])) {
                    triangles.push(t);
                }
            }
        }
    }
    let tris: Vec<[Point; 3]> = triangles.iter().map(|t| t.map(|x| rep.coords[x])).collect();
    let tiling = check_tiling(&rep.polygon, &tris);
    Ok(FanReport { stable_collections, count: (triangles.len(), m.n_vertices()), triangles, tiling })
}
