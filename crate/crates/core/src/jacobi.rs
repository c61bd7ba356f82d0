//! Normal forms in the Jacobi algebra of a consistent torus dimer.
//!
//! A path is determined in the Jacobi algebra by its endpoints, its class in
//! `H₁` relative to a spanning-tree path system, and its degree under a
//! reference perfect matching `P₀`. Products compose right to left: `f · g`
//! traverses `g` first.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::cover::{check_consistency, Verdict};
use crate::error::{Error, Result};
use crate::homology::{tree_paths, H1Basis};
use crate::lincomb::LinComb;
use crate::quiver::{inverse, DimerModel, Entry};
use crate::toric::{enumerate_matchings, PerfectMatching};

pub type Class = [i64; 2];

/// A path up to the Jacobi relations. Equality and ordering ignore `path`.
#[derive(Clone, Debug)]
pub struct JacElement {
    pub tail: usize,
    pub head: usize,
    pub class: Class,
    pub deg: i64,
    /// A witness: arrows in traversal order.
    pub path: Vec<usize>,
}

impl JacElement {
    fn key(&self) -> (usize, usize, Class, i64) {
        (self.tail, self.head, self.class, self.deg)
    }

    pub fn is_trivial(&self) -> bool {
        self.deg == 0 && self.path.is_empty()
    }
}

impl PartialEq for JacElement {
    fn eq(&self, o: &Self) -> bool {
        self.key() == o.key()
    }
}

impl Eq for JacElement {}

impl PartialOrd for JacElement {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for JacElement {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key().cmp(&o.key())
    }
}

/// Finite linear combination of normal forms.
pub type JacComb = LinComb<JacElement>;

/// The central element: a positive cycle at every vertex, in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralElement {
    pub cycles: Vec<Vec<usize>>,
}

impl CentralElement {
    /// The first positive face through each vertex, rotated to start there.
    pub fn first(m: &DimerModel) -> Result<Self> {
        let cycles = (0..m.n_vertices())
            .map(|v| positive_cycles_at(m, v).into_iter().next().ok_or(Error::Invalid("vertex on no positive face")))
            .collect::<Result<_>>()?;
        Ok(CentralElement { cycles })
    }
}

/// Every positive face through `v`, rotated to start at `v`.
pub fn positive_cycles_at(m: &DimerModel, v: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for f in &m.pos {
        for k in (0..f.len()).filter(|&k| m.tail(f[k]) == v) {
            out.push((0..f.len()).map(|i| f[(k + i) % f.len()]).collect());
        }
    }
    out
}

/// The rest of the positive face of `a`, from `h(a)` to `t(a)`.
pub fn bar(m: &DimerModel, a: usize) -> Vec<usize> {
    let (f, k) = m.pos_loc(a);
    let face = &m.pos[f];
    (1..face.len()).map(|i| face[(k + i) % face.len()]).collect()
}

/// The rest of the negative face of `a`, from `h(a)` to `t(a)`.
pub fn neg_bar(m: &DimerModel, a: usize) -> Vec<usize> {
    let (f, k) = m.neg_loc(a);
    let face = &m.neg[f];
    (1..face.len()).map(|i| face[(k + i) % face.len()]).collect()
}

#[derive(Clone, Debug)]
pub struct Jacobi {
    pub m: DimerModel,
    pub p0: PerfectMatching,
    pub matchings: Vec<PerfectMatching>,
    pub ell: CentralElement,
    /// Class of the fundamental loop of each arrow; zero on tree arrows.
    pub arrow_class: Vec<Class>,
    /// Fixed search radius; `None` means twice the largest query coordinate.
    pub radius: Option<i64>,
    tree_to: Vec<Vec<Entry>>,
    /// Per matching `P`, the class functional of `P − P₀`.
    lambda: Vec<Class>,
}

struct Search {
    r: i64,
    dist: Vec<i64>,
    pred: Vec<Option<(usize, usize)>>,
}

impl Search {
    fn slot(&self, nv: usize, v: usize, c: Class) -> Option<usize> {
        let w = (2 * self.r + 1) as usize;
        if c[0].abs() > self.r || c[1].abs() > self.r {
            return None;
        }
        Some((((c[0] + self.r) as usize) * w + (c[1] + self.r) as usize) * nv + v)
    }
}

impl Jacobi {
    /// Refuses anything but a certified-consistent torus.
    pub fn new(m: &DimerModel, p0: Option<PerfectMatching>) -> Result<Self> {
        let rep = check_consistency(m, 0)?;
        if rep.genus != 1 || rep.verdict != Verdict::Consistent {
            return Err(Error::NeedsConsistentTorus);
        }
        let matchings = enumerate_matchings(m);
        let p0 = match p0 {
            Some(p) if matchings.contains(&p) => p,
            Some(_) => return Err(Error::Invalid("not a perfect matching")),
            None => matchings.first().cloned().ok_or(Error::Invalid("no perfect matching"))?,
        };
        let h1 = H1Basis::new(m)?;
        let (tree_to, tree) = tree_paths(m, 0)?;
        let mut arrow_class = vec![[0, 0]; m.n_arrows()];
        for a in (0..m.n_arrows()).filter(|a| !tree.contains(a)) {
            let mut p = tree_to[m.tail(a)].clone();
            p.push(Entry::fwd(a));
            p.extend(inverse(&tree_to[m.head(a)]));
            let c = h1.cycle_class(m, &p)?;
            arrow_class[a] = [c[0], c[1]];
        }
        let lambda = matchings.iter().map(|p| functional(m, &arrow_class, &tree_to, p, &p0)).collect::<Result<_>>()?;
        let ell = CentralElement::first(m)?;
        Ok(Jacobi { m: m.clone(), p0, matchings, ell, arrow_class, radius: None, tree_to, lambda })
    }

    pub fn with_radius(mut self, r: i64) -> Self {
        self.radius = Some(r);
        self
    }

    fn weight(&self, a: usize) -> i64 {
        self.p0.contains(a) as i64
    }

    pub fn trivial(&self, v: usize) -> JacElement {
        JacElement { tail: v, head: v, class: [0, 0], deg: 0, path: Vec::new() }
    }

    pub fn arrow(&self, a: usize) -> JacElement {
        JacElement { tail: self.m.tail(a), head: self.m.head(a), class: self.arrow_class[a], deg: self.weight(a), path: vec![a] }
    }

    /// Normal form of a nonempty real path, arrows in traversal order.
    pub fn normal_form(&self, path: &[usize]) -> Result<JacElement> {
        let (&first, _) = path.split_first().ok_or(Error::Invalid("empty path has no endpoints"))?;
        let mut e = self.arrow(first);
        for &a in &path[1..] {
            e = self.multiply(&self.arrow(a), &e)?;
        }
        Ok(e)
    }

    /// `f · g`: `g` first, then `f`.
    pub fn multiply(&self, f: &JacElement, g: &JacElement) -> Result<JacElement> {
        if f.tail != g.head {
            return Err(Error::NotComposable);
        }
        let mut path = g.path.clone();
        path.extend_from_slice(&f.path);
        Ok(JacElement {
            tail: g.tail,
            head: f.head,
            class: [f.class[0] + g.class[0], f.class[1] + g.class[1]],
            deg: f.deg + g.deg,
            path,
        })
    }

    /// Bilinear extension; incomposable pairs contribute zero.
    pub fn multiply_comb(&self, f: &JacComb, g: &JacComb) -> JacComb {
        let mut out = JacComb::zero();
        for (x, cx) in f.iter() {
            for (y, cy) in g.iter() {
                if let Ok(z) = self.multiply(x, y) {
                    out.add_term(cx * cy, z);
                }
            }
        }
        out
    }

    /// `ℓ` at `v` from the chosen positive cycle.
    pub fn ell_at(&self, v: usize) -> JacElement {
        self.normal_form(&self.ell.cycles[v]).expect("cycles are nonempty paths")
    }

    /// `ℓ^k · f`.
    pub fn ell_power(&self, f: &JacElement, k: i64) -> JacElement {
        let mut g = f.clone();
        for _ in 0..k {
            g = self.multiply(&self.ell_at(g.head), &g).expect("ℓ is a loop");
        }
        g
    }

    /// Lower bound on the `P₀`-degree of a path in a sector; every perfect
    /// matching must give it nonnegative degree.
    pub fn degree_bound(&self, tail: usize, head: usize, class: Class) -> i64 {
        let tree: Vec<Entry> = inverse(&self.tree_to[tail]).into_iter().chain(self.tree_to[head].iter().copied()).collect();
        self.matchings
            .iter()
            .zip(&self.lambda)
            .map(|(p, l)| {
                let shift = p.degree(&tree) - self.p0.degree(&tree) + l[0] * class[0] + l[1] * class[1];
                -shift
            })
            .max()
            .unwrap_or(0)
            .max(0)
    }

    fn radius_for(&self, class: Class) -> i64 {
        self.radius.unwrap_or_else(|| (2 * class[0].abs().max(class[1].abs())).max(2))
    }

    fn search(&self, tail: usize, r: i64) -> Search {
        let nv = self.m.n_vertices();
        let w = (2 * r + 1) as usize;
        let mut s = Search { r, dist: vec![i64::MAX; w * w * nv], pred: vec![None; w * w * nv] };
        let start = s.slot(nv, tail, [0, 0]).expect("origin in box");
        s.dist[start] = 0;
        let mut queue = VecDeque::from([(tail, [0i64, 0i64])]);
        while let Some((v, c)) = queue.pop_front() {
            let here = s.slot(nv, v, c).expect("queued states are in the box");
            let d = s.dist[here];
            for a in (0..self.m.n_arrows()).filter(|&a| self.m.tail(a) == v) {
                let ac = self.arrow_class[a];
                let nc = [c[0] + ac[0], c[1] + ac[1]];
                let Some(there) = s.slot(nv, self.m.head(a), nc) else { continue };
                let nd = d + self.weight(a);
                if nd < s.dist[there] {
                    s.dist[there] = nd;
                    s.pred[there] = Some((here, a));
                    if self.weight(a) == 0 {
                        queue.push_front((self.m.head(a), nc));
                    } else {
                        queue.push_back((self.m.head(a), nc));
                    }
                }
            }
        }
        s
    }

    /// Minimal degree and a minimal path in a sector. Certified by
    /// [`Self::degree_bound`]; an uncertified search is an error.
    pub fn minimal(&self, tail: usize, head: usize, class: Class) -> Result<JacElement> {
        let r = self.radius_for(class);
        let bound = self.degree_bound(tail, head, class);
        let s = self.search(tail, r);
        let nv = self.m.n_vertices();
        let target = s.slot(nv, head, class).ok_or(Error::Exhausted("class radius"))?;
        if s.dist[target] != bound {
            return Err(Error::Exhausted("class radius"));
        }
        let mut path = Vec::new();
        let mut at = target;
        while let Some((prev, a)) = s.pred[at] {
            path.push(a);
            at = prev;
        }
        path.reverse();
        Ok(JacElement { tail, head, class, deg: bound, path })
    }

    pub fn min_degree(&self, tail: usize, head: usize, class: Class) -> Result<i64> {
        self.minimal(tail, head, class).map(|e| e.deg)
    }

    /// A path with the given normal form, if one exists.
    pub fn realize(&self, tail: usize, head: usize, class: Class, deg: i64) -> Result<Option<JacElement>> {
        let min = self.minimal(tail, head, class)?;
        if deg < min.deg {
            return Ok(None);
        }
        let mut e = min;
        for _ in 0..deg - e.deg {
            let mut path = self.ell.cycles[tail].clone();
            path.extend_from_slice(&e.path);
            e = JacElement { deg: e.deg + 1, path, ..e };
        }
        Ok(Some(e))
    }

    pub fn is_minimal(&self, f: &JacElement) -> Result<bool> {
        Ok(self.min_degree(f.tail, f.head, f.class)? == f.deg)
    }

    /// `g` with `f = a · g`.
    pub fn divide_left(&self, a: usize, f: &JacElement) -> Result<Option<JacElement>> {
        if self.m.head(a) != f.head {
            return Err(Error::NotComposable);
        }
        let ac = self.arrow_class[a];
        self.realize(f.tail, self.m.tail(a), [f.class[0] - ac[0], f.class[1] - ac[1]], f.deg - self.weight(a))
    }

    /// `g` with `f = g · b`.
    pub fn divide_right(&self, f: &JacElement, b: usize) -> Result<Option<JacElement>> {
        if self.m.tail(b) != f.tail {
            return Err(Error::NotComposable);
        }
        let bc = self.arrow_class[b];
        self.realize(self.m.head(b), f.head, [f.class[0] - bc[0], f.class[1] - bc[1]], f.deg - self.weight(b))
    }

    /// `g` with `f = x · g` for a path `x` given in traversal order.
    pub fn divide_left_by(&self, x: &[usize], f: &JacElement) -> Result<Option<JacElement>> {
        let x = self.normal_form(x)?;
        if x.head != f.head {
            return Err(Error::NotComposable);
        }
        self.realize(f.tail, x.tail, [f.class[0] - x.class[0], f.class[1] - x.class[1]], f.deg - x.deg)
    }

    /// `g` with `f = g · x`.
    pub fn divide_right_by(&self, f: &JacElement, x: &[usize]) -> Result<Option<JacElement>> {
        let x = self.normal_form(x)?;
        if x.tail != f.tail {
            return Err(Error::NotComposable);
        }
        self.realize(x.head, f.head, [f.class[0] - x.class[0], f.class[1] - x.class[1]], f.deg - x.deg)
    }
}

/// `λ` with `(P − P₀)(loop) = λ · class(loop)` for closed loops.
fn functional(m: &DimerModel, arrow_class: &[Class], tree_to: &[Vec<Entry>], p: &PerfectMatching, p0: &PerfectMatching) -> Result<Class> {
    let mut rows: Vec<(Class, i64)> = Vec::new();
    for a in (0..m.n_arrows()).filter(|&a| arrow_class[a] != [0, 0]) {
        let mut l = tree_to[m.tail(a)].clone();
        l.push(Entry::fwd(a));
        l.extend(inverse(&tree_to[m.head(a)]));
        rows.push((arrow_class[a], p.degree(&l) - p0.degree(&l)));
    }
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let ((c1, v1), (c2, v2)) = (rows[i], rows[j]);
            let det = c1[0] * c2[1] - c1[1] * c2[0];
            if det == 0 {
                continue;
            }
            let x = v1 * c2[1] - v2 * c1[1];
            let y = c1[0] * v2 - c2[0] * v1;
            if x % det != 0 || y % det != 0 {
                return Err(Error::Invalid("matching difference is not integral on H1"));
            }
            let l = [x / det, y / det];
            if rows.iter().any(|(c, v)| l[0] * c[0] + l[1] * c[1] != *v) {
                return Err(Error::Invalid("matching difference is not a cocycle"));
            }
            return Ok(l);
        }
    }
    Err(Error::NeedsConsistentTorus)
}

/// Free-standing form of [`Jacobi::normal_form`].
pub fn jac_normal_form(m: &DimerModel, p0: &PerfectMatching, path: &[usize]) -> Result<JacElement> {
    Jacobi::new(m, Some(p0.clone()))?.normal_form(path)
}

pub fn jac_equal(f: &JacElement, g: &JacElement) -> bool {
    f == g
}
