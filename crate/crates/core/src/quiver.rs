//! Embedded quivers, dimer models and their surface invariants.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

/// One step of a boundary cycle: an arrow traversed forward or backward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Entry {
    pub arrow: usize,
    pub inverse: bool,
}

impl Entry {
    pub fn fwd(arrow: usize) -> Self {
        Entry { arrow, inverse: false }
    }
    pub fn inv(arrow: usize) -> Self {
        Entry { arrow, inverse: true }
    }
}

/// The reverse of a weak path.
pub fn inverse(path: &[Entry]) -> Vec<Entry> {
    path.iter().rev().map(|e| Entry { arrow: e.arrow, inverse: !e.inverse }).collect()
}

/// Rotate a cyclic sequence so that it starts at its minimal element.
pub fn rotate_min<T: Ord + Clone>(c: &[T]) -> Vec<T> {
    let Some(k) = (0..c.len()).min_by(|&i, &j| c[i..].iter().chain(&c[..i]).cmp(c[j..].iter().chain(&c[..j])))
    else {
        return Vec::new();
    };
    c[k..].iter().chain(&c[..k]).cloned().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceReport {
    pub euler: i64,
    pub genus: i64,
    pub connected: bool,
    pub face_count: usize,
}

/// A quiver whose boundary cycles cut a closed oriented surface into disks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub cycles: Vec<Vec<Entry>>,
}

fn check_names(vertices: &[String], arrows: &[Arrow]) -> Result<()> {
    let mut seen = BTreeMap::new();
    for v in vertices {
        if seen.insert(v.clone(), ()).is_some() {
            return Err(Error::Duplicate(v.clone()));
        }
    }
    let mut seen = BTreeMap::new();
    for a in arrows {
        if seen.insert(a.name.clone(), ()).is_some() {
            return Err(Error::Duplicate(a.name.clone()));
        }
        if a.tail >= vertices.len() || a.head >= vertices.len() {
            return Err(Error::UnknownVertex(a.name.clone()));
        }
    }
    Ok(())
}

fn connected(nv: usize, arrows: &[Arrow]) -> bool {
    if nv == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for a in arrows {
        let (x, y) = (find(&mut parent, a.tail), find(&mut parent, a.head));
        parent[x] = y;
    }
    let r = find(&mut parent, 0);
    (0..nv).all(|v| find(&mut parent, v) == r)
}

impl EmbeddedQuiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>, cycles: Vec<Vec<Entry>>) -> Result<Self> {
        check_names(&vertices, &arrows)?;
        let q = EmbeddedQuiver { vertices, arrows, cycles };
        let mut seen = vec![[0u32; 2]; q.arrows.len()];
        for (ci, c) in q.cycles.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::EmptyFace(ci));
            }
            if c.len() == 1 {
                return Err(Error::DegenerateFace(ci));
            }
            for (k, e) in c.iter().enumerate() {
                if e.arrow >= q.arrows.len() {
                    return Err(Error::UnknownArrow(alloc::format!("#{}", e.arrow)));
                }
                let next = c[(k + 1) % c.len()];
                if q.end(*e) != q.start(next) {
                    return Err(Error::Chain { cycle: ci, position: k });
                }
                seen[e.arrow][e.inverse as usize] += 1;
            }
        }
        for (a, s) in seen.iter().enumerate() {
            let name = q.arrows[a].name.clone();
            match *s {
                [1, 1] => {}
                [0, _] | [_, 0] if s[0] + s[1] < 2 => {
                    return Err(Error::Coverage { arrow: name, detail: "not covered by two face sides" })
                }
                _ => {
                    return Err(Error::Coverage {
                        arrow: name,
                        detail: "traversed twice in the same direction (non-orientable gluing)",
                    })
                }
            }
        }
        if !connected(q.vertices.len(), &q.arrows) {
            return Err(Error::Disconnected);
        }
        Ok(q)
    }

    pub fn start(&self, e: Entry) -> usize {
        let a = &self.arrows[e.arrow];
        if e.inverse { a.head } else { a.tail }
    }

    pub fn end(&self, e: Entry) -> usize {
        let a = &self.arrows[e.arrow];
        if e.inverse { a.tail } else { a.head }
    }

    pub fn surface(&self) -> Result<SurfaceReport> {
        let euler = self.vertices.len() as i64 - self.arrows.len() as i64 + self.cycles.len() as i64;
        if euler % 2 != 0 {
            return Err(Error::OddEuler(euler));
        }
        Ok(SurfaceReport { euler, genus: (2 - euler) / 2, connected: true, face_count: self.cycles.len() })
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Reinterpret as a dimer if every cycle is real or the inverse of a real cycle.
    pub fn to_dimer(&self) -> Result<DimerModel> {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for c in &self.cycles {
            if c.iter().all(|e| !e.inverse) {
                pos.push(c.iter().map(|e| e.arrow).collect());
            } else if c.iter().all(|e| e.inverse) {
                neg.push(c.iter().rev().map(|e| e.arrow).collect());
            } else {
                return Err(Error::NotADimer("a boundary cycle mixes directions"));
            }
        }
        DimerModel::new(self.vertices.clone(), self.arrows.clone(), pos, neg)
    }
}

/// A dimer model: every boundary cycle is a real cycle (positive face) or the
/// inverse of one (negative face, stored as the real cycle).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimerModel {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub pos: Vec<Vec<usize>>,
    pub neg: Vec<Vec<usize>>,
    pos_loc: Vec<(usize, usize)>,
    neg_loc: Vec<(usize, usize)>,
}

fn locate(faces: &[Vec<usize>], n: usize, arrows: &[Arrow], sign: &'static str) -> Result<Vec<(usize, usize)>> {
    let mut loc = vec![None; n];
    for (f, face) in faces.iter().enumerate() {
        for (i, &a) in face.iter().enumerate() {
            if a >= n {
                return Err(Error::UnknownArrow(alloc::format!("#{a}")));
            }
            if loc[a].replace((f, i)).is_some() {
                return Err(Error::Coverage { arrow: arrows[a].name.clone(), detail: sign });
            }
        }
    }
    loc.into_iter()
        .enumerate()
        .map(|(a, l)| {
            l.ok_or_else(|| Error::Coverage {
                arrow: arrows[a].name.clone(),
                detail: "not covered by a face of each sign",
            })
        })
        .collect()
}

impl DimerModel {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>, pos: Vec<Vec<usize>>, neg: Vec<Vec<usize>>) -> Result<Self> {
        check_names(&vertices, &arrows)?;
        let n = arrows.len();
        let pos_loc = locate(&pos, n, &arrows, "lies in two positive faces")?;
        let neg_loc = locate(&neg, n, &arrows, "lies in two negative faces")?;
        let m = DimerModel { vertices, arrows, pos, neg, pos_loc, neg_loc };
        for (fi, face) in m.pos.iter().chain(&m.neg).enumerate() {
            if face.len() == 1 {
                return Err(Error::DegenerateFace(fi));
            }
            for k in 0..face.len() {
                let (a, b) = (face[k], face[(k + 1) % face.len()]);
                if m.arrows[a].head != m.arrows[b].tail {
                    return Err(Error::Chain { cycle: fi, position: k });
                }
            }
        }
        if !connected(m.vertices.len(), &m.arrows) {
            return Err(Error::Disconnected);
        }
        Ok(m)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }
    pub fn n_faces(&self) -> usize {
        self.pos.len() + self.neg.len()
    }
    pub fn tail(&self, a: usize) -> usize {
        self.arrows[a].tail
    }
    pub fn head(&self, a: usize) -> usize {
        self.arrows[a].head
    }
    pub fn name(&self, a: usize) -> &str {
        &self.arrows[a].name
    }

    /// (positive face, index in it)
    pub fn pos_loc(&self, a: usize) -> (usize, usize) {
        self.pos_loc[a]
    }
    pub fn neg_loc(&self, a: usize) -> (usize, usize) {
        self.neg_loc[a]
    }

    fn step(faces: &[Vec<usize>], (f, i): (usize, usize), d: isize) -> usize {
        let c = &faces[f];
        c[(i as isize + d).rem_euclid(c.len() as isize) as usize]
    }
    pub fn pos_next(&self, a: usize) -> usize {
        Self::step(&self.pos, self.pos_loc[a], 1)
    }
    pub fn pos_prev(&self, a: usize) -> usize {
        Self::step(&self.pos, self.pos_loc[a], -1)
    }
    pub fn neg_next(&self, a: usize) -> usize {
        Self::step(&self.neg, self.neg_loc[a], 1)
    }
    pub fn neg_prev(&self, a: usize) -> usize {
        Self::step(&self.neg, self.neg_loc[a], -1)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// The embedded quiver: negative faces become inverse boundary cycles.
    pub fn to_quiver(&self) -> EmbeddedQuiver {
        let mut cycles: Vec<Vec<Entry>> =
            self.pos.iter().map(|f| f.iter().map(|&a| Entry::fwd(a)).collect()).collect();
        cycles.extend(self.neg.iter().map(|f| f.iter().rev().map(|&a| Entry::inv(a)).collect()));
        EmbeddedQuiver { vertices: self.vertices.clone(), arrows: self.arrows.clone(), cycles }
    }

    pub fn surface(&self) -> Result<SurfaceReport> {
        let euler = self.n_vertices() as i64 - self.n_arrows() as i64 + self.n_faces() as i64;
        if euler % 2 != 0 {
            return Err(Error::OddEuler(euler));
        }
        Ok(SurfaceReport { euler, genus: (2 - euler) / 2, connected: true, face_count: self.n_faces() })
    }

    pub fn genus(&self) -> i64 {
        (2 - (self.n_vertices() as i64 - self.n_arrows() as i64 + self.n_faces() as i64)) / 2
    }

    /// The same dimer with every face rotated to start at its minimal arrow
    /// and the face lists sorted.
    pub fn canonical(&self) -> DimerModel {
        let canon = |fs: &[Vec<usize>]| {
            let mut v: Vec<Vec<usize>> = fs.iter().map(|f| rotate_min(f)).collect();
            v.sort();
            v
        };
        DimerModel::new(self.vertices.clone(), self.arrows.clone(), canon(&self.pos), canon(&self.neg))
            .expect("rotation keeps validity")
    }

    /// Isomorphism that fixes arrow names and may rename vertices.
    pub fn same_up_to_vertex_names(&self, other: &DimerModel) -> bool {
        if self.n_arrows() != other.n_arrows() || self.n_vertices() != other.n_vertices() {
            return false;
        }
        let mut amap = Vec::with_capacity(self.n_arrows());
        for a in &self.arrows {
            match other.arrow_index(&a.name) {
                Some(b) => amap.push(b),
                None => return false,
            }
        }
        let mut vmap: Vec<Option<usize>> = vec![None; self.n_vertices()];
        for (a, arr) in self.arrows.iter().enumerate() {
            let o = &other.arrows[amap[a]];
            for (v, w) in [(arr.tail, o.tail), (arr.head, o.head)] {
                match vmap[v] {
                    None => vmap[v] = Some(w),
                    Some(x) if x != w => return false,
                    _ => {}
                }
            }
        }
        let mut hit = vec![false; other.n_vertices()];
        for w in vmap.iter().flatten() {
            hit[*w] = true;
        }
        if hit.iter().any(|h| !h) {
            return false;
        }
        let faces = |fs: &[Vec<usize>], m: &dyn Fn(usize) -> usize| {
            let mut v: Vec<Vec<usize>> = fs.iter().map(|f| rotate_min(&f.iter().map(|&a| m(a)).collect::<Vec<_>>())).collect();
            v.sort();
            v
        };
        faces(&self.pos, &|a| amap[a]) == faces(&other.pos, &|a| a)
            && faces(&self.neg, &|a| amap[a]) == faces(&other.neg, &|a| a)
    }

    /// Arrow indicator vector of a weak path (entries may be inverse).
    pub fn edge_vector(&self, path: &[Entry]) -> Vec<i64> {
        let mut v = vec![0i64; self.n_arrows()];
        for e in path {
            v[e.arrow] += if e.inverse { -1 } else { 1 };
        }
        v
    }

    pub fn path_start(&self, e: Entry) -> usize {
        if e.inverse { self.head(e.arrow) } else { self.tail(e.arrow) }
    }
    pub fn path_end(&self, e: Entry) -> usize {
        if e.inverse { self.tail(e.arrow) } else { self.head(e.arrow) }
    }

    /// Whether a weak path is closed and chains.
    pub fn is_closed_path(&self, path: &[Entry]) -> bool {
        if path.is_empty() {
            return true;
        }
        (0..path.len()).all(|k| self.path_end(path[k]) == self.path_start(path[(k + 1) % path.len()]))
    }
}

impl DimerModel {
    /// Build from names; faces are whitespace separated arrow names in traversal order.
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)], pos: &[&str], neg: &[&str]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|v| String::from(*v)).collect();
        let find_v = |n: &str| vs.iter().position(|v| v == n).ok_or_else(|| Error::UnknownVertex(n.into()));
        let mut arr = Vec::new();
        for (n, t, h) in arrows {
            arr.push(Arrow { name: (*n).into(), tail: find_v(t)?, head: find_v(h)? });
        }
        let face = |s: &str| -> Result<Vec<usize>> {
            s.split_whitespace()
                .map(|t| arr.iter().position(|a| a.name == t).ok_or_else(|| Error::UnknownArrow(t.into())))
                .collect()
        };
        let p = pos.iter().map(|s| face(s)).collect::<Result<Vec<_>>>()?;
        let n = neg.iter().map(|s| face(s)).collect::<Result<Vec<_>>>()?;
        DimerModel::new(vs.clone(), arr.clone(), p, n)
    }
}
