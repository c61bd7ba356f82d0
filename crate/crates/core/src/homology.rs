//! Integer homology of the dimer cell complex via Smith normal form.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quiver::{DimerModel, Entry};
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        IntegerMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        }
    }

    pub fn mul(&self, o: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i][j] += &self.data[i][k] * &o.data[k][j];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.data.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Exact determinant by fraction-free elimination over the rationals.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m: Vec<Vec<Q>> =
            self.data.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return BigInt::zero() };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= &m[c][c];
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = &m[i][c] / &m[c][c];
                let row = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(&row) {
                    *x -= &f * y;
                }
            }
        }
        det.to_integer()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in self.data.iter_mut() {
            r.swap(a, b);
        }
    }
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        let s = self.data[src].clone();
        for (x, y) in self.data[dst].iter_mut().zip(&s) {
            *x += f * y;
        }
    }
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for r in self.data.iter_mut() {
            let y = r[src].clone();
            r[dst] += f * y;
        }
    }
}

/// `d = u · a · v`, `d` diagonal with each entry dividing the next.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.data[i][i].clone()).collect()
    }
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with pivots chosen by smallest absolute value, ties broken row-major.
pub fn smith_normal_form(a: &IntegerMatrix) -> Snf {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &d.data[i][j];
                    if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < d.data[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(d, u, v);
            };
            d.data.swap(t, pi);
            u.data.swap(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..m {
                let f = -(&d.data[i][t] / &d.data[t][t]);
                if !f.is_zero() {
                    d.add_row(i, t, &f);
                    u.add_row(i, t, &f);
                }
                clean &= d.data[i][t].is_zero();
            }
            for j in t + 1..n {
                let f = -(&d.data[t][j] / &d.data[t][t]);
                if !f.is_zero() {
                    d.add_col(j, t, &f);
                    v.add_col(j, t, &f);
                }
                clean &= d.data[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let p = d.data[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.data[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.data[t][t].is_negative() {
            for x in d.data[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u.data[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    finish(d, u, v)
}

fn finish(d: IntegerMatrix, u: IntegerMatrix, v: IntegerMatrix) -> Snf {
    Snf { d, u, v }
}

/// `∂₁ : Z^E → Z^V`.
pub fn boundary1(m: &DimerModel) -> IntegerMatrix {
    let mut b = IntegerMatrix::zeros(m.n_vertices(), m.n_arrows());
    for (a, arr) in m.arrows.iter().enumerate() {
        b.data[arr.head][a] += 1;
        b.data[arr.tail][a] -= 1;
    }
    b
}

/// `∂₂ : Z^F → Z^E`, positive faces first; a negative face bounds the inverse of its cycle.
pub fn boundary2(m: &DimerModel) -> IntegerMatrix {
    let mut b = IntegerMatrix::zeros(m.n_arrows(), m.n_faces());
    for (f, face) in m.pos.iter().enumerate() {
        for &a in face {
            b.data[a][f] += 1;
        }
    }
    for (f, face) in m.neg.iter().enumerate() {
        for &a in face {
            b.data[a][m.pos.len() + f] -= 1;
        }
    }
    b
}

/// Coordinates on `H₁ = ker ∂₁ / im ∂₂`.
#[derive(Clone, Debug)]
pub struct H1Basis {
    pub rank: usize,
    /// Edge vectors of cycles whose classes form the basis (empty after rebasing).
    pub representatives: Vec<Vec<BigInt>>,
    /// Rational functional rows; integral on cycles.
    phi: Vec<Vec<Q>>,
}

impl H1Basis {
    pub fn new(m: &DimerModel) -> Result<Self> {
        let e = m.n_arrows();
        let s2 = smith_normal_form(&boundary2(m));
        let r2 = s2.rank();
        if s2.diagonal().iter().take(r2).any(|x| !x.is_one()) {
            return Err(Error::Invalid("torsion in first homology"));
        }
        let s1 = smith_normal_form(&boundary1(m));
        let r1 = s1.rank();
        let kernel: Vec<Vec<BigInt>> = (r1..e).map(|j| (0..e).map(|i| s1.v.data[i][j].clone()).collect()).collect();
        let mut p = IntegerMatrix::zeros(e - r2, kernel.len());
        for (j, z) in kernel.iter().enumerate() {
            let uz = s2.u.apply(z);
            for i in r2..e {
                p.data[i - r2][j] = uz[i].clone();
            }
        }
        let sp = smith_normal_form(&p);
        let rank = sp.rank();
        let phi = (0..rank)
            .map(|i| {
                let d = Q::from_integer(sp.d.data[i][i].clone());
                (0..e)
                    .map(|c| {
                        let s: BigInt = (r2..e).map(|k| &sp.u.data[i][k - r2] * &s2.u.data[k][c]).sum();
                        Q::from_integer(s) / &d
                    })
                    .collect()
            })
            .collect();
        let representatives = (0..rank)
            .map(|i| {
                (0..e)
                    .map(|row| kernel.iter().enumerate().map(|(j, z)| &z[row] * &sp.v.data[j][i]).sum())
                    .collect()
            })
            .collect();
        Ok(H1Basis { rank, representatives, phi })
    }

    /// Coordinates of a cycle given as an edge vector.
    pub fn coords(&self, z: &[BigInt]) -> Vec<BigInt> {
        self.phi
            .iter()
            .map(|row| {
                let s: Q = row.iter().zip(z).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * Q::from_integer(b.clone())).sum();
                debug_assert!(s.is_integer(), "coordinates of a cycle are integral");
                s.to_integer()
            })
            .collect()
    }

    pub fn coords_i64(&self, z: &[i64]) -> Vec<i64> {
        let z: Vec<BigInt> = z.iter().map(|&x| BigInt::from(x)).collect();
        self.coords(&z).iter().map(|x| i64::try_from(x).expect("coordinate fits i64")).collect()
    }

    /// Class of a closed weak path.
    pub fn cycle_class(&self, m: &DimerModel, path: &[Entry]) -> Result<Vec<i64>> {
        if !m.is_closed_path(path) {
            return Err(Error::NotClosed);
        }
        Ok(self.coords_i64(&m.edge_vector(path)))
    }

    /// Re-express coordinates so that two given classes become the basis (rank 2 only).
    pub fn rebased(&self, x: &[i64], y: &[i64]) -> Result<H1Basis> {
        if self.rank != 2 {
            return Err(Error::Invalid("rebasing needs a rank-2 homology"));
        }
        let det = x[0] * y[1] - x[1] * y[0];
        if det.abs() != 1 {
            return Err(Error::Invalid("cycles do not form a basis of H1"));
        }
        let inv = [[y[1] * det, -y[0] * det], [-x[1] * det, x[0] * det]];
        let phi = (0..2)
            .map(|i| {
                (0..self.phi[0].len())
                    .map(|c| &self.phi[0][c] * crate::q(inv[i][0]) + &self.phi[1][c] * crate::q(inv[i][1]))
                    .collect()
            })
            .collect();
        Ok(H1Basis { rank: 2, representatives: Vec::new(), phi })
    }
}

/// Weak paths from `o` to every vertex along a breadth-first spanning tree,
/// and the tree's arrows.
pub fn tree_paths(m: &DimerModel, o: usize) -> Result<(Vec<Vec<Entry>>, alloc::collections::BTreeSet<usize>)> {
    let mut to: Vec<Option<Vec<Entry>>> = alloc::vec![None; m.n_vertices()];
    to[o] = Some(Vec::new());
    let mut tree = alloc::collections::BTreeSet::new();
    let mut queue = alloc::collections::VecDeque::from([o]);
    while let Some(v) = queue.pop_front() {
        let here = to[v].clone().expect("visited");
        for a in 0..m.n_arrows() {
            for e in [Entry::fwd(a), Entry::inv(a)] {
                let w = m.path_end(e);
                if m.path_start(e) == v && to[w].is_none() {
                    let mut p = here.clone();
                    p.push(e);
                    to[w] = Some(p);
                    tree.insert(a);
                    queue.push_back(w);
                }
            }
        }
    }
    let to = to.into_iter().collect::<Option<Vec<_>>>().ok_or(Error::Disconnected)?;
    Ok((to, tree))
}
