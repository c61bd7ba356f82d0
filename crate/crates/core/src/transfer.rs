//! Homotopy transfer of an `A∞` structure to a deformation retract, by sums
//! over planar rooted trees.
//!
//! Given a structure `m₂, m₃, …` (with differential `m₁ = d`), a codifferential
//! `h` with `ιπ = 1 − dh − hd`, and the retract maps `ι`, `π`, the transferred
//! `m′_n` is `π` applied to the sum over planar trees with `n` leaves: leaves
//! are `ι`, internal nodes are `h ∘ m_k`, the root is `m_k`.
//!
//! Signs come from the suspended picture, where every node is odd and every
//! edge map even, so only the suspension isomorphism contributes: a node with
//! inputs `y₁, …, y_k` picks up `(−1)^{Σ (k − i)|y_i|}`, and the edges carry
//! `−h`. With these choices the result satisfies `[M_k]` in the convention of
//! [`crate::verify`].

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Debug};

use crate::error::Result;
use crate::lincomb::LinComb;
use crate::{q, Q};

/// A rooted planar tree; internal nodes have at least two children.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlanarTree {
    Leaf,
    Node(Vec<PlanarTree>),
}

impl PlanarTree {
    pub fn leaves(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node(c) => c.iter().map(PlanarTree::leaves).sum(),
        }
    }

    /// Canonical serialization: `x` for a leaf, `(…)` for a node.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        self.write(&mut s);
        s
    }

    fn write(&self, s: &mut String) {
        match self {
            PlanarTree::Leaf => s.push('x'),
            PlanarTree::Node(c) => {
                s.push('(');
                for t in c {
                    t.write(s);
                }
                s.push(')');
            }
        }
    }

    /// Internal nodes of the tree.
    pub fn nodes(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(c) => 1 + c.iter().map(PlanarTree::nodes).sum::<usize>(),
        }
    }

    /// The left comb `(((x x) x) … x)`.
    pub fn left_comb(n: usize) -> PlanarTree {
        let mut t = PlanarTree::Leaf;
        for _ in 1..n {
            t = PlanarTree::Node(vec![t, PlanarTree::Leaf]);
        }
        t
    }
}

impl Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Ordered compositions of `n` into `k ≥ 2` positive parts.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            if prefix.len() >= 2 {
                out.push(prefix.clone());
            }
            return;
        }
        for first in 1..=n {
            prefix.push(first);
            go(n - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

/// Every planar tree with `n` leaves, in a fixed deterministic order.
pub fn enumerate_trees(n: usize) -> Vec<PlanarTree> {
    if n == 1 {
        return vec![PlanarTree::Leaf];
    }
    let mut out = Vec::new();
    for parts in compositions(n) {
        let mut acc: Vec<Vec<PlanarTree>> = vec![Vec::new()];
        for &p in &parts {
            let subs = enumerate_trees(p);
            let mut next = Vec::with_capacity(acc.len() * subs.len());
            for a in &acc {
                for t in &subs {
                    let mut b = a.clone();
                    b.push(t.clone());
                    next.push(b);
                }
            }
            acc = next;
        }
        out.extend(acc.into_iter().map(PlanarTree::Node));
    }
    out
}

/// Data for the transfer: the big complex with basis `B`, the retract with
/// basis `M`.
pub trait TransferDatum {
    type B: Ord + Clone + Debug;
    type M: Ord + Clone + Debug;
    fn degree(&self, b: &Self::B) -> u8;
    /// `m_k` for `k ≥ 2` on basis elements, `args[0]` outermost.
    fn mu(&self, args: &[Self::B]) -> LinComb<Self::B>;
    fn h(&self, x: &LinComb<Self::B>) -> Result<LinComb<Self::B>>;
    fn iota(&self, m: &Self::M) -> Result<LinComb<Self::B>>;
    fn pi(&self, x: &LinComb<Self::B>) -> Result<LinComb<Self::M>>;
}

fn suspension_sign(degs: &[u8]) -> bool {
    let k = degs.len();
    degs.iter().enumerate().map(|(i, &d)| (k - 1 - i) * d as usize).sum::<usize>() % 2 == 1
}

/// `m_k` extended multilinearly, with the node sign.
fn node<T: TransferDatum>(td: &T, inputs: &[LinComb<T::B>]) -> LinComb<T::B> {
    let mut out = LinComb::zero();
    let mut idx = vec![0usize; inputs.len()];
    let terms: Vec<Vec<(&T::B, &Q)>> = inputs.iter().map(|x| x.iter().collect()).collect();
    if terms.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let args: Vec<T::B> = idx.iter().zip(&terms).map(|(&i, t)| t[i].0.clone()).collect();
        let mut c = q(1);
        for (&i, t) in idx.iter().zip(&terms) {
            c *= t[i].1;
        }
        let degs: Vec<u8> = args.iter().map(|b| td.degree(b)).collect();
        if suspension_sign(&degs) {
            c = -c;
        }
        out.add_scaled(&c, &td.mu(&args));
        let mut p = 0;
        loop {
            if p == idx.len() {
                return out;
            }
            idx[p] += 1;
            if idx[p] < terms[p].len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// The value of a subtree before `π`, on consecutive arguments.
fn eval<T: TransferDatum>(td: &T, t: &PlanarTree, args: &[T::M]) -> Result<LinComb<T::B>> {
    match t {
        PlanarTree::Leaf => td.iota(&args[0]),
        PlanarTree::Node(children) => {
            let mut inputs = Vec::with_capacity(children.len());
            let mut at = 0;
            for c in children {
                let n = c.leaves();
                let v = eval(td, c, &args[at..at + n])?;
                inputs.push(if matches!(c, PlanarTree::Leaf) { v } else { td.h(&v)?.neg() });
                at += n;
            }
            Ok(node(td, &inputs))
        }
    }
}

fn output_sign<T: TransferDatum>(td: &T, args: &[T::M]) -> Result<bool> {
    let mut degs = Vec::with_capacity(args.len());
    for a in args {
        let x = td.iota(a)?;
        degs.push(x.iter().next().map_or(0, |(b, _)| td.degree(b)));
    }
    Ok(suspension_sign(&degs))
}

/// Contribution of one tree to `m′_n(args)`.
pub fn evaluate_tree<T: TransferDatum>(td: &T, t: &PlanarTree, args: &[T::M]) -> Result<LinComb<T::M>> {
    let v = td.pi(&eval(td, t, args)?)?;
    Ok(if output_sign(td, args)? { v.neg() } else { v })
}

/// `m′_n(args)` as the sum over `trees` (all trees with `args.len()` leaves).
pub fn transfer_with_trees<T: TransferDatum>(td: &T, trees: &[PlanarTree], args: &[T::M]) -> Result<LinComb<T::M>> {
    let mut out = LinComb::zero();
    for t in trees {
        out.add(&evaluate_tree(td, t, args)?);
    }
    Ok(out)
}

/// `m′_n(args)` summed over every planar tree.
pub fn transfer_products<T: TransferDatum>(td: &T, args: &[T::M]) -> Result<LinComb<T::M>> {
    if args.len() < 2 {
        return Ok(LinComb::zero());
    }
    transfer_with_trees(td, &enumerate_trees(args.len()), args)
}

/// The same sum organised by intervals: `λ(i, j)` is the value of all trees on
/// `args[i..j]`, computed once per interval.
pub fn transfer_recursive<T: TransferDatum>(td: &T, args: &[T::M], max_arity: usize) -> Result<LinComb<T::M>> {
    let n = args.len();
    if n < 2 {
        return Ok(LinComb::zero());
    }
    // edge[i][j]: the input fed to a parent from args[i..j] (ι for a leaf, −hλ otherwise).
    let mut edge: Vec<Vec<LinComb<T::B>>> = vec![vec![LinComb::zero(); n + 1]; n + 1];
    let mut lambda: Vec<Vec<LinComb<T::B>>> = vec![vec![LinComb::zero(); n + 1]; n + 1];
    for i in 0..n {
        edge[i][i + 1] = td.iota(&args[i])?;
    }
    for len in 2..=n {
        for i in 0..=n - len {
            let j = i + len;
            let mut total = LinComb::zero();
            for parts in compositions(len) {
                if parts.len() > max_arity {
                    continue;
                }
                let mut at = i;
                let mut inputs = Vec::with_capacity(parts.len());
                for p in parts {
                    inputs.push(edge[at][at + p].clone());
                    at += p;
                }
                total.add(&node(td, &inputs));
            }
            if len < n {
                edge[i][j] = td.h(&total)?.neg();
            }
            lambda[i][j] = total;
        }
    }
    let v = td.pi(&lambda[0][n])?;
    Ok(if output_sign(td, args)? { v.neg() } else { v })
}
