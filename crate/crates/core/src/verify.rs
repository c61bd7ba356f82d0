//! Checking the `A∞` identities `[M_k]` on basis tuples.
//!
//! The sign of the term `µ(f₁, …, f_s, µ_r(f_{s+1}, …, f_{s+r}), …, f_k)` is
//! `s + r·t + (2 − r)(|f₁| + … + |f_s|)` with `t = k − r − s`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::gentle::{GentleCategory, SpiralPath};
use crate::lincomb::LinComb;
use crate::mukappa::{mu_paths, KappaMap, Strategy};

/// A (possibly truncated) `A∞` structure presented on a basis.
pub trait AInfinity {
    type B: Ord + Clone + Debug;
    fn degree(&self, b: &Self::B) -> u8;
    fn source(&self, b: &Self::B) -> usize;
    fn target(&self, b: &Self::B) -> usize;
    /// `µ_k(args)`, `args[0]` outermost; only called on composable chains.
    fn mu(&self, args: &[Self::B]) -> LinComb<Self::B>;
}

/// Left-hand side of `[M_k]` on one composable tuple.
pub fn m_identity<S: AInfinity>(s: &S, args: &[S::B]) -> LinComb<S::B> {
    let k = args.len();
    let mut total = LinComb::zero();
    for r in 2..k {
        for st in 0..=k - r {
            let inner = s.mu(&args[st..st + r]);
            if inner.is_zero() {
                continue;
            }
            let t = k - r - st;
            let degs: usize = args[..st].iter().map(|b| s.degree(b) as usize).sum();
            let sign = st + r * t + (2 - r as i64).rem_euclid(2) as usize * degs;
            let mut outer_args = args[..st].to_vec();
            outer_args.push(args[0].clone());
            outer_args.extend_from_slice(&args[st + r..]);
            for (b, c) in inner.iter() {
                outer_args[st] = b.clone();
                let val = s.mu(&outer_args);
                let c = if sign % 2 == 0 { c.clone() } else { -c.clone() };
                total.add_scaled(&c, &val);
            }
        }
    }
    total
}

#[derive(Clone, Debug)]
pub struct Violation<B: Ord> {
    pub tuple: Vec<B>,
    pub lhs: LinComb<B>,
    pub rhs: LinComb<B>,
}

#[derive(Clone, Debug)]
pub struct VerifyReport<B: Ord> {
    pub checked: usize,
    pub violations: Vec<Violation<B>>,
}

impl<B: Ord> Default for VerifyReport<B> {
    fn default() -> Self {
        VerifyReport { checked: 0, violations: Vec::new() }
    }
}

impl<B: Ord + Clone> VerifyReport<B> {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: VerifyReport<B>) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

/// Checks `[M_k]` on each tuple.
pub fn check_tuples<S: AInfinity>(s: &S, tuples: &[Vec<S::B>]) -> VerifyReport<S::B> {
    let mut rep = VerifyReport::default();
    for t in tuples {
        rep.checked += 1;
        let lhs = m_identity(s, t);
        if !lhs.is_zero() {
            rep.violations.push(Violation { tuple: t.clone(), lhs, rhs: LinComb::zero() });
        }
    }
    rep
}

/// All composable `k`-tuples from a basis.
pub fn composable_tuples<S: AInfinity>(s: &S, basis: &[S::B], k: usize) -> Vec<Vec<S::B>> {
    let mut by_target: BTreeMap<usize, Vec<&S::B>> = BTreeMap::new();
    for b in basis {
        by_target.entry(s.target(b)).or_default().push(b);
    }
    let mut out = Vec::new();
    let mut cur: Vec<S::B> = Vec::new();
    fn rec<S: AInfinity>(s: &S, basis: &[S::B], by_target: &BTreeMap<usize, Vec<&S::B>>, k: usize, cur: &mut Vec<S::B>, out: &mut Vec<Vec<S::B>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let next: Vec<&S::B> = match cur.last() {
            None => basis.iter().collect(),
            Some(b) => by_target.get(&s.source(b)).cloned().unwrap_or_default(),
        };
        for b in next {
            cur.push(b.clone());
            rec(s, basis, by_target, k, cur, out);
            cur.pop();
        }
    }
    if k > 0 {
        rec(s, basis, &by_target, k, &mut cur, &mut out);
    }
    out
}

/// Exhaustive check of `[M_k]` for `3 ≤ k ≤ max_arity` over a basis.
pub fn verify_exhaustive<S: AInfinity>(s: &S, basis: &[S::B], max_arity: usize) -> VerifyReport<S::B> {
    let mut rep = VerifyReport::default();
    for k in 3..=max_arity {
        rep.merge(check_tuples(s, &composable_tuples(s, basis, k)));
    }
    rep
}

/// `µ^κ` on a gentle category as an [`AInfinity`] structure.
#[derive(Clone, Debug)]
pub struct GentleAInf<'a> {
    pub g: &'a GentleCategory,
    pub kappa: &'a KappaMap,
    pub strategy: Strategy,
}

impl<'a> GentleAInf<'a> {
    pub fn new(g: &'a GentleCategory, kappa: &'a KappaMap) -> Self {
        GentleAInf { g, kappa, strategy: Strategy::LeftMost }
    }
}

impl AInfinity for GentleAInf<'_> {
    type B = SpiralPath;
    fn degree(&self, b: &SpiralPath) -> u8 {
        self.g.degree(b)
    }
    fn source(&self, b: &SpiralPath) -> usize {
        self.g.source(b)
    }
    fn target(&self, b: &SpiralPath) -> usize {
        self.g.target(b)
    }
    fn mu(&self, args: &[SpiralPath]) -> LinComb<SpiralPath> {
        match mu_paths(self.g, self.kappa, args, self.strategy) {
            Ok(Some((c, p))) => LinComb::term(c, p),
            _ => LinComb::zero(),
        }
    }
}

/// Test harness wrapper that flips the sign of `µ_arity` on the tuples picked
/// by `flip`.
pub struct Corrupted<S: AInfinity, F: Fn(&[S::B]) -> bool> {
    pub inner: S,
    pub arity: usize,
    pub flip: F,
}

impl<S: AInfinity, F: Fn(&[S::B]) -> bool> AInfinity for Corrupted<S, F> {
    type B = S::B;
    fn degree(&self, b: &S::B) -> u8 {
        self.inner.degree(b)
    }
    fn source(&self, b: &S::B) -> usize {
        self.inner.source(b)
    }
    fn target(&self, b: &S::B) -> usize {
        self.inner.target(b)
    }
    fn mu(&self, args: &[S::B]) -> LinComb<S::B> {
        let v = self.inner.mu(args);
        if args.len() == self.arity && (self.flip)(args) { v.neg() } else { v }
    }
}

/// Tuples with nonzero `µ^κ`, all arguments winding at most `w`, by arity.
///
/// Arity 2 is enumerated directly. Every nonzero longer tuple collapses at
/// some site to a nonzero shorter one, so inverting single collapses from the
/// shorter sets reaches all of them; each candidate is then re-evaluated.
pub fn nonzero_tuples(g: &GentleCategory, kappa: &KappaMap, max_arity: usize, w: usize) -> Vec<BTreeSet<Vec<SpiralPath>>> {
    let d = &g.rect.dimer;
    let s = GentleAInf::new(g, kappa);
    let paths = g.all_paths(w);
    let mut nz: Vec<BTreeSet<Vec<SpiralPath>>> = vec![BTreeSet::new(); max_arity.max(2) + 1];
    for t in composable_tuples(&s, &paths, 2) {
        if !s.mu(&t).is_zero() {
            nz[2].insert(t);
        }
    }
    let fits = |p: &SpiralPath| g.winding(p) <= w;
    for m in 3..=max_arity {
        let mut found = BTreeSet::new();
        for k in 2..m {
            let nl = m - k + 2;
            for tuple in &nz[k] {
                for i in 0..k - 1 {
                    let (left, right) = (tuple[i], tuple[i + 1]);
                    let firsts: Vec<usize> = match g.split_first(&left) {
                        Some((a, _)) => vec![d.neg_prev(a)],
                        None if i == 0 => (0..d.n_arrows()).filter(|&a| d.head(a) == g.source(&left)).collect(),
                        None => continue,
                    };
                    for b1 in firsts {
                        let (c, _) = d.pos_loc(b1);
                        let l = d.pos[c].len();
                        if nl % l != 0 || kappa.get(c, nl / l) == num_traits::Zero::zero() {
                            continue;
                        }
                        let mut block = vec![b1];
                        for _ in 1..nl {
                            block.push(d.pos_prev(*block.last().unwrap()));
                        }
                        let bn = block[nl - 1];
                        match g.split_last(&right) {
                            Some((a, _)) if d.neg_next(a) == bn => {}
                            None if i + 2 == k && g.target(&right) == d.tail(bn) => {}
                            _ => continue,
                        }
                        let (Ok(Some(first)), Ok(Some(last))) =
                            (g.compose_paths(&left, &g.arrow(b1)), g.compose_paths(&g.arrow(bn), &right))
                        else {
                            continue;
                        };
                        let mut cand: Vec<SpiralPath> = tuple[..i].to_vec();
                        cand.push(first);
                        cand.extend(block[1..nl - 1].iter().map(|&b| g.arrow(b)));
                        cand.push(last);
                        cand.extend_from_slice(&tuple[i + 2..]);
                        if cand.iter().all(fits) && !s.mu(&cand).is_zero() {
                            found.insert(cand);
                        }
                    }
                }
            }
        }
        nz[m] = found;
    }
    nz
}

/// The `k`-tuples with arguments winding at most `w` on which some term of
/// `[M_k]` can be nonzero; on every other tuple the identity holds trivially.
pub fn support_tuples(g: &GentleCategory, kappa: &KappaMap, k: usize, w: usize) -> Vec<Vec<SpiralPath>> {
    let nz = nonzero_tuples(g, kappa, k - 1, 2 * w);
    let s = GentleAInf::new(g, kappa);
    let mut out = BTreeSet::new();
    for r in 2..k {
        let mut by_value: BTreeMap<SpiralPath, Vec<&Vec<SpiralPath>>> = BTreeMap::new();
        for inner in &nz[r] {
            if inner.iter().all(|p| g.winding(p) <= w) {
                for p in s.mu(inner).support() {
                    by_value.entry(p).or_default().push(inner);
                }
            }
        }
        let o = k - r + 1;
        for outer in &nz[o] {
            for st in 0..o {
                let Some(inners) = by_value.get(&outer[st]) else { continue };
                if outer.iter().enumerate().any(|(t, p)| t != st && g.winding(p) > w) {
                    continue;
                }
                for inner in inners {
                    let mut cand = outer[..st].to_vec();
                    cand.extend_from_slice(inner);
                    cand.extend_from_slice(&outer[st + 1..]);
                    out.insert(cand);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// `[M_k]` for `3 ≤ k ≤ max_arity` and arguments winding at most `w`, using
/// [`support_tuples`].
pub fn verify_m_identities(g: &GentleCategory, kappa: &KappaMap, max_arity: usize, w: usize) -> VerifyReport<SpiralPath> {
    let s = GentleAInf::new(g, kappa);
    let mut rep = VerifyReport::default();
    for k in 3..=max_arity {
        rep.merge(check_tuples(&s, &support_tuples(g, kappa, k, w)));
    }
    rep
}
