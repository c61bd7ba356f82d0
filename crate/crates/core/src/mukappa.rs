//! The family `µ^κ` of higher products on a gentle category.
//!
//! A product of more than two paths is evaluated by collapsing a run of
//! arguments that spells out a power of a positive cycle, weighting it by
//! `κ(cycle, power)` and recursing on the shorter argument list.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gentle::{GentleCategory, GentleMorphism, SpiralPath};
use crate::Q;

/// Weights `κ(c, n)` indexed by positive cycle and power; missing entries are 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KappaMap {
    pub weights: BTreeMap<(usize, usize), Q>,
}

impl KappaMap {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `κ(c, 1) = 1` for every positive cycle, all higher powers 0.
    pub fn mu_bar(g: &GentleCategory) -> Self {
        let mut k = Self::zero();
        for c in 0..g.rect.dimer.pos.len() {
            k.set(c, 1, Q::one());
        }
        k
    }

    pub fn get(&self, c: usize, n: usize) -> Q {
        self.weights.get(&(c, n)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, c: usize, n: usize, v: Q) {
        if v.is_zero() {
            self.weights.remove(&(c, n));
        } else {
            self.weights.insert((c, n), v);
        }
    }
}

/// Which reduction site to use when several apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    LeftMost,
    RightMost,
}

/// A run `args[start..=end]` that collapses to the pair `(left, right)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Site {
    pub start: usize,
    pub end: usize,
    pub cycle: usize,
    pub power: usize,
    pub left: SpiralPath,
    pub right: SpiralPath,
}

/// The reduction starting at argument `j`, if any. A trivial flanking path is
/// accepted only at the outer ends of the argument list.
pub fn site_at(g: &GentleCategory, args: &[SpiralPath], j: usize) -> Option<Site> {
    let d = &g.rect.dimer;
    let u = args.len();
    let (b1, left) = g.split_first(&args[j])?;
    if matches!(left, SpiralPath::Trivial(_)) && j != 0 {
        return None;
    }
    let (cycle, _) = d.pos_loc(b1);
    let l = d.pos[cycle].len();
    let mut expected = d.pos_prev(b1);
    let mut m = 1;
    for (t, arg) in args.iter().enumerate().skip(j + 1) {
        m += 1;
        match g.is_bare_arrow(arg) {
            Some(a) if a == expected => {
                if t + 1 == u {
                    return (m % l == 0).then(|| Site { start: j, end: t, cycle, power: m / l, left, right: SpiralPath::Trivial(d.tail(a)) });
                }
                expected = d.pos_prev(expected);
            }
            Some(_) => return None,
            None => {
                let (last, right) = g.split_last(arg)?;
                return (last == expected && m % l == 0).then_some(Site { start: j, end: t, cycle, power: m / l, left, right });
            }
        }
    }
    None
}

pub fn sites(g: &GentleCategory, args: &[SpiralPath]) -> Vec<Site> {
    (0..args.len()).filter_map(|j| site_at(g, args, j)).collect()
}

fn check_chain(g: &GentleCategory, args: &[SpiralPath]) -> Result<()> {
    if args.windows(2).any(|w| g.source(&w[0]) != g.target(&w[1])) {
        return Err(Error::NotComposable);
    }
    Ok(())
}

/// Replaces the run of `site` by its two flanking paths; returns the shorter
/// list and the sign exponent `nl·(|p₁| + … + |p_i| + k − i + φ(b₁))`, where
/// `φ` is [`GentleCategory::phase`].
pub fn reduce(g: &GentleCategory, args: &[SpiralPath], site: &Site) -> (Vec<SpiralPath>, usize) {
    let mut reduced: Vec<SpiralPath> = args[..site.start].to_vec();
    reduced.push(site.left);
    reduced.push(site.right);
    reduced.extend_from_slice(&args[site.end + 1..]);
    let nl = site.end - site.start + 1;
    let i = site.start + 1;
    let k = reduced.len();
    let degs: usize = reduced[..i].iter().map(|p| g.degree(p) as usize).sum();
    let b1 = g.split_first(&args[site.start]).map_or(0, |(a, _)| a);
    (reduced, nl * (degs + k - i + g.phase(b1) as usize))
}

/// `µ^κ` on basis paths; `None` stands for zero.
pub fn mu_paths(g: &GentleCategory, kappa: &KappaMap, args: &[SpiralPath], strategy: Strategy) -> Result<Option<(Q, SpiralPath)>> {
    check_chain(g, args)?;
    Ok(mu_unchecked(g, kappa, args, strategy))
}

fn mu_unchecked(g: &GentleCategory, kappa: &KappaMap, args: &[SpiralPath], strategy: Strategy) -> Option<(Q, SpiralPath)> {
    match args.len() {
        0 | 1 => None,
        2 => g.compose_paths(&args[0], &args[1]).ok().flatten().map(|p| (Q::one(), p)),
        u => {
            let site = match strategy {
                Strategy::LeftMost => (0..u).find_map(|j| site_at(g, args, j)),
                Strategy::RightMost => (0..u).rev().find_map(|j| site_at(g, args, j)),
            }?;
            let w = kappa.get(site.cycle, site.power);
            if w.is_zero() {
                return None;
            }
            let (reduced, s) = reduce(g, args, &site);
            let (c, p) = mu_unchecked(g, kappa, &reduced, strategy)?;
            Some((if s % 2 == 0 { w * c } else { -(w * c) }, p))
        }
    }
}

/// Multilinear extension of [`mu_paths`].
pub fn mu_kappa(g: &GentleCategory, kappa: &KappaMap, args: &[GentleMorphism]) -> Result<GentleMorphism> {
    let mut out = GentleMorphism::zero();
    let mut idx = alloc::vec![0usize; args.len()];
    let terms: Vec<Vec<(&SpiralPath, &Q)>> = args.iter().map(|a| a.iter().collect()).collect();
    if terms.iter().any(|t| t.is_empty()) {
        return Ok(out);
    }
    loop {
        let paths: Vec<SpiralPath> = idx.iter().zip(&terms).map(|(&i, t)| *t[i].0).collect();
        if let Some((c, p)) = mu_paths(g, kappa, &paths, Strategy::LeftMost)? {
            let coeff = idx.iter().zip(&terms).fold(c, |acc, (&i, t)| acc * t[i].1);
            out.add_term(coeff, p);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < terms[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
