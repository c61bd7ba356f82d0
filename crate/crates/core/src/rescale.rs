//! Rescaling arrows: the strict functor `f_ρ(a) = ρ(a)·a` and its effect on
//! the weights `κ`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gentle::{GentleCategory, GentleMorphism, SpiralPath};
use crate::mukappa::{mu_paths, KappaMap, Strategy};
use crate::Q;

/// `ρ` of a basis path: the product over its arrows.
pub fn path_scale(g: &GentleCategory, rho: &[Q], p: &SpiralPath) -> Q {
    match *p {
        SpiralPath::Trivial(_) => Q::one(),
        SpiralPath::Arc { cycle, start, len } => (0..len).fold(Q::one(), |acc, k| acc * &rho[g.cycle_arrow(cycle, start + k)]),
    }
}

pub fn apply_functor(g: &GentleCategory, rho: &[Q], m: &GentleMorphism) -> GentleMorphism {
    m.iter().map(|(p, c)| (c * path_scale(g, rho, p), *p)).collect()
}

fn check_rho(g: &GentleCategory, rho: &[Q]) -> Result<()> {
    if rho.len() != g.rect.dimer.n_arrows() {
        return Err(Error::Invalid("one scale factor per arrow is required"));
    }
    if rho.iter().any(|r| r.is_zero()) {
        return Err(Error::Invalid("zero scale factor"));
    }
    Ok(())
}

/// `κ′(c, n) = κ(c, n)·ρ(c)ⁿ`, so that `f_ρ` is a strict functor from
/// `µ^{κ′}` to `µ^κ`.
pub fn rescale_kappa(g: &GentleCategory, rho: &[Q], kappa: &KappaMap) -> Result<KappaMap> {
    check_rho(g, rho)?;
    let mut out = KappaMap::zero();
    for (&(c, n), w) in &kappa.weights {
        let rc = g.rect.dimer.pos[c].iter().fold(Q::one(), |acc, &a| acc * &rho[a]);
        let mut v = w.clone();
        for _ in 0..n {
            v *= &rc;
        }
        out.set(c, n, v);
    }
    Ok(out)
}

/// Checks `f_ρ(µ^{κ′}(x₁, …, x_k)) = µ^κ(f_ρ x₁, …, f_ρ x_k)` on basis tuples;
/// returns the first tuple where it fails.
pub fn certify(
    g: &GentleCategory,
    rho: &[Q],
    kappa: &KappaMap,
    kappa_prime: &KappaMap,
    tuples: &[Vec<SpiralPath>],
) -> Result<Option<Vec<SpiralPath>>> {
    check_rho(g, rho)?;
    for t in tuples {
        let lhs = match mu_paths(g, kappa_prime, t, Strategy::LeftMost)? {
            Some((c, p)) => GentleMorphism::term(c * path_scale(g, rho, &p), p),
            None => GentleMorphism::zero(),
        };
        let scale = t.iter().fold(Q::one(), |acc, p| acc * path_scale(g, rho, p));
        let rhs = match mu_paths(g, kappa, t, Strategy::LeftMost)? {
            Some((c, p)) => GentleMorphism::term(c * scale, p),
            None => GentleMorphism::zero(),
        };
        if lhs != rhs {
            return Ok(Some(t.clone()));
        }
    }
    Ok(None)
}

/// A `ρ` with `rescale_kappa(ρ, κ₁) = κ₂` for weights supported at power 1.
/// Each positive cycle with `κ₁(c, 1) ≠ 0` gets the factor on its first arrow.
pub fn solve_rescaling(g: &GentleCategory, k1: &KappaMap, k2: &KappaMap) -> Result<Vec<Q>> {
    if k1.weights.keys().chain(k2.weights.keys()).any(|&(_, n)| n != 1) {
        return Err(Error::Invalid("weights beyond the first power are not supported"));
    }
    let d = &g.rect.dimer;
    let mut rho = alloc::vec![Q::one(); d.n_arrows()];
    for (c, cyc) in d.pos.iter().enumerate() {
        let (a, b) = (k1.get(c, 1), k2.get(c, 1));
        if a.is_zero() != b.is_zero() {
            return Err(Error::Invalid("weights with different zero sets are not isomorphic by rescaling"));
        }
        if !a.is_zero() {
            rho[cyc[0]] = b / a;
        }
    }
    Ok(rho)
}
