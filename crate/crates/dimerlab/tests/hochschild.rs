use std::collections::{BTreeMap, BTreeSet};

use dimerlab::fixtures;
use dimerlab_core::gentle::{GentleCategory, SpiralPath};
use dimerlab_core::hochschild::*;
use dimerlab_core::linalg::QMatrix;
use dimerlab_core::rectify::rectify;
use dimerlab_core::{q, Q};
use num_traits::Zero;
use proptest::prelude::*;

const SURFACES: &[&str] =
    &["c3.dimer", "dimex1.quiver", "dimex2.dimer", "dimex2_mirror.dimer", "tetra.quiver", "pentagon.quiver", "torus2loop.quiver"];

fn gentle(name: &str) -> GentleCategory {
    GentleCategory::new(rectify(&fixtures::quiver(name)).unwrap())
}

#[test]
fn c3_pattern_in_low_powers() {
    let g = gentle("c3.dimer");
    for c in 0..g.rect.dimer.pos.len() {
        let bc = bardzell_cochain_complex(&g, c, 3, Signs::Graded).unwrap();
        assert_eq!(bc.l(), 3);
        let r = hh_dimensions(&g, &bc);
        assert!(r.d_squared_zero);
        let dims = |ks: [usize; 3]| ks.map(|k| r.degree(k).unwrap().homology);
        assert_eq!(dims([2, 3, 4]), [0, 1, 1]);
        assert_eq!(dims([5, 6, 7]), [0, 1, 1]);
        for k in 2..=7 {
            let d = r.degree(k).unwrap();
            assert!(d.reliable);
            assert_eq!(d.homology, d.kernel - d.image);
            assert_eq!(d.homology, d.homology_by_parity.iter().sum::<usize>());
        }
    }
}

#[test]
fn pattern_and_generators_on_every_surface() {
    for name in SURFACES {
        let g = gentle(name);
        for c in 0..g.rect.dimer.pos.len() {
            let bc = bardzell_cochain_complex(&g, c, 3, Signs::Graded).unwrap();
            let r = hh_dimensions(&g, &bc);
            assert!(r.d_squared_zero, "{name} c{c}");
            for n in 1..=2 {
                assert_eq!(r.pattern(n), Some([0, 1, 1]), "{name} c{c} n={n}");
                assert!(hh_generator_check(&g, &bc, n).unwrap(), "{name} c{c} n={n}");
            }
            assert!(r.pattern(3).is_none(), "power 3 needs winding 4");
        }
    }
}

/// With ungraded signs the cocycle condition on `Σ c_i [b_i…b_{i+nl−1} → h(b_i)]`
/// forces `c_{i+1} = (−1)^{nl+1} c_i` around a cycle of length `l`, which closes
/// up only when `(nl + 1)·l` is even.
#[test]
fn ungraded_signs_lose_odd_cycles_at_even_powers() {
    for name in SURFACES {
        let g = gentle(name);
        for c in 0..g.rect.dimer.pos.len() {
            let bc = bardzell_cochain_complex(&g, c, 3, Signs::Literal).unwrap();
            let l = bc.l();
            assert!(bc.d_squared_zero());
            let r = hh_dimensions(&g, &bc);
            for n in 1..=2 {
                let closes = ((n * l + 1) * l) % 2 == 0;
                assert_eq!(r.pattern(n) == Some([0, 1, 1]), closes, "{name} c{c} n={n}");
                assert_eq!(hh_generator_check(&g, &bc, n).unwrap(), closes);
            }
        }
    }
}

#[test]
fn degree_zero_columns_are_loops() {
    let g = gentle("c3.dimer");
    let bc = bardzell_cochain_complex(&g, 0, 1, Signs::Graded).unwrap();
    for f in &bc.basis[0] {
        let v = g.rect.dimer.head(bc.b(f.start));
        assert_eq!(g.source(&f.target), v);
        assert_eq!(g.target(&f.target), v);
    }
}

/// Below each full turn the differential is injective exactly when no
/// negative cycle passes a vertex twice; otherwise the extra cocycles are
/// coboundaries.
#[test]
fn differential_is_injective_below_each_power() {
    for name in SURFACES {
        let g = gentle(name);
        for c in 0..g.rect.dimer.pos.len() {
            let bc = bardzell_cochain_complex(&g, c, 3, Signs::Graded).unwrap();
            for n in 1..=2 {
                let k = n * bc.l() - 1;
                let m = &bc.d[k];
                let cols: Vec<usize> = (0..bc.basis[k].len()).filter(|&j| g.len(&bc.basis[k][j].target) < bc.max_len).collect();
                assert!(!cols.is_empty());
                let sub = QMatrix::from_rows(m.data.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect(), cols.len());
                let simple = g.rect.dimer.neg.iter().all(|cyc| {
                    let vs: BTreeSet<usize> = cyc.iter().map(|&a| g.rect.dimer.tail(a)).collect();
                    vs.len() == cyc.len()
                });
                assert_eq!(sub.rank() == cols.len(), simple, "{name} c{c} n={n}");
                let r = hh_dimensions(&g, &bc);
                assert_eq!(r.degree(k).unwrap().homology, 0);
            }
        }
    }
}

#[test]
fn coboundaries_have_long_values_on_full_turns() {
    for name in SURFACES {
        let g = gentle(name);
        for c in 0..g.rect.dimer.pos.len() {
            let bc = bardzell_cochain_complex(&g, c, 3, Signs::Graded).unwrap();
            for n in 1..=2 {
                let k = n * bc.l();
                let m = &bc.d[k - 1];
                for r in 0..m.rows {
                    if m.data[r].iter().any(|e| !e.is_zero()) {
                        assert!(g.len(&bc.basis[k][r].target) >= 2, "{name} c{c} n={n}");
                    }
                }
                let w = omega0(&g, &bc, n).unwrap();
                assert!(w.iter().enumerate().any(|(i, e)| !e.is_zero() && g.len(&bc.basis[k][i].target) == 0));
            }
        }
    }
}

#[test]
fn generator_classes_are_coset_invariant() {
    let g = gentle("pentagon.quiver");
    for c in 0..g.rect.dimer.pos.len() {
        let bc = bardzell_cochain_complex(&g, c, 3, Signs::Graded).unwrap();
        let n = 1;
        let k = n * bc.l();
        let w0 = omega0(&g, &bc, n).unwrap();
        let w1 = omega1(&g, &bc, n).unwrap();
        let prev0: Vec<Q> = (0..bc.basis[k - 1].len()).map(|j| q(j as i64 % 5 - 2)).collect();
        let prev1: Vec<Q> = (0..bc.basis[k].len()).map(|j| q(j as i64 % 3 - 1)).collect();
        let shift = |w: &[Q], m: &QMatrix, v: &[Q]| -> Vec<Q> { w.iter().zip(m.apply(v)).map(|(a, b)| a + b).collect() };
        assert!(is_nontrivial_class(&bc, k, &shift(&w0, &bc.d[k - 1], &prev0)).unwrap());
        assert!(is_nontrivial_class(&bc, k + 1, &shift(&w1, &bc.d[k], &prev1)).unwrap());
        let zero = vec![Q::zero(); bc.basis[k].len()];
        assert!(!is_nontrivial_class(&bc, k, &zero).unwrap());
        let bd: Vec<Q> = bc.d[k - 1].apply(&prev0);
        assert!(!is_nontrivial_class(&bc, k, &bd).unwrap());
    }
}

#[test]
fn unreliable_degrees_are_refused() {
    let g = gentle("c3.dimer");
    let bc = bardzell_cochain_complex(&g, 0, 1, Signs::Graded).unwrap();
    assert!(hh_generator_check(&g, &bc, 1).is_err());
    assert!(bardzell_cochain_complex(&g, 0, 0, Signs::Graded).is_err());
    assert!(bardzell_cochain_complex(&g, 99, 1, Signs::Graded).is_err());
    let r = hh_dimensions(&g, &bc);
    assert!(!r.degree(1).unwrap().reliable);
    assert_eq!(r.pattern(1), None);
}

#[test]
fn corrupted_differential_is_flagged() {
    let g = gentle("c3.dimer");
    let mut bc = bardzell_cochain_complex(&g, 0, 2, Signs::Graded).unwrap();
    let k = 3;
    let (row, col) = (0..bc.d[k].rows)
        .flat_map(|r| (0..bc.d[k].cols).map(move |c| (r, c)))
        .find(|&(r, c)| !bc.d[k].data[r][c].is_zero() && (0..bc.d[k + 1].rows).any(|i| !bc.d[k + 1].data[i][r].is_zero()))
        .unwrap();
    bc.perturb(k, row, col);
    assert!(!bc.d_squared_zero());
    assert!(!hh_dimensions(&g, &bc).d_squared_zero);
}

/// Tuples on which `d g` can be nonzero: a `g`-tuple with one extra argument
/// in front or behind, or with one argument split into two factors.
fn closure_tuples(g: &GentleCategory, max_arity: usize, w: usize) -> Vec<Vec<SpiralPath>> {
    let d = &g.rect.dimer;
    let paths = g.all_paths(w);
    let mut gtuples = Vec::new();
    for a in 0..d.n_arrows() {
        let l = d.pos[d.pos_loc(a).0].len();
        for n in 1.. {
            let k = n * l + 1;
            if k + 1 > max_arity {
                break;
            }
            let mut mid = Vec::new();
            let mut e = d.pos_prev(a);
            for _ in 2..k {
                mid.push(g.arrow(e));
                e = d.pos_prev(e);
            }
            let firsts: Vec<&SpiralPath> = paths.iter().filter(|p| g.split_first(p).map(|x| x.0) == Some(a)).collect();
            let lasts: Vec<&SpiralPath> = paths.iter().filter(|p| g.split_last(p).map(|x| x.0) == Some(a)).collect();
            for f in &firsts {
                for l in &lasts {
                    let mut t = vec![**f];
                    t.extend_from_slice(&mid);
                    t.push(**l);
                    gtuples.push(t);
                }
            }
        }
    }
    let mut out = Vec::new();
    for t in &gtuples {
        for p in &paths {
            if g.source(p) == g.target(&t[0]) {
                let mut v = vec![*p];
                v.extend_from_slice(t);
                out.push(v);
            }
            if g.target(p) == g.source(t.last().unwrap()) {
                let mut v = t.clone();
                v.push(*p);
                out.push(v);
            }
        }
        for i in 0..t.len() {
            for u in &paths {
                for v in &paths {
                    if g.source(u) == g.target(v) && g.compose_paths(u, v).unwrap() == Some(t[i]) {
                        let mut s = t[..i].to_vec();
                        s.push(*u);
                        s.push(*v);
                        s.extend_from_slice(&t[i + 1..]);
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

fn zeta_from(g: &GentleCategory, seeds: &[i64]) -> BTreeMap<(usize, usize), Q> {
    let mut z = BTreeMap::new();
    for a in 0..g.rect.dimer.n_arrows() {
        for n in 1..=2 {
            let s = seeds[(a * 2 + n) % seeds.len()];
            if s != 0 {
                z.insert((a, n), q(s));
            }
        }
    }
    z
}

#[test]
fn cycle_multifunctors_are_closed_on_their_support() {
    for name in SURFACES {
        let g = gentle(name);
        let l_min = g.rect.dimer.pos.iter().map(Vec::len).min().unwrap();
        let tuples = closure_tuples(&g, 5.max(l_min + 2), 1);
        assert!(!tuples.is_empty());
        for signs in [Signs::Graded, Signs::Literal] {
            let psi = CycleMultifunctor { g: &g, zeta: zeta_from(&g, &[3, -2, 5, 7, 1]), signs };
            let mut hits = 0;
            for t in &tuples {
                if !psi.eval(&t[1..]).is_zero() || !psi.eval(&t[..t.len() - 1]).is_zero() {
                    hits += 1;
                }
                assert!(hochschild_differential(&g, &psi, t, signs).unwrap().is_zero(), "{name} {signs:?} {t:?}");
            }
            assert!(hits > 0);
        }
    }
}

#[test]
fn dropping_the_koszul_sign_breaks_closure() {
    let g = gentle("c3.dimer");
    let psi = CycleMultifunctor { g: &g, zeta: zeta_from(&g, &[1]), signs: Signs::Literal };
    let broken = closure_tuples(&g, 5, 1).iter().any(|t| !hochschild_differential(&g, &psi, t, Signs::Graded).unwrap().is_zero());
    assert!(broken);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn closure_on_random_tuples(fixture in 0..SURFACES.len(), picks in prop::collection::vec(0usize..10_000, 3..=5), seeds in prop::collection::vec(-4i64..5, 1..6)) {
        let g = gentle(SURFACES[fixture]);
        let paths = g.all_paths(1);
        let mut t = vec![paths[picks[0] % paths.len()]];
        for &p in &picks[1..] {
            let src = g.source(t.last().unwrap());
            let next: Vec<&SpiralPath> = paths.iter().filter(|x| g.target(x) == src).collect();
            t.push(*next[p % next.len()]);
        }
        for signs in [Signs::Graded, Signs::Literal] {
            let psi = CycleMultifunctor { g: &g, zeta: zeta_from(&g, &seeds), signs };
            prop_assert!(hochschild_differential(&g, &psi, &t, signs).unwrap().is_zero());
        }
    }
}
