use std::collections::BTreeSet;

use dimerlab::fixtures;
use dimerlab_core::quiver::{DimerModel, Entry};
use dimerlab_core::toric::*;
use proptest::prelude::*;

const TORI: &[&str] = &["c3", "toric", "dimex2", "dimex2_mirror"];

fn names(m: &DimerModel, p: &PerfectMatching) -> BTreeSet<String> {
    p.names(m).into_iter().collect()
}

fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Every arrow subset checked face by face.
fn brute_matchings(m: &DimerModel) -> BTreeSet<Vec<usize>> {
    let n = m.n_arrows();
    assert!(n <= 16);
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|a| mask >> a & 1 == 1).collect::<Vec<usize>>())
        .filter(|s| m.pos.iter().chain(&m.neg).all(|f| f.iter().filter(|a| s.contains(a)).count() == 1))
        .collect()
}

/// Reachability by transitive closure of the allowed arrows.
fn brute_stable(m: &DimerModel, o: usize, s: &[&PerfectMatching]) -> bool {
    let n = m.n_vertices();
    let mut r = vec![vec![false; n]; n];
    for (v, row) in r.iter_mut().enumerate() {
        row[v] = true;
    }
    for a in 0..m.n_arrows() {
        if s.iter().all(|p| !p.arrows.contains(&a)) {
            r[m.tail(a)][m.head(a)] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r[o].iter().all(|&x| x)
}

#[test]
fn matchings_agree_with_brute_force() {
    for stem in ["c3", "toric", "dimex2", "dimex2_mirror", "dimex3", "dimex4", "octahedron"] {
        let m = fixtures::dimer(stem);
        let fast: BTreeSet<Vec<usize>> = enumerate_matchings(&m).into_iter().map(|p| p.arrows).collect();
        assert_eq!(fast, brute_matchings(&m), "{stem}");
        let again: Vec<PerfectMatching> = enumerate_matchings(&m);
        assert_eq!(again, enumerate_matchings(&m));
    }
}

#[test]
fn c3_has_three_matchings() {
    let m = fixtures::dimer("c3");
    let ms: Vec<BTreeSet<String>> = enumerate_matchings(&m).iter().map(|p| names(&m, p)).collect();
    assert_eq!(ms, vec![set(&["x"]), set(&["y"]), set(&["z"])]);
}

#[test]
fn listed_matchings_are_exactly_the_stable_ones() {
    let m = fixtures::dimer("toric");
    let o = m.vertex_index("1").unwrap();
    let ms = enumerate_matchings(&m);
    let expected = [set(&["b", "w"]), set(&["d", "z"]), set(&["a", "y"]), set(&["c", "x"]), set(&["a", "b"])];
    let stable: BTreeSet<BTreeSet<String>> = ms.iter().filter(|p| stability(&m, o, &[p])).map(|p| names(&m, p)).collect();
    assert_eq!(stable, expected.iter().cloned().collect());
    for p in &ms {
        assert_eq!(stability(&m, o, &[p]), brute_stable(&m, o, &[p]));
    }
}

#[test]
fn unstable_matchings_name_an_unreachable_vertex() {
    let m = fixtures::dimer("toric");
    let o = m.vertex_index("1").unwrap();
    let ms = enumerate_matchings(&m);
    let cd = ms.iter().find(|p| names(&m, p) == set(&["c", "d"])).unwrap();
    let v = unreachable_vertex(&m, o, &[cd]).unwrap();
    assert_ne!(v, o);
    assert!(!stability(&m, o, &[cd]));
    assert!(stability(&m, o, &[]));
    for a in 0..ms.len() {
        for b in a + 1..ms.len() {
            assert_eq!(stability(&m, o, &[&ms[a], &ms[b]]), brute_stable(&m, o, &[&ms[a], &ms[b]]));
        }
    }
}

#[test]
fn no_matchings_is_an_empty_result() {
    let m = DimerModel::from_names(&["v"], &[("a", "v", "v"), ("b", "v", "v"), ("c", "v", "v"), ("d", "v", "v")], &["a b c d"], &["a b", "c d"])
        .unwrap();
    assert!(enumerate_matchings(&m).is_empty());
    assert!(brute_matchings(&m).is_empty());
}

#[test]
fn every_matching_meets_every_face_once() {
    for stem in ["c3", "toric", "dimex2", "dimex3", "dimex4", "octahedron"] {
        let m = fixtures::dimer(stem);
        for p in enumerate_matchings(&m) {
            assert!(is_perfect_matching(&m, &p.arrows));
            for f in &m.pos {
                let z: Vec<Entry> = f.iter().map(|&a| Entry::fwd(a)).collect();
                assert_eq!(p.degree(&z), 1);
            }
        }
    }
}

#[test]
fn toric_polygon_and_mirror_checks() {
    let m = fixtures::dimer("toric");
    let o = m.vertex_index("1").unwrap();
    let r = mirror_polygon(&m, &default_frame(&m, o).unwrap()).unwrap();
    assert_eq!(r.stable.len(), 5);
    assert_eq!(r.polygon.points.len(), 5);
    assert_eq!((r.polygon.boundary, r.polygon.interior), (4, 1));
    assert_eq!(r.checks.zigzag_b, (4, 4));
    assert_eq!(r.checks.genus_i, (1, 1));
    assert_eq!(r.checks.punctures, (4, 4));
    assert_eq!(r.checks.q0_formula, (4, 4));
    assert!(r.checks.ok());
    let centre: Vec<BTreeSet<String>> = r.polygon.lattice_points().into_iter()
        .filter(|&p| r.polygon.boundary_points().iter().all(|&b| b != p))
        .flat_map(|p| r.stable_at(p))
        .map(|i| names(&m, &r.matchings[i]))
        .collect();
    assert_eq!(centre, vec![set(&["a", "b"])]);
    let fan = stable_collections_fan(&m, &r).unwrap();
    assert_eq!(fan.triangles.len(), 4);
    assert_eq!(fan.count, (4, 4));
    assert!(fan.ok());
}

#[test]
fn c3_polygon_is_a_unimodular_triangle() {
    let m = fixtures::dimer("c3");
    let r = mirror_polygon(&m, &default_frame(&m, 0).unwrap()).unwrap();
    assert_eq!(r.polygon.points.len(), 3);
    assert_eq!((r.polygon.boundary, r.polygon.interior, r.polygon.twice_area), (3, 0, 1));
    assert_eq!(r.checks.genus_i, (0, 0));
    assert_eq!(r.checks.punctures, (3, 3));
    assert!(r.checks.ok());
    let fan = stable_collections_fan(&m, &r).unwrap();
    assert_eq!(fan.count, (1, 1));
    assert!(fan.ok());
}

#[test]
fn every_torus_fixture_passes_every_vertex_choice() {
    for stem in TORI {
        let m = fixtures::dimer(stem);
        for o in 0..m.n_vertices() {
            let r = mirror_polygon(&m, &default_frame(&m, o).unwrap()).unwrap();
            assert!(r.checks.ok(), "{stem} o={o}: {:?}", r.checks);
            for (i, &c) in r.coords.iter().enumerate() {
                assert!(r.polygon.contains(c), "matching {i} outside the polygon");
            }
            let fan = stable_collections_fan(&m, &r).unwrap();
            assert!(fan.ok(), "{stem} o={o}");
            assert_eq!(2 * r.polygon.twice_area, 2 * (r.polygon.boundary + 2 * r.polygon.interior - 2));
        }
    }
}

#[test]
fn frames_are_validated() {
    let m = fixtures::dimer("toric");
    let o = m.vertex_index("1").unwrap();
    let f = default_frame(&m, o).unwrap();
    assert!(frame_from(&m, o, f.x.clone(), f.y.clone(), None).is_ok());
    assert!(frame_from(&m, o, f.x.clone(), f.x.clone(), None).is_err());
    let doubled: Vec<Entry> = f.x.iter().chain(&f.x).copied().collect();
    assert!(frame_from(&m, o, doubled, f.y.clone(), None).is_err());
    assert!(frame_from(&m, o, f.x[..1].to_vec(), f.y.clone(), None).is_err());
    let swapped = frame_from(&m, o, f.y.clone(), f.x.clone(), Some(f.z.clone())).unwrap();
    let r = mirror_polygon(&m, &swapped).unwrap();
    assert!(r.checks.ok());
    assert!(mirror_polygon(&fixtures::dimer("dimex3"), &default_frame(&fixtures::dimer("dimex3"), 0).unwrap()).is_err());
    assert!(default_frame(&fixtures::dimer("dimex4"), 0).is_err());
}

#[test]
fn corrupted_fan_is_reported() {
    let m = fixtures::dimer("toric");
    let o = m.vertex_index("1").unwrap();
    let r = mirror_polygon(&m, &default_frame(&m, o).unwrap()).unwrap();
    let fan = stable_collections_fan(&m, &r).unwrap();
    let mut tris: Vec<[Point; 3]> = fan.triangles.iter().map(|t| t.map(|i| r.coords[i])).collect();
    assert!(check_tiling(&r.polygon, &tris).ok);
    let dup = tris[0];
    tris.push(dup);
    let bad = check_tiling(&r.polygon, &tris);
    assert!(!bad.ok);
    assert_eq!(bad.overlaps, vec![(0, tris.len() - 1)]);
    tris.pop();
    tris.pop();
    assert!(!check_tiling(&r.polygon, &tris).ok);
}

fn brute_interior(hull: &[Point]) -> i64 {
    let n = hull.len();
    if n < 3 {
        return 0;
    }
    let mut count = 0;
    for x in -12..=12 {
        for y in -12..=12 {
            let inside = (0..n).all(|i| {
                let (a, b) = (hull[i], hull[(i + 1) % n]);
                (b.0 - a.0) * (y - a.1) - (b.1 - a.1) * (x - a.0) > 0
            });
            count += inside as i64;
        }
    }
    count
}

proptest! {
    #[test]
    fn pick_and_hull(points in prop::collection::vec((-6i64..=6, -6i64..=6), 1..12)) {
        let poly = LatticePolygon::new(&points);
        for &p in &points {
            prop_assert!(poly.contains(p));
        }
        if poly.hull.len() >= 3 {
            prop_assert_eq!(poly.interior, brute_interior(&poly.hull));
            prop_assert_eq!(poly.twice_area, poly.boundary + 2 * poly.interior - 2);
            prop_assert_eq!(poly.boundary_points().len() as i64, poly.boundary);
            prop_assert_eq!(poly.lattice_points().len() as i64, poly.boundary + poly.interior);
        }
    }

    #[test]
    fn overlap_is_symmetric(a in prop::array::uniform6(-4i64..=4), b in prop::array::uniform6(-4i64..=4)) {
        let s = [(a[0], a[1]), (a[2], a[3]), (a[4], a[5])];
        let t = [(b[0], b[1]), (b[2], b[3]), (b[4], b[5])];
        let area = |t: &[Point; 3]| ((t[1].0 - t[0].0) * (t[2].1 - t[0].1) - (t[1].1 - t[0].1) * (t[2].0 - t[0].0)).abs();
        prop_assume!(area(&s) > 0 && area(&t) > 0);
        prop_assert_eq!(triangles_overlap(&s, &t), triangles_overlap(&t, &s));
        prop_assert!(triangles_overlap(&s, &s));
    }
}
