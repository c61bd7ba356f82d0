use dimerlab::fixtures;
use dimerlab::format::{emit_dimer, emit_quiver, parse, Parsed};
use dimerlab_core::cover::{
    brute_force_meeting, check_consistency, cyclic_cover, integer_cocycles, lifted_period, meeting, CoverPatch,
    Displacements, Verdict,
};
use dimerlab_core::mirror::mirror_dimer;
use dimerlab_core::quiver::DimerModel;
use dimerlab_core::rectify::rectify;

fn genus(name: &str) -> usize {
    fixtures::quiver(name).surface().unwrap().genus as usize
}

#[test]
fn fixture_genera() {
    for (name, g) in [
        ("c3.dimer", 1),
        ("dimex1.quiver", 1),
        ("dimex2.dimer", 1),
        ("dimex3.dimer", 1),
        ("dimex4.dimer", 2),
        ("octahedron.dimer", 0),
        ("tetra.quiver", 0),
        ("torus2loop.quiver", 1),
    ] {
        assert_eq!(genus(name), g, "{name}");
    }
}

#[test]
fn emitted_files_parse_back() {
    for name in fixtures::NAMES {
        let p = fixtures::load(name);
        let again = match &p {
            Parsed::Dimer(m) => parse(&emit_dimer(m)).unwrap(),
            Parsed::Quiver(q) => parse(&emit_quiver(q)).unwrap(),
        };
        assert_eq!(p, again, "{name}");
    }
}

fn verdict(stem: &str) -> Verdict {
    check_consistency(&fixtures::dimer(stem), 500).unwrap().verdict
}

#[test]
fn consistency_verdicts() {
    assert_eq!(verdict("dimex2"), Verdict::Consistent);
    assert_eq!(verdict("dimex4"), Verdict::Consistent);
    assert_eq!(verdict("c3"), Verdict::Consistent);
    assert_eq!(verdict("octahedron"), Verdict::Inconsistent(None));
    let m = fixtures::dimer("dimex3");
    let Verdict::Inconsistent(Some(w)) = verdict("dimex3") else { panic!() };
    assert_eq!((m.name(w.arrow), w.i, w.j), ("x", 3, 3));
}

/// The closed-form meeting agrees with lifting several periods explicitly.
#[test]
fn meeting_matches_brute_force_on_tori() {
    for stem in ["c3", "dimex2", "dimex2_mirror", "dimex3", "toric"] {
        let m = fixtures::dimer(stem);
        let dp = Displacements::new(&m).unwrap();
        for a in 0..m.n_arrows() {
            assert_eq!(meeting(&m, &dp, a), brute_force_meeting(&m, &dp, a, 8), "{stem} arrow {a}");
        }
    }
}

fn lifted_step(m: &DimerModel, dp: &Displacements, a: usize, parity: u8, k: usize) -> (usize, Vec<i64>) {
    let (per, t) = lifted_period(m, dp, a, parity);
    let (arr, d) = &per[k % per.len()];
    let q = (k / per.len()) as i64;
    (*arr, d.iter().zip(&t).map(|(x, y)| x + q * y).collect())
}

/// The explicit cover patch agrees with the exact torus lift wherever both rays
/// stay inside it.
#[test]
fn cover_patch_matches_torus_lift() {
    for stem in ["c3", "dimex2", "dimex3"] {
        let m = fixtures::dimer(stem);
        let dp = Displacements::new(&m).unwrap();
        for a in 0..m.n_arrows() {
            let patch = CoverPatch::grow(&m, a, 150);
            for i in 0..6 {
                for j in 0..6 {
                    let exact = lifted_step(&m, &dp, a, 1, i) == lifted_step(&m, &dp, a, 0, j);
                    if let Some(seen) = patch.rays_meet(&m, a, i, j) {
                        assert_eq!(seen, exact, "{stem} arrow {a} ({i},{j})");
                    }
                }
            }
            assert!(patch.rays_meet(&m, a, 2, 2).is_some(), "{stem}: patch too small");
        }
    }
}

#[test]
fn cyclic_covers_are_dimers_of_the_right_size() {
    let m = fixtures::dimer("dimex4");
    let cocycles = integer_cocycles(&m);
    assert!(!cocycles.is_empty());
    for c in &cocycles {
        for f in m.pos.iter().chain(&m.neg) {
            assert_eq!(f.iter().map(|&a| c[a]).sum::<i64>(), 0);
        }
    }
    let c = cocycles.iter().find_map(|c| cyclic_cover(&m, c, 2).ok()).unwrap();
    assert_eq!((c.n_vertices(), c.n_arrows(), c.n_faces()), (2, 10, 4));
    assert_eq!(c.genus(), 3);
}

#[test]
fn rectification_counts() {
    let r = rectify(&fixtures::quiver("torus2loop.quiver")).unwrap();
    assert_eq!((r.dimer.n_vertices(), r.dimer.n_arrows()), (2, 4));
    assert_eq!(r.degree.iter().filter(|&&d| d == 0).count(), 2);

    let q = fixtures::quiver("tetra.quiver");
    let r = rectify(&q).unwrap();
    assert_eq!((r.dimer.n_vertices(), r.dimer.n_arrows(), r.dimer.n_faces()), (6, 12, 8));
    let mut zero: Vec<(String, String)> = (0..r.dimer.n_arrows())
        .filter(|&a| r.degree[a] == 0)
        .map(|a| (r.dimer.vertices[r.dimer.tail(a)].clone(), r.dimer.vertices[r.dimer.head(a)].clone()))
        .collect();
    zero.sort();
    let s = |x: &str, y: &str| (x.to_string(), y.to_string());
    assert_eq!(zero, vec![s("a", "d"), s("b", "a"), s("e", "d"), s("f", "e")]);
}

#[test]
fn mirror_is_an_involution_with_dual_counts() {
    for name in fixtures::NAMES {
        let Parsed::Dimer(m) = fixtures::load(name) else { continue };
        let mm = mirror_dimer(&m);
        assert!(mirror_dimer(&mm).same_up_to_vertex_names(&m), "{name}");
        assert_eq!(mm.n_arrows(), m.n_arrows());
        assert_eq!(mm.n_faces(), m.n_faces());
        assert_eq!(mm.n_vertices(), dimerlab_core::zigzag::zigzag_cycles(&m).len());
    }
    let c3 = mirror_dimer(&fixtures::dimer("c3"));
    assert_eq!((c3.n_vertices(), c3.genus()), (3, 0));
    let d2 = mirror_dimer(&fixtures::dimer("dimex2"));
    assert_eq!((d2.n_vertices(), d2.genus()), (4, 1));
    assert!(d2.same_up_to_vertex_names(&fixtures::dimer("dimex2_mirror")) || d2.canonical() == fixtures::dimer("dimex2_mirror").canonical());
}
