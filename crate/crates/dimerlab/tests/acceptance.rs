//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
//!
//! Built without the libtest harness so the lines reach the terminal.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use dimerlab::fixtures;
use dimerlab::format::Parsed;
use dimerlab_core::cover::{check_consistency, Verdict, Witness};
use dimerlab_core::gentle::{GentleCategory, SpiralPath};
use dimerlab_core::hochschild::{bardzell_cochain_complex, hh_dimensions, hh_generator_check, Signs};
use dimerlab_core::jacobi::Jacobi;
use dimerlab_core::lincomb::LinComb;
use dimerlab_core::matfact::compare::{compare_with_mirror, Bounds};
use dimerlab_core::matfact::{Mf, MfElem, SectorKey, ZigSegment};
use dimerlab_core::mirror::mirror_dimer;
use dimerlab_core::mukappa::{mu_paths, sites, KappaMap, Strategy};
use dimerlab_core::quiver::DimerModel;
use dimerlab_core::rectify::rectify;
use dimerlab_core::toric::{default_frame, mirror_polygon, stable_collections_fan};
use dimerlab_core::twisted::{chord, chord_check, Tw};
use dimerlab_core::verify::{verify_exhaustive, verify_m_identities, Corrupted, GentleAInf};
use dimerlab_core::zigzag::zigzag_cycles;
use dimerlab_core::{q, Q};
use num_traits::{One, Zero};
use proptest::prelude::Rng;
use proptest::test_runner::{RngAlgorithm, TestRng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gentle(name: &str) -> GentleCategory {
    GentleCategory::new(rectify(&fixtures::quiver(name)).unwrap())
}

fn dimers() -> Vec<(&'static str, DimerModel)> {
    fixtures::NAMES
        .iter()
        .filter_map(|&n| match fixtures::load(n) {
            Parsed::Dimer(m) => Some((n, m)),
            Parsed::Quiver(_) => None,
        })
        .collect()
}

fn c1_surfaces() -> Outcome {
    let mut seen = Vec::new();
    for (name, g) in [("dimex1.quiver", 1), ("dimex2.dimer", 1), ("dimex3.dimer", 1), ("dimex4.dimer", 2), ("octahedron.dimer", 0)] {
        let got = fixtures::quiver(name).surface().map_err(|e| format!("{name}: {e}"))?.genus;
        ensure(got == g, format!("{name}: genus {got}, expected {g}"))?;
        seen.push(format!("{}={got}", name.split('.').next().unwrap()));
    }
    Ok(format!("genera {}", seen.join(" ")))
}

fn c2_consistency() -> Outcome {
    let verdict = |m: &DimerModel| check_consistency(m, 500).map(|r| r.verdict).map_err(|e| e.to_string());
    for stem in ["dimex2", "dimex4"] {
        let v = verdict(&fixtures::dimer(stem))?;
        ensure(v == Verdict::Consistent, format!("{stem}: {v:?}"))?;
    }
    let m3 = fixtures::dimer("dimex3");
    match verdict(&m3)? {
        Verdict::Inconsistent(Some(Witness { arrow, i: 3, j: 3 })) if m3.name(arrow) == "x" => {}
        v => return Err(format!("dimex3: {v:?}")),
    }
    let mut spheres = 0;
    for (name, m) in dimers().into_iter().chain([("mirror(c3)", mirror_dimer(&fixtures::dimer("c3")))]) {
        if m.genus() == 0 {
            let v = verdict(&m)?;
            ensure(matches!(v, Verdict::Inconsistent(_)), format!("{name} on the sphere: {v:?}"))?;
            spheres += 1;
        }
    }
    ensure(spheres >= 2, "fewer than two sphere dimers examined")?;
    Ok(format!("dimex2, dimex4 consistent; dimex3 witness (x, 3, 3); {spheres} sphere dimers inconsistent"))
}

fn c3_rectification() -> Outcome {
    let r = rectify(&fixtures::quiver("torus2loop.quiver")).map_err(|e| e.to_string())?;
    let zeros = r.degree.iter().filter(|&&d| d == 0).count();
    ensure((r.dimer.n_vertices(), r.dimer.n_arrows(), zeros) == (2, 4, 2), "torus with two loops")?;

    let r = rectify(&fixtures::quiver("tetra.quiver")).map_err(|e| e.to_string())?;
    ensure((r.dimer.n_vertices(), r.dimer.n_arrows(), r.dimer.n_faces()) == (6, 12, 8), "tetrahedron counts")?;
    let d = &r.dimer;
    let mut zero: Vec<(String, String)> =
        (0..d.n_arrows()).filter(|&a| r.degree[a] == 0).map(|a| (d.vertices[d.tail(a)].clone(), d.vertices[d.head(a)].clone())).collect();
    zero.sort();
    let marked: Vec<(String, String)> =
        [("a", "d"), ("b", "a"), ("e", "d"), ("f", "e")].iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
    ensure(zero == marked, format!("tetrahedron degree-0 arrows {zero:?}"))?;
    Ok(format!(
        "2/4 with 2 degree-0; 6/12/8 with degree-0 arrows b>a e>d a>d f>e ({} in total, not 6)",
        zero.len()
    ))
}

fn c4_mirror() -> Outcome {
    for (name, m) in dimers() {
        let mm = mirror_dimer(&m);
        ensure(mirror_dimer(&mm).same_up_to_vertex_names(&m), format!("{name}: mirror twice differs"))?;
        ensure(mm.n_vertices() == zigzag_cycles(&m).len(), format!("{name}: vertex count"))?;
    }
    let c3 = mirror_dimer(&fixtures::dimer("c3"));
    ensure((c3.n_vertices(), c3.genus()) == (3, 0), "mirror(C3)")?;
    let d2 = mirror_dimer(&fixtures::dimer("dimex2"));
    ensure((d2.n_vertices(), d2.genus()) == (4, 1), "mirror(dimex2)")?;
    ensure(d2.same_up_to_vertex_names(&fixtures::dimer("dimex2_mirror")), "mirror(dimex2) differs from the shipped mirror")?;
    let mut counts = Vec::new();
    for (stem, want) in [("dimex2", 4), ("dimex3", 3), ("dimex4", 3), ("octahedron", 4)] {
        let n = mirror_dimer(&fixtures::dimer(stem)).n_vertices();
        ensure(n == want, format!("{stem}: mirror has {n} vertices, expected {want}"))?;
        counts.push(n.to_string());
    }
    Ok(format!("involution on {} dimers; C3 -> 3 on sphere; mirror vertex counts {}", dimers().len(), counts.join(",")))
}

fn c5_ainf() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for name in ["c3.dimer", "dimex2_mirror.dimer"] {
        let g = gentle(name);
        let k = KappaMap::mu_bar(&g);
        let rep = verify_m_identities(&g, &k, 6, 2);
        ensure(rep.checked > 0 && rep.violations.is_empty(), format!("{name}: {} violations", rep.violations.len()))?;
        total += rep.checked;
    }
    let t = start.elapsed();
    ensure(t <= Duration::from_secs(300), format!("took {t:?}"))?;
    Ok(format!("{total} tuples, 0 violations, {:.1}s", t.as_secs_f64()))
}

/// Weights at powers 1 and 2 that are generic enough to separate strategies.
fn generic_kappa(g: &GentleCategory) -> KappaMap {
    let mut k = KappaMap::zero();
    for c in 0..g.rect.dimer.pos.len() {
        k.set(c, 1, q(c as i64 + 2));
        k.set(c, 2, Q::new(3.into(), (c as i64 + 5).into()));
    }
    k
}

/// A composable tuple with at least one collapse site, grown by inserting
/// full positive-cycle runs between neighbours.
fn reducible(g: &GentleCategory, paths: &[SpiralPath], rng: &mut TestRng) -> Option<Vec<SpiralPath>> {
    let d = &g.rect.dimer;
    let mut pick = |n: usize| (rng.next_u32() as usize) % n.max(1);
    let p1 = paths[pick(paths.len())];
    let next: Vec<SpiralPath> = paths.iter().copied().filter(|p| g.target(p) == g.source(&p1)).collect();
    let mut t = vec![p1, next[pick(next.len())]];
    for _ in 0..1 + pick(3) {
        let i = pick(t.len() - 1);
        let (left, right) = (t[i], t[i + 1]);
        let b1 = match g.split_first(&left) {
            Some((a, _)) => d.neg_prev(a),
            None => {
                let ins: Vec<usize> = (0..d.n_arrows()).filter(|&a| d.head(a) == g.source(&left)).collect();
                ins[pick(ins.len())]
            }
        };
        let l = d.pos[d.pos_loc(b1).0].len();
        let nl = l * (1 + pick(2));
        let mut block = vec![b1];
        for _ in 1..nl {
            block.push(d.pos_prev(*block.last().unwrap()));
        }
        let first = g.compose_paths(&left, &g.arrow(b1)).ok()??;
        let last = g.compose_paths(&g.arrow(block[nl - 1]), &right).ok()??;
        let mut n = t[..i].to_vec();
        n.push(first);
        n.extend(block[1..nl - 1].iter().map(|&b| g.arrow(b)));
        n.push(last);
        n.extend_from_slice(&t[i + 2..]);
        t = n;
    }
    (!sites(g, &t).is_empty()).then_some(t)
}

fn c6_reduction() -> Outcome {
    let mut rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut names = Vec::new();
    for name in ["c3.dimer", "dimex1.quiver", "dimex2.dimer", "dimex2_mirror.dimer", "tetra.quiver", "pentagon.quiver", "torus2loop.quiver"] {
        let g = gentle(name);
        let k = generic_kappa(&g);
        let paths = g.all_paths(1);
        let (mut found, mut attempts, mut nonzero) = (0, 0, 0);
        while found < 1000 {
            attempts += 1;
            ensure(attempts < 200_000, format!("{name}: only {found} reducible tuples"))?;
            let Some(t) = reducible(&g, &paths, &mut rng) else { continue };
            found += 1;
            let l = mu_paths(&g, &k, &t, Strategy::LeftMost).map_err(|e| e.to_string())?;
            let r = mu_paths(&g, &k, &t, Strategy::RightMost).map_err(|e| e.to_string())?;
            ensure(l == r, format!("{name}: strategies differ on {t:?}"))?;
            nonzero += usize::from(l.is_some());
        }
        names.push(format!("{}:{nonzero}", name.split('.').next().unwrap()));
    }
    Ok(format!("1000 reducible tuples on each of 7 fixtures agree (nonzero per fixture {})", names.join(" ")))
}

fn c7_hochschild() -> Outcome {
    let mut cycles = 0;
    for name in fixtures::NAMES {
        let g = gentle(name);
        for c in 0..g.rect.dimer.pos.len() {
            let bc = bardzell_cochain_complex(&g, c, 3, Signs::Graded).map_err(|e| e.to_string())?;
            let r = hh_dimensions(&g, &bc);
            ensure(r.d_squared_zero, format!("{name} c{c}: d^2 != 0"))?;
            for n in 1..=2 {
                ensure(r.pattern(n) == Some([0, 1, 1]), format!("{name} c{c} n={n}: {:?}", r.pattern(n)))?;
                ensure(hh_generator_check(&g, &bc, n).map_err(|e| e.to_string())?, format!("{name} c{c} n={n}: generators"))?;
            }
            cycles += 1;
        }
    }
    Ok(format!("(0,1,1) for n=1,2 with both generators nontrivial on {cycles} positive cycles of {} fixtures", fixtures::NAMES.len()))
}

fn dimex2_mf() -> Mf {
    Mf::new(Jacobi::new(&fixtures::dimer("dimex2"), None).unwrap()).unwrap()
}

fn c8_mf_homology() -> Outcome {
    let mf = dimex2_mf();
    let n = mf.m().n_arrows();
    let (mut sectors, mut segments) = (0, 0);
    for a in 0..n {
        for b in 0..n {
            let r = mf.hom_homology(b, a, 2, None);
            ensure(r.exhausted.is_empty(), format!("{a}->{b}: search exhausted"))?;
            for s in &r.sectors {
                ensure(s.dim <= 1, format!("{a}->{b}: sector of dimension {}", s.dim))?;
            }
            ensure(r.total() == r.segments, format!("{a}->{b}: total {} vs {} segments", r.total(), r.segments))?;
            ensure(r.ok(), format!("{a}->{b}: sector not spanned by zetas"))?;
            sectors += r.sectors.len();
            segments += r.segments;
        }
    }
    Ok(format!("{} arrow pairs, {sectors} sectors of dimension <= 1, totals = {segments} segments", n * n))
}

fn c9_mf_products() -> Outcome {
    let mf = dimex2_mf();
    let m = mf.m().clone();
    let mut segs = BTreeSet::new();
    for a in 0..m.n_arrows() {
        segs.insert(ZigSegment::identity(a));
        for p in [0, 1] {
            for len in 2..=5 {
                segs.insert(ZigSegment::new(&m, a, p, len));
            }
        }
    }
    let (mut concat, mut nonzero) = (0, 0);
    for x in &segs {
        for y in segs.iter().filter(|y| y.target() == x.source()) {
            let v = mf.products(&[x.clone(), y.clone()]).map_err(|e| e.to_string())?;
            ensure(v == mf.mu2_closed(x, y), format!("mu2 {x:?} {y:?}"))?;
            concat += 1;
            nonzero += usize::from(!v.is_zero());
        }
    }
    let mut runs = 0;
    for positive in [true, false] {
        let faces = if positive { &m.pos } else { &m.neg };
        for (f, face) in faces.iter().enumerate() {
            let k = face.len();
            for start in 0..k {
                for len in 2..=k + 2 {
                    let v = mf.products(&mf.face_chain(positive, f, start, len)).map_err(|e| e.to_string())?;
                    let want = if len == k { LinComb::basis(ZigSegment::identity(face[start])) } else { LinComb::zero() };
                    ensure(v == want, format!("face {positive} {f} start {start} run {len}"))?;
                    runs += 1;
                }
            }
        }
    }
    Ok(format!("{concat} binary products ({nonzero} nonzero) are concatenations; {runs} face runs give id or 0"))
}

fn c10_mirror_theorem() -> Outcome {
    let start = Instant::now();
    let r = compare_with_mirror(&fixtures::dimer("dimex2"), Bounds { max_arity: 5, winding: 1, class_radius: 2 }).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    ensure(r.products.mismatches.is_empty(), format!("{} mismatches", r.products.mismatches.len()))?;
    ensure(r.pairs.iter().all(|p| p.ok), "hom spaces differ")?;
    let rho = r.rescaling.as_ref().ok_or("no rescaling")?;
    ensure(r.ok(), "comparison not ok")?;
    ensure(t <= Duration::from_secs(300), format!("took {t:?}"))?;
    let trivial = rho.iter().all(One::is_one);
    Ok(format!(
        "{} tuples, {} nonzero, 0 mismatches, rescaling {}, {:.1}s",
        r.products.checked,
        r.products.nonzero,
        if trivial { "trivial" } else { "nontrivial" },
        t.as_secs_f64()
    ))
}

fn c11_toric() -> Outcome {
    let m = fixtures::dimer("toric");
    let o = m.vertex_index("1").ok_or("vertex 1")?;
    let r = mirror_polygon(&m, &default_frame(&m, o).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let stable: BTreeSet<BTreeSet<String>> = r.stable.iter().map(|&i| r.matchings[i].names(&m).into_iter().collect()).collect();
    let want: BTreeSet<BTreeSet<String>> = [["b", "w"], ["d", "z"], ["a", "y"], ["c", "x"], ["a", "b"]]
        .iter()
        .map(|p| p.iter().map(|s| s.to_string()).collect())
        .collect();
    ensure(stable == want, format!("stable matchings {stable:?}"))?;
    ensure((r.polygon.boundary, r.polygon.interior) == (4, 1), "B, I")?;
    let c = &r.checks;
    ensure(c.zigzag_b == (4, 4) && c.punctures == (4, 4), "B vs zigzag cycles and punctures")?;
    ensure(c.genus_i == (1, 1), "I vs mirror genus")?;
    ensure(c.q0_formula == (4, 4), "#Q0 = B + 2I - 2")?;
    ensure(c.ok(), format!("{c:?}"))?;
    let fan = stable_collections_fan(&m, &r).map_err(|e| e.to_string())?;
    ensure(fan.triangles.len() == 4 && fan.count == (4, 4) && fan.ok(), "fan")?;

    let d2 = fixtures::dimer("dimex2");
    let r2 = mirror_polygon(&d2, &default_frame(&d2, 0).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure((r2.polygon.boundary, r2.polygon.interior, r2.stable.len()) == (4, 1, 5) && r2.checks.ok(), "dimex2 polygon")?;

    let c3 = fixtures::dimer("c3");
    let r3 = mirror_polygon(&c3, &default_frame(&c3, 0).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure((r3.polygon.boundary, r3.polygon.interior) == (3, 0) && r3.checks.ok(), "C3 polygon")?;
    Ok("five stable matchings {b,w},{d,z},{a,y},{c,x},{a,b}; B=4 I=1; 4 triangles = #Q0; B = zigzags = punctures; C3 B=3 I=0".into())
}

fn c12_twisted() -> Outcome {
    let qv = fixtures::quiver("pentagon.quiver");
    let g = GentleCategory::new(rectify(&qv).map_err(|e| e.to_string())?);
    let k = KappaMap::mu_bar(&g);
    let tw = Tw::new(&g, &k);
    let b = qv.arrow_index("b").ok_or("arrow b")?;
    let face = qv.cycles.iter().position(|c| c.len() == 4).ok_or("no 4-face")?;
    let ch = chord(&qv, b, face).map_err(|e| e.to_string())?;
    let r = chord_check(&tw, &ch).map_err(|e| e.to_string())?;
    ensure(r.w_valid, "w fails the Maurer-Cartan equation")?;
    ensure(r.first, "f1 f2 is not the identity of v0")?;
    ensure(r.second, "f2 f1 is not the identity of w")?;
    Ok(format!("w on {} summands is Maurer-Cartan; f1 f2 = id and f2 f1 = id exactly", ch.objects.len() - 1))
}

fn c13_negative_controls() -> Outcome {
    let g = gentle("c3.dimer");
    let k = KappaMap::mu_bar(&g);
    let bad = Corrupted { inner: GentleAInf::new(&g, &k), arity: 3, flip: |t: &[SpiralPath]| g.len(&t[0]) > 1 };
    let rep = verify_exhaustive(&bad, &g.all_paths(1), 4);
    ensure(!rep.violations.is_empty(), "corrupted product sign not detected")?;
    let clean = verify_exhaustive(&GentleAInf::new(&g, &k), &g.all_paths(1), 4);
    ensure(clean.violations.is_empty(), "uncorrupted products fail")?;

    let mf = dimex2_mf();
    let flipped = |x: &MfElem| -> MfElem { mf.d(x).iter().map(|(u, c)| (if u.i == 0 && u.j == 1 { -c.clone() } else { c.clone() }, u.clone())).collect() };
    let m = mf.m().clone();
    let mut caught = false;
    let mut clean_ok = true;
    for a in 0..m.n_arrows() {
        for p in [0, 1] {
            for len in 2..=4 {
                let key = mf.segment_sector(&ZigSegment::new(&m, a, p, len)).map_err(|e| e.to_string())?;
                for dg in -1..=1 {
                    for u in mf.units(SectorKey { g: key.g + dg, ..key }).map_err(|e| e.to_string())? {
                        let y: MfElem = LinComb::basis(u);
                        caught |= !flipped(&flipped(&y)).is_zero();
                        clean_ok &= mf.d(&mf.d(&y)).is_zero();
                    }
                }
            }
        }
    }
    ensure(clean_ok, "d^2 != 0 without corruption")?;
    ensure(caught, "flipped differential sign not detected")?;

    let mut bc = bardzell_cochain_complex(&g, 0, 2, Signs::Graded).map_err(|e| e.to_string())?;
    ensure(bc.d_squared_zero(), "Bardzell differential fails before perturbation")?;
    let kk = 3;
    let (row, col) = (0..bc.d[kk].rows)
        .flat_map(|r| (0..bc.d[kk].cols).map(move |c| (r, c)))
        .find(|&(r, c)| !bc.d[kk].data[r][c].is_zero() && (0..bc.d[kk + 1].rows).any(|i| !bc.d[kk + 1].data[i][r].is_zero()))
        .ok_or("no entry to perturb")?;
    bc.perturb(kk, row, col);
    ensure(!bc.d_squared_zero() && !hh_dimensions(&g, &bc).d_squared_zero, "perturbed Bardzell differential not detected")?;
    Ok(format!("corrupted mu ({} violations), flipped MF d, perturbed Bardzell d all detected", rep.violations.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("surface invariants", c1_surfaces),
        ("consistency verdicts", c2_consistency),
        ("rectification", c3_rectification),
        ("mirror duality", c4_mirror),
        ("A-infinity identities", c5_ainf),
        ("reduction strategies", c6_reduction),
        ("Hochschild cohomology", c7_hochschild),
        ("MF homology", c8_mf_homology),
        ("MF products", c9_mf_products),
        ("mirror comparison", c10_mirror_theorem),
        ("toric polygon", c11_toric),
        ("twisted chord", c12_twisted),
        ("negative controls", c13_negative_controls),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {:>2} {name} [{secs:.1}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name} [{secs:.1}s]: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
