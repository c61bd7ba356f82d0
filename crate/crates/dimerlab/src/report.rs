//! Serializable reports printed by the command-line driver.
//!
//! Arrows, vertices and matchings are reported by name. Rational
//! coefficients are strings such as `"-3/2"`.

use serde::Serialize;

use dimerlab_core::cover::{ConsistencyReport, Verdict};
use dimerlab_core::gentle::{GentleCategory, SpiralPath};
use dimerlab_core::hochschild::HhReport;
use dimerlab_core::lincomb::LinComb;
use dimerlab_core::matfact::compare::{path_to_segment, MirrorReport, PairReport};
use dimerlab_core::mirror::mirror_dimer;
use dimerlab_core::matfact::ZigSegment;
use dimerlab_core::quiver::{DimerModel, EmbeddedQuiver, Entry, SurfaceReport};
use dimerlab_core::rectify::{rectify_dimer, RectifiedDimer};
use dimerlab_core::toric::{FanReport, ToricReport};
use dimerlab_core::twisted::{ChordReport, TwistedHom};
use dimerlab_core::verify::VerifyReport;
use dimerlab_core::zigzag::ZigzagCycle;

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Surface {
    pub euler: i64,
    pub genus: i64,
    pub connected: bool,
    pub faces: usize,
}

impl From<&SurfaceReport> for Surface {
    fn from(s: &SurfaceReport) -> Self {
        Surface { euler: s.euler, genus: s.genus, connected: s.connected, faces: s.face_count }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub arrow: String,
    pub i: u64,
    pub j: u64,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Consistency {
    /// `consistent`, `inconsistent` or `inconclusive`.
    pub verdict: &'static str,
    pub witness: Option<Witness>,
    pub unresolved: Vec<String>,
}

impl Consistency {
    pub fn new(m: &DimerModel, r: &ConsistencyReport) -> Self {
        let (verdict, witness) = match &r.verdict {
            Verdict::Consistent => ("consistent", None),
            Verdict::Inconsistent(w) => ("inconsistent", *w),
            Verdict::Inconclusive => ("inconclusive", None),
        };
        Consistency {
            verdict,
            witness: witness.map(|w| Witness { arrow: m.name(w.arrow).to_string(), i: w.i, j: w.j }),
            unresolved: r.unresolved.iter().map(|&a| m.name(a).to_string()).collect(),
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub kind: &'static str,
    pub vertices: usize,
    pub arrows: usize,
    pub surface: Surface,
    /// Absent for quivers that are not dimers.
    pub consistency: Option<Consistency>,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct ArrowJson {
    pub name: String,
    pub tail: String,
    pub head: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u8>,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Dimer {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    pub positive: Vec<Vec<String>>,
    pub negative: Vec<Vec<String>>,
    pub genus: i64,
}

impl Dimer {
    pub fn new(m: &DimerModel, degree: Option<&[u8]>) -> Self {
        let names = |f: &Vec<usize>| f.iter().map(|&a| m.name(a).to_string()).collect();
        Dimer {
            vertices: m.vertices.clone(),
            arrows: m
                .arrows
                .iter()
                .enumerate()
                .map(|(a, arr)| ArrowJson {
                    name: arr.name.clone(),
                    tail: m.vertices[arr.tail].clone(),
                    head: m.vertices[arr.head].clone(),
                    degree: degree.map(|d| d[a]),
                })
                .collect(),
            positive: m.pos.iter().map(names).collect(),
            negative: m.neg.iter().map(names).collect(),
            genus: m.genus(),
        }
    }

    pub fn rectified(r: &RectifiedDimer) -> Self {
        Dimer::new(&r.dimer, Some(&r.degree))
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Zigzag {
    pub arrows: Vec<String>,
    /// 0 for a zig step, 1 for a zag step, per arrow.
    pub parities: Vec<u8>,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Zigzags {
    pub count: usize,
    pub cycles: Vec<Zigzag>,
}

impl Zigzags {
    pub fn new(m: &DimerModel, cycles: &[ZigzagCycle]) -> Self {
        Zigzags {
            count: cycles.len(),
            cycles: cycles
                .iter()
                .map(|c| Zigzag {
                    arrows: c.states.iter().map(|&(a, _)| m.name(a).to_string()).collect(),
                    parities: c.states.iter().map(|&(_, p)| p).collect(),
                })
                .collect(),
        }
    }
}

/// A basis path as `(cycle, offset, length)`; trivial paths have no cycle and
/// carry their vertex as offset.
pub type PathKey = (Option<usize>, usize, usize);

pub fn path_key(p: &SpiralPath) -> PathKey {
    match *p {
        SpiralPath::Trivial(v) => (None, v, 0),
        SpiralPath::Arc { cycle, start, len } => (Some(cycle), start, len),
    }
}

/// Terms `(coefficient, cycle, offset, length)` sorted by path.
pub type MorphismJson = Vec<(String, Option<usize>, usize, usize)>;

pub fn morphism(x: &LinComb<SpiralPath>) -> MorphismJson {
    let mut out: Vec<_> = x.iter().map(|(p, c)| (path_key(p), c.to_string())).collect();
    out.sort();
    out.into_iter().map(|((cy, off, len), c)| (c, cy, off, len)).collect()
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct ViolationJson {
    pub tuple: Vec<PathKey>,
    pub lhs: MorphismJson,
    pub rhs: MorphismJson,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct GentleVerify {
    pub checked: usize,
    pub violations: Vec<ViolationJson>,
}

impl From<&VerifyReport<SpiralPath>> for GentleVerify {
    fn from(r: &VerifyReport<SpiralPath>) -> Self {
        GentleVerify {
            checked: r.checked,
            violations: r
                .violations
                .iter()
                .map(|v| ViolationJson { tuple: v.tuple.iter().map(path_key).collect(), lhs: morphism(&v.lhs), rhs: morphism(&v.rhs) })
                .collect(),
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct HhEntry {
    pub cycle: usize,
    pub n: usize,
    pub l: usize,
    /// Homology in degrees `nl − 1, nl, nl + 1`; absent when unreliable.
    pub dims: Option<[usize; 3]>,
    #[serde(rename = "generatorsOK")]
    pub generators_ok: bool,
    pub reliable: bool,
    #[serde(rename = "dSquaredZero")]
    pub d_squared_zero: bool,
}

impl HhEntry {
    pub fn new(r: &HhReport, n: usize, generators_ok: bool) -> Self {
        let dims = r.pattern(n);
        HhEntry { cycle: r.cycle, n, l: r.l, dims, generators_ok, reliable: dims.is_some(), d_squared_zero: r.d_squared_zero }
    }

    pub fn ok(&self) -> bool {
        self.d_squared_zero && self.generators_ok && self.dims == Some([0, 1, 1])
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Hochschild {
    pub entries: Vec<HhEntry>,
}

pub fn segment(m: &DimerModel, z: &ZigSegment) -> Vec<String> {
    z.arrows.iter().map(|&a| m.name(a).to_string()).collect()
}

pub fn segment_comb(m: &DimerModel, x: &LinComb<ZigSegment>) -> Vec<(String, Vec<String>)> {
    x.iter().map(|(z, c)| (c.to_string(), segment(m, z))).collect()
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct SectorDimJson {
    pub class: [i64; 2],
    pub g: i64,
    pub dim: usize,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Pair {
    pub a: String,
    pub b: String,
    pub segments: usize,
    pub dims: Vec<SectorDimJson>,
    #[serde(rename = "sectorsExhausted")]
    pub sectors_exhausted: usize,
    pub ok: bool,
}

impl Pair {
    pub fn new(m: &DimerModel, p: &PairReport) -> Self {
        Pair {
            a: m.name(p.a).to_string(),
            b: m.name(p.b).to_string(),
            segments: p.segments,
            dims: p.dims.iter().map(|d| SectorDimJson { class: d.class, g: d.g, dim: d.dim }).collect(),
            sectors_exhausted: p.sectors_exhausted,
            ok: p.ok,
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct ProductMismatch {
    pub tuple: Vec<Vec<String>>,
    pub expected: Vec<(String, Vec<String>)>,
    pub found: Vec<(String, Vec<String>)>,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq, Default)]
pub struct ProductCheck {
    pub checked: usize,
    pub mismatches: Vec<ProductMismatch>,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct MfReport {
    pub pairs: Vec<Pair>,
    pub concatenation: ProductCheck,
    pub faces: ProductCheck,
}

impl MfReport {
    pub fn ok(&self) -> bool {
        self.pairs.iter().all(|p| p.ok) && self.concatenation.mismatches.is_empty() && self.faces.mismatches.is_empty()
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct MirrorCompare {
    pub pairs: Vec<Pair>,
    pub products: ProductCheck,
    pub rescaling: Option<Vec<String>>,
}

impl MirrorCompare {
    pub fn new(m: &DimerModel, r: &MirrorReport) -> Self {
        let mut products = ProductCheck { checked: r.products.checked, mismatches: Vec::new() };
        if !r.products.mismatches.is_empty() {
            let g = mirror_gentle(m);
            for x in &r.products.mismatches {
                let tuple = x
                    .tuple
                    .iter()
                    .map(|p| g.as_ref().and_then(|g| path_to_segment(m, g, p).ok()).map_or_else(|| vec![format!("{:?}", path_key(p))], |z| segment(m, &z)))
                    .collect();
                products.mismatches.push(ProductMismatch { tuple, expected: segment_comb(m, &x.gentle), found: segment_comb(m, &x.mf) });
            }
        }
        MirrorCompare {
            pairs: r.pairs.iter().map(|p| Pair::new(m, p)).collect(),
            products,
            rescaling: r.rescaling.as_ref().map(|v| v.iter().map(ToString::to_string).collect()),
        }
    }

    pub fn ok(&self) -> bool {
        self.pairs.iter().all(|p| p.ok) && self.products.mismatches.is_empty() && self.rescaling.is_some()
    }
}

fn mirror_gentle(m: &DimerModel) -> Option<GentleCategory> {
    rectify_dimer(&mirror_dimer(m)).ok().map(GentleCategory::new)
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct ToricChecksJson {
    #[serde(rename = "zigzagB")]
    pub zigzag_b: (i64, i64),
    #[serde(rename = "genusI")]
    pub genus_i: (i64, i64),
    #[serde(rename = "q0Formula")]
    pub q0_formula: (i64, i64),
    pub punctures: (i64, i64),
    #[serde(rename = "boundaryZigzags")]
    pub boundary_zigzags: bool,
    #[serde(rename = "emptyPoints")]
    pub empty_points: Vec<(i64, i64)>,
    #[serde(rename = "sharedPoints")]
    pub shared_points: Vec<(i64, i64)>,
    #[serde(rename = "fanCount")]
    pub fan_count: (usize, usize),
    #[serde(rename = "fanTiling")]
    pub fan_tiling: bool,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Toric {
    pub matchings: Vec<Vec<String>>,
    /// Indices into `matchings`.
    pub stable: Vec<usize>,
    /// `(P(x), P(y))` of each stable matching, parallel to `stable`.
    pub points: Vec<(i64, i64)>,
    #[serde(rename = "B")]
    pub b: i64,
    #[serde(rename = "I")]
    pub i: i64,
    /// Triples of indices into `matchings`.
    pub triangles: Vec<[usize; 3]>,
    pub checks: ToricChecksJson,
}

impl Toric {
    pub fn new(m: &DimerModel, r: &ToricReport, fan: &FanReport) -> Self {
        let c = &r.checks;
        Toric {
            matchings: r.matchings.iter().map(|p| p.names(m)).collect(),
            stable: r.stable.clone(),
            points: r.stable.iter().map(|&i| r.coords[i]).collect(),
            b: r.polygon.boundary,
            i: r.polygon.interior,
            triangles: fan.triangles.clone(),
            checks: ToricChecksJson {
                zigzag_b: c.zigzag_b,
                genus_i: c.genus_i,
                q0_formula: c.q0_formula,
                punctures: c.punctures,
                boundary_zigzags: c.boundary_zigzags,
                empty_points: c.empty_points.clone(),
                shared_points: c.shared_points.clone(),
                fan_count: fan.count,
                fan_tiling: fan.tiling.ok,
            },
        }
    }

    pub fn ok(&self) -> bool {
        let c = &self.checks;
        c.zigzag_b.0 == c.zigzag_b.1
            && c.genus_i.0 == c.genus_i.1
            && c.q0_formula.0 == c.q0_formula.1
            && c.punctures.0 == c.punctures.1
            && c.boundary_zigzags
            && c.empty_points.is_empty()
            && c.shared_points.is_empty()
            && c.fan_count.0 == c.fan_count.1
            && c.fan_tiling
    }
}

/// Nonzero entries `(row, column, morphism)` of a matrix of paths.
pub fn twisted_hom(h: &TwistedHom) -> Vec<(usize, usize, MorphismJson)> {
    let mut out = Vec::new();
    for (i, row) in h.entries.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                out.push((i, j, morphism(x)));
            }
        }
    }
    out
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct ChordJson {
    pub chord: String,
    pub face: usize,
    /// Objects `v₀, v₁, …, v_i` by arrow name of the input quiver.
    pub objects: Vec<String>,
    #[serde(rename = "wValid")]
    pub w_valid: bool,
    pub first: bool,
    pub second: bool,
    #[serde(rename = "f1f2")]
    pub f1_f2: Vec<(usize, usize, MorphismJson)>,
    #[serde(rename = "f2f1")]
    pub f2_f1: Vec<(usize, usize, MorphismJson)>,
}

impl ChordJson {
    pub fn new(q: &EmbeddedQuiver, b: usize, face: usize, objects: &[usize], r: &ChordReport) -> Self {
        ChordJson {
            chord: q.arrows[b].name.clone(),
            face,
            objects: objects.iter().map(|&a| q.arrows[a].name.clone()).collect(),
            w_valid: r.w_valid,
            first: r.first,
            second: r.second,
            f1_f2: twisted_hom(&r.f1_f2),
            f2_f1: twisted_hom(&r.f2_f1),
        }
    }

    pub fn ok(&self) -> bool {
        self.w_valid && self.first && self.second
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct TwistedDemo {
    pub chords: Vec<ChordJson>,
}

/// Renders a path of entries as `a,~b,c`.
pub fn entries(q: &DimerModel, p: &[Entry]) -> String {
    p.iter().map(|e| format!("{}{}", if e.inverse { "~" } else { "" }, q.name(e.arrow))).collect::<Vec<_>>().join(",")
}
