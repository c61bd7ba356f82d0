//! The `dimerlab` command-line driver.
//!
//! Exit status is 0 on success, 1 when a mathematical check fails and 2 on
//! bad input (unreadable file, parse error, bad flag, unsupported model).

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dimerlab_core::cover::{check_consistency, Verdict};
use dimerlab_core::gentle::GentleCategory;
use dimerlab_core::hochschild::{bardzell_cochain_complex, hh_dimensions, hh_generator_check, Signs};
use dimerlab_core::jacobi::Jacobi;
use dimerlab_core::lincomb::LinComb;
use dimerlab_core::matfact::compare::{compare_with_mirror_at, Bounds, PairReport, SectorDim};
use dimerlab_core::matfact::{Mf, ZigSegment};
use dimerlab_core::mirror::mirror_dimer;
use dimerlab_core::mukappa::KappaMap;
use dimerlab_core::quiver::{DimerModel, EmbeddedQuiver, Entry};
use dimerlab_core::rectify::rectify;
use dimerlab_core::toric::{default_frame, frame_from, is_perfect_matching, mirror_polygon, stable_collections_fan, PerfectMatching};
use dimerlab_core::twisted::{chord, chord_check, Tw};
use dimerlab_core::verify::verify_m_identities;
use dimerlab_core::zigzag::zigzag_cycles;

use crate::fixtures;
use crate::format::{emit_dimer, emit_dot, parse, Parsed};
use crate::report;

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "DIMERLAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "dimerlab", version, about = "Dimer models, their mirrors and the categories attached to them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a model and report its surface and zigzag consistency.
    Check { input: PathBuf },
    /// Rectify a quiver and print the result with arrow degrees.
    Rectify { input: PathBuf },
    /// Print the mirror dimer.
    Mirror { input: PathBuf },
    /// List the zigzag cycles.
    Zigzag { input: PathBuf },
    /// Check the A-infinity identities of the gentle category.
    GentleVerify { input: PathBuf },
    /// Hochschild cohomology around each positive cycle.
    Hochschild {
        input: PathBuf,
        /// Highest power of a cycle to examine.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        powers: u64,
    },
    /// Homology and products of arrow matrix factorizations.
    Mf { input: PathBuf },
    /// Compare matrix factorizations with the gentle category of the mirror.
    MirrorCompare { input: PathBuf },
    /// Stable matchings, lattice polygon and fan.
    Toric { input: PathBuf },
    /// Chord identities in the twisted completion.
    TwistedDemo {
        input: PathBuf,
        /// Restrict to one chord arrow.
        #[arg(long)]
        chord: Option<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    pub bound_arity: u64,
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub bound_winding: u64,
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..))]
    pub class_radius: i64,
    #[arg(long, global = true, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
    pub face_budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Trivial vertex for the toric frame.
    #[arg(long, global = true)]
    pub vertex_o: Option<String>,
    /// Cycle through the trivial vertex, as `a,b,~c`.
    #[arg(long, global = true)]
    pub cycle_x: Option<String>,
    #[arg(long, global = true)]
    pub cycle_y: Option<String>,
    /// Positive face through the trivial vertex.
    #[arg(long, global = true)]
    pub cycle_z: Option<String>,
    /// Reference perfect matching, as `a,b,...`.
    #[arg(long, global = true)]
    pub matching: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Violation,
}

impl Outcome {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Outcome::Ok
        } else {
            Outcome::Violation
        }
    }

    pub fn code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::Violation => 1,
        }
    }
}

/// Bad input; reported on stderr with exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Run = Result<Outcome, InputError>;

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match threads().and_then(|_| dispatch(&cli, out)) {
        Ok(o) => o.code(),
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

/// The thread cap from the environment. All computations currently run on
/// the calling thread, so any valid cap is honoured.
pub fn threads() -> Result<usize, InputError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(InputError(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
    }
}

fn resolve(input: &Path) -> PathBuf {
    if input.exists() {
        return input.to_path_buf();
    }
    let shipped = fixtures::dir().join(input);
    if shipped.exists() {
        return shipped;
    }
    input.to_path_buf()
}

/// Reads a model file; bare fixture names such as `dimex2.dimer` are looked
/// up in the shipped corpus.
pub fn load(input: &Path) -> Result<Parsed, InputError> {
    let path = resolve(input);
    let text = std::fs::read_to_string(&path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn need_dimer(input: &Path, what: &str) -> Result<DimerModel, InputError> {
    match load(input)? {
        Parsed::Dimer(m) => Ok(m),
        Parsed::Quiver(q) => q.to_dimer().map_err(|_| InputError(format!("`{what}` needs a dimer model, {} is not one", input.display()))),
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), InputError> {
    let s = serde_json::to_string_pretty(value)?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn no_dot(opts: &Options, what: &str) -> Result<(), InputError> {
    if opts.format == Format::Dot {
        return Err(InputError(format!("`{what}` has no dot output")));
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Run {
    let o = &cli.opts;
    match &cli.command {
        Command::Check { input } => check(input, o, out),
        Command::Rectify { input } => rectify_cmd(input, o, out),
        Command::Mirror { input } => mirror(input, o, out),
        Command::Zigzag { input } => zigzag(input, o, out),
        Command::GentleVerify { input } => gentle_verify(input, o, out),
        Command::Hochschild { input, powers } => hochschild(input, *powers as usize, o, out),
        Command::Mf { input } => mf(input, o, out),
        Command::MirrorCompare { input } => mirror_compare(input, o, out),
        Command::Toric { input } => toric(input, o, out),
        Command::TwistedDemo { input, chord } => twisted_demo(input, chord.as_deref(), o, out),
    }
}

fn check(input: &Path, o: &Options, out: &mut dyn Write) -> Run {
    let parsed = load(input)?;
    let q = parsed.quiver();
    let dimer = match &parsed {
        Parsed::Dimer(m) => Some(m.clone()),
        Parsed::Quiver(q) => q.to_dimer().ok(),
    };
    if o.format == Format::Dot {
        let m = dimer.ok_or_else(|| InputError("dot output needs a dimer model".into()))?;
        write!(out, "{}", emit_dot(&m))?;
        return Ok(Outcome::Ok);
    }
    let surface = q.surface()?;
    let consistency = match &dimer {
        Some(m) => Some((m, check_consistency(m, o.face_budget as usize)?)),
        None => None,
    };
    let rep = report::Check {
        kind: if dimer.is_some() { "dimer" } else { "quiver" },
        vertices: q.vertices.len(),
        arrows: q.arrows.len(),
        surface: (&surface).into(),
        consistency: consistency.as_ref().map(|(m, r)| report::Consistency::new(m, r)),
    };
    let outcome = Outcome::from_ok(!matches!(consistency.as_ref().map(|(_, r)| &r.verdict), Some(Verdict::Inconsistent(_))));
    if o.format == Format::Json {
        emit(out, &rep)?;
        return Ok(outcome);
    }
    writeln!(out, "{}: {} vertices, {} arrows, {} faces", rep.kind, rep.vertices, rep.arrows, rep.surface.faces)?;
    let shape = match surface.genus {
        0 => "sphere".to_string(),
        1 => "torus".to_string(),
        g => format!("genus {g} surface"),
    };
    writeln!(out, "surface: {shape} (euler {}, genus {})", surface.euler, surface.genus)?;
    if let Some(c) = &rep.consistency {
        match &c.witness {
            Some(w) => writeln!(out, "consistency: {} (arrow {}, i = {}, j = {})", c.verdict, w.arrow, w.i, w.j)?,
            None => writeln!(out, "consistency: {}", c.verdict)?,
        }
        if !c.unresolved.is_empty() {
            writeln!(out, "unresolved arrows: {}", c.unresolved.join(" "))?;
        }
    }
    Ok(outcome)
}

fn rectify_cmd(input: &Path, o: &Options, out: &mut dyn Write) -> Run {
    let r = rectify(&load(input)?.quiver())?;
    match o.format {
        Format::Json => emit(out, &report::Dimer::rectified(&r))?,
        Format::Dot => write!(out, "{}", emit_dot(&r.dimer))?,
        Format::Text => {
            write!(out, "{}", emit_dimer(&r.dimer))?;
            let zero: Vec<&str> = (0..r.dimer.n_arrows()).filter(|&a| r.degree[a] == 0).map(|a| r.dimer.name(a)).collect();
            writeln!(out, "# degree 0: {}", zero.join(" "))?;
        }
    }
    Ok(Outcome::Ok)
}

fn mirror(input: &Path, o: &Options, out: &mut dyn Write) -> Run {
    let mm = mirror_dimer(&need_dimer(input, "mirror")?);
    match o.format {
        Format::Json => emit(out, &report::Dimer::new(&mm, None))?,
        Format::Dot => write!(out, "{}", emit_dot(&mm))?,
        Format::Text => write!(out, "{}", emit_dimer(&mm))?,
    }
    Ok(Outcome::Ok)
}

fn zigzag(input: &Path, o: &Options, out: &mut dyn Write) -> Run {
    no_dot(o, "zigzag")?;
    let m = need_dimer(input, "zigzag")?;
    let rep = report::Zigzags::new(&m, &zigzag_cycles(&m));
    if o.format == Format::Json {
        emit(out, &rep)?;
    } else {
        writeln!(out, "{} zigzag cycles", rep.count)?;
        for (i, c) in rep.cycles.iter().enumerate() {
            writeln!(out, "  z{i} ({}): {}", c.arrows.len(), c.arrows.join(" "))?;
        }
    }
    Ok(Outcome::Ok)
}

fn gentle_verify(input: &Path, o: &Options, out: &mut dyn Write) -> Run {
    no_dot(o, "gentle-verify")?;
    let g = GentleCategory::new(rectify(&load(input)?.quiver())?);
    let kappa = KappaMap::mu_bar(&g);
    let r = verify_m_identities(&g, &kappa, o.bound_arity as usize, o.bound_winding as usize);
    let rep = report::GentleVerify::from(&r);
    if o.format == Format::Json {
        emit(out, &rep)?;
    } else {
        writeln!(out, "checked {} tuples up to arity {}, winding {}", rep.checked, o.bound_arity, o.bound_winding)?;
        writeln!(out, "violations: {}", rep.violations.len())?;
        for v in rep.violations.iter().take(10) {
            writeln!(out, "  {:?}: lhs {:?}, rhs {:?}", v.tuple, v.lhs, v.rhs)?;
        }
    }
    Ok(Outcome::from_ok(r.ok()))
}

fn hochschild(input: &Path, powers: usize, o: &Options, out: &mut dyn Write) -> Run {
    no_dot(o, "hochschild")?;
    let g = GentleCategory::new(rectify(&load(input)?.quiver())?);
    let mut entries = Vec::new();
    for c in 0..g.rect.dimer.pos.len() {
        let bc = bardzell_cochain_complex(&g, c, powers + 1, Signs::Graded)?;
        let r = hh_dimensions(&g, &bc);
        for n in 1..=powers {
            entries.push(report::HhEntry::new(&r, n, hh_generator_check(&g, &bc, n)?));
        }
    }
    let ok = entries.iter().all(report::HhEntry::ok);
    if o.format == Format::Json {
        emit(out, &report::Hochschild { entries })?;
    } else {
        for e in &entries {
            let dims = e.dims.map_or("unreliable".to_string(), |d| format!("{d:?}"));
            writeln!(out, "cycle {} (l = {}), n = {}: dims {} in degrees {}..={}, generators {}", e.cycle, e.l, e.n, dims, e.n * e.l - 1, e.n * e.l + 1, if e.generators_ok { "ok" } else { "FAIL" })?;
        }
    }
    Ok(Outcome::from_ok(ok))
}

fn reference_matching(m: &DimerModel, o: &Options) -> Result<Option<PerfectMatching>, InputError> {
    let Some(spec) = &o.matching else { return Ok(None) };
    let mut arrows = BTreeSet::new();
    for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        arrows.insert(m.arrow_index(name).ok_or_else(|| InputError(format!("unknown arrow `{name}` in --matching")))?);
    }
    let arrows: Vec<usize> = arrows.into_iter().collect();
    if !is_perfect_matching(m, &arrows) {
        return Err(InputError(format!("--matching {spec} is not a perfect matching")));
    }
    Ok(Some(PerfectMatching { arrows }))
}

fn mf_segments(m: &DimerModel, max_len: usize) -> Vec<ZigSegment> {
    let mut set = BTreeSet::new();
    for a in 0..m.n_arrows() {
        set.insert(ZigSegment::identity(a));
        for parity in [0, 1] {
            for len in 2..=max_len {
                set.insert(ZigSegment::new(m, a, parity, len));
            }
        }
    }
    set.into_iter().collect()
}

fn mismatch(m: &DimerModel, tuple: &[ZigSegment], expected: &LinComb<ZigSegment>, found: &LinComb<ZigSegment>) -> report::ProductMismatch {
    report::ProductMismatch {
        tuple: tuple.iter().map(|z| report::segment(m, z)).collect(),
        expected: report::segment_comb(m, expected),
        found: report::segment_comb(m, found),
    }
}

fn mf(input: &Path, o: &Options, out: &mut dyn Write) -> Run {
    no_dot(o, "mf")?;
    let m = need_dimer(input, "mf")?;
    let mf = Mf::new(Jacobi::new(&m, reference_matching(&m, o)?)?)?;

    let mut pairs = Vec::new();
    for a in 0..m.n_arrows() {
        for b in 0..m.n_arrows() {
            let r = mf.hom_homology(b, a, o.class_radius, None);
            let p = PairReport {
                a,
                b,
                segments: r.segments,
                dims: r.sectors.iter().map(|s| SectorDim { class: s.key.class, g: s.key.g, dim: s.dim }).collect(),
                sectors_exhausted: r.exhausted.len(),
                ok: r.ok(),
            };
            pairs.push(report::Pair::new(&m, &p));
        }
    }

    let mut concatenation = report::ProductCheck::default();
    let segs = mf_segments(&m, 3 + o.bound_winding as usize);
    for x in &segs {
        for y in segs.iter().filter(|y| y.target() == x.source()) {
            concatenation.checked += 1;
            let found = mf.products(&[x.clone(), y.clone()])?;
            let expected = mf.mu2_closed(x, y);
            if found != expected {
                concatenation.mismatches.push(mismatch(&m, &[x.clone(), y.clone()], &expected, &found));
            }
        }
    }

    let mut faces = report::ProductCheck::default();
    for positive in [true, false] {
        let list = if positive { &m.pos } else { &m.neg };
        for (f, face) in list.iter().enumerate() {
            let k = face.len();
            for start in 0..k {
                for len in 2..=k + 2 {
                    let chain = mf.face_chain(positive, f, start, len);
                    faces.checked += 1;
                    let found = mf.products(&chain)?;
                    let expected = if len == k { LinComb::basis(ZigSegment::identity(face[start])) } else { LinComb::zero() };
                    if found != expected {
                        faces.mismatches.push(mismatch(&m, &chain, &expected, &found));
                    }
                }
            }
        }
    }

    let rep = report::MfReport { pairs, concatenation, faces };
    if o.format == Format::Json {
        emit(out, &rep)?;
    } else {
        let bad: Vec<String> = rep.pairs.iter().filter(|p| !p.ok).map(|p| format!("{}->{}", p.b, p.a)).collect();
        writeln!(out, "homology: {} arrow pairs within class radius {}, {} failing {}", rep.pairs.len(), o.class_radius, bad.len(), bad.join(" "))?;
        writeln!(out, "concatenation: {} products, {} mismatches", rep.concatenation.checked, rep.concatenation.mismatches.len())?;
        writeln!(out, "face runs: {} products, {} mismatches", rep.faces.checked, rep.faces.mismatches.len())?;
    }
    Ok(Outcome::from_ok(rep.ok()))
}

fn mirror_compare(input: &Path, o: &Options, out: &mut dyn Write) -> Run {
    no_dot(o, "mirror-compare")?;
    let m = need_dimer(input, "mirror-compare")?;
    let bounds = Bounds { max_arity: o.bound_arity as usize, winding: o.bound_winding as usize, class_radius: o.class_radius };
    let r = compare_with_mirror_at(&m, bounds, reference_matching(&m, o)?)?;
    let rep = report::MirrorCompare::new(&m, &r);
    if o.format == Format::Json {
        emit(out, &rep)?;
    } else {
        writeln!(out, "hom spaces: {} arrow pairs, {} failing", rep.pairs.len(), rep.pairs.iter().filter(|p| !p.ok).count())?;
        writeln!(
            out,
            "products: {} tuples up to arity {}, {} nonzero, {} mismatches",
            r.products.checked,
            bounds.max_arity,
            r.products.nonzero,
            r.products.mismatches.len()
        )?;
        match &rep.rescaling {
            Some(rho) => writeln!(out, "rescaling: {}", rho.join(" "))?,
            None => writeln!(out, "rescaling: none found")?,
        }
    }
    Ok(Outcome::from_ok(rep.ok()))
}

/// Parses `a,b,~c` into entries of `m`.
pub fn parse_cycle(m: &DimerModel, spec: &str) -> Result<Vec<Entry>, InputError> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (name, inverse) = match s.strip_prefix('~') {
                Some(rest) => (rest, true),
                None => (s, false),
            };
            let a = m.arrow_index(name).ok_or_else(|| InputError(format!("unknown arrow `{name}` in cycle {spec}")))?;
            Ok(if inverse { Entry::inv(a) } else { Entry::fwd(a) })
        })
        .collect()
}

fn toric(input: &Path, o: &Options, out: &mut dyn Write) -> Run {
    no_dot(o, "toric")?;
    let m = need_dimer(input, "toric")?;
    let v = match &o.vertex_o {
        Some(name) => m.vertex_index(name).ok_or_else(|| InputError(format!("unknown vertex `{name}`")))?,
        None => 0,
    };
    let frame = match (&o.cycle_x, &o.cycle_y) {
        (Some(x), Some(y)) => {
            let z = o.cycle_z.as_deref().map(|z| parse_cycle(&m, z)).transpose()?;
            frame_from(&m, v, parse_cycle(&m, x)?, parse_cycle(&m, y)?, z)?
        }
        (None, None) if o.cycle_z.is_none() => default_frame(&m, v)?,
        (None, None) => {
            let f = default_frame(&m, v)?;
            frame_from(&m, v, f.x, f.y, Some(parse_cycle(&m, o.cycle_z.as_deref().unwrap_or_default())?))?
        }
        _ => return Err(InputError("--cycle-x and --cycle-y must be given together".into())),
    };
    let r = mirror_polygon(&m, &frame)?;
    let fan = stable_collections_fan(&m, &r)?;
    let rep = report::Toric::new(&m, &r, &fan);
    if o.format == Format::Json {
        emit(out, &rep)?;
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "frame at {}: x = {}, y = {}, z = {}", m.vertices[v], report::entries(&m, &frame.x), report::entries(&m, &frame.y), report::entries(&m, &frame.z));
        let _ = writeln!(s, "{} perfect matchings, {} stable", rep.matchings.len(), rep.stable.len());
        for (&i, p) in rep.stable.iter().zip(&rep.points) {
            let _ = writeln!(s, "  {{{}}} at {p:?}", rep.matchings[i].join(","));
        }
        let c = &rep.checks;
        let _ = writeln!(s, "B = {}, I = {}, triangles = {}", rep.b, rep.i, rep.triangles.len());
        let _ = writeln!(s, "B vs zigzag cycles: {:?}; I vs mirror genus: {:?}; #Q0 vs B+2I-2: {:?}", c.zigzag_b, c.genus_i, c.q0_formula);
        write!(out, "{s}")?;
    }
    Ok(Outcome::from_ok(rep.ok()))
}

fn twisted_demo(input: &Path, only: Option<&str>, o: &Options, out: &mut dyn Write) -> Run {
    no_dot(o, "twisted-demo")?;
    let q: EmbeddedQuiver = load(input)?.quiver();
    let g = GentleCategory::new(rectify(&q)?);
    let kappa = KappaMap::mu_bar(&g);
    let tw = Tw::new(&g, &kappa);
    let arrows: Vec<usize> = match only {
        Some(name) => vec![q.arrow_index(name).ok_or_else(|| InputError(format!("unknown arrow `{name}`")))?],
        None => (0..q.arrows.len()).collect(),
    };
    let mut chords = Vec::new();
    for &b in &arrows {
        for (f, cyc) in q.cycles.iter().enumerate() {
            if cyc.len() < 3 || cyc.iter().filter(|e| e.arrow == b).count() != 1 || cyc.iter().any(|e| e.inverse) {
                continue;
            }
            let ch = chord(&q, b, f)?;
            let r = chord_check(&tw, &ch)?;
            chords.push(report::ChordJson::new(&q, b, f, &ch.objects, &r));
        }
    }
    if chords.is_empty() {
        return Err(InputError("no face of length three or more contains the chord arrow".into()));
    }
    let ok = chords.iter().all(report::ChordJson::ok);
    if o.format == Format::Json {
        emit(out, &report::TwistedDemo { chords })?;
    } else {
        for c in &chords {
            writeln!(
                out,
                "chord {} on face {} ({}): w {}, f1f2 = id {}, f2f1 = id {}",
                c.chord,
                c.face,
                c.objects.join(" "),
                if c.w_valid { "valid" } else { "INVALID" },
                c.first,
                c.second
            )?;
        }
    }
    Ok(Outcome::from_ok(ok))
}
