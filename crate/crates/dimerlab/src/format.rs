//! The line-based `.dimer` / `.quiver` text format.
//!
//! ```text
//! dimer            # or: quiver
//! vertex <id>
//! arrow <id> <tail> <head>
//! face + <entry>...
//! face - <entry>...
//! ```
//!
//! An entry is an arrow id, or `~id` for an inverse traversal (quiver files
//! only). Negative faces of a dimer are written as the real cycle.

use std::fmt::Write as _;

use dimerlab_core::quiver::{Arrow, DimerModel, EmbeddedQuiver, Entry};
use dimerlab_core::Error as CoreError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { line: usize, message: String },
    Model(CoreError),
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseError::Syntax { line, message } => write!(f, "line {line}: {message}"),
            ParseError::Model(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<CoreError> for ParseError {
    fn from(e: CoreError) -> Self {
        ParseError::Model(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Dimer(DimerModel),
    Quiver(EmbeddedQuiver),
}

impl Parsed {
    /// The embedded quiver underlying either kind.
    pub fn quiver(&self) -> EmbeddedQuiver {
        match self {
            Parsed::Dimer(m) => m.to_quiver(),
            Parsed::Quiver(q) => q.clone(),
        }
    }

    pub fn dimer(&self) -> Option<&DimerModel> {
        match self {
            Parsed::Dimer(m) => Some(m),
            Parsed::Quiver(_) => None,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

pub fn parse(text: &str) -> Result<Parsed, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| syntax(1, "empty document"))?;
    let is_dimer = match header {
        "dimer" => true,
        "quiver" => false,
        other => return Err(syntax(hline, format!("expected `dimer` or `quiver`, found `{other}`"))),
    };
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut faces: Vec<(usize, bool, Vec<Entry>)> = Vec::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "vertex" => {
                if toks.len() != 2 {
                    return Err(syntax(ln, "usage: vertex <id>"));
                }
                if vertices.iter().any(|v| v == toks[1]) {
                    return Err(syntax(ln, format!("duplicate vertex `{}`", toks[1])));
                }
                vertices.push(toks[1].to_string());
            }
            "arrow" => {
                if toks.len() != 4 {
                    return Err(syntax(ln, "usage: arrow <id> <tail> <head>"));
                }
                if toks[1].starts_with('~') {
                    return Err(syntax(ln, "arrow ids may not start with `~`"));
                }
                if arrows.iter().any(|a| a.name == toks[1]) {
                    return Err(syntax(ln, format!("duplicate arrow `{}`", toks[1])));
                }
                let vid = |n: &str| {
                    vertices
                        .iter()
                        .position(|v| v == n)
                        .ok_or_else(|| syntax(ln, format!("undeclared vertex `{n}`")))
                };
                arrows.push(Arrow { name: toks[1].to_string(), tail: vid(toks[2])?, head: vid(toks[3])? });
            }
            "face" => {
                let sign = match toks.get(1) {
                    Some(&"+") => true,
                    Some(&"-") => false,
                    _ => return Err(syntax(ln, "usage: face +|- <entry>...")),
                };
                if toks.len() < 3 {
                    return Err(syntax(ln, "face without entries"));
                }
                let mut entries = Vec::new();
                for t in &toks[2..] {
                    let (inverse, name) = match t.strip_prefix('~') {
                        Some(n) => (true, n),
                        None => (false, *t),
                    };
                    if inverse && is_dimer {
                        return Err(syntax(ln, "inverse entries are only legal in quiver files"));
                    }
                    let arrow = arrows
                        .iter()
                        .position(|a| a.name == name)
                        .ok_or_else(|| syntax(ln, format!("undeclared arrow `{name}`")))?;
                    entries.push(Entry { arrow, inverse });
                }
                faces.push((ln, sign, entries));
            }
            other => return Err(syntax(ln, format!("unknown directive `{other}`"))),
        }
    }
    for (ln, _, f) in &faces {
        for k in 0..f.len() {
            let (e, n) = (f[k], f[(k + 1) % f.len()]);
            let end = if e.inverse { arrows[e.arrow].tail } else { arrows[e.arrow].head };
            let start = if n.inverse { arrows[n.arrow].head } else { arrows[n.arrow].tail };
            if end != start {
                return Err(syntax(*ln, format!("face does not chain after `{}`", arrows[e.arrow].name)));
            }
        }
    }
    if is_dimer {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (_, sign, f) in faces {
            let ids = f.iter().map(|e| e.arrow).collect();
            if sign { pos.push(ids) } else { neg.push(ids) }
        }
        let covered = |fs: &Vec<Vec<usize>>| {
            let mut c = vec![0usize; arrows.len()];
            fs.iter().flatten().for_each(|&a| c[a] += 1);
            c
        };
        let (cp, cn) = (covered(&pos), covered(&neg));
        for (a, arr) in arrows.iter().enumerate() {
            if cp[a] == 0 || cn[a] == 0 {
                return Err(ParseError::Model(CoreError::Coverage {
                    arrow: arr.name.clone(),
                    detail: "not covered",
                }));
            }
        }
        Ok(Parsed::Dimer(DimerModel::new(vertices, arrows, pos, neg)?))
    } else {
        let cycles = faces.into_iter().map(|(_, _, f)| f).collect();
        Ok(Parsed::Quiver(EmbeddedQuiver::new(vertices, arrows, cycles)?))
    }
}

pub fn parse_dimer(text: &str) -> Result<DimerModel, ParseError> {
    match parse(text)? {
        Parsed::Dimer(m) => Ok(m),
        Parsed::Quiver(q) => Ok(q.to_dimer()?),
    }
}

fn header(out: &mut String, kind: &str, vertices: &[String], arrows: &[Arrow]) {
    let _ = writeln!(out, "{kind}");
    for v in vertices {
        let _ = writeln!(out, "vertex {v}");
    }
    for a in arrows {
        let _ = writeln!(out, "arrow {} {} {}", a.name, vertices[a.tail], vertices[a.head]);
    }
}

pub fn emit_dimer(m: &DimerModel) -> String {
    let mut out = String::new();
    header(&mut out, "dimer", &m.vertices, &m.arrows);
    for (sign, faces) in [("+", &m.pos), ("-", &m.neg)] {
        for f in faces {
            let names: Vec<&str> = f.iter().map(|&a| m.name(a)).collect();
            let _ = writeln!(out, "face {sign} {}", names.join(" "));
        }
    }
    out
}

pub fn emit_quiver(q: &EmbeddedQuiver) -> String {
    let mut out = String::new();
    header(&mut out, "quiver", &q.vertices, &q.arrows);
    for c in &q.cycles {
        let names: Vec<String> = c
            .iter()
            .map(|e| format!("{}{}", if e.inverse { "~" } else { "" }, q.arrows[e.arrow].name))
            .collect();
        let _ = writeln!(out, "face + {}", names.join(" "));
    }
    out
}

/// Graphviz rendering; edge labels list the faces containing each arrow.
pub fn emit_dot(m: &DimerModel) -> String {
    let mut out = String::from("digraph dimer {\n");
    for v in &m.vertices {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for (a, arr) in m.arrows.iter().enumerate() {
        let (p, _) = m.pos_loc(a);
        let (n, _) = m.neg_loc(a);
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{} (+{} -{})\"];",
            m.vertices[arr.tail], m.vertices[arr.head], arr.name, p, n
        );
    }
    out.push_str("}\n");
    out
}
