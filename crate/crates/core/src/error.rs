use alloc::string::String;
use core::fmt;

/// Every failure the core can report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    UnknownVertex(String),
    UnknownArrow(String),
    Duplicate(String),
    /// A boundary cycle whose consecutive entries do not chain.
    Chain { cycle: usize, position: usize },
    /// An arrow that is not covered exactly once in each orientation.
    Coverage { arrow: String, detail: &'static str },
    EmptyFace(usize),
    /// Faces of length one bound a loop; they are rejected.
    DegenerateFace(usize),
    Disconnected,
    OddEuler(i64),
    NotADimer(&'static str),
    NotClosed,
    NotComposable,
    /// The operation needs a consistent torus dimer.
    NeedsConsistentTorus,
    /// A bounded search ran out of room.
    Exhausted(&'static str),
    Invalid(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownVertex(v) => write!(f, "reference to undeclared vertex `{v}`"),
            Error::UnknownArrow(a) => write!(f, "reference to undeclared arrow `{a}`"),
            Error::Duplicate(n) => write!(f, "duplicate identifier `{n}`"),
            Error::Chain { cycle, position } => {
                write!(f, "face {cycle} does not chain at entry {position}")
            }
            Error::Coverage { arrow, detail } => write!(f, "arrow `{arrow}` {detail}"),
            Error::EmptyFace(i) => write!(f, "face {i} is empty"),
            Error::DegenerateFace(i) => write!(f, "face {i} has length 1"),
            Error::Disconnected => f.write_str("the glued complex is disconnected"),
            Error::OddEuler(c) => write!(f, "Euler characteristic {c} is odd"),
            Error::NotADimer(why) => write!(f, "not a dimer model: {why}"),
            Error::NotClosed => f.write_str("path is not closed"),
            Error::NotComposable => f.write_str("arguments are not composable"),
            Error::NeedsConsistentTorus => {
                f.write_str("operation needs a zigzag consistent dimer on a torus")
            }
            Error::Exhausted(what) => write!(f, "search bound exhausted: {what}"),
            Error::Invalid(why) => f.write_str(why),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
