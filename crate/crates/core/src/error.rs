use std::fmt;
use thiserror::Error;

/// A single failed identity together with its max-abs residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub identity: &'static str,
    pub residual: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (residual {:.3e})", self.identity, self.residual)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("frame dimension {0} must be odd and at least 3")]
    InvalidFrame(usize),

    #[error("frame has {dim} basis vectors but {labels} labels")]
    LabelCount { dim: usize, labels: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("rank mismatch: expected rank {expected}, found rank {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("tensor of dimension {dim} and rank {rank} needs {expected} entries, got {found}")]
    EntryCount {
        dim: usize,
        rank: usize,
        expected: usize,
        found: usize,
    },

    #[error("metric is degenerate (|det| = {det:.3e})")]
    DegenerateMetric { det: f64 },

    #[error("metric is not symmetric (max asymmetry {asymmetry:.3e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("structure violates: {}", join(.0))]
    StructureViolation(Vec<Violation>),

    #[error("metric signature is ({}, {}), expected ({}, {})", found.0, found.1, expected.0, expected.1)]
    WrongSignature {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("contact homothetic transformation needs (p, q) != (0, 0)")]
    ZeroTransform,

    #[error("structure constants not antisymmetric at c^{k}_({i},{j}) (residual {residual:.3e})")]
    NotAntisymmetric {
        i: usize,
        j: usize,
        k: usize,
        residual: f64,
    },

    #[error("Jacobi identity fails, worst triple ({i}, {j}, {l}) with residual {residual:.3e}")]
    JacobiViolation {
        i: usize,
        j: usize,
        l: usize,
        residual: f64,
    },

    #[error("identity `{identity}` fails with residual {residual:.3e}")]
    IdentityFailed { identity: &'static str, residual: f64 },

    #[error("structure is not Sasaki-like (residual {residual:.3e})")]
    NotSasakiLike { residual: f64 },

    #[error("potential kind does not support {0}")]
    UnsupportedPotential(&'static str),

    #[error("missing parameter `{0}`")]
    MissingParameter(&'static str),

    #[error("Gram matrix of (g, g~, eta x eta) is singular")]
    SingularFit,

    #[error("parameter t = {t} is excluded (denominator {denominator:.3e})")]
    DegenerateParameter { t: f64, denominator: f64 },

    #[error("parameter grid is empty")]
    EmptyGrid,
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
