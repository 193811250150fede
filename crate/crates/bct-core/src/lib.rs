//! Computational toolkit for bi-Cayley graphs over finite groups.
//!
//! A bi-Cayley graph `BiCay(H, R, L, S)` has two copies of the group `H` as
//! its vertex set and edges determined by the three connection sets: `R`
//! within the first copy, `L` within the second, and `S` across. The crate
//! builds these graphs from small group presentations, computes the
//! normaliser of the right-regular action inside the full automorphism
//! group, and classifies the result on the edge-transitivity spectrum
//! (arc-transitive, half-arc-transitive, semisymmetric).
//!
//! Module map:
//!
//! * [`group`] - finite groups as multiplication tables, with cyclic,
//!   abelian, dihedral and split metacyclic constructors, and group
//!   automorphism enumeration.
//! * [`perm`] - permutations, stabilizer chains, orbit computations,
//!   normality tests, and subgroup searches (regular, semiregular,
//!   metacirculant witnesses).
//! * [`graphs`] - colored graphs with an automorphism-group and
//!   canonical-form engine based on partition refinement.
//! * [`bicayley`] - bi-Cayley triples, graph construction, the standard
//!   automorphisms sigma/delta, the sets F and I, the normaliser, and the
//!   normal edge-transitivity predicates.
//! * [`classify`] - whole-graph symmetry reports: transitivity flags,
//!   girth, cycle censuses, worthiness.
//! * [`families`] - named graph families and exhaustive triple
//!   enumeration over a host group.
//! * [`formats`] - graph6 and DOT encoding, JSON report types.
//! * [`cli`] - the `bct` command-line interface.

pub mod bicayley;
pub mod classify;
pub mod cli;
pub mod families;
pub mod formats;
pub mod graphs;
pub mod group;
pub mod perm;

/// Crate-wide error type.
///
/// The CLI maps [`Error::BoundExceeded`] to exit code 3 and every other
/// variant to exit code 2; see [`Error::exit_code`].
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A constructor or operation was given parameters outside its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A multiplication table failed the group axioms.
    #[error("not a group: {0}")]
    NotAGroup(String),
    /// A connection-set triple violated the bi-Cayley constraints.
    #[error("invalid bi-Cayley triple: {0}")]
    InvalidTriple(String),
    /// An operation that requires a connected graph was given a
    /// disconnected one.
    #[error("graph is disconnected: {0}")]
    Disconnected(String),
    /// Input text could not be parsed (graph6, JSON, or CLI values).
    #[error("parse error: {0}")]
    Parse(String),
    /// The object exists but exceeds a documented size bound.
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    /// A search or realization has no witness on this input.
    #[error("not applicable: {0}")]
    NotApplicable(String),
    /// An I/O failure while reading input or writing output.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Error {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// Process exit code the CLI uses for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundExceeded(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
