use core::fmt;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two edges are equal as vertex sets.
    ParallelEdge {
        first: usize,
        second: usize,
    },
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        n: usize,
    },
    EmptyEdge {
        edge: usize,
    },
    RepeatedVertex {
        edge: usize,
        vertex: usize,
    },
    /// An edge's size differs from the declared uniformity.
    NonUniformEdge {
        edge: usize,
        expected: usize,
        found: usize,
    },
    UniformityTooSmall {
        r: usize,
    },
    /// The operation needs every edge to have the same size `r >= 2`.
    NotUniform,
    /// Enumerating all edge subsets was requested on too many edges.
    TooManyEdges {
        m: usize,
        cap: usize,
    },
    /// Brute-force enumeration of colorings would exceed the guard.
    TooManyColorings {
        limit: u64,
    },
    TooManyVertices {
        n: usize,
        cap: usize,
    },
    EmptySubset,
    EmptyVertexSet,
    SubsetOutOfRange {
        edge: usize,
        m: usize,
    },
    /// A vertex list has the wrong size or uses colors outside the universe.
    InvalidList {
        vertex: usize,
        reason: &'static str,
    },
    ListCountMismatch {
        expected: usize,
        found: usize,
    },
    InvalidUniverse {
        universe: usize,
        k: usize,
    },
    InvalidGraphEdge {
        edge: usize,
        reason: &'static str,
    },
    Disconnected,
    /// The hypergraph contains a δ-cycle; the witness is its edge mask.
    HasDeltaCycle {
        witness: u64,
    },
    TrivialHypergraph,
    IndexOutOfRange {
        index: usize,
        low: usize,
        high: usize,
    },
    /// `a_i` outside `[0, t]`.
    OutOfDomain {
        index: usize,
    },
    BelowThreshold {
        k: usize,
        k_min: u64,
    },
    SearchGuard {
        reason: &'static str,
    },
    InvalidParameter {
        reason: &'static str,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ParallelEdge { first, second } => {
                write!(f, "edges {first} and {second} are parallel (same vertex set)")
            }
            Error::VertexOutOfRange { edge, vertex, n } => {
                write!(f, "edge {edge} uses vertex {vertex}, outside [0, {n})")
            }
            Error::EmptyEdge { edge } => write!(f, "edge {edge} is empty"),
            Error::RepeatedVertex { edge, vertex } => {
                write!(f, "edge {edge} repeats vertex {vertex}")
            }
            Error::NonUniformEdge { edge, expected, found } => {
                write!(f, "edge {edge} has {found} vertices, expected {expected}")
            }
            Error::UniformityTooSmall { r } => write!(f, "uniformity r = {r} is below 2"),
            Error::NotUniform => write!(f, "hypergraph is not r-uniform with r >= 2"),
            Error::TooManyEdges { m, cap } => {
                write!(f, "{m} edges exceeds the subset-enumeration cap of {cap}")
            }
            Error::TooManyColorings { limit } => {
                write!(f, "brute-force enumeration would exceed {limit} colorings")
            }
            Error::TooManyVertices { n, cap } => write!(f, "{n} vertices exceeds the cap of {cap}"),
            Error::EmptySubset => write!(f, "edge subset must be nonempty"),
            Error::EmptyVertexSet => write!(f, "vertex set must be nonempty"),
            Error::SubsetOutOfRange { edge, m } => {
                write!(f, "edge index {edge} out of range for {m} edges")
            }
            Error::InvalidList { vertex, reason } => write!(f, "list of vertex {vertex}: {reason}"),
            Error::ListCountMismatch { expected, found } => {
                write!(f, "expected {expected} vertex lists, found {found}")
            }
            Error::InvalidUniverse { universe, k } => {
                write!(f, "invalid color universe {universe} for list size {k}")
            }
            Error::InvalidGraphEdge { edge, reason } => write!(f, "graph edge {edge}: {reason}"),
            Error::Disconnected => write!(f, "hypergraph is not connected"),
            Error::HasDeltaCycle { witness } => {
                write!(f, "hypergraph contains a delta-cycle (edge mask {witness:#x})")
            }
            Error::TrivialHypergraph => write!(f, "hypergraph has no edges"),
            Error::IndexOutOfRange { index, low, high } => {
                write!(f, "index {index} outside [{low}, {high}]")
            }
            Error::OutOfDomain { index } => write!(f, "entry {index} lies outside [0, t]"),
            Error::BelowThreshold { k, k_min } => {
                write!(f, "k = {k} is below the threshold minimum k_min = {k_min}")
            }
            Error::SearchGuard { reason } => write!(f, "search guard: {reason}"),
            Error::InvalidParameter { reason } => write!(f, "invalid parameter: {reason}"),
        }
    }
}

impl core::error::Error for Error {}
