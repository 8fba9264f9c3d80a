use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("loop edge at `{0}`")]
    LoopEdge(String),
    #[error("edge endpoint `{0}` is not a listed vertex")]
    UnknownEndpoint(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("not a total order: {0}")]
    BadOrder(String),
    #[error("not a map of graphs: {0}")]
    NotAMapOfGraphs(String),
    #[error("map is not an immersion")]
    NotImmersion,
    #[error("image of the restricted domain escapes the restricted codomain at `{0}`")]
    ImageEscapesCodomain(String),
    #[error("`{0}` is not an induced subgraph")]
    NotInduced(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("lift start `{start}` does not lie over `{expected}`")]
    StartMismatch { start: String, expected: String },
    #[error("words or maps over different graphs")]
    GraphMismatch,
    #[error("domain is not a forest")]
    NotForest,
    #[error("root walk does not project to the image of its root `{0}`")]
    RootMismatch(String),
    #[error("embedded components overlap in the universal cover")]
    EmbeddingCollision,
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("walks have different base vertices")]
    BaseMismatch,
    #[error("walks project to different vertices")]
    ProjectionMismatch,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("base set F is empty")]
    EmptyF,
    #[error("map is not surjective on vertices (`{0}` has no preimage)")]
    NotSurjective(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("certifier returned Unknown where a verdict was expected for m={m}, n={n}")]
    CertificateGap { m: usize, n: usize },
}
