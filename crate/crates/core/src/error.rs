use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("loop edge at `{0}` rejected")]
    Loop(String),
    #[error("invalid vertex id `{0}`")]
    InvalidVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("source and target must differ (`{0}`)")]
    SameEndpoints(String),
    #[error("orientation does not cover edge `{0}`")]
    PartialOrientation(String),
    #[error("orientation was built for a different graph")]
    OrientationMismatch,
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("vertex `{0}` has odd degree")]
    OddDegree(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge `{0}` appears in more than one part")]
    Overlap(String),
    #[error("cannot expand `{vertex}`: degree {degree} < 2")]
    DegenerateExpansion { vertex: String, degree: usize },
    #[error("routing failed: {0}")]
    Routing(String),
    #[error("ray of `{vertex}` too short: need at least {required} ray vertices")]
    TruncationTooShort { vertex: String, required: usize },
    #[error("vertex `{0}` lies on the ball boundary")]
    BoundaryVertex(String),
    #[error("edge set is not inside the ball: `{0}`")]
    OutsideBall(String),
    #[error("sequence element does not live in the window: `{0}`")]
    WindowMismatch(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("{0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
