use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree sequence is empty")]
    EmptyDegreeSequence,

    #[error("total number of half-edges {0} is odd")]
    OddHalfEdgeCount(usize),

    #[error("vertex {vertex} has degree {degree}, below the floor {floor} of this mode")]
    DegreeBelowFloor {
        vertex: usize,
        degree: u32,
        floor: u32,
    },

    #[error("half-edge {0} out of range")]
    HalfEdgeOutOfRange(u32),

    #[error("configuration is not a fixed-point-free involution: {0}")]
    InvalidConfiguration(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("instance too large for exhaustive computation: {what} = {value} exceeds {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("distribution is not normalized (total mass {0})")]
    NotNormalized(f64),

    #[error("reset-set sampler rejected {rejected} of {attempts} exploration runs")]
    ExcessiveRejection { rejected: usize, attempts: usize },

    #[error("vertex of half-edge {0} has no forward choice")]
    DeadEnd(u32),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("no sample available: {0}")]
    Empty(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
