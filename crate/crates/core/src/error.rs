use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::planar::Violation;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Pipeline stage an error originated from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    QSeparator,
    Minimalize,
    FaceWeights,
    Peel,
    TreewidthSeparator,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::QSeparator => "q-separator",
            Stage::Minimalize => "minimalize",
            Stage::FaceWeights => "face-weights",
            Stage::Peel => "peel",
            Stage::TreewidthSeparator => "treewidth-separator",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error("invalid embedding ({} violation(s)){}", .0.len(), first_violation(.0))]
    InvalidEmbedding(Vec<Violation>),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("face {0} is outside the weighting's domain")]
    UnknownFace(usize),
    #[error("need at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
    #[error("graph has {got} vertices, above the limit of {limit}")]
    TooLarge { limit: usize, got: usize },
    #[error("not a plane triangulation: {0}")]
    NotTriangulation(String),
    #[error("invalid face weighting: {0}")]
    InvalidWeighting(String),
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("vertex {0} has no colour")]
    Uncoloured(usize),
    #[error("embedding inconsistency: {0}")]
    Structure(String),
    #[error("stage {stage}: {source}")]
    Stage { stage: Stage, source: Box<Error> },
}

impl Error {
    pub(crate) fn at(self, stage: Stage) -> Error {
        Error::Stage { stage, source: Box::new(self) }
    }
}

fn first_violation(v: &[Violation]) -> String {
    use alloc::format;
    match v.first() {
        Some(first) => format!(": {first}"),
        None => String::new(),
    }
}
