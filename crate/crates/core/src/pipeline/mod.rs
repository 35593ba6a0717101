//! End-to-end clustered colourings and their verifier.

mod baselines;
mod colouring;
mod three;
mod weights;

pub use baselines::{lmst_three_colour, two_colour, BaselineReport};
pub use colouring::{verify_assignment, verify_clustering, Colour, Colouring, UnknownColour};
pub use three::{three_colour, PipelineParams, ThreeColourReport, TreewidthStage};
pub use weights::face_weights_from_separator;
