//! Two-sided popular matchings in bipartite preference systems.

pub mod acceptance;
pub mod constrained;
pub mod constraints;
pub mod dominant;
pub mod error;
pub mod fixtures;
mod flow;
pub mod instance;
pub mod matching;
pub mod oracle;
pub mod popularity;
pub mod random;
pub mod reduction;
pub mod stable;
pub mod votes;
pub mod weighted;
pub mod weights;

pub use constraints::ConstraintSet;
pub use error::{Error, Result};
pub use instance::{Edge, PreferenceSystem, Side, VertexId};
pub use matching::Matching;
pub use weights::{NodeWeights, Weight, WeightMap};
