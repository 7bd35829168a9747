//! Fork-join queueing networks with blocking: topology, generators,
//! simulation, last-passage percolation and scalability analysis.

pub mod animals;
pub mod dimensions;
pub mod error;
pub mod families;
pub mod io;
pub mod network;
pub mod percolation;
pub mod scalability;
pub mod service;
pub mod sim;
pub mod stats;

pub use error::{Error, Result};
pub use families::{FamilyKind, FamilySpec};
pub use network::Network;
pub use service::ServiceDistribution;
