//! Mixed-delay ("fast"/"slow") cooperation schemes on cellular interference
//! networks: network builders, cell association, structural validation,
//! exact cooperation-load accounting and achievable multiplexing-gain regions.
//!
//! Every multiplexing gain and cooperation prelog is an exact [`Q`].

pub mod association;
pub mod error;
pub mod loads;
pub mod rational;
pub mod regions;
pub mod topology;
pub mod validation;

pub use association::{assign, Association, Role, SchemeKind};
pub use error::{MgError, Result};
pub use loads::{closed_form, message_ledger, ClosedForm, LoadReport};
pub use rational::{parse_q, q, qi, Q};
pub use regions::{achievable_region, HalfPlane, MgPoint, MgRegion};
pub use topology::{CellCoord, Model, Network, NodeId, SectorId, SectorKind, Shape};
pub use validation::{validate, Subnet, ValidationReport};
