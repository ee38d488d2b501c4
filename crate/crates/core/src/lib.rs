//! Finite groups as multiplication tables, with exact counting of element
//! orders, solution-count divisibility checks, order-divisibility
//! bijections and sum-of-element-order rankings.

pub mod arith;
pub mod bijection;
pub mod construct;
pub mod divisibility;
pub mod error;
pub mod group;
pub mod psi_rank;
pub mod spectrum;

pub use construct::{build, build_with, GroupSpec};
pub use error::{GroupError, Result};
pub use group::{Elem, FiniteGroup, Limits, Subgroup};
