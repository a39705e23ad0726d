//! Exact reconstruction and machine verification of the three families of
//! numerical Campedelli surfaces whose algebraic fundamental group has order 9.

pub mod ambient;
pub mod error;
pub mod group;
pub mod polyring;
pub mod scalars;
pub mod campedelli;

pub use error::{Error, Result};
