//! Fox-Wright functions `pΨq`, their normalized forms, and numerical checks
//! of geometric properties (starlikeness, convexity, close-to-convexity) on
//! the unit disc.

pub mod cli;
pub mod criteria;
pub mod error;
pub mod exec;
pub mod gamma;
pub mod geometry;
pub mod params;
pub mod report;
pub mod series;
