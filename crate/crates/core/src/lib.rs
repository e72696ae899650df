pub mod classify2d;
pub mod golden;
pub mod intlat;
pub mod odometer;
pub mod parse;
pub mod render;
pub mod report;
pub mod subshift_norm;
pub mod substitution;

pub use intlat::{IntMatrix, IntVector};
