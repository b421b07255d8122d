//! Adaptive Fourier decomposition of quaternionic slice regular functions on the unit ball.

pub mod afd;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod hardy;
pub mod quat;
pub mod series;

pub use error::{Error, Result};
pub use hardy::{inner_product, szego_kernel, BallPoint, TmSystem};
pub use quat::{Quaternion, UnitImaginary};
pub use series::SliceSeries;
