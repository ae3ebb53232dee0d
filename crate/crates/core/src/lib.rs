#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dataset;
pub mod error;
pub mod eval;
pub mod fig;
pub mod mle;
mod numeric;
pub mod sampler;
pub mod specfun;

pub use dataset::Dataset;
pub use error::{FigError, Result};
pub use fig::{BtnParams, FigParams, GgParams, MgfComparison, MgfEstimate, MgfMethod, SubModel};
pub use mle::{FitOptions, FitResult};
