#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bott_tu;
pub mod chern_weil;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod fat;
pub mod gda;
pub mod groupoid;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod sample;
pub mod simplicial;
pub mod weil;

pub use error::{Error, Result};
