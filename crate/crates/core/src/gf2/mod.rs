//! Bit-packed linear algebra over GF(2).

mod code;
pub mod io;
mod word;

pub use code::{Codewords, LinearCode, WeightDistribution, MAX_ENUM_DIM};
pub(crate) use code::row_relations;
pub use word::Word;
