//! Instance files, result documents and instance generators.

pub mod generate;
pub mod instance;
pub mod report;

pub use generate::{
    gen_broken, gen_broken_with, gen_convex, gen_random, BrokenKind, GenParams, RandomParams,
};
pub use instance::{parse, serialize, FORMAT_HEADER};
