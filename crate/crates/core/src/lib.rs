//! Placement delivery arrays (PDAs) for centralized coded caching.
//!
//! A PDA is an `F x K` array over `{*} ∪ {1..S}`; equivalently a strong edge
//! coloring of a bipartite graph whose right-hand vertices have constant
//! degree. This crate builds base PDAs from subset-graph colorings, combines
//! them through graph products, checks every result with brute-force
//! validators, and runs the placement / delivery / decoding protocol over
//! real bytes to show that every user recovers its file.
//!
//! Modules:
//!
//! * [`pda`]: the array type, the (A)(B)(C) validator, parameters,
//!   equivalence search and the `pda v1` text format.
//! * [`graphs`]: colored bipartite and general graphs, the strong coloring
//!   oracle, cycles, vertex colorings and orientations.
//! * [`families`]: subset-based generators.
//! * [`combinators`]: same-color combination, star product, tensor product
//!   and the cycle product.
//! * [`sim`]: byte-level coded caching simulation.
//! * [`analytics`]: exact closed-form parameters and comparison tables.
//!
//! The `parallel` feature (on by default) lets the brute-force scans and the
//! demand sweeps run on rayon. Every such entry point also takes an
//! [`Execution`] so both paths can be compared in one build.

pub mod analytics;
pub mod combinators;
mod exec;
pub mod families;
pub mod graphs;
pub mod pda;
pub mod sim;

pub use exec::Execution;
pub use graphs::{ColoredBipartiteGraph, ColoredGraph, Label};
pub use pda::{ParamRecord, PdaArray, PdaEntry, ValidationReport};
