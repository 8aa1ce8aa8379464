//! Relaxed greedy sparse approximation over symmetric finite dictionaries.
//!
//! The crate implements the classical relaxed greedy iteration (step `1/m`)
//! and its power-relaxed variant (step `m^(-alpha)`), tracks per-iteration
//! traces, and evaluates the closed-form stagnation floors that hold when the
//! step-size exponent exceeds 1: once the cumulative step mass is finite, the
//! iterates stay trapped inside a shrunken copy of the dictionary's convex
//! hull and the residual can never reach zero, even for realizable targets.
//!
//! Modules:
//! - [`dictionary`]: symmetric unit-norm dictionaries and the coherent
//!   two-atom construction.
//! - [`greedy`]: the greedy iterations and their traces.
//! - [`geometry`]: atomic and dual atomic norms on spans of linearly
//!   independent atoms, witness vectors, Gershgorin floors.
//! - [`bounds`]: certified evaluation of `P_alpha` and every closed-form
//!   residual floor.
//! - [`harness`]: coherence and exponent sweeps with CSV and SVG output.

pub mod bounds;
pub mod dictionary;
pub mod error;
pub mod geometry;
pub mod greedy;
pub mod harness;
mod linalg;
mod svg;
pub mod vector;

pub use bounds::{
    p_alpha, partial_product, sparse_floor, theorem_floor, theorem_floor_with_tol, BoundReport,
    PartialProduct, ProductResult,
};
pub use dictionary::{
    gram_matrix, make_coherent_pair, make_coherent_pair_rotated, mutual_coherence,
    CoherentPairSpec, Dictionary, Sign, SignedAtomRef,
};
pub use error::{Error, Result};
pub use geometry::{
    atomic_norm, dual_atomic_norm, gershgorin_floor, witness_vector, SpanBasis,
};
pub use greedy::{greedy_select, run_prga, run_rga, PowerSchedule, RunTrace, TraceRow};
pub use harness::{
    render_svg, sweep_alpha, sweep_mu, write_csv, SweepCell, SweepConfig, SweepMode,
};
pub use vector::DenseVector;
