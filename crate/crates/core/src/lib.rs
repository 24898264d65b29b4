//! Spirality and distortion analysis for clean surfaces in non-geometric
//! 3-manifolds, working purely on combinatorial data.
//!
//! The input is the block graph of the manifold (Seifert fibered and
//! hyperbolic blocks joined along JSJ tori) together with the dual graph
//! of the surface decomposition: typed pieces and the boundary curves
//! joining them, each curve carrying the covering degrees of its two
//! sides. From this the crate computes, exactly:
//!
//! - the spirality homomorphism on each almost-fiber component, its
//!   triviality (equivalently, separability of the surface subgroup), the
//!   governor, and the uniform partial-product bound Λ ([`spirality`]);
//! - the distortion class of each component and of the whole surface —
//!   linear, quadratic, exponential or double exponential
//!   ([`classifier`], [`growth`]);
//! - witness integer sequences with verifiable growth certificates, and
//!   exact traces of the block-crossing recurrences ([`witness`]);
//! - parsing, validation, reporting and DOT export for the JSON document
//!   format ([`document`], [`report`], [`dot`]).
//!
//! All invariant decisions use arbitrary-precision rational arithmetic;
//! floating point appears only in explicitly approximate log-domain
//! summaries.

pub mod classifier;
pub mod document;
pub mod dot;
pub mod growth;
pub mod model;
pub mod rational;
pub mod report;
pub mod spirality;
mod testutil;
pub mod witness;

pub use classifier::{classify_component, classify_surface, ClassificationReport, ClassifyError, ComponentVerdict};
pub use document::{parse_input, parse_trace_config, Document, ParseErrorKind, ParseFailure, ParseIssue};
pub use dot::export_dot;
pub use growth::{GrowthClass, Magnitude};
pub use model::{
    almost_fiber, validate, AFComponent, Block, Curve, Geometry, JsjTorus, ManifoldGraph, Piece,
    PieceKind, SurfaceGraph, ValidationReport, Violation,
};
pub use rational::Rational;
pub use report::{analyze, render_json, render_text, AnalysisReport};
pub use spirality::{
    cycle_basis, governor, lambda_bound, lambda_by_enumeration, spirality,
    supercritical_cycle_through_gi, vertex_potential, weight, xi, CycleEdge, CycleError,
    DirectedCycle, Orientation, Potential, SpiralityError, SpiralityHom,
};
pub use witness::{
    build_witness, log_sum_exp, trace_bounds, verify_witness, Crossing, TraceConfig, TraceReport,
    WitnessError, WitnessSequence, WitnessVerification, XiPeriod,
};
