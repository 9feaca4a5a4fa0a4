//! Bounds on the nucleon and electron couplings of the CSL collapse model
//! from collapse-induced deuteron dissociation in a heavy-water detector.
//!
//! The pipeline runs from deuteron wavefunctions ([`deuteron`]) through
//! excitation rates ([`rates`]) and the asymmetric-error counting analysis
//! ([`uncertainty`]) to coupling bounds and λ/a² exclusion curves
//! ([`limits`]).

pub mod cli;
pub mod config;
pub mod constants;
pub mod deuteron;
pub mod error;
pub mod limits;
pub mod output;
pub mod quadrature;
pub mod rates;
pub mod uncertainty;

pub use constants::{grw_defaults, lambda_over_a2, CollapseParams, PhysicalConstants, RateDensity};
pub use deuteron::{build_hulthen, build_zero_range, BoundStateModel, ModelKind};
pub use error::{Error, Result};
pub use limits::{run_full_analysis, Analysis, AnalysisReport, ExclusionCurve};
pub use quadrature::QuadratureSpec;
pub use uncertainty::AsymmetricValue;
