//! Numerical toolkit for two-qubit entanglement through the coherence
//! triangle: X-state validation, a geometric entanglement measure with
//! its closed separable-distance interpretation, Wootters concurrence,
//! entanglement of formation, partial-transpose verdicts, robustness,
//! rank classification, and a resonant two-atom/two-cavity model whose
//! subsystem-entropy minima envelope bounds the entanglement over time.

#![forbid(unsafe_code)]

pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod measures;
pub mod schema;
pub mod state;
pub mod tol;

pub use dynamics::{CavityParams, DynamicsSample, DynamicsTrace, EnvelopeCheck, TimeGrid};
pub use error::{Error, Result};
pub use geometry::{CoherenceBounds, CoherencePoint, Region, RegionClass, Subregion};
pub use linalg::{Matrix2, Matrix4, Spectrum, Subsystem, C64};
pub use measures::{MeasureReport, PptVerdict, RobustnessReport, XMeasures};
pub use schema::{FamilyParams, ResolvedState, StateDoc};
pub use state::{Bell, DensityMatrix4, Factorization, PureAmplitudes, XState};
