//! Exact transformation of a smooth intersection of two quadrics in P³ with a
//! rational point into Weierstrass normal form.
//!
//! The pipeline runs in two stages. [`quadric`] projects the space curve from
//! its distinguished point onto a plane cubic, then [`weierstrass`] applies a
//! chain of linear substitutions and one quadratic transformation until the
//! cubic reads `y² = x³ + a2·x² + a4·x + a6`. [`transport`] composes both
//! stages so rational points can be carried in either direction, and
//! [`families`] holds closed forms for two classical Diophantine problems.
//!
//! All arithmetic is exact over ℚ.
//!
//! ```
//! use nagell::families::EulerInstance;
//! use nagell::transport::PipelineTrace;
//!
//! let inst = EulerInstance::new(3, 2).unwrap();
//! let (a, b, x) = inst.quadrics();
//! let trace = PipelineTrace::build(&a, &b, &x).unwrap();
//! assert_eq!(trace.weierstrass().to_string(), "y^2 = x^3 - 4x^2 + 3x");
//! ```

pub mod algebra;
pub mod arith;
mod error;
pub mod families;
pub mod form;
pub mod quadric;
pub mod sampling;
pub mod transport;
pub mod verify;
pub mod weierstrass;

pub use algebra::{
    apply_linear, evaluate_cubic, evaluate_quadric, normalize_point, pullback_cubic, LinearMap,
    LinearMap3, LinearMap4, Point2, Point3, ProjectivePoint, QuadricForm, Rational, TernaryCubic,
};
pub use error::{Error, Result};

pub use transport::PipelineTrace;
pub use weierstrass::{run_pipeline, CubicTrace, StepKind, StepRecord, WeierstrassCurve};
