//! Exact arithmetic cocycles on GL⁺(2,Q): Dedekind sums, the Rademacher function,
//! the Petersson-Asai cocycle, the rational Godbillon-Vey cocycle and the
//! higher-weight Eisenstein cocycles, with a floating-point q-series oracle.

pub mod dedekind;
pub mod eisenstein;
pub mod error;
pub mod exact;
pub mod gl2;
pub mod gv;
pub mod oracle;
pub mod poly;
pub mod rademacher;
pub mod sampling;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{Int, Rat, SqrtSum};
pub use gl2::{Mat2, Mat2Q, Mat2Z, TorsionPoint, TorsionSum};
pub use eisenstein::{EisCocycleValue, EisSymValue};
pub use poly::{HomPoly, HomPoly4};
pub use scalar::{Ring, Scalar};
pub use verify::{run_suite, VerificationReport};

pub type Mat2F = Mat2<f64>;
pub type Mat2F32 = Mat2<f32>;
pub type PolyQ = HomPoly<Rat>;
pub type PolyS = HomPoly<SqrtSum>;
pub type PolyF = HomPoly<f64>;
pub type Poly4S = HomPoly4<SqrtSum>;
