//! Exact scalars, rational helpers and quaternion arithmetic.

pub mod combinat;
pub mod quaternion;
pub mod scalar;

pub use quaternion::{quat_exp, ExactQuat, FloatQuat, Quaternion, Scalar};
pub use scalar::{ExactScalar, TermKey};
