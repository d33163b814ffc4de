//! Quaternion models of spin-1/2 evolution and of Maxwell fields.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases at
//! the bottom of this file fix the scalar to `f64`.

// Index loops read best in the small matrix kernels; `!(x > 0)` style tests
// are there to reject NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod em;
mod error;
pub mod lorentz;
pub mod quaternion;
mod scalar;
pub mod spin;
mod vector;

pub use error::{Error, Result};
pub use quaternion::{
    field_direction, precession_angle, quat_mul, quat_to_rotation, EtaMatrix, Quaternion,
    Rotation3, Spinor2, Su2Matrix, UnitQuaternion,
};
pub use scalar::Real;
pub use vector::Vector3;

pub type Quat = Quaternion<f64>;
pub type UnitQuat = UnitQuaternion<f64>;
pub type Vec3 = Vector3<f64>;
pub type Rot3 = Rotation3<f64>;
pub type Trajectory = spin::SpinTrajectory<f64>;
pub type Polarization = spin::PolarizationVector<f64>;
pub type Pms = spin::PmsConfig<f64>;
pub type Helical = spin::HelicalParams<f64>;
pub type FieldSample = em::EmFieldSample<f64>;
pub type Tensor = em::EmTensor<f64>;
pub type Current = em::FourCurrent<f64>;
pub type Grid = em::GridSpec<f64>;
pub type Lorentz = lorentz::LorentzQuat<f64>;

pub type Quat32 = Quaternion<f32>;
pub type UnitQuat32 = UnitQuaternion<f32>;
pub type Vec3f = Vector3<f32>;
