use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Offending values are reported as `f64` regardless of the scalar type in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("axis is not a unit vector (|b| = {norm})")]
    NonUnitAxis { norm: f64 },
    #[error("quaternion is not unit-norm (|q|^2 = {norm_sq})")]
    NonUnitQuaternion { norm_sq: f64 },
    #[error("polarization vector is not unit-length (|P| = {norm})")]
    NonUnitPolarization { norm: f64 },
    #[error("block index {index} out of range for {len} blocks")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid time span [{t0}, {t1}] with step {dt}")]
    InvalidTimeSpan { t0: f64, t1: f64, dt: f64 },
    #[error("step too large: dt * |omega| = {phase} rad exceeds 0.5 rad")]
    StepTooLarge { phase: f64 },
    #[error("degenerate resonance parameters: gamma^2 + delta^2 = 0")]
    DegenerateParams,
    #[error("field amplitude is zero")]
    ZeroField,
    #[error("empty range: need at least 2 points over [{min}, {max}], got {n_points}")]
    EmptyRange { min: f64, max: f64, n_points: usize },
    #[error("finite-difference step must be positive and finite (h = {h})")]
    DegenerateStep { h: f64 },
    #[error("speed {speed} is not below the speed of light {c}")]
    SuperluminalSpeed { speed: f64, c: f64 },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
