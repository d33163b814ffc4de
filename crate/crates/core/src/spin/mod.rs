//! Spin-1/2 evolution in magnetic fields.
//!
//! Fields enter as angular rates `Ω = γB` (rad per unit time), so every routine
//! here is unit-free. [`angular_rate`] converts a field and gyromagnetic ratio.
//!
//! The state is a unit quaternion `(s₀, sₓ, s_y, s_z)`; the polarization is its
//! SO(3) image applied to the prepared direction.

mod helical;
mod ode;
mod pms;
mod resonance;

pub use helical::{
    analytic_helical, branch_polarization, helical_params_from_field, helical_rate,
    polarization_evolution, rotating_frame_state, Branch, HelicalFieldSpec, HelicalParams,
};
pub use ode::{eta_dot_field, integrate_spin, spin_ode_rhs, MAX_STEP_PHASE};
pub use pms::{pms_block_generators, pms_propagate, PmsConfig};
pub use resonance::{resonance_curve, spin_flip_probability, spin_up_probability, ResonancePoint};

use crate::{Error, Real, Result, UnitQuaternion, Vector3};

/// `Ω = γB`.
pub fn angular_rate<T: Real>(field: Vector3<T>, gamma: T) -> Vector3<T> {
    field.scale(gamma)
}

/// Unit polarization vector `(Pₓ, P_y, P_z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationVector<T>(Vector3<T>);

impl<T: Real> PolarizationVector<T> {
    pub fn new(v: Vector3<T>) -> Result<Self> {
        if !v.is_finite() || !v.is_unit(T::input_tolerance()) {
            return Err(Error::NonUnitPolarization {
                norm: v.norm().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self(v))
    }

    /// Spin up along `z`, the state a mirror polarizer prepares.
    pub fn up() -> Self {
        Self(Vector3::unit_z())
    }

    pub fn vector(self) -> Vector3<T> {
        self.0
    }

    pub(crate) fn rotated(self, q: UnitQuaternion<T>) -> Self {
        Self(q.to_rotation().apply(self.0))
    }
}

/// Time-ordered spin states, optionally with the polarization arrows
/// `(P_n, P_{n,ξ₁})` of a stepwise propagation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinTrajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<UnitQuaternion<T>>,
    pub polar: Option<Vec<(Vector3<T>, Vector3<T>)>>,
}

impl<T: Real> SpinTrajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> Option<UnitQuaternion<T>> {
        self.states.last().copied()
    }

    /// Polarization at every stored state for the prepared direction `p0`.
    pub fn polarizations(&self, p0: PolarizationVector<T>) -> Vec<Vector3<T>> {
        self.states
            .iter()
            .map(|q| q.to_rotation().apply(p0.vector()))
            .collect()
    }

    /// Distance from the last arrow origin `P_N` to `target`.
    pub fn closure_distance(&self, target: Vector3<T>) -> Option<T> {
        self.polar
            .as_ref()?
            .last()
            .map(|(p, _)| (*p - target).norm())
    }

    /// Largest `| |q|² − 1 |` over the stored states.
    pub fn max_norm_defect(&self) -> T {
        self.states
            .iter()
            .map(|q| (q.quaternion().norm_squared() - T::one()).abs())
            .fold(T::zero(), T::max)
    }
}
