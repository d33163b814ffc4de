//! Maxwell theory in the quaternion basis.
//!
//! Fields are supplied as pointwise functions of an event `[t, x, y, z]` and
//! differentiated with second-order central differences, so nothing here
//! stores a grid. Units are Gaussian with a configurable speed of light `c`.
//!
//! The tensor is kept as the complex triple `f = B − iE`. Its 4×4 matrix has
//! the η-coefficients `−f = −B + iE`, which is the layout for which
//!
//! ```text
//! D·F = (4π/c)·J,   D = (i/c)∂ₜη₀ + ∂ₓηₓ + ∂_yη_y + ∂_zη_z,   J = −icρη₀ + j⃗·η⃗
//! ```
//!
//! reproduces the four Maxwell equations.

mod biquat;
mod operator;
mod tensor;

pub use biquat::{BiQuaternion, ComplexMatrix4, ComplexVector3};
pub use operator::{
    apply_d, apply_d_transpose, continuity_residual, continuity_residual_trace,
    fields_from_potential, lorenz_gauge_residual, lorenz_gauge_residual_trace, maxwell_residual,
    maxwell_residual_operator, wave_residual, wave_residual_operator, MaxwellResidual,
};
pub use tensor::{
    em_tensor, energy_quadratic, energy_quadratic_matrix, lorentz_invariants,
    lorentz_invariants_matrix, EmTensor,
};

use num_complex::Complex;

use crate::{Error, Real, Result, Vector3};

/// Spacetime event `[t, x, y, z]`.
pub type Event<T> = [T; 4];

/// Electric and magnetic field at one event.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EmFieldSample<T> {
    pub e: Vector3<T>,
    pub b: Vector3<T>,
}

impl<T: Real> EmFieldSample<T> {
    pub fn new(e: Vector3<T>, b: Vector3<T>) -> Self {
        Self { e, b }
    }

    pub fn zero() -> Self {
        Self::new(Vector3::zeros(), Vector3::zeros())
    }

    pub fn is_finite(&self) -> bool {
        self.e.is_finite() && self.b.is_finite()
    }

    /// η-coefficients `−B + iE` of the tensor matrix.
    pub fn tensor_coefficients(&self) -> ComplexVector3<T> {
        ComplexVector3::from_parts(-self.b, self.e)
    }

    /// Pure biquaternion `(−B + iE)·η⃗` whose matrix is the field tensor.
    pub fn to_biquaternion(&self) -> BiQuaternion<T> {
        BiQuaternion::pure(self.tensor_coefficients())
    }
}

/// Charge density `ρ` and current density `j`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourCurrent<T> {
    pub rho: T,
    pub j: Vector3<T>,
}

impl<T: Real> FourCurrent<T> {
    pub fn new(rho: T, j: Vector3<T>) -> Self {
        Self { rho, j }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), Vector3::zeros())
    }

    /// `J = −icρη₀ + j⃗·η⃗`.
    pub fn to_biquaternion(&self, c: T) -> BiQuaternion<T> {
        BiQuaternion::new(Complex::new(T::zero(), -c * self.rho), self.j.into())
    }
}

/// Scalar potential `φ(t, x, y, z)` and vector potential `A(t, x, y, z)`.
#[derive(Clone, Copy)]
pub struct FourPotential<P, A> {
    pub phi: P,
    pub a: A,
}

impl<P, A> FourPotential<P, A> {
    pub fn new(phi: P, a: A) -> Self {
        Self { phi, a }
    }

    /// `Φ = iφη₀ + A⃗·η⃗`, chosen so that `−¼ tr(D·Φ)` is the Lorenz expression.
    pub fn to_biquaternion<T>(&self, p: Event<T>) -> BiQuaternion<T>
    where
        T: Real,
        P: Fn(Event<T>) -> T,
        A: Fn(Event<T>) -> Vector3<T>,
    {
        BiQuaternion::new(Complex::new(T::zero(), (self.phi)(p)), (self.a)(p).into())
    }
}

/// Regular lattice of evaluation events.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    pub origin: Event<T>,
    pub spacing: [T; 4],
    pub dims: [usize; 4],
    pub c_light: T,
}

impl<T: Real> GridSpec<T> {
    pub fn new(origin: Event<T>, spacing: [T; 4], dims: [usize; 4]) -> Result<Self> {
        if let Some(h) = spacing.iter().find(|h| !(h.is_finite() && **h > T::zero())) {
            return Err(Error::DegenerateStep {
                h: h.to_f64().unwrap_or(f64::NAN),
            });
        }
        if dims.contains(&0) || origin.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "grid",
                reason: "origin must be finite and every axis needs at least one point".into(),
            });
        }
        Ok(Self {
            origin,
            spacing,
            dims,
            c_light: T::one(),
        })
    }

    pub fn with_c(self, c_light: T) -> Self {
        Self { c_light, ..self }
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Event number `index` in row-major `(t, x, y, z)` order.
    pub fn point(&self, index: usize) -> Option<Event<T>> {
        if index >= self.len() {
            return None;
        }
        let mut rem = index;
        let mut p = self.origin;
        for axis in (0..4).rev() {
            let i = rem % self.dims[axis];
            rem /= self.dims[axis];
            p[axis] = p[axis] + self.spacing[axis] * T::from_usize(i)?;
        }
        Some(p)
    }

    pub fn points(&self) -> impl Iterator<Item = Event<T>> + '_ {
        (0..self.len()).filter_map(move |i| self.point(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_enumeration_order() {
        let g = GridSpec::new([0.0, 1.0, 2.0, 3.0], [0.5, 1.0, 1.0, 1.0], [2, 1, 1, 3]).unwrap();
        let pts: Vec<_> = g.points().collect();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], [0.0, 1.0, 2.0, 3.0]);
        assert_eq!(pts[1], [0.0, 1.0, 2.0, 4.0]);
        assert_eq!(pts[3], [0.5, 1.0, 2.0, 3.0]);
        assert_eq!(g.point(6), None);
        assert_eq!(g.c_light, 1.0);
    }

    #[test]
    fn grid_rejects_bad_spacing() {
        assert!(matches!(
            GridSpec::new([0.0; 4], [0.1, 0.0, 0.1, 0.1], [1; 4]),
            Err(Error::DegenerateStep { .. })
        ));
        assert!(GridSpec::new([0.0; 4], [0.1; 4], [1, 0, 1, 1]).is_err());
    }

    #[test]
    fn current_biquaternion_layout() {
        let j = FourCurrent::new(2.0, Vector3::new(1.0, 0.0, -1.0)).to_biquaternion(3.0);
        assert_eq!(j.scalar, Complex::new(0.0, -6.0));
        assert_eq!(j.vector.re(), Vector3::new(1.0, 0.0, -1.0));
    }
}
