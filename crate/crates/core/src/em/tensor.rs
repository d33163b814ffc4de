use num_complex::Complex;

use super::{BiQuaternion, ComplexMatrix4, ComplexVector3, EmFieldSample};
use crate::{Real, Vector3};

/// Complex field triple `f = B − iE`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EmTensor<T> {
    pub f: ComplexVector3<T>,
}

impl<T: Real> EmTensor<T> {
    pub fn new(f: ComplexVector3<T>) -> Self {
        Self { f }
    }

    pub fn sample(&self) -> EmFieldSample<T> {
        EmFieldSample::new(-self.f.im(), self.f.re())
    }

    /// `−Σ f_k η_k`. For `B = x̂` the nonzero entries are
    /// `(1,2) = 1, (2,1) = −1, (3,4) = −1, (4,3) = 1` (1-based).
    pub fn to_matrix(&self) -> ComplexMatrix4<T> {
        BiQuaternion::pure(-self.f).to_matrix()
    }

    /// Inverse of [`EmTensor::to_matrix`] (reads the first column).
    pub fn from_matrix(m: &ComplexMatrix4<T>) -> Self {
        Self::new(-m.to_biquaternion().vector)
    }

    /// `B² − E² − 2iE·B`.
    pub fn invariant(&self) -> Complex<T> {
        self.f.dot(self.f)
    }
}

pub fn em_tensor<T: Real>(s: &EmFieldSample<T>) -> EmTensor<T> {
    EmTensor::new(ComplexVector3::from_parts(s.b, -s.e))
}

/// Energy density `W₀ = (E² + B²)/2` and flux `W = E×B`.
pub fn energy_quadratic<T: Real>(s: &EmFieldSample<T>) -> (T, Vector3<T>) {
    (
        (s.e.norm_squared() + s.b.norm_squared()) * T::half(),
        s.e.cross(s.b),
    )
}

/// Same quantities from `½F·F†`, whose η-decomposition is `W₀η₀ − iW⃗·η⃗`.
pub fn energy_quadratic_matrix<T: Real>(s: &EmFieldSample<T>) -> (T, Vector3<T>) {
    let f = em_tensor(s).to_matrix();
    let q = f
        .matmul(&f.adjoint())
        .scale(Complex::new(T::half(), T::zero()))
        .to_biquaternion();
    (q.scalar.re, -q.vector.im())
}

/// `I₁ = (B² − E²)/2`, `I₂ = E·B`.
pub fn lorentz_invariants<T: Real>(s: &EmFieldSample<T>) -> (T, T) {
    (
        (s.b.norm_squared() - s.e.norm_squared()) * T::half(),
        s.e.dot(s.b),
    )
}

/// Same quantities from `½FᵀF = (I₁ − iI₂)η₀`.
pub fn lorentz_invariants_matrix<T: Real>(s: &EmFieldSample<T>) -> (T, T) {
    let f = em_tensor(s).to_matrix();
    let q = f
        .transpose()
        .matmul(&f)
        .scale(Complex::new(T::half(), T::zero()))
        .to_biquaternion();
    (q.scalar.re, -q.scalar.im)
}
