//! Complex-coefficient quaternions and their complex 4×4 η-realization.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::quaternion::ETA_BASIS;
use crate::{Real, Vector3};

/// Three complex components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexVector3<T> {
    pub x: Complex<T>,
    pub y: Complex<T>,
    pub z: Complex<T>,
}

impl<T: Real> ComplexVector3<T> {
    pub fn new(x: Complex<T>, y: Complex<T>, z: Complex<T>) -> Self {
        Self { x, y, z }
    }

    pub fn zeros() -> Self {
        Self::from_parts(Vector3::zeros(), Vector3::zeros())
    }

    /// `re + i·im`.
    pub fn from_parts(re: Vector3<T>, im: Vector3<T>) -> Self {
        Self::new(
            Complex::new(re.x, im.x),
            Complex::new(re.y, im.y),
            Complex::new(re.z, im.z),
        )
    }

    pub fn re(self) -> Vector3<T> {
        Vector3::new(self.x.re, self.y.re, self.z.re)
    }

    pub fn im(self) -> Vector3<T> {
        Vector3::new(self.x.im, self.y.im, self.z.im)
    }

    pub fn to_array(self) -> [Complex<T>; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [Complex<T>; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    /// Bilinear dot product (no conjugation).
    pub fn dot(self, r: Self) -> Complex<T> {
        self.x * r.x + self.y * r.y + self.z * r.z
    }

    pub fn cross(self, r: Self) -> Self {
        Self::new(
            self.y * r.z - self.z * r.y,
            self.z * r.x - self.x * r.z,
            self.x * r.y - self.y * r.x,
        )
    }

    pub fn scale(self, s: Complex<T>) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn conj(self) -> Self {
        Self::new(self.x.conj(), self.y.conj(), self.z.conj())
    }

    /// Largest modulus of a component.
    pub fn max_abs(self) -> T {
        self.x.norm().max(self.y.norm()).max(self.z.norm())
    }

    pub fn is_finite(self) -> bool {
        self.re().is_finite() && self.im().is_finite()
    }
}

impl<T: Real> Add for ComplexVector3<T> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl<T: Real> Sub for ComplexVector3<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl<T: Real> Neg for ComplexVector3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> From<Vector3<T>> for ComplexVector3<T> {
    fn from(v: Vector3<T>) -> Self {
        Self::from_parts(v, Vector3::zeros())
    }
}

/// Quaternion with complex coefficients, `c₀η₀ + c⃗·η⃗`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BiQuaternion<T> {
    pub scalar: Complex<T>,
    pub vector: ComplexVector3<T>,
}

impl<T: Real> BiQuaternion<T> {
    pub fn new(scalar: Complex<T>, vector: ComplexVector3<T>) -> Self {
        Self { scalar, vector }
    }

    pub fn zero() -> Self {
        Self::new(Complex::new(T::zero(), T::zero()), ComplexVector3::zeros())
    }

    pub fn pure(vector: ComplexVector3<T>) -> Self {
        Self::new(Complex::new(T::zero(), T::zero()), vector)
    }

    /// Basis element `η_k`, `k ∈ {0, x=1, y=2, z=3}`.
    pub fn basis(k: usize) -> Self {
        let mut c = [Complex::new(T::zero(), T::zero()); 4];
        c[k] = Complex::new(T::one(), T::zero());
        Self::from_array(c)
    }

    pub fn from_array(c: [Complex<T>; 4]) -> Self {
        Self::new(c[0], ComplexVector3::new(c[1], c[2], c[3]))
    }

    pub fn to_array(self) -> [Complex<T>; 4] {
        [self.scalar, self.vector.x, self.vector.y, self.vector.z]
    }

    pub fn scale(self, s: Complex<T>) -> Self {
        Self::new(self.scalar * s, self.vector.scale(s))
    }

    /// Quaternion conjugate `c₀η₀ − c⃗·η⃗`; the complex parts are untouched.
    pub fn quat_conj(self) -> Self {
        Self::new(self.scalar, -self.vector)
    }

    pub fn max_abs_diff(self, r: Self) -> T {
        self.to_array()
            .iter()
            .zip(r.to_array().iter())
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    /// Complex 4×4 realization `Σ c_k η_k`.
    pub fn to_matrix(self) -> ComplexMatrix4<T> {
        let mut m = ComplexMatrix4::zero();
        for (k, c) in self.to_array().iter().enumerate() {
            for i in 0..4 {
                for j in 0..4 {
                    let e = ETA_BASIS[k][i][j];
                    if e != 0 {
                        m.0[i][j] = m.0[i][j] + *c * T::lit(f64::from(e));
                    }
                }
            }
        }
        m
    }
}

impl<T: Real> Add for BiQuaternion<T> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.scalar + r.scalar, self.vector + r.vector)
    }
}

impl<T: Real> Sub for BiQuaternion<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.scalar - r.scalar, self.vector - r.vector)
    }
}

impl<T: Real> Neg for BiQuaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.scalar, -self.vector)
    }
}

/// Same product rule as the real quaternions, extended bilinearly.
impl<T: Real> Mul for BiQuaternion<T> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let (a0, a) = (self.scalar, self.vector);
        let (b0, b) = (r.scalar, r.vector);
        Self::new(a0 * b0 - a.dot(b), b.scale(a0) + a.scale(b0) - a.cross(b))
    }
}

/// Complex 4×4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4<T>(pub [[Complex<T>; 4]; 4]);

impl<T: Real> ComplexMatrix4<T> {
    pub fn zero() -> Self {
        Self([[Complex::new(T::zero(), T::zero()); 4]; 4])
    }

    pub fn identity() -> Self {
        BiQuaternion::basis(0).to_matrix()
    }

    pub fn matmul(&self, r: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..4 {
                    acc = acc + self.0[i][k] * r.0[k][j];
                }
                m.0[i][j] = acc;
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    /// Entry-wise complex conjugate.
    pub fn conj(&self) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z = z.conj());
        m
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn trace(&self) -> Complex<T> {
        (0..4).fold(Complex::new(T::zero(), T::zero()), |acc, i| {
            acc + self.0[i][i]
        })
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z = *z * s);
        m
    }

    /// Coefficients read off the first column. Lossless for matrices in the
    /// span of the η-basis.
    pub fn to_biquaternion(&self) -> BiQuaternion<T> {
        BiQuaternion::from_array([self.0[0][0], self.0[1][0], self.0[2][0], self.0[3][0]])
    }

    /// Whether the matrix lies in the span of the η-basis to within `tol`.
    pub fn is_eta_combination(&self, tol: T) -> bool {
        self.to_biquaternion().to_matrix().max_abs_diff(self) <= tol
    }

    pub fn max_abs_diff(&self, r: &Self) -> T {
        self.0
            .iter()
            .flatten()
            .zip(r.0.iter().flatten())
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }
}
