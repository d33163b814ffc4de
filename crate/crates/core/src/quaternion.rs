//! Quaternion algebra in the real 4×4 η-basis and its SU(2) / SO(3) images.
//!
//! The product used throughout is the left action
//!
//! ```text
//! (a ⊗ b)₀ = a₀b₀ − a⃗·b⃗
//! (a ⊗ b)⃗ = a₀b⃗ + b₀a⃗ − a⃗×b⃗
//! ```
//!
//! i.e. the matrix of `a` (its η-realization) applied to the column `b`. The
//! basis obeys `ηₓη_y = −η_z` (cyclic) and `ηₓ² = η_y² = η_z² = −η₀`, which is
//! the same table the Pauli generator `u₀σ₀ + i u⃗·σ⃗` produces, so `to_eta` and
//! `to_su2` are both homomorphisms for this product.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::{Error, Real, Result, Vector3};

/// Four real coefficients `(s₀, sₓ, s_y, s_z)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion<T> {
    pub s0: T,
    pub sx: T,
    pub sy: T,
    pub sz: T,
}

impl<T: Real> Quaternion<T> {
    pub const fn new(s0: T, sx: T, sy: T, sz: T) -> Self {
        Self { s0, sx, sy, sz }
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn from_parts(scalar: T, vector: Vector3<T>) -> Self {
        Self::new(scalar, vector.x, vector.y, vector.z)
    }

    /// Pure quaternion `(0, v)`.
    pub fn pure(v: Vector3<T>) -> Self {
        Self::from_parts(T::zero(), v)
    }

    pub fn from_array(a: [T; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [T; 4] {
        [self.s0, self.sx, self.sy, self.sz]
    }

    pub fn scalar(self) -> T {
        self.s0
    }

    pub fn vector(self) -> Vector3<T> {
        Vector3::new(self.sx, self.sy, self.sz)
    }

    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    pub fn norm(self) -> T {
        self.norm_squared().sqrt()
    }

    /// Euclidean inner product of the coefficient 4-tuples.
    pub fn dot(self, rhs: Self) -> T {
        self.s0 * rhs.s0 + self.sx * rhs.sx + self.sy * rhs.sy + self.sz * rhs.sz
    }

    pub fn conj(self) -> Self {
        Self::new(self.s0, -self.sx, -self.sy, -self.sz)
    }

    /// Multiplicative inverse; `None` for the zero quaternion.
    pub fn inverse(self) -> Option<Self> {
        let n2 = self.norm_squared();
        (n2 > T::zero()).then(|| self.conj().scale(n2.recip()))
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.s0 * s, self.sx * s, self.sy * s, self.sz * s)
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(self, rhs: Self) -> T {
        let d = self - rhs;
        d.s0.abs().max(d.sx.abs()).max(d.sy.abs()).max(d.sz.abs())
    }

    pub fn is_finite(self) -> bool {
        self.s0.is_finite() && self.sx.is_finite() && self.sy.is_finite() && self.sz.is_finite()
    }

    /// Real 4×4 realization `s₀η₀ + sₓηₓ + s_yη_y + s_zη_z`.
    pub fn to_eta(self) -> EtaMatrix<T> {
        let c = self.to_array();
        let mut m = [[T::zero(); 4]; 4];
        for (k, coeff) in c.iter().enumerate() {
            let basis = &ETA_BASIS[k];
            for i in 0..4 {
                for j in 0..4 {
                    m[i][j] = m[i][j] + *coeff * T::lit(f64::from(basis[i][j]));
                }
            }
        }
        EtaMatrix(m)
    }

    /// Complex 2×2 realization `u₀σ₀ + i uₓσₓ + i u_yσ_y + i u_zσ_z`.
    pub fn to_su2(self) -> Su2Matrix<T> {
        Su2Matrix([
            [
                Complex::new(self.s0, self.sz),
                Complex::new(self.sy, self.sx),
            ],
            [
                Complex::new(-self.sy, self.sx),
                Complex::new(self.s0, -self.sz),
            ],
        ])
    }

    /// Two-component spinor `(s₀ + i s_z, i(sₓ + i s_y))`.
    pub fn to_spinor(self) -> Spinor2<T> {
        Spinor2 {
            up: Complex::new(self.s0, self.sz),
            down: Complex::new(-self.sy, self.sx),
        }
    }
}

impl<T: Real> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(
            self.s0 + r.s0,
            self.sx + r.sx,
            self.sy + r.sy,
            self.sz + r.sz,
        )
    }
}

impl<T: Real> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(
            self.s0 - r.s0,
            self.sx - r.sx,
            self.sy - r.sy,
            self.sz - r.sz,
        )
    }
}

impl<T: Real> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

/// Quaternion product: the η-matrix of `self` applied to the column `rhs`.
impl<T: Real> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, s: Self) -> Self {
        let u = self;
        Self::new(
            u.s0 * s.s0 - u.sx * s.sx - u.sy * s.sy - u.sz * s.sz,
            u.sx * s.s0 + u.s0 * s.sx + u.sz * s.sy - u.sy * s.sz,
            u.sy * s.s0 - u.sz * s.sx + u.s0 * s.sy + u.sx * s.sz,
            u.sz * s.s0 + u.sy * s.sx - u.sx * s.sy + u.s0 * s.sz,
        )
    }
}

/// Free-function form of the product.
pub fn quat_mul<T: Real>(a: Quaternion<T>, b: Quaternion<T>) -> Quaternion<T> {
    a * b
}

/// A quaternion with `|q|² = 1` (within [`Real::input_tolerance`] when checked).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion<T>(Quaternion<T>);

impl<T: Real> UnitQuaternion<T> {
    pub fn identity() -> Self {
        Self(Quaternion::identity())
    }

    /// Accepts `q` when `|q|² − 1` is within the input tolerance.
    pub fn new(q: Quaternion<T>) -> Result<Self> {
        let n2 = q.norm_squared();
        if !q.is_finite() || (n2 - T::one()).abs() > T::input_tolerance() {
            return Err(Error::NonUnitQuaternion {
                norm_sq: n2.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self(q))
    }

    /// Projects a nonzero quaternion onto the unit sphere.
    pub fn new_normalize(q: Quaternion<T>) -> Result<Self> {
        let n = q.norm();
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::NonUnitQuaternion {
                norm_sq: (n * n).to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self(q.scale(n.recip())))
    }

    /// Wraps without checking. Callers guarantee the norm.
    pub(crate) fn new_unchecked(q: Quaternion<T>) -> Self {
        Self(q)
    }

    /// Half-angle form `(cos ξ/2, b⃗ sin ξ/2)` for a unit axis `b⃗`.
    pub fn from_axis_angle(axis: Vector3<T>, xi: T) -> Result<Self> {
        if !axis.is_unit(T::input_tolerance()) {
            return Err(Error::NonUnitAxis {
                norm: axis.norm().to_f64().unwrap_or(f64::NAN),
            });
        }
        let (s, c) = (xi * T::half()).sin_cos();
        Ok(Self(Quaternion::from_parts(c, axis.scale(s))))
    }

    pub fn quaternion(self) -> Quaternion<T> {
        self.0
    }

    pub fn inverse(self) -> Self {
        Self(self.0.conj())
    }

    /// The SO(3) image, `R(q)P = vec(q ⊗ (0,P) ⊗ q⁻¹)`.
    pub fn to_rotation(self) -> Rotation3<T> {
        Rotation3::from_quaternion_unchecked(self.0)
    }
}

impl<T: Real> Mul for UnitQuaternion<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl<T: Real> Neg for UnitQuaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl<T> AsRef<Quaternion<T>> for UnitQuaternion<T> {
    fn as_ref(&self) -> &Quaternion<T> {
        &self.0
    }
}

/// Checked conversion to a rotation matrix.
pub fn quat_to_rotation<T: Real>(q: Quaternion<T>) -> Result<Rotation3<T>> {
    UnitQuaternion::new(q).map(UnitQuaternion::to_rotation)
}

/// Precession angle `ξ = −γ|B|δτ`.
pub fn precession_angle<T: Real>(field: Vector3<T>, gamma: T, dtau: T) -> T {
    -gamma * field.norm() * dtau
}

/// Unit direction of a nonzero field.
pub fn field_direction<T: Real>(field: Vector3<T>) -> Result<Vector3<T>> {
    let n = field.norm();
    if n > T::zero() && n.is_finite() {
        Ok(field.scale(n.recip()))
    } else {
        Err(Error::ZeroField)
    }
}

/// Entries of η₀, ηₓ, η_y, η_z (row-major).
pub const ETA_BASIS: [[[i8; 4]; 4]; 4] = [
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
    [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]],
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]],
];

/// Real 4×4 matrix in the span of the η-basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaMatrix<T>(pub [[T; 4]; 4]);

impl<T: Real> EtaMatrix<T> {
    /// Basis matrix `η_k`, `k ∈ {0, x=1, y=2, z=3}`.
    pub fn basis(k: usize) -> Self {
        let mut m = [[T::zero(); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = T::lit(f64::from(ETA_BASIS[k][i][j]));
            }
        }
        Self(m)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let mut m = [[T::zero(); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = T::zero();
                for k in 0..4 {
                    acc = acc + self.0[i][k] * rhs.0[k][j];
                }
                m[i][j] = acc;
            }
        }
        Self(m)
    }

    pub fn transpose(&self) -> Self {
        let mut m = [[T::zero(); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = self.0[j][i];
            }
        }
        Self(m)
    }

    /// Coefficients read off the first column.
    pub fn to_quaternion(&self) -> Quaternion<T> {
        Quaternion::new(self.0[0][0], self.0[1][0], self.0[2][0], self.0[3][0])
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> T {
        let mut d = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.0[i][j] - rhs.0[i][j]).abs());
            }
        }
        d
    }
}

/// Complex 2×2 matrix, the SU(2) realization of a quaternion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Matrix<T>(pub [[Complex<T>; 2]; 2]);

impl<T: Real> Su2Matrix<T> {
    pub fn identity() -> Self {
        let (o, z) = (
            Complex::new(T::one(), T::zero()),
            Complex::new(T::zero(), T::zero()),
        );
        Self([[o, z], [z, o]])
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let a = &self.0;
        let b = &rhs.0;
        Self([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    pub fn adjoint(&self) -> Self {
        let a = &self.0;
        Self([
            [a[0][0].conj(), a[1][0].conj()],
            [a[0][1].conj(), a[1][1].conj()],
        ])
    }

    pub fn det(&self) -> Complex<T> {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: T) -> Self {
        let a = &self.0;
        Self([[a[0][0] * s, a[0][1] * s], [a[1][0] * s, a[1][1] * s]])
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> T {
        let mut d = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - rhs.0[i][j]).norm());
            }
        }
        d
    }

    /// Inverse of [`Quaternion::to_su2`].
    pub fn to_quaternion(&self) -> Quaternion<T> {
        let a = &self.0;
        Quaternion::new(a[0][0].re, a[0][1].im, a[0][1].re, a[0][0].im)
    }
}

/// Spin-up / spin-down amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor2<T> {
    pub up: Complex<T>,
    pub down: Complex<T>,
}

impl<T: Real> Spinor2<T> {
    pub fn norm_squared(&self) -> T {
        self.up.norm_sqr() + self.down.norm_sqr()
    }
}

/// Real 3×3 rotation matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3<T>(pub [[T; 3]; 3]);

impl<T: Real> Rotation3<T> {
    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self([[o, z, z], [z, o, z], [z, z, o]])
    }

    /// The printed matrix `2u₀[u⃗]ₓᵀ + sym(u)` with its symmetric block
    /// written so that `R(q)P = vec(q ⊗ (0,P) ⊗ q⁻¹)`.
    pub(crate) fn from_quaternion_unchecked(q: Quaternion<T>) -> Self {
        let two = T::two();
        let one = T::one();
        let (u0, ux, uy, uz) = (q.s0, q.sx, q.sy, q.sz);
        Self([
            [
                one - two * (uy * uy + uz * uz),
                two * (ux * uy + u0 * uz),
                two * (ux * uz - u0 * uy),
            ],
            [
                two * (ux * uy - u0 * uz),
                one - two * (uz * uz + ux * ux),
                two * (uy * uz + u0 * ux),
            ],
            [
                two * (ux * uz + u0 * uy),
                two * (uy * uz - u0 * ux),
                one - two * (ux * ux + uy * uy),
            ],
        ])
    }

    pub fn apply(&self, v: Vector3<T>) -> Vector3<T> {
        let m = &self.0;
        Vector3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let mut m = [[T::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = (0..3).fold(T::zero(), |acc, k| acc + self.0[i][k] * rhs.0[k][j]);
            }
        }
        Self(m)
    }

    pub fn transpose(&self) -> Self {
        let mut m = [[T::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = self.0[j][i];
            }
        }
        Self(m)
    }

    pub fn det(&self) -> T {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> T {
        let mut d = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.0[i][j] - rhs.0[i][j]).abs());
            }
        }
        d
    }

    /// `‖R·Rᵀ − I‖_max` and `|det R − 1|` both within `tol`.
    pub fn is_special_orthogonal(&self, tol: T) -> bool {
        self.matmul(&self.transpose())
            .max_abs_diff(&Self::identity())
            <= tol
            && (self.det() - T::one()).abs() <= tol
    }
}
