//! Lorentz transformations of the field tensor in the quaternion basis.
//!
//! A transformation is a generator `ν₀η₀ + ν⃗·η⃗` acting by `F′ = L·F·Lᵀ`.
//! Rotations use `ν₀ = cos(α/2)`, `ν⃗ = m sin(α/2)`. Boosts are the same
//! construction at the imaginary angle `iφ`: `ν₀ = cosh(φ/2)`,
//! `ν⃗ = m sinh(φ/2)` stored real, with the matrix built from `iν⃗·η⃗`, so that
//! `ν₀² − |ν⃗|² = 1` and `L·Lᵀ = η₀` in both cases.

use num_complex::Complex;

use crate::em::{BiQuaternion, ComplexMatrix4, ComplexVector3, EmFieldSample, EmTensor};
use crate::{Error, Real, Result, Vector3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Rotation,
    Boost,
}

/// Generator `(ν₀, ν⃗)` of a rotation or a boost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzQuat<T> {
    pub nu0: T,
    pub nu: Vector3<T>,
    pub kind: TransformKind,
}

fn unit_axis<T: Real>(m: Vector3<T>) -> Result<Vector3<T>> {
    if m.is_finite() && m.is_unit(T::input_tolerance()) {
        Ok(m)
    } else {
        Err(Error::NonUnitAxis {
            norm: m.norm().to_f64().unwrap_or(f64::NAN),
        })
    }
}

fn finite_angle<T: Real>(name: &'static str, v: T) -> Result<T> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: "must be finite".into(),
        })
    }
}

/// `ν₀ = cos(α/2)`, `ν⃗ = m sin(α/2)`.
pub fn rotation_generator<T: Real>(m: Vector3<T>, alpha: T) -> Result<LorentzQuat<T>> {
    let m = unit_axis(m)?;
    let (s, c) = (finite_angle("alpha", alpha)? * T::half()).sin_cos();
    Ok(LorentzQuat {
        nu0: c,
        nu: m.scale(s),
        kind: TransformKind::Rotation,
    })
}

/// `ν₀ = cosh(φ/2)`, `ν⃗ = m sinh(φ/2)` for rapidity `φ`.
pub fn boost_generator<T: Real>(m: Vector3<T>, rapidity: T) -> Result<LorentzQuat<T>> {
    let m = unit_axis(m)?;
    let half = finite_angle("rapidity", rapidity)? * T::half();
    Ok(LorentzQuat {
        nu0: half.cosh(),
        nu: m.scale(half.sinh()),
        kind: TransformKind::Boost,
    })
}

/// Rapidity `artanh(|v|/c)`; fails for `|v| ≥ c`.
pub fn rapidity<T: Real>(speed: T, c: T) -> Result<T> {
    if !(c.is_finite() && c > T::zero()) || !speed.is_finite() || speed.abs() >= c {
        return Err(Error::SuperluminalSpeed {
            speed: speed.to_f64().unwrap_or(f64::NAN),
            c: c.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok((speed / c).atanh())
}

/// Boost into the frame moving with velocity `v`.
pub fn boost_from_velocity<T: Real>(v: Vector3<T>, c: T) -> Result<LorentzQuat<T>> {
    let speed = v.norm();
    let phi = rapidity(speed, c)?;
    if speed == T::zero() {
        return Ok(LorentzQuat::identity(TransformKind::Boost));
    }
    boost_generator(v.scale(speed.recip()), phi)
}

impl<T: Real> LorentzQuat<T> {
    pub fn identity(kind: TransformKind) -> Self {
        Self {
            nu0: T::one(),
            nu: Vector3::zeros(),
            kind,
        }
    }

    /// `ν₀² + |ν⃗|²` for rotations, `ν₀² − |ν⃗|²` for boosts; both equal 1.
    pub fn constraint(&self) -> T {
        match self.kind {
            TransformKind::Rotation => self.nu0 * self.nu0 + self.nu.norm_squared(),
            TransformKind::Boost => self.nu0 * self.nu0 - self.nu.norm_squared(),
        }
    }

    /// `ν₀η₀ + ν⃗·η⃗` (rotation) or `ν₀η₀ + iν⃗·η⃗` (boost).
    pub fn to_biquaternion(&self) -> BiQuaternion<T> {
        let v = match self.kind {
            TransformKind::Rotation => ComplexVector3::from_parts(self.nu, Vector3::zeros()),
            TransformKind::Boost => ComplexVector3::from_parts(Vector3::zeros(), self.nu),
        };
        BiQuaternion::new(Complex::new(self.nu0, T::zero()), v)
    }

    pub fn to_matrix(&self) -> ComplexMatrix4<T> {
        self.to_biquaternion().to_matrix()
    }
}

/// `F′ = L·F·Lᵀ`.
pub fn transform_tensor<T: Real>(l: &LorentzQuat<T>, f: &EmTensor<T>) -> EmTensor<T> {
    let m = l.to_matrix();
    EmTensor::from_matrix(&m.matmul(&f.to_matrix()).matmul(&m.transpose()))
}

/// The action of `L·(·)·Lᵀ` on the tensor coefficients as a complex 3×3
/// matrix: the rotation matrix of the generator with its real entries replaced
/// by the complex coefficients `(ν₀, ν⃗)` or `(ν₀, iν⃗)`.
pub fn coefficient_rotation<T: Real>(l: &LorentzQuat<T>) -> [[Complex<T>; 3]; 3] {
    let q = l.to_biquaternion();
    let u0 = q.scalar;
    let u = q.vector.to_array();
    let one = Complex::new(T::one(), T::zero());
    let two = Complex::new(T::two(), T::zero());
    let mut r = [[Complex::new(T::zero(), T::zero()); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let sym = two * u[i] * u[j];
            r[i][j] = if i == j {
                let sq = u[(i + 1) % 3] * u[(i + 1) % 3] + u[(i + 2) % 3] * u[(i + 2) % 3];
                one - two * sq
            } else {
                sym
            };
        }
    }
    // antisymmetric part 2ν₀ [[0, ν_z, −ν_y], [−ν_z, 0, ν_x], [ν_y, −ν_x, 0]]
    let a = [
        [None, Some((2, one)), Some((1, -one))],
        [Some((2, -one)), None, Some((0, one))],
        [Some((1, one)), Some((0, -one)), None],
    ];
    for i in 0..3 {
        for j in 0..3 {
            if let Some((k, s)) = a[i][j] {
                r[i][j] = r[i][j] + two * u0 * u[k] * s;
            }
        }
    }
    r
}

/// Complex field triple `F = −B + iE` of the closed-form transformation laws.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldTriple<T>(pub ComplexVector3<T>);

impl<T: Real> FieldTriple<T> {
    pub fn from_fields(s: &EmFieldSample<T>) -> Self {
        Self(s.tensor_coefficients())
    }

    pub fn to_fields(&self) -> EmFieldSample<T> {
        EmFieldSample::new(self.0.im(), -self.0.re())
    }

    /// `F = −f` for the tensor triple `f = B − iE`.
    pub fn from_tensor(t: &EmTensor<T>) -> Self {
        Self(-t.f)
    }

    pub fn to_tensor(&self) -> EmTensor<T> {
        EmTensor::new(-self.0)
    }

    pub fn apply(&self, r: &[[Complex<T>; 3]; 3]) -> Self {
        let v = self.0.to_array();
        let row = |i: usize| r[i][0] * v[0] + r[i][1] * v[1] + r[i][2] * v[2];
        Self(ComplexVector3::new(row(0), row(1), row(2)))
    }

    pub fn max_abs_diff(&self, r: &Self) -> T {
        (self.0 - r.0).max_abs()
    }
}

fn closed_form<T: Real>(
    f: &FieldTriple<T>,
    m: Vector3<T>,
    cos: T,
    sin: Complex<T>,
) -> FieldTriple<T> {
    let mc: ComplexVector3<T> = m.into();
    let re = |v: T| Complex::new(v, T::zero());
    let along = mc.scale(mc.dot(f.0) * re(T::one() - cos));
    FieldTriple(f.0.scale(re(cos)) + along - mc.cross(f.0).scale(sin))
}

/// `F cos α + m(m·F)(1 − cos α) − (m×F) sin α`.
pub fn rotate_field_closed<T: Real>(
    f: &FieldTriple<T>,
    m: Vector3<T>,
    alpha: T,
) -> Result<FieldTriple<T>> {
    let m = unit_axis(m)?;
    let (s, c) = finite_angle("alpha", alpha)?.sin_cos();
    Ok(closed_form(f, m, c, Complex::new(s, T::zero())))
}

/// `F cosh φ + m(m·F)(1 − cosh φ) − i(m×F) sinh φ`.
pub fn boost_field_closed<T: Real>(
    f: &FieldTriple<T>,
    m: Vector3<T>,
    rapidity: T,
) -> Result<FieldTriple<T>> {
    let m = unit_axis(m)?;
    let phi = finite_angle("rapidity", rapidity)?;
    Ok(closed_form(
        f,
        m,
        phi.cosh(),
        Complex::new(T::zero(), phi.sinh()),
    ))
}

/// Fields seen from a frame moving with velocity `v`:
///
/// ```text
/// E′ = γE − (γ − 1)(E·v)v/v² + (γ/c) v×B
/// B′ = γB − (γ − 1)(B·v)v/v² − (γ/c) v×E
/// ```
pub fn eb_boost<T: Real>(
    e: Vector3<T>,
    b: Vector3<T>,
    v: Vector3<T>,
    c: T,
) -> Result<(Vector3<T>, Vector3<T>)> {
    let v2 = v.norm_squared();
    rapidity(v2.sqrt(), c)?;
    if v2 == T::zero() {
        return Ok((e, b));
    }
    let gamma = (T::one() - v2 / (c * c)).sqrt().recip();
    let g1 = (gamma - T::one()) / v2;
    let e2 = e.scale(gamma) - v.scale(g1 * e.dot(v)) + v.cross(b).scale(gamma / c);
    let b2 = b.scale(gamma) - v.scale(g1 * b.dot(v)) - v.cross(e).scale(gamma / c);
    Ok((e2, b2))
}
