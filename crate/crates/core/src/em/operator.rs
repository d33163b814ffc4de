use std::ops::Sub;

use num_complex::Complex;

use super::{
    em_tensor, BiQuaternion, ComplexVector3, EmFieldSample, Event, FourCurrent, FourPotential,
};
use crate::{Error, Real, Result, Vector3};

/// Values that can be central-differenced.
trait Diff<T>: Sub<Output = Self> + Copy {
    fn div(self, d: T) -> Self;
}

impl<T: Real> Diff<T> for T {
    fn div(self, d: T) -> Self {
        self / d
    }
}

impl<T: Real> Diff<T> for Vector3<T> {
    fn div(self, d: T) -> Self {
        self.map(|v| v / d)
    }
}

impl<T: Real> Diff<T> for ComplexVector3<T> {
    fn div(self, d: T) -> Self {
        Self::new(self.x / d, self.y / d, self.z / d)
    }
}

impl<T: Real> Diff<T> for BiQuaternion<T> {
    fn div(self, d: T) -> Self {
        Self::new(self.scalar / d, self.vector.div(d))
    }
}

impl<T: Real> Sub for EmFieldSample<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.e - r.e, self.b - r.b)
    }
}

impl<T: Real> Diff<T> for EmFieldSample<T> {
    fn div(self, d: T) -> Self {
        Self::new(self.e.div(d), self.b.div(d))
    }
}

impl<T: Real> Sub for FourCurrent<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.rho - r.rho, self.j - r.j)
    }
}

impl<T: Real> Diff<T> for FourCurrent<T> {
    fn div(self, d: T) -> Self {
        Self::new(self.rho / d, self.j.div(d))
    }
}

fn shift<T: Real>(mut p: Event<T>, axis: usize, d: T) -> Event<T> {
    p[axis] = p[axis] + d;
    p
}

/// `(f(p + h) − f(p − h)) / 2h` along `axis` (0 = t).
fn partial<T: Real, V: Diff<T>>(f: &impl Fn(Event<T>) -> V, p: Event<T>, axis: usize, h: T) -> V {
    (f(shift(p, axis, h)) - f(shift(p, axis, -h))).div(h + h)
}

/// `(f(p + 2h) − 2f(p) + f(p − 2h)) / 4h²`, the diagonal of two nested
/// central differences.
fn second<T: Real, V: Diff<T>>(f: &impl Fn(Event<T>) -> V, p: Event<T>, axis: usize, h: T) -> V {
    let two_h = h + h;
    let mid = f(p);
    ((f(shift(p, axis, two_h)) - mid) - (mid - f(shift(p, axis, -two_h)))).div(two_h * two_h)
}

fn check_step<T: Real>(p: Event<T>, h: T) -> Result<()> {
    let ok = h.is_finite()
        && h > T::zero()
        && p.iter()
            .all(|v| v.is_finite() && *v + h != *v && *v - h != *v);
    if ok {
        Ok(())
    } else {
        Err(Error::DegenerateStep {
            h: h.to_f64().unwrap_or(f64::NAN),
        })
    }
}

fn check_c<T: Real>(c: T) -> Result<()> {
    if c.is_finite() && c > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "c",
            reason: "speed of light must be positive and finite".into(),
        })
    }
}

fn curl<T: Real>(dx: Vector3<T>, dy: Vector3<T>, dz: Vector3<T>) -> Vector3<T> {
    Vector3::new(dy.z - dz.y, dz.x - dx.z, dx.y - dy.x)
}

fn i_over_c<T: Real>(c: T) -> Complex<T> {
    Complex::new(T::zero(), c.recip())
}

fn d_unchecked<T: Real>(
    f: &impl Fn(Event<T>) -> BiQuaternion<T>,
    p: Event<T>,
    h: T,
    c: T,
    sign: T,
) -> BiQuaternion<T> {
    let mut out = partial(f, p, 0, h).scale(i_over_c(c));
    for k in 1..4 {
        let dk = partial(f, p, k, h).scale(Complex::new(sign, T::zero()));
        out = out + BiQuaternion::basis(k) * dk;
    }
    out
}

/// `D·F = (i/c)∂ₜF + Σ_k η_k·∂_kF` by central differences.
pub fn apply_d<T: Real>(
    f: impl Fn(Event<T>) -> BiQuaternion<T>,
    p: Event<T>,
    h: T,
    c: T,
) -> Result<BiQuaternion<T>> {
    check_step(p, h)?;
    check_c(c)?;
    Ok(d_unchecked(&f, p, h, c, T::one()))
}

/// `Dᵀ·F = (i/c)∂ₜF − Σ_k η_k·∂_kF` by central differences.
pub fn apply_d_transpose<T: Real>(
    f: impl Fn(Event<T>) -> BiQuaternion<T>,
    p: Event<T>,
    h: T,
    c: T,
) -> Result<BiQuaternion<T>> {
    check_step(p, h)?;
    check_c(c)?;
    Ok(d_unchecked(&f, p, h, c, -T::one()))
}

/// `B = ∇×A`, `E = −∇φ − (1/c)∂ₜA`.
pub fn fields_from_potential<T, P, A>(
    pot: &FourPotential<P, A>,
    p: Event<T>,
    h: T,
    c: T,
) -> Result<EmFieldSample<T>>
where
    T: Real,
    P: Fn(Event<T>) -> T,
    A: Fn(Event<T>) -> Vector3<T>,
{
    check_step(p, h)?;
    check_c(c)?;
    let da = |axis| partial(&pot.a, p, axis, h);
    let dphi = |axis| partial(&pot.phi, p, axis, h);
    let b = curl(da(1), da(2), da(3));
    let grad = Vector3::new(dphi(1), dphi(2), dphi(3));
    let e = -grad - da(0).div(c);
    Ok(EmFieldSample::new(e, b))
}

/// `(1/c)∂ₜφ + ∇·A`.
pub fn lorenz_gauge_residual<T, P, A>(
    pot: &FourPotential<P, A>,
    p: Event<T>,
    h: T,
    c: T,
) -> Result<T>
where
    T: Real,
    P: Fn(Event<T>) -> T,
    A: Fn(Event<T>) -> Vector3<T>,
{
    check_step(p, h)?;
    check_c(c)?;
    let da = |axis| partial(&pot.a, p, axis, h);
    Ok(partial(&pot.phi, p, 0, h) / c + da(1).x + da(2).y + da(3).z)
}

/// The Lorenz expression read from `−¼ tr(D·Φ)`.
pub fn lorenz_gauge_residual_trace<T, P, A>(
    pot: &FourPotential<P, A>,
    p: Event<T>,
    h: T,
    c: T,
) -> Result<T>
where
    T: Real,
    P: Fn(Event<T>) -> T,
    A: Fn(Event<T>) -> Vector3<T>,
{
    let dphi = apply_d(|q| pot.to_biquaternion(q), p, h, c)?;
    Ok(-dphi.to_matrix().trace().re / T::lit(4.0))
}

/// The four Maxwell residuals at one event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxwellResidual<T> {
    /// `∇·B`
    pub gauss_b: T,
    /// `∇×E + (1/c)∂ₜB`
    pub faraday: Vector3<T>,
    /// `∇×B − (1/c)∂ₜE − (4π/c)j`
    pub ampere: Vector3<T>,
    /// `∇·E − 4πρ`
    pub gauss_e: T,
}

impl<T: Real> MaxwellResidual<T> {
    /// `(name, magnitude)` per law; vector residuals report their largest component.
    pub fn named(&self) -> [(&'static str, T); 4] {
        [
            ("gauss_b", self.gauss_b.abs()),
            ("faraday", self.faraday.max_abs()),
            ("ampere", self.ampere.max_abs()),
            ("gauss_e", self.gauss_e.abs()),
        ]
    }

    pub fn max_abs(&self) -> T {
        self.named().iter().map(|(_, v)| *v).fold(T::zero(), T::max)
    }

    pub fn max_abs_diff(&self, r: &Self) -> T {
        (self.gauss_b - r.gauss_b)
            .abs()
            .max((self.faraday - r.faraday).max_abs())
            .max((self.ampere - r.ampere).max_abs())
            .max((self.gauss_e - r.gauss_e).abs())
    }
}

/// Componentwise residuals of Gauss (B), Faraday, Ampère–Maxwell and Gauss (E).
pub fn maxwell_residual<T, F, S>(
    field: F,
    source: S,
    p: Event<T>,
    h: T,
    c: T,
) -> Result<MaxwellResidual<T>>
where
    T: Real,
    F: Fn(Event<T>) -> EmFieldSample<T>,
    S: Fn(Event<T>) -> FourCurrent<T>,
{
    check_step(p, h)?;
    check_c(c)?;
    let d: Vec<EmFieldSample<T>> = (0..4).map(|axis| partial(&field, p, axis, h)).collect();
    let src = source(p);
    let four_pi = T::lit(4.0) * T::PI();
    Ok(MaxwellResidual {
        gauss_b: d[1].b.x + d[2].b.y + d[3].b.z,
        faraday: curl(d[1].e, d[2].e, d[3].e) + d[0].b.div(c),
        ampere: curl(d[1].b, d[2].b, d[3].b) - d[0].e.div(c) - src.j.scale(four_pi / c),
        gauss_e: d[1].e.x + d[2].e.y + d[3].e.z - four_pi * src.rho,
    })
}

/// The same residuals decomposed from `D·F − (4π/c)J`:
/// the η₀ part is `∇·B − i(∇·E − 4πρ)` and the η⃗ part is
/// `(Ampère) − i(Faraday)`.
pub fn maxwell_residual_operator<T, F, S>(
    field: F,
    source: S,
    p: Event<T>,
    h: T,
    c: T,
) -> Result<MaxwellResidual<T>>
where
    T: Real,
    F: Fn(Event<T>) -> EmFieldSample<T>,
    S: Fn(Event<T>) -> FourCurrent<T>,
{
    let df = apply_d(|q| field(q).to_biquaternion(), p, h, c)?;
    let four_pi = T::lit(4.0) * T::PI();
    let r = df
        - source(p)
            .to_biquaternion(c)
            .scale(Complex::new(four_pi / c, T::zero()));
    Ok(MaxwellResidual {
        gauss_b: r.scalar.re,
        faraday: -r.vector.im(),
        ampere: r.vector.re(),
        gauss_e: -r.scalar.im,
    })
}

/// `(∇² − (1/c²)∂ₜ²)(B − iE)` with second differences of span `±2h`.
pub fn wave_residual<T, F>(field: F, p: Event<T>, h: T, c: T) -> Result<ComplexVector3<T>>
where
    T: Real,
    F: Fn(Event<T>) -> EmFieldSample<T>,
{
    check_step(p, h + h)?;
    check_c(c)?;
    let f = |q| em_tensor(&field(q)).f;
    let lap = second(&f, p, 1, h) + second(&f, p, 2, h) + second(&f, p, 3, h);
    Ok(lap - second(&f, p, 0, h).div(c * c))
}

/// The wave residual read from `Dᵀ·(D·F)` with nested central differences.
/// Since `DᵀD` is the d'Alembertian times η₀, the η₀ part vanishes up to
/// rounding and the η⃗ part is minus [`wave_residual`].
pub fn wave_residual_operator<T, F>(field: F, p: Event<T>, h: T, c: T) -> Result<BiQuaternion<T>>
where
    T: Real,
    F: Fn(Event<T>) -> EmFieldSample<T>,
{
    check_step(p, h + h)?;
    check_c(c)?;
    let fq = |q| field(q).to_biquaternion();
    let inner = |q| d_unchecked(&fq, q, h, c, T::one());
    Ok(d_unchecked(&inner, p, h, c, -T::one()))
}

/// `∂ₜρ + ∇·j`.
pub fn continuity_residual<T, S>(source: S, p: Event<T>, h: T) -> Result<T>
where
    T: Real,
    S: Fn(Event<T>) -> FourCurrent<T>,
{
    check_step(p, h)?;
    let d: Vec<FourCurrent<T>> = (0..4).map(|axis| partial(&source, p, axis, h)).collect();
    Ok(d[0].rho + d[1].j.x + d[2].j.y + d[3].j.z)
}

/// The continuity expression read from `¼ tr(Dᵀ·J)`; `c` cancels.
pub fn continuity_residual_trace<T, S>(source: S, p: Event<T>, h: T) -> Result<T>
where
    T: Real,
    S: Fn(Event<T>) -> FourCurrent<T>,
{
    let c = T::one();
    let dj = apply_d_transpose(|q| source(q).to_biquaternion(c), p, h, c)?;
    Ok(dj.to_matrix().trace().re / T::lit(4.0))
}
