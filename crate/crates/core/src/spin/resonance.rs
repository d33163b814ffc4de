use crate::{Error, Real, Result};

fn check_time<T: Real>(t: T) -> Result<()> {
    if t.is_finite() && t >= T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "T",
            reason: "passage time must be finite and non-negative".into(),
        })
    }
}

/// Spin-flip probability `P↓ = Γ²/(Γ²+Δ²)·sin²(T√(Γ²+Δ²)/2)`.
///
/// At `Γ = Δ = 0` there is no field and the result is 0.
pub fn spin_flip_probability<T: Real>(t: T, gamma_width: T, delta_detune: T) -> Result<T> {
    check_time(t)?;
    let w2 = gamma_width * gamma_width + delta_detune * delta_detune;
    if w2 == T::zero() {
        return Ok(T::zero());
    }
    let s = (t * T::half() * w2.sqrt()).sin();
    Ok(gamma_width * gamma_width / w2 * s * s)
}

/// Spin-up probability `P↑ = Γ²/(Γ²+Δ²)·cos²(T√(Γ²+Δ²)/2) + Δ²/(Γ²+Δ²)`.
///
/// At `Γ = Δ = 0` the result is 1.
pub fn spin_up_probability<T: Real>(t: T, gamma_width: T, delta_detune: T) -> Result<T> {
    check_time(t)?;
    let w2 = gamma_width * gamma_width + delta_detune * delta_detune;
    if w2 == T::zero() {
        return Ok(T::one());
    }
    let c = (t * T::half() * w2.sqrt()).cos();
    Ok(gamma_width * gamma_width / w2 * c * c + delta_detune * delta_detune / w2)
}

/// One sample of a resonance curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonancePoint<T> {
    pub delta: T,
    pub p_down: T,
    pub p_up: T,
}

impl<T: Real> ResonancePoint<T> {
    pub fn at(t: T, gamma_width: T, delta: T) -> Result<Self> {
        Ok(Self {
            delta,
            p_down: spin_flip_probability(t, gamma_width, delta)?,
            p_up: spin_up_probability(t, gamma_width, delta)?,
        })
    }
}

/// Detuning value `i` of an `n`-point uniform grid over `[min, max]`.
///
/// Written as a weighted sum of the endpoints so that a range symmetric about
/// zero yields an exactly mirrored grid.
pub(crate) fn grid_value<T: Real>(min: T, max: T, i: usize, n: usize) -> T {
    let last = T::from_usize(n - 1).unwrap_or_else(T::max_value);
    let lo = T::from_usize(n - 1 - i).unwrap_or_else(T::max_value);
    let hi = T::from_usize(i).unwrap_or_else(T::max_value);
    (lo * min + hi * max) / last
}

/// `n_points` samples of `(Δ, P↓, P↑)` on a uniform detuning grid.
pub fn resonance_curve<T: Real>(
    gamma_width: T,
    delta_min: T,
    delta_max: T,
    n_points: usize,
    t: T,
) -> Result<Vec<ResonancePoint<T>>> {
    if n_points < 2 || !(delta_max > delta_min) || !delta_min.is_finite() || !delta_max.is_finite()
    {
        return Err(Error::EmptyRange {
            min: delta_min.to_f64().unwrap_or(f64::NAN),
            max: delta_max.to_f64().unwrap_or(f64::NAN),
            n_points,
        });
    }
    (0..n_points)
        .map(|i| {
            ResonancePoint::at(
                t,
                gamma_width,
                grid_value(delta_min, delta_max, i, n_points),
            )
        })
        .collect()
}
