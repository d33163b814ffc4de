use super::{PolarizationVector, SpinTrajectory};
use crate::{Error, Quaternion, Real, Result, UnitQuaternion, Vector3};

/// Periodic magnetic structure: `n_blocks` repetitions of a magnetized bar
/// (phase `xi1`, in-plane field direction at angle `theta` from `x`) followed
/// by a thin film (phase `xi2`, field along `y`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PmsConfig<T> {
    pub n_blocks: usize,
    pub xi1: T,
    pub xi2: T,
    pub theta: T,
}

impl<T: Real> PmsConfig<T> {
    pub fn new(n_blocks: usize, xi1: T, xi2: T, theta: T) -> Result<Self> {
        for (name, v) in [("xi1", xi1), ("xi2", xi2), ("theta", theta)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    reason: "must be finite".into(),
                });
            }
        }
        Ok(Self {
            n_blocks,
            xi1,
            xi2,
            theta,
        })
    }

    /// `|2Nθ − 2π| < tol`.
    pub fn is_resonant(&self, tol: T) -> bool {
        let n = T::from_usize(self.n_blocks).unwrap_or_else(T::max_value);
        (T::two() * n * self.theta - T::two() * T::PI()).abs() < tol
    }

    /// Same structure with both phases multiplied by `factor`, as for a
    /// neutron passing faster (`factor < 1`) or slower.
    pub fn with_phase_scale(&self, factor: T) -> Self {
        Self {
            xi1: self.xi1 * factor,
            xi2: self.xi2 * factor,
            ..*self
        }
    }

    fn generators(&self) -> (UnitQuaternion<T>, UnitQuaternion<T>) {
        let (s1, c1) = (self.xi1 * T::half()).sin_cos();
        let (st, ct) = self.theta.sin_cos();
        let (s2, c2) = (self.xi2 * T::half()).sin_cos();
        let u1 = Quaternion::new(c1, s1 * ct, s1 * st, T::zero());
        let u2 = Quaternion::new(c2, T::zero(), s2, T::zero());
        (
            UnitQuaternion::new_unchecked(u1),
            UnitQuaternion::new_unchecked(u2),
        )
    }
}

/// Bar and film generators `(u₁, u₂)` of block `block_index`.
///
/// Every block of the structure is identical: all bars share the angle `θ`.
pub fn pms_block_generators<T: Real>(
    cfg: &PmsConfig<T>,
    block_index: usize,
) -> Result<(UnitQuaternion<T>, UnitQuaternion<T>)> {
    if block_index >= cfg.n_blocks {
        return Err(Error::IndexOutOfRange {
            index: block_index,
            len: cfg.n_blocks,
        });
    }
    Ok(cfg.generators())
}

/// Stepwise chain `P_n = (R₂R₁)ⁿP₀`, `P_{n,ξ₁} = R₁(R₂R₁)ⁿP₀` for `n = 0..=N`.
///
/// The returned states are the accumulated block products `(u₂⊗u₁)ⁿ` and
/// `times` holds the block count `n`. The polarization arrows are propagated
/// with the rotation matrices directly.
pub fn pms_propagate<T: Real>(cfg: &PmsConfig<T>, p0: Vector3<T>) -> Result<SpinTrajectory<T>> {
    let p0 = PolarizationVector::new(p0)?.vector();
    let (u1, u2) = cfg.generators();
    let (r1, r2) = (u1.to_rotation(), u2.to_rotation());
    let block = u2 * u1;

    let n = cfg.n_blocks;
    let mut times = Vec::with_capacity(n + 1);
    let mut states = Vec::with_capacity(n + 1);
    let mut polar = Vec::with_capacity(n + 1);

    let mut q = UnitQuaternion::identity();
    let mut p = p0;
    for step in 0..=n {
        times.push(T::from_usize(step).unwrap_or_else(T::max_value));
        states.push(q);
        polar.push((p, r1.apply(p)));
        if step < n {
            q = block * q;
            p = r2.apply(r1.apply(p));
        }
    }
    Ok(SpinTrajectory {
        times,
        states,
        polar: Some(polar),
    })
}
