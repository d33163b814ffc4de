use super::SpinTrajectory;
use crate::{Error, EtaMatrix, Quaternion, Real, Result, UnitQuaternion, Vector3};

/// Largest rotation per step, `dt·|Ω|`, accepted by [`integrate_spin`].
pub const MAX_STEP_PHASE: f64 = 0.5;

/// The antisymmetric generator `(η⃗·B) = Bₓηₓ + B_yη_y + B_zη_z`.
pub fn eta_dot_field<T: Real>(field: Vector3<T>) -> EtaMatrix<T> {
    Quaternion::pure(field).to_eta()
}

/// `ds/dt = −coupling·(η⃗·B)s`.
///
/// `coupling` is `γ/2` for a gyromagnetic ratio `γ`, or `μ/ħ` when the field
/// couples through a magnetic moment. With `B` already an angular rate, pass ½.
pub fn spin_ode_rhs<T: Real>(field: Vector3<T>, s: Quaternion<T>, coupling: T) -> Quaternion<T> {
    (Quaternion::pure(field) * s).scale(-coupling)
}

/// Fixed-step classical Runge–Kutta integration of the spin equation with
/// coupling ½ for the angular-rate field `rate(t)`.
///
/// The span is split into `ceil((t1 − t0)/dt)` equal steps, so the step used
/// never exceeds `dt` and the last stored time is exactly `t1`. Each stored
/// state is projected back onto the unit sphere.
pub fn integrate_spin<T, F>(
    rate: F,
    s0: UnitQuaternion<T>,
    t0: T,
    t1: T,
    dt: T,
) -> Result<SpinTrajectory<T>>
where
    T: Real,
    F: Fn(T) -> Vector3<T>,
{
    let span_err = || Error::InvalidTimeSpan {
        t0: t0.to_f64().unwrap_or(f64::NAN),
        t1: t1.to_f64().unwrap_or(f64::NAN),
        dt: dt.to_f64().unwrap_or(f64::NAN),
    };
    if !(t0.is_finite() && t1.is_finite() && dt.is_finite()) || !(dt > T::zero()) || !(t1 > t0) {
        return Err(span_err());
    }
    let steps = ((t1 - t0) / dt)
        .ceil()
        .to_usize()
        .ok_or_else(span_err)?
        .max(1);
    let h = (t1 - t0) / T::from_usize(steps).ok_or_else(span_err)?;
    let limit = T::lit(MAX_STEP_PHASE);
    let half = T::half();

    let eval = |t: T| -> Result<Vector3<T>> {
        let omega = rate(t);
        let phase = h * omega.norm();
        if !(phase <= limit) {
            return Err(Error::StepTooLarge {
                phase: phase.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(omega)
    };

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(t0);
    states.push(s0);

    let mut s = s0.quaternion();
    for i in 0..steps {
        let t = t0 + h * T::from_usize(i).ok_or_else(span_err)?;
        let t_mid = t + h * half;
        let t_end = if i + 1 == steps { t1 } else { t + h };

        let k1 = spin_ode_rhs(eval(t)?, s, half);
        let omega_mid = eval(t_mid)?;
        let k2 = spin_ode_rhs(omega_mid, s + k1.scale(h * half), half);
        let k3 = spin_ode_rhs(omega_mid, s + k2.scale(h * half), half);
        let k4 = spin_ode_rhs(eval(t_end)?, s + k3.scale(h), half);
        let incr = (k1 + k2.scale(T::two()) + k3.scale(T::two()) + k4).scale(h / T::lit(6.0));

        let next = UnitQuaternion::new_normalize(s + incr)?;
        s = next.quaternion();
        times.push(t_end);
        states.push(next);
    }
    Ok(SpinTrajectory {
        times,
        states,
        polar: None,
    })
}
