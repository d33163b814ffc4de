use super::PolarizationVector;
use crate::{Error, Quaternion, Real, Result, UnitQuaternion, Vector3};

/// Resonance parameters: width `Γ`, detuning `Δ`, drive frequency `ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicalParams<T> {
    pub gamma_width: T,
    pub delta_detune: T,
    pub omega_drive: T,
}

impl<T: Real> HelicalParams<T> {
    pub fn new(gamma_width: T, delta_detune: T, omega_drive: T) -> Result<Self> {
        if !(gamma_width.is_finite() && gamma_width >= T::zero()) {
            return Err(Error::InvalidParameter {
                name: "gamma_width",
                reason: "must be finite and non-negative".into(),
            });
        }
        if !delta_detune.is_finite() || !omega_drive.is_finite() {
            return Err(Error::InvalidParameter {
                name: "delta_detune/omega_drive",
                reason: "must be finite".into(),
            });
        }
        Ok(Self {
            gamma_width,
            delta_detune,
            omega_drive,
        })
    }

    /// `√(Γ² + Δ²)`, the nutation rate in the co-rotating frame.
    pub fn effective_rate(&self) -> T {
        self.gamma_width.hypot(self.delta_detune)
    }
}

/// Helical field `B = (b cos ωt, b sin ωt, B_z)` with gyromagnetic ratio `γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicalFieldSpec<T> {
    pub b_transverse: T,
    pub bz_axial: T,
    pub omega_drive: T,
    pub gyromagnetic: T,
}

impl<T: Real> HelicalFieldSpec<T> {
    /// `Ω* = γ√(B_z² + b²)`.
    pub fn larmor_frequency(&self) -> T {
        self.gyromagnetic * self.bz_axial.hypot(self.b_transverse)
    }

    /// Cone apex angle `arctan(b/B_z)` in `(−π/2, π/2]`.
    pub fn apex_angle(&self) -> T {
        if self.bz_axial == T::zero() {
            T::FRAC_PI_2()
        } else {
            (self.b_transverse / self.bz_axial).atan()
        }
    }

    /// `γB(t)`.
    pub fn rate(&self, t: T) -> Vector3<T> {
        let (s, c) = (self.omega_drive * t).sin_cos();
        Vector3::new(self.b_transverse * c, self.b_transverse * s, self.bz_axial)
            .scale(self.gyromagnetic)
    }
}

/// `Δ = ω − Ω*cos θ`, `Γ = Ω* sin θ`.
///
/// `Γ` carries the sign of `γ·b`; it is negative for a negative gyromagnetic
/// ratio, in which case [`HelicalParams::new`] would reject it but the closed
/// forms remain valid.
pub fn helical_params_from_field<T: Real>(f: &HelicalFieldSpec<T>) -> Result<HelicalParams<T>> {
    if f.bz_axial == T::zero() && f.b_transverse == T::zero() {
        return Err(Error::ZeroField);
    }
    let omega_star = f.larmor_frequency();
    let theta = f.apex_angle();
    let (s, c) = theta.sin_cos();
    Ok(HelicalParams {
        gamma_width: omega_star * s,
        delta_detune: f.omega_drive - omega_star * c,
        omega_drive: f.omega_drive,
    })
}

/// Angular-rate field `(Γ cos ωt, Γ sin ωt, ω − Δ)` whose spin evolution is
/// [`analytic_helical`].
pub fn helical_rate<T: Real>(p: &HelicalParams<T>, t: T) -> Vector3<T> {
    let (s, c) = (p.omega_drive * t).sin_cos();
    Vector3::new(
        p.gamma_width * c,
        p.gamma_width * s,
        p.omega_drive - p.delta_detune,
    )
}

/// Closed-form spin state in the helical field, starting from `(1,0,0,0)`.
///
/// With `W = √(Γ²+Δ²)`, `a = Wt/2`, `c = ωt/2`:
///
/// ```text
/// s₀ =  (Δ/W) sin a sin c + cos a cos c
/// sₓ = −(Γ/W) sin a cos c
/// s_y = −(Γ/W) sin a sin c
/// s_z =  (Δ/W) sin a cos c − cos a sin c
/// ```
pub fn analytic_helical<T: Real>(p: &HelicalParams<T>, t: T) -> Result<UnitQuaternion<T>> {
    let w = p.effective_rate();
    if w == T::zero() {
        return Err(Error::DegenerateParams);
    }
    let (g, d) = (p.gamma_width / w, p.delta_detune / w);
    let (sa, ca) = (w * t * T::half()).sin_cos();
    let (sc, cc) = (p.omega_drive * t * T::half()).sin_cos();
    let q = Quaternion::new(
        d * sa * sc + ca * cc,
        -g * sa * cc,
        -g * sa * sc,
        d * sa * cc - ca * sc,
    );
    Ok(UnitQuaternion::new_unchecked(q))
}

/// State seen from the frame co-rotating with the transverse field,
/// `Z(t)⁻¹ ⊗ s` with `Z(t) = (cos ωt/2, 0, 0, −sin ωt/2)`.
///
/// On resonance this is a pure nutation about `x` by angle `−Γt`, so the state
/// returns to `−s(0)` after a nutation of 2π and to `s(0)` after 4π.
pub fn rotating_frame_state<T: Real>(s: UnitQuaternion<T>, omega: T, t: T) -> UnitQuaternion<T> {
    let frame = UnitQuaternion::new_unchecked(Quaternion::from_parts(
        (omega * t * T::half()).cos(),
        Vector3::unit_z().scale(-(omega * t * T::half()).sin()),
    ));
    frame.inverse() * s
}

/// Sign applied to `s_z` before projecting onto the polarization sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// `R(s₀, sₓ, s_y, ±s_z)·P(0)` for an arbitrary state `s`.
pub fn branch_polarization<T: Real>(
    s: UnitQuaternion<T>,
    branch: Branch,
    p0: PolarizationVector<T>,
) -> PolarizationVector<T> {
    let s = s.quaternion();
    let sz = match branch {
        Branch::Plus => s.sz,
        Branch::Minus => -s.sz,
    };
    p0.rotated(UnitQuaternion::new_unchecked(Quaternion::new(
        s.s0, s.sx, s.sy, sz,
    )))
}

/// `P(t) = R(s₀, sₓ, s_y, ±s_z)·P(0)` with `s(t)` from [`analytic_helical`].
pub fn polarization_evolution<T: Real>(
    p: &HelicalParams<T>,
    branch: Branch,
    p0: Vector3<T>,
    t: T,
) -> Result<PolarizationVector<T>> {
    let p0 = PolarizationVector::new(p0)?;
    Ok(branch_polarization(analytic_helical(p, t)?, branch, p0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::integrate_spin;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn resonant() -> HelicalParams<f64> {
        HelicalParams::new(0.04, 0.0, PI / 157.0).unwrap()
    }

    #[test]
    fn starts_at_identity() {
        let s = analytic_helical(&HelicalParams::new(0.04, 0.03, 0.02).unwrap(), 0.0).unwrap();
        assert_eq!(s.quaternion(), Quaternion::identity());
    }

    #[test]
    fn resonant_components() {
        let p = resonant();
        for &t in &[0.0, 3.0, 40.0, 117.0] {
            let s = analytic_helical(&p, t).unwrap().quaternion();
            let (g, w) = (p.gamma_width, p.omega_drive);
            assert!((s.sz - -(g * t / 2.0).cos() * (w * t / 2.0).sin()).abs() < 1e-15);
            assert!((s.s0 - (g * t / 2.0).cos() * (w * t / 2.0).cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn unit_norm_for_random_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..500 {
            let p = HelicalParams::new(
                rng.gen_range(0.0f64..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-1.0..1.0),
            )
            .unwrap();
            let s = analytic_helical(&p, rng.gen_range(0.0f64..500.0)).unwrap();
            assert!((s.quaternion().norm_squared() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_parameters_rejected() {
        let p = HelicalParams::new(0.0, 0.0, 0.3).unwrap();
        assert_eq!(
            analytic_helical(&p, 1.0).unwrap_err(),
            Error::DegenerateParams
        );
    }

    #[test]
    fn closed_form_solves_the_spin_equation() {
        for &(g, d, w) in &[
            (0.04, 0.0, PI / 157.0),
            (0.04, 0.03, 0.02),
            (0.5, -0.7, 1.3),
        ] {
            let p = HelicalParams::new(g, d, w).unwrap();
            let traj = integrate_spin(
                |t| helical_rate(&p, t),
                UnitQuaternion::identity(),
                0.0,
                60.0,
                1e-3,
            )
            .unwrap();
            for (t, s) in traj.times.iter().zip(&traj.states).step_by(997) {
                let exact = analytic_helical(&p, *t).unwrap();
                assert!(s.quaternion().max_abs_diff(exact.quaternion()) < 1e-10);
            }
        }
    }

    #[test]
    fn params_from_field_examples() {
        let f = HelicalFieldSpec {
            b_transverse: 0.0f64,
            bz_axial: 2.0,
            omega_drive: 1.5,
            gyromagnetic: 0.5,
        };
        let p = helical_params_from_field(&f).unwrap();
        assert_eq!(p.gamma_width, 0.0);
        assert!((p.delta_detune - (1.5 - 0.5 * 2.0)).abs() < 1e-15);

        let f = HelicalFieldSpec {
            b_transverse: 3.0,
            bz_axial: 0.0,
            omega_drive: 1.5,
            gyromagnetic: 0.5,
        };
        assert_eq!(f.apex_angle(), PI / 2.0);
        let p = helical_params_from_field(&f).unwrap();
        assert!((p.delta_detune - 1.5).abs() < 1e-15);
        assert!((p.gamma_width - 1.5).abs() < 1e-15);

        let zero = HelicalFieldSpec {
            b_transverse: 0.0,
            bz_axial: 0.0,
            omega_drive: 1.0,
            gyromagnetic: 1.0,
        };
        assert_eq!(
            helical_params_from_field(&zero).unwrap_err(),
            Error::ZeroField
        );
    }

    #[test]
    fn resonance_locus_has_zero_detuning() {
        let mut f = HelicalFieldSpec {
            b_transverse: 0.3f64,
            bz_axial: 1.7,
            omega_drive: 0.0,
            gyromagnetic: 1.2,
        };
        f.omega_drive = f.larmor_frequency() * f.apex_angle().cos();
        let p = helical_params_from_field(&f).unwrap();
        assert!(p.delta_detune.abs() < 1e-15);
        // the field-spec rate and the parameter rate are the same vector field
        for &t in &[0.0, 0.7, 5.0] {
            assert!((f.rate(t) - helical_rate(&p, t)).max_abs() < 1e-14);
        }
    }

    #[test]
    fn polarization_at_time_zero_unchanged() {
        let p0 = Vector3::new(0.6, 0.0, 0.8);
        let out = polarization_evolution(&resonant(), Branch::Plus, p0, 0.0).unwrap();
        assert_eq!(out.vector(), p0);
    }

    #[test]
    fn resonant_polarization_closed_forms() {
        let p = resonant();
        let (g, w) = (p.gamma_width, p.omega_drive);
        for &t in &[1.0, 17.0, 50.0, 91.0, 150.0] {
            let minus = polarization_evolution(&p, Branch::Minus, Vector3::unit_z(), t)
                .unwrap()
                .vector();
            let circle = Vector3::new(0.0, -(g * t).sin(), (g * t).cos());
            assert!((minus - circle).max_abs() < 1e-12);

            let plus = polarization_evolution(&p, Branch::Plus, Vector3::unit_z(), t)
                .unwrap()
                .vector();
            let ring = Vector3::new(
                (g * t).sin() * (w * t).sin(),
                -(g * t).sin() * (w * t).cos(),
                (g * t).cos(),
            );
            assert!((plus - ring).max_abs() < 1e-12);
            // printed helical ring, turned by π about z
            let printed = Vector3::new(
                -(g * t).sin() * (w * t).sin(),
                (g * t).sin() * (w * t).cos(),
                (g * t).cos(),
            );
            assert!((plus - Vector3::new(-printed.x, -printed.y, printed.z)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn rotating_frame_is_constant_axis_precession() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..50 {
            let p = HelicalParams::new(
                rng.gen_range(0.01..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
            .unwrap();
            let t = rng.gen_range(0.0..30.0);
            let rot = rotating_frame_state(analytic_helical(&p, t).unwrap(), p.omega_drive, t);
            let w = p.effective_rate();
            let axis = Vector3::new(p.gamma_width / w, 0.0, -p.delta_detune / w);
            let expect = UnitQuaternion::from_axis_angle(axis, -w * t).unwrap();
            assert!(rot.quaternion().max_abs_diff(expect.quaternion()) < 1e-12);
        }
    }

    #[test]
    fn rejects_non_unit_initial_polarization() {
        let err =
            polarization_evolution(&resonant(), Branch::Plus, Vector3::new(0.0, 0.0, 0.5), 1.0)
                .unwrap_err();
        assert!(matches!(err, Error::NonUnitPolarization { .. }));
    }
}
