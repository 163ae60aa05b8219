//! Partial diagonalization of the ground doublets and the gain-state
//! decomposition of the driven `{a, c, c'}` manifold.
//!
//! Each doublet is rotated like the dressed states of a two-level atom:
//! `|B> = cos(theta_b)|b> + sin(theta_b)|b'>` and so on, with
//! `cos(theta_i) = sqrt((1 + Delta_i/Omega_i_eff)/2)` on the principal
//! branch. The excited state is left untouched. Decay transfers into this
//! basis exactly when the bare rates pair up (`gamma_cb = gamma_cb'`,
//! `gamma_c'b = gamma_c'b'`); otherwise the mapping is an approximation and
//! callers get a warning, not an error.

use nalgebra::{Matrix3, Matrix5, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result, Warning};
use crate::liouvillian::DensityMatrix;
use crate::params::{Level, SystemParams};

/// Rotation angles and effective Rabi frequencies for the two doublets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingAngles {
    pub theta_b: f64,
    pub theta_c: f64,
    pub omega_b_eff: f64,
    pub omega_c_eff: f64,
}

/// One manifold's rotation: `Omega_eff = sqrt(Delta^2 + Omega^2)`,
/// `cos(theta) = sqrt((1 + Delta/Omega_eff)/2)`.
fn manifold_angle(delta: f64, omega: f64) -> Result<(f64, f64)> {
    let omega_eff = delta.hypot(omega);
    if omega_eff == 0.0 {
        return Err(Error::DegenerateManifold);
    }
    let cos = ((1.0 + delta / omega_eff) / 2.0).sqrt();
    let sin = ((1.0 - delta / omega_eff) / 2.0).sqrt();
    Ok((sin.atan2(cos), omega_eff))
}

impl MixingAngles {
    pub fn new(delta_b: f64, omega_b: f64, delta_c: f64, omega_c: f64) -> Result<Self> {
        let (theta_b, omega_b_eff) = manifold_angle(delta_b, omega_b)?;
        let (theta_c, omega_c_eff) = manifold_angle(delta_c, omega_c)?;
        Ok(Self {
            theta_b,
            theta_c,
            omega_b_eff,
            omega_c_eff,
        })
    }

    pub fn from_params(params: &SystemParams) -> Result<Self> {
        Self::new(
            params.delta_b,
            params.omega_b,
            params.delta_c,
            params.omega_c,
        )
    }

    /// The rotation matrix `D`; dressed states are rows over the bare basis.
    pub fn rotation(&self) -> Matrix5<Complex64> {
        let (cb, sb) = (self.theta_b.cos(), self.theta_b.sin());
        let (cc, sc) = (self.theta_c.cos(), self.theta_c.sin());
        let r = |x: f64| Complex64::new(x, 0.0);
        let z = Complex64::new(0.0, 0.0);
        Matrix5::from_row_slice(&[
            r(1.0), z, z, z, z,
            z, r(cb), r(sb), z, z,
            z, r(-sb), r(cb), z, z,
            z, z, z, r(cc), r(sc),
            z, z, z, r(-sc), r(cc),
        ])
    }
}

/// Conjugate a density matrix into the dressed basis, `D rho D^dagger`.
///
/// The dressed matrix is indexed in the order `(a, B, B', C, C')`.
pub fn to_dressed(rho: &DensityMatrix, angles: &MixingAngles) -> DensityMatrix {
    let d = angles.rotation();
    DensityMatrix::from_matrix(d * rho.matrix() * d.adjoint())
}

/// Inverse rotation, `D^dagger rho D`.
pub fn from_dressed(rho: &DensityMatrix, angles: &MixingAngles) -> DensityMatrix {
    let d = angles.rotation();
    DensityMatrix::from_matrix(d.adjoint() * rho.matrix() * d)
}

/// Relaxation of the dressed `C`/`C'` coherences with `B`-manifold states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedDecay {
    /// Decay of `rho_CB` and `rho_CB'`.
    pub gamma_cb_dressed: f64,
    /// Decay of `rho_C'B` and `rho_C'B'`.
    pub gamma_cpb_dressed: f64,
    /// Cross coupling between the two, `(gamma_C' - gamma_C) cos sin`.
    pub cross: f64,
}

/// Map the bare pair rates `gamma_C`, `gamma_C'` through the `c`-manifold
/// rotation.
pub fn dressed_decay(gamma_c_pair: f64, gamma_cp_pair: f64, theta_c: f64) -> DressedDecay {
    let (c2, s2) = (theta_c.cos().powi(2), theta_c.sin().powi(2));
    DressedDecay {
        gamma_cb_dressed: gamma_c_pair * c2 + gamma_cp_pair * s2,
        gamma_cpb_dressed: gamma_c_pair * s2 + gamma_cp_pair * c2,
        cross: (gamma_cp_pair - gamma_c_pair) * theta_c.cos() * theta_c.sin(),
    }
}

/// Bare-basis pair rates collapsed to the `gamma_C`/`gamma_C'` form the
/// dressed treatment assumes, with warnings when the pairing fails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedRates {
    pub gamma_ab: f64,
    pub gamma_c: f64,
    pub gamma_cp: f64,
}

impl DressedRates {
    pub fn from_params(params: &SystemParams) -> (Self, Vec<Warning>) {
        let mut warnings = Vec::new();
        let g_ab = params.gamma_pair(Level::A, Level::B);
        let g_abp = params.gamma_pair(Level::A, Level::Bp);
        let g_cb = params.gamma_pair(Level::C, Level::B);
        let g_cbp = params.gamma_pair(Level::C, Level::Bp);
        let g_cpb = params.gamma_pair(Level::Cp, Level::B);
        let g_cpbp = params.gamma_pair(Level::Cp, Level::Bp);

        let mut check = |name: &'static str, x: f64, y: f64| {
            let scale = x.abs().max(y.abs()).max(1e-300);
            if (x - y).abs() > 1e-12 * scale {
                warnings.push(Warning::new(
                    "dressed-rate-pairing",
                    format!("{name}: {x} vs {y}; dressed decay uses their mean"),
                ));
            }
            0.5 * (x + y)
        };
        let gamma_ab = check("gamma_ab vs gamma_ab'", g_ab, g_abp);
        let gamma_c = check("gamma_cb vs gamma_cb'", g_cb, g_cbp);
        let gamma_cp = check("gamma_c'b vs gamma_c'b'", g_cpb, g_cpbp);
        (
            Self {
                gamma_ab,
                gamma_c,
                gamma_cp,
            },
            warnings,
        )
    }
}

/// Eigen-decomposition of the driven `{a, c, c'}` manifold at
/// `Delta_mu = Delta_c = 0`, exposing the control-decoupled gain state.
#[derive(Debug, Clone)]
pub struct GainStateDecomposition {
    /// `tan(theta) = omega_mu / omega_c`.
    pub theta: f64,
    /// Energies relative to the excited level, in `hbar gamma_ab` units.
    pub e_plus: f64,
    pub e_minus: f64,
    pub e_0: f64,
    /// Eigenvector components over `(a, c, c')`, rows ordered `(+, -, 0)`.
    pub a_plus: Vector3<f64>,
    pub a_minus: Vector3<f64>,
    pub a_0: Vector3<f64>,
}

impl GainStateDecomposition {
    /// Weight of the gain state on `|c'>`; approaches 1 for
    /// `omega_c << omega_mu`, where the gain state is essentially `|c'>`.
    pub fn gain_state_cp_weight(&self) -> f64 {
        self.a_0[2] * self.a_0[2]
    }

    /// The driven-manifold Hamiltonian (excited-level offset removed),
    /// in `hbar/2` units absorbed: `H' = -(1/2)(omega_mu |a><c| + omega_c
    /// |c'><c| + h.c.)`.
    pub fn coupling_hamiltonian(omega_mu: f64, omega_c: f64) -> Matrix3<f64> {
        let mut h = Matrix3::zeros();
        h[(0, 1)] = -0.5 * omega_mu;
        h[(1, 0)] = -0.5 * omega_mu;
        h[(2, 1)] = -0.5 * omega_c;
        h[(1, 2)] = -0.5 * omega_c;
        h
    }
}

/// Diagonalize the `{a, c, c'}` subspace.
///
/// Labels follow the energies: `|a_+>` carries `+sqrt(omega_mu^2 +
/// omega_c^2)/2`, `|a_->` the negative root, and the gain state `|a_0>`
/// stays at the bare excited energy with no amplitude on `|c>`.
pub fn gain_state(omega_mu: f64, omega_c: f64) -> Result<GainStateDecomposition> {
    let omega_eff = omega_mu.hypot(omega_c);
    if omega_eff == 0.0 {
        return Err(Error::DegenerateGainState);
    }
    let theta = omega_mu.atan2(omega_c);
    let (s, c) = (theta.sin(), theta.cos());
    let inv = 1.0 / 2.0_f64.sqrt();
    // H'(sin t |a> +- |c> + cos t |c'>)/sqrt2 = -+ (omega_eff/2) (...)
    let a_plus = Vector3::new(s * inv, -inv, c * inv);
    let a_minus = Vector3::new(s * inv, inv, c * inv);
    let a_0 = Vector3::new(c, 0.0, -s);
    Ok(GainStateDecomposition {
        theta,
        e_plus: 0.5 * omega_eff,
        e_minus: -0.5 * omega_eff,
        e_0: 0.0,
        a_plus,
        a_minus,
        a_0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::Matrix5;
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn resonant_angles_are_pi_over_four() {
        let m = MixingAngles::new(0.0, 0.1, 0.0, 0.1).unwrap();
        assert_relative_eq!(m.theta_b, FRAC_PI_4, max_relative = 1e-15);
        assert_relative_eq!(m.theta_c, FRAC_PI_4, max_relative = 1e-15);
        assert_relative_eq!(m.omega_b_eff, 0.1, max_relative = 1e-15);
    }

    #[test]
    fn weak_coupling_angle_vanishes() {
        let m = MixingAngles::new(1.0, 1e-12, 0.0, 0.1).unwrap();
        assert!(m.theta_b.cos() > 1.0 - 1e-12);
        assert!(m.theta_b.sin() < 1e-12);
        assert_relative_eq!(m.omega_b_eff, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn three_four_five_manifold() {
        // Delta = 3, Omega = 4: Omega_eff = 5, cos^2 = 0.8, sin^2 = 0.2
        let m = MixingAngles::new(3.0, 4.0, 0.0, 1.0).unwrap();
        assert_relative_eq!(m.omega_b_eff, 5.0, max_relative = 1e-15);
        assert_relative_eq!(m.theta_b.cos(), 0.8_f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(m.theta_b.sin(), 0.2_f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn degenerate_manifold_errors() {
        assert!(matches!(
            MixingAngles::new(0.0, 0.0, 0.0, 0.1),
            Err(Error::DegenerateManifold)
        ));
    }

    #[test]
    fn identity_rotation_at_zero_angles() {
        // theta = 0 comes from Omega -> 0+ at positive detuning
        let m = MixingAngles::new(1.0, 0.0, 1.0, 0.0).unwrap();
        let mut rho = DensityMatrix::zeros();
        rho.set(Level::B, Level::B, c(0.7, 0.0));
        rho.set(Level::C, Level::Cp, c(0.1, 0.2));
        rho.set(Level::Cp, Level::C, c(0.1, -0.2));
        let out = to_dressed(&rho, &m);
        assert!((out.matrix() - rho.matrix()).norm() < 1e-15);
    }

    #[test]
    fn isotropic_block_is_rotation_invariant() {
        let m = MixingAngles::new(0.0, 0.1, 0.0, 0.1).unwrap();
        let mut rho = DensityMatrix::zeros();
        rho.set(Level::B, Level::B, c(0.4, 0.0));
        rho.set(Level::Bp, Level::Bp, c(0.4, 0.0));
        let out = to_dressed(&rho, &m);
        assert_relative_eq!(out.get(Level::B, Level::B).re, 0.4, max_relative = 1e-14);
        assert_relative_eq!(out.get(Level::Bp, Level::Bp).re, 0.4, max_relative = 1e-14);
        assert!(out.get(Level::B, Level::Bp).norm() < 1e-15);
    }

    #[test]
    fn pure_b_population_at_pi_over_four() {
        // rho_bb = 1 maps to populations 1/2 and coherence -1/2, the sign
        // fixed by the D rho D^dagger product.
        let m = MixingAngles::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let mut rho = DensityMatrix::zeros();
        rho.set(Level::B, Level::B, c(1.0, 0.0));
        let out = to_dressed(&rho, &m);
        assert_relative_eq!(out.get(Level::B, Level::B).re, 0.5, max_relative = 1e-14);
        assert_relative_eq!(out.get(Level::Bp, Level::Bp).re, 0.5, max_relative = 1e-14);
        assert_relative_eq!(out.get(Level::B, Level::Bp).re, -0.5, max_relative = 1e-14);
        // matches sin cos (rho_b'b' - rho_bb) + cos^2 rho_bb' - sin^2 rho_b'b
        assert!(out.get(Level::B, Level::Bp).im.abs() < 1e-15);
    }

    #[test]
    fn unitarity_preserves_trace_and_spectrum() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let mut m = Matrix5::<Complex64>::zeros();
            for i in 0..5 {
                for j in 0..=i {
                    let v = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    if i == j {
                        m[(i, i)] = c(v.re, 0.0);
                    } else {
                        m[(i, j)] = v;
                        m[(j, i)] = v.conj();
                    }
                }
            }
            let rho = DensityMatrix::from_matrix(m);
            let angles = MixingAngles::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.01..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.01..1.0),
            )
            .unwrap();
            let out = to_dressed(&rho, &angles);
            assert!((out.trace() - rho.trace()).norm() < 1e-12);
            let mut eig_in = rho.matrix().symmetric_eigenvalues();
            let mut eig_out = out.matrix().symmetric_eigenvalues();
            let sortf = |v: &mut nalgebra::Vector5<f64>| {
                let mut s: Vec<f64> = v.iter().copied().collect();
                s.sort_by(f64::total_cmp);
                *v = nalgebra::Vector5::from_iterator(s);
            };
            sortf(&mut eig_in);
            sortf(&mut eig_out);
            assert!((eig_in - eig_out).amax() < 1e-12);
            // round trip
            let back = from_dressed(&out, &angles);
            assert!((back.matrix() - rho.matrix()).norm() < 1e-12);
        }
    }

    #[test]
    fn dressed_decay_equal_rates_have_no_cross_coupling() {
        let d = dressed_decay(3e-4, 3e-4, 0.3);
        assert_relative_eq!(d.gamma_cb_dressed, 3e-4, max_relative = 1e-15);
        assert_relative_eq!(d.gamma_cpb_dressed, 3e-4, max_relative = 1e-15);
        assert_eq!(d.cross, 0.0);
    }

    #[test]
    fn dressed_decay_unmixed_angle() {
        let d = dressed_decay(1e-4, 2e-4, 0.0);
        assert_eq!(d.gamma_cb_dressed, 1e-4);
        assert_eq!(d.gamma_cpb_dressed, 2e-4);
        assert_eq!(d.cross, 0.0);
    }

    #[test]
    fn dressed_decay_maximal_mixing() {
        // gamma_C = 0, gamma_C' = 2g at pi/4: diagonals g, cross g
        let g = 5e-4;
        let d = dressed_decay(0.0, 2.0 * g, FRAC_PI_4);
        assert_relative_eq!(d.gamma_cb_dressed, g, max_relative = 1e-14);
        assert_relative_eq!(d.gamma_cpb_dressed, g, max_relative = 1e-14);
        assert_relative_eq!(d.cross, g, max_relative = 1e-14);
    }

    #[test]
    fn gain_state_is_orthonormal_and_diagonalizes() {
        for (omega_mu, omega_c) in [(2.0, 0.1), (1.0, 1.0), (0.3, 2.2)] {
            let g = gain_state(omega_mu, omega_c).unwrap();
            let vs = [g.a_plus, g.a_minus, g.a_0];
            for (i, vi) in vs.iter().enumerate() {
                for (j, vj) in vs.iter().enumerate() {
                    let dot = vi.dot(vj);
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - expected).abs() < 1e-12);
                }
            }
            let h = GainStateDecomposition::coupling_hamiltonian(omega_mu, omega_c);
            let scale = h.norm();
            for (v, e) in [(g.a_plus, g.e_plus), (g.a_minus, g.e_minus), (g.a_0, g.e_0)] {
                assert!((h * v - e * v).norm() < 1e-12 * scale.max(1.0));
            }
            // energies sit at +-sqrt(omega_mu^2 + omega_c^2)/2 around e_0
            let split = 0.5 * omega_mu.hypot(omega_c);
            assert_relative_eq!(g.e_plus - g.e_0, split, max_relative = 1e-14);
            assert_relative_eq!(g.e_0 - g.e_minus, split, max_relative = 1e-14);
        }
    }

    #[test]
    fn gain_state_reduces_to_cp_for_weak_rf() {
        let g = gain_state(2.0, 1e-6).unwrap();
        assert!(g.gain_state_cp_weight() > 1.0 - 1e-11);
        assert!(g.a_0[1].abs() < 1e-15); // no |c> amplitude
    }

    #[test]
    fn gain_state_symmetric_mixing() {
        let g = gain_state(1.0, 1.0).unwrap();
        assert_relative_eq!(g.theta, FRAC_PI_4, max_relative = 1e-15);
        assert_relative_eq!(g.a_0[0] * g.a_0[0], 0.5, max_relative = 1e-14);
        assert_relative_eq!(g.gain_state_cp_weight(), 0.5, max_relative = 1e-14);
    }

    #[test]
    fn gain_state_energies_direct_values() {
        let g = gain_state(2.0, 0.1).unwrap();
        let expect = 4.01_f64.sqrt() / 2.0;
        assert_relative_eq!(g.e_plus, expect, max_relative = 1e-15);
        assert_relative_eq!(g.e_minus, -expect, max_relative = 1e-15);
    }
}
