//! Shared oracles for the integration suites: independently coded limit
//! formulas, a bare-basis probe solve, and a Lorentzian feature fitter.
//! Everything here deliberately avoids the dressed-basis code paths it is
//! used to check.

use nalgebra::{Matrix6, Vector6};
use num_complex::Complex64;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Textbook EIT susceptibility for population `rho_bb` in the probed ground
/// state: `chi = gamma_ab rho_bb / ((Dp - i g_ab) - (om^2/4)/(Dp - i g_cb))`.
pub fn chi_standard_eit(
    rho_bb: f64,
    delta_p: f64,
    omega_mu: f64,
    gamma_ab: f64,
    gamma_cb: f64,
) -> Complex64 {
    let opt = re(delta_p) - I * re(gamma_ab);
    let raman = re(delta_p) - I * re(gamma_cb);
    re(gamma_ab * rho_bb) / (opt - re(omega_mu * omega_mu / 4.0) / raman)
}

/// Double-dark-resonance susceptibility: the EIT ladder with one more
/// RF-coupled level, written as a continued fraction.
pub fn chi_double_dark(
    rho_bb: f64,
    delta_p: f64,
    omega_mu: f64,
    omega_c: f64,
    gamma_ab: f64,
    gamma_cb: f64,
    gamma_cpb: f64,
) -> Complex64 {
    let opt = re(delta_p) - I * re(gamma_ab);
    let raman = re(delta_p) - I * re(gamma_cb);
    let rf = re(delta_p) - I * re(gamma_cpb);
    let nested = raman - re(omega_c * omega_c / 4.0) / rf;
    re(gamma_ab * rho_bb) / (opt - re(omega_mu * omega_mu / 4.0) / nested)
}

/// Populations and zeroth-order coherences feeding the probe response.
#[derive(Debug, Clone, Copy, Default)]
pub struct BareSources {
    pub rho_aa: f64,
    pub rho_bb: f64,
    pub rho_bpbp: f64,
    pub rho_bbp: Complex64,
    pub rho_ca: Complex64,
    pub rho_cpa: Complex64,
}

/// First-order probe response from the bare-basis six-coherence system
/// (rho_ab, rho_ab', rho_cb, rho_cb', rho_c'b, rho_c'b') at resonant
/// control and RF fields. A direct dense solve, independent of the dressed
/// transformation used by the closed forms.
#[allow(clippy::too_many_arguments)]
pub fn chi_bare_six(
    sources: &BareSources,
    delta_p: f64,
    omega_mu: f64,
    omega_b: f64,
    omega_c: f64,
    gamma_ab: f64,
    gamma_abp: f64,
    gamma_cb: f64,
    gamma_cbp: f64,
    gamma_cpb: f64,
    gamma_cpbp: f64,
) -> Complex64 {
    let omega_p = 1.0;
    let z = re(0.0);
    let d = re(delta_p);
    let half = |x: f64| re(0.5 * x);
    // i d/dt v = M v + src; rows (ab, ab', cb, cb', c'b, c'b')
    #[rustfmt::skip]
    let m = Matrix6::from_row_slice(&[
        d - I * re(gamma_ab),  half(omega_b),          -half(omega_mu), z,                      z,                      z,
        half(omega_b),         d - I * re(gamma_abp),  z,               -half(omega_mu),        z,                      z,
        -half(omega_mu),       z,                      d - I * re(gamma_cb),  half(omega_b),    -half(omega_c),         z,
        z,                     -half(omega_mu),        half(omega_b),   d - I * re(gamma_cbp),  z,                      -half(omega_c),
        z,                     z,                      -half(omega_c),  z,                      d - I * re(gamma_cpb),  half(omega_b),
        z,                     z,                      z,               -half(omega_c),         half(omega_b),          d - I * re(gamma_cpbp),
    ]);
    let src = Vector6::new(
        half(omega_p) * re(sources.rho_aa - sources.rho_bb),
        -half(omega_p) * sources.rho_bbp,
        half(omega_p) * sources.rho_ca,
        z,
        half(omega_p) * sources.rho_cpa,
        z,
    );
    let v = m.lu().solve(&(-src)).expect("bare six-coherence solve");
    2.0 * re(gamma_ab) * v[0] / re(omega_p)
}

/// Feature geometry extracted from a dense scan: extremum location plus
/// half-maximum crossings against the window-edge baseline.
#[derive(Debug, Clone, Copy)]
pub struct LorentzFit {
    pub center: f64,
    pub hwhm: f64,
    /// Signed height above baseline.
    pub height: f64,
    pub baseline: f64,
}

pub fn fit_lorentzian(f: &dyn Fn(f64) -> f64, center_guess: f64, window: f64) -> LorentzFit {
    let n = 4000;
    let xs: Vec<f64> = (0..=n)
        .map(|i| center_guess - window + 2.0 * window * i as f64 / n as f64)
        .collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let baseline = 0.5 * (ys[0] + ys[n]);
    let (mut k_ext, mut best) = (0, 0.0_f64);
    for (k, &y) in ys.iter().enumerate() {
        if (y - baseline).abs() > best {
            best = (y - baseline).abs();
            k_ext = k;
        }
    }
    let height = ys[k_ext] - baseline;
    let half = baseline + 0.5 * height;
    let crossing = |ks: &mut dyn Iterator<Item = usize>| -> f64 {
        let mut prev: Option<usize> = None;
        for k in ks {
            if let Some(pk) = prev {
                let (a, b) = (ys[pk] - half, ys[k] - half);
                if (a <= 0.0) != (b <= 0.0) {
                    let t = a / (a - b);
                    return xs[pk] + t * (xs[k] - xs[pk]);
                }
            }
            prev = Some(k);
        }
        panic!("no half-maximum crossing inside the fit window");
    };
    let left = crossing(&mut (0..=k_ext).rev());
    let right = crossing(&mut (k_ext..=n));
    // parabolic refinement of the extremum
    let center = if k_ext > 0 && k_ext < n {
        let (y0, y1, y2) = (ys[k_ext - 1], ys[k_ext], ys[k_ext + 1]);
        let denom = y0 - 2.0 * y1 + y2;
        if denom.abs() > 0.0 {
            xs[k_ext] + 0.5 * (y0 - y2) / denom * (xs[1] - xs[0])
        } else {
            xs[k_ext]
        }
    } else {
        xs[k_ext]
    };
    LorentzFit {
        center,
        hwhm: 0.5 * (right - left),
        height,
        baseline,
    }
}
