// dev scratch: dephasing dependence of the zero-detuning slope,
// closed-form vs full numeric steady state
use digs_core::analytic::{susceptibility_resonant, ChiParams, GeneralizedPopulations};
use digs_core::liouvillian::numeric_susceptibility;
use digs_core::params::preset;

fn main() {
    let base = preset("fig3-closed").unwrap().params;
    let p = GeneralizedPopulations::real(0.1, 0.8);
    for gamma in [1e-4, 1e-3, 3.16e-3, 1e-2] {
        // closed-form slope with dressed rates gamma_C = gamma_C' = gamma
        let cp = ChiParams {
            omega_b: 0.1,
            omega_c: 0.1,
            omega_mu: 2.0,
            gamma_ab: 1.0,
            gamma_c: gamma,
            gamma_cp: gamma,
        };
        let gamma_n = cp.gamma_ab * 0.0025 + gamma;
        let h = gamma_n / 100.0;
        let s_formula = (susceptibility_resonant(&p, h, &cp).unwrap().re
            - susceptibility_resonant(&p, -h, &cp).unwrap().re)
            / (2.0 * h);

        // numeric slope with the same pair rates imposed through dephasings
        let mut params = base.clone();
        params.dephasings.gamma_ph_bc = gamma;
        params.dephasings.gamma_ph_bpc = gamma;
        params.dephasings.gamma_ph_bcp = gamma;
        params.dephasings.gamma_ph_bpcp = gamma;
        let s_numeric = (numeric_susceptibility(&params, h).unwrap().chi.re
            - numeric_susceptibility(&params, -h).unwrap().chi.re)
            / (2.0 * h);
        println!(
            "gamma = {gamma:.2e}: formula slope {s_formula:.5}, numeric slope {s_numeric:.5}"
        );
    }
}
