//! Adaptive Gauss-Kronrod quadrature for complex integrands.
//!
//! A 7-15 pair supplies the per-interval estimate and error; the interval
//! with the worst error is bisected until the summed error meets the
//! tolerance. Callers can seed interior split points so that resonances far
//! narrower than the integration window are found rather than stumbled upon.

use num_complex::Complex64;

use crate::error::{Error, Result};

// Kronrod-15 abscissae on [0, 1] (symmetric), Gauss-7 nested at the odd
// indices. QUADPACK coefficients.
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];

const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    /// L1 mass of the panel, for the floating-point error floor.
    resabs: f64,
    depth: u32,
}

fn kronrod_panel<F>(f: &mut F, a: f64, b: f64, depth: u32) -> Result<Panel>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center)?;
    let mut kronrod = f_center * WGK[7];
    let mut gauss = f_center * WG[3];
    let mut resabs = f_center.norm() * WGK[7];
    for j in 0..7 {
        let x = half * XGK[j];
        let lo = f(center - x)?;
        let hi = f(center + x)?;
        let pair = lo + hi;
        kronrod += pair * WGK[j];
        resabs += (lo.norm() + hi.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    kronrod *= half;
    gauss *= half;
    resabs *= half.abs();
    Ok(Panel {
        a,
        b,
        value: kronrod,
        error: (kronrod - gauss).norm(),
        resabs,
        depth,
    })
}

/// Integrate `f` over `[a, b]` to relative tolerance `rel_tol` (with an
/// absolute floor for integrals near zero). `seeds` lists interior points
/// where panels must start subdivided; `max_depth` bounds the bisection
/// depth of any panel.
pub fn integrate<F>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_floor: f64,
    max_depth: u32,
    seeds: &[f64],
) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut cuts: Vec<f64> = vec![a];
    let mut interior: Vec<f64> = seeds
        .iter()
        .copied()
        .filter(|&s| s > a && s < b)
        .collect();
    interior.sort_by(f64::total_cmp);
    interior.dedup();
    cuts.extend(interior);
    cuts.push(b);

    let mut panels = Vec::new();
    for pair in cuts.windows(2) {
        panels.push(kronrod_panel(&mut f, pair[0], pair[1], 0)?);
    }

    // generous cap; tolerance failure past it is reported, not masked
    const MAX_PANELS: usize = 20_000;
    loop {
        let total: Complex64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        let resabs: f64 = panels.iter().map(|p| p.resabs).sum();
        // a strongly cancelling integral cannot be resolved below the
        // rounding floor of its L1 mass
        let fp_floor = 100.0 * f64::EPSILON * resabs;
        let bound = (rel_tol * total.norm()).max(abs_floor).max(fp_floor);
        if err <= bound {
            return Ok(total);
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("at least one panel");
        if panels[worst].depth >= max_depth || panels.len() >= MAX_PANELS {
            return Err(Error::QuadratureNotConverged {
                estimate: total,
                error_bound: err,
            });
        }
        let Panel { a, b, depth, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        panels.push(kronrod_panel(&mut f, a, mid, depth + 1)?);
        panels.push(kronrod_panel(&mut f, mid, b, depth + 1)?);
    }
}
