//! Full 25-dimensional equations of motion and their exact steady state.
//!
//! The density matrix over `(a, b, b', c, c')` is vectorized row-major, so
//! element `(j, k)` lives at index `5 j + k`. Motion is affine,
//! `d rho_vec/dt = A rho_vec + s`: the commutator with the rotating-frame
//! Hamiltonian supplies the coherent part, population decay and pure
//! dephasing the diagonal relaxation, and the pump terms either a constant
//! source (open) or extra population couplings (closed).
//!
//! The steady state solves the dense linear system directly; the numeric
//! probe susceptibility extracted from it is the oracle every closed-form
//! result is checked against.

use nalgebra::{DMatrix, DVector, Matrix5};
use num_complex::Complex64;

use crate::error::{Error, Result, Warning};
use crate::params::{Level, PumpConfig, SystemParams};

const DIM: usize = 5;
const VDIM: usize = DIM * DIM;

#[inline]
fn idx(j: Level, k: Level) -> usize {
    DIM * j.index() + k.index()
}

/// 5x5 complex density matrix over the bare basis `(a, b, b', c, c')`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: Matrix5<Complex64>,
}

impl DensityMatrix {
    pub fn zeros() -> Self {
        Self {
            m: Matrix5::zeros(),
        }
    }

    pub fn from_matrix(m: Matrix5<Complex64>) -> Self {
        Self { m }
    }

    pub fn from_vec(v: &DVector<Complex64>) -> Self {
        let mut m = Matrix5::zeros();
        for j in 0..DIM {
            for k in 0..DIM {
                m[(j, k)] = v[DIM * j + k];
            }
        }
        Self { m }
    }

    pub fn to_vec(&self) -> DVector<Complex64> {
        DVector::from_fn(VDIM, |i, _| self.m[(i / DIM, i % DIM)])
    }

    pub fn matrix(&self) -> &Matrix5<Complex64> {
        &self.m
    }

    pub fn get(&self, j: Level, k: Level) -> Complex64 {
        self.m[(j.index(), k.index())]
    }

    pub fn set(&mut self, j: Level, k: Level, value: Complex64) {
        self.m[(j.index(), k.index())] = value;
    }

    pub fn population(&self, j: Level) -> f64 {
        self.m[(j.index(), j.index())].re
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    /// Largest deviation from `rho_jk = conj(rho_kj)`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for j in 0..DIM {
            for k in 0..DIM {
                worst = worst.max((self.m[(j, k)] - self.m[(k, j)].conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (self.m + self.m.adjoint()) * Complex64::new(0.5, 0.0);
        herm.symmetric_eigenvalues()
            .iter()
            .fold(f64::INFINITY, |acc, &e| acc.min(e))
    }
}

/// Configuration tag carried by the generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PumpKind {
    Open,
    Closed,
}

/// The affine generator `d rho_vec/dt = A rho_vec + s`.
#[derive(Debug, Clone)]
pub struct AffineGenerator {
    pub a: DMatrix<Complex64>,
    pub s: DVector<Complex64>,
    pub kind: PumpKind,
}

impl AffineGenerator {
    /// Apply the generator to a state: `A rho_vec + s`.
    pub fn apply(&self, rho: &DensityMatrix) -> DVector<Complex64> {
        &self.a * rho.to_vec() + &self.s
    }

    /// Max-norm of `A`.
    pub fn norm_inf(&self) -> f64 {
        (0..self.a.nrows())
            .map(|i| self.a.row(i).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// How badly the trace functional fails to annihilate `A`: the largest
    /// column sum over the five population rows. Zero (to rounding) for a
    /// closed configuration.
    pub fn trace_leak(&self) -> f64 {
        let mut worst = 0.0_f64;
        for col in 0..VDIM {
            let mut sum = Complex64::new(0.0, 0.0);
            for lvl in Level::ALL {
                sum += self.a[(idx(lvl, lvl), col)];
            }
            worst = worst.max(sum.norm());
        }
        worst
    }
}

/// Rotating-frame Hamiltonian over `hbar`, reproducing the detuning
/// coefficients of the bare-basis equations of motion:
/// `Delta_p` on `rho_ab`, `Delta_p - Delta_b` on `rho_ab'`,
/// `Delta_c - Delta_mu` on `rho_c'a`, and so on.
fn hamiltonian(p: &SystemParams) -> Matrix5<Complex64> {
    let mut h = Matrix5::<Complex64>::zeros();
    let r = |x: f64| Complex64::new(x, 0.0);
    h[(1, 1)] = r(-p.delta_p);
    h[(2, 2)] = r(p.delta_b - p.delta_p);
    h[(3, 3)] = r(-p.delta_mu);
    h[(4, 4)] = r(p.delta_c - p.delta_mu);
    let couple = |h: &mut Matrix5<Complex64>, i: usize, j: usize, omega: f64| {
        h[(i, j)] += r(-0.5 * omega);
        h[(j, i)] += r(-0.5 * omega);
    };
    couple(&mut h, 0, 1, p.omega_p); // a <-> b
    couple(&mut h, 0, 3, p.omega_mu); // a <-> c
    couple(&mut h, 1, 2, p.omega_b); // b <-> b'
    couple(&mut h, 3, 4, p.omega_c); // c <-> c'
    h
}

/// Build the full generator for the given parameters.
///
/// Coherent part: `-i (H kron I - I kron H^T)` in row-major vectorization.
/// Relaxation: `-gamma_j` on populations, `-gamma_jk` on coherences. Pump:
/// constant sources on `(b,b)` and `(c',c')` for the open variant; the
/// `b <-> a` cycling and branched repopulation for the closed one, which is
/// trace-preserving.
pub fn build_generator(params: &SystemParams) -> AffineGenerator {
    let h = hamiltonian(params);
    let minus_i = Complex64::new(0.0, -1.0);
    let mut a = DMatrix::<Complex64>::zeros(VDIM, VDIM);

    // -i[H, rho]: d rho_jk/dt = -i sum_m (H_jm rho_mk - rho_jm H_mk)
    for j in 0..DIM {
        for k in 0..DIM {
            let row = DIM * j + k;
            for m in 0..DIM {
                a[(row, DIM * m + k)] += minus_i * h[(j, m)];
                a[(row, DIM * j + m)] -= minus_i * h[(m, k)];
            }
        }
    }

    // Off-diagonal relaxation.
    for j in Level::ALL {
        for k in Level::ALL {
            if j != k {
                let row = idx(j, k);
                a[(row, row)] -= Complex64::new(params.gamma_pair(j, k), 0.0);
            }
        }
    }

    // Population decay and pumping.
    let mut s = DVector::<Complex64>::zeros(VDIM);
    let re = |x: f64| Complex64::new(x, 0.0);
    let kind = match params.pump {
        PumpConfig::Open { r_b, r_cp } => {
            for lvl in Level::ALL {
                let row = idx(lvl, lvl);
                a[(row, row)] -= re(params.gamma_level(lvl));
            }
            s[idx(Level::B, Level::B)] = re(r_b);
            s[idx(Level::Cp, Level::Cp)] = re(r_cp);
            PumpKind::Open
        }
        PumpConfig::Closed {
            r,
            alpha_b,
            alpha_c,
            alpha_cp,
        } => {
            let aa = idx(Level::A, Level::A);
            let bb = idx(Level::B, Level::B);
            let cc = idx(Level::C, Level::C);
            let cpcp = idx(Level::Cp, Level::Cp);
            let gamma_a = params.gamma_a;
            a[(aa, aa)] -= re(gamma_a + r);
            a[(aa, bb)] += re(r);
            a[(bb, aa)] += re(alpha_b * gamma_a + r);
            a[(bb, bb)] -= re(r);
            a[(cc, aa)] += re(alpha_c * gamma_a);
            a[(cpcp, aa)] += re(alpha_cp * gamma_a);
            // ground decays are validated to zero in this configuration, but
            // honor them if present rather than silently dropping terms
            for lvl in [Level::B, Level::Bp, Level::C, Level::Cp] {
                let row = idx(lvl, lvl);
                a[(row, row)] -= re(params.gamma_level(lvl));
            }
            PumpKind::Closed
        }
    };

    AffineGenerator { a, s, kind }
}

/// Residual max-norm `||A rho_vec + s||_inf`.
pub fn residual(gen: &AffineGenerator, rho: &DensityMatrix) -> f64 {
    gen.apply(rho).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

const RESIDUAL_TOL: f64 = 1e-10;

/// Replace the `d rho_jj/dt` row of a closed generator by the trace
/// constraint and solve for trace one. Any population row may be dropped:
/// trace preservation makes each one redundant given the rest.
fn solve_closed_with_row(a: &DMatrix<Complex64>, lvl: Level) -> Option<DVector<Complex64>> {
    let mut m = a.clone();
    let row = idx(lvl, lvl);
    for col in 0..VDIM {
        m[(row, col)] = Complex64::new(0.0, 0.0);
    }
    for l in Level::ALL {
        m[(row, idx(l, l))] = Complex64::new(1.0, 0.0);
    }
    let mut rhs = DVector::<Complex64>::zeros(VDIM);
    rhs[row] = Complex64::new(1.0, 0.0);
    m.lu().solve(&rhs)
}

/// Solve for the steady state.
///
/// Open: `A rho_vec = -s` by partial-pivot LU. Closed: the `d rho_aa/dt`
/// row is replaced by the trace constraint and the system solved for trace
/// one; a second solve dropping a different population row must reproduce
/// the same state, otherwise the kernel is degenerate (for instance a
/// dephasing-free closed configuration, whose b-manifold coherence is
/// neither pumped nor damped) and is reported, never silently regularized.
/// Either way the result must pass the residual bound
/// `||A rho + s||_inf < 1e-10 max(1, ||A||_inf)`.
pub fn steady_state(gen: &AffineGenerator) -> Result<DensityMatrix> {
    let rho = match gen.kind {
        PumpKind::Open => {
            let rhs = -&gen.s;
            let sol = gen.a.clone().lu().solve(&rhs).ok_or(Error::SingularSystem)?;
            DensityMatrix::from_vec(&sol)
        }
        PumpKind::Closed => {
            let first =
                solve_closed_with_row(&gen.a, Level::A).ok_or(Error::NonUniqueKernel)?;
            let second =
                solve_closed_with_row(&gen.a, Level::Cp).ok_or(Error::NonUniqueKernel)?;
            let gap = (&first - &second)
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            let scale = first.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if gap > 1e-8 * scale.max(1.0) {
                return Err(Error::NonUniqueKernel);
            }
            DensityMatrix::from_vec(&first)
        }
    };

    let tol = RESIDUAL_TOL * gen.norm_inf().max(1.0);
    let res = residual(gen, &rho);
    if !res.is_finite() || res > tol {
        // a finite solve with a large residual means the pivoting slid
        // through a (near-)degenerate kernel
        return Err(match gen.kind {
            PumpKind::Open => Error::SingularSystem,
            PumpKind::Closed => Error::NonUniqueKernel,
        });
    }
    Ok(rho)
}

/// Steady state straight from parameters.
pub fn steady_state_of(params: &SystemParams) -> Result<DensityMatrix> {
    steady_state(&build_generator(params))
}

/// Numeric reduced susceptibility with its linearity diagnostic.
#[derive(Debug, Clone)]
pub struct NumericSusceptibility {
    pub chi: Complex64,
    /// Relative change of `chi` when the probe is halved.
    pub linearity_defect: f64,
    pub warnings: Vec<Warning>,
}

const LINEARITY_REL_TOL: f64 = 1e-4;

/// Reduced susceptibility `2 gamma_ab rho_ab / omega_p` from the full
/// steady state at the given probe detuning.
///
/// A second solve at half the probe power guards the first-order regime:
/// if the result moves by more than 1e-4 relative, a nonlinearity warning
/// is attached.
pub fn numeric_susceptibility(params: &SystemParams, delta_p: f64) -> Result<NumericSusceptibility> {
    let chi = chi_at_probe(params, delta_p, params.omega_p)?;
    let chi_half = chi_at_probe(params, delta_p, 0.5 * params.omega_p)?;
    let defect = (chi - chi_half).norm() / chi.norm().max(1e-300);
    let mut warnings = Vec::new();
    if defect >= LINEARITY_REL_TOL {
        warnings.push(Warning::new(
            "nonlinear-probe",
            format!("halving omega_p moved chi by {defect:.2e} relative"),
        ));
    }
    Ok(NumericSusceptibility {
        chi,
        linearity_defect: defect,
        warnings,
    })
}

fn chi_at_probe(params: &SystemParams, delta_p: f64, omega_p: f64) -> Result<Complex64> {
    debug_assert!(omega_p > 0.0, "probe must be on for a susceptibility");
    let mut p = params.clone();
    p.delta_p = delta_p;
    p.omega_p = omega_p;
    let rho = steady_state_of(&p)?;
    let gamma_ab = p.gamma_ab();
    Ok(2.0 * gamma_ab * rho.get(Level::A, Level::B) / omega_p)
}
