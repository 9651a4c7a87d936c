//! Classical statistical mechanics of degenerate identical particles and its
//! relation to exclusion statistics.
//!
//! For a degenerate level the partition function is just the phase-space
//! volume in units of h^N times a Boltzmann factor, so the entropy is
//! S = ln(V_N/h^N) and the equation of state follows from d ln V_N / dA.
//! Exclusion statistics counts states as W = C(G + (1−g)(N−1), N); its
//! entropy and equation of state reproduce the classical expressions in the
//! double limit h → 0, g → ∞ with g·h^D → α.

use alloc::vec::Vec;
use crate::error::{Error, Result};
use crate::fmath;
use crate::special;

/// State of a degenerate-level classical gas.
///
/// `a` is the single-particle phase-space volume, `alpha` the classical
/// statistics parameter (volume excluded per particle), both in absolute
/// units; `energy` is the state-independent total energy E_N.
#[derive(Debug, Clone, Copy)]
pub struct ThermoState {
    pub n: f64,
    pub a: f64,
    pub alpha: f64,
    pub beta: f64,
    pub energy: f64,
    pub hbar: f64,
}

impl ThermoState {
    pub fn new(n: f64, a: f64, alpha: f64, beta: f64, energy: f64, hbar: f64) -> Result<Self> {
        if !(n > 0.0 && a > 0.0 && beta > 0.0 && hbar > 0.0) || !(alpha >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "state",
                message: "need n, a, beta, hbar > 0 and alpha >= 0",
            });
        }
        Ok(Self {
            n,
            a,
            alpha,
            beta,
            energy,
            hbar,
        })
    }

    pub fn h(&self) -> f64 {
        2.0 * core::f64::consts::PI * self.hbar
    }

    /// Phase-space density ρ = N/A.
    pub fn density(&self) -> f64 {
        self.n / self.a
    }

    /// Maximum density 1/α at which the pressure diverges.
    pub fn max_density(&self) -> f64 {
        if self.alpha == 0.0 {
            f64::INFINITY
        } else {
            1.0 / self.alpha
        }
    }

    fn check_compressible(&self) -> Result<()> {
        let rho = self.density();
        if self.alpha * rho >= 1.0 {
            return Err(Error::Incompressible {
                density: rho,
                max_density: self.max_density(),
            });
        }
        Ok(())
    }
}

/// Free energy, entropy, and βP of a degenerate-level gas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoReport {
    pub free_energy: f64,
    pub entropy: f64,
    pub beta_pressure: f64,
}

/// Thermodynamic-limit forms (N and N−1 identified):
/// S = N ln(1 − αρ) + N ln(A/h) − N ln N + N and βP = ρ/(1 − αρ).
pub fn classical_thermo(state: &ThermoState) -> Result<ThermoReport> {
    state.check_compressible()?;
    let rho = state.density();
    let filling = 1.0 - state.alpha * rho;
    let entropy = state.n * fmath::ln(filling) + state.n * fmath::ln(state.a / state.h())
        - state.n * fmath::ln(state.n)
        + state.n;
    Ok(ThermoReport {
        free_energy: state.energy - entropy / state.beta,
        entropy,
        beta_pressure: rho / filling,
    })
}

/// Exact finite-N forms from V_N = (A − α(N−1))^N / N!:
/// S = N ln((A − α(N−1))/h) − ln N! and βP = N/(A − α(N−1)).
pub fn classical_thermo_exact(state: &ThermoState) -> Result<ThermoReport> {
    let base = state.a - state.alpha * (state.n - 1.0);
    if base <= 0.0 {
        return Err(Error::Incompressible {
            density: state.density(),
            max_density: state.max_density(),
        });
    }
    let entropy = state.n * fmath::ln(base / state.h()) - fmath::ln_gamma(state.n + 1.0);
    Ok(ThermoReport {
        free_energy: state.energy - entropy / state.beta,
        entropy,
        beta_pressure: state.n / base,
    })
}

/// Exclusion-statistics state count, kept in log form:
/// W = (G + (1−g)(N−1))! / (N! (G − gN − (1−g))!) = C(G + (1−g)(N−1), N).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExclusionWeight {
    pub ln_value: f64,
}

impl ExclusionWeight {
    /// Plain value; errors when it no longer fits an f64.
    pub fn value(&self) -> Result<f64> {
        if self.ln_value > 700.0 {
            return Err(Error::RangeOverflow {
                ln_value: self.ln_value,
            });
        }
        Ok(fmath::exp(self.ln_value))
    }
}

/// Number of N-particle states among G single-particle states with exclusion
/// parameter g (g = 0 bosons, g = 1 fermions).
pub fn exclusion_weight(states: u64, n: u64, g: f64) -> Result<ExclusionWeight> {
    if states == 0 {
        return Err(Error::InvalidParameter {
            name: "states",
            message: "need at least one single-particle state",
        });
    }
    let gf = states as f64;
    let nf = n as f64;
    // Both gamma arguments must stay positive: the lower one is
    // G − gN − (1−g) + 1 = G − g(N−1).
    let remaining = gf - g * (nf - 1.0);
    if remaining <= 0.0 {
        return Err(Error::OverExclusion {
            g,
            states: gf,
            n: nf,
        });
    }
    let upper = gf + (1.0 - g) * (nf - 1.0);
    Ok(ExclusionWeight {
        ln_value: special::ln_binomial(upper, nf),
    })
}

/// Exact integer count for the boson/fermion endpoints.
pub fn exclusion_weight_exact(states: u64, n: u64, g: u64) -> Result<u128> {
    match g {
        0 => Ok(special::binomial_u128(states + n - 1, n)),
        1 => {
            if n > states {
                return Err(Error::OverExclusion {
                    g: 1.0,
                    states: states as f64,
                    n: n as f64,
                });
            }
            Ok(special::binomial_u128(states, n))
        }
        _ => Err(Error::InvalidParameter {
            name: "g",
            message: "exact counting is implemented for g = 0 and g = 1",
        }),
    }
}

/// One energy level of an exclusion gas: `degeneracy` states with average
/// occupation `occupation` per state.
#[derive(Debug, Clone, Copy)]
pub struct ExclusionLevel {
    pub degeneracy: f64,
    pub occupation: f64,
}

/// Entropy of exclusion-statistics particles distributed over levels:
/// S = Σ_k D_k { [1+(1−g)n] ln[1+(1−g)n] − (1−gn) ln(1−gn) − n ln n }.
///
/// This is the Stirling form of ln W applied per level; it vanishes for an
/// empty level and for a filled fermion level.
pub fn exclusion_entropy(levels: &[ExclusionLevel], g: f64) -> Result<f64> {
    let mut total = 0.0;
    for level in levels {
        total += level.degeneracy * per_state_exclusion_entropy(level.occupation, g)?;
    }
    Ok(total)
}

fn per_state_exclusion_entropy(n: f64, g: f64) -> Result<f64> {
    let max = if g > 0.0 { 1.0 / g } else { f64::INFINITY };
    if !(n >= 0.0) || n > max {
        return Err(Error::OccupationOutOfRange { occupation: n, max });
    }
    let xlnx = |x: f64| if x <= 0.0 { 0.0 } else { x * fmath::ln(x) };
    Ok(xlnx(1.0 + (1.0 - g) * n) - xlnx(1.0 - g * n) - xlnx(n))
}

/// Classical-limit entropy over phase-space cells:
/// S = Σ_k v_k [ρ_k ln(1 − αρ_k) − ρ_k ln(ρ_k h^D) + ρ_k], with v_k = D_k h^D
/// the cell volumes. With one fully degenerate level of volume A this is the
/// thermodynamic-limit entropy again.
pub fn classical_limit_entropy(
    densities: &[f64],
    cell_volumes: &[f64],
    alpha: f64,
    h: f64,
    dim: u32,
) -> Result<f64> {
    if densities.len() != cell_volumes.len() {
        return Err(Error::InvalidParameter {
            name: "cell_volumes",
            message: "need one cell volume per density",
        });
    }
    let h_pow = fmath::powi(h, dim as i32);
    let mut total = 0.0;
    for (&rho, &volume) in densities.iter().zip(cell_volumes) {
        if !(rho >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "densities",
                message: "densities must be nonnegative",
            });
        }
        if alpha * rho >= 1.0 {
            return Err(Error::Incompressible {
                density: rho,
                max_density: 1.0 / alpha,
            });
        }
        if rho > 0.0 {
            total += volume * (rho * fmath::ln(1.0 - alpha * rho) - rho * fmath::ln(rho * h_pow) + rho);
        }
    }
    Ok(total)
}

/// Equation of state of same-energy exclusion particles:
/// βP = (G/V) ln(1 + n/(1 − gn)).
pub fn exclusion_eos(states: f64, volume: f64, occupation: f64, g: f64) -> Result<f64> {
    if !(volume > 0.0 && states > 0.0) {
        return Err(Error::InvalidParameter {
            name: "volume",
            message: "need positive state count and volume",
        });
    }
    if !(occupation >= 0.0) || g * occupation >= 1.0 {
        return Err(Error::Incompressible {
            density: occupation,
            max_density: if g > 0.0 { 1.0 / g } else { f64::INFINITY },
        });
    }
    Ok(states / volume * fmath::ln_1p(occupation / (1.0 - g * occupation)))
}

/// One row of the classical double-limit sweep at a given h.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub h: f64,
    pub g: f64,
    /// Per-state quantum entropy at occupation n = ρh.
    pub s_quantum: f64,
    /// Per-state classical-limit entropy.
    pub s_classical: f64,
    /// |s_quantum − s_classical| / |s_classical|.
    pub entropy_gap: f64,
    pub beta_p_quantum: f64,
    pub beta_p_classical: f64,
    /// |βP_quantum − βP_classical| / βP_classical.
    pub beta_p_gap: f64,
}

/// Convergence table of the double limit h → 0, g = α/h → ∞.
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    /// Mean log2 decay rate of the entropy gap per h-halving.
    pub entropy_order: f64,
    /// Same for the βP gap.
    pub pressure_order: f64,
}

impl SweepTable {
    /// Pressure-gap order measured on the deepest pair of the sweep, where
    /// subleading corrections are smallest.
    pub fn tail_pressure_order(&self) -> f64 {
        let k = self.rows.len();
        if k < 2 {
            return f64::NAN;
        }
        let (a, b) = (&self.rows[k - 2], &self.rows[k - 1]);
        fmath::log2(a.beta_p_gap / b.beta_p_gap) / fmath::log2(a.h / b.h)
    }
}

/// Evaluate quantum (exclusion) and classical entropy and equation of state
/// per state along a decreasing h sequence, holding α and ρ fixed and setting
/// g = α/h, n = ρh.
pub fn double_limit_sweep(alpha: f64, rho: f64, h_sequence: &[f64]) -> Result<SweepTable> {
    if h_sequence.len() < 2 {
        return Err(Error::InvalidParameter {
            name: "h_sequence",
            message: "need at least two h values",
        });
    }
    if !(rho > 0.0) || !(alpha >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "rho",
            message: "need rho > 0 and alpha >= 0",
        });
    }
    if alpha * rho >= 1.0 {
        return Err(Error::Incompressible {
            density: rho,
            max_density: 1.0 / alpha,
        });
    }
    let mut rows = Vec::with_capacity(h_sequence.len());
    for &h in h_sequence {
        if !(h > 0.0) {
            return Err(Error::InvalidParameter {
                name: "h_sequence",
                message: "h values must be positive",
            });
        }
        let g = alpha / h;
        let n = rho * h;
        let s_quantum = per_state_exclusion_entropy(n, g)?;
        let s_classical =
            h * (rho * fmath::ln(1.0 - alpha * rho) - rho * fmath::ln(rho * h) + rho);
        let beta_p_quantum = exclusion_eos(1.0, h, n, g)?;
        let beta_p_classical = rho / (1.0 - alpha * rho);
        rows.push(SweepRow {
            h,
            g,
            s_quantum,
            s_classical,
            entropy_gap: (s_quantum - s_classical).abs() / s_classical.abs(),
            beta_p_quantum,
            beta_p_classical,
            beta_p_gap: (beta_p_quantum - beta_p_classical).abs() / beta_p_classical,
        });
    }
    let order = |gap: &dyn Fn(&SweepRow) -> f64| -> f64 {
        let mut acc = 0.0;
        let mut count = 0;
        for pair in rows.windows(2) {
            let (g0, g1) = (gap(&pair[0]), gap(&pair[1]));
            let (h0, h1) = (pair[0].h, pair[1].h);
            if g0 > 0.0 && g1 > 0.0 && h0 != h1 {
                acc += fmath::log2(g0 / g1) / fmath::log2(h0 / h1);
                count += 1;
            }
        }
        if count == 0 {
            f64::INFINITY
        } else {
            acc / count as f64
        }
    };
    let entropy_order = order(&|row: &SweepRow| row.entropy_gap);
    let pressure_order = order(&|row: &SweepRow| row.beta_p_gap);
    Ok(SweepTable {
        rows,
        entropy_order,
        pressure_order,
    })
}
