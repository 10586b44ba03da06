//! Closed-form fidelities and partial-transpose spectra, and the simulations
//! they are checked against.

use crate::cloners::{self, Lambda};
use crate::density::{fidelity_pure, DensityMatrix, Subsystem};
use crate::error::{Error, Result};
use crate::network::{angle_grid, copy_circuit, preparation_ket};
use crate::state::{Equator, EquatorialState};
use crate::symmetric::binomial_f;

/// An eigenvalue above this counts as nonnegative in the PPT test.
pub const PPT_TOL: f64 = -1e-10;

/// Largest output register simulated by full expansion.
pub const MAX_SIM_COPIES: usize = 12;

/// Largest output register for closed forms.
pub const MAX_CLOSED_COPIES: usize = 50;

/// `η(1,M) = Σ_j α_j α_{M−1−j} C(M−1,j) / √(C(M,j) C(M,j+1))`.
pub fn eta_1m(alphas: &[f64], m: usize) -> Result<f64> {
    if alphas.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: alphas.len(),
        });
    }
    if m < 2 {
        return Err(Error::OutOfRange {
            what: "output copies M",
            value: m,
            range: "M ≥ 2".into(),
        });
    }
    let norm: f64 = alphas.iter().map(|a| a * a).sum();
    if (norm - 1.0).abs() > cloners::COEFF_TOL {
        return Err(Error::Unnormalized(norm));
    }
    Ok((0..m)
        .map(|j| alphas[j] * alphas[m - 1 - j] * eta_weight(m, j))
        .sum())
}

/// `C(M−1,j) / √(C(M,j) C(M,j+1))`.
pub(crate) fn eta_weight(m: usize, j: usize) -> f64 {
    binomial_f(m - 1, j) / (binomial_f(m, j) * binomial_f(m, j + 1)).sqrt()
}

/// Optimal one-to-`M` fidelity: `½ + √(M(M+2))/(4M)` for even `M`,
/// `½ + (M+1)/(4M)` for odd `M`.
pub fn fidelity_closed_1tom(m: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::OutOfRange {
            what: "output copies M",
            value: m,
            range: "M ≥ 2".into(),
        });
    }
    let mf = m as f64;
    Ok(if m.is_multiple_of(2) {
        0.5 + (mf * (mf + 2.0)).sqrt() / (4.0 * mf)
    } else {
        0.5 + (mf + 1.0) / (4.0 * mf)
    })
}

/// Fidelity of the `N → M` maps built by [`cloners::n_to_m_map`].
pub fn fidelity_closed_ntom(n: usize, m: usize) -> Result<f64> {
    if n == 0 || m <= n {
        return Err(Error::InvalidParameter(format!(
            "closed form needs M > N ≥ 1, got N={n}, M={m}"
        )));
    }
    let nf = n as f64;
    let gap = m - n;
    let l = (gap / 2) as f64;
    let sum: f64 = (0..n)
        .map(|j| {
            let jf = j as f64;
            let weight = (binomial_f(n, j) * binomial_f(n, j + 1)).sqrt();
            if gap.is_multiple_of(2) {
                weight * ((l + jf + 1.0) * (nf + l - jf)).sqrt() / (nf + 2.0 * l)
            } else {
                weight
                    * (((l + jf + 1.0) * (nf + l - jf + 1.0)).sqrt()
                        + ((l + jf + 2.0) * (nf + l - jf)).sqrt())
                    / (2.0 * (nf + 2.0 * l + 1.0))
            }
        })
        .sum();
    Ok(0.5 + sum / 2f64.powi(n as i32))
}

/// Limit of [`fidelity_closed_ntom`] as the number of copies grows:
/// `½ + 2^{−(N+1)} Σ_j √(C(N,j) C(N,j+1))`.
pub fn fidelity_asymptotic(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let sum: f64 = (0..n)
        .map(|j| (binomial_f(n, j) * binomial_f(n, j + 1)).sqrt())
        .sum();
    Ok(0.5 + sum / 2f64.powi(n as i32 + 1))
}

/// Closed form against simulation for one `(N, M)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityReport {
    pub n: usize,
    pub m: usize,
    pub closed_form: f64,
    /// Mean single-copy fidelity over the phase grid.
    pub simulated: f64,
    pub abs_error: f64,
    /// Max minus min of the simulated fidelity over the grid.
    pub grid_spread: f64,
    /// Largest trace distance between any copy and copy 0 (first grid point).
    pub copy_asymmetry: f64,
}

/// Simulates the `N → M` map on a grid of x–y inputs by full expansion and
/// partial trace, then compares with the closed form.
pub fn simulate_fidelity(n: usize, m: usize, grid: usize) -> Result<FidelityReport> {
    if m > MAX_SIM_COPIES {
        return Err(Error::OutOfRange {
            what: "simulated copies M",
            value: m,
            range: format!("M ≤ {MAX_SIM_COPIES}"),
        });
    }
    if grid == 0 {
        return Err(Error::InvalidParameter("empty phase grid".into()));
    }
    let closed_form = fidelity_closed_ntom(n, m)?;
    let map = cloners::n_to_m_map(n, m)?;
    let mut sum = 0.0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut copy_asymmetry = 0.0f64;
    for (i, phi) in angle_grid(grid).enumerate() {
        let state = EquatorialState::xy(phi);
        let ket = map.clone_state(&state)?.to_ket()?;
        let first = ket.reduced_density(&[0])?;
        if i == 0 {
            for c in 1..m {
                let other = ket.reduced_density(&[c])?;
                copy_asymmetry = copy_asymmetry.max(first.max_abs_diff(&other));
            }
        }
        let f = fidelity_pure(&state.ket(), &first)?;
        sum += f;
        lo = lo.min(f);
        hi = hi.max(f);
    }
    let simulated = sum / grid as f64;
    Ok(FidelityReport {
        n,
        m,
        closed_form,
        simulated,
        abs_error: (closed_form - simulated).abs(),
        grid_spread: hi - lo,
        copy_asymmetry,
    })
}

/// Sorted spectrum of the partially transposed two-copy state.
#[derive(Debug, Clone, PartialEq)]
pub struct PtSpectrum {
    pub lambda: f64,
    pub eigenvalues: [f64; 4],
    pub is_ppt: bool,
}

impl PtSpectrum {
    fn from_values(lambda: f64, mut ev: [f64; 4]) -> Self {
        ev.sort_by(f64::total_cmp);
        Self {
            lambda,
            eigenvalues: ev,
            is_ppt: ev[0] >= PPT_TOL,
        }
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// The four eigenvalues `{½(1−6λ+λ²), ½(1+λ)², 1+λ² ± ½(1−λ)√(5+6λ+5λ²)}`
/// divided by `3 − 2λ + 3λ²`.
pub fn pt_spectrum_closed(lambda: Lambda) -> PtSpectrum {
    let l = lambda.value();
    let d = lambda.denominator();
    let root = 0.5 * (1.0 - l) * (5.0 + 6.0 * l + 5.0 * l * l).sqrt();
    PtSpectrum::from_values(
        l,
        [
            0.5 * (1.0 - 6.0 * l + l * l) / d,
            0.5 * (1.0 + l) * (1.0 + l) / d,
            (1.0 + l * l + root) / d,
            (1.0 + l * l - root) / d,
        ],
    )
}

/// Partial transpose of the two copies produced from an x–z input `θ`.
pub fn two_copy_partial_transpose(lambda: Lambda, theta: f64) -> Result<DensityMatrix> {
    let out = cloners::clone_1to2_xz(lambda, &EquatorialState::xz(theta))?;
    out.reduced_density(&[0, 1])?
        .partial_transpose(Subsystem::Second)
}

/// Spectrum of [`two_copy_partial_transpose`], from the eigensolver.
pub fn pt_spectrum_numeric(lambda: Lambda, theta: f64) -> Result<PtSpectrum> {
    let ev = two_copy_partial_transpose(lambda, theta)?.eigenvalues()?;
    Ok(PtSpectrum::from_values(
        lambda.value(),
        [ev[0], ev[1], ev[2], ev[3]],
    ))
}

/// One grid point of a separability sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub spectrum: PtSpectrum,
    /// Whether `[λ_i, λ_{i+1}]` contains a PPT point (always false on the
    /// last grid point).
    pub cell_ppt: bool,
}

/// Result of [`separability_sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilitySweep {
    pub min: f64,
    pub max: f64,
    pub step: f64,
    pub rows: Vec<SweepRow>,
}

impl SeparabilitySweep {
    /// Cells `[λ_i, λ_{i+1}]` that contain a PPT point.
    pub fn ppt_cells(&self) -> Vec<(f64, f64)> {
        self.rows
            .windows(2)
            .filter(|w| w[0].cell_ppt)
            .map(|w| (w[0].spectrum.lambda, w[1].spectrum.lambda))
            .collect()
    }

    /// Grid points that are PPT themselves.
    pub fn ppt_points(&self) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| r.spectrum.is_ppt)
            .map(|r| r.spectrum.lambda)
            .collect()
    }
}

/// Evaluates the closed-form spectrum on `steps` evenly spaced points of
/// `[min, max]` (both inside `(−1, 1)`) and locates every cell that holds a
/// PPT point by maximizing the smallest eigenvalue within the cell.
pub fn separability_sweep(min: f64, max: f64, steps: usize) -> Result<SeparabilitySweep> {
    if steps < 2 {
        return Err(Error::InvalidParameter(
            "sweep needs at least 2 points".into(),
        ));
    }
    if !(min.is_finite() && max.is_finite()) || min >= max || min <= -1.0 || max >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "sweep range [{min}, {max}] must lie strictly inside (-1, 1)"
        )));
    }
    let step = (max - min) / (steps - 1) as f64;
    let at = |i: usize| {
        if i == steps - 1 {
            max
        } else {
            min + step * i as f64
        }
    };
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let lambda = at(i);
        let spectrum = pt_spectrum_closed(Lambda::new(lambda)?);
        let cell_ppt = i + 1 < steps && max_min_eigenvalue(lambda, at(i + 1)) >= PPT_TOL;
        rows.push(SweepRow { spectrum, cell_ppt });
    }
    Ok(SeparabilitySweep {
        min,
        max,
        step,
        rows,
    })
}

fn min_eigenvalue(lambda: f64) -> f64 {
    Lambda::new(lambda).map_or(f64::NEG_INFINITY, |l| pt_spectrum_closed(l).min())
}

/// Maximum of the smallest closed-form eigenvalue over `[a, b]`.
///
/// Each eigenvalue is smooth and monotone across a small cell, so their
/// minimum is unimodal there and golden-section search finds the peak.
fn max_min_eigenvalue(a: f64, b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut best = min_eigenvalue(a).max(min_eigenvalue(b));
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = min_eigenvalue(x1);
    let mut f2 = min_eigenvalue(x2);
    for _ in 0..200 {
        if hi - lo <= f64::EPSILON * hi.abs().max(lo.abs()).max(1e-300) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = min_eigenvalue(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = min_eigenvalue(x1);
        }
        best = best.max(f1).max(f2);
    }
    best
}

/// Deviations of simulated reduced states from the closed forms
/// `ρ_copy = [2(1−λ²)ρ_in + ½(1−2λ+5λ²)·1] / (3−2λ+3λ²)` and
/// `ρ_{a₁} = [(1+λ)² ρ_inᵀ + (1−λ)²·1] / (3−2λ+3λ²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedFormsCheck {
    pub copy_deviation: f64,
    pub first_qubit_deviation: f64,
}

impl ReducedFormsCheck {
    pub fn max(&self) -> f64 {
        self.copy_deviation.max(self.first_qubit_deviation)
    }
}

/// Closed-form reduced state of each copy.
pub fn copy_state_closed(lambda: Lambda, input: &EquatorialState) -> DensityMatrix {
    let rho = input.ket().density();
    let shrink = lambda.copy_shrink();
    rho.mix(&DensityMatrix::maximally_mixed(1), shrink)
        .expect("single-qubit operands")
}

/// Closed-form reduced state left on the input qubit of the network.
pub fn first_qubit_state_closed(lambda: Lambda, input: &EquatorialState) -> DensityMatrix {
    let l = lambda.value();
    let w = (1.0 + l) * (1.0 + l) / lambda.denominator();
    input
        .ket()
        .density()
        .transpose()
        .mix(&DensityMatrix::maximally_mixed(1), w)
        .expect("single-qubit operands")
}

/// Runs the copier with the `λ` preparation ket and measures the reduced
/// states of `a₁`, `a₂`, `a₃` against the closed forms.
pub fn reduced_forms_check(lambda: Lambda, input: &EquatorialState) -> Result<ReducedFormsCheck> {
    let prep = preparation_ket(input.equator(), lambda);
    let out = copy_circuit(&input.ket(), &prep)?;
    let copy = copy_state_closed(lambda, input);
    let first = first_qubit_state_closed(lambda, input);
    let copy_deviation = out
        .reduced_density(&[1])?
        .max_abs_diff(&copy)
        .max(out.reduced_density(&[2])?.max_abs_diff(&copy));
    let first_qubit_deviation = out.reduced_density(&[0])?.max_abs_diff(&first);
    Ok(ReducedFormsCheck {
        copy_deviation,
        first_qubit_deviation,
    })
}

/// Reduced states of the three output qubits of a triplicator.
pub fn triplicator_reductions(
    equator: Equator,
    input: &EquatorialState,
) -> Result<[DensityMatrix; 3]> {
    let out = cloners::triplicate(equator, input)?;
    Ok([
        out.reduced_density(&[0])?,
        out.reduced_density(&[1])?,
        out.reduced_density(&[2])?,
    ])
}
