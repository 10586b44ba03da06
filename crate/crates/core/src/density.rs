//! Density operators and the measures built on them.
//!
//! A [`DensityMatrix`] is Hermitian with unit trace. Positivity is not
//! required: partial transposes are stored in the same type.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::state::{BlochVector, Ket, QubitSplit};
use crate::C64;

/// Hermiticity and trace tolerance accepted by [`DensityMatrix::new`].
pub const DENSITY_TOL: f64 = 1e-9;

/// Negative eigenvalues down to this size are treated as rounding noise.
pub const PSD_CLIP: f64 = 1e-12;

/// Hermitian, trace-one operator on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    m: Matrix,
}

/// Which factor of a two-qubit operator to transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

impl DensityMatrix {
    /// Validates dimension, Hermiticity and trace.
    pub fn new(m: Matrix) -> Result<Self> {
        let dim = m.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        let defect = m.hermiticity_defect();
        if defect > DENSITY_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::BadTrace(tr.re));
        }
        Ok(Self {
            n_qubits: dim.trailing_zeros() as usize,
            m,
        })
    }

    pub(crate) fn from_parts_unchecked(n_qubits: usize, m: Matrix) -> Self {
        debug_assert_eq!(m.dim(), 1 << n_qubits);
        Self { n_qubits, m }
    }

    /// Maximally mixed state `1/2^n`.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        Self {
            n_qubits,
            m: Matrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    /// Diagonal state; `diag` is validated like any other input.
    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(Matrix::from_diagonal(diag))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.m.max_abs_diff(&other.m)
    }

    /// Traces out every qubit not in `keep`; output qubits follow `keep` order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let split = QubitSplit::new(self.n_qubits, keep)?;
        let k = keep.len();
        let kd = 1usize << k;
        let mut out = Matrix::zeros(kd);
        for rest in 0..(1usize << (self.n_qubits - k)) {
            let base = split.scatter_rest(rest);
            for a in 0..kd {
                let ia = base | split.scatter_keep(a);
                for b in 0..kd {
                    out[(a, b)] += self.m[(ia, base | split.scatter_keep(b))];
                }
            }
        }
        Ok(Self::from_parts_unchecked(k, out))
    }

    /// Partial transpose of a two-qubit operator.
    pub fn partial_transpose(&self, subsystem: Subsystem) -> Result<DensityMatrix> {
        if self.n_qubits != 2 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: self.dim(),
            });
        }
        let mut out = Matrix::zeros(4);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        // ⟨ab|ρ|cd⟩ moves to the transposed slot.
                        let (i, j) = match subsystem {
                            Subsystem::First => (2 * c + b, 2 * a + d),
                            Subsystem::Second => (2 * a + d, 2 * c + b),
                        };
                        out[(i, j)] = self.m[(2 * a + b, 2 * c + d)];
                    }
                }
            }
        }
        Ok(Self::from_parts_unchecked(2, out))
    }

    /// Ascending real spectrum.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::eigvalsh(&self.m)
    }

    /// Bloch vector `(2 Re ρ01, 2 Im ρ10, ρ00 − ρ11)` of a single qubit.
    pub fn bloch_vector(&self) -> Result<BlochVector> {
        if self.n_qubits != 1 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim(),
            });
        }
        Ok(BlochVector {
            x: 2.0 * self.m[(0, 1)].re,
            y: 2.0 * self.m[(1, 0)].im,
            z: self.m[(0, 0)].re - self.m[(1, 1)].re,
        })
    }

    /// Computational-basis transpose (complex conjugate for Hermitian ρ).
    pub fn transpose(&self) -> DensityMatrix {
        Self::from_parts_unchecked(self.n_qubits, self.m.transpose())
    }

    /// Convex combination `w·self + (1−w)·other`.
    pub fn mix(&self, other: &DensityMatrix, w: f64) -> Result<DensityMatrix> {
        self.check_same_dim(other)?;
        Ok(Self::from_parts_unchecked(
            self.n_qubits,
            &self.m.scale(w) + &other.m.scale(1.0 - w),
        ))
    }

    /// `Tr[(ρ − σ)²]` under a square root.
    pub fn hs_distance(&self, other: &DensityMatrix) -> Result<f64> {
        self.check_same_dim(other)?;
        let d = &self.m - &other.m;
        Ok((&d * &d).trace().re.max(0.0).sqrt())
    }

    /// `½ Σ |eig(ρ − σ)|`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        self.check_same_dim(other)?;
        let ev = linalg::eigvalsh(&(&self.m - &other.m))?;
        Ok(0.5 * ev.iter().map(|x| x.abs()).sum::<f64>())
    }

    /// `(Tr √(√ρ σ √ρ))²`. Both operands must be positive semidefinite.
    pub fn bures_fidelity(&self, other: &DensityMatrix) -> Result<f64> {
        self.check_same_dim(other)?;
        let sqrt_rho = psd_sqrt(&self.m)?;
        // Rejects a non-positive σ before it is sandwiched.
        psd_sqrt(&other.m)?;
        let inner = &(&sqrt_rho * &other.m) * &sqrt_rho;
        let ev = linalg::eigvalsh(&inner)?;
        let s: f64 = ev
            .iter()
            .map(|&x| clip(x).map(f64::sqrt))
            .sum::<Result<f64>>()?;
        Ok(s * s)
    }

    fn check_same_dim(&self, other: &DensityMatrix) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }
}

fn clip(x: f64) -> Result<f64> {
    if x >= 0.0 {
        Ok(x)
    } else if x >= -PSD_CLIP {
        Ok(0.0)
    } else {
        Err(Error::NotPositive(x))
    }
}

fn psd_sqrt(m: &Matrix) -> Result<Matrix> {
    let e = linalg::eigh(m)?;
    for &x in &e.values {
        clip(x)?;
    }
    Ok(e.map_spectrum(|x| x.max(0.0).sqrt()))
}

/// `⟨ψ|ρ|ψ⟩`.
pub fn fidelity_pure(psi: &Ket, rho: &DensityMatrix) -> Result<f64> {
    if psi.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: psi.dim(),
        });
    }
    Ok(rho.matrix().expectation(psi.amplitudes()).re)
}

/// Free-function form of [`DensityMatrix::partial_trace`].
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    rho.partial_trace(keep)
}

/// Free-function form of [`DensityMatrix::partial_transpose`].
pub fn partial_transpose(rho: &DensityMatrix, subsystem: Subsystem) -> Result<DensityMatrix> {
    rho.partial_transpose(subsystem)
}

/// Ascending eigenvalues of any Hermitian matrix.
pub fn hermitian_eigenvalues(h: &Matrix) -> Result<Vec<f64>> {
    linalg::eigvalsh(h)
}

pub fn bures_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.bures_fidelity(sigma)
}

pub fn hs_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.hs_distance(sigma)
}

pub fn bloch_vector(rho: &DensityMatrix) -> Result<BlochVector> {
    rho.bloch_vector()
}
