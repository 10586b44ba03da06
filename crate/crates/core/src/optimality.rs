//! Optimality of the one-to-`M` cloners, certified two independent ways: the
//! top eigenvalue of the Bloch-invariance matrix `A`, and the maximum of the
//! shrink factor `η` as a quadratic form in the map coefficients.

use crate::analysis::eta_weight;
use crate::error::{Error, Result};
use crate::linalg::{eigh, eigvalsh, Matrix};

/// Eigenvalues closer than this to the top one count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::OutOfRange {
            what: "output copies M",
            value: m,
            range: "M ≥ 2".into(),
        });
    }
    Ok(())
}

/// `√((M−k)(k+1)) / M`, the coupling between `(0,k)` and `(1,k+1)` in units of
/// the diagonal.
pub fn coupling(m: usize, k: usize) -> f64 {
    (((m - k) * (k + 1)) as f64).sqrt() / m as f64
}

/// The real symmetric matrix on pairs `(j, k)`, `j ∈ {0,1}`, `k ∈ 0..=M`.
///
/// Row `(j, k)` sits at index `j·(M+1) + k`. The diagonal is `1/4` and the
/// only couplings join `(0,k)` with `(1,k+1)`, so `(1,0)` and `(0,M)` are
/// left uncoupled.
#[derive(Debug, Clone, PartialEq)]
pub struct AMatrix {
    m: usize,
    matrix: Matrix,
}

impl AMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn index(&self, j: usize, k: usize) -> usize {
        j * (self.m + 1) + k
    }

    /// Entry between `(j, k)` and `(j2, k2)`.
    pub fn entry(&self, (j, k): (usize, usize), (j2, k2): (usize, usize)) -> f64 {
        self.matrix[(self.index(j, k), self.index(j2, k2))].re
    }

    /// Ascending spectrum.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigvalsh(&self.matrix)
    }
}

pub fn build_a(m: usize) -> Result<AMatrix> {
    check_m(m)?;
    let dim = 2 * (m + 1);
    let mut matrix = Matrix::zeros(dim);
    for i in 0..dim {
        matrix[(i, i)] = 0.25.into();
    }
    for k in 0..m {
        let (a, b) = (k, m + 1 + k + 1);
        let v = (coupling(m, k) / 4.0).into();
        matrix[(a, b)] = v;
        matrix[(b, a)] = v;
    }
    Ok(AMatrix { m, matrix })
}

/// Eigenvalues `((1−c)/4, (1+c)/4)` of the 2×2 block that couples `(0,k)`
/// with `(1,k+1)`.
pub fn block_eigenvalues(m: usize, k: usize) -> Result<(f64, f64)> {
    check_m(m)?;
    if k >= m {
        return Err(Error::OutOfRange {
            what: "block index k",
            value: k,
            range: format!("0..={}", m - 1),
        });
    }
    let c = coupling(m, k);
    Ok(((1.0 - c) / 4.0, (1.0 + c) / 4.0))
}

/// Block index with the largest coupling: `(M−1)/2` for odd `M`, and `M/2 − 1`
/// (tied with `M/2`) for even `M`.
pub fn maximizing_block(m: usize) -> usize {
    (m - 1) / 2
}

/// `F = 2 λ_max(A)`, from the generic eigensolver.
pub fn optimal_fidelity_via_a(m: usize) -> Result<f64> {
    let ev = build_a(m)?.eigenvalues()?;
    Ok(2.0 * ev[ev.len() - 1])
}

/// Symmetric `G` with `η(α) = αᵀ G α` for the one-to-`M` shrink factor.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaGram {
    m: usize,
    matrix: Matrix,
}

impl EtaGram {
    pub fn new(m: usize) -> Result<Self> {
        check_m(m)?;
        let mut matrix = Matrix::zeros(m);
        for j in 0..m {
            let half = 0.5 * eta_weight(m, j);
            matrix[(j, m - 1 - j)] += half;
            matrix[(m - 1 - j, j)] += half;
        }
        Ok(Self { m, matrix })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `αᵀ G α` (no normalization check).
    pub fn eta(&self, alphas: &[f64]) -> Result<f64> {
        if alphas.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: alphas.len(),
            });
        }
        let mut acc = 0.0;
        for (i, a) in alphas.iter().enumerate() {
            for (j, b) in alphas.iter().enumerate() {
                acc += a * self.matrix[(i, j)].re * b;
            }
        }
        Ok(acc)
    }
}

/// Result of [`maximize_eta`].
#[derive(Debug, Clone, PartialEq)]
pub struct EtaMaximum {
    pub eta_max: f64,
    /// One unit vector attaining `eta_max`, with a nonnegative largest entry.
    pub argmax: Vec<f64>,
    /// Dimension of the top eigenspace.
    pub degeneracy: usize,
}

impl EtaMaximum {
    pub fn fidelity(&self) -> f64 {
        (1.0 + self.eta_max) / 2.0
    }
}

/// Maximizes `η` over unit coefficient vectors as the top eigenpair of the
/// Gram matrix.
pub fn maximize_eta(m: usize) -> Result<EtaMaximum> {
    let gram = EtaGram::new(m)?;
    let eig = eigh(gram.matrix())?;
    let top = eig.values.len() - 1;
    let eta_max = eig.values[top];
    let degeneracy = eig
        .values
        .iter()
        .filter(|v| (eta_max - **v).abs() < DEGENERACY_TOL)
        .count();
    // G is real, so the phase of the eigenvector can be removed by dividing
    // through by its largest entry.
    let v = eig.vector(top);
    let pivot = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("nonempty eigenvector");
    let phase = pivot / pivot.norm();
    let argmax = v.iter().map(|x| (x / phase).re).collect();
    Ok(EtaMaximum {
        eta_max,
        argmax,
        degeneracy,
    })
}

/// One row of the optimality comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalityRow {
    pub m: usize,
    pub closed_form: f64,
    pub via_a: f64,
    /// Absent above the Gram cap.
    pub via_eta_gram: Option<f64>,
}

impl OptimalityRow {
    pub fn max_deviation(&self) -> f64 {
        let a = (self.via_a - self.closed_form).abs();
        self.via_eta_gram
            .map_or(a, |g| a.max((g - self.closed_form).abs()))
    }
}

/// Compares the closed form with both certificates; the Gram route is run for
/// `M ≤ gram_cap`.
pub fn optimality_row(m: usize, gram_cap: usize) -> Result<OptimalityRow> {
    Ok(OptimalityRow {
        m,
        closed_form: crate::analysis::fidelity_closed_1tom(m)?,
        via_a: optimal_fidelity_via_a(m)?,
        via_eta_gram: if m <= gram_cap {
            Some(maximize_eta(m)?.fidelity())
        } else {
            None
        },
    })
}
