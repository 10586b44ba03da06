//! Pure states on an n-qubit register.
//!
//! Qubit 0 is the most significant bit of the basis index, so the ket
//! `|b0 b1 b2⟩` sits at index `4*b0 + 2*b1 + b2`. `|0⟩` is spin up (`+z`).

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::C64;

/// Norm tolerance for constructed kets.
pub const NORM_TOL: f64 = 1e-12;

/// The great circle of the Bloch sphere an input state is restricted to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Equator {
    /// Real amplitudes: `cos θ|0⟩ + sin θ|1⟩`.
    Xz,
    /// Equal weights with a relative phase: `(|0⟩ + e^{iφ}|1⟩)/√2`.
    Xy,
}

impl Equator {
    pub fn name(self) -> &'static str {
        match self {
            Equator::Xz => "x-z",
            Equator::Xy => "x-y",
        }
    }
}

impl fmt::Display for Equator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A single-qubit pure state on one of the two equators, parameterized by
/// one real angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquatorialState {
    equator: Equator,
    angle: f64,
}

impl EquatorialState {
    /// The angle is wrapped into `[0, 2π)`.
    pub fn new(equator: Equator, angle: f64) -> Self {
        Self {
            equator,
            angle: angle.rem_euclid(TAU),
        }
    }

    pub fn xz(theta: f64) -> Self {
        Self::new(Equator::Xz, theta)
    }

    pub fn xy(phi: f64) -> Self {
        Self::new(Equator::Xy, phi)
    }

    pub fn equator(&self) -> Equator {
        self.equator
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Amplitudes `(α, β)` of `α|0⟩ + β|1⟩`.
    pub fn amplitudes(&self) -> [C64; 2] {
        match self.equator {
            Equator::Xz => [
                C64::new(self.angle.cos(), 0.0),
                C64::new(self.angle.sin(), 0.0),
            ],
            Equator::Xy => [
                C64::new(FRAC_1_SQRT_2, 0.0),
                C64::from_polar(FRAC_1_SQRT_2, self.angle),
            ],
        }
    }

    pub fn ket(&self) -> Ket {
        Ket {
            n_qubits: 1,
            amps: self.amplitudes().to_vec(),
        }
    }

    /// Fails unless the state lies on `expected`.
    pub fn require(&self, expected: Equator) -> Result<()> {
        if self.equator == expected {
            Ok(())
        } else {
            Err(Error::WrongEquator {
                expected: expected.name(),
                found: self.equator.name(),
            })
        }
    }
}

/// Free-function form of [`EquatorialState::ket`].
pub fn ket_from_equatorial(s: EquatorialState) -> Ket {
    s.ket()
}

/// Normalized pure state of `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl Ket {
    /// Normalizes `amps`; the length must be `2^n` with `n ≥ 1`.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(Self {
            n_qubits: len.trailing_zeros() as usize,
            amps: amps.into_iter().map(|a| a / norm).collect(),
        })
    }

    /// Real-amplitude convenience constructor.
    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::from_amplitudes(amps.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || index >= 1 << n_qubits {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} for {n_qubits} qubits"
            )));
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Product state of the given bit string, qubit 0 first.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let index = bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b != 0));
        Self::basis(bits.len(), index)
    }

    /// Wraps amplitudes that are already normalized (checked in debug builds).
    pub(crate) fn from_normalized(amps: Vec<C64>) -> Self {
        debug_assert!(amps.len().is_power_of_two() && amps.len() >= 2);
        debug_assert!(
            (amps.iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-9,
            "ket not normalized"
        );
        Self {
            n_qubits: amps.len().trailing_zeros() as usize,
            amps,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Ket) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|self⟩ ⊗ |other⟩`, with `self` occupying the leading qubits.
    pub fn tensor(&self, other: &Ket) -> Ket {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ket {
            n_qubits: self.n_qubits + other.n_qubits,
            amps,
        }
    }

    /// Largest amplitude-wise distance to `other` (no phase alignment).
    pub fn max_abs_diff(&self, other: &Ket) -> f64 {
        assert_eq!(self.dim(), other.dim(), "ket dimensions differ");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn density(&self) -> DensityMatrix {
        let m = Matrix::outer(&self.amps, &self.amps).expect("same length");
        DensityMatrix::from_parts_unchecked(self.n_qubits, m)
    }

    /// Reduced state on `keep` without forming the full density matrix.
    ///
    /// The output qubits follow the order given in `keep`.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let split = QubitSplit::new(self.n_qubits, keep)?;
        let k = keep.len();
        let kd = 1usize << k;
        let mut m = Matrix::zeros(kd);
        let rest_count = 1usize << (self.n_qubits - k);
        for rest in 0..rest_count {
            let base = split.scatter_rest(rest);
            for a in 0..kd {
                let ia = self.amps[base | split.scatter_keep(a)];
                if ia == C64::new(0.0, 0.0) {
                    continue;
                }
                for b in 0..kd {
                    let ib = self.amps[base | split.scatter_keep(b)];
                    m[(a, b)] += ia * ib.conj();
                }
            }
        }
        Ok(DensityMatrix::from_parts_unchecked(k, m))
    }
}

/// Free-function form of [`Ket::tensor`].
pub fn tensor(a: &Ket, b: &Ket) -> Ket {
    a.tensor(b)
}

/// Free-function form of [`Ket::density`].
pub fn density_from_ket(k: &Ket) -> DensityMatrix {
    k.density()
}

/// Maps between a full basis index and a (kept, rest) pair of sub-indices.
pub(crate) struct QubitSplit {
    keep_masks: Vec<usize>,
    rest_masks: Vec<usize>,
}

impl QubitSplit {
    pub(crate) fn new(n_qubits: usize, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::InvalidQubitSet("no qubits kept".into()));
        }
        let mut seen = vec![false; n_qubits];
        for &q in keep {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    width: n_qubits,
                });
            }
            if seen[q] {
                return Err(Error::InvalidQubitSet(format!("qubit {q} listed twice")));
            }
            seen[q] = true;
        }
        let mask = |q: usize| 1usize << (n_qubits - 1 - q);
        // Sub-index bit i (from the top) corresponds to the i-th listed qubit.
        let keep_masks = keep.iter().rev().map(|&q| mask(q)).collect();
        let rest_masks = (0..n_qubits)
            .rev()
            .filter(|&q| !seen[q])
            .map(mask)
            .collect();
        Ok(Self {
            keep_masks,
            rest_masks,
        })
    }

    fn scatter(masks: &[usize], sub: usize) -> usize {
        masks
            .iter()
            .enumerate()
            .filter(|(i, _)| sub >> i & 1 == 1)
            .fold(0, |acc, (_, m)| acc | m)
    }

    pub(crate) fn scatter_keep(&self, sub: usize) -> usize {
        Self::scatter(&self.keep_masks, sub)
    }

    pub(crate) fn scatter_rest(&self, sub: usize) -> usize {
        Self::scatter(&self.rest_masks, sub)
    }
}

/// Bloch vector `(x, y, z)` of a single-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Distance from `self` to the ray spanned by `direction`, together with
    /// the (signed) projection coefficient. Used for orientation checks.
    pub fn ray_decomposition(&self, direction: &BlochVector) -> (f64, f64) {
        let n2 = direction.dot(direction);
        let coeff = self.dot(direction) / n2;
        let rx = self.x - coeff * direction.x;
        let ry = self.y - coeff * direction.y;
        let rz = self.z - coeff * direction.z;
        (coeff, (rx * rx + ry * ry + rz * rz).sqrt())
    }
}
