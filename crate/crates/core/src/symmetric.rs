//! The symmetric (Dicke) subspace of n qubits.
//!
//! Basis vector `k` is `|(n−k)↑, k↓⟩`: the normalized equal superposition of
//! every computational basis state with exactly `k` ones.

use crate::error::{Error, Result};
use crate::state::{EquatorialState, Ket};
use crate::C64;

/// Largest register expanded into the full computational basis.
pub const MAX_EXPAND_QUBITS: usize = 14;

/// Exact binomial coefficient. Panics on `u64` overflow (n > 62 or so).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc·(n−i) is divisible by (i+1) at every step.
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// `binomial` as a float, for use under square roots.
pub(crate) fn binomial_f(n: usize, k: usize) -> f64 {
    binomial(n as u64, k as u64) as f64
}

/// Amplitudes over the Dicke basis of `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct SymVector {
    n: usize,
    amps: Vec<C64>,
}

impl SymVector {
    /// Normalizes `amps`, which must have length `n + 1` with `n ≥ 1`.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        if amps.len() < 2 {
            return Err(Error::InvalidParameter(
                "symmetric vector needs at least one qubit".into(),
            ));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(Self {
            n: amps.len() - 1,
            amps: amps.into_iter().map(|a| a / norm).collect(),
        })
    }

    /// Dicke basis vector `|(n−k)↑, k↓⟩`.
    pub fn dicke(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k > n {
            return Err(Error::InvalidParameter(format!("Dicke state n={n}, k={k}")));
        }
        let mut amps = vec![C64::new(0.0, 0.0); n + 1];
        amps[k] = C64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// `|ψ⟩^{⊗n}` written in the Dicke basis: amplitude `√C(n,k) α^{n−k} β^k`.
    pub fn power(state: &EquatorialState, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("power of zero copies".into()));
        }
        let [alpha, beta] = state.amplitudes();
        let amps = (0..=n)
            .map(|k| alpha.powu((n - k) as u32) * beta.powu(k as u32) * binomial_f(n, k).sqrt())
            .collect();
        Ok(Self { n, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// Expands into the `2^n` computational basis.
    pub fn to_ket(&self) -> Result<Ket> {
        sym_to_full(self)
    }
}

/// Expands a symmetric vector into the computational basis: every bit string
/// with `k` ones receives `amps[k] / √C(n,k)`.
pub fn sym_to_full(s: &SymVector) -> Result<Ket> {
    if s.n > MAX_EXPAND_QUBITS {
        return Err(Error::OutOfRange {
            what: "symmetric register size",
            value: s.n,
            range: format!("1..={MAX_EXPAND_QUBITS}"),
        });
    }
    let scale: Vec<C64> = (0..=s.n)
        .map(|k| s.amps[k] / binomial_f(s.n, k).sqrt())
        .collect();
    let amps = (0..1usize << s.n)
        .map(|i| scale[i.count_ones() as usize])
        .collect();
    Ok(Ket::from_normalized(amps))
}
