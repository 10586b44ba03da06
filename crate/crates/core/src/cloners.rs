//! Cloning transformations as isometries from a symmetric input space into
//! (symmetric output space) ⊗ (ancilla register).
//!
//! All maps are stored as sparse tables of `(k_in, k_out, ancilla, amplitude)`
//! over Dicke indices. Ancilla basis states `R_j` are computational basis
//! states of a separate register; when expanded to qubits the register takes
//! `⌈log₂ d⌉` qubits after the copies, with `R_0 = |0…0⟩`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::state::{Equator, EquatorialState, Ket};
use crate::symmetric::{binomial_f, SymVector, MAX_EXPAND_QUBITS};
use crate::C64;

/// Isometry defect tolerated by every map this module builds.
pub const ISOMETRY_TOL: f64 = 1e-10;

/// Normalization tolerance for user-supplied `α` coefficients.
pub const COEFF_TOL: f64 = 1e-10;

/// Parameter of the one-to-two family; any real value except `±1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lambda(f64);

impl Lambda {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || (value.abs() - 1.0).abs() < 1e-12 {
            return Err(Error::InvalidLambda(value));
        }
        Ok(Self(value))
    }

    /// `3 − 2√2`, the optimal phase-covariant cloner.
    pub fn optimal() -> Self {
        Self(3.0 - 2.0 * 2f64.sqrt())
    }

    /// `0`, the universal cloner.
    pub fn universal() -> Self {
        Self(0.0)
    }

    /// `1/3`, where all three output qubits carry identical states.
    pub fn triplicator() -> Self {
        Self(1.0 / 3.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `3 − 2λ + 3λ²`.
    pub fn denominator(self) -> f64 {
        let l = self.0;
        3.0 - 2.0 * l + 3.0 * l * l
    }

    /// `q = √(2 / (3 − 2λ + 3λ²))`.
    pub fn q(self) -> f64 {
        (2.0 / self.denominator()).sqrt()
    }

    /// `y = (1 − λ) / √(6 − 4λ + 6λ²)`.
    pub fn y(self) -> f64 {
        (1.0 - self.0) / (2.0 * self.denominator()).sqrt()
    }

    /// Bloch-vector shrink factor of the two copies.
    pub fn copy_shrink(self) -> f64 {
        2.0 * (1.0 - self.0 * self.0) / self.denominator()
    }
}

/// One nonzero amplitude of a cloning map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapEntry {
    pub k_in: usize,
    pub k_out: usize,
    pub ancilla: usize,
    pub amplitude: C64,
}

impl MapEntry {
    fn real(k_in: usize, k_out: usize, ancilla: usize, amplitude: f64) -> Self {
        Self {
            k_in,
            k_out,
            ancilla,
            amplitude: C64::new(amplitude, 0.0),
        }
    }
}

/// Linear map `|(N−k)↑, k↓⟩ ↦ Σ amplitude · |(M−k')↑, k'↓⟩ ⊗ R_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct CloningMap {
    n_in: usize,
    m_out: usize,
    ancilla_dim: usize,
    entries: Vec<MapEntry>,
}

impl CloningMap {
    /// Checks index ranges only; see [`CloningMap::isometry_defect`] for
    /// unitarity.
    pub fn new(
        n_in: usize,
        m_out: usize,
        ancilla_dim: usize,
        entries: Vec<MapEntry>,
    ) -> Result<Self> {
        if n_in == 0 || m_out == 0 || ancilla_dim == 0 {
            return Err(Error::InvalidParameter(format!(
                "cloning map with n_in={n_in}, m_out={m_out}, ancilla_dim={ancilla_dim}"
            )));
        }
        for e in &entries {
            if e.k_in > n_in || e.k_out > m_out || e.ancilla >= ancilla_dim {
                return Err(Error::InvalidParameter(format!(
                    "entry ({}, {}, {}) outside map shape",
                    e.k_in, e.k_out, e.ancilla
                )));
            }
        }
        Ok(Self {
            n_in,
            m_out,
            ancilla_dim,
            entries,
        })
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn m_out(&self) -> usize {
        self.m_out
    }

    pub fn ancilla_dim(&self) -> usize {
        self.ancilla_dim
    }

    pub fn entries(&self) -> &[MapEntry] {
        &self.entries
    }

    fn output_dim(&self) -> usize {
        (self.m_out + 1) * self.ancilla_dim
    }

    fn column(&self, k_in: usize) -> Vec<C64> {
        let mut col = vec![C64::new(0.0, 0.0); self.output_dim()];
        for e in self.entries.iter().filter(|e| e.k_in == k_in) {
            col[e.k_out * self.ancilla_dim + e.ancilla] += e.amplitude;
        }
        col
    }

    /// Largest entry of `|V†V − 1|` over the input space.
    pub fn isometry_defect(&self) -> f64 {
        let cols: Vec<_> = (0..=self.n_in).map(|k| self.column(k)).collect();
        let mut worst = 0.0f64;
        for (i, ci) in cols.iter().enumerate() {
            for (j, cj) in cols.iter().enumerate() {
                let g: C64 = ci.iter().zip(cj).map(|(a, b)| a.conj() * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }

    /// Applies the map to a symmetric input of matching size.
    pub fn apply(&self, input: &SymVector) -> Result<JointState> {
        if input.n_qubits() != self.n_in {
            return Err(Error::DimensionMismatch {
                expected: self.n_in + 1,
                found: input.n_qubits() + 1,
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); self.output_dim()];
        for e in &self.entries {
            amps[e.k_out * self.ancilla_dim + e.ancilla] +=
                e.amplitude * input.amplitudes()[e.k_in];
        }
        Ok(JointState {
            copies: self.m_out,
            ancilla_dim: self.ancilla_dim,
            amps,
        })
    }

    /// Applies the map to `n_in` copies of `state`.
    pub fn clone_state(&self, state: &EquatorialState) -> Result<JointState> {
        self.apply(&SymVector::power(state, self.n_in)?)
    }

    /// Image of the Dicke input `k_in`, expanded to qubits.
    pub fn image(&self, k_in: usize) -> Result<Ket> {
        self.apply(&SymVector::dicke(self.n_in, k_in)?)?.to_ket()
    }
}

/// Free-function form of [`CloningMap::isometry_defect`].
pub fn isometry_check(map: &CloningMap) -> f64 {
    map.isometry_defect()
}

/// Output of a cloning map: amplitudes over (Dicke index of the copies,
/// ancilla index).
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    copies: usize,
    ancilla_dim: usize,
    amps: Vec<C64>,
}

impl JointState {
    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn ancilla_dim(&self) -> usize {
        self.ancilla_dim
    }

    /// Qubits used to hold the ancilla register when expanded.
    pub fn ancilla_qubits(&self) -> usize {
        self.ancilla_dim.next_power_of_two().trailing_zeros() as usize
    }

    pub fn amplitude(&self, k_out: usize, ancilla: usize) -> C64 {
        self.amps[k_out * self.ancilla_dim + ancilla]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Expands to a ket on `copies + ancilla_qubits` qubits, copies first.
    pub fn to_ket(&self) -> Result<Ket> {
        let aq = self.ancilla_qubits();
        let width = self.copies + aq;
        if width > MAX_EXPAND_QUBITS + 4 || self.copies > MAX_EXPAND_QUBITS {
            return Err(Error::OutOfRange {
                what: "expanded register size",
                value: width,
                range: format!("copies ≤ {MAX_EXPAND_QUBITS}"),
            });
        }
        let inv_sqrt_binom: Vec<f64> = (0..=self.copies)
            .map(|k| 1.0 / binomial_f(self.copies, k).sqrt())
            .collect();
        let mut amps = vec![C64::new(0.0, 0.0); 1 << width];
        for bits in 0..1usize << self.copies {
            let k = bits.count_ones() as usize;
            for a in 0..self.ancilla_dim {
                amps[(bits << aq) | a] = self.amplitude(k, a) * inv_sqrt_binom[k];
            }
        }
        Ket::from_amplitudes(amps)
    }

    /// Reduced state of output copy `index`.
    pub fn copy_density(&self, index: usize) -> Result<DensityMatrix> {
        if index >= self.copies {
            return Err(Error::QubitOutOfRange {
                index,
                width: self.copies,
            });
        }
        self.to_ket()?.reduced_density(&[index])
    }

    /// Reduced states of every copy, from a single expansion.
    pub fn copy_densities(&self) -> Result<Vec<DensityMatrix>> {
        let ket = self.to_ket()?;
        (0..self.copies)
            .map(|i| ket.reduced_density(&[i]))
            .collect()
    }
}

/// One-to-two map for the x–z equator (copies in qubits 0, 1; ancilla qubit 2).
///
/// `|0⟩ ↦ q(|00⟩ + λ|11⟩)|↑⟩ + y(|10⟩ + |01⟩)|↓⟩`,
/// `|1⟩ ↦ q(|11⟩ + λ|00⟩)|↓⟩ + y(|10⟩ + |01⟩)|↑⟩`.
///
/// The second image carries `|↑⟩` on its `y` term; with `|↓⟩` the two images
/// overlap by `2y²` and the map is not an isometry.
pub fn one_to_two_xz_map(lambda: Lambda) -> CloningMap {
    let (q, y, l) = (lambda.q(), lambda.y(), lambda.value());
    let sym = y * 2f64.sqrt();
    CloningMap {
        n_in: 1,
        m_out: 2,
        ancilla_dim: 2,
        entries: vec![
            MapEntry::real(0, 0, 0, q),
            MapEntry::real(0, 2, 0, q * l),
            MapEntry::real(0, 1, 1, sym),
            MapEntry::real(1, 2, 1, q),
            MapEntry::real(1, 0, 1, q * l),
            MapEntry::real(1, 1, 0, sym),
        ],
    }
}

/// One-to-two map for the x–y equator.
///
/// `|0⟩ ↦ c₁|00⟩|0⟩ + c₂(|01⟩ + |10⟩)|1⟩`, `|1⟩ ↦ c₁|11⟩|1⟩ + c₂(|01⟩ + |10⟩)|0⟩`
/// with `c₁ = 2(1−λ)/s`, `c₂ = (1+λ)/s`, `s = √(6 − 4λ + 6λ²)`.
pub fn one_to_two_xy_map(lambda: Lambda) -> CloningMap {
    let (c1, c2) = xy_coefficients(lambda);
    let sym = c2 * 2f64.sqrt();
    CloningMap {
        n_in: 1,
        m_out: 2,
        ancilla_dim: 2,
        entries: vec![
            MapEntry::real(0, 0, 0, c1),
            MapEntry::real(0, 1, 1, sym),
            MapEntry::real(1, 2, 1, c1),
            MapEntry::real(1, 1, 0, sym),
        ],
    }
}

/// `(2(1−λ)/s, (1+λ)/s)` with `s = √(6 − 4λ + 6λ²)`.
pub(crate) fn xy_coefficients(lambda: Lambda) -> (f64, f64) {
    let l = lambda.value();
    let s = (2.0 * lambda.denominator()).sqrt();
    (2.0 * (1.0 - l) / s, (1.0 + l) / s)
}

/// Clones an x–z input with the `λ` family. Returns the three-qubit output
/// (copies in qubits 0 and 1, ancilla in qubit 2).
pub fn clone_1to2_xz(lambda: Lambda, input: &EquatorialState) -> Result<Ket> {
    input.require(Equator::Xz)?;
    one_to_two_xz_map(lambda).clone_state(input)?.to_ket()
}

/// Clones an x–y input with the `λ` family.
pub fn clone_1to2_xy(lambda: Lambda, input: &EquatorialState) -> Result<Ket> {
    input.require(Equator::Xy)?;
    one_to_two_xy_map(lambda).clone_state(input)?.to_ket()
}

/// Three-copy maps without ancilla.
///
/// x–z: `|0⟩ ↦ (3|000⟩ + |011⟩ + |101⟩ + |110⟩)/√12` and its bit-flipped
/// partner. x–y: `|0⟩ ↦ |2↑,1↓⟩`, `|1⟩ ↦ |1↑,2↓⟩`.
pub fn triplicator_map(equator: Equator) -> CloningMap {
    let entries = match equator {
        Equator::Xz => {
            let big = 3.0 / 12f64.sqrt();
            // Three bit strings with amplitude 1/√12 make up √3/√12 = 1/2 of a Dicke vector.
            let small = 0.5;
            vec![
                MapEntry::real(0, 0, 0, big),
                MapEntry::real(0, 2, 0, small),
                MapEntry::real(1, 3, 0, big),
                MapEntry::real(1, 1, 0, small),
            ]
        }
        Equator::Xy => vec![MapEntry::real(0, 1, 0, 1.0), MapEntry::real(1, 2, 0, 1.0)],
    };
    CloningMap {
        n_in: 1,
        m_out: 3,
        ancilla_dim: 1,
        entries,
    }
}

/// Produces three identical copies of an input on `equator`.
pub fn triplicate(equator: Equator, input: &EquatorialState) -> Result<Ket> {
    input.require(equator)?;
    triplicator_map(equator).clone_state(input)?.to_ket()
}

/// Coefficients of the optimal one-to-`m` map: two entries of `1/√2` at
/// `m/2 − 1, m/2` for even `m`, a single `1` at `(m−1)/2` for odd `m`.
pub fn optimal_alphas(m: usize) -> Result<Vec<f64>> {
    if m < 2 {
        return Err(Error::OutOfRange {
            what: "output copies M",
            value: m,
            range: "M ≥ 2".into(),
        });
    }
    let mut a = vec![0.0; m];
    if m.is_multiple_of(2) {
        a[m / 2 - 1] = FRAC_1_SQRT_2;
        a[m / 2] = FRAC_1_SQRT_2;
    } else {
        a[(m - 1) / 2] = 1.0;
    }
    Ok(a)
}

/// One-to-`M` map with coefficients `α_0..α_{M−1}`:
/// `|↑⟩ ↦ Σ_j α_j |(M−j)↑, j↓⟩ R_j`, `|↓⟩ ↦ Σ_j α_{M−1−j} |(M−1−j)↑, (j+1)↓⟩ R_j`.
pub fn one_to_m_map(alphas: &[f64]) -> Result<CloningMap> {
    let m = alphas.len();
    if m < 2 {
        return Err(Error::OutOfRange {
            what: "output copies M",
            value: m,
            range: "M ≥ 2".into(),
        });
    }
    let norm: f64 = alphas.iter().map(|a| a * a).sum();
    if (norm - 1.0).abs() > COEFF_TOL {
        return Err(Error::Unnormalized(norm));
    }
    let mut entries = Vec::with_capacity(2 * m);
    for (j, &a) in alphas.iter().enumerate() {
        if a != 0.0 {
            entries.push(MapEntry::real(0, j, j, a));
        }
        let b = alphas[m - 1 - j];
        if b != 0.0 {
            entries.push(MapEntry::real(1, j + 1, j, b));
        }
    }
    CloningMap::new(1, m, m, entries)
}

/// Clones an x–y input into `alphas.len()` copies.
pub fn clone_1_to_m(alphas: &[f64], input: &EquatorialState) -> Result<JointState> {
    input.require(Equator::Xy)?;
    one_to_m_map(alphas)?.clone_state(input)
}

/// `N → M` map, `M > N`. With `M = N + 2L` every input Dicke state shifts to
/// `|(N−j+L)↑, (j+L)↓⟩ R_L`; with `M = N + 2L + 1` it splits evenly between
/// `|(N−j+L+1)↑, (j+L)↓⟩ R_L` and `|(N−j+L)↑, (j+L+1)↓⟩ R_{L+1}`. The
/// ancilla register has dimension `M + 1`.
pub fn n_to_m_map(n: usize, m: usize) -> Result<CloningMap> {
    if n == 0 || m <= n {
        return Err(Error::InvalidParameter(format!(
            "N → M cloning needs M > N ≥ 1, got N={n}, M={m}"
        )));
    }
    let gap = m - n;
    let l = gap / 2;
    let mut entries = Vec::new();
    for j in 0..=n {
        if gap.is_multiple_of(2) {
            entries.push(MapEntry::real(j, j + l, l, 1.0));
        } else {
            entries.push(MapEntry::real(j, j + l, l, FRAC_1_SQRT_2));
            entries.push(MapEntry::real(j, j + l + 1, l + 1, FRAC_1_SQRT_2));
        }
    }
    CloningMap::new(n, m, m + 1, entries)
}

/// Clones `n` copies of an x–y input into `m` copies.
pub fn clone_n_to_m(n: usize, m: usize, input: &EquatorialState) -> Result<JointState> {
    input.require(Equator::Xy)?;
    n_to_m_map(n, m)?.clone_state(input)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::fidelity_pure;

    fn ket(bits: &str) -> Ket {
        let b: Vec<u8> = bits.bytes().map(|c| c - b'0').collect();
        Ket::from_bits(&b).unwrap()
    }

    fn combo(terms: &[(f64, &str)]) -> Vec<C64> {
        let n = terms[0].1.len();
        let mut v = vec![C64::new(0.0, 0.0); 1 << n];
        for (c, bits) in terms {
            for (i, a) in ket(bits).amplitudes().iter().enumerate() {
                v[i] += a * c;
            }
        }
        v
    }

    #[test]
    fn lambda_rejects_poles() {
        assert_eq!(Lambda::new(1.0), Err(Error::InvalidLambda(1.0)));
        assert_eq!(Lambda::new(-1.0), Err(Error::InvalidLambda(-1.0)));
        assert!(Lambda::new(f64::NAN).is_err());
        assert!(Lambda::new(2.5).is_ok());
    }

    #[test]
    fn optimal_xz_image_of_zero_matches_reference_form() {
        // [(1/2+√(1/8))|00⟩ + (1/2−√(1/8))|11⟩]|↑⟩ + ½|+⟩|↓⟩ with |+⟩ = (|10⟩+|01⟩)/√2.
        let a = 0.5 + (0.125f64).sqrt();
        let b = 0.5 - (0.125f64).sqrt();
        let h = 0.5 * FRAC_1_SQRT_2;
        let expected = combo(&[(a, "000"), (b, "110"), (h, "101"), (h, "011")]);
        let out = clone_1to2_xz(Lambda::optimal(), &EquatorialState::xz(0.0)).unwrap();
        for (x, y) in out.amplitudes().iter().zip(&expected) {
            assert!((x - y).norm() < 1e-15);
        }
        // And the |1⟩ image, with the ancilla roles swapped.
        let expected = combo(&[(a, "111"), (b, "001"), (h, "100"), (h, "010")]);
        let out = one_to_two_xz_map(Lambda::optimal()).image(1).unwrap();
        for (x, y) in out.amplitudes().iter().zip(&expected) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn optimal_xy_matches_reference_form() {
        let r = FRAC_1_SQRT_2;
        let img0 = combo(&[(r, "000"), (0.5, "011"), (0.5, "101")]);
        let img1 = combo(&[(r, "111"), (0.5, "010"), (0.5, "100")]);
        for phi in [0.0, 0.4, 2.9, 5.5] {
            let s = EquatorialState::xy(phi);
            let [a, b] = s.amplitudes();
            let out = clone_1to2_xy(Lambda::optimal(), &s).unwrap();
            for (i, x) in out.amplitudes().iter().enumerate() {
                assert!((x - (a * img0[i] + b * img1[i])).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn xz_triplicator_is_the_lambda_third_member() {
        for theta in [0.0, 0.3, 1.9] {
            let s = EquatorialState::xz(theta);
            let a = triplicate(Equator::Xz, &s).unwrap();
            let b = clone_1to2_xz(Lambda::triplicator(), &s).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-15);
        }
    }

    #[test]
    fn xz_triplicator_reference_amplitudes() {
        let r = 1.0 / 12f64.sqrt();
        let expected = combo(&[(3.0 * r, "000"), (r, "011"), (r, "101"), (r, "110")]);
        let out = triplicate(Equator::Xz, &EquatorialState::xz(0.0)).unwrap();
        for (x, y) in out.amplitudes().iter().zip(&expected) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn xy_triplicator_reference_amplitudes() {
        let r = 1.0 / 3f64.sqrt();
        let map = triplicator_map(Equator::Xy);
        let img0 = combo(&[(r, "001"), (r, "100"), (r, "010")]);
        let img1 = combo(&[(r, "110"), (r, "011"), (r, "101")]);
        for (k, expected) in [(0, img0), (1, img1)] {
            let out = map.image(k).unwrap();
            for (x, y) in out.amplitudes().iter().zip(&expected) {
                assert!((x - y).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn equator_mismatch_is_an_error() {
        let xy = EquatorialState::xy(0.2);
        let xz = EquatorialState::xz(0.2);
        assert!(clone_1to2_xz(Lambda::optimal(), &xy).is_err());
        assert!(clone_1to2_xy(Lambda::optimal(), &xz).is_err());
        assert!(triplicate(Equator::Xy, &xz).is_err());
        assert!(clone_1_to_m(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2], &xz).is_err());
        assert!(clone_n_to_m(1, 3, &xz).is_err());
    }

    #[test]
    fn universal_member_gives_five_sixths() {
        let s = EquatorialState::xz(0.77);
        let out = clone_1to2_xz(Lambda::universal(), &s).unwrap();
        let f = fidelity_pure(&s.ket(), &out.reduced_density(&[0]).unwrap()).unwrap();
        assert!((f - 5.0 / 6.0).abs() < 1e-12);
        let s = EquatorialState::xy(0.0);
        let out = clone_1to2_xy(Lambda::universal(), &s).unwrap();
        let f = fidelity_pure(&s.ket(), &out.reduced_density(&[0]).unwrap()).unwrap();
        assert!((f - 5.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn optimal_alpha_patterns() {
        let r = FRAC_1_SQRT_2;
        assert_eq!(optimal_alphas(2).unwrap(), vec![r, r]);
        assert_eq!(optimal_alphas(3).unwrap(), vec![0.0, 1.0, 0.0]);
        assert_eq!(optimal_alphas(5).unwrap(), vec![0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(optimal_alphas(6).unwrap(), vec![0.0, 0.0, r, r, 0.0, 0.0]);
        assert!(optimal_alphas(1).is_err());
    }

    #[test]
    fn one_to_m_validation() {
        assert!(matches!(
            one_to_m_map(&[0.6, 0.6]),
            Err(Error::Unnormalized(_))
        ));
        assert!(one_to_m_map(&[1.0]).is_err());
    }

    #[test]
    fn one_to_m_m2_equals_n_to_m_case_b() {
        let a = one_to_m_map(&optimal_alphas(2).unwrap()).unwrap();
        let b = n_to_m_map(1, 2).unwrap();
        let s = EquatorialState::xy(1.3);
        let ka = a.clone_state(&s).unwrap().to_ket().unwrap();
        let kb = b.clone_state(&s).unwrap().to_ket().unwrap();
        // Ancilla registers differ in width; compare physics on the copies.
        let ra = ka.reduced_density(&[0, 1]).unwrap();
        let rb = kb.reduced_density(&[0, 1]).unwrap();
        assert!(ra.max_abs_diff(&rb) < 1e-14);
    }

    #[test]
    fn n_to_m_requires_growth() {
        assert!(n_to_m_map(3, 3).is_err());
        assert!(n_to_m_map(0, 2).is_err());
    }

    #[test]
    fn isometry_of_builders() {
        assert!(one_to_two_xz_map(Lambda::optimal()).isometry_defect() < 1e-12);
        assert!(
            one_to_m_map(&optimal_alphas(6).unwrap())
                .unwrap()
                .isometry_defect()
                < 1e-12
        );
        for (n, m) in [(1, 2), (2, 3), (2, 4), (4, 9)] {
            assert!(n_to_m_map(n, m).unwrap().isometry_defect() < 1e-12);
        }
    }

    #[test]
    fn corrupted_map_is_detected() {
        let good = one_to_two_xz_map(Lambda::optimal());
        let mut entries = good.entries().to_vec();
        entries[0].amplitude += C64::new(0.01, 0.0);
        let bad = CloningMap::new(1, 2, 2, entries).unwrap();
        assert!(bad.isometry_defect() > 1e-3);
    }

    #[test]
    fn swapped_ancilla_variant_is_not_an_isometry() {
        // Same map with the second image's y term on |↓⟩ instead of |↑⟩.
        let l = Lambda::optimal();
        let mut entries = one_to_two_xz_map(l).entries().to_vec();
        let last = entries.last_mut().unwrap();
        assert_eq!((last.k_in, last.k_out, last.ancilla), (1, 1, 0));
        last.ancilla = 1;
        let bad = CloningMap::new(1, 2, 2, entries).unwrap();
        assert!((bad.isometry_defect() - 2.0 * l.y() * l.y()).abs() < 1e-14);
    }

    #[test]
    fn map_shape_validation() {
        let e = MapEntry::real(0, 3, 0, 1.0);
        assert!(CloningMap::new(1, 2, 1, vec![e]).is_err());
        assert!(CloningMap::new(0, 2, 1, vec![]).is_err());
    }

    #[test]
    fn joint_state_copy_index_checked() {
        let j = clone_n_to_m(1, 3, &EquatorialState::xy(0.0)).unwrap();
        assert!(j.copy_density(3).is_err());
        assert_eq!(j.ancilla_qubits(), 2);
        assert!((j.norm_sqr() - 1.0).abs() < 1e-14);
    }
}
