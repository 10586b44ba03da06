//! Gate-level realization of one-to-two cloning.
//!
//! A two-qubit preparation network (three rotations, two CNOTs) writes a
//! state into the blank qubits `a₂ a₃`; four CNOTs between the input `a₁`
//! and the blanks then perform the copy. The copies come out in `a₂` and
//! `a₃`, unlike the direct transformations which put them in `a₁ a₂`.

use std::f64::consts::{FRAC_PI_8, TAU};

use crate::cloners::{self, xy_coefficients, Lambda};
use crate::density::fidelity_pure;
use crate::error::{Error, Result};
use crate::state::{Equator, EquatorialState, Ket};
use crate::C64;

/// One- or two-qubit gate on a register.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    /// `|0⟩ ↦ cos ϑ|0⟩ + sin ϑ|1⟩`, `|1⟩ ↦ −sin ϑ|0⟩ + cos ϑ|1⟩`.
    Rotation { target: usize, angle: f64 },
    /// Flips `target` when `control` is 1.
    Cnot { control: usize, target: usize },
}

impl Gate {
    fn validate(&self, width: usize) -> Result<()> {
        let check = |q: usize| {
            if q < width {
                Ok(())
            } else {
                Err(Error::QubitOutOfRange { index: q, width })
            }
        };
        match *self {
            Gate::Rotation { target, .. } => check(target),
            Gate::Cnot { control, target } => {
                check(control)?;
                check(target)?;
                if control == target {
                    return Err(Error::ControlIsTarget(control));
                }
                Ok(())
            }
        }
    }
}

/// Applies one gate to a ket by index arithmetic on the amplitudes.
pub fn apply_gate(state: &Ket, gate: &Gate) -> Result<Ket> {
    let n = state.n_qubits();
    gate.validate(n)?;
    let mut amps = state.amplitudes().to_vec();
    match *gate {
        Gate::Rotation { target, angle } => {
            let bit = 1usize << (n - 1 - target);
            let (s, c) = angle.sin_cos();
            for i in (0..amps.len()).filter(|i| i & bit == 0) {
                let a0 = amps[i];
                let a1 = amps[i | bit];
                amps[i] = a0 * c - a1 * s;
                amps[i | bit] = a0 * s + a1 * c;
            }
        }
        Gate::Cnot { control, target } => {
            let cbit = 1usize << (n - 1 - control);
            let tbit = 1usize << (n - 1 - target);
            for i in (0..amps.len()).filter(|i| i & cbit != 0 && i & tbit == 0) {
                amps.swap(i, i | tbit);
            }
        }
    }
    Ok(Ket::from_normalized(amps))
}

/// Ordered gate list on a fixed-width register.
#[derive(Debug, Clone, PartialEq)]
pub struct GateNetwork {
    width: usize,
    gates: Vec<Gate>,
}

impl GateNetwork {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            gates: Vec::new(),
        }
    }

    /// Appends a gate; it acts after every gate already present.
    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.width)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn apply(&self, state: &Ket) -> Result<Ket> {
        if state.n_qubits() != self.width {
            return Err(Error::DimensionMismatch {
                expected: 1 << self.width,
                found: state.dim(),
            });
        }
        self.gates
            .iter()
            .try_fold(state.clone(), |s, g| apply_gate(&s, g))
    }
}

/// Rotation angles `(ϑ₁, ϑ₂, ϑ₃)` of the preparation network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleSet {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
}

impl AngleSet {
    /// Angles for the universal cloner.
    pub fn universal() -> Self {
        let t2 = -(0.5 - 2f64.sqrt() / 3.0).sqrt().asin();
        Self {
            theta1: FRAC_PI_8,
            theta2: t2,
            theta3: FRAC_PI_8,
        }
    }

    /// Angles for the optimal phase-covariant cloner on `equator`.
    pub fn phase_covariant(equator: Equator) -> Self {
        match equator {
            Equator::Xy => {
                let t1 = (0.5 - 1.0 / (2.0 * 3f64.sqrt())).sqrt().asin();
                let t2 = -(0.5 - 3f64.sqrt() / 4.0).sqrt().asin();
                Self {
                    theta1: t1,
                    theta2: t2,
                    theta3: t1,
                }
            }
            Equator::Xz => {
                let t1 = (0.5 - 0.125f64.sqrt()).sqrt().asin();
                Self {
                    theta1: t1,
                    theta2: 0.0,
                    theta3: t1,
                }
            }
        }
    }
}

pub fn pc_angles(equator: Equator) -> AngleSet {
    AngleSet::phase_covariant(equator)
}

pub fn uqcm_angles() -> AngleSet {
    AngleSet::universal()
}

/// `R₂(ϑ₃) P₃₂ R₃(ϑ₂) P₂₃ R₂(ϑ₁)` on the blanks, as a two-qubit network
/// (qubit 0 = `a₂`, qubit 1 = `a₃`).
pub fn preparation_network(angles: &AngleSet) -> GateNetwork {
    let mut net = GateNetwork::new(2);
    for g in [
        Gate::Rotation {
            target: 0,
            angle: angles.theta1,
        },
        Gate::Cnot {
            control: 0,
            target: 1,
        },
        Gate::Rotation {
            target: 1,
            angle: angles.theta2,
        },
        Gate::Cnot {
            control: 1,
            target: 0,
        },
        Gate::Rotation {
            target: 0,
            angle: angles.theta3,
        },
    ] {
        net.push(g).expect("static gates are valid");
    }
    net
}

/// Runs the preparation network on `|00⟩`.
pub fn prepare_state(angles: &AngleSet) -> Ket {
    preparation_network(angles)
        .apply(&Ket::basis(2, 0).expect("valid basis state"))
        .expect("width matches")
}

/// Preparation ket for an arbitrary `λ`, written out in amplitudes.
///
/// x–z: `q|00⟩ + y(|01⟩ + |10⟩) + qλ|11⟩`; x–y: `c₁|00⟩ + c₂(|01⟩ + |10⟩)`.
/// The gate network reaches these only for the angle sets above; this form
/// lets [`copy_circuit`] run for every `λ`.
pub fn preparation_ket(equator: Equator, lambda: Lambda) -> Ket {
    let amps = match equator {
        Equator::Xz => {
            let (q, y) = (lambda.q(), lambda.y());
            [q, y, y, q * lambda.value()]
        }
        Equator::Xy => {
            let (c1, c2) = xy_coefficients(lambda);
            [c1, c2, c2, 0.0]
        }
    };
    Ket::from_normalized(amps.iter().map(|&a| C64::new(a, 0.0)).collect())
}

/// `P_{a₃a₁} P_{a₂a₁} P_{a₁a₃} P_{a₁a₂}` on a three-qubit register, the
/// rightmost gate acting first.
pub fn copying_network() -> GateNetwork {
    let mut net = GateNetwork::new(3);
    for (control, target) in [(0, 1), (0, 2), (1, 0), (2, 0)] {
        net.push(Gate::Cnot { control, target })
            .expect("static gates are valid");
    }
    net
}

/// Runs the copier on `input ⊗ prep`. Copies appear in qubits 1 and 2.
pub fn copy_circuit(input: &Ket, prep: &Ket) -> Result<Ket> {
    if input.n_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: input.dim(),
        });
    }
    if prep.n_qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: prep.dim(),
        });
    }
    copying_network().apply(&input.tensor(prep))
}

/// Network configurations with closed-form angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetworkConfig {
    Universal,
    PhaseCovariantXz,
    PhaseCovariantXy,
}

impl NetworkConfig {
    pub const ALL: [NetworkConfig; 3] = [
        NetworkConfig::Universal,
        NetworkConfig::PhaseCovariantXz,
        NetworkConfig::PhaseCovariantXy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NetworkConfig::Universal => "uqcm",
            NetworkConfig::PhaseCovariantXz => "pc-xz",
            NetworkConfig::PhaseCovariantXy => "pc-xy",
        }
    }

    pub fn angles(self) -> AngleSet {
        match self {
            NetworkConfig::Universal => AngleSet::universal(),
            NetworkConfig::PhaseCovariantXz => AngleSet::phase_covariant(Equator::Xz),
            NetworkConfig::PhaseCovariantXy => AngleSet::phase_covariant(Equator::Xy),
        }
    }

    pub fn equator(self) -> Equator {
        match self {
            NetworkConfig::Universal | NetworkConfig::PhaseCovariantXz => Equator::Xz,
            NetworkConfig::PhaseCovariantXy => Equator::Xy,
        }
    }

    pub fn lambda(self) -> Lambda {
        match self {
            NetworkConfig::Universal => Lambda::universal(),
            _ => Lambda::optimal(),
        }
    }
}

/// Agreement between the gate network and the direct transformation over an
/// angle grid.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkComparison {
    pub equator: Equator,
    pub lambda: f64,
    pub grid: usize,
    /// Max trace distance between the two-copy states and between the
    /// leftover single-qubit states of the two routes.
    pub max_deviation: f64,
    /// Max trace distance between the two network copies.
    pub copy_asymmetry: f64,
    pub fidelity_min: f64,
    pub fidelity_max: f64,
}

impl NetworkComparison {
    pub fn fidelity_spread(&self) -> f64 {
        self.fidelity_max - self.fidelity_min
    }
}

/// `grid` evenly spaced angles in `[0, 2π)`.
pub fn angle_grid(grid: usize) -> impl Iterator<Item = f64> {
    (0..grid).map(move |i| TAU * i as f64 / grid as f64)
}

/// Compares the network built from `angles` against the direct map at
/// `lambda` on `equator`.
///
/// The network's `(a₂, a₃)` is matched to the direct `(a₁, a₂)`, and the
/// network's `a₁` to the direct ancilla.
pub fn network_vs_direct(
    angles: &AngleSet,
    equator: Equator,
    lambda: Lambda,
    grid: usize,
) -> Result<NetworkComparison> {
    if grid == 0 {
        return Err(Error::InvalidParameter("empty angle grid".into()));
    }
    let prep = prepare_state(angles);
    let mut out = NetworkComparison {
        equator,
        lambda: lambda.value(),
        grid,
        max_deviation: 0.0,
        copy_asymmetry: 0.0,
        fidelity_min: f64::INFINITY,
        fidelity_max: f64::NEG_INFINITY,
    };
    for angle in angle_grid(grid) {
        let state = EquatorialState::new(equator, angle);
        let input = state.ket();
        let net = copy_circuit(&input, &prep)?;
        let direct = match equator {
            Equator::Xz => cloners::clone_1to2_xz(lambda, &state)?,
            Equator::Xy => cloners::clone_1to2_xy(lambda, &state)?,
        };
        let pair = net
            .reduced_density(&[1, 2])?
            .trace_distance(&direct.reduced_density(&[0, 1])?)?;
        let rest = net
            .reduced_density(&[0])?
            .trace_distance(&direct.reduced_density(&[2])?)?;
        let c1 = net.reduced_density(&[1])?;
        let c2 = net.reduced_density(&[2])?;
        let f = fidelity_pure(&input, &c1)?;
        out.max_deviation = out.max_deviation.max(pair).max(rest);
        out.copy_asymmetry = out.copy_asymmetry.max(c1.trace_distance(&c2)?);
        out.fidelity_min = out.fidelity_min.min(f);
        out.fidelity_max = out.fidelity_max.max(f);
    }
    Ok(out)
}

/// [`network_vs_direct`] for one of the fixed configurations.
pub fn verify_config(config: NetworkConfig, grid: usize) -> Result<NetworkComparison> {
    network_vs_direct(&config.angles(), config.equator(), config.lambda(), grid)
}
