//! Phase-covariant cloning of equatorial qubits.
//!
//! The crate contains a small state-vector and density-matrix toolkit, the
//! cloning transformations written as isometries on symmetric subspaces, a
//! gate-level copying network, closed-form fidelities with the simulations
//! that check them, and an eigenvalue certificate of optimality for
//! one-to-many cloning.
//!
//! ```
//! use equiclone::{clone_1to2_xz, fidelity_pure, EquatorialState, Lambda};
//!
//! let input = EquatorialState::xz(0.3);
//! let out = clone_1to2_xz(Lambda::optimal(), &input).unwrap();
//! let copy = out.reduced_density(&[0]).unwrap();
//! let f = fidelity_pure(&input.ket(), &copy).unwrap();
//! assert!((f - (0.5 + 0.125f64.sqrt())).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod cloners;
pub mod density;
pub mod error;
pub mod linalg;
pub mod network;
pub mod optimality;
pub mod report;
pub mod state;
pub mod symmetric;

pub type C64 = num_complex::Complex64;

pub use analysis::{
    eta_1m, fidelity_asymptotic, fidelity_closed_1tom, fidelity_closed_ntom, pt_spectrum_closed,
    pt_spectrum_numeric, reduced_forms_check, separability_sweep, simulate_fidelity,
    FidelityReport, PtSpectrum, SeparabilitySweep,
};
pub use cloners::{
    clone_1_to_m, clone_1to2_xy, clone_1to2_xz, clone_n_to_m, isometry_check, n_to_m_map,
    one_to_m_map, one_to_two_xy_map, one_to_two_xz_map, optimal_alphas, triplicate,
    triplicator_map, CloningMap, JointState, Lambda,
};
pub use density::{fidelity_pure, partial_trace, partial_transpose, DensityMatrix, Subsystem};
pub use error::{Error, Result};
pub use linalg::{eigh, eigvalsh, Matrix};
pub use network::{
    copy_circuit, pc_angles, prepare_state, uqcm_angles, verify_config, AngleSet, Gate,
    GateNetwork, NetworkConfig,
};
pub use optimality::{build_a, maximize_eta, optimal_fidelity_via_a, AMatrix, EtaGram};
pub use state::{BlochVector, Equator, EquatorialState, Ket};
pub use symmetric::{binomial, sym_to_full, SymVector};
