//! Exact thermal-state witnesses for the all-to-all N-qubit Heisenberg model
//!
//! ```text
//! H = (J/4) Σ_{i≠j} (σx σx + σy σy + Δ σz σz) + (B/2) Σ σz
//!   = J (Sx² + Sy² + Δ Sz²) + B Sz  + const
//! ```
//!
//! The Hamiltonian only depends on the collective spin, so the thermal state
//! is solved sector by sector ([`collective`]). Every qubit pair sees the same
//! two-qubit X-state ([`reduced`]), on which the CHSH violation measure, the
//! concurrence and the entropic disorder measure are evaluated
//! ([`witnesses`]). [`sweep`] scans temperature, field or λ/T and locates
//! threshold points; [`figures`] holds the five canonical scenarios.
//!
//! Two independent routes back every number: the N = 2 closed forms in
//! [`closed_form`] and the full 2^N exact diagonalization in [`oracle`].

pub mod cli;
pub mod closed_form;
pub mod collective;
pub mod csv_out;
mod error;
pub mod figures;
pub mod linalg;
pub mod oracle;
pub mod reduced;
pub mod sweep;
pub mod verify;
pub mod witnesses;

pub use collective::{build_sector_table, ModelParams, SectorLevel, SectorTable};
pub use error::{Error, Result};
pub use reduced::{CorrelationMatrix, DensityMatrix2, DensityMatrix4, XStateElements};
pub use sweep::{
    evaluate_point, find_threshold, run_sweep, Axis, Quantity, SweepRow, SweepSpec, ThresholdOutcome, ThresholdQuery,
    Witness,
};
pub use witnesses::{OptimalSettings, WitnessReport};
