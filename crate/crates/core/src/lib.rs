//! Pseudospectral calculus for Schrödinger operators `H = -Δ + V` with rough
//! potentials on a periodic box.
//!
//! The crate provides:
//!
//! * [`lattice`] — periodic grids, complex fields, FFT-based Fourier
//!   multipliers, Lebesgue/Sobolev norms and the dyadic partition of unity.
//! * [`potentials`] — rough test potentials and their norm functionals
//!   (global Kato norm, dyadic-shell `B` norm, weak Lebesgue norms).
//! * [`spectral`] — functional calculus `m(√H)` by dense eigendecomposition
//!   or matrix-free Chebyshev expansion, perturbed Littlewood-Paley
//!   projections, the smoothed spectral truncation (`I`-operator) and the
//!   Fourier-vs-spectral difference operators.
//! * [`dynamics`] — Strang-split time evolution of the cubic defocusing NLS
//!   with exact sub-flows, plus conserved/almost-conserved diagnostics.
//! * [`experiments`] — decay-rate fits, ratio boundedness probes, coercivity
//!   and resonance detection, Lippmann-Schwinger solves and the
//!   almost-conservation sweep.
//! * [`cli`] — a JSON-config driven runner that persists CSV/JSON/SVG
//!   artifacts deterministically.

pub mod cli;
pub mod dynamics;
mod error;
pub mod experiments;
pub mod lattice;
pub mod potentials;
pub mod spectral;

pub use error::{Error, Result};
