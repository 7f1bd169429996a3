//! Exact state-vector simulation and analysis of nonadiabatic quantum
//! annealing on arbitrary k-local Ising problems.
//!
//! The crate centers on annealing protocols whose driver coupling decays as a
//! power of time, `H(t) = H_I - coupling(t) * M`, with either a rank-one
//! projector mixer `M = |psi_0><psi_0|` or a transverse-field mixer
//! `M = sum_k sigma_x^k`. For the projector mixer with a `g/t` coupling the
//! final excitation distribution is known in closed form, which makes these
//! schedules precise benchmarks: the numerical propagator is checked against
//! the exact law, and everything else (finite-range couplings, constrained
//! search sectors, unstructured search, classical annealing baselines) is
//! compared to it.
//!
//! Modules, bottom up:
//!
//! - [`ising`]: diagonal k-local problems, Walsh-Hadamard expansion of term
//!   lists, spectrum statistics, random ensembles, JSON instance files.
//! - [`schedule`]: coupling schedules and their calibration (crossing time,
//!   start time, total duration) against an instance's spectral bandwidth.
//! - [`analytic`]: closed-form final distributions, degenerate and
//!   non-uniform-overlap generalizations, effective temperature, search-time
//!   and hardware-scale estimates.
//! - [`dynamics`]: the Schrodinger propagator (adaptive Dormand-Prince 5(4),
//!   direct or rotating-frame picture), plus two-level unstructured-search
//!   and fixed-magnetization-sector solvers.
//! - [`experiments`]: seeded sweeps over ensembles, power-law exponent fits,
//!   a simulated-annealing baseline, relaxation curves.
//! - [`cli`]: the `qanneal` binary's subcommands and the SVG chart writer.
//!
//! The `examples/` directory is the front door: each file is a small,
//! self-contained study built on the public API.

pub mod analytic;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod ising;
pub mod schedule;

pub use error::{Error, Result};
pub use ising::{BandwidthMode, IsingInstance, IsingTerm, RandomMode};
pub use schedule::{Mixer, Protocol, Schedule};
