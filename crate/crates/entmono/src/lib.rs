//! Entanglement measures and monogamy scans for small quantum systems.
//!
//! `entmono` computes entanglement measures on few-qubit states — entropy of
//! entanglement, Wootters concurrence, entanglement of formation (closed form
//! and convex-roof minimization), relative entropy of entanglement — and
//! verifies monogamy inequalities over seeded random ensembles. Everything is
//! deterministic given explicit seeds, so scan outputs are reproducible byte
//! for byte.
//!
//! ## Modules
//!
//! - [`linalg`] — dense complex matrices, tensor products, partial traces,
//!   a cyclic Jacobi Hermitian eigensolver, functional calculus.
//! - [`states`] — validated pure/mixed states, Schmidt decomposition,
//!   canonical constructors and seeded samplers, the JSON state file format.
//! - [`measures`] — the entanglement measures and the derivative-free
//!   optimizers behind the convex roof and the separable minimization.
//! - [`monogamy`] — CKW checks, alpha-power search, equality-condition
//!   probes, bound functions and scan reports (CSV/JSON).
//! - [`protocols`] — projective measurements, teleportation and LOCC state
//!   preparation with full transcripts.
//! - [`cli`] — the `entmono` binary: `compute`, `scan`, `teleport`,
//!   `prepare`, `random`, `plotdata`.
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! - **`entanglement_basics`** — states, Schmidt form, entropy of entanglement
//! - **`concurrence_eof`** — Wootters concurrence and both routes to the
//!   entanglement of formation
//! - **`ckw_monogamy`** — the CKW inequality scan and the state that breaks
//!   the naive sum inequality
//! - **`alpha_monogamy`** — the power-mean monogamy relation and its
//!   empirical exponents
//! - **`teleportation`** — exhaustive and sampled teleportation runs
//! - **`locc_preparation`** — converting a shared pair into arbitrary states
//! - **`relative_entropy`** — relative entropy, its separable minimization
//!   and the entropy continuity bound
//! - **`region_plots`** — CSV plot tables for the measure regions and curves
//!
//! ```bash
//! cargo run --release -p entmono --example ckw_monogamy
//! ```

pub mod cli;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod monogamy;
pub mod protocols;
pub mod states;

pub use error::{Error, Result};
