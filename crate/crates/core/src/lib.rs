//! Pauli-error algebra, CSS codes, fault-tolerant gadgets, and threshold
//! estimation engines.
//!
//! The crate is organised around a handful of building blocks:
//!
//! - [`pauli`]: phased Pauli operators in binary symplectic form, Clifford
//!   conjugation, and error propagation through circuits, with a dense-matrix
//!   oracle for small systems.
//! - [`codes`]: classical linear codes, CSS constructors (including the
//!   `[[7,1,3]]` preset), syndrome decoding, and graph-form reduction of
//!   stabilizer generators.
//! - [`channels`]: stochastic Pauli error models and their presets, ancilla
//!   error derivation, and seeded error sampling.
//! - [`gadgets`]: fault-tolerant circuit constructors (cat and logical-plus
//!   preparation, Shor/Steane/Knill extraction, the tailored symmetric suite,
//!   exRec assembly) plus exhaustive fault sweeps and malignant-pair counting.
//! - [`analytic`]: the single-strand bookkeeping method: truncated symbolic
//!   error polynomials, maximal strand-error expressions, threshold
//!   coefficients, and finite-code bounds.
//! - [`montecarlo`]: seeded Monte-Carlo estimation of encoded error rates and
//!   thresholds for Steane-style procedures on the `[[7,1,3]]` code.
//! - [`graphstate`]: compressed graph-state construction scheduling, tracking
//!   construction, measurement-record filters, and scale-up statistics.
//! - [`viterbi`]: generic maximum-likelihood path decoding on staged
//!   trellises.
//!
//! Everything here is deterministic given a seed; all randomness flows
//! through caller-provided RNGs. The crate is `no_std`-compatible (with
//! `alloc`); IO, CLI, and parallel drivers live in the companion `ftlab-cli`
//! crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analytic;
pub mod bits;
pub mod channels;
pub mod codes;
pub mod gadgets;
pub mod graphstate;
pub mod montecarlo;
pub mod pauli;
pub mod viterbi;
