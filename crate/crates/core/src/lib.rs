//! Stationary age-of-information (AoI) analysis for an M/GI/1/2 queue whose
//! arrivals either preempt the in-service message or push the waiting message
//! out of the queue, depending on how much service the in-service message has
//! already received.
//!
//! An arrival finding the server busy preempts (restarts the server with the
//! new message) when the elapsed service time is at most a threshold `theta`,
//! and otherwise replaces the single waiting slot. `theta = 0` recovers the
//! non-preemptive queue-pushout system, `theta = inf` the bufferless
//! preemptive one.
//!
//! The crate computes the Laplace transform of the stationary AoI by embedding
//! the queue at successful departure epochs (a Markov-renewal chain with an
//! i.i.d. Bernoulli occupancy sequence) and applying Palm inversion over a
//! cycle. From the transform it extracts the mean, tail probabilities via
//! Euler-summation numerical inversion, and the AoI-minimizing threshold. An
//! independent event-driven simulator of the same policies provides
//! empirical cross-checks for every analytic quantity.
//!
//! Module map:
//! - [`dist`]: service-time laws (atoms + exponential components) with exact
//!   transform algebra, plus the model parameters.
//! - [`kernels`]: embedded-chain constants and the conditional cycle/age
//!   transforms per occupancy transition.
//! - [`aoi`]: assembly of the stationary AoI transform and its moments.
//! - [`inversion`]: tail probabilities by numerical transform inversion.
//! - [`optimize`]: threshold sweeps and golden-section refinement.
//! - [`sim`]: the event-driven simulator (all policies, empirical kernels,
//!   common-random-number comparisons).
//!
//! The analytic core is `no_std`-compatible (requires `alloc`); disable the
//! default `std` feature for embedded use.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod aoi;
mod diff;
pub mod dist;
mod error;
pub mod inversion;
pub mod kernels;
pub mod optimize;
pub mod sim;

pub use error::Error;

/// Complex argument type accepted by every transform in the crate.
pub type Complex = num_complex::Complex64;
