//! Causal mediation analysis for rumour-detection classifiers.
//!
//! The crate trains small transformer classifiers over social-media stories
//! (collections of source-tweet threads with a three-class veracity label)
//! and then explains their decisions causally:
//!
//! - **Total effects** — mask a thread's text out of the input and measure
//!   how far the output distribution moves ([`cma::total_effect`]).
//! - **Indirect effects** — splice hidden activations recorded under the
//!   masked run back into the unmodified run, neuron by neuron, and measure
//!   the shift ([`cma::indirect_effect`]).
//! - **Rankings** — aggregate two distance metrics by summing per-metric
//!   ranks to order threads ([`cma::rank_tweets`]) and words
//!   ([`cma::rank_words`]) by causal impact.
//! - **Baselines** — attention aggregation, integrated gradients, a local
//!   ridge surrogate, and a random ranker, all emitting the same ranking
//!   schema ([`baselines`]).
//! - **Evaluation** — turnaround accuracy against gold annotations, the
//!   conditional variant, macro-F1, and Mann-Whitney U significance tests
//!   ([`eval`]).
//!
//! Per-story and per-neuron sweeps run data-parallel with rayon when the
//! `parallel` feature (on by default) is enabled; a sequential fallback
//! compiles without it. Results are identical either way: parallel maps
//! preserve order and reductions happen sequentially.

pub mod baselines;
pub mod cma;
pub mod data;
pub mod eval;
pub mod model;
pub mod par;
pub mod report;

pub use data::{Dataset, Story, SynthConfig, Thread, Tweet, VeracityLabel};
pub use model::{ModelConfig, OptConfig, Parameters, ProbDist, TokenizedEvent};
