//! Explicit Berry-Esseen bounds for sequences that converge mod-stable, together
//! with the numerical machinery needed to check them: stable laws and their
//! inversion, zones of control, cumulant bounds, dependency graphs, finite
//! Markov chains, a catalogue of worked models and Kolmogorov distance estimators.

pub mod cli;
pub mod cumulant_core;
pub mod dependency_graphs;
pub mod empirics;
pub mod error;
pub mod markov_chains;
pub mod model_zoo;
pub mod quad;
pub mod rng;
pub mod smoothing;
pub mod special;
pub mod stable_laws;
pub mod zone_control;

pub use error::{Error, Result};
pub use stable_laws::StableLaw;
pub use zone_control::ZoneOfControl;
