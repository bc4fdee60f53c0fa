//! Finite-horizon combinatorics of subsets of the natural numbers.
//!
//! Everything in this crate works with [`WindowSet`]s: integer sets whose
//! membership is known exactly on a finite window `[0, E)`.  On top of that
//! currency sit largeness classifiers (syndetic / thick / piecewise syndetic
//! at explicit parameters), witness searches, exact generators for a zoo of
//! example sets, a shift-punch simulator, splitters, and a finite-model
//! laboratory for the algebra of upward-closed set families.
//!
//! All predicates here are window-scoped: they decide whether a property
//! holds *on the window at the given parameters*, never whether the infinite
//! set has the property.  Derived sets carry a shrunken effective horizon so
//! that no operation ever extrapolates past what is actually known.

pub mod classify;
pub mod family;
pub mod filters;
pub mod generate;
pub mod partition;
pub mod punch;
pub mod symbolic;
pub mod window;

pub use classify::{SearchResult, Witness, WindowVerdict};
pub use window::{GapProfile, WindowSet};
