//! Decide whether a finite set of quantum observables (POVMs) can be told
//! apart using `n` runs of an unlabeled measurement device, and when they
//! can, find probe states and success probabilities.
//!
//! The device is unlabeled in two senses: we do not know which observable
//! it implements, and its outcome labels carry no meaning, so only the
//! *coincidence structure* of an outcome sequence (which runs produced equal
//! outcomes) is informative. Outcome sequences are therefore grouped into
//! relabeling orbits ([`outcomes::OutcomePattern`]) and every decision rule
//! is a map from orbits to conclusions.
//!
//! The main entry points are:
//!
//! * [`discrimination::check_perfect_discrimination`] — search for a probe
//!   state that identifies the observable with certainty,
//! * [`unambiguous::optimize`] — maximize the probability of an error-free
//!   conclusion when perfect discrimination is impossible,
//! * [`unambiguous::closed_form_identification`] — the two-shot qubit
//!   closed form, used to cross-check the optimizer.

pub mod discrimination;
pub mod operator;
pub mod outcomes;
pub mod povm;
pub mod unambiguous;

mod error;

pub use discrimination::{
    check_perfect_discrimination, check_perfect_discrimination_with, Assignment,
    DiscriminationResult, SearchOptions,
};
pub use error::Error;
pub use operator::{EigenResult, Operator, StateVector};
pub use povm::{BlochObservable, Povm};
pub use unambiguous::{
    optimize, optimize_with, IdentificationResult, Mode, RegionMap, TaskSpec,
};
