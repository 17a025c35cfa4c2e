//! Garside-theoretic computations in the braid groups `B_n`.
//!
//! * [`simple`]: permutation braids and the lattice of simple braids.
//! * [`normal_form`]: left normal forms and the group operations on them.
//! * [`genericity`]: the five-piece decomposition and the criteria built on
//!   it, including blocking braids.
//! * [`conjugacy`]: generic quadratic-time rigid conjugates and a conjugacy
//!   solver built on them.
//! * [`census`]: exact counts and uniform sampling of normal forms.
//! * [`experiment`]: Monte Carlo estimation of the proportions above.

pub mod census;
pub mod conjugacy;
pub mod error;
pub mod experiment;
pub mod genericity;
pub mod normal_form;
mod par;
pub mod simple;
pub mod word;

pub use census::{SampleConfig, TransitionGraph};
pub use conjugacy::{
    ConjugacyAnswer, ConjugacyCertificate, FastOutcome, Uniqueness, WitnessPattern,
};
pub use error::{BraidError, Result};
pub use experiment::{ExperimentConfig, ExperimentKind, ExperimentRow};

pub use genericity::{PieceDecomposition, Rigidification, Scheme};
pub use normal_form::NormalForm;
pub use par::Exec;
pub use simple::{GenSet, SimpleBraid};
pub use word::{ArtinWord, Letter};
