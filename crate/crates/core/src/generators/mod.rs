//! Seeded instance construction: random regular graphs, perturbed unions of
//! regular graphs, and the hand-drawn example families.

mod figures;
mod random;

use thiserror::Error;

pub use figures::{figure_family, figure_script, Family, FIG2_DEFAULT_REPEATS, FIG9_SIDE};
pub use random::{
    hypothesis_instance, hypothesis_requirement, random_regular, union_plus_perturbation,
    union_plus_perturbation_capped, PerturbedInstance, MAX_RESTARTS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("unknown figure family {0:?}")]
    UnknownFamily(String),
    #[error("size {size} out of range {min}..={max} for family {family}")]
    SizeOutOfRange {
        family: &'static str,
        size: usize,
        min: usize,
        max: usize,
    },
    #[error("no simple {d}-regular graph on {n} vertices")]
    InfeasibleDegreeSequence { n: usize, d: usize },
    #[error("could not repair the pairing into a simple graph")]
    PairingStuck,
    #[error("only {applied} of {requested} modifications could be applied")]
    NotEnoughModifications { requested: usize, applied: usize },
    #[error("family {0} has no stored script")]
    NoScript(&'static str),
}
