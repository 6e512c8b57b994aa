//! Hadamard matrices, their symmetries and Hadamard graphs.

use thiserror::Error;

use crate::fibre::FibreError;
use crate::tensor::TensorError;

mod equivalence;
mod graph;
mod matrix;
mod quantum;
mod signed;
mod so4;

pub use equivalence::{compare, find_equivalence, four_profile, Equivalence, MAX_EQUIVALENCE_SIZE};
pub use graph::{
    block_permutation, hadamard_graph, is_permutation_matrix, magic_from_automorphism, matmul, split_signs,
    HadamardGraphData, Matrix,
};
pub use matrix::{is_hadamard, HadamardMatrix};
pub use quantum::{graph_axioms, hopf_sides, quantum_hadamard_graph, transpose_map, AxiomCheck, GraphAxioms, QuantumHadamard};
pub use signed::{
    automorphism_group, automorphism_group_brute_force, companion, equivalent_transform, is_group, Automorphism,
    SignedPermutation, MAX_AUT_SIZE,
};
pub use so4::{all_distinct, fourier, so4_check, tilde_crossing, two_i_minus_j};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HadamardError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("entries must be +1 or -1")]
    BadEntry,
    #[error("rows are not mutually orthogonal")]
    NotOrthogonal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not 3 mod 4")]
    WrongResidue(u64),
    #[error("size bound exceeded: {0}")]
    TooLarge(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not an automorphism")]
    NotAutomorphism,
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Fibre(#[from] FibreError),
}

pub type HadamardResult<T> = Result<T, HadamardError>;
