//! Fibre functors: exact evaluation of diagrams as tensors.
//!
//! Three contexts are supported: the standard interpretation on `C^N`
//! (black spiders only), a classical Hadamard matrix (black and white
//! spiders), and a finite quantum space with an optional quantum Hadamard
//! map.

use thiserror::Error;

use crate::hadamard::HadamardMatrix;
use crate::tensor::{Tensor, TensorError};

mod eval;
mod gram;
mod network;
mod ops;
mod space;
mod span;

pub use eval::{evaluate, evaluate_float, spider_tensor, trace, transpose};
pub use gram::{five_element_basis, gram_det, gram_matrix};
pub use ops::{conjugate, schur};
pub use space::FiniteQuantumSpace;
pub use span::{span_saturate, SpanResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FibreError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("white spiders need a Hadamard datum in this context")]
    MissingHadamard,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid quantum space: {0}")]
    InvalidSpace(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type FibreResult<T> = Result<T, FibreError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FibreContext {
    /// Black spiders as Kronecker deltas on `C^N`.
    Standard(usize),
    /// Black spiders in the standard basis, white spiders in the basis given
    /// by the columns of `H / √N`.
    Classical(HadamardMatrix),
    /// Frobenius structure of `C(X)`; white spiders conjugated by `Ĥ / δ`.
    Quantum { space: FiniteQuantumSpace, hadamard: Option<Tensor> },
}

impl FibreContext {
    /// Dimension of the space a single string carries.
    pub fn leg_dim(&self) -> usize {
        match self {
            FibreContext::Standard(n) => *n,
            FibreContext::Classical(h) => h.size(),
            FibreContext::Quantum { space, .. } => space.dim(),
        }
    }

    /// Value of a closed loop, which is also the `N` of the diagram category.
    pub fn loop_value(&self) -> u64 {
        self.leg_dim() as u64
    }

    pub fn name(&self) -> String {
        match self {
            FibreContext::Standard(n) => format!("standard N={n}"),
            FibreContext::Classical(h) => format!("hadamard N={}", h.size()),
            FibreContext::Quantum { space, hadamard } => {
                let sizes: Vec<String> = space.blocks().iter().map(|(n, _)| n.to_string()).collect();
                let h = if hadamard.is_some() { " with Ĥ" } else { "" };
                format!("quantum blocks [{}]{h}", sizes.join(","))
            }
        }
    }

    /// `(n, copies)` for quantum contexts, `(1, N)` for classical ones.
    pub(crate) fn layout(&self) -> FibreResult<(usize, usize)> {
        match self {
            FibreContext::Quantum { space, .. } => space.uniform().ok_or_else(|| {
                FibreError::Unsupported("tensors need a tracial space with equal block sizes".into())
            }),
            other => Ok((1, other.leg_dim())),
        }
    }

    /// Index of the dual basis vector under the duality `R`.
    pub fn dual_index(&self, i: usize) -> usize {
        match self.layout() {
            Ok((n, _)) if n > 1 => {
                let (beta, p, q) = (i / (n * n), (i / n) % n, i % n);
                (beta * n + q) * n + p
            }
            _ => i,
        }
    }
}
