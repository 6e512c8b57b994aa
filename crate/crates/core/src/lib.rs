//! Complementary spider diagrams and their exact evaluation.
pub mod diagram;
pub mod fibre;
pub mod generate;
pub mod hadamard;
pub mod partitions;
pub mod report;
pub mod rewrite;
pub mod scalar;
pub mod tensor;
pub mod verify;
pub use diagram::{Color, Diagram, Endpoint, Prefactor};
pub use fibre::{FibreContext, FiniteQuantumSpace};
pub use hadamard::HadamardMatrix;
pub use partitions::{catalan, SetPartition};
pub use report::Report;
pub use scalar::ExactScalar;
pub use tensor::Tensor;
