//! Fixed inputs shared by the benchmarks.

use spiders::diagram::Diagram;
use spiders::fibre::FibreContext;
use spiders::generate::closed_even_family;
use spiders::hadamard::HadamardMatrix;

pub const SEED: u64 = 2024;

pub fn family(max_edges: usize, count: usize) -> Vec<Diagram> {
    closed_even_family(max_edges, count, SEED)
}

pub fn walsh_context(k: u32) -> FibreContext {
    FibreContext::Classical(HadamardMatrix::walsh(k).expect("walsh sizes are valid"))
}
