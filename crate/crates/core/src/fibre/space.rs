use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{FibreError, FibreResult};

/// A finite quantum space `⊕ M_{n_i}` with the state `ψ(a) = Σ Tr(Q_i a_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteQuantumSpace {
    blocks: Vec<(usize, Vec<BigRational>)>,
    delta_sq: BigRational,
}

impl FiniteQuantumSpace {
    /// Validates positivity, normalization `ψ(1) = 1` and the δ-form
    /// condition `Tr(Q_i⁻¹) = δ²` for every block.
    pub fn new(blocks: Vec<(usize, Vec<BigRational>)>) -> FibreResult<Self> {
        if blocks.is_empty() {
            return Err(FibreError::InvalidSpace("no blocks".into()));
        }
        let mut delta_sq: Option<BigRational> = None;
        let mut total = BigRational::zero();
        for (i, (n, q)) in blocks.iter().enumerate() {
            if *n == 0 || q.len() != *n {
                return Err(FibreError::InvalidSpace(format!("block {i} needs {n} weights")));
            }
            if q.iter().any(|w| *w <= BigRational::zero()) {
                return Err(FibreError::InvalidSpace(format!("block {i} has a non-positive weight")));
            }
            total += q.iter().cloned().sum::<BigRational>();
            let inv: BigRational = q.iter().map(|w| w.recip()).sum();
            match &delta_sq {
                None => delta_sq = Some(inv),
                Some(d) if *d != inv => {
                    return Err(FibreError::InvalidSpace(format!("block {i} breaks the δ-form condition")))
                }
                _ => {}
            }
        }
        if !total.is_one() {
            return Err(FibreError::InvalidSpace(format!("state has total weight {total}")));
        }
        Ok(FiniteQuantumSpace { blocks, delta_sq: delta_sq.expect("one block") })
    }

    /// The unique tracial δ-form: `Q_i = n_i / δ²` with `δ² = Σ n_i²`.
    pub fn tracial(sizes: &[usize]) -> FibreResult<Self> {
        let dim: usize = sizes.iter().map(|n| n * n).sum();
        let blocks = sizes
            .iter()
            .map(|&n| (n, vec![BigRational::new(n.into(), dim.into()); n]))
            .collect();
        Self::new(blocks)
    }

    /// `M_n` with its trace.
    pub fn matrix(n: usize) -> FibreResult<Self> {
        Self::tracial(&[n])
    }

    /// `N` classical points.
    pub fn classical(n: usize) -> FibreResult<Self> {
        Self::tracial(&vec![1; n])
    }

    /// `copies` disjoint copies of `M_n`.
    pub fn copies(n: usize, copies: usize) -> FibreResult<Self> {
        Self::tracial(&vec![n; copies])
    }

    pub fn blocks(&self) -> &[(usize, Vec<BigRational>)] {
        &self.blocks
    }

    /// Dimension of `l²(X)`: `Σ n_i²`.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|(n, _)| n * n).sum()
    }

    /// `δ² = η†η`.
    pub fn delta_sq(&self) -> &BigRational {
        &self.delta_sq
    }

    pub fn is_tracial(&self) -> bool {
        let d: BigRational = BigRational::from_integer(self.dim().into());
        self.blocks
            .iter()
            .all(|(n, q)| q.iter().all(|w| *w == BigRational::from_integer((*n).into()) / &d))
    }

    /// `(n, copies)` when the space is tracial with equal block sizes; the
    /// only case with tensors in this crate.
    pub fn uniform(&self) -> Option<(usize, usize)> {
        let n = self.blocks[0].0;
        (self.is_tracial() && self.blocks.iter().all(|(m, _)| *m == n)).then_some((n, self.blocks.len()))
    }

    pub fn is_commutative(&self) -> bool {
        self.blocks.iter().all(|(n, _)| *n == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn tracial_delta() {
        let x = FiniteQuantumSpace::tracial(&[1, 2]).unwrap();
        assert_eq!(x.dim(), 5);
        assert_eq!(x.delta_sq(), &r(5, 1));
        assert!(x.is_tracial());
        assert_eq!(x.uniform(), None);
        assert_eq!(FiniteQuantumSpace::matrix(3).unwrap().uniform(), Some((3, 1)));
        assert_eq!(FiniteQuantumSpace::classical(4).unwrap().delta_sq(), &r(4, 1));
    }

    #[test]
    fn non_tracial_delta_form() {
        // M_2 with Q = diag(1/3, 2/3): Tr Q = 1, Tr Q⁻¹ = 9/2
        let x = FiniteQuantumSpace::new(vec![(2, vec![r(1, 3), r(2, 3)])]).unwrap();
        assert_eq!(x.delta_sq(), &r(9, 2));
        assert!(!x.is_tracial());
        // two blocks whose inverse traces differ
        let bad = FiniteQuantumSpace::new(vec![(1, vec![r(1, 2)]), (1, vec![r(1, 2)])]);
        assert!(bad.is_ok());
        let bad = FiniteQuantumSpace::new(vec![(1, vec![r(1, 3)]), (1, vec![r(2, 3)])]);
        assert!(matches!(bad, Err(FibreError::InvalidSpace(_))));
    }
}
