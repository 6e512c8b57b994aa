use crate::diagram::{Color, Diagram};
use crate::fibre::{conjugate, evaluate, schur, spider_tensor, FibreContext, FibreError, FibreResult, FiniteQuantumSpace};
use crate::scalar::ExactScalar;
use crate::tensor::Tensor;

use super::HadamardMatrix;

/// A map `Ĥ` on `l²(X)` meant to satisfy `Ĥ = Ĥ*`, `Ĥ∙Ĥ = ηη†` and
/// `ĤĤ† = δ² id = Ĥ†Ĥ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumHadamard {
    pub space: FiniteQuantumSpace,
    pub map: Tensor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub self_conjugate: bool,
    pub schur_square: bool,
    pub unitary: bool,
}

impl AxiomCheck {
    pub fn all(&self) -> bool {
        self.self_conjugate && self.schur_square && self.unitary
    }
}

/// `n · swap` on `l²(M_n) = C^n ⊗ C^n`.
pub fn transpose_map(n: usize) -> FibreResult<Tensor> {
    Ok(Tensor::from_fn(1, 1, n * n, ExactScalar::from_int(n as i64), |ix| {
        let (a, b) = (ix[0] / n, ix[0] % n);
        i64::from(ix[1] == b * n + a)
    })?)
}

impl QuantumHadamard {
    pub fn new(space: FiniteQuantumSpace, map: Tensor) -> FibreResult<Self> {
        if map.slot() != (1, 1) || map.dim() != space.dim() {
            return Err(FibreError::Shape(format!("map must be (1,1) on dimension {}", space.dim())));
        }
        Ok(QuantumHadamard { space, map })
    }

    /// The transposition example on `M_n`.
    pub fn transpose(n: usize) -> FibreResult<Self> {
        Self::new(FiniteQuantumSpace::matrix(n)?, transpose_map(n)?)
    }

    /// A classical Hadamard matrix over `N` points.
    pub fn classical(h: &HadamardMatrix) -> FibreResult<Self> {
        Self::new(FiniteQuantumSpace::classical(h.size())?, h.to_tensor()?)
    }

    /// Context with white spiders built from this map.
    pub fn context(&self) -> FibreContext {
        FibreContext::Quantum { space: self.space.clone(), hadamard: Some(self.map.clone()) }
    }

    fn plain(&self) -> FibreContext {
        FibreContext::Quantum { space: self.space.clone(), hadamard: None }
    }

    /// `J = ηη†`.
    pub fn all_ones(&self) -> FibreResult<Tensor> {
        let eta = spider_tensor(&self.plain(), Color::Black, 0, 1)?;
        Ok(eta.compose(&eta.dagger())?)
    }

    pub fn axioms(&self) -> FibreResult<AxiomCheck> {
        let ctx = self.plain();
        let h = &self.map;
        let delta_sq = ExactScalar::from_int(self.space.dim() as i64);
        let id = Tensor::identity(self.space.dim(), 1)?.scaled(&delta_sq);
        Ok(AxiomCheck {
            self_conjugate: conjugate(h, &ctx)? == *h,
            schur_square: schur(h, h, &ctx)? == self.all_ones()?,
            unitary: h.compose(&h.dagger())? == id && h.dagger().compose(h)? == id,
        })
    }

    /// `(J ± Ĥ) / 2`.
    pub fn sign_parts(&self) -> FibreResult<(Tensor, Tensor)> {
        let j = self.all_ones()?;
        let half = ExactScalar::from_ratio(1, 2);
        Ok((j.add(&self.map)?.scaled(&half), j.sub(&self.map)?.scaled(&half)))
    }

    /// The space `Y = X ⊔ X ⊔ X ⊔ X` carrying the quantum Hadamard graph.
    pub fn graph_space(&self) -> FibreResult<FibreContext> {
        let blocks = self.space.blocks().iter().cycle().take(4 * self.space.blocks().len()).cloned();
        let sizes: Vec<usize> = blocks.map(|(n, _)| n).collect();
        Ok(FibreContext::Quantum { space: FiniteQuantumSpace::tracial(&sizes)?, hadamard: None })
    }
}

/// Places a `(1,1)` block at block row `r`, block column `c` of a `4 × 4` grid.
fn embed(block: &Tensor, r: usize, c: usize) -> FibreResult<Tensor> {
    let d = block.dim();
    Ok(Tensor::from_fn(1, 1, 4 * d, block.scale().clone(), |ix| {
        let (inp, out) = (ix[0], ix[1]);
        if inp / d == c && out / d == r {
            block.raw(&[inp % d, out % d])
        } else {
            0
        }
    })?)
}

/// The adjacency `A` (or `A₀`) on `l²(Y) = C⁴ ⊗ l²(X)`.
pub fn quantum_hadamard_graph(qh: &QuantumHadamard, looped: bool) -> FibreResult<Tensor> {
    let (hp, hm) = qh.sign_parts()?;
    let (hpd, hmd) = (hp.dagger(), hm.dagger());
    let grid: [(usize, usize, &Tensor); 8] = [
        (0, 2, &hp),
        (0, 3, &hm),
        (1, 2, &hm),
        (1, 3, &hp),
        (2, 0, &hpd),
        (2, 1, &hmd),
        (3, 0, &hmd),
        (3, 1, &hpd),
    ];
    let d = qh.space.dim();
    let mut a = Tensor::zeros(1, 1, 4 * d)?;
    for (r, c, t) in grid {
        a = a.add(&embed(t, r, c)?)?;
    }
    if looped {
        let id = Tensor::identity(d, 1)?;
        a = a.add(&embed(&id, 0, 0)?)?.add(&embed(&id, 1, 1)?)?;
    }
    Ok(a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphAxioms {
    pub idempotent: bool,
    pub self_conjugate: bool,
    pub self_adjoint: bool,
    /// `A ∙ I = 0`.
    pub loopless: bool,
}

pub fn graph_axioms(qh: &QuantumHadamard, a: &Tensor) -> FibreResult<GraphAxioms> {
    let y = qh.graph_space()?;
    let id = Tensor::identity(a.dim(), 1)?;
    Ok(GraphAxioms {
        idempotent: schur(a, a, &y)? == *a,
        self_conjugate: conjugate(a, &y)? == *a,
        self_adjoint: a.dagger() == *a,
        loopless: schur(a, &id, &y)?.is_zero(),
    })
}

/// `F_H` of the Hopf law at `(1,1)`: both sides, for a direct comparison.
pub fn hopf_sides(ctx: &FibreContext) -> FibreResult<(Tensor, Tensor)> {
    use crate::diagram::compose;
    let lhs = evaluate(&compose(&Diagram::white_spider(2, 1), &Diagram::black_spider(1, 2)), ctx)?;
    let rhs = evaluate(&compose(&Diagram::white_spider(0, 1), &Diagram::black_spider(1, 0)), ctx)?
        .scaled(&ExactScalar::from_ratio(1, ctx.loop_value() as i64));
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::graph::hadamard_graph;

    #[test]
    fn transposition_axioms() {
        for n in [1usize, 2, 3] {
            let qh = QuantumHadamard::transpose(n).unwrap();
            assert!(qh.axioms().unwrap().all(), "n={n}");
        }
        let qh = QuantumHadamard::transpose(2).unwrap();
        let hh = qh.map.compose(&qh.map.dagger()).unwrap();
        assert_eq!(hh, Tensor::identity(4, 1).unwrap().scaled(&ExactScalar::from_int(4)));
    }

    #[test]
    fn non_examples() {
        // the identity is self-conjugate but its Schur square is not J
        let space = FiniteQuantumSpace::matrix(2).unwrap();
        let qh = QuantumHadamard::new(space, Tensor::identity(4, 1).unwrap().scaled(&ExactScalar::from_int(2))).unwrap();
        let ax = qh.axioms().unwrap();
        assert!(!ax.schur_square);
        assert!(ax.unitary);
        assert!(QuantumHadamard::new(FiniteQuantumSpace::matrix(2).unwrap(), Tensor::identity(2, 1).unwrap()).is_err());
    }

    #[test]
    fn classical_axioms() {
        for h in [HadamardMatrix::walsh(3).unwrap(), HadamardMatrix::paley_type1(7).unwrap()] {
            assert!(QuantumHadamard::classical(&h).unwrap().axioms().unwrap().all());
        }
    }

    #[test]
    fn classical_graph_reduces() {
        let h = HadamardMatrix::paley_type1(3).unwrap();
        let qh = QuantumHadamard::classical(&h).unwrap();
        for looped in [false, true] {
            let a = quantum_hadamard_graph(&qh, looped).unwrap();
            let g = hadamard_graph(&h, looped);
            assert_eq!(a, Tensor::from_matrix(g.adjacency(), ExactScalar::one()).unwrap());
        }
    }

    #[test]
    fn matrix_graph_axioms() {
        let qh = QuantumHadamard::transpose(2).unwrap();
        let a = quantum_hadamard_graph(&qh, false).unwrap();
        assert_eq!(a.dim(), 16);
        let ax = graph_axioms(&qh, &a).unwrap();
        assert_eq!(ax, GraphAxioms { idempotent: true, self_conjugate: true, self_adjoint: true, loopless: true });
        let a0 = quantum_hadamard_graph(&qh, true).unwrap();
        let ax0 = graph_axioms(&qh, &a0).unwrap();
        assert!(ax0.idempotent && ax0.self_conjugate && ax0.self_adjoint);
        assert!(!ax0.loopless);
    }

    #[test]
    fn hopf_law_for_transposition() {
        for n in [2usize, 3] {
            let (l, r) = hopf_sides(&QuantumHadamard::transpose(n).unwrap().context()).unwrap();
            assert_eq!(l, r);
        }
    }
}
