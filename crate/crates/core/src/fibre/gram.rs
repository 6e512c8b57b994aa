use num_rational::BigRational;
use num_traits::{One, Zero};

use super::eval::evaluate;
use super::{FibreContext, FibreError, FibreResult};
use crate::diagram::{compose, Diagram};
use crate::scalar::ExactScalar;
use crate::tensor::Tensor;

/// Hilbert–Schmidt Gram matrix `⟨f_i, f_j⟩`.
pub fn gram_matrix(ts: &[Tensor]) -> FibreResult<Vec<Vec<ExactScalar>>> {
    if let Some(first) = ts.first() {
        if let Some(bad) = ts.iter().find(|t| t.slot() != first.slot() || t.dim() != first.dim()) {
            return Err(FibreError::Shape(format!(
                "slot ({},{}) next to ({},{})",
                first.n_lower(),
                first.n_upper(),
                bad.n_lower(),
                bad.n_upper()
            )));
        }
    }
    ts.iter()
        .map(|f| ts.iter().map(|g| Ok(f.inner(g)?)).collect())
        .collect()
}

/// Exact determinant of a rational square matrix.
pub fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for j in c..n {
                let d = &f * &m[c][j];
                m[r][j] -= d;
            }
        }
    }
    det
}

/// Determinant of the Gram matrix. Entries must be rational.
pub fn gram_det(ts: &[Tensor]) -> FibreResult<ExactScalar> {
    let g = gram_matrix(ts)?;
    let rows = g
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    x.as_rational()
                        .cloned()
                        .ok_or_else(|| FibreError::Unsupported(format!("irrational Gram entry {x}")))
                })
                .collect::<FibreResult<Vec<_>>>()
        })
        .collect::<FibreResult<Vec<_>>>()?;
    Ok(ExactScalar::from_rational(rational_det(rows)))
}

/// The `(2,2)` elements `cup∘cap`, identity, black and white 4-valent
/// spiders and the crossing.
pub fn five_element_basis(ctx: &FibreContext) -> FibreResult<Vec<Tensor>> {
    let diagrams = [
        compose(&Diagram::cup(), &Diagram::cap()),
        Diagram::identity(2),
        Diagram::black_spider(2, 2),
        Diagram::white_spider(2, 2),
        Diagram::crossing(),
    ];
    diagrams.iter().map(|d| evaluate(d, ctx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::HadamardMatrix;

    fn formula(n: i64) -> ExactScalar {
        ExactScalar::from_int(n.pow(3) * (n - 1).pow(4) * (n - 2))
    }

    #[test]
    fn identity_gram() {
        let id = Tensor::identity(3, 2).unwrap();
        assert_eq!(gram_det(&[id]).unwrap(), ExactScalar::from_int(9));
    }

    #[test]
    fn five_elements() {
        for (h, n) in [(HadamardMatrix::walsh(1).unwrap(), 2), (HadamardMatrix::walsh(2).unwrap(), 4)] {
            let basis = five_element_basis(&FibreContext::Classical(h)).unwrap();
            assert_eq!(gram_det(&basis).unwrap(), formula(n));
        }
        assert_eq!(formula(4), ExactScalar::from_int(10368));
    }

    #[test]
    fn determinant_by_hand() {
        let r = |a: i64| BigRational::from_integer(a.into());
        let m = vec![vec![r(0), r(2), r(1)], vec![r(1), r(1), r(0)], vec![r(3), r(0), r(1)]];
        // 0(1) - 2(1) + 1(-3) = -5
        assert_eq!(rational_det(m), r(-5));
    }

    #[test]
    fn mismatched_slots() {
        let a = Tensor::identity(2, 1).unwrap();
        let b = Tensor::identity(2, 2).unwrap();
        assert!(matches!(gram_matrix(&[a, b]), Err(FibreError::Shape(_))));
    }
}
