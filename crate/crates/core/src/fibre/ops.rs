use super::eval::{evaluate, spider_tensor};
use super::{FibreContext, FibreError, FibreResult};
use crate::diagram::{Color, Diagram};
use crate::tensor::Tensor;

fn require_square(a: &Tensor, ctx: &FibreContext) -> FibreResult<()> {
    if a.slot() != (1, 1) || a.dim() != ctx.leg_dim() {
        return Err(FibreError::Shape(format!(
            "expected a (1,1) map on dimension {}, got ({},{}) on {}",
            ctx.leg_dim(),
            a.n_lower(),
            a.n_upper(),
            a.dim()
        )));
    }
    Ok(())
}

/// Schur product `m (A ⊗ B) m†`.
pub fn schur(a: &Tensor, b: &Tensor, ctx: &FibreContext) -> FibreResult<Tensor> {
    require_square(a, ctx)?;
    require_square(b, ctx)?;
    let m = spider_tensor(ctx, Color::Black, 2, 1)?;
    Ok(m.compose(&a.tensor(b)?)?.compose(&m.dagger())?)
}

/// Conjugate `A* = (id ⊗ R†)(id ⊗ A† ⊗ id)(R ⊗ id)`.
pub fn conjugate(a: &Tensor, ctx: &FibreContext) -> FibreResult<Tensor> {
    require_square(a, ctx)?;
    let cup = evaluate(&Diagram::cup(), ctx)?;
    let id = Tensor::identity(ctx.leg_dim(), 1)?;
    let top = id.tensor(&cup.dagger())?;
    let middle = id.tensor(&a.dagger())?.tensor(&id)?;
    let bottom = cup.tensor(&id)?;
    Ok(top.compose(&middle)?.compose(&bottom)?)
}
