//! Lowering of diagrams to integer networks.
//!
//! A string carries `l²(X)` with basis `(β, p, q)`: block `β`, matrix unit
//! `e_pq / √n`. In the classical case (`n = 1`) only `β` is kept. Vertex
//! slots are read as outgoing legs in counter-clockwise order. A black
//! vertex of degree `d` has one block variable and `max(d, 1)` corner
//! variables; slot `s` carries `(β, c_s, c_{s+1})` and the vertex carries the
//! scale `n^{(2-d)/2}`. The duality pairs `(β, p, q)` with `(β, q, p)`.
//! A white vertex is a black core with `Ĥ / δ` applied on every slot.

use std::collections::HashMap;

use super::network::Network;
use super::{FibreContext, FibreError, FibreResult};
use crate::diagram::{Color, Diagram, Endpoint};
use crate::scalar::ExactScalar;
use crate::tensor::Tensor;

type Leg = Vec<usize>;

struct Lowering<'a> {
    ctx: &'a FibreContext,
    n: usize,
    copies: usize,
    net: Network,
    hadamard: Option<Tensor>,
}

impl<'a> Lowering<'a> {
    fn new(ctx: &'a FibreContext) -> FibreResult<Self> {
        let (n, copies) = ctx.layout()?;
        let hadamard = match ctx {
            FibreContext::Classical(h) => Some(h.to_tensor()?),
            FibreContext::Quantum { hadamard, .. } => hadamard.clone(),
            FibreContext::Standard(_) => None,
        };
        if let Some(h) = &hadamard {
            if h.slot() != (1, 1) || h.dim() != ctx.leg_dim() {
                return Err(FibreError::Shape("Hadamard datum must be a (1,1) map on l²(X)".into()));
            }
        }
        Ok(Lowering { ctx, n, copies, net: Network::new(), hadamard })
    }

    fn quantum(&self) -> bool {
        self.n > 1
    }

    fn fresh(&mut self) -> Leg {
        if self.quantum() {
            vec![self.net.var(self.copies), self.net.var(self.n), self.net.var(self.n)]
        } else {
            vec![self.net.var(self.copies)]
        }
    }

    fn dual(&self, leg: &Leg) -> Leg {
        if self.quantum() {
            vec![leg[0], leg[2], leg[1]]
        } else {
            leg.clone()
        }
    }

    fn black(&mut self, degree: usize) -> Vec<Leg> {
        let beta = self.net.var(self.copies);
        if !self.quantum() {
            return vec![vec![beta]; degree];
        }
        let corners: Vec<usize> = (0..degree.max(1)).map(|_| self.net.var(self.n)).collect();
        self.net.scale_by(&ExactScalar::sqrt_power(self.n as u64, 2 - degree as i32));
        (0..degree).map(|s| vec![beta, corners[s], corners[(s + 1) % degree]]).collect()
    }

    fn white(&mut self, degree: usize) -> FibreResult<Vec<Leg>> {
        let h = self.hadamard.clone().ok_or(FibreError::MissingHadamard)?;
        let core = self.black(degree);
        if degree == 0 {
            return Ok(core);
        }
        let dim = self.ctx.leg_dim();
        // Ĥ / δ on each slot, δ = √dim
        let per_slot = &h.scale().clone() * &ExactScalar::sqrt_power(dim as u64, -1);
        let mut legs = Vec::with_capacity(degree);
        for k in core {
            let y = self.fresh();
            let mut vars = y.clone();
            vars.extend(&k);
            // data over (y atoms, core atoms), first atom fastest; leg index
            // is the atoms read most significant first
            let atoms = y.len();
            let radix: Vec<usize> = if atoms == 3 { vec![self.copies, self.n, self.n] } else { vec![dim] };
            let mut data = vec![0i64; dim * dim];
            for yi in 0..dim {
                for ki in 0..dim {
                    let off = digits_offset(yi, &radix) + dim * digits_offset(ki, &radix);
                    data[off] = h.raw(&[ki, yi]);
                }
            }
            self.net.factor(vars, data);
            self.net.scale_by(&per_slot);
            legs.push(y);
        }
        Ok(legs)
    }
}

/// Offset of a leg index inside a factor whose atoms are stored first-fastest
/// while the leg index reads them most-significant-first.
fn digits_offset(x: usize, radix: &[usize]) -> usize {
    let mut digits = vec![0; radix.len()];
    let mut rem = x;
    for (d, &r) in digits.iter_mut().zip(radix).rev() {
        *d = rem % r;
        rem /= r;
    }
    let mut off = 0;
    let mut stride = 1;
    for (d, &r) in digits.iter().zip(radix) {
        off += d * stride;
        stride *= r;
    }
    off
}

fn lower(d: &Diagram, ctx: &FibreContext) -> FibreResult<(Network, Vec<Leg>)> {
    let mut low = Lowering::new(ctx)?;
    let mut slots: HashMap<Endpoint, Leg> = HashMap::new();
    for v in d.vertices() {
        let legs = match v.color {
            Color::Black => low.black(v.degree),
            Color::White => low.white(v.degree)?,
        };
        for (s, leg) in legs.into_iter().enumerate() {
            slots.insert(Endpoint::slot(v.id, s), leg);
        }
    }
    let mut lower_legs: Vec<Option<Leg>> = vec![None; d.n_lower()];
    let mut upper_legs: Vec<Option<Leg>> = vec![None; d.n_upper()];
    for &(a, b) in d.edges() {
        match (a, b) {
            (Endpoint::Slot { .. }, Endpoint::Slot { .. }) => {
                let (x, y) = (slots[&a].clone(), low.dual(&slots[&b]));
                for (u, v) in x.into_iter().zip(y) {
                    low.net.unify(u, v);
                }
            }
            (Endpoint::Slot { .. }, Endpoint::Lower(i)) => lower_legs[i] = Some(slots[&a].clone()),
            (Endpoint::Slot { .. }, Endpoint::Upper(j)) => upper_legs[j] = Some(low.dual(&slots[&a])),
            (Endpoint::Lower(i), Endpoint::Lower(j)) => {
                let x = low.fresh();
                lower_legs[j] = Some(low.dual(&x));
                lower_legs[i] = Some(x);
            }
            (Endpoint::Lower(i), Endpoint::Upper(j)) => {
                let x = low.fresh();
                upper_legs[j] = Some(x.clone());
                lower_legs[i] = Some(x);
            }
            (Endpoint::Upper(i), Endpoint::Upper(j)) => {
                let x = low.fresh();
                upper_legs[j] = Some(low.dual(&x));
                upper_legs[i] = Some(x);
            }
            _ => unreachable!("edges are stored ordered"),
        }
    }
    let dim = ctx.leg_dim() as u64;
    if d.loops() > 0 {
        low.net.scale_by(&ExactScalar::from_int((dim as i64).pow(d.loops() as u32)));
    }
    low.net.scale_by(&d.prefactor().at(ctx.loop_value()));
    let legs = lower_legs.into_iter().chain(upper_legs).map(|l| l.expect("validated diagram")).collect();
    Ok((low.net, legs))
}

/// Exact tensor of a diagram.
pub fn evaluate(d: &Diagram, ctx: &FibreContext) -> FibreResult<Tensor> {
    let (net, legs) = lower(d, ctx)?;
    let dim = ctx.leg_dim();
    let (entries, scale) = net.contract(&legs, dim)?;
    Ok(Tensor::new(d.n_lower(), d.n_upper(), dim, entries, scale)?)
}

/// Floating-point evaluation by direct summation over all index values.
pub fn evaluate_float(d: &Diagram, ctx: &FibreContext) -> FibreResult<Vec<f64>> {
    let (net, legs) = lower(d, ctx)?;
    Ok(net.brute_force_f64(&legs, ctx.leg_dim(), 1 << 24)?)
}

pub fn spider_tensor(ctx: &FibreContext, color: Color, k: usize, l: usize) -> FibreResult<Tensor> {
    evaluate(&Diagram::spider(color, k, l), ctx)
}

fn cup(ctx: &FibreContext) -> FibreResult<Tensor> {
    evaluate(&Diagram::cup(), ctx)
}

/// Transpose through the duality of the context.
pub fn transpose(t: &Tensor, ctx: &FibreContext) -> FibreResult<Tensor> {
    Ok(t.transpose_with(&cup(ctx)?)?)
}

/// Trace through the duality of the context.
pub fn trace(t: &Tensor, ctx: &FibreContext) -> FibreResult<ExactScalar> {
    Ok(t.trace_with(&cup(ctx)?)?)
}

#[cfg(test)]
mod tests;
