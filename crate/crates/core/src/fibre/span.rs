//! Saturation of the span generated by a set of diagrams.
//!
//! Every morphism `(k,l)` is bent into a vector `(0,k+l)` by turning the
//! lower legs up on the left. On vectors the category operations reduce to
//! three moves: cyclic rotation of the legs, reversal (the adjoint), and
//! joining two vectors by capping the last `k` legs of one against the first
//! `k` legs of the other. Tensoring is the join with `k = 0`, and capping two
//! neighbouring legs is a join with the cup. Only linearly independent
//! vectors are kept; moves are applied to every vector when it first enters.

use std::collections::{BTreeMap, VecDeque};

use num_integer::Integer;

use super::eval::evaluate;
use super::{FibreContext, FibreError, FibreResult};
use crate::diagram::Diagram;
use crate::tensor::{checked_pow, Tensor, TensorError};

pub const MAX_LEG_BOUND: usize = 8;

#[derive(Clone, Debug)]
pub struct SpanResult {
    /// Rank at the requested slot.
    pub rank: usize,
    /// Independent tensors at the requested slot.
    pub basis: Vec<Tensor>,
    /// Rank for every total leg count up to the bound.
    pub ranks: BTreeMap<usize, usize>,
}

/// Fraction-free row echelon over the integers, rows kept sorted by pivot.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<i128>)>,
}

fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

impl Echelon {
    /// Reduces `v` and keeps it if it is independent of the stored rows.
    fn insert(&mut self, v: &[i64]) -> FibreResult<bool> {
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (p, row) in &self.rows {
            let c = v[*p];
            if c == 0 {
                continue;
            }
            let a = row[*p];
            let g = a.gcd(&c);
            let (fa, fc) = (a / g, c / g);
            for (x, &r) in v.iter_mut().zip(row) {
                *x = x
                    .checked_mul(fa)
                    .and_then(|y| y.checked_sub(r.checked_mul(fc)?))
                    .ok_or(TensorError::Overflow)?;
            }
            primitive(&mut v);
        }
        match v.iter().position(|&x| x != 0) {
            None => Ok(false),
            Some(p) => {
                let at = self.rows.partition_point(|(q, _)| *q < p);
                self.rows.insert(at, (p, v));
                Ok(true)
            }
        }
    }
}

/// Relabels legs: `f(new index tuple)` returns the old index tuple.
fn relabel(t: &Tensor, k: usize, l: usize, f: impl Fn(&[usize]) -> Vec<usize>) -> FibreResult<Tensor> {
    let scale = t.scale().clone();
    Ok(Tensor::from_fn(k, l, t.dim(), scale, |ix| t.raw(&f(ix)))?)
}

fn bend(t: &Tensor, ctx: &FibreContext) -> FibreResult<Tensor> {
    let (k, l) = t.slot();
    relabel(t, 0, k + l, |w| {
        let mut old: Vec<usize> = (0..k).map(|i| ctx.dual_index(w[k - 1 - i])).collect();
        old.extend_from_slice(&w[k..]);
        old
    })
}

fn unbend(v: &Tensor, k: usize, l: usize, ctx: &FibreContext) -> FibreResult<Tensor> {
    relabel(v, k, l, |x| {
        let mut old: Vec<usize> = (0..k).map(|i| ctx.dual_index(x[k - 1 - i])).collect();
        old.extend_from_slice(&x[k..]);
        old
    })
}

fn rotate(v: &Tensor) -> FibreResult<Tensor> {
    let m = v.n_upper();
    relabel(v, 0, m, |w| (0..m).map(|i| w[(i + m - 1) % m]).collect())
}

fn reverse(v: &Tensor, ctx: &FibreContext) -> FibreResult<Tensor> {
    let m = v.n_upper();
    relabel(v, 0, m, |w| (0..m).map(|i| ctx.dual_index(w[m - 1 - i])).collect())
}

/// Caps leg `a-1-t` of `x` against leg `t` of `y` for `t < k`.
fn join(x: &Tensor, y: &Tensor, k: usize, ctx: &FibreContext) -> FibreResult<Tensor> {
    let (a, b, d) = (x.n_upper(), y.n_upper(), x.dim());
    let fa = checked_pow(d, a - k)?;
    let fb = checked_pow(d, b - k)?;
    let nc = checked_pow(d, k)?;
    // offsets of the contracted legs in x and in y
    let mut cx = Vec::with_capacity(nc);
    let mut cy = Vec::with_capacity(nc);
    let mut digits = vec![0usize; k];
    for _ in 0..nc {
        let (mut ox, mut oy) = (0usize, 0usize);
        // digits[t] is the index on x's leg a-1-t
        for (t, &dig) in digits.iter().enumerate() {
            ox += dig * d.pow((k - 1 - t) as u32);
            oy += ctx.dual_index(dig) * d.pow(t as u32);
        }
        cx.push(ox * fa);
        cy.push(oy);
        for dig in digits.iter_mut() {
            *dig += 1;
            if *dig < d {
                break;
            }
            *dig = 0;
        }
    }
    let (xe, ye) = (x.entries(), y.entries());
    let mut out = vec![0i64; fa * fb];
    let mut acc = vec![0i128; fa];
    for j in 0..fb {
        acc.iter_mut().for_each(|s| *s = 0);
        for c in 0..nc {
            let w = ye[cy[c] + nc * j] as i128;
            if w == 0 {
                continue;
            }
            let col = &xe[cx[c]..cx[c] + fa];
            for (s, &u) in acc.iter_mut().zip(col) {
                *s = s.checked_add(w * u as i128).ok_or(TensorError::Overflow)?;
            }
        }
        for (i, &s) in acc.iter().enumerate() {
            out[i + fa * j] = i64::try_from(s).map_err(|_| TensorError::Overflow)?;
        }
    }
    Ok(Tensor::new(0, a + b - 2 * k, d, out, x.scale() * y.scale())?)
}

struct Saturation<'a> {
    ctx: &'a FibreContext,
    bound: usize,
    vectors: BTreeMap<usize, Vec<Tensor>>,
    echelons: BTreeMap<usize, Echelon>,
    queue: VecDeque<Tensor>,
}

impl Saturation<'_> {
    fn offer(&mut self, v: Tensor) -> FibreResult<()> {
        let m = v.n_upper();
        if m == 0 || m > self.bound || v.is_zero() {
            return Ok(());
        }
        if self.echelons.entry(m).or_default().insert(v.entries())? {
            self.vectors.entry(m).or_default().push(v.clone());
            self.queue.push_back(v);
        }
        Ok(())
    }

    fn run(&mut self) -> FibreResult<()> {
        while let Some(v) = self.queue.pop_front() {
            self.offer(rotate(&v)?)?;
            self.offer(reverse(&v, self.ctx)?)?;
            let others: Vec<Tensor> = self.vectors.values().flatten().cloned().collect();
            for w in &others {
                for (x, y) in [(&v, w), (w, &v)] {
                    let (a, b) = (x.n_upper(), y.n_upper());
                    for k in 0..=a.min(b) {
                        let m = a + b - 2 * k;
                        if (1..=self.bound).contains(&m) {
                            self.offer(join(x, y, k, self.ctx)?)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Rank and basis of the span of everything the generators build at slot
/// `(k,l)`, working with at most `leg_bound` legs at any stage.
pub fn span_saturate(
    ctx: &FibreContext,
    generators: &[Diagram],
    slot: (usize, usize),
    leg_bound: usize,
) -> FibreResult<SpanResult> {
    let (k, l) = slot;
    if leg_bound > MAX_LEG_BOUND {
        return Err(FibreError::Unsupported(format!("leg bound {leg_bound} exceeds {MAX_LEG_BOUND}")));
    }
    if k + l > leg_bound {
        return Err(FibreError::Shape(format!("slot ({k},{l}) exceeds the leg bound {leg_bound}")));
    }
    let mut sat = Saturation {
        ctx,
        bound: leg_bound,
        vectors: BTreeMap::new(),
        echelons: BTreeMap::new(),
        queue: VecDeque::new(),
    };
    for g in generators {
        let t = evaluate(g, ctx)?;
        sat.offer(bend(&t, ctx)?)?;
    }
    sat.run()?;
    let ranks: BTreeMap<usize, usize> = (1..=leg_bound).map(|m| (m, sat.vectors.get(&m).map_or(0, Vec::len))).collect();
    let basis = sat
        .vectors
        .get(&(k + l))
        .map(|vs| vs.iter().map(|v| unbend(v, k, l, ctx)).collect::<FibreResult<Vec<_>>>())
        .transpose()?
        .unwrap_or_default();
    Ok(SpanResult { rank: basis.len(), basis, ranks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::compose;
    use crate::fibre::FiniteQuantumSpace;
    use crate::hadamard::HadamardMatrix;

    fn gens() -> Vec<Diagram> {
        vec![Diagram::black_spider(2, 2), Diagram::white_spider(2, 2), Diagram::cap()]
    }

    #[test]
    fn bend_round_trip() {
        let ctx = FibreContext::Quantum { space: FiniteQuantumSpace::matrix(2).unwrap(), hadamard: None };
        let t = evaluate(&Diagram::black_spider(2, 1), &ctx).unwrap();
        let v = bend(&t, &ctx).unwrap();
        assert_eq!(unbend(&v, 2, 1, &ctx).unwrap(), t);
        let r = (0..3).try_fold(v.clone(), |r, _| rotate(&r)).unwrap();
        assert_eq!(r, v);
        assert_eq!(reverse(&reverse(&v, &ctx).unwrap(), &ctx).unwrap(), v);
    }

    #[test]
    fn join_is_composition() {
        // bending g then joining with f reproduces f ∘ g bent
        let ctx = FibreContext::Classical(HadamardMatrix::paley_type1(3).unwrap());
        let g = evaluate(&Diagram::white_spider(1, 2), &ctx).unwrap();
        let f = evaluate(&Diagram::black_spider(2, 1), &ctx).unwrap();
        let fg = evaluate(&compose(&Diagram::black_spider(2, 1), &Diagram::white_spider(1, 2)), &ctx).unwrap();
        // g bends to [w, y0, y1] and f to [v0, v1, z]; capping
        // g's last two legs with f's first two gives [w, z]
        let j = join(&bend(&g, &ctx).unwrap(), &bend(&f, &ctx).unwrap(), 2, &ctx).unwrap();
        assert_eq!(j, bend(&fg, &ctx).unwrap());
    }

    #[test]
    fn echelon_rank() {
        let mut e = Echelon::default();
        assert!(e.insert(&[1, 2, 3]).unwrap());
        assert!(e.insert(&[2, 4, 7]).unwrap());
        assert!(!e.insert(&[3, 6, 10]).unwrap());
        assert!(!e.insert(&[0, 0, 0]).unwrap());
        assert!(e.insert(&[0, 1, 0]).unwrap());
    }

    #[test]
    fn catalan_squared_ranks() {
        let ctx = FibreContext::Classical(HadamardMatrix::walsh(1).unwrap());
        assert_eq!(span_saturate(&ctx, &gens(), (1, 1), 4).unwrap().rank, 1);
        let ctx = FibreContext::Classical(HadamardMatrix::walsh(2).unwrap());
        let r = span_saturate(&ctx, &gens(), (2, 2), 4).unwrap();
        assert_eq!(r.rank, 4);
        assert_eq!(r.ranks[&2], 1);
        assert_eq!(r.ranks[&3], 0);
        assert_eq!(r.basis[0].slot(), (2, 2));
    }

    #[test]
    fn bounds() {
        let ctx = FibreContext::Standard(2);
        assert!(matches!(span_saturate(&ctx, &[], (1, 1), 9), Err(FibreError::Unsupported(_))));
        assert!(matches!(span_saturate(&ctx, &[], (3, 3), 4), Err(FibreError::Shape(_))));
        assert_eq!(span_saturate(&ctx, &[Diagram::cap()], (1, 1), 4).unwrap().rank, 1);
    }
}
