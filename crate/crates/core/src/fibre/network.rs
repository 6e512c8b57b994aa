//! Exact contraction of integer tensor networks with a global scale.
//!
//! Variables are small index ranges; factors are dense integer arrays over
//! distinct variables (first variable fastest). Variables can be aliased
//! before contraction. Non-output variables are summed out one at a time,
//! always picking the one whose elimination builds the smallest factor.

use num_integer::Integer;

use crate::scalar::ExactScalar;
use crate::tensor::{TensorError, TensorResult};

#[derive(Clone, Debug)]
struct Factor {
    vars: Vec<usize>,
    data: Vec<i64>,
}

#[derive(Clone, Debug)]
pub(crate) struct Network {
    dims: Vec<usize>,
    parent: Vec<usize>,
    factors: Vec<Factor>,
    scale: ExactScalar,
}

const MAX_FACTOR: usize = 1 << 26;

fn size_of(dims: &[usize], vars: &[usize]) -> TensorResult<usize> {
    vars.iter()
        .try_fold(1usize, |acc, &v| acc.checked_mul(dims[v]))
        .filter(|&s| s <= MAX_FACTOR)
        .ok_or(TensorError::Overflow)
}

/// Odometer over a mixed-radix index, first digit fastest.
fn advance(idx: &mut [usize], radix: &[usize]) {
    for (d, &r) in idx.iter_mut().zip(radix) {
        *d += 1;
        if *d < r {
            return;
        }
        *d = 0;
    }
}

fn strides(dims: &[usize], vars: &[usize], over: &[usize]) -> Vec<usize> {
    // stride of each `over` variable inside a factor on `vars`
    let mut own = Vec::with_capacity(vars.len());
    let mut s = 1;
    for &v in vars {
        own.push(s);
        s *= dims[v];
    }
    over.iter().map(|u| vars.iter().position(|v| v == u).map_or(0, |p| own[p])).collect()
}

fn reduce(data: &mut [i64], scale: &mut ExactScalar) {
    let g = data.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g > 1 {
        data.iter_mut().for_each(|x| *x /= g);
        *scale = scale.scale_int(g);
    }
}

impl Network {
    pub fn new() -> Self {
        Network { dims: vec![], parent: vec![], factors: vec![], scale: ExactScalar::one() }
    }

    pub fn var(&mut self, dim: usize) -> usize {
        self.dims.push(dim);
        self.parent.push(self.parent.len());
        self.dims.len() - 1
    }

    fn root(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    pub fn unify(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.root(a), self.root(b));
        debug_assert_eq!(self.dims[ra], self.dims[rb], "aliasing variables of different range");
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn factor(&mut self, vars: Vec<usize>, data: Vec<i64>) {
        debug_assert_eq!(data.len(), vars.iter().map(|&v| self.dims[v]).product::<usize>());
        self.factors.push(Factor { vars, data });
    }

    pub fn scale_by(&mut self, s: &ExactScalar) {
        self.scale = &self.scale * s;
    }

    /// Rewrites every factor over root variables, taking diagonals where a
    /// factor meets the same root twice.
    fn resolve(&mut self) -> TensorResult<()> {
        let factors = std::mem::take(&mut self.factors);
        for f in factors {
            let roots: Vec<usize> = f.vars.iter().map(|&v| self.root(v)).collect();
            let mut distinct: Vec<usize> = Vec::new();
            for &r in &roots {
                if !distinct.contains(&r) {
                    distinct.push(r);
                }
            }
            if distinct.len() == roots.len() {
                self.factors.push(Factor { vars: roots, data: f.data });
                continue;
            }
            let size = size_of(&self.dims, &distinct)?;
            let st = {
                let mut own = Vec::with_capacity(roots.len());
                let mut s = 1;
                for &v in &f.vars {
                    own.push(s);
                    s *= self.dims[v];
                }
                own
            };
            let radix: Vec<usize> = distinct.iter().map(|&v| self.dims[v]).collect();
            let pos: Vec<usize> = roots.iter().map(|r| distinct.iter().position(|d| d == r).expect("root")).collect();
            let mut idx = vec![0; distinct.len()];
            let mut data = Vec::with_capacity(size);
            for _ in 0..size {
                let off: usize = pos.iter().zip(&st).map(|(&p, &s)| idx[p] * s).sum();
                data.push(f.data[off]);
                advance(&mut idx, &radix);
            }
            self.factors.push(Factor { vars: distinct, data });
        }
        Ok(())
    }

    /// Multiplies the factors in `group` and sums out `var` (if given).
    fn merge(&mut self, group: Vec<Factor>, var: Option<usize>) -> TensorResult<Factor> {
        let mut all: Vec<usize> = Vec::new();
        for f in &group {
            for &v in &f.vars {
                if !all.contains(&v) {
                    all.push(v);
                }
            }
        }
        let kept: Vec<usize> = all.iter().copied().filter(|&v| Some(v) != var).collect();
        let out_size = size_of(&self.dims, &kept)?;
        size_of(&self.dims, &all)?;
        let radix: Vec<usize> = all.iter().map(|&v| self.dims[v]).collect();
        let fstrides: Vec<Vec<usize>> = group.iter().map(|f| strides(&self.dims, &f.vars, &all)).collect();
        let ostrides = strides(&self.dims, &kept, &all);
        let total: usize = radix.iter().product();
        let mut acc = vec![0i128; out_size];
        let mut idx = vec![0usize; all.len()];
        for _ in 0..total {
            let mut prod: i128 = 1;
            for (f, st) in group.iter().zip(&fstrides) {
                let off: usize = idx.iter().zip(st).map(|(i, s)| i * s).sum();
                let x = f.data[off];
                if x == 0 {
                    prod = 0;
                    break;
                }
                prod = prod.checked_mul(i128::from(x)).ok_or(TensorError::Overflow)?;
            }
            if prod != 0 {
                let o: usize = idx.iter().zip(&ostrides).map(|(i, s)| i * s).sum();
                acc[o] = acc[o].checked_add(prod).ok_or(TensorError::Overflow)?;
            }
            advance(&mut idx, &radix);
        }
        let g = acc.iter().fold(0i128, |g, &x| g.gcd(&x));
        let mut data = Vec::with_capacity(out_size);
        for x in acc {
            let y = if g > 1 { x / g } else { x };
            data.push(i64::try_from(y).map_err(|_| TensorError::Overflow)?);
        }
        if g > 1 {
            let g64 = i64::try_from(g).map_err(|_| TensorError::Overflow)?;
            self.scale = self.scale.scale_int(g64);
        }
        Ok(Factor { vars: kept, data })
    }

    /// Contracts everything except the output legs. Each leg is a list of
    /// variables read as a mixed-radix number, most significant first, and
    /// all legs share the range `leg_dim`. Returns entries in tensor order
    /// (leg 0 fastest) and the scale.
    pub fn contract(mut self, legs: &[Vec<usize>], leg_dim: usize) -> TensorResult<(Vec<i64>, ExactScalar)> {
        self.resolve()?;
        let legs: Vec<Vec<usize>> = legs.iter().map(|l| l.iter().map(|&v| self.root(v)).collect()).collect();
        let mut outputs: Vec<usize> = legs.iter().flatten().copied().collect();
        outputs.sort_unstable();
        outputs.dedup();
        // summed variables: every root not on an output leg
        let mut pending: Vec<usize> =
            (0..self.dims.len()).filter(|&v| self.parent[v] == v && outputs.binary_search(&v).is_err()).collect();
        for f in self.factors.iter_mut() {
            reduce(&mut f.data, &mut self.scale);
        }
        while !pending.is_empty() {
            // cheapest elimination first
            let mut best: Option<(usize, usize)> = None;
            for (i, &v) in pending.iter().enumerate() {
                let mut vars: Vec<usize> = Vec::new();
                for f in self.factors.iter().filter(|f| f.vars.contains(&v)) {
                    for &u in &f.vars {
                        if u != v && !vars.contains(&u) {
                            vars.push(u);
                        }
                    }
                }
                let cost = vars.iter().fold(1usize, |a, &u| a.saturating_mul(self.dims[u]));
                if best.is_none_or(|(_, c)| cost < c) {
                    best = Some((i, cost));
                }
            }
            let (i, _) = best.expect("pending variable");
            let v = pending.swap_remove(i);
            let (group, rest): (Vec<Factor>, Vec<Factor>) =
                std::mem::take(&mut self.factors).into_iter().partition(|f| f.vars.contains(&v));
            self.factors = rest;
            if group.is_empty() {
                let d = self.dims[v] as i64;
                self.scale = self.scale.scale_int(d);
                continue;
            }
            let merged = self.merge(group, Some(v))?;
            self.factors.push(merged);
        }
        let group = std::mem::take(&mut self.factors);
        let last = self.merge(group, None)?;
        if last.data.iter().all(|&x| x == 0) {
            self.scale = ExactScalar::zero();
        }
        // read out the legs
        let radix: Vec<Vec<usize>> = legs.iter().map(|l| l.iter().map(|&v| self.dims[v]).collect()).collect();
        for r in &radix {
            debug_assert_eq!(r.iter().product::<usize>(), leg_dim);
        }
        let size = crate::tensor::checked_pow(leg_dim, legs.len())?;
        let lstrides = strides(&self.dims, &last.vars, &outputs);
        let mut assign = vec![usize::MAX; outputs.len()];
        let slot: Vec<Vec<usize>> =
            legs.iter().map(|l| l.iter().map(|v| outputs.binary_search(v).expect("output")).collect()).collect();
        let mut idx = vec![0usize; legs.len()];
        let mut out = Vec::with_capacity(size);
        for _ in 0..size {
            assign.iter_mut().for_each(|a| *a = usize::MAX);
            let mut ok = true;
            'legs: for (l, &x) in idx.iter().enumerate() {
                let mut rem = x;
                for (k, &p) in slot[l].iter().enumerate().rev() {
                    let r = radix[l][k];
                    let digit = rem % r;
                    rem /= r;
                    if assign[p] == usize::MAX {
                        assign[p] = digit;
                    } else if assign[p] != digit {
                        ok = false;
                        break 'legs;
                    }
                }
            }
            out.push(if ok {
                let off: usize = assign.iter().zip(&lstrides).map(|(a, s)| a * s).sum();
                last.data[off]
            } else {
                0
            });
            for d in idx.iter_mut() {
                *d += 1;
                if *d < leg_dim {
                    break;
                }
                *d = 0;
            }
        }
        Ok((out, self.scale))
    }

    /// Direct summation over every variable assignment in floating point.
    /// Independent of the elimination order and of the integer bookkeeping.
    pub fn brute_force_f64(&self, legs: &[Vec<usize>], leg_dim: usize, limit: usize) -> TensorResult<Vec<f64>> {
        let roots: Vec<usize> = (0..self.dims.len()).filter(|&v| self.parent[v] == v).collect();
        let radix: Vec<usize> = roots.iter().map(|&v| self.dims[v]).collect();
        let total = radix.iter().try_fold(1usize, |a, &r| a.checked_mul(r)).filter(|&t| t <= limit);
        let total = total.ok_or(TensorError::Overflow)?;
        let pos = |v: usize| roots.binary_search(&self.root(v)).expect("root");
        let fpos: Vec<Vec<usize>> = self.factors.iter().map(|f| f.vars.iter().map(|&v| pos(v)).collect()).collect();
        let fst: Vec<Vec<usize>> = self
            .factors
            .iter()
            .map(|f| {
                let mut s = 1;
                f.vars
                    .iter()
                    .map(|&v| {
                        let here = s;
                        s *= self.dims[v];
                        here
                    })
                    .collect()
            })
            .collect();
        let lpos: Vec<Vec<usize>> = legs.iter().map(|l| l.iter().map(|&v| pos(v)).collect()).collect();
        let size = crate::tensor::checked_pow(leg_dim, legs.len())?;
        let mut out = vec![0f64; size];
        let mut idx = vec![0usize; roots.len()];
        let scale = self.scale.to_f64();
        for _ in 0..total {
            let mut prod = scale;
            for ((f, p), s) in self.factors.iter().zip(&fpos).zip(&fst) {
                let off: usize = p.iter().zip(s).map(|(&q, &t)| idx[q] * t).sum();
                prod *= f.data[off] as f64;
                if prod == 0.0 {
                    break;
                }
            }
            if prod != 0.0 {
                let mut flat = 0;
                let mut mult = 1;
                for l in &lpos {
                    let mut x = 0;
                    for &q in l {
                        x = x * self.dims[roots[q]] + idx[q];
                    }
                    flat += x * mult;
                    mult *= leg_dim;
                }
                out[flat] += prod;
            }
            advance(&mut idx, &radix);
        }
        Ok(out)
    }
}
