//! Dense exact tensors: an integer array with one shared [`ExactScalar`].
//!
//! A tensor of slot `(k, l)` has `k` lower (input) legs and `l` upper
//! (output) legs, each of dimension `dim`. Entries are stored flat with the
//! legs ordered `[lower_0 .. lower_{k-1}, upper_0 .. upper_{l-1}]` and leg 0
//! varying fastest. The integer array is kept primitive (gcd 1, first nonzero
//! entry positive) so derived equality is value equality.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::scalar::{ExactScalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("integer overflow during contraction")]
    Overflow,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("cannot parse tensor: {0}")]
    Parse(String),
}

pub type TensorResult<T> = Result<T, TensorError>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    n_lower: usize,
    n_upper: usize,
    dim: usize,
    entries: Vec<i64>,
    scale: ExactScalar,
}

pub(crate) fn checked_pow(dim: usize, legs: usize) -> TensorResult<usize> {
    dim.checked_pow(legs as u32).filter(|&s| s <= 1 << 28).ok_or(TensorError::Overflow)
}

fn to_i64(v: i128) -> TensorResult<i64> {
    i64::try_from(v).map_err(|_| TensorError::Overflow)
}

impl Tensor {
    pub fn new(
        n_lower: usize,
        n_upper: usize,
        dim: usize,
        entries: Vec<i64>,
        scale: ExactScalar,
    ) -> TensorResult<Self> {
        let size = checked_pow(dim, n_lower + n_upper)?;
        if entries.len() != size {
            return Err(TensorError::Shape(format!(
                "expected {size} entries for slot ({n_lower},{n_upper}) at dim {dim}, got {}",
                entries.len()
            )));
        }
        let mut t = Tensor { n_lower, n_upper, dim, entries, scale };
        t.normalize();
        Ok(t)
    }

    pub fn zeros(n_lower: usize, n_upper: usize, dim: usize) -> TensorResult<Self> {
        let size = checked_pow(dim, n_lower + n_upper)?;
        Self::new(n_lower, n_upper, dim, vec![0; size], ExactScalar::zero())
    }

    /// Builds a tensor from a function of the full index tuple (lower legs first).
    pub fn from_fn(
        n_lower: usize,
        n_upper: usize,
        dim: usize,
        scale: ExactScalar,
        mut f: impl FnMut(&[usize]) -> i64,
    ) -> TensorResult<Self> {
        let legs = n_lower + n_upper;
        let size = checked_pow(dim, legs)?;
        let mut idx = vec![0usize; legs];
        let mut entries = Vec::with_capacity(size);
        for _ in 0..size {
            entries.push(f(&idx));
            for d in idx.iter_mut() {
                *d += 1;
                if *d < dim {
                    break;
                }
                *d = 0;
            }
        }
        Self::new(n_lower, n_upper, dim, entries, scale)
    }

    /// A `(1,1)` tensor from a matrix given row by row; row = output index.
    pub fn from_matrix(rows: &[Vec<i64>], scale: ExactScalar) -> TensorResult<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(TensorError::Shape("matrix must be square".into()));
        }
        Self::from_fn(1, 1, n, scale, |ix| rows[ix[1]][ix[0]])
    }

    pub fn identity(dim: usize, legs: usize) -> TensorResult<Self> {
        Self::from_fn(legs, legs, dim, ExactScalar::one(), |ix| {
            i64::from(ix[..legs] == ix[legs..])
        })
    }

    fn normalize(&mut self) {
        let g = self.entries.iter().fold(0i64, |g, &e| g.gcd(&e));
        if g == 0 || self.scale.is_zero() {
            self.entries.iter_mut().for_each(|e| *e = 0);
            self.scale = ExactScalar::zero();
            return;
        }
        let first = *self.entries.iter().find(|&&e| e != 0).expect("nonzero");
        let g = if first < 0 { -g } else { g };
        if g != 1 {
            self.entries.iter_mut().for_each(|e| *e /= g);
            self.scale = self.scale.scale_int(g);
        }
    }

    pub fn n_lower(&self) -> usize {
        self.n_lower
    }

    pub fn n_upper(&self) -> usize {
        self.n_upper
    }

    pub fn slot(&self) -> (usize, usize) {
        (self.n_lower, self.n_upper)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn scale(&self) -> &ExactScalar {
        &self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.n_lower + self.n_upper);
        idx.iter().rev().fold(0, |acc, &i| acc * self.dim + i)
    }

    /// Integer entry at an index tuple (lower legs first), before scaling.
    pub fn raw(&self, idx: &[usize]) -> i64 {
        self.entries[self.flat_index(idx)]
    }

    pub fn get(&self, idx: &[usize]) -> ExactScalar {
        self.scale.scale_int(self.raw(idx))
    }

    /// Matrix entry of a `(1,1)` tensor: row `out`, column `inp`.
    pub fn matrix_entry(&self, out: usize, inp: usize) -> ExactScalar {
        self.get(&[inp, out])
    }

    pub fn to_f64_entries(&self) -> Vec<f64> {
        let s = self.scale.to_f64();
        self.entries.iter().map(|&e| e as f64 * s).collect()
    }

    fn check_dim(&self, other: &Tensor) -> TensorResult<()> {
        if self.dim != other.dim {
            return Err(TensorError::Shape(format!("dimensions {} and {}", self.dim, other.dim)));
        }
        Ok(())
    }

    /// `self ∘ g`: apply `g` first, then `self`.
    pub fn compose(&self, g: &Tensor) -> TensorResult<Tensor> {
        self.check_dim(g)?;
        if g.n_upper != self.n_lower {
            return Err(TensorError::Shape(format!(
                "cannot compose ({},{}) after ({},{})",
                self.n_lower, self.n_upper, g.n_lower, g.n_upper
            )));
        }
        let d = self.dim;
        let nx = checked_pow(d, g.n_lower)?;
        let ny = checked_pow(d, self.n_lower)?;
        let nz = checked_pow(d, self.n_upper)?;
        let mut out = vec![0i64; nx * nz];
        let mut acc = vec![0i128; nx];
        for z in 0..nz {
            acc.iter_mut().for_each(|a| *a = 0);
            for y in 0..ny {
                let f = self.entries[y + ny * z] as i128;
                if f == 0 {
                    continue;
                }
                let col = &g.entries[nx * y..nx * (y + 1)];
                for (a, &v) in acc.iter_mut().zip(col) {
                    *a = a.checked_add(f * v as i128).ok_or(TensorError::Overflow)?;
                }
            }
            for x in 0..nx {
                out[x + nx * z] = to_i64(acc[x])?;
            }
        }
        Tensor::new(g.n_lower, self.n_upper, d, out, &self.scale * &g.scale)
    }

    /// `self ⊗ other`, with `other` placed to the right.
    pub fn tensor(&self, other: &Tensor) -> TensorResult<Tensor> {
        self.check_dim(other)?;
        let d = self.dim;
        let (k1, l1, k2, l2) = (self.n_lower, self.n_upper, other.n_lower, other.n_upper);
        let (a_in, a_out) = (checked_pow(d, k1)?, checked_pow(d, l1)?);
        let (b_in, b_out) = (checked_pow(d, k2)?, checked_pow(d, l2)?);
        checked_pow(d, k1 + k2 + l1 + l2)?;
        let mut out = vec![0i64; a_in * a_out * b_in * b_out];
        let n_in = a_in * b_in;
        for ao in 0..a_out {
            for bo in 0..b_out {
                let out_idx = ao + a_out * bo;
                for ai in 0..a_in {
                    let x = self.entries[ai + a_in * ao];
                    if x == 0 {
                        continue;
                    }
                    for bi in 0..b_in {
                        let y = other.entries[bi + b_in * bo];
                        out[ai + a_in * bi + n_in * out_idx] =
                            x.checked_mul(y).ok_or(TensorError::Overflow)?;
                    }
                }
            }
        }
        Tensor::new(k1 + k2, l1 + l2, d, out, &self.scale * &other.scale)
    }

    /// Adjoint: swaps lower and upper legs. Entries are real, so no conjugation.
    pub fn dagger(&self) -> Tensor {
        let nin = self.dim.pow(self.n_lower as u32);
        let nout = self.dim.pow(self.n_upper as u32);
        let mut out = vec![0i64; self.entries.len()];
        for o in 0..nout {
            for i in 0..nin {
                out[o + nout * i] = self.entries[i + nin * o];
            }
        }
        Tensor {
            n_lower: self.n_upper,
            n_upper: self.n_lower,
            dim: self.dim,
            entries: out,
            scale: self.scale.clone(),
        }
    }

    pub fn scaled(&self, s: &ExactScalar) -> Tensor {
        let mut t = self.clone();
        t.scale = &t.scale * s;
        t.normalize();
        t
    }

    pub fn neg(&self) -> Tensor {
        self.scaled(&ExactScalar::from_int(-1))
    }

    fn check_same_shape(&self, other: &Tensor) -> TensorResult<()> {
        if self.slot() != other.slot() || self.dim != other.dim {
            return Err(TensorError::Shape(format!(
                "slots ({},{})/{} and ({},{})/{}",
                self.n_lower, self.n_upper, self.dim, other.n_lower, other.n_upper, other.dim
            )));
        }
        Ok(())
    }

    /// Sum of two tensors of the same slot. Fails if the scales differ by an
    /// irrational factor, which would break homogeneity.
    pub fn add(&self, other: &Tensor) -> TensorResult<Tensor> {
        self.check_same_shape(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let ratio = &self.scale / &other.scale;
        let r = ratio.as_rational().ok_or_else(|| {
            ScalarError::Inhomogeneous(self.scale.to_string(), other.scale.to_string())
        })?;
        let p = i64::try_from(r.numer()).map_err(|_| TensorError::Overflow)?;
        let q = i64::try_from(r.denom()).map_err(|_| TensorError::Overflow)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| {
                let v = p as i128 * a as i128 + q as i128 * b as i128;
                to_i64(v)
            })
            .collect::<TensorResult<Vec<_>>>()?;
        let scale = &other.scale / &ExactScalar::from_int(q);
        Tensor::new(self.n_lower, self.n_upper, self.dim, entries, scale)
    }

    pub fn sub(&self, other: &Tensor) -> TensorResult<Tensor> {
        self.add(&other.neg())
    }

    /// Hilbert–Schmidt pairing `Tr(self† other)`.
    pub fn inner(&self, other: &Tensor) -> TensorResult<ExactScalar> {
        self.check_same_shape(other)?;
        let mut acc: i128 = 0;
        for (&a, &b) in self.entries.iter().zip(&other.entries) {
            acc = acc.checked_add(a as i128 * b as i128).ok_or(TensorError::Overflow)?;
        }
        Ok((&self.scale * &other.scale).scale_int(to_i64(acc)?))
    }

    /// Nested duality `(0, 2k)` built from a cup: leg `i` pairs with leg `2k-1-i`.
    pub fn nested_cup(cup: &Tensor, k: usize) -> TensorResult<Tensor> {
        if cup.slot() != (0, 2) {
            return Err(TensorError::Shape("cup must have slot (0,2)".into()));
        }
        let mut r = Tensor::new(0, 0, cup.dim, vec![1], ExactScalar::one())?;
        for i in 0..k {
            let id = Tensor::identity(cup.dim, i)?;
            r = id.tensor(cup)?.tensor(&id)?.compose(&r)?;
        }
        Ok(r)
    }

    /// Transposition `(k,l) -> (l,k)` by bending legs with the given cup.
    pub fn transpose_with(&self, cup: &Tensor) -> TensorResult<Tensor> {
        self.check_dim(cup)?;
        let (k, l) = self.slot();
        let rk = Self::nested_cup(cup, k)?;
        let rl = Self::nested_cup(cup, l)?;
        let idk = Tensor::identity(self.dim, k)?;
        let idl = Tensor::identity(self.dim, l)?;
        let bottom = idl.tensor(&rk)?;
        let middle = idl.tensor(self)?.tensor(&idk)?;
        let top = rl.dagger().tensor(&idk)?;
        top.compose(&middle)?.compose(&bottom)
    }

    /// Trace of a square-slot tensor, closing legs with the given cup.
    pub fn trace_with(&self, cup: &Tensor) -> TensorResult<ExactScalar> {
        self.check_dim(cup)?;
        let (k, l) = self.slot();
        if k != l {
            return Err(TensorError::Shape(format!("trace needs a square slot, got ({k},{l})")));
        }
        let rk = Self::nested_cup(cup, k)?;
        let closed = rk
            .dagger()
            .compose(&self.tensor(&Tensor::identity(self.dim, k)?)?)?
            .compose(&rk)?;
        Ok(closed.get(&[]))
    }

    /// The symmetric Kronecker cup `Σ e_i ⊗ e_i`.
    pub fn delta_cup(dim: usize) -> TensorResult<Tensor> {
        Self::from_fn(0, 2, dim, ExactScalar::one(), |ix| i64::from(ix[0] == ix[1]))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("lower {}\n", self.n_lower));
        s.push_str(&format!("upper {}\n", self.n_upper));
        s.push_str(&format!("dim {}\n", self.dim));
        s.push_str(&format!("base {}\n", self.scale.base()));
        s.push_str(&format!("half_exp {}\n", self.scale.half_exp()));
        s.push_str(&format!("scale {}\n", self.scale.coeff()));
        let e: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        s.push_str(&format!("entries {}\n", e.join(" ")));
        s
    }

    pub fn from_text(text: &str) -> TensorResult<Tensor> {
        let bad = |m: &str| TensorError::Parse(m.to_string());
        let mut fields = std::collections::HashMap::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (k, v) = line.split_once(' ').unwrap_or((line, ""));
            fields.insert(k.to_string(), v.trim().to_string());
        }
        let get = |k: &str| fields.get(k).ok_or_else(|| bad(&format!("missing field {k}")));
        let num = |k: &str| -> TensorResult<usize> {
            get(k)?.parse().map_err(|_| bad(&format!("field {k}")))
        };
        let base: u64 = get("base")?.parse().map_err(|_| bad("base"))?;
        let half_exp: i32 = get("half_exp")?.parse().map_err(|_| bad("half_exp"))?;
        let coeff = get("scale")?.parse().map_err(|_| bad("scale"))?;
        let scale = ExactScalar::new(coeff, base, half_exp)?;
        let entries = get("entries")?
            .split_whitespace()
            .map(|e| e.parse::<i64>().map_err(|_| bad("entries")))
            .collect::<TensorResult<Vec<_>>>()?;
        Tensor::new(num("lower")?, num("upper")?, num("dim")?, entries, scale)
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
