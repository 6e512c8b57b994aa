//! Set partitions of boundary points, non-crossing enumeration and the
//! fattening map onto non-crossing pairings.
//!
//! Points are numbered `0..n_lower` for the lower row and
//! `n_lower..n_lower + n_upper` for the upper row, and print as `L1..Lk`,
//! `U1..Ul`. Crossing is judged along the boundary walk of the rectangle:
//! lower points left to right, then upper points right to left.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::ExactScalar;
use crate::tensor::{Tensor, TensorResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("point {0} is out of range")]
    OutOfRange(usize),
    #[error("point {0} appears more than once")]
    Repeated(usize),
    #[error("point {0} is not covered")]
    Uncovered(usize),
    #[error("empty block")]
    EmptyBlock,
    #[error("partition is crossing")]
    Crossing,
    #[error("arity mismatch: {0} upper points against {1} lower points")]
    Arity(usize, usize),
    #[error("cannot parse partition: {0}")]
    Parse(String),
}

/// A partition of `n_lower + n_upper` boundary points into blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n_lower: usize,
    n_upper: usize,
    blocks: Vec<Vec<usize>>,
}

/// A partition whose blocks all have two points. Same representation as
/// [`SetPartition`]; [`SetPartition::is_pairing`] tells them apart.
pub type Pairing = SetPartition;

/// Catalan number `binom(2k, k) / (k + 1)`. Exact for `k <= 66`.
pub fn catalan(k: u32) -> u128 {
    let mut c: u128 = 1;
    for n in 0..k as u128 {
        // C_{n+1} = C_n * 2(2n+1) / (n+2); the division is exact
        c = c * 2 * (2 * n + 1) / (n + 2);
    }
    c
}

impl SetPartition {
    pub fn new(n_lower: usize, n_upper: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let total = n_lower + n_upper;
        let mut seen = vec![false; total];
        for b in &blocks {
            if b.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            for &p in b {
                if p >= total {
                    return Err(PartitionError::OutOfRange(p));
                }
                if seen[p] {
                    return Err(PartitionError::Repeated(p));
                }
                seen[p] = true;
            }
        }
        if let Some(p) = seen.iter().position(|s| !s) {
            return Err(PartitionError::Uncovered(p));
        }
        let mut blocks = blocks;
        blocks.iter_mut().for_each(|b| b.sort_unstable());
        blocks.sort();
        Ok(SetPartition { n_lower, n_upper, blocks })
    }

    /// Builds a partition from a block label per point.
    pub fn from_labels(n_lower: usize, n_upper: usize, labels: &[usize]) -> Self {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (p, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(p);
        }
        Self::new(n_lower, n_upper, groups.into_values().collect()).expect("labels cover all points")
    }

    /// Reinterprets a single row of `m` points as `k` lower and `m - k` upper
    /// points, following the boundary walk (so crossing-ness is preserved).
    pub fn split_row(&self, k: usize) -> Self {
        let m = self.n_points();
        assert!(k <= m, "split beyond the row");
        let map = |t: usize| if t < k { t } else { k + (m - 1 - t) };
        let blocks = self.blocks.iter().map(|b| b.iter().map(|&t| map(t)).collect()).collect();
        Self::new(k, m - k, blocks).expect("relabelling keeps a partition")
    }

    pub fn n_lower(&self) -> usize {
        self.n_lower
    }

    pub fn n_upper(&self) -> usize {
        self.n_upper
    }

    pub fn n_points(&self) -> usize {
        self.n_lower + self.n_upper
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_pairing(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 2)
    }

    /// `L1..Lk` for lower points, `U1..Ul` for upper points.
    pub fn label(&self, p: usize) -> String {
        if p < self.n_lower {
            format!("L{}", p + 1)
        } else {
            format!("U{}", p - self.n_lower + 1)
        }
    }

    /// Position of a point along the boundary walk.
    pub fn walk_position(&self, p: usize) -> usize {
        if p < self.n_lower {
            p
        } else {
            self.n_lower + (self.n_upper - 1 - (p - self.n_lower))
        }
    }

    fn point_at_walk(&self, t: usize) -> usize {
        if t < self.n_lower {
            t
        } else {
            self.n_lower + (self.n_upper - 1 - (t - self.n_lower))
        }
    }

    /// Block index of every point.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n_points()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &p in b {
                out[p] = i;
            }
        }
        out
    }

    pub fn is_noncrossing(&self) -> bool {
        let walk: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut w: Vec<usize> = b.iter().map(|&p| self.walk_position(p)).collect();
                w.sort_unstable();
                w
            })
            .collect();
        let owner = {
            let mut o = vec![0; self.n_points()];
            for (i, b) in walk.iter().enumerate() {
                for &t in b {
                    o[t] = i;
                }
            }
            o
        };
        // two blocks cross iff some other block has points both strictly
        // inside and strictly outside a gap between consecutive points
        for (i, b) in walk.iter().enumerate() {
            for w in b.windows(2) {
                let inside: Vec<usize> = ((w[0] + 1)..w[1]).map(|t| owner[t]).collect();
                for &j in &inside {
                    if j != i && walk[j].iter().any(|&t| t < w[0] || t > w[1]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Composes `self` after `q` (`q` has `n_upper == self.n_lower`).
    /// Returns the composite and the number of blocks that only touched the
    /// glued middle row.
    pub fn compose(&self, q: &SetPartition) -> Result<(SetPartition, usize), PartitionError> {
        if q.n_upper != self.n_lower {
            return Err(PartitionError::Arity(q.n_upper, self.n_lower));
        }
        let (j, k, l) = (q.n_lower, self.n_lower, self.n_upper);
        // ids: q's lower 0..j, middle j..j+k, self's upper j+k..j+k+l
        let total = j + k + l;
        let mut uf: Vec<usize> = (0..total).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let union = |a: usize, b: usize, uf: &mut Vec<usize>| {
            let (ra, rb) = (find(uf, a), find(uf, b));
            uf[ra] = rb;
        };
        for b in &q.blocks {
            for w in b.windows(2) {
                union(w[0], w[1], &mut uf);
            }
        }
        let lift = |p: usize| if p < k { j + p } else { j + k + (p - k) };
        for b in &self.blocks {
            for w in b.windows(2) {
                union(lift(w[0]), lift(w[1]), &mut uf);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut middle_roots = std::collections::BTreeSet::new();
        for x in 0..total {
            let r = find(&mut uf, x);
            if x < j {
                groups.entry(r).or_default().push(x);
            } else if x >= j + k {
                groups.entry(r).or_default().push(x - k);
            } else {
                middle_roots.insert(r);
            }
        }
        let removed = middle_roots.iter().filter(|r| !groups.contains_key(r)).count();
        let p = SetPartition::new(j, l, groups.into_values().collect())?;
        Ok((p, removed))
    }
}

/// All non-crossing partitions of a row of `m` points, in canonical order.
/// The row is returned as `m` lower points; see [`SetPartition::split_row`].
pub fn enumerate_nc_partitions(m: usize) -> Vec<SetPartition> {
    let mut out: Vec<SetPartition> = nc_blocks(0, m, false)
        .into_iter()
        .map(|blocks| SetPartition::new(m, 0, blocks).expect("valid"))
        .collect();
    out.sort();
    out
}

/// All non-crossing pairings of a row of `m` points.
pub fn enumerate_nc_pairings(m: usize) -> Vec<Pairing> {
    let mut out: Vec<SetPartition> = nc_blocks(0, m, true)
        .into_iter()
        .map(|blocks| SetPartition::new(m, 0, blocks).expect("valid"))
        .collect();
    out.sort();
    out
}

/// Non-crossing block systems on the points `start..end`.
fn nc_blocks(start: usize, end: usize, pairs_only: bool) -> Vec<Vec<Vec<usize>>> {
    if start >= end {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    // choose the block containing `start` as a subset of the remaining points;
    // the gaps between its members are filled independently
    let rest: Vec<usize> = ((start + 1)..end).collect();
    for mask in 0u64..(1u64 << rest.len()) {
        let mut block = vec![start];
        block.extend(rest.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p));
        if pairs_only && block.len() != 2 {
            continue;
        }
        let mut bounds: Vec<(usize, usize)> = block.windows(2).map(|w| (w[0] + 1, w[1])).collect();
        bounds.push((block[block.len() - 1] + 1, end));
        let mut partial: Vec<Vec<Vec<usize>>> = vec![vec![block.clone()]];
        for (a, b) in bounds {
            let fills = nc_blocks(a, b, pairs_only);
            if fills.is_empty() {
                partial.clear();
                break;
            }
            let mut next = Vec::with_capacity(partial.len() * fills.len());
            for p in &partial {
                for f in &fills {
                    let mut q = p.clone();
                    q.extend(f.iter().cloned());
                    next.push(q);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

/// Doubles every point and traces each block's boundary as nested pairs.
///
/// Each point at walk position `t` becomes positions `2t, 2t+1`; a block with
/// walk positions `t_1 < .. < t_r` pairs `2t_i + 1` with `2t_{i+1}` and closes
/// with `2t_r + 1` paired to `2t_1`.
pub fn fatten(p: &SetPartition) -> Result<Pairing, PartitionError> {
    if !p.is_noncrossing() {
        return Err(PartitionError::Crossing);
    }
    let (k, l) = (2 * p.n_lower, 2 * p.n_upper);
    let m = k + l;
    let point_of = |t: usize| if t < k { t } else { k + (l - 1 - (t - k)) };
    let mut blocks = Vec::new();
    for b in p.blocks() {
        let mut w: Vec<usize> = b.iter().map(|&x| p.walk_position(x)).collect();
        w.sort_unstable();
        for i in 0..w.len() {
            let a = 2 * w[i] + 1;
            let c = 2 * w[(i + 1) % w.len()];
            blocks.push(vec![point_of(a % m), point_of(c % m)]);
        }
    }
    SetPartition::new(k, l, blocks)
}

/// Kronecker tensor of a partition: 1 when indices agree within every block.
pub fn partition_tensor(p: &SetPartition, n: usize) -> TensorResult<Tensor> {
    let owner = p.block_of();
    let nb = p.blocks().len();
    Tensor::from_fn(p.n_lower(), p.n_upper(), n, ExactScalar::one(), |ix| {
        let mut val = vec![usize::MAX; nb];
        for (pt, &i) in ix.iter().enumerate() {
            let b = owner[pt];
            if val[b] == usize::MAX {
                val[b] = i;
            } else if val[b] != i {
                return 0;
            }
        }
        1
    })
}

impl fmt::Display for SetPartition {
    /// `lower=2 upper=1 {L1,U1} {L2}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lower={} upper={}", self.n_lower, self.n_upper)?;
        for b in &self.blocks {
            let labels: Vec<String> = b.iter().map(|&p| self.label(p)).collect();
            write!(f, " {{{}}}", labels.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for SetPartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PartitionError::Parse(s.to_string());
        let mut rest = s.trim();
        let mut take_field = |name: &str| -> Result<usize, PartitionError> {
            let r = rest.strip_prefix(name).ok_or_else(bad)?;
            let end = r.find(char::is_whitespace).unwrap_or(r.len());
            let v = r[..end].parse().map_err(|_| bad())?;
            rest = r[end..].trim_start();
            Ok(v)
        };
        let k = take_field("lower=")?;
        let l = take_field("upper=")?;
        let mut blocks = Vec::new();
        for chunk in rest.split('}').map(str::trim).filter(|c| !c.is_empty()) {
            let inner = chunk.strip_prefix('{').ok_or_else(bad)?;
            let mut block = Vec::new();
            for lab in inner.split(',').map(str::trim) {
                let (side, num) = lab.split_at(1.min(lab.len()));
                let i: usize = num.parse().map_err(|_| bad())?;
                if i == 0 {
                    return Err(bad());
                }
                block.push(match side {
                    "L" if i <= k => i - 1,
                    "U" if i <= l => k + i - 1,
                    _ => return Err(bad()),
                });
            }
            blocks.push(block);
        }
        SetPartition::new(k, l, blocks)
    }
}

impl SetPartition {
    /// The point sitting at walk position `t`.
    pub fn point_at(&self, t: usize) -> usize {
        self.point_at_walk(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every set partition of `m` points via restricted growth strings.
    fn all_partitions(m: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut rgs = vec![0usize; m];
        loop {
            out.push(SetPartition::from_labels(m, 0, &rgs));
            // next restricted growth string
            let mut i = m;
            loop {
                if i <= 1 {
                    return out;
                }
                i -= 1;
                let max_prev = rgs[..i].iter().copied().max().unwrap_or(0);
                if rgs[i] <= max_prev {
                    rgs[i] += 1;
                    for r in rgs.iter_mut().skip(i + 1) {
                        *r = 0;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), 1);
        assert_eq!(catalan(2), 2);
        assert_eq!(catalan(4), 14);
        // binomial formula, independently
        for k in 0..20u32 {
            let mut b: u128 = 1;
            for i in 0..k as u128 {
                b = b * (2 * k as u128 - i) / (i + 1);
            }
            assert_eq!(catalan(k), b / (k as u128 + 1));
        }
    }

    #[test]
    fn bell_numbers_from_brute_force() {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (m, &b) in bell.iter().enumerate() {
            assert_eq!(all_partitions(m).len(), b);
        }
    }

    #[test]
    fn enumeration_matches_filtered_brute_force() {
        for m in 0..=8 {
            let fast = enumerate_nc_partitions(m);
            let mut slow: Vec<SetPartition> =
                all_partitions(m).into_iter().filter(|p| p.is_noncrossing()).collect();
            slow.sort();
            assert_eq!(fast, slow, "m = {m}");
            assert_eq!(fast.len() as u128, catalan(m as u32));
            let pairs = enumerate_nc_pairings(m);
            let slow_pairs: Vec<_> = slow.iter().filter(|p| p.is_pairing()).cloned().collect();
            assert_eq!(pairs, slow_pairs);
            let want = if m % 2 == 0 { catalan(m as u32 / 2) } else { 0 };
            assert_eq!(pairs.len() as u128, want);
        }
    }

    #[test]
    fn crossing_examples() {
        let p = SetPartition::new(4, 0, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(p.is_noncrossing());
        let q = SetPartition::new(4, 0, vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert!(!q.is_noncrossing());
        let id = SetPartition::new(2, 2, vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert!(id.is_noncrossing());
        let flip = SetPartition::new(2, 2, vec![vec![0, 3], vec![1, 2]]).unwrap();
        assert!(!flip.is_noncrossing());
        assert_eq!(enumerate_nc_partitions(4).len(), 14);
        assert!(!enumerate_nc_partitions(4).contains(&q));
    }

    #[test]
    fn split_row_keeps_crossing_status() {
        for p in enumerate_nc_partitions(5) {
            for k in 0..=5 {
                assert!(p.split_row(k).is_noncrossing());
            }
        }
    }

    #[test]
    fn fatten_generators() {
        let id = SetPartition::new(1, 1, vec![vec![0, 1]]).unwrap();
        let id2 = SetPartition::new(2, 2, vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(fatten(&id).unwrap(), id2);
        // fork: inner lower pair joined, outer points pass through
        let fork = SetPartition::new(2, 1, vec![vec![0, 1, 2]]).unwrap();
        let want = SetPartition::new(4, 2, vec![vec![0, 4], vec![1, 2], vec![3, 5]]).unwrap();
        assert_eq!(fatten(&fork).unwrap(), want);
        let eta = SetPartition::new(0, 1, vec![vec![0]]).unwrap();
        assert_eq!(fatten(&eta).unwrap(), SetPartition::new(0, 2, vec![vec![0, 1]]).unwrap());
        let cross = SetPartition::new(2, 2, vec![vec![0, 3], vec![1, 2]]).unwrap();
        assert_eq!(fatten(&cross), Err(PartitionError::Crossing));
    }

    #[test]
    fn fatten_is_injective_onto_nc_pairings() {
        for m in 0..=6 {
            let mut seen = std::collections::HashSet::new();
            for p in enumerate_nc_partitions(m) {
                for k in 0..=m {
                    let q = p.split_row(k);
                    let f = fatten(&q).unwrap();
                    assert!(f.is_pairing() && f.is_noncrossing());
                    assert_eq!((f.n_lower(), f.n_upper()), (2 * k, 2 * (m - k)));
                    assert!(seen.insert(f));
                }
            }
        }
    }

    #[test]
    fn partition_tensor_examples() {
        let id = SetPartition::new(1, 1, vec![vec![0, 1]]).unwrap();
        assert_eq!(partition_tensor(&id, 3).unwrap(), Tensor::identity(3, 1).unwrap());
        let pair = SetPartition::new(0, 2, vec![vec![0, 1]]).unwrap();
        assert_eq!(partition_tensor(&pair, 2).unwrap(), Tensor::delta_cup(2).unwrap());
        let fork = SetPartition::new(2, 1, vec![vec![0, 1, 2]]).unwrap();
        let t = partition_tensor(&fork, 2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    assert_eq!(t.raw(&[i, j, k]), i64::from(i == j && j == k));
                }
            }
        }
    }

    #[test]
    fn tensor_respects_composition() {
        let all = |k: usize, l: usize| -> Vec<SetPartition> {
            enumerate_nc_partitions(k + l).iter().map(|p| p.split_row(k)).collect()
        };
        for n in [2usize, 3] {
            for j in 0..=2 {
                for k in 0..=2 {
                    for l in 0..=2 {
                        for q in all(j, k) {
                            for p in all(k, l) {
                                let (pq, c) = p.compose(&q).unwrap();
                                let lhs = partition_tensor(&p, n)
                                    .unwrap()
                                    .compose(&partition_tensor(&q, n).unwrap())
                                    .unwrap();
                                let nc = ExactScalar::from_int((n as i64).pow(c as u32));
                                let rhs = partition_tensor(&pq, n).unwrap().scaled(&nc);
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for p in enumerate_nc_partitions(5) {
            let q = p.split_row(2);
            let back: SetPartition = q.to_string().parse().unwrap();
            assert_eq!(back, q);
        }
        assert!("lower=1 upper=1 {L1,U2}".parse::<SetPartition>().is_err());
    }
}
