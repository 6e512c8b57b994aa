use std::fmt::Write as _;

use super::signed::{companion, SignedPermutation};
use super::{HadamardError, HadamardMatrix, HadamardResult};

pub type Matrix = Vec<Vec<i64>>;

/// The `4N`-vertex graph of a Hadamard matrix, vertex blocks
/// `r⁺, r⁻, c⁺, c⁻` in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardGraphData {
    pub n: usize,
    pub looped: bool,
    /// Adjacency without loops.
    pub a: Matrix,
    /// Adjacency with a loop on every row vertex.
    pub a0: Matrix,
    pub labels: Vec<String>,
}

/// `(J + H) / 2` and `(J - H) / 2`.
pub fn split_signs(h: &HadamardMatrix) -> (Matrix, Matrix) {
    let n = h.size();
    let plus = (0..n).map(|i| (0..n).map(|j| (1 + h.entry(i, j)) / 2).collect()).collect();
    let minus = (0..n).map(|i| (0..n).map(|j| (1 - h.entry(i, j)) / 2).collect()).collect();
    (plus, minus)
}

fn transpose(m: &Matrix) -> Matrix {
    let n = m.len();
    (0..n).map(|j| (0..n).map(|i| m[i][j]).collect()).collect()
}

fn zero(n: usize) -> Matrix {
    vec![vec![0; n]; n]
}

fn eye(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Assembles a `4 × 4` block matrix of `n × n` blocks.
fn blocks(grid: [[&Matrix; 4]; 4]) -> Matrix {
    let n = grid[0][0].len();
    let mut out = vec![vec![0; 4 * n]; 4 * n];
    for (bi, row) in grid.iter().enumerate() {
        for (bj, m) in row.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    out[bi * n + i][bj * n + j] = m[i][j];
                }
            }
        }
    }
    out
}

pub fn hadamard_graph(h: &HadamardMatrix, looped: bool) -> HadamardGraphData {
    let n = h.size();
    let (hp, hm) = split_signs(h);
    let (hpt, hmt) = (transpose(&hp), transpose(&hm));
    let (z, i) = (zero(n), eye(n));
    let a = blocks([[&z, &z, &hp, &hm], [&z, &z, &hm, &hp], [&hpt, &hmt, &z, &z], [&hmt, &hpt, &z, &z]]);
    let a0 = blocks([[&i, &z, &hp, &hm], [&z, &i, &hm, &hp], [&hpt, &hmt, &z, &z], [&hmt, &hpt, &z, &z]]);
    let labels = ["r", "r", "c", "c"]
        .iter()
        .zip(["+", "-", "+", "-"])
        .flat_map(|(l, s)| (1..=n).map(move |k| format!("{l}{k}{s}")))
        .collect();
    HadamardGraphData { n, looped, a, a0, labels }
}

impl HadamardGraphData {
    /// The adjacency selected by `looped`.
    pub fn adjacency(&self) -> &Matrix {
        if self.looped {
            &self.a0
        } else {
            &self.a
        }
    }

    pub fn vertex_count(&self) -> usize {
        4 * self.n
    }

    /// Row vertices `r^±` occupy the first `2N` indices.
    pub fn is_row_vertex(&self, v: usize) -> bool {
        v < 2 * self.n
    }

    pub fn to_dot(&self) -> String {
        let m = self.adjacency();
        let mut s = String::from("graph hadamard {\n");
        for (v, l) in self.labels.iter().enumerate() {
            let shape = if self.is_row_vertex(v) { "box" } else { "ellipse" };
            let _ = writeln!(s, "  \"{l}\" [shape={shape}];");
        }
        for i in 0..m.len() {
            for j in i..m.len() {
                if m[i][j] != 0 {
                    let _ = writeln!(s, "  \"{}\" -- \"{}\";", self.labels[i], self.labels[j]);
                }
            }
        }
        s.push_str("}\n");
        s
    }

    /// One line per vertex: `label: neighbour neighbour ...`.
    pub fn to_adjacency_list(&self) -> String {
        let m = self.adjacency();
        let mut s = String::new();
        for (i, row) in m.iter().enumerate() {
            let nbrs: Vec<&str> =
                row.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, _)| self.labels[j].as_str()).collect();
            let _ = writeln!(s, "{}: {}", self.labels[i], nbrs.join(" "));
        }
        s
    }
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).filter(|&k| a[i][k] != 0).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn is_permutation_matrix(m: &Matrix) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n && r.iter().all(|&x| x == 0 || x == 1) && r.iter().sum::<i64>() == 1)
        && (0..n).all(|j| m.iter().map(|r| r[j]).sum::<i64>() == 1)
}

/// `x^± = (x∘x ± x) / 2` entrywise.
fn sign_parts(x: &Matrix) -> (Matrix, Matrix) {
    let plus = x.iter().map(|r| r.iter().map(|&v| (v * v + v) / 2).collect()).collect();
    let minus = x.iter().map(|r| r.iter().map(|&v| (v * v - v) / 2).collect()).collect();
    (plus, minus)
}

/// The block matrix `[[p⁺, p⁻, 0, 0], [p⁻, p⁺, 0, 0], [0, 0, q⁺, q⁻], [0, 0, q⁻, q⁺]]`.
pub fn block_permutation(p: &SignedPermutation, q: &SignedPermutation) -> Matrix {
    let n = p.size();
    let (pp, pm) = sign_parts(&p.to_matrix());
    let (qp, qm) = sign_parts(&q.to_matrix());
    let z = zero(n);
    blocks([[&pp, &pm, &z, &z], [&pm, &pp, &z, &z], [&z, &z, &qp, &qm], [&z, &z, &qm, &qp]])
}

/// The vertex permutation `u` induced by `Q ∈ Aut H` with `p = H Q H⁻¹`.
pub fn magic_from_automorphism(h: &HadamardMatrix, q: &SignedPermutation) -> HadamardResult<Matrix> {
    if q.size() != h.size() {
        return Err(HadamardError::Shape(format!("size {} against {}", q.size(), h.size())));
    }
    let p = companion(h, q).ok_or(HadamardError::NotAutomorphism)?;
    Ok(block_permutation(&p, q))
}
