use std::fmt;
use std::str::FromStr;

use super::{HadamardError, HadamardResult};
use crate::scalar::ExactScalar;
use crate::tensor::{Tensor, TensorResult};

/// An `N × N` matrix over `{+1, -1}` with `H Hᵀ = N I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HadamardMatrix {
    rows: Vec<Vec<i8>>,
}

/// Exact check of `M Mᵀ = N I` for an integer matrix with `±1` entries.
pub fn is_hadamard(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    if m.iter().any(|r| r.len() != n || r.iter().any(|&x| x != 1 && x != -1)) {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            let dot: i64 = (0..n).map(|k| m[i][k] * m[j][k]).sum();
            if dot != 0 {
                return false;
            }
        }
    }
    true
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Legendre symbol `(a / q)` for an odd prime `q`.
fn legendre(a: i64, q: i64) -> i64 {
    let a = a.rem_euclid(q);
    if a == 0 {
        return 0;
    }
    let mut r = 1i64;
    let (mut b, mut e) = (a, (q - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

impl HadamardMatrix {
    pub fn new(rows: Vec<Vec<i8>>) -> HadamardResult<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(HadamardError::NotSquare);
        }
        let wide: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| i64::from(x)).collect()).collect();
        if wide.iter().flatten().any(|&x| x != 1 && x != -1) {
            return Err(HadamardError::BadEntry);
        }
        if !is_hadamard(&wide) {
            return Err(HadamardError::NotOrthogonal);
        }
        Ok(HadamardMatrix { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        i64::from(self.rows[i][j])
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    pub fn to_i64(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| r.iter().map(|&x| i64::from(x)).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        HadamardMatrix { rows: (0..n).map(|j| (0..n).map(|i| self.rows[i][j]).collect()).collect() }
    }

    pub fn trace(&self) -> i64 {
        (0..self.size()).map(|i| self.entry(i, i)).sum()
    }

    /// `W_n = W_1 ⊗ W_{n-1}`, of size `2^n`.
    pub fn walsh(n: u32) -> HadamardResult<Self> {
        if n == 0 || n > 12 {
            return Err(HadamardError::TooLarge(format!("walsh order {n} outside 1..=12")));
        }
        let w1 = HadamardMatrix { rows: vec![vec![1, 1], vec![1, -1]] };
        let mut w = w1.clone();
        for _ in 1..n {
            w = Self::tensor_product(&w1, &w);
        }
        Ok(w)
    }

    /// Kronecker product; row index `i * |B| + i'`.
    pub fn tensor_product(a: &Self, b: &Self) -> Self {
        let (na, nb) = (a.size(), b.size());
        let rows = (0..na * nb)
            .map(|r| (0..na * nb).map(|c| a.rows[r / nb][c / nb] * b.rows[r % nb][c % nb]).collect())
            .collect();
        HadamardMatrix { rows }
    }

    /// Paley type I for a prime `q ≡ 3 (mod 4)`: `H = I + S` with
    /// `S = [[0, 1ᵀ], [-1, Q]]` and `Q_ij = χ(j - i)`. The diagonal is all `+1`.
    pub fn paley_type1(q: u64) -> HadamardResult<Self> {
        if !is_prime(q) {
            return Err(HadamardError::NotPrime(q));
        }
        if q % 4 != 3 {
            return Err(HadamardError::WrongResidue(q));
        }
        let n = q as usize + 1;
        let qi = q as i64;
        let s = |i: usize, j: usize| -> i64 {
            match (i, j) {
                (0, 0) => 0,
                (0, _) => 1,
                (_, 0) => -1,
                _ => legendre(j as i64 - i as i64, qi),
            }
        };
        let rows = (0..n)
            .map(|i| (0..n).map(|j| (s(i, j) + i64::from(i == j)) as i8).collect())
            .collect();
        Self::new(rows)
    }

    /// `(1,1)` tensor with entry `[in j, out i] = H_ij`.
    pub fn to_tensor(&self) -> TensorResult<Tensor> {
        Tensor::from_matrix(&self.to_i64(), ExactScalar::one())
    }

    /// File text: the size on the first line, then one row per line as
    /// space-separated `+`/`-` signs.
    pub fn to_file_string(&self) -> String {
        let mut s = format!("{}\n", self.size());
        for r in &self.rows {
            let signs: Vec<&str> = r.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect();
            s.push_str(&signs.join(" "));
            s.push('\n');
        }
        s
    }
}

impl FromStr for HadamardMatrix {
    type Err = HadamardError;

    /// Accepts rows with or without spaces between the signs.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or_else(|| HadamardError::Parse(1, "empty input".into()))?;
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| HadamardError::Parse(1, format!("expected a size, got {first:?}")))?;
        let mut rows = Vec::with_capacity(n);
        for (no, line) in lines {
            let mut row = Vec::with_capacity(n);
            for c in line.chars().filter(|c| !c.is_whitespace()) {
                row.push(match c {
                    '+' => 1,
                    '-' => -1,
                    _ => return Err(HadamardError::Parse(no + 1, format!("unexpected character {c:?}"))),
                });
            }
            if row.len() != n {
                return Err(HadamardError::Parse(no + 1, format!("expected {n} signs, got {}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(HadamardError::Parse(0, format!("expected {n} rows, got {}", rows.len())));
        }
        Self::new(rows)
    }
}

impl fmt::Display for HadamardMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_file_string())
    }
}
