use std::fmt;

use super::{HadamardError, HadamardMatrix, HadamardResult};

/// Signed permutation `M e_j = s_j e_{perm[j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> HadamardResult<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(HadamardError::Shape(format!("{n} images but {} signs", signs.len())));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(HadamardError::Shape(format!("{perm:?} is not a permutation")));
            }
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(HadamardError::BadEntry);
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { perm: (0..n).collect(), signs: vec![1; n] }
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Reads a matrix with exactly one `±1` per row and column.
    pub fn from_matrix(m: &[Vec<i64>]) -> Option<Self> {
        let n = m.len();
        let mut perm = vec![usize::MAX; n];
        let mut signs = vec![0i8; n];
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return None;
            }
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 | -1 if perm[j] == usize::MAX => {
                        perm[j] = i;
                        signs[j] = x as i8;
                    }
                    _ => return None,
                }
            }
        }
        if perm.contains(&usize::MAX) {
            return None;
        }
        Self::new(perm, signs).ok()
    }

    pub fn to_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        let mut m = vec![vec![0i64; n]; n];
        for j in 0..n {
            m[self.perm[j]][j] = i64::from(self.signs[j]);
        }
        m
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let signs = other.perm.iter().zip(&other.signs).map(|(&p, &s)| s * self.signs[p]).collect();
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> Self {
        let n = self.size();
        let mut perm = vec![0; n];
        let mut signs = vec![0; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            signs[self.perm[j]] = self.signs[j];
        }
        SignedPermutation { perm, signs }
    }

    /// Every element of the hyperoctahedral group `H_n`, `2^n n!` of them.
    pub fn all(n: usize) -> Vec<Self> {
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for k in 0..n {
            perms = perms
                .into_iter()
                .flat_map(|p| {
                    (0..=k).map(move |pos| {
                        let mut q = p.clone();
                        q.insert(pos, k);
                        q
                    })
                })
                .collect();
        }
        let mut out = Vec::with_capacity(perms.len() << n);
        for p in perms {
            for mask in 0..1u32 << n {
                let signs = (0..n).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
                out.push(SignedPermutation { perm: p.clone(), signs });
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for SignedPermutation {
    /// `[+2 -1]`: column `j` goes to `±(perm[j] + 1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| format!("{}{}", if s > 0 { '+' } else { '-' }, p + 1))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// `P · H · Q⁻¹`.
pub fn equivalent_transform(
    h: &HadamardMatrix,
    p: &SignedPermutation,
    q: &SignedPermutation,
) -> HadamardResult<HadamardMatrix> {
    let n = h.size();
    if p.size() != n || q.size() != n {
        return Err(HadamardError::Shape(format!("size {n} against {} and {}", p.size(), q.size())));
    }
    let m = matmul(&matmul(&p.to_matrix(), &h.to_i64()), &q.inverse().to_matrix());
    HadamardMatrix::new(m.into_iter().map(|r| r.into_iter().map(|x| x as i8).collect()).collect())
}

/// A symmetry `H Q = P H` of a Hadamard matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    pub q: SignedPermutation,
    /// `H Q H⁻¹`.
    pub p: SignedPermutation,
}

/// `H Q H⁻¹` when it is a signed permutation.
pub fn companion(h: &HadamardMatrix, q: &SignedPermutation) -> Option<SignedPermutation> {
    let n = h.size() as i64;
    let hm = h.to_i64();
    let hq = matmul(&hm, &q.to_matrix());
    // H⁻¹ = Hᵀ / N
    let ht = h.transpose().to_i64();
    let prod = matmul(&hq, &ht);
    if prod.iter().flatten().any(|x| x % n != 0) {
        return None;
    }
    let m: Vec<Vec<i64>> = prod.iter().map(|r| r.iter().map(|x| x / n).collect()).collect();
    SignedPermutation::from_matrix(&m)
}

pub const MAX_AUT_SIZE: usize = 8;

/// All `Q ∈ H_N` with `H Q H⁻¹ ∈ H_N`, by column-wise backtracking.
///
/// Choosing `Q e_j = s e_c` forces `P (H e_j) = s H e_c`, so for every row `a`
/// the image `P e_a = t e_b` must satisfy `t H_{a j} = s H_{b c}`. The
/// candidates `(b, t)` for each row are filtered as columns are fixed.
pub fn automorphism_group(h: &HadamardMatrix) -> HadamardResult<Vec<Automorphism>> {
    let n = h.size();
    if n > MAX_AUT_SIZE {
        return Err(HadamardError::TooLarge(format!("automorphism search is bounded by N ≤ {MAX_AUT_SIZE}")));
    }
    let all_rows: Vec<(usize, i8)> = (0..n).flat_map(|b| [(b, 1i8), (b, -1i8)]).collect();
    let mut out = Vec::new();
    let mut perm = vec![0usize; n];
    let mut signs = vec![0i8; n];
    let mut used = vec![false; n];
    let candidates = vec![all_rows; n];
    search(h, 0, &mut perm, &mut signs, &mut used, &candidates, &mut out);
    out.sort();
    Ok(out)
}

fn search(
    h: &HadamardMatrix,
    j: usize,
    perm: &mut Vec<usize>,
    signs: &mut Vec<i8>,
    used: &mut Vec<bool>,
    candidates: &[Vec<(usize, i8)>],
    out: &mut Vec<Automorphism>,
) {
    let n = h.size();
    if j == n {
        let q = SignedPermutation { perm: perm.clone(), signs: signs.clone() };
        if let Some(p) = companion(h, &q) {
            out.push(Automorphism { q, p });
        }
        return;
    }
    for c in 0..n {
        if used[c] {
            continue;
        }
        for s in [1i8, -1] {
            let next: Vec<Vec<(usize, i8)>> = (0..n)
                .map(|a| {
                    candidates[a]
                        .iter()
                        .copied()
                        .filter(|&(b, t)| i64::from(t) * h.entry(a, j) == i64::from(s) * h.entry(b, c))
                        .collect()
                })
                .collect();
            if next.iter().any(Vec::is_empty) {
                continue;
            }
            used[c] = true;
            perm[j] = c;
            signs[j] = s;
            search(h, j + 1, perm, signs, used, &next, out);
            used[c] = false;
        }
    }
}

/// Exhaustive `Aut H` over all of `H_N`, for cross-checking the search.
pub fn automorphism_group_brute_force(h: &HadamardMatrix) -> Vec<Automorphism> {
    SignedPermutation::all(h.size())
        .into_iter()
        .filter_map(|q| companion(h, &q).map(|p| Automorphism { q, p }))
        .collect()
}

/// Closed under products and inverses, and contains the identity.
pub fn is_group(elements: &[SignedPermutation]) -> bool {
    let Some(first) = elements.first() else {
        return false;
    };
    let set: std::collections::HashSet<&SignedPermutation> = elements.iter().collect();
    set.contains(&SignedPermutation::identity(first.size()))
        && elements.iter().all(|a| set.contains(&a.inverse()))
        && elements.iter().all(|a| elements.iter().all(|b| set.contains(&a.compose(b))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_of_signed_permutations() {
        let a = SignedPermutation::new(vec![1, 2, 0], vec![1, -1, 1]).unwrap();
        let b = SignedPermutation::new(vec![2, 0, 1], vec![-1, -1, 1]).unwrap();
        assert_eq!(a.compose(&b).to_matrix(), matmul(&a.to_matrix(), &b.to_matrix()));
        assert_eq!(a.compose(&a.inverse()), SignedPermutation::identity(3));
        assert_eq!(SignedPermutation::from_matrix(&a.to_matrix()), Some(a.clone()));
        assert_eq!(SignedPermutation::all(3).len(), 48);
        assert_eq!(a.to_string(), "[+2 -3 +1]");
        assert!(SignedPermutation::new(vec![0, 0], vec![1, 1]).is_err());
        assert!(SignedPermutation::from_matrix(&[vec![1, 1], vec![0, 1]]).is_none());
    }

    #[test]
    fn transforms_stay_hadamard() {
        let w = HadamardMatrix::walsh(2).unwrap();
        let id = SignedPermutation::identity(4);
        assert_eq!(equivalent_transform(&w, &id, &id).unwrap(), w);
        for (i, p) in SignedPermutation::all(4).iter().enumerate().step_by(37) {
            let q = &SignedPermutation::all(4)[(i * 7) % 384];
            assert!(equivalent_transform(&w, p, q).is_ok());
        }
        let neg = SignedPermutation::new(vec![0, 1], vec![-1, 1]).unwrap();
        let w1 = HadamardMatrix::walsh(1).unwrap();
        let t = equivalent_transform(&w1, &neg, &SignedPermutation::identity(2)).unwrap();
        assert_eq!(t.rows(), &[vec![-1, -1], vec![1, -1]]);
    }

    #[test]
    fn small_groups_match_brute_force() {
        let one = HadamardMatrix::new(vec![vec![1]]).unwrap();
        assert_eq!(automorphism_group(&one).unwrap().len(), 2);
        for h in [HadamardMatrix::walsh(1).unwrap(), HadamardMatrix::walsh(2).unwrap(), HadamardMatrix::paley_type1(3).unwrap()] {
            let fast = automorphism_group(&h).unwrap();
            let mut slow = automorphism_group_brute_force(&h);
            slow.sort();
            assert_eq!(fast, slow);
            let qs: Vec<SignedPermutation> = fast.iter().map(|a| a.q.clone()).collect();
            assert!(is_group(&qs));
        }
        assert_eq!(automorphism_group(&HadamardMatrix::walsh(1).unwrap()).unwrap().len(), 8);
    }

    #[test]
    fn companions_are_symmetries_of_the_transpose() {
        // H Q = P H gives Hᵀ Pᵀ = Qᵀ Hᵀ, i.e. (P⁻¹, Q⁻¹) acts on Hᵀ
        let h = HadamardMatrix::paley_type1(3).unwrap();
        let ht = h.transpose();
        for a in automorphism_group(&h).unwrap() {
            assert_eq!(companion(&ht, &a.p.inverse()), Some(a.q.inverse()));
        }
        assert!(automorphism_group(&HadamardMatrix::paley_type1(11).unwrap()).is_err());
    }
}
