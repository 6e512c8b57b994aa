use super::signed::SignedPermutation;
use super::{HadamardError, HadamardMatrix, HadamardResult};

pub const MAX_EQUIVALENCE_SIZE: usize = 4;

/// Finds `(P, Q)` with `b = P a Q⁻¹` by trying every `Q ∈ H_N`.
pub fn find_equivalence(
    a: &HadamardMatrix,
    b: &HadamardMatrix,
) -> HadamardResult<Option<(SignedPermutation, SignedPermutation)>> {
    let n = a.size();
    if b.size() != n {
        return Ok(None);
    }
    if n > MAX_EQUIVALENCE_SIZE {
        return Err(HadamardError::TooLarge(format!(
            "exhaustive equivalence is bounded by N ≤ {MAX_EQUIVALENCE_SIZE}"
        )));
    }
    // b Q = P a, so P = b Q a⁻¹ = b Q aᵀ / N
    let at = a.transpose().to_i64();
    let bm = b.to_i64();
    for q in SignedPermutation::all(n) {
        let qm = q.to_matrix();
        let bq: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| bm[i][k] * qm[k][j]).sum()).collect()).collect();
        let prod: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| bq[i][k] * at[k][j]).sum()).collect()).collect();
        if prod.iter().flatten().any(|x| x % n as i64 != 0) {
            continue;
        }
        let pm: Vec<Vec<i64>> = prod.iter().map(|r| r.iter().map(|x| x / n as i64).collect()).collect();
        if let Some(p) = SignedPermutation::from_matrix(&pm) {
            return Ok(Some((p, q)));
        }
    }
    Ok(None)
}

/// Sorted `|Σ_c h_ic h_jc h_kc h_lc|` over row quadruples `i < j < k < l`.
/// Unchanged by row and column permutations and sign changes.
pub fn four_profile(h: &HadamardMatrix) -> Vec<i64> {
    let n = h.size();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let s: i64 = (0..n).map(|c| h.entry(i, c) * h.entry(j, c) * h.entry(k, c) * h.entry(l, c)).sum();
                    out.push(s.abs());
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent(SignedPermutation, SignedPermutation),
    Inequivalent,
    /// Necessary invariants agree but the pair is too large to decide.
    Undecided,
}

/// Decides equivalence for `N ≤ 4`; above that only compares invariants.
pub fn compare(a: &HadamardMatrix, b: &HadamardMatrix) -> Equivalence {
    if a.size() != b.size() || four_profile(a) != four_profile(b) {
        return Equivalence::Inequivalent;
    }
    match find_equivalence(a, b) {
        Ok(Some((p, q))) => Equivalence::Equivalent(p, q),
        Ok(None) => Equivalence::Inequivalent,
        Err(_) => Equivalence::Undecided,
    }
}
