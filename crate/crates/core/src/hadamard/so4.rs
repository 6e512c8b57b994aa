//! Exact `16 × 16` identities relating the size-four Hadamard spiders to the
//! Fourier transform on `Z₂ × Z₂`.

use super::equivalence::{compare, Equivalence};
use super::{HadamardMatrix, HadamardResult};
use crate::diagram::{compose, Color, Diagram};
use crate::fibre::{evaluate, spider_tensor, FibreContext, FibreResult};
use crate::report::Report;
use crate::scalar::ExactScalar;
use crate::tensor::Tensor;

/// `2I - J`.
pub fn two_i_minus_j() -> HadamardResult<HadamardMatrix> {
    HadamardMatrix::new((0..4).map(|i| (0..4).map(|j| if i == j { 1 } else { -1 }).collect()).collect())
}

/// Fourier transform on `Z₂ × Z₂` with XOR-labelled indices.
pub fn fourier() -> HadamardResult<HadamardMatrix> {
    HadamardMatrix::walsh(2)
}

/// `[T]^{ij}_{kl}`: `1` on `i=j=k=l`, `-1` on `i=l≠j=k`.
pub fn tilde_crossing() -> FibreResult<Tensor> {
    Ok(Tensor::from_fn(2, 2, 4, ExactScalar::one(), |ix| {
        let (k, l, i, j) = (ix[0], ix[1], ix[2], ix[3]);
        if i == j && j == k && k == l {
            1
        } else if i == l && j == k {
            -1
        } else {
            0
        }
    })?)
}

/// `1` exactly when all four indices differ.
pub fn all_distinct() -> FibreResult<Tensor> {
    Ok(Tensor::from_fn(2, 2, 4, ExactScalar::one(), |ix| {
        let distinct = (0..4).all(|a| (a + 1..4).all(|b| ix[a] != ix[b]));
        i64::from(distinct)
    })?)
}

fn power(t: &Tensor, k: usize) -> FibreResult<Tensor> {
    let mut out = Tensor::identity(t.dim(), 0)?;
    for _ in 0..k {
        out = out.tensor(t)?;
    }
    Ok(out)
}

fn sum(parts: &[(i64, &Tensor)]) -> FibreResult<Tensor> {
    let (first, rest) = parts.split_first().expect("non-empty sum");
    let mut acc = first.1.scaled(&ExactScalar::from_int(first.0));
    for (c, t) in rest {
        acc = acc.add(&t.scaled(&ExactScalar::from_int(*c)))?;
    }
    Ok(acc)
}

/// Runs every identity and reports each one.
pub fn so4_check() -> HadamardResult<Report> {
    let mut r = Report::new("so4");
    let h = two_i_minus_j()?;
    let f = fourier()?;
    r.check_true("2I-J is Hadamard", true);
    r.check_true("2I-J equivalent to F", matches!(compare(&h, &f), Equivalence::Equivalent(..)));

    let ctx = FibreContext::Classical(h);
    let std4 = FibreContext::Standard(4);
    let black = spider_tensor(&ctx, Color::Black, 2, 2)?;
    let white = spider_tensor(&ctx, Color::White, 2, 2)?;
    let tc = tilde_crossing()?;
    let distinct = all_distinct()?;
    let paabb = evaluate(&compose(&Diagram::cup(), &Diagram::cap()), &std4)?;
    let pabba = evaluate(&Diagram::identity(2), &std4)?;
    let crossing = evaluate(&Diagram::crossing(), &std4)?;
    let b4 = spider_tensor(&std4, Color::Black, 2, 2)?;
    r.check_true("tilde crossing = 2 black - crossing", tc == sum(&[(2, &b4), (-1, &crossing)])?);

    let ft = f.to_tensor()?;
    let quarter = ExactScalar::from_ratio(1, 4);
    let f_inv = ft.scaled(&quarter);
    let f2 = ft.tensor(&ft)?;
    let f2_inv = f_inv.tensor(&f_inv)?;
    let conj = |t: &Tensor| -> FibreResult<Tensor> { Ok(f2.compose(t)?.compose(&f2_inv)?.scaled(&quarter)) };
    let inner_black = sum(&[(-1, &tc), (1, &distinct), (1, &paabb), (1, &pabba)])?;
    let inner_white = sum(&[(-1, &tc), (-1, &distinct), (1, &paabb), (1, &pabba)])?;
    r.check_true("black 4-valent as Fourier conjugate", black == conj(&inner_black)?);
    r.check_true("white 4-valent as Fourier conjugate", white == conj(&inner_white)?);

    let half = ExactScalar::from_ratio(1, 2);
    let back = |t: &Tensor| -> FibreResult<Tensor> { Ok(f2_inv.compose(t)?.compose(&f2)?) };
    let diff = back(&black.sub(&white)?)?;
    let plus = back(&black.add(&white)?)?;
    r.check_true("difference is half the all-distinct tensor", diff == distinct.scaled(&half));
    let rest = sum(&[(-1, &tc), (1, &paabb), (1, &pabba)])?.scaled(&half);
    r.check_true("sum is half of -tilde crossing + pairings", plus == rest);

    for total in 0..=4usize {
        for k in 0..=total {
            let l = total - k;
            let spider = spider_tensor(&std4, Color::Black, k, l)?;
            let got = power(&f_inv, l)?.compose(&spider)?.compose(&power(&ft, k)?)?;
            let scale = ExactScalar::from_ratio(4, 4i64.pow(l as u32));
            let want = Tensor::from_fn(k, l, 4, scale, |ix| {
                let lower = ix[..k].iter().fold(0, |a, &x| a ^ x);
                let upper = ix[k..].iter().fold(0, |a, &x| a ^ x);
                i64::from(lower == upper)
            })?;
            r.check_true(format!("Fourier spider ({k},{l})"), got == want);
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold() {
        let r = so4_check().unwrap();
        let failed: Vec<_> = r.failures().map(|c| c.name.clone()).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(r.checks.len(), 7 + 15);
    }

    #[test]
    fn tensors_by_hand() {
        let tc = tilde_crossing().unwrap();
        assert_eq!(tc.raw(&[1, 1, 1, 1]), 1);
        assert_eq!(tc.raw(&[1, 2, 2, 1]), -1);
        assert_eq!(tc.raw(&[1, 2, 1, 2]), 0);
        let d = all_distinct().unwrap();
        assert_eq!(d.entries().iter().sum::<i64>(), 24);
        assert_eq!(two_i_minus_j().unwrap().trace(), 4);
    }
}
