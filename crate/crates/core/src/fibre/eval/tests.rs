use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::diagram::{compose, tensor};
use crate::generate::{random_word, WordConfig};
use crate::hadamard::HadamardMatrix;
use crate::fibre::FiniteQuantumSpace;

fn black(k: usize, l: usize) -> Diagram {
    Diagram::black_spider(k, l)
}

fn white(k: usize, l: usize) -> Diagram {
    Diagram::white_spider(k, l)
}

fn id(n: usize) -> Diagram {
    Diagram::identity(n)
}

fn classical(h: HadamardMatrix) -> FibreContext {
    FibreContext::Classical(h)
}

/// `n · swap` on `l²(M_n)`, written out by hand.
fn transpose_map(n: usize) -> Tensor {
    let dim = n * n;
    Tensor::from_fn(1, 1, dim, ExactScalar::from_int(n as i64), |ix| {
        let (a, b) = (ix[0] / n, ix[0] % n);
        i64::from(ix[1] == b * n + a)
    })
    .unwrap()
}

fn mn(n: usize, with_h: bool) -> FibreContext {
    FibreContext::Quantum {
        space: FiniteQuantumSpace::matrix(n).unwrap(),
        hadamard: with_h.then(|| transpose_map(n)),
    }
}

fn contexts() -> Vec<FibreContext> {
    vec![
        classical(HadamardMatrix::walsh(1).unwrap()),
        classical(HadamardMatrix::walsh(2).unwrap()),
        classical(HadamardMatrix::paley_type1(3).unwrap()),
        mn(2, true),
    ]
}

fn snake() -> Diagram {
    compose(&tensor(&id(1), &Diagram::cap()), &tensor(&Diagram::cup(), &id(1)))
}

#[test]
fn black_fork_is_delta() {
    let t = spider_tensor(&FibreContext::Standard(2), Color::Black, 2, 1).unwrap();
    let want = Tensor::from_fn(2, 1, 2, ExactScalar::one(), |ix| i64::from(ix[0] == ix[1] && ix[1] == ix[2])).unwrap();
    assert_eq!(t, want);
    let unit = spider_tensor(&FibreContext::Standard(3), Color::Black, 0, 0).unwrap();
    assert_eq!(unit.get(&[]), ExactScalar::from_int(3));
}

#[test]
fn white_identity_and_missing_datum() {
    for ctx in contexts() {
        let t = spider_tensor(&ctx, Color::White, 1, 1).unwrap();
        assert_eq!(t, Tensor::identity(ctx.leg_dim(), 1).unwrap(), "{}", ctx.name());
    }
    let err = spider_tensor(&FibreContext::Standard(2), Color::White, 1, 1);
    assert_eq!(err, Err(FibreError::MissingHadamard));
    assert_eq!(spider_tensor(&mn(2, false), Color::White, 1, 1), Err(FibreError::MissingHadamard));
}

#[test]
fn snake_is_identity() {
    let mut all = contexts();
    all.push(FibreContext::Standard(3));
    all.push(mn(3, false));
    for ctx in all {
        let t = evaluate(&snake(), &ctx).unwrap();
        assert_eq!(t, Tensor::identity(ctx.leg_dim(), 1).unwrap(), "{}", ctx.name());
    }
}

#[test]
fn white_fork_matches_direct_expansion() {
    for h in [HadamardMatrix::walsh(1).unwrap(), HadamardMatrix::paley_type1(3).unwrap()] {
        let n = h.size();
        let direct = Tensor::from_fn(2, 1, n, ExactScalar::sqrt_power(n as u64, -3), |ix| {
            (0..n).map(|j| h.entry(ix[0], j) * h.entry(ix[1], j) * h.entry(ix[2], j)).sum()
        })
        .unwrap();
        let t = spider_tensor(&classical(h.clone()), Color::White, 2, 1).unwrap();
        assert_eq!(t, direct);
        // N^{-1/2} (Hᵀ)⁻¹ m (Hᵀ ⊗ Hᵀ), with (Hᵀ)⁻¹ = H / N
        let ht = h.transpose().to_tensor().unwrap();
        let inv = h.to_tensor().unwrap().scaled(&ExactScalar::from_ratio(1, n as i64));
        let m = Tensor::from_fn(2, 1, n, ExactScalar::one(), |ix| i64::from(ix[0] == ix[1] && ix[1] == ix[2])).unwrap();
        let formula = inv.compose(&m).unwrap().compose(&ht.tensor(&ht).unwrap()).unwrap();
        assert_eq!(t, formula.scaled(&ExactScalar::sqrt_power(n as u64, -1)));
    }
}

#[test]
fn matrix_algebra_multiplication() {
    // m(ê_ab ⊗ ê_cd) = δ_bc ê_ad / √n for ê = e / √n
    for n in [2usize, 3] {
        let t = spider_tensor(&mn(n, false), Color::Black, 2, 1).unwrap();
        let want = Tensor::from_fn(2, 1, n * n, ExactScalar::sqrt_power(n as u64, -1), |ix| {
            let (a, b) = (ix[0] / n, ix[0] % n);
            let (c, d) = (ix[1] / n, ix[1] % n);
            i64::from(b == c && ix[2] == a * n + d)
        })
        .unwrap();
        assert_eq!(t, want, "n={n}");
        // unit is Σ ê_pp · √n
        let unit = spider_tensor(&mn(n, false), Color::Black, 0, 1).unwrap();
        let want = Tensor::from_fn(0, 1, n * n, ExactScalar::sqrt_power(n as u64, 1), |ix| {
            i64::from(ix[0] / n == ix[0] % n)
        })
        .unwrap();
        assert_eq!(unit, want);
        // δ² = n² for the tracial form
        let t00 = spider_tensor(&mn(n, false), Color::Black, 0, 0).unwrap();
        assert_eq!(t00.get(&[]), ExactScalar::from_int((n * n) as i64));
    }
}

#[test]
fn frobenius_law() {
    for ctx in [FibreContext::Standard(2), mn(2, false), mn(3, false)] {
        let a = evaluate(&compose(&tensor(&black(2, 1), &id(1)), &tensor(&id(1), &black(1, 2))), &ctx).unwrap();
        let b = evaluate(&compose(&black(1, 2), &black(2, 1)), &ctx).unwrap();
        let c = evaluate(&compose(&tensor(&id(1), &black(2, 1)), &tensor(&black(1, 2), &id(1))), &ctx).unwrap();
        assert_eq!(a, b, "{}", ctx.name());
        assert_eq!(b, c, "{}", ctx.name());
        assert_eq!(b, spider_tensor(&ctx, Color::Black, 2, 2).unwrap());
    }
}

#[test]
fn hopf_law() {
    // a black/white double edge splits at the price of 1/N
    for ctx in contexts() {
        let lhs = evaluate(&compose(&white(2, 1), &black(1, 2)), &ctx).unwrap();
        let rhs = evaluate(&compose(&white(0, 1), &black(1, 0)), &ctx).unwrap();
        let n = ctx.loop_value() as i64;
        assert_eq!(lhs, rhs.scaled(&ExactScalar::from_ratio(1, n)), "{}", ctx.name());
        // both colours share the cup
        let wc = evaluate(&compose(&white(1, 2), &white(0, 1)), &ctx).unwrap();
        let bc = evaluate(&compose(&black(1, 2), &black(0, 1)), &ctx).unwrap();
        assert_eq!(wc, bc, "{}", ctx.name());
    }
}

#[test]
fn crossing_is_flip() {
    for ctx in [FibreContext::Standard(3), mn(2, false)] {
        let d = ctx.leg_dim();
        let t = evaluate(&Diagram::crossing(), &ctx).unwrap();
        let want = Tensor::from_fn(2, 2, d, ExactScalar::one(), |ix| i64::from(ix[0] == ix[3] && ix[1] == ix[2])).unwrap();
        assert_eq!(t, want);
    }
}

#[test]
fn transpose_and_trace() {
    let ctx = FibreContext::Standard(4);
    assert_eq!(trace(&Tensor::identity(4, 1).unwrap(), &ctx).unwrap(), ExactScalar::from_int(4));
    let b11 = spider_tensor(&ctx, Color::Black, 1, 1).unwrap();
    assert_eq!(transpose(&b11, &ctx).unwrap(), b11);
    // Tr F_H(white4 ∘ black4) equals the closed-diagram scalar
    let h = classical(HadamardMatrix::walsh(2).unwrap());
    let body = compose(&white(2, 2), &black(2, 2));
    let t = evaluate(&body, &h).unwrap();
    let cup2 = compose(&tensor(&id(1), &tensor(&Diagram::cup(), &id(1))), &Diagram::cup());
    let closed = compose(&cup2.dagger(), &compose(&tensor(&body, &id(2)), &cup2));
    assert_eq!(trace(&t, &h).unwrap(), crate::rewrite::evaluate_closed(&closed, 4).unwrap());
}

#[test]
fn float_cross_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = WordConfig { max_width: 3, steps: 5, even_only: false, allow_white: true, allow_crossing: true };
    for ctx in contexts() {
        for _ in 0..20 {
            let d = random_word(&mut rng, 1, 2, &cfg);
            let exact = evaluate(&d, &ctx).unwrap().to_f64_entries();
            let approx = evaluate_float(&d, &ctx).unwrap();
            for (x, y) in exact.iter().zip(&approx) {
                assert!((x - y).abs() < 1e-9, "{} vs {} under {}", x, y, ctx.name());
            }
        }
    }
}

#[test]
fn functorial_on_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = WordConfig { max_width: 4, steps: 4, even_only: false, allow_white: true, allow_crossing: true };
    for ctx in contexts() {
        for _ in 0..10 {
            let g = random_word(&mut rng, 1, 2, &cfg);
            let f = random_word(&mut rng, 2, 1, &cfg);
            let fg = evaluate(&compose(&f, &g), &ctx).unwrap();
            let (tf, tg) = (evaluate(&f, &ctx).unwrap(), evaluate(&g, &ctx).unwrap());
            assert_eq!(fg, tf.compose(&tg).unwrap());
            assert_eq!(evaluate(&tensor(&f, &g), &ctx).unwrap(), tf.tensor(&tg).unwrap());
            assert_eq!(evaluate(&f.dagger(), &ctx).unwrap(), tf.dagger());
        }
    }
}
