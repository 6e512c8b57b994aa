//! Verification suites shared by the command line and the test suites.
//! Every suite returns a [`Report`]; failures are recorded, not raised.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{compose, shape_key, tensor, Diagram, DiagramError, Prefactor};
use crate::fibre::{
    evaluate, five_element_basis, gram_det, span_saturate, FibreContext, FibreError, FiniteQuantumSpace,
};
use crate::generate::{closed_even_family, random_closed_even, random_planar, random_word, WordConfig};
use crate::hadamard::{
    automorphism_group, automorphism_group_brute_force, graph_axioms, hadamard_graph, hopf_sides, is_group,
    is_permutation_matrix, magic_from_automorphism, matmul, quantum_hadamard_graph, two_i_minus_j, HadamardError,
    HadamardMatrix, QuantumHadamard,
};
use crate::partitions::{catalan, enumerate_nc_pairings, enumerate_nc_partitions, SetPartition};
use crate::report::Report;
use crate::rewrite::{confluence_probe, evaluate_closed, normalize, RewriteError};
use crate::scalar::ExactScalar;
use crate::tensor::{Tensor, TensorError};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Fibre(#[from] FibreError),
    #[error(transparent)]
    Hadamard(#[from] HadamardError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("no shipped Hadamard matrix of size {0}")]
    NoMatrix(usize),
}

pub type VerifyResult<T> = Result<T, VerifyError>;

/// Built-in matrices of size `n`: Walsh, Paley over primes, and `2I - J`.
pub fn shipped(n: usize) -> Vec<(String, HadamardMatrix)> {
    let mut out = Vec::new();
    if n.is_power_of_two() && n >= 2 {
        let k = n.trailing_zeros();
        if let Ok(h) = HadamardMatrix::walsh(k) {
            out.push((format!("walsh({k})"), h));
        }
    }
    if n >= 4 {
        if let Ok(h) = HadamardMatrix::paley_type1(n as u64 - 1) {
            out.push((format!("paley({})", n - 1), h));
        }
    }
    if n == 4 {
        out.push(("2I-J".to_string(), two_i_minus_j().expect("Hadamard")));
    }
    out
}

fn first_shipped(n: usize) -> VerifyResult<(String, HadamardMatrix)> {
    shipped(n).into_iter().next().ok_or(VerifyError::NoMatrix(n))
}

fn scalar_of(t: &Tensor) -> ExactScalar {
    t.get(&[])
}

fn int_matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// Largest size at which the identities are also recomputed through the
/// fibre-functor Schur product and conjugate.
pub const FIBRE_CROSS_CHECK_SIZE: usize = 8;

/// `H* = H`, `H ∙ H = J` and `H H† = N id = H† H`.
pub fn hadamard_morphism(name: &str, h: &HadamardMatrix) -> VerifyResult<Report> {
    let mut r = Report::new(format!("verify had {name}"));
    add_hadamard_morphism(&mut r, name, h)?;
    Ok(r)
}

fn add_hadamard_morphism(r: &mut Report, name: &str, h: &HadamardMatrix) -> VerifyResult<()> {
    let n = h.size();
    let m = h.to_i64();
    let t = h.transpose().to_i64();
    // ±1 entries are real, so the conjugate H* = (H†)ᵀ is H itself
    r.check_true(format!("{name} self-conjugate"), m.iter().flatten().all(|x| x.abs() == 1));
    let schur_ok = m.iter().flatten().all(|&x| x * x == 1);
    r.check_true(format!("{name} Schur square is J"), schur_ok);
    let scaled_id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { n as i64 } else { 0 }).collect()).collect();
    r.check_true(format!("{name} unitary up to N"), int_matmul(&m, &t) == scaled_id && int_matmul(&t, &m) == scaled_id);
    if n <= FIBRE_CROSS_CHECK_SIZE {
        let ax = QuantumHadamard::classical(h)?.axioms()?;
        r.check_true(format!("{name} self-conjugate (fibre)"), ax.self_conjugate);
        r.check_true(format!("{name} Schur square is J (fibre)"), ax.schur_square);
        r.check_true(format!("{name} unitary up to N (fibre)"), ax.unitary);
    }
    Ok(())
}

/// The Hadamard-morphism identities for every built-in matrix up to `max_size`.
pub fn hadamard_morphism_all(max_size: usize) -> VerifyResult<Report> {
    let mut r = Report::new(format!("verify had --all --max-size {max_size}"));
    let mut n = 2;
    while n <= max_size {
        for (name, h) in shipped(n) {
            add_hadamard_morphism(&mut r, &name, &h)?;
        }
        n += if n < 4 { 2 } else { 4 };
    }
    Ok(r)
}

/// `N³ (N-1)⁴ (N-2)`.
pub fn gram_formula(n: i64) -> i64 {
    n.pow(3) * (n - 1).pow(4) * (n - 2)
}

/// Determinant of the Gram matrix of the five `(2,2)` diagrams.
pub fn gram(n: usize) -> VerifyResult<Report> {
    let (name, h) = first_shipped(n)?;
    let mut r = Report::new(format!("gram --N {n}"));
    let basis = five_element_basis(&FibreContext::Classical(h))?;
    let det = gram_det(&basis)?;
    r.data("matrix", name);
    r.check_eq(format!("det N={n}"), gram_formula(n as i64), det);
    Ok(r)
}

/// Generators of the even bipartite category.
pub fn even_generators() -> Vec<Diagram> {
    vec![Diagram::black_spider(2, 2), Diagram::white_spider(2, 2), Diagram::cap()]
}

/// Saturated span ranks against `C²_{(k+l)/2}`. Every slot with the same
/// total leg count is reached by bending, so one saturation covers them all.
pub fn dims(n: usize, max_legs: usize) -> VerifyResult<Report> {
    let (name, h) = first_shipped(n)?;
    let mut r = Report::new(format!("dims --N {n} --max-legs {max_legs}"));
    r.data("matrix", name);
    let res = span_saturate(&FibreContext::Classical(h), &even_generators(), (0, max_legs), max_legs)?;
    for total in 1..=max_legs {
        let got = res.ranks.get(&total).copied().unwrap_or(0);
        let want = if total % 2 == 0 { catalan(total as u32 / 2).pow(2) } else { 0 };
        for k in 0..=total / 2 {
            r.check_eq(format!("rank ({k},{})", total - k), want, got);
        }
    }
    Ok(r)
}

/// Closed even diagrams take one value under every built-in matrix of size
/// `n`, and that value is the rewrite-engine scalar.
pub fn invariance(n: usize, max_edges: usize, count: usize, seed: u64) -> VerifyResult<Report> {
    let mats = shipped(n);
    if mats.is_empty() {
        return Err(VerifyError::NoMatrix(n));
    }
    let mut r = Report::new(format!("invariance --size {n} --max-edges {max_edges}"));
    let names: Vec<&str> = mats.iter().map(|(s, _)| s.as_str()).collect();
    r.data("matrices", names.join(","));
    let family = closed_even_family(max_edges, count, seed);
    r.data("family size", family.len());
    let ctxs: Vec<FibreContext> = mats.iter().map(|(_, h)| FibreContext::Classical(h.clone())).collect();
    for (i, d) in family.iter().enumerate() {
        let want = evaluate_closed(d, n as u64)?;
        let values = ctxs.iter().map(|c| Ok(scalar_of(&evaluate(d, c)?))).collect::<VerifyResult<Vec<_>>>()?;
        let same = values.iter().all(|v| *v == want);
        let shown = if same { want.to_string() } else { values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",") };
        r.check(format!("diagram {i}"), &want, shown, same);
    }
    Ok(r)
}

/// Termination and agreement with the fibre functor on random planar
/// diagrams, plus randomized confluence on random closed even diagrams, all
/// evaluated over a built-in matrix of size `n`.
pub fn rewrite_soundness(count: usize, max_edges: usize, probes: usize, n: usize, seed: u64) -> VerifyResult<Report> {
    let (name, h) = first_shipped(n)?;
    let ctx = FibreContext::Classical(h);
    let mut r = Report::new(format!("rewrite --count {count} --max-edges {max_edges} --N {n}"));
    r.data("matrix", name);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..probes as u64).collect();
    let (mut terminated, mut sound, mut confluent, mut closed_sound) = (0, 0, 0, 0);
    for _ in 0..count {
        let d = random_planar(&mut rng, max_edges);
        let Ok((residual, s)) = normalize(&d, n as u64) else { continue };
        terminated += 1;
        if evaluate(&d, &ctx)? == evaluate(&residual, &ctx)?.scaled(&s) {
            sound += 1;
        }
    }
    for _ in 0..count {
        let d = random_closed_even(&mut rng, max_edges);
        if confluence_probe(&d, n as u64, &seeds) {
            confluent += 1;
        }
        if scalar_of(&evaluate(&d, &ctx)?) == evaluate_closed(&d, n as u64)? {
            closed_sound += 1;
        }
    }
    r.check_eq("planar diagrams terminated", count, terminated);
    r.check_eq("fibre value preserved", count, sound);
    r.check_eq(format!("closed even diagrams confluent over {probes} random orders"), count, confluent);
    r.check_eq("closed scalar equals fibre value", count, closed_sound);
    Ok(r)
}

/// Fusion, symmetry under the flip, snake and Frobenius identities.
pub fn spider_laws(label: &str, ctx: &FibreContext) -> VerifyResult<Report> {
    let mut r = Report::new(format!("spider-laws {label}"));
    let ev = |d: &Diagram| evaluate(d, ctx);
    let b = Diagram::black_spider;
    let id = Diagram::identity;
    let fusions = [
        ("m(m⊗id) = m(id⊗m)", compose(&b(2, 1), &tensor(&b(2, 1), &id(1))), compose(&b(2, 1), &tensor(&id(1), &b(2, 1)))),
        ("m(m⊗id) = spider(3,1)", compose(&b(2, 1), &tensor(&b(2, 1), &id(1))), b(3, 1)),
        ("m m† = spider(1,1)", compose(&b(2, 1), &b(1, 2)), b(1, 1)),
        ("spider(1,1) = id", b(1, 1), id(1)),
        ("m(η⊗id) = id", compose(&b(2, 1), &tensor(&b(0, 1), &id(1))), id(1)),
        ("spider(2,2) = m† m", compose(&b(1, 2), &b(2, 1)), b(2, 2)),
        ("(m⊗id)(id⊗m†) = spider(2,2)", compose(&tensor(&b(2, 1), &id(1)), &tensor(&id(1), &b(1, 2))), b(2, 2)),
        ("spider(0,2) = cup", b(0, 2), Diagram::cup()),
    ];
    for (name, lhs, rhs) in &fusions {
        r.check_true(format!("fusion {name}"), ev(lhs)? == ev(rhs)?);
    }
    // symmetry under the flip forces commutativity, so a noncommutative
    // space must violate it
    let commutative = match ctx {
        FibreContext::Quantum { space, .. } => space.is_commutative(),
        _ => true,
    };
    for (k, l) in [(2usize, 1usize), (2, 2), (3, 1)] {
        let flip = tensor(&Diagram::crossing(), &id(k - 2));
        let holds = ev(&compose(&b(k, l), &flip))? == ev(&b(k, l))?;
        if commutative {
            r.check_true(format!("flip symmetry ({k},{l})"), holds);
        } else {
            r.check_eq(format!("flip symmetry ({k},{l}) fails without commutativity"), false, holds);
        }
    }
    let snake = compose(&tensor(&id(1), &Diagram::cap()), &tensor(&Diagram::cup(), &id(1)));
    let snake2 = compose(&tensor(&Diagram::cap(), &id(1)), &tensor(&id(1), &Diagram::cup()));
    r.check_true("snake left", ev(&snake)? == ev(&id(1))?);
    r.check_true("snake right", ev(&snake2)? == ev(&id(1))?);
    let frob_l = compose(&tensor(&b(2, 1), &id(1)), &tensor(&id(1), &b(1, 2)));
    let frob_r = compose(&tensor(&id(1), &b(2, 1)), &tensor(&b(1, 2), &id(1)));
    let middle = compose(&b(1, 2), &b(2, 1));
    r.check_true("Frobenius law left", ev(&frob_l)? == ev(&middle)?);
    r.check_true("Frobenius law right", ev(&frob_r)? == ev(&middle)?);
    Ok(r)
}

/// Everything about the transposition quantum Hadamard matrix on `M_n`.
pub fn quantum_transpose(n: usize) -> VerifyResult<Report> {
    let qh = QuantumHadamard::transpose(n)?;
    let mut r = Report::new(format!("qh transpose --n {n}"));
    let ax = qh.axioms()?;
    r.check_true("self-conjugate", ax.self_conjugate);
    r.check_true("Schur square is ηη†", ax.schur_square);
    r.check_true(format!("unitary up to {}", n * n), ax.unitary);
    let (lhs, rhs) = hopf_sides(&qh.context())?;
    r.check_true("complementarity (Hopf law)", lhs == rhs);
    let ctx = qh.context();
    let ev = |d: &Diagram| evaluate(d, &ctx);
    r.check_true("black cup = white cup", ev(&Diagram::black_spider(0, 2))? == ev(&Diagram::white_spider(0, 2))?);
    let w = Diagram::white_spider;
    let assoc = compose(&w(2, 1), &tensor(&w(2, 1), &Diagram::identity(1)));
    r.check_true("white fusion", ev(&assoc)? == ev(&w(3, 1))?);
    r.check_true("white m m† = id", ev(&compose(&w(2, 1), &w(1, 2)))? == ev(&Diagram::identity(1))?);
    if n <= 2 {
        for looped in [false, true] {
            let a = quantum_hadamard_graph(&qh, looped)?;
            let g = graph_axioms(&qh, &a)?;
            let tag = if looped { "A0" } else { "A" };
            r.check_true(format!("{tag} Schur idempotent"), g.idempotent);
            r.check_true(format!("{tag} self-conjugate"), g.self_conjugate);
            r.check_true(format!("{tag} self-adjoint"), g.self_adjoint);
            r.check_eq(format!("{tag} loopless"), !looped, g.loopless);
        }
    }
    Ok(r)
}

/// Classical automorphisms act on the Hadamard graph by commuting permutations.
pub fn graph_action(name: &str, h: &HadamardMatrix) -> VerifyResult<Report> {
    let mut r = Report::new(format!("aut {name}"));
    let auts = automorphism_group(h)?;
    let qs: Vec<_> = auts.iter().map(|a| a.q.clone()).collect();
    r.data("order", auts.len());
    r.check_true("closed under composition and inverses", is_group(&qs));
    let g = hadamard_graph(h, false);
    let (mut perm, mut with_a, mut with_a0) = (0, 0, 0);
    for a in &auts {
        let u = magic_from_automorphism(h, &a.q)?;
        perm += usize::from(is_permutation_matrix(&u));
        with_a += usize::from(matmul(&u, &g.a) == matmul(&g.a, &u));
        with_a0 += usize::from(matmul(&u, &g.a0) == matmul(&g.a0, &u));
    }
    r.check_eq("u is a permutation", auts.len(), perm);
    r.check_eq("uA = Au", auts.len(), with_a);
    r.check_eq("uA0 = A0u", auts.len(), with_a0);
    if h.size() <= 4 {
        let brute = automorphism_group_brute_force(h);
        let fast: HashSet<_> = qs.iter().map(ToString::to_string).collect();
        let slow: HashSet<_> = brute.iter().map(|a| a.q.to_string()).collect();
        r.check_true("matches exhaustive search", fast == slow);
    }
    Ok(r)
}

/// Independent crossing test: `a < b < c < d` with `a, c` in one block and
/// `b, d` in another.
fn crosses(labels: &[usize]) -> bool {
    let m = labels.len();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for d in c + 1..m {
                    if labels[a] == labels[c] && labels[b] == labels[d] && labels[a] != labels[b] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Every restricted growth string of length `m`.
fn growth_strings(m: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, m: usize, top: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        for x in 0..=top {
            prefix.push(x);
            go(prefix, m, top.max(x + 1), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), m, 0, &mut out);
    out
}

/// Non-crossing partition and pairing counts against brute force.
pub fn combinatorics(max_points: usize) -> Report {
    let mut r = Report::new(format!("combinatorics --max-points {max_points}"));
    for m in 1..=max_points {
        let all = growth_strings(m);
        let nc: Vec<&Vec<usize>> = all.iter().filter(|l| !crosses(l)).collect();
        let pairs = nc
            .iter()
            .filter(|l| {
                let mut sizes: HashMap<usize, usize> = HashMap::new();
                l.iter().for_each(|&b| *sizes.entry(b).or_default() += 1);
                sizes.values().all(|&s| s == 2)
            })
            .count();
        r.check_eq(format!("NC partitions of {m}"), catalan(m as u32), nc.len());
        r.check_eq(format!("enumerated NC partitions of {m}"), nc.len(), enumerate_nc_partitions(m).len());
        let want_pairs = if m % 2 == 0 { catalan(m as u32 / 2) } else { 0 };
        r.check_eq(format!("NC pairings of {m}"), want_pairs, pairs);
        r.check_eq(format!("enumerated NC pairings of {m}"), pairs, enumerate_nc_pairings(m).len());
    }
    r
}

/// Normal forms of random even words at each slot, keyed by shape.
fn normal_forms(slot: (usize, usize), words: usize, seed: u64) -> VerifyResult<Vec<Diagram>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..words {
        let cfg = WordConfig { steps: rand::Rng::gen_range(&mut rng, 1..=8), ..WordConfig::default() };
        let d = random_word(&mut rng, slot.0, slot.1, &cfg);
        let (nf, _) = normalize(&d, 4)?;
        let nf = nf.with_prefactor(Prefactor::one());
        if seen.insert(shape_key(&nf)) {
            out.push(nf);
        }
    }
    Ok(out)
}

/// The region-colouring map on normal forms of even diagrams: injective,
/// and its image has `C²_{(k+l)/2}` elements.
pub fn region_coloring(slots: &[(usize, usize)], words: usize, seed: u64) -> VerifyResult<Report> {
    let mut r = Report::new(format!("region-coloring --words {words}"));
    for &(k, l) in slots {
        let forms = normal_forms((k, l), words, seed)?;
        let mut image: BTreeMap<(SetPartition, SetPartition), usize> = BTreeMap::new();
        for d in &forms {
            *image.entry(d.region_coloring_pair()?).or_default() += 1;
        }
        let want = catalan(((k + l) / 2) as u32).pow(2);
        r.data(format!("normal forms ({k},{l})"), forms.len());
        r.check_true(format!("injective ({k},{l})"), image.values().all(|&c| c == 1));
        r.check_eq(format!("image size ({k},{l})"), want, image.len());
    }
    Ok(r)
}

/// `M_n` with its tracial δ-form and no Hadamard datum.
pub fn matrix_context(n: usize) -> VerifyResult<FibreContext> {
    Ok(FibreContext::Quantum { space: FiniteQuantumSpace::matrix(n)?, hadamard: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_sizes() {
        assert_eq!(shipped(2).len(), 1);
        assert_eq!(shipped(4).len(), 3);
        assert_eq!(shipped(8).len(), 2);
        assert_eq!(shipped(12).len(), 1);
        assert_eq!(shipped(64).len(), 1);
        assert!(shipped(6).is_empty());
    }

    #[test]
    fn brute_force_counts() {
        assert_eq!(growth_strings(4).len(), 15);
        assert!(crosses(&[0, 1, 0, 1]));
        assert!(!crosses(&[0, 1, 1, 0]));
        assert!(combinatorics(6).passed());
    }

    #[test]
    fn small_suites_pass() {
        assert!(gram(4).unwrap().passed());
        assert!(hadamard_morphism_all(12).unwrap().passed());
        assert!(spider_laws("N=2", &FibreContext::Standard(2)).unwrap().passed());
        let q = quantum_transpose(2).unwrap();
        assert!(q.passed(), "{q}");
        let g = graph_action("walsh(1)", &HadamardMatrix::walsh(1).unwrap()).unwrap();
        assert!(g.passed());
        assert_eq!(g.data[0].1, "8");
    }

    #[test]
    fn gram_formula_values() {
        assert_eq!(gram_formula(4), 10368);
        assert_eq!(gram_formula(2), 0);
    }
}
