//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//!
//! Run with `cargo test -p spiders --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use spiders::fibre::FibreContext;
use spiders::hadamard::{so4_check, HadamardMatrix, SignedPermutation};
use spiders::report::Report;
use spiders::verify::{
    combinatorics, dims, gram, graph_action, hadamard_morphism, invariance, matrix_context, quantum_transpose,
    region_coloring, rewrite_soundness, shipped, spider_laws,
};

const MAX_EDGES: usize = 12;
const FAMILY: usize = 120;
const FAMILY_SEED: u64 = 2024;

struct Outcome {
    pass: bool,
    detail: String,
}

fn summarize(reports: &[Report]) -> Outcome {
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures().map(move |c| format!("{}: {} (expected {}, got {})", r.command, c.name, c.expected, c.actual)))
        .collect();
    Outcome {
        pass: failed.is_empty() && checks > 0,
        detail: if failed.is_empty() { format!("{checks} checks") } else { failed.join("; ") },
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    out.detail = format!("{} in {:.2?}", out.detail, took);
    if let Some(limit) = limit {
        if took > limit {
            out.pass = false;
            out.detail = format!("{} exceeds the {:?} budget", out.detail, limit);
        }
    }
    out
}

fn c1() -> Outcome {
    timed(Some(Duration::from_secs(1)), || summarize(&[4, 8, 12].map(|n| gram(n).unwrap())))
}

fn c2() -> Outcome {
    timed(Some(Duration::from_secs(120)), || {
        // ranks for (1,1), (2,2), (0,4) at total 2 and 4, (0,6), (2,4) at 6
        summarize(&[dims(4, 6).unwrap(), dims(8, 4).unwrap()])
    })
}

fn c3() -> Outcome {
    timed(Some(Duration::from_secs(1)), || summarize(&[so4_check().unwrap()]))
}

fn c4() -> Outcome {
    timed(None, || {
        let mut reports = Vec::new();
        for k in 1..=6 {
            let h = HadamardMatrix::walsh(k).unwrap();
            reports.push(hadamard_morphism(&format!("walsh({k})"), &h).unwrap());
        }
        for q in [3, 7, 11] {
            let h = HadamardMatrix::paley_type1(q).unwrap();
            reports.push(hadamard_morphism(&format!("paley({q})"), &h).unwrap());
        }
        summarize(&reports)
    })
}

fn c5() -> Outcome {
    timed(None, || {
        let reports = [4, 8].map(|n| invariance(n, MAX_EDGES, FAMILY, FAMILY_SEED).unwrap());
        let mut out = summarize(&reports);
        for r in &reports {
            let size: usize = r.data.iter().find(|(k, _)| k == "family size").unwrap().1.parse().unwrap();
            if size < 100 {
                out.pass = false;
                out.detail = format!("{}; family of {size} is below 100", out.detail);
            }
        }
        out
    })
}

fn c6() -> Outcome {
    timed(None, || summarize(&[rewrite_soundness(1000, MAX_EDGES, 10, 4, 7).unwrap()]))
}

fn c7() -> Outcome {
    timed(None, || summarize(&[quantum_transpose(2).unwrap(), quantum_transpose(3).unwrap()]))
}

fn c8() -> Outcome {
    timed(None, || {
        let mut reports = Vec::new();
        for n in [2, 4] {
            for (name, h) in shipped(n) {
                reports.push(graph_action(&name, &h).unwrap());
            }
        }
        // |Aut W₁| against every element of H₂ tried by hand
        let w = HadamardMatrix::walsh(1).unwrap();
        let by_hand = SignedPermutation::all(2)
            .iter()
            .filter(|q| spiders::hadamard::companion(&w, q).is_some())
            .count();
        let mut order = Report::new("aut walsh(1) order");
        order.check_eq("order", 8, by_hand);
        order.check_eq("order from search", by_hand, &reports[0].data[0].1);
        reports.push(order);
        summarize(&reports)
    })
}

fn c9() -> Outcome {
    timed(Some(Duration::from_secs(10)), || {
        let mut reports: Vec<Report> = [2, 4, 8]
            .map(|n| spider_laws(&format!("N={n}"), &FibreContext::Standard(n)).unwrap())
            .into();
        let m2 = spider_laws("M2", &matrix_context(2).unwrap()).unwrap();
        reports.push(m2);
        summarize(&reports)
    })
}

fn c10() -> Outcome {
    timed(None, || {
        let slots = [(0, 2), (2, 2), (0, 4), (0, 6), (2, 4), (4, 2)];
        summarize(&[combinatorics(8), region_coloring(&slots, 4000, 11).unwrap()])
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Gram determinant for N = 4, 8, 12", c1),
        ("span ranks equal squared Catalan numbers", c2),
        ("size-four Fourier identities", c3),
        ("Hadamard morphism identities, Walsh 2..64 and Paley 4, 8, 12", c4),
        ("closed-diagram invariance at sizes 4 and 8", c5),
        ("rewrite termination, confluence and soundness", c6),
        ("transposition quantum Hadamard matrix", c7),
        ("automorphisms act on the Hadamard graph", c8),
        ("spider and Frobenius identities", c9),
        ("partition counts and the region-colouring map", c10),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let out = f();
        all &= out.pass;
        println!("criterion {:>2} {} {name}: {}", i + 1, if out.pass { "PASS" } else { "FAIL" }, out.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
