//! Seeded generation of diagram families built from generator words.
//!
//! A word starts from `identity(n_lower)` and stacks layers
//! `id ⊗ g ⊗ id` on top, where `g` is a spider, a cup, a cap or (optionally)
//! a crossing. Everything is driven by a `ChaCha8Rng`, so a seed fixes the
//! diagram.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{compose, shape_key, tensor_all, Color, Diagram};

#[derive(Clone, Debug)]
pub struct WordConfig {
    /// Maximum number of open strands between layers.
    pub max_width: usize,
    /// Number of random layers before closing up to the target arity.
    pub steps: usize,
    /// Only 4-valent spiders (the generators of the even category).
    pub even_only: bool,
    pub allow_white: bool,
    pub allow_crossing: bool,
}

impl Default for WordConfig {
    fn default() -> Self {
        WordConfig { max_width: 6, steps: 6, even_only: true, allow_white: true, allow_crossing: false }
    }
}

/// Number of edges, bare loops included.
pub fn edge_count(d: &Diagram) -> usize {
    d.edges().len() + d.loops()
}

fn layer(width: usize, pos: usize, g: &Diagram) -> Diagram {
    let right = width - pos - g.n_lower();
    tensor_all([&Diagram::identity(pos), g, &Diagram::identity(right)])
}

fn random_spider(rng: &mut impl Rng, cfg: &WordConfig, width: usize) -> Option<Diagram> {
    let mut options = Vec::new();
    let legs: &[usize] = if cfg.even_only { &[4] } else { &[1, 2, 3, 4] };
    for &total in legs {
        for a in 0..=total.min(width) {
            let b = total - a;
            if width - a + b <= cfg.max_width {
                options.push((a, b));
            }
        }
    }
    if options.is_empty() {
        return None;
    }
    let (a, b) = options[rng.gen_range(0..options.len())];
    let color = if cfg.allow_white && rng.gen_bool(0.5) { Color::White } else { Color::Black };
    Some(Diagram::spider(color, a, b))
}

/// A random word diagram of slot `(n_lower, n_upper)`.
pub fn random_word(rng: &mut impl Rng, n_lower: usize, n_upper: usize, cfg: &WordConfig) -> Diagram {
    let mut d = Diagram::identity(n_lower);
    let mut width = n_lower;
    for _ in 0..cfg.steps {
        let choice = rng.gen_range(0..10);
        let g = match choice {
            0..=5 => random_spider(rng, cfg, width),
            6 | 7 if width + 2 <= cfg.max_width => Some(Diagram::cup()),
            8 if width >= 2 => Some(Diagram::cap()),
            9 if cfg.allow_crossing && width >= 2 => Some(Diagram::crossing()),
            _ => None,
        };
        let Some(g) = g else { continue };
        let pos = rng.gen_range(0..=width - g.n_lower());
        d = compose(&layer(width, pos, &g), &d);
        width = d.n_upper();
    }
    // fix parity with a one-legged spider, then close up or open out
    if (width + n_upper) % 2 == 1 {
        let g = if width > n_upper { Diagram::black_spider(1, 0) } else { Diagram::black_spider(0, 1) };
        let pos = rng.gen_range(0..=width - g.n_lower());
        d = compose(&layer(width, pos, &g), &d);
        width = d.n_upper();
    }
    while width > n_upper {
        let pos = rng.gen_range(0..=width - 2);
        d = compose(&layer(width, pos, &Diagram::cap()), &d);
        width -= 2;
    }
    while width < n_upper {
        let pos = rng.gen_range(0..=width);
        d = compose(&layer(width, pos, &Diagram::cup()), &d);
        width += 2;
    }
    d
}

/// The theta: a black and a white 4-valent vertex joined by four edges.
pub fn theta() -> Diagram {
    compose(&Diagram::white_spider(4, 0), &Diagram::black_spider(0, 4))
}

/// Distinct closed even diagrams with at most `max_edges` edges, found by
/// sweeping seeds from `seed` until `count` shapes are collected or the
/// seed budget runs out.
pub fn closed_even_family(max_edges: usize, count: usize, seed: u64) -> Vec<Diagram> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |d: Diagram, out: &mut Vec<Diagram>| {
        if edge_count(&d) <= max_edges && seen.insert(shape_key(&d)) {
            out.push(d);
        }
    };
    push(Diagram::black_spider(0, 0), &mut out);
    push(compose(&Diagram::cap(), &Diagram::cup()), &mut out);
    push(theta(), &mut out);
    push(Diagram::tensor(&theta(), &theta()), &mut out);
    let budget = 200 * count as u64 + 1000;
    for s in 0..budget {
        if out.len() >= count {
            break;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s));
        let cfg = WordConfig { steps: rng.gen_range(1..=8), ..WordConfig::default() };
        let d = random_word(&mut rng, 0, 0, &cfg);
        if d.is_bare() {
            continue;
        }
        push(d, &mut out);
    }
    out
}

/// Random planar diagrams of mixed arity and parity, for termination tests.
pub fn random_planar(rng: &mut impl Rng, max_edges: usize) -> Diagram {
    loop {
        let even = rng.gen_bool(0.5);
        let (k, l) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let cfg = WordConfig {
            steps: rng.gen_range(1..=7),
            even_only: even,
            max_width: 6,
            ..WordConfig::default()
        };
        let d = random_word(rng, k, l, &cfg);
        if edge_count(&d) <= max_edges {
            return d;
        }
    }
}

/// Random closed even diagram with at most `max_edges` edges.
pub fn random_closed_even(rng: &mut impl Rng, max_edges: usize) -> Diagram {
    loop {
        let cfg = WordConfig { steps: rng.gen_range(1..=8), ..WordConfig::default() };
        let d = random_word(rng, 0, 0, &cfg);
        if edge_count(&d) <= max_edges {
            return d;
        }
    }
}
