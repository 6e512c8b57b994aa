//! Reduction rules for planar spider diagrams and exact evaluation of closed
//! diagrams.
//!
//! Rules, in the order the deterministic strategy tries them:
//!
//! | rule | effect | factor |
//! |------|--------|--------|
//! | R2 | delete a self-loop | 1 |
//! | R1 | contract an edge between two vertices of one colour | 1 |
//! | R3 | delete two parallel black–white edges | 1/N |
//! | R5 | smooth a vertex of degree two | 1 |
//! | R6 | delete a bare loop | N |
//! | R4 | delete an isolated vertex | N |
//!
//! Within a rule the lowest vertex id wins. Every rule lowers `2E + V`
//! (bare loops count as edges), so normalization terminates.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{Color, Diagram, Endpoint, Vertex};
use crate::scalar::ExactScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rewriting needs a planar diagram")]
    NonPlanar,
    #[error("N must be positive")]
    BadN,
    #[error("diagram is not closed: {0} lower and {1} upper legs")]
    NotClosed(usize, usize),
    #[error("normalization stalled with {vertices} vertices and {edges} edges left")]
    ResidualDiagram { vertices: usize, edges: usize },
}

pub type RewriteResult<T> = Result<T, RewriteError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Fusion,
    SelfLoop,
    Complementary,
    Isolated,
    Smooth,
    BareLoop,
}

impl Rule {
    pub fn code(self) -> &'static str {
        match self {
            Rule::Fusion => "R1",
            Rule::SelfLoop => "R2",
            Rule::Complementary => "R3",
            Rule::Isolated => "R4",
            Rule::Smooth => "R5",
            Rule::BareLoop => "R6",
        }
    }

    /// Power of `N` contributed by one application.
    fn n_power(self) -> i32 {
        match self {
            Rule::Complementary => -1,
            Rule::Isolated | Rule::BareLoop => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    /// Vertex ids touched, before the step.
    pub vertices: Vec<usize>,
    pub factor: ExactScalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RewriteTrace {
    pub steps: Vec<TraceStep>,
}

impl fmt::Display for RewriteTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            let ids: Vec<String> = s.vertices.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{i}\t{}\t[{}]\t{}", s.rule, ids.join(","), s.factor)?;
        }
        Ok(())
    }
}

/// One applicable rewrite.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Step {
    SelfLoop { v: usize, s: usize, t: usize },
    Fuse { u: usize, su: usize, v: usize, sv: usize },
    Hopf { b: usize, slots: [usize; 2], w: usize },
    Smooth { v: usize },
    BareLoop,
    Isolated { v: usize },
}

impl Step {
    fn rule(&self) -> Rule {
        match self {
            Step::SelfLoop { .. } => Rule::SelfLoop,
            Step::Fuse { .. } => Rule::Fusion,
            Step::Hopf { .. } => Rule::Complementary,
            Step::Smooth { .. } => Rule::Smooth,
            Step::BareLoop => Rule::BareLoop,
            Step::Isolated { .. } => Rule::Isolated,
        }
    }

    fn vertices(&self) -> Vec<usize> {
        match *self {
            Step::SelfLoop { v, .. } | Step::Smooth { v } | Step::Isolated { v } => vec![v],
            Step::Fuse { u, v, .. } => vec![u, v],
            Step::Hopf { b, w, .. } => vec![b, w],
            Step::BareLoop => vec![],
        }
    }
}

/// Mutable rotation system: each slot stores its partner endpoint.
struct Work {
    n_lower: usize,
    n_upper: usize,
    verts: BTreeMap<usize, (Color, Vec<Endpoint>)>,
    lower: Vec<Endpoint>,
    upper: Vec<Endpoint>,
    loops: usize,
}

impl Work {
    fn new(d: &Diagram) -> Self {
        let partner = d.partner_map();
        let verts = d
            .vertices()
            .iter()
            .map(|v| (v.id, (v.color, (0..v.degree).map(|s| partner[&Endpoint::slot(v.id, s)]).collect())))
            .collect();
        Work {
            n_lower: d.n_lower(),
            n_upper: d.n_upper(),
            verts,
            lower: (0..d.n_lower()).map(|i| partner[&Endpoint::Lower(i)]).collect(),
            upper: (0..d.n_upper()).map(|j| partner[&Endpoint::Upper(j)]).collect(),
            loops: d.loops(),
        }
    }

    fn get(&self, e: Endpoint) -> Endpoint {
        match e {
            Endpoint::Slot { vertex, slot } => self.verts[&vertex].1[slot],
            Endpoint::Lower(i) => self.lower[i],
            Endpoint::Upper(j) => self.upper[j],
        }
    }

    fn set(&mut self, e: Endpoint, p: Endpoint) {
        match e {
            Endpoint::Slot { vertex, slot } => self.verts.get_mut(&vertex).expect("vertex").1[slot] = p,
            Endpoint::Lower(i) => self.lower[i] = p,
            Endpoint::Upper(j) => self.upper[j] = p,
        }
    }

    fn link(&mut self, a: Endpoint, b: Endpoint) {
        self.set(a, b);
        self.set(b, a);
    }

    /// Replaces the vertices in `old` by one vertex `id` whose slots are the
    /// listed old endpoints, in order. Old slots not listed disappear.
    fn rebuild(&mut self, old: &[usize], id: usize, color: Color, slots: &[Endpoint]) {
        let map: BTreeMap<Endpoint, Endpoint> =
            slots.iter().enumerate().map(|(i, &e)| (e, Endpoint::slot(id, i))).collect();
        let remap = |e: Endpoint| map.get(&e).copied().unwrap_or(e);
        let partners: Vec<Endpoint> = slots.iter().map(|&e| remap(self.get(e))).collect();
        for v in old {
            self.verts.remove(v);
        }
        self.verts.insert(id, (color, partners.clone()));
        for (i, p) in partners.into_iter().enumerate() {
            if p.vertex() != Some(id) {
                self.set(p, Endpoint::slot(id, i));
            }
        }
    }

    fn apply(&mut self, step: &Step) {
        match *step {
            Step::SelfLoop { v, s, t } => {
                let (color, ref ps) = self.verts[&v];
                let keep: Vec<Endpoint> =
                    (0..ps.len()).filter(|&i| i != s && i != t).map(|i| Endpoint::slot(v, i)).collect();
                self.rebuild(&[v], v, color, &keep);
            }
            Step::Fuse { u, su, v, sv } => {
                let (color, du) = (self.verts[&u].0, self.verts[&u].1.len());
                let dv = self.verts[&v].1.len();
                let mut slots: Vec<Endpoint> = (1..du).map(|i| Endpoint::slot(u, (su + i) % du)).collect();
                slots.extend((1..dv).map(|i| Endpoint::slot(v, (sv + i) % dv)));
                self.rebuild(&[u, v], u.min(v), color, &slots);
            }
            Step::Hopf { b, slots, w } => {
                let tw: Vec<usize> = slots
                    .iter()
                    .map(|&s| match self.get(Endpoint::slot(b, s)) {
                        Endpoint::Slot { slot, .. } => slot,
                        _ => unreachable!("parallel edge ends at a vertex"),
                    })
                    .collect();
                let db = self.verts[&b].1.len();
                let keep_b: Vec<Endpoint> =
                    (0..db).filter(|i| !slots.contains(i)).map(|i| Endpoint::slot(b, i)).collect();
                let dw = self.verts[&w].1.len();
                let keep_w: Vec<Endpoint> =
                    (0..dw).filter(|i| !tw.contains(i)).map(|i| Endpoint::slot(w, i)).collect();
                let cb = self.verts[&b].0;
                let cw = self.verts[&w].0;
                self.rebuild(&[b], b, cb, &keep_b);
                self.rebuild(&[w], w, cw, &keep_w);
            }
            Step::Smooth { v } => {
                let ps = self.verts[&v].1.clone();
                self.verts.remove(&v);
                self.link(ps[0], ps[1]);
            }
            Step::BareLoop => self.loops -= 1,
            Step::Isolated { v } => {
                self.verts.remove(&v);
            }
        }
    }

    fn self_loops(&self, out: &mut Vec<Step>, first: bool) -> bool {
        for (&v, (_, ps)) in &self.verts {
            for (s, p) in ps.iter().enumerate() {
                if let Endpoint::Slot { vertex, slot } = *p {
                    if vertex == v && s < slot {
                        out.push(Step::SelfLoop { v, s, t: slot });
                        if first {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn fusions(&self, out: &mut Vec<Step>, first: bool) -> bool {
        for (&u, (cu, ps)) in &self.verts {
            for (su, p) in ps.iter().enumerate() {
                if let Endpoint::Slot { vertex: v, slot: sv } = *p {
                    if v != u && self.verts[&v].0 == *cu && (first || u < v) {
                        out.push(Step::Fuse { u, su, v, sv });
                        if first {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn hopf_pairs(&self, out: &mut Vec<Step>, first: bool) -> bool {
        for (&b, (cb, ps)) in &self.verts {
            if *cb != Color::Black {
                continue;
            }
            let mut by_nbr: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (s, p) in ps.iter().enumerate() {
                if let Some(w) = p.vertex() {
                    if self.verts[&w].0 == Color::White {
                        by_nbr.entry(w).or_default().push(s);
                    }
                }
            }
            // deterministic choice: the parallel class met first in b's rotation
            let mut classes: Vec<(usize, Vec<usize>)> = by_nbr.into_iter().filter(|(_, s)| s.len() >= 2).collect();
            classes.sort_by_key(|(_, s)| s[0]);
            for (w, slots) in classes {
                for i in 0..slots.len() {
                    for j in i + 1..slots.len() {
                        out.push(Step::Hopf { b, slots: [slots[i], slots[j]], w });
                        if first {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn smoothings(&self, out: &mut Vec<Step>, first: bool) -> bool {
        for (&v, (_, ps)) in &self.verts {
            if ps.len() == 2 && ps.iter().all(|p| p.vertex() != Some(v)) {
                out.push(Step::Smooth { v });
                if first {
                    return true;
                }
            }
        }
        false
    }

    fn isolated(&self, out: &mut Vec<Step>, first: bool) -> bool {
        for (&v, (_, ps)) in &self.verts {
            if ps.is_empty() {
                out.push(Step::Isolated { v });
                if first {
                    return true;
                }
            }
        }
        false
    }

    fn next_step(&self) -> Option<Step> {
        let mut out = Vec::with_capacity(1);
        let found = self.self_loops(&mut out, true)
            || self.fusions(&mut out, true)
            || self.hopf_pairs(&mut out, true)
            || self.smoothings(&mut out, true);
        if found {
            return out.pop();
        }
        if self.loops > 0 {
            return Some(Step::BareLoop);
        }
        self.isolated(&mut out, true);
        out.pop()
    }

    fn all_steps(&self) -> Vec<Step> {
        let mut out = Vec::new();
        self.self_loops(&mut out, false);
        self.fusions(&mut out, false);
        self.hopf_pairs(&mut out, false);
        self.smoothings(&mut out, false);
        if self.loops > 0 {
            out.push(Step::BareLoop);
        }
        self.isolated(&mut out, false);
        out
    }

    fn into_diagram(self, template: &Diagram) -> Diagram {
        let vertices: Vec<Vertex> = self
            .verts
            .iter()
            .map(|(&id, (color, ps))| Vertex { id, color: *color, degree: ps.len() })
            .collect();
        let mut edges = Vec::new();
        let mut push = |a: Endpoint, b: Endpoint| {
            if a < b {
                edges.push((a, b));
            }
        };
        for (&id, (_, ps)) in &self.verts {
            for (s, &p) in ps.iter().enumerate() {
                push(Endpoint::slot(id, s), p);
            }
        }
        for (i, &p) in self.lower.iter().enumerate() {
            push(Endpoint::Lower(i), p);
        }
        for (j, &p) in self.upper.iter().enumerate() {
            push(Endpoint::Upper(j), p);
        }
        Diagram::assemble(
            self.n_lower,
            self.n_upper,
            vertices,
            edges,
            self.loops,
            template.prefactor().clone(),
            true,
        )
    }
}

fn n_scalar(n: u64, power: i32) -> ExactScalar {
    ExactScalar::sqrt_power(n, 2 * power)
}

fn check(d: &Diagram, n: u64) -> RewriteResult<()> {
    if n == 0 {
        return Err(RewriteError::BadN);
    }
    if !d.is_planar() {
        return Err(RewriteError::NonPlanar);
    }
    Ok(())
}

/// Normal form and trace under the deterministic strategy.
pub fn normalize_traced(d: &Diagram, n: u64) -> RewriteResult<(Diagram, ExactScalar, RewriteTrace)> {
    check(d, n)?;
    let mut work = Work::new(d);
    let mut trace = RewriteTrace::default();
    let mut power = 0;
    while let Some(step) = work.next_step() {
        let rule = step.rule();
        power += rule.n_power();
        trace.steps.push(TraceStep { rule, vertices: step.vertices(), factor: n_scalar(n, rule.n_power()) });
        work.apply(&step);
    }
    let out = work.into_diagram(d);
    debug_assert!(out.validate().is_ok(), "rewrite broke an invariant");
    Ok((out, n_scalar(n, power), trace))
}

/// Reduces `d` to a fixpoint of the rules. The returned diagram keeps the
/// input prefactor; the scalar is the product of the rule factors.
pub fn normalize(d: &Diagram, n: u64) -> RewriteResult<(Diagram, ExactScalar)> {
    normalize_traced(d, n).map(|(d, s, _)| (d, s))
}

fn finish_closed(residual: &Diagram, scalar: ExactScalar, n: u64) -> RewriteResult<ExactScalar> {
    if !residual.vertices().is_empty() || !residual.edges().is_empty() || residual.loops() > 0 {
        return Err(RewriteError::ResidualDiagram {
            vertices: residual.vertices().len(),
            edges: residual.edges().len() + residual.loops(),
        });
    }
    Ok(&scalar * &residual.prefactor().at(n))
}

/// Value of a closed planar diagram, prefactor included.
pub fn evaluate_closed(d: &Diagram, n: u64) -> RewriteResult<ExactScalar> {
    if !d.is_closed() {
        return Err(RewriteError::NotClosed(d.n_lower(), d.n_upper()));
    }
    let (residual, scalar) = normalize(d, n)?;
    finish_closed(&residual, scalar, n)
}

/// Normalizes with a uniformly random applicable rule instance at each step.
pub fn normalize_random(d: &Diagram, n: u64, seed: u64) -> RewriteResult<(Diagram, ExactScalar)> {
    check(d, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work = Work::new(d);
    let mut power = 0;
    loop {
        let steps = work.all_steps();
        let Some(step) = steps.choose(&mut rng) else { break };
        power += step.rule().n_power();
        work.apply(step);
    }
    let out = work.into_diagram(d);
    debug_assert!(out.validate().is_ok(), "rewrite broke an invariant");
    Ok((out, n_scalar(n, power)))
}

/// Runs the randomized strategy once per seed and compares the values with
/// the deterministic run. Meant for closed even diagrams, which always
/// reduce to a scalar; a run that stalls counts as a disagreement.
pub fn confluence_probe(d: &Diagram, n: u64, seeds: &[u64]) -> bool {
    let value = |res: RewriteResult<(Diagram, ExactScalar)>| res.and_then(|(r, s)| finish_closed(&r, s, n)).ok();
    let Some(reference) = value(normalize(d, n)) else { return false };
    seeds.iter().all(|&seed| value(normalize_random(d, n, seed)).as_ref() == Some(&reference))
}

/// `2E + V` with bare loops counted as edges.
pub fn measure(d: &Diagram) -> usize {
    2 * (d.edges().len() + d.loops()) + d.vertices().len()
}
