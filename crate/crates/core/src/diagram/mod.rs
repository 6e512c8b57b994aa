//! Two-coloured spider diagrams with a rotation system.
//!
//! A diagram has `n_lower` input legs along the bottom edge and `n_upper`
//! output legs along the top edge of a rectangle. Each vertex carries a cyclic
//! list of slots in counter-clockwise order; an edge joins two endpoints,
//! each either a vertex slot or a boundary leg. Diagrams are read bottom to
//! top: `compose(f, g)` stacks `f` on top of `g`.
//!
//! A spider `(k, l)` puts its lower legs on slots `0..k` from left to right
//! and its upper legs on slots `k..k+l` from right to left, which is the
//! counter-clockwise order around the vertex.

mod canon;
mod faces;
mod format;

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::scalar::ExactScalar;

pub use canon::shape_key;
pub use faces::{Dart, EdgeRef, Face};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("arity mismatch: {0} upper legs glued to {1} lower legs")]
    Arity(usize, usize),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(usize),
    #[error("endpoint {0} is used {1} times")]
    EndpointUse(String, usize),
    #[error("endpoint {0} refers to a missing vertex or slot")]
    DanglingEndpoint(String),
    #[error("diagram is marked planar but its rotation system has genus {0}")]
    NotPlanar(usize),
    #[error("operation needs a planar diagram")]
    NonPlanarInput,
    #[error("region colouring precondition failed: {0}")]
    NotColourable(String),
    #[error("parse error on line {0}: {1}")]
    Parse(usize, String),
}

pub type DiagramResult<T> = Result<T, DiagramError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn name(self) -> &'static str {
        match self {
            Color::Black => "black",
            Color::White => "white",
        }
    }

    pub fn other(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// One end of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Slot { vertex: usize, slot: usize },
    Lower(usize),
    Upper(usize),
}

impl Endpoint {
    pub fn slot(vertex: usize, slot: usize) -> Self {
        Endpoint::Slot { vertex, slot }
    }

    pub fn vertex(&self) -> Option<usize> {
        match *self {
            Endpoint::Slot { vertex, .. } => Some(vertex),
            _ => None,
        }
    }

    pub fn is_boundary(&self) -> bool {
        !matches!(self, Endpoint::Slot { .. })
    }
}

impl std::fmt::Display for Endpoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Endpoint::Slot { vertex, slot } => write!(f, "({vertex}, {slot})"),
            Endpoint::Lower(i) => write!(f, "(lower, {i})"),
            Endpoint::Upper(i) => write!(f, "(upper, {i})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: usize,
    pub color: Color,
    /// Number of slots, boundary legs included.
    pub degree: usize,
}

/// Symbolic scalar `coeff * sqrt(N)^sqrt_n_exp` with the loop value `N` left open.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Prefactor {
    pub coeff: BigRational,
    pub sqrt_n_exp: i32,
}

impl Prefactor {
    pub fn one() -> Self {
        Prefactor { coeff: BigRational::one(), sqrt_n_exp: 0 }
    }

    pub fn new(coeff: BigRational, sqrt_n_exp: i32) -> Self {
        Prefactor { coeff, sqrt_n_exp }
    }

    pub fn times(&self, other: &Prefactor) -> Prefactor {
        Prefactor {
            coeff: &self.coeff * &other.coeff,
            sqrt_n_exp: self.sqrt_n_exp + other.sqrt_n_exp,
        }
    }

    /// Value at a concrete `N`.
    pub fn at(&self, n: u64) -> ExactScalar {
        ExactScalar::new(self.coeff.clone(), n, self.sqrt_n_exp).expect("positive N")
    }
}

impl std::fmt::Display for Prefactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{} * sqrtN^{}", self.coeff.numer(), self.coeff.denom(), self.sqrt_n_exp)
    }
}

/// A bilabelled two-coloured planar (or flagged non-planar) diagram.
///
/// Edges are stored with each pair ordered and the list sorted, vertices
/// sorted by id, so derived equality compares diagrams with identical ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    n_lower: usize,
    n_upper: usize,
    vertices: Vec<Vertex>,
    edges: Vec<(Endpoint, Endpoint)>,
    loops: usize,
    prefactor: Prefactor,
    planar: bool,
}

fn ordered(a: Endpoint, b: Endpoint) -> (Endpoint, Endpoint) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Diagram {
    /// Validating constructor.
    pub fn from_parts(
        n_lower: usize,
        n_upper: usize,
        vertices: Vec<Vertex>,
        edges: Vec<(Endpoint, Endpoint)>,
        loops: usize,
        prefactor: Prefactor,
        planar: bool,
    ) -> DiagramResult<Self> {
        let d = Self::assemble(n_lower, n_upper, vertices, edges, loops, prefactor, planar);
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn assemble(
        n_lower: usize,
        n_upper: usize,
        mut vertices: Vec<Vertex>,
        edges: Vec<(Endpoint, Endpoint)>,
        loops: usize,
        prefactor: Prefactor,
        planar: bool,
    ) -> Self {
        vertices.sort_by_key(|v| v.id);
        let mut edges: Vec<_> = edges.into_iter().map(|(a, b)| ordered(a, b)).collect();
        edges.sort();
        Diagram { n_lower, n_upper, vertices, edges, loops, prefactor, planar }
    }

    /// Checks slot usage, boundary usage, unique ids and (if flagged) planarity.
    pub fn validate(&self) -> DiagramResult<()> {
        let mut deg = HashMap::new();
        for v in &self.vertices {
            if deg.insert(v.id, v.degree).is_some() {
                return Err(DiagramError::DuplicateVertex(v.id));
            }
        }
        let mut uses: HashMap<Endpoint, usize> = HashMap::new();
        for &(a, b) in &self.edges {
            for e in [a, b] {
                let ok = match e {
                    Endpoint::Slot { vertex, slot } => deg.get(&vertex).is_some_and(|&d| slot < d),
                    Endpoint::Lower(i) => i < self.n_lower,
                    Endpoint::Upper(i) => i < self.n_upper,
                };
                if !ok {
                    return Err(DiagramError::DanglingEndpoint(e.to_string()));
                }
                *uses.entry(e).or_default() += 1;
            }
        }
        let mut expected: Vec<Endpoint> = Vec::new();
        for v in &self.vertices {
            expected.extend((0..v.degree).map(|s| Endpoint::slot(v.id, s)));
        }
        expected.extend((0..self.n_lower).map(Endpoint::Lower));
        expected.extend((0..self.n_upper).map(Endpoint::Upper));
        for e in expected {
            let n = uses.get(&e).copied().unwrap_or(0);
            if n != 1 {
                return Err(DiagramError::EndpointUse(e.to_string(), n));
            }
        }
        if self.planar {
            let g = self.genus();
            if g != 0 {
                return Err(DiagramError::NotPlanar(g));
            }
        }
        Ok(())
    }

    pub fn empty() -> Self {
        Self::assemble(0, 0, vec![], vec![], 0, Prefactor::one(), true)
    }

    /// A diagram with no legs and no vertices carrying the given scalar.
    pub fn scalar(prefactor: Prefactor) -> Self {
        Self::assemble(0, 0, vec![], vec![], 0, prefactor, true)
    }

    pub fn spider(color: Color, k: usize, l: usize) -> Self {
        let mut edges = Vec::with_capacity(k + l);
        for s in 0..k {
            edges.push((Endpoint::slot(0, s), Endpoint::Lower(s)));
        }
        for j in 0..l {
            edges.push((Endpoint::slot(0, k + j), Endpoint::Upper(l - 1 - j)));
        }
        let v = Vertex { id: 0, color, degree: k + l };
        Self::assemble(k, l, vec![v], edges, 0, Prefactor::one(), true)
    }

    pub fn black_spider(k: usize, l: usize) -> Self {
        Self::spider(Color::Black, k, l)
    }

    pub fn white_spider(k: usize, l: usize) -> Self {
        Self::spider(Color::White, k, l)
    }

    pub fn identity(n: usize) -> Self {
        let edges = (0..n).map(|i| (Endpoint::Lower(i), Endpoint::Upper(i))).collect();
        Self::assemble(n, n, vec![], edges, 0, Prefactor::one(), true)
    }

    pub fn cup() -> Self {
        Self::assemble(0, 2, vec![], vec![(Endpoint::Upper(0), Endpoint::Upper(1))], 0, Prefactor::one(), true)
    }

    pub fn cap() -> Self {
        Self::assemble(2, 0, vec![], vec![(Endpoint::Lower(0), Endpoint::Lower(1))], 0, Prefactor::one(), true)
    }

    /// The flip of two strands; marks the diagram non-planar.
    pub fn crossing() -> Self {
        let edges = vec![
            (Endpoint::Lower(0), Endpoint::Upper(1)),
            (Endpoint::Lower(1), Endpoint::Upper(0)),
        ];
        Self::assemble(2, 2, vec![], edges, 0, Prefactor::one(), false)
    }

    pub fn n_lower(&self) -> usize {
        self.n_lower
    }

    pub fn n_upper(&self) -> usize {
        self.n_upper
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> Option<&Vertex> {
        self.vertices.binary_search_by_key(&id, |v| v.id).ok().map(|i| &self.vertices[i])
    }

    pub fn edges(&self) -> &[(Endpoint, Endpoint)] {
        &self.edges
    }

    /// Vertex-free closed loops.
    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn prefactor(&self) -> &Prefactor {
        &self.prefactor
    }

    pub fn is_planar(&self) -> bool {
        self.planar
    }

    pub fn is_closed(&self) -> bool {
        self.n_lower == 0 && self.n_upper == 0
    }

    /// No vertices, edges or loops (the prefactor may be anything).
    pub fn is_bare(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty() && self.loops == 0
    }

    pub fn with_prefactor(mut self, p: Prefactor) -> Self {
        self.prefactor = p;
        self
    }

    pub fn scaled(mut self, p: &Prefactor) -> Self {
        self.prefactor = self.prefactor.times(p);
        self
    }

    fn max_id_plus_one(&self) -> usize {
        self.vertices.iter().map(|v| v.id + 1).max().unwrap_or(0)
    }

    /// `f` on top of `g`: glue `g`'s upper legs to `f`'s lower legs.
    ///
    /// Vertex ids of `g` are kept; those of `f` are shifted past them. Strings
    /// that close up through the glued row become bare loops.
    pub fn compose(f: &Diagram, g: &Diagram) -> DiagramResult<Diagram> {
        if g.n_upper != f.n_lower {
            return Err(DiagramError::Arity(g.n_upper, f.n_lower));
        }
        #[derive(Clone, Copy, PartialEq, Eq)]
        enum End {
            Real(Endpoint),
            Mid(usize),
        }
        let shift = g.max_id_plus_one();
        let mut vertices = g.vertices.clone();
        vertices.extend(f.vertices.iter().map(|v| Vertex { id: v.id + shift, ..v.clone() }));
        let mut pieces: Vec<[End; 2]> = Vec::with_capacity(f.edges.len() + g.edges.len());
        for &(a, b) in &g.edges {
            let m = |e: Endpoint| match e {
                Endpoint::Upper(i) => End::Mid(i),
                e => End::Real(e),
            };
            pieces.push([m(a), m(b)]);
        }
        for &(a, b) in &f.edges {
            let m = |e: Endpoint| match e {
                Endpoint::Lower(i) => End::Mid(i),
                Endpoint::Slot { vertex, slot } => End::Real(Endpoint::slot(vertex + shift, slot)),
                e => End::Real(e),
            };
            pieces.push([m(a), m(b)]);
        }
        // every middle point occurs exactly twice
        let mut at_mid: Vec<Vec<(usize, usize)>> = vec![Vec::new(); f.n_lower];
        for (pi, p) in pieces.iter().enumerate() {
            for (side, e) in p.iter().enumerate() {
                if let End::Mid(i) = e {
                    at_mid[*i].push((pi, side));
                }
            }
        }
        let mut used = vec![false; pieces.len()];
        let mut edges = Vec::new();
        for start in 0..pieces.len() {
            if used[start] {
                continue;
            }
            let side0 = match pieces[start] {
                [End::Real(_), _] => 0,
                [_, End::Real(_)] => 1,
                _ => continue,
            };
            let End::Real(a) = pieces[start][side0] else { unreachable!() };
            let (mut pi, mut side) = (start, side0);
            let b = loop {
                used[pi] = true;
                match pieces[pi][1 - side] {
                    End::Real(e) => break e,
                    End::Mid(i) => {
                        let &(npi, nside) = at_mid[i]
                            .iter()
                            .find(|&&(q, s)| (q, s) != (pi, 1 - side))
                            .expect("middle point used twice");
                        pi = npi;
                        side = nside;
                    }
                }
            };
            edges.push((a, b));
        }
        // whatever is left consists of closed chains of middle points
        let mut loops = f.loops + g.loops;
        for start in 0..pieces.len() {
            if used[start] {
                continue;
            }
            loops += 1;
            let (mut pi, mut side) = (start, 0);
            while !used[pi] {
                used[pi] = true;
                let End::Mid(i) = pieces[pi][1 - side] else { unreachable!() };
                let &(npi, nside) =
                    at_mid[i].iter().find(|&&(q, s)| (q, s) != (pi, 1 - side)).expect("paired");
                pi = npi;
                side = nside;
            }
        }
        Ok(Self::assemble(
            g.n_lower,
            f.n_upper,
            vertices,
            edges,
            loops,
            f.prefactor.times(&g.prefactor),
            f.planar && g.planar,
        ))
    }

    /// `self` on top of `g`.
    pub fn then_below(&self, g: &Diagram) -> DiagramResult<Diagram> {
        Diagram::compose(self, g)
    }

    /// `f ⊗ g`: `g` placed to the right of `f`.
    pub fn tensor(f: &Diagram, g: &Diagram) -> Diagram {
        let shift = f.max_id_plus_one();
        let mut vertices = f.vertices.clone();
        vertices.extend(g.vertices.iter().map(|v| Vertex { id: v.id + shift, ..v.clone() }));
        let mut edges = f.edges.clone();
        let m = |e: Endpoint| match e {
            Endpoint::Slot { vertex, slot } => Endpoint::slot(vertex + shift, slot),
            Endpoint::Lower(i) => Endpoint::Lower(i + f.n_lower),
            Endpoint::Upper(i) => Endpoint::Upper(i + f.n_upper),
        };
        edges.extend(g.edges.iter().map(|&(a, b)| (m(a), m(b))));
        Self::assemble(
            f.n_lower + g.n_lower,
            f.n_upper + g.n_upper,
            vertices,
            edges,
            f.loops + g.loops,
            f.prefactor.times(&g.prefactor),
            f.planar && g.planar,
        )
    }

    /// Mirror image top to bottom: swaps the boundaries and reverses every
    /// rotation. Prefactors are real, so conjugation does nothing.
    pub fn dagger(&self) -> Diagram {
        let deg: HashMap<usize, usize> = self.vertices.iter().map(|v| (v.id, v.degree)).collect();
        let m = |e: Endpoint| match e {
            Endpoint::Slot { vertex, slot } => Endpoint::slot(vertex, deg[&vertex] - 1 - slot),
            Endpoint::Lower(i) => Endpoint::Upper(i),
            Endpoint::Upper(i) => Endpoint::Lower(i),
        };
        let edges = self.edges.iter().map(|&(a, b)| (m(a), m(b))).collect();
        Self::assemble(
            self.n_upper,
            self.n_lower,
            self.vertices.clone(),
            edges,
            self.loops,
            self.prefactor.clone(),
            self.planar,
        )
    }

    /// The other end of the edge at `e`.
    pub fn partner(&self, e: Endpoint) -> Option<Endpoint> {
        self.edges.iter().find_map(|&(a, b)| {
            if a == e {
                Some(b)
            } else if b == e {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Map from each endpoint to its partner.
    pub fn partner_map(&self) -> HashMap<Endpoint, Endpoint> {
        let mut m = HashMap::with_capacity(2 * self.edges.len());
        for &(a, b) in &self.edges {
            m.insert(a, b);
            m.insert(b, a);
        }
        m
    }

    /// Renumbers vertices to `0..V` preserving their order.
    pub fn compacted(&self) -> Diagram {
        let map: HashMap<usize, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        let vertices = self.vertices.iter().map(|v| Vertex { id: map[&v.id], ..v.clone() }).collect();
        let m = |e: Endpoint| match e {
            Endpoint::Slot { vertex, slot } => Endpoint::slot(map[&vertex], slot),
            e => e,
        };
        let edges = self.edges.iter().map(|&(a, b)| (m(a), m(b))).collect();
        Self::assemble(
            self.n_lower,
            self.n_upper,
            vertices,
            edges,
            self.loops,
            self.prefactor.clone(),
            self.planar,
        )
    }

    /// Every vertex has even degree.
    pub fn is_even(&self) -> bool {
        self.vertices.iter().all(|v| v.degree % 2 == 0)
    }

    pub fn has_negative_prefactor(&self) -> bool {
        self.prefactor.coeff.is_negative()
    }
}

/// Builds `f ∘ g` and panics on an arity mismatch; handy for fixed words.
pub fn compose(f: &Diagram, g: &Diagram) -> Diagram {
    Diagram::compose(f, g).expect("arity mismatch in diagram word")
}

/// `f ⊗ g`.
pub fn tensor(f: &Diagram, g: &Diagram) -> Diagram {
    Diagram::tensor(f, g)
}

/// Fold of `tensor` over a list, left to right.
pub fn tensor_all<'a>(parts: impl IntoIterator<Item = &'a Diagram>) -> Diagram {
    parts.into_iter().fold(Diagram::empty(), |acc, d| Diagram::tensor(&acc, d))
}

#[cfg(test)]
mod tests;
