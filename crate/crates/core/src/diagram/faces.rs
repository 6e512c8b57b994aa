//! Face tracing on the rotation system and the region colouring map.
//!
//! The boundary is modelled as one extra node sitting outside the rectangle
//! whose rotation lists the upper legs left to right followed by the lower
//! legs right to left. With that node in place every component of a planar
//! diagram is a genus-0 map.

use std::collections::HashMap;

use super::{Color, Diagram, DiagramError, DiagramResult, Endpoint};
use crate::partitions::SetPartition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeRef {
    Edge(usize),
    Loop(usize),
}

/// A directed edge side: `side` 0 runs from the first stored endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: EdgeRef,
    pub side: u8,
}

/// A cyclic walk of darts. An isolated vertex has a single face with no darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    Vertex(usize),
    Outer,
}

/// Rotation data shared by face tracing, colouring and canonical codes.
pub(crate) struct Rotation<'a> {
    pub d: &'a Diagram,
    pub partner: HashMap<Endpoint, (Endpoint, usize)>,
}

impl<'a> Rotation<'a> {
    pub fn new(d: &'a Diagram) -> Self {
        let mut partner = HashMap::with_capacity(2 * d.edges.len());
        for (i, &(a, b)) in d.edges.iter().enumerate() {
            partner.insert(a, (b, i));
            partner.insert(b, (a, i));
        }
        Rotation { d, partner }
    }

    pub fn has_outer(&self) -> bool {
        self.d.n_lower + self.d.n_upper > 0
    }

    /// Node, position in its rotation, and its degree.
    pub fn locate(&self, e: Endpoint) -> (Node, usize, usize) {
        let (k, l) = (self.d.n_lower, self.d.n_upper);
        match e {
            Endpoint::Slot { vertex, slot } => {
                (Node::Vertex(vertex), slot, self.d.vertex(vertex).expect("vertex").degree)
            }
            Endpoint::Upper(j) => (Node::Outer, j, k + l),
            Endpoint::Lower(i) => (Node::Outer, l + (k - 1 - i), k + l),
        }
    }

    pub fn endpoint_at(&self, node: Node, pos: usize) -> Endpoint {
        let (k, l) = (self.d.n_lower, self.d.n_upper);
        match node {
            Node::Vertex(v) => Endpoint::slot(v, pos),
            Node::Outer if pos < l => Endpoint::Upper(pos),
            Node::Outer => Endpoint::Lower(k - 1 - (pos - l)),
        }
    }

    pub fn dart_from(&self, e: Endpoint) -> Dart {
        let (_, i) = self.partner[&e];
        let side = if self.d.edges[i].0 == e { 0 } else { 1 };
        Dart { edge: EdgeRef::Edge(i), side }
    }

    pub fn dart_origin(&self, dart: Dart) -> Endpoint {
        let EdgeRef::Edge(i) = dart.edge else { panic!("loop darts have no origin") };
        let (a, b) = self.d.edges[i];
        if dart.side == 0 {
            a
        } else {
            b
        }
    }

    /// Next dart along the face to the left of `dart`.
    pub fn next(&self, dart: Dart) -> Dart {
        let origin = self.dart_origin(dart);
        let (target, _) = self.partner[&origin];
        let (node, pos, deg) = self.locate(target);
        self.dart_from(self.endpoint_at(node, (pos + 1) % deg))
    }

    /// Face orbits of edge darts (no loops, no isolated vertices).
    pub fn orbits(&self) -> Vec<Vec<Dart>> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for i in 0..self.d.edges.len() {
            for side in 0..2u8 {
                let start = Dart { edge: EdgeRef::Edge(i), side };
                if seen.contains(&start) {
                    continue;
                }
                let mut walk = Vec::new();
                let mut cur = start;
                while seen.insert(cur) {
                    walk.push(cur);
                    cur = self.next(cur);
                }
                out.push(walk);
            }
        }
        out
    }

    /// Connected components of nodes; returns a component id per node and the
    /// number of components.
    pub fn components(&self) -> (HashMap<Node, usize>, usize) {
        let mut nodes: Vec<Node> = self.d.vertices.iter().map(|v| Node::Vertex(v.id)).collect();
        if self.has_outer() {
            nodes.push(Node::Outer);
        }
        let index: HashMap<Node, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut uf: Vec<usize> = (0..nodes.len()).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for &(a, b) in &self.d.edges {
            let (na, _, _) = self.locate(a);
            let (nb, _, _) = self.locate(b);
            let (ra, rb) = (find(&mut uf, index[&na]), find(&mut uf, index[&nb]));
            uf[ra] = rb;
        }
        let mut label = HashMap::new();
        let mut comp = HashMap::new();
        for (i, &n) in nodes.iter().enumerate() {
            let r = find(&mut uf, i);
            let next = label.len();
            let c = *label.entry(r).or_insert(next);
            comp.insert(n, c);
        }
        let count = label.len();
        (comp, count)
    }
}

impl Diagram {
    /// Sum over components of `(2 - χ) / 2`, ignoring the planar flag.
    pub fn genus(&self) -> usize {
        let rot = Rotation::new(self);
        let (comp, count) = rot.components();
        let mut chi = vec![0i64; count];
        for &c in comp.values() {
            chi[c] += 1;
        }
        for &(a, _) in &self.edges {
            let (n, _, _) = rot.locate(a);
            chi[comp[&n]] -= 1;
        }
        let mut has_face = vec![false; count];
        for orbit in rot.orbits() {
            let (n, _, _) = rot.locate(rot.dart_origin(orbit[0]));
            chi[comp[&n]] += 1;
            has_face[comp[&n]] = true;
        }
        // an isolated node bounds one face
        for c in 0..count {
            if !has_face[c] {
                chi[c] += 1;
            }
        }
        chi.iter().map(|&x| ((2 - x) / 2) as usize).sum()
    }

    /// Faces of a planar diagram. Each bare loop contributes its two sides and
    /// each isolated vertex one empty face.
    pub fn faces(&self) -> DiagramResult<Vec<Face>> {
        if !self.planar {
            return Err(DiagramError::NonPlanarInput);
        }
        let rot = Rotation::new(self);
        let mut out: Vec<Face> = rot.orbits().into_iter().map(|darts| Face { darts }).collect();
        for v in &self.vertices {
            if v.degree == 0 {
                out.push(Face { darts: vec![] });
            }
        }
        for i in 0..self.loops {
            for side in 0..2 {
                out.push(Face { darts: vec![Dart { edge: EdgeRef::Loop(i), side }] });
            }
        }
        Ok(out)
    }

    /// Connected components, counting the boundary structure as one node and
    /// each bare loop as its own component.
    pub fn component_count(&self) -> usize {
        Rotation::new(self).components().1 + self.loops
    }

    /// Regions of the plane cut out by the diagram: components share their
    /// outer face, so this is `faces - (components - 1)`.
    pub fn region_count(&self) -> DiagramResult<usize> {
        let f = self.faces()?.len();
        let c = self.component_count();
        Ok(if c == 0 { 1 } else { f + 1 - c })
    }

    /// Pair of non-crossing partitions read off a two-colouring of the faces.
    ///
    /// The face at the left gap between the lower and upper rows stays
    /// uncoloured; the coloured faces meeting the boundary between legs
    /// `2a` and `2a+1` become the boundary points. Coloured faces sharing a
    /// black vertex are merged for the first partition, faces sharing a white
    /// vertex for the second.
    pub fn region_coloring_pair(&self) -> DiagramResult<(SetPartition, SetPartition)> {
        let fail = |m: &str| Err(DiagramError::NotColourable(m.to_string()));
        if !self.planar {
            return Err(DiagramError::NonPlanarInput);
        }
        if self.n_lower % 2 != 0 || self.n_upper % 2 != 0 {
            return fail("odd number of boundary legs");
        }
        if self.loops > 0 {
            return fail("bare loops present");
        }
        for v in &self.vertices {
            if v.degree % 2 != 0 || v.degree < 4 {
                return fail(&format!("vertex {} has degree {}", v.id, v.degree));
            }
        }
        let mut pairs = std::collections::HashSet::new();
        for &(a, b) in &self.edges {
            if let (Some(u), Some(w)) = (a.vertex(), b.vertex()) {
                if u == w {
                    return fail("self-loop present");
                }
                if self.vertex(u).map(|x| x.color) == self.vertex(w).map(|x| x.color) {
                    return fail("edge between vertices of the same colour");
                }
                if !pairs.insert((u.min(w), u.max(w))) {
                    return fail("parallel edges present");
                }
            }
        }
        let (k, l) = (self.n_lower, self.n_upper);
        if k + l == 0 {
            if !self.vertices.is_empty() {
                return fail("closed diagram with vertices");
            }
            let e = SetPartition::new(0, 0, vec![]).expect("empty");
            return Ok((e.clone(), e));
        }
        let rot = Rotation::new(self);
        let (comp, _) = rot.components();
        if comp.values().any(|&c| c != comp[&Node::Outer]) {
            return fail("component not attached to the boundary");
        }
        let orbits = rot.orbits();
        let mut face_of = HashMap::new();
        for (f, o) in orbits.iter().enumerate() {
            for &d in o {
                face_of.insert(d, f);
            }
        }
        // two-colour faces across edges, starting from the left gap
        let mut colour: Vec<Option<bool>> = vec![None; orbits.len()];
        let start = face_of[&rot.dart_from(rot.endpoint_at(Node::Outer, 0))];
        colour[start] = Some(false);
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            let c = colour[f].expect("coloured");
            for &d in &orbits[f] {
                let twin = Dart { edge: d.edge, side: 1 - d.side };
                let g = face_of[&twin];
                match colour[g] {
                    None => {
                        colour[g] = Some(!c);
                        stack.push(g);
                    }
                    Some(x) if x == c => return fail("faces are not two-colourable"),
                    _ => {}
                }
            }
        }
        let lower_faces: Vec<usize> = (0..k / 2)
            .map(|a| face_of[&rot.dart_from(Endpoint::Lower(2 * a))])
            .collect();
        let upper_faces: Vec<usize> = (0..l / 2)
            .map(|b| face_of[&rot.dart_from(Endpoint::Upper(2 * b + 1))])
            .collect();
        for &f in lower_faces.iter().chain(&upper_faces) {
            if colour[f] != Some(true) {
                return fail("boundary gap face is not coloured");
            }
        }
        let partition_for = |c: Color| {
            let mut uf: Vec<usize> = (0..orbits.len()).collect();
            fn find(uf: &mut [usize], mut x: usize) -> usize {
                while uf[x] != x {
                    uf[x] = uf[uf[x]];
                    x = uf[x];
                }
                x
            }
            for v in self.vertices.iter().filter(|v| v.color == c) {
                let faces: Vec<usize> = (0..v.degree)
                    .map(|s| face_of[&rot.dart_from(Endpoint::slot(v.id, s))])
                    .filter(|&f| colour[f] == Some(true))
                    .collect();
                for w in faces.windows(2) {
                    let (a, b) = (find(&mut uf, w[0]), find(&mut uf, w[1]));
                    uf[a] = b;
                }
            }
            let labels: Vec<usize> = lower_faces
                .iter()
                .chain(&upper_faces)
                .map(|&f| find(&mut uf, f))
                .collect();
            SetPartition::from_labels(k / 2, l / 2, &labels)
        };
        Ok((partition_for(Color::Black), partition_for(Color::White)))
    }
}
