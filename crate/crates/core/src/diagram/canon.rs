//! Canonical codes for planar diagrams, used to deduplicate generated families.
//!
//! The component touching the boundary is rooted at the boundary node, which
//! has a fixed starting position. Closed components are rooted at every dart
//! and the smallest code wins. Codes ignore vertex ids and the prefactor.

use std::collections::{HashMap, VecDeque};

use super::faces::{Node, Rotation};
use super::{Color, Diagram};

fn node_code(rot: &Rotation, root: Node, start: usize, out: &mut Vec<u64>) {
    let mut number: HashMap<Node, (u64, usize)> = HashMap::new();
    let mut queue = VecDeque::new();
    number.insert(root, (0, start));
    queue.push_back(root);
    while let Some(node) = queue.pop_front() {
        let (_, offset) = number[&node];
        let deg = match node {
            Node::Vertex(v) => {
                let vx = rot.d.vertex(v).expect("vertex");
                out.push(match vx.color {
                    Color::Black => 1,
                    Color::White => 2,
                });
                vx.degree
            }
            Node::Outer => {
                out.push(0);
                rot.d.n_lower + rot.d.n_upper
            }
        };
        out.push(deg as u64);
        for i in 0..deg {
            let here = rot.endpoint_at(node, (offset + i) % deg);
            let (there, _) = rot.partner[&here];
            let (n2, pos2, deg2) = rot.locate(there);
            let next_id = number.len() as u64;
            let (id, off) = *number.entry(n2).or_insert_with(|| {
                queue.push_back(n2);
                (next_id, pos2)
            });
            out.push(id);
            out.push(((pos2 + deg2 - off) % deg2) as u64);
        }
    }
}

/// Structural key: equal keys mean the diagrams agree up to renaming vertices
/// and rotating the slot numbering of closed components.
pub fn shape_key(d: &Diagram) -> Vec<u64> {
    let rot = Rotation::new(d);
    let (comp, _) = rot.components();
    let mut key = vec![d.n_lower as u64, d.n_upper as u64, d.loops as u64, u64::from(d.planar)];
    if rot.has_outer() {
        node_code(&rot, Node::Outer, 0, &mut key);
    }
    let outer = comp.get(&Node::Outer).copied();
    let mut groups: HashMap<usize, Vec<Node>> = HashMap::new();
    for (&n, &c) in &comp {
        if Some(c) != outer {
            groups.entry(c).or_default().push(n);
        }
    }
    let mut codes: Vec<Vec<u64>> = groups
        .values()
        .map(|nodes| {
            let mut best: Option<Vec<u64>> = None;
            for &n in nodes {
                let Node::Vertex(v) = n else { continue };
                let deg = d.vertex(v).expect("vertex").degree.max(1);
                for s in 0..deg {
                    let mut c = Vec::new();
                    node_code(&rot, n, s, &mut c);
                    if best.as_ref().map_or(true, |b| c < *b) {
                        best = Some(c);
                    }
                }
            }
            best.unwrap_or_default()
        })
        .collect();
    codes.sort();
    for c in codes {
        key.push(u64::MAX);
        key.extend(c);
    }
    key
}
