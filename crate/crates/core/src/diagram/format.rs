//! Text format for diagrams.
//!
//! ```text
//! # a black 4-valent vertex as a (2,2) diagram
//! lower 2
//! upper 2
//! prefactor 1/1 * sqrtN^0
//! planar true
//! loops 0
//! vertex 0 black
//! edge (0, 0) (lower, 0)
//! edge (0, 1) (lower, 1)
//! edge (0, 2) (upper, 1)
//! edge (0, 3) (upper, 0)
//! ```
//!
//! All indices are 0-based. A vertex's degree is the number of slots used by
//! edges; slot order is the counter-clockwise rotation. `prefactor`,
//! `planar` and `loops` are optional and default to `1`, `true` and `0`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use super::{Color, Diagram, DiagramError, Endpoint, Prefactor, Vertex};

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lower {}", self.n_lower)?;
        writeln!(f, "upper {}", self.n_upper)?;
        writeln!(f, "prefactor {}", self.prefactor)?;
        writeln!(f, "planar {}", self.planar)?;
        writeln!(f, "loops {}", self.loops)?;
        for v in &self.vertices {
            writeln!(f, "vertex {} {}", v.id, v.color.name())?;
        }
        for (a, b) in &self.edges {
            writeln!(f, "edge {a} {b}")?;
        }
        Ok(())
    }
}

fn parse_prefactor(s: &str) -> Option<Prefactor> {
    let (c, e) = match s.split_once('*') {
        Some((c, rest)) => (c.trim(), rest.trim().strip_prefix("sqrtN^")?.trim()),
        None => (s.trim(), "0"),
    };
    let coeff: BigRational = c.parse().ok()?;
    Some(Prefactor::new(coeff, e.parse().ok()?))
}

fn parse_endpoints(s: &str) -> Option<Vec<Endpoint>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(')?;
        let close = open.find(')')?;
        let (a, b) = open[..close].split_once(',')?;
        let idx: usize = b.trim().parse().ok()?;
        out.push(match a.trim() {
            "lower" => Endpoint::Lower(idx),
            "upper" => Endpoint::Upper(idx),
            v => Endpoint::slot(v.parse().ok()?, idx),
        });
        rest = open[close + 1..].trim_start();
    }
    Some(out)
}

impl FromStr for Diagram {
    type Err = DiagramError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut n_lower = None;
        let mut n_upper = None;
        let mut prefactor = Prefactor::one();
        let mut planar = true;
        let mut loops = 0;
        let mut colors: Vec<(usize, Color)> = Vec::new();
        let mut edges = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() || line == "diagram" {
                continue;
            }
            let err = |m: &str| DiagramError::Parse(no + 1, m.to_string());
            let (key, val) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let val = val.trim();
            let count = |v: &str| v.parse::<usize>().map_err(|_| err("expected a count"));
            match key {
                "lower" => n_lower = Some(count(val)?),
                "upper" => n_upper = Some(count(val)?),
                "loops" => loops = count(val)?,
                "planar" => planar = val.parse().map_err(|_| err("expected true or false"))?,
                "prefactor" => {
                    prefactor = parse_prefactor(val).ok_or_else(|| err("expected p/q * sqrtN^e"))?
                }
                "vertex" => {
                    let mut parts = val.split_whitespace();
                    let id = parts.next().and_then(|p| p.parse().ok()).ok_or_else(|| err("vertex id"))?;
                    let color = match parts.next() {
                        Some("black") => Color::Black,
                        Some("white") => Color::White,
                        _ => return Err(err("vertex colour must be black or white")),
                    };
                    colors.push((id, color));
                }
                "edge" => match parse_endpoints(val).as_deref() {
                    Some(&[a, b]) => edges.push((a, b)),
                    _ => return Err(err("expected two endpoints")),
                },
                _ => return Err(err(&format!("unknown field {key}"))),
            }
        }
        let mut degree: HashMap<usize, usize> = HashMap::new();
        for &(a, b) in &edges {
            for e in [a, b] {
                if let Endpoint::Slot { vertex, slot } = e {
                    let d = degree.entry(vertex).or_default();
                    *d = (*d).max(slot + 1);
                }
            }
        }
        let vertices = colors
            .into_iter()
            .map(|(id, color)| Vertex { id, color, degree: degree.get(&id).copied().unwrap_or(0) })
            .collect();
        let missing = |f: &str| DiagramError::Parse(0, format!("missing field {f}"));
        Diagram::from_parts(
            n_lower.ok_or_else(|| missing("lower"))?,
            n_upper.ok_or_else(|| missing("upper"))?,
            vertices,
            edges,
            loops,
            prefactor,
            planar,
        )
    }
}
