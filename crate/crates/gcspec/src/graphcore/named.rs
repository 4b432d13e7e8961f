//! Seed graphs with their standard embeddings.

use super::RotationGraph;
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedGraph {
    Tetrahedron,
    Cube,
    Dodecahedron,
    Octahedron,
    TriangularPrism,
    HexTorus(usize),
    SquareTorus(usize),
}

impl NamedGraph {
    pub const SOLIDS: [NamedGraph; 4] = [
        NamedGraph::Tetrahedron,
        NamedGraph::Cube,
        NamedGraph::Dodecahedron,
        NamedGraph::Octahedron,
    ];

    pub fn build(self) -> Result<RotationGraph> {
        match self {
            NamedGraph::Tetrahedron => {
                let s = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
                convex_polyhedron(&s)
            }
            NamedGraph::Cube => {
                let mut pts = Vec::new();
                for x in [-1.0, 1.0] {
                    for y in [-1.0, 1.0] {
                        for z in [-1.0, 1.0] {
                            pts.push([x, y, z]);
                        }
                    }
                }
                convex_polyhedron(&pts)
            }
            NamedGraph::Octahedron => {
                let pts = [
                    [1.0, 0.0, 0.0],
                    [-1.0, 0.0, 0.0],
                    [0.0, 1.0, 0.0],
                    [0.0, -1.0, 0.0],
                    [0.0, 0.0, 1.0],
                    [0.0, 0.0, -1.0],
                ];
                convex_polyhedron(&pts)
            }
            NamedGraph::Dodecahedron => {
                let phi = (1.0 + 5f64.sqrt()) / 2.0;
                let iphi = 1.0 / phi;
                let mut pts = Vec::new();
                for x in [-1.0, 1.0] {
                    for y in [-1.0, 1.0] {
                        for z in [-1.0, 1.0] {
                            pts.push([x, y, z]);
                        }
                    }
                }
                for a in [-1.0, 1.0] {
                    for b in [-1.0, 1.0] {
                        pts.push([0.0, a * iphi, b * phi]);
                        pts.push([a * iphi, b * phi, 0.0]);
                        pts.push([a * phi, 0.0, b * iphi]);
                    }
                }
                convex_polyhedron(&pts)
            }
            NamedGraph::TriangularPrism => {
                let h = 3f64.sqrt() / 2.0;
                let mut pts = Vec::new();
                for z in [-h, h] {
                    for i in 0..3 {
                        let t = 2.0 * std::f64::consts::PI * i as f64 / 3.0;
                        pts.push([t.cos(), t.sin(), z]);
                    }
                }
                convex_polyhedron(&pts)
            }
            NamedGraph::HexTorus(k) => hex_torus(k),
            NamedGraph::SquareTorus(n) => square_torus(n),
        }
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::Tetrahedron => write!(f, "tetrahedron"),
            NamedGraph::Cube => write!(f, "cube"),
            NamedGraph::Dodecahedron => write!(f, "dodecahedron"),
            NamedGraph::Octahedron => write!(f, "octahedron"),
            NamedGraph::TriangularPrism => write!(f, "triangular_prism"),
            NamedGraph::HexTorus(k) => write!(f, "hex_torus({k})"),
            NamedGraph::SquareTorus(n) => write!(f, "square_torus({n})"),
        }
    }
}

impl FromStr for NamedGraph {
    type Err = Error;

    /// Accepts `cube`, `hex_torus(3)` and `hex_torus:3` style names.
    fn from_str(s: &str) -> Result<NamedGraph> {
        let t = s.trim().to_ascii_lowercase();
        let (head, arg) = match t.find(['(', ':']) {
            Some(i) => {
                let rest = t[i + 1..].trim_end_matches(')');
                let n: usize = rest.trim().parse().map_err(|_| Error::UnknownGraph(s.into()))?;
                (&t[..i], Some(n))
            }
            None => (t.as_str(), None),
        };
        let g = match (head, arg) {
            ("tetrahedron", None) => NamedGraph::Tetrahedron,
            ("cube", None) => NamedGraph::Cube,
            ("dodecahedron", None) => NamedGraph::Dodecahedron,
            ("octahedron", None) => NamedGraph::Octahedron,
            ("triangular_prism" | "prism", None) => NamedGraph::TriangularPrism,
            ("hex_torus", Some(k)) if k >= 1 => NamedGraph::HexTorus(k),
            ("square_torus", Some(n)) if n >= 2 => NamedGraph::SquareTorus(n),
            _ => return Err(Error::UnknownGraph(s.into())),
        };
        Ok(g)
    }
}

pub fn build_named(name: &str) -> Result<RotationGraph> {
    name.parse::<NamedGraph>()?.build()
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Edge graph of a convex polyhedron centered at the origin whose edges are
/// exactly the shortest vertex-vertex segments. Neighbors are sorted
/// counterclockwise as seen from outside.
fn convex_polyhedron(pts: &[[f64; 3]]) -> Result<RotationGraph> {
    let n = pts.len();
    let mut min = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let d = sub(pts[i], pts[j]);
            min = min.min(dot(d, d));
        }
    }
    let rot: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let p = pts[v];
            let mut nb: Vec<usize> = (0..n)
                .filter(|&u| {
                    let d = sub(pts[u], p);
                    u != v && dot(d, d) < min * (1.0 + 1e-9)
                })
                .collect();
            let e1 = {
                let d = sub(pts[nb[0]], p);
                let t = dot(d, p) / dot(p, p);
                [d[0] - t * p[0], d[1] - t * p[1], d[2] - t * p[2]]
            };
            let e2 = cross(p, e1);
            let angle = |u: usize| {
                let d = sub(pts[u], p);
                let a = dot(d, e2).atan2(dot(d, e1));
                if a < -1e-12 {
                    a + 2.0 * std::f64::consts::PI
                } else {
                    a.max(0.0)
                }
            };
            nb.sort_by(|&a, &b| angle(a).partial_cmp(&angle(b)).unwrap());
            nb
        })
        .collect();
    RotationGraph::from_neighbor_lists(&rot)
}

/// The hexagonal torus T(k): vertices `(0,a,b)` at `a+bω` and `(1,a,b)` at
/// `M+a+bω`, indices mod `k`.
pub fn hex_torus(k: usize) -> Result<RotationGraph> {
    if k == 0 {
        return Err(Error::InvalidParams("hex_torus needs k ≥ 1".into()));
    }
    let id = |t: usize, a: usize, b: usize| t * k * k + (a % k) * k + (b % k);
    let n = 2 * k * k;
    let mut slots = vec![Vec::new(); n];
    for a in 0..k {
        for b in 0..k {
            // Type 0 rotation: M−ω (−90°), M (30°), M−1 (150°).
            slots[id(0, a, b)] = vec![
                (id(1, a, b + k - 1), 1),
                (id(1, a, b), 2),
                (id(1, a + k - 1, b), 0),
            ];
            // Type 1 rotation: +1 (−30°), +ω (90°), 0 (210°).
            slots[id(1, a, b)] = vec![
                (id(0, a + 1, b), 2),
                (id(0, a, b + 1), 0),
                (id(0, a, b), 1),
            ];
        }
    }
    let names = (0..2)
        .flat_map(|t| (0..k).flat_map(move |a| (0..k).map(move |b| format!("({t},{a},{b})"))))
        .collect();
    RotationGraph::from_slots(&slots)?.with_names(names)
}

/// The `n × n` square grid with wraparound.
pub fn square_torus(n: usize) -> Result<RotationGraph> {
    if n < 2 {
        return Err(Error::InvalidParams("square_torus needs n ≥ 2".into()));
    }
    let id = |a: usize, b: usize| (a % n) * n + (b % n);
    let mut slots = vec![Vec::new(); n * n];
    for a in 0..n {
        for b in 0..n {
            slots[id(a, b)] = vec![
                (id(a + 1, b), 2),
                (id(a, b + 1), 3),
                (id(a + n - 1, b), 0),
                (id(a, b + n - 1), 1),
            ];
        }
    }
    let names = (0..n).flat_map(|a| (0..n).map(move |b| format!("({a},{b})"))).collect();
    RotationGraph::from_slots(&slots)?.with_names(names)
}

/// `K_n` with every rotation in increasing index order.
pub fn complete_graph(n: usize) -> Result<RotationGraph> {
    let rot: Vec<Vec<usize>> = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
    RotationGraph::from_neighbor_lists(&rot)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(name: &str) -> (usize, usize, Vec<usize>, i64) {
        let g = build_named(name).unwrap();
        let f = g.faces();
        let mut sizes = f.sizes();
        sizes.sort();
        (g.n(), g.num_edges(), sizes, f.genus())
    }

    #[test]
    fn solids() {
        assert_eq!(summary("tetrahedron"), (4, 6, vec![3; 4], 0));
        assert_eq!(summary("cube"), (8, 12, vec![4; 6], 0));
        assert_eq!(summary("octahedron"), (6, 12, vec![3; 8], 0));
        assert_eq!(summary("dodecahedron"), (20, 30, vec![5; 12], 0));
        assert_eq!(summary("triangular_prism"), (6, 9, vec![3, 3, 4, 4, 4], 0));
    }

    #[test]
    fn tori() {
        let (n, e, sizes, g) = summary("hex_torus(2)");
        assert_eq!((n, e, g), (8, 12, 1));
        assert!(sizes.iter().all(|&s| s == 6));
        assert_eq!(summary("hex_torus(1)").3, 1);
        assert_eq!(summary("hex_torus:3").0, 18);
        let (n, e, sizes, g) = summary("square_torus(3)");
        assert_eq!((n, e, g), (9, 18, 1));
        assert!(sizes.iter().all(|&s| s == 4));
        assert_eq!(summary("square_torus(2)").3, 1);
    }

    #[test]
    fn hex_torus_adjacency_matches_pattern() {
        let k = 3;
        let g = hex_torus(k).unwrap();
        let id = |t: usize, a: usize, b: usize| t * k * k + (a % k) * k + (b % k);
        for a in 0..k {
            for b in 0..k {
                let mut nb: Vec<usize> = g.neighbors(id(0, a, b)).collect();
                nb.sort();
                let mut want = vec![id(1, a, b), id(1, a + k - 1, b), id(1, a, b + k - 1)];
                want.sort();
                assert_eq!(nb, want);
            }
        }
    }

    #[test]
    fn unknown_names() {
        assert!(build_named("icosahedron").is_err());
        assert!(build_named("hex_torus(0)").is_err());
        assert!(build_named("square_torus(1)").is_err());
        assert_eq!("Cube".parse::<NamedGraph>().unwrap(), NamedGraph::Cube);
        assert_eq!(NamedGraph::HexTorus(4).to_string(), "hex_torus(4)");
    }
}
