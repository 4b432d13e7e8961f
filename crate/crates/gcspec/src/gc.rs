//! The Goldberg-Coxeter construction.
//!
//! Every vertex `p` of the seed map gets its own copy of the big region,
//! with side `j` glued to the neighbor reached by the `j`-th dart of `p`.
//! Edges of `GC_{k,l}` are found by walking from each cell barycenter to the
//! barycenter of each lattice neighbor, changing frames whenever the walk
//! leaves the region.

use crate::cluster::select;
use crate::error::{Error, Result};
use crate::graphcore::{euler_a_trail, map_isomorphic, RotationGraph};
use crate::lattice::{edge_hits_barycenter, BigRegion, LatticeCell, Orient, Position, Pt, Valence};
use serde::Serialize;
use std::collections::HashMap;

/// Canonical representative of `z = k + l·u` under multiplication by units
/// and the swap `(k,l) ↦ (l,k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub k: i64,
    pub l: i64,
    /// Number of unit multiplications applied before the optional swap.
    pub unit_steps: usize,
    /// Whether the swap was applied; this reverses orientation.
    pub swapped: bool,
}

pub fn normalize_params(valence: Valence, k: i64, l: i64) -> Result<Normalized> {
    if k == 0 && l == 0 {
        return Err(Error::InvalidParams("(0,0) does not define a construction".into()));
    }
    let units = match valence {
        Valence::Three => 6,
        Valence::Four => 4,
    };
    let mut z = Pt::new(k, l);
    let mut found = None;
    for step in 0..units {
        for swapped in [false, true] {
            let (a, b) = if swapped { (z.y, z.x) } else { (z.x, z.y) };
            if a >= b && b >= 0 && a != 0 && found.is_none() {
                found = Some(Normalized {
                    k: a,
                    l: b,
                    unit_steps: step,
                    swapped,
                });
            }
        }
        z = valence.unit_rotate(z);
    }
    Ok(found.expect("every nonzero orbit meets the fundamental sector"))
}

#[derive(Clone, Debug)]
pub struct GcGraph {
    pub graph: RotationGraph,
    pub valence: Valence,
    pub params: (i64, i64),
    /// `provenance[v] = (parent vertex, cell in the parent's frame)`.
    pub provenance: Vec<(usize, LatticeCell)>,
    /// Parent edges crossed by each edge of the output, indexed by edge id.
    pub crossings: Vec<Vec<usize>>,
    pub cluster_size: usize,
    parent_edges: usize,
    index: HashMap<(usize, Pt), usize>,
}

#[derive(Serialize)]
struct ProvenanceRecord {
    gc_vertex: usize,
    parent_vertex: usize,
    cell: CellRecord,
}

#[derive(Serialize)]
struct CellRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    orient: Option<Orient>,
    a: i64,
    b: i64,
}

impl GcGraph {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Vertex carrying `cell` in the frame of parent vertex `p`.
    pub fn vertex_at(&self, p: usize, cell: &LatticeCell) -> Option<usize> {
        self.index.get(&(p, cell.scaled_barycenter())).copied()
    }

    /// Vertices of the cluster of parent vertex `p`.
    pub fn cluster(&self, p: usize) -> std::ops::Range<usize> {
        p * self.cluster_size..(p + 1) * self.cluster_size
    }

    pub fn provenance_json(&self) -> Result<String> {
        let recs: Vec<ProvenanceRecord> = self
            .provenance
            .iter()
            .enumerate()
            .map(|(v, &(p, cell))| ProvenanceRecord {
                gc_vertex: v,
                parent_vertex: p,
                cell: match cell {
                    LatticeCell::Tri(t) => CellRecord {
                        orient: Some(t.orient),
                        a: t.a,
                        b: t.b,
                    },
                    LatticeCell::Sq(s) => CellRecord {
                        orient: None,
                        a: s.a,
                        b: s.b,
                    },
                },
            })
            .collect();
        Ok(serde_json::to_string_pretty(&recs)?)
    }
}

/// Number of edges of `g` joining the two clusters at the ends of parent
/// edge `e`.
pub fn intercluster_edge_count(g: &GcGraph, e: usize) -> Result<usize> {
    if e >= g.parent_edges {
        return Err(Error::NotAnEdge(e));
    }
    Ok(g.crossings.iter().filter(|c| c.contains(&e)).count())
}

struct Frames<'a> {
    x: &'a RotationGraph,
    region: BigRegion,
    /// Selected barycenters and their lookup, per distinct outward mask.
    cells: Vec<Vec<Pt>>,
    lookup: Vec<HashMap<Pt, usize>>,
    mask_of: Vec<usize>,
}

impl Frames<'_> {
    fn selected(&self, p: usize, s: Pt) -> Option<usize> {
        self.lookup[self.mask_of[p]].get(&s).copied()
    }

    /// Coordinates in the frame of the neighbor across side `j` of `p`.
    fn cross(&self, p: usize, j: usize, pts: [Pt; 2]) -> (usize, [Pt; 2], usize) {
        let d = self.x.rotation(p)[j];
        let q = self.x.target(d);
        let i = self.x.position(self.x.theta(d));
        let n = self.region.sides();
        let turns = (i + n - j) % n;
        let map = |pt: Pt| {
            let mut w = self.region.flip_across(j, pt);
            for _ in 0..turns {
                w = self.region.advance_corner(w);
            }
            w
        };
        (q, [map(pts[0]), map(pts[1])], self.x.edge_of(d))
    }

    /// Walks from the cell at `s` in frame `p` towards `s + o`.
    /// Returns the frame, start and end points in that frame, and the parent
    /// edges crossed.
    fn walk(&self, p: usize, s: Pt, o: Pt) -> Result<(usize, Pt, Pt, Vec<usize>)> {
        let (mut p, mut s, mut e) = (p, s, s + o);
        let mut crossed = Vec::new();
        for _ in 0..8 {
            let side = match self.region.classify(e) {
                Position::Interior => return Ok((p, s, e, crossed)),
                Position::OnEdge(j) => {
                    if self.selected(p, e).is_some() {
                        return Ok((p, s, e, crossed));
                    }
                    j
                }
                Position::Outside => self
                    .region
                    .exit_side(s, e)
                    .ok_or_else(|| Error::InconsistentOrientation("walk left the region without a side".into()))?,
            };
            let (q, [s2, e2], edge) = self.cross(p, side, [s, e]);
            crossed.push(edge);
            p = q;
            s = s2;
            e = e2;
        }
        Err(Error::InconsistentOrientation("walk did not settle in a cluster".into()))
    }
}

/// Builds `GC_{k,l}(X)` for any nonzero `(k,l)`. Non-normalized parameters
/// give the isomorphic images of the normalized construction.
pub fn gc_build(x: &RotationGraph, k: i64, l: i64) -> Result<GcGraph> {
    let deg = x
        .regular_degree()
        .ok_or_else(|| Error::InvalidParams("seed graph is not regular".into()))?;
    let valence = Valence::from_degree(deg)
        .ok_or_else(|| Error::InvalidParams(format!("seed graph has degree {deg}, expected 3 or 4")))?;
    x.check_regular(deg)?;
    let region = BigRegion::new(valence, k, l)?;
    let nsides = region.sides();

    // Outward sides per vertex, from an A-trail when square sides carry
    // barycenters.
    let norm = normalize_params(valence, k, l)?;
    let needs_trail = valence == Valence::Four && edge_hits_barycenter(norm.k, norm.l, valence)?;
    let outward_darts = if needs_trail {
        euler_a_trail(x)?.outward(x)
    } else {
        vec![false; x.num_darts()]
    };
    let mut masks: Vec<Vec<bool>> = Vec::new();
    let mut mask_of = Vec::with_capacity(x.n());
    for p in 0..x.n() {
        let m: Vec<bool> = x.rotation(p).iter().map(|&d| outward_darts[d]).collect();
        let id = masks.iter().position(|q| *q == m).unwrap_or_else(|| {
            masks.push(m);
            masks.len() - 1
        });
        mask_of.push(id);
    }
    let cells: Vec<Vec<Pt>> = masks.iter().map(|m| select(&region, m)).collect();
    let size = cells[0].len();
    if cells.iter().any(|c| c.len() != size) {
        return Err(Error::InconsistentOrientation("cluster sizes differ between vertices".into()));
    }
    let lookup = cells
        .iter()
        .map(|c| c.iter().enumerate().map(|(i, &p)| (p, i)).collect())
        .collect();
    let frames = Frames {
        x,
        region,
        cells,
        lookup,
        mask_of,
    };

    let id = |p: usize, c: usize| p * size + c;
    let n = x.n() * size;
    let mut slots = Vec::with_capacity(n);
    let mut walks = Vec::with_capacity(n);
    let mut provenance = Vec::with_capacity(n);
    let mut index = HashMap::with_capacity(n);
    for p in 0..x.n() {
        for (c, &s) in frames.cells[frames.mask_of[p]].iter().enumerate() {
            provenance.push((p, valence.cell_at(s)));
            index.insert((p, s), id(p, c));
            let mut row = Vec::with_capacity(nsides);
            let mut crossed_row = Vec::with_capacity(nsides);
            for &o in valence.neighbor_offsets(s) {
                let (q, s2, e2, crossed) = frames.walk(p, s, o)?;
                let target = frames
                    .selected(q, e2)
                    .ok_or_else(|| Error::InconsistentOrientation("walk ended on an unselected cell".into()))?;
                let back = s2 - e2;
                let j = valence
                    .neighbor_offsets(e2)
                    .iter()
                    .position(|&b| b == back)
                    .ok_or_else(|| Error::InconsistentOrientation("frame change distorted an edge".into()))?;
                row.push((id(q, target), j));
                crossed_row.push(crossed);
            }
            slots.push(row);
            walks.push(crossed_row);
        }
    }
    let graph = RotationGraph::from_slots(&slots)
        .map_err(|e| Error::InconsistentOrientation(format!("gluing is not symmetric: {e}")))?;
    let mut crossings = vec![Vec::new(); graph.num_edges()];
    for v in 0..graph.n() {
        for (i, &d) in graph.rotation(v).iter().enumerate() {
            if d % 2 == 0 {
                crossings[d / 2] = std::mem::take(&mut walks[v][i]);
            }
        }
    }
    Ok(GcGraph {
        graph,
        valence,
        params: (k, l),
        provenance,
        crossings,
        cluster_size: size,
        parent_edges: x.num_edges(),
        index,
    })
}

/// Checks `GC_z(GC_{z'}(X)) ≅ GC_{zz'}(X)`.
pub fn compose_check(x: &RotationGraph, z: (i64, i64), zp: (i64, i64)) -> Result<bool> {
    let valence = x
        .regular_degree()
        .and_then(Valence::from_degree)
        .ok_or_else(|| Error::InvalidParams("seed must be 3- or 4-regular".into()))?;
    let inner = gc_build(x, zp.0, zp.1)?;
    let lhs = gc_build(&inner.graph, z.0, z.1)?;
    let prod = valence.mul(z, zp);
    let rhs = gc_build(x, prod.0, prod.1)?;
    Ok(map_isomorphic(&lhs.graph, &rhs.graph))
}
