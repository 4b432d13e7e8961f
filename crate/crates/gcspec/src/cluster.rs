//! The `(k,l)`-clusters: the cells of the big triangle or square that one
//! vertex of the seed graph contributes to `GC_{k,l}`.

use crate::error::{Error, Result};
use crate::graphcore::SymMatrix;
use crate::lattice::{BigRegion, LatticeCell, Position, Pt, Valence};
use std::collections::{BTreeMap, HashMap};

/// Which opposite pair of square sides is outward. Sides are numbered
/// counterclockwise from the side leaving corner 0, so for `(k,0)` side 0 is
/// south, 1 east, 2 north and 3 west.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SidePair {
    EastWest,
    NorthSouth,
}

impl SidePair {
    pub fn mask(self) -> [bool; 4] {
        match self {
            SidePair::EastWest => [false, true, false, true],
            SidePair::NorthSouth => [true, false, true, false],
        }
    }
}

/// A cluster cell edge whose other side lies outside the selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Port {
    pub cell: usize,
    /// Index into the counterclockwise neighbor offsets of the cell.
    pub direction: usize,
    pub side: usize,
}

#[derive(Clone, Debug)]
pub struct ClusterGraph {
    pub valence: Valence,
    pub params: (i64, i64),
    pub region: BigRegion,
    pub cells: Vec<LatticeCell>,
    pub barycenters: Vec<Pt>,
    /// Internal neighbors of each cell, counterclockwise.
    pub adjacency: Vec<Vec<usize>>,
    /// Boundary ports of each side, ordered from the side's first corner.
    pub ports: Vec<Vec<Port>>,
    pub outward: Vec<bool>,
    index: HashMap<Pt, usize>,
}

fn check_normalized(k: i64, l: i64) -> Result<()> {
    if k >= l && l >= 0 && k != 0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("({k},{l}) must satisfy k ≥ l ≥ 0, k ≠ 0")))
    }
}

/// Selected scaled barycenters in row-major order (by `y`, then `x`).
pub(crate) fn select(region: &BigRegion, outward: &[bool]) -> Vec<Pt> {
    let mut cells: Vec<Pt> = region
        .candidate_barycenters()
        .into_iter()
        .filter(|&p| match region.classify(p) {
            Position::Interior => true,
            Position::OnEdge(j) => match region.valence {
                Valence::Three => p.x.rem_euclid(3) == 1,
                Valence::Four => outward[j],
            },
            Position::Outside => false,
        })
        .collect();
    cells.sort_by_key(|p| (p.y, p.x));
    cells
}

/// Twice the Euclidean inner product of two lattice vectors.
fn dot2(valence: Valence, u: Pt, v: Pt) -> i64 {
    match valence {
        Valence::Three => 2 * u.x * v.x + u.x * v.y + u.y * v.x + 2 * u.y * v.y,
        Valence::Four => 2 * (u.x * v.x + u.y * v.y),
    }
}

pub fn cluster3(k: i64, l: i64) -> Result<ClusterGraph> {
    check_normalized(k, l)?;
    ClusterGraph::build(Valence::Three, k, l, &[false; 3])
}

pub fn cluster4(k: i64, l: i64, outward: SidePair) -> Result<ClusterGraph> {
    check_normalized(k, l)?;
    ClusterGraph::build(Valence::Four, k, l, &outward.mask())
}

impl ClusterGraph {
    /// Builds the cluster for any nonzero `z = (k,l)`; `outward` is only
    /// consulted for square regions.
    pub fn build(valence: Valence, k: i64, l: i64, outward: &[bool]) -> Result<ClusterGraph> {
        let region = BigRegion::new(valence, k, l)?;
        let barycenters = select(&region, outward);
        let index: HashMap<Pt, usize> = barycenters.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut adjacency = vec![Vec::new(); barycenters.len()];
        let mut keyed: Vec<Vec<(i64, usize, Port)>> = vec![Vec::new(); region.sides()];
        for (c, &s) in barycenters.iter().enumerate() {
            for (dir, &o) in valence.neighbor_offsets(s).iter().enumerate() {
                let e = s + o;
                if let Some(&u) = index.get(&e) {
                    adjacency[c].push(u);
                    continue;
                }
                let side = match region.classify(e) {
                    Position::OnEdge(j) => j,
                    _ => region.exit_side(s, e).expect("neighbor outside the region"),
                };
                let a = region.corner(side);
                let b = region.corner(side + 1);
                let key = dot2(valence, s + e - a.scale(2), b - a);
                keyed[side].push((key, c, Port { cell: c, direction: dir, side }));
            }
        }
        let ports = keyed
            .into_iter()
            .map(|mut v| {
                v.sort_by_key(|&(key, c, p)| (key, c, p.direction));
                v.into_iter().map(|(_, _, p)| p).collect()
            })
            .collect();
        Ok(ClusterGraph {
            valence,
            params: (k, l),
            cells: barycenters.iter().map(|&p| valence.cell_at(p)).collect(),
            barycenters,
            adjacency,
            ports,
            outward: match valence {
                Valence::Three => vec![false; 3],
                Valence::Four => outward.to_vec(),
            },
            region,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, p: Pt) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn degree(&self, c: usize) -> usize {
        self.adjacency[c].len()
    }

    pub fn laplacian(&self) -> SymMatrix {
        let mut m = SymMatrix::zeros(self.len());
        for (c, nb) in self.adjacency.iter().enumerate() {
            m.set(c, c, nb.len() as f64);
            for &u in nb {
                m.add(c, u, -1.0);
            }
        }
        m
    }

    pub fn adjacency_matrix(&self) -> SymMatrix {
        let mut m = SymMatrix::zeros(self.len());
        for (c, nb) in self.adjacency.iter().enumerate() {
            for &u in nb {
                m.add(c, u, 1.0);
            }
        }
        m
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for &u in &self.adjacency[c] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Cell permutation induced by a point map of the region, if the
    /// selection is invariant under it.
    fn permutation(&self, f: impl Fn(Pt) -> Pt) -> Option<Vec<usize>> {
        self.barycenters.iter().map(|&p| self.index_of(f(p))).collect()
    }

    /// The rotation of the region taking corner `j` to corner `j+1`.
    pub fn rotation_permutation(&self) -> Option<Vec<usize>> {
        self.permutation(|p| self.region.advance_corner(p))
    }

    /// The dihedral symmetries of a `(k,0)` cluster as cell permutations with
    /// their signs (`-1` for reflections). The reflection fixing corner 0 is
    /// `(x,y) ↦ (y,x)` in lattice coordinates.
    pub fn dihedral_group(&self) -> Result<Vec<(Vec<usize>, i8)>> {
        if self.params.1 != 0 || self.params.0 <= 0 {
            return Err(Error::InvalidParams("dihedral symmetry needs l = 0".into()));
        }
        let rot = self.rotation_permutation().expect("(k,0) clusters are rotation invariant");
        let refl = self.permutation(|p| Pt::new(p.y, p.x)).expect("(k,0) clusters are reflection invariant");
        let n = self.len();
        let mut out = Vec::new();
        let mut r: Vec<usize> = (0..n).collect();
        for _ in 0..self.region.sides() {
            let rr: Vec<usize> = (0..n).map(|c| r[refl[c]]).collect();
            out.push((r.clone(), 1));
            out.push((rr, -1));
            r = (0..n).map(|c| rot[r[c]]).collect();
        }
        Ok(out)
    }

    /// Multiset of internal degrees as `degree → count`.
    pub fn degree_profile(&self) -> Result<BTreeMap<usize, usize>> {
        if self.params.1 != 0 {
            return Err(Error::InvalidParams("degree profile is defined for l = 0".into()));
        }
        let mut m = BTreeMap::new();
        for c in 0..self.len() {
            *m.entry(self.degree(c)).or_insert(0) += 1;
        }
        Ok(m)
    }
}
