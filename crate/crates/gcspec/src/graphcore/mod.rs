//! Rotation systems (combinatorial maps) and the graph operations built on them.
//!
//! Edge `e` owns darts `2e` and `2e+1`, so the reversal involution is `d ^ 1`.
//! The rotation at a vertex lists its outgoing darts counterclockwise.

mod io;
mod iso;
mod matrix;
mod named;
mod trail;

pub use io::{read_json, to_csv, to_dot, to_json_string, write_json, GraphFile};
pub use iso::map_isomorphic;
pub use matrix::SymMatrix;
pub use named::{build_named, complete_graph, NamedGraph};
pub use trail::{euler_a_trail, EulerATrail};

use crate::error::{Error, Result};
use std::collections::{HashSet, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationGraph {
    rotation: Vec<Vec<usize>>,
    origin: Vec<usize>,
    pos: Vec<usize>,
    names: Vec<String>,
}

/// Faces traced by `d ↦ σ(θ(d))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Vec<usize>>,
    pub euler_characteristic: i64,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic) / 2
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.len()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartition {
    Coloring(Vec<bool>),
    OddCycle(Vec<usize>),
}

impl RotationGraph {
    /// Builds a map from half-edge slots: `slots[v][i] = (u, j)` pairs the
    /// `i`-th dart at `v` with the `j`-th dart at `u`.
    pub fn from_slots(slots: &[Vec<(usize, usize)>]) -> Result<RotationGraph> {
        let n = slots.len();
        for (v, row) in slots.iter().enumerate() {
            for (i, &(u, j)) in row.iter().enumerate() {
                let back = slots
                    .get(u)
                    .and_then(|r| r.get(j))
                    .ok_or_else(|| Error::Malformed(format!("slot ({v},{i}) points to missing ({u},{j})")))?;
                if *back != (v, i) || (u, j) == (v, i) {
                    return Err(Error::Malformed(format!("slot ({v},{i}) is not paired consistently")));
                }
            }
        }
        let mut rotation: Vec<Vec<usize>> = slots.iter().map(|r| vec![usize::MAX; r.len()]).collect();
        let mut origin = Vec::new();
        let mut pos = Vec::new();
        for v in 0..n {
            for i in 0..slots[v].len() {
                if rotation[v][i] != usize::MAX {
                    continue;
                }
                let (u, j) = slots[v][i];
                let d = origin.len();
                rotation[v][i] = d;
                rotation[u][j] = d + 1;
                origin.extend([v, u]);
                pos.extend([i, j]);
            }
        }
        Ok(RotationGraph {
            rotation,
            origin,
            pos,
            names: (0..n).map(|v| v.to_string()).collect(),
        })
    }

    /// Builds a simple graph from counterclockwise neighbor lists.
    pub fn from_neighbor_lists(rot: &[Vec<usize>]) -> Result<RotationGraph> {
        let n = rot.len();
        let mut slots = Vec::with_capacity(n);
        for (v, row) in rot.iter().enumerate() {
            let mut seen = HashSet::new();
            let mut srow = Vec::with_capacity(row.len());
            for &u in row {
                if u >= n {
                    return Err(Error::Malformed(format!("vertex {v} lists missing neighbor {u}")));
                }
                if u == v {
                    return Err(Error::NotSimple(format!("loop at {v}")));
                }
                if !seen.insert(u) {
                    return Err(Error::NotSimple(format!("repeated edge {v}-{u}")));
                }
                let j = rot[u]
                    .iter()
                    .position(|&w| w == v)
                    .ok_or_else(|| Error::Malformed(format!("edge {v}-{u} is not listed at {u}")))?;
                srow.push((u, j));
            }
            slots.push(srow);
        }
        RotationGraph::from_slots(&slots)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<RotationGraph> {
        if names.len() != self.n() {
            return Err(Error::Malformed("name count differs from vertex count".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn num_edges(&self) -> usize {
        self.origin.len() / 2
    }

    pub fn num_darts(&self) -> usize {
        self.origin.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Outgoing darts of `v`, counterclockwise.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn origin(&self, d: usize) -> usize {
        self.origin[d]
    }

    pub fn target(&self, d: usize) -> usize {
        self.origin[d ^ 1]
    }

    pub fn theta(&self, d: usize) -> usize {
        d ^ 1
    }

    /// Index of `d` in the rotation at its origin.
    pub fn position(&self, d: usize) -> usize {
        self.pos[d]
    }

    /// Next dart counterclockwise around the origin of `d`.
    pub fn sigma(&self, d: usize) -> usize {
        let r = &self.rotation[self.origin[d]];
        r[(self.pos[d] + 1) % r.len()]
    }

    pub fn sigma_inv(&self, d: usize) -> usize {
        let r = &self.rotation[self.origin[d]];
        r[(self.pos[d] + r.len() - 1) % r.len()]
    }

    pub fn edge_of(&self, d: usize) -> usize {
        d / 2
    }

    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        (self.origin[2 * e], self.origin[2 * e + 1])
    }

    /// Neighbors of `v` in rotation order, with repetition for multi-edges.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rotation[v].iter().map(move |&d| self.target(d))
    }

    pub fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n()).map(|v| self.neighbors(v).collect()).collect()
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.rotation.first()?.len();
        self.rotation.iter().all(|r| r.len() == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n()
    }

    pub fn has_loops(&self) -> bool {
        (0..self.num_edges()).any(|e| {
            let (a, b) = self.edge_endpoints(e);
            a == b
        })
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        for e in 0..self.num_edges() {
            let (a, b) = self.edge_endpoints(e);
            if a == b || !seen.insert((a.min(b), a.max(b))) {
                return false;
            }
        }
        true
    }

    /// Checks that the graph is connected, loopless and regular of degree
    /// `expected`.
    pub fn check_regular(&self, expected: usize) -> Result<()> {
        for v in 0..self.n() {
            if self.degree(v) != expected {
                return Err(Error::NotRegular {
                    vertex: v,
                    degree: self.degree(v),
                    expected,
                });
            }
        }
        if self.has_loops() {
            return Err(Error::NotSimple("loop".into()));
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    pub fn faces(&self) -> FaceSet {
        let mut seen = vec![false; self.num_darts()];
        let mut faces = Vec::new();
        for start in 0..self.num_darts() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = self.sigma(self.theta(d));
            }
            faces.push(face);
        }
        let chi = self.n() as i64 - self.num_edges() as i64 + faces.len() as i64;
        FaceSet {
            faces,
            euler_characteristic: chi,
        }
    }

    pub fn genus(&self) -> i64 {
        self.faces().genus()
    }

    pub fn laplacian(&self) -> SymMatrix {
        let mut m = SymMatrix::zeros(self.n());
        for e in 0..self.num_edges() {
            let (a, b) = self.edge_endpoints(e);
            if a == b {
                continue;
            }
            m.add(a, a, 1.0);
            m.add(b, b, 1.0);
            m.add(a, b, -1.0);
            m.add(b, a, -1.0);
        }
        m
    }

    pub fn adjacency(&self) -> SymMatrix {
        let mut m = SymMatrix::zeros(self.n());
        for e in 0..self.num_edges() {
            let (a, b) = self.edge_endpoints(e);
            m.add(a, b, 1.0);
            if a != b {
                m.add(b, a, 1.0);
            }
        }
        m
    }

    /// BFS 2-coloring, or an odd closed walk as a certificate.
    pub fn is_bipartite(&self) -> Bipartition {
        let n = self.n();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                let cv = color[v].unwrap();
                for u in self.neighbors(v) {
                    match color[u] {
                        None => {
                            color[u] = Some(!cv);
                            parent[u] = v;
                            q.push_back(u);
                        }
                        Some(cu) if cu == cv => {
                            return Bipartition::OddCycle(self.odd_cycle(&parent, v, u));
                        }
                        _ => {}
                    }
                }
            }
        }
        Bipartition::Coloring(color.into_iter().map(|c| c.unwrap()).collect())
    }

    fn odd_cycle(&self, parent: &[usize], v: usize, u: usize) -> Vec<usize> {
        let path = |mut x: usize| {
            let mut p = vec![x];
            while parent[x] != usize::MAX {
                x = parent[x];
                p.push(x);
            }
            p
        };
        let (pv, pu) = (path(v), path(u));
        let common: HashSet<usize> = pu.iter().copied().collect();
        let meet_v = pv.iter().position(|x| common.contains(x)).unwrap();
        let meet = pv[meet_v];
        let meet_u = pu.iter().position(|&x| x == meet).unwrap();
        let mut cycle: Vec<usize> = pv[..=meet_v].to_vec();
        cycle.extend(pu[..meet_u].iter().rev());
        cycle
    }

    /// Same map with every rotation reversed.
    pub fn mirror(&self) -> RotationGraph {
        let slots: Vec<Vec<(usize, usize)>> = (0..self.n())
            .map(|v| {
                let deg = self.degree(v);
                (0..deg)
                    .map(|i| {
                        let d = self.rotation[v][(deg - i) % deg];
                        let t = d ^ 1;
                        let w = self.origin[t];
                        let dw = self.degree(w);
                        (w, (dw - self.pos[t]) % dw)
                    })
                    .collect()
            })
            .collect();
        RotationGraph::from_slots(&slots)
            .expect("mirror of a valid map")
            .with_names(self.names.clone())
            .unwrap()
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`. Rotations are also
    /// cyclically shifted by `shift` to exercise the isomorphism tester.
    pub fn relabel(&self, perm: &[usize], shift: usize) -> Result<RotationGraph> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::Malformed("permutation length".into()));
        }
        let mut inv = vec![usize::MAX; n];
        for (v, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return Err(Error::Malformed("not a permutation".into()));
            }
            inv[p] = v;
        }
        let new_pos = |v: usize, i: usize| {
            let deg = self.degree(v);
            (i + deg - shift % deg) % deg
        };
        let slots: Vec<Vec<(usize, usize)>> = (0..n)
            .map(|nv| {
                let v = inv[nv];
                let deg = self.degree(v);
                (0..deg)
                    .map(|ni| {
                        let d = self.rotation[v][(ni + shift) % deg];
                        let t = d ^ 1;
                        let w = self.origin[t];
                        (perm[w], new_pos(w, self.pos[t]))
                    })
                    .collect()
            })
            .collect();
        let names = (0..n).map(|nv| self.names[inv[nv]].clone()).collect();
        RotationGraph::from_slots(&slots)?.with_names(names)
    }
}
