//! Face-size conditions on 3-valent plane maps: edge numberings, vertex
//! numberings of `GC_{2,0}`, black/white colorings, and the bipartition of a
//! Goldberg-Coxeter construction.
//!
//! Turning right means leaving a vertex by the dart that follows the arrival
//! dart in the rotation; turning left uses the preceding one.

use crate::error::{Error, Result};
use crate::gc::{gc_build, GcGraph};
use crate::graphcore::{Bipartition, RotationGraph};
use crate::lattice::{LatticeCell, Orient};
use crate::spectra::{gc_spectrum, multiplicities, Report, GROUP_TOL};
use serde::Serialize;
use std::collections::{BTreeMap, VecDeque};

/// Edge labels in `{1,2,3}`, indexed by edge id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeNumbering {
    pub labels: Vec<u8>,
}

/// Vertex labels in `{0,1,2,3}` on `GC_{2,0}(X)`, indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexNumbering {
    pub labels: Vec<u8>,
}

/// `true` is black.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BWColoring {
    pub black: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CFailure {
    AdjacentBlack(usize, usize),
    /// A white vertex with the given number of black neighbors.
    WhiteCount(usize, usize),
}

/// Why no seed produced a coloring; reports the lowest seed. `exhaustive`
/// is set when the exact search finished, so no coloring exists at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CWitness {
    pub seed: usize,
    pub failure: CFailure,
    pub exhaustive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CStatus {
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
}

fn require_cubic(x: &RotationGraph) -> Result<()> {
    x.check_regular(3)
}

fn require_plane(x: &RotationGraph) -> Result<()> {
    match x.genus() {
        0 => Ok(()),
        genus => Err(Error::NotPlanar { genus }),
    }
}

/// Whether every face has size divisible by 3.
pub fn check_f(x: &RotationGraph) -> Result<bool> {
    require_cubic(x)?;
    require_plane(x)?;
    Ok(x.faces().sizes().iter().all(|s| s % 3 == 0))
}

/// Turn value of arriving at a vertex by dart `d` (outgoing at that vertex)
/// and leaving by `next`: `+1` right, `-1` left.
pub fn turn(x: &RotationGraph, d: usize, next: usize) -> Result<i8> {
    if x.origin(d) != x.origin(next) {
        return Err(Error::InvalidParams("darts leave different vertices".into()));
    }
    if next == x.sigma(d) {
        Ok(1)
    } else if next == x.sigma_inv(d) {
        Ok(-1)
    } else {
        Err(Error::InvalidParams("a path may not turn back".into()))
    }
}

fn reduce(v: i64) -> u8 {
    match v.rem_euclid(3) {
        0 => 3,
        r => r as u8,
    }
}

/// Numbers every edge by summing turns along paths from edge `e0`, which
/// gets 3. Fails when two paths disagree.
pub fn build_cn_from(x: &RotationGraph, e0: usize) -> Result<EdgeNumbering> {
    require_cubic(x)?;
    if e0 >= x.num_edges() {
        return Err(Error::NotAnEdge(e0));
    }
    let mut nu: Vec<Option<i64>> = vec![None; x.num_edges()];
    nu[e0] = Some(0);
    let mut queue = VecDeque::from([e0]);
    while let Some(e) = queue.pop_front() {
        let val = nu[e].unwrap();
        for d in [2 * e, 2 * e + 1] {
            for (next, t) in [(x.sigma(d), 1), (x.sigma_inv(d), -1)] {
                let f = x.edge_of(next);
                let want = (val + t).rem_euclid(3);
                match nu[f] {
                    None => {
                        nu[f] = Some(want);
                        queue.push_back(f);
                    }
                    Some(have) if have != want => {
                        return Err(Error::ConditionF(format!(
                            "edge {f} gets {} and {} along different paths from edge {e0}",
                            reduce(have),
                            reduce(want)
                        )));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(EdgeNumbering {
        labels: nu.into_iter().map(|v| reduce(v.expect("connected graph"))).collect(),
    })
}

pub fn build_cn(x: &RotationGraph) -> Result<EdgeNumbering> {
    build_cn_from(x, 0)
}

/// Whether the labels at every vertex read 1, 2, 3 in rotation order.
pub fn check_cn(x: &RotationGraph, cn: &EdgeNumbering) -> bool {
    if cn.labels.len() != x.num_edges() || x.regular_degree() != Some(3) {
        return false;
    }
    (0..x.num_darts()).all(|d| {
        let a = cn.labels[x.edge_of(d)] as i64;
        let b = cn.labels[x.edge_of(x.sigma(d))] as i64;
        (1..=3).contains(&a) && reduce(a + 1) as i64 == b
    })
}

/// Labels `GC_{2,0}(X)`: each cluster center gets 0 and each corner vertex
/// gets the number of the parent edge its cluster does not share with the
/// corner's outside neighbors.
pub fn build_n(x: &RotationGraph, cn: &EdgeNumbering) -> Result<(GcGraph, VertexNumbering)> {
    if !check_cn(x, cn) {
        return Err(Error::InvalidNumbering("edge numbering violates the rotation rule".into()));
    }
    let g = gc_build(x, 2, 0)?;
    let mut labels = vec![0u8; g.n()];
    for v in 0..g.n() {
        let p = g.provenance[v].0;
        let mut crossed: Vec<usize> = g
            .graph
            .rotation(v)
            .iter()
            .flat_map(|&d| g.crossings[g.graph.edge_of(d)].iter().copied())
            .collect();
        crossed.sort_unstable();
        crossed.dedup();
        match crossed.len() {
            0 => {}
            2 => {
                let d = x
                    .rotation(p)
                    .iter()
                    .copied()
                    .find(|&d| !crossed.contains(&x.edge_of(d)))
                    .ok_or_else(|| Error::InconsistentOrientation("corner crosses foreign edges".into()))?;
                labels[v] = cn.labels[x.edge_of(d)];
            }
            m => {
                return Err(Error::InconsistentOrientation(format!(
                    "vertex {v} of GC(2,0) crosses {m} parent edges"
                )))
            }
        }
    }
    Ok((g, VertexNumbering { labels }))
}

fn is_center(g: &GcGraph, v: usize) -> bool {
    matches!(g.provenance[v].1, LatticeCell::Tri(t) if t.orient == Orient::Down)
}

/// `(N-i, N-ii)` for a numbering of `GC_{2,0}(X)`.
pub fn check_n(g: &GcGraph, vn: &VertexNumbering) -> (bool, bool) {
    if g.params != (2, 0) || vn.labels.len() != g.n() {
        return (false, false);
    }
    let n1 = (0..g.n()).all(|v| (vn.labels[v] == 0) == is_center(g, v) && vn.labels[v] <= 3);
    let n2 = (0..g.graph.num_edges()).all(|e| {
        let (a, b) = g.graph.edge_endpoints(e);
        vn.labels[a] != vn.labels[b]
    });
    (n1, n2)
}

/// `f(x) = α[label(x)]`.
pub fn eigenfunction_from_n(vn: &VertexNumbering, alpha: [f64; 4]) -> Result<Vec<f64>> {
    let scale = alpha.iter().map(|a| a.abs()).fold(0.0, f64::max);
    if scale == 0.0 || alpha.iter().sum::<f64>().abs() > 1e-12 * scale {
        return Err(Error::BadCoefficients);
    }
    Ok(vn.labels.iter().map(|&l| alpha[l as usize]).collect())
}

/// Dart reached from `d` by two equal turns.
fn double_turn(x: &RotationGraph, d: usize, right: bool) -> usize {
    let step = |d: usize| {
        let back = x.theta(d);
        if right {
            x.sigma(back)
        } else {
            x.sigma_inv(back)
        }
    };
    step(step(d))
}

/// Endpoints of the six paths of length 3 from `v` that turn the same way
/// twice.
fn double_turn_targets(x: &RotationGraph, v: usize) -> impl Iterator<Item = usize> + '_ {
    x.rotation(v)
        .iter()
        .flat_map(move |&d| [true, false].map(|r| x.target(double_turn(x, d, r))))
}

fn closure(x: &RotationGraph, seed: usize) -> std::result::Result<Vec<bool>, CFailure> {
    let mut black = vec![false; x.n()];
    black[seed] = true;
    let mut queue = VecDeque::from([seed]);
    while let Some(v) = queue.pop_front() {
        for y in double_turn_targets(x, v) {
            if !black[y] {
                black[y] = true;
                queue.push_back(y);
            }
        }
    }
    let c = BWColoring { black };
    match c_failure(x, &c) {
        Some(f) => Err(f),
        None => Ok(c.black),
    }
}

fn c_failure(x: &RotationGraph, c: &BWColoring) -> Option<CFailure> {
    for v in 0..x.n() {
        let nb: Vec<usize> = x.neighbors(v).filter(|&u| c.black[u]).collect();
        if c.black[v] {
            if let Some(&u) = nb.first() {
                return Some(CFailure::AdjacentBlack(v, u));
            }
        } else if nb.len() != 1 {
            return Some(CFailure::WhiteCount(v, nb.len()));
        }
    }
    None
}

/// Colors a seed black and closes under double turns, trying seeds in index
/// order. Graphs with faces of size not divisible by 3 usually defeat the
/// closure (a double turn around a square lands next to its start), so
/// when every seed fails an exact search over dominating sets is run before
/// giving up; the witness then comes from the lowest seed.
pub fn build_c(x: &RotationGraph) -> Result<std::result::Result<BWColoring, CWitness>> {
    require_cubic(x)?;
    require_plane(x)?;
    let mut first = None;
    for seed in 0..x.n() {
        match closure(x, seed) {
            Ok(black) => return Ok(Ok(BWColoring { black })),
            Err(failure) => {
                first.get_or_insert((seed, failure));
            }
        }
    }
    let (seed, failure) = first.expect("graph has vertices");
    match search_c(x) {
        Ok(black) => Ok(Ok(BWColoring { black })),
        Err(exhaustive) => Ok(Err(CWitness { seed, failure, exhaustive })),
    }
}

const SEARCH_BUDGET: usize = 1 << 20;

/// Backtracking over perfect dominating sets: the lowest undominated vertex
/// must be covered by itself or one neighbor. The error flags whether the
/// search ran to completion.
fn search_c(x: &RotationGraph) -> std::result::Result<Vec<bool>, bool> {
    struct S<'a> {
        x: &'a RotationGraph,
        black: Vec<bool>,
        covered: Vec<u8>,
        nodes: usize,
    }
    impl S<'_> {
        fn closed(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
            std::iter::once(v).chain(self.x.neighbors(v))
        }
        fn can_place(&self, b: usize) -> bool {
            self.closed(b).all(|u| self.covered[u] == 0)
        }
        fn set(&mut self, b: usize, on: bool) {
            self.black[b] = on;
            let us: Vec<usize> = self.closed(b).collect();
            for u in us {
                if on {
                    self.covered[u] += 1;
                } else {
                    self.covered[u] -= 1;
                }
            }
        }
        /// Black vertices at distance 3 from `b` that no double turn joins.
        fn pairs_ok(&self, b: usize) -> bool {
            let dist = distances_from(self.x, b);
            let reach: Vec<usize> = double_turn_targets(self.x, b).collect();
            (0..self.x.n()).all(|y| !(self.black[y] && dist[y] == 3) || reach.contains(&y))
        }
        fn go(&mut self) -> bool {
            self.nodes += 1;
            if self.nodes > SEARCH_BUDGET {
                return false;
            }
            let Some(v) = (0..self.x.n()).find(|&v| self.covered[v] == 0) else {
                return true;
            };
            let cands: Vec<usize> = self.closed(v).collect();
            for b in cands {
                if self.can_place(b) {
                    self.set(b, true);
                    if self.pairs_ok(b) && self.go() {
                        return true;
                    }
                    self.set(b, false);
                }
            }
            false
        }
    }
    let mut s = S {
        x,
        black: vec![false; x.n()],
        covered: vec![0; x.n()],
        nodes: 0,
    };
    if s.go() {
        Ok(s.black)
    } else {
        Err(s.nodes <= SEARCH_BUDGET)
    }
}

fn distances_from(x: &RotationGraph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; x.n()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for u in x.neighbors(v) {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

pub fn check_c(x: &RotationGraph, c: &BWColoring) -> Result<CStatus> {
    require_cubic(x)?;
    if c.black.len() != x.n() {
        return Err(Error::InvalidParams(format!("coloring has {} entries for {} vertices", c.black.len(), x.n())));
    }
    let blacks = |v: usize| x.neighbors(v).filter(|&u| c.black[u]).count();
    let c1 = (0..x.n()).filter(|&v| c.black[v]).all(|v| blacks(v) == 0);
    let c2 = (0..x.n()).filter(|&v| !c.black[v]).all(|v| blacks(v) == 1);
    let mut c3 = true;
    for v in (0..x.n()).filter(|&v| c.black[v]) {
        let dist = distances_from(x, v);
        let reach: Vec<usize> = double_turn_targets(x, v).collect();
        if (0..x.n()).any(|y| c.black[y] && dist[y] == 3 && !reach.contains(&y)) {
            c3 = false;
            break;
        }
    }
    Ok(CStatus { c1, c2, c3 })
}

/// Proper 2-coloring of `GC_{k,l}(X)` for bipartite 3-valent `X`: a vertex
/// is black when its cell is upward and its parent is white, or downward and
/// its parent is black.
pub fn gc_bipartition(x: &RotationGraph, k: i64, l: i64) -> Result<(GcGraph, Vec<bool>)> {
    require_cubic(x)?;
    let parent = match x.is_bipartite() {
        Bipartition::Coloring(c) => c,
        Bipartition::OddCycle(_) => return Err(Error::NotBipartite),
    };
    let g = gc_build(x, k, l)?;
    let color: Vec<bool> = g
        .provenance
        .iter()
        .map(|&(p, cell)| match cell {
            LatticeCell::Tri(t) => (t.orient == Orient::Up) != parent[p],
            LatticeCell::Sq(_) => unreachable!("3-valent construction"),
        })
        .collect();
    if let Some(e) = (0..g.graph.num_edges()).find(|&e| {
        let (a, b) = g.graph.edge_endpoints(e);
        color[a] == color[b]
    }) {
        return Err(Error::InconsistentOrientation(format!("edge {e} joins two vertices of one color")));
    }
    Ok((g, color))
}

/// Lower bounds for the multiplicities of 4 and 2 in `GC_{k,0}(X)` and
/// `GC_{k,k}(X)` when `X` satisfies the face condition.
pub fn thm_1_6_verify(x: &RotationGraph, k: usize) -> Result<Report> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be positive".into()));
    }
    if !check_f(x)? {
        return Err(Error::ConditionF("some face size is not divisible by 3".into()));
    }
    let (a, b) = (k.div_ceil(2), k / 2);
    let mut r = Report::new(format!("multiplicities of 4 and 2 for k = {k}"));
    for l in [0, k] {
        let m = multiplicities(&gc_spectrum(x, k as i64, l as i64, GROUP_TOL)?);
        r.push(format!("GC({k},{l}) mult(4) = {} ≥ {a}", m.mult4), m.mult4 as f64 - a as f64, 0.0);
        r.push(format!("GC({k},{l}) mult(2) = {} ≥ {b}", m.mult2), m.mult2 as f64 - b as f64, 0.0);
    }
    Ok(r)
}

fn keyed<T: Serialize + Copy>(vals: impl Iterator<Item = T>) -> BTreeMap<usize, T> {
    vals.enumerate().collect()
}

impl EdgeNumbering {
    /// `{"edge id": label}`.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&keyed(self.labels.iter().copied()))?)
    }
}

impl VertexNumbering {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&keyed(self.labels.iter().copied()))?)
    }
}

impl BWColoring {
    /// `{"vertex id": "black" | "white"}`.
    pub fn to_json(&self) -> Result<String> {
        let names = self.black.iter().map(|&b| if b { "black" } else { "white" });
        Ok(serde_json::to_string_pretty(&keyed(names))?)
    }

    pub fn count_black(&self) -> usize {
        self.black.iter().filter(|&&b| b).count()
    }
}
