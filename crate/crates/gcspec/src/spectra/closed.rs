//! Closed-form spectra of the `(k,0)`-clusters and the families of
//! invariant eigenvalues that extend to every `GC_{k,0}(X)`.

use super::torus::{d6_project, hex_torus_eigenvalue, square_torus_eigenvalue, torus_eigenfunction, Mode, Sign};
use super::Spectrum;
use crate::cluster::{cluster3, ClusterGraph};
use crate::error::{Error, Result};
use crate::lattice::{LatticeCell, Orient, Position, Pt};
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;

/// An eigenfunction label `(s, t, ±)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index {
    pub s: usize,
    pub t: usize,
    pub sign: Sign,
}

impl Index {
    fn new(s: usize, t: usize, sign: Sign) -> Index {
        Index { s, t, sign }
    }
}

/// Labels of the invariant (`u`) and alternating (`w`) eigenfunctions of
/// the triangular `(k,0)`-cluster, as indices into `T(3k)`.
pub fn cluster3_index_sets(k: usize) -> (Vec<Index>, Vec<Index>) {
    let big = 3 * k;
    let mut shared = Vec::new();
    for s in 1..2 * k {
        let lo = (2 * s).saturating_sub(big);
        for t in lo + 1..s {
            if 2 * t < s && (s + t) % 3 == 0 {
                for sign in Sign::BOTH {
                    shared.push(Index::new(s, t, sign));
                }
            }
        }
    }
    let mut u = shared.clone();
    let mut w = shared;
    for s in 0..k {
        u.push(Index::new(2 * s, s, Sign::Minus));
        if s >= 1 {
            w.push(Index::new(2 * s, s, Sign::Minus));
        }
    }
    for s in 0..2 * k {
        if big <= 2 * s {
            u.push(Index::new(s, 2 * s - big, Sign::Plus));
        }
        if big < 2 * s {
            w.push(Index::new(s, 2 * s - big, Sign::Plus));
        }
    }
    for s in (3..).step_by(3).take_while(|&s| 2 * s < big) {
        for sign in Sign::BOTH {
            u.push(Index::new(s, 0, sign));
        }
    }
    u.sort();
    w.sort();
    (u, w)
}

/// Sizes of the two index sets as polynomials in `j`, where `k = 3j + r`
/// with `r ∈ {2, 3, 4}`. Defined for `k ≥ 2`.
pub fn counting_polynomial(k: usize) -> Option<(f64, f64)> {
    if k < 2 {
        return None;
    }
    let j = ((k - 2) / 3) as f64;
    let q = 4.5 * j * j;
    Some(match (k - 2) % 3 {
        0 => (q + 7.5 * j + 3.0, q + 4.5 * j + 1.0),
        1 => (q + 10.5 * j + 6.0, q + 7.5 * j + 3.0),
        _ => (q + 13.5 * j + 10.0, q + 10.5 * j + 6.0),
    })
}

fn values3(k: usize, idx: &[Index]) -> Vec<f64> {
    idx.iter()
        .map(|i| hex_torus_eigenvalue(3 * k, i.s, i.t, i.sign).expect("indices in range"))
        .collect()
}

/// All `k²` eigenvalues of the triangular `(k,0)`-cluster.
pub fn cluster3_closed_spectrum(k: usize, tol: f64) -> Result<Spectrum> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be positive".into()));
    }
    let (u, w) = cluster3_index_sets(k);
    let mut v = values3(k, &u);
    v.extend(values3(k, &w));
    Ok(Spectrum::new(v, tol))
}

/// Labels `(s, t)` of the invariant and alternating eigenfunctions of the
/// square `(k,0)`-cluster.
pub fn cluster4_index_sets(k: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let u = (0..k).flat_map(|s| (0..=s).map(move |t| (s, t))).collect();
    let w = (0..k).flat_map(|s| (0..s).map(move |t| (s, t))).collect();
    (u, w)
}

/// All `k²` eigenvalues of the square `(k,0)`-cluster.
pub fn cluster4_closed_spectrum(k: usize, tol: f64) -> Result<Spectrum> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be positive".into()));
    }
    let (u, w) = cluster4_index_sets(k);
    let v = u
        .iter()
        .chain(&w)
        .map(|&(s, t)| square_torus_eigenvalue(k, s, t).expect("indices in range"))
        .collect();
    Ok(Spectrum::new(v, tol))
}

/// Eigenvalues of `D₃`-invariant eigenfunctions of the triangular
/// `(k,0)`-cluster, in three families.
pub fn d3_invariant_eigenvalues(k: usize) -> Vec<f64> {
    if k == 0 {
        return Vec::new();
    }
    let ev = |s: usize, t: usize, sign| hex_torus_eigenvalue(k, s % k, t % k, sign).expect("reduced indices");
    let third = k / 3;
    let mut out = Vec::new();
    for j in 0..k.div_ceil(3) {
        out.push(ev(j, k - j, Sign::Minus));
    }
    for j in 1..(2 * k).div_ceil(3).saturating_sub(third) {
        out.push(ev(third + j, k - third - j, Sign::Plus));
    }
    for s in 1..k {
        out.push(ev(s, 0, Sign::Plus));
    }
    out
}

/// `4 − 4cos(2πs/k)` for `0 ≤ s < k`, `2s ≠ k`.
pub fn d4_invariant_eigenvalues(k: usize) -> Vec<f64> {
    (0..k)
        .filter(|&s| 2 * s != k)
        .map(|s| 4.0 - 4.0 * (2.0 * PI * s as f64 / k as f64).cos())
        .collect()
}

/// Every `D₄`-invariant eigenvalue of the square `(k,0)`-cluster:
/// `4 − 2cos(2πs/k) − 2cos(2πt/k)` for `0 ≤ t ≤ s ≤ ⌊(k−1)/2⌋`. The
/// diagonal `s = t` gives [`d4_invariant_eigenvalues`].
pub fn d4_invariant_eigenvalues_all(k: usize) -> Vec<f64> {
    if k == 0 {
        return Vec::new();
    }
    let c = |s: usize| 2.0 * (2.0 * PI * s as f64 / k as f64).cos();
    let half = (k - 1) / 2;
    (0..=half).flat_map(|s| (0..=s).map(move |t| 4.0 - c(s) - c(t))).collect()
}

/// Largest distance from a grid point of `[0, 2r]` to the nearest invariant
/// eigenvalue: the three 3-valent families, or all `D₄`-invariant values.
pub fn thm_1_3_density_check(valence: usize, k: usize, grid_step: f64) -> Result<f64> {
    match valence {
        3 => covering_radius(&d3_invariant_eigenvalues(k), 6.0, grid_step),
        4 => covering_radius(&d4_invariant_eigenvalues_all(k), 8.0, grid_step),
        _ => Err(Error::InvalidParams(format!("valence {valence}"))),
    }
}

/// Largest distance from a grid point of `[0, top]` to the nearest of `vals`.
pub fn covering_radius(vals: &[f64], top: f64, grid_step: f64) -> Result<f64> {
    if !(grid_step > 0.0) || vals.is_empty() {
        return Err(Error::InvalidParams("grid step must be positive and k ≥ 1".into()));
    }
    let steps = (top / grid_step).round() as usize;
    let mut worst: f64 = 0.0;
    for i in 0..=steps {
        let x = (i as f64 * grid_step).min(top);
        let d = vals.iter().map(|v| (v - x).abs()).fold(f64::INFINITY, f64::min);
        worst = worst.max(d);
    }
    Ok(worst)
}

/// Torus vertex of `T(m)` corresponding to a cell of `△(m)`.
pub(crate) fn torus_vertex(m: usize, cell: &LatticeCell) -> usize {
    match cell {
        LatticeCell::Tri(t) => {
            let (a, b) = (t.a as usize, t.b as usize);
            match t.orient {
                Orient::Up => a * m + b,
                Orient::Down => m * m + (a - 1) * m + b,
            }
        }
        LatticeCell::Sq(_) => panic!("square cells have no hexagonal torus vertex"),
    }
}

/// Folds a scaled barycenter of `△(3k)` onto `△(k)` by reflecting across
/// the sides of `△(k)`.
pub fn fold_point(k: usize, p: Pt) -> Pt {
    let side = 3 * k as i64;
    let mut p = p;
    loop {
        p = if p.y < 0 {
            Pt::new(p.x + p.y, -p.y)
        } else if p.x < 0 {
            Pt::new(-p.x, p.x + p.y)
        } else if p.x + p.y > side {
            Pt::new(side - p.y, side - p.x)
        } else {
            return p;
        };
    }
}

/// Outcome of restricting an invariant eigenfunction of the `(3k,0)`-cluster
/// to the fold onto the `(k,0)`-cluster.
#[derive(Clone, Copy, Debug)]
pub struct FoldResult {
    pub lambda: f64,
    /// Largest spread of values within a fold fiber, relative to `‖u‖∞`.
    pub fiber_defect: f64,
    /// `‖Δg − λg‖∞ / ‖g‖∞` for the fiber-averaged function `g` on the
    /// `(k,0)`-cluster.
    pub residual: f64,
}

impl FoldResult {
    pub fn fiber_constant(&self) -> bool {
        self.fiber_defect <= 1e-9
    }
}

/// Builds `u±_{s,t}` on `T(3k)`, restricts it to `△(3k)` and folds it onto
/// `△(k)`. Returns `None` when `u±_{s,t}` vanishes.
pub fn folding_check(k: usize, s: usize, t: usize, sign: Sign) -> Result<Option<FoldResult>> {
    let big = 3 * k;
    let v = torus_eigenfunction(big, s, t, sign)?;
    let u = d6_project(big, &v.values, Mode::Invariant);
    let norm = u.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if norm <= 1e-9 {
        return Ok(None);
    }
    let large = cluster3(big as i64, 0)?;
    let small = cluster3(k as i64, 0)?;
    let mut fibers: HashMap<usize, Vec<Complex64>> = HashMap::new();
    for (cell, &p) in large.cells.iter().zip(&large.barycenters) {
        let q = fold_point(k, p);
        debug_assert!(!matches!(small.region.classify(q), Position::Outside));
        let c = small.index_of(q).expect("fold lands on a cell");
        fibers.entry(c).or_default().push(u[torus_vertex(big, cell)] / norm);
    }
    let mut defect: f64 = 0.0;
    let mut g = vec![Complex64::new(0.0, 0.0); small.len()];
    for (&c, vals) in &fibers {
        for z in vals {
            defect = defect.max((z - vals[0]).norm());
        }
        g[c] = vals.iter().sum::<Complex64>() / vals.len() as f64;
    }
    Ok(Some(FoldResult {
        lambda: v.lambda,
        fiber_defect: defect,
        residual: complex_residual(&small, &g, v.lambda),
    }))
}

fn complex_residual(c: &ClusterGraph, g: &[Complex64], lambda: f64) -> f64 {
    let gn = g.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if gn == 0.0 {
        return f64::INFINITY;
    }
    (0..c.len())
        .map(|x| {
            let lx = g[x] * c.degree(x) as f64 - c.adjacency[x].iter().map(|&y| g[y]).sum::<Complex64>();
            (lx - g[x] * lambda).norm()
        })
        .fold(0.0, f64::max)
        / gn
}
