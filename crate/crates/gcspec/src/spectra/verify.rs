//! Numeric checks of the eigenvalue bounds relating `GC_{k,l}(X)` to `X` and
//! to the `(k,0)`-cluster.

use super::eig::sym_eig;
use super::closed::folding_check;
use super::extend::base_cluster;
use super::torus::{projection_norm, vanishing_test, Mode, Sign};
use super::Spectrum;
use crate::error::{Error, Result};
use crate::gc::gc_build;
use crate::graphcore::{Bipartition, RotationGraph};
use crate::lattice::Valence;
use std::f64::consts::PI;
use std::fmt;

/// One inequality (or family of inequalities, reported at its worst case).
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub label: String,
    /// Right side minus left side for `≤`, left minus right for `≥`.
    pub slack: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, slack: f64, tol: f64) {
        self.checks.push(Check {
            label: label.into(),
            slack,
            pass: slack >= -tol,
        });
    }

    /// Adds a check that is either met or not, with no meaningful slack.
    pub fn push_bool(&mut self, label: impl Into<String>, ok: bool) {
        self.checks.push(Check {
            label: label.into(),
            slack: if ok { 0.0 } else { -1.0 },
            pass: ok,
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn min_slack(&self) -> f64 {
        self.checks.iter().map(|c| c.slack).fold(f64::INFINITY, f64::min)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            writeln!(f, "  {} {} (slack {:.3e})", if c.pass { "ok  " } else { "FAIL" }, c.label, c.slack)?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn valence_of(x: &RotationGraph) -> Result<Valence> {
    let d = x
        .regular_degree()
        .ok_or_else(|| Error::InvalidParams("seed graph is not regular".into()))?;
    Valence::from_degree(d).ok_or_else(|| Error::InvalidParams(format!("valence {d}")))
}

/// Laplacian spectrum of `GC_{k,l}(X)`.
pub fn gc_spectrum(x: &RotationGraph, k: i64, l: i64, tol: f64) -> Result<Spectrum> {
    let g = gc_build(x, k, l)?;
    sym_eig(&g.graph.laplacian(), tol)
}

fn contraction(valence: Valence, k: i64, l: i64) -> f64 {
    let (k, l) = (k as f64, l as f64);
    match valence {
        Valence::Three => 3.0 * k / (k * k + k * l + l * l),
        Valence::Four => 2.0 * k / (k * k + l * l),
    }
}

/// Lower bound for the top `|V(X)|` eigenvalues of `GC_{k,0}(X)`; `None`
/// for the 3-valent bound at `k = 1`, where it would claim `λ_max ≥ 6`.
pub fn top_bound(valence: Valence, k: i64) -> Option<f64> {
    let kf = k as f64;
    match valence {
        Valence::Three if k >= 2 => Some(3.0 + (5.0 + 4.0 * (2.0 * PI / kf).cos()).sqrt()),
        Valence::Three => None,
        Valence::Four if k % 2 == 0 => Some(4.0 + 4.0 * (2.0 * PI / kf).cos()),
        Valence::Four => Some(4.0 + 4.0 * (PI / kf).cos()),
    }
}

/// Comparison of the spectra of `X` and `GC_{k,l}(X)` from precomputed
/// spectra.
pub fn thm_1_2_checks(valence: Valence, bipartite: bool, x: &Spectrum, gc: &Spectrum, k: i64, l: i64, tol: f64) -> Report {
    let mut r = Report::new(format!("GC({k},{l}) against X: {} and {} eigenvalues", x.len(), gc.len()));
    let c = contraction(valence, k, l);
    let n = gc.len();
    let worst = |it: &mut dyn Iterator<Item = (usize, f64)>| it.fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
    let (i, s) = worst(&mut (0..x.len()).map(|i| (i, c * x.values[i] - gc.values[i])));
    r.push(format!("λ_i(GC) ≤ {c:.6}·λ_i(X) for all i (worst i={})", i + 1), s, tol);
    if valence == Valence::Three && bipartite {
        let (i, s) = worst(&mut (0..x.len()).map(|i| (i, gc.values[n - 1 - i] - (6.0 - c * x.values[i]))));
        r.push(format!("λ_(N−i+1)(GC) ≥ 6 − {c:.6}·λ_i(X) (worst i={})", i + 1), s, tol);
    }
    if l == 0 {
        if let Some(b) = top_bound(valence, k) {
            let (i, s) = worst(&mut (0..x.len()).map(|i| (i, gc.values[n - 1 - i] - b)));
            r.push(format!("top |V(X)| eigenvalues ≥ {b:.6} (worst i={})", i + 1), s, tol);
        }
    }
    r
}

/// Computes both spectra and checks the comparison with `X`.
pub fn verify_thm_1_2(x: &RotationGraph, k: i64, l: i64, tol: f64) -> Result<Report> {
    let valence = valence_of(x)?;
    let bipartite = matches!(x.is_bipartite(), Bipartition::Coloring(_));
    let xs = sym_eig(&x.laplacian(), 1e-10)?;
    let gs = gc_spectrum(x, k, l, 1e-10)?;
    Ok(thm_1_2_checks(valence, bipartite, &xs, &gs, k, l, tol))
}

/// `δ_j(k)`, 1-indexed, from its three ranges.
pub fn delta(valence: Valence, k: usize, j: usize) -> f64 {
    let (k, j) = (k as i64, j as i64);
    let r = valence.degree() as i64;
    if j <= k * k - r * k + r {
        0.0
    } else if j <= k * k - r {
        1.0
    } else {
        2.0
    }
}

/// Comparison of `GC_{k,0}(X)` with the `(k,0)`-cluster from a precomputed
/// spectrum of `GC_{k,0}(X)`.
pub fn thm_3_2_checks(valence: Valence, k: usize, gc: &Spectrum, tol: f64) -> Result<Report> {
    let c = base_cluster(valence, k)?;
    let nu = sym_eig(&c.adjacency_matrix(), 1e-10)?.values;
    let lam = sym_eig(&c.laplacian(), 1e-10)?.values;
    let r = valence.degree() as f64;
    let n = k * k;
    let big = gc.len();
    let g = &gc.values;
    let mut rep = Report::new(format!("GC({k},0) against the ({k},0)-cluster"));
    let mut worst = (f64::INFINITY, String::new());
    let note = |s: f64, label: String, w: &mut (f64, String)| {
        if s < w.0 {
            *w = (s, label);
        }
    };
    for j in 1..=n {
        note(r - nu[n - j] - g[j - 1], format!("j={j}"), &mut worst);
    }
    rep.push(format!("λ_j(GC) ≤ {r} − ν_(k²−j+1), worst {}", worst.1), worst.0, tol);
    worst = (f64::INFINITY, String::new());
    for j in 1..=n {
        note(g[big - j] - (r - nu[j - 1]), format!("j={j}"), &mut worst);
    }
    rep.push(format!("λ_(N−j+1)(GC) ≥ {r} − ν_j, worst {}", worst.1), worst.0, tol);
    worst = (f64::INFINITY, String::new());
    for t in 1..=n {
        for i in 1..=t {
            let s = lam[t - 1] + delta(valence, k, n - t + i) - g[i - 1];
            note(s, format!("i={i} t={t}"), &mut worst);
        }
    }
    rep.push(format!("λ_i(GC) ≤ λ_t(k) + δ_(k²−t+i), worst {}", worst.1), worst.0, tol);
    worst = (f64::INFINITY, String::new());
    for s in 1..=n {
        for j in 1..=s {
            let sl = g[big - j] - (lam[n - s] + delta(valence, k, 1 + s - j));
            note(sl, format!("j={j} s={s}"), &mut worst);
        }
    }
    rep.push(format!("λ_(N−j+1)(GC) ≥ λ_(k²−s+1)(k) + δ_(1+s−j), worst {}", worst.1), worst.0, tol);
    Ok(rep)
}

pub fn verify_thm_3_2_3_3(x: &RotationGraph, k: usize, tol: f64) -> Result<Report> {
    let valence = valence_of(x)?;
    let gs = gc_spectrum(x, k as i64, 0, 1e-10)?;
    thm_3_2_checks(valence, k, &gs, tol)
}

/// Multiplicities of 2 and 4 with their guard gaps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Multiplicities {
    pub mult2: usize,
    pub mult4: usize,
    pub gap2: f64,
    pub gap4: f64,
}

impl Multiplicities {
    pub fn guarded(&self, min_gap: f64) -> bool {
        self.gap2 >= min_gap && self.gap4 >= min_gap
    }
}

pub fn multiplicities(s: &Spectrum) -> Multiplicities {
    Multiplicities {
        mult2: s.multiplicity(2.0),
        mult4: s.multiplicity(4.0),
        gap2: s.guard_gap(2.0),
        gap4: s.guard_gap(4.0),
    }
}

/// Lower bounds for the multiplicities of 4 and 2 in `GC_{2k,0}(X)`,
/// 3-valent `X`.
pub fn thm_1_4_checks(k: usize, m: &Multiplicities) -> Report {
    let mut r = Report::new(format!("multiplicities in GC({},0)", 2 * k));
    let (a, b) = (k.div_ceil(2), k / 2);
    r.push(format!("mult(4) = {} ≥ {a}", m.mult4), m.mult4 as f64 - a as f64, 0.0);
    r.push(format!("mult(2) = {} ≥ {b}", m.mult2), m.mult2 as f64 - b as f64, 0.0);
    r
}

/// Lower bound for the multiplicity of 4 in `GC_{2k,0}(X)`, 4-valent `X`.
pub fn thm_1_5_checks(k: usize, m: &Multiplicities) -> Report {
    let mut r = Report::new(format!("multiplicity of 4 in GC({},0)", 2 * k));
    let a = k.saturating_sub(1).div_ceil(2);
    r.push(format!("mult(4) = {} ≥ {a}", m.mult4), m.mult4 as f64 - a as f64, 0.0);
    r
}

pub fn verify_thm_1_4(x: &RotationGraph, k: usize) -> Result<Report> {
    if valence_of(x)? != Valence::Three {
        return Err(Error::InvalidParams("needs a 3-valent seed".into()));
    }
    let s = gc_spectrum(x, 2 * k as i64, 0, super::GROUP_TOL)?;
    Ok(thm_1_4_checks(k, &multiplicities(&s)))
}

pub fn verify_thm_1_5(x: &RotationGraph, k: usize) -> Result<Report> {
    if valence_of(x)? != Valence::Four {
        return Err(Error::InvalidParams("needs a 4-valent seed".into()));
    }
    let s = gc_spectrum(x, 2 * k as i64, 0, super::GROUP_TOL)?;
    Ok(thm_1_5_checks(k, &multiplicities(&s)))
}

/// Largest deviation of the spectrum from symmetry about 3.
pub fn bipartite_symmetry_defect(s: &Spectrum) -> f64 {
    let n = s.len();
    (0..n).map(|i| (s.values[i] - (6.0 - s.values[n - 1 - i])).abs()).fold(0.0, f64::max)
}

/// The `m`-th smallest and `m`-th largest eigenvalue of `GC_{k,0}(X)` for
/// `m = ⌊k^{3/2}⌋`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProxyRow {
    pub k: usize,
    pub m: usize,
    pub low: f64,
    pub high: f64,
}

pub fn thm_1_1_proxy(x: &RotationGraph, ks: &[usize]) -> Result<Vec<ProxyRow>> {
    ks.iter()
        .map(|&k| {
            let s = gc_spectrum(x, k as i64, 0, 1e-10)?;
            let m = ((k * k * k) as f64).sqrt().floor() as usize;
            let m = m.clamp(1, s.len());
            Ok(ProxyRow {
                k,
                m,
                low: s.values[m - 1],
                high: s.values[s.len() - m],
            })
        })
        .collect()
}

/// Projection norms at or below this count as vanishing.
pub const VANISH_TOL: f64 = 1e-9;

/// Compares the explicit vanishing lists with numeric projection norms for
/// every index pair, sign and mode on `T(k)`.
pub fn verify_lemma_4_3(k: usize) -> Result<Report> {
    let mut r = Report::new(format!("vanishing lists on T({k})"));
    for mode in [Mode::Invariant, Mode::Alternating] {
        let (mut total, mut bad) = (0, Vec::new());
        let (mut zero_max, mut live_min): (f64, f64) = (0.0, f64::INFINITY);
        for s in 0..k {
            for t in 0..k {
                for sign in Sign::BOTH {
                    let listed = vanishing_test(k, s, t, sign, mode)?;
                    let norm = projection_norm(k, s, t, sign, mode)?;
                    if norm <= VANISH_TOL {
                        zero_max = zero_max.max(norm);
                    } else {
                        live_min = live_min.min(norm);
                    }
                    total += 1;
                    if listed != (norm <= VANISH_TOL) {
                        bad.push((s, t, sign));
                    }
                }
            }
        }
        r.push_bool(
            format!(
                "{mode:?}: list agrees on {}/{total} indices (largest vanishing norm {zero_max:.1e}, smallest other {live_min:.3e}){}",
                total - bad.len(),
                if bad.is_empty() { String::new() } else { format!(", first mismatch {:?}", bad[0]) }
            ),
            bad.is_empty(),
        );
    }
    Ok(r)
}

/// For every nonvanishing invariant `u±_{s,t}` on `T(3k)`, checks that it
/// folds onto the `(k,0)`-cluster exactly when `3 | s+t`, and that folded
/// functions are eigenfunctions there.
pub fn verify_lemma_4_4(k: usize) -> Result<Report> {
    let mut r = Report::new(format!("folding T({}) onto the ({k},0)-cluster", 3 * k));
    let (mut total, mut bad) = (0, Vec::new());
    let mut worst_residual: f64 = 0.0;
    for s in 0..3 * k {
        for t in 0..3 * k {
            for sign in Sign::BOTH {
                if let Some(f) = folding_check(k, s, t, sign)? {
                    total += 1;
                    if f.fiber_constant() != ((s + t) % 3 == 0) {
                        bad.push((s, t, sign));
                    }
                    if f.fiber_constant() {
                        worst_residual = worst_residual.max(f.residual);
                    }
                }
            }
        }
    }
    r.push_bool(
        format!(
            "fiber-constant iff 3 | s+t on {}/{total} nonvanishing functions{}",
            total - bad.len(),
            if bad.is_empty() { String::new() } else { format!(", first mismatch {:?}", bad[0]) }
        ),
        bad.is_empty(),
    );
    r.push(format!("folded residual {worst_residual:.1e} ≤ 1e-9"), 1e-9 - worst_residual, 0.0);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::build_named;

    #[test]
    fn delta_matches_degree_deficits() {
        for valence in [Valence::Three, Valence::Four] {
            for k in 2..=7 {
                let c = base_cluster(valence, k).unwrap();
                let r = valence.degree();
                let mut def: Vec<f64> = (0..c.len()).map(|x| (r - c.degree(x)) as f64).collect();
                def.sort_by(f64::total_cmp);
                let d: Vec<f64> = (1..=k * k).map(|j| delta(valence, k, j)).collect();
                assert_eq!(d, def, "{valence:?} k={k}");
            }
        }
    }

    #[test]
    fn lemma_reports() {
        for k in 1..=4 {
            let r = verify_lemma_4_3(k).unwrap();
            assert!(r.passed(), "{r}");
        }
        let r = verify_lemma_4_4(2).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn cube_examples() {
        let x = build_named("cube").unwrap();
        let r = verify_thm_1_2(&x, 2, 0, 1e-8).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 3);
        let g = gc_spectrum(&x, 2, 0, 1e-10).unwrap();
        assert!(g.values[1] <= 3.0 + 1e-9);
        assert!(*g.values.last().unwrap() >= 4.0 - 1e-9);
        assert!(bipartite_symmetry_defect(&g) < 1e-8);
    }

    #[test]
    fn octahedron_top_bound() {
        assert_eq!(top_bound(Valence::Four, 3), Some(6.0));
        assert_eq!(top_bound(Valence::Three, 1), None);
        let r = verify_thm_1_2(&build_named("octahedron").unwrap(), 3, 0, 1e-8).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn cluster_comparisons() {
        let r = verify_thm_3_2_3_3(&build_named("tetrahedron").unwrap(), 3, 1e-8).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_thm_3_2_3_3(&build_named("octahedron").unwrap(), 2, 1e-8).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_thm_3_2_3_3(&build_named("cube").unwrap(), 1, 1e-8).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn multiplicity_bounds() {
        let r = verify_thm_1_4(&build_named("dodecahedron").unwrap(), 3).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_thm_1_5(&build_named("octahedron").unwrap(), 2).unwrap();
        assert!(r.passed(), "{r}");
        assert!(verify_thm_1_5(&build_named("cube").unwrap(), 2).is_err());
    }

    #[test]
    fn report_display() {
        let mut r = Report::new("t");
        r.push("a", 0.5, 0.0);
        r.push("b", -0.5, 0.0);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.min_slack(), -0.5);
        assert!(r.to_string().ends_with("FAIL"));
    }
}
