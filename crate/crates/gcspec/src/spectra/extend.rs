//! Dihedrally symmetric eigenfunctions of a `(k,0)`-cluster and their
//! extension to `GC_{k,0}(X)`.

use super::closed::torus_vertex;
use super::eig::sym_eig_vectors;
use super::torus::{d6_project, torus_eigenfunction, Mode, Sign};
use crate::cluster::{cluster3, cluster4, ClusterGraph, SidePair};
use crate::error::{Error, Result};
use crate::gc::GcGraph;
use crate::lattice::{LatticeCell, Valence};
use std::f64::consts::PI;

/// A real eigenfunction of the `(k,0)`-cluster, indexed like the cluster's
/// cells.
#[derive(Clone, Debug)]
pub struct InvariantEigenfunction {
    pub valence: Valence,
    pub k: usize,
    pub mode: Mode,
    pub eigenvalue: f64,
    pub values: Vec<f64>,
}

/// The `(k,0)`-cluster of the given valence.
pub(crate) fn base_cluster(valence: Valence, k: usize) -> Result<ClusterGraph> {
    match valence {
        Valence::Three => cluster3(k as i64, 0),
        Valence::Four => cluster4(k as i64, 0, SidePair::EastWest),
    }
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn residual(c: &ClusterGraph, f: &[f64], lambda: f64) -> f64 {
    let lf = c.laplacian().mul_vec(f);
    let r = lf.iter().zip(f).map(|(a, b)| (a - lambda * b).abs()).fold(0.0, f64::max);
    r / sup(f).max(f64::MIN_POSITIVE)
}

impl InvariantEigenfunction {
    pub fn constant(valence: Valence, k: usize) -> Result<InvariantEigenfunction> {
        let n = base_cluster(valence, k)?.len();
        Ok(InvariantEigenfunction {
            valence,
            k,
            mode: Mode::Invariant,
            eigenvalue: 0.0,
            values: vec![1.0; n],
        })
    }

    /// Restriction of `u±_{s,t}` from `T(k)` to the triangular cluster; the
    /// real or imaginary part, whichever is larger.
    pub fn from_torus(k: usize, s: usize, t: usize, sign: Sign) -> Result<InvariantEigenfunction> {
        let v = torus_eigenfunction(k, s, t, sign)?;
        let u = d6_project(k, &v.values, Mode::Invariant);
        let c = cluster3(k as i64, 0)?;
        let z: Vec<_> = c.cells.iter().map(|cell| u[torus_vertex(k, cell)]).collect();
        let re: Vec<f64> = z.iter().map(|z| z.re).collect();
        let im: Vec<f64> = z.iter().map(|z| z.im).collect();
        let mut values = if sup(&re) >= sup(&im) { re } else { im };
        let m = sup(&values);
        if m <= 1e-9 {
            return Err(Error::InvalidParams(format!("u_({s},{t}) vanishes for k = {k}")));
        }
        values.iter_mut().for_each(|x| *x /= m);
        Ok(InvariantEigenfunction {
            valence: Valence::Three,
            k,
            mode: Mode::Invariant,
            eigenvalue: v.lambda,
            values,
        })
    }

    /// `φ_s(x)φ_t(y) + φ_t(x)φ_s(y)` on the square cluster, with
    /// `φ_s(x) = cos(2πs(x+½)/k)`; eigenvalue `4 − 2cos(2πs/k) − 2cos(2πt/k)`.
    pub fn square(k: usize, s: usize, t: usize) -> Result<InvariantEigenfunction> {
        if s >= k || t >= k || 2 * s == k || 2 * t == k {
            return Err(Error::OutOfRange(format!("need 0 ≤ s,t < {k}, 2s,2t ≠ {k}; got ({s},{t})")));
        }
        let c = cluster4(k as i64, 0, SidePair::EastWest)?;
        let phi = |s: usize, x: i64| (2.0 * PI * s as f64 * (x as f64 + 0.5) / k as f64).cos();
        let values = c
            .cells
            .iter()
            .map(|cell| match cell {
                LatticeCell::Sq(q) => phi(s, q.a) * phi(t, q.b) + phi(t, q.a) * phi(s, q.b),
                LatticeCell::Tri(_) => unreachable!("square cluster"),
            })
            .collect();
        let c = |s: usize| 2.0 * (2.0 * PI * s as f64 / k as f64).cos();
        Ok(InvariantEigenfunction {
            valence: Valence::Four,
            k,
            mode: Mode::Invariant,
            eigenvalue: 4.0 - c(s) - c(t),
            values,
        })
    }

    /// The diagonal case `s = t`, eigenvalue `4 − 4cos(2πs/k)`.
    pub fn square_diagonal(k: usize, s: usize) -> Result<InvariantEigenfunction> {
        InvariantEigenfunction::square(k, s, s)
    }

    /// `‖Δu − λu‖∞ / ‖u‖∞` on the cluster.
    pub fn residual(&self) -> Result<f64> {
        let c = base_cluster(self.valence, self.k)?;
        Ok(residual(&c, &self.values, self.eigenvalue))
    }

    /// Largest violation of `u(σx) = u(x)` (resp. `sgn(σ)u(x)`).
    pub fn symmetry_defect(&self) -> Result<f64> {
        let c = base_cluster(self.valence, self.k)?;
        let mut worst: f64 = 0.0;
        for (perm, sign) in c.dihedral_group()? {
            let w = match self.mode {
                Mode::Invariant => 1.0,
                Mode::Alternating => sign as f64,
            };
            for (x, &px) in perm.iter().enumerate() {
                worst = worst.max((self.values[px] - w * self.values[x]).abs());
            }
        }
        Ok(worst / sup(&self.values).max(f64::MIN_POSITIVE))
    }
}

/// An orthonormal eigenbasis of the invariant (resp. alternating) functions
/// on the `(k,0)`-cluster, found by compressing the Laplacian onto the
/// symmetrized orbit indicators.
pub fn invariant_eigenfunctions(valence: Valence, k: usize, mode: Mode, tol: f64) -> Result<Vec<InvariantEigenfunction>> {
    let c = base_cluster(valence, k)?;
    let group = c.dihedral_group()?;
    let n = c.len();
    let mut seen = vec![false; n];
    let mut basis = Vec::new();
    for r in 0..n {
        if seen[r] {
            continue;
        }
        let mut b = vec![0.0; n];
        for (perm, sign) in &group {
            seen[perm[r]] = true;
            let w = match mode {
                Mode::Invariant => 1.0,
                Mode::Alternating => *sign as f64,
            };
            // (P e_r)(x) = Σ_σ w(σ) [σx = r]; σx = r iff x = σ⁻¹r.
            let x = perm.iter().position(|&p| p == r).expect("permutation");
            b[x] += w;
        }
        let norm: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            b.iter_mut().for_each(|x| *x /= norm);
            basis.push(b);
        }
    }
    let small = c.laplacian().compress(&basis);
    let (spec, vecs) = sym_eig_vectors(&small, tol)?;
    Ok(spec
        .values
        .iter()
        .zip(vecs)
        .map(|(&eigenvalue, y)| {
            let mut values = vec![0.0; n];
            for (coef, b) in y.iter().zip(&basis) {
                for (v, bx) in values.iter_mut().zip(b) {
                    *v += coef * bx;
                }
            }
            InvariantEigenfunction {
                valence,
                k,
                mode,
                eigenvalue,
                values,
            }
        })
        .collect())
}

/// Copies `u` into every cluster of `gc = GC_{k,0}(X)`. Fails when `u` is
/// not invariant, or when the copies do not glue to an eigenfunction.
pub fn extend_cluster_eigenfunction(gc: &GcGraph, u: &InvariantEigenfunction, tol: f64) -> Result<Vec<f64>> {
    if gc.valence != u.valence || gc.params != (u.k as i64, 0) {
        return Err(Error::InvalidParams(format!(
            "eigenfunction of the ({},0)-cluster does not fit GC{:?}",
            u.k, gc.params
        )));
    }
    if u.mode != Mode::Invariant {
        return Err(Error::NotInvariant("only invariant eigenfunctions extend by copying".into()));
    }
    let defect = u.symmetry_defect()?;
    if defect > tol {
        return Err(Error::NotInvariant(format!("symmetry defect {defect:e}")));
    }
    let c = base_cluster(u.valence, u.k)?;
    let f: Vec<f64> = gc
        .provenance
        .iter()
        .map(|(_, cell)| {
            c.index_of(cell.scaled_barycenter())
                .map(|i| u.values[i])
                .ok_or_else(|| Error::Malformed("vertex cell missing from the cluster".into()))
        })
        .collect::<Result<_>>()?;
    let g = &gc.graph;
    let r = (0..g.n())
        .map(|x| {
            let lx = g.degree(x) as f64 * f[x] - g.neighbors(x).map(|y| f[y]).sum::<f64>();
            (lx - u.eigenvalue * f[x]).abs()
        })
        .fold(0.0, f64::max)
        / sup(&f).max(f64::MIN_POSITIVE);
    if r > tol {
        return Err(Error::NotInvariant(format!("boundary mismatch, residual {r:e}")));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gc::gc_build;
    use crate::graphcore::build_named;
    use crate::spectra::{d3_invariant_eigenvalues, d4_invariant_eigenvalues_all};

    #[test]
    fn constant_extends() {
        let x = build_named("cube").unwrap();
        let gc = gc_build(&x, 3, 0).unwrap();
        let u = InvariantEigenfunction::constant(Valence::Three, 3).unwrap();
        let f = extend_cluster_eigenfunction(&gc, &u, 1e-8).unwrap();
        assert!(f.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn eigenvalue_four_on_tetrahedron() {
        let x = build_named("tetrahedron").unwrap();
        let gc = gc_build(&x, 2, 0).unwrap();
        let fams = invariant_eigenfunctions(Valence::Three, 2, Mode::Invariant, 1e-10).unwrap();
        let u = fams.iter().find(|u| (u.eigenvalue - 4.0).abs() < 1e-9).expect("λ = 4 invariant");
        assert!(u.residual().unwrap() < 1e-9);
        let f = extend_cluster_eigenfunction(&gc, u, 1e-8).unwrap();
        assert_eq!(f.len(), 16);
    }

    #[test]
    fn square_diagonal_on_octahedron() {
        let x = build_named("octahedron").unwrap();
        let gc = gc_build(&x, 4, 0).unwrap();
        let u = InvariantEigenfunction::square_diagonal(4, 1).unwrap();
        assert!((u.eigenvalue - 4.0).abs() < 1e-12);
        assert!(u.residual().unwrap() < 1e-12);
        assert!(u.symmetry_defect().unwrap() < 1e-12);
        extend_cluster_eigenfunction(&gc, &u, 1e-8).unwrap();
        assert!(InvariantEigenfunction::square_diagonal(4, 2).is_err());
        let gc = gc_build(&x, 7, 0).unwrap();
        for s in 0..7 {
            for t in 0..7 {
                let u = InvariantEigenfunction::square(7, s, t).unwrap();
                assert!(u.residual().unwrap() < 1e-10);
                extend_cluster_eigenfunction(&gc, &u, 1e-8).unwrap();
            }
        }
    }

    #[test]
    fn torus_restrictions_extend_to_every_seed() {
        for k in 2..=5 {
            for seed in ["tetrahedron", "cube", "dodecahedron"] {
                let gc = gc_build(&build_named(seed).unwrap(), k as i64, 0).unwrap();
                for s in 1..k {
                    let u = InvariantEigenfunction::from_torus(k, s, 0, Sign::Plus).unwrap();
                    assert!(u.residual().unwrap() < 1e-9);
                    extend_cluster_eigenfunction(&gc, &u, 1e-8).unwrap();
                }
            }
        }
    }

    #[test]
    fn non_invariant_rejected() {
        let x = build_named("tetrahedron").unwrap();
        let gc = gc_build(&x, 5, 0).unwrap();
        assert!(invariant_eigenfunctions(Valence::Three, 3, Mode::Alternating, 1e-10).unwrap().is_empty());
        let alt = invariant_eigenfunctions(Valence::Three, 5, Mode::Alternating, 1e-10).unwrap();
        assert!(!alt.is_empty());
        assert!(matches!(extend_cluster_eigenfunction(&gc, &alt[0], 1e-8), Err(Error::NotInvariant(_))));
        let mut skew = InvariantEigenfunction::constant(Valence::Three, 5).unwrap();
        skew.values[0] = 2.0;
        assert!(matches!(extend_cluster_eigenfunction(&gc, &skew, 1e-8), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn symmetric_bases_are_eigenfunctions() {
        for k in 1..=6 {
            for valence in [Valence::Three, Valence::Four] {
                for mode in [Mode::Invariant, Mode::Alternating] {
                    for u in invariant_eigenfunctions(valence, k, mode, 1e-10).unwrap() {
                        assert!(u.residual().unwrap() < 1e-8);
                        assert!(u.symmetry_defect().unwrap() < 1e-8);
                    }
                }
            }
            // The listed families are among the numerically found invariant eigenvalues.
            let inv: Vec<f64> = invariant_eigenfunctions(Valence::Three, k, Mode::Invariant, 1e-10)
                .unwrap()
                .iter()
                .map(|u| u.eigenvalue)
                .collect();
            for x in d3_invariant_eigenvalues(k) {
                assert!(inv.iter().any(|y| (x - y).abs() < 1e-9), "k={k} {x}");
            }
            let inv: Vec<f64> = invariant_eigenfunctions(Valence::Four, k, Mode::Invariant, 1e-10)
                .unwrap()
                .iter()
                .map(|u| u.eigenvalue)
                .collect();
            // For squares the full family is every invariant eigenvalue.
            let mut all = d4_invariant_eigenvalues_all(k);
            all.sort_by(f64::total_cmp);
            assert_eq!(all.len(), inv.len());
            for (x, y) in all.iter().zip(&inv) {
                assert!((x - y).abs() < 1e-9, "k={k} {x} {y}");
            }
        }
    }
}
