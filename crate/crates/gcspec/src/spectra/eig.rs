//! Dense symmetric eigensolver: Householder reduction to tridiagonal form
//! followed by the implicit QL iteration (after EISPACK `tred2`/`tql2`).

use super::Spectrum;
use crate::error::{Error, Result};
use crate::graphcore::SymMatrix;

/// Reduces `v` (overwritten) to tridiagonal form. Returns the diagonal `d`
/// and subdiagonal `e` (with `e[0] = 0`). With `accumulate`, `v` holds the
/// orthogonal transformation on return.
fn tridiagonalize(v: &mut SymMatrix, accumulate: bool) -> (Vec<f64>, Vec<f64>) {
    let n = v.n();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    if n == 0 {
        return (d, e);
    }
    let a = v.data_mut();
    let at = |i: usize, j: usize| j * n + i;
    for j in 0..n {
        d[j] = a[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for x in &d[..i] {
            scale += x.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = a[at(i - 1, j)];
                a[at(i, j)] = 0.0;
                a[at(j, i)] = 0.0;
            }
        } else {
            for x in &mut d[..i] {
                *x /= scale;
                h += *x * *x;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for x in &mut e[..i] {
                *x = 0.0;
            }
            for j in 0..i {
                f = d[j];
                a[at(j, i)] = f;
                g = e[j] + a[at(j, j)] * f;
                let col = &a[j * n..j * n + i];
                for k in j + 1..i {
                    g += col[k] * d[k];
                    e[k] += col[k] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                let col = &mut a[j * n..j * n + i];
                for k in j..i {
                    col[k] -= f * e[k] + g * d[k];
                }
                d[j] = a[at(i - 1, j)];
                a[at(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }
    if !accumulate {
        for (j, x) in d.iter_mut().enumerate() {
            *x = a[at(j, j)];
        }
        e[0] = 0.0;
        return (d, e);
    }
    for i in 0..n - 1 {
        a[at(n - 1, i)] = a[at(i, i)];
        a[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = a[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += a[at(k, i + 1)] * a[at(k, j)];
                }
                for k in 0..=i {
                    a[at(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            a[at(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = a[at(n - 1, j)];
        a[at(n - 1, j)] = 0.0;
    }
    a[at(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
    (d, e)
}

/// Implicit QL on the tridiagonal `(d, e)`; rotations are applied to the
/// columns of `v` when given. Eigenvalues are left unsorted in `d`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], mut v: Option<&mut SymMatrix>) {
    let n = d.len();
    if n == 0 {
        return;
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            for _ in 0..200 {
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for x in &mut d[l + 2..n] {
                    *x -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(v) = v.as_deref_mut() {
                        let nn = v.n();
                        let data = v.data_mut();
                        let (lo, hi) = data.split_at_mut((i + 1) * nn);
                        let ci = &mut lo[i * nn..];
                        let ci1 = &mut hi[..nn];
                        for k in 0..nn {
                            let t = ci1[k];
                            ci1[k] = s * ci[k] + c * t;
                            ci[k] = c * ci[k] - s * t;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

fn check_symmetric(m: &SymMatrix, tol: f64) -> Result<()> {
    let scale = m.norm_inf().max(1.0);
    match m.asymmetry(tol * scale) {
        Some((row, col)) => Err(Error::NotSymmetric { row, col }),
        None => Ok(()),
    }
}

/// Eigenvalues of a symmetric matrix, grouped with tolerance `tol`.
pub fn sym_eig(m: &SymMatrix, tol: f64) -> Result<Spectrum> {
    check_symmetric(m, tol)?;
    let mut v = m.clone();
    let (mut d, mut e) = tridiagonalize(&mut v, false);
    tridiagonal_ql(&mut d, &mut e, None);
    Ok(Spectrum::new(d, tol))
}

/// Eigenvalues with orthonormal eigenvectors; `vectors[i]` belongs to the
/// `i`-th smallest eigenvalue.
pub fn sym_eig_vectors(m: &SymMatrix, tol: f64) -> Result<(Spectrum, Vec<Vec<f64>>)> {
    check_symmetric(m, tol)?;
    let mut v = m.clone();
    let (mut d, mut e) = tridiagonalize(&mut v, true);
    tridiagonal_ql(&mut d, &mut e, Some(&mut v));
    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let vectors = order.iter().map(|&i| v.column(i).to_vec()).collect();
    Ok((Spectrum::new(d, tol), vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::build_named;

    /// Cyclic Jacobi rotations; slow but independent of the QL path.
    fn jacobi(m: &SymMatrix) -> Vec<f64> {
        let n = m.n();
        let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect();
        for _ in 0..100 {
            let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
            if off < 1e-30 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if a[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (a[k][p], a[k][q]);
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[p][k], a[q][k]);
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut d: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
        d.sort_by(f64::total_cmp);
        d
    }

    #[test]
    fn two_by_two() {
        let m = SymMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]);
        let s = sym_eig(&m, 1e-10).unwrap();
        assert!((s.values[0]).abs() < 1e-14 && (s.values[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn cube_laplacian() {
        // (x)(x−2)³(x−4)³(x−6) by hand from the hypercube structure.
        let s = sym_eig(&build_named("cube").unwrap().laplacian(), 1e-10).unwrap();
        let want = [0.0, 2.0, 2.0, 2.0, 4.0, 4.0, 4.0, 6.0];
        for (a, b) in s.values.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn agrees_with_jacobi_and_vectors_are_eigenvectors() {
        for name in ["dodecahedron", "hex_torus(3)", "octahedron"] {
            let m = build_named(name).unwrap().laplacian();
            let (s, vecs) = sym_eig_vectors(&m, 1e-10).unwrap();
            let j = jacobi(&m);
            for (a, b) in s.values.iter().zip(&j) {
                assert!((a - b).abs() < 1e-10, "{name}: {a} vs {b}");
            }
            let plain = sym_eig(&m, 1e-10).unwrap();
            for (a, b) in s.values.iter().zip(&plain.values) {
                assert!((a - b).abs() < 1e-10);
            }
            for (lam, v) in s.values.iter().zip(&vecs) {
                let mv = m.mul_vec(v);
                let r = mv.iter().zip(v).map(|(x, y)| (x - lam * y).abs()).fold(0.0, f64::max);
                assert!(r < 1e-10);
                let norm: f64 = v.iter().map(|x| x * x).sum();
                assert!((norm - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rejects_asymmetric() {
        let m = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(matches!(sym_eig(&m, 1e-10), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn trivial_sizes() {
        assert!(sym_eig(&SymMatrix::zeros(0), 1e-9).unwrap().values.is_empty());
        assert_eq!(sym_eig(&SymMatrix::identity(1), 1e-9).unwrap().values, vec![1.0]);
    }
}
