//! Eigenfunctions of the hexagonal and square tori and their dihedral
//! projections.
//!
//! Vertices of the hexagonal torus `T(k)` are `(t, a, b)` with `t ∈ {0,1}`
//! and `a, b` mod `k`, numbered `t·k² + a·k + b` as in `hex_torus(k)`.

use super::Spectrum;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Invariant,
    Alternating,
}

fn check_index(what: &str, k: usize, s: usize, t: usize) -> Result<()> {
    if k == 0 || s >= k || t >= k {
        return Err(Error::OutOfRange(format!("{what}: need 0 ≤ s,t < {k}, got ({s},{t})")));
    }
    Ok(())
}

fn radicand(k: usize, s: usize, t: usize) -> f64 {
    let a = 2.0 * PI * s as f64 / k as f64;
    let b = 2.0 * PI * t as f64 / k as f64;
    (3.0 + 2.0 * a.cos() + 2.0 * b.cos() + 2.0 * (a - b).cos()).max(0.0)
}

/// `λ±_{s,t}(k) = 3 ± √(3 + 2cos(2πs/k) + 2cos(2πt/k) + 2cos(2π(s−t)/k))`.
pub fn hex_torus_eigenvalue(k: usize, s: usize, t: usize, sign: Sign) -> Result<f64> {
    check_index("hex torus", k, s, t)?;
    Ok(3.0 + sign.value() * radicand(k, s, t).sqrt())
}

/// `λ_{s,t}(2k) = 4 − 2cos(πs/k) − 2cos(πt/k)` for `0 ≤ s,t < 2k`.
pub fn square_torus_eigenvalue(k: usize, s: usize, t: usize) -> Result<f64> {
    check_index("square torus", 2 * k, s, t)?;
    Ok(4.0 - 2.0 * (PI * s as f64 / k as f64).cos() - 2.0 * (PI * t as f64 / k as f64).cos())
}

/// All `2k²` closed-form eigenvalues of `T(k)`.
pub fn hex_torus_spectrum(k: usize, tol: f64) -> Result<Spectrum> {
    let mut v = Vec::with_capacity(2 * k * k);
    for s in 0..k {
        for t in 0..k {
            for sign in Sign::BOTH {
                v.push(hex_torus_eigenvalue(k, s, t, sign)?);
            }
        }
    }
    Ok(Spectrum::new(v, tol))
}

/// The `n²` eigenvalues `4 − 2cos(2πs/n) − 2cos(2πt/n)` of the `n × n`
/// square torus.
pub fn square_torus_spectrum(n: usize, tol: f64) -> Spectrum {
    let c = |s: usize| 2.0 * (2.0 * PI * s as f64 / n as f64).cos();
    let v = (0..n).flat_map(|s| (0..n).map(move |t| 4.0 - c(s) - c(t))).collect();
    Spectrum::new(v, tol)
}

/// A plane-wave eigenfunction of `T(k)`.
#[derive(Clone, Debug)]
pub struct TorusEigenpair {
    pub k: usize,
    pub s: usize,
    pub t: usize,
    pub sign: Sign,
    pub lambda: f64,
    pub values: Vec<Complex64>,
}

/// `v±_{s,t}`: `e^{2πi(sa+tb)/k}` on type-0 vertices and a fixed multiple on
/// type-1 vertices. When `λ = 3` the two sublattices decouple and the
/// multiple is taken to be `∓1`.
pub fn torus_eigenfunction(k: usize, s: usize, t: usize, sign: Sign) -> Result<TorusEigenpair> {
    let lambda = hex_torus_eigenvalue(k, s, t, sign)?;
    let e = |x: usize| Complex64::from_polar(1.0, 2.0 * PI * x as f64 / k as f64);
    let c = if radicand(k, s, t) < 1e-12 {
        Complex64::new(-sign.value(), 0.0)
    } else {
        (Complex64::new(1.0, 0.0) + e(s) + e(t)) / (3.0 - lambda)
    };
    let mut values = vec![Complex64::new(0.0, 0.0); 2 * k * k];
    for a in 0..k {
        for b in 0..k {
            let z = e((s * a + t * b) % k);
            values[a * k + b] = z;
            values[k * k + a * k + b] = c * z;
        }
    }
    Ok(TorusEigenpair { k, s, t, sign, lambda, values })
}

/// The twelve symmetries of `T(k)` fixing the triangle `△(k)`, as vertex
/// permutations with their signs. Words are `rot^i ∘ long^a ∘ short^b`; the
/// sign counts only reflections in the long diagonal, since `short` swaps
/// `△(k)` with its mirror image across the cluster boundary.
/// For small `k` distinct words may give equal permutations.
pub fn d6_words(k: usize) -> Vec<(Vec<usize>, i8)> {
    let m = k as i64;
    let id = |t: i64, a: i64, b: i64| (t * m * m + a.rem_euclid(m) * m + b.rem_euclid(m)) as usize;
    let decode = |v: usize| {
        let v = v as i64;
        (v / (m * m), (v / m) % m, v % m)
    };
    let rot = |(t, a, b): (i64, i64, i64)| match t {
        0 => (0, m - a - b - 1, a),
        _ => (1, m - a - b - 2, a),
    };
    let long = |(t, a, b): (i64, i64, i64)| (t, b, a);
    let short = |(t, a, b): (i64, i64, i64)| (1 - t, m - b - 1, m - a - 1);
    let norm = |(t, a, b): (i64, i64, i64)| id(t, a, b);
    let n = 2 * k * k;
    let mut out = Vec::with_capacity(12);
    for i in 0..3 {
        for a in 0..2 {
            for b in 0..2 {
                let perm: Vec<usize> = (0..n)
                    .map(|v| {
                        let mut p = decode(v);
                        if b == 1 {
                            p = short(p);
                        }
                        if a == 1 {
                            p = long(p);
                        }
                        for _ in 0..i {
                            p = rot(p);
                        }
                        norm(p)
                    })
                    .collect();
                let sign = if a == 0 { 1 } else { -1 };
                out.push((perm, sign));
            }
        }
    }
    out
}

/// `Σ_σ σv` (invariant) or `Σ_σ sgn(σ) σv` (alternating), where
/// `(σv)(x) = v(σx)`.
pub fn d6_project(k: usize, v: &[Complex64], mode: Mode) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (perm, sign) in d6_words(k) {
        let w = match mode {
            Mode::Invariant => 1.0,
            Mode::Alternating => sign as f64,
        };
        for (x, o) in out.iter_mut().enumerate() {
            *o += v[perm[x]] * w;
        }
    }
    out
}

/// Sup norm of the projection of `v±_{s,t}`.
pub fn projection_norm(k: usize, s: usize, t: usize, sign: Sign, mode: Mode) -> Result<f64> {
    let v = torus_eigenfunction(k, s, t, sign)?;
    Ok(d6_project(k, &v.values, mode).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

fn in_u_list(k: usize, s: usize, t: usize, sign: Sign) -> bool {
    let plus = sign == Sign::Plus;
    let pair = |x: usize, y: usize| (s, t) == (x, y) || (s, t) == (y, x);
    for x in 1..k {
        if 3 * x < k && plus && pair(x, k - x) {
            return true;
        }
        if k < 3 * x && 3 * x < 2 * k && !plus && (s, t) == (x, k - x) {
            return true;
        }
    }
    for x in 0..k {
        let hit = if 3 * x < k {
            plus && pair(x, 2 * x)
        } else if k < 3 * x && 2 * x < k {
            !plus && pair(x, 2 * x)
        } else if k <= 2 * x && 3 * x < 2 * k {
            !plus && pair(x, 2 * x - k)
        } else if 2 * k < 3 * x {
            plus && pair(x, 2 * x - k)
        } else {
            false
        };
        if hit {
            return true;
        }
    }
    // The decoupled eigenvalue 3, where the sign label is arbitrary.
    k % 3 == 0 && pair(k / 3, 2 * k / 3)
}

/// Whether the projection of `v±_{s,t}` vanishes identically, decided from
/// the explicit index families.
pub fn vanishing_test(k: usize, s: usize, t: usize, sign: Sign, mode: Mode) -> Result<bool> {
    check_index("vanishing test", k, s, t)?;
    Ok(match mode {
        Mode::Invariant => in_u_list(k, s, t, sign),
        Mode::Alternating => s == 0 || t == 0 || s == t || in_u_list(k, s, t, sign),
    })
}
