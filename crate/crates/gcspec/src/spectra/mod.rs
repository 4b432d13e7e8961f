//! Laplacian spectra: a dense eigensolver, multiplicity grouping, closed-form
//! torus and cluster spectra, and checks of the eigenvalue bounds for
//! Goldberg-Coxeter graphs.

mod closed;
mod eig;
mod extend;
mod torus;
mod verify;

pub use closed::{
    cluster3_closed_spectrum, cluster3_index_sets, cluster4_closed_spectrum, cluster4_index_sets,
    counting_polynomial, covering_radius, d3_invariant_eigenvalues, d4_invariant_eigenvalues,
    d4_invariant_eigenvalues_all, fold_point,
    folding_check, thm_1_3_density_check, FoldResult, Index,
};
pub use eig::{sym_eig, sym_eig_vectors};
pub use extend::{extend_cluster_eigenfunction, invariant_eigenfunctions, InvariantEigenfunction};
pub use torus::{
    d6_project, d6_words, hex_torus_eigenvalue, hex_torus_spectrum, projection_norm,
    square_torus_eigenvalue, square_torus_spectrum, torus_eigenfunction, vanishing_test, Mode,
    Sign, TorusEigenpair,
};
pub use verify::{
    bipartite_symmetry_defect, delta, gc_spectrum, multiplicities, thm_1_1_proxy, thm_1_2_checks,
    thm_1_4_checks, thm_1_5_checks, thm_3_2_checks, top_bound, verify_thm_1_2, verify_thm_1_4,
    verify_lemma_4_3, verify_lemma_4_4, verify_thm_1_5, verify_thm_3_2_3_3, Check, Multiplicities, ProxyRow,
    Report, VANISH_TOL,
};

use serde::Serialize;
use std::fmt::Write as _;

/// Default grouping tolerance for multiplicities.
pub const GROUP_TOL: f64 = 1e-6;

/// A sorted list of eigenvalues together with the tolerance used to group
/// them into multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Group {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Serialize)]
struct SpectrumJson {
    eigenvalues: Vec<JsonNum>,
    groups: Vec<GroupJson>,
}

#[derive(Serialize)]
struct GroupJson {
    value: JsonNum,
    multiplicity: usize,
}

/// A float serialized with 15 significant digits.
struct JsonNum(f64);

impl Serialize for JsonNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: f64 = fmt_g15(self.0).parse().unwrap_or(self.0);
        s.serialize_f64(v)
    }
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>, tol: f64) -> Spectrum {
        values.sort_by(f64::total_cmp);
        Spectrum { values, tol }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.values.last().copied()
    }

    /// Groups consecutive values closer than `tol`; each group reports its
    /// mean.
    pub fn groups(&self) -> Vec<Group> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        let mut last = f64::NEG_INFINITY;
        for &v in &self.values {
            match out.last_mut() {
                Some((sum, m)) if v - last <= self.tol => {
                    *sum += v;
                    *m += 1;
                }
                _ => out.push((v, 1)),
            }
            last = v;
        }
        out.into_iter()
            .map(|(sum, m)| Group {
                value: sum / m as f64,
                multiplicity: m,
            })
            .collect()
    }

    /// Number of eigenvalues within `tol` of `x`.
    pub fn multiplicity(&self, x: f64) -> usize {
        let lo = self.values.partition_point(|&v| v < x - self.tol);
        let hi = self.values.partition_point(|&v| v <= x + self.tol);
        hi - lo
    }

    /// Distance from `x` to the nearest eigenvalue not counted in
    /// `multiplicity(x)`; infinite when there is none.
    pub fn guard_gap(&self, x: f64) -> f64 {
        self.values
            .iter()
            .map(|&v| (v - x).abs())
            .filter(|&d| d > self.tol)
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether some eigenvalue lies within `tol` of `x`.
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        let i = self.values.partition_point(|&v| v < x - tol);
        i < self.values.len() && self.values[i] <= x + tol
    }

    /// Largest pairwise distance between two sorted multisets of equal size,
    /// or `None` when the sizes differ.
    pub fn distance(&self, other: &[f64]) -> Option<f64> {
        if other.len() != self.values.len() {
            return None;
        }
        let mut o = other.to_vec();
        o.sort_by(f64::total_cmp);
        Some(self.values.iter().zip(&o).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    /// One eigenvalue per line.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for &v in &self.values {
            let _ = writeln!(s, "{}", fmt_g15(v));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let doc = SpectrumJson {
            eigenvalues: self.values.iter().map(|&v| JsonNum(v)).collect(),
            groups: self
                .groups()
                .into_iter()
                .map(|g| GroupJson {
                    value: JsonNum(g.value),
                    multiplicity: g.multiplicity,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("spectrum serializes")
    }
}

/// Formats like C's `%.15g`.
pub fn fmt_g15(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.14e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let m = trim_zeros(mant.to_string());
        format!("{}e{}{:02}", m, if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grouping() {
        let s = Spectrum::new(vec![4.0, 0.0, 2.0 + 1e-9, 2.0, 2.0 - 1e-9, 4.0 + 5e-7], 1e-6);
        let g = s.groups();
        assert_eq!(g.iter().map(|g| g.multiplicity).collect::<Vec<_>>(), vec![1, 3, 2]);
        assert_eq!(s.multiplicity(2.0), 3);
        assert_eq!(s.multiplicity(3.0), 0);
        assert!((s.guard_gap(2.0) - 2.0).abs() < 1e-6);
        assert!(s.contains(4.0, 1e-6) && !s.contains(1.0, 1e-6));
        assert_eq!(s.distance(&[0.0]), None);
    }

    #[test]
    fn g15() {
        assert_eq!(fmt_g15(0.0), "0");
        assert_eq!(fmt_g15(2.0), "2");
        assert_eq!(fmt_g15(-1.5), "-1.5");
        assert_eq!(fmt_g15(1.0 / 3.0), "0.333333333333333");
        assert_eq!(fmt_g15(5.23606797749979), "5.23606797749979");
        assert_eq!(fmt_g15(1e-7), "1e-07");
        assert_eq!(fmt_g15(1.25e20), "1.25e+20");
        assert_eq!(fmt_g15(-1e-17), "-1e-17");
        assert_eq!(fmt_g15(0.000123), "0.000123");
    }

    #[test]
    fn exports() {
        let s = Spectrum::new(vec![2.0, 0.0], 1e-6);
        assert_eq!(s.to_csv(), "0\n2\n");
        let v: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
        assert_eq!(v["eigenvalues"][1], 2.0);
        assert_eq!(v["groups"][0]["multiplicity"], 1);
    }
}
