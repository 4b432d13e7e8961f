//! Exact arithmetic on the Eisenstein and Gaussian integer lattices.
//!
//! Points are written in the basis `(1, ω)` with `ω = e^{iπ/3}` for the
//! triangular lattice and `(1, i)` for the square lattice. Cell barycenters
//! are kept as integer pairs scaled by 3 (triangles) or 2 (squares).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Valence of the seed graph, which fixes the lattice in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Valence {
    Three,
    Four,
}

impl Valence {
    pub fn from_degree(d: usize) -> Option<Valence> {
        match d {
            3 => Some(Valence::Three),
            4 => Some(Valence::Four),
            _ => None,
        }
    }

    pub fn degree(self) -> usize {
        match self {
            Valence::Three => 3,
            Valence::Four => 4,
        }
    }

    /// Denominator of cell barycenters.
    pub fn scale(self) -> i64 {
        match self {
            Valence::Three => 3,
            Valence::Four => 2,
        }
    }

    /// `k² + kl + l²` or `k² + l²`.
    pub fn norm(self, k: i64, l: i64) -> i64 {
        match self {
            Valence::Three => k * k + k * l + l * l,
            Valence::Four => k * k + l * l,
        }
    }

    /// Product in `ℤ[ω]` or `ℤ[i]`.
    pub fn mul(self, z: (i64, i64), w: (i64, i64)) -> (i64, i64) {
        match self {
            Valence::Three => {
                let p = EisensteinInt::new(z.0, z.1) * EisensteinInt::new(w.0, w.1);
                (p.a, p.b)
            }
            Valence::Four => {
                let p = GaussianInt::new(z.0, z.1) * GaussianInt::new(w.0, w.1);
                (p.a, p.b)
            }
        }
    }

    /// Multiplication by the unit `ω` or `i`.
    pub fn unit_rotate(self, p: Pt) -> Pt {
        match self {
            Valence::Three => Pt::new(-p.y, p.x + p.y),
            Valence::Four => Pt::new(-p.y, p.x),
        }
    }

    /// Counterclockwise offsets from the scaled barycenter of the cell at `p`
    /// to the scaled barycenters of its edge-neighbors.
    pub fn neighbor_offsets(self, p: Pt) -> &'static [Pt] {
        const UP: [Pt; 3] = [Pt::new(1, -2), Pt::new(1, 1), Pt::new(-2, 1)];
        const DOWN: [Pt; 3] = [Pt::new(2, -1), Pt::new(-1, 2), Pt::new(-1, -1)];
        const SQ: [Pt; 4] = [Pt::new(0, -2), Pt::new(2, 0), Pt::new(0, 2), Pt::new(-2, 0)];
        match self {
            Valence::Three => {
                if p.x.rem_euclid(3) == 1 {
                    &UP
                } else {
                    &DOWN
                }
            }
            Valence::Four => &SQ,
        }
    }

    pub fn cell_at(self, p: Pt) -> LatticeCell {
        match self {
            Valence::Three => LatticeCell::Tri(TriCell::from_scaled(p)),
            Valence::Four => LatticeCell::Sq(SqCell::from_scaled(p)),
        }
    }
}

/// A point of `ℤ²` in lattice coordinates, usually a scaled barycenter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pt {
    pub x: i64,
    pub y: i64,
}

impl Pt {
    pub const fn new(x: i64, y: i64) -> Pt {
        Pt { x, y }
    }

    /// Orientation test; positive when `o` lies counterclockwise of `self`.
    /// Valid in both lattice bases since they are positively oriented.
    pub fn cross(self, o: Pt) -> i64 {
        self.x * o.y - self.y * o.x
    }

    pub fn scale(self, s: i64) -> Pt {
        Pt::new(self.x * s, self.y * s)
    }
}

impl Add for Pt {
    type Output = Pt;
    fn add(self, o: Pt) -> Pt {
        Pt::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Pt {
    type Output = Pt;
    fn sub(self, o: Pt) -> Pt {
        Pt::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Pt {
    type Output = Pt;
    fn neg(self) -> Pt {
        Pt::new(-self.x, -self.y)
    }
}

/// `a + bω` with `ω² = ω − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

impl EisensteinInt {
    pub const ZERO: EisensteinInt = EisensteinInt { a: 0, b: 0 };
    pub const ONE: EisensteinInt = EisensteinInt { a: 1, b: 0 };
    pub const OMEGA: EisensteinInt = EisensteinInt { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        EisensteinInt { a, b }
    }

    pub fn norm(self) -> i64 {
        self.a * self.a + self.a * self.b + self.b * self.b
    }

    /// Complex conjugate: `ω̄ = 1 − ω`.
    pub fn conj(self) -> Self {
        EisensteinInt::new(self.a + self.b, -self.b)
    }

    pub fn to_complex(self) -> (f64, f64) {
        let (a, b) = (self.a as f64, self.b as f64);
        (a + 0.5 * b, b * 3f64.sqrt() / 2.0)
    }
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        EisensteinInt::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        EisensteinInt::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        EisensteinInt::new(-self.a, -self.b)
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b, c, d) = (self.a, self.b, o.a, o.b);
        EisensteinInt::new(a * c - b * d, a * d + b * c + b * d)
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}ω", self.a, self.b)
    }
}

/// `a + bi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussianInt {
    pub a: i64,
    pub b: i64,
}

impl GaussianInt {
    pub const ZERO: GaussianInt = GaussianInt { a: 0, b: 0 };
    pub const ONE: GaussianInt = GaussianInt { a: 1, b: 0 };
    pub const I: GaussianInt = GaussianInt { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        GaussianInt { a, b }
    }

    pub fn norm(self) -> i64 {
        self.a * self.a + self.b * self.b
    }

    pub fn conj(self) -> Self {
        GaussianInt::new(self.a, -self.b)
    }
}

impl Add for GaussianInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianInt::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for GaussianInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianInt::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for GaussianInt {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianInt::new(-self.a, -self.b)
    }
}

impl Mul for GaussianInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        GaussianInt::new(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orient {
    Up,
    Down,
}

/// Δ(a,b) with corners `a+bω, (a+1)+bω, a+(b+1)ω`, or
/// ∇(a,b) with corners `a+bω, a+(b+1)ω, (a−1)+(b+1)ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriCell {
    pub orient: Orient,
    pub a: i64,
    pub b: i64,
}

impl TriCell {
    pub fn up(a: i64, b: i64) -> Self {
        TriCell { orient: Orient::Up, a, b }
    }

    pub fn down(a: i64, b: i64) -> Self {
        TriCell { orient: Orient::Down, a, b }
    }

    pub fn corners(&self) -> [EisensteinInt; 3] {
        let (a, b) = (self.a, self.b);
        match self.orient {
            Orient::Up => [
                EisensteinInt::new(a, b),
                EisensteinInt::new(a + 1, b),
                EisensteinInt::new(a, b + 1),
            ],
            Orient::Down => [
                EisensteinInt::new(a, b),
                EisensteinInt::new(a, b + 1),
                EisensteinInt::new(a - 1, b + 1),
            ],
        }
    }

    /// Three times the barycenter.
    pub fn scaled_barycenter(&self) -> Pt {
        match self.orient {
            Orient::Up => Pt::new(3 * self.a + 1, 3 * self.b + 1),
            Orient::Down => Pt::new(3 * self.a - 1, 3 * self.b + 2),
        }
    }

    /// Inverse of [`TriCell::scaled_barycenter`]. The residues of `p` mod 3
    /// must be (1,1) or (2,2).
    pub fn from_scaled(p: Pt) -> Self {
        if p.x.rem_euclid(3) == 1 {
            debug_assert_eq!(p.y.rem_euclid(3), 1);
            TriCell::up((p.x - 1) / 3, (p.y - 1) / 3)
        } else {
            debug_assert_eq!((p.x.rem_euclid(3), p.y.rem_euclid(3)), (2, 2));
            TriCell::down((p.x + 1) / 3, (p.y - 2) / 3)
        }
    }
}

/// □(a,b) with corners `a+bi, (a+1)+bi, (a+1)+(b+1)i, a+(b+1)i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SqCell {
    pub a: i64,
    pub b: i64,
}

impl SqCell {
    pub fn new(a: i64, b: i64) -> Self {
        SqCell { a, b }
    }

    pub fn corners(&self) -> [GaussianInt; 4] {
        let (a, b) = (self.a, self.b);
        [
            GaussianInt::new(a, b),
            GaussianInt::new(a + 1, b),
            GaussianInt::new(a + 1, b + 1),
            GaussianInt::new(a, b + 1),
        ]
    }

    /// Twice the barycenter.
    pub fn scaled_barycenter(&self) -> Pt {
        Pt::new(2 * self.a + 1, 2 * self.b + 1)
    }

    pub fn from_scaled(p: Pt) -> Self {
        debug_assert!(p.x.rem_euclid(2) == 1 && p.y.rem_euclid(2) == 1);
        SqCell::new((p.x - 1) / 2, (p.y - 1) / 2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LatticeCell {
    Tri(TriCell),
    Sq(SqCell),
}

impl LatticeCell {
    pub fn scaled_barycenter(&self) -> Pt {
        match self {
            LatticeCell::Tri(c) => c.scaled_barycenter(),
            LatticeCell::Sq(c) => c.scaled_barycenter(),
        }
    }

    pub fn valence(&self) -> Valence {
        match self {
            LatticeCell::Tri(_) => Valence::Three,
            LatticeCell::Sq(_) => Valence::Four,
        }
    }

    pub fn is_up(&self) -> bool {
        matches!(self, LatticeCell::Tri(TriCell { orient: Orient::Up, .. }))
    }
}

/// Barycenter as an exact rational point `(x/den, y/den)` in lattice coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Barycenter {
    pub x: i64,
    pub y: i64,
    pub den: i64,
}

pub fn cell_barycenter(cell: &LatticeCell) -> Barycenter {
    let p = cell.scaled_barycenter();
    Barycenter {
        x: p.x,
        y: p.y,
        den: cell.valence().scale(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    Interior,
    OnEdge(usize),
    Outside,
}

/// The big triangle `(0, z, ωz)` or square `(0, z, (1+i)z, iz)`, with corners
/// stored scaled by the cell denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigRegion {
    pub valence: Valence,
    pub z: (i64, i64),
    corners: Vec<Pt>,
}

impl BigRegion {
    pub fn new(valence: Valence, k: i64, l: i64) -> Result<BigRegion> {
        if k == 0 && l == 0 {
            return Err(Error::InvalidParams("z must be nonzero".into()));
        }
        let z = Pt::new(k, l).scale(valence.scale());
        let corners = match valence {
            Valence::Three => vec![Pt::new(0, 0), z, valence.unit_rotate(z)],
            Valence::Four => {
                let iz = valence.unit_rotate(z);
                vec![Pt::new(0, 0), z, z + iz, iz]
            }
        };
        Ok(BigRegion {
            valence,
            z: (k, l),
            corners,
        })
    }

    pub fn triangle(z: EisensteinInt) -> Result<BigRegion> {
        BigRegion::new(Valence::Three, z.a, z.b)
    }

    pub fn square(z: GaussianInt) -> Result<BigRegion> {
        BigRegion::new(Valence::Four, z.a, z.b)
    }

    pub fn sides(&self) -> usize {
        self.corners.len()
    }

    /// Scaled corner `P_j`; side `j` runs from `P_j` to `P_{j+1}`.
    pub fn corner(&self, j: usize) -> Pt {
        self.corners[j % self.corners.len()]
    }

    /// Signed distance proxy of `p` from side `j`; positive on the inner side.
    pub fn side_cross(&self, j: usize, p: Pt) -> i64 {
        let a = self.corner(j);
        let b = self.corner(j + 1);
        (b - a).cross(p - a)
    }

    pub fn classify(&self, p: Pt) -> Position {
        let mut on = None;
        for j in 0..self.sides() {
            let c = self.side_cross(j, p);
            if c < 0 {
                return Position::Outside;
            }
            if c == 0 {
                on = Some(j);
            }
        }
        match on {
            Some(j) => Position::OnEdge(j),
            None => Position::Interior,
        }
    }

    /// The side through which the segment `s → e` first leaves the closed
    /// region, assuming `s` lies in it.
    pub fn exit_side(&self, s: Pt, e: Pt) -> Option<usize> {
        let mut best: Option<(usize, i64, i64)> = None;
        for j in 0..self.sides() {
            let ce = self.side_cross(j, e);
            if ce >= 0 {
                continue;
            }
            let cs = self.side_cross(j, s);
            // crossing parameter t = cs / (cs - ce)
            let (num, den) = (cs, cs - ce);
            match best {
                Some((_, bn, bd)) if (num as i128) * (bd as i128) >= (bn as i128) * (den as i128) => {}
                _ => best = Some((j, num, den)),
            }
        }
        best.map(|(j, _, _)| j)
    }

    /// Point reflection through the midpoint of side `j`.
    pub fn flip_across(&self, j: usize, p: Pt) -> Pt {
        self.corner(j) + self.corner(j + 1) - p
    }

    /// The rotation about the region's center taking corner `j` to `j+1`.
    pub fn advance_corner(&self, p: Pt) -> Pt {
        let z = self.corner(1);
        let r = match self.valence {
            Valence::Three => self.valence.unit_rotate(self.valence.unit_rotate(p)),
            Valence::Four => self.valence.unit_rotate(p),
        };
        z + r
    }

    /// Every scaled barycenter whose cell meets the closed region.
    pub fn candidate_barycenters(&self) -> Vec<Pt> {
        let s = self.valence.scale();
        let xs: Vec<i64> = self.corners.iter().map(|c| c.x).collect();
        let ys: Vec<i64> = self.corners.iter().map(|c| c.y).collect();
        let (x0, x1) = (*xs.iter().min().unwrap() - 2 * s, *xs.iter().max().unwrap() + 2 * s);
        let (y0, y1) = (*ys.iter().min().unwrap() - 2 * s, *ys.iter().max().unwrap() + 2 * s);
        let mut out = Vec::new();
        for y in y0..=y1 {
            for x in x0..=x1 {
                let ok = match self.valence {
                    Valence::Three => {
                        let (rx, ry) = (x.rem_euclid(3), y.rem_euclid(3));
                        rx == ry && rx != 0
                    }
                    Valence::Four => x.rem_euclid(2) == 1 && y.rem_euclid(2) == 1,
                };
                if ok && self.classify(Pt::new(x, y)) != Position::Outside {
                    out.push(Pt::new(x, y));
                }
            }
        }
        out
    }
}

pub fn barycenter_position(cell: &LatticeCell, region: &BigRegion) -> Position {
    region.classify(cell.scaled_barycenter())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Whether the sides of the big region pass through cell barycenters.
pub fn edge_hits_barycenter(k: i64, l: i64, valence: Valence) -> Result<bool> {
    if !(k >= l && l >= 0 && k != 0) {
        return Err(Error::InvalidParams(format!("({k},{l}) is not normalized")));
    }
    let (k1, l1) = if l == 0 {
        (1, 0)
    } else {
        let m = gcd(k, l);
        (k / m, l / m)
    };
    let q = match valence {
        Valence::Three => 3,
        Valence::Four => 2,
    };
    Ok(k1 % q != 0 && (k1 - l1).rem_euclid(q) == 0)
}

/// Number of barycenters on each side of the region, by direct enumeration.
pub fn count_on_edge(region: &BigRegion) -> Vec<usize> {
    let mut counts = vec![0; region.sides()];
    for p in region.candidate_barycenters() {
        if let Position::OnEdge(j) = region.classify(p) {
            counts[j] += 1;
        }
    }
    counts
}
