/// Dense square matrix intended to hold symmetric data.
///
/// Storage is column-major so that column sweeps in the eigensolver are
/// contiguous.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> SymMatrix {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> SymMatrix {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds from row-major data. Symmetry is not enforced here; see
    /// [`SymMatrix::is_symmetric`].
    pub fn from_rows(rows: &[Vec<f64>]) -> SymMatrix {
        let n = rows.len();
        let mut m = SymMatrix::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n, "matrix must be square");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.n + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[j * self.n + i] = x;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, x: f64) {
        self.data[j * self.n + i] += x;
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    pub(crate) fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// First entry `(i, j)` with `|m_ij − m_ji| > tol`, if any.
    pub fn asymmetry(&self, tol: f64) -> Option<(usize, usize)> {
        for j in 0..self.n {
            for i in j + 1..self.n {
                if (self.get(i, j) - self.get(j, i)).abs() > tol {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.asymmetry(tol).is_none()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0.0 {
                continue;
            }
            for (yi, &a) in y.iter_mut().zip(self.column(j)) {
                *yi += a * xj;
            }
        }
        y
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).sum()).collect()
    }

    /// `BᵀMB` for a matrix `B` given by its columns.
    pub fn compress(&self, basis: &[Vec<f64>]) -> SymMatrix {
        let mb: Vec<Vec<f64>> = basis.iter().map(|b| self.mul_vec(b)).collect();
        let m = basis.len();
        let mut out = SymMatrix::zeros(m);
        for i in 0..m {
            for j in 0..m {
                let s: f64 = basis[i].iter().zip(&mb[j]).map(|(a, b)| a * b).sum();
                out.set(i, j, s);
            }
        }
        out
    }
}
