//! Dense symmetric eigensolver and the two spectral-radius entry points.
//!
//! Power iteration runs on M + sigma*I with sigma = ||M||_inf. The shift keeps
//! the iteration away from the +/- lambda_max oscillation that plain power
//! iteration hits on bipartite adjacency matrices (P4 already breaks it), and
//! for nonnegative symmetric M it leaves the Perron pair untouched. The
//! Rayleigh value and residual are reported against the original M.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::tolerances::{EIGEN_TOL, MAX_ITERATIONS};

/// Dense row-major square matrix. Everything here is small (tens of rows),
/// so there is no sparse path.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    a: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix { n, a: vec![0.0; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }

    pub fn adjacency(g: &Graph) -> Self {
        let mut m = SquareMatrix::zeros(g.n());
        for (u, v) in g.edges() {
            m.set(u, v, 1.0);
            m.set(v, u, 1.0);
        }
        m
    }

    /// Dense view of a distance matrix; errors if any pair is unreachable.
    pub fn from_distances(d: &DistanceMatrix) -> Result<Self> {
        let n = d.n();
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                match d.get(i, j) {
                    Some(v) => m.set(i, j, f64::from(v)),
                    None => {
                        return Err(Error::Hypothesis(format!(
                            "distance matrix has unreachable pair ({i}, {j})"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    /// Max absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.a[i * self.n..(i + 1) * self.n].iter().map(|v| v.abs()).sum())
            .fold(0.0, f64::max)
    }

    fn matvec(&self, x: &[f64], out: &mut [f64]) {
        for i in 0..self.n {
            let row = &self.a[i * self.n..(i + 1) * self.n];
            out[i] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    fn check_symmetric_nonnegative(&self) -> Result<()> {
        for i in 0..self.n {
            for j in i..self.n {
                let (ij, ji) = (self.get(i, j), self.get(j, i));
                if ij < 0.0 || ji < 0.0 {
                    return Err(Error::Domain(format!(
                        "negative entry at ({i}, {j}); solver requires a nonnegative matrix"
                    )));
                }
                if ij != ji {
                    return Err(Error::Domain(format!(
                        "matrix not symmetric at ({i}, {j}): {ij} vs {ji}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Which route produced a spectral value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Eigensolver,
    Secular,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralResult {
    pub value: f64,
    pub method: Method,
    /// ||Mx - value*x||_inf for the eigensolver; |Psi(value+1) - 1| for secular.
    pub residual: f64,
    pub iterations: u64,
    /// Unit 2-norm, entrywise nonnegative; strictly positive for irreducible input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigvec: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOpts {
    pub tol: f64,
    pub max_iter: u64,
    /// Skip materializing the eigenvector (hot enumeration loops).
    pub keep_eigvec: bool,
}

impl Default for SolveOpts {
    fn default() -> Self {
        SolveOpts { tol: EIGEN_TOL, max_iter: MAX_ITERATIONS, keep_eigvec: true }
    }
}

/// Largest eigenvalue of a symmetric nonnegative matrix by shifted power
/// iteration from the all-ones start vector.
pub fn dominant_eigenvalue(m: &SquareMatrix, opts: &SolveOpts) -> Result<SpectralResult> {
    let n = m.n();
    if n == 0 {
        return Err(Error::Domain("empty matrix".into()));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {}", opts.tol)));
    }
    m.check_symmetric_nonnegative()?;

    let sigma = m.inf_norm();
    let uniform = 1.0 / (n as f64).sqrt();
    if sigma == 0.0 {
        return Ok(SpectralResult {
            value: 0.0,
            method: Method::Eigensolver,
            residual: 0.0,
            iterations: 0,
            eigvec: opts.keep_eigvec.then(|| vec![uniform; n]),
        });
    }

    let mut x = vec![uniform; n];
    let mut z = vec![0.0; n];
    let mut prev = f64::INFINITY;
    for it in 1..=opts.max_iter {
        m.matvec(&x, &mut z);
        let rq: f64 = x.iter().zip(&z).map(|(a, b)| a * b).sum();
        let residual = x
            .iter()
            .zip(&z)
            .map(|(xi, zi)| (zi - rq * xi).abs())
            .fold(0.0, f64::max);
        if (rq - prev).abs() <= opts.tol * rq.abs().max(1.0) && residual <= opts.tol * sigma {
            return Ok(SpectralResult {
                value: rq,
                method: Method::Eigensolver,
                residual,
                iterations: it,
                eigvec: opts.keep_eigvec.then_some(x),
            });
        }
        prev = rq;
        // x <- normalize(z + sigma x); stays entrywise nonnegative.
        let mut norm2 = 0.0;
        for (xi, zi) in x.iter_mut().zip(&z) {
            *xi = zi + sigma * *xi;
            norm2 += *xi * *xi;
        }
        let inv = 1.0 / norm2.sqrt();
        for xi in x.iter_mut() {
            *xi *= inv;
        }
    }
    Err(Error::NoConvergence { iterations: opts.max_iter, last: prev })
}

/// rho(g): dominant eigenvalue of the BFS distance matrix. Connected input only.
pub fn distance_spectral_radius(g: &Graph, opts: &SolveOpts) -> Result<SpectralResult> {
    let d = g.all_pairs_distances();
    if !d.is_all_reachable() {
        return Err(Error::Hypothesis(
            "distance spectral radius undefined: graph is disconnected".into(),
        ));
    }
    dominant_eigenvalue(&SquareMatrix::from_distances(&d)?, opts)
}

/// lambda(g): dominant eigenvalue of the adjacency matrix. Disconnected input
/// is fine; the iteration converges to the max over components.
pub fn adjacency_spectral_radius(g: &Graph, opts: &SolveOpts) -> Result<SpectralResult> {
    dominant_eigenvalue(&SquareMatrix::adjacency(g), opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(g: &Graph, distance: bool) -> f64 {
        let opts = SolveOpts::default();
        if distance {
            distance_spectral_radius(g, &opts).unwrap().value
        } else {
            adjacency_spectral_radius(g, &opts).unwrap().value
        }
    }

    #[test]
    fn distance_radius_known_values() {
        // D(K4) = J - I has top eigenvalue n - 1.
        assert!((value(&Graph::complete(4), true) - 3.0).abs() < 1e-10);
        // D(P3): largest root of x^3 - 6x - 4 = (x+2)(x^2-2x-2).
        assert!((value(&Graph::path(3), true) - (1.0 + 3f64.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn adjacency_radius_known_values() {
        assert!((value(&Graph::cycle(6).unwrap(), false) - 2.0).abs() < 1e-10);
        assert!((value(&Graph::complete(4), false) - 3.0).abs() < 1e-10);
        // A(P4): 2cos(pi/5), the golden ratio. Plain power iteration would
        // oscillate here; the shift is what makes this converge.
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((value(&Graph::path(4), false) - golden).abs() < 1e-10);
    }

    #[test]
    fn disconnected_and_degenerate_inputs() {
        let opts = SolveOpts::default();
        assert!(distance_spectral_radius(&Graph::empty(2), &opts).is_err());
        // Empty adjacency matrix: value 0, immediate return.
        let r = adjacency_spectral_radius(&Graph::empty(3), &opts).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.iterations, 0);
        // Disconnected adjacency is fine: max over components.
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        assert!((adjacency_spectral_radius(&g, &opts).unwrap().value - 2.0).abs() < 1e-10);
    }

    #[test]
    fn input_validation() {
        let mut m = SquareMatrix::zeros(2);
        m.set(0, 1, 1.0);
        assert!(matches!(
            dominant_eigenvalue(&m, &SolveOpts::default()),
            Err(Error::Domain(_))
        ));
        let mut m = SquareMatrix::zeros(2);
        m.set(0, 1, -1.0);
        m.set(1, 0, -1.0);
        assert!(dominant_eigenvalue(&m, &SolveOpts::default()).is_err());
        assert!(dominant_eigenvalue(&SquareMatrix::zeros(0), &SolveOpts::default()).is_err());
    }

    #[test]
    fn residual_certificate_and_perron_vector() {
        let g = Graph::path(5);
        let opts = SolveOpts::default();
        let r = distance_spectral_radius(&g, &opts).unwrap();
        let d = SquareMatrix::from_distances(&g.all_pairs_distances()).unwrap();
        assert!(r.residual <= opts.tol * d.inf_norm());
        let x = r.eigvec.unwrap();
        assert!(x.iter().all(|&v| v > 0.0), "Perron vector must be positive");
        let norm2: f64 = x.iter().map(|v| v * v).sum();
        assert!((norm2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cycle_path_unions_stay_below_two() {
        let opts = SolveOpts::default();
        for (n, edges) in [
            (7, vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6)]),
            (5, vec![(0, 1), (2, 3), (3, 4)]),
        ] {
            let g = Graph::new(n, edges).unwrap();
            let lam = adjacency_spectral_radius(&g, &opts).unwrap().value;
            assert!(lam <= 2.0 + 1e-9, "lambda = {lam}");
        }
    }
}
