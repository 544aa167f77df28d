//! Closed-form Phi functions for path and cycle components, the Psi sum of a
//! complement configuration, the secular root-finder for rho, the increment
//! identity, and the comparison principle.
//!
//! Every theta-power is evaluated through u = theta^-(k+1) in (0,1), so the
//! formulas stay finite for any component size.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::balanced_partition;
use crate::graph::{ComponentShape, Graph};
use crate::spectral::{Method, SpectralResult};
use crate::tolerances::{
    BISECTION_WIDTH, MAX_ITERATIONS, NEWTON_POLISH_STEPS, SECULAR_TOL, TIE_TOLERANCE,
};

/// The substitution theta + 1/theta = lambda with theta > 1, defined for
/// lambda > 2. Adding (not subtracting) the radical keeps it stable near 2.
#[derive(Debug, Clone, Copy)]
pub struct Theta {
    pub lambda: f64,
    pub theta: f64,
}

pub fn theta_from_lambda(lambda: f64) -> Result<Theta> {
    if !(lambda > 2.0) {
        return Err(Error::Domain(format!("need lambda > 2, got {lambda}")));
    }
    let theta = (lambda + (lambda * lambda - 4.0).sqrt()) / 2.0;
    Ok(Theta { lambda, theta })
}

/// Phi of a cycle component: len / (lambda - 2).
pub fn phi_cycle(len: usize, lambda: f64) -> Result<f64> {
    if len < 3 {
        return Err(Error::Domain(format!("cycle length must be >= 3, got {len}")));
    }
    if !(lambda > 2.0) {
        return Err(Error::Domain(format!("need lambda > 2, got {lambda}")));
    }
    Ok(len as f64 / (lambda - 2.0))
}

/// R_k(theta) = (1/(theta-1)) * (1 - (1+theta)/(1+theta^{k+1})), evaluated as
/// (1/(theta-1)) * (1 - (1+theta) u / (1+u)) with u = theta^-(k+1).
pub fn r_k(k: usize, theta: f64) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain("r_k needs k >= 1".into()));
    }
    if !(theta > 1.0) {
        return Err(Error::Domain(format!("need theta > 1, got {theta}")));
    }
    let u = (-((k + 1) as f64) * theta.ln()).exp();
    Ok((1.0 - (1.0 + theta) * u / (1.0 + u)) / (theta - 1.0))
}

/// Phi of a path component: k/(lambda-2) - (2/(lambda-2)) R_k(theta).
/// k = 1 is the isolated vertex, where the formula collapses to 1/lambda.
pub fn phi_path(k: usize, lambda: f64) -> Result<f64> {
    let th = theta_from_lambda(lambda)?;
    let r = r_k(k, th.theta)?;
    Ok((k as f64 - 2.0 * r) / (lambda - 2.0))
}

/// The increment Phi_{P_{k+1}} - Phi_{P_k} in closed form:
/// (1/(lambda-2)) * ((theta^{k+1}-1)(theta^{k+2}-1)) / ((1+theta^{k+1})(1+theta^{k+2})).
pub fn phi_path_increment(k: usize, lambda: f64) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain("phi_path_increment needs k >= 1".into()));
    }
    let th = theta_from_lambda(lambda)?;
    let u1 = (-((k + 1) as f64) * th.theta.ln()).exp();
    let u2 = u1 / th.theta;
    let f1 = (1.0 - u1) / (1.0 + u1);
    let f2 = (1.0 - u2) / (1.0 + u2);
    Ok(f1 * f2 / (lambda - 2.0))
}

/// How far R_k sits below its limit: T_k = 1/(theta-1) - R_k(theta), always
/// positive. Computed directly from u = theta^-(k+1) rather than by
/// subtracting the two nearby quantities, so it keeps full relative
/// precision even at magnitudes like 1e-40.
pub fn path_tail(k: usize, theta: f64) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain("path_tail needs k >= 1".into()));
    }
    if !(theta > 1.0) {
        return Err(Error::Domain(format!("need theta > 1, got {theta}")));
    }
    let u = (-((k + 1) as f64) * theta.ln()).exp();
    Ok((1.0 + theta) * u / ((1.0 + u) * (theta - 1.0)))
}

/// Psi_a(lambda) - Psi_b(lambda) for two configurations on the same vertex
/// count, without forming either Psi. Cycles contribute len/(lambda-2) and
/// paths (k - 2 R_k)/(lambda-2), so the shared mass n/(lambda-2) cancels
/// symbolically; with p = number of path components what remains is
///
///   Psi_a - Psi_b = 2 ((p_b - p_a)/(theta - 1) + sum_a T_k - sum_b T_k) / (lambda - 2).
///
/// The true root gaps between near-balanced configurations shrink like
/// theta^-(n/2), which falls below any honest rho tolerance once n passes
/// about 15. Forming the difference this way keeps the sign reliable down to
/// the underflow threshold, and the sign at lambda = rho_b + 1 orders the
/// two roots. Tie-breaking in the structured sweep runs on this.
pub fn psi_difference(a: &ComplementConfig, b: &ComplementConfig, lambda: f64) -> Result<f64> {
    if a.n() != b.n() {
        return Err(Error::Domain(format!(
            "psi_difference needs equal vertex counts, got {} and {}",
            a.n(),
            b.n()
        )));
    }
    let th = theta_from_lambda(lambda)?;
    let p_gap = b.paths().len() as f64 - a.paths().len() as f64;
    let mut bracket = p_gap / (th.theta - 1.0);
    for &k in a.paths() {
        bracket += path_tail(k, th.theta)?;
    }
    for &k in b.paths() {
        bracket -= path_tail(k, th.theta)?;
    }
    Ok(2.0 * bracket / (lambda - 2.0))
}

/// A complement made of disjoint cycles and paths, stored as sorted size
/// multisets. Path size 1 (isolated vertex) is allowed; cycles need >= 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComplementConfig {
    cycles: Vec<usize>,
    paths: Vec<usize>,
}

impl ComplementConfig {
    pub fn new(
        cycles: impl Into<Vec<usize>>,
        paths: impl Into<Vec<usize>>,
    ) -> Result<Self> {
        let mut cycles = cycles.into();
        let mut paths = paths.into();
        if let Some(&bad) = cycles.iter().find(|&&l| l < 3) {
            return Err(Error::Domain(format!("cycle length must be >= 3, got {bad}")));
        }
        if paths.contains(&0) {
            return Err(Error::Domain("path size must be >= 1".into()));
        }
        if cycles.is_empty() && paths.is_empty() {
            return Err(Error::Domain("configuration has no components".into()));
        }
        cycles.sort_unstable();
        paths.sort_unstable();
        Ok(ComplementConfig { cycles, paths })
    }

    pub fn cycles(&self) -> &[usize] {
        &self.cycles
    }

    pub fn paths(&self) -> &[usize] {
        &self.paths
    }

    /// Total vertex count n = N_c + N_p.
    pub fn n(&self) -> usize {
        self.cycle_total() + self.path_total()
    }

    pub fn cycle_total(&self) -> usize {
        self.cycles.iter().sum()
    }

    pub fn path_total(&self) -> usize {
        self.paths.iter().sum()
    }

    /// Number of cycle components.
    pub fn t(&self) -> usize {
        self.cycles.len()
    }

    pub fn num_components(&self) -> usize {
        self.cycles.len() + self.paths.len()
    }

    /// Canonical form like "C3+P4+P4": cycles ascending, then paths ascending.
    pub fn canonical_string(&self) -> String {
        self.cycles
            .iter()
            .map(|l| format!("C{l}"))
            .chain(self.paths.iter().map(|k| format!("P{k}")))
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Accepts "C3+P4+P4" or comma-separated, case-insensitive prefixes.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut paths = Vec::new();
        for raw in text.split(['+', ',']) {
            let tok = raw.trim();
            if tok.is_empty() {
                return Err(Error::Parse(format!("empty component token in {text:?}")));
            }
            let (kind, digits) = tok.split_at(1);
            let size: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad component size in token {tok:?}")))?;
            match kind {
                "C" | "c" => cycles.push(size),
                "P" | "p" => paths.push(size),
                _ => {
                    return Err(Error::Parse(format!(
                        "component token {tok:?} must start with C or P"
                    )))
                }
            }
        }
        ComplementConfig::new(cycles, paths)
    }

    /// Materialize on consecutive labels: cycles first, then paths, both in
    /// the stored ascending order.
    pub fn realize(&self) -> Graph {
        let mut edges = Vec::new();
        let mut offset = 0;
        for &l in &self.cycles {
            for i in 0..l - 1 {
                edges.push((offset + i, offset + i + 1));
            }
            edges.push((offset, offset + l - 1));
            offset += l;
        }
        for &k in &self.paths {
            for i in 0..k - 1 {
                edges.push((offset + i, offset + i + 1));
            }
            offset += k;
        }
        Graph::new(offset, edges).expect("component layout is always a valid graph")
    }

    /// Classify an arbitrary graph into a config; errors if any component is
    /// neither a path nor a cycle.
    pub fn from_graph(h0: &Graph) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut paths = Vec::new();
        for (vs, shape) in h0.components() {
            match shape {
                ComponentShape::Path { k } => paths.push(k),
                ComponentShape::Cycle { len } => cycles.push(len),
                ComponentShape::Other { size } => {
                    return Err(Error::Hypothesis(format!(
                        "component containing vertex {} (size {size}) is neither a path nor a cycle",
                        vs[0]
                    )))
                }
            }
        }
        ComplementConfig::new(cycles, paths)
    }

    /// True iff this is exactly the balanced-paths configuration for (n, s):
    /// no cycles, s+1 paths, sizes equal to the balanced partition of n.
    pub fn is_balanced_paths(&self, n: usize, s: usize) -> bool {
        self.t() == 0
            && self.n() == n
            && self.paths.len() == s + 1
            && balanced_partition(n, s + 1).map_or(false, |parts| self.paths == parts)
    }
}

/// Psi of a cycles-and-paths configuration: sum of component Phi values.
pub fn psi(config: &ComplementConfig, lambda: f64) -> Result<f64> {
    let mut total = 0.0;
    for &l in &config.cycles {
        total += phi_cycle(l, lambda)?;
    }
    for &k in &config.paths {
        total += phi_path(k, lambda)?;
    }
    Ok(total)
}

/// Which evaluation route `psi_graph` took.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PsiRoute {
    /// Every component was a path or cycle; closed forms only.
    ClosedForms,
    /// At least one component went through a dense linear solve.
    GeneralSolve,
}

#[derive(Debug, Clone, Copy)]
pub struct PsiEvaluation {
    pub value: f64,
    pub route: PsiRoute,
}

/// Psi for an arbitrary complement graph: closed forms where components are
/// paths or cycles, 1^T (lambda I - A)^-1 1 by dense LDL^T solve otherwise.
/// The solve requires lambda above the component's adjacency spectrum and
/// reports a domain error when the factorization is not positive definite.
pub fn psi_graph(h0: &Graph, lambda: f64) -> Result<PsiEvaluation> {
    if !(lambda > 2.0) {
        return Err(Error::Domain(format!("need lambda > 2, got {lambda}")));
    }
    let mut value = 0.0;
    let mut route = PsiRoute::ClosedForms;
    for (vs, shape) in h0.components() {
        match shape {
            ComponentShape::Cycle { len } => value += phi_cycle(len, lambda)?,
            ComponentShape::Path { k } => value += phi_path(k, lambda)?,
            ComponentShape::Other { .. } => {
                route = PsiRoute::GeneralSolve;
                value += phi_resolvent_sum(h0, &vs, lambda)?;
            }
        }
    }
    Ok(PsiEvaluation { value, route })
}

/// 1^T (lambda I - A(K))^-1 1 for the component induced on `vs`.
fn phi_resolvent_sum(h0: &Graph, vs: &[usize], lambda: f64) -> Result<f64> {
    let k = vs.len();
    let index = |v: usize| vs.binary_search(&v).expect("vertex in component");
    // Dense symmetric lambda*I - A, row major.
    let mut a = vec![0.0f64; k * k];
    for i in 0..k {
        a[i * k + i] = lambda;
    }
    for (u, v) in h0.edges() {
        if vs.binary_search(&u).is_ok() && vs.binary_search(&v).is_ok() {
            let (i, j) = (index(u), index(v));
            a[i * k + j] = -1.0;
            a[j * k + i] = -1.0;
        }
    }
    // LDL^T without pivoting; valid because the matrix must be positive
    // definite when lambda exceeds the adjacency spectral radius.
    let mut l = vec![0.0f64; k * k];
    let mut d = vec![0.0f64; k];
    for j in 0..k {
        let mut dj = a[j * k + j];
        for p in 0..j {
            dj -= l[j * k + p] * l[j * k + p] * d[p];
        }
        if dj <= 1e-12 * (1.0 + lambda.abs()) {
            return Err(Error::Domain(format!(
                "lambda = {lambda} is not above the spectrum of a size-{k} component"
            )));
        }
        d[j] = dj;
        for i in (j + 1)..k {
            let mut v = a[i * k + j];
            for p in 0..j {
                v -= l[i * k + p] * l[j * k + p] * d[p];
            }
            l[i * k + j] = v / dj;
        }
    }
    // Solve L z = 1, then D w = z, then L^T y = w.
    let mut y = vec![1.0f64; k];
    for i in 0..k {
        for p in 0..i {
            y[i] -= l[i * k + p] * y[p];
        }
    }
    for i in 0..k {
        y[i] /= d[i];
    }
    for i in (0..k).rev() {
        for p in (i + 1)..k {
            y[i] -= l[p * k + i] * y[p];
        }
    }
    Ok(y.iter().sum())
}

#[derive(Debug, Clone, Copy)]
pub struct SecularOpts {
    pub tol: f64,
    pub max_iter: u64,
}

impl Default for SecularOpts {
    fn default() -> Self {
        SecularOpts { tol: SECULAR_TOL, max_iter: MAX_ITERATIONS }
    }
}

/// rho via the secular equation: the unique root of Psi(lambda) = 1 in
/// (2, inf), minus one.
///
/// Hypotheses checked: at least two components and n >= 4. Bracket [3, n+2]
/// is validated on both ends; bisection runs to a fixed width and a few
/// Newton steps polish the root. An all-cycles configuration has its root
/// exactly at n+2, returned in closed form.
pub fn rho_via_secular(config: &ComplementConfig, opts: &SecularOpts) -> Result<SpectralResult> {
    let n = config.n();
    if config.num_components() < 2 {
        return Err(Error::Hypothesis(format!(
            "secular route needs at least two complement components, got {}",
            config.canonical_string()
        )));
    }
    if n < 4 {
        return Err(Error::Hypothesis(format!("secular route needs n >= 4, got n = {n}")));
    }
    if config.paths.is_empty() {
        // Psi = n/(lambda-2) exactly; the root of Psi = 1 is lambda = n + 2.
        return Ok(SpectralResult {
            value: (n + 1) as f64,
            method: Method::Secular,
            residual: 0.0,
            iterations: 0,
            eigvec: None,
        });
    }

    let f = |lambda: f64| psi(config, lambda).map(|v| v - 1.0);
    let mut lo = 3.0;
    let mut hi = (n + 2) as f64;
    let f_lo = f(lo)?;
    if f_lo <= 0.0 {
        return Err(Error::Bracket(format!(
            "Psi(3) = {} is not > 1 for {}",
            f_lo + 1.0,
            config.canonical_string()
        )));
    }
    let f_hi = f(hi)?;
    if f_hi >= 0.0 {
        return Err(Error::Bracket(format!(
            "Psi(n+2) = {} is not < 1 for {}",
            f_hi + 1.0,
            config.canonical_string()
        )));
    }

    let mut iterations = 0u64;
    while hi - lo > BISECTION_WIDTH {
        if iterations >= opts.max_iter {
            return Err(Error::NoConvergence {
                iterations,
                last: (lo + hi) / 2.0 - 1.0,
            });
        }
        let mid = 0.5 * (lo + hi);
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }

    let mut lambda = 0.5 * (lo + hi);
    let h = 1e-7 * lambda.max(1.0);
    for _ in 0..NEWTON_POLISH_STEPS {
        let fv = f(lambda)?;
        let slope = (f(lambda + h)? - f(lambda - h)?) / (2.0 * h);
        if slope >= 0.0 {
            break; // Psi is strictly decreasing; a bad slope means h noise.
        }
        lambda = (lambda - fv / slope).clamp(lo - BISECTION_WIDTH, hi + BISECTION_WIDTH);
        iterations += 1;
    }

    let residual = f(lambda)?.abs();
    if residual > opts.tol {
        return Err(Error::NoConvergence { iterations, last: lambda - 1.0 });
    }
    Ok(SpectralResult {
        value: lambda - 1.0,
        method: Method::Secular,
        residual,
        iterations,
        eigvec: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoOrdering {
    Less,
    Greater,
    Equal,
}

/// Proof object for a comparison: either the one-sided Psi evaluation at the
/// other root, or both roots when the gap was too small for the shortcut.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    PsiGap { lambda: f64, psi: f64 },
    RootDelta { rho_a: f64, rho_b: f64, delta: f64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct RhoComparison {
    pub a: String,
    pub b: String,
    pub ordering: RhoOrdering,
    pub certificate: Certificate,
}

/// Compare rho of two configurations by the comparison principle: evaluate
/// Psi_a at lambda = rho_b + 1; strictly below 1 proves rho_a < rho_b (and
/// symmetrically) with a single root-solve. Falls back to solving both roots
/// when Psi_a is within 10*tol of 1; ties are declared at the tie tolerance.
pub fn compare_rho(
    a: &ComplementConfig,
    b: &ComplementConfig,
    opts: &SecularOpts,
) -> Result<RhoComparison> {
    let rho_b = rho_via_secular(b, opts)?.value;
    let lambda = rho_b + 1.0;
    let psi_a = psi(a, lambda)?;
    let margin = 10.0 * opts.tol;
    let (ordering, certificate) = if psi_a < 1.0 - margin {
        (RhoOrdering::Less, Certificate::PsiGap { lambda, psi: psi_a })
    } else if psi_a > 1.0 + margin {
        (RhoOrdering::Greater, Certificate::PsiGap { lambda, psi: psi_a })
    } else {
        let rho_a = rho_via_secular(a, opts)?.value;
        let delta = rho_a - rho_b;
        let ordering = if delta.abs() <= TIE_TOLERANCE {
            RhoOrdering::Equal
        } else if delta < 0.0 {
            RhoOrdering::Less
        } else {
            RhoOrdering::Greater
        };
        (ordering, Certificate::RootDelta { rho_a, rho_b, delta })
    };
    Ok(RhoComparison {
        a: a.canonical_string(),
        b: b.canonical_string(),
        ordering,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> ComplementConfig {
        ComplementConfig::parse(s).unwrap()
    }

    #[test]
    fn theta_substitution() {
        for lambda in [2.01, 2.1, 2.5, 3.0, 5.0, 10.0, 50.0] {
            let th = theta_from_lambda(lambda).unwrap();
            assert!(th.theta > 1.0);
            let back = th.theta + 1.0 / th.theta;
            assert!((back - lambda).abs() <= 1e-12 * lambda);
        }
        assert!(theta_from_lambda(2.0).is_err());
        assert!(theta_from_lambda(f64::NAN).is_err());
    }

    #[test]
    fn phi_cycle_values() {
        assert_eq!(phi_cycle(3, 4.0).unwrap(), 1.5);
        assert_eq!(phi_cycle(5, 3.0).unwrap(), 5.0);
        assert_eq!(phi_cycle(3, 2.5).unwrap(), 6.0);
        assert!(phi_cycle(2, 3.0).is_err());
        assert!(phi_cycle(3, 2.0).is_err());
    }

    #[test]
    fn phi_path_values() {
        // 2x2 solve: y_i = 1/(lambda-1), sum = 2/(lambda-1).
        assert!((phi_path(2, 3.0).unwrap() - 1.0).abs() < 1e-14);
        // Isolated vertex: 1/lambda.
        assert!((phi_path(1, 5.0).unwrap() - 0.2).abs() < 1e-14);
        // 4x4 tridiagonal solve at lambda = 4 gives 18/11.
        assert!((phi_path(4, 4.0).unwrap() - 18.0 / 11.0).abs() < 1e-12);
        assert!(phi_path(0, 3.0).is_err());
    }

    #[test]
    fn r_k_values_and_limits() {
        assert!((r_k(2, 2.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(r_k(3, 1e6).unwrap() < 1e-5);
        let r = r_k(500, 2.0).unwrap();
        assert!((1.0 - 1e-12..=1.0).contains(&r));
        assert!(r_k(1, 1.0).is_err());
    }

    #[test]
    fn phi_path_strictly_below_cycle_rate() {
        for lambda in [2.1, 3.0, 10.0] {
            for k in [1usize, 2, 5, 40] {
                let phi = phi_path(k, lambda).unwrap();
                assert!(phi < k as f64 / (lambda - 2.0), "k={k} lambda={lambda}");
                assert!(phi > 0.0);
            }
        }
    }

    #[test]
    fn increment_matches_difference() {
        for lambda in [2.01, 2.5, 3.0, 10.0] {
            let ceiling = 1.0 / (lambda - 2.0);
            let mut last = 0.0;
            for k in 1usize..=60 {
                let inc = phi_path_increment(k, lambda).unwrap();
                let diff = phi_path(k + 1, lambda).unwrap() - phi_path(k, lambda).unwrap();
                assert!((inc - diff).abs() <= 1e-10, "k={k} lambda={lambda}");
                assert!(inc > 0.0 && inc <= ceiling);
                // Strictly increasing until theta^-(k+1) underflows the
                // double format and the increment saturates at the ceiling.
                if last < ceiling * (1.0 - 1e-12) {
                    assert!(inc > last, "increments must increase, k={k} lambda={lambda}");
                }
                last = inc;
            }
        }
    }

    #[test]
    fn path_tail_complements_r_k() {
        for lambda in [2.1, 3.0, 11.0] {
            let th = theta_from_lambda(lambda).unwrap();
            for k in [1usize, 2, 7, 30] {
                let whole = 1.0 / (th.theta - 1.0);
                let rebuilt = r_k(k, th.theta).unwrap() + path_tail(k, th.theta).unwrap();
                assert!((rebuilt - whole).abs() <= 1e-15 * whole, "k={k} lambda={lambda}");
            }
        }
    }

    #[test]
    fn psi_difference_matches_direct_subtraction() {
        let a = cfg("P4+P7");
        let b = cfg("C3+P4+P4");
        for lambda in [2.5, 5.0, 12.0] {
            let fast = psi_difference(&a, &b, lambda).unwrap();
            let slow = psi(&a, lambda).unwrap() - psi(&b, lambda).unwrap();
            assert!((fast - slow).abs() <= 1e-12, "lambda={lambda}: {fast} vs {slow}");
        }
        assert!(psi_difference(&a, &a, 3.0).unwrap().abs() <= 1e-15);
        let swapped = psi_difference(&b, &a, 3.0).unwrap();
        assert!((psi_difference(&a, &b, 3.0).unwrap() + swapped).abs() <= 1e-15);
        assert!(psi_difference(&a, &cfg("P5"), 3.0).is_err());
    }

    #[test]
    fn psi_difference_resolves_sub_float_gaps() {
        // At n = 30 the root gap between these is far below 1e-12, but the
        // sign of the Psi difference stays exact: unbalanced above balanced,
        // cyclic above everything path-only of the same path count.
        let balanced = cfg("P15+P15");
        for other in ["P14+P16", "P13+P17", "C3+P13+P14", "C3+C3+P12+P12"] {
            let d = psi_difference(&cfg(other), &balanced, 31.0).unwrap();
            assert!(d > 0.0, "{other}: {d}");
            assert!(d < 1e-9, "{other}: gap should be tiny, got {d}");
        }
    }

    #[test]
    fn config_parsing_and_realization() {
        let c = cfg("C3+P4+P4");
        assert_eq!(c.canonical_string(), "C3+P4+P4");
        assert_eq!((c.n(), c.t(), c.num_components()), (11, 1, 3));
        assert_eq!(cfg("p6, P5").canonical_string(), "P5+P6");
        assert!(ComplementConfig::parse("C2+P3").is_err());
        assert!(ComplementConfig::parse("X4").is_err());
        assert!(ComplementConfig::parse("").is_err());

        let g = c.realize();
        assert_eq!(g.component_summary(), "C3+P4+P4");
        assert_eq!(ComplementConfig::from_graph(&g).unwrap(), c);
        assert!(ComplementConfig::from_graph(&Graph::complete(4)).is_err());
    }

    #[test]
    fn balanced_paths_detection() {
        assert!(cfg("P5+P6").is_balanced_paths(11, 1));
        assert!(!cfg("P4+P7").is_balanced_paths(11, 1));
        assert!(!cfg("C3+P4+P4").is_balanced_paths(11, 1));
        assert!(cfg("P1+P1+P2+P2").is_balanced_paths(6, 3));
    }

    #[test]
    fn psi_values_and_monotonicity() {
        // All-cycles config at lambda = 9: N_c/(lambda-2) = 7/7.
        assert!((psi(&cfg("C3+C4"), 9.0).unwrap() - 1.0).abs() < 1e-14);
        let c = cfg("C3+P4+P4");
        let mut prev = f64::INFINITY;
        for lambda in [2.2, 2.5, 3.0, 4.0, 8.0, 16.0, 100.0] {
            let v = psi(&c, lambda).unwrap();
            assert!(v < prev, "Psi must strictly decrease");
            prev = v;
        }
    }

    #[test]
    fn secular_roots_match_known_values() {
        let opts = SecularOpts::default();
        let best = rho_via_secular(&cfg("P5+P6"), &opts).unwrap();
        let cyclic = rho_via_secular(&cfg("C3+P4+P4"), &opts).unwrap();
        let merged = rho_via_secular(&cfg("P3+P8"), &opts).unwrap();
        assert!((best.value - 11.65442).abs() < 1e-4);
        assert!((cyclic.value - 11.65444).abs() < 1e-4);
        assert!((merged.value - 11.65452).abs() < 1e-4);
        assert!(best.value < cyclic.value && cyclic.value < merged.value);
        for r in [&best, &cyclic, &merged] {
            assert!(r.residual <= opts.tol);
            assert_eq!(r.method, Method::Secular);
        }
    }

    #[test]
    fn secular_all_cycles_exact() {
        let r = rho_via_secular(&cfg("C3+C4"), &SecularOpts::default()).unwrap();
        assert_eq!(r.value, 8.0);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn secular_hypothesis_checks() {
        let opts = SecularOpts::default();
        assert!(matches!(
            rho_via_secular(&cfg("P5"), &opts),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            rho_via_secular(&cfg("P1+P2"), &opts),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn psi_graph_routes() {
        let c = cfg("C3+P4+P4");
        let g = c.realize();
        let eval = psi_graph(&g, 12.0).unwrap();
        assert_eq!(eval.route, PsiRoute::ClosedForms);
        assert!((eval.value - psi(&c, 12.0).unwrap()).abs() < 1e-12);

        // K4 component: Phi = 4/(lambda-3) by the complete-graph resolvent.
        let eval = psi_graph(&Graph::complete(4), 5.0).unwrap();
        assert_eq!(eval.route, PsiRoute::GeneralSolve);
        assert!((eval.value - 2.0).abs() < 1e-12);

        // lambda below the K4 spectrum (3) must be rejected.
        assert!(psi_graph(&Graph::complete(4), 2.5).is_err());
    }

    #[test]
    fn comparisons() {
        let opts = SecularOpts::default();
        let r = compare_rho(&cfg("P5+P6"), &cfg("P3+P8"), &opts).unwrap();
        assert_eq!(r.ordering, RhoOrdering::Less);
        assert!(matches!(r.certificate, Certificate::PsiGap { psi, .. } if psi < 1.0));

        let r = compare_rho(&cfg("P5+P6"), &cfg("C3+P4+P4"), &opts).unwrap();
        assert_eq!(r.ordering, RhoOrdering::Less);

        let r = compare_rho(&cfg("P3+P8"), &cfg("P5+P6"), &opts).unwrap();
        assert_eq!(r.ordering, RhoOrdering::Greater);

        let r = compare_rho(&cfg("P5+P6"), &cfg("P5+P6"), &opts).unwrap();
        assert_eq!(r.ordering, RhoOrdering::Equal);
        assert!(matches!(r.certificate, Certificate::RootDelta { delta, .. } if delta.abs() <= 1e-9));
    }
}
