//! Oracles for the integration suites, written against the definitions only:
//! direct linear solves for the Phi quadratic forms, dynamic-programming
//! partition counts, and the shared random configuration sampler. Nothing
//! here calls the closed forms or the secular machinery under test.

#![allow(dead_code)]

use distspec_core::phipsi::ComplementConfig;
use rand::Rng;

/// 1^T (lambda I - A(P_k))^-1 1 by the Thomas tridiagonal algorithm.
/// Diagonally dominant for lambda > 2, so no pivoting is needed.
pub fn phi_path_oracle(k: usize, lambda: f64) -> f64 {
    let mut diag = vec![lambda; k];
    let mut rhs = vec![1.0; k];
    for i in 1..k {
        // Eliminate the subdiagonal -1 using row i-1.
        let w = -1.0 / diag[i - 1];
        diag[i] -= w * -1.0;
        rhs[i] -= w * rhs[i - 1];
    }
    let mut y = vec![0.0; k];
    y[k - 1] = rhs[k - 1] / diag[k - 1];
    for i in (0..k - 1).rev() {
        y[i] = (rhs[i] + y[i + 1]) / diag[i];
    }
    y.iter().sum()
}

/// 1^T (lambda I - A)^-1 1 by dense Gaussian elimination with partial
/// pivoting, for an arbitrary adjacency matrix given as edge pairs.
pub fn phi_dense_oracle(n: usize, edges: &[(usize, usize)], lambda: f64) -> f64 {
    let mut a = vec![0.0f64; n * n];
    for i in 0..n {
        a[i * n + i] = lambda;
    }
    for &(u, v) in edges {
        a[u * n + v] = -1.0;
        a[v * n + u] = -1.0;
    }
    let mut b = vec![1.0f64; n];
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .unwrap();
        if piv != col {
            for j in 0..n {
                a.swap(col * n + j, piv * n + j);
            }
            b.swap(col, piv);
        }
        let d = a[col * n + col];
        assert!(d.abs() > 1e-12, "oracle matrix is singular at lambda = {lambda}");
        for row in col + 1..n {
            let w = a[row * n + col] / d;
            if w == 0.0 {
                continue;
            }
            for j in col..n {
                a[row * n + j] -= w * a[col * n + j];
            }
            b[row] -= w * b[col];
        }
    }
    let mut y = vec![0.0f64; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for j in row + 1..n {
            acc -= a[row * n + j] * y[j];
        }
        y[row] = acc / a[row * n + row];
    }
    y.iter().sum()
}

pub fn phi_cycle_oracle(len: usize, lambda: f64) -> f64 {
    let mut edges: Vec<(usize, usize)> = (0..len - 1).map(|i| (i, i + 1)).collect();
    edges.push((0, len - 1));
    phi_dense_oracle(len, &edges, lambda)
}

/// Partitions of `total` into parts >= 3, any count >= 1, by the standard
/// coin-change recurrence (parts considered in one canonical order).
pub fn count_partitions_min3(total: usize) -> u64 {
    if total == 0 {
        return 1;
    }
    let mut dp = vec![0u64; total + 1];
    dp[0] = 1;
    for part in 3..=total {
        for j in part..=total {
            dp[j] += dp[j - part];
        }
    }
    dp[total]
}

/// Partitions of `total` into exactly `count` parts, each >= 2. Subtracting 2
/// from every part leaves a partition of total - 2*count into at most `count`
/// parts, i.e. (by conjugation) into parts of size <= count.
pub fn count_partitions_exact2(total: usize, count: usize) -> u64 {
    if total < 2 * count {
        return 0;
    }
    let rest = total - 2 * count;
    let mut dp = vec![0u64; rest + 1];
    dp[0] = 1;
    for part in 1..=count.min(rest.max(1)) {
        for j in part..=rest {
            dp[j] += dp[j - part];
        }
    }
    dp[rest]
}

/// Independent count of the (n, s) structured candidate space.
pub fn count_configs_oracle(n: usize, s: usize) -> u64 {
    let c = s + 1;
    let mut total = count_partitions_exact2(n, c);
    if n >= 2 * c + 3 {
        for n_c in 3..=n - 2 * c {
            total += count_partitions_min3(n_c) * count_partitions_exact2(n - n_c, c);
        }
    }
    total
}

/// Random cycles-and-paths configurations with n in [5, 30] and at least two
/// components, for the dual-route and normalization criteria. Deterministic
/// for a fixed generator.
pub fn sample_configs(rng: &mut impl Rng, count: usize) -> Vec<ComplementConfig> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n: usize = rng.random_range(5..=30);
        let mut cycles = Vec::new();
        let mut paths = Vec::new();
        let mut remaining = n;
        while remaining > 0 {
            let max = remaining.min(12);
            if remaining >= 3 && rng.random_bool(0.3) {
                let len = rng.random_range(3..=max);
                cycles.push(len);
                remaining -= len;
            } else {
                let k = rng.random_range(1..=max);
                paths.push(k);
                remaining -= k;
            }
        }
        if cycles.len() + paths.len() < 2 {
            continue;
        }
        out.push(ComplementConfig::new(cycles, paths).unwrap());
    }
    out
}
