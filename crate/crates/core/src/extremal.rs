//! (n, s) parameters from an edge count, balanced partitions, the candidate
//! extremal graph (complement of balanced disjoint paths), and the rebalance
//! operation together with its bookkeeping.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parameters derived from an edge budget m: the unique n with
/// C(n-1,2) < m <= C(n,2), the offset s = m - C(n-1,2), and the balanced
/// partition of n into s+1 parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalSpec {
    pub m: u64,
    pub n: usize,
    pub s: usize,
    /// Number of parts, s + 1.
    pub c: usize,
    /// Floor part size n / c.
    pub q: usize,
    /// Number of parts of size q + 1.
    pub r: usize,
    /// Balanced parts, non-decreasing; empty in the flagged s = 0 case.
    pub parts: Vec<usize>,
}

fn binom2(n: usize) -> u64 {
    (n as u64) * (n as u64 - 1) / 2
}

/// Smallest n with m <= C(n,2), by exact integer search seeded from the float
/// estimate (never trusting the float at triangular numbers).
pub fn params_from_m(m: u64) -> Result<ExtremalSpec> {
    if m < 3 {
        return Err(Error::Domain(format!("m must be >= 3, got {m}")));
    }
    let mut n = ((1.0 + ((8 * m + 1) as f64).sqrt()) / 2.0).ceil() as usize;
    n = n.max(2);
    while binom2(n) < m {
        n += 1;
    }
    while n > 2 && binom2(n - 1) >= m {
        n -= 1;
    }
    let s = (m - binom2(n - 1)) as usize;
    debug_assert!((1..=n - 1).contains(&s));
    ExtremalSpec::from_n_s(n, s)
}

impl ExtremalSpec {
    /// Build a spec from (n, s) directly; s = 0 is accepted as the flagged
    /// special case whose minimizer is the complete graph on n - 1 vertices.
    pub fn from_n_s(n: usize, s: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("need n >= 2, got {n}")));
        }
        if s > n - 1 {
            return Err(Error::Domain(format!("s must be in [0, n-1], got s = {s} for n = {n}")));
        }
        let m = binom2(n - 1) + s as u64;
        if s == 0 {
            return Ok(ExtremalSpec { m, n, s, c: 1, q: n, r: 0, parts: Vec::new() });
        }
        let c = s + 1;
        let q = n / c;
        let r = n - q * c;
        Ok(ExtremalSpec { m, n, s, c, q, r, parts: balanced_partition(n, c)? })
    }

    pub fn is_special_s0(&self) -> bool {
        self.s == 0
    }
}

/// N split into c parts of size floor(N/c) or ceil(N/c), non-decreasing.
pub fn balanced_partition(total: usize, c: usize) -> Result<Vec<usize>> {
    if c == 0 || total < c {
        return Err(Error::Domain(format!(
            "cannot split {total} vertices into {c} nonempty parts"
        )));
    }
    let q = total / c;
    let r = total - q * c;
    let mut parts = vec![q; c - r];
    parts.extend(std::iter::repeat(q + 1).take(r));
    Ok(parts)
}

/// The candidate minimizer: complement of the balanced paths laid out on
/// consecutive labels. The flagged s = 0 case returns K_{n-1} instead.
pub fn build_extremal_graph(spec: &ExtremalSpec) -> Graph {
    if spec.is_special_s0() {
        return Graph::complete(spec.n - 1);
    }
    let mut edges = Vec::new();
    let mut offset = 0;
    for &k in &spec.parts {
        for i in 0..k - 1 {
            edges.push((offset + i, offset + i + 1));
        }
        offset += k;
    }
    Graph::new(spec.n, edges)
        .expect("balanced path layout is always a valid graph")
        .complement()
}

/// One balancing move: parts[i] -= 1, parts[j] += 1, recorded with the
/// Q = sum of squares drop (always >= 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RebalanceMove {
    pub from: usize,
    pub to: usize,
    pub q_before: u64,
    pub q_after: u64,
}

fn sum_sq(parts: &[usize]) -> u64 {
    parts.iter().map(|&k| (k as u64) * (k as u64)).sum()
}

/// Replace (parts[i], parts[j]) by (parts[i]-1, parts[j]+1).
/// Requires parts[i] >= parts[j] + 2 and every part >= 2.
pub fn rebalance_step(parts: &mut [usize], i: usize, j: usize) -> Result<RebalanceMove> {
    if i >= parts.len() || j >= parts.len() || i == j {
        return Err(Error::Domain(format!("bad indices ({i}, {j})")));
    }
    if let Some(&bad) = parts.iter().find(|&&k| k < 2) {
        return Err(Error::Domain(format!("rebalance needs all parts >= 2, found {bad}")));
    }
    if parts[i] < parts[j] + 2 {
        return Err(Error::Domain(format!(
            "rebalance needs parts[i] >= parts[j] + 2, got {} and {}",
            parts[i], parts[j]
        )));
    }
    let q_before = sum_sq(parts);
    parts[i] -= 1;
    parts[j] += 1;
    let q_after = sum_sq(parts);
    debug_assert!(q_after <= q_before - 2);
    Ok(RebalanceMove { from: i, to: j, q_before, q_after })
}

/// Repeatedly apply rebalance_step at (argmax, argmin) (lowest index on ties)
/// until no pair differs by 2 or more. Returns the move trace; the final
/// parts are a permutation of the balanced partition.
pub fn rebalance_to_fixpoint(parts: &mut [usize]) -> Result<Vec<RebalanceMove>> {
    let mut moves = Vec::new();
    if parts.is_empty() {
        return Ok(moves);
    }
    loop {
        let (mut hi, mut lo) = (0, 0);
        for (idx, &k) in parts.iter().enumerate() {
            if k > parts[hi] {
                hi = idx;
            }
            if k < parts[lo] {
                lo = idx;
            }
        }
        if parts[hi] < parts[lo] + 2 {
            return Ok(moves);
        }
        moves.push(rebalance_step(parts, hi, lo)?);
    }
}

/// Entrywise dominance of balanced partitions: true iff the sorted balanced
/// partition of `n1` into c parts is entrywise <= that of `n2`. Guaranteed
/// whenever n1 <= n2. The interesting regime has n1 >= 2c (all parts >= 2),
/// but any n1 >= c is accepted.
pub fn partition_dominance(n1: usize, n2: usize, c: usize) -> Result<bool> {
    let p1 = balanced_partition(n1, c)?;
    let p2 = balanced_partition(n2, c)?;
    Ok(p1.iter().zip(&p2).all(|(a, b)| a <= b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_examples() {
        let s46 = params_from_m(46).unwrap();
        assert_eq!((s46.n, s46.s), (11, 1));
        assert_eq!(s46.parts, vec![5, 6]);

        let s3 = params_from_m(3).unwrap();
        assert_eq!((s3.n, s3.s), (3, 2));

        // Triangular-number disambiguation: m = C(n,2) picks s = n - 1.
        let s6 = params_from_m(6).unwrap();
        assert_eq!((s6.n, s6.s), (4, 3));
        let s10 = params_from_m(10).unwrap();
        assert_eq!((s10.n, s10.s), (5, 4));

        assert!(params_from_m(2).is_err());
    }

    #[test]
    fn params_brute_force() {
        for m in 3u64..=500 {
            let spec = params_from_m(m).unwrap();
            let n = spec.n;
            assert!(binom2(n - 1) < m && m <= binom2(n), "m = {m}");
            assert_eq!(spec.s as u64, m - binom2(n - 1));
            assert!((1..=n - 1).contains(&spec.s));
            assert_eq!(spec.m, m);
        }
    }

    #[test]
    fn balanced_partition_shapes() {
        assert_eq!(balanced_partition(11, 2).unwrap(), vec![5, 6]);
        assert_eq!(balanced_partition(12, 4).unwrap(), vec![3, 3, 3, 3]);
        assert_eq!(balanced_partition(11, 4).unwrap(), vec![2, 3, 3, 3]);
        assert_eq!(balanced_partition(4, 4).unwrap(), vec![1, 1, 1, 1]);
        assert!(balanced_partition(3, 4).is_err());
        for total in 1..40 {
            for c in 1..=total {
                let p = balanced_partition(total, c).unwrap();
                assert_eq!(p.len(), c);
                assert_eq!(p.iter().sum::<usize>(), total);
                assert!(p[c - 1] - p[0] <= 1);
            }
        }
    }

    #[test]
    fn build_extremal_examples() {
        // m = 46: complement of P5 + P6 on 11 vertices.
        let g = build_extremal_graph(&params_from_m(46).unwrap());
        assert_eq!(g.n(), 11);
        assert_eq!(g.edge_count(), 46);
        assert_eq!(g.complement().component_summary(), "P5+P6");

        // n = 4, s = 1: complement of 2K2 is C4.
        let spec = ExtremalSpec::from_n_s(4, 1).unwrap();
        assert_eq!(spec.m, 4);
        let g = build_extremal_graph(&spec);
        assert_eq!(g.components()[0].1, crate::graph::ComponentShape::Cycle { len: 4 });

        // m = 6: parts [1,1,1,1], built graph K4.
        let g = build_extremal_graph(&params_from_m(6).unwrap());
        assert_eq!(g, Graph::complete(4));

        // Flagged s = 0: K_{n-1}.
        let spec = ExtremalSpec::from_n_s(6, 0).unwrap();
        assert!(spec.is_special_s0());
        assert_eq!(build_extremal_graph(&spec), Graph::complete(5));
    }

    #[test]
    fn build_edge_counts_across_m() {
        for m in 3u64..=200 {
            let spec = params_from_m(m).unwrap();
            let g = build_extremal_graph(&spec);
            assert_eq!(g.edge_count() as u64, m, "m = {m}");
            assert!(g.is_connected());
            assert!(g.diameter().unwrap() <= 2);
            // Complement components: exactly s+1 paths with balanced sizes.
            let comps = g.complement().components();
            assert_eq!(comps.len(), spec.s + 1);
            let mut sizes: Vec<usize> = comps
                .iter()
                .map(|(vs, shape)| {
                    assert!(matches!(shape, crate::graph::ComponentShape::Path { .. }));
                    vs.len()
                })
                .collect();
            sizes.sort_unstable();
            assert_eq!(sizes, spec.parts);
        }
    }

    #[test]
    fn rebalance_traces() {
        let mut parts = vec![3, 8];
        let mv = rebalance_step(&mut parts, 1, 0).unwrap();
        assert_eq!(parts, vec![4, 7]);
        assert!(mv.q_before - mv.q_after >= 2);

        let mut parts = vec![2, 2, 9];
        let moves = rebalance_to_fixpoint(&mut parts).unwrap();
        assert_eq!(parts, vec![4, 4, 5]);
        let mut sorted = parts.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, balanced_partition(13, 3).unwrap());
        for mv in &moves {
            assert!(mv.q_before - mv.q_after >= 2);
        }
        // Q decreases monotonically across the trace.
        for w in moves.windows(2) {
            assert_eq!(w[0].q_after, w[1].q_before);
        }

        let mut bad = vec![3, 4];
        assert!(rebalance_step(&mut bad, 1, 0).is_err());
        let mut bad = vec![1, 5];
        assert!(rebalance_step(&mut bad, 1, 0).is_err());
    }

    #[test]
    fn dominance_grid() {
        assert!(partition_dominance(10, 13, 3).unwrap());
        assert!(partition_dominance(13, 13, 3).unwrap());
        for c in 1..=10usize {
            for n1 in c..=60 {
                for n2 in n1..=60 {
                    assert!(
                        partition_dominance(n1, n2, c).unwrap(),
                        "c={c} n1={n1} n2={n2}"
                    );
                }
            }
        }
    }
}
