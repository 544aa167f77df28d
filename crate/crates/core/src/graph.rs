//! Labeled simple graphs: construction, edge-list and graph6 I/O, complement,
//! component classification, BFS distances, and the J - I + A(H0) identity.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Undirected simple graph on vertex labels `0..n`.
///
/// Edges are stored normalized as `(min, max)` in an ordered set, so iteration
/// is deterministic and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// Shape of one connected component. Classification checks 2-regularity
/// (cycle) before the acyclic test, so K3 counts as C3, never P3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentShape {
    /// Path on `k` vertices; `k = 1` is an isolated vertex.
    Path { k: usize },
    /// Cycle on `len >= 3` vertices.
    Cycle { len: usize },
    /// Anything else.
    Other { size: usize },
}

impl ComponentShape {
    pub fn size(&self) -> usize {
        match *self {
            ComponentShape::Path { k } => k,
            ComponentShape::Cycle { len } => len,
            ComponentShape::Other { size } => size,
        }
    }

    /// Sort key putting cycles first, then paths, then everything else,
    /// each group by ascending size. Matches the canonical config order.
    fn rank(&self) -> (u8, usize) {
        match *self {
            ComponentShape::Cycle { len } => (0, len),
            ComponentShape::Path { k } => (1, k),
            ComponentShape::Other { size } => (2, size),
        }
    }
}

impl fmt::Display for ComponentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ComponentShape::Path { k } => write!(f, "P{k}"),
            ComponentShape::Cycle { len } => write!(f, "C{len}"),
            ComponentShape::Other { size } => write!(f, "Other{size}"),
        }
    }
}

/// All-pairs hop distances. Unreachable pairs are an explicit `None`,
/// never a sentinel value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Option<u32>>,
}

impl DistanceMatrix {
    fn filled(n: usize) -> Self {
        DistanceMatrix { n, d: vec![None; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        self.d[u * self.n + v]
    }

    fn set(&mut self, u: usize, v: usize, val: u32) {
        self.d[u * self.n + v] = Some(val);
    }

    /// True when every pair is reachable, i.e. the graph was connected.
    pub fn is_all_reachable(&self) -> bool {
        self.d.iter().all(|e| e.is_some())
    }

    /// Largest finite entry; `None` for the 0-vertex matrix.
    pub fn max_finite(&self) -> Option<u32> {
        self.d.iter().flatten().copied().max()
    }
}

/// Which hypothesis justified the D = J - I + A(H0) identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityRegime {
    /// H0 is a disjoint union of cycles and paths with at least two
    /// components on n >= 4 vertices (the strong hypothesis set).
    CyclesAndPaths,
    /// Only the weaker fact held: the complement has diameter <= 2.
    DiameterTwoOnly,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Domain(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::Domain(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(Error::Domain(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
        }
        Ok(Graph { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: BTreeSet::new() }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = BTreeSet::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.insert((u, v));
            }
        }
        Graph { n, edges }
    }

    /// Path 0 - 1 - ... - (n-1).
    pub fn path(n: usize) -> Self {
        let edges = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph { n, edges }
    }

    /// Cycle 0 - 1 - ... - (n-1) - 0; requires n >= 3.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("cycle needs >= 3 vertices, got {n}")));
        }
        let mut edges: BTreeSet<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.insert((0, n - 1));
        Ok(Graph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn complement(&self) -> Graph {
        let mut edges = BTreeSet::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.edges.contains(&(u, v)) {
                    edges.insert((u, v));
                }
            }
        }
        Graph { n: self.n, edges }
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex,
    /// each classified as Path, Cycle, or Other.
    pub fn components(&self) -> Vec<(Vec<usize>, ComponentShape)> {
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            let shape = self.classify(&comp, &adj);
            out.push((comp, shape));
        }
        out
    }

    fn classify(&self, comp: &[usize], adj: &[Vec<usize>]) -> ComponentShape {
        let k = comp.len();
        let deg_sum: usize = comp.iter().map(|&v| adj[v].len()).sum();
        let max_deg = comp.iter().map(|&v| adj[v].len()).max().unwrap_or(0);
        // A connected 2-regular graph is a single cycle.
        if k >= 3 && max_deg == 2 && deg_sum == 2 * k {
            return ComponentShape::Cycle { len: k };
        }
        // A connected graph with k-1 edges and max degree <= 2 is a path.
        if max_deg <= 2 && deg_sum == 2 * (k - 1) {
            return ComponentShape::Path { k };
        }
        ComponentShape::Other { size: k }
    }

    /// Canonical multiset of component shapes, e.g. "C3+P4+P4".
    pub fn component_summary(&self) -> String {
        let mut shapes: Vec<ComponentShape> =
            self.components().into_iter().map(|(_, s)| s).collect();
        shapes.sort_by_key(|s| s.rank());
        shapes
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn bfs_distances(&self, src: usize) -> Vec<Option<u32>> {
        let adj = self.adjacency_lists();
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS-exact hop distances between all pairs; unreachable pairs stay `None`.
    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let adj = self.adjacency_lists();
        let mut m = DistanceMatrix::filled(self.n);
        for src in 0..self.n {
            let mut queue = VecDeque::from([src]);
            m.set(src, src, 0);
            while let Some(u) = queue.pop_front() {
                let du = m.get(src, u).unwrap();
                for &w in &adj[u] {
                    if m.get(src, w).is_none() {
                        m.set(src, w, du + 1);
                        queue.push_back(w);
                    }
                }
            }
        }
        m
    }

    /// Max distance over all pairs; errors on disconnected input.
    pub fn diameter(&self) -> Result<u32> {
        let d = self.all_pairs_distances();
        if !d.is_all_reachable() {
            return Err(Error::Hypothesis(
                "diameter undefined: graph is disconnected".into(),
            ));
        }
        Ok(d.max_finite().unwrap_or(0))
    }
}

/// Distance matrix of `complement(h0)` through the identity D = J - I + A(h0):
/// distance 1 across complement edges, 2 across h0 edges.
///
/// Valid exactly when the complement has diameter <= 2, which is checked pair
/// by pair: every h0 edge (u, v) needs a third vertex adjacent to both u and v
/// in the complement. The returned regime records whether the strong
/// cycles-and-paths hypothesis also held.
pub fn distance_matrix_via_complement(h0: &Graph) -> Result<(DistanceMatrix, IdentityRegime)> {
    let n = h0.n;
    // h0 adjacency as a bool table for O(1) membership below.
    let mut adj = vec![false; n * n];
    for (u, v) in h0.edges() {
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    for (u, v) in h0.edges() {
        let ok = (0..n).any(|w| w != u && w != v && !adj[u * n + w] && !adj[v * n + w]);
        if !ok {
            return Err(Error::Hypothesis(format!(
                "complement has distance > 2 between vertices {u} and {v}"
            )));
        }
    }
    let mut m = DistanceMatrix::filled(n);
    for u in 0..n {
        m.set(u, u, 0);
        for v in (u + 1)..n {
            let d = if adj[u * n + v] { 2 } else { 1 };
            m.set(u, v, d);
            m.set(v, u, d);
        }
    }
    let comps = h0.components();
    let strong = n >= 4
        && comps.len() >= 2
        && comps
            .iter()
            .all(|(_, s)| !matches!(s, ComponentShape::Other { .. }));
    let regime = if strong {
        IdentityRegime::CyclesAndPaths
    } else {
        IdentityRegime::DiameterTwoOnly
    };
    Ok((m, regime))
}

// ---------------------------------------------------------------------------
// Text formats.
//
// Edge list: first line "n", then one "u v" pair per line, 0-indexed.
// graph6: standard McKay short form, n < 63, bytes offset by 63, upper
// triangle in column-major order packed into 6-bit chunks.
// ---------------------------------------------------------------------------

/// Parse either format, sniffed by the first byte: a leading ASCII digit
/// means edge list, anything else is treated as graph6. An optional
/// ">>graph6<<" header is accepted and stripped.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let trimmed = text.trim_start();
    match trimmed.bytes().next() {
        None => Err(Error::Parse("empty input".into())),
        Some(b'0'..=b'9') => parse_edge_list(text),
        Some(_) => parse_graph6(text),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("line 1: expected vertex count, got {header:?}")))?;
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    for (lineno, line) in lines {
        let mut it = line.split_whitespace();
        let (a, b) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse(format!(
                    "line {lineno}: expected \"u v\", got {line:?}"
                )))
            }
        };
        let u: usize = a
            .parse()
            .map_err(|_| Error::Parse(format!("line {lineno}: bad vertex {a:?}")))?;
        let v: usize = b
            .parse()
            .map_err(|_| Error::Parse(format!("line {lineno}: bad vertex {b:?}")))?;
        if u == v {
            return Err(Error::Parse(format!("line {lineno}: self-loop at {u}")));
        }
        if u >= n || v >= n {
            return Err(Error::Parse(format!(
                "line {lineno}: vertex out of range for n = {n}"
            )));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::Parse(format!("line {lineno}: duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    Graph::new(n, edges)
}

pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n);
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let mut s = text.trim();
    if let Some(rest) = s.strip_prefix(">>graph6<<") {
        s = rest;
    }
    let bytes = s.as_bytes();
    let first = *bytes
        .first()
        .ok_or_else(|| Error::Parse("empty graph6 string".into()))?;
    if first == b'~' {
        return Err(Error::Parse(
            "graph6 long form (n >= 63) is not supported".into(),
        ));
    }
    if !(63..126).contains(&first) {
        return Err(Error::Parse(format!(
            "byte 0: invalid graph6 size character 0x{first:02x}"
        )));
    }
    let n = (first - 63) as usize;
    let nbits = n * (n.saturating_sub(1)) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != 1 + nbytes {
        return Err(Error::Parse(format!(
            "graph6 for n = {n} needs {} bytes, got {}",
            1 + nbytes,
            bytes.len()
        )));
    }
    let mut bits = Vec::with_capacity(nbytes * 6);
    for (i, &b) in bytes[1..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!(
                "byte {}: invalid graph6 data character 0x{b:02x}",
                i + 1
            )));
        }
        let chunk = b - 63;
        for shift in (0..6).rev() {
            bits.push((chunk >> shift) & 1 == 1);
        }
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(Error::Parse("nonzero padding bits in graph6 data".into()));
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[idx] {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    Graph::new(n, edges)
}

pub fn serialize_graph6(g: &Graph) -> Result<String> {
    let n = g.n;
    if n >= 63 {
        return Err(Error::Domain(format!(
            "graph6 short form only covers n < 63, got {n}"
        )));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let mut bits = vec![false; nbits.next_multiple_of(6)];
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            bits[idx] = g.has_edge(u, v);
            idx += 1;
        }
    }
    let mut out = String::with_capacity(1 + bits.len() / 6);
    out.push((63 + n as u8) as char);
    for chunk in bits.chunks(6) {
        let mut val = 0u8;
        for &b in chunk {
            val = (val << 1) | b as u8;
        }
        out.push((63 + val) as char);
    }
    Ok(out)
}
