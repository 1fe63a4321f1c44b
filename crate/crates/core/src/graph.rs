//! Connected simple graphs, named families, edge-list parsing and closed-ball queries.
//!
//! Vertices are 0-based internally. Everything that crosses the I/O boundary
//! (edge-list files, CLI output) is 1-based so that vertex `j` of the path
//! `L_n` keeps its usual label.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::Measure;

/// Named graph families with a known least doubling constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    Cycle,
    Star,
    Complete,
}

impl Family {
    pub fn min_size(self) -> usize {
        match self {
            Family::Path | Family::Complete => 1,
            Family::Star => 2,
            Family::Cycle => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Complete => "complete",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            "star" => Ok(Family::Star),
            "complete" => Ok(Family::Complete),
            other => Err(Error::invalid(format!("unknown graph family `{other}`"))),
        }
    }
}

/// A finite connected simple graph stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from 0-based edges, checking simplicity and connectivity.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("graph must have at least one vertex"));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({}, {}) out of range for {n} vertices",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {}", u + 1)));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (v, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if nbrs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!(
                    "duplicate edge at vertex {}",
                    v + 1
                )));
            }
        }
        let g = Graph { adjacency };
        if !g.is_connected() {
            return Err(Error::invalid("graph is disconnected"));
        }
        Ok(g)
    }

    pub fn named(family: Family, n: usize) -> Result<Self> {
        build_named(family, n)
    }

    pub fn path(n: usize) -> Result<Self> {
        build_named(Family::Path, n)
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as 0-based pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    fn is_connected(&self) -> bool {
        bfs(self, 0).iter().all(|d| *d != u32::MAX)
    }

    /// Breadth-first distances from `source`; unreachable vertices get `u32::MAX`.
    pub fn bfs_distances(&self, source: usize) -> Vec<u32> {
        bfs(self, source)
    }
}

fn bfs(g: &Graph, source: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.order()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Canonical member of a named family. The star's center is vertex index 0.
pub fn build_named(family: Family, n: usize) -> Result<Graph> {
    if n < family.min_size() {
        return Err(Error::invalid(format!(
            "{family} graph needs at least {} vertices, got {n}",
            family.min_size()
        )));
    }
    let edges: Vec<(usize, usize)> = match family {
        Family::Path => (0..n.saturating_sub(1)).map(|j| (j, j + 1)).collect(),
        Family::Cycle => (0..n).map(|j| (j, (j + 1) % n)).collect(),
        Family::Star => (1..n).map(|j| (0, j)).collect(),
        Family::Complete => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
    };
    Graph::from_edges(n, &edges)
}

/// Parses the edge-list format: a header `n m`, then `m` lines `u v` with
/// `1 <= u < v <= n`. Lines starting with `#` and blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header line `n m`"))?;
    let (n, m) = parse_pair(header_line, header)?;
    if n == 0 {
        return Err(Error::parse(header_line, "vertex count must be positive"));
    }

    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut last_line = header_line;
    let mut count = 0;
    for (line, body) in lines {
        last_line = line;
        count += 1;
        if count > m {
            return Err(Error::parse(
                line,
                format!("more edges than the {m} declared in the header"),
            ));
        }
        let (u, v) = parse_pair(line, body)?;
        if u == v {
            return Err(Error::parse(line, format!("self-loop at vertex {u}")));
        }
        if u < 1 || v < 1 || u > n || v > n {
            return Err(Error::parse(
                line,
                format!("vertex index out of range 1..={n} in edge `{u} {v}`"),
            ));
        }
        let (a, b) = (u.min(v) - 1, u.max(v) - 1);
        if adjacency[a].contains(&b) {
            return Err(Error::parse(line, format!("duplicate edge `{u} {v}`")));
        }
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    if count < m {
        return Err(Error::parse(
            last_line,
            format!("header declares {m} edges but only {count} were given"),
        ));
    }
    for nbrs in &mut adjacency {
        nbrs.sort_unstable();
    }
    let g = Graph { adjacency };
    if !g.is_connected() {
        return Err(Error::parse(last_line, "graph is disconnected"));
    }
    Ok(g)
}

fn parse_pair(line: usize, body: &str) -> Result<(usize, usize)> {
    let mut it = body.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
        tok.parse::<usize>()
            .map_err(|_| Error::parse(line, format!("`{tok}` is not a nonnegative integer")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if it.next().is_some() {
        return Err(Error::parse(line, "expected exactly two fields"));
    }
    Ok((a, b))
}

/// All-pairs distances with per-center distance-sorted vertex orderings.
///
/// `ball_size(x, r)` is `|B(x, r)|`; the first `ball_size(x, r)` entries of
/// `order(x)` are exactly the vertices of the closed ball `B(x, r)`.
#[derive(Debug, Clone)]
pub struct BallIndex {
    n: usize,
    dist: Vec<u32>,
    order: Vec<u32>,
    // sizes[x][r] = |B(x, r)| for r <= eccentricity(x)
    sizes: Vec<Vec<usize>>,
    diameter: u32,
}

impl BallIndex {
    pub fn new(g: &Graph) -> Self {
        distance_table(g)
    }

    pub fn order_n(&self) -> usize {
        self.n
    }

    pub fn diameter(&self) -> usize {
        self.diameter as usize
    }

    pub fn dist(&self, x: usize, y: usize) -> usize {
        self.dist[x * self.n + y] as usize
    }

    pub fn order(&self, x: usize) -> &[u32] {
        &self.order[x * self.n..(x + 1) * self.n]
    }

    pub fn eccentricity(&self, x: usize) -> usize {
        self.sizes[x].len() - 1
    }

    pub fn ball_size(&self, x: usize, r: usize) -> usize {
        let sizes = &self.sizes[x];
        sizes[r.min(sizes.len() - 1)]
    }

    pub fn ball(&self, x: usize, r: usize) -> &[u32] {
        &self.order(x)[..self.ball_size(x, r)]
    }

    /// Largest radius `k` entering the doubling quotients: `ceil((diam - 1) / 2)`.
    pub fn max_doubling_radius(&self) -> usize {
        (self.diameter() as usize).saturating_sub(1).div_ceil(2)
    }

    /// `mu(B(x, r))` by direct summation over the ball.
    pub fn ball_mass(&self, mu: &Measure, x: usize, r: usize) -> f64 {
        self.ball(x, r).iter().map(|&v| mu[v as usize]).sum()
    }
}

/// Breadth-first search from every vertex.
pub fn distance_table(g: &Graph) -> BallIndex {
    let n = g.order();
    let mut dist = Vec::with_capacity(n * n);
    let mut order = Vec::with_capacity(n * n);
    let mut sizes = Vec::with_capacity(n);
    let mut diameter = 0;
    for x in 0..n {
        let row = bfs(g, x);
        let mut perm: Vec<u32> = (0..n as u32).collect();
        perm.sort_by_key(|&v| (row[v as usize], v));
        let ecc = row[*perm.last().expect("nonempty graph") as usize];
        diameter = diameter.max(ecc);
        let mut counts = vec![0usize; ecc as usize + 1];
        for &d in &row {
            counts[d as usize] += 1;
        }
        let mut acc = 0;
        for c in counts.iter_mut() {
            acc += *c;
            *c = acc;
        }
        dist.extend_from_slice(&row);
        order.extend_from_slice(&perm);
        sizes.push(counts);
    }
    BallIndex {
        n,
        dist,
        order,
        sizes,
        diameter,
    }
}

/// Prefix sums of a measure along every center's distance ordering, giving
/// O(1) ball-mass queries.
#[derive(Debug, Clone)]
pub struct BallMasses<'a> {
    index: &'a BallIndex,
    prefix: Vec<f64>,
}

impl<'a> BallMasses<'a> {
    pub fn new(index: &'a BallIndex, mu: &Measure) -> Self {
        let n = index.n;
        assert_eq!(mu.len(), n, "measure size does not match graph");
        let mut prefix = Vec::with_capacity(n * (n + 1));
        for x in 0..n {
            let mut acc = 0.0;
            prefix.push(0.0);
            for &v in index.order(x) {
                acc += mu[v as usize];
                prefix.push(acc);
            }
        }
        BallMasses { index, prefix }
    }

    pub fn mass(&self, x: usize, r: usize) -> f64 {
        self.prefix[x * (self.index.n + 1) + self.index.ball_size(x, r)]
    }
}

/// `mu(B(x, r))`, the closed-ball mass.
pub fn ball_mass(index: &BallIndex, mu: &Measure, x: usize, r: usize) -> f64 {
    index.ball_mass(mu, x, r)
}
