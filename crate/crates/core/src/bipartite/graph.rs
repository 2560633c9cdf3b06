//! Bounded-degree graphs in the adjacency-list model.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::oracle::{AdjacencyList, CountingOracle};

/// Undirected simple graph with degrees at most `d`. The oracle answers
/// `(v, i)` with the `i`-th entry of `adj[v]`, or ⊥ past its end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedDegreeGraph {
    pub n: usize,
    pub d: usize,
    pub adj: Vec<Vec<usize>>,
}

impl BoundedDegreeGraph {
    pub fn new(d: usize, adj: Vec<Vec<usize>>) -> Result<Self> {
        let n = adj.len();
        if d == 0 {
            return Err(Error::Config("degree bound must be positive".into()));
        }
        for (v, ns) in adj.iter().enumerate() {
            if ns.len() > d {
                return Err(Error::Config(format!("vertex {v} has degree {} > {d}", ns.len())));
            }
            for (i, &w) in ns.iter().enumerate() {
                if w >= n {
                    return Err(Error::Config(format!("vertex {v} lists {w}, outside [0, {n})")));
                }
                if w == v {
                    return Err(Error::Config(format!("self-loop at {v}")));
                }
                if ns[..i].contains(&w) {
                    return Err(Error::Config(format!("parallel edge {v}-{w}")));
                }
                if !adj[w].contains(&v) {
                    return Err(Error::Config(format!("{w} listed under {v} but not vice versa")));
                }
            }
        }
        Ok(Self { n, d, adj })
    }

    pub fn from_edges(n: usize, d: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Config(format!("edge {a}-{b} outside [0, {n})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        Self::new(d, adj)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Each edge once, as `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, ns) in self.adj.iter().enumerate() {
            for &b in ns {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn payload(&self) -> AdjacencyList {
        AdjacencyList {
            degree_bound: self.d,
            neighbours: self.adj.clone(),
        }
    }

    pub fn oracle(&self) -> CountingOracle<AdjacencyList> {
        CountingOracle::new(self.payload())
    }

    /// A proper 2-colouring, if one exists.
    pub fn two_colouring(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[v];
                        stack.push(w);
                    } else if colour[w] == colour[v] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_some()
    }

    /// Edges with both endpoints on the same side of `side`.
    pub fn monochromatic_edges(&self, side: &[u8]) -> usize {
        self.edges().iter().filter(|&&(a, b)| side[a] == side[b]).count()
    }

    /// Distance to bipartiteness as a fraction of the `n·d` pairs `(v, i)`:
    /// deleting an edge changes two entries. Exhaustive over `2^{n−1}`
    /// bipartitions in Gray-code order; `None` above 24 vertices.
    pub fn distance_to_bipartite(&self) -> Option<f64> {
        if self.n > 24 {
            return None;
        }
        if self.n <= 1 {
            return Some(0.0);
        }
        let mut side = vec![0u8; self.n];
        let mut mono = self.edges().len() as i64;
        let mut best = mono;
        // vertex 0 stays on side 0
        for g in 1u64..1 << (self.n - 1) {
            let v = g.trailing_zeros() as usize + 1;
            for &w in &self.adj[v] {
                mono += if side[w] == side[v] { -1 } else { 1 };
            }
            side[v] ^= 1;
            best = best.min(mono);
        }
        Some(2.0 * best as f64 / (self.n * self.d) as f64)
    }

    /// Upper bound on the distance from greedy local search started at a
    /// BFS colouring: move any vertex with more same-side than cross-side
    /// neighbours.
    pub fn distance_upper_bound(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    }
                }
            }
        }
        loop {
            let mut moved = false;
            for v in 0..self.n {
                let same = self.adj[v].iter().filter(|&&w| side[w] == side[v]).count();
                if 2 * same > self.degree(v) {
                    side[v] ^= 1;
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        2.0 * self.monochromatic_edges(&side) as f64 / (self.n * self.d) as f64
    }

    /// Lines `v: w1 w2 …`, preceded by `# d = <bound>`.
    pub fn to_text(&self) -> String {
        let mut s = format!("# d = {}\n", self.d);
        for (v, ns) in self.adj.iter().enumerate() {
            let ws: Vec<String> = ns.iter().map(|w| w.to_string()).collect();
            writeln!(s, "{v}: {}", ws.join(" ")).unwrap();
        }
        s
    }

    /// Parses [`Self::to_text`] output. Without a `# d = …` line the bound is
    /// the maximum degree. Vertices must appear in order `0, 1, …`.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut d = None;
        let mut adj = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(v) = rest.trim().strip_prefix("d =") {
                    d = Some(v.trim().parse::<usize>().map_err(|_| {
                        Error::Parse(format!("line {}: bad degree bound", lineno + 1))
                    })?);
                }
                continue;
            }
            let (head, tail) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {}: expected `v: w1 w2 …`", lineno + 1)))?;
            let v: usize = head
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad vertex {head:?}", lineno + 1)))?;
            if v != adj.len() {
                return Err(Error::Parse(format!(
                    "line {}: vertex {v} out of order, expected {}",
                    lineno + 1,
                    adj.len()
                )));
            }
            let ns = tail
                .split_whitespace()
                .map(|w| {
                    w.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("line {}: bad neighbour {w:?}", lineno + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            adj.push(ns);
        }
        let d = d.unwrap_or_else(|| adj.iter().map(Vec::len).max().unwrap_or(1).max(1));
        Self::new(d, adj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> BoundedDegreeGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        BoundedDegreeGraph::from_edges(n, 2, &edges).unwrap()
    }

    #[test]
    fn cycles() {
        assert!(cycle(8).is_bipartite());
        assert!(!cycle(7).is_bipartite());
        // one edge of seven, two entries of fourteen
        assert_eq!(cycle(7).distance_to_bipartite(), Some(2.0 / 14.0));
        assert_eq!(cycle(8).distance_to_bipartite(), Some(0.0));
    }

    #[test]
    fn triangles_need_one_deletion_each() {
        let edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
        let g = BoundedDegreeGraph::from_edges(6, 2, &edges).unwrap();
        assert_eq!(g.distance_to_bipartite(), Some(4.0 / 12.0));
        assert!(g.distance_upper_bound() >= 4.0 / 12.0);
    }

    #[test]
    fn rejects_asymmetric_or_overfull_lists() {
        assert!(BoundedDegreeGraph::new(2, vec![vec![1], vec![]]).is_err());
        assert!(BoundedDegreeGraph::new(1, vec![vec![1, 2], vec![0], vec![0]]).is_err());
        assert!(BoundedDegreeGraph::new(2, vec![vec![0]]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = cycle(5);
        assert_eq!(BoundedDegreeGraph::from_text(&g.to_text()).unwrap(), g);
        assert!(BoundedDegreeGraph::from_text("1: 0\n").is_err());
        assert!(BoundedDegreeGraph::from_text("0: x\n").is_err());
    }

    #[test]
    fn oracle_answers_bottom_past_degree() {
        let g = cycle(4);
        let o = g.oracle();
        assert_eq!(o.read((0, 1)), Some(3));
        assert_eq!(o.queries(), 1);
    }
}
