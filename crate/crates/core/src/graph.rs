//! Bit-row adjacency graphs with optional self-loops.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One adjacency row; bit `v` set means an edge to `v`.
pub type Row = u128;

/// Largest vertex count a [`Graph`] can hold (one [`Row`] per vertex).
pub const MAX_VERTICES: usize = Row::BITS as usize;

/// Index of a vertex inside its owning graph, in `0..n`.
pub type VertexId = usize;

/// A finite undirected graph without multi-edges.
///
/// Adjacency is kept as symmetric bit rows with an empty diagonal. A
/// self-loop at `v` is recorded separately and contributes exactly one to
/// the diagonal entry of the adjacency matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<Row>,
    loops: Row,
}

#[inline]
pub(crate) fn bit(v: usize) -> Row {
    1 << v
}

#[inline]
pub(crate) fn low_mask(n: usize) -> Row {
    if n >= MAX_VERTICES {
        Row::MAX
    } else {
        bit(n) - 1
    }
}

/// Iterates the set bits of a row in increasing order.
#[derive(Clone, Copy)]
pub struct Bits(pub Row);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Graph { n, adj: vec![0; n], loops: 0 })
    }

    /// Builds a graph from unordered vertex pairs and a list of loop vertices.
    /// Repeated pairs collapse to a single edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], loops: &[usize]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfPairInEdgeList(u));
            }
            g.add_edge(u, v);
        }
        for &v in loops {
            g.check_vertex(v)?;
            g.loops |= bit(v);
        }
        Ok(g)
    }

    /// Builds a graph from raw rows. Rows must already be symmetric with an
    /// empty diagonal.
    pub fn from_rows(rows: Vec<Row>) -> Result<Self> {
        let n = rows.len();
        check_size(n)?;
        let g = Graph { n, adj: rows, loops: 0 };
        for u in 0..n {
            if g.adj[u] & !low_mask(n) != 0 {
                return Err(Error::OutOfRange { vertex: 127 - g.adj[u].leading_zeros() as usize, n });
            }
            if g.adj[u] & bit(u) != 0 {
                return Err(Error::SelfPairInEdgeList(u));
            }
            for v in Bits(g.adj[u]) {
                if g.adj[v] & bit(u) == 0 {
                    return Err(Error::Parse(format!("rows are not symmetric at ({u}, {v})")));
                }
            }
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::OutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Row] {
        &self.adj
    }

    #[inline]
    pub fn row(&self, v: usize) -> Row {
        self.adj[v]
    }

    pub fn loop_row(&self) -> Row {
        self.loops
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        self.loops & bit(v) != 0
    }

    pub fn has_loops(&self) -> bool {
        self.loops != 0
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    pub fn neighbors(&self, v: usize) -> Bits {
        Bits(self.adj[v])
    }

    /// Number of incident edges, ignoring any loop.
    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in Bits(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn loop_vertices(&self) -> Vec<usize> {
        Bits(self.loops).collect()
    }

    /// The common degree if every vertex has the same degree (loops ignored).
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Edge complement on the same vertex set.
    pub fn complement(&self) -> Result<Graph> {
        if self.has_loops() {
            return Err(Error::LoopsNotRepresentable);
        }
        let full = low_mask(self.n);
        let adj = (0..self.n).map(|u| !self.adj[u] & full & !bit(u)).collect();
        Ok(Graph { n: self.n, adj, loops: 0 })
    }

    /// True iff a sweep from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        self.component_of(0, low_mask(self.n)) == low_mask(self.n)
    }

    /// Vertices reachable from `start` inside `allowed`.
    pub(crate) fn component_of(&self, start: usize, allowed: Row) -> Row {
        let mut seen = bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Relabels vertices: vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0; self.n];
        let mut loops = 0;
        for u in 0..self.n {
            let mut r = 0;
            for v in Bits(self.adj[u]) {
                r |= bit(perm[v]);
            }
            adj[perm[u]] = r;
            if self.has_loop(u) {
                loops |= bit(perm[u]);
            }
        }
        Graph { n: self.n, adj, loops }
    }

    /// True iff `perm` maps edges to edges and loops to loops.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.n && self.permuted(perm) == *self
    }

    /// Adds a vertex `n` joined to every vertex in `neighbors`.
    pub(crate) fn with_new_vertex(&self, neighbors: Row) -> Graph {
        let n = self.n;
        let mut adj = Vec::with_capacity(n + 1);
        for u in 0..n {
            adj.push(self.adj[u] | if neighbors & bit(u) != 0 { bit(n) } else { 0 });
        }
        adj.push(neighbors);
        Graph { n: n + 1, adj, loops: self.loops }
    }

    /// Deletes vertex `v`, shifting higher indices down by one.
    pub fn without_vertex(&self, v: usize) -> Graph {
        let lo = low_mask(v);
        let squeeze = |r: Row| (r & lo) | ((r >> 1) & !lo);
        let adj = (0..self.n).filter(|&u| u != v).map(|u| squeeze(self.adj[u] & !bit(v))).collect();
        Graph { n: self.n - 1, adj, loops: squeeze(self.loops & !bit(v)) }
    }

    /// True iff the graph is connected and has `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.n
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Graphviz `graph` block; loops are drawn as `v -- v`.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{}\" {{\n", name.replace('"', "\\\""));
        for v in 0..self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        for v in self.loop_vertices() {
            out.push_str(&format!("  {v} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VERTICES {
        Err(Error::SizeExceeded { n, max: MAX_VERTICES })
    } else {
        Ok(())
    }
}

/// JSON form of a graph: `{n, edges: [[u, v], ...], loops: [v, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub loops: Vec<usize>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            loops: g.loop_vertices(),
        }
    }
}

impl TryFrom<&GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: &GraphJson) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.n, &edges, &j.loops)
    }
}

/// Small named graphs used throughout tests and examples.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &edges, &[]).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges, &[]).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges, &[]).unwrap()
    }

    /// Path on `n` vertices with a self-loop on the last vertex.
    pub fn loop_path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges, &[n - 1]).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges, &[]).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Graph::from_edges(a + b, &edges, &[]).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges, &[]).unwrap()
    }

    pub fn cube() -> Graph {
        let mut edges = Vec::new();
        for u in 0..8usize {
            for b in 0..3 {
                let v = u ^ (1 << b);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(8, &edges, &[]).unwrap()
    }

    /// K6 minus the perfect matching {0,1}, {2,3}, {4,5}.
    pub fn octahedron() -> Graph {
        let edges: Vec<_> =
            (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).filter(|&(u, v)| u / 2 != v / 2).collect();
        Graph::from_edges(6, &edges, &[]).unwrap()
    }

    /// Two vertex-disjoint copies of `g`.
    pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
        let mut edges = a.edges();
        edges.extend(b.edges().into_iter().map(|(u, v)| (u + a.n(), v + a.n())));
        Graph::from_edges(a.n() + b.n(), &edges, &[]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn build_triangle() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], &[]).unwrap();
        assert_eq!(g.degrees(), vec![2, 2, 2]);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn build_loop_path() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)], &[3]).unwrap();
        assert!(g.has_loop(3));
        assert!(!g.has_loop(0));
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn build_single_vertex() {
        let g = Graph::from_edges(1, &[], &[]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(g.is_connected());
    }

    #[test]
    fn build_errors() {
        assert_eq!(Graph::from_edges(3, &[(0, 3)], &[]), Err(Error::OutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::from_edges(3, &[(1, 1)], &[]), Err(Error::SelfPairInEdgeList(1)));
        assert!(matches!(Graph::from_edges(129, &[], &[]), Err(Error::SizeExceeded { .. })));
        assert!(Graph::from_edges(128, &[(0, 127)], &[]).is_ok());
    }

    #[test]
    fn complement_examples() {
        let k4 = complete(4);
        assert_eq!(k4.complement().unwrap().edge_count(), 0);
        let c5 = cycle(5);
        let c5c = c5.complement().unwrap();
        assert_eq!(c5c.regular_degree(), Some(2));
        assert!(c5c.is_connected());
        let t5 = petersen().complement().unwrap();
        assert_eq!(t5.n(), 10);
        assert_eq!(t5.regular_degree(), Some(6));
        assert_eq!(loop_path(4).complement(), Err(Error::LoopsNotRepresentable));
    }

    #[test]
    fn connectivity_examples() {
        assert!(cycle(5).is_connected());
        let two = disjoint_union(&complete(3), &complete(3));
        assert!(!two.is_connected());
    }

    #[test]
    fn vertex_deletion_shifts_labels() {
        let p = path(4);
        let q = p.without_vertex(1);
        assert_eq!(q.edges(), vec![(1, 2)]);
        let r = p.with_new_vertex(0b1001);
        assert_eq!(r.degree(4), 2);
        assert!(r.has_edge(3, 4));
    }

    #[test]
    fn girth_values() {
        assert_eq!(petersen().girth(), Some(5));
        assert_eq!(cube().girth(), Some(4));
        assert_eq!(path(5).girth(), None);
        assert_eq!(octahedron().girth(), Some(3));
    }

    #[test]
    fn json_round_trip() {
        let g = loop_path(5);
        let j = GraphJson::from(&g);
        let text = serde_json::to_string(&j).unwrap();
        let back: GraphJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Graph::try_from(&back).unwrap(), g);
    }
}
