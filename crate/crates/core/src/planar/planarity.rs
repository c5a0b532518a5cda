//! Planarity by the Demoucron-Malgrange-Pertuiset face-embedding method on
//! biconnected blocks. A planar answer comes with a rotation system; a
//! non-planar answer comes with a Kuratowski subgraph (a subdivision of
//! K5 or K3,3) obtained by deleting edges while non-planarity persists.

use serde::{Deserialize, Serialize};

use super::RotationSystem;
use crate::graph::{bit, Bits, Graph, Row};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3 contained in the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kuratowski {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Planarity {
    Planar(RotationSystem),
    NonPlanar(Kuratowski),
}

pub fn is_planar(g: &Graph) -> bool {
    embed(g).is_some()
}

/// Decides planarity and returns the matching certificate.
pub fn planarity(g: &Graph) -> Planarity {
    match embed(g) {
        Some(rot) => Planarity::Planar(rot),
        None => Planarity::NonPlanar(kuratowski_subgraph(g)),
    }
}

fn too_dense(g: &Graph) -> bool {
    g.n() >= 3 && g.edge_count() > 3 * g.n() - 6
}

/// A planar rotation system, or `None` when the graph is not planar.
fn embed(g: &Graph) -> Option<RotationSystem> {
    if too_dense(g) {
        return None;
    }
    let n = g.n();
    let mut order: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in blocks(g) {
        if block.len() == 1 {
            let (u, v) = block[0];
            order[u].push(v);
            order[v].push(u);
            continue;
        }
        let faces = embed_block(n, &block)?;
        let local = RotationSystem::from_faces(n, &faces).expect("block faces are consistently oriented");
        for (v, around) in local.order.into_iter().enumerate() {
            order[v].extend(around);
        }
    }
    Some(RotationSystem::new(order))
}

/// Edge sets of the biconnected components (bridges are single-edge blocks).
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut State, u: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for w in s.g.neighbors(u) {
            if Some(w) == parent {
                continue;
            }
            if s.disc[w] == 0 {
                s.stack.push((u, w));
                dfs(s, w, Some(u));
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == (u, w) {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if s.disc[w] < s.disc[u] {
                s.stack.push((u, w));
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
    }
    let n = g.n();
    let mut s = State { g, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for v in 0..n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    s.out
}

/// Oriented faces of a planar embedding of one biconnected block with at
/// least two edges, or `None` if the block is not planar.
fn embed_block(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut adj: Vec<Row> = vec![0; n];
    for &(u, v) in edges {
        adj[u] |= bit(v);
        adj[v] |= bit(u);
    }
    let vertices = adj.iter().enumerate().filter(|(_, r)| **r != 0).fold(0, |m, (v, _)| m | bit(v));

    // Initial cycle through the first edge.
    let (a, b) = edges[0];
    let mut without = adj.clone();
    without[a] &= !bit(b);
    without[b] &= !bit(a);
    let path = shortest_path(&without, b, bit(a), vertices)?;
    let mut cycle = vec![a];
    cycle.extend(path);
    cycle.pop();
    let mut embedded: Vec<Row> = vec![0; n];
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        embedded[u] |= bit(v);
        embedded[v] |= bit(u);
    }
    let mut placed: Row = cycle.iter().fold(0, |m, &v| m | bit(v));
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let total: u32 = adj.iter().map(|r| r.count_ones()).sum();

    while embedded.iter().map(|r| r.count_ones()).sum::<u32>() < total {
        let fragments = fragments(&adj, &embedded, placed, vertices);
        let face_masks: Vec<Row> = faces.iter().map(|f| f.iter().fold(0, |m, &v| m | bit(v))).collect();
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> =
                (0..faces.len()).filter(|&i| face_masks[i] & frag.attachments == frag.attachments).collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_index) = choice.expect("an unembedded edge leaves a fragment");
        let path = fragments[fi].path(&adj);
        for w in path.windows(2) {
            embedded[w[0]] |= bit(w[1]);
            embedded[w[1]] |= bit(w[0]);
            placed |= bit(w[0]) | bit(w[1]);
        }
        let face = faces.swap_remove(face_index);
        let (first, second) = split_face(&face, &path);
        faces.push(first);
        faces.push(second);
    }
    Some(faces)
}

/// A piece of the block not yet embedded: one edge between placed vertices,
/// or a component of unplaced vertices with its attaching edges.
struct Fragment {
    attachments: Row,
    /// Unplaced vertices of the component (zero for a single edge).
    interior: Row,
}

impl Fragment {
    /// A path between two distinct attachments through the fragment.
    fn path(&self, adj: &[Row]) -> Vec<usize> {
        let mut ends = Bits(self.attachments);
        let s = ends.next().unwrap();
        let t = ends.next().unwrap();
        if self.interior == 0 {
            return vec![s, t];
        }
        let mut inner = shortest_path(adj, s, adj[t] & self.interior, self.interior | bit(s))
            .expect("fragment is connected");
        inner.push(t);
        inner
    }
}

fn fragments(adj: &[Row], embedded: &[Row], placed: Row, vertices: Row) -> Vec<Fragment> {
    let mut out = Vec::new();
    for u in Bits(placed) {
        for v in Bits(adj[u] & placed & !embedded[u]) {
            if u < v {
                out.push(Fragment { attachments: bit(u) | bit(v), interior: 0 });
            }
        }
    }
    let mut left = vertices & !placed;
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut comp = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= adj[v] & left & !comp;
            }
            comp |= next;
            frontier = next;
        }
        let attachments = Bits(comp).fold(0, |m, v| m | (adj[v] & placed));
        out.push(Fragment { attachments, interior: comp });
        left &= !comp;
    }
    out
}

/// Vertex path from `s` to some vertex of `targets`, moving only through
/// `allowed` (the start need not be allowed).
fn shortest_path(adj: &[Row], s: usize, targets: Row, allowed: Row) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut seen = bit(s);
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u != s && targets & bit(u) != 0 {
            let mut path = vec![u];
            let mut x = u;
            while x != s {
                x = parent[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for w in Bits(adj[u] & allowed & !seen) {
            seen |= bit(w);
            parent[w] = u;
            queue.push_back(w);
        }
    }
    None
}

/// Splits an oriented face along a path joining two of its vertices; the
/// two new faces traverse the path in opposite directions.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = face.len();
    let s = *path.first().unwrap();
    let t = *path.last().unwrap();
    let i = face.iter().position(|&v| v == s).unwrap();
    let j = face.iter().position(|&v| v == t).unwrap();
    let arc = |from: usize, to: usize| -> Vec<usize> {
        let mut out = Vec::new();
        let mut x = from;
        loop {
            out.push(face[x]);
            if x == to {
                break;
            }
            x = (x + 1) % k;
        }
        out
    };
    let interior = &path[1..path.len() - 1];
    let mut first = arc(i, j);
    first.extend(interior.iter().rev());
    let mut second = arc(j, i);
    second.extend(interior.iter());
    (first, second)
}

fn kuratowski_subgraph(g: &Graph) -> Kuratowski {
    let mut h = g.clone();
    for (u, v) in g.edges() {
        h.remove_edge(u, v);
        if is_planar(&h) {
            h.add_edge(u, v);
        }
    }
    let branch: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) > 2).collect();
    let kind = if branch.len() == 5 { KuratowskiKind::K5 } else { KuratowskiKind::K33 };
    debug_assert!(
        (branch.len() == 5 && branch.iter().all(|&v| h.degree(v) == 4))
            || (branch.len() == 6 && branch.iter().all(|&v| h.degree(v) == 3)),
        "minimal non-planar subgraph has unexpected branch degrees"
    );
    Kuratowski { kind, branch_vertices: branch, edges: h.edges() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::planar::verify_embedding;

    fn assert_planar(g: &Graph) {
        let Planarity::Planar(rot) = planarity(g) else { panic!("expected planar") };
        if g.is_connected() {
            let report = verify_embedding(g, &rot).unwrap();
            assert_eq!(report.euler_characteristic, 2, "{g:?}");
        }
    }

    #[test]
    fn classic_examples() {
        assert!(!is_planar(&complete(5)));
        assert!(!is_planar(&complete_bipartite(3, 3)));
        assert!(!is_planar(&petersen()));
        for g in [complete(4), cube(), octahedron(), cycle(7), path(5), star(6), Graph::empty(3).unwrap()] {
            assert_planar(&g);
        }
        assert_planar(&disjoint_union(&complete(4), &path(3)));
    }

    #[test]
    fn witnesses() {
        let Planarity::NonPlanar(k) = planarity(&complete(5)) else { panic!() };
        assert_eq!(k.kind, KuratowskiKind::K5);
        assert_eq!(k.edges.len(), 10);
        let Planarity::NonPlanar(k) = planarity(&petersen()) else { panic!() };
        assert_eq!(k.kind, KuratowskiKind::K33);
        assert_eq!(k.branch_vertices.len(), 6);
    }

    #[test]
    fn blocks_with_cut_vertices() {
        // Two K4s sharing vertex 3, plus a pendant edge.
        let mut edges = Vec::new();
        for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            edges.push((a, b));
            edges.push((a + 3, b + 3));
        }
        edges.push((6, 7));
        edges.sort();
        edges.dedup();
        let g = Graph::from_edges(8, &edges, &[]).unwrap();
        assert_eq!(blocks(&g).len(), 3);
        assert_planar(&g);
    }

    /// Planar graph counts for n = 5..=8 (OEIS A005470), with every
    /// certificate checked.
    #[test]
    fn planar_counts() {
        use crate::enumerate::{enumerate_graphs, Constraints, SearchOptions};
        use std::sync::atomic::{AtomicU64, Ordering};
        for (n, expected) in [(5, 33), (6, 142), (7, 822), (8, 6966)] {
            let planar = AtomicU64::new(0);
            enumerate_graphs(&Constraints::all(n), &SearchOptions::default(), |g| match planarity(g) {
                Planarity::Planar(rot) => {
                    planar.fetch_add(1, Ordering::Relaxed);
                    if g.is_connected() {
                        assert_eq!(verify_embedding(g, &rot).unwrap().euler_characteristic, 2);
                    }
                }
                Planarity::NonPlanar(k) => {
                    assert!(k.edges.iter().all(|&(u, v)| g.has_edge(u, v)));
                    let sub = Graph::from_edges(n, &k.edges, &[]).unwrap();
                    assert!(!is_planar(&sub));
                }
            })
            .unwrap();
            assert_eq!(planar.into_inner(), expected, "n = {n}");
        }
    }
}
