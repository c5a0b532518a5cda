//! Automorphism orbits and canonical forms by individualization-refinement.
//!
//! The search tree is the usual one: refine an ordered partition to the
//! coarsest equitable partition, individualize a vertex of the first
//! smallest non-singleton cell, repeat until the partition is discrete. Each
//! discrete leaf induces a relabeling. Leaves that give identical relabeled
//! graphs yield automorphisms, which prune the remaining tree both by
//! backjumping and by skipping children that lie in an orbit already
//! explored. The canonical leaf is the one whose relabeled graph has the
//! smallest graph6 string.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, low_mask, Bits, Graph, Row, VertexId};
use crate::graph6::to_graph6;
use crate::partition::Partition;
use crate::walk::profile_classes;

/// Vertex colouring: `classes[v]` is the colour of `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub classes: Vec<usize>,
}

impl Coloring {
    pub fn uniform(n: usize) -> Self {
        Coloring { classes: vec![0; n] }
    }

    pub fn partition(&self) -> Partition {
        Partition::from_labels(&self.classes)
    }
}

/// Ordered partition of the vertex set, one bit mask per cell.
#[derive(Clone, Debug)]
struct Cells(Vec<Row>);

/// Adjacency rows with each loop counted as a self-neighbour.
fn matrix_rows(g: &Graph) -> Vec<Row> {
    (0..g.n()).map(|v| g.row(v) | (g.loop_row() & bit(v))).collect()
}

impl Cells {
    /// Cells ordered by colour value.
    fn from_colors(colors: &[usize]) -> Self {
        let mut keys: Vec<usize> = colors.to_vec();
        keys.sort_unstable();
        keys.dedup();
        let mut cells = vec![0 as Row; keys.len()];
        for (v, c) in colors.iter().enumerate() {
            cells[keys.binary_search(c).unwrap()] |= bit(v);
        }
        Cells(cells)
    }

    fn is_discrete(&self, n: usize) -> bool {
        self.0.len() == n
    }

    /// Splits cells by neighbour counts into each splitter until stable.
    fn refine(&mut self, rows: &[Row], mut queue: VecDeque<Row>) {
        let mut scratch: Vec<(u32, usize)> = Vec::new();
        while let Some(w) = queue.pop_front() {
            let mut i = 0;
            while i < self.0.len() {
                let c = self.0[i];
                if c & (c - 1) == 0 {
                    i += 1;
                    continue;
                }
                scratch.clear();
                let mut uniform = true;
                let mut first = None;
                for v in Bits(c) {
                    let k = (rows[v] & w).count_ones();
                    match first {
                        None => first = Some(k),
                        Some(f) if f != k => uniform = false,
                        _ => {}
                    }
                    scratch.push((k, v));
                }
                if uniform {
                    i += 1;
                    continue;
                }
                scratch.sort_unstable();
                let mut fragments: Vec<Row> = Vec::new();
                let mut last = u32::MAX;
                for &(k, v) in &scratch {
                    if k != last {
                        fragments.push(0);
                        last = k;
                    }
                    *fragments.last_mut().unwrap() |= bit(v);
                }
                let count = fragments.len();
                queue.extend(fragments.iter().copied());
                self.0.splice(i..=i, fragments);
                i += count;
            }
        }
    }

    fn refine_all(&mut self, rows: &[Row]) {
        let queue = self.0.iter().copied().collect();
        self.refine(rows, queue);
    }

    /// Index of the first smallest non-singleton cell.
    fn target(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for (i, c) in self.0.iter().enumerate() {
            let size = c.count_ones();
            if size > 1 && best.is_none_or(|(s, _)| size < s) {
                best = Some((size, i));
            }
        }
        best.map(|(_, i)| i)
    }

    fn individualize(&self, cell: usize, v: usize, rows: &[Row]) -> Cells {
        let mut next = Vec::with_capacity(self.0.len() + 1);
        next.extend_from_slice(&self.0[..cell]);
        next.push(bit(v));
        next.push(self.0[cell] & !bit(v));
        next.extend_from_slice(&self.0[cell + 1..]);
        let mut cells = Cells(next);
        cells.refine(rows, VecDeque::from([bit(v)]));
        cells
    }
}

/// Coarsest equitable colouring refining `initial`, with classes numbered by
/// their smallest vertex.
pub fn equitable_refinement(g: &Graph, initial: &Coloring) -> Coloring {
    assert_eq!(initial.classes.len(), g.n());
    let rows = matrix_rows(g);
    let mut cells = Cells::from_colors(&initial.classes);
    cells.refine_all(&rows);
    let mut labels = vec![0; g.n()];
    for (i, c) in cells.0.iter().enumerate() {
        for v in Bits(*c) {
            labels[v] = i;
        }
    }
    Coloring { classes: Partition::from_labels(&labels).labels() }
}

struct Leaf {
    /// `order[i]` is the vertex placed at position `i`.
    order: Vec<usize>,
    key: Vec<Row>,
    path: Vec<usize>,
}

/// Graph6-order key of the graph relabeled by `order`, plus its loop row.
fn leaf_key(g: &Graph, order: &[usize]) -> Vec<Row> {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut key = Vec::with_capacity(n + 1);
    let mut loops: Row = 0;
    for (j, &u) in order.iter().enumerate() {
        let mut r: Row = 0;
        for v in Bits(g.row(u)) {
            r |= bit(pos[v]);
        }
        key.push((r & low_mask(j)).reverse_bits());
        if g.has_loop(u) {
            loops |= bit(j);
        }
    }
    key.push(loops);
    key
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Orbit partition generated by `generators`.
pub fn orbits_of(n: usize, generators: &[Vec<usize>]) -> Partition {
    let mut uf = UnionFind::new(n);
    for g in generators {
        for (v, &w) in g.iter().enumerate() {
            uf.union(v, w);
        }
    }
    let labels: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    Partition::from_labels(&labels)
}

const NO_JUMP: usize = usize::MAX;

struct Search<'g> {
    g: &'g Graph,
    rows: Vec<Row>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl<'g> Search<'g> {
    fn explore(&mut self, cells: &Cells, path: &mut Vec<usize>) -> usize {
        let n = self.g.n();
        let Some(target) = cells.target() else {
            debug_assert!(cells.is_discrete(n));
            return self.leaf(cells, path);
        };
        let depth = path.len();
        let mut explored: Vec<usize> = Vec::new();
        let mut uf_gens = usize::MAX;
        let mut uf = UnionFind::new(0);
        for v in Bits(cells.0[target]) {
            if !explored.is_empty() {
                if uf_gens != self.generators.len() {
                    uf = UnionFind::new(n);
                    for gen in self.generators.iter().filter(|gen| path.iter().all(|&p| gen[p] == p)) {
                        for (x, &y) in gen.iter().enumerate() {
                            uf.union(x, y);
                        }
                    }
                    uf_gens = self.generators.len();
                }
                let root = uf.find(v);
                if explored.iter().any(|&e| uf.find(e) == root) {
                    continue;
                }
            }
            let child = cells.individualize(target, v, &self.rows);
            path.push(v);
            let jump = self.explore(&child, path);
            path.pop();
            explored.push(v);
            if jump < depth {
                return jump;
            }
        }
        NO_JUMP
    }

    fn leaf(&mut self, cells: &Cells, path: &[usize]) -> usize {
        let order: Vec<usize> = cells.0.iter().map(|c| c.trailing_zeros() as usize).collect();
        let key = leaf_key(self.g, &order);
        let leaf = Leaf { order, key, path: path.to_vec() };
        let Some(first) = &self.first else {
            self.best = Some(Leaf { order: leaf.order.clone(), key: leaf.key.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return NO_JUMP;
        };
        if first.key == leaf.key {
            let first_order = first.order.clone();
            let jump = common_prefix(&first.path, &leaf.path);
            self.record(&first_order, &leaf.order);
            return jump;
        }
        let best = self.best.as_ref().unwrap();
        match leaf.key.cmp(&best.key) {
            std::cmp::Ordering::Equal => {
                let best_order = best.order.clone();
                let jump = common_prefix(&best.path, &leaf.path);
                self.record(&best_order, &leaf.order);
                jump
            }
            std::cmp::Ordering::Less => {
                self.best = Some(leaf);
                NO_JUMP
            }
            std::cmp::Ordering::Greater => NO_JUMP,
        }
    }

    /// Stores the automorphism sending `from[i]` to `to[i]`.
    fn record(&mut self, from: &[usize], to: &[usize]) {
        let mut perm = vec![0; from.len()];
        for (&a, &b) in from.iter().zip(to) {
            perm[a] = b;
        }
        assert!(self.g.is_automorphism(&perm), "search produced a non-automorphism");
        if perm.iter().enumerate().any(|(i, &p)| i != p) {
            self.generators.push(perm);
        }
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Result of one full search from an initial colouring.
#[derive(Clone, Debug)]
pub(crate) struct SearchOutcome {
    /// `order[i]` is the vertex that receives canonical label `i`.
    pub order: Vec<usize>,
    pub generators: Vec<Vec<usize>>,
}

impl SearchOutcome {
    pub fn orbits(&self, n: usize) -> Partition {
        orbits_of(n, &self.generators)
    }
}

/// Runs the search; `colors` must be an isomorphism-invariant colouring for
/// the canonical leaf to be meaningful.
pub(crate) fn run_search(g: &Graph, colors: &[usize]) -> SearchOutcome {
    let rows = matrix_rows(g);
    let mut cells = Cells::from_colors(colors);
    cells.refine_all(&rows);
    let mut search = Search { g, rows, first: None, best: None, generators: Vec::new() };
    search.explore(&cells, &mut Vec::new());
    let best = search.best.expect("search visits at least one leaf");
    SearchOutcome { order: best.order, generators: search.generators }
}

/// Vertex orbits of the automorphism group together with the generators
/// found while computing them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Automorphisms {
    pub orbits: Partition,
    pub generators: Vec<Vec<usize>>,
}

/// Orbits of `Aut(g)`. The search starts from the closed-walk colouring,
/// so every orbit lies inside one cospectral class by construction of the
/// starting partition, and the generators are checked automorphisms.
pub fn automorphism_orbits(g: &Graph) -> Automorphisms {
    let profile = profile_classes(g);
    let colors: Vec<usize> =
        (0..g.n()).map(|v| 2 * profile[v] + usize::from(g.has_loop(v))).collect();
    let outcome = run_search(g, &colors);
    Automorphisms { orbits: outcome.orbits(g.n()), generators: outcome.generators }
}

pub fn are_similar(g: &Graph, a: VertexId, b: VertexId) -> bool {
    assert!(a < g.n() && b < g.n(), "vertex out of range");
    a == b || automorphism_orbits(g).orbits.same_block(a, b)
}

pub fn is_vertex_transitive(g: &Graph) -> bool {
    automorphism_orbits(g).orbits.len() == 1
}

/// Canonical representative of the isomorphism class of a simple graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    /// graph6 line of the canonically relabeled graph.
    pub bytes: String,
    /// `relabeling[v]` is the canonical label of vertex `v`.
    pub relabeling: Vec<usize>,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    if g.has_loops() {
        return Err(Error::LoopsNotRepresentable);
    }
    let outcome = run_search(g, &vec![0; g.n()]);
    let mut relabeling = vec![0; g.n()];
    for (i, &v) in outcome.order.iter().enumerate() {
        relabeling[v] = i;
    }
    let bytes = to_graph6(&g.permuted(&relabeling))?;
    Ok(CanonicalForm { bytes, relabeling })
}

/// The canonically relabeled graph.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let form = canonical_form(g)?;
    Ok(g.permuted(&form.relabeling))
}

/// Orbits by testing every vertex permutation (`n <= 8`).
pub fn brute_force_orbits(g: &Graph) -> Result<Partition> {
    let n = g.n();
    if n > 8 {
        return Err(Error::TooLarge(format!("brute-force orbits need n <= 8, got {n}")));
    }
    let mut uf = UnionFind::new(n);
    let mut perm: Vec<usize> = (0..n).collect();
    // Heap's algorithm.
    let mut c = vec![0usize; n];
    let visit = |p: &[usize], uf: &mut UnionFind| {
        if g.is_automorphism(p) {
            for (v, &w) in p.iter().enumerate() {
                uf.union(v, w);
            }
        }
    };
    visit(&perm, &mut uf);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm, &mut uf);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    let labels: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    Ok(Partition::from_labels(&labels))
}

/// JSON summary: orbits, generators and canonical graph6.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub orbits: Vec<Vec<usize>>,
    pub generators: Vec<Vec<usize>>,
    pub canonical_g6: Option<String>,
}

pub fn symmetry_report(g: &Graph) -> SymmetryReport {
    let aut = automorphism_orbits(g);
    SymmetryReport {
        orbits: aut.orbits.blocks().to_vec(),
        generators: aut.generators,
        canonical_g6: canonical_form(g).ok().map(|c| c.bytes),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph6::parse_graph6;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn classes(g: &Graph) -> Vec<Vec<usize>> {
        equitable_refinement(g, &Coloring::uniform(g.n())).partition().blocks().to_vec()
    }

    #[test]
    fn refinement_examples() {
        assert_eq!(classes(&star(3)), vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(classes(&cycle(6)), vec![vec![0, 1, 2, 3, 4, 5]]);
        assert_eq!(classes(&path(4)), vec![vec![0, 3], vec![1, 2]]);
        let c = equitable_refinement(&path(4), &Coloring::uniform(4));
        assert_eq!(c.classes, vec![0, 1, 1, 0]);
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(automorphism_orbits(&star(3)).orbits.len(), 2);
        assert_eq!(automorphism_orbits(&petersen()).orbits.len(), 1);
        assert!(is_vertex_transitive(&cycle(7)));
        assert!(!is_vertex_transitive(&star(3)));
        let p5 = path(5);
        assert!(are_similar(&p5, 0, 4));
        assert!(!are_similar(&p5, 1, 2));
        assert!(is_vertex_transitive(&Graph::empty(9).unwrap()));
        assert!(is_vertex_transitive(&complete(9)));
    }

    #[test]
    fn generators_are_automorphisms() {
        for g in [petersen(), cube(), octahedron(), complete_bipartite(3, 4), Graph::empty(7).unwrap()] {
            let aut = automorphism_orbits(&g);
            for gen in &aut.generators {
                assert!(g.is_automorphism(gen));
            }
        }
    }

    #[test]
    fn loops_respected() {
        let g = loop_path(4);
        let aut = automorphism_orbits(&g);
        assert_eq!(aut.orbits.len(), 4);
        assert_eq!(brute_force_orbits(&g).unwrap(), aut.orbits);
        assert_eq!(canonical_form(&g), Err(Error::LoopsNotRepresentable));
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_orbits(&star(3)).unwrap(), automorphism_orbits(&star(3)).orbits);
        assert_eq!(brute_force_orbits(&cycle(6)).unwrap().len(), 1);
        assert!(matches!(brute_force_orbits(&petersen()), Err(Error::TooLarge(_))));
    }

    #[test]
    fn canonical_invariance() {
        let k4 = complete(4);
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut p: Vec<usize> = (0..4).collect();
        fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == 1 {
                out.push(p.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, p, out);
                if k % 2 == 0 { p.swap(i, k - 1) } else { p.swap(0, k - 1) }
            }
        }
        heap(4, &mut p, &mut perms);
        assert_eq!(perms.len(), 24);
        for perm in &perms {
            assert_eq!(canonical_form(&k4.permuted(perm)).unwrap().bytes, "C~");
        }
        assert_ne!(canonical_form(&path(4)).unwrap().bytes, canonical_form(&star(3)).unwrap().bytes);

        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for g in [petersen(), cube(), complete_bipartite(2, 5)] {
            let base = canonical_form(&g).unwrap();
            let canon = g.permuted(&base.relabeling);
            assert_eq!(parse_graph6(&base.bytes).unwrap(), canon);
            for _ in 0..50 {
                let mut perm: Vec<usize> = (0..g.n()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&g.permuted(&perm)).unwrap().bytes, base.bytes);
            }
        }
    }
}
