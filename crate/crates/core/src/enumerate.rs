//! Isomorph-free generation of small graphs by canonical augmentation.
//!
//! Graphs grow one vertex at a time. A child is kept only when the vertex
//! just added is equivalent, under the child's automorphism group, to the
//! child's canonical deletion vertex: among the vertices of minimum
//! `(degree, neighbour-degree sum)` the one with the largest canonical
//! label. Neighbour sets of the new vertex are taken up to the parent's
//! automorphism group, so every isomorphism class appears exactly once.
//!
//! Degree constraints prune with conditions that every induced subgraph of
//! a valid final graph satisfies, which keeps the canonical parent of every
//! valid graph inside the search.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::error::{Error, Result};
use crate::graph::{bit, low_mask, Bits, Graph, Row};
use crate::graph6::to_graph6;
use crate::partition::Partition;
use crate::symmetry::{automorphism_orbits, canonical_graph, run_search};
use crate::walk::profile_classes;

/// Which graphs to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraints {
    pub n: usize,
    pub regular_degree: Option<usize>,
    pub connected_only: bool,
    pub max_edges: Option<usize>,
}

impl Constraints {
    pub fn all(n: usize) -> Self {
        Constraints { n, regular_degree: None, connected_only: false, max_edges: None }
    }

    pub fn regular(n: usize, d: usize) -> Self {
        Constraints { n, regular_degree: Some(d), connected_only: false, max_edges: None }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > 16 {
            return Err(Error::ParameterOutOfRange(format!("generation supports 1 <= n <= 16, got {}", self.n)));
        }
        if let Some(d) = self.regular_degree {
            if d >= self.n {
                return Err(Error::ParameterOutOfRange(format!("degree {d} must be below n = {}", self.n)));
            }
        }
        Ok(())
    }

    /// Necessary condition for a graph on `k <= n` vertices to be an
    /// induced subgraph of some graph meeting the constraints.
    fn extendable(&self, g: &Graph) -> bool {
        if let Some(max) = self.max_edges {
            if g.edge_count() > max {
                return false;
            }
        }
        let Some(d) = self.regular_degree else {
            return true;
        };
        let k = g.n();
        let remaining = self.n - k;
        let mut deficit = 0;
        for v in 0..k {
            let deg = g.degree(v);
            if deg > d || d - deg > remaining {
                return false;
            }
            deficit += d - deg;
        }
        // The new vertices supply `remaining * d` endpoints; the ones not
        // absorbed by old deficits pair up among the new vertices.
        let supply = remaining * d;
        if deficit > supply || (supply - deficit) % 2 != 0 {
            return false;
        }
        (supply - deficit) / 2 <= remaining * remaining.saturating_sub(1) / 2
    }

    fn accepts(&self, g: &Graph) -> bool {
        self.extendable(g)
            && self.regular_degree.is_none_or(|d| g.regular_degree() == Some(d))
            && (!self.connected_only || g.is_connected())
    }
}

/// Limits on a generation run.
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions {
    /// Maximum number of generation-tree nodes before giving up.
    pub budget: Option<u64>,
}

struct Node {
    graph: Graph,
    generators: Option<Vec<Vec<usize>>>,
}

impl Node {
    fn generators(&mut self) -> &[Vec<usize>] {
        if self.generators.is_none() {
            let outcome = run_search(&self.graph, &vec![0; self.graph.n()]);
            self.generators = Some(outcome.generators);
        }
        self.generators.as_deref().unwrap()
    }
}

fn invariant(g: &Graph, v: usize) -> (usize, usize) {
    (g.degree(v), g.neighbors(v).map(|u| g.degree(u)).sum())
}

fn apply(perm: &[usize], set: Row) -> Row {
    Bits(set).fold(0, |acc, v| acc | bit(perm[v]))
}

/// True iff `set` is the numerically smallest member of its orbit.
fn is_orbit_minimal(set: Row, generators: &[Vec<usize>]) -> bool {
    if generators.is_empty() {
        return true;
    }
    let mut seen = vec![set];
    let mut i = 0;
    while i < seen.len() {
        let s = seen[i];
        for g in generators {
            let t = apply(g, s);
            if t < set {
                return false;
            }
            if !seen.contains(&t) {
                seen.push(t);
            }
        }
        i += 1;
    }
    true
}

/// Canonical-deletion test for the vertex `child.n() - 1`. Returns the
/// child's automorphism generators when a search was needed.
fn is_canonical_child(child: &Graph) -> Option<Option<Vec<Vec<usize>>>> {
    let n = child.n();
    let new = n - 1;
    let invs: Vec<(usize, usize)> = (0..n).map(|v| invariant(child, v)).collect();
    let min = *invs.iter().min().unwrap();
    if invs[new] != min {
        return None;
    }
    let candidates: Vec<usize> = (0..n).filter(|&v| invs[v] == min).collect();
    if candidates.len() == 1 {
        return Some(None);
    }
    // Colour by the invariant so the candidates form one cell.
    let mut keys: Vec<(usize, usize)> = invs.clone();
    keys.sort_unstable();
    keys.dedup();
    let colors: Vec<usize> = invs.iter().map(|k| keys.binary_search(k).unwrap()).collect();
    let outcome = run_search(child, &colors);
    let mut pos = vec![0; n];
    for (i, &v) in outcome.order.iter().enumerate() {
        pos[v] = i;
    }
    let w = *candidates.iter().max_by_key(|&&v| pos[v]).unwrap();
    let orbits = outcome.orbits(n);
    orbits.same_block(w, new).then_some(Some(outcome.generators))
}

struct Generator<'a, F> {
    c: Constraints,
    visit: &'a F,
    nodes: AtomicU64,
    leaves: AtomicU64,
    budget: Option<u64>,
    aborted: AtomicBool,
}

impl<'a, F: Fn(&Graph) + Sync> Generator<'a, F> {
    fn tick(&self) -> bool {
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| count > b) {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    /// Canonical children of `parent`, in neighbour-set order.
    fn children(&self, parent: &mut Node) -> Vec<Node> {
        let k = parent.graph.n();
        let n = self.c.n;
        let (allowed, lo, hi) = match self.c.regular_degree {
            Some(d) => {
                let allowed = (0..k).filter(|&v| parent.graph.degree(v) < d).fold(0, |m, v| m | bit(v));
                (allowed, d.saturating_sub(n - k - 1), d)
            }
            None => (low_mask(k), 0, k),
        };
        let mut out = Vec::new();
        let gens_needed = k > 1;
        let mut subset: Row = 0;
        loop {
            let size = subset.count_ones() as usize;
            if size >= lo && size <= hi {
                let child = parent.graph.with_new_vertex(subset);
                if self.c.extendable(&child) {
                    let minimal = !gens_needed || is_orbit_minimal(subset, parent.generators());
                    if minimal {
                        if let Some(gens) = is_canonical_child(&child) {
                            out.push(Node { graph: child, generators: gens });
                        }
                    }
                }
            }
            // next subset of `allowed`
            if subset == allowed {
                break;
            }
            subset = (subset.wrapping_sub(allowed)) & allowed;
        }
        out
    }

    fn finish(&self, node: &Node) {
        if self.c.accepts(&node.graph) {
            self.leaves.fetch_add(1, Ordering::Relaxed);
            (self.visit)(&node.graph);
        }
    }

    fn descend(&self, mut node: Node) {
        if !self.tick() {
            return;
        }
        if node.graph.n() == self.c.n {
            self.finish(&node);
            return;
        }
        for child in self.children(&mut node) {
            self.descend(child);
        }
    }
}

/// Visits every isomorphism class of graphs meeting `c` exactly once and
/// returns the number visited. `visit` may run concurrently.
pub fn enumerate_graphs<F>(c: &Constraints, opts: &SearchOptions, visit: F) -> Result<u64>
where
    F: Fn(&Graph) + Sync,
{
    c.validate()?;
    let gen = Generator {
        c: *c,
        visit: &visit,
        nodes: AtomicU64::new(0),
        leaves: AtomicU64::new(0),
        budget: opts.budget,
        aborted: AtomicBool::new(false),
    };
    let root = Node { graph: Graph::empty(1)?, generators: Some(Vec::new()) };
    if !c.extendable(&root.graph) {
        return Ok(0);
    }
    // Breadth-first until the frontier is wide enough to share out.
    const SPLIT_WIDTH: usize = 64;
    let mut frontier = vec![root];
    while frontier.len() < SPLIT_WIDTH && frontier[0].graph.n() < c.n.saturating_sub(1) {
        let mut next = Vec::new();
        for mut node in frontier {
            if !gen.tick() {
                return Err(Error::BudgetExceeded(opts.budget.unwrap_or(0)));
            }
            next.extend(gen.children(&mut node));
        }
        if next.is_empty() {
            return Ok(0);
        }
        frontier = next;
    }
    frontier.into_par_iter().for_each(|node| gen.descend(node));
    if gen.aborted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded(opts.budget.unwrap_or(0)));
    }
    Ok(gen.leaves.load(Ordering::Relaxed))
}

/// Collects every generated graph in canonical form, sorted by graph6.
pub fn collect_graphs(c: &Constraints, opts: &SearchOptions) -> Result<Vec<Graph>> {
    let out = Mutex::new(Vec::new());
    enumerate_graphs(c, opts, |g| {
        let canon = canonical_graph(g).expect("generated graphs are loop-free");
        out.lock().unwrap().push(canon);
    })?;
    let mut graphs = out.into_inner().unwrap();
    graphs.sort_by_cached_key(|g| to_graph6(g).unwrap());
    Ok(graphs)
}

/// Visits the `d`-regular graphs on `n` vertices (all graphs when `degree`
/// is `None`). Degrees above `(n - 1) / 2` are reached as complements of
/// the complementary degree, which keeps the generation tree small.
pub fn for_each_graph<F>(n: usize, degree: Option<usize>, connected_only: bool, opts: &SearchOptions, visit: F) -> Result<u64>
where
    F: Fn(&Graph) + Sync,
{
    match degree {
        Some(d) if d < n && 2 * d > n - 1 => {
            let seen = AtomicU64::new(0);
            enumerate_graphs(&Constraints::regular(n, n - 1 - d), opts, |g| {
                let h = g.complement().expect("generated graphs are loop-free");
                if !connected_only || h.is_connected() {
                    seen.fetch_add(1, Ordering::Relaxed);
                    visit(&h);
                }
            })?;
            Ok(seen.into_inner())
        }
        _ => {
            let c = Constraints { n, regular_degree: degree, connected_only, max_edges: None };
            enumerate_graphs(&c, opts, visit)
        }
    }
}

/// What a census looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusKind {
    /// Graphs with two cospectral vertices that are not similar.
    NonSimilarCospectral,
    /// Walk-regular graphs that are not vertex-transitive.
    WalkRegularNonVt,
}

/// One witness graph, in canonical labeling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub n: usize,
    pub degree: Option<usize>,
    pub canonical_g6: String,
    pub orbit_count: usize,
    pub cospectral_block_sizes: Vec<usize>,
    /// Two vertices of the canonical graph that are cospectral but not similar.
    pub witness_pair: [usize; 2],
    pub connected: bool,
    pub tree: bool,
}

/// Graph and hit counts for one vertex count (and degree, for regular runs).
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub n: usize,
    pub degree: Option<usize>,
    #[serde_as(as = "DisplayFromStr")]
    pub graphs: u64,
    #[serde_as(as = "DisplayFromStr")]
    pub hits: u64,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub census: CensusKind,
    pub n_max: usize,
    pub regular_only: bool,
    pub connected_only: bool,
    #[serde_as(as = "DisplayFromStr")]
    pub total_graphs: u64,
    pub levels: Vec<LevelSummary>,
    pub hits: Vec<Hit>,
}

impl SearchReport {
    pub fn hits_at(&self, n: usize) -> impl Iterator<Item = &Hit> {
        self.hits.iter().filter(move |h| h.n == n)
    }

    pub fn level(&self, n: usize, degree: Option<usize>) -> Option<&LevelSummary> {
        self.levels.iter().find(|l| l.n == n && l.degree == degree)
    }
}

/// Examines one graph; `None` unless it is a hit for `kind`.
pub fn examine(kind: CensusKind, g: &Graph) -> Option<Hit> {
    let g = canonical_graph(g).ok()?;
    let classes = profile_classes(&g);
    let n = g.n();
    if kind == CensusKind::WalkRegularNonVt && classes.iter().any(|&c| c != 0) {
        return None;
    }
    if kind == CensusKind::NonSimilarCospectral {
        let mut sorted = classes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() == n {
            return None;
        }
    }
    let orbits = automorphism_orbits(&g).orbits;
    let witness = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&(a, b)| classes[a] == classes[b] && !orbits.same_block(a, b))?;
    Some(Hit {
        n,
        degree: g.regular_degree(),
        canonical_g6: to_graph6(&g).ok()?,
        orbit_count: orbits.len(),
        cospectral_block_sizes: Partition::from_labels(&classes).block_sizes(),
        witness_pair: [witness.0, witness.1],
        connected: g.is_connected(),
        tree: g.is_tree(),
    })
}

/// Runs one census level and returns its summary with sorted hits.
pub fn census_level(
    kind: CensusKind,
    n: usize,
    degree: Option<usize>,
    connected_only: bool,
    opts: &SearchOptions,
) -> Result<(LevelSummary, Vec<Hit>)> {
    let hits = Mutex::new(Vec::new());
    let graphs = for_each_graph(n, degree, connected_only, opts, |g| {
        if let Some(hit) = examine(kind, g) {
            hits.lock().unwrap().push(hit);
        }
    })?;
    let mut hits = hits.into_inner().unwrap();
    hits.sort_by(|a, b| a.canonical_g6.cmp(&b.canonical_g6));
    let summary = LevelSummary { n, degree, graphs, hits: hits.len() as u64 };
    Ok((summary, hits))
}

fn run_census(
    kind: CensusKind,
    ns: std::ops::RangeInclusive<usize>,
    degrees: impl Fn(usize) -> Vec<Option<usize>>,
    regular_only: bool,
    connected_only: bool,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    let mut report = SearchReport {
        census: kind,
        n_max: *ns.end(),
        regular_only,
        connected_only,
        total_graphs: 0,
        levels: Vec::new(),
        hits: Vec::new(),
    };
    for n in ns {
        for degree in degrees(n) {
            let (summary, hits) = census_level(kind, n, degree, connected_only, opts)?;
            report.total_graphs += summary.graphs;
            report.levels.push(summary);
            report.hits.extend(hits);
        }
    }
    Ok(report)
}

fn feasible_degrees(n: usize) -> Vec<Option<usize>> {
    (0..n).filter(|d| n * d % 2 == 0).map(Some).collect()
}

/// A census restricted to `n` vertices. Without a degree, walk-regular
/// searches still run one level per feasible degree.
pub fn census_at(
    kind: CensusKind,
    n: usize,
    degree: Option<usize>,
    connected_only: bool,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    let regular_only = degree.is_some() || kind == CensusKind::WalkRegularNonVt;
    let degrees = move |n: usize| match degree {
        Some(d) => vec![Some(d)],
        None if regular_only => feasible_degrees(n),
        None => vec![None],
    };
    run_census(kind, n..=n, degrees, regular_only, connected_only, opts)
}

/// Graphs on up to `n_max` vertices having cospectral vertices that are
/// not similar; with `regular_only`, one level per feasible degree.
pub fn census_non_similar_cospectral(n_max: usize, regular_only: bool, opts: &SearchOptions) -> Result<SearchReport> {
    let degrees = move |n: usize| if regular_only { feasible_degrees(n) } else { vec![None] };
    run_census(CensusKind::NonSimilarCospectral, 1..=n_max, degrees, regular_only, false, opts)
}

/// Walk-regular graphs on up to `n_max` vertices that are not
/// vertex-transitive. Walk-regular graphs are regular, so only regular
/// graphs are generated.
pub fn census_walk_regular_non_vt(n_max: usize, opts: &SearchOptions) -> Result<SearchReport> {
    run_census(CensusKind::WalkRegularNonVt, 1..=n_max, feasible_degrees, true, false, opts)
}
