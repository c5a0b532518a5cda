//! Per-command report objects and their text, graph6 and DOT renderings.

use serde::Serialize;

use walkspec::enumerate::SearchReport;
use walkspec::graph6::to_graph6;
use walkspec::planar::catalog::CatalogReport;
use walkspec::planar::is_planar;
use walkspec::reproduce::Reproduction;
use walkspec::symmetry::{automorphism_orbits, canonical_form};
use walkspec::walk::{cospectral_partition, walk_profile, walk_regularity_failure};
use walkspec::{Error, Graph, GraphJson, Result};

pub trait Render: Serialize {
    fn text(&self) -> String;

    fn g6(&self) -> Result<String> {
        Err(Error::Parse("graph6 output is not available for this command".into()))
    }

    fn dot(&self) -> Result<String> {
        Err(Error::Parse("DOT output is not available for this command".into()))
    }
}

#[derive(Serialize)]
pub struct GraphReport {
    pub index: usize,
    pub n: usize,
    pub edge_count: usize,
    pub loops: Vec<usize>,
    pub degrees: Vec<usize>,
    pub connected: bool,
    pub planar: bool,
    pub canonical_g6: Option<String>,
    pub cospectral_blocks: Vec<Vec<usize>>,
    pub orbits: Vec<Vec<usize>>,
    pub walk_regular: bool,
    pub walk_regularity_failure: Option<usize>,
    pub vertex_transitive: bool,
    /// Pairs of cospectral vertices lying in different orbits.
    pub cospectral_non_similar_pairs: Vec<[usize; 2]>,
    /// `profile[v][k]` = closed walks of length `k` at `v`, as decimal strings.
    pub profile: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub graphs: Vec<GraphReport>,
    #[serde(skip)]
    sources: Vec<Graph>,
}

pub fn check(graphs: &[Graph]) -> CheckReport {
    let reports = graphs
        .iter()
        .enumerate()
        .map(|(index, g)| {
            let cospectral = cospectral_partition(g);
            let orbits = automorphism_orbits(g).orbits;
            let n = g.n();
            let pairs = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| [a, b]))
                .filter(|&[a, b]| cospectral.same_block(a, b) && !orbits.same_block(a, b))
                .collect();
            let failure = walk_regularity_failure(g);
            GraphReport {
                index,
                n,
                edge_count: g.edge_count(),
                loops: g.loop_vertices(),
                degrees: g.degrees(),
                connected: g.is_connected(),
                planar: is_planar(g),
                canonical_g6: canonical_form(g).ok().map(|c| c.bytes),
                cospectral_blocks: cospectral.blocks().to_vec(),
                vertex_transitive: orbits.len() == 1,
                orbits: orbits.blocks().to_vec(),
                walk_regular: failure.is_none(),
                walk_regularity_failure: failure,
                cospectral_non_similar_pairs: pairs,
                profile: walk_profile(g).to_decimal_rows(),
            }
        })
        .collect();
    CheckReport { graphs: reports, sources: graphs.to_vec() }
}

fn blocks_text(blocks: &[Vec<usize>]) -> String {
    let parts: Vec<String> =
        blocks.iter().map(|b| format!("{{{}}}", b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))).collect();
    parts.join(" ")
}

impl Render for CheckReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for r in &self.graphs {
            out.push_str(&format!(
                "graph {}: n={} e={} connected={} planar={}\n",
                r.index, r.n, r.edge_count, r.connected, r.planar
            ));
            if let Some(c) = &r.canonical_g6 {
                out.push_str(&format!("  canonical: {c}\n"));
            }
            out.push_str(&format!("  degrees: {:?}\n", r.degrees));
            out.push_str(&format!("  cospectral blocks: {}\n", blocks_text(&r.cospectral_blocks)));
            out.push_str(&format!("  orbits: {}\n", blocks_text(&r.orbits)));
            out.push_str(&format!("  walk-regular: {}  vertex-transitive: {}\n", r.walk_regular, r.vertex_transitive));
            if !r.cospectral_non_similar_pairs.is_empty() {
                let pairs: Vec<String> =
                    r.cospectral_non_similar_pairs.iter().map(|[a, b]| format!("({a},{b})")).collect();
                out.push_str(&format!("  cospectral, not similar: {}\n", pairs.join(" ")));
            }
        }
        out
    }

    fn g6(&self) -> Result<String> {
        GraphList(self.sources.clone()).g6()
    }

    fn dot(&self) -> Result<String> {
        GraphList(self.sources.clone()).dot()
    }
}

/// Plain graphs, serialised as `{n, edges, loops}` objects.
pub struct GraphList(pub Vec<Graph>);

impl Serialize for GraphList {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<GraphJson> = self.0.iter().map(GraphJson::from).collect();
        list.serialize(s)
    }
}

impl Render for GraphList {
    fn text(&self) -> String {
        self.g6().unwrap_or_else(|_| {
            self.0.iter().map(|g| format!("n={} edges={:?} loops={:?}\n", g.n(), g.edges(), g.loop_vertices())).collect()
        })
    }

    fn g6(&self) -> Result<String> {
        self.0.iter().map(|g| Ok(to_graph6(g)? + "\n")).collect()
    }

    fn dot(&self) -> Result<String> {
        Ok(self.0.iter().enumerate().map(|(i, g)| g.to_dot(&format!("g{i}"))).collect())
    }
}

fn hits_g6(report: &SearchReport) -> String {
    report.hits.iter().map(|h| format!("{}\n", h.canonical_g6)).collect()
}

fn search_text(r: &SearchReport) -> String {
    let census = serde_json::to_value(r.census).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
    let mut out = format!("census {census}, n <= {}\n", r.n_max);
    for l in &r.levels {
        let degree = l.degree.map(|d| format!(" d={d}")).unwrap_or_default();
        out.push_str(&format!("  n={}{degree}: {} graphs, {} hits\n", l.n, l.graphs, l.hits));
    }
    out.push_str(&format!("total graphs: {}\n", r.total_graphs));
    for h in &r.hits {
        out.push_str(&format!(
            "  {} n={} orbits={} pair=({},{}) connected={}\n",
            h.canonical_g6, h.n, h.orbit_count, h.witness_pair[0], h.witness_pair[1], h.connected
        ));
    }
    out
}

impl Render for SearchReport {
    fn text(&self) -> String {
        search_text(self)
    }

    fn g6(&self) -> Result<String> {
        Ok(hits_g6(self))
    }
}

impl Render for Reproduction {
    fn text(&self) -> String {
        let mut out = format!("reproduce {}: {}\n", self.target.name(), if self.passed { "PASS" } else { "FAIL" });
        for c in &self.checks {
            let mark = if c.ok { "ok  " } else { "FAIL" };
            out.push_str(&format!("  [{mark}] {}: expected {}, observed {}\n", c.name, c.expected, c.observed));
        }
        if let Some(s) = &self.search {
            out.push_str(&search_text(s));
        }
        out
    }

    fn g6(&self) -> Result<String> {
        Ok(self.search.as_ref().map(hits_g6).unwrap_or_default())
    }
}

impl Render for CatalogReport {
    fn text(&self) -> String {
        let mut out = format!("catalog audit: {}\n", if self.passed { "PASS" } else { "FAIL" });
        for a in &self.entries {
            let status = match &a.failure {
                None => "ok".to_string(),
                Some(p) => format!("FAIL ({p})"),
            };
            out.push_str(&format!(
                "  {:<20} n={:<3} f={:<3} symbol={:<12} walk-regular={:<5} vertex-transitive={:<5} {status}\n",
                a.name,
                a.n,
                a.f,
                a.symbol.as_deref().unwrap_or("mixed"),
                a.walk_regular,
                a.vertex_transitive
            ));
        }
        for w in &self.walk_constants {
            out.push_str(&format!(
                "  {}: A^{} diagonal {:?} = {} + {}*C_{} with C_{} in {:?}: {}\n",
                w.entry, w.k, w.diagonal_values, w.constant, w.cycle_coefficient, w.k, w.k, w.cycle_values, w.holds
            ));
        }
        out
    }
}
