//! The polyhedral catalog: Platonic and Archimedean solids shipped as data,
//! prisms and antiprisms built on demand, and the audit that every positive
//! entry is a 3-connected, walk-regular, vertex-transitive planar graph.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};
use sha2::{Digest, Sha256};

use super::{chordless_cycles, faces, is_face, verify_embedding, vertex_symbols, RotationSystem, SchlafliSymbol};
use crate::connectivity::is_k_connected;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::symmetry::is_vertex_transitive;
use crate::walk::{cycle_census, cycles_through, walk_profile_to, walk_regularity_failure};

const CATALOG_JSON: &str = include_str!("../../data/catalog/catalog.json");
const CATALOG_SHA256: &str = include_str!("../../data/catalog/catalog.sha256");

/// Environment variable naming a directory with a replacement
/// `catalog.json` and `catalog.sha256`.
pub const DATA_DIR_ENV: &str = "WALKSPEC_DATA_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Prism,
    Antiprism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: Graph,
    pub rotation: RotationSystem,
    pub expected_symbol: SchlafliSymbol,
    pub family: Option<(FamilyKind, usize)>,
    pub expected_walk_regular: bool,
}

/// On-disk form of one entry.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub name: String,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub rotation: Vec<Vec<usize>>,
    pub expected_symbol: Vec<usize>,
    pub expected_walk_regular: bool,
}

impl From<&CatalogEntry> for EntryJson {
    fn from(e: &CatalogEntry) -> Self {
        EntryJson {
            name: e.name.clone(),
            n: e.graph.n(),
            edges: e.graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            rotation: e.rotation.order().to_vec(),
            expected_symbol: e.expected_symbol.0.clone(),
            expected_walk_regular: e.expected_walk_regular,
        }
    }
}

impl CatalogEntry {
    fn from_json(file: &str, j: EntryJson) -> Result<Self> {
        let corrupt = |reason: String| Error::CorruptDataFile { file: file.to_string(), reason };
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|&[u, v]| (u, v)).collect();
        let graph = Graph::from_edges(j.n, &edges, &[]).map_err(|e| corrupt(format!("{}: {e}", j.name)))?;
        if graph.edge_count() != edges.len() {
            return Err(corrupt(format!("{}: repeated edge", j.name)));
        }
        let rotation = RotationSystem::new(j.rotation);
        rotation.validate(&graph).map_err(|e| corrupt(format!("{}: {e}", j.name)))?;
        Ok(CatalogEntry {
            name: j.name,
            graph,
            rotation,
            expected_symbol: SchlafliSymbol::normalized(&j.expected_symbol),
            family: None,
            expected_walk_regular: j.expected_walk_regular,
        })
    }

    pub fn to_dot(&self) -> String {
        self.graph.to_dot(&self.name)
    }
}

/// Parses catalog text after checking it against a `sha256sum`-style manifest.
pub fn parse_catalog(json: &str, manifest: &str) -> Result<Vec<CatalogEntry>> {
    let file = "catalog.json";
    let expected = manifest.split_whitespace().next().unwrap_or_default();
    let actual: String = Sha256::digest(json.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    if actual != expected {
        return Err(Error::CorruptDataFile { file: file.into(), reason: format!("sha256 {actual} does not match manifest {expected}") });
    }
    let raw: Vec<EntryJson> = serde_json::from_str(json)
        .map_err(|e| Error::CorruptDataFile { file: file.into(), reason: e.to_string() })?;
    raw.into_iter().map(|j| CatalogEntry::from_json(file, j)).collect()
}

pub fn load_catalog_from(dir: &Path) -> Result<Vec<CatalogEntry>> {
    let read = |name: &str| {
        std::fs::read_to_string(dir.join(name))
            .map_err(|e| Error::CorruptDataFile { file: name.into(), reason: e.to_string() })
    };
    parse_catalog(&read("catalog.json")?, &read("catalog.sha256")?)
}

/// The shipped catalog, or the one in `$WALKSPEC_DATA_DIR` when set.
pub fn load_catalog() -> Result<Vec<CatalogEntry>> {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => load_catalog_from(Path::new(&dir)),
        None => parse_catalog(CATALOG_JSON, CATALOG_SHA256),
    }
}

/// The embedded catalog text, for export.
pub fn embedded_catalog() -> (&'static str, &'static str) {
    (CATALOG_JSON, CATALOG_SHA256)
}

/// The `m`-gonal prism or antiprism with its planar rotation.
///
/// Vertices `0..m` form the top cycle and `m..2m` the bottom cycle. In the
/// prism `i` is joined to `m + i`; in the antiprism to `m + i` and
/// `m + i + 1`.
pub fn build_family(kind: FamilyKind, m: usize) -> Result<CatalogEntry> {
    if !(3..=64).contains(&m) {
        return Err(Error::ParameterOutOfRange(format!("family parameter m = {m} must lie in 3..=64")));
    }
    let top = |i: usize| i % m;
    let bot = |i: usize| m + i % m;
    let mut face_list: Vec<Vec<usize>> = vec![(0..m).collect(), (0..m).rev().map(bot).collect()];
    let mut edges = Vec::new();
    for i in 0..m {
        edges.push((top(i), top(i + 1)));
        edges.push((bot(i), bot(i + 1)));
        match kind {
            FamilyKind::Prism => {
                edges.push((top(i), bot(i)));
                face_list.push(vec![top(i + 1), top(i), bot(i), bot(i + 1)]);
            }
            FamilyKind::Antiprism => {
                edges.push((top(i), bot(i)));
                edges.push((top(i), bot(i + 1)));
                face_list.push(vec![top(i + 1), top(i), bot(i + 1)]);
                face_list.push(vec![top(i), bot(i), bot(i + 1)]);
            }
        }
    }
    let graph = Graph::from_edges(2 * m, &edges, &[])?;
    let rotation = RotationSystem::from_faces(2 * m, &face_list)?;
    let (name, symbol) = match kind {
        FamilyKind::Prism => (format!("prism({m})"), vec![4, 4, m]),
        FamilyKind::Antiprism => (format!("antiprism({m})"), vec![3, 3, 3, m]),
    };
    Ok(CatalogEntry {
        name,
        graph,
        rotation,
        expected_symbol: SchlafliSymbol::normalized(&symbol),
        family: Some((kind, m)),
        expected_walk_regular: true,
    })
}

/// The prisms and antiprisms named in the classification, up to `m_max`:
/// prisms for `m = 3` and `m >= 5`, antiprisms for `m >= 4`.
pub fn families(m_max: usize) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for m in (3..=m_max).filter(|&m| m != 4) {
        out.push(build_family(FamilyKind::Prism, m)?);
    }
    for m in 4..=m_max {
        out.push(build_family(FamilyKind::Antiprism, m)?);
    }
    Ok(out)
}

/// Audit results for one entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryAudit {
    pub name: String,
    pub n: usize,
    pub e: usize,
    pub f: usize,
    pub degree: Option<usize>,
    pub three_connected: bool,
    pub euler: bool,
    pub face_weight_identity: bool,
    /// The common vertex symbol, if all vertices share one.
    pub symbol: Option<String>,
    pub expected_symbol: String,
    /// Smallest `k` with non-constant `diag(A^k)`.
    pub walk_regularity_failure: Option<usize>,
    pub walk_regular: bool,
    pub vertex_transitive: bool,
    /// Every triangle bounds a face.
    pub triangles_are_faces: bool,
    /// Chordless 4- and 5-cycles that do not bound a face.
    pub non_face_chordless_4: usize,
    pub non_face_chordless_5: usize,
    /// First violated predicate, if any.
    pub failure: Option<String>,
}

impl EntryAudit {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Runs every predicate on one entry. Positive entries must satisfy all of
/// them; an entry flagged not walk-regular must share the expected symbol
/// but fail walk-regularity and vertex-transitivity.
pub fn audit_entry(entry: &CatalogEntry) -> Result<EntryAudit> {
    let g = &entry.graph;
    let euler = verify_embedding(g, &entry.rotation)?;
    let symbols = vertex_symbols(g, &entry.rotation)?;
    let symbol = symbols.iter().all(|s| *s == symbols[0]).then(|| symbols[0].to_string());
    let failure_k = walk_regularity_failure(g);
    let fs = faces(g, &entry.rotation)?;
    let non_face = |m: usize| -> Result<usize> {
        if m > g.n() {
            return Ok(0);
        }
        Ok(chordless_cycles(g, m)?.iter().filter(|c| !is_face(&fs, c)).count())
    };
    let mut audit = EntryAudit {
        name: entry.name.clone(),
        n: g.n(),
        e: euler.e,
        f: euler.f,
        degree: g.regular_degree(),
        three_connected: is_k_connected(g, 3),
        euler: euler.spherical,
        face_weight_identity: euler.identity_holds == Some(true),
        symbol,
        expected_symbol: entry.expected_symbol.to_string(),
        walk_regularity_failure: failure_k,
        walk_regular: failure_k.is_none(),
        vertex_transitive: is_vertex_transitive(g),
        triangles_are_faces: non_face(3)? == 0,
        non_face_chordless_4: non_face(4)?,
        non_face_chordless_5: non_face(5)?,
        failure: None,
    };
    let symbol_ok = audit.symbol.as_deref() == Some(audit.expected_symbol.as_str());
    let checks: Vec<(&str, bool)> = if entry.expected_walk_regular {
        vec![
            ("regular", audit.degree.is_some()),
            ("3-connected", audit.three_connected),
            ("euler", audit.euler),
            ("face-weight identity", audit.face_weight_identity),
            ("schlafli symbol", symbol_ok),
            ("walk-regular", audit.walk_regular),
            ("vertex-transitive", audit.vertex_transitive),
        ]
    } else {
        vec![
            ("regular", audit.degree.is_some()),
            ("3-connected", audit.three_connected),
            ("euler", audit.euler),
            ("schlafli symbol", symbol_ok),
            ("not walk-regular", !audit.walk_regular),
            ("not vertex-transitive", !audit.vertex_transitive),
        ]
    };
    audit.failure = checks.iter().find(|(_, ok)| !ok).map(|(name, _)| name.to_string());
    Ok(audit)
}

/// Like [`audit_entry`] but turns a failed predicate into an error.
pub fn check_entry(entry: &CatalogEntry) -> Result<EntryAudit> {
    let audit = audit_entry(entry)?;
    match &audit.failure {
        Some(predicate) => Err(Error::AuditFailure { entry: entry.name.clone(), predicate: predicate.clone() }),
        None => Ok(audit),
    }
}

/// A closed-walk constant checked on one solid: for every vertex,
/// `(A^k)_{v,v} = constant + cycle_coefficient * C_k(v)`.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkConstant {
    pub entry: String,
    pub k: usize,
    #[serde_as(as = "DisplayFromStr")]
    pub constant: u64,
    #[serde_as(as = "DisplayFromStr")]
    pub cycle_coefficient: u64,
    /// Distinct values of `(A^k)_{v,v}` observed.
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub diagonal_values: Vec<u64>,
    /// Distinct values of `C_k(v)` observed.
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub cycle_values: Vec<u64>,
    pub holds: bool,
}

/// The closed-walk identities checked on the solids with a long face.
pub const WALK_CONSTANTS: [(&str, usize, u64, u64); 4] = [
    ("(3,8,8)-solid", 8, 591, 2),
    ("(3,10,10)-solid", 10, 4223, 2),
    ("(4,6,8)-solid", 8, 811, 0),
    ("(4,6,10)-solid", 10, 6065, 0),
];

pub fn check_walk_constant(g: &Graph, name: &str, k: usize, constant: u64, coefficient: u64) -> Result<WalkConstant> {
    let profile = walk_profile_to(g, k);
    let diag = profile.column_u64(k).ok_or_else(|| Error::TooLarge(format!("closed walks of length {k} overflow u64")))?;
    let cycles = (0..g.n()).map(|v| cycles_through(g, v, k)).collect::<Result<Vec<u64>>>()?;
    let holds = diag.iter().zip(&cycles).all(|(&a, &c)| a == constant + coefficient * c);
    let distinct = |xs: &[u64]| {
        let mut v = xs.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    Ok(WalkConstant {
        entry: name.to_string(),
        k,
        constant,
        cycle_coefficient: coefficient,
        diagonal_values: distinct(&diag),
        cycle_values: distinct(&cycles),
        holds,
    })
}

/// Cycle counts `C_3..C_6` per walk-regular entry: the first three must be
/// constant, and `C_6` too when `C_3 <= 1`.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleConstancy {
    pub entry: String,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub c3: Option<u64>,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub c4: Option<u64>,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub c5: Option<u64>,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub c6: Option<u64>,
    pub holds: bool,
}

fn cycle_constancy(entry: &CatalogEntry) -> CycleConstancy {
    let census = cycle_census(&entry.graph, 6);
    let (c3, c4, c5, c6) = (census.constant(3), census.constant(4), census.constant(5), census.constant(6));
    let holds = c3.is_some() && c4.is_some() && c5.is_some() && (c3.unwrap() > 1 || c6.is_some());
    CycleConstancy { entry: entry.name.clone(), c3, c4, c5, c6, holds }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub entries: Vec<EntryAudit>,
    pub walk_constants: Vec<WalkConstant>,
    pub cycle_constancy: Vec<CycleConstancy>,
    pub passed: bool,
}

/// Entries where chordless 4- or 5-cycles need not bound faces.
pub const CHORDLESS_4_EXCEPTIONS: [&str; 1] = ["octahedron"];
pub const CHORDLESS_5_EXCEPTIONS: [&str; 2] = ["antiprism(4)", "icosahedron"];

/// Audits the catalog together with prisms and antiprisms up to `m_max`.
pub fn verify_catalog(catalog: &[CatalogEntry], m_max: usize) -> Result<CatalogReport> {
    let mut entries: Vec<CatalogEntry> = catalog.to_vec();
    entries.extend(families(m_max)?);
    let audits = entries.par_iter().map(audit_entry).collect::<Result<Vec<_>>>()?;
    let mut walk_constants = Vec::new();
    for (name, k, constant, coefficient) in WALK_CONSTANTS {
        let entry = entries.iter().find(|e| e.name == name).ok_or_else(|| Error::AuditFailure {
            entry: name.to_string(),
            predicate: "present in catalog".into(),
        })?;
        walk_constants.push(check_walk_constant(&entry.graph, name, k, constant, coefficient)?);
    }
    let cycle_constancy: Vec<CycleConstancy> =
        entries.iter().filter(|e| e.expected_walk_regular).map(cycle_constancy).collect();
    let short_cycles_ok = audits.iter().filter(|a| entries.iter().any(|e| e.name == a.name && e.expected_walk_regular)).all(|a| {
        a.triangles_are_faces
            && (a.non_face_chordless_4 == 0) != CHORDLESS_4_EXCEPTIONS.contains(&a.name.as_str())
            && (a.non_face_chordless_5 == 0) != CHORDLESS_5_EXCEPTIONS.contains(&a.name.as_str())
    });
    let passed = audits.iter().all(EntryAudit::passed)
        && walk_constants.iter().all(|w| w.holds)
        && cycle_constancy.iter().all(|c| c.holds)
        && short_cycles_ok;
    Ok(CatalogReport { entries: audits, walk_constants, cycle_constancy, passed })
}

/// Full audit of the shipped catalog with prisms and antiprisms up to 12.
pub fn verify_theorem3() -> Result<CatalogReport> {
    verify_catalog(&load_catalog()?, 12)
}
