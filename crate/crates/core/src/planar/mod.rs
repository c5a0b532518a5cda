//! Combinatorial embeddings: rotation systems, face tracing, modified
//! Schläfli symbols, chordless cycles and planarity testing.
//!
//! A rotation system lists the neighbours of every vertex in cyclic order.
//! Faces are traced with one fixed rule: the dart following `(u, v)` is
//! `(v, w)`, where `w` comes right after `u` in the rotation at `v`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::walk::for_each_cycle;

pub mod catalog;
mod planarity;

pub use planarity::{is_planar, planarity, Kuratowski, KuratowskiKind, Planarity};

/// Cyclic neighbour order at every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RotationSystem {
    order: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(order: Vec<Vec<usize>>) -> Self {
        RotationSystem { order }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn around(&self, v: VertexId) -> &[usize] {
        &self.order[v]
    }

    pub fn order(&self) -> &[Vec<usize>] {
        &self.order
    }

    /// The same embedding read with the opposite orientation.
    pub fn mirrored(&self) -> Self {
        RotationSystem { order: self.order.iter().map(|r| r.iter().rev().copied().collect()).collect() }
    }

    /// Checks that the list at each vertex is a permutation of its neighbours.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::InvalidRotation(format!("rotation covers {} vertices, graph has {}", self.n(), g.n())));
        }
        for (v, around) in self.order.iter().enumerate() {
            let mut listed = around.clone();
            listed.sort_unstable();
            let before = listed.len();
            listed.dedup();
            if listed.len() != before {
                return Err(Error::InvalidRotation(format!("vertex {v} lists a neighbour twice")));
            }
            if !listed.iter().copied().eq(g.neighbors(v)) {
                return Err(Error::InvalidRotation(format!("rotation at vertex {v} is not its neighbourhood")));
            }
        }
        Ok(())
    }

    /// Rotation whose traced faces are exactly `faces`, which must be
    /// consistently oriented closed walks using every dart once.
    pub fn from_faces(n: usize, faces: &[Vec<usize>]) -> Result<Self> {
        // next[v] maps u to the neighbour after u in the rotation at v
        let mut next: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for face in faces {
            let k = face.len();
            for i in 0..k {
                let (u, v, w) = (face[i], face[(i + 1) % k], face[(i + 2) % k]);
                if v >= n || u >= n || w >= n {
                    return Err(Error::InvalidRotation(format!("face vertex out of range in {face:?}")));
                }
                if next[v].iter().any(|&(a, _)| a == u) {
                    return Err(Error::InvalidRotation(format!("dart ({u}, {v}) lies on two faces")));
                }
                next[v].push((u, w));
            }
        }
        let mut order = Vec::with_capacity(n);
        for (v, map) in next.iter().enumerate() {
            let mut around = Vec::with_capacity(map.len());
            if let Some(&(start, _)) = map.first() {
                let mut u = start;
                loop {
                    around.push(u);
                    u = map.iter().find(|&&(a, _)| a == u).map(|&(_, w)| w).ok_or_else(|| {
                        Error::InvalidRotation(format!("faces do not close up around vertex {v}"))
                    })?;
                    if u == start {
                        break;
                    }
                    if around.len() > map.len() {
                        return Err(Error::InvalidRotation(format!("faces do not close up around vertex {v}")));
                    }
                }
            }
            if around.len() != map.len() {
                return Err(Error::InvalidRotation(format!("faces around vertex {v} form more than one cycle")));
            }
            order.push(around);
        }
        Ok(RotationSystem { order })
    }
}

/// A face as the cyclic sequence of vertices along its boundary walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub boundary: Vec<usize>,
}

impl Face {
    /// Number of edges on the boundary walk.
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }
}

/// Faces traced from every dart, plus for every dart `(v, around(v)[i])`
/// the index of its face.
struct Tracing {
    faces: Vec<Face>,
    dart_face: Vec<Vec<usize>>,
}

fn trace(g: &Graph, rot: &RotationSystem) -> Result<Tracing> {
    rot.validate(g)?;
    let n = g.n();
    // position[v][u] = index of u in the rotation at v
    let mut position = vec![vec![usize::MAX; n]; n];
    for v in 0..n {
        for (i, &u) in rot.around(v).iter().enumerate() {
            position[v][u] = i;
        }
    }
    let mut dart_face: Vec<Vec<usize>> = (0..n).map(|v| vec![usize::MAX; rot.around(v).len()]).collect();
    let mut faces = Vec::new();
    for v in 0..n {
        for i in 0..rot.around(v).len() {
            if dart_face[v][i] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut boundary = Vec::new();
            let (mut a, mut ai) = (v, i);
            while dart_face[a][ai] == usize::MAX {
                dart_face[a][ai] = id;
                boundary.push(a);
                let b = rot.around(a)[ai];
                let around_b = rot.around(b);
                let bi = (position[b][a] + 1) % around_b.len();
                (a, ai) = (b, bi);
            }
            if (a, ai) != (v, i) {
                return Err(Error::InvalidRotation("face traversal did not close".into()));
            }
            faces.push(Face { boundary });
        }
    }
    Ok(Tracing { faces, dart_face })
}

/// All faces of the embedding, each dart used exactly once.
pub fn faces(g: &Graph, rot: &RotationSystem) -> Result<Vec<Face>> {
    Ok(trace(g, rot)?.faces)
}

/// Euler characteristic of an embedding and, for regular graphs, the
/// face-weight identity `(1/n) Σ_v p(v) = (d - 2)/2 + 2/n` with
/// `p(v) = Σ_i 1/r_i(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub n: usize,
    pub e: usize,
    pub f: usize,
    pub euler_characteristic: i64,
    /// `n - e + f = 2`.
    pub spherical: bool,
    /// Sum of face lengths; always `2e`.
    pub dart_count: usize,
    pub regular_degree: Option<usize>,
    /// `(1/n) Σ_v p(v)` as an exact fraction.
    pub mean_face_weight: Option<String>,
    /// `(d - 2)/2 + 2/n` as an exact fraction.
    pub predicted_face_weight: Option<String>,
    pub identity_holds: Option<bool>,
}

pub fn verify_embedding(g: &Graph, rot: &RotationSystem) -> Result<EulerReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let t = trace(g, rot)?;
    let (n, e, f) = (g.n(), g.edge_count(), t.faces.len());
    let chi = n as i64 - e as i64 + f as i64;
    let dart_count = t.faces.iter().map(Face::len).sum();
    let regular_degree = g.regular_degree();
    let (mut mean, mut predicted, mut holds) = (None, None, None);
    if let Some(d) = regular_degree {
        let mut total = Ratio::from_integer(0i64);
        for v in 0..n {
            for &fi in &t.dart_face[v] {
                total += Ratio::new(1, t.faces[fi].len() as i64);
            }
        }
        let lhs = total / n as i64;
        let rhs = Ratio::new(d as i64 - 2, 2) + Ratio::new(2, n as i64);
        mean = Some(lhs.to_string());
        predicted = Some(rhs.to_string());
        holds = Some(lhs == rhs);
    }
    Ok(EulerReport {
        n,
        e,
        f,
        euler_characteristic: chi,
        spherical: chi == 2,
        dart_count,
        regular_degree,
        mean_face_weight: mean,
        predicted_face_weight: predicted,
        identity_holds: holds,
    })
}

/// Face lengths around a vertex, normalised to the lexicographically
/// smallest reading over all starting faces and both directions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SchlafliSymbol(pub Vec<usize>);

impl SchlafliSymbol {
    pub fn normalized(lengths: &[usize]) -> Self {
        let k = lengths.len();
        let mut best: Option<Vec<usize>> = None;
        let reversed: Vec<usize> = lengths.iter().rev().copied().collect();
        for seq in [lengths, &reversed[..]] {
            for start in 0..k {
                let cand: Vec<usize> = seq[start..].iter().chain(&seq[..start]).copied().collect();
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        SchlafliSymbol(best.unwrap_or_default())
    }
}

impl fmt::Display for SchlafliSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for SchlafliSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let lengths = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad Schläfli symbol {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(SchlafliSymbol::normalized(&lengths))
    }
}

/// Modified Schläfli symbol of every vertex.
pub fn vertex_symbols(g: &Graph, rot: &RotationSystem) -> Result<Vec<SchlafliSymbol>> {
    let t = trace(g, rot)?;
    Ok(t.dart_face
        .iter()
        .map(|darts| {
            let lengths: Vec<usize> = darts.iter().map(|&fi| t.faces[fi].len()).collect();
            SchlafliSymbol::normalized(&lengths)
        })
        .collect())
}

pub fn schlafli(g: &Graph, rot: &RotationSystem, v: VertexId) -> Result<SchlafliSymbol> {
    if v >= g.n() {
        return Err(Error::OutOfRange { vertex: v, n: g.n() });
    }
    Ok(vertex_symbols(g, rot)?.swap_remove(v))
}

/// All `m`-cycles without a chord, each listed once starting from its
/// smallest vertex, in lexicographic order.
pub fn chordless_cycles(g: &Graph, m: usize) -> Result<Vec<Vec<usize>>> {
    if m < 3 || m > g.n() {
        return Err(Error::LengthOutOfRange { m, n: g.n() });
    }
    let mut out = Vec::new();
    for_each_cycle(g, m, |cycle| {
        if cycle.len() != m {
            return;
        }
        let chord = (0..m).any(|i| (i + 2..m).any(|j| !(i == 0 && j == m - 1) && g.has_edge(cycle[i], cycle[j])));
        if !chord {
            out.push(cycle.to_vec());
        }
    });
    out.sort();
    Ok(out)
}

/// True iff `cycle` bounds a face. Compares vertex sets, which is exact
/// for chordless cycles.
pub fn is_face(faces: &[Face], cycle: &[usize]) -> bool {
    let mut key = cycle.to_vec();
    key.sort_unstable();
    faces.iter().any(|f| {
        if f.len() != key.len() {
            return false;
        }
        let mut b = f.boundary.clone();
        b.sort_unstable();
        b == key
    })
}
