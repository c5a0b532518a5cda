//! Exact closed-walk counts and the cospectrality decision built on them.
//!
//! Two vertices are cospectral exactly when their closed-walk counts
//! `(A^k)_{v,v}` agree for every `k` in `0..n`, so everything here is exact
//! integer arithmetic. Counts are accumulated in `u64` or `u128` when an
//! a-priori bound shows they cannot overflow, and in [`BigUint`] otherwise.

use std::ops::AddAssign;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::graph::{Bits, Graph, VertexId};
use crate::partition::Partition;

/// Per-vertex closed-walk counts: `counts[v][k] = (A^k)_{v,v}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkProfile {
    counts: Vec<Vec<BigUint>>,
}

impl WalkProfile {
    pub fn n(&self) -> usize {
        self.counts.len()
    }

    /// Number of walk lengths recorded (`max_len + 1`).
    pub fn lengths(&self) -> usize {
        self.counts.first().map_or(0, Vec::len)
    }

    pub fn row(&self, v: VertexId) -> &[BigUint] {
        &self.counts[v]
    }

    pub fn get(&self, v: VertexId, k: usize) -> &BigUint {
        &self.counts[v][k]
    }

    /// Column `k` as machine integers, if every entry fits.
    pub fn column_u64(&self, k: usize) -> Option<Vec<u64>> {
        self.counts.iter().map(|r| r[k].to_u64()).collect()
    }

    /// Rows rendered as decimal strings, for JSON output.
    pub fn to_decimal_rows(&self) -> Vec<Vec<String>> {
        self.counts.iter().map(|r| r.iter().map(BigUint::to_string).collect()).collect()
    }
}

trait WalkInt: Clone + Zero + for<'a> AddAssign<&'a Self> {
    fn one() -> Self;
    fn into_big(self) -> BigUint;
}

impl WalkInt for u64 {
    fn one() -> Self {
        1
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl WalkInt for u128 {
    fn one() -> Self {
        1
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl WalkInt for BigUint {
    fn one() -> Self {
        BigUint::from(1u8)
    }
    fn into_big(self) -> BigUint {
        self
    }
}

/// Largest row sum of `A`; every entry of `A^k` is at most this to the `k`.
fn row_sum_bound(g: &Graph) -> u32 {
    (0..g.n()).map(|v| g.degree(v) as u32 + u32::from(g.has_loop(v))).max().unwrap_or(0)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Width {
    U64,
    U128,
    Big,
}

fn width_for(g: &Graph, max_len: usize) -> Width {
    let base = row_sum_bound(g).max(1) as u128;
    let exp = max_len as u32;
    if (base as u64).checked_pow(exp).is_some() {
        Width::U64
    } else if base.checked_pow(exp).is_some() {
        Width::U128
    } else {
        Width::Big
    }
}

/// Iterates `M <- A M` starting from the identity, calling `sink(k, diag)` for
/// each power `k = 0..=max_len`. Stops early when `sink` returns false.
fn walk_diagonals<T: WalkInt>(g: &Graph, max_len: usize, mut sink: impl FnMut(usize, &[T]) -> bool) {
    let n = g.n();
    let mut cur: Vec<Vec<T>> = (0..n)
        .map(|u| (0..n).map(|w| if u == w { T::one() } else { T::zero() }).collect())
        .collect();
    let mut diag: Vec<T> = (0..n).map(|_| T::one()).collect();
    if !sink(0, &diag) {
        return;
    }
    let neighbors: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u).collect()).collect();
    for k in 1..=max_len {
        let next: Vec<Vec<T>> = (0..n)
            .map(|u| {
                let mut row = if g.has_loop(u) { cur[u].clone() } else { vec![T::zero(); n] };
                for &x in &neighbors[u] {
                    for (acc, val) in row.iter_mut().zip(&cur[x]) {
                        *acc += val;
                    }
                }
                row
            })
            .collect();
        cur = next;
        for (v, d) in diag.iter_mut().enumerate() {
            *d = cur[v][v].clone();
        }
        if !sink(k, &diag) {
            return;
        }
    }
}

/// Closed-walk counts for lengths `0..=max_len`.
pub fn walk_profile_to(g: &Graph, max_len: usize) -> WalkProfile {
    let n = g.n();
    let mut counts: Vec<Vec<BigUint>> = vec![Vec::with_capacity(max_len + 1); n];
    fn collect<T: WalkInt>(counts: &mut [Vec<BigUint>], diag: &[T]) -> bool {
        for (row, d) in counts.iter_mut().zip(diag) {
            row.push(d.clone().into_big());
        }
        true
    }
    match width_for(g, max_len) {
        Width::U64 => walk_diagonals::<u64>(g, max_len, |_, d| collect(&mut counts, d)),
        Width::U128 => walk_diagonals::<u128>(g, max_len, |_, d| collect(&mut counts, d)),
        Width::Big => walk_diagonals::<BigUint>(g, max_len, |_, d| collect(&mut counts, d)),
    }
    WalkProfile { counts }
}

/// Closed-walk counts for lengths `0..n`, enough to decide cospectrality.
pub fn walk_profile(g: &Graph) -> WalkProfile {
    walk_profile_to(g, g.n() - 1)
}

/// True iff `a` and `b` have identical closed-walk counts for all lengths below `n`.
pub fn are_cospectral(g: &Graph, a: VertexId, b: VertexId) -> bool {
    first_difference(g, a, b).is_none()
}

/// Smallest walk length at which the closed-walk counts of `a` and `b` differ.
pub fn first_difference(g: &Graph, a: VertexId, b: VertexId) -> Option<usize> {
    assert!(a < g.n() && b < g.n(), "vertex out of range");
    let p = walk_profile(g);
    (0..p.lengths()).find(|&k| p.get(a, k) != p.get(b, k))
}

/// Partition of the vertices by equality of closed-walk rows (lengths `0..n`).
pub fn cospectral_partition(g: &Graph) -> Partition {
    Partition::from_labels(&profile_classes(g))
}

/// Per-vertex class labels by profile row; equal labels iff equal rows.
/// Labels are ranks of the rows in lexicographic order.
pub(crate) fn profile_classes(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let max_len = n - 1;
    fn rank<T: Ord>(rows: &[Vec<T>]) -> Vec<usize> {
        let mut sorted: Vec<&Vec<T>> = rows.iter().collect();
        sorted.sort();
        sorted.dedup();
        rows.iter().map(|r| sorted.binary_search(&r).unwrap()).collect()
    }
    fn rows_of<T: WalkInt + Ord>(g: &Graph, max_len: usize) -> Vec<Vec<T>> {
        let mut rows: Vec<Vec<T>> = vec![Vec::with_capacity(max_len + 1); g.n()];
        walk_diagonals::<T>(g, max_len, |_, d| {
            for (row, x) in rows.iter_mut().zip(d) {
                row.push(x.clone());
            }
            true
        });
        rows
    }
    match width_for(g, max_len) {
        Width::U64 => rank(&rows_of::<u64>(g, max_len)),
        Width::U128 => rank(&rows_of::<u128>(g, max_len)),
        Width::Big => rank(&rows_of::<BigUint>(g, max_len)),
    }
}

/// True iff all vertices are pairwise cospectral.
pub fn is_walk_regular(g: &Graph) -> bool {
    walk_regularity_failure(g).is_none()
}

/// First walk length at which the diagonal of `A^k` is not constant, if any
/// (checking `k < n`).
pub fn walk_regularity_failure(g: &Graph) -> Option<usize> {
    walk_regularity_failure_to(g, g.n() - 1)
}

/// As [`walk_regularity_failure`], checking lengths `0..=max_len`.
pub fn walk_regularity_failure_to(g: &Graph, max_len: usize) -> Option<usize> {
    fn scan<T: WalkInt + PartialEq>(g: &Graph, max_len: usize) -> Option<usize> {
        let mut failure = None;
        walk_diagonals::<T>(g, max_len, |k, d| {
            if d.iter().any(|x| *x != d[0]) {
                failure = Some(k);
                false
            } else {
                true
            }
        });
        failure
    }
    // Cheap exit on degree.
    if g.n() > 1 && max_len >= 2 && g.regular_degree().is_none() && !g.has_loops() {
        return Some(2);
    }
    match width_for(g, max_len) {
        Width::U64 => scan::<u64>(g, max_len),
        Width::U128 => scan::<u128>(g, max_len),
        Width::Big => scan::<BigUint>(g, max_len),
    }
}

/// The graph and vertex pair showing that the bound `n - 1` cannot be
/// lowered: the path for odd `n = 2l + 1`, the path with a loop at its last
/// vertex for even `n = 2l`, and the vertices `l - 1`, `l`. Their counts
/// agree for every length up to `n - 2` and the second is larger at `n - 1`.
pub fn sharpness_example(n: usize) -> crate::Result<(Graph, VertexId, VertexId)> {
    if !(3..=crate::graph::MAX_VERTICES).contains(&n) {
        return Err(crate::Error::ParameterOutOfRange(format!("sharpness family needs 3 <= n <= 128, got {n}")));
    }
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let loops: &[usize] = if n % 2 == 0 { &[n - 1] } else { &[] };
    let l = n / 2;
    Ok((Graph::from_edges(n, &edges, loops)?, l - 1, l))
}

/// Counts of undirected cycles through each vertex, by length.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCensus {
    /// Largest cycle length counted.
    pub max_len: usize,
    /// `per_vertex[v][m]` = number of `m`-cycles through `v` (entries below 3 are zero).
    #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
    pub per_vertex: Vec<Vec<u64>>,
    /// Length of a shortest cycle, if any.
    pub girth: Option<usize>,
    /// Smallest cycle length above the girth realised by some cycle, searched
    /// up to `max_len`.
    pub second_length: Option<usize>,
}

/// Default longest cycle length tracked by [`cycle_census`].
pub const DEFAULT_CYCLE_CAP: usize = 10;

impl CycleCensus {
    pub fn through(&self, v: VertexId, m: usize) -> u64 {
        self.per_vertex[v].get(m).copied().unwrap_or(0)
    }

    /// The common value of `C_m(v)` if it is the same at every vertex.
    pub fn constant(&self, m: usize) -> Option<u64> {
        let first = self.through(0, m);
        self.per_vertex.iter().all(|r| r.get(m).copied().unwrap_or(0) == first).then_some(first)
    }

    /// Total number of `m`-cycles.
    pub fn total(&self, m: usize) -> u64 {
        let sum: u64 = self.per_vertex.iter().map(|r| r.get(m).copied().unwrap_or(0)).sum();
        debug_assert_eq!(sum % m as u64, 0);
        sum / m as u64
    }
}

/// Enumerates every cycle of length `3..=max_len` once, anchored at its
/// smallest vertex and oriented so the second vertex is below the last.
/// `visit` receives the vertex sequence starting at the anchor.
pub(crate) fn for_each_cycle(g: &Graph, max_len: usize, mut visit: impl FnMut(&[usize])) {
    fn extend(g: &Graph, anchor: usize, max_len: usize, path: &mut Vec<usize>, used: u128, visit: &mut impl FnMut(&[usize])) {
        let last = *path.last().unwrap();
        let len = path.len();
        if len >= 3 && g.has_edge(last, anchor) && path[1] < last {
            visit(path);
        }
        if len == max_len {
            return;
        }
        let above = !crate::graph::low_mask(anchor + 1);
        for w in Bits(g.row(last) & above & !used) {
            path.push(w);
            extend(g, anchor, max_len, path, used | crate::graph::bit(w), visit);
            path.pop();
        }
    }
    let mut path = Vec::with_capacity(max_len);
    for anchor in 0..g.n() {
        path.clear();
        path.push(anchor);
        extend(g, anchor, max_len, &mut path, crate::graph::bit(anchor), &mut visit);
    }
}

/// Cycle counts through every vertex for lengths `3..=max_len`.
pub fn cycle_census(g: &Graph, max_len: usize) -> CycleCensus {
    let n = g.n();
    let max_len = max_len.min(n);
    let mut per_vertex = vec![vec![0u64; max_len + 1]; n];
    let mut lengths = vec![false; max_len + 1];
    for_each_cycle(g, max_len, |cycle| {
        lengths[cycle.len()] = true;
        for &v in cycle {
            per_vertex[v][cycle.len()] += 1;
        }
    });
    let girth = g.girth();
    let second_length = girth.and_then(|gi| (gi + 1..=max_len).find(|&m| lengths[m]));
    CycleCensus { max_len, per_vertex, girth, second_length }
}

/// Number of `m`-cycles through `v`, each undirected cycle counted once.
pub fn cycles_through(g: &Graph, v: VertexId, m: usize) -> crate::Result<u64> {
    if m < 3 || m > g.n() {
        return Err(crate::Error::LengthOutOfRange { m, n: g.n() });
    }
    if g.has_loops() {
        return Err(crate::Error::LoopsNotRepresentable);
    }
    // Paths from v of m - 1 edges that close back to v; each cycle appears
    // in both directions, so keep the one whose second vertex is smaller.
    fn walk(g: &Graph, v: usize, m: usize, path: &mut Vec<usize>, used: u128, count: &mut u64) {
        let last = *path.last().unwrap();
        if path.len() == m {
            if g.has_edge(last, v) && path[1] < last {
                *count += 1;
            }
            return;
        }
        for w in Bits(g.row(last) & !used) {
            path.push(w);
            walk(g, v, m, path, used | crate::graph::bit(w), count);
            path.pop();
        }
    }
    let mut count = 0;
    let mut path = vec![v];
    walk(g, v, m, &mut path, crate::graph::bit(v), &mut count);
    Ok(count)
}

/// Closed-walk count at `v` predicted from cycle counts, for lengths 3 to 6.
///
/// * `k = 3`: `2 C_3(v)`, valid for any simple graph.
/// * `k = 4`: `2d^2 - d + 2 C_4(v)`, requires `d`-regularity.
/// * `k = 5`: `10(d-1) C_3 + 2 C_5(v)`, requires `C_3` constant.
/// * `k = 6`: `5d^3 - 6d^2 + 2d + 12(d-1) C_4 + 2 C_6(v)`, plus 2 when
///   `C_3 = 1`; requires `C_4` constant and `C_3` constant in `{0, 1}`.
pub fn predicted_diagonal(g: &Graph, census: &CycleCensus, v: VertexId, k: usize) -> crate::Result<u64> {
    use crate::Error::HypothesisUnmet;
    if !(3..=6).contains(&k) {
        return Err(HypothesisUnmet(format!("no closed-walk formula for length {k}")));
    }
    if census.max_len < k {
        return Err(HypothesisUnmet(format!("cycle census stops at length {}", census.max_len)));
    }
    if k == 3 {
        return Ok(2 * census.through(v, 3));
    }
    let d = g.regular_degree().ok_or_else(|| HypothesisUnmet("graph is not regular".into()))? as u64;
    match k {
        4 => Ok(2 * d * d - d + 2 * census.through(v, 4)),
        5 => {
            let c3 = census.constant(3).ok_or_else(|| HypothesisUnmet("C_3 is not constant".into()))?;
            Ok(10 * d.saturating_sub(1) * c3 + 2 * census.through(v, 5))
        }
        _ => {
            let c3 = census.constant(3).ok_or_else(|| HypothesisUnmet("C_3 is not constant".into()))?;
            if c3 > 1 {
                return Err(HypothesisUnmet(format!("C_3 = {c3} exceeds 1")));
            }
            let c4 = census.constant(4).ok_or_else(|| HypothesisUnmet("C_4 is not constant".into()))?;
            Ok(5 * d * d * d - 6 * d * d + 2 * d + 12 * d.saturating_sub(1) * c4 + 2 * census.through(v, 6) + 2 * c3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn row_u64(p: &WalkProfile, v: usize) -> Vec<u64> {
        p.row(v).iter().map(|x| x.to_u64().unwrap()).collect()
    }

    /// Counts closed walks by enumerating every walk explicitly.
    fn brute_closed_walks(g: &Graph, v: usize, k: usize) -> u64 {
        fn go(g: &Graph, at: usize, target: usize, left: usize) -> u64 {
            if left == 0 {
                return u64::from(at == target);
            }
            let mut total = 0;
            for w in g.neighbors(at) {
                total += go(g, w, target, left - 1);
            }
            if g.has_loop(at) {
                total += go(g, at, target, left - 1);
            }
            total
        }
        go(g, v, v, k)
    }

    #[test]
    fn profile_examples() {
        let c5 = walk_profile(&cycle(5));
        for v in 0..5 {
            assert_eq!(row_u64(&c5, v), vec![1, 0, 2, 0, 6]);
        }
        let k4 = walk_profile_to(&complete(4), 4);
        for v in 0..4 {
            assert_eq!(row_u64(&k4, v), vec![1, 0, 3, 6, 21]);
        }
        // P5 middle entries witness sharpness at k = 4.
        let p5 = path(5);
        let prof = walk_profile(&p5);
        for v in 0..5 {
            assert_eq!(prof.get(v, 3).to_u64(), Some(0));
            for k in 0..5 {
                assert_eq!(prof.get(v, k).to_u64().unwrap(), brute_closed_walks(&p5, v, k));
            }
        }
        assert_eq!(prof.get(1, 4).to_u64(), Some(5));
        assert_eq!(prof.get(2, 4).to_u64(), Some(6));
    }

    #[test]
    fn profile_matches_brute_force_with_loops() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)], &[0, 3]).unwrap();
        let p = walk_profile_to(&g, 7);
        for v in 0..5 {
            assert_eq!(p.get(v, 1).to_u64(), Some(u64::from(g.has_loop(v))));
            assert_eq!(p.get(v, 2).to_u64(), Some((g.degree(v) + usize::from(g.has_loop(v))) as u64));
            for k in 0..=7 {
                assert_eq!(p.get(v, k).to_u64().unwrap(), brute_closed_walks(&g, v, k));
            }
        }
    }

    #[test]
    fn big_integers_agree_with_machine_words() {
        // K_20 forces the BigUint path for lengths near 19 (19^19 > 2^64).
        let g = complete(20);
        assert_eq!(width_for(&g, 19), Width::U128);
        let p = walk_profile(&g);
        // diag(A^k) of K_n is ((n-1)^k + (n-1)(-1)^k) / n.
        for k in 0..20u32 {
            let pow = BigUint::from(19u32).pow(k);
            let expect = if k % 2 == 0 { (pow + 19u32) / 20u32 } else { (pow - 19u32) / 20u32 };
            assert_eq!(p.get(0, k as usize), &expect, "k = {k}");
        }
        let g = complete(40);
        assert_eq!(width_for(&g, 39), Width::Big);
        let p = walk_profile(&g);
        let k = 39u32;
        assert_eq!(p.get(5, 39), &((BigUint::from(39u32).pow(k) - 39u32) / 40u32));
    }

    #[test]
    fn cospectral_examples() {
        let p5 = path(5);
        assert!(are_cospectral(&p5, 0, 4));
        assert!(!are_cospectral(&p5, 1, 2));
        assert_eq!(first_difference(&p5, 1, 2), Some(4));
        let lp = loop_path(4);
        assert_eq!(first_difference(&lp, 1, 2), Some(3));
    }

    #[test]
    fn sharpness_family() {
        for n in 3..=11 {
            let (g, a, b) = sharpness_example(n).unwrap();
            assert_eq!(g.has_loops(), n % 2 == 0);
            assert_eq!(first_difference(&g, a, b), Some(n - 1), "n = {n}");
            let p = walk_profile(&g);
            assert!(p.get(a, n - 1) < p.get(b, n - 1));
        }
        assert!(sharpness_example(2).is_err());
    }

    #[test]
    fn partition_examples() {
        assert_eq!(cospectral_partition(&star(3)).blocks(), &[vec![0], vec![1, 2, 3]]);
        assert_eq!(cospectral_partition(&cycle(6)).blocks(), &[vec![0, 1, 2, 3, 4, 5]]);
    }

    #[test]
    fn walk_regular_examples() {
        assert!(is_walk_regular(&petersen()));
        assert_eq!(walk_regularity_failure(&star(3)), Some(2));
        assert!(is_walk_regular(&Graph::empty(1).unwrap()));
    }

    #[test]
    fn cycle_counts() {
        let oct = octahedron();
        let pet = petersen();
        let cube = cube();
        for v in 0..6 {
            assert_eq!(cycles_through(&oct, v, 3).unwrap(), 4);
        }
        for v in 0..10 {
            assert_eq!(cycles_through(&pet, v, 5).unwrap(), 6);
        }
        for v in 0..8 {
            assert_eq!(cycles_through(&cube, v, 4).unwrap(), 3);
        }
        let census = cycle_census(&pet, 10);
        assert_eq!(census.total(5), 12);
        assert_eq!(census.girth, Some(5));
        assert_eq!(census.second_length, Some(6));
        assert_eq!(cycles_through(&pet, 0, 2), Err(crate::Error::LengthOutOfRange { m: 2, n: 10 }));
        assert_eq!(cycles_through(&pet, 0, 11), Err(crate::Error::LengthOutOfRange { m: 11, n: 10 }));
    }

    #[test]
    fn census_matches_single_vertex_counts() {
        for g in [petersen(), cube(), octahedron(), complete(6), complete_bipartite(3, 4)] {
            let census = cycle_census(&g, g.n());
            for v in 0..g.n() {
                for m in 3..=g.n() {
                    assert_eq!(census.through(v, m), cycles_through(&g, v, m).unwrap());
                }
            }
        }
    }

    #[test]
    fn formula_examples() {
        let pet = petersen();
        let census = cycle_census(&pet, 10);
        assert_eq!(predicted_diagonal(&pet, &census, 0, 4).unwrap(), 15);
        assert_eq!(predicted_diagonal(&pet, &census, 0, 5).unwrap(), 12);
        let oct = octahedron();
        let census = cycle_census(&oct, 6);
        assert_eq!(predicted_diagonal(&oct, &census, 0, 3).unwrap(), 8);
        let st = star(3);
        let census = cycle_census(&st, 4);
        assert!(matches!(predicted_diagonal(&st, &census, 0, 4), Err(crate::Error::HypothesisUnmet(_))));
    }
}
