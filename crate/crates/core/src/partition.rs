//! Vertex partitions with a canonical block order.

use serde::{Deserialize, Serialize};

/// A partition of `0..n` into blocks. Each block is sorted and blocks are
/// ordered by their smallest vertex, so equal partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Groups vertices with equal labels.
    pub fn from_labels<L: Eq + std::hash::Hash + Clone>(labels: &[L]) -> Self {
        let mut index: std::collections::HashMap<L, usize> = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (v, l) in labels.iter().enumerate() {
            let b = *index.entry(l.clone()).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(v);
        }
        Partition { blocks }
    }

    /// Normalises arbitrary blocks; panics unless they cover `0..n` exactly once.
    pub fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_unstable_by_key(|b| b[0]);
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for &v in blocks.iter().flatten() {
            assert!(v < n && !seen[v], "blocks do not partition 0..{n}");
            seen[v] = true;
        }
        Partition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block index of each vertex.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.n()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                out[v] = i;
            }
        }
        out
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.blocks.iter().any(|blk| blk.contains(&a) && blk.contains(&b))
    }

    /// True iff every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let labels = coarser.labels();
        self.blocks.iter().all(|b| b.iter().all(|&v| labels[v] == labels[b[0]]))
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_and_refinement() {
        let p = Partition::from_labels(&["b", "a", "b", "c"]);
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1], vec![3]]);
        let q = Partition::from_blocks(vec![vec![3, 1], vec![2, 0]]);
        assert_eq!(q.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert!(p.refines(&q));
        assert!(!q.refines(&p));
        assert!(p.same_block(0, 2));
        assert_eq!(p.labels(), vec![0, 1, 0, 2]);
    }
}
