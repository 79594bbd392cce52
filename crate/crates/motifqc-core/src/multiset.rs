//! Ordered vertex multisets, the sampling unit of every tester.

use rand::Rng;

/// A sequence of vertex ids with repetition allowed. Position order is kept
/// because the testers reason about ordered tuples of distinct positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMultiset {
    positions: Vec<u32>,
}

impl VertexMultiset {
    pub fn new(positions: Vec<u32>) -> Self {
        assert!(!positions.is_empty(), "multiset must be nonempty");
        VertexMultiset { positions }
    }

    /// Samples `s` vertices of `[n]` uniformly with repetition.
    pub fn sample(rng: &mut impl Rng, n: usize, s: usize) -> Self {
        let positions = (0..s).map(|_| rng.gen_range(0..n as u32)).collect();
        VertexMultiset::new(positions)
    }

    /// One copy of every vertex of an `n`-vertex graph.
    pub fn full_cover(n: usize) -> Self {
        VertexMultiset::new((0..n as u32).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn max_id(&self) -> u32 {
        *self.positions.iter().max().unwrap()
    }

    /// Distinct vertex ids in increasing order with their multiplicities.
    pub fn distinct_with_mults(&self) -> (Vec<u32>, Vec<u64>) {
        let mut sorted = self.positions.clone();
        sorted.sort_unstable();
        let mut verts = Vec::new();
        let mut mults = Vec::new();
        for v in sorted {
            if verts.last() == Some(&v) {
                *mults.last_mut().unwrap() += 1;
            } else {
                verts.push(v);
                mults.push(1);
            }
        }
        (verts, mults)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_with_mults_orders_and_counts() {
        let ms = VertexMultiset::new(vec![3, 1, 3, 3, 0]);
        let (v, m) = ms.distinct_with_mults();
        assert_eq!(v, vec![0, 1, 3]);
        assert_eq!(m, vec![1, 1, 3]);
    }

    #[test]
    fn sample_respects_range() {
        let mut rng = crate::seeds::derive_rng(5, &[]);
        let ms = VertexMultiset::sample(&mut rng, 17, 400);
        assert_eq!(ms.len(), 400);
        assert!(ms.positions().iter().all(|&v| v < 17));
    }
}
