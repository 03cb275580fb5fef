//! Simple undirected graphs over dense vertex indices `0..order`.
//!
//! Adjacency is stored as one bit-packed row per vertex (`words_per_row`
//! `u64` words each, laid out contiguously). Neighbourhood intersections and
//! degree counts are popcounts over rows, which is what the containment
//! search and the brute-force oracle spend their time on.

use std::fmt;

use crate::error::GraphError;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(order: usize) -> usize {
    order.div_ceil(WORD_BITS)
}

/// `C(m, 2)` as a `u64`.
#[inline]
pub fn choose2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

/// A simple graph: symmetric, irreflexive adjacency on `0..order`.
///
/// Values are immutable once built; every constructor returns a fresh graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    order: usize,
    words: usize,
    bits: Vec<u64>,
}

impl SimpleGraph {
    /// Graph with `p` vertices and no edges.
    pub fn empty(p: usize) -> Self {
        let words = words_for(p);
        Self {
            order: p,
            words,
            bits: vec![0; words * p],
        }
    }

    /// The complete graph `K_m`.
    pub fn complete(m: usize) -> Self {
        let mut g = Self::empty(m);
        for u in 0..m {
            for v in (u + 1)..m {
                g.insert_edge(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list. Rejects loops and out-of-range
    /// endpoints; repeated edges are collapsed.
    pub fn from_edges<I>(p: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(p);
        for (u, v) in edges {
            if u >= p || v >= p {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    order: p,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Circulant graph on `Z_m`: `i ~ i ± d (mod m)` for every offset `d`.
    ///
    /// Offsets must lie in `1..=m/2`. The half offset `m/2` (even `m`)
    /// contributes one to every degree, all others two.
    pub fn circulant(m: usize, offsets: &[usize]) -> Result<Self, GraphError> {
        let mut g = Self::empty(m);
        for &d in offsets {
            if d == 0 || d > m / 2 {
                return Err(GraphError::OffsetOutOfRange { offset: d, order: m });
            }
            for i in 0..m {
                g.insert_edge(i, (i + d) % m);
            }
        }
        Ok(g)
    }

    /// Vertex-disjoint union; `b`'s vertices are shifted up by `a.order()`.
    pub fn disjoint_union(a: &SimpleGraph, b: &SimpleGraph) -> Self {
        let mut g = Self::empty(a.order + b.order);
        for (u, v) in a.edges() {
            g.insert_edge(u, v);
        }
        let shift = a.order;
        for (u, v) in b.edges() {
            g.insert_edge(u + shift, v + shift);
        }
        g
    }

    /// Disjoint union of a sequence of graphs, in order.
    pub fn union_all<'a, I>(parts: I) -> Self
    where
        I: IntoIterator<Item = &'a SimpleGraph>,
    {
        parts
            .into_iter()
            .fold(Self::empty(0), |acc, part| Self::disjoint_union(&acc, part))
    }

    /// Complement on the same vertex set.
    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.order);
        for u in 0..self.order {
            for v in (u + 1)..self.order {
                if !self.has_edge(u, v) {
                    g.insert_edge(u, v);
                }
            }
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of `u64` words in each adjacency row.
    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    /// Bit-packed neighbourhood of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.order && v < self.order);
        self.bits[u * self.words + v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> u64 {
        let twice: u64 = self.bits.iter().map(|w| u64::from(w.count_ones())).sum();
        twice / 2
    }

    /// Degrees sorted in descending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = (0..self.order).map(|v| self.degree(v)).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> Neighbors<'_> {
        Neighbors::new(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Component label per vertex (labels are `0..count`, by smallest member).
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.order];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.order {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// For every vertex, the number of vertices in its component.
    pub fn component_sizes(&self) -> Vec<usize> {
        let label = self.components();
        let mut size = vec![0usize; self.order];
        for &l in &label {
            size[l] += 1;
        }
        label.iter().map(|&l| size[l]).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.order <= 1 || self.components().iter().all(|&l| l == 0)
    }

    /// Connected and `order - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.order >= 1 && self.edge_count() == self.order as u64 - 1 && self.is_connected()
    }

    /// Copy of `self` with the listed edges added.
    pub fn with_edges<I>(&self, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = self.clone();
        for (u, v) in edges {
            if u >= g.order || v >= g.order {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    order: g.order,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    // Mutation stays crate-private: the oracle grows a working graph in place.
    #[inline]
    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / WORD_BITS] |= 1 << (v % WORD_BITS);
        self.bits[v * self.words + u / WORD_BITS] |= 1 << (u % WORD_BITS);
    }

    #[inline]
    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / WORD_BITS] &= !(1 << (v % WORD_BITS));
        self.bits[v * self.words + u / WORD_BITS] &= !(1 << (u % WORD_BITS));
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGraph")
            .field("order", &self.order)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Iterator over the set bits of an adjacency row.
pub struct Neighbors<'a> {
    row: &'a [u64],
    word: usize,
    current: u64,
}

impl<'a> Neighbors<'a> {
    fn new(row: &'a [u64]) -> Self {
        Self {
            row,
            word: 0,
            current: row.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * WORD_BITS + bit);
            }
            self.word += 1;
            if self.word >= self.row.len() {
                return None;
            }
            self.current = self.row[self.word];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(m: usize) -> SimpleGraph {
        SimpleGraph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m))).unwrap()
    }

    #[test]
    fn empty_graphs() {
        let g = SimpleGraph::empty(0);
        assert_eq!(g.order(), 0);
        assert_eq!(g.edge_count(), 0);
        let g = SimpleGraph::empty(5);
        assert_eq!(g.degree_sequence(), vec![0; 5]);
        assert_eq!(SimpleGraph::empty(100).edge_count(), 0);
    }

    #[test]
    fn complete_graphs() {
        let k14 = SimpleGraph::complete(14);
        assert_eq!(k14.edge_count(), 91);
        assert!(k14.degree_sequence().iter().all(|&d| d == 13));
        let k1 = SimpleGraph::complete(1);
        assert_eq!((k1.order(), k1.edge_count()), (1, 0));
    }

    #[test]
    fn disjoint_union_counts() {
        let g = SimpleGraph::disjoint_union(&SimpleGraph::complete(14), &SimpleGraph::complete(6));
        assert_eq!(g.order(), 20);
        assert_eq!(g.edge_count(), 106);
        assert!(!g.has_edge(0, 14));

        let k = SimpleGraph::complete(5);
        assert_eq!(SimpleGraph::disjoint_union(&k, &SimpleGraph::empty(0)), k);

        let two = SimpleGraph::disjoint_union(&SimpleGraph::complete(2), &SimpleGraph::complete(2));
        assert_eq!(two.edge_count(), 2);
        assert_eq!(two.degree_sequence(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn complement_basics() {
        assert_eq!(SimpleGraph::complete(5).complement(), SimpleGraph::empty(5));
        let c5 = cycle(5);
        let comp = c5.complement();
        assert_eq!(comp.edge_count(), 5);
        assert_eq!(comp.degree_sequence(), vec![2; 5]);
        assert!(comp.is_connected());
        assert_eq!(comp.complement(), c5);
    }

    #[test]
    fn circulants() {
        let c6 = SimpleGraph::circulant(6, &[1]).unwrap();
        assert_eq!(c6, cycle(6));
        assert_eq!(SimpleGraph::circulant(6, &[1, 2, 3]).unwrap(), SimpleGraph::complete(6));
        let g = SimpleGraph::circulant(20, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(g.edge_count(), 100);
        assert_eq!(g.degree_sequence(), vec![10; 20]);
        assert!(matches!(
            SimpleGraph::circulant(6, &[4]),
            Err(GraphError::OffsetOutOfRange { offset: 4, order: 6 })
        ));
        assert!(SimpleGraph::circulant(6, &[0]).is_err());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(SimpleGraph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1))));
        assert!(SimpleGraph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn wide_rows() {
        let g = SimpleGraph::from_edges(130, [(0, 129), (64, 65), (63, 64)]).unwrap();
        assert_eq!(g.words_per_row(), 3);
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![63, 65]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 129), (63, 64), (64, 65)]);
        assert_eq!(g.max_degree(), 2);
    }

    #[test]
    fn components_and_trees() {
        let g = SimpleGraph::disjoint_union(&SimpleGraph::complete(3), &cycle(4));
        assert_eq!(g.components(), vec![0, 0, 0, 1, 1, 1, 1]);
        assert_eq!(g.component_sizes(), vec![3, 3, 3, 4, 4, 4, 4]);
        assert!(!g.is_connected());
        let path = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(path.is_tree());
        assert!(!cycle(4).is_tree());
    }
}
