//! The forbidden trees.
//!
//! The three spiders of maximum degree `n - 4` share the layout
//! `v_0 v_1, ..., v_0 v_{n-4}` and differ in where the last three vertices hang:
//!
//! | family          | last three edges                               |
//! |-----------------|------------------------------------------------|
//! | `T3`            | `v_1 v_{n-3}`, `v_1 v_{n-2}`, `v_1 v_{n-1}`    |
//! | `TDoublePrime`  | `v_1 v_{n-3}`, `v_1 v_{n-2}`, `v_2 v_{n-1}`    |
//! | `TTriplePrime`  | `v_1 v_{n-3}`, `v_2 v_{n-2}`, `v_3 v_{n-1}`    |
//!
//! Vertex `i` of the realized graph is `v_i`.

use std::fmt;
use std::str::FromStr;

use crate::error::TreeError;
use crate::graph::SimpleGraph;
use crate::io;

/// A named forbidden tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TreeFamily {
    T3(usize),
    TDoublePrime(usize),
    TTriplePrime(usize),
    /// Path on `n` vertices.
    Path(usize),
    /// `K_{1,s}`: a centre with `s` leaves (`s + 1` vertices).
    Star(usize),
    /// Any tree, given by its vertex count and edges.
    Explicit { order: usize, edges: Vec<(usize, usize)> },
}

impl TreeFamily {
    /// Validates an explicit edge list as a tree.
    pub fn explicit(order: usize, edges: Vec<(usize, usize)>) -> Result<Self, TreeError> {
        let g = SimpleGraph::from_edges(order, edges.iter().copied())
            .map_err(|e| TreeError::NotATree(e.to_string()))?;
        if edges.len() + 1 != order || !g.is_tree() {
            return Err(TreeError::NotATree(format!(
                "{} vertices, {} edges, connected: {}",
                order,
                edges.len(),
                g.is_connected()
            )));
        }
        Ok(Self::Explicit { order, edges })
    }

    pub fn from_graph(g: &SimpleGraph) -> Result<Self, TreeError> {
        Self::explicit(g.order(), g.edges().collect())
    }

    /// Vertex count of the tree.
    pub fn order(&self) -> usize {
        match *self {
            Self::T3(n) | Self::TDoublePrime(n) | Self::TTriplePrime(n) | Self::Path(n) => n,
            Self::Star(s) => s + 1,
            Self::Explicit { order, .. } => order,
        }
    }

    /// Short name used in family specs and reports.
    pub fn tag(&self) -> &'static str {
        match self {
            Self::T3(_) => "t3",
            Self::TDoublePrime(_) => "tpp",
            Self::TTriplePrime(_) => "tppp",
            Self::Path(_) => "path",
            Self::Star(_) => "star",
            Self::Explicit { .. } => "explicit",
        }
    }

    fn check(&self) -> Result<(), TreeError> {
        let (family, min, n) = match *self {
            Self::T3(n) => ("T3", 6, n),
            Self::TDoublePrime(n) => ("TDoublePrime", 6, n),
            Self::TTriplePrime(n) => ("TTriplePrime", 6, n),
            Self::Path(n) => ("Path", 2, n),
            Self::Star(s) => ("Star", 1, s),
            Self::Explicit { .. } => return Ok(()),
        };
        if n < min {
            return Err(TreeError::TooSmall { family, min, n });
        }
        Ok(())
    }

    /// Edge list of the tree in the documented vertex layout.
    pub fn edges(&self) -> Result<Vec<(usize, usize)>, TreeError> {
        self.check()?;
        let spider = |n: usize, tail: [(usize, usize); 3]| -> Vec<(usize, usize)> {
            (1..=n - 4).map(|i| (0, i)).chain(tail).collect()
        };
        Ok(match *self {
            Self::T3(n) => spider(n, [(1, n - 3), (1, n - 2), (1, n - 1)]),
            Self::TDoublePrime(n) => spider(n, [(1, n - 3), (1, n - 2), (2, n - 1)]),
            Self::TTriplePrime(n) => spider(n, [(1, n - 3), (2, n - 2), (3, n - 1)]),
            Self::Path(n) => (1..n).map(|i| (i - 1, i)).collect(),
            Self::Star(s) => (1..=s).map(|i| (0, i)).collect(),
            Self::Explicit { ref edges, .. } => edges.clone(),
        })
    }

    /// The tree as a graph.
    pub fn realize(&self) -> Result<SimpleGraph, TreeError> {
        let edges = self.edges()?;
        SimpleGraph::from_edges(self.order(), edges).map_err(|e| TreeError::NotATree(e.to_string()))
    }

    /// Maximum degree, without building the tree.
    pub fn max_degree(&self) -> Result<usize, TreeError> {
        self.check()?;
        Ok(match *self {
            // v_0 has degree n - 4; v_1 has at most 4, which ties only at n = 8.
            Self::T3(n) => (n - 4).max(4),
            Self::TDoublePrime(n) => (n - 4).max(3),
            Self::TTriplePrime(n) => (n - 4).max(2),
            Self::Path(n) => n.min(3) - 1,
            Self::Star(s) => s,
            Self::Explicit { .. } => self.realize()?.max_degree(),
        })
    }

    /// Skeleton (internal vertices plus leaf demands) for the spider
    /// families. Other families go through the generic search.
    pub fn skeleton(&self) -> Result<SkeletonDecomposition, TreeError> {
        match self {
            Self::T3(_) | Self::TDoublePrime(_) | Self::TTriplePrime(_) => {
                let tree = self.realize()?;
                Ok(SkeletonDecomposition::from_tree(&tree, 0))
            }
            other => Err(TreeError::NoSkeleton(other.to_string())),
        }
    }

    /// Parses a family spec: `t3:15`, `tpp:15`, `tppp:15`, `path:7`,
    /// `star:9` (nine leaves) or `file:<edge-list path>`.
    pub fn parse_spec(spec: &str) -> Result<Self, TreeError> {
        let bad = || TreeError::BadSpec(spec.to_string());
        let (kind, arg) = spec.split_once(':').ok_or_else(bad)?;
        if kind == "file" {
            let text = std::fs::read_to_string(arg).map_err(|e| TreeError::Io {
                path: arg.to_string(),
                message: e.to_string(),
            })?;
            let g = io::from_edge_list(&text).map_err(|e| TreeError::NotATree(e.to_string()))?;
            return Self::from_graph(&g);
        }
        let value: usize = arg.trim().parse().map_err(|_| bad())?;
        let family = Self::from_tag(kind, value).ok_or_else(bad)?;
        family.check()?;
        Ok(family)
    }

    /// `tag` plus parameter, e.g. `("t3", 15)`.
    pub fn from_tag(tag: &str, value: usize) -> Option<Self> {
        Some(match tag {
            "t3" => Self::T3(value),
            "tpp" => Self::TDoublePrime(value),
            "tppp" => Self::TTriplePrime(value),
            "path" => Self::Path(value),
            "star" => Self::Star(value),
            _ => return None,
        })
    }
}

impl fmt::Display for TreeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Star(s) => write!(f, "star:{s}"),
            Self::Explicit { order, edges } => write!(f, "explicit({order} vertices, {} edges)", edges.len()),
            other => write!(f, "{}:{}", other.tag(), other.order()),
        }
    }
}

impl FromStr for TreeFamily {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_spec(s)
    }
}

/// Internal vertices of a tree with the leaves hanging off each of them.
///
/// `internal` is in BFS order from the root, so every entry after the first
/// has its skeleton parent earlier in the list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonDecomposition {
    /// Tree vertex ids of the internal vertices.
    pub internal: Vec<usize>,
    /// Index into `internal` of each entry's skeleton parent (`None` for the root).
    pub parent: Vec<Option<usize>>,
    /// Leaf tree-vertices attached to each internal vertex.
    pub leaves: Vec<Vec<usize>>,
    /// Tree degree of each internal vertex.
    pub degree: Vec<usize>,
}

impl SkeletonDecomposition {
    /// Decomposes `tree` rooted at `root`. A tree on two vertices has no
    /// internal vertex in the usual sense; the root is then kept as the
    /// single internal vertex.
    pub fn from_tree(tree: &SimpleGraph, root: usize) -> Self {
        let n = tree.order();
        let is_leaf = |v: usize| tree.degree(v) <= 1 && n > 2;
        let mut internal = vec![root];
        let mut parent = vec![None];
        let mut leaves = vec![Vec::new()];
        let mut index_of = vec![usize::MAX; n];
        index_of[root] = 0;
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut head = 0;
        while head < internal.len() {
            let u = internal[head];
            for w in tree.neighbors(u) {
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                if is_leaf(w) || n <= 2 {
                    leaves[head].push(w);
                } else {
                    index_of[w] = internal.len();
                    internal.push(w);
                    parent.push(Some(head));
                    leaves.push(Vec::new());
                }
            }
            head += 1;
        }
        let degree = internal.iter().map(|&v| tree.degree(v)).collect();
        Self {
            internal,
            parent,
            leaves,
            degree,
        }
    }

    /// Leaf count per internal vertex.
    pub fn demands(&self) -> Vec<usize> {
        self.leaves.iter().map(Vec::len).collect()
    }

    /// Skeleton edges as tree-vertex pairs `(parent, child)`.
    pub fn skeleton_edges(&self) -> Vec<(usize, usize)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (self.internal[p], self.internal[i])))
            .collect()
    }

    /// Vertex count of the tree this decomposes.
    pub fn tree_order(&self) -> usize {
        self.internal.len() + self.leaves.iter().map(Vec::len).sum::<usize>()
    }

    /// Rebuilds the tree from skeleton edges plus leaf attachments.
    pub fn reconstruct(&self) -> SimpleGraph {
        let edges = self.skeleton_edges().into_iter().chain(
            self.internal
                .iter()
                .zip(&self.leaves)
                .flat_map(|(&u, ls)| ls.iter().map(move |&l| (u, l))),
        );
        SimpleGraph::from_edges(self.tree_order(), edges).expect("skeleton vertices are in range")
    }
}
