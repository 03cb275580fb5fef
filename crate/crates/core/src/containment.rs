//! Does a host graph contain a given tree as a (not necessarily induced)
//! subgraph?
//!
//! Two exact procedures:
//!
//! * [`skeleton_search`] places the internal vertices of the tree one by one
//!   and then assigns all leaves at once by bipartite matching. The spiders
//!   have at most four internal vertices and `n - 4` or more leaves, so this
//!   avoids enumerating interchangeable leaves altogether.
//! * [`generic_backtrack`] assigns tree vertices one at a time (internal
//!   vertices first, then leaves grouped by parent) and only enumerates
//!   sibling leaves as increasing sequences of host vertices.
//!
//! Both are deterministic; witnesses are reproducible.

use serde::Serialize;

use crate::error::TreeError;
use crate::graph::SimpleGraph;
use crate::matching::max_matching;
use crate::trees::{SkeletonDecomposition, TreeFamily};

/// Injective, edge-preserving map from tree vertices to host vertices;
/// `map()[t]` is the image of tree vertex `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingWitness {
    map: Vec<usize>,
}

impl EmbeddingWitness {
    pub fn new(map: Vec<usize>) -> Self {
        Self { map }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

/// Certificate check, independent of any search: `w` is injective, in
/// range, covers every tree vertex and sends tree edges to host edges.
pub fn verify_witness(g: &SimpleGraph, t: &SimpleGraph, w: &EmbeddingWitness) -> bool {
    let map = w.map();
    if map.len() != t.order() || map.iter().any(|&h| h >= g.order()) {
        return false;
    }
    let mut seen = vec![false; g.order()];
    for &h in map {
        if std::mem::replace(&mut seen[h], true) {
            return false;
        }
    }
    t.edges().all(|(a, b)| g.has_edge(map[a], map[b]))
}

/// Decides whether `g` contains the tree named by `f`. Spider families use
/// [`skeleton_search`]; everything else uses [`generic_backtrack`].
pub fn contains_tree(g: &SimpleGraph, f: &TreeFamily) -> Result<Option<EmbeddingWitness>, TreeError> {
    let t = f.realize()?;
    match f.skeleton() {
        Ok(skeleton) => Ok(skeleton_search(g, &t, &skeleton)),
        Err(TreeError::NoSkeleton(_)) => generic_backtrack(g, &t),
        Err(e) => Err(e),
    }
}

fn trivially_absent(g: &SimpleGraph, t: &SimpleGraph) -> bool {
    t.order() > g.order() || t.max_degree() > g.max_degree()
}

/// Skeleton placement plus leaf matching. `skeleton` must decompose `t`.
pub fn skeleton_search(g: &SimpleGraph, t: &SimpleGraph, skeleton: &SkeletonDecomposition) -> Option<EmbeddingWitness> {
    if t.order() == 0 {
        return Some(EmbeddingWitness::new(Vec::new()));
    }
    if trivially_absent(g, t) {
        return None;
    }
    let host_degree: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let component_size = g.component_sizes();
    let tree_order = t.order();

    let mut roots: Vec<usize> = (0..g.order())
        .filter(|&v| host_degree[v] >= skeleton.degree[0] && component_size[v] >= tree_order)
        .collect();
    roots.sort_by(|&a, &b| host_degree[b].cmp(&host_degree[a]).then(a.cmp(&b)));

    let k = skeleton.internal.len();
    let demands = skeleton.demands();
    let has_internal_child: Vec<bool> = (0..k).map(|i| skeleton.parent.contains(&Some(i))).collect();
    // Position i must take a larger host vertex than i - 1 when the two are
    // swappable by a tree automorphism.
    let after_prev: Vec<bool> = (0..k)
        .map(|i| {
            i > 0
                && skeleton.parent[i] == skeleton.parent[i - 1]
                && demands[i] == demands[i - 1]
                && skeleton.degree[i] == skeleton.degree[i - 1]
                && !has_internal_child[i]
                && !has_internal_child[i - 1]
        })
        .collect();

    let mut state = SkeletonState {
        g,
        skeleton,
        demands: &demands,
        host_degree: &host_degree,
        after_prev: &after_prev,
        image: vec![usize::MAX; k],
        used: vec![false; g.order()],
    };
    for root in roots {
        state.image[0] = root;
        state.used[root] = true;
        let found = state.place(1);
        state.used[root] = false;
        if let Some(map) = found {
            return Some(EmbeddingWitness::new(map));
        }
    }
    None
}

struct SkeletonState<'a> {
    g: &'a SimpleGraph,
    skeleton: &'a SkeletonDecomposition,
    demands: &'a [usize],
    host_degree: &'a [usize],
    after_prev: &'a [bool],
    image: Vec<usize>,
    used: Vec<bool>,
}

impl SkeletonState<'_> {
    fn place(&mut self, i: usize) -> Option<Vec<usize>> {
        if i == self.skeleton.internal.len() {
            return self.match_leaves();
        }
        let parent = self.skeleton.parent[i].expect("non-root skeleton vertex has a parent");
        let floor = if self.after_prev[i] { self.image[i - 1] + 1 } else { 0 };
        let candidates: Vec<usize> = self
            .g
            .neighbors(self.image[parent])
            .filter(|&h| h >= floor && !self.used[h] && self.host_degree[h] >= self.skeleton.degree[i])
            .collect();
        for h in candidates {
            self.image[i] = h;
            self.used[h] = true;
            let found = self.place(i + 1);
            self.used[h] = false;
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn match_leaves(&self) -> Option<Vec<usize>> {
        let k = self.skeleton.internal.len();
        let mut slots: Vec<Vec<usize>> = Vec::new();
        for j in 0..k {
            let free: Vec<usize> = self.g.neighbors(self.image[j]).filter(|&h| !self.used[h]).collect();
            if free.len() < self.demands[j] {
                return None;
            }
            slots.extend(std::iter::repeat_n(free, self.demands[j]));
        }
        let mates = max_matching(&slots, self.g.order());
        if mates.iter().any(Option::is_none) {
            return None;
        }
        let mut map = vec![usize::MAX; self.skeleton.tree_order()];
        for (j, &v) in self.skeleton.internal.iter().enumerate() {
            map[v] = self.image[j];
        }
        let mut mates = mates.into_iter().flatten();
        for leaves in &self.skeleton.leaves {
            for &leaf in leaves {
                map[leaf] = mates.next().expect("one mate per slot");
            }
        }
        Some(map)
    }
}

/// Assignment order for the backtracking search.
#[derive(Debug, Clone)]
struct Plan {
    /// Tree vertices in assignment order.
    order: Vec<usize>,
    /// Position of each entry's tree parent (unused at position 0).
    parent: Vec<usize>,
    degree: Vec<usize>,
    /// Position whose image must be smaller than this one's.
    after: Vec<Option<usize>>,
}

impl Plan {
    /// Root first, then `pinned_child` (a neighbour of the root) if given,
    /// then the remaining internal vertices in BFS order, then leaves
    /// grouped by parent.
    fn new(t: &SimpleGraph, root: usize, pinned_child: Option<usize>) -> Self {
        let n = t.order();
        let mut bfs_parent = vec![usize::MAX; n];
        let mut bfs = vec![root];
        bfs_parent[root] = root;
        let mut head = 0;
        while head < bfs.len() {
            let u = bfs[head];
            for w in t.neighbors(u) {
                if bfs_parent[w] == usize::MAX {
                    bfs_parent[w] = u;
                    bfs.push(w);
                }
            }
            head += 1;
        }
        let is_fixed = |v: usize| v == root || Some(v) == pinned_child;
        let is_leaf = |v: usize| t.degree(v) == 1 && !is_fixed(v);

        let mut order = vec![root];
        order.extend(pinned_child);
        order.extend(bfs.iter().copied().filter(|&v| !is_fixed(v) && !is_leaf(v)));
        let internal_count = order.len();
        for idx in 0..internal_count {
            let u = order[idx];
            order.extend(t.neighbors(u).filter(|&w| is_leaf(w) && bfs_parent[w] == u));
        }
        debug_assert_eq!(order.len(), n);

        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let parent = order
            .iter()
            .map(|&v| if v == root { 0 } else { position[bfs_parent[v]] })
            .collect::<Vec<_>>();
        let after = (0..n)
            .map(|i| {
                let sibling_leaf = i > 0
                    && i > internal_count
                    && i >= internal_count
                    && parent[i] == parent[i - 1];
                sibling_leaf.then(|| i - 1)
            })
            .collect();
        Self {
            degree: order.iter().map(|&v| t.degree(v)).collect(),
            order,
            parent,
            after,
        }
    }
}

struct Backtrack<'a> {
    g: &'a SimpleGraph,
    plan: &'a Plan,
    host_degree: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Backtrack<'_> {
    fn run(&mut self, pos: usize) -> bool {
        if pos == self.plan.order.len() {
            return true;
        }
        let parent_image = self.image[self.plan.parent[pos]];
        let floor = self.plan.after[pos].map_or(0, |a| self.image[a] + 1);
        let need = self.plan.degree[pos];
        let row = self.g.neighbors(parent_image);
        for h in row {
            if h < floor || self.used[h] || self.host_degree[h] < need {
                continue;
            }
            self.image[pos] = h;
            self.used[h] = true;
            if self.run(pos + 1) {
                return true;
            }
            self.used[h] = false;
        }
        false
    }

    fn witness(&self) -> EmbeddingWitness {
        let mut map = vec![0; self.plan.order.len()];
        for (pos, &v) in self.plan.order.iter().enumerate() {
            map[v] = self.image[pos];
        }
        EmbeddingWitness::new(map)
    }
}

fn backtrack_with(g: &SimpleGraph, plan: &Plan, fixed: &[usize]) -> Option<EmbeddingWitness> {
    let host_degree: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    for (pos, &h) in fixed.iter().enumerate() {
        if host_degree[h] < plan.degree[pos] {
            return None;
        }
    }
    let mut search = Backtrack {
        g,
        plan,
        host_degree,
        image: vec![usize::MAX; plan.order.len()],
        used: vec![false; g.order()],
    };
    for (pos, &h) in fixed.iter().enumerate() {
        if search.used[h] {
            return None;
        }
        search.image[pos] = h;
        search.used[h] = true;
    }
    search.run(fixed.len()).then(|| search.witness())
}

/// Exact containment for any tree `t` by backtracking from a
/// maximum-degree root.
pub fn generic_backtrack(g: &SimpleGraph, t: &SimpleGraph) -> Result<Option<EmbeddingWitness>, TreeError> {
    if !t.is_tree() {
        if t.order() == 0 {
            return Ok(Some(EmbeddingWitness::new(Vec::new())));
        }
        return Err(TreeError::NotATree(format!("{} vertices, {} edges", t.order(), t.edge_count())));
    }
    if trivially_absent(g, t) {
        return Ok(None);
    }
    let root = (0..t.order()).max_by_key(|&v| (t.degree(v), std::cmp::Reverse(v))).unwrap_or(0);
    let plan = Plan::new(t, root, None);
    let component_size = g.component_sizes();
    let mut roots: Vec<usize> = (0..g.order())
        .filter(|&v| g.degree(v) >= plan.degree[0] && component_size[v] >= t.order())
        .collect();
    roots.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    Ok(roots.into_iter().find_map(|h| backtrack_with(g, &plan, &[h])))
}

/// Precomputed searches for embeddings that use one prescribed host edge.
///
/// One plan per oriented tree edge `(x, y)`, up to automorphisms of the
/// tree: oriented edges whose two rooted halves are isomorphic are the
/// same to the search and are kept once.
#[derive(Debug, Clone)]
pub struct EdgeAnchoredSearch {
    plans: Vec<Plan>,
    tree_order: usize,
}

impl EdgeAnchoredSearch {
    pub fn new(t: &SimpleGraph) -> Result<Self, TreeError> {
        if !t.is_tree() || t.order() < 2 {
            return Err(TreeError::NotATree("edge-anchored search needs a tree with an edge".into()));
        }
        let mut seen = std::collections::HashSet::new();
        let mut plans = Vec::new();
        for (a, b) in t.edges() {
            for (x, y) in [(a, b), (b, a)] {
                let key = (rooted_code(t, x, y), rooted_code(t, y, x));
                if seen.insert(key) {
                    plans.push(Plan::new(t, x, Some(y)));
                }
            }
        }
        Ok(Self {
            plans,
            tree_order: t.order(),
        })
    }

    /// Number of distinct anchored plans (oriented edge orbits).
    pub fn plan_count(&self) -> usize {
        self.plans.len()
    }

    /// An embedding whose image contains the host edge `{a, b}`, if any.
    pub fn find(&self, g: &SimpleGraph, a: usize, b: usize) -> Option<EmbeddingWitness> {
        if self.tree_order > g.order() {
            return None;
        }
        self.plans.iter().find_map(|plan| backtrack_with(g, plan, &[a, b]))
    }
}

/// AHU code of the subtree hanging from `v` away from `parent`.
fn rooted_code(t: &SimpleGraph, v: usize, parent: usize) -> String {
    let mut children: Vec<String> = t.neighbors(v).filter(|&w| w != parent).map(|w| rooted_code(t, w, v)).collect();
    children.sort_unstable();
    format!("({})", children.concat())
}
