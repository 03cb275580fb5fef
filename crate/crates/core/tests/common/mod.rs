//! Reference implementations used only by tests. Deliberately naive and
//! independent of the library's search code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::Rng;
use turan_core::SimpleGraph;

/// Does `t` embed in `g`? Tries injective maps vertex by vertex (in index
/// order) and checks every tree edge whose endpoints are both mapped.
pub fn embeds_by_injection(g: &SimpleGraph, t: &SimpleGraph) -> bool {
    fn go(g: &SimpleGraph, t: &SimpleGraph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == t.order() {
            return true;
        }
        for h in 0..g.order() {
            if used[h] {
                continue;
            }
            let consistent = (0..i).all(|j| !t.has_edge(i, j) || g.has_edge(h, map[j]));
            if consistent {
                used[h] = true;
                map.push(h);
                if go(g, t, map, used) {
                    return true;
                }
                map.pop();
                used[h] = false;
            }
        }
        false
    }
    t.order() <= g.order() && go(g, t, &mut Vec::new(), &mut vec![false; g.order()])
}

/// Host graph on `p` vertices whose edge set is the bit pattern `mask` over
/// the pairs `(u, v)`, `u < v`, in lexicographic order.
pub fn graph_from_mask(p: usize, mask: u64) -> SimpleGraph {
    let pairs = (0..p).flat_map(|u| (u + 1..p).map(move |v| (u, v)));
    SimpleGraph::from_edges(p, pairs.enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e)).unwrap()
}

/// Tree from a Prüfer sequence over `0..seq.len() + 2`.
pub fn tree_from_pruefer(seq: &[usize]) -> SimpleGraph {
    let n = seq.len() + 2;
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    SimpleGraph::from_edges(n, edges).unwrap()
}

pub fn random_tree(n: usize, rng: &mut StdRng) -> SimpleGraph {
    match n {
        1 => SimpleGraph::empty(1),
        2 => SimpleGraph::complete(2),
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
            tree_from_pruefer(&seq)
        }
    }
}

pub fn random_graph(p: usize, density: f64, rng: &mut StdRng) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = (0..p)
        .flat_map(|u| (u + 1..p).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(density))
        .collect();
    SimpleGraph::from_edges(p, edges).unwrap()
}

/// Canonical string of a tree: minimum over all roots of the sorted
/// parenthesis encoding. Equal strings iff isomorphic trees.
pub fn tree_canon(t: &SimpleGraph) -> String {
    fn enc(t: &SimpleGraph, v: usize, parent: Option<usize>) -> String {
        let mut kids: Vec<String> = t.neighbors(v).filter(|&w| Some(w) != parent).map(|w| enc(t, w, Some(v))).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    (0..t.order()).map(|r| enc(t, r, None)).min().unwrap_or_default()
}

/// All trees on `n` vertices up to isomorphism (via every Prüfer sequence).
pub fn all_trees(n: usize) -> Vec<SimpleGraph> {
    if n == 1 {
        return vec![SimpleGraph::empty(1)];
    }
    if n == 2 {
        return vec![SimpleGraph::complete(2)];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let total = n.pow((n - 2) as u32);
    for code in 0..total {
        let mut c = code;
        let seq: Vec<usize> = (0..n - 2)
            .map(|_| {
                let d = c % n;
                c /= n;
                d
            })
            .collect();
        let t = tree_from_pruefer(&seq);
        if seen.insert(tree_canon(&t)) {
            out.push(t);
        }
    }
    out
}

pub fn choose2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

/// `k C(n-1, 2) + C(r, 2)` with `p = k(n-1) + r`: the classical path value.
pub fn path_reference(p: u64, n: u64) -> u64 {
    (p / (n - 1)) * choose2(n - 1) + choose2(p % (n - 1))
}

/// Closed forms at `p = 2n - 7`, `2n - 9`, `2n - 8` for `T3`, written as
/// polynomials in `n` rather than through the residue machinery.
pub fn t3_at_2n_minus_7(n: u64) -> u64 {
    n * n - 8 * n + 22
}

pub fn t3_at_2n_minus_9(n: u64) -> u64 {
    n * n - 10 * n + 24 + (n / 2).max(13)
}

pub fn t3_at_2n_minus_8(n: u64) -> u64 {
    n * n - 9 * n + 29 + (n.saturating_sub(37) / 4)
}
