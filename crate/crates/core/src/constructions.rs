//! Extremal graphs that attain the closed forms in [`crate::formulas`].
//!
//! Every construction returns a plain [`SimpleGraph`]; `extremal_graph`
//! also returns the recipe it followed together with the edge count and
//! degree multiset the recipe promises, so callers can check both.
//!
//! # Connected bases for `T3`
//!
//! The connected graphs on `2n-9` and `2n-8` vertices share one layout:
//! vertices `v_0..=v_{n-4}` occupy indices `0..=n-4` and `u_1, u_2, ...`
//! follow at `n-4+j`. Inside that layout
//!
//! * `v_0` is joined to every `v_i`;
//! * a graph `H` sits on `v_1..=v_h`;
//! * every "top" vertex `v_i`, `h < i <= n-4`, is joined to all `v_j`, `j < i`;
//! * the `u` vertices form a clique;
//! * each `v_i` in `H` is linked to one or two `u` vertices.
//!
//! The degree-`(n-4)` vertices are then exactly `v_0` and the top vertices,
//! whose neighbourhoods are all of `v_0..=v_{n-4}` minus themselves. Any copy
//! of `T3` needs its centre there and a neighbour of the centre with three
//! neighbours outside that set, but each `v_i` has at most two `u` links.

use serde::Serialize;

use crate::error::{ConstructionError, DomainError, GraphError};
use crate::formulas::{self, ResidueDecomposition, Spider, T3Case};
use crate::graph::{choose2, SimpleGraph};

/// Which base graph sits after the prepended `K_{n-1}` blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BaseKind {
    /// `K_{n-1} ∪ K_r`.
    CliqueUnion,
    /// `near_regular(n-1+r, n-5)`.
    NearRegular,
    /// Connected graph on `2n-9` vertices, even `n`.
    Order2n9Even,
    /// Connected graph on `2n-9` vertices, odd `n`.
    Order2n9Odd,
    /// Connected graph on `2n-8` vertices; the payload is `n mod 4`
    /// mapped to cases 1..=4 (`n ≡ 1, 2, 3, 0`).
    Order2n8(u8),
}

/// How a graph in `extremal_graph` was put together, and what it should satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionRecipe {
    pub family: Spider,
    pub p: u64,
    pub n: u64,
    pub base: BaseKind,
    /// Number of `K_{n-1}` blocks placed before the base graph.
    pub prepended_cliques: u64,
    pub expected_edges: u64,
    /// Expected degree multiset, sorted descending.
    pub expected_degrees: Vec<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConstructionOptions {
    /// On a tie between the clique union and a connected base, return the
    /// connected one.
    pub prefer_connected: bool,
}

fn domain<T>(msg: String) -> Result<T, ConstructionError> {
    Err(ConstructionError::Domain(DomainError(msg)))
}

/// `k` copies of `K_{n-1}` followed by one `K_r`.
pub fn clique_union(k: usize, n: usize, r: usize) -> Result<SimpleGraph, ConstructionError> {
    if k < 1 || n < 2 || r > n - 2 {
        return domain(format!("clique_union needs k ≥ 1 and 0 ≤ r ≤ n - 2 (k = {k}, n = {n}, r = {r})"));
    }
    let block = SimpleGraph::complete(n - 1);
    let tail = SimpleGraph::complete(r);
    Ok(SimpleGraph::union_all(std::iter::repeat_n(&block, k).chain([&tail])))
}

/// A graph on `m` vertices with `floor(dm/2)` edges and maximum degree `d`:
/// `d`-regular, except for one vertex of degree `d - 1` when `dm` is odd.
pub fn near_regular(m: usize, d: usize) -> Result<SimpleGraph, GraphError> {
    if d >= m {
        return Err(GraphError::DegreeTooLarge { degree: d, order: m });
    }
    let offsets: Vec<usize> = (1..=d / 2).collect();
    let g = SimpleGraph::circulant(m, &offsets)?;
    if d.is_multiple_of(2) {
        return Ok(g);
    }
    if m.is_multiple_of(2) {
        return g.with_edges((0..m / 2).map(|i| (i, i + m / 2)));
    }
    // Odd d and odd m: near-perfect matching at distance (m+1)/2, which no
    // circulant offset in 1..=(d-1)/2 reaches. Vertex (m-1)/2 stays unmatched.
    let shift = m.div_ceil(2);
    g.with_edges((0..=(m - 3) / 2).map(|i| (i, (i + shift) % m)))
}

/// Cycle `v_1 .. v_h` plus chords `v_i v_{i+o}` for `1 <= i <= o` (0-based
/// indices in the returned graph). Vertices `1..=2o` get degree 3, the
/// rest degree 2.
pub fn chorded_cycle(h: usize, o: usize) -> Result<SimpleGraph, ConstructionError> {
    if h < 3 || o < 2 || 2 * o > h || o + 1 >= h {
        return domain(format!("chorded_cycle needs h ≥ 3, 2 ≤ o, 2o ≤ h (h = {h}, o = {o})"));
    }
    let cycle = (0..h).map(|i| (i, (i + 1) % h));
    let chords = (0..o).map(|i| (i, i + o));
    Ok(SimpleGraph::from_edges(h, cycle.chain(chords))?)
}

/// Assembles the shared `v`/`u` layout described in the module docs.
///
/// `h_graph` lives on `v_1..=v_h` (its vertex `i` is `v_{i+1}`); `links`
/// holds `(i, j)` pairs for edges `v_i u_j` with 1-based indices.
fn assemble_layout(n: usize, h_graph: &SimpleGraph, u_count: usize, links: &[(usize, usize)]) -> SimpleGraph {
    let h = h_graph.order();
    let top = n - 4;
    let u = |j: usize| top + j;
    let mut edges: Vec<(usize, usize)> = h_graph.edges().map(|(a, b)| (a + 1, b + 1)).collect();
    edges.extend((1..=top).map(|i| (0, i)));
    for i in h + 1..=top {
        edges.extend((1..i).map(|j| (j, i)));
    }
    for a in 1..=u_count {
        edges.extend((a + 1..=u_count).map(|b| (u(a), u(b))));
    }
    edges.extend(links.iter().map(|&(i, j)| (i, u(j))));
    SimpleGraph::from_edges(top + 1 + u_count, edges).expect("layout indices are in range")
}

/// Connected `T3`-free graph on `2n-9` vertices for even `n >= 26`.
///
/// `H` is `(n-10)`-regular on `v_1..=v_{n-6}`; the tops are `v_{n-5}`,
/// `v_{n-4}`; `v_{2b-1}` and `v_{2b}` are both joined to `u_{2b-1}` and `u_{2b}`.
pub fn order_2n9_even(n: usize) -> Result<SimpleGraph, ConstructionError> {
    if n < 26 || !n.is_multiple_of(2) {
        return domain(format!("the even 2n-9 construction requires even n ≥ 26, got n = {n}"));
    }
    let h = near_regular(n - 6, n - 10)?;
    let mut links = Vec::with_capacity(2 * (n - 6));
    for b in 1..=(n - 6) / 2 {
        for i in [2 * b - 1, 2 * b] {
            links.push((i, 2 * b - 1));
            links.push((i, 2 * b));
        }
    }
    Ok(assemble_layout(n, &h, n - 6, &links))
}

/// Connected `T3`-free graph on `2n-9` vertices for odd `n >= 27`.
///
/// `H` is the complement of the chorded `(n-6)`-cycle with offset
/// `(n-7)/2`; pairs `v_{2b-1}, v_{2b}` share `u_{2b-1}, u_{2b}` up to
/// `v_{n-7}`, and `v_{n-6}` is linked to `u_{n-6}` alone.
pub fn order_2n9_odd(n: usize) -> Result<SimpleGraph, ConstructionError> {
    if n < 27 || n % 2 != 1 {
        return domain(format!("the odd 2n-9 construction requires odd n ≥ 27, got n = {n}"));
    }
    let h = chorded_cycle(n - 6, (n - 7) / 2)?.complement();
    let mut links = Vec::with_capacity(2 * (n - 7) + 1);
    for b in 1..=(n - 7) / 2 {
        for i in [2 * b - 1, 2 * b] {
            links.push((i, 2 * b - 1));
            links.push((i, 2 * b));
        }
    }
    links.push((n - 6, n - 6));
    Ok(assemble_layout(n, &h, n - 6, &links))
}

/// `(h, chord offset)` of the `2n-8` construction for `n mod 4`, or `None`
/// for `n ≡ 1`, which uses a regular `H` instead.
fn order_2n8_shape(n: usize) -> (usize, Option<usize>) {
    match n % 4 {
        1 => ((n - 5) / 2, None),
        2 => ((n - 4) / 2, Some((n - 6) / 4)),
        3 => ((n - 3) / 2, Some((n - 7) / 4)),
        _ => ((n - 2) / 2, Some((n - 8) / 4)),
    }
}

fn order_2n8_case(n: usize) -> u8 {
    match n % 4 {
        0 => 4,
        c => c as u8,
    }
}

/// Connected `T3`-free graph on `2n-8` vertices for `n >= 37`.
///
/// `H` lives on `v_1..=v_h`. For `n ≡ 1 (mod 4)`, `h = (n-5)/2` and `H` is
/// `(n-13)/2`-regular with every `v_i` linked to `u_{2i-1}, u_{2i}`.
/// Otherwise `H` is the complement of a chorded `h`-cycle: its degree-3
/// vertices take two private `u`s each and its degree-2 vertices one.
pub fn order_2n8(n: usize) -> Result<SimpleGraph, ConstructionError> {
    if n < 37 {
        return domain(format!("the 2n-8 construction requires n ≥ 37, got n = {n}"));
    }
    let (h, offset) = order_2n8_shape(n);
    let (h_graph, doubled) = match offset {
        None => (near_regular(h, (n - 13) / 2)?, h),
        Some(o) => (chorded_cycle(h, o)?.complement(), 2 * o),
    };
    let mut links = Vec::with_capacity(n - 5);
    for i in 1..=doubled {
        links.push((i, 2 * i - 1));
        links.push((i, 2 * i));
    }
    for (step, i) in (doubled + 1..=h).enumerate() {
        links.push((i, 2 * doubled + 1 + step));
    }
    debug_assert_eq!(links.len(), n - 5);
    Ok(assemble_layout(n, &h_graph, n - 5, &links))
}

fn sorted_desc(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn repeat_degree(out: &mut Vec<usize>, degree: usize, count: usize) {
    out.extend(std::iter::repeat_n(degree, count));
}

/// Degree multiset stated for the `2n-9` construction.
pub fn order_2n9_degrees(n: usize) -> Vec<usize> {
    let mut d = Vec::new();
    repeat_degree(&mut d, n - 4, 3);
    if n.is_multiple_of(2) {
        repeat_degree(&mut d, n - 5, 2 * n - 12);
    } else {
        repeat_degree(&mut d, n - 5, 2 * n - 13);
        d.push(n - 6);
    }
    d
}

/// Degree multiset stated for the `2n-8` construction: `v_0` and the tops
/// at `n-4`, everything else at `n-5`.
pub fn order_2n8_degrees(n: usize) -> Vec<usize> {
    let (h, _) = order_2n8_shape(n);
    let mut d = Vec::new();
    repeat_degree(&mut d, n - 4, n - 3 - h);
    repeat_degree(&mut d, n - 5, n - 5 + h);
    d
}

fn clique_union_degrees(k: usize, n: usize, r: usize) -> Vec<usize> {
    let mut d = Vec::new();
    repeat_degree(&mut d, n - 2, k * (n - 1));
    repeat_degree(&mut d, r.saturating_sub(1), r);
    sorted_desc(d)
}

fn near_regular_degrees(m: usize, d: usize) -> Vec<usize> {
    let mut out = vec![d; m];
    if d * m % 2 == 1 {
        out[m - 1] = d - 1;
    }
    out
}

/// Builds a graph on `p` vertices with exactly `ex(p; family_n)` edges.
///
/// `p = k(n-1) + r`; the result is `k-1` copies of `K_{n-1}` followed by a
/// base graph on `n-1+r` vertices chosen as follows:
///
/// * `T''`, `T'''`, and `T3` with `3 <= r <= n-9`: `K_{n-1} ∪ K_r` or
///   `near_regular(n-1+r, n-5)`, whichever has more edges;
/// * `T3` with `r` special or `r = n-6`: `K_{n-1} ∪ K_r`;
/// * `T3` with `r = n-8`: the connected `2n-9` graph once `floor(n/2) > 13`;
/// * `T3` with `r = n-7`: the connected `2n-8` graph once `n >= 41`.
///
/// Ties go to the clique union unless `opts.prefer_connected` is set.
pub fn extremal_graph(
    family: Spider,
    p: u64,
    n: u64,
    opts: ConstructionOptions,
) -> Result<(SimpleGraph, ConstructionRecipe), ConstructionError> {
    let target = formulas::ex_spider(family, p, n)?;
    let ResidueDecomposition { k, r } = formulas::decompose(p, n)?;
    let (nu, ru, ku) = (n as usize, r as usize, k as usize);

    let clique_edges = choose2(n - 1) + choose2(r);
    let regular_edges = (n - 5) * (n - 1 + r) / 2;

    let base_kind = match family {
        Spider::T3 => match formulas::t3_case(r, n) {
            T3Case::Special | T3Case::MinusSix => BaseKind::CliqueUnion,
            T3Case::MaxForm => pick(clique_edges, regular_edges, BaseKind::NearRegular, opts),
            T3Case::MinusEight => {
                let connected = if nu % 2 == 0 { BaseKind::Order2n9Even } else { BaseKind::Order2n9Odd };
                if nu >= 26 {
                    let connected_edges = n * n - 10 * n + 24 + n / 2;
                    pick(clique_edges, connected_edges, connected, opts)
                } else {
                    BaseKind::CliqueUnion
                }
            }
            T3Case::MinusSeven => {
                if nu >= 37 {
                    let connected_edges = n * n - 9 * n + 29 + (n - 37) / 4;
                    pick(clique_edges, connected_edges, BaseKind::Order2n8(order_2n8_case(nu)), opts)
                } else {
                    BaseKind::CliqueUnion
                }
            }
        },
        Spider::TDoublePrime | Spider::TTriplePrime => {
            pick(clique_edges, regular_edges, BaseKind::NearRegular, opts)
        }
    };

    let (base, base_degrees) = match base_kind {
        BaseKind::CliqueUnion => (clique_union(1, nu, ru)?, clique_union_degrees(1, nu, ru)),
        BaseKind::NearRegular => (
            near_regular(nu - 1 + ru, nu - 5)?,
            near_regular_degrees(nu - 1 + ru, nu - 5),
        ),
        BaseKind::Order2n9Even => (order_2n9_even(nu)?, order_2n9_degrees(nu)),
        BaseKind::Order2n9Odd => (order_2n9_odd(nu)?, order_2n9_degrees(nu)),
        BaseKind::Order2n8(_) => (order_2n8(nu)?, order_2n8_degrees(nu)),
    };

    let block = SimpleGraph::complete(nu - 1);
    let graph = SimpleGraph::union_all(std::iter::repeat_n(&block, ku - 1).chain([&base]));

    let mut expected_degrees = base_degrees;
    repeat_degree(&mut expected_degrees, nu - 2, (ku - 1) * (nu - 1));
    let recipe = ConstructionRecipe {
        family,
        p,
        n,
        base: base_kind,
        prepended_cliques: k - 1,
        expected_edges: target.value,
        expected_degrees: sorted_desc(expected_degrees),
    };
    Ok((graph, recipe))
}

fn pick(clique_edges: u64, other_edges: u64, other: BaseKind, opts: ConstructionOptions) -> BaseKind {
    if other_edges > clique_edges || (other_edges == clique_edges && opts.prefer_connected) {
        other
    } else {
        BaseKind::CliqueUnion
    }
}
