//! Oracles shared by the integration tests and the acceptance gate. They
//! deliberately avoid the library's own linear algebra.

#![allow(dead_code)]

use std::collections::BTreeSet;

use starcomp::exactla::int;
use starcomp::extender::{build_compat_graph, cliques_up_to, enumerate_candidates, PairClass};
use starcomp::graph::{complete_split, cycle, path};
use starcomp::starset::DEFAULT_BUDGET;
use starcomp::Graph;

/// Rank of an integer matrix by fraction-free elimination in `i128`.
pub fn rank_i128(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// `A(G) − μI` as integers.
pub fn shifted(g: &Graph, mu: i64) -> Vec<Vec<i128>> {
    let n = g.order();
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(g.has_edge(i, j)) - if i == j { mu as i128 } else { 0 }).collect())
        .collect()
}

pub fn multiplicity_i128(g: &Graph, mu: i64) -> usize {
    g.order() - rank_i128(shifted(g, mu))
}

/// An extension of `H` by `k` vertices: their neighbourhoods in `H` as bit
/// masks (non-decreasing) and the adjacency among them, listing pairs
/// `(i, j)` with `i < j` ordered by `j`, then `i`.
pub type Extension = (Vec<u64>, Vec<bool>);

fn extension_rank(h: &Graph, mu: i64, masks: &[u64], adjacent: &[bool]) -> usize {
    let n = h.order();
    let k = masks.len();
    let pair = |i: usize, j: usize| {
        let (a, b) = (i.min(j), i.max(j));
        adjacent[b * (b - 1) / 2 + a]
    };
    let mut m = shifted(h, mu);
    for (v, row) in m.iter_mut().enumerate() {
        row.extend(masks.iter().map(|&mask| i128::from(mask >> v & 1 == 1)));
    }
    for i in 0..k {
        let mut row: Vec<i128> = (0..n).map(|v| i128::from(masks[i] >> v & 1 == 1)).collect();
        row.extend((0..k).map(|j| if i == j { -(mu as i128) } else { i128::from(pair(i, j)) }));
        m.push(row);
    }
    rank_i128(m)
}

/// Every way of adding `k ≥ 1` vertices to `H` such that `μ` has
/// multiplicity `k` in the result and `H` stays a star complement. `μ` must
/// not be an eigenvalue of `H`.
///
/// By interlacing, deleting the last added vertex from such an extension
/// leaves one with `k − 1` vertices, so level `k` only extends level
/// `k − 1`.
pub fn brute_extensions(h: &Graph, mu: i64, k: usize) -> BTreeSet<Extension> {
    let n = h.order();
    let mut level: BTreeSet<Extension> = BTreeSet::from([(Vec::new(), Vec::new())]);
    for size in 1..=k {
        let mut next = BTreeSet::new();
        for (masks, adjacent) in &level {
            let start = masks.last().copied().unwrap_or(0);
            for mask in start..1u64 << n {
                for pattern in 0u64..1 << (size - 1) {
                    let mut m = masks.clone();
                    m.push(mask);
                    let mut a = adjacent.clone();
                    a.extend((0..size - 1).map(|i| pattern >> i & 1 == 1));
                    if extension_rank(h, mu, &m, &a) == n {
                        next.insert((m, a));
                    }
                }
            }
        }
        level = next;
    }
    level
}

/// The engine's extensions by exactly `k` vertices, in the same encoding.
pub fn engine_extensions(h: &Graph, mu: i64, k: usize) -> BTreeSet<Extension> {
    let mu = int(mu);
    let candidates = enumerate_candidates(h, &mu, false, DEFAULT_BUDGET).unwrap();
    let table = build_compat_graph(h, &mu, &candidates).unwrap();
    let mask = |i: usize| candidates[i].members().iter().fold(0u64, |m, &v| m | 1 << v);
    cliques_up_to(&table.compatibility_rows(), k)
        .into_iter()
        .filter(|c| c.len() == k)
        .map(|mut clique| {
            clique.sort_by_key(|&i| mask(i));
            let masks = clique.iter().map(|&i| mask(i)).collect();
            let adjacent = (0..k)
                .flat_map(|j| (0..j).map(move |i| (i, j)))
                .map(|(i, j)| table.class(clique[i], clique[j]) == PairClass::Adjacent)
                .collect();
            (masks, adjacent)
        })
        .collect()
}

/// Integral `μ` in `range` outside `{0, −1}` that are not eigenvalues of `H`.
pub fn admissible_mus(h: &Graph, range: std::ops::RangeInclusive<i64>) -> Vec<i64> {
    range.filter(|&mu| mu != 0 && mu != -1 && multiplicity_i128(h, mu) == 0).collect()
}

pub fn oracle_complements() -> Vec<(&'static str, Graph)> {
    vec![
        ("K_2∇2K_1", complete_split(2, 2).unwrap()),
        ("K_3∇2K_1", complete_split(3, 2).unwrap()),
        ("C_5", cycle(5).unwrap()),
        ("P_4", path(4).unwrap()),
    ]
}

/// Deterministic pseudo-random graph.
pub fn random_graph(n: usize, seed: u64) -> Graph {
    let mut state = seed ^ 0x9E37_79B9_7F4A_7C15;
    Graph::from_fn(n, |_, _| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state & 1 == 1
    })
    .unwrap()
}
