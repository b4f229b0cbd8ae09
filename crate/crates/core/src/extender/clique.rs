//! Clique enumeration on a small dense graph given as bit rows.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::parallel::with_threads;

/// Bron–Kerbosch with pivoting. The pivot maximises `|P ∩ N(u)|` over
/// `P ∪ X`, ties going to the lowest index. Top-level branches run in
/// parallel; the merged list is sorted, each clique ascending.
pub fn maximal_cliques(adj: &[FixedBitSet], threads: usize) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let mut x = FixedBitSet::with_capacity(n);
    let pivot = choose_pivot(adj, &p, &x);
    let branches: Vec<usize> = match pivot {
        Some(u) => p.difference(&adj[u]).collect(),
        None => Vec::new(),
    };
    if branches.is_empty() {
        // Only the empty graph has no branches; its single maximal clique is ∅.
        return vec![Vec::new()];
    }
    let mut jobs = Vec::with_capacity(branches.len());
    for &v in &branches {
        let mut pv = p.clone();
        pv.intersect_with(&adj[v]);
        let mut xv = x.clone();
        xv.intersect_with(&adj[v]);
        jobs.push((v, pv, xv));
        p.set(v, false);
        x.insert(v);
    }
    let mut out: Vec<Vec<usize>> = with_threads(threads, || {
        jobs.into_par_iter()
            .flat_map_iter(|(v, pv, xv)| {
                let mut found = Vec::new();
                expand(adj, &mut vec![v], pv, xv, &mut found);
                found
            })
            .collect()
    });
    for clique in &mut out {
        clique.sort_unstable();
    }
    out.sort();
    out
}

fn choose_pivot(adj: &[FixedBitSet], p: &FixedBitSet, x: &FixedBitSet) -> Option<usize> {
    p.union(x)
        .map(|u| (adj[u].intersection(p).count(), u))
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
        .map(|(_, u)| u)
}

fn expand(adj: &[FixedBitSet], r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet, out: &mut Vec<Vec<usize>>) {
    let Some(pivot) = choose_pivot(adj, &p, &x) else {
        out.push(r.clone());
        return;
    };
    let branches: Vec<usize> = p.difference(&adj[pivot]).collect();
    for v in branches {
        let mut pv = p.clone();
        pv.intersect_with(&adj[v]);
        let mut xv = x.clone();
        xv.intersect_with(&adj[v]);
        r.push(v);
        expand(adj, r, pv, xv, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// Every nonempty clique with at most `max_size` vertices, sorted.
pub fn cliques_up_to(adj: &[FixedBitSet], max_size: usize) -> Vec<Vec<usize>> {
    fn grow(adj: &[FixedBitSet], r: &mut Vec<usize>, p: FixedBitSet, max: usize, out: &mut Vec<Vec<usize>>) {
        for v in p.ones() {
            r.push(v);
            out.push(r.clone());
            if r.len() < max {
                let mut next = p.clone();
                next.intersect_with(&adj[v]);
                next.set_range(..v + 1, false);
                grow(adj, r, next, max, out);
            }
            r.pop();
        }
    }
    let n = adj.len();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut out = Vec::new();
    if max_size > 0 {
        grow(adj, &mut Vec::new(), all, max_size, &mut out);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rows(n: usize, edges: &[(usize, usize)]) -> Vec<FixedBitSet> {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }

    /// Maximal cliques by checking every subset.
    fn brute_maximal(adj: &[FixedBitSet]) -> Vec<Vec<usize>> {
        let n = adj.len();
        let is_clique = |m: u32| (0..n).all(|i| m >> i & 1 == 0 || (0..n).all(|j| i == j || m >> j & 1 == 0 || adj[i].contains(j)));
        let mut out: Vec<Vec<usize>> = (0u32..1 << n)
            .filter(|&m| is_clique(m) && (0..n).all(|v| m >> v & 1 == 1 || !is_clique(m | 1 << v)))
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn small_cases() {
        // Triangle 0-1-2 with a pendant 2-3.
        let adj = rows(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert_eq!(maximal_cliques(&adj, 1), vec![vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(maximal_cliques(&rows(0, &[]), 1), vec![Vec::<usize>::new()]);
        assert_eq!(maximal_cliques(&rows(3, &[]), 1), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(
            cliques_up_to(&adj, 2),
            vec![vec![0], vec![0, 1], vec![0, 2], vec![1], vec![1, 2], vec![2], vec![2, 3], vec![3]]
        );
        assert!(cliques_up_to(&adj, 0).is_empty());
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 0usize..=10, bits in any::<u64>(), threads in 1usize..4) {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 0..n {
                for u in 0..v {
                    if bits >> (k % 64) & 1 == 1 && (k / 64 == 0 || u % 2 == 0) {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            let adj = rows(n, &edges);
            let expected = if n == 0 { vec![Vec::new()] } else { brute_maximal(&adj) };
            prop_assert_eq!(maximal_cliques(&adj, threads), expected);
        }
    }
}
