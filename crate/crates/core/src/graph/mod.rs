//! Simple undirected graphs on vertices `0..n`, standard constructions,
//! graph6 I/O and small-scale canonical forms.

mod canon;
mod graph6;

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm, MAX_CANON_VERTICES};
pub use graph6::{parse_graph6, write_graph6, Graph6Error};

/// Largest vertex count a [`Graph`] may hold.
pub const MAX_VERTICES: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{0} must be at least 1")]
    ZeroParameter(&'static str),
    #[error("canonical forms are limited to {max} vertices, got {n}")]
    UnsupportedSize { n: usize, max: usize },
}

/// An immutable simple graph.
///
/// Adjacency is stored as one bit row per vertex; rows are kept symmetric
/// and the diagonal is always clear.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            rows: vec![FixedBitSet::with_capacity(n); n],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from a predicate evaluated on every pair `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            for u in 0..v {
                if adjacent(u, v) {
                    g.rows[u].insert(v);
                    g.rows[v].insert(u);
                }
            }
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.order();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(())
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Panics if either vertex is out of range.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(v < self.order(), "vertex {v} out of range");
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    /// Edges as pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| self.rows[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// The common degree if the graph is regular. The graph on zero
    /// vertices is reported as 0-regular.
    pub fn is_regular(&self) -> Option<usize> {
        let mut degrees = (0..self.order()).map(|v| self.degree(v));
        let first = degrees.next().unwrap_or(0);
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        Graph::from_fn(n, |u, v| !self.has_edge(u, v)).expect("same order")
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let n = self.order();
        if let Some(&bad) = vertices.iter().find(|&&v| v >= n) {
            return Err(GraphError::VertexOutOfRange { vertex: bad, n });
        }
        Graph::from_fn(vertices.len(), |i, j| self.has_edge(vertices[i], vertices[j]))
    }

    /// Removes `vertices`, keeping the remaining ones in increasing order.
    pub fn remove_vertices(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let n = self.order();
        if let Some(&bad) = vertices.iter().find(|&&v| v >= n) {
            return Err(GraphError::VertexOutOfRange { vertex: bad, n });
        }
        let keep: Vec<usize> = (0..n).filter(|v| !vertices.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Applies a relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order(), "permutation length mismatch");
        let mut inverse = vec![0; perm.len()];
        for (v, &p) in perm.iter().enumerate() {
            inverse[p] = v;
        }
        Graph::from_fn(self.order(), |i, j| self.has_edge(inverse[i], inverse[j])).expect("same order")
    }

    /// Dense 0/1 adjacency rows.
    pub fn adjacency_rows(&self) -> Vec<Vec<u8>> {
        (0..self.order())
            .map(|u| (0..self.order()).map(|v| self.rows[u].contains(v) as u8).collect())
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", write_graph6(self))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph6(self))
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&write_graph6(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_graph6(&text).map_err(serde::de::Error::custom)
    }
}

/// Complete graph `K_n`.
pub fn complete(n: usize) -> Result<Graph, GraphError> {
    Graph::from_fn(n, |_, _| true)
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    Graph::from_fn(n, |u, v| v == u + 1)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    Graph::from_fn(n, |u, v| v == u + 1 || (u == 0 && v + 1 == n && n > 2))
}

/// `p` disjoint edges, `pK_2`, with edges `{2i, 2i+1}`.
pub fn matching(p: usize) -> Result<Graph, GraphError> {
    Graph::from_fn(2 * p, |u, v| u % 2 == 0 && v == u + 1)
}

/// Disjoint union; the vertices of `h` follow those of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let n = g.order();
    Graph::from_fn(n + h.order(), |u, v| match (u < n, v < n) {
        (true, true) => g.has_edge(u, v),
        (false, false) => h.has_edge(u - n, v - n),
        _ => false,
    })
}

/// The join `G ∇ H`: disjoint union plus every edge between the two parts.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let n = g.order();
    Graph::from_fn(n + h.order(), |u, v| match (u < n, v < n) {
        (true, true) => g.has_edge(u, v),
        (false, false) => h.has_edge(u - n, v - n),
        _ => true,
    })
}

/// `K_s ∇ tK_1`: vertices `0..s` form the clique, `s..s+t` the independent
/// set, and every clique vertex sees every independent vertex.
pub fn complete_split(s: usize, t: usize) -> Result<Graph, GraphError> {
    if s == 0 {
        return Err(GraphError::ZeroParameter("s"));
    }
    if t == 0 {
        return Err(GraphError::ZeroParameter("t"));
    }
    Graph::from_fn(s + t, |u, _| u < s)
}

/// The cocktail-party graph: complement of `pK_2`. Vertex `2i` misses only
/// vertex `2i+1`.
pub fn cocktail(p: usize) -> Result<Graph, GraphError> {
    if p == 0 {
        return Err(GraphError::ZeroParameter("p"));
    }
    Ok(matching(p)?.complement())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_degrees(g: &Graph) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable();
        d
    }

    #[test]
    fn complete_split_counts() {
        let g = complete_split(2, 2).unwrap();
        assert_eq!((g.order(), g.size()), (4, 5));
        let star = complete_split(1, 3).unwrap();
        assert_eq!((star.order(), star.size()), (4, 3));
        assert_eq!(sorted_degrees(&star), vec![1, 1, 1, 3]);
        let g = complete_split(3, 2).unwrap();
        assert_eq!((g.order(), g.size()), (5, 9));
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(0, 4));
        assert!(!g.has_edge(3, 4));
    }

    #[test]
    fn complete_split_rejects_zero() {
        assert_eq!(complete_split(0, 2), Err(GraphError::ZeroParameter("s")));
        assert_eq!(complete_split(2, 0), Err(GraphError::ZeroParameter("t")));
    }

    #[test]
    fn complete_split_degree_sequence() {
        for s in 1..6 {
            for t in 1..6 {
                let g = complete_split(s, t).unwrap();
                let mut expected = vec![s + t - 1; s];
                expected.extend(vec![s; t]);
                expected.sort_unstable();
                assert_eq!(sorted_degrees(&g), expected, "s={s} t={t}");
            }
        }
    }

    #[test]
    fn cocktail_examples() {
        let oct = cocktail(3).unwrap();
        assert_eq!((oct.order(), oct.size(), oct.is_regular()), (6, 12, Some(4)));
        for i in 0..3 {
            assert!(!oct.has_edge(2 * i, 2 * i + 1));
        }
        assert_eq!(cocktail(2).unwrap(), cycle(4).unwrap().relabel(&[0, 2, 1, 3]));
        let g = cocktail(4).unwrap();
        assert_eq!((g.order(), g.size(), g.is_regular()), (8, 24, Some(6)));
        assert_eq!(cocktail(0), Err(GraphError::ZeroParameter("p")));
    }

    #[test]
    fn join_examples() {
        let k2 = complete(2).unwrap();
        let two_k1 = Graph::empty(2).unwrap();
        assert_eq!(join(&k2, &two_k1).unwrap(), complete_split(2, 2).unwrap());
        let h = path(3).unwrap();
        assert_eq!(join(&Graph::empty(0).unwrap(), &h).unwrap(), h);
        let k1 = complete(1).unwrap();
        assert_eq!(join(&k1, &k1).unwrap(), k2);
    }

    #[test]
    fn complement_and_induced() {
        assert_eq!(matching(3).unwrap().complement(), cocktail(3).unwrap());
        // Removing the adjacent pair {0, 2} from the octahedron leaves old
        // vertices 1, 3, 4, 5 with the single non-edge 4-5.
        let oct = cocktail(3).unwrap();
        let rest = oct.induced_subgraph(&[1, 3, 4, 5]).unwrap();
        let expected = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(rest, expected);
        assert!(is_isomorphic(&rest, &complete_split(2, 2).unwrap()).unwrap());
        assert_eq!(
            oct.induced_subgraph(&[0, 9]),
            Err(GraphError::VertexOutOfRange { vertex: 9, n: 6 })
        );
    }

    #[test]
    fn regularity() {
        assert_eq!(complete_split(1, 3).unwrap().is_regular(), None);
        assert_eq!(cycle(5).unwrap().is_regular(), Some(2));
        assert_eq!(Graph::empty(3).unwrap().is_regular(), Some(0));
    }

    #[test]
    fn from_edges_validation() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(Graph::empty(MAX_VERTICES + 1), Err(GraphError::TooManyVertices(MAX_VERTICES + 1)));
    }

    #[test]
    fn relabel_is_isomorphic_copy() {
        let g = path(4).unwrap();
        let h = g.relabel(&[3, 1, 0, 2]);
        assert_eq!(h.size(), 3);
        assert!(h.has_edge(3, 1) && h.has_edge(1, 0) && h.has_edge(0, 2));
    }
}
