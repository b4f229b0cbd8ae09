//! Canonical forms by colour refinement and individualisation.
//!
//! The search tree is the usual one: refine an ordered partition to an
//! equitable one, split the first smallest non-singleton cell by
//! individualising each of its vertices in turn, and recurse. Every leaf is a
//! discrete partition, i.e. a relabeling; the canonical form is the smallest
//! graph6 encoding over all leaves. Automorphisms found by comparing leaves
//! prune sibling branches that lie in the same orbit.

use std::fmt;

use serde::Serialize;

use super::{write_graph6, Graph, GraphError};

pub const MAX_CANON_VERTICES: usize = 64;

/// Relabeling-invariant encoding: the graph6 string of the canonical relabeling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GraphError> {
    let n = g.order();
    if n > MAX_CANON_VERTICES {
        return Err(GraphError::UnsupportedSize {
            n,
            max: MAX_CANON_VERTICES,
        });
    }
    let mut search = Search::new(g);
    let root = search.refine(vec![0; n]);
    search.descend(root, &mut Vec::new());
    Ok(CanonicalForm(search.best.expect("at least one leaf").0))
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    if g.order() != h.order() || g.size() != h.size() {
        return Ok(false);
    }
    let (mut dg, mut dh) = (g.degrees(), h.degrees());
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

/// Ordered partition as a cell index per vertex; cells are `0..k` in order.
type Partition = Vec<usize>;

fn cell_count(p: &Partition) -> usize {
    p.iter().max().map_or(0, |&m| m + 1)
}

struct Leaf {
    path: Vec<usize>,
    order: Partition,
    code: String,
}

enum Flow {
    Continue,
    /// Abandon every node deeper than the given depth.
    Backjump(usize),
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<(String, Partition)>,
    generators: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        Search {
            g,
            first: None,
            best: None,
            generators: Vec::new(),
        }
    }

    /// Colour refinement: split cells by neighbour counts into every cell
    /// until the number of cells is stable. Keys start with the current cell
    /// index, so the result refines the input and keeps its cell order.
    fn refine(&self, mut cells: Partition) -> Partition {
        let n = self.g.order();
        loop {
            let k = cell_count(&cells);
            let mut keys: Vec<(Vec<usize>, usize)> = (0..n)
                .map(|v| {
                    let mut key = vec![0; k + 1];
                    key[0] = cells[v];
                    for u in self.g.neighbors(v) {
                        key[cells[u] + 1] += 1;
                    }
                    (key, v)
                })
                .collect();
            keys.sort_unstable();
            let mut next = vec![0; n];
            let mut index = 0;
            for i in 0..n {
                if i > 0 && keys[i].0 != keys[i - 1].0 {
                    index += 1;
                }
                next[keys[i].1] = index;
            }
            let stable = cell_count(&next) == k;
            cells = next;
            if stable {
                return cells;
            }
        }
    }

    fn target_cell(cells: &Partition) -> Option<Vec<usize>> {
        let k = cell_count(cells);
        let mut members = vec![Vec::new(); k];
        for (v, &c) in cells.iter().enumerate() {
            members[c].push(v);
        }
        members.into_iter().filter(|m| m.len() > 1).min_by_key(|m| m.len())
    }

    fn individualize(cells: &Partition, w: usize) -> Partition {
        let c = cells[w];
        cells
            .iter()
            .enumerate()
            .map(|(u, &cu)| cu + usize::from(cu > c || (cu == c && u != w)))
            .collect()
    }

    fn descend(&mut self, cells: Partition, path: &mut Vec<usize>) -> Flow {
        let Some(cell) = Self::target_cell(&cells) else {
            return self.leaf(cells, path);
        };
        let depth = path.len();
        let mut explored: Vec<usize> = Vec::new();
        for &w in &cell {
            if !explored.is_empty() && self.same_orbit(path, &explored, w) {
                continue;
            }
            explored.push(w);
            path.push(w);
            let child = self.refine(Self::individualize(&cells, w));
            let flow = self.descend(child, path);
            path.pop();
            if let Flow::Backjump(level) = flow {
                if level < depth {
                    return flow;
                }
            }
        }
        Flow::Continue
    }

    fn leaf(&mut self, order: Partition, path: &[usize]) -> Flow {
        let code = write_graph6(&self.g.relabel(&order));
        let Some(first) = &self.first else {
            self.best = Some((code.clone(), order.clone()));
            self.first = Some(Leaf {
                path: path.to_vec(),
                order,
                code,
            });
            return Flow::Continue;
        };
        if code == first.code {
            let automorphism = compose_inverse(&first.order, &order);
            let diverge = first.path.iter().zip(path).take_while(|(a, b)| a == b).count();
            self.generators.push(automorphism);
            return Flow::Backjump(diverge);
        }
        let best = self.best.as_mut().expect("set with first leaf");
        if code == best.0 {
            let automorphism = compose_inverse(&best.1, &order);
            self.generators.push(automorphism);
        } else if code < best.0 {
            *best = (code, order);
        }
        Flow::Continue
    }

    /// Whether `w` shares an orbit with an explored sibling under the
    /// stored automorphisms that fix the current path pointwise.
    fn same_orbit(&self, path: &[usize], explored: &[usize], w: usize) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for gen in &self.generators {
            if path.iter().any(|&v| gen[v] != v) {
                continue;
            }
            for (v, &image) in gen.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, image));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

/// Maps `v` to the vertex occupying the same position under `to` as `v`
/// does under `from`.
fn compose_inverse(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut by_position = vec![0; to.len()];
    for (v, &p) in to.iter().enumerate() {
        by_position[p] = v;
    }
    from.iter().map(|&p| by_position[p]).collect()
}
