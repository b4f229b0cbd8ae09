//! Graphs with a prescribed star complement.
//!
//! A vertex added to `H` is described by the characteristic vector `b` of
//! its neighbourhood in `H`. For a star set `X` with complement `H`, the
//! form `⟨b_u, b_v⟩ = b_uᵀ(μI − A(H))⁻¹b_v` equals `μ` on the diagonal, `−1`
//! for adjacent `u, v` and `0` otherwise; for a non-main `μ` additionally
//! `⟨b_u, j⟩ = −1`. Candidates are the subsets meeting the diagonal
//! condition, compatible pairs are those whose form is `−1` or `0`, and the
//! maximal graphs correspond to the maximal cliques of compatible
//! candidates.

mod clique;

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use clique::{cliques_up_to, maximal_cliques};

use crate::exactla::{cached_resolvent, format_rational, resolvent_bilinear, LinalgError, Rational, Resolvent};
use crate::graph::{canonical_form, CanonicalForm, Graph, GraphError};
use crate::parallel::with_threads;
use crate::starset::{verify_star_set, StarSetError, DEFAULT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    StarSet(#[from] StarSetError),
    #[error("μ = {} is not supported: neighbourhoods need not be nonempty and distinct for μ ∈ {{0, −1}}", format_rational(.0))]
    UnsupportedMu(Rational),
    #[error("candidate search over 2^{vertices} subsets exceeds the budget of {budget}")]
    BudgetExceeded { vertices: usize, budget: u64 },
    #[error("candidates {0} and {1} are incompatible")]
    IncompatiblePair(usize, usize),
    #[error("assembled graph {0} fails star-set verification")]
    Postcondition(Graph),
}

/// A prospective star-set vertex, given by its neighbourhood in `H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Candidate {
    members: Vec<usize>,
}

impl Candidate {
    /// `members` is sorted and deduplicated.
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Candidate { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn characteristic(&self, n: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        for &i in &self.members {
            v[i] = Rational::one();
        }
        v
    }

    /// Neighbours among the first `s` vertices of `H` (the clique of a
    /// split graph `K_s ∇ tK_1`) and among the rest.
    pub fn split_parts(&self, s: usize) -> (Vec<usize>, Vec<usize>) {
        self.members.iter().partition(|&&v| v < s)
    }

    /// `(a, b)`: clique neighbours and independent-set neighbours.
    pub fn split_type(&self, s: usize) -> (usize, usize) {
        let a = self.members.iter().filter(|&&v| v < s).count();
        (a, self.members.len() - a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairClass {
    Adjacent,
    Nonadjacent,
    Incompatible,
}

impl PairClass {
    pub fn is_compatible(self) -> bool {
        self != PairClass::Incompatible
    }

    fn from_scaled(resolvent: &Resolvent, scaled: &BigInt) -> Self {
        if resolvent.scaled_equals(scaled, &-Rational::one()) {
            PairClass::Adjacent
        } else if scaled.is_zero() {
            PairClass::Nonadjacent
        } else {
            PairClass::Incompatible
        }
    }
}

fn check_mu(mu: &Rational) -> Result<(), ExtendError> {
    if mu.is_zero() || *mu == -Rational::one() {
        return Err(ExtendError::UnsupportedMu(mu.clone()));
    }
    Ok(())
}

/// All nonempty subsets `b ⊆ V(H)` with `⟨b,b⟩ = μ`, and `⟨b,j⟩ = −1`
/// when `nonmain` is set, in lexicographic order of their member lists.
pub fn enumerate_candidates(h: &Graph, mu: &Rational, nonmain: bool, budget: u64) -> Result<Vec<Candidate>, ExtendError> {
    check_mu(mu)?;
    let resolvent = cached_resolvent(h, mu)?;
    let n = h.order();
    if n >= 64 || (1u64 << n) > budget {
        return Err(ExtendError::BudgetExceeded { vertices: n, budget });
    }
    let minus_one = -Rational::one();
    let mut found: Vec<Candidate> = (1u64..1 << n)
        .into_par_iter()
        .filter_map(|mask| {
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let own = resolvent.scaled_set_form(&members, &members);
            if !resolvent.scaled_equals(&own, mu) {
                return None;
            }
            if nonmain && !resolvent.scaled_equals(&resolvent.scaled_set_with_ones(&members), &minus_one) {
                return None;
            }
            Some(Candidate { members })
        })
        .collect();
    found.sort();
    Ok(found)
}

/// Classifies a pair by `⟨b_u, b_v⟩`: `−1` adjacent, `0` nonadjacent,
/// anything else incompatible. Identical candidates are incompatible.
pub fn pair_class(h: &Graph, mu: &Rational, u: &Candidate, v: &Candidate) -> Result<PairClass, ExtendError> {
    if u == v {
        return Ok(PairClass::Incompatible);
    }
    let n = h.order();
    let value = resolvent_bilinear(h, mu, &u.characteristic(n), &v.characteristic(n))?;
    Ok(if value == -Rational::one() {
        PairClass::Adjacent
    } else if value.is_zero() {
        PairClass::Nonadjacent
    } else {
        PairClass::Incompatible
    })
}

/// Candidates with their symmetric pairwise classification.
#[derive(Debug, Clone, PartialEq)]
pub struct CompatTable {
    candidates: Vec<Candidate>,
    classes: Vec<PairClass>,
}

impl CompatTable {
    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn class(&self, i: usize, j: usize) -> PairClass {
        self.classes[i * self.candidates.len() + j]
    }

    /// The "not incompatible" relation as bit rows.
    pub fn compatibility_rows(&self) -> Vec<FixedBitSet> {
        let c = self.len();
        (0..c)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(c);
                for j in 0..c {
                    if self.class(i, j).is_compatible() {
                        row.insert(j);
                    }
                }
                row
            })
            .collect()
    }
}

pub fn build_compat_graph(h: &Graph, mu: &Rational, candidates: &[Candidate]) -> Result<CompatTable, ExtendError> {
    check_mu(mu)?;
    let resolvent = cached_resolvent(h, mu)?;
    let c = candidates.len();
    let classes = (0..c * c)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / c, k % c);
            if i == j || candidates[i] == candidates[j] {
                return PairClass::Incompatible;
            }
            let (lo, hi) = (i.min(j), i.max(j));
            let scaled = resolvent.scaled_set_form(&candidates[lo].members, &candidates[hi].members);
            PairClass::from_scaled(&resolvent, &scaled)
        })
        .collect();
    Ok(CompatTable {
        candidates: candidates.to_vec(),
        classes,
    })
}

/// Adds one vertex per candidate to `H`. `H` keeps its labels `0..|H|`;
/// candidate `i` becomes vertex `|H| + i`, adjacent to its members and to
/// the other added vertices it is classified adjacent to.
pub fn assemble_graph(h: &Graph, mu: &Rational, chosen: &[Candidate]) -> Result<(Graph, Vec<usize>), ExtendError> {
    let n = h.order();
    let k = chosen.len();
    let mut classes = vec![PairClass::Nonadjacent; k * k];
    for i in 0..k {
        for j in i + 1..k {
            let class = pair_class(h, mu, &chosen[i], &chosen[j])?;
            if !class.is_compatible() {
                return Err(ExtendError::IncompatiblePair(i, j));
            }
            classes[i * k + j] = class;
            classes[j * k + i] = class;
        }
    }
    let g = Graph::from_fn(n + k, |u, v| match (u < n, v < n) {
        (true, true) => h.has_edge(u, v),
        (true, false) => chosen[v - n].members.binary_search(&u).is_ok(),
        (false, false) => classes[(u - n) * k + (v - n)] == PairClass::Adjacent,
        (false, true) => unreachable!("u < v"),
    })?;
    let x: Vec<usize> = (n..n + k).collect();
    if !verify_star_set(&g, mu, &x)?.is_valid() {
        return Err(ExtendError::Postcondition(g));
    }
    Ok((g, x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtendOptions {
    /// Keep only candidates with `⟨b,j⟩ = −1`.
    pub nonmain: bool,
    /// Keep only regular assembled graphs.
    pub regular_only: bool,
    /// Report maximal cliques only; otherwise every nonempty clique.
    pub maximal_only: bool,
    #[serde(skip)]
    pub budget: u64,
    #[serde(skip)]
    pub threads: usize,
}

impl Default for ExtendOptions {
    fn default() -> Self {
        ExtendOptions {
            nonmain: false,
            regular_only: false,
            maximal_only: true,
            budget: DEFAULT_BUDGET,
            threads: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensionGraph {
    #[serde(rename = "graph6")]
    pub graph: Graph,
    /// Star-set vertices in `graph`.
    #[serde(rename = "X")]
    pub x: Vec<usize>,
    /// Indices into the report's candidate list.
    pub clique: Vec<usize>,
    pub regular: Option<usize>,
    pub canonical: CanonicalForm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionReport {
    pub h: Graph,
    pub mu: Rational,
    pub candidates: Vec<Candidate>,
    /// Cliques assembled before deduplication and filtering.
    pub cliques: usize,
    /// Assembled graphs dropped as isomorphic to an earlier one.
    pub duplicates: usize,
    pub graphs: Vec<ExtensionGraph>,
    pub options: ExtendOptions,
}

impl Serialize for ExtensionReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            #[serde(rename = "H")]
            h: &'a Graph,
            mu: String,
            candidates: usize,
            candidate_sets: &'a [Candidate],
            cliques: usize,
            duplicates: usize,
            maximal: &'a [ExtensionGraph],
            filters: &'a ExtendOptions,
        }
        Wire {
            h: &self.h,
            mu: format_rational(&self.mu),
            candidates: self.candidates.len(),
            candidate_sets: &self.candidates,
            cliques: self.cliques,
            duplicates: self.duplicates,
            maximal: &self.graphs,
            filters: &self.options,
        }
        .serialize(serializer)
    }
}

/// Enumerates the graphs with star complement `H` for `μ` that arise from
/// maximal compatible candidate sets, up to isomorphism.
///
/// Cliques are visited in lexicographic order, so each isomorphism class
/// keeps its lexicographically smallest witness. The empty clique is never
/// reported: with no added vertex `μ` is not an eigenvalue.
pub fn maximal_extensions(h: &Graph, mu: &Rational, opts: ExtendOptions) -> Result<ExtensionReport, ExtendError> {
    let candidates = enumerate_candidates(h, mu, opts.nonmain, opts.budget)?;
    let table = build_compat_graph(h, mu, &candidates)?;
    let rows = table.compatibility_rows();
    let cliques: Vec<Vec<usize>> = if opts.maximal_only {
        maximal_cliques(&rows, opts.threads)
    } else {
        cliques_up_to(&rows, rows.len())
    }
    .into_iter()
    .filter(|c| !c.is_empty())
    .collect();

    let assembled: Vec<Result<ExtensionGraph, ExtendError>> = with_threads(opts.threads, || {
        cliques
            .par_iter()
            .map(|clique| {
                let chosen: Vec<Candidate> = clique.iter().map(|&i| candidates[i].clone()).collect();
                let (graph, x) = assemble_graph(h, mu, &chosen)?;
                Ok(ExtensionGraph {
                    regular: graph.is_regular(),
                    canonical: canonical_form(&graph)?,
                    graph,
                    x,
                    clique: clique.clone(),
                })
            })
            .collect()
    });
    let mut seen = HashSet::new();
    let mut graphs = Vec::new();
    let mut duplicates = 0;
    for item in assembled {
        let item = item?;
        if !seen.insert(item.canonical.clone()) {
            duplicates += 1;
            continue;
        }
        if opts.regular_only && item.regular.is_none() {
            continue;
        }
        graphs.push(item);
    }
    Ok(ExtensionReport {
        h: h.clone(),
        mu: mu.clone(),
        candidates,
        cliques: cliques.len(),
        duplicates,
        graphs,
        options: opts,
    })
}

/// The three ways of computing the degree `r` in a regular graph with
/// star complement `K_s ∇ tK_1` when every star vertex sees all of `tK_1`:
/// from an independent vertex `s + |X|`, from a clique vertex with `c`
/// star neighbours `s − 1 + t + c`, and from a star vertex of type `(a,b)`
/// with `d` star neighbours `a + b + d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeBalance {
    pub r_independent: i64,
    pub r_clique: i64,
    pub r_star: i64,
    /// `|X| − t + 1`, the value of `c` forced by the first two counts.
    pub forced_c: i64,
    pub consistent: bool,
}

pub fn degree_balance(s: i64, t: i64, x_size: i64, a: i64, b: i64, c: i64, d: i64) -> DegreeBalance {
    let r_independent = s + x_size;
    let r_clique = s - 1 + t + c;
    let r_star = a + b + d;
    DegreeBalance {
        r_independent,
        r_clique,
        r_star,
        forced_c: x_size - t + 1,
        consistent: r_independent == r_clique && r_clique == r_star,
    }
}
