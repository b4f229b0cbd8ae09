//! Star sets: certificates, exhaustive search, eigenspace reconstruction
//! and the sub-star-set check.
//!
//! For a vertex set `X` with `H = G − X`, write
//! `A(G) = [[A_X, Bᵀ], [B, C]]` with `C = A(H)`. `X` is a star set for `μ`
//! iff `μ` is not an eigenvalue of `H` and
//! `μI − A_X = Bᵀ(μI − C)⁻¹B`; then `|X|` equals the multiplicity of `μ`.
//! A certificate evaluates the multiplicity, the complement condition and
//! the residual of that identity independently.

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactla::{eig_multiplicity, format_rational, LinalgError, Rational, Resolvent};
use crate::graph::{Graph, GraphError};
use crate::parallel::with_threads;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarSetError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{} is not an eigenvalue of the graph", format_rational(.mu))]
    NotAnEigenvalue { mu: Rational },
    #[error("search budget exceeded: C({n},{k}) = {subsets} subsets, budget {budget}")]
    BudgetExceeded { n: usize, k: usize, subsets: u128, budget: u64 },
    #[error("{0:?} is not a star set")]
    InvalidStarSet(Vec<usize>),
    #[error("{removed:?} is not a proper subset of the star set {star:?}")]
    NotProperSubset { removed: Vec<usize>, star: Vec<usize> },
}

/// Evidence that `x` is, or is not, a star set for `mu` in `graph`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarSetCertificate {
    pub graph: Graph,
    pub mu: Rational,
    /// Sorted, duplicate-free.
    pub x: Vec<usize>,
    /// Multiplicity of `mu` in `graph`.
    pub multiplicity: usize,
    /// Multiplicity of `mu` in `graph − x`; zero iff the complement check holds.
    pub complement_multiplicity: usize,
    pub complement_ok: bool,
    /// Whether `μI − A_X − Bᵀ(μI − C)⁻¹B` vanishes; false when undefined.
    pub residual_zero: bool,
}

impl StarSetCertificate {
    pub fn is_valid(&self) -> bool {
        self.multiplicity == self.x.len() && self.complement_ok && self.residual_zero
    }

    /// The eigenvalue of `G − X` that defeats the complement check.
    pub fn witness_eigenvalue(&self) -> Option<&Rational> {
        (!self.complement_ok).then_some(&self.mu)
    }

    pub fn star_complement(&self) -> Graph {
        self.graph.remove_vertices(&self.x).expect("validated vertex set")
    }
}

impl Serialize for StarSetCertificate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Checks<'a> {
            size: usize,
            multiplicity: usize,
            complement_ok: bool,
            complement_multiplicity: usize,
            residual_zero: bool,
            witness_eigenvalue: Option<String>,
            star_complement: &'a str,
        }
        #[derive(Serialize)]
        struct Wire<'a> {
            graph: &'a Graph,
            mu: String,
            #[serde(rename = "X")]
            x: &'a [usize],
            valid: bool,
            checks: Checks<'a>,
        }
        let complement = self.star_complement().to_string();
        Wire {
            graph: &self.graph,
            mu: format_rational(&self.mu),
            x: &self.x,
            valid: self.is_valid(),
            checks: Checks {
                size: self.x.len(),
                multiplicity: self.multiplicity,
                complement_ok: self.complement_ok,
                complement_multiplicity: self.complement_multiplicity,
                residual_zero: self.residual_zero,
                witness_eigenvalue: self.witness_eigenvalue().map(format_rational),
                star_complement: &complement,
            },
        }
        .serialize(serializer)
    }
}

fn normalize(g: &Graph, x: &[usize]) -> Result<Vec<usize>, GraphError> {
    let n = g.order();
    if let Some(&bad) = x.iter().find(|&&v| v >= n) {
        return Err(GraphError::VertexOutOfRange { vertex: bad, n });
    }
    Ok(x.iter().copied().sorted_unstable().dedup().collect())
}

/// Splits `G` around `x`: the remaining vertices in order and, for each
/// `u ∈ x`, its neighbourhood in `G − x` as indices into the remainder.
fn attachments(g: &Graph, x: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let rest: Vec<usize> = (0..g.order()).filter(|v| x.binary_search(v).is_err()).collect();
    let supports = x
        .iter()
        .map(|&u| rest.iter().enumerate().filter(|&(_, &w)| g.has_edge(u, w)).map(|(i, _)| i).collect())
        .collect();
    (rest, supports)
}

pub fn verify_star_set(g: &Graph, mu: &Rational, x: &[usize]) -> Result<StarSetCertificate, StarSetError> {
    let x = normalize(g, x)?;
    let multiplicity = eig_multiplicity(g, mu);
    let (rest, supports) = attachments(g, &x);
    let h = g.induced_subgraph(&rest)?;
    let complement_multiplicity = eig_multiplicity(&h, mu);
    let complement_ok = complement_multiplicity == 0;
    let residual_zero = complement_ok && {
        let resolvent = Resolvent::new(&h, mu)?;
        x.iter().enumerate().all(|(i, &u)| {
            x.iter().enumerate().all(|(j, &v)| {
                let mut lhs = if i == j { mu.clone() } else { Rational::zero() };
                if g.has_edge(u, v) {
                    lhs -= Rational::one();
                }
                resolvent.scaled_equals(&resolvent.scaled_set_form(&supports[i], &supports[j]), &lhs)
            })
        })
    };
    Ok(StarSetCertificate {
        graph: g.clone(),
        mu: mu.clone(),
        x,
        multiplicity,
        complement_multiplicity,
        complement_ok,
        residual_zero,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of subsets (or attachments) examined.
    pub budget: u64,
    /// Worker threads; 0 uses the global pool.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            threads: 0,
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Every star set for `mu`, in lexicographic order.
pub fn find_star_sets(g: &Graph, mu: &Rational, opts: SearchOptions) -> Result<Vec<Vec<usize>>, StarSetError> {
    let n = g.order();
    let k = eig_multiplicity(g, mu);
    if k == 0 {
        return Err(StarSetError::NotAnEigenvalue { mu: mu.clone() });
    }
    let subsets = binomial(n, k);
    if subsets > opts.budget as u128 {
        return Err(StarSetError::BudgetExceeded {
            n,
            k,
            subsets,
            budget: opts.budget,
        });
    }
    let mut found: Vec<Vec<usize>> = with_threads(opts.threads, || {
        (0..=n - k)
            .into_par_iter()
            .flat_map_iter(|first| {
                (first + 1..n)
                    .combinations(k - 1)
                    .map(move |rest| std::iter::once(first).chain(rest).collect::<Vec<_>>())
                    .filter(|x| {
                        let h = g.remove_vertices(x).expect("in range");
                        eig_multiplicity(&h, mu) == 0
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    });
    found.sort();
    Ok(found)
}

/// Basis `{(e_u, (μI − C)⁻¹B e_u) : u ∈ X}` of the eigenspace, written in
/// the vertex coordinates of `G`.
pub fn eigenspace_from_star(g: &Graph, mu: &Rational, x: &[usize]) -> Result<Vec<Vec<Rational>>, StarSetError> {
    let cert = verify_star_set(g, mu, x)?;
    if !cert.is_valid() {
        return Err(StarSetError::InvalidStarSet(cert.x));
    }
    let (rest, supports) = attachments(g, &cert.x);
    let h = g.induced_subgraph(&rest)?;
    let resolvent = Resolvent::new(&h, mu)?;
    cert.x
        .iter()
        .zip(&supports)
        .map(|(&u, support)| {
            let mut b = vec![Rational::zero(); rest.len()];
            for &i in support {
                b[i] = Rational::one();
            }
            let tail = resolvent.apply(&b)?;
            let mut v = vec![Rational::zero(); g.order()];
            v[u] = Rational::one();
            for (&w, value) in rest.iter().zip(tail) {
                v[w] = value;
            }
            Ok(v)
        })
        .collect()
}

/// Whether `X ∖ U` is a star set for `mu` in `G ∖ U`, for a proper subset
/// `U` of the star set `X`.
pub fn substar_check(g: &Graph, mu: &Rational, x: &[usize], u: &[usize]) -> Result<bool, StarSetError> {
    let x = normalize(g, x)?;
    let u = normalize(g, u)?;
    if u.len() >= x.len() || u.iter().any(|v| x.binary_search(v).is_err()) {
        return Err(StarSetError::NotProperSubset { removed: u, star: x });
    }
    let cert = verify_star_set(g, mu, &x)?;
    if !cert.is_valid() {
        return Err(StarSetError::InvalidStarSet(x));
    }
    let smaller = g.remove_vertices(&u)?;
    let shifted: Vec<usize> = x
        .iter()
        .filter(|v| u.binary_search(v).is_err())
        .map(|&v| v - u.iter().filter(|&&w| w < v).count())
        .collect();
    Ok(verify_star_set(&smaller, mu, &shifted)?.is_valid())
}
