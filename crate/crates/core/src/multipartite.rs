//! Closed forms for the split graph `H = K_s ∇ tK_1`.
//!
//! Vertices `0..s` form the clique and `s..s+t` the independent set, as in
//! [`complete_split`]. A candidate of type `(a, b)` has `a` neighbours in
//! the clique and `b` in the independent set.

use std::ops::RangeInclusive;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactla::rational::{is_integer, serde_str};
use crate::exactla::{cached_resolvent, char_poly, format_rational, int, is_nonmain, LinalgError, Matrix, Polynomial, Rational};
use crate::extender::{degree_balance, maximal_extensions, DegreeBalance, ExtendError, ExtendOptions};
use crate::graph::{cocktail, complete_split, is_isomorphic, Graph, GraphError};
use crate::parallel::with_threads;
use crate::starset::DEFAULT_BUDGET;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultipartiteError {
    #[error("K_s ∇ tK_1 needs s, t ≥ 2, got s = {s}, t = {t}")]
    InvalidSpec { s: usize, t: usize },
    #[error("μ = {} is an eigenvalue of K_{s} ∇ {t}K_1", format_rational(.mu))]
    MuIsEigenvalue { mu: Rational, s: usize, t: usize },
    #[error("type ({a}, {b}) does not fit K_{s} ∇ {t}K_1")]
    TypeOutOfRange { a: usize, b: usize, s: usize, t: usize },
    #[error("overlap {overlap} is impossible for parts of sizes {left} and {right} in a set of {total}")]
    OverlapOutOfRange { overlap: usize, left: usize, right: usize, total: usize },
    #[error("only the second and third powers have block formulas, got {0}")]
    UnsupportedPower(u32),
    #[error("t + μ = {} is not zero", format_rational(.0))]
    NotCorollaryCase(Rational),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Extend(#[from] ExtendError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BlockSpec {
    s: usize,
    t: usize,
}

impl BlockSpec {
    pub fn new(s: usize, t: usize) -> Result<Self, MultipartiteError> {
        if s < 2 || t < 2 {
            return Err(MultipartiteError::InvalidSpec { s, t });
        }
        Ok(BlockSpec { s, t })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn order(&self) -> usize {
        self.s + self.t
    }

    pub fn graph(&self) -> Graph {
        complete_split(self.s, self.t).expect("s, t ≥ 2")
    }

    fn rs(&self) -> Rational {
        int(self.s as i64)
    }

    fn rt(&self) -> Rational {
        int(self.t as i64)
    }

    fn check_type(&self, v: TypeVector) -> Result<(), MultipartiteError> {
        if v.a > self.s || v.b > self.t {
            return Err(MultipartiteError::TypeOutOfRange {
                a: v.a,
                b: v.b,
                s: self.s,
                t: self.t,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TypeVector {
    pub a: usize,
    pub b: usize,
}

impl TypeVector {
    pub fn new(a: usize, b: usize) -> Self {
        TypeVector { a, b }
    }
}

/// Block coefficients of `m(μ)(μI − A(H))⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolventCoeffs {
    #[serde(with = "serde_str")]
    pub alpha: Rational,
    #[serde(with = "serde_str")]
    pub beta: Rational,
    #[serde(with = "serde_str")]
    pub gamma: Rational,
    #[serde(with = "serde_str")]
    pub delta: Rational,
    #[serde(with = "serde_str")]
    pub m_mu: Rational,
}

/// `m(x) = x(x + 1)(x² − (s − 1)x − st)`.
pub fn minpoly_formula(spec: BlockSpec) -> Polynomial {
    let (s, t) = (spec.s as i64, spec.t as i64);
    let x_x1 = &Polynomial::from_integers(&[0, 1]) * &Polynomial::from_integers(&[1, 1]);
    &x_x1 * &Polynomial::from_integers(&[-s * t, -(s - 1), 1])
}

/// `A(H)^k` written as `xJ + yI` on the diagonal blocks and `zJ` off them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowerBlocks {
    pub k: u32,
    /// `(x, y)` of the clique block.
    pub clique: (i64, i64),
    pub off: i64,
    /// `(x, y)` of the independent block.
    pub independent: (i64, i64),
}

impl PowerBlocks {
    pub fn to_matrix(&self, spec: BlockSpec) -> Matrix {
        let s = spec.s;
        Matrix::from_fn(spec.order(), spec.order(), |i, j| {
            let (jc, ic) = match (i < s, j < s) {
                (true, true) => self.clique,
                (false, false) => self.independent,
                _ => (self.off, 0),
            };
            int(jc + if i == j { ic } else { 0 })
        })
    }
}

pub fn power_blocks(spec: BlockSpec, k: u32) -> Result<PowerBlocks, MultipartiteError> {
    let (s, t) = (spec.s as i64, spec.t as i64);
    match k {
        2 => Ok(PowerBlocks {
            k,
            clique: (s + t - 2, 1),
            off: s - 1,
            independent: (s, 0),
        }),
        3 => Ok(PowerBlocks {
            k,
            clique: (s * s + 2 * s * t - 3 * s - 2 * t + 3, -1),
            off: s * s + s * t - 2 * s + 1,
            independent: (s * s - s, 0),
        }),
        _ => Err(MultipartiteError::UnsupportedPower(k)),
    }
}

pub fn coeffs(spec: BlockSpec, mu: &Rational) -> Result<ResolventCoeffs, MultipartiteError> {
    let (s, t) = (spec.rs(), spec.rt());
    let one = Rational::one();
    let beta = mu * mu - (&s - &one) * mu - &s * &t;
    if mu.is_zero() || *mu == -&one || beta.is_zero() {
        return Err(MultipartiteError::MuIsEigenvalue {
            mu: mu.clone(),
            s: spec.s,
            t: spec.t,
        });
    }
    Ok(ResolventCoeffs {
        alpha: mu * mu + mu * &t,
        gamma: &s * (mu + &one),
        delta: mu * mu + mu,
        m_mu: mu * (mu + &one) * &beta,
        beta,
    })
}

/// `m(μ)(μI − A(H))⁻¹` assembled from its blocks.
pub fn resolvent_block(spec: BlockSpec, mu: &Rational) -> Result<Matrix, MultipartiteError> {
    let c = coeffs(spec, mu)?;
    let s = spec.s;
    let clique_diag = &c.beta * mu;
    let independent_diag = &c.beta * (mu + Rational::one());
    Ok(Matrix::from_fn(spec.order(), spec.order(), |i, j| match (i < s, j < s) {
        (true, true) if i == j => &c.alpha + &clique_diag,
        (true, true) => c.alpha.clone(),
        (false, false) if i == j => &c.gamma + &independent_diag,
        (false, false) => c.gamma.clone(),
        _ => c.delta.clone(),
    }))
}

fn check_overlap(overlap: usize, left: usize, right: usize, total: usize) -> Result<(), MultipartiteError> {
    if overlap > left.min(right) || left + right > total + overlap {
        return Err(MultipartiteError::OverlapOutOfRange {
            overlap,
            left,
            right,
            total,
        });
    }
    Ok(())
}

/// `m(μ)⟨b_u, b_v⟩` for candidates of types `u = (a, b)` and `v = (e, f)`
/// whose clique parts share `y_overlap` vertices and independent parts
/// share `z_overlap`:
/// `α·ae + βμ·|Y₁∩Y₂| + δ(af + eb) + γ·bf + β(μ+1)·|Z₁∩Z₂|`.
pub fn closed_bilinear(
    spec: BlockSpec,
    mu: &Rational,
    u: TypeVector,
    v: TypeVector,
    y_overlap: usize,
    z_overlap: usize,
) -> Result<Rational, MultipartiteError> {
    spec.check_type(u)?;
    spec.check_type(v)?;
    check_overlap(y_overlap, u.a, v.a, spec.s)?;
    check_overlap(z_overlap, u.b, v.b, spec.t)?;
    let c = coeffs(spec, mu)?;
    let n = |x: usize| int(x as i64);
    let (a, b, e, f) = (n(u.a), n(u.b), n(v.a), n(v.b));
    Ok(&c.alpha * &a * &e
        + &c.beta * mu * n(y_overlap)
        + &c.delta * (&a * &f + &e * &b)
        + &c.gamma * &b * &f
        + &c.beta * (mu + Rational::one()) * n(z_overlap))
}

/// The diagonal condition `f(μ; u, u) = μm(μ) − m(μ)⟨b_u, b_u⟩` expanded
/// as a quintic in `μ`.
pub fn diag_constraint(spec: BlockSpec, mu: &Rational, a: &Rational, b: &Rational) -> Rational {
    let (s, t) = (spec.rs(), spec.rt());
    let one = Rational::one();
    let two = int(2);
    let st = &s * &t;
    let ab = a * b;
    let mu2 = mu * mu;
    let mu3 = &mu2 * mu;
    let mu4 = &mu3 * mu;
    let mu5 = &mu4 * mu;
    mu5 + (&two - &s) * mu4 + (&one - b - &s - &st - a) * mu3
        + (a * &s - &two * b - &two * &ab + b * &s - &st - a * a - a) * mu2
        + (b * &s - &two * &ab - b - a * a * &t - b * b * &s + a * &st + b * &st) * mu
        - &s * b * b
        + &st * b
}

/// `a(μ + t) + b(μ + 1) − s(μ + t) + μ(μ + 1)`, zero exactly when
/// `⟨b_u, j⟩ = −1`.
pub fn nonmain_constraint(spec: BlockSpec, mu: &Rational, a: &Rational, b: &Rational) -> Rational {
    let (s, t) = (spec.rs(), spec.rt());
    let mu_t = mu + &t;
    let mu_1 = mu + Rational::one();
    a * &mu_t + b * &mu_1 - &s * &mu_t + mu * &mu_1
}

/// The quadratic in `a` left after eliminating `b` between the diagonal
/// and non-main conditions. The elimination divides by `μ + 1`, so
/// `μ = −1` is rejected; the roots describe candidate types only when
/// `β ≠ 0` as well, since otherwise `μ` is an eigenvalue of `H`.
pub fn quadratic_in_a(spec: BlockSpec, mu: &Rational) -> Result<Polynomial, MultipartiteError> {
    if *mu == -Rational::one() {
        return Err(MultipartiteError::MuIsEigenvalue {
            mu: mu.clone(),
            s: spec.s,
            t: spec.t,
        });
    }
    let (s, t) = (spec.rs(), spec.rt());
    let two = int(2);
    let three = int(3);
    let st = &s * &t;
    let mu2 = mu * mu;
    let lead = &t + mu;
    let linear = &t + &two * mu - &two * &st - &two * &s * mu + &t * mu + &two * &mu2;
    let constant = mu - &st - &two * &s * mu + &s * &st - &two * &s * &mu2 + &s * &s * mu + &three * &mu2 + &three * &mu2 * mu
        + &mu2 * &mu2
        - &st * mu;
    Ok(Polynomial::new(vec![constant, linear, lead]))
}

/// When `t + μ = 0` every non-main candidate has type
/// `(−μ² − 2μ + s − 1, t)`. `None` when that `a` is outside `[0, s]`.
pub fn corollary_ab(spec: BlockSpec, mu: &Rational) -> Result<Option<TypeVector>, MultipartiteError> {
    let sum = spec.rt() + mu;
    if !sum.is_zero() {
        return Err(MultipartiteError::NotCorollaryCase(sum));
    }
    let a = -(mu * mu) - int(2) * mu + spec.rs() - Rational::one();
    if a < Rational::zero() || a > spec.rs() {
        return Ok(None);
    }
    let a = a.to_integer().try_into().expect("0 ≤ a ≤ s");
    Ok(Some(TypeVector { a, b: spec.t }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    #[serde(with = "serde_str")]
    pub eigenvalue: Rational,
    pub multiplicity: usize,
}

/// Degree data of a star vertex and the clique vertices, measured on the
/// assembled graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasuredDegrees {
    /// Star-set neighbours of each clique vertex.
    pub c: Vec<usize>,
    /// `(a, b, d)` of each star vertex: clique, independent and star-set
    /// neighbours.
    pub star: Vec<(usize, usize, usize)>,
    pub balance: DegreeBalance,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremGraph {
    #[serde(rename = "graph6")]
    pub graph: Graph,
    #[serde(rename = "X")]
    pub x: Vec<usize>,
    pub regular: Option<usize>,
    pub cocktail: bool,
    pub nonmain: bool,
    pub spectrum: Vec<SpectrumEntry>,
    pub degrees: MeasuredDegrees,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremRow {
    pub t: usize,
    #[serde(with = "serde_str")]
    pub mu: Rational,
    pub candidates: usize,
    pub corollary: Option<TypeVector>,
    pub candidates_match_corollary: bool,
    pub cliques: usize,
    pub graphs: Vec<TheoremGraph>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub s: usize,
    pub t_max: usize,
    pub rows: Vec<TheoremRow>,
    /// Every violated expectation, one line each.
    pub failures: Vec<String>,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn measure_degrees(g: &Graph, spec: BlockSpec, x: &[usize]) -> MeasuredDegrees {
    let in_x = |v: usize| x.binary_search(&v).is_ok();
    let c: Vec<usize> = (0..spec.s).map(|v| g.neighbors(v).filter(|&w| in_x(w)).count()).collect();
    let star: Vec<(usize, usize, usize)> = x
        .iter()
        .map(|&v| {
            let mut counts = (0, 0, 0);
            for w in g.neighbors(v) {
                if w < spec.s {
                    counts.0 += 1;
                } else if in_x(w) {
                    counts.2 += 1;
                } else {
                    counts.1 += 1;
                }
            }
            counts
        })
        .collect();
    let (a, b, d) = star.first().copied().unwrap_or_default();
    let balance = degree_balance(
        spec.s as i64,
        spec.t as i64,
        x.len() as i64,
        a as i64,
        b as i64,
        c.first().copied().unwrap_or_default() as i64,
        d as i64,
    );
    MeasuredDegrees { c, star, balance }
}

fn spectrum(g: &Graph) -> Result<Option<Vec<SpectrumEntry>>, MultipartiteError> {
    let (roots, cofactor) = char_poly(&Matrix::adjacency(g))?.rational_roots()?;
    if cofactor.degree() != Some(0) {
        return Ok(None);
    }
    Ok(Some(
        roots
            .into_iter()
            .map(|(eigenvalue, multiplicity)| SpectrumEntry { eigenvalue, multiplicity })
            .collect(),
    ))
}

/// Runs the non-main regular extension search on `K_s ∇ tK_1` with
/// `μ = −t` for `t = 2..=t_max` and checks the outcome against the
/// classification: a graph exists only for `t = 2`, and it is the cocktail
/// party graph on `2(s + 1)` vertices.
pub fn theorem_check(s: usize, t_max: usize, threads: usize) -> Result<TheoremReport, MultipartiteError> {
    BlockSpec::new(s, t_max)?;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for t in 2..=t_max {
        let spec = BlockSpec::new(s, t)?;
        let h = spec.graph();
        let mu = -int(t as i64);
        let opts = ExtendOptions {
            nonmain: true,
            regular_only: true,
            maximal_only: true,
            budget: DEFAULT_BUDGET,
            threads,
        };
        let report = maximal_extensions(&h, &mu, opts)?;
        let corollary = corollary_ab(spec, &mu)?;
        let types_match = report.candidates.iter().all(|c| {
            let (a, b) = c.split_type(s);
            corollary == Some(TypeVector { a, b })
        });
        let expected_count = corollary.map_or(0, |v| crate::starset::binomial(s, v.a) as usize);
        let candidates_match_corollary = types_match && report.candidates.len() == expected_count;
        if !candidates_match_corollary {
            failures.push(format!(
                "t = {t}: {} candidates do not match the predicted type {corollary:?}",
                report.candidates.len()
            ));
        }
        if (t == 2) != (report.graphs.len() == 1) || report.graphs.len() > 1 {
            failures.push(format!("t = {t}: {} regular maximal graphs", report.graphs.len()));
        }
        let mut graphs = Vec::new();
        for found in &report.graphs {
            let g = &found.graph;
            let cocktail_ok = is_isomorphic(g, &cocktail(s + 1)?)?;
            let nonmain = is_nonmain(g, &mu)?;
            let spectrum = spectrum(g)?.unwrap_or_default();
            let degrees = measure_degrees(g, spec, &found.x);
            let expected_spectrum = vec![
                SpectrumEntry {
                    eigenvalue: -int(2),
                    multiplicity: s,
                },
                SpectrumEntry {
                    eigenvalue: int(0),
                    multiplicity: s + 1,
                },
                SpectrumEntry {
                    eigenvalue: int(2 * s as i64),
                    multiplicity: 1,
                },
            ];
            let k = found.x.len();
            let mut problems = Vec::new();
            if !cocktail_ok {
                problems.push("not a cocktail party graph".to_string());
            }
            if found.regular != Some(2 * s) {
                problems.push(format!("degree {:?}, expected {}", found.regular, 2 * s));
            }
            if k != s {
                problems.push(format!("star set of size {k}, expected {s}"));
            }
            if !nonmain {
                problems.push("μ is main".to_string());
            }
            if spectrum != expected_spectrum {
                problems.push("unexpected spectrum".to_string());
            }
            if !degrees.balance.consistent
                || degrees.c.iter().any(|&c| c + 1 != k)
                || degrees.star.iter().any(|&(a, b, d)| (a, b, d + 1) != (s - 1, 2, k))
            {
                problems.push(format!("degree counts {:?}", degrees));
            }
            for p in problems {
                failures.push(format!("t = {t}, {}: {p}", found.graph));
            }
            graphs.push(TheoremGraph {
                graph: g.clone(),
                x: found.x.clone(),
                regular: found.regular,
                cocktail: cocktail_ok,
                nonmain,
                spectrum,
                degrees,
            });
        }
        rows.push(TheoremRow {
            t,
            mu,
            candidates: report.candidates.len(),
            corollary,
            candidates_match_corollary,
            cliques: report.cliques,
            graphs,
        });
    }
    Ok(TheoremReport { s, t_max, rows, failures })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ExplorerRow {
    pub s: usize,
    pub t: usize,
    #[serde(with = "serde_str")]
    pub mu: Rational,
    pub a: usize,
    pub b: usize,
    /// `t + μ = 0`.
    pub corollary_case: bool,
    pub mu_integral: bool,
    /// A candidate of this type passes both resolvent conditions.
    pub verified: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ExplorerReport {
    pub rows: Vec<ExplorerRow>,
    /// Solutions of both conditions whose forced `b` is not an integer.
    pub dropped_non_integral_b: usize,
    /// `(s, t, μ)` skipped because `μ` is an eigenvalue of `H`.
    pub skipped: usize,
}

/// Scans `(s, t, μ)` for integral types `(a, b)` that satisfy both the
/// diagonal and the non-main condition.
pub fn solution_explorer(
    s_range: RangeInclusive<usize>,
    t_range: RangeInclusive<usize>,
    mus: &[Rational],
    threads: usize,
) -> Result<ExplorerReport, MultipartiteError> {
    let mut grid = Vec::new();
    for s in s_range {
        for t in t_range.clone() {
            for mu in mus {
                grid.push((BlockSpec::new(s, t)?, mu.clone()));
            }
        }
    }
    let parts: Vec<Result<ExplorerReport, MultipartiteError>> =
        with_threads(threads, || grid.par_iter().map(|(spec, mu)| explore_one(*spec, mu)).collect());
    let mut total = ExplorerReport::default();
    for part in parts {
        let part = part?;
        total.rows.extend(part.rows);
        total.dropped_non_integral_b += part.dropped_non_integral_b;
        total.skipped += part.skipped;
    }
    total.rows.sort();
    total.rows.dedup();
    Ok(total)
}

fn explore_one(spec: BlockSpec, mu: &Rational) -> Result<ExplorerReport, MultipartiteError> {
    let mut report = ExplorerReport::default();
    if coeffs(spec, mu).is_err() {
        report.skipped = 1;
        return Ok(report);
    }
    let (s, t) = (spec.rs(), spec.rt());
    for a in 0..=spec.s {
        let ra = int(a as i64);
        let b = (&s - &ra) * (mu + &t) / (mu + Rational::one()) - mu;
        if !diag_constraint(spec, mu, &ra, &b).is_zero() {
            continue;
        }
        if !is_integer(&b) {
            report.dropped_non_integral_b += 1;
            continue;
        }
        if b < Rational::zero() || b > t {
            continue;
        }
        let b: usize = b.to_integer().try_into().expect("0 ≤ b ≤ t");
        report.rows.push(ExplorerRow {
            s: spec.s,
            t: spec.t,
            mu: mu.clone(),
            a,
            b,
            corollary_case: (&t + mu).is_zero(),
            mu_integral: is_integer(mu),
            verified: verify_type(spec, mu, TypeVector { a, b })?,
        });
    }
    Ok(report)
}

/// Checks `⟨b,b⟩ = μ` and `⟨b,j⟩ = −1` for the candidate using the first
/// `a` clique vertices and the first `b` independent ones.
fn verify_type(spec: BlockSpec, mu: &Rational, v: TypeVector) -> Result<bool, MultipartiteError> {
    let resolvent = cached_resolvent(&spec.graph(), mu)?;
    let members: Vec<usize> = (0..v.a).chain(spec.s..spec.s + v.b).collect();
    let own = resolvent.scaled_set_form(&members, &members);
    let ones = resolvent.scaled_set_with_ones(&members);
    Ok(resolvent.scaled_equals(&own, mu) && resolvent.scaled_equals(&ones, &-Rational::one()))
}
