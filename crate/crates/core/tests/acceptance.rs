//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any fails. All comparisons are exact; the time
//! limits below are part of each criterion.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use starcomp::exactla::{char_poly, int, min_poly, Matrix, Rational};
use starcomp::extender::{
    assemble_graph, build_compat_graph, cliques_up_to, enumerate_candidates, maximal_extensions, ExtendOptions,
};
use starcomp::graph::{cocktail, complete_split, cycle, is_isomorphic};
use starcomp::multipartite::{
    coeffs, corollary_ab, diag_constraint, minpoly_formula, nonmain_constraint, quadratic_in_a, resolvent_block,
    BlockSpec, TypeVector,
};
use starcomp::starset::{eigenspace_from_star, find_star_sets, verify_star_set, SearchOptions, DEFAULT_BUDGET};
use starcomp::Graph;

use common::{admissible_mus, brute_extensions, engine_extensions, multiplicity_i128, oracle_complements};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `M⁻¹` by Gauss–Jordan on `[M | I]` over the rationals.
fn inverse_by_elimination(m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible");
        a.swap(col, p);
        let pivot = a[col][col].clone();
        for x in &mut a[col] {
            *x /= &pivot;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
            }
        }
    }
    Matrix::from_fn(n, n, |i, j| a[i][n + j].clone())
}

fn resolvent_identity() -> Outcome {
    let mut checked = 0;
    for s in 2..=6 {
        for t in 2..=6 {
            let spec = BlockSpec::new(s, t).unwrap();
            let a = Matrix::adjacency(&spec.graph());
            for mu in -5i64..=5 {
                let beta = mu * mu - (s as i64 - 1) * mu - (s * t) as i64;
                if mu == 0 || mu == -1 || beta == 0 {
                    continue;
                }
                let mu = int(mu);
                let m_mu = coeffs(spec, &mu).map_err(|e| e.to_string())?.m_mu;
                let direct = inverse_by_elimination(&(&Matrix::identity(s + t).scale(&mu) - &a)).scale(&m_mu);
                ensure(resolvent_block(spec, &mu).map_err(|e| e.to_string())? == direct, || {
                    format!("mismatch at s={s} t={t} μ={mu}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (s, t, μ) triples equal entrywise"))
}

fn minimal_polynomial() -> Outcome {
    for s in 2..=8 {
        for t in 2..=8 {
            let spec = BlockSpec::new(s, t).unwrap();
            let computed = min_poly(&Matrix::adjacency(&spec.graph())).map_err(|e| e.to_string())?;
            ensure(minpoly_formula(spec) == computed, || format!("s={s} t={t}: {computed}"))?;
        }
    }
    Ok("49 (s, t) pairs".into())
}

/// `(s, t, μ, graphs)` for the non-main regular searches of criterion 3.
fn theorem_runs(threads: usize) -> Vec<(usize, usize, Rational, String, Vec<(Graph, Vec<usize>)>)> {
    let mut runs = Vec::new();
    for s in 2..=5 {
        for t in 2..=4 {
            let mu = -int(t as i64);
            let opts = ExtendOptions {
                nonmain: true,
                regular_only: true,
                maximal_only: true,
                budget: DEFAULT_BUDGET,
                threads,
            };
            let report = maximal_extensions(&complete_split(s, t).unwrap(), &mu, opts).expect("search runs");
            let json = serde_json::to_string(&report).expect("serializable");
            let graphs = report.graphs.into_iter().map(|g| (g.graph, g.x)).collect();
            runs.push((s, t, mu, json, graphs));
        }
    }
    runs
}

fn theorem_reproduction() -> Outcome {
    for (s, t, _, _, graphs) in theorem_runs(0) {
        if t != 2 {
            ensure(graphs.is_empty(), || format!("s={s} t={t}: {} graphs", graphs.len()))?;
            continue;
        }
        ensure(graphs.len() == 1, || format!("s={s} t=2: {} graphs", graphs.len()))?;
        let (g, x) = &graphs[0];
        ensure(is_isomorphic(g, &cocktail(s + 1).unwrap()).unwrap(), || {
            format!("s={s}: {g} is not the cocktail party graph")
        })?;
        ensure(g.is_regular() == Some(2 * s), || format!("s={s}: degree {:?}", g.is_regular()))?;
        ensure(x.len() == s, || format!("s={s}: star set size {}", x.len()))?;
        let (roots, rest) = char_poly(&Matrix::adjacency(g)).unwrap().rational_roots().unwrap();
        let expected = vec![(int(-2), s), (int(0), s + 1), (int(2 * s as i64), 1)];
        ensure(rest.degree() == Some(0) && roots == expected, || format!("s={s}: spectrum {roots:?}"))?;
    }
    Ok("t = 2 gives the cocktail party graph for s = 2..5; t = 3, 4 give nothing".into())
}

fn corollary_instances() -> Vec<(usize, usize, i64, Vec<(usize, usize)>)> {
    let mut out = Vec::new();
    for s in 2..=6 {
        for t in 2..=4 {
            let mu = -(t as i64);
            let types = enumerate_candidates(&complete_split(s, t).unwrap(), &int(mu), true, DEFAULT_BUDGET)
                .expect("μ = −t is not an eigenvalue of K_s ∇ tK_1")
                .iter()
                .map(|c| c.split_type(s))
                .collect();
            out.push((s, t, mu, types));
        }
    }
    out
}

fn corollary_check() -> Outcome {
    let mut total = 0;
    for (s, t, mu, types) in corollary_instances() {
        let a = -mu * mu - 2 * mu + s as i64 - 1;
        let spec = BlockSpec::new(s, t).unwrap();
        let predicted = corollary_ab(spec, &int(mu)).map_err(|e| e.to_string())?;
        if (0..=s as i64).contains(&a) {
            let expected = TypeVector::new(a as usize, t);
            ensure(predicted == Some(expected), || format!("s={s} t={t}: corollary {predicted:?}"))?;
            ensure(!types.is_empty(), || format!("s={s} t={t}: no candidates"))?;
            ensure(types.iter().all(|&ab| ab == (expected.a, expected.b)), || {
                format!("s={s} t={t}: types {types:?}, expected ({a}, {t})")
            })?;
        } else {
            ensure(predicted.is_none() && types.is_empty(), || {
                format!("s={s} t={t}: a = {a} but {} candidates", types.len())
            })?;
        }
        total += types.len();
    }
    Ok(format!("{total} candidates over 15 (s, t) pairs"))
}

fn constraint_consistency() -> Outcome {
    for (s, t, mu, types) in corollary_instances() {
        let spec = BlockSpec::new(s, t).unwrap();
        for (a, b) in types {
            let (a, b) = (int(a as i64), int(b as i64));
            ensure(diag_constraint(spec, &int(mu), &a, &b).is_zero(), || format!("diagonal at s={s} t={t}"))?;
            ensure(nonmain_constraint(spec, &int(mu), &a, &b).is_zero(), || format!("non-main at s={s} t={t}"))?;
        }
    }
    let spec = BlockSpec::new(2, 3).unwrap();
    let q = quadratic_in_a(spec, &int(-2)).map_err(|e| e.to_string())?;
    let (c2, c1, c0) = (q.coeff(2), q.coeff(1), q.coeff(0));
    ensure((c2.clone(), c1.clone(), c0.clone()) == (int(1), int(-3), int(4)), || format!("quadratic {q}"))?;
    ensure(&c1 * &c1 - int(4) * &c2 * &c0 < int(0), || "quadratic has a real root".into())?;
    let engine = enumerate_candidates(&spec.graph(), &int(-2), true, DEFAULT_BUDGET);
    let detail = match engine {
        Ok(c) if c.is_empty() => "engine finds no candidates".to_string(),
        Ok(c) => return Err(format!("engine found {} candidates at (2, 3, −2)", c.len())),
        Err(e) => format!("engine finds no candidates ({e})"),
    };
    Ok(format!("all criterion-4 candidates satisfy both; at (2, 3, −2) {} has no roots and the {detail}", q.display_in("a")))
}

fn star_set_census() -> Outcome {
    let oct = cocktail(3).unwrap();
    let mu = int(-2);
    let sets = find_star_sets(&oct, &mu, SearchOptions::default()).map_err(|e| e.to_string())?;
    let edges: Vec<Vec<usize>> = oct.edges().map(|(u, v)| vec![u, v]).collect();
    ensure(sets == edges && sets.len() == 12, || format!("star sets {sets:?}"))?;
    let k112 = complete_split(2, 2).unwrap();
    for x in &sets {
        let cert = verify_star_set(&oct, &mu, x).map_err(|e| e.to_string())?;
        ensure(cert.is_valid() && is_isomorphic(&cert.star_complement(), &k112).unwrap(), || {
            format!("{x:?} certificate")
        })?;
    }
    let c4 = cycle(4).unwrap();
    ensure(multiplicity_i128(&c4, -2) == 1, || "−2 is not an eigenvalue of C4".into())?;
    for x in [[0, 1], [2, 3], [4, 5]] {
        let cert = verify_star_set(&oct, &mu, &x).map_err(|e| e.to_string())?;
        ensure(!cert.is_valid() && cert.witness_eigenvalue() == Some(&mu), || format!("{x:?} not refuted"))?;
        ensure(is_isomorphic(&cert.star_complement(), &c4).unwrap(), || format!("{x:?}: G − X is not C4"))?;
    }
    Ok("12 edges valid, 3 antipodal pairs refuted by −2 on C4".into())
}

/// Graphs assembled from every engine clique of size `k ≤ 2`.
fn oracle_graphs() -> Vec<(Graph, Rational, Vec<usize>)> {
    let mut out = Vec::new();
    for (_, h) in oracle_complements() {
        for mu in admissible_mus(&h, -3..=3) {
            let mu = int(mu);
            let candidates = enumerate_candidates(&h, &mu, false, DEFAULT_BUDGET).expect("admissible μ");
            let table = build_compat_graph(&h, &mu, &candidates).expect("admissible μ");
            for clique in cliques_up_to(&table.compatibility_rows(), 2) {
                let chosen: Vec<_> = clique.iter().map(|&i| candidates[i].clone()).collect();
                let (g, x) = assemble_graph(&h, &mu, &chosen).expect("compatible clique");
                out.push((g, mu.clone(), x));
            }
        }
    }
    out
}

fn oracle_completeness() -> Outcome {
    let mut cases = 0;
    let mut extensions = 0;
    for (name, h) in oracle_complements() {
        for mu in admissible_mus(&h, -3..=3) {
            for k in 1..=2 {
                let brute = brute_extensions(&h, mu, k);
                let engine = engine_extensions(&h, mu, k);
                ensure(engine == brute, || {
                    format!("{name}, μ = {mu}, k = {k}: engine {} vs oracle {}", engine.len(), brute.len())
                })?;
                cases += 1;
                extensions += brute.len();
            }
        }
    }
    Ok(format!("{cases} (H, μ, k) cases, {extensions} extensions"))
}

fn eigenspaces() -> Outcome {
    let mut graphs: Vec<(Graph, Rational, Vec<usize>)> = oracle_graphs();
    for (_, _, mu, _, found) in theorem_runs(0) {
        graphs.extend(found.into_iter().map(|(g, x)| (g, mu.clone(), x)));
    }
    let mut orthogonal = 0;
    for (g, mu, x) in &graphs {
        let a = Matrix::adjacency(g);
        let basis = eigenspace_from_star(g, mu, x).map_err(|e| e.to_string())?;
        ensure(basis.len() == x.len(), || format!("{g}: basis of size {}", basis.len()))?;
        let nonmain = g.is_regular().is_some_and(|r| int(r as i64) != *mu);
        for v in &basis {
            let av = a.mul_vec(v).unwrap();
            ensure(av.iter().zip(v).all(|(l, r)| *l == mu * r), || format!("{g}: Av ≠ μv"))?;
            if nonmain {
                ensure(v.iter().sum::<Rational>().is_zero(), || format!("{g}: jᵀv ≠ 0"))?;
                orthogonal += 1;
            }
        }
    }
    Ok(format!("{} graphs, {orthogonal} vectors orthogonal to j", graphs.len()))
}

fn determinism() -> Outcome {
    let theorem = |threads| theorem_runs(threads).into_iter().map(|r| r.3).collect::<Vec<_>>();
    let oracle = |threads| {
        let mut out = Vec::new();
        for (_, h) in oracle_complements() {
            for mu in admissible_mus(&h, -3..=3) {
                let opts = ExtendOptions {
                    maximal_only: false,
                    threads,
                    ..Default::default()
                };
                let report = maximal_extensions(&h, &int(mu), opts).expect("admissible μ");
                out.push(serde_json::to_string(&report).expect("serializable"));
            }
        }
        out
    };
    let (t1, o1) = (theorem(1), oracle(1));
    for threads in [2, 8] {
        ensure(theorem(threads) == t1, || format!("theorem reports differ at {threads} threads"))?;
        ensure(oracle(threads) == o1, || format!("oracle reports differ at {threads} threads"))?;
    }
    Ok(format!("{} reports identical at 1, 2 and 8 threads", t1.len() + o1.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("resolvent identity", 10, resolvent_identity),
        ("minimal polynomial", 5, minimal_polynomial),
        ("theorem reproduction", 60, theorem_reproduction),
        ("corollary types", 30, corollary_check),
        ("constraint consistency", 5, constraint_consistency),
        ("star-set census", 1, star_set_census),
        ("oracle completeness", 120, oracle_completeness),
        ("eigenspaces", 10, eigenspaces),
        ("determinism", 120, determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(*limit) => Err(format!("exceeded {limit} s")),
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "{status} {}. {name} [{:.2} s / {limit} s]: {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
        failed += usize::from(outcome.is_err());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
