use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::rational::Rational;
use super::LinalgError;
use crate::graph::Graph;

/// Exact factorization of `μI − A(H)` for a fixed graph and rational `μ`.
///
/// With `μ = p/q`, the integer matrix `N = pI − qA` is inverted by
/// fraction-free Gauss–Jordan elimination, leaving an integer matrix `R` and
/// an integer `d` with `N⁻¹ = R/d`. Hence `(μI − A)⁻¹ = (q/d)·R`, and every
/// bilinear value is an integer sum over `R` times the fixed `scale = q/d`.
#[derive(Debug, Clone)]
pub struct Resolvent {
    mu: Rational,
    n: usize,
    scaled: Vec<BigInt>,
    row_sums: Vec<BigInt>,
    scale: Rational,
}

impl Resolvent {
    pub fn new(h: &Graph, mu: &Rational) -> Result<Self, LinalgError> {
        let n = h.order();
        let p = mu.numer();
        let q = mu.denom();
        let mut left: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut x = if h.has_edge(i, j) { -q.clone() } else { BigInt::zero() };
                        if i == j {
                            x += p;
                        }
                        x
                    })
                    .collect()
            })
            .collect();
        let mut right: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();

        // Fraction-free Gauss–Jordan: after step k every entry of the
        // working matrix is a minor of order k+1 of [N | I], so the
        // division by the previous pivot is exact.
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !left[i][k].is_zero()) else {
                return Err(LinalgError::MuIsEigenvalue { mu: mu.clone() });
            };
            left.swap(k, p);
            right.swap(k, p);
            let pivot = left[k][k].clone();
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = left[i][k].clone();
                for j in 0..n {
                    let l = &pivot * &left[i][j] - &factor * &left[k][j];
                    let r = &pivot * &right[i][j] - &factor * &right[k][j];
                    debug_assert!((&l % &prev).is_zero() && (&r % &prev).is_zero());
                    left[i][j] = l / &prev;
                    right[i][j] = r / &prev;
                }
            }
            prev = pivot;
        }
        // The left block is now d·I with d the final pivot, so N⁻¹ = R/d.
        let d = if n == 0 { BigInt::one() } else { left[n - 1][n - 1].clone() };
        debug_assert!((0..n).all(|i| left[i][i] == d));
        let scaled: Vec<BigInt> = right.into_iter().flatten().collect();
        let row_sums = (0..n).map(|i| scaled[i * n..(i + 1) * n].iter().sum()).collect();
        Ok(Resolvent {
            mu: mu.clone(),
            n,
            scaled,
            row_sums,
            scale: Rational::new(q.clone(), d),
        })
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Factor turning an integer sum over the scaled matrix into `⟨x,y⟩`.
    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.scaled[i * self.n + j]
    }

    /// Scaled `⟨x,y⟩` for characteristic vectors given by their supports.
    pub fn scaled_set_form(&self, x: &[usize], y: &[usize]) -> BigInt {
        let mut total = BigInt::zero();
        for &i in x {
            for &j in y {
                total += self.entry(i, j);
            }
        }
        total
    }

    /// Scaled `⟨x, j⟩` for a characteristic vector `x`.
    pub fn scaled_set_with_ones(&self, x: &[usize]) -> BigInt {
        x.iter().map(|&i| &self.row_sums[i]).sum()
    }

    /// Converts a scaled integer value to the true bilinear value.
    pub fn unscale(&self, scaled: &BigInt) -> Rational {
        &self.scale * Rational::from_integer(scaled.clone())
    }

    /// Whether a scaled value equals `target` exactly, without normalising.
    pub fn scaled_equals(&self, scaled: &BigInt, target: &Rational) -> bool {
        // scale·S = t  ⟺  numer(scale)·S·denom(t) = numer(t)·denom(scale)
        self.scale.numer() * scaled * target.denom() == target.numer() * self.scale.denom()
    }

    /// `⟨x,y⟩ = xᵀ(μI − A)⁻¹y` for arbitrary vectors.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Result<Rational, LinalgError> {
        let w = self.apply(y)?;
        if x.len() != self.n {
            return Err(LinalgError::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(x.iter().zip(&w).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
    }

    /// Solves `(μI − A)w = y`.
    pub fn apply(&self, y: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if y.len() != self.n {
            return Err(LinalgError::DimensionMismatch {
                expected: self.n,
                found: y.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| {
                let s: Rational = (0..self.n)
                    .filter(|&j| !y[j].is_zero())
                    .map(|j| Rational::from_integer(self.entry(i, j).clone()) * &y[j])
                    .sum();
                s * &self.scale
            })
            .collect())
    }

    /// The full inverse `(μI − A)⁻¹`.
    pub fn inverse(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| self.unscale(self.entry(i, j)))
    }
}

type CacheKey = (Graph, Rational);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<Resolvent>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<Resolvent>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

const CACHE_LIMIT: usize = 512;

/// Shared, process-wide factorization for `(H, μ)`. Entries never go
/// stale because graphs are immutable values.
pub fn cached_resolvent(h: &Graph, mu: &Rational) -> Result<Arc<Resolvent>, LinalgError> {
    let key = (h.clone(), mu.clone());
    if let Some(hit) = cache().read().expect("cache lock").get(&key) {
        return Ok(Arc::clone(hit));
    }
    let fresh = Arc::new(Resolvent::new(h, mu)?);
    let mut guard = cache().write().expect("cache lock");
    if guard.len() >= CACHE_LIMIT {
        guard.clear();
    }
    Ok(Arc::clone(guard.entry(key).or_insert(fresh)))
}
