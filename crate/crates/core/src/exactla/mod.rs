//! Exact rational linear algebra on adjacency matrices.

mod matrix;
mod poly;
pub mod rational;
mod resolvent;

use num_traits::{One, Zero};
use thiserror::Error;

pub use matrix::Matrix;
pub use poly::Polynomial;
pub use rational::{format_rational, int, parse_rational, ratio, Rational};
pub use resolvent::{cached_resolvent, Resolvent};

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{} is an eigenvalue, so μI − A is singular", format_rational(.mu))]
    MuIsEigenvalue { mu: Rational },
    #[error("{} is not an eigenvalue", format_rational(.mu))]
    NotAnEigenvalue { mu: Rational },
    #[error("minimal polynomial vanishes at {}", format_rational(.mu))]
    MinPolyVanishes { mu: Rational },
    #[error("invalid rational {0:?}: expected \"p\" or \"p/q\" (only rational values are supported)")]
    InvalidRational(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("coefficients too large for rational root search")]
    CoefficientOverflow,
}

/// Characteristic polynomial `det(xI − M)` by the Faddeev–LeVerrier
/// recurrence over the rationals.
pub fn char_poly(m: &Matrix) -> Result<Polynomial, LinalgError> {
    m.require_square()?;
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut aux = Matrix::zeros(n, n);
    for k in 1..=n {
        // aux_k = M·aux_{k−1} + c_{n−k+1}·I
        aux = (m * &aux).shift(&-coeffs[n - k + 1].clone())?;
        let trace = (m * &aux).trace();
        coeffs[n - k] = -trace / rational::int(k as i64);
    }
    Ok(Polynomial::new(coeffs))
}

/// Minimal polynomial from the first linear dependence among
/// `I, M, M², …`, found by exact elimination on the flattened powers.
pub fn min_poly(m: &Matrix) -> Result<Polynomial, LinalgError> {
    m.require_square()?;
    let n = m.rows();
    // Reduced basis: (pivot column, vector, combination of powers).
    let mut basis: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
    let mut power = Matrix::identity(n);
    for k in 0..=n {
        let mut v = power.entries().to_vec();
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        for (pivot, b, b_combo) in &basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = &v[*pivot] / &b[*pivot];
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in combo.iter_mut().zip(b_combo) {
                *x -= &f * y;
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return Ok(Polynomial::new(combo)),
            Some(pivot) => basis.push((pivot, v, combo)),
        }
        power = &power * m;
    }
    unreachable!("Cayley–Hamilton bounds the degree by n")
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// `m_G(μ) = n − rank(A − μI)`.
pub fn eig_multiplicity(g: &Graph, mu: &Rational) -> usize {
    let a = Matrix::adjacency(g);
    g.order() - a.shift(mu).expect("adjacency is square").rank()
}

/// Whether the eigenvalue `μ` is non-main: its eigenspace is orthogonal to
/// `j`, which for a symmetric matrix means `j` lies in the column space of
/// `A − μI`.
pub fn is_nonmain(g: &Graph, mu: &Rational) -> Result<bool, LinalgError> {
    let shifted = Matrix::adjacency(g).shift(mu)?;
    let r = shifted.rank();
    if r == g.order() {
        return Err(LinalgError::NotAnEigenvalue { mu: mu.clone() });
    }
    let ones = vec![Rational::one(); g.order()];
    Ok(shifted.augment(&ones)?.rank() == r)
}

/// `⟨x,y⟩ = xᵀ(μI − A(H))⁻¹y`, using the shared factorization cache.
pub fn resolvent_bilinear(h: &Graph, mu: &Rational, x: &[Rational], y: &[Rational]) -> Result<Rational, LinalgError> {
    cached_resolvent(h, mu)?.bilinear(x, y)
}

/// `m(μ)(μI − C)⁻¹` expressed as a polynomial in `C`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledResolvent {
    pub min_poly: Polynomial,
    /// `m(μ)`.
    pub m_mu: Rational,
    /// `a_0..a_d` with `m(μ)(μI − C)⁻¹ = Σ a_i C^i`.
    pub coeffs: Vec<Rational>,
    pub matrix: Matrix,
}

/// Writing `m(x) = x^{d+1} + c_d x^d + … + c_0`, the coefficients are
/// `a_d = 1` and `a_{i−1} = μ·a_i + c_i`.
pub fn resolvent_via_minpoly(h: &Graph, mu: &Rational) -> Result<ScaledResolvent, LinalgError> {
    let c = Matrix::adjacency(h);
    let m = min_poly(&c)?;
    let m_mu = m.eval(mu);
    if m_mu.is_zero() {
        return Err(LinalgError::MinPolyVanishes { mu: mu.clone() });
    }
    let d = m.degree().expect("minimal polynomial is nonzero") - 1;
    let mut coeffs = vec![Rational::zero(); d + 1];
    coeffs[d] = Rational::one();
    for i in (1..=d).rev() {
        coeffs[i - 1] = mu * &coeffs[i] + m.coeff(i);
    }
    let n = h.order();
    let mut matrix = Matrix::zeros(n, n);
    let mut power = Matrix::identity(n);
    for a in &coeffs {
        matrix = &matrix + &power.scale(a);
        power = &power * &c;
    }
    Ok(ScaledResolvent {
        min_poly: m,
        m_mu,
        coeffs,
        matrix,
    })
}
