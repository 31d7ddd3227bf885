//! Newton polyhedron queries: support values, leading parts and (interior)
//! membership of a point, all decided by exact linear programs.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{LinearProgram, Outcome, Relation};
use crate::polyexpr::SupportedPolynomial;
use crate::rational::{q_u, Q};

pub fn weight_from_ints(w: &[u64]) -> Vec<Q> {
    w.iter().map(|&x| q_u(x)).collect()
}

pub fn pairing(w: &[Q], m: &[u32]) -> Q {
    w.iter()
        .zip(m)
        .filter(|(_, &e)| e > 0)
        .map(|(wi, &e)| wi * q_u(u64::from(e)))
        .sum()
}

fn check_dim(poly: &SupportedPolynomial, len: usize) -> Result<()> {
    if poly.dim() != len {
        return Err(Error::DimensionMismatch {
            expected: poly.dim(),
            got: len,
        });
    }
    Ok(())
}

/// Minimum of `<w, m>` over the support.
pub fn support_value(w: &[Q], poly: &SupportedPolynomial) -> Result<Q> {
    check_dim(poly, w.len())?;
    poly.support()
        .map(|m| pairing(w, m))
        .min()
        .ok_or(Error::EmptyPolynomial)
}

/// Terms on which `<w, m>` attains the support value.
pub fn leading_part(w: &[Q], poly: &SupportedPolynomial) -> Result<SupportedPolynomial> {
    let min = support_value(w, poly)?;
    Ok(poly.filter(|m| pairing(w, m) == min))
}

fn hull_rows(poly: &SupportedPolynomial) -> (Vec<Vec<u32>>, usize) {
    let pts: Vec<Vec<u32>> = poly.support().cloned().collect();
    let n = pts.len();
    (pts, n)
}

/// LP with variables `λ_1..λ_N` (and optionally a trailing slack `ε`) encoding
/// `Σλ = 1`, `Σ λ_i m_i + ε·1 ≤ v`.
fn membership_lp(pts: &[Vec<u32>], v: &[Q], with_slack: bool) -> LinearProgram {
    let n = pts.len();
    let width = n + usize::from(with_slack);
    let mut lp = LinearProgram::new(width);
    let mut sum = vec![Q::one(); n];
    if with_slack {
        sum.push(Q::zero());
    }
    lp.constrain(sum, Relation::Eq, Q::one());
    for (j, vj) in v.iter().enumerate() {
        let mut row: Vec<Q> = pts.iter().map(|m| q_u(u64::from(m[j]))).collect();
        if with_slack {
            row.push(Q::one());
        }
        lp.constrain(row, Relation::Le, vj.clone());
    }
    lp
}

/// Whether `v` lies in the Newton polyhedron Γ₊ (convex hull of support plus
/// the positive orthant).
pub fn gamma_contains(poly: &SupportedPolynomial, v: &[Q]) -> Result<bool> {
    check_dim(poly, v.len())?;
    let (pts, n) = hull_rows(poly);
    if n == 0 {
        return Ok(false);
    }
    Ok(membership_lp(&pts, v, false).is_feasible())
}

/// Whether `v` lies in the interior of Γ₊, i.e. `v - ε·1 ∈ Γ₊` for some ε > 0.
pub fn gamma_interior_contains(poly: &SupportedPolynomial, v: &[Q]) -> Result<bool> {
    check_dim(poly, v.len())?;
    let (pts, n) = hull_rows(poly);
    if n == 0 {
        return Ok(false);
    }
    let mut lp = membership_lp(&pts, v, true);
    let mut obj = vec![Q::zero(); n + 1];
    obj[n] = Q::one();
    lp.maximize(obj);
    Ok(match lp.solve() {
        Outcome::Optimal { value, .. } => value.is_positive(),
        Outcome::Unbounded => true,
        Outcome::Infeasible => false,
    })
}

pub fn ones(dim: usize) -> Vec<Q> {
    vec![Q::one(); dim]
}

/// Affine dimension of the support, which for a quasihomogeneous polynomial
/// with positive weights is the dimension of the maximal compact Newton face.
pub fn max_compact_face_dim(poly: &SupportedPolynomial, w: &[Q]) -> Result<usize> {
    check_dim(poly, w.len())?;
    if w.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidWeight(
            "compact face needs strictly positive weights".into(),
        ));
    }
    let mut pts = poly.support();
    let first = pts.next().ok_or(Error::EmptyPolynomial)?;
    let level = pairing(w, first);
    let mut diffs = Vec::new();
    for m in pts {
        if pairing(w, m) != level {
            return Err(Error::NotQuasihomogeneous);
        }
        diffs.push(
            m.iter()
                .zip(first)
                .map(|(&a, &b)| Q::from_integer((i64::from(a) - i64::from(b)).into()))
                .collect::<Vec<Q>>(),
        );
    }
    Ok(linalg::rank(&diffs))
}
