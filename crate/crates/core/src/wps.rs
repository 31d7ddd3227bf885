//! Weighted projective spaces: normalization, well-formedness and the
//! reduction of a weighted hypersurface to a well-formed one together with its
//! boundary coefficients `(q_i - 1)/q_i`.

use crate::error::{Error, Result};
use crate::polyexpr::SupportedPolynomial;
use crate::quasihom::{check_weights, WeightSystem};
use crate::rational::{gcd_slice, gcd_without, q_u, Q};

fn require_positive(a: &[u64]) -> Result<()> {
    if a.is_empty() || a.contains(&0) {
        return Err(Error::InvalidWeight(format!(
            "weighted projective weights must be positive, got {a:?}"
        )));
    }
    Ok(())
}

/// `q_i = gcd(a_j : j != i)` for every `i`.
pub fn complement_gcds(a: &[u64]) -> Vec<u64> {
    (0..a.len()).map(|i| gcd_without(a, &[i])).collect()
}

pub fn is_well_defined(a: &[u64]) -> bool {
    complement_gcds(a).iter().all(|&q| q == 1)
}

/// Canonical weights of the same space: divide by the overall gcd, then
/// repeatedly divide all entries but `a_i` by `q_i` (smallest `i` first).
pub fn normalize_weights(a: &[u64]) -> Result<Vec<u64>> {
    require_positive(a)?;
    let g = gcd_slice(a);
    let mut a: Vec<u64> = a.iter().map(|x| x / g).collect();
    while let Some((i, q)) = complement_gcds(&a)
        .into_iter()
        .enumerate()
        .find(|&(_, q)| q > 1)
    {
        for (j, x) in a.iter_mut().enumerate() {
            if j != i {
                *x /= q;
            }
        }
    }
    Ok(a)
}

/// Every gcd of all weights but two divides `d`.
pub fn is_well_formed(a: &[u64], d: u64) -> Result<bool> {
    require_positive(a)?;
    if !is_well_defined(a) {
        return Err(Error::IllDefinedWeights(a.to_vec()));
    }
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = gcd_without(a, &[i, j]);
            if g != 0 && d % g != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypersurfaceDatum {
    pub weights: Vec<u64>,
    pub degree: u64,
    pub poly: SupportedPolynomial,
}

impl HypersurfaceDatum {
    pub fn new(ws: &WeightSystem, poly: SupportedPolynomial) -> Result<Self> {
        require_positive(&ws.weights)?;
        if !check_weights(&poly, ws)? {
            return Err(Error::NotQuasihomogeneous);
        }
        Ok(Self {
            weights: ws.weights.clone(),
            degree: ws.degree,
            poly,
        })
    }
}

/// Presentation of a linear cone `d̃ = ã_k` as the weighted plane with
/// coordinate `k` eliminated.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearCone {
    pub eliminated: usize,
    /// Weights of the remaining coordinates, in their original order.
    pub space: Vec<u64>,
    pub remaining: Vec<usize>,
    /// Coefficient of the image curve `{x_k = 0}` of degree `d̃`.
    pub curve_coefficient: Q,
    /// Coefficients of the remaining coordinate lines.
    pub coordinate_diff: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WellFormedDatum {
    pub atilde: Vec<u64>,
    pub dtilde: u64,
    /// Accumulated multiplicities, one per variable.
    pub q: Vec<u64>,
    pub diff: Vec<Q>,
    pub reduced_poly: SupportedPolynomial,
    pub linear_cone: Option<LinearCone>,
}

fn pairwise_coprime(q: &[u64]) -> bool {
    (0..q.len()).all(|i| (i + 1..q.len()).all(|j| gcd_slice(&[q[i], q[j]]) == 1))
}

/// Divides out the complement gcds until the weights are well-defined, then
/// checks that the hypersurface is well-formed.
pub fn well_formize(hd: &HypersurfaceDatum) -> Result<WellFormedDatum> {
    require_positive(&hd.weights)?;
    if gcd_slice(&hd.weights) != 1 {
        return Err(Error::InvalidWeight(format!(
            "{:?} is not primitive",
            hd.weights
        )));
    }
    let n = hd.weights.len();
    let mut a = hd.weights.clone();
    let mut d = hd.degree;
    let mut poly = hd.poly.clone();
    let mut acc = vec![1u64; n];
    loop {
        let q = complement_gcds(&a);
        if q.iter().all(|&x| x == 1) {
            break;
        }
        assert!(pairwise_coprime(&q), "complement gcds of primitive weights are coprime");
        for m in poly.support() {
            for (i, (&e, &qi)) in m.iter().zip(&q).enumerate() {
                if e % qi as u32 != 0 {
                    return Err(Error::Divisibility {
                        var: i,
                        exponent: e,
                        q: qi,
                    });
                }
            }
        }
        let prod: u64 = q.iter().product();
        if d % prod != 0 {
            return Err(Error::NonIntegral(format!(
                "degree {d} is not divisible by {prod}"
            )));
        }
        d /= prod;
        a = a
            .iter()
            .zip(&q)
            .map(|(&ai, &qi)| ai * qi / prod)
            .collect();
        poly = poly.map_exponents(|m| m.iter().zip(&q).map(|(&e, &qi)| e / qi as u32).collect());
        for (x, qi) in acc.iter_mut().zip(&q) {
            *x *= qi;
        }
    }
    assert!(pairwise_coprime(&acc), "accumulated multiplicities are coprime");
    if !is_well_formed(&a, d)? {
        return Err(Error::NotWellFormed {
            weights: a,
            degree: d,
        });
    }
    let diff = acc
        .iter()
        .map(|&qi| Q::new((qi - 1).into(), qi.into()))
        .collect();
    Ok(WellFormedDatum {
        atilde: a,
        dtilde: d,
        q: acc,
        diff,
        reduced_poly: poly,
        linear_cone: None,
    })
}

/// Records the linear-cone presentation when `d̃ = ã_k` and `x_k` itself is a
/// monomial of the reduced polynomial (smallest such `k`). The numeric tuple is
/// left untouched.
pub fn linear_cone_reduce(wfd: &WellFormedDatum) -> WellFormedDatum {
    let n = wfd.atilde.len();
    let k = (0..n).find(|&k| {
        let mut e = vec![0; n];
        e[k] = 1;
        wfd.atilde[k] == wfd.dtilde && wfd.reduced_poly.contains(&e)
    });
    let mut out = wfd.clone();
    out.linear_cone = k.map(|k| {
        let remaining: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        LinearCone {
            eliminated: k,
            space: remaining.iter().map(|&i| wfd.atilde[i]).collect(),
            curve_coefficient: wfd.diff[k].clone(),
            coordinate_diff: remaining.iter().map(|&i| wfd.diff[i].clone()).collect(),
            remaining,
        }
    });
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeData {
    /// `d̃ - Σã_i`, the degree of `K_E` in units of `O_E(1)`.
    pub canonical_deg: i64,
    /// `d̃ / Πã_i`.
    pub o1_power: Q,
    /// `Σ ã_i/q_i - d̃`, the degree of `-(K_E + Diff)`.
    pub fano_deg: Q,
}

pub fn degree_data(wfd: &WellFormedDatum) -> DegreeData {
    let sum: u64 = wfd.atilde.iter().sum();
    let prod: u64 = wfd.atilde.iter().product();
    let fano: Q = wfd
        .atilde
        .iter()
        .zip(&wfd.q)
        .map(|(&a, &q)| Q::new(a.into(), q.into()))
        .sum::<Q>()
        - q_u(wfd.dtilde);
    DegreeData {
        canonical_deg: wfd.dtilde as i64 - sum as i64,
        o1_power: Q::new(wfd.dtilde.into(), prod.into()),
        fano_deg: fano,
    }
}

/// `(Σa_i - d) / Πq_i`, which must agree with `fano_deg`.
pub fn bookkeeping_value(hd: &HypersurfaceDatum, wfd: &WellFormedDatum) -> Q {
    let sum: u64 = hd.weights.iter().sum();
    let prod: u64 = wfd.q.iter().product();
    Q::new((sum as i64 - hd.degree as i64).into(), prod.into())
}
