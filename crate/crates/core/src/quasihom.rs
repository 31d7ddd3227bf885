//! Quasihomogeneous weight systems, weighted blow-up discrepancies and the
//! numeric canonical / log canonical criteria.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{gamma_contains, gamma_interior_contains, ones, pairing, support_value, weight_from_ints};
use crate::linalg::{self, Solution};
use crate::polyexpr::SupportedPolynomial;
use crate::rational::{gcd_slice, q_u, Q};

/// Primitive nonnegative weights and the common weighted degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightSystem {
    pub weights: Vec<u64>,
    pub degree: u64,
}

impl WeightSystem {
    pub fn new(weights: Vec<u64>, degree: u64) -> Result<Self> {
        if gcd_slice(&weights) != 1 {
            return Err(Error::InvalidWeight(format!(
                "{weights:?} is not primitive"
            )));
        }
        if degree == 0 {
            return Err(Error::InvalidWeight("degree must be positive".into()));
        }
        Ok(Self { weights, degree })
    }

    pub fn weight_sum(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn as_rational(&self) -> Vec<Q> {
        weight_from_ints(&self.weights)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum WeightDetection {
    Unique(WeightSystem),
    NotQuasihomogeneous,
    /// Solutions of `<w, m> = 1` form `basepoint + span(kernel)`.
    Underdetermined { basepoint: Vec<Q>, kernel: Vec<Vec<Q>> },
}

#[derive(Clone, Copy, Debug)]
pub struct DetectOptions {
    pub allow_zero_weights: bool,
}

impl Default for DetectOptions {
    fn default() -> Self {
        Self {
            allow_zero_weights: true,
        }
    }
}

pub fn detect_weights(poly: &SupportedPolynomial) -> Result<WeightDetection> {
    detect_weights_with(poly, DetectOptions::default())
}

/// Solves `<w, m> = 1` over the support and scales a unique nonnegative
/// solution to a primitive integer weight system.
pub fn detect_weights_with(
    poly: &SupportedPolynomial,
    opts: DetectOptions,
) -> Result<WeightDetection> {
    if poly.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    let n = poly.dim();
    let rows: Vec<Vec<Q>> = poly
        .support()
        .map(|m| m.iter().map(|&e| q_u(u64::from(e))).collect())
        .collect();
    let rhs = vec![Q::one(); rows.len()];
    let w = match linalg::solve_affine(&rows, &rhs, n) {
        Solution::Inconsistent => return Ok(WeightDetection::NotQuasihomogeneous),
        Solution::Affine { basepoint, kernel } if !kernel.is_empty() => {
            return Ok(WeightDetection::Underdetermined { basepoint, kernel })
        }
        Solution::Affine { basepoint, .. } => basepoint,
    };
    if w.iter().any(Signed::is_negative) || (!opts.allow_zero_weights && w.iter().any(Zero::is_zero)) {
        return Ok(WeightDetection::NotQuasihomogeneous);
    }
    let lcm = w
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<BigInt> = w.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = scaled.iter().fold(lcm.clone(), |g, x| g.gcd(x));
    let to_u64 = |b: BigInt| {
        b.to_u64()
            .ok_or_else(|| Error::InvalidWeight("weight does not fit in 64 bits".into()))
    };
    let weights = scaled
        .into_iter()
        .map(|x| to_u64(x / &g))
        .collect::<Result<Vec<_>>>()?;
    let degree = to_u64(lcm / &g)?;
    Ok(WeightDetection::Unique(WeightSystem::new(weights, degree)?))
}

pub fn check_weights(poly: &SupportedPolynomial, ws: &WeightSystem) -> Result<bool> {
    if poly.dim() != ws.weights.len() {
        return Err(Error::DimensionMismatch {
            expected: poly.dim(),
            got: ws.weights.len(),
        });
    }
    let w = ws.as_rational();
    let d = q_u(ws.degree);
    Ok(poly.support().all(|m| pairing(&w, m) == d))
}

fn require_primitive(w: &[u64]) -> Result<()> {
    if gcd_slice(w) != 1 {
        return Err(Error::InvalidWeight(format!("{w:?} is not primitive")));
    }
    Ok(())
}

/// `<w, 1> - w(f) - 1`, the discrepancy of the exceptional divisor of the
/// `w`-blow-up.
pub fn blowup_discrepancy(w: &[u64], poly: &SupportedPolynomial) -> Result<Q> {
    require_primitive(w)?;
    if w.iter().filter(|&&x| x > 0).count() < 2 {
        return Err(Error::InvalidWeight(format!(
            "{w:?} needs at least two positive entries"
        )));
    }
    let wq = weight_from_ints(w);
    let sum: Q = wq.iter().sum();
    Ok(sum - support_value(&wq, poly)? - Q::one())
}

/// Discrepancy of `D_q` over the chart `i` of the `p`-blow-up:
/// `<q,1> - q(f) - (q_i/p_i)(<p,1> - p(f)) - 1`.
pub fn relative_discrepancy(
    q: &[u64],
    p: &[u64],
    i: usize,
    poly: &SupportedPolynomial,
) -> Result<Q> {
    require_primitive(q)?;
    require_primitive(p)?;
    if q.len() != p.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    let pi = *p
        .get(i)
        .ok_or_else(|| Error::InvalidWeight(format!("chart index {i} out of range")))?;
    if pi == 0 {
        return Err(Error::InvalidWeight(format!("p_{i} is zero")));
    }
    let qq = weight_from_ints(q);
    let pq = weight_from_ints(p);
    let a_q = qq.iter().sum::<Q>() - support_value(&qq, poly)?;
    let a_p = pq.iter().sum::<Q>() - support_value(&pq, poly)?;
    Ok(a_q - Q::new(q[i].into(), pi.into()) * a_p - Q::one())
}

/// Numeric halves of the canonical and log canonical criteria. Each flag is
/// only a necessary condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericReport {
    /// `Σp_i - d`.
    pub excess: i64,
    pub canonical_bound: bool,
    pub lc_bound: bool,
    pub newton_lc: bool,
    pub newton_canonical: bool,
}

impl NumericReport {
    pub fn canonical_necessary(&self) -> bool {
        self.canonical_bound && self.newton_canonical
    }

    pub fn lc_necessary(&self) -> bool {
        self.lc_bound && self.newton_lc
    }
}

pub fn numeric_criteria(ws: &WeightSystem, poly: &SupportedPolynomial) -> Result<NumericReport> {
    if !check_weights(poly, ws)? {
        return Err(Error::NotQuasihomogeneous);
    }
    let excess = ws.weight_sum() as i64 - ws.degree as i64;
    let one = ones(poly.dim());
    Ok(NumericReport {
        excess,
        canonical_bound: excess >= 1,
        lc_bound: excess >= 0,
        newton_lc: gamma_contains(poly, &one)?,
        newton_canonical: gamma_interior_contains(poly, &one)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexpr::parse_polynomial;
    use crate::rational::{frac, q};
    use std::collections::BTreeMap;

    fn poly(s: &str) -> SupportedPolynomial {
        parse_polynomial(s, &BTreeMap::new()).unwrap()
    }

    fn unique(s: &str) -> WeightSystem {
        match detect_weights(&poly(s)).unwrap() {
            WeightDetection::Unique(ws) => ws,
            other => panic!("{other:?}"),
        }
    }

    // t^3 + (generic conic in z, x, y)^2
    const CONIC_SQUARED: &str = "t^3 + (a*z^2 + b*x^2 + c*y^2 + d*z*x + e*z*y + g*x*y)^2";

    #[test]
    fn detection() {
        assert_eq!(
            unique("t^2+z^3+x^7+y^11"),
            WeightSystem { weights: vec![231, 154, 66, 42], degree: 462 }
        );
        assert_eq!(
            unique("t^3+z^4+x^4+y^4"),
            WeightSystem { weights: vec![4, 3, 3, 3], degree: 12 }
        );
        assert_eq!(
            detect_weights(&poly("t^2+t^3")).unwrap(),
            WeightDetection::NotQuasihomogeneous
        );
        assert_eq!(
            unique("t^2+z^3+x^6+x^6y"),
            WeightSystem { weights: vec![3, 2, 1, 0], degree: 6 }
        );
        assert!(matches!(
            detect_weights(&poly("t^2+z^3+x^6")).unwrap(),
            WeightDetection::Underdetermined { ref kernel, .. }
                if kernel == &vec![vec![q(0), q(0), q(0), q(1)]]
        ));
        assert_eq!(
            detect_weights_with(&poly("t^2+z^3+x^6+x^6y"), DetectOptions { allow_zero_weights: false })
                .unwrap(),
            WeightDetection::NotQuasihomogeneous
        );
        assert!(matches!(
            detect_weights(&poly("t^2+z^3")).unwrap(),
            WeightDetection::Underdetermined { ref kernel, .. } if kernel.len() == 2
        ));
        assert!(matches!(
            detect_weights(&poly("t^2+z^2y")).unwrap(),
            WeightDetection::Underdetermined { .. }
        ));
        assert_eq!(
            detect_weights(&poly("t^2+t^3z+x+y")).unwrap(),
            WeightDetection::NotQuasihomogeneous
        );
    }

    #[test]
    fn checking() {
        let ws = WeightSystem::new(vec![84, 56, 24, 21], 168).unwrap();
        assert!(check_weights(&poly("t^2+z^3+x^7+y^8"), &ws).unwrap());
        let unit = WeightSystem::new(vec![1, 1, 1, 1], 2).unwrap();
        assert!(!check_weights(&poly("t^2+z^3"), &unit).unwrap());
        let ws = WeightSystem::new(vec![3, 2, 1, 0], 6).unwrap();
        assert!(check_weights(&poly("t^2+z^3+x^6"), &ws).unwrap());
        assert!(WeightSystem::new(vec![2, 4], 4).is_err());
    }

    #[test]
    fn discrepancies() {
        assert_eq!(blowup_discrepancy(&[4, 3, 3, 3], &poly(CONIC_SQUARED)).unwrap(), q(0));
        assert_eq!(blowup_discrepancy(&[1, 1, 1, 1], &poly("t^2+z^2+x^3")).unwrap(), q(1));
        assert_eq!(
            blowup_discrepancy(&[231, 154, 66, 42], &poly("t^2+z^3+x^7+y^11")).unwrap(),
            q(30)
        );
        assert!(blowup_discrepancy(&[2, 2, 2, 2], &poly("t^2")).is_err());
        assert!(blowup_discrepancy(&[1, 0, 0, 0], &poly("t^2")).is_err());
    }

    #[test]
    fn relative() {
        let f = poly(CONIC_SQUARED);
        for i in 0..4 {
            assert_eq!(relative_discrepancy(&[4, 3, 3, 3], &[4, 3, 3, 3], i, &f).unwrap(), q(-1));
        }
        // q = e_z, chart t: q(f) is the least z-exponent, here 0.
        assert_eq!(relative_discrepancy(&[0, 1, 0, 0], &[4, 3, 3, 3], 0, &f).unwrap(), q(0));
        let g = poly("z^2+z*x^3");
        assert_eq!(relative_discrepancy(&[0, 1, 0, 0], &[1, 1, 1, 1], 0, &g).unwrap(), q(-1));
        // (1,1,1,1)(f) = 3 from t^3: 4 - 3 - (1/4)(13 - 12) - 1.
        assert_eq!(
            relative_discrepancy(&[1, 1, 1, 1], &[4, 3, 3, 3], 0, &f).unwrap(),
            frac(-1, 4)
        );
        assert!(relative_discrepancy(&[1, 1, 1, 1], &[3, 2, 1, 0], 3, &f).is_err());
    }

    #[test]
    fn criteria() {
        let f = poly("t^2+z^3+x^7+y^11");
        let r = numeric_criteria(&unique("t^2+z^3+x^7+y^11"), &f).unwrap();
        assert_eq!(r.excess, 31);
        assert!(r.canonical_necessary() && r.lc_necessary());

        let g = poly("t^2+z^3+x^6");
        let r = numeric_criteria(&WeightSystem::new(vec![3, 2, 1, 0], 6).unwrap(), &g).unwrap();
        assert_eq!(r.excess, 0);
        assert!(r.lc_necessary());
        assert!(!r.canonical_necessary());

        let h = poly("t^2+z^3+x^7");
        let r = numeric_criteria(&WeightSystem::new(vec![21, 14, 6, 0], 42).unwrap(), &h).unwrap();
        assert_eq!(r.excess, -1);
        assert!(!r.canonical_bound && !r.lc_bound);

        let bad = WeightSystem::new(vec![1, 1, 1, 1], 2).unwrap();
        assert_eq!(numeric_criteria(&bad, &f), Err(Error::NotQuasihomogeneous));
    }
}
