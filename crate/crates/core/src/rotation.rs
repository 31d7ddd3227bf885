//! Newton line rotation: enumerate the pivot monomials `m` such that a weight
//! plane through a fixed quasihomogeneous part and `m` exists with the
//! canonicity threshold, while the fixed part plus `m` is not log canonical.
//!
//! Coordinates are `(t, z, x, y)`. A pivot has the shape `v^c x^a y^b` where
//! `v` is one of the preset's pivot variables.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{gamma_contains, ones};
use crate::linalg::{self, Solution};
use crate::lp::{LinearProgram, Outcome, Relation};
use crate::polyexpr::{canonical_render, SupportedPolynomial};
use crate::rational::{q_u, Q};

pub type Monomial = [u32; 4];

pub const T: usize = 0;
pub const Z: usize = 1;
pub const X: usize = 2;
pub const Y: usize = 3;

pub const DEFAULT_BOUND: u32 = 30;
pub const MAX_BOUND: u32 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationPreset {
    pub name: String,
    pub fixed: Vec<Monomial>,
    /// Require `wt x > wt y` instead of `wt x ≥ wt y`.
    pub strict_order: bool,
    /// Allowed pivot variables with their largest exponent.
    pub pivots: Vec<(usize, u32)>,
    /// Require `a ≥ b` for `x^a y^b` (`a > b` when the order is strict).
    pub require_a_ge_b: bool,
    /// Least total degree of a pivot monomial.
    pub min_degree: u32,
    /// The printed list, kept for regression.
    pub expected: Vec<Monomial>,
}

impl RotationPreset {
    /// `1 - wt t - wt z` when the fixed part pins both weights; the rotation
    /// requires `wt x + wt y` to exceed it.
    pub fn threshold(&self) -> Option<Q> {
        if self.fixed.iter().any(|m| m[X] > 0 || m[Y] > 0) {
            return None;
        }
        let rows: Vec<Vec<Q>> = self
            .fixed
            .iter()
            .map(|m| vec![q_u(m[T].into()), q_u(m[Z].into())])
            .collect();
        match linalg::solve_affine(&rows, &vec![Q::one(); rows.len()], 2) {
            Solution::Affine { basepoint, kernel } if kernel.is_empty() => {
                Some(Q::one() - &basepoint[0] - &basepoint[1])
            }
            _ => None,
        }
    }

    pub fn fixed_polynomial(&self) -> SupportedPolynomial {
        SupportedPolynomial::from_monomials(4, self.fixed.iter().map(|m| m.to_vec()))
    }
}

fn weight_lp(preset: &RotationPreset, m: &Monomial) -> LinearProgram {
    // Variables: w_t, w_z, w_x, w_y, s. Maximize s ≤ 1 subject to strict
    // inequalities relaxed to `≥ s`.
    let row = |coeffs: [i64; 5]| coeffs.iter().map(|&c| Q::from_integer(c.into())).collect();
    let mut lp = LinearProgram::new(5);
    for f in preset.fixed.iter().chain(std::iter::once(m)) {
        let mut c = [0i64; 5];
        for j in 0..4 {
            c[j] = f[j].into();
        }
        lp.constrain(row(c), Relation::Eq, Q::one());
    }
    for j in 0..4 {
        let mut c = [0i64; 5];
        c[j] = 1;
        c[4] = -1;
        lp.constrain(row(c), Relation::Ge, Q::zero());
    }
    let order = if preset.strict_order { -1 } else { 0 };
    lp.constrain(row([0, 0, 1, -1, order]), Relation::Ge, Q::zero());
    lp.constrain(row([1, 1, 1, 1, -1]), Relation::Ge, Q::one());
    lp.constrain(row([0, 0, 0, 0, 1]), Relation::Le, Q::one());
    lp.maximize(row([0, 0, 0, 0, 1]));
    lp
}

/// Condition (i): a positive weight through the fixed part and `m` with the
/// order condition and `Σ wt > 1`.
pub fn rotation_feasible(preset: &RotationPreset, m: &Monomial) -> bool {
    matches!(weight_lp(preset, m).solve(), Outcome::Optimal { value, .. } if value.is_positive())
}

/// Condition (ii): the fixed part plus `m` is not log canonical, i.e. `1` is
/// outside its Newton polyhedron.
pub fn not_lc(preset: &RotationPreset, m: &Monomial) -> bool {
    let mut p = preset.fixed_polynomial();
    p.add_term(m.to_vec(), crate::polyexpr::CoefficientTag::one());
    !gamma_contains(&p, &ones(4)).expect("dimension 4")
}

fn shape_ok(preset: &RotationPreset, m: &Monomial) -> bool {
    let pivot_part: Vec<usize> = [T, Z].into_iter().filter(|&v| m[v] > 0).collect();
    let pivot_ok = match pivot_part.as_slice() {
        [] => true,
        [v] => preset
            .pivots
            .iter()
            .any(|&(p, max)| p == *v && m[*v] <= max),
        _ => false,
    };
    let degree: u32 = m.iter().sum();
    pivot_ok
        && (!preset.require_a_ge_b || m[X] > m[Y] || (m[X] == m[Y] && !preset.strict_order))
        && degree >= preset.min_degree.max(1)
        && !preset.fixed.contains(m)
}

fn candidate(preset: &RotationPreset, m: &Monomial) -> bool {
    shape_ok(preset, m) && rotation_feasible(preset, m) && not_lc(preset, m)
}

/// Condition (iii): `m` is strictly between a fixed monomial and another
/// candidate on a common line, with that candidate inside the box.
fn collinear_pruned(preset: &RotationPreset, m: &Monomial, bound: u32) -> bool {
    preset.fixed.iter().any(|apex| {
        let delta: Vec<i64> = (0..4).map(|j| i64::from(m[j]) - i64::from(apex[j])).collect();
        let g = delta.iter().fold(0i64, |g, d| g.gcd(d));
        if g == 0 {
            return false;
        }
        let step: Vec<i64> = delta.iter().map(|d| d / g).collect();
        let mut k = g + 1;
        loop {
            let next: Vec<i64> = (0..4).map(|j| i64::from(apex[j]) + k * step[j]).collect();
            if next.iter().any(|&e| e < 0 || e > i64::from(bound)) {
                return false;
            }
            let other: Monomial = [next[0] as u32, next[1] as u32, next[2] as u32, next[3] as u32];
            if candidate(preset, &other) {
                return true;
            }
            k += 1;
        }
    })
}

fn search_box(preset: &RotationPreset, bound: u32) -> Vec<Monomial> {
    let mut out = BTreeSet::new();
    for &(v, max) in &preset.pivots {
        for c in 0..=max.min(bound) {
            for a in 0..=bound {
                for b in 0..=bound {
                    let mut m = [0, 0, a, b];
                    m[v] = c;
                    out.insert(m);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Display order: pivot exponent, then `a + b`, then `a` descending.
pub fn sort_key(m: &Monomial) -> (u32, u32, u32, std::cmp::Reverse<u32>) {
    (m[T] + m[Z], m[T], m[X] + m[Y], std::cmp::Reverse(m[X]))
}

pub fn enumerate_pivots(preset: &RotationPreset, bound: u32) -> Result<Vec<Monomial>> {
    if bound == 0 || bound > MAX_BOUND {
        return Err(Error::SearchBound(bound));
    }
    let mut out: Vec<Monomial> = search_box(preset, bound)
        .into_par_iter()
        .filter(|m| candidate(preset, m) && !collinear_pruned(preset, m, bound))
        .collect();
    out.sort_by_key(sort_key);
    Ok(out)
}

pub fn render_monomial(m: &Monomial) -> String {
    canonical_render(&SupportedPolynomial::from_monomials(4, [m.to_vec()]))
}

fn mono(s: &str) -> Monomial {
    let p = crate::polyexpr::parse_polynomial(s, &BTreeMap::new()).expect("preset monomial");
    let m = p.support().next().expect("one monomial");
    [m[0], m[1], m[2], m[3]]
}

fn monos(list: &str) -> Vec<Monomial> {
    list.split(',').map(|s| mono(s.trim())).collect()
}

struct Spec<'a> {
    fixed: &'a str,
    strict: bool,
    pivots: &'a [(usize, u32)],
    min_degree: u32,
    expected: &'a str,
}

fn preset(name: &str, s: Spec<'_>) -> RotationPreset {
    RotationPreset {
        name: name.to_string(),
        fixed: monos(s.fixed),
        strict_order: s.strict,
        pivots: s.pivots.to_vec(),
        require_a_ge_b: true,
        min_degree: s.min_degree,
        expected: monos(s.expected),
    }
}

pub fn builtin_presets() -> BTreeMap<String, RotationPreset> {
    const ZP: &[(usize, u32)] = &[(Z, 1)];
    const ZT: &[(usize, u32)] = &[(Z, 1), (T, 1)];
    let specs: Vec<(&str, Spec<'_>)> = vec![
        ("upsilon1", Spec {
            fixed: "t^2, z^3",
            strict: false,
            pivots: ZP,
            min_degree: 0,
            expected: "x^7, x^8, x^7y, x^9, x^8y, x^7y^2, x^10, x^9y, x^8y^2, x^7y^3, \
                       x^11, x^10y, x^9y^2, x^8y^3, x^7y^4, zx^5, zx^5y, zx^7, zx^6y, zx^5y^2",
        }),
        ("upsilon2_1", Spec {
            fixed: "t^2, z^4",
            strict: false,
            pivots: ZP,
            min_degree: 5,
            expected: "x^5, x^6, x^5y, x^7, x^6y, x^5y^2, zx^4, zx^5, zx^4y",
        }),
        ("upsilon2_2", Spec {
            fixed: "t^2, z^3x",
            strict: false,
            pivots: ZP,
            min_degree: 5,
            expected: "x^5, x^6, x^5y, x^7, x^6y, x^5y^2, x^8, x^7y, x^6y^2, x^5y^3, \
                       x^9, x^8y, x^7y^2, x^6y^3, x^5y^4, zx^4, zx^4y, zx^6, zx^5y, zx^4y^2",
        }),
        ("theorem_3_23", Spec {
            fixed: "t^2, z^3y",
            strict: true,
            pivots: &[(Z, 2)],
            min_degree: 0,
            expected: "x^7, x^8, x^7y, x^9, x^8y, x^7y^2, zx^5, zx^6, zx^5y, z^2x^3",
        }),
        ("upsilon3_1", Spec {
            fixed: "t^2, z^5",
            strict: false,
            pivots: ZP,
            min_degree: 6,
            expected: "x^6, x^5y, x^4y^2, zx^5, zx^4y, zx^3y^2",
        }),
        ("upsilon3_2", Spec {
            fixed: "t^2, z^4x",
            strict: false,
            pivots: ZP,
            min_degree: 6,
            expected: "x^6, x^5y, x^4y^2, zx^5, zx^4y, zx^3y^2",
        }),
        ("upsilon3_3", Spec {
            fixed: "t^2, z^4y",
            strict: true,
            pivots: ZP,
            min_degree: 6,
            expected: "x^6, x^5y, zx^5, zx^4y",
        }),
        ("upsilon3_4", Spec {
            fixed: "t^2, z^3x^2",
            strict: false,
            pivots: ZP,
            min_degree: 6,
            expected: "x^6, x^5y, x^4y^2, x^3y^3, x^7, x^6y, x^5y^2, x^4y^3, x^3y^4, \
                       zx^5, zx^4y, zx^3y^2",
        }),
        ("upsilon3_5", Spec {
            fixed: "t^2, z^3y^2",
            strict: true,
            pivots: ZP,
            min_degree: 6,
            expected: "x^7, zx^5",
        }),
        ("upsilon3_6", Spec {
            fixed: "t^2, z^3xy",
            strict: false,
            pivots: ZP,
            min_degree: 6,
            expected: "x^5, x^6, x^5y, x^7, x^6y, x^5y^2, zx^5, zx^4y",
        }),
        ("upsilon4_1", Spec {
            fixed: "t^3, z^3",
            strict: false,
            pivots: ZT,
            min_degree: 4,
            expected: "x^4, x^5, x^4y, zx^3",
        }),
        ("upsilon4_2", Spec {
            fixed: "t^3, z^2x",
            strict: false,
            pivots: ZT,
            min_degree: 4,
            expected: "x^4, x^5, x^4y, x^6, x^5y, x^4y^2, x^7, x^6y, x^5y^2, x^4y^3, \
                       x^8, x^7y, x^6y^2, x^5y^3, x^4y^4, tx^3, tx^3y, tx^5, tx^4y, tx^3y^2",
        }),
        ("upsilon4_3", Spec {
            fixed: "t^3, z^2y",
            strict: false,
            pivots: ZT,
            min_degree: 4,
            expected: "x^7, x^8, x^7y, zx^4, tx^5",
        }),
        ("upsilon4_4", Spec {
            fixed: "t^2z, z^2x",
            strict: false,
            pivots: ZT,
            min_degree: 4,
            expected: "x^4, x^5, x^4y, x^6, x^5y, x^4y^2, tx^3, tx^4, tx^3y",
        }),
        ("upsilon4_5", Spec {
            fixed: "t^2z, z^2y",
            strict: false,
            pivots: ZT,
            min_degree: 4,
            expected: "x^5, x^6, x^5y, zx^3, tx^4",
        }),
    ];
    specs
        .into_iter()
        .map(|(name, s)| (name.to_string(), preset(name, s)))
        .collect()
}

pub fn lookup(name: &str) -> Result<RotationPreset> {
    builtin_presets()
        .remove(name)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}
