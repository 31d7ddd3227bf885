//! Property suites shared by `properties.rs` and the acceptance summary, plus
//! brute-force oracles that avoid the library's LP.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use singtool::complements::{r_n, ComplementDatum, Rounding};
use singtool::lattice::{gamma_contains, gamma_interior_contains, leading_part, pairing, support_value};
use singtool::polyexpr::{canonical_render, parse_polynomial, SupportedPolynomial};
use singtool::quasihom::{blowup_discrepancy, relative_discrepancy, WeightSystem};
use singtool::rational::Q;
use singtool::rotation::{self, Monomial, RotationPreset};
use singtool::wps::{bookkeeping_value, degree_data, well_formize, HypersurfaceDatum};

pub const CASES: u32 = 1000;

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

// ---- Carathéodory oracle ------------------------------------------------------

pub fn det(mut m: Vec<Vec<i128>>) -> i128 {
    // Bareiss fraction-free elimination.
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `v = num / den` lies in conv(support) + orthant iff `(num, den)` is a
/// nonnegative combination of `(m_i, 1)` and `(e_j, 0)`; some basic solution
/// then exists, so it suffices to try every square nonsingular basis.
pub fn caratheodory_contains(support: &[Vec<u32>], num: &[i64], den: i64) -> bool {
    let dim = num.len();
    let mut cols: Vec<Vec<i128>> = support
        .iter()
        .map(|m| m.iter().map(|&e| i128::from(e)).chain([1]).collect())
        .collect();
    for j in 0..dim {
        let mut e = vec![0i128; dim + 1];
        e[j] = 1;
        cols.push(e);
    }
    let rhs: Vec<i128> = num.iter().map(|&x| i128::from(x)).chain([i128::from(den)]).collect();
    let rows = dim + 1;
    subsets(cols.len(), rows).into_iter().any(|basis| {
        let matrix = |replace: Option<usize>| -> Vec<Vec<i128>> {
            (0..rows)
                .map(|r| {
                    basis
                        .iter()
                        .enumerate()
                        .map(|(k, &c)| if Some(k) == replace { rhs[r] } else { cols[c][r] })
                        .collect()
                })
                .collect()
        };
        let d = det(matrix(None));
        if d == 0 {
            return false;
        }
        (0..rows).all(|k| {
            let dk = det(matrix(Some(k)));
            dk == 0 || (dk > 0) == (d > 0)
        })
    })
}

// ---- strategies ---------------------------------------------------------------

fn poly_of(dim: usize, support: &[Vec<u32>]) -> SupportedPolynomial {
    SupportedPolynomial::from_monomials(dim, support.iter().cloned())
}

fn support_strategy(max_dim: usize, max_len: usize, max_exp: u32) -> impl Strategy<Value = (usize, Vec<Vec<u32>>)> {
    (1..=max_dim).prop_flat_map(move |dim| {
        (
            Just(dim),
            prop::collection::vec(prop::collection::vec(0..=max_exp, dim), 1..=max_len),
        )
    })
}

/// Support, a point `num/den`, with half the points placed near a midpoint of
/// two support monomials so that boundary cases are common.
fn membership_case() -> impl Strategy<Value = (usize, Vec<Vec<u32>>, Vec<i64>, i64)> {
    support_strategy(4, 8, 12).prop_flat_map(|(dim, support)| {
        let n = support.len();
        let random = (1i64..=3).prop_flat_map(move |den| {
            (prop::collection::vec(0..=14 * den, dim), Just(den))
        });
        let near = (0..n, 0..n, prop::collection::vec(-1i64..=1, dim)).prop_map({
            let support = support.clone();
            move |(i, j, shift)| {
                let num = (0..dim)
                    .map(|k| i64::from(support[i][k] + support[j][k]) + shift[k])
                    .map(|x| x.max(0))
                    .collect::<Vec<_>>();
                (num, 2)
            }
        });
        (Just(dim), Just(support), prop_oneof![random, near])
            .prop_map(|(dim, support, (num, den))| (dim, support, num, den))
    })
}

fn point(num: &[i64], den: i64) -> Vec<Q> {
    num.iter().map(|&x| Q::new(x.into(), den.into())).collect()
}

// ---- Newton polyhedron suites -----------------------------------------------

pub fn newton_upward_closure() -> Result<(), String> {
    let strategy = (membership_case(), prop::collection::vec(0i64..=3, 4));
    run(strategy, |((dim, support, num, den), bump)| {
        let p = poly_of(dim, &support);
        if gamma_contains(&p, &point(&num, den)).unwrap() {
            let up: Vec<i64> = num.iter().zip(&bump).map(|(x, b)| x + b).collect();
            prop_assert!(gamma_contains(&p, &point(&up, den)).unwrap());
        }
        Ok(())
    })
}

pub fn newton_interior_subset() -> Result<(), String> {
    run(membership_case(), |(dim, support, num, den)| {
        let p = poly_of(dim, &support);
        let v = point(&num, den);
        if gamma_interior_contains(&p, &v).unwrap() {
            prop_assert!(gamma_contains(&p, &v).unwrap());
        }
        Ok(())
    })
}

pub fn newton_vs_caratheodory() -> Result<(), String> {
    run(membership_case(), |(dim, support, num, den)| {
        let p = poly_of(dim, &support);
        let distinct: Vec<Vec<u32>> = p.support().cloned().collect();
        prop_assert_eq!(
            gamma_contains(&p, &point(&num, den)).unwrap(),
            caratheodory_contains(&distinct, &num, den)
        );
        Ok(())
    })
}

pub fn support_value_homogeneity() -> Result<(), String> {
    let strategy = support_strategy(4, 8, 12).prop_flat_map(|(dim, support)| {
        (
            Just(dim),
            Just(support),
            prop::collection::vec(0u64..=9, dim),
            1i64..=12,
            1i64..=5,
        )
    });
    run(strategy, |(dim, support, w, kn, kd)| {
        let p = poly_of(dim, &support);
        let w: Vec<Q> = w.iter().map(|&x| Q::from_integer(x.into())).collect();
        let k = Q::new(kn.into(), kd.into());
        let scaled: Vec<Q> = w.iter().map(|x| x * &k).collect();
        let value = support_value(&w, &p).unwrap();
        prop_assert_eq!(support_value(&scaled, &p).unwrap(), &value * &k);
        let min = support.iter().map(|m| pairing(&w, m)).min().unwrap();
        prop_assert_eq!(&value, &min);
        let lead = leading_part(&w, &p).unwrap();
        prop_assert!(!lead.is_empty());
        for m in p.support() {
            prop_assert!(pairing(&w, m) >= value);
            prop_assert_eq!(lead.contains(m), pairing(&w, m) == value);
        }
        Ok(())
    })
}

// ---- well-formization ------------------------------------------------------

/// Brieskorn–Pham datum `Σ x_i^{e_i}` with weights `L/e_i`, `L = lcm(e)`.
fn brieskorn_pham() -> impl Strategy<Value = (Vec<u32>, HypersurfaceDatum)> {
    prop::collection::vec(1u32..=30, 4).prop_map(|e| {
        let l = e.iter().fold(1u64, |l, &x| l.lcm(&u64::from(x)));
        let weights: Vec<u64> = e.iter().map(|&x| l / u64::from(x)).collect();
        let monomials = (0..4).map(|i| {
            let mut m = vec![0; 4];
            m[i] = e[i];
            m
        });
        let ws = WeightSystem::new(weights, l).unwrap();
        let hd = HypersurfaceDatum::new(&ws, poly_of(4, &monomials.collect::<Vec<_>>())).unwrap();
        (e, hd)
    })
}

pub fn well_formize_properties() -> Result<(), String> {
    run(brieskorn_pham(), |(e, hd)| {
        let wfd = well_formize(&hd).unwrap();
        for i in 0..4 {
            for j in i + 1..4 {
                prop_assert_eq!(wfd.q[i].gcd(&wfd.q[j]), 1);
            }
            prop_assert_eq!(u64::from(e[i]) % wfd.q[i], 0);
            prop_assert_eq!(&wfd.diff[i], &Q::new((wfd.q[i] - 1).into(), wfd.q[i].into()));
        }
        prop_assert_eq!(degree_data(&wfd).fano_deg, bookkeeping_value(&hd, &wfd));
        let sum: u64 = hd.weights.iter().sum();
        let prod: u64 = wfd.q.iter().product();
        let lhs: Q = wfd
            .atilde
            .iter()
            .zip(&wfd.q)
            .map(|(&a, &q)| Q::new(a.into(), q.into()))
            .sum::<Q>()
            - Q::from_integer(wfd.dtilde.into());
        prop_assert_eq!(lhs, Q::new((sum as i64 - hd.degree as i64).into(), prod.into()));

        let again = HypersurfaceDatum {
            weights: wfd.atilde.clone(),
            degree: wfd.dtilde,
            poly: wfd.reduced_poly.clone(),
        };
        let second = well_formize(&again).unwrap();
        prop_assert_eq!(&second.atilde, &wfd.atilde);
        prop_assert_eq!(second.dtilde, wfd.dtilde);
        prop_assert!(second.q.iter().all(|&q| q == 1));
        prop_assert!(second.reduced_poly.same_support(&wfd.reduced_poly));
        Ok(())
    })
}

// ---- complement arithmetic --------------------------------------------------

fn complement_case() -> impl Strategy<Value = (ComplementDatum, i64)> {
    (1usize..=5)
        .prop_flat_map(|len| {
            (
                prop::collection::vec(1u64..=60, len),
                1u64..=100,
                prop::collection::vec(1u64..=30, len),
            )
        })
        .prop_map(|(atilde, dtilde, q)| ComplementDatum { atilde, dtilde, q })
        .prop_flat_map(|d| (Just(d), 1i64..=200))
}

pub fn r_n_rounding() -> Result<(), String> {
    run(complement_case(), |(d, n)| {
        let floor = r_n(&d, n, Rounding::Floor).unwrap();
        let ceil = r_n(&d, n, Rounding::Ceil).unwrap();
        prop_assert!(floor >= ceil);
        let divides = d.q.iter().all(|&q| q == 1 || (n as u64 + 1) % q == 0);
        prop_assert_eq!(floor == ceil, divides);
        prop_assert!((floor * Q::from_integer(n.into())).is_integer());
        Ok(())
    })
}

// ---- discrepancies ----------------------------------------------------------

fn primitive_weight() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..=20, 4)
        .prop_filter("two positive entries", |w| w.iter().filter(|&&x| x > 0).count() >= 2)
        .prop_map(|w| {
            let g = w.iter().fold(0u64, |g, x| g.gcd(x));
            w.iter().map(|x| x / g).collect()
        })
}

pub fn relative_discrepancy_self() -> Result<(), String> {
    let support = prop::collection::vec(prop::collection::vec(0u32..=12, 4), 1..=8);
    let strategy = (primitive_weight(), support)
        .prop_flat_map(|(p, s)| {
            let charts: Vec<usize> = (0..4).filter(|&i| p[i] > 0).collect();
            (Just(p), Just(s), prop::sample::select(charts))
        });
    run(strategy, |(p, support, i)| {
        let poly = poly_of(4, &support);
        prop_assert_eq!(relative_discrepancy(&p, &p, i, &poly).unwrap(), -Q::one());
        let min = support
            .iter()
            .map(|m| m.iter().zip(&p).map(|(&e, &w)| u64::from(e) * w).sum::<u64>())
            .min()
            .unwrap();
        let expected = p.iter().sum::<u64>() as i64 - min as i64 - 1;
        prop_assert_eq!(
            blowup_discrepancy(&p, &poly).unwrap(),
            Q::from_integer(BigInt::from(expected))
        );
        Ok(())
    })
}

// ---- parser -----------------------------------------------------------------

pub fn render_roundtrip() -> Result<(), String> {
    run(support_strategy(4, 8, 12).prop_map(|(_, s)| {
        s.into_iter()
            .map(|mut m| {
                m.resize(4, 0);
                m
            })
            .collect::<Vec<_>>()
    }), |support| {
        let p = poly_of(4, &support);
        let text = canonical_render(&p);
        let back = parse_polynomial(&text, &BTreeMap::new()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(back.same_support(&p), "{}", text);
        prop_assert_eq!(canonical_render(&back), text);
        Ok(())
    })
}

// ---- rotation ---------------------------------------------------------------

/// Brute-force version of the three pivot conditions for `upsilon1`
/// (`t², z³` fixed, so wt t = 1/2, wt z = 1/3).
pub fn upsilon1_brute_force(bound: u32, max_c: u32) -> Vec<Monomial> {
    let fixed: [Monomial; 2] = [[2, 0, 0, 0], [0, 3, 0, 0]];
    let passes = |m: &Monomial| -> bool {
        let [t, c, a, b] = *m;
        if t != 0 || c > 1 || a < b || a + b + c == 0 || fixed.contains(m) {
            return false;
        }
        // a wx + b wy = 1 - c/3 with wx ≥ wy > 0; wx + wy is largest at wx = wy.
        let rest = Q::new((3 - i64::from(c)).into(), 3.into());
        let feasible = a > 0 && rest.is_positive() && {
            let best = Q::from_integer(2.into()) * rest / Q::from_integer(i64::from(a + b).into());
            best > Q::new(1.into(), 6.into())
        };
        let support: Vec<Vec<u32>> = fixed.iter().map(|f| f.to_vec()).chain([m.to_vec()]).collect();
        feasible && !caratheodory_contains(&support, &[1, 1, 1, 1], 1)
    };
    let mut passing = Vec::new();
    for c in 0..=max_c {
        for a in 0..=bound {
            for b in 0..=bound {
                let m = [0, c, a, b];
                if passes(&m) {
                    passing.push(m);
                }
            }
        }
    }
    let between = |apex: &Monomial, m: &Monomial, other: &Monomial| -> bool {
        let u: Vec<i64> = (0..4).map(|j| i64::from(m[j]) - i64::from(apex[j])).collect();
        let v: Vec<i64> = (0..4).map(|j| i64::from(other[j]) - i64::from(apex[j])).collect();
        let parallel = (0..4).all(|j| (0..4).all(|k| u[j] * v[k] == u[k] * v[j]));
        let dot = |x: &[i64], y: &[i64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<i64>();
        parallel && dot(&u, &v) > 0 && dot(&v, &v) > dot(&u, &v)
    };
    let mut out: Vec<Monomial> = passing
        .iter()
        .filter(|m| {
            !fixed
                .iter()
                .any(|apex| passing.iter().any(|other| between(apex, m, other)))
        })
        .copied()
        .collect();
    out.sort();
    out
}

pub fn rotation_matches_brute_force() -> Result<(), String> {
    let preset: RotationPreset = rotation::lookup("upsilon1").map_err(|e| e.to_string())?;
    let mut found = rotation::enumerate_pivots(&preset, 20).map_err(|e| e.to_string())?;
    found.sort();
    let oracle = upsilon1_brute_force(20, 2);
    if found == oracle {
        Ok(())
    } else {
        Err(format!("enumerator {found:?}\noracle {oracle:?}"))
    }
}

/// Larger monomials give smaller Newton polyhedra, so non-lc is inherited.
pub fn not_lc_upward() -> Result<(), String> {
    let preset = rotation::lookup("upsilon1").map_err(|e| e.to_string())?;
    let strategy = (
        prop::array::uniform4(0u32..=12),
        prop::array::uniform4(0u32..=3),
    );
    run(strategy, |(m, bump)| {
        let bigger: Monomial = [m[0] + bump[0], m[1] + bump[1], m[2] + bump[2], m[3] + bump[3]];
        if rotation::not_lc(&preset, &m) {
            prop_assert!(rotation::not_lc(&preset, &bigger));
        }
        Ok(())
    })
}

pub fn all_suites() -> Vec<(&'static str, fn() -> Result<(), String>)> {
    vec![
        ("newton upward closure", newton_upward_closure),
        ("interior within membership", newton_interior_subset),
        ("membership vs caratheodory", newton_vs_caratheodory),
        ("support_value homogeneity", support_value_homogeneity),
        ("well_formize invariants", well_formize_properties),
        ("r_n floor/ceil", r_n_rounding),
        ("discrepancy identities", relative_discrepancy_self),
        ("render roundtrip", render_roundtrip),
        ("not_lc upward", not_lc_upward),
        ("rotation brute force", rotation_matches_brute_force),
    ]
}
