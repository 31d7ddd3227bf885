//! Complement-index arithmetic on a well-formed datum `(ã, d̃, q)`.
//!
//! With boundary `D = Σ (q_i - 1)/q_i {x_i = 0}` the degree of an
//! `n`-complement's residual part is
//! `r_n = Σã_i - d̃ - (1/n) Σ round((n+1)(q_i-1)/q_i) ã_i`,
//! and an `n`-complement can exist only if `n·r_n` is a nonnegative integer
//! combination of the `ã_i`.

use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::wps::WellFormedDatum;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    /// Used for existence: `⌊(n+1)B⌋`.
    Floor,
    /// Used for the regular-complement screen.
    Ceil,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementDatum {
    pub atilde: Vec<u64>,
    pub dtilde: u64,
    pub q: Vec<u64>,
}

impl From<&WellFormedDatum> for ComplementDatum {
    fn from(w: &WellFormedDatum) -> Self {
        Self {
            atilde: w.atilde.clone(),
            dtilde: w.dtilde,
            q: w.q.clone(),
        }
    }
}

impl ComplementDatum {
    pub fn diff(&self) -> Vec<Q> {
        self.q
            .iter()
            .map(|&q| Q::new((q - 1).into(), q.into()))
            .collect()
    }
}

/// `round((n+1)(q-1)/q)` in exact integer arithmetic.
fn rounded_multiple(n: u64, q: u64, rounding: Rounding) -> u64 {
    let num = (n + 1) * (q - 1);
    match rounding {
        Rounding::Floor => num / q,
        Rounding::Ceil => num.div_ceil(q),
    }
}

pub fn r_n(datum: &ComplementDatum, n: i64, rounding: Rounding) -> Result<Q> {
    if n <= 0 {
        return Err(Error::NonPositiveIndex(n));
    }
    let n = n as u64;
    let base: i64 = datum.atilde.iter().sum::<u64>() as i64 - datum.dtilde as i64;
    let boundary: u64 = datum
        .atilde
        .iter()
        .zip(&datum.q)
        .map(|(&a, &q)| rounded_multiple(n, q, rounding) * a)
        .sum();
    Ok(Q::from_integer(base.into()) - Q::new(boundary.into(), n.into()))
}

/// Whether `target = Σ a_i b_i` has a solution with `b_i ≥ 0`.
pub fn coin_representable(a: &[u64], target: u64) -> bool {
    let t = target as usize;
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    for v in 1..=t {
        reach[v] = a
            .iter()
            .any(|&c| c > 0 && (c as usize) <= v && reach[v - c as usize]);
    }
    reach[t]
}

/// Whether `n·r_n` (floor rounding) is a nonnegative combination of the `ã_i`.
pub fn representable(datum: &ComplementDatum, n: i64) -> Result<bool> {
    let r = r_n(datum, n, Rounding::Floor)?;
    if r.is_negative() {
        return Err(Error::NegativeRn(n as u32));
    }
    let target = (r * Q::from_integer(n.into()))
        .to_integer()
        .to_u64()
        .expect("n·r_n is a small nonnegative integer");
    Ok(coin_representable(&datum.atilde, target))
}

fn admissible(datum: &ComplementDatum, n: u32) -> bool {
    let n = i64::from(n);
    r_n(datum, n, Rounding::Floor).is_ok_and(|r| !r.is_negative())
        && representable(datum, n).unwrap_or(false)
}

/// Least `n ≤ n_max` passing both numeric conditions.
pub fn candidate_min_index(datum: &ComplementDatum, n_max: u32) -> Option<u32> {
    (1..=n_max).find(|&n| admissible(datum, n))
}

pub const DEFAULT_N_MAX: u32 = 100;

pub const REGULAR_INDICES: [i64; 5] = [1, 2, 3, 4, 6];

/// True when no regular (1, 2, 3, 4 or 6) complement can exist, i.e. the
/// ceiling variant of `r_n` is negative for all of them.
pub fn screen_regular_complements(datum: &ComplementDatum) -> bool {
    REGULAR_INDICES
        .iter()
        .all(|&n| r_n(datum, n, Rounding::Ceil).is_ok_and(|r| r.is_negative()))
}

/// True when some boundary coefficient is at least 6/7.
pub fn screen_big_coefficient(datum: &ComplementDatum) -> bool {
    datum.q.iter().any(|&q| q >= 7)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RnEntry {
    pub n: u32,
    pub floor: Q,
    pub ceil: Q,
    /// `None` when `r_n` (floor) is negative.
    pub representable: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplementProfile {
    pub datum: ComplementDatum,
    pub table: Vec<RnEntry>,
    pub candidate_min_index: Option<u32>,
    pub regular_complement_absent: bool,
    pub big_coefficient: bool,
}

impl ComplementProfile {
    /// Builds the profile with `r_n` tabulated for `1..=table_len` (extended to
    /// cover the candidate index when it is larger).
    pub fn build(datum: &ComplementDatum, n_max: u32, table_len: u32) -> Self {
        let candidate = candidate_min_index(datum, n_max);
        let len = table_len.max(candidate.unwrap_or(0));
        let table = (1..=len)
            .map(|n| {
                let floor = r_n(datum, n.into(), Rounding::Floor).expect("n > 0");
                let ceil = r_n(datum, n.into(), Rounding::Ceil).expect("n > 0");
                let representable = (!floor.is_negative())
                    .then(|| representable(datum, n.into()).expect("r_n ≥ 0"));
                RnEntry {
                    n,
                    floor,
                    ceil,
                    representable,
                }
            })
            .collect();
        Self {
            datum: datum.clone(),
            table,
            candidate_min_index: candidate,
            regular_complement_absent: screen_regular_complements(datum),
            big_coefficient: screen_big_coefficient(datum),
        }
    }

    pub fn admits(&self, n: u32) -> bool {
        admissible(&self.datum, n)
    }
}
