//! Dense two-phase simplex over exact rationals.
//!
//! Variables are implicitly nonnegative. Bland's rule is used throughout, so the
//! method terminates on degenerate problems; the instances solved here are tiny.

use num_traits::{Signed, Zero};

use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub relation: Relation,
    pub rhs: Q,
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    n_vars: usize,
    constraints: Vec<Constraint>,
    objective: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Infeasible,
    Unbounded,
    Optimal { value: Q, point: Vec<Q> },
}

impl Outcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, Outcome::Infeasible)
    }

    pub fn value(&self) -> Option<&Q> {
        match self {
            Outcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(n_vars: usize) -> Self {
        Self {
            n_vars,
            constraints: Vec::new(),
            objective: vec![Q::zero(); n_vars],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn constrain(&mut self, coeffs: Vec<Q>, relation: Relation, rhs: Q) -> &mut Self {
        assert_eq!(coeffs.len(), self.n_vars, "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn maximize(&mut self, objective: Vec<Q>) -> &mut Self {
        assert_eq!(objective.len(), self.n_vars, "objective width");
        self.objective = objective;
        self
    }

    pub fn solve(&self) -> Outcome {
        Tableau::build(self).run(&self.objective)
    }

    pub fn is_feasible(&self) -> bool {
        let mut lp = self.clone();
        lp.objective = vec![Q::zero(); self.n_vars];
        lp.solve().is_feasible()
    }
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    n_vars: usize,
    n_cols: usize,
    artificial_from: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        let mut normalized: Vec<(Vec<Q>, Relation, Q)> = Vec::with_capacity(m);
        for c in &lp.constraints {
            if c.rhs.is_negative() {
                let rel = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                normalized.push((c.coeffs.iter().map(|a| -a).collect(), rel, -&c.rhs));
            } else {
                normalized.push((c.coeffs.clone(), c.relation, c.rhs.clone()));
            }
        }
        let n_slack = normalized
            .iter()
            .filter(|(_, r, _)| *r != Relation::Eq)
            .count();
        let n_art = normalized
            .iter()
            .filter(|(_, r, _)| *r != Relation::Le)
            .count();
        let artificial_from = lp.n_vars + n_slack;
        let n_cols = artificial_from + n_art;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut slack, mut art) = (lp.n_vars, artificial_from);
        for (coeffs, rel, rhs) in normalized {
            let mut row = vec![Q::zero(); n_cols + 1];
            row[..lp.n_vars].clone_from_slice(&coeffs);
            row[n_cols] = rhs;
            match rel {
                Relation::Le => {
                    row[slack] = Q::from_integer(1.into());
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = Q::from_integer((-1).into());
                    slack += 1;
                    row[art] = Q::from_integer(1.into());
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = Q::from_integer(1.into());
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        Self {
            rows,
            basis,
            n_vars: lp.n_vars,
            n_cols,
            artificial_from,
        }
    }

    fn cost_row(&self, costs: &[Q]) -> Vec<Q> {
        // z_j = sum_i c_B(i) a_ij - c_j
        let mut z: Vec<Q> = (0..=self.n_cols)
            .map(|j| if j < self.n_cols { -&costs[j] } else { Q::zero() })
            .collect();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (zj, a) in z.iter_mut().zip(row) {
                *zj += cb * a;
            }
        }
        z
    }

    fn pivot(&mut self, z: &mut [Q], r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for a in self.rows[r].iter_mut() {
            *a /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (a, pa) in row.iter_mut().zip(&pivot_row) {
                if !pa.is_zero() {
                    *a -= &f * pa;
                }
            }
        }
        if !z[c].is_zero() {
            let f = z[c].clone();
            for (a, pa) in z.iter_mut().zip(&pivot_row) {
                if !pa.is_zero() {
                    *a -= &f * pa;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes over columns `< limit`. Returns false when unbounded.
    fn optimize(&mut self, z: &mut [Q], limit: usize) -> bool {
        loop {
            let Some(enter) = (0..limit).find(|&j| z[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.n_cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(z, r, enter),
            }
        }
    }

    fn run(mut self, objective: &[Q]) -> Outcome {
        if self.n_cols > self.artificial_from {
            let mut costs = vec![Q::zero(); self.n_cols];
            for c in costs.iter_mut().skip(self.artificial_from) {
                *c = Q::from_integer((-1).into());
            }
            let mut z = self.cost_row(&costs);
            self.optimize(&mut z, self.n_cols);
            if z[self.n_cols].is_negative() {
                return Outcome::Infeasible;
            }
            // Drive remaining (zero-valued) artificials out of the basis.
            let mut r = 0;
            while r < self.rows.len() {
                if self.basis[r] >= self.artificial_from {
                    match (0..self.artificial_from).find(|&j| !self.rows[r][j].is_zero()) {
                        Some(c) => self.pivot(&mut z, r, c),
                        None => {
                            self.rows.remove(r);
                            self.basis.remove(r);
                            continue;
                        }
                    }
                }
                r += 1;
            }
        }
        let mut costs = vec![Q::zero(); self.n_cols];
        costs[..self.n_vars].clone_from_slice(objective);
        let mut z = self.cost_row(&costs);
        if !self.optimize(&mut z, self.artificial_from) {
            return Outcome::Unbounded;
        }
        let mut point = vec![Q::zero(); self.n_vars];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.n_vars {
                point[b] = row[self.n_cols].clone();
            }
        }
        Outcome::Optimal {
            value: z[self.n_cols].clone(),
            point,
        }
    }
}
