//! Exact feasibility of small linear systems.
//!
//! A phase-1 tableau simplex over [`Rational`] with Bland's rule. Only
//! feasibility is ever needed: every question the library asks (is a point a
//! convex combination of others, is an ordering realized by some direction)
//! reduces to "does this system have a solution".

use alloc::vec;
use alloc::vec::Vec;

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Le,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// `x >= 0`
    NonNegative,
    /// `x` unrestricted
    Free,
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Rational>,
    relation: Relation,
    rhs: Rational,
}

/// A system `A x (=|>=|<=) b` over variables that are each free or non-negative.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    domains: Vec<Domain>,
    rows: Vec<Row>,
}

impl LinearSystem {
    pub fn new(domains: Vec<Domain>) -> Self {
        LinearSystem {
            domains,
            rows: Vec::new(),
        }
    }

    pub fn free(num_vars: usize) -> Self {
        Self::new(vec![Domain::Free; num_vars])
    }

    pub fn non_negative(num_vars: usize) -> Self {
        Self::new(vec![Domain::NonNegative; num_vars])
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.domains.len(), "row width");
        self.rows.push(Row {
            coeffs,
            relation,
            rhs,
        });
    }

    /// Returns some solution if the system is feasible.
    pub fn solve(&self) -> Option<Vec<Rational>> {
        Tableau::build(self).run()
    }

    pub fn is_feasible(&self) -> bool {
        self.solve().is_some()
    }
}

struct Tableau {
    /// `rows[i]` has `num_cols + 1` entries; the last is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs of the phase-1 objective; the last entry is `-w`.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    num_cols: usize,
    /// For each original variable, its positive column and optional negative column.
    var_cols: Vec<(usize, Option<usize>)>,
}

impl Tableau {
    fn build(system: &LinearSystem) -> Self {
        let mut var_cols = Vec::with_capacity(system.domains.len());
        let mut next = 0;
        for domain in &system.domains {
            match domain {
                Domain::NonNegative => {
                    var_cols.push((next, None));
                    next += 1;
                }
                Domain::Free => {
                    var_cols.push((next, Some(next + 1)));
                    next += 2;
                }
            }
        }
        let structural = next;

        // Normalize to rhs >= 0.
        let normalized: Vec<(Vec<Rational>, Relation, Rational)> = system
            .rows
            .iter()
            .map(|row| {
                if row.rhs.is_negative() {
                    let relation = match row.relation {
                        Relation::Eq => Relation::Eq,
                        Relation::Ge => Relation::Le,
                        Relation::Le => Relation::Ge,
                    };
                    (row.coeffs.iter().map(|c| -c).collect(), relation, -&row.rhs)
                } else {
                    (row.coeffs.clone(), row.relation, row.rhs.clone())
                }
            })
            .collect();

        let num_slacks = normalized
            .iter()
            .filter(|(_, rel, _)| *rel != Relation::Eq)
            .count();
        let num_artificial = normalized
            .iter()
            .filter(|(_, rel, _)| *rel != Relation::Le)
            .count();
        let num_cols = structural + num_slacks + num_artificial;

        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let mut cost = vec![Rational::zero(); num_cols + 1];
        let mut slack = structural;
        let mut artificial = structural + num_slacks;
        for (coeffs, relation, rhs) in normalized {
            let mut row = vec![Rational::zero(); num_cols + 1];
            for (var, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (pos, neg) = var_cols[var];
                row[pos] = c.clone();
                if let Some(neg) = neg {
                    row[neg] = -c;
                }
            }
            row[num_cols] = rhs;
            match relation {
                Relation::Le => {
                    row[slack] = Rational::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge | Relation::Eq => {
                    if relation == Relation::Ge {
                        row[slack] = -Rational::one();
                        slack += 1;
                    }
                    row[artificial] = Rational::one();
                    basis.push(artificial);
                    artificial += 1;
                    // The artificial is basic: subtract its row from the cost row.
                    for (j, value) in row.iter().enumerate() {
                        if j != basis[basis.len() - 1] && !value.is_zero() {
                            cost[j] = &cost[j] - value;
                        }
                    }
                }
            }
            rows.push(row);
        }

        Tableau {
            rows,
            cost,
            basis,
            num_cols,
            var_cols,
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col].clone();
        if pivot != Rational::one() {
            for value in self.rows[row].iter_mut() {
                if !value.is_zero() {
                    *value = &*value / &pivot;
                }
            }
        }
        let pivot_row = self.rows[row].clone();
        for (i, other) in self.rows.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let factor = other[col].clone();
            if factor.is_zero() {
                continue;
            }
            for (value, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *value = &*value - &(&factor * p);
                }
            }
        }
        let factor = self.cost[col].clone();
        if !factor.is_zero() {
            for (value, p) in self.cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *value = &*value - &(&factor * p);
                }
            }
        }
        self.basis[row] = col;
    }

    fn run(mut self) -> Option<Vec<Rational>> {
        // Bland: lowest-index column with negative reduced cost enters.
        while let Some(enter) = (0..self.num_cols).find(|&j| self.cost[j].is_negative()) {
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = &row[enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &row[self.num_cols] / a;
                let better = match &leave {
                    None => true,
                    Some((best_row, best_ratio)) => {
                        ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[i] < self.basis[*best_row])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, enter),
                // Phase-1 objective is bounded below by zero.
                None => unreachable!("unbounded phase-1 objective"),
            }
        }
        if !self.cost[self.num_cols].is_zero() {
            return None;
        }
        let mut values = vec![Rational::zero(); self.num_cols];
        for (row, &col) in self.rows.iter().zip(&self.basis) {
            values[col] = row[self.num_cols].clone();
        }
        Some(
            self.var_cols
                .iter()
                .map(|&(pos, neg)| match neg {
                    Some(neg) => &values[pos] - &values[neg],
                    None => values[pos].clone(),
                })
                .collect(),
        )
    }
}
