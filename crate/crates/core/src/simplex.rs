//! Dense tableau simplex over exact rationals.
//!
//! Solves max c'x subject to Ax <= b, x >= 0 with b >= 0, so the all-slack
//! basis is feasible and no phase-one is needed. Bland's rule picks pivots:
//! entering variable of smallest index with positive reduced cost, leaving
//! row breaking ratio ties by smallest basic index. That rule never cycles,
//! which matters here because the edge constraints are highly degenerate
//! (zero right-hand sides).

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimplexError {
    #[error("objective is unbounded above")]
    Unbounded,
    #[error("constraint references variable {var}, but there are only {nvars}")]
    BadIndex { var: usize, nvars: usize },
    #[error("negative right-hand side {0} (standard form requires b >= 0)")]
    NegativeRhs(String),
}

/// One constraint: sparse coefficients and a nonnegative right-hand side.
pub struct Constraint {
    pub coeffs: Vec<(usize, BigRational)>,
    pub rhs: BigRational,
}

#[derive(Debug, Clone)]
pub struct SimplexSolution {
    pub objective: BigRational,
    pub values: Vec<BigRational>,
    pub pivots: u64,
}

pub fn maximize(
    objective: &[BigRational],
    constraints: &[Constraint],
) -> Result<SimplexSolution, SimplexError> {
    let nvars = objective.len();
    let m = constraints.len();
    if nvars == 0 || m == 0 {
        // nothing to optimize against: with x >= 0 and no rows, the optimum
        // is 0 unless some objective coefficient is positive (unbounded)
        if objective.iter().any(|c| c.is_positive()) && m == 0 {
            return Err(SimplexError::Unbounded);
        }
        return Ok(SimplexSolution {
            objective: BigRational::zero(),
            values: vec![BigRational::zero(); nvars],
            pivots: 0,
        });
    }

    let total = nvars + m;
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, con) in constraints.iter().enumerate() {
        if con.rhs.is_negative() {
            return Err(SimplexError::NegativeRhs(con.rhs.to_string()));
        }
        let mut row = vec![BigRational::zero(); total + 1];
        for (var, coeff) in &con.coeffs {
            if *var >= nvars {
                return Err(SimplexError::BadIndex { var: *var, nvars });
            }
            row[*var] += coeff.clone();
        }
        row[nvars + i] = BigRational::one();
        row[total] = con.rhs.clone();
        rows.push(row);
    }
    // reduced-cost row: starts as the objective since the slack basis has
    // zero objective coefficients
    let mut cost = vec![BigRational::zero(); total + 1];
    cost[..nvars].clone_from_slice(objective);
    let mut basis: Vec<usize> = (nvars..total).collect();

    let mut pivots = 0u64;
    loop {
        // Bland: entering variable of least index with positive reduced cost
        let entering = match (0..total).find(|&j| cost[j].is_positive()) {
            Some(j) => j,
            None => break,
        };
        // ratio test over rows with positive pivot column
        let mut leaving: Option<usize> = None;
        let mut best_ratio: Option<BigRational> = None;
        for i in 0..m {
            if !rows[i][entering].is_positive() {
                continue;
            }
            let ratio = &rows[i][total] / &rows[i][entering];
            let better = match &best_ratio {
                None => true,
                Some(r) => {
                    ratio < *r || (ratio == *r && basis[i] < basis[leaving.unwrap()])
                }
            };
            if better {
                best_ratio = Some(ratio);
                leaving = Some(i);
            }
        }
        let leaving = leaving.ok_or(SimplexError::Unbounded)?;

        // pivot
        pivots += 1;
        let inv = rows[leaving][entering].recip();
        for x in rows[leaving].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[leaving].clone();
        let eliminate = |row: &mut [BigRational]| {
            // the entering column is zeroed directly; subtracting there too
            // would leave -factor behind
            let factor = std::mem::replace(&mut row[entering], BigRational::zero());
            if factor.is_zero() {
                return;
            }
            for (j, (x, p)) in row.iter_mut().zip(pivot_row.iter()).enumerate() {
                if j != entering && !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        };
        for (i, row) in rows.iter_mut().enumerate() {
            if i != leaving {
                eliminate(row);
            }
        }
        eliminate(&mut cost);
        basis[leaving] = entering;
    }

    let mut values = vec![BigRational::zero(); nvars];
    for (i, &b) in basis.iter().enumerate() {
        if b < nvars {
            values[b] = rows[i][total].clone();
        }
    }
    let objective_value = -cost[total].clone();
    Ok(SimplexSolution { objective: objective_value, values, pivots })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn tiny_lp_by_hand() {
        // max x + y st. x <= 2, y <= 3, x + y <= 4  ->  4
        let c = vec![rat(1, 1), rat(1, 1)];
        let cons = vec![
            Constraint { coeffs: vec![(0, rat(1, 1))], rhs: rat(2, 1) },
            Constraint { coeffs: vec![(1, rat(1, 1))], rhs: rat(3, 1) },
            Constraint { coeffs: vec![(0, rat(1, 1)), (1, rat(1, 1))], rhs: rat(4, 1) },
        ];
        let sol = maximize(&c, &cons).unwrap();
        assert_eq!(sol.objective, rat(4, 1));
        assert_eq!(&sol.values[0] + &sol.values[1], rat(4, 1));
    }

    #[test]
    fn fractional_optimum() {
        // max 3x + 5y st. x + 2y <= 4, 3x + y <= 6 -> x = 8/5, y = 6/5
        let c = vec![rat(3, 1), rat(5, 1)];
        let cons = vec![
            Constraint { coeffs: vec![(0, rat(1, 1)), (1, rat(2, 1))], rhs: rat(4, 1) },
            Constraint { coeffs: vec![(0, rat(3, 1)), (1, rat(1, 1))], rhs: rat(6, 1) },
        ];
        let sol = maximize(&c, &cons).unwrap();
        assert_eq!(sol.objective, rat(54, 5));
        assert_eq!(sol.values[0], rat(8, 5));
        assert_eq!(sol.values[1], rat(6, 5));
    }

    #[test]
    fn detects_unbounded() {
        let c = vec![rat(1, 1)];
        let cons = vec![Constraint { coeffs: vec![(0, rat(-1, 1))], rhs: rat(1, 1) }];
        assert!(matches!(maximize(&c, &cons), Err(SimplexError::Unbounded)));
    }

    fn assert_feasible(cons: &[Constraint], values: &[BigRational]) {
        for (i, con) in cons.iter().enumerate() {
            let lhs = con
                .coeffs
                .iter()
                .fold(BigRational::zero(), |acc, (var, c)| acc + c * &values[*var]);
            assert!(lhs <= con.rhs, "constraint {i} violated: {lhs} > {}", con.rhs);
        }
        for v in values {
            assert!(!v.is_negative());
        }
    }

    #[test]
    fn solutions_stay_feasible_under_many_pivots() {
        // a chained LP that forces repeated revisits of earlier columns;
        // the pivot elimination must leave exact zeros in the entering
        // column of every other row
        let n = 12usize;
        let c: Vec<BigRational> = (0..n).map(|i| rat(1 + (i as i64 % 3), 1)).collect();
        let mut cons = Vec::new();
        for i in 0..n {
            let j = (i + 1) % n;
            cons.push(Constraint {
                coeffs: vec![(i, rat(2, 1)), (j, rat(1, 1))],
                rhs: rat(3 + (i as i64 % 4), 2),
            });
        }
        cons.push(Constraint {
            coeffs: (0..n).map(|i| (i, rat(1, 1))).collect(),
            rhs: rat(7, 1),
        });
        let sol = maximize(&c, &cons).unwrap();
        assert_feasible(&cons, &sol.values);
        let recomputed = c
            .iter()
            .zip(sol.values.iter())
            .fold(BigRational::zero(), |acc, (ci, xi)| acc + ci * xi);
        assert_eq!(recomputed, sol.objective);
    }

    #[test]
    fn degenerate_zero_rhs_terminates() {
        // x <= 0 rows force a degenerate start; Bland must still terminate
        let c = vec![rat(1, 1), rat(1, 1)];
        let cons = vec![
            Constraint { coeffs: vec![(0, rat(1, 1)), (1, rat(-1, 1))], rhs: rat(0, 1) },
            Constraint { coeffs: vec![(0, rat(-1, 1)), (1, rat(1, 1))], rhs: rat(0, 1) },
            Constraint { coeffs: vec![(0, rat(1, 1)), (1, rat(1, 1))], rhs: rat(2, 1) },
        ];
        let sol = maximize(&c, &cons).unwrap();
        assert_eq!(sol.objective, rat(2, 1));
    }
}
