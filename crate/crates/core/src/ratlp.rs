//! Exact rational linear programming over the system
//!
//! ```text
//! Σ_h q_hj λ_h = p_j   (j = 1..n)
//! Σ_h λ_h      = 1
//! λ_h ≥ 0
//! ```
//!
//! Feasibility is decided by a phase-one simplex; the maxima of the linear
//! functionals `Φ_j` (sums of `λ` over a subset of rows) are computed by a
//! phase-two simplex that starts from the phase-one basis. Pivoting follows
//! Bland's rule throughout, so no cycling can occur.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::Error;

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Diagnostic ceiling on pivots for a single solve.
pub const PIVOT_LIMIT: usize = 1_000_000;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// The feasibility system for a point matrix and a target assessment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSystem {
    points: Vec<Vec<Rational>>,
    target: Vec<Rational>,
}

impl SigmaSystem {
    /// `points` has one row `Q_h` per variable `λ_h`, each of the target's length.
    pub fn new(points: Vec<Vec<Rational>>, target: Vec<Rational>) -> Result<Self, Error> {
        if let Some(row) = points.iter().find(|r| r.len() != target.len()) {
            return Err(Error::DimensionMismatch {
                expected: target.len(),
                got: row.len(),
            });
        }
        Ok(SigmaSystem { points, target })
    }

    /// Number of unknowns `λ_h`.
    pub fn variables(&self) -> usize {
        self.points.len()
    }

    /// Number of target coordinates.
    pub fn dimension(&self) -> usize {
        self.target.len()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn target(&self) -> &[Rational] {
        &self.target
    }

    /// Substitutes `lambda` into every constraint; true iff all hold exactly.
    pub fn satisfied_by(&self, lambda: &[Rational]) -> bool {
        if lambda.len() != self.points.len() || lambda.iter().any(Signed::is_negative) {
            return false;
        }
        let total: Rational = lambda.iter().sum();
        if !total.is_one() {
            return false;
        }
        (0..self.target.len()).all(|j| {
            let lhs: Rational = self
                .points
                .iter()
                .zip(lambda)
                .map(|(row, l)| &row[j] * l)
                .sum();
            lhs == self.target[j]
        })
    }
}

/// Result of a feasibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpVerdict {
    pub feasible: bool,
    pub witness: Option<Vec<Rational>>,
    pub optimum: Option<Rational>,
}

/// Dense simplex tableau in canonical form with respect to `basis`.
#[derive(Clone, Debug)]
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Columns eligible to enter the basis.
    active_columns: usize,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for v in self.rows[row].iter_mut() {
            *v *= &inv;
        }
        self.rhs[row] *= &inv;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for (v, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Maximizes `cost · x` from the current basic feasible solution.
    fn maximize(&mut self, cost: &[Rational]) -> Result<Rational, Error> {
        let zero = Rational::zero();
        let cost_of = |j: usize| cost.get(j).unwrap_or(&zero).clone();
        let width = self.rows.first().map_or(0, Vec::len);
        // Reduced costs d_j = c_j - Σ_i c_{B(i)} a_ij.
        let mut reduced: Vec<Rational> = (0..width).map(cost_of).collect();
        let mut value = Rational::zero();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = cost_of(self.basis[i]);
            if cb.is_zero() {
                continue;
            }
            for (d, a) in reduced.iter_mut().zip(row) {
                *d -= &cb * a;
            }
            value += &cb * &self.rhs[i];
        }
        loop {
            if self.pivots >= PIVOT_LIMIT {
                return Err(Error::PivotLimit(PIVOT_LIMIT));
            }
            // Bland: lowest-index improving column enters.
            let Some(col) = (0..self.active_columns).find(|&j| reduced[j].is_positive()) else {
                return Ok(value);
            };
            // Bland: minimum ratio, ties to the lowest basic variable index.
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            // Every column lies in a polytope bounded by Σλ = 1, so some row bounds it.
            let (row, ratio) = leave.expect("simplex direction unbounded in a bounded polytope");
            let step = reduced[col].clone();
            value += &step * &ratio;
            self.pivot(row, col);
            let pivot_row = &self.rows[row];
            for (d, p) in reduced.iter_mut().zip(pivot_row) {
                if !p.is_zero() {
                    *d -= &step * p;
                }
            }
        }
    }

    fn solution(&self, variables: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); variables];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < variables {
                x[b] = self.rhs[i].clone();
            }
        }
        x
    }
}

/// The solution polytope of a feasible system, holding a basic feasible
/// solution from which further objectives can be optimized.
#[derive(Clone, Debug)]
pub struct FeasibleRegion {
    tableau: Tableau,
    variables: usize,
    witness: Vec<Rational>,
}

impl FeasibleRegion {
    /// Runs phase one. `Ok(None)` when the system has no solution.
    pub fn new(sys: &SigmaSystem) -> Result<Option<Self>, Error> {
        let m = sys.variables();
        let n = sys.dimension();
        let constraints = n + 1;
        let width = m + constraints;
        let mut rows = Vec::with_capacity(constraints);
        let mut rhs = Vec::with_capacity(constraints);
        for i in 0..constraints {
            let (mut row, mut b): (Vec<Rational>, Rational) = if i < n {
                (
                    sys.points.iter().map(|q| q[i].clone()).collect(),
                    sys.target[i].clone(),
                )
            } else {
                (vec![Rational::one(); m], Rational::one())
            };
            if b.is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
                b = -b;
            }
            row.resize(width, Rational::zero());
            row[m + i] = Rational::one();
            rows.push(row);
            rhs.push(b);
        }
        let mut tableau = Tableau {
            rows,
            rhs,
            basis: (m..width).collect(),
            active_columns: width,
            pivots: 0,
        };
        let mut cost = vec![Rational::zero(); width];
        for c in &mut cost[m..] {
            *c = -Rational::one();
        }
        let value = tableau.maximize(&cost)?;
        if value.is_negative() {
            return Ok(None);
        }

        // Drive zero-level artificials out of the basis; rows with no
        // structural entry left are redundant and dropped.
        let mut i = 0;
        while i < tableau.rows.len() {
            if tableau.basis[i] >= m {
                match (0..m).find(|&j| !tableau.rows[i][j].is_zero()) {
                    Some(j) => tableau.pivot(i, j),
                    None => {
                        tableau.rows.remove(i);
                        tableau.rhs.remove(i);
                        tableau.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for row in tableau.rows.iter_mut() {
            row.truncate(m);
        }
        tableau.active_columns = m;
        let witness = tableau.solution(m);
        Ok(Some(FeasibleRegion {
            tableau,
            variables: m,
            witness,
        }))
    }

    /// A basic feasible solution.
    pub fn witness(&self) -> &[Rational] {
        &self.witness
    }

    /// Maximum of `Σ_{h ∈ rows} λ_h` over the region, with a maximizer.
    pub fn maximize_sum(&self, rows: &[usize]) -> Result<(Rational, Vec<Rational>), Error> {
        let mut cost = vec![Rational::zero(); self.variables];
        for &h in rows {
            if h >= self.variables {
                return Err(Error::IndexOutOfRange {
                    index: h,
                    len: self.variables,
                });
            }
            cost[h] = Rational::one();
        }
        let mut tableau = self.tableau.clone();
        tableau.pivots = 0;
        let value = tableau.maximize(&cost)?;
        Ok((value, tableau.solution(self.variables)))
    }
}

/// Decides solvability, returning an exact witness when one exists.
pub fn feasible(sys: &SigmaSystem) -> Result<LpVerdict, Error> {
    Ok(match FeasibleRegion::new(sys)? {
        Some(region) => LpVerdict {
            feasible: true,
            witness: Some(region.witness),
            optimum: None,
        },
        None => LpVerdict {
            feasible: false,
            witness: None,
            optimum: None,
        },
    })
}

/// `M = max Σ_{h ∈ rows} λ_h` over the solutions of `sys`.
pub fn maximize_phi(sys: &SigmaSystem, rows: &[usize]) -> Result<Rational, Error> {
    let region = FeasibleRegion::new(sys)?.ok_or(Error::Infeasible)?;
    Ok(region.maximize_sum(rows)?.0)
}

/// Columns `j` whose functional `Φ_j` (sum over `phi_rows[j]`) is zero on
/// every solution.
pub fn compute_i0(sys: &SigmaSystem, phi_rows: &[Vec<usize>]) -> Result<Vec<usize>, Error> {
    let region = FeasibleRegion::new(sys)?.ok_or(Error::Infeasible)?;
    i0_in_region(&region, phi_rows)
}

pub(crate) fn i0_in_region(
    region: &FeasibleRegion,
    phi_rows: &[Vec<usize>],
) -> Result<Vec<usize>, Error> {
    let phi_positive = |lambda: &[Rational], j: usize| {
        phi_rows[j].iter().any(|&h| lambda[h].is_positive())
    };
    // A column with positive mass at any known solution has M_j > 0.
    let mut known_positive: Vec<bool> = (0..phi_rows.len())
        .map(|j| phi_positive(region.witness(), j))
        .collect();
    let mut i0 = Vec::new();
    for j in 0..phi_rows.len() {
        if known_positive[j] {
            continue;
        }
        let (max, at) = region.maximize_sum(&phi_rows[j])?;
        if max.is_zero() {
            i0.push(j);
        } else {
            for (k, flag) in known_positive.iter_mut().enumerate() {
                if !*flag && phi_positive(&at, k) {
                    *flag = true;
                }
            }
        }
    }
    Ok(i0)
}
