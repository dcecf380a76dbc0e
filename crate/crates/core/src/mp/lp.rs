//! Exact two-phase simplex (Bland's rule) over big rationals, and the
//! cycle-hull feasibility test built on it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal(BigRational),
}

pub(crate) fn big(r: Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Maximises `c.x` subject to `A x = b`, `x >= 0`.
pub fn maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    // Tableau columns: n originals, m artificials, then the right-hand side.
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row: Vec<BigRational> = Vec::with_capacity(width);
        for j in 0..n {
            row.push(if neg { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { BigRational::one() } else { BigRational::zero() });
        }
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: maximise -(sum of artificials).
    let phase1: Vec<BigRational> = (0..n + m)
        .map(|j| if j >= n { -BigRational::one() } else { BigRational::zero() })
        .collect();
    if run(&mut t, &mut basis, &phase1, n + m) == Some(false) {
        unreachable!("phase 1 is bounded");
    }
    let infeasibility: BigRational = basis
        .iter()
        .zip(&t)
        .filter(|(&j, _)| j >= n)
        .map(|(_, row)| row[width - 1].clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
            } else {
                t.remove(i);
                basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    // Phase 2 over the original columns only.
    let mut cost = c.to_vec();
    cost.extend(std::iter::repeat(BigRational::zero()).take(m));
    match run(&mut t, &mut basis, &cost, n) {
        Some(true) => LpOutcome::Optimal(
            basis
                .iter()
                .zip(&t)
                .map(|(&j, row)| cost[j].clone() * row[width - 1].clone())
                .sum(),
        ),
        _ => LpOutcome::Unbounded,
    }
}

/// Simplex iterations with entering columns drawn from `0..cols`. Returns
/// `Some(true)` at an optimum and `Some(false)` if unbounded.
fn run(t: &mut [Vec<BigRational>], basis: &mut [usize], cost: &[BigRational], cols: usize) -> Option<bool> {
    let last = t.first().map_or(0, |r| r.len() - 1);
    loop {
        // Bland: smallest column with positive reduced profit.
        let entering = (0..cols).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let z: BigRational = basis.iter().zip(t.iter()).map(|(&bj, row)| cost[bj].clone() * row[j].clone()).sum();
            (cost[j].clone() - z).is_positive()
        });
        let Some(j) = entering else {
            return Some(true);
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[j].is_positive() {
                let ratio = row[last].clone() / row[j].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((i, _)) = leave else {
            return Some(false);
        };
        pivot(t, basis, i, j);
    }
}

fn pivot(t: &mut [Vec<BigRational>], basis: &mut [usize], i: usize, j: usize) {
    let p = t[i][j].clone();
    for x in t[i].iter_mut() {
        *x = x.clone() / p.clone();
    }
    let pivot_row = t[i].clone();
    for (k, row) in t.iter_mut().enumerate() {
        if k != i && !row[j].is_zero() {
            let f = row[j].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
    }
    basis[i] = j;
}

/// Whether some convex combination of `points` is at least `z` in every
/// coordinate (strictly greater when `strict`).
///
/// Solved as: maximise `t` subject to `sum lambda = 1` and
/// `sum lambda_c m_c[i] - t >= z[i]`; feasible iff `t* >= 0` (`> 0`).
pub fn hull_feasible(points: &[Vec<Rational>], z: &[Rational], strict: bool) -> bool {
    if points.is_empty() {
        return false;
    }
    let k = points.len();
    let d = z.len();
    // Columns: lambda_1..k, t+, t-, surplus_1..d.
    let n = k + 2 + d;
    let zero = BigRational::zero;
    let mut a = Vec::with_capacity(d + 1);
    let mut b = Vec::with_capacity(d + 1);
    let mut row = vec![zero(); n];
    for x in row.iter_mut().take(k) {
        *x = BigRational::one();
    }
    a.push(row);
    b.push(BigRational::one());
    for i in 0..d {
        let mut row = vec![zero(); n];
        for (c, p) in points.iter().enumerate() {
            row[c] = big(p[i]);
        }
        row[k] = -BigRational::one();
        row[k + 1] = BigRational::one();
        row[k + 2 + i] = -BigRational::one();
        a.push(row);
        b.push(big(z[i]));
    }
    let mut c = vec![zero(); n];
    c[k] = BigRational::one();
    c[k + 1] = -BigRational::one();
    match maximize(&a, &b, &c) {
        LpOutcome::Optimal(t) => {
            if strict {
                t.is_positive()
            } else {
                !t.is_negative()
            }
        }
        LpOutcome::Unbounded => true,
        LpOutcome::Infeasible => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ri(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn single_point() {
        let pts = vec![vec![ri(2), ri(1), ri(0)]];
        let z = vec![ri(2), ri(1), ri(0)];
        assert!(hull_feasible(&pts, &z, false));
        assert!(!hull_feasible(&pts, &z, true));
    }

    #[test]
    fn midpoint_of_two_cycles() {
        let pts = vec![vec![ri(1), ri(0)], vec![ri(0), ri(1)]];
        assert!(hull_feasible(&pts, &[r(1, 2), r(1, 2)], false));
        assert!(!hull_feasible(&pts, &[r(1, 2), r(1, 2)], true));
        assert!(hull_feasible(&pts, &[r(1, 3), r(1, 3)], true));
        assert!(!hull_feasible(&pts, &[r(2, 3), r(2, 3)], false));
    }

    #[test]
    fn simplex_basics() {
        let one = || BigRational::one();
        let zero = || BigRational::zero();
        // max x + y s.t. x + y + s = 4
        let a = vec![vec![one(), one(), one()]];
        let b = vec![BigRational::from_integer(4.into())];
        let c = vec![one(), one(), zero()];
        assert_eq!(maximize(&a, &b, &c), LpOutcome::Optimal(BigRational::from_integer(4.into())));
        // x - y = 1 with max x is unbounded
        let a = vec![vec![one(), -one()]];
        assert_eq!(maximize(&a, &[one()], &[one(), zero()]), LpOutcome::Unbounded);
        // x = -1 is infeasible
        assert_eq!(maximize(&[vec![one()]], &[-one()], &[one()]), LpOutcome::Infeasible);
    }
}
