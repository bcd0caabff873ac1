//! Finite zero-sum matrix games: exact value, optimal strategies, and the
//! Shapley–Snow kernel search used to cross-check small instances.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::chain::bareiss_det;
use crate::error::{Error, Result};
use crate::rational::lcm_denominators;
use crate::simplex;
use crate::Rational;

/// A non-empty rectangular payoff matrix; row player maximizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGame {
    entries: Vec<Vec<Rational>>,
}

impl MatrixGame {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        if cols == 0 || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::MalformedMatrix);
        }
        Ok(MatrixGame { entries })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    /// The submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Rational>> {
        rows.iter().map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect()).collect()
    }

    /// Guaranteed payoff of row strategy `x` against every column.
    pub fn row_guarantee(&self, x: &[Rational]) -> Rational {
        (0..self.cols())
            .map(|j| x.iter().zip(&self.entries).map(|(xi, row)| xi * &row[j]).sum::<Rational>())
            .min()
            .expect("non-empty")
    }

    /// Worst loss of column strategy `y` over every row.
    pub fn col_guarantee(&self, y: &[Rational]) -> Rational {
        self.entries
            .iter()
            .map(|row| row.iter().zip(y).map(|(m, yj)| m * yj).sum::<Rational>())
            .max()
            .expect("non-empty")
    }
}

/// Value and a pair of optimal mixed strategies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
}

impl GameSolution {
    /// Checks the exact duality certificate
    /// `min_j (xᵀM)_j = value = max_i (My)_i`.
    pub fn certifies(&self, m: &MatrixGame) -> bool {
        let is_mixed = |s: &[Rational], len: usize| {
            s.len() == len && s.iter().all(|v| !v.is_negative()) && s.iter().sum::<Rational>().is_one()
        };
        is_mixed(&self.x, m.rows())
            && is_mixed(&self.y, m.cols())
            && m.row_guarantee(&self.x) == self.value
            && m.col_guarantee(&self.y) == self.value
    }
}

/// Exact value and optimal strategies by rational simplex.
pub fn lp_value(m: &MatrixGame) -> Result<GameSolution> {
    let scale = BigInt::from(lcm_denominators(m.entries.iter().flatten()));
    let ints: Vec<Vec<BigInt>> = m
        .entries
        .iter()
        .map(|row| row.iter().map(|v| v.numer() * (&scale / v.denom())).collect())
        .collect();
    let sol = simplex::solve(&ints)?;
    Ok(GameSolution { value: sol.value / Rational::from_integer(scale), x: sol.x, y: sol.y })
}

/// Sum of all cofactors of a square matrix; 1 for a 1×1 matrix.
///
/// Uses `det(M + 11ᵀ) = det M + 1ᵀ adj(M) 1`, which holds for singular `M`
/// as well.
pub fn cofactor_sum(m: &[Vec<Rational>]) -> Result<Rational> {
    let shifted: Vec<Vec<Rational>> =
        m.iter().map(|row| row.iter().map(|v| v + Rational::one()).collect()).collect();
    Ok(bareiss_det(&shifted)? - bareiss_det(m)?)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&p| cur[p] < n - k + p) else {
            return out;
        };
        cur[pos] += 1;
        for p in pos + 1..k {
            cur[p] = cur[p - 1] + 1;
        }
    }
}

/// Searches square submatrices, smallest first, for one whose
/// `det / cofactor_sum` equals the value of `m`.
pub fn shapley_snow_kernel(m: &MatrixGame, max_dim: usize) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if m.rows() > max_dim || m.cols() > max_dim {
        return Err(Error::DimensionTooLarge { rows: m.rows(), cols: m.cols(), max: max_dim });
    }
    let value = lp_value(m)?.value;
    for size in 1..=m.rows().min(m.cols()) {
        for rows in subsets(m.rows(), size) {
            for cols in subsets(m.cols(), size) {
                let sub = m.submatrix(&rows, &cols);
                let s = cofactor_sum(&sub)?;
                if !s.is_zero() && bareiss_det(&sub)? / s == value {
                    return Ok(Some((rows, cols)));
                }
            }
        }
    }
    Ok(None)
}
