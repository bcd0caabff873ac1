//! Integer-preserving simplex for matrix games.
//!
//! The payoff matrix `M` is shifted to `A = M - min(M) + 1`, whose entries
//! are all at least 1. The column player's program
//!
//! ```text
//! maximize Σ t_j   subject to   A t ≤ 1,  t ≥ 0
//! ```
//!
//! has optimum `1 / val(A)`, and its dual variables give the row player's
//! strategy. The tableau is kept in integers: every entry is the true
//! rational entry times the last pivot element, and each pivot divides the
//! cross products exactly by the previous pivot (the same identity Bareiss
//! elimination rests on). Bland's rule picks pivots, so the method cannot
//! cycle.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub(crate) struct Solution {
    pub value: Rational,
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Optimal tableau of the shifted program.
struct Optimum {
    t: Vec<Vec<BigInt>>,
    basis: Vec<usize>,
    denom: BigInt,
    shift: BigInt,
}

impl Optimum {
    /// The bottom-right entry; `val(A) = denom / total`.
    fn total(&self) -> &BigInt {
        self.t.last().and_then(|r| r.last()).expect("non-empty tableau")
    }
}

pub(crate) fn solve(m: &[Vec<BigInt>]) -> Result<Solution> {
    let opt = optimize(m)?;
    let (p, q) = (m.len(), m[0].len());
    let rhs = q + p;
    let total = opt.total().clone();
    debug_assert!(total.is_positive());
    let frac = |n: &BigInt| Rational::new(n.clone(), total.clone());
    let mut y = vec![Rational::zero(); q];
    for (i, &b) in opt.basis.iter().enumerate() {
        if b < q {
            y[b] = frac(&opt.t[i][rhs]);
        }
    }
    let x = (0..p).map(|i| frac(&opt.t[p][q + i])).collect();
    let value = Rational::new(opt.denom.clone(), total) - Rational::from_integer(opt.shift);
    Ok(Solution { value, x, y })
}

/// Sign of the value, without forming any fraction.
pub(crate) fn value_sign(m: &[Vec<BigInt>]) -> Result<Ordering> {
    let opt = optimize(m)?;
    Ok(opt.denom.cmp(&(&opt.shift * opt.total())))
}

fn optimize(m: &[Vec<BigInt>]) -> Result<Optimum> {
    let p = m.len();
    let q = m.first().map_or(0, Vec::len);
    if p == 0 || q == 0 || m.iter().any(|r| r.len() != q) {
        return Err(Error::MalformedMatrix);
    }
    let min = m.iter().flatten().min().expect("non-empty").clone();
    let shift = BigInt::one() - &min;

    let width = q + p + 1;
    let rhs = q + p;
    let mut t: Vec<Vec<BigInt>> = Vec::with_capacity(p + 1);
    for (i, row) in m.iter().enumerate() {
        let mut r = Vec::with_capacity(width);
        r.extend(row.iter().map(|v| v + &shift));
        r.extend((0..p).map(|s| if s == i { BigInt::one() } else { BigInt::zero() }));
        r.push(BigInt::one());
        t.push(r);
    }
    let mut obj = vec![BigInt::zero(); width];
    for v in obj.iter_mut().take(q) {
        *v = -BigInt::one();
    }
    t.push(obj);
    let mut basis: Vec<usize> = (q..q + p).collect();
    let mut denom = BigInt::one();

    let bound = binomial((p + q + 1) as u128, (p + 1) as u128);
    let mut pivots: u64 = 0;
    while let Some(c) = (0..rhs).find(|&j| t[p][j].is_negative()) {
        let mut best: Option<usize> = None;
        for i in 0..p {
            if !t[i][c].is_positive() {
                continue;
            }
            best = Some(match best {
                None => i,
                Some(b) => {
                    let lhs = &t[i][rhs] * &t[b][c];
                    let cur = &t[b][rhs] * &t[i][c];
                    match lhs.cmp(&cur) {
                        Ordering::Less => i,
                        Ordering::Equal if basis[i] < basis[b] => i,
                        _ => b,
                    }
                }
            });
        }
        let r = best.ok_or_else(|| Error::BoundViolation("shifted game program is unbounded".into()))?;

        pivots += 1;
        if pivots as u128 > bound {
            return Err(Error::PivotBound(bound));
        }
        let pivot = t[r][c].clone();
        let (before, rest) = t.split_at_mut(r);
        let (row_r, after) = rest.split_first_mut().expect("pivot row exists");
        for row in before.iter_mut().chain(after.iter_mut()) {
            let f = row[c].clone();
            for (v, pr) in row.iter_mut().zip(row_r.iter()) {
                let num = &pivot * &*v - &f * pr;
                *v = num / &denom;
            }
        }
        denom = pivot;
        basis[r] = c;
    }
    Ok(Optimum { t, basis, denom, shift })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn rock_paper_scissors() {
        let s = solve(&ints(&[&[0, -1, 1], &[1, 0, -1], &[-1, 1, 0]])).unwrap();
        assert!(s.value.is_zero());
        let third = Rational::new(1.into(), 3.into());
        assert!(s.x.iter().all(|v| *v == third));
        assert!(s.y.iter().all(|v| *v == third));
    }

    #[test]
    fn dominated_rows_and_degenerate_ties() {
        let s = solve(&ints(&[&[3, 3], &[3, 3], &[1, 5]])).unwrap();
        assert_eq!(s.value, Rational::from_integer(3.into()));
        let s = solve(&ints(&[&[5, 1, 3]])).unwrap();
        assert_eq!(s.value, Rational::from_integer(1.into()));
        assert_eq!(s.y[1], Rational::one());
    }

    #[test]
    fn sign_matches_value() {
        let cases: [&[&[i64]]; 3] = [&[&[0, -1, 1], &[1, 0, -1], &[-1, 1, 0]], &[&[3, -2], &[-1, 4]], &[&[-5, -1]]];
        for rows in cases {
            let m = ints(rows);
            let v = solve(&m).unwrap().value;
            assert_eq!(value_sign(&m).unwrap(), v.cmp(&Rational::zero()));
        }
    }

    #[test]
    fn pivot_bound_formula() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(300, 150), u128::MAX);
    }
}
