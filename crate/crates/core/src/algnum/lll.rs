//! LLL basis reduction in exact integer arithmetic.
//!
//! The Gram–Schmidt data is carried as the integers `d_i` (Gram
//! determinants of the leading sublattices) and `λ_{i,j} = d_j μ_{i,j}`, so no
//! fraction ever has to be reduced. This is the integral variant from Cohen,
//! *A Course in Computational Algebraic Number Theory*, Algorithm 2.6.7.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to `num / den` (`den > 0`), halves rounded up.
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (num * &two + den).div_floor(&(den * two))
}

struct State {
    b: Vec<Vec<BigInt>>,
    // 1-based, d[0] = 1
    d: Vec<BigInt>,
    // lam[k][j] for j < k, 1-based
    lam: Vec<Vec<BigInt>>,
}

impl State {
    fn red(&mut self, k: usize, l: usize) {
        if (&self.lam[k][l] * BigInt::from(2)).abs() <= self.d[l] {
            return;
        }
        let q = round_div(&self.lam[k][l], &self.d[l]);
        let bl = self.b[l - 1].clone();
        for (x, y) in self.b[k - 1].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        let dl = self.d[l].clone();
        self.lam[k][l] -= &q * dl;
        for i in 1..l {
            let v = &q * &self.lam[l][i];
            self.lam[k][i] -= v;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k - 1, k - 2);
        for j in 1..k - 1 {
            let t = self.lam[k][j].clone();
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let big = (&self.d[k - 2] * &self.d[k] + &lam * &lam) / &self.d[k - 1];
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&self.d[k] * &self.lam[i][k - 1] - &lam * &t) / &self.d[k - 1];
            self.lam[i][k - 1] = (&big * &t + &lam * &self.lam[i][k]) / &self.d[k];
        }
        self.d[k - 1] = big;
    }
}

/// Reduces `basis` with parameter `delta` in `(1/4, 1]`.
///
/// Rows must be linearly independent. The output satisfies size reduction
/// `|μ_{i,j}| <= 1/2` and the Lovász condition
/// `|b*_k|² >= (δ - μ_{k,k-1}²) |b*_{k-1}|²`.
pub fn lll_reduce(basis: &[Vec<BigInt>], delta: &Rational) -> Result<Vec<Vec<BigInt>>> {
    let n = basis.len();
    if n == 0 {
        return Ok(vec![]);
    }
    let (da, db) = (delta.numer().clone(), delta.denom().clone());
    let mut st = State { b: basis.to_vec(), d: vec![BigInt::zero(); n + 1], lam: vec![vec![BigInt::zero(); n + 1]; n + 1] };
    st.d[0] = BigInt::from(1);
    st.d[1] = dot(&st.b[0], &st.b[0]);
    if st.d[1].is_zero() {
        return Err(Error::DependentBasis);
    }
    let mut k = 2;
    let mut kmax = 1;
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&st.b[k - 1], &st.b[j - 1]);
                for i in 1..j {
                    u = (&st.d[i] * u - &st.lam[k][i] * &st.lam[j][i]) / &st.d[i - 1];
                }
                if j < k {
                    st.lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::DependentBasis);
                    }
                    st.d[k] = u;
                }
            }
        }
        loop {
            st.red(k, k - 1);
            let l = &st.lam[k][k - 1];
            let lhs = &db * &st.d[k] * &st.d[k - 2];
            let rhs = &da * &st.d[k - 1] * &st.d[k - 1] - &db * l * l;
            if lhs < rhs {
                st.swap(k, kmax);
                k = (k - 1).max(2);
                continue;
            }
            for l in (1..k - 1).rev() {
                st.red(k, l);
            }
            k += 1;
            break;
        }
    }
    Ok(st.b)
}
