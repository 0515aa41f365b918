use super::{Integer, Rational};
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, RatMatrix};
use crate::{Error, Result};

/// Gram–Schmidt data of a Gram matrix: (μ, squared GSO lengths).
pub(crate) fn gso_from_gram(g: &RatMatrix) -> Result<(RatMatrix, Vec<Rational>)> {
    let m = g.rows();
    let mut mu = RatMatrix::identity(m);
    let mut b: Vec<Rational> = Vec::with_capacity(m);
    for i in 0..m {
        for j in 0..i {
            let mut s = g[(i, j)].clone();
            for k in 0..j {
                s -= &mu[(j, k)] * &mu[(i, k)] * &b[k];
            }
            mu[(i, j)] = s / &b[j];
        }
        let mut bi = g[(i, i)].clone();
        for k in 0..i {
            bi -= &mu[(i, k)] * &mu[(i, k)] * &b[k];
        }
        if !bi.is_positive() {
            return Err(Error::RankDeficient);
        }
        b.push(bi);
    }
    Ok((mu, b))
}

fn round_half(x: &Rational) -> Integer {
    let two = Rational::from_integer(Integer::from(2));
    ((x * &two + Rational::one()) / two).floor().to_integer()
}

/// LLL on a positive definite Gram matrix. Returns unimodular U such that
/// UᵀGU is the Gram matrix of a δ-LLL-reduced basis.
pub fn lll_gram(g: &RatMatrix, delta: &Rational) -> Result<IntMatrix> {
    assert!(g.is_square());
    let m = g.rows();
    let mut g = g.clone();
    let mut u = IntMatrix::identity(m);
    if m <= 1 {
        gso_from_gram(&g)?;
        return Ok(u);
    }
    let (mut mu, mut b) = gso_from_gram(&g)?;
    let mut k = 1;
    while k < m {
        for j in (0..k).rev() {
            let q = round_half(&mu[(k, j)]);
            if q.is_zero() {
                continue;
            }
            let qr = Rational::from_integer(q.clone());
            // b_k -= q b_j
            let gkk = &g[(k, k)] - &qr * &g[(k, j)] * Rational::from_integer(Integer::from(2))
                + &qr * &qr * &g[(j, j)];
            for i in 0..m {
                if i == k {
                    continue;
                }
                let v = &g[(k, i)] - &qr * &g[(j, i)];
                g[(k, i)] = v.clone();
                g[(i, k)] = v;
            }
            g[(k, k)] = gkk;
            for i in 0..m {
                let v = &u[(i, j)] * &q;
                u[(i, k)] -= v;
            }
            for l in 0..j {
                let v = &qr * &mu[(j, l)];
                mu[(k, l)] -= v;
            }
            mu[(k, j)] -= &qr;
        }
        let lhs = b[k].clone();
        let rhs = (delta - &mu[(k, k - 1)] * &mu[(k, k - 1)]) * &b[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            for i in 0..m {
                let a = g[(i, k)].clone();
                g[(i, k)] = g[(i, k - 1)].clone();
                g[(i, k - 1)] = a;
            }
            for j in 0..m {
                let a = g[(k, j)].clone();
                g[(k, j)] = g[(k - 1, j)].clone();
                g[(k - 1, j)] = a;
            }
            u.swap_cols(k, k - 1);
            (mu, b) = gso_from_gram(&g)?;
            k = (k - 1).max(1);
        }
    }
    Ok(u)
}

/// LLL reduction of the columns of B: returns (B·U, U).
pub fn lll_reduce(b: &RatMatrix, delta: &Rational) -> Result<(RatMatrix, IntMatrix)> {
    if b.cols() > b.rows() {
        return Err(Error::RankDeficient);
    }
    let gram = b.transpose().mul(b);
    let u = lll_gram(&gram, delta)?;
    Ok((b.mul(&u.to_rat()), u))
}
