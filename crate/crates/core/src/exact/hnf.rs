use super::Integer;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::IntMatrix;

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, f: &Integer) {
    for i in 0..m.rows() {
        let v = &m[(i, src)] * f;
        m[(i, dst)] -= v;
    }
}

fn col_negate(m: &mut IntMatrix, j: usize) {
    for i in 0..m.rows() {
        let v = -m[(i, j)].clone();
        m[(i, j)] = v;
    }
}

/// Replaces columns (p, q) by (s·p + t·q, −(y/g)·p + (x/g)·q), a unimodular step.
fn col_gcd_step(m: &mut IntMatrix, p: usize, q: usize, x: &Integer, y: &Integer) {
    let e = x.extended_gcd(y);
    let (g, s, t) = (e.gcd, e.x, e.y);
    let a = -(y / &g);
    let b = x / &g;
    for i in 0..m.rows() {
        let cp = m[(i, p)].clone();
        let cq = m[(i, q)].clone();
        m[(i, p)] = &s * &cp + &t * &cq;
        m[(i, q)] = &a * &cp + &b * &cq;
    }
}

/// Column-style Hermite normal form: returns (H, U) with H = M·U, U unimodular,
/// H lower echelon with positive pivots and entries left of each pivot
/// reduced into [0, pivot).
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols());
    let mut piv = 0;
    for i in 0..h.rows() {
        if piv == h.cols() {
            break;
        }
        for j in piv + 1..h.cols() {
            if h[(i, j)].is_zero() {
                continue;
            }
            let x = h[(i, piv)].clone();
            let y = h[(i, j)].clone();
            if !x.is_zero() && (&y % &x).is_zero() {
                let f = &y / &x;
                col_axpy(&mut h, j, piv, &f);
                col_axpy(&mut u, j, piv, &f);
            } else {
                col_gcd_step(&mut h, piv, j, &x, &y);
                col_gcd_step(&mut u, piv, j, &x, &y);
            }
        }
        if h[(i, piv)].is_zero() {
            continue;
        }
        if h[(i, piv)].is_negative() {
            col_negate(&mut h, piv);
            col_negate(&mut u, piv);
        }
        let p = h[(i, piv)].clone();
        for j in 0..piv {
            let f = h[(i, j)].div_floor(&p);
            if !f.is_zero() {
                col_axpy(&mut h, j, piv, &f);
                col_axpy(&mut u, j, piv, &f);
            }
        }
        piv += 1;
    }
    (h, u)
}

/// Number of pivot columns of a column HNF.
pub(crate) fn hnf_rank(h: &IntMatrix) -> usize {
    (0..h.cols())
        .take_while(|&j| (0..h.rows()).any(|i| !h[(i, j)].is_zero()))
        .count()
}

/// Basis (as columns) of the integer kernel {z : M z = 0}; zero columns if trivial.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(m);
    let r = hnf_rank(&h);
    let mut k = u.col_range(r, u.cols());
    for j in 0..k.cols() {
        let lead = (0..k.rows()).find(|&i| !k[(i, j)].is_zero());
        if let Some(i) = lead {
            if k[(i, j)].is_negative() {
                col_negate(&mut k, j);
            }
        }
    }
    k
}
