//! Simultaneous Diophantine approximation by LLL, and the Frank–Tardos
//! replacement of a large hyperplane by small equivalent ones.

use num_traits::{One, Signed, Zero};

use crate::exact::{
    lll_gram, pow_int, rat, rat_int, to_int_vec, to_rat_vec, IntVector, Integer, RatMatrix,
    RatVector, Rational,
};
use crate::geometry::{AffineSubspace, Hyperplane};
use crate::{Error, Result};

/// q ≥ 1 and p with |q·α_i − p_i| < 1/N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimDiophApprox {
    pub q: Integer,
    pub p: IntVector,
}

/// Q_bound(n, N)⁴ = 2^{n(n+1)} N^{4n}; compared on fourth powers to stay integral.
fn within_q_bound(q: &Integer, n: usize, big_n: &Integer) -> bool {
    let lhs = pow_int(q, 4);
    let rhs = (Integer::one() << (n * (n + 1))) * pow_int(big_n, 4 * n as u32);
    lhs <= rhs
}

pub fn simultaneous_approx(alpha: &[Rational], big_n: &Integer) -> SimDiophApprox {
    assert!(*big_n >= Integer::from(2), "N must be at least 2");
    let n = alpha.len();
    if let Some(p) = to_int_vec(alpha) {
        return SimDiophApprox {
            q: Integer::one(),
            p,
        };
    }
    // Basis b₀ = (ε, α), b_i = (0, −e_i); LLL then yields ‖b‖ ≤ 1/N.
    let eps_sq = Rational::new(
        Integer::one(),
        (Integer::one() << (n * (n + 1) / 2)) * pow_int(big_n, 2 * (n as u32 + 1)),
    );
    let d = n + 1;
    let mut g = RatMatrix::zeros(d, d);
    g[(0, 0)] = &eps_sq + alpha.iter().map(|a| a * a).sum::<Rational>();
    for i in 0..n {
        g[(0, i + 1)] = -alpha[i].clone();
        g[(i + 1, 0)] = -alpha[i].clone();
        g[(i + 1, i + 1)] = Rational::one();
    }
    let u = lll_gram(&g, &rat(3, 4)).expect("Diophantine lattice is nonsingular");
    let mut q = u[(0, 0)].clone();
    let mut p: IntVector = (0..n).map(|i| u[(i + 1, 0)].clone()).collect();
    assert!(!q.is_zero(), "LLL bound excludes q = 0");
    if q.is_negative() {
        q = -q;
        p.iter_mut().for_each(|x| *x = -x.clone());
    }
    let out = SimDiophApprox { q, p };
    debug_assert!(is_valid_approx(alpha, big_n, &out));
    out
}

/// Checks the approximation invariants exactly.
pub fn is_valid_approx(alpha: &[Rational], big_n: &Integer, a: &SimDiophApprox) -> bool {
    let inv_n = rat_int(big_n).recip();
    a.q.is_positive()
        && within_q_bound(&a.q, alpha.len(), big_n)
        && alpha
            .iter()
            .zip(&a.p)
            .all(|(al, p)| (rat_int(&a.q) * al - rat_int(p)).abs() < inv_n)
}

/// Writes w = Σ χ_i w̄_i with small integer w̄_i such that integer z with
/// ‖z‖₁ ≤ N−1 satisfy ⟨z,w⟩ = 0 iff ⟨z,w̄_i⟩ = 0 for all i.
pub fn frank_tardos_decompose(w: &[Rational], big_n: &Integer) -> Vec<(IntVector, Rational)> {
    assert!(w.iter().any(|x| !x.is_zero()), "zero vector");
    let dim = w.len();
    if let Some(wi) = to_int_vec(w) {
        let max = wi.iter().map(|x| x.abs()).max().unwrap_or_default();
        if within_q_bound(&max, dim.saturating_sub(1), big_n) {
            return vec![(wi, Rational::one())];
        }
    }
    let mut out = Vec::new();
    let mut residual: RatVector = w.to_vec();
    let mut scale = Rational::one();
    while residual.iter().any(|x| !x.is_zero()) {
        let j = (0..dim)
            .max_by(|&a, &b| residual[a].abs().cmp(&residual[b].abs()).then(b.cmp(&a)))
            .expect("nonempty");
        let top = residual[j].abs();
        let alpha: RatVector = residual.iter().map(|x| x / &top).collect();
        let free: Vec<usize> = (0..dim)
            .filter(|&i| i != j && !alpha[i].is_zero())
            .collect();
        let sub: RatVector = free.iter().map(|&i| alpha[i].clone()).collect();
        let approx = simultaneous_approx(&sub, big_n);
        let q = approx.q;
        let mut p = vec![Integer::zero(); dim];
        p[j] = if alpha[j].is_negative() {
            -q.clone()
        } else {
            q.clone()
        };
        for (&i, pi) in free.iter().zip(approx.p) {
            p[i] = pi;
        }
        let qr = rat_int(&q);
        let chi = &scale * &top / &qr;
        residual = alpha
            .iter()
            .zip(&p)
            .map(|(a, pi)| &qr * a - rat_int(pi))
            .collect();
        scale = chi.clone();
        out.push((p, chi));
        assert!(out.len() <= dim, "support must shrink every round");
    }
    out
}

/// Result of replacing one hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Replacement {
    /// Small hyperplanes equivalent to the input on H ∩ B̄₁(0, N−1).
    Hyperplanes(Vec<Hyperplane>),
    /// No integer point of H ∩ B̄₁(0, N−1) lies on the input hyperplane:
    /// some decomposition term is implied by the others with a different
    /// right-hand side.
    Infeasible,
}

fn rank_rows(rows: &[RatVector], width: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = RatMatrix::from_rows(rows);
    debug_assert_eq!(m.cols(), width);
    m.rank()
}

/// Replaces ⟨d,x⟩ = k by small hyperplanes equivalent on integer points of
/// H ∩ B̄₁(0, N−1).
pub fn replace_hyperplane(
    h: &AffineSubspace,
    d: &[Integer],
    k: &Integer,
    big_n: &Integer,
) -> Result<Replacement> {
    let n = d.len();
    let mut normals: Vec<RatVector> = h.hyperplanes().iter().map(|p| to_rat_vec(&p.d)).collect();
    let mut augmented: Vec<RatVector> = h
        .hyperplanes()
        .iter()
        .map(|p| {
            let mut r = to_rat_vec(&p.d);
            r.push(rat_int(&p.k));
            r
        })
        .collect();
    let base = normals.len();
    if rank_rows(&normals, n) < base {
        return Err(Error::DependentNormals);
    }
    let mut with_d = normals.clone();
    with_d.push(to_rat_vec(d));
    if rank_rows(&with_d, n) <= base {
        return Err(Error::DependentInput);
    }
    let mut w = to_rat_vec(d);
    w.push(rat_int(k));
    // lifted points (z, −1) need ‖·‖₁ ≤ N, so decompose for radius N + 1
    let parts = frank_tardos_decompose(&w, &(big_n + 1));
    let mut chosen = Vec::new();
    for (wbar, _) in parts {
        let dbar = to_rat_vec(&wbar[..n]);
        let kbar = rat_int(&wbar[n]);
        let mut trial = normals.clone();
        trial.push(dbar.clone());
        let mut full = dbar.clone();
        full.push(kbar);
        if rank_rows(&trial, n) > normals.len() {
            normals.push(dbar);
            augmented.push(full);
            chosen.push(Hyperplane::new(wbar[..n].to_vec(), wbar[n].clone()));
        } else {
            let mut trial_aug = augmented.clone();
            trial_aug.push(full);
            if rank_rows(&trial_aug, n + 1) > augmented.len() {
                return Ok(Replacement::Infeasible);
            }
        }
    }
    assert!(!chosen.is_empty(), "some term must be independent of H");
    Ok(Replacement::Hyperplanes(chosen))
}
