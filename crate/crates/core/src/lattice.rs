//! Lattice primitives: Gram-form SVP, dual bases, coordinate-sublattice
//! intersections and integer points of affine subspaces.

use std::cmp::Ordering;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use crate::exact::{
    ceil_add_sqrt, floor_add_sqrt, hnf, integer_kernel, is_positive_definite, lll_gram, rat,
    IntMatrix, IntVector, Integer, RatMatrix, Rational,
};
use crate::geometry::AffineSubspace;
use crate::{Error, Result};

/// Column generators of a lattice, linearly independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    b: RatMatrix,
}

impl LatticeBasis {
    pub fn new(b: RatMatrix) -> Result<Self> {
        if b.cols() == 0 || b.rank() < b.cols() {
            return Err(Error::RankDeficient);
        }
        Ok(LatticeBasis { b })
    }

    pub fn from_int(b: &IntMatrix) -> Result<Self> {
        Self::new(b.to_rat())
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.b
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.b.rows()
    }

    pub fn rank(&self) -> usize {
        self.b.cols()
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        self.b.to_int()
    }

    pub fn gram(&self) -> RatMatrix {
        self.b.transpose().mul(&self.b)
    }
}

/// Symmetric positive definite form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    g: RatMatrix,
}

impl GramForm {
    pub fn new(g: RatMatrix) -> Result<Self> {
        if !is_positive_definite(&g) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(GramForm { g })
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.g
    }

    pub fn eval(&self, x: &[Integer]) -> Rational {
        quad_form(&self.g, x)
    }
}

pub(crate) fn quad_form(g: &RatMatrix, x: &[Integer]) -> Rational {
    let n = x.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        let mut row = Rational::zero();
        for j in 0..n {
            if !x[j].is_zero() {
                row += &g[(i, j)] * Rational::from_integer(x[j].clone());
            }
        }
        acc += row * Rational::from_integer(x[i].clone());
    }
    acc
}

/// Order used for ties among shortest vectors: earliest leading nonzero first,
/// then smaller absolute entries, then smaller entries.
fn tie_order(a: &[Integer], b: &[Integer]) -> Ordering {
    let lead = |v: &[Integer]| v.iter().position(|x| !x.is_zero());
    lead(a)
        .cmp(&lead(b))
        .then_with(|| {
            let aa: Vec<Integer> = a.iter().map(|x| x.abs()).collect();
            let bb: Vec<Integer> = b.iter().map(|x| x.abs()).collect();
            aa.cmp(&bb)
        })
        .then_with(|| a.cmp(b))
}

fn normalize_sign(v: &mut [Integer]) {
    if let Some(x) = v.iter().find(|x| !x.is_zero()) {
        if x.is_negative() {
            for y in v.iter_mut() {
                *y = -y.clone();
            }
        }
    }
}

/// Fincke–Pohst enumeration of all nonzero x with xᵀGx ≤ bound.
/// `q` holds the diagonal pivots and the upper-unit coefficients.
fn enumerate_short(q: &RatMatrix, bound: &Rational, out: &mut Vec<(Rational, IntVector)>) {
    let m = q.rows();
    let mut x = vec![Integer::zero(); m];
    fn rec(
        q: &RatMatrix,
        i: usize,
        partial: Rational,
        bound: &Rational,
        x: &mut IntVector,
        out: &mut Vec<(Rational, IntVector)>,
    ) {
        let m = q.rows();
        let mut c = Rational::zero();
        for j in i + 1..m {
            if !x[j].is_zero() {
                c += &q[(i, j)] * Rational::from_integer(x[j].clone());
            }
        }
        let rem = (bound - &partial) / &q[(i, i)];
        if rem.is_negative() {
            return;
        }
        let lo = ceil_add_sqrt(&-&c, &rem, -1).expect("nonnegative radicand");
        let hi = floor_add_sqrt(&-&c, &rem, 1).expect("nonnegative radicand");
        let mut xi = lo;
        while xi <= hi {
            let t = Rational::from_integer(xi.clone()) + &c;
            let val = &partial + &q[(i, i)] * &t * &t;
            x[i] = xi.clone();
            if i == 0 {
                if x.iter().any(|v| !v.is_zero()) {
                    out.push((val, x.clone()));
                }
            } else {
                rec(q, i - 1, val, bound, x, out);
            }
            xi += 1;
        }
        x[i] = Integer::zero();
    }
    if m > 0 {
        rec(q, m - 1, Rational::zero(), bound, &mut x, out);
    }
}

/// Cholesky-free decomposition xᵀGx = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)².
fn fincke_pohst_form(g: &RatMatrix) -> RatMatrix {
    let m = g.rows();
    let mut q = g.clone();
    for i in 0..m {
        for j in i + 1..m {
            q[(j, i)] = q[(i, j)].clone();
            let v = &q[(i, j)] / &q[(i, i)];
            q[(i, j)] = v;
        }
        for k in i + 1..m {
            for l in k..m {
                let v = &q[(k, i)] * &q[(i, l)];
                q[(k, l)] -= v;
            }
        }
    }
    q
}

/// Shortest nonzero integer vector of the form, with its value.
pub fn shortest_form_vector(g: &GramForm) -> Result<(IntVector, Rational)> {
    let m = g.g.rows();
    let u = lll_gram(&g.g, &rat(99, 100)).map_err(|_| Error::NotPositiveDefinite)?;
    let ur = u.to_rat();
    let reduced = ur.transpose().mul(&g.g).mul(&ur);
    let bound = (0..m)
        .map(|i| reduced[(i, i)].clone())
        .min()
        .expect("nonempty form");
    let q = fincke_pohst_form(&reduced);
    let mut found = Vec::new();
    enumerate_short(&q, &bound, &mut found);
    let best = found
        .iter()
        .map(|(v, _)| v.clone())
        .min()
        .expect("basis vector attains the bound");
    let mut winners: Vec<IntVector> = found
        .into_iter()
        .filter(|(v, _)| *v == best)
        .map(|(_, x)| {
            let mut d = u.mul_vec(&x);
            normalize_sign(&mut d);
            d
        })
        .collect();
    winners.sort_by(|a, b| tie_order(a, b));
    Ok((winners.swap_remove(0), best))
}

/// (Bᵀ)⁻¹.
pub fn dual_basis(b: &LatticeBasis) -> Result<RatMatrix> {
    if !b.b.is_square() {
        return Err(Error::Singular);
    }
    b.b.transpose().inverse()
}

/// Basis of {Bᵀz : z ∈ ℤⁿ, (Bᵀz)_i = 0 for i ≥ m}, in column HNF.
pub fn intersection_basis(b: &IntMatrix, m: usize) -> Result<IntMatrix> {
    let n = b.rows();
    if !b.is_square() || b.det().is_zero() {
        return Err(Error::Singular);
    }
    assert!(m < n, "intersection with the full space");
    let bt = b.transpose();
    let k = integer_kernel(&bt.row_range(m, n));
    if k.cols() == 0 {
        return Ok(IntMatrix::zeros(n, 0));
    }
    let (h, _) = hnf(&bt.mul(&k));
    Ok(h.col_range(0, k.cols()))
}

/// Some v ∈ ℤⁿ on every hyperplane of `h`, or None.
pub fn integer_point_in_subspace(h: &AffineSubspace, n: usize) -> Result<Option<IntVector>> {
    let planes = h.hyperplanes();
    let k = planes.len();
    if k == 0 {
        return Ok(Some(vec![Integer::zero(); n]));
    }
    let normals = h.normal_matrix(n);
    if normals.to_rat().rank() < k {
        return Err(Error::DependentNormals);
    }
    let (hm, u) = hnf(&normals);
    let mut y = vec![Integer::zero(); n];
    for i in 0..k {
        let mut rhs = planes[i].k.clone();
        for j in 0..i {
            rhs -= &hm[(i, j)] * &y[j];
        }
        let (qt, r) = rhs.div_rem(&hm[(i, i)]);
        if !r.is_zero() {
            return Ok(None);
        }
        y[i] = qt;
    }
    Ok(Some(u.mul_vec(&y)))
}
