//! Brute-force reference solvers for small instances.
//!
//! Candidates are the lattice points of an enclosing ellipsoid, enumerated
//! exactly with Fincke–Pohst bounds: the vertex ball for polytopes, the
//! Hölder ellipsoid ‖V⁻¹((x,0) − t)‖₂ < n^{1/2−1/p}·α for ℓp-bodies and a
//! norm-equivalence ball for CVP. Enumerations that would visit more nodes
//! than the budget fail with `BudgetExceeded` rather than being truncated.

use num_traits::{One, Signed, Zero};

use crate::cvp::{CvpResult, NormSpec};
use crate::exact::{
    ceil_add_sqrt, floor, floor_add_sqrt, ldl, norm2_sq, pow_int, rat_int, root_upper, sqrt_upper,
    to_rat_vec, vec_sub, IntVector, Integer, RatMatrix, RatVector, Rational,
};
use crate::geometry::{ConvexBody, Polytope};
use crate::lattice::LatticeBasis;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct EnumerationBudget {
    pub max_points: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_points: 2_000_000,
        }
    }
}

/// All vertices of {x : Ax ≤ β}, by solving every n-subset of constraints.
pub fn polytope_vertices(p: &Polytope) -> Vec<RatVector> {
    let n = p.dim();
    let a = p.a.to_rat();
    let rows = p.num_constraints();
    let mut out: Vec<RatVector> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    if rows < n {
        return out;
    }
    loop {
        let sub = RatMatrix::from_rows(&idx.iter().map(|&i| a.row(i)).collect::<Vec<_>>());
        let rhs: RatVector = idx.iter().map(|&i| rat_int(&p.beta[i])).collect();
        if let Ok(x) = sub.solve(&rhs) {
            if p.contains(&x) && !out.contains(&x) {
                out.push(x);
            }
        }
        // next combination
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < rows - n + i {
                idx[i] += 1;
                for j in i + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Lattice points x = By with ‖M(y − c)‖₂² ≤ r, given Q = MᵀM, visited by
/// exact Fincke–Pohst enumeration. `f` returning true stops the search.
struct Enumerator<'a, F: FnMut(&[Integer]) -> bool> {
    l: RatMatrix,
    d: Vec<Rational>,
    c: &'a [Rational],
    y: IntVector,
    visited: u64,
    budget: u64,
    f: F,
}

impl<F: FnMut(&[Integer]) -> bool> Enumerator<'_, F> {
    fn run(&mut self, i: usize, rem: Rational) -> Result<bool> {
        if i == 0 {
            return Ok((self.f)(&self.y));
        }
        let k = i - 1;
        // (Lᵀ(y − c))_k = y_k − a
        let mut a = self.c[k].clone();
        for j in i..self.y.len() {
            a -= &self.l[(j, k)] * (rat_int(&self.y[j]) - &self.c[j]);
        }
        let r = &rem / &self.d[k];
        let lo = ceil_add_sqrt(&a, &r, -1)?;
        let hi = floor_add_sqrt(&a, &r, 1)?;
        let mut v = lo;
        while v <= hi {
            self.visited += 1;
            if self.visited > self.budget {
                return Err(Error::BudgetExceeded);
            }
            let w = rat_int(&v) - &a;
            self.y[k] = v.clone();
            if self.run(k, &rem - &self.d[k] * &w * &w)? {
                return Ok(true);
            }
            v += 1;
        }
        Ok(false)
    }
}

/// Calls `f` on every integer y with (y − c)ᵀQ(y − c) ≤ r, Q positive definite.
fn for_each_in_ellipsoid(
    q: &RatMatrix,
    c: &[Rational],
    r: &Rational,
    budget: &EnumerationBudget,
    f: impl FnMut(&[Integer]) -> bool,
) -> Result<()> {
    if r.is_negative() {
        return Ok(());
    }
    let (l, d) = ldl(q).ok_or(Error::NotPositiveDefinite)?;
    let n = c.len();
    let mut e = Enumerator {
        l,
        d,
        c,
        y: vec![Integer::zero(); n],
        visited: 0,
        budget: budget.max_points,
        f,
    };
    e.run(n, r.clone())?;
    Ok(())
}

/// Euclidean ball (center, R²) containing the polytope, or None if it has
/// no vertices (empty).
fn polytope_ball(p: &Polytope) -> Option<(RatVector, Rational)> {
    let verts = polytope_vertices(p);
    if verts.is_empty() {
        return None;
    }
    let count = rat_int(&Integer::from(verts.len()));
    let mut center = vec![Rational::zero(); p.dim()];
    for v in &verts {
        for (c, x) in center.iter_mut().zip(v) {
            *c += x;
        }
    }
    center.iter_mut().for_each(|c| *c /= &count);
    let r = verts.iter().map(|v| norm2_sq(&vec_sub(v, &center))).max()?;
    Some((center, r))
}

/// Least-squares coefficients and residual ‖s − Mc‖² of s against the
/// columns of M, together with Q = MᵀM.
fn project(m: &RatMatrix, s: &[Rational]) -> Result<(RatMatrix, RatVector, Rational)> {
    let q = m.transpose().mul(m);
    let c = q.solve(&m.transpose().mul_vec(s))?;
    let resid = norm2_sq(&vec_sub(s, &m.mul_vec(&c)));
    Ok((q, c, resid))
}

/// Visits coefficient vectors of every lattice point that could lie in the
/// body: a superset bounded by an enclosing ellipsoid.
fn for_each_candidate(
    body: &ConvexBody,
    l: &LatticeBasis,
    budget: &EnumerationBudget,
    f: impl FnMut(&[Integer]) -> bool,
) -> Result<()> {
    let b = l.matrix();
    match body {
        ConvexBody::Polytope(p) => {
            let Some((center, r_sq)) = polytope_ball(p) else {
                return Ok(());
            };
            let (q, c, resid) = project(b, &center)?;
            for_each_in_ellipsoid(&q, &c, &(r_sq - resid), budget, f)
        }
        ConvexBody::Lp(body) => {
            // ‖u‖₂ ≤ n^{1/2−1/p}‖u‖_p < n^{1/2−1/p}·α with u = V⁻¹((By,0) − t)
            let n = body.n();
            let v_head = body.v_inv.col_range(0, body.m);
            let s = body.v_inv.mul_vec(&body.t);
            let (q, c, resid) = project(&v_head.mul(b), &s)?;
            let growth = root_upper(
                &rat_int(&pow_int(&Integer::from(n), body.p - 2)),
                body.p,
                16,
            );
            let a = body.alpha();
            let r_sq = &growth * &growth * &a * &a;
            for_each_in_ellipsoid(&q, &c, &(r_sq - resid), budget, f)
        }
    }
}

/// Does the body contain a point of L?
pub fn oracle_lmp(body: &ConvexBody, l: &LatticeBasis) -> Result<bool> {
    oracle_lmp_with(body, l, &EnumerationBudget::default())
}

pub fn oracle_lmp_with(
    body: &ConvexBody,
    l: &LatticeBasis,
    budget: &EnumerationBudget,
) -> Result<bool> {
    if l.dim() != body.dim() {
        return Err(Error::InvalidInput(
            "lattice and body dimensions differ".into(),
        ));
    }
    let b = l.matrix();
    let mut found = false;
    for_each_candidate(body, l, budget, |y| {
        found = body.contains(&b.mul_vec(&to_rat_vec(y)));
        found
    })?;
    Ok(found)
}

/// All integer points of the body, in lexicographic order.
pub fn integer_points(body: &ConvexBody, budget: &EnumerationBudget) -> Result<Vec<IntVector>> {
    let z = LatticeBasis::new(RatMatrix::identity(body.dim()))?;
    let mut out = Vec::new();
    for_each_candidate(body, &z, budget, |y| {
        if body.contains(&to_rat_vec(y)) {
            out.push(y.to_vec());
        }
        false
    })?;
    out.sort();
    Ok(out)
}

/// Upper bound on ‖x‖₂ / ‖x‖ over x ≠ 0.
fn euclid_over_norm(norm: &NormSpec, n: usize) -> Result<Rational> {
    let nn = rat_int(&Integer::from(n));
    Ok(match norm {
        NormSpec::Lp(p) if *p <= 2 => Rational::one(),
        NormSpec::Lp(_) | NormSpec::Infinity => sqrt_upper(&nn, 8),
        NormSpec::Polyhedral { h, beta } => {
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for i in 0..h.rows() {
                rows.push(h.row(i));
                rhs.push(beta[i].clone());
                rows.push(h.row(i).iter().map(|x| -x).collect());
                rhs.push(beta[i].clone());
            }
            let p = Polytope::new(crate::exact::IntMatrix::from_rows(&rows), rhs)?;
            let r_sq = polytope_vertices(&p)
                .iter()
                .map(|v| norm2_sq(v))
                .max()
                .ok_or_else(|| Error::InvalidInput("unbounded norm ball".into()))?;
            sqrt_upper(&r_sq, 8)
        }
    })
}

/// Exact closest vector by enumeration; ties go to the lexicographically
/// smallest coefficient vector.
pub fn oracle_cvp(l: &LatticeBasis, t: &[Rational], norm: &NormSpec) -> Result<CvpResult> {
    oracle_cvp_with(l, t, norm, &EnumerationBudget::default())
}

pub fn oracle_cvp_with(
    l: &LatticeBasis,
    t: &[Rational],
    norm: &NormSpec,
    budget: &EnumerationBudget,
) -> Result<CvpResult> {
    let b = l.matrix();
    if t.len() != b.rows() {
        return Err(Error::InvalidInput("target dimension mismatch".into()));
    }
    let (q, yc, resid) = project(b, t)?;
    let y0: IntVector = yc
        .iter()
        .map(|c| floor(&(c + Rational::new(1.into(), 2.into()))))
        .collect();
    let k = norm.power();
    let dist = |y: &[Integer]| norm.eval_pow(&vec_sub(t, &b.mul_vec(&to_rat_vec(y))));
    let d0 = dist(&y0);
    // any vector at least as close is within this Euclidean radius of t
    let r = euclid_over_norm(norm, b.rows())? * root_upper(&d0, k, 16);
    let mut best = (y0, d0);
    for_each_in_ellipsoid(&q, &yc, &(&r * &r - resid), budget, |y| {
        let d = dist(y);
        if d < best.1 || (d == best.1 && y < best.0.as_slice()) {
            best = (y.to_vec(), d);
        }
        false
    })?;
    let (coeffs, distance_pow) = best;
    Ok(CvpResult {
        closest: b.mul_vec(&to_rat_vec(&coeffs)),
        coeffs,
        distance_pow,
    })
}

/// Shortest nonzero lattice vector (coefficients, squared length) by
/// enumeration; ties go to the lexicographically smallest coefficients.
pub fn oracle_svp(l: &LatticeBasis, budget: &EnumerationBudget) -> Result<(IntVector, Rational)> {
    let g = l.gram();
    let m = l.rank();
    let r_sq = (0..m)
        .map(|j| g[(j, j)].clone())
        .min()
        .expect("nonempty basis");
    let mut best: Option<(IntVector, Rational)> = None;
    for_each_in_ellipsoid(&g, &vec![Rational::zero(); m], &r_sq, budget, |y| {
        if y.iter().all(Zero::is_zero) {
            return false;
        }
        let yr = to_rat_vec(y);
        let v = crate::exact::dot(&yr, &g.mul_vec(&yr));
        let better = match &best {
            None => true,
            Some((by, bv)) => &v < bv || (&v == bv && y < by.as_slice()),
        };
        if better {
            best = Some((y.to_vec(), v));
        }
        false
    })?;
    Ok(best.expect("basis vectors lie in the ellipsoid"))
}
